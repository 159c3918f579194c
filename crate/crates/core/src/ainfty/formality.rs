use crate::error::{Error, Result};
use crate::hochschild::HochschildComplex;

/// Dimensions of `HH^{p+2,−p}` for `1 ≤ p ≤ max_p` and whether that range is all that can
/// be nonzero.
#[derive(Clone, Debug)]
pub struct FormalityReport {
    pub groups: Vec<(usize, i64, usize)>,
    pub range_complete: bool,
}

impl FormalityReport {
    pub fn nonzero(&self) -> Vec<(usize, i64)> {
        self.groups.iter().filter(|g| g.2 > 0).map(|g| (g.0, g.1)).collect()
    }

    /// `true` if every obstruction group vanishes (intrinsically formal), `false` if one does
    /// not; an error if all checked groups vanish but the range was not exhausted.
    pub fn verdict(&self) -> Result<bool> {
        if !self.nonzero().is_empty() {
            return Ok(false);
        }
        if self.range_complete {
            Ok(true)
        } else {
            Err(Error::InconclusiveWindow(format!(
                "HH^(p+2,-p) vanishes for p <= {} but the degrees do not bound p",
                self.groups.last().map_or(0, |g| g.0 - 2)
            )))
        }
    }
}

/// Largest `p` for which `HC^{p+2,−p}` can be nonzero, if the degrees bound it.
fn p_bound(lo: i64, hi: i64) -> Option<i64> {
    // need (p+2)·lo ≤ Σ ≤ (p+2)·hi and lo ≤ Σ − p ≤ hi
    if hi <= 0 {
        Some((2 * hi - lo).div_euclid(1 - hi))
    } else if lo >= 2 {
        Some((hi - 2 * lo).div_euclid(lo - 1))
    } else {
        None
    }
}

/// Kadeishvili's criterion: `HH^{p+2,−p} = 0` for all `p ≥ 1`.
pub fn intrinsic_formality_check(cx: &HochschildComplex, max_p: usize) -> Result<FormalityReport> {
    let alg = cx.algebra();
    let bound = if alg.window().is_some() { None } else { p_bound(alg.min_degree(), alg.max_degree()) };
    let top = match bound {
        Some(b) => (b.max(0) as usize).min(max_p),
        None => max_p,
    };
    let mut groups = Vec::new();
    for p in 1..=top {
        groups.push((p + 2, -(p as i64), cx.hh_dim(p + 2, -(p as i64))?));
    }
    let range_complete = bound.is_some_and(|b| b <= max_p as i64);
    Ok(FormalityReport { groups, range_complete })
}
