//! Sound search for a point where a polynomial function does not vanish.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::scalar::{Field, Scalar};
use crate::error::{Error, Result};

/// Upper bound on grid points examined before giving up.
pub const GRID_BUDGET: u64 = 1_000_000;

/// Looks for `x ∈ 𝕜^vars` with `f(x) ≠ 0`, where `f` is a polynomial in which
/// each variable has degree at most `degree`.
///
/// Tries the coordinate vectors, then `random` seeded points, then a grid that
/// certifies the answer: `{0..=degree}^vars` (a nonzero polynomial of that
/// shape cannot vanish on it), or all of `F_p^vars` when `p ≤ degree`.
/// `Ok(None)` is therefore a proof that no such point exists.
pub fn find_nonvanishing_point<F>(
    field: Field,
    vars: usize,
    degree: usize,
    random: usize,
    seed: u64,
    mut f: F,
) -> Result<Option<Vec<Scalar>>>
where
    F: FnMut(&[Scalar]) -> Result<Scalar>,
{
    let unit = |i: usize| {
        let mut v = vec![field.zero(); vars];
        v[i] = field.one();
        v
    };
    for i in 0..vars {
        let x = unit(i);
        if !f(&x)?.is_zero() {
            return Ok(Some(x));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..random {
        let x: Vec<Scalar> = (0..vars).map(|_| field.from_i64(rng.gen_range(-9..=9))).collect();
        if !f(&x)?.is_zero() {
            return Ok(Some(x));
        }
    }
    let side: u64 = match field {
        Field::Prime(p) if p <= degree as u64 => p,
        _ => degree as u64 + 1,
    };
    let total = side.checked_pow(vars as u32).filter(|&t| t <= GRID_BUDGET).ok_or_else(|| {
        Error::SearchBudget(format!("{side}^{vars} grid points exceed the budget of {GRID_BUDGET}"))
    })?;
    let mut x = vec![field.zero(); vars];
    for mut code in 0..total {
        for xi in x.iter_mut() {
            *xi = field.from_i64((code % side) as i64);
            code /= side;
        }
        if !f(&x)?.is_zero() {
            return Ok(Some(x));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_or_certifies() {
        let q = Field::Rational;
        // x*y - y*x vanishes identically
        let r = find_nonvanishing_point(q, 2, 2, 5, 1, |x| Ok(&(&x[0] * &x[1]) - &(&x[1] * &x[0]))).unwrap();
        assert!(r.is_none());
        // x*y is nonzero away from the axes: found by random or grid
        let r = find_nonvanishing_point(q, 2, 2, 0, 1, |x| Ok(&x[0] * &x[1])).unwrap();
        assert!(r.is_some());
        // x^2 - x vanishes on all of F_2 although it is a nonzero polynomial
        let f2 = Field::prime(2).unwrap();
        let r = find_nonvanishing_point(f2, 1, 2, 10, 1, |x| Ok(&(&x[0] * &x[0]) - &x[0])).unwrap();
        assert!(r.is_none());
    }
}
