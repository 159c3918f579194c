use super::GradedAlgebra;
use crate::error::{Error, Result};
use crate::exactlin::{find_nonvanishing_point, Matrix, Vector};

/// Seed for the pseudorandom functionals tried before the certifying grid.
const FROBENIUS_SEED: u64 = 0x5eed_f20b;

#[derive(Clone, Debug)]
pub struct FrobeniusVerdict {
    pub frobenius: bool,
    /// A functional `λ` with `(a, b) ↦ λ(ab)` nondegenerate, when one exists.
    pub functional: Option<Vector>,
}

/// Gram matrix of `(e_a, e_b) ↦ λ(e_a e_b)`.
pub fn pairing_matrix(a: &GradedAlgebra, lambda: &[crate::exactlin::Scalar]) -> Result<Matrix> {
    let n = a.dim();
    let f = a.field();
    let mut g = Matrix::zeros(f, n, n);
    for i in 0..n {
        for j in 0..n {
            let mut acc = f.zero();
            for (k, c) in a.mul_basis(i, j)? {
                acc += &(c * &lambda[*k]);
            }
            g.set(i, j, acc);
        }
    }
    Ok(g)
}

/// Decides whether an ungraded algebra is Frobenius.
///
/// "false" is only returned after the certifying grid search, so the answer is
/// exact; if the grid exceeds the budget the result is an error instead.
pub fn is_frobenius(a: &GradedAlgebra) -> Result<FrobeniusVerdict> {
    if a.degrees().iter().any(|&q| q != 0) {
        return Err(Error::Precondition("Frobenius test needs an algebra concentrated in degree 0".into()));
    }
    let n = a.dim();
    let found = find_nonvanishing_point(a.field(), n, n, 50, FROBENIUS_SEED, |lambda| {
        pairing_matrix(a, lambda)?.determinant()
    })?;
    Ok(FrobeniusVerdict { frobenius: found.is_some(), functional: found })
}

#[cfg(test)]
mod tests {
    use super::super::build::*;
    use super::*;
    use crate::exactlin::Field;

    #[test]
    fn small_cases() {
        let q = Field::Rational;
        let v = is_frobenius(&ground(q)).unwrap();
        assert!(v.frobenius);
        assert_eq!(v.functional.unwrap(), vec![q.one()]);
        let v = is_frobenius(&truncated_polynomial(q, 2, 0)).unwrap();
        assert!(v.frobenius);
        // the coefficient-of-x functional is found first (dual basis order)
        assert_eq!(v.functional.unwrap(), vec![q.zero(), q.one()]);
        assert!(!is_frobenius(&upper_triangular(q)).unwrap().frobenius);
        assert!(is_frobenius(&product_of_fields(q, 2)).unwrap().frobenius);
    }

    #[test]
    fn pairing_determinant_oracle_dual_numbers() {
        // λ = (u, v): Gram = [[u, v], [v, 0]], det = -v^2
        let q = Field::Rational;
        let a = truncated_polynomial(q, 2, 0);
        let g = pairing_matrix(&a, &[q.from_i64(3), q.from_i64(2)]).unwrap();
        assert_eq!(g.determinant().unwrap(), q.from_i64(-4));
        let g = pairing_matrix(&a, &[q.one(), q.zero()]).unwrap();
        assert!(g.determinant().unwrap().is_zero());
    }

    #[test]
    fn small_prime_field_exhaustive() {
        let f = Field::prime(2).unwrap();
        assert!(is_frobenius(&truncated_polynomial(f, 3, 0)).unwrap().frobenius);
        assert!(!is_frobenius(&upper_triangular(f)).unwrap().frobenius);
    }
}
