use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::matrix::{IntMatrix, IntVector};
use super::smith::{smith_normal_form, SmithForm};
use super::LinError;

/// Solves `a·x = b` over the integers.
///
/// Returns the canonical particular solution read off the Smith form: with
/// `u·a·v = s` and `y = v⁻¹x`, the free coordinates of `y` are set to zero.
pub fn solve_integer_system(a: &IntMatrix, b: &[BigInt]) -> Result<Option<IntVector>, LinError> {
    if b.len() != a.rows() {
        return Err(LinError::Dimension(format!(
            "right-hand side has length {}, matrix has {} rows",
            b.len(),
            a.rows()
        )));
    }
    Ok(solve_with(&smith_normal_form(a), b))
}

/// Same as [`solve_integer_system`] against a precomputed Smith form.
/// Panics if `b` has the wrong length.
pub fn solve_with(sf: &SmithForm, b: &[BigInt]) -> Option<IntVector> {
    let ub = sf.u.mul_vec(b);
    let r = sf.rank();
    let mut y = vec![BigInt::zero(); sf.source.cols()];
    for (i, c) in ub.iter().enumerate() {
        if i < r {
            let d = sf.s.get(i, i);
            let (q, rem) = c.div_rem(d);
            if !rem.is_zero() {
                return None;
            }
            y[i] = q;
        } else if !c.is_zero() {
            return None;
        }
    }
    Some(sf.v.mul_vec(&y))
}

/// Z-basis (as columns) of `{x : a·x = 0}`.
pub fn integer_kernel(a: &IntMatrix) -> IntMatrix {
    smith_normal_form(a).kernel_basis()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intlin::vec_ops;

    #[test]
    fn forced_solution() {
        let a = IntMatrix::from_i64(&[&[2]]);
        let x = solve_integer_system(&a, &vec_ops::from_i64(&[4])).unwrap();
        assert_eq!(x, Some(vec_ops::from_i64(&[2])));
    }

    #[test]
    fn parity_obstruction() {
        let a = IntMatrix::from_i64(&[&[2]]);
        assert_eq!(solve_integer_system(&a, &vec_ops::from_i64(&[3])).unwrap(), None);
    }

    #[test]
    fn rational_but_not_integral() {
        // Over Q the solution is (-4, 9/2).
        let a = IntMatrix::from_i64(&[&[1, 2], &[3, 4]]);
        assert_eq!(solve_integer_system(&a, &vec_ops::from_i64(&[5, 6])).unwrap(), None);
        for x0 in -30i64..=30 {
            for x1 in -30i64..=30 {
                assert!(!(x0 + 2 * x1 == 5 && 3 * x0 + 4 * x1 == 6));
            }
        }
    }

    #[test]
    fn dimension_mismatch() {
        let a = IntMatrix::from_i64(&[&[1, 2]]);
        assert!(matches!(
            solve_integer_system(&a, &vec_ops::from_i64(&[1, 2])),
            Err(LinError::Dimension(_))
        ));
    }

    #[test]
    fn underdetermined_canonical() {
        let a = IntMatrix::from_i64(&[&[1, 0]]);
        let x = solve_integer_system(&a, &vec_ops::from_i64(&[5])).unwrap();
        assert_eq!(x, Some(vec_ops::from_i64(&[5, 0])));
    }
}
