//! Smith and Hermite normal forms over the integers.
//!
//! The Smith form is computed by pivoting on the entry of least absolute
//! value in the trailing submatrix, clearing its row and column by Euclidean
//! steps, and repairing divisibility by folding an offending row into the
//! pivot row. All four transforms (`u`, `u⁻¹`, `v`, `v⁻¹`) are tracked so
//! that solvers and quotient maps never need a separate inversion.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::IntMatrix;

/// `u · source · v = s`, with `u`, `v` unimodular and `s` diagonal with
/// positive invariant factors `d₁ | d₂ | … | d_rank` followed by zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
    pub source: IntMatrix,
    u_inv: IntMatrix,
    v_inv: IntMatrix,
    rank: usize,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// `u⁻¹`, exact.
    pub fn u_inv(&self) -> &IntMatrix {
        &self.u_inv
    }

    /// `v⁻¹`, exact.
    pub fn v_inv(&self) -> &IntMatrix {
        &self.v_inv
    }

    /// Nonzero diagonal entries of `s`, in order.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.rank).map(|i| self.s.get(i, i).clone()).collect()
    }

    /// Columns of `v` past the rank: a Z-basis of the integer kernel of `source`.
    pub fn kernel_basis(&self) -> IntMatrix {
        let n = self.source.cols();
        let idx: Vec<usize> = (self.rank..n).collect();
        self.v.select_columns(&idx)
    }

    /// True when every diagonal entry is a unit and the rank equals the row
    /// count, i.e. the columns of `source` span all of Zʳᵒʷˢ.
    pub fn is_surjective(&self) -> bool {
        self.rank == self.source.rows() && (0..self.rank).all(|i| self.s.get(i, i).is_one())
    }
}

struct Reducer {
    a: IntMatrix,
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
    v_inv: IntMatrix,
}

impl Reducer {
    // row[dst] += c * row[src]
    fn row_add(&mut self, dst: usize, src: usize, c: &BigInt) {
        self.a.add_row_multiple(dst, src, c);
        self.u.add_row_multiple(dst, src, c);
        let neg = -c;
        self.u_inv.add_col_multiple(src, dst, &neg);
    }

    fn row_swap(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        self.u.swap_rows(i, j);
        self.u_inv.swap_cols(i, j);
    }

    fn row_negate(&mut self, i: usize) {
        self.a.negate_row(i);
        self.u.negate_row(i);
        self.u_inv.negate_col(i);
    }

    // col[dst] += c * col[src]
    fn col_add(&mut self, dst: usize, src: usize, c: &BigInt) {
        self.a.add_col_multiple(dst, src, c);
        self.v.add_col_multiple(dst, src, c);
        let neg = -c;
        self.v_inv.add_row_multiple(src, dst, &neg);
    }

    fn col_swap(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        self.v.swap_cols(i, j);
        self.v_inv.swap_rows(i, j);
    }

    fn min_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, BigInt)> = None;
        for i in t..self.a.rows() {
            for j in t..self.a.cols() {
                let x = self.a.get(i, j);
                if x.is_zero() {
                    continue;
                }
                let ax = x.abs();
                if best.as_ref().is_none_or(|(_, _, b)| ax < *b) {
                    let unit = ax.is_one();
                    best = Some((i, j, ax));
                    if unit {
                        let (i, j, _) = best.unwrap();
                        return Some((i, j));
                    }
                }
            }
        }
        best.map(|(i, j, _)| (i, j))
    }

    /// Clears row and column `t` outside the pivot. Returns once the pivot
    /// is the only nonzero entry in both.
    fn clear_cross(&mut self, t: usize) {
        let (m, n) = (self.a.rows(), self.a.cols());
        loop {
            let mut dirty = false;
            for i in t + 1..m {
                if self.a.get(i, t).is_zero() {
                    continue;
                }
                let q = self.a.get(i, t).div_floor(self.a.get(t, t));
                self.row_add(i, t, &-q);
                if !self.a.get(i, t).is_zero() {
                    self.row_swap(i, t);
                    dirty = true;
                }
            }
            for j in t + 1..n {
                if self.a.get(t, j).is_zero() {
                    continue;
                }
                let q = self.a.get(t, j).div_floor(self.a.get(t, t));
                self.col_add(j, t, &-q);
                if !self.a.get(t, j).is_zero() {
                    self.col_swap(j, t);
                    dirty = true;
                }
            }
            if !dirty {
                return;
            }
        }
    }
}

/// Smith normal form with exact unimodular transforms. Deterministic.
pub fn smith_normal_form(source: &IntMatrix) -> SmithForm {
    let (m, n) = (source.rows(), source.cols());
    let mut r = Reducer {
        a: source.clone(),
        u: IntMatrix::identity(m),
        u_inv: IntMatrix::identity(m),
        v: IntMatrix::identity(n),
        v_inv: IntMatrix::identity(n),
    };
    let mut t = 0;
    while t < m.min(n) {
        let Some((pi, pj)) = r.min_pivot(t) else {
            break;
        };
        r.row_swap(t, pi);
        r.col_swap(t, pj);
        loop {
            r.clear_cross(t);
            let p = r.a.get(t, t).clone();
            let offender = (t + 1..m).find(|&i| {
                (t + 1..n).any(|j| !r.a.get(i, j).is_multiple_of(&p))
            });
            match offender {
                Some(i) => r.row_add(t, i, &BigInt::one()),
                None => break,
            }
        }
        if r.a.get(t, t).is_negative() {
            r.row_negate(t);
        }
        t += 1;
    }
    SmithForm {
        u: r.u,
        s: r.a,
        v: r.v,
        source: source.clone(),
        u_inv: r.u_inv,
        v_inv: r.v_inv,
        rank: t,
    }
}

/// Row-style Hermite normal form of `a`: the unique echelon basis of the row
/// lattice with positive pivots and entries above each pivot reduced into
/// `[0, pivot)`. Zero rows are dropped, so two matrices span the same row
/// lattice iff their Hermite forms are equal.
pub fn hermite_normal_form(a: &IntMatrix) -> IntMatrix {
    let mut h = a.clone();
    let (m, n) = (h.rows(), h.cols());
    let mut r = 0;
    for c in 0..n {
        if r == m {
            break;
        }
        // Euclid down the column until at most one nonzero remains at or below r.
        loop {
            let mut piv: Option<usize> = None;
            for i in r..m {
                if !h.get(i, c).is_zero()
                    && piv.is_none_or(|p| h.get(i, c).abs() < h.get(p, c).abs())
                {
                    piv = Some(i);
                }
            }
            let Some(p) = piv else { break };
            h.swap_rows(r, p);
            let mut done = true;
            for i in r + 1..m {
                if h.get(i, c).is_zero() {
                    continue;
                }
                let q = h.get(i, c).div_floor(h.get(r, c));
                h.add_row_multiple(i, r, &-q);
                if !h.get(i, c).is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h.get(r, c).is_zero() {
            continue;
        }
        if h.get(r, c).is_negative() {
            h.negate_row(r);
        }
        let p = h.get(r, c).clone();
        for i in 0..r {
            let q = h.get(i, c).div_floor(&p);
            h.add_row_multiple(i, r, &-q);
        }
        r += 1;
    }
    h.submatrix(0..r, 0..n)
}

/// Canonical basis (as columns) of the lattice spanned by the columns of `a`.
pub fn column_lattice_basis(a: &IntMatrix) -> IntMatrix {
    hermite_normal_form(&a.transpose()).transpose()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(a: &IntMatrix) -> SmithForm {
        let sf = smith_normal_form(a);
        assert_eq!(&(&sf.u * a) * &sf.v, sf.s);
        assert_eq!(&sf.u * sf.u_inv(), IntMatrix::identity(a.rows()));
        assert_eq!(&sf.v * sf.v_inv(), IntMatrix::identity(a.cols()));
        assert_eq!(sf.u.determinant().unwrap().abs(), BigInt::one());
        assert_eq!(sf.v.determinant().unwrap().abs(), BigInt::one());
        sf
    }

    #[test]
    fn identity_is_fixed() {
        let sf = check(&IntMatrix::identity(2));
        assert_eq!(sf.s, IntMatrix::identity(2));
        assert_eq!(sf.u, IntMatrix::identity(2));
        assert_eq!(sf.v, IntMatrix::identity(2));
    }

    #[test]
    fn two_by_two() {
        let a = IntMatrix::from_i64(&[&[2, 4], &[6, 8]]);
        let sf = check(&a);
        assert_eq!(sf.invariant_factors(), vec![BigInt::from(2), BigInt::from(4)]);
    }

    #[test]
    fn zero_matrix() {
        let sf = check(&IntMatrix::from_i64(&[&[0]]));
        assert_eq!(sf.s, IntMatrix::from_i64(&[&[0]]));
        assert_eq!(sf.rank(), 0);
    }

    #[test]
    fn divisibility_repair() {
        // diag(2, 3) must become diag(1, 6).
        let sf = check(&IntMatrix::from_i64(&[&[2, 0], &[0, 3]]));
        assert_eq!(sf.invariant_factors(), vec![BigInt::from(1), BigInt::from(6)]);
    }

    #[test]
    fn rectangular_and_kernel() {
        let a = IntMatrix::from_i64(&[&[1, 2, 3], &[4, 5, 6]]);
        let sf = check(&a);
        assert_eq!(sf.invariant_factors(), vec![BigInt::from(1), BigInt::from(3)]);
        let k = sf.kernel_basis();
        assert_eq!(k.cols(), 1);
        assert!((&a * &k).is_zero());
    }

    #[test]
    fn hermite_canonical() {
        let a = IntMatrix::from_i64(&[&[2, 4], &[6, 8]]);
        let b = IntMatrix::from_i64(&[&[2, 0], &[0, 4], &[4, 4]]);
        // Row lattices: a spans {(2,4),(6,8)} = det 8 lattice containing (2,0)?
        let ha = hermite_normal_form(&a);
        let hb = hermite_normal_form(&b);
        assert_eq!(ha, IntMatrix::from_i64(&[&[2, 0], &[0, 4]]));
        assert_eq!(ha, hb);
        assert_eq!(hermite_normal_form(&IntMatrix::zeros(2, 3)).rows(), 0);
    }
}
