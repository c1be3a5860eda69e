//! Integer polynomials: characteristic polynomials and factorization into
//! monic irreducibles by Kronecker's method.
//!
//! Coefficients are stored lowest degree first. Kronecker's method is
//! exponential in the degree; it is meant for the small endomorphisms that
//! describe periodic tower tails.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::matrix::IntMatrix;
use super::LinError;

/// Integer polynomial, coefficients lowest degree first, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct IntPoly(Vec<BigInt>);

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly(coeffs)
    }

    pub fn from_i64(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn one() -> Self {
        IntPoly(vec![BigInt::one()])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.0
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn constant_term(&self) -> BigInt {
        self.0.first().cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.0.last().is_some_and(One::is_one)
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.0
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.0.is_empty() || other.0.is_empty() {
            return IntPoly(Vec::new());
        }
        let mut out = vec![BigInt::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }

    /// Exact division by a monic divisor; `None` when the remainder is nonzero.
    pub fn div_exact(&self, divisor: &IntPoly) -> Option<IntPoly> {
        assert!(divisor.is_monic(), "divisor must be monic");
        let dd = divisor.degree().unwrap();
        let Some(nd) = self.degree() else {
            return Some(self.clone());
        };
        if nd < dd {
            return None;
        }
        let mut rem = self.0.clone();
        let mut quot = vec![BigInt::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let c = rem[k + dd].clone();
            if c.is_zero() {
                continue;
            }
            for (i, d) in divisor.0.iter().enumerate() {
                rem[k + i] -= &c * d;
            }
            quot[k] = c;
        }
        rem.iter().all(Zero::is_zero).then(|| IntPoly::new(quot))
    }

    /// `p(A)` by Horner's scheme.
    pub fn eval_matrix(&self, a: &IntMatrix) -> IntMatrix {
        assert!(a.is_square());
        let n = a.rows();
        let mut acc = IntMatrix::zeros(n, n);
        for c in self.0.iter().rev() {
            acc = &(&acc * a) + &IntMatrix::scalar(n, c);
        }
        acc
    }
}

/// `det(x·I − A)` by the Faddeev–LeVerrier recurrence (all divisions exact).
pub fn characteristic_polynomial(a: &IntMatrix) -> Result<IntPoly, LinError> {
    if !a.is_square() {
        return Err(LinError::Dimension(format!(
            "characteristic polynomial of a {}x{} matrix",
            a.rows(),
            a.cols()
        )));
    }
    let n = a.rows();
    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[n] = BigInt::one();
    let mut m = IntMatrix::zeros(n, n);
    for k in 1..=n {
        m = &(a * &m) + &IntMatrix::scalar(n, &coeffs[n - k + 1]);
        let am = a * &m;
        let tr: BigInt = (0..n).map(|i| am.get(i, i).clone()).sum();
        let (q, r) = (-tr).div_rem(&BigInt::from(k));
        debug_assert!(r.is_zero());
        coeffs[n - k] = q;
    }
    Ok(IntPoly::new(coeffs))
}

const DIVISOR_LIMIT: u64 = 1 << 40;

fn divisors(v: &BigInt) -> Result<Vec<BigInt>, LinError> {
    let n = v
        .abs()
        .to_u64()
        .filter(|&n| n <= DIVISOR_LIMIT)
        .ok_or_else(|| LinError::Unsupported(format!("value {v} too large to enumerate divisors")))?;
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    Ok(small
        .into_iter()
        .flat_map(|d| [BigInt::from(d), -BigInt::from(d)])
        .collect())
}

/// Monic polynomial of degree `points.len()` taking `values` at `points`.
fn monic_interpolant(points: &[BigInt], values: &[BigInt]) -> Option<IntPoly> {
    let m = points.len();
    // g(x) = Π(x − aᵢ) + L(x), with L of degree < m interpolating the values.
    let mut lagrange = vec![BigRational::zero(); m];
    for i in 0..m {
        let mut basis = vec![BigRational::one()];
        let mut denom = BigInt::one();
        for j in 0..m {
            if i == j {
                continue;
            }
            let mut next = vec![BigRational::zero(); basis.len() + 1];
            for (k, c) in basis.iter().enumerate() {
                next[k + 1] += c.clone();
                next[k] -= c.clone() * BigRational::from_integer(points[j].clone());
            }
            basis = next;
            denom *= &points[i] - &points[j];
        }
        let scale = BigRational::new(values[i].clone(), denom);
        for (k, c) in basis.into_iter().enumerate() {
            lagrange[k] += c * scale.clone();
        }
    }
    let mut prod = IntPoly::one();
    for a in points {
        prod = prod.mul(&IntPoly(vec![-a.clone(), BigInt::one()]));
    }
    let mut coeffs = prod.0;
    for (k, c) in lagrange.into_iter().enumerate() {
        if !c.is_integer() {
            return None;
        }
        coeffs[k] += c.to_integer();
    }
    Some(IntPoly::new(coeffs))
}

fn find_factor(f: &IntPoly, m: usize) -> Result<Option<IntPoly>, LinError> {
    // Evaluation points with the fewest divisor combinations first.
    let mut cands: Vec<(BigInt, BigInt)> = (-6i64..=6)
        .map(BigInt::from)
        .map(|a| {
            let v = f.eval(&a);
            (a, v)
        })
        .filter(|(_, v)| !v.is_zero())
        .collect();
    cands.sort_by(|x, y| x.1.abs().cmp(&y.1.abs()).then(x.0.cmp(&y.0)));
    if cands.len() < m {
        return Ok(None);
    }
    cands.truncate(m);
    let points: Vec<BigInt> = cands.iter().map(|c| c.0.clone()).collect();
    let divs: Vec<Vec<BigInt>> = cands
        .iter()
        .map(|c| divisors(&c.1))
        .collect::<Result<_, _>>()?;
    let mut idx = vec![0usize; m];
    loop {
        let values: Vec<BigInt> = idx.iter().zip(&divs).map(|(&i, d)| d[i].clone()).collect();
        if let Some(g) = monic_interpolant(&points, &values) {
            if g.degree() == Some(m) && f.div_exact(&g).is_some() {
                return Ok(Some(g));
            }
        }
        let mut k = 0;
        loop {
            if k == m {
                return Ok(None);
            }
            idx[k] += 1;
            if idx[k] < divs[k].len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

/// Factors a monic integer polynomial into monic irreducible factors
/// (with repetition), in order of discovery: lowest degree first.
pub fn factor_monic(f: &IntPoly) -> Result<Vec<IntPoly>, LinError> {
    if !f.is_monic() {
        return Err(LinError::Unsupported("factorization needs a monic polynomial".into()));
    }
    let mut rest = f.clone();
    let mut out = Vec::new();
    // Linear factors: integer roots divide the constant term (or are 0).
    loop {
        if rest.degree().unwrap_or(0) == 0 {
            break;
        }
        let c0 = rest.constant_term();
        let root = if c0.is_zero() {
            Some(BigInt::zero())
        } else {
            divisors(&c0)?.into_iter().find(|r| rest.eval(r).is_zero())
        };
        match root {
            Some(r) => {
                let lin = IntPoly(vec![-r, BigInt::one()]);
                rest = rest.div_exact(&lin).expect("root gives an exact factor");
                out.push(lin);
            }
            None => break,
        }
    }
    'outer: while rest.degree().unwrap_or(0) > 0 {
        let d = rest.degree().unwrap();
        for m in 2..=d / 2 {
            if let Some(g) = find_factor(&rest, m)? {
                rest = rest.div_exact(&g).unwrap();
                out.push(g);
                continue 'outer;
            }
        }
        out.push(rest.clone());
        break;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn char_poly_small() {
        let a = IntMatrix::from_i64(&[&[2]]);
        assert_eq!(characteristic_polynomial(&a).unwrap(), IntPoly::from_i64(&[-2, 1]));
        let b = IntMatrix::from_i64(&[&[2, 1], &[1, 1]]);
        assert_eq!(characteristic_polynomial(&b).unwrap(), IntPoly::from_i64(&[1, -3, 1]));
        let nil = IntMatrix::from_i64(&[&[0, 1], &[0, 0]]);
        assert_eq!(characteristic_polynomial(&nil).unwrap(), IntPoly::from_i64(&[0, 0, 1]));
    }

    #[test]
    fn cayley_hamilton() {
        let a = IntMatrix::from_i64(&[&[1, 2, 0], &[-1, 3, 4], &[2, 0, -2]]);
        let p = characteristic_polynomial(&a).unwrap();
        assert!(p.eval_matrix(&a).is_zero());
    }

    #[test]
    fn factors_multiply_back() {
        // (x² + x + 1)(x² − 3x + 1)(x − 2)(x² + 2)
        let parts = [
            IntPoly::from_i64(&[1, 1, 1]),
            IntPoly::from_i64(&[1, -3, 1]),
            IntPoly::from_i64(&[-2, 1]),
            IntPoly::from_i64(&[2, 0, 1]),
        ];
        let f = parts.iter().fold(IntPoly::one(), |acc, p| acc.mul(p));
        let mut got = factor_monic(&f).unwrap();
        let mut want = parts.to_vec();
        got.sort_by_key(|p| format!("{p:?}"));
        want.sort_by_key(|p| format!("{p:?}"));
        assert_eq!(got, want);
    }

    #[test]
    fn irreducible_quartic_stays_whole() {
        let f = IntPoly::from_i64(&[2, 0, 0, 0, 1]); // x⁴ + 2, Eisenstein at 2
        assert_eq!(factor_monic(&f).unwrap(), vec![f]);
    }
}
