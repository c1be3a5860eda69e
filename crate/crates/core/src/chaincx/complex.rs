use num_bigint::BigInt;
use num_traits::One;

use super::CxError;
use crate::intlin::{vec_ops, IntMatrix, IntVector};

/// A bounded chain complex of free abelian groups `C_top → … → C₁ → C₀`.
///
/// Degrees above `top_degree` and below zero are the zero group. Elements of
/// `C_k` are integer vectors of length `rank(k)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ChainComplex {
    ranks: Vec<usize>,
    // boundaries[k - 1] is ∂ₖ: C_k → C_{k−1}.
    boundaries: Vec<IntMatrix>,
}

impl ChainComplex {
    /// `boundaries[k - 1]` is `∂ₖ`, a `rank(k−1) × rank(k)` matrix. Checks
    /// shapes and `∂ₖ₋₁∂ₖ = 0`.
    pub fn new(ranks: Vec<usize>, boundaries: Vec<IntMatrix>) -> Result<Self, CxError> {
        if ranks.is_empty() {
            return Err(CxError::Invalid("a complex needs at least degree 0".into()));
        }
        if boundaries.len() + 1 != ranks.len() {
            return Err(CxError::Invalid(format!(
                "{} degrees need {} boundary matrices, got {}",
                ranks.len(),
                ranks.len() - 1,
                boundaries.len()
            )));
        }
        for (i, d) in boundaries.iter().enumerate() {
            let k = i + 1;
            if d.rows() != ranks[k - 1] || d.cols() != ranks[k] {
                return Err(CxError::Invalid(format!(
                    "boundary in degree {k} is {}x{}, expected {}x{}",
                    d.rows(),
                    d.cols(),
                    ranks[k - 1],
                    ranks[k]
                )));
            }
        }
        for k in 2..ranks.len() {
            if !(&boundaries[k - 2] * &boundaries[k - 1]).is_zero() {
                return Err(CxError::Invalid(format!("boundary squares to a nonzero map in degree {k}")));
            }
        }
        Ok(ChainComplex { ranks, boundaries })
    }

    /// The complex with all groups zero through `top_degree`.
    pub fn zero(top_degree: usize) -> Self {
        ChainComplex {
            ranks: vec![0; top_degree + 1],
            boundaries: vec![IntMatrix::zeros(0, 0); top_degree],
        }
    }

    /// `Zʳ` in a single degree.
    pub fn concentrated(degree: usize, rank: usize) -> Self {
        let mut ranks = vec![0; degree + 1];
        ranks[degree] = rank;
        let boundaries = (1..=degree)
            .map(|k| IntMatrix::zeros(ranks[k - 1], ranks[k]))
            .collect();
        ChainComplex { ranks, boundaries }
    }

    /// `Z –id→ Z` in degrees `degree + 1 → degree`; acyclic.
    pub fn disk(degree: usize) -> Self {
        let mut ranks = vec![0; degree + 2];
        ranks[degree] = 1;
        ranks[degree + 1] = 1;
        let boundaries = (1..=degree + 1)
            .map(|k| {
                if k == degree + 1 {
                    IntMatrix::identity(1)
                } else {
                    IntMatrix::zeros(ranks[k - 1], ranks[k])
                }
            })
            .collect();
        ChainComplex { ranks, boundaries }
    }

    pub fn top_degree(&self) -> usize {
        self.ranks.len() - 1
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn rank(&self, k: usize) -> usize {
        self.ranks.get(k).copied().unwrap_or(0)
    }

    /// `∂ₖ` as a `rank(k−1) × rank(k)` matrix for any `k`; zero outside the stored range.
    pub fn boundary(&self, k: usize) -> IntMatrix {
        if k >= 1 && k <= self.top_degree() {
            self.boundaries[k - 1].clone()
        } else {
            let below = if k == 0 { 0 } else { self.rank(k - 1) };
            IntMatrix::zeros(below, self.rank(k))
        }
    }

    pub fn boundaries(&self) -> &[IntMatrix] {
        &self.boundaries
    }

    pub fn zero_chain(&self, k: usize) -> IntVector {
        vec_ops::zero(self.rank(k))
    }

    pub fn check_chain(&self, k: usize, x: &[BigInt]) -> Result<(), CxError> {
        if x.len() != self.rank(k) {
            return Err(CxError::Dimension(format!(
                "chain of length {} in degree {k}, which has rank {}",
                x.len(),
                self.rank(k)
            )));
        }
        Ok(())
    }

    /// `∂ₖ(x)`.
    pub fn apply_boundary(&self, k: usize, x: &[BigInt]) -> Result<IntVector, CxError> {
        self.check_chain(k, x)?;
        Ok(self.boundary(k).mul_vec(x))
    }

    pub fn is_cycle(&self, k: usize, x: &[BigInt]) -> bool {
        self.apply_boundary(k, x).is_ok_and(|d| vec_ops::is_zero(&d))
    }

    /// Direct sum, degreewise block-diagonal.
    pub fn direct_sum(&self, other: &ChainComplex) -> ChainComplex {
        let top = self.top_degree().max(other.top_degree());
        let ranks = (0..=top).map(|k| self.rank(k) + other.rank(k)).collect();
        let boundaries = (1..=top)
            .map(|k| IntMatrix::block_diagonal(&[self.boundary(k), other.boundary(k)]))
            .collect();
        ChainComplex { ranks, boundaries }
    }

    /// The same complex with zero groups appended up to `top_degree`.
    pub fn extended_to(&self, top_degree: usize) -> ChainComplex {
        if top_degree <= self.top_degree() {
            return self.clone();
        }
        let ranks = (0..=top_degree).map(|k| self.rank(k)).collect();
        let boundaries = (1..=top_degree).map(|k| self.boundary(k)).collect();
        ChainComplex { ranks, boundaries }
    }
}

/// A chain map, one matrix per degree `0 ..= max(top degrees)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ChainMap {
    source: ChainComplex,
    target: ChainComplex,
    maps: Vec<IntMatrix>,
}

impl ChainMap {
    /// Checks shapes and `fₖ₋₁∂ₖ = ∂ₖfₖ` in every degree. Missing trailing
    /// matrices are taken to be zero.
    pub fn new(source: ChainComplex, target: ChainComplex, mut maps: Vec<IntMatrix>) -> Result<Self, CxError> {
        let top = source.top_degree().max(target.top_degree());
        if maps.len() > top + 1 {
            return Err(CxError::Invalid(format!("{} map matrices for degrees 0..={top}", maps.len())));
        }
        while maps.len() <= top {
            let k = maps.len();
            maps.push(IntMatrix::zeros(target.rank(k), source.rank(k)));
        }
        for (k, m) in maps.iter().enumerate() {
            if m.rows() != target.rank(k) || m.cols() != source.rank(k) {
                return Err(CxError::Invalid(format!(
                    "map in degree {k} is {}x{}, expected {}x{}",
                    m.rows(),
                    m.cols(),
                    target.rank(k),
                    source.rank(k)
                )));
            }
        }
        for k in 1..=top {
            if &maps[k - 1] * &source.boundary(k) != &target.boundary(k) * &maps[k] {
                return Err(CxError::Invalid(format!("chain-map square fails in degree {k}")));
            }
        }
        Ok(ChainMap { source, target, maps })
    }

    pub fn identity(c: &ChainComplex) -> Self {
        let maps = (0..=c.top_degree()).map(|k| IntMatrix::identity(c.rank(k))).collect();
        ChainMap {
            source: c.clone(),
            target: c.clone(),
            maps,
        }
    }

    pub fn zero(source: &ChainComplex, target: &ChainComplex) -> Self {
        ChainMap::new(source.clone(), target.clone(), Vec::new()).expect("zero map is a chain map")
    }

    /// `c · id`.
    pub fn scalar(c: &ChainComplex, factor: i64) -> Self {
        let f = BigInt::from(factor);
        let maps = (0..=c.top_degree())
            .map(|k| IntMatrix::scalar(c.rank(k), &f))
            .collect();
        ChainMap {
            source: c.clone(),
            target: c.clone(),
            maps,
        }
    }

    pub fn source(&self) -> &ChainComplex {
        &self.source
    }

    pub fn target(&self) -> &ChainComplex {
        &self.target
    }

    pub fn top_degree(&self) -> usize {
        self.maps.len() - 1
    }

    /// `fₖ`; zero outside the stored range.
    pub fn matrix(&self, k: usize) -> IntMatrix {
        self.maps
            .get(k)
            .cloned()
            .unwrap_or_else(|| IntMatrix::zeros(self.target.rank(k), self.source.rank(k)))
    }

    pub fn matrices(&self) -> &[IntMatrix] {
        &self.maps
    }

    pub fn apply(&self, k: usize, x: &[BigInt]) -> Result<IntVector, CxError> {
        self.source.check_chain(k, x)?;
        Ok(self.matrix(k).mul_vec(x))
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &ChainMap) -> Result<ChainMap, CxError> {
        if first.target != self.source {
            return Err(CxError::Dimension("composing chain maps with mismatched complexes".into()));
        }
        let top = first.source.top_degree().max(self.target.top_degree());
        let maps = (0..=top).map(|k| &self.matrix(k) * &first.matrix(k)).collect();
        ChainMap::new(first.source.clone(), self.target.clone(), maps)
    }

    pub fn add(&self, other: &ChainMap) -> Result<ChainMap, CxError> {
        if self.source != other.source || self.target != other.target {
            return Err(CxError::Dimension("adding chain maps with different ends".into()));
        }
        let maps = self.maps.iter().zip(&other.maps).map(|(a, b)| a + b).collect();
        Ok(ChainMap {
            source: self.source.clone(),
            target: self.target.clone(),
            maps,
        })
    }

    /// True when every `fₖ` is onto `Z^{rank}` (checked through the Smith form).
    pub fn is_degreewise_surjective(&self) -> bool {
        (0..=self.top_degree()).all(|k| crate::intlin::smith_normal_form(&self.matrix(k)).is_surjective())
    }

    /// Onto in every positive degree. This is the lifting property used by
    /// every inductive construction on towers: lifts are only ever needed
    /// for bounding chains, which live in degree at least 1.
    pub fn is_fibration(&self) -> bool {
        (1..=self.top_degree()).all(|k| crate::intlin::smith_normal_form(&self.matrix(k)).is_surjective())
    }

    /// `f ⊕ g: A ⊕ C → B ⊕ D`.
    pub fn direct_sum(&self, other: &ChainMap) -> ChainMap {
        let source = self.source.direct_sum(&other.source);
        let target = self.target.direct_sum(&other.target);
        let top = source.top_degree().max(target.top_degree());
        let maps = (0..=top)
            .map(|k| IntMatrix::block_diagonal(&[self.matrix(k), other.matrix(k)]))
            .collect();
        ChainMap { source, target, maps }
    }

    /// Inclusion `A → A ⊕ C` of the first summand.
    pub fn inclusion_first(a: &ChainComplex, c: &ChainComplex) -> ChainMap {
        let target = a.direct_sum(c);
        let top = target.top_degree();
        let maps = (0..=top)
            .map(|k| {
                let mut m = IntMatrix::zeros(target.rank(k), a.rank(k));
                for i in 0..a.rank(k) {
                    m.set(i, i, BigInt::one());
                }
                m
            })
            .collect();
        ChainMap::new(a.clone(), target, maps).expect("summand inclusion is a chain map")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_nonzero_square() {
        let d1 = IntMatrix::from_i64(&[&[1]]);
        let d2 = IntMatrix::from_i64(&[&[1]]);
        assert!(matches!(ChainComplex::new(vec![1, 1, 1], vec![d1, d2]), Err(CxError::Invalid(_))));
    }

    #[test]
    fn rejects_bad_shape() {
        let d1 = IntMatrix::from_i64(&[&[1, 2]]);
        assert!(ChainComplex::new(vec![1, 1], vec![d1]).is_err());
    }

    #[test]
    fn boundary_outside_range_is_zero() {
        let c = ChainComplex::concentrated(1, 2);
        assert_eq!(c.boundary(0).rows(), 0);
        assert_eq!(c.boundary(2).rows(), 2);
        assert_eq!(c.boundary(2).cols(), 0);
        assert_eq!(c.rank(5), 0);
    }

    #[test]
    fn chain_map_square_checked() {
        let c = ChainComplex::disk(0);
        // (1, 0) in degrees (0, 1) is not a chain map on Z –id→ Z.
        let bad = ChainMap::new(c.clone(), c.clone(), vec![IntMatrix::identity(1), IntMatrix::zeros(1, 1)]);
        assert!(bad.is_err());
        assert!(ChainMap::new(c.clone(), c, vec![IntMatrix::scalar(1, &BigInt::from(3)); 2]).is_ok());
    }

    #[test]
    fn compose_and_surjectivity() {
        let c = ChainComplex::concentrated(1, 1);
        let two = ChainMap::scalar(&c, 2);
        assert!(!two.is_degreewise_surjective());
        assert!(ChainMap::identity(&c).is_degreewise_surjective());
        let four = two.compose(&two).unwrap();
        assert_eq!(four.matrix(1), IntMatrix::from_i64(&[&[4]]));
    }
}
