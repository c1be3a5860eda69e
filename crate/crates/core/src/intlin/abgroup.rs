//! Finitely generated abelian groups in invariant-factor normal form.
//!
//! A group `Zʳ ⊕ Z/d₁ ⊕ … ⊕ Z/d_t` with `2 ≤ d₁ | d₂ | … | d_t` is stored as
//! `free_rank = r` and `torsion = [d₁, …, d_t]`. Elements are integer vectors
//! of length `r + t`: free coordinates first, then torsion coordinates kept
//! in `[0, dᵢ)`. Everything else (quotients, kernels, images, direct sums) is
//! reduced to classifying a presentation `Zˢ / span(relations)` by its Smith
//! form.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::matrix::{IntMatrix, IntVector};
use super::smith::smith_normal_form;
use super::solve::{integer_kernel, solve_integer_system};
use super::LinError;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FgAbGroup {
    free_rank: usize,
    torsion: Vec<BigInt>,
}

impl FgAbGroup {
    /// Validates the normal form: every factor at least 2, each dividing the next.
    pub fn new(free_rank: usize, torsion: Vec<BigInt>) -> Result<Self, LinError> {
        for (i, d) in torsion.iter().enumerate() {
            if *d < BigInt::from(2) {
                return Err(LinError::Group(format!("invariant factor {d} is below 2")));
            }
            if i + 1 < torsion.len() && !torsion[i + 1].is_multiple_of(d) {
                return Err(LinError::Group(format!(
                    "invariant factor {} does not divide {}",
                    d,
                    torsion[i + 1]
                )));
            }
        }
        Ok(FgAbGroup { free_rank, torsion })
    }

    pub fn trivial() -> Self {
        FgAbGroup {
            free_rank: 0,
            torsion: Vec::new(),
        }
    }

    pub fn free(rank: usize) -> Self {
        FgAbGroup {
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    /// `Z/d`; `d = 0` gives `Z` and `d = ±1` the trivial group.
    pub fn cyclic(d: i64) -> Self {
        match d.unsigned_abs() {
            0 => Self::free(1),
            1 => Self::trivial(),
            n => FgAbGroup {
                free_rank: 0,
                torsion: vec![BigInt::from(n)],
            },
        }
    }

    /// Normal form of `Z^free_rank ⊕ ⊕ Z/mᵢ` for arbitrary moduli `mᵢ`.
    pub fn from_moduli(free_rank: usize, moduli: &[BigInt]) -> Self {
        let n = free_rank + moduli.len();
        let rel = IntMatrix::diagonal(
            &std::iter::repeat_n(BigInt::zero(), free_rank)
                .chain(moduli.iter().cloned())
                .collect::<Vec<_>>(),
        );
        classify_presentation(n, &rel).group
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    /// Length of an element vector.
    pub fn dim(&self) -> usize {
        self.free_rank + self.torsion.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    /// Group order, or `None` when infinite.
    pub fn order(&self) -> Option<BigInt> {
        self.is_finite()
            .then(|| self.torsion.iter().fold(BigInt::one(), |acc, d| acc * d))
    }

    /// Modulus of coordinate `i`: zero for free coordinates.
    pub fn modulus(&self, i: usize) -> BigInt {
        if i < self.free_rank {
            BigInt::zero()
        } else {
            self.torsion[i - self.free_rank].clone()
        }
    }

    /// Columns generate the relations: `dᵢ·e_{r+i}` for each torsion coordinate.
    pub fn relation_matrix(&self) -> IntMatrix {
        let n = self.dim();
        let mut m = IntMatrix::zeros(n, self.torsion.len());
        for (i, d) in self.torsion.iter().enumerate() {
            m.set(self.free_rank + i, i, d.clone());
        }
        m
    }

    pub fn zero(&self) -> IntVector {
        vec![BigInt::zero(); self.dim()]
    }

    /// Reduces torsion coordinates. Panics on a length mismatch; use
    /// [`FgAbGroup::element`] for checked construction.
    pub fn reduce(&self, mut x: IntVector) -> IntVector {
        assert_eq!(x.len(), self.dim(), "element length mismatch");
        for (i, d) in self.torsion.iter().enumerate() {
            let c = &mut x[self.free_rank + i];
            *c = c.mod_floor(d);
        }
        x
    }

    pub fn element(&self, x: IntVector) -> Result<IntVector, LinError> {
        if x.len() != self.dim() {
            return Err(LinError::Element(format!(
                "vector of length {} in a group of dimension {}",
                x.len(),
                self.dim()
            )));
        }
        Ok(self.reduce(x))
    }

    /// True when `x` has the right length and reduced torsion coordinates.
    pub fn contains(&self, x: &[BigInt]) -> bool {
        x.len() == self.dim()
            && self
                .torsion
                .iter()
                .enumerate()
                .all(|(i, d)| !x[self.free_rank + i].is_negative() && x[self.free_rank + i] < *d)
    }

    pub fn add(&self, a: &[BigInt], b: &[BigInt]) -> IntVector {
        self.reduce(a.iter().zip(b).map(|(x, y)| x + y).collect())
    }

    pub fn sub(&self, a: &[BigInt], b: &[BigInt]) -> IntVector {
        self.reduce(a.iter().zip(b).map(|(x, y)| x - y).collect())
    }

    pub fn neg(&self, a: &[BigInt]) -> IntVector {
        self.reduce(a.iter().map(|x| -x).collect())
    }

    pub fn is_zero_element(&self, a: &[BigInt]) -> bool {
        self.reduce(a.to_vec()).iter().all(Zero::is_zero)
    }

    /// Order as a machine integer, when finite and small enough.
    pub fn small_order(&self) -> Option<usize> {
        self.order().and_then(|o| o.to_usize())
    }

    /// Mixed-radix index of an element of a finite group (last coordinate fastest).
    pub fn element_index(&self, x: &[BigInt]) -> usize {
        assert!(self.is_finite());
        let mut idx = 0usize;
        for (c, d) in x.iter().zip(&self.torsion) {
            let d = d.to_usize().expect("group too large to index");
            idx = idx * d + c.mod_floor(&BigInt::from(d)).to_usize().unwrap();
        }
        idx
    }

    pub fn element_at(&self, mut idx: usize) -> IntVector {
        assert!(self.is_finite());
        let mut out = vec![BigInt::zero(); self.torsion.len()];
        for (i, d) in self.torsion.iter().enumerate().rev() {
            let d = d.to_usize().expect("group too large to index");
            out[i] = BigInt::from(idx % d);
            idx /= d;
        }
        out
    }
}

impl fmt::Display for FgAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        write!(f, "{}", parts.join(" + "))
    }
}

/// `Zˢ / span(relations)` identified with its normal form.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub group: FgAbGroup,
    /// `group.dim() × s`; maps a vector of `Zˢ` to (unreduced) normal-form coordinates.
    pub to_nf: IntMatrix,
    /// `s × group.dim()`; column `i` represents the `i`-th normal-form generator.
    pub from_nf: IntMatrix,
}

impl Quotient {
    pub fn project(&self, x: &[BigInt]) -> IntVector {
        self.group.reduce(self.to_nf.mul_vec(x))
    }

    pub fn lift(&self, y: &[BigInt]) -> IntVector {
        self.from_nf.mul_vec(y)
    }
}

/// Classifies `Zˢ / span(columns of relations)`.
pub fn classify_presentation(generators: usize, relations: &IntMatrix) -> Quotient {
    assert_eq!(relations.rows(), generators, "relation vectors must live in Z^s");
    let sf = smith_normal_form(relations);
    let r = sf.rank();
    let mut torsion_rows = Vec::new();
    let mut torsion = Vec::new();
    for i in 0..r {
        let d = sf.s.get(i, i);
        if !d.is_one() {
            torsion_rows.push(i);
            torsion.push(d.clone());
        }
    }
    let mut rows: Vec<usize> = (r..generators).collect();
    let free_rank = rows.len();
    rows.extend(torsion_rows);
    Quotient {
        group: FgAbGroup { free_rank, torsion },
        to_nf: sf.u.select_rows(&rows),
        from_nf: sf.u_inv().select_columns(&rows),
    }
}

/// Homomorphism between groups in normal form; column `j` is the image of
/// the `j`-th domain generator, stored reduced.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GroupHom {
    domain: FgAbGroup,
    codomain: FgAbGroup,
    matrix: IntMatrix,
}

impl GroupHom {
    /// Checks shape and that every relation of the domain maps to zero.
    pub fn new(domain: FgAbGroup, codomain: FgAbGroup, matrix: IntMatrix) -> Result<Self, LinError> {
        if matrix.rows() != codomain.dim() || matrix.cols() != domain.dim() {
            return Err(LinError::Hom(format!(
                "matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                codomain.dim(),
                domain.dim()
            )));
        }
        for (k, d) in domain.torsion().iter().enumerate() {
            let j = domain.free_rank() + k;
            let col: IntVector = matrix.column(j).iter().map(|x| x * d).collect();
            if !codomain.is_zero_element(&col) {
                return Err(LinError::Hom(format!(
                    "generator {j} has order {d} but its image does not"
                )));
            }
        }
        let mut m = matrix;
        for i in codomain.free_rank()..codomain.dim() {
            let e = codomain.modulus(i);
            for j in 0..m.cols() {
                let v = m.get(i, j).mod_floor(&e);
                m.set(i, j, v);
            }
        }
        Ok(GroupHom {
            domain,
            codomain,
            matrix: m,
        })
    }

    pub fn identity(g: &FgAbGroup) -> Self {
        GroupHom::new(g.clone(), g.clone(), IntMatrix::identity(g.dim())).unwrap()
    }

    pub fn zero(domain: &FgAbGroup, codomain: &FgAbGroup) -> Self {
        GroupHom {
            domain: domain.clone(),
            codomain: codomain.clone(),
            matrix: IntMatrix::zeros(codomain.dim(), domain.dim()),
        }
    }

    pub fn domain(&self) -> &FgAbGroup {
        &self.domain
    }

    pub fn codomain(&self) -> &FgAbGroup {
        &self.codomain
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn apply(&self, x: &[BigInt]) -> Result<IntVector, LinError> {
        if x.len() != self.domain.dim() {
            return Err(LinError::Element(format!(
                "vector of length {} for a domain of dimension {}",
                x.len(),
                self.domain.dim()
            )));
        }
        Ok(self.codomain.reduce(self.matrix.mul_vec(x)))
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &GroupHom) -> Result<GroupHom, LinError> {
        if first.codomain != self.domain {
            return Err(LinError::Hom(format!(
                "cannot compose {} -> {} after {} -> {}",
                self.domain, self.codomain, first.domain, first.codomain
            )));
        }
        GroupHom::new(
            first.domain.clone(),
            self.codomain.clone(),
            &self.matrix * &first.matrix,
        )
    }

    pub fn add(&self, other: &GroupHom) -> Result<GroupHom, LinError> {
        if self.domain != other.domain || self.codomain != other.codomain {
            return Err(LinError::Hom("sum of homomorphisms with different ends".into()));
        }
        GroupHom::new(
            self.domain.clone(),
            self.codomain.clone(),
            &self.matrix + &other.matrix,
        )
    }

    pub fn neg(&self) -> GroupHom {
        GroupHom::new(self.domain.clone(), self.codomain.clone(), -&self.matrix).unwrap()
    }

    pub fn sub(&self, other: &GroupHom) -> Result<GroupHom, LinError> {
        self.add(&other.neg())
    }

    /// `[matrix | relations of the codomain]`: its column lattice is the
    /// preimage of `image(self)` in the codomain's coordinate lattice.
    fn image_lattice(&self) -> IntMatrix {
        self.matrix.hstack(&self.codomain.relation_matrix())
    }

    pub fn kernel(&self) -> Subgroup {
        let k = integer_kernel(&self.image_lattice());
        let n = self.domain.dim();
        let gens = k.submatrix(0..n, 0..k.cols()).columns();
        Subgroup::generated(&self.domain, &gens)
    }

    pub fn image(&self) -> Subgroup {
        Subgroup::generated(&self.codomain, &self.matrix.columns())
    }

    /// Some preimage of `y`, if `y` lies in the image.
    pub fn preimage(&self, y: &[BigInt]) -> Option<IntVector> {
        let n = self.domain.dim();
        solve_integer_system(&self.image_lattice(), y)
            .expect("dimensions checked by construction")
            .map(|c| self.domain.reduce(c[..n].to_vec()))
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().group.is_trivial()
    }

    pub fn is_surjective(&self) -> bool {
        cokernel_classify(self).0.is_trivial()
    }

    pub fn is_isomorphism(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }
}

/// Normal form of `codomain / image(h)` together with the projection.
pub fn cokernel_classify(h: &GroupHom) -> (FgAbGroup, GroupHom) {
    let q = classify_presentation(h.codomain.dim(), &h.image_lattice());
    let proj = GroupHom::new(h.codomain.clone(), q.group.clone(), q.to_nf)
        .expect("projection onto a quotient is a homomorphism");
    (q.group, proj)
}

/// A subgroup of `ambient`, classified, with its inclusion map.
#[derive(Clone, Debug)]
pub struct Subgroup {
    pub ambient: FgAbGroup,
    pub group: FgAbGroup,
    pub inclusion: GroupHom,
    generators: IntMatrix,
    presentation: Quotient,
}

impl Subgroup {
    /// The subgroup generated by `gens` (vectors in ambient coordinates).
    pub fn generated(ambient: &FgAbGroup, gens: &[IntVector]) -> Subgroup {
        let n = ambient.dim();
        let s = gens.len();
        let g = IntMatrix::from_columns(n, gens);
        let joint = g.hstack(&ambient.relation_matrix());
        let k = integer_kernel(&joint);
        let relations = k.submatrix(0..s, 0..k.cols());
        let presentation = classify_presentation(s, &relations);
        let inclusion = GroupHom::new(
            presentation.group.clone(),
            ambient.clone(),
            &g * &presentation.from_nf,
        )
        .expect("inclusion of a generated subgroup");
        Subgroup {
            ambient: ambient.clone(),
            group: presentation.group.clone(),
            inclusion,
            generators: g,
            presentation,
        }
    }

    pub fn contains(&self, x: &[BigInt]) -> bool {
        self.coordinates(x).is_some()
    }

    /// Coordinates in `self.group` of an ambient element, if it lies in the subgroup.
    pub fn coordinates(&self, x: &[BigInt]) -> Option<IntVector> {
        let joint = self.generators.hstack(&self.ambient.relation_matrix());
        let c = solve_integer_system(&joint, x).ok()??;
        let s = self.generators.cols();
        Some(self.presentation.project(&c[..s]))
    }

    /// Equality as subsets of the ambient group.
    pub fn same_as(&self, other: &Subgroup) -> bool {
        self.ambient == other.ambient
            && self.generators.columns().iter().all(|g| other.contains(g))
            && other.generators.columns().iter().all(|g| self.contains(g))
    }
}

/// `G₀ ⊕ … ⊕ G_m` in normal form with its structure maps.
#[derive(Clone, Debug)]
pub struct DirectSum {
    pub group: FgAbGroup,
    pub summands: Vec<FgAbGroup>,
    pub injections: Vec<GroupHom>,
    pub projections: Vec<GroupHom>,
}

impl DirectSum {
    pub fn new(summands: &[FgAbGroup]) -> DirectSum {
        let blocks: Vec<IntMatrix> = summands
            .iter()
            .map(|g| {
                let m = g.relation_matrix();
                // Pad to a square block so the block-diagonal has one column per coordinate.
                let mut sq = IntMatrix::zeros(g.dim(), g.dim());
                sq.paste(0, g.free_rank(), &m.submatrix(0..g.dim(), 0..m.cols()));
                sq
            })
            .collect();
        let rel = IntMatrix::block_diagonal(&blocks);
        let total: usize = summands.iter().map(FgAbGroup::dim).sum();
        let q = classify_presentation(total, &rel);
        let mut injections = Vec::new();
        let mut projections = Vec::new();
        let mut off = 0;
        for g in summands {
            let idx: Vec<usize> = (off..off + g.dim()).collect();
            injections.push(
                GroupHom::new(g.clone(), q.group.clone(), q.to_nf.select_columns(&idx))
                    .expect("summand injection"),
            );
            projections.push(
                GroupHom::new(q.group.clone(), g.clone(), q.from_nf.select_rows(&idx))
                    .expect("summand projection"),
            );
            off += g.dim();
        }
        DirectSum {
            group: q.group,
            summands: summands.to_vec(),
            injections,
            projections,
        }
    }

    /// Element of the sum with the given components.
    pub fn pack(&self, parts: &[IntVector]) -> IntVector {
        let mut acc = self.group.zero();
        for (inj, x) in self.injections.iter().zip(parts) {
            acc = self.group.add(&acc, &inj.apply(x).expect("component length"));
        }
        acc
    }

    pub fn unpack(&self, x: &[BigInt]) -> Vec<IntVector> {
        self.projections
            .iter()
            .map(|p| p.apply(x).expect("element length"))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intlin::vec_ops;

    fn hom(dom: FgAbGroup, cod: FgAbGroup, m: &[&[i64]]) -> GroupHom {
        GroupHom::new(dom, cod, IntMatrix::from_i64(m)).unwrap()
    }

    #[test]
    fn normal_form_validation() {
        assert!(FgAbGroup::new(0, vec![BigInt::from(2), BigInt::from(3)]).is_err());
        assert!(FgAbGroup::new(0, vec![BigInt::from(1)]).is_err());
        assert!(FgAbGroup::new(1, vec![BigInt::from(2), BigInt::from(4)]).is_ok());
    }

    #[test]
    fn from_moduli_merges_coprime_factors() {
        let g = FgAbGroup::from_moduli(0, &[BigInt::from(2), BigInt::from(3)]);
        assert_eq!(g, FgAbGroup::cyclic(6));
        let h = FgAbGroup::from_moduli(1, &[BigInt::from(4), BigInt::from(6)]);
        assert_eq!(h.to_string(), "Z + Z/2 + Z/12");
    }

    #[test]
    fn cokernel_times_six() {
        let h = hom(FgAbGroup::free(1), FgAbGroup::free(1), &[&[6]]);
        let (c, p) = cokernel_classify(&h);
        assert_eq!(c, FgAbGroup::cyclic(6));
        assert_eq!(p.apply(&vec_ops::from_i64(&[7])).unwrap(), vec_ops::from_i64(&[1]));
    }

    #[test]
    fn cokernel_zero_map() {
        let h = hom(FgAbGroup::free(1), FgAbGroup::free(1), &[&[0]]);
        assert_eq!(cokernel_classify(&h).0, FgAbGroup::free(1));
    }

    #[test]
    fn cokernel_diag_two_three() {
        let h = hom(FgAbGroup::free(2), FgAbGroup::free(2), &[&[2, 0], &[0, 3]]);
        let (c, p) = cokernel_classify(&h);
        assert_eq!(c, FgAbGroup::cyclic(6));
        // Enumerate representatives of Z²/(2Z ⊕ 3Z): the box [0,2)×[0,3) has 6 classes.
        let mut seen = std::collections::BTreeSet::new();
        for a in 0..2 {
            for b in 0..3 {
                seen.insert(p.apply(&vec_ops::from_i64(&[a, b])).unwrap());
            }
        }
        assert_eq!(seen.len(), 6);
    }

    #[test]
    fn incompatible_hom_rejected() {
        // Z/2 -> Z sending the generator to 1 is not a homomorphism.
        let r = GroupHom::new(FgAbGroup::cyclic(2), FgAbGroup::free(1), IntMatrix::from_i64(&[&[1]]));
        assert!(matches!(r, Err(LinError::Hom(_))));
        // Z/4 -> Z/2 reduction is.
        assert!(GroupHom::new(FgAbGroup::cyclic(4), FgAbGroup::cyclic(2), IntMatrix::from_i64(&[&[1]])).is_ok());
    }

    #[test]
    fn kernel_and_image() {
        // Z/4 -> Z/4, x -> 2x: kernel Z/2, image Z/2.
        let h = hom(FgAbGroup::cyclic(4), FgAbGroup::cyclic(4), &[&[2]]);
        assert_eq!(h.kernel().group, FgAbGroup::cyclic(2));
        assert_eq!(h.image().group, FgAbGroup::cyclic(2));
        assert!(!h.is_injective());
        assert!(h.image().contains(&vec_ops::from_i64(&[2])));
        assert!(!h.image().contains(&vec_ops::from_i64(&[1])));
        // Z^2 -> Z, (a,b) -> a+2b: kernel Z.
        let g = hom(FgAbGroup::free(2), FgAbGroup::free(1), &[&[1, 2]]);
        assert_eq!(g.kernel().group, FgAbGroup::free(1));
        assert!(g.is_surjective());
    }

    #[test]
    fn direct_sum_round_trip() {
        let ds = DirectSum::new(&[FgAbGroup::cyclic(2), FgAbGroup::cyclic(3), FgAbGroup::free(1)]);
        assert_eq!(ds.group.to_string(), "Z + Z/6");
        let parts = vec![
            vec_ops::from_i64(&[1]),
            vec_ops::from_i64(&[2]),
            vec_ops::from_i64(&[-5]),
        ];
        assert_eq!(ds.unpack(&ds.pack(&parts)), parts);
    }

    #[test]
    fn finite_indexing() {
        let g = FgAbGroup::new(0, vec![BigInt::from(2), BigInt::from(4)]).unwrap();
        for i in 0..8 {
            assert_eq!(g.element_index(&g.element_at(i)), i);
        }
    }
}
