use num_bigint::BigInt;

use super::complex::{ChainComplex, ChainMap};
use super::CxError;
use crate::intlin::{
    classify_presentation, smith_normal_form, solve_integer_system, vec_ops, FgAbGroup, GroupHom, IntMatrix,
    IntVector, Quotient,
};

/// `Hₖ = ker ∂ₖ / im ∂ₖ₊₁` with maps between cycles and normal-form classes.
///
/// Cycles are written in the basis of `ker ∂ₖ` read off the Smith form of
/// `∂ₖ`; boundaries of degree `k+1` chains give the relations.
#[derive(Clone, Debug)]
pub struct Homology {
    degree: usize,
    cycles: IntMatrix,
    cycle_coords: IntMatrix,
    quotient: Quotient,
}

impl Homology {
    pub fn new(c: &ChainComplex, k: usize) -> Result<Self, CxError> {
        if k > c.top_degree() {
            return Err(CxError::Degree(format!(
                "degree {k} is above the top degree {}",
                c.top_degree()
            )));
        }
        Ok(Self::compute(c, k))
    }

    /// Like [`Homology::new`] but accepts any degree; above the top the group is zero.
    pub fn compute(c: &ChainComplex, k: usize) -> Self {
        let sf = smith_normal_form(&c.boundary(k));
        let r = sf.rank();
        let n = c.rank(k);
        let keep: Vec<usize> = (r..n).collect();
        let cycles = sf.v.select_columns(&keep);
        let cycle_coords = sf.v_inv().select_rows(&keep);
        let relations = &cycle_coords * &c.boundary(k + 1);
        let quotient = classify_presentation(keep.len(), &relations);
        Homology {
            degree: k,
            cycles,
            cycle_coords,
            quotient,
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn group(&self) -> &FgAbGroup {
        &self.quotient.group
    }

    /// Basis of `ker ∂ₖ`, as columns.
    pub fn cycle_basis(&self) -> &IntMatrix {
        &self.cycles
    }

    fn is_cycle(&self, z: &[BigInt]) -> bool {
        self.cycles.mul_vec(&self.cycle_coords.mul_vec(z)) == z
    }

    /// The class of a cycle, in normal-form coordinates.
    pub fn class_of(&self, z: &[BigInt]) -> Result<IntVector, CxError> {
        if z.len() != self.cycles.rows() {
            return Err(CxError::Dimension(format!(
                "chain of length {} in degree {}, which has rank {}",
                z.len(),
                self.degree,
                self.cycles.rows()
            )));
        }
        if !self.is_cycle(z) {
            return Err(CxError::NotACycle(format!("chain in degree {} has nonzero boundary", self.degree)));
        }
        Ok(self.quotient.project(&self.cycle_coords.mul_vec(z)))
    }

    /// A cycle representing a normal-form class.
    pub fn representative(&self, class: &[BigInt]) -> IntVector {
        self.cycles.mul_vec(&self.quotient.lift(class))
    }

    pub fn same_class(&self, a: &[BigInt], b: &[BigInt]) -> Result<bool, CxError> {
        Ok(self.class_of(a)? == self.class_of(b)?)
    }

    pub fn is_zero_class(&self, z: &[BigInt]) -> Result<bool, CxError> {
        Ok(self.group().is_zero_element(&self.class_of(z)?))
    }
}

/// `Hₖ(c)`; errors when `k` exceeds the top degree.
pub fn homology(c: &ChainComplex, k: usize) -> Result<Homology, CxError> {
    Homology::new(c, k)
}

/// A cycle together with the class it represents.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HomologyClass {
    pub degree: usize,
    pub representative: IntVector,
    /// Normal-form coordinates in `Hₖ`.
    pub class: IntVector,
}

impl HomologyClass {
    pub fn new(h: &Homology, representative: IntVector) -> Result<Self, CxError> {
        let class = h.class_of(&representative)?;
        Ok(HomologyClass {
            degree: h.degree(),
            representative,
            class,
        })
    }
}

/// A chain `b` of degree `k+1` with `∂b = z`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Nullhomotopy {
    pub degree: usize,
    pub chain: IntVector,
    pub cycle: IntVector,
}

impl Nullhomotopy {
    pub fn verify(&self, c: &ChainComplex) -> bool {
        c.apply_boundary(self.degree + 1, &self.chain)
            .is_ok_and(|d| d == self.cycle)
    }
}

/// Finds `b` with `∂ₖ₊₁b = z`, or `None` when `[z] ≠ 0`.
pub fn solve_boundary(c: &ChainComplex, k: usize, z: &[BigInt]) -> Result<Option<Nullhomotopy>, CxError> {
    let d = c.apply_boundary(k, z)?;
    if !vec_ops::is_zero(&d) {
        return Err(CxError::NotACycle(format!("chain in degree {k} has nonzero boundary")));
    }
    let b = solve_integer_system(&c.boundary(k + 1), z)?;
    Ok(b.map(|chain| Nullhomotopy {
        degree: k,
        chain,
        cycle: z.to_vec(),
    }))
}

/// A preimage of `y` under `qₖ`, if any.
pub fn solve_lift(q: &ChainMap, k: usize, y: &[BigInt]) -> Result<Option<IntVector>, CxError> {
    q.target().check_chain(k, y)?;
    Ok(solve_integer_system(&q.matrix(k), y)?)
}

/// The map `Hₖ(source) → Hₖ(target)` induced by `f`.
pub fn induced_map(f: &ChainMap, k: usize, hs: &Homology, ht: &Homology) -> GroupHom {
    let src = hs.group();
    let mut m = IntMatrix::zeros(ht.group().dim(), src.dim());
    for j in 0..src.dim() {
        let mut unit = src.zero();
        unit[j] = BigInt::from(1);
        let image = f.matrix(k).mul_vec(&hs.representative(&unit));
        let class = ht.class_of(&image).expect("chain maps send cycles to cycles");
        for (i, x) in class.into_iter().enumerate() {
            m.set(i, j, x);
        }
    }
    GroupHom::new(src.clone(), ht.group().clone(), m).expect("induced maps respect torsion")
}

#[derive(Clone, Debug)]
pub struct DegreeReport {
    pub degree: usize,
    pub source: FgAbGroup,
    pub target: FgAbGroup,
    pub induced: GroupHom,
    pub isomorphism: bool,
}

#[derive(Clone, Debug)]
pub struct QuasiIsoReport {
    pub degrees: Vec<DegreeReport>,
}

impl QuasiIsoReport {
    pub fn is_quasi_iso(&self) -> bool {
        self.degrees.iter().all(|d| d.isomorphism)
    }
}

pub fn quasi_iso_report(f: &ChainMap) -> QuasiIsoReport {
    let degrees = (0..=f.top_degree())
        .map(|k| {
            let hs = Homology::compute(f.source(), k);
            let ht = Homology::compute(f.target(), k);
            let induced = induced_map(f, k, &hs, &ht);
            DegreeReport {
                degree: k,
                source: hs.group().clone(),
                target: ht.group().clone(),
                isomorphism: induced.is_isomorphism(),
                induced,
            }
        })
        .collect();
    QuasiIsoReport { degrees }
}

pub fn is_quasi_iso(f: &ChainMap) -> bool {
    quasi_iso_report(f).is_quasi_iso()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn times_two_complex() -> ChainComplex {
        ChainComplex::new(vec![1, 1], vec![IntMatrix::from_i64(&[&[2]])]).unwrap()
    }

    #[test]
    fn homology_of_times_two() {
        let c = times_two_complex();
        assert_eq!(homology(&c, 0).unwrap().group(), &FgAbGroup::cyclic(2));
        assert!(homology(&c, 1).unwrap().group().is_trivial());
    }

    #[test]
    fn homology_of_zero_differential() {
        let c = ChainComplex::new(vec![1, 1], vec![IntMatrix::from_i64(&[&[0]])]).unwrap();
        assert_eq!(homology(&c, 0).unwrap().group(), &FgAbGroup::free(1));
        assert_eq!(homology(&c, 1).unwrap().group(), &FgAbGroup::free(1));
    }

    #[test]
    fn zero_complex_and_degree_error() {
        let c = ChainComplex::zero(2);
        for k in 0..=2 {
            assert!(homology(&c, k).unwrap().group().is_trivial());
        }
        assert!(matches!(homology(&c, 3), Err(CxError::Degree(_))));
    }

    #[test]
    fn boundary_solving() {
        let c = times_two_complex();
        let b = solve_boundary(&c, 0, &vec_ops::from_i64(&[2])).unwrap().unwrap();
        assert_eq!(b.chain, vec_ops::from_i64(&[1]));
        assert!(b.verify(&c));
        assert!(solve_boundary(&c, 0, &vec_ops::from_i64(&[1])).unwrap().is_none());
        let zero = solve_boundary(&c, 0, &vec_ops::from_i64(&[0])).unwrap().unwrap();
        assert_eq!(zero.chain, vec_ops::from_i64(&[0]));
    }

    #[test]
    fn boundary_of_non_cycle() {
        let c = ChainComplex::disk(0);
        assert!(matches!(
            solve_boundary(&c, 1, &vec_ops::from_i64(&[1])),
            Err(CxError::NotACycle(_))
        ));
    }

    #[test]
    fn lifting() {
        let src = ChainComplex::concentrated(0, 2);
        let tgt = ChainComplex::concentrated(0, 1);
        let q = ChainMap::new(src, tgt.clone(), vec![IntMatrix::from_i64(&[&[1, 0]])]).unwrap();
        assert_eq!(solve_lift(&q, 0, &vec_ops::from_i64(&[5])).unwrap(), Some(vec_ops::from_i64(&[5, 0])));
        let two = ChainMap::scalar(&tgt, 2);
        assert_eq!(solve_lift(&two, 0, &vec_ops::from_i64(&[1])).unwrap(), None);
        let id = ChainMap::identity(&tgt);
        assert_eq!(solve_lift(&id, 0, &vec_ops::from_i64(&[-3])).unwrap(), Some(vec_ops::from_i64(&[-3])));
        assert!(matches!(solve_lift(&id, 0, &vec_ops::from_i64(&[1, 1])), Err(CxError::Dimension(_))));
    }

    #[test]
    fn quasi_isomorphisms() {
        let a = ChainComplex::concentrated(1, 1);
        assert!(is_quasi_iso(&ChainMap::identity(&a)));
        assert!(is_quasi_iso(&ChainMap::inclusion_first(&a, &ChainComplex::disk(0))));
        let report = quasi_iso_report(&ChainMap::scalar(&a, 2));
        assert!(!report.is_quasi_iso());
        assert_eq!(report.degrees[1].induced.matrix(), &IntMatrix::from_i64(&[&[2]]));
    }

    #[test]
    fn class_changes_by_boundaries_only() {
        let c = times_two_complex();
        let h = homology(&c, 0).unwrap();
        for x in -5i64..=5 {
            let z = vec_ops::from_i64(&[x]);
            let z2 = vec_ops::from_i64(&[x + 2 * 7]);
            assert!(h.same_class(&z, &z2).unwrap());
            assert_eq!(h.is_zero_class(&z).unwrap(), x % 2 == 0);
        }
    }
}
