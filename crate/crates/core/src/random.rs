//! Seeded random instances: matrices, complexes, chain maps and towers.
//!
//! Everything is driven by a [`ChaCha8Rng`] so that a seed fully determines
//! the output. Chain maps are drawn from the integer lattice of all chain
//! maps between two complexes, which keeps the chain-map condition exact.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::chaincx::{ChainComplex, ChainMap, Homology};
use crate::gtower::{all_homomorphisms, AbelianTower, CayleyGroup, CayleyHom, FiniteGroupTower, TailPolicy};
use crate::intlin::{column_lattice_basis, integer_kernel, FgAbGroup, GroupHom, IntMatrix, IntVector};
use crate::miltower::ChainTower;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Which tail a generated tower gets.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TailKind {
    Trivial,
    Constant,
    Periodic,
}

impl TailKind {
    pub fn parse(s: &str) -> Option<TailKind> {
        match s {
            "trivial" => Some(TailKind::Trivial),
            "constant" => Some(TailKind::Constant),
            "periodic" => Some(TailKind::Periodic),
            _ => None,
        }
    }
}

/// Bounds for generated chain towers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Shape {
    /// Index of the top window level.
    pub window: usize,
    pub top_degree: usize,
    pub max_rank: usize,
    pub max_entry: i64,
}

impl Default for Shape {
    fn default() -> Self {
        Shape {
            window: 3,
            top_degree: 2,
            max_rank: 3,
            max_entry: 3,
        }
    }
}

pub fn random_matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize, bound: i64) -> IntMatrix {
    let data = (0..rows * cols).map(|_| BigInt::from(rng.gen_range(-bound..=bound))).collect();
    IntMatrix::new(rows, cols, data).expect("shape matches")
}

pub fn random_vector<R: Rng>(rng: &mut R, len: usize, bound: i64) -> IntVector {
    (0..len).map(|_| BigInt::from(rng.gen_range(-bound..=bound))).collect()
}

/// A random `{−1, 0, 1}` combination of the columns of `basis`, or zero when
/// the result would have an entry above `bound` after a few attempts.
fn small_combination<R: Rng>(rng: &mut R, basis: &IntMatrix, bound: i64) -> IntVector {
    let bound = BigInt::from(bound);
    for attempt in 0..8 {
        let keep = if attempt < 4 { 2 } else { 4 };
        let coeffs: IntVector = (0..basis.cols())
            .map(|_| match rng.gen_range(0..keep + 2) {
                0 => BigInt::from(1),
                1 => BigInt::from(-1),
                _ => BigInt::from(0),
            })
            .collect();
        let v = basis.mul_vec(&coeffs);
        if v.iter().all(|x| x.abs() <= bound) {
            return v;
        }
    }
    vec![BigInt::from(0); basis.rows()]
}

/// Random complex with ranks in `0..=max_rank` and boundary entries bounded
/// by `bound`; each `∂ₖ` has columns in the kernel of `∂ₖ₋₁`.
pub fn random_complex<R: Rng>(rng: &mut R, top_degree: usize, max_rank: usize, bound: i64) -> ChainComplex {
    let ranks: Vec<usize> = (0..=top_degree).map(|_| rng.gen_range(0..=max_rank)).collect();
    let mut boundaries: Vec<IntMatrix> = Vec::new();
    for k in 1..=top_degree {
        let d = if k == 1 {
            random_matrix(rng, ranks[0], ranks[1], bound)
        } else {
            let kernel = column_lattice_basis(&integer_kernel(&boundaries[k - 2]));
            let cols: Vec<IntVector> = (0..ranks[k]).map(|_| small_combination(rng, &kernel, bound)).collect();
            IntMatrix::from_columns(ranks[k - 1], &cols)
        };
        boundaries.push(d);
    }
    ChainComplex::new(ranks, boundaries).expect("construction gives ∂∂ = 0")
}

/// Random chain map `source → target` with entries bounded by `bound`.
pub fn random_chain_map<R: Rng>(rng: &mut R, source: &ChainComplex, target: &ChainComplex, bound: i64) -> ChainMap {
    let top = source.top_degree().max(target.top_degree());
    // Unknowns: the entries of f₀, …, f_top, row-major, one block per degree.
    let mut offsets = vec![0usize];
    for k in 0..=top {
        offsets.push(offsets[k] + target.rank(k) * source.rank(k));
    }
    let unknowns = offsets[top + 1];
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    for k in 1..=top {
        let (dx, dy) = (source.boundary(k), target.boundary(k));
        for i in 0..target.rank(k - 1) {
            for j in 0..source.rank(k) {
                // (f_{k−1} ∂ˣₖ − ∂ʸₖ fₖ)[i, j] = 0
                let mut row = vec![BigInt::from(0); unknowns];
                for l in 0..source.rank(k - 1) {
                    row[offsets[k - 1] + i * source.rank(k - 1) + l] += dx.get(l, j);
                }
                for l in 0..target.rank(k) {
                    row[offsets[k] + l * source.rank(k) + j] -= dy.get(i, l);
                }
                rows.push(row);
            }
        }
    }
    let constraints = IntMatrix::from_rows(rows, unknowns).expect("rows have the unknown count");
    let lattice = column_lattice_basis(&integer_kernel(&constraints));
    let v = small_combination(rng, &lattice, bound);
    let maps = (0..=top)
        .map(|k| {
            let (r, c) = (target.rank(k), source.rank(k));
            IntMatrix::new(r, c, v[offsets[k]..offsets[k + 1]].to_vec()).expect("block size")
        })
        .collect();
    ChainMap::new(source.clone(), target.clone(), maps).expect("kernel vectors are chain maps")
}

pub fn random_chain_tower<R: Rng>(rng: &mut R, shape: &Shape, tail: TailKind) -> ChainTower {
    let window: Vec<ChainComplex> = (0..=shape.window)
        .map(|_| random_complex(rng, shape.top_degree, shape.max_rank, shape.max_entry))
        .collect();
    let maps = (1..=shape.window)
        .map(|n| random_chain_map(rng, &window[n], &window[n - 1], shape.max_entry))
        .collect();
    let top = &window[shape.window];
    let tail = match tail {
        TailKind::Trivial => TailPolicy::Trivial,
        TailKind::Constant => TailPolicy::Constant,
        TailKind::Periodic => TailPolicy::Periodic(random_chain_map(rng, top, top, shape.max_entry)),
    };
    ChainTower::new(window, maps, tail).expect("generated maps match the window")
}

/// Random finite abelian group of order at most `max_order`, in normal form.
pub fn random_finite_abelian<R: Rng>(rng: &mut R, max_order: u64) -> FgAbGroup {
    let mut moduli = Vec::new();
    let mut order = 1u64;
    for _ in 0..3 {
        let room = max_order / order;
        if room < 2 || rng.gen_bool(0.35) {
            break;
        }
        let d = rng.gen_range(2..=room.min(8));
        order *= d;
        moduli.push(BigInt::from(d));
    }
    FgAbGroup::from_moduli(0, &moduli)
}

/// Uniformly chosen homomorphism between finite groups, built generator by
/// generator from the elements whose order divides the generator's.
pub fn random_finite_hom<R: Rng>(rng: &mut R, domain: &FgAbGroup, codomain: &FgAbGroup) -> GroupHom {
    let cod_order = codomain.small_order().expect("finite codomain");
    let mut m = IntMatrix::zeros(codomain.dim(), domain.dim());
    for j in 0..domain.dim() {
        let d = domain.modulus(j);
        let candidates: Vec<IntVector> = (0..cod_order)
            .map(|i| codomain.element_at(i))
            .filter(|y| {
                let scaled: IntVector = y.iter().map(|x| x * &d).collect();
                codomain.is_zero_element(&codomain.reduce(scaled))
            })
            .collect();
        let y = candidates.choose(rng).expect("zero is always a candidate");
        for (i, x) in y.iter().enumerate() {
            m.set(i, j, x.clone());
        }
    }
    GroupHom::new(domain.clone(), codomain.clone(), m).expect("images respect orders")
}

/// Tower of finite abelian groups; `levels` groups of order at most `max_order`.
pub fn random_finite_abelian_tower<R: Rng>(rng: &mut R, levels: usize, max_order: u64, tail: TailKind) -> AbelianTower {
    let window: Vec<FgAbGroup> = (0..levels).map(|_| random_finite_abelian(rng, max_order)).collect();
    let maps = (1..levels).map(|n| random_finite_hom(rng, &window[n], &window[n - 1])).collect();
    let top = &window[levels - 1];
    let tail = match tail {
        TailKind::Trivial => TailPolicy::Trivial,
        TailKind::Constant => TailPolicy::Constant,
        TailKind::Periodic => TailPolicy::Periodic(random_finite_hom(rng, top, top)),
    };
    AbelianTower::new(window, maps, tail).expect("generated maps match the window")
}

/// Random homomorphism between finitely generated abelian groups with
/// entries bounded by `bound`; free generators may map anywhere, torsion
/// generators only to elements of compatible order.
pub fn random_hom<R: Rng>(rng: &mut R, domain: &FgAbGroup, codomain: &FgAbGroup, bound: i64) -> GroupHom {
    let mut m = IntMatrix::zeros(codomain.dim(), domain.dim());
    for j in 0..domain.dim() {
        let col: IntVector = if j < domain.free_rank() {
            random_vector(rng, codomain.dim(), bound)
        } else {
            // Torsion generators of order d: free part must vanish and each
            // torsion coordinate must be killed by d.
            let d = domain.modulus(j);
            (0..codomain.dim())
                .map(|i| {
                    if i < codomain.free_rank() {
                        return BigInt::from(0);
                    }
                    let e = codomain.modulus(i);
                    let step = &e / num_integer::Integer::gcd(&e, &d);
                    let max = (&e / &step).to_i64().unwrap_or(1);
                    &step * BigInt::from(rng.gen_range(0..max))
                })
                .collect()
        };
        for (i, x) in col.into_iter().enumerate() {
            m.set(i, j, x);
        }
    }
    GroupHom::new(domain.clone(), codomain.clone(), m).expect("images respect orders")
}

/// Random finitely generated abelian group with small rank and torsion.
pub fn random_fg_abelian<R: Rng>(rng: &mut R, max_rank: usize, max_entry: i64) -> FgAbGroup {
    let free = rng.gen_range(0..=max_rank);
    let tors = rng.gen_range(0..=max_rank.saturating_sub(free).min(2));
    let moduli: Vec<BigInt> = (0..tors)
        .map(|_| BigInt::from(rng.gen_range(2..=max_entry.max(2))))
        .collect();
    FgAbGroup::from_moduli(free, &moduli)
}

pub fn random_abelian_tower<R: Rng>(rng: &mut R, shape: &Shape, tail: TailKind) -> AbelianTower {
    let window: Vec<FgAbGroup> = (0..=shape.window)
        .map(|_| random_fg_abelian(rng, shape.max_rank, shape.max_entry))
        .collect();
    let maps = (1..=shape.window)
        .map(|n| random_hom(rng, &window[n], &window[n - 1], shape.max_entry))
        .collect();
    let top = &window[shape.window];
    let tail = match tail {
        TailKind::Trivial => TailPolicy::Trivial,
        TailKind::Constant => TailPolicy::Constant,
        TailKind::Periodic => TailPolicy::Periodic(random_hom(rng, top, top, shape.max_entry)),
    };
    AbelianTower::new(window, maps, tail).expect("generated maps match the window")
}

/// Random cycle of degree `k`: a small combination of a kernel basis.
pub fn random_cycle<R: Rng>(rng: &mut R, c: &ChainComplex, k: usize, bound: i64) -> IntVector {
    let basis = Homology::compute(c, k).cycle_basis().clone();
    basis.mul_vec(&random_vector(rng, basis.cols(), bound))
}

/// Random boundary `∂ₖ₊₁(x)` in degree `k`.
pub fn random_boundary<R: Rng>(rng: &mut R, c: &ChainComplex, k: usize, bound: i64) -> IntVector {
    let x = random_vector(rng, c.rank(k + 1), bound);
    c.boundary(k + 1).mul_vec(&x)
}

/// Mapping cone of the identity of `c`: `C_k ⊕ C_{k−1}` with
/// `∂(x, y) = (∂x + y, −∂y)`. Acyclic.
pub fn identity_cone(c: &ChainComplex) -> ChainComplex {
    let top = c.top_degree() + 1;
    let ranks: Vec<usize> = (0..=top).map(|k| c.rank(k) + if k == 0 { 0 } else { c.rank(k - 1) }).collect();
    let boundaries = (1..=top)
        .map(|k| {
            let mut d = IntMatrix::zeros(ranks[k - 1], ranks[k]);
            let (rk, rk1) = (c.rank(k), c.rank(k - 1));
            d.paste(0, 0, &c.boundary(k));
            d.paste(0, rk, &IntMatrix::identity(rk1));
            if k >= 2 {
                d.paste(rk1, rk, &-&c.boundary(k - 1));
            }
            d
        })
        .collect();
    ChainComplex::new(ranks, boundaries).expect("cone of the identity satisfies ∂∂ = 0")
}

/// Small groups used for nonabelian Cayley towers.
pub fn cayley_catalog() -> Vec<CayleyGroup> {
    vec![
        CayleyGroup::trivial(),
        CayleyGroup::cyclic(2),
        CayleyGroup::cyclic(3),
        CayleyGroup::cyclic(4),
        CayleyGroup::symmetric3().0,
        CayleyGroup::dihedral4().0,
    ]
}

/// Tower of groups from `pool` joined by random homomorphisms.
pub fn random_cayley_tower<R: Rng>(rng: &mut R, pool: &[CayleyGroup], levels: usize, tail: TailKind) -> FiniteGroupTower {
    let window: Vec<CayleyGroup> = (0..levels).map(|_| pool.choose(rng).unwrap().clone()).collect();
    let pick = |rng: &mut R, d: &CayleyGroup, c: &CayleyGroup| -> CayleyHom {
        all_homomorphisms(d, c).choose(rng).unwrap().clone()
    };
    let maps = (1..levels).map(|n| pick(rng, &window[n], &window[n - 1])).collect();
    let top = &window[levels - 1];
    let tail = match tail {
        TailKind::Trivial => TailPolicy::Trivial,
        TailKind::Constant => TailPolicy::Constant,
        TailKind::Periodic => TailPolicy::Periodic(pick(rng, top, top)),
    };
    FiniteGroupTower::new(window, maps, tail).expect("homomorphisms match the window")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chain_maps_are_valid_and_deterministic() {
        let mut a = rng(7);
        let mut b = rng(7);
        for _ in 0..10 {
            let x = random_complex(&mut a, 2, 3, 3);
            let y = random_complex(&mut a, 2, 3, 3);
            let f = random_chain_map(&mut a, &x, &y, 3);
            let x2 = random_complex(&mut b, 2, 3, 3);
            let y2 = random_complex(&mut b, 2, 3, 3);
            assert_eq!(f, random_chain_map(&mut b, &x2, &y2, 3));
            assert!(f.matrices().iter().all(|m| m.max_abs() <= BigInt::from(3)));
        }
    }

    #[test]
    fn cones_are_acyclic() {
        let mut r = rng(11);
        for _ in 0..10 {
            let c = identity_cone(&random_complex(&mut r, 2, 3, 3));
            for k in 0..=c.top_degree() {
                assert!(Homology::compute(&c, k).group().is_trivial());
            }
        }
    }

    #[test]
    fn finite_towers_respect_order_bound() {
        let mut r = rng(1);
        for _ in 0..20 {
            let t = random_finite_abelian_tower(&mut r, 3, 16, TailKind::Constant);
            assert!(t.window().iter().all(|g| g.small_order().unwrap() <= 16));
        }
    }

    #[test]
    fn abelian_homs_are_valid() {
        let mut r = rng(3);
        for _ in 0..20 {
            let t = random_abelian_tower(&mut r, &Shape::default(), TailKind::Periodic);
            assert_eq!(t.window().len(), 4);
        }
    }
}
