use num_bigint::BigInt;
use num_traits::One;

use super::complex::{ChainComplex, ChainMap};
use crate::intlin::IntMatrix;

/// Factors `f: A → B` as a quasi-isomorphism followed by a fibration.
#[derive(Clone, Debug)]
pub struct PathFactorization {
    pub complex: ChainComplex,
    pub j: ChainMap,
    pub ev1: ChainMap,
}

/// Mapping path complex of `f: A → B`.
///
/// In positive degrees `E_k = A_k ⊕ B_k ⊕ B_{k+1}` with
/// `∂(a, x, h) = (∂a, ∂x, x − f(a) − ∂h)`: pairs `(a, path)` whose path starts
/// at `f(a)`. In degree 0 only paths with `x = f(a) + ∂h` are kept, so
/// `E_0 = A_0 ⊕ B_1` with `(a, h)` standing for `(a, f(a) + ∂h, h)`.
///
/// `j(a) = (a, f(a), 0)` is a quasi-isomorphism and `ev1(a, x, h) = x` is
/// onto in every positive degree; in degree 0 it is onto exactly when
/// `H₀(f)` is.
pub fn path_fibration_replace(f: &ChainMap) -> PathFactorization {
    let a = f.source();
    let b = f.target();
    let top = a.top_degree().max(b.top_degree());
    let rank = |k: usize| a.rank(k) + if k == 0 { 0 } else { b.rank(k) } + b.rank(k + 1);
    let ranks: Vec<usize> = (0..=top).map(rank).collect();
    let mut boundaries = Vec::with_capacity(top);
    for k in 1..=top {
        let (ra, rb) = (a.rank(k), b.rank(k));
        let sa = a.rank(k - 1);
        // Start of the path-value block B_k in degree k − 1.
        let sh = if k == 1 { sa } else { sa + b.rank(k - 1) };
        let mut d = IntMatrix::zeros(ranks[k - 1], ranks[k]);
        d.paste(0, 0, &a.boundary(k));
        if k > 1 {
            d.paste(sa, ra, &b.boundary(k));
        }
        d.paste(sh, 0, &-&f.matrix(k));
        d.paste(sh, ra, &IntMatrix::identity(rb));
        d.paste(sh, ra + rb, &-&b.boundary(k + 1));
        boundaries.push(d);
    }
    let complex = ChainComplex::new(ranks.clone(), boundaries).expect("mapping path complex satisfies ∂∂ = 0");
    let j_maps = (0..=top)
        .map(|k| {
            let mut m = IntMatrix::zeros(ranks[k], a.rank(k));
            m.paste(0, 0, &IntMatrix::identity(a.rank(k)));
            if k > 0 {
                m.paste(a.rank(k), 0, &f.matrix(k));
            }
            m
        })
        .collect();
    let ev_maps = (0..=top)
        .map(|k| {
            let mut m = IntMatrix::zeros(b.rank(k), ranks[k]);
            if k == 0 {
                m.paste(0, 0, &f.matrix(0));
                m.paste(0, a.rank(0), &b.boundary(1));
            } else {
                for i in 0..b.rank(k) {
                    m.set(i, a.rank(k) + i, BigInt::one());
                }
            }
            m
        })
        .collect();
    let j = ChainMap::new(a.clone(), complex.clone(), j_maps).expect("inclusion is a chain map");
    let ev1 = ChainMap::new(complex.clone(), b.clone(), ev_maps).expect("evaluation is a chain map");
    PathFactorization { complex, j, ev1 }
}
