use std::fmt::Debug;

use num_bigint::BigInt;

use super::finite::{CayleyGroup, CayleyHom};
use super::GtError;
use crate::intlin::{FgAbGroup, GroupHom, IntVector};

/// How the tower continues above the stored window `G₀ … G_N`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum TailPolicy<E> {
    /// `Gₙ` trivial for `n > N`.
    Trivial,
    /// `Gₙ = G_N` with identity maps for `n > N`.
    Constant,
    /// `Gₙ = G_N` with every map above the window equal to the endomorphism.
    Periodic(E),
}

impl<E> TailPolicy<E> {
    pub fn kind(&self) -> &'static str {
        match self {
            TailPolicy::Trivial => "trivial",
            TailPolicy::Constant => "constant",
            TailPolicy::Periodic(_) => "periodic",
        }
    }

    pub fn map<F, T>(&self, f: F) -> TailPolicy<T>
    where
        F: FnOnce(&E) -> T,
    {
        match self {
            TailPolicy::Trivial => TailPolicy::Trivial,
            TailPolicy::Constant => TailPolicy::Constant,
            TailPolicy::Periodic(e) => TailPolicy::Periodic(f(e)),
        }
    }
}

/// Uniform access to the group structure of a tower, level by level.
/// `project(n, a)` is `pₙ(a)` for `1 ≤ n ≤ N`.
pub trait GroupTower {
    type Elem: Clone + PartialEq + Debug;

    /// Index `N` of the top window level.
    fn top(&self) -> usize;
    fn identity(&self, level: usize) -> Self::Elem;
    fn op(&self, level: usize, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inverse(&self, level: usize, a: &Self::Elem) -> Self::Elem;
    fn project(&self, level: usize, a: &Self::Elem) -> Self::Elem;
    fn contains(&self, level: usize, a: &Self::Elem) -> bool;
}

/// Per-level elements `(g₀, …, g_N)`; levels above the window are the identity.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TowerElementFamily<E> {
    pub elems: Vec<E>,
}

impl<E: Clone> TowerElementFamily<E> {
    pub fn new(elems: Vec<E>) -> Self {
        TowerElementFamily { elems }
    }

    pub fn identity<T: GroupTower<Elem = E>>(tower: &T) -> Self {
        TowerElementFamily {
            elems: (0..=tower.top()).map(|n| tower.identity(n)).collect(),
        }
    }

    /// Levelwise product `a·b`.
    pub fn product<T: GroupTower<Elem = E>>(tower: &T, a: &Self, b: &Self) -> Self {
        TowerElementFamily {
            elems: (0..=tower.top()).map(|n| tower.op(n, &a.elems[n], &b.elems[n])).collect(),
        }
    }
}

fn check_family<T: GroupTower>(tower: &T, f: &TowerElementFamily<T::Elem>, name: &str) -> Result<(), GtError> {
    if f.elems.len() != tower.top() + 1 {
        return Err(GtError::Element(format!(
            "family {name} has {} levels, tower has {}",
            f.elems.len(),
            tower.top() + 1
        )));
    }
    for (n, x) in f.elems.iter().enumerate() {
        if !tower.contains(n, x) {
            return Err(GtError::Element(format!("family {name}: entry {n} is not in G_{n}")));
        }
    }
    Ok(())
}

/// The product-group action: level `n` of the result is
/// `gₙ · hₙ · pₙ₊₁(gₙ₊₁⁻¹)`, with `g_{N+1}` the identity.
pub fn tower_act<T: GroupTower>(
    tower: &T,
    g: &TowerElementFamily<T::Elem>,
    h: &TowerElementFamily<T::Elem>,
) -> Result<TowerElementFamily<T::Elem>, GtError> {
    check_family(tower, g, "g")?;
    check_family(tower, h, "h")?;
    let top = tower.top();
    let elems = (0..=top)
        .map(|n| {
            let gh = tower.op(n, &g.elems[n], &h.elems[n]);
            if n < top {
                let down = tower.project(n + 1, &tower.inverse(n + 1, &g.elems[n + 1]));
                tower.op(n, &gh, &down)
            } else {
                gh
            }
        })
        .collect();
    Ok(TowerElementFamily { elems })
}

/// A tower of finitely generated abelian groups.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AbelianTower {
    window: Vec<FgAbGroup>,
    maps: Vec<GroupHom>,
    tail: TailPolicy<GroupHom>,
}

impl AbelianTower {
    /// `maps[i]` is `p_{i+1}: G_{i+1} → G_i`.
    pub fn new(window: Vec<FgAbGroup>, maps: Vec<GroupHom>, tail: TailPolicy<GroupHom>) -> Result<Self, GtError> {
        if window.is_empty() {
            return Err(GtError::Tower("a tower needs at least one level".into()));
        }
        if maps.len() + 1 != window.len() {
            return Err(GtError::Tower(format!(
                "{} levels need {} maps, got {}",
                window.len(),
                window.len() - 1,
                maps.len()
            )));
        }
        for (i, p) in maps.iter().enumerate() {
            if p.domain() != &window[i + 1] || p.codomain() != &window[i] {
                return Err(GtError::Tower(format!("map p_{} has the wrong domain or codomain", i + 1)));
            }
        }
        if let TailPolicy::Periodic(e) = &tail {
            let top = window.last().unwrap();
            if e.domain() != top || e.codomain() != top {
                return Err(GtError::Tower("tail endomorphism must act on the top window group".into()));
            }
        }
        Ok(AbelianTower { window, maps, tail })
    }

    pub fn window(&self) -> &[FgAbGroup] {
        &self.window
    }

    pub fn maps(&self) -> &[GroupHom] {
        &self.maps
    }

    pub fn tail(&self) -> &TailPolicy<GroupHom> {
        &self.tail
    }

    pub fn level(&self, n: usize) -> &FgAbGroup {
        &self.window[n]
    }

    /// `pₙ: Gₙ → Gₙ₋₁`, `1 ≤ n ≤ N`.
    pub fn map(&self, n: usize) -> &GroupHom {
        &self.maps[n - 1]
    }

    pub fn all_finite(&self) -> bool {
        self.window.iter().all(FgAbGroup::is_finite)
    }

    /// Reads a tower of finite groups as Cayley tables, numbering elements of
    /// each level by [`FgAbGroup::element_index`].
    pub fn to_finite(&self) -> Result<FiniteGroupTower, GtError> {
        let mut groups = Vec::new();
        for (n, g) in self.window.iter().enumerate() {
            let order = g
                .small_order()
                .filter(|&o| o <= 4096)
                .ok_or_else(|| GtError::Unsupported(format!("level {n} is infinite or too large for a Cayley table")))?;
            let table = (0..order)
                .map(|a| {
                    let x = g.element_at(a);
                    (0..order).map(|b| g.element_index(&g.add(&x, &g.element_at(b)))).collect()
                })
                .collect();
            groups.push(CayleyGroup::new(table)?);
        }
        let index_map = |h: &GroupHom, dom: usize, cod: usize| -> Result<CayleyHom, GtError> {
            let d = &self.window[dom];
            let c = &self.window[cod];
            let map = (0..groups[dom].order())
                .map(|a| c.element_index(&h.apply(&d.element_at(a)).expect("element length")))
                .collect();
            CayleyHom::new(&groups[dom], &groups[cod], map)
        };
        let mut maps = Vec::new();
        for (i, p) in self.maps.iter().enumerate() {
            maps.push(index_map(p, i + 1, i)?);
        }
        let top = self.window.len() - 1;
        let tail = match &self.tail {
            TailPolicy::Trivial => TailPolicy::Trivial,
            TailPolicy::Constant => TailPolicy::Constant,
            TailPolicy::Periodic(e) => TailPolicy::Periodic(index_map(e, top, top)?),
        };
        FiniteGroupTower::new(groups, maps, tail)
    }
}

impl GroupTower for AbelianTower {
    type Elem = IntVector;

    fn top(&self) -> usize {
        self.window.len() - 1
    }

    fn identity(&self, level: usize) -> IntVector {
        self.window[level].zero()
    }

    fn op(&self, level: usize, a: &IntVector, b: &IntVector) -> IntVector {
        self.window[level].add(a, b)
    }

    fn inverse(&self, level: usize, a: &IntVector) -> IntVector {
        self.window[level].neg(a)
    }

    fn project(&self, level: usize, a: &IntVector) -> IntVector {
        self.map(level).apply(a).expect("element length checked")
    }

    fn contains(&self, level: usize, a: &IntVector) -> bool {
        self.window[level].contains(a)
    }
}

/// A tower of finite groups given by Cayley tables.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FiniteGroupTower {
    window: Vec<CayleyGroup>,
    maps: Vec<CayleyHom>,
    tail: TailPolicy<CayleyHom>,
}

impl FiniteGroupTower {
    /// Maps must already be validated [`CayleyHom`]s between the right levels;
    /// only their sizes are rechecked here.
    pub fn new(window: Vec<CayleyGroup>, maps: Vec<CayleyHom>, tail: TailPolicy<CayleyHom>) -> Result<Self, GtError> {
        if window.is_empty() {
            return Err(GtError::Tower("a tower needs at least one level".into()));
        }
        if maps.len() + 1 != window.len() {
            return Err(GtError::Tower(format!(
                "{} levels need {} maps, got {}",
                window.len(),
                window.len() - 1,
                maps.len()
            )));
        }
        for (i, p) in maps.iter().enumerate() {
            CayleyHom::new(&window[i + 1], &window[i], p.as_slice().to_vec())
                .map_err(|e| GtError::Tower(format!("map p_{}: {e}", i + 1)))?;
        }
        if let TailPolicy::Periodic(e) = &tail {
            let top = window.last().unwrap();
            CayleyHom::new(top, top, e.as_slice().to_vec())
                .map_err(|e| GtError::Tower(format!("tail endomorphism: {e}")))?;
        }
        Ok(FiniteGroupTower { window, maps, tail })
    }

    /// A constant tower: `levels` copies of `g` joined by identity maps.
    pub fn constant(g: &CayleyGroup, levels: usize, tail: TailPolicy<CayleyHom>) -> Result<Self, GtError> {
        Self::new(
            vec![g.clone(); levels],
            vec![CayleyHom::identity(g); levels.saturating_sub(1)],
            tail,
        )
    }

    pub fn window(&self) -> &[CayleyGroup] {
        &self.window
    }

    pub fn maps(&self) -> &[CayleyHom] {
        &self.maps
    }

    pub fn tail(&self) -> &TailPolicy<CayleyHom> {
        &self.tail
    }

    pub fn level(&self, n: usize) -> &CayleyGroup {
        &self.window[n]
    }

    pub fn map(&self, n: usize) -> &CayleyHom {
        &self.maps[n - 1]
    }

    /// Size of the window product set, saturating.
    pub fn product_size(&self) -> usize {
        self.window
            .iter()
            .fold(1usize, |acc, g| acc.saturating_mul(g.order()))
    }
}

impl GroupTower for FiniteGroupTower {
    type Elem = usize;

    fn top(&self) -> usize {
        self.window.len() - 1
    }

    fn identity(&self, _level: usize) -> usize {
        0
    }

    fn op(&self, level: usize, a: &usize, b: &usize) -> usize {
        self.window[level].mul(*a, *b)
    }

    fn inverse(&self, level: usize, a: &usize) -> usize {
        self.window[level].inv(*a)
    }

    fn project(&self, level: usize, a: &usize) -> usize {
        self.map(level).apply(*a)
    }

    fn contains(&self, level: usize, a: &usize) -> bool {
        *a < self.window[level].order()
    }
}

/// Convenience for building abelian families from small integers.
pub fn abelian_family(levels: &[&[i64]]) -> TowerElementFamily<IntVector> {
    TowerElementFamily::new(
        levels
            .iter()
            .map(|l| l.iter().map(|&x| BigInt::from(x)).collect())
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intlin::IntMatrix;

    fn z_identity_tower(levels: usize) -> AbelianTower {
        let z = FgAbGroup::free(1);
        AbelianTower::new(
            vec![z.clone(); levels],
            vec![GroupHom::identity(&z); levels - 1],
            TailPolicy::Trivial,
        )
        .unwrap()
    }

    #[test]
    fn identity_family_acts_trivially() {
        let t = z_identity_tower(3);
        let h = abelian_family(&[&[4], &[-1], &[7]]);
        let e = TowerElementFamily::identity(&t);
        assert_eq!(tower_act(&t, &e, &h).unwrap(), h);
    }

    #[test]
    fn integer_tower_evaluation() {
        let t = z_identity_tower(2);
        let g = abelian_family(&[&[1], &[1]]);
        let h = abelian_family(&[&[0], &[0]]);
        assert_eq!(tower_act(&t, &g, &h).unwrap(), abelian_family(&[&[0], &[1]]));
    }

    #[test]
    fn s3_constant_tower() {
        let (s3, perms) = CayleyGroup::symmetric3();
        let idx = |p: &[usize]| perms.iter().position(|q| q == p).unwrap();
        let t = FiniteGroupTower::constant(&s3, 2, TailPolicy::Constant).unwrap();
        let t12 = idx(&[1, 0, 2]);
        let c123 = idx(&[1, 2, 0]);
        let t13 = idx(&[2, 1, 0]);
        let g = TowerElementFamily::new(vec![t12, 0]);
        let h = TowerElementFamily::new(vec![c123, t13]);
        let out = tower_act(&t, &g, &h).unwrap();
        // Level 0: (12)·(123)·p(e⁻¹); level 1: e·(13)·(tail identity).
        assert_eq!(out.elems[0], s3.mul(s3.mul(t12, c123), 0));
        assert_eq!(out.elems[1], t13);
    }

    #[test]
    fn element_outside_group() {
        let (s3, _) = CayleyGroup::symmetric3();
        let t = FiniteGroupTower::constant(&s3, 2, TailPolicy::Trivial).unwrap();
        let g = TowerElementFamily::new(vec![0, 9]);
        let h = TowerElementFamily::new(vec![0, 0]);
        assert!(matches!(tower_act(&t, &g, &h), Err(GtError::Element(_))));
    }

    #[test]
    fn malformed_tower_rejected() {
        let r = AbelianTower::new(
            vec![FgAbGroup::free(1), FgAbGroup::cyclic(2)],
            vec![GroupHom::identity(&FgAbGroup::free(1))],
            TailPolicy::Trivial,
        );
        assert!(matches!(r, Err(GtError::Tower(_))));
    }

    #[test]
    fn to_finite_reads_reduction() {
        let z4 = FgAbGroup::cyclic(4);
        let z2 = FgAbGroup::cyclic(2);
        let p = GroupHom::new(z4.clone(), z2.clone(), IntMatrix::from_i64(&[&[1]])).unwrap();
        let t = AbelianTower::new(vec![z2, z4], vec![p], TailPolicy::Trivial).unwrap();
        let f = t.to_finite().unwrap();
        assert_eq!(f.map(1).as_slice(), &[0, 1, 0, 1]);
    }
}
