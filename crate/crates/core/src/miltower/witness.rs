//! Per-level element data and the constructions that move between them.

use super::tower::{ChainTower, TowerMap};
use super::MtError;
use crate::chaincx::{induced_map, solve_boundary, solve_lift, Homology, HomologyClass};
use crate::intlin::{vec_ops, IntVector};

/// Cycles `z₀ … z_N` of one degree with `qₙ(zₙ) = zₙ₋₁` exactly: a cycle of
/// the limit, truncated to the window.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LimCycleRecipe {
    pub degree: usize,
    pub cycles: Vec<IntVector>,
}

impl LimCycleRecipe {
    pub fn zero(t: &ChainTower, degree: usize) -> Self {
        LimCycleRecipe {
            degree,
            cycles: t.window().iter().map(|c| c.zero_chain(degree)).collect(),
        }
    }

    /// Pushes a top-level cycle down the window.
    pub fn from_top(t: &ChainTower, degree: usize, top_cycle: IntVector) -> Result<Self, MtError> {
        let mut cycles = vec![top_cycle];
        for n in (1..=t.top()).rev() {
            let next = t.map(n).apply(degree, cycles.last().unwrap())?;
            cycles.push(next);
        }
        cycles.reverse();
        let r = LimCycleRecipe { degree, cycles };
        r.validate(t)?;
        Ok(r)
    }

    pub fn validate(&self, t: &ChainTower) -> Result<(), MtError> {
        if self.cycles.len() != t.top() + 1 {
            return Err(MtError::WitnessInvalid(format!(
                "recipe has {} levels, tower has {}",
                self.cycles.len(),
                t.top() + 1
            )));
        }
        for (n, z) in self.cycles.iter().enumerate() {
            t.level(n).check_chain(self.degree, z)?;
            if !t.level(n).is_cycle(self.degree, z) {
                return Err(MtError::WitnessInvalid(format!("recipe entry at level {n} is not a cycle")));
            }
        }
        for n in 1..=t.top() {
            if t.map(n).apply(self.degree, &self.cycles[n])? != self.cycles[n - 1] {
                return Err(MtError::WitnessInvalid(format!("recipe is not compatible at level {n}")));
            }
        }
        Ok(())
    }

    pub fn add(&self, other: &LimCycleRecipe) -> LimCycleRecipe {
        LimCycleRecipe {
            degree: self.degree,
            cycles: zip_add(&self.cycles, &other.cycles),
        }
    }
}

fn zip_add(a: &[IntVector], b: &[IntVector]) -> Vec<IntVector> {
    a.iter().zip(b).map(|(x, y)| vec_ops::add(x, y)).collect()
}

/// Bounding chains `b₀ … b_N` with `∂bₙ = zₙ` for a recipe of degree `degree`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NullhomotopyFamily {
    pub degree: usize,
    pub chains: Vec<IntVector>,
}

impl NullhomotopyFamily {
    pub fn verify(&self, t: &ChainTower, r: &LimCycleRecipe) -> Result<(), MtError> {
        if self.degree != r.degree || self.chains.len() != r.cycles.len() || r.cycles.len() != t.top() + 1 {
            return Err(MtError::WitnessInvalid("bounding family does not match the recipe".into()));
        }
        for (n, (b, z)) in self.chains.iter().zip(&r.cycles).enumerate() {
            if &t.level(n).apply_boundary(r.degree + 1, b)? != z {
                return Err(MtError::WitnessInvalid(format!("bounding chain at level {n} has the wrong boundary")));
            }
        }
        Ok(())
    }

    pub fn add(&self, other: &NullhomotopyFamily) -> NullhomotopyFamily {
        NullhomotopyFamily {
            degree: self.degree,
            chains: zip_add(&self.chains, &other.chains),
        }
    }
}

/// Classes `cₙ = [bₙ − qₙ₊₁(bₙ₊₁)]` in `H_{k+1}(Xₙ)` for `n < N`: a window
/// representative of an element of lim¹ of the degree `k+1` homology tower.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Lim1Witness {
    /// The homology degree `k + 1`.
    pub degree: usize,
    pub classes: Vec<HomologyClass>,
}

impl Lim1Witness {
    pub fn class_vectors(&self) -> Vec<IntVector> {
        self.classes.iter().map(|c| c.class.clone()).collect()
    }
}

/// Cycles `g₀ … g_N` of degree `k+1` exhibiting `c′` as the image of `c`
/// under the product-group action: `[gₙ] + cₙ − qₙ₊₁,∗[gₙ₊₁] = c′ₙ` for `n < N`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OrbitEqualityWitness {
    pub degree: usize,
    pub cycles: Vec<IntVector>,
}

impl OrbitEqualityWitness {
    /// Checks the relation level by level in homology.
    pub fn verify(&self, t: &ChainTower, c: &Lim1Witness, c_bar: &Lim1Witness) -> Result<(), MtError> {
        let top = t.top();
        if self.cycles.len() != top + 1 || c.classes.len() != top || c_bar.classes.len() != top {
            return Err(MtError::WitnessInvalid("orbit witness has the wrong number of levels".into()));
        }
        let k1 = self.degree;
        for (n, g) in self.cycles.iter().enumerate() {
            t.level(n).check_chain(k1, g)?;
            if !t.level(n).is_cycle(k1, g) {
                return Err(MtError::WitnessInvalid(format!("orbit witness at level {n} is not a cycle")));
            }
        }
        for n in 0..top {
            let h = Homology::compute(t.level(n), k1);
            let pushed = t.map(n + 1).apply(k1, &self.cycles[n + 1])?;
            let lhs = vec_ops::sub(&vec_ops::add(&self.cycles[n], &c.classes[n].representative), &pushed);
            if !h.same_class(&lhs, &c_bar.classes[n].representative)? {
                return Err(MtError::WitnessInvalid(format!("orbit relation fails at level {n}")));
            }
        }
        Ok(())
    }
}

/// Chains `δ₀ … δ_N` of degree `k+1` with `∂δₙ = z̄ₙ − zₙ` and `qₙ₊₁(δₙ₊₁) = δₙ`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TowerHomotopy {
    pub degree: usize,
    pub chains: Vec<IntVector>,
}

impl TowerHomotopy {
    pub fn verify(&self, t: &ChainTower, r: &LimCycleRecipe, r_bar: &LimCycleRecipe) -> Result<(), MtError> {
        for n in 0..=t.top() {
            let d = t.level(n).apply_boundary(self.degree, &self.chains[n])?;
            if d != vec_ops::sub(&r_bar.cycles[n], &r.cycles[n]) {
                return Err(MtError::WitnessInvalid(format!("homotopy has the wrong boundary at level {n}")));
            }
            if n > 0 && t.map(n).apply(self.degree, &self.chains[n])? != self.chains[n - 1] {
                return Err(MtError::WitnessInvalid(format!("homotopy is not compatible at level {n}")));
            }
        }
        Ok(())
    }
}

/// The class of `zᵢ` in `Hₖ(Xᵢ)`.
pub fn project(t: &ChainTower, r: &LimCycleRecipe, i: usize) -> Result<HomologyClass, MtError> {
    t.check_level(i)?;
    let h = Homology::compute(t.level(i), r.degree);
    Ok(HomologyClass::new(&h, r.cycles[i].clone())?)
}

/// Turns cycles with compatible classes into an exactly compatible recipe.
///
/// Level 0 is kept. At level `n+1` the defect `qₙ₊₁(zₙ₊₁) − z′ₙ` is bounded
/// by some `w`, `w` is lifted through `qₙ₊₁`, and `zₙ₊₁` is corrected by the
/// boundary of the lift.
pub fn lift_compatible_classes(t: &ChainTower, degree: usize, cycles: &[IntVector]) -> Result<LimCycleRecipe, MtError> {
    if cycles.len() != t.top() + 1 {
        return Err(MtError::Level(format!("{} cycles for {} levels", cycles.len(), t.top() + 1)));
    }
    for (n, z) in cycles.iter().enumerate() {
        t.level(n).check_chain(degree, z)?;
        if !t.level(n).is_cycle(degree, z) {
            return Err(MtError::WitnessInvalid(format!("entry at level {n} is not a cycle")));
        }
    }
    let mut out = vec![cycles[0].clone()];
    for n in 0..t.top() {
        let q = t.map(n + 1);
        let defect = vec_ops::sub(&q.apply(degree, &cycles[n + 1])?, &out[n]);
        let w = solve_boundary(t.level(n), degree, &defect)?
            .ok_or_else(|| MtError::NotCompatible(format!("classes at levels {} and {n} do not match", n + 1)))?;
        let lift = solve_lift(q, degree + 1, &w.chain)?
            .ok_or_else(|| MtError::NoLift(format!("bounding chain does not lift through q_{}", n + 1)))?;
        let correction = t.level(n + 1).apply_boundary(degree + 1, &lift)?;
        out.push(vec_ops::sub(&cycles[n + 1], &correction));
    }
    Ok(LimCycleRecipe { degree, cycles: out })
}

/// Canonical bounding chains for a recipe whose levels are all boundaries.
pub fn bounding_family(t: &ChainTower, r: &LimCycleRecipe) -> Result<NullhomotopyFamily, MtError> {
    r.validate(t)?;
    let chains = r
        .cycles
        .iter()
        .enumerate()
        .map(|(n, z)| {
            solve_boundary(t.level(n), r.degree, z)?
                .map(|b| b.chain)
                .ok_or_else(|| MtError::NotInKernel(format!("level {n} is not a boundary")))
        })
        .collect::<Result<_, MtError>>()?;
    Ok(NullhomotopyFamily {
        degree: r.degree,
        chains,
    })
}

fn differences(t: &ChainTower, bc: &NullhomotopyFamily) -> Result<Vec<IntVector>, MtError> {
    (0..t.top())
        .map(|n| {
            let pushed = t.map(n + 1).apply(bc.degree + 1, &bc.chains[n + 1])?;
            Ok(vec_ops::sub(&bc.chains[n], &pushed))
        })
        .collect()
}

/// `cₙ = [bₙ − qₙ₊₁(bₙ₊₁)]` for a recipe in the kernel of the projection.
/// Without a bounding family the canonical one is used.
pub fn phi(t: &ChainTower, r: &LimCycleRecipe, bc: Option<&NullhomotopyFamily>) -> Result<Lim1Witness, MtError> {
    let owned;
    let bc = match bc {
        Some(b) => {
            r.validate(t)?;
            b.verify(t, r)?;
            b
        }
        None => {
            owned = bounding_family(t, r)?;
            &owned
        }
    };
    let k1 = r.degree + 1;
    let classes = differences(t, bc)?
        .into_iter()
        .enumerate()
        .map(|(n, rep)| {
            let h = Homology::compute(t.level(n), k1);
            // ∂(bₙ − qbₙ₊₁) = zₙ − qzₙ₊₁ = 0, so class_of cannot fail.
            HomologyClass::new(&h, rep).map_err(MtError::from)
        })
        .collect::<Result<_, _>>()?;
    Ok(Lim1Witness { degree: k1, classes })
}

/// Compares the classes produced by two bounding families of one recipe.
/// `gₙ = b′ₙ − bₙ` is a cycle, and `c′` is the image of `c` under the action by `g`.
pub fn phi_change_witness(
    t: &ChainTower,
    r: &LimCycleRecipe,
    bc: &NullhomotopyFamily,
    bc_alt: &NullhomotopyFamily,
) -> Result<(OrbitEqualityWitness, Lim1Witness, Lim1Witness), MtError> {
    let c = phi(t, r, Some(bc))?;
    let c_alt = phi(t, r, Some(bc_alt))?;
    let w = OrbitEqualityWitness {
        degree: r.degree + 1,
        cycles: zip_sub(&bc_alt.chains, &bc.chains),
    };
    w.verify(t, &c, &c_alt)?;
    Ok((w, c, c_alt))
}

fn zip_sub(a: &[IntVector], b: &[IntVector]) -> Vec<IntVector> {
    a.iter().zip(b).map(|(x, y)| vec_ops::sub(x, y)).collect()
}

/// Builds a recipe and bounding family whose classes are exactly the given
/// cycles `γ₀ … γ_{N−1}` of degree `k+1`.
///
/// Starting from `b₀ = 0`, each `bₙ₊₁` is a lift of `bₙ − γₙ` through `qₙ₊₁`,
/// and `zₙ = ∂bₙ`.
pub fn phi_preimage(
    t: &ChainTower,
    degree: usize,
    gamma: &[IntVector],
) -> Result<(LimCycleRecipe, NullhomotopyFamily), MtError> {
    if gamma.len() != t.top() {
        return Err(MtError::Level(format!("{} classes for a window with top {}", gamma.len(), t.top())));
    }
    let k1 = degree + 1;
    for (n, g) in gamma.iter().enumerate() {
        t.level(n).check_chain(k1, g)?;
        if !t.level(n).is_cycle(k1, g) {
            return Err(MtError::WitnessInvalid(format!("class representative at level {n} is not a cycle")));
        }
    }
    let mut chains = vec![t.level(0).zero_chain(k1)];
    for n in 0..t.top() {
        let target = vec_ops::sub(&chains[n], &gamma[n]);
        let lift = solve_lift(t.map(n + 1), k1, &target)?
            .ok_or_else(|| MtError::NoLift(format!("chain at level {n} does not lift through q_{}", n + 1)))?;
        chains.push(lift);
    }
    let cycles = chains
        .iter()
        .enumerate()
        .map(|(n, b)| t.level(n).apply_boundary(k1, b))
        .collect::<Result<_, _>>()?;
    Ok((
        LimCycleRecipe { degree, cycles },
        NullhomotopyFamily { degree, chains },
    ))
}

/// Given two kernel recipes whose classes lie in one orbit, builds a
/// compatible family of chains `δₙ` with `∂δₙ = z̄ₙ − zₙ`.
///
/// Replacing `bₙ` by `bₙ + gₙ` makes the two class families agree levelwise,
/// so `c̄ₙ − c′ₙ = ∂uₙ`. Then `δₙ = b̄ₙ − bₙ − gₙ + ∂vₙ`, where `v₀ = 0` and
/// `vₙ₊₁` lifts `vₙ + uₙ` through `qₙ₊₁`.
pub fn phi_equalize(
    t: &ChainTower,
    r: &LimCycleRecipe,
    r_bar: &LimCycleRecipe,
    bc: &NullhomotopyFamily,
    bc_bar: &NullhomotopyFamily,
    w: &OrbitEqualityWitness,
) -> Result<TowerHomotopy, MtError> {
    if r.degree != r_bar.degree || w.degree != r.degree + 1 {
        return Err(MtError::WitnessInvalid("degrees of the inputs disagree".into()));
    }
    let c = phi(t, r, Some(bc))?;
    let c_bar = phi(t, r_bar, Some(bc_bar))?;
    w.verify(t, &c, &c_bar)?;
    let k1 = r.degree + 1;
    let shifted = NullhomotopyFamily {
        degree: r.degree,
        chains: zip_add(&bc.chains, &w.cycles),
    };
    let c_shift = differences(t, &shifted)?;
    let c_bar_reps = differences(t, bc_bar)?;
    let base = zip_sub(&bc_bar.chains, &shifted.chains);
    let mut v = vec![t.level(0).zero_chain(k1 + 1)];
    for n in 0..t.top() {
        let e = vec_ops::sub(&c_bar_reps[n], &c_shift[n]);
        let u = solve_boundary(t.level(n), k1, &e)?
            .ok_or_else(|| MtError::WitnessInvalid(format!("classes differ at level {n} after the action")))?;
        let target = vec_ops::add(&v[n], &u.chain);
        let lift = solve_lift(t.map(n + 1), k1 + 1, &target)?
            .ok_or_else(|| MtError::NoLift(format!("correction does not lift through q_{}", n + 1)))?;
        v.push(lift);
    }
    let chains = base
        .iter()
        .zip(&v)
        .enumerate()
        .map(|(n, (d, vn))| Ok(vec_ops::add(d, &t.level(n).apply_boundary(k1 + 1, vn)?)))
        .collect::<Result<_, MtError>>()?;
    let delta = TowerHomotopy { degree: k1, chains };
    delta.verify(t, r, r_bar)?;
    Ok(delta)
}

/// Lifts a recipe along a levelwise quasi-isomorphism of towers.
///
/// Each level gets a cycle of the source with the right class (inverting the
/// induced isomorphism), and the levels are then made exactly compatible as
/// in [`lift_compatible_classes`].
pub fn tower_equiv_lift(f: &TowerMap, y: &LimCycleRecipe) -> Result<LimCycleRecipe, MtError> {
    if let Some(n) = f.first_non_equivalence() {
        return Err(MtError::NotEquivalence(format!("f_{n} is not a quasi-isomorphism")));
    }
    let (s, t) = (f.source(), f.target());
    y.validate(t)?;
    let k = y.degree;
    let mut cycles = Vec::with_capacity(s.top() + 1);
    for n in 0..=s.top() {
        let hs = Homology::compute(s.level(n), k);
        let ht = Homology::compute(t.level(n), k);
        let iso = induced_map(f.level(n), k, &hs, &ht);
        let class = ht.class_of(&y.cycles[n])?;
        let pre = iso.preimage(&class).expect("induced map is an isomorphism");
        cycles.push(hs.representative(&pre));
    }
    lift_compatible_classes(s, k, &cycles)
}

/// Pushes a recipe forward along a tower map.
pub fn push_recipe(f: &TowerMap, r: &LimCycleRecipe) -> Result<LimCycleRecipe, MtError> {
    let cycles = r
        .cycles
        .iter()
        .enumerate()
        .map(|(n, z)| f.level(n).apply(r.degree, z))
        .collect::<Result<_, _>>()?;
    Ok(LimCycleRecipe {
        degree: r.degree,
        cycles,
    })
}

/// Pushes a bounding family forward along a tower map.
pub fn push_family(f: &TowerMap, bc: &NullhomotopyFamily) -> Result<NullhomotopyFamily, MtError> {
    let chains = bc
        .chains
        .iter()
        .enumerate()
        .map(|(n, b)| f.level(n).apply(bc.degree + 1, b))
        .collect::<Result<_, _>>()?;
    Ok(NullhomotopyFamily {
        degree: bc.degree,
        chains,
    })
}
