use super::*;
use crate::chaincx::{homology, ChainComplex, ChainMap, Homology};
use crate::gtower::TailPolicy;
use crate::intlin::{vec_ops, FgAbGroup, IntMatrix, IntVector};

fn v(x: &[i64]) -> IntVector {
    vec_ops::from_i64(x)
}

fn times_two(levels: usize, tail: TailPolicy<ChainMap>) -> ChainTower {
    let z1 = ChainComplex::concentrated(1, 1);
    ChainTower::new(vec![z1.clone(); levels], vec![ChainMap::scalar(&z1, 2); levels - 1], tail).unwrap()
}

fn replaced_times_two(top: usize) -> ChainTower {
    fibration_replace(&times_two(top + 1, TailPolicy::Constant)).unwrap().0
}

/// A degree-1 cycle generating `H₁` at each level of a replaced ×2 tower.
fn generators(t: &ChainTower) -> Vec<IntVector> {
    (0..=t.top())
        .map(|n| {
            let h = Homology::compute(t.level(n), 1);
            h.representative(&v(&[1]))
        })
        .collect()
}

#[test]
fn project_zero_and_constant() {
    let t = replaced_times_two(3);
    let r = LimCycleRecipe::zero(&t, 0);
    for i in 0..=3 {
        assert!(project(&t, &r, i).unwrap().class.iter().all(|x| x == &0.into()));
    }
    assert!(matches!(project(&t, &r, 4), Err(MtError::Level(_))));

    let c = ChainComplex::new(vec![1, 1], vec![IntMatrix::from_i64(&[&[3]])]).unwrap();
    let t = ChainTower::new(vec![c.clone(); 3], vec![ChainMap::identity(&c); 2], TailPolicy::Constant).unwrap();
    let r = LimCycleRecipe::from_top(&t, 0, v(&[2])).unwrap();
    let h = homology(&c, 0).unwrap();
    for i in 0..=2 {
        assert_eq!(project(&t, &r, i).unwrap().class, h.class_of(&v(&[2])).unwrap());
    }
}

#[test]
fn lift_constant_tower() {
    let c = ChainComplex::new(vec![1, 1], vec![IntMatrix::from_i64(&[&[3]])]).unwrap();
    let t = ChainTower::new(vec![c.clone(); 3], vec![ChainMap::identity(&c); 2], TailPolicy::Constant).unwrap();
    let r = lift_compatible_classes(&t, 0, &[v(&[1]), v(&[1]), v(&[1])]).unwrap();
    assert_eq!(r.cycles, vec![v(&[1]); 3]);
    // Homologous but not equal entries get corrected to exact agreement.
    let r = lift_compatible_classes(&t, 0, &[v(&[1]), v(&[4]), v(&[-2])]).unwrap();
    r.validate(&t).unwrap();
    assert_eq!(r.cycles, vec![v(&[1]); 3]);
}

#[test]
fn lift_two_level_with_boundary_defect() {
    let t = replaced_times_two(1);
    // Degree 0 cycles: q(z₁) = z₀ + ∂w for a chosen w.
    let z1 = v(&[0]);
    let w = vec_ops::from_i64(&[1]);
    let z0 = vec_ops::sub(&t.map(1).apply(0, &z1).unwrap(), &t.level(0).apply_boundary(1, &w).unwrap());
    let r = lift_compatible_classes(&t, 0, &[z0.clone(), z1.clone()]).unwrap();
    r.validate(&t).unwrap();
    assert_eq!(r.cycles[0], z0);
    assert!(Homology::compute(t.level(1), 0).same_class(&r.cycles[1], &z1).unwrap());
}

#[test]
fn lift_fails_through_times_two() {
    let d = ChainComplex::disk(0);
    let t = ChainTower::new(vec![d.clone(); 2], vec![ChainMap::scalar(&d, 2)], TailPolicy::Constant).unwrap();
    let r = lift_compatible_classes(&t, 0, &[v(&[1]), v(&[0])]);
    assert!(matches!(r, Err(MtError::NoLift(_))));
    let t = times_two(2, TailPolicy::Constant);
    let r = lift_compatible_classes(&t, 1, &[v(&[1]), v(&[1])]);
    assert!(matches!(r, Err(MtError::NotCompatible(_))));
}

#[test]
fn phi_of_zero_recipe() {
    let t = replaced_times_two(4);
    let r = LimCycleRecipe::zero(&t, 0);
    let c = phi(&t, &r, None).unwrap();
    assert_eq!(c.classes.len(), 4);
    assert!(c.class_vectors().iter().all(|x| vec_ops::is_zero(x)));
}

#[test]
fn phi_detects_mismatched_bounding_chains() {
    let t = replaced_times_two(2);
    let r = LimCycleRecipe::zero(&t, 0);
    let g = generators(&t);
    let bc = NullhomotopyFamily {
        degree: 0,
        chains: vec![t.level(0).zero_chain(1), g[1].clone(), t.level(2).zero_chain(1)],
    };
    let c = phi(&t, &r, Some(&bc)).unwrap();
    // c₀ = −q₁(g₁) has class −2 in H₁(X₀) ≅ Z.
    assert_eq!(c.classes[0].class, v(&[-2]));
    for (n, cls) in c.classes.iter().enumerate() {
        assert!(t.level(n).is_cycle(1, &cls.representative));
    }
}

#[test]
fn phi_not_in_kernel() {
    let c = ChainComplex::concentrated(0, 1);
    let t = ChainTower::new(vec![c.clone(); 2], vec![ChainMap::identity(&c)], TailPolicy::Constant).unwrap();
    let r = LimCycleRecipe::from_top(&t, 0, v(&[1])).unwrap();
    assert!(matches!(phi(&t, &r, None), Err(MtError::NotInKernel(_))));
}

#[test]
fn change_of_bounding_chains() {
    let t = replaced_times_two(3);
    let r = LimCycleRecipe::zero(&t, 0);
    let bc = bounding_family(&t, &r).unwrap();
    let (w, c, c2) = phi_change_witness(&t, &r, &bc, &bc).unwrap();
    assert!(w.cycles.iter().all(|x| vec_ops::is_zero(x)));
    assert_eq!(c, c2);

    let g = generators(&t);
    let shift = NullhomotopyFamily {
        degree: 0,
        chains: vec![vec_ops::scale(&g[0], &3.into()), g[1].clone(), vec_ops::neg(&g[2]), g[3].clone()],
    };
    let bc2 = bc.add(&shift);
    let (w, c, c2) = phi_change_witness(&t, &r, &bc, &bc2).unwrap();
    assert_eq!(w.cycles, shift.chains);
    assert_ne!(c.class_vectors(), c2.class_vectors());
}

#[test]
fn preimage_round_trip() {
    let t = replaced_times_two(4);
    let zero_gamma: Vec<IntVector> = (0..4).map(|n| t.level(n).zero_chain(1)).collect();
    let (r, bc) = phi_preimage(&t, 0, &zero_gamma).unwrap();
    assert!(r.cycles.iter().all(|x| vec_ops::is_zero(x)));
    assert!(bc.chains.iter().all(|x| vec_ops::is_zero(x)));

    let g = generators(&t);
    let mut gamma = zero_gamma.clone();
    gamma[0] = g[0].clone();
    let (r, bc) = phi_preimage(&t, 0, &gamma).unwrap();
    r.validate(&t).unwrap();
    let c = phi(&t, &r, Some(&bc)).unwrap();
    for n in 0..4 {
        assert_eq!(c.classes[n].representative, gamma[n]);
    }

    let single = replaced_times_two(0);
    let (r, _) = phi_preimage(&single, 0, &[]).unwrap();
    assert_eq!(r.cycles, vec![single.level(0).zero_chain(0)]);
}

#[test]
fn equalize_identical_and_constructed() {
    let t = replaced_times_two(3);
    let g = generators(&t);
    let gamma = vec![g[0].clone(), vec_ops::neg(&g[1]), g[2].clone()];
    let (r, bc) = phi_preimage(&t, 0, &gamma).unwrap();
    let zero = OrbitEqualityWitness {
        degree: 1,
        cycles: (0..=3).map(|n| t.level(n).zero_chain(1)).collect(),
    };
    let delta = phi_equalize(&t, &r, &r, &bc, &bc, &zero).unwrap();
    assert!(delta.chains.iter().all(|x| vec_ops::is_zero(x)));

    // γ̄ₙ = γₙ + hₙ − q(hₙ₊₁) lies in the orbit of γ, witnessed by h.
    let h = vec![g[0].clone(), vec_ops::scale(&g[1], &2.into()), vec_ops::neg(&g[2]), g[3].clone()];
    let gamma_bar: Vec<IntVector> = (0..3)
        .map(|n| vec_ops::sub(&vec_ops::add(&gamma[n], &h[n]), &t.map(n + 1).apply(1, &h[n + 1]).unwrap()))
        .collect();
    let (r_bar, bc_bar) = phi_preimage(&t, 0, &gamma_bar).unwrap();
    let w = OrbitEqualityWitness { degree: 1, cycles: h };
    let delta = phi_equalize(&t, &r, &r_bar, &bc, &bc_bar, &w).unwrap();
    for n in 0..=3 {
        let d = t.level(n).apply_boundary(1, &delta.chains[n]).unwrap();
        assert_eq!(d, vec_ops::sub(&r_bar.cycles[n], &r.cycles[n]));
        if n > 0 {
            assert_eq!(t.map(n).apply(1, &delta.chains[n]).unwrap(), delta.chains[n - 1]);
        }
    }

    let bad = OrbitEqualityWitness {
        degree: 1,
        cycles: vec![g[0].clone(), t.level(1).zero_chain(1), t.level(2).zero_chain(1), t.level(3).zero_chain(1)],
    };
    assert!(matches!(
        phi_equalize(&t, &r, &r_bar, &bc, &bc_bar, &bad),
        Err(MtError::WitnessInvalid(_))
    ));
}

#[test]
fn equivalence_lift_identity_and_replacement() {
    let t = replaced_times_two(3);
    let y = LimCycleRecipe::from_top(&t, 0, v(&[0, 0, 0])).unwrap();
    let x = tower_equiv_lift(&TowerMap::identity(&t), &y).unwrap();
    assert_eq!(x, y);

    let (t2, j) = fibration_replace(&t).unwrap();
    for k in 0..=1 {
        let top_rank = t2.level(3).rank(k);
        let hs = Homology::compute(t2.level(3), k);
        let top_cycle = if hs.group().dim() > 0 && top_rank > 0 {
            hs.representative(&vec![1.into(); hs.group().dim()])
        } else {
            t2.level(3).zero_chain(k)
        };
        let y = LimCycleRecipe::from_top(&t2, k, top_cycle).unwrap();
        let x = tower_equiv_lift(&j, &y).unwrap();
        x.validate(&t).unwrap();
        for n in 0..=3 {
            let pushed = j.level(n).apply(k, &x.cycles[n]).unwrap();
            assert!(Homology::compute(t2.level(n), k).same_class(&pushed, &y.cycles[n]).unwrap());
        }
    }
}

#[test]
fn equivalence_lift_rejects_non_equivalence() {
    let t = replaced_times_two(2);
    let f = TowerMap::new(
        t.clone(),
        t.clone(),
        t.window().iter().map(|c| ChainMap::scalar(c, 2)).collect(),
    )
    .unwrap();
    let y = LimCycleRecipe::zero(&t, 0);
    assert!(matches!(tower_equiv_lift(&f, &y), Err(MtError::NotEquivalence(_))));
}

#[test]
fn milnor_zero_tower() {
    let z = ChainComplex::zero(1);
    let t = ChainTower::new(vec![z.clone(); 3], vec![ChainMap::identity(&z); 2], TailPolicy::Constant).unwrap();
    for k in 0..=1 {
        let rep = milnor_window_check(&t, k).unwrap();
        assert!(rep.all_pass());
        assert!(rep.homology_of_limit.is_trivial());
        assert!(rep.limit_of_homology.is_trivial());
    }
}

#[test]
fn milnor_replaced_times_two() {
    let t = replaced_times_two(4);
    for k in 0..=1 {
        let rep = milnor_window_check(&t, k).unwrap();
        assert!(rep.all_pass(), "{:?}", rep.checks);
    }
    let rep = milnor_window_check(&t, 1).unwrap();
    assert_eq!(rep.homology_of_limit, FgAbGroup::free(1));
    assert!(rep.projection.is_isomorphism());
}

#[test]
fn milnor_rejects_raw_times_two() {
    let t = times_two(3, TailPolicy::Constant);
    assert!(matches!(milnor_window_check(&t, 1), Err(MtError::HypothesisViolated(_))));
}

#[test]
fn naturality_of_phi() {
    let t = replaced_times_two(3);
    let f = TowerMap::new(t.clone(), t.clone(), t.window().iter().map(|c| ChainMap::scalar(c, 3)).collect()).unwrap();
    let g = generators(&t);
    let gamma = vec![g[0].clone(), g[1].clone(), vec_ops::neg(&g[2])];
    let (r, bc) = phi_preimage(&t, 0, &gamma).unwrap();
    let c = phi(&t, &r, Some(&bc)).unwrap();
    let c_pushed = phi(&t, &push_recipe(&f, &r).unwrap(), Some(&push_family(&f, &bc).unwrap())).unwrap();
    for n in 0..3 {
        let h = Homology::compute(t.level(n), 1);
        let image = f.level(n).apply(1, &c.classes[n].representative).unwrap();
        assert_eq!(h.class_of(&image).unwrap(), c_pushed.classes[n].class);
    }
}
