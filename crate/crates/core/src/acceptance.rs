//! The acceptance suite, run by `towerlim selftest` and by the `acceptance`
//! test target. Every criterion is a pure function of its seed.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::chaincx::{ChainComplex, ChainMap, Homology};
use crate::gtower::{
    analyze_endomorphism, lim1_abelian, lim1_orbits_window, lim_of_tower, tower_act, AbelianTower, CayleyGroup,
    GroupTower, MlCertificate, TailPolicy, TowerElementFamily, DEFAULT_ORBIT_BOUND,
};
use crate::intlin::{vec_ops, FgAbGroup, GroupHom, IntMatrix, IntVector, Subgroup};
use crate::miltower::{
    fibration_replace, milnor_window_check, phi, phi_change_witness, phi_equalize, phi_preimage, tower_equiv_lift,
    ChainTower, LimCycleRecipe, MtError, NullhomotopyFamily, OrbitEqualityWitness, TowerMap,
};
use crate::random::{self, Shape, TailKind};

/// Outcome of one criterion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub id: usize,
    pub name: &'static str,
    pub pass: bool,
    /// Instance counts and the first failure, if any.
    pub detail: String,
}

pub const CRITERIA: [(usize, &str); 7] = [
    (1, "orbit count equals abelian cokernel order"),
    (2, "product-group action is a left action"),
    (3, "trivial-tail finite windows have one orbit"),
    (4, "window Milnor check on replaced towers"),
    (5, "phi witnesses on the replaced x2 tower"),
    (6, "lifting along tower equivalences"),
    (7, "Mittag-Leffler classifier"),
];

pub fn run(id: usize, seed: u64) -> Outcome {
    let name = CRITERIA.iter().find(|c| c.0 == id).map(|c| c.1).expect("criteria are numbered 1 to 7");
    let mut rng = random::rng(seed.wrapping_mul(1000).wrapping_add(id as u64));
    let result = match id {
        1 => orbit_cokernel_agreement(&mut rng),
        2 => action_law(&mut rng),
        3 => finite_window_triviality(&mut rng),
        4 => milnor_on_replaced(&mut rng),
        5 => phi_suite(&mut rng),
        6 => equivalence_lifts(&mut rng),
        _ => ml_classifier(),
    };
    let (pass, detail) = match result {
        Ok(detail) => (true, detail),
        Err(detail) => (false, detail),
    };
    Outcome { id, name, pass, detail }
}

pub fn run_all(seed: u64) -> Vec<Outcome> {
    CRITERIA.iter().map(|&(id, _)| run(id, seed)).collect()
}

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn orbit_cokernel_agreement(rng: &mut ChaCha8Rng) -> Check {
    let count = 200;
    for i in 0..count {
        let levels = rng.gen_range(1..=4);
        let tail = if i % 2 == 0 { TailKind::Trivial } else { TailKind::Constant };
        let t = random::random_finite_abelian_tower(rng, levels, 16, tail);
        let finite = t.to_finite().map_err(|e| e.to_string())?;
        let orbits = lim1_orbits_window(&finite, DEFAULT_ORBIT_BOUND).map_err(|e| e.to_string())?;
        let cokernel = lim1_abelian(&t).window_cokernel;
        let order = cokernel.order().expect("finite cokernel");
        ensure(order == orbits.orbit_count().into(), || {
            format!("instance {i}: {} orbits, cokernel of order {order}", orbits.orbit_count())
        })?;
    }
    Ok(format!("{count} towers"))
}

fn check_action<T: GroupTower>(
    t: &T,
    a: &TowerElementFamily<T::Elem>,
    b: &TowerElementFamily<T::Elem>,
    h: &TowerElementFamily<T::Elem>,
) -> Result<bool, String> {
    let e = TowerElementFamily::identity(t);
    let bh = tower_act(t, b, h).map_err(|x| x.to_string())?;
    let lhs = tower_act(t, a, &bh).map_err(|x| x.to_string())?;
    let ab = TowerElementFamily::product(t, a, b);
    let rhs = tower_act(t, &ab, h).map_err(|x| x.to_string())?;
    Ok(lhs == rhs && tower_act(t, &e, h).map_err(|x| x.to_string())? == *h)
}

fn random_cayley_family(rng: &mut ChaCha8Rng, window: &[CayleyGroup]) -> TowerElementFamily<usize> {
    TowerElementFamily::new(window.iter().map(|g| rng.gen_range(0..g.order())).collect())
}

fn random_abelian_family(rng: &mut ChaCha8Rng, t: &AbelianTower) -> TowerElementFamily<IntVector> {
    TowerElementFamily::new(
        t.window()
            .iter()
            .map(|g| g.reduce(random::random_vector(rng, g.dim(), 9)))
            .collect(),
    )
}

fn action_law(rng: &mut ChaCha8Rng) -> Check {
    let per_family = 100;
    let catalog = random::cayley_catalog();
    let (s3, d4) = (CayleyGroup::symmetric3().0, CayleyGroup::dihedral4().0);
    let pools: [(&str, Vec<CayleyGroup>, &CayleyGroup); 2] = [
        ("S3", vec![s3.clone(), CayleyGroup::cyclic(2), CayleyGroup::cyclic(3), CayleyGroup::trivial()], &s3),
        ("D4", vec![d4.clone(), CayleyGroup::cyclic(2), CayleyGroup::cyclic(4), CayleyGroup::trivial()], &d4),
    ];
    for (name, pool, must) in &pools {
        for i in 0..per_family {
            let levels = rng.gen_range(1..=4);
            let mut t = random::random_cayley_tower(rng, pool, levels, TailKind::Constant);
            if !t.window().contains(must) {
                // Make sure the named group occurs: put it on top with a trivial map below.
                let mut window = t.window().to_vec();
                let mut maps = t.maps().to_vec();
                window.push((*must).clone());
                maps.push(crate::gtower::CayleyHom::trivial(must));
                t = crate::gtower::FiniteGroupTower::new(window, maps, TailPolicy::Trivial).map_err(|e| e.to_string())?;
            }
            let (a, b, h) = (
                random_cayley_family(rng, t.window()),
                random_cayley_family(rng, t.window()),
                random_cayley_family(rng, t.window()),
            );
            ensure(check_action(&t, &a, &b, &h)?, || format!("{name} tower {i}: action law fails"))?;
        }
    }
    for i in 0..per_family {
        let levels = rng.gen_range(1..=4);
        let t = random::random_cayley_tower(rng, &catalog, levels, TailKind::Trivial);
        let (a, b, h) = (
            random_cayley_family(rng, t.window()),
            random_cayley_family(rng, t.window()),
            random_cayley_family(rng, t.window()),
        );
        ensure(check_action(&t, &a, &b, &h)?, || format!("catalog tower {i}: action law fails"))?;
    }
    for i in 0..per_family {
        let shape = Shape {
            window: rng.gen_range(0..=3),
            top_degree: 0,
            max_rank: 3,
            max_entry: 4,
        };
        let t = random::random_abelian_tower(rng, &shape, TailKind::Constant);
        let (a, b, h) = (
            random_abelian_family(rng, &t),
            random_abelian_family(rng, &t),
            random_abelian_family(rng, &t),
        );
        ensure(check_action(&t, &a, &b, &h)?, || format!("abelian tower {i}: action law fails"))?;
    }
    Ok(format!("{per_family} instances each for S3, D4, mixed Cayley and abelian towers"))
}

fn finite_window_triviality(rng: &mut ChaCha8Rng) -> Check {
    let count = 100;
    let catalog = random::cayley_catalog();
    for i in 0..count {
        let levels = rng.gen_range(1..=4);
        let t = random::random_cayley_tower(rng, &catalog, levels, TailKind::Trivial);
        let orbits = lim1_orbits_window(&t, DEFAULT_ORBIT_BOUND).map_err(|e| e.to_string())?;
        ensure(orbits.orbit_count() == 1, || {
            format!("instance {i}: {} orbits", orbits.orbit_count())
        })?;
    }
    Ok(format!("{count} towers, each a single orbit"))
}

fn milnor_on_replaced(rng: &mut ChaCha8Rng) -> Check {
    let count = 100;
    let (mut checks, mut nontrivial) = (0, 0);
    for i in 0..count {
        let shape = Shape {
            window: rng.gen_range(1..=4),
            top_degree: rng.gen_range(1..=3),
            max_rank: 3,
            max_entry: 3,
        };
        let raw = random::random_chain_tower(rng, &shape, TailKind::Constant);
        let (t, _) = fibration_replace(&raw).map_err(|e| e.to_string())?;
        for k in 0..=t.top_degree() {
            let rep = milnor_window_check(&t, k).map_err(|e| format!("instance {i}, degree {k}: {e}"))?;
            ensure(rep.all_pass(), || format!("instance {i}, degree {k}: {:?}", rep.checks))?;
            checks += 1;
            if !rep.homology_of_limit.is_trivial() {
                nontrivial += 1;
            }
        }
    }
    let z1 = ChainComplex::concentrated(1, 1);
    let raw = ChainTower::new(vec![z1.clone(); 3], vec![ChainMap::scalar(&z1, 2); 2], TailPolicy::Constant)
        .map_err(|e| e.to_string())?;
    ensure(
        matches!(milnor_window_check(&raw, 1), Err(MtError::HypothesisViolated(_))),
        || "raw x2 tower was not rejected".into(),
    )?;
    Ok(format!("{count} towers, {checks} degree checks ({nontrivial} with nonzero homology of the limit); raw x2 tower rejected"))
}

/// The ×2 tower on `Z` in degree 1, replaced by a tower of fibrations.
pub fn replaced_times_two(top: usize) -> ChainTower {
    let z1 = ChainComplex::concentrated(1, 1);
    let raw = ChainTower::new(vec![z1.clone(); top + 1], vec![ChainMap::scalar(&z1, 2); top], TailPolicy::Constant)
        .expect("valid tower");
    fibration_replace(&raw).expect("constant tail").0
}

fn random_gamma(rng: &mut ChaCha8Rng, t: &ChainTower, k1: usize) -> Vec<IntVector> {
    (0..t.top()).map(|n| random::random_cycle(rng, t.level(n), k1, 3)).collect()
}

fn random_shift(rng: &mut ChaCha8Rng, t: &ChainTower, k1: usize) -> Vec<IntVector> {
    (0..=t.top())
        .map(|n| {
            let c = random::random_cycle(rng, t.level(n), k1, 3);
            vec_ops::add(&c, &random::random_boundary(rng, t.level(n), k1, 3))
        })
        .collect()
}

fn phi_suite(rng: &mut ChaCha8Rng) -> Check {
    let t = replaced_times_two(6);
    let (k, k1) = (0, 1);
    let err = |e: MtError| e.to_string();
    for i in 0..100 {
        let (r, bc) = phi_preimage(&t, k, &random_gamma(rng, &t, k1)).map_err(err)?;
        let alt = bc.add(&NullhomotopyFamily { degree: k, chains: random_shift(rng, &t, k1) });
        phi_change_witness(&t, &r, &bc, &alt).map_err(|e| format!("(a) pair {i}: {e}"))?;
    }
    let hs: Vec<Homology> = t.window().iter().map(|c| Homology::compute(c, k1)).collect();
    for i in 0..100 {
        let (r1, b1) = phi_preimage(&t, k, &random_gamma(rng, &t, k1)).map_err(err)?;
        let (r2, b2) = phi_preimage(&t, k, &random_gamma(rng, &t, k1)).map_err(err)?;
        let b2 = b2.add(&NullhomotopyFamily { degree: k, chains: random_shift(rng, &t, k1) });
        let c1 = phi(&t, &r1, Some(&b1)).map_err(err)?;
        let c2 = phi(&t, &r2, Some(&b2)).map_err(err)?;
        let c = phi(&t, &r1.add(&r2), Some(&b1.add(&b2))).map_err(err)?;
        for n in 0..t.top() {
            let sum = hs[n].group().add(&c1.classes[n].class, &c2.classes[n].class);
            ensure(c.classes[n].class == sum, || format!("(b) pair {i}, level {n}: not additive"))?;
        }
    }
    for i in 0..100 {
        let gamma = random_gamma(rng, &t, k1);
        let (r, bc) = phi_preimage(&t, k, &gamma).map_err(err)?;
        let c = phi(&t, &r, Some(&bc)).map_err(err)?;
        for n in 0..t.top() {
            ensure(c.classes[n].representative == gamma[n], || format!("(c) family {i}, level {n}: round trip fails"))?;
        }
    }
    for i in 0..50 {
        let gamma = random_gamma(rng, &t, k1);
        let (r, bc) = phi_preimage(&t, k, &gamma).map_err(err)?;
        let h: Vec<IntVector> = (0..=t.top()).map(|n| random::random_cycle(rng, t.level(n), k1, 3)).collect();
        let gamma_bar: Vec<IntVector> = (0..t.top())
            .map(|n| {
                let pushed = t.map(n + 1).apply(k1, &h[n + 1]).expect("chain length");
                vec_ops::sub(&vec_ops::add(&gamma[n], &h[n]), &pushed)
            })
            .collect();
        let (r_bar, bc_bar) = phi_preimage(&t, k, &gamma_bar).map_err(err)?;
        let w = OrbitEqualityWitness { degree: k1, cycles: h };
        let delta = phi_equalize(&t, &r, &r_bar, &bc, &bc_bar, &w).map_err(|e| format!("(d) pair {i}: {e}"))?;
        for n in 0..=t.top() {
            let d = t.level(n).apply_boundary(k1, &delta.chains[n]).map_err(|e| e.to_string())?;
            ensure(d == vec_ops::sub(&r_bar.cycles[n], &r.cycles[n]), || format!("(d) pair {i}: boundary at level {n}"))?;
            if n > 0 {
                let down = t.map(n).apply(k1, &delta.chains[n]).map_err(|e| e.to_string())?;
                ensure(down == delta.chains[n - 1], || format!("(d) pair {i}: compatibility at level {n}"))?;
            }
        }
    }
    Ok("window 6: 100 witness pairs, 100 sums, 100 round trips, 50 equalizations".into())
}

fn random_recipe(rng: &mut ChaCha8Rng, t: &ChainTower, k: usize) -> Result<LimCycleRecipe, String> {
    let top = random::random_cycle(rng, t.level(t.top()), k, 2);
    LimCycleRecipe::from_top(t, k, top).map_err(|e| e.to_string())
}

fn check_equiv_lift(f: &TowerMap, y: &LimCycleRecipe) -> Result<bool, String> {
    let x = tower_equiv_lift(f, y).map_err(|e| e.to_string())?;
    x.validate(f.source()).map_err(|e| e.to_string())?;
    for n in 0..=f.source().top() {
        let pushed = f.level(n).apply(y.degree, &x.cycles[n]).map_err(|e| e.to_string())?;
        let h = Homology::compute(f.target().level(n), y.degree);
        if !h.same_class(&pushed, &y.cycles[n]).map_err(|e| e.to_string())? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn equivalence_lifts(rng: &mut ChaCha8Rng) -> Check {
    let count = 50;
    let mut lifts = 0;
    for i in 0..count {
        let shape = Shape {
            window: rng.gen_range(1..=3),
            top_degree: rng.gen_range(1..=2),
            max_rank: 3,
            max_entry: 2,
        };
        let raw = random::random_chain_tower(rng, &shape, TailKind::Constant);
        let (s, _) = fibration_replace(&raw).map_err(|e| e.to_string())?;

        // Replacement map of a tower that is already a tower of fibrations.
        let (_, j) = fibration_replace(&s).map_err(|e| e.to_string())?;
        for k in 0..=j.target().top_degree() {
            let y = random_recipe(rng, j.target(), k)?;
            ensure(check_equiv_lift(&j, &y)?, || format!("replacement {i}, degree {k}: classes differ"))?;
            lifts += 1;
        }

        // Inclusion into the sum with a constant acyclic cone.
        let cone = random::identity_cone(&random::random_complex(rng, 2, 2, 2));
        let window: Vec<ChainComplex> = s.window().iter().map(|x| x.direct_sum(&cone)).collect();
        let maps: Vec<ChainMap> = s.maps().iter().map(|q| q.direct_sum(&ChainMap::identity(&cone))).collect();
        let big = ChainTower::new(window, maps, TailPolicy::Constant).map_err(|e| e.to_string())?;
        let incl = s.window().iter().map(|x| ChainMap::inclusion_first(x, &cone)).collect();
        let f = TowerMap::new(s.clone(), big, incl).map_err(|e| e.to_string())?;
        for k in 0..=f.target().top_degree() {
            let y = random_recipe(rng, f.target(), k)?;
            ensure(check_equiv_lift(&f, &y)?, || format!("cone inclusion {i}, degree {k}: classes differ"))?;
            lifts += 1;
        }
    }
    Ok(format!("{} equivalences, {lifts} lifts including degree 0", 2 * count))
}

fn endo(g: &FgAbGroup, m: &[&[i64]]) -> GroupHom {
    GroupHom::new(g.clone(), g.clone(), IntMatrix::from_i64(m)).expect("valid endomorphism")
}

fn ml_case(e: &GroupHom, expect_ml: bool, stable: Option<&[IntVector]>) -> Result<(), String> {
    let g = e.domain().clone();
    let cert = analyze_endomorphism(e);
    ensure(cert.verify(Some(e)), || format!("certificate {cert:?} does not verify"))?;
    let is_ml = !matches!(cert, MlCertificate::StrictDescent { .. });
    ensure(is_ml == expect_ml, || format!("{e:?} classified ML = {is_ml}"))?;
    let t = AbelianTower::new(vec![g.clone()], vec![], TailPolicy::Periodic(e.clone())).map_err(|e| e.to_string())?;
    let lim = lim_of_tower(&t).map_err(|e| e.to_string())?;
    match stable {
        Some(gens) => {
            let expected = Subgroup::generated(&g, gens);
            ensure(lim.projections[0].is_injective(), || "limit does not embed".into())?;
            ensure(expected.same_as(&lim.projections[0].image()), || format!("stable image of {e:?} is wrong"))?;
            ensure(lim.group == expected.group, || format!("lim is {} but E is {}", lim.group, expected.group))?;
        }
        None => ensure(lim.group.is_trivial(), || format!("lim of {e:?} is {}", lim.group))?,
    }
    Ok(())
}

fn ml_classifier() -> Check {
    let z = FgAbGroup::free(1);
    for p in [2, 3, 5] {
        let e = endo(&z, &[&[p]]);
        match analyze_endomorphism(&e) {
            MlCertificate::StrictDescent { step_index, .. } if step_index == p.into() => {}
            other => return Err(format!("x{p}: certificate {other:?}")),
        }
        ml_case(&e, false, None)?;
    }
    let z2 = FgAbGroup::free(2);
    let units = |g: &FgAbGroup| -> Vec<IntVector> {
        (0..g.dim())
            .map(|i| {
                let mut u = g.zero();
                u[i] = 1.into();
                u
            })
            .collect()
    };
    for m in [&[&[2i64, 1][..], &[1, 1][..]][..], &[&[0, 1], &[1, 0]], &[&[1, 1], &[0, 1]], &[&[-1, 0], &[0, 1]]] {
        ml_case(&endo(&z2, m), true, Some(&units(&z2)))?;
    }
    let mixed = FgAbGroup::from_moduli(1, &[4.into()]);
    ml_case(&endo(&mixed, &[&[1, 0], &[0, 3]]), true, Some(&units(&mixed)))?;
    ml_case(&endo(&z2, &[&[0, 1], &[0, 0]]), true, Some(&[]))?;
    let z3 = FgAbGroup::free(3);
    ml_case(&endo(&z3, &[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]]), true, Some(&[]))?;
    let z4 = FgAbGroup::cyclic(4);
    ml_case(&endo(&z4, &[&[2]]), true, Some(&[]))?;
    ml_case(&endo(&z2, &[&[1, 0], &[0, 0]]), true, Some(&[vec_ops::from_i64(&[1, 0])]))?;
    Ok("3 non-ML, 5 unimodular, 3 nilpotent, 1 mixed; certificates verified".into())
}
