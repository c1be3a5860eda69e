use num_bigint::BigInt;
use proptest::prelude::*;
use rand::Rng;

use towerlim::chaincx::{induced_map, is_quasi_iso, path_fibration_replace, solve_boundary, Homology};
use towerlim::gtower::{
    lim1_abelian, lim1_orbits_window, lim_of_tower, tower_act, GroupTower, TowerElementFamily, DEFAULT_ORBIT_BOUND,
};
use towerlim::intlin::{smith_normal_form, solve_integer_system, vec_ops, IntMatrix};
use towerlim::miltower::{
    fibration_replace, phi, phi_preimage, push_family, push_recipe, LimCycleRecipe,
};
use towerlim::random::{self, Shape, TailKind};

fn matrix(rows: usize, cols: usize, bound: i64) -> impl Strategy<Value = IntMatrix> {
    prop::collection::vec(-bound..=bound, rows * cols)
        .prop_map(move |d| IntMatrix::new(rows, cols, d.into_iter().map(BigInt::from).collect()).unwrap())
}

fn small_matrix() -> impl Strategy<Value = IntMatrix> {
    (0usize..5, 0usize..5).prop_flat_map(|(r, c)| matrix(r, c, 6))
}

fn is_unimodular(m: &IntMatrix) -> bool {
    let d = m.determinant().unwrap();
    d == BigInt::from(1) || d == BigInt::from(-1)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn smith_form_invariants(a in small_matrix()) {
        let sf = smith_normal_form(&a);
        prop_assert_eq!(&(&sf.u * &a) * &sf.v, sf.s.clone());
        prop_assert!(is_unimodular(&sf.u) && is_unimodular(&sf.v));
        prop_assert_eq!(&sf.u * sf.u_inv(), IntMatrix::identity(a.rows()));
        prop_assert_eq!(&sf.v * sf.v_inv(), IntMatrix::identity(a.cols()));
        let d = sf.invariant_factors();
        prop_assert_eq!(d.len(), sf.rank());
        for i in 0..d.len() {
            prop_assert!(d[i] > BigInt::from(0));
            if i + 1 < d.len() {
                prop_assert!((&d[i + 1] % &d[i]) == BigInt::from(0));
            }
        }
        for i in 0..a.rows() {
            for j in 0..a.cols() {
                if i != j || i >= d.len() {
                    prop_assert_eq!(sf.s.get(i, j), &BigInt::from(0));
                }
            }
        }
        let k = sf.kernel_basis();
        prop_assert!((&a * &k).is_zero());
    }

    /// Exhaustive search in a box agrees with the solver on solvability,
    /// for systems whose solutions (if any) are small.
    #[test]
    fn solver_matches_box_search(a in (1usize..3, 1usize..3).prop_flat_map(|(r, c)| matrix(r, c, 3)),
                                 b in prop::collection::vec(-4i64..=4, 2)) {
        let b: Vec<BigInt> = b[..a.rows()].iter().map(|&x| BigInt::from(x)).collect();
        let found = (0..9i64.pow(a.cols() as u32)).any(|mut idx| {
            let x: Vec<BigInt> = (0..a.cols()).map(|_| { let v = idx % 9 - 4; idx /= 9; BigInt::from(v) }).collect();
            a.mul_vec(&x) == b
        });
        let solved = solve_integer_system(&a, &b).unwrap();
        if let Some(x) = &solved {
            prop_assert_eq!(a.mul_vec(x), b.clone());
        }
        if found {
            prop_assert!(solved.is_some());
        }
    }

    #[test]
    fn boundary_solvable_iff_class_zero(seed in any::<u64>(), k in 0usize..3) {
        let mut rng = random::rng(seed);
        let c = random::random_complex(&mut rng, 3, 3, 3);
        let z = if rng.gen_bool(0.5) {
            random::random_boundary(&mut rng, &c, k, 3)
        } else {
            random::random_cycle(&mut rng, &c, k, 3)
        };
        let h = Homology::compute(&c, k);
        let sol = solve_boundary(&c, k, &z).unwrap();
        prop_assert_eq!(sol.is_some(), h.is_zero_class(&z).unwrap());
        if let Some(b) = sol {
            prop_assert!(b.verify(&c));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn path_fibration_factors_maps(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let a = random::random_complex(&mut rng, 2, 3, 3);
        let b = random::random_complex(&mut rng, 2, 3, 3);
        let f = random::random_chain_map(&mut rng, &a, &b, 3);
        let p = path_fibration_replace(&f);
        prop_assert!(p.ev1.is_fibration());
        prop_assert!(is_quasi_iso(&p.j));
        prop_assert_eq!(p.ev1.compose(&p.j).unwrap(), f);
    }

    #[test]
    fn homology_is_functorial(seed in any::<u64>(), k in 0usize..3) {
        let mut rng = random::rng(seed);
        let cs: Vec<_> = (0..3).map(|_| random::random_complex(&mut rng, 2, 3, 3)).collect();
        let f = random::random_chain_map(&mut rng, &cs[0], &cs[1], 3);
        let g = random::random_chain_map(&mut rng, &cs[1], &cs[2], 3);
        let hs: Vec<_> = cs.iter().map(|c| Homology::compute(c, k)).collect();
        let gf = induced_map(&g.compose(&f).unwrap(), k, &hs[0], &hs[2]);
        let composed = induced_map(&g, k, &hs[1], &hs[2]).compose(&induced_map(&f, k, &hs[0], &hs[1])).unwrap();
        prop_assert!(gf.sub(&composed).unwrap().image().group.is_trivial());
    }

    #[test]
    fn orbit_count_equals_cokernel_order(seed in any::<u64>(), levels in 1usize..4, constant in any::<bool>()) {
        let mut rng = random::rng(seed);
        let tail = if constant { TailKind::Constant } else { TailKind::Trivial };
        let t = random::random_finite_abelian_tower(&mut rng, levels, 12, tail);
        let orbits = lim1_orbits_window(&t.to_finite().unwrap(), DEFAULT_ORBIT_BOUND).unwrap();
        let order = lim1_abelian(&t).window_cokernel.order().unwrap();
        prop_assert_eq!(order, BigInt::from(orbits.orbit_count()));
    }

    #[test]
    fn action_is_a_left_action(seed in any::<u64>(), levels in 1usize..5) {
        let mut rng = random::rng(seed);
        let t = random::random_cayley_tower(&mut rng, &random::cayley_catalog(), levels, TailKind::Constant);
        let mut family = || TowerElementFamily::new(t.window().iter().map(|g| rng.gen_range(0..g.order())).collect());
        let (a, b, h) = (family(), family(), family());
        let lhs = tower_act(&t, &a, &tower_act(&t, &b, &h).unwrap()).unwrap();
        let rhs = tower_act(&t, &TowerElementFamily::product(&t, &a, &b), &h).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(tower_act(&t, &TowerElementFamily::identity(&t), &h).unwrap(), h);
        prop_assert_eq!(t.top() + 1, levels);
    }

    #[test]
    fn limit_projections_are_compatible(seed in any::<u64>(), tail_kind in 0u8..3) {
        let mut rng = random::rng(seed);
        let tail = [TailKind::Trivial, TailKind::Constant, TailKind::Periodic][tail_kind as usize];
        let t = random::random_abelian_tower(&mut rng, &Shape::default(), tail);
        // Periodic tails outside the supported classes are reported, not guessed.
        if let Ok(lim) = lim_of_tower(&t) {
            for n in 1..lim.projections.len() {
                let down = t.map(n).compose(&lim.projections[n]).unwrap();
                prop_assert!(down.sub(&lim.projections[n - 1]).unwrap().image().group.is_trivial());
            }
        }
    }

    #[test]
    fn replacement_is_a_levelwise_equivalence(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let t = random::random_chain_tower(&mut rng, &Shape { window: 2, top_degree: 2, max_rank: 2, max_entry: 3 }, TailKind::Constant);
        let (r, j) = fibration_replace(&t).unwrap();
        prop_assert!(r.is_fibration_tower());
        prop_assert_eq!(j.first_non_equivalence(), None);
    }

    /// Pushing a kernel recipe and its bounding family along a tower map
    /// pushes the resulting classes.
    #[test]
    fn phi_is_natural(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let raw = random::random_chain_tower(&mut rng, &Shape { window: 2, top_degree: 2, max_rank: 2, max_entry: 2 }, TailKind::Constant);
        let (s, _) = fibration_replace(&raw).unwrap();
        let (t, f) = fibration_replace(&s).unwrap();
        let gamma: Vec<_> = (0..s.top()).map(|n| random::random_cycle(&mut rng, s.level(n), 1, 3)).collect();
        let (r, bc) = phi_preimage(&s, 0, &gamma).unwrap();
        let c = phi(&s, &r, Some(&bc)).unwrap();
        let c_pushed = phi(&t, &push_recipe(&f, &r).unwrap(), Some(&push_family(&f, &bc).unwrap())).unwrap();
        for n in 0..s.top() {
            let image = f.level(n).apply(1, &c.classes[n].representative).unwrap();
            let h = Homology::compute(t.level(n), 1);
            prop_assert!(h.same_class(&image, &c_pushed.classes[n].representative).unwrap());
        }
    }

    #[test]
    fn recipe_sums_stay_recipes(seed in any::<u64>(), k in 0usize..2) {
        let mut rng = random::rng(seed);
        let t = random::random_chain_tower(&mut rng, &Shape::default(), TailKind::Constant);
        let top = |rng: &mut _| random::random_cycle(rng, t.level(t.top()), k, 3);
        let a = LimCycleRecipe::from_top(&t, k, top(&mut rng)).unwrap();
        let b = LimCycleRecipe::from_top(&t, k, top(&mut rng)).unwrap();
        let sum = a.add(&b);
        prop_assert!(sum.validate(&t).is_ok());
        prop_assert_eq!(&sum.cycles[0], &vec_ops::add(&a.cycles[0], &b.cycles[0]));
    }
}
