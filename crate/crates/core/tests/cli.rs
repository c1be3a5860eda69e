use proptest::prelude::*;
use serde_json::Value;
use towerlim::chaincx::Homology;
use towerlim::cli::format::{self, Tower, TowerFile};
use towerlim::cli::gen::{generate, GenKind, GenParams};
use towerlim::cli::run_with;
use towerlim::random::{self, Shape, TailKind};

const DATA: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/data");

fn run(args: &[&str], stdin: &str) -> (i32, String, String) {
    let mut argv = vec!["towerlim"];
    argv.extend_from_slice(args);
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run_with(argv, &mut stdin.as_bytes(), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn run_file(args: &[&str], name: &str) -> (i32, Value) {
    let path = format!("{DATA}/{name}");
    let mut all = args.to_vec();
    all.extend_from_slice(&["--input", &path]);
    let (code, out, _) = run(&all, "");
    (code, serde_json::from_str(&out).expect("report is JSON"))
}

fn assertion<'a>(report: &'a Value, name: &str) -> &'a Value {
    report["assertions"]
        .as_array()
        .unwrap()
        .iter()
        .find(|a| a["name"] == name)
        .unwrap_or_else(|| panic!("no assertion {name}"))
}

#[test]
fn zero_tower_has_trivial_lim1() {
    let (code, r) = run_file(&["lim1"], "zero_tower.json");
    assert_eq!(code, 0);
    assert_eq!(r["results"]["lim1"]["display"], "0");
}

#[test]
fn replaced_times_two_passes_milnor_check() {
    let (code, r) = run_file(&["milnor-check", "--degree", "1"], "replaced_x2_tower.json");
    assert_eq!(code, 0, "{r:#}");
    for name in ["projection_injective", "projection_surjective", "sequence_exact"] {
        assert_eq!(assertion(&r, name)["pass"], true);
    }
    assert_eq!(r["results"]["limit_of_homology"]["display"], "Z");
    assert_eq!(r["results"]["homology_of_limit"]["display"], "Z");
}

#[test]
fn raw_times_two_violates_hypothesis() {
    let (code, r) = run_file(&["milnor-check", "--degree", "1"], "raw_x2_tower.json");
    assert_eq!(code, 1);
    assert_eq!(r["status"], "fail");
    let a = assertion(&r, "fibration_tower");
    assert_eq!(a["pass"], false);
    assert!(a["values"]["message"].as_str().unwrap().contains("hypothesis violated"));
}

#[test]
fn periodic_times_two() {
    let (code, r) = run_file(&["lim1"], "times_two_periodic.json");
    assert_eq!(code, 0);
    assert_eq!(r["results"]["status"], "non_mittag_leffler");
    assert_eq!(r["results"]["certificate"]["step_index"], "2");
    let (code, r) = run_file(&["lim"], "times_two_periodic.json");
    assert_eq!(code, 0);
    assert_eq!(r["results"]["group"]["display"], "0");
}

#[test]
fn s3_tower_limits() {
    let (code, r) = run_file(&["lim"], "s3_tower.json");
    assert_eq!(code, 0);
    assert_eq!(r["results"]["order"], "6");
    assert_eq!(r["results"]["abelian"], false);
    let (code, r) = run_file(&["lim1", "--window", "4"], "s3_tower.json");
    assert_eq!(code, 0);
    assert_eq!(r["results"]["orbit_count"], "1");
}

#[test]
fn witness_commands_on_replaced_tower() {
    for cmd in ["phi", "phi-preimage", "phi-equalize", "lift", "equiv-lift", "homology"] {
        for k in ["0", "1"] {
            let (code, r) = run_file(&[cmd, "--degree", k, "--seed", "7"], "replaced_x2_tower.json");
            assert_eq!(code, 0, "{cmd} {k}: {r:#}");
        }
    }
}

#[test]
fn phi_preimage_fails_without_fibrations() {
    let (code, r) = run_file(&["phi-preimage", "--seed", "1"], "raw_x2_tower.json");
    assert_eq!(code, 1);
    assert_eq!(assertion(&r, "lift_exists")["pass"], false);
}

#[test]
fn file_witness_data_is_used() {
    let text = std::fs::read_to_string(format!("{DATA}/replaced_x2_tower.json")).unwrap();
    let mut f = format::parse(&text).unwrap();
    let Tower::Chain(t) = &f.tower else { unreachable!() };
    // One class per level below the top: the generator of H_1 at each level.
    let gamma: Vec<_> = (0..t.top())
        .map(|n| Homology::compute(t.level(n), 1).representative(&[1.into()]))
        .collect();
    f.gamma = Some(gamma.clone());
    let (code, out, _) = run(&["phi-preimage"], &format::to_text(&f));
    assert_eq!(code, 0);
    let r: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(r["results"]["gamma"], format::vectors_value(&gamma));
    assert_eq!(assertion(&r, "classes_reproduced")["pass"], true);
}

#[test]
fn input_errors_exit_two() {
    let (code, out, err) = run(&["lim"], "{\n \"kind\": \"abelian_tower\",\n \"window\": [\n");
    assert_eq!(code, 2);
    assert!(err.contains("line 4"), "{err}");
    let r: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(r["status"], "input_error");

    let bad = r#"{"kind": "abelian_tower", "window": [{"free_rank": "1", "torsion": ["3", "2"]}], "maps": [], "tail": {"kind": "constant"}}"#;
    let (code, _, err) = run(&["lim"], bad);
    assert_eq!(code, 2);
    assert!(err.contains("$.window[0]"), "{err}");

    let (code, _, err) = run(&["milnor-check"], &std::fs::read_to_string(format!("{DATA}/zero_tower.json")).unwrap());
    assert_eq!(code, 2);
    assert!(err.contains("does not accept"));

    let (code, out, _) = run(&["no-such-command"], "");
    assert_eq!(code, 2);
    assert!(out.contains("input_error"));

    let (code, _, _) = run(&["gen", "--max-rank", "6"], "");
    assert_eq!(code, 2);
    let (code, _, _) = run(&["gen", "--window", "7"], "");
    assert_eq!(code, 2);
    let (code, _, _) = run(&["gen", "--kind", "simplicial"], "");
    assert_eq!(code, 2);
}

#[test]
fn window_can_only_grow() {
    let (code, _) = run_file(&["homology", "--window", "1"], "raw_x2_tower.json");
    assert_eq!(code, 2);
    let (code, r) = run_file(&["homology", "--window", "5", "--degree", "1"], "raw_x2_tower.json");
    assert_eq!(code, 0);
    assert_eq!(r["results"]["groups"].as_array().unwrap().len(), 6);
}

#[test]
fn reports_are_deterministic() {
    for cmd in ["lim1", "phi", "equiv-lift"] {
        let name = if cmd == "lim1" { "s3_tower.json" } else { "replaced_x2_tower.json" };
        let a = run_file(&[cmd], name);
        let b = run_file(&[cmd], name);
        assert_eq!(a, b);
    }
}

#[test]
fn gen_matches_golden_file() {
    let golden = include_str!("golden/gen_seed0.json");
    let (code, out, _) = run(&["gen", "--seed", "0"], "");
    assert_eq!(code, 0);
    assert_eq!(out, golden);
    let (_, again, _) = run(&["gen", "--seed", "0"], "");
    assert_eq!(out, again);
}

#[test]
fn hundred_seeds_give_valid_towers() {
    for kind in [GenKind::Chain, GenKind::Abelian, GenKind::FiniteAbelian, GenKind::Finite] {
        for seed in 0..100 {
            let p = GenParams {
                kind,
                seed,
                ..GenParams::default()
            };
            let f = generate(&p).unwrap();
            // Parsing re-runs every validity check: ∂∂ = 0, chain-map squares, homomorphisms.
            let back = format::parse(&format::to_text(&f)).unwrap();
            assert_eq!(back, f);
        }
    }
}

fn any_tail() -> impl Strategy<Value = TailKind> {
    prop_oneof![Just(TailKind::Trivial), Just(TailKind::Constant), Just(TailKind::Periodic)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn tower_files_round_trip(seed in any::<u64>(), tail in any_tail(), window in 0usize..4, rank in 1usize..4) {
        let mut rng = random::rng(seed);
        let shape = Shape { window, top_degree: 2, max_rank: rank, max_entry: 3 };
        let towers = [
            Tower::Chain(random::random_chain_tower(&mut rng, &shape, tail)),
            Tower::Abelian(random::random_abelian_tower(&mut rng, &shape, tail)),
            Tower::Finite(random::random_cayley_tower(&mut rng, &random::cayley_catalog(), window + 1, tail)),
        ];
        for t in towers {
            let f = TowerFile::new(t);
            prop_assert_eq!(format::parse(&format::to_text(&f)).unwrap(), f);
        }
    }

    #[test]
    fn witness_data_round_trips(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let t = random::random_chain_tower(&mut rng, &Shape::default(), TailKind::Constant);
        let mut f = TowerFile::new(Tower::Chain(t.clone()));
        let cycles: Vec<_> = t.window().iter().map(|c| random::random_cycle(&mut rng, c, 1, 3)).collect();
        f.recipe = Some(format::RecipeData { cycles: cycles.clone(), bounding: Some(cycles.clone()) });
        f.gamma = Some(cycles);
        prop_assert_eq!(format::parse(&format::to_text(&f)).unwrap(), f);
    }
}
