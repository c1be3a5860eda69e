use num_bigint::BigInt;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use super::format::{
    chain_map_value, group_value, int_value, matrix_value, tower_value, vector_value, vectors_value, RecipeData,
    Tower, TowerFile,
};
use super::report::{Assertion, Report};
use crate::acceptance;
use crate::chaincx::{ChainComplex, ChainMap, Homology, HomologyClass};
use crate::gtower::{
    lim1_abelian, lim1_orbits_window, lim_of_finite_tower, lim_of_tower, mittag_leffler_check, AbelianTower,
    CayleyGroup, CayleyHom, FiniteGroupTower, GtError, Lim1Status, LimitMethod, MlCertificate, TailPolicy,
};
use crate::intlin::{vec_ops, FgAbGroup, GroupHom, IntVector, LinError};
use crate::miltower::{
    fibration_replace, milnor_window_check, phi, phi_change_witness, phi_equalize, phi_preimage, push_recipe,
    tower_equiv_lift, lift_compatible_classes, ChainTower, Lim1Witness, LimCycleRecipe, MtError, NullhomotopyFamily,
    OrbitEqualityWitness,
};
use crate::random;

const ENTRY_BOUND: i64 = 3;

/// Options shared by the analysis commands.
#[derive(Clone, Debug, Default)]
pub struct Options {
    pub degree: usize,
    pub window: Option<usize>,
    pub bound: usize,
    pub seed: u64,
}

#[derive(Debug)]
pub enum CmdError {
    /// Bad or unsupported input.
    Input(String),
    /// A construction or hypothesis failed; reported as a failed assertion.
    Failed { name: &'static str, message: String },
}

impl From<MtError> for CmdError {
    fn from(e: MtError) -> Self {
        let name = match &e {
            MtError::NoLift(_) => "lift_exists",
            MtError::NotCompatible(_) => "classes_compatible",
            MtError::NotInKernel(_) => "recipe_in_kernel",
            MtError::WitnessInvalid(_) => "witness_valid",
            MtError::NotEquivalence(_) => "levelwise_quasi_isomorphism",
            MtError::HypothesisViolated(_) => "fibration_tower",
            _ => return CmdError::Input(e.to_string()),
        };
        CmdError::Failed {
            name,
            message: e.to_string(),
        }
    }
}

impl From<GtError> for CmdError {
    fn from(e: GtError) -> Self {
        CmdError::Input(e.to_string())
    }
}

impl From<LinError> for CmdError {
    fn from(e: LinError) -> Self {
        CmdError::Input(e.to_string())
    }
}

impl From<crate::chaincx::CxError> for CmdError {
    fn from(e: crate::chaincx::CxError) -> Self {
        CmdError::Input(e.to_string())
    }
}

type CmdResult = Result<(), CmdError>;

pub fn execute(command: &str, file: &TowerFile, opts: &Options, report: &mut Report) -> CmdResult {
    let tower = extend(&file.tower, opts.window)?;
    match (command, &tower) {
        ("lim", Tower::Abelian(t)) => lim_abelian(t, report),
        ("lim", Tower::Finite(t)) => lim_finite(t, report),
        ("lim1", Tower::Abelian(t)) => lim1_abelian_cmd(t, opts, report),
        ("lim1", Tower::Finite(t)) => lim1_finite(t, opts, report),
        ("ml-check", Tower::Abelian(t)) => ml_check(t, report),
        ("homology", Tower::Chain(t)) => homology_cmd(t, opts, report),
        ("milnor-check", Tower::Chain(t)) => milnor_cmd(t, opts, report),
        ("phi", Tower::Chain(t)) => phi_cmd(t, file, opts, report),
        ("phi-preimage", Tower::Chain(t)) => phi_preimage_cmd(t, file, opts, report),
        ("phi-equalize", Tower::Chain(t)) => phi_equalize_cmd(t, file, opts, report),
        ("lift", Tower::Chain(t)) => lift_cmd(t, file, opts, report),
        ("equiv-lift", Tower::Chain(t)) => equiv_lift_cmd(t, file, opts, report),
        ("replace", Tower::Chain(t)) => replace_cmd(t, report),
        (cmd, t) => Err(CmdError::Input(format!("{cmd} does not accept a {}", t.kind()))),
    }
}

pub fn selftest(seed: u64, report: &mut Report) {
    let outcomes = acceptance::run_all(seed);
    report.result("criteria", json!(outcomes.len().to_string()));
    for o in outcomes {
        report.assert(
            Assertion::new(format!("criterion_{}", o.id), o.pass)
                .with("name", json!(o.name))
                .with("detail", json!(o.detail)),
        );
    }
}

// ---------- window extension ----------

fn too_short(top: usize, n: usize) -> CmdError {
    CmdError::Input(format!("--window {n} is below the file's top level {top}; windows can only be extended"))
}

/// Extends the window to top level `n` along the tail policy.
fn extend(t: &Tower, n: Option<usize>) -> Result<Tower, CmdError> {
    let Some(n) = n else { return Ok(t.clone()) };
    Ok(match t {
        Tower::Abelian(t) => Tower::Abelian(extend_abelian(t, n)?),
        Tower::Finite(t) => Tower::Finite(extend_finite(t, n)?),
        Tower::Chain(t) => Tower::Chain(extend_chain(t, n)?),
    })
}

fn extend_abelian(t: &AbelianTower, n: usize) -> Result<AbelianTower, CmdError> {
    let top = t.window().len() - 1;
    if n < top {
        return Err(too_short(top, n));
    }
    let (mut window, mut maps) = (t.window().to_vec(), t.maps().to_vec());
    while window.len() <= n {
        let last = window.last().unwrap().clone();
        let (g, p) = match t.tail() {
            TailPolicy::Trivial => {
                let z = FgAbGroup::trivial();
                let p = GroupHom::zero(&z, &last);
                (z, p)
            }
            TailPolicy::Constant => (last.clone(), GroupHom::identity(&last)),
            TailPolicy::Periodic(e) => (last.clone(), e.clone()),
        };
        window.push(g);
        maps.push(p);
    }
    Ok(AbelianTower::new(window, maps, t.tail().clone())?)
}

fn extend_finite(t: &FiniteGroupTower, n: usize) -> Result<FiniteGroupTower, CmdError> {
    let top = t.window().len() - 1;
    if n < top {
        return Err(too_short(top, n));
    }
    let (mut window, mut maps) = (t.window().to_vec(), t.maps().to_vec());
    while window.len() <= n {
        let last = window.last().unwrap().clone();
        let (g, p) = match t.tail() {
            TailPolicy::Trivial => {
                let z = CayleyGroup::trivial();
                let p = CayleyHom::trivial(&z);
                (z, p)
            }
            TailPolicy::Constant => (last.clone(), CayleyHom::identity(&last)),
            TailPolicy::Periodic(e) => (last.clone(), e.clone()),
        };
        window.push(g);
        maps.push(p);
    }
    Ok(FiniteGroupTower::new(window, maps, t.tail().clone())?)
}

fn extend_chain(t: &ChainTower, n: usize) -> Result<ChainTower, CmdError> {
    if n < t.top() {
        return Err(too_short(t.top(), n));
    }
    let (mut window, mut maps) = (t.window().to_vec(), t.maps().to_vec());
    while window.len() <= n {
        let last = window.last().unwrap().clone();
        let (c, q) = match t.tail() {
            TailPolicy::Trivial => {
                let z = ChainComplex::zero(last.top_degree());
                let q = ChainMap::zero(&z, &last);
                (z, q)
            }
            TailPolicy::Constant => (last.clone(), ChainMap::identity(&last)),
            TailPolicy::Periodic(e) => (last.clone(), e.clone()),
        };
        window.push(c);
        maps.push(q);
    }
    Ok(ChainTower::new(window, maps, t.tail().clone())?)
}

// ---------- values ----------

fn certificate_value(c: &MlCertificate) -> Value {
    match c {
        MlCertificate::TrivialTail => json!({"kind": "trivial_tail"}),
        MlCertificate::ConstantTail => json!({"kind": "constant_tail"}),
        MlCertificate::Stabilizes { index } => json!({"kind": "stabilizes", "index": index.to_string()}),
        MlCertificate::StrictDescent {
            index,
            rank,
            step_index,
        } => json!({
            "kind": "strict_descent",
            "index": index.to_string(),
            "rank": rank.to_string(),
            "step_index": int_value(step_index),
        }),
    }
}

fn method_value(m: &LimitMethod) -> Value {
    match m {
        LimitMethod::TrivialTail => json!({"kind": "trivial_tail"}),
        LimitMethod::ConstantTail => json!({"kind": "constant_tail"}),
        LimitMethod::StableImage { index } => json!({"kind": "stable_image", "index": index.to_string()}),
        LimitMethod::UnimodularPart => json!({"kind": "unimodular_part"}),
    }
}

fn group_display(g: &FgAbGroup) -> Value {
    let mut v = group_value(g);
    v.as_object_mut().unwrap().insert("display".into(), json!(g.to_string()));
    v
}

fn class_value(c: &HomologyClass) -> Value {
    json!({"representative": vector_value(&c.representative), "class": vector_value(&c.class)})
}

fn witness_value(w: &Lim1Witness) -> Value {
    json!({"degree": w.degree.to_string(), "classes": w.classes.iter().map(class_value).collect::<Vec<_>>()})
}

fn recipe_value(r: &LimCycleRecipe) -> Value {
    json!({"degree": r.degree.to_string(), "cycles": vectors_value(&r.cycles)})
}

fn family_value(b: &NullhomotopyFamily) -> Value {
    vectors_value(&b.chains)
}

fn tail_tag<E>(t: &TailPolicy<E>) -> &'static str {
    match t {
        TailPolicy::Trivial => "trivial",
        TailPolicy::Constant => "constant",
        TailPolicy::Periodic(_) => "periodic",
    }
}

fn homs_agree(a: &GroupHom, b: &GroupHom) -> Result<bool, CmdError> {
    Ok(a.sub(b)?.image().group.is_trivial())
}

// ---------- group towers ----------

fn lim_abelian(t: &AbelianTower, report: &mut Report) -> CmdResult {
    let lim = lim_of_tower(t)?;
    report.result("group", group_display(&lim.group));
    report.result("method", method_value(&lim.method));
    report.result(
        "projections",
        Value::Array(lim.projections.iter().map(|p| matrix_value(p.matrix())).collect()),
    );
    if let Some(a) = &lim.tail_automorphism {
        report.result("tail_automorphism", matrix_value(a.matrix()));
    }
    let mut ok = true;
    for n in 1..lim.projections.len() {
        ok &= homs_agree(&t.map(n).compose(&lim.projections[n])?, &lim.projections[n - 1])?;
    }
    report.check("projections_compatible", ok);
    if let (TailPolicy::Periodic(e), Some(a)) = (t.tail(), &lim.tail_automorphism) {
        let top = &lim.projections[lim.projections.len() - 1];
        report.check("tail_commutes", homs_agree(&e.compose(top)?, &top.compose(a)?)?);
        report.check("tail_automorphism_invertible", a.is_isomorphism());
    }
    Ok(())
}

fn lim_finite(t: &FiniteGroupTower, report: &mut Report) -> CmdResult {
    let lim = lim_of_finite_tower(t)?;
    report.result("order", json!(lim.group.order().to_string()));
    report.result("abelian", json!(lim.group.is_abelian()));
    report.result(
        "projections",
        Value::Array(
            lim.projections
                .iter()
                .map(|p| Value::Array(p.as_slice().iter().map(|x| json!(x.to_string())).collect()))
                .collect(),
        ),
    );
    let ok = (0..lim.group.order()).all(|x| {
        (1..lim.projections.len())
            .all(|n| t.map(n).apply(lim.projections[n].apply(x)) == lim.projections[n - 1].apply(x))
    });
    report.check("projections_compatible", ok);
    Ok(())
}

fn lim1_abelian_cmd(t: &AbelianTower, opts: &Options, report: &mut Report) -> CmdResult {
    let res = lim1_abelian(t);
    match &res.status {
        Lim1Status::Computed(g) => {
            report.result("status", json!("computed"));
            report.result("lim1", group_display(g));
        }
        Lim1Status::NonMittagLeffler => {
            report.result("status", json!("non_mittag_leffler"));
            report.note("the tail is not Mittag-Leffler; lim1 is not computed for such towers");
        }
    }
    report.result("window_cokernel", group_display(&res.window_cokernel));
    report.result("mittag_leffler", json!(res.ml.mittag_leffler));
    report.result("certificate", certificate_value(&res.ml.certificate));
    let endo = match t.tail() {
        TailPolicy::Periodic(e) => Some(e),
        _ => None,
    };
    report.check("certificate_verified", res.ml.certificate.verify(endo));
    if t.all_finite() {
        if let Ok(f) = t.to_finite() {
            if f.product_size() <= opts.bound {
                let orbits = lim1_orbits_window(&f, opts.bound)?;
                let order = res.window_cokernel.order().expect("finite cokernel");
                report.assert(
                    Assertion::new("orbit_count_matches_cokernel", order == BigInt::from(orbits.orbit_count()))
                        .with("orbits", json!(orbits.orbit_count().to_string()))
                        .with("cokernel_order", int_value(&order)),
                );
            }
        }
    }
    Ok(())
}

fn lim1_finite(t: &FiniteGroupTower, opts: &Options, report: &mut Report) -> CmdResult {
    let orbits = lim1_orbits_window(t, opts.bound)?;
    report.result("orbit_count", json!(orbits.orbit_count().to_string()));
    report.result(
        "orbit_sizes",
        Value::Array(orbits.sizes.iter().map(|s| json!(s.to_string())).collect()),
    );
    report.result(
        "representatives",
        Value::Array(
            orbits
                .representatives
                .iter()
                .map(|&r| Value::Array(orbits.decode(r).iter().map(|x| json!(x.to_string())).collect()))
                .collect(),
        ),
    );
    report.check("orbits_partition_window", orbits.sizes.iter().sum::<usize>() == t.product_size());
    if matches!(t.tail(), TailPolicy::Trivial) {
        report.check("trivial_tail_single_orbit", orbits.orbit_count() == 1);
    }
    Ok(())
}

fn ml_check(t: &AbelianTower, report: &mut Report) -> CmdResult {
    let ml = mittag_leffler_check(t);
    report.result("mittag_leffler", json!(ml.mittag_leffler));
    report.result("certificate", certificate_value(&ml.certificate));
    let endo = match t.tail() {
        TailPolicy::Periodic(e) => Some(e),
        _ => None,
    };
    report.check("certificate_verified", ml.certificate.verify(endo));
    if !ml.mittag_leffler {
        report.note("strict descent certifies failure of Mittag-Leffler only");
    }
    Ok(())
}

// ---------- chain towers ----------

fn homology_cmd(t: &ChainTower, opts: &Options, report: &mut Report) -> CmdResult {
    let k = opts.degree;
    let (ht, _) = t.homology_tower(k);
    report.result("degree", json!(k.to_string()));
    report.result("groups", Value::Array(ht.window().iter().map(group_display).collect()));
    report.result("maps", Value::Array(ht.maps().iter().map(|p| matrix_value(p.matrix())).collect()));
    if let TailPolicy::Periodic(e) = ht.tail() {
        report.result("tail_endo", matrix_value(e.matrix()));
    }
    report.result("tail", json!(tail_tag(t.tail())));
    report.result("fibration_flags", json!(t.fibration_flags()));
    Ok(())
}

fn milnor_cmd(t: &ChainTower, opts: &Options, report: &mut Report) -> CmdResult {
    report.result("fibration_flags", json!(t.fibration_flags()));
    let rep = milnor_window_check(t, opts.degree)?;
    report.result("degree", json!(rep.degree.to_string()));
    report.result("lim1", rep.lim1.as_ref().map_or(Value::Null, group_display));
    report.result("homology_of_limit", group_display(&rep.homology_of_limit));
    report.result("limit_of_homology", group_display(&rep.limit_of_homology));
    report.result("projection", matrix_value(rep.projection.matrix()));
    for c in &rep.checks {
        report.check(c.name, c.pass);
    }
    Ok(())
}

fn rng(opts: &Options) -> ChaCha8Rng {
    random::rng(opts.seed)
}

fn check_vectors(t: &ChainTower, degree: usize, vs: &[IntVector], levels: usize, what: &str) -> CmdResult {
    if vs.len() != levels {
        return Err(CmdError::Input(format!("{what} has {} entries, expected {levels}", vs.len())));
    }
    for (n, v) in vs.iter().enumerate() {
        t.level(n)
            .check_chain(degree, v)
            .map_err(|e| CmdError::Input(format!("{what}[{n}]: {e}")))?;
    }
    Ok(())
}

/// A recipe in the kernel of the projection: push a random top boundary down.
fn random_kernel_recipe(rng: &mut ChaCha8Rng, t: &ChainTower, k: usize) -> Result<LimCycleRecipe, CmdError> {
    let top = random::random_boundary(rng, t.level(t.top()), k, ENTRY_BOUND);
    Ok(LimCycleRecipe::from_top(t, k, top)?)
}

fn random_cycles(rng: &mut ChaCha8Rng, t: &ChainTower, k: usize, levels: usize) -> Vec<IntVector> {
    (0..levels)
        .map(|n| random::random_cycle(rng, t.level(n), k, ENTRY_BOUND))
        .collect()
}

fn file_recipe(t: &ChainTower, data: &RecipeData, k: usize) -> Result<(LimCycleRecipe, Option<NullhomotopyFamily>), CmdError> {
    check_vectors(t, k, &data.cycles, t.top() + 1, "recipe.cycles")?;
    let r = LimCycleRecipe {
        degree: k,
        cycles: data.cycles.clone(),
    };
    let bc = match &data.bounding {
        Some(b) => {
            check_vectors(t, k + 1, b, t.top() + 1, "recipe.bounding")?;
            Some(NullhomotopyFamily {
                degree: k,
                chains: b.clone(),
            })
        }
        None => None,
    };
    Ok((r, bc))
}

fn phi_cmd(t: &ChainTower, file: &TowerFile, opts: &Options, report: &mut Report) -> CmdResult {
    let k = opts.degree;
    let mut rng = rng(opts);
    let (r, given) = match &file.recipe {
        Some(data) => file_recipe(t, data, k)?,
        None => (random_kernel_recipe(&mut rng, t, k)?, None),
    };
    report.result("recipe", recipe_value(&r));
    let bc = match given {
        Some(b) => b,
        None => crate::miltower::bounding_family(t, &r)?,
    };
    report.result("bounding", family_value(&bc));
    bc.verify(t, &r)?;
    report.check("bounding_family_verified", true);
    let c = phi(t, &r, Some(&bc))?;
    report.result("classes", witness_value(&c));
    let alt = bc.add(&NullhomotopyFamily {
        degree: k,
        chains: random_cycles(&mut rng, t, k + 1, t.top() + 1),
    });
    let (w, _, c_alt) = phi_change_witness(t, &r, &bc, &alt)?;
    report.result("alternative_classes", witness_value(&c_alt));
    report.result("action_element", vectors_value(&w.cycles));
    report.check("orbit_relation", true);
    Ok(())
}

fn gamma_input(rng: &mut ChaCha8Rng, t: &ChainTower, file: &TowerFile, k1: usize) -> Result<Vec<IntVector>, CmdError> {
    match &file.gamma {
        Some(g) => {
            check_vectors(t, k1, g, t.top(), "gamma")?;
            Ok(g.clone())
        }
        None => Ok(random_cycles(rng, t, k1, t.top())),
    }
}

fn classes_match(t: &ChainTower, k1: usize, c: &Lim1Witness, gamma: &[IntVector]) -> Result<bool, CmdError> {
    for (n, g) in gamma.iter().enumerate() {
        let h = Homology::compute(t.level(n), k1);
        if !h.same_class(&c.classes[n].representative, g)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn phi_preimage_cmd(t: &ChainTower, file: &TowerFile, opts: &Options, report: &mut Report) -> CmdResult {
    let (k, k1) = (opts.degree, opts.degree + 1);
    let mut rng = rng(opts);
    let gamma = gamma_input(&mut rng, t, file, k1)?;
    report.result("gamma", vectors_value(&gamma));
    let (r, bc) = phi_preimage(t, k, &gamma)?;
    report.result("recipe", recipe_value(&r));
    report.result("bounding", family_value(&bc));
    report.check("recipe_valid", r.validate(t).is_ok());
    let c = phi(t, &r, Some(&bc))?;
    report.check("classes_reproduced", classes_match(t, k1, &c, &gamma)?);
    Ok(())
}

fn phi_equalize_cmd(t: &ChainTower, file: &TowerFile, opts: &Options, report: &mut Report) -> CmdResult {
    let (k, k1) = (opts.degree, opts.degree + 1);
    let mut rng = rng(opts);
    let gamma = gamma_input(&mut rng, t, file, k1)?;
    let h = random_cycles(&mut rng, t, k1, t.top() + 1);
    let gamma_bar = (0..t.top())
        .map(|n| {
            let pushed = t.map(n + 1).apply(k1, &h[n + 1])?;
            Ok(vec_ops::sub(&vec_ops::add(&gamma[n], &h[n]), &pushed))
        })
        .collect::<Result<Vec<_>, MtError>>()?;
    let (r, bc) = phi_preimage(t, k, &gamma)?;
    let (r_bar, bc_bar) = phi_preimage(t, k, &gamma_bar)?;
    report.result("recipe", recipe_value(&r));
    report.result("recipe_bar", recipe_value(&r_bar));
    report.result("action_element", vectors_value(&h));
    let w = OrbitEqualityWitness {
        degree: k1,
        cycles: h,
    };
    let delta = phi_equalize(t, &r, &r_bar, &bc, &bc_bar, &w)?;
    report.result("homotopy", vectors_value(&delta.chains));
    let mut bounds = true;
    let mut compatible = true;
    for n in 0..=t.top() {
        let d = t.level(n).apply_boundary(k1, &delta.chains[n])?;
        bounds &= d == vec_ops::sub(&r_bar.cycles[n], &r.cycles[n]);
        if n > 0 {
            compatible &= t.map(n).apply(k1, &delta.chains[n])? == delta.chains[n - 1];
        }
    }
    report.check("boundary_equals_difference", bounds);
    report.check("homotopy_compatible", compatible);
    Ok(())
}

fn classes_preserved(t: &ChainTower, k: usize, a: &[IntVector], b: &[IntVector]) -> Result<bool, CmdError> {
    for n in 0..=t.top() {
        let h = Homology::compute(t.level(n), k);
        if !h.same_class(&a[n], &b[n])? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn lift_cmd(t: &ChainTower, file: &TowerFile, opts: &Options, report: &mut Report) -> CmdResult {
    let k = opts.degree;
    let mut rng = rng(opts);
    let cycles = match &file.recipe {
        Some(data) => {
            check_vectors(t, k, &data.cycles, t.top() + 1, "recipe.cycles")?;
            data.cycles.clone()
        }
        None => {
            let top = random::random_cycle(&mut rng, t.level(t.top()), k, ENTRY_BOUND);
            let base = LimCycleRecipe::from_top(t, k, top)?;
            base.cycles
                .iter()
                .enumerate()
                .map(|(n, z)| vec_ops::add(z, &random::random_boundary(&mut rng, t.level(n), k, ENTRY_BOUND)))
                .collect()
        }
    };
    report.result("input_cycles", vectors_value(&cycles));
    let r = lift_compatible_classes(t, k, &cycles)?;
    report.result("recipe", recipe_value(&r));
    report.check("recipe_valid", r.validate(t).is_ok());
    report.check("classes_preserved", classes_preserved(t, k, &r.cycles, &cycles)?);
    Ok(())
}

fn equiv_lift_cmd(t: &ChainTower, file: &TowerFile, opts: &Options, report: &mut Report) -> CmdResult {
    let k = opts.degree;
    let mut rng = rng(opts);
    if !t.is_fibration_tower() {
        report.note("the source is not a tower of fibrations; exact lifting may fail");
    }
    let (target, j) = fibration_replace(t)?;
    let y = match &file.recipe {
        Some(data) => {
            let (r, _) = file_recipe(t, data, k)?;
            r.validate(t)?;
            let pushed = push_recipe(&j, &r)?;
            // Perturb by the boundary of a compatible family of chains.
            let top = random::random_vector(&mut rng, target.level(target.top()).rank(k + 1), ENTRY_BOUND);
            let mut chains = vec![top];
            for n in (1..=target.top()).rev() {
                let next = target.map(n).apply(k + 1, chains.last().unwrap())?;
                chains.push(next);
            }
            chains.reverse();
            let cycles = pushed
                .cycles
                .iter()
                .zip(&chains)
                .enumerate()
                .map(|(n, (z, c))| Ok(vec_ops::add(z, &target.level(n).apply_boundary(k + 1, c)?)))
                .collect::<Result<Vec<_>, MtError>>()?;
            LimCycleRecipe { degree: k, cycles }
        }
        None => {
            let top = random::random_cycle(&mut rng, target.level(target.top()), k, ENTRY_BOUND);
            LimCycleRecipe::from_top(&target, k, top)?
        }
    };
    report.result("target_recipe", recipe_value(&y));
    let x = tower_equiv_lift(&j, &y)?;
    report.result("recipe", recipe_value(&x));
    report.check("recipe_valid", x.validate(t).is_ok());
    let pushed = push_recipe(&j, &x)?;
    report.check("classes_agree", classes_preserved(&target, k, &pushed.cycles, &y.cycles)?);
    Ok(())
}

fn replace_cmd(t: &ChainTower, report: &mut Report) -> CmdResult {
    let (r, j) = fibration_replace(t)?;
    report.result("tower", tower_value(&Tower::Chain(r.clone())));
    report.result("comparison", Value::Array(j.maps().iter().map(chain_map_value).collect()));
    report.check("fibration_tower", r.is_fibration_tower());
    report.assert(
        Assertion::new("levelwise_quasi_isomorphism", j.first_non_equivalence().is_none()).with(
            "first_failure",
            j.first_non_equivalence().map_or(Value::Null, |n| json!(n.to_string())),
        ),
    );
    Ok(())
}
