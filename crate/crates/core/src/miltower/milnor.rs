use super::tower::ChainTower;
use super::MtError;
use crate::chaincx::{induced_map, ChainComplex, ChainMap, Homology};
use crate::gtower::{lim1_abelian, Lim1Status, TailPolicy};
use crate::intlin::{DirectSum, FgAbGroup, GroupHom, IntMatrix, Subgroup};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub pass: bool,
}

/// The three terms of the sequence `0 → lim¹ H_{k+1} → Hₖ(lim) → lim Hₖ → 0`
/// for one degree, with the checks that were run.
#[derive(Clone, Debug)]
pub struct MilnorReport {
    pub degree: usize,
    pub lim1: Option<FgAbGroup>,
    pub homology_of_limit: FgAbGroup,
    pub limit_of_homology: FgAbGroup,
    /// The projection `Hₖ(lim) → lim Hₖ`.
    pub projection: GroupHom,
    pub checks: Vec<Check>,
}

impl MilnorReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// The limit complex of a tower with a trivial or constant tail, with its
/// projections to every window level.
pub fn window_limit(t: &ChainTower) -> Result<(ChainComplex, Vec<ChainMap>), MtError> {
    match t.tail() {
        TailPolicy::Trivial => {
            let lim = ChainComplex::zero(t.top_degree());
            let proj = t.window().iter().map(|x| ChainMap::zero(&lim, x)).collect();
            Ok((lim, proj))
        }
        TailPolicy::Constant => {
            let top = t.top();
            let lim = t.level(top).clone();
            let mut proj = vec![ChainMap::identity(&lim)];
            for n in (0..top).rev() {
                let next = t.map(n + 1).compose(proj.last().unwrap())?;
                proj.push(next);
            }
            proj.reverse();
            Ok((lim, proj))
        }
        TailPolicy::Periodic(_) => Err(MtError::Unsupported(
            "the limit complex is only materialized for trivial and constant tails".into(),
        )),
    }
}

/// Computes all three terms independently and checks that the projection
/// is an isomorphism onto the compatible tuples and that lim¹ vanishes.
pub fn milnor_window_check(t: &ChainTower, k: usize) -> Result<MilnorReport, MtError> {
    if !t.is_fibration_tower() {
        let bad: Vec<String> = t
            .fibration_flags()
            .iter()
            .enumerate()
            .filter(|(_, &f)| !f)
            .map(|(i, _)| format!("q_{}", i + 1))
            .collect();
        return Err(MtError::HypothesisViolated(format!(
            "not a tower of fibrations: {} not onto in positive degrees",
            bad.join(", ")
        )));
    }
    let (lim, proj) = window_limit(t)?;
    let h_lim = Homology::compute(&lim, k);
    let (htower, hs) = t.homology_tower(k);
    let top = t.top();

    // Compatible tuples: kernel of (gₙ) ↦ (gₙ − pₙ₊₁gₙ₊₁)ₙ<N, plus g_N itself
    // when the tail is trivial.
    let sum = DirectSum::new(htower.window());
    let mut targets: Vec<FgAbGroup> = htower.window()[..top].to_vec();
    let trivial_tail = matches!(t.tail(), TailPolicy::Trivial);
    if trivial_tail {
        targets.push(htower.level(top).clone());
    }
    let tsum = DirectSum::new(&targets);
    let mut diff = GroupHom::zero(&sum.group, &tsum.group);
    for n in 0..top {
        let here = tsum.injections[n].compose(&sum.projections[n])?;
        let down = tsum.injections[n]
            .compose(htower.map(n + 1))?
            .compose(&sum.projections[n + 1])?;
        diff = diff.add(&here)?.sub(&down)?;
    }
    if trivial_tail {
        diff = diff.add(&tsum.injections[top].compose(&sum.projections[top])?)?;
    }
    let compatible: Subgroup = diff.kernel();

    let src = h_lim.group().clone();
    let mut tuples = Vec::with_capacity(src.dim());
    for j in 0..src.dim() {
        let mut unit = src.zero();
        unit[j] = 1.into();
        let parts = (0..=top)
            .map(|n| induced_map(&proj[n], k, &h_lim, &hs[n]).apply(&unit))
            .collect::<Result<Vec<_>, _>>()?;
        tuples.push(sum.pack(&parts));
    }
    let lands_in_tuples = tuples.iter().all(|x| compatible.contains(x));
    let mut m = IntMatrix::zeros(compatible.group.dim(), src.dim());
    if lands_in_tuples {
        for (j, x) in tuples.iter().enumerate() {
            for (i, c) in compatible.coordinates(x).unwrap().into_iter().enumerate() {
                m.set(i, j, c);
            }
        }
    }
    let projection = GroupHom::new(src.clone(), compatible.group.clone(), m)?;

    let l1 = lim1_abelian(&t.homology_tower(k + 1).0);
    let lim1 = match &l1.status {
        Lim1Status::Computed(g) => Some(g.clone()),
        Lim1Status::NonMittagLeffler => None,
    };
    let lim1_trivial = lim1.as_ref().is_some_and(FgAbGroup::is_trivial);
    let injective = lands_in_tuples && projection.is_injective();
    let surjective = lands_in_tuples && projection.is_surjective();
    let checks = vec![
        Check { name: "lim1_trivial", pass: lim1_trivial },
        Check { name: "projection_compatible", pass: lands_in_tuples },
        Check { name: "projection_injective", pass: injective },
        Check { name: "projection_surjective", pass: surjective },
        Check { name: "sequence_exact", pass: lim1_trivial && injective && surjective },
    ];
    Ok(MilnorReport {
        degree: k,
        lim1,
        homology_of_limit: src,
        limit_of_homology: compatible.group.clone(),
        projection,
        checks,
    })
}
