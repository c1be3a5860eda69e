use super::MtError;
use crate::chaincx::{induced_map, is_quasi_iso, path_fibration_replace, ChainComplex, ChainMap, Homology};
use crate::gtower::{AbelianTower, TailPolicy};

/// A tower of chain complexes `… → X₂ → X₁ → X₀` stored as a window plus a
/// tail policy. `maps[i]` is `q_{i+1}: X_{i+1} → X_i`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ChainTower {
    window: Vec<ChainComplex>,
    maps: Vec<ChainMap>,
    tail: TailPolicy<ChainMap>,
    fibration: Vec<bool>,
}

impl ChainTower {
    pub fn new(window: Vec<ChainComplex>, maps: Vec<ChainMap>, tail: TailPolicy<ChainMap>) -> Result<Self, MtError> {
        if window.is_empty() {
            return Err(MtError::Invalid("a tower needs at least one level".into()));
        }
        if maps.len() + 1 != window.len() {
            return Err(MtError::Invalid(format!(
                "{} levels need {} maps, got {}",
                window.len(),
                window.len() - 1,
                maps.len()
            )));
        }
        for (i, q) in maps.iter().enumerate() {
            if q.source() != &window[i + 1] || q.target() != &window[i] {
                return Err(MtError::Invalid(format!("map q_{} has the wrong source or target", i + 1)));
            }
        }
        if let TailPolicy::Periodic(e) = &tail {
            let top = window.last().unwrap();
            if e.source() != top || e.target() != top {
                return Err(MtError::Invalid("tail endomorphism must act on the top window complex".into()));
            }
        }
        let fibration = maps.iter().map(ChainMap::is_fibration).collect();
        Ok(ChainTower {
            window,
            maps,
            tail,
            fibration,
        })
    }

    /// Index `N` of the top window level.
    pub fn top(&self) -> usize {
        self.window.len() - 1
    }

    pub fn window(&self) -> &[ChainComplex] {
        &self.window
    }

    pub fn maps(&self) -> &[ChainMap] {
        &self.maps
    }

    pub fn tail(&self) -> &TailPolicy<ChainMap> {
        &self.tail
    }

    pub fn level(&self, n: usize) -> &ChainComplex {
        &self.window[n]
    }

    /// `qₙ: Xₙ → Xₙ₋₁`, `1 ≤ n ≤ N`.
    pub fn map(&self, n: usize) -> &ChainMap {
        &self.maps[n - 1]
    }

    /// Per-map fibration flags, computed on construction.
    pub fn fibration_flags(&self) -> &[bool] {
        &self.fibration
    }

    /// Every window map, and the tail endomorphism if any, is a fibration.
    pub fn is_fibration_tower(&self) -> bool {
        self.fibration.iter().all(|&f| f)
            && match &self.tail {
                TailPolicy::Periodic(e) => e.is_fibration(),
                _ => true,
            }
    }

    /// Highest top degree over the window.
    pub fn top_degree(&self) -> usize {
        self.window.iter().map(ChainComplex::top_degree).max().unwrap()
    }

    pub fn check_level(&self, n: usize) -> Result<(), MtError> {
        if n > self.top() {
            return Err(MtError::Level(format!("level {n} is above the window top {}", self.top())));
        }
        Ok(())
    }

    /// `Hₖ` of every window level.
    pub fn homologies(&self, k: usize) -> Vec<Homology> {
        self.window.iter().map(|c| Homology::compute(c, k)).collect()
    }

    /// The tower `Hₖ(Xₙ)` with induced maps and the induced tail.
    pub fn homology_tower(&self, k: usize) -> (AbelianTower, Vec<Homology>) {
        let hs = self.homologies(k);
        let maps = (1..=self.top())
            .map(|n| induced_map(self.map(n), k, &hs[n], &hs[n - 1]))
            .collect();
        let top = self.top();
        let tail = self.tail.map(|e| induced_map(e, k, &hs[top], &hs[top]));
        let groups = hs.iter().map(|h| h.group().clone()).collect();
        let tower = AbelianTower::new(groups, maps, tail).expect("induced maps form a tower");
        (tower, hs)
    }
}

/// Levelwise chain maps `fₙ: Xₙ → Yₙ` commuting with the tower maps.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TowerMap {
    source: ChainTower,
    target: ChainTower,
    maps: Vec<ChainMap>,
}

impl TowerMap {
    /// Checks `q^Y_n ∘ fₙ = fₙ₋₁ ∘ q^X_n` exactly, and that periodic tails
    /// commute with the top map.
    pub fn new(source: ChainTower, target: ChainTower, maps: Vec<ChainMap>) -> Result<Self, MtError> {
        if source.top() != target.top() || maps.len() != source.top() + 1 {
            return Err(MtError::Invalid("tower map needs one chain map per common window level".into()));
        }
        for (n, f) in maps.iter().enumerate() {
            if f.source() != source.level(n) || f.target() != target.level(n) {
                return Err(MtError::Invalid(format!("f_{n} has the wrong source or target")));
            }
        }
        for n in 1..=source.top() {
            if target.map(n).compose(&maps[n])? != maps[n - 1].compose(source.map(n))? {
                return Err(MtError::Invalid(format!("square at level {n} does not commute")));
            }
        }
        let top = source.top();
        match (source.tail(), target.tail()) {
            (TailPolicy::Trivial, TailPolicy::Trivial) | (TailPolicy::Constant, TailPolicy::Constant) => {}
            (TailPolicy::Periodic(ex), TailPolicy::Periodic(ey)) => {
                if ey.compose(&maps[top])? != maps[top].compose(ex)? {
                    return Err(MtError::Invalid("tail square does not commute".into()));
                }
            }
            _ => return Err(MtError::Invalid("towers have different tail kinds".into())),
        }
        Ok(TowerMap { source, target, maps })
    }

    pub fn identity(t: &ChainTower) -> Self {
        TowerMap {
            source: t.clone(),
            target: t.clone(),
            maps: t.window().iter().map(ChainMap::identity).collect(),
        }
    }

    pub fn source(&self) -> &ChainTower {
        &self.source
    }

    pub fn target(&self) -> &ChainTower {
        &self.target
    }

    pub fn maps(&self) -> &[ChainMap] {
        &self.maps
    }

    pub fn level(&self, n: usize) -> &ChainMap {
        &self.maps[n]
    }

    /// Index of the first level whose map is not a quasi-isomorphism.
    pub fn first_non_equivalence(&self) -> Option<usize> {
        self.maps.iter().position(|f| !is_quasi_iso(f))
    }
}

/// Replaces a tower by a levelwise quasi-isomorphic tower of fibrations.
///
/// `Y₀ = X₀`; `Yₙ` is the mapping path complex of `jₙ₋₁ ∘ qₙ: Xₙ → Yₙ₋₁`,
/// whose evaluation map becomes the new `qₙ`.
pub fn fibration_replace(t: &ChainTower) -> Result<(ChainTower, TowerMap), MtError> {
    let tail = match t.tail() {
        TailPolicy::Trivial => TailPolicy::Trivial,
        TailPolicy::Constant => TailPolicy::Constant,
        TailPolicy::Periodic(_) => {
            return Err(MtError::Unsupported("periodic tails are not preserved by fibration replacement".into()))
        }
    };
    let mut levels = vec![t.level(0).clone()];
    let mut js = vec![ChainMap::identity(t.level(0))];
    let mut maps = Vec::new();
    for n in 1..=t.top() {
        let g = js[n - 1].compose(t.map(n))?;
        let p = path_fibration_replace(&g);
        levels.push(p.complex);
        js.push(p.j);
        maps.push(p.ev1);
    }
    let replaced = ChainTower::new(levels, maps, tail)?;
    let j = TowerMap::new(t.clone(), replaced.clone(), js)?;
    Ok((replaced, j))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chaincx::is_quasi_iso;
    use crate::intlin::{FgAbGroup, IntMatrix};

    pub(crate) fn times_two_tower(levels: usize, tail: TailPolicy<ChainMap>) -> ChainTower {
        let z1 = ChainComplex::concentrated(1, 1);
        ChainTower::new(vec![z1.clone(); levels], vec![ChainMap::scalar(&z1, 2); levels - 1], tail).unwrap()
    }

    #[test]
    fn raw_times_two_is_not_a_fibration() {
        let t = times_two_tower(3, TailPolicy::Constant);
        assert_eq!(t.fibration_flags(), &[false, false]);
    }

    #[test]
    fn replacement_of_times_two() {
        let t = times_two_tower(3, TailPolicy::Constant);
        let (r, j) = fibration_replace(&t).unwrap();
        assert!(r.is_fibration_tower());
        assert!(j.maps().iter().all(is_quasi_iso));
        let (h1, _) = r.homology_tower(1);
        for n in 0..=2 {
            assert_eq!(h1.level(n), &FgAbGroup::free(1));
        }
        for n in 1..=2 {
            assert_eq!(h1.map(n).matrix(), &IntMatrix::from_i64(&[&[2]]));
        }
    }

    #[test]
    fn replacement_of_fibrations_and_single_level() {
        let c = ChainComplex::new(vec![1, 1], vec![IntMatrix::from_i64(&[&[3]])]).unwrap();
        let t = ChainTower::new(vec![c.clone(); 2], vec![ChainMap::identity(&c)], TailPolicy::Trivial).unwrap();
        let (r, j) = fibration_replace(&t).unwrap();
        assert!(r.is_fibration_tower());
        assert!(j.maps().iter().all(is_quasi_iso));
        let single = ChainTower::new(vec![c.clone()], vec![], TailPolicy::Constant).unwrap();
        let (r, j) = fibration_replace(&single).unwrap();
        assert_eq!(r.level(0), &c);
        assert!(is_quasi_iso(j.level(0)));
    }

    #[test]
    fn periodic_replacement_unsupported() {
        let z1 = ChainComplex::concentrated(1, 1);
        let t = times_two_tower(2, TailPolicy::Periodic(ChainMap::scalar(&z1, 2)));
        assert!(matches!(fibration_replace(&t), Err(MtError::Unsupported(_))));
    }

    #[test]
    fn tower_map_squares_checked() {
        let t = times_two_tower(2, TailPolicy::Constant);
        let z1 = ChainComplex::concentrated(1, 1);
        let bad = TowerMap::new(t.clone(), t.clone(), vec![ChainMap::identity(&z1), ChainMap::scalar(&z1, 3)]);
        assert!(bad.is_err());
        assert!(TowerMap::new(t.clone(), t, vec![ChainMap::scalar(&z1, 3); 2]).is_ok());
    }
}
