//! Finite groups given by Cayley tables, and their homomorphisms.

use std::collections::{BTreeMap, VecDeque};

use super::GtError;

/// A finite group on `0..order` with identity `0`.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct CayleyGroup {
    order: usize,
    table: Vec<usize>,
    inverse: Vec<usize>,
}

impl CayleyGroup {
    /// Validates closure, identity at index 0, associativity and inverses.
    pub fn new(table: Vec<Vec<usize>>) -> Result<Self, GtError> {
        let n = table.len();
        if n == 0 {
            return Err(GtError::Tower("empty Cayley table".into()));
        }
        let mut flat = Vec::with_capacity(n * n);
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(GtError::Tower(format!("row {i} of the Cayley table has {} entries", row.len())));
            }
            if let Some(&x) = row.iter().find(|&&x| x >= n) {
                return Err(GtError::Tower(format!("entry {x} out of range in row {i}")));
            }
            flat.extend_from_slice(row);
        }
        let m = |a: usize, b: usize| flat[a * n + b];
        for a in 0..n {
            if m(0, a) != a || m(a, 0) != a {
                return Err(GtError::Tower("index 0 is not the identity".into()));
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = m(a, b);
                for c in 0..n {
                    if m(ab, c) != m(a, m(b, c)) {
                        return Err(GtError::Tower(format!("not associative at ({a}, {b}, {c})")));
                    }
                }
            }
        }
        let mut inverse = vec![usize::MAX; n];
        for a in 0..n {
            match (0..n).find(|&b| m(a, b) == 0) {
                Some(b) if m(b, a) == 0 => inverse[a] = b,
                _ => return Err(GtError::Tower(format!("element {a} has no inverse"))),
            }
        }
        Ok(CayleyGroup {
            order: n,
            table: flat,
            inverse,
        })
    }

    pub fn trivial() -> Self {
        CayleyGroup {
            order: 1,
            table: vec![0],
            inverse: vec![0],
        }
    }

    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1);
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Self::new(table).unwrap()
    }

    /// Closure of a set of permutations of `0..degree` under composition,
    /// `(σ·τ)(i) = σ(τ(i))`. Elements are numbered in breadth-first order
    /// from the identity; the permutations are returned alongside.
    pub fn from_permutations(degree: usize, gens: &[Vec<usize>]) -> (Self, Vec<Vec<usize>>) {
        let id: Vec<usize> = (0..degree).collect();
        let mut elems = vec![id.clone()];
        let mut index: BTreeMap<Vec<usize>, usize> = BTreeMap::from([(id, 0)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for g in gens {
                let p: Vec<usize> = (0..degree).map(|k| g[elems[i][k]]).collect();
                if !index.contains_key(&p) {
                    index.insert(p.clone(), elems.len());
                    queue.push_back(elems.len());
                    elems.push(p);
                }
            }
        }
        let table = elems
            .iter()
            .map(|s| {
                elems
                    .iter()
                    .map(|t| index[&(0..degree).map(|k| s[t[k]]).collect::<Vec<_>>()])
                    .collect()
            })
            .collect();
        (Self::new(table).expect("permutation groups are groups"), elems)
    }

    /// The symmetric group on three letters, with its permutations.
    pub fn symmetric3() -> (Self, Vec<Vec<usize>>) {
        Self::from_permutations(3, &[vec![1, 0, 2], vec![1, 2, 0]])
    }

    /// Symmetries of a square (order 8), acting on its vertices `0..4`.
    pub fn dihedral4() -> (Self, Vec<Vec<usize>>) {
        Self::from_permutations(4, &[vec![1, 2, 3, 0], vec![0, 3, 2, 1]])
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn table(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.order).map(<[usize]>::to_vec).collect()
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Greedy generating set: scan elements in order, keep those outside the
    /// subgroup generated so far.
    pub fn generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut inside = vec![false; self.order];
        inside[0] = true;
        for a in 1..self.order {
            if inside[a] {
                continue;
            }
            gens.push(a);
            let mut members: Vec<usize> = (0..self.order).filter(|&x| inside[x]).collect();
            let mut i = 0;
            while i < members.len() {
                let x = members[i];
                for &g in &gens {
                    let y = self.mul(x, g);
                    if !inside[y] {
                        inside[y] = true;
                        members.push(y);
                    }
                }
                i += 1;
            }
        }
        gens
    }

    /// Subgroup on a subset closed under products, relabelled so that the
    /// `k`-th smallest member becomes `k`. Returns the group and the member list.
    pub fn subgroup_on(&self, members: &[usize]) -> Result<(Self, Vec<usize>), GtError> {
        let mut sorted = members.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.first() != Some(&0) {
            return Err(GtError::Tower("subset does not contain the identity".into()));
        }
        let pos: BTreeMap<usize, usize> = sorted.iter().enumerate().map(|(i, &a)| (a, i)).collect();
        let mut table = Vec::with_capacity(sorted.len());
        for &a in &sorted {
            let mut row = Vec::with_capacity(sorted.len());
            for &b in &sorted {
                match pos.get(&self.mul(a, b)) {
                    Some(&k) => row.push(k),
                    None => return Err(GtError::Tower("subset not closed under products".into())),
                }
            }
            table.push(row);
        }
        Ok((Self::new(table)?, sorted))
    }
}

/// A homomorphism of Cayley groups given pointwise.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct CayleyHom {
    map: Vec<usize>,
}

impl CayleyHom {
    /// Checks `f(0) = 0` and `f(ab) = f(a)f(b)` for every pair.
    pub fn new(domain: &CayleyGroup, codomain: &CayleyGroup, map: Vec<usize>) -> Result<Self, GtError> {
        if map.len() != domain.order() {
            return Err(GtError::Tower(format!(
                "index map has {} entries for a group of order {}",
                map.len(),
                domain.order()
            )));
        }
        if map.iter().any(|&x| x >= codomain.order()) {
            return Err(GtError::Tower("index map leaves the codomain".into()));
        }
        if map[0] != 0 {
            return Err(GtError::Tower("index map does not preserve the identity".into()));
        }
        for a in 0..domain.order() {
            for b in 0..domain.order() {
                if map[domain.mul(a, b)] != codomain.mul(map[a], map[b]) {
                    return Err(GtError::Tower(format!("index map does not preserve the product of {a} and {b}")));
                }
            }
        }
        Ok(CayleyHom { map })
    }

    pub fn identity(g: &CayleyGroup) -> Self {
        CayleyHom {
            map: (0..g.order()).collect(),
        }
    }

    pub fn trivial(domain: &CayleyGroup) -> Self {
        CayleyHom {
            map: vec![0; domain.order()],
        }
    }

    #[inline]
    pub fn apply(&self, a: usize) -> usize {
        self.map[a]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.map
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &CayleyHom) -> CayleyHom {
        CayleyHom {
            map: first.map.iter().map(|&a| self.map[a]).collect(),
        }
    }
}

/// Every homomorphism `domain → codomain`, by extending assignments on a
/// generating set. Exponential in the number of generators; intended for
/// groups of order at most a few dozen.
pub fn all_homomorphisms(domain: &CayleyGroup, codomain: &CayleyGroup) -> Vec<CayleyHom> {
    let gens = domain.generators();
    let mut out = Vec::new();
    let mut assign = vec![0usize; gens.len()];
    loop {
        if let Some(h) = extend(domain, codomain, &gens, &assign) {
            out.push(h);
        }
        let mut k = 0;
        loop {
            if k == gens.len() {
                return out;
            }
            assign[k] += 1;
            if assign[k] < codomain.order() {
                break;
            }
            assign[k] = 0;
            k += 1;
        }
    }
}

fn extend(domain: &CayleyGroup, codomain: &CayleyGroup, gens: &[usize], images: &[usize]) -> Option<CayleyHom> {
    let mut map = vec![usize::MAX; domain.order()];
    map[0] = 0;
    let mut queue = VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        for (&g, &gi) in gens.iter().zip(images) {
            let y = domain.mul(x, g);
            let fy = codomain.mul(map[x], gi);
            if map[y] == usize::MAX {
                map[y] = fy;
                queue.push_back(y);
            } else if map[y] != fy {
                return None;
            }
        }
    }
    CayleyHom::new(domain, codomain, map).ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_orders() {
        assert_eq!(CayleyGroup::symmetric3().0.order(), 6);
        assert_eq!(CayleyGroup::dihedral4().0.order(), 8);
        assert!(!CayleyGroup::symmetric3().0.is_abelian());
        assert!(CayleyGroup::cyclic(5).is_abelian());
    }

    #[test]
    fn rejects_non_groups() {
        assert!(CayleyGroup::new(vec![vec![0, 1], vec![1, 1]]).is_err());
        assert!(CayleyGroup::new(vec![vec![1, 0], vec![0, 1]]).is_err());
    }

    #[test]
    fn homomorphism_counts() {
        // |Hom(Z/4, Z/2)| = 2, |Hom(S3, Z/2)| = 2, |Hom(Z/2, S3)| = 4, |Hom(S3, S3)| = 10.
        let (s3, _) = CayleyGroup::symmetric3();
        assert_eq!(all_homomorphisms(&CayleyGroup::cyclic(4), &CayleyGroup::cyclic(2)).len(), 2);
        assert_eq!(all_homomorphisms(&s3, &CayleyGroup::cyclic(2)).len(), 2);
        assert_eq!(all_homomorphisms(&CayleyGroup::cyclic(2), &s3).len(), 4);
        assert_eq!(all_homomorphisms(&s3, &s3).len(), 10);
    }

    #[test]
    fn bad_index_map() {
        let z4 = CayleyGroup::cyclic(4);
        let z2 = CayleyGroup::cyclic(2);
        assert!(CayleyHom::new(&z4, &z2, vec![0, 1, 0, 1]).is_ok());
        assert!(CayleyHom::new(&z4, &z2, vec![0, 1, 1, 0]).is_err());
    }

    #[test]
    fn generators_generate() {
        let (d4, _) = CayleyGroup::dihedral4();
        let gens = d4.generators();
        assert!(gens.len() <= 3);
    }
}
