use super::format::{Tower, TowerFile};
use crate::random::{self, Shape, TailKind};

pub const MAX_WINDOW: usize = 6;
pub const MAX_RANK: usize = 5;
pub const MAX_ENTRY: i64 = 4;
pub const MAX_TOP_DEGREE: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GenKind {
    Chain,
    Abelian,
    FiniteAbelian,
    Finite,
}

impl GenKind {
    pub fn parse(s: &str) -> Option<GenKind> {
        match s {
            "chain" => Some(GenKind::Chain),
            "abelian" => Some(GenKind::Abelian),
            "finite-abelian" => Some(GenKind::FiniteAbelian),
            "finite" => Some(GenKind::Finite),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GenParams {
    pub kind: GenKind,
    pub seed: u64,
    pub shape: Shape,
    pub tail: TailKind,
}

impl Default for GenParams {
    fn default() -> Self {
        GenParams {
            kind: GenKind::Chain,
            seed: 0,
            shape: Shape::default(),
            tail: TailKind::Constant,
        }
    }
}

pub fn check_params(p: &GenParams) -> Result<(), String> {
    let s = &p.shape;
    if s.window > MAX_WINDOW {
        return Err(format!("window {} exceeds {MAX_WINDOW}", s.window));
    }
    if s.max_rank > MAX_RANK {
        return Err(format!("max rank {} exceeds {MAX_RANK}", s.max_rank));
    }
    if !(0..=MAX_ENTRY).contains(&s.max_entry) {
        return Err(format!("max entry {} is outside 0..={MAX_ENTRY}", s.max_entry));
    }
    if s.top_degree > MAX_TOP_DEGREE {
        return Err(format!("top degree {} exceeds {MAX_TOP_DEGREE}", s.top_degree));
    }
    Ok(())
}

/// A pseudo-random tower; equal parameters give equal towers.
pub fn generate(p: &GenParams) -> Result<TowerFile, String> {
    check_params(p)?;
    let mut rng = random::rng(p.seed);
    let levels = p.shape.window + 1;
    let tower = match p.kind {
        GenKind::Chain => Tower::Chain(random::random_chain_tower(&mut rng, &p.shape, p.tail)),
        GenKind::Abelian => Tower::Abelian(random::random_abelian_tower(&mut rng, &p.shape, p.tail)),
        GenKind::FiniteAbelian => Tower::Abelian(random::random_finite_abelian_tower(&mut rng, levels, 16, p.tail)),
        GenKind::Finite => Tower::Finite(random::random_cayley_tower(&mut rng, &random::cayley_catalog(), levels, p.tail)),
    };
    Ok(TowerFile::new(tower))
}
