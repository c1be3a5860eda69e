//! The JSON tower file.
//!
//! ```json
//! {
//!   "kind": "chain_tower",
//!   "window": [{"ranks": ["0", "1"], "boundaries": [[]]}, ...],
//!   "maps": [[[], [["2"]]], ...],
//!   "tail": {"kind": "constant"}
//! }
//! ```
//!
//! Every integer is a decimal string. Matrices are lists of rows; their
//! shapes come from the surrounding levels, so a matrix with no rows is `[]`.
//! Abelian levels are `{"free_rank", "torsion"}` with torsion given as
//! invariant factors, finite levels are `{"table"}`, and finite maps are
//! index lists. Chain towers may carry `"recipe": {"cycles", "bounding"?}`
//! and `"gamma"` (lists of vectors, one per level).

use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{Map, Value};

use crate::chaincx::{ChainComplex, ChainMap};
use crate::gtower::{AbelianTower, CayleyGroup, CayleyHom, FiniteGroupTower, TailPolicy};
use crate::intlin::{FgAbGroup, GroupHom, IntMatrix, IntVector};
use crate::miltower::ChainTower;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FormatError {
    Syntax { line: usize, column: usize, message: String },
    Semantic { path: String, message: String },
}

impl fmt::Display for FormatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FormatError::Syntax { line, column, message } => write!(f, "line {line}, column {column}: {message}"),
            FormatError::Semantic { path, message } => write!(f, "at {path}: {message}"),
        }
    }
}

impl std::error::Error for FormatError {}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tower {
    Abelian(AbelianTower),
    Finite(FiniteGroupTower),
    Chain(ChainTower),
}

impl Tower {
    pub fn kind(&self) -> &'static str {
        match self {
            Tower::Abelian(_) => "abelian_tower",
            Tower::Finite(_) => "finite_tower",
            Tower::Chain(_) => "chain_tower",
        }
    }
}

/// Recipe data as written in a file; checked against the tower by the commands.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecipeData {
    pub cycles: Vec<IntVector>,
    pub bounding: Option<Vec<IntVector>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TowerFile {
    pub tower: Tower,
    pub recipe: Option<RecipeData>,
    pub gamma: Option<Vec<IntVector>>,
}

impl TowerFile {
    pub fn new(tower: Tower) -> Self {
        TowerFile {
            tower,
            recipe: None,
            gamma: None,
        }
    }
}

// ---------- reading ----------

struct Node<'a> {
    value: &'a Value,
    path: String,
}

impl<'a> Node<'a> {
    fn err<T>(&self, message: impl Into<String>) -> Result<T, FormatError> {
        Err(FormatError::Semantic {
            path: self.path.clone(),
            message: message.into(),
        })
    }

    fn object(&self, allowed: &[&str]) -> Result<&'a Map<String, Value>, FormatError> {
        let Some(map) = self.value.as_object() else {
            return self.err("expected an object");
        };
        if let Some(k) = map.keys().find(|k| !allowed.contains(&k.as_str())) {
            return self.err(format!("unknown key \"{k}\""));
        }
        Ok(map)
    }

    fn field(&self, key: &str) -> Result<Node<'a>, FormatError> {
        self.opt_field(key)?
            .map_or_else(|| self.err(format!("missing key \"{key}\"")), Ok)
    }

    fn opt_field(&self, key: &str) -> Result<Option<Node<'a>>, FormatError> {
        let Some(map) = self.value.as_object() else {
            return self.err("expected an object");
        };
        Ok(map.get(key).map(|value| Node {
            value,
            path: format!("{}.{key}", self.path),
        }))
    }

    fn items(&self) -> Result<Vec<Node<'a>>, FormatError> {
        let Some(list) = self.value.as_array() else {
            return self.err("expected a list");
        };
        Ok(list
            .iter()
            .enumerate()
            .map(|(i, value)| Node {
                value,
                path: format!("{}[{i}]", self.path),
            })
            .collect())
    }

    fn text(&self) -> Result<&'a str, FormatError> {
        self.value.as_str().map_or_else(|| self.err("expected a string"), Ok)
    }

    fn int(&self) -> Result<BigInt, FormatError> {
        let s = match self.value {
            Value::String(s) => s,
            Value::Number(_) => return self.err("integers must be written as decimal strings"),
            _ => return self.err("expected a decimal string"),
        };
        let digits = s.strip_prefix('-').unwrap_or(s);
        let canonical = !digits.is_empty()
            && digits.bytes().all(|b| b.is_ascii_digit())
            && (digits == "0" || !digits.starts_with('0'))
            && s != "-0";
        if !canonical {
            return self.err(format!("\"{s}\" is not a decimal integer"));
        }
        Ok(s.parse().expect("checked decimal"))
    }

    fn count(&self) -> Result<usize, FormatError> {
        let n = self.int()?;
        n.to_usize().map_or_else(|| self.err(format!("{n} is not a valid count")), Ok)
    }

    fn vector(&self) -> Result<IntVector, FormatError> {
        self.items()?.iter().map(Node::int).collect()
    }

    fn vector_of_len(&self, len: usize) -> Result<IntVector, FormatError> {
        let v = self.vector()?;
        if v.len() != len {
            return self.err(format!("expected {len} entries, found {}", v.len()));
        }
        Ok(v)
    }

    fn matrix(&self, rows: usize, cols: usize) -> Result<IntMatrix, FormatError> {
        let items = self.items()?;
        if items.len() != rows {
            return self.err(format!("expected a {rows}x{cols} matrix, found {} rows", items.len()));
        }
        let mut data = Vec::with_capacity(rows * cols);
        for row in &items {
            data.extend(row.vector_of_len(cols)?);
        }
        Ok(IntMatrix::new(rows, cols, data).expect("shape checked"))
    }

    fn index_map(&self, len: usize, codomain: usize) -> Result<Vec<usize>, FormatError> {
        let items = self.items()?;
        if items.len() != len {
            return self.err(format!("expected {len} entries, found {}", items.len()));
        }
        items
            .iter()
            .map(|i| {
                let x = i.count()?;
                if x >= codomain {
                    return i.err(format!("index {x} is outside a group of order {codomain}"));
                }
                Ok(x)
            })
            .collect()
    }
}

fn tail_spec<'a>(node: &Node<'a>) -> Result<(&'a str, Option<Node<'a>>), FormatError> {
    node.object(&["kind", "endo"])?;
    let kind = node.field("kind")?;
    let k = kind.text()?;
    let endo = node.opt_field("endo")?;
    match (k, &endo) {
        ("trivial" | "constant", None) | ("periodic", Some(_)) => Ok((k, endo)),
        ("trivial" | "constant", Some(e)) => e.err(format!("a {k} tail takes no endomorphism")),
        ("periodic", None) => node.err("a periodic tail needs \"endo\""),
        _ => kind.err(format!("unknown tail kind \"{k}\"")),
    }
}

fn build_tail<E>(kind: &str, endo: Option<E>) -> TailPolicy<E> {
    match (kind, endo) {
        ("trivial", _) => TailPolicy::Trivial,
        ("constant", _) => TailPolicy::Constant,
        (_, Some(e)) => TailPolicy::Periodic(e),
        _ => unreachable!("checked by tail_spec"),
    }
}

fn top_level_keys(kind: &str) -> &'static [&'static str] {
    match kind {
        "chain_tower" => &["kind", "window", "maps", "tail", "recipe", "gamma"],
        _ => &["kind", "window", "maps", "tail"],
    }
}

fn map_nodes<'a>(root: &Node<'a>, levels: usize) -> Result<Vec<Node<'a>>, FormatError> {
    let maps = root.field("maps")?;
    let items = maps.items()?;
    if items.len() + 1 != levels {
        return maps.err(format!("{levels} levels need {} maps, found {}", levels.saturating_sub(1), items.len()));
    }
    Ok(items)
}

fn read_abelian(root: &Node) -> Result<Tower, FormatError> {
    let levels = root.field("window")?.items()?;
    let mut window = Vec::with_capacity(levels.len());
    for node in &levels {
        node.object(&["free_rank", "torsion"])?;
        let free = node.field("free_rank")?.count()?;
        let torsion = node.field("torsion")?.vector()?;
        match FgAbGroup::new(free, torsion) {
            Ok(g) => window.push(g),
            Err(e) => return node.err(e.to_string()),
        }
    }
    if window.is_empty() {
        return root.field("window")?.err("a tower needs at least one level");
    }
    let hom = |node: &Node, dom: &FgAbGroup, cod: &FgAbGroup| -> Result<GroupHom, FormatError> {
        let m = node.matrix(cod.dim(), dom.dim())?;
        GroupHom::new(dom.clone(), cod.clone(), m).or_else(|e| node.err(e.to_string()))
    };
    let mut maps = Vec::new();
    for (i, node) in map_nodes(root, window.len())?.iter().enumerate() {
        maps.push(hom(node, &window[i + 1], &window[i])?);
    }
    let tail_node = root.field("tail")?;
    let (kind, endo) = tail_spec(&tail_node)?;
    let top = window.last().unwrap();
    let endo = endo.map(|e| hom(&e, top, top)).transpose()?;
    let tower = AbelianTower::new(window, maps, build_tail(kind, endo)).or_else(|e| root.err(e.to_string()))?;
    Ok(Tower::Abelian(tower))
}

fn read_finite(root: &Node) -> Result<Tower, FormatError> {
    let levels = root.field("window")?.items()?;
    let mut window = Vec::with_capacity(levels.len());
    for node in &levels {
        node.object(&["table"])?;
        let table_node = node.field("table")?;
        let rows = table_node.items()?;
        let n = rows.len();
        let table = rows.iter().map(|r| r.index_map(n, n)).collect::<Result<Vec<_>, _>>()?;
        match CayleyGroup::new(table) {
            Ok(g) => window.push(g),
            Err(e) => return table_node.err(e.to_string()),
        }
    }
    if window.is_empty() {
        return root.field("window")?.err("a tower needs at least one level");
    }
    let hom = |node: &Node, dom: &CayleyGroup, cod: &CayleyGroup| -> Result<CayleyHom, FormatError> {
        let map = node.index_map(dom.order(), cod.order())?;
        CayleyHom::new(dom, cod, map).or_else(|e| node.err(e.to_string()))
    };
    let mut maps = Vec::new();
    for (i, node) in map_nodes(root, window.len())?.iter().enumerate() {
        maps.push(hom(node, &window[i + 1], &window[i])?);
    }
    let tail_node = root.field("tail")?;
    let (kind, endo) = tail_spec(&tail_node)?;
    let top = window.last().unwrap();
    let endo = endo.map(|e| hom(&e, top, top)).transpose()?;
    let tower = FiniteGroupTower::new(window, maps, build_tail(kind, endo)).or_else(|e| root.err(e.to_string()))?;
    Ok(Tower::Finite(tower))
}

fn read_complex(node: &Node) -> Result<ChainComplex, FormatError> {
    node.object(&["ranks", "boundaries"])?;
    let ranks_node = node.field("ranks")?;
    let ranks = ranks_node.items()?.iter().map(Node::count).collect::<Result<Vec<_>, _>>()?;
    if ranks.is_empty() {
        return ranks_node.err("a complex needs at least degree 0");
    }
    let bnode = node.field("boundaries")?;
    let items = bnode.items()?;
    if items.len() + 1 != ranks.len() {
        return bnode.err(format!("expected {} boundary matrices, found {}", ranks.len() - 1, items.len()));
    }
    let boundaries = items
        .iter()
        .enumerate()
        .map(|(i, b)| b.matrix(ranks[i], ranks[i + 1]))
        .collect::<Result<Vec<_>, _>>()?;
    ChainComplex::new(ranks, boundaries).or_else(|e| node.err(e.to_string()))
}

fn read_chain_map(node: &Node, src: &ChainComplex, tgt: &ChainComplex) -> Result<ChainMap, FormatError> {
    let items = node.items()?;
    let top = src.top_degree().max(tgt.top_degree());
    if items.len() > top + 1 {
        return node.err(format!("expected at most {} matrices, found {}", top + 1, items.len()));
    }
    let maps = items
        .iter()
        .enumerate()
        .map(|(k, m)| m.matrix(tgt.rank(k), src.rank(k)))
        .collect::<Result<Vec<_>, _>>()?;
    ChainMap::new(src.clone(), tgt.clone(), maps).or_else(|e| node.err(e.to_string()))
}

fn read_vectors(node: &Node) -> Result<Vec<IntVector>, FormatError> {
    node.items()?.iter().map(Node::vector).collect()
}

fn read_chain(root: &Node) -> Result<Tower, FormatError> {
    let levels = root.field("window")?.items()?;
    let window = levels.iter().map(read_complex).collect::<Result<Vec<_>, _>>()?;
    if window.is_empty() {
        return root.field("window")?.err("a tower needs at least one level");
    }
    let mut maps = Vec::new();
    for (i, node) in map_nodes(root, window.len())?.iter().enumerate() {
        maps.push(read_chain_map(node, &window[i + 1], &window[i])?);
    }
    let tail_node = root.field("tail")?;
    let (kind, endo) = tail_spec(&tail_node)?;
    let top = window.last().unwrap();
    let endo = endo.map(|e| read_chain_map(&e, top, top)).transpose()?;
    let tower = ChainTower::new(window, maps, build_tail(kind, endo)).or_else(|e| root.err(e.to_string()))?;
    Ok(Tower::Chain(tower))
}

/// Parses a tower file. Syntax errors carry a line and column, semantic
/// errors a path such as `window[2].torsion[0]`.
pub fn parse(text: &str) -> Result<TowerFile, FormatError> {
    let value: Value = serde_json::from_str(text).map_err(|e| {
        let full = e.to_string();
        let suffix = format!(" at line {} column {}", e.line(), e.column());
        FormatError::Syntax {
            line: e.line(),
            column: e.column(),
            message: full.strip_suffix(&suffix).unwrap_or(&full).to_string(),
        }
    })?;
    let root = Node {
        value: &value,
        path: "$".into(),
    };
    let kind_node = root.field("kind")?;
    let kind = kind_node.text()?;
    root.object(top_level_keys(kind))?;
    let tower = match kind {
        "abelian_tower" => read_abelian(&root)?,
        "finite_tower" => read_finite(&root)?,
        "chain_tower" => read_chain(&root)?,
        other => return kind_node.err(format!("unknown tower kind \"{other}\"")),
    };
    let recipe = match root.opt_field("recipe")? {
        None => None,
        Some(node) => {
            node.object(&["cycles", "bounding"])?;
            Some(RecipeData {
                cycles: read_vectors(&node.field("cycles")?)?,
                bounding: node.opt_field("bounding")?.map(|b| read_vectors(&b)).transpose()?,
            })
        }
    };
    let gamma = root.opt_field("gamma")?.map(|g| read_vectors(&g)).transpose()?;
    Ok(TowerFile { tower, recipe, gamma })
}

// ---------- writing ----------

pub fn int_value(x: &BigInt) -> Value {
    Value::String(x.to_string())
}

pub fn count_value(x: usize) -> Value {
    Value::String(x.to_string())
}

pub fn vector_value(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(int_value).collect())
}

pub fn vectors_value(vs: &[IntVector]) -> Value {
    Value::Array(vs.iter().map(|v| vector_value(v)).collect())
}

pub fn matrix_value(m: &IntMatrix) -> Value {
    Value::Array((0..m.rows()).map(|i| vector_value(m.row(i))).collect())
}

pub fn group_value(g: &FgAbGroup) -> Value {
    let mut map = Map::new();
    map.insert("free_rank".into(), count_value(g.free_rank()));
    map.insert("torsion".into(), vector_value(g.torsion()));
    Value::Object(map)
}

fn index_value(xs: &[usize]) -> Value {
    Value::Array(xs.iter().map(|&x| count_value(x)).collect())
}

pub fn complex_value(c: &ChainComplex) -> Value {
    let mut map = Map::new();
    map.insert("ranks".into(), Value::Array(c.ranks().iter().map(|&r| count_value(r)).collect()));
    map.insert("boundaries".into(), Value::Array(c.boundaries().iter().map(matrix_value).collect()));
    Value::Object(map)
}

pub fn chain_map_value(f: &ChainMap) -> Value {
    Value::Array(f.matrices().iter().map(matrix_value).collect())
}

fn tail_value<E>(tail: &TailPolicy<E>, endo: impl Fn(&E) -> Value) -> Value {
    let mut map = Map::new();
    let kind = match tail {
        TailPolicy::Trivial => "trivial",
        TailPolicy::Constant => "constant",
        TailPolicy::Periodic(e) => {
            map.insert("endo".into(), endo(e));
            "periodic"
        }
    };
    map.insert("kind".into(), Value::String(kind.into()));
    Value::Object(map)
}

pub fn tower_value(t: &Tower) -> Value {
    let (window, maps, tail) = match t {
        Tower::Abelian(t) => (
            t.window().iter().map(group_value).collect(),
            t.maps().iter().map(|p| matrix_value(p.matrix())).collect(),
            tail_value(t.tail(), |e| matrix_value(e.matrix())),
        ),
        Tower::Finite(t) => (
            t.window()
                .iter()
                .map(|g| {
                    let rows = g.table().iter().map(|r| index_value(r)).collect();
                    let mut map = Map::new();
                    map.insert("table".into(), Value::Array(rows));
                    Value::Object(map)
                })
                .collect(),
            t.maps().iter().map(|p| index_value(p.as_slice())).collect(),
            tail_value(t.tail(), |e| index_value(e.as_slice())),
        ),
        Tower::Chain(t) => (
            t.window().iter().map(complex_value).collect(),
            t.maps().iter().map(chain_map_value).collect(),
            tail_value(t.tail(), chain_map_value),
        ),
    };
    let mut map = Map::new();
    map.insert("kind".into(), Value::String(t.kind().into()));
    map.insert("window".into(), Value::Array(window));
    map.insert("maps".into(), Value::Array(maps));
    map.insert("tail".into(), tail);
    Value::Object(map)
}

pub fn file_value(f: &TowerFile) -> Value {
    let mut value = tower_value(&f.tower);
    let map = value.as_object_mut().expect("tower value is an object");
    if let Some(r) = &f.recipe {
        let mut rm = Map::new();
        rm.insert("cycles".into(), vectors_value(&r.cycles));
        if let Some(b) = &r.bounding {
            rm.insert("bounding".into(), vectors_value(b));
        }
        map.insert("recipe".into(), Value::Object(rm));
    }
    if let Some(g) = &f.gamma {
        map.insert("gamma".into(), vectors_value(g));
    }
    value
}

/// Pretty JSON with sorted keys and a trailing newline.
pub fn to_text(f: &TowerFile) -> String {
    pretty(&file_value(f))
}

pub fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{self, Shape, TailKind};

    fn times_two_text() -> &'static str {
        r#"{
  "kind": "chain_tower",
  "window": [
    {"ranks": ["0", "1"], "boundaries": [[]]},
    {"ranks": ["0", "1"], "boundaries": [[]]}
  ],
  "maps": [[[], [["2"]]]],
  "tail": {"kind": "constant"}
}"#
    }

    #[test]
    fn reads_chain_tower() {
        let f = parse(times_two_text()).unwrap();
        let Tower::Chain(t) = &f.tower else { panic!("chain tower expected") };
        assert_eq!(t.top(), 1);
        assert_eq!(t.fibration_flags(), &[false]);
        assert_eq!(parse(&to_text(&f)).unwrap(), f);
    }

    #[test]
    fn syntax_errors_have_positions() {
        let err = parse("{\n  \"kind\": \"chain_tower\",\n  \"window\": [,]\n}").unwrap_err();
        assert!(matches!(err, FormatError::Syntax { line: 3, .. }), "{err}");
    }

    #[test]
    fn semantic_errors_have_paths() {
        let bad = times_two_text().replace("[[\"2\"]]", "[[2]]");
        let err = parse(&bad).unwrap_err();
        assert_eq!(
            err,
            FormatError::Semantic {
                path: "$.maps[0][1][0][0]".into(),
                message: "integers must be written as decimal strings".into()
            }
        );
        let bad = times_two_text().replace("\"constant\"", "\"sometimes\"");
        assert!(parse(&bad).unwrap_err().to_string().contains("$.tail.kind"));
        let bad = times_two_text().replace("[[\"2\"]]", "[[\"02\"]]");
        assert!(parse(&bad).is_err());
        let bad = times_two_text().replace("\"tail\"", "\"extra\": [], \"tail\"");
        assert!(parse(&bad).unwrap_err().to_string().contains("unknown key"));
    }

    #[test]
    fn non_chain_maps_rejected() {
        let bad = times_two_text().replace(
            "{\"ranks\": [\"0\", \"1\"], \"boundaries\": [[]]},\n    {",
            "{\"ranks\": [\"1\", \"1\"], \"boundaries\": [[[\"1\"]]]},\n    {",
        );
        let err = parse(&bad).unwrap_err();
        assert!(err.to_string().contains("$.maps[0]"), "{err}");
    }

    #[test]
    fn generated_towers_round_trip() {
        let mut rng = random::rng(3);
        for _ in 0..20 {
            for tail in [TailKind::Trivial, TailKind::Constant, TailKind::Periodic] {
                let towers = [
                    Tower::Chain(random::random_chain_tower(&mut rng, &Shape::default(), tail)),
                    Tower::Abelian(random::random_abelian_tower(&mut rng, &Shape::default(), tail)),
                    Tower::Finite(random::random_cayley_tower(&mut rng, &random::cayley_catalog(), 3, tail)),
                ];
                for t in towers {
                    let f = TowerFile::new(t);
                    assert_eq!(parse(&to_text(&f)).unwrap(), f);
                }
            }
        }
    }
}
