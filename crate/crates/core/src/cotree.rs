//! Cograph recognition, cotrees, the join/union hierarchy `K_n`, and the
//! smoothability classification of right-angled Artin groups.
//!
//! `K_0` is a single vertex. For odd `n`, `K_n` adds finite joins of members
//! of `K_{n-1}`; for even `n >= 2`, finite disjoint unions. A cograph's
//! level is the least `n` with `Γ ∈ K_n`.

use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::graph::SimplicialGraph;
use crate::raag::RaagWord;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CotreeError {
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("A(Γ) admits a faithful C^(1+bv) action; no (F2 x Z) * Z witness exists")]
    NotApplicable,
    #[error("malformed cotree: {0}")]
    Malformed(String),
}

/// Canonical join/union decomposition tree. Internal nodes have at least two
/// children and alternate kinds along every root-to-leaf path. `decompose`
/// orders children by their least vertex position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Cotree {
    Leaf(String),
    Join(Vec<Cotree>),
    Union(Vec<Cotree>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Decomposition {
    Cograph(Cotree),
    /// A full `P4`, `a - b - c - d`.
    NotCograph([String; 4]),
}

pub fn decompose(g: &SimplicialGraph) -> Result<Decomposition, CotreeError> {
    if g.is_empty() {
        return Err(CotreeError::EmptyGraph);
    }
    let all: Vec<usize> = (0..g.vertex_count()).collect();
    Ok(match split(g, &all) {
        Some(t) => Decomposition::Cograph(t),
        None => Decomposition::NotCograph(
            g.find_full_p4()
                .expect("a graph that is connected and co-connected on >= 2 vertices contains P4"),
        ),
    })
}

fn split(g: &SimplicialGraph, positions: &[usize]) -> Option<Cotree> {
    if positions.len() == 1 {
        return Some(Cotree::Leaf(g.vertices()[positions[0]].clone()));
    }
    let sub = g.induced_by_positions(positions);
    let lift =
        |part: Vec<usize>| -> Vec<usize> { part.into_iter().map(|k| positions[k]).collect() };

    let comps = sub.components();
    if comps.len() > 1 {
        let children = comps
            .into_iter()
            .map(|c| split(g, &lift(c)))
            .collect::<Option<Vec<_>>>()?;
        return Some(Cotree::Union(children));
    }
    let cocomps = sub.complement().components();
    if cocomps.len() > 1 {
        let children = cocomps
            .into_iter()
            .map(|c| split(g, &lift(c)))
            .collect::<Option<Vec<_>>>()?;
        return Some(Cotree::Join(children));
    }
    None
}

impl Cotree {
    /// The graph this tree describes.
    pub fn reconstruct(&self) -> SimplicialGraph {
        match self {
            Cotree::Leaf(v) => {
                SimplicialGraph::new([v.as_str()], Vec::<(&str, &str)>::new()).expect("one vertex")
            }
            Cotree::Join(ch) | Cotree::Union(ch) => {
                let join = matches!(self, Cotree::Join(_));
                let mut parts = ch.iter().map(Cotree::reconstruct);
                let first = parts.next().unwrap_or_default();
                parts.fold(first, |acc, g| {
                    if join {
                        SimplicialGraph::join(&acc, &g)
                    } else {
                        SimplicialGraph::disjoint_union(&acc, &g)
                    }
                })
            }
        }
    }

    /// Least `n` with the described graph in `K_n`.
    pub fn hierarchy_level(&self) -> u32 {
        match self {
            Cotree::Leaf(_) => 0,
            Cotree::Join(ch) => {
                let m = ch.iter().map(Cotree::hierarchy_level).max().unwrap_or(0);
                least_with_parity(m + 1, 1)
            }
            Cotree::Union(ch) => {
                let m = ch.iter().map(Cotree::hierarchy_level).max().unwrap_or(0);
                least_with_parity(m + 1, 0)
            }
        }
    }

    pub fn leaves(&self) -> Vec<&str> {
        match self {
            Cotree::Leaf(v) => vec![v.as_str()],
            Cotree::Join(ch) | Cotree::Union(ch) => ch.iter().flat_map(Cotree::leaves).collect(),
        }
    }

    /// Checks arity and alternation.
    pub fn validate(&self) -> Result<(), CotreeError> {
        match self {
            Cotree::Leaf(_) => Ok(()),
            Cotree::Join(ch) | Cotree::Union(ch) => {
                if ch.len() < 2 {
                    return Err(CotreeError::Malformed(
                        "internal node with < 2 children".into(),
                    ));
                }
                let join = matches!(self, Cotree::Join(_));
                for c in ch {
                    let same = matches!(
                        (join, c),
                        (true, Cotree::Join(_)) | (false, Cotree::Union(_))
                    );
                    if same {
                        return Err(CotreeError::Malformed(
                            "child repeats its parent's kind".into(),
                        ));
                    }
                    c.validate()?;
                }
                Ok(())
            }
        }
    }

    /// Nested-array form: a leaf is its vertex name, an internal node is
    /// `["join", ...]` or `["union", ...]`.
    pub fn to_json(&self) -> Value {
        match self {
            Cotree::Leaf(v) => Value::String(v.clone()),
            Cotree::Join(ch) | Cotree::Union(ch) => {
                let tag = if matches!(self, Cotree::Join(_)) {
                    "join"
                } else {
                    "union"
                };
                let mut arr = vec![Value::String(tag.into())];
                arr.extend(ch.iter().map(Cotree::to_json));
                Value::Array(arr)
            }
        }
    }

    pub fn from_json(v: &Value) -> Result<Self, CotreeError> {
        match v {
            Value::String(s) => Ok(Cotree::Leaf(s.clone())),
            Value::Array(arr) => {
                let tag = arr.first().and_then(Value::as_str);
                let children = arr[1.min(arr.len())..]
                    .iter()
                    .map(Cotree::from_json)
                    .collect::<Result<Vec<_>, _>>()?;
                let t = match tag {
                    Some("join") => Cotree::Join(children),
                    Some("union") => Cotree::Union(children),
                    _ => {
                        return Err(CotreeError::Malformed(
                            "expected \"join\" or \"union\" tag".into(),
                        ))
                    }
                };
                t.validate()?;
                Ok(t)
            }
            _ => Err(CotreeError::Malformed("expected string or array".into())),
        }
    }
}

fn least_with_parity(lower: u32, parity: u32) -> u32 {
    if lower % 2 == parity {
        lower
    } else {
        lower + 1
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HierarchyLevel {
    NotCograph([String; 4]),
    Level(u32),
}

impl HierarchyLevel {
    pub fn level(&self) -> Option<u32> {
        match self {
            HierarchyLevel::Level(n) => Some(*n),
            HierarchyLevel::NotCograph(_) => None,
        }
    }
}

/// Number of semi-conjugacy classes of faithful circle actions, by category.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CircleClass {
    /// Uncountably many classes of faithful projective actions.
    UncountableProjective,
    /// Every faithful C^(1+bv) action has a periodic point and no dense
    /// orbit; at most countably many classes.
    CountableWithFiniteOrbit,
    NoFaithfulC1bv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SmoothabilityVerdict {
    pub c1: bool,
    pub c1bv: bool,
    pub c_infinity: bool,
    pub c_omega: bool,
    pub circle_class: CircleClass,
}

impl SmoothabilityVerdict {
    /// `None` stands for a non-cograph.
    pub fn from_level(level: Option<u32>) -> Self {
        let smooth = matches!(level, Some(n) if n <= 3);
        let analytic = matches!(level, Some(n) if n <= 2);
        let circle_class = match level {
            Some(n) if n <= 2 => CircleClass::UncountableProjective,
            Some(3) => CircleClass::CountableWithFiniteOrbit,
            _ => CircleClass::NoFaithfulC1bv,
        };
        SmoothabilityVerdict {
            c1: true,
            c1bv: smooth,
            c_infinity: smooth,
            c_omega: analytic,
            circle_class,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub level: HierarchyLevel,
    pub cotree: Option<Cotree>,
    pub verdict: SmoothabilityVerdict,
}

pub fn classify(g: &SimplicialGraph) -> Result<Classification, CotreeError> {
    Ok(match decompose(g)? {
        Decomposition::Cograph(t) => {
            let n = t.hierarchy_level();
            Classification {
                level: HierarchyLevel::Level(n),
                cotree: Some(t),
                verdict: SmoothabilityVerdict::from_level(Some(n)),
            }
        }
        Decomposition::NotCograph(p4) => Classification {
            level: HierarchyLevel::NotCograph(p4),
            cotree: None,
            verdict: SmoothabilityVerdict::from_level(None),
        },
    })
}

/// A copy of `(F2 x Z) * Z` inside `A(Γ)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EmbeddingWitness {
    /// Full path `a - b - c - d`; the subgroup `<a, b, c, d a d^-1>`.
    P4Words {
        path: [String; 4],
        generators: [RaagWord; 4],
    },
    /// Full `P3 ⊔ pt`: path `x - y - z` and a vertex `w` adjacent to none of
    /// them. The four vertices generate the subgroup directly.
    P3PlusPoint { path: [String; 3], point: String },
}

impl EmbeddingWitness {
    /// Generators in the order `(x, y, z, w)` where `<x, z>` is free, `y`
    /// commutes with both and `w` generates the free `Z` factor.
    pub fn generators(&self) -> [RaagWord; 4] {
        match self {
            EmbeddingWitness::P4Words { generators, .. } => generators.clone(),
            EmbeddingWitness::P3PlusPoint { path, point } => [
                RaagWord::generator(&path[0]),
                RaagWord::generator(&path[1]),
                RaagWord::generator(&path[2]),
                RaagWord::generator(point),
            ],
        }
    }

    pub fn to_json(&self) -> Value {
        let gens: Vec<String> = self.generators().iter().map(ToString::to_string).collect();
        match self {
            EmbeddingWitness::P4Words { path, .. } => json!({
                "kind": "p4_words",
                "subgroup": "(F2 x Z) * Z",
                "path": path,
                "generators": gens,
            }),
            EmbeddingWitness::P3PlusPoint { path, point } => json!({
                "kind": "p3_plus_point",
                "subgroup": "(F2 x Z) * Z",
                "path": path,
                "point": point,
                "generators": gens,
            }),
        }
    }
}

pub fn witness(g: &SimplicialGraph) -> Result<EmbeddingWitness, CotreeError> {
    let c = classify(g)?;
    if c.verdict.c1bv {
        return Err(CotreeError::NotApplicable);
    }
    if let Some([a, b, cc, d]) = g.find_full_p4() {
        let generators = [
            RaagWord::generator(&a),
            RaagWord::generator(&b),
            RaagWord::generator(&cc),
            RaagWord::generator(&a).conjugate_by(&d),
        ];
        return Ok(EmbeddingWitness::P4Words {
            path: [a, b, cc, d],
            generators,
        });
    }
    let [x, y, z, w] = find_full_p3_plus_point(g)
        .expect("a cograph above level 3 contains a full P3 plus an isolated point");
    let name = |i: usize| g.vertices()[i].clone();
    Ok(EmbeddingWitness::P3PlusPoint {
        path: [name(x), name(y), name(z)],
        point: name(w),
    })
}

/// Lexicographically least `(x, y, z, w)` with `x - y - z` a full path and
/// `w` adjacent to none of them.
pub fn find_full_p3_plus_point(g: &SimplicialGraph) -> Option<[usize; 4]> {
    let n = g.vertex_count();
    for x in 0..n {
        for y in g.neighbors(x).collect::<Vec<_>>() {
            for z in 0..n {
                if z == x || !g.adjacent(y, z) || g.adjacent(x, z) {
                    continue;
                }
                if let Some(w) = (0..n).find(|&w| {
                    w != x
                        && w != y
                        && w != z
                        && !g.adjacent(w, x)
                        && !g.adjacent(w, y)
                        && !g.adjacent(w, z)
                }) {
                    return Some([x, y, z, w]);
                }
            }
        }
    }
    None
}

pub const REPORT_VERSION: u32 = 1;

/// The versioned JSON document emitted by `classify` and `witness`.
pub fn classification_report(g: &SimplicialGraph) -> Result<Value, CotreeError> {
    let c = classify(g)?;
    let witness = match witness(g) {
        Ok(w) => w.to_json(),
        Err(CotreeError::NotApplicable) => Value::Null,
        Err(e) => return Err(e),
    };
    let p4 = match &c.level {
        HierarchyLevel::NotCograph(p) => json!(p),
        HierarchyLevel::Level(_) => Value::Null,
    };
    Ok(json!({
        "version": REPORT_VERSION,
        "graph": graph_json(g),
        "cograph": c.cotree.is_some(),
        "cotree": c.cotree.as_ref().map(Cotree::to_json),
        "level": c.level.level(),
        "p4": p4,
        "verdict": c.verdict,
        "witness": witness,
    }))
}

pub fn graph_json(g: &SimplicialGraph) -> Value {
    let edges: Vec<[String; 2]> = g.edges().into_iter().map(|(u, v)| [u, v]).collect();
    json!({ "vertices": g.vertices(), "edges": edges })
}
