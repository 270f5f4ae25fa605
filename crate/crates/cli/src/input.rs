//! Input document: a rated graph, an optional cone link and an optional
//! thickening problem.

use std::fmt;

use mdcore::chain::{verify_complex, ChainComplex, IntMatrix};
use mdcore::presentation::{parse_word, GroupHom, Presentation, Word};
use mdcore::rated::{EdgeEnd, EdgePiece, NodeKind, NodePiece, Rate, RatedError, RatedGraph, TorusChains};
use mdcore::rational::{parse_rational, Q};
use mdcore::thickening::{AffineSamples, SimplicialComplex, ThickeningError};
use num_bigint::BigInt;
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer};

pub const SCHEMA_VERSION: &str = "1";

/// A problem with the input, located by its JSON path.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InputError {
    pub path: String,
    pub message: String,
}

impl InputError {
    fn at(path: impl Into<String>, message: impl fmt::Display) -> Self {
        InputError {
            path: path.into(),
            message: message.to_string(),
        }
    }
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.path, self.message)
    }
}

impl std::error::Error for InputError {}

/// An integer given as a JSON integer or a decimal string.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Int(pub BigInt);

struct IntVisitor;

impl Visitor<'_> for IntVisitor {
    type Value = Int;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        write!(f, "an integer or a decimal integer string")
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> Result<Int, E> {
        Ok(Int(v.into()))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> Result<Int, E> {
        Ok(Int(v.into()))
    }

    fn visit_str<E: de::Error>(self, v: &str) -> Result<Int, E> {
        v.trim()
            .parse::<BigInt>()
            .map(Int)
            .map_err(|_| E::custom(format!("`{v}` is not an integer")))
    }
}

impl<'de> Deserialize<'de> for Int {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        d.deserialize_any(IntVisitor)
    }
}

/// An exact rational given as `"p/q"`, `"p"` or a JSON integer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rational(pub Q);

struct RationalVisitor;

impl Visitor<'_> for RationalVisitor {
    type Value = Rational;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        write!(f, "a rational as \"p/q\" or an integer")
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> Result<Rational, E> {
        Ok(Rational(Q::from_integer(v.into())))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> Result<Rational, E> {
        Ok(Rational(Q::from_integer(v.into())))
    }

    fn visit_str<E: de::Error>(self, v: &str) -> Result<Rational, E> {
        parse_rational(v).map(Rational).map_err(E::custom)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        d.deserialize_any(RationalVisitor)
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputDocument {
    pub schema_version: String,
    #[serde(default)]
    pub nodes: Vec<NodeDoc>,
    #[serde(default)]
    pub edges: Vec<EdgeDoc>,
    #[serde(default)]
    pub link_complex: Option<LinkDoc>,
    #[serde(default)]
    pub thickening: Option<ThickeningDoc>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NodeKindDoc {
    Conical,
    Fibered,
}

/// Conical nodes carry `generators`, `relators` and `complex`; fibered nodes
/// carry `fiber_rank` and `monodromy` (images of `x1..xr`).
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NodeDoc {
    pub id: String,
    pub rate: Rate,
    pub kind: NodeKindDoc,
    #[serde(default)]
    pub generators: Option<Vec<String>>,
    #[serde(default)]
    pub relators: Option<Vec<String>>,
    #[serde(default)]
    pub complex: Option<ComplexDoc>,
    #[serde(default)]
    pub fiber_rank: Option<usize>,
    #[serde(default)]
    pub monodromy: Option<Vec<String>>,
}

/// `boundaries[n - 1]` is the matrix of `d_n` as rows, `ranks[n - 1]` by
/// `ranks[n]`.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexDoc {
    pub ranks: Vec<usize>,
    pub boundaries: Vec<Vec<Vec<Int>>>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LinkDoc {
    pub generators: Vec<String>,
    #[serde(default)]
    pub relators: Vec<String>,
    pub complex: ComplexDoc,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeDoc {
    pub id: String,
    pub ends: [EndDoc; 2],
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EndDoc {
    pub node: String,
    pub mu: String,
    pub lambda: String,
    #[serde(default)]
    pub chains: Option<ChainsDoc>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChainsDoc {
    pub vertex: usize,
    pub mu: Vec<Int>,
    pub lambda: Vec<Int>,
    #[serde(default)]
    pub face: Option<Vec<Int>>,
}

/// Per-simplex functions are given by their values at the simplex vertices
/// (`samples[t][i]`, sorted vertex order). Without samples every simplex
/// carries the identity of its ambient coordinates.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ThickeningDoc {
    pub vertices: Vec<Vec<Rational>>,
    pub simplices: Vec<Vec<usize>>,
    #[serde(default)]
    pub samples: Option<Vec<Vec<Vec<Rational>>>>,
}

/// Parses and checks the schema version; semantic checks happen in the
/// `to_*` conversions.
pub fn parse_document(text: &str) -> Result<InputDocument, InputError> {
    let mut de = serde_json::Deserializer::from_str(text);
    let doc: InputDocument = serde_path_to_error::deserialize(&mut de).map_err(|e| {
        let path = e.path().to_string();
        InputError::at(path, e.into_inner())
    })?;
    de.end().map_err(|e| InputError::at(".", e))?;
    if doc.schema_version != SCHEMA_VERSION {
        return Err(InputError::at(
            "schema_version",
            format!("unsupported version `{}`, expected `{SCHEMA_VERSION}`", doc.schema_version),
        ));
    }
    Ok(doc)
}

fn ints(v: &[Int]) -> Vec<BigInt> {
    v.iter().map(|i| i.0.clone()).collect()
}

fn complex_from(doc: &ComplexDoc, path: &str) -> Result<ChainComplex, InputError> {
    if doc.boundaries.len() + 1 != doc.ranks.len().max(1) {
        return Err(InputError::at(
            format!("{path}.boundaries"),
            format!("expected {} matrices for {} ranks", doc.ranks.len().saturating_sub(1), doc.ranks.len()),
        ));
    }
    let mut mats = Vec::with_capacity(doc.boundaries.len());
    for (k, rows) in doc.boundaries.iter().enumerate() {
        let (r, c) = (doc.ranks[k], doc.ranks[k + 1]);
        let at = format!("{path}.boundaries[{k}]");
        if rows.len() != r {
            return Err(InputError::at(at, format!("expected {r} rows, found {}", rows.len())));
        }
        let mut data = Vec::with_capacity(r * c);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != c {
                return Err(InputError::at(
                    format!("{at}[{i}]"),
                    format!("expected {c} entries, found {}", row.len()),
                ));
            }
            data.extend(ints(row));
        }
        mats.push(IntMatrix::from_vec(r, c, data).map_err(|e| InputError::at(at.clone(), e))?);
    }
    let complex = ChainComplex::new(doc.ranks.clone(), mats).map_err(|e| InputError::at(path, e))?;
    if let Some(&n) = verify_complex(&complex).first() {
        return Err(InputError::at(
            format!("{path}.boundaries[{}]", n - 1),
            format!("d{} composed with d{} is not zero", n - 1, n),
        ));
    }
    Ok(complex)
}

fn presentation_from(names: &[String], relators: &[String], path: &str) -> Result<Presentation, InputError> {
    let mut words = Vec::with_capacity(relators.len());
    for (j, r) in relators.iter().enumerate() {
        words.push(parse_word(r, names).map_err(|e| InputError::at(format!("{path}.relators[{j}]"), e))?);
    }
    Presentation::new(names.to_vec(), words).map_err(|e| InputError::at(format!("{path}.generators"), e))
}

fn require<'a, T>(v: &'a Option<T>, path: &str, field: &str, kind: &str) -> Result<&'a T, InputError> {
    v.as_ref()
        .ok_or_else(|| InputError::at(format!("{path}.{field}"), format!("required for {kind} nodes")))
}

fn forbid<T>(v: &Option<T>, path: &str, field: &str, kind: &str) -> Result<(), InputError> {
    match v {
        Some(_) => Err(InputError::at(format!("{path}.{field}"), format!("not allowed for {kind} nodes"))),
        None => Ok(()),
    }
}

fn node_from(doc: &NodeDoc, path: &str) -> Result<NodePiece, InputError> {
    let kind = match doc.kind {
        NodeKindDoc::Conical => {
            forbid(&doc.fiber_rank, path, "fiber_rank", "conical")?;
            forbid(&doc.monodromy, path, "monodromy", "conical")?;
            let names = require(&doc.generators, path, "generators", "conical")?;
            let relators = doc.relators.clone().unwrap_or_default();
            let complex = require(&doc.complex, path, "complex", "conical")?;
            NodeKind::Conical {
                presentation: presentation_from(names, &relators, path)?,
                complex: complex_from(complex, &format!("{path}.complex"))?,
            }
        }
        NodeKindDoc::Fibered => {
            forbid(&doc.generators, path, "generators", "fibered")?;
            forbid(&doc.relators, path, "relators", "fibered")?;
            forbid(&doc.complex, path, "complex", "fibered")?;
            let r = *require(&doc.fiber_rank, path, "fiber_rank", "fibered")?;
            let images = require(&doc.monodromy, path, "monodromy", "fibered")?;
            if images.len() != r {
                return Err(InputError::at(
                    format!("{path}.monodromy"),
                    format!("expected {r} images, found {}", images.len()),
                ));
            }
            let fiber: Vec<String> = (1..=r).map(|i| format!("x{i}")).collect();
            let mut words = Vec::with_capacity(r);
            for (i, w) in images.iter().enumerate() {
                words.push(parse_word(w, &fiber).map_err(|e| InputError::at(format!("{path}.monodromy[{i}]"), e))?);
            }
            let monodromy = GroupHom::new(r, words).map_err(|e| InputError::at(format!("{path}.monodromy"), e))?;
            NodeKind::Fibered {
                fiber_rank: r,
                monodromy,
            }
        }
    };
    Ok(NodePiece {
        id: doc.id.clone(),
        rate: doc.rate.clone(),
        kind,
    })
}

fn end_from(doc: &EndDoc, nodes: &[NodePiece], path: &str) -> Result<EdgeEnd, InputError> {
    let node = nodes
        .iter()
        .position(|n| n.id == doc.node)
        .ok_or_else(|| InputError::at(format!("{path}.node"), format!("unknown node `{}`", doc.node)))?;
    let names = nodes[node].presentation().generators().to_vec();
    let word = |s: &str, field: &str| -> Result<Word, InputError> {
        parse_word(s, &names).map_err(|e| InputError::at(format!("{path}.{field}"), e))
    };
    Ok(EdgeEnd {
        node,
        mu: word(&doc.mu, "mu")?,
        lambda: word(&doc.lambda, "lambda")?,
        chains: doc.chains.as_ref().map(|c| TorusChains {
            vertex: c.vertex,
            mu: ints(&c.mu),
            lambda: ints(&c.lambda),
            face: c.face.as_deref().map(ints),
        }),
    })
}

/// Maps a graph validation error back to the JSON path it came from.
fn locate_graph_error(doc: &InputDocument, e: RatedError) -> InputError {
    let node_path = |id: &str| {
        doc.nodes
            .iter()
            .position(|n| n.id == id)
            .map_or_else(|| "nodes".to_string(), |i| format!("nodes[{i}]"))
    };
    let edge_path = |id: &str| {
        doc.edges
            .iter()
            .position(|n| n.id == id)
            .map_or_else(|| "edges".to_string(), |i| format!("edges[{i}]"))
    };
    let path = match &e {
        RatedError::Empty => "nodes".to_string(),
        RatedError::DuplicateId(id) => {
            let nodes = doc.nodes.iter().map(|n| &n.id).enumerate().map(|(i, x)| (format!("nodes[{i}].id"), x));
            let edges = doc.edges.iter().map(|n| &n.id).enumerate().map(|(i, x)| (format!("edges[{i}].id"), x));
            nodes
                .chain(edges)
                .filter(|(_, x)| *x == id)
                .nth(1)
                .map_or_else(|| "nodes".to_string(), |(p, _)| p)
        }
        RatedError::ConicalRate(id) => format!("{}.rate", node_path(id)),
        RatedError::NodeComplex { node, .. } | RatedError::ConicalHomology { node, .. } => {
            format!("{}.complex", node_path(node))
        }
        RatedError::ConicalDisconnected(id) => format!("{}.complex", node_path(id)),
        RatedError::EdgeWord { edge, end, which, .. } => format!("{}.ends[{end}].{which}", edge_path(edge)),
        RatedError::EdgeChain { edge, end, which, .. } => {
            format!("{}.ends[{end}].chains.{which}", edge_path(edge))
        }
        RatedError::MissingChains { edge, end } | RatedError::UnknownNode { edge, node: end } => {
            format!("{}.ends[{end}]", edge_path(edge))
        }
        RatedError::Disconnected(id) => node_path(id),
        _ => "nodes".to_string(),
    };
    InputError::at(path, e)
}

/// The rated graph of the document; requires at least one node.
pub fn to_graph(doc: &InputDocument) -> Result<RatedGraph, InputError> {
    if doc.nodes.is_empty() {
        return Err(InputError::at("nodes", "at least one node is required for this command"));
    }
    let mut nodes = Vec::with_capacity(doc.nodes.len());
    for (i, n) in doc.nodes.iter().enumerate() {
        nodes.push(node_from(n, &format!("nodes[{i}]"))?);
    }
    let mut edges = Vec::with_capacity(doc.edges.len());
    for (i, e) in doc.edges.iter().enumerate() {
        let path = format!("edges[{i}]");
        edges.push(EdgePiece {
            id: e.id.clone(),
            ends: [
                end_from(&e.ends[0], &nodes, &format!("{path}.ends[0]"))?,
                end_from(&e.ends[1], &nodes, &format!("{path}.ends[1]"))?,
            ],
        });
    }
    RatedGraph::new(nodes, edges).map_err(|e| locate_graph_error(doc, e))
}

/// Presentation and chain complex of the cone link.
pub fn to_link(doc: &InputDocument) -> Result<(Presentation, ChainComplex), InputError> {
    let link = doc
        .link_complex
        .as_ref()
        .ok_or_else(|| InputError::at("link_complex", "required for this command"))?;
    Ok((
        presentation_from(&link.generators, &link.relators, "link_complex")?,
        complex_from(&link.complex, "link_complex.complex")?,
    ))
}

fn thickening_error(e: ThickeningError) -> InputError {
    let path = match &e {
        ThickeningError::VertexDimension { vertex, .. } => format!("thickening.vertices[{vertex}]"),
        ThickeningError::CoincidentVertices(_, b) => format!("thickening.vertices[{b}]"),
        ThickeningError::VertexOutOfRange { simplex, .. }
        | ThickeningError::RepeatedVertex { simplex }
        | ThickeningError::Degenerate { simplex }
        | ThickeningError::NotPure { simplex, .. }
        | ThickeningError::DuplicateSimplex { simplex, .. } => format!("thickening.simplices[{simplex}]"),
        ThickeningError::SampleShape { simplex, .. } => format!("thickening.samples[{simplex}]"),
        _ => "thickening".to_string(),
    };
    InputError::at(path, e)
}

/// The simplicial complex and its per-simplex functions.
pub fn to_thickening(doc: &InputDocument) -> Result<(SimplicialComplex, AffineSamples), InputError> {
    let t = doc
        .thickening
        .as_ref()
        .ok_or_else(|| InputError::at("thickening", "required for this command"))?;
    let vertices: Vec<Vec<Q>> = t.vertices.iter().map(|v| v.iter().map(|r| r.0.clone()).collect()).collect();
    let k = SimplicialComplex::new(vertices, t.simplices.clone()).map_err(thickening_error)?;
    let values: Vec<Vec<Vec<Q>>> = match &t.samples {
        Some(s) => {
            // samples follow the declared vertex order; the complex sorts it
            let mut out = Vec::with_capacity(s.len());
            for (i, per) in s.iter().enumerate() {
                let declared = t.simplices.get(i).cloned().unwrap_or_default();
                let mut pairs: Vec<(usize, Vec<Q>)> = declared
                    .iter()
                    .zip(per)
                    .map(|(&v, vals)| (v, vals.iter().map(|r| r.0.clone()).collect()))
                    .collect();
                if pairs.len() != per.len() {
                    return Err(InputError::at(
                        format!("thickening.samples[{i}]"),
                        format!("expected {} samples, found {}", declared.len(), per.len()),
                    ));
                }
                pairs.sort_by_key(|(v, _)| *v);
                out.push(pairs.into_iter().map(|(_, vals)| vals).collect());
            }
            out
        }
        None => k
            .simplices()
            .iter()
            .map(|s| s.iter().map(|&v| k.vertices()[v].clone()).collect())
            .collect(),
    };
    let samples = AffineSamples::new(&k, values).map_err(thickening_error)?;
    Ok((k, samples))
}

/// Parses a rate flag (`p/q`, `p` or `inf`).
pub fn parse_rate(flag: &str, s: &str) -> Result<Rate, InputError> {
    Rate::parse(s).map_err(|e| InputError::at(flag, e))
}

/// Parses a point as comma-separated rationals.
pub fn parse_point(s: &str) -> Result<Vec<Q>, InputError> {
    s.split(',')
        .map(|c| parse_rational(c).map_err(|e| InputError::at("--point", e)))
        .collect()
}
