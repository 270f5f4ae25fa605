use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use super::graph::Gluing;
use super::{Rate, RatedError, RatedGraph};
use crate::chain::{induced_on, verify_complex, AbelianGroup, ChainComplex, ChainMap, IntMatrix};
use crate::presentation::{
    abelianize, graph_of_groups, quotient, tietze_simplify, GroupEdge, GroupHom, Presentation, Word,
};

/// The `(b,1)`-homotopy model at one rate: every fibered node of rate `> b`
/// is collapsed onto its base circle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BModel {
    b: Rate,
    collapsed: Vec<bool>,
    node_ids: Vec<String>,
    presentation: Presentation,
    complex: ChainComplex,
    node_complexes: Vec<ChainComplex>,
    /// `node_offsets[n][i]`: first basis index of node `i` in total degree `n`.
    node_offsets: Vec<Vec<usize>>,
    edge_offsets: Vec<Vec<usize>>,
}

#[derive(Serialize)]
struct CanonicalModel<'a> {
    collapsed: Vec<&'a str>,
    generators: &'a [String],
    relators: Vec<String>,
    ranks: &'a [usize],
    boundaries: Vec<IntMatrix>,
}

impl BModel {
    pub fn b(&self) -> &Rate {
        &self.b
    }

    pub fn collapsed(&self) -> &[bool] {
        &self.collapsed
    }

    /// Ids of collapsed nodes in node order.
    pub fn collapsed_ids(&self) -> Vec<&str> {
        self.node_ids
            .iter()
            .zip(&self.collapsed)
            .filter(|(_, &c)| c)
            .map(|(id, _)| id.as_str())
            .collect()
    }

    /// Graph-of-groups presentation before simplification.
    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    /// Total complex of the graph of spaces.
    pub fn complex(&self) -> &ChainComplex {
        &self.complex
    }

    /// JSON of everything except `b` itself, so models built at different
    /// rates with the same collapse pattern serialize identically.
    pub fn canonical_json(&self) -> String {
        let top = self.complex.top_degree().unwrap_or(0);
        let view = CanonicalModel {
            collapsed: self.collapsed_ids(),
            generators: self.presentation.generators(),
            relators: self.presentation.relator_strings(),
            ranks: self.complex.ranks(),
            boundaries: (1..=top).map(|n| self.complex.boundary(n)).collect(),
        };
        serde_json::to_string(&view).expect("serializable")
    }
}

fn int(v: i64) -> BigInt {
    BigInt::from(v)
}

/// Chain map of a collapsed fibered node onto the circle: `t` to the circle
/// edge, fiber edges and 2-cells to zero.
fn collapse_map(node: &ChainComplex, fiber_rank: usize) -> ChainMap {
    let mut c1 = IntMatrix::zeros(1, fiber_rank + 1);
    c1.set(0, fiber_rank, BigInt::one());
    ChainMap::new(
        node,
        &ChainComplex::circle(),
        vec![IntMatrix::identity(1), c1, IntMatrix::zeros(0, fiber_rank)],
    )
    .expect("collapse commutes")
}

pub fn build_model(g: &RatedGraph, b: &Rate) -> BModel {
    let nodes = g.nodes();
    let collapsed: Vec<bool> = nodes.iter().map(|n| n.is_fibered() && n.rate > *b).collect();

    // presentations
    let mut node_pres = Vec::with_capacity(nodes.len());
    for (n, &c) in nodes.iter().zip(&collapsed) {
        let p = n.presentation();
        let p = if c {
            let fiber: Vec<Word> = (0..n.fiber_rank()).map(Word::generator).collect();
            quotient(&p, &fiber).expect("fiber generators in range")
        } else {
            p
        };
        node_pres.push(p.renamed(|s| format!("{s}@{}", n.id)));
    }
    let group_edges: Vec<GroupEdge> = g
        .gluings()
        .iter()
        .zip(g.edges())
        .map(|(pair, e)| {
            let hom = |gl: &Gluing| {
                GroupHom::new(
                    node_pres[gl.node].num_generators(),
                    vec![gl.mu.clone(), gl.lambda.clone()],
                )
                .expect("validated words")
            };
            GroupEdge {
                source: pair[0].node,
                target: pair[1].node,
                to_source: hom(&pair[0]),
                to_target: hom(&pair[1]),
                stable_name: Some(format!("s@{}", e.id)),
            }
        })
        .collect();
    let presentation = graph_of_groups(&node_pres, &group_edges).expect("validated graph");

    // total complex
    let node_complexes: Vec<ChainComplex> = nodes
        .iter()
        .zip(&collapsed)
        .map(|(n, &c)| if c { ChainComplex::circle() } else { n.complex() })
        .collect();
    let torus = ChainComplex::torus();
    let node_top = node_complexes
        .iter()
        .filter_map(ChainComplex::top_degree)
        .max()
        .unwrap_or(0);
    let top = if g.edges().is_empty() { node_top } else { node_top.max(3) };
    let mut node_offsets = vec![Vec::new(); top + 1];
    let mut edge_offsets = vec![Vec::new(); top + 1];
    let mut ranks = vec![0; top + 1];
    for n in 0..=top {
        for c in &node_complexes {
            node_offsets[n].push(ranks[n]);
            ranks[n] += c.rank(n);
        }
        for _ in g.edges() {
            edge_offsets[n].push(ranks[n]);
            if n >= 1 {
                ranks[n] += torus.rank(n - 1);
            }
        }
    }
    let mut boundaries = Vec::with_capacity(top);
    for n in 1..=top {
        let mut d = IntMatrix::zeros(ranks[n - 1], ranks[n]);
        for (i, c) in node_complexes.iter().enumerate() {
            let block = c.boundary(n);
            if block.rows() > 0 && block.cols() > 0 {
                d.set_block(node_offsets[n - 1][i], node_offsets[n][i], &block);
            }
        }
        let cell_degree = n - 1;
        for (e, pair) in g.gluings().iter().enumerate() {
            for s in 0..torus.rank(cell_degree) {
                let col = edge_offsets[n][e] + s;
                for (end, gl) in pair.iter().enumerate() {
                    let sign = if end == 0 { int(1) } else { int(-1) };
                    let image = torus_image(gl, collapsed[gl.node], nodes[gl.node].fiber_rank(), &node_complexes[gl.node], cell_degree, s);
                    for (r, v) in image.iter().enumerate() {
                        if !v.is_zero() {
                            let row = node_offsets[n - 1][gl.node] + r;
                            let cur = d.get(row, col).clone();
                            d.set(row, col, cur + &sign * v);
                        }
                    }
                }
                if cell_degree >= 1 {
                    let tb = torus.boundary(cell_degree);
                    for r in 0..tb.rows() {
                        let v = tb.get(r, s);
                        if !v.is_zero() {
                            let row = edge_offsets[n - 1][e] + r;
                            let cur = d.get(row, col).clone();
                            d.set(row, col, cur - v);
                        }
                    }
                }
            }
        }
        boundaries.push(d);
    }
    let complex = ChainComplex::new(ranks, boundaries).expect("assembled shapes");
    BModel {
        b: b.clone(),
        collapsed,
        node_ids: nodes.iter().map(|n| n.id.clone()).collect(),
        presentation,
        complex,
        node_complexes,
        node_offsets,
        edge_offsets,
    }
}

/// Image of torus cell `s` of degree `degree` in the node complex.
fn torus_image(
    gl: &Gluing,
    collapsed: bool,
    fiber_rank: usize,
    target: &ChainComplex,
    degree: usize,
    s: usize,
) -> Vec<BigInt> {
    let len = target.rank(degree);
    match degree {
        0 => {
            let mut v = vec![BigInt::zero(); len];
            v[if collapsed { 0 } else { gl.vertex }] = BigInt::one();
            v
        }
        1 => {
            let chain = if s == 0 { &gl.mu_chain } else { &gl.lambda_chain };
            if collapsed {
                vec![chain[fiber_rank].clone()]
            } else {
                chain.clone()
            }
        }
        2 => {
            if collapsed {
                vec![BigInt::zero(); len]
            } else {
                gl.face_chain.clone()
            }
        }
        _ => vec![BigInt::zero(); len],
    }
}

/// Simplified presentation of the model's fundamental group.
pub fn pi1(g: &RatedGraph, b: &Rate) -> Presentation {
    tietze_simplify(build_model(g, b).presentation())
}

/// `H_n` of the model's total complex.
pub fn homology(g: &RatedGraph, b: &Rate, n: usize) -> AbelianGroup {
    build_model(g, b)
        .complex()
        .homology(n)
        .expect("assembled complexes satisfy dd = 0")
        .group
}

/// The map `X^b -> X^{b'}` for `b >= b'` in every homology degree up to
/// `max_degree`, plus its action on the unsimplified generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureMap {
    pub from: Rate,
    pub to: Rate,
    pub source: Vec<AbelianGroup>,
    pub target: Vec<AbelianGroup>,
    /// `homology[n]` has shape `target gens x source gens`.
    pub homology: Vec<IntMatrix>,
    pub generators: GroupHom,
}

/// Chain-level structure map between two models of the same graph.
pub fn structure_chain_map(g: &RatedGraph, high: &BModel, low: &BModel) -> ChainMap {
    let top = high.complex.top_degree().unwrap_or(0);
    let mut comps = Vec::with_capacity(top + 1);
    for n in 0..=top {
        let mut m = IntMatrix::zeros(low.complex.rank(n), high.complex.rank(n));
        for (i, node) in g.nodes().iter().enumerate() {
            let block = if high.collapsed[i] == low.collapsed[i] {
                IntMatrix::identity(high.node_complexes[i].rank(n))
            } else {
                match collapse_map(&high.node_complexes[i], node.fiber_rank()).component(n) {
                    Some(c) => c.clone(),
                    None => IntMatrix::zeros(low.node_complexes[i].rank(n), high.node_complexes[i].rank(n)),
                }
            };
            if block.rows() > 0 && block.cols() > 0 {
                m.set_block(low.node_offsets[n][i], high.node_offsets[n][i], &block);
            }
        }
        for e in 0..g.edges().len() {
            let size = if n >= 1 { ChainComplex::torus().rank(n - 1) } else { 0 };
            if size > 0 {
                m.set_block(low.edge_offsets[n][e], high.edge_offsets[n][e], &IntMatrix::identity(size));
            }
        }
        comps.push(m);
    }
    ChainMap::new(&high.complex, &low.complex, comps).expect("structure map commutes")
}

pub fn structure_map(g: &RatedGraph, b: &Rate, b_low: &Rate, max_degree: usize) -> Result<StructureMap, RatedError> {
    if b < b_low {
        return Err(RatedError::Order {
            from: b.clone(),
            to: b_low.clone(),
        });
    }
    let high = build_model(g, b);
    let low = build_model(g, b_low);
    Ok(structure_between(g, &high, &low, max_degree))
}

pub(crate) fn structure_between(g: &RatedGraph, high: &BModel, low: &BModel, max_degree: usize) -> StructureMap {
    let f = structure_chain_map(g, high, low);
    let mut source = Vec::new();
    let mut target = Vec::new();
    let mut homology = Vec::new();
    for n in 0..=max_degree {
        let hs = high.complex.homology(n).expect("valid");
        let ht = low.complex.homology(n).expect("valid");
        homology.push(induced_on(&f, &hs, &ht, n));
        source.push(hs.group);
        target.push(ht.group);
    }
    // fiber generators of newly collapsed nodes die, everything else is fixed
    let mut images: Vec<Word> = (0..high.presentation.num_generators()).map(Word::generator).collect();
    let mut offset = 0;
    for (i, node) in g.nodes().iter().enumerate() {
        let count = node.presentation().num_generators();
        if low.collapsed[i] && !high.collapsed[i] {
            for x in 0..node.fiber_rank() {
                images[offset + x] = Word::empty();
            }
        }
        offset += count;
    }
    let generators = GroupHom::new(low.presentation.num_generators(), images).expect("same generators");
    StructureMap {
        from: high.b.clone(),
        to: low.b.clone(),
        source,
        target,
        homology,
        generators,
    }
}

/// Abelianized fundamental group against `H_1`; `None` when they agree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HurewiczMismatch {
    pub abelianized: AbelianGroup,
    pub h1: AbelianGroup,
}

pub fn hurewicz_check(g: &RatedGraph, b: &Rate) -> Option<HurewiczMismatch> {
    let m = build_model(g, b);
    hurewicz_on(&m)
}

pub(crate) fn hurewicz_on(m: &BModel) -> Option<HurewiczMismatch> {
    let abelianized = abelianize(&tietze_simplify(&m.presentation));
    let h1 = m.complex.homology(1).expect("valid").group;
    (abelianized != h1).then_some(HurewiczMismatch { abelianized, h1 })
}

pub(crate) fn d2_report(m: &BModel) -> Vec<usize> {
    verify_complex(&m.complex)
}
