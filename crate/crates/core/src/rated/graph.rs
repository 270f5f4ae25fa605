use num_bigint::BigInt;
use num_traits::Zero;

use super::{Rate, RatedError};
use crate::chain::{verify_complex, AbelianGroup, ChainComplex, IntMatrix};
use crate::presentation::{abelianize, mapping_torus, GroupHom, Presentation, Word};

/// Piece data of a node.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NodeKind {
    /// Metrically conical piece: the link piece is given directly.
    Conical {
        presentation: Presentation,
        complex: ChainComplex,
    },
    /// Mapping torus of a free group automorphism of rank `fiber_rank`.
    /// Generators are `x1..xr, t`.
    Fibered {
        fiber_rank: usize,
        monodromy: GroupHom,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NodePiece {
    pub id: String,
    pub rate: Rate,
    pub kind: NodeKind,
}

impl NodePiece {
    pub fn is_fibered(&self) -> bool {
        matches!(self.kind, NodeKind::Fibered { .. })
    }

    /// Presentation with local generator names.
    pub fn presentation(&self) -> Presentation {
        match &self.kind {
            NodeKind::Conical { presentation, .. } => presentation.clone(),
            NodeKind::Fibered {
                fiber_rank,
                monodromy,
            } => mapping_torus(*fiber_rank, monodromy).expect("validated monodromy"),
        }
    }

    /// Cellular chain complex. A fibered node has one vertex, the edges
    /// `x1..xr, t` and one 2-cell per mapping torus relation.
    pub fn complex(&self) -> ChainComplex {
        match &self.kind {
            NodeKind::Conical { complex, .. } => complex.clone(),
            NodeKind::Fibered { fiber_rank, .. } => {
                let r = *fiber_rank;
                let p = self.presentation();
                ChainComplex::new(
                    vec![1, r + 1, r],
                    vec![IntMatrix::zeros(1, r + 1), p.relation_matrix()],
                )
                .expect("mapping torus shapes")
            }
        }
    }

    /// Number of fiber generators; zero for conical nodes.
    pub fn fiber_rank(&self) -> usize {
        match &self.kind {
            NodeKind::Fibered { fiber_rank, .. } => *fiber_rank,
            NodeKind::Conical { .. } => 0,
        }
    }

    /// Exponent of `t` in a word of a fibered node.
    pub(crate) fn degree(&self, w: &Word) -> i64 {
        w.exponent_sum(self.fiber_rank())
    }
}

/// Cellular images of the boundary torus cells at one end.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusChains {
    pub vertex: usize,
    pub mu: Vec<BigInt>,
    pub lambda: Vec<BigInt>,
    /// 2-cycle carried by the torus face; zero when absent.
    pub face: Option<Vec<BigInt>>,
}

/// One end of an edge: where the torus generators `mu` (base direction) and
/// `lambda` (fiber direction) go in the node, as words in the node's local
/// generators and as chains. Chains are derived from the words at fibered
/// ends when omitted and are required at conical ends.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeEnd {
    pub node: usize,
    pub mu: Word,
    pub lambda: Word,
    pub chains: Option<TorusChains>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgePiece {
    pub id: String,
    pub ends: [EdgeEnd; 2],
}

/// Fully resolved gluing of one edge end.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Gluing {
    pub node: usize,
    pub mu: Word,
    pub lambda: Word,
    pub vertex: usize,
    pub mu_chain: Vec<BigInt>,
    pub lambda_chain: Vec<BigInt>,
    pub face_chain: Vec<BigInt>,
}

/// Validated rated decomposition graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatedGraph {
    nodes: Vec<NodePiece>,
    edges: Vec<EdgePiece>,
    /// Per edge, ends ordered by node index (declared order for self-edges).
    gluings: Vec<[Gluing; 2]>,
}

fn is_cycle(c: &ChainComplex, degree: usize, chain: &[BigInt]) -> bool {
    c.boundary(degree).apply(chain).iter().all(Zero::is_zero)
}

impl RatedGraph {
    pub fn new(nodes: Vec<NodePiece>, edges: Vec<EdgePiece>) -> Result<Self, RatedError> {
        if nodes.is_empty() {
            return Err(RatedError::Empty);
        }
        let ids = nodes.iter().map(|n| &n.id).chain(edges.iter().map(|e| &e.id));
        let mut seen = std::collections::HashSet::new();
        for id in ids {
            if !seen.insert(id.clone()) {
                return Err(RatedError::DuplicateId(id.clone()));
            }
        }
        for n in &nodes {
            validate_node(n)?;
        }
        let mut gluings = Vec::with_capacity(edges.len());
        for e in &edges {
            let mut resolved = Vec::with_capacity(2);
            for (end, g) in e.ends.iter().enumerate() {
                resolved.push(resolve_end(&nodes, e, end, g)?);
            }
            let mut pair: [Gluing; 2] = resolved.try_into().expect("two ends");
            if pair[0].node > pair[1].node {
                pair.swap(0, 1);
            }
            gluings.push(pair);
        }
        let ends: Vec<(usize, usize)> = gluings.iter().map(|g| (g[0].node, g[1].node)).collect();
        if let Some(missing) = reachable(nodes.len(), &ends).iter().position(|r| !r) {
            return Err(RatedError::Disconnected(nodes[missing].id.clone()));
        }
        Ok(RatedGraph {
            nodes,
            edges,
            gluings,
        })
    }

    pub fn nodes(&self) -> &[NodePiece] {
        &self.nodes
    }

    pub fn edges(&self) -> &[EdgePiece] {
        &self.edges
    }

    pub(crate) fn gluings(&self) -> &[[Gluing; 2]] {
        &self.gluings
    }

    pub fn node_index(&self, id: &str) -> Option<usize> {
        self.nodes.iter().position(|n| n.id == id)
    }

    pub fn max_rate(&self) -> Rate {
        self.nodes
            .iter()
            .map(|n| n.rate.clone())
            .max()
            .expect("nonempty")
    }
}

fn reachable(n: usize, ends: &[(usize, usize)]) -> Vec<bool> {
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut changed = true;
    while changed {
        changed = false;
        for &(a, b) in ends {
            if seen[a] != seen[b] {
                seen[a] = true;
                seen[b] = true;
                changed = true;
            }
        }
    }
    seen
}

fn validate_node(n: &NodePiece) -> Result<(), RatedError> {
    match &n.kind {
        NodeKind::Conical {
            presentation,
            complex,
        } => {
            if n.rate != Rate::one() {
                return Err(RatedError::ConicalRate(n.id.clone()));
            }
            if let Some(&degree) = verify_complex(complex).first() {
                return Err(RatedError::NodeComplex {
                    node: n.id.clone(),
                    degree,
                });
            }
            let h = complex.homology_groups(1).expect("verified");
            if h[0] != AbelianGroup::free(1) {
                return Err(RatedError::ConicalDisconnected(n.id.clone()));
            }
            let ab = abelianize(presentation);
            if h[1] != ab {
                return Err(RatedError::ConicalHomology {
                    node: n.id.clone(),
                    abelianized: ab,
                    h1: h[1].clone(),
                });
            }
        }
        NodeKind::Fibered {
            fiber_rank,
            monodromy,
        } => {
            mapping_torus(*fiber_rank, monodromy).map_err(|source| RatedError::Presentation {
                context: format!("monodromy of node {}", n.id),
                source,
            })?;
        }
    }
    Ok(())
}

fn resolve_end(nodes: &[NodePiece], e: &EdgePiece, end: usize, g: &EdgeEnd) -> Result<Gluing, RatedError> {
    let node = nodes.get(g.node).ok_or_else(|| RatedError::UnknownNode {
        edge: e.id.clone(),
        node: g.node,
    })?;
    let p = node.presentation();
    for (name, w) in [("mu", &g.mu), ("lambda", &g.lambda)] {
        if let Some(u) = w.max_generator().filter(|&u| u >= p.num_generators()) {
            return Err(RatedError::EdgeWord {
                edge: e.id.clone(),
                end,
                which: name.into(),
                message: format!("generator index {u} out of range for node {}", node.id),
            });
        }
    }
    let complex = node.complex();
    let chains = match (&node.kind, &g.chains) {
        (_, Some(c)) => c.clone(),
        (NodeKind::Fibered { fiber_rank, .. }, None) => {
            let v = |w: &Word| w.exponent_vector(fiber_rank + 1).into_iter().map(BigInt::from).collect();
            TorusChains {
                vertex: 0,
                mu: v(&g.mu),
                lambda: v(&g.lambda),
                face: None,
            }
        }
        (NodeKind::Conical { .. }, None) => {
            return Err(RatedError::MissingChains {
                edge: e.id.clone(),
                end,
            })
        }
    };
    if node.is_fibered() && node.degree(&g.lambda) != 0 {
        return Err(RatedError::EdgeWord {
            edge: e.id.clone(),
            end,
            which: "lambda".into(),
            message: "must have zero degree in t at a fibered node".into(),
        });
    }
    if chains.vertex >= complex.rank(0) {
        return Err(RatedError::EdgeChain {
            edge: e.id.clone(),
            end,
            which: "vertex".into(),
            message: format!("vertex {} out of range", chains.vertex),
        });
    }
    let face = chains.face.clone().unwrap_or_else(|| vec![BigInt::zero(); complex.rank(2)]);
    for (which, degree, chain) in [("mu", 1, &chains.mu), ("lambda", 1, &chains.lambda), ("face", 2, &face)] {
        if chain.len() != complex.rank(degree) {
            return Err(RatedError::EdgeChain {
                edge: e.id.clone(),
                end,
                which: which.into(),
                message: format!("expected {} entries, found {}", complex.rank(degree), chain.len()),
            });
        }
        if !is_cycle(&complex, degree, chain) {
            return Err(RatedError::EdgeChain {
                edge: e.id.clone(),
                end,
                which: which.into(),
                message: "not a cycle".into(),
            });
        }
    }
    Ok(Gluing {
        node: g.node,
        mu: g.mu.clone(),
        lambda: g.lambda.clone(),
        vertex: chains.vertex,
        mu_chain: chains.mu,
        lambda_chain: chains.lambda,
        face_chain: face,
    })
}
