//! Random valid rated graphs for property checks.

use rand::seq::SliceRandom;
use rand::Rng;

use super::fixtures::{fibered_end, torus_end, torus_node};
use super::{EdgeEnd, EdgePiece, NodeKind, NodePiece, Rate, RatedGraph};
use crate::presentation::{GroupHom, Word};

/// Limits for [`random_graph`].
#[derive(Clone, Debug)]
pub struct RandomSpec {
    pub max_nodes: usize,
    pub max_fiber_rank: usize,
    pub rates: Vec<Rate>,
    pub max_extra_edges: usize,
}

impl Default for RandomSpec {
    fn default() -> Self {
        RandomSpec {
            max_nodes: 5,
            max_fiber_rank: 3,
            rates: vec![Rate::one(), Rate::ratio(3, 2), Rate::integer(2), Rate::integer(3)],
            max_extra_edges: 2,
        }
    }
}

/// Automorphism of the free group of rank `r` fixing `x1`: a signed
/// permutation of `x2..xr` followed by right multiplications by `x1`.
fn monodromy<R: Rng>(rng: &mut R, r: usize) -> GroupHom {
    let mut rest: Vec<usize> = (1..r).collect();
    rest.shuffle(rng);
    let mut images = vec![Word::generator(0)];
    for &g in &rest {
        let base = if rng.gen_bool(0.5) {
            Word::generator(g)
        } else {
            Word::generator_inverse(g)
        };
        let twist = rng.gen_range(-1..=1);
        images.push(base.concat(&Word::from_powers(&[(0, twist)])));
    }
    GroupHom::new(r, images).expect("in range")
}

/// End at a fibered node: `mu -> t*x1^k` and `lambda -> x1^{±1}`, which
/// commute because the monodromy fixes `x1`.
fn random_fibered_end<R: Rng>(rng: &mut R, node: usize, r: usize) -> EdgeEnd {
    let mut end = fibered_end(node, r, None);
    let k = rng.gen_range(-1..=1);
    end.mu = Word::generator(r).concat(&Word::from_powers(&[(0, k)]));
    if rng.gen_bool(0.5) {
        end.lambda = Word::generator_inverse(0);
    }
    end.chains = None;
    end
}

/// A connected graph: node 0 is a conical torus with probability 1/2, the
/// rest are fibered; a random spanning tree plus a few extra edges (self
/// edges allowed).
pub fn random_graph<R: Rng>(rng: &mut R, spec: &RandomSpec) -> RatedGraph {
    let n = rng.gen_range(1..=spec.max_nodes);
    let conical = rng.gen_bool(0.5);
    let mut nodes = Vec::with_capacity(n);
    for i in 0..n {
        let id = format!("n{}", i + 1);
        if i == 0 && conical {
            nodes.push(torus_node(&id));
        } else {
            let r = rng.gen_range(1..=spec.max_fiber_rank);
            nodes.push(NodePiece {
                id,
                rate: spec.rates.choose(rng).expect("nonempty rates").clone(),
                kind: NodeKind::Fibered {
                    fiber_rank: r,
                    monodromy: monodromy(rng, r),
                },
            });
        }
    }
    let mut pairs: Vec<(usize, usize)> = (1..n).map(|i| (rng.gen_range(0..i), i)).collect();
    for _ in 0..rng.gen_range(0..=spec.max_extra_edges) {
        pairs.push((rng.gen_range(0..n), rng.gen_range(0..n)));
    }
    let end = |rng: &mut R, v: usize| match &nodes[v].kind {
        NodeKind::Conical { .. } => torus_end(v),
        NodeKind::Fibered { fiber_rank, .. } => random_fibered_end(rng, v, *fiber_rank),
    };
    let edges = pairs
        .iter()
        .enumerate()
        .map(|(k, &(a, b))| EdgePiece {
            id: format!("e{}", k + 1),
            ends: [end(rng, a), end(rng, b)],
        })
        .collect();
    RatedGraph::new(nodes, edges).expect("generated graphs are valid")
}
