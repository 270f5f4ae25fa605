//! Small hand-checked graphs and links.

use num_bigint::BigInt;

use super::{EdgeEnd, EdgePiece, NodeKind, NodePiece, Rate, RatedGraph, TorusChains};
use crate::chain::{ChainComplex, IntMatrix};
use crate::presentation::{GroupHom, Presentation, Word};

fn ints(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

/// Conical node whose link piece is a torus `< c, d | c*d*c^-1*d^-1 >`.
pub fn torus_node(id: &str) -> NodePiece {
    let names = vec!["c".to_string(), "d".to_string()];
    let rel = Word::commutator(&Word::generator(0), &Word::generator(1));
    NodePiece {
        id: id.into(),
        rate: Rate::one(),
        kind: NodeKind::Conical {
            presentation: Presentation::new(names, vec![rel]).expect("in range"),
            complex: ChainComplex::torus(),
        },
    }
}

/// Fibered node with the given monodromy images, written as `(generator,
/// exponent)` runs over the fiber generators.
pub fn fibered_node(id: &str, rate: Rate, images: &[&[(usize, i64)]]) -> NodePiece {
    let r = images.len();
    let monodromy = GroupHom::new(r, images.iter().map(|w| Word::from_powers(w)).collect()).expect("in range");
    NodePiece {
        id: id.into(),
        rate,
        kind: NodeKind::Fibered {
            fiber_rank: r,
            monodromy,
        },
    }
}

/// End at a torus node: `mu -> c`, `lambda -> d`, face to the 2-cell.
pub fn torus_end(node: usize) -> EdgeEnd {
    EdgeEnd {
        node,
        mu: Word::generator(0),
        lambda: Word::generator(1),
        chains: Some(TorusChains {
            vertex: 0,
            mu: ints(&[1, 0]),
            lambda: ints(&[0, 1]),
            face: Some(ints(&[1])),
        }),
    }
}

/// End at a fibered node of rank `r`: `mu -> t`, `lambda -> x1`, with an
/// optional face chain.
pub fn fibered_end(node: usize, r: usize, face: Option<Vec<BigInt>>) -> EdgeEnd {
    let mut mu = vec![BigInt::from(0); r + 1];
    mu[r] = BigInt::from(1);
    let mut lambda = vec![BigInt::from(0); r + 1];
    lambda[0] = BigInt::from(1);
    EdgeEnd {
        node,
        mu: Word::generator(r),
        lambda: Word::generator(0),
        chains: Some(TorusChains {
            vertex: 0,
            mu,
            lambda,
            face,
        }),
    }
}

/// Conical torus node glued to a fibered node of rate 2 with identity
/// monodromy; jumps `{1, 2}`.
pub fn tn1() -> RatedGraph {
    RatedGraph::new(
        vec![torus_node("n1"), fibered_node("n2", Rate::integer(2), &[&[(0, 1)]])],
        vec![EdgePiece {
            id: "e1".into(),
            ends: [torus_end(0), fibered_end(1, 1, Some(ints(&[1])))],
        }],
    )
    .expect("valid fixture")
}

/// A single conical node with a torus link.
pub fn conical_torus() -> RatedGraph {
    RatedGraph::new(vec![torus_node("n1")], Vec::new()).expect("valid fixture")
}

/// Chain `n1 - n2 - n3` with rates 1, 2, 3. `n3` has fiber rank 2 and
/// monodromy `x1 -> x1, x2 -> x2*x1`.
pub fn rates_123() -> RatedGraph {
    RatedGraph::new(
        vec![
            torus_node("n1"),
            fibered_node("n2", Rate::integer(2), &[&[(0, 1)]]),
            fibered_node("n3", Rate::integer(3), &[&[(0, 1)], &[(1, 1), (0, 1)]]),
        ],
        vec![
            EdgePiece {
                id: "e1".into(),
                ends: [torus_end(0), fibered_end(1, 1, Some(ints(&[1])))],
            },
            EdgePiece {
                id: "e2".into(),
                ends: [fibered_end(1, 1, None), fibered_end(2, 2, None)],
            },
        ],
    )
    .expect("valid fixture")
}

/// One fibered node of rate 3/2 glued to itself along a torus.
pub fn self_glued() -> RatedGraph {
    RatedGraph::new(
        vec![fibered_node("n1", Rate::ratio(3, 2), &[&[(0, 1)]])],
        vec![EdgePiece {
            id: "e1".into(),
            ends: [fibered_end(0, 1, None), fibered_end(0, 1, None)],
        }],
    )
    .expect("valid fixture")
}

/// Wedge of three circles: `< a, b, c | >` and its graph complex.
pub fn wedge_of_three_circles() -> (Presentation, ChainComplex) {
    (
        Presentation::free(["a", "b", "c"]),
        ChainComplex::new(vec![1, 3], vec![IntMatrix::zeros(1, 3)]).expect("shape"),
    )
}

/// Every graph fixture with a name.
pub fn all() -> Vec<(&'static str, RatedGraph)> {
    vec![
        ("tn1", tn1()),
        ("conical_torus", conical_torus()),
        ("rates_123", rates_123()),
        ("self_glued", self_glued()),
    ]
}
