//! Skeleton thickening of a simplicial complex and convex interpolation.
//!
//! Every maximal simplex `T` splits into a shrunken copy of itself (the core)
//! and one collar per proper face `f`, the convex hull of the shrunken faces
//! `v^{f''}` for `v ∈ f ⊆ f'' ⊆ T`. In barycentric coordinates `λ` on `T` the
//! collar of `f` is the set where
//!
//! ```text
//! min_{i∈f} λ_i  >=  θ_f  >=  max_{j∉f} λ_j,      θ_f = (Σ_{i∈f} λ_i − 1/2) / |f|
//! ```
//!
//! and the core is the case `f = T`. Collars are trivialized as a product of
//! the shrunken face `[f^T]` and a cube, which carries the interpolation
//! weights.

mod complex;
mod volume;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub use complex::SimplicialComplex;
pub use volume::hull_volume;

use crate::par::{self, Execution};
use crate::rational::Q;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ThickeningError {
    #[error("complex has no vertices or no simplices")]
    Empty,
    #[error("vertex {vertex} has {found} coordinates, expected {expected}")]
    VertexDimension {
        vertex: usize,
        expected: usize,
        found: usize,
    },
    #[error("vertices {0} and {1} coincide")]
    CoincidentVertices(usize, usize),
    #[error("simplex {simplex} uses unknown vertex {vertex}")]
    VertexOutOfRange { simplex: usize, vertex: usize },
    #[error("simplex {simplex} repeats a vertex")]
    RepeatedVertex { simplex: usize },
    #[error("simplex {simplex} is not affinely independent")]
    Degenerate { simplex: usize },
    #[error("simplex {simplex} has dimension {dim}; the complex must be pure of dimension {expected}")]
    NotPure {
        simplex: usize,
        dim: usize,
        expected: usize,
    },
    #[error("simplex {simplex} repeats simplex {other}")]
    DuplicateSimplex { simplex: usize, other: usize },
    #[error("vertex {vertex} is not in the face")]
    NotInFace { vertex: usize },
    #[error("point has {found} coordinates, expected {expected}")]
    PointDimension { expected: usize, found: usize },
    #[error("point is outside the complex")]
    Outside,
    #[error("simplex {simplex}: expected {expected} samples, found {found}")]
    SampleShape {
        simplex: usize,
        expected: usize,
        found: usize,
    },
}

/// Which piece of a maximal simplex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PieceKind {
    Core,
    /// Collar of a proper face, given by sorted global vertex ids.
    Collar(Vec<usize>),
}

impl PieceKind {
    /// Tie-break key: core first, then by face size, then vertex ids.
    fn rank(&self) -> (usize, usize, &[usize]) {
        match self {
            PieceKind::Core => (0, 0, &[]),
            PieceKind::Collar(f) => (1, f.len(), f),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThickeningPiece {
    pub simplex: usize,
    pub kind: PieceKind,
    /// Points whose convex hull is the piece, in ambient coordinates.
    pub vertices: Vec<Vec<Q>>,
    barycentric: Vec<Vec<Q>>,
}

impl ThickeningPiece {
    /// Generating points in barycentric coordinates of the simplex.
    pub fn barycentric_vertices(&self) -> &[Vec<Q>] {
        &self.barycentric
    }

    /// Volume as a fraction of the simplex, exact for dimension at most 3.
    pub fn volume_fraction(&self) -> Option<Q> {
        let k = self.barycentric.first()?.len() - 1;
        let chart: Vec<Vec<Q>> = self.barycentric.iter().map(|b| b[1..].to_vec()).collect();
        Some(hull_volume(&chart)? * complex::factorial(k))
    }
}

/// Coordinates of a collar point: the base point on the shrunken face as
/// barycentric weights over the face vertices, and the cube coordinates, one
/// per simplex vertex outside the face.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrivializationCoords {
    pub base: Vec<Q>,
    pub cube: Vec<Q>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Location {
    pub simplex: usize,
    pub kind: PieceKind,
    /// Barycentric coordinates of the point in `simplex`.
    pub barycentric: Vec<Q>,
    pub coords: Option<TrivializationCoords>,
}

/// Result of the convex interpolation at one point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Extension {
    pub location: Location,
    pub value: Vec<Q>,
    /// `(maximal simplex, weight)`, sorted by simplex; nonnegative, sum one.
    pub weights: Vec<(usize, Q)>,
    /// Input value contributed by each simplex in `weights`, same order.
    pub contributions: Vec<Vec<Q>>,
}

fn half() -> Q {
    Q::new(1.into(), 2.into())
}

fn qn(n: usize) -> Q {
    Q::from_integer(n.into())
}

/// `v^f = b_f / 2 + v / 2` in ambient coordinates.
pub fn shrink(k: &SimplicialComplex, v: usize, face: &[usize]) -> Result<Vec<Q>, ThickeningError> {
    if !face.contains(&v) {
        return Err(ThickeningError::NotInFace { vertex: v });
    }
    let n = qn(face.len());
    let verts = k.vertices();
    Ok((0..k.ambient_dim())
        .map(|c| {
            let bary: Q = face.iter().map(|&w| verts[w][c].clone()).sum::<Q>() / &n;
            (bary + &verts[v][c]) * half()
        })
        .collect())
}

/// `v^{f}` inside a simplex with `n` vertices, all in local indices.
fn shrink_local(n: usize, v: usize, face_mask: u64) -> Vec<Q> {
    let size = qn(face_mask.count_ones() as usize);
    (0..n)
        .map(|i| {
            let mut x = Q::zero();
            if face_mask >> i & 1 == 1 {
                x += half() / &size;
            }
            if i == v {
                x += half();
            }
            x
        })
        .collect()
}

fn bits(mask: u64, n: usize) -> impl Iterator<Item = usize> {
    (0..n).filter(move |&i| mask >> i & 1 == 1)
}

/// Proper nonempty faces of an `n`-vertex simplex as masks, ordered by size
/// and then lexicographically by local index list.
fn ordered_faces(n: usize) -> Vec<u64> {
    let mut faces: Vec<u64> = (1..(1u64 << n) - 1).collect();
    faces.sort_by_key(|&m| (m.count_ones(), bits(m, n).collect::<Vec<_>>()));
    faces
}

fn face_ids(simplex: &[usize], mask: u64) -> Vec<usize> {
    bits(mask, simplex.len()).map(|i| simplex[i]).collect()
}

/// Core and collars of every maximal simplex, simplex by simplex; within a
/// simplex the core comes first, then collars by face size and vertex ids.
pub fn decompose(k: &SimplicialComplex) -> Vec<ThickeningPiece> {
    decompose_with(k, Execution::default())
}

pub fn decompose_with(k: &SimplicialComplex, exec: Execution) -> Vec<ThickeningPiece> {
    let ids: Vec<usize> = (0..k.simplices().len()).collect();
    par::map(exec, &ids, |&t| simplex_pieces(k, t))
        .into_iter()
        .flatten()
        .collect()
}

fn simplex_pieces(k: &SimplicialComplex, t: usize) -> Vec<ThickeningPiece> {
    let s = &k.simplices()[t];
    let n = s.len();
    let full = (1u64 << n) - 1;
    let make = |kind: PieceKind, bary: Vec<Vec<Q>>| ThickeningPiece {
        simplex: t,
        kind,
        vertices: bary.iter().map(|b| k.point(t, b)).collect(),
        barycentric: bary,
    };
    let mut pieces = vec![make(
        PieceKind::Core,
        (0..n).map(|v| shrink_local(n, v, full)).collect(),
    )];
    for f in ordered_faces(n) {
        let rest = full & !f;
        let mut supersets: Vec<u64> = (0..=rest).filter(|&e| e & !rest == 0).map(|e| f | e).collect();
        supersets.sort_by_key(|&m| (m.count_ones(), bits(m, n).collect::<Vec<_>>()));
        let mut bary = Vec::new();
        for &g in &supersets {
            for v in bits(f, n) {
                bary.push(shrink_local(n, v, g));
            }
        }
        pieces.push(make(PieceKind::Collar(face_ids(s, f)), bary));
    }
    pieces
}

/// Piece test on barycentric numerators over a positive denominator `den`:
/// `2|f| l_i >= 2 sum_f l - den` inside the face, `<=` outside.
fn in_piece(nums: &[BigInt], den: &BigInt, mask: u64) -> bool {
    let n = nums.len();
    let a = BigInt::from(2 * mask.count_ones());
    let theta: BigInt = bits(mask, n).map(|i| &nums[i]).sum::<BigInt>() * 2 - den;
    (0..n).all(|i| {
        let lhs = &a * &nums[i];
        if mask >> i & 1 == 1 {
            lhs >= theta
        } else {
            lhs <= theta
        }
    })
}

/// First piece of a simplex (in tie-break order) containing the point.
/// Only the top-`a` coordinates can form the face of a collar, ties broken
/// towards lower indices.
fn piece_in_simplex(nums: &[BigInt], den: &BigInt) -> u64 {
    let n = nums.len();
    let full = (1u64 << n) - 1;
    if in_piece(nums, den, full) {
        return full;
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| nums[y].cmp(&nums[x]).then(x.cmp(&y)));
    let mut mask = 0;
    for &i in &order[..n - 1] {
        mask |= 1 << i;
        if in_piece(nums, den, mask) {
            return mask;
        }
    }
    unreachable!("the pieces cover the simplex")
}

fn trivialize(lambda: &[Q], mask: u64) -> TrivializationCoords {
    let n = lambda.len();
    let a = mask.count_ones() as usize;
    let off: Vec<usize> = (0..n).filter(|&j| mask >> j & 1 == 0).collect();
    let w_sum: Q = off.iter().map(|&j| lambda[j].clone()).sum();
    let base = bits(mask, n)
        .map(|i| (&lambda[i] + &w_sum / qn(a)) * qn(2) - Q::one() / qn(a))
        .collect();
    // Freudenthal: sort descending, cumulative weighted gaps
    let mut order: Vec<usize> = (0..off.len()).collect();
    order.sort_by(|&x, &y| lambda[off[y]].cmp(&lambda[off[x]]).then(x.cmp(&y)));
    let mut cube = vec![Q::zero(); off.len()];
    let mut acc = Q::zero();
    for pos in (0..order.len()).rev() {
        let w = &lambda[off[order[pos]]];
        let next = order
            .get(pos + 1)
            .map_or_else(Q::zero, |&o| lambda[off[o]].clone());
        acc += qn(2 * (a + pos + 1)) * (w - next);
        cube[order[pos]] = acc.clone();
    }
    TrivializationCoords { base, cube }
}

fn check_point(k: &SimplicialComplex, x: &[Q]) -> Result<(), ThickeningError> {
    if x.len() != k.ambient_dim() {
        return Err(ThickeningError::PointDimension {
            expected: k.ambient_dim(),
            found: x.len(),
        });
    }
    Ok(())
}

/// The piece containing `x`. On shared boundaries the core wins, then the
/// smallest face (by size, then vertex ids), then the lowest simplex index.
pub fn locate(k: &SimplicialComplex, x: &[Q]) -> Result<Location, ThickeningError> {
    check_point(k, x)?;
    let mut best: Option<(u64, usize, Vec<Q>, PieceKind)> = None;
    for t in 0..k.simplices().len() {
        let Some(scaled) = k.barycentric_scaled(t, x) else {
            continue;
        };
        if scaled.nums.iter().any(|l| l.is_negative()) {
            continue;
        }
        let mask = piece_in_simplex(&scaled.nums, &scaled.den);
        let n = scaled.nums.len();
        let kind = if mask == (1u64 << n) - 1 {
            PieceKind::Core
        } else {
            PieceKind::Collar(face_ids(&k.simplices()[t], mask))
        };
        let better = match &best {
            None => true,
            Some((_, _, _, bk)) => kind.rank() < bk.rank(),
        };
        if better {
            best = Some((mask, t, scaled.to_rational(), kind));
        }
    }
    let (mask, simplex, barycentric, kind) = best.ok_or(ThickeningError::Outside)?;
    let coords = match kind {
        PieceKind::Core => None,
        PieceKind::Collar(_) => Some(trivialize(&barycentric, mask)),
    };
    Ok(Location {
        simplex,
        kind,
        barycentric,
        coords,
    })
}

/// Convex interpolation of per-simplex functions.
///
/// `g(t, nu)` evaluates the function of maximal simplex `t` at the point with
/// barycentric coordinates `nu` over the vertices of `t`; on the core of `t`
/// the extension is `g` composed with the affine map from the core onto `t`.
/// On a collar of `f` every simplex containing `f` contributes its function
/// at the projected base point, blended by weights multilinear in the cube
/// coordinates.
pub fn extend<G>(k: &SimplicialComplex, g: G, x: &[Q]) -> Result<Extension, ThickeningError>
where
    G: Fn(usize, &[Q]) -> Vec<Q>,
{
    let location = locate(k, x)?;
    let t = location.simplex;
    let simplex = &k.simplices()[t];
    let n = simplex.len();
    let (weights, contributions) = match (&location.kind, &location.coords) {
        (PieceKind::Core, _) => {
            let nu: Vec<Q> = location
                .barycentric
                .iter()
                .map(|l| l * qn(2) - Q::one() / qn(n))
                .collect();
            (vec![(t, Q::one())], vec![g(t, &nu)])
        }
        (PieceKind::Collar(face), Some(coords)) => {
            let off: Vec<usize> = simplex.iter().copied().filter(|v| !face.contains(v)).collect();
            let mut weight: BTreeMap<usize, Q> = BTreeMap::new();
            for subset in 0u64..(1 << off.len()) {
                let mut c = Q::one();
                for (m, u) in coords.cube.iter().enumerate() {
                    if subset >> m & 1 == 1 {
                        c *= u;
                    } else {
                        c *= Q::one() - u;
                    }
                }
                if c.is_zero() {
                    continue;
                }
                let mut span = face.clone();
                span.extend(bits(subset, off.len()).map(|m| off[m]));
                let star = k.star(&span);
                let share = c / qn(star.len());
                for s in star {
                    *weight.entry(s).or_insert_with(Q::zero) += &share;
                }
            }
            let contributions = weight
                .keys()
                .map(|&s| {
                    let nu: Vec<Q> = k.simplices()[s]
                        .iter()
                        .map(|v| match face.iter().position(|w| w == v) {
                            Some(p) => coords.base[p].clone(),
                            None => Q::zero(),
                        })
                        .collect();
                    g(s, &nu)
                })
                .collect();
            (weight.into_iter().collect(), contributions)
        }
        (PieceKind::Collar(_), None) => unreachable!("collars carry coordinates"),
    };
    let dim = contributions.first().map_or(0, Vec::len);
    let mut value = vec![Q::zero(); dim];
    for ((_, w), c) in weights.iter().zip(&contributions) {
        for (v, ci) in value.iter_mut().zip(c) {
            *v += w * ci;
        }
    }
    Ok(Extension {
        location,
        value,
        weights,
        contributions,
    })
}

/// [`extend`] over a batch of points.
pub fn extend_batch<G>(
    k: &SimplicialComplex,
    g: G,
    points: &[Vec<Q>],
    exec: Execution,
) -> Vec<Result<Extension, ThickeningError>>
where
    G: Fn(usize, &[Q]) -> Vec<Q> + Sync + Send,
{
    par::map(exec, points, |x| extend(k, &g, x))
}

/// Per-simplex functions given by values at the simplex vertices and
/// extended affinely.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineSamples {
    values: Vec<Vec<Vec<Q>>>,
}

impl AffineSamples {
    /// `values[t][i]` is the value of simplex `t`'s function at its `i`-th
    /// vertex (sorted vertex order). All values share one dimension.
    pub fn new(k: &SimplicialComplex, values: Vec<Vec<Vec<Q>>>) -> Result<Self, ThickeningError> {
        if values.len() != k.simplices().len() {
            return Err(ThickeningError::SampleShape {
                simplex: values.len().min(k.simplices().len()),
                expected: k.simplices().len(),
                found: values.len(),
            });
        }
        let dim = values.first().and_then(|v| v.first()).map_or(0, Vec::len);
        for (t, vs) in values.iter().enumerate() {
            let n = k.simplices()[t].len();
            if vs.len() != n {
                return Err(ThickeningError::SampleShape {
                    simplex: t,
                    expected: n,
                    found: vs.len(),
                });
            }
            if let Some(bad) = vs.iter().find(|v| v.len() != dim) {
                return Err(ThickeningError::SampleShape {
                    simplex: t,
                    expected: dim,
                    found: bad.len(),
                });
            }
        }
        Ok(AffineSamples { values })
    }

    pub fn eval(&self, t: usize, nu: &[Q]) -> Vec<Q> {
        let vs = &self.values[t];
        let dim = vs.first().map_or(0, Vec::len);
        let mut out = vec![Q::zero(); dim];
        for (l, v) in nu.iter().zip(vs) {
            for (o, c) in out.iter_mut().zip(v) {
                *o += l * c;
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qi};

    fn interval() -> SimplicialComplex {
        SimplicialComplex::new(vec![vec![qi(0)], vec![qi(1)]], vec![vec![0, 1]]).unwrap()
    }

    fn triangle() -> SimplicialComplex {
        SimplicialComplex::new(
            vec![vec![qi(0), qi(0)], vec![qi(1), qi(0)], vec![qi(0), qi(1)]],
            vec![vec![0, 1, 2]],
        )
        .unwrap()
    }

    #[test]
    fn shrink_examples() {
        let k = interval();
        assert_eq!(shrink(&k, 0, &[0, 1]).unwrap(), vec![q(1, 4)]);
        assert_eq!(shrink(&k, 1, &[1]).unwrap(), vec![qi(1)]);
        assert_eq!(shrink(&k, 1, &[0]), Err(ThickeningError::NotInFace { vertex: 1 }));
        let t = triangle();
        assert_eq!(shrink(&t, 0, &[0, 1, 2]).unwrap(), vec![q(1, 6), q(1, 6)]);
    }

    #[test]
    fn interval_pieces() {
        let pieces = decompose(&interval());
        assert_eq!(pieces.len(), 3);
        let spans: Vec<(Q, Q)> = pieces
            .iter()
            .map(|p| {
                let xs: Vec<&Q> = p.vertices.iter().map(|v| &v[0]).collect();
                ((*xs.iter().min().unwrap()).clone(), (*xs.iter().max().unwrap()).clone())
            })
            .collect();
        assert_eq!(spans, vec![(q(1, 4), q(3, 4)), (qi(0), q(1, 4)), (q(3, 4), qi(1))]);
        assert_eq!(pieces[1].kind, PieceKind::Collar(vec![0]));
    }

    #[test]
    fn piece_counts() {
        assert_eq!(decompose(&triangle()).len(), 7);
        let point = SimplicialComplex::new(vec![vec![qi(3)]], vec![vec![0]]).unwrap();
        let pieces = decompose(&point);
        assert_eq!(pieces.len(), 1);
        assert_eq!(pieces[0].vertices, vec![vec![qi(3)]]);
    }

    #[test]
    fn triangle_volumes_sum_to_one() {
        let total: Q = decompose(&triangle())
            .iter()
            .map(|p| p.volume_fraction().unwrap())
            .sum();
        assert_eq!(total, qi(1));
    }

    #[test]
    fn locate_examples() {
        let k = interval();
        let mid = locate(&k, &[q(1, 2)]).unwrap();
        assert_eq!(mid.kind, PieceKind::Core);
        assert!(mid.coords.is_none());
        let c = locate(&k, &[q(1, 8)]).unwrap();
        assert_eq!(c.kind, PieceKind::Collar(vec![0]));
        assert_eq!(c.coords.unwrap().cube, vec![q(1, 2)]);
        assert_eq!(locate(&k, &[q(1, 4)]).unwrap().kind, PieceKind::Core);
        assert_eq!(locate(&k, &[q(5, 4)]), Err(ThickeningError::Outside));
        assert!(matches!(locate(&k, &[]), Err(ThickeningError::PointDimension { .. })));
    }

    #[test]
    fn collar_fiber_is_constant() {
        let k = interval();
        let g = AffineSamples::new(&k, vec![vec![vec![qi(2)], vec![qi(10)]]]).unwrap();
        // left core endpoint maps to vertex 0 of the simplex
        for x in [qi(0), q(1, 16), q(1, 8), q(1, 4)] {
            let e = extend(&k, |t, nu| g.eval(t, nu), &[x]).unwrap();
            assert_eq!(e.value, vec![qi(2)]);
        }
        // core is the affine rescaling onto the simplex
        let e = extend(&k, |t, nu| g.eval(t, nu), &[q(1, 2)]).unwrap();
        assert_eq!(e.value, vec![qi(6)]);
    }

    #[test]
    fn shared_vertex_averages() {
        let k = SimplicialComplex::new(
            vec![vec![qi(0)], vec![qi(1)], vec![qi(2)]],
            vec![vec![0, 1], vec![1, 2]],
        )
        .unwrap();
        let g = AffineSamples::new(
            &k,
            vec![vec![vec![qi(0)], vec![qi(4)]], vec![vec![qi(8)], vec![qi(0)]]],
        )
        .unwrap();
        let e = extend(&k, |t, nu| g.eval(t, nu), &[qi(1)]).unwrap();
        assert_eq!(e.value, vec![qi(6)]);
        assert_eq!(e.weights, vec![(0, q(1, 2)), (1, q(1, 2))]);
        // halfway into the left collar of vertex 1 the right simplex still has weight 1/4
        let e = extend(&k, |t, nu| g.eval(t, nu), &[q(7, 8)]).unwrap();
        assert_eq!(e.weights, vec![(0, q(3, 4)), (1, q(1, 4))]);
        assert_eq!(e.value, vec![qi(5)]);
    }

    #[test]
    fn constant_inputs() {
        let t = triangle();
        for x in [[q(1, 10), q(1, 10)], [q(1, 2), q(1, 2)], [qi(0), qi(0)], [q(1, 3), q(1, 5)]] {
            let e = extend(&t, |_, _| vec![qi(7)], &x).unwrap();
            assert_eq!(e.value, vec![qi(7)]);
            assert_eq!(e.weights.iter().map(|w| w.1.clone()).sum::<Q>(), qi(1));
        }
    }

    #[test]
    fn prefix_search_matches_exhaustive_scan() {
        let exhaustive = |lambda: &[BigInt]| {
            let full = (1u64 << lambda.len()) - 1;
            std::iter::once(full)
                .chain(ordered_faces(lambda.len()))
                .find(|&f| in_piece(lambda, &BigInt::from(6), f))
                .unwrap()
        };
        for n in 1..=4usize {
            let d = 6;
            let mut stack = vec![vec![]];
            while let Some(parts) = stack.pop() {
                let used: i64 = parts.iter().sum();
                if parts.len() == n - 1 {
                    let mut all: Vec<i64> = parts.clone();
                    all.push(d - used);
                    let lambda: Vec<BigInt> = all.iter().map(|&p| BigInt::from(p)).collect();
                    assert_eq!(piece_in_simplex(&lambda, &BigInt::from(d)), exhaustive(&lambda), "{lambda:?}");
                    continue;
                }
                for p in 0..=d - used {
                    let mut next = parts.clone();
                    next.push(p);
                    stack.push(next);
                }
            }
        }
    }

    #[test]
    fn sample_shape_is_checked() {
        let k = interval();
        assert!(AffineSamples::new(&k, vec![vec![vec![qi(1)]]]).is_err());
        assert!(AffineSamples::new(&k, vec![]).is_err());
    }
}
