use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::ThickeningError;
use crate::rational::Q;

/// Geometric simplicial complex given by its maximal simplices. All maximal
/// simplices must have the same dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    ambient_dim: usize,
    vertices: Vec<Vec<Q>>,
    simplices: Vec<Vec<usize>>,
    frames: Vec<Frame>,
}

/// Precomputed solve for barycentric coordinates in one simplex, scaled to
/// integers: `lambda = coords * (x, 1) / scale`, valid when every row of
/// `hull * (x, 1)` vanishes.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Frame {
    coords: Vec<Vec<BigInt>>,
    hull: Vec<Vec<BigInt>>,
    scale: BigInt,
}

/// Barycentric coordinates `nums / den` over a common positive denominator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct ScaledBary {
    pub nums: Vec<BigInt>,
    pub den: BigInt,
}

impl ScaledBary {
    pub fn to_rational(&self) -> Vec<Q> {
        self.nums.iter().map(|n| Q::new(n.clone(), self.den.clone())).collect()
    }
}

fn common_denominator<'a>(qs: impl IntoIterator<Item = &'a Q>) -> BigInt {
    qs.into_iter().fold(BigInt::one(), |l, q| l.lcm(q.denom()))
}

fn scale_row(row: &[Q], by: &BigInt) -> Vec<BigInt> {
    row.iter().map(|q| (q * Q::from_integer(by.clone())).to_integer()).collect()
}

impl Frame {
    fn new(vertices: &[Vec<Q>], s: &[usize], ambient_dim: usize) -> Frame {
        let n = s.len();
        let m = ambient_dim + 1;
        // [A | I] with A the (x, 1) system
        let rows: Vec<Vec<Q>> = (0..m)
            .map(|r| {
                let mut row: Vec<Q> = if r < ambient_dim {
                    s.iter().map(|&v| vertices[v][r].clone()).collect()
                } else {
                    vec![Q::one(); n]
                };
                row.extend((0..m).map(|c| if c == r { Q::one() } else { Q::zero() }));
                row
            })
            .collect();
        let (rows, rank) = row_echelon_cols(rows, n);
        let mut coords = vec![Vec::new(); n];
        let mut hull = Vec::new();
        for (i, row) in rows.into_iter().enumerate() {
            let tail = row[n..].to_vec();
            if i < rank {
                let c = row[..n].iter().position(|x| !x.is_zero()).expect("pivot row");
                coords[c] = tail;
            } else {
                hull.push(tail);
            }
        }
        let scale = common_denominator(coords.iter().flatten());
        Frame {
            coords: coords.iter().map(|r| scale_row(r, &scale)).collect(),
            hull: hull.iter().map(|r| scale_row(r, &common_denominator(r))).collect(),
            scale,
        }
    }

    fn solve(&self, x: &[Q]) -> Option<ScaledBary> {
        let d = common_denominator(x);
        let xs: Vec<BigInt> = x.iter().map(|q| q.numer() * (&d / q.denom())).collect();
        let dot = |row: &[BigInt]| -> BigInt {
            let (last, head) = row.split_last().expect("nonempty");
            head.iter().zip(&xs).map(|(a, b)| a * b).sum::<BigInt>() + last * &d
        };
        if self.hull.iter().any(|r| !dot(r).is_zero()) {
            return None;
        }
        Some(ScaledBary {
            nums: self.coords.iter().map(|r| dot(r)).collect(),
            den: &self.scale * d,
        })
    }
}

impl SimplicialComplex {
    /// Vertex lists of `simplices` are sorted on construction.
    pub fn new(vertices: Vec<Vec<Q>>, simplices: Vec<Vec<usize>>) -> Result<Self, ThickeningError> {
        let ambient_dim = vertices.first().map(Vec::len).ok_or(ThickeningError::Empty)?;
        if simplices.is_empty() {
            return Err(ThickeningError::Empty);
        }
        for (i, v) in vertices.iter().enumerate() {
            if v.len() != ambient_dim {
                return Err(ThickeningError::VertexDimension {
                    vertex: i,
                    expected: ambient_dim,
                    found: v.len(),
                });
            }
        }
        for a in 0..vertices.len() {
            for b in a + 1..vertices.len() {
                if vertices[a] == vertices[b] {
                    return Err(ThickeningError::CoincidentVertices(a, b));
                }
            }
        }
        let mut sorted = Vec::with_capacity(simplices.len());
        for (i, s) in simplices.into_iter().enumerate() {
            let mut s = s;
            s.sort_unstable();
            if s.is_empty() {
                return Err(ThickeningError::Empty);
            }
            if let Some(&v) = s.iter().find(|&&v| v >= vertices.len()) {
                return Err(ThickeningError::VertexOutOfRange { simplex: i, vertex: v });
            }
            if s.windows(2).any(|w| w[0] == w[1]) {
                return Err(ThickeningError::RepeatedVertex { simplex: i });
            }
            let pts: Vec<&Vec<Q>> = s.iter().map(|&v| &vertices[v]).collect();
            if affine_rank(&pts) != s.len() - 1 {
                return Err(ThickeningError::Degenerate { simplex: i });
            }
            sorted.push(s);
        }
        let dim = sorted[0].len() - 1;
        for (i, s) in sorted.iter().enumerate() {
            if s.len() - 1 != dim {
                return Err(ThickeningError::NotPure {
                    simplex: i,
                    dim: s.len() - 1,
                    expected: dim,
                });
            }
            if let Some(j) = (0..i).find(|&j| sorted[j] == *s) {
                return Err(ThickeningError::DuplicateSimplex { simplex: i, other: j });
            }
        }
        let frames = sorted.iter().map(|s| Frame::new(&vertices, s, ambient_dim)).collect();
        Ok(SimplicialComplex {
            ambient_dim,
            vertices,
            simplices: sorted,
            frames,
        })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// Dimension of every maximal simplex.
    pub fn dimension(&self) -> usize {
        self.simplices[0].len() - 1
    }

    pub fn vertices(&self) -> &[Vec<Q>] {
        &self.vertices
    }

    pub fn simplices(&self) -> &[Vec<usize>] {
        &self.simplices
    }

    /// Maximal simplices containing every vertex of `face`, in index order.
    pub fn star(&self, face: &[usize]) -> Vec<usize> {
        (0..self.simplices.len())
            .filter(|&t| face.iter().all(|v| self.simplices[t].binary_search(v).is_ok()))
            .collect()
    }

    /// Ambient point with barycentric coordinates `bary` in simplex `t`.
    pub fn point(&self, t: usize, bary: &[Q]) -> Vec<Q> {
        let mut x = vec![Q::zero(); self.ambient_dim];
        for (&v, l) in self.simplices[t].iter().zip(bary) {
            for (xc, vc) in x.iter_mut().zip(&self.vertices[v]) {
                *xc += l * vc;
            }
        }
        x
    }

    /// Barycentric coordinates of `x` in the affine hull of simplex `t`, or
    /// `None` if `x` is off that hull. Coordinates may be negative.
    pub fn barycentric(&self, t: usize, x: &[Q]) -> Option<Vec<Q>> {
        self.frames[t].solve(x).map(|b| b.to_rational())
    }

    pub(crate) fn barycentric_scaled(&self, t: usize, x: &[Q]) -> Option<ScaledBary> {
        self.frames[t].solve(x)
    }

    /// Euclidean volume of simplex `t` when it is full-dimensional.
    pub fn simplex_volume(&self, t: usize) -> Option<Q> {
        let k = self.dimension();
        if k != self.ambient_dim {
            return None;
        }
        let s = &self.simplices[t];
        let rows: Vec<Vec<Q>> = s[1..]
            .iter()
            .map(|&v| {
                (0..k)
                    .map(|c| &self.vertices[v][c] - &self.vertices[s[0]][c])
                    .collect()
            })
            .collect();
        Some(determinant(rows).abs() / factorial(k))
    }
}

pub(crate) fn factorial(k: usize) -> Q {
    (1..=k).fold(Q::one(), |acc, i| acc * Q::from_integer(i.into()))
}

fn affine_rank(points: &[&Vec<Q>]) -> usize {
    let Some((first, rest)) = points.split_first() else {
        return 0;
    };
    let rows: Vec<Vec<Q>> = rest
        .iter()
        .map(|p| p.iter().zip(first.iter()).map(|(a, b)| a - b).collect())
        .collect();
    row_echelon(rows).1
}

/// Gaussian elimination in place; returns the echelon form and its rank.
fn row_echelon(rows: Vec<Vec<Q>>) -> (Vec<Vec<Q>>, usize) {
    let cols = rows.first().map_or(0, Vec::len);
    row_echelon_cols(rows, cols)
}

/// Reduced echelon form pivoting only in the first `cols` columns.
fn row_echelon_cols(mut rows: Vec<Vec<Q>>, cols: usize) -> (Vec<Vec<Q>>, usize) {
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let pivot = rows[r][c].clone();
        for x in rows[r].iter_mut() {
            *x = &*x / &pivot;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                let pr = rows[r].clone();
                for (x, y) in rows[i].iter_mut().zip(pr) {
                    *x -= &f * y;
                }
            }
        }
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    (rows, r)
}

pub(crate) fn determinant(mut rows: Vec<Vec<Q>>) -> Q {
    let n = rows.len();
    let mut det = Q::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !rows[i][c].is_zero()) else {
            return Q::zero();
        };
        if p != c {
            rows.swap(p, c);
            det = -det;
        }
        det *= &rows[c][c];
        for i in c + 1..n {
            if !rows[i][c].is_zero() {
                let f = &rows[i][c] / &rows[c][c];
                let pr = rows[c].clone();
                for (x, y) in rows[i].iter_mut().zip(pr) {
                    *x -= &f * y;
                }
            }
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qi};

    fn triangle() -> SimplicialComplex {
        SimplicialComplex::new(
            vec![vec![qi(0), qi(0)], vec![qi(1), qi(0)], vec![qi(0), qi(1)]],
            vec![vec![2, 0, 1]],
        )
        .unwrap()
    }

    #[test]
    fn barycentric_round_trip() {
        let k = triangle();
        assert_eq!(k.simplices()[0], vec![0, 1, 2]);
        let x = vec![q(1, 4), q(1, 3)];
        let b = k.barycentric(0, &x).unwrap();
        assert_eq!(b, vec![q(5, 12), q(1, 4), q(1, 3)]);
        assert_eq!(k.point(0, &b), x);
        assert_eq!(k.simplex_volume(0), Some(q(1, 2)));
    }

    #[test]
    fn off_hull_point() {
        let k = SimplicialComplex::new(
            vec![vec![qi(0), qi(0)], vec![qi(1), qi(0)]],
            vec![vec![0, 1]],
        )
        .unwrap();
        assert!(k.barycentric(0, &[q(1, 2), q(1, 5)]).is_none());
        assert_eq!(k.barycentric(0, &[q(1, 2), qi(0)]), Some(vec![q(1, 2), q(1, 2)]));
        assert_eq!(k.simplex_volume(0), None);
    }

    #[test]
    fn validation() {
        let v = vec![vec![qi(0)], vec![qi(1)], vec![qi(2)]];
        assert_eq!(
            SimplicialComplex::new(v.clone(), vec![vec![0, 1, 2]]),
            Err(ThickeningError::Degenerate { simplex: 0 })
        );
        assert_eq!(
            SimplicialComplex::new(v.clone(), vec![vec![0, 1], vec![2]]),
            Err(ThickeningError::NotPure { simplex: 1, dim: 0, expected: 1 })
        );
        assert_eq!(
            SimplicialComplex::new(v.clone(), vec![vec![0, 1], vec![1, 0]]),
            Err(ThickeningError::DuplicateSimplex { simplex: 1, other: 0 })
        );
        assert_eq!(
            SimplicialComplex::new(v.clone(), vec![vec![0, 3]]),
            Err(ThickeningError::VertexOutOfRange { simplex: 0, vertex: 3 })
        );
        assert_eq!(
            SimplicialComplex::new(vec![vec![qi(0)], vec![qi(0)]], vec![vec![0, 1]]),
            Err(ThickeningError::CoincidentVertices(0, 1))
        );
    }

    #[test]
    fn determinant_matches_hand_value() {
        let m = vec![
            vec![qi(2), qi(0), qi(1)],
            vec![qi(1), qi(3), qi(2)],
            vec![qi(1), qi(1), qi(2)],
        ];
        assert_eq!(determinant(m), qi(6));
    }
}
