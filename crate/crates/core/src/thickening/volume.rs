use num_traits::{Signed, Zero};

use super::complex::determinant;
use crate::rational::Q;

/// Exact volume of the convex hull of `points` in their own ambient space of
/// dimension 0..=3; `None` for higher dimensions. A point set in dimension
/// zero has volume one.
pub fn hull_volume(points: &[Vec<Q>]) -> Option<Q> {
    let mut pts: Vec<Vec<Q>> = points.to_vec();
    pts.sort();
    pts.dedup();
    let d = pts.first().map_or(0, Vec::len);
    match d {
        0 => Some(Q::from_integer(1.into())),
        1 => {
            let lo = pts.iter().map(|p| &p[0]).min()?;
            let hi = pts.iter().map(|p| &p[0]).max()?;
            Some(hi - lo)
        }
        2 => {
            let planar: Vec<(Q, Q)> = pts.iter().map(|p| (p[0].clone(), p[1].clone())).collect();
            let hull = convex_hull_2d(&planar);
            Some(shoelace(&hull))
        }
        3 => Some(volume_3d(&pts)),
        _ => None,
    }
}

fn cross2(o: &(Q, Q), a: &(Q, Q), b: &(Q, Q)) -> Q {
    (&a.0 - &o.0) * (&b.1 - &o.1) - (&a.1 - &o.1) * (&b.0 - &o.0)
}

/// Counter-clockwise hull without collinear points (monotone chain).
fn convex_hull_2d(points: &[(Q, Q)]) -> Vec<(Q, Q)> {
    let mut p = points.to_vec();
    p.sort();
    p.dedup();
    if p.len() < 3 {
        return p;
    }
    let mut lower: Vec<(Q, Q)> = Vec::new();
    for q in &p {
        while lower.len() >= 2 && cross2(&lower[lower.len() - 2], &lower[lower.len() - 1], q) <= Q::zero() {
            lower.pop();
        }
        lower.push(q.clone());
    }
    let mut upper: Vec<(Q, Q)> = Vec::new();
    for q in p.iter().rev() {
        while upper.len() >= 2 && cross2(&upper[upper.len() - 2], &upper[upper.len() - 1], q) <= Q::zero() {
            upper.pop();
        }
        upper.push(q.clone());
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

fn shoelace(poly: &[(Q, Q)]) -> Q {
    if poly.len() < 3 {
        return Q::zero();
    }
    let mut twice = Q::zero();
    for i in 0..poly.len() {
        let (a, b) = (&poly[i], &poly[(i + 1) % poly.len()]);
        twice += &a.0 * &b.1 - &a.1 * &b.0;
    }
    twice.abs() / Q::from_integer(2.into())
}

fn sub(a: &[Q], b: &[Q]) -> Vec<Q> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn dot(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn cross3(a: &[Q], b: &[Q]) -> Vec<Q> {
    vec![
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

/// Finds every supporting plane through three of the points, orders the
/// points on it into a polygon and sums cones from the centroid.
fn volume_3d(pts: &[Vec<Q>]) -> Q {
    let n = pts.len();
    let centroid: Vec<Q> = (0..3)
        .map(|c| pts.iter().map(|p| p[c].clone()).sum::<Q>() / Q::from_integer(n.into()))
        .collect();
    let mut facets: Vec<Vec<usize>> = Vec::new();
    let mut total = Q::zero();
    for i in 0..n {
        for j in i + 1..n {
            for l in j + 1..n {
                let normal = cross3(&sub(&pts[j], &pts[i]), &sub(&pts[l], &pts[i]));
                if normal.iter().all(Zero::is_zero) {
                    continue;
                }
                let side: Vec<Q> = pts.iter().map(|p| dot(&normal, &sub(p, &pts[i]))).collect();
                let pos = side.iter().any(|s| s.is_positive());
                let neg = side.iter().any(|s| s.is_negative());
                if pos && neg || !pos && !neg {
                    continue;
                }
                let on: Vec<usize> = (0..n).filter(|&m| side[m].is_zero()).collect();
                if facets.contains(&on) {
                    continue;
                }
                // drop the axis where the normal is largest to get a faithful 2-d image
                let drop = (0..3).max_by_key(|&c| normal[c].abs()).expect("three axes");
                let keep: Vec<usize> = (0..3).filter(|&c| c != drop).collect();
                let planar: Vec<(Q, Q)> = on
                    .iter()
                    .map(|&m| (pts[m][keep[0]].clone(), pts[m][keep[1]].clone()))
                    .collect();
                let ring = convex_hull_2d(&planar);
                let lift = |q: &(Q, Q)| -> &Vec<Q> {
                    let idx = planar.iter().position(|p| p == q).expect("hull point");
                    &pts[on[idx]]
                };
                let apex = lift(&ring[0]);
                for w in ring[1..].windows(2) {
                    let rows = vec![
                        sub(apex, &centroid),
                        sub(lift(&w[0]), &centroid),
                        sub(lift(&w[1]), &centroid),
                    ];
                    total += determinant(rows).abs();
                }
                facets.push(on);
            }
        }
    }
    total / Q::from_integer(6.into())
}
