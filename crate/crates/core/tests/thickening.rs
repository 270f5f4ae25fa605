use mdcore::par::Execution;
use mdcore::rational::{q, qi, to_f64, Q};
use mdcore::thickening::{decompose, decompose_with, extend, extend_batch, locate, PieceKind, SimplicialComplex};
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn cx(vertices: &[&[i64]], simplices: &[&[usize]]) -> SimplicialComplex {
    SimplicialComplex::new(
        vertices.iter().map(|v| v.iter().map(|&c| qi(c)).collect()).collect(),
        simplices.iter().map(|s| s.to_vec()).collect(),
    )
    .unwrap()
}

fn tetrahedron() -> SimplicialComplex {
    cx(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1]], &[&[0, 1, 2, 3]])
}

fn square_fan() -> SimplicialComplex {
    cx(
        &[&[1, 1], &[0, 0], &[2, 0], &[2, 2], &[0, 2]],
        &[&[0, 1, 2], &[0, 2, 3], &[0, 3, 4], &[0, 4, 1]],
    )
}

fn bipyramid() -> SimplicialComplex {
    cx(
        &[&[0, 0, 0], &[4, 0, 0], &[0, 4, 0], &[1, 1, 4], &[1, 1, -4]],
        &[&[0, 1, 2, 3], &[0, 1, 2, 4]],
    )
}

fn path() -> SimplicialComplex {
    cx(&[&[0], &[1], &[2], &[3]], &[&[0, 1], &[1, 2], &[2, 3]])
}

fn random_point(k: &SimplicialComplex, rng: &mut impl Rng) -> Vec<Q> {
    let t = rng.gen_range(0..k.simplices().len());
    let n = k.simplices()[t].len();
    let mut cuts: Vec<i64> = (0..n - 1).map(|_| rng.gen_range(0..=1024)).collect();
    cuts.push(0);
    cuts.push(1024);
    cuts.sort();
    let bary: Vec<Q> = cuts.windows(2).map(|w| q(w[1] - w[0], 1024)).collect();
    k.point(t, &bary)
}

/// Global quadratic plus a per-simplex bump vanishing on the boundary of the
/// simplex, so functions of neighbouring simplices agree on shared faces.
fn probe_input(k: &SimplicialComplex) -> impl Fn(usize, &[Q]) -> Vec<Q> + Sync + Send + '_ {
    move |t, nu| {
        let x = k.point(t, nu);
        let global = &x[0] * &x[0] + qi(3) * &x[0] * x.last().unwrap() - x.last().unwrap();
        let bump = nu.iter().fold(qi(t as i64 + 1), |acc, l| acc * l);
        vec![global + bump * qi(50), x[0].clone()]
    }
}

#[test]
fn piece_counts_and_volumes() {
    let point = cx(&[&[5]], &[&[0]]);
    let interval = cx(&[&[0], &[1]], &[&[0, 1]]);
    let triangle = cx(&[&[0, 0], &[1, 0], &[0, 1]], &[&[0, 1, 2]]);
    for (k, dim) in [(point, 0u32), (interval, 1), (triangle, 2), (tetrahedron(), 3)] {
        let pieces = decompose(&k);
        assert_eq!(pieces.len(), 2usize.pow(dim + 1) - 1);
        let total: Q = pieces.iter().map(|p| p.volume_fraction().unwrap()).sum();
        assert_eq!(total, Q::one());
    }
    for k in [square_fan(), bipyramid(), path()] {
        let pieces = decompose(&k);
        let n = k.simplices()[0].len() as u32;
        assert_eq!(pieces.len(), k.simplices().len() * (2usize.pow(n) - 1));
        for t in 0..k.simplices().len() {
            let total: Q = pieces.iter().filter(|p| p.simplex == t).map(|p| p.volume_fraction().unwrap()).sum();
            assert_eq!(total, Q::one());
        }
        assert_eq!(pieces, decompose_with(&k, Execution::Sequential));
    }
}

#[test]
fn coverage_and_convex_weights() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for k in [square_fan(), bipyramid(), path(), tetrahedron()] {
        let g = probe_input(&k);
        let points: Vec<Vec<Q>> = (0..1000).map(|_| random_point(&k, &mut rng)).collect();
        let seq = extend_batch(&k, &g, &points, Execution::Sequential);
        let par = extend_batch(&k, &g, &points, Execution::Parallel);
        assert_eq!(seq, par);
        for e in seq {
            let e = e.expect("every point of the complex lies in a piece");
            assert!(e.weights.iter().all(|(_, w)| *w >= Q::zero()));
            assert_eq!(e.weights.iter().map(|(_, w)| w.clone()).sum::<Q>(), Q::one());
        }
    }
}

#[test]
fn core_restriction_is_exact() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for k in [square_fan(), bipyramid(), path(), tetrahedron()] {
        let g = probe_input(&k);
        for _ in 0..300 {
            let t = rng.gen_range(0..k.simplices().len());
            let n = k.simplices()[t].len() as i64;
            let raw: Vec<i64> = (0..n).map(|_| rng.gen_range(0..=20)).collect();
            let sum: i64 = raw.iter().sum::<i64>().max(1);
            let nu: Vec<Q> = if raw.iter().all(|&r| r == 0) {
                vec![q(1, n); n as usize]
            } else {
                raw.iter().map(|&r| q(r, sum)).collect()
            };
            let lambda: Vec<Q> = nu.iter().map(|l| l / qi(2) + q(1, 2 * n)).collect();
            let e = extend(&k, &g, &k.point(t, &lambda)).unwrap();
            assert_eq!(e.location.kind, PieceKind::Core);
            assert_eq!(e.value, g(t, &nu));
        }
    }
}

fn piece_key(k: &SimplicialComplex, x: &[Q]) -> (usize, PieceKind) {
    let l = locate(k, x).unwrap();
    (l.simplex, l.kind)
}

#[test]
fn continuity_across_piece_boundaries() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let eps = q(1, 1) / Q::from_integer(num_bigint::BigInt::from(1u64 << 40));
    for k in [square_fan(), bipyramid(), path()] {
        let g = probe_input(&k);
        let mut probed = 0;
        while probed < 200 {
            let mut a = random_point(&k, &mut rng);
            let mut b = random_point(&k, &mut rng);
            if piece_key(&k, &a) == piece_key(&k, &b) {
                continue;
            }
            let ka = piece_key(&k, &a);
            while a.iter().zip(&b).any(|(x, y)| (x - y).abs() > eps) {
                let mid: Vec<Q> = a.iter().zip(&b).map(|(x, y)| (x + y) / qi(2)).collect();
                if piece_key(&k, &mid) == ka {
                    a = mid;
                } else {
                    b = mid;
                }
            }
            let va = extend(&k, &g, &a).unwrap().value;
            let vb = extend(&k, &g, &b).unwrap().value;
            for (x, y) in va.iter().zip(&vb) {
                assert!(to_f64(&(x - y)).abs() < 1e-6, "jump between {a:?} and {b:?}");
            }
            probed += 1;
        }
    }
}
