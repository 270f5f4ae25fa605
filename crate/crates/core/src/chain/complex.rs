use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use super::{smith_normal_form, AbelianGroup, ChainError, IntMatrix};

/// Finite chain complex of free abelian groups `C_0 <- C_1 <- ... <- C_N`.
///
/// `boundaries[n - 1]` is `∂_n : C_n -> C_{n-1}`, a `ranks[n-1] x ranks[n]`
/// matrix acting on column vectors.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ChainComplex {
    ranks: Vec<usize>,
    boundaries: Vec<IntMatrix>,
}

impl ChainComplex {
    /// Checks shapes only. Use [`verify_complex`] for `∂∂ = 0`.
    pub fn new(ranks: Vec<usize>, boundaries: Vec<IntMatrix>) -> Result<Self, ChainError> {
        if ranks.is_empty() {
            if boundaries.is_empty() {
                return Ok(ChainComplex { ranks, boundaries });
            }
            return Err(ChainError::BoundaryCount {
                expected: 0,
                found: boundaries.len(),
            });
        }
        if boundaries.len() + 1 != ranks.len() {
            return Err(ChainError::BoundaryCount {
                expected: ranks.len() - 1,
                found: boundaries.len(),
            });
        }
        for (i, d) in boundaries.iter().enumerate() {
            let n = i + 1;
            if d.shape() != (ranks[n - 1], ranks[n]) {
                return Err(ChainError::BoundaryShape {
                    degree: n,
                    expected: (ranks[n - 1], ranks[n]),
                    found: d.shape(),
                });
            }
        }
        Ok(ChainComplex { ranks, boundaries })
    }

    /// One vertex, one edge, zero boundary.
    pub fn circle() -> Self {
        ChainComplex {
            ranks: vec![1, 1],
            boundaries: vec![IntMatrix::zeros(1, 1)],
        }
    }

    /// One point.
    pub fn point() -> Self {
        ChainComplex {
            ranks: vec![1],
            boundaries: Vec::new(),
        }
    }

    /// Standard torus: one vertex, edges `mu, lambda`, one face with zero boundary.
    pub fn torus() -> Self {
        ChainComplex {
            ranks: vec![1, 2, 1],
            boundaries: vec![IntMatrix::zeros(1, 2), IntMatrix::zeros(2, 1)],
        }
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    /// Rank of `C_n`; zero outside the stored range.
    pub fn rank(&self, n: usize) -> usize {
        self.ranks.get(n).copied().unwrap_or(0)
    }

    /// Highest stored degree, or `None` for the empty complex.
    pub fn top_degree(&self) -> Option<usize> {
        self.ranks.len().checked_sub(1)
    }

    /// `∂_n`, with the zero matrix of the right shape outside the stored range.
    pub fn boundary(&self, n: usize) -> IntMatrix {
        if n >= 1 && n <= self.boundaries.len() {
            self.boundaries[n - 1].clone()
        } else {
            IntMatrix::zeros(self.rank(n.wrapping_sub(1)), self.rank(n))
        }
    }

    /// Σ (-1)^n rank C_n.
    pub fn euler_characteristic(&self) -> i64 {
        self.ranks
            .iter()
            .enumerate()
            .map(|(n, &c)| if n % 2 == 0 { c as i64 } else { -(c as i64) })
            .sum()
    }

    /// Homology in degree `n`, with canonical generators.
    pub fn homology(&self, n: usize) -> Result<Homology, ChainError> {
        if let Some(bad) = verify_complex(self).first() {
            return Err(ChainError::NotAComplex { degree: *bad });
        }
        Ok(self.homology_unchecked(n))
    }

    /// All homology groups `H_0 ..= H_max`.
    pub fn homology_groups(&self, max: usize) -> Result<Vec<AbelianGroup>, ChainError> {
        if let Some(bad) = verify_complex(self).first() {
            return Err(ChainError::NotAComplex { degree: *bad });
        }
        Ok((0..=max).map(|n| self.homology_unchecked(n).group).collect())
    }

    pub(crate) fn homology_unchecked(&self, n: usize) -> Homology {
        let cn = self.rank(n);
        if cn == 0 {
            return Homology {
                group: AbelianGroup::trivial(),
                generators: IntMatrix::zeros(0, 0),
                coordinates: IntMatrix::zeros(0, 0),
            };
        }
        let incoming = self.boundary(n + 1);
        let outgoing = self.boundary(n);

        // Kernel of ∂_n: last (c_n - r) columns of V; coordinates from rows of V^-1.
        let s = smith_normal_form(&outgoing);
        let r = s.rank();
        let kernel_idx: Vec<usize> = (r..cn).collect();
        let kernel = s.v.select_cols(&kernel_idx);
        let to_kernel = s.v_inv.select_rows(&kernel_idx);

        // ∂_{n+1} written in the kernel basis.
        let restricted = &to_kernel * &incoming;
        let t = smith_normal_form(&restricted);
        let z = kernel_idx.len();
        let factors = t.invariant_factors();

        let mut torsion = Vec::new();
        let mut kept = Vec::new();
        for (i, d) in factors.iter().enumerate() {
            if !d.is_one() {
                torsion.push(d.clone());
                kept.push(i);
            }
        }
        let free_rank = z - factors.len();
        kept.extend(factors.len()..z);

        let generators = &kernel * &t.u_inv.select_cols(&kept);
        let coordinates = &t.u.select_rows(&kept) * &to_kernel;
        Homology {
            group: AbelianGroup { free_rank, torsion },
            generators,
            coordinates,
        }
    }
}

/// Degrees `n` where `∂_n ∂_{n+1} ≠ 0`. Empty iff the complex is valid.
pub fn verify_complex(c: &ChainComplex) -> Vec<usize> {
    let mut bad = Vec::new();
    for n in 1..c.boundaries.len() {
        let prod = &c.boundaries[n - 1] * &c.boundaries[n];
        if !prod.is_zero() {
            bad.push(n);
        }
    }
    bad
}

/// A homology group with a fixed generating set.
///
/// `generators` holds one cycle per canonical generator (columns, torsion
/// generators first). `coordinates` maps any cycle to its coordinates in that
/// generating set; torsion coordinates are meaningful modulo their order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Homology {
    pub group: AbelianGroup,
    pub generators: IntMatrix,
    pub coordinates: IntMatrix,
}

impl Homology {
    /// Coordinates of a cycle, torsion entries reduced.
    pub fn class_of(&self, cycle: &[BigInt]) -> Vec<BigInt> {
        if self.group.num_generators() == 0 {
            return Vec::new();
        }
        let mut c = self.coordinates.apply(cycle);
        self.group.reduce(&mut c);
        c
    }

    pub fn generator(&self, i: usize) -> Vec<BigInt> {
        self.generators.col(i)
    }
}

/// Per-degree matrices `f_n : C_n -> C'_n` (shape `rank C'_n x rank C_n`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainMap {
    components: Vec<IntMatrix>,
}

impl ChainMap {
    /// Checks shapes against the two complexes and that the map commutes
    /// with the boundaries.
    pub fn new(
        source: &ChainComplex,
        target: &ChainComplex,
        components: Vec<IntMatrix>,
    ) -> Result<Self, ChainError> {
        let map = ChainMap { components };
        map.validate(source, target)?;
        Ok(map)
    }

    pub fn identity(c: &ChainComplex) -> Self {
        ChainMap {
            components: c.ranks.iter().map(|&r| IntMatrix::identity(r)).collect(),
        }
    }

    pub fn component(&self, n: usize) -> Option<&IntMatrix> {
        self.components.get(n)
    }

    pub fn components(&self) -> &[IntMatrix] {
        &self.components
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &ChainMap) -> Result<ChainMap, ChainError> {
        let n = self.components.len().max(other.components.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            match (self.components.get(i), other.components.get(i)) {
                (Some(f), Some(g)) => out.push(g.checked_mul(f)?),
                (Some(f), None) => out.push(IntMatrix::zeros(0, f.cols())),
                (None, Some(g)) => out.push(IntMatrix::zeros(g.rows(), 0)),
                (None, None) => unreachable!(),
            }
        }
        Ok(ChainMap { components: out })
    }

    fn component_or_zero(&self, n: usize, rows: usize, cols: usize) -> IntMatrix {
        match self.components.get(n) {
            Some(m) => m.clone(),
            None => IntMatrix::zeros(rows, cols),
        }
    }

    pub fn validate(&self, source: &ChainComplex, target: &ChainComplex) -> Result<(), ChainError> {
        let top = source.ranks.len().max(target.ranks.len());
        for n in 0..top {
            let f = self.component_or_zero(n, target.rank(n), source.rank(n));
            if f.shape() != (target.rank(n), source.rank(n)) {
                return Err(ChainError::MapShape {
                    degree: n,
                    expected: (target.rank(n), source.rank(n)),
                    found: f.shape(),
                });
            }
        }
        for n in 1..top {
            let f_n = self.component_or_zero(n, target.rank(n), source.rank(n));
            let f_prev = self.component_or_zero(n - 1, target.rank(n - 1), source.rank(n - 1));
            let lhs = &target.boundary(n) * &f_n;
            let rhs = &f_prev * &source.boundary(n);
            if lhs != rhs {
                return Err(ChainError::NotAChainMap { degree: n });
            }
        }
        Ok(())
    }
}

/// Matrix of `H_n(f)` in the canonical generators of source and target:
/// column `j` holds the target coordinates of the image of source generator
/// `j`, torsion rows reduced.
pub fn induced_map(
    f: &ChainMap,
    source: &ChainComplex,
    target: &ChainComplex,
    n: usize,
) -> Result<IntMatrix, ChainError> {
    f.validate(source, target)?;
    let hs = source.homology(n)?;
    let ht = target.homology(n)?;
    Ok(induced_on(f, &hs, &ht, n))
}

/// Same as [`induced_map`] with precomputed homologies and no validation.
pub(crate) fn induced_on(f: &ChainMap, hs: &Homology, ht: &Homology, n: usize) -> IntMatrix {
    let rows = ht.group.num_generators();
    let cols = hs.group.num_generators();
    let mut out = IntMatrix::zeros(rows, cols);
    if rows == 0 || cols == 0 {
        return out;
    }
    let fn_ = f.component(n).expect("component present for nonempty homology");
    for j in 0..cols {
        let image = fn_.apply(&hs.generator(j));
        for (i, c) in ht.class_of(&image).into_iter().enumerate() {
            out.set(i, j, c);
        }
    }
    out
}

/// Reduces the torsion rows of a homology matrix modulo the target orders.
pub fn reduce_rows(m: &mut IntMatrix, target: &AbelianGroup) {
    for (i, d) in target.torsion.iter().enumerate() {
        for j in 0..m.cols() {
            let v = super::group::reduce_mod(m.get(i, j), d);
            m.set(i, j, v);
        }
    }
}

/// Composite of two homology matrices, `second * first`, reduced on target torsion.
pub fn compose_reduced(second: &IntMatrix, first: &IntMatrix, target: &AbelianGroup) -> IntMatrix {
    let mut m = second * first;
    reduce_rows(&mut m, target);
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(rows)
    }

    #[test]
    fn circle_homology() {
        let c = ChainComplex::circle();
        assert_eq!(c.homology(0).unwrap().group, AbelianGroup::free(1));
        assert_eq!(c.homology(1).unwrap().group, AbelianGroup::free(1));
    }

    #[test]
    fn z_mod_two() {
        let c = ChainComplex::new(vec![0, 1, 1], vec![IntMatrix::zeros(0, 1), m(&[&[2]])]).unwrap();
        let h = c.homology(1).unwrap();
        assert_eq!(h.group.torsion, vec![BigInt::from(2)]);
        assert_eq!(h.group.free_rank, 0);
    }

    #[test]
    fn torus_homology() {
        let c = ChainComplex::torus();
        assert_eq!(c.homology(1).unwrap().group, AbelianGroup::free(2));
        assert_eq!(c.homology(2).unwrap().group, AbelianGroup::free(1));
    }

    #[test]
    fn out_of_range_degree_is_empty() {
        let c = ChainComplex::circle();
        assert!(c.homology(5).unwrap().group.is_trivial());
    }

    #[test]
    fn verify_reports_failing_degree() {
        let c = ChainComplex::new(vec![1, 1, 1], vec![m(&[&[1]]), m(&[&[1]])]).unwrap();
        assert_eq!(verify_complex(&c), vec![1]);
        assert!(verify_complex(&ChainComplex::torus()).is_empty());
        assert!(matches!(c.homology(0), Err(ChainError::NotAComplex { degree: 1 })));
    }

    #[test]
    fn shape_errors() {
        assert!(ChainComplex::new(vec![1, 2], vec![m(&[&[0]])]).is_err());
        assert!(ChainComplex::new(vec![1, 2], vec![]).is_err());
    }

    #[test]
    fn degree_two_self_map_of_circle() {
        let c = ChainComplex::circle();
        let f = ChainMap::new(&c, &c, vec![m(&[&[1]]), m(&[&[2]])]).unwrap();
        assert_eq!(induced_map(&f, &c, &c, 1).unwrap(), m(&[&[2]]));
        assert_eq!(induced_map(&f, &c, &c, 0).unwrap(), m(&[&[1]]));
    }

    #[test]
    fn identity_induces_identity() {
        let c = ChainComplex::torus();
        let id = ChainMap::identity(&c);
        for n in 0..3 {
            let h = c.homology(n).unwrap().group.num_generators();
            assert_eq!(induced_map(&id, &c, &c, n).unwrap(), IntMatrix::identity(h));
        }
    }

    #[test]
    fn collapse_torus_onto_circle() {
        // kill lambda: mu -> e, lambda -> 0, face -> nothing
        let t = ChainComplex::torus();
        let c = ChainComplex::circle();
        let f = ChainMap::new(&t, &c, vec![m(&[&[1]]), m(&[&[1, 0]]), IntMatrix::zeros(0, 1)])
            .unwrap();
        let h1 = induced_map(&f, &t, &c, 1).unwrap();
        assert_eq!(h1, m(&[&[1, 0]]));
    }

    #[test]
    fn non_commuting_map_is_rejected() {
        // C: Z <-(2)- Z ; map that breaks commutation in degree 1
        let src = ChainComplex::new(vec![1, 1], vec![m(&[&[2]])]).unwrap();
        let f = ChainMap::new(&src, &src, vec![m(&[&[1]]), m(&[&[3]])]);
        assert!(matches!(f, Err(ChainError::NotAChainMap { degree: 1 })));
    }

    #[test]
    fn torsion_coordinates_reduce() {
        // H_1 = Z/4 on a single 1-cell; multiplication by 5 acts as 1.
        let c = ChainComplex::new(vec![0, 1, 1], vec![IntMatrix::zeros(0, 1), m(&[&[4]])]).unwrap();
        let f = ChainMap::new(&c, &c, vec![IntMatrix::zeros(0, 0), m(&[&[5]]), m(&[&[5]])]).unwrap();
        assert_eq!(induced_map(&f, &c, &c, 1).unwrap(), m(&[&[1]]));
    }

}
