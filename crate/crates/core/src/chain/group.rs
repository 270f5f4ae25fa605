use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{smith_normal_form, IntMatrix};

/// Finitely generated abelian group `Z^free_rank ⊕ Z/d1 ⊕ ... ⊕ Z/dk`
/// with `1 < d1 | d2 | ... | dk`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AbelianGroup {
    pub free_rank: usize,
    #[serde(with = "super::bigstr")]
    pub torsion: Vec<BigInt>,
}

impl AbelianGroup {
    pub fn trivial() -> Self {
        AbelianGroup {
            free_rank: 0,
            torsion: Vec::new(),
        }
    }

    pub fn free(rank: usize) -> Self {
        AbelianGroup {
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    /// `Z^generators / (column span of relations)`.
    pub fn from_relation_matrix(relations: &IntMatrix) -> Self {
        let snf = smith_normal_form(relations);
        let torsion = snf
            .invariant_factors()
            .into_iter()
            .filter(|d| !d.is_one())
            .collect();
        AbelianGroup {
            free_rank: relations.rows() - snf.rank(),
            torsion,
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Number of generators in the canonical generating set (torsion first).
    pub fn num_generators(&self) -> usize {
        self.torsion.len() + self.free_rank
    }

    /// Checks `1 < d1 | d2 | ...`.
    pub fn is_normalized(&self) -> bool {
        self.torsion.iter().all(|d| d > &BigInt::one())
            && self.torsion.windows(2).all(|w| w[1].is_multiple_of(&w[0]))
    }

    /// Order of the i-th canonical generator; `None` for free generators.
    pub fn generator_order(&self, i: usize) -> Option<&BigInt> {
        self.torsion.get(i)
    }

    /// Reduces torsion coordinates into `[0, d)`.
    pub fn reduce(&self, coords: &mut [BigInt]) {
        for (c, d) in coords.iter_mut().zip(&self.torsion) {
            *c = c.mod_floor(d);
        }
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        // group equal torsion factors: Z/2^2 means Z/2 + Z/2
        let mut i = 0;
        while i < self.torsion.len() {
            let d = &self.torsion[i];
            let mut j = i;
            while j < self.torsion.len() && &self.torsion[j] == d {
                j += 1;
            }
            if j - i == 1 {
                parts.push(format!("Z/{d}"));
            } else {
                parts.push(format!("(Z/{d})^{}", j - i));
            }
            i = j;
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// Exponent vector helper: nonnegative residue of `x` mod `d` when `d` is
/// nonzero, `x` itself otherwise.
pub(crate) fn reduce_mod(x: &BigInt, d: &BigInt) -> BigInt {
    if d.is_zero() {
        x.clone()
    } else {
        x.mod_floor(&d.abs())
    }
}
