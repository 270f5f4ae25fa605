//! Finitely presented groups.
//!
//! Group isomorphism is undecidable, so nothing here tries to decide it.
//! Comparisons go through abelianizations or through literal presentations
//! after the deterministic [`tietze_simplify`].

mod graph;
mod parse;
mod tietze;
mod word;

pub use graph::{graph_of_groups, GroupEdge};
pub use parse::{parse_word, ParseWordError};
pub use tietze::tietze_simplify;
pub use word::{Letter, Word, WordDisplay};

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::chain::{smith_normal_form, AbelianGroup, IntMatrix};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PresentationError {
    #[error("relator {relator} uses generator {generator}, but only {count} generators exist")]
    GeneratorOutOfRange {
        relator: usize,
        generator: usize,
        count: usize,
    },
    #[error("homomorphism has {found} images, expected {expected}")]
    Arity { expected: usize, found: usize },
    #[error("image of generator {generator} uses generator {used} outside the target rank {rank}")]
    ImageOutOfRange {
        generator: usize,
        used: usize,
        rank: usize,
    },
    #[error("the graph of groups is not connected (node {0} unreachable)")]
    Disconnected(usize),
    #[error("edge {edge} refers to node {node}, but there are {count} nodes")]
    EdgeEndpoint { edge: usize, node: usize, count: usize },
    #[error("edge {edge} end {end}: {source}")]
    EdgeWord {
        edge: usize,
        end: usize,
        #[source]
        source: Box<PresentationError>,
    },
    #[error("graph of groups has no nodes")]
    Empty,
    #[error("relator {0} is not sent into the relation lattice of the target")]
    RelatorNotPreserved(usize),
}

/// `< generators | relators >`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Presentation {
    generators: Vec<String>,
    relators: Vec<Word>,
}

impl Presentation {
    pub fn new(generators: Vec<String>, relators: Vec<Word>) -> Result<Self, PresentationError> {
        let count = generators.len();
        for (i, r) in relators.iter().enumerate() {
            if let Some(g) = r.max_generator().filter(|&g| g >= count) {
                return Err(PresentationError::GeneratorOutOfRange {
                    relator: i,
                    generator: g,
                    count,
                });
            }
        }
        Ok(Presentation {
            generators,
            relators,
        })
    }

    /// Free group on the given names.
    pub fn free<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Self {
        Presentation {
            generators: names.into_iter().map(Into::into).collect(),
            relators: Vec::new(),
        }
    }

    /// Trivial group `< | >`.
    pub fn trivial() -> Self {
        Presentation::default()
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g == name)
    }

    /// Parses a word over this presentation's generator names.
    pub fn parse_word(&self, s: &str) -> Result<Word, ParseWordError> {
        parse_word(s, &self.generators)
    }

    /// Same group with every generator name rewritten.
    pub fn renamed(&self, f: impl Fn(&str) -> String) -> Self {
        Presentation {
            generators: self.generators.iter().map(|g| f(g)).collect(),
            relators: self.relators.clone(),
        }
    }

    /// Exponent-sum matrix: one column per relator.
    pub fn relation_matrix(&self) -> IntMatrix {
        let g = self.generators.len();
        let mut m = IntMatrix::zeros(g, self.relators.len());
        for (j, r) in self.relators.iter().enumerate() {
            for (i, e) in r.exponent_vector(g).into_iter().enumerate() {
                if e != 0 {
                    m.set(i, j, BigInt::from(e));
                }
            }
        }
        m
    }

    pub fn display_word<'a>(&'a self, w: &'a Word) -> WordDisplay<'a> {
        w.display_with(&self.generators)
    }

    /// Relators as strings, in order.
    pub fn relator_strings(&self) -> Vec<String> {
        self.relators
            .iter()
            .map(|r| r.display_with(&self.generators).to_string())
            .collect()
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "< {}", self.generators.join(", "))?;
        if self.relators.is_empty() {
            write!(f, " | >")
        } else {
            write!(f, " | {} >", self.relator_strings().join(", "))
        }
    }
}

/// `Z^g / (exponent-sum columns of the relators)`.
pub fn abelianize(p: &Presentation) -> AbelianGroup {
    AbelianGroup::from_relation_matrix(&p.relation_matrix())
}

/// `P` with the killed words appended as relators.
pub fn quotient(p: &Presentation, killed: &[Word]) -> Result<Presentation, PresentationError> {
    let mut relators = p.relators.clone();
    relators.extend(killed.iter().cloned());
    Presentation::new(p.generators.clone(), relators)
}

/// Homomorphism given by the image of each source generator.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupHom {
    target_rank: usize,
    images: Vec<Word>,
}

impl GroupHom {
    pub fn new(target_rank: usize, images: Vec<Word>) -> Result<Self, PresentationError> {
        for (g, w) in images.iter().enumerate() {
            if let Some(used) = w.max_generator().filter(|&u| u >= target_rank) {
                return Err(PresentationError::ImageOutOfRange {
                    generator: g,
                    used,
                    rank: target_rank,
                });
            }
        }
        Ok(GroupHom {
            target_rank,
            images,
        })
    }

    pub fn identity(rank: usize) -> Self {
        GroupHom {
            target_rank: rank,
            images: (0..rank).map(Word::generator).collect(),
        }
    }

    pub fn source_rank(&self) -> usize {
        self.images.len()
    }

    pub fn target_rank(&self) -> usize {
        self.target_rank
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    pub fn image(&self, g: usize) -> &Word {
        &self.images[g]
    }

    pub fn apply(&self, w: &Word) -> Word {
        w.substitute(&self.images)
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &GroupHom) -> Result<GroupHom, PresentationError> {
        if other.source_rank() != self.target_rank {
            return Err(PresentationError::Arity {
                expected: self.target_rank,
                found: other.source_rank(),
            });
        }
        Ok(GroupHom {
            target_rank: other.target_rank,
            images: self.images.iter().map(|w| other.apply(w)).collect(),
        })
    }

    /// Abelianized action on exponent vectors (`target x source`).
    pub fn abelian_matrix(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.target_rank, self.images.len());
        for (j, w) in self.images.iter().enumerate() {
            for (i, e) in w.exponent_vector(self.target_rank).into_iter().enumerate() {
                if e != 0 {
                    m.set(i, j, BigInt::from(e));
                }
            }
        }
        m
    }

    /// Exponent-sum check that every source relator maps into the relation
    /// lattice of the target. This is necessary but not sufficient for the
    /// map to be a homomorphism of the presented groups.
    pub fn check_abelian(
        &self,
        source: &Presentation,
        target: &Presentation,
    ) -> Result<(), PresentationError> {
        if self.images.len() != source.num_generators() {
            return Err(PresentationError::Arity {
                expected: source.num_generators(),
                found: self.images.len(),
            });
        }
        if self.target_rank != target.num_generators() {
            return Err(PresentationError::Arity {
                expected: target.num_generators(),
                found: self.target_rank,
            });
        }
        let lattice = target.relation_matrix();
        let snf = smith_normal_form(&lattice);
        let factors = snf.invariant_factors();
        for (k, r) in source.relators().iter().enumerate() {
            let image = self.apply(r);
            let v: Vec<BigInt> = image
                .exponent_vector(self.target_rank)
                .into_iter()
                .map(BigInt::from)
                .collect();
            let coords = snf.u.apply(&v);
            let inside = coords.iter().enumerate().all(|(i, c)| match factors.get(i) {
                Some(d) => c.is_multiple_of(d),
                None => c.is_zero(),
            });
            if !inside {
                return Err(PresentationError::RelatorNotPreserved(k));
            }
        }
        Ok(())
    }
}

/// Fundamental group of the mapping torus of a rank-`r` free group
/// automorphism: `< x1..xr, t | t xi t^-1 phi(xi)^-1 >`. The base generator
/// `t` is last.
pub fn mapping_torus(fiber_rank: usize, phi: &GroupHom) -> Result<Presentation, PresentationError> {
    if phi.source_rank() != fiber_rank || phi.target_rank() != fiber_rank {
        return Err(PresentationError::Arity {
            expected: fiber_rank,
            found: if phi.source_rank() != fiber_rank {
                phi.source_rank()
            } else {
                phi.target_rank()
            },
        });
    }
    let t = Word::generator(fiber_rank);
    let mut names: Vec<String> = (1..=fiber_rank).map(|i| format!("x{i}")).collect();
    names.push("t".to_string());
    let relators = (0..fiber_rank)
        .map(|i| {
            Word::generator(i)
                .conjugate_by(&t)
                .concat(&phi.image(i).inverse())
        })
        .collect();
    Presentation::new(names, relators)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pres(names: &[&str], rels: &[&str]) -> Presentation {
        let names: Vec<String> = names.iter().map(|s| s.to_string()).collect();
        let rels = rels.iter().map(|r| parse_word(r, &names).unwrap()).collect();
        Presentation::new(names, rels).unwrap()
    }

    fn ab(free: usize, torsion: &[i64]) -> AbelianGroup {
        AbelianGroup {
            free_rank: free,
            torsion: torsion.iter().map(|&d| BigInt::from(d)).collect(),
        }
    }

    #[test]
    fn abelianize_examples() {
        assert_eq!(abelianize(&pres(&["a", "b"], &["a*b*a^-1*b^-1"])), ab(2, &[]));
        assert_eq!(abelianize(&pres(&["a"], &["a^3"])), ab(0, &[3]));
        // column (2, -3): gcd 1, so Z
        assert_eq!(abelianize(&pres(&["x", "y"], &["x^2*y^-3"])), ab(1, &[]));
    }

    #[test]
    fn relator_range_is_checked() {
        let r = Presentation::new(vec!["a".into()], vec![Word::generator(1)]);
        assert!(matches!(r, Err(PresentationError::GeneratorOutOfRange { .. })));
    }

    #[test]
    fn mapping_torus_identity() {
        let p = mapping_torus(1, &GroupHom::identity(1)).unwrap();
        assert_eq!(p.to_string(), "< x1, t | t*x1*t^-1*x1^-1 >");
        assert_eq!(abelianize(&p), ab(2, &[]));
    }

    #[test]
    fn mapping_torus_inversion_is_klein_bottle() {
        let phi = GroupHom::new(1, vec![Word::generator_inverse(0)]).unwrap();
        let p = mapping_torus(1, &phi).unwrap();
        assert_eq!(p.to_string(), "< x1, t | t*x1*t^-1*x1 >");
        assert_eq!(abelianize(&p), ab(1, &[2]));
    }

    #[test]
    fn mapping_torus_swap() {
        let phi = GroupHom::new(2, vec![Word::generator(1), Word::generator(0)]).unwrap();
        let p = mapping_torus(2, &phi).unwrap();
        assert_eq!(p.num_generators(), 3);
        assert_eq!(p.relators().len(), 2);
        assert_eq!(abelianize(&p), ab(2, &[]));
    }

    #[test]
    fn mapping_torus_arity_mismatch() {
        assert!(mapping_torus(2, &GroupHom::identity(1)).is_err());
    }

    #[test]
    fn identity_torus_abelianizes_free() {
        for r in 0..5 {
            let p = mapping_torus(r, &GroupHom::identity(r)).unwrap();
            assert_eq!(abelianize(&p), ab(r + 1, &[]));
        }
    }

    #[test]
    fn quotient_examples() {
        let p = pres(&["a", "b"], &[]);
        let q = quotient(&p, &[Word::generator(0)]).unwrap();
        assert_eq!(q.to_string(), "< a, b | a >");
        assert_eq!(abelianize(&q), ab(1, &[]));
        assert_eq!(quotient(&p, &[]).unwrap(), p);

        let t = pres(&["x", "t"], &["t*x*t^-1*x^-1"]);
        assert_eq!(abelianize(&quotient(&t, &[Word::generator(0)]).unwrap()), ab(1, &[]));

        let c = pres(&["a"], &[]);
        let q = quotient(&c, &[Word::from_powers(&[(0, 2)])]).unwrap();
        assert_eq!(abelianize(&q), ab(0, &[2]));
    }

    #[test]
    fn abelian_relator_check() {
        // Z/4 -> Z/2 by a -> b is fine; Z/4 -> Z/3 is not.
        let z4 = pres(&["a"], &["a^4"]);
        let z2 = pres(&["b"], &["b^2"]);
        let z3 = pres(&["b"], &["b^3"]);
        let h = GroupHom::new(1, vec![Word::generator(0)]).unwrap();
        assert!(h.check_abelian(&z4, &z2).is_ok());
        assert_eq!(
            h.check_abelian(&z4, &z3),
            Err(PresentationError::RelatorNotPreserved(0))
        );
    }

    #[test]
    fn hom_composition() {
        let f = GroupHom::new(2, vec![Word::from_powers(&[(0, 1), (1, 1)])]).unwrap();
        let g = GroupHom::new(1, vec![Word::generator(0), Word::generator_inverse(0)]).unwrap();
        let gf = f.then(&g).unwrap();
        assert!(gf.image(0).is_empty());
    }
}
