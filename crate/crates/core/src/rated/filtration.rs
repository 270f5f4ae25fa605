use std::collections::BTreeSet;

use super::model::{build_model, d2_report, hurewicz_on, structure_between, BModel, HurewiczMismatch, StructureMap};
use super::{Rate, RatedError, RatedGraph};
use crate::chain::{AbelianGroup, ChainComplex};
use crate::par::{self, Execution};
use crate::presentation::{abelianize, tietze_simplify, Presentation};
use crate::rational::Q;

/// Sorted distinct node rates; always contains 1.
pub fn jump_set(g: &RatedGraph) -> Vec<Rate> {
    let mut set: BTreeSet<Rate> = g.nodes().iter().map(|n| n.rate.clone()).collect();
    set.insert(Rate::one());
    set.into_iter().collect()
}

/// Invariants of one model.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Level {
    pub b: Rate,
    pub collapsed: Vec<String>,
    /// Simplified fundamental group.
    pub pi1: Presentation,
    pub pi1_abelian: AbelianGroup,
    /// `H_0 ..= H_max_degree`.
    pub homology: Vec<AbelianGroup>,
    pub euler_characteristic: i64,
    pub hurewicz: Option<HurewiczMismatch>,
    /// Degrees where `dd != 0`.
    pub d2_failures: Vec<usize>,
}

impl Level {
    /// Whether two levels carry the same invariants (ignoring `b`).
    pub fn same_invariants(&self, other: &Level) -> bool {
        self.collapsed == other.collapsed
            && self.pi1 == other.pi1
            && self.homology == other.homology
            && self.pi1_abelian == other.pi1_abelian
    }
}

fn level_of(m: &BModel, max_degree: usize) -> Level {
    let d2_failures = d2_report(m);
    let pi1 = tietze_simplify(m.presentation());
    let homology = if d2_failures.is_empty() {
        (0..=max_degree)
            .map(|n| m.complex().homology(n).expect("valid").group)
            .collect()
    } else {
        Vec::new()
    };
    Level {
        b: m.b().clone(),
        collapsed: m.collapsed_ids().into_iter().map(String::from).collect(),
        pi1_abelian: abelianize(&pi1),
        pi1,
        homology,
        euler_characteristic: m.complex().euler_characteristic(),
        hurewicz: if d2_failures.is_empty() { hurewicz_on(m) } else { None },
        d2_failures,
    }
}

/// Invariants at a single rate.
pub fn evaluate(g: &RatedGraph, b: &Rate, max_degree: usize) -> Level {
    level_of(&build_model(g, b), max_degree)
}

/// Whether the Euler characteristic of a complex equals the alternating sum
/// of its Betti numbers.
pub fn euler_matches(complex: &ChainComplex) -> bool {
    let top = complex.top_degree().unwrap_or(0);
    let alt: i64 = (0..=top)
        .map(|n| {
            let r = complex.homology(n).map(|h| h.group.free_rank as i64).unwrap_or(0);
            if n % 2 == 0 {
                r
            } else {
                -r
            }
        })
        .sum();
    alt == complex.euler_characteristic()
}

/// One interval `[lower, upper)` of the jump set, `upper = None` meaning
/// unbounded above.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lower: Rate,
    pub upper: Option<Rate>,
    /// Interior rates that were evaluated and found equal to `level`.
    pub samples: Vec<Rate>,
    pub level: Level,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BFiltration {
    pub jumps: Vec<Rate>,
    pub intervals: Vec<Interval>,
    pub infinity: Level,
    /// `η(b_{k+1}, b_k)` for consecutive jumps, then `η(inf, b_n)`.
    pub structure_maps: Vec<StructureMap>,
}

/// Two interior rationals of `(lo, hi)`, or of `(lo, inf)` when `hi` is `None`.
pub fn interior_samples(lo: &Rate, hi: Option<&Rate>) -> [Rate; 2] {
    let lo = lo.finite().expect("jumps are finite").clone();
    match hi.and_then(Rate::finite) {
        Some(hi) => {
            let third = (hi - &lo) / Q::from_integer(3.into());
            [Rate::Finite(&lo + &third), Rate::Finite(&lo + &third + &third)]
        }
        None => [
            Rate::Finite(&lo + Q::from_integer(1.into())),
            Rate::Finite(&lo + Q::from_integer(2.into())),
        ],
    }
}

/// Evaluates the model at every jump, at two interior rates of every
/// interval and at infinity; checks constancy on each interval and records
/// structure maps between consecutive levels.
pub fn filtration(g: &RatedGraph, max_degree: usize, exec: Execution) -> Result<BFiltration, RatedError> {
    let jumps = jump_set(g);
    let mut points: Vec<Rate> = Vec::new();
    for (k, lo) in jumps.iter().enumerate() {
        points.push(lo.clone());
        points.extend(interior_samples(lo, jumps.get(k + 1)));
    }
    points.push(Rate::Infinite);
    let models: Vec<BModel> = par::map(exec, &points, |b| build_model(g, b));
    let levels: Vec<Level> = par::map(exec, &models, |m| level_of(m, max_degree));

    let mut intervals = Vec::with_capacity(jumps.len());
    for (k, lo) in jumps.iter().enumerate() {
        let base = &levels[3 * k];
        let samples = [&levels[3 * k + 1], &levels[3 * k + 2]];
        for s in samples {
            if !s.same_invariants(base) {
                return Err(RatedError::Consistency(format!(
                    "invariants at {} differ from those at {}",
                    s.b, base.b
                )));
            }
        }
        intervals.push(Interval {
            lower: lo.clone(),
            upper: jumps.get(k + 1).cloned(),
            samples: samples.iter().map(|s| s.b.clone()).collect(),
            level: base.clone(),
        });
    }
    let infinity = levels.last().expect("infinity evaluated").clone();
    let last = intervals.last().expect("jump set nonempty");
    if !infinity.same_invariants(&last.level) {
        return Err(RatedError::Consistency(format!(
            "invariants at inf differ from those at {}",
            last.lower
        )));
    }

    let mut pairs: Vec<(usize, usize)> = (0..jumps.len().saturating_sub(1)).map(|k| (3 * (k + 1), 3 * k)).collect();
    pairs.push((models.len() - 1, 3 * (jumps.len() - 1)));
    let structure_maps = par::map(exec, &pairs, |&(hi, lo)| structure_between(g, &models[hi], &models[lo], max_degree));
    Ok(BFiltration {
        jumps,
        intervals,
        infinity,
        structure_maps,
    })
}

/// Invariants of a link considered as a `b`-cone, queried at `b_query`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BCone {
    pub pi1: Presentation,
    pub homology: AbelianGroup,
}

/// Below the cone rate every positive-degree invariant is trivial (and
/// `H_0 = Z`); at or above it the link invariants are returned.
pub fn bcone(
    link: &Presentation,
    complex: &ChainComplex,
    b: &Rate,
    b_query: &Rate,
    k: usize,
) -> Result<BCone, RatedError> {
    if b_query < b {
        let homology = if k == 0 {
            AbelianGroup::free(1)
        } else {
            AbelianGroup::trivial()
        };
        return Ok(BCone {
            pi1: Presentation::trivial(),
            homology,
        });
    }
    let homology = complex
        .homology(k)
        .map_err(|e| RatedError::LinkComplex(e.to_string()))?
        .group;
    Ok(BCone {
        pi1: tietze_simplify(link),
        homology,
    })
}
