use std::collections::HashSet;

use super::{Presentation, Word};

/// Deterministic Tietze simplification, iterated to a fixed point:
///
/// 1. cyclically reduce relators, drop empty ones and duplicates (up to
///    rotation and inversion);
/// 2. a relator `g^±1` deletes `g`;
/// 3. a relator in which `g` occurs exactly once defines `g` in terms of the
///    other generators; `g` is substituted away. Shortest relators are tried
///    first, and within a relator the highest-index generator.
pub fn tietze_simplify(p: &Presentation) -> Presentation {
    let mut names: Vec<String> = p.generators().to_vec();
    let mut rels: Vec<Word> = p.relators().to_vec();
    loop {
        rels = normalize(&rels);
        if let Some((g, def)) = find_elimination(&rels) {
            eliminate(&mut names, &mut rels, g, &def);
            continue;
        }
        break;
    }
    Presentation::new(names, rels).expect("simplification keeps indices in range")
}

fn normalize(rels: &[Word]) -> Vec<Word> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for r in rels {
        let r = r.cyclically_reduced();
        if r.is_empty() {
            continue;
        }
        if seen.insert(r.cyclic_canonical()) {
            out.push(r);
        }
    }
    out
}

/// Generator to remove and the word (in the current numbering) it equals.
fn find_elimination(rels: &[Word]) -> Option<(usize, Word)> {
    let mut order: Vec<usize> = (0..rels.len()).collect();
    order.sort_by_key(|&i| (rels[i].len(), i));
    for i in order {
        let r = &rels[i];
        let candidate = r
            .letters()
            .iter()
            .map(|l| l.generator)
            .filter(|&g| r.occurrences(g) == 1)
            .max();
        if let Some(g) = candidate {
            let pos = r
                .letters()
                .iter()
                .position(|l| l.generator == g)
                .expect("occurs once");
            let rotated = r.rotate(pos);
            let head = rotated.letters()[0];
            let rest = Word::from_letters(rotated.letters()[1..].iter().copied());
            // g^e * rest = 1
            let def = if head.inverse { rest } else { rest.inverse() };
            return Some((g, def));
        }
    }
    None
}

fn eliminate(names: &mut Vec<String>, rels: &mut Vec<Word>, g: usize, def: &Word) {
    let images: Vec<Word> = (0..names.len())
        .map(|i| if i == g { def.clone() } else { Word::generator(i) })
        .collect();
    let renumber = |i: usize| match i.cmp(&g) {
        std::cmp::Ordering::Less => Some(i),
        std::cmp::Ordering::Equal => None,
        std::cmp::Ordering::Greater => Some(i - 1),
    };
    *rels = rels
        .iter()
        .map(|r| r.substitute(&images).renumber(renumber))
        .collect();
    names.remove(g);
}
