use std::fmt;

use serde::{Deserialize, Serialize};

/// A generator or its inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(generator: usize, inverse: bool) -> Self {
        Letter { generator, inverse }
    }

    pub fn inv(self) -> Self {
        Letter {
            generator: self.generator,
            inverse: !self.inverse,
        }
    }

    pub fn exponent(self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }

    fn cancels(self, other: Letter) -> bool {
        self.generator == other.generator && self.inverse != other.inverse
    }
}

/// Freely reduced word in the generators of some presentation.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn generator(g: usize) -> Self {
        Word(vec![Letter::new(g, false)])
    }

    pub fn generator_inverse(g: usize) -> Self {
        Word(vec![Letter::new(g, true)])
    }

    /// Freely reduces the given letters.
    pub fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            match out.last() {
                Some(&prev) if prev.cancels(l) => {
                    out.pop();
                }
                _ => out.push(l),
            }
        }
        Word(out)
    }

    /// From `(generator, exponent)` pairs; any nonzero exponent is expanded.
    pub fn from_powers(powers: &[(usize, i64)]) -> Self {
        Word::from_letters(powers.iter().flat_map(|&(g, e)| {
            std::iter::repeat(Letter::new(g, e < 0)).take(e.unsigned_abs() as usize)
        }))
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inv()).collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        Word::from_letters(self.0.iter().chain(other.0.iter()).copied())
    }

    /// `a * b * a^-1`.
    pub fn conjugate_by(&self, a: &Word) -> Word {
        a.concat(self).concat(&a.inverse())
    }

    /// Commutator `a b a^-1 b^-1`.
    pub fn commutator(a: &Word, b: &Word) -> Word {
        a.concat(b).concat(&a.inverse()).concat(&b.inverse())
    }

    /// Sum of exponents of generator `g`.
    pub fn exponent_sum(&self, g: usize) -> i64 {
        self.0
            .iter()
            .filter(|l| l.generator == g)
            .map(|l| l.exponent())
            .sum()
    }

    /// Exponent-sum vector over `n` generators.
    pub fn exponent_vector(&self, n: usize) -> Vec<i64> {
        let mut v = vec![0; n];
        for l in &self.0 {
            v[l.generator] += l.exponent();
        }
        v
    }

    pub fn max_generator(&self) -> Option<usize> {
        self.0.iter().map(|l| l.generator).max()
    }

    pub fn occurrences(&self, g: usize) -> usize {
        self.0.iter().filter(|l| l.generator == g).count()
    }

    /// Replaces every letter by a word; `images[g]` is the image of generator `g`.
    pub fn substitute(&self, images: &[Word]) -> Word {
        Word::from_letters(self.0.iter().flat_map(|l| {
            let w = &images[l.generator];
            if l.inverse {
                w.inverse().0
            } else {
                w.0.clone()
            }
        }))
    }

    /// Renumbers generators through `map`; `None` deletes the letter.
    pub fn renumber(&self, map: impl Fn(usize) -> Option<usize>) -> Word {
        Word::from_letters(
            self.0
                .iter()
                .filter_map(|l| map(l.generator).map(|g| Letter::new(g, l.inverse))),
        )
    }

    /// Shifts every generator index by `offset`.
    pub fn shifted(&self, offset: usize) -> Word {
        Word(
            self.0
                .iter()
                .map(|l| Letter::new(l.generator + offset, l.inverse))
                .collect(),
        )
    }

    /// Cyclically reduced form (strips matching first/last letters).
    pub fn cyclically_reduced(&self) -> Word {
        let mut lo = 0;
        let mut hi = self.0.len();
        while hi - lo >= 2 && self.0[lo].cancels(self.0[hi - 1]) {
            lo += 1;
            hi -= 1;
        }
        Word(self.0[lo..hi].to_vec())
    }

    /// Rotation starting at letter `k`.
    pub fn rotate(&self, k: usize) -> Word {
        let mut v = self.0[k..].to_vec();
        v.extend_from_slice(&self.0[..k]);
        Word::from_letters(v)
    }

    /// Canonical representative among all cyclic rotations of the word and
    /// of its inverse. Equal canonical forms mean the two relators have the
    /// same normal closure.
    pub fn cyclic_canonical(&self) -> Word {
        let w = self.cyclically_reduced();
        if w.is_empty() {
            return w;
        }
        let inv = w.inverse();
        (0..w.len())
            .flat_map(|k| [w.rotate(k), inv.rotate(k)])
            .min()
            .expect("nonempty")
    }

    /// Formats with the given generator names, e.g. `a^2*b^-1*a`; `1` when empty.
    pub fn display_with<'a>(&'a self, names: &'a [String]) -> WordDisplay<'a> {
        WordDisplay { word: self, names }
    }
}

pub struct WordDisplay<'a> {
    word: &'a Word,
    names: &'a [String],
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return write!(f, "1");
        }
        let letters = &self.word.0;
        let mut i = 0;
        while i < letters.len() {
            let l = letters[i];
            let mut run = 1;
            while i + run < letters.len() && letters[i + run] == l {
                run += 1;
            }
            if i > 0 {
                write!(f, "*")?;
            }
            let name = self
                .names
                .get(l.generator)
                .map(String::as_str)
                .unwrap_or("?");
            match (l.inverse, run) {
                (false, 1) => write!(f, "{name}")?,
                (true, 1) => write!(f, "{name}^-1")?,
                (false, n) => write!(f, "{name}^{n}")?,
                (true, n) => write!(f, "{name}^-{n}")?,
            }
            i += run;
        }
        Ok(())
    }
}
