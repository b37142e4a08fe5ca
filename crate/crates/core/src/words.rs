//! Words in `Z^2 * Z = <a, b, t | [a, b] = 1>` in syllable normal form.
//!
//! A word is a product of syllables read left to right; acting on a point,
//! the rightmost syllable is applied first.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Syllable {
    /// `a^a b^b` in the `Z^2` factor.
    Ab { a: i64, b: i64 },
    /// `t^r` in the `Z` factor.
    T(i64),
}

impl Syllable {
    pub fn is_zero(&self) -> bool {
        matches!(self, Syllable::Ab { a: 0, b: 0 } | Syllable::T(0))
    }

    pub fn inverse(&self) -> Self {
        match *self {
            Syllable::Ab { a, b } => Syllable::Ab { a: -a, b: -b },
            Syllable::T(r) => Syllable::T(-r),
        }
    }

    fn merge(&self, other: &Self) -> Option<Self> {
        match (*self, *other) {
            (Syllable::Ab { a, b }, Syllable::Ab { a: c, b: d }) => {
                Some(Syllable::Ab { a: a + c, b: b + d })
            }
            (Syllable::T(r), Syllable::T(s)) => Some(Syllable::T(r + s)),
            _ => None,
        }
    }
}

/// A reduced word: no zero syllable and no two adjacent syllables from the
/// same factor.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct FreeProductWord(Vec<Syllable>);

impl FreeProductWord {
    pub fn identity() -> Self {
        FreeProductWord(Vec::new())
    }

    /// Normal form of an arbitrary syllable list.
    pub fn reduce<I: IntoIterator<Item = Syllable>>(syllables: I) -> Self {
        let mut out: Vec<Syllable> = Vec::new();
        for s in syllables {
            if s.is_zero() {
                continue;
            }
            match out.last().and_then(|last| last.merge(&s)) {
                Some(m) => {
                    out.pop();
                    if !m.is_zero() {
                        out.push(m);
                    }
                }
                None => out.push(s),
            }
        }
        FreeProductWord(out)
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Self {
        FreeProductWord(self.0.iter().rev().map(Syllable::inverse).collect())
    }

    pub fn concat(&self, other: &Self) -> Self {
        Self::reduce(self.0.iter().chain(other.0.iter()).copied())
    }

    /// Whether the word lies in one free factor.
    pub fn in_single_factor(&self) -> bool {
        self.0.len() <= 1
    }

    /// All reduced words with `1..=max_len` syllables whose `Z^2` syllables
    /// have both exponents in `-e..=e` and whose `t` exponents lie in
    /// `-e..=e`.
    pub fn enumerate(max_len: usize, e: i64) -> Vec<Self> {
        let mut ab = Vec::new();
        for a in -e..=e {
            for b in -e..=e {
                if (a, b) != (0, 0) {
                    ab.push(Syllable::Ab { a, b });
                }
            }
        }
        let ts: Vec<Syllable> = (-e..=e).filter(|&r| r != 0).map(Syllable::T).collect();
        let mut out = Vec::new();
        let mut frontier: Vec<Vec<Syllable>> = vec![Vec::new()];
        for _ in 0..max_len {
            let mut next = Vec::new();
            for w in &frontier {
                let choices: Vec<&[Syllable]> = match w.last() {
                    None => vec![&ab, &ts],
                    Some(Syllable::Ab { .. }) => vec![&ts],
                    Some(Syllable::T(_)) => vec![&ab],
                };
                for set in choices {
                    for s in set {
                        let mut v = w.clone();
                        v.push(*s);
                        next.push(v);
                    }
                }
            }
            out.extend(next.iter().cloned().map(FreeProductWord));
            frontier = next;
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot parse word at {token:?}: {reason}")]
pub struct WordParseError {
    pub token: String,
    pub reason: String,
}

impl FromStr for FreeProductWord {
    type Err = WordParseError;

    /// Parses space-separated letters `a`, `b`, `t` with optional integer
    /// exponents, e.g. `"a^2 b^-1 t^3"`. `"1"` or an empty string is the
    /// identity.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut syl = Vec::new();
        for tok in s.split_whitespace() {
            if tok == "1" {
                continue;
            }
            let err = |reason: &str| WordParseError {
                token: tok.to_string(),
                reason: reason.to_string(),
            };
            let (letter, exp) = match tok.split_once('^') {
                Some((l, e)) => (l, e.parse::<i64>().map_err(|_| err("bad exponent"))?),
                None => (tok, 1),
            };
            syl.push(match letter {
                "a" => Syllable::Ab { a: exp, b: 0 },
                "b" => Syllable::Ab { a: 0, b: exp },
                "t" => Syllable::T(exp),
                _ => return Err(err("expected a, b or t")),
            });
        }
        Ok(FreeProductWord::reduce(syl))
    }
}

fn letter(f: &mut fmt::Formatter<'_>, name: char, e: i64, first: &mut bool) -> fmt::Result {
    if e == 0 {
        return Ok(());
    }
    if !*first {
        f.write_str(" ")?;
    }
    *first = false;
    if e == 1 {
        write!(f, "{name}")
    } else {
        write!(f, "{name}^{e}")
    }
}

impl fmt::Display for FreeProductWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        let mut first = true;
        for s in &self.0 {
            match *s {
                Syllable::Ab { a, b } => {
                    letter(f, 'a', a, &mut first)?;
                    letter(f, 'b', b, &mut first)?;
                }
                Syllable::T(r) => letter(f, 't', r, &mut first)?,
            }
        }
        Ok(())
    }
}
