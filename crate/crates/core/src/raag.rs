//! Words in a right-angled Artin group `A(Γ)` and the word problem.
//!
//! A word is trivial iff repeatedly cancelling a pair `x^e ... x^-e` whose
//! in-between letters all commute with `x` empties it.

use std::fmt;

use crate::graph::{GraphError, SimplicialGraph};

/// A word over vertex names with nonzero integer exponents.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RaagWord(pub Vec<(String, i64)>);

impl RaagWord {
    pub fn generator(v: &str) -> Self {
        RaagWord(vec![(v.to_string(), 1)])
    }

    /// `g w g^-1`.
    pub fn conjugate_by(&self, g: &str) -> Self {
        let mut letters = vec![(g.to_string(), 1)];
        letters.extend(self.0.iter().cloned());
        letters.push((g.to_string(), -1));
        RaagWord(letters)
    }

    pub fn inverse(&self) -> Self {
        RaagWord(self.0.iter().rev().map(|(v, e)| (v.clone(), -e)).collect())
    }

    pub fn concat(&self, other: &Self) -> Self {
        let mut letters = self.0.clone();
        letters.extend(other.0.iter().cloned());
        RaagWord(letters)
    }

    pub fn commutator(&self, other: &Self) -> Self {
        self.concat(other)
            .concat(&self.inverse())
            .concat(&other.inverse())
    }

    /// Expands to unit letters `(position, sign)` in `g`.
    fn unit_letters(&self, g: &SimplicialGraph) -> Result<Vec<(usize, bool)>, GraphError> {
        let mut out = Vec::new();
        for (v, e) in &self.0 {
            let i = g.vertex_index(v)?;
            for _ in 0..e.unsigned_abs() {
                out.push((i, *e > 0));
            }
        }
        Ok(out)
    }

    pub fn is_trivial_in(&self, g: &SimplicialGraph) -> Result<bool, GraphError> {
        let mut w = self.unit_letters(g)?;
        'outer: loop {
            for j in 0..w.len() {
                let (x, sj) = w[j];
                for i in (0..j).rev() {
                    let (y, si) = w[i];
                    if y == x {
                        if si != sj {
                            w.remove(j);
                            w.remove(i);
                            continue 'outer;
                        }
                    } else if !g.adjacent(x, y) {
                        break;
                    }
                }
            }
            return Ok(w.is_empty());
        }
    }

    pub fn commutes_with(&self, other: &Self, g: &SimplicialGraph) -> Result<bool, GraphError> {
        self.commutator(other).is_trivial_in(g)
    }
}

impl fmt::Display for RaagWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(v, e)| {
                if *e == 1 {
                    v.clone()
                } else {
                    format!("{v}^{e}")
                }
            })
            .collect();
        f.write_str(&parts.join(" "))
    }
}
