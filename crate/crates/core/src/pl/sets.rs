//! Finite unions of rational intervals, open or closed at each end.
//!
//! A set is stored as its indicator function: sorted marks `m_0 < ... <
//! m_k`, membership at each mark, and membership on each open gap between
//! consecutive marks (plus the two unbounded ends). Boolean operations
//! merge marks and evaluate both operands pointwise, so they are exact.
//!
//! The universe is `[0, 1]` for the interval and `[0, 1)` for the circle
//! `R/Z`; circle closures wrap through `0`.

use std::cmp::Ordering;
use std::fmt;

use super::{Domain, PlMap};
use crate::rational::{self, int, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Piece {
    pub lo: Rational,
    pub hi: Rational,
    pub lo_closed: bool,
    pub hi_closed: bool,
}

impl Piece {
    pub fn open(lo: Rational, hi: Rational) -> Self {
        Piece {
            lo,
            hi,
            lo_closed: false,
            hi_closed: false,
        }
    }

    pub fn closed(lo: Rational, hi: Rational) -> Self {
        Piece {
            lo,
            hi,
            lo_closed: true,
            hi_closed: true,
        }
    }

    pub fn point(x: Rational) -> Self {
        Piece::closed(x.clone(), x)
    }

    fn is_empty(&self) -> bool {
        match self.lo.cmp(&self.hi) {
            Ordering::Less => false,
            Ordering::Equal => !(self.lo_closed && self.hi_closed),
            Ordering::Greater => true,
        }
    }
}

impl fmt::Display for Piece {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.lo == self.hi {
            return write!(f, "{{{}}}", self.lo);
        }
        write!(
            f,
            "{}{}, {}{}",
            if self.lo_closed { '[' } else { '(' },
            self.lo,
            self.hi,
            if self.hi_closed { ']' } else { ')' }
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointSet {
    domain: Domain,
    marks: Vec<Rational>,
    at: Vec<bool>,
    /// `gap[i]` is membership on `(marks[i-1], marks[i])`; `gap[0]` and
    /// `gap[k]` are the unbounded ends.
    gap: Vec<bool>,
}

impl PointSet {
    pub fn empty(domain: Domain) -> Self {
        PointSet {
            domain,
            marks: Vec::new(),
            at: Vec::new(),
            gap: vec![false],
        }
    }

    pub fn universe(domain: Domain) -> Self {
        let piece = match domain {
            Domain::Interval => Piece::closed(int(0), int(1)),
            Domain::Circle => Piece {
                lo: int(0),
                hi: int(1),
                lo_closed: true,
                hi_closed: false,
            },
        };
        Self::from_pieces(domain, [piece])
    }

    fn single(domain: Domain, p: &Piece) -> Self {
        if p.is_empty() {
            return Self::empty(domain);
        }
        if p.lo == p.hi {
            return PointSet {
                domain,
                marks: vec![p.lo.clone()],
                at: vec![true],
                gap: vec![false, false],
            };
        }
        PointSet {
            domain,
            marks: vec![p.lo.clone(), p.hi.clone()],
            at: vec![p.lo_closed, p.hi_closed],
            gap: vec![false, true, false],
        }
    }

    /// Union of the pieces, clipped to the universe.
    pub fn from_pieces<I: IntoIterator<Item = Piece>>(domain: Domain, pieces: I) -> Self {
        let raw = pieces.into_iter().fold(Self::empty(domain), |acc, p| {
            acc.union(&Self::single(domain, &p))
        });
        let uni = match domain {
            Domain::Interval => Self::single(domain, &Piece::closed(int(0), int(1))),
            Domain::Circle => Self::single(
                domain,
                &Piece {
                    lo: int(0),
                    hi: int(1),
                    lo_closed: true,
                    hi_closed: false,
                },
            ),
        };
        raw.intersection(&uni)
    }

    pub fn open_interval(domain: Domain, lo: Rational, hi: Rational) -> Self {
        Self::from_pieces(domain, [Piece::open(lo, hi)])
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn contains(&self, x: &Rational) -> bool {
        match self.marks.binary_search(x) {
            Ok(i) => self.at[i],
            Err(i) => self.gap[i],
        }
    }

    pub fn is_empty(&self) -> bool {
        !self.at.iter().any(|&b| b) && !self.gap.iter().any(|&b| b)
    }

    fn combine(&self, other: &Self, op: impl Fn(bool, bool) -> bool) -> Self {
        assert_eq!(
            self.domain, other.domain,
            "point sets over different domains"
        );
        let mut marks: Vec<Rational> = Vec::with_capacity(self.marks.len() + other.marks.len());
        let (mut i, mut j) = (0, 0);
        while i < self.marks.len() || j < other.marks.len() {
            let next = match (self.marks.get(i), other.marks.get(j)) {
                (Some(a), Some(b)) => match a.cmp(b) {
                    Ordering::Less => {
                        i += 1;
                        a
                    }
                    Ordering::Greater => {
                        j += 1;
                        b
                    }
                    Ordering::Equal => {
                        i += 1;
                        j += 1;
                        a
                    }
                },
                (Some(a), None) => {
                    i += 1;
                    a
                }
                (None, Some(b)) => {
                    j += 1;
                    b
                }
                (None, None) => unreachable!(),
            };
            marks.push(next.clone());
        }
        let at = marks
            .iter()
            .map(|m| op(self.contains(m), other.contains(m)))
            .collect();
        let k = marks.len();
        let gap = (0..=k)
            .map(|g| {
                let sample = if k == 0 {
                    int(0)
                } else if g == 0 {
                    &marks[0] - int(1)
                } else if g == k {
                    &marks[k - 1] + int(1)
                } else {
                    rational::midpoint(&marks[g - 1], &marks[g])
                };
                op(self.contains(&sample), other.contains(&sample))
            })
            .collect();
        PointSet {
            domain: self.domain,
            marks,
            at,
            gap,
        }
        .canonical()
    }

    fn canonical(mut self) -> Self {
        let mut marks = Vec::with_capacity(self.marks.len());
        let mut at = Vec::with_capacity(self.at.len());
        let mut gap = vec![self.gap[0]];
        for (i, m) in self.marks.drain(..).enumerate() {
            let right = self.gap[i + 1];
            let left = *gap.last().expect("nonempty");
            if self.at[i] == left && left == right {
                continue;
            }
            marks.push(m);
            at.push(self.at[i]);
            gap.push(right);
        }
        PointSet {
            domain: self.domain,
            marks,
            at,
            gap,
        }
    }

    pub fn union(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a || b)
    }

    pub fn intersection(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a && b)
    }

    pub fn difference(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a && !b)
    }

    pub fn complement(&self) -> Self {
        Self::universe(self.domain).difference(self)
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.difference(other).is_empty()
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.intersection(other).is_empty()
    }

    /// Topological closure in the domain.
    pub fn closure(&self) -> Self {
        let k = self.marks.len();
        let at: Vec<bool> = (0..k)
            .map(|i| self.at[i] || self.gap[i] || self.gap[i + 1])
            .collect();
        let line = PointSet {
            domain: self.domain,
            marks: self.marks.clone(),
            at,
            gap: self.gap.clone(),
        }
        .canonical();
        match self.domain {
            Domain::Interval => line,
            Domain::Circle => {
                // Points accumulating at 1 from below accumulate at 0.
                let wrapped = if line.contains(&int(1)) {
                    line.union(&Self::single(Domain::Circle, &Piece::point(int(0))))
                } else {
                    line
                };
                wrapped.intersection(&Self::universe(Domain::Circle))
            }
        }
    }

    pub fn pieces(&self) -> Vec<Piece> {
        let mut out = Vec::new();
        let mut start: Option<(Rational, bool)> = None;
        for (i, m) in self.marks.iter().enumerate() {
            let right = self.gap[i + 1];
            match start.take() {
                None => {
                    if right {
                        start = Some((m.clone(), self.at[i]));
                    } else if self.at[i] {
                        out.push(Piece::point(m.clone()));
                    }
                }
                Some((lo, lo_closed)) => {
                    if self.at[i] && right {
                        start = Some((lo, lo_closed));
                    } else {
                        out.push(Piece {
                            lo,
                            hi: m.clone(),
                            lo_closed,
                            hi_closed: self.at[i],
                        });
                        if right {
                            start = Some((m.clone(), false));
                        }
                    }
                }
            }
        }
        out
    }

    /// Image under a homeomorphism of the same domain.
    pub fn image(&self, f: &PlMap) -> Self {
        assert_eq!(self.domain, f.domain(), "image across domains");
        match self.domain {
            Domain::Interval => Self::from_pieces(
                Domain::Interval,
                self.pieces().into_iter().map(|p| Piece {
                    lo: f.evaluate(&p.lo),
                    hi: f.evaluate(&p.hi),
                    lo_closed: p.lo_closed,
                    hi_closed: p.hi_closed,
                }),
            ),
            Domain::Circle => {
                // Pieces sit in [0, 1) and the lift maps them into [0, 2).
                let mut lifted = Vec::new();
                for p in self.pieces() {
                    let lo = f.eval_lift(&p.lo);
                    let hi = f.eval_lift(&p.hi);
                    lifted.push(Piece {
                        lo: lo.clone(),
                        hi: hi.clone(),
                        lo_closed: p.lo_closed,
                        hi_closed: p.hi_closed,
                    });
                    lifted.push(Piece {
                        lo: lo - int(1),
                        hi: hi - int(1),
                        lo_closed: p.lo_closed,
                        hi_closed: p.hi_closed,
                    });
                }
                Self::from_pieces(Domain::Circle, lifted)
            }
        }
    }

    /// Least point of the closure, if any.
    pub fn inf(&self) -> Option<Rational> {
        self.pieces().first().map(|p| p.lo.clone())
    }

    pub fn sup(&self) -> Option<Rational> {
        self.pieces().last().map(|p| p.hi.clone())
    }
}

impl fmt::Display for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pieces = self.pieces();
        if pieces.is_empty() {
            return f.write_str("∅");
        }
        let parts: Vec<String> = pieces.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join(" ∪ "))
    }
}
