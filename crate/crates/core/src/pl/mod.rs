//! Exact piecewise-linear orientation-preserving homeomorphisms of the
//! interval `I = [0, 1]` and of the circle `S^1 = R/Z`.
//!
//! An interval map is stored by its breakpoints, from `(0, 0)` to `(1, 1)`.
//! A circle map is stored by a lift `F` on `[0, 1]` with `F(1) = F(0) + 1`,
//! normalized so that `F(0) ∈ [0, 1)`. Redundant collinear breakpoints are
//! dropped, so structural equality is equality of maps.

pub mod sets;

use std::cmp::Ordering;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::{json, Value};
use thiserror::Error;

use crate::rational::{self, int, Integer, Rational};
pub use sets::{Piece, PointSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Domain {
    #[serde(rename = "I")]
    Interval,
    #[serde(rename = "S1")]
    Circle,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PlError {
    #[error("maps act on different domains")]
    DomainMismatch,
    #[error("invalid PL map: {0}")]
    Invalid(String),
    #[error("rotation numbers are defined for circle maps only")]
    NotCircle,
}

pub type Point = (Rational, Rational);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlMap {
    domain: Domain,
    points: Vec<Point>,
}

// Breakpoint-list primitives. `points` has strictly increasing x and y.

fn interp(points: &[Point], x: &Rational) -> Rational {
    let k = points.partition_point(|p| p.0 <= *x);
    if k == 0 {
        return points[0].1.clone() + (x - &points[0].0);
    }
    let (x0, y0) = &points[k - 1];
    if x0 == x {
        return y0.clone();
    }
    if k == points.len() {
        return y0 + (x - x0);
    }
    let (x1, y1) = &points[k];
    y0 + (y1 - y0) * (x - x0) / (x1 - x0)
}

fn interp_inv(points: &[Point], y: &Rational) -> Rational {
    let k = points.partition_point(|p| p.1 <= *y);
    if k == 0 {
        return points[0].0.clone() + (y - &points[0].1);
    }
    let (x0, y0) = &points[k - 1];
    if y0 == y {
        return x0.clone();
    }
    if k == points.len() {
        return x0 + (y - y0);
    }
    let (x1, y1) = &points[k];
    x0 + (x1 - x0) * (y - y0) / (y1 - y0)
}

fn slope(a: &Point, b: &Point) -> Rational {
    (&b.1 - &a.1) / (&b.0 - &a.0)
}

/// Drops interior breakpoints where the slope does not change.
fn simplify(points: Vec<Point>) -> Vec<Point> {
    if points.len() <= 2 {
        return points;
    }
    let mut out: Vec<Point> = Vec::with_capacity(points.len());
    for p in points {
        out.push(p);
        while out.len() >= 3 {
            let m = out.len();
            if slope(&out[m - 3], &out[m - 2]) == slope(&out[m - 2], &out[m - 1]) {
                out.remove(m - 2);
            } else {
                break;
            }
        }
    }
    out
}

/// Periodic lift helpers: `F(x + 1) = F(x) + 1`, `points` over `[0, 1]`.
mod lift {
    use super::*;

    pub fn eval(points: &[Point], x: &Rational) -> Rational {
        let n = rational::floor_int(x);
        let nq = Rational::from(n);
        let r = x - &nq;
        interp(points, &r) + nq
    }

    pub fn eval_inv(points: &[Point], y: &Rational) -> Rational {
        let y0 = &points[0].1;
        let n = rational::floor_int(&(y - y0));
        let nq = Rational::from(n);
        interp_inv(points, &(y - &nq)) + nq
    }

    /// Raw lift of `f ∘ g` (no normalization).
    pub fn compose(f: &[Point], g: &[Point]) -> Vec<Point> {
        let g0 = g[0].1.clone();
        let g1 = &g0 + int(1);
        let mut xs: Vec<Rational> = g.iter().map(|p| p.0.clone()).collect();
        for (bx, _) in &f[..f.len() - 1] {
            // bx + k in [g0, g1]
            let k_lo = rational::floor_int(&(&g0 - bx));
            let mut k = k_lo;
            loop {
                let t = bx + Rational::from(&k);
                if t > g1 {
                    break;
                }
                if t >= g0 {
                    xs.push(eval_inv(g, &t));
                }
                k += Integer::from(1);
            }
        }
        xs.sort();
        xs.dedup();
        let pts = xs
            .into_iter()
            .map(|x| {
                let y = eval(f, &eval(g, &x));
                (x, y)
            })
            .collect();
        simplify(pts)
    }

    pub fn invert(f: &[Point]) -> Vec<Point> {
        let mut xs: Vec<Rational> = vec![int(0), int(1)];
        xs.extend(f.iter().map(|p| rational::frac(&p.1)));
        xs.sort();
        xs.dedup();
        let pts = xs.into_iter().map(|y| {
            let x = eval_inv(f, &y);
            (y, x)
        });
        simplify(pts.collect())
    }

    /// Shifts by an integer so that `F(0) ∈ [0, 1)`.
    pub fn normalize(mut points: Vec<Point>) -> Vec<Point> {
        let shift = Rational::from(rational::floor_int(&points[0].1));
        if shift != 0 {
            for p in &mut points {
                p.1 -= &shift;
            }
        }
        points
    }
}

fn validate(domain: Domain, points: &[Point]) -> Result<(), PlError> {
    let bad = |m: &str| Err(PlError::Invalid(m.to_string()));
    if points.len() < 2 {
        return bad("need at least two breakpoints");
    }
    if points[0].0 != int(0) || points[points.len() - 1].0 != int(1) {
        return bad("breakpoints must span x = 0 to x = 1");
    }
    for w in points.windows(2) {
        if w[0].0 >= w[1].0 {
            return bad("x coordinates must strictly increase");
        }
        if w[0].1 >= w[1].1 {
            return bad("y coordinates must strictly increase");
        }
    }
    let (first, last) = (&points[0].1, &points[points.len() - 1].1);
    match domain {
        Domain::Interval => {
            if *first != int(0) || *last != int(1) {
                return bad("interval maps must fix 0 and 1");
            }
        }
        Domain::Circle => {
            if *last != first + int(1) {
                return bad("circle lifts need F(1) = F(0) + 1");
            }
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RotationNumber {
    /// Rotation number in `[0, 1)`.
    Exact(Rational),
    /// Enclosure of the translation number of the normalized lift.
    Bounds(Rational, Rational),
}

impl RotationNumber {
    pub fn exact(&self) -> Option<&Rational> {
        match self {
            RotationNumber::Exact(r) => Some(r),
            RotationNumber::Bounds(..) => None,
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            RotationNumber::Exact(r) => json!({ "exact": rational::format(r) }),
            RotationNumber::Bounds(lo, hi) => {
                json!({ "bounds": [rational::format(lo), rational::format(hi)] })
            }
        }
    }
}

pub const DEFAULT_QMAX: u32 = 64;

impl PlMap {
    pub fn new(domain: Domain, points: Vec<Point>) -> Result<Self, PlError> {
        validate(domain, &points)?;
        Ok(Self::from_valid(domain, points))
    }

    fn from_valid(domain: Domain, points: Vec<Point>) -> Self {
        let points = simplify(points);
        let points = match domain {
            Domain::Interval => points,
            Domain::Circle => lift::normalize(points),
        };
        PlMap { domain, points }
    }

    pub fn interval(points: Vec<Point>) -> Result<Self, PlError> {
        Self::new(Domain::Interval, points)
    }

    pub fn circle(points: Vec<Point>) -> Result<Self, PlError> {
        Self::new(Domain::Circle, points)
    }

    pub fn identity(domain: Domain) -> Self {
        PlMap {
            domain,
            points: vec![(int(0), int(0)), (int(1), int(1))],
        }
    }

    /// Rigid rotation `x ↦ x + alpha` of the circle.
    pub fn rotation(alpha: Rational) -> Self {
        let a = rational::frac(&alpha);
        PlMap {
            domain: Domain::Circle,
            points: vec![(int(0), a.clone()), (int(1), a + int(1))],
        }
    }

    /// Interval map supported in `(lo, hi)` sending `from` to `to`, both in
    /// `(lo, hi)`.
    pub fn bump(lo: Rational, hi: Rational, from: Rational, to: Rational) -> Result<Self, PlError> {
        if !(lo < from && from < hi && lo < to && to < hi) {
            return Err(PlError::Invalid("bump data out of range".into()));
        }
        let mut pts = vec![(int(0), int(0))];
        if lo > int(0) {
            pts.push((lo.clone(), lo.clone()));
        }
        pts.push((from, to));
        if hi < int(1) {
            pts.push((hi.clone(), hi.clone()));
        }
        pts.push((int(1), int(1)));
        Self::interval(pts)
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.domain)
    }

    fn same_domain(&self, other: &Self) -> Result<(), PlError> {
        if self.domain == other.domain {
            Ok(())
        } else {
            Err(PlError::DomainMismatch)
        }
    }

    /// `f(x)`; circle results are reduced to `[0, 1)`.
    pub fn evaluate(&self, x: &Rational) -> Rational {
        match self.domain {
            Domain::Interval => interp(&self.points, x),
            Domain::Circle => rational::frac(&lift::eval(&self.points, x)),
        }
    }

    /// The lift at any real `x`. Equals `evaluate` on the interval.
    pub fn eval_lift(&self, x: &Rational) -> Rational {
        match self.domain {
            Domain::Interval => interp(&self.points, x),
            Domain::Circle => lift::eval(&self.points, x),
        }
    }

    pub fn evaluate_inverse(&self, y: &Rational) -> Rational {
        match self.domain {
            Domain::Interval => interp_inv(&self.points, y),
            Domain::Circle => rational::frac(&lift::eval_inv(&self.points, y)),
        }
    }

    /// `self ∘ g`.
    pub fn compose(&self, g: &Self) -> Result<Self, PlError> {
        self.same_domain(g)?;
        Ok(match self.domain {
            Domain::Interval => {
                let mut xs: Vec<Rational> = g.points.iter().map(|p| p.0.clone()).collect();
                xs.extend(self.points.iter().map(|p| interp_inv(&g.points, &p.0)));
                xs.sort();
                xs.dedup();
                let pts = xs
                    .into_iter()
                    .map(|x| {
                        let y = interp(&self.points, &interp(&g.points, &x));
                        (x, y)
                    })
                    .collect();
                PlMap {
                    domain: Domain::Interval,
                    points: simplify(pts),
                }
            }
            Domain::Circle => PlMap {
                domain: Domain::Circle,
                points: lift::normalize(lift::compose(&self.points, &g.points)),
            },
        })
    }

    pub fn invert(&self) -> Self {
        match self.domain {
            Domain::Interval => PlMap {
                domain: Domain::Interval,
                points: self
                    .points
                    .iter()
                    .map(|(x, y)| (y.clone(), x.clone()))
                    .collect(),
            },
            Domain::Circle => PlMap {
                domain: Domain::Circle,
                points: lift::normalize(lift::invert(&self.points)),
            },
        }
    }

    /// `[f, g] = f g f^-1 g^-1`.
    pub fn commutator(&self, g: &Self) -> Result<Self, PlError> {
        self.compose(g)?
            .compose(&self.invert())?
            .compose(&g.invert())
    }

    /// `h f h^-1`.
    pub fn conjugate_by(&self, h: &Self) -> Result<Self, PlError> {
        h.compose(self)?.compose(&h.invert())
    }

    pub fn pow(&self, n: i64) -> Self {
        let base = if n < 0 { self.invert() } else { self.clone() };
        let mut acc = Self::identity(self.domain);
        let mut sq = base;
        let mut e = n.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose(&sq).expect("same domain");
            }
            e >>= 1;
            if e > 0 {
                sq = sq.compose(&sq).expect("same domain");
            }
        }
        acc
    }

    /// Zero set of `F(x) - x - k` over the stored breakpoints.
    fn level_set(&self, k: &Rational) -> Vec<Piece> {
        let mut out = Vec::new();
        let d: Vec<Rational> = self.points.iter().map(|(x, y)| y - x - k).collect();
        for i in 0..self.points.len() - 1 {
            let (x0, x1) = (&self.points[i].0, &self.points[i + 1].0);
            let (d0, d1) = (&d[i], &d[i + 1]);
            match (*d0 == 0, *d1 == 0) {
                (true, true) => out.push(Piece::closed(x0.clone(), x1.clone())),
                (true, false) => out.push(Piece::point(x0.clone())),
                (false, true) => out.push(Piece::point(x1.clone())),
                (false, false) => {
                    if (*d0 > 0) != (*d1 > 0) {
                        let root = x0 - d0 * (x1 - x0) / (d1 - d0);
                        out.push(Piece::point(root));
                    }
                }
            }
        }
        out
    }

    /// `Fix f`, as isolated points and closed sub-intervals.
    pub fn fixed_set(&self) -> PointSet {
        match self.domain {
            Domain::Interval => PointSet::from_pieces(Domain::Interval, self.level_set(&int(0))),
            Domain::Circle => {
                let (lo, hi) = self.displacement_range();
                let mut pieces = Vec::new();
                let mut k = rational::floor_int(&lo);
                while k <= hi {
                    pieces.extend(self.level_set(&Rational::from(&k)));
                    k += Integer::from(1);
                }
                PointSet::from_pieces(Domain::Circle, pieces)
            }
        }
    }

    fn displacement_range(&self) -> (Rational, Rational) {
        let mut it = self.points.iter().map(|(x, y)| y - x);
        let first = it.next().expect("nonempty");
        it.fold((first.clone(), first), |(lo, hi), d| {
            let lo = if d < lo { d.clone() } else { lo };
            let hi = if d > hi { d } else { hi };
            (lo, hi)
        })
    }

    /// Open support `X ∖ Fix f`.
    pub fn support(&self) -> OpenSupport {
        OpenSupport(self.fixed_set().complement())
    }

    /// `supp f ∩ supp g = ∅`. On the interval both maps are affine between
    /// merged breakpoints, so each such piece is either fixed pointwise or
    /// moved off at most one point.
    pub fn supports_disjoint(&self, g: &Self) -> Result<bool, PlError> {
        self.same_domain(g)?;
        if self.domain == Domain::Circle {
            return Ok(self.support().as_set().is_disjoint(g.support().as_set()));
        }
        let mut xs: Vec<&Rational> = self.points.iter().chain(&g.points).map(|p| &p.0).collect();
        xs.sort();
        xs.dedup();
        let fixed = |m: &PlMap, x: &Rational| interp(&m.points, x) == *x;
        let mut prev = (true, true);
        for (i, x) in xs.into_iter().enumerate() {
            let cur = (fixed(self, x), fixed(g, x));
            if i > 0 && !(prev.0 && cur.0) && !(prev.1 && cur.1) {
                return Ok(false);
            }
            prev = cur;
        }
        Ok(true)
    }

    /// `f ∘ g = g ∘ f`. On the interval `f ∘ g` is affine between points of
    /// `B_g ∪ g⁻¹(B_f)` and `g ∘ f` between points of `B_f ∪ f⁻¹(B_g)`, so
    /// agreeing on all four sets is enough.
    pub fn commutes_with(&self, g: &Self) -> Result<bool, PlError> {
        self.same_domain(g)?;
        if self.domain == Domain::Circle {
            return Ok(self.compose(g)? == g.compose(self)?);
        }
        let agree = |x: &Rational| {
            interp(&self.points, &interp(&g.points, x))
                == interp(&g.points, &interp(&self.points, x))
        };
        // A preimage equal to its breakpoint is already among the direct points.
        let pull = |m: &PlMap, by: &PlMap| -> Vec<Rational> {
            m.points
                .iter()
                .map(|p| interp_inv(&by.points, &p.0))
                .zip(&m.points)
                .filter(|(x, p)| *x != p.0)
                .map(|(x, _)| x)
                .collect()
        };
        let direct = self.points.iter().chain(&g.points).all(|p| agree(&p.0));
        Ok(direct && pull(self, g).iter().all(agree) && pull(g, self).iter().all(agree))
    }

    pub fn is_grounded(&self) -> bool {
        !self.fixed_set().is_empty()
    }

    /// Searches periods `q = 1..=q_max` for a solution of `F^q(x) = x + p`.
    /// Without one, returns `[(F^n(0) - 1)/n, (F^n(0) + 1)/n]` for `n = q_max`.
    pub fn rotation_number(&self, q_max: u32) -> Result<RotationNumber, PlError> {
        if self.domain != Domain::Circle {
            return Err(PlError::NotCircle);
        }
        let q_max = q_max.max(1);
        let mut iter = self.points.clone();
        for qn in 1..=q_max {
            let (lo, hi) = PlMap {
                domain: Domain::Circle,
                points: iter.clone(),
            }
            .displacement_range();
            let p = rational::ceil_int(&lo);
            if p <= hi {
                let r = Rational::from(p) / Rational::from(qn);
                return Ok(RotationNumber::Exact(rational::frac(&r)));
            }
            if qn < q_max {
                iter = lift::compose(&self.points, &iter);
            }
        }
        let n = Rational::from(q_max);
        let at0 = lift::eval(&iter, &int(0));
        Ok(RotationNumber::Bounds(
            (&at0 - int(1)) / &n,
            (at0 + int(1)) / n,
        ))
    }

    pub fn slopes(&self) -> Vec<Rational> {
        self.points
            .windows(2)
            .map(|w| slope(&w[0], &w[1]))
            .collect()
    }

    /// Total variation of the derivative: interior slope jumps on `I`,
    /// all jumps (including the one at `0 ≡ 1`) on `S^1`.
    pub fn derivative_variation(&self) -> Rational {
        let s = self.slopes();
        let mut total: Rational = s.windows(2).map(|w| rational::abs(&(&w[1] - &w[0]))).sum();
        if self.domain == Domain::Circle {
            total += rational::abs(&(&s[0] - &s[s.len() - 1]));
        }
        total
    }

    /// Rescales an interval map into `[lo, hi] ⊂ [0, 1]` and extends it by
    /// the identity.
    pub fn embed_in(&self, lo: &Rational, hi: &Rational) -> Result<Self, PlError> {
        if self.domain != Domain::Interval {
            return Err(PlError::DomainMismatch);
        }
        let w = hi - lo;
        let mut pts = Vec::with_capacity(self.points.len() + 2);
        if *lo > int(0) {
            pts.push((int(0), int(0)));
        }
        pts.extend(self.points.iter().map(|(x, y)| (lo + &w * x, lo + &w * y)));
        if *hi < int(1) {
            pts.push((int(1), int(1)));
        }
        Ok(PlMap {
            domain: Domain::Interval,
            points: simplify(pts),
        })
    }

    /// Pastes interval maps supported in disjoint blocks. `blocks` pairs each
    /// map (on `[0, 1]`) with its target block.
    pub fn paste(blocks: &[(Rational, Rational, &PlMap)]) -> Result<Self, PlError> {
        let mut sorted: Vec<_> = blocks.iter().collect();
        sorted.sort_by(|a, b| a.0.cmp(&b.0));
        let mut pts: Vec<Point> = vec![(int(0), int(0))];
        let mut last = int(0);
        for (lo, hi, f) in sorted {
            if *lo < last || lo >= hi || *hi > int(1) {
                return Err(PlError::Invalid(
                    "overlapping or out-of-range blocks".into(),
                ));
            }
            if f.domain != Domain::Interval {
                return Err(PlError::DomainMismatch);
            }
            let w = hi - lo;
            for (x, y) in &f.points {
                pts.push((lo + &w * x, lo + &w * y));
            }
            last = hi.clone();
        }
        pts.push((int(1), int(1)));
        pts.dedup_by(|a, b| a.0 == b.0);
        Self::interval(pts)
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("serializable")
    }
}

#[derive(Serialize, Deserialize)]
struct RawMap {
    domain: Domain,
    points: Vec<[String; 2]>,
}

impl Serialize for PlMap {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        RawMap {
            domain: self.domain,
            points: self
                .points
                .iter()
                .map(|(x, y)| [rational::format(x), rational::format(y)])
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for PlMap {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = RawMap::deserialize(d)?;
        let points = raw
            .points
            .iter()
            .map(|[x, y]| Ok((rational::parse(x)?, rational::parse(y)?)))
            .collect::<Result<Vec<_>, rational::RationalParseError>>()
            .map_err(serde::de::Error::custom)?;
        PlMap::new(raw.domain, points).map_err(serde::de::Error::custom)
    }
}

/// A connected component of an open support.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Arc {
    Interval(Rational, Rational),
    /// Circle arc from `lo` through `0` to `hi`; `lo == hi` is the circle
    /// minus one point.
    Wrapping(Rational, Rational),
    WholeCircle,
}

/// `supp f`: a finite disjoint union of open intervals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OpenSupport(pub PointSet);

impl OpenSupport {
    pub fn as_set(&self) -> &PointSet {
        &self.0
    }

    pub fn into_set(self) -> PointSet {
        self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn components(&self) -> Vec<Arc> {
        let pieces = self.0.pieces();
        let mut arcs: Vec<Arc> = pieces
            .iter()
            .map(|p| Arc::Interval(p.lo.clone(), p.hi.clone()))
            .collect();
        if self.0.domain() == Domain::Circle && !pieces.is_empty() {
            let first = &pieces[0];
            let last = &pieces[pieces.len() - 1];
            if first.lo == 0 && first.lo_closed {
                if pieces.len() == 1 {
                    return vec![Arc::WholeCircle];
                }
                if last.hi == int(1) {
                    arcs.pop();
                    arcs.remove(0);
                    arcs.insert(0, Arc::Wrapping(last.lo.clone(), first.hi.clone()));
                }
            }
        }
        arcs
    }

    pub fn to_json(&self) -> Value {
        let comps: Vec<Value> = self
            .components()
            .into_iter()
            .map(|a| match a {
                Arc::Interval(lo, hi) | Arc::Wrapping(lo, hi) => {
                    json!([rational::format(&lo), rational::format(&hi)])
                }
                Arc::WholeCircle => json!("S1"),
            })
            .collect();
        json!({ "domain": self.0.domain(), "components": comps })
    }
}

impl PartialOrd for RotationNumber {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match (self, other) {
            (RotationNumber::Exact(a), RotationNumber::Exact(b)) => a.partial_cmp(b),
            _ => None,
        }
    }
}
