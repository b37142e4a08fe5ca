//! Actions of `Z^2 * Z = <a, b, t | [a, b] = 1>` on `[0, 1]` by exact PL
//! homeomorphisms in which `a` and `b` have disjoint supports.
//!
//! `build_separating_action` realizes a given nontrivial word nontrivially:
//! after cyclic conjugation the word reads `g_l t^{r_l} ... g_1 t^{r_1}`
//! with every syllable nonzero. Each `g_i` gets its own closed interval
//! `J_i` (left half carries `a`, right half carries `b`) with a point `x_i`
//! moved right by `g_i`; `t` is supported on disjoint intervals `L_i` and
//! carries the orbit from `g_{i-1}(x_{i-1})` to `x_i` in `|r_i|` steps.
//! Negative exponents use the reversed ("opposite") realization so every
//! step moves the tracked point to the right.

use serde_json::{json, Value};
use thiserror::Error;

use crate::pl::{Domain, PlError, PlMap, Point};
use crate::rational::{self, int, Rational};
use crate::words::{FreeProductWord, Syllable};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ActionError {
    #[error("word {0:?} is trivial")]
    TrivialWord(String),
    #[error(transparent)]
    Pl(#[from] PlError),
    #[error("generators a and b do not commute")]
    NotCommuting,
    #[error("supports of a and b intersect")]
    SupportsMeet,
    #[error("word {word:?} fixes its witness point {point}")]
    WordActsTrivially { word: String, point: String },
    #[error("malformed action bundle: {0}")]
    Malformed(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ActionAssignment {
    pub a: PlMap,
    pub b: PlMap,
    pub t: PlMap,
    pub x0: Rational,
}

fn apply_power(f: &PlMap, e: i64, x: Rational) -> Rational {
    let mut x = x;
    for _ in 0..e.unsigned_abs() {
        x = if e > 0 {
            f.evaluate(&x)
        } else {
            f.evaluate_inverse(&x)
        };
    }
    x
}

impl ActionAssignment {
    pub fn trivial() -> Self {
        let id = PlMap::identity(Domain::Interval);
        ActionAssignment {
            a: id.clone(),
            b: id.clone(),
            t: id,
            x0: rational::q(1, 2),
        }
    }

    fn syllable_map(&self, s: &Syllable) -> PlMap {
        match *s {
            Syllable::Ab { a, b } => self
                .a
                .pow(a)
                .compose(&self.b.pow(b))
                .expect("interval maps"),
            Syllable::T(r) => self.t.pow(r),
        }
    }

    /// The homeomorphism a word acts by; the leftmost syllable acts last.
    pub fn evaluate_word(&self, w: &FreeProductWord) -> PlMap {
        w.syllables()
            .iter()
            .fold(PlMap::identity(Domain::Interval), |acc, s| {
                acc.compose(&self.syllable_map(s)).expect("interval maps")
            })
    }

    /// Image of a point under a word, computed pointwise.
    pub fn apply_word(&self, w: &FreeProductWord, x: &Rational) -> Rational {
        let mut y = x.clone();
        for s in w.syllables().iter().rev() {
            y = match *s {
                Syllable::Ab { a, b } => apply_power(&self.a, a, apply_power(&self.b, b, y)),
                Syllable::T(r) => apply_power(&self.t, r, y),
            };
        }
        y
    }

    /// Checks `[a, b] = 1` and `supp a ∩ supp b = ∅`.
    pub fn check_invariants(&self) -> Result<(), ActionError> {
        if !self.a.supports_disjoint(&self.b)? {
            return Err(ActionError::SupportsMeet);
        }
        // [a, b] = 1 iff ab = ba.
        if !self.a.commutes_with(&self.b)? {
            return Err(ActionError::NotCommuting);
        }
        Ok(())
    }

    pub fn to_json(&self) -> Value {
        json!({
            "a": self.a,
            "b": self.b,
            "t": self.t,
            "x0": rational::format(&self.x0),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self, ActionError> {
        let map = |k: &str| -> Result<PlMap, ActionError> {
            let m: PlMap = serde_json::from_value(
                v.get(k)
                    .cloned()
                    .ok_or_else(|| ActionError::Malformed(format!("missing map {k:?}")))?,
            )
            .map_err(|e| ActionError::Malformed(format!("{k}: {e}")))?;
            if m.domain() != Domain::Interval {
                return Err(ActionError::Malformed(format!(
                    "{k} must act on the interval"
                )));
            }
            Ok(m)
        };
        let x0 = v
            .get("x0")
            .and_then(Value::as_str)
            .ok_or_else(|| ActionError::Malformed("missing x0".into()))?;
        Ok(ActionAssignment {
            a: map("a")?,
            b: map("b")?,
            t: map("t")?,
            x0: rational::parse(x0).map_err(|e| ActionError::Malformed(e.to_string()))?,
        })
    }
}

/// Breakpoints `(lo, lo), (z_0, z_1), ..., (z_{k-1}, z_k), (hi, hi)` of a
/// map of `[lo, hi]` whose orbit steps evenly from `start = z_0` to
/// `end = z_k`, where `lo < start < end < hi`. A negative `e` gives the
/// inverse map, so `f^e(start) = end` either way.
fn chain_points(
    lo: &Rational,
    hi: &Rational,
    start: &Rational,
    end: &Rational,
    e: i64,
) -> Result<Vec<Point>, PlError> {
    if e == 0 || !(lo < start && start < end && end < hi) {
        return Err(PlError::Invalid("chain data out of order".into()));
    }
    let k = e.unsigned_abs();
    let step = (end - start) / Rational::from(k);
    let mut pts = Vec::with_capacity(k as usize + 2);
    pts.push((lo.clone(), lo.clone()));
    let mut z = start.clone();
    for _ in 0..k {
        let next = &z + &step;
        pts.push(if e > 0 {
            (z, next.clone())
        } else {
            (next.clone(), z)
        });
        z = next;
    }
    pts.push((hi.clone(), hi.clone()));
    Ok(pts)
}

/// Interval map from blocks of breakpoints listed left to right, identity
/// between blocks.
fn assemble(blocks: Vec<Vec<Point>>) -> Result<PlMap, PlError> {
    let mut pts = vec![(int(0), int(0))];
    for p in blocks.into_iter().flatten() {
        if pts.last().map(|l| l.0 == p.0) == Some(true) {
            continue;
        }
        pts.push(p);
    }
    if pts.last().map(|l| l.0 == int(1)) != Some(true) {
        pts.push((int(1), int(1)));
    }
    PlMap::interval(pts)
}

/// Interval map supported in `(lo, hi)` with `f^steps(start) = end`, where
/// `lo < start < end < hi`. The orbit points are equally spaced.
pub fn chain_map(
    lo: &Rational,
    hi: &Rational,
    start: &Rational,
    end: &Rational,
    steps: u64,
) -> Result<PlMap, PlError> {
    if steps == 0 {
        return Err(PlError::Invalid("chain needs at least one step".into()));
    }
    assemble(vec![chain_points(lo, hi, start, end, steps as i64)?])
}

/// Chain map realizing `f^e(start) = end` for a signed exponent `e != 0`.
fn signed_chain(
    lo: &Rational,
    hi: &Rational,
    start: &Rational,
    end: &Rational,
    e: i64,
) -> Result<PlMap, PlError> {
    assemble(vec![chain_points(lo, hi, start, end, e)?])
}

/// Returns `(h', c)` with `h' = c h c^-1` either a single syllable or of the
/// form `g_l t^{r_l} ... g_1 t^{r_1}`.
pub fn cyclic_normal_form(h: &FreeProductWord) -> (FreeProductWord, FreeProductWord) {
    let mut w: Vec<Syllable> = h.syllables().to_vec();
    let mut c = FreeProductWord::identity();
    loop {
        if w.len() <= 1 {
            break;
        }
        let first = w[0];
        let last = w[w.len() - 1];
        let same = matches!(
            (first, last),
            (Syllable::Ab { .. }, Syllable::Ab { .. }) | (Syllable::T(_), Syllable::T(_))
        );
        if same {
            let s = FreeProductWord::reduce([first]);
            c = s.inverse().concat(&c);
            let mut rest: Vec<Syllable> = w[1..].to_vec();
            rest.push(first);
            w = FreeProductWord::reduce(rest).syllables().to_vec();
        } else if matches!(first, Syllable::T(_)) {
            let s = FreeProductWord::reduce([last]);
            c = s.concat(&c);
            let mut rot = vec![last];
            rot.extend_from_slice(&w[..w.len() - 1]);
            w = rot;
        } else {
            break;
        }
    }
    (FreeProductWord::reduce(w), c)
}

fn single_factor_action(s: Syllable) -> Result<ActionAssignment, ActionError> {
    let id = PlMap::identity(Domain::Interval);
    let half = rational::q(1, 2);
    Ok(match s {
        Syllable::T(r) => {
            let t = signed_chain(&int(0), &int(1), &rational::q(1, 4), &rational::q(3, 4), r)?;
            ActionAssignment {
                a: id.clone(),
                b: id,
                t,
                x0: rational::q(1, 4),
            }
        }
        Syllable::Ab { a, b } => {
            if a != 0 {
                let am = signed_chain(&int(0), &half, &rational::q(1, 8), &rational::q(3, 8), a)?;
                ActionAssignment {
                    a: am,
                    b: id.clone(),
                    t: id,
                    x0: rational::q(1, 8),
                }
            } else {
                let bm = signed_chain(&half, &int(1), &rational::q(5, 8), &rational::q(7, 8), b)?;
                ActionAssignment {
                    a: id.clone(),
                    b: bm,
                    t: id,
                    x0: rational::q(5, 8),
                }
            }
        }
    })
}

fn mixed_action(w: &FreeProductWord) -> Result<ActionAssignment, ActionError> {
    let syl = w.syllables();
    debug_assert!(syl.len().is_multiple_of(2) && syl.len() >= 2);
    let ell = syl.len() / 2;
    // Syllables from the right: (t^{r_1}, g_1), (t^{r_2}, g_2), ...
    let pairs: Vec<(i64, (i64, i64))> = (0..ell)
        .map(|i| {
            let ti = syl[syl.len() - 1 - 2 * i];
            let gi = syl[syl.len() - 2 - 2 * i];
            match (ti, gi) {
                (Syllable::T(r), Syllable::Ab { a, b }) => (r, (a, b)),
                _ => unreachable!("cyclic normal form alternates g, t"),
            }
        })
        .collect();

    let cell = Rational::from_unsigneds(1u64, ell as u64 + 1);
    let eighth = &cell / int(8);
    let x0 = &cell / int(2);

    let (mut a, mut b, mut t) = (Vec::new(), Vec::new(), Vec::new());
    let mut start = x0.clone();
    let mut c_lo = &cell / int(4);
    for (i, (r, (ea, eb))) in pairs.into_iter().enumerate() {
        let left = &cell * Rational::from(i as u64 + 1);
        let p = &left + &eighth;
        let q = &left + &cell - &eighth;
        let mid = rational::midpoint(&p, &q);
        let (lo, hi, e) = if ea != 0 { (p, mid, ea) } else { (mid, q, eb) };
        let quarter = (&hi - &lo) / int(4);
        let xi = &lo + &quarter;
        let yi = &hi - &quarter;
        let g = chain_points(&lo, &hi, &xi, &yi, e)?;
        if ea != 0 {
            a.push(g);
        } else {
            b.push(g);
        }
        let d_hi = rational::midpoint(&xi, &yi);
        t.push(chain_points(&c_lo, &d_hi, &start, &xi, r)?);
        c_lo = rational::midpoint(&d_hi, &yi);
        start = yi;
    }
    let (a, b, t) = (assemble(a)?, assemble(b)?, assemble(t)?);
    Ok(ActionAssignment { a, b, t, x0 })
}

/// An action on `[0, 1]` with disjoint supports for `a` and `b` in which
/// `h` moves the basepoint: `h(x0) > x0`.
pub fn build_separating_action(h: &FreeProductWord) -> Result<ActionAssignment, ActionError> {
    if h.is_empty() {
        return Err(ActionError::TrivialWord(h.to_string()));
    }
    let (core, conj) = cyclic_normal_form(h);
    let mut asg = if core.in_single_factor() {
        single_factor_action(core.syllables()[0])?
    } else {
        mixed_action(&core)?
    };
    // h = conj^-1 core conj, so h moves conj^-1(x0).
    asg.x0 = asg.apply_word(&conj.inverse(), &asg.x0);
    let moved = asg.apply_word(h, &asg.x0);
    if moved <= asg.x0 {
        return Err(ActionError::WordActsTrivially {
            word: h.to_string(),
            point: rational::format(&asg.x0),
        });
    }
    Ok(asg)
}

/// One action in which every listed word acts nontrivially.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaithfulAction {
    pub assignment: ActionAssignment,
    pub words: Vec<FreeProductWord>,
    /// `witnesses[k]` is moved by `words[k]`.
    pub witnesses: Vec<Rational>,
}

impl FaithfulAction {
    /// Re-checks the generator invariants and that each word moves its
    /// witness.
    pub fn certify(&self) -> Result<(), ActionError> {
        self.assignment.check_invariants()?;
        if self.words.len() != self.witnesses.len() {
            return Err(ActionError::Malformed(
                "words and witnesses differ in length".into(),
            ));
        }
        for (w, x) in self.words.iter().zip(&self.witnesses) {
            if self.assignment.apply_word(w, x) == *x {
                return Err(ActionError::WordActsTrivially {
                    word: w.to_string(),
                    point: rational::format(x),
                });
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> Value {
        let mut v = self.assignment.to_json();
        v["words"] = json!(self
            .words
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>());
        v["witnesses"] = json!(self
            .witnesses
            .iter()
            .map(rational::format)
            .collect::<Vec<_>>());
        v
    }

    pub fn from_json(v: &Value) -> Result<Self, ActionError> {
        let assignment = ActionAssignment::from_json(v)?;
        let strings = |k: &str| -> Result<Vec<String>, ActionError> {
            match v.get(k) {
                None => Ok(Vec::new()),
                Some(x) => serde_json::from_value(x.clone())
                    .map_err(|e| ActionError::Malformed(format!("{k}: {e}"))),
            }
        };
        let words = strings("words")?
            .iter()
            .map(|s| {
                s.parse::<FreeProductWord>()
                    .map_err(|e| ActionError::Malformed(e.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let witnesses = strings("witnesses")?
            .iter()
            .map(|s| rational::parse(s).map_err(|e| ActionError::Malformed(e.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(FaithfulAction {
            assignment,
            words,
            witnesses,
        })
    }
}

/// Realizes each word in its own block `[k/(n+1), (k+1)/(n+1)]` and pastes
/// the blocks into one action.
pub fn build_faithful_on(words: &[FreeProductWord]) -> Result<FaithfulAction, ActionError> {
    let n = words.len();
    let denom = Rational::from(n as u64 + 1);
    let mut parts = Vec::with_capacity(n);
    for w in words {
        if w.is_empty() {
            return Err(ActionError::TrivialWord(w.to_string()));
        }
        parts.push(build_separating_action(w)?);
    }
    let blocks: Vec<(Rational, Rational)> = (0..n)
        .map(|k| {
            let lo = Rational::from(k as u64) / &denom;
            let hi = Rational::from(k as u64 + 1) / &denom;
            (lo, hi)
        })
        .collect();
    let paste = |pick: fn(&ActionAssignment) -> &PlMap| -> Result<PlMap, PlError> {
        let triples: Vec<(Rational, Rational, &PlMap)> = blocks
            .iter()
            .zip(&parts)
            .map(|((lo, hi), asg)| (lo.clone(), hi.clone(), pick(asg)))
            .collect();
        if triples.is_empty() {
            return Ok(PlMap::identity(Domain::Interval));
        }
        PlMap::paste(&triples)
    };
    let a = paste(|s| &s.a)?;
    let b = paste(|s| &s.b)?;
    let t = paste(|s| &s.t)?;
    let witnesses: Vec<Rational> = blocks
        .iter()
        .zip(&parts)
        .map(|((lo, hi), asg)| lo + (hi - lo) * &asg.x0)
        .collect();
    let x0 = witnesses.first().cloned().unwrap_or_else(|| int(0));
    Ok(FaithfulAction {
        assignment: ActionAssignment { a, b, t, x0 },
        words: words.to_vec(),
        witnesses,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn w(s: &str) -> FreeProductWord {
        s.parse().unwrap()
    }

    #[test]
    fn chain_map_orbit() {
        let f = chain_map(&q(1, 4), &q(3, 4), &q(1, 3), &q(2, 3), 3).unwrap();
        assert_eq!(apply_power(&f, 3, q(1, 3)), q(2, 3));
        assert_eq!(
            f.support().components(),
            vec![crate::pl::Arc::Interval(q(1, 4), q(3, 4))]
        );
        assert!(chain_map(&q(1, 4), &q(3, 4), &q(2, 3), &q(1, 3), 3).is_err());
    }

    #[test]
    fn separating_t() {
        let asg = build_separating_action(&w("t")).unwrap();
        assert!(asg.t.evaluate(&asg.x0) > asg.x0);
        asg.check_invariants().unwrap();
    }

    #[test]
    fn separating_a_t() {
        let h = w("a t");
        let asg = build_separating_action(&h).unwrap();
        asg.check_invariants().unwrap();
        let moved = asg.evaluate_word(&h).evaluate(&asg.x0);
        assert!(moved > asg.x0);
        assert_eq!(moved, asg.apply_word(&h, &asg.x0));
    }

    #[test]
    fn trivial_word_rejected() {
        assert_eq!(
            build_separating_action(&FreeProductWord::identity()),
            Err(ActionError::TrivialWord("1".into()))
        );
        assert!(matches!(
            build_faithful_on(&[w("t"), w("a a^-1")]),
            Err(ActionError::TrivialWord(_))
        ));
    }

    #[test]
    fn cyclic_forms() {
        let (core, c) = cyclic_normal_form(&w("t a t^-1"));
        assert_eq!(core, w("a"));
        assert_eq!(c.concat(&w("t a t^-1")).concat(&c.inverse()), core);

        let h = w("t a t b^2 t^3");
        let (core, c) = cyclic_normal_form(&h);
        assert_eq!(c.concat(&h).concat(&c.inverse()), core);
        assert!(matches!(core.syllables()[0], Syllable::Ab { .. }));
        assert!(matches!(core.syllables().last().unwrap(), Syllable::T(_)));
    }

    #[test]
    fn conjugated_and_negative_words() {
        for s in [
            "t a t^-1",
            "a^-2 t^-1 b t^2",
            "t^-1 a b^-1 t^-3 a^2",
            "b^-1 t^2 a^-1 b^2 t^-2 b",
        ] {
            let h = w(s);
            let asg = build_separating_action(&h).unwrap();
            asg.check_invariants().unwrap();
            assert!(asg.evaluate_word(&h).evaluate(&asg.x0) > asg.x0, "{s}");
        }
    }

    #[test]
    fn faithful_on_small_list() {
        let words = vec![w("t"), w("a t^-1 b"), w("b^2")];
        let fa = build_faithful_on(&words).unwrap();
        fa.certify().unwrap();
        let back = FaithfulAction::from_json(&fa.to_json()).unwrap();
        assert_eq!(back, fa);
    }
}
