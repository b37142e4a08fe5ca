//! Exact checks of support and dynamics statements for PL homeomorphisms.

use serde_json::{json, Value};
use thiserror::Error;

use crate::pl::{Domain, OpenSupport, PlError, PlMap, PointSet};
use crate::rational::{self, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LemmaError {
    #[error(transparent)]
    Pl(#[from] PlError),
    #[error("input map is the identity")]
    IdentityInput,
    #[error("expected maps of the interval")]
    NotInterval,
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("certificate conditions hold but relation fails at j = {0}")]
    Inconsistent(u32),
}

/// Outcome of a set containment `lhs ⊆ rhs`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContainmentReport {
    pub holds: bool,
    pub lhs: PointSet,
    pub rhs: PointSet,
    /// `lhs ∖ rhs`, empty exactly when the containment holds.
    pub violating: PointSet,
}

impl ContainmentReport {
    fn new(lhs: PointSet, rhs: PointSet) -> Self {
        let violating = lhs.difference(&rhs);
        ContainmentReport {
            holds: violating.is_empty(),
            lhs,
            rhs,
            violating,
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "holds": self.holds,
            "lhs": self.lhs.to_string(),
            "rhs": self.rhs.to_string(),
            "violating": self.violating.to_string(),
        })
    }
}

fn same_domain(maps: &[&PlMap]) -> Result<Domain, LemmaError> {
    let d = maps[0].domain();
    if maps.iter().any(|m| m.domain() != d) {
        return Err(PlError::DomainMismatch.into());
    }
    Ok(d)
}

fn supp(f: &PlMap) -> PointSet {
    f.support().into_set()
}

/// `cl supp [f, g] ⊆ supp f ∪ supp g ∪ cl(supp f ∩ supp g)`.
pub fn check_commutator_support(f: &PlMap, g: &PlMap) -> Result<ContainmentReport, LemmaError> {
    same_domain(&[f, g])?;
    let (sf, sg) = (supp(f), supp(g));
    let lhs = supp(&f.commutator(g)?).closure();
    let rhs = sf.union(&sg).union(&sf.intersection(&sg).closure());
    Ok(ContainmentReport::new(lhs, rhs))
}

/// `φ = [c, b d b^-1]`, defined when `supp c ∩ supp d = ∅`.
pub fn phi(b: &PlMap, c: &PlMap, d: &PlMap) -> Result<PlMap, LemmaError> {
    same_domain(&[b, c, d])?;
    if !supp(c).is_disjoint(&supp(d)) {
        return Err(LemmaError::HypothesisViolated("supp c ∩ supp d ≠ ∅".into()));
    }
    Ok(c.commutator(&d.conjugate_by(b)?)?)
}

/// `supp φ ⊆ supp b ∪ cb(supp b ∩ supp d) ∪ db^-1(supp b ∩ supp c)`.
pub fn check_phi_support(b: &PlMap, c: &PlMap, d: &PlMap) -> Result<ContainmentReport, LemmaError> {
    let p = phi(b, c, d)?;
    let (sb, sc, sd) = (supp(b), supp(c), supp(d));
    let cb = c.compose(b)?;
    let db_inv = d.compose(&b.invert())?;
    let rhs = sb
        .union(&sb.intersection(&sd).image(&cb))
        .union(&sb.intersection(&sc).image(&db_inv));
    Ok(ContainmentReport::new(supp(&p), rhs))
}

/// `cl(supp φ ∖ supp b) ⊆ supp c ∪ supp d`.
pub fn check_c1_containment(
    b: &PlMap,
    c: &PlMap,
    d: &PlMap,
) -> Result<ContainmentReport, LemmaError> {
    let p = phi(b, c, d)?;
    let lhs = supp(&p).difference(&supp(b)).closure();
    let rhs = supp(c).union(&supp(d));
    Ok(ContainmentReport::new(lhs, rhs))
}

pub const DEFAULT_J_CHECKED: u32 = 20;

/// Sufficient conditions for `[g, u^j g u^-j] = 1` for every `j != 0`:
/// with `K = [inf supp g, sup supp g] ⊂ (0, 1)`, `u(min K) > max K` and
/// `u(x) >= x` for `x >= min K`. The images `u^j(K)`, `j >= 1`, are then
/// pairwise disjoint from `K`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LamplighterCertificate {
    pub hull: (Rational, Rational),
    pub u_at_min: Rational,
    pub j_checked: u32,
}

impl LamplighterCertificate {
    pub fn to_json(&self) -> Value {
        json!({
            "hull": [rational::format(&self.hull.0), rational::format(&self.hull.1)],
            "u_at_min": rational::format(&self.u_at_min),
            "j_checked": self.j_checked,
        })
    }
}

/// Returns a certificate when the sufficient conditions hold, after
/// verifying the relation exactly for `1 <= j <= j_checked`. `Ok(None)`
/// means the conditions fail; the relation may still hold.
pub fn lamplighter_certificate(
    g: &PlMap,
    u: &PlMap,
    j_checked: u32,
) -> Result<Option<LamplighterCertificate>, LemmaError> {
    if g.domain() != Domain::Interval || u.domain() != Domain::Interval {
        return Err(LemmaError::NotInterval);
    }
    if g.is_identity() {
        return Err(LemmaError::IdentityInput);
    }
    let s = supp(g);
    let (lo, hi) = (s.inf().expect("nonempty"), s.sup().expect("nonempty"));
    if lo == 0 || hi == 1 {
        return Ok(None);
    }
    let u_lo = u.evaluate(&lo);
    if u_lo <= hi {
        return Ok(None);
    }
    // u is affine between breakpoints, so u(x) >= x on [lo, 1] reduces to
    // the breakpoints there.
    if u.points().iter().any(|(x, y)| *x >= lo && y < x) {
        return Ok(None);
    }
    let mut uj = u.clone();
    for j in 1..=j_checked {
        if uj.evaluate(&lo) <= hi {
            return Err(LemmaError::Inconsistent(j));
        }
        let conj = g.conjugate_by(&uj)?;
        if !g.commutator(&conj)?.is_identity() {
            return Err(LemmaError::Inconsistent(j));
        }
        uj = u.compose(&uj)?;
    }
    Ok(Some(LamplighterCertificate {
        hull: (lo, hi),
        u_at_min: u_lo,
        j_checked,
    }))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainStep {
    pub index: usize,
    pub element: PlMap,
    pub support: OpenSupport,
}

/// `g_{i+1} = [g_i, u_i g_i u_i^-1]`, stopping at the identity or when the
/// picks run out. The last step is the final element.
pub fn recursive_commutator_chain(
    g1: &PlMap,
    picks: &[PlMap],
) -> Result<Vec<ChainStep>, LemmaError> {
    let mut out = vec![ChainStep {
        index: 1,
        element: g1.clone(),
        support: g1.support(),
    }];
    let mut g = g1.clone();
    for (i, u) in picks.iter().enumerate() {
        if g.is_identity() {
            break;
        }
        if u.domain() != g.domain() {
            return Err(PlError::DomainMismatch.into());
        }
        g = g.commutator(&g.conjugate_by(u)?)?;
        out.push(ChainStep {
            index: i + 2,
            support: g.support(),
            element: g.clone(),
        });
    }
    Ok(out)
}

/// Data for the jump construction: a triple `(s_i, t_i, y_i)` per index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoJumpsData {
    pub f: PlMap,
    pub g: PlMap,
    pub triples: Vec<(Rational, Rational, Rational)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum JumpCase {
    /// `f(y) <= s = g(s) < y < t = f(t) <= g(y)`.
    First,
    /// `g(y) <= t = f(t) < y < s = g(s) <= f(y)`.
    Second,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoJumpsReport {
    pub valid: bool,
    pub cases: Vec<Option<JumpCase>>,
    /// `|g(y_i) - f(y_i)|`.
    pub gaps: Vec<Rational>,
}

impl TwoJumpsReport {
    pub fn to_json(&self) -> Value {
        let cases: Vec<Value> = self
            .cases
            .iter()
            .map(|c| match c {
                Some(JumpCase::First) => json!("i"),
                Some(JumpCase::Second) => json!("ii"),
                None => Value::Null,
            })
            .collect();
        json!({
            "valid": self.valid,
            "cases": cases,
            "gaps": self.gaps.iter().map(rational::format).collect::<Vec<_>>(),
        })
    }
}

fn jump_case(f: &PlMap, g: &PlMap, s: &Rational, t: &Rational, y: &Rational) -> Option<JumpCase> {
    let (fy, gy) = (f.evaluate(y), g.evaluate(y));
    let s_fixed = g.evaluate(s) == *s;
    let t_fixed = f.evaluate(t) == *t;
    if !(s_fixed && t_fixed) {
        return None;
    }
    if fy <= *s && s < y && y < t && *t <= gy {
        Some(JumpCase::First)
    } else if gy <= *t && t < y && y < s && *s <= fy {
        Some(JumpCase::Second)
    } else {
        None
    }
}

/// Checks each triple `(s_i, t_i, y_i)` against the two jump configurations
/// and reports `|g(y_i) - f(y_i)|`. A finite prefix says nothing about
/// differentiability on its own.
pub fn check_two_jumps_prefix(data: &TwoJumpsData) -> Result<TwoJumpsReport, LemmaError> {
    let (f, g) = (&data.f, &data.g);
    same_domain(&[f, g])?;
    let cases: Vec<Option<JumpCase>> = data
        .triples
        .iter()
        .map(|(s, t, y)| jump_case(f, g, s, t, y))
        .collect();
    let gaps = data
        .triples
        .iter()
        .map(|(_, _, y)| rational::abs(&(g.evaluate(y) - f.evaluate(y))))
        .collect();
    Ok(TwoJumpsReport {
        valid: cases.iter().all(Option::is_some),
        cases,
        gaps,
    })
}

impl TwoJumpsData {
    pub fn to_json(&self) -> Value {
        let triples: Vec<[String; 3]> = self
            .triples
            .iter()
            .map(|(s, t, y)| {
                [
                    rational::format(s),
                    rational::format(t),
                    rational::format(y),
                ]
            })
            .collect();
        json!({ "f": self.f, "g": self.g, "triples": triples })
    }

    pub fn from_json(v: &Value) -> Result<Self, String> {
        let map = |k: &str| -> Result<PlMap, String> {
            serde_json::from_value(v.get(k).cloned().ok_or(format!("missing {k:?}"))?)
                .map_err(|e| format!("{k}: {e}"))
        };
        let raw: Vec<[String; 3]> =
            serde_json::from_value(v.get("triples").cloned().ok_or("missing \"triples\"")?)
                .map_err(|e| format!("triples: {e}"))?;
        let triples = raw
            .iter()
            .map(|[s, t, y]| -> Result<_, String> {
                let p = |x: &str| rational::parse(x).map_err(|e| e.to_string());
                Ok((p(s)?, p(t)?, p(y)?))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(TwoJumpsData {
            f: map("f")?,
            g: map("g")?,
            triples,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn bump(lo: (i64, i64), hi: (i64, i64), from: (i64, i64), to: (i64, i64)) -> PlMap {
        PlMap::bump(
            q(lo.0, lo.1),
            q(hi.0, hi.1),
            q(from.0, from.1),
            q(to.0, to.1),
        )
        .unwrap()
    }

    #[test]
    fn commuting_disjoint_supports() {
        let f = bump((0, 1), (1, 4), (1, 8), (3, 16));
        let g = bump((1, 2), (3, 4), (5, 8), (9, 16));
        let r = check_commutator_support(&f, &g).unwrap();
        assert!(r.holds);
        assert!(r.lhs.is_empty());
    }

    #[test]
    fn overlapping_supports() {
        let f = bump((0, 1), (1, 2), (1, 4), (3, 8));
        let g = bump((1, 4), (3, 4), (1, 2), (5, 8));
        assert!(check_commutator_support(&f, &g).unwrap().holds);
        let c = PlMap::rotation(q(1, 3));
        let d = PlMap::circle(vec![
            (q(0, 1), q(0, 1)),
            (q(1, 2), q(1, 3)),
            (q(1, 1), q(1, 1)),
        ])
        .unwrap();
        assert!(check_commutator_support(&c, &d).unwrap().holds);
        assert!(matches!(
            check_commutator_support(&f, &c),
            Err(LemmaError::Pl(PlError::DomainMismatch))
        ));
    }

    #[test]
    fn phi_checks() {
        let b = bump((1, 8), (5, 8), (1, 4), (1, 2));
        let c = bump((0, 1), (1, 4), (1, 8), (3, 16));
        let d = bump((1, 2), (1, 1), (5, 8), (3, 4));
        assert!(check_phi_support(&b, &c, &d).unwrap().holds);
        assert!(check_c1_containment(&b, &c, &d).unwrap().holds);
        let e = bump((1, 8), (3, 8), (1, 4), (5, 16));
        assert!(matches!(
            check_phi_support(&b, &c, &e),
            Err(LemmaError::HypothesisViolated(_))
        ));
    }

    #[test]
    fn lamplighter_example() {
        let g = bump((1, 8), (1, 4), (1, 6), (1, 5));
        let u = PlMap::interval(vec![
            (q(0, 1), q(0, 1)),
            (q(1, 8), q(1, 3)),
            (q(1, 1), q(1, 1)),
        ])
        .unwrap();
        let cert = lamplighter_certificate(&g, &u, DEFAULT_J_CHECKED)
            .unwrap()
            .unwrap();
        assert_eq!(cert.hull, (q(1, 8), q(1, 4)));
        assert_eq!(
            lamplighter_certificate(&PlMap::identity(Domain::Interval), &u, 5),
            Err(LemmaError::IdentityInput)
        );
        // u moving the hull only partway gives no certificate.
        let short = PlMap::interval(vec![
            (q(0, 1), q(0, 1)),
            (q(1, 8), q(3, 16)),
            (q(1, 1), q(1, 1)),
        ])
        .unwrap();
        assert_eq!(lamplighter_certificate(&g, &short, 5).unwrap(), None);
    }

    #[test]
    fn commutator_chain_terminates() {
        let g = bump((1, 8), (1, 4), (1, 6), (1, 5));
        let u = PlMap::interval(vec![
            (q(0, 1), q(0, 1)),
            (q(1, 8), q(1, 3)),
            (q(1, 1), q(1, 1)),
        ])
        .unwrap();
        let steps = recursive_commutator_chain(&g, &[u.clone(), u]).unwrap();
        assert_eq!(steps.len(), 2);
        assert!(steps[1].element.is_identity());
    }

    fn two_jumps_example() -> TwoJumpsData {
        // Blocks [s_i, t_i] = [2^-i / 2, 2^-i * 3/4] with y_i = 2^-i * 5/8.
        let mut gp = vec![(q(0, 1), q(0, 1))];
        let mut fp = vec![(q(0, 1), q(0, 1))];
        let mut triples = Vec::new();
        for i in (1..=3).rev() {
            let scale = q(1, 1 << i);
            let (s, y, t) = (&scale * q(1, 2), &scale * q(5, 8), &scale * q(3, 4));
            gp.push((s.clone(), s.clone()));
            gp.push((y.clone(), t.clone()));
            fp.push((y.clone(), s.clone()));
            fp.push((t.clone(), t.clone()));
            triples.push((s, t, y));
        }
        gp.push((q(1, 1), q(1, 1)));
        fp.push((q(1, 1), q(1, 1)));
        triples.reverse();
        TwoJumpsData {
            f: PlMap::interval(fp).unwrap(),
            g: PlMap::interval(gp).unwrap(),
            triples,
        }
    }

    #[test]
    fn two_jumps_empty() {
        let id = PlMap::identity(Domain::Interval);
        let r = check_two_jumps_prefix(&TwoJumpsData {
            f: id.clone(),
            g: id,
            triples: vec![],
        })
        .unwrap();
        assert!(r.valid && r.gaps.is_empty());
    }

    #[test]
    fn two_jumps_valid_prefix() {
        let data = two_jumps_example();
        let r = check_two_jumps_prefix(&data).unwrap();
        assert!(r.valid);
        assert_eq!(r.gaps, vec![q(1, 8), q(1, 16), q(1, 32)]);
        assert!(r.cases.iter().all(|c| *c == Some(JumpCase::First)));
        assert_eq!(TwoJumpsData::from_json(&data.to_json()).unwrap(), data);
    }

    #[test]
    fn two_jumps_rejects_unfixed_s() {
        let mut data = two_jumps_example();
        // g expands [s_2, y_2], so a point just above s_2 is not fixed.
        data.triples[1].0 = q(17, 128);
        let r = check_two_jumps_prefix(&data).unwrap();
        assert!(!r.valid);
        assert_eq!(r.cases[1], None);
    }
}
