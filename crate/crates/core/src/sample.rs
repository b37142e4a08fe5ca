//! Seeded random PL data for property runs. Breakpoints sit on grids of
//! small denominator so exact arithmetic stays cheap.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::pl::{Domain, PlMap, Point};
use crate::rational::{int, q, Rational};

pub type SampleRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SampleRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `k` distinct sorted values `i/den` with `0 < i < den`.
fn interior_grid(rng: &mut SampleRng, den: i64, k: usize) -> Vec<i64> {
    let mut all: Vec<i64> = (1..den).collect();
    all.shuffle(rng);
    let mut pick: Vec<i64> = all.into_iter().take(k).collect();
    pick.sort_unstable();
    pick
}

/// Breakpoints of a homeomorphism of `[lo, hi]` fixing the endpoints, with
/// one or two interior breakpoints drawn on a grid. Never the identity.
fn cell_points(rng: &mut SampleRng, lo: &Rational, hi: &Rational) -> Vec<Point> {
    let den = 12;
    let k = rng.gen_range(1..=2);
    let xs = interior_grid(rng, den, k);
    let mut ys = interior_grid(rng, den, k);
    while ys == xs {
        ys = interior_grid(rng, den, k);
    }
    let w = hi - lo;
    xs.into_iter()
        .zip(ys)
        .map(|(x, y)| (lo + &w * q(x, den), lo + &w * q(y, den)))
        .collect()
}

/// Random interval map: `[0, 1]` is cut into cells and each cell is either
/// fixed pointwise or carries a random homeomorphism.
pub fn interval_map(rng: &mut SampleRng) -> PlMap {
    let cuts = random_cells(rng);
    interval_map_on_cells(rng, &cuts, |rng, _| rng.gen_bool(0.7))
}

/// Cut points `0 = c_0 < ... < c_m = 1` on the grid `1/8`.
pub fn random_cells(rng: &mut SampleRng) -> Vec<Rational> {
    let m = rng.gen_range(0..=3);
    let mut cuts = vec![int(0)];
    cuts.extend(interior_grid(rng, 8, m).into_iter().map(|i| q(i, 8)));
    cuts.push(int(1));
    cuts
}

/// Interval map that is nontrivial exactly on the cells selected by `active`.
pub fn interval_map_on_cells<F>(rng: &mut SampleRng, cuts: &[Rational], mut active: F) -> PlMap
where
    F: FnMut(&mut SampleRng, usize) -> bool,
{
    let mut pts = vec![(int(0), int(0))];
    for (i, w) in cuts.windows(2).enumerate() {
        if active(rng, i) {
            pts.extend(cell_points(rng, &w[0], &w[1]));
        }
        pts.push((w[1].clone(), w[1].clone()));
    }
    PlMap::interval(pts).expect("cells give monotone breakpoints")
}

/// Random circle map: a lift with random `F(0)` and random interior
/// breakpoints.
pub fn circle_map(rng: &mut SampleRng) -> PlMap {
    let den = 12;
    let shift = q(rng.gen_range(0..den), den);
    let k = rng.gen_range(1..=3);
    let xs = interior_grid(rng, den, k);
    let ys = interior_grid(rng, den, k);
    let mut pts = vec![(int(0), shift.clone())];
    pts.extend(
        xs.into_iter()
            .zip(ys)
            .map(|(x, y)| (q(x, den), &shift + q(y, den))),
    );
    pts.push((int(1), shift + int(1)));
    PlMap::circle(pts).expect("monotone lift")
}

pub fn map(rng: &mut SampleRng, domain: Domain) -> PlMap {
    match domain {
        Domain::Interval => interval_map(rng),
        Domain::Circle => circle_map(rng),
    }
}

/// `(c, d)` with disjoint supports: each cell goes to `c`, to `d`, or to
/// neither.
pub fn disjoint_pair(rng: &mut SampleRng) -> (PlMap, PlMap) {
    let mut cuts = random_cells(rng);
    if cuts.len() < 3 {
        cuts = vec![int(0), q(1, 2), int(1)];
    }
    let owner: Vec<u8> = (0..cuts.len() - 1).map(|_| rng.gen_range(0..3)).collect();
    let c = interval_map_on_cells(rng, &cuts, |_, i| owner[i] == 1);
    let d = interval_map_on_cells(rng, &cuts, |_, i| owner[i] == 2);
    (c, d)
}

/// A pair `(g, u)` meeting the lamplighter certificate conditions: `g` is
/// supported in `[α, β] ⊂ (0, 1/2)` and `u(α) > β` with `u(x) >= x` past `α`.
pub fn lamplighter_pair(rng: &mut SampleRng) -> (PlMap, PlMap) {
    let den = 48;
    let [a, bt] = {
        let v = interior_grid(rng, den / 2, 2);
        [v[0], v[1]]
    };
    let (alpha, beta) = (q(a, den), q(bt, den));
    let g = interval_map_on_cells(
        rng,
        &[int(0), alpha.clone(), beta.clone(), int(1)],
        |_, i| i == 1,
    );
    let gamma = q(rng.gen_range(bt + 1..den), den);
    let mut up = vec![(int(0), int(0)), (alpha.clone(), gamma.clone())];
    // Optional extra breakpoint above the diagonal.
    let x = q(rng.gen_range(a + 1..den), den);
    let lo_y = if x > gamma { x.clone() } else { gamma.clone() };
    let y = (&lo_y + int(1)) / int(2);
    if y > lo_y {
        up.push((x, y));
    }
    up.push((int(1), int(1)));
    (g, PlMap::interval(up).expect("monotone"))
}

/// Circle map with rotation number exactly `p/q`: a conjugate of
/// `R_{p/q} ∘ ψ`, where `ψ` fixes the orbit `{j/q}` and is otherwise random.
pub fn rational_rotation_map(rng: &mut SampleRng, max_q: i64) -> (PlMap, Rational) {
    let qq = rng.gen_range(1..=max_q);
    let p = rng.gen_range(0..qq);
    let mut psi = vec![(int(0), int(0))];
    for j in 0..qq {
        let (lo, hi) = (q(j, qq), q(j + 1, qq));
        if rng.gen_bool(0.5) {
            psi.extend(cell_points(rng, &lo, &hi));
        }
        psi.push((hi.clone(), hi));
    }
    let psi = PlMap::circle(psi).expect("monotone lift");
    let f = PlMap::rotation(q(p, qq))
        .compose(&psi)
        .expect("circle maps");
    let h = circle_map(rng);
    (f.conjugate_by(&h).expect("circle maps"), q(p, qq))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeded_streams_repeat() {
        let a: Vec<PlMap> = (0..5)
            .map({
                let mut r = rng(7);
                move |_| interval_map(&mut r)
            })
            .collect();
        let b: Vec<PlMap> = (0..5)
            .map({
                let mut r = rng(7);
                move |_| interval_map(&mut r)
            })
            .collect();
        assert_eq!(a, b);
    }

    #[test]
    fn disjoint_pairs_are_disjoint() {
        let mut r = rng(1);
        for _ in 0..50 {
            let (c, d) = disjoint_pair(&mut r);
            assert!(c.support().as_set().is_disjoint(d.support().as_set()));
        }
    }

    #[test]
    fn rational_rotation_is_detected() {
        let mut r = rng(3);
        for _ in 0..20 {
            let (f, rot) = rational_rotation_map(&mut r, 5);
            assert_eq!(f.rotation_number(16).unwrap().exact(), Some(&rot));
        }
    }

    #[test]
    fn lamplighter_pairs_are_nontrivial() {
        let mut r = rng(11);
        for _ in 0..200 {
            let (g, u) = lamplighter_pair(&mut r);
            assert!(!g.is_identity() && !u.is_identity());
        }
    }
}
