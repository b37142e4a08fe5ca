//! Acceptance run: one PASS/FAIL line per criterion. Exits nonzero if any
//! criterion fails.

mod common;

use std::time::Instant;

use raagdyn::cotree::{classify, CircleClass, Decomposition, HierarchyLevel};
use raagdyn::lemmas::{self, DEFAULT_J_CHECKED};
use raagdyn::pl::{Piece, RotationNumber};
use raagdyn::rational::{self, q};
use raagdyn::{
    actions, decompose, sample, Domain, FreeProductWord, PlMap, PointSet, SimplicialGraph,
};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn p4_verdict() -> Outcome {
    let v = classify(&SimplicialGraph::path(4))
        .map_err(|e| e.to_string())?
        .verdict;
    let got = (v.c1, v.c1bv, v.c_infinity, v.c_omega, v.circle_class);
    ensure(
        got == (true, false, false, false, CircleClass::NoFaithfulC1bv),
        || format!("got {got:?}"),
    )?;
    Ok("c1 only; circle class NoFaithfulC1bv".into())
}

fn p3_plus_point_verdict() -> Outcome {
    let g = SimplicialGraph::new(["1", "2", "3", "4"], [("1", "2"), ("2", "3")]).unwrap();
    let c = classify(&g).map_err(|e| e.to_string())?;
    ensure(c.verdict.c1 && !c.verdict.c_infinity, || {
        format!("got {:?}", c.verdict)
    })?;
    ensure(c.level == HierarchyLevel::Level(4), || {
        format!("level {:?}", c.level)
    })?;
    Ok("c1 true, c_infinity false, level 4".into())
}

fn complete_and_edgeless() -> Outcome {
    for n in 1..=8 {
        for (name, g) in [
            ("K", SimplicialGraph::complete(n)),
            ("edgeless", SimplicialGraph::edgeless(n)),
        ] {
            let v = classify(&g).map_err(|e| e.to_string())?.verdict;
            ensure(
                v.c_omega && v.circle_class == CircleClass::UncountableProjective,
                || format!("{name}_{n}: {v:?}"),
            )?;
        }
    }
    Ok("16 graphs analytic, uncountable projective".into())
}

fn oracle_equivalence() -> Outcome {
    let classes = common::graph_classes(7);
    let counts: Vec<usize> = classes.values().map(Vec::len).collect();
    ensure(counts == [1, 2, 4, 11, 34, 156, 1044], || {
        format!("class counts {counts:?}")
    })?;
    let levels = common::hierarchy_levels(7);
    let mut checked = 0;
    for graphs in classes.values() {
        for s in graphs {
            let g = s.to_graph();
            let key = s.canonical();
            let expected = levels.get(&key).copied();
            let got = match decompose(&g).map_err(|e| e.to_string())? {
                Decomposition::Cograph(t) => Some(t.hierarchy_level()),
                Decomposition::NotCograph(_) => None,
            };
            ensure(got == expected, || {
                format!("{:?}: level {got:?}, oracle {expected:?}", s.adj)
            })?;
            ensure(got.is_none() == s.has_induced_p4(), || {
                format!("{:?}: P4-freeness disagrees", s.adj)
            })?;
            checked += 1;
        }
    }
    Ok(format!("{checked} classes on <= 7 vertices agree"))
}

fn commuting_rotation_numbers() -> Outcome {
    let a = PlMap::rotation(q(1, 2));
    let b = PlMap::rotation(q(1, 4));
    let c = PlMap::circle(vec![
        (q(0, 1), q(0, 1)),
        (q(1, 8), q(1, 4)),
        (q(1, 4), q(3, 8)),
        (q(1, 2), q(1, 2)),
        (q(5, 8), q(3, 4)),
        (q(3, 4), q(7, 8)),
        (q(1, 1), q(1, 1)),
    ])
    .map_err(|e| e.to_string())?;
    let commutes = |f: &PlMap, g: &PlMap| f.compose(g).unwrap() == g.compose(f).unwrap();
    ensure(commutes(&a, &b) && commutes(&a, &c), || {
        "a fails to commute with b or c".into()
    })?;
    let rot = |f: &PlMap| f.rotation_number(64).unwrap();
    ensure(rot(&b) == RotationNumber::Exact(q(1, 4)), || {
        format!("rot b = {:?}", rot(&b))
    })?;
    ensure(rot(&c) == RotationNumber::Exact(q(0, 1)), || {
        format!("rot c = {:?}", rot(&c))
    })?;
    let bc = b.compose(&c).unwrap();
    ensure(rot(&bc) == RotationNumber::Exact(q(1, 3)), || {
        format!("rot bc = {:?}", rot(&bc))
    })?;
    Ok("rot(b) = 1/4, rot(c) = 0, rot(bc) = 1/3".into())
}

fn separating_actions() -> Outcome {
    let words = FreeProductWord::enumerate(6, 2);
    for w in &words {
        let asg = actions::build_separating_action(w).map_err(|e| format!("{w}: {e}"))?;
        asg.check_invariants().map_err(|e| format!("{w}: {e}"))?;
        ensure(asg.apply_word(w, &asg.x0) != asg.x0, || {
            format!("{w} fixes x0")
        })?;
    }
    Ok(format!("{} words realized", words.len()))
}

fn support_lemmas() -> Outcome {
    let mut rng = sample::rng(7);
    for i in 0..1000 {
        let domain = if i % 2 == 0 {
            Domain::Interval
        } else {
            Domain::Circle
        };
        let f = sample::map(&mut rng, domain);
        let g = sample::map(&mut rng, domain);
        let r = lemmas::check_commutator_support(&f, &g).map_err(|e| e.to_string())?;
        ensure(r.holds, || format!("pair {i}: violating {}", r.violating))?;

        let b = sample::interval_map(&mut rng);
        let (c, d) = sample::disjoint_pair(&mut rng);
        let r = lemmas::check_phi_support(&b, &c, &d).map_err(|e| e.to_string())?;
        ensure(r.holds, || format!("triple {i}: violating {}", r.violating))?;
    }
    Ok("1000 pairs and 1000 triples".into())
}

fn lamplighter_soundness() -> Outcome {
    let mut rng = sample::rng(11);
    for i in 0..50 {
        let (g, u) = sample::lamplighter_pair(&mut rng);
        let cert = lemmas::lamplighter_certificate(&g, &u, DEFAULT_J_CHECKED)
            .map_err(|e| format!("pair {i}: {e}"))?
            .ok_or_else(|| format!("pair {i}: no certificate"))?;
        let (lo, hi) = cert.hull.clone();
        let k = PointSet::from_pieces(Domain::Interval, [Piece::closed(lo, hi)]);
        let mut uj = u.clone();
        for j in 1..=20 {
            let conj = uj.compose(&g).unwrap().compose(&uj.invert()).unwrap();
            ensure(g.commutator(&conj).unwrap().is_identity(), || {
                format!("pair {i}, j = {j}: relation fails")
            })?;
            ensure(k.image(&uj).is_disjoint(&k), || {
                format!("pair {i}, j = {j}: u^j K meets K")
            })?;
            uj = uj.compose(&u).unwrap();
        }
    }
    Ok("50 certified pairs, j = 1..20".into())
}

fn rotation_laws() -> Outcome {
    let mut rng = sample::rng(5);
    let mut maps = Vec::new();
    while maps.len() < 200 {
        // Alternate constructed periodic maps with generic random maps whose
        // rotation number happens to be detected.
        let f = if maps.len() % 2 == 0 {
            sample::rational_rotation_map(&mut rng, 6).0
        } else {
            sample::circle_map(&mut rng)
        };
        if let RotationNumber::Exact(r) = f.rotation_number(64).unwrap() {
            maps.push((f, r));
        }
    }
    for (i, (f, r)) in maps.iter().enumerate() {
        let h = sample::circle_map(&mut rng);
        let conj = f.conjugate_by(&h).unwrap();
        let rc = conj.rotation_number(64).unwrap();
        ensure(rc.exact() == Some(r), || {
            format!("map {i}: rot f = {r}, rot hfh^-1 = {rc:?}")
        })?;
        let mut fnn = f.clone();
        for n in 1..=5i64 {
            let expected = rational::frac(&(r * rational::int(n)));
            let got = fnn.rotation_number(64).unwrap();
            ensure(got.exact() == Some(&expected), || {
                format!("map {i}: rot f^{n} = {got:?}, want {expected}")
            })?;
            fnn = fnn.compose(f).unwrap();
        }
    }
    Ok("200 maps, conjugation and powers n <= 5".into())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("classify(P4) verdict", p4_verdict),
        ("classify(P3 + pt) verdict", p3_plus_point_verdict),
        (
            "complete and edgeless graphs up to 8 vertices",
            complete_and_edgeless,
        ),
        (
            "cotree level vs K_n oracle on all graphs up to 7 vertices",
            oracle_equivalence,
        ),
        (
            "rotation numbers of commuting circle maps",
            commuting_rotation_numbers,
        ),
        (
            "separating actions for all words of length <= 6, |exp| <= 2",
            separating_actions,
        ),
        ("support lemma property suite", support_lemmas),
        ("lamplighter certificate soundness", lamplighter_soundness),
        ("rotation number laws", rotation_laws),
    ];
    // Optional criterion numbers on the command line restrict the run.
    let only: Vec<usize> = std::env::args()
        .skip(1)
        .filter_map(|a| a.parse().ok())
        .collect();
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        if !only.is_empty() && !only.contains(&(i + 1)) {
            continue;
        }
        let start = Instant::now();
        let outcome = run();
        let took = start.elapsed();
        let secs = took.as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {} {name}: {detail} ({secs:.2}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {} {name}: {why} ({secs:.2}s)", i + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
