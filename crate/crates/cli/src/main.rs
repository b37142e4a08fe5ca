//! `raagdyn`: classify defining graphs, extract subgroup witnesses, build
//! PL actions of `Z^2 * Z`, and run the exact lemma checkers.
//!
//! Exit codes: 0 success, 1 a verification failed, 2 bad input.

use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use raagdyn::actions::{self, FaithfulAction};
use raagdyn::cotree::{self, CotreeError};
use raagdyn::graph_io;
use raagdyn::lemmas::{self, LemmaError, TwoJumpsData, DEFAULT_J_CHECKED};
use raagdyn::pl::{PlMap, RotationNumber, DEFAULT_QMAX};
use raagdyn::{rational, sample, Domain, FreeProductWord};

#[derive(Parser)]
#[command(
    name = "raagdyn",
    version,
    about = "RAAG smoothability verdicts and exact PL dynamics"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Read input from this file instead of stdin.
    #[arg(long, global = true)]
    input: Option<PathBuf>,
    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Cotree, hierarchy level and smoothability verdict of a graph
    /// (edge list or DOT).
    Classify,
    /// A `(F2 x Z) * Z` subgroup witness for a graph above level 3.
    Witness,
    /// Build one action in which every listed word (one per line) acts
    /// nontrivially.
    Realize,
    /// Run an exact checker.
    Verify {
        #[arg(value_enum)]
        check: Check,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Random samples to draw when no --input is given.
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = DEFAULT_QMAX)]
        qmax: u32,
    },
    /// Rotation number of a circle map.
    Rot {
        #[arg(long, default_value_t = DEFAULT_QMAX)]
        qmax: u32,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Check {
    /// Re-certify an action bundle from `realize`.
    Action,
    CommSupp,
    PhiSupp,
    C1,
    TwoJumps,
    Lamplighter,
    Rot,
}

enum Failure {
    Input(String),
    Verification(String),
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

struct Report {
    json: Value,
    text: String,
    ok: bool,
}

impl Report {
    fn new(json: Value, text: String) -> Self {
        Report {
            json,
            text,
            ok: true,
        }
    }
}

fn read_input(path: &Option<PathBuf>) -> Result<String, Failure> {
    match path {
        Some(p) => {
            fs::read_to_string(p).map_err(|e| Failure::Input(format!("{}: {e}", p.display())))
        }
        None => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s)?;
            Ok(s)
        }
    }
}

fn parse_json(src: &str) -> Result<Value, Failure> {
    serde_json::from_str(src).map_err(|e| Failure::Input(format!("invalid JSON: {e}")))
}

fn map_field(v: &Value, key: &str) -> Result<PlMap, Failure> {
    let raw = v
        .get(key)
        .ok_or_else(|| Failure::Input(format!("missing map {key:?}")))?;
    serde_json::from_value(raw.clone()).map_err(|e| Failure::Input(format!("{key}: {e}")))
}

fn lemma_err(e: LemmaError) -> Failure {
    Failure::Input(e.to_string())
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn classify(src: &str) -> Result<Report, Failure> {
    let g = graph_io::parse_graph(src).map_err(|e| Failure::Input(e.to_string()))?;
    let report = cotree::classification_report(&g).map_err(|e| Failure::Input(e.to_string()))?;
    let c = cotree::classify(&g).map_err(|e| Failure::Input(e.to_string()))?;
    let mut text = String::new();
    match c.level.level() {
        Some(n) => text.push_str(&format!("level: {n}\ncotree: {}\n", report["cotree"])),
        None => text.push_str(&format!("level: none (full P4: {})\n", report["p4"])),
    }
    let v = c.verdict;
    text.push_str(&format!(
        "C^1: {}\nC^(1+bv): {}\nC^inf: {}\nC^omega: {}\ncircle: {:?}\n",
        yes_no(v.c1),
        yes_no(v.c1bv),
        yes_no(v.c_infinity),
        yes_no(v.c_omega),
        v.circle_class
    ));
    Ok(Report::new(report, text))
}

fn witness(src: &str) -> Result<Report, Failure> {
    let g = graph_io::parse_graph(src).map_err(|e| Failure::Input(e.to_string()))?;
    match cotree::witness(&g) {
        Ok(w) => {
            let gens: Vec<String> = w.generators().iter().map(ToString::to_string).collect();
            Ok(Report::new(
                w.to_json(),
                format!("generators: {}\n", gens.join(", ")),
            ))
        }
        Err(e @ CotreeError::NotApplicable) | Err(e @ CotreeError::EmptyGraph) => {
            Err(Failure::Input(e.to_string()))
        }
        Err(e) => Err(Failure::Input(e.to_string())),
    }
}

fn realize(src: &str) -> Result<Report, Failure> {
    let mut words = Vec::new();
    for (i, line) in src.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let w: FreeProductWord = line
            .parse()
            .map_err(|e| Failure::Input(format!("line {}: {e}", i + 1)))?;
        if w.is_empty() {
            return Err(Failure::Input(format!(
                "line {}: word {line:?} is trivial",
                i + 1
            )));
        }
        words.push(w);
    }
    if words.is_empty() {
        return Err(Failure::Input("no words given".into()));
    }
    let fa = actions::build_faithful_on(&words).map_err(|e| Failure::Input(e.to_string()))?;
    fa.certify()
        .map_err(|e| Failure::Verification(e.to_string()))?;
    let text = format!(
        "{} words realized; a, b, t have {}, {}, {} breakpoints\n",
        words.len(),
        fa.assignment.a.points().len(),
        fa.assignment.b.points().len(),
        fa.assignment.t.points().len()
    );
    Ok(Report::new(fa.to_json(), text))
}

fn rot_value(r: &RotationNumber) -> String {
    match r {
        RotationNumber::Exact(x) => rational::format(x),
        RotationNumber::Bounds(lo, hi) => {
            format!("[{}, {}]", rational::format(lo), rational::format(hi))
        }
    }
}

fn rot(src: &str, qmax: u32) -> Result<Report, Failure> {
    let v = parse_json(src)?;
    let f: PlMap = match v.get("f") {
        Some(_) => map_field(&v, "f")?,
        None => serde_json::from_value(v).map_err(|e| Failure::Input(e.to_string()))?,
    };
    let r = f
        .rotation_number(qmax)
        .map_err(|e| Failure::Input(e.to_string()))?;
    Ok(Report::new(
        r.to_json(),
        format!("rot: {}\n", rot_value(&r)),
    ))
}

/// Outcome of a batch of assertable checks.
fn batch(check: &str, seed: Option<u64>, results: Vec<(usize, Option<String>)>) -> Report {
    let failures: Vec<Value> = results
        .iter()
        .filter_map(|(i, f)| {
            f.as_ref()
                .map(|why| json!({ "index": i, "violating": why }))
        })
        .collect();
    let ok = failures.is_empty();
    let text = format!(
        "{check}: {} of {} passed\n",
        results.len() - failures.len(),
        results.len()
    );
    Report {
        json: json!({
            "check": check,
            "seed": seed,
            "samples": results.len(),
            "failures": failures,
            "passed": ok,
        }),
        text,
        ok,
    }
}

fn verify(
    check: Check,
    input: &Option<PathBuf>,
    seed: u64,
    samples: usize,
    qmax: u32,
) -> Result<Report, Failure> {
    let given = match input {
        Some(_) => Some(parse_json(&read_input(input)?)?),
        None => None,
    };
    let need_input = |what: &str| Failure::Input(format!("{what} needs --input"));
    match check {
        Check::Action => {
            let v = given.ok_or_else(|| need_input("action"))?;
            let fa = FaithfulAction::from_json(&v).map_err(|e| Failure::Input(e.to_string()))?;
            let outcome = fa.certify();
            let ok = outcome.is_ok();
            let detail = outcome.err().map(|e| e.to_string());
            Ok(Report {
                json: json!({ "check": "action", "words": fa.words.len(), "passed": ok, "failure": detail }),
                text: format!("action: {}\n", detail.as_deref().unwrap_or("certified")),
                ok,
            })
        }
        Check::CommSupp => {
            let results = match given {
                Some(v) => {
                    let r = lemmas::check_commutator_support(
                        &map_field(&v, "f")?,
                        &map_field(&v, "g")?,
                    )
                    .map_err(lemma_err)?;
                    vec![(0, (!r.holds).then(|| r.violating.to_string()))]
                }
                None => {
                    let mut rng = sample::rng(seed);
                    (0..samples)
                        .map(|i| {
                            let d = if i % 2 == 0 {
                                Domain::Interval
                            } else {
                                Domain::Circle
                            };
                            let f = sample::map(&mut rng, d);
                            let g = sample::map(&mut rng, d);
                            let r = lemmas::check_commutator_support(&f, &g).map_err(lemma_err)?;
                            Ok((i, (!r.holds).then(|| r.violating.to_string())))
                        })
                        .collect::<Result<_, Failure>>()?
                }
            };
            Ok(batch("comm-supp", given_seed(input, seed), results))
        }
        Check::PhiSupp => {
            let results = match given {
                Some(v) => {
                    let (b, c, d) = (
                        map_field(&v, "b")?,
                        map_field(&v, "c")?,
                        map_field(&v, "d")?,
                    );
                    let r = lemmas::check_phi_support(&b, &c, &d).map_err(lemma_err)?;
                    vec![(0, (!r.holds).then(|| r.violating.to_string()))]
                }
                None => {
                    let mut rng = sample::rng(seed);
                    (0..samples)
                        .map(|i| {
                            let b = sample::interval_map(&mut rng);
                            let (c, d) = sample::disjoint_pair(&mut rng);
                            let r = lemmas::check_phi_support(&b, &c, &d).map_err(lemma_err)?;
                            Ok((i, (!r.holds).then(|| r.violating.to_string())))
                        })
                        .collect::<Result<_, Failure>>()?
                }
            };
            Ok(batch("phi-supp", given_seed(input, seed), results))
        }
        Check::C1 => {
            // Report only: the containment is not a theorem for PL maps.
            let reports = match given {
                Some(v) => {
                    let (b, c, d) = (
                        map_field(&v, "b")?,
                        map_field(&v, "c")?,
                        map_field(&v, "d")?,
                    );
                    vec![lemmas::check_c1_containment(&b, &c, &d).map_err(lemma_err)?]
                }
                None => {
                    let mut rng = sample::rng(seed);
                    (0..samples)
                        .map(|_| {
                            let b = sample::interval_map(&mut rng);
                            let (c, d) = sample::disjoint_pair(&mut rng);
                            lemmas::check_c1_containment(&b, &c, &d).map_err(lemma_err)
                        })
                        .collect::<Result<_, Failure>>()?
                }
            };
            let held = reports.iter().filter(|r| r.holds).count();
            let json = match reports.as_slice() {
                [one] => json!({ "check": "c1", "report": one.to_json() }),
                many => json!({
                    "check": "c1",
                    "seed": seed,
                    "samples": many.len(),
                    "held": held,
                    "violations": many
                        .iter()
                        .enumerate()
                        .filter(|(_, r)| !r.holds)
                        .map(|(i, r)| json!({ "index": i, "violating": r.violating.to_string() }))
                        .collect::<Vec<_>>(),
                }),
            };
            Ok(Report::new(
                json,
                format!("c1: containment held in {held} of {}\n", reports.len()),
            ))
        }
        Check::TwoJumps => {
            let v = given.ok_or_else(|| need_input("two-jumps"))?;
            let data = TwoJumpsData::from_json(&v).map_err(Failure::Input)?;
            let r = lemmas::check_two_jumps_prefix(&data).map_err(lemma_err)?;
            let gaps: Vec<String> = r.gaps.iter().map(rational::format).collect();
            Ok(Report {
                text: format!(
                    "two-jumps: {}; gaps {}\n",
                    if r.valid { "valid" } else { "invalid" },
                    gaps.join(" ")
                ),
                json: r.to_json(),
                ok: r.valid,
            })
        }
        Check::Lamplighter => {
            let pairs = match given {
                Some(v) => vec![(map_field(&v, "g")?, map_field(&v, "u")?)],
                None => {
                    let mut rng = sample::rng(seed);
                    (0..samples)
                        .map(|_| sample::lamplighter_pair(&mut rng))
                        .collect()
                }
            };
            let mut certs = Vec::new();
            for (g, u) in &pairs {
                match lemmas::lamplighter_certificate(g, u, DEFAULT_J_CHECKED) {
                    Ok(c) => certs.push(c.map(|c| c.to_json()).unwrap_or(Value::Null)),
                    Err(e @ LemmaError::Inconsistent(_)) => {
                        return Err(Failure::Verification(e.to_string()))
                    }
                    Err(e) => return Err(lemma_err(e)),
                }
            }
            let found = certs.iter().filter(|c| !c.is_null()).count();
            // Sampled pairs are built to be certifiable; a miss there is a failure.
            let ok = input.is_some() || found == certs.len();
            Ok(Report {
                json: json!({ "check": "lamplighter", "certificates": certs, "passed": ok }),
                text: format!("lamplighter: {found} of {} certified\n", certs.len()),
                ok,
            })
        }
        Check::Rot => {
            let v = given.ok_or_else(|| need_input("rot"))?;
            rot(&v.to_string(), qmax)
        }
    }
}

fn given_seed(input: &Option<PathBuf>, seed: u64) -> Option<u64> {
    input.is_none().then_some(seed)
}

fn emit(report: &Report, format: Format, output: &Option<PathBuf>) -> Result<(), Failure> {
    let body = match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&report.json).expect("serializable");
            s.push('\n');
            s
        }
        Format::Text => report.text.clone(),
    };
    match output {
        Some(p) => fs::write(p, body).map_err(|e| Failure::Input(format!("{}: {e}", p.display()))),
        None => {
            io::stdout().write_all(body.as_bytes())?;
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<Report, Failure> {
    match cli.command {
        Command::Classify => classify(&read_input(&cli.input)?),
        Command::Witness => witness(&read_input(&cli.input)?),
        Command::Realize => realize(&read_input(&cli.input)?),
        Command::Rot { qmax } => rot(&read_input(&cli.input)?, qmax),
        Command::Verify {
            check,
            seed,
            samples,
            qmax,
        } => verify(check, &cli.input, seed, samples, qmax),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (format, output) = (cli.format, cli.output.clone());
    let result = run(cli).and_then(|r| emit(&r, format, &output).map(|_| r));
    match result {
        Ok(r) if r.ok => ExitCode::SUCCESS,
        Ok(_) => ExitCode::from(1),
        Err(Failure::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
