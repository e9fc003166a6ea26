//! Command-line front end. [`run`] takes the argument vector and returns the
//! exit code with the text to print, so it can be driven from tests.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::arithmetic::{AdicApprox, DigitWindow};
use crate::classify::{
    maximal_open_ring, ring_companion, self_dual, sequence_surgery, ClassificationReport,
    MaximalRing, PairReport, SurgeryOp,
};
use crate::duality::{pair_general, verify_annihilator, Angle, Flavor};
use crate::dynamics::{
    contraction_witness, fixed_point_in_n, haar_index, orbit_witness, AffineElement, FixedPoints,
    HSubgroup,
};
use crate::error::AdicError;
use crate::lattice::{place_value, FracIdeal};
use crate::rational::{fmt_rational, parse_positive, parse_rational};
use crate::sequence::SequenceSpec;
use crate::supernatural::Witness;

#[derive(Parser, Debug)]
#[command(
    name = "adic-lab",
    version,
    about = "Exact computations with a-adic numbers"
)]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Default)]
struct SpecArgs {
    /// Sequence spec file (JSON). Inline JSON is accepted as well.
    #[arg(long)]
    spec: Option<PathBuf>,
    /// Second spec, for comparisons.
    #[arg(long)]
    spec2: Option<PathBuf>,
    /// Spec files given positionally.
    #[arg(value_name = "SPEC")]
    specs: Vec<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// λ, ρ, P, Q and structural flags of one sequence.
    Invariants(SpecArgs),
    /// Compare two sequences.
    Classify(SpecArgs),
    /// Self-duality witness (p, q) with pλ = qρ.
    Selfdual(SpecArgs),
    /// Ring criterion, maximal open ring, and optionally a ring companion.
    Ring {
        #[command(flatten)]
        specs: SpecArgs,
        /// Print a ring companion for H generated by these rationals.
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        companion: Option<Vec<String>>,
    },
    /// Digits of ι(q) below the given precision.
    Embed {
        #[command(flatten)]
        specs: SpecArgs,
        #[arg(long, allow_hyphen_values = true)]
        q: String,
        #[arg(long, default_value_t = 8)]
        precision: i64,
    },
    /// Digit-level sum of ι(x) and ι(y).
    Add {
        #[command(flatten)]
        specs: SpecArgs,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, allow_hyphen_values = true)]
        y: String,
        #[arg(long, default_value_t = 8)]
        precision: i64,
    },
    /// Apply (r, h) to ι(q).
    Act {
        #[command(flatten)]
        specs: SpecArgs,
        #[arg(long, allow_hyphen_values = true, default_value = "0")]
        r: String,
        #[arg(long, default_value = "1")]
        h: String,
        #[arg(long, allow_hyphen_values = true)]
        q: String,
        #[arg(long, default_value_t = 8)]
        precision: i64,
    },
    /// Pairing of ι(x) over a with ι(y) over the reflected sequence.
    Pair {
        #[command(flatten)]
        specs: SpecArgs,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, allow_hyphen_values = true)]
        y: String,
        #[arg(long, value_enum, default_value_t = FlavorArg::Star)]
        flavor: FlavorArg,
        /// General reflection index; overrides --flavor.
        #[arg(long, allow_hyphen_values = true)]
        n: Option<i64>,
        #[arg(long, default_value_t = 32)]
        precision: i64,
    },
    /// Dynamical witnesses for the ax+b action.
    Witness {
        #[command(subcommand)]
        kind: WitnessKind,
    },
    /// Modular index δ(h).
    Haar {
        #[command(flatten)]
        specs: SpecArgs,
        #[arg(long)]
        h: String,
    },
    /// Modify the sequence and report whether Ω is preserved.
    Surgery {
        #[command(flatten)]
        specs: SpecArgs,
        #[arg(long, value_enum)]
        op: OpArg,
        #[arg(long, allow_hyphen_values = true)]
        i: Option<i64>,
        #[arg(long)]
        c: Option<u64>,
        #[arg(long)]
        d: Option<u64>,
        #[arg(long, allow_hyphen_values = true)]
        n: Option<i64>,
    },
    /// Batch verification suites.
    Verify {
        #[command(flatten)]
        specs: SpecArgs,
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long, default_value_t = 4)]
        jmax: i64,
    },
}

#[derive(Subcommand, Debug)]
enum WitnessKind {
    /// (r, s) contracting q + I inside itself.
    Contract {
        #[command(flatten)]
        specs: SpecArgs,
        /// Generators of H, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        h: Vec<String>,
        #[arg(long, allow_hyphen_values = true, default_value = "0")]
        q: String,
        #[arg(long, default_value = "1")]
        ideal: String,
    },
    /// A translation reaching q + O_j from 0.
    Orbit {
        #[command(flatten)]
        specs: SpecArgs,
        #[arg(long, allow_hyphen_values = true)]
        q: String,
        #[arg(long, default_value_t = 8)]
        precision: i64,
    },
    /// Fixed points of (r, h) in N.
    Fixed {
        #[command(flatten)]
        specs: SpecArgs,
        #[arg(long, allow_hyphen_values = true)]
        r: String,
        #[arg(long)]
        h: String,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FlavorArg {
    Star,
    Sharp,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OpArg {
    Factor,
    Merge,
    Swap,
    Shift,
    Remove,
    Insert,
    Reflect,
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Annihilator,
    Homomorphism,
    Stabilization,
    Bicharacter,
}

/// Outcome of a verification suite.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub suite: Suite,
    pub checks: u64,
    pub failures: Vec<String>,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingReport {
    pub is_ring: bool,
    pub maximal_ring: MaximalRing,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub companion: Option<SequenceSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelfDualReport {
    pub self_dual: bool,
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairOutput {
    pub n: i64,
    pub angle: Angle,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HaarOutput {
    #[serde(with = "crate::rational::serde_rational")]
    pub h: BigRational,
    #[serde(with = "crate::rational::serde_rational")]
    pub delta: BigRational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurgeryOutput {
    pub spec: SequenceSpec,
    pub preserved: bool,
}

enum Failure {
    Usage(String),
    Domain(String),
}

impl From<AdicError> for Failure {
    fn from(e: AdicError) -> Self {
        match e {
            AdicError::Parse(_) | AdicError::InvalidSpec(_) => Failure::Usage(e.to_string()),
            _ => Failure::Domain(e.to_string()),
        }
    }
}

type Out = std::result::Result<String, Failure>;

/// Runs the CLI. Exit codes: 0 success, 1 domain error, 2 usage error.
pub fn run<I, T>(argv: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return (code, e.render().to_string());
        }
    };
    match dispatch(cli.command, cli.json) {
        Ok(s) => (0, s),
        Err(Failure::Domain(s)) => (1, format!("error: {s}\n")),
        Err(Failure::Usage(s)) => (2, format!("error: {s}\n")),
    }
}

fn load_spec(path: &Path) -> std::result::Result<SequenceSpec, Failure> {
    let text = path.to_string_lossy();
    let body = if text.trim_start().starts_with('{') {
        text.into_owned()
    } else {
        std::fs::read_to_string(path)
            .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?
    };
    Ok(SequenceSpec::from_json(&body)?)
}

impl SpecArgs {
    fn one(&self) -> std::result::Result<SequenceSpec, Failure> {
        match self.spec.as_ref().or(self.specs.first()) {
            Some(p) => load_spec(p),
            None => Err(Failure::Usage("a spec is required (--spec FILE)".into())),
        }
    }

    fn two(&self) -> std::result::Result<(SequenceSpec, SequenceSpec), Failure> {
        let mut paths: Vec<&PathBuf> = self.spec.iter().chain(self.spec2.iter()).collect();
        paths.extend(&self.specs);
        match paths.as_slice() {
            [a, b, ..] => Ok((load_spec(a)?, load_spec(b)?)),
            _ => Err(Failure::Usage("two specs are required".into())),
        }
    }
}

fn rational(s: &str) -> std::result::Result<BigRational, Failure> {
    Ok(parse_rational(s)?)
}

fn positive(s: &str) -> std::result::Result<BigRational, Failure> {
    Ok(parse_positive(s)?)
}

fn emit<T: Serialize>(json: bool, value: &T, text: impl FnOnce(&T) -> String) -> Out {
    if json {
        let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
        s.push('\n');
        Ok(s)
    } else {
        Ok(text(value))
    }
}

fn rows(pairs: &[(&str, String)]) -> String {
    let width = pairs
        .iter()
        .map(|(k, _)| k.chars().count())
        .max()
        .unwrap_or(0);
    let mut out = String::new();
    for (k, v) in pairs {
        let _ = writeln!(out, "{k:<width$}  {v}");
    }
    out
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref()
        .map_or_else(|| "none".to_string(), ToString::to_string)
}

fn window_text(w: &DigitWindow) -> String {
    let digits = w
        .digits
        .iter()
        .enumerate()
        .map(|(k, d)| format!("{}:{d}", w.floor + k as i64))
        .collect::<Vec<_>>()
        .join(" ");
    rows(&[
        ("floor", w.floor.to_string()),
        ("precision", w.precision.to_string()),
        ("digits", digits),
        ("exact", opt(&w.exact.as_ref().map(fmt_rational))),
    ])
}

fn dispatch(command: Command, json: bool) -> Out {
    match command {
        Command::Invariants(specs) => {
            let report = ClassificationReport::new(&specs.one()?);
            emit(json, &report, |r| {
                rows(&[
                    ("lambda", r.lambda.to_string()),
                    ("rho", r.rho.to_string()),
                    ("P", r.p.to_string()),
                    ("Q", r.q.to_string()),
                    ("self_dual", opt(&r.self_dual_witness)),
                    ("is_ring", r.flags.is_ring.to_string()),
                    ("integral_domain", opt(&r.integral_domain_prime)),
                ])
            })
        }
        Command::Classify(specs) => {
            let (a, b) = specs.two()?;
            emit(json, &PairReport::new(&a, &b), |r| {
                rows(&[
                    ("equivalent", r.equivalent.to_string()),
                    ("omega_isomorphic", r.omega_isomorphic.to_string()),
                    ("witness", opt(&r.omega_witness)),
                    ("delta_isomorphic", r.delta_isomorphic.to_string()),
                    ("n_equal", r.n_equal.to_string()),
                    ("n_isomorphic", r.n_isomorphic.to_string()),
                ])
            })
        }
        Command::Selfdual(specs) => {
            let witness = self_dual(&specs.one()?);
            let report = SelfDualReport {
                self_dual: witness.is_some(),
                witness,
            };
            emit(json, &report, |r| {
                rows(&[
                    ("self_dual", r.self_dual.to_string()),
                    ("witness", opt(&r.witness)),
                ])
            })
        }
        Command::Ring { specs, companion } => {
            let a = specs.one()?;
            let companion = match companion {
                Some(gens) => {
                    let gens = gens.iter().map(|g| positive(g)).collect::<Result<_, _>>()?;
                    Some(ring_companion(&a, &HSubgroup::new(gens)?)?)
                }
                None => None,
            };
            let maximal_ring = maximal_open_ring(&a);
            let report = RingReport {
                is_ring: maximal_ring.is_whole,
                maximal_ring,
                companion,
            };
            emit(json, &report, |r| {
                let mut lines = vec![
                    ("is_ring", r.is_ring.to_string()),
                    ("P", r.maximal_ring.p.to_string()),
                    ("aut_primes", r.maximal_ring.aut_primes.to_string()),
                ];
                if let Some(c) = &r.companion {
                    lines.push(("companion", c.to_json()));
                }
                rows(&lines)
            })
        }
        Command::Embed {
            specs,
            q,
            precision,
        } => {
            let x = AdicApprox::embed(&specs.one()?, &rational(&q)?, precision)?;
            emit(json, &x.window(), window_text)
        }
        Command::Add {
            specs,
            x,
            y,
            precision,
        } => {
            let a = specs.one()?;
            let sum = AdicApprox::embed(&a, &rational(&x)?, precision)?.add(&AdicApprox::embed(
                &a,
                &rational(&y)?,
                precision,
            )?)?;
            emit(json, &sum.window(), window_text)
        }
        Command::Act {
            specs,
            r,
            h,
            q,
            precision,
        } => {
            let a = specs.one()?;
            let g = AffineElement::new(rational(&r)?, positive(&h)?)?;
            g.validate(&a)?;
            let y = g.act(&AdicApprox::embed(&a, &rational(&q)?, precision)?)?;
            emit(json, &y.window(), window_text)
        }
        Command::Pair {
            specs,
            x,
            y,
            flavor,
            n,
            precision,
        } => {
            let a = specs.one()?;
            let n = n.unwrap_or(match flavor {
                FlavorArg::Star => Flavor::Star.shift(),
                FlavorArg::Sharp => Flavor::Sharp.shift(),
            });
            let xa = AdicApprox::embed(&a, &rational(&x)?, precision)?;
            let yb = AdicApprox::embed(&a.shift(n), &rational(&y)?, precision)?;
            let out = PairOutput {
                n,
                angle: pair_general(n, &xa, &yb)?,
            };
            emit(json, &out, |o| format!("{}\n", o.angle))
        }
        Command::Witness { kind } => witness(kind, json),
        Command::Haar { specs, h } => {
            let h = positive(&h)?;
            let delta = haar_index(&specs.one()?, &h)?;
            emit(json, &HaarOutput { h, delta }, |o| {
                rows(&[("h", fmt_rational(&o.h)), ("delta", fmt_rational(&o.delta))])
            })
        }
        Command::Surgery {
            specs,
            op,
            i,
            c,
            d,
            n,
        } => {
            let need = |v: Option<i64>, name: &str| {
                v.ok_or_else(|| Failure::Usage(format!("--{name} is required for this op")))
            };
            let needu = |v: Option<u64>, name: &str| {
                v.ok_or_else(|| Failure::Usage(format!("--{name} is required for this op")))
            };
            let op = match op {
                OpArg::Factor => SurgeryOp::Factor {
                    i: need(i, "i")?,
                    c: needu(c, "c")?,
                    d: needu(d, "d")?,
                },
                OpArg::Merge => SurgeryOp::Merge { i: need(i, "i")? },
                OpArg::Swap => SurgeryOp::Swap { i: need(i, "i")? },
                OpArg::Shift => SurgeryOp::Shift { n: need(n, "n")? },
                OpArg::Remove => SurgeryOp::Remove { i: need(i, "i")? },
                OpArg::Insert => SurgeryOp::Insert {
                    i: need(i, "i")?,
                    c: needu(c, "c")?,
                },
                OpArg::Reflect => SurgeryOp::Reflect,
            };
            let (spec, preserved) = sequence_surgery(&specs.one()?, op)?;
            emit(json, &SurgeryOutput { spec, preserved }, |o| {
                rows(&[
                    ("spec", o.spec.to_json()),
                    ("window", format!("{:?}", o.spec.window(-4, 5))),
                    ("preserved", o.preserved.to_string()),
                ])
            })
        }
        Command::Verify { specs, suite, jmax } => {
            if jmax < 1 {
                return Err(Failure::Usage("--jmax must be positive".into()));
            }
            let report = verify(&specs.one()?, suite, jmax)?;
            emit(json, &report, |r| {
                let mut s = format!(
                    "{:?}: {} checks, {} failures, {}\n",
                    r.suite,
                    r.checks,
                    r.failures.len(),
                    if r.passed { "all pass" } else { "FAILED" }
                );
                for f in &r.failures {
                    let _ = writeln!(s, "  {f}");
                }
                s
            })
        }
    }
}

fn witness(kind: WitnessKind, json: bool) -> Out {
    match kind {
        WitnessKind::Contract { specs, h, q, ideal } => {
            let gens = h.iter().map(|g| positive(g)).collect::<Result<_, _>>()?;
            let ideal: FracIdeal = ideal.parse()?;
            let g = contraction_witness(
                &specs.one()?,
                &HSubgroup::new(gens)?,
                &rational(&q)?,
                &ideal,
            )?;
            emit(json, &g, |g| format!("{g}\n"))
        }
        WitnessKind::Orbit {
            specs,
            q,
            precision,
        } => {
            let g = orbit_witness(&specs.one()?, &rational(&q)?, precision)?;
            emit(json, &g, |g| format!("{g}\n"))
        }
        WitnessKind::Fixed { specs, r, h } => {
            let g = AffineElement::new(rational(&r)?, positive(&h)?)?;
            let f = fixed_point_in_n(&specs.one()?, &g);
            emit(json, &f, |f| match f {
                FixedPoints::All => "all\n".to_string(),
                FixedPoints::None => "none\n".to_string(),
                FixedPoints::AtMostOne { point } => {
                    format!("at most one: {}\n", opt(&point.as_ref().map(fmt_rational)))
                }
            })
        }
    }
}

/// A fixed grid of elements `k·w_{-d}` of `N`.
fn sample_n(spec: &SequenceSpec) -> Vec<BigRational> {
    let mut out = Vec::new();
    for d in 0..3 {
        let w = place_value(spec, -d);
        for k in [-5i64, -2, -1, 1, 3, 4, 7] {
            out.push(&w * BigRational::from_integer(k.into()));
        }
    }
    out
}

fn verify(
    spec: &SequenceSpec,
    suite: Suite,
    jmax: i64,
) -> std::result::Result<VerifyReport, Failure> {
    let mut checks = 0u64;
    let mut failures = Vec::new();
    let mut check = |ok: bool, what: String| {
        checks += 1;
        if !ok {
            failures.push(what);
        }
    };
    let dual = spec.star();
    let precision = 24 + 2 * jmax;
    match suite {
        Suite::Annihilator => {
            for j in -jmax..=jmax {
                for flavor in [Flavor::Star, Flavor::Sharp] {
                    let ok = verify_annihilator(spec, j, flavor, 6)?;
                    check(ok, format!("j={j} {flavor:?}"));
                }
            }
        }
        Suite::Homomorphism => {
            let qs = sample_n(spec);
            for q in &qs {
                for r in &qs {
                    let lhs = AdicApprox::embed(spec, q, jmax)?
                        .add(&AdicApprox::embed(spec, r, jmax)?)?;
                    let rhs = AdicApprox::embed(spec, &(q + r), jmax)?;
                    for j in 1..=jmax {
                        check(
                            lhs.eq_mod(&rhs, j)?,
                            format!("q={} r={} j={j}", fmt_rational(q), fmt_rational(r)),
                        );
                    }
                }
            }
        }
        Suite::Stabilization | Suite::Bicharacter => {
            let (xs, ys) = (sample_n(spec), sample_n(&dual));
            let a0 = BigRational::from_integer(spec.entry(0).into());
            for x in &xs {
                for y in &ys {
                    let ex = AdicApprox::embed(spec, x, precision)?;
                    let ey = AdicApprox::embed(&dual, y, precision)?;
                    let angle = pair_general(0, &ex, &ey)?;
                    let label = format!("x={} y={}", fmt_rational(x), fmt_rational(y));
                    if suite == Suite::Stabilization {
                        let later = pair_general(
                            0,
                            &AdicApprox::embed(spec, x, precision + 8)?,
                            &AdicApprox::embed(&dual, y, precision + 8)?,
                        )?;
                        check(angle == later, label);
                    } else {
                        check(
                            angle == Angle::new(x * y / &a0),
                            format!("{label} closed form"),
                        );
                        let x2 = x + &xs[0];
                        let sum = pair_general(0, &AdicApprox::embed(spec, &x2, precision)?, &ey)?;
                        let parts = angle.clone()
                            + pair_general(0, &AdicApprox::embed(spec, &xs[0], precision)?, &ey)?;
                        check(sum == parts, format!("{label} additivity"));
                    }
                }
            }
        }
    }
    let passed = failures.is_empty();
    Ok(VerifyReport {
        suite,
        checks,
        failures,
        passed,
    })
}
