//! Command-line front end. Every subcommand prints one compact JSON document
//! on stdout. Exit codes: 0 when all checks pass, 1 when a check fails, 2 on
//! input errors.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::de::DeserializeOwned;
use serde_json::{json, Value};

use crate::error::Error;
use crate::harrison::{self, HarrisonCochain};
use crate::homcat::{self, CoherenceConfig, HomObject, MonoidalParams, TildeStructure};
use crate::laurent::{GroupElement, TensorElement};
use crate::quasibialgebra::{self, CanonicalTriple, QuasiBialgebraPresentation};
use crate::quasitriangular::{self, RMatrix};
use crate::rational::{self, Rational};

#[derive(Parser, Debug)]
#[command(name = "qbialg", version, about = "Exact quasi-bialgebra structures on Laurent group algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check every quasi-bialgebra axiom of a presentation.
    Verify(InputArg),
    /// Twist a presentation by a unit of H⊗H.
    Twist {
        #[command(flatten)]
        input: InputArg,
        /// Tensor element JSON file with two legs.
        #[arg(long)]
        alpha: PathBuf,
    },
    /// Find a monomial twist taking the presentation to the ordinary bialgebra.
    Trivialize(InputArg),
    /// Rescale the generators so that Δ and ε become the ordinary ones.
    Normalize(InputArg),
    /// List all R-matrices of a presentation.
    SolveR(InputArg),
    /// Check the quasi-triangularity identities for a given R-matrix.
    VerifyR {
        #[command(flatten)]
        input: InputArg,
        /// Tensor element JSON file with two legs.
        #[arg(long)]
        r: PathBuf,
    },
    /// Apply the Harrison boundary to a cochain.
    Boundary {
        #[arg(long)]
        degree: usize,
        #[command(flatten)]
        input: InputArg,
        /// Evaluate the parity-wise closed form instead of the coface product.
        #[arg(long)]
        closed_form: bool,
    },
    /// Harrison cohomology of k[Z^r] in one degree.
    Cohomology {
        #[arg(long)]
        rank: usize,
        #[arg(long)]
        degree: usize,
    },
    /// Canonical structure for (q, h, g): presentation, trivializing twist, R-matrix.
    Classify {
        #[arg(long)]
        rank: usize,
        #[arg(long, allow_hyphen_values = true)]
        q: String,
        /// Comma-separated exponents.
        #[arg(long, allow_hyphen_values = true)]
        h: String,
        /// Comma-separated exponents.
        #[arg(long, allow_hyphen_values = true)]
        g: String,
    },
    /// Sample coherence checks for the structure H^{a,b}_q.
    Homcheck {
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        sampling: SamplingArgs,
    },
    /// Compare the constraints of two structures on the same sampled objects.
    CompareHom {
        #[arg(long, allow_hyphen_values = true)]
        q1: String,
        #[arg(long, allow_hyphen_values = true)]
        a1: i64,
        #[arg(long, allow_hyphen_values = true)]
        b1: i64,
        /// Compare against the modified structure (ã, l̃, r̃) instead of (q2, a2, b2).
        #[arg(long, conflicts_with_all = ["q2", "a2", "b2"])]
        tilde: bool,
        #[arg(long, allow_hyphen_values = true, required_unless_present = "tilde")]
        q2: Option<String>,
        #[arg(long, allow_hyphen_values = true, required_unless_present = "tilde")]
        a2: Option<i64>,
        #[arg(long, allow_hyphen_values = true, required_unless_present = "tilde")]
        b2: Option<i64>,
        #[command(flatten)]
        sampling: SamplingArgs,
    },
}

#[derive(Args, Debug)]
struct InputArg {
    /// JSON input file.
    #[arg(long)]
    input: PathBuf,
}

#[derive(Args, Debug)]
struct ParamArgs {
    #[arg(long, allow_hyphen_values = true)]
    q: String,
    #[arg(long, allow_hyphen_values = true)]
    a: i64,
    #[arg(long, allow_hyphen_values = true)]
    b: i64,
}

#[derive(Args, Debug)]
struct SamplingArgs {
    /// Comma-separated object dimensions to sample from.
    #[arg(long, default_value = "1,2,3")]
    dims: String,
    #[arg(long, default_value_t = 10)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// JSON list of extra objects `{"dim": d, "f": [[..]]}` to check as well.
    #[arg(long)]
    objects: Option<PathBuf>,
}

/// An input problem, reported on stderr with exit code 2.
struct InputError(String);

impl From<Error> for InputError {
    fn from(e: Error) -> Self {
        InputError(e.to_string())
    }
}

type CliResult<T> = Result<T, InputError>;

/// Outcome of a subcommand: the JSON report and whether every check passed.
struct Outcome {
    report: Value,
    pass: bool,
}

impl Outcome {
    fn ok(report: Value) -> Self {
        Outcome { report, pass: true }
    }
}

/// Runs the CLI on `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                let _ = write!(err, "{e}");
                2
            } else {
                let _ = write!(out, "{e}");
                0
            };
            return code;
        }
    };
    match dispatch(cli.command) {
        Ok(outcome) => {
            let text = serde_json::to_string(&outcome.report).expect("reports serialize");
            if writeln!(out, "{text}").is_err() {
                return 2;
            }
            if outcome.pass {
                0
            } else {
                1
            }
        }
        Err(InputError(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
    }
}

fn read_json<T: DeserializeOwned>(path: &Path) -> CliResult<T> {
    let text = std::fs::read_to_string(path).map_err(|e| InputError(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| {
        let msg = e.to_string();
        if e.line() == 0 {
            return InputError(format!("{}: {msg}", path.display()));
        }
        let msg = msg.strip_suffix(&format!(" at line {} column {}", e.line(), e.column())).unwrap_or(&msg);
        InputError(format!("{}:{}:{}: {msg}", path.display(), e.line(), e.column()))
    })
}

fn parse_rational(flag: &str, s: &str) -> CliResult<Rational> {
    rational::parse(s).map_err(|e| InputError(format!("--{flag}: {e}")))
}

fn parse_group_element(flag: &str, s: &str, rank: usize) -> CliResult<GroupElement> {
    let exps = s
        .split(',')
        .map(|x| x.trim().parse::<i64>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|_| InputError(format!("--{flag}: expected comma-separated integers, got {s:?}")))?;
    if exps.len() != rank {
        return Err(InputError(format!("--{flag}: expected {rank} exponents, got {}", exps.len())));
    }
    Ok(GroupElement::new(exps))
}

fn params(flag: &str, q: &str, a: i64, b: i64) -> CliResult<MonoidalParams> {
    Ok(MonoidalParams::new(parse_rational(flag, q)?, a, b)?)
}

fn sampling(s: &SamplingArgs) -> CliResult<(CoherenceConfig, Vec<HomObject>)> {
    let dims = s
        .dims
        .split(',')
        .map(|x| x.trim().parse::<usize>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|_| InputError(format!("--dims: expected comma-separated sizes, got {:?}", s.dims)))?;
    if dims.is_empty() || dims.contains(&0) {
        return Err(InputError("--dims: sizes must be positive".into()));
    }
    let objects = match &s.objects {
        Some(path) => read_json::<Vec<HomObject>>(path)?,
        None => Vec::new(),
    };
    Ok((CoherenceConfig::new(dims, s.trials, s.seed), objects))
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

fn dispatch(command: Command) -> CliResult<Outcome> {
    match command {
        Command::Verify(i) => {
            let p: QuasiBialgebraPresentation = read_json(&i.input)?;
            let report = quasibialgebra::verify(&p);
            Ok(Outcome { pass: report.all_pass(), report: json!({ "pass": report.all_pass(), "checks": report }) })
        }
        Command::Twist { input, alpha } => {
            let p: QuasiBialgebraPresentation = read_json(&input.input)?;
            let alpha: TensorElement = read_json(&alpha)?;
            Ok(Outcome::ok(to_value(&quasibialgebra::twist(&p, &alpha)?)))
        }
        Command::Trivialize(i) => {
            let p: QuasiBialgebraPresentation = read_json(&i.input)?;
            Ok(match quasibialgebra::find_trivializing_twist(&p) {
                Ok(f) => {
                    let twisted = quasibialgebra::twist(&p, &f)?;
                    let pass = twisted.is_ordinary();
                    Outcome { pass, report: json!({ "twist": f, "twisted": twisted, "ordinary": pass }) }
                }
                Err(e @ Error::NoMonomialTwist(_)) => {
                    Outcome { pass: false, report: json!({ "twist": null, "reason": e.to_string() }) }
                }
                Err(e) => return Err(e.into()),
            })
        }
        Command::Normalize(i) => {
            let p: QuasiBialgebraPresentation = read_json(&i.input)?;
            Ok(match quasibialgebra::normalize(&p) {
                Ok((iso, q)) => {
                    let images: Vec<Value> = iso.generator_images().iter().map(|u| to_value(&u.to_tensor())).collect();
                    Outcome::ok(json!({ "iso": images, "presentation": q }))
                }
                Err(e @ Error::NotForcedForm { .. }) => {
                    Outcome { pass: false, report: json!({ "iso": null, "reason": e.to_string() }) }
                }
                Err(e) => return Err(e.into()),
            })
        }
        Command::SolveR(i) => {
            let p: QuasiBialgebraPresentation = read_json(&i.input)?;
            let sols = quasitriangular::solve_r(&p)?;
            let triangular = sols
                .iter()
                .map(|r| Ok(quasitriangular::verify_r(&p, r)?.passes("triangular")))
                .collect::<Result<Vec<bool>, Error>>()?;
            Ok(Outcome::ok(json!({ "r_matrices": sols, "triangular": triangular })))
        }
        Command::VerifyR { input, r } => {
            let p: QuasiBialgebraPresentation = read_json(&input.input)?;
            let r: RMatrix = read_json(&r)?;
            let report = quasitriangular::verify_r(&p, &r)?;
            Ok(Outcome { pass: report.all_pass(), report: json!({ "pass": report.all_pass(), "checks": report }) })
        }
        Command::Boundary { degree, input, closed_form } => {
            let u: HarrisonCochain = read_json(&input.input)?;
            let image =
                if closed_form { harrison::boundary_closed_form(degree, &u)? } else { harrison::boundary(degree, &u)? };
            Ok(Outcome::ok(to_value(&image)))
        }
        Command::Cohomology { rank, degree } => {
            if rank == 0 {
                return Err(InputError("--rank must be at least 1".into()));
            }
            Ok(Outcome::ok(to_value(&harrison::cohomology(rank, degree))))
        }
        Command::Classify { rank, q, h, g } => {
            if rank == 0 {
                return Err(InputError("--rank must be at least 1".into()));
            }
            let q = parse_rational("q", &q)?;
            let h = parse_group_element("h", &h, rank)?;
            let g = parse_group_element("g", &g, rank)?;
            let t = CanonicalTriple::new(q, h.clone(), g.clone())?;
            let p = quasibialgebra::canonical(&t);
            let verified = quasibialgebra::verify(&p).all_pass();
            let twist = quasibialgebra::find_trivializing_twist(&p).ok();
            let sols = quasitriangular::solve_r(&p)?;
            let cocycles = harrison::cocycle_classify(rank);
            let expected_r = quasitriangular::braided_r(&g.mul(&h));
            let pass = verified
                && twist.as_ref() == Some(&t.trivializing_twist())
                && sols == [expected_r]
                && cocycles.is_h_one_g();
            Ok(Outcome {
                pass,
                report: json!({
                    "presentation": p,
                    "verified": verified,
                    "trivializing_twist": twist,
                    "r_matrices": sols,
                    "cocycles": cocycles,
                }),
            })
        }
        Command::Homcheck { params: pa, sampling: sa } => {
            let p = params("q", &pa.q, pa.a, pa.b)?;
            let (cfg, objects) = sampling(&sa)?;
            let report = homcat::check_coherence(&p, &objects, &cfg);
            Ok(Outcome { pass: report.all_pass(), report: json!({ "params": p, "report": report }) })
        }
        Command::CompareHom { q1, a1, b1, tilde, q2, a2, b2, sampling: sa } => {
            let p1 = params("q1", &q1, a1, b1)?;
            let (cfg, objects) = sampling(&sa)?;
            let (report, other) = if tilde {
                (homcat::compare_structures(&p1, &TildeStructure, &objects, &cfg), json!("tilde"))
            } else {
                let (q2, a2, b2) = (q2.expect("required"), a2.expect("required"), b2.expect("required"));
                let p2 = params("q2", &q2, a2, b2)?;
                (homcat::compare_structures(&p1, &p2, &objects, &cfg), to_value(&p2))
            };
            let equal = report.all_equal();
            Ok(Outcome { pass: equal, report: json!({ "p1": p1, "p2": other, "equal": equal, "report": report }) })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("qbialg").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn cohomology_command() {
        let (code, out, _) = run_str(&["cohomology", "--rank", "2", "--degree", "4"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v, json!({"free_rank": 0, "torsion": [], "scalar_factor": false}));
    }

    #[test]
    fn classify_command() {
        let (code, out, _) = run_str(&["classify", "--rank", "1", "--q", "2", "--h", "1", "--g", "1"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["trivializing_twist"], json!({"rank": 1, "legs": 2, "terms": [{"c": "2/1", "e": [[1], [-1]]}]}));
        assert_eq!(v["r_matrices"], json!([{"rank": 1, "legs": 2, "terms": [{"c": "1/1", "e": [[2], [-2]]}]}]));
    }

    #[test]
    fn negative_group_elements_parse() {
        let (code, _, err) = run_str(&["classify", "--rank", "2", "--q", "-1/3", "--h", "-1,2", "--g", "0,-4"]);
        assert_eq!(code, 0, "{err}");
        let (code, _, err) = run_str(&["classify", "--rank", "2", "--q", "1", "--h", "1", "--g", "0,0"]);
        assert_eq!(code, 2);
        assert!(err.contains("--h"));
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(run_str(&["bogus"]).0, 2);
        assert_eq!(run_str(&["cohomology", "--rank", "x", "--degree", "1"]).0, 2);
        assert_eq!(run_str(&["verify", "--input", "/nonexistent/file.json"]).0, 2);
        assert_eq!(run_str(&["--help"]).0, 0);
    }
}
