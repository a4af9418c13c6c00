//! The `evencliff` command line: every operation of the library behind a
//! subcommand, with JSON output and exit codes 0 (success), 1 (a check
//! failed) and 2 (bad usage or input).

mod parse;

use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::Value;

use crate::algebra4::Algebra4;
use crate::classify::{normalize_semiregular, orbit_census, stratum};
use crate::clifford::{
    act_stabw, clifford_product_oracle, opposite_involution_check, theta, theta_to_bilinear, upsilon, StabWMap,
    ThetaPoint,
};
use crate::coeff::{RingSpec, Scalar};
use crate::error::{Error, Result};
use crate::forms::{BilinearForm33, TernaryQuadraticForm};
use crate::lifting::{section_s_plus, section_s_prime, twisted_equivariance_check, Similarity};
use crate::linalg::Matrix;

pub use parse::{parse_form, parse_scalars};

#[derive(Parser, Debug)]
#[command(name = "evencliff", about = "Ternary quadratic forms and their even Clifford algebras")]
pub struct Command {
    /// Coefficient ring: Z, Q, Fp:<p>, F2k:<k> or ZPoly:<vars>.
    #[arg(long, global = true)]
    ring: Option<String>,
    /// Write the JSON result to this file instead of standard output.
    #[arg(long, global = true)]
    out: Option<std::path::PathBuf>,
    /// Emit JSON (the only format).
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    action: Action,
}

#[derive(Subcommand, Debug)]
enum Action {
    /// Evaluate a form at a point.
    Eval {
        form: String,
        /// Three scalars, comma separated.
        #[arg(long, allow_hyphen_values = true)]
        at: String,
    },
    /// Half-discriminant and semiregularity.
    Semiregular { form: String },
    /// Stratum of a form over a field, with a normalizing matrix when semiregular.
    Classify { form: String },
    /// Structure constants of θ(q, t) or of Υ(B).
    Clifford {
        form: Option<String>,
        /// Translation t1,t2,t3 for θ(q, t).
        #[arg(long, allow_hyphen_values = true)]
        t: Option<String>,
        /// Nine entries of B, row by row, for Υ(B).
        #[arg(long, allow_hyphen_values = true, conflicts_with_all = ["form", "t"])]
        matrix: Option<String>,
        /// Compare the table with the Clifford-relation rewriting; exit 1 on mismatch.
        #[arg(long)]
        check_table: bool,
    },
    /// Lift an isomorphism θ(q) → θ(q') to a similarity.
    Lift {
        form: String,
        target: String,
        /// Sixteen entries of the 4×4 map, row by row.
        #[arg(long, allow_hyphen_values = true)]
        h: String,
        /// Twist index of the s⁺ section.
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        k: i64,
        #[arg(long, value_enum, default_value_t = Section::Plus)]
        section: Section,
    },
    /// Similarity and algebra-isomorphism census over a field with at most four elements.
    Census,
    /// Run the built-in identity checks.
    Selftest,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Section {
    Plus,
    Prime,
}

/// A finished command: JSON payload and whether its checks passed.
struct Outcome {
    json: String,
    passed: bool,
}

impl Outcome {
    fn ok(v: impl Serialize) -> Result<Self> {
        Self::checked(v, true)
    }

    fn checked(v: impl Serialize, passed: bool) -> Result<Self> {
        let json = serde_json::to_string(&v).map_err(|e| Error::Verification(e.to_string()))?;
        Ok(Outcome { json, passed })
    }
}

fn strings(xs: &[Scalar]) -> Vec<String> {
    xs.iter().map(ToString::to_string).collect()
}

fn matrix_strings(m: &Matrix) -> Vec<Vec<String>> {
    (0..m.rows()).map(|i| (0..m.cols()).map(|j| m[(i, j)].to_string()).collect()).collect()
}

#[derive(Serialize)]
struct EvalOutput {
    form: String,
    at: Vec<String>,
    value: String,
}

#[derive(Serialize)]
struct SemiregularOutput {
    form: String,
    #[serde(rename = "P3")]
    p3: String,
    semiregular: bool,
}

#[derive(Serialize)]
struct ClassifyOutput {
    stratum: u8,
    #[serde(rename = "P3")]
    p3: String,
    semiregular: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    normalizer: Option<Vec<Vec<String>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    normalizer_error: Option<String>,
}

#[derive(Serialize)]
struct CliffordOutput {
    source: &'static str,
    table: Value,
    unital: bool,
    associative: bool,
    azumaya: Option<bool>,
    trace: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    check_table: Option<bool>,
}

#[derive(Serialize)]
struct LiftOutput {
    section: Section,
    k: Option<i64>,
    g: Vec<Vec<String>>,
    l: String,
    valid: bool,
}

#[derive(Serialize)]
struct Check {
    name: &'static str,
    passed: bool,
}

#[derive(Serialize)]
struct SelftestOutput {
    checks: Vec<Check>,
    passed: bool,
}

fn require_ring(cmd: &Command) -> Result<RingSpec> {
    let desc = cmd.ring.as_deref().ok_or_else(|| Error::InvalidRing("missing --ring".into()))?;
    RingSpec::parse(desc)
}

fn clifford_output(a: &Algebra4, source: &'static str, check: Option<bool>) -> Result<Outcome> {
    let associative = a.is_associative();
    let unital = a.is_unital();
    let azumaya = if associative && unital { a.is_azumaya().ok() } else { None };
    let trace = a.standard_involution().map(|s| strings(s.trace_functional()));
    let out = CliffordOutput { source, table: a.to_json(), unital, associative, azumaya, trace, check_table: check };
    Outcome::checked(out, check.unwrap_or(true))
}

fn execute(cmd: &Command) -> Result<Outcome> {
    if let Action::Selftest = cmd.action {
        return selftest();
    }
    let ring = require_ring(cmd)?;
    match &cmd.action {
        Action::Eval { form, at } => {
            let q = parse_form(form, &ring)?;
            let v = parse_scalars(at, &ring, 3)?;
            Outcome::ok(EvalOutput { form: q.to_string(), value: q.evaluate(&v)?.to_string(), at: strings(&v) })
        }
        Action::Semiregular { form } => {
            let q = parse_form(form, &ring)?;
            Outcome::ok(SemiregularOutput {
                form: q.to_string(),
                p3: q.half_discriminant().to_string(),
                semiregular: q.is_semiregular(),
            })
        }
        Action::Classify { form } => {
            let q = parse_form(form, &ring)?;
            let s = stratum(&q)?;
            let (normalizer, normalizer_error) = if q.is_semiregular() {
                match normalize_semiregular(&q) {
                    Ok(g) => (Some(matrix_strings(&g)), None),
                    Err(e) => (None, Some(e.to_string())),
                }
            } else {
                (None, None)
            };
            Outcome::ok(ClassifyOutput {
                stratum: s.index(),
                p3: q.half_discriminant().to_string(),
                semiregular: q.is_semiregular(),
                normalizer,
                normalizer_error,
            })
        }
        Action::Clifford { form, t, matrix, check_table } => {
            if let Some(entries) = matrix {
                let b = BilinearForm33::new(Matrix::from_fn(&ring, 3, 3, {
                    let v = parse_scalars(entries, &ring, 9)?;
                    move |i, j| v[3 * i + j].clone()
                }))?;
                let a = upsilon(&b);
                let check = check_table.then(|| a == clifford_product_oracle(&b));
                return clifford_output(&a, "upsilon", check);
            }
            let form = form.as_deref().ok_or_else(|| Error::Syntax { position: 0, message: "expected a form or --matrix".into() })?;
            let q = parse_form(form, &ring)?;
            let tv = match t {
                Some(t) => parse_scalars(t, &ring, 3)?,
                None => vec![ring.zero(); 3],
            };
            let p = ThetaPoint::new(q, [tv[0].clone(), tv[1].clone(), tv[2].clone()])?;
            let a = theta(&p);
            let check = check_table.then(|| {
                let b = theta_to_bilinear(&p);
                a == upsilon(&b) && a == clifford_product_oracle(&b)
            });
            clifford_output(&a, "theta", check)
        }
        Action::Lift { form, target, h, k, section } => {
            let q = parse_form(form, &ring)?;
            let q2 = parse_form(target, &ring)?;
            let v = parse_scalars(h, &ring, 16)?;
            let h = StabWMap::new(Matrix::from_fn(&ring, 4, 4, |i, j| v[4 * i + j].clone()))?;
            let s: Similarity = match section {
                Section::Plus => section_s_plus(&h, &q, &q2, *k)?,
                Section::Prime => section_s_prime(&h, &q, &q2)?,
            };
            Outcome::ok(LiftOutput {
                section: *section,
                k: (*section == Section::Plus).then_some(*k),
                g: matrix_strings(&s.g),
                valid: s.is_valid_for(&q, &q2),
                l: s.l.to_string(),
            })
        }
        Action::Census => Outcome::ok(orbit_census(&ring)?),
        Action::Selftest => unreachable!(),
    }
}

fn generic_bilinear() -> BilinearForm33 {
    let names: Vec<String> = (1..=3).flat_map(|i| (1..=3).map(move |j| format!("b{i}{j}"))).collect();
    let ring = RingSpec::polynomials(&names).expect("valid variable names");
    let m = Matrix::from_fn(&ring, 3, 3, |i, j| ring.variable(&names[3 * i + j]).expect("declared variable"));
    BilinearForm33::new(m).expect("square matrix")
}

fn generic_theta_point() -> ThetaPoint {
    let names = ["l1", "l2", "l3", "l12", "l13", "l23", "t1", "t2", "t3"];
    let ring = RingSpec::polynomials(&names).expect("valid variable names");
    let v: Vec<Scalar> = names.iter().map(|n| ring.variable(n).expect("declared variable")).collect();
    let q = TernaryQuadraticForm::from_coeffs(std::array::from_fn(|i| v[i].clone())).expect("one ring");
    ThetaPoint::new(q, [v[6].clone(), v[7].clone(), v[8].clone()]).expect("one ring")
}

fn selftest() -> Result<Outcome> {
    let b = generic_bilinear();
    let ub = upsilon(&b);
    let p = generic_theta_point();
    let traces = ub.standard_involution().map(|s| s.trace_functional().clone());
    let expected_traces = {
        let two = b.ring().from_i64(2);
        [two, b.b(2, 1) - b.b(1, 2), b.b(3, 2) - b.b(2, 3), b.b(1, 3) - b.b(3, 1)]
    };
    let f5 = RingSpec::prime_field(5)?;
    let g = Matrix::from_i64(&f5, &[&[1, 2, 0], &[0, 1, 3], &[1, 0, 1]]);
    let p5 = ThetaPoint::new(TernaryQuadraticForm::from_i64(&f5, [1, 2, 3, 4, 0, 1]), [f5.one(), f5.from_i64(3), f5.zero()])?;
    let census = orbit_census(&RingSpec::prime_field(2)?)?;
    let checks = vec![
        Check { name: "upsilon matches the Clifford relations", passed: ub == clifford_product_oracle(&b) },
        Check { name: "upsilon is associative and unital", passed: ub.is_associative() && ub.is_unital() },
        Check { name: "theta factors through upsilon", passed: theta(&p) == upsilon(&theta_to_bilinear(&p)) },
        Check {
            name: "translation acts through the unipotent map",
            passed: act_stabw(&StabWMap::unipotent(&p.t)?, &theta(&ThetaPoint::untranslated(p.q.clone()))) == theta(&p),
        },
        Check { name: "opposite algebra is upsilon of minus the transpose", passed: opposite_involution_check(&b) },
        Check { name: "standard involution traces", passed: traces.as_ref() == Some(&expected_traces) },
        Check { name: "twisted equivariance over F5", passed: twisted_equivariance_check(&g, &p5)? },
        Check { name: "F2 census bijection", passed: census.bijection_verified },
    ];
    let passed = checks.iter().all(|c| c.passed);
    Outcome::checked(SelftestOutput { checks, passed }, passed)
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Verification(_)
        | Error::NotAnIsomorphism(_)
        | Error::NotUnitFixing(_)
        | Error::InvalidSimilarity(_)
        | Error::NotAssociative => 1,
        _ => 2,
    }
}

/// Runs the command line `args` (including the program name), writing JSON
/// to `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cmd = match Command::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    match execute(&cmd) {
        Ok(outcome) => {
            let text = format!("{}\n", outcome.json);
            let written = match &cmd.out {
                Some(path) => std::fs::write(path, &text).map_err(|e| e.to_string()),
                None => out.write_all(text.as_bytes()).map_err(|e| e.to_string()),
            };
            if let Err(e) = written {
                let _ = writeln!(err, "error: {e}");
                return 2;
            }
            if outcome.passed {
                0
            } else {
                1
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(std::iter::once("evencliff").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn classify_rank_two() {
        let (code, out, _) = call(&["classify", "--ring", "Fp:2", "x1*x2"]);
        assert_eq!(code, 0);
        assert_eq!(out.trim(), r#"{"stratum":2,"P3":"0","semiregular":false}"#);
    }

    #[test]
    fn classify_semiregular_includes_normalizer() {
        let (code, out, _) = call(&["classify", "--ring", "F2k:2", "x1^2 + x1*x2 + x3^2"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["stratum"], 1);
        assert_eq!(v["normalizer"].as_array().unwrap().len(), 3);
    }

    #[test]
    fn census_gate_is_a_usage_error() {
        let (code, _, err) = call(&["census", "--ring", "Fp:5"]);
        assert_eq!(code, 2);
        assert!(err.contains("too large"));
    }

    #[test]
    fn missing_ring_and_bad_forms() {
        assert_eq!(call(&["eval", "x1^2", "--at", "1,2,3"]).0, 2);
        assert_eq!(call(&["eval", "--ring", "Z", "x4^2", "--at", "1,2,3"]).0, 2);
        assert_eq!(call(&["frobnicate"]).0, 2);
    }

    #[test]
    fn eval_and_semiregular() {
        let (code, out, _) = call(&["eval", "--ring", "Z", "x1*x2 + x3^2", "--at", "2,-3,4"]);
        assert_eq!(code, 0);
        assert_eq!(out.trim(), r#"{"form":"x3^2 + x1*x2","at":["2","-3","4"],"value":"10"}"#);
        let (_, out, _) = call(&["semiregular", "--ring", "Q", "x1*x2 + x3^2"]);
        assert_eq!(out.trim(), r#"{"form":"x3^2 + x1*x2","P3":"-1","semiregular":true}"#);
    }

    #[test]
    fn clifford_table_check() {
        let (code, out, _) = call(&["clifford", "--ring", "ZPoly:a", "a*x1^2 + x2*x3", "--t", "a,0,1", "--check-table"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["check_table"], true);
        assert_eq!(v["table"]["c"][0][0][0], "1");
        let (code, out, _) = call(&["clifford", "--ring", "Fp:3", "--matrix", "1,0,0,0,1,0,0,0,1", "--check-table"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["azumaya"], true);
    }

    #[test]
    fn lift_identity() {
        let id = "1,0,0,0,0,1,0,0,0,0,1,0,0,0,0,1";
        let (code, out, _) = call(&["lift", "--ring", "Fp:5", "x1*x2 + x3^2", "x1*x2 + x3^2", "--h", id, "--k", "1"]);
        assert_eq!(code, 0, "{out}");
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["valid"], true);
        let (code, _, _) = call(&["lift", "--ring", "Fp:5", "x1*x2 + x3^2", "x1*x2 + 2*x3^2", "--h", id]);
        assert_eq!(code, 1);
    }

    #[test]
    fn output_is_deterministic_and_can_go_to_a_file() {
        let a = call(&["census", "--ring", "Fp:2"]);
        assert_eq!(a, call(&["census", "--ring", "Fp:2"]));
        let path = std::env::temp_dir().join(format!("evencliff-{}.json", std::process::id()));
        let (code, out, _) = call(&["census", "--ring", "Fp:2", "--out", path.to_str().unwrap()]);
        assert_eq!((code, out.as_str()), (0, ""));
        assert_eq!(std::fs::read_to_string(&path).unwrap(), a.1);
        std::fs::remove_file(path).unwrap();
    }

    #[test]
    fn selftest_passes() {
        let (code, out, err) = call(&["selftest"]);
        assert_eq!(code, 0, "{out}{err}");
    }
}
