//! Command-line front end. [`run`] does all the work and returns the exit
//! code together with the text destined for stdout and stderr, so the binary
//! is a thin shell around it and tests can drive it directly.

use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::error::MzvError;
use crate::identities::{self, Bounds, IdentityCase, Params, Status};
use crate::index::{hoffman_dual, Composition};
use crate::num::{check_prec, default_prec, parse_q, parse_q_list, Mode, Scalar, Q};
use crate::posets::{Admissibility, LabeledPoset};
use crate::sums::{harmonic_sum, SumFamily, SumSpec};
use crate::values::{evaluate, Family, ValueSpec};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_EVAL: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "mzvlab", version, about = "Multiple zeta values, polylogarithms and identity checks")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Evaluate a value, or a finite nested sum when --n is given.
    Eval(EvalArgs),
    /// Hoffman dual of a composition.
    Dual(DualArgs),
    /// Evaluate one identity instance.
    Verify(VerifyArgs),
    /// Run generated instances of one identity.
    Fuzz(FuzzArgs),
    /// Evaluate a labeled poset read from a file.
    Poset(PosetArgs),
    /// List the identity registry and value families.
    List(ListArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Exact,
    Float,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Exact => Mode::Exact,
            ModeArg::Float => Mode::Float,
        }
    }
}

#[derive(Args, Debug)]
struct Common {
    /// Output precision in bits (default 128, or MZVLAB_PREC).
    #[arg(long)]
    prec: Option<u32>,
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(Args, Debug)]
struct EvalArgs {
    /// mzv, mzsv, mpl, mpl_star, t, t_star, m, conv_zeta, conv_t, conv_m,
    /// parametric_mpl, parametric_mpl_star
    #[arg(long, default_value = "mzv")]
    family: String,
    #[arg(long, visible_alias = "k", allow_hyphen_values = true)]
    index: String,
    /// Variables; one entry for the t and M families.
    #[arg(long, visible_alias = "x", allow_hyphen_values = true)]
    labels: Option<String>,
    /// Second index of the convoluted families.
    #[arg(long, allow_hyphen_values = true)]
    l: Option<String>,
    /// Shift of the parametric families.
    #[arg(long, allow_hyphen_values = true)]
    a: Option<String>,
    /// Signs on the first index (conv_m).
    #[arg(long, allow_hyphen_values = true)]
    eta: Option<String>,
    /// Signs of the M family, or on the second index of conv_m.
    #[arg(long, allow_hyphen_values = true)]
    eps: Option<String>,
    /// Truncate to the finite nested sum up to n.
    #[arg(long)]
    n: Option<u64>,
    #[arg(long, value_enum)]
    mode: Option<ModeArg>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct DualArgs {
    #[arg(allow_hyphen_values = true)]
    index: String,
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long)]
    id: String,
    #[arg(long, visible_alias = "k", allow_hyphen_values = true)]
    index: Option<String>,
    #[arg(long, visible_alias = "x", allow_hyphen_values = true)]
    labels: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    n: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    l: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    a: Option<String>,
    /// Any schema parameter as name=value; repeatable.
    #[arg(long = "param", allow_hyphen_values = true)]
    params: Vec<String>,
    #[arg(long, value_enum)]
    mode: Option<ModeArg>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct FuzzArgs {
    #[arg(long)]
    id: String,
    #[arg(long, default_value_t = 100)]
    budget: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// weight=..,depth=..,n=..,poset=..
    #[arg(long)]
    bounds: Option<String>,
    #[arg(long, value_enum)]
    mode: Option<ModeArg>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct PosetArgs {
    /// Path to the poset text, or `-` for stdin.
    #[arg(long)]
    poset_file: String,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct ListArgs {
    #[arg(long, value_enum)]
    format: Option<Format>,
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Usage(String),
    Eval(MzvError),
}

impl From<MzvError> for Failure {
    fn from(e: MzvError) -> Failure {
        Failure::Eval(e)
    }
}

type Step<T> = std::result::Result<T, Failure>;

fn usage<T>(e: impl std::fmt::Display) -> Step<T> {
    Err(Failure::Usage(e.to_string()))
}

/// Flag-level parse; errors become usage errors naming the flag.
fn flag<T>(name: &str, r: crate::Result<T>) -> Step<T> {
    r.map_err(|e| Failure::Usage(format!("--{name}: {e}")))
}

fn prec_of(c: &Common) -> Step<u32> {
    flag("prec", check_prec(c.prec.unwrap_or_else(default_prec)))
}

/// Run with `argv` (without the program name), reading stdin only for
/// `--poset-file -`.
pub fn run<S: AsRef<str>>(argv: &[S]) -> Outcome {
    let args = std::iter::once("mzvlab").chain(argv.iter().map(|s| s.as_ref()));
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code: EXIT_USAGE, stdout: String::new(), stderr: text }
            } else {
                Outcome { code: EXIT_OK, stdout: text, stderr: String::new() }
            };
        }
    };
    let res = match cli.cmd {
        Cmd::Eval(a) => eval_cmd(a),
        Cmd::Dual(a) => dual_cmd(a),
        Cmd::Verify(a) => verify_cmd(a),
        Cmd::Fuzz(a) => fuzz_cmd(a),
        Cmd::Poset(a) => poset_cmd(a),
        Cmd::List(a) => list_cmd(a),
    };
    match res {
        Ok((code, stdout)) => Outcome { code, stdout, stderr: String::new() },
        Err(Failure::Usage(m)) => Outcome { code: EXIT_USAGE, stdout: String::new(), stderr: format!("error: {m}\n") },
        Err(Failure::Eval(e)) => Outcome { code: EXIT_EVAL, stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}

fn render(format: Format, doc: Value, text: String) -> String {
    match format {
        Format::Json => format!("{}\n", serde_json::to_string_pretty(&doc).expect("json")),
        Format::Text => text,
    }
}

fn scalar_text(out: &mut String, name: &str, v: &Scalar) {
    let _ = writeln!(out, "{name} {}", v.value_string());
    if !v.is_exact() {
        let _ = writeln!(out, "{name}_err {}", v.err_string());
    }
}

// eval ------------------------------------------------------------------

fn signs(name: &str, s: &Option<String>) -> Step<Vec<i32>> {
    let Some(s) = s else { return Ok(Vec::new()) };
    flag(name, parse_q_list(s))?
        .iter()
        .map(|q| match (q.is_sign(), q.is_one()) {
            (true, true) => Ok(1),
            (true, false) => Ok(-1),
            _ => usage(format!("--{name}: expected +-1, got {q}")),
        })
        .collect()
}

fn eval_cmd(a: EvalArgs) -> Step<(i32, String)> {
    let prec = prec_of(&a.common)?;
    let family = flag("family", Family::parse(&a.family))?;
    let k = flag("index", Composition::parse(&a.index))?;
    let x = match &a.labels {
        Some(s) => flag("labels", parse_q_list(s))?,
        None => Vec::new(),
    };
    let shift = match &a.a {
        Some(s) => Some(flag("a", parse_q(s))?),
        None => None,
    };
    let l = match &a.l {
        Some(s) => Some(flag("l", Composition::parse(s))?),
        None => None,
    };
    let (eta, eps) = (signs("eta", &a.eta)?, signs("eps", &a.eps)?);
    let mode: Mode = a.mode.map(Mode::from).unwrap_or(if a.n.is_some() { Mode::Exact } else { Mode::Float });

    let value = match a.n {
        Some(n) => {
            let (fam, star) = match family {
                Family::Mpl | Family::ParametricMpl => (SumFamily::Zeta, false),
                Family::MplStar | Family::ParametricMplStar => (SumFamily::Zeta, true),
                Family::TPoly => (SumFamily::T, false),
                Family::TStar => (SumFamily::T, true),
                Family::MPoly => (SumFamily::M, false),
                _ => return usage(format!("--n: family {} has no finite truncation", a.family)),
            };
            let spec = SumSpec {
                family: fam,
                star,
                k: k.clone(),
                x: (!x.is_empty()).then(|| x.clone()),
                signs: (fam == SumFamily::M).then(|| {
                    if eps.is_empty() { vec![Q::one(); k.depth()] } else { eps.iter().map(|&e| Q::int(e as i64)).collect() }
                }),
                a: shift.clone(),
                n,
            };
            harmonic_sum(&spec, mode, prec)?
        }
        None => {
            if mode == Mode::Exact {
                return usage("--mode: exact evaluation needs a finite --n");
            }
            let spec = ValueSpec { family, k: k.clone(), l: l.clone(), x: x.clone(), eta, eps, a: shift };
            evaluate(&spec, prec)?
        }
    };
    let mut doc = json!({
        "family": a.family,
        "index": k.parts(),
        "precision_bits": prec,
    });
    if let Some(n) = a.n {
        doc["n"] = json!(n);
    }
    if let Some(l) = &l {
        doc["l"] = json!(l.parts());
    }
    if !x.is_empty() {
        doc["labels"] = json!(x.iter().map(|q| q.to_string()).collect::<Vec<_>>());
    }
    let v = value.to_json();
    for key in ["mode", "value", "err"] {
        if let Some(f) = v.get(key) {
            doc[key] = f.clone();
        }
    }
    let mut text = String::new();
    scalar_text(&mut text, "value", &value);
    Ok((EXIT_OK, render(a.common.format.unwrap_or(Format::Json), doc, text)))
}

// dual ------------------------------------------------------------------

fn dual_cmd(a: DualArgs) -> Step<(i32, String)> {
    let m = flag("index", Composition::parse(&a.index))?;
    let d = flag("index", hoffman_dual(&m))?;
    let join = |c: &Composition| c.parts().iter().map(|p| p.to_string()).collect::<Vec<_>>().join(",");
    let doc = json!({"index": m.parts(), "dual": d.parts()});
    Ok((EXIT_OK, render(a.format.unwrap_or(Format::Text), doc, format!("{}\n", join(&d)))))
}

// verify ----------------------------------------------------------------

fn verify_params(a: &VerifyArgs, d: &identities::Descriptor) -> Step<Params> {
    let mut raw: Vec<(String, String, String)> = Vec::new();
    for (fl, name, v) in [
        ("index", "k", &a.index),
        ("labels", "x", &a.labels),
        ("n", "n", &a.n),
        ("l", "l", &a.l),
        ("a", "a", &a.a),
    ] {
        if let Some(v) = v {
            raw.push((fl.to_string(), name.to_string(), v.clone()));
        }
    }
    for p in &a.params {
        let Some((name, v)) = p.split_once('=') else {
            return usage(format!("--param: expected name=value, got {p:?}"));
        };
        raw.push(("param".into(), name.trim().to_string(), v.to_string()));
    }
    let mut params = Params::new();
    for (fl, name, v) in raw {
        params.set(&name, flag(&fl, d.parse_param(&name, &v))?);
    }
    Ok(params)
}

fn report_text(r: &identities::ResidualReport) -> String {
    let mut t = String::new();
    let _ = writeln!(t, "id {}", r.case.id);
    let _ = writeln!(t, "params {}", r.case.params);
    let _ = writeln!(t, "mode {}", r.case.mode.as_str());
    for (name, v) in [("lhs", &r.lhs), ("rhs", &r.rhs), ("residual", &r.residual)] {
        if let Some(v) = v {
            let _ = writeln!(t, "{name} {}", v.value_string());
        }
    }
    let _ = writeln!(t, "budget {:.3e}", r.budget);
    let _ = writeln!(t, "status {}", r.status.as_str());
    if let Status::Skipped(why) = &r.status {
        let _ = writeln!(t, "reason {why}");
    }
    t
}

fn verify_cmd(a: VerifyArgs) -> Step<(i32, String)> {
    let prec = prec_of(&a.common)?;
    let d = flag("id", identities::lookup(&a.id))?;
    let params = verify_params(&a, d)?;
    flag("param", d.check(&params))?;
    let mode = a.mode.map(Mode::from).unwrap_or_else(|| d.default_mode());
    if !d.modes().contains(&mode) {
        return usage(format!("--mode: {} has no {} mode", d.id, mode.as_str()));
    }
    let case = IdentityCase::new(d.id, params, mode, prec)?;
    let r = identities::verify(&case)?;
    let code = match r.status {
        Status::Pass => EXIT_OK,
        Status::Fail => EXIT_FAIL,
        Status::Skipped(_) => EXIT_EVAL,
    };
    Ok((code, render(a.common.format.unwrap_or(Format::Json), r.to_json(), report_text(&r))))
}

// fuzz ------------------------------------------------------------------

fn fuzz_cmd(a: FuzzArgs) -> Step<(i32, String)> {
    let prec = prec_of(&a.common)?;
    let d = flag("id", identities::lookup(&a.id))?;
    if a.budget == 0 {
        return usage("--budget: must be >= 1");
    }
    let bounds = match &a.bounds {
        Some(s) => flag("bounds", Bounds::parse(s))?,
        None => Bounds::default(),
    };
    let mode = a.mode.map(Mode::from);
    if let Some(m) = mode {
        if !d.modes().contains(&m) {
            return usage(format!("--mode: {} has no {} mode", d.id, m.as_str()));
        }
    }
    let s = identities::fuzz(d.id, a.budget, a.seed, &bounds, mode, prec)?;
    let bad: Vec<_> = s.reports.iter().filter(|r| r.status != Status::Pass).collect();
    let mut doc = s.to_json();
    doc["budget"] = json!(a.budget);
    doc["precision_bits"] = json!(prec);
    doc["not_passed"] = json!(bad.iter().map(|r| r.to_json()).collect::<Vec<_>>());
    let mut text = format!(
        "id {}\nseed {}\npass {}\nfail {}\nskip {}\nworst_ratio {:.3e}\n",
        s.id, s.seed, s.pass, s.fail, s.skip, s.worst_ratio
    );
    for r in &bad {
        let _ = writeln!(text, "{} {}", r.status.as_str(), r.case.params);
    }
    let code = if s.fail > 0 { EXIT_FAIL } else { EXIT_OK };
    Ok((code, render(a.common.format.unwrap_or(Format::Json), doc, text)))
}

// poset -----------------------------------------------------------------

fn poset_cmd(a: PosetArgs) -> Step<(i32, String)> {
    let prec = prec_of(&a.common)?;
    let text = if a.poset_file == "-" {
        std::io::read_to_string(std::io::stdin())
    } else {
        std::fs::read_to_string(&a.poset_file)
    };
    let text = match text {
        Ok(t) => t,
        Err(e) => return usage(format!("--poset-file: {}: {e}", a.poset_file)),
    };
    let p = flag("poset-file", LabeledPoset::parse(&text))?;
    let extensions = p.count_linear_extensions()?;
    let format = a.common.format.unwrap_or(Format::Json);
    if let Admissibility::Inadmissible { witness, reason } = p.admissibility() {
        let doc = json!({
            "elements": p.len(),
            "extensions": extensions.to_string(),
            "admissible": false,
            "witness": witness,
            "reason": reason,
        });
        let t = format!("elements {}\nextensions {extensions}\nadmissible no\nwitness {witness}\nreason {reason}\n", p.len());
        return Ok((EXIT_EVAL, render(format, doc, t)));
    }
    let v = p.eval(prec)?;
    let mut doc = json!({
        "elements": p.len(),
        "extensions": extensions.to_string(),
        "admissible": true,
        "precision_bits": prec,
    });
    let vj = v.to_json();
    for key in ["mode", "value", "err"] {
        if let Some(f) = vj.get(key) {
            doc[key] = f.clone();
        }
    }
    let mut t = format!("elements {}\nextensions {extensions}\nadmissible yes\n", p.len());
    scalar_text(&mut t, "value", &v);
    Ok((EXIT_OK, render(format, doc, t)))
}

// list ------------------------------------------------------------------

fn list_cmd(a: ListArgs) -> Step<(i32, String)> {
    let reg = identities::registry();
    let doc = json!({
        "identities": reg.iter().map(|d| d.to_json()).collect::<Vec<_>>(),
        "families": Family::NAMES,
    });
    let mut t = String::new();
    for d in reg {
        let modes: Vec<_> = d.modes().iter().map(|m| m.as_str()).collect();
        let schema: Vec<_> = d.schema.iter().map(|(n, _)| *n).collect();
        let _ = writeln!(t, "{:<18} {:<12} {:<22} {}", d.id, modes.join("/"), schema.join(","), d.summary);
    }
    Ok((EXIT_OK, render(a.format.unwrap_or(Format::Text), doc, t)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dual_example() {
        let o = run(&["dual", "1,1,2,1"]);
        assert_eq!((o.code, o.stdout.as_str()), (0, "3,2\n"));
    }

    #[test]
    fn usage_errors_name_the_flag() {
        let o = run(&["dual", "1,0"]);
        assert_eq!(o.code, EXIT_USAGE);
        assert!(o.stderr.contains("--index"), "{}", o.stderr);
        assert_eq!(run(&["eval"]).code, EXIT_USAGE);
        assert_eq!(run(&["frobnicate"]).code, EXIT_USAGE);
        let o = run(&["verify", "--id", "FII1", "--l", "3"]);
        assert_eq!(o.code, EXIT_USAGE);
        assert!(o.stderr.contains("--l"), "{}", o.stderr);
    }

    #[test]
    fn eval_json_is_one_document() {
        let o = run(&["eval", "--family", "mzv", "--index", "2,1", "--prec", "128"]);
        assert_eq!(o.code, 0, "{}", o.stderr);
        let v: Value = serde_json::from_str(&o.stdout).unwrap();
        assert!(v["value"].as_str().unwrap().starts_with("1.2020569031"));
    }

    #[test]
    fn eval_finite_sum_is_exact_by_default() {
        let o = run(&["eval", "--index", "1", "--n", "3", "--format", "text"]);
        assert_eq!(o.stdout, "value 11/6\n");
    }

    #[test]
    fn verify_exact_example() {
        let o = run(&[
            "verify", "--id", "SS2016-LEMMA", "--k", "2,1", "--x", "1/2,1/3", "--n", "4", "--mode", "exact",
        ]);
        assert_eq!(o.code, 0, "{}", o.stderr);
        let v: Value = serde_json::from_str(&o.stdout).unwrap();
        assert_eq!(v["status"], "pass");
        assert_eq!(v["residual"], "0");
    }

    #[test]
    fn evaluator_errors_exit_3() {
        let o = run(&["eval", "--index", "1"]);
        assert_eq!(o.code, EXIT_EVAL, "{}", o.stderr);
    }
}
