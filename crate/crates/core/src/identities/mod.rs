//! Identity registry, verification and fuzzing.
//!
//! Every entry is a residual `LHS - RHS` over named parameters. Integral
//! sides go through the Chen engine on the identity's own word or poset;
//! series sides go through harmonic sums and polylogarithm values.

mod finite;
mod gen;
mod posetids;
mod series;
mod support;

use std::collections::BTreeMap;
use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::{MzvError, Result};
use crate::num::{parse_q, working_prec, Mode, Scalar, Q};

pub use gen::Bounds;

/// Kind of a free symbol.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    /// Comma list of positive integers (zeros allowed where the entry says so).
    Comp,
    /// Comma list of complex rationals.
    Labels,
    /// Comma list of signs.
    Signs,
    Int,
    Num,
    /// Free text (a poset in the text format).
    Text,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Param {
    Comp(Vec<u32>),
    Labels(Vec<Q>),
    Signs(Vec<i32>),
    Int(i64),
    Num(Q),
    Text(String),
}

impl Param {
    pub fn parse(kind: Kind, s: &str) -> Result<Param> {
        let list = |s: &str| -> Vec<String> {
            s.split(',').map(|t| t.trim().to_string()).filter(|t| !t.is_empty()).collect()
        };
        let int = |t: &str| -> Result<i64> {
            t.parse().map_err(|_| MzvError::Parse(format!("expected an integer, got {t:?}")))
        };
        Ok(match kind {
            Kind::Comp => Param::Comp(
                list(s)
                    .iter()
                    .map(|t| {
                        t.parse::<u32>().map_err(|_| MzvError::Parse(format!("bad index part {t:?}")))
                    })
                    .collect::<Result<_>>()?,
            ),
            Kind::Labels => Param::Labels(list(s).iter().map(|t| parse_q(t)).collect::<Result<_>>()?),
            Kind::Signs => Param::Signs(
                crate::num::parse_q_list(s)?
                    .iter()
                    .map(|q| match q.is_sign() {
                        true if q.is_one() => Ok(1),
                        true => Ok(-1),
                        false => Err(MzvError::Parse(format!("expected a sign, got {q}"))),
                    })
                    .collect::<Result<_>>()?,
            ),
            Kind::Int => Param::Int(int(s.trim())?),
            Kind::Num => Param::Num(parse_q(s)?),
            Kind::Text => Param::Text(s.to_string()),
        })
    }

    pub fn to_json(&self) -> Value {
        match self {
            Param::Comp(v) => json!(v),
            Param::Labels(v) => json!(v.iter().map(|q| q.to_string()).collect::<Vec<_>>()),
            Param::Signs(v) => json!(v),
            Param::Int(v) => json!(v),
            Param::Num(q) => json!(q.to_string()),
            Param::Text(t) => json!(t),
        }
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: Vec<String>| v.join(",");
        match self {
            Param::Comp(v) => write!(f, "{}", join(v.iter().map(|x| x.to_string()).collect())),
            Param::Labels(v) => write!(f, "{}", join(v.iter().map(|x| x.to_string()).collect())),
            Param::Signs(v) => write!(f, "{}", join(v.iter().map(|x| x.to_string()).collect())),
            Param::Int(v) => write!(f, "{v}"),
            Param::Num(q) => write!(f, "{q}"),
            Param::Text(t) => write!(f, "{:?}", t),
        }
    }
}

/// Named parameter values of one identity instance.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Params(pub BTreeMap<String, Param>);

impl Params {
    pub fn new() -> Params {
        Params::default()
    }
    pub fn with(mut self, name: &str, p: Param) -> Params {
        self.0.insert(name.to_string(), p);
        self
    }
    pub fn set(&mut self, name: &str, p: Param) {
        self.0.insert(name.to_string(), p);
    }
    fn get(&self, name: &str) -> Result<&Param> {
        self.0.get(name).ok_or_else(|| MzvError::Invalid(format!("missing parameter {name:?}")))
    }
    fn wrong(name: &str, want: &str) -> MzvError {
        MzvError::Invalid(format!("parameter {name:?} must be {want}"))
    }
    pub fn comp(&self, name: &str) -> Result<Vec<u32>> {
        match self.get(name)? {
            Param::Comp(v) => Ok(v.clone()),
            _ => Err(Self::wrong(name, "an index list")),
        }
    }
    pub fn labels(&self, name: &str) -> Result<Vec<Q>> {
        match self.get(name)? {
            Param::Labels(v) => Ok(v.clone()),
            Param::Signs(v) => Ok(v.iter().map(|&s| Q::int(s as i64)).collect()),
            _ => Err(Self::wrong(name, "a label list")),
        }
    }
    pub fn signs(&self, name: &str) -> Result<Vec<i32>> {
        match self.get(name)? {
            Param::Signs(v) => Ok(v.clone()),
            _ => Err(Self::wrong(name, "a sign list")),
        }
    }
    pub fn int(&self, name: &str) -> Result<i64> {
        match self.get(name)? {
            Param::Int(v) => Ok(*v),
            _ => Err(Self::wrong(name, "an integer")),
        }
    }
    pub fn uint(&self, name: &str) -> Result<u64> {
        let v = self.int(name)?;
        u64::try_from(v).map_err(|_| Self::wrong(name, "a nonnegative integer"))
    }
    pub fn num(&self, name: &str) -> Result<Q> {
        match self.get(name)? {
            Param::Num(q) => Ok(q.clone()),
            Param::Int(v) => Ok(Q::int(*v)),
            _ => Err(Self::wrong(name, "a number")),
        }
    }
    pub fn text(&self, name: &str) -> Result<&str> {
        match self.get(name)? {
            Param::Text(t) => Ok(t),
            _ => Err(Self::wrong(name, "text")),
        }
    }
    pub fn to_json(&self) -> Value {
        Value::Object(self.0.iter().map(|(k, v)| (k.clone(), v.to_json())).collect())
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|(k, v)| format!("{k}={v}")).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Evaluation context handed to residual functions.
#[derive(Clone, Copy, Debug)]
pub struct Ctx {
    pub mode: Mode,
    pub prec: u32,
    pub wp: u32,
}

impl Ctx {
    pub fn new(mode: Mode, prec: u32) -> Ctx {
        Ctx { mode, prec, wp: working_prec(prec) }
    }
}

type EvalFn = fn(&Params, &Ctx) -> Result<(Scalar, Scalar)>;
type GenFn = fn(&mut ChaCha8Rng, &Bounds, u64) -> Params;
type CheckFn = fn(&Params) -> Result<()>;

/// One registry entry.
pub struct Descriptor {
    pub id: &'static str,
    pub summary: &'static str,
    pub schema: &'static [(&'static str, Kind)],
    pub exact: bool,
    pub float: bool,
    eval: EvalFn,
    generate: GenFn,
    check: CheckFn,
}

impl Descriptor {
    pub fn default_mode(&self) -> Mode {
        if self.exact {
            Mode::Exact
        } else {
            Mode::Float
        }
    }
    /// Parameter instance number `i` of the stream seeded by `seed`.
    pub fn generate(&self, seed: u64, i: u64, bounds: &Bounds) -> Params {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ i.wrapping_mul(0x9E37_79B9_7F4A_7C15));
        (self.generate)(&mut rng, bounds, i)
    }
    /// Parse `value` as the schema parameter `name`.
    pub fn parse_param(&self, name: &str, value: &str) -> Result<Param> {
        let (_, kind) = self.schema.iter().find(|(n, _)| *n == name).ok_or_else(|| {
            let names: Vec<_> = self.schema.iter().map(|(n, _)| *n).collect();
            MzvError::Invalid(format!("{} has no parameter {name:?} (expects {})", self.id, names.join(", ")))
        })?;
        Param::parse(*kind, value)
    }
    /// Parameters from `name=value` items separated by `;`.
    pub fn parse_params(&self, text: &str) -> Result<Params> {
        let mut out = Params::new();
        for item in text.split(';').map(str::trim).filter(|t| !t.is_empty()) {
            let (name, value) = item
                .split_once('=')
                .ok_or_else(|| MzvError::Parse(format!("expected name=value, got {item:?}")))?;
            let name = name.trim();
            out.set(name, self.parse_param(name, value)?);
        }
        Ok(out)
    }
    pub fn check(&self, p: &Params) -> Result<()> {
        for (name, kind) in self.schema {
            let v = p.get(name)?;
            let ok = matches!(
                (kind, v),
                (Kind::Comp, Param::Comp(_))
                    | (Kind::Labels, Param::Labels(_))
                    | (Kind::Labels, Param::Signs(_))
                    | (Kind::Signs, Param::Signs(_))
                    | (Kind::Int, Param::Int(_))
                    | (Kind::Num, Param::Num(_))
                    | (Kind::Num, Param::Int(_))
                    | (Kind::Text, Param::Text(_))
            );
            if !ok {
                return Err(MzvError::Invalid(format!("parameter {name:?} has the wrong kind")));
            }
        }
        (self.check)(p)
    }
    pub fn to_json(&self) -> Value {
        json!({
            "id": self.id,
            "summary": self.summary,
            "params": self.schema.iter().map(|(n, k)| json!({"name": n, "kind": format!("{k:?}").to_lowercase()})).collect::<Vec<_>>(),
            "modes": self.modes().iter().map(|m| m.as_str()).collect::<Vec<_>>(),
        })
    }
    pub fn modes(&self) -> Vec<Mode> {
        let mut v = Vec::new();
        if self.exact {
            v.push(Mode::Exact);
        }
        if self.float {
            v.push(Mode::Float);
        }
        v
    }
}

macro_rules! entry {
    ($id:expr, $summary:expr, $schema:expr, $exact:expr, $eval:path, $gen:path, $check:path) => {
        Descriptor {
            id: $id,
            summary: $summary,
            schema: $schema,
            exact: $exact,
            float: true,
            eval: $eval,
            generate: $gen,
            check: $check,
        }
    };
}

use Kind::*;

static REGISTRY: &[Descriptor] = &[
    entry!("FII1", "n int_0^x t^(n-1) (dt/(1-t)) (dt/t)^(m_1-1) ... against harmonic star sums and Li",
        &[("m", Comp), ("n", Int), ("x", Num)], false, series::fii1, series::gen_fii1, series::check_fii1),
    entry!("FII2", "the same integral with kernels dt/(1-sigma_j t)",
        &[("m", Comp), ("n", Int), ("x", Num), ("sigma", Labels)], false, series::fii2, series::gen_fii2, series::check_fii2),
    entry!("INT-G", "integral over [a_p, 1] with Cauchy kernels dt/(a_j - t) against chain sums and Li",
        &[("m", Comp), ("a", Labels), ("n", Int)], false, series::int_g, series::gen_int_g, series::check_int_g),
    entry!("IMP-2", "harmonic star sums at the dual index against an integral over [x, 1]",
        &[("m", Comp), ("n", Int), ("x", Num)], false, series::imp2, series::gen_imp2, series::check_imp2),
    entry!("KYMZV1", "Li with sigma/epsilon variables as a signed sum of convoluted series",
        &[("k", Comp), ("m", Comp), ("x", Num), ("eps", Labels), ("sigma", Labels)], false, series::kymzv1, series::gen_kymzv1, series::check_kymzv1),
    entry!("KYMZV2", "Li_{m_p..m_1,k_1+1,k_2..}(x,1,..) through convoluted values",
        &[("k", Comp), ("m", Comp), ("x", Num)], false, series::kymzv2, series::gen_kymzv2, series::check_kymzv2),
    entry!("KYMZV3", "convoluted series at the Hoffman dual against Li at 1-x with log powers",
        &[("m", Comp), ("k", Int), ("r", Int), ("x", Num)], false, series::kymzv3, series::gen_kymzv3, series::check_kymzv3),
    entry!("MPL-R2", "Li_{1_p,k+1,1_r}(1-x) through convoluted values and Li at x",
        &[("p", Int), ("k", Int), ("r", Int), ("x", Num)], false, series::mplr2, series::gen_mplr2, series::check_mplr2),
    entry!("MPL-R3", "Li_{m,k+1,1_r}(1-x) reflection",
        &[("m", Int), ("k", Int), ("r", Int), ("x", Num)], false, series::mplr3, series::gen_mplr3, series::check_mplr3),
    entry!("ITLI1J", "Li_{1_j}(x) = (-1)^j log^j(1-x)/j!",
        &[("j", Int), ("x", Num)], false, series::itli1j, series::gen_itli1j, series::check_itli1j),
    entry!("MPL-RS", "Li_{k,1_r}(x) reflection to 1-x",
        &[("k", Int), ("r", Int), ("x", Num)], false, series::mplrs, series::gen_mplrs, series::check_mplrs),
    entry!("FIIt1", "integrals with t^(2n-1) or t^(2n-2) against t-harmonic sums and ti",
        &[("m", Comp), ("n", Int), ("x", Num), ("odd", Int)], false, series::fiit1, series::gen_fiit1, series::check_fiit1),
    entry!("T-KYMZVX", "ti_{m_p..m_1,k_1+1,k_2..}(x) through convoluted t-series",
        &[("k", Comp), ("m", Comp), ("x", Num)], false, series::tkx, series::gen_tkx, series::check_tkx),
    entry!("T-KYMZVXX", "the x = 1 case as a vanishing alternating sum",
        &[("k", Comp), ("m", Comp)], false, series::tkxx, series::gen_tkxx, series::check_tkxx),
    entry!("INTX-MMVS", "n int_0^x t^(n-1) w-word against parity-coupled sums and Mi",
        &[("m", Comp), ("e", Signs), ("n", Int), ("x", Num)], false, series::intx_mmvs, series::gen_intx_mmvs, series::check_intx_mmvs),
    entry!("INTX-KYMMVS", "Mi at x through convoluted M-values",
        &[("k", Comp), ("eta", Signs), ("m", Comp), ("e", Signs), ("x", Num)], false, series::intx_kymmvs, series::gen_intx_kymmvs, series::check_intx_kymmvs),
    entry!("INTX-KYMMVS-COR", "the x = 1 case",
        &[("k", Comp), ("eta", Signs), ("m", Comp), ("e", Signs)], false, series::cor, series::gen_cor, series::check_cor),
    entry!("SS2016-LEMMA", "sum_j (-1)^j zeta_n(k_1..j) zeta*_n(k_r..j+1) = 0",
        &[("k", Comp), ("x", Labels), ("n", Int)], true, finite::ss2016, finite::gen_ss2016, finite::check_ss2016),
    entry!("PMPLS1", "shifted strict sum against zeta_{n+l} zeta*_l products",
        &[("k", Comp), ("x", Labels), ("n", Int), ("l", Int)], true, finite::pmpls1, finite::gen_pmpls, finite::check_pmpls),
    entry!("PMPLS2", "shifted weak sum against zeta*_{n+l} zeta_l products",
        &[("k", Comp), ("x", Labels), ("n", Int), ("l", Int)], true, finite::pmpls2, finite::gen_pmpls, finite::check_pmpls),
    entry!("PMHNS", "parametric version of the vanishing alternating sum",
        &[("k", Comp), ("x", Labels), ("n", Int), ("a", Num)], true, finite::pmhns, finite::gen_pmhns, finite::check_pmhns),
    entry!("PMPLS3", "sum_j (-1)^j Li_{k_1..j}(x;a) Li*_{k_r..j+1}(x;a) = 0",
        &[("k", Comp), ("x", Labels), ("a", Num)], false, finite::pmpls3, finite::gen_pmpls3, finite::check_pmpls3),
    entry!("NPMPLS1", "PMPLS1 with an extra parameter a",
        &[("k", Comp), ("x", Labels), ("n", Int), ("l", Int), ("a", Num)], true, finite::npmpls1, finite::gen_npmpls, finite::check_npmpls),
    entry!("NPMPLS2", "PMPLS2 with an extra parameter a",
        &[("k", Comp), ("x", Labels), ("n", Int), ("l", Int), ("a", Num)], true, finite::npmpls2, finite::gen_npmpls, finite::check_npmpls),
    entry!("F2-MPLS", "poset with an n t^(n-1) vertex over a squiggle, as star sums and squiggle integrals",
        &[("n", Int), ("l", Comp), ("eps", Labels)], false, posetids::f2_mpls, posetids::gen_f2_mpls, posetids::check_f2_mpls),
    entry!("INT-SER-AMPLS", "convolution-shaped poset as Li and labeled convoluted values",
        &[("k", Comp), ("eta", Labels), ("l", Comp), ("eps", Labels)], false, posetids::isa, posetids::gen_isa, posetids::check_isa),
    entry!("AMZV-EXAMPLE", "relation among Li_{3,1,1}, Li_{2,2,1}, Li_{2,1,2}, Li_{2,3}, Li_{4,1} at signs",
        &[("eta", Signs)], false, posetids::amzv_example, posetids::gen_amzv_example, posetids::check_amzv_example),
    entry!("F2-MMVS", "3-poset with an n t^(n-1) vertex over an omega squiggle",
        &[("n", Int), ("l", Comp), ("eps", Signs)], false, posetids::f2_mmvs, posetids::gen_f2_mmvs, posetids::check_f2_mmvs),
    entry!("INT-SER-MMVS", "convolution-shaped 3-poset as convoluted M-values",
        &[("k", Comp), ("eta", Signs), ("l", Comp), ("eps", Signs)], false, posetids::ism, posetids::gen_ism, posetids::check_ism),
    entry!("INT-SER-MMVS2", "two-block case with the alternating zeta factor",
        &[("k", Comp), ("eta", Signs), ("l", Comp), ("eps", Signs)], false, posetids::ism2, posetids::gen_ism2, posetids::check_ism2),
    entry!("MMV-EXAMPLE", "relation among M(3,2), M(4,1), M(5), M(3;-1) zeta(-2) at signs",
        &[("eta", Signs)], false, posetids::mmv_example, posetids::gen_mmv_example, posetids::check_mmv_example),
    entry!("POSET-SHUFFLE", "J(X) = J(X with a<b) + J(X with b<a) for incomparable a, b",
        &[("poset", Text), ("a", Int), ("b", Int)], false, posetids::shuffle, posetids::gen_shuffle, posetids::check_shuffle),
];

pub fn registry() -> &'static [Descriptor] {
    REGISTRY
}

pub fn lookup(id: &str) -> Result<&'static Descriptor> {
    REGISTRY
        .iter()
        .find(|d| d.id.eq_ignore_ascii_case(id))
        .ok_or_else(|| MzvError::Invalid(format!("unknown identity {id:?}")))
}

#[derive(Clone, Debug)]
pub struct IdentityCase {
    pub id: &'static str,
    pub params: Params,
    pub mode: Mode,
    pub prec: u32,
}

impl IdentityCase {
    pub fn new(id: &str, params: Params, mode: Mode, prec: u32) -> Result<IdentityCase> {
        let d = lookup(id)?;
        Ok(IdentityCase { id: d.id, params, mode, prec })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Status {
    Pass,
    Fail,
    Skipped(String),
}

impl Status {
    pub fn as_str(&self) -> &str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped(_) => "skipped",
        }
    }
}

#[derive(Clone, Debug)]
pub struct ResidualReport {
    pub case: IdentityCase,
    pub lhs: Option<Scalar>,
    pub rhs: Option<Scalar>,
    pub residual: Option<Scalar>,
    /// Summed error bounds of both sides.
    pub budget: f64,
    /// Slack added to the budget in float mode.
    pub tolerance: f64,
    pub status: Status,
}

impl ResidualReport {
    /// `|residual| / (budget + tolerance)`; 0 for exact passes.
    pub fn ratio(&self) -> f64 {
        match &self.residual {
            Some(r) if !r.is_exact() => r.abs_f64() / (self.budget + self.tolerance),
            Some(r) if r.is_exact_zero() => 0.0,
            Some(_) => f64::INFINITY,
            None => 0.0,
        }
    }

    pub fn to_json(&self) -> Value {
        let s = |v: &Option<Scalar>| v.as_ref().map_or(Value::Null, |x| json!(x.value_string()));
        let mut o = json!({
            "id": self.case.id,
            "params": self.case.params.to_json(),
            "mode": self.case.mode.as_str(),
            "precision_bits": self.case.prec,
            "lhs": s(&self.lhs),
            "rhs": s(&self.rhs),
            "residual": s(&self.residual),
            "budget": format!("{:.3e}", self.budget),
            "status": self.status.as_str(),
        });
        if let Status::Skipped(r) = &self.status {
            o["reason"] = json!(r);
        }
        o
    }
}

/// Tolerance slack at `prec` bits: `2^(-prec/2)`.
pub fn float_tolerance(prec: u32) -> f64 {
    2f64.powi(-(prec as i32) / 2)
}

/// Evaluate both sides and classify. Precondition violations are errors;
/// evaluator failures become `skipped`.
pub fn verify(case: &IdentityCase) -> Result<ResidualReport> {
    let d = lookup(case.id)?;
    d.check(&case.params)?;
    if case.mode == Mode::Exact && !d.exact {
        return Err(MzvError::Unsupported(format!("{} has no exact mode", d.id)));
    }
    crate::num::check_prec(case.prec)?;
    let ctx = Ctx::new(case.mode, case.prec);
    let tolerance = if case.mode == Mode::Exact { 0.0 } else { float_tolerance(case.prec) };
    let (lhs, rhs) = match (d.eval)(&case.params, &ctx) {
        Ok(v) => v,
        Err(e) => {
            return Ok(ResidualReport {
                case: case.clone(),
                lhs: None,
                rhs: None,
                residual: None,
                budget: 0.0,
                tolerance,
                status: Status::Skipped(e.to_string()),
            })
        }
    };
    let residual = lhs.sub(&rhs);
    let budget = lhs.err() + rhs.err();
    let pass = match &residual {
        Scalar::Exact(_) => residual.is_exact_zero(),
        Scalar::Approx { .. } => residual.abs_f64() <= residual.err().max(budget) + tolerance,
    };
    Ok(ResidualReport {
        case: case.clone(),
        budget: residual.err().max(budget),
        lhs: Some(lhs),
        rhs: Some(rhs),
        residual: Some(residual),
        tolerance,
        status: if pass { Status::Pass } else { Status::Fail },
    })
}

#[derive(Clone, Debug)]
pub struct FuzzSummary {
    pub id: &'static str,
    pub pass: usize,
    pub fail: usize,
    pub skip: usize,
    pub worst_ratio: f64,
    pub seed: u64,
    pub reports: Vec<ResidualReport>,
}

impl FuzzSummary {
    pub fn to_json(&self) -> Value {
        json!({
            "id": self.id,
            "pass": self.pass,
            "fail": self.fail,
            "skip": self.skip,
            "worst_ratio": self.worst_ratio,
            "seed": self.seed,
        })
    }
}

/// Run `budget` generated cases in parallel. The stream depends only on
/// `(id, seed, bounds)`.
pub fn fuzz(id: &str, budget: usize, seed: u64, bounds: &Bounds, mode: Option<Mode>, prec: u32) -> Result<FuzzSummary> {
    if budget == 0 {
        return Err(MzvError::Invalid("fuzz budget must be >= 1".into()));
    }
    let d = lookup(id)?;
    let mode = mode.unwrap_or_else(|| d.default_mode());
    let reports: Vec<ResidualReport> = (0..budget as u64)
        .into_par_iter()
        .map(|i| {
            let params = d.generate(seed, i, bounds);
            let case = IdentityCase { id: d.id, params, mode, prec };
            verify(&case).unwrap_or_else(|e| ResidualReport {
                case,
                lhs: None,
                rhs: None,
                residual: None,
                budget: 0.0,
                tolerance: 0.0,
                status: Status::Skipped(e.to_string()),
            })
        })
        .collect();
    let count = |s: &str| reports.iter().filter(|r| r.status.as_str() == s).count();
    let worst = reports.iter().map(ResidualReport::ratio).fold(0.0, f64::max);
    Ok(FuzzSummary {
        id: d.id,
        pass: count("pass"),
        fail: count("fail"),
        skip: count("skipped"),
        worst_ratio: worst,
        seed,
        reports,
    })
}

/// Exhaustive parameter grid for the exact-mode entries: `|k| <= max_weight`,
/// depth <= `max_depth`, `n, l <= max_n`, labels from `{1, 1/2, -1/3}`,
/// integer `a` in `{0, 1, 2}`.
pub fn exact_grid(id: &str, max_weight: u32, max_depth: usize, max_n: u64) -> Result<Vec<Params>> {
    finite::exact_grid(lookup(id)?.id, max_weight, max_depth, max_n)
}

#[cfg(test)]
mod tests;
