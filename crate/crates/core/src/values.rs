//! Infinite-series values: multiple polylogarithms (plain, star,
//! parametric), t-values, multiple mixed values and the convoluted families.
//!
//! Interior arguments are summed directly with a geometric tail bound;
//! anything near the boundary of the polydisk goes through the Chen engine.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use rug::ops::Pow;
use rug::{Float, Rational};

use crate::error::{MzvError, Result};
use crate::index::Composition;
use crate::num::{round_err, working_prec, Cx, Ev, Scalar, Q};
use crate::sums::{nested, zeta_n_float};
use crate::words::{chen, mpl_word, t_word};

/// Largest cumulative modulus summed directly.
const SERIES_RADIUS: f64 = 0.8;
const MAX_SERIES_TERMS: u64 = 400_000;

type Key = (Vec<u32>, Vec<Q>, u32);

fn cache() -> &'static Mutex<HashMap<Key, Ev>> {
    static C: OnceLock<Mutex<HashMap<Key, Ev>>> = OnceLock::new();
    C.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Drop all memoized polylogarithm values.
pub fn clear_cache() {
    cache().lock().expect("cache lock").clear();
}

fn cumulative(x: &[Q]) -> Vec<Q> {
    let mut acc = Q::one();
    x.iter()
        .map(|v| {
            acc = acc.mul(v);
            acc.clone()
        })
        .collect()
}

/// Smallest `N` with `(N+1)^(r-1) q^(N+1) / (1 - q') * scale <= 2^-wp`.
fn series_terms(q: f64, r: usize, scale: f64, wp: u32) -> Result<(u64, f64)> {
    if q == 0.0 {
        return Ok((1, 0.0));
    }
    let lq = q.log2();
    let bound = |n: u64| -> f64 {
        let nf = n as f64;
        let qq = q * ((nf + 2.0) / (nf + 1.0)).powi(r as i32 - 1);
        if qq >= 1.0 {
            return f64::INFINITY;
        }
        ((r as f64 - 1.0) * (nf + 1.0).log2() + (nf + 1.0) * lq - (1.0 - qq).log2() + scale.log2()).exp2()
    };
    let target = 2f64.powi(-(wp as i32));
    let mut n = ((wp as f64) / -lq) as u64 + 4;
    while bound(n) > target {
        n += n / 8 + 4;
        if n > MAX_SERIES_TERMS {
            return Err(MzvError::NoConvergence(format!(
                "direct series needs more than {MAX_SERIES_TERMS} terms"
            )));
        }
    }
    Ok((n, bound(n)))
}

fn check_mpl(k: &[u32], x: &[Q]) -> Result<()> {
    if k.len() != x.len() {
        return Err(MzvError::LengthMismatch(format!(
            "index depth {} vs {} labels",
            k.len(),
            x.len()
        )));
    }
    if k.contains(&0) {
        return Err(MzvError::Invalid("index parts must be >= 1".into()));
    }
    if !k.is_empty() && k[0] == 1 && x[0].is_one() {
        return Err(MzvError::Inadmissible("(k_1, x_1) = (1, 1)".into()));
    }
    Ok(())
}

/// `Li_k(x)` at working precision `wp`.
pub fn mpl_ev(k: &[u32], x: &[Q], wp: u32) -> Result<Ev> {
    check_mpl(k, x)?;
    if k.is_empty() {
        return Ok(Ev::one(wp));
    }
    if x.iter().any(Q::is_zero) {
        return Ok(Ev::zero(wp));
    }
    let key = (k.to_vec(), x.to_vec(), wp);
    if let Some(v) = cache().lock().expect("cache lock").get(&key) {
        return Ok(v.clone());
    }
    let y = cumulative(x);
    let qmax = y.iter().map(Q::abs_f64).fold(0.0, f64::max);
    if y.iter().any(|v| v.cmp_abs_one().is_gt()) {
        return Err(MzvError::Domain("need |x_1 ... x_j| <= 1".into()));
    }
    let v = if qmax <= SERIES_RADIUS {
        let (n, tail) = series_terms(qmax, k.len(), 1.0, wp)?;
        let xc: Vec<Cx> = x.iter().map(|q| q.to_cx(wp)).collect();
        let mut s = zeta_n_float(k, &xc, &Q::zero(), n, false, wp)?;
        s.e += tail;
        s
    } else {
        chen::eval_word(&mpl_word(k, x), wp)?
    };
    cache().lock().expect("cache lock").insert(key, v.clone());
    Ok(v)
}

/// Star sums as sums over contractions of adjacent indices.
pub fn contractions(k: &[u32], x: &[Q]) -> Vec<(Vec<u32>, Vec<Q>)> {
    let r = k.len();
    if r == 0 {
        return vec![(vec![], vec![])];
    }
    let mut out = Vec::with_capacity(1 << (r - 1));
    for mask in 0..(1u32 << (r - 1)) {
        let mut kk = vec![k[0]];
        let mut xx = vec![x[0].clone()];
        for i in 0..r - 1 {
            if mask >> i & 1 == 1 {
                *kk.last_mut().expect("nonempty") += k[i + 1];
                let last = xx.last_mut().expect("nonempty");
                *last = last.mul(&x[i + 1]);
            } else {
                kk.push(k[i + 1]);
                xx.push(x[i + 1].clone());
            }
        }
        out.push((kk, xx));
    }
    out
}

pub fn mpl_star_ev(k: &[u32], x: &[Q], wp: u32) -> Result<Ev> {
    check_mpl(k, x)?;
    let mut acc = Ev::zero(wp);
    for (kk, xx) in contractions(k, x) {
        acc.add_assign(&mpl_ev(&kk, &xx, wp)?);
    }
    Ok(acc)
}

fn nonneg_int(a: &Q) -> Option<u64> {
    a.as_real().filter(|q| q.is_integer() && **q >= 0).and_then(|q| q.numer().to_u64())
}

/// Parametric `Li_k(x; a) = lim zeta_n(k; x; a)`.
pub fn param_mpl_ev(k: &[u32], x: &[Q], a: &Q, wp: u32) -> Result<Ev> {
    check_mpl(k, x)?;
    if a.is_real() && a.re.is_integer() && a.re < 0 {
        return Err(MzvError::Domain(format!("shift a = {a} hits a pole")));
    }
    if k.is_empty() {
        return Ok(Ev::one(wp));
    }
    if a.is_zero() {
        return mpl_ev(k, x, wp);
    }
    if x.iter().any(Q::is_zero) {
        return Ok(Ev::zero(wp));
    }
    let y = cumulative(x);
    if y.iter().any(|v| v.cmp_abs_one().is_gt()) {
        return Err(MzvError::Domain("need |x_1 ... x_j| <= 1".into()));
    }
    let qmax = y.iter().map(Q::abs_f64).fold(0.0, f64::max);
    if let Some(ai) = nonneg_int(a) {
        if qmax > SERIES_RADIUS {
            // Li_k(x) = sum_i Li_{k_1..i}(x_1..i; a) zeta_a(k_{i+1..r}; x_{i+1..r})
            let r = k.len();
            let mut v = mpl_ev(k, x, wp)?;
            for i in 0..r {
                let head = param_mpl_ev(&k[..i], &x[..i], a, wp)?;
                let xc: Vec<Cx> = x[i..].iter().map(|q| q.to_cx(wp)).collect();
                let fin = zeta_n_float(&k[i..], &xc, &Q::zero(), ai, false, wp)?;
                v = v.sub(&head.mul(&fin));
            }
            return Ok(v);
        }
    }
    if qmax >= 1.0 {
        return Err(MzvError::Unsupported(
            "parametric values on the unit torus need an integer shift a >= 0".into(),
        ));
    }
    if a.re.to_f64() + 1.0 <= 0.0 {
        return Err(MzvError::Unsupported("shift with Re(a) <= -1".into()));
    }
    let xc: Vec<Cx> = x.iter().map(|q| q.to_cx(wp)).collect();
    let ac = a.to_cx(wp);
    let mut scale = 1.0;
    for v in &xc {
        scale *= v.pow_c(&ac)?.abs_f64().max(1.0);
    }
    let (n, tail) = series_terms(qmax, k.len(), scale, wp)?;
    let mut s = zeta_n_float(k, &xc, a, n, false, wp)?;
    s.e += tail;
    Ok(s)
}

pub fn param_mpl_star_ev(k: &[u32], x: &[Q], a: &Q, wp: u32) -> Result<Ev> {
    check_mpl(k, x)?;
    let mut acc = Ev::zero(wp);
    let integral = a.is_real() && a.re.is_integer();
    let ac = a.to_cx(wp);
    let powers = |v: &[Q]| -> Result<Cx> {
        let mut p = Cx::one(wp);
        for q in v {
            p = p.mul(&q.to_cx(wp).pow_c(&ac)?);
        }
        Ok(p)
    };
    let full = if integral { Cx::one(wp) } else { powers(x)? };
    for (kk, xx) in contractions(k, x) {
        let mut term = param_mpl_ev(&kk, &xx, a, wp)?;
        // A merged slot carries (x_i x_j)^(n+a); the sum wants x_i^(n+a) x_j^(n+a),
        // which differs by a unit factor off the principal branch.
        if !integral && xx.len() < x.len() {
            let c = full.div(&powers(&xx)?);
            let e = 8.0 * round_err(&c);
            term = term.mul(&Ev::new(c, e));
        }
        acc.add_assign(&term);
    }
    Ok(acc)
}

/// `ti_k(x) = sum_{n_1 > ... > n_r} x^(2 n_1 - 1) / prod (2 n_j - 1)^k_j`.
pub fn ti_ev(k: &[u32], x: &Q, wp: u32) -> Result<Ev> {
    if k.is_empty() {
        return Ok(Ev::one(wp));
    }
    if k[0] == 1 && x.is_one() {
        return Err(MzvError::Inadmissible("ti with (k_1, x) = (1, 1)".into()));
    }
    if x.cmp_abs_one().is_gt() {
        return Err(MzvError::Domain("need |x| <= 1".into()));
    }
    if x.is_zero() {
        return Ok(Ev::zero(wp));
    }
    let ax = x.abs_f64();
    if ax <= SERIES_RADIUS {
        let r = k.len();
        let (n, tail) = series_terms(ax * ax, r, 1.0 / ax, wp)?;
        let xc = x.to_cx(wp);
        let x2 = xc.mul(&xc);
        let mut pw: Option<Cx> = None;
        let v = nested(r, n, false, Cx::zero(wp), Cx::one(wp), |j, m| {
            let d = Float::with_val(wp, 2 * m - 1);
            let mut t = Cx::real(Float::with_val(wp, d.pow(k[j])).recip());
            if j == 0 {
                let p = match pw.take() {
                    None => xc.clone(),
                    Some(p) => p.mul(&x2),
                };
                t = t.mul(&p);
                pw = Some(p);
            }
            t
        });
        let e = tail + v.abs_f64().max(1.0) * (n as f64) * (r as f64 + 2.0) * 2f64.powi(-(wp as i32) + 4);
        return Ok(Ev::new(v, e));
    }
    if !x.is_real() {
        return Err(MzvError::Unsupported("ti near the unit circle needs real x".into()));
    }
    chen::eval_word(&t_word(k, x), wp)
}

pub fn ti_star_ev(k: &[u32], x: &Q, wp: u32) -> Result<Ev> {
    let ones = vec![Q::one(); k.len()];
    let mut acc = Ev::zero(wp);
    for (kk, _) in contractions(k, &ones) {
        acc.add_assign(&ti_ev(&kk, x, wp)?);
    }
    Ok(acc)
}

/// `Mi_k(e; x) = sum x^(n_1) prod (1 + e_j (-1)^n_j) / n_j^k_j`, through the
/// `2^r` expansion into polylogarithms at `+-1`.
pub fn mi_ev(k: &[u32], e: &[i32], x: &Q, wp: u32) -> Result<Ev> {
    let r = k.len();
    if e.len() != r {
        return Err(MzvError::LengthMismatch("M signs".into()));
    }
    if r == 0 {
        return Ok(Ev::one(wp));
    }
    if k[0] == 1 && x.is_one() {
        return Err(MzvError::Inadmissible("Mi with (k_1, x) = (1, 1)".into()));
    }
    let mut acc = Ev::zero(wp);
    for mask in 0..(1u32 << r) {
        let mut c = 1i64;
        let mut z = Vec::with_capacity(r);
        for j in 0..r {
            if mask >> j & 1 == 1 {
                c *= e[j] as i64;
                z.push(Q::int(-1));
            } else {
                z.push(Q::one());
            }
        }
        z[0] = z[0].mul(x);
        acc.add_assign(&mpl_ev(k, &z, wp)?.mul_i64(c));
    }
    Ok(acc)
}

// ---------------------------------------------------------------------------
// Convoluted values
// ---------------------------------------------------------------------------

type Letter = (u32, Q);

fn stuffle(a: &[Letter], b: &[Letter]) -> Vec<Vec<Letter>> {
    if a.is_empty() {
        return vec![b.to_vec()];
    }
    if b.is_empty() {
        return vec![a.to_vec()];
    }
    let mut out = Vec::new();
    for mut w in stuffle(&a[1..], b) {
        w.insert(0, a[0].clone());
        out.push(w);
    }
    for mut w in stuffle(a, &b[1..]) {
        w.insert(0, b[0].clone());
        out.push(w);
    }
    for mut w in stuffle(&a[1..], &b[1..]) {
        w.insert(0, (a[0].0 + b[0].0, a[0].1.mul(&b[0].1)));
        out.push(w);
    }
    out
}

/// Polylogarithm terms of `sum_n lam^n / n^s zeta_{n-1}(kt; kx) zeta*_n(lt; lx)`
/// with multiplicities.
pub fn conv_terms(s: u32, lam: &Q, kt: &[u32], kx: &[Q], lt: &[u32], lx: &[Q]) -> Vec<((Vec<u32>, Vec<Q>), i64)> {
    let a: Vec<Letter> = kt.iter().copied().zip(kx.iter().cloned()).collect();
    let mut acc: HashMap<(Vec<u32>, Vec<Q>), i64> = HashMap::new();
    let mut order = Vec::new();
    for (cl, cx) in contractions(lt, lx) {
        let c: Vec<Letter> = cl.into_iter().zip(cx).collect();
        let mut splits: Vec<(Option<&Letter>, &[Letter])> = vec![(None, &c[..])];
        if !c.is_empty() {
            splits.push((Some(&c[0]), &c[1..]));
        }
        for (head, rest) in splits {
            let (ss, ll) = match head {
                Some(h) => (s + h.0, lam.mul(&h.1)),
                None => (s, lam.clone()),
            };
            for w in stuffle(&a, rest) {
                let mut k = vec![ss];
                let mut x = vec![ll.clone()];
                for (kk, xx) in w {
                    k.push(kk);
                    x.push(xx);
                }
                let key = (k, x);
                let e = acc.entry(key.clone()).or_insert_with(|| {
                    order.push(key);
                    0
                });
                *e += 1;
            }
        }
    }
    order.into_iter().map(|k| {
        let m = acc[&k];
        (k, m)
    }).collect()
}

pub fn conv_gen_ev(s: u32, lam: &Q, kt: &[u32], kx: &[Q], lt: &[u32], lx: &[Q], wp: u32) -> Result<Ev> {
    if s < 2 && lam.is_one() {
        return Err(MzvError::Domain("convoluted series needs k_1 + l_1 >= 2".into()));
    }
    let mut acc = Ev::zero(wp);
    for ((k, x), m) in conv_terms(s, lam, kt, kx, lt, lx) {
        acc.add_assign(&mpl_ev(&k, &x, wp)?.mul_i64(m));
    }
    Ok(acc)
}

fn nonempty(k: &[u32], what: &str) -> Result<()> {
    if k.is_empty() {
        return Err(MzvError::Invalid(format!("{what} must be nonempty")));
    }
    if k.contains(&0) {
        return Err(MzvError::Invalid(format!("{what} parts must be >= 1")));
    }
    Ok(())
}

/// `zeta(k conv l*) = sum_n zeta_{n-1}(k_2..) zeta*_n(l_2..) / n^(k_1 + l_1)`.
pub fn conv_zeta_ev(k: &[u32], l: &[u32], wp: u32) -> Result<Ev> {
    nonempty(k, "k")?;
    nonempty(l, "l")?;
    let one = |n: usize| vec![Q::one(); n];
    conv_gen_ev(k[0] + l[0], &Q::one(), &k[1..], &one(k.len() - 1), &l[1..], &one(l.len() - 1), wp)
}

/// Labeled variant `sum_n (x_1 z_1)^n zeta_{n-1}(k'; x') zeta*_n(l'; z') / n^(k_1+l_1)`.
pub fn conv_lab_ev(k: &[u32], x: &[Q], l: &[u32], z: &[Q], wp: u32) -> Result<Ev> {
    nonempty(k, "k")?;
    nonempty(l, "l")?;
    if x.len() != k.len() || z.len() != l.len() {
        return Err(MzvError::LengthMismatch("convoluted labels".into()));
    }
    conv_gen_ev(k[0] + l[0], &x[0].mul(&z[0]), &k[1..], &x[1..], &l[1..], &z[1..], wp)
}

fn sign_expansion(e: &[i32]) -> Vec<(i64, Vec<Q>)> {
    let r = e.len();
    (0..(1u32 << r))
        .map(|mask| {
            let mut c = 1i64;
            let z = (0..r)
                .map(|j| {
                    if mask >> j & 1 == 1 {
                        c *= e[j] as i64;
                        Q::int(-1)
                    } else {
                        Q::one()
                    }
                })
                .collect();
            (c, z)
        })
        .collect()
}

/// Convoluted multiple mixed value with trailing factor
/// `(1 + e_1 (-1)^n)(1 + h_1 (-1)^n)/2`; `x` weights the last star index.
/// Returns exact zero when `h_1 e_1 = -1`.
pub fn conv_m(k: &[u32], eta: &[i32], l: &[u32], eps: &[i32], x: &Q, prec: u32) -> Result<Scalar> {
    nonempty(k, "k")?;
    nonempty(l, "l")?;
    if eta.len() != k.len() || eps.len() != l.len() {
        return Err(MzvError::LengthMismatch("convoluted M signs".into()));
    }
    let first_ok = |v: i32| v == 0 || v == 1 || v == -1;
    let rest_ok = |v: &[i32]| v.iter().all(|&s| s == 1 || s == -1);
    if !first_ok(eta[0]) || !first_ok(eps[0]) || !rest_ok(&eta[1..]) || !rest_ok(&eps[1..]) {
        return Err(MzvError::Invalid("convoluted M labels: first in {-1,0,1}, rest +-1".into()));
    }
    if eta[0] == 0 && eps[0] == 0 {
        return Err(MzvError::Invalid("(eta_1, eps_1) = (0, 0)".into()));
    }
    if eta[0] * eps[0] == -1 {
        return Ok(Scalar::zero_exact());
    }
    Ok(conv_m_ev(k, eta, l, eps, x, working_prec(prec))?.to_scalar(prec))
}

pub fn conv_m_ev(k: &[u32], eta: &[i32], l: &[u32], eps: &[i32], x: &Q, wp: u32) -> Result<Ev> {
    let s = k[0] + l[0];
    let (e1, h1) = (eps[0] as i64, eta[0] as i64);
    let mut tot = Ev::zero(wp);
    for (cf2, lam) in [(1 + e1 * h1, Q::one()), (e1 + h1, Q::int(-1))] {
        if cf2 == 0 {
            continue;
        }
        for (ca, za) in sign_expansion(&eta[1..]) {
            for (cb, mut zb) in sign_expansion(&eps[1..]) {
                if let Some(last) = zb.last_mut() {
                    *last = last.mul(x);
                }
                let v = conv_gen_ev(s, &lam, &k[1..], &za, &l[1..], &zb, wp)?;
                tot.add_assign(&v.mul_q(&Q::ratio(cf2 * ca * cb, 2)));
            }
        }
    }
    Ok(tot)
}

/// `sum_n t_{n-1}(a) t*_n(b; x) / (2n-1)^s`, with `x` on the innermost index of `b`.
pub fn tconv_x_ev(s: u32, a: &[u32], b: &[u32], x: &Q, wp: u32) -> Result<Ev> {
    let (ra, rb) = (a.len(), b.len());
    let m = 1 + ra + rb;
    let mut tot = Ev::zero(wp);
    for mask in 0..(1u32 << m) {
        let sg: Vec<i64> = (0..m).map(|i| if mask >> i & 1 == 1 { -1 } else { 1 }).collect();
        let c: i64 = sg.iter().product();
        let lam = Q::int(sg[0]);
        let kx: Vec<Q> = sg[1..1 + ra].iter().map(|&v| Q::int(v)).collect();
        let mut lx: Vec<Q> = sg[1 + ra..].iter().map(|&v| Q::int(v)).collect();
        if let Some(last) = lx.last_mut() {
            *last = last.mul(x);
        }
        tot.add_assign(&conv_gen_ev(s, &lam, a, &kx, b, &lx, wp)?.mul_i64(c));
    }
    Ok(tot.mul_q(&Q::real(Rational::from((1, rug::Integer::from(1) << m as u32)))))
}

pub fn conv_t_ev(k: &[u32], l: &[u32], wp: u32) -> Result<Ev> {
    nonempty(k, "k")?;
    nonempty(l, "l")?;
    tconv_x_ev(k[0] + l[0], &k[1..], &l[1..], &Q::one(), wp)
}

// ---------------------------------------------------------------------------
// Front end
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Mpl,
    MplStar,
    TPoly,
    TStar,
    MPoly,
    ConvZeta,
    ConvT,
    ConvM,
    ParametricMpl,
    ParametricMplStar,
}

impl Family {
    pub fn parse(s: &str) -> Result<Family> {
        Ok(match s.trim() {
            "mpl" | "mzv" | "li" => Family::Mpl,
            "mpl_star" | "mzsv" => Family::MplStar,
            "t" | "t_poly" | "ti" => Family::TPoly,
            "t_star" => Family::TStar,
            "m" | "mmv" | "m_poly" => Family::MPoly,
            "conv_zeta" => Family::ConvZeta,
            "conv_t" => Family::ConvT,
            "conv_m" => Family::ConvM,
            "parametric_mpl" => Family::ParametricMpl,
            "parametric_mpl_star" => Family::ParametricMplStar,
            o => return Err(MzvError::Parse(format!("unknown family {o:?}"))),
        })
    }
    pub const NAMES: &'static [&'static str] = &[
        "mzv", "mzsv", "mpl", "mpl_star", "t", "t_star", "m", "conv_zeta", "conv_t", "conv_m",
        "parametric_mpl", "parametric_mpl_star",
    ];
}

/// A value request. Unused fields are ignored by families that do not need
/// them; missing labels default to all ones.
#[derive(Clone, Debug)]
pub struct ValueSpec {
    pub family: Family,
    pub k: Composition,
    pub l: Option<Composition>,
    /// Variables (mpl families), or a single `x` (t and M families, conv_m).
    pub x: Vec<Q>,
    pub eta: Vec<i32>,
    pub eps: Vec<i32>,
    pub a: Option<Q>,
}

impl ValueSpec {
    pub fn new(family: Family, k: Composition) -> ValueSpec {
        ValueSpec { family, k, l: None, x: Vec::new(), eta: Vec::new(), eps: Vec::new(), a: None }
    }
}

fn labels_or_ones(x: &[Q], r: usize) -> Result<Vec<Q>> {
    if x.is_empty() {
        Ok(vec![Q::one(); r])
    } else if x.len() == r {
        Ok(x.to_vec())
    } else {
        Err(MzvError::LengthMismatch(format!("index depth {r} vs {} labels", x.len())))
    }
}

fn single_x(x: &[Q]) -> Result<Q> {
    match x.len() {
        0 => Ok(Q::one()),
        1 => Ok(x[0].clone()),
        n => Err(MzvError::Invalid(format!("expected one variable, got {n}"))),
    }
}

fn signs_or(v: &[i32], r: usize, default: i32) -> Result<Vec<i32>> {
    if v.is_empty() {
        Ok(vec![default; r])
    } else if v.len() == r {
        Ok(v.to_vec())
    } else {
        Err(MzvError::LengthMismatch(format!("index depth {r} vs {} signs", v.len())))
    }
}

/// Evaluate any supported value at `prec` bits.
pub fn evaluate(spec: &ValueSpec, prec: u32) -> Result<Scalar> {
    let wp = working_prec(prec);
    let k = spec.k.parts();
    let r = k.len();
    let need_l = || -> Result<&[u32]> {
        spec.l
            .as_ref()
            .map(|c| c.parts())
            .ok_or_else(|| MzvError::Invalid("this family needs a second index l".into()))
    };
    let ev = match spec.family {
        Family::Mpl => mpl_ev(k, &labels_or_ones(&spec.x, r)?, wp)?,
        Family::MplStar => mpl_star_ev(k, &labels_or_ones(&spec.x, r)?, wp)?,
        Family::ParametricMpl | Family::ParametricMplStar => {
            let a = spec.a.clone().unwrap_or_default();
            let x = labels_or_ones(&spec.x, r)?;
            if spec.family == Family::ParametricMpl {
                param_mpl_ev(k, &x, &a, wp)?
            } else {
                param_mpl_star_ev(k, &x, &a, wp)?
            }
        }
        Family::TPoly => ti_ev(k, &single_x(&spec.x)?, wp)?,
        Family::TStar => ti_star_ev(k, &single_x(&spec.x)?, wp)?,
        Family::MPoly => mi_ev(k, &signs_or(&spec.eps, r, 1)?, &single_x(&spec.x)?, wp)?,
        Family::ConvZeta => conv_zeta_ev(k, need_l()?, wp)?,
        Family::ConvT => conv_t_ev(k, need_l()?, wp)?,
        Family::ConvM => {
            let l = need_l()?;
            let eta = signs_or(&spec.eta, r, 1)?;
            let eps = signs_or(&spec.eps, l.len(), 1)?;
            return conv_m(k, &eta, l, &eps, &single_x(&spec.x)?, prec);
        }
    };
    Ok(ev.to_scalar(prec))
}

/// `Li_k(x)` or its star version as a [`Scalar`].
pub fn mpl(k: &Composition, x: &[Q], star: bool, prec: u32) -> Result<Scalar> {
    let wp = working_prec(prec);
    let v = if star { mpl_star_ev(k.parts(), x, wp)? } else { mpl_ev(k.parts(), x, wp)? };
    Ok(v.to_scalar(prec))
}

pub fn parametric_mpl(k: &Composition, x: &[Q], a: &Q, star: bool, prec: u32) -> Result<Scalar> {
    let wp = working_prec(prec);
    let v = if star {
        param_mpl_star_ev(k.parts(), x, a, wp)?
    } else {
        param_mpl_ev(k.parts(), x, a, wp)?
    };
    Ok(v.to_scalar(prec))
}

pub fn t_value(k: &Composition, x: &Q, star: bool, prec: u32) -> Result<Scalar> {
    let wp = working_prec(prec);
    let v = if star { ti_star_ev(k.parts(), x, wp)? } else { ti_ev(k.parts(), x, wp)? };
    Ok(v.to_scalar(prec))
}

pub fn m_value(k: &Composition, e: &[i32], x: &Q, prec: u32) -> Result<Scalar> {
    Ok(mi_ev(k.parts(), e, x, working_prec(prec))?.to_scalar(prec))
}

pub fn conv_zeta(k: &Composition, l: &Composition, prec: u32) -> Result<Scalar> {
    Ok(conv_zeta_ev(k.parts(), l.parts(), working_prec(prec))?.to_scalar(prec))
}

pub fn conv_t(k: &Composition, l: &Composition, prec: u32) -> Result<Scalar> {
    Ok(conv_t_ev(k.parts(), l.parts(), working_prec(prec))?.to_scalar(prec))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rug::float::Constant;

    const WP: u32 = 160;

    fn close(v: &Ev, want: f64, tol: f64) {
        assert!((v.v.re_f64() - want).abs() < tol, "{} vs {want}", v.v.re_f64());
    }

    fn pi2() -> f64 {
        std::f64::consts::PI.powi(2)
    }

    #[test]
    fn polylog_examples() {
        close(&mpl_ev(&[1], &[Q::ratio(1, 2)], WP).unwrap(), 2f64.ln(), 1e-15);
        close(&mpl_ev(&[1, 1], &[Q::ratio(1, 2), Q::one()], WP).unwrap(), 0.5 * 2f64.ln().powi(2), 1e-15);
        let z21 = mpl_ev(&[2, 1], &[Q::one(), Q::one()], WP).unwrap();
        let z3 = Float::with_val(WP, Float::zeta_u(3));
        assert!(Float::with_val(WP, &z21.v.re - &z3).to_f64().abs() <= z21.e + 1e-45);
        assert!(matches!(mpl_ev(&[1], &[Q::one()], WP), Err(MzvError::Inadmissible(_))));
        close(&mpl_ev(&[2], &[Q::int(-1)], WP).unwrap(), -pi2() / 12.0, 1e-15);
    }

    #[test]
    fn parametric_examples() {
        close(&param_mpl_ev(&[2], &[Q::one()], &Q::zero(), WP).unwrap(), pi2() / 6.0, 1e-15);
        close(&param_mpl_ev(&[2], &[Q::one()], &Q::int(1), WP).unwrap(), pi2() / 6.0 - 1.0, 1e-15);
        assert!(param_mpl_ev(&[2], &[Q::one()], &Q::int(-1), WP).is_err());
        assert!(param_mpl_ev(&[2], &[Q::one()], &Q::ratio(1, 2), WP).is_err());
        // interior: Li_2(1/2; 1/2) against direct summation in f64
        let v = param_mpl_ev(&[2], &[Q::ratio(1, 2)], &Q::ratio(1, 2), WP).unwrap();
        let want: f64 = (1..200).map(|n| 0.5f64.powf(n as f64 + 0.5) / (n as f64 + 0.5).powi(2)).sum();
        close(&v, want, 1e-14);
    }

    #[test]
    fn t_and_m_examples() {
        close(&ti_ev(&[2], &Q::one(), WP).unwrap(), pi2() / 8.0, 1e-15);
        close(&ti_ev(&[1], &Q::ratio(1, 2), WP).unwrap(), 0.5f64.atanh(), 1e-15);
        close(&mi_ev(&[2], &[1], &Q::one(), WP).unwrap(), pi2() / 12.0, 1e-15);
        close(&mi_ev(&[2], &[-1], &Q::one(), WP).unwrap(), pi2() / 4.0, 1e-15);
        let m = mi_ev(&[3, 1], &[-1, -1], &Q::one(), WP).unwrap();
        let t = ti_ev(&[3, 1], &Q::one(), WP).unwrap();
        assert!(m.sub(&t.mul_i64(4)).abs_f64() <= m.e + 4.0 * t.e + 1e-40);
    }

    #[test]
    fn convoluted_examples() {
        let z3 = Float::with_val(WP, Float::zeta_u(3)).to_f64();
        close(&conv_zeta_ev(&[2], &[1], WP).unwrap(), z3, 1e-15);
        close(&conv_zeta_ev(&[1, 1], &[1], WP).unwrap(), z3, 1e-15);
        let t3 = 7.0 / 8.0 * z3;
        close(&conv_t_ev(&[2], &[1], WP).unwrap(), t3, 1e-15);
        let c = conv_m_ev(&[2], &[-1], &[1], &[-1], &Q::one(), WP).unwrap();
        close(&c, 2.0 * t3, 1e-15);
        let z = conv_m(&[2, 1], &[1, -1], &[1], &[-1], &Q::one(), 128).unwrap();
        assert!(z.is_exact_zero());
        let pi = Float::with_val(WP, Constant::Pi).to_f64();
        assert!(pi > 3.0);
    }
}
