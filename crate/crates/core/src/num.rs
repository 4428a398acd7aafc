//! Number types: exact complex rationals for labels and parameters,
//! a float complex for values, and the dual-mode [`Scalar`].

use std::cmp::Ordering;
use std::fmt;

use rug::float::Round;
use rug::ops::Pow;
use rug::{Float, Integer, Rational};

use crate::error::{MzvError, Result};

pub const DEFAULT_PREC: u32 = 128;
/// Bits carried beyond the requested precision.
pub const GUARD_BITS: u32 = 32;
pub const MIN_PREC: u32 = 16;
/// Error radii are `f64`, which bounds the usable precision.
pub const MAX_PREC: u32 = 900;

/// Working precision for a requested output precision.
pub fn working_prec(prec: u32) -> u32 {
    prec + GUARD_BITS
}

/// Default precision, honouring `MZVLAB_PREC` when it parses.
pub fn default_prec() -> u32 {
    std::env::var("MZVLAB_PREC")
        .ok()
        .and_then(|s| s.trim().parse::<u32>().ok())
        .filter(|p| (MIN_PREC..=MAX_PREC).contains(p))
        .unwrap_or(DEFAULT_PREC)
}

pub fn check_prec(prec: u32) -> Result<u32> {
    if (MIN_PREC..=MAX_PREC).contains(&prec) {
        Ok(prec)
    } else {
        Err(MzvError::Invalid(format!(
            "precision {prec} outside [{MIN_PREC}, {MAX_PREC}]"
        )))
    }
}

// ---------------------------------------------------------------------------
// Exact complex rationals
// ---------------------------------------------------------------------------

/// Exact complex rational. Labels, variables and path points are kept in
/// this form so that pole/endpoint coincidences are decided exactly.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Q {
    pub re: Rational,
    pub im: Rational,
}

impl Q {
    pub fn new(re: Rational, im: Rational) -> Q {
        Q { re, im }
    }
    pub fn real(re: Rational) -> Q {
        Q { re, im: Rational::new() }
    }
    pub fn int(v: i64) -> Q {
        Q::real(Rational::from(v))
    }
    pub fn ratio(p: i64, q: i64) -> Q {
        Q::real(Rational::from((p, q)))
    }
    pub fn zero() -> Q {
        Q::default()
    }
    pub fn one() -> Q {
        Q::int(1)
    }
    pub fn is_zero(&self) -> bool {
        self.re.cmp0() == Ordering::Equal && self.im.cmp0() == Ordering::Equal
    }
    pub fn is_real(&self) -> bool {
        self.im.cmp0() == Ordering::Equal
    }
    pub fn is_one(&self) -> bool {
        self.is_real() && self.re == 1
    }
    pub fn add(&self, o: &Q) -> Q {
        Q::new(Rational::from(&self.re + &o.re), Rational::from(&self.im + &o.im))
    }
    pub fn sub(&self, o: &Q) -> Q {
        Q::new(Rational::from(&self.re - &o.re), Rational::from(&self.im - &o.im))
    }
    pub fn neg(&self) -> Q {
        Q::new(Rational::from(-&self.re), Rational::from(-&self.im))
    }
    pub fn mul(&self, o: &Q) -> Q {
        if self.is_real() && o.is_real() {
            return Q::real(Rational::from(&self.re * &o.re));
        }
        let re = Rational::from(&self.re * &o.re) - Rational::from(&self.im * &o.im);
        let im = Rational::from(&self.re * &o.im) + Rational::from(&self.im * &o.re);
        Q::new(re, im)
    }
    pub fn norm2(&self) -> Rational {
        Rational::from(&self.re * &self.re) + Rational::from(&self.im * &self.im)
    }
    pub fn recip(&self) -> Result<Q> {
        if self.is_zero() {
            return Err(MzvError::Domain("division by zero".into()));
        }
        if self.is_real() {
            return Ok(Q::real(Rational::from(self.re.recip_ref())));
        }
        let n = self.norm2();
        Ok(Q::new(
            Rational::from(&self.re / &n),
            -Rational::from(&self.im / &n),
        ))
    }
    pub fn div(&self, o: &Q) -> Result<Q> {
        Ok(self.mul(&o.recip()?))
    }
    pub fn pow(&self, n: u32) -> Q {
        let mut acc = Q::one();
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }
    /// Modulus compared with one: `Less`, `Equal` or `Greater`.
    pub fn cmp_abs_one(&self) -> Ordering {
        self.norm2().cmp(&Rational::from(1))
    }
    pub fn abs_f64(&self) -> f64 {
        self.norm2().to_f64().sqrt()
    }
    pub fn to_f64(&self) -> f64 {
        self.re.to_f64()
    }
    pub fn to_cx(&self, prec: u32) -> Cx {
        if self.is_real() {
            Cx::real(Float::with_val(prec, &self.re))
        } else {
            Cx::new(Float::with_val(prec, &self.re), Float::with_val(prec, &self.im))
        }
    }
    /// Exact value as a real rational, if it is one.
    pub fn as_real(&self) -> Option<&Rational> {
        if self.is_real() {
            Some(&self.re)
        } else {
            None
        }
    }
    /// Nearest dyadic rational to an `f64`.
    pub fn from_f64(v: f64) -> Result<Q> {
        Rational::from_f64(v)
            .map(Q::real)
            .ok_or_else(|| MzvError::Invalid(format!("non-finite value {v}")))
    }
    pub fn is_sign(&self) -> bool {
        self.is_real() && (self.re == 1 || self.re == -1)
    }
}

impl fmt::Display for Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_real() {
            return write!(f, "{}", self.re);
        }
        if self.re.cmp0() == Ordering::Equal {
            return write!(f, "{}i", self.im);
        }
        if self.im.cmp0() == Ordering::Less {
            write!(f, "{}-{}i", self.re, Rational::from(-&self.im))
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

/// Parse a real literal: integer, `p/q`, or decimal with optional exponent.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    if t.is_empty() {
        return Err(MzvError::Parse("empty number".into()));
    }
    if let Some((p, q)) = t.split_once('/') {
        let p = parse_rational(p)?;
        let q = parse_rational(q)?;
        if q.cmp0() == Ordering::Equal {
            return Err(MzvError::Parse(format!("zero denominator in {t}")));
        }
        return Ok(p / q);
    }
    let (mant, exp) = match t.find(['e', 'E']) {
        Some(i) => {
            let e: i32 = t[i + 1..]
                .parse()
                .map_err(|_| MzvError::Parse(format!("bad exponent in {t}")))?;
            (&t[..i], e)
        }
        None => (t, 0),
    };
    let (neg, body) = match mant.as_bytes().first() {
        Some(b'-') => (true, &mant[1..]),
        Some(b'+') => (false, &mant[1..]),
        _ => (false, mant),
    };
    let (ip, fp) = body.split_once('.').unwrap_or((body, ""));
    if ip.is_empty() && fp.is_empty() {
        return Err(MzvError::Parse(format!("bad number {t}")));
    }
    if !ip.chars().chain(fp.chars()).all(|c| c.is_ascii_digit()) {
        return Err(MzvError::Parse(format!("bad number {t}")));
    }
    let digits = format!("{ip}{fp}");
    let num = Integer::from_str_radix(if digits.is_empty() { "0" } else { &digits }, 10)
        .map_err(|_| MzvError::Parse(format!("bad number {t}")))?;
    let scale = exp - fp.len() as i32;
    let ten = Integer::from(10);
    let mut r = Rational::from(num);
    if scale >= 0 {
        r *= ten.pow(scale as u32);
    } else {
        r /= ten.pow((-scale) as u32);
    }
    if neg {
        r = -r;
    }
    Ok(r)
}

/// Parse a possibly complex literal such as `1/2`, `-0.3`, `0.3+0.4i`, `-i`.
pub fn parse_q(s: &str) -> Result<Q> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if t.is_empty() {
        return Err(MzvError::Parse("empty number".into()));
    }
    if !t.ends_with('i') {
        return Ok(Q::real(parse_rational(&t)?));
    }
    let body = &t[..t.len() - 1];
    // split point: last sign not at start and not following an exponent marker
    let bytes = body.as_bytes();
    let mut split = None;
    for i in (1..bytes.len()).rev() {
        if (bytes[i] == b'+' || bytes[i] == b'-') && !matches!(bytes[i - 1], b'e' | b'E') {
            split = Some(i);
            break;
        }
    }
    let (re_s, im_s) = match split {
        Some(i) => (&body[..i], &body[i..]),
        None => ("0", body),
    };
    let im = match im_s {
        "" | "+" => Rational::from(1),
        "-" => Rational::from(-1),
        _ => parse_rational(im_s)?,
    };
    Ok(Q::new(parse_rational(re_s)?, im))
}

/// Parse a comma-separated list of literals; a string made only of `+`/`-`
/// characters is read as a sign vector.
pub fn parse_q_list(s: &str) -> Result<Vec<Q>> {
    let t = s.trim();
    if t.is_empty() {
        return Ok(Vec::new());
    }
    if t.chars().all(|c| c == '+' || c == '-' || c == '\u{2212}') {
        return Ok(t
            .chars()
            .map(|c| if c == '+' { Q::one() } else { Q::int(-1) })
            .collect());
    }
    t.split(',').map(parse_q).collect()
}

// ---------------------------------------------------------------------------
// Float complex
// ---------------------------------------------------------------------------

/// Float complex number; `im == None` marks an exactly real value so that
/// real arithmetic takes the short path.
#[derive(Clone, Debug)]
pub struct Cx {
    pub re: Float,
    pub im: Option<Float>,
}

impl Cx {
    pub fn real(re: Float) -> Cx {
        Cx { re, im: None }
    }
    pub fn new(re: Float, im: Float) -> Cx {
        if im.is_zero() {
            Cx { re, im: None }
        } else {
            Cx { re, im: Some(im) }
        }
    }
    pub fn zero(prec: u32) -> Cx {
        Cx::real(Float::new(prec))
    }
    pub fn one(prec: u32) -> Cx {
        Cx::real(Float::with_val(prec, 1))
    }
    pub fn from_i64(v: i64, prec: u32) -> Cx {
        Cx::real(Float::with_val(prec, v))
    }
    pub fn from_rational(v: &Rational, prec: u32) -> Cx {
        Cx::real(Float::with_val(prec, v))
    }
    pub fn prec(&self) -> u32 {
        self.re.prec()
    }
    pub fn is_real(&self) -> bool {
        self.im.is_none()
    }
    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.as_ref().is_none_or(|v| v.is_zero())
    }
    pub fn im_or_zero(&self) -> Float {
        self.im.clone().unwrap_or_else(|| Float::new(self.prec()))
    }
    pub fn with_prec(&self, prec: u32) -> Cx {
        Cx {
            re: Float::with_val(prec, &self.re),
            im: self.im.as_ref().map(|v| Float::with_val(prec, v)),
        }
    }

    pub fn add(&self, o: &Cx) -> Cx {
        let p = self.prec();
        let re = Float::with_val(p, &self.re + &o.re);
        let im = match (&self.im, &o.im) {
            (None, None) => None,
            (Some(a), None) => Some(a.clone()),
            (None, Some(b)) => Some(Float::with_val(p, b)),
            (Some(a), Some(b)) => Some(Float::with_val(p, a + b)),
        };
        Cx { re, im }
    }
    pub fn add_assign(&mut self, o: &Cx) {
        self.re += &o.re;
        match (&mut self.im, &o.im) {
            (_, None) => {}
            (Some(a), Some(b)) => *a += b,
            (None, Some(b)) => self.im = Some(Float::with_val(self.re.prec(), b)),
        }
    }
    pub fn sub(&self, o: &Cx) -> Cx {
        self.add(&o.neg())
    }
    pub fn neg(&self) -> Cx {
        Cx {
            re: Float::with_val(self.prec(), -&self.re),
            im: self.im.as_ref().map(|v| Float::with_val(v.prec(), -v)),
        }
    }
    pub fn mul(&self, o: &Cx) -> Cx {
        let p = self.prec();
        match (&self.im, &o.im) {
            (None, None) => Cx::real(Float::with_val(p, &self.re * &o.re)),
            (Some(b), None) => Cx {
                re: Float::with_val(p, &self.re * &o.re),
                im: Some(Float::with_val(p, b * &o.re)),
            },
            (None, Some(d)) => Cx {
                re: Float::with_val(p, &self.re * &o.re),
                im: Some(Float::with_val(p, &self.re * d)),
            },
            (Some(b), Some(d)) => {
                let re = Float::with_val(p, &self.re * &o.re) - Float::with_val(p, b * d);
                let im = Float::with_val(p, &self.re * d) + Float::with_val(p, b * &o.re);
                Cx { re, im: Some(im) }
            }
        }
    }
    pub fn mul_real(&self, r: &Float) -> Cx {
        let p = self.prec();
        Cx {
            re: Float::with_val(p, &self.re * r),
            im: self.im.as_ref().map(|v| Float::with_val(p, v * r)),
        }
    }
    pub fn mul_i64(&self, v: i64) -> Cx {
        let p = self.prec();
        Cx {
            re: Float::with_val(p, &self.re * v),
            im: self.im.as_ref().map(|x| Float::with_val(p, x * v)),
        }
    }
    pub fn div_i64(&self, v: i64) -> Cx {
        let p = self.prec();
        Cx {
            re: Float::with_val(p, &self.re / v),
            im: self.im.as_ref().map(|x| Float::with_val(p, x / v)),
        }
    }
    pub fn div_real(&self, r: &Float) -> Cx {
        let p = self.prec();
        Cx {
            re: Float::with_val(p, &self.re / r),
            im: self.im.as_ref().map(|v| Float::with_val(p, v / r)),
        }
    }
    pub fn norm2(&self) -> Float {
        let p = self.prec();
        let mut n = Float::with_val(p, self.re.square_ref());
        if let Some(b) = &self.im {
            n += Float::with_val(p, b.square_ref());
        }
        n
    }
    pub fn recip(&self) -> Cx {
        let p = self.prec();
        match &self.im {
            None => Cx::real(Float::with_val(p, self.re.recip_ref())),
            Some(b) => {
                let n = self.norm2();
                Cx {
                    re: Float::with_val(p, &self.re / &n),
                    im: Some(Float::with_val(p, -Float::with_val(p, b / &n))),
                }
            }
        }
    }
    pub fn div(&self, o: &Cx) -> Cx {
        if o.is_real() {
            return self.div_real(&o.re);
        }
        self.mul(&o.recip())
    }
    pub fn abs(&self) -> Float {
        match &self.im {
            None => Float::with_val(self.prec(), self.re.abs_ref()),
            Some(b) => Float::with_val(self.prec(), self.re.hypot_ref(b)),
        }
    }
    pub fn abs_f64(&self) -> f64 {
        self.abs().to_f64()
    }
    pub fn re_f64(&self) -> f64 {
        self.re.to_f64()
    }
    pub fn im_f64(&self) -> f64 {
        self.im.as_ref().map_or(0.0, |v| v.to_f64())
    }
    pub fn pow_u(&self, n: u64) -> Cx {
        let p = self.prec();
        if self.is_real() {
            return Cx::real(Float::with_val(p, (&self.re).pow(n)));
        }
        let mut acc = Cx::one(p);
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }
    /// Principal logarithm.
    pub fn ln(&self) -> Result<Cx> {
        if self.is_zero() {
            return Err(MzvError::Domain("log of zero".into()));
        }
        let p = self.prec();
        if self.is_real() && self.re.is_sign_positive() {
            return Ok(Cx::real(Float::with_val(p, self.re.ln_ref())));
        }
        let m = Float::with_val(p, self.abs().ln_ref());
        let arg = Float::with_val(p, self.im_or_zero().atan2_ref(&self.re));
        Ok(Cx::new(m, arg))
    }
    pub fn exp(&self) -> Cx {
        let p = self.prec();
        let e = Float::with_val(p, self.re.exp_ref());
        match &self.im {
            None => Cx::real(e),
            Some(b) => {
                let (s, c) = b.clone().sin_cos(Float::new(p));
                Cx::new(Float::with_val(p, &e * &c), Float::with_val(p, &e * &s))
            }
        }
    }
    /// Principal power `self^a`.
    pub fn pow_c(&self, a: &Cx) -> Result<Cx> {
        if a.is_zero() {
            return Ok(Cx::one(self.prec()));
        }
        if self.is_zero() {
            return Ok(Cx::zero(self.prec()));
        }
        Ok(self.ln()?.mul(a).exp())
    }

    pub fn to_string_digits(&self, digits: usize) -> String {
        let re = fmt_float(&self.re, digits);
        match &self.im {
            None => re,
            Some(b) => {
                let im = fmt_float(b, digits);
                if im.starts_with('-') {
                    format!("{re}{im}i")
                } else {
                    format!("{re}+{im}i")
                }
            }
        }
    }
}

/// Decimal rendering with a fixed number of significant digits.
pub fn fmt_float(v: &Float, digits: usize) -> String {
    if v.is_zero() {
        return "0".into();
    }
    let s = v.to_string_radix_round(10, Some(digits.max(2)), Round::Nearest);
    tidy_exponent(&s)
}

fn tidy_exponent(s: &str) -> String {
    // rug prints e.g. "1.2020569031595942853997e0"; keep plain form for small exponents
    let Some((mant, exp)) = s.split_once('e') else {
        return s.to_string();
    };
    let Ok(e) = exp.parse::<i64>() else {
        return s.to_string();
    };
    if e == 0 {
        return mant.to_string();
    }
    format!("{mant}e{e}")
}

pub fn digits_for_prec(prec: u32) -> usize {
    ((prec as f64) * std::f64::consts::LOG10_2).floor() as usize
}

// ---------------------------------------------------------------------------
// Scalar
// ---------------------------------------------------------------------------

/// Dual-mode number: exact rational, or float complex with an absolute error
/// bound. `prec` is the precision the value was requested at.
#[derive(Clone, Debug)]
pub enum Scalar {
    Exact(Rational),
    Approx { value: Cx, err: f64, prec: u32 },
}

impl Scalar {
    pub fn exact(r: Rational) -> Scalar {
        Scalar::Exact(r)
    }
    pub fn approx(value: Cx, err: f64, prec: u32) -> Scalar {
        Scalar::Approx { value, err: err.max(0.0), prec }
    }
    pub fn zero_exact() -> Scalar {
        Scalar::Exact(Rational::new())
    }
    pub fn is_exact(&self) -> bool {
        matches!(self, Scalar::Exact(_))
    }
    pub fn err(&self) -> f64 {
        match self {
            Scalar::Exact(_) => 0.0,
            Scalar::Approx { err, .. } => *err,
        }
    }
    pub fn is_exact_zero(&self) -> bool {
        matches!(self, Scalar::Exact(r) if r.cmp0() == Ordering::Equal)
    }
    /// Value at working precision `wp`.
    pub fn to_cx(&self, wp: u32) -> Cx {
        match self {
            Scalar::Exact(r) => Cx::from_rational(r, wp),
            Scalar::Approx { value, .. } => value.with_prec(wp),
        }
    }
    pub fn abs_f64(&self) -> f64 {
        match self {
            Scalar::Exact(r) => r.to_f64().abs(),
            Scalar::Approx { value, .. } => value.abs_f64(),
        }
    }
    pub fn re_f64(&self) -> f64 {
        match self {
            Scalar::Exact(r) => r.to_f64(),
            Scalar::Approx { value, .. } => value.re_f64(),
        }
    }
    pub fn im_f64(&self) -> f64 {
        match self {
            Scalar::Exact(_) => 0.0,
            Scalar::Approx { value, .. } => value.im_f64(),
        }
    }

    fn prec_of(&self, o: &Scalar) -> u32 {
        match (self, o) {
            (Scalar::Approx { prec: a, .. }, Scalar::Approx { prec: b, .. }) => (*a).max(*b),
            (Scalar::Approx { prec, .. }, _) | (_, Scalar::Approx { prec, .. }) => *prec,
            _ => DEFAULT_PREC,
        }
    }

    pub fn add(&self, o: &Scalar) -> Scalar {
        if let (Scalar::Exact(a), Scalar::Exact(b)) = (self, o) {
            return Scalar::Exact(Rational::from(a + b));
        }
        let prec = self.prec_of(o);
        let wp = working_prec(prec);
        let v = self.to_cx(wp).add(&o.to_cx(wp));
        let err = self.err() + o.err() + round_err(&v);
        Scalar::approx(v, err, prec)
    }
    pub fn sub(&self, o: &Scalar) -> Scalar {
        self.add(&o.neg())
    }
    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Exact(a) => Scalar::Exact(Rational::from(-a)),
            Scalar::Approx { value, err, prec } => Scalar::approx(value.neg(), *err, *prec),
        }
    }
    pub fn mul(&self, o: &Scalar) -> Scalar {
        if let (Scalar::Exact(a), Scalar::Exact(b)) = (self, o) {
            return Scalar::Exact(Rational::from(a * b));
        }
        let prec = self.prec_of(o);
        let wp = working_prec(prec);
        let a = self.to_cx(wp);
        let b = o.to_cx(wp);
        let v = a.mul(&b);
        let (ea, eb) = (self.err(), o.err());
        let err = a.abs_f64() * eb + b.abs_f64() * ea + ea * eb + round_err(&v);
        Scalar::approx(v, err, prec)
    }
    pub fn mul_rational(&self, r: &Rational) -> Scalar {
        self.mul(&Scalar::Exact(r.clone()))
    }
    pub fn mul_i64(&self, v: i64) -> Scalar {
        self.mul(&Scalar::Exact(Rational::from(v)))
    }
    /// Division by a scalar bounded away from zero.
    pub fn div(&self, o: &Scalar) -> Result<Scalar> {
        if let (Scalar::Exact(a), Scalar::Exact(b)) = (self, o) {
            if b.cmp0() == Ordering::Equal {
                return Err(MzvError::Domain("division by zero".into()));
            }
            return Ok(Scalar::Exact(Rational::from(a / b)));
        }
        let prec = self.prec_of(o);
        let wp = working_prec(prec);
        let a = self.to_cx(wp);
        let b = o.to_cx(wp);
        let bm = b.abs_f64();
        if bm <= o.err() || b.is_zero() {
            return Err(MzvError::Domain("division by a value not bounded away from zero".into()));
        }
        let v = a.div(&b);
        let lo = bm - o.err();
        let err = (self.err() + v.abs_f64() * o.err()) / lo + round_err(&v);
        Ok(Scalar::approx(v, err, prec))
    }
    pub fn pow_u(&self, n: u32) -> Scalar {
        let mut acc = Scalar::Exact(Rational::from(1));
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }
    /// Promote to float mode at `prec`.
    pub fn to_approx(&self, prec: u32) -> Scalar {
        match self {
            Scalar::Exact(r) => {
                let v = Cx::from_rational(r, working_prec(prec));
                let e = round_err(&v);
                Scalar::approx(v, e, prec)
            }
            s => s.clone(),
        }
    }
    pub fn from_q(q: &Q, prec: u32) -> Scalar {
        if q.is_real() {
            Scalar::Exact(q.re.clone())
        } else {
            let v = q.to_cx(working_prec(prec));
            let e = round_err(&v);
            Scalar::approx(v, e, prec)
        }
    }

    /// Canonical text: `p/q` for exact values, decimal otherwise.
    pub fn value_string(&self) -> String {
        match self {
            Scalar::Exact(r) => r.to_string(),
            Scalar::Approx { value, prec, .. } => value.to_string_digits(digits_for_prec(*prec)),
        }
    }
    pub fn err_string(&self) -> String {
        format!("{:.3e}", self.err())
    }
    pub fn to_json(&self) -> serde_json::Value {
        match self {
            Scalar::Exact(r) => serde_json::json!({
                "mode": "exact",
                "value": r.to_string(),
            }),
            Scalar::Approx { prec, .. } => serde_json::json!({
                "mode": "float",
                "value": self.value_string(),
                "err": self.err_string(),
                "precision_bits": prec,
            }),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact(_) => write!(f, "{}", self.value_string()),
            Scalar::Approx { .. } => write!(f, "{} +/- {}", self.value_string(), self.err_string()),
        }
    }
}

/// Float value with an absolute error radius, used for intermediate
/// arithmetic in evaluators.
#[derive(Clone, Debug)]
pub struct Ev {
    pub v: Cx,
    pub e: f64,
}

impl Ev {
    pub fn new(v: Cx, e: f64) -> Ev {
        Ev { v, e }
    }
    pub fn zero(wp: u32) -> Ev {
        Ev { v: Cx::zero(wp), e: 0.0 }
    }
    pub fn one(wp: u32) -> Ev {
        Ev { v: Cx::one(wp), e: 0.0 }
    }
    pub fn from_rational(r: &Rational, wp: u32) -> Ev {
        let v = Cx::from_rational(r, wp);
        let e = round_err(&v);
        Ev { v, e }
    }
    pub fn from_q(q: &Q, wp: u32) -> Ev {
        let v = q.to_cx(wp);
        let e = round_err(&v);
        Ev { v, e }
    }
    pub fn wp(&self) -> u32 {
        self.v.prec()
    }
    pub fn add(&self, o: &Ev) -> Ev {
        let v = self.v.add(&o.v);
        let e = self.e + o.e + round_err(&v);
        Ev { v, e }
    }
    pub fn add_assign(&mut self, o: &Ev) {
        self.v.add_assign(&o.v);
        self.e += o.e + round_err(&self.v);
    }
    pub fn sub(&self, o: &Ev) -> Ev {
        self.add(&o.neg())
    }
    pub fn neg(&self) -> Ev {
        Ev { v: self.v.neg(), e: self.e }
    }
    pub fn mul(&self, o: &Ev) -> Ev {
        let v = self.v.mul(&o.v);
        let e = self.v.abs_f64() * o.e + o.v.abs_f64() * self.e + self.e * o.e + round_err(&v);
        Ev { v, e }
    }
    pub fn mul_i64(&self, k: i64) -> Ev {
        let v = self.v.mul_i64(k);
        Ev { e: self.e * (k.unsigned_abs() as f64) + round_err(&v), v }
    }
    pub fn mul_q(&self, q: &Q) -> Ev {
        if q.is_real() {
            let r = Float::with_val(self.wp(), &q.re);
            let v = self.v.mul_real(&r);
            return Ev { e: self.e * q.abs_f64() + round_err(&v), v };
        }
        self.mul(&Ev::from_q(q, self.wp()))
    }
    pub fn mul_f(&self, r: &Float) -> Ev {
        let v = self.v.mul_real(r);
        Ev { e: self.e * r.to_f64().abs() + round_err(&v), v }
    }
    pub fn abs_f64(&self) -> f64 {
        self.v.abs_f64()
    }
    pub fn to_scalar(&self, prec: u32) -> Scalar {
        Scalar::approx(self.v.clone(), self.e, prec)
    }
}

/// Sum of a sequence of `Ev` at working precision `wp`.
pub fn ev_sum<I: IntoIterator<Item = Ev>>(it: I, wp: u32) -> Ev {
    let mut acc = Ev::zero(wp);
    for x in it {
        acc.add_assign(&x);
    }
    acc
}

/// Arithmetic mode of an evaluation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Exact,
    Float,
}

impl Mode {
    pub fn parse(s: &str) -> Result<Mode> {
        match s.trim() {
            "exact" => Ok(Mode::Exact),
            "float" => Ok(Mode::Float),
            o => Err(MzvError::Parse(format!("unknown mode {o:?}"))),
        }
    }
    pub fn as_str(&self) -> &'static str {
        match self {
            Mode::Exact => "exact",
            Mode::Float => "float",
        }
    }
}

/// Rounding allowance for a value held at its working precision.
pub fn round_err(v: &Cx) -> f64 {
    let m = v.abs_f64();
    m * 2f64.powi(-(v.prec() as i32) + 4)
}

pub fn sign_i64(neg: bool) -> i64 {
    if neg {
        -1
    } else {
        1
    }
}

pub fn factorial(n: u32) -> Integer {
    Integer::from(Integer::factorial(n))
}

pub fn binomial(n: u32, k: u32) -> Integer {
    Integer::from(Integer::binomial_u(n, k))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_literals() {
        assert_eq!(parse_rational("1/2").unwrap(), Rational::from((1, 2)));
        assert_eq!(parse_rational("-0.25").unwrap(), Rational::from((-1, 4)));
        assert_eq!(parse_rational("3e-2").unwrap(), Rational::from((3, 100)));
        assert_eq!(parse_rational(".5").unwrap(), Rational::from((1, 2)));
        let z = parse_q("0.3-0.4i").unwrap();
        assert_eq!(z.re, Rational::from((3, 10)));
        assert_eq!(z.im, Rational::from((-2, 5)));
        assert_eq!(parse_q("-i").unwrap(), Q::new(Rational::new(), Rational::from(-1)));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
    }

    #[test]
    fn sign_strings() {
        let v = parse_q_list("+-+").unwrap();
        assert_eq!(v, vec![Q::one(), Q::int(-1), Q::one()]);
        let w = parse_q_list("1/2, -1/3").unwrap();
        assert_eq!(w[1], Q::ratio(-1, 3));
    }

    #[test]
    fn complex_arithmetic() {
        let p = 100;
        let a = Cx::new(Float::with_val(p, 1), Float::with_val(p, 2));
        let b = Cx::new(Float::with_val(p, 3), Float::with_val(p, -1));
        let c = a.mul(&b).div(&b);
        assert!((c.re_f64() - 1.0).abs() < 1e-25);
        assert!((c.im_f64() - 2.0).abs() < 1e-25);
        let l = a.ln().unwrap().exp();
        assert!((l.re_f64() - 1.0).abs() < 1e-25);
    }

    #[test]
    fn scalar_errors_propagate() {
        let a = Scalar::approx(Cx::one(160), 1e-30, 128);
        let b = Scalar::Exact(Rational::from(3));
        let c = a.mul(&b);
        assert!(c.err() >= 3e-30);
        assert!(a.sub(&a).abs_f64() == 0.0);
    }
}
