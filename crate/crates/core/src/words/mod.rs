//! Iterated-integral words.
//!
//! A word is stored with its first form nearest the lower limit: for
//! `lower = 0`, `[K(1), O]` is `int_{0<t1<t2<1} dt1/(1-t1) dt2/t2 = zeta(2)`.

pub mod chen;
pub mod quad;

use std::fmt;

use rug::Rational;

use crate::error::{MzvError, Result};
use crate::index::Composition;
use crate::num::{parse_q, working_prec, Ev, Scalar, Q};

/// A 1-form of the alphabets used here.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum OneForm {
    /// dt/t
    Omega0,
    /// s dt/(1 - s t)
    Kernel(Q),
    /// t^(n-1) dt
    Pow(u32),
    /// 2 dt/(1 - t^2)
    Wminus,
    /// 2t dt/(1 - t^2)
    Wplus,
    /// dt/(a - t)
    CauchyShift(Q),
    /// c times a form
    Scaled(Q, Box<OneForm>),
}

/// `f(t) = sum poly + sum c/(p - t)` with exact coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialFractions {
    /// (degree, coefficient)
    pub poly: Vec<(u32, Q)>,
    /// (c, p)
    pub poles: Vec<(Q, Q)>,
}

impl OneForm {
    pub fn k1() -> OneForm {
        OneForm::Kernel(Q::one())
    }
    pub fn scaled(c: Q, f: OneForm) -> OneForm {
        if c.is_one() {
            f
        } else {
            OneForm::Scaled(c, Box::new(f))
        }
    }
    /// `w_{-1}` for `e = -1`, `w_1` otherwise.
    pub fn omega(e: i32) -> OneForm {
        if e == -1 {
            OneForm::Wminus
        } else {
            OneForm::Wplus
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            OneForm::Kernel(s) if s.is_zero() => Err(MzvError::Invalid("Kernel(0)".into())),
            OneForm::Pow(0) => Err(MzvError::Invalid("Pow(0)".into())),
            OneForm::Scaled(c, f) => {
                if c.is_zero() {
                    return Err(MzvError::Invalid("zero scale".into()));
                }
                f.validate()
            }
            _ => Ok(()),
        }
    }

    pub fn partial_fractions(&self) -> PartialFractions {
        let pf = |poly, poles| PartialFractions { poly, poles };
        match self {
            OneForm::Omega0 => pf(vec![], vec![(Q::int(-1), Q::zero())]),
            OneForm::Kernel(s) => pf(vec![], vec![(Q::one(), s.recip().expect("nonzero kernel"))]),
            OneForm::Pow(n) => pf(vec![(n - 1, Q::one())], vec![]),
            OneForm::Wminus => pf(vec![], vec![(Q::one(), Q::one()), (Q::int(-1), Q::int(-1))]),
            OneForm::Wplus => pf(vec![], vec![(Q::one(), Q::one()), (Q::one(), Q::int(-1))]),
            OneForm::CauchyShift(a) => pf(vec![], vec![(Q::one(), a.clone())]),
            OneForm::Scaled(c, f) => {
                let b = f.partial_fractions();
                pf(
                    b.poly.into_iter().map(|(d, a)| (d, a.mul(c))).collect(),
                    b.poles.into_iter().map(|(a, p)| (a.mul(c), p)).collect(),
                )
            }
        }
    }

    /// Poles as exact points.
    pub fn poles(&self) -> Vec<Q> {
        self.partial_fractions().poles.into_iter().map(|(_, p)| p).collect()
    }

    pub fn is_omega0(&self) -> bool {
        matches!(self, OneForm::Omega0)
    }

    /// True when the form has a non-integrable pole at `t`.
    pub fn singular_at(&self, t: &Q) -> bool {
        self.partial_fractions().poles.iter().any(|(_, p)| p == t)
    }

    pub fn parse(s: &str) -> Result<OneForm> {
        let t = s.trim();
        if let Some((c, rest)) = t.split_once('*') {
            return Ok(OneForm::Scaled(parse_q(c)?, Box::new(OneForm::parse(rest)?)));
        }
        let arg = |name: &str| -> Option<&str> {
            t.strip_prefix(name)
                .and_then(|r| r.strip_prefix('('))
                .and_then(|r| r.strip_suffix(')'))
        };
        let f = match t {
            "O" => OneForm::Omega0,
            "Wm" => OneForm::Wminus,
            "Wp" => OneForm::Wplus,
            _ => {
                if let Some(a) = arg("K") {
                    OneForm::Kernel(parse_q(a)?)
                } else if let Some(a) = arg("P") {
                    OneForm::Pow(
                        a.trim()
                            .parse()
                            .map_err(|_| MzvError::Parse(format!("bad power in {t:?}")))?,
                    )
                } else if let Some(a) = arg("C") {
                    OneForm::CauchyShift(parse_q(a)?)
                } else {
                    return Err(MzvError::Parse(format!("unknown 1-form {t:?}")));
                }
            }
        };
        f.validate()?;
        Ok(f)
    }
}

impl fmt::Display for OneForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OneForm::Omega0 => write!(f, "O"),
            OneForm::Kernel(s) => write!(f, "K({s})"),
            OneForm::Pow(n) => write!(f, "P({n})"),
            OneForm::Wminus => write!(f, "Wm"),
            OneForm::Wplus => write!(f, "Wp"),
            OneForm::CauchyShift(a) => write!(f, "C({a})"),
            OneForm::Scaled(c, g) => write!(f, "{c}*{g}"),
        }
    }
}

/// Ordered 1-forms over a real interval, first form nearest `lower`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegralWord {
    pub forms: Vec<OneForm>,
    pub lower: Q,
    pub upper: Q,
}

impl IntegralWord {
    pub fn new(forms: Vec<OneForm>, lower: Q, upper: Q) -> Result<IntegralWord> {
        if !lower.is_real() || !upper.is_real() {
            return Err(MzvError::Unsupported("words live on real segments".into()));
        }
        for f in &forms {
            f.validate()?;
        }
        Ok(IntegralWord { forms, lower, upper })
    }
    pub fn unit(forms: Vec<OneForm>) -> IntegralWord {
        IntegralWord { forms, lower: Q::zero(), upper: Q::one() }
    }
    pub fn len(&self) -> usize {
        self.forms.len()
    }
    pub fn is_empty(&self) -> bool {
        self.forms.is_empty()
    }

    /// Endpoint convergence: the first form is regular at `lower` and the
    /// last form is regular at `upper`.
    pub fn check_admissible(&self) -> Result<()> {
        if let Some(f) = self.forms.first() {
            if f.singular_at(&self.lower) {
                return Err(MzvError::Inadmissible(format!(
                    "{f} is singular at the lower limit {}",
                    self.lower
                )));
            }
        }
        if let Some(f) = self.forms.last() {
            if f.singular_at(&self.upper) {
                return Err(MzvError::Inadmissible(format!(
                    "{f} is singular at the upper limit {}",
                    self.upper
                )));
            }
        }
        Ok(())
    }

    pub fn parse(s: &str) -> Result<IntegralWord> {
        let (body, iv) = match s.split_once('@') {
            Some((b, i)) => (b, Some(i.trim())),
            None => (s, None),
        };
        let forms = body.split_whitespace().map(OneForm::parse).collect::<Result<Vec<_>>>()?;
        let (lo, hi) = match iv {
            None => (Q::zero(), Q::one()),
            Some(i) => {
                let inner = i
                    .strip_prefix('[')
                    .and_then(|r| r.strip_suffix(']'))
                    .ok_or_else(|| MzvError::Parse(format!("bad interval {i:?}")))?;
                let (a, b) = inner
                    .split_once(',')
                    .ok_or_else(|| MzvError::Parse(format!("bad interval {i:?}")))?;
                (parse_q(a)?, parse_q(b)?)
            }
        };
        IntegralWord::new(forms, lo, hi)
    }

    /// Chen-series value with error bound at `prec` bits.
    pub fn eval(&self, prec: u32) -> Result<Scalar> {
        Ok(chen::eval_word(self, working_prec(prec))?.to_scalar(prec))
    }
}

impl fmt::Display for IntegralWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.forms.iter().map(|x| x.to_string()).collect();
        write!(f, "{} @[{},{}]", s.join(" "), self.lower, self.upper)
    }
}

// ---------------------------------------------------------------------------
// Value -> word dictionary
// ---------------------------------------------------------------------------

/// Word of `Li_k(x)` over `[0,1]`: `[K(y_r), O^{k_r-1}, ..., K(y_1), O^{k_1-1}]`
/// with `y_j = x_1 ... x_j`.
pub fn mpl_word(k: &[u32], x: &[Q]) -> IntegralWord {
    let mut y = Vec::with_capacity(x.len());
    let mut acc = Q::one();
    for xi in x {
        acc = acc.mul(xi);
        y.push(acc.clone());
    }
    let mut forms = Vec::new();
    for j in (0..k.len()).rev() {
        forms.push(OneForm::Kernel(y[j].clone()));
        forms.extend(std::iter::repeat_n(OneForm::Omega0, k[j] as usize - 1));
    }
    IntegralWord::unit(forms)
}

/// Word of `ti_k(x)` over `[0,x]`: `dt/(1-t^2)` opens the innermost block,
/// `t dt/(1-t^2)` the others.
pub fn t_word(k: &[u32], x: &Q) -> IntegralWord {
    let half = Q::ratio(1, 2);
    let r = k.len();
    let mut forms = Vec::new();
    for j in (0..r).rev() {
        let w = if j == r - 1 { OneForm::Wminus } else { OneForm::Wplus };
        forms.push(OneForm::scaled(half.clone(), w));
        forms.extend(std::iter::repeat_n(OneForm::Omega0, k[j] as usize - 1));
    }
    IntegralWord { forms, lower: Q::zero(), upper: x.clone() }
}

/// Word of `Mi_k(e; x)` over `[0,x]`: `[w_{e_r}, O^{k_r-1}, w_{e_r e_{r-1}}, ..., w_{e_2 e_1}, O^{k_1-1}]`.
pub fn m_word(k: &[u32], e: &[i32], x: &Q) -> IntegralWord {
    let r = k.len();
    let mut forms = Vec::new();
    for j in (0..r).rev() {
        let s = if j == r - 1 { e[r - 1] } else { e[j + 1] * e[j] };
        forms.push(OneForm::omega(s));
        forms.extend(std::iter::repeat_n(OneForm::Omega0, k[j] as usize - 1));
    }
    IntegralWord { forms, lower: Q::zero(), upper: x.clone() }
}

/// Families with a single-word representation.
#[derive(Clone, Debug)]
pub enum WordSpec {
    Mpl { k: Composition, x: Vec<Q> },
    TPoly { k: Composition, x: Q },
    MPoly { k: Composition, signs: Vec<i32>, x: Q },
}

pub fn word_from_value(spec: &WordSpec) -> Result<IntegralWord> {
    match spec {
        WordSpec::Mpl { k, x } => {
            if x.len() != k.depth() {
                return Err(MzvError::LengthMismatch("mpl labels".into()));
            }
            if k.is_empty() {
                return Ok(IntegralWord::unit(vec![]));
            }
            if !crate::index::admissible(k, Some(x))? {
                return Err(MzvError::Inadmissible(format!("({k}) with x_1 = 1")));
            }
            Ok(mpl_word(k.parts(), x))
        }
        WordSpec::TPoly { k, x } => {
            if !k.is_empty() && k.parts()[0] == 1 && x.is_one() {
                return Err(MzvError::Inadmissible("ti with k_1 = 1 at x = 1".into()));
            }
            Ok(t_word(k.parts(), x))
        }
        WordSpec::MPoly { k, signs, x } => {
            if signs.len() != k.depth() {
                return Err(MzvError::LengthMismatch("M signs".into()));
            }
            if !k.is_empty() && k.parts()[0] == 1 && x.is_one() {
                return Err(MzvError::Inadmissible("Mi with k_1 = 1 at x = 1".into()));
            }
            Ok(m_word(k.parts(), signs, x))
        }
    }
}

// ---------------------------------------------------------------------------
// Word -> series
// ---------------------------------------------------------------------------

#[derive(Clone, Debug)]
enum Letter {
    O,
    K(Q),
}

const MAX_EXPANSION: usize = 4096;

/// Evaluate a word by reading it back as a combination of multiple
/// polylogarithms. Supported: words over `[0,U]` whose forms have only
/// poles (expanded multilinearly into kernels), plus the single-form word
/// `[Pow(n)]`.
pub fn eval_word_series(w: &IntegralWord, prec: u32) -> Result<Scalar> {
    if !w.lower.is_zero() {
        return Err(MzvError::Unsupported("series reading needs lower limit 0".into()));
    }
    if w.forms.is_empty() {
        return Ok(Scalar::Exact(Rational::from(1)));
    }
    let u = &w.upper;
    if w.forms.len() == 1 {
        let pf = w.forms[0].partial_fractions();
        if pf.poles.is_empty() {
            // sum of c t^d: U^(d+1)/(d+1)
            let mut acc = Q::zero();
            for (d, c) in &pf.poly {
                acc = acc.add(&c.mul(&u.pow(d + 1)).mul(&Q::ratio(1, *d as i64 + 1)));
            }
            return Ok(Scalar::from_q(&acc, prec));
        }
    }
    let mut slots: Vec<Vec<(Q, Letter)>> = Vec::with_capacity(w.forms.len());
    let mut count = 1usize;
    for f in &w.forms {
        let pf = f.partial_fractions();
        if !pf.poly.is_empty() {
            return Err(MzvError::Unsupported(format!(
                "form {f} has no series reading inside a longer word"
            )));
        }
        let mut s = Vec::new();
        let mut o_coeff = Q::zero();
        for (c, p) in pf.poles {
            if p.is_zero() {
                // c/(0 - t) = -c dt/t
                o_coeff = o_coeff.sub(&c);
            } else {
                // c/(p - t) = c K(1/p)
                s.push((c, Letter::K(p.recip()?)));
            }
        }
        if !o_coeff.is_zero() {
            s.push((o_coeff, Letter::O));
        }
        count = count.saturating_mul(s.len().max(1));
        slots.push(s);
    }
    if count > MAX_EXPANSION {
        return Err(MzvError::SizeGuard(format!("word expands into {count} series terms")));
    }
    let wp = working_prec(prec);
    let mut total = Ev::zero(wp);
    let mut idx = vec![0usize; slots.len()];
    if slots.iter().any(|s| s.is_empty()) {
        return Ok(Scalar::Exact(Rational::new()));
    }
    loop {
        let mut coeff = Q::one();
        let mut letters = Vec::with_capacity(slots.len());
        for (s, &i) in slots.iter().zip(&idx) {
            coeff = coeff.mul(&s[i].0);
            letters.push(&s[i].1);
        }
        if matches!(letters[0], Letter::O) {
            return Err(MzvError::Unsupported(
                "dt/t nearest the lower limit 0 (divergent reading)".into(),
            ));
        }
        // blocks nearest 0 first: (y_r, k_r), (y_{r-1}, k_{r-1}), ...
        let mut blocks: Vec<(Q, u32)> = Vec::new();
        for l in &letters {
            match l {
                Letter::K(s) => blocks.push((s.mul(u), 1)),
                Letter::O => blocks.last_mut().expect("nonempty").1 += 1,
            }
        }
        blocks.reverse();
        let k: Vec<u32> = blocks.iter().map(|b| b.1).collect();
        let mut x = Vec::with_capacity(blocks.len());
        for (j, b) in blocks.iter().enumerate() {
            x.push(if j == 0 { b.0.clone() } else { b.0.div(&blocks[j - 1].0)? });
        }
        let v = crate::values::mpl_ev(&k, &x, wp)?;
        total.add_assign(&v.mul_q(&coeff));
        // next multi-index
        let mut pos = 0;
        loop {
            if pos == idx.len() {
                return Ok(total.to_scalar(prec));
            }
            idx[pos] += 1;
            if idx[pos] < slots[pos].len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

/// Chen path composition at an interior point `c`:
/// `sum_i I(w[..i]; lower, c) * I(w[i..]; c, upper)`.
pub fn compose_paths(w: &IntegralWord, c: &Q, prec: u32) -> Result<Scalar> {
    let (lo, hi) = (&w.lower.re, &w.upper.re);
    let inside = if lo < hi { lo < &c.re && &c.re < hi } else { hi < &c.re && &c.re < lo };
    if !c.is_real() || !inside {
        return Err(MzvError::Invalid(format!("split point {c} not inside the interval")));
    }
    for f in &w.forms {
        if f.singular_at(c) {
            return Err(MzvError::Domain(format!("split point {c} is a singularity of {f}")));
        }
    }
    let wp = working_prec(prec);
    let q = w.forms.len();
    let mut total = Ev::zero(wp);
    for i in 0..=q {
        let left = IntegralWord { forms: w.forms[..i].to_vec(), lower: w.lower.clone(), upper: c.clone() };
        let right = IntegralWord { forms: w.forms[i..].to_vec(), lower: c.clone(), upper: w.upper.clone() };
        let a = chen::eval_word(&left, wp)?;
        let b = chen::eval_word(&right, wp)?;
        total.add_assign(&a.mul(&b));
    }
    Ok(total.to_scalar(prec))
}

/// Nested-quadrature value (independent `f64` oracle).
pub fn eval_word_quadrature(w: &IntegralWord, target_err: f64) -> Result<Scalar> {
    quad::eval_word(w, target_err)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_roundtrip() {
        let w = IntegralWord::parse("K(1) O 1/2*Wm P(3) C(3/2) @[0,1/2]").unwrap();
        assert_eq!(w.to_string(), "K(1) O 1/2*Wm P(3) C(3/2) @[0,1/2]");
        assert!(IntegralWord::parse("K(0)").is_err());
        assert!(IntegralWord::parse("X").is_err());
    }

    #[test]
    fn dictionary_shapes() {
        let w = mpl_word(&[2], &[Q::one()]);
        assert_eq!(w.forms, vec![OneForm::k1(), OneForm::Omega0]);
        let m = m_word(&[2], &[-1], &Q::one());
        assert_eq!(m.forms, vec![OneForm::Wminus, OneForm::Omega0]);
        let t = t_word(&[2], &Q::ratio(1, 2));
        assert_eq!(t.forms[1], OneForm::Omega0);
        assert_eq!(t.upper, Q::ratio(1, 2));
    }

    #[test]
    fn admissibility_of_words() {
        assert!(IntegralWord::unit(vec![OneForm::Omega0, OneForm::k1()]).check_admissible().is_err());
        assert!(mpl_word(&[2, 1], &[Q::one(), Q::one()]).check_admissible().is_ok());
    }
}
