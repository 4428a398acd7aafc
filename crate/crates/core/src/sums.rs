//! Finite nested sums: multiple harmonic (star) sums with variables and a
//! shift parameter, t-harmonic sums and M-harmonic sums.
//!
//! All sums run in one pass over the summation variable with one
//! accumulator per depth level, innermost partial sums feeding outer ones.

use rug::ops::Pow;
use rug::{Float, Integer, Rational};

use crate::error::{MzvError, Result};
use crate::index::Composition;
use crate::num::{working_prec, Cx, Ev, Mode, Scalar, Q};

pub(crate) trait Acc: Clone {
    fn add_mul(&mut self, a: &Self, b: &Self);
}

impl Acc for Rational {
    fn add_mul(&mut self, a: &Self, b: &Self) {
        *self += Rational::from(a * b);
    }
}

impl Acc for Cx {
    fn add_mul(&mut self, a: &Self, b: &Self) {
        self.add_assign(&a.mul(b));
    }
}

impl Acc for f64 {
    fn add_mul(&mut self, a: &Self, b: &Self) {
        *self += a * b;
    }
}

/// Generic nested sum over `n >= n_1 > ... > n_r >= 1` (or `>=` chains when
/// `star`). `term(j, m)` is called exactly once per level `j` (0 = outermost)
/// and value `m`, in increasing `m`.
pub(crate) fn nested<T: Acc>(r: usize, n: u64, star: bool, zero: T, one: T, mut term: impl FnMut(usize, u64) -> T) -> T {
    if r == 0 {
        return one;
    }
    let mut acc = vec![zero; r + 1];
    acc[r] = one;
    for m in 1..=n {
        if star {
            for j in (0..r).rev() {
                let t = term(j, m);
                let (lo, hi) = acc.split_at_mut(j + 1);
                lo[j].add_mul(&t, &hi[0]);
            }
        } else {
            for j in 0..r {
                let t = term(j, m);
                let (lo, hi) = acc.split_at_mut(j + 1);
                lo[j].add_mul(&t, &hi[0]);
            }
        }
    }
    acc.swap_remove(0)
}

fn int_pow(base: u64, k: u32) -> Integer {
    Integer::from(base).pow(k)
}

/// Exact `zeta_n(k; x; a)` for rational `x` and integer shift `a >= 0`.
pub fn zeta_n_exact(k: &[u32], x: &[Rational], a: u64, n: u64, star: bool) -> Rational {
    let r = k.len();
    let mut pw: Vec<Rational> = x
        .iter()
        .map(|xi| {
            let mut p = Rational::from(1);
            for _ in 0..a {
                p *= xi;
            }
            p
        })
        .collect();
    nested(r, n, star, Rational::new(), Rational::from(1), |j, m| {
        pw[j] *= &x[j];
        Rational::from(&pw[j] / int_pow(m + a, k[j]))
    })
}

/// Float `zeta_n(k; x; a)` with an error radius; `a` may be any complex
/// rational that is not a negative integer `<= -1`.
pub fn zeta_n_float(k: &[u32], x: &[Cx], a: &Q, n: u64, star: bool, wp: u32) -> Result<Ev> {
    let r = k.len();
    if r == 0 {
        return Ok(Ev::one(wp));
    }
    check_shift(a)?;
    let ac = a.to_cx(wp);
    let int_a = a.as_real().filter(|q| q.is_integer() && **q >= 0).map(|q| q.numer().to_u64().unwrap_or(0));
    let mut pw: Vec<Cx> = Vec::with_capacity(r);
    for xi in x {
        pw.push(match int_a {
            Some(ai) => xi.pow_u(ai),
            None => xi.pow_c(&ac)?,
        });
    }
    let absx: Vec<f64> = x.iter().map(|v| v.abs_f64()).collect();
    let mut pwa: Vec<f64> = pw.iter().map(|v| v.abs_f64()).collect();
    let a_re = a.re.to_f64();
    let a_im = a.im.to_f64();
    let v = nested(r, n, star, Cx::zero(wp), Cx::one(wp), |j, m| {
        pw[j] = pw[j].mul(&x[j]);
        let d = Cx::from_i64(m as i64, wp).add(&ac).pow_u(k[j] as u64);
        pw[j].div(&d)
    });
    // magnitude majorant for the rounding allowance
    let mag = nested(r, n, star, 0.0f64, 1.0f64, |j, m| {
        pwa[j] *= absx[j];
        let d = ((m as f64 + a_re).powi(2) + a_im * a_im).sqrt().powi(k[j] as i32);
        pwa[j] / d
    });
    let e = mag * (n as f64) * (r as f64 + 2.0) * 2f64.powi(-(wp as i32) + 4);
    Ok(Ev::new(v, e))
}

fn check_shift(a: &Q) -> Result<()> {
    if a.is_real() && a.re.is_integer() && a.re < 0 {
        return Err(MzvError::Domain(format!("shift a = {a} hits a pole")));
    }
    Ok(())
}

/// Exact t-harmonic sum; an optional rational `x` weights the innermost
/// index by `x^(2 n_r - 1)`.
pub fn t_n_exact(k: &[u32], n: u64, star: bool, x: Option<&Rational>) -> Rational {
    let r = k.len();
    let x2 = x.map(|v| Rational::from(v * v));
    let mut pw: Option<Rational> = None;
    nested(r, n, star, Rational::new(), Rational::from(1), |j, m| {
        let mut t = Rational::from((1, int_pow(2 * m - 1, k[j])));
        if j == r - 1 {
            if let (Some(xv), Some(z)) = (x, x2.as_ref()) {
                let p = match pw.take() {
                    None => xv.clone(),
                    Some(p) => p * z,
                };
                t *= &p;
                pw = Some(p);
            }
        }
        t
    })
}

/// Float t-harmonic sum with optional complex `x` on the innermost index.
pub fn t_n_float(k: &[u32], n: u64, star: bool, x: Option<&Cx>, wp: u32) -> Ev {
    let r = k.len();
    if r == 0 {
        return Ev::one(wp);
    }
    let x2 = x.map(|v| v.mul(v));
    let mut pw: Option<Cx> = None;
    let v = nested(r, n, star, Cx::zero(wp), Cx::one(wp), |j, m| {
        let d = Float::with_val(wp, 2 * m - 1);
        let mut t = Cx::real(Float::with_val(wp, d.pow(k[j])).recip());
        if j == r - 1 {
            if let (Some(xv), Some(z)) = (x, x2.as_ref()) {
                let p = match pw.take() {
                    None => xv.clone(),
                    Some(p) => p.mul(z),
                };
                t = t.mul(&p);
                pw = Some(p);
            }
        }
        t
    });
    let xa = x.map_or(1.0, |v| v.abs_f64().max(1.0));
    let e = v.abs_f64().max(1.0) * xa.powi(2 * n as i32) * (n as f64) * (r as f64 + 2.0) * 2f64.powi(-(wp as i32) + 4);
    Ev::new(v, e)
}

/// Exact M-harmonic sum with parity projectors `1 + e_j (-1)^{n_j}`.
pub fn m_n_exact(k: &[u32], e: &[i32], n: u64, star: bool) -> Rational {
    nested(k.len(), n, star, Rational::new(), Rational::from(1), |j, m| {
        let par = if m % 2 == 0 { 1 } else { -1 };
        let c = 1 + e[j] * par;
        if c == 0 {
            Rational::new()
        } else {
            Rational::from((c, int_pow(m, k[j])))
        }
    })
}

// ---------------------------------------------------------------------------
// Front end
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SumFamily {
    Zeta,
    T,
    M,
}

#[derive(Clone, Debug)]
pub struct SumSpec {
    pub family: SumFamily,
    pub star: bool,
    pub k: Composition,
    /// Variables (family zeta) or a single trailing variable (family t).
    pub x: Option<Vec<Q>>,
    /// Signs for family M.
    pub signs: Option<Vec<Q>>,
    pub a: Option<Q>,
    pub n: u64,
}

impl SumSpec {
    pub fn zeta(k: Composition, n: u64, star: bool) -> SumSpec {
        SumSpec { family: SumFamily::Zeta, star, k, x: None, signs: None, a: None, n }
    }

    fn validate(&self) -> Result<()> {
        let r = self.k.depth();
        match self.family {
            SumFamily::Zeta => {
                if let Some(x) = &self.x {
                    if x.len() != r {
                        return Err(MzvError::LengthMismatch(format!(
                            "index depth {r} vs {} variables",
                            x.len()
                        )));
                    }
                }
                if self.signs.is_some() {
                    return Err(MzvError::Invalid("signs apply to family M only".into()));
                }
            }
            SumFamily::T => {
                if self.a.is_some() || self.signs.is_some() {
                    return Err(MzvError::Invalid("family t takes no shift or signs".into()));
                }
                if let Some(x) = &self.x {
                    if x.len() != 1 {
                        return Err(MzvError::Invalid("family t takes one trailing variable".into()));
                    }
                    if !self.star {
                        return Err(MzvError::Invalid(
                            "the x-weighted t-harmonic sum is defined for the star variant".into(),
                        ));
                    }
                }
            }
            SumFamily::M => {
                if self.a.is_some() || self.x.is_some() {
                    return Err(MzvError::Invalid("family M takes signs only".into()));
                }
                let s = self
                    .signs
                    .as_ref()
                    .ok_or_else(|| MzvError::Invalid("family M needs signs".into()))?;
                if s.len() != r {
                    return Err(MzvError::LengthMismatch(format!(
                        "index depth {r} vs {} signs",
                        s.len()
                    )));
                }
                if !s.iter().all(Q::is_sign) {
                    return Err(MzvError::Invalid("M signs must be +1 or -1".into()));
                }
            }
        }
        Ok(())
    }
}

/// Evaluate a finite nested sum in the requested mode.
pub fn harmonic_sum(spec: &SumSpec, mode: Mode, prec: u32) -> Result<Scalar> {
    spec.validate()?;
    let r = spec.k.depth();
    let k = spec.k.parts();
    let wp = working_prec(prec);
    match spec.family {
        SumFamily::Zeta => {
            let x: Vec<Q> = spec.x.clone().unwrap_or_else(|| vec![Q::one(); r]);
            let a = spec.a.clone().unwrap_or_default();
            match mode {
                Mode::Exact => {
                    let xr: Vec<Rational> = x
                        .iter()
                        .map(|q| {
                            q.as_real().cloned().ok_or_else(|| {
                                MzvError::Invalid("exact mode needs rational variables".into())
                            })
                        })
                        .collect::<Result<_>>()?;
                    let ai = a
                        .as_real()
                        .filter(|q| q.is_integer() && **q >= 0)
                        .and_then(|q| q.numer().to_u64())
                        .ok_or_else(|| {
                            MzvError::Invalid("exact mode needs an integer shift a >= 0".into())
                        })?;
                    Ok(Scalar::Exact(zeta_n_exact(k, &xr, ai, spec.n, spec.star)))
                }
                Mode::Float => {
                    if x.iter().any(|q| q.norm2() > 1) {
                        return Err(MzvError::Domain("float mode needs |x_j| <= 1".into()));
                    }
                    let xc: Vec<Cx> = x.iter().map(|q| q.to_cx(wp)).collect();
                    Ok(zeta_n_float(k, &xc, &a, spec.n, spec.star, wp)?.to_scalar(prec))
                }
            }
        }
        SumFamily::T => {
            let x = spec.x.as_ref().map(|v| v[0].clone());
            match mode {
                Mode::Exact => {
                    let xr = match &x {
                        Some(q) => Some(q.as_real().cloned().ok_or_else(|| {
                            MzvError::Invalid("exact mode needs a rational variable".into())
                        })?),
                        None => None,
                    };
                    Ok(Scalar::Exact(t_n_exact(k, spec.n, spec.star, xr.as_ref())))
                }
                Mode::Float => {
                    let xc = x.as_ref().map(|q| q.to_cx(wp));
                    Ok(t_n_float(k, spec.n, spec.star, xc.as_ref(), wp).to_scalar(prec))
                }
            }
        }
        SumFamily::M => {
            let e: Vec<i32> = spec
                .signs
                .as_ref()
                .map(|s| s.iter().map(|q| if q.is_one() { 1 } else { -1 }).collect())
                .unwrap_or_default();
            let v = m_n_exact(k, &e, spec.n, spec.star);
            Ok(match mode {
                Mode::Exact => Scalar::Exact(v),
                Mode::Float => Scalar::Exact(v).to_approx(prec),
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(p: i64, q: i64) -> Rational {
        Rational::from((p, q))
    }

    #[test]
    fn spec_examples() {
        let ones = [rat(1, 1), rat(1, 1)];
        assert_eq!(zeta_n_exact(&[2, 1], &ones, 0, 3, false), rat(5, 12));
        assert_eq!(zeta_n_exact(&[2, 1], &ones, 0, 3, true), rat(341, 216));
        assert_eq!(zeta_n_exact(&[], &[], 0, 7, false), rat(1, 1));
        assert_eq!(t_n_exact(&[2], 2, false, None), rat(10, 9));
        assert_eq!(t_n_exact(&[1], 2, true, None), rat(4, 3));
        assert_eq!(t_n_exact(&[1, 2], 0, false, None), rat(0, 1));
        assert_eq!(m_n_exact(&[1], &[-1], 2, true), rat(2, 1));
        assert_eq!(m_n_exact(&[], &[], 4, false), rat(1, 1));
        assert_eq!(
            m_n_exact(&[2, 1], &[-1, -1], 5, false),
            (4 * t_n_exact(&[2, 1], 3, false, None))
        );
    }

    #[test]
    fn weighted_t_sum() {
        // t*_2((1); x) = x + x^3/3
        let x = rat(1, 2);
        assert_eq!(t_n_exact(&[1], 2, true, Some(&x)), rat(1, 2) + rat(1, 24));
        assert_eq!(t_n_exact(&[2, 1], 3, true, Some(&rat(0, 1))), rat(0, 1));
    }

    #[test]
    fn float_matches_exact() {
        let x = [rat(1, 2), rat(-1, 3)];
        let e = zeta_n_exact(&[2, 1], &x, 1, 6, true);
        let xc: Vec<Cx> = x.iter().map(|v| Cx::from_rational(v, 160)).collect();
        let f = zeta_n_float(&[2, 1], &xc, &Q::int(1), 6, true, 160).unwrap();
        let diff = Float::with_val(160, &f.v.re - &e);
        assert!(diff.to_f64().abs() < 1e-40 && diff.to_f64().abs() <= f.e);
        assert!(zeta_n_float(&[2], &xc[..1], &Q::int(-2), 3, false, 160).is_err());
    }

    #[test]
    fn spec_front_end() {
        let spec = SumSpec {
            family: SumFamily::M,
            star: false,
            k: Composition::new(vec![2]).unwrap(),
            x: None,
            signs: Some(vec![Q::one(), Q::one()]),
            a: None,
            n: 3,
        };
        assert!(matches!(harmonic_sum(&spec, Mode::Exact, 128), Err(MzvError::LengthMismatch(_))));
        let t = SumSpec {
            family: SumFamily::T,
            star: false,
            k: Composition::new(vec![1]).unwrap(),
            x: Some(vec![Q::ratio(1, 2)]),
            signs: None,
            a: None,
            n: 3,
        };
        assert!(harmonic_sum(&t, Mode::Exact, 128).is_err());
    }
}
