//! Small evaluation helpers shared by the identity residuals.

use rug::Rational;

use super::Ctx;
use crate::error::{MzvError, Result};
use crate::num::{round_err, Ev, Scalar, Q};
use crate::values::mpl_ev;
use crate::words::{chen, IntegralWord, OneForm};

pub fn ones(n: usize) -> Vec<Q> {
    vec![Q::one(); n]
}

pub fn ones_u(n: usize) -> Vec<u32> {
    vec![1; n]
}

pub fn rev<T: Clone>(v: &[T]) -> Vec<T> {
    v.iter().rev().cloned().collect()
}

pub fn prod(v: &[i32]) -> i32 {
    v.iter().product()
}

pub fn sgn(e: i64) -> i64 {
    if e % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `Li_k(x)`; the empty index gives 1.
pub fn li(k: &[u32], x: &[Q], wp: u32) -> Result<Ev> {
    if k.is_empty() {
        return Ok(Ev::one(wp));
    }
    mpl_ev(k, x, wp)
}

/// `Li_k(x, 1, ..., 1)`.
pub fn li1(k: &[u32], x: &Q, wp: u32) -> Result<Ev> {
    if k.is_empty() {
        return Ok(Ev::one(wp));
    }
    let mut xs = ones(k.len());
    xs[0] = x.clone();
    mpl_ev(k, &xs, wp)
}

pub fn word(forms: Vec<OneForm>, lower: Q, upper: Q, wp: u32) -> Result<Ev> {
    chen::eval_word(&IntegralWord::new(forms, lower, upper)?, wp)
}

pub fn ln(q: &Q, wp: u32) -> Result<Ev> {
    let v = q.to_cx(wp).ln()?;
    let e = 4.0 * round_err(&v);
    Ok(Ev::new(v, e))
}

pub fn pow(e: &Ev, n: u32) -> Ev {
    let mut acc = Ev::one(e.wp());
    for _ in 0..n {
        acc = acc.mul(e);
    }
    acc
}

pub fn inv_factorial(n: u32) -> Q {
    Q::real(Rational::from((1, crate::num::factorial(n))))
}

pub fn binom(n: u32, k: u32) -> i64 {
    crate::num::binomial(n, k).to_i64().expect("small binomial")
}

/// Tuples of `parts` integers `>= min` summing to `total`.
pub fn tuples(total: u32, parts: usize, min: u32) -> Vec<Vec<u32>> {
    if parts == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    let mut a = min;
    while a <= total {
        for mut rest in tuples(total - a, parts - 1, min) {
            rest.insert(0, a);
            out.push(rest);
        }
        a += 1;
    }
    out
}

pub fn sides(lhs: Ev, rhs: Ev, ctx: &Ctx) -> Result<(Scalar, Scalar)> {
    Ok((lhs.to_scalar(ctx.prec), rhs.to_scalar(ctx.prec)))
}

pub fn need(cond: bool, msg: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(MzvError::Invalid(msg.to_string()))
    }
}

pub fn positive(k: &[u32], what: &str) -> Result<()> {
    need(!k.is_empty() && k.iter().all(|&p| p >= 1), &format!("{what} must be a nonempty list of positive integers"))
}

/// Real rational strictly inside (0, 1).
pub fn unit_open(x: &Q, what: &str) -> Result<()> {
    let ok = x.as_real().is_some_and(|r| *r > 0 && *r < 1);
    need(ok, &format!("{what} must be real in (0, 1)"))
}

pub fn unit_half_open(x: &Q, what: &str) -> Result<()> {
    let ok = x.as_real().is_some_and(|r| *r > 0 && *r <= 1);
    need(ok, &format!("{what} must be real in (0, 1]"))
}

pub fn signs_ok(e: &[i32], what: &str) -> Result<()> {
    need(e.iter().all(|&s| s == 1 || s == -1), &format!("{what} entries must be +-1"))
}
