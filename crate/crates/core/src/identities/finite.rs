//! Finite harmonic-sum identities, checkable in exact rational arithmetic.

use rand_chacha::ChaCha8Rng;
use rug::Rational;

use super::gen::{self, Bounds};
use super::support::*;
use super::{Ctx, Param, Params};
use crate::error::{MzvError, Result};
use crate::num::{Mode, Scalar, Q};
use crate::sums::{zeta_n_exact, zeta_n_float};
use crate::values::{param_mpl_ev, param_mpl_star_ev};

/// `zeta_n(k; x; a)` in the context's mode.
fn zn(k: &[u32], x: &[Q], a: &Q, n: u64, star: bool, ctx: &Ctx) -> Result<Scalar> {
    match ctx.mode {
        Mode::Exact => {
            let xr: Vec<Rational> = x
                .iter()
                .map(|q| q.as_real().cloned())
                .collect::<Option<_>>()
                .ok_or_else(|| MzvError::Unsupported("exact mode needs real rational labels".into()))?;
            let ai = a
                .as_real()
                .filter(|r| r.is_integer() && **r >= 0)
                .and_then(|r| r.numer().to_u64())
                .ok_or_else(|| MzvError::Unsupported("exact mode needs an integer shift a >= 0".into()))?;
            Ok(Scalar::Exact(zeta_n_exact(k, &xr, ai, n, star)))
        }
        Mode::Float => {
            let xc: Vec<_> = x.iter().map(|q| q.to_cx(ctx.wp)).collect();
            Ok(zeta_n_float(k, &xc, a, n, star, ctx.wp)?.to_scalar(ctx.prec))
        }
    }
}

fn alt_sum(k: &[u32], x: &[Q], n: u64, a: &Q, ctx: &Ctx) -> Result<Scalar> {
    let r = k.len();
    let mut acc = Scalar::zero_exact();
    for j in 0..=r {
        let left = zn(&k[..j], &x[..j], a, n, false, ctx)?;
        let right = zn(&rev(&k[j..]), &rev(&x[j..]), a, n, true, ctx)?;
        acc = acc.add(&left.mul(&right).mul_i64(sgn(j as i64)));
    }
    Ok(acc)
}

/// LHS: the shifted sum; RHS: `(-1)^r sum_j (-1)^j zeta_{n+l}(k_..j) zeta_l(k_r..j+1)` with
/// the star flag flipped on the second factor.
fn shifted(p: &Params, ctx: &Ctx, star: bool, a: &Q) -> Result<(Scalar, Scalar)> {
    let (k, x, n, l) = (p.comp("k")?, p.labels("x")?, p.uint("n")?, p.uint("l")?);
    let r = k.len();
    let lhs = zn(&k, &x, &a.add(&Q::int(l as i64)), n, star, ctx)?;
    let mut rhs = Scalar::zero_exact();
    for j in 0..=r {
        let left = zn(&k[..j], &x[..j], a, n + l, star, ctx)?;
        let right = zn(&rev(&k[j..]), &rev(&x[j..]), a, l, !star, ctx)?;
        rhs = rhs.add(&left.mul(&right).mul_i64(sgn(j as i64)));
    }
    Ok((lhs, rhs.mul_i64(sgn(r as i64))))
}

fn finish(v: (Scalar, Scalar), ctx: &Ctx) -> Result<(Scalar, Scalar)> {
    match ctx.mode {
        Mode::Exact => Ok(v),
        Mode::Float => Ok((v.0.to_approx(ctx.prec), v.1.to_approx(ctx.prec))),
    }
}

pub fn ss2016(p: &Params, ctx: &Ctx) -> Result<(Scalar, Scalar)> {
    let lhs = alt_sum(&p.comp("k")?, &p.labels("x")?, p.uint("n")?, &Q::zero(), ctx)?;
    finish((lhs, Scalar::zero_exact()), ctx)
}

pub fn pmhns(p: &Params, ctx: &Ctx) -> Result<(Scalar, Scalar)> {
    let lhs = alt_sum(&p.comp("k")?, &p.labels("x")?, p.uint("n")?, &p.num("a")?, ctx)?;
    finish((lhs, Scalar::zero_exact()), ctx)
}

pub fn pmpls1(p: &Params, ctx: &Ctx) -> Result<(Scalar, Scalar)> {
    finish(shifted(p, ctx, false, &Q::zero())?, ctx)
}

pub fn pmpls2(p: &Params, ctx: &Ctx) -> Result<(Scalar, Scalar)> {
    finish(shifted(p, ctx, true, &Q::zero())?, ctx)
}

pub fn npmpls1(p: &Params, ctx: &Ctx) -> Result<(Scalar, Scalar)> {
    finish(shifted(p, ctx, false, &p.num("a")?)?, ctx)
}

pub fn npmpls2(p: &Params, ctx: &Ctx) -> Result<(Scalar, Scalar)> {
    finish(shifted(p, ctx, true, &p.num("a")?)?, ctx)
}

/// Infinite version: `sum_j (-1)^j Li_{k_1..j}(x; a) Li*_{k_r..j+1}(x; a) = 0`.
pub fn pmpls3(p: &Params, ctx: &Ctx) -> Result<(Scalar, Scalar)> {
    let (k, x, a) = (p.comp("k")?, p.labels("x")?, p.num("a")?);
    let wp = ctx.wp;
    let mut acc = crate::num::Ev::zero(wp);
    for j in 0..=k.len() {
        let left = if j == 0 { crate::num::Ev::one(wp) } else { param_mpl_ev(&k[..j], &x[..j], &a, wp)? };
        let right = if j == k.len() {
            crate::num::Ev::one(wp)
        } else {
            param_mpl_star_ev(&rev(&k[j..]), &rev(&x[j..]), &a, wp)?
        };
        acc.add_assign(&left.mul(&right).mul_i64(sgn(j as i64)));
    }
    sides(acc, crate::num::Ev::zero(wp), ctx)
}

// checks ---------------------------------------------------------------

fn check_kx(p: &Params) -> Result<()> {
    let (k, x) = (p.comp("k")?, p.labels("x")?);
    positive(&k, "k")?;
    need(k.len() == x.len(), "k and x must have the same length")
}

fn check_shift(a: &Q) -> Result<()> {
    need(
        !(a.is_real() && a.re.is_integer() && a.re < 0),
        "a must not be a negative integer",
    )
}

pub fn check_ss2016(p: &Params) -> Result<()> {
    check_kx(p)?;
    need(p.uint("n")? >= 1, "n must be >= 1")
}

pub fn check_pmhns(p: &Params) -> Result<()> {
    check_ss2016(p)?;
    check_shift(&p.num("a")?)
}

pub fn check_pmpls(p: &Params) -> Result<()> {
    check_ss2016(p)?;
    p.uint("l").map(|_| ())
}

pub fn check_npmpls(p: &Params) -> Result<()> {
    check_pmpls(p)?;
    check_shift(&p.num("a")?)
}

pub fn check_pmpls3(p: &Params) -> Result<()> {
    check_kx(p)?;
    let (k, x, a) = (p.comp("k")?, p.labels("x")?, p.num("a")?);
    check_shift(&a)?;
    let r = k.len();
    need(!(k[0] == 1 && x[0].is_one()), "(k_1, x_1) = (1, 1) diverges")?;
    need(!(k[r - 1] == 1 && x[r - 1].is_one()), "(k_r, x_r) = (1, 1) diverges")?;
    need(
        x.iter().all(|v| !v.cmp_abs_one().is_gt()),
        "labels must satisfy |x_j| <= 1",
    )
}

// generators -----------------------------------------------------------

const EXACT_X: [(i64, i64); 3] = [(1, 1), (1, 2), (-1, 3)];

fn gen_kx(rng: &mut ChaCha8Rng, b: &Bounds) -> (Vec<u32>, Vec<Q>) {
    let k = gen::comp(rng, 1, b.depth, b.weight, 1);
    let x = k.iter().map(|_| {
        let (p, d) = gen::pick(rng, &EXACT_X);
        Q::ratio(p, d)
    }).collect();
    (k, x)
}

pub fn gen_ss2016(rng: &mut ChaCha8Rng, b: &Bounds, _case: u64) -> Params {
    let (k, x) = gen_kx(rng, b);
    Params::new()
        .with("k", Param::Comp(k))
        .with("x", Param::Labels(x))
        .with("n", Param::Int(gen::int(rng, 1, b.n as i64)))
}

pub fn gen_pmhns(rng: &mut ChaCha8Rng, b: &Bounds, case: u64) -> Params {
    let a = gen::int(rng, 0, 2);
    gen_ss2016(rng, b, case).with("a", Param::Int(a))
}

pub fn gen_pmpls(rng: &mut ChaCha8Rng, b: &Bounds, case: u64) -> Params {
    let l = gen::int(rng, 0, b.n as i64);
    gen_ss2016(rng, b, case).with("l", Param::Int(l))
}

pub fn gen_npmpls(rng: &mut ChaCha8Rng, b: &Bounds, case: u64) -> Params {
    let a = gen::int(rng, 0, 2);
    gen_pmpls(rng, b, case).with("a", Param::Int(a))
}

pub fn gen_pmpls3(rng: &mut ChaCha8Rng, b: &Bounds, _case: u64) -> Params {
    let k = gen::comp(rng, 1, b.depth.min(3), b.weight.min(6), 1);
    let x: Vec<Q> = k.iter().map(|_| {
        let v = gen::interior_x(rng);
        if gen::sign(rng) < 0 { v.neg() } else { v }
    }).collect();
    let a = gen::pick(rng, &[Q::zero(), Q::one(), Q::int(2), Q::ratio(1, 2), Q::ratio(3, 2)]);
    Params::new()
        .with("k", Param::Comp(k))
        .with("x", Param::Labels(x))
        .with("a", Param::Num(a))
}

// exhaustive grid ------------------------------------------------------

fn grid_comps(max_weight: u32, max_depth: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for d in 1..=max_depth {
        for w in d as u32..=max_weight {
            out.extend(tuples(w, d, 1));
        }
    }
    out
}

fn grid_labels(d: usize) -> Vec<Vec<Q>> {
    let mut out = vec![vec![]];
    for _ in 0..d {
        out = out
            .into_iter()
            .flat_map(|v| {
                EXACT_X.iter().map(move |&(p, q)| {
                    let mut w = v.clone();
                    w.push(Q::ratio(p, q));
                    w
                })
            })
            .collect();
    }
    out
}

pub fn exact_grid(id: &str, max_weight: u32, max_depth: usize, max_n: u64) -> Result<Vec<Params>> {
    let (has_l, has_a) = match id {
        "SS2016-LEMMA" => (false, false),
        "PMHNS" => (false, true),
        "PMPLS1" | "PMPLS2" => (true, false),
        "NPMPLS1" | "NPMPLS2" => (true, true),
        _ => return Err(MzvError::Unsupported(format!("{id} has no exact grid"))),
    };
    let ls: Vec<Option<i64>> = if has_l { (0..=max_n as i64).map(Some).collect() } else { vec![None] };
    let as_: Vec<Option<i64>> = if has_a { (0..=2).map(Some).collect() } else { vec![None] };
    let mut out = Vec::new();
    for k in grid_comps(max_weight, max_depth) {
        for x in grid_labels(k.len()) {
            for n in 1..=max_n as i64 {
                for l in &ls {
                    for a in &as_ {
                        let mut p = Params::new()
                            .with("k", Param::Comp(k.clone()))
                            .with("x", Param::Labels(x.clone()))
                            .with("n", Param::Int(n));
                        if let Some(l) = l {
                            p.set("l", Param::Int(*l));
                        }
                        if let Some(a) = a {
                            p.set("a", Param::Int(*a));
                        }
                        out.push(p);
                    }
                }
            }
        }
    }
    Ok(out)
}
