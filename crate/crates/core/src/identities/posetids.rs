//! Identities whose integral side is a labeled poset.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rug::Rational;

use super::gen::{self, Bounds};
use super::support::*;
use super::{Ctx, Param, Params};
use crate::error::{MzvError, Result};
use crate::index::{p_signs, r_signs};
use crate::num::{Ev, Scalar, Q};
use crate::posets::{build_diagram, Alphabet, DiagramKind, LabeledPoset};
use crate::sums::zeta_n_float;
use crate::values::{conv_lab_ev, conv_m_ev, mi_ev};
use crate::words::OneForm;

type Out = Result<(Scalar, Scalar)>;

fn diagram(kind: DiagramKind, alphabet: Alphabet, wp: u32) -> Result<Ev> {
    let d = build_diagram(&kind, alphabet)?;
    if let crate::posets::Admissibility::Inadmissible { reason, .. } = d.poset.admissibility() {
        return Err(MzvError::Inadmissible(reason));
    }
    d.poset.eval_ev(wp)
}

fn zstar(k: &[u32], x: &[Q], n: u64, wp: u32) -> Result<Ev> {
    let xc: Vec<_> = x.iter().map(|q| q.to_cx(wp)).collect();
    zeta_n_float(k, &xc, &Q::zero(), n, true, wp)
}

fn sq(v: &[i32]) -> Vec<Q> {
    v.iter().map(|&s| Q::int(s as i64)).collect()
}

// label maps on kernel labels
fn u(e: &[Q]) -> Result<Vec<Q>> {
    let mut v: Vec<Q> = (0..e.len() - 1).map(|i| e[i].div(&e[i + 1])).collect::<Result<_>>()?;
    v.push(e[e.len() - 1].clone());
    Ok(v)
}
fn v(e: &[Q]) -> Result<Vec<Q>> {
    (0..e.len() - 1).map(|i| e[i].div(&e[i + 1])).collect()
}
fn w(e: &[Q]) -> Result<Vec<Q>> {
    let mut out = vec![e[0].clone()];
    for i in 1..e.len() {
        out.push(e[i].div(&e[i - 1])?);
    }
    Ok(out)
}
fn y(e: &[Q]) -> Result<Vec<Q>> {
    (1..e.len()).map(|i| e[i].div(&e[i - 1])).collect()
}

/// Kernel squiggle integral; the empty squiggle is 1.
fn c_sq(l: &[u32], eps: &[Q], wp: u32) -> Result<Ev> {
    if l.is_empty() {
        return Ok(Ev::one(wp));
    }
    diagram(DiagramKind::Squiggle { l: l.to_vec(), eps: eps.to_vec() }, Alphabet::Kernel, wp)
}

pub fn f2_mpls(p: &Params, ctx: &Ctx) -> Out {
    let (n, l, eps) = (p.uint("n")?, p.comp("l")?, p.labels("eps")?);
    let wp = ctx.wp;
    let s = l.len();
    let lhs = diagram(DiagramKind::NLeg { n: n as u32, l: l.clone(), eps: eps.clone() }, Alphabet::Kernel, wp)?;
    let inv = eps[0].pow(n as u32).recip()?;
    let mut rhs = zstar(&l, &u(&eps)?, n, wp)?.mul_q(&inv);
    let c0 = Q::one().sub(&inv);
    if !c0.is_zero() {
        rhs.add_assign(&c_sq(&l, &eps, wp)?.mul_q(&c0));
    }
    for j in 2..=s {
        let a = zstar(&l[..j - 1], &u(&eps[..j - 1])?, n, wp)?;
        let b = zstar(&l[..j - 1], &v(&eps[..j])?, n, wp)?;
        let t = a.sub(&b).mul_q(&inv).mul(&c_sq(&l[j - 1..], &eps[j - 1..], wp)?);
        rhs.add_assign(&t);
    }
    sides(lhs, rhs, ctx)
}

pub fn isa(p: &Params, ctx: &Ctx) -> Out {
    let (k, eta, l, eps2) = (p.comp("k")?, p.labels("eta")?, p.comp("l")?, p.labels("eps")?);
    let wp = ctx.wp;
    let s = l.len();
    let lhs = diagram(
        DiagramKind::ConvShape { k: k.clone(), eta: eta.clone(), l: l.clone(), eps: eps2.clone() },
        Alphabet::Kernel,
        wp,
    )?;
    let mut e = vec![eta[0].clone()];
    e.extend(eps2.iter().cloned());
    let mut x = vec![Q::one()];
    x.extend(y(&eta)?);
    let rhs = if s == 1 {
        conv_lab_ev(&k, &x, &l, &[eta[0].clone()], wp)?
    } else {
        let mut idx = vec![k[0] + l[0]];
        idx.extend(&k[1..]);
        let mut yy = vec![eps2[0].clone()];
        yy.extend(eta.iter().cloned());
        let head = li(&idx, &w(&eta)?, wp)?.sub(&li(&idx, &y(&yy)?, wp)?);
        let mut tot = head.mul(&c_sq(&l[1..], &eps2, wp)?);
        for j in 2..s {
            let a = conv_lab_ev(&k, &x, &l[..j], &u(&e[..j])?, wp)?;
            let b = conv_lab_ev(&k, &x, &l[..j], &v(&e[..=j])?, wp)?;
            tot.add_assign(&a.sub(&b).mul(&c_sq(&l[j..], &eps2[j - 1..], wp)?));
        }
        tot.add_assign(&conv_lab_ev(&k, &x, &l, &u(&e)?, wp)?);
        tot
    };
    sides(lhs, rhs, ctx)
}

pub fn amzv_example(p: &Params, ctx: &Ctx) -> Out {
    let eta = p.signs("eta")?;
    let wp = ctx.wp;
    let (h1, h2) = (Q::int(eta[0] as i64), Q::int(eta[1] as i64));
    let h12 = h1.mul(&h2);
    let one = Q::one();
    let li_ = |k: &[u32], x: &[&Q]| li(k, &x.iter().map(|q| (*q).clone()).collect::<Vec<_>>(), wp);
    let mut lhs = Ev::zero(wp);
    for (c, k, x) in [
        (2, vec![3, 1, 1], vec![&one, &h1, &h12]),
        (2, vec![3, 1, 1], vec![&h1, &h1, &h2]),
        (2, vec![3, 1, 1], vec![&h1, &h12, &h2]),
        (1, vec![2, 2, 1], vec![&h1, &h1, &h2]),
        (1, vec![2, 2, 1], vec![&h1, &h12, &h2]),
        (1, vec![2, 1, 2], vec![&h1, &h12, &h2]),
    ] {
        lhs.add_assign(&li_(&k, &x)?.mul_i64(c));
    }
    let mut rhs = Ev::zero(wp);
    for (k, x) in [
        (vec![2, 1, 2], vec![&h1, &h12, &one]),
        (vec![2, 2, 1], vec![&h1, &one, &h12]),
        (vec![2, 3], vec![&h1, &h12]),
        (vec![4, 1], vec![&h1, &h12]),
    ] {
        rhs.add_assign(&li_(&k, &x)?);
    }
    sides(lhs, rhs, ctx)
}

/// Omega squiggle whose first bottom carries `2 dt/(1+t)` (the signed sum
/// over both first labels); later blocks carry `w_{eps}`.
fn sq_signed(l: &[u32], eps_rest: &[i32], wp: u32) -> Result<Ev> {
    let mut blocks = vec![(l[0], OneForm::scaled(Q::int(2), OneForm::Kernel(Q::int(-1))))];
    for (lj, e) in l[1..].iter().zip(eps_rest) {
        blocks.push((*lj, OneForm::omega(*e)));
    }
    let mut p = LabeledPoset::new();
    p.squiggle(&blocks, None);
    if let crate::posets::Admissibility::Inadmissible { reason, .. } = p.admissibility() {
        return Err(MzvError::Inadmissible(reason));
    }
    p.eval_ev(wp)
}

/// Sum over `n >= n_1 >= ... >= n_j >= 1` of `prod (1 + eps_i (-1)^(n_{i-1}+n_i))/n_i^l_i`,
/// optionally times `1 - (-1)^(n_j)`.
fn coupled(n: u64, l: &[u32], eps: &[i32], j: usize, tail: bool) -> Rational {
    let n = n as usize;
    let mut g: Vec<Rational> = (0..=n)
        .map(|v| if tail { Rational::from(1 - sgn(v as i64)) } else { Rational::from(1) })
        .collect();
    for i in (0..j).rev() {
        let mut h = vec![Rational::new(); n + 1];
        for prev in 1..=n {
            let mut acc = Rational::new();
            for v in 1..=prev {
                let c = 1 + eps[i] as i64 * sgn((prev + v) as i64);
                if c != 0 {
                    let d = rug::Integer::from(v).pow(l[i]);
                    acc += Rational::from((c, d)) * &g[v];
                }
            }
            h[prev] = acc;
        }
        g = h;
    }
    g[n].clone()
}

use rug::ops::Pow;

pub fn f2_mmvs(p: &Params, ctx: &Ctx) -> Out {
    let (n, l, eps) = (p.uint("n")?, p.comp("l")?, p.signs("eps")?);
    let wp = ctx.wp;
    let s = l.len();
    let lhs = diagram(DiagramKind::NLeg { n: n as u32, l: l.clone(), eps: sq(&eps) }, Alphabet::Omega, wp)?;
    let mut rhs = Ev::from_rational(&coupled(n, &l, &eps, s, false), wp);
    for j in 0..s {
        let c = coupled(n, &l, &eps, j, true);
        if c == 0 {
            continue;
        }
        let t = sq_signed(&l[j..], &eps[j + 1..], wp)?.mul_q(&Q::real(c)).mul_q(&Q::ratio(eps[j] as i64, 2));
        rhs.add_assign(&t);
    }
    sides(lhs, rhs, ctx)
}

fn scale_signs(s: i32, v: &[i32]) -> Vec<i32> {
    v.iter().map(|e| e * s).collect()
}

fn conv_shape3(k: &[u32], eta: &[i32], l: &[u32], eps2: &[i32], wp: u32) -> Result<Ev> {
    diagram(
        DiagramKind::ConvShape { k: k.to_vec(), eta: sq(eta), l: l.to_vec(), eps: sq(eps2) },
        Alphabet::Omega,
        wp,
    )
}

fn mi_head(k: &[u32], l0: u32, eta: &[i32], wp: u32) -> Result<Ev> {
    let mut idx = vec![k[0] + l0];
    idx.extend(&k[1..]);
    let mut lab = vec![-1];
    lab.extend(p_signs(&eta[1..]));
    mi_ev(&idx, &lab, &Q::one(), wp)
}

pub fn ism(p: &Params, ctx: &Ctx) -> Out {
    let (k, eta, l, eps2) = (p.comp("k")?, p.signs("eta")?, p.comp("l")?, p.signs("eps")?);
    let wp = ctx.wp;
    let s = l.len();
    let one = Q::one();
    let lhs = conv_shape3(&k, &eta, &l, &eps2, wp)?;
    let h = prod(&eta);
    let peta = p_signs(&eta);
    let mut g0 = vec![0];
    g0.extend(scale_signs(h, &r_signs(&eps2)));
    let mut rhs = conv_m_ev(&k, &peta, &l, &g0, &one, wp)?.mul_i64(2);
    if s >= 2 {
        let c = (eps2[0] * (1 - h)) as i64;
        if c != 0 {
            let t = mi_head(&k, l[0], &eta, wp)?.mul(&sq_signed(&l[1..], &eps2[1..], wp)?);
            rhs.add_assign(&t.mul_q(&Q::ratio(c, 2)));
        }
    }
    for j in 2..s {
        let c = (eps2[j - 1] * (1 - h * prod(&eps2[..j - 1]))) as i64;
        if c == 0 {
            continue;
        }
        let mut g = vec![0];
        g.extend(scale_signs(h, &r_signs(&eps2[..j - 2])));
        g.push(-1);
        let t = conv_m_ev(&k, &peta, &l[..j], &g, &one, wp)?.mul(&sq_signed(&l[j..], &eps2[j..], wp)?);
        rhs.add_assign(&t.mul_i64(c));
    }
    sides(lhs, rhs, ctx)
}

pub fn ism2(p: &Params, ctx: &Ctx) -> Out {
    let (k, eta, l, eps) = (p.comp("k")?, p.signs("eta")?, p.comp("l")?, p.signs("eps")?);
    let wp = ctx.wp;
    let lhs = conv_shape3(&k, &eta, &l, &eps, wp)?;
    let h = prod(&eta);
    let e = eps[0];
    let mut rhs = conv_m_ev(&k, &p_signs(&eta), &l, &[0, e * h], &Q::one(), wp)?.mul_i64(2);
    let c = (e * (1 - h)) as i64;
    if c != 0 {
        let t = mi_head(&k, l[0], &eta, wp)?.mul(&li(&[l[1]], &[Q::int(-1)], wp)?);
        rhs.add_assign(&t.mul_i64(c));
    }
    sides(lhs, rhs, ctx)
}

pub fn mmv_example(p: &Params, ctx: &Ctx) -> Out {
    let s = p.signs("eta")?;
    let (h, e) = (s[0], s[1]);
    let wp = ctx.wp;
    let one = Q::one();
    let m = |k: &[u32], lab: &[i32]| mi_ev(k, lab, &one, wp);
    let mut lhs = m(&[3, 2], &[e * h, h])?.mul_i64(2);
    lhs.add_assign(&m(&[4, 1], &[e * h, h])?.mul_i64(3));
    lhs.add_assign(&m(&[4, 1], &[h * e, e])?.mul_i64(3));
    lhs.add_assign(&m(&[3, 2], &[h * e, e])?);
    let mut rhs = m(&[3, 2], &[h, e * h])?;
    rhs.add_assign(&m(&[5], &[h])?.mul_i64(1 + e as i64));
    let c = (e * (1 - h)) as i64;
    if c != 0 {
        rhs.add_assign(&m(&[3], &[-1])?.mul(&li(&[2], &[Q::int(-1)], wp)?).mul_i64(c));
    }
    sides(lhs, rhs, ctx)
}

pub fn shuffle(p: &Params, ctx: &Ctx) -> Out {
    let x = LabeledPoset::parse(p.text("poset")?)?;
    let (a, b) = (p.uint("a")? as u32, p.uint("b")? as u32);
    let wp = ctx.wp;
    let lhs = x.eval_ev(wp)?;
    let rhs = x.adjoin_relation(a, b)?.eval_ev(wp)?.add(&x.adjoin_relation(b, a)?.eval_ev(wp)?);
    sides(lhs, rhs, ctx)
}

// ---------------------------------------------------------------------------
// checks
// ---------------------------------------------------------------------------

fn check_leg(l: &[u32], eps_len: usize) -> Result<()> {
    positive(l, "l")?;
    need(eps_len == l.len(), "eps must match l in length")
}

pub fn check_f2_mpls(p: &Params) -> Result<()> {
    need(p.uint("n")? >= 1, "n must be >= 1")?;
    let (l, eps) = (p.comp("l")?, p.labels("eps")?);
    check_leg(&l, eps.len())?;
    need(eps.iter().all(|e| !e.is_zero()), "eps entries must be nonzero")
}

pub fn check_isa(p: &Params) -> Result<()> {
    let (k, eta, l, eps) = (p.comp("k")?, p.labels("eta")?, p.comp("l")?, p.labels("eps")?);
    positive(&k, "k")?;
    positive(&l, "l")?;
    need(eta.len() == k.len(), "eta must match k in length")?;
    need(eps.len() + 1 == l.len(), "eps must have length len(l) - 1")?;
    need(eta.iter().chain(&eps).all(|e| !e.is_zero()), "labels must be nonzero")?;
    if let Some(e2) = eps.first() {
        need(
            eta.iter().all(|h| h.abs_f64() <= e2.abs_f64()),
            "need |eta_j| <= |eps_2|",
        )?;
    }
    Ok(())
}

pub fn check_amzv_example(p: &Params) -> Result<()> {
    let e = p.signs("eta")?;
    signs_ok(&e, "eta")?;
    need(e.len() == 2, "eta must have two entries")
}

pub fn check_f2_mmvs(p: &Params) -> Result<()> {
    need(p.uint("n")? >= 1, "n must be >= 1")?;
    let (l, eps) = (p.comp("l")?, p.signs("eps")?);
    check_leg(&l, eps.len())?;
    signs_ok(&eps, "eps")?;
    need(l[1..].iter().all(|&v| v >= 2), "l_j must be >= 2 for j >= 2")
}

fn check_ism_common(p: &Params) -> Result<()> {
    let (k, eta, l, eps) = (p.comp("k")?, p.signs("eta")?, p.comp("l")?, p.signs("eps")?);
    positive(&k, "k")?;
    positive(&l, "l")?;
    signs_ok(&eta, "eta")?;
    signs_ok(&eps, "eps")?;
    need(eta.len() == k.len(), "eta must match k in length")?;
    need(eps.len() + 1 == l.len(), "eps must have length len(l) - 1")?;
    need(l[1..].iter().all(|&v| v >= 2), "l_j must be >= 2 for j >= 2")
}

pub fn check_ism(p: &Params) -> Result<()> {
    check_ism_common(p)
}

pub fn check_ism2(p: &Params) -> Result<()> {
    check_ism_common(p)?;
    need(p.comp("l")?.len() == 2, "l must have two entries")
}

pub fn check_mmv_example(p: &Params) -> Result<()> {
    check_amzv_example(p)
}

pub fn check_shuffle(p: &Params) -> Result<()> {
    let x = LabeledPoset::parse(p.text("poset")?)?;
    let (a, b) = (p.uint("a")? as u32, p.uint("b")? as u32);
    let (pa, pb) = (x.position(a)?, x.position(b)?);
    need(!x.comparable(pa, pb), "a and b must be incomparable")?;
    need(x.admissibility().is_admissible(), "the poset must be admissible")
}

// ---------------------------------------------------------------------------
// generators
// ---------------------------------------------------------------------------

fn kernel_label(rng: &mut ChaCha8Rng, allow_one: bool) -> Q {
    let c = [gen::q(1, 2), gen::q(-1, 2), gen::q(3, 5), gen::q(-7, 10), Q::int(-1), Q::one()];
    let n = if allow_one { c.len() } else { c.len() - 1 };
    gen::pick(rng, &c[..n])
}

fn leg(rng: &mut ChaCha8Rng, b: &Bounds, min_tail: u32) -> Vec<u32> {
    let budget = b.poset.saturating_sub(1).max(1) as u32;
    let s = gen::int(rng, 1, b.depth.min(3) as i64) as usize;
    let mut l: Vec<u32> = (0..s).map(|j| if j == 0 { 1 } else { min_tail }).collect();
    while l.iter().sum::<u32>() > budget && l.len() > 1 {
        l.pop();
    }
    let spare = budget.saturating_sub(l.iter().sum());
    for _ in 0..gen::int(rng, 0, spare as i64) {
        let i = rng.gen_range(0..l.len());
        l[i] += 1;
    }
    l
}

pub fn gen_f2_mpls(rng: &mut ChaCha8Rng, b: &Bounds, _case: u64) -> Params {
    let l = leg(rng, b, 1);
    let eps = l.iter().map(|&lj| kernel_label(rng, lj >= 2)).collect();
    Params::new()
        .with("n", Param::Int(gen::int(rng, 1, b.n.min(4) as i64)))
        .with("l", Param::Comp(l))
        .with("eps", Param::Labels(eps))
}

pub fn gen_isa(rng: &mut ChaCha8Rng, b: &Bounds, _case: u64) -> Params {
    let budget = b.poset.max(3) as u32;
    let k = gen::comp(rng, 1, 2, (budget / 2).max(1), 1);
    let rest = budget.saturating_sub(k.iter().sum()).max(1);
    let l = gen::comp(rng, 1, 3.min(rest as usize), rest, 1);
    let eta_c = [Q::one(), Q::int(-1), gen::q(1, 2), gen::q(-1, 2)];
    let eta = k.iter().map(|_| gen::pick(rng, &eta_c)).collect();
    let eps = l[1..].iter().map(|&lj| if lj == 1 { Q::int(-1) } else { Q::int(gen::sign(rng) as i64) }).collect();
    Params::new()
        .with("k", Param::Comp(k))
        .with("eta", Param::Labels(eta))
        .with("l", Param::Comp(l))
        .with("eps", Param::Labels(eps))
}

pub fn gen_amzv_example(rng: &mut ChaCha8Rng, _b: &Bounds, case: u64) -> Params {
    Params::new().with("eta", Param::Signs(gen::signs(rng, 2, case)))
}

pub fn gen_f2_mmvs(rng: &mut ChaCha8Rng, b: &Bounds, case: u64) -> Params {
    let l = leg(rng, b, 2);
    let eps = gen::signs(rng, l.len(), case);
    Params::new()
        .with("n", Param::Int(gen::int(rng, 1, b.n.min(4) as i64)))
        .with("l", Param::Comp(l))
        .with("eps", Param::Signs(eps))
}

fn ism_params(rng: &mut ChaCha8Rng, b: &Bounds, case: u64, two: bool) -> Params {
    let k = gen::comp(rng, 1, 2, 3, 1);
    let budget = b.poset.max(4) as u32;
    let room = budget.saturating_sub(k.iter().sum());
    let mut l = vec![gen::int(rng, 1, 2) as u32];
    let blocks = if two { 1 } else { gen::int(rng, 0, 2) as usize };
    for _ in 0..blocks {
        l.push(2);
    }
    while l.iter().sum::<u32>() > room.max(3) && l.len() > 1 + two as usize {
        l.pop();
    }
    let s = gen::signs(rng, k.len() + l.len() - 1, case);
    let (eta, eps) = s.split_at(k.len());
    Params::new()
        .with("k", Param::Comp(k))
        .with("eta", Param::Signs(eta.to_vec()))
        .with("l", Param::Comp(l))
        .with("eps", Param::Signs(eps.to_vec()))
}

pub fn gen_ism(rng: &mut ChaCha8Rng, b: &Bounds, case: u64) -> Params {
    ism_params(rng, b, case, false)
}

pub fn gen_ism2(rng: &mut ChaCha8Rng, b: &Bounds, case: u64) -> Params {
    ism_params(rng, b, case, true)
}

pub fn gen_mmv_example(rng: &mut ChaCha8Rng, b: &Bounds, case: u64) -> Params {
    gen_amzv_example(rng, b, case)
}

/// Random admissible kernel-alphabet poset with an incomparable pair.
pub fn random_poset(rng: &mut ChaCha8Rng, max_elems: usize) -> (LabeledPoset, u32, u32) {
    let max_elems = max_elems.clamp(2, 8);
    loop {
        let n = rng.gen_range(2..=max_elems);
        let mut p = LabeledPoset::new();
        let choices = [OneForm::Omega0, OneForm::k1(), OneForm::Kernel(Q::int(-1)), OneForm::Kernel(gen::q(1, 2))];
        for _ in 0..n {
            p.add(gen::pick(rng, &choices));
        }
        for a in 0..n {
            for b in a + 1..n {
                if rng.gen_bool(0.3) {
                    let _ = p.place_below(a, b);
                }
            }
        }
        let mut labels = p.labels().to_vec();
        let (zero, one) = (p.nearest_zero(), p.nearest_one());
        for &i in &zero {
            if labels[i].is_omega0() {
                labels[i] = OneForm::Kernel(Q::int(-1));
            }
        }
        for &i in &one {
            if labels[i] == OneForm::k1() {
                labels[i] = if zero.contains(&i) { OneForm::Kernel(gen::q(1, 2)) } else { OneForm::Omega0 };
            }
        }
        let mut q = LabeledPoset::new();
        for l in labels {
            q.add(l);
        }
        for &(a, b) in p.covers() {
            let _ = q.place_below(a, b);
        }
        if !q.admissibility().is_admissible() {
            continue;
        }
        let pairs: Vec<(usize, usize)> =
            (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).filter(|&(a, b)| !q.comparable(a, b)).collect();
        if pairs.is_empty() {
            continue;
        }
        let (a, b) = pairs[rng.gen_range(0..pairs.len())];
        let ids = q.ids();
        return (q.clone(), ids[a], ids[b]);
    }
}

pub fn gen_shuffle(rng: &mut ChaCha8Rng, b: &Bounds, _case: u64) -> Params {
    let (x, a, bb) = random_poset(rng, b.poset);
    Params::new()
        .with("poset", Param::Text(x.to_string()))
        .with("a", Param::Int(a as i64))
        .with("b", Param::Int(bb as i64))
}
