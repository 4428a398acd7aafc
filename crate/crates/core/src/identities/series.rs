//! Integral-series identities for polylogarithms, t-values and mixed values.
//! Integral sides run the Chen engine on the identity's own word.

use rand_chacha::ChaCha8Rng;
use rug::ops::Pow;
use rug::Rational;

use super::gen::{self, Bounds};
use super::support::*;
use super::{Ctx, Param, Params};
use crate::error::Result;
use crate::index::{hoffman_dual, p_signs, q_signs, r_signs, Composition};
use crate::num::{Ev, Scalar, Q};
use crate::sums::{m_n_exact, t_n_float, zeta_n_float};
use crate::values::{conv_gen_ev, conv_m_ev, conv_t_ev, conv_zeta_ev, mi_ev, tconv_x_ev, ti_ev};
use crate::words::OneForm;

type Out = Result<(Scalar, Scalar)>;

fn zstar(k: &[u32], x: &[Q], n: u64, wp: u32) -> Result<Ev> {
    let xc: Vec<_> = x.iter().map(|q| q.to_cx(wp)).collect();
    zeta_n_float(k, &xc, &Q::zero(), n, true, wp)
}

fn ones_last(len: usize, x: &Q) -> Vec<Q> {
    let mut v = ones(len);
    if let Some(l) = v.last_mut() {
        *l = x.clone();
    }
    v
}

fn dual(m: &[u32]) -> Result<Vec<u32>> {
    Ok(hoffman_dual(&Composition::new(m.to_vec())?)?.into_parts())
}

fn kforms(m: &[u32], first: impl Fn(usize) -> OneForm) -> Vec<OneForm> {
    let mut w = Vec::new();
    for (i, &mi) in m.iter().enumerate() {
        w.push(first(i));
        w.extend(std::iter::repeat_n(OneForm::Omega0, mi as usize - 1));
    }
    w
}

fn pow_form(n: u64) -> OneForm {
    OneForm::Pow(n as u32)
}

// ---------------------------------------------------------------------------
// polylogarithms
// ---------------------------------------------------------------------------

pub fn fii1(p: &Params, ctx: &Ctx) -> Out {
    let (m, n, x) = (p.comp("m")?, p.uint("n")?, p.num("x")?);
    let wp = ctx.wp;
    let pl = m.len();
    let mut w = vec![pow_form(n)];
    w.extend(kforms(&m, |_| OneForm::k1()));
    let lhs = word(w, Q::zero(), x.clone(), wp)?.mul_i64(n as i64);
    let mut rhs = zstar(&m, &ones_last(pl, &x), n, wp)?.mul_i64(sgn(pl as i64));
    for j in 1..=pl {
        let a = zstar(&m[..j - 1], &ones(j - 1), n, wp)?;
        let b = li1(&rev(&m[j - 1..]), &x, wp)?;
        rhs = rhs.sub(&a.mul(&b).mul_i64(sgn(j as i64)));
    }
    sides(lhs, rhs, ctx)
}

pub fn fii2(p: &Params, ctx: &Ctx) -> Out {
    let (m, n, x, sig) = (p.comp("m")?, p.uint("n")?, p.num("x")?, p.labels("sigma")?);
    let wp = ctx.wp;
    let pl = m.len();
    let mut w = vec![pow_form(n)];
    for (i, &mi) in m.iter().enumerate() {
        w.push(OneForm::scaled(sig[i].recip()?, OneForm::Kernel(sig[i].clone())));
        w.extend(std::iter::repeat_n(OneForm::Omega0, mi as usize - 1));
    }
    let lhs = word(w, Q::zero(), x.clone(), wp)?.mul_i64(n as i64);
    let mut sg = sig.clone();
    sg.push(x.recip()?);
    let mut den = sg[0].pow(n as u32 + 1);
    for s in &sg[1..pl] {
        den = den.mul(s);
    }
    let mut rhs = Ev::zero(wp);
    for j in 0..=pl {
        let ratios: Vec<Q> = (0..j).map(|i| sg[i].div(&sg[i + 1])).collect::<Result<_>>()?;
        let a = zstar(&m[..j], &ratios, n, wp)?;
        let mut xs = vec![sg[pl - 1].mul(&x)];
        for i in (j + 1..pl).rev() {
            xs.push(sg[i - 1].div(&sg[i])?);
        }
        let b = li(&rev(&m[j..]), &xs, wp)?;
        rhs.add_assign(&a.mul(&b).mul_i64(sgn(j as i64)));
    }
    sides(lhs, rhs.mul_q(&den.recip()?), ctx)
}

/// Exact chain sum over `n >= k_1 >= ... >= k_L >= 1` of `prod 1/k_t`, with
/// weight `a_i^(k_e - k_{e+1})` across block ends and a final `1 - last^k_L`.
fn chain_sum(blocks: &[u32], a: &[Q], last: &Q, n: u64) -> Q {
    let total: u32 = blocks.iter().sum();
    let mut weight_at = vec![None; total as usize + 1];
    let mut pos = 0usize;
    for (i, b) in blocks[..blocks.len() - 1].iter().enumerate() {
        pos += *b as usize;
        weight_at[pos] = Some(a[i].clone());
    }
    let n = n as usize;
    let mut f: Vec<Q> = (0..=n).map(|v| if v == 0 { Q::zero() } else { Q::ratio(1, v as i64) }).collect();
    for t in 1..total as usize {
        let mut g = vec![Q::zero(); n + 1];
        for v in 1..=n {
            let mut acc = Q::zero();
            for u in v..=n {
                let w = match &weight_at[t] {
                    Some(aa) => f[u].mul(&aa.pow((u - v) as u32)),
                    None => f[u].clone(),
                };
                acc = acc.add(&w);
            }
            g[v] = acc.mul(&Q::ratio(1, v as i64));
        }
        f = g;
    }
    let mut s = Q::zero();
    for (v, fv) in f.iter().enumerate().skip(1) {
        s = s.add(&fv.mul(&Q::one().sub(&last.pow(v as u32))));
    }
    s
}

pub fn int_g(p: &Params, ctx: &Ctx) -> Out {
    let (m, a, n) = (p.comp("m")?, p.labels("a")?, p.uint("n")?);
    let wp = ctx.wp;
    let pl = m.len();
    let mut w = Vec::new();
    for j in (0..pl).rev() {
        w.extend(std::iter::repeat_n(OneForm::k1(), m[j] as usize));
        if j > 0 {
            w.push(OneForm::CauchyShift(a[j - 1].clone()));
        }
    }
    w.push(pow_form(n));
    let lhs = word(w, a[pl - 1].clone(), Q::one(), wp)?.mul_i64(n as i64 * sgn(pl as i64));
    let mut rhs = Ev::zero(wp);
    let one = Q::one();
    for j in 1..=pl {
        let idx: Vec<u32> = (j..pl).rev().map(|i| m[i] + 1).collect();
        let args: Vec<Q> = (j..pl)
            .rev()
            .map(|i| one.sub(&a[i]).div(&one.sub(&a[i - 1])))
            .collect::<Result<_>>()?;
        let l = li(&idx, &args, wp)?;
        let mut blocks = vec![m[0]];
        blocks.extend(m[1..j].iter().map(|v| v + 1));
        let cs = chain_sum(&blocks, &a[..j - 1], &a[j - 1], n);
        rhs.add_assign(&l.mul_q(&cs).mul_i64(sgn(j as i64)));
    }
    sides(lhs, rhs, ctx)
}

pub fn imp2(p: &Params, ctx: &Ctx) -> Out {
    let (m, n, x) = (p.comp("m")?, p.uint("n")?, p.num("x")?);
    let wp = ctx.wp;
    let pl = m.len();
    let one_minus = Q::one().sub(&x);
    let md = dual(&m)?;
    let mut lhs = zstar(&md, &ones_last(md.len(), &x), n, wp)?;
    for j in 1..=pl {
        let pre = dual(&m[..j])?;
        let l = li1(&rev(&m[j..]), &one_minus, wp)?;
        let t = zstar(&pre, &ones(pre.len()), n, wp)?.mul(&l);
        lhs = lhs.sub(&t.mul_i64(sgn((pl - j) as i64)));
    }
    let mut w = Vec::new();
    for j in (0..pl).rev() {
        if j == 0 {
            w.extend(std::iter::repeat_n(OneForm::k1(), m[0] as usize));
        } else {
            w.extend(std::iter::repeat_n(OneForm::k1(), m[j] as usize - 1));
            w.push(OneForm::Omega0);
        }
    }
    w.push(pow_form(n));
    let rhs = word(w, x, Q::one(), wp)?.mul_i64(n as i64 * sgn(pl as i64));
    sides(lhs, rhs, ctx)
}

fn ratios_next(v: &[Q]) -> Result<Vec<Q>> {
    (0..v.len().saturating_sub(1)).map(|i| v[i + 1].div(&v[i])).collect()
}

pub fn kymzv1(p: &Params, ctx: &Ctx) -> Out {
    let (k, m, x) = (p.comp("k")?, p.comp("m")?, p.num("x")?);
    let (eps, sig) = (p.labels("eps")?, p.labels("sigma")?);
    let wp = ctx.wp;
    let pl = m.len();
    let lam = eps[0].div(&sig[0])?;
    let kx = ratios_next(&eps)?;
    let sr: Vec<Q> = (0..pl - 1).map(|i| sig[i].div(&sig[i + 1])).collect::<Result<_>>()?;
    let top = sig[pl - 1].mul(&x);
    let args_from = |j: usize| -> Result<Vec<Q>> {
        let mut v = vec![top.clone()];
        for i in (j..pl).rev() {
            if i >= 1 && i < pl {
                v.push(sig[i - 1].div(&sig[i])?);
            }
        }
        Ok(v)
    };
    let mut lhs = Ev::zero(wp);
    for j in 1..=pl {
        let l = li(&rev(&m[j - 1..]), &args_from(j)?, wp)?;
        let c = conv_gen_ev(k[0] + 1, &lam, &k[1..], &kx, &m[..j - 1], &sr[..j - 1], wp)?;
        lhs.add_assign(&l.mul(&c).mul_i64(sgn(j as i64 - 1)));
    }
    let mut lx = sr.clone();
    lx.push(top.clone());
    lhs.add_assign(&conv_gen_ev(k[0] + 1, &lam, &k[1..], &kx, &m, &lx, wp)?.mul_i64(sgn(pl as i64)));
    let mut idx = rev(&m);
    idx.push(k[0] + 1);
    idx.extend(&k[1..]);
    let mut args = args_from(1)?;
    args.push(lam);
    args.extend(kx);
    let rhs = li(&idx, &args, wp)?;
    sides(lhs, rhs, ctx)
}

pub fn kymzv2(p: &Params, ctx: &Ctx) -> Out {
    let (k, m, x) = (p.comp("k")?, p.comp("m")?, p.num("x")?);
    let wp = ctx.wp;
    let pl = m.len();
    let mut idx = rev(&m);
    idx.push(k[0] + 1);
    idx.extend(&k[1..]);
    let lhs = li1(&idx, &x, wp)?;
    let mut rhs = conv_gen_ev(k[0] + 1, &Q::one(), &k[1..], &ones(k.len() - 1), &m, &ones_last(pl, &x), wp)?
        .mul_i64(sgn(pl as i64));
    for j in 1..=pl {
        let mut l = vec![1];
        l.extend(&m[..j - 1]);
        let t = li1(&rev(&m[j - 1..]), &x, wp)?.mul(&conv_zeta_ev(&k, &l, wp)?);
        rhs = rhs.sub(&t.mul_i64(sgn(j as i64)));
    }
    sides(lhs, rhs, ctx)
}

/// `sum_i0 (-1)^i0/i0! log^i0(lx) prod C(m_l + i_l, i_l) Li_{(m+i+1) reversed, j+1}(y)`
/// summed over `j in N_0^k` with `|j| = total`.
fn binomial_block(m: &[u32], k: u32, total: u32, lx: &Ev, y: &Q, wp: u32) -> Result<Ev> {
    let pl = m.len();
    let mut s = Ev::zero(wp);
    for jj in tuples(total, k as usize, 0) {
        let (jvec, jk) = (&jj[..k as usize - 1], jj[k as usize - 1]);
        for ii in tuples(jk, pl + 1, 0) {
            let (i0, iv) = (ii[0], &ii[1..]);
            let mut c = inv_factorial(i0).mul(&Q::int(sgn(i0 as i64)));
            for l in 0..pl {
                c = c.mul(&Q::int(binom(m[l] + iv[l], iv[l])));
            }
            let mut idx: Vec<u32> = (0..pl).rev().map(|l| m[l] + iv[l] + 1).collect();
            idx.extend(jvec.iter().map(|v| v + 1));
            s.add_assign(&pow(lx, i0).mul(&li1(&idx, y, wp)?).mul_q(&c));
        }
    }
    Ok(s)
}

pub fn kymzv3(p: &Params, ctx: &Ctx) -> Out {
    let (m, k, r, x) = (p.comp("m")?, p.uint("k")? as u32, p.uint("r")? as usize, p.num("x")?);
    let wp = ctx.wp;
    let pl = m.len();
    let shifted = |upto: usize| -> Vec<u32> {
        let mut v = vec![m[0]];
        v.extend(m[1..upto].iter().map(|v| v + 1));
        v
    };
    let d = dual(&shifted(pl))?;
    let lhs = conv_gen_ev(k + 1, &Q::one(), &ones_u(r - 1), &ones(r - 1), &d, &ones_last(d.len(), &x), wp)?;
    let y = Q::one().sub(&x);
    let lx = ln(&y, wp)?;
    let mut rhs = binomial_block(&m, k, r as u32, &lx, &y, wp)?.mul_i64(sgn((pl + k as usize - 1) as i64));
    let base: Vec<u32> = (0..pl).rev().map(|l| m[l] + 1).collect();
    let mut s2 = Ev::zero(wp);
    for j in 0..k.saturating_sub(1) {
        let mut zk = vec![k - j];
        zk.extend(ones_u(r - 1));
        let mut idx = base.clone();
        idx.extend(ones_u(j as usize));
        let t = li(&zk, &ones(r), wp)?.mul(&li1(&idx, &y, wp)?);
        s2.add_assign(&t.mul_i64(sgn(j as i64)));
    }
    rhs.add_assign(&s2.mul_i64(sgn(pl as i64)));
    for j in 1..=pl {
        let mut l = vec![1];
        l.extend(dual(&shifted(j))?);
        let mut kk = vec![k];
        kk.extend(ones_u(r - 1));
        let idx: Vec<u32> = (j..pl).rev().map(|l| m[l] + 1).collect();
        let t = conv_zeta_ev(&kk, &l, wp)?.mul(&li1(&idx, &y, wp)?);
        rhs.add_assign(&t.mul_i64(sgn((pl - j) as i64)));
    }
    sides(lhs, rhs, ctx)
}

pub fn mplr2(p: &Params, ctx: &Ctx) -> Out {
    let (pp, k, r, x) = (p.uint("p")? as usize, p.uint("k")? as u32, p.uint("r")? as usize, p.num("x")?);
    let wp = ctx.wp;
    let y = Q::one().sub(&x);
    let lx = ln(&x, wp)?;
    let mut idx = ones_u(pp);
    idx.push(k + 1);
    idx.extend(ones_u(r));
    let lhs = li1(&idx, &y, wp)?.mul_i64(sgn(pp as i64));
    let mut kr = vec![k];
    kr.extend(ones_u(r));
    let mut rhs = Ev::zero(wp);
    for j in 0..=pp {
        let t = conv_zeta_ev(&kr, &ones_u(pp + 1 - j), wp)?.mul(&pow(&lx, j as u32)).mul_q(&inv_factorial(j as u32));
        rhs.add_assign(&t);
    }
    for j in 0..k.saturating_sub(1) {
        let mut a = vec![k - j];
        a.extend(ones_u(r));
        let mut b = vec![pp as u32 + 1];
        b.extend(ones_u(j as usize));
        let t = li1(&a, &Q::one(), wp)?.mul(&li1(&b, &x, wp)?);
        rhs = rhs.sub(&t.mul_i64(sgn(j as i64)));
    }
    let total = r as u32 + k;
    let mut s = Ev::zero(wp);
    for ell in 0..=total {
        for j in 0..=total - ell {
            for iv in tuples(total - ell - j, k as usize - 1, 1) {
                let mut idx = vec![pp as u32 + j + 1];
                idx.extend(iv);
                let c = inv_factorial(ell).mul(&Q::int(sgn(ell as i64) * binom(pp as u32 + j, j)));
                s.add_assign(&pow(&lx, ell).mul(&li1(&idx, &x, wp)?).mul_q(&c));
            }
        }
    }
    rhs.add_assign(&s.mul_i64(sgn(k as i64)));
    sides(lhs, rhs, ctx)
}

pub fn mplr3(p: &Params, ctx: &Ctx) -> Out {
    let (m, k, r, x) = (p.uint("m")? as u32, p.uint("k")? as u32, p.uint("r")? as usize, p.num("x")?);
    let wp = ctx.wp;
    let y = Q::one().sub(&x);
    let mut idx = vec![m, k + 1];
    idx.extend(ones_u(r));
    let lhs = li1(&idx, &y, wp)?;
    let mut k1r = vec![k + 1];
    k1r.extend(ones_u(r));
    let mut rhs = li1(&[m], &y, wp)?.mul(&li1(&k1r, &Q::one(), wp)?);
    for j in 0..k.saturating_sub(1) {
        let mut a = vec![k - j];
        a.extend(ones_u(r));
        let mut b = ones_u(m as usize - 1);
        b.push(2);
        b.extend(ones_u(j as usize));
        let t = li1(&a, &Q::one(), wp)?.mul(&li1(&b, &x, wp)?);
        rhs = rhs.sub(&t.mul_i64(sgn((m + j) as i64)));
    }
    let ly = ln(&y, wp)?;
    let mut kr = vec![k];
    kr.extend(ones_u(r));
    for j in 1..=m {
        let t = conv_zeta_ev(&kr, &[1, j], wp)?.mul(&pow(&ly, m - j)).mul_q(&inv_factorial(m - j));
        rhs = rhs.sub(&t);
    }
    let mut mv = vec![0u32; m as usize];
    mv[0] = 1;
    let lx = ln(&x, wp)?;
    let s = binomial_block(&mv, k, r as u32 + 1, &lx, &x, wp)?;
    rhs.add_assign(&s.mul_i64(sgn((m + k) as i64)));
    sides(lhs, rhs, ctx)
}

pub fn itli1j(p: &Params, ctx: &Ctx) -> Out {
    let (j, x) = (p.uint("j")? as u32, p.num("x")?);
    let wp = ctx.wp;
    let lhs = li1(&ones_u(j as usize), &x, wp)?;
    let l = ln(&Q::one().sub(&x), wp)?;
    let rhs = pow(&l, j).mul_q(&inv_factorial(j)).mul_i64(sgn(j as i64));
    sides(lhs, rhs, ctx)
}

pub fn mplrs(p: &Params, ctx: &Ctx) -> Out {
    let (k, r, x) = (p.uint("k")? as u32, p.uint("r")? as usize, p.num("x")?);
    let wp = ctx.wp;
    let y = Q::one().sub(&x);
    let mut idx = vec![k];
    idx.extend(ones_u(r));
    let lhs = li1(&idx, &x, wp)?;
    let mut rhs = Ev::zero(wp);
    for j in 0..k - 1 {
        let mut a = vec![k - j];
        a.extend(ones_u(r));
        let t = li1(&a, &Q::one(), wp)?.mul(&li1(&ones_u(j as usize), &y, wp)?);
        rhs.add_assign(&t.mul_i64(sgn(j as i64)));
    }
    let total = r as u32 + k;
    let mut s = Ev::zero(wp);
    for ell in 0..=total {
        for iv in tuples(total - ell, k as usize - 1, 1) {
            s.add_assign(&li1(&ones_u(ell as usize), &x, wp)?.mul(&li1(&iv, &y, wp)?));
        }
    }
    rhs = rhs.sub(&s.mul_i64(sgn(k as i64)));
    sides(lhs, rhs, ctx)
}

// ---------------------------------------------------------------------------
// t-values
// ---------------------------------------------------------------------------

fn half(f: OneForm) -> OneForm {
    OneForm::scaled(Q::ratio(1, 2), f)
}

pub fn fiit1(p: &Params, ctx: &Ctx) -> Out {
    let (m, n, x, odd) = (p.comp("m")?, p.uint("n")?, p.num("x")?, p.int("odd")? != 0);
    let wp = ctx.wp;
    let pl = m.len();
    let (power, first) = if odd { (2 * n - 1, OneForm::Wplus) } else { (2 * n, OneForm::Wminus) };
    let mut w = vec![pow_form(power)];
    w.extend(kforms(&m, |i| half(if i == 0 { first.clone() } else { OneForm::Wplus })));
    let lhs = word(w, Q::zero(), x.clone(), wp)?.mul_i64(power as i64);
    let xc = x.to_cx(wp);
    let mut rhs = t_n_float(&m, n, true, Some(&xc), wp).mul_i64(sgn(pl as i64));
    for j in 1..=pl {
        let a = t_n_float(&m[..j - 1], n, true, None, wp);
        let b = ti_ev(&rev(&m[j - 1..]), &x, wp)?;
        rhs.add_assign(&a.mul(&b).mul_i64(sgn(j as i64 - 1)));
    }
    sides(lhs, rhs, ctx)
}

pub fn tkx(p: &Params, ctx: &Ctx) -> Out {
    let (k, m, x) = (p.comp("k")?, p.comp("m")?, p.num("x")?);
    let wp = ctx.wp;
    let pl = m.len();
    let mut idx = rev(&m);
    idx.push(k[0] + 1);
    idx.extend(&k[1..]);
    let lhs = ti_ev(&idx, &x, wp)?;
    let mut rhs = tconv_x_ev(k[0] + 1, &k[1..], &m, &x, wp)?.mul_i64(sgn(pl as i64));
    for j in 1..=pl {
        let mut l = vec![1];
        l.extend(&m[..j - 1]);
        let t = ti_ev(&rev(&m[j - 1..]), &x, wp)?.mul(&conv_t_ev(&k, &l, wp)?);
        rhs = rhs.sub(&t.mul_i64(sgn(j as i64)));
    }
    sides(lhs, rhs, ctx)
}

pub fn tkxx(p: &Params, ctx: &Ctx) -> Out {
    let (k, m) = (p.comp("k")?, p.comp("m")?);
    let wp = ctx.wp;
    let pl = m.len();
    let one = Q::one();
    let mut idx = rev(&m);
    idx.push(k[0] + 1);
    idx.extend(&k[1..]);
    let rhs = ti_ev(&idx, &one, wp)?;
    let mut lhs = Ev::zero(wp);
    for j in 1..=pl + 1 {
        let mut l = vec![1];
        l.extend(&m[..j - 1]);
        let t = ti_ev(&rev(&m[j - 1..]), &one, wp)?.mul(&conv_t_ev(&k, &l, wp)?);
        lhs.add_assign(&t.mul_i64(sgn(j as i64 - 1)));
    }
    sides(lhs, rhs, ctx)
}

// ---------------------------------------------------------------------------
// mixed values
// ---------------------------------------------------------------------------

/// Parity-coupled sum over `n >= n_1 >= ... >= n_p >= 1` of
/// `prod (1 + e_j (-1)^(n_{j-1} + n_j)) / n_j^m_j` times `x^(n_p)`.
fn coupled_sum(m: &[u32], e: &[i32], n: u64, x: &Q) -> Q {
    let pl = m.len();
    let n = n as usize;
    // g[v] = value of levels j.. given previous index v
    let mut g: Vec<Q> = vec![Q::one(); n + 1];
    for j in (0..pl).rev() {
        let mut h = vec![Q::zero(); n + 1];
        for prev in 1..=n {
            let mut acc = Q::zero();
            for v in 1..=prev {
                let c = 1 + e[j] as i64 * sgn((prev + v) as i64);
                if c == 0 {
                    continue;
                }
                let mut t = Q::real(Rational::from((c, rug::Integer::from(v).pow(m[j]))));
                if j == pl - 1 {
                    t = t.mul(&x.pow(v as u32));
                }
                acc = acc.add(&t.mul(&g[v]));
            }
            h[prev] = acc;
        }
        g = h;
    }
    g[n].clone()
}

fn scale_signs(s: i32, v: &[i32]) -> Vec<i32> {
    v.iter().map(|e| e * s).collect()
}

pub fn intx_mmvs(p: &Params, ctx: &Ctx) -> Out {
    let (m, e, n, x) = (p.comp("m")?, p.signs("e")?, p.uint("n")?, p.num("x")?);
    let wp = ctx.wp;
    let pl = m.len();
    let mut w = vec![pow_form(n)];
    w.extend(kforms(&m, |i| OneForm::omega(e[i])));
    let lhs = word(w, Q::zero(), x.clone(), wp)?.mul_i64(n as i64);
    let mut rhs = Ev::from_q(&coupled_sum(&m, &e, n, &x), wp).mul_i64(sgn(pl as i64));
    for j in 1..=pl {
        let big_e = prod(&e[..j]) as i64;
        for sg in [-1i32, 1] {
            let mut lab = scale_signs(sg, &q_signs(&e[j..]));
            lab.push(sg);
            let pl_signs = scale_signs(sg, &p_signs(&e[1..j]));
            let c = 1 + sg as i64 * big_e * sgn(n as i64);
            if c == 0 {
                continue;
            }
            let mn = m_n_exact(&m[..j - 1], &pl_signs, n, true);
            let t = mi_ev(&rev(&m[j - 1..]), &lab, &x, wp)?
                .mul_q(&Q::real(mn))
                .mul_q(&Q::ratio(c * sgn(j as i64 - 1), 2));
            rhs.add_assign(&t);
        }
    }
    sides(lhs, rhs, ctx)
}

fn kym_idx(k: &[u32], m: &[u32]) -> Vec<u32> {
    let mut idx = rev(m);
    idx.push(k[0] + 1);
    idx.extend(&k[1..]);
    idx
}

fn kymmvs(p: &Params, ctx: &Ctx, x: &Q) -> Out {
    let (k, eta, m, e) = (p.comp("k")?, p.signs("eta")?, p.comp("m")?, p.signs("e")?);
    let wp = ctx.wp;
    let pl = m.len();
    let h = prod(&eta);
    let peta = p_signs(&eta);
    let mut lab = scale_signs(h, &q_signs(&e));
    lab.extend(&peta);
    let lhs = mi_ev(&kym_idx(&k, &m), &lab, x, wp)?;
    let mut l = vec![1];
    l.extend(&m);
    let mut eps = vec![0];
    eps.extend(scale_signs(h, &r_signs(&e)));
    let mut rhs = conv_m_ev(&k, &peta, &l, &eps, x, wp)?.mul_i64(2 * sgn(pl as i64));
    for j in 1..=pl {
        let mut lj = vec![1];
        lj.extend(&m[..j - 1]);
        for sg in [-1i32, 1] {
            let mut lab2 = scale_signs(sg, &q_signs(&e[j..]));
            lab2.push(sg);
            let c = conv_m_ev(&k, &peta, &lj, &scale_signs(sg, &p_signs(&e[..j])), &Q::one(), wp)?;
            let t = mi_ev(&rev(&m[j - 1..]), &lab2, x, wp)?.mul(&c);
            rhs = rhs.sub(&t.mul_i64(sgn(j as i64)));
        }
    }
    sides(lhs, rhs, ctx)
}

pub fn intx_kymmvs(p: &Params, ctx: &Ctx) -> Out {
    let x = p.num("x")?;
    kymmvs(p, ctx, &x)
}

pub fn cor(p: &Params, ctx: &Ctx) -> Out {
    kymmvs(p, ctx, &Q::one())
}

// ---------------------------------------------------------------------------
// checks
// ---------------------------------------------------------------------------

fn check_mnx(p: &Params) -> Result<()> {
    positive(&p.comp("m")?, "m")?;
    need(p.uint("n")? >= 1, "n must be >= 1")?;
    unit_open(&p.num("x")?, "x")
}

pub fn check_fii1(p: &Params) -> Result<()> {
    check_mnx(p)
}

pub fn check_fii2(p: &Params) -> Result<()> {
    check_mnx(p)?;
    let (m, sig, x) = (p.comp("m")?, p.labels("sigma")?, p.num("x")?);
    need(sig.len() == m.len(), "sigma must match m in length")?;
    need(sig.iter().all(|s| s.is_real() && !s.is_zero()), "sigma entries must be nonzero reals")?;
    need(
        sig.iter().all(|s| s.mul(&x).cmp_abs_one().is_lt()),
        "need |sigma_j x| < 1",
    )
}

pub fn check_int_g(p: &Params) -> Result<()> {
    let (m, a) = (p.comp("m")?, p.labels("a")?);
    need(!m.is_empty() && m[0] >= 1, "m must be nonempty with m_1 >= 1")?;
    need(a.len() == m.len(), "a must match m in length")?;
    need(p.uint("n")? >= 1, "n must be >= 1")?;
    let reals: Option<Vec<&Rational>> = a.iter().map(Q::as_real).collect();
    let reals = reals.ok_or_else(|| crate::error::MzvError::Invalid("a must be real".into()))?;
    let top = reals[reals.len() - 1];
    need(*top < 1, "a_p must be < 1")?;
    need(reals[..reals.len() - 1].iter().all(|v| *v < top), "need a_j < a_p for j < p")
}

pub fn check_imp2(p: &Params) -> Result<()> {
    check_mnx(p)
}

pub fn check_kymzv1(p: &Params) -> Result<()> {
    let (k, m, x) = (p.comp("k")?, p.comp("m")?, p.num("x")?);
    let (eps, sig) = (p.labels("eps")?, p.labels("sigma")?);
    positive(&k, "k")?;
    positive(&m, "m")?;
    unit_half_open(&x, "x")?;
    need(eps.len() == k.len(), "eps must match k in length")?;
    need(sig.len() == m.len(), "sigma must match m in length")?;
    let mags = |v: &[Q]| v.iter().map(Q::abs_f64).collect::<Vec<_>>();
    let (me, ms) = (mags(&eps), mags(&sig));
    need(me.iter().all(|&v| v > 0.0) && ms.iter().all(|&v| v > 0.0), "eps and sigma must be nonzero")?;
    need(ms.iter().all(|&v| v <= 1.0), "need |sigma_j| <= 1")?;
    let max_e = me.iter().cloned().fold(0.0, f64::max);
    let min_s = ms.iter().cloned().fold(f64::INFINITY, f64::min);
    need(max_e < min_s, "need max |eps| < min |sigma|")?;
    need(!(m[m.len() - 1] == 1 && sig[m.len() - 1].mul(&x).is_one()), "(m_p, sigma_p x) = (1, 1) diverges")
}

pub fn check_kymzv2(p: &Params) -> Result<()> {
    let (k, m, x) = (p.comp("k")?, p.comp("m")?, p.num("x")?);
    positive(&k, "k")?;
    positive(&m, "m")?;
    unit_half_open(&x, "x")?;
    need(!(m[m.len() - 1] == 1 && x.is_one()), "(m_p, x) = (1, 1) diverges")
}

pub fn check_kymzv3(p: &Params) -> Result<()> {
    let m = p.comp("m")?;
    need(!m.is_empty() && m[0] >= 1, "m must be nonempty with m_1 >= 1")?;
    need(p.uint("k")? >= 1, "k must be >= 1")?;
    need(p.uint("r")? >= 1, "r must be >= 1")?;
    unit_open(&p.num("x")?, "x")
}

pub fn check_mplr2(p: &Params) -> Result<()> {
    p.uint("p")?;
    p.uint("r")?;
    need(p.uint("k")? >= 1, "k must be >= 1")?;
    unit_open(&p.num("x")?, "x")
}

pub fn check_mplr3(p: &Params) -> Result<()> {
    p.uint("r")?;
    need(p.uint("m")? >= 1, "m must be >= 1")?;
    need(p.uint("k")? >= 1, "k must be >= 1")?;
    unit_open(&p.num("x")?, "x")
}

pub fn check_itli1j(p: &Params) -> Result<()> {
    p.uint("j")?;
    unit_open(&p.num("x")?, "x")
}

pub fn check_mplrs(p: &Params) -> Result<()> {
    p.uint("r")?;
    need(p.uint("k")? >= 2, "k must be >= 2")?;
    unit_open(&p.num("x")?, "x")
}

pub fn check_fiit1(p: &Params) -> Result<()> {
    check_mnx(p)?;
    need(matches!(p.int("odd")?, 0 | 1), "odd must be 0 or 1")
}

pub fn check_tkx(p: &Params) -> Result<()> {
    let (k, m) = (p.comp("k")?, p.comp("m")?);
    positive(&k, "k")?;
    positive(&m, "m")?;
    unit_open(&p.num("x")?, "x")
}

pub fn check_tkxx(p: &Params) -> Result<()> {
    let (k, m) = (p.comp("k")?, p.comp("m")?);
    positive(&k, "k")?;
    positive(&m, "m")?;
    need(m[m.len() - 1] >= 2, "m_p must be >= 2")
}

pub fn check_intx_mmvs(p: &Params) -> Result<()> {
    check_mnx(p)?;
    let e = p.signs("e")?;
    signs_ok(&e, "e")?;
    need(e.len() == p.comp("m")?.len(), "e must match m in length")
}

fn check_kym_common(p: &Params) -> Result<()> {
    let (k, eta, m, e) = (p.comp("k")?, p.signs("eta")?, p.comp("m")?, p.signs("e")?);
    positive(&k, "k")?;
    positive(&m, "m")?;
    signs_ok(&eta, "eta")?;
    signs_ok(&e, "e")?;
    need(eta.len() == k.len(), "eta must match k in length")?;
    need(e.len() == m.len(), "e must match m in length")
}

pub fn check_intx_kymmvs(p: &Params) -> Result<()> {
    check_kym_common(p)?;
    unit_open(&p.num("x")?, "x")
}

pub fn check_cor(p: &Params) -> Result<()> {
    check_kym_common(p)?;
    let m = p.comp("m")?;
    need(m[m.len() - 1] >= 2, "m_p must be >= 2")
}

// ---------------------------------------------------------------------------
// generators
// ---------------------------------------------------------------------------

fn small(b: &Bounds, cap: u32) -> u32 {
    b.weight.min(cap)
}

fn mnx(rng: &mut ChaCha8Rng, b: &Bounds, n_cap: u64) -> Params {
    let m = gen::comp(rng, 1, b.depth, small(b, 6), 1);
    Params::new()
        .with("m", Param::Comp(m))
        .with("n", Param::Int(gen::int(rng, 1, b.n.min(n_cap) as i64)))
        .with("x", Param::Num(gen::interior_x(rng)))
}

pub fn gen_fii1(rng: &mut ChaCha8Rng, b: &Bounds, _case: u64) -> Params {
    mnx(rng, b, 8)
}

pub fn gen_fii2(rng: &mut ChaCha8Rng, b: &Bounds, _case: u64) -> Params {
    let p = mnx(rng, b, 8);
    let d = p.comp("m").map(|m| m.len()).unwrap_or(1);
    let choices = [gen::q(1, 2), gen::q(3, 5), gen::q(4, 5), Q::one(), gen::q(-1, 2), gen::q(-3, 5)];
    let sig = (0..d).map(|_| gen::pick(rng, &choices)).collect();
    p.with("sigma", Param::Labels(sig))
}

pub fn gen_int_g(rng: &mut ChaCha8Rng, b: &Bounds, _case: u64) -> Params {
    let d = gen::int(rng, 1, b.depth.min(3) as i64) as usize;
    let mut m = vec![gen::int(rng, 1, 2) as u32];
    for _ in 1..d {
        m.push(gen::int(rng, 0, 2) as u32);
    }
    let low = [gen::q(-1, 2), Q::zero(), gen::q(1, 10), gen::q(1, 5), gen::q(3, 10)];
    let high = [gen::q(2, 5), gen::q(1, 2), gen::q(3, 5), gen::q(7, 10)];
    let mut a: Vec<Q> = (1..d).map(|_| gen::pick(rng, &low)).collect();
    a.push(gen::pick(rng, &high));
    Params::new()
        .with("m", Param::Comp(m))
        .with("a", Param::Labels(a))
        .with("n", Param::Int(gen::int(rng, 1, b.n.min(5) as i64)))
}

pub fn gen_imp2(rng: &mut ChaCha8Rng, b: &Bounds, _case: u64) -> Params {
    mnx(rng, b, 8)
}

pub fn gen_kymzv1(rng: &mut ChaCha8Rng, b: &Bounds, _case: u64) -> Params {
    let k = gen::comp(rng, 1, b.depth.min(2), small(b, 3), 1);
    let m = gen::comp(rng, 1, b.depth.min(2), small(b, 3), 1);
    let sig_c = [gen::q(1, 2), gen::q(3, 5), gen::q(7, 10), gen::q(4, 5)];
    let eps_c = [gen::q(1, 5), gen::q(1, 4), gen::q(3, 10), gen::q(2, 5), gen::q(9, 20)];
    let eps = k.iter().map(|_| gen::pick(rng, &eps_c)).collect();
    let sig = m.iter().map(|_| gen::pick(rng, &sig_c)).collect();
    let x = if gen::int(rng, 0, 3) == 0 { Q::one() } else { gen::interior_x(rng) };
    Params::new()
        .with("k", Param::Comp(k))
        .with("m", Param::Comp(m))
        .with("x", Param::Num(x))
        .with("eps", Param::Labels(eps))
        .with("sigma", Param::Labels(sig))
}

pub fn gen_kymzv2(rng: &mut ChaCha8Rng, b: &Bounds, _case: u64) -> Params {
    let k = gen::comp(rng, 1, b.depth.min(2), small(b, 3), 1);
    let m = gen::comp(rng, 1, b.depth.min(2), small(b, 3), 1);
    let x = if m[m.len() - 1] >= 2 && gen::int(rng, 0, 2) == 0 { Q::one() } else { gen::interior_x(rng) };
    Params::new()
        .with("k", Param::Comp(k))
        .with("m", Param::Comp(m))
        .with("x", Param::Num(x))
}

pub fn gen_kymzv3(rng: &mut ChaCha8Rng, b: &Bounds, _case: u64) -> Params {
    let d = gen::int(rng, 1, b.depth.min(2) as i64) as usize;
    let mut m = vec![gen::int(rng, 1, 2) as u32];
    for _ in 1..d {
        m.push(gen::int(rng, 0, 1) as u32);
    }
    Params::new()
        .with("m", Param::Comp(m))
        .with("k", Param::Int(gen::int(rng, 1, 2)))
        .with("r", Param::Int(gen::int(rng, 1, 2)))
        .with("x", Param::Num(gen::interior_x(rng)))
}

pub fn gen_mplr2(rng: &mut ChaCha8Rng, _b: &Bounds, _case: u64) -> Params {
    Params::new()
        .with("p", Param::Int(gen::int(rng, 0, 2)))
        .with("k", Param::Int(gen::int(rng, 1, 3)))
        .with("r", Param::Int(gen::int(rng, 0, 1)))
        .with("x", Param::Num(gen::interior_x(rng)))
}

pub fn gen_mplr3(rng: &mut ChaCha8Rng, _b: &Bounds, _case: u64) -> Params {
    Params::new()
        .with("m", Param::Int(gen::int(rng, 1, 2)))
        .with("k", Param::Int(gen::int(rng, 1, 2)))
        .with("r", Param::Int(gen::int(rng, 0, 1)))
        .with("x", Param::Num(gen::interior_x(rng)))
}

pub fn gen_itli1j(rng: &mut ChaCha8Rng, b: &Bounds, _case: u64) -> Params {
    Params::new()
        .with("j", Param::Int(gen::int(rng, 0, b.weight.min(6) as i64)))
        .with("x", Param::Num(gen::interior_x(rng)))
}

pub fn gen_mplrs(rng: &mut ChaCha8Rng, _b: &Bounds, _case: u64) -> Params {
    Params::new()
        .with("k", Param::Int(gen::int(rng, 2, 4)))
        .with("r", Param::Int(gen::int(rng, 0, 2)))
        .with("x", Param::Num(gen::interior_x(rng)))
}

pub fn gen_fiit1(rng: &mut ChaCha8Rng, b: &Bounds, case: u64) -> Params {
    mnx(rng, b, 6).with("odd", Param::Int((case % 2) as i64))
}

pub fn gen_tkx(rng: &mut ChaCha8Rng, b: &Bounds, _case: u64) -> Params {
    let k = gen::comp(rng, 1, b.depth.min(2), small(b, 3), 1);
    let m = gen::comp(rng, 1, b.depth.min(2), small(b, 3), 1);
    Params::new()
        .with("k", Param::Comp(k))
        .with("m", Param::Comp(m))
        .with("x", Param::Num(gen::interior_x(rng)))
}

pub fn gen_tkxx(rng: &mut ChaCha8Rng, b: &Bounds, _case: u64) -> Params {
    let k = gen::comp(rng, 1, b.depth.min(2), small(b, 3), 1);
    let mut m = gen::comp(rng, 1, b.depth.min(2), small(b, 4), 1);
    let last = m.len() - 1;
    m[last] = m[last].max(2);
    Params::new().with("k", Param::Comp(k)).with("m", Param::Comp(m))
}

pub fn gen_intx_mmvs(rng: &mut ChaCha8Rng, b: &Bounds, case: u64) -> Params {
    let p = mnx(rng, b, 6);
    let d = p.comp("m").map(|m| m.len()).unwrap_or(1);
    p.with("e", Param::Signs(gen::signs(rng, d, case)))
}

fn kym(rng: &mut ChaCha8Rng, b: &Bounds, case: u64, last_min: u32) -> Params {
    let k = gen::comp(rng, 1, b.depth.min(2), small(b, 3), 1);
    let mut m = gen::comp(rng, 1, b.depth.min(2), small(b, 3), 1);
    let last = m.len() - 1;
    m[last] = m[last].max(last_min);
    let s = gen::signs(rng, k.len() + m.len(), case);
    let (eta, e) = s.split_at(k.len());
    Params::new()
        .with("k", Param::Comp(k))
        .with("eta", Param::Signs(eta.to_vec()))
        .with("m", Param::Comp(m))
        .with("e", Param::Signs(e.to_vec()))
}

pub fn gen_intx_kymmvs(rng: &mut ChaCha8Rng, b: &Bounds, case: u64) -> Params {
    let x = gen::interior_x(rng);
    kym(rng, b, case, 1).with("x", Param::Num(x))
}

pub fn gen_cor(rng: &mut ChaCha8Rng, b: &Bounds, case: u64) -> Params {
    kym(rng, b, case, 2)
}
