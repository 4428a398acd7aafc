//! Chen-series evaluation of iterated integrals along a real segment.
//!
//! The path `[L, U]` is cut into pieces on which every form has a power
//! series (plus at most a simple pole at the piece's start). Integrals along
//! each piece are propagated through a state graph: for a word the states
//! are "first i forms used", for a poset they are order ideals. The last
//! piece is expanded backwards from `U`, so singular forms at either end
//! contribute only `alpha/s` terms. Every piece is paired with an `f64`
//! majorant pass that picks the truncation order and bounds the error.

use rug::Rational;

use super::{IntegralWord, OneForm, PartialFractions};
use crate::error::{MzvError, Result};
use crate::num::{round_err, Cx, Ev, Q};

/// Pieces stay within `1/MARGIN` of the distance to the nearest pole.
const MARGIN: f64 = 2.2;
const MAX_PIECES: usize = 4000;
const MAX_TERMS: usize = 40_000;

/// States in topological order with incoming edges `(previous, form)`.
#[derive(Clone, Debug)]
pub struct StateGraph {
    pub size: Vec<u32>,
    pub preds: Vec<Vec<(usize, usize)>>,
    pub start: usize,
    pub end: usize,
}

impl StateGraph {
    pub fn chain(q: usize) -> StateGraph {
        StateGraph {
            size: (0..=q as u32).collect(),
            preds: (0..=q).map(|i| if i == 0 { vec![] } else { vec![(i - 1, i - 1)] }).collect(),
            start: 0,
            end: q,
        }
    }
    pub fn len(&self) -> usize {
        self.size.len()
    }
    pub fn is_empty(&self) -> bool {
        self.size.is_empty()
    }
    fn succs(&self) -> Vec<Vec<(usize, usize)>> {
        let mut s = vec![Vec::new(); self.len()];
        for (to, es) in self.preds.iter().enumerate() {
            for &(from, f) in es {
                s[from].push((to, f));
            }
        }
        s
    }
}

/// Form pulled back to `t = a + s h`, as `alpha/s + sum_m g_m s^m` with the
/// pole part kept as geometric series `c rho^(m+1)`.
struct Pullback {
    alpha: Option<Cx>,
    alpha_abs: f64,
    poles: Vec<(Cx, Cx)>,
    poles_abs: Vec<(f64, f64)>,
    poly: Vec<Cx>,
    poly_abs: Vec<f64>,
    rmax: f64,
}

fn binom_q(n: u32, k: u32) -> Q {
    Q::real(Rational::from(crate::num::binomial(n, k)))
}

fn pullback(pf: &PartialFractions, a: &Rational, h: &Rational, wp: u32) -> Result<Pullback> {
    let aq = Q::real(a.clone());
    let hq = Q::real(h.clone());
    let mut alpha = Q::zero();
    let mut poles = Vec::new();
    let mut poles_abs = Vec::new();
    let mut rmax: f64 = 0.0;
    for (c, p) in &pf.poles {
        if *p == aq {
            alpha = alpha.sub(c);
        } else {
            let rho = hq.div(&p.sub(&aq))?;
            let cr = c.mul(&rho);
            let ra = rho.abs_f64();
            rmax = rmax.max(ra);
            poles_abs.push((cr.abs_f64(), ra));
            poles.push((cr.to_cx(wp), rho.to_cx(wp)));
        }
    }
    let deg = pf.poly.iter().map(|(d, _)| *d).max();
    let mut poly_q = vec![Q::zero(); deg.map_or(0, |d| d as usize + 1)];
    for (d, coef) in &pf.poly {
        for m in 0..=*d {
            let t = coef
                .mul(&binom_q(*d, m))
                .mul(&aq.pow(d - m))
                .mul(&hq.pow(m + 1));
            poly_q[m as usize] = poly_q[m as usize].add(&t);
        }
    }
    Ok(Pullback {
        alpha_abs: alpha.abs_f64(),
        alpha: if alpha.is_zero() { None } else { Some(alpha.to_cx(wp)) },
        poles,
        poles_abs,
        poly_abs: poly_q.iter().map(Q::abs_f64).collect(),
        poly: poly_q.iter().map(|q| q.to_cx(wp)).collect(),
        rmax,
    })
}

/// One propagation pass in `f64` over absolute values; returns the
/// coefficient arrays per state.
fn pass_major(
    pbs: &[Pullback],
    order: &[usize],
    in_edges: &[Vec<(usize, usize)>],
    init: &[f64],
    n: usize,
    check_divergence: bool,
) -> Result<Vec<Vec<f64>>> {
    let mut g: Vec<Vec<f64>> = vec![Vec::new(); in_edges.len()];
    let mut p = vec![0.0f64; n + 1];
    for &s in order {
        let mut cur = vec![0.0f64; n + 1];
        cur[0] = init[s];
        for &(prev, f) in &in_edges[s] {
            let gp = &g[prev];
            if gp.is_empty() {
                continue;
            }
            let pb = &pbs[f];
            if check_divergence && pb.alpha.is_some() && gp[0] > 0.0 {
                return Err(MzvError::Inadmissible(
                    "iterated integral diverges at an endpoint".into(),
                ));
            }
            p.iter_mut().for_each(|x| *x = 0.0);
            for &(cr, r) in &pb.poles_abs {
                let mut h = 0.0;
                for m in 0..n {
                    h = gp[m] + r * h;
                    p[m] += cr * h;
                }
            }
            for (i, &b) in pb.poly_abs.iter().enumerate() {
                if b == 0.0 {
                    continue;
                }
                for m in i..n {
                    p[m] += b * gp[m - i];
                }
            }
            for k in 1..=n {
                cur[k] += (p[k - 1] + pb.alpha_abs * gp[k]) / k as f64;
            }
        }
        g[s] = cur;
    }
    Ok(g)
}

/// The same pass in working precision; returns the value at `s = 1` per state.
fn pass_big(
    pbs: &[Pullback],
    order: &[usize],
    in_edges: &[Vec<(usize, usize)>],
    init: &[Option<Cx>],
    n: usize,
    wp: u32,
) -> Vec<Option<Cx>> {
    let mut g: Vec<Option<Vec<Cx>>> = vec![None; in_edges.len()];
    let mut out: Vec<Option<Cx>> = vec![None; in_edges.len()];
    for &s in order {
        let mut cur: Option<Vec<Cx>> = None;
        if let Some(v) = &init[s] {
            let mut c = vec![Cx::zero(wp); n + 1];
            c[0] = v.clone();
            cur = Some(c);
        }
        for &(prev, f) in &in_edges[s] {
            let Some(gp) = &g[prev] else { continue };
            let pb = &pbs[f];
            let mut p = vec![Cx::zero(wp); n];
            for (cr, r) in &pb.poles {
                let mut h = Cx::zero(wp);
                for m in 0..n {
                    h = gp[m].add(&r.mul(&h));
                    p[m].add_assign(&cr.mul(&h));
                }
            }
            for (i, b) in pb.poly.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                for m in i..n {
                    p[m].add_assign(&b.mul(&gp[m - i]));
                }
            }
            let c = cur.get_or_insert_with(|| vec![Cx::zero(wp); n + 1]);
            for k in 1..=n {
                let mut t = p[k - 1].clone();
                if let Some(al) = &pb.alpha {
                    t.add_assign(&al.mul(&gp[k]));
                }
                c[k].add_assign(&t.div_i64(k as i64));
            }
        }
        if let Some(c) = &cur {
            let mut v = Cx::zero(wp);
            for x in c {
                v.add_assign(x);
            }
            out[s] = Some(v);
        }
        g[s] = cur;
    }
    out
}

/// Integrate one piece `t = a + s h`, `s in [0,1]`, starting from the state
/// values `init` (with error radii `init_err`).
#[allow(clippy::too_many_arguments)]
fn piece(
    pfs: &[PartialFractions],
    a: &Rational,
    h: &Rational,
    order: &[usize],
    in_edges: &[Vec<(usize, usize)>],
    init: &[Option<Cx>],
    init_err: &[f64],
    wp: u32,
) -> Result<(Vec<Option<Cx>>, Vec<f64>)> {
    let pbs = pfs.iter().map(|pf| pullback(pf, a, h, wp)).collect::<Result<Vec<_>>>()?;
    let q = pfs.len();
    let rmax = pbs.iter().map(|p| p.rmax).fold(0.0, f64::max);
    if rmax >= 1.0 {
        return Err(MzvError::NoConvergence("piece reaches a pole".into()));
    }
    let n_hi = if rmax > 0.0 {
        let bits = -rmax.log2();
        (((wp as f64 + 64.0) / bits) * 1.3) as usize + 4 * q + 20
    } else {
        pbs.iter().map(|p| p.poly.len()).sum::<usize>() + q + 2
    };
    if n_hi > MAX_TERMS {
        return Err(MzvError::NoConvergence(format!("piece needs {n_hi} terms")));
    }
    let init_abs: Vec<f64> = init
        .iter()
        .zip(init_err)
        .map(|(v, e)| v.as_ref().map_or(0.0, |x| x.abs_f64()) + e)
        .collect();
    let major = pass_major(&pbs, order, in_edges, &init_abs, n_hi, true)?;
    let err_prop = if init_err.iter().any(|&e| e > 0.0) {
        Some(pass_major(&pbs, order, in_edges, init_err, n_hi, false)?)
    } else {
        None
    };
    let ratio = if rmax > 0.0 {
        let r = rmax * (1.0 + (q as f64 + 2.0) / n_hi as f64);
        if r >= 1.0 {
            return Err(MzvError::NoConvergence("majorant ratio reaches 1".into()));
        }
        r
    } else {
        0.0
    };
    let rem = |g: &Vec<f64>| -> f64 {
        if g.is_empty() || ratio == 0.0 {
            0.0
        } else {
            g[n_hi] * ratio / (1.0 - ratio)
        }
    };
    // pick the truncation order from the summed majorant tails
    let mut tail = vec![0.0f64; n_hi + 1];
    let mut total = 0.0;
    for g in major.iter().filter(|g| !g.is_empty()) {
        let r = rem(g);
        let mut acc = r;
        for m in (0..=n_hi).rev() {
            tail[m] += acc;
            acc += g[m];
        }
        total += acc;
    }
    let target = 2f64.powi(-(wp as i32)) * total.max(1.0);
    let n = (0..=n_hi).find(|&m| tail[m] <= target).ok_or_else(|| {
        MzvError::NoConvergence(format!("series tail {:.3e} above target", tail[n_hi]))
    })?;
    let vals = pass_big(&pbs, order, in_edges, init, n, wp);
    let unit = 2f64.powi(-(wp as i32) + 3);
    let mut errs = vec![0.0; in_edges.len()];
    for s in 0..in_edges.len() {
        let g = &major[s];
        if g.is_empty() {
            continue;
        }
        let mag: f64 = g.iter().sum::<f64>() + rem(g);
        let trunc: f64 = g[n + 1..].iter().sum::<f64>() + rem(g);
        let prop = err_prop.as_ref().map_or(0.0, |ep| ep[s].iter().sum::<f64>() + rem(&ep[s]));
        errs[s] = trunc + prop + mag * (n as f64 + q as f64 + 4.0) * unit;
    }
    Ok((vals, errs))
}

fn dist_to_poles(z: &Rational, poles: &[Q]) -> f64 {
    let zq = Q::real(z.clone());
    poles
        .iter()
        .filter(|p| **p != zq)
        .map(|p| p.sub(&zq).abs_f64())
        .fold(f64::INFINITY, f64::min)
}

fn rat_step(x: f64) -> Rational {
    // round to 48 fractional bits to keep the path points short
    let scaled = (x * 2f64.powi(48)).floor();
    if scaled >= 1.0 {
        Rational::from_f64(scaled).expect("finite") / Rational::from(rug::Integer::from(1u64 << 48))
    } else {
        Rational::from_f64(x).expect("finite")
    }
}

/// Integrate the forms along `[lower, upper]` over a state graph.
pub fn integrate(forms: &[OneForm], graph: &StateGraph, lower: &Q, upper: &Q, wp: u32) -> Result<Ev> {
    if graph.start == graph.end {
        return Ok(Ev::one(wp));
    }
    let (Some(l), Some(u)) = (lower.as_real(), upper.as_real()) else {
        return Err(MzvError::Unsupported("complex integration limits".into()));
    };
    if l == u {
        return Ok(Ev::zero(wp));
    }
    let pfs: Vec<PartialFractions> = forms.iter().map(OneForm::partial_fractions).collect();
    let poles: Vec<Q> = pfs.iter().flat_map(|pf| pf.poles.iter().map(|(_, p)| p.clone())).collect();
    let (lo, hi) = if l < u { (l, u) } else { (u, l) };
    for p in &poles {
        if p.is_real() && &p.re > lo && &p.re < hi {
            return Err(MzvError::Domain(format!(
                "singularity at {p} inside the integration interval"
            )));
        }
    }
    let dir = if l < u { 1 } else { -1 };
    let total = Rational::from(u - l).abs().to_f64();
    let lu = dist_to_poles(u, &poles) / MARGIN;
    let c = if lu >= total {
        l.clone()
    } else {
        u - rat_step(lu) * dir
    };
    let mut pts = vec![l.clone()];
    let mut a = l.clone();
    while a != c {
        let rem = Rational::from(&c - &a).abs().to_f64();
        let step = dist_to_poles(&a, &poles) / MARGIN;
        let b = if step >= rem { c.clone() } else { &a + rat_step(step) * dir };
        pts.push(b.clone());
        a = b;
        if pts.len() > MAX_PIECES {
            return Err(MzvError::NoConvergence("too many path pieces".into()));
        }
    }
    let order: Vec<usize> = (0..graph.len()).collect();
    let ns = graph.len();
    let mut vals: Vec<Option<Cx>> = vec![None; ns];
    vals[graph.start] = Some(Cx::one(wp));
    let mut errs = vec![0.0; ns];
    for w in pts.windows(2) {
        let h = Rational::from(&w[1] - &w[0]);
        let (v, e) = piece(&pfs, &w[0], &h, &order, &graph.preds, &vals, &errs, wp)?;
        vals = v;
        errs = e;
    }
    // last piece, expanded from the upper limit backwards
    let rorder: Vec<usize> = (0..ns).rev().collect();
    let succs = graph.succs();
    let mut rinit: Vec<Option<Cx>> = vec![None; ns];
    rinit[graph.end] = Some(Cx::one(wp));
    let h = Rational::from(&c - u);
    let (rv, re) = piece(&pfs, u, &h, &rorder, &succs, &rinit, &vec![0.0; ns], wp)?;
    let top = graph.size[graph.end];
    let mut out = Ev::zero(wp);
    for s in 0..ns {
        let (Some(x), Some(y)) = (&vals[s], &rv[s]) else { continue };
        let mut t = x.mul(y);
        if (top - graph.size[s]) % 2 == 1 {
            t = t.neg();
        }
        let e = x.abs_f64() * re[s] + y.abs_f64() * errs[s] + errs[s] * re[s] + round_err(&t);
        out.add_assign(&Ev::new(t, e));
    }
    Ok(out)
}

/// Chen-series value of a word.
pub fn eval_word(w: &IntegralWord, wp: u32) -> Result<Ev> {
    if w.forms.is_empty() {
        return Ok(Ev::one(wp));
    }
    w.check_admissible()?;
    integrate(&w.forms, &StateGraph::chain(w.forms.len()), &w.lower, &w.upper, wp)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::{mpl_word, t_word};
    use rug::Float;

    fn zeta(n: u32, wp: u32) -> f64 {
        Float::with_val(wp, Float::zeta_u(n)).to_f64()
    }

    #[test]
    fn zeta_values() {
        let wp = 160;
        let z2 = eval_word(&mpl_word(&[2], &[Q::one()]), wp).unwrap();
        let pi2 = Float::with_val(wp, rug::float::Constant::Pi).square() / 6;
        let d = Float::with_val(wp, &z2.v.re - &pi2);
        assert!(d.to_f64().abs() <= z2.e + 1e-45, "{} {}", d, z2.e);
        assert!(z2.e < 1e-40);
        let z21 = eval_word(&mpl_word(&[2, 1], &[Q::one(), Q::one()]), wp).unwrap();
        assert!((z21.v.re_f64() - zeta(3, wp)).abs() < 1e-15);
    }

    #[test]
    fn pow_and_t() {
        let w = IntegralWord::unit(vec![OneForm::Pow(3)]);
        let v = eval_word(&w, 128).unwrap();
        assert!((v.v.re_f64() - 1.0 / 3.0).abs() < 1e-30);
        let t = eval_word(&t_word(&[1], &Q::ratio(1, 2)), 128).unwrap();
        assert!((t.v.re_f64() - 0.5f64.atanh()).abs() < 1e-15);
    }

    #[test]
    fn divergent_and_interior_poles() {
        let w = IntegralWord::unit(vec![OneForm::k1()]);
        assert!(eval_word(&w, 128).is_err());
        let c = IntegralWord::unit(vec![OneForm::CauchyShift(Q::ratio(1, 2))]);
        assert!(matches!(eval_word(&c, 128), Err(MzvError::Domain(_))));
    }
}
