//! Nested Gauss-Legendre quadrature in `f64`, kept apart from the series
//! code as an independent check.
//!
//! `F_j(t) = int_L^t f_j(u) F_{j-1}(u) du` is tabulated at every node of a
//! mesh graded geometrically (ratio 1/2) toward both endpoints; inside a
//! panel the partial integrals come from the spectral integration matrix.
//! The error estimate compares two rule orders and is heuristic.

use super::{IntegralWord, OneForm};
use crate::error::{MzvError, Result};
use crate::num::{Cx, Scalar};

#[derive(Clone, Copy, Debug, Default)]
struct C64 {
    re: f64,
    im: f64,
}

impl C64 {
    fn new(re: f64, im: f64) -> C64 {
        C64 { re, im }
    }
    fn add(self, o: C64) -> C64 {
        C64::new(self.re + o.re, self.im + o.im)
    }
    fn mul(self, o: C64) -> C64 {
        C64::new(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)
    }
    fn scale(self, s: f64) -> C64 {
        C64::new(self.re * s, self.im * s)
    }
    fn recip(self) -> C64 {
        let n = self.re * self.re + self.im * self.im;
        C64::new(self.re / n, -self.im / n)
    }
    fn abs(self) -> f64 {
        self.re.hypot(self.im)
    }
}

const MAX_LEN: usize = 8;
const GRADING_LEVELS: i32 = 44;

/// Gauss-Legendre nodes and weights on [-1, 1].
fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    for i in 0..n {
        let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, dp) = legendre(n, z);
            let dz = p / dp;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        let (_, dp) = legendre(n, z);
        x[i] = -z;
        w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
    }
    (x, w)
}

/// `P_n(z)` and its derivative.
fn legendre(n: usize, z: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, z);
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let p2 = ((2 * k - 1) as f64 * z * p1 - (k - 1) as f64 * p0) / k as f64;
        p0 = p1;
        p1 = p2;
    }
    (p1, n as f64 * (z * p1 - p0) / (z * z - 1.0))
}

fn legendre_all(n: usize, z: f64) -> Vec<f64> {
    let mut p = vec![1.0; n + 1];
    if n >= 1 {
        p[1] = z;
    }
    for k in 2..=n {
        p[k] = ((2 * k - 1) as f64 * z * p[k - 1] - (k - 1) as f64 * p[k - 2]) / k as f64;
    }
    p
}

/// `S[i][j] = int_{-1}^{x_i} l_j(u) du` for the Lagrange basis on the nodes.
fn integration_matrix(x: &[f64], w: &[f64]) -> Vec<Vec<f64>> {
    let n = x.len();
    let px: Vec<Vec<f64>> = x.iter().map(|&z| legendre_all(n, z)).collect();
    let mut s = vec![vec![0.0; n]; n];
    for i in 0..n {
        let pi = &px[i];
        let mut ik = vec![0.0; n];
        ik[0] = x[i] + 1.0;
        for k in 1..n {
            ik[k] = (pi[k + 1] - pi[k - 1]) / (2 * k + 1) as f64;
        }
        for j in 0..n {
            let mut acc = 0.0;
            for k in 0..n {
                acc += (2 * k + 1) as f64 / 2.0 * px[j][k] * ik[k];
            }
            s[i][j] = w[j] * acc;
        }
    }
    s
}

struct Form64 {
    poly: Vec<(i32, C64)>,
    poles: Vec<(C64, C64)>,
}

impl Form64 {
    fn new(f: &OneForm) -> Form64 {
        let pf = f.partial_fractions();
        let c = |q: &crate::num::Q| C64::new(q.re.to_f64(), q.im.to_f64());
        Form64 {
            poly: pf.poly.iter().map(|(d, a)| (*d as i32, c(a))).collect(),
            poles: pf.poles.iter().map(|(a, p)| (c(a), c(p))).collect(),
        }
    }
    fn at(&self, t: f64) -> C64 {
        let mut v = C64::default();
        for &(d, a) in &self.poly {
            v = v.add(a.scale(t.powi(d)));
        }
        for &(a, p) in &self.poles {
            v = v.add(a.mul(C64::new(p.re - t, p.im).recip()));
        }
        v
    }
}

fn breakpoints(l: f64, u: f64) -> Vec<f64> {
    let len = u - l;
    let mut b = vec![l];
    for j in (1..=GRADING_LEVELS).rev() {
        b.push(l + len * 2f64.powi(-j));
    }
    for j in 2..=GRADING_LEVELS {
        b.push(u - len * 2f64.powi(-j));
    }
    b.push(u);
    b
}

fn nested(forms: &[Form64], l: f64, u: f64, order: usize) -> C64 {
    let (gx, gw) = gauss_legendre(order);
    let s = integration_matrix(&gx, &gw);
    let bp = breakpoints(l, u);
    let mut nodes = Vec::with_capacity(bp.len() * order);
    for p in bp.windows(2) {
        let (mid, half) = ((p[0] + p[1]) / 2.0, (p[1] - p[0]) / 2.0);
        for &z in &gx {
            nodes.push(mid + half * z);
        }
    }
    let mut f = vec![C64::new(1.0, 0.0); nodes.len()];
    let mut total = C64::default();
    for form in forms {
        let g: Vec<C64> = nodes.iter().zip(&f).map(|(&t, &fv)| form.at(t).mul(fv)).collect();
        let mut cum = C64::default();
        let mut next = vec![C64::default(); nodes.len()];
        for (pi, p) in bp.windows(2).enumerate() {
            let half = (p[1] - p[0]) / 2.0;
            let off = pi * order;
            for i in 0..order {
                let mut acc = C64::default();
                for j in 0..order {
                    acc = acc.add(g[off + j].scale(s[i][j]));
                }
                next[off + i] = cum.add(acc.scale(half));
            }
            let mut tot = C64::default();
            for j in 0..order {
                tot = tot.add(g[off + j].scale(gw[j]));
            }
            cum = cum.add(tot.scale(half));
        }
        total = cum;
        f = next;
    }
    total
}

/// Quadrature value of a word with a heuristic error estimate.
pub fn eval_word(w: &IntegralWord, target_err: f64) -> Result<Scalar> {
    if w.forms.len() > MAX_LEN {
        return Err(MzvError::SizeGuard(format!("quadrature limited to {MAX_LEN} forms")));
    }
    w.check_admissible()?;
    let (Some(l), Some(u)) = (w.lower.as_real(), w.upper.as_real()) else {
        return Err(MzvError::Unsupported("complex integration limits".into()));
    };
    let (lf, uf) = (l.to_f64(), u.to_f64());
    let (lo, hi) = if l < u { (l, u) } else { (u, l) };
    for f in &w.forms {
        for p in f.poles() {
            if p.is_real() && &p.re > lo && &p.re < hi {
                return Err(MzvError::Domain(format!("singularity at {p} inside the interval")));
            }
        }
    }
    if w.forms.is_empty() {
        return Ok(Scalar::approx(Cx::one(53), 0.0, 53));
    }
    if lf == uf {
        return Ok(Scalar::approx(Cx::zero(53), 0.0, 53));
    }
    let forms: Vec<Form64> = w.forms.iter().map(Form64::new).collect();
    let a = nested(&forms, lf, uf, 20);
    let b = nested(&forms, lf, uf, 30);
    let err = C64::new(b.re - a.re, b.im - a.im).abs() + 1e-14 * (1.0 + b.abs()) * forms.len() as f64;
    if !err.is_finite() || err > target_err {
        return Err(MzvError::NoConvergence(format!(
            "quadrature estimate {err:.2e} above target {target_err:.2e}"
        )));
    }
    let v = Cx::new(rug::Float::with_val(53, b.re), rug::Float::with_val(53, b.im));
    Ok(Scalar::approx(v, err, 53))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::Q;

    #[test]
    fn log_two() {
        let w = IntegralWord::new(vec![OneForm::k1()], Q::zero(), Q::ratio(1, 2)).unwrap();
        let v = eval_word(&w, 1e-12).unwrap();
        assert!((v.re_f64() - 2f64.ln()).abs() < 1e-13);
    }

    #[test]
    fn zeta_two_with_endpoint_singularity() {
        let w = IntegralWord::unit(vec![OneForm::k1(), OneForm::Omega0]);
        let v = eval_word(&w, 1e-9).unwrap();
        assert!((v.re_f64() - std::f64::consts::PI.powi(2) / 6.0).abs() < 1e-10);
    }
}
