//! Random parameter helpers for the fuzzer.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::error::{MzvError, Result};
use crate::num::Q;

/// Size limits for generated instances.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bounds {
    pub weight: u32,
    pub depth: usize,
    pub n: u64,
    pub poset: usize,
}

impl Default for Bounds {
    fn default() -> Bounds {
        Bounds { weight: 5, depth: 3, n: 6, poset: 6 }
    }
}

impl Bounds {
    /// `weight=5,depth=3,n=6,poset=6`; missing keys keep their defaults.
    pub fn parse(s: &str) -> Result<Bounds> {
        let mut b = Bounds::default();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (k, v) = part
                .split_once('=')
                .ok_or_else(|| MzvError::Parse(format!("bound {part:?} is not key=value")))?;
            let v: u64 = v.trim().parse().map_err(|_| MzvError::Parse(format!("bad bound value {v:?}")))?;
            if v == 0 {
                return Err(MzvError::Invalid(format!("bound {k} must be >= 1")));
            }
            match k.trim() {
                "weight" => b.weight = v.min(12) as u32,
                "depth" => b.depth = v.min(6) as usize,
                "n" => b.n = v.min(200),
                "poset" => b.poset = v.min(crate::posets::MAX_ELEMENTS as u64) as usize,
                other => return Err(MzvError::Parse(format!("unknown bound {other:?}"))),
            }
        }
        Ok(b)
    }
}

/// Composition of depth in `[dmin, dmax]`, parts `>= min_part`, total `<= weight`.
pub fn comp(rng: &mut ChaCha8Rng, dmin: usize, dmax: usize, weight: u32, min_part: u32) -> Vec<u32> {
    let dmax = dmax.max(dmin);
    let d = rng.gen_range(dmin..=dmax);
    let floor = min_part * d as u32;
    if weight <= floor {
        return vec![min_part; d];
    }
    let mut parts = vec![min_part; d];
    let extra = rng.gen_range(0..=weight - floor);
    for _ in 0..extra {
        let i = rng.gen_range(0..d);
        parts[i] += 1;
    }
    parts
}

pub fn pick<T: Clone>(rng: &mut ChaCha8Rng, v: &[T]) -> T {
    v[rng.gen_range(0..v.len())].clone()
}

pub fn q(p: i64, d: i64) -> Q {
    Q::ratio(p, d)
}

/// Real points well inside (0, 1).
pub fn interior_x(rng: &mut ChaCha8Rng) -> Q {
    let (p, d) = pick(rng, &[(1, 5), (3, 10), (2, 5), (1, 2), (3, 5), (7, 10)]);
    q(p, d)
}

pub fn sign(rng: &mut ChaCha8Rng) -> i32 {
    if rng.gen_bool(0.5) {
        1
    } else {
        -1
    }
}

/// Signs of length `len`; short vectors cycle through every pattern with
/// the case index so small budgets still see all of them.
pub fn signs(rng: &mut ChaCha8Rng, len: usize, case: u64) -> Vec<i32> {
    if len <= 4 {
        (0..len).map(|i| if case >> i & 1 == 1 { -1 } else { 1 }).collect()
    } else {
        (0..len).map(|_| sign(rng)).collect()
    }
}

pub fn int(rng: &mut ChaCha8Rng, lo: i64, hi: i64) -> i64 {
    rng.gen_range(lo..=hi.max(lo))
}
