//! Compositions, label vectors, Hoffman duality and the sign maps.

use std::fmt;

use rug::Rational;

use crate::error::{MzvError, Result};
use crate::num::{parse_q_list, Q};

/// Finite sequence of positive integers.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Composition(Vec<u32>);

impl Composition {
    pub fn new(parts: Vec<u32>) -> Result<Composition> {
        if parts.contains(&0) {
            return Err(MzvError::Invalid(format!(
                "composition parts must be >= 1, got {parts:?}"
            )));
        }
        Ok(Composition(parts))
    }
    pub fn empty() -> Composition {
        Composition(Vec::new())
    }
    /// The block `1_d`.
    pub fn ones(d: usize) -> Composition {
        Composition(vec![1; d])
    }
    pub fn parts(&self) -> &[u32] {
        &self.0
    }
    pub fn into_parts(self) -> Vec<u32> {
        self.0
    }
    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }
    pub fn depth(&self) -> usize {
        self.0.len()
    }
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
    pub fn reversed(&self) -> Composition {
        Composition(self.0.iter().rev().copied().collect())
    }
    pub fn concat(&self, o: &Composition) -> Composition {
        let mut v = self.0.clone();
        v.extend_from_slice(&o.0);
        Composition(v)
    }

    /// `(k_i, ..., k_j)` (forward) or `(k_j, ..., k_i)` (backward), 1-based and
    /// inclusive; empty when `i > j`.
    pub fn slice(&self, mode: SliceMode, i: usize, j: usize) -> Result<Composition> {
        if i > j {
            if i == 0 || i > self.depth() + 1 || j > self.depth() {
                return Err(MzvError::Invalid(format!(
                    "slice ({i},{j}) out of range for depth {}",
                    self.depth()
                )));
            }
            return Ok(Composition::empty());
        }
        if i == 0 || j > self.depth() {
            return Err(MzvError::Invalid(format!(
                "slice ({i},{j}) out of range for depth {}",
                self.depth()
            )));
        }
        let s = &self.0[i - 1..j];
        Ok(match mode {
            SliceMode::Forward => Composition(s.to_vec()),
            SliceMode::Backward => Composition(s.iter().rev().copied().collect()),
        })
    }

    pub fn parse(s: &str) -> Result<Composition> {
        let t = s.trim();
        if t.is_empty() || t == "()" {
            return Ok(Composition::empty());
        }
        let parts = t
            .trim_matches(|c| c == '(' || c == ')')
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<u32>()
                    .map_err(|_| MzvError::Parse(format!("bad composition part {p:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Composition::new(parts)
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", s.join(","))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SliceMode {
    Forward,
    Backward,
}

/// Composition that may contain zero parts; only identity evaluators that
/// pad indices with zero blocks consume it.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PaddedComposition(pub Vec<u32>);

impl PaddedComposition {
    /// `0_m`.
    pub fn zeros(m: usize) -> PaddedComposition {
        PaddedComposition(vec![0; m])
    }
    /// `e_m = (0_m, 1, 0_{k-1})`.
    pub fn unit(m: usize, k: usize) -> PaddedComposition {
        let mut v = vec![0; m + k];
        v[m] = 1;
        PaddedComposition(v)
    }
    /// Entrywise sum with a composition of the same length; the result has
    /// all parts >= 1 whenever the composition does.
    pub fn add_to(&self, k: &Composition) -> Result<Composition> {
        if self.0.len() != k.depth() {
            return Err(MzvError::LengthMismatch("padded composition".into()));
        }
        Composition::new(self.0.iter().zip(k.parts()).map(|(a, b)| a + b).collect())
    }
}

/// Admissibility: without labels `k_1 > 1`; with labels `(k_1, z_1) != (1, 1)`.
pub fn admissible(k: &Composition, z: Option<&[Q]>) -> Result<bool> {
    match z {
        None => Ok(!k.is_empty() && k.parts()[0] > 1),
        Some(z) => {
            if z.len() != k.depth() {
                return Err(MzvError::LengthMismatch(format!(
                    "index depth {} vs {} labels",
                    k.depth(),
                    z.len()
                )));
            }
            if k.is_empty() {
                return Ok(true);
            }
            Ok(!(k.parts()[0] == 1 && z[0].is_one()))
        }
    }
}

/// Hoffman dual: partial-sum set complemented inside `{1, ..., |m|-1}`.
pub fn hoffman_dual(m: &Composition) -> Result<Composition> {
    if m.is_empty() {
        return Err(MzvError::Invalid("Hoffman dual of the empty composition".into()));
    }
    let w = m.weight();
    let mut cut = vec![false; w as usize + 1];
    let mut acc = 0;
    for &p in &m.parts()[..m.depth() - 1] {
        acc += p;
        cut[acc as usize] = true;
    }
    let mut out = Vec::new();
    let mut last = 0;
    for i in 1..w {
        if !cut[i as usize] {
            out.push(i - last);
            last = i;
        }
    }
    out.push(w - last);
    Composition::new(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SignMap {
    P,
    Q,
    R,
    U,
    V,
    W,
    Y,
}

impl SignMap {
    pub fn parse(s: &str) -> Result<SignMap> {
        Ok(match s.trim() {
            "p" => SignMap::P,
            "q" => SignMap::Q,
            "r" => SignMap::R,
            "u" => SignMap::U,
            "v" => SignMap::V,
            "w" => SignMap::W,
            "y" => SignMap::Y,
            o => return Err(MzvError::Parse(format!("unknown sign map {o:?}"))),
        })
    }
}

/// Output of a sign map. `zero_marker` records the convention that `p`, `q`,
/// `r` of the empty vector is `0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transformed {
    pub entries: Vec<Q>,
    pub zero_marker: bool,
}

fn prod(v: &[Q]) -> Q {
    v.iter().fold(Q::one(), |a, b| a.mul(b))
}

/// The maps p, q, r (signs) and u, v, w, y (nonzero entries).
pub fn sign_transform(kind: SignMap, e: &[Q]) -> Result<Transformed> {
    if e.iter().any(Q::is_zero) {
        return Err(MzvError::Invalid("sign map applied to a zero entry".into()));
    }
    let r = e.len();
    let plain = |entries| Ok(Transformed { entries, zero_marker: false });
    match kind {
        SignMap::P | SignMap::Q | SignMap::R => {
            if !e.iter().all(Q::is_sign) {
                return Err(MzvError::Invalid("p, q, r take entries in {1, -1}".into()));
            }
            if r == 0 {
                return Ok(Transformed { entries: Vec::new(), zero_marker: true });
            }
            let v = match kind {
                SignMap::P => (0..r).map(|i| prod(&e[i..])).collect(),
                SignMap::Q => (0..r).map(|i| prod(&e[..r - i])).collect(),
                _ => (0..r).map(|i| prod(&e[..=i])).collect(),
            };
            plain(v)
        }
        SignMap::U => {
            let mut v: Vec<Q> = Vec::with_capacity(r);
            for i in 0..r.saturating_sub(1) {
                v.push(e[i].div(&e[i + 1])?);
            }
            if r > 0 {
                v.push(e[r - 1].clone());
            }
            plain(v)
        }
        SignMap::V => {
            if r == 0 {
                return Err(MzvError::Invalid("v of the empty vector".into()));
            }
            let v = (0..r - 1).map(|i| e[i].div(&e[i + 1])).collect::<Result<_>>()?;
            plain(v)
        }
        SignMap::W => {
            let mut v = Vec::with_capacity(r);
            for i in 0..r {
                v.push(if i == 0 { e[0].clone() } else { e[i].div(&e[i - 1])? });
            }
            plain(v)
        }
        SignMap::Y => {
            if r == 0 {
                return Err(MzvError::Invalid("y of the empty vector".into()));
            }
            let v = (1..r).map(|i| e[i].div(&e[i - 1])).collect::<Result<_>>()?;
            plain(v)
        }
    }
}

/// Entrywise `a * e`.
pub fn scalar_scale(a: &Q, e: &[Q]) -> Vec<Q> {
    e.iter().map(|x| a.mul(x)).collect()
}

// Sign-vector helpers on plain integers, used by the identity evaluators.

pub fn p_signs(e: &[i32]) -> Vec<i32> {
    (0..e.len()).map(|i| e[i..].iter().product()).collect()
}
pub fn q_signs(e: &[i32]) -> Vec<i32> {
    let r = e.len();
    (0..r).map(|i| e[..r - i].iter().product()).collect()
}
pub fn r_signs(e: &[i32]) -> Vec<i32> {
    (0..e.len()).map(|i| e[..=i].iter().product()).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LabelKind {
    Sign,
    SignOrZeroFirst,
    Disk,
}

/// Labels attached to a composition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabelVector {
    pub entries: Vec<Q>,
    pub kind: LabelKind,
}

impl LabelVector {
    pub fn new(entries: Vec<Q>, kind: LabelKind) -> Result<LabelVector> {
        for (i, z) in entries.iter().enumerate() {
            let ok = match kind {
                LabelKind::Sign => z.is_sign(),
                LabelKind::SignOrZeroFirst => z.is_sign() || (i == 0 && z.is_zero()),
                LabelKind::Disk => z.norm2() <= 1,
            };
            if !ok {
                return Err(MzvError::Invalid(format!(
                    "label {z} at position {} violates {kind:?}",
                    i + 1
                )));
            }
        }
        Ok(LabelVector { entries, kind })
    }
    pub fn ones(d: usize) -> LabelVector {
        LabelVector { entries: vec![Q::one(); d], kind: LabelKind::Sign }
    }
    pub fn parse(s: &str, kind: LabelKind) -> Result<LabelVector> {
        LabelVector::new(parse_q_list(s)?, kind)
    }
    pub fn len(&self) -> usize {
        self.entries.len()
    }
    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
    pub fn check_len(&self, k: &Composition) -> Result<()> {
        if self.len() != k.depth() {
            return Err(MzvError::LengthMismatch(format!(
                "index depth {} vs {} labels",
                k.depth(),
                self.len()
            )));
        }
        Ok(())
    }
}

/// Canonical text for a label vector: `+-+` for signs, comma list otherwise.
pub fn format_labels(v: &[Q]) -> String {
    if !v.is_empty() && v.iter().all(Q::is_sign) {
        return v.iter().map(|z| if z.is_one() { '+' } else { '-' }).collect();
    }
    v.iter().map(|z| z.to_string()).collect::<Vec<_>>().join(",")
}

/// Entries of a real rational vector as `Q`.
pub fn q_vec(v: &[Rational]) -> Vec<Q> {
    v.iter().cloned().map(Q::real).collect()
}

pub fn sign_q(e: &[i32]) -> Vec<Q> {
    e.iter().map(|&s| Q::int(s as i64)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(v: &[u32]) -> Composition {
        Composition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn dual_examples() {
        assert_eq!(hoffman_dual(&c(&[1, 1, 2, 1])).unwrap(), c(&[3, 2]));
        assert_eq!(hoffman_dual(&c(&[1, 2, 1, 1])).unwrap(), c(&[2, 3]));
        assert_eq!(hoffman_dual(&c(&[1])).unwrap(), c(&[1]));
        assert!(hoffman_dual(&Composition::empty()).is_err());
    }

    #[test]
    fn slices() {
        let k = c(&[5, 4, 3, 2]);
        assert_eq!(k.slice(SliceMode::Forward, 2, 3).unwrap(), c(&[4, 3]));
        assert_eq!(k.slice(SliceMode::Backward, 2, 3).unwrap(), c(&[3, 4]));
        assert!(c(&[5, 4]).slice(SliceMode::Forward, 2, 1).unwrap().is_empty());
        assert!(k.slice(SliceMode::Forward, 0, 2).is_err());
        assert!(k.slice(SliceMode::Forward, 2, 5).is_err());
    }

    #[test]
    fn admissibility_examples() {
        assert!(admissible(&c(&[2, 1]), None).unwrap());
        assert!(!admissible(&c(&[1]), Some(&[Q::one()])).unwrap());
        assert!(admissible(&c(&[1]), Some(&[Q::int(-1)])).unwrap());
        assert!(admissible(&c(&[1, 2]), Some(&[Q::one()])).is_err());
    }

    #[test]
    fn sign_examples() {
        let e = sign_q(&[-1, 1, -1]);
        let p = sign_transform(SignMap::P, &e).unwrap();
        assert_eq!(p.entries, sign_q(&[1, -1, -1]));
        let eta = vec![Q::ratio(1, 2)];
        assert_eq!(sign_transform(SignMap::W, &eta).unwrap().entries, eta);
        let u = sign_transform(SignMap::U, &[Q::ratio(1, 2), Q::ratio(-1, 3)]).unwrap();
        assert_eq!(u.entries, vec![Q::ratio(-3, 2), Q::ratio(-1, 3)]);
        let z = sign_transform(SignMap::Q, &[]).unwrap();
        assert!(z.zero_marker && z.entries.is_empty());
        assert!(sign_transform(SignMap::V, &[]).is_err());
        assert!(sign_transform(SignMap::P, &[Q::ratio(1, 2)]).is_err());
    }

    #[test]
    fn parse_roundtrip() {
        let k = Composition::parse("2,1,1").unwrap();
        assert_eq!(k.to_string(), "2,1,1");
        assert!(Composition::parse("2,0").is_err());
        let l = LabelVector::parse("+-+", LabelKind::Sign).unwrap();
        assert_eq!(format_labels(&l.entries), "+-+");
    }
}
