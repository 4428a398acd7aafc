//! Labeled posets and their integrals.
//!
//! Orientation: an element `x` with `x > y` in the poset has `t_x < t_y`,
//! so poset-maximal elements sit nearest the lower limit 0. Internally the
//! relation is stored the other way round, as "`a` is nearer 0 than `b`",
//! which matches the bottom-to-top reading of the Hasse pictures.
//!
//! The integral is computed in one Chen pass over the lattice of order
//! ideals (sets of elements already placed, counted from 0). Summing the
//! words of all linear extensions gives the same number and is kept as a
//! cross-check.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::error::{MzvError, Result};
use crate::num::{working_prec, Ev, Scalar, Q};
use crate::words::chen::{self, StateGraph};
use crate::words::{IntegralWord, OneForm};

/// Hard cap on the number of elements.
pub const MAX_ELEMENTS: usize = 12;

/// Which label alphabet a poset uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Alphabet {
    /// `{dt/t, s dt/(1-st), n t^(n-1) dt}`
    Kernel,
    /// `{dt/t, 2dt/(1-t^2), 2t dt/(1-t^2)}`
    Omega,
    Mixed,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Admissibility {
    Admissible,
    Inadmissible { witness: u32, reason: String },
}

impl Admissibility {
    pub fn is_admissible(&self) -> bool {
        matches!(self, Admissibility::Admissible)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledPoset {
    ids: Vec<u32>,
    labels: Vec<OneForm>,
    /// Cover pairs `(a, b)`: `a` nearer 0 than `b`, i.e. `b < a` in the poset.
    covers: Vec<(usize, usize)>,
}

impl Default for LabeledPoset {
    fn default() -> Self {
        LabeledPoset::new()
    }
}

fn base_form(f: &OneForm) -> &OneForm {
    match f {
        OneForm::Scaled(_, g) => base_form(g),
        g => g,
    }
}

impl LabeledPoset {
    pub fn new() -> LabeledPoset {
        LabeledPoset { ids: Vec::new(), labels: Vec::new(), covers: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }
    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }
    pub fn labels(&self) -> &[OneForm] {
        &self.labels
    }
    pub fn ids(&self) -> &[u32] {
        &self.ids
    }
    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    /// Add an element, returning its position. Its id is the first unused one.
    pub fn add(&mut self, label: OneForm) -> usize {
        let id = self.ids.iter().max().map_or(0, |m| m + 1);
        self.ids.push(id);
        self.labels.push(label);
        self.labels.len() - 1
    }

    pub fn add_with_id(&mut self, id: u32, label: OneForm) -> Result<usize> {
        if self.ids.contains(&id) {
            return Err(MzvError::Invalid(format!("duplicate element id {id}")));
        }
        label.validate()?;
        self.ids.push(id);
        self.labels.push(label);
        Ok(self.labels.len() - 1)
    }

    pub fn position(&self, id: u32) -> Result<usize> {
        self.ids
            .iter()
            .position(|&i| i == id)
            .ok_or_else(|| MzvError::Invalid(format!("unknown element id {id}")))
    }

    /// Record that `a` lies nearer 0 than `b` (positions). Cycles are
    /// rejected; the relation is kept transitively reduced.
    pub fn place_below(&mut self, a: usize, b: usize) -> Result<()> {
        if a >= self.len() || b >= self.len() || a == b {
            return Err(MzvError::Invalid(format!("bad relation ({a}, {b})")));
        }
        if self.below_masks()[a] >> b & 1 == 1 {
            return Err(MzvError::Invalid(format!(
                "relation between {} and {} would create a cycle",
                self.ids[a], self.ids[b]
            )));
        }
        self.covers.push((a, b));
        self.reduce();
        Ok(())
    }

    /// Record `a < b` in the poset sense (ids), i.e. `b` nearer 0.
    pub fn relate_less(&mut self, a: u32, b: u32) -> Result<()> {
        let (pa, pb) = (self.position(a)?, self.position(b)?);
        self.place_below(pb, pa)
    }

    /// Chain of forms going up from `below` (if given); returns positions,
    /// nearest 0 first.
    pub fn chain_up(&mut self, forms: Vec<OneForm>, below: Option<usize>) -> Vec<usize> {
        let mut prev = below;
        let mut out = Vec::with_capacity(forms.len());
        for f in forms {
            let i = self.add(f);
            if let Some(p) = prev {
                self.covers.push((p, i));
            }
            prev = Some(i);
            out.push(i);
        }
        out
    }

    /// Squiggle: block `j` is a chain `[first_j, O^(l_j - 1)]` whose bottom
    /// lies below the top of block `j-1` (or below `hang_from` for `j = 0`).
    pub fn squiggle(&mut self, blocks: &[(u32, OneForm)], hang_from: Option<usize>) -> Vec<usize> {
        let mut top = hang_from;
        let mut all = Vec::new();
        for (l, f) in blocks {
            let mut forms = vec![f.clone()];
            forms.extend(std::iter::repeat_n(OneForm::Omega0, *l as usize - 1));
            let ids = self.chain_up(forms, None);
            if let Some(t) = top {
                self.covers.push((ids[0], t));
            }
            top = ids.last().copied();
            all.extend(ids);
        }
        self.reduce();
        all
    }

    /// Disjoint union; ids of `other` are shifted past ours.
    pub fn disjoint_union(&self, other: &LabeledPoset) -> LabeledPoset {
        let mut out = self.clone();
        let off = self.len();
        let shift = self.ids.iter().max().map_or(0, |m| m + 1);
        out.ids.extend(other.ids.iter().map(|i| i + shift));
        out.labels.extend(other.labels.iter().cloned());
        out.covers.extend(other.covers.iter().map(|&(a, b)| (a + off, b + off)));
        out
    }

    /// `masks[x]` = set of elements strictly nearer 0 than `x`.
    pub fn below_masks(&self) -> Vec<u64> {
        let n = self.len();
        let mut m = vec![0u64; n];
        for &(a, b) in &self.covers {
            m[b] |= 1 << a;
        }
        loop {
            let mut changed = false;
            for x in 0..n {
                let mut acc = m[x];
                let mut bits = m[x];
                while bits != 0 {
                    let y = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    acc |= m[y];
                }
                if acc != m[x] {
                    m[x] = acc;
                    changed = true;
                }
            }
            if !changed {
                return m;
            }
        }
    }

    fn reduce(&mut self) {
        let m = self.below_masks();
        let n = self.len();
        let mut covers = Vec::new();
        for b in 0..n {
            for a in 0..n {
                if m[b] >> a & 1 == 0 {
                    continue;
                }
                let between = (0..n).any(|c| m[b] >> c & 1 == 1 && m[c] >> a & 1 == 1);
                if !between {
                    covers.push((a, b));
                }
            }
        }
        self.covers = covers;
    }

    pub fn comparable(&self, a: usize, b: usize) -> bool {
        let m = self.below_masks();
        a == b || m[a] >> b & 1 == 1 || m[b] >> a & 1 == 1
    }

    /// `X` with `a < b` adjoined (ids, poset sense): `b` goes nearer 0.
    pub fn adjoin_relation(&self, a: u32, b: u32) -> Result<LabeledPoset> {
        let (pa, pb) = (self.position(a)?, self.position(b)?);
        if self.comparable(pa, pb) {
            return Err(MzvError::Invalid(format!("{a} and {b} are comparable")));
        }
        let mut out = self.clone();
        out.place_below(pb, pa)?;
        Ok(out)
    }

    /// Elements with nothing nearer 0 (poset-maximal).
    pub fn nearest_zero(&self) -> Vec<usize> {
        let m = self.below_masks();
        (0..self.len()).filter(|&x| m[x] == 0).collect()
    }

    /// Elements with nothing nearer 1 (poset-minimal).
    pub fn nearest_one(&self) -> Vec<usize> {
        let m = self.below_masks();
        let all = m.iter().fold(0u64, |a, b| a | b);
        (0..self.len()).filter(|&x| all >> x & 1 == 0).collect()
    }

    pub fn alphabet(&self) -> Alphabet {
        let kernel = self.labels.iter().all(|f| {
            matches!(base_form(f), OneForm::Omega0 | OneForm::Kernel(_) | OneForm::Pow(_))
        });
        let omega = self
            .labels
            .iter()
            .all(|f| matches!(base_form(f), OneForm::Omega0 | OneForm::Wminus | OneForm::Wplus));
        match (kernel, omega) {
            (true, _) => Alphabet::Kernel,
            (false, true) => Alphabet::Omega,
            _ => Alphabet::Mixed,
        }
    }

    /// Convergence at both ends: elements nearest 0 must be regular at 0,
    /// elements nearest 1 regular at 1, and no label may have a pole inside
    /// `(0, 1)`.
    pub fn admissibility(&self) -> Admissibility {
        let bad = |i: usize, reason: String| Admissibility::Inadmissible { witness: self.ids[i], reason };
        for (i, f) in self.labels.iter().enumerate() {
            for p in f.poles() {
                if p.is_real() && p.re > 0 && p.re < 1 {
                    return bad(i, format!("label {f} has a pole at {p} inside (0,1)"));
                }
            }
        }
        for i in self.nearest_zero() {
            if self.labels[i].singular_at(&Q::zero()) {
                return bad(i, format!("maximal element labeled {} is singular at 0", self.labels[i]));
            }
        }
        for i in self.nearest_one() {
            if self.labels[i].singular_at(&Q::one()) {
                return bad(i, format!("minimal element labeled {} is singular at 1", self.labels[i]));
            }
        }
        Admissibility::Admissible
    }

    fn guard(&self) -> Result<()> {
        if self.len() > MAX_ELEMENTS {
            return Err(MzvError::SizeGuard(format!(
                "{} elements exceed the limit of {MAX_ELEMENTS}",
                self.len()
            )));
        }
        Ok(())
    }

    /// Lattice of order ideals as a state graph; forms are indexed by element.
    pub fn ideal_graph(&self) -> Result<StateGraph> {
        self.guard()?;
        let n = self.len();
        let m = self.below_masks();
        let mut states = vec![0u64];
        let mut index: HashMap<u64, usize> = HashMap::from([(0, 0)]);
        let mut preds: Vec<Vec<(usize, usize)>> = vec![vec![]];
        let mut head = 0;
        // breadth first, so states come in order of size
        while head < states.len() {
            let s = states[head];
            for e in 0..n {
                if s >> e & 1 == 0 && m[e] & !s == 0 {
                    let t = s | 1 << e;
                    let ti = *index.entry(t).or_insert_with(|| {
                        states.push(t);
                        preds.push(vec![]);
                        states.len() - 1
                    });
                    preds[ti].push((head, e));
                }
            }
            head += 1;
        }
        let full = if n == 0 { 0 } else { u64::MAX >> (64 - n) };
        Ok(StateGraph {
            size: states.iter().map(|s| s.count_ones()).collect(),
            preds,
            start: 0,
            end: index[&full],
        })
    }

    /// Number of linear extensions, by dynamic programming over ideals.
    pub fn count_linear_extensions(&self) -> Result<u128> {
        let g = self.ideal_graph()?;
        let mut c = vec![0u128; g.len()];
        c[g.start] = 1;
        for s in 0..g.len() {
            for &(p, _) in &g.preds[s] {
                c[s] += c[p];
            }
        }
        Ok(c[g.end])
    }

    /// All linear extensions as element positions, nearest 0 first.
    pub fn linear_extensions(&self) -> Result<Vec<Vec<usize>>> {
        self.guard()?;
        let m = self.below_masks();
        let n = self.len();
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(n);
        fn rec(m: &[u64], n: usize, used: u64, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if cur.len() == n {
                out.push(cur.clone());
                return;
            }
            for e in 0..n {
                if used >> e & 1 == 0 && m[e] & !used == 0 {
                    cur.push(e);
                    rec(m, n, used | 1 << e, cur, out);
                    cur.pop();
                }
            }
        }
        rec(&m, n, 0, &mut cur, &mut out);
        Ok(out)
    }

    /// One word over `[0,1]` per linear extension.
    pub fn extension_words(&self) -> Result<Vec<IntegralWord>> {
        Ok(self
            .linear_extensions()?
            .into_iter()
            .map(|ext| IntegralWord::unit(ext.into_iter().map(|e| self.labels[e].clone()).collect()))
            .collect())
    }

    fn check_eval(&self) -> Result<()> {
        self.guard()?;
        for f in &self.labels {
            f.validate()?;
        }
        if let Admissibility::Inadmissible { witness, reason } = self.admissibility() {
            return Err(MzvError::Inadmissible(format!("element {witness}: {reason}")));
        }
        Ok(())
    }

    /// The integral at working precision `wp`.
    pub fn eval_ev(&self, wp: u32) -> Result<Ev> {
        if self.is_empty() {
            return Ok(Ev::one(wp));
        }
        self.check_eval()?;
        chen::integrate(&self.labels, &self.ideal_graph()?, &Q::zero(), &Q::one(), wp)
    }

    /// The integral with an error bound; the empty poset gives exactly 1.
    pub fn eval(&self, prec: u32) -> Result<Scalar> {
        if self.is_empty() {
            return Ok(Scalar::Exact(rug::Rational::from(1)));
        }
        Ok(self.eval_ev(working_prec(prec))?.to_scalar(prec))
    }

    /// The same integral as a sum of Chen-series word values, one per
    /// linear extension.
    pub fn eval_by_extensions(&self, prec: u32) -> Result<Scalar> {
        if self.is_empty() {
            return Ok(Scalar::Exact(rug::Rational::from(1)));
        }
        self.check_eval()?;
        let wp = working_prec(prec);
        let mut acc = Ev::zero(wp);
        for w in self.extension_words()? {
            acc.add_assign(&chen::integrate(
                &w.forms,
                &StateGraph::chain(w.len()),
                &w.lower,
                &w.upper,
                wp,
            )?);
        }
        Ok(acc.to_scalar(prec))
    }

    /// Parse the text format: `id: label` lines and `a<b` relation lines
    /// (poset sense, `b` nearer 0). `#` starts a comment.
    pub fn parse(text: &str) -> Result<LabeledPoset> {
        let mut p = LabeledPoset::new();
        let mut rels = Vec::new();
        for (ln, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let perr = |m: &str| MzvError::Parse(format!("line {}: {m}: {raw:?}", ln + 1));
            if let Some((id, lab)) = line.split_once(':') {
                let id: u32 = id.trim().parse().map_err(|_| perr("bad element id"))?;
                p.add_with_id(id, OneForm::parse(lab)?)?;
            } else if let Some((a, b)) = line.split_once('<') {
                let a: u32 = a.trim().parse().map_err(|_| perr("bad id"))?;
                let b: u32 = b.trim().parse().map_err(|_| perr("bad id"))?;
                rels.push((a, b));
            } else {
                return Err(perr("expected `id: label` or `a<b`"));
            }
        }
        if p.len() > 64 {
            return Err(MzvError::SizeGuard(format!("{} elements in poset text", p.len())));
        }
        for (a, b) in rels {
            p.relate_less(a, b)?;
        }
        Ok(p)
    }
}

impl fmt::Display for LabeledPoset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (id, l) in self.ids.iter().zip(&self.labels) {
            writeln!(f, "{id}: {l}")?;
        }
        for &(a, b) in &self.covers {
            writeln!(f, "{}<{}", self.ids[b], self.ids[a])?;
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Diagrams
// ---------------------------------------------------------------------------

/// Construction recipes for the standard Hasse pictures. Labels are
/// kernels `s dt/(1-st)` for [`Alphabet::Kernel`] and `w_{+-1}` (signs)
/// for [`Alphabet::Omega`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DiagramKind {
    /// Chain whose word reproduces `Li_k(w(eta))` (kernel) or the
    /// corresponding mixed value (omega).
    Chain { k: Vec<u32>, labels: Vec<Q> },
    /// k-chain topped by `l_1` circles with the `(l_2.., eps_2..)` squiggle
    /// hanging from the top.
    ConvShape { k: Vec<u32>, eta: Vec<Q>, l: Vec<u32>, eps: Vec<Q> },
    /// `n t^(n-1) dt` vertex over the `(l, eps)` squiggle.
    NLeg { n: u32, l: Vec<u32>, eps: Vec<Q> },
    /// Bare squiggle of `(l, eps)`.
    Squiggle { l: Vec<u32>, eps: Vec<Q> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagram {
    pub poset: LabeledPoset,
    pub kind: DiagramKind,
    pub alphabet: Alphabet,
}

impl Diagram {
    /// Rebuild from the tag.
    pub fn rebuild(&self) -> Result<Diagram> {
        build_diagram(&self.kind, self.alphabet)
    }
}

fn letter(q: &Q, alphabet: Alphabet) -> Result<OneForm> {
    match alphabet {
        Alphabet::Kernel => {
            if q.is_zero() {
                Err(MzvError::Invalid("zero kernel label".into()))
            } else {
                Ok(OneForm::Kernel(q.clone()))
            }
        }
        Alphabet::Omega => match q.is_sign() {
            true => Ok(OneForm::omega(if q.is_one() { 1 } else { -1 })),
            false => Err(MzvError::Invalid(format!("omega labels are +-1, got {q}"))),
        },
        Alphabet::Mixed => Err(MzvError::Invalid("diagrams use one alphabet".into())),
    }
}

fn blocks(l: &[u32], eps: &[Q], alphabet: Alphabet) -> Result<Vec<(u32, OneForm)>> {
    if l.len() != eps.len() {
        return Err(MzvError::LengthMismatch("squiggle labels".into()));
    }
    if l.contains(&0) {
        return Err(MzvError::Invalid("squiggle parts must be >= 1".into()));
    }
    l.iter().zip(eps).map(|(&lj, e)| Ok((lj, letter(e, alphabet)?))).collect()
}

fn chain_forms(k: &[u32], labels: &[Q], alphabet: Alphabet) -> Result<Vec<OneForm>> {
    if k.len() != labels.len() {
        return Err(MzvError::LengthMismatch("chain labels".into()));
    }
    if k.contains(&0) {
        return Err(MzvError::Invalid("chain parts must be >= 1".into()));
    }
    let mut forms = Vec::new();
    for (kj, e) in k.iter().zip(labels).rev() {
        forms.push(letter(e, alphabet)?);
        forms.extend(std::iter::repeat_n(OneForm::Omega0, *kj as usize - 1));
    }
    Ok(forms)
}

pub fn build_diagram(kind: &DiagramKind, alphabet: Alphabet) -> Result<Diagram> {
    let mut p = LabeledPoset::new();
    match kind {
        DiagramKind::Chain { k, labels } => {
            p.chain_up(chain_forms(k, labels, alphabet)?, None);
        }
        DiagramKind::ConvShape { k, eta, l, eps } => {
            if l.is_empty() || k.is_empty() {
                return Err(MzvError::Invalid("conv shape needs nonempty k and l".into()));
            }
            if eps.len() + 1 != l.len() {
                return Err(MzvError::LengthMismatch("conv shape needs len(eps) = len(l) - 1".into()));
            }
            let mut forms = chain_forms(k, eta, alphabet)?;
            forms.extend(std::iter::repeat_n(OneForm::Omega0, l[0] as usize));
            let ids = p.chain_up(forms, None);
            let b = blocks(&l[1..], eps, alphabet)?;
            p.squiggle(&b, ids.last().copied());
        }
        DiagramKind::NLeg { n, l, eps } => {
            if *n == 0 {
                return Err(MzvError::Invalid("leg power must be >= 1".into()));
            }
            let t = p.add(OneForm::scaled(Q::int(*n as i64), OneForm::Pow(*n)));
            let b = blocks(l, eps, alphabet)?;
            p.squiggle(&b, Some(t));
        }
        DiagramKind::Squiggle { l, eps } => {
            let b = blocks(l, eps, alphabet)?;
            p.squiggle(&b, None);
        }
    }
    Ok(Diagram { poset: p, kind: kind.clone(), alphabet })
}

/// Multiset of extensions as label-position sequences, for comparing
/// posets on the same elements.
pub fn extension_multiset(p: &LabeledPoset) -> Result<BTreeMap<Vec<usize>, usize>> {
    let mut m = BTreeMap::new();
    for e in p.linear_extensions()? {
        *m.entry(e).or_insert(0) += 1;
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rug::Float;

    const PREC: u32 = 96;

    fn zeta(n: u32) -> f64 {
        Float::with_val(128, Float::zeta_u(n)).to_f64()
    }

    fn ones(n: usize) -> Vec<Q> {
        vec![Q::one(); n]
    }

    #[test]
    fn chain_reproduces_zeta21() {
        let d = build_diagram(&DiagramKind::Chain { k: vec![2, 1], labels: ones(2) }, Alphabet::Kernel).unwrap();
        assert_eq!(d.poset.labels(), &[OneForm::k1(), OneForm::k1(), OneForm::Omega0]);
        let v = d.poset.eval(PREC).unwrap();
        assert!((v.re_f64() - zeta(3)).abs() < 1e-15);
        assert_eq!(d.rebuild().unwrap(), d);
    }

    #[test]
    fn admissibility_examples() {
        let mut p = LabeledPoset::new();
        p.add(OneForm::Omega0);
        assert!(!p.admissibility().is_admissible());
        let d = build_diagram(&DiagramKind::Chain { k: vec![1], labels: ones(1) }, Alphabet::Kernel).unwrap();
        assert!(!d.poset.admissibility().is_admissible());
        let d = build_diagram(&DiagramKind::Chain { k: vec![2], labels: vec![Q::int(-1)] }, Alphabet::Kernel).unwrap();
        assert!(d.poset.admissibility().is_admissible());
    }

    #[test]
    fn extensions_and_counts() {
        let mut p = LabeledPoset::new();
        for _ in 0..3 {
            p.add(OneForm::k1());
        }
        assert_eq!(p.linear_extensions().unwrap().len(), 6);
        assert_eq!(p.count_linear_extensions().unwrap(), 6);
        let z2 = build_diagram(&DiagramKind::Chain { k: vec![2], labels: ones(1) }, Alphabet::Kernel).unwrap().poset;
        let u = z2.disjoint_union(&z2);
        assert_eq!(u.linear_extensions().unwrap().len(), 6);
        let v = u.eval(PREC).unwrap();
        assert!((v.re_f64() - zeta(2).powi(2)).abs() < 1e-14);
        let w = u.eval_by_extensions(PREC).unwrap();
        assert!(v.sub(&w).abs_f64() < 1e-25);
    }

    #[test]
    fn adjoin_and_text_format() {
        let mut p = LabeledPoset::new();
        let a = p.chain_up(vec![OneForm::k1(), OneForm::Omega0], None);
        let b = p.chain_up(vec![OneForm::k1(), OneForm::Omega0], None);
        let q = p.adjoin_relation(p.ids()[a[1]], p.ids()[b[0]]).unwrap();
        assert_eq!(q.covers().len(), 3);
        assert!(p.adjoin_relation(p.ids()[a[0]], p.ids()[a[1]]).is_err());
        let text = q.to_string();
        assert_eq!(LabeledPoset::parse(&text).unwrap(), q);
        assert!(LabeledPoset::parse("0: K(1)\n1: O\n0<1\n1<0\n").is_err());
    }

    #[test]
    fn empty_poset_is_one() {
        assert!(matches!(LabeledPoset::new().eval(PREC).unwrap(), Scalar::Exact(_)));
    }

    #[test]
    fn shapes() {
        let d = build_diagram(
            &DiagramKind::ConvShape { k: vec![1, 1], eta: ones(2), l: vec![1, 2], eps: ones(1) },
            Alphabet::Kernel,
        )
        .unwrap();
        assert_eq!(d.poset.len(), 5);
        let leg = build_diagram(&DiagramKind::NLeg { n: 2, l: vec![2], eps: ones(1) }, Alphabet::Kernel).unwrap();
        assert_eq!(leg.poset.len(), 3);
        assert_eq!(leg.poset.nearest_one(), vec![0, 2]);
        assert_eq!(leg.poset.nearest_zero(), vec![1]);
    }
}
