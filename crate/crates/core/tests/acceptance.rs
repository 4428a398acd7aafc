//! Acceptance run: one PASS/FAIL line per criterion on stdout, nonzero exit
//! if any criterion fails. Built without the libtest harness so the lines
//! show up in plain `cargo test` output.

use std::collections::BTreeMap;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rug::Float;

use mzvlab::identities::{self, Bounds, IdentityCase, Param, Params, Status};
use mzvlab::index::{hoffman_dual, sign_transform, Composition, SignMap};
use mzvlab::num::{working_prec, Cx, Mode, Scalar, Q};
use mzvlab::posets::{build_diagram, Alphabet, DiagramKind, LabeledPoset};
use mzvlab::sums::{t_n_float, zeta_n_float};
use mzvlab::values::{conv_m, conv_zeta, mi_ev, mpl, mpl_ev};
use mzvlab::words::{compose_paths, eval_word_quadrature, eval_word_series, m_word, mpl_word, t_word, IntegralWord, OneForm};

const PREC: u32 = 128;
/// Slack on top of the summed error budget at 128 bits.
const FLOAT_SLACK: f64 = 5.421010862427522e-20; // 2^-64

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ones(n: usize) -> Vec<Q> {
    vec![Q::one(); n]
}

fn signs_of(mask: u32, r: usize) -> Vec<i32> {
    (0..r).map(|j| if mask >> j & 1 == 1 { -1 } else { 1 }).collect()
}

fn compositions(weight: u32) -> Vec<Vec<u32>> {
    // bit j set = cut after position j+1
    (0..1u32 << (weight - 1))
        .map(|cuts| {
            let mut parts = vec![];
            let mut run = 1;
            for j in 0..weight - 1 {
                if cuts >> j & 1 == 1 {
                    parts.push(run);
                    run = 1;
                } else {
                    run += 1;
                }
            }
            parts.push(run);
            parts
        })
        .collect()
}

// 1 ---------------------------------------------------------------------

fn exact_zero_suite() -> Outcome {
    let mut total = 0usize;
    for id in ["SS2016-LEMMA", "PMPLS1", "PMPLS2", "PMHNS", "NPMPLS1", "NPMPLS2"] {
        let grid = identities::exact_grid(id, 4, 3, 5).map_err(|e| e.to_string())?;
        for p in grid {
            let case = IdentityCase::new(id, p, Mode::Exact, PREC).map_err(|e| e.to_string())?;
            let r = identities::verify(&case).map_err(|e| format!("{id}: {e}"))?;
            let zero = matches!(&r.residual, Some(Scalar::Exact(q)) if *q == 0);
            ensure(zero, || format!("{id} {}: residual {:?}", r.case.params, r.residual.map(|s| s.value_string())))?;
            total += 1;
        }
    }
    Ok(format!("{total} grid instances, every residual exactly 0"))
}

// 2 ---------------------------------------------------------------------

const FLOAT_IDS: [&str; 20] = [
    "FII1", "FII2", "KYMZV1", "KYMZV2", "KYMZV3", "MPL-R2", "MPL-R3", "ITLI1J", "MPL-RS", "FIIt1", "T-KYMZVX",
    "T-KYMZVXX", "INTX-MMVS", "INTX-KYMMVS", "INTX-KYMMVS-COR", "F2-MPLS", "INT-SER-AMPLS", "F2-MMVS",
    "INT-SER-MMVS", "INT-SER-MMVS2",
];

fn within_budget(r: &identities::ResidualReport) -> bool {
    match &r.residual {
        Some(res) => res.abs_f64() <= r.budget + FLOAT_SLACK,
        None => false,
    }
}

fn float_suite() -> Outcome {
    let mut worst = 0f64;
    for (i, id) in FLOAT_IDS.iter().enumerate() {
        let s = identities::fuzz(id, 25, 1000 + i as u64, &Bounds::default(), Some(Mode::Float), PREC)
            .map_err(|e| format!("{id}: {e}"))?;
        for r in &s.reports {
            ensure(r.status == Status::Pass && within_budget(r), || {
                format!("{id} {}: {} residual {:?} budget {:.3e}", r.case.params, r.status.as_str(),
                    r.residual.as_ref().map(|v| v.value_string()), r.budget)
            })?;
            let res = r.residual.as_ref().map_or(0.0, |v| v.abs_f64());
            worst = worst.max(res / (r.budget + FLOAT_SLACK));
        }
    }
    Ok(format!("{} identities x 25 cases pass; worst |res|/(budget+2^-64) = {worst:.2e}", FLOAT_IDS.len()))
}

// 3 ---------------------------------------------------------------------

fn worked_examples() -> Outcome {
    let mut worst = 0f64;
    for id in ["AMZV-EXAMPLE", "MMV-EXAMPLE"] {
        for mask in 0..4 {
            let p = Params::new().with("eta", Param::Signs(signs_of(mask, 2)));
            let r = identities::verify(&IdentityCase::new(id, p, Mode::Float, PREC).unwrap())
                .map_err(|e| e.to_string())?;
            let res = r.residual.as_ref().map_or(f64::INFINITY, |v| v.abs_f64());
            ensure(r.status == Status::Pass && res < 1e-20, || format!("{id} {}: |res| = {res:e}", r.case.params))?;
            worst = worst.max(res);
        }
    }
    Ok(format!("both relations hold at all four sign pairs; max |res| = {worst:.2e}"))
}

// 4 ---------------------------------------------------------------------

fn word_grid() -> Vec<IntegralWord> {
    let alphabet = [OneForm::Omega0, OneForm::k1(), OneForm::Kernel(Q::int(-1)), OneForm::Wminus, OneForm::Wplus];
    let uppers = [Q::ratio(1, 2), Q::ratio(4, 5)];
    let mut words = Vec::new();
    let mut layer: Vec<Vec<OneForm>> = vec![vec![]];
    for _ in 0..4 {
        layer = layer
            .into_iter()
            .flat_map(|w| {
                alphabet.iter().filter_map(move |f| {
                    // dt/t next to the lower limit 0 diverges
                    if w.is_empty() && *f == OneForm::Omega0 {
                        return None;
                    }
                    let mut v = w.clone();
                    v.push(f.clone());
                    Some(v)
                })
            })
            .collect();
        for w in &layer {
            for u in &uppers {
                words.push(IntegralWord::new(w.clone(), Q::zero(), u.clone()).unwrap());
            }
        }
    }
    words
}

fn partial_sum_checks() -> Result<String, String> {
    const N: u64 = 1_000_000;
    let wp = working_prec(PREC);
    let nf = N as f64;
    let one = |d: usize| vec![Cx::one(wp); d];
    // (name, word, partial sum, tail bound)
    let cases: Vec<(&str, IntegralWord, mzvlab::num::Ev, f64)> = vec![
        ("zeta(2)", mpl_word(&[2], &ones(1)), zeta_n_float(&[2], &one(1), &Q::zero(), N, false, wp).unwrap(), 1.0 / nf),
        ("zeta(3)", mpl_word(&[3], &ones(1)), zeta_n_float(&[3], &one(1), &Q::zero(), N, false, wp).unwrap(), 0.5 / (nf * nf)),
        // sum_{n>N} H_{n-1}/n^2 <= int_N^inf (1 + ln x)/x^2 dx
        ("zeta(2,1)", mpl_word(&[2, 1], &ones(2)), zeta_n_float(&[2, 1], &one(2), &Q::zero(), N, false, wp).unwrap(), (2.0 + nf.ln()) / nf),
        ("t(2)", t_word(&[2], &Q::one()), t_n_float(&[2], N, false, None, wp), 0.5 / (2.0 * nf - 1.0)),
        ("M(2;-1)", m_word(&[2], &[-1], &Q::one()), m_partial(&[2], &[-1], N, wp), 2.0 / nf),
    ];
    let mut worst = 0f64;
    for (name, w, part, tail) in cases {
        let v = compose_paths(&w, &Q::ratio(1, 2), PREC).map_err(|e| format!("{name}: {e}"))?;
        let diff = Cx::sub(&v.to_cx(wp), &part.v).abs_f64();
        let allowed = tail + part.e + v.err();
        // the partial sum undershoots by at most the tail
        ensure(diff <= allowed, || format!("{name}: |composed - S_N| = {diff:e} > {allowed:e}"))?;
        worst = worst.max(diff / allowed);
    }
    Ok(format!("boundary values within tail bounds at N = 10^6 (worst ratio {worst:.2})"))
}

/// `sum_{n <= N} (1 + e (-1)^n) / n^k` for depth one.
fn m_partial(k: &[u32], e: &[i32], n: u64, wp: u32) -> mzvlab::num::Ev {
    assert_eq!(k.len(), 1);
    let mut s = Float::with_val(wp, 0);
    for m in 1..=n {
        let c = 1 + e[0] * if m % 2 == 0 { 1 } else { -1 };
        if c != 0 {
            let t = Float::with_val(wp, Float::u_pow_u(m as u32, k[0])).recip() * c;
            s += t;
        }
    }
    mzvlab::num::Ev::new(Cx::real(s), n as f64 * 2f64.powi(-(wp as i32) + 2))
}

fn oracle_independence() -> Outcome {
    let words = word_grid();
    let mut worst = 0f64;
    for w in &words {
        let s = eval_word_series(w, 96).map_err(|e| format!("series {w}: {e}"))?;
        let q = eval_word_quadrature(w, 1e-12).map_err(|e| format!("quadrature {w}: {e}"))?;
        let d = s.sub(&q).abs_f64();
        ensure(d < 1e-10, || format!("{w}: series {} vs quadrature {}", s.value_string(), q.value_string()))?;
        worst = worst.max(d);
    }
    let tail = partial_sum_checks()?;
    Ok(format!("{} words agree (max diff {worst:.1e}); {tail}", words.len()))
}

// 5 ---------------------------------------------------------------------

fn brute_force_extensions(p: &LabeledPoset) -> u64 {
    let n = p.len();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut count = 0;
    permute(&mut perm, 0, &mut |order: &[usize]| {
        let mut pos = vec![0; n];
        for (i, &e) in order.iter().enumerate() {
            pos[e] = i;
        }
        if p.covers().iter().all(|&(a, b)| pos[a] < pos[b]) {
            count += 1;
        }
    });
    count
}

fn permute(v: &mut Vec<usize>, i: usize, f: &mut dyn FnMut(&[usize])) {
    if i == v.len() {
        f(v);
        return;
    }
    for j in i..v.len() {
        v.swap(i, j);
        permute(v, i + 1, f);
        v.swap(i, j);
    }
}

fn random_order(rng: &mut ChaCha8Rng, n: usize) -> LabeledPoset {
    let mut text = String::new();
    for i in 0..n {
        text.push_str(&format!("{i}: K(1)\n"));
    }
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen_bool(0.3) {
                text.push_str(&format!("{a}<{b}\n"));
            }
        }
    }
    LabeledPoset::parse(&text).unwrap()
}

fn shuffle_poset(seed: u64, i: u64) -> LabeledPoset {
    let d = identities::lookup("POSET-SHUFFLE").unwrap();
    match d.generate(seed, i, &Bounds::default()).0.get("poset") {
        Some(Param::Text(t)) => LabeledPoset::parse(t).unwrap(),
        other => panic!("unexpected poset parameter {other:?}"),
    }
}

fn poset_calculus() -> Outcome {
    let bounds = Bounds { poset: 6, ..Bounds::default() };
    let s = identities::fuzz("POSET-SHUFFLE", 50, 2, &bounds, Some(Mode::Float), PREC).map_err(|e| e.to_string())?;
    for r in &s.reports {
        ensure(r.status == Status::Pass && within_budget(r), || format!("POSET-SHUFFLE {}: {}", r.case.params, r.status.as_str()))?;
    }

    for i in 0..20 {
        let (x, y) = (shuffle_poset(7, 2 * i), shuffle_poset(7, 2 * i + 1));
        let u = x.disjoint_union(&y).eval(PREC).map_err(|e| e.to_string())?;
        let prod = x.eval(PREC).unwrap().mul(&y.eval(PREC).unwrap());
        let d = u.sub(&prod);
        ensure(d.abs_f64() <= u.err() + prod.err() + FLOAT_SLACK, || format!("J(X u Y) != J(X) J(Y): {:e}", d.abs_f64()))?;
    }

    let mut chains = 0;
    for w in 2..=5 {
        for k in compositions(w).into_iter().filter(|k| k.len() <= 3) {
            for mask in 0..1u32 << k.len() {
                let eta: Vec<Q> = signs_of(mask, k.len()).into_iter().map(|s| Q::int(s as i64)).collect();
                let d = build_diagram(&DiagramKind::Chain { k: k.clone(), labels: eta.clone() }, Alphabet::Kernel).unwrap();
                let x = sign_transform(SignMap::W, &eta).unwrap().entries;
                let admissible = !(k[0] == 1 && x[0].is_one());
                ensure(d.poset.admissibility().is_admissible() == admissible, || format!("chain {k:?} {eta:?}: admissibility"))?;
                if !admissible {
                    continue;
                }
                let j = d.poset.eval(PREC).map_err(|e| e.to_string())?;
                let li = mpl_ev(&k, &x, working_prec(PREC)).unwrap().to_scalar(PREC);
                let diff = j.sub(&li).abs_f64();
                ensure(diff <= j.err() + li.err() + FLOAT_SLACK, || format!("chain {k:?} {eta:?}: J = {} vs Li = {}", j.value_string(), li.value_string()))?;

                let d = build_diagram(&DiagramKind::Chain { k: k.clone(), labels: eta.clone() }, Alphabet::Omega).unwrap();
                if d.poset.admissibility().is_admissible() {
                    let e: Vec<i32> = signs_of(mask, k.len());
                    let p = mzvlab::index::p_signs(&e);
                    let m = mi_ev(&k, &p, &Q::one(), working_prec(PREC)).unwrap().to_scalar(PREC);
                    let jm = d.poset.eval(PREC).map_err(|e| e.to_string())?;
                    let diff = jm.sub(&m).abs_f64();
                    ensure(diff <= jm.err() + m.err() + FLOAT_SLACK, || format!("omega chain {k:?} {e:?}: J = {} vs M = {}", jm.value_string(), m.value_string()))?;
                }
                chains += 1;
            }
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut counted = 0;
    for trial in 0..120 {
        let p = if trial % 2 == 0 { random_order(&mut rng, 1 + trial % 6) } else { shuffle_poset(11, trial as u64) };
        if p.len() > 6 {
            continue;
        }
        let fast = p.count_linear_extensions().map_err(|e| e.to_string())?;
        let listed = p.linear_extensions().map_err(|e| e.to_string())?;
        let brute = brute_force_extensions(&p);
        let distinct: BTreeMap<_, _> = listed.iter().map(|e| (e.clone(), ())).collect();
        ensure(fast == brute as u128 && listed.len() as u64 == brute && distinct.len() == listed.len(), || {
            format!("poset\n{p}count {fast}, listed {}, brute force {brute}", listed.len())
        })?;
        counted += 1;
    }
    Ok(format!("shuffle 50/50, 20 disjoint unions, {chains} chains, {counted} extension counts exact"))
}

// 6 ---------------------------------------------------------------------

fn structural() -> Outcome {
    let mut duals = 0;
    for w in 1..=12 {
        for m in compositions(w) {
            let c = Composition::new(m.clone()).unwrap();
            let d = hoffman_dual(&c).unwrap();
            ensure(d.weight() == w && d.depth() + c.depth() == w as usize + 1, || format!("dual of {m:?}"))?;
            ensure(hoffman_dual(&d).unwrap() == c, || format!("dual not involutive at {m:?}"))?;
            duals += 1;
        }
    }

    let mut vectors = 0;
    for r in 1..=6usize {
        for mask in 0..1u32 << r {
            let e: Vec<Q> = signs_of(mask, r).into_iter().map(|s| Q::int(s as i64)).collect();
            let t = |k| sign_transform(k, &e).unwrap().entries;
            let prod = |v: &[Q]| v.iter().fold(Q::one(), |a, b| a.mul(b));
            let rev = |v: &[Q]| v.iter().rev().cloned().collect::<Vec<_>>();
            let (w, u) = (t(SignMap::W), t(SignMap::U));
            for j in 0..r {
                ensure(prod(&w[..=j]) == e[j], || format!("w telescoping at {e:?}"))?;
                ensure(prod(&u[j..]) == e[j], || format!("u telescoping at {e:?}"))?;
            }
            ensure(t(SignMap::V) == u[..r - 1], || format!("v vs u at {e:?}"))?;
            ensure(t(SignMap::Y) == w[1..], || format!("y vs w at {e:?}"))?;
            ensure(t(SignMap::P) == sign_transform(SignMap::Q, &rev(&e)).unwrap().entries, || format!("p vs q at {e:?}"))?;
            ensure(t(SignMap::R) == rev(&t(SignMap::Q)), || format!("r vs q at {e:?}"))?;
            for k in [SignMap::P, SignMap::Q, SignMap::R, SignMap::U, SignMap::V, SignMap::W, SignMap::Y] {
                ensure(t(k).iter().all(Q::is_sign), || format!("{k:?} leaves the signs at {e:?}"))?;
            }
            vectors += 1;
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..100 {
        let (r, s) = (rng.gen_range(1..=3), rng.gen_range(1..=3));
        let k: Vec<u32> = (0..r).map(|_| rng.gen_range(1..=3)).collect();
        let l: Vec<u32> = (0..s).map(|_| rng.gen_range(1..=3)).collect();
        let sign = |rng: &mut ChaCha8Rng| if rng.gen_bool(0.5) { 1 } else { -1 };
        let mut eta: Vec<i32> = (0..r).map(|_| sign(&mut rng)).collect();
        let mut eps: Vec<i32> = (0..s).map(|_| sign(&mut rng)).collect();
        eta[0] = sign(&mut rng);
        eps[0] = -eta[0];
        let v = conv_m(&k, &eta, &l, &eps, &Q::one(), PREC).map_err(|e| e.to_string())?;
        ensure(v.is_exact_zero(), || format!("conv_m {k:?} {eta:?} {l:?} {eps:?} = {}", v.value_string()))?;
    }

    let mut collapses = 0;
    for total in 3..=5u32 {
        for k in 1..total {
            let l1 = total - k;
            let c = conv_zeta(&Composition::new(vec![k]).unwrap(), &Composition::new(vec![l1]).unwrap(), PREC)
                .map_err(|e| e.to_string())?;
            let z = mpl(&Composition::new(vec![total]).unwrap(), &ones(1), false, PREC).unwrap();
            let d = c.sub(&z).abs_f64();
            ensure(d <= c.err() + z.err() + FLOAT_SLACK, || format!("conv_zeta(({k}),({l1})) vs zeta({total}): {d:e}"))?;
            collapses += 1;
        }
    }
    Ok(format!(
        "{duals} duals involutive, {vectors} sign vectors telescope, 100 conv_m exact zeros, {collapses} conv_zeta collapses"
    ))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 6] = [
        ("exact-zero suite", exact_zero_suite),
        ("float identity suite at 128 bits", float_suite),
        ("worked examples", worked_examples),
        ("oracle independence", oracle_independence),
        ("poset calculus", poset_calculus),
        ("structural invariants", structural),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let res = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let secs = t.elapsed().as_secs_f64();
        match res {
            Ok(detail) => println!("acceptance {} {name}: PASS ({secs:.1}s) {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("acceptance {} {name}: FAIL ({secs:.1}s) {why}", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
