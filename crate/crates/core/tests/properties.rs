use proptest::prelude::*;
use rug::{Integer, Rational};

use mzvlab::cli;
use mzvlab::identities::{self, Bounds, IdentityCase, Status};
use mzvlab::index::{hoffman_dual, Composition, SliceMode};
use mzvlab::num::{Cx, Mode, Q};
use mzvlab::posets::{extension_multiset, LabeledPoset};
use mzvlab::sums::{m_n_exact, t_n_exact, zeta_n_exact, zeta_n_float};
use mzvlab::values::{conv_zeta, mi_ev, mpl, mpl_ev, param_mpl_ev};
use mzvlab::words::{chen, compose_paths, mpl_word, IntegralWord, OneForm};

const WP: u32 = 160;

fn comp(max_len: usize, max_part: u32) -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(1..=max_part, 1..=max_len)
}

fn small_rational() -> impl Strategy<Value = Rational> {
    (-7i64..=7, 1i64..=6).prop_map(|(p, q)| Rational::from((p, q)))
}

fn interior() -> impl Strategy<Value = Q> {
    (-9i64..=9).prop_filter("nonzero", |p| *p != 0).prop_map(|p| Q::ratio(p, 10))
}

fn rev<T: Clone>(v: &[T]) -> Vec<T> {
    v.iter().rev().cloned().collect()
}

fn close(a: &mzvlab::num::Ev, b: &mzvlab::num::Ev) -> bool {
    a.sub(b).abs_f64() <= a.e + b.e + 1e-40
}

/// Random poset on `n` elements with relations only from lower to higher ids.
fn order_text(n: usize, rels: &[bool]) -> String {
    let mut t = String::new();
    for i in 0..n {
        t.push_str(&format!("{i}: K(1)\n"));
    }
    let mut r = rels.iter();
    for a in 0..n {
        for b in a + 1..n {
            if *r.next().unwrap_or(&false) {
                t.push_str(&format!("{a}<{b}\n"));
            }
        }
    }
    t
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn dual_is_a_weight_preserving_involution(m in comp(8, 4)) {
        let c = Composition::new(m).unwrap();
        let d = hoffman_dual(&c).unwrap();
        prop_assert_eq!(d.weight(), c.weight());
        prop_assert_eq!(hoffman_dual(&d).unwrap(), c);
    }

    #[test]
    fn forward_slices_concatenate(m in comp(6, 5), j in 0usize..=6) {
        let c = Composition::new(m).unwrap();
        let j = j.min(c.depth());
        let r = c.depth();
        let head = if j == 0 { Composition::empty() } else { c.slice(SliceMode::Forward, 1, j).unwrap() };
        let tail = c.slice(SliceMode::Forward, j + 1, r).unwrap();
        prop_assert_eq!(head.concat(&tail), c);
    }

    #[test]
    fn composition_text_roundtrip(m in comp(6, 9)) {
        let c = Composition::new(m).unwrap();
        prop_assert_eq!(Composition::parse(&c.to_string()).unwrap(), c);
    }

    #[test]
    fn stuffle_depth_one(k1 in 1u32..=4, k2 in 1u32..=4, x1 in small_rational(), x2 in small_rational(), n in 0u64..=12) {
        let z = |k: &[u32], x: &[Rational]| zeta_n_exact(k, x, 0, n, false);
        let lhs = z(&[k1], std::slice::from_ref(&x1)) * z(&[k2], std::slice::from_ref(&x2));
        let rhs = z(&[k1, k2], &[x1.clone(), x2.clone()]) + z(&[k2, k1], &[x2.clone(), x1.clone()])
            + z(&[k1 + k2], &[x1 * x2]);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn star_is_plain_plus_contraction(k1 in 1u32..=5, k2 in 1u32..=5, n in 0u64..=15) {
        let one = Rational::from(1);
        let star = zeta_n_exact(&[k1, k2], &[one.clone(), one.clone()], 0, n, true);
        let plain = zeta_n_exact(&[k1, k2], &[one.clone(), one.clone()], 0, n, false)
            + zeta_n_exact(&[k1 + k2], &[one], 0, n, false);
        prop_assert_eq!(star, plain);
    }

    #[test]
    fn alternating_star_sum_vanishes(k in comp(3, 3), xs in prop::collection::vec(small_rational(), 3), n in 1u64..=8) {
        let x = &xs[..k.len()];
        let mut acc = Rational::new();
        for j in 0..=k.len() {
            let left = zeta_n_exact(&k[..j], &x[..j], 0, n, false);
            let right = zeta_n_exact(&rev(&k[j..]), &rev(&x[j..]), 0, n, true);
            if j % 2 == 0 { acc += left * right } else { acc -= left * right }
        }
        prop_assert_eq!(acc, Rational::new());
    }

    #[test]
    fn parity_reduction(k in comp(3, 3), n in 0u64..=14) {
        let r = k.len();
        let two_r = Rational::from(Integer::from(1) << r as u32);
        let odd = m_n_exact(&k, &vec![-1; r], n, false);
        prop_assert_eq!(odd, two_r.clone() * t_n_exact(&k, n.div_ceil(2), false, None));
        // even chains by direct enumeration: n >= 2m_1 > ... > 2m_r >= 2
        let even = even_chain_sum(&k, n);
        prop_assert_eq!(m_n_exact(&k, &vec![1; r], n, false), two_r * even);
    }

    #[test]
    fn truncation_tail_is_geometric(k in comp(3, 3), xs in prop::collection::vec(interior(), 3), n in 5u64..=30) {
        let x: Vec<Cx> = xs[..k.len()].iter().map(|q| q.to_cx(WP)).collect();
        let a = zeta_n_float(&k, &x, &Q::zero(), n, false, WP).unwrap();
        let b = zeta_n_float(&k, &x, &Q::zero(), 2 * n, false, WP).unwrap();
        let ax: Vec<f64> = xs[..k.len()].iter().map(Q::abs_f64).collect();
        let mut bound = ax[0].powi(n as i32 + 1) / (1.0 - ax[0]);
        for v in &ax[1..] {
            bound /= 1.0 - v;
        }
        prop_assert!(a.sub(&b).abs_f64() <= bound + a.e + b.e);
    }

    #[test]
    fn conv_zeta_with_single_l_collapses(k in comp(3, 3), l1 in 1u32..=3) {
        prop_assume!(k[0] + l1 >= 2);
        let c = conv_zeta(&Composition::new(k.clone()).unwrap(), &Composition::new(vec![l1]).unwrap(), 96).unwrap();
        let mut shifted = k.clone();
        shifted[0] += l1;
        let z = mpl(&Composition::new(shifted.clone()).unwrap(), &vec![Q::one(); shifted.len()], false, 96).unwrap();
        prop_assert!(c.sub(&z).abs_f64() <= c.err() + z.err() + 1e-25);
    }

    #[test]
    fn unit_shift_drops_the_first_term(k in 1u32..=4, x in interior()) {
        // sum_{n>=1} x^(n+1)/(n+1)^k = Li_k(x) - x
        let lhs = param_mpl_ev(&[k], std::slice::from_ref(&x), &Q::one(), WP).unwrap();
        let rhs = mpl_ev(&[k], std::slice::from_ref(&x), WP).unwrap().sub(&mzvlab::num::Ev::from_q(&x, WP));
        prop_assert!(close(&lhs, &rhs));
    }

    #[test]
    fn chen_word_matches_series_value(k in comp(3, 3), xs in prop::collection::vec(interior(), 3)) {
        let x = &xs[..k.len()];
        prop_assume!(!(k[0] == 1 && x[0].is_one()));
        let w = mpl_word(&k, x);
        let chen = chen::eval_word(&w, WP).unwrap();
        let series = mpl_ev(&k, x, WP).unwrap();
        prop_assert!(close(&chen, &series));
    }

    #[test]
    fn split_point_does_not_matter(k in comp(3, 3)) {
        prop_assume!(k[0] >= 2);
        let w = mpl_word(&k, &vec![Q::one(); k.len()]);
        let vals: Vec<_> = [Q::ratio(3, 10), Q::ratio(1, 2), Q::ratio(7, 10)]
            .iter()
            .map(|c| compose_paths(&w, c, 96).unwrap())
            .collect();
        for v in &vals[1..] {
            prop_assert!(v.sub(&vals[0]).abs_f64() <= v.err() + vals[0].err() + 1e-25);
        }
    }

    #[test]
    fn cauchy_shift_is_a_kernel(a in 2i64..=9, tail in prop::collection::vec(0usize..3, 0..3)) {
        let a = Q::ratio(a, 2);
        let pick = |i: usize| [OneForm::Omega0, OneForm::k1(), OneForm::Kernel(Q::int(-1))][i].clone();
        let mut f1 = vec![OneForm::CauchyShift(a.clone())];
        let mut f2 = vec![OneForm::Kernel(a.recip().unwrap())];
        for &i in &tail {
            f1.push(pick(i));
            f2.push(pick(i));
        }
        let u = Q::ratio(1, 2);
        let v1 = chen::eval_word(&IntegralWord::new(f1, Q::zero(), u.clone()).unwrap(), WP).unwrap();
        let v2 = chen::eval_word(&IntegralWord::new(f2, Q::zero(), u).unwrap(), WP).unwrap();
        prop_assert!(close(&v1, &v2));
    }

    #[test]
    fn adjoining_splits_the_extension_multiset(n in 2usize..=6, rels in prop::collection::vec(prop::bool::weighted(0.3), 15), pick in 0usize..100) {
        let p = LabeledPoset::parse(&order_text(n, &rels)).unwrap();
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
            .filter(|&(a, b)| !p.comparable(a, b))
            .collect();
        prop_assume!(!pairs.is_empty());
        let (a, b) = pairs[pick % pairs.len()];
        let (ia, ib) = (p.ids()[a], p.ids()[b]);
        let mut joined = extension_multiset(&p.adjoin_relation(ia, ib).unwrap()).unwrap();
        for (e, c) in extension_multiset(&p.adjoin_relation(ib, ia).unwrap()).unwrap() {
            *joined.entry(e).or_insert(0) += c;
        }
        prop_assert_eq!(joined, extension_multiset(&p).unwrap());
    }
}

fn even_chain_sum(k: &[u32], n: u64) -> Rational {
    // sum over n >= 2 m_1 > ... > 2 m_r >= 2 of prod (2 m_j)^-k_j
    fn go(k: &[u32], bound: u64, acc: Rational) -> Rational {
        if k.is_empty() {
            return acc;
        }
        let mut s = Rational::new();
        for m in 1..=bound {
            let d = Integer::from(Integer::u_pow_u(2 * m as u32, k[0]));
            s += go(&k[1..], m - 1, acc.clone() / d);
        }
        s
    }
    go(k, n / 2, Rational::from(1))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn doubling_precision_keeps_the_verdict(which in 0usize..32, seed in 0u64..1000) {
        let d = &identities::registry()[which % identities::registry().len()];
        let p = d.generate(seed, 0, &Bounds::default());
        let run = |prec| identities::verify(&IdentityCase::new(d.id, p.clone(), Mode::Float, prec).unwrap()).unwrap();
        let (a, b) = (run(128), run(256));
        prop_assert_eq!(a.status.clone(), Status::Pass, "{} {}", d.id, p);
        prop_assert_eq!(b.status, Status::Pass, "{} {}", d.id, p);
    }

    #[test]
    fn cli_json_is_one_document(k in comp(3, 3), star in any::<bool>()) {
        prop_assume!(k[0] >= 2);
        let idx = k.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",");
        let fam = if star { "mzsv" } else { "mzv" };
        let o = cli::run(&["eval", "--family", fam, "--index", &idx, "--prec", "64"]);
        prop_assert_eq!(o.code, 0);
        let v: serde_json::Value = serde_json::from_str(&o.stdout).unwrap();
        prop_assert!(v["value"].is_string());
    }
}

#[test]
fn mixed_values_expand_into_colored_values() {
    for w in 2..=4u32 {
        for r in 1..=3usize {
            for k in all_compositions(w, r).into_iter().filter(|k| k[0] >= 2) {
                for mask in 0..1u32 << r {
                    let e: Vec<i32> = (0..r).map(|j| if mask >> j & 1 == 1 { -1 } else { 1 }).collect();
                    let m = mi_ev(&k, &e, &Q::one(), WP).unwrap();
                    let mut acc = mzvlab::num::Ev::zero(WP);
                    for s in 0..1u32 << r {
                        let coeff: i64 = (0..r).filter(|j| s >> j & 1 == 1).map(|j| e[j] as i64).product();
                        let z: Vec<Q> = (0..r).map(|j| if s >> j & 1 == 1 { Q::int(-1) } else { Q::one() }).collect();
                        acc.add_assign(&mpl_ev(&k, &z, WP).unwrap().mul_i64(coeff));
                    }
                    assert!(close(&m, &acc), "M({k:?}; {e:?})");
                }
            }
        }
    }
}

fn all_compositions(w: u32, r: usize) -> Vec<Vec<u32>> {
    if r == 0 {
        return if w == 0 { vec![vec![]] } else { vec![] };
    }
    (1..=w)
        .flat_map(|a| {
            all_compositions(w - a, r - 1).into_iter().map(move |mut t| {
                t.insert(0, a);
                t
            })
        })
        .collect()
}

#[test]
fn antichain_has_factorial_extensions() {
    let mut f = 1u128;
    for n in 1..=8usize {
        f *= n as u128;
        let p = LabeledPoset::parse(&order_text(n, &[])).unwrap();
        assert_eq!(p.count_linear_extensions().unwrap(), f);
    }
}

#[test]
fn fuzz_output_is_deterministic() {
    let args = ["fuzz", "--id", "KYMZV2", "--budget", "30", "--seed", "3"];
    let a = cli::run(&args);
    let b = cli::run(&args);
    assert_eq!(a.code, 0, "{}", a.stderr);
    assert_eq!(a, b);
    let v: serde_json::Value = serde_json::from_str(&a.stdout).unwrap();
    assert_eq!(v["pass"], 30);
}

#[test]
fn spec_fuzz_examples_pass() {
    for (id, budget, seed) in [("PMPLS1", "100", "1"), ("POSET-SHUFFLE", "50", "2")] {
        let o = cli::run(&["fuzz", "--id", id, "--budget", budget, "--seed", seed]);
        assert_eq!(o.code, 0, "{id}: {}", o.stderr);
        let v: serde_json::Value = serde_json::from_str(&o.stdout).unwrap();
        assert_eq!(v["fail"], 0);
        assert_eq!(v["skip"], 0);
    }
}

#[test]
fn zeta21_through_the_cli_is_zeta3() {
    let o = cli::run(&["eval", "--family", "mzv", "--index", "2,1", "--prec", "128"]);
    let v: serde_json::Value = serde_json::from_str(&o.stdout).unwrap();
    let z3 = rug::Float::with_val(160, rug::Float::zeta_u(3));
    let got = rug::Float::with_val(160, rug::Float::parse(v["value"].as_str().unwrap()).unwrap());
    assert!((got - z3).abs() < 1e-36);
}
