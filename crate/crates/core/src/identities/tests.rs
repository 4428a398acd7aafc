use super::*;

const PREC: u32 = 128;

fn run(id: &str, cases: usize, seed: u64) -> FuzzSummary {
    let s = fuzz(id, cases, seed, &Bounds::default(), None, PREC).unwrap();
    for r in &s.reports {
        if r.status != Status::Pass {
            eprintln!("{}: {} {:?} {:?}", id, r.case.params, r.status, r.residual.as_ref().map(|v| v.to_string()));
        }
    }
    s
}

#[test]
fn registry_is_complete_and_unique() {
    let ids: std::collections::BTreeSet<_> = registry().iter().map(|d| d.id).collect();
    assert_eq!(ids.len(), registry().len());
    assert_eq!(registry().len(), 32);
    assert!(lookup("pmpls1").is_ok());
    assert!(lookup("nope").is_err());
}

#[test]
fn every_entry_passes_a_few_generated_cases() {
    for d in registry() {
        let s = run(d.id, 3, 7);
        assert_eq!(s.fail, 0, "{} failed", d.id);
        assert_eq!(s.skip, 0, "{} skipped", d.id);
    }
}

#[test]
fn exact_entries_are_exactly_zero() {
    for id in ["SS2016-LEMMA", "PMPLS1", "PMPLS2", "PMHNS", "NPMPLS1", "NPMPLS2"] {
        let s = run(id, 20, 3);
        assert_eq!(s.pass, 20, "{id}");
        assert!(s.reports.iter().all(|r| r.residual.as_ref().unwrap().is_exact_zero()));
    }
}

#[test]
fn generation_is_deterministic() {
    let d = lookup("KYMZV2").unwrap();
    let b = Bounds::default();
    assert_eq!(d.generate(11, 4, &b), d.generate(11, 4, &b));
}

#[test]
fn precondition_failures_are_errors() {
    let p = Params::new()
        .with("k", Param::Comp(vec![1, 2]))
        .with("x", Param::Labels(vec![Q::one()]))
        .with("n", Param::Int(3));
    let c = IdentityCase::new("SS2016-LEMMA", p, Mode::Exact, PREC).unwrap();
    assert!(verify(&c).is_err());
}

#[test]
fn bounds_parse() {
    let b = Bounds::parse("weight=4,n=3").unwrap();
    assert_eq!((b.weight, b.depth, b.n, b.poset), (4, 3, 3, 6));
    assert!(Bounds::parse("size=2").is_err());
}
