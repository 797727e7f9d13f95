use nullcone::induction::{independence_check, induce, transitivity_check, CheckOutcome, InductionOptions, LeviStratum};
use nullcone::root_datum::{mu_p, standard_parabolics, RootDatum};
use nullcone::stratification::enumerate_strata;
use nullcone::RationalVector;

const TYPES: &[&str] = &["A1", "A2", "A3", "B2", "B3", "C2", "C3", "G2", "A1xA1"];

fn r(s: &str) -> RationalVector {
    s.parse().unwrap()
}

#[test]
fn mu_p_routes_agree_and_match_eta() {
    let o = InductionOptions::default();
    for t in TYPES {
        let d = RootDatum::build(t).unwrap();
        for p in standard_parabolics(&d) {
            let m = mu_p(&p, &d).unwrap();
            assert_eq!(d.mu_p_qp(&p).unwrap(), d.mu_p_closed_form(&p), "{t} {p:?}");
            let res = induce(&d, &p, &LeviStratum::Trivial, &o).unwrap();
            assert_eq!(res.eta, m, "{t} {p:?}");
        }
    }
}

#[test]
fn certified_inductions_land_in_the_table_with_richardson_dimension() {
    let o = InductionOptions::default();
    for t in TYPES {
        let d = RootDatum::build(t).unwrap();
        let table = enumerate_strata(&d).unwrap();
        for p in standard_parabolics(&d) {
            let res = induce(&d, &p, &LeviStratum::Trivial, &o).unwrap();
            let Some(label) = res.certified() else { continue };
            let row = table.find(&label.mu).unwrap_or_else(|| panic!("{t} {p:?}: {} not in table", label.mu));
            assert_eq!(row.dim_stratum, label.dim_stratum);
            let unip: usize = d.unipotent_roots(&p).iter().map(|(_, m)| *m as usize).sum();
            assert_eq!(label.dim_stratum, 2 * unip, "{t} {p:?}");
        }
    }
}

#[test]
fn minimal_parabolic_always_certifies_the_regular_stratum() {
    let o = InductionOptions::default();
    for t in TYPES {
        let d = RootDatum::build(t).unwrap();
        let res = induce(&d, &d.minimal_parabolic(), &LeviStratum::Trivial, &o).unwrap();
        assert_eq!(&res.certified().unwrap().mu, &enumerate_strata(&d).unwrap().rows[0].mu, "{t}");
    }
}

#[test]
fn transitivity_never_fails() {
    let o = InductionOptions::default();
    for t in ["A2", "A3", "B2", "C2", "C3", "G2"] {
        let d = RootDatum::build(t).unwrap();
        for p in standard_parabolics(&d) {
            let outcome = transitivity_check(&d, &d.minimal_parabolic(), &p, &o).unwrap();
            assert!(outcome.passed_or_skipped(), "{t} {p:?}: {outcome:?}");
        }
    }
}

#[test]
fn a2_maximal_parabolics() {
    let d = RootDatum::build("A2").unwrap();
    let o = InductionOptions::default();
    let p1 = d.parabolic(&[0]).unwrap();
    let p2 = d.parabolic(&[1]).unwrap();
    let outcome = independence_check(&d, &p1, &p2, &LeviStratum::Trivial, &o).unwrap();
    assert_eq!(
        outcome,
        CheckOutcome::Skipped {
            reason: "an induction is flagged".into(),
            fallback_agree: Some(true),
        }
    );
    let res = induce(&d, &p1, &LeviStratum::Trivial, &o).unwrap();
    assert_eq!(res.best_label(), Some(&r("(1/2,1/2)")));
}

#[test]
fn levi_label_induction_reports_the_formula_gap() {
    let d = RootDatum::build("C2").unwrap();
    let o = InductionOptions::default();
    let siegel = d.parabolic(&[0]).unwrap();
    let res = induce(&d, &siegel, &LeviStratum::Label(r("(1/2,-1/2)")), &o).unwrap();
    assert_eq!(res.certified().unwrap().mu, r("(3/2,1/2)"));
    // ξ + μ_P = (1,0) while the union support has min-norm point (3/2,1/2)
    assert!(res.diagnostics.iter().any(|m| m.contains("differs")));
}
