use std::collections::HashSet;

use nullcone::instability::Budget;
use nullcone::rational::int;
use nullcone::relative_spec::{build_relative, parse_relative};
use nullcone::root_datum::{LatticeKind, RootDatum};
use nullcone::stratification::{
    enumerate_strata, enumerate_strata_with_budget, isogeny_invariance_check, norm_invariance_check, regular_label,
};
use nullcone::weighted_module::WeightedModule;
use nullcone::{Error, Rational, RationalVector};
use num_traits::One;

const TYPES: &[&str] = &["A1", "A2", "A3", "B2", "B3", "C2", "C3", "G2", "A1xA1"];

fn r(s: &str) -> RationalVector {
    s.parse().unwrap()
}

#[test]
fn labels_are_distinct_dominant_and_ordered() {
    for t in TYPES {
        let d = RootDatum::build(t).unwrap();
        let adj = WeightedModule::adjoint(&d);
        let table = enumerate_strata(&d).unwrap();
        let mut keys = HashSet::new();
        for row in &table.rows {
            assert!(d.is_dominant(&row.mu), "{t}");
            let mut sat = adj.at_least(&row.mu, &Rational::one()).basis_weights();
            sat.sort();
            assert!(keys.insert((sat, row.q2.clone())), "{t}: duplicate stratum key at {}", row.mu);
        }
        assert!(table.rows.windows(2).all(|w| w[0].q2 >= w[1].q2), "{t}");
        assert!(table.rows.last().unwrap().is_trivial());
        // within a chain of saturations, q² orders strictly
        for a in &table.rows {
            for b in &table.rows {
                let sa = adj.at_least(&a.mu, &Rational::one());
                let sb = adj.at_least(&b.mu, &Rational::one());
                let inside = sa.weights().iter().all(|w| sb.weights().contains(w));
                if a.mu != b.mu && inside && !a.is_trivial() {
                    assert!(a.q2 != b.q2, "{t}: {} and {}", a.mu, b.mu);
                }
            }
        }
    }
}

#[test]
fn regular_label_is_mu_p0_and_tops_the_table() {
    for t in TYPES {
        let d = RootDatum::build(t).unwrap();
        let reg = regular_label(&d).unwrap();
        let table = enumerate_strata(&d).unwrap();
        assert_eq!(table.rows[0].mu, reg.mu, "{t}");
        assert_eq!(reg.dim_stratum, d.dim() - d.rank(), "{t}");
    }
}

#[test]
fn isogeny_invariance() {
    for t in ["A1", "A2", "A3", "C2"] {
        let d = RootDatum::build(t).unwrap();
        let rep = isogeny_invariance_check(&d, LatticeKind::Adjoint).unwrap();
        assert!(rep.invariant, "{t}");
    }
    let c2 = isogeny_invariance_check(&RootDatum::build("C2").unwrap(), LatticeKind::Adjoint).unwrap();
    let changed: Vec<_> = c2.level_changes.iter().map(|c| (c.mu.clone(), c.base.1, c.variant.1)).collect();
    assert_eq!(changed, vec![(r("(3/2,1/2)"), 2, 1), (r("(1/2,1/2)"), 2, 1)]);
}

#[test]
fn norm_invariance() {
    let d = RootDatum::build("A1xA1").unwrap();
    assert!(norm_invariance_check(&d, &[int(1), int(1)], &[int(1), int(3)]).unwrap().invariant);
    assert!(norm_invariance_check(&d, &[int(2), int(5)], &[int(7), int(1)]).unwrap().invariant);
    let c2 = RootDatum::build("C2").unwrap();
    assert!(norm_invariance_check(&c2, &[int(1)], &[int(2)]).unwrap().invariant);
    let a1 = RootDatum::build("A1").unwrap();
    assert!(norm_invariance_check(&a1, &[int(1)], &[int(1)]).unwrap().invariant);
}

#[test]
fn relative_copy_of_a_split_datum_gives_the_same_strata() {
    let split = RootDatum::build("A1").unwrap();
    let rows = |d: &RootDatum| -> Vec<(RationalVector, RationalVector, u64, Rational, usize)> {
        enumerate_strata(d)
            .unwrap()
            .rows
            .into_iter()
            .map(|r| (r.mu, r.lambda, r.m, r.q2, r.dim_stratum))
            .collect()
    };
    assert_eq!(rows(&split), rows(&split.as_relative()));
    let typed = parse_relative("root 2\nsimple 2\ngram 2\n", "a1").unwrap();
    assert_eq!(rows(&split), rows(&typed));
}

#[test]
fn relative_recursion_through_a_levi_with_roots_is_refused() {
    let a2 = RootDatum::build("A2").unwrap().as_relative();
    assert!(matches!(enumerate_strata(&a2), Err(Error::RelativeRecursion)));
}

#[test]
fn su21_table() {
    let d = build_relative("su21").unwrap();
    let t = enumerate_strata(&d).unwrap();
    let rows: Vec<_> = t.nontrivial().map(|r| (r.mu.clone(), r.lambda.clone(), r.m)).collect();
    assert_eq!(rows, vec![(r("(1)"), r("(1)"), 1), (r("(1/2)"), r("(1)"), 2)]);
}

#[test]
fn bc1_tables_follow_the_multiplicities() {
    for (m1, m2) in [(1, 1), (2, 1), (3, 2), (4, 0)] {
        let d = build_relative(&format!("bc1({m1},{m2})")).unwrap();
        let t = enumerate_strata(&d).unwrap();
        let dims: Vec<usize> = t.rows.iter().map(|r| r.dim_stratum).collect();
        if m2 == 0 {
            assert_eq!(dims, vec![2 * m1 as usize, 0]);
        } else {
            assert_eq!(dims, vec![2 * (m1 + m2) as usize, (m1 + 2 * m2) as usize, 0]);
        }
    }
}

#[test]
fn budget_exhaustion_is_an_error() {
    let d = RootDatum::build("A3").unwrap();
    assert!(matches!(
        enumerate_strata_with_budget(&d, &mut Budget::new(3)),
        Err(Error::BudgetExceeded { limit: 3 })
    ));
}
