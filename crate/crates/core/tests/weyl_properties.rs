use nullcone::instability::torus_optimal;
use nullcone::rational::rat;
use nullcone::root_datum::RootDatum;
use nullcone::{Error, RationalVector};
use num_traits::One;
use proptest::prelude::*;

const TYPES: &[&str] = &["A1", "A2", "A3", "B2", "B3", "C2", "C3", "G2", "A1xA1"];

fn datum() -> impl Strategy<Value = RootDatum> {
    proptest::sample::select(TYPES).prop_map(|t| RootDatum::build(t).unwrap())
}

fn cochar(rank: usize) -> impl Strategy<Value = RationalVector> {
    proptest::collection::vec((-6i64..=6, 1i64..=3), rank)
        .prop_map(|v| RationalVector::new(v.into_iter().map(|(n, d)| rat(n, d)).collect()))
}

fn with_cochar() -> impl Strategy<Value = (RootDatum, RationalVector)> {
    datum().prop_flat_map(|d| {
        let r = d.rank();
        (Just(d), cochar(r))
    })
}

fn with_support() -> impl Strategy<Value = (RootDatum, Vec<RationalVector>)> {
    datum().prop_flat_map(|d| {
        let roots: Vec<RationalVector> = d.roots().into_iter().map(|(r, _)| r).collect();
        (Just(d), proptest::sample::subsequence(roots.clone(), 1..=roots.len().min(5)))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn weyl_group_preserves_the_form((d, mu) in with_cochar()) {
        let n = d.gram().norm2(&mu);
        for w in d.weyl_group().unwrap() {
            prop_assert_eq!(d.gram().norm2(&w.cocharacter.mul_vec(&mu)), n.clone());
        }
    }

    #[test]
    fn dominantize_is_idempotent_and_picks_one_point_per_orbit((d, mu) in with_cochar()) {
        let (dom, word) = d.dominantize(&mu);
        prop_assert!(d.is_dominant(&dom));
        prop_assert_eq!(d.gram().norm2(&dom), d.gram().norm2(&mu));
        prop_assert_eq!(d.dominantize(&dom), (dom.clone(), vec![]));
        let mut replay = mu.clone();
        for i in word {
            let a = &d.simple_roots()[i];
            replay.axpy(&-a.dot(&replay), &d.simple_coroots()[i]);
        }
        prop_assert_eq!(&replay, &dom);
        let orbit: Vec<RationalVector> = d.weyl_group().unwrap().iter().map(|w| w.cocharacter.mul_vec(&mu)).collect();
        let dominant: Vec<&RationalVector> = orbit.iter().filter(|x| d.is_dominant(x)).collect();
        prop_assert!(dominant.iter().all(|x| **x == dom));
    }

    #[test]
    fn torus_optimal_is_weyl_equivariant((d, support) in with_support()) {
        let base = torus_optimal(&support, &d);
        for w in d.weyl_group().unwrap() {
            let moved: Vec<RationalVector> = support.iter().map(|c| w.character.mul_vec(c)).collect();
            match (&base, torus_optimal(&moved, &d)) {
                (Ok(a), Ok(b)) => {
                    prop_assert_eq!(w.cocharacter.mul_vec(&a.mu), b.mu);
                    prop_assert_eq!(&a.q2, &b.q2);
                }
                (Err(Error::Infeasible), Err(Error::Infeasible)) => {}
                (a, b) => prop_assert!(false, "{:?} vs {:?}", a, b),
            }
        }
    }

    #[test]
    fn level_identity((d, support) in with_support()) {
        let Ok(k) = torus_optimal(&support, &d) else { return Ok(()) };
        let min_pair = support.iter().map(|c| c.dot(&k.lambda)).min().unwrap();
        prop_assert_eq!(min_pair, rat(k.m as i64, 1));
        prop_assert_eq!(k.lambda.clone(), k.mu.scale(&rat(k.m as i64, 1)));
        for (i, c) in support.iter().enumerate() {
            let p = c.dot(&k.mu);
            prop_assert!(p >= rat(1, 1));
            prop_assert_eq!(p.is_one(), k.certificate.active_set.contains(&i));
        }
        prop_assert!(d.lattice().contains(&k.lambda));
        for p in 2..=6 {
            prop_assert!(!d.lattice().contains(&k.lambda.scale(&rat(1, p))));
        }
    }
}
