use proptest::prelude::*;
use qchu_kit::chu_core::TruthValue;
use qchu_kit::cli_io::{parse_state_space, save_state_space};
use qchu_kit::generators::{corpus, random_chu, Family, SplitMix64};
use qchu_kit::measurement::{measure_theta, theta_map, validate_measurement_map};
use qchu_kit::order_core::Poset;
use qchu_kit::ortho_hilbert::StateSpace;

fn truth() -> impl Strategy<Value = TruthValue> {
    prop::sample::select(TruthValue::ALL.to_vec())
}

fn random_space() -> impl Strategy<Value = (u64, usize, usize)> {
    (any::<u64>(), 2usize..=5, 1usize..=3)
}

proptest! {
    #[test]
    fn truth_meet_is_a_semilattice(a in truth(), b in truth(), c in truth()) {
        prop_assert_eq!(a.meet(b), b.meet(a));
        prop_assert_eq!(a.meet(b).meet(c), a.meet(b.meet(c)));
        prop_assert_eq!(a.meet(a), a);
        prop_assert_eq!(a.leq(b), a.meet(b) == a);
        prop_assert_eq!(a.bar().bar(), a);
        prop_assert_eq!(a.leq(b), a.bar().leq(b.bar()));
    }

    #[test]
    fn saturation_is_idempotent((seed, preps, tests) in random_space()) {
        let chu = random_chu(seed, preps, tests).unwrap();
        let once = chu.saturate().unwrap();
        let twice = once.saturate().unwrap();
        prop_assert_eq!(once.rows().len(), twice.rows().len());
        for i in 0..once.rows().len() {
            for j in 0..once.rows().len() {
                let m = once.mix(&[i, j]).unwrap();
                prop_assert!(once.rows().contains(&m));
            }
        }
    }

    #[test]
    fn quotient_is_biextensional_and_ordered((seed, preps, tests) in random_space()) {
        let q = random_chu(seed, preps, tests).unwrap().saturate().unwrap().quotient().unwrap();
        q.check_invariants().unwrap();
        let p = q.states();
        for a in p.elements() {
            for b in a + 1..p.len() {
                prop_assert_ne!(q.row(a), q.row(b));
            }
        }
        for a in p.elements() {
            for b in p.elements() {
                let pointwise = q.row(a).iter().zip(q.row(b)).all(|(x, y)| x.leq(*y));
                prop_assert_eq!(p.leq(a, b), pointwise);
            }
        }
    }

    #[test]
    fn state_space_json_round_trips((seed, preps, tests) in random_space()) {
        let q = random_chu(seed, preps, tests).unwrap().saturate().unwrap().quotient().unwrap();
        let space = StateSpace::new(q.states().clone(), None);
        let text = save_state_space(&space);
        let back = parse_state_space(&text).unwrap();
        prop_assert!(back.poset.same_as(&space.poset));
        prop_assert_eq!(save_state_space(&back), text);
    }

    #[test]
    fn family_syntax_round_trips(seed in any::<u64>(), n in 1usize..8, k in 1usize..8) {
        let fams = [
            Family::Boolean(n),
            Family::Mo(n),
            Family::Chain(k),
            Family::RandomChu { seed, preparations: n, tests: k },
            Family::Product(Box::new(Family::Mo(n)), Box::new(Family::Product(Box::new(Family::N5), Box::new(Family::Chain(k))))),
        ];
        for f in fams {
            prop_assert_eq!(f.to_string().parse::<Family>().unwrap(), f);
        }
    }

    #[test]
    fn splitmix_is_reproducible(seed in any::<u64>()) {
        let mut a = SplitMix64::new(seed);
        let mut b = SplitMix64::new(seed);
        for _ in 0..16 {
            prop_assert_eq!(a.next_u64(), b.next_u64());
        }
    }
}

#[test]
fn splitmix_reference_value() {
    assert_eq!(SplitMix64::new(0).next_u64(), 0xE220_A839_7B1D_CDAF);
}

fn spaces_with_schemes() -> Vec<(String, StateSpace)> {
    corpus()
        .into_iter()
        .filter_map(|f| {
            let s = f.space().ok()?;
            s.scheme.is_some().then(|| (f.to_string(), s))
        })
        .collect()
}

/// Constructed measurements are idempotent retractions onto the actual set.
#[test]
fn measurements_are_idempotent_retractions() {
    for (name, space) in spaces_with_schemes() {
        let p: &Poset = &space.poset;
        if p.len() > 40 {
            continue;
        }
        for l in space.properties().into_iter().filter(|l| l.flags.quasi_classical) {
            let map = theta_map(p, &l).unwrap();
            assert!(validate_measurement_map(p, &map, &l).unwrap().minimal, "{name} {}", l.id);
            for s in l.questionable.iter() {
                let once = measure_theta(p, &l, s).unwrap();
                assert!(l.actual.contains(once), "{name} {}", l.id);
                assert_eq!(measure_theta(p, &l, once).unwrap(), once, "{name} {}", l.id);
            }
        }
    }
}
