//! Reducible products of orthomodular fixtures contain discriminating tests that are not perfect.

use qchu_kit::generators::{gen_mo, gen_product};
use qchu_kit::measurement::PropertyRecord;
use qchu_kit::order_core::{check_axiom, AxiomId, Verdict};
use qchu_kit::ortho_hilbert::{check_discriminating_perfect, is_discriminating, validate_scheme};
use qchu_oracle::{scott_ideal, Order};

#[test]
fn mo2_squared_has_a_discriminating_test_that_is_not_quasi_classical() {
    let s = gen_product(&gen_mo(2).unwrap(), &gen_mo(2).unwrap()).unwrap();
    let p = &s.poset;
    let u = s.scheme().unwrap();
    for axiom in AxiomId::ALL {
        assert_ne!(check_axiom(p, axiom).verdict(), Verdict::Fail, "{axiom:?}");
    }
    assert!(validate_scheme(p, u, true).iter().all(|r| r.verdict() != Verdict::Fail));

    let idx = |n: &str| p.index_of(n).unwrap();
    let (sigma, bar) = (idx("(0,a)"), idx("(1,a')"));
    assert!(is_discriminating(p, sigma, bar));
    assert!(u.contains(sigma, bar));

    let l = PropertyRecord::new(p, "[(0,a),(1,a')]", sigma, Some(bar));
    assert!(!l.flags.quasi_classical && !l.flags.perfect);
    let o = Order::from_fn(p.len(), |a, b| p.leq(a, b));
    assert!(!scott_ideal(&o, &l.consistency.to_vec(), &l.questionable.to_vec()));
    // the join of the domain below (1,b) is (1,b) itself, which lies outside the domain
    let witness = idx("(1,b)");
    assert!(l.questionable.contains(witness) && !l.consistency.contains(witness));
    assert!(!scott_ideal(&o, &l.consistency.to_vec(), &[witness]));

    assert_eq!(check_discriminating_perfect(p).verdict(), Verdict::Fail);
}
