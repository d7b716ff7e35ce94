use super::{AxiomId, CheckResult, Poset, PureKind, StateSet};

/// Largest poset for which the exhaustive subset scans run.
const EXHAUSTIVE_LIMIT: usize = 14;

pub fn check_axiom(p: &Poset, axiom: AxiomId) -> CheckResult {
    if axiom.is_trivial_finite() {
        return CheckResult::trivial(axiom);
    }
    match axiom {
        AxiomId::BoundedComplete => bounded_complete(p),
        AxiomId::StrongAtomicity => strong_atomicity(p),
        AxiomId::RelativeComplement => relative_complement(p),
        AxiomId::LowerSemimodular => lower_semimodular(p),
        AxiomId::CondUpperSemimodular => cond_upper_semimodular(p),
        AxiomId::CondModular => cond_modular(p),
        AxiomId::Atomistic => atomistic(p),
        AxiomId::NoType2 => no_type2(p),
        AxiomId::JoinContinuity => join_continuity(p),
        _ => unreachable!("trivial axioms handled above"),
    }
}

/// Like [`check_axiom`], but the finite-automatic axioms are verified by a
/// definitional scan over all subsets when the poset is small enough.
pub fn check_axiom_exhaustive(p: &Poset, axiom: AxiomId) -> CheckResult {
    if !axiom.is_trivial_finite() {
        return check_axiom(p, axiom);
    }
    if p.len() > EXHAUSTIVE_LIMIT {
        return CheckResult::trivial(axiom);
    }
    match axiom {
        AxiomId::ChainComplete => directed_sups(p, axiom, true),
        AxiomId::DirectedComplete => directed_sups(p, axiom, false),
        AxiomId::MeetContinuous => meet_continuous(p),
        _ => CheckResult::trivial(axiom),
    }
}

/// The projective-domain bundle plus strong atomicity and the no-type-2 axiom.
pub fn check_projective_domain(p: &Poset) -> Vec<CheckResult> {
    [
        AxiomId::DirectedComplete,
        AxiomId::BoundedComplete,
        AxiomId::Atomistic,
        AxiomId::MeetContinuous,
        AxiomId::RelativeComplement,
        AxiomId::CondModular,
        AxiomId::StrongAtomicity,
        AxiomId::NoType2,
    ]
    .into_iter()
    .map(|a| check_axiom(p, a))
    .collect()
}

fn names(p: &Poset, items: &[usize]) -> Vec<String> {
    p.names_of(items)
}

fn bounded_complete(p: &Poset) -> CheckResult {
    let id = AxiomId::BoundedComplete;
    for a in p.elements() {
        for b in a + 1..p.len() {
            if p.meet2(a, b).is_none() {
                return CheckResult::fail(id, names(p, &[a, b]), "pair has no greatest lower bound");
            }
            if p.join2(a, b).is_err() {
                return CheckResult::fail(id, names(p, &[a, b]), "bounded pair has no least upper bound");
            }
        }
    }
    CheckResult::pass(id, "all pairwise meets and bounded joins exist")
}

fn strong_atomicity(p: &Poset) -> CheckResult {
    let id = AxiomId::StrongAtomicity;
    for s in p.elements() {
        for t in p.strict_up(s).iter() {
            let reach = p.upper_covers(s).intersects(p.down(t));
            if !reach {
                return CheckResult::fail(id, names(p, &[s, t]), "no cover of the lower element below the upper one");
            }
        }
    }
    CheckResult::pass(id, "every strict pair admits an intermediate cover")
}

fn relative_complement(p: &Poset) -> CheckResult {
    let id = AxiomId::RelativeComplement;
    for s1 in p.elements() {
        for s2 in p.up(s1).iter() {
            for s2p in p.up(s2).iter() {
                let found = p
                    .up(s1)
                    .intersection(p.down(s2p))
                    .iter()
                    .any(|c| p.meet2(c, s2) == Some(s1) && matches!(p.join2(c, s2), Ok(Some(j)) if j == s2p));
                if !found {
                    return CheckResult::fail(id, names(p, &[s1, s2, s2p]), "no relative complement in the interval");
                }
            }
        }
    }
    CheckResult::pass(id, "every nested triple has a relative complement")
}

fn lower_semimodular(p: &Poset) -> CheckResult {
    let id = AxiomId::LowerSemimodular;
    for s1p in p.elements() {
        for s2p in p.up(s1p).iter() {
            for s2 in p.lower_covers(s2p).iter() {
                if p.leq(s1p, s2) {
                    continue;
                }
                let ok = matches!(p.meet2(s1p, s2), Some(m) if p.is_cover(m, s1p));
                if !ok {
                    return CheckResult::fail(id, names(p, &[s1p, s2p, s2]), "meet is not covered by the element");
                }
            }
        }
    }
    CheckResult::pass(id, "lower semimodular on the cover relation")
}

fn cond_upper_semimodular(p: &Poset) -> CheckResult {
    let id = AxiomId::CondUpperSemimodular;
    for &(s1, s2) in p.cover_relation() {
        for s1p in p.up(s1).iter() {
            if p.leq(s2, s1p) || !p.consistent2(s1p, s2) {
                continue;
            }
            let ok = matches!(p.join2(s1p, s2), Ok(Some(j)) if p.is_cover(s1p, j));
            if !ok {
                return CheckResult::fail(id, names(p, &[s1, s2, s1p]), "element is not covered by its join");
            }
        }
    }
    CheckResult::pass(id, "conditionally upper semimodular on the cover relation")
}

fn cond_modular(p: &Poset) -> CheckResult {
    let id = AxiomId::CondModular;
    for s1 in p.elements() {
        for s2 in p.down(s1).iter() {
            for s3 in p.elements() {
                if !p.consistent2(s2, s3) {
                    continue;
                }
                let lhs = match p.join2(s2, s3) {
                    Ok(Some(j)) => p.meet2(s1, j),
                    _ => None,
                };
                let rhs = match p.meet2(s1, s3) {
                    Some(m) => p.join2(s2, m).ok().flatten(),
                    None => None,
                };
                if lhs.is_none() || lhs != rhs {
                    return CheckResult::fail(id, names(p, &[s1, s2, s3]), "modular law fails");
                }
            }
        }
    }
    CheckResult::pass(id, "conditional modular law holds on all triples")
}

fn atomistic(p: &Poset) -> CheckResult {
    let id = AxiomId::Atomistic;
    for s in p.elements() {
        if s == p.bottom() {
            continue;
        }
        let below = p.atoms().intersection(p.down(s));
        let ok = matches!(p.join_of(&below), Ok(Some(j)) if j == s);
        if !ok {
            return CheckResult::fail(id, names(p, &[s]), "not the join of the atoms below it");
        }
    }
    CheckResult::pass(id, "every element is the join of its atoms")
}

fn no_type2(p: &Poset) -> CheckResult {
    let id = AxiomId::NoType2;
    let pure = p.pure_states();
    let odd: Vec<usize> = pure.set().iter().filter(|&i| pure.kind(i) != Some(PureKind::Type1)).collect();
    match odd.first() {
        None => CheckResult::pass(id, "all pure states are maximal"),
        Some(&i) => {
            let kind = pure.kind(i).expect("pure");
            CheckResult::fail(id, names(p, &[i]), format!("pure state of kind {kind:?}"))
        }
    }
}

/// Finite form: for an interval filter `F = [m, t]` and `s` consistent with `t`,
/// `s ⊔ m` equals the meet of `{s ⊔ f : f ∈ F}`.
fn join_continuity(p: &Poset) -> CheckResult {
    let id = AxiomId::JoinContinuity;
    for m in p.elements() {
        for t in p.up(m).iter() {
            let filter = p.up(m).intersection(p.down(t));
            for s in p.elements() {
                if !p.consistent2(s, t) {
                    continue;
                }
                let mut joins = p.empty_set();
                let mut defined = true;
                for f in filter.iter() {
                    match p.join2(s, f) {
                        Ok(Some(j)) => joins.insert(j),
                        _ => defined = false,
                    }
                }
                let lhs = p.join2(s, m).ok().flatten();
                let rhs = if defined { p.meet_of(&joins).ok() } else { None };
                if lhs.is_none() || lhs != rhs {
                    return CheckResult::fail(
                        id,
                        names(p, &[m, t, s]),
                        "join does not distribute over the filter meet",
                    );
                }
            }
        }
    }
    CheckResult::pass(id, "join-continuity holds on all interval filters")
}

fn all_subsets(n: usize) -> impl Iterator<Item = Vec<usize>> {
    (1u32..(1u32 << n)).map(move |mask| (0..n).filter(|&i| mask & (1 << i) != 0).collect())
}

fn is_directed(p: &Poset, items: &[usize]) -> bool {
    items.iter().all(|&a| items.iter().all(|&b| items.iter().any(|&c| p.leq(a, c) && p.leq(b, c))))
}

fn is_chain(p: &Poset, items: &[usize]) -> bool {
    items.iter().all(|&a| items.iter().all(|&b| p.comparable(a, b)))
}

fn directed_sups(p: &Poset, id: AxiomId, chains_only: bool) -> CheckResult {
    for items in all_subsets(p.len()) {
        let shape_ok = if chains_only { is_chain(p, &items) } else { is_directed(p, &items) };
        if !shape_ok {
            continue;
        }
        if !matches!(p.join_of(&p.set_of(items.iter().copied())), Ok(Some(_))) {
            return CheckResult::fail(id, names(p, &items), "directed subset without a supremum");
        }
    }
    CheckResult::pass(id, "every directed subset has a supremum (exhaustive)")
}

fn meet_continuous(p: &Poset) -> CheckResult {
    let id = AxiomId::MeetContinuous;
    for items in all_subsets(p.len()) {
        if !is_directed(p, &items) {
            continue;
        }
        let set: StateSet = p.set_of(items.iter().copied());
        let Ok(Some(sup)) = p.join_of(&set) else {
            return CheckResult::fail(id, names(p, &items), "directed subset without a supremum");
        };
        for s in p.elements() {
            let lhs = p.meet2(s, sup);
            let mut parts = p.empty_set();
            let mut defined = true;
            for &d in &items {
                match p.meet2(s, d) {
                    Some(m) => parts.insert(m),
                    None => defined = false,
                }
            }
            let rhs = if defined { p.join_of(&parts).ok().flatten() } else { None };
            if lhs.is_none() || lhs != rhs {
                let mut w = names(p, &[s]);
                w.extend(names(p, &items));
                return CheckResult::fail(id, w, "meet does not distribute over the directed join");
            }
        }
    }
    CheckResult::pass(id, "meet-continuity holds on all directed subsets (exhaustive)")
}

#[cfg(test)]
mod tests {
    use super::super::tests::{bool3, chain3, mo2, poset};
    use super::*;
    use crate::order_core::Verdict;

    fn n5() -> Poset {
        poset(&["0", "1", "a", "b", "c"], &[("0", "a"), ("a", "c"), ("c", "1"), ("0", "b"), ("b", "1")])
    }

    #[test]
    fn boolean_and_mo_are_projective() {
        for p in [bool3(), mo2()] {
            for r in check_projective_domain(&p) {
                assert_ne!(r.verdict(), Verdict::Fail, "{r}");
            }
        }
    }

    #[test]
    fn pentagon_fails_cond_modular() {
        let r = check_axiom(&n5(), AxiomId::CondModular);
        assert_eq!(r.verdict(), Verdict::Fail);
        assert_eq!(r.witness().unwrap(), ["c", "a", "b"]);
    }

    #[test]
    fn chain_fails_no_type2() {
        let r = check_axiom(&chain3(), AxiomId::NoType2);
        assert_eq!(r.witness().unwrap(), ["a"]);
        assert_eq!(check_axiom(&chain3(), AxiomId::BoundedComplete).verdict(), Verdict::Pass);
    }

    #[test]
    fn trivial_axioms() {
        assert_eq!(check_axiom(&bool3(), AxiomId::Algebraic).verdict(), Verdict::TrivialFinite);
        assert_eq!(check_axiom_exhaustive(&bool3(), AxiomId::DirectedComplete).verdict(), Verdict::Pass);
        assert_eq!(check_axiom_exhaustive(&bool3(), AxiomId::MeetContinuous).verdict(), Verdict::Pass);
        assert_eq!(check_axiom_exhaustive(&bool3(), AxiomId::ChainComplete).verdict(), Verdict::Pass);
    }

    #[test]
    fn fan_fails_bounded_completeness() {
        let p = poset(
            &["0", "x", "y", "u", "v"],
            &[("0", "x"), ("0", "y"), ("x", "u"), ("y", "u"), ("x", "v"), ("y", "v")],
        );
        let r = check_axiom(&p, AxiomId::BoundedComplete);
        assert_eq!(r.witness().unwrap(), ["x", "y"]);
    }

    #[test]
    fn semimodularity_on_fixtures() {
        for p in [bool3(), mo2()] {
            assert_eq!(check_axiom(&p, AxiomId::LowerSemimodular).verdict(), Verdict::Pass);
            assert_eq!(check_axiom(&p, AxiomId::CondUpperSemimodular).verdict(), Verdict::Pass);
        }
        assert_eq!(check_axiom(&n5(), AxiomId::CondUpperSemimodular).verdict(), Verdict::Fail);
        assert_eq!(check_axiom(&n5(), AxiomId::JoinContinuity).verdict(), Verdict::Pass);
    }
}
