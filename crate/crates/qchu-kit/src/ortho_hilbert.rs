//! Schemes of tests, the orthogonality and star calculus they induce, and the
//! lattice of ortho-closed sets of pure states.

use std::collections::HashMap;

use thiserror::Error;

use crate::chu_core::{make_generalized_test, ChuError, GenTest};
use crate::measurement::{is_perfect, measure_theta, PropertyRecord};
use crate::order_core::{subsets_up_to, CheckId, CheckResult, OrderError, Poset, StateSet};

pub const CLOSED_SET_LIMIT: usize = 1 << 16;
/// Largest subset size for laws quantified over subsets.
pub const SUBSET_BOUND: usize = 4;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OrthoError {
    #[error("star is not an orthocomplementation at ({}): {reason}", witness.join(","))]
    NotOrthocomplement { witness: Vec<String>, reason: String },
    #[error("state `{0}` has no orthogonal state")]
    EmptyPerp(String),
    #[error("states orthogonal to `{0}` do not form a principal filter")]
    NotPrincipalPerp(String),
    #[error("more than {CLOSED_SET_LIMIT} closed sets")]
    SizeLimit,
    #[error("the state space has no scheme")]
    MissingScheme,
    #[error(transparent)]
    Chu(#[from] ChuError),
    #[error(transparent)]
    Order(#[from] OrderError),
}

/// A set of generalized tests, kept sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Scheme {
    pairs: Vec<GenTest>,
}

impl Scheme {
    pub fn new(p: &Poset, pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Scheme, OrthoError> {
        let mut tests =
            pairs.into_iter().map(|(a, b)| make_generalized_test(p, a, b)).collect::<Result<Vec<_>, _>>()?;
        tests.sort_unstable();
        tests.dedup();
        Ok(Scheme { pairs: tests })
    }

    pub fn pairs(&self) -> &[GenTest] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn contains(&self, sigma: usize, sigma_prime: usize) -> bool {
        self.pairs.binary_search(&GenTest { sigma, sigma_prime }).is_ok()
    }

    /// Conjugates listed with `sigma` as first component.
    pub fn partners(&self, sigma: usize) -> impl Iterator<Item = usize> + '_ {
        self.pairs.iter().filter(move |t| t.sigma == sigma).map(|t| t.sigma_prime)
    }

    /// The partner of each state when it is unique.
    pub fn star_map(&self, n: usize) -> Vec<Option<usize>> {
        (0..n)
            .map(|s| {
                let mut it = self.partners(s);
                match (it.next(), it.next()) {
                    (Some(x), None) => Some(x),
                    _ => None,
                }
            })
            .collect()
    }
}

/// A poset of states, optionally equipped with a scheme.
#[derive(Debug, Clone)]
pub struct StateSpace {
    pub poset: Poset,
    pub scheme: Option<Scheme>,
}

impl StateSpace {
    pub fn new(poset: Poset, scheme: Option<Scheme>) -> StateSpace {
        StateSpace { poset, scheme }
    }

    pub fn scheme(&self) -> Result<&Scheme, OrthoError> {
        self.scheme.as_ref().ok_or(OrthoError::MissingScheme)
    }

    /// One record per scheme pair.
    pub fn properties(&self) -> Vec<PropertyRecord> {
        self.scheme.iter().flat_map(|u| u.pairs()).map(|t| PropertyRecord::from_test(&self.poset, t)).collect()
    }
}

/// Quasi-consistent but inconsistent.
pub fn is_discriminating(p: &Poset, sigma: usize, sigma_prime: usize) -> bool {
    p.is_quasi_consistent(sigma, sigma_prime) && !p.consistent2(sigma, sigma_prime)
}

pub fn validate_scheme(p: &Poset, u: &Scheme, require_discriminating: bool) -> Vec<CheckResult> {
    let names = |xs: &[usize]| p.names_of(xs);
    let missing = p.elements().find(|&s| s != p.bottom() && u.partners(s).next().is_none());
    let complete = CheckResult::from_witness(
        CheckId::SchemeComplete,
        missing.map(|s| names(&[s])),
        format!("every non-bottom state heads a pair ({} pairs)", u.len()),
        "state heads no pair",
    );

    let mut redundant = None;
    'outer: for t1 in u.pairs() {
        for t2 in u.pairs() {
            if p.leq(t1.sigma, t2.sigma) != p.leq(t2.sigma_prime, t1.sigma_prime) {
                redundant = Some(vec![t1.label(p), t2.label(p)]);
                break 'outer;
            }
        }
    }
    let irredundant = CheckResult::from_witness(
        CheckId::SchemeIrredundant,
        redundant,
        "property states and conjugates are order-dual across pairs",
        "order between property states is not reversed between conjugates",
    );

    let mut open = u.pairs().iter().find(|t| !u.contains(t.sigma_prime, t.sigma)).map(|t| vec![t.label(p)]);
    if open.is_none() {
        'fusion: for t1 in u.pairs() {
            for t2 in u.pairs() {
                let joined = p.join2(t1.sigma, t2.sigma);
                let Ok(Some(top)) = joined else {
                    if joined.is_err() {
                        open = Some(vec![t1.label(p), t2.label(p)]);
                        break 'fusion;
                    }
                    continue;
                };
                let fused = p.meet2(t1.sigma_prime, t2.sigma_prime);
                if !fused.is_some_and(|bottom| u.contains(top, bottom)) {
                    open = Some(vec![t1.label(p), t2.label(p)]);
                    break 'fusion;
                }
            }
        }
    }
    let closed = CheckResult::from_witness(
        CheckId::SchemeClosed,
        open,
        "closed under conjugation and fusion",
        "conjugate or fusion of these pairs is missing",
    );

    let mut out = vec![complete, irredundant, closed];
    if require_discriminating {
        let bad = u.pairs().iter().find(|t| !is_discriminating(p, t.sigma, t.sigma_prime));
        out.push(CheckResult::from_witness(
            CheckId::SchemeDiscriminating,
            bad.map(|t| vec![t.label(p)]),
            "every pair is discriminating",
            "pair is not quasi-consistent",
        ));
    }
    out
}

/// Scheme `{(σ, star σ)}` after checking that `star` is an involutive, order-reversing
/// map on non-bottom states whose pairs are discriminating.
pub fn scheme_from_star(p: &Poset, star: &[Option<usize>]) -> Result<Scheme, OrthoError> {
    let bad = |witness: Vec<usize>, reason: &str| OrthoError::NotOrthocomplement {
        witness: p.names_of(&witness),
        reason: reason.to_string(),
    };
    let non_bottom: Vec<usize> = p.elements().filter(|&s| s != p.bottom()).collect();
    for &s in &non_bottom {
        let t = star.get(s).copied().flatten().ok_or_else(|| bad(vec![s], "star undefined"))?;
        if t == p.bottom() {
            return Err(bad(vec![s], "star maps to the bottom"));
        }
        if star.get(t).copied().flatten() != Some(s) {
            return Err(bad(vec![s], "star is not involutive"));
        }
        if !is_discriminating(p, s, t) {
            return Err(bad(vec![s, t], "pair is not discriminating"));
        }
    }
    for &a in &non_bottom {
        for b in p.up(a).iter() {
            if let (Some(sa), Some(sb)) = (star[a], star[b]) {
                if !p.leq(sb, sa) {
                    return Err(bad(vec![a, b], "star is not order-reversing"));
                }
            }
        }
    }
    Scheme::new(p, non_bottom.iter().map(|&s| (s, star[s].expect("checked above"))))
}

/// `σ1 ⊥ σ2`: some pair has its property state below `σ1` and its conjugate below `σ2`.
pub fn orthogonal(p: &Poset, u: &Scheme, a: usize, b: usize) -> bool {
    a != p.bottom() && b != p.bottom() && u.pairs().iter().any(|t| p.leq(t.sigma, a) && p.leq(t.sigma_prime, b))
}

/// Precomputed orthogonality relation of a scheme.
#[derive(Debug, Clone)]
pub struct Orthogonality {
    perp: Vec<StateSet>,
    full: StateSet,
}

impl Orthogonality {
    pub fn new(p: &Poset, u: &Scheme) -> Orthogonality {
        let mut perp = vec![p.empty_set(); p.len()];
        for t in u.pairs() {
            for a in p.up(t.sigma).iter() {
                perp[a].union_with(p.up(t.sigma_prime));
            }
        }
        let bottom = p.bottom();
        for set in perp.iter_mut() {
            set.remove(bottom);
        }
        perp[bottom] = p.empty_set();
        Orthogonality { perp, full: p.full_set() }
    }

    pub fn orthogonal(&self, a: usize, b: usize) -> bool {
        self.perp[a].contains(b)
    }

    pub fn of_state(&self, a: usize) -> &StateSet {
        &self.perp[a]
    }

    /// States orthogonal to every member; the empty set gives every state.
    pub fn of_set(&self, set: &StateSet) -> StateSet {
        let mut out = self.full.clone();
        for a in set.iter() {
            out.intersect_with(&self.perp[a]);
        }
        out
    }
}

/// Meet of the states orthogonal to `σ`, checked to generate them as a filter.
pub fn star_of(p: &Poset, u: &Scheme, sigma: usize) -> Result<usize, OrthoError> {
    let perp = p.set_of(p.elements().filter(|&t| orthogonal(p, u, sigma, t)));
    if perp.is_empty() {
        return Err(OrthoError::EmptyPerp(p.name(sigma).to_string()));
    }
    match p.least(&perp) {
        Some(s) if *p.up(s) == perp => Ok(s),
        _ => Err(OrthoError::NotPrincipalPerp(p.name(sigma).to_string())),
    }
}

fn star_table(p: &Poset, u: &Scheme) -> Vec<Result<usize, OrthoError>> {
    p.elements().map(|s| star_of(p, u, s)).collect()
}

pub fn check_star_laws(p: &Poset, u: &Scheme) -> Vec<CheckResult> {
    let ortho = Orthogonality::new(p, u);
    let stars = star_table(p, u);
    let non_bottom: Vec<usize> = p.elements().filter(|&s| s != p.bottom()).collect();
    let star = |s: usize| stars[s].as_ref().ok().copied();
    let w = |xs: &[usize]| p.names_of(xs);

    let mut filter = None;
    for &s in &non_bottom {
        match star(s) {
            Some(t) if p.up(t) == ortho.of_state(s) => {}
            _ => {
                filter = Some(w(&[s]));
                break;
            }
        }
    }
    let filter = CheckResult::from_witness(
        CheckId::PerpFilter,
        filter,
        "each orthogonal set is the principal filter of the star",
        "orthogonal set is empty or not the filter of its meet",
    );

    let involution = non_bottom.iter().find(|&&s| star(s).and_then(star) != Some(s));
    let involution = CheckResult::from_witness(
        CheckId::StarInvolution,
        involution.map(|&s| w(&[s])),
        "star is an involution",
        "double star differs",
    );

    let mut reversing = None;
    'rev: for &a in &non_bottom {
        for b in p.up(a).iter() {
            match (star(a), star(b)) {
                (Some(sa), Some(sb)) if p.leq(sb, sa) => {}
                _ => {
                    reversing = Some(w(&[a, b]));
                    break 'rev;
                }
            }
        }
    }
    let reversing = CheckResult::from_witness(
        CheckId::StarOrderReversing,
        reversing,
        "star reverses order",
        "star does not reverse this pair",
    );

    let subsets = subsets_up_to(&non_bottom, 1, SUBSET_BOUND);
    let mut de_morgan = None;
    for xs in &subsets {
        let set = p.set_of(xs.iter().copied());
        let Ok(Some(join)) = p.join_of(&set) else { continue };
        let stars_of: Option<Vec<usize>> = xs.iter().map(|&x| star(x)).collect();
        let rhs = stars_of.and_then(|v| p.meet_of(&p.set_of(v)).ok());
        if star(join) != rhs {
            de_morgan = Some(w(xs));
            break;
        }
    }
    let de_morgan = CheckResult::from_witness(
        CheckId::StarDeMorgan,
        de_morgan,
        format!("star of a join is the meet of stars on {} subsets", subsets.len()),
        "star of the join differs from the meet of stars",
    );

    let mut closure = None;
    for xs in &subsets {
        let set = p.set_of(xs.iter().copied());
        let twice = ortho.of_set(&ortho.of_set(&set));
        let expected = p.meet_of(&set).map(|m| p.up(m).clone());
        if expected.as_ref() != Ok(&twice) {
            closure = Some(w(xs));
            break;
        }
    }
    let closure = CheckResult::from_witness(
        CheckId::PerpClosure,
        closure,
        "double orthogonal is the filter of the meet",
        "double orthogonal differs from the filter of the meet",
    );

    let mut heads: HashMap<usize, usize> = HashMap::new();
    for t in u.pairs() {
        *heads.entry(t.sigma).or_default() += 1;
    }
    let repeated = non_bottom.iter().find(|s| heads.get(s).copied().unwrap_or(0) != 1);
    let unique = CheckResult::from_witness(
        CheckId::UniquePair,
        repeated.map(|&s| w(&[s])),
        "each non-bottom state heads exactly one pair",
        "state heads zero or several pairs",
    );

    vec![reversing, involution, de_morgan, filter, closure, unique]
}

/// Double orthogonal of a set of pure states, computed inside the pure states.
pub fn perp_closure(p: &Poset, u: &Scheme, pure: &StateSet, set: &StateSet) -> StateSet {
    let ortho = Orthogonality::new(p, u);
    let once = ortho.of_set(set).intersection(pure);
    ortho.of_set(&once).intersection(pure)
}

/// Lattice of ortho-closed sets of pure states, in canonical order (size, then members).
#[derive(Debug, Clone)]
pub struct ClosedSetLattice {
    names: Vec<String>,
    universe: StateSet,
    perp: Vec<StateSet>,
    closed: Vec<StateSet>,
    ortho: Vec<usize>,
    index: HashMap<StateSet, usize>,
}

impl ClosedSetLattice {
    pub fn universe(&self) -> &StateSet {
        &self.universe
    }

    pub fn closed_sets(&self) -> &[StateSet] {
        &self.closed
    }

    pub fn len(&self) -> usize {
        self.closed.len()
    }

    pub fn is_empty(&self) -> bool {
        self.closed.is_empty()
    }

    pub fn ortho(&self, i: usize) -> usize {
        self.ortho[i]
    }

    pub fn index_of(&self, set: &StateSet) -> Option<usize> {
        self.index.get(set).copied()
    }

    /// Indices of the singleton closed sets.
    pub fn atoms(&self) -> Vec<usize> {
        (0..self.closed.len()).filter(|&i| self.closed[i].len() == 1).collect()
    }

    /// Pure states orthogonal to every member.
    pub fn perp(&self, set: &StateSet) -> StateSet {
        let mut out = self.universe.clone();
        for a in set.iter() {
            out.intersect_with(&self.perp[a]);
        }
        out
    }

    pub fn closure(&self, set: &StateSet) -> StateSet {
        self.perp(&self.perp(set))
    }

    pub fn meet(&self, i: usize, j: usize) -> Option<usize> {
        self.index_of(&self.closed[i].intersection(&self.closed[j]))
    }

    pub fn join(&self, i: usize, j: usize) -> Option<usize> {
        self.index_of(&self.closure(&self.closed[i].union(&self.closed[j])))
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.closed[i].is_subset(&self.closed[j])
    }

    pub fn label(&self, i: usize) -> String {
        self.fmt_set(&self.closed[i])
    }

    pub fn fmt_set(&self, set: &StateSet) -> String {
        let names: Vec<&str> = set.iter().map(|s| self.names[s].as_str()).collect();
        format!("{{{}}}", names.join(","))
    }

    /// Indices `(lower, upper)` of the covering pairs.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.closed.len();
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if a != b && self.leq(a, b) && !(0..n).any(|c| c != a && c != b && self.leq(a, c) && self.leq(c, b)) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// The closed sets ordered by inclusion.
    pub fn to_poset(&self) -> Result<Poset, OrderError> {
        let names = (0..self.closed.len()).map(|i| self.label(i)).collect();
        Poset::from_relation(names, |i, j| self.leq(i, j))
    }
}

pub fn build_closed_set_lattice(p: &Poset, u: &Scheme) -> Result<ClosedSetLattice, OrthoError> {
    let pure = p.pure_states();
    let universe = pure.set().clone();
    let ortho = Orthogonality::new(p, u);
    let perp: Vec<StateSet> = p.elements().map(|s| ortho.of_state(s).intersection(&universe)).collect();
    let mut lattice = ClosedSetLattice {
        names: p.names().to_vec(),
        universe: universe.clone(),
        perp,
        closed: Vec::new(),
        ortho: Vec::new(),
        index: HashMap::new(),
    };
    let mut found: Vec<StateSet> = vec![lattice.closure(&p.empty_set()), universe.clone()];
    for s in p.elements() {
        found.push(lattice.closure(&p.underline_of(&pure, &p.set_of([s]))));
    }
    for s in universe.iter() {
        found.push(lattice.closure(&p.set_of([s])));
    }
    let mut seen: HashMap<StateSet, ()> = HashMap::new();
    found.retain(|x| seen.insert(x.clone(), ()).is_none());
    let mut frontier = 0;
    while frontier < found.len() {
        for j in 0..=frontier {
            let (a, b) = (&found[frontier], &found[j]);
            let candidates = [a.intersection(b), lattice.closure(&a.union(b))];
            for c in candidates {
                if !seen.contains_key(&c) {
                    if found.len() >= CLOSED_SET_LIMIT {
                        return Err(OrthoError::SizeLimit);
                    }
                    seen.insert(c.clone(), ());
                    found.push(c);
                }
            }
        }
        frontier += 1;
    }
    found.sort();
    lattice.index = found.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
    lattice.ortho = found.iter().map(|x| lattice.index.get(&lattice.perp(x)).copied().unwrap_or(usize::MAX)).collect();
    lattice.closed = found;
    Ok(lattice)
}

pub fn check_hilbert_lattice(l: &ClosedSetLattice) -> Vec<CheckResult> {
    let n = l.len();
    let universe = l.index_of(&l.universe);
    let empty = l.index_of(&StateSet::empty(l.universe.capacity()));
    let pairs = || (0..n).flat_map(|i| (0..n).map(move |j| (i, j)));
    let lbl = |xs: &[usize]| xs.iter().map(|&i| l.label(i)).collect::<Vec<_>>();

    let closure_fail = (0..n)
        .find(|&i| l.closure(&l.closed[i]) != l.closed[i])
        .map(|i| lbl(&[i]))
        .or_else(|| pairs().find(|&(i, j)| l.meet(i, j).is_none() || l.join(i, j).is_none()).map(|(i, j)| lbl(&[i, j])))
        .or_else(|| (universe.is_none() || empty.is_none()).then(Vec::new));
    let closure = CheckResult::from_witness(
        CheckId::LatticeClosure,
        closure_fail,
        format!("{n} closed sets closed under meet and join"),
        "closed sets are not closed under meet or join",
    );

    let ortho_fail = (0..n)
        .find(|&i| {
            let o = l.ortho(i);
            o == usize::MAX || l.ortho(o) != i || !l.closed[i].is_disjoint(&l.closed[o]) || l.join(i, o) != universe
        })
        .map(|i| lbl(&[i]))
        .or_else(|| pairs().find(|&(i, j)| l.leq(i, j) && !l.leq(l.ortho(j), l.ortho(i))).map(|(i, j)| lbl(&[i, j])));
    let orthocomplement = CheckResult::from_witness(
        CheckId::Orthocomplement,
        ortho_fail,
        "ortho is an involutive, order-reversing complement",
        "ortho law fails",
    );

    let atom_fail = l.universe.iter().find(|&s| l.index_of(&StateSet::singleton(l.universe.capacity(), s)).is_none());
    let atomic = CheckResult::from_witness(
        CheckId::Atomic,
        atom_fail.map(|s| vec![l.names[s].clone()]),
        "every pure singleton is closed",
        "singleton is not closed",
    );

    let atomistic_fail = (0..n).find(|&i| l.closure(&l.closed[i]) != l.closed[i]);
    let atomistic = CheckResult::from_witness(
        CheckId::LatticeAtomistic,
        atomistic_fail.map(|i| lbl(&[i])),
        "every closed set is the join of its atoms",
        "closed set is not the join of its atoms",
    );

    let om_fail = pairs().find(|&(a, b)| {
        l.leq(a, b) && {
            let inner = l.meet(b, l.ortho(a));
            inner.and_then(|m| l.join(a, m)) != Some(b)
        }
    });
    let orthomodular = CheckResult::from_witness(
        CheckId::Orthomodular,
        om_fail.map(|(a, b)| lbl(&[a, b])),
        "orthomodular law holds on all comparable pairs",
        "orthomodular law fails",
    );

    let mut cover_fail = None;
    'cover: for a in 0..n {
        for s in l.universe.difference(&l.closed[a]).iter() {
            let mut grown = l.closed[a].clone();
            grown.insert(s);
            let top = l.closure(&grown);
            let between = l
                .closed
                .iter()
                .position(|c| l.closed[a].is_subset(c) && c.is_subset(&top) && *c != l.closed[a] && *c != top);
            if let Some(c) = between {
                cover_fail = Some(vec![l.label(a), l.names[s].clone(), l.label(c)]);
                break 'cover;
            }
        }
    }
    let covering = CheckResult::from_witness(
        CheckId::Covering,
        cover_fail,
        "joining an atom covers",
        "a closed set lies strictly between",
    );

    let members = l.universe.to_vec();
    let subsets = subsets_up_to(&members, 0, SUBSET_BOUND);
    let cap = l.universe.capacity();
    let mut exchange_fail = None;
    'exchange: for xs in &subsets {
        let set = StateSet::from_indices(cap, xs.iter().copied());
        let cl = l.closure(&set);
        let perp = l.perp(&set);
        for s in l.universe.difference(&cl).iter() {
            let target = l.closure(&set.union(&StateSet::singleton(cap, s)));
            let ok = perp.iter().any(|t| l.closure(&set.union(&StateSet::singleton(cap, t))) == target);
            if !ok {
                let mut w: Vec<String> = xs.iter().map(|&x| l.names[x].clone()).collect();
                w.push(l.names[s].clone());
                exchange_fail = Some(w);
                break 'exchange;
            }
        }
    }
    let exchange = CheckResult::from_witness(
        CheckId::Exchange,
        exchange_fail,
        format!("exchange holds on {} subsets", subsets.len()),
        "no orthogonal replacement for the last state",
    );

    let split = (0..n)
        .find(|&i| Some(i) != universe && Some(i) != empty && l.closed[i].union(&l.closed[l.ortho(i)]) == l.universe);
    let irreducible = CheckResult::from_witness(
        CheckId::Irreducible,
        split.map(|i| lbl(&[i, l.ortho(i)])),
        "no proper closed set splits the pure states with its ortho",
        "pure states split into mutually orthogonal parts",
    );

    vec![closure, orthocomplement, atomic, atomistic, orthomodular, covering, exchange, irreducible]
}

pub fn check_kripke_frame(p: &Poset, u: &Scheme) -> Vec<CheckResult> {
    let pure_states = p.pure_states();
    let pure = pure_states.set().to_vec();
    let ortho = Orthogonality::new(p, u);
    let w = |xs: &[usize]| p.names_of(xs);
    let distinct = || pure.iter().flat_map(|&a| pure.iter().filter(move |&&b| b != a).map(move |&b| (a, b)));

    let sep_fail = distinct().find(|&(a, b)| !pure.iter().any(|&c| ortho.orthogonal(a, c) && !ortho.orthogonal(b, c)));
    let separation = CheckResult::from_witness(
        CheckId::Separation,
        sep_fail.map(|(a, b)| w(&[a, b])),
        "distinct pure states are separated",
        "no pure state separates this pair",
    );

    let mut rep_fail = None;
    let (mut checked, mut skipped) = (0usize, 0usize);
    'rep: for xs in subsets_up_to(&pure, 1, SUBSET_BOUND) {
        let Ok(m) = p.meet_of(&p.set_of(xs.iter().copied())) else { continue };
        if m == p.bottom() {
            continue;
        }
        let Ok(bar) = star_of(p, u, m) else {
            skipped += 1;
            continue;
        };
        let rec = PropertyRecord::new(p, "", m, Some(bar));
        if !rec.flags.minimal {
            skipped += 1;
            continue;
        }
        for &s in &pure {
            if !rec.questionable.contains(s) {
                continue;
            }
            let Ok(projected) = measure_theta(p, &rec, s) else {
                rep_fail = Some(w(&xs));
                break 'rep;
            };
            checked += 1;
            if xs.iter().any(|&x| ortho.orthogonal(x, s) != ortho.orthogonal(x, projected)) {
                let mut v = w(&xs);
                v.push(p.name(s).to_string());
                rep_fail = Some(v);
                break 'rep;
            }
        }
    }
    let representation = CheckResult::from_witness(
        CheckId::Representation,
        rep_fail,
        format!("{checked} projections preserve orthogonality; {skipped} non-minimal tests skipped"),
        "projection changes orthogonality to a member",
    );

    let sup_fail = distinct().find(|&(a, b)| {
        let Some(m) = p.meet2(a, b) else { return true };
        !pure.iter().any(|&c| c != a && c != b && p.leq(m, c))
    });
    let superposition = CheckResult::from_witness(
        CheckId::Superposition,
        sup_fail.map(|(a, b)| w(&[a, b])),
        "every pair of pure states has a third superposition",
        "no third pure state above the meet",
    );

    vec![separation, representation, superposition]
}

/// Every discriminating pair of non-bottom states gives a perfect property.
pub fn check_discriminating_perfect(p: &Poset) -> CheckResult {
    let mut count = 0;
    for a in p.elements().filter(|&a| a != p.bottom()) {
        for b in p.elements().filter(|&b| b != p.bottom()) {
            if !is_discriminating(p, a, b) {
                continue;
            }
            count += 1;
            let rec = PropertyRecord::new(p, "", a, Some(b));
            if !is_perfect(p, &rec).unwrap_or(false) {
                return CheckResult::fail(
                    CheckId::DiscriminatingPerfect,
                    p.names_of(&[a, b]),
                    "discriminating test is not perfect",
                );
            }
        }
    }
    CheckResult::pass(CheckId::DiscriminatingPerfect, format!("{count} discriminating tests, all perfect"))
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::order_core::tests::{bool3, mo2, poset};
    use crate::order_core::Verdict;

    fn idx(p: &Poset, n: &str) -> usize {
        p.index_of(n).unwrap()
    }

    fn star_by_names(p: &Poset, pairs: &[(&str, &str)]) -> Vec<Option<usize>> {
        let mut star = vec![None; p.len()];
        for (a, b) in pairs {
            star[idx(p, a)] = Some(idx(p, b));
        }
        star
    }

    pub(crate) fn bool3_scheme(p: &Poset) -> Scheme {
        let pairs = [("1", "23"), ("2", "13"), ("3", "12"), ("12", "3"), ("13", "2"), ("23", "1")];
        scheme_from_star(p, &star_by_names(p, &pairs)).unwrap()
    }

    pub(crate) fn mo2_scheme(p: &Poset) -> Scheme {
        scheme_from_star(p, &star_by_names(p, &[("a", "a'"), ("a'", "a"), ("b", "b'"), ("b'", "b")])).unwrap()
    }

    fn all_pass(rs: &[CheckResult]) -> bool {
        rs.iter().all(CheckResult::passed)
    }

    #[test]
    fn discriminating_pairs() {
        let b = bool3();
        assert!(is_discriminating(&b, idx(&b, "1"), idx(&b, "23")));
        assert!(!is_discriminating(&b, idx(&b, "1"), idx(&b, "2")));
        let m = mo2();
        assert!(is_discriminating(&m, idx(&m, "a"), idx(&m, "a'")));
    }

    #[test]
    fn schemes_validate() {
        let b = bool3();
        let u = bool3_scheme(&b);
        assert_eq!(u.len(), 6);
        assert!(all_pass(&validate_scheme(&b, &u, true)));
        let m = mo2();
        let um = mo2_scheme(&m);
        assert_eq!(um.len(), 4);
        assert!(all_pass(&validate_scheme(&m, &um, true)));
        let partial = Scheme::new(&b, u.pairs().iter().skip(1).map(|t| (t.sigma, t.sigma_prime))).unwrap();
        let r = validate_scheme(&b, &partial, false);
        assert_eq!(r[0].verdict(), Verdict::Fail);
        assert_eq!(r[0].witness().unwrap(), [b.name(u.pairs()[0].sigma)]);
    }

    #[test]
    fn identity_star_is_rejected() {
        let b = bool3();
        let star: Vec<Option<usize>> = b.elements().map(Some).collect();
        assert!(matches!(scheme_from_star(&b, &star), Err(OrthoError::NotOrthocomplement { .. })));
    }

    #[test]
    fn orthogonality_and_star() {
        let m = mo2();
        let um = mo2_scheme(&m);
        assert!(orthogonal(&m, &um, idx(&m, "a"), idx(&m, "a'")));
        assert!(!orthogonal(&m, &um, idx(&m, "a"), idx(&m, "b")));
        assert_eq!(m.name(star_of(&m, &um, idx(&m, "a")).unwrap()), "a'");
        let b = bool3();
        let u = bool3_scheme(&b);
        assert!(orthogonal(&b, &u, idx(&b, "12"), idx(&b, "13")));
        assert_eq!(b.name(star_of(&b, &u, idx(&b, "1")).unwrap()), "23");
        for s in b.elements().filter(|&s| s != b.bottom()) {
            assert_eq!(star_of(&b, &u, star_of(&b, &u, s).unwrap()).unwrap(), s);
        }
        assert!(matches!(star_of(&b, &u, b.bottom()), Err(OrthoError::EmptyPerp(_))));
    }

    #[test]
    fn star_laws() {
        let b = bool3();
        assert!(all_pass(&check_star_laws(&b, &bool3_scheme(&b))));
        let m = mo2();
        assert!(all_pass(&check_star_laws(&m, &mo2_scheme(&m))));
        let mut pairs: Vec<(usize, usize)> = mo2_scheme(&m).pairs().iter().map(|t| (t.sigma, t.sigma_prime)).collect();
        pairs.push((idx(&m, "a"), idx(&m, "b")));
        let dup = Scheme::new(&m, pairs).unwrap();
        let r = check_star_laws(&m, &dup);
        let unique = r.iter().find(|c| c.check() == CheckId::UniquePair).unwrap();
        assert_eq!(unique.witness().unwrap(), ["a"]);
    }

    #[test]
    fn perp_closures() {
        let m = mo2();
        let um = mo2_scheme(&m);
        let pure = m.pure_states().set().clone();
        let ab = m.set_of([idx(&m, "a"), idx(&m, "b")]);
        assert_eq!(perp_closure(&m, &um, &pure, &ab), pure);
        let a = m.set_of([idx(&m, "a")]);
        assert_eq!(perp_closure(&m, &um, &pure, &a), a);
        assert!(perp_closure(&m, &um, &pure, &m.empty_set()).is_empty());
        let b = bool3();
        let pb = b.pure_states().set().clone();
        let x = b.set_of([idx(&b, "12"), idx(&b, "13")]);
        assert_eq!(perp_closure(&b, &bool3_scheme(&b), &pb, &x), x);
    }

    #[test]
    fn closed_set_lattices() {
        let m = mo2();
        let lm = build_closed_set_lattice(&m, &mo2_scheme(&m)).unwrap();
        assert_eq!(lm.len(), 6);
        assert_eq!(lm.atoms().len(), 4);
        assert!(all_pass(&check_hilbert_lattice(&lm)));
        let b = bool3();
        let lb = build_closed_set_lattice(&b, &bool3_scheme(&b)).unwrap();
        assert_eq!(lb.len(), 8);
        let r = check_hilbert_lattice(&lb);
        assert!(r.iter().filter(|c| c.check() != CheckId::Irreducible).all(CheckResult::passed));
        assert!(!r.iter().find(|c| c.check() == CheckId::Irreducible).unwrap().passed());
        let lp = lb.to_poset().unwrap();
        assert_eq!(lp.len(), 8);
        assert_eq!(lb.covers().len(), 12);
    }

    #[test]
    fn kripke_frames() {
        let m = mo2();
        assert!(all_pass(&check_kripke_frame(&m, &mo2_scheme(&m))));
        let b = bool3();
        let r = check_kripke_frame(&b, &bool3_scheme(&b));
        assert!(r[0].passed() && r[1].passed());
        assert_eq!(r[2].verdict(), Verdict::Fail);
    }

    #[test]
    fn discriminating_perfect_sweep() {
        assert!(check_discriminating_perfect(&bool3()).passed());
        assert!(check_discriminating_perfect(&mo2()).passed());
    }

    #[test]
    fn bool2_lattice() {
        let p = poset(&["0", "a", "b"], &[("0", "a"), ("0", "b")]);
        let u = scheme_from_star(&p, &star_by_names(&p, &[("a", "b"), ("b", "a")])).unwrap();
        let l = build_closed_set_lattice(&p, &u).unwrap();
        let shown: Vec<String> = (0..l.len()).map(|i| l.label(i)).collect();
        assert_eq!(shown, ["{}", "{a}", "{b}", "{a,b}"]);
    }
}
