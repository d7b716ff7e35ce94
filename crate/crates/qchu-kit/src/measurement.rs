//! Properties as operations on states: consistency domains, the minimally
//! disturbing measurement map, succession, compatibility and descriptions.

use std::fmt;

use thiserror::Error;

use crate::chu_core::{make_generalized_test, GenTest};
use crate::order_core::{CheckId, CheckResult, Poset, StateSet};

/// Largest space on which the exhaustive minimal-map search runs.
pub const MAP_SEARCH_LIMIT: usize = 9;
pub const DESCRIPTION_LIMIT: usize = 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MeasurementError {
    #[error("property `{0}` is not quasi-classical")]
    NotQuasiClassical(String),
    #[error("state `{state}` is outside the domain of property `{property}`")]
    OutsideDomain { property: String, state: String },
    #[error("join `{0}` does not exist")]
    Join(String),
    #[error("measurement map domain does not equal the questionable set of `{0}`")]
    DomainMismatch(String),
    #[error("property `{0}` has no conjugate")]
    MissingConjugate(String),
    #[error("{0} properties exceed the limit of {DESCRIPTION_LIMIT}")]
    SizeLimit(usize),
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct PropertyFlags {
    pub testable: bool,
    pub quasi_classical: bool,
    pub minimal: bool,
    pub first_kind: bool,
    pub ideal: bool,
    pub perfect: bool,
}

/// A property with its actual set `A`, questionable set `Q` and consistency domain `K`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropertyRecord {
    pub id: String,
    pub sigma: usize,
    pub sigma_bar: Option<usize>,
    pub actual: StateSet,
    pub questionable: StateSet,
    pub consistency: StateSet,
    pub flags: PropertyFlags,
}

impl PropertyRecord {
    /// Record of the generalized test `(sigma, sigma_bar)`, or of the bare filter `↑sigma`
    /// when no conjugate is given.
    pub fn new(p: &Poset, id: impl Into<String>, sigma: usize, sigma_bar: Option<usize>) -> PropertyRecord {
        let questionable = match sigma_bar {
            Some(bar) => p.up(bar).complement(),
            None => p.full_set(),
        };
        let mut rec = PropertyRecord::from_sets(p, id, sigma, sigma_bar, questionable);
        if rec.flags.minimal {
            if let Some(bar) = sigma_bar {
                rec.flags.perfect = conjugate_is_minimal(p, sigma, bar);
            }
        }
        rec
    }

    pub fn from_test(p: &Poset, test: &GenTest) -> PropertyRecord {
        PropertyRecord::new(p, test.label(p), test.sigma, Some(test.sigma_prime))
    }

    fn from_sets(
        p: &Poset,
        id: impl Into<String>,
        sigma: usize,
        sigma_bar: Option<usize>,
        questionable: StateSet,
    ) -> PropertyRecord {
        let actual = p.up(sigma).clone();
        let consistency = p.down_closure(&actual);
        let mut rec = PropertyRecord {
            id: id.into(),
            sigma,
            sigma_bar,
            actual,
            questionable,
            consistency,
            flags: PropertyFlags { testable: true, ..PropertyFlags::default() },
        };
        rec.flags.quasi_classical = is_scott_ideal(p, &rec.consistency, &rec.questionable).passed();
        if rec.flags.quasi_classical {
            if let Ok(theta) = theta_map(p, &rec) {
                let f = validate_measurement_map(p, &theta, &rec).unwrap_or_default();
                rec.flags.first_kind = f.first_kind;
                rec.flags.ideal = f.ideal;
                rec.flags.minimal = f.minimal;
            }
        }
        rec
    }

    pub fn generalized_test(&self, p: &Poset) -> Option<GenTest> {
        self.sigma_bar.and_then(|bar| make_generalized_test(p, self.sigma, bar).ok())
    }
}

fn conjugate_is_minimal(p: &Poset, sigma: usize, bar: usize) -> bool {
    PropertyRecord::from_sets(p, "", bar, Some(sigma), p.up(sigma).complement()).flags.minimal
}

/// Partial map on states, defined exactly on `domain`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MeasurementMap {
    pub domain: StateSet,
    mapping: Vec<Option<usize>>,
}

impl MeasurementMap {
    pub fn from_fn(domain: StateSet, f: impl Fn(usize) -> usize) -> MeasurementMap {
        let mapping = (0..domain.capacity()).map(|s| domain.contains(s).then(|| f(s))).collect();
        MeasurementMap { domain, mapping }
    }

    pub fn apply(&self, state: usize) -> Option<usize> {
        self.mapping.get(state).copied().flatten()
    }

    pub fn image(&self) -> StateSet {
        let mut out = StateSet::empty(self.mapping.len());
        for v in self.mapping.iter().flatten() {
            out.insert(*v);
        }
        out
    }

    /// `self` followed by `next`, on the states whose image lies in `next`'s domain.
    pub fn then(&self, next: &MeasurementMap) -> MeasurementMap {
        let domain = StateSet::from_indices(
            self.mapping.len(),
            self.domain.iter().filter(|&s| self.apply(s).is_some_and(|v| next.domain.contains(v))),
        );
        let mapping = (0..self.mapping.len())
            .map(|s| if domain.contains(s) { self.apply(s).and_then(|v| next.apply(v)) } else { None })
            .collect();
        MeasurementMap { domain, mapping }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct MapFlags {
    pub monotone: bool,
    pub first_kind: bool,
    pub ideal: bool,
    pub minimal: bool,
}

/// Down-closure of the actual set.
pub fn consistency_domain(p: &Poset, l: &PropertyRecord) -> StateSet {
    p.down_closure(&l.actual)
}

/// Every `↓s ∩ sub`, for `s` in `ambient`, has a join lying in `sub`.
pub fn is_scott_ideal(p: &Poset, sub: &StateSet, ambient: &StateSet) -> CheckResult {
    let failing = ambient.iter().find(|&s| {
        let below = p.down(s).intersection(sub);
        !matches!(p.join_of(&below), Ok(Some(j)) if sub.contains(j))
    });
    CheckResult::from_witness(
        CheckId::ScottIdeal,
        failing.map(|s| vec![p.name(s).to_string()]),
        format!("{} states checked", ambient.len()),
        "join of the sub-domain below this state is missing or outside it",
    )
}

fn require(p: &Poset, l: &PropertyRecord, state: usize) -> Result<(), MeasurementError> {
    if !l.flags.quasi_classical {
        return Err(MeasurementError::NotQuasiClassical(l.id.clone()));
    }
    if !l.questionable.contains(state) {
        return Err(MeasurementError::OutsideDomain { property: l.id.clone(), state: p.name(state).to_string() });
    }
    Ok(())
}

/// Join of the consistency domain below `state`.
pub fn retraction_pi(p: &Poset, l: &PropertyRecord, state: usize) -> Result<usize, MeasurementError> {
    require(p, l, state)?;
    let below = p.down(state).intersection(&l.consistency);
    match p.join_of(&below) {
        Ok(Some(j)) => Ok(j),
        _ => Err(MeasurementError::Join(p.fmt_set(&below))),
    }
}

/// The minimally disturbing measurement: property state joined with the retraction.
pub fn measure_theta(p: &Poset, l: &PropertyRecord, state: usize) -> Result<usize, MeasurementError> {
    let pi = retraction_pi(p, l, state)?;
    match p.join2(l.sigma, pi) {
        Ok(Some(j)) => Ok(j),
        _ => Err(MeasurementError::Join(format!("{{{},{}}}", p.name(l.sigma), p.name(pi)))),
    }
}

pub fn theta_map(p: &Poset, l: &PropertyRecord) -> Result<MeasurementMap, MeasurementError> {
    let mut mapping = vec![None; p.len()];
    for s in l.questionable.iter() {
        mapping[s] = Some(measure_theta(p, l, s)?);
    }
    Ok(MeasurementMap { domain: l.questionable.clone(), mapping })
}

pub fn validate_measurement_map(
    p: &Poset,
    m: &MeasurementMap,
    l: &PropertyRecord,
) -> Result<MapFlags, MeasurementError> {
    if m.domain != l.questionable || p.elements().any(|s| m.apply(s).is_some() != m.domain.contains(s)) {
        return Err(MeasurementError::DomainMismatch(l.id.clone()));
    }
    let at = |s: usize| m.apply(s).expect("checked domain");
    let monotone = m.domain.iter().all(|a| p.up(a).intersection(&m.domain).iter().all(|b| p.leq(at(a), at(b))));
    let first_kind = m.domain.iter().all(|s| l.actual.contains(at(s)))
        && l.actual.iter().all(|s| !m.domain.contains(s) || at(s) == s);
    // every state consistent with sigma is an actual-set witness for some principal filter
    let ideal =
        l.consistency.iter().all(|lower| p.up(lower).intersection(&m.domain).iter().all(|s| p.leq(lower, at(s))));
    let on_k = l.consistency.iter().all(|s| matches!(p.join2(s, l.sigma), Ok(Some(j)) if at(s) == j));
    Ok(MapFlags { monotone, first_kind, ideal, minimal: monotone && first_kind && on_k })
}

/// Exhaustive search for a minimal map, if one exists.
pub fn search_minimal_map(p: &Poset, l: &PropertyRecord) -> Option<MeasurementMap> {
    let mut mapping: Vec<Option<usize>> = vec![None; p.len()];
    for s in l.consistency.intersection(&l.questionable).iter() {
        mapping[s] = Some(p.join2(s, l.sigma).ok()??);
    }
    let mut free: Vec<usize> = l.questionable.difference(&l.consistency).to_vec();
    free.sort_by_key(|&s| p.down(s).len());
    let targets = l.actual.to_vec();

    fn fits(p: &Poset, dom: &StateSet, mapping: &[Option<usize>], s: usize, v: usize) -> bool {
        dom.iter().all(|o| match mapping[o] {
            Some(w) if p.leq(o, s) => p.leq(w, v),
            Some(w) if p.leq(s, o) => p.leq(v, w),
            _ => true,
        })
    }
    fn go(p: &Poset, dom: &StateSet, free: &[usize], targets: &[usize], mapping: &mut Vec<Option<usize>>) -> bool {
        let Some((&s, rest)) = free.split_first() else { return true };
        for &v in targets {
            if fits(p, dom, mapping, s, v) {
                mapping[s] = Some(v);
                if go(p, dom, rest, targets, mapping) {
                    return true;
                }
                mapping[s] = None;
            }
        }
        false
    }
    let fixed_ok = l.questionable.iter().all(|a| match mapping[a] {
        Some(va) => fits(p, &l.questionable, &mapping, a, va),
        None => true,
    });
    if !fixed_ok || !go(p, &l.questionable, &free, &targets, &mut mapping) {
        return None;
    }
    let m = MeasurementMap { domain: l.questionable.clone(), mapping };
    validate_measurement_map(p, &m, l).ok().filter(|f| f.minimal).map(|_| m)
}

/// A minimal map exists exactly when the property is quasi-classical, and the
/// constructed map is first-kind and ideal.
pub fn theorem_min_eq_qcl(p: &Poset, l: &PropertyRecord) -> CheckResult {
    let id = CheckId::MinEqQuasiClassical;
    let witness = vec![l.id.clone()];
    if l.flags.quasi_classical {
        return match theta_map(p, l).and_then(|m| validate_measurement_map(p, &m, l)) {
            Ok(f) if f.monotone && f.first_kind && f.ideal && f.minimal => {
                CheckResult::pass(id, "quasi-classical; constructed map is monotone, first-kind, ideal and minimal")
            }
            Ok(f) => CheckResult::fail(id, witness, format!("constructed map flags {f:?}")),
            Err(e) => CheckResult::fail(id, witness, e.to_string()),
        };
    }
    if p.len() > MAP_SEARCH_LIMIT {
        return CheckResult::pass(id, "not quasi-classical; criterion-only above the search limit");
    }
    match search_minimal_map(p, l) {
        None => CheckResult::pass(id, "not quasi-classical and no minimal map exists"),
        Some(_) => CheckResult::fail(id, witness, "minimal map found for a non-quasi-classical property"),
    }
}

/// A property with its measurement map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Measured {
    pub record: PropertyRecord,
    pub map: MeasurementMap,
}

impl Measured {
    pub fn new(p: &Poset, record: PropertyRecord) -> Result<Measured, MeasurementError> {
        let map = theta_map(p, &record)?;
        Ok(Measured { record, map })
    }

    /// Same actual set, domain and map.
    pub fn same_operation(&self, other: &Measured) -> bool {
        self.record.actual == other.record.actual && self.map == other.map
    }
}

/// `l1` followed by `l2`; `None` when the actual sets are disjoint.
pub fn succession(p: &Poset, first: &Measured, second: &Measured) -> Option<Measured> {
    let actual = first.record.actual.intersection(&second.record.actual);
    let sigma = p.least(&actual)?;
    let map = first.map.then(&second.map);
    let id = format!("{}.{}", first.record.id, second.record.id);
    let mut record = PropertyRecord {
        id,
        sigma,
        sigma_bar: None,
        consistency: p.down_closure(&actual),
        actual,
        questionable: map.domain.clone(),
        flags: PropertyFlags { testable: true, ..PropertyFlags::default() },
    };
    record.flags.quasi_classical = is_scott_ideal(p, &record.consistency, &record.questionable).passed();
    let f = validate_measurement_map(p, &map, &record).unwrap_or_default();
    record.flags.first_kind = f.first_kind;
    record.flags.ideal = f.ideal;
    record.flags.minimal = f.minimal;
    Some(Measured { record, map })
}

/// The actual sets have a common state.
pub fn are_compatible<'a>(p: &Poset, props: impl IntoIterator<Item = &'a PropertyRecord>) -> bool {
    let mut common = p.full_set();
    for l in props {
        common.intersect_with(&l.actual);
    }
    !common.is_empty()
}

fn maximal_cliques(n: usize, adjacent: impl Fn(usize, usize) -> bool) -> Vec<Vec<usize>> {
    fn bron_kerbosch(
        r: &mut Vec<usize>,
        mut candidates: Vec<usize>,
        mut excluded: Vec<usize>,
        adj: &dyn Fn(usize, usize) -> bool,
        out: &mut Vec<Vec<usize>>,
    ) {
        if candidates.is_empty() && excluded.is_empty() {
            let mut clique = r.clone();
            clique.sort_unstable();
            out.push(clique);
            return;
        }
        while let Some(v) = candidates.pop() {
            r.push(v);
            let keep = |xs: &[usize]| xs.iter().copied().filter(|&u| adj(u, v)).collect::<Vec<_>>();
            bron_kerbosch(r, keep(&candidates), keep(&excluded), adj, out);
            r.pop();
            excluded.push(v);
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        bron_kerbosch(&mut Vec::new(), (0..n).rev().collect(), Vec::new(), &adjacent, &mut out);
    }
    out.sort();
    out
}

/// Pairwise compatibility implies joint compatibility, on every maximal pairwise-compatible family.
pub fn check_specker(p: &Poset, props: &[PropertyRecord]) -> CheckResult {
    let pairwise = |a: usize, b: usize| are_compatible(p, [&props[a], &props[b]]);
    let cliques = maximal_cliques(props.len(), pairwise);
    let bad = cliques.iter().find(|c| !are_compatible(p, c.iter().map(|&i| &props[i])));
    match bad {
        None => CheckResult::pass(
            CheckId::Specker,
            format!("{} maximal pairwise-compatible families, all jointly compatible", cliques.len()),
        ),
        Some(c) => CheckResult::fail(
            CheckId::Specker,
            c.iter().map(|&i| props[i].id.clone()).collect(),
            "pairwise compatible: true; jointly compatible: false",
        ),
    }
}

/// Jointly compatible families of properties, indexed into the input slice.
#[derive(Debug, Clone)]
pub struct DescriptionSummary {
    pub descriptions: usize,
    pub maximal: Vec<Vec<usize>>,
    pub coherence: CheckResult,
}

pub fn coherence_descriptions(p: &Poset, props: &[PropertyRecord]) -> Result<DescriptionSummary, MeasurementError> {
    if props.len() > DESCRIPTION_LIMIT {
        return Err(MeasurementError::SizeLimit(props.len()));
    }
    fn grow(
        props: &[PropertyRecord],
        start: usize,
        common: &StateSet,
        cur: &mut Vec<usize>,
        count: &mut usize,
        maximal: &mut Vec<Vec<usize>>,
    ) {
        *count += 1;
        for i in start..props.len() {
            let next = common.intersection(&props[i].actual);
            if !next.is_empty() {
                cur.push(i);
                grow(props, i + 1, &next, cur, count, maximal);
                cur.pop();
            }
        }
        let extendable = (0..props.len()).any(|i| !cur.contains(&i) && common.intersects(&props[i].actual));
        if !extendable {
            maximal.push(cur.clone());
        }
    }
    let (mut count, mut maximal) = (0, Vec::new());
    grow(props, 0, &p.full_set(), &mut Vec::new(), &mut count, &mut maximal);
    maximal.sort();
    let cliques = maximal_cliques(props.len(), |a, b| are_compatible(p, [&props[a], &props[b]]));
    let expected = if props.is_empty() { vec![vec![]] } else { cliques };
    let coherence = match expected.iter().find(|c| !maximal.contains(c)) {
        None => CheckResult::pass(CheckId::Coherence, format!("{count} descriptions, {} maximal", maximal.len())),
        Some(c) => CheckResult::fail(
            CheckId::Coherence,
            c.iter().map(|&i| props[i].id.clone()).collect(),
            "union of pairwise-joinable descriptions is not a description",
        ),
    };
    Ok(DescriptionSummary { descriptions: count, maximal, coherence })
}

/// Conjoint test of a compatible family: join of the property states against meet of the conjugates.
pub fn description_test(p: &Poset, members: &[&PropertyRecord]) -> Result<Option<GenTest>, MeasurementError> {
    if members.is_empty() || !are_compatible(p, members.iter().copied()) {
        return Ok(None);
    }
    let mut bars = Vec::with_capacity(members.len());
    for l in members {
        bars.push(l.sigma_bar.ok_or_else(|| MeasurementError::MissingConjugate(l.id.clone()))?);
    }
    let Ok(Some(sigma)) = p.join_of(&p.set_of(members.iter().map(|l| l.sigma))) else {
        return Ok(None);
    };
    let Ok(bar) = p.meet_of(&p.set_of(bars)) else { return Ok(None) };
    Ok(make_generalized_test(p, sigma, bar).ok())
}

pub fn is_perfect(p: &Poset, l: &PropertyRecord) -> Result<bool, MeasurementError> {
    let bar = l.sigma_bar.ok_or_else(|| MeasurementError::MissingConjugate(l.id.clone()))?;
    Ok(l.flags.minimal && conjugate_is_minimal(p, l.sigma, bar))
}

/// Measurement commutes with meets of pairs bounded inside the domain.
pub fn check_filter_meet(p: &Poset, l: &PropertyRecord) -> CheckResult {
    let id = CheckId::FilterMeet;
    let Ok(m) = theta_map(p, l) else {
        return CheckResult::pass(id, "not quasi-classical; nothing to check");
    };
    let dom = &l.questionable;
    for a in dom.iter() {
        for b in dom.iter().filter(|&b| b > a) {
            let bounded = p.up(a).intersection(p.up(b)).intersects(dom);
            let Some(meet) = p.meet2(a, b) else { continue };
            if !bounded {
                continue;
            }
            let lhs = m.apply(meet);
            let rhs = p.meet2(m.apply(a).unwrap_or(meet), m.apply(b).unwrap_or(meet));
            if lhs != rhs {
                return CheckResult::fail(
                    id,
                    vec![l.id.clone(), p.name(a).to_string(), p.name(b).to_string()],
                    "measurement of the meet differs from the meet of the measurements",
                );
            }
        }
    }
    CheckResult::pass(id, "measurement commutes with bounded meets")
}

impl fmt::Display for PropertyFlags {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let named = [
            ("testable", self.testable),
            ("quasi_classical", self.quasi_classical),
            ("minimal", self.minimal),
            ("first_kind", self.first_kind),
            ("ideal", self.ideal),
            ("perfect", self.perfect),
        ];
        let on: Vec<&str> = named.iter().filter(|(_, v)| *v).map(|(n, _)| *n).collect();
        write!(f, "{}", on.join(","))
    }
}
