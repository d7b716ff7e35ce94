//! Dictionaries between state spaces: Chu-morphism and symmetry checks,
//! preservation of measurement and orthogonality, and the induced lattice map.

use std::collections::HashMap;

use thiserror::Error;

use crate::chu_core::{ChuSpace, GenTest, StateChu};
use crate::measurement::{succession, Measured, PropertyRecord};
use crate::order_core::{CheckId, CheckResult, Poset, StateSet};
use crate::ortho_hilbert::{
    build_closed_set_lattice, star_of, ClosedSetLattice, OrthoError, Orthogonality, Scheme, StateSpace,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SymmetryError {
    #[error("{0} state space has no scheme")]
    MissingScheme(&'static str),
    #[error("state map is not total: `{0}` is unmapped")]
    NotTotal(String),
    #[error("unknown state `{0}`")]
    UnknownState(String),
    #[error("`{0}` is not a pair of the {1} scheme")]
    UnknownPair(String, &'static str),
    #[error("target of the first dictionary is not the source of the second")]
    SpaceMismatch,
    #[error("measurement domains disagree at state `{state}` for `{test}`")]
    PartialityMismatch { state: String, test: String },
    #[error("pair headed by `{0}` has no image, so its filter is empty")]
    EmptyFilter(String),
    #[error("lower adjoint violates the Galois law at `{0}`")]
    GaloisViolation(String),
    #[error(transparent)]
    Ortho(#[from] OrthoError),
}

/// State map from source to target and test map from target scheme pairs to source pairs.
#[derive(Debug, Clone)]
pub struct Dictionary {
    pub source: StateSpace,
    pub target: StateSpace,
    f_states: Vec<usize>,
    f_tests: Vec<Option<GenTest>>,
}

fn scheme_of<'a>(s: &'a StateSpace, which: &'static str) -> Result<&'a Scheme, SymmetryError> {
    s.scheme.as_ref().ok_or(SymmetryError::MissingScheme(which))
}

fn labels(p: &Poset, u: &Scheme) -> HashMap<String, GenTest> {
    u.pairs().iter().map(|t| (t.label(p), *t)).collect()
}

impl Dictionary {
    /// `f_tests` may omit target pairs; checks report them.
    pub fn new(
        source: StateSpace,
        target: StateSpace,
        f_states: Vec<usize>,
        f_tests: Vec<(GenTest, GenTest)>,
    ) -> Result<Dictionary, SymmetryError> {
        let src_u = scheme_of(&source, "source")?;
        let tgt_u = scheme_of(&target, "target")?;
        if f_states.len() != source.poset.len() {
            let missing = source.poset.name(f_states.len().min(source.poset.len().saturating_sub(1)));
            return Err(SymmetryError::NotTotal(missing.to_string()));
        }
        if let Some(&bad) = f_states.iter().find(|&&t| t >= target.poset.len()) {
            return Err(SymmetryError::UnknownState(bad.to_string()));
        }
        let mut table = vec![None; tgt_u.len()];
        for (t2, t1) in f_tests {
            let i = tgt_u
                .pairs()
                .binary_search(&t2)
                .map_err(|_| SymmetryError::UnknownPair(t2.label(&target.poset), "target"))?;
            if !src_u.contains(t1.sigma, t1.sigma_prime) {
                return Err(SymmetryError::UnknownPair(t1.label(&source.poset), "source"));
            }
            table[i] = Some(t1);
        }
        Ok(Dictionary { source, target, f_states, f_tests: table })
    }

    /// Build from state names and pair labels such as `[a,a']`.
    pub fn from_names(
        source: StateSpace,
        target: StateSpace,
        f_states: &[(String, String)],
        f_tests: &[(String, String)],
    ) -> Result<Dictionary, SymmetryError> {
        let (sp, tp) = (&source.poset, &target.poset);
        let mut states = vec![usize::MAX; sp.len()];
        for (a, b) in f_states {
            let i = sp.index_of(a).ok_or_else(|| SymmetryError::UnknownState(a.clone()))?;
            states[i] = tp.index_of(b).ok_or_else(|| SymmetryError::UnknownState(b.clone()))?;
        }
        if let Some(i) = states.iter().position(|&x| x == usize::MAX) {
            return Err(SymmetryError::NotTotal(sp.name(i).to_string()));
        }
        let src_labels = labels(sp, scheme_of(&source, "source")?);
        let tgt_labels = labels(tp, scheme_of(&target, "target")?);
        let mut tests = Vec::with_capacity(f_tests.len());
        for (t2, t1) in f_tests {
            let a = tgt_labels.get(t2).ok_or_else(|| SymmetryError::UnknownPair(t2.clone(), "target"))?;
            let b = src_labels.get(t1).ok_or_else(|| SymmetryError::UnknownPair(t1.clone(), "source"))?;
            tests.push((*a, *b));
        }
        Dictionary::new(source, target, states, tests)
    }

    pub fn identity(space: &StateSpace) -> Result<Dictionary, SymmetryError> {
        Dictionary::from_automorphism(space, &(0..space.poset.len()).collect::<Vec<_>>())
    }

    /// Dictionary of a state permutation; each target pair maps to its preimage pair.
    pub fn from_automorphism(space: &StateSpace, perm: &[usize]) -> Result<Dictionary, SymmetryError> {
        let u = scheme_of(space, "source")?;
        let mut inverse = vec![0; perm.len()];
        for (i, &j) in perm.iter().enumerate() {
            inverse[j] = i;
        }
        let tests = u
            .pairs()
            .iter()
            .map(|t| (*t, GenTest { sigma: inverse[t.sigma], sigma_prime: inverse[t.sigma_prime] }))
            .filter(|(_, back)| u.contains(back.sigma, back.sigma_prime))
            .collect();
        Dictionary::new(space.clone(), space.clone(), perm.to_vec(), tests)
    }

    pub fn map_state(&self, s: usize) -> usize {
        self.f_states[s]
    }

    pub fn state_map(&self) -> &[usize] {
        &self.f_states
    }

    /// Image of a target scheme pair, if mapped.
    pub fn map_test(&self, t: &GenTest) -> Option<GenTest> {
        let u = self.target.scheme.as_ref()?;
        let i = u.pairs().binary_search(t).ok()?;
        self.f_tests[i]
    }

    pub fn test_table(&self) -> Vec<(GenTest, Option<GenTest>)> {
        let u = self.target.scheme.as_ref().expect("checked at construction");
        u.pairs().iter().copied().zip(self.f_tests.iter().copied()).collect()
    }

    fn src_scheme(&self) -> &Scheme {
        self.source.scheme.as_ref().expect("checked at construction")
    }

    fn tgt_scheme(&self) -> &Scheme {
        self.target.scheme.as_ref().expect("checked at construction")
    }

    /// Swap roles when both maps are bijective.
    pub fn inverse(&self) -> Option<Dictionary> {
        let n = self.target.poset.len();
        if self.f_states.len() != n {
            return None;
        }
        let mut states = vec![usize::MAX; n];
        for (i, &j) in self.f_states.iter().enumerate() {
            if states[j] != usize::MAX {
                return None;
            }
            states[j] = i;
        }
        let mut tests = Vec::new();
        for (t2, t1) in self.test_table() {
            tests.push((t1?, t2));
        }
        if tests.len() != self.src_scheme().len() {
            return None;
        }
        Dictionary::new(self.target.clone(), self.source.clone(), states, tests).ok()
    }
}

fn same_space(a: &StateSpace, b: &StateSpace) -> bool {
    let (pa, pb) = (&a.poset, &b.poset);
    let relabel = |u: &Scheme, p: &Poset| {
        let mut v: Vec<(String, String)> =
            u.pairs().iter().map(|t| (p.name(t.sigma).to_string(), p.name(t.sigma_prime).to_string())).collect();
        v.sort();
        v
    };
    pa.same_as(pb)
        && match (&a.scheme, &b.scheme) {
            (Some(x), Some(y)) => relabel(x, pa) == relabel(y, pb),
            (None, None) => true,
            _ => false,
        }
}

/// `first` then `second`: states through both, tests pulled back through both.
pub fn compose(first: &Dictionary, second: &Dictionary) -> Result<Dictionary, SymmetryError> {
    if !same_space(&first.target, &second.source) {
        return Err(SymmetryError::SpaceMismatch);
    }
    let (mid_a, mid_b) = (&first.target.poset, &second.source.poset);
    let translate = |i: usize| mid_a.index_of(mid_b.name(i)).expect("same space");
    let states =
        first.f_states.iter().map(|&s| second.f_states[mid_b.index_of(mid_a.name(s)).expect("same space")]).collect();
    let mut tests = Vec::new();
    for (t3, t2) in second.test_table() {
        let Some(t2) = t2 else { continue };
        let t2 = GenTest { sigma: translate(t2.sigma), sigma_prime: translate(t2.sigma_prime) };
        if let Some(t1) = first.map_test(&t2) {
            tests.push((t3, t1));
        }
    }
    Dictionary::new(first.source.clone(), second.target.clone(), states, tests)
}

/// Evaluations agree: each target pair at `f(σ)` equals its image pair at `σ`.
pub fn check_chu_morphism(d: &Dictionary) -> CheckResult {
    let (sp, tp) = (&d.source.poset, &d.target.poset);
    for (t2, t1) in d.test_table() {
        let Some(t1) = t1 else {
            return CheckResult::fail(CheckId::ChuMorphism, vec![t2.label(tp)], "target pair has no image");
        };
        for s in sp.elements() {
            if t2.eval(tp, d.map_state(s)) != t1.eval(sp, s) {
                return CheckResult::fail(
                    CheckId::ChuMorphism,
                    vec![sp.name(s).to_string(), t2.label(tp)],
                    format!("target reads {} but source reads {}", t2.eval(tp, d.map_state(s)), t1.eval(sp, s)),
                );
            }
        }
    }
    CheckResult::pass(CheckId::ChuMorphism, format!("{} states x {} pairs agree", sp.len(), d.tgt_scheme().len()))
}

/// Measuring the image equals the image of measuring with the pulled-back test.
pub fn check_centerdot(d: &Dictionary) -> Result<CheckResult, SymmetryError> {
    let (sp, tp) = (&d.source.poset, &d.target.poset);
    let mut compared = 0;
    for (t2, t1) in d.test_table() {
        let Some(t1) = t1 else {
            return Ok(CheckResult::fail(CheckId::Centerdot, vec![t2.label(tp)], "target pair has no image"));
        };
        let tgt = Measured::new(tp, PropertyRecord::from_test(tp, &t2)).ok();
        let src = Measured::new(sp, PropertyRecord::from_test(sp, &t1)).ok();
        for s in sp.elements() {
            let fs = d.map_state(s);
            let in_src = src
                .as_ref()
                .map_or(PropertyRecord::from_test(sp, &t1).questionable.contains(s), |m| m.map.domain.contains(s));
            let in_tgt = tgt
                .as_ref()
                .map_or(PropertyRecord::from_test(tp, &t2).questionable.contains(fs), |m| m.map.domain.contains(fs));
            if in_src != in_tgt {
                return Err(SymmetryError::PartialityMismatch { state: sp.name(s).to_string(), test: t2.label(tp) });
            }
            if !in_src {
                continue;
            }
            match (&src, &tgt) {
                (Some(ms), Some(mt)) => {
                    compared += 1;
                    let lhs = mt.map.apply(fs);
                    let rhs = ms.map.apply(s).map(|v| d.map_state(v));
                    if lhs != rhs {
                        return Ok(CheckResult::fail(
                            CheckId::Centerdot,
                            vec![sp.name(s).to_string(), t2.label(tp)],
                            "measurement does not commute with the dictionary",
                        ));
                    }
                }
                (None, None) => {}
                _ => {
                    return Ok(CheckResult::fail(
                        CheckId::Centerdot,
                        vec![t2.label(tp)],
                        "measurement map exists on one side only",
                    ))
                }
            }
        }
    }
    Ok(CheckResult::pass(CheckId::Centerdot, format!("{compared} measurements commute")))
}

fn pulls_back(d: &Dictionary, src: &Measured, tgt: &Measured) -> bool {
    let sp = &d.source.poset;
    sp.elements().all(|s| {
        let fs = d.map_state(s);
        src.record.actual.contains(s) == tgt.record.actual.contains(fs)
            && src.map.domain.contains(s) == tgt.map.domain.contains(fs)
            && (!src.map.domain.contains(s) || src.map.apply(s).map(|v| d.map_state(v)) == tgt.map.apply(fs))
    })
}

fn check_succession(d: &Dictionary) -> CheckResult {
    let (sp, tp) = (&d.source.poset, &d.target.poset);
    let measured: Vec<(GenTest, Measured, Measured)> = d
        .test_table()
        .into_iter()
        .filter_map(|(t2, t1)| {
            let t1 = t1?;
            let a = Measured::new(tp, PropertyRecord::from_test(tp, &t2)).ok()?;
            let b = Measured::new(sp, PropertyRecord::from_test(sp, &t1)).ok()?;
            Some((t2, a, b))
        })
        .collect();
    let mut defined = 0;
    for (ta, ma_t, ma_s) in &measured {
        for (tb, mb_t, mb_s) in &measured {
            let w = || vec![ta.label(tp), tb.label(tp)];
            match (succession(tp, ma_t, mb_t), succession(sp, ma_s, mb_s)) {
                (None, None) => {}
                (Some(t), Some(s)) => {
                    defined += 1;
                    if !pulls_back(d, &s, &t) {
                        return CheckResult::fail(
                            CheckId::Succession,
                            w(),
                            "successions are not related by the dictionary",
                        );
                    }
                }
                _ => return CheckResult::fail(CheckId::Succession, w(), "succession defined on one side only"),
            }
        }
    }
    CheckResult::pass(CheckId::Succession, format!("{defined} successions preserved"))
}

pub fn check_symmetry(d: &Dictionary) -> Vec<CheckResult> {
    let (sp, tp) = (&d.source.poset, &d.target.poset);
    let centerdot = check_centerdot(d).unwrap_or_else(|e| {
        let witness = match &e {
            SymmetryError::PartialityMismatch { state, test } => vec![state.clone(), test.clone()],
            _ => Vec::new(),
        };
        CheckResult::fail(CheckId::Centerdot, witness, e.to_string())
    });

    let mut seen: HashMap<usize, usize> = HashMap::new();
    let collision = sp.elements().find_map(|s| seen.insert(d.map_state(s), s).map(|prev| (prev, s)));
    let injectivity = CheckResult::from_witness(
        CheckId::Injectivity,
        collision.map(|(a, b)| sp.names_of(&[a, b])),
        "state map is injective",
        "distinct states share an image",
    );

    let image: Vec<GenTest> = d.f_tests.iter().flatten().copied().collect();
    let uncovered = d.src_scheme().pairs().iter().find(|t| !image.contains(t));
    let surjectivity = CheckResult::from_witness(
        CheckId::Surjectivity,
        uncovered.map(|t| vec![t.label(sp)]),
        "every source pair is an image",
        "source pair is not the image of any target pair",
    );

    let unmapped = d.test_table().into_iter().find(|(_, t1)| t1.is_none());
    let preservation = CheckResult::from_witness(
        CheckId::SchemePreservation,
        unmapped.map(|(t2, _)| vec![t2.label(tp)]).or_else(|| uncovered.map(|t| vec![t.label(sp)])),
        "test map is a bijection between schemes",
        "scheme pair unmapped or missed",
    );

    vec![centerdot, check_succession(d), injectivity, surjectivity, preservation]
}

/// Property state of the image of the test `(Σ, Σ*)`.
pub fn lower_adjoint(d: &Dictionary, sigma: usize) -> Result<usize, SymmetryError> {
    let (sp, tp) = (&d.source.poset, &d.target.poset);
    let result = if sigma == tp.bottom() {
        sp.bottom()
    } else {
        let bar = star_of(tp, d.tgt_scheme(), sigma)?;
        let t = GenTest { sigma, sigma_prime: bar };
        d.map_test(&t).ok_or_else(|| SymmetryError::EmptyFilter(tp.name(sigma).to_string()))?.sigma
    };
    let galois = sp.elements().all(|s| sp.leq(result, s) == tp.leq(sigma, d.map_state(s)));
    if !galois {
        return Err(SymmetryError::GaloisViolation(tp.name(sigma).to_string()));
    }
    Ok(result)
}

pub fn check_preservation(d: &Dictionary) -> Vec<CheckResult> {
    let (sp, tp) = (&d.source.poset, &d.target.poset);
    let table = d.test_table();

    let lost = table.iter().find(|(t2, t1)| {
        PropertyRecord::from_test(tp, t2).flags.minimal
            && !t1.is_some_and(|t1| PropertyRecord::from_test(sp, &t1).flags.minimal)
    });
    let minimal = CheckResult::from_witness(
        CheckId::MinimalPreservation,
        lost.map(|(t2, _)| vec![t2.label(tp)]),
        "minimal target properties pull back to minimal properties",
        "pull-back of a minimal property is not minimal",
    );

    let mut conj_fail = table.iter().find_map(|(t2, t1)| {
        let bar = d.map_test(&t2.conjugate());
        (bar.is_some() || t1.is_some()).then_some(())?;
        (bar != t1.map(|t| t.conjugate())).then(|| vec![t2.label(tp)])
    });
    if conj_fail.is_none() {
        conj_fail = sp.elements().filter(|&s| s != sp.bottom()).find_map(|s| {
            let lhs = star_of(sp, d.src_scheme(), s).ok().map(|x| d.map_state(x));
            let rhs = star_of(tp, d.tgt_scheme(), d.map_state(s)).ok();
            (lhs != rhs).then(|| vec![sp.name(s).to_string()])
        });
    }
    let conjugation = CheckResult::from_witness(
        CheckId::ConjugationPreservation,
        conj_fail,
        "test map commutes with conjugation and the state map with star",
        "conjugation or star not preserved",
    );

    let src_o = Orthogonality::new(sp, d.src_scheme());
    let tgt_o = Orthogonality::new(tp, d.tgt_scheme());
    let forward = sp
        .elements()
        .flat_map(|a| sp.elements().map(move |b| (a, b)))
        .find(|&(a, b)| src_o.orthogonal(a, b) && !tgt_o.orthogonal(d.map_state(a), d.map_state(b)));
    let (reverse, note) = match d.inverse() {
        Some(inv) => {
            let back_o = &src_o;
            let bad = tp
                .elements()
                .flat_map(|a| tp.elements().map(move |b| (a, b)))
                .find(|&(a, b)| tgt_o.orthogonal(a, b) && !back_o.orthogonal(inv.map_state(a), inv.map_state(b)));
            (bad.map(|(a, b)| tp.names_of(&[a, b])), "both directions")
        }
        None => (None, "forward only; dictionary is not invertible"),
    };
    let orthogonality = CheckResult::from_witness(
        CheckId::OrthogonalityPreservation,
        forward.map(|(a, b)| sp.names_of(&[a, b])).or(reverse),
        format!("orthogonality preserved ({note})"),
        "orthogonal pair maps to a non-orthogonal pair",
    );

    vec![minimal, conjugation, orthogonality]
}

/// Map between closed-set lattices induced by a dictionary, with its checks.
#[derive(Debug, Clone)]
pub struct InducedMap {
    pub source: ClosedSetLattice,
    pub target: ClosedSetLattice,
    /// Target index of each source closed set, `None` when the image is not closed.
    pub image: Vec<Option<usize>>,
    pub checks: Vec<CheckResult>,
}

pub fn induced_lattice_map(d: &Dictionary) -> Result<InducedMap, SymmetryError> {
    let (sp, tp) = (&d.source.poset, &d.target.poset);
    let src = build_closed_set_lattice(sp, d.src_scheme())?;
    let tgt = build_closed_set_lattice(tp, d.tgt_scheme())?;
    let tgt_pure = tgt.universe().clone();
    let map_set = |c: &StateSet| {
        let mut acc = tp.empty_set();
        for s in c.iter() {
            acc.union_with(&tp.up(d.map_state(s)).intersection(&tgt_pure));
        }
        tgt.closure(&acc)
    };
    let image: Vec<Option<usize>> = src.closed_sets().iter().map(|c| tgt.index_of(&map_set(c))).collect();
    let n = src.len();
    let lbl = |i: usize| src.label(i);
    let pairs = || (0..n).flat_map(|i| (0..n).map(move |j| (i, j)));

    let not_closed = (0..n).find(|&i| image[i].is_none());
    let collide = not_closed
        .map(|i| vec![lbl(i)])
        .or_else(|| pairs().find(|&(i, j)| i < j && image[i] == image[j]).map(|(i, j)| vec![lbl(i), lbl(j)]));
    let injective = CheckResult::from_witness(
        CheckId::LatticeMapInjective,
        collide,
        format!("{n} closed sets map injectively"),
        "closed sets share an image",
    );

    let sups_fail = pairs().find(|&(i, j)| {
        let joined = src.join(i, j).and_then(|k| image[k]);
        let expected = match (image[i], image[j]) {
            (Some(a), Some(b)) => tgt.join(a, b),
            _ => None,
        };
        joined.is_none() || joined != expected
    });
    let sups = CheckResult::from_witness(
        CheckId::LatticeMapSups,
        sups_fail.map(|(i, j)| vec![lbl(i), lbl(j)]),
        "joins preserved",
        "image of a join differs from the join of images",
    );

    let tgt_atoms = tgt.atoms();
    let atom_fail = src.atoms().into_iter().find(|&a| !image[a].is_some_and(|x| tgt_atoms.contains(&x)));
    let atoms = CheckResult::from_witness(
        CheckId::LatticeMapAtoms,
        atom_fail.map(|a| vec![lbl(a)]),
        "atoms map to atoms",
        "atom image is not an atom",
    );

    let ortho_fail = (0..n).find(|&i| image[src.ortho(i)] != image[i].map(|x| tgt.ortho(x)));
    let ortho = CheckResult::from_witness(
        CheckId::LatticeMapOrtho,
        ortho_fail.map(|i| vec![lbl(i)]),
        "orthocomplement preserved",
        "image of the ortho differs from the ortho of the image",
    );

    let src_pure = src.universe().clone();
    let right = |j: usize| -> Option<StateSet> {
        let c = &tgt.closed_sets()[j];
        if c.is_empty() {
            return Some(sp.empty_set());
        }
        let m = tp.meet_of(c).ok()?;
        let low = lower_adjoint(d, m).ok()?;
        Some(sp.up(low).intersection(&src_pure))
    };
    let rights: Vec<Option<StateSet>> = (0..tgt.len()).map(right).collect();
    let mut adj_fail = rights.iter().position(Option::is_none).map(|j| vec![tgt.label(j)]);
    if adj_fail.is_none() {
        'adj: for (i, img) in image.iter().enumerate() {
            for (j, r) in rights.iter().enumerate() {
                let lhs = img.is_some_and(|x| tgt.leq(x, j));
                let rhs = src.closed_sets()[i].is_subset(r.as_ref().expect("checked"));
                if lhs != rhs {
                    adj_fail = Some(vec![lbl(i), tgt.label(j)]);
                    break 'adj;
                }
            }
        }
    }
    let adjunction = CheckResult::from_witness(
        CheckId::LatticeMapAdjunction,
        adj_fail,
        "image is left adjoint to the lower-adjoint pull-back",
        "adjunction fails",
    );

    Ok(InducedMap { source: src, target: tgt, image, checks: vec![injective, sups, atoms, ortho, adjunction] })
}

/// Every preparation evaluates like its state.
pub fn check_quotient_morphism(chu: &ChuSpace, quotient: &StateChu) -> CheckResult {
    for (p, row) in chu.rows().iter().enumerate() {
        let state = quotient.state_of(p);
        if let Some(t) = (0..row.len()).find(|&t| row[t] != quotient.eval(state, t)) {
            return CheckResult::fail(
                CheckId::QuotientMorphism,
                vec![chu.preparations()[p].clone(), chu.tests()[t].clone()],
                "preparation and its state disagree",
            );
        }
    }
    CheckResult::pass(CheckId::QuotientMorphism, format!("{} preparations agree with their states", chu.rows().len()))
}

/// Order automorphisms that commute with the scheme, in lexicographic order.
pub fn automorphisms(space: &StateSpace) -> Vec<Vec<usize>> {
    let p = &space.poset;
    let Some(u) = space.scheme.as_ref() else { return Vec::new() };
    let mut out = Vec::new();
    let mut perm = vec![usize::MAX; p.len()];
    let mut used = vec![false; p.len()];

    fn go(p: &Poset, u: &Scheme, i: usize, perm: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if i == p.len() {
            let keeps = u.pairs().iter().all(|t| u.contains(perm[t.sigma], perm[t.sigma_prime]));
            if keeps {
                out.push(perm.clone());
            }
            return;
        }
        for j in p.elements() {
            if used[j] || p.up(i).len() != p.up(j).len() || p.down(i).len() != p.down(j).len() {
                continue;
            }
            let fits = (0..i).all(|k| p.leq(k, i) == p.leq(perm[k], j) && p.leq(i, k) == p.leq(j, perm[k]));
            if fits {
                perm[i] = j;
                used[j] = true;
                go(p, u, i + 1, perm, used, out);
                used[j] = false;
            }
        }
        perm[i] = usize::MAX;
    }
    go(p, u, 0, &mut perm, &mut used, &mut out);
    out
}
