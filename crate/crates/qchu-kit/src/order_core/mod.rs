//! Finite posets with a bottom element, and the order axioms checked on them.

mod axioms;
mod check;
mod set;

use std::collections::HashMap;

use thiserror::Error;

pub use axioms::{check_axiom, check_axiom_exhaustive, check_projective_domain};
pub use check::{aggregate, AxiomId, CheckId, CheckResult, Verdict};
pub use set::{subsets_up_to, StateSet};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OrderError {
    #[error("poset has no elements")]
    Empty,
    #[error("duplicate element `{0}`")]
    DuplicateElement(String),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("order relation has a cycle through `{0}` and `{1}`")]
    Cycle(String, String),
    #[error("no unique bottom element (minimal elements: {0:?})")]
    NoBottom(Vec<String>),
    #[error("no greatest lower bound for {0}")]
    NoMeet(String),
    #[error("upper bounds of {0} exist but none is least")]
    AmbiguousJoin(String),
    #[error("unknown axiom `{0}`")]
    UnknownAxiom(String),
}

/// Kind of a completely meet-irreducible element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PureKind {
    /// Maximal element.
    Type1,
    /// Its strict up-set has a minimum.
    Type2,
    /// Neither; only possible when the poset is not bounded complete.
    Unclassified,
}

/// Finite partial order with a least element, stored as up-set and down-set bit rows.
#[derive(Debug, Clone)]
pub struct Poset {
    names: Vec<String>,
    index: HashMap<String, usize>,
    up: Vec<StateSet>,
    down: Vec<StateSet>,
    bottom: usize,
    covers: Vec<(usize, usize)>,
    upper_covers: Vec<StateSet>,
    lower_covers: Vec<StateSet>,
}

/// Builds a poset from element names and generating `(lower, upper)` pairs.
pub fn build_poset(elements: &[String], pairs: &[(String, String)]) -> Result<Poset, OrderError> {
    Poset::new(elements.to_vec(), pairs)
}

impl Poset {
    pub fn new(elements: Vec<String>, pairs: &[(String, String)]) -> Result<Poset, OrderError> {
        let mut index = HashMap::new();
        for (i, e) in elements.iter().enumerate() {
            if index.insert(e.clone(), i).is_some() {
                return Err(OrderError::DuplicateElement(e.clone()));
            }
        }
        let n = elements.len();
        let mut up: Vec<StateSet> = (0..n).map(|i| StateSet::singleton(n, i)).collect();
        for (lo, hi) in pairs {
            let l = *index.get(lo).ok_or_else(|| OrderError::UnknownElement(lo.clone()))?;
            let h = *index.get(hi).ok_or_else(|| OrderError::UnknownElement(hi.clone()))?;
            up[l].insert(h);
        }
        Self::from_up_sets(elements, up)
    }

    /// Builds from a relation given as a predicate `leq(i, j)`; the closure is taken.
    pub fn from_relation(elements: Vec<String>, leq: impl Fn(usize, usize) -> bool) -> Result<Poset, OrderError> {
        let n = elements.len();
        let up = (0..n).map(|i| StateSet::from_indices(n, (0..n).filter(|&j| i == j || leq(i, j)))).collect();
        Self::from_up_sets(elements, up)
    }

    fn from_up_sets(names: Vec<String>, mut up: Vec<StateSet>) -> Result<Poset, OrderError> {
        let n = names.len();
        if n == 0 {
            return Err(OrderError::Empty);
        }
        let mut index = HashMap::new();
        for (i, e) in names.iter().enumerate() {
            if index.insert(e.clone(), i).is_some() {
                return Err(OrderError::DuplicateElement(e.clone()));
            }
        }
        for (i, row) in up.iter_mut().enumerate() {
            row.insert(i);
        }
        // Warshall closure on bit rows.
        for k in 0..n {
            let row_k = up[k].clone();
            for row in up.iter_mut() {
                if row.contains(k) {
                    row.union_with(&row_k);
                }
            }
        }
        let mut down: Vec<StateSet> = vec![StateSet::empty(n); n];
        for (i, row) in up.iter().enumerate() {
            for j in row.iter() {
                down[j].insert(i);
            }
        }
        for i in 0..n {
            for j in up[i].iter() {
                if j > i && up[j].contains(i) {
                    return Err(OrderError::Cycle(names[i].clone(), names[j].clone()));
                }
            }
        }
        let minimal: Vec<usize> = (0..n).filter(|&i| down[i].len() == 1).collect();
        let bottom = match minimal.as_slice() {
            [b] if up[*b].len() == n => *b,
            _ => return Err(OrderError::NoBottom(minimal.iter().map(|&i| names[i].clone()).collect())),
        };
        let mut upper_covers = vec![StateSet::empty(n); n];
        let mut lower_covers = vec![StateSet::empty(n); n];
        let mut covers = Vec::new();
        for i in 0..n {
            for j in up[i].iter() {
                if j == i {
                    continue;
                }
                let between = up[i].intersection(&down[j]);
                if between.len() == 2 {
                    upper_covers[i].insert(j);
                    lower_covers[j].insert(i);
                    covers.push((i, j));
                }
            }
        }
        Ok(Poset { names, index, up, down, bottom, covers, upper_covers, lower_covers })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn lookup(&self, name: &str) -> Result<usize, OrderError> {
        self.index_of(name).ok_or_else(|| OrderError::UnknownElement(name.to_string()))
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.len()
    }

    pub fn empty_set(&self) -> StateSet {
        StateSet::empty(self.len())
    }

    pub fn full_set(&self) -> StateSet {
        StateSet::full(self.len())
    }

    pub fn set_of(&self, items: impl IntoIterator<Item = usize>) -> StateSet {
        StateSet::from_indices(self.len(), items)
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.up[a].contains(b)
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq(a, b)
    }

    pub fn comparable(&self, a: usize, b: usize) -> bool {
        self.leq(a, b) || self.leq(b, a)
    }

    /// `{j : i ≤ j}`
    pub fn up(&self, i: usize) -> &StateSet {
        &self.up[i]
    }

    /// `{j : j ≤ i}`
    pub fn down(&self, i: usize) -> &StateSet {
        &self.down[i]
    }

    pub fn strict_up(&self, i: usize) -> StateSet {
        let mut s = self.up[i].clone();
        s.remove(i);
        s
    }

    pub fn strict_down(&self, i: usize) -> StateSet {
        let mut s = self.down[i].clone();
        s.remove(i);
        s
    }

    /// Union of the up-sets of the members.
    pub fn up_closure(&self, set: &StateSet) -> StateSet {
        let mut out = self.empty_set();
        for i in set.iter() {
            out.union_with(&self.up[i]);
        }
        out
    }

    /// Union of the down-sets of the members.
    pub fn down_closure(&self, set: &StateSet) -> StateSet {
        let mut out = self.empty_set();
        for i in set.iter() {
            out.union_with(&self.down[i]);
        }
        out
    }

    pub fn is_down_set(&self, set: &StateSet) -> bool {
        set.iter().all(|i| self.down[i].is_subset(set))
    }

    pub fn is_up_set(&self, set: &StateSet) -> bool {
        set.iter().all(|i| self.up[i].is_subset(set))
    }

    /// All covering pairs `(lower, upper)`, sorted.
    pub fn cover_relation(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn is_cover(&self, lower: usize, upper: usize) -> bool {
        self.upper_covers[lower].contains(upper)
    }

    pub fn upper_covers(&self, i: usize) -> &StateSet {
        &self.upper_covers[i]
    }

    pub fn lower_covers(&self, i: usize) -> &StateSet {
        &self.lower_covers[i]
    }

    pub fn atoms(&self) -> &StateSet {
        &self.upper_covers[self.bottom]
    }

    pub fn maximal_elements(&self) -> StateSet {
        self.set_of(self.elements().filter(|&i| self.up[i].len() == 1))
    }

    pub fn upper_bounds(&self, set: &StateSet) -> StateSet {
        let mut out = self.full_set();
        for i in set.iter() {
            out.intersect_with(&self.up[i]);
        }
        out
    }

    pub fn lower_bounds(&self, set: &StateSet) -> StateSet {
        let mut out = self.full_set();
        for i in set.iter() {
            out.intersect_with(&self.down[i]);
        }
        out
    }

    /// The member above every other member, if any.
    pub fn greatest(&self, set: &StateSet) -> Option<usize> {
        let cand = set.iter().max_by_key(|&i| self.down[i].len())?;
        set.is_subset(&self.down[cand]).then_some(cand)
    }

    /// The member below every other member, if any.
    pub fn least(&self, set: &StateSet) -> Option<usize> {
        let cand = set.iter().max_by_key(|&i| self.up[i].len())?;
        set.is_subset(&self.up[cand]).then_some(cand)
    }

    pub fn meet_of(&self, set: &StateSet) -> Result<usize, OrderError> {
        if set.is_empty() {
            return Err(OrderError::NoMeet("{}".to_string()));
        }
        self.greatest(&self.lower_bounds(set)).ok_or_else(|| OrderError::NoMeet(self.fmt_set(set)))
    }

    pub fn meet2(&self, a: usize, b: usize) -> Option<usize> {
        self.greatest(&self.down[a].intersection(&self.down[b]))
    }

    /// Least upper bound; `None` when the set has no upper bound at all.
    pub fn join_of(&self, set: &StateSet) -> Result<Option<usize>, OrderError> {
        let ub = self.upper_bounds(set);
        if ub.is_empty() {
            return Ok(None);
        }
        self.least(&ub).map(Some).ok_or_else(|| OrderError::AmbiguousJoin(self.fmt_set(set)))
    }

    pub fn join2(&self, a: usize, b: usize) -> Result<Option<usize>, OrderError> {
        let ub = self.up[a].intersection(&self.up[b]);
        if ub.is_empty() {
            return Ok(None);
        }
        match self.least(&ub) {
            Some(j) => Ok(Some(j)),
            None => Err(OrderError::AmbiguousJoin(format!("{{{},{}}}", self.names[a], self.names[b]))),
        }
    }

    pub fn is_consistent(&self, set: &StateSet) -> bool {
        !self.upper_bounds(set).is_empty()
    }

    pub fn consistent2(&self, a: usize, b: usize) -> bool {
        self.up[a].intersects(&self.up[b])
    }

    /// Every strict predecessor of each element is consistent with the other.
    pub fn is_quasi_consistent(&self, x: usize, y: usize) -> bool {
        let ok = |a: usize, b: usize| self.strict_down(b).iter().all(|p| self.consistent2(a, p));
        ok(x, y) && ok(y, x)
    }

    /// Completely meet-irreducible elements other than a non-maximal bottom, with their kind.
    pub fn pure_states(&self) -> PureStates {
        let kinds = self
            .elements()
            .map(|i| {
                let strict = self.strict_up(i);
                if strict.is_empty() {
                    return Some(PureKind::Type1);
                }
                if i == self.bottom || self.lower_bounds(&strict).is_subset(&self.down[i]) {
                    return None;
                }
                Some(if self.least(&strict).is_some() { PureKind::Type2 } else { PureKind::Unclassified })
            })
            .collect::<Vec<_>>();
        let set = self.set_of(kinds.iter().enumerate().filter(|(_, k)| k.is_some()).map(|(i, _)| i));
        PureStates { kinds, set }
    }

    /// Pure states that are upper bounds of every member of `set`.
    pub fn underline_of(&self, pure: &PureStates, set: &StateSet) -> StateSet {
        self.upper_bounds(set).intersection(pure.set())
    }

    pub fn fmt_set(&self, set: &StateSet) -> String {
        let names: Vec<&str> = set.iter().map(|i| self.name(i)).collect();
        format!("{{{}}}", names.join(","))
    }

    pub fn names_of(&self, items: &[usize]) -> Vec<String> {
        items.iter().map(|&i| self.names[i].clone()).collect()
    }

    /// Same elements and order, compared by name.
    pub fn same_as(&self, other: &Poset) -> bool {
        self.len() == other.len()
            && self.names.iter().all(|n| other.index_of(n).is_some())
            && self.elements().all(|i| {
                self.elements().all(|j| {
                    let (a, b) = (other.index[&self.names[i]], other.index[&self.names[j]]);
                    self.leq(i, j) == other.leq(a, b)
                })
            })
    }

    /// An order isomorphism onto `other`, as the image index of each element.
    pub fn isomorphism_to(&self, other: &Poset) -> Option<Vec<usize>> {
        if self.len() != other.len() || self.covers.len() != other.covers.len() {
            return None;
        }
        let profile =
            |p: &Poset, i: usize| (p.down[i].len(), p.up[i].len(), p.lower_covers[i].len(), p.upper_covers[i].len());
        let mut order: Vec<usize> = self.elements().collect();
        order.sort_by_key(|&i| self.down[i].len());
        let mut image = vec![usize::MAX; self.len()];
        let mut used = vec![false; other.len()];

        type Profile = dyn Fn(&Poset, usize) -> (usize, usize, usize, usize);

        fn extend(
            a: &Poset,
            b: &Poset,
            order: &[usize],
            image: &mut Vec<usize>,
            used: &mut Vec<bool>,
            profile: &Profile,
        ) -> bool {
            let Some((&x, rest)) = order.split_first() else { return true };
            for y in b.elements() {
                if used[y] || profile(a, x) != profile(b, y) {
                    continue;
                }
                let fits = a
                    .elements()
                    .filter(|&z| image[z] != usize::MAX)
                    .all(|z| a.leq(z, x) == b.leq(image[z], y) && a.leq(x, z) == b.leq(y, image[z]));
                if fits {
                    image[x] = y;
                    used[y] = true;
                    if extend(a, b, rest, image, used, profile) {
                        return true;
                    }
                    image[x] = usize::MAX;
                    used[y] = false;
                }
            }
            false
        }
        extend(self, other, &order, &mut image, &mut used, &profile).then_some(image)
    }
}

/// Result of [`Poset::pure_states`].
#[derive(Debug, Clone)]
pub struct PureStates {
    kinds: Vec<Option<PureKind>>,
    set: StateSet,
}

impl PureStates {
    pub fn set(&self) -> &StateSet {
        &self.set
    }

    pub fn kind(&self, i: usize) -> Option<PureKind> {
        self.kinds[i]
    }

    pub fn is_pure(&self, i: usize) -> bool {
        self.kinds[i].is_some()
    }

    pub fn of_kind(&self, kind: PureKind) -> Vec<usize> {
        self.set.iter().filter(|&i| self.kinds[i] == Some(kind)).collect()
    }
}
