use std::cmp::Ordering;
use std::fmt;

use fixedbitset::FixedBitSet;

/// A subset of the elements of a fixed universe `0..capacity`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct StateSet(FixedBitSet);

impl StateSet {
    pub fn empty(capacity: usize) -> Self {
        StateSet(FixedBitSet::with_capacity(capacity))
    }

    pub fn full(capacity: usize) -> Self {
        let mut bits = FixedBitSet::with_capacity(capacity);
        bits.insert_range(..);
        StateSet(bits)
    }

    pub fn singleton(capacity: usize, element: usize) -> Self {
        let mut set = Self::empty(capacity);
        set.insert(element);
        set
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(capacity: usize, items: I) -> Self {
        let mut set = Self::empty(capacity);
        for i in items {
            set.insert(i);
        }
        set
    }

    pub fn capacity(&self) -> usize {
        self.0.len()
    }

    pub fn contains(&self, element: usize) -> bool {
        self.0.contains(element)
    }

    pub fn insert(&mut self, element: usize) {
        self.0.insert(element);
    }

    pub fn remove(&mut self, element: usize) {
        self.0.set(element, false);
    }

    pub fn len(&self) -> usize {
        self.0.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_clear()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.ones()
    }

    pub fn first(&self) -> Option<usize> {
        self.0.ones().next()
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn is_subset(&self, other: &StateSet) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn is_disjoint(&self, other: &StateSet) -> bool {
        self.0.is_disjoint(&other.0)
    }

    pub fn intersects(&self, other: &StateSet) -> bool {
        !self.is_disjoint(other)
    }

    pub fn intersect_with(&mut self, other: &StateSet) {
        self.0.intersect_with(&other.0);
    }

    pub fn union_with(&mut self, other: &StateSet) {
        self.0.union_with(&other.0);
    }

    pub fn difference_with(&mut self, other: &StateSet) {
        self.0.difference_with(&other.0);
    }

    pub fn intersection(&self, other: &StateSet) -> StateSet {
        let mut out = self.clone();
        out.intersect_with(other);
        out
    }

    pub fn union(&self, other: &StateSet) -> StateSet {
        let mut out = self.clone();
        out.union_with(other);
        out
    }

    pub fn difference(&self, other: &StateSet) -> StateSet {
        let mut out = self.clone();
        out.difference_with(other);
        out
    }

    pub fn complement(&self) -> StateSet {
        let mut out = self.clone();
        out.0.toggle_range(..);
        out
    }
}

impl fmt::Debug for StateSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Smaller sets first, then lexicographic on the sorted members.
impl Ord for StateSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| self.iter().cmp(other.iter()))
    }
}

impl PartialOrd for StateSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Every subset of `items` with between `min` and `max` members, smallest first.
pub fn subsets_up_to(items: &[usize], min: usize, max: usize) -> Vec<Vec<usize>> {
    fn grow(items: &[usize], start: usize, size: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            cur.push(items[i]);
            grow(items, i + 1, size, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    for size in min..=max.min(items.len()) {
        grow(items, 0, size, &mut Vec::new(), &mut out);
    }
    out
}
