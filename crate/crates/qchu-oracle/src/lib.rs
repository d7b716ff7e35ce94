//! Brute-force reference predicates over explicit order matrices.
//!
//! Everything here is written straight from the definitions, with no
//! caching, bitsets or pruning, so that the optimized library code can be
//! compared against it on small inputs.

/// A finite order given by its full `leq` matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Order {
    leq: Vec<Vec<bool>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Purity {
    Maximal,
    /// Strict up-set has a least element.
    Successor,
    Other,
}

impl Order {
    /// Reflexive-transitive closure of the given relation.
    pub fn from_relation(n: usize, pairs: &[(usize, usize)]) -> Order {
        let mut leq = vec![vec![false; n]; n];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        for &(a, b) in pairs {
            leq[a][b] = true;
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    if leq[i][k] && leq[k][j] {
                        leq[i][j] = true;
                    }
                }
            }
        }
        Order { leq }
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> bool) -> Order {
        Order { leq: (0..n).map(|i| (0..n).map(|j| f(i, j)).collect()).collect() }
    }

    pub fn len(&self) -> usize {
        self.leq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.leq.is_empty()
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a][b]
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq(a, b)
    }

    fn all(&self) -> std::ops::Range<usize> {
        0..self.len()
    }

    pub fn is_partial_order(&self) -> bool {
        self.all().all(|a| {
            self.leq(a, a)
                && self.all().all(|b| {
                    (a == b || !(self.leq(a, b) && self.leq(b, a)))
                        && self.all().all(|c| !(self.leq(a, b) && self.leq(b, c)) || self.leq(a, c))
                })
        })
    }

    pub fn bottom(&self) -> Option<usize> {
        self.all().find(|&b| self.all().all(|x| self.leq(b, x)))
    }

    pub fn covers(&self, a: usize, b: usize) -> bool {
        self.lt(a, b) && !self.all().any(|c| self.lt(a, c) && self.lt(c, b))
    }

    pub fn cover_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in self.all() {
            for b in self.all() {
                if self.covers(a, b) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn is_maximal(&self, a: usize) -> bool {
        !self.all().any(|b| self.lt(a, b))
    }

    pub fn is_atom(&self, a: usize) -> bool {
        self.bottom().is_some_and(|b| self.covers(b, a))
    }

    /// Greatest lower bound of `set`; the empty set has none here.
    pub fn glb(&self, set: &[usize]) -> Option<usize> {
        if set.is_empty() {
            return None;
        }
        let lower: Vec<usize> = self.all().filter(|&l| set.iter().all(|&s| self.leq(l, s))).collect();
        lower.iter().copied().find(|&g| lower.iter().all(|&l| self.leq(l, g)))
    }

    /// Least upper bound of `set`.
    pub fn lub(&self, set: &[usize]) -> Option<usize> {
        let upper: Vec<usize> = self.all().filter(|&u| set.iter().all(|&s| self.leq(s, u))).collect();
        upper.iter().copied().find(|&g| upper.iter().all(|&u| self.leq(g, u)))
    }

    pub fn bounded(&self, set: &[usize]) -> bool {
        self.all().any(|u| set.iter().all(|&s| self.leq(s, u)))
    }

    fn meet(&self, a: usize, b: usize) -> Option<usize> {
        self.glb(&[a, b])
    }

    fn join(&self, a: usize, b: usize) -> Option<usize> {
        self.lub(&[a, b])
    }

    /// Pure (completely meet-irreducible) states: not the infimum of what lies strictly above.
    /// A bottom that is not maximal is never pure.
    pub fn purity(&self, a: usize) -> Option<Purity> {
        let above: Vec<usize> = self.all().filter(|&b| self.lt(a, b)).collect();
        if above.is_empty() {
            return Some(Purity::Maximal);
        }
        if self.bottom() == Some(a) || self.glb(&above) == Some(a) {
            return None;
        }
        let least = above.iter().any(|&m| above.iter().all(|&b| self.leq(m, b)));
        Some(if least { Purity::Successor } else { Purity::Other })
    }

    pub fn subsets(&self) -> impl Iterator<Item = Vec<usize>> + '_ {
        subsets(self.len())
    }
}

/// All subsets of `0..n` in mask order.
pub fn subsets(n: usize) -> impl Iterator<Item = Vec<usize>> {
    assert!(n < 31, "subset enumeration limited to 30 items");
    (0u32..(1u32 << n)).map(move |mask| (0..n).filter(|&i| mask & (1 << i) != 0).collect())
}

pub fn bounded_complete(o: &Order) -> bool {
    o.subsets().filter(|s| !s.is_empty()).all(|s| o.glb(&s).is_some() && (!o.bounded(&s) || o.lub(&s).is_some()))
}

pub fn strong_atomicity(o: &Order) -> bool {
    o.all().all(|s| o.all().all(|t| !o.lt(s, t) || o.all().any(|c| o.covers(s, c) && o.leq(c, t))))
}

pub fn relative_complement(o: &Order) -> bool {
    o.all().all(|lo| {
        o.all().all(|mid| {
            o.all().all(|hi| {
                !(o.leq(lo, mid) && o.leq(mid, hi))
                    || o.all().any(|c| {
                        o.leq(lo, c) && o.leq(c, hi) && o.meet(c, mid) == Some(lo) && o.join(c, mid) == Some(hi)
                    })
            })
        })
    })
}

/// If `b` is covered by `top` and `a ≤ top`, `a ≰ b`, then `a ∧ b` is covered by `a`.
pub fn lower_semimodular(o: &Order) -> bool {
    o.all().all(|a| {
        o.all().all(|b| {
            o.all().all(|top| {
                !(o.covers(b, top) && o.leq(a, top) && !o.leq(a, b)) || o.meet(a, b).is_some_and(|m| o.covers(m, a))
            })
        })
    })
}

/// If `lo` is covered by `hi`, `lo ≤ a`, `hi ≰ a` and `{a, hi}` is bounded, then `a` is covered by `a ∨ hi`.
pub fn cond_upper_semimodular(o: &Order) -> bool {
    o.all().all(|lo| {
        o.all().all(|hi| {
            o.all().all(|a| {
                !(o.covers(lo, hi) && o.leq(lo, a) && !o.leq(hi, a) && o.bounded(&[a, hi]))
                    || o.join(a, hi).is_some_and(|j| o.covers(a, j))
            })
        })
    })
}

/// For `y ≤ x` and bounded `{y, z}`: `x ∧ (y ∨ z) = y ∨ (x ∧ z)`, both sides defined.
pub fn cond_modular(o: &Order) -> bool {
    o.all().all(|x| {
        o.all().all(|y| {
            o.all().all(|z| {
                if !o.leq(y, x) || !o.bounded(&[y, z]) {
                    return true;
                }
                let lhs = o.join(y, z).and_then(|j| o.meet(x, j));
                let rhs = o.meet(x, z).and_then(|m| o.join(y, m));
                lhs.is_some() && lhs == rhs
            })
        })
    })
}

pub fn atomistic(o: &Order) -> bool {
    let bottom = o.bottom();
    o.all().filter(|&s| Some(s) != bottom).all(|s| {
        let atoms: Vec<usize> = o.all().filter(|&a| o.is_atom(a) && o.leq(a, s)).collect();
        o.lub(&atoms) == Some(s)
    })
}

pub fn no_type2(o: &Order) -> bool {
    o.all().all(|s| matches!(o.purity(s), None | Some(Purity::Maximal)))
}

/// For an interval `[m, t]` and `s` bounded with `t`: `s ∨ m` is the meet of `s ∨ f` over the interval.
pub fn join_continuity(o: &Order) -> bool {
    o.all().all(|m| {
        o.all().all(|t| {
            if !o.leq(m, t) {
                return true;
            }
            let interval: Vec<usize> = o.all().filter(|&f| o.leq(m, f) && o.leq(f, t)).collect();
            o.all().all(|s| {
                if !o.bounded(&[s, t]) {
                    return true;
                }
                let joins: Option<Vec<usize>> = interval.iter().map(|&f| o.join(s, f)).collect();
                let lhs = o.join(s, m);
                let rhs = joins.and_then(|j| o.glb(&j));
                lhs.is_some() && lhs == rhs
            })
        })
    })
}

/// Every `↓s ∩ sub` for `s` in `ambient` has a least upper bound inside `sub`.
pub fn scott_ideal(o: &Order, sub: &[usize], ambient: &[usize]) -> bool {
    ambient.iter().all(|&s| {
        let below: Vec<usize> = sub.iter().copied().filter(|&x| o.leq(x, s)).collect();
        o.lub(&below).is_some_and(|j| sub.contains(&j))
    })
}

/// `a ⊥ b` when some pair `(x, y)` has `x ≤ a` and `y ≤ b`; the bottom is orthogonal to nothing.
pub fn orthogonal(o: &Order, scheme: &[(usize, usize)], a: usize, b: usize) -> bool {
    let bottom = o.bottom();
    Some(a) != bottom && Some(b) != bottom && scheme.iter().any(|&(x, y)| o.leq(x, a) && o.leq(y, b))
}

/// Subsets of the pure states equal to their double orthogonal, each sorted.
pub fn closed_sets(o: &Order, scheme: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let pure: Vec<usize> = o.all().filter(|&s| o.purity(s).is_some()).collect();
    let perp = |set: &[usize]| -> Vec<usize> {
        pure.iter().copied().filter(|&p| set.iter().all(|&x| orthogonal(o, scheme, x, p))).collect()
    };
    let mut out: Vec<Vec<usize>> = subsets(pure.len())
        .map(|idx| idx.into_iter().map(|i| pure[i]).collect::<Vec<usize>>())
        .filter(|set| perp(&perp(set)) == *set)
        .collect();
    out.sort();
    out
}
