//! Fixture families: Boolean and MO_n state spaces, chains, the pentagon,
//! products of completed lattices, and seeded random Chu spaces.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::chu_core::{ChuSpace, TruthValue};
use crate::order_core::{check_axiom, AxiomId, OrderError, Poset, Verdict};
use crate::ortho_hilbert::{scheme_from_star, OrthoError, StateSpace};

pub const PRODUCT_LIMIT: usize = 4096;
pub const RANDOM_LIMIT: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GenError {
    #[error("{family} parameter {value} outside {min}..={max}")]
    Range { family: &'static str, value: usize, min: usize, max: usize },
    #[error("not a projective lattice at ({}): {reason}", witness.join(","))]
    NotProjectiveLattice { witness: Vec<String>, reason: String },
    #[error("not an orthocomplement at ({}): {reason}", witness.join(","))]
    NotOrthocomplement { witness: Vec<String>, reason: String },
    #[error("product has {0} elements, above the limit of {PRODUCT_LIMIT}")]
    SizeLimit(usize),
    #[error("family `{0}` has no scheme")]
    NoScheme(String),
    #[error("cannot parse family `{0}`")]
    Parse(String),
    #[error(transparent)]
    Order(#[from] OrderError),
    #[error(transparent)]
    Ortho(#[from] OrthoError),
}

fn range(family: &'static str, value: usize, min: usize, max: usize) -> Result<(), GenError> {
    if (min..=max).contains(&value) {
        Ok(())
    } else {
        Err(GenError::Range { family, value, min, max })
    }
}

fn with_star(poset: Poset, star: &[Option<usize>]) -> Result<StateSpace, GenError> {
    let scheme = scheme_from_star(&poset, star)?;
    Ok(StateSpace::new(poset, Some(scheme)))
}

/// Proper subsets of `{1..n}` under inclusion, named by their digits, with complement as star.
pub fn gen_boolean(n: usize) -> Result<StateSpace, GenError> {
    range("boolean", n, 2, 6)?;
    let full = (1u32 << n) - 1;
    let masks: Vec<u32> = (0..full).collect();
    let name = |m: u32| {
        if m == 0 {
            "0".to_string()
        } else {
            (0..n).filter(|i| m & (1 << i) != 0).map(|i| char::from(b'1' + i as u8)).collect()
        }
    };
    let names = masks.iter().map(|&m| name(m)).collect();
    let poset = Poset::from_relation(names, |i, j| masks[i] & !masks[j] == 0)?;
    let star: Vec<Option<usize>> = masks.iter().map(|&m| (m != 0).then_some((full & !m) as usize)).collect();
    with_star(poset, &star)
}

/// Bottom plus `2n` atoms `a, a', b, b', ...`, each paired with its primed partner.
pub fn gen_mo(n: usize) -> Result<StateSpace, GenError> {
    range("mo", n, 1, 8)?;
    let mut names = vec!["0".to_string()];
    for i in 0..n {
        let letter = char::from(b'a' + i as u8);
        names.push(letter.to_string());
        names.push(format!("{letter}'"));
    }
    let poset = Poset::from_relation(names, |i, j| i == j || i == 0)?;
    let star: Vec<Option<usize>> =
        (0..=2 * n).map(|i| (i != 0).then(|| if i % 2 == 1 { i + 1 } else { i - 1 })).collect();
    with_star(poset, &star)
}

/// Chain `0 < c1 < ... < c(k-1)`.
pub fn gen_chain(k: usize) -> Result<StateSpace, GenError> {
    range("chain", k, 3, 64)?;
    let names = std::iter::once("0".to_string()).chain((1..k).map(|i| format!("c{i}"))).collect();
    Ok(StateSpace::new(Poset::from_relation(names, |i, j| i <= j)?, None))
}

/// Pentagon: `0 < a < c < 1` and `0 < b < 1`.
pub fn gen_n5() -> Result<StateSpace, GenError> {
    let names: Vec<String> = ["0", "1", "a", "b", "c"].map(String::from).to_vec();
    let pairs: Vec<(String, String)> = [("0", "a"), ("a", "c"), ("c", "1"), ("0", "b"), ("b", "1")]
        .map(|(x, y)| (x.to_string(), y.to_string()))
        .to_vec();
    Ok(StateSpace::new(Poset::new(names, &pairs)?, None))
}

/// A bounded lattice with a complementation map, not validated until converted.
#[derive(Debug, Clone)]
pub struct OrthoLattice {
    pub poset: Poset,
    pub complement: Vec<Option<usize>>,
}

impl OrthoLattice {
    /// The one-point lattice.
    pub fn unit() -> OrthoLattice {
        let poset = Poset::from_relation(vec!["1".to_string()], |_, _| true).expect("one point");
        OrthoLattice { poset, complement: vec![Some(0)] }
    }

    /// Adjoin a top above every state; the star extends by swapping bottom and top.
    pub fn complete(space: &StateSpace) -> Result<OrthoLattice, GenError> {
        let p = &space.poset;
        let scheme = space.scheme.as_ref().ok_or_else(|| GenError::NoScheme("state space".to_string()))?;
        let star = scheme.star_map(p.len());
        let top_name = ["1", "top", "1*"].into_iter().find(|n| p.index_of(n).is_none()).unwrap_or("top'");
        let top = p.len();
        let mut names = p.names().to_vec();
        names.push(top_name.to_string());
        let poset = Poset::from_relation(names, |i, j| j == top || (i != top && p.leq(i, j)))?;
        let mut complement: Vec<Option<usize>> = star;
        complement[p.bottom()] = Some(top);
        complement.push(Some(p.bottom()));
        Ok(OrthoLattice { poset, complement })
    }

    pub fn top(&self) -> Option<usize> {
        self.poset.greatest(&self.poset.full_set())
    }

    /// Componentwise order and complement; elements named `(x,y)`, top named `1`.
    pub fn product(&self, other: &OrthoLattice) -> Result<OrthoLattice, GenError> {
        let (n, m) = (self.poset.len(), other.poset.len());
        if n * m > PRODUCT_LIMIT {
            return Err(GenError::SizeLimit(n * m));
        }
        let top = (self.top(), other.top());
        let names = (0..n * m)
            .map(|k| {
                let (i, j) = (k / m, k % m);
                if (Some(i), Some(j)) == top {
                    "1".to_string()
                } else {
                    format!("({},{})", self.poset.name(i), other.poset.name(j))
                }
            })
            .collect();
        let poset = Poset::from_relation(names, |a, b| self.poset.leq(a / m, b / m) && other.poset.leq(a % m, b % m))?;
        let complement = (0..n * m).map(|k| Some(self.complement[k / m]? * m + other.complement[k % m]?)).collect();
        Ok(OrthoLattice { poset, complement })
    }

    pub fn to_state_space(&self) -> Result<StateSpace, GenError> {
        from_lattice(&self.poset, &self.complement)
    }
}

/// State space `L ∖ {⊤}` of a projective orthocomplemented lattice.
pub fn from_lattice(lattice: &Poset, complement: &[Option<usize>]) -> Result<StateSpace, GenError> {
    let l = lattice;
    let not_projective = |w: &[usize], reason: &str| GenError::NotProjectiveLattice {
        witness: l.names_of(w),
        reason: reason.to_string(),
    };
    let top = l.greatest(&l.full_set()).ok_or_else(|| not_projective(&[], "no top"))?;
    if top == l.bottom() {
        return Err(not_projective(&[top], "trivial lattice"));
    }
    let join = |a: usize, b: usize| l.join2(a, b).ok().flatten();
    for a in l.elements() {
        for b in l.elements() {
            if join(a, b).is_none() || l.meet2(a, b).is_none() {
                return Err(not_projective(&[a, b], "missing meet or join"));
            }
        }
    }
    let meet = |a: usize, b: usize| l.meet2(a, b).expect("lattice");
    let join = |a: usize, b: usize| join(a, b).expect("lattice");
    for a in l.elements() {
        for c in l.up(a).iter() {
            for b in l.elements() {
                if join(a, meet(b, c)) != meet(join(a, b), c) {
                    return Err(not_projective(&[a, b, c], "not modular"));
                }
            }
        }
    }
    let atoms = l.atoms();
    let coatoms =
        l.set_of(l.elements().filter(|&x| x != top && l.upper_covers(x).len() == 1 && l.upper_covers(x).contains(top)));
    for x in l.elements() {
        if x != top && l.upper_covers(x).len() == 1 && !coatoms.contains(x) {
            return Err(not_projective(&[x], "meet-irreducible element is not a coatom"));
        }
        if x != l.bottom() && l.lower_covers(x).len() == 1 && !atoms.contains(x) {
            return Err(not_projective(&[x], "join-irreducible element is not an atom"));
        }
        let below = l.down(x).intersection(atoms);
        if x != l.bottom() && l.join_of(&below).ok().flatten() != Some(x) {
            return Err(not_projective(&[x], "not the join of its atoms"));
        }
    }
    let not_ortho =
        |w: &[usize], reason: &str| GenError::NotOrthocomplement { witness: l.names_of(w), reason: reason.to_string() };
    let comp = |a: usize| complement.get(a).copied().flatten();
    for a in l.elements() {
        let c = comp(a).ok_or_else(|| not_ortho(&[a], "complement undefined"))?;
        if comp(c) != Some(a) {
            return Err(not_ortho(&[a], "not involutive"));
        }
        if meet(a, c) != l.bottom() || join(a, c) != top {
            return Err(not_ortho(&[a, c], "not a complement"));
        }
        for b in l.up(a).iter() {
            if !comp(b).is_some_and(|cb| l.leq(cb, c)) {
                return Err(not_ortho(&[a, b], "not order-reversing"));
            }
        }
    }
    let keep: Vec<usize> = l.elements().filter(|&x| x != top).collect();
    let mut position = vec![usize::MAX; l.len()];
    for (i, &x) in keep.iter().enumerate() {
        position[x] = i;
    }
    let poset =
        Poset::from_relation(keep.iter().map(|&x| l.name(x).to_string()).collect(), |i, j| l.leq(keep[i], keep[j]))?;
    let star: Vec<Option<usize>> = keep.iter().map(|&x| comp(x).filter(|&c| c != top).map(|c| position[c])).collect();
    with_star(poset, &star)
}

/// State space of the product of the completed lattices.
pub fn gen_product(first: &StateSpace, second: &StateSpace) -> Result<StateSpace, GenError> {
    OrthoLattice::complete(first)?.product(&OrthoLattice::complete(second)?)?.to_state_space()
}

/// SplitMix64 generator: state advances by `0x9E3779B97F4A7C15`, output mixed with
/// multipliers `0xBF58476D1CE4E5B9` and `0x94D049BB133111EB`.
#[derive(Debug, Clone)]
pub struct SplitMix64(u64);

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64(seed)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }
}

/// Seeded matrix with cells drawn uniformly from the three truth values, row by row.
pub fn random_chu(seed: u64, preparations: usize, tests: usize) -> Result<ChuSpace, GenError> {
    range("random preparations", preparations, 1, RANDOM_LIMIT)?;
    range("random tests", tests, 1, RANDOM_LIMIT)?;
    let mut rng = SplitMix64::new(seed);
    let eval = (0..preparations)
        .map(|_| (0..tests).map(|_| TruthValue::ALL[(rng.next_u64() % 3) as usize]).collect())
        .collect();
    let preps = (0..preparations).map(|i| format!("p{i}")).collect();
    let test_names = (0..tests).map(|i| format!("t{i}")).collect();
    Ok(ChuSpace::new(preps, test_names, eval).expect("dimensions match"))
}

/// A generator invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Family {
    Boolean(usize),
    Mo(usize),
    Chain(usize),
    N5,
    Product(Box<Family>, Box<Family>),
    RandomChu { seed: u64, preparations: usize, tests: usize },
}

#[derive(Debug, Clone)]
pub enum Generated {
    Space(StateSpace),
    Chu(ChuSpace),
}

impl Family {
    pub fn build(&self) -> Result<Generated, GenError> {
        Ok(match self {
            Family::RandomChu { seed, preparations, tests } => {
                Generated::Chu(random_chu(*seed, *preparations, *tests)?)
            }
            other => Generated::Space(other.space()?),
        })
    }

    pub fn space(&self) -> Result<StateSpace, GenError> {
        match self {
            Family::Boolean(n) => gen_boolean(*n),
            Family::Mo(n) => gen_mo(*n),
            Family::Chain(k) => gen_chain(*k),
            Family::N5 => gen_n5(),
            Family::Product(a, b) => gen_product(&a.space()?, &b.space()?),
            Family::RandomChu { .. } => {
                let Generated::Chu(c) = self.build()? else { unreachable!() };
                let q = c.saturate().and_then(|s| s.quotient()).map_err(|e| GenError::Parse(e.to_string()))?;
                Ok(StateSpace::new(q.states().clone(), None))
            }
        }
    }

    /// Name safe for file names, e.g. `mo-2` or `product-mo-2-boolean-2`.
    pub fn slug(&self) -> String {
        match self {
            Family::Boolean(n) => format!("boolean-{n}"),
            Family::Mo(n) => format!("mo-{n}"),
            Family::Chain(k) => format!("chain-{k}"),
            Family::N5 => "n5".to_string(),
            Family::Product(a, b) => format!("product-{}-{}", a.slug(), b.slug()),
            Family::RandomChu { seed, preparations, tests } => format!("random-{seed}-{preparations}-{tests}"),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Boolean(n) => write!(f, "boolean:{n}"),
            Family::Mo(n) => write!(f, "mo:{n}"),
            Family::Chain(k) => write!(f, "chain:{k}"),
            Family::N5 => write!(f, "n5"),
            Family::Product(a, b) => write!(f, "product({a},{b})"),
            Family::RandomChu { seed, preparations, tests } => write!(f, "random:{seed}:{preparations}:{tests}"),
        }
    }
}

impl FromStr for Family {
    type Err = GenError;

    /// Inverse of `Display`: `boolean:3`, `mo:2`, `chain:3`, `n5`, `random:1:4:3`,
    /// `product(mo:2,boolean:2)`.
    fn from_str(s: &str) -> Result<Family, GenError> {
        let bad = || GenError::Parse(s.to_string());
        let s = s.trim();
        if let Some(inner) = s.strip_prefix("product(").and_then(|r| r.strip_suffix(')')) {
            let mut depth = 0usize;
            let split = inner.char_indices().find(|&(_, c)| {
                match c {
                    '(' => depth += 1,
                    ')' => depth = depth.saturating_sub(1),
                    _ => {}
                }
                c == ',' && depth == 0
            });
            let (i, _) = split.ok_or_else(bad)?;
            return Ok(Family::Product(Box::new(inner[..i].parse()?), Box::new(inner[i + 1..].parse()?)));
        }
        let parts: Vec<&str> = s.split(':').collect();
        let num = |x: &str| x.parse::<usize>().map_err(|_| bad());
        match parts.as_slice() {
            ["boolean", n] => Ok(Family::Boolean(num(n)?)),
            ["mo", n] => Ok(Family::Mo(num(n)?)),
            ["chain", k] => Ok(Family::Chain(num(k)?)),
            ["n5"] => Ok(Family::N5),
            ["random", seed, p, t] => {
                Ok(Family::RandomChu { seed: seed.parse().map_err(|_| bad())?, preparations: num(p)?, tests: num(t)? })
            }
            _ => Err(bad()),
        }
    }
}

/// A family together with its expected verdict for every order axiom.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixtureSpec {
    pub family: Family,
    pub expected: BTreeMap<AxiomId, Verdict>,
}

impl FixtureSpec {
    /// Expected verdicts computed by running every axiom check.
    pub fn derive(family: Family) -> Result<FixtureSpec, GenError> {
        let space = family.space()?;
        let expected = AxiomId::ALL.iter().map(|&a| (a, check_axiom(&space.poset, a).verdict())).collect();
        Ok(FixtureSpec { family, expected })
    }

    /// Axioms whose current verdict differs from the expected one.
    pub fn mismatches(&self, poset: &Poset) -> Vec<AxiomId> {
        self.expected.iter().filter(|(&a, &v)| check_axiom(poset, a).verdict() != v).map(|(&a, _)| a).collect()
    }
}

/// Families shipped as the standard corpus.
pub fn corpus() -> Vec<Family> {
    let mut out: Vec<Family> = (2..=5).map(Family::Boolean).collect();
    out.extend((1..=6).map(Family::Mo));
    out.extend([Family::Chain(3), Family::Chain(4), Family::N5]);
    let pair = |a: Family, b: Family| Family::Product(Box::new(a), Box::new(b));
    out.push(pair(Family::Mo(2), Family::Mo(2)));
    out.push(pair(Family::Boolean(2), Family::Boolean(2)));
    out.push(pair(Family::Mo(1), Family::Boolean(2)));
    out
}
