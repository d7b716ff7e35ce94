//! Three-valued Chu spaces, their state quotients, and generalized tests.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::order_core::{CheckId, CheckResult, OrderError, Poset, StateSet};

pub const DEFAULT_SATURATION_LIMIT: usize = 4096;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ChuError {
    #[error("evaluation matrix is {rows}x{cols} but the space has {preps} preparations and {tests} tests")]
    DimensionMismatch { rows: usize, cols: usize, preps: usize, tests: usize },
    #[error("duplicate identifier `{0}`")]
    DuplicateName(String),
    #[error("a mixture needs at least one preparation")]
    EmptyMixture,
    #[error("saturation exceeds {0} rows")]
    SizeLimit(usize),
    #[error("no all-indeterminate row; saturate the space first")]
    NoBottomRow,
    #[error("unknown test `{0}`")]
    UnknownTest(String),
    #[error("actual set of test `{0}` is not a principal filter")]
    NotPrincipal(String),
    #[error("states `{0}` and `{1}` are consistent, so they do not define a test")]
    ConsistentPair(String, String),
    #[error("state evaluation is not monotone at `{0}` <= `{1}` on test `{2}`")]
    NotMonotone(String, String, String),
    #[error(transparent)]
    Order(#[from] OrderError),
}

/// Element of the flat boolean domain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TruthValue {
    Indeterminate,
    Yes,
    No,
}

impl TruthValue {
    pub const ALL: [TruthValue; 3] = [TruthValue::Indeterminate, TruthValue::Yes, TruthValue::No];

    pub fn leq(self, other: TruthValue) -> bool {
        self == TruthValue::Indeterminate || self == other
    }

    pub fn meet(self, other: TruthValue) -> TruthValue {
        if self == other {
            self
        } else {
            TruthValue::Indeterminate
        }
    }

    pub fn bar(self) -> TruthValue {
        match self {
            TruthValue::Indeterminate => TruthValue::Indeterminate,
            TruthValue::Yes => TruthValue::No,
            TruthValue::No => TruthValue::Yes,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            TruthValue::Indeterminate => '_',
            TruthValue::Yes => 'Y',
            TruthValue::No => 'N',
        }
    }

    pub fn from_symbol(s: &str) -> Option<TruthValue> {
        match s {
            "_" => Some(TruthValue::Indeterminate),
            "Y" => Some(TruthValue::Yes),
            "N" => Some(TruthValue::No),
            _ => None,
        }
    }
}

impl fmt::Display for TruthValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

pub type Row = Vec<TruthValue>;

fn row_string(row: &[TruthValue]) -> String {
    row.iter().map(|v| v.symbol()).collect()
}

fn row_leq(a: &[TruthValue], b: &[TruthValue]) -> bool {
    a.iter().zip(b).all(|(x, y)| x.leq(*y))
}

fn row_meet(a: &[TruthValue], b: &[TruthValue]) -> Row {
    a.iter().zip(b).map(|(x, y)| x.meet(*y)).collect()
}

/// Preparations × tests evaluation matrix over the flat boolean domain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChuSpace {
    preparations: Vec<String>,
    tests: Vec<String>,
    eval: Vec<Row>,
}

impl ChuSpace {
    pub fn new(preparations: Vec<String>, tests: Vec<String>, eval: Vec<Row>) -> Result<ChuSpace, ChuError> {
        let bad_cols = eval.iter().find(|r| r.len() != tests.len()).map(|r| r.len());
        if eval.len() != preparations.len() || bad_cols.is_some() {
            return Err(ChuError::DimensionMismatch {
                rows: eval.len(),
                cols: bad_cols.unwrap_or(tests.len()),
                preps: preparations.len(),
                tests: tests.len(),
            });
        }
        check_unique(&preparations)?;
        check_unique(&tests)?;
        Ok(ChuSpace { preparations, tests, eval })
    }

    pub fn preparations(&self) -> &[String] {
        &self.preparations
    }

    pub fn tests(&self) -> &[String] {
        &self.tests
    }

    pub fn rows(&self) -> &[Row] {
        &self.eval
    }

    pub fn eval(&self, prep: usize, test: usize) -> TruthValue {
        self.eval[prep][test]
    }

    pub fn column(&self, test: usize) -> Row {
        self.eval.iter().map(|r| r[test]).collect()
    }

    pub fn test_index(&self, name: &str) -> Result<usize, ChuError> {
        self.tests.iter().position(|t| t == name).ok_or_else(|| ChuError::UnknownTest(name.to_string()))
    }

    fn find_column(&self, col: &[TruthValue]) -> Option<usize> {
        (0..self.tests.len()).find(|&t| self.eval.iter().zip(col).all(|(r, v)| r[t] == *v))
    }

    /// Index of the test whose column is the bar of `test`'s column, appending it if absent.
    pub fn conjugate_test(&mut self, test: usize) -> usize {
        let bar: Row = self.column(test).iter().map(|v| v.bar()).collect();
        if let Some(existing) = self.find_column(&bar) {
            return existing;
        }
        let mut name = format!("{}.bar", self.tests[test]);
        while self.tests.contains(&name) {
            name.push('\'');
        }
        self.tests.push(name);
        for (row, v) in self.eval.iter_mut().zip(bar) {
            row.push(v);
        }
        self.tests.len() - 1
    }

    /// Tests whose conjugate column is not present.
    pub fn missing_conjugates(&self) -> Vec<usize> {
        (0..self.tests.len())
            .filter(|&t| {
                let bar: Row = self.column(t).iter().map(|v| v.bar()).collect();
                self.find_column(&bar).is_none()
            })
            .collect()
    }

    /// Copy with every missing conjugate column materialized.
    pub fn with_conjugates(&self) -> ChuSpace {
        let mut out = self.clone();
        for t in 0..self.tests.len() {
            out.conjugate_test(t);
        }
        out
    }

    /// Pointwise meet of the selected rows.
    pub fn mix(&self, preps: &[usize]) -> Result<Row, ChuError> {
        let (first, rest) = preps.split_first().ok_or(ChuError::EmptyMixture)?;
        Ok(rest.iter().fold(self.eval[*first].clone(), |acc, &p| row_meet(&acc, &self.eval[p])))
    }

    pub fn saturate(&self) -> Result<ChuSpace, ChuError> {
        self.saturate_with_limit(DEFAULT_SATURATION_LIMIT)
    }

    /// Closes the rows under pointwise meets and adds the all-indeterminate row.
    pub fn saturate_with_limit(&self, limit: usize) -> Result<ChuSpace, ChuError> {
        let mut seen: HashMap<Row, usize> = HashMap::new();
        let mut distinct: Vec<Row> = Vec::new();
        for row in &self.eval {
            if !seen.contains_key(row) {
                seen.insert(row.clone(), distinct.len());
                distinct.push(row.clone());
            }
        }
        let mut added: Vec<Row> = Vec::new();
        let push = |row: Row, seen: &mut HashMap<Row, usize>, distinct: &mut Vec<Row>, added: &mut Vec<Row>| {
            if seen.contains_key(&row) {
                return Ok(());
            }
            if distinct.len() >= limit {
                return Err(ChuError::SizeLimit(limit));
            }
            seen.insert(row.clone(), distinct.len());
            distinct.push(row.clone());
            added.push(row);
            Ok(())
        };
        let mut frontier = 0;
        while frontier < distinct.len() {
            let current = distinct[frontier].clone();
            for j in 0..frontier {
                let m = row_meet(&current, &distinct[j]);
                push(m, &mut seen, &mut distinct, &mut added)?;
            }
            frontier += 1;
        }
        push(vec![TruthValue::Indeterminate; self.tests.len()], &mut seen, &mut distinct, &mut added)?;
        let mut preparations = self.preparations.clone();
        let mut eval = self.eval.clone();
        for row in added {
            let mut name = format!("mix:{}", row_string(&row));
            while preparations.contains(&name) {
                name.push('\'');
            }
            preparations.push(name);
            eval.push(row);
        }
        Ok(ChuSpace { preparations, tests: self.tests.clone(), eval })
    }

    /// States are the distinct rows, ordered pointwise; each is named after its first preparation.
    pub fn quotient(&self) -> Result<StateChu, ChuError> {
        let mut seen: HashMap<&Row, usize> = HashMap::new();
        let mut rows: Vec<Row> = Vec::new();
        let mut rep = Vec::new();
        let mut class_of = Vec::with_capacity(self.eval.len());
        for (p, row) in self.eval.iter().enumerate() {
            let idx = *seen.entry(row).or_insert_with(|| {
                rows.push(row.clone());
                rep.push(p);
                rows.len() - 1
            });
            class_of.push(idx);
        }
        if !rows.iter().any(|r| r.iter().all(|v| *v == TruthValue::Indeterminate)) {
            return Err(ChuError::NoBottomRow);
        }
        let names: Vec<String> = rep.iter().map(|&p| self.preparations[p].clone()).collect();
        let states = Poset::from_relation(names, |i, j| row_leq(&rows[i], &rows[j]))?;
        let out = StateChu { states, tests: self.tests.clone(), eval: rows, rep, class_of };
        out.check_invariants()?;
        Ok(out)
    }

    /// Tests grouped by identical columns, in first-occurrence order.
    pub fn property_quotient(&self) -> Vec<Vec<usize>> {
        let mut classes: Vec<(Row, Vec<usize>)> = Vec::new();
        for t in 0..self.tests.len() {
            let col = self.column(t);
            match classes.iter_mut().find(|(c, _)| *c == col) {
                Some((_, members)) => members.push(t),
                None => classes.push((col, vec![t])),
            }
        }
        classes.into_iter().map(|(_, m)| m).collect()
    }
}

fn check_unique(names: &[String]) -> Result<(), ChuError> {
    let mut seen = std::collections::HashSet::new();
    for n in names {
        if !seen.insert(n) {
            return Err(ChuError::DuplicateName(n.clone()));
        }
    }
    Ok(())
}

/// Quotient of a Chu space: states ordered pointwise, with their evaluation rows.
#[derive(Debug, Clone)]
pub struct StateChu {
    states: Poset,
    tests: Vec<String>,
    eval: Vec<Row>,
    rep: Vec<usize>,
    class_of: Vec<usize>,
}

impl StateChu {
    /// State × scheme-pair matrix of a state space.
    pub fn from_pairs(states: &Poset, pairs: &[GenTest]) -> StateChu {
        let eval = states.elements().map(|s| pairs.iter().map(|t| t.eval(states, s)).collect()).collect();
        StateChu {
            states: states.clone(),
            tests: pairs.iter().map(|t| t.label(states)).collect(),
            eval,
            rep: states.elements().collect(),
            class_of: states.elements().collect(),
        }
    }

    pub fn states(&self) -> &Poset {
        &self.states
    }

    pub fn tests(&self) -> &[String] {
        &self.tests
    }

    pub fn eval(&self, state: usize, test: usize) -> TruthValue {
        self.eval[state][test]
    }

    pub fn row(&self, state: usize) -> &[TruthValue] {
        &self.eval[state]
    }

    /// Representative preparation of each state.
    pub fn rep(&self, state: usize) -> usize {
        self.rep[state]
    }

    /// State of each preparation.
    pub fn state_of(&self, prep: usize) -> usize {
        self.class_of[prep]
    }

    pub fn test_index(&self, name: &str) -> Result<usize, ChuError> {
        self.tests.iter().position(|t| t == name).ok_or_else(|| ChuError::UnknownTest(name.to_string()))
    }

    /// Rows distinct and evaluation monotone in the state.
    pub fn check_invariants(&self) -> Result<(), ChuError> {
        let p = &self.states;
        for a in p.elements() {
            for b in p.up(a).iter() {
                if a != b && self.eval[a] == self.eval[b] {
                    return Err(ChuError::DuplicateName(p.name(a).to_string()));
                }
                for t in 0..self.tests.len() {
                    if !self.eval[a][t].leq(self.eval[b][t]) {
                        return Err(ChuError::NotMonotone(
                            p.name(a).to_string(),
                            p.name(b).to_string(),
                            self.tests[t].clone(),
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    /// States where the test is certainly yes, and where it is not certainly no.
    pub fn actual_and_questionable(&self, test: usize) -> (StateSet, StateSet) {
        let p = &self.states;
        let actual = p.set_of(p.elements().filter(|&s| self.eval[s][test] == TruthValue::Yes));
        let questionable = p.set_of(p.elements().filter(|&s| self.eval[s][test] != TruthValue::No));
        (actual, questionable)
    }

    /// Minimum of the actual set, verified to generate it as a principal filter.
    pub fn property_state(&self, test: usize) -> Result<Option<usize>, ChuError> {
        let (actual, _) = self.actual_and_questionable(test);
        if actual.is_empty() {
            return Ok(None);
        }
        match self.states.least(&actual) {
            Some(s) if *self.states.up(s) == actual => Ok(Some(s)),
            _ => Err(ChuError::NotPrincipal(self.tests[test].clone())),
        }
    }

    /// Generalized test read off a column whose yes and no sets are both principal.
    pub fn column_as_pair(&self, test: usize) -> Result<Option<GenTest>, ChuError> {
        let yes = self.property_state(test)?;
        let p = &self.states;
        let no_set = p.set_of(p.elements().filter(|&s| self.eval[s][test] == TruthValue::No));
        let no = match p.least(&no_set) {
            Some(s) if *p.up(s) == no_set => Some(s),
            None if no_set.is_empty() => None,
            _ => return Err(ChuError::NotPrincipal(format!("{}.bar", self.tests[test]))),
        };
        match (yes, no) {
            (Some(a), Some(b)) => Ok(Some(make_generalized_test(p, a, b)?)),
            _ => Ok(None),
        }
    }
}

/// Pairwise-distinct rows, and pairwise-distinct columns within `tests`.
pub fn check_biextensional(s: &StateChu, tests: &[usize]) -> CheckResult {
    let id = CheckId::Biextensional;
    let p = s.states();
    for a in p.elements() {
        for b in a + 1..p.len() {
            if tests.iter().all(|&t| s.eval(a, t) == s.eval(b, t)) {
                return CheckResult::fail(id, p.names_of(&[a, b]), "rows coincide on the selected tests");
            }
        }
    }
    for (i, &t) in tests.iter().enumerate() {
        for &u in &tests[i + 1..] {
            if p.elements().all(|st| s.eval(st, t) == s.eval(st, u)) {
                return CheckResult::fail(id, vec![s.tests[t].clone(), s.tests[u].clone()], "columns coincide");
            }
        }
    }
    CheckResult::pass(id, format!("{} rows and {} columns pairwise distinct", p.len(), tests.len()))
}

/// Test with actual set `↑sigma` and questionable set `S ∖ ↑sigma_prime`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GenTest {
    pub sigma: usize,
    pub sigma_prime: usize,
}

pub fn make_generalized_test(p: &Poset, sigma: usize, sigma_prime: usize) -> Result<GenTest, ChuError> {
    if p.consistent2(sigma, sigma_prime) {
        return Err(ChuError::ConsistentPair(p.name(sigma).to_string(), p.name(sigma_prime).to_string()));
    }
    Ok(GenTest { sigma, sigma_prime })
}

impl GenTest {
    pub fn eval(&self, p: &Poset, state: usize) -> TruthValue {
        if p.leq(self.sigma, state) {
            TruthValue::Yes
        } else if p.leq(self.sigma_prime, state) {
            TruthValue::No
        } else {
            TruthValue::Indeterminate
        }
    }

    pub fn conjugate(&self) -> GenTest {
        GenTest { sigma: self.sigma_prime, sigma_prime: self.sigma }
    }

    pub fn actual(&self, p: &Poset) -> StateSet {
        p.up(self.sigma).clone()
    }

    pub fn questionable(&self, p: &Poset) -> StateSet {
        p.up(self.sigma_prime).complement()
    }

    pub fn label(&self, p: &Poset) -> String {
        format!("[{},{}]", p.name(self.sigma), p.name(self.sigma_prime))
    }

    pub fn column(&self, p: &Poset) -> Row {
        p.elements().map(|s| self.eval(p, s)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order_core::Verdict;
    use TruthValue::{Indeterminate as U, No as N, Yes as Y};

    fn space(rows: Vec<Row>) -> ChuSpace {
        let preps = (0..rows.len()).map(|i| format!("p{i}")).collect();
        let tests = (0..rows[0].len()).map(|i| format!("t{i}")).collect();
        ChuSpace::new(preps, tests, rows).unwrap()
    }

    #[test]
    fn flat_domain_laws() {
        for a in TruthValue::ALL {
            assert_eq!(a.bar().bar(), a);
            assert!(U.leq(a));
            for b in TruthValue::ALL {
                assert_eq!(a.meet(b), b.meet(a));
                assert!(a.meet(b).leq(a));
            }
        }
        assert_eq!(Y.meet(N), U);
        assert_eq!(Y.bar(), N);
    }

    #[test]
    fn conjugates() {
        let mut c = space(vec![vec![Y], vec![U], vec![N]]);
        let t = c.conjugate_test(0);
        assert_eq!(c.column(t), vec![N, U, Y]);
        assert_eq!(c.conjugate_test(t), 0);
        let mut z = space(vec![vec![U], vec![U]]);
        assert_eq!(z.conjugate_test(0), 0);
        assert!(space(vec![vec![Y, N]]).missing_conjugates().is_empty());
        assert_eq!(space(vec![vec![Y]]).missing_conjugates(), vec![0]);
    }

    #[test]
    fn mixing() {
        let c = space(vec![vec![Y, N], vec![Y, Y]]);
        assert_eq!(c.mix(&[0, 1]).unwrap(), vec![Y, U]);
        assert_eq!(c.mix(&[1]).unwrap(), vec![Y, Y]);
        assert_eq!(c.mix(&[]), Err(ChuError::EmptyMixture));
        let s = c.saturate().unwrap();
        let all: Vec<usize> = (0..s.rows().len()).collect();
        assert_eq!(s.mix(&all).unwrap(), vec![U, U]);
    }

    #[test]
    fn saturation() {
        let c = space(vec![vec![Y, N], vec![N, Y]]);
        let s = c.saturate().unwrap();
        assert_eq!(s.rows().len(), 3);
        assert!(s.rows().contains(&vec![U, U]));
        assert_eq!(s.saturate().unwrap(), s);
        let one = space(vec![vec![Y, Y]]).saturate().unwrap();
        assert_eq!(one.rows(), &[vec![Y, Y], vec![U, U]]);
        let wide = space(vec![vec![Y, N, Y], vec![N, Y, Y], vec![Y, Y, N]]);
        assert_eq!(wide.saturate_with_limit(4), Err(ChuError::SizeLimit(4)));
    }

    #[test]
    fn quotient_chain() {
        let c = space(vec![vec![U, U], vec![Y, U], vec![Y, N], vec![Y, N]]);
        let q = c.quotient().unwrap();
        assert_eq!(q.states().len(), 3);
        assert_eq!(q.states().cover_relation(), &[(0, 1), (1, 2)]);
        assert_eq!(q.state_of(3), 2);
        assert_eq!(space(vec![vec![Y]]).quotient().unwrap_err(), ChuError::NoBottomRow);
    }

    #[test]
    fn property_classes() {
        let c = space(vec![vec![Y, Y, N], vec![N, N, Y]]);
        assert_eq!(c.property_quotient(), vec![vec![0, 1], vec![2]]);
    }

    #[test]
    fn property_states() {
        let c = space(vec![vec![U, U], vec![Y, N], vec![N, Y], vec![U, Y]]).saturate().unwrap();
        let q = c.quotient().unwrap();
        let s = q.property_state(0).unwrap().unwrap();
        assert_eq!(q.states().name(s), "p1");
        let all_u = space(vec![vec![U], vec![U]]).quotient().unwrap();
        assert_eq!(all_u.property_state(0).unwrap(), None);
        let (a, qq) = all_u.actual_and_questionable(0);
        assert!(a.is_empty());
        assert_eq!(qq.len(), 1);
    }

    #[test]
    fn biextensionality() {
        let q = space(vec![vec![U, U], vec![Y, N], vec![N, Y]]).quotient().unwrap();
        assert_eq!(check_biextensional(&q, &[0, 1]).verdict(), Verdict::Pass);
        let d = space(vec![vec![U, U], vec![Y, Y]]).quotient().unwrap();
        let r = check_biextensional(&d, &[0, 1]);
        assert_eq!(r.witness().unwrap(), ["t0", "t1"]);
    }

    #[test]
    fn generalized_tests() {
        let p = crate::order_core::build_poset(
            &["0", "a", "a'", "b", "b'"].map(String::from),
            &[("0", "a"), ("0", "a'"), ("0", "b"), ("0", "b'")].map(|(x, y)| (x.to_string(), y.to_string())),
        )
        .unwrap();
        let t = make_generalized_test(&p, 1, 2).unwrap();
        assert_eq!(t.column(&p), vec![U, Y, N, U, U]);
        assert_eq!(p.fmt_set(&t.questionable(&p)), "{0,a,b,b'}");
        assert!(matches!(make_generalized_test(&p, 0, 1), Err(ChuError::ConsistentPair(..))));
    }
}
