//! File formats, reports and the command implementations behind the binary.

mod format;

use std::fmt::Write as _;
use std::path::Path;

use thiserror::Error;

pub use format::{
    parse_chu3, parse_dictionary, parse_document, parse_state_space, save_chu3, save_dictionary, save_state_space,
    DictionarySpec, Document,
};

use crate::chu_core::ChuError;
use crate::generators::{Family, GenError, Generated};
use crate::measurement::{
    check_filter_meet, check_specker, coherence_descriptions, measure_theta, theorem_min_eq_qcl, MeasurementError,
    PropertyRecord, DESCRIPTION_LIMIT,
};
use crate::order_core::{check_axiom, check_axiom_exhaustive, AxiomId, CheckResult, OrderError, Verdict};
use crate::ortho_hilbert::{
    build_closed_set_lattice, check_discriminating_perfect, check_hilbert_lattice, check_kripke_frame, check_star_laws,
    validate_scheme, ClosedSetLattice, OrthoError, StateSpace,
};
use crate::symmetry::{
    check_chu_morphism, check_preservation, check_symmetry, induced_lattice_map, Dictionary, SymmetryError,
};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("invalid JSON at line {line}, column {column}: {message}")]
    Json { line: usize, column: usize, message: String },
    #[error("schema error at `{pointer}`: {message}")]
    Schema { pointer: String, message: String },
    #[error("cannot read `{path}`: {message}")]
    Read { path: String, message: String },
    #[error("expected {expected}, found a {found} document")]
    WrongKind { expected: &'static str, found: &'static str },
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error(transparent)]
    Order(#[from] OrderError),
    #[error(transparent)]
    Chu(#[from] ChuError),
    #[error(transparent)]
    Ortho(#[from] OrthoError),
    #[error(transparent)]
    Measurement(#[from] MeasurementError),
    #[error(transparent)]
    Symmetry(#[from] SymmetryError),
    #[error(transparent)]
    Generator(#[from] GenError),
}

pub const EXIT_PASS: u8 = 0;
pub const EXIT_FAIL: u8 = 1;
pub const EXIT_INPUT: u8 = 2;
pub const EXIT_REPORT: u8 = 3;

/// Text to print, its exit code, and an optional DOT rendering.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub text: String,
    pub code: u8,
    pub dot: Option<String>,
}

impl Outcome {
    fn data(text: String) -> Outcome {
        Outcome { text, code: EXIT_PASS, dot: None }
    }
}

/// Check results for one target, with free-form notes.
#[derive(Debug, Clone)]
pub struct Report {
    command: String,
    target: String,
    notes: Vec<String>,
    results: Vec<CheckResult>,
}

impl Report {
    pub fn new(command: &str, target: &str) -> Report {
        Report { command: command.to_string(), target: target.to_string(), notes: Vec::new(), results: Vec::new() }
    }

    pub fn note(&mut self, line: impl Into<String>) {
        self.notes.push(line.into());
    }

    pub fn push(&mut self, result: CheckResult) {
        self.results.push(result);
    }

    pub fn extend(&mut self, results: impl IntoIterator<Item = CheckResult>) {
        self.results.extend(results);
    }

    pub fn results(&self) -> &[CheckResult] {
        &self.results
    }

    pub fn failures(&self) -> usize {
        self.results.iter().filter(|r| !r.is_report() && r.verdict() == Verdict::Fail).count()
    }

    pub fn discrepancies(&self) -> Vec<&CheckResult> {
        self.results.iter().filter(|r| r.is_report() && r.verdict() == Verdict::Fail).collect()
    }

    pub fn exit_code(&self) -> u8 {
        if self.failures() > 0 {
            EXIT_FAIL
        } else if !self.discrepancies().is_empty() {
            EXIT_REPORT
        } else {
            EXIT_PASS
        }
    }

    pub fn render(&self) -> String {
        let mut out = format!("# {} {}\n", self.command, self.target);
        for n in &self.notes {
            let _ = writeln!(out, "{n}");
        }
        for r in &self.results {
            let _ = writeln!(out, "{r}");
        }
        let summary = if self.failures() > 0 { "fail" } else { "pass" };
        let _ = writeln!(
            out,
            "summary: {summary} ({} failed, {} discrepancies)",
            self.failures(),
            self.discrepancies().len()
        );
        out
    }

    fn finish(self) -> Outcome {
        Outcome { text: self.render(), code: self.exit_code(), dot: None }
    }
}

/// A state space from a `state_space` document, or the saturated quotient of a `chu3` one.
pub fn load_space(text: &str) -> Result<StateSpace, IoError> {
    match parse_document(text)? {
        Document::Space(s) => Ok(s),
        Document::Chu(c) => Ok(StateSpace::new(c.saturate()?.quotient()?.states().clone(), None)),
        Document::Dictionary(_) => Err(IoError::WrongKind { expected: "a chu3 or state_space", found: "dictionary" }),
    }
}

fn scheme_required(space: &StateSpace) -> Result<(), IoError> {
    space.scheme()?;
    Ok(())
}

pub fn check_domain(text: &str, target: &str, exhaustive: bool) -> Result<Outcome, IoError> {
    let space = load_space(text)?;
    let mut report = Report::new("check-domain", target);
    report.note(format!("states: {}", space.poset.len()));
    for axiom in AxiomId::ALL {
        let r = if exhaustive { check_axiom_exhaustive(&space.poset, axiom) } else { check_axiom(&space.poset, axiom) };
        report.push(r);
    }
    Ok(report.finish())
}

pub fn quotient(text: &str) -> Result<Outcome, IoError> {
    let space = load_space(text)?;
    Ok(Outcome::data(save_state_space(&space)))
}

pub fn properties(text: &str, target: &str) -> Result<Outcome, IoError> {
    let space = load_space(text)?;
    scheme_required(&space)?;
    let p = &space.poset;
    let mut report = Report::new("properties", target);
    for l in space.properties() {
        report.note(format!(
            "{} sigma={} A={} Q={} K={} flags={}",
            l.id,
            p.name(l.sigma),
            p.fmt_set(&l.actual),
            p.fmt_set(&l.questionable),
            p.fmt_set(&l.consistency),
            l.flags
        ));
        report.push(theorem_min_eq_qcl(p, &l));
        report.push(check_filter_meet(p, &l));
    }
    Ok(report.finish())
}

pub fn measure(text: &str, sigma: &str, state: &str) -> Result<Outcome, IoError> {
    let space = load_space(text)?;
    let p = &space.poset;
    let find = |n: &str| p.index_of(n).ok_or_else(|| IoError::UnknownElement(n.to_string()));
    let (s, x) = (find(sigma)?, find(state)?);
    let partner = space.scheme.as_ref().and_then(|u| u.star_map(p.len())[s]);
    let label = match partner {
        Some(b) => format!("[{},{}]", p.name(s), p.name(b)),
        None => format!("[{}]", p.name(s)),
    };
    let record = PropertyRecord::new(p, label, s, partner);
    let result = measure_theta(p, &record, x)?;
    Ok(Outcome::data(format!(
        "property {}\nstate {}\nresult {}\nflags {}\n",
        record.id,
        p.name(x),
        p.name(result),
        record.flags
    )))
}

pub fn specker(text: &str, target: &str) -> Result<Outcome, IoError> {
    let space = load_space(text)?;
    scheme_required(&space)?;
    let p = &space.poset;
    let props: Vec<PropertyRecord> = space.properties().into_iter().filter(|l| l.flags.minimal).collect();
    let mut report = Report::new("specker", target);
    report.note(format!("minimal properties: {}", props.len()));
    report.push(check_specker(p, &props));
    if props.len() <= DESCRIPTION_LIMIT {
        let d = coherence_descriptions(p, &props)?;
        for family in &d.maximal {
            let ids: Vec<&str> = family.iter().map(|&i| props[i].id.as_str()).collect();
            report.note(format!("maximal description {{{}}}", ids.join(",")));
        }
        report.push(d.coherence);
    } else {
        report.note(format!("descriptions skipped: more than {DESCRIPTION_LIMIT} properties"));
    }
    Ok(report.finish())
}

pub fn ortho(text: &str, target: &str) -> Result<Outcome, IoError> {
    let space = load_space(text)?;
    let u = space.scheme()?;
    let p = &space.poset;
    let mut report = Report::new("ortho", target);
    report.note(format!("scheme pairs: {}", u.len()));
    report.extend(validate_scheme(p, u, true));
    report.extend(check_star_laws(p, u));
    report.push(check_discriminating_perfect(p));
    Ok(report.finish())
}

/// Hasse diagram of the closed sets.
pub fn lattice_dot(l: &ClosedSetLattice) -> String {
    let mut out = String::from("digraph closed_sets {\n  rankdir=BT;\n");
    for i in 0..l.len() {
        let _ = writeln!(out, "  n{i} [label=\"{}\"];", l.label(i).replace('\\', "\\\\").replace('"', "\\\""));
    }
    for (a, b) in l.covers() {
        let _ = writeln!(out, "  n{a} -> n{b};");
    }
    out.push_str("}\n");
    out
}

pub fn hilbert(text: &str, target: &str) -> Result<Outcome, IoError> {
    let space = load_space(text)?;
    let u = space.scheme()?;
    let p = &space.poset;
    let lattice = build_closed_set_lattice(p, u)?;
    let mut report = Report::new("hilbert", target);
    report.note(format!("pure states: {}", lattice.universe().len()));
    report.note(format!("closed sets: {}", lattice.len()));
    report.extend(check_hilbert_lattice(&lattice));
    report.extend(check_kripke_frame(p, u));
    let mut out = report.finish();
    out.dot = Some(lattice_dot(&lattice));
    Ok(out)
}

fn read(path: &Path) -> Result<String, IoError> {
    std::fs::read_to_string(path)
        .map_err(|e| IoError::Read { path: path.display().to_string(), message: e.to_string() })
}

/// Dictionary with its source and target resolved relative to `base`.
pub fn load_dictionary(text: &str, base: &Path) -> Result<Dictionary, IoError> {
    let spec = parse_dictionary(text)?;
    let source = parse_state_space(&read(&base.join(&spec.source))?)?;
    let target = parse_state_space(&read(&base.join(&spec.target))?)?;
    Ok(Dictionary::from_names(source, target, &spec.f_states, &spec.f_tests)?)
}

pub fn symmetry(text: &str, target: &str, base: &Path) -> Result<Outcome, IoError> {
    let d = load_dictionary(text, base)?;
    let mut report = Report::new("symmetry", target);
    report.push(check_chu_morphism(&d));
    report.extend(check_symmetry(&d));
    report.extend(check_preservation(&d));
    let induced = induced_lattice_map(&d)?;
    report.note(format!("closed sets: {} -> {}", induced.source.len(), induced.target.len()));
    report.extend(induced.checks);
    Ok(report.finish())
}

pub fn generate(family: &Family) -> Result<Outcome, IoError> {
    Ok(Outcome::data(match family.build()? {
        Generated::Space(s) => save_state_space(&s),
        Generated::Chu(c) => save_chu3(&c),
    }))
}
