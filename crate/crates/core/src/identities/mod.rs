//! Instance checks of the straightening identities, degree bounds and
//! integrality statements, over bounded ranges of arguments.
//!
//! A check is a list of parts; a part is a list of argument tuples, each
//! evaluated to a left and a right side that must agree exactly after
//! normalization. Degree and integrality statements are phrased the same way:
//! the right side is the left side with the offending part removed.

mod a2;
mod commutation;
mod dforms;
mod engine;
mod integrality;
mod pforms;
mod straightening;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex};
use std::time::{Duration, Instant};

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use serde_json::Value;

pub use a2::{check_a2, extract_signs};
pub use commutation::{check_commutation, p_past_x, x_past_p, x_past_p_single};
pub use dforms::{
    bbd_past_x_minus, bbd_recursion, check_d_consistency, check_d_identities, d_split, p_shift,
};
pub use engine::{check_divided_powers, check_engine};
pub use integrality::{
    adjoint_part, check_integrality, commutator_part, forms_part, integral_outcome, product_part,
};
pub use pforms::check_p_properties;
pub use straightening::{check_straightening, straightening_rhs};

use crate::combinatorics::{ALabel, LabelConfig, Multiset};
use crate::error::{Error, Result};
use crate::forms::{FormEngine, Reading};
use crate::parallel::par_map;
use crate::pbw::{Algebra, Element, PresetKind};

/// The named checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CheckName {
    Straightening,
    DConsistency,
    PProperties,
    Commutation,
    DIdentities,
    Integrality,
    A2,
    DividedPowers,
    Engine,
}

impl CheckName {
    pub const ALL: [CheckName; 9] = [
        CheckName::Straightening,
        CheckName::DConsistency,
        CheckName::PProperties,
        CheckName::Commutation,
        CheckName::DIdentities,
        CheckName::Integrality,
        CheckName::A2,
        CheckName::DividedPowers,
        CheckName::Engine,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CheckName::Straightening => "straightening",
            CheckName::DConsistency => "d-consistency",
            CheckName::PProperties => "p-properties",
            CheckName::Commutation => "commutation",
            CheckName::DIdentities => "d-identities",
            CheckName::Integrality => "integrality",
            CheckName::A2 => "a2",
            CheckName::DividedPowers => "divided-powers",
            CheckName::Engine => "engine",
        }
    }

    /// Presets the check runs on when none is requested.
    pub fn default_presets(self) -> &'static [PresetKind] {
        match self {
            CheckName::A2 => &[PresetKind::Sl3],
            CheckName::Commutation
            | CheckName::Integrality
            | CheckName::DividedPowers
            | CheckName::Engine => &[PresetKind::Sl2, PresetKind::Sl3],
            _ => &[PresetKind::Sl2],
        }
    }

    /// The bound names this check reads, with their values per profile
    /// (smoke, desk, deep).
    pub fn bound_table(self) -> &'static [(&'static str, [u32; 3])] {
        match self {
            CheckName::Straightening => &[
                ("size", [1, 2, 3]),
                ("samples", [10, 200, 500]),
                ("sample-size", [2, 3, 4]),
            ],
            CheckName::DConsistency => &[("size", [1, 3, 4]), ("k", [1, 3, 4])],
            CheckName::PProperties => &[
                ("size", [2, 4, 5]),
                ("product-size", [1, 2, 3]),
                ("mult-l", [2, 4, 5]),
            ],
            CheckName::Commutation => &[("size", [1, 2, 3]), ("r", [1, 2, 3])],
            CheckName::DIdentities => &[("size", [1, 2, 3])],
            CheckName::Integrality => &[
                ("size", [1, 3, 4]),
                ("sl3-size", [1, 2, 3]),
                ("order", [1, 3, 4]),
                ("length", [2, 3, 3]),
                ("sl3-order", [1, 2, 2]),
                ("sl3-length", [1, 2, 3]),
                ("chi-size", [1, 2, 3]),
                ("ad-order", [2, 4, 6]),
            ],
            CheckName::A2 => &[("order", [1, 3, 4])],
            CheckName::DividedPowers => &[("total", [3, 8, 12])],
            CheckName::Engine => &[("triples", [50, 500, 2000]), ("word-length", [2, 4, 5])],
        }
    }
}

impl fmt::Display for CheckName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CheckName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let norm = s.trim().to_ascii_lowercase().replace('_', "-");
        CheckName::ALL
            .into_iter()
            .find(|c| c.as_str() == norm || c.as_str().replace('-', "") == norm)
            .ok_or_else(|| Error::UnknownCheck(s.to_string()))
    }
}

/// Bound presets.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Profile {
    Smoke,
    #[default]
    Desk,
    Deep,
}

impl Profile {
    fn column(self) -> usize {
        match self {
            Profile::Smoke => 0,
            Profile::Desk => 1,
            Profile::Deep => 2,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Profile::Smoke => "smoke",
            Profile::Desk => "desk",
            Profile::Deep => "deep",
        }
    }
}

impl FromStr for Profile {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "smoke" => Ok(Profile::Smoke),
            "desk" => Ok(Profile::Desk),
            "deep" => Ok(Profile::Deep),
            other => Err(Error::Config(format!(
                "unknown profile `{other}` (expected smoke, desk or deep)"
            ))),
        }
    }
}

/// What to run for one check.
#[derive(Clone, Debug)]
pub struct CheckSpec {
    pub name: CheckName,
    /// `None` runs every default preset of the check.
    pub preset: Option<PresetKind>,
    /// Label pool for exhaustive ranges and random samples.
    pub labels: Vec<ALabel>,
    /// Wider pool, used where a range calls for `{1, t, t²}`.
    pub wide_labels: Vec<ALabel>,
    pub bounds: BTreeMap<String, u32>,
    pub seed: u64,
    pub reading: Reading,
}

impl CheckSpec {
    /// The profile's bounds with labels `{1, t}` (and `{1, t, t²}` for the wide pool).
    pub fn for_profile(name: CheckName, profile: Profile, labels: &LabelConfig) -> Self {
        let bounds = name
            .bound_table()
            .iter()
            .map(|(k, v)| (k.to_string(), v[profile.column()]))
            .collect();
        Self {
            name,
            preset: None,
            labels: vec![labels.t(0), labels.t(1)],
            wide_labels: vec![labels.t(0), labels.t(1), labels.t(2)],
            bounds,
            seed: 0,
            reading: Reading::Corrected,
        }
    }

    pub fn with_bound(mut self, key: &str, value: u32) -> Result<Self> {
        self.set_bound(key, value)?;
        Ok(self)
    }

    pub fn set_bound(&mut self, key: &str, value: u32) -> Result<()> {
        match self.bounds.get_mut(key) {
            Some(slot) => {
                *slot = value;
                Ok(())
            }
            None => Err(Error::Config(format!(
                "check {} has no bound `{key}` (known: {})",
                self.name,
                self.bounds.keys().cloned().collect::<Vec<_>>().join(", ")
            ))),
        }
    }

    pub fn bound(&self, key: &str) -> u32 {
        *self
            .bounds
            .get(key)
            .unwrap_or_else(|| panic!("check {} reads undeclared bound {key}", self.name))
    }

    /// Presets to run, after checking the request against what the check supports.
    pub fn presets(&self) -> Result<Vec<PresetKind>> {
        let allowed = self.name.default_presets();
        match self.preset {
            None => Ok(allowed.to_vec()),
            Some(p) if allowed.contains(&p) => Ok(vec![p]),
            Some(p) => Err(Error::Config(format!(
                "check {} runs on {}, not {p}",
                self.name,
                allowed
                    .iter()
                    .map(|k| k.name())
                    .collect::<Vec<_>>()
                    .join("/")
            ))),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if let Some((k, _)) = self.bounds.iter().find(|(_, v)| **v == 0) {
            return Err(Error::Config(format!(
                "bound `{k}` of {} must be positive",
                self.name
            )));
        }
        for pool in [&self.labels, &self.wide_labels] {
            if pool.is_empty() || !pool.iter().any(ALabel::is_unit) {
                return Err(Error::Config(format!(
                    "label pool of {} must contain the unit",
                    self.name
                )));
            }
        }
        self.presets().map(|_| ())
    }
}

/// One left/right comparison.
pub struct Outcome {
    pub lhs: Element,
    pub rhs: Element,
    pub detail: Option<Value>,
}

impl Outcome {
    pub fn new(lhs: Element, rhs: Element) -> Self {
        Self {
            lhs,
            rhs,
            detail: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.lhs == self.rhs
    }

    /// Passes iff every monomial of `e` has degree `< bound`.
    pub fn degree_below(e: Element, bound: u32) -> Self {
        let rhs = e.degree_part(|d| d < bound);
        Self::new(e, rhs)
    }

    /// Passes iff every monomial of `e` has degree `<= bound`.
    pub fn degree_at_most(e: Element, bound: u32) -> Self {
        let rhs = e.degree_part(|d| d <= bound);
        Self::new(e, rhs)
    }

    /// Passes iff `e` is homogeneous of degree `d`.
    pub fn homogeneous(e: Element, d: u32) -> Self {
        let rhs = e.degree_part(|k| k == d);
        Self::new(e, rhs)
    }

    /// Passes iff every coefficient of `e` is an integer.
    pub fn integer_coefficients(e: Element) -> Self {
        let rhs = e.floor_part();
        Self::new(e, rhs)
    }
}

/// A recorded counterexample.
#[derive(Clone, Debug)]
pub struct Failure {
    pub part: String,
    pub args: Value,
    pub lhs: Element,
    pub rhs: Element,
    pub diff: Element,
}

impl Serialize for Failure {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Failure", 5)?;
        st.serialize_field("part", &self.part)?;
        st.serialize_field("args", &self.args)?;
        st.serialize_field("lhs", &self.lhs.to_json())?;
        st.serialize_field("rhs", &self.rhs.to_json())?;
        st.serialize_field("diff", &self.diff.to_json())?;
        st.end()
    }
}

/// Per-part counts inside a report.
#[derive(Clone, Debug, Serialize)]
pub struct PartSummary {
    pub name: String,
    pub instances: usize,
    pub pass: bool,
    #[serde(rename = "elapsedMs")]
    pub elapsed_ms: u64,
}

/// Number of counterexamples kept per report.
pub const MAX_RECORDED_FAILURES: usize = 5;

#[derive(Clone, Debug)]
pub struct CheckReport {
    pub name: String,
    pub instances: usize,
    pub pass: bool,
    pub failures: Vec<Failure>,
    pub failure_count: usize,
    pub elapsed: Duration,
    pub seed: u64,
    pub parts: Vec<PartSummary>,
    pub details: Vec<Value>,
}

impl CheckReport {
    fn empty(name: &str, seed: u64) -> Self {
        Self {
            name: name.to_string(),
            instances: 0,
            pass: true,
            failures: Vec::new(),
            failure_count: 0,
            elapsed: Duration::ZERO,
            seed,
            parts: Vec::new(),
            details: Vec::new(),
        }
    }

    /// Folds several part reports into one; associative in its arguments.
    pub fn merge(name: &str, seed: u64, reports: Vec<CheckReport>) -> Self {
        let mut out = Self::empty(name, seed);
        for r in reports {
            out.instances += r.instances;
            out.pass &= r.pass;
            out.failure_count += r.failure_count;
            out.elapsed += r.elapsed;
            for f in r.failures {
                if out.failures.len() < MAX_RECORDED_FAILURES {
                    out.failures.push(f);
                }
            }
            out.parts.extend(r.parts);
            out.details.extend(r.details);
        }
        out
    }

    /// One-line summary.
    pub fn summary(&self) -> String {
        format!(
            "[{}] {} instances={} failures={} elapsed={}ms",
            if self.pass { "PASS" } else { "FAIL" },
            self.name,
            self.instances,
            self.failure_count,
            self.elapsed.as_millis()
        )
    }
}

impl Serialize for CheckReport {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("CheckReport", 9)?;
        st.serialize_field("name", &self.name)?;
        st.serialize_field("instances", &self.instances)?;
        st.serialize_field("pass", &self.pass)?;
        st.serialize_field("failures", &self.failures)?;
        st.serialize_field("failureCount", &self.failure_count)?;
        st.serialize_field("elapsedMs", &(self.elapsed.as_millis() as u64))?;
        st.serialize_field("seed", &self.seed)?;
        st.serialize_field("parts", &self.parts)?;
        if !self.details.is_empty() {
            st.serialize_field("details", &self.details)?;
        }
        st.end()
    }
}

/// Shared state for a run: one engine per preset (and so one set of memo
/// tables), and the worker count.
pub struct Checker {
    labels: LabelConfig,
    jobs: usize,
    engines: Mutex<HashMap<PresetKind, Arc<FormEngine>>>,
}

impl Checker {
    /// `jobs == 0` uses every available core; `jobs == 1` runs sequentially.
    pub fn new(labels: LabelConfig, jobs: usize) -> Self {
        Self {
            labels,
            jobs,
            engines: Mutex::new(HashMap::new()),
        }
    }

    pub fn labels(&self) -> &LabelConfig {
        &self.labels
    }

    pub fn jobs(&self) -> usize {
        self.jobs
    }

    pub fn engine(&self, kind: PresetKind) -> Result<Arc<FormEngine>> {
        let mut map = self.engines.lock().expect("engine table poisoned");
        if let Some(e) = map.get(&kind) {
            return Ok(Arc::clone(e));
        }
        let alg = Arc::new(Algebra::new(kind, self.labels)?);
        let e = Arc::new(FormEngine::new(alg)?);
        map.insert(kind, Arc::clone(&e));
        Ok(e)
    }

    /// Evaluates every case and collects a report named `part`.
    pub fn run_part<A, D, F>(
        &self,
        part: &str,
        seed: u64,
        cases: &[A],
        describe: D,
        eval: F,
    ) -> Result<CheckReport>
    where
        A: Sync,
        D: Fn(&A) -> Value,
        F: Fn(&A) -> Result<Outcome> + Sync + Send,
    {
        let start = Instant::now();
        let results = par_map(cases, self.jobs, eval);
        let mut report = CheckReport::empty(part, seed);
        report.instances = cases.len();
        for (case, res) in cases.iter().zip(results) {
            let out = res?;
            if let Some(d) = &out.detail {
                report.details.push(d.clone());
            }
            if out.passed() {
                continue;
            }
            report.pass = false;
            report.failure_count += 1;
            if report.failures.len() < MAX_RECORDED_FAILURES {
                let diff = &out.lhs - &out.rhs;
                report.failures.push(Failure {
                    part: part.to_string(),
                    args: describe(case),
                    lhs: out.lhs,
                    rhs: out.rhs,
                    diff,
                });
            }
        }
        report.elapsed = start.elapsed();
        report.parts.push(PartSummary {
            name: part.to_string(),
            instances: report.instances,
            pass: report.pass,
            elapsed_ms: report.elapsed.as_millis() as u64,
        });
        Ok(report)
    }
}

/// Runs one check.
pub fn run_check(checker: &Checker, spec: &CheckSpec) -> Result<CheckReport> {
    spec.validate()?;
    let start = Instant::now();
    let mut report = match spec.name {
        CheckName::Straightening => check_straightening(checker, spec),
        CheckName::DConsistency => check_d_consistency(checker, spec),
        CheckName::PProperties => check_p_properties(checker, spec),
        CheckName::Commutation => check_commutation(checker, spec),
        CheckName::DIdentities => check_d_identities(checker, spec),
        CheckName::Integrality => check_integrality(checker, spec),
        CheckName::A2 => check_a2(checker, spec),
        CheckName::DividedPowers => check_divided_powers(checker, spec),
        CheckName::Engine => check_engine(checker, spec),
    }?;
    report.elapsed = start.elapsed();
    Ok(report)
}

/// Resolves names (`all` expands to every check) and runs them in order.
pub fn run_suite<F>(checker: &Checker, names: &[String], make_spec: F) -> Result<Vec<CheckReport>>
where
    F: Fn(CheckName) -> Result<CheckSpec>,
{
    let mut resolved = Vec::new();
    for n in names {
        if n.eq_ignore_ascii_case("all") {
            resolved.extend(CheckName::ALL);
        } else {
            resolved.push(n.parse::<CheckName>()?);
        }
    }
    resolved.dedup();
    let specs = resolved
        .into_iter()
        .map(|n| {
            let s = make_spec(n)?;
            s.validate()?;
            Ok(s)
        })
        .collect::<Result<Vec<_>>>()?;
    specs.iter().map(|s| run_check(checker, s)).collect()
}

pub(crate) fn ms_json(m: &Multiset) -> Value {
    Value::String(m.to_string())
}

pub(crate) fn label_json(a: &ALabel) -> Value {
    Value::String(a.to_string())
}
