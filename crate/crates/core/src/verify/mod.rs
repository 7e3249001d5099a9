//! Named identity suites. Each suite expands its parameter grid into
//! instantiations, checks them in parallel and reports every nonzero residual.

mod rep;
mod symbolic;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::ncalgebra::NcPoly;
use crate::{Error, Result, ShiftOp};

/// Inclusive integer range written `lo..hi` (or a single integer).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntRange {
    pub lo: i32,
    pub hi: i32,
}

impl IntRange {
    pub const fn new(lo: i32, hi: i32) -> Self {
        IntRange { lo, hi }
    }

    pub fn iter(self) -> std::ops::RangeInclusive<i32> {
        self.lo..=self.hi
    }

    pub fn contains(self, v: i32) -> bool {
        self.lo <= v && v <= self.hi
    }
}

impl FromStr for IntRange {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("expected an integer or lo..hi, got {s:?}"));
        let s = s.trim();
        let (lo, hi) = match s.split_once("..") {
            Some((a, b)) => (
                a.trim().parse().map_err(|_| bad())?,
                b.trim().parse().map_err(|_| bad())?,
            ),
            None => {
                let v = s.parse().map_err(|_| bad())?;
                (v, v)
            }
        };
        if lo > hi {
            return Err(bad());
        }
        Ok(IntRange { lo, hi })
    }
}

impl fmt::Display for IntRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.lo, self.hi)
    }
}

/// The suites [`run_suite`] knows about.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    Msystem,
    Mcom,
    Exchange,
    QdetNested,
    Rank,
    Conserved,
    DefectQdet,
    Drinfeld,
    Automorphisms,
    CtLemmas,
    Confluence,
    Homomorphism,
}

impl Suite {
    pub const ALL: [Suite; 12] = [
        Suite::Msystem,
        Suite::Mcom,
        Suite::Exchange,
        Suite::QdetNested,
        Suite::Rank,
        Suite::Conserved,
        Suite::DefectQdet,
        Suite::Drinfeld,
        Suite::Automorphisms,
        Suite::CtLemmas,
        Suite::Confluence,
        Suite::Homomorphism,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Msystem => "msystem",
            Suite::Mcom => "mcom",
            Suite::Exchange => "exchange",
            Suite::QdetNested => "qdet-nested",
            Suite::Rank => "rank",
            Suite::Conserved => "conserved",
            Suite::DefectQdet => "defect-qdet",
            Suite::Drinfeld => "drinfeld",
            Suite::Automorphisms => "automorphisms",
            Suite::CtLemmas => "ct-lemmas",
            Suite::Confluence => "confluence",
            Suite::Homomorphism => "homomorphism",
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite {s:?}")))
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Grid and sampling parameters. Unset fields take per-suite defaults.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteParams {
    pub r: Option<usize>,
    pub alpha: Option<IntRange>,
    pub n: Option<IntRange>,
    pub p: Option<IntRange>,
    pub k: Option<IntRange>,
    pub m: Option<IntRange>,
    /// Series order for the Cartan-current comparison.
    pub order: Option<i32>,
    pub samples: Option<usize>,
    pub seed: u64,
}

/// One failed instantiation with its left-minus-right residual.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Failure {
    pub identity: String,
    pub instantiation: BTreeMap<String, i64>,
    pub witness: serde_json::Value,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub suite: String,
    pub params: BTreeMap<String, serde_json::Value>,
    pub checks_run: usize,
    pub failures: Vec<Failure>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

pub(crate) type Inst = BTreeMap<String, i64>;

pub(crate) fn inst(pairs: &[(&str, i64)]) -> Inst {
    pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
}

/// Outcome of one identity at one instantiation.
pub(crate) enum Residual {
    Nc(NcPoly),
    Op(ShiftOp),
}

impl Residual {
    fn is_zero(&self) -> bool {
        match self {
            Residual::Nc(p) => p.is_zero(),
            Residual::Op(o) => o.is_zero(),
        }
    }

    fn to_json(&self) -> serde_json::Value {
        match self {
            Residual::Nc(p) => serde_json::to_value(p),
            Residual::Op(o) => serde_json::to_value(o),
        }
        .expect("serializable residual")
    }
}

/// An instantiation: a label, parameters, and the identities to test there.
pub(crate) struct Case {
    pub inst: Inst,
    pub run: Box<dyn Fn() -> Result<Vec<(String, Residual)>> + Send + Sync>,
}

impl Case {
    pub fn new<F>(inst: Inst, f: F) -> Self
    where
        F: Fn() -> Result<Vec<(String, Residual)>> + Send + Sync + 'static,
    {
        Case {
            inst,
            run: Box::new(f),
        }
    }

    /// A case with a single identity.
    pub fn one<F>(identity: &str, inst: Inst, f: F) -> Self
    where
        F: Fn() -> Result<Residual> + Send + Sync + 'static,
    {
        let id = identity.to_string();
        Case::new(inst, move || Ok(vec![(id.clone(), f()?)]))
    }
}

pub(crate) fn run_cases(cases: Vec<Case>) -> Result<(usize, Vec<Failure>)> {
    let results: Vec<Result<Vec<Failure>>> = cases
        .par_iter()
        .map(|c| {
            let out = (c.run)()?;
            Ok(out
                .into_iter()
                .filter(|(_, r)| !r.is_zero())
                .map(|(identity, r)| Failure {
                    identity,
                    instantiation: c.inst.clone(),
                    witness: r.to_json(),
                })
                .collect())
        })
        .collect();
    let mut failures = Vec::new();
    for r in results {
        failures.extend(r?);
    }
    Ok((cases.len(), failures))
}

pub(crate) const MAX_REP_RANK: usize = 3;
pub(crate) const MAX_SYMBOLIC_ALPHA: i32 = 5;

/// Ranks a representation suite runs at: the given one, or `default`.
pub(crate) fn ranks(params: &SuiteParams, default: IntRange) -> Result<Vec<usize>> {
    match params.r {
        Some(r) if r == 0 || r > MAX_REP_RANK => Err(Error::UnsupportedParams(format!(
            "representation suites support 1 <= r <= {MAX_REP_RANK}"
        ))),
        Some(r) => Ok(vec![r]),
        None => Ok(default.iter().map(|r| r as usize).collect()),
    }
}

fn params_json(p: &SuiteParams) -> BTreeMap<String, serde_json::Value> {
    let mut out = BTreeMap::new();
    if let serde_json::Value::Object(map) = serde_json::to_value(p).expect("params serialize") {
        for (k, v) in map {
            if !v.is_null() {
                out.insert(k, v);
            }
        }
    }
    out
}

/// Runs one suite. Identity failures are data in the report; only bad
/// parameters are errors.
pub fn run_suite(suite: Suite, params: &SuiteParams) -> Result<CheckReport> {
    let (cases, notes) = match suite {
        Suite::Msystem => symbolic::msystem(params)?,
        Suite::Mcom => symbolic::mcom(params)?,
        Suite::Exchange => symbolic::exchange(params)?,
        Suite::QdetNested => symbolic::qdet_nested(params)?,
        Suite::CtLemmas => symbolic::ct_lemmas(params)?,
        Suite::Confluence => symbolic::confluence(params)?,
        Suite::Rank => rep::rank(params)?,
        Suite::Conserved => rep::conserved(params)?,
        Suite::DefectQdet => rep::defect_qdet(params)?,
        Suite::Drinfeld => rep::drinfeld(params)?,
        Suite::Automorphisms => rep::automorphisms(params)?,
        Suite::Homomorphism => rep::homomorphism(params)?,
    };
    let (checks_run, failures) = run_cases(cases)?;
    Ok(CheckReport {
        suite: suite.name().to_string(),
        params: params_json(params),
        checks_run,
        failures,
        notes,
    })
}

/// Runs a suite by its name.
pub fn run_suite_named(name: &str, params: &SuiteParams) -> Result<CheckReport> {
    run_suite(name.parse()?, params)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges_parse() {
        assert_eq!("-2..3".parse::<IntRange>().unwrap(), IntRange::new(-2, 3));
        assert_eq!("4".parse::<IntRange>().unwrap(), IntRange::new(4, 4));
        assert!("3..1".parse::<IntRange>().is_err());
        assert_eq!("qdet-nested".parse::<Suite>().unwrap(), Suite::QdetNested);
    }

    #[test]
    fn msystem_example_counts() {
        let p = SuiteParams {
            r: Some(1),
            alpha: Some(IntRange::new(1, 2)),
            n: Some(IntRange::new(-2, 2)),
            ..Default::default()
        };
        let rep = run_suite(Suite::Msystem, &p).unwrap();
        assert!(rep.passed(), "{:?}", rep.failures);
        assert_eq!(rep.checks_run, 10);
    }

    #[test]
    fn bounds() {
        let p = SuiteParams {
            r: Some(4),
            ..Default::default()
        };
        assert!(matches!(
            run_suite(Suite::Rank, &p),
            Err(Error::UnsupportedParams(_))
        ));
        let p = SuiteParams {
            alpha: Some(IntRange::new(1, 6)),
            ..Default::default()
        };
        assert!(matches!(
            run_suite(Suite::Msystem, &p),
            Err(Error::UnsupportedParams(_))
        ));
    }
}
