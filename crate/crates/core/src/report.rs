//! Suite selection, orchestration and the JSON run report.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::lattice::CartanData;
use crate::relations::{
    check_cocycle, check_delta, check_heisenberg, check_locality, check_ope, check_phipsi, check_serre_operator,
    check_serre_symbolic, check_series_oracle, CheckOptions, CheckReport, Status,
};

pub const SCHEMA_VERSION: u32 = 1;

/// Seed for the random lattice samples of the cocycle suite.
pub const COCYCLE_SEED: u64 = 2024;
pub const COCYCLE_SAMPLES: usize = 1000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    Heisenberg,
    Cocycle,
    SeriesOracle,
    Ope,
    Locality,
    Delta,
    Phipsi,
    SerreSym,
    SerreOp,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::Heisenberg,
        Suite::Cocycle,
        Suite::SeriesOracle,
        Suite::Ope,
        Suite::Locality,
        Suite::Delta,
        Suite::Phipsi,
        Suite::SerreSym,
        Suite::SerreOp,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Heisenberg => "heisenberg",
            Suite::Cocycle => "cocycle",
            Suite::SeriesOracle => "series-oracle",
            Suite::Ope => "ope",
            Suite::Locality => "locality",
            Suite::Delta => "delta",
            Suite::Phipsi => "phipsi",
            Suite::SerreSym => "serre-sym",
            Suite::SerreOp => "serre-op",
        }
    }

    /// Parses a comma-separated list; `all` selects every suite.
    pub fn parse_list(text: &str) -> Result<Vec<Suite>> {
        let mut out = Vec::new();
        for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            if item == "all" {
                out.extend(Suite::ALL);
            } else {
                out.push(item.parse()?);
            }
        }
        if out.is_empty() {
            return Err(Error::Usage("no suite selected".into()));
        }
        out.sort();
        out.dedup();
        Ok(out)
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Usage(format!("unknown suite `{s}` (expected one of {}, all)", Suite::ALL.map(Suite::name).join(", "))))
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub cartan: CartanData,
    pub suites: Vec<Suite>,
    /// Mode bound for the Heisenberg and delta checks.
    pub modes: i64,
    /// Degree / window bound for the operator checks.
    pub degree: u32,
    pub serre_k: Vec<i64>,
    /// Also run node-0 cases (reported as beyond-paper).
    pub affine: bool,
}

impl RunConfig {
    pub fn new(cartan: CartanData) -> Self {
        Self { cartan, suites: Suite::ALL.to_vec(), modes: 3, degree: 5, serre_k: vec![1, 2, 3], affine: false }
    }

    pub fn validate(&self) -> Result<()> {
        if self.modes < 1 || self.degree < 1 {
            return Err(Error::Usage(format!("bounds must be positive (modes {}, degree {})", self.modes, self.degree)));
        }
        if let Some(k) = self.serre_k.iter().find(|&&k| k < 1) {
            return Err(Error::Usage(format!("Serre order must be at least 1, got {k}")));
        }
        if self.affine && self.cartan.affine_root().is_none() {
            return Err(Error::Usage("affine cases need a lattice vector for node 0".into()));
        }
        Ok(())
    }

    fn to_json(&self) -> Value {
        json!({
            "cartan": self.cartan.name(),
            "matrix": self.cartan.matrix(),
            "affine_root": self.cartan.affine_root().map(|r| r.coords().to_vec()),
            "suites": self.suites.iter().map(|s| s.name()).collect::<Vec<_>>(),
            "modes": self.modes,
            "degree": self.degree,
            "serre_k": self.serre_k,
            "affine": self.affine,
        })
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub beyond_paper: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub version: u32,
    pub config: Value,
    pub reports: Vec<CheckReport>,
    pub summary: Summary,
}

impl Report {
    /// 0 when every non-beyond-paper report passes, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.summary.fail == 0 {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn text_summary(&self) -> String {
        let mut out = String::new();
        for r in &self.reports {
            let status = match r.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::BeyondPaper => "BEYOND-PAPER",
            };
            let params: Vec<String> = r.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
            out += &format!("{status:<12} {:<13} {} ({} coefficients)\n", r.suite, params.join(" "), r.checked);
            if let Some(w) = &r.witness {
                out += &format!(
                    "             witness: {} at modes {:?} on {}: coefficient of {} expected {} actual {}\n",
                    w.part, w.modes, w.input, w.state, w.expected, w.actual
                );
            }
            if let Some(n) = &r.note {
                out += &format!("             note: {n}\n");
            }
        }
        out += &format!("summary: {} pass, {} fail, {} beyond-paper\n", self.summary.pass, self.summary.fail, self.summary.beyond_paper);
        out
    }
}

/// One unit of work; units run in parallel and are reassembled in order.
fn jobs(config: &RunConfig) -> Vec<(Suite, Option<i64>, bool)> {
    let mut out = Vec::new();
    for &s in &config.suites {
        match s {
            Suite::SerreSym => out.extend(config.serre_k.iter().map(|&k| (s, Some(k), false))),
            Suite::Delta => {
                out.extend((1..=config.cartan.rank()).map(|i| (s, Some(i as i64), false)));
                if config.affine {
                    out.push((s, Some(0), true));
                }
            }
            Suite::Cocycle | Suite::SeriesOracle => out.push((s, None, false)),
            _ => {
                out.push((s, None, false));
                if config.affine {
                    out.push((s, None, true));
                }
            }
        }
    }
    out
}

fn run_job(config: &RunConfig, suite: Suite, arg: Option<i64>, affine: bool) -> Result<CheckReport> {
    let c = &config.cartan;
    let opts = CheckOptions { affine, ..CheckOptions::default() };
    let (m, d) = (config.modes, config.degree);
    Ok(match suite {
        Suite::Heisenberg => check_heisenberg(c, m, d, &opts),
        Suite::Cocycle => check_cocycle(c, COCYCLE_SAMPLES, COCYCLE_SEED, &opts),
        Suite::SeriesOracle => check_series_oracle(12, 20, &opts),
        Suite::Ope => check_ope(c, d as i64, &opts),
        Suite::Locality => check_locality(c, d as i64, &opts),
        Suite::Delta => check_delta(c, arg.expect("node") as usize, m, d, &opts),
        Suite::Phipsi => check_phipsi(c, d, &opts),
        Suite::SerreSym => check_serre_symbolic(arg.expect("order"), &opts)?,
        Suite::SerreOp => check_serre_operator(c, d as i64, &opts),
    })
}

/// Runs the selected suites; report order follows the configuration, not the
/// schedule.
pub fn run(config: &RunConfig) -> Result<Report> {
    config.validate()?;
    let reports: Vec<CheckReport> = jobs(config)
        .into_par_iter()
        .map(|(s, arg, affine)| run_job(config, s, arg, affine))
        .collect::<Result<_>>()?;
    let mut summary = Summary::default();
    for r in &reports {
        match r.status {
            Status::Pass => summary.pass += 1,
            Status::Fail => summary.fail += 1,
            Status::BeyondPaper => summary.beyond_paper += 1,
        }
    }
    Ok(Report { version: SCHEMA_VERSION, config: config.to_json(), reports, summary })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert_eq!(Suite::parse_list("all").unwrap(), Suite::ALL.to_vec());
        assert_eq!(Suite::parse_list("ope, heisenberg,ope").unwrap(), vec![Suite::Heisenberg, Suite::Ope]);
        assert!(Suite::parse_list("bogus").is_err());
        assert!(Suite::parse_list("").is_err());
    }

    #[test]
    fn config_validation() {
        let mut c = RunConfig::new(CartanData::builtin("A1").unwrap());
        assert!(c.validate().is_ok());
        c.degree = 0;
        assert!(c.validate().is_err());
        c.degree = 2;
        c.serre_k = vec![0];
        assert!(c.validate().is_err());
    }

    #[test]
    fn small_run_is_deterministic() {
        let mut c = RunConfig::new(CartanData::builtin("A1").unwrap());
        c.suites = vec![Suite::Heisenberg, Suite::SeriesOracle, Suite::SerreSym];
        c.serre_k = vec![2];
        c.degree = 2;
        let strip = |r: Report| {
            let mut v: Value = serde_json::from_str(&r.to_json()).unwrap();
            for rep in v["reports"].as_array_mut().unwrap() {
                rep["ms"] = Value::from(0);
            }
            v
        };
        let (a, b) = (run(&c).unwrap(), run(&c).unwrap());
        assert_eq!(a.exit_code(), 0);
        assert_eq!(strip(a), strip(b));
    }
}
