//! Check records, reports and their JSON, CSV and text renderings.

use std::fmt::Write as _;

use hirota_core::chain::C64;
use hirota_core::specfun::FloatFn;
use serde::Serialize;

use crate::config::{Format, RunConfig};

pub const SCHEMA: u32 = 1;

/// Outcome of one check.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Record {
    /// Suite or command that produced the record.
    pub check: String,
    /// Name of the relation evaluated.
    pub relation: String,
    /// Eigenstate or instance label.
    pub label: String,
    pub k: Option<usize>,
    pub a: Option<usize>,
    /// `None` when the check could not be evaluated.
    pub residual: Option<f64>,
    pub pass: bool,
    pub note: Option<String>,
}

impl Record {
    pub fn new(check: &str, relation: impl Into<String>, label: impl Into<String>) -> Self {
        Record {
            check: check.into(),
            relation: relation.into(),
            label: label.into(),
            k: None,
            a: None,
            residual: None,
            pass: false,
            note: None,
        }
    }

    pub fn k(mut self, k: usize) -> Self {
        self.k = Some(k);
        self
    }

    pub fn a(mut self, a: usize) -> Self {
        self.a = Some(a);
        self
    }

    pub fn note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    /// Passes when `residual <= tol`.
    pub fn measured(mut self, residual: f64, tol: f64) -> Self {
        self.residual = Some(residual);
        self.pass = residual <= tol;
        self
    }

    /// Passes when the check holds exactly.
    pub fn exact(mut self, residual: f64, holds: bool) -> Self {
        self.residual = Some(residual);
        self.pass = holds;
        self
    }

    pub fn failed(mut self, reason: impl Into<String>) -> Self {
        self.residual = None;
        self.pass = false;
        self.note = Some(reason.into());
        self
    }

    fn key(&self) -> (bool, &str, &str, &str, Option<usize>, Option<usize>) {
        (
            self.pass,
            &self.check,
            &self.relation,
            &self.label,
            self.k,
            self.a,
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

/// Eigenvalue data of one eigenstate.
#[derive(Clone, Debug, Serialize)]
pub struct StateEntry {
    pub label: String,
    pub multiplicity: usize,
    pub energy: f64,
    /// `T_0, …, T_{kmax+1}`.
    pub t: Vec<FloatFn>,
}

/// Q-function of one eigenstate.
#[derive(Clone, Debug, Serialize)]
pub struct QEntry {
    pub label: String,
    pub degree: usize,
    /// Ascending coefficients as `[re, im]`.
    pub coefficients: Vec<[f64; 2]>,
    pub roots: Vec<[f64; 2]>,
    pub paired: bool,
}

pub fn pair(z: C64) -> [f64; 2] {
    [z.re, z.im]
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema: u32,
    pub command: String,
    pub config: RunConfig,
    pub summary: Summary,
    /// Failures first, then by check, relation, label, `k`, `a`.
    pub records: Vec<Record>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub states: Option<Vec<StateEntry>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q_functions: Option<Vec<QEntry>>,
}

impl Report {
    pub fn new(command: String, config: RunConfig, mut records: Vec<Record>) -> Self {
        records.sort_by(|x, y| x.key().cmp(&y.key()));
        let passed = records.iter().filter(|r| r.pass).count();
        let summary = Summary {
            total: records.len(),
            passed,
            failed: records.len() - passed,
        };
        Report {
            schema: SCHEMA,
            command,
            config,
            summary,
            records,
            states: None,
            q_functions: None,
        }
    }

    pub fn all_pass(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("report serializes");
                s.push('\n');
                s
            }
            Format::Csv => self.csv(),
            Format::Text => self.text(),
        }
    }

    fn csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        for r in &self.records {
            w.serialize(r).expect("record serializes");
        }
        if self.records.is_empty() {
            w.write_record([
                "check", "relation", "label", "k", "a", "residual", "pass", "note",
            ])
            .expect("header");
        }
        String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
    }

    fn text(&self) -> String {
        let mut s = String::new();
        let opt =
            |v: Option<usize>, name: &str| v.map(|x| format!(" {name}={x}")).unwrap_or_default();
        for r in &self.records {
            let residual = r.residual.map_or("n/a".to_string(), |x| format!("{x:.3e}"));
            let _ = write!(
                s,
                "{} {} {} {}{}{} residual={}",
                if r.pass { "PASS" } else { "FAIL" },
                r.check,
                r.relation,
                r.label,
                opt(r.k, "k"),
                opt(r.a, "a"),
                residual
            );
            if let Some(n) = &r.note {
                let _ = write!(s, " ({n})");
            }
            s.push('\n');
        }
        if let Some(states) = &self.states {
            for st in states {
                let _ = writeln!(
                    s,
                    "state {} multiplicity={} energy={:.12}",
                    st.label, st.multiplicity, st.energy
                );
            }
        }
        if let Some(qs) = &self.q_functions {
            for q in qs {
                let roots: Vec<String> = q
                    .roots
                    .iter()
                    .map(|[re, im]| format!("{re:.9}{im:+.9}i"))
                    .collect();
                let _ = writeln!(
                    s,
                    "Q {} degree={} roots=[{}]",
                    q.label,
                    q.degree,
                    roots.join(", ")
                );
            }
        }
        let _ = writeln!(
            s,
            "{}: {} passed, {} failed",
            self.command, self.summary.passed, self.summary.failed
        );
        s
    }
}
