use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::config::{Format, ScenarioConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Pass,
    Fail,
    Inconclusive,
}

impl Outcome {
    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::Pass => 0,
            Outcome::Fail => 2,
            Outcome::Inconclusive => 3,
        }
    }

    /// The weaker of two outcomes: any failure wins, then inconclusive.
    pub fn and(self, other: Outcome) -> Outcome {
        use Outcome::*;
        match (self, other) {
            (Fail, _) | (_, Fail) => Fail,
            (Inconclusive, _) | (_, Inconclusive) => Inconclusive,
            _ => Pass,
        }
    }
}

/// One checked item: a component, a class, a multidegree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Row {
    pub item: String,
    pub status: String,
    pub detail: String,
}

impl Row {
    pub fn new(item: impl Into<String>, status: impl Into<String>, detail: impl Into<String>) -> Self {
        Row { item: item.into(), status: status.into(), detail: detail.into() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Inputs {
    pub characteristic: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub multidegree: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cutoff: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_cutoff: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub j: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree_bound: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fixture: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub scenario: String,
    pub inputs: Inputs,
    pub outcome: Outcome,
    pub summary: String,
    pub rows: Vec<Row>,
    pub details: serde_json::Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub duration_ms: Option<u64>,
}

impl VerificationReport {
    /// Graded pieces that kept a result from being certified.
    pub fn unstable_pieces(&self) -> Vec<&Row> {
        self.rows.iter().filter(|r| r.status == "unstable").collect()
    }
}

pub fn inputs_for(cfg: &ScenarioConfig) -> Inputs {
    use crate::config::Scenario::*;
    let s = cfg.scenario;
    let rank_like = matches!(s, Char0Rank | Rank);
    let cut = matches!(s, Char0EtaNoncoboundary | Char0Rank | CharpFamily | Rank | CharpWindow);
    Inputs {
        characteristic: cfg.field.characteristic(),
        t: (s != H6Rank).then_some(cfg.t),
        k: rank_like.then_some(cfg.k),
        multidegree: rank_like.then(|| cfg.multidegree.to_string()),
        cutoff: cut.then_some(cfg.cutoff),
        max_cutoff: cut.then_some(cfg.max_cutoff),
        j: (s == H6Rank).then_some(cfg.j),
        degree_bound: (s == OracleCrosscheck).then_some(cfg.degree_bound),
        fixture: cfg.fixture.as_ref().map(|p| p.display().to_string()),
    }
}

fn tsv_field(s: &str) -> String {
    s.replace(['\t', '\n'], " ")
}

pub fn emit_report(r: &VerificationReport, format: Format, verbose: u8) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(r).expect("report serializes");
            s.push('\n');
            s
        }
        Format::Tsv => {
            let mut s = String::from("scenario\titem\tstatus\tdetail\n");
            for row in &r.rows {
                let _ = writeln!(
                    s,
                    "{}\t{}\t{}\t{}",
                    r.scenario,
                    tsv_field(&row.item),
                    tsv_field(&row.status),
                    tsv_field(&row.detail)
                );
            }
            s
        }
        Format::Human => {
            let mut s = String::new();
            let inputs = serde_json::to_value(&r.inputs).expect("inputs serialize");
            let echo: Vec<String> = inputs
                .as_object()
                .expect("struct")
                .iter()
                .map(|(k, v)| format!("{k}={}", v.as_str().map(str::to_string).unwrap_or_else(|| v.to_string())))
                .collect();
            let _ = writeln!(s, "scenario: {} ({})", r.scenario, echo.join(", "));
            for row in &r.rows {
                if row.detail.is_empty() {
                    let _ = writeln!(s, "  [{}] {}", row.status, row.item);
                } else {
                    let _ = writeln!(s, "  [{}] {}: {}", row.status, row.item, row.detail);
                }
            }
            let _ = writeln!(s, "{}", r.summary);
            if verbose > 0 {
                let _ = writeln!(s, "{}", serde_json::to_string_pretty(&r.details).expect("json"));
            }
            if let Some(ms) = r.duration_ms {
                let _ = writeln!(s, "time: {ms} ms");
            }
            let word = match r.outcome {
                Outcome::Pass => "PASS",
                Outcome::Fail => "FAIL",
                Outcome::Inconclusive => "INCONCLUSIVE",
            };
            let _ = writeln!(s, "outcome: {word}");
            s
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn outcome_combination() {
        use Outcome::*;
        assert_eq!(Pass.and(Pass), Pass);
        assert_eq!(Pass.and(Inconclusive), Inconclusive);
        assert_eq!(Inconclusive.and(Fail), Fail);
        assert_eq!([Pass, Fail, Inconclusive].map(Outcome::exit_code), [0, 2, 3]);
    }

    #[test]
    fn tsv_fields_stay_on_one_line() {
        assert_eq!(tsv_field("a\tb\nc"), "a b c");
    }
}
