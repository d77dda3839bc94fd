//! Run reports with a fixed JSON schema.
//!
//! Keys always appear, in declaration order; absent values are `null`.
//! Numbers carry at most 12 significant digits and integral values print
//! without a fractional part.

use centdian_core::approx::ApproxResult;
use centdian_core::exact::ExactResult;
use centdian_core::CentdianEvaluation;
use serde::{Serialize, Serializer};

/// Slack allowed on the bound checks recorded in a report.
pub const CHECK_SLACK: f64 = 1e-6;

/// Rounds to 12 significant digits and emits integers as JSON integers.
pub fn json_number(v: f64) -> serde_json::Value {
    if !v.is_finite() {
        return serde_json::Value::Null;
    }
    if v.fract() == 0.0 && v.abs() < 1e15 {
        return serde_json::Value::from(v as i64);
    }
    let rounded: f64 = format!("{v:.11e}").parse().expect("formatted float parses");
    if rounded.fract() == 0.0 && rounded.abs() < 1e15 {
        return serde_json::Value::from(rounded as i64);
    }
    serde_json::Number::from_f64(rounded).map_or(serde_json::Value::Null, serde_json::Value::Number)
}

fn ser_num<S: Serializer>(v: &f64, s: S) -> Result<S::Ok, S::Error> {
    json_number(*v).serialize(s)
}

fn ser_opt_num<S: Serializer>(v: &Option<f64>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(x) => json_number(*x).serialize(s),
        None => s.serialize_none(),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundChecks {
    #[serde(serialize_with = "ser_opt_num")]
    pub value_bound: Option<f64>,
    pub value_within_bound: Option<bool>,
    #[serde(serialize_with = "ser_opt_num")]
    pub cardinality_bound: Option<f64>,
    pub cardinality_within_bound: Option<bool>,
}

impl BoundChecks {
    fn none() -> Self {
        BoundChecks {
            value_bound: None,
            value_within_bound: None,
            cardinality_bound: None,
            cardinality_within_bound: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    pub problem: &'static str,
    pub method: &'static str,
    pub instance_digest: String,
    pub n: usize,
    pub p: Option<usize>,
    #[serde(serialize_with = "ser_opt_num")]
    pub budget: Option<f64>,
    #[serde(serialize_with = "ser_opt_num")]
    pub epsilon: Option<f64>,
    pub solution: Vec<usize>,
    pub cardinality: usize,
    #[serde(serialize_with = "ser_num")]
    pub eccentricity: f64,
    #[serde(serialize_with = "ser_num")]
    pub median: f64,
    #[serde(serialize_with = "ser_num")]
    pub centdian: f64,
    #[serde(serialize_with = "ser_opt_num")]
    pub lp_lower_bound: Option<f64>,
    pub checks: BoundChecks,
    pub subsets_examined: Option<u64>,
    /// Only filled when timing is requested, so default reports are reproducible.
    #[serde(serialize_with = "ser_opt_num")]
    pub wall_time_ms: Option<f64>,
}

fn base(
    problem: &'static str,
    method: &'static str,
    digest: &str,
    n: usize,
    solution: &[usize],
    eval: &CentdianEvaluation,
) -> RunReport {
    RunReport {
        problem,
        method,
        instance_digest: digest.to_string(),
        n,
        p: None,
        budget: None,
        epsilon: None,
        solution: solution.to_vec(),
        cardinality: solution.len(),
        eccentricity: eval.eccentricity,
        median: eval.median,
        centdian: eval.centdian(),
        lp_lower_bound: None,
        checks: BoundChecks::none(),
        subsets_examined: None,
        wall_time_ms: None,
    }
}

impl RunReport {
    pub fn pdp_exact(digest: &str, n: usize, p: usize, r: &ExactResult) -> Self {
        let mut rep = base("pdp", "exact", digest, n, &r.solution, &r.evaluation);
        rep.p = Some(p);
        rep.subsets_examined = Some(r.subsets_examined);
        rep
    }

    pub fn cdp_exact(digest: &str, n: usize, budget: f64, r: &ExactResult) -> Self {
        let mut rep = base("cdp", "exact", digest, n, &r.solution, &r.evaluation);
        rep.budget = Some(budget);
        rep.subsets_examined = Some(r.subsets_examined);
        rep.checks.value_bound = Some(budget);
        rep.checks.value_within_bound = Some(rep.centdian <= budget);
        rep
    }

    /// The value check is against `(1 + eps)` times the LP lower bound,
    /// which certifies the `(1 + eps)` ratio without knowing the optimum.
    pub fn pdp_apx(digest: &str, n: usize, epsilon: f64, r: &ApproxResult) -> Self {
        let mut rep = base("pdp", "apx", digest, n, &r.solution, &r.evaluation);
        rep.p = Some(r.p);
        rep.epsilon = Some(epsilon);
        rep.lp_lower_bound = Some(r.lp_lower_bound);
        let value_bound = (1.0 + epsilon) * r.lp_lower_bound;
        rep.checks = BoundChecks {
            value_bound: Some(value_bound),
            value_within_bound: Some(rep.centdian <= value_bound + CHECK_SLACK),
            cardinality_bound: Some(r.cardinality_bound),
            cardinality_within_bound: Some(rep.cardinality as f64 <= r.cardinality_bound.min(n as f64)),
        };
        rep
    }

    pub fn cdp_apx(digest: &str, n: usize, budget: f64, epsilon: f64, r: &ApproxResult) -> Self {
        let mut rep = base("cdp", "apx", digest, n, &r.solution, &r.evaluation);
        rep.p = Some(r.p);
        rep.budget = Some(budget);
        rep.epsilon = Some(epsilon);
        rep.lp_lower_bound = (r.p < n).then_some(r.lp_lower_bound);
        let value_bound = (1.0 + epsilon) * budget;
        rep.checks = BoundChecks {
            value_bound: Some(value_bound),
            value_within_bound: Some(rep.centdian <= value_bound + CHECK_SLACK),
            cardinality_bound: Some(r.cardinality_bound),
            cardinality_within_bound: Some(rep.cardinality as f64 <= r.cardinality_bound.min(n as f64)),
        };
        rep
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("reports always serialize")
    }

    /// `key: value` lines using the JSON encoding of each value.
    pub fn to_text(&self) -> String {
        let value = serde_json::to_value(self).expect("reports always serialize");
        let mut out = String::new();
        if let serde_json::Value::Object(map) = value {
            // serde_json's map is key-sorted; walk our own key order instead.
            for key in KEY_ORDER {
                let v = &map[*key];
                match v {
                    serde_json::Value::Object(inner) => {
                        for sub in CHECK_KEYS {
                            out.push_str(&format!("{key}.{sub}: {}\n", inner[*sub]));
                        }
                    }
                    serde_json::Value::String(s) => out.push_str(&format!("{key}: {s}\n")),
                    other => out.push_str(&format!("{key}: {other}\n")),
                }
            }
        }
        out
    }
}

const KEY_ORDER: &[&str] = &[
    "problem",
    "method",
    "instance_digest",
    "n",
    "p",
    "budget",
    "epsilon",
    "solution",
    "cardinality",
    "eccentricity",
    "median",
    "centdian",
    "lp_lower_bound",
    "checks",
    "subsets_examined",
    "wall_time_ms",
];

const CHECK_KEYS: &[&str] =
    &["value_bound", "value_within_bound", "cardinality_bound", "cardinality_within_bound"];
