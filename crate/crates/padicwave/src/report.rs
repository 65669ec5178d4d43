use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub max_dev: f64,
    pub details: Value,
}

impl Check {
    /// Passes when `max_dev ≤ tol`; a NaN deviation fails.
    pub fn within(name: &str, max_dev: f64, tol: f64, details: Value) -> Self {
        Self::with_status(name, max_dev <= tol, max_dev, details)
    }

    pub fn with_status(name: &str, pass: bool, max_dev: f64, details: Value) -> Self {
        Check {
            name: name.to_string(),
            status: if pass { Status::Pass } else { Status::Fail },
            max_dev,
            details,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }

    /// One row per check: `name,status,max_dev`.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["name", "status", "max_dev"])?;
        for c in &self.checks {
            let status = if c.passed() { "pass" } else { "fail" };
            w.write_record([c.name.as_str(), status, &format!("{:e}", c.max_dev)])?;
        }
        Ok(String::from_utf8(w.into_inner().map_err(|e| csv::Error::from(e.into_error()))?).expect("csv output is utf-8"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn status_and_formats() {
        let r = Report {
            checks: vec![
                Check::within("a", 1e-13, 1e-12, json!({})),
                Check::within("b", f64::NAN, 1e-12, json!({"k": 1})),
            ],
        };
        assert!(r.checks[0].passed());
        assert!(!r.checks[1].passed());
        assert!(!r.all_passed());
        let text = r.to_json().unwrap();
        assert!(text.contains("\"status\": \"fail\""));
        assert_eq!(r.to_csv().unwrap().lines().count(), 3);
    }
}
