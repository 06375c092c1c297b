use std::fmt::Write as _;

use serde::Serialize;
use serde_json::{Map, Value};

/// One executed check. `passed` is decided when the check is built.
#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub measured: f64,
    pub bound: f64,
    pub tolerance: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
}

impl Check {
    /// Passes when `measured ≤ bound + tolerance`.
    pub fn at_most(name: impl Into<String>, measured: f64, bound: f64, tolerance: f64) -> Self {
        Self {
            name: name.into(),
            passed: measured <= bound + tolerance,
            measured,
            bound,
            tolerance,
            witness: None,
        }
    }

    /// Passes when `measured ≥ bound - tolerance`.
    pub fn at_least(name: impl Into<String>, measured: f64, bound: f64, tolerance: f64) -> Self {
        Self {
            name: name.into(),
            passed: measured >= bound - tolerance,
            measured,
            bound,
            tolerance,
            witness: None,
        }
    }

    /// Passes when `|measured - expected| ≤ tolerance · |expected|`.
    pub fn relative(name: impl Into<String>, measured: f64, expected: f64, tolerance: f64) -> Self {
        Self {
            name: name.into(),
            passed: (measured - expected).abs() <= tolerance * expected.abs(),
            measured,
            bound: expected,
            tolerance,
            witness: None,
        }
    }

    pub fn with_witness(mut self, witness: Option<Value>) -> Self {
        self.witness = witness;
        self
    }

    pub fn line(&self) -> String {
        let mut s = format!(
            "{} {} measured={:e} bound={:e} tol={:e}",
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.measured,
            self.bound,
            self.tolerance
        );
        if let Some(w) = &self.witness {
            let _ = write!(s, " witness={w}");
        }
        s
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub command: String,
    pub seed: u64,
    pub cases: u64,
    pub checks: Vec<Check>,
    pub summary: Map<String, Value>,
    pub duration_secs: f64,
}

impl RunReport {
    pub fn new(command: &str, seed: u64, cases: u64) -> Self {
        Self {
            command: command.to_string(),
            seed,
            cases,
            checks: Vec::new(),
            summary: Map::new(),
            duration_secs: 0.0,
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{} seed={} cases={}\n", self.command, self.seed, self.cases);
        for c in &self.checks {
            s.push_str(&c.line());
            s.push('\n');
        }
        let failed = self.checks.iter().filter(|c| !c.passed).count();
        let _ = writeln!(
            s,
            "{} checks, {} failed, {:.3} s",
            self.checks.len(),
            failed,
            self.duration_secs
        );
        s
    }
}

/// JSON number, or the strings "inf" / "-inf" / "nan" which JSON lacks.
pub fn num(x: f64) -> Value {
    serde_json::Number::from_f64(x).map_or_else(|| Value::String(format!("{x}")), Value::Number)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn check_directions() {
        assert!(Check::at_most("a", 1.0, 1.0, 0.0).passed);
        assert!(!Check::at_most("a", 1.1, 1.0, 0.05).passed);
        assert!(Check::at_least("b", 0.96, 1.0, 0.05).passed);
        assert!(Check::relative("c", 0.0135, 0.0134, 0.01).passed);
        assert!(!Check::relative("c", 0.0136, 0.0134, 0.01).passed);
    }

    #[test]
    fn infinite_numbers_become_tokens() {
        assert_eq!(num(f64::NEG_INFINITY), Value::String("-inf".into()));
        assert_eq!(num(2.5), serde_json::json!(2.5));
    }
}
