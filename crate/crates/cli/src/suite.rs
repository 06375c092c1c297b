//! Aggregation of per-case measurements into checks.

use serde_json::{json, Value};

use crate::report::{num, Check};

/// Collects checks. A check named in `corrupt` has its inequality negated,
/// which lets tests confirm that failures surface with a witness.
pub struct Suite<'a> {
    corrupt: Option<&'a str>,
    pub checks: Vec<Check>,
}

impl<'a> Suite<'a> {
    pub fn new(corrupt: Option<&'a str>) -> Self {
        Self { corrupt, checks: Vec::new() }
    }

    /// Requires every value to be at most `bound + tol` (strictly below
    /// `bound` when `strict`). `values` pairs a case index with its value;
    /// `witness` describes the worst case when the check fails.
    pub fn worst(
        &mut self,
        name: &str,
        values: impl IntoIterator<Item = (usize, f64)>,
        bound: f64,
        tol: f64,
        strict: bool,
        witness: impl Fn(usize) -> Value,
    ) {
        let flip = self.corrupt == Some(name);
        // negated: every value must exceed `bound + tol`
        let (bound, tol, strict) = if flip { (-bound - tol, 0.0, !strict) } else { (bound, tol, strict) };
        let mut worst: Option<(usize, f64)> = None;
        let mut count = 0usize;
        for (i, v) in values {
            count += 1;
            let v = if flip { -v } else { v };
            let replace = match worst {
                None => true,
                Some((_, w)) => v.is_nan() && !w.is_nan() || v > w,
            };
            if replace {
                worst = Some((i, v));
            }
        }
        let (idx, measured) = match worst {
            Some(w) => w,
            // nothing to check counts as a pass at the bound
            None => (usize::MAX, f64::NEG_INFINITY),
        };
        let passed = if strict { measured < bound } else { measured <= bound + tol };
        let mut check = Check {
            name: name.to_string(),
            passed,
            measured,
            bound,
            tolerance: tol,
            witness: None,
        };
        if !passed && idx != usize::MAX {
            check.witness = Some(json!({
                "case": idx,
                "value": num(measured),
                "cases_checked": count,
                "detail": witness(idx),
            }));
        }
        self.checks.push(check);
    }
}
