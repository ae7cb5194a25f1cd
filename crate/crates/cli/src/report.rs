use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;

/// Outcome of one subcommand, printed as text or JSON.
#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub command: String,
    pub pass: bool,
    pub residuals: BTreeMap<String, f64>,
    pub artifacts: Vec<String>,
    pub seed: Option<u64>,
    /// Command-specific values (fitted parameters, dimensions, verdicts).
    pub details: BTreeMap<String, Value>,
}

impl RunReport {
    pub fn new(command: &str) -> Self {
        RunReport {
            command: command.to_string(),
            pass: true,
            residuals: BTreeMap::new(),
            artifacts: Vec::new(),
            seed: None,
            details: BTreeMap::new(),
        }
    }

    /// Records a residual and folds its verdict into `pass`.
    pub fn check(&mut self, name: &str, residual: f64, ok: bool) {
        self.residuals.insert(name.to_string(), residual);
        self.require(ok);
    }

    pub fn require(&mut self, ok: bool) {
        self.pass &= ok;
    }

    pub fn detail(&mut self, name: &str, value: impl Serialize) {
        let v = serde_json::to_value(value).unwrap_or(Value::Null);
        self.details.insert(name.to_string(), v);
    }

    pub fn render_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{}: {}", self.command, if self.pass { "PASS" } else { "FAIL" });
        for (k, v) in &self.residuals {
            let _ = writeln!(s, "  {k:<28} {v:.3e}");
        }
        for (k, v) in &self.details {
            let _ = writeln!(s, "  {k:<28} {v}");
        }
        for a in &self.artifacts {
            let _ = writeln!(s, "  wrote {a}");
        }
        if let Some(seed) = self.seed {
            let _ = writeln!(s, "  seed {seed}");
        }
        s
    }

    pub fn render_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn failing_check_flips_pass() {
        let mut r = RunReport::new("x");
        r.check("a", 1e-12, true);
        assert!(r.pass);
        r.check("b", 0.5, false);
        assert!(!r.pass);
        assert!(r.render_text().starts_with("x: FAIL"));
    }

    #[test]
    fn json_has_required_fields() {
        let mut r = RunReport::new("verify");
        r.seed = Some(3);
        r.check("gybe", 0.0, true);
        let v: Value = serde_json::from_str(&r.render_json()).unwrap();
        for key in ["command", "pass", "residuals", "artifacts", "seed"] {
            assert!(v.get(key).is_some(), "{key}");
        }
    }
}
