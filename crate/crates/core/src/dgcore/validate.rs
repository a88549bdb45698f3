use std::fmt;

use serde::Serialize;

/// One violated axiom with the basis indices that witness it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub axiom: String,
    pub witness: String,
}

impl Violation {
    pub fn new(axiom: &str, witness: String) -> Violation {
        Violation { axiom: axiom.to_string(), witness }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn new(violations: Vec<Violation>) -> ValidationReport {
        ValidationReport { violations }
    }

    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn has(&self, axiom: &str) -> bool {
        self.violations.iter().any(|v| v.axiom == axiom)
    }

    /// First few violations on one line.
    pub fn summary(&self) -> String {
        let mut s: Vec<String> = self.violations.iter().take(5).map(|v| format!("{} at {}", v.axiom, v.witness)).collect();
        if self.violations.len() > 5 {
            s.push(format!("... {} more", self.violations.len() - 5));
        }
        s.join("; ")
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            write!(f, "ok")
        } else {
            write!(f, "{}", self.summary())
        }
    }
}
