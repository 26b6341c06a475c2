use std::fmt;

/// Outcome of one exhaustively checked axiom.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomCheck {
    pub axiom: String,
    /// Human-readable counterexample; `None` when the axiom holds.
    pub witness: Option<String>,
}

impl AxiomCheck {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }
}

/// Verdicts for a list of axioms, each carrying a witness when it fails.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AxiomReport {
    pub checks: Vec<AxiomCheck>,
}

impl AxiomReport {
    pub fn new() -> Self {
        Self::default()
    }

    /// Records `axiom`, keeping the first counterexample produced by `search`.
    pub fn check(&mut self, axiom: &str, search: impl FnOnce() -> Option<String>) {
        self.checks.push(AxiomCheck { axiom: axiom.to_string(), witness: search() });
    }

    pub fn extend(&mut self, other: AxiomReport) {
        self.checks.extend(other.checks);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(AxiomCheck::passed)
    }

    pub fn verdict(&self, axiom: &str) -> Option<bool> {
        self.checks.iter().find(|c| c.axiom == axiom).map(AxiomCheck::passed)
    }

    pub fn witness(&self, axiom: &str) -> Option<&str> {
        self.checks.iter().find(|c| c.axiom == axiom).and_then(|c| c.witness.as_deref())
    }

    pub fn failures(&self) -> impl Iterator<Item = &AxiomCheck> {
        self.checks.iter().filter(|c| !c.passed())
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            match &c.witness {
                None => writeln!(f, "PASS {}", c.axiom)?,
                Some(w) => writeln!(f, "FAIL {}: {}", c.axiom, w)?,
            }
        }
        Ok(())
    }
}
