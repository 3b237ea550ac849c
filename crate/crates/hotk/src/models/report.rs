use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Pass,
    Fail,
    Skipped,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Skipped => "SKIPPED",
        })
    }
}

/// One axiom (or axiom family) checked against one structure.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AxiomCheck {
    pub axiom: String,
    pub verdict: Verdict,
    /// Instances evaluated.
    pub instances: usize,
    /// Instances skipped because they need more types or a larger budget.
    pub skipped: usize,
    /// The failing instance, e.g. `alpha=1, beta=0`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub instance: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl AxiomCheck {
    pub fn new(axiom: impl Into<String>) -> Self {
        AxiomCheck {
            axiom: axiom.into(),
            verdict: Verdict::Skipped,
            instances: 0,
            skipped: 0,
            instance: None,
            witness: None,
            note: None,
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    /// Record one evaluated instance; the first failure is kept.
    pub fn record(&mut self, ok: bool, instance: impl FnOnce() -> String, witness: impl FnOnce() -> Option<String>) {
        self.instances += 1;
        if ok {
            if self.verdict == Verdict::Skipped {
                self.verdict = Verdict::Pass;
            }
        } else if self.verdict != Verdict::Fail {
            self.verdict = Verdict::Fail;
            self.instance = Some(instance());
            self.witness = witness();
        }
    }

    pub fn skip(&mut self) {
        self.skipped += 1;
    }

    /// Set the verdict outright, for checks that are not instance-based.
    pub fn outright(mut self, ok: bool, witness: Option<String>) -> Self {
        self.instances = 1;
        self.verdict = if ok { Verdict::Pass } else { Verdict::Fail };
        if !ok {
            self.witness = witness;
        }
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub subject: String,
    pub theory: String,
    pub checks: Vec<AxiomCheck>,
}

impl SuiteReport {
    pub fn new(subject: impl Into<String>, theory: impl Into<String>) -> Self {
        SuiteReport { subject: subject.into(), theory: theory.into(), checks: Vec::new() }
    }

    pub fn get(&self, axiom: &str) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| c.axiom == axiom)
    }

    pub fn verdict(&self, axiom: &str) -> Option<Verdict> {
        self.get(axiom).map(|c| c.verdict)
    }

    /// No check failed.
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.verdict != Verdict::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &AxiomCheck> {
        self.checks.iter().filter(|c| c.verdict == Verdict::Fail)
    }

    pub fn render_text(&self) -> String {
        let mut out = format!("{} under {}\n", self.subject, self.theory);
        for c in &self.checks {
            out.push_str(&format!("  {:<22} {:<8} ({} checked", c.axiom, c.verdict, c.instances));
            if c.skipped > 0 {
                out.push_str(&format!(", {} skipped", c.skipped));
            }
            out.push(')');
            if let Some(i) = c.instance.as_ref().filter(|s| !s.is_empty()) {
                out.push_str(&format!(" at {i}"));
            }
            if let Some(w) = c.witness.as_ref().filter(|s| !s.is_empty()) {
                out.push_str(&format!(" witness: {w}"));
            }
            if let Some(n) = &c.note {
                out.push_str(&format!(" [{n}]"));
            }
            out.push('\n');
        }
        out
    }
}
