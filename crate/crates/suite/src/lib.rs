//! Acceptance criteria for the horocauchy crates.
//!
//! The criteria themselves live in `tests/acceptance.rs`, a test target
//! without the libtest harness so that every criterion prints exactly one
//! summary line. This library holds the bookkeeping shared by that target.

use std::time::{Duration, Instant};

use horocauchy::verify::{BatteryReport, Check};

/// The outcome of one acceptance criterion.
#[derive(Debug, Clone)]
pub struct Criterion {
    pub number: u32,
    pub title: &'static str,
    pub checks: Vec<Check>,
    pub elapsed: Duration,
    pub budget: Option<Duration>,
}

impl Criterion {
    pub fn new(number: u32, title: &'static str, budget: Option<Duration>) -> Self {
        Criterion {
            number,
            title,
            checks: Vec::new(),
            elapsed: Duration::ZERO,
            budget,
        }
    }

    pub fn absorb(&mut self, report: &BatteryReport) {
        self.checks.extend(report.checks.iter().cloned());
    }

    /// Adds the runtime check once the work is done.
    pub fn finish(&mut self, started: Instant) {
        self.elapsed = started.elapsed();
        if let Some(budget) = self.budget {
            self.checks.push(Check::below(
                "runtime in seconds",
                self.elapsed.as_secs_f64(),
                budget.as_secs_f64(),
            ));
        }
    }

    pub fn passed(&self) -> bool {
        !self.checks.is_empty() && self.checks.iter().all(|c| c.passed)
    }

    /// One summary line, followed by indented lines for failed checks.
    pub fn render(&self) -> String {
        let mut out = format!(
            "criterion {} [PRIMARY] {}: {} ({} checks, {:.2} s)",
            self.number,
            self.title,
            if self.passed() { "PASS" } else { "FAIL" },
            self.checks.len(),
            self.elapsed.as_secs_f64()
        );
        for c in self.checks.iter().filter(|c| !c.passed) {
            out.push_str(&format!(
                "\n    failed: {}: {:e} {} {:e}",
                c.label, c.value, c.relation, c.threshold
            ));
        }
        out
    }
}
