//! PASS/FAIL bookkeeping for the acceptance gate.

use std::process::ExitCode;
use std::time::Duration;

#[derive(Debug, Default)]
pub struct Gate {
    results: Vec<(String, bool)>,
}

impl Gate {
    pub fn new() -> Self {
        Self::default()
    }

    /// Records and prints one criterion.
    pub fn record(&mut self, name: &str, pass: bool, detail: &str) {
        println!("{} {name}: {detail}", if pass { "PASS" } else { "FAIL" });
        self.results.push((name.to_string(), pass));
    }

    /// Informational line that does not count towards the verdict.
    pub fn note(&self, name: &str, detail: &str) {
        println!("INFO {name}: {detail}");
    }

    pub fn failures(&self) -> Vec<&str> {
        self.results.iter().filter(|(_, ok)| !ok).map(|(n, _)| n.as_str()).collect()
    }

    pub fn finish(self) -> ExitCode {
        let failed = self.failures();
        println!("acceptance: {}/{} criteria passed", self.results.len() - failed.len(), self.results.len());
        if failed.is_empty() {
            ExitCode::SUCCESS
        } else {
            println!("failed: {}", failed.join("; "));
            ExitCode::FAILURE
        }
    }
}

/// `12.3 s` style formatting for runtimes.
pub fn secs(d: Duration) -> String {
    format!("{:.2} s", d.as_secs_f64())
}
