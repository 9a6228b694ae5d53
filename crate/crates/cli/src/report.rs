use std::fmt;

/// Plain-text command output: the command line, the body, and a trailing
/// `key: value` summary block. Nothing time-dependent is printed.
#[derive(Clone, Debug, Default)]
pub struct Report {
    pub command: String,
    pub body: Vec<String>,
    pub summary: Vec<(String, String)>,
    pub passed: bool,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Report {
        Report { command: command.into(), passed: true, ..Report::default() }
    }

    pub fn line(&mut self, s: impl Into<String>) {
        self.body.push(s.into());
    }

    /// Adds a multi-line block, indented.
    pub fn block(&mut self, indent: &str, s: &str) {
        for l in s.lines() {
            self.body.push(format!("{indent}{l}"));
        }
    }

    pub fn summarize(&mut self, key: impl Into<String>, value: impl ToString) {
        self.summary.push((key.into(), value.to_string()));
    }

    /// Records a named pass/fail outcome in the body and the summary.
    pub fn outcome(&mut self, key: &str, passed: bool) {
        self.passed &= passed;
        self.summarize(key, if passed { "pass" } else { "fail" });
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.summary.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed {
            0
        } else {
            1
        }
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "$ mcg {}", self.command)?;
        for l in &self.body {
            writeln!(f, "{l}")?;
        }
        writeln!(f, "--- summary")?;
        for (k, v) in &self.summary {
            writeln!(f, "{k}: {v}")?;
        }
        writeln!(f, "status: {}", if self.passed { "pass" } else { "fail" })
    }
}
