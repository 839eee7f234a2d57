//! Run reports with a JSON form and an aligned text form.

use serde::{Deserialize, Serialize};

/// One named pass/fail check. Soft checks are reported but never fail a run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub hard: bool,
    pub detail: String,
}

impl Check {
    pub fn hard(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            passed,
            hard: true,
            detail: detail.into(),
        }
    }

    pub fn soft(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Check {
            hard: false,
            ..Check::hard(name, passed, detail)
        }
    }
}

/// Everything a command reports. `elapsed_ms` is kept apart from the payload
/// and ignored by equality, so reruns compare equal.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct RunReport {
    pub command: String,
    pub parameters: Vec<(String, String)>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
    pub checks: Vec<Check>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub details: Option<serde_json::Value>,
    pub elapsed_ms: u64,
}

impl PartialEq for RunReport {
    fn eq(&self, other: &Self) -> bool {
        self.command == other.command
            && self.parameters == other.parameters
            && self.columns == other.columns
            && self.rows == other.rows
            && self.checks == other.checks
            && self.details == other.details
    }
}

impl RunReport {
    pub fn new(command: &str) -> Self {
        RunReport {
            command: command.into(),
            ..Default::default()
        }
    }

    pub fn param(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.parameters.push((key.into(), value.to_string()));
        self
    }

    pub fn columns(&mut self, names: &[&str]) -> &mut Self {
        self.columns = names.iter().map(|s| s.to_string()).collect();
        self
    }

    pub fn row(&mut self, cells: Vec<String>) -> &mut Self {
        self.rows.push(cells);
        self
    }

    pub fn check(&mut self, check: Check) -> &mut Self {
        self.checks.push(check);
        self
    }

    pub fn hard_failures(&self) -> usize {
        self.checks.iter().filter(|c| c.hard && !c.passed).count()
    }

    /// First cell of the row whose first cell is `key`.
    pub fn lookup(&self, key: &str) -> Option<&str> {
        self.rows
            .iter()
            .find(|r| r.first().map(String::as_str) == Some(key))
            .and_then(|r| r.get(1))
            .map(String::as_str)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialize")
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("adlv {}\n", self.command);
        for (k, v) in &self.parameters {
            out.push_str(&format!("  {k} = {v}\n"));
        }
        if !self.columns.is_empty() {
            out.push('\n');
            out.push_str(&table(&self.columns, &self.rows));
        }
        if !self.checks.is_empty() {
            out.push('\n');
            let cols = [
                "check".to_string(),
                "result".to_string(),
                "detail".to_string(),
            ];
            let rows: Vec<Vec<String>> = self
                .checks
                .iter()
                .map(|c| {
                    let verdict = match (c.passed, c.hard) {
                        (true, _) => "pass",
                        (false, true) => "FAIL",
                        (false, false) => "note",
                    };
                    vec![c.name.clone(), verdict.into(), c.detail.clone()]
                })
                .collect();
            out.push_str(&table(&cols, &rows));
        }
        out.push_str(&format!("\n({} ms)\n", self.elapsed_ms));
        out
    }
}

fn table(columns: &[String], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = columns.iter().map(|c| c.chars().count()).collect();
    for row in rows {
        for (i, cell) in row.iter().enumerate() {
            if i < widths.len() {
                widths[i] = widths[i].max(cell.chars().count());
            } else {
                widths.push(cell.chars().count());
            }
        }
    }
    let line = |cells: &[String]| {
        let padded: Vec<String> = cells
            .iter()
            .enumerate()
            .map(|(i, c)| format!("{c:<w$}", w = widths[i]))
            .collect();
        format!("{}\n", padded.join("  ").trim_end())
    };
    let mut out = line(columns);
    let rule: Vec<String> = widths.iter().map(|&w| "-".repeat(w)).collect();
    out.push_str(&line(&rule));
    for row in rows {
        out.push_str(&line(row));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> RunReport {
        let mut r = RunReport::new("dim");
        r.param("h", 3).columns(&["method", "dimension"]);
        r.row(vec!["formula".into(), "2".into()]);
        r.row(vec!["enumerate".into(), "2".into()]);
        r.check(Check::hard("agreement", true, "2 = 2"));
        r.elapsed_ms = 17;
        r
    }

    #[test]
    fn json_round_trip_ignores_timing() {
        let r = sample();
        let back: RunReport = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(back, r);
        let mut later = r.clone();
        later.elapsed_ms = 99;
        assert_eq!(later, r);
    }

    #[test]
    fn text_matches_json() {
        let r = sample();
        let text = r.to_text();
        for row in &r.rows {
            let pattern = row.join("  ");
            assert!(
                text.lines()
                    .any(|l| l.split_whitespace().collect::<Vec<_>>()
                        == row.iter().map(String::as_str).collect::<Vec<_>>()),
                "{pattern}"
            );
        }
        assert!(text.contains("agreement  pass"));
        assert_eq!(r.lookup("enumerate"), Some("2"));
    }

    #[test]
    fn columns_align() {
        let text = table(
            &["a".into(), "b".into()],
            &[
                vec!["long cell".into(), "x".into()],
                vec!["s".into(), "y".into()],
            ],
        );
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[2].find('x'), lines[3].find('y'));
    }
}
