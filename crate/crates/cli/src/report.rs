use std::fmt::Write as _;

use clap::ValueEnum;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Kv,
}

/// Everything a subcommand prints. Rendering is deterministic: no timings, no maps
/// with unstable order.
#[derive(Debug, Default)]
pub struct Report {
    pub command: String,
    pub input: Option<String>,
    pub seed: u64,
    pub field: String,
    pub bound: Option<usize>,
    pub window: Option<usize>,
    /// File-format output (a presentation, module or complex).
    pub body: Option<String>,
    pub lines: Vec<(String, String)>,
    pub verdict: Option<String>,
    /// False when a checked property fails; the process then exits with status 1.
    pub ok: bool,
}

impl Report {
    pub fn new(command: &str, seed: u64, field: String) -> Report {
        Report { command: command.into(), seed, field, ok: true, ..Default::default() }
    }

    pub fn line(&mut self, key: impl Into<String>, value: impl ToString) {
        self.lines.push((key.into(), value.to_string()));
    }

    /// Records a boolean property and folds it into the exit status.
    pub fn check(&mut self, key: impl Into<String>, holds: bool) {
        self.ok &= holds;
        self.line(key, holds);
    }

    pub fn render(&self, format: Format) -> String {
        let mut s = String::new();
        match format {
            Format::Human => {
                let input = self.input.as_deref().map(|i| format!(" {i}")).unwrap_or_default();
                let _ = writeln!(s, "# kq {}{input}", self.command);
                let _ = writeln!(s, "# {}", self.settings().iter().map(|(k, v)| format!("{k} = {v}")).collect::<Vec<_>>().join(", "));
                if let Some(b) = &self.body {
                    s.push_str(b);
                    if !b.ends_with('\n') {
                        s.push('\n');
                    }
                }
                // Keep file output loadable: details become comments after a body.
                let c = if self.body.is_some() { "# " } else { "" };
                for (k, v) in &self.lines {
                    let _ = writeln!(s, "{c}{k}: {v}");
                }
                if let Some(v) = &self.verdict {
                    let _ = writeln!(s, "{c}{v}");
                }
            }
            Format::Kv => {
                let _ = writeln!(s, "command = {}", self.command);
                if let Some(i) = &self.input {
                    let _ = writeln!(s, "input = {i}");
                }
                for (k, v) in self.settings() {
                    let _ = writeln!(s, "{k} = {v}");
                }
                for (k, v) in &self.lines {
                    let _ = writeln!(s, "{k} = {v}");
                }
                if let Some(b) = &self.body {
                    for (i, l) in b.lines().enumerate() {
                        let _ = writeln!(s, "output.{:03} = {l}", i + 1);
                    }
                }
                if let Some(v) = &self.verdict {
                    let _ = writeln!(s, "verdict = {v}");
                }
                let _ = writeln!(s, "status = {}", if self.ok { "ok" } else { "violation" });
            }
        }
        s
    }

    fn settings(&self) -> Vec<(&'static str, String)> {
        let mut out = vec![("seed", self.seed.to_string()), ("field", self.field.clone())];
        if let Some(b) = self.bound {
            out.push(("bound", b.to_string()));
        }
        if let Some(w) = self.window {
            out.push(("window", w.to_string()));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kv_report_is_flat_and_records_the_seed() {
        let mut r = Report::new("info", 9, "Q".into());
        r.line("vertices", 2);
        r.check("holds", false);
        r.body = Some("vertex 1\n".into());
        let out = r.render(Format::Kv);
        assert_eq!(out, "command = info\nseed = 9\nfield = Q\nvertices = 2\nholds = false\noutput.001 = vertex 1\nstatus = violation\n");
    }

    #[test]
    fn human_report_header_is_a_comment() {
        let mut r = Report::new("dual", 0, "Q".into());
        r.input = Some("x.quiver".into());
        r.bound = Some(4);
        r.body = Some("vertex 1".into());
        assert_eq!(r.render(Format::Human), "# kq dual x.quiver\n# seed = 0, field = Q, bound = 4\nvertex 1\n");
    }
}
