//! Ordered key/value reports and the process exit status they carry.

use std::fmt::Display;

use lattice_actions::ErrorKind;

/// Exit statuses: exhaustive and mutually exclusive.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok = 0,
    Verification = 1,
    Input = 2,
    Unsupported = 3,
}

impl From<ErrorKind> for Status {
    fn from(k: ErrorKind) -> Self {
        match k {
            ErrorKind::Input => Status::Input,
            ErrorKind::Unsupported => Status::Unsupported,
            ErrorKind::Verification => Status::Verification,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Human,
    Lines,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub title: String,
    pub entries: Vec<(String, String)>,
    /// Free text shown in human mode only.
    pub notes: Vec<String>,
    pub status: Status,
}

impl Report {
    pub fn new(title: impl Into<String>) -> Self {
        Report { title: title.into(), entries: Vec::new(), notes: Vec::new(), status: Status::Ok }
    }

    pub fn push(&mut self, key: impl Into<String>, value: impl Display) {
        self.entries.push((key.into(), value.to_string()));
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    /// A report holding only the error.
    pub fn failure(title: impl Into<String>, err: &lattice_actions::Error) -> Self {
        let mut r = Report::new(title);
        r.push("error", err);
        r.status = err.kind().into();
        r
    }

    pub fn render(&self, format: Format) -> String {
        let mut out = String::new();
        match format {
            Format::Lines => {
                for (k, v) in &self.entries {
                    out.push_str(&format!("{k}={v}\n"));
                }
            }
            Format::Human => {
                out.push_str(&self.title);
                out.push('\n');
                let width = self.entries.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
                for (k, v) in &self.entries {
                    out.push_str(&format!("  {k:<width$}  {v}\n"));
                }
                for n in &self.notes {
                    out.push_str(&format!("note: {n}\n"));
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lines_format() {
        let mut r = Report::new("t");
        r.push("a.b", 3);
        r.push("c", "x=y");
        r.note("ignored");
        assert_eq!(r.render(Format::Lines), "a.b=3\nc=x=y\n");
        assert!(r.render(Format::Human).contains("note: ignored"));
        assert_eq!(r.get("a.b"), Some("3"));
    }
}
