//! Deterministic plain-text reports with a human and a key=value rendering.

use std::fmt::Display;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Section {
    pub name: String,
    pub verdict: Option<bool>,
    pub evidence: Vec<(String, String)>,
}

impl Section {
    pub fn new(name: impl Into<String>) -> Self {
        Section { name: name.into(), verdict: None, evidence: Vec::new() }
    }

    pub fn verdict(mut self, v: bool) -> Self {
        self.verdict = Some(v);
        self
    }

    pub fn set_verdict(&mut self, v: bool) {
        self.verdict = Some(v);
    }

    pub fn push(&mut self, key: impl Into<String>, value: impl Display) {
        self.evidence.push((key.into(), value.to_string()));
    }

    pub fn with(mut self, key: impl Into<String>, value: impl Display) -> Self {
        self.push(key, value);
        self
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.evidence.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub command: String,
    pub meta: Vec<(String, String)>,
    pub sections: Vec<Section>,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Report { command: command.into(), meta: Vec::new(), sections: Vec::new() }
    }

    pub fn meta(&mut self, key: impl Into<String>, value: impl Display) {
        self.meta.push((key.into(), value.to_string()));
    }

    pub fn push(&mut self, section: Section) {
        self.sections.push(section);
    }

    pub fn section(&self, name: &str) -> Option<&Section> {
        self.sections.iter().find(|s| s.name == name)
    }

    /// Conjunction of all section verdicts; `None` when no section carries one.
    pub fn verdict(&self) -> Option<bool> {
        self.sections.iter().filter_map(|s| s.verdict).reduce(|a, b| a && b)
    }

    pub fn render_human(&self) -> String {
        let mut out = format!("== {} ==\n", self.command);
        for (k, v) in &self.meta {
            out.push_str(&format!("{k}: {v}\n"));
        }
        for s in &self.sections {
            out.push_str(&format!("\n[{}]\n", s.name));
            if let Some(v) = s.verdict {
                out.push_str(&format!("verdict: {v}\n"));
            }
            for (k, v) in &s.evidence {
                out.push_str(&format!("evidence: {k}: {v}\n"));
            }
        }
        out
    }

    pub fn render_machine(&self) -> String {
        let mut out = format!("command={}\n", self.command);
        for (k, v) in &self.meta {
            out.push_str(&format!("meta.{}={v}\n", k.replace(' ', "_")));
        }
        for (i, s) in self.sections.iter().enumerate() {
            out.push_str(&format!("section.{i}={}\n", s.name));
            if let Some(v) = s.verdict {
                out.push_str(&format!("section.{i}.verdict={v}\n"));
            }
            for (k, v) in &s.evidence {
                out.push_str(&format!("section.{i}.{}={v}\n", k.replace(' ', "_")));
            }
        }
        if let Some(v) = self.verdict() {
            out.push_str(&format!("verdict={v}\n"));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renderings() {
        let mut r = Report::new("demo");
        r.meta("field", "Q");
        r.push(Section::new("a").verdict(true).with("betti", "{0:1}"));
        r.push(Section::new("b").verdict(false));
        assert_eq!(r.verdict(), Some(false));
        assert!(r.render_human().contains("verdict: true\nevidence: betti: {0:1}\n"));
        assert!(r.render_machine().ends_with("section.1.verdict=false\nverdict=false\n"));
    }
}
