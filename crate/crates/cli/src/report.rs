//! Reports: ordered sections of key/value records.

use std::fmt::Write;

/// One named section.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Section {
    /// Section name, e.g. `validate`.
    pub name: String,
    /// Records in insertion order.
    pub records: Vec<(String, String)>,
    /// Verbatim lines printed after the records (tables).
    pub raw: Vec<String>,
}

impl Section {
    /// Empty section.
    pub fn new(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            records: Vec::new(),
            raw: Vec::new(),
        }
    }

    /// Appends a record.
    pub fn put(&mut self, key: impl Into<String>, value: impl ToString) -> &mut Self {
        self.records.push((key.into(), value.to_string()));
        self
    }

    /// Looks up the first record with `key`.
    pub fn get(&self, key: &str) -> Option<&str> {
        self.records
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }
}

/// A whole report.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Report {
    /// Sections in output order.
    pub sections: Vec<Section>,
}

impl Report {
    /// Adds a section and returns it for filling.
    pub fn section(&mut self, name: impl Into<String>) -> &mut Section {
        self.sections.push(Section::new(name));
        self.sections.last_mut().expect("just pushed")
    }

    /// Finds a section by name.
    pub fn get(&self, name: &str) -> Option<&Section> {
        self.sections.iter().find(|s| s.name == name)
    }

    /// Human-readable text: `[name]` headers and `key: value` lines.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (i, s) in self.sections.iter().enumerate() {
            if i > 0 {
                out.push('\n');
            }
            let _ = writeln!(out, "[{}]", s.name);
            for (k, v) in &s.records {
                let _ = writeln!(out, "{k}: {v}");
            }
            for line in &s.raw {
                let _ = writeln!(out, "{line}");
            }
        }
        out
    }

    /// One `section.key=value` record per line; raw lines become `section.line.N`.
    pub fn to_machine(&self) -> String {
        let mut out = String::new();
        for s in &self.sections {
            for (k, v) in &s.records {
                let _ = writeln!(out, "{}.{}={}", s.name, k.replace(' ', "_"), v);
            }
            for (i, line) in s.raw.iter().enumerate() {
                let _ = writeln!(out, "{}.line.{}={}", s.name, i + 1, line);
            }
        }
        out
    }
}

/// `PASS` or `FAIL`.
pub fn verdict(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

/// `yes` or `no`.
pub fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renders_both_forms() {
        let mut r = Report::default();
        r.section("a")
            .put("status", "PASS")
            .put("sum of weights", 1);
        r.section("t").raw.push("k,x".into());
        assert_eq!(
            r.to_text(),
            "[a]\nstatus: PASS\nsum of weights: 1\n\n[t]\nk,x\n"
        );
        assert_eq!(
            r.to_machine(),
            "a.status=PASS\na.sum_of_weights=1\nt.line.1=k,x\n"
        );
    }
}
