//! Validation reports with one record per witness.

use std::fmt;

use crate::coxeter::{Gen, Word};

/// Resource limits shared by the validators.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Maximum number of galleries enumerated for one element.
    pub galleries: usize,
    /// Explicit subgroup enumerations stop above `2^group_bits` elements.
    pub group_bits: u32,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { galleries: crate::galleries::DEFAULT_GALLERY_CAP, group_bits: 24 }
    }
}

/// A single counterexample. Indices are stored 0-based and printed 1-based.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Violation {
    pub axiom: String,
    pub w: Option<Word>,
    pub s: Option<Gen>,
    pub gallery: Option<Word>,
    pub i: Option<usize>,
    pub j: Option<usize>,
    pub expected: String,
    pub found: String,
}

impl Violation {
    pub fn new(axiom: &str) -> Self {
        Violation {
            axiom: axiom.to_string(),
            w: None,
            s: None,
            gallery: None,
            i: None,
            j: None,
            expected: String::new(),
            found: String::new(),
        }
    }

    pub fn w(mut self, w: &Word) -> Self {
        self.w = Some(w.clone());
        self
    }

    pub fn s(mut self, s: Gen) -> Self {
        self.s = Some(s);
        self
    }

    pub fn gallery(mut self, g: &Word) -> Self {
        self.gallery = Some(g.clone());
        self
    }

    pub fn pair(mut self, i: usize, j: usize) -> Self {
        self.i = Some(i);
        self.j = Some(j);
        self
    }

    pub fn expected(mut self, e: impl Into<String>) -> Self {
        self.expected = e.into();
        self
    }

    pub fn found(mut self, f: impl Into<String>) -> Self {
        self.found = f.into();
        self
    }
}

fn opt<T: fmt::Display>(x: &Option<T>) -> String {
    x.as_ref().map_or("-".to_string(), |v| v.to_string())
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "VIOLATION axiom={} w={} s={} gallery={} i={} j={} expected={} found={}",
            self.axiom,
            opt(&self.w),
            opt(&self.s.map(|s| s + 1)),
            opt(&self.gallery),
            opt(&self.i.map(|i| i + 1)),
            opt(&self.j.map(|j| j + 1)),
            if self.expected.is_empty() { "-" } else { &self.expected },
            if self.found.is_empty() { "-" } else { &self.found },
        )
    }
}

/// Outcome of one validator.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub title: String,
    pub checks: usize,
    pub violations: Vec<Violation>,
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(title: impl Into<String>) -> Self {
        Report { title: title.into(), ..Default::default() }
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn check(&mut self, ok: bool, violation: impl FnOnce() -> Violation) {
        self.checks += 1;
        if !ok {
            self.violations.push(violation());
        }
    }

    pub fn push(&mut self, v: Violation) {
        self.checks += 1;
        self.violations.push(v);
    }

    pub fn note(&mut self, n: impl Into<String>) {
        self.notes.push(n.into());
    }

    pub fn absorb(&mut self, other: Report) {
        self.checks += other.checks;
        self.violations.extend(other.violations);
        self.notes.extend(other.notes);
    }

    /// Sort witnesses so output is byte-stable.
    pub fn finish(mut self) -> Self {
        self.violations.sort();
        self.violations.dedup();
        self
    }

    pub fn verdict(&self) -> &'static str {
        if self.passed() {
            "PASS"
        } else {
            "FAIL"
        }
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}: {} ({} checks, {} violations)", self.title, self.verdict(), self.checks, self.violations.len())?;
        for n in &self.notes {
            writeln!(f, "  note: {n}")?;
        }
        for v in &self.violations {
            writeln!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Render an index list 1-based, e.g. `[2,3]`.
pub fn show_indices(v: &[usize]) -> String {
    let parts: Vec<String> = v.iter().map(|i| (i + 1).to_string()).collect();
    format!("[{}]", parts.join(","))
}
