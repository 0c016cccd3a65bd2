use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Pass => f.write_str("pass"),
            Verdict::Fail => f.write_str("fail"),
        }
    }
}

/// Outcome of a single property check.
///
/// A failing report carries the lexicographically first violating tuple of
/// element indices as its witness, so repeated runs produce identical output.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub check: String,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Report {
    pub fn pass(check: impl Into<String>) -> Self {
        Report {
            check: check.into(),
            verdict: Verdict::Pass,
            witness: None,
            detail: None,
        }
    }

    pub fn fail(check: impl Into<String>, witness: Vec<usize>, detail: impl Into<String>) -> Self {
        Report {
            check: check.into(),
            verdict: Verdict::Fail,
            witness: Some(witness),
            detail: Some(detail.into()),
        }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    /// Renames the check, keeping verdict and witness.
    pub fn renamed(mut self, check: impl Into<String>) -> Self {
        self.check = check.into();
        self
    }

    /// Returns `Ok(self)` when passing and the report as an error otherwise.
    pub fn into_result(self) -> crate::Result<Self> {
        if self.passed() {
            Ok(self)
        } else {
            Err(self.into())
        }
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.check, self.verdict)?;
        if let Some(w) = &self.witness {
            write!(f, " witness={w:?}")?;
        }
        if let Some(d) = &self.detail {
            write!(f, " ({d})")?;
        }
        Ok(())
    }
}

/// Folds a sequence of reports into one named report; the first failure wins.
pub fn all_of<I>(name: &str, reports: I) -> Report
where
    I: IntoIterator<Item = Report>,
{
    for r in reports {
        if !r.passed() {
            let detail = match &r.detail {
                Some(d) => format!("{}: {d}", r.check),
                None => r.check.clone(),
            };
            return Report {
                check: name.to_string(),
                verdict: Verdict::Fail,
                witness: r.witness,
                detail: Some(detail),
            };
        }
    }
    Report::pass(name)
}
