use std::fmt;
use std::time::Duration;

use serde::{Serialize, Serializer};

/// Version of the JSON report layout; bump on any incompatible change.
pub const REPORT_SCHEMA_VERSION: u32 = 1;

/// Witness lists longer than this are cut and marked as truncated.
pub const WITNESS_CAP: usize = 50;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Identity {
    Schur,
    Andrews,
    Dual,
    Corollary,
    Overpartition,
    Machinery,
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Identity::Schur => "schur",
            Identity::Andrews => "andrews",
            Identity::Dual => "dual",
            Identity::Corollary => "corollary",
            Identity::Overpartition => "overpartition",
            Identity::Machinery => "machinery",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "reason", rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// The check could not run to the end of its range.
    Aborted(String),
}

impl Status {
    pub fn is_pass(&self) -> bool {
        matches!(self, Status::Pass)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Params {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub i: Option<usize>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CheckedRange {
    pub n_max: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m_max: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub enum_limit: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub j_max: Option<usize>,
    /// Largest `n` actually completed when a check is aborted.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub completed_through: Option<usize>,
}

/// A list of combinatorial objects attached to a discrepancy.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ObjectList {
    pub label: String,
    pub items: Vec<String>,
    pub truncated: bool,
}

impl ObjectList {
    pub fn capped<T: fmt::Display>(label: impl Into<String>, objects: impl IntoIterator<Item = T>) -> Self {
        let mut items = Vec::new();
        let mut truncated = false;
        for o in objects {
            if items.len() == WITNESS_CAP {
                truncated = true;
                break;
            }
            items.push(o.to_string());
        }
        Self {
            label: label.into(),
            items,
            truncated,
        }
    }
}

/// The first place where two sides of a check disagree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub j: Option<usize>,
    pub lhs_label: String,
    pub lhs: String,
    pub rhs_label: String,
    pub rhs: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub objects: Vec<ObjectList>,
}

impl Witness {
    pub fn counts(
        n: usize,
        lhs_label: &str,
        lhs: impl fmt::Display,
        rhs_label: &str,
        rhs: impl fmt::Display,
    ) -> Self {
        Self {
            n,
            m: None,
            j: None,
            lhs_label: lhs_label.to_owned(),
            lhs: lhs.to_string(),
            rhs_label: rhs_label.to_owned(),
            rhs: rhs.to_string(),
            objects: Vec::new(),
        }
    }

    pub fn with_m(mut self, m: usize) -> Self {
        self.m = Some(m);
        self
    }

    pub fn with_j(mut self, j: usize) -> Self {
        self.j = Some(j);
        self
    }

    pub fn with_objects(mut self, list: ObjectList) -> Self {
        self.objects.push(list);
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub identity: Identity,
    /// Name of the sub-check within the identity.
    pub check: String,
    pub params: Params,
    pub range: CheckedRange,
    #[serde(flatten)]
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(rename = "elapsed_secs", serialize_with = "secs")]
    pub elapsed: Duration,
}

fn secs<S: Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_f64(d.as_secs_f64())
}

impl VerificationReport {
    pub(crate) fn new(identity: Identity, check: &str, params: Params, range: CheckedRange) -> Self {
        Self {
            identity,
            check: check.to_owned(),
            params,
            range,
            status: Status::Pass,
            witness: None,
            notes: Vec::new(),
            elapsed: Duration::ZERO,
        }
    }

    pub(crate) fn fail(&mut self, witness: Witness) {
        self.status = Status::Fail;
        self.witness = Some(witness);
    }

    pub(crate) fn abort(&mut self, reason: impl Into<String>, completed_through: Option<usize>) {
        self.status = Status::Aborted(reason.into());
        self.range.completed_through = completed_through;
    }

    pub fn passed(&self) -> bool {
        self.status.is_pass()
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match &self.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Aborted(_) => "ABORTED",
        };
        write!(f, "{tag:<7} {} [{}]", self.identity, self.check)?;
        if let Some(k) = self.params.k {
            write!(f, " k={k}")?;
        }
        if let Some(i) = self.params.i {
            write!(f, " i={i}")?;
        }
        write!(f, " n<={}", self.range.n_max)?;
        if let Some(m) = self.range.m_max {
            write!(f, " m<={m}")?;
        }
        if let Some(e) = self.range.enum_limit {
            write!(f, " enum<={e}")?;
        }
        if let Some(j) = self.range.j_max {
            write!(f, " j<={j}")?;
        }
        write!(f, " ({:.3}s)", self.elapsed.as_secs_f64())?;
        if let Status::Aborted(reason) = &self.status {
            write!(f, "\n    aborted: {reason}")?;
            if let Some(c) = self.range.completed_through {
                write!(f, " (completed through n={c})")?;
            }
        }
        if let Some(w) = &self.witness {
            write!(f, "\n    first discrepancy at n={}", w.n)?;
            if let Some(m) = w.m {
                write!(f, " m={m}")?;
            }
            if let Some(j) = w.j {
                write!(f, " j={j}")?;
            }
            write!(f, ": {}={} vs {}={}", w.lhs_label, w.lhs, w.rhs_label, w.rhs)?;
            for list in &w.objects {
                write!(f, "\n    {} ({}{}):", list.label, list.items.len(), if list.truncated { "+, truncated" } else { "" })?;
                for item in &list.items {
                    write!(f, "\n      {item}")?;
                }
            }
        }
        for note in &self.notes {
            write!(f, "\n    note: {note}")?;
        }
        Ok(())
    }
}
