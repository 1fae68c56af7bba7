//! Relation suites over a [`GeneratorRegistry`](crate::GeneratorRegistry).
//!
//! Every check produces a [`RelationReport`]: a residual operator is formed
//! and the check passes iff that residual is exactly zero on the subspace the
//! relation is claimed for. Reports flagged `gating: false` are informational
//! and never decide the overall verdict.

use std::fmt;

use serde::Serialize;

use crate::operator::SparseOperator;

pub mod aw3;
pub mod defining;
pub mod independence;
pub mod master;
pub mod props;

pub use aw3::{
    check_aw3_linear, check_aw3_quadratic, check_aw3_quadratic_form, check_aw3_symmetric,
    enumerate_allowable, AllowableTriple, Orientation,
};
pub use defining::{
    check_casimir_centrality, check_coassociativity, check_defining_relations, check_shift_identity,
};
pub use independence::{check_independence, exact_rank};
pub use master::{check_master, check_master_all, master_rows, MasterRow, MasterTable};
pub use props::{check_prop1, check_prop2};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Defining,
    Coassociativity,
    Prop1,
    Prop2,
    Aw3Symmetric,
    Aw3Linear,
    Aw3Quadratic,
    Master,
    Spectra,
    Independence,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Defining => "defining",
            Suite::Coassociativity => "coassociativity",
            Suite::Prop1 => "prop1",
            Suite::Prop2 => "prop2",
            Suite::Aw3Symmetric => "aw3-symmetric",
            Suite::Aw3Linear => "aw3-linear",
            Suite::Aw3Quadratic => "aw3-quadratic",
            Suite::Master => "master",
            Suite::Spectra => "spectra",
            Suite::Independence => "independence",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResidualSummary {
    /// Number of nonzero residual entries.
    pub nonzero: usize,
    /// One offending entry, `row (n..) col (n..): value`.
    pub sample: Option<String>,
    /// Source weights whose columns carry a nonzero residual.
    pub weights: Vec<usize>,
}

impl ResidualSummary {
    pub fn of(residual: &SparseOperator) -> Self {
        let basis = residual.basis();
        let sample = residual
            .first_nonzero()
            .map(|(i, j, v)| format!("row {} col {}: {}", basis.state(i), basis.state(j), v));
        ResidualSummary {
            nonzero: residual.nnz(),
            sample,
            weights: residual.nonzero_weights(),
        }
    }

    pub fn clean() -> Self {
        ResidualSummary {
            nonzero: 0,
            sample: None,
            weights: Vec::new(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationReport {
    pub id: String,
    pub kind: Suite,
    pub inputs: Vec<String>,
    pub status: Status,
    pub gating: bool,
    pub residual_summary: ResidualSummary,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl RelationReport {
    /// Passing iff `residual` is exactly zero.
    pub fn from_residual(
        id: impl Into<String>,
        kind: Suite,
        inputs: Vec<String>,
        residual: &SparseOperator,
    ) -> Self {
        let status = if residual.is_zero() {
            Status::Pass
        } else {
            Status::Fail
        };
        RelationReport {
            id: id.into(),
            kind,
            inputs,
            status,
            gating: true,
            residual_summary: ResidualSummary::of(residual),
            note: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn informational(mut self) -> Self {
        self.gating = false;
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

/// Labels or other inputs as strings.
pub(crate) fn inputs<T: ToString>(items: &[T]) -> Vec<String> {
    items.iter().map(ToString::to_string).collect()
}
