//! Orchard arrangements built from elliptic curves: 3-rich lines from the
//! group law and from an exhaustive line scan of `PG(2, q)`, realizability
//! of group orders and structures, curve families, and the theorem and table
//! checks built on top of them.

mod admissibility;
mod arrangement;
mod families;
mod sweep;
mod table3;
mod theorems;

use thiserror::Error;

use crate::abelian::StructureError;
use crate::counting::CountingError;
use crate::curve::CurveError;
use crate::field::FieldError;

pub use admissibility::{ruck_admissible, schoof_admissible, AdmissibilityRule, AdmissibilityVerdict};
pub use arrangement::{
    lines_from_group, lines_geometric, max_points_on_a_line, Arrangement, ArrangementJson,
    MAX_GEOMETRIC_Q, MAX_GROUP_LINES_Q,
};
pub use families::{
    construct_family, family_expectation, find_curve, iso_covering_curves, Family,
    FamilyExpectation,
};
pub use sweep::{sweep, SweepReport, SweepRow, MAX_SWEEP_Q};
pub use table3::{reproduce_table3, table3_rows, Table3Expected, Table3Row};
pub use theorems::{
    theorem37_closed_form, verify_theorem, ModelCheck, TheoremId, TheoremReport, TheoremTarget,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrchardError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Counting(#[from] CountingError),
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error("field of size {q} exceeds the cap {cap} for this operation")]
    TooLarge { q: u32, cap: u32 },
    #[error("point list contains duplicates")]
    DuplicatePoints,
    #[error("family {family} requires {condition}")]
    CongruenceViolated { family: String, condition: String },
    #[error("no parameter of family {family} over F_{q} gives {target} points")]
    NoParameterFound { family: String, q: u32, target: u64 },
    #[error("order q + 1 - t = {0} is not realizable (no clause of the order criterion holds)")]
    NotRealizableOrder(i64),
    #[error("bad factorization of the group order: {0}")]
    BadFactorization(String),
    #[error("theorem hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("row {row}: expected {expected}, computed {computed}")]
    RowMismatch {
        row: usize,
        expected: String,
        computed: String,
    },
}

/// `floor(sqrt(n))`.
pub(crate) fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

pub(crate) fn exact_sqrt(n: u64) -> Option<u64> {
    let r = isqrt(n);
    (r * r == n).then_some(r)
}
