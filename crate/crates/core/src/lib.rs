//! Finite fields, elliptic curves over them, and orchard arrangements built
//! from their group laws.

pub mod abelian;
pub mod counting;
pub mod curve;
pub mod field;
pub mod orchard;
pub mod rational;

pub use abelian::{AbelianStructure, StructureError};
pub use counting::{
    classify_excess, count_3rich_bruteforce, count_3rich_formula, green_tao_bound, psi,
    CountingError, SolutionCount,
};
pub use curve::{CurveError, ProjPoint, SupersingularMethod, WeierstrassCurve};
pub use field::{FieldElement, FieldError, FieldOp, FieldSpec};
pub use orchard::OrchardError;
pub use rational::{RationalError, RationalPoint};
