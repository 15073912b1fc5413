//! Exhaustive sweep over one representative per coefficient tuple of a
//! field, with per-order statistics and a comparison against the order
//! criterion.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::admissibility::schoof_admissible;
use super::families::iso_covering_curves;
use super::{isqrt, OrchardError};
use crate::abelian::AbelianStructure;
use crate::counting::{count_3rich_formula, green_tao_bound};
use crate::field::FieldSpec;

pub const MAX_SWEEP_Q: u32 = 32;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StructureCount {
    pub group: AbelianStructure,
    pub curves: usize,
    /// 3-rich lines of the arrangement, from the counting formula.
    pub lines: u64,
    pub excess: Option<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepRow {
    pub n_points: u64,
    pub trace: i64,
    pub curves: usize,
    pub bound: Option<u64>,
    pub structures: Vec<StructureCount>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepReport {
    pub p: u64,
    pub n: u32,
    pub q: u64,
    pub curves: usize,
    pub rows: Vec<SweepRow>,
    pub realizable: BTreeSet<u64>,
    pub predicted: BTreeSet<u64>,
}

impl SweepReport {
    /// Orders predicted but never seen, and seen but not predicted.
    pub fn discrepancies(&self) -> (Vec<u64>, Vec<u64>) {
        (
            self.predicted.difference(&self.realizable).copied().collect(),
            self.realizable.difference(&self.predicted).copied().collect(),
        )
    }

    pub fn pass(&self) -> bool {
        self.realizable == self.predicted
    }
}

/// Run every nonsingular curve of [`iso_covering_curves`] over `field`.
/// For `p > 3` this is every short-form `(A, B)` pair.
pub fn sweep(field: &FieldSpec) -> Result<SweepReport, OrchardError> {
    let q = field.order();
    if q > MAX_SWEEP_Q {
        return Err(OrchardError::TooLarge { q, cap: MAX_SWEEP_Q });
    }
    let (p, n, q) = (field.characteristic() as u64, field.degree(), q as u64);
    let mut by_order: BTreeMap<u64, BTreeMap<AbelianStructure, usize>> = BTreeMap::new();
    let mut curves = 0;
    for curve in iso_covering_curves(field) {
        curves += 1;
        let s = curve.group_structure()?;
        *by_order.entry(s.order()).or_default().entry(s).or_default() += 1;
    }
    let mut rows = Vec::new();
    for (n_points, groups) in by_order {
        let bound = green_tao_bound(n_points).ok();
        let mut structures = Vec::new();
        for (group, count) in groups {
            let lines = count_3rich_formula(&group)?;
            structures.push(StructureCount {
                excess: bound.map(|b| lines as i64 - b as i64),
                group,
                curves: count,
                lines,
            });
        }
        rows.push(SweepRow {
            n_points,
            trace: q as i64 + 1 - n_points as i64,
            curves: structures.iter().map(|s| s.curves).sum(),
            bound,
            structures,
        });
    }
    let realizable = rows.iter().map(|r| r.n_points).collect();
    let h = 2 * isqrt(q) as i64 + 1;
    let mut predicted = BTreeSet::new();
    for t in -h..=h {
        if schoof_admissible(p, n, t)?.admissible {
            predicted.insert((q as i64 + 1 - t) as u64);
        }
    }
    Ok(SweepReport {
        p,
        n,
        q,
        curves,
        rows,
        realizable,
        predicted,
    })
}
