use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;

use serde::Serialize;

use super::OrchardError;
use crate::counting::green_tao_bound;
use crate::curve::{CurveError, ProjPoint, WeierstrassCurve};
use crate::field::{FieldElement, FieldError, FieldSpec};

/// Cap on `q` for [`lines_from_group`].
pub const MAX_GROUP_LINES_Q: u32 = 1 << 10;
/// Cap on `q` for [`lines_geometric`].
pub const MAX_GEOMETRIC_Q: u32 = 64;

/// A point set together with its 3-rich lines, each stored as a sorted
/// triple of point indices. Lines are kept in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrangement {
    field: FieldSpec,
    points: Vec<ProjPoint>,
    lines: Vec<[usize; 3]>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ArrangementJson {
    pub field: String,
    pub curve: Option<String>,
    pub points: Vec<[u32; 3]>,
    pub lines: Vec<[usize; 3]>,
    pub n: usize,
    pub t: usize,
    pub bound: Option<u64>,
    pub excess: Option<i64>,
}

impl Arrangement {
    fn new(field: FieldSpec, points: Vec<ProjPoint>, lines: BTreeSet<[usize; 3]>) -> Self {
        Arrangement {
            field,
            points,
            lines: lines.into_iter().collect(),
        }
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn points(&self) -> &[ProjPoint] {
        &self.points
    }

    pub fn lines(&self) -> &[[usize; 3]] {
        &self.lines
    }

    pub fn n_points(&self) -> usize {
        self.points.len()
    }

    pub fn n_lines(&self) -> usize {
        self.lines.len()
    }

    /// Lines as sets of points rather than indices.
    pub fn line_point_sets(&self) -> BTreeSet<[ProjPoint; 3]> {
        self.lines
            .iter()
            .map(|l| {
                let mut t = l.map(|i| self.points[i]);
                t.sort();
                t
            })
            .collect()
    }

    /// Green–Tao bound for this many points, if defined.
    pub fn bound(&self) -> Option<u64> {
        green_tao_bound(self.points.len() as u64).ok()
    }

    /// Canonical text form: `N t q`, then `X Y Z` per point (element
    /// encodings in decimal), then `i j k` per line.
    pub fn to_file_string(&self) -> String {
        let mut out = String::new();
        writeln!(
            out,
            "{} {} {}",
            self.points.len(),
            self.lines.len(),
            self.field.order()
        )
        .unwrap();
        for p in &self.points {
            let [x, y, z] = p.coords();
            writeln!(out, "{} {} {}", x.index(), y.index(), z.index()).unwrap();
        }
        for [i, j, k] in &self.lines {
            writeln!(out, "{i} {j} {k}").unwrap();
        }
        out
    }

    /// Parses [`Arrangement::to_file_string`] output over `field`. The
    /// declared lines must be sorted triples of valid indices.
    pub fn from_file_str(field: &FieldSpec, text: &str) -> Result<Self, OrchardError> {
        let bad = |msg: &str| OrchardError::Field(FieldError::BadElement(msg.to_string()));
        let mut rows = text.lines().filter(|l| !l.trim().is_empty());
        let header: Vec<u64> = rows
            .next()
            .ok_or_else(|| bad("missing header"))?
            .split_whitespace()
            .map(|t| t.parse::<u64>().map_err(|_| bad("bad header")))
            .collect::<Result<_, _>>()?;
        let [n, t, q] = header[..] else {
            return Err(bad("header must be `N t q`"));
        };
        if q != field.order() as u64 {
            return Err(bad("header q does not match the field"));
        }
        let mut points = Vec::with_capacity(n as usize);
        for _ in 0..n {
            let row = rows.next().ok_or_else(|| bad("missing point row"))?;
            let c: Vec<FieldElement> = row
                .split_whitespace()
                .map(|v| {
                    v.parse::<u32>()
                        .map_err(|_| bad("bad coordinate"))
                        .and_then(|i| field.element(i).map_err(OrchardError::from))
                })
                .collect::<Result<_, _>>()?;
            let [x, y, z] = c[..] else {
                return Err(bad("point rows need three coordinates"));
            };
            points.push(ProjPoint::new(field, x, y, z)?);
        }
        let mut lines = BTreeSet::new();
        for _ in 0..t {
            let row = rows.next().ok_or_else(|| bad("missing line row"))?;
            let idx: Vec<usize> = row
                .split_whitespace()
                .map(|v| v.parse::<usize>().map_err(|_| bad("bad index")))
                .collect::<Result<_, _>>()?;
            let [i, j, k] = idx[..] else {
                return Err(bad("line rows need three indices"));
            };
            if !(i < j && j < k && k < points.len()) {
                return Err(bad("line indices must be sorted and in range"));
            }
            lines.insert([i, j, k]);
        }
        Ok(Arrangement::new(field.clone(), points, lines))
    }

    pub fn to_json(&self, curve: Option<&WeierstrassCurve>) -> ArrangementJson {
        let bound = self.bound();
        ArrangementJson {
            field: self.field.to_string(),
            curve: curve.map(|c| c.to_string()),
            points: self
                .points
                .iter()
                .map(|p| p.coords().map(|c| c.index()))
                .collect(),
            lines: self.lines.clone(),
            n: self.points.len(),
            t: self.lines.len(),
            bound,
            excess: bound.map(|b| self.lines.len() as i64 - b as i64),
        }
    }
}

/// All triples of distinct curve points with `P + Q + R = O`.
pub fn lines_from_group(curve: &WeierstrassCurve) -> Result<Arrangement, OrchardError> {
    let q = curve.field().order();
    if q > MAX_GROUP_LINES_Q {
        return Err(OrchardError::TooLarge {
            q,
            cap: MAX_GROUP_LINES_Q,
        });
    }
    let points = curve.points()?;
    let index: HashMap<ProjPoint, usize> =
        points.iter().enumerate().map(|(i, p)| (*p, i)).collect();
    let mut lines = BTreeSet::new();
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            let r = curve.neg(&curve.add_unchecked(&points[i], &points[j]));
            let k = *index
                .get(&r)
                .ok_or_else(|| CurveError::Internal("group law left the point set".into()))?;
            // k == i or k == j is a tangent line through only two points
            if k > j {
                lines.insert([i, j, k]);
            }
        }
    }
    Ok(Arrangement::new(curve.field().clone(), points, lines))
}

/// Every line of `PG(2, q)` as a normalized dual triple `[a:b:c]`.
fn projective_lines(field: &FieldSpec) -> impl Iterator<Item = [FieldElement; 3]> + '_ {
    let affine = field
        .elements()
        .flat_map(move |a| field.elements().map(move |b| [a, b, field.one()]));
    let at_infinity = field
        .elements()
        .map(move |a| [a, field.one(), field.zero()]);
    affine
        .chain(at_infinity)
        .chain(std::iter::once([field.one(), field.zero(), field.zero()]))
}

fn incident(field: &FieldSpec, line: &[FieldElement; 3], p: &ProjPoint) -> bool {
    let [a, b, c] = *line;
    let [x, y, z] = p.coords();
    field
        .add(field.add(field.mul(a, x), field.mul(b, y)), field.mul(c, z))
        .is_zero()
}

fn check_point_set(field: &FieldSpec, points: &[ProjPoint]) -> Result<(), OrchardError> {
    let q = field.order();
    if q > MAX_GEOMETRIC_Q {
        return Err(OrchardError::TooLarge {
            q,
            cap: MAX_GEOMETRIC_Q,
        });
    }
    if points
        .iter()
        .any(|p| p.coords().iter().any(|&c| !field.contains(c)))
    {
        return Err(FieldError::SpecMismatch.into());
    }
    let distinct: BTreeSet<_> = points.iter().collect();
    if distinct.len() != points.len() {
        return Err(OrchardError::DuplicatePoints);
    }
    Ok(())
}

/// Scans all `q^2 + q + 1` lines of `PG(2, q)` and keeps those meeting the
/// point set in exactly three points.
pub fn lines_geometric(
    points: &[ProjPoint],
    field: &FieldSpec,
) -> Result<Arrangement, OrchardError> {
    check_point_set(field, points)?;
    let mut lines = BTreeSet::new();
    for line in projective_lines(field) {
        let on: Vec<usize> = points
            .iter()
            .enumerate()
            .filter(|(_, p)| incident(field, &line, p))
            .map(|(i, _)| i)
            .take(4)
            .collect();
        if let [i, j, k] = on[..] {
            lines.insert([i, j, k]);
        }
    }
    Ok(Arrangement::new(field.clone(), points.to_vec(), lines))
}

/// Largest number of the given points on a single line of `PG(2, q)`.
pub fn max_points_on_a_line(points: &[ProjPoint], field: &FieldSpec) -> Result<usize, OrchardError> {
    check_point_set(field, points)?;
    Ok(projective_lines(field)
        .map(|line| points.iter().filter(|p| incident(field, &line, p)).count())
        .max()
        .unwrap_or(0))
}
