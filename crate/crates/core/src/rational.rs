//! Exact collinearity over the rationals, and reduction of rational point
//! configurations modulo a prime.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::curve::{ProjPoint, WeierstrassCurve};
use crate::field::{is_prime, FieldError, FieldSpec};
use crate::orchard::{lines_geometric, OrchardError, MAX_GEOMETRIC_Q};

/// Largest point set accepted by [`rat_enumerate_3rich`].
pub const MAX_RATIONAL_POINTS: usize = 64;

/// Best known number of 3-rich lines for 9 points in the real plane.
pub const KNOWN_MAX_REAL_9: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RationalError {
    #[error("point list contains duplicates")]
    DuplicatePoints,
    #[error("points {0:?} are collinear; a cubic meets a line at most three times")]
    FourCollinear([usize; 4]),
    #[error("a denominator is divisible by {p}")]
    DenominatorDivisibleByP { p: u64 },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} points exceed the limit of {MAX_RATIONAL_POINTS}")]
    TooManyPoints(usize),
    #[error("cannot parse {0:?}")]
    Parse(String),
    #[error(transparent)]
    Orchard(#[from] OrchardError),
}

impl From<FieldError> for RationalError {
    fn from(e: FieldError) -> Self {
        RationalError::Orchard(e.into())
    }
}

/// An affine rational point, or the point at infinity `(0:1:0)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalPoint {
    x: BigRational,
    y: BigRational,
    at_infinity: bool,
}

impl RationalPoint {
    pub fn new(x: BigRational, y: BigRational) -> Self {
        RationalPoint {
            x,
            y,
            at_infinity: false,
        }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Self::new(BigRational::from_integer(x.into()), BigRational::from_integer(y.into()))
    }

    pub fn infinity() -> Self {
        RationalPoint {
            x: BigRational::zero(),
            y: BigRational::zero(),
            at_infinity: true,
        }
    }

    pub fn is_infinity(&self) -> bool {
        self.at_infinity
    }

    /// `None` for the point at infinity.
    pub fn affine(&self) -> Option<(&BigRational, &BigRational)> {
        (!self.at_infinity).then_some((&self.x, &self.y))
    }

    fn row(&self) -> [BigRational; 3] {
        if self.at_infinity {
            [BigRational::zero(), BigRational::one(), BigRational::zero()]
        } else {
            [self.x.clone(), self.y.clone(), BigRational::one()]
        }
    }

    /// Whether the point lies on the Weierstrass curve with integer
    /// coefficients `[a1, a2, a3, a4, a6]`.
    pub fn on_curve(&self, a: [i64; 5]) -> bool {
        let Some((x, y)) = self.affine() else {
            return true;
        };
        let [a1, a2, a3, a4, a6] = a.map(|c| BigRational::from_integer(c.into()));
        let lhs = y * y + a1 * x * y + a3 * y;
        let rhs = x * x * x + a2 * x * x + a4 * x + a6;
        lhs == rhs
    }
}

fn fmt_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for RationalPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.affine() {
            None => f.write_str("O"),
            Some((x, y)) => write!(f, "({},{})", fmt_rational(x), fmt_rational(y)),
        }
    }
}

fn parse_rational(s: &str) -> Result<BigRational, RationalError> {
    let bad = || RationalError::Parse(s.to_string());
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(num, den))
}

impl FromStr for RationalPoint {
    type Err = RationalError;

    /// `O`, or `(x,y)` with entries like `-4` or `1/2`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        if t == "O" {
            return Ok(Self::infinity());
        }
        let inner = t
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| RationalError::Parse(s.to_string()))?;
        let (x, y) = inner
            .split_once(',')
            .ok_or_else(|| RationalError::Parse(s.to_string()))?;
        Ok(Self::new(parse_rational(x)?, parse_rational(y)?))
    }
}

fn det3(m: [[BigRational; 3]; 3]) -> BigRational {
    let [[a, b, c], [d, e, f], [g, h, i]] = m;
    &a * (&e * &i - &f * &h) - &b * (&d * &i - &f * &g) + &c * (&d * &h - &e * &g)
}

/// Exact determinant test on projective rows `(x, y, 1)` or `(0, 1, 0)`.
pub fn rat_collinear(
    p: &RationalPoint,
    q: &RationalPoint,
    r: &RationalPoint,
) -> Result<bool, RationalError> {
    if p == q || q == r || p == r {
        return Err(RationalError::DuplicatePoints);
    }
    Ok(det3([p.row(), q.row(), r.row()]).is_zero())
}

/// A rational point set and its 3-rich lines as sorted index triples.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalArrangement {
    points: Vec<RationalPoint>,
    lines: Vec<[usize; 3]>,
}

impl RationalArrangement {
    pub fn points(&self) -> &[RationalPoint] {
        &self.points
    }

    pub fn lines(&self) -> &[[usize; 3]] {
        &self.lines
    }

    pub fn n_lines(&self) -> usize {
        self.lines.len()
    }

    /// True when a 9-point set claims more lines than the known real maximum.
    pub fn exceeds_known_real_maximum(&self) -> bool {
        self.points.len() == 9 && self.lines.len() > KNOWN_MAX_REAL_9
    }
}

fn check_distinct<T: Ord>(items: &[T]) -> bool {
    items.iter().collect::<BTreeSet<_>>().len() == items.len()
}

/// Every collinear triple, tested exactly. Four collinear points are
/// rejected since such a set cannot come from a cubic.
pub fn rat_enumerate_3rich(points: &[RationalPoint]) -> Result<RationalArrangement, RationalError> {
    let n = points.len();
    if n > MAX_RATIONAL_POINTS {
        return Err(RationalError::TooManyPoints(n));
    }
    if !check_distinct(points) {
        return Err(RationalError::DuplicatePoints);
    }
    let mut lines = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                if !rat_collinear(&points[i], &points[j], &points[k])? {
                    continue;
                }
                for l in k + 1..n {
                    if rat_collinear(&points[i], &points[j], &points[l])? {
                        return Err(RationalError::FourCollinear([i, j, k, l]));
                    }
                }
                lines.push([i, j, k]);
            }
        }
    }
    Ok(RationalArrangement {
        points: points.to_vec(),
        lines,
    })
}

fn reduce(r: &BigRational, p: u64) -> Result<i64, RationalError> {
    let pb = BigInt::from(p);
    let den = r.denom().mod_floor(&pb);
    if den.is_zero() {
        return Err(RationalError::DenominatorDivisibleByP { p });
    }
    let num = r.numer().mod_floor(&pb);
    let inv = den
        .modpow(&BigInt::from(p - 2), &pb)
        .to_i64()
        .expect("residue fits");
    let num = num.to_i64().expect("residue fits");
    Ok(((num as i128 * inv as i128) % p as i128) as i64)
}

/// Coordinates reduced modulo `p`, as points of `PG(2, p)`.
pub fn rat_reduce_mod_p(points: &[RationalPoint], p: u64) -> Result<Vec<ProjPoint>, RationalError> {
    if !is_prime(p) {
        return Err(RationalError::NotPrime(p));
    }
    let field = FieldSpec::prime(p)?;
    points
        .iter()
        .map(|pt| match pt.affine() {
            None => Ok(ProjPoint::infinity(&field)),
            Some((x, y)) => Ok(ProjPoint::from_ints(&field, reduce(x, p)?, reduce(y, p)?)),
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReductionMatch {
    pub p: u64,
    /// Reduced points, in the order of the rational points.
    pub reduced: Vec<String>,
    /// The reduced points are pairwise distinct.
    pub injective: bool,
    /// Position of each reduced point in the target set, when one is given.
    pub target_index: Option<Vec<Option<usize>>>,
    /// Reduction is a bijection onto all points of the target curve. Only
    /// expected when the curve has exactly as many points as the set.
    pub bijection: Option<bool>,
    /// Every reduced point lies on the target curve.
    pub on_curve: Option<bool>,
    /// Number of 3-rich lines among the reduced points over `F_p`.
    pub reduced_lines: Option<usize>,
    /// The 3-rich lines over `F_p` are exactly the images of the rational ones.
    pub lines_correspond: bool,
}

impl ReductionMatch {
    pub fn pass(&self) -> bool {
        self.injective && self.lines_correspond && self.on_curve.unwrap_or(true)
    }
}

/// Reduce `arr` modulo `p` and compare with the 3-rich lines of the reduced
/// set over `F_p` (geometric scan, so `p` is capped). With a `target`
/// curve, also check that the reduced points land on it and record whether
/// they are exactly its points.
pub fn match_reduction(
    arr: &RationalArrangement,
    p: u64,
    target: Option<&WeierstrassCurve>,
) -> Result<ReductionMatch, RationalError> {
    let field = FieldSpec::prime(p).map_err(|_| RationalError::NotPrime(p))?;
    let reduced = rat_reduce_mod_p(&arr.points, p)?;
    let injective = check_distinct(&reduced);
    let (mut target_index, mut bijection, mut on_curve) = (None, None, None);
    if let Some(curve) = target {
        if curve.field() != &field {
            return Err(FieldError::SpecMismatch.into());
        }
        let mut ok = true;
        for pt in &reduced {
            ok &= curve.is_on_curve(pt).map_err(OrchardError::from)?;
        }
        on_curve = Some(ok);
        let target_points = curve.points().map_err(OrchardError::from)?;
        let idx: Vec<Option<usize>> = reduced
            .iter()
            .map(|r| target_points.iter().position(|t| t == r))
            .collect();
        bijection = Some(
            injective && target_points.len() == reduced.len() && idx.iter().all(Option::is_some),
        );
        target_index = Some(idx);
    }
    let mut reduced_lines = None;
    let mut lines_correspond = false;
    if injective && field.order() <= MAX_GEOMETRIC_Q {
        let geo = lines_geometric(&reduced, &field)?;
        let expected: BTreeSet<[usize; 3]> = arr.lines.iter().copied().collect();
        let got: BTreeSet<[usize; 3]> = geo.lines().iter().copied().collect();
        reduced_lines = Some(got.len());
        lines_correspond = expected == got;
    }
    Ok(ReductionMatch {
        p,
        reduced: reduced.iter().map(|r| r.format(&field)).collect(),
        injective,
        target_index,
        bijection,
        on_curve,
        reduced_lines,
        lines_correspond,
    })
}

/// Coefficients `[a1, a2, a3, a4, a6]` of `y^2 = x^3 + 5x^2 + 4x`.
pub const FIG4_CURVE: [i64; 5] = [0, 5, 0, 4, 0];

/// Eight rational points of `y^2 = x^3 + 5x^2 + 4x` that reduce mod 7 to
/// the whole curve over `F_7`: `A1..G1` then `O`.
pub fn lifted_fig4_config() -> Vec<RationalPoint> {
    let mut pts: Vec<RationalPoint> = [(0, 0), (2, -6), (2, 6), (-4, 0), (-2, 2), (-2, -2), (-1, 0)]
        .into_iter()
        .map(|(x, y)| RationalPoint::from_ints(x, y))
        .collect();
    pts.push(RationalPoint::infinity());
    pts
}

/// A configuration file: the arrangement file layout, with coordinates
/// that may be fractions `num/den`. Points at infinity are written
/// `0 1 0`. Blank lines and `#` comments are ignored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalConfig {
    pub points: Vec<RationalPoint>,
    pub declared_lines: Vec<[usize; 3]>,
    /// The header's third field; a prime to reduce modulo, or 0 for none.
    pub q: u64,
}

impl FromStr for RationalConfig {
    type Err = RationalError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let bad = |s: &str| RationalError::Parse(s.to_string());
        let mut rows = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .filter(|l| !l.is_empty());
        let header = rows.next().ok_or_else(|| bad("missing header"))?;
        let h: Vec<u64> = header
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| bad(header)))
            .collect::<Result<_, _>>()?;
        let [n, t, q] = h[..] else {
            return Err(bad(header));
        };
        let mut points = Vec::new();
        for _ in 0..n {
            let row = rows.next().ok_or_else(|| bad("missing point row"))?;
            let c: Vec<BigRational> = row
                .split_whitespace()
                .map(parse_rational)
                .collect::<Result<_, _>>()?;
            let [x, y, z] = &c[..] else {
                return Err(bad(row));
            };
            let point = if z.is_zero() {
                if !x.is_zero() || y.is_zero() {
                    return Err(bad(row));
                }
                RationalPoint::infinity()
            } else {
                RationalPoint::new(x / z, y / z)
            };
            points.push(point);
        }
        let mut declared_lines = Vec::new();
        for _ in 0..t {
            let row = rows.next().ok_or_else(|| bad("missing line row"))?;
            let idx: Vec<usize> = row
                .split_whitespace()
                .map(|v| v.parse().map_err(|_| bad(row)))
                .collect::<Result<_, _>>()?;
            let [i, j, k] = idx[..] else {
                return Err(bad(row));
            };
            if !(i < j && j < k && k < points.len()) {
                return Err(bad(row));
            }
            declared_lines.push([i, j, k]);
        }
        if rows.next().is_some() {
            return Err(bad("trailing rows"));
        }
        declared_lines.sort_unstable();
        Ok(RationalConfig {
            points,
            declared_lines,
            q,
        })
    }
}

impl RationalConfig {
    /// Arrangement file text for `arr` with reduction prime `q`.
    pub fn render(arr: &RationalArrangement, q: u64) -> String {
        let mut out = format!("{} {} {}\n", arr.points.len(), arr.lines.len(), q);
        for p in &arr.points {
            match p.affine() {
                None => out.push_str("0 1 0\n"),
                Some((x, y)) => out.push_str(&format!("{} {} 1\n", fmt_rational(x), fmt_rational(y))),
            }
        }
        for [i, j, k] in &arr.lines {
            out.push_str(&format!("{i} {j} {k}\n"));
        }
        out
    }
}
