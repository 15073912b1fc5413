//! Elliptic curves in general Weierstrass form
//! `y^2 + a1*x*y + a3*y = x^3 + a2*x^2 + a4*x + a6` over `F_q`.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::abelian::AbelianStructure;
use crate::field::{FieldElement, FieldError, FieldSpec};

/// Cap on `q` for explicit point enumeration and trace computation.
pub const MAX_POINTS_Q: u32 = 1 << 14;
/// Cap on `q` for group structure computation.
pub const MAX_STRUCTURE_Q: u32 = 1 << 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CurveError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("curve is singular (discriminant is zero)")]
    Singular,
    #[error("point is not on the curve")]
    NotOnCurve,
    #[error("(0:0:0) is not a projective point")]
    ZeroPoint,
    #[error("operation requires the short form y^2 = x^3 + Ax + B")]
    WrongForm,
    #[error("operation is undefined in characteristic 2")]
    EvenCharacteristic,
    #[error("field of size {q} exceeds the cap {cap} for this operation")]
    TooLarge { q: u32, cap: u32 },
    #[error("internal consistency check failed: {0}")]
    Internal(String),
    #[error("cannot parse curve {0:?}")]
    Parse(String),
}

/// A normalized point of the projective plane over `F_q`: the rightmost
/// nonzero coordinate is 1. Affine points are `(x:y:1)` and the curve
/// identity is `(0:1:0)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjPoint {
    x: FieldElement,
    y: FieldElement,
    z: FieldElement,
}

impl ProjPoint {
    pub fn new(
        field: &FieldSpec,
        x: FieldElement,
        y: FieldElement,
        z: FieldElement,
    ) -> Result<Self, CurveError> {
        for c in [x, y, z] {
            if !field.contains(c) {
                return Err(FieldError::SpecMismatch.into());
            }
        }
        let scale = if !z.is_zero() {
            z
        } else if !y.is_zero() {
            y
        } else if !x.is_zero() {
            x
        } else {
            return Err(CurveError::ZeroPoint);
        };
        let s = field.inv(scale)?;
        Ok(ProjPoint {
            x: field.mul(x, s),
            y: field.mul(y, s),
            z: field.mul(z, s),
        })
    }

    pub fn affine(field: &FieldSpec, x: FieldElement, y: FieldElement) -> Self {
        ProjPoint { x, y, z: field.one() }
    }

    /// The affine point with integer coordinates in the prime subfield.
    pub fn from_ints(field: &FieldSpec, x: i64, y: i64) -> Self {
        Self::affine(field, field.from_int(x), field.from_int(y))
    }

    pub fn infinity(field: &FieldSpec) -> Self {
        ProjPoint {
            x: field.zero(),
            y: field.one(),
            z: field.zero(),
        }
    }

    pub fn is_infinity(&self) -> bool {
        self.z.is_zero()
    }

    pub fn x(&self) -> FieldElement {
        self.x
    }

    pub fn y(&self) -> FieldElement {
        self.y
    }

    pub fn z(&self) -> FieldElement {
        self.z
    }

    pub fn coords(&self) -> [FieldElement; 3] {
        [self.x, self.y, self.z]
    }

    pub fn format(&self, field: &FieldSpec) -> String {
        if self.is_infinity() && self.x.is_zero() {
            return "O".to_string();
        }
        if self.is_infinity() {
            return format!(
                "({}:{}:0)",
                field.format_element(self.x),
                field.format_element(self.y)
            );
        }
        format!(
            "({},{})",
            field.format_element(self.x),
            field.format_element(self.y)
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SupersingularMethod {
    /// Coefficient of `x^(p-1)` in `f(x)^((p-1)/2)` vanishes.
    Deuring,
    /// Trace of Frobenius is divisible by `p`.
    Trace,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeierstrassCurve {
    field: FieldSpec,
    a: [FieldElement; 5],
}

impl WeierstrassCurve {
    /// Builds the curve with coefficients `[a1, a2, a3, a4, a6]`, rejecting
    /// singular equations.
    pub fn new(field: FieldSpec, a: [FieldElement; 5]) -> Result<Self, CurveError> {
        if a.iter().any(|&c| !field.contains(c)) {
            return Err(FieldError::SpecMismatch.into());
        }
        let curve = WeierstrassCurve { field, a };
        if curve.discriminant().is_zero() {
            return Err(CurveError::Singular);
        }
        Ok(curve)
    }

    /// Builds the curve from integer coefficients reduced into `F_p`.
    pub fn from_ints(field: FieldSpec, a: [i64; 5]) -> Result<Self, CurveError> {
        let a = a.map(|c| field.from_int(c));
        Self::new(field, a)
    }

    /// `y^2 = x^3 + Ax + B`.
    pub fn short(field: FieldSpec, a: FieldElement, b: FieldElement) -> Result<Self, CurveError> {
        let z = field.zero();
        Self::new(field, [z, z, z, a, b])
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    /// `[a1, a2, a3, a4, a6]`.
    pub fn coefficients(&self) -> [FieldElement; 5] {
        self.a
    }

    fn a1(&self) -> FieldElement {
        self.a[0]
    }
    fn a2(&self) -> FieldElement {
        self.a[1]
    }
    fn a3(&self) -> FieldElement {
        self.a[2]
    }
    fn a4(&self) -> FieldElement {
        self.a[3]
    }
    fn a6(&self) -> FieldElement {
        self.a[4]
    }

    pub fn is_short_form(&self) -> bool {
        self.a1().is_zero() && self.a2().is_zero() && self.a3().is_zero()
    }

    /// `y^2 = f(x)` with `f` a monic cubic.
    fn is_y2_form(&self) -> bool {
        self.a1().is_zero() && self.a3().is_zero()
    }

    /// Discriminant from the `b2, b4, b6, b8` covariants; reduces to
    /// `-16(4A^3 + 27B^2)` in short form.
    pub fn discriminant(&self) -> FieldElement {
        let f = &self.field;
        let k = |v: i64| f.from_int(v);
        let (a1, a2, a3, a4, a6) = (self.a1(), self.a2(), self.a3(), self.a4(), self.a6());
        let b2 = f.add(f.square(a1), f.mul(k(4), a2));
        let b4 = f.add(f.mul(k(2), a4), f.mul(a1, a3));
        let b6 = f.add(f.square(a3), f.mul(k(4), a6));
        let b8 = {
            let t1 = f.mul(f.square(a1), a6);
            let t2 = f.mul(k(4), f.mul(a2, a6));
            let t3 = f.mul(a1, f.mul(a3, a4));
            let t4 = f.mul(a2, f.square(a3));
            let t5 = f.square(a4);
            f.sub(f.add(f.sub(f.add(t1, t2), t3), t4), t5)
        };
        let d1 = f.neg(f.mul(f.square(b2), b8));
        let d2 = f.mul(k(8), f.mul(b4, f.square(b4)));
        let d3 = f.mul(k(27), f.square(b6));
        let d4 = f.mul(k(9), f.mul(b2, f.mul(b4, b6)));
        f.add(f.sub(f.sub(d1, d2), d3), d4)
    }

    /// `j = 1728 * 4A^3 / (4A^3 + 27B^2)` for short form in odd
    /// characteristic.
    pub fn j_invariant(&self) -> Result<FieldElement, CurveError> {
        if !self.is_short_form() || self.field.characteristic() == 2 {
            return Err(CurveError::WrongForm);
        }
        let f = &self.field;
        let four_a3 = f.mul(f.from_int(4), f.pow(self.a4(), 3));
        let denom = f.add(four_a3, f.mul(f.from_int(27), f.square(self.a6())));
        let num = f.mul(f.from_int(1728), four_a3);
        Ok(f.div(num, denom)?)
    }

    fn check_point(&self, p: &ProjPoint) -> Result<(), CurveError> {
        if p.coords().iter().any(|&c| !self.field.contains(c)) {
            return Err(FieldError::SpecMismatch.into());
        }
        Ok(())
    }

    fn satisfies(&self, x: FieldElement, y: FieldElement) -> bool {
        let f = &self.field;
        let lhs = f.mul(y, f.add(y, f.add(f.mul(self.a1(), x), self.a3())));
        lhs == self.rhs(x)
    }

    /// `x^3 + a2 x^2 + a4 x + a6`.
    fn rhs(&self, x: FieldElement) -> FieldElement {
        let f = &self.field;
        let t = f.add(f.mul(f.add(x, self.a2()), x), self.a4());
        f.add(f.mul(t, x), self.a6())
    }

    pub fn is_on_curve(&self, p: &ProjPoint) -> Result<bool, CurveError> {
        self.check_point(p)?;
        if p.is_infinity() {
            return Ok(p.x().is_zero());
        }
        Ok(self.satisfies(p.x(), p.y()))
    }

    pub fn identity(&self) -> ProjPoint {
        ProjPoint::infinity(&self.field)
    }

    /// `-(x, y) = (x, -y - a1 x - a3)`.
    pub fn neg(&self, p: &ProjPoint) -> ProjPoint {
        if p.is_infinity() {
            return *p;
        }
        let f = &self.field;
        let y = f.sub(f.neg(p.y()), f.add(f.mul(self.a1(), p.x()), self.a3()));
        ProjPoint::affine(f, p.x(), y)
    }

    /// Chord-tangent addition; operands are assumed to be on the curve.
    pub(crate) fn add_unchecked(&self, p: &ProjPoint, q: &ProjPoint) -> ProjPoint {
        if p.is_infinity() {
            return *q;
        }
        if q.is_infinity() {
            return *p;
        }
        let f = &self.field;
        let (x1, y1, x2, y2) = (p.x(), p.y(), q.x(), q.y());
        let lambda = if x1 == x2 {
            // vertical line: Q = -P
            let denom = f.add(f.add(f.add(y1, y2), f.mul(self.a1(), x2)), self.a3());
            if denom.is_zero() {
                return self.identity();
            }
            // tangent slope (3x^2 + 2a2 x + a4 - a1 y) / (2y + a1 x + a3)
            let num = f.sub(
                f.add(
                    f.add(f.mul(f.from_int(3), f.square(x1)), f.mul(f.from_int(2), f.mul(self.a2(), x1))),
                    self.a4(),
                ),
                f.mul(self.a1(), y1),
            );
            f.mul(num, f.inv(denom).expect("nonzero"))
        } else {
            let dx = f.sub(x2, x1);
            f.mul(f.sub(y2, y1), f.inv(dx).expect("nonzero"))
        };
        let nu = f.sub(y1, f.mul(lambda, x1));
        let x3 = f.sub(
            f.sub(f.sub(f.add(f.square(lambda), f.mul(self.a1(), lambda)), self.a2()), x1),
            x2,
        );
        let y3 = f.sub(
            f.sub(f.neg(f.mul(f.add(lambda, self.a1()), x3)), nu),
            self.a3(),
        );
        ProjPoint::affine(f, x3, y3)
    }

    pub fn add(&self, p: &ProjPoint, q: &ProjPoint) -> Result<ProjPoint, CurveError> {
        if !self.is_on_curve(p)? || !self.is_on_curve(q)? {
            return Err(CurveError::NotOnCurve);
        }
        Ok(self.add_unchecked(p, q))
    }

    pub(crate) fn mul_unchecked(&self, m: i64, p: &ProjPoint) -> ProjPoint {
        let mut base = if m < 0 { self.neg(p) } else { *p };
        let mut k = m.unsigned_abs();
        let mut acc = self.identity();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add_unchecked(&acc, &base);
            }
            base = self.add_unchecked(&base, &base);
            k >>= 1;
        }
        acc
    }

    /// `[m]P` by double-and-add.
    pub fn scalar_mul(&self, m: i64, p: &ProjPoint) -> Result<ProjPoint, CurveError> {
        if !self.is_on_curve(p)? {
            return Err(CurveError::NotOnCurve);
        }
        Ok(self.mul_unchecked(m, p))
    }

    fn require_q(&self, cap: u32) -> Result<(), CurveError> {
        let q = self.field.order();
        if q > cap {
            return Err(CurveError::TooLarge { q, cap });
        }
        Ok(())
    }

    /// All rational points: `O` first, then affine points ordered by
    /// `(x, y)` encodings.
    pub fn points(&self) -> Result<Vec<ProjPoint>, CurveError> {
        self.require_q(MAX_POINTS_Q)?;
        let f = &self.field;
        let mut out = vec![self.identity()];
        for x in f.elements() {
            let rhs = self.rhs(x);
            let b = f.add(f.mul(self.a1(), x), self.a3());
            for y in f.elements() {
                if f.mul(y, f.add(y, b)) == rhs {
                    out.push(ProjPoint::affine(f, x, y));
                }
            }
        }
        Ok(out)
    }

    /// `#E(F_q)` by counting roots of the quadratic in `y` for every `x`.
    pub fn order(&self) -> u64 {
        let f = &self.field;
        let mut count = 1u64;
        let odd = f.characteristic() != 2;
        for x in f.elements() {
            let b = f.add(f.mul(self.a1(), x), self.a3());
            let c = self.rhs(x);
            // y^2 + b y - c = 0
            count += if odd {
                let disc = f.add(f.square(b), f.mul(f.from_int(4), c));
                (1 + f.legendre(disc).expect("odd characteristic")) as u64
            } else if b.is_zero() {
                1
            } else {
                // y = b z turns it into z^2 + z = c / b^2
                let w = f.div(c, f.square(b)).expect("nonzero");
                if f.trace(w) == 0 {
                    2
                } else {
                    0
                }
            };
        }
        count
    }

    /// `q + 1 + sum_x chi(x^3 + Ax + B)` for short form in odd
    /// characteristic.
    pub fn count_legendre(&self) -> Result<u64, CurveError> {
        if !self.is_short_form() {
            return Err(CurveError::WrongForm);
        }
        if self.field.characteristic() == 2 {
            return Err(CurveError::EvenCharacteristic);
        }
        let f = &self.field;
        let mut sum: i64 = 0;
        for x in f.elements() {
            sum += f.legendre(self.rhs(x))? as i64;
        }
        Ok((f.order() as i64 + 1 + sum) as u64)
    }

    /// Trace of Frobenius `t = q + 1 - #E(F_q)`, checked against Hasse.
    pub fn trace(&self) -> Result<i64, CurveError> {
        self.require_q(MAX_POINTS_Q)?;
        let q = self.field.order() as i64;
        let t = q + 1 - self.order() as i64;
        if t * t > 4 * q {
            return Err(CurveError::Internal(format!(
                "Hasse bound violated: t = {t}, q = {q}"
            )));
        }
        Ok(t)
    }

    pub fn is_supersingular(&self, method: SupersingularMethod) -> Result<bool, CurveError> {
        match method {
            SupersingularMethod::Trace => {
                let p = self.field.characteristic() as i64;
                Ok(self.trace()?.rem_euclid(p) == 0)
            }
            SupersingularMethod::Deuring => {
                let p = self.field.characteristic();
                if p == 2 || !self.is_y2_form() {
                    return Err(CurveError::WrongForm);
                }
                let f = &self.field;
                // f(x) = a6 + a4 x + a2 x^2 + x^3, constant first
                let cubic = vec![self.a6(), self.a4(), self.a2(), f.one()];
                let power = poly_pow(f, &cubic, (p as u64 - 1) / 2);
                let coeff = power.get(p as usize - 1).copied().unwrap_or(f.zero());
                Ok(coeff.is_zero())
            }
        }
    }

    /// Order of a point, given a multiple `n` of it (normally `#E`).
    pub(crate) fn point_order(&self, p: &ProjPoint, n: u64, primes: &[u64]) -> u64 {
        let mut ord = n;
        for &r in primes {
            while ord.is_multiple_of(r) && self.mul_unchecked((ord / r) as i64, p).is_infinity() {
                ord /= r;
            }
        }
        ord
    }

    /// Order of `p` in `E(F_q)`.
    pub fn order_of(&self, p: &ProjPoint) -> Result<u64, CurveError> {
        if !self.is_on_curve(p)? {
            return Err(CurveError::NotOnCurve);
        }
        let n = self.order();
        Ok(self.point_order(p, n, &prime_factors(n)))
    }

    /// Invariant factors of `E(F_q)`: `n2` is the group exponent (lcm of all
    /// point orders) and `n1 = N / n2`.
    pub fn group_structure(&self) -> Result<AbelianStructure, CurveError> {
        self.require_q(MAX_STRUCTURE_Q)?;
        let points = self.points()?;
        self.structure_of_points(&points)
    }

    pub(crate) fn structure_of_points(
        &self,
        points: &[ProjPoint],
    ) -> Result<AbelianStructure, CurveError> {
        let n = points.len() as u64;
        let primes = prime_factors(n);
        let mut exponent = 1u64;
        for p in points {
            if exponent == n {
                break;
            }
            let ord = self.point_order(p, n, &primes);
            exponent = num_integer::lcm(exponent, ord);
        }
        let n1 = n / exponent;
        if !exponent.is_multiple_of(n1) {
            return Err(CurveError::Internal(format!(
                "structure [{n1}, {exponent}] is not a divisibility chain"
            )));
        }
        let q = self.field.order() as u64;
        if !(q - 1).is_multiple_of(n1) {
            return Err(CurveError::Internal(format!(
                "n1 = {n1} does not divide q - 1 = {}",
                q - 1
            )));
        }
        AbelianStructure::new(&[n1, exponent]).map_err(|e| CurveError::Internal(e.to_string()))
    }

    /// Weierstrass coefficients as text, `a1,a2,a3,a4,a6`.
    pub fn coefficient_string(&self) -> String {
        let parts: Vec<String> = self
            .a
            .iter()
            .map(|&c| self.field.format_element(c))
            .collect();
        parts.join(",")
    }
}

/// Distinct prime divisors in increasing order.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn poly_mul_field(f: &FieldSpec, a: &[FieldElement], b: &[FieldElement]) -> Vec<FieldElement> {
    let mut out = vec![f.zero(); a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = f.add(out[i + j], f.mul(x, y));
        }
    }
    out
}

fn poly_pow(f: &FieldSpec, base: &[FieldElement], mut e: u64) -> Vec<FieldElement> {
    let mut acc = vec![f.one()];
    let mut b = base.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_mul_field(f, &acc, &b);
        }
        e >>= 1;
        if e > 0 {
            b = poly_mul_field(f, &b, &b);
        }
    }
    acc
}

impl fmt::Display for WeierstrassCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{};{}", self.field, self.coefficient_string())
    }
}

/// Splits on commas that are not inside parentheses.
fn split_top_level(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

/// Parses a side of `y2+a1xy+a3y=x3+a2x2+a4x+a6` into (monomial, coefficient)
/// terms.
fn parse_terms(side: &str) -> Option<Vec<(String, i64)>> {
    let cleaned: String = side
        .chars()
        .filter(|c| !c.is_whitespace() && *c != '^' && *c != '*')
        .collect();
    if cleaned.is_empty() {
        return None;
    }
    let mut terms = Vec::new();
    let mut rest = cleaned.as_str();
    while !rest.is_empty() {
        let (sign, body) = match rest.as_bytes()[0] {
            b'+' => (1, &rest[1..]),
            b'-' => (-1, &rest[1..]),
            _ => (1, rest),
        };
        let end = body.find(['+', '-']).unwrap_or(body.len());
        let term = &body[..end];
        rest = &body[end..];
        let digits = term.chars().take_while(|c| c.is_ascii_digit()).count();
        let coeff = if digits == 0 {
            1
        } else {
            term[..digits].parse::<i64>().ok()?
        };
        let monomial = term[digits..].to_string();
        if term.is_empty() {
            return None;
        }
        terms.push((monomial, sign * coeff));
    }
    Some(terms)
}

fn parse_equation(field: &FieldSpec, eq: &str) -> Option<[FieldElement; 5]> {
    let (lhs, rhs) = eq.split_once('=')?;
    let mut a = [0i64; 5];
    let mut seen_y2 = false;
    let mut seen_x3 = false;
    for (mono, c) in parse_terms(lhs)? {
        match mono.as_str() {
            "y2" if c == 1 => seen_y2 = true,
            "xy" => a[0] += c,
            "y" => a[2] += c,
            _ => return None,
        }
    }
    for (mono, c) in parse_terms(rhs)? {
        match mono.as_str() {
            "x3" if c == 1 => seen_x3 = true,
            "x2" => a[1] += c,
            "x" => a[3] += c,
            "" => a[4] += c,
            _ => return None,
        }
    }
    if !(seen_y2 && seen_x3) {
        return None;
    }
    Some(a.map(|c| field.from_int(c)))
}

/// Text form `<fieldspec>;a1,a2,a3,a4,a6` where each coefficient is an
/// integer or a parenthesised coefficient list, or `<fieldspec>;<equation>`
/// such as `7^1;y2=x3+5x2+4x`.
impl FromStr for WeierstrassCurve {
    type Err = CurveError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || CurveError::Parse(s.to_string());
        let (field_text, coeff_text) = s.split_once(';').ok_or_else(bad)?;
        let field: FieldSpec = field_text.parse()?;
        let coeff_text = coeff_text.trim();
        let a = if coeff_text.starts_with('y') {
            parse_equation(&field, coeff_text).ok_or_else(bad)?
        } else {
            let parts = split_top_level(coeff_text);
            if parts.len() != 5 {
                return Err(bad());
            }
            let mut a = [field.zero(); 5];
            for (slot, part) in a.iter_mut().zip(parts) {
                *slot = field.parse_element(part)?;
            }
            a
        };
        WeierstrassCurve::new(field, a)
    }
}
