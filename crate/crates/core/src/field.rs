//! Arithmetic in `F_p` and `F_{p^n}`.
//!
//! Elements of `F_{p^n}` are polynomials over `F_p` of degree `< n`, reduced
//! modulo a fixed monic irreducible polynomial. An element is stored as its
//! base-`p` encoding `c0 + c1*p + ... + c_{n-1}*p^{n-1}` (constant term least
//! significant), so the natural integer order on encodings is the canonical
//! enumeration order of the field.

use std::collections::hash_map::DefaultHasher;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;

use thiserror::Error;

/// Largest field size accepted by [`FieldSpec::new`].
pub const MAX_FIELD_SIZE: u64 = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus is not irreducible over F_{p}")]
    Reducible { p: u32 },
    #[error("modulus must be monic of degree {expected}")]
    BadModulus { expected: u32 },
    #[error("field of size {p}^{n} exceeds the cap 2^20")]
    TooLarge { p: u64, n: u32 },
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("elements belong to different fields")]
    SpecMismatch,
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("Legendre symbol is undefined in characteristic 2")]
    EvenCharacteristic,
    #[error("invalid field element: {0}")]
    BadElement(String),
    #[error("cannot parse field spec {0:?}")]
    Parse(String),
}

/// Opaque identity of a field model, shared by all of its elements.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldId(u64);

/// A finite field `F_q`, `q = p^n`, with a fixed polynomial basis.
#[derive(Debug, Clone)]
pub struct FieldSpec {
    p: u32,
    n: u32,
    q: u32,
    modulus: Vec<u32>,
    id: FieldId,
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.n == other.n && self.modulus == other.modulus
    }
}

impl Eq for FieldSpec {}

/// An element of some [`FieldSpec`].
///
/// Elements are small `Copy` values; every arithmetic entry point on
/// [`FieldSpec`] checks that its operands carry that spec's id.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement {
    value: u32,
    field: FieldId,
}

impl FieldElement {
    /// Base-`p` encoding of the element (constant term least significant).
    pub fn index(self) -> u32 {
        self.value
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    pub fn field_id(self) -> FieldId {
        self.field
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Neg,
}

pub fn is_prime(m: u64) -> bool {
    if m < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= m {
        if m.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn checked_power(p: u64, n: u32) -> Option<u64> {
    let mut q: u64 = 1;
    for _ in 0..n {
        q = q.checked_mul(p)?;
        if q > MAX_FIELD_SIZE {
            return None;
        }
    }
    Some(q)
}

// Dense polynomials over F_p, constant term first, no trailing zeros.

fn poly_trim(a: &mut Vec<u32>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn inv_mod_p(a: u32, p: u32) -> u32 {
    let (mut r0, mut r1) = (p as i64, a as i64);
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let k = r0 / r1;
        (r0, r1) = (r1, r0 - k * r1);
        (t0, t1) = (t1, t0 - k * t1);
    }
    debug_assert_eq!(r0, 1);
    t0.rem_euclid(p as i64) as u32
}

/// Returns the remainder of `a` divided by `b` (`b` nonzero, trimmed).
fn poly_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    poly_trim(&mut r);
    let db = b.len() - 1;
    let lead_inv = inv_mod_p(b[db], p) as u64;
    let p64 = p as u64;
    while r.len() > db {
        let dr = r.len() - 1;
        let factor = (r[dr] as u64 * lead_inv) % p64;
        let shift = dr - db;
        for (i, &bc) in b.iter().enumerate() {
            let sub = (factor * bc as u64) % p64;
            r[shift + i] = ((r[shift + i] as u64 + p64 - sub) % p64) as u32;
        }
        poly_trim(&mut r);
    }
    r
}

fn poly_divmod(a: &[u32], b: &[u32], p: u32) -> (Vec<u32>, Vec<u32>) {
    let mut r = a.to_vec();
    poly_trim(&mut r);
    let db = b.len() - 1;
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut quot = vec![0u32; r.len() - db];
    let lead_inv = inv_mod_p(b[db], p) as u64;
    let p64 = p as u64;
    while r.len() > db {
        let dr = r.len() - 1;
        let factor = (r[dr] as u64 * lead_inv) % p64;
        let shift = dr - db;
        quot[shift] = factor as u32;
        for (i, &bc) in b.iter().enumerate() {
            let sub = (factor * bc as u64) % p64;
            r[shift + i] = ((r[shift + i] as u64 + p64 - sub) % p64) as u32;
        }
        poly_trim(&mut r);
    }
    poly_trim(&mut quot);
    (quot, r)
}

fn poly_mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let p64 = p as u64;
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x as u64 * y as u64) % p64;
        }
    }
    let mut out: Vec<u32> = out.into_iter().map(|c| c as u32).collect();
    poly_trim(&mut out);
    out
}

fn poly_sub(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let len = a.len().max(b.len());
    let mut out: Vec<u32> = (0..len)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    poly_trim(&mut out);
    out
}

/// Irreducibility by exhaustive search for a monic divisor of degree `1..=n/2`.
fn is_irreducible(modulus: &[u32], p: u32) -> bool {
    let n = modulus.len() - 1;
    for d in 1..=n / 2 {
        let count = (p as u64).pow(d as u32);
        for code in 0..count {
            let mut divisor = Vec::with_capacity(d + 1);
            let mut c = code;
            for _ in 0..d {
                divisor.push((c % p as u64) as u32);
                c /= p as u64;
            }
            divisor.push(1);
            if poly_rem(modulus, &divisor, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// Smallest monic irreducible of degree `n` in the order of base-`p`
/// encodings of its lower coefficients.
fn default_modulus(p: u32, n: u32) -> Vec<u32> {
    if n == 1 {
        return vec![0, 1];
    }
    let count = (p as u64).pow(n);
    for code in 0..count {
        let mut poly = Vec::with_capacity(n as usize + 1);
        let mut c = code;
        for _ in 0..n {
            poly.push((c % p as u64) as u32);
            c /= p as u64;
        }
        poly.push(1);
        if poly[0] != 0 && is_irreducible(&poly, p) {
            return poly;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

impl FieldSpec {
    /// Builds `F_{p^n}`. With `modulus = None` the default model is used.
    pub fn new(p: u64, n: u32, modulus: Option<&[u64]>) -> Result<Self, FieldError> {
        if n == 0 {
            return Err(FieldError::ZeroDegree);
        }
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        let q = checked_power(p, n).ok_or(FieldError::TooLarge { p, n })?;
        let p32 = p as u32;
        let modulus = match modulus {
            None => default_modulus(p32, n),
            Some(coeffs) => {
                if coeffs.len() != n as usize + 1 || coeffs[n as usize] != 1 {
                    return Err(FieldError::BadModulus { expected: n });
                }
                if coeffs.iter().any(|&c| c >= p) {
                    return Err(FieldError::BadModulus { expected: n });
                }
                let m: Vec<u32> = coeffs.iter().map(|&c| c as u32).collect();
                if !is_irreducible(&m, p32) {
                    return Err(FieldError::Reducible { p: p32 });
                }
                m
            }
        };
        let mut hasher = DefaultHasher::new();
        (p32, n, &modulus).hash(&mut hasher);
        Ok(FieldSpec {
            p: p32,
            n,
            q: q as u32,
            modulus,
            id: FieldId(hasher.finish()),
        })
    }

    /// The prime field `F_p`.
    pub fn prime(p: u64) -> Result<Self, FieldError> {
        Self::new(p, 1, None)
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.n
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    /// Modulus coefficients, constant term first.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn id(&self) -> FieldId {
        self.id
    }

    fn elem(&self, value: u32) -> FieldElement {
        FieldElement {
            value,
            field: self.id,
        }
    }

    pub fn zero(&self) -> FieldElement {
        self.elem(0)
    }

    pub fn one(&self) -> FieldElement {
        self.elem(1)
    }

    /// The element with base-`p` encoding `index`.
    pub fn element(&self, index: u32) -> Result<FieldElement, FieldError> {
        if index >= self.q {
            return Err(FieldError::BadElement(format!(
                "index {index} out of range for field of size {}",
                self.q
            )));
        }
        Ok(self.elem(index))
    }

    /// The image of an integer in the prime subfield.
    pub fn from_int(&self, v: i64) -> FieldElement {
        self.elem(v.rem_euclid(self.p as i64) as u32)
    }

    /// Builds an element from coefficients (constant first); missing
    /// coefficients are zero and each entry is reduced mod `p`.
    pub fn from_coeffs(&self, coeffs: &[i64]) -> Result<FieldElement, FieldError> {
        if coeffs.len() > self.n as usize {
            return Err(FieldError::BadElement(format!(
                "{} coefficients given for a degree-{} extension",
                coeffs.len(),
                self.n
            )));
        }
        let digits: Vec<u32> = coeffs
            .iter()
            .map(|&c| c.rem_euclid(self.p as i64) as u32)
            .collect();
        Ok(self.elem(self.encode(&digits)))
    }

    /// Coefficients of `a` (exactly `n` of them, constant first).
    pub fn coeffs(&self, a: FieldElement) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.n as usize);
        let mut v = a.value;
        for _ in 0..self.n {
            out.push(v % self.p);
            v /= self.p;
        }
        out
    }

    fn encode(&self, digits: &[u32]) -> u32 {
        digits.iter().rev().fold(0u32, |acc, &d| acc * self.p + d)
    }

    fn check(&self, a: FieldElement) -> Result<(), FieldError> {
        if a.field == self.id {
            Ok(())
        } else {
            Err(FieldError::SpecMismatch)
        }
    }

    pub fn contains(&self, a: FieldElement) -> bool {
        a.field == self.id
    }

    pub fn arith(
        &self,
        op: FieldOp,
        a: FieldElement,
        b: FieldElement,
    ) -> Result<FieldElement, FieldError> {
        self.check(a)?;
        self.check(b)?;
        Ok(match op {
            FieldOp::Add => self.add(a, b),
            FieldOp::Sub => self.sub(a, b),
            FieldOp::Mul => self.mul(a, b),
            FieldOp::Neg => self.neg(a),
        })
    }

    // The unchecked operations below assume their operands belong to `self`;
    // callers inside the crate guarantee this by construction.

    pub(crate) fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        debug_assert!(self.contains(a) && self.contains(b));
        if self.n == 1 {
            return self.elem((a.value + b.value) % self.p);
        }
        let (mut x, mut y) = (a.value, b.value);
        let mut out = 0u32;
        let mut place = 1u32;
        for _ in 0..self.n {
            out += ((x % self.p + y % self.p) % self.p) * place;
            x /= self.p;
            y /= self.p;
            place = place.wrapping_mul(self.p);
        }
        self.elem(out)
    }

    pub(crate) fn neg(&self, a: FieldElement) -> FieldElement {
        if self.n == 1 {
            return self.elem((self.p - a.value) % self.p);
        }
        let mut x = a.value;
        let mut out = 0u32;
        let mut place = 1u32;
        for _ in 0..self.n {
            out += ((self.p - x % self.p) % self.p) * place;
            x /= self.p;
            place = place.wrapping_mul(self.p);
        }
        self.elem(out)
    }

    pub(crate) fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    pub(crate) fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        debug_assert!(self.contains(a) && self.contains(b));
        if self.n == 1 {
            return self.elem(((a.value as u64 * b.value as u64) % self.p as u64) as u32);
        }
        let n = self.n as usize;
        let p = self.p as u64;
        let x = self.coeffs(a);
        let y = self.coeffs(b);
        let mut prod = vec![0u64; 2 * n - 1];
        for i in 0..n {
            if x[i] == 0 {
                continue;
            }
            for j in 0..n {
                prod[i + j] = (prod[i + j] + x[i] as u64 * y[j] as u64) % p;
            }
        }
        // modulus is monic: x^n = -(m_0 + ... + m_{n-1} x^{n-1})
        for k in (n..2 * n - 1).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            prod[k] = 0;
            for i in 0..n {
                let m = self.modulus[i] as u64;
                prod[k - n + i] = (prod[k - n + i] + (p - (c * m) % p)) % p;
            }
        }
        let digits: Vec<u32> = prod[..n].iter().map(|&c| c as u32).collect();
        self.elem(self.encode(&digits))
    }

    pub(crate) fn square(&self, a: FieldElement) -> FieldElement {
        self.mul(a, a)
    }

    pub fn pow(&self, a: FieldElement, mut e: u64) -> FieldElement {
        let mut base = a;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse by the extended Euclidean algorithm on
    /// polynomials over `F_p`.
    pub fn inv(&self, a: FieldElement) -> Result<FieldElement, FieldError> {
        self.check(a)?;
        if a.is_zero() {
            return Err(FieldError::ZeroInverse);
        }
        if self.n == 1 {
            return Ok(self.elem(inv_mod_p(a.value, self.p)));
        }
        let p = self.p;
        let mut r0 = self.modulus.clone();
        let mut r1 = self.coeffs(a);
        poly_trim(&mut r1);
        let mut s0: Vec<u32> = Vec::new();
        let mut s1: Vec<u32> = vec![1];
        while !r1.is_empty() {
            let (quot, rem) = poly_divmod(&r0, &r1, p);
            let next = poly_sub(&s0, &poly_mul(&quot, &s1, p), p);
            r0 = std::mem::replace(&mut r1, rem);
            s0 = std::mem::replace(&mut s1, next);
        }
        // r0 is a nonzero constant since the modulus is irreducible
        debug_assert_eq!(r0.len(), 1);
        let scale = inv_mod_p(r0[0], p) as u64;
        let mut digits: Vec<u32> = s0
            .iter()
            .map(|&c| ((c as u64 * scale) % p as u64) as u32)
            .collect();
        digits.resize(self.n as usize, 0);
        Ok(self.elem(self.encode(&digits)))
    }

    pub(crate) fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement, FieldError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// Quadratic character: 0 for zero, 1 for nonzero squares, -1 otherwise.
    pub fn legendre(&self, a: FieldElement) -> Result<i8, FieldError> {
        self.check(a)?;
        if self.p == 2 {
            return Err(FieldError::EvenCharacteristic);
        }
        if a.is_zero() {
            return Ok(0);
        }
        let r = self.pow(a, (self.q as u64 - 1) / 2);
        Ok(if r == self.one() { 1 } else { -1 })
    }

    /// Absolute trace `F_q -> F_p`, returned as an integer residue.
    pub fn trace(&self, a: FieldElement) -> u32 {
        let mut acc = self.zero();
        let mut cur = a;
        for _ in 0..self.n {
            acc = self.add(acc, cur);
            cur = self.pow(cur, self.p as u64);
        }
        debug_assert!(acc.value < self.p);
        acc.value
    }

    /// All `q` elements in increasing encoding order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.q).map(move |v| self.elem(v))
    }

    /// Parses one element: an integer (mapped into the prime subfield) or a
    /// parenthesised coefficient list `(c0,c1,...)`.
    pub fn parse_element(&self, text: &str) -> Result<FieldElement, FieldError> {
        let t = text.trim();
        if let Some(inner) = t.strip_prefix('(').and_then(|s| s.strip_suffix(')')) {
            let coeffs = inner
                .split(',')
                .map(|c| c.trim().parse::<i64>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|_| FieldError::BadElement(t.to_string()))?;
            return self.from_coeffs(&coeffs);
        }
        t.parse::<i64>()
            .map(|v| self.from_int(v))
            .map_err(|_| FieldError::BadElement(t.to_string()))
    }

    /// Formats an element as an integer for prime fields, else `(c0,...)`.
    pub fn format_element(&self, a: FieldElement) -> String {
        if self.n == 1 {
            return a.value.to_string();
        }
        let parts: Vec<String> = self.coeffs(a).iter().map(|c| c.to_string()).collect();
        format!("({})", parts.join(","))
    }
}

/// `F_p` (n = 1) text form `p^n:c0,...,cn`; the `:...` suffix is optional.
impl FromStr for FieldSpec {
    type Err = FieldError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || FieldError::Parse(s.to_string());
        let (head, modulus) = match s.split_once(':') {
            Some((h, m)) => (h, Some(m)),
            None => (s, None),
        };
        let (p, n) = match head.trim().split_once('^') {
            Some((p, n)) => (
                p.trim().parse::<u64>().map_err(|_| bad())?,
                n.trim().parse::<u32>().map_err(|_| bad())?,
            ),
            None => (head.trim().parse::<u64>().map_err(|_| bad())?, 1),
        };
        match modulus {
            None => FieldSpec::new(p, n, None),
            Some(m) => {
                let coeffs = m
                    .split(',')
                    .map(|c| c.trim().parse::<u64>())
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|_| bad())?;
                FieldSpec::new(p, n, Some(&coeffs))
            }
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m: Vec<String> = self.modulus.iter().map(|c| c.to_string()).collect();
        write!(f, "{}^{}:{}", self.p, self.n, m.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(spec: &FieldSpec) -> FieldElement {
        spec.from_coeffs(&[0, 1]).unwrap()
    }

    #[test]
    fn make_prime_and_default_extension() {
        let f5 = FieldSpec::new(5, 1, None).unwrap();
        assert_eq!(f5.modulus(), &[0, 1]);
        assert_eq!(f5.order(), 5);

        let f8 = FieldSpec::new(2, 3, None).unwrap();
        assert_eq!(f8.modulus(), &[1, 1, 0, 1]);

        assert_eq!(FieldSpec::new(4, 1, None), Err(FieldError::NotPrime(4)));
        assert!(matches!(
            FieldSpec::new(2, 21, None),
            Err(FieldError::TooLarge { .. })
        ));
        assert!(matches!(
            FieldSpec::new(2, 2, Some(&[1, 0, 1])),
            Err(FieldError::Reducible { .. })
        ));
    }

    #[test]
    fn smallest_irreducible_cubic_by_enumeration() {
        // monic cubics over F_2 with nonzero constant term
        let candidates: [[u64; 4]; 4] = [[1, 0, 0, 1], [1, 1, 0, 1], [1, 0, 1, 1], [1, 1, 1, 1]];
        let irreducible: Vec<_> = candidates
            .iter()
            .filter(|m| {
                // a cubic is reducible iff it has a root
                !(0..2u64).any(|r| (m[0] + m[1] * r + m[2] * r * r + m[3] * r * r * r) % 2 == 0)
            })
            .collect();
        assert_eq!(irreducible, vec![&[1, 1, 0, 1], &[1, 0, 1, 1]]);
        let f8 = FieldSpec::new(2, 3, None).unwrap();
        assert_eq!(f8.modulus(), &[1u32, 1, 0, 1]);
    }

    #[test]
    fn arithmetic_examples() {
        let f5 = FieldSpec::prime(5).unwrap();
        let r = f5.arith(FieldOp::Mul, f5.from_int(2), f5.from_int(4)).unwrap();
        assert_eq!(r, f5.from_int(3));

        let f7 = FieldSpec::prime(7).unwrap();
        let r = f7.arith(FieldOp::Add, f7.from_int(6), f7.from_int(1)).unwrap();
        assert!(r.is_zero());
        assert_eq!(f7.inv(f7.from_int(3)).unwrap(), f7.from_int(5));

        let f8 = FieldSpec::new(2, 3, None).unwrap();
        let x2 = f8.from_coeffs(&[0, 0, 1]).unwrap();
        let r = f8.arith(FieldOp::Mul, x(&f8), x2).unwrap();
        assert_eq!(f8.coeffs(r), vec![1, 1, 0]);
        assert_eq!(f8.coeffs(f8.inv(x(&f8)).unwrap()), vec![1, 0, 1]);

        assert_eq!(f5.inv(f5.zero()), Err(FieldError::ZeroInverse));
        assert_eq!(
            f5.arith(FieldOp::Add, f5.one(), f7.one()),
            Err(FieldError::SpecMismatch)
        );
    }

    #[test]
    fn legendre_examples() {
        let f5 = FieldSpec::prime(5).unwrap();
        assert_eq!(f5.legendre(f5.from_int(4)), Ok(1));
        assert_eq!(f5.legendre(f5.from_int(3)), Ok(-1));
        assert_eq!(f5.legendre(f5.zero()), Ok(0));
        let f4 = FieldSpec::new(2, 2, None).unwrap();
        assert_eq!(f4.legendre(f4.one()), Err(FieldError::EvenCharacteristic));
    }

    #[test]
    fn enumeration_order() {
        let f3 = FieldSpec::prime(3).unwrap();
        let v: Vec<u32> = f3.elements().map(|e| e.index()).collect();
        assert_eq!(v, vec![0, 1, 2]);
        let f4 = FieldSpec::new(2, 2, None).unwrap();
        let c: Vec<Vec<u32>> = f4.elements().map(|e| f4.coeffs(e)).collect();
        assert_eq!(c, vec![vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 1]]);
        assert_eq!(FieldSpec::new(2, 3, None).unwrap().elements().count(), 8);
    }

    #[test]
    fn parse_and_display() {
        let f8: FieldSpec = "2^3:1,1,0,1".parse().unwrap();
        assert_eq!(f8, FieldSpec::new(2, 3, None).unwrap());
        assert_eq!(f8.to_string(), "2^3:1,1,0,1");
        let f5: FieldSpec = "5^1".parse().unwrap();
        assert_eq!(f5.order(), 5);
        assert!("2^3:1,0,0,1".parse::<FieldSpec>().is_err());
        assert!("abc".parse::<FieldSpec>().is_err());
        assert_eq!(f8.parse_element("(1,1)").unwrap().index(), 3);
        assert_eq!(f5.parse_element("-1").unwrap().index(), 4);
        assert_eq!(f8.format_element(f8.element(6).unwrap()), "(0,1,1)");
    }

    #[test]
    fn default_modulus_is_deterministic() {
        for (p, n) in [(2, 4), (3, 3), (5, 2), (7, 2), (2, 8)] {
            let a = FieldSpec::new(p, n, None).unwrap();
            let b = FieldSpec::new(p, n, None).unwrap();
            assert_eq!(a.modulus(), b.modulus());
            assert_eq!(a.id(), b.id());
        }
    }

    fn small_fields() -> Vec<FieldSpec> {
        let mut out = Vec::new();
        for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61] {
            let mut n = 1;
            while p.pow(n) <= 64 {
                out.push(FieldSpec::new(p, n, None).unwrap());
                n += 1;
            }
        }
        out
    }

    #[test]
    fn inverses_and_frobenius_exhaustive() {
        for f in small_fields() {
            for a in f.elements() {
                assert_eq!(f.pow(a, f.order() as u64), a, "Frobenius in {f}");
                if !a.is_zero() {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), f.one(), "inverse in {f}");
                }
            }
        }
    }

    #[test]
    fn half_the_units_are_squares() {
        for f in small_fields() {
            if f.characteristic() == 2 || f.order() > 49 {
                continue;
            }
            let squares = f
                .elements()
                .filter(|&a| f.legendre(a).unwrap() == 1)
                .count();
            assert_eq!(squares as u32, (f.order() - 1) / 2, "{f}");
        }
    }

    #[test]
    fn axioms_exhaustive_small() {
        for f in small_fields().into_iter().filter(|f| f.order() <= 16) {
            let els: Vec<_> = f.elements().collect();
            for &a in &els {
                for &b in &els {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    assert_eq!(f.sub(f.add(a, b), b), a);
                    for &c in &els {
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
    }
}
