//! Which orders `q + 1 - t` and which group structures occur for elliptic
//! curves over `F_q`.

use std::fmt;

use serde::Serialize;

use super::OrchardError;
use crate::field::{is_prime, FieldError, MAX_FIELD_SIZE};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AdmissibilityRule {
    /// `t != 0 mod p` and `t^2 <= 4q`.
    OrdinaryTrace,
    OddDegreeZeroTrace,
    /// `t^2 = 2q`, `p = 2`.
    OddDegreeTwiceQ,
    /// `t^2 = 3q`, `p = 3`.
    OddDegreeThriceQ,
    /// `t^2 = 4q`.
    EvenDegreeFourQ,
    /// `t^2 = q`, `p != 1 mod 3`.
    EvenDegreeQ,
    /// `t = 0`, `p != 1 mod 4`.
    EvenDegreeZeroTrace,
    /// Structure rule for `n` even and `t^2 = 4q`: `n1 = n2`.
    EqualFactors,
    /// Structure rule otherwise: `n1 | q - 1`.
    FactorDividesQMinusOne,
    NoClause,
}

impl fmt::Display for AdmissibilityRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Self::OrdinaryTrace => "t != 0 mod p, t^2 <= 4q",
            Self::OddDegreeZeroTrace => "n odd, t=0",
            Self::OddDegreeTwiceQ => "n odd, t^2=2q, p=2",
            Self::OddDegreeThriceQ => "n odd, t^2=3q, p=3",
            Self::EvenDegreeFourQ => "n even, t^2=4q",
            Self::EvenDegreeQ => "n even, t^2=q, p != 1 mod 3",
            Self::EvenDegreeZeroTrace => "n even, t=0, p != 1 mod 4",
            Self::EqualFactors => "n even, t^2=4q, n1=n2",
            Self::FactorDividesQMinusOne => "n1 | q-1",
            Self::NoClause => "none",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AdmissibilityVerdict {
    pub p: u64,
    pub n: u32,
    pub q: u64,
    pub t: i64,
    pub group: Option<(u64, u64)>,
    pub admissible: bool,
    pub rule_fired: AdmissibilityRule,
}

fn field_size(p: u64, n: u32) -> Result<u64, OrchardError> {
    if !is_prime(p) {
        return Err(FieldError::NotPrime(p).into());
    }
    if n == 0 {
        return Err(FieldError::ZeroDegree.into());
    }
    match p.checked_pow(n) {
        Some(q) if q <= MAX_FIELD_SIZE => Ok(q),
        _ => Err(FieldError::TooLarge { p, n }.into()),
    }
}

/// Existence of a curve over `F_{p^n}` with `q + 1 - t` points.
pub fn schoof_admissible(p: u64, n: u32, t: i64) -> Result<AdmissibilityVerdict, OrchardError> {
    use AdmissibilityRule::*;
    let q = field_size(p, n)?;
    let (qi, pi) = (q as i64, p as i64);
    let t2 = t * t;
    let rule = if t.rem_euclid(pi) != 0 {
        if t2 <= 4 * qi {
            OrdinaryTrace
        } else {
            NoClause
        }
    } else if n % 2 == 1 {
        if t == 0 {
            OddDegreeZeroTrace
        } else if t2 == 2 * qi && p == 2 {
            OddDegreeTwiceQ
        } else if t2 == 3 * qi && p == 3 {
            OddDegreeThriceQ
        } else {
            NoClause
        }
    } else if t2 == 4 * qi {
        EvenDegreeFourQ
    } else if t2 == qi && p % 3 != 1 {
        EvenDegreeQ
    } else if t == 0 && p % 4 != 1 {
        EvenDegreeZeroTrace
    } else {
        NoClause
    };
    Ok(AdmissibilityVerdict {
        p,
        n,
        q,
        t,
        group: None,
        admissible: rule != NoClause,
        rule_fired: rule,
    })
}

/// Existence of a curve over `F_{p^n}` with `E(F_q) = Z_{p^e} + Z_{n1} + Z_{n2}`
/// where `q + 1 - t = p^e n1 n2`, `p` coprime to `n1 n2` and `n1 | n2`.
pub fn ruck_admissible(
    p: u64,
    n: u32,
    t: i64,
    n1: u64,
    n2: u64,
) -> Result<AdmissibilityVerdict, OrchardError> {
    let schoof = schoof_admissible(p, n, t)?;
    let order = schoof.q as i64 + 1 - t;
    if !schoof.admissible {
        return Err(OrchardError::NotRealizableOrder(order));
    }
    if n1 == 0 || n2 == 0 || !n2.is_multiple_of(n1) {
        return Err(OrchardError::BadFactorization(format!(
            "n1 = {n1} must divide n2 = {n2}"
        )));
    }
    if (n1 * n2).is_multiple_of(p) {
        return Err(OrchardError::BadFactorization(format!(
            "p = {p} divides n1 n2 = {}",
            n1 * n2
        )));
    }
    let order = order as u64;
    if !order.is_multiple_of(n1 * n2) {
        return Err(OrchardError::BadFactorization(format!(
            "n1 n2 = {} does not divide N = {order}",
            n1 * n2
        )));
    }
    let mut p_part = order / (n1 * n2);
    while p_part.is_multiple_of(p) {
        p_part /= p;
    }
    if p_part != 1 {
        return Err(OrchardError::BadFactorization(format!(
            "N / (n1 n2) = {} is not a power of p = {p}",
            order / (n1 * n2)
        )));
    }
    let (rule, admissible) = if schoof.rule_fired == AdmissibilityRule::EvenDegreeFourQ {
        (AdmissibilityRule::EqualFactors, n1 == n2)
    } else {
        (
            AdmissibilityRule::FactorDividesQMinusOne,
            (schoof.q - 1) % n1 == 0,
        )
    };
    Ok(AdmissibilityVerdict {
        group: Some((n1, n2)),
        admissible,
        rule_fired: rule,
        ..schoof
    })
}
