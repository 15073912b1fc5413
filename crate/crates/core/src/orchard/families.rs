//! Named curve families with known group orders and structures, and an
//! exhaustive witness search for curves with a prescribed order.

use std::fmt;
use std::str::FromStr;

use super::{exact_sqrt, OrchardError};
use crate::abelian::AbelianStructure;
use crate::curve::WeierstrassCurve;
use crate::field::{FieldElement, FieldSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// `y^2 = x^3 + b`, `q = 2 mod 3` odd: `Z_{q+1}`.
    MordellB(i64),
    /// `y^2 = x^3 - x`, `q = 3 mod 4`: `Z_{(q+1)/2} + Z_2`.
    MinusX,
    /// `y^2 = x^3 + x`, `q = 3 mod 4`: `Z_{q+1}`.
    PlusX,
    /// `y^2 + y = x^3`, `q = 2^n`, `n` odd: cyclic of order `q + 1`.
    Char2Cyclic,
    /// `y^2 + y = x^3 + x`, `n` odd.
    Char2XA,
    /// `y^2 + y = x^3 + x + 1`, `n` odd.
    Char2XB,
    /// `y^2 + y = x^3 + delta x`, `n` even.
    Char2Delta,
    /// `y^2 + gamma y = x^3`, `n` even.
    Char2Gamma,
    /// `y^2 + gamma y = x^3 + alpha`, `n` even.
    Char2GammaAlpha,
    /// `y^2 + gamma^2 y = x^3`, `n` even.
    Char2GammaSq,
    /// `y^2 + gamma^2 y = x^3 + beta`, `n` even.
    Char2GammaSqBeta,
    /// `y^2 + y = x^3`, `n` even: `Z_m + Z_m`, `m = sqrt(q) -+ 1`.
    Char2Square,
    /// `y^2 + y = x^3 + omega`, `n` even: `Z_m + Z_m`, `m = sqrt(q) +- 1`.
    Char2SquareOmega,
}

impl Family {
    pub const NAMES: [&'static str; 13] = [
        "mordell_b",
        "minus_x",
        "plus_x",
        "char2_cyclic",
        "char2_xa",
        "char2_xb",
        "char2_delta",
        "char2_gamma",
        "char2_gamma_alpha",
        "char2_gamma2",
        "char2_gamma2_beta",
        "char2_square",
        "char2_square_omega",
    ];

    fn name(&self) -> &'static str {
        let idx = match self {
            Family::MordellB(_) => 0,
            Family::MinusX => 1,
            Family::PlusX => 2,
            Family::Char2Cyclic => 3,
            Family::Char2XA => 4,
            Family::Char2XB => 5,
            Family::Char2Delta => 6,
            Family::Char2Gamma => 7,
            Family::Char2GammaAlpha => 8,
            Family::Char2GammaSq => 9,
            Family::Char2GammaSqBeta => 10,
            Family::Char2Square => 11,
            Family::Char2SquareOmega => 12,
        };
        Self::NAMES[idx]
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::MordellB(b) => write!(f, "mordell_b:{b}"),
            other => f.write_str(other.name()),
        }
    }
}

/// `mordell_b:<b>` or one of [`Family::NAMES`].
impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if let Some(b) = s.strip_prefix("mordell_b:") {
            return b
                .parse()
                .map(Family::MordellB)
                .map_err(|_| format!("bad parameter in {s:?}"));
        }
        Ok(match s {
            "minus_x" => Family::MinusX,
            "plus_x" => Family::PlusX,
            "char2_cyclic" => Family::Char2Cyclic,
            "char2_xa" => Family::Char2XA,
            "char2_xb" => Family::Char2XB,
            "char2_delta" => Family::Char2Delta,
            "char2_gamma" => Family::Char2Gamma,
            "char2_gamma_alpha" => Family::Char2GammaAlpha,
            "char2_gamma2" => Family::Char2GammaSq,
            "char2_gamma2_beta" => Family::Char2GammaSqBeta,
            "char2_square" => Family::Char2Square,
            "char2_square_omega" => Family::Char2SquareOmega,
            _ => return Err(format!("unknown family {s:?}")),
        })
    }
}

/// What a family is known to produce over a given field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyExpectation {
    /// The order used as the search target and checked against the count.
    pub order: u64,
    /// Group model, where one is known (cyclic families give `[order]`).
    pub structure: Option<AbelianStructure>,
    /// The order formula as tabulated.
    pub printed_order: &'static str,
    /// Set when the tabulated order disagrees with the group model; the
    /// model order is used instead.
    pub note: Option<String>,
}

fn violated(family: Family, condition: &str) -> OrchardError {
    OrchardError::CongruenceViolated {
        family: family.to_string(),
        condition: condition.to_string(),
    }
}

fn cyclic(order: u64, printed: &'static str) -> FamilyExpectation {
    FamilyExpectation {
        order,
        structure: Some(AbelianStructure::cyclic(order)),
        printed_order: printed,
        note: None,
    }
}

pub fn family_expectation(
    family: Family,
    field: &FieldSpec,
) -> Result<FamilyExpectation, OrchardError> {
    let p = field.characteristic() as u64;
    let n = field.degree();
    let q = field.order() as u64;
    match family {
        Family::MordellB(b) => {
            if p == 2 || q % 3 != 2 {
                return Err(violated(family, "q odd and q = 2 mod 3"));
            }
            if b.rem_euclid(p as i64) == 0 {
                return Err(violated(family, "b != 0"));
            }
            Ok(cyclic(q + 1, "q+1"))
        }
        Family::MinusX | Family::PlusX => {
            if q % 4 != 3 {
                return Err(violated(family, "q = 3 mod 4"));
            }
            if family == Family::PlusX {
                return Ok(cyclic(q + 1, "q+1"));
            }
            Ok(FamilyExpectation {
                order: q + 1,
                structure: Some(AbelianStructure::new(&[2, q.div_ceil(2)])?),
                printed_order: "q+1",
                note: None,
            })
        }
        Family::Char2Cyclic | Family::Char2XA | Family::Char2XB => {
            if p != 2 || n.is_multiple_of(2) {
                return Err(violated(family, "q = 2^n with n odd"));
            }
            let s = exact_sqrt(2 * q).expect("2q is a square for odd n");
            let plus = matches!(n % 8, 1 | 7);
            Ok(match family {
                Family::Char2Cyclic => cyclic(q + 1, "q+1"),
                Family::Char2XA if plus => cyclic(q + 1 + s, "q+1+sqrt(2q)"),
                Family::Char2XA => cyclic(q + 1 - s, "q+1-sqrt(2q)"),
                Family::Char2XB if plus => cyclic(q + 1 - s, "q+1-sqrt(2q)"),
                _ => cyclic(q + 1 + s, "q+1+sqrt(2q)"),
            })
        }
        _ => {
            if p != 2 || n % 2 == 1 {
                return Err(violated(family, "q = 2^n with n even"));
            }
            let s = exact_sqrt(q).expect("q is a square for even n");
            let zero_mod_four = n.is_multiple_of(4);
            let plus_minus = |plus: bool, text_plus, text_minus| {
                if plus {
                    cyclic(q + 1 + s, text_plus)
                } else {
                    cyclic(q + 1 - s, text_minus)
                }
            };
            Ok(match family {
                Family::Char2Delta => cyclic(q + 1, "q+1"),
                Family::Char2Gamma | Family::Char2GammaSq => {
                    plus_minus(zero_mod_four, "q+1+sqrt(q)", "q+1-sqrt(q)")
                }
                Family::Char2GammaAlpha | Family::Char2GammaSqBeta => {
                    plus_minus(!zero_mod_four, "q+1+sqrt(q)", "q+1-sqrt(q)")
                }
                _ => {
                    // the tabulated orders q+1 -+ sqrt(2q) are not even
                    // integers here; the group model Z_m + Z_m is used
                    let minus = (family == Family::Char2Square) == zero_mod_four;
                    let (m, printed) = if minus {
                        (s - 1, "q+1-sqrt(2q)")
                    } else {
                        (s + 1, "q+1+sqrt(2q)")
                    };
                    FamilyExpectation {
                        order: m * m,
                        structure: Some(AbelianStructure::new(&[m, m])?),
                        printed_order: printed,
                        note: Some(format!(
                            "tabulated order {printed} contradicts the group model Z_{m}+Z_{m}; \
                             using order {}",
                            m * m
                        )),
                    }
                }
            })
        }
    }
}

/// Searches `params` (first parameter outermost, deterministic field order)
/// for the first nonsingular curve with the expected order.
fn search<const K: usize>(
    family: Family,
    field: &FieldSpec,
    target: u64,
    build: impl Fn([FieldElement; K]) -> [FieldElement; 5],
) -> Result<WeierstrassCurve, OrchardError> {
    let q = field.order();
    let total = (q as u64).pow(K as u32);
    for code in 0..total {
        let mut c = code;
        let mut params = [field.zero(); K];
        for slot in params.iter_mut().rev() {
            *slot = field.element((c % q as u64) as u32)?;
            c /= q as u64;
        }
        if let Ok(curve) = WeierstrassCurve::new(field.clone(), build(params)) {
            if curve.order() == target {
                return Ok(curve);
            }
        }
    }
    Err(OrchardError::NoParameterFound {
        family: family.to_string(),
        q,
        target,
    })
}

pub fn construct_family(family: Family, field: &FieldSpec) -> Result<WeierstrassCurve, OrchardError> {
    let expected = family_expectation(family, field)?;
    let f = field;
    let (z, one) = (f.zero(), f.one());
    let fixed = |a: [i64; 5]| -> Result<WeierstrassCurve, OrchardError> {
        Ok(WeierstrassCurve::from_ints(f.clone(), a)?)
    };
    let target = expected.order;
    match family {
        Family::MordellB(b) => fixed([0, 0, 0, 0, b]),
        Family::MinusX => fixed([0, 0, 0, -1, 0]),
        Family::PlusX => fixed([0, 0, 0, 1, 0]),
        Family::Char2Cyclic | Family::Char2Square => fixed([0, 0, 1, 0, 0]),
        Family::Char2XA => fixed([0, 0, 1, 1, 0]),
        Family::Char2XB => fixed([0, 0, 1, 1, 1]),
        Family::Char2Delta => search(family, f, target, |[d]| [z, z, one, d, z]),
        Family::Char2Gamma => search(family, f, target, |[g]| [z, z, g, z, z]),
        Family::Char2GammaAlpha => search(family, f, target, |[g, a]| [z, z, g, z, a]),
        Family::Char2GammaSq => search(family, f, target, |[g]| [z, z, f.square(g), z, z]),
        Family::Char2GammaSqBeta => {
            search(family, f, target, |[g, b]| [z, z, f.square(g), z, b])
        }
        Family::Char2SquareOmega => search(family, f, target, |[w]| [z, z, one, z, w]),
    }
}

/// Coefficient tuples covering every isomorphism class of curves over
/// `field`, in a fixed order: `y^2 = x^3 + Ax + B` for `p > 3`,
/// `y^2 = x^3 + a2 x^2 + a4 x + a6` for `p = 3`, and for `p = 2` first
/// `y^2 + a3 y = x^3 + a4 x + a6` then `y^2 + xy = x^3 + a2 x^2 + a6`.
/// Singular tuples are skipped.
pub fn iso_covering_curves(field: &FieldSpec) -> impl Iterator<Item = WeierstrassCurve> + '_ {
    let els: Vec<FieldElement> = field.elements().collect();
    let (z, one) = (field.zero(), field.one());
    let mut tuples: Vec<[FieldElement; 5]> = Vec::new();
    match field.characteristic() {
        2 => {
            for &a3 in &els {
                for &a4 in &els {
                    for &a6 in &els {
                        tuples.push([z, z, a3, a4, a6]);
                    }
                }
            }
            for &a2 in &els {
                for &a6 in &els {
                    tuples.push([one, a2, z, z, a6]);
                }
            }
        }
        3 => {
            for &a2 in &els {
                for &a4 in &els {
                    for &a6 in &els {
                        tuples.push([z, a2, z, a4, a6]);
                    }
                }
            }
        }
        _ => {
            for &a in &els {
                for &b in &els {
                    tuples.push([z, z, z, a, b]);
                }
            }
        }
    }
    tuples
        .into_iter()
        .filter_map(move |a| WeierstrassCurve::new(field.clone(), a).ok())
}

/// First curve in [`iso_covering_curves`] order with `order` points and,
/// if given, the given group structure.
pub fn find_curve(
    field: &FieldSpec,
    order: u64,
    structure: Option<&AbelianStructure>,
) -> Result<Option<WeierstrassCurve>, OrchardError> {
    for curve in iso_covering_curves(field) {
        if curve.order() != order {
            continue;
        }
        match structure {
            None => return Ok(Some(curve)),
            Some(s) if &curve.group_structure()? == s => return Ok(Some(curve)),
            Some(_) => {}
        }
    }
    Ok(None)
}
