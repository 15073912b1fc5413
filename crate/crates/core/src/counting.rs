//! Unordered solutions of `x + y + z = 0` with pairwise distinct terms in a
//! finite abelian group, and the Green–Tao line count it is compared with.

use serde::Serialize;
use thiserror::Error;

use crate::abelian::AbelianStructure;

/// Largest group handled by the exhaustive counter.
pub const MAX_BRUTEFORCE_ORDER: u64 = 500;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CountingError {
    #[error("6 does not divide {numerator}; psi is inconsistent with the group")]
    NonInteger { numerator: i128 },
    #[error("group of order {0} exceeds the brute-force cap {MAX_BRUTEFORCE_ORDER}")]
    TooLarge(u64),
    #[error("the Green-Tao bound needs at least 3 points, got {0}")]
    TooSmall(u64),
    #[error("structure of rank {0} cannot come from an elliptic curve")]
    RankTooHigh(usize),
}

/// Number of invariant factors divisible by 3, i.e. `log_3 |G[3]|`.
pub fn psi(group: &AbelianStructure) -> u32 {
    group.factors().iter().filter(|&&n| n % 3 == 0).count() as u32
}

/// `k - j` where `j` is the first index with `3 | n_j`, the value obtained
/// by reading the exponent literally as an index difference. Kept only for
/// diagnostics; it undercounts by one whenever `3 | n_k`.
pub fn psi_index_difference(group: &AbelianStructure) -> u32 {
    let k = group.rank();
    match group.factors().iter().position(|&n| n % 3 == 0) {
        None => 0,
        Some(pos) => (k - (pos + 1)) as u32,
    }
}

fn formula_with_psi(group: &AbelianStructure, psi: u32) -> Result<u64, CountingError> {
    let n = group.order() as i128;
    let numerator = n * n - 3 * n + 2 * 3i128.pow(psi);
    if numerator % 6 != 0 {
        return Err(CountingError::NonInteger { numerator });
    }
    Ok((numerator / 6) as u64)
}

/// `(|G|^2 - 3|G| + 2 * 3^psi) / 6`.
pub fn count_3rich_formula(group: &AbelianStructure) -> Result<u64, CountingError> {
    formula_with_psi(group, psi(group))
}

/// The same closed form evaluated with [`psi_index_difference`].
pub fn count_3rich_formula_index_difference(
    group: &AbelianStructure,
) -> Result<u64, CountingError> {
    formula_with_psi(group, psi_index_difference(group))
}

/// Exhaustive count over pairs of elements written as residue tuples.
pub fn count_3rich_bruteforce(group: &AbelianStructure) -> Result<u64, CountingError> {
    let order = group.order();
    if order > MAX_BRUTEFORCE_ORDER {
        return Err(CountingError::TooLarge(order));
    }
    let moduli = group.factors();
    let decode = |mut idx: u64| -> Vec<u64> {
        moduli
            .iter()
            .map(|&m| {
                let r = idx % m;
                idx /= m;
                r
            })
            .collect()
    };
    let encode = |residues: &[u64]| -> u64 {
        residues
            .iter()
            .zip(moduli)
            .rev()
            .fold(0, |acc, (&r, &m)| acc * m + r)
    };
    let elements: Vec<Vec<u64>> = (0..order).map(decode).collect();
    let mut count = 0u64;
    for (i, x) in elements.iter().enumerate() {
        for (j, y) in elements.iter().enumerate().skip(i + 1) {
            let z: Vec<u64> = x
                .iter()
                .zip(y)
                .zip(moduli)
                .map(|((&a, &b), &m)| (2 * m - a - b) % m)
                .collect();
            if encode(&z) > j as u64 {
                count += 1;
            }
        }
    }
    Ok(count)
}

/// `floor(N(N-3)/6) + 1`.
pub fn green_tao_bound(n: u64) -> Result<u64, CountingError> {
    if n < 3 {
        return Err(CountingError::TooSmall(n));
    }
    Ok(n * (n - 3) / 6 + 1)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SolutionCount {
    pub group: AbelianStructure,
    pub formula_count: u64,
    pub bound: u64,
    pub excess: i64,
}

/// Compares the closed-form count of a rank-≤2 group with the Green–Tao
/// bound for `N = |G|`.
pub fn classify_excess(group: &AbelianStructure) -> Result<SolutionCount, CountingError> {
    if group.rank() > 2 {
        return Err(CountingError::RankTooHigh(group.rank()));
    }
    let formula_count = count_3rich_formula(group)?;
    let bound = green_tao_bound(group.order())?;
    Ok(SolutionCount {
        group: group.clone(),
        formula_count,
        bound,
        excess: formula_count as i64 - bound as i64,
    })
}

/// Every invariant-factor chain of order at most `max_order` with at most
/// `max_rank` factors, in lexicographic order of factor lists.
pub fn all_structures(max_order: u64, max_rank: usize) -> Vec<AbelianStructure> {
    fn extend(
        prefix: &mut Vec<u64>,
        product: u64,
        max_order: u64,
        max_rank: usize,
        out: &mut Vec<AbelianStructure>,
    ) {
        out.push(AbelianStructure::new(prefix).expect("chain by construction"));
        if prefix.len() == max_rank {
            return;
        }
        let start = prefix.last().copied().unwrap_or(2);
        let mut next = start;
        while product * next <= max_order {
            if prefix.is_empty() || next % start == 0 {
                prefix.push(next);
                extend(prefix, product * next, max_order, max_rank, out);
                prefix.pop();
            }
            next += 1;
        }
    }
    let mut out = Vec::new();
    extend(&mut Vec::new(), 1, max_order, max_rank, &mut out);
    out
}
