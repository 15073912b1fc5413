//! Finite abelian groups presented by invariant factors.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error("invariant factors must be positive")]
    ZeroFactor,
    #[error("invariant factors {0} and {1} do not form a divisibility chain")]
    NotAChain(u64, u64),
    #[error("cannot parse group {0:?}")]
    Parse(String),
}

/// `Z_{n_1} + ... + Z_{n_k}` with `n_1 | n_2 | ... | n_k` and every
/// `n_i >= 2`. The empty list is the trivial group.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct AbelianStructure {
    factors: Vec<u64>,
}

impl AbelianStructure {
    /// Validates a divisibility chain. Factors equal to 1 are dropped.
    pub fn new(factors: &[u64]) -> Result<Self, StructureError> {
        if factors.contains(&0) {
            return Err(StructureError::ZeroFactor);
        }
        let factors: Vec<u64> = factors.iter().copied().filter(|&f| f != 1).collect();
        for w in factors.windows(2) {
            if w[1] % w[0] != 0 {
                return Err(StructureError::NotAChain(w[0], w[1]));
            }
        }
        Ok(AbelianStructure { factors })
    }

    pub fn cyclic(n: u64) -> Self {
        Self::new(&[n]).expect("a single positive factor is a chain")
    }

    pub fn trivial() -> Self {
        AbelianStructure {
            factors: Vec::new(),
        }
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn order(&self) -> u64 {
        self.factors.iter().product()
    }

    pub fn is_cyclic(&self) -> bool {
        self.factors.len() <= 1
    }

    /// `(n1, n2)` for structures of rank at most two, with `n1 = 1` when
    /// cyclic.
    pub fn as_pair(&self) -> Option<(u64, u64)> {
        match self.factors.as_slice() {
            [] => Some((1, 1)),
            [n] => Some((1, *n)),
            [a, b] => Some((*a, *b)),
            _ => None,
        }
    }
}

impl fmt::Display for AbelianStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.factors.iter().map(|n| n.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl FromStr for AbelianStructure {
    type Err = StructureError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let factors = s
            .split(',')
            .map(|t| t.trim().parse::<u64>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| StructureError::Parse(s.to_string()))?;
        AbelianStructure::new(&factors)
    }
}
