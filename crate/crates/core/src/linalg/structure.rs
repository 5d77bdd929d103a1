use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::LinalgError;

/// Canonical form `Z^free_rank ⊕ Z/d₁ ⊕ … ⊕ Z/d_k` with `2 ≤ d₁ | d₂ | … | d_k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawStructure", into = "RawStructure")]
pub struct AbelianGroupStructure {
    free_rank: usize,
    invariant_factors: Vec<BigInt>,
}

impl AbelianGroupStructure {
    pub fn new(free_rank: usize, invariant_factors: Vec<BigInt>) -> Result<Self, LinalgError> {
        for (i, d) in invariant_factors.iter().enumerate() {
            let bad_size = *d < BigInt::from(2);
            let bad_chain = i > 0 && !d.is_multiple_of(&invariant_factors[i - 1]);
            if bad_size || bad_chain {
                return Err(LinalgError::InvalidInvariantFactors(
                    invariant_factors.iter().map(ToString::to_string).collect(),
                ));
            }
        }
        Ok(AbelianGroupStructure { free_rank, invariant_factors })
    }

    pub fn trivial() -> Self {
        AbelianGroupStructure { free_rank: 0, invariant_factors: Vec::new() }
    }

    pub fn free(rank: usize) -> Self {
        AbelianGroupStructure { free_rank: rank, invariant_factors: Vec::new() }
    }

    /// Normalizes an arbitrary direct sum of cyclic groups. Orders `0` count as
    /// free summands, orders `±1` are dropped.
    pub fn from_cyclic_orders<I>(free_rank: usize, orders: I) -> Self
    where
        I: IntoIterator<Item = BigInt>,
    {
        let mut free = free_rank;
        let mut fs: Vec<BigInt> = Vec::new();
        for o in orders {
            let o = o.abs();
            if o.is_zero() {
                free += 1;
            } else if !o.is_one() {
                fs.push(o);
            }
        }
        // pairwise (gcd, lcm) rewriting converges to the divisibility chain
        for i in 0..fs.len() {
            for j in i + 1..fs.len() {
                let g = fs[i].gcd(&fs[j]);
                let l = fs[i].lcm(&fs[j]);
                fs[i] = g;
                fs[j] = l;
            }
        }
        fs.retain(|d| !d.is_one());
        AbelianGroupStructure { free_rank: free, invariant_factors: fs }
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.invariant_factors
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.invariant_factors.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    /// Group order, `None` when infinite.
    pub fn order(&self) -> Option<BigInt> {
        self.is_finite().then(|| self.invariant_factors.iter().product())
    }

    /// Direct sum of two structures.
    pub fn direct_sum(&self, other: &Self) -> Self {
        Self::from_cyclic_orders(
            self.free_rank + other.free_rank,
            self.invariant_factors.iter().chain(&other.invariant_factors).cloned(),
        )
    }
}

impl fmt::Display for AbelianGroupStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.invariant_factors.iter().map(|d| format!("Z/{d}")));
        write!(f, "{}", parts.join(" + "))
    }
}

#[derive(Serialize, Deserialize)]
struct RawStructure {
    free_rank: usize,
    invariant_factors: Vec<String>,
}

impl From<AbelianGroupStructure> for RawStructure {
    fn from(s: AbelianGroupStructure) -> Self {
        RawStructure {
            free_rank: s.free_rank,
            invariant_factors: s.invariant_factors.iter().map(ToString::to_string).collect(),
        }
    }
}

impl TryFrom<RawStructure> for AbelianGroupStructure {
    type Error = LinalgError;

    fn try_from(raw: RawStructure) -> Result<Self, LinalgError> {
        let factors = raw
            .invariant_factors
            .iter()
            .map(|s| s.parse::<BigInt>().map_err(|_| LinalgError::InvalidInteger(s.clone())))
            .collect::<Result<Vec<_>, _>>()?;
        AbelianGroupStructure::new(raw.free_rank, factors)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn rejects_bad_chains() {
        assert!(AbelianGroupStructure::new(0, b(&[2, 3])).is_err());
        assert!(AbelianGroupStructure::new(0, b(&[1, 2])).is_err());
        assert!(AbelianGroupStructure::new(1, b(&[2, 4, 8])).is_ok());
    }

    #[test]
    fn normalizes_cyclic_orders() {
        let s = AbelianGroupStructure::from_cyclic_orders(0, b(&[2, 3]));
        assert_eq!(s.invariant_factors(), &b(&[6])[..]);
        let s = AbelianGroupStructure::from_cyclic_orders(0, b(&[4, 2, 1, 0, 6]));
        assert_eq!(s.free_rank(), 1);
        assert_eq!(s.invariant_factors(), &b(&[2, 2, 12])[..]);
    }

    #[test]
    fn display_and_serde() {
        let s = AbelianGroupStructure::new(2, b(&[2, 4])).unwrap();
        assert_eq!(s.to_string(), "Z^2 + Z/2 + Z/4");
        assert_eq!(AbelianGroupStructure::trivial().to_string(), "0");
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(json, r#"{"free_rank":2,"invariant_factors":["2","4"]}"#);
        let back: AbelianGroupStructure = serde_json::from_str(&json).unwrap();
        assert_eq!(back, s);
        assert!(serde_json::from_str::<AbelianGroupStructure>(
            r#"{"free_rank":0,"invariant_factors":["4","2"]}"#
        )
        .is_err());
    }
}
