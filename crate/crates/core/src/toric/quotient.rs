use std::fmt;
use std::str::FromStr;

use num::integer::gcd;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::{Error, Result};

/// A cyclic quotient datum `1/n(a_1, …, a_m)` with weights reduced mod `n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuotientType {
    n: u64,
    weights: Vec<u64>,
}

impl QuotientType {
    pub fn new(n: u64, weights: &[i64]) -> Result<Self> {
        if n == 0 {
            return Err(Error::Parse("quotient index must be positive".into()));
        }
        Ok(QuotientType {
            n,
            weights: weights.iter().map(|a| a.rem_euclid(n as i64) as u64).collect(),
        })
    }

    pub fn from_reduced(n: u64, weights: Vec<u64>) -> Self {
        assert!(n > 0);
        QuotientType {
            n,
            weights: weights.into_iter().map(|a| a % n).collect(),
        }
    }

    /// The trivial group acting on `m` coordinates.
    pub fn trivial(m: usize) -> Self {
        QuotientType {
            n: 1,
            weights: vec![0; m],
        }
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    pub fn arity(&self) -> usize {
        self.weights.len()
    }

    /// Order of the group actually acting: `n / gcd(n, a_1, …, a_m)`.
    pub fn effective_order(&self) -> u64 {
        self.n / self.weights.iter().fold(self.n, |g, &a| gcd(g, a))
    }

    /// Lexicographically least weight sequence over all coordinate
    /// permutations and all unit multiples mod `n`.
    pub fn normalize(&self) -> QuotientType {
        let n = self.n;
        let best = (1..=n.max(1))
            .filter(|&u| gcd(u, n) == 1)
            .map(|u| {
                let mut w: Vec<u64> = self
                    .weights
                    .iter()
                    .map(|&a| ((a as u128 * u as u128) % n as u128) as u64)
                    .collect();
                w.sort_unstable();
                w
            })
            .min()
            .unwrap_or_else(|| self.weights.clone());
        QuotientType { n, weights: best }
    }

    pub fn is_equivalent(&self, other: &QuotientType) -> bool {
        self.n == other.n && self.normalize() == other.normalize()
    }

    /// Reid–Tai ages of every nontrivial power of the generator.
    pub fn reid_tai(&self) -> ReidTai {
        let n = self.n;
        let mut terminal = true;
        let mut canonical = true;
        for k in 1..n {
            // n · age(g^k)
            let scaled: u64 = self.weights.iter().map(|&a| (k * a) % n).sum();
            terminal &= scaled > n;
            canonical &= scaled >= n;
        }
        ReidTai {
            terminal,
            canonical,
        }
    }
}

/// Outcome of the Reid–Tai criterion: terminal iff every nontrivial element
/// has age `> 1`, canonical iff every age is `≥ 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReidTai {
    pub terminal: bool,
    pub canonical: bool,
}

pub fn reid_tai_is_terminal(q: &QuotientType) -> bool {
    q.reid_tai().terminal
}

pub fn normalize_quotient_type(q: &QuotientType) -> QuotientType {
    q.normalize()
}

impl fmt::Display for QuotientType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w: Vec<String> = self.weights.iter().map(u64::to_string).collect();
        write!(f, "1/{}({})", self.n, w.join(","))
    }
}

impl FromStr for QuotientType {
    type Err = Error;

    /// `"1/n(a1,a2,…)"`, whitespace-insensitive; weights may be negative.
    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = |why: &str| Error::Parse(format!("quotient type `{s}`: {why}"));
        let rest = compact.strip_prefix("1/").ok_or_else(|| bad("expected `1/`"))?;
        let (n, rest) = rest.split_once('(').ok_or_else(|| bad("expected `(`"))?;
        let inner = rest.strip_suffix(')').ok_or_else(|| bad("expected `)`"))?;
        let n: u64 = n.parse().map_err(|_| bad("bad index"))?;
        let weights = if inner.is_empty() {
            Vec::new()
        } else {
            inner
                .split(',')
                .map(|w| w.parse::<i64>().map_err(|_| bad("bad weight")))
                .collect::<Result<Vec<_>>>()?
        };
        QuotientType::new(n, &weights).map_err(|_| bad("index must be positive"))
    }
}

impl Serialize for QuotientType {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for QuotientType {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
