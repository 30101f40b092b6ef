//! Lattice sets `N_i^j` and the dimension recursion of the bi-graded ring
//! `⊕ V_i^j` attached to a cD/2 contraction with discrepancy two.
//!
//! `N_i` is the set of `(l1, …, l5) ∈ Z_{≥0}^5` with `l1, l2 ≤ 1` and
//! `((r+1)/2)·l1 + ((r−1)/2)·l2 + 2·l3 + l4 + r·l5 = i`; `N_i^j` is the slice
//! with `l1 + l2 + l3 ≡ j (mod 2)`, and `dim V_i^j = #N_i^j`.

use std::collections::BTreeMap;
use std::fmt;

use num::Zero;
use serde::{Deserialize, Serialize};

use crate::rational::{format_q, frac, q, Q};
use crate::{Error, Result};

/// Rejects even `r` and `r < 7`.
pub fn check_r(r: i64) -> Result<()> {
    if r < 7 {
        return Err(Error::InvalidR {
            r,
            reason: "must be at least 7",
        });
    }
    if r % 2 == 0 {
        return Err(Error::InvalidR {
            r,
            reason: "must be odd",
        });
    }
    Ok(())
}

/// The degree weights `((r+1)/2, (r−1)/2, 2, 1, r)` of `x1, …, x5`.
pub fn degree_weights(r: i64) -> [i64; 5] {
    [(r + 1) / 2, (r - 1) / 2, 2, 1, r]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct NiPoint {
    pub l1: u64,
    pub l2: u64,
    pub l3: u64,
    pub l4: u64,
    pub l5: u64,
}

impl NiPoint {
    pub fn new(l: [u64; 5]) -> Self {
        NiPoint {
            l1: l[0],
            l2: l[1],
            l3: l[2],
            l4: l[3],
            l5: l[4],
        }
    }

    pub fn exponents(&self) -> [u64; 5] {
        [self.l1, self.l2, self.l3, self.l4, self.l5]
    }

    /// `l1 + l2 + l3 mod 2`.
    pub fn parity(&self) -> u8 {
        ((self.l1 + self.l2 + self.l3) % 2) as u8
    }

    pub fn degree(&self, r: i64) -> i64 {
        degree_weights(r)
            .iter()
            .zip(self.exponents())
            .map(|(w, l)| w * l as i64)
            .sum()
    }
}

impl fmt::Display for NiPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({},{},{},{},{})",
            self.l1, self.l2, self.l3, self.l4, self.l5
        )
    }
}

/// All points of `N_i`, sorted. Empty for negative `i`.
pub fn enumerate_ni(r: i64, i: i64) -> Result<Vec<NiPoint>> {
    check_r(r)?;
    let mut points = Vec::new();
    if i < 0 {
        return Ok(points);
    }
    let [w1, w2, _, _, _] = degree_weights(r);
    for l1 in 0..=1 {
        for l2 in 0..=1 {
            let rest = i - w1 * l1 - w2 * l2;
            if rest < 0 {
                continue;
            }
            for l5 in 0..=rest / r {
                let rest5 = rest - r * l5;
                for l3 in 0..=rest5 / 2 {
                    let l4 = rest5 - 2 * l3;
                    points.push(NiPoint::new([
                        l1 as u64, l2 as u64, l3 as u64, l4 as u64, l5 as u64,
                    ]));
                }
            }
        }
    }
    points.sort();
    Ok(points)
}

/// The parity-`j` slice `N_i^j`.
pub fn enumerate_nij(r: i64, i: i64, j: u8) -> Result<Vec<NiPoint>> {
    check_parity(j)?;
    Ok(enumerate_ni(r, i)?
        .into_iter()
        .filter(|p| p.parity() == j)
        .collect())
}

fn check_parity(j: u8) -> Result<()> {
    if j > 1 {
        return Err(Error::Precondition(format!("parity must be 0 or 1, got {j}")));
    }
    Ok(())
}

/// `dim V_i^j = #N_i^j`.
pub fn dim_v(r: i64, i: i64, j: u8) -> Result<usize> {
    Ok(enumerate_nij(r, i, j)?.len())
}

/// Counts the points of `N_i^j` with `l3 = 0` and the given `(l1, l2)`.
fn boundary_count(r: i64, i: i64, j: u8, l1: u64, l2: u64) -> Result<usize> {
    Ok(enumerate_nij(r, i, j)?
        .iter()
        .filter(|p| p.l1 == l1 && p.l2 == l2 && p.l3 == 0)
        .count())
}

/// Both sides of the set decomposition
/// `N_i^j = (N_{i−2}^{1−j} + (0,0,1,0,0)) ⊔ {l3 = 0}`, counted.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DecompositionCounts {
    /// `#N_i^j − #N_{i−2}^{1−j}`
    pub difference: i64,
    /// The two displayed boundary counts, summed.
    pub boundary: i64,
}

pub fn decomposition_counts(r: i64, i: i64, j: u8) -> Result<DecompositionCounts> {
    check_parity(j)?;
    if i < 0 {
        return Err(Error::Precondition(format!("i must be non-negative, got {i}")));
    }
    let difference = dim_v(r, i, j)? as i64 - dim_v(r, i - 2, 1 - j)? as i64;
    let boundary = if j == 0 {
        boundary_count(r, i, 0, 0, 0)? + boundary_count(r, i, 0, 1, 1)?
    } else {
        boundary_count(r, i, 1, 0, 1)? + boundary_count(r, i, 1, 1, 0)?
    };
    Ok(DecompositionCounts {
        difference,
        boundary: boundary as i64,
    })
}

pub fn check_decomposition(r: i64, i: i64, j: u8) -> Result<bool> {
    let c = decomposition_counts(r, i, j)?;
    Ok(c.difference == c.boundary)
}

/// `Δ(i, j) = #N_i^j − #N_{i−2}^{1−j} − (2i+1)/r`.
pub fn delta(r: i64, i: i64, j: u8) -> Result<Q> {
    let c = decomposition_counts(r, i, j)?;
    Ok(q(c.difference) - frac(2 * i + 1, r))
}

/// The residue `(2i + r·j) mod 2r` that keys `Δ(i, j)`.
pub fn delta_key(r: i64, i: i64, j: u8) -> u64 {
    (2 * i + r * j as i64).rem_euclid(2 * r) as u64
}

/// Differences of the periodic correction term, one per residue mod `2r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeltaProfile {
    pub r: i64,
    pub delta: BTreeMap<u64, Q>,
}

impl DeltaProfile {
    pub fn new(r: i64, delta: BTreeMap<u64, Q>) -> Self {
        DeltaProfile { r, delta }
    }

    /// Sum of `delta` over the orbit of `start` under `k ↦ k + 2` in `Z/2r`.
    pub fn orbit_sum(&self, start: u64) -> Result<Q> {
        let modulus = 2 * self.r as u64;
        let mut sum = Q::zero();
        let mut k = start % modulus;
        for _ in 0..self.r {
            sum += self.get(k)?;
            k = (k + 2) % modulus;
        }
        Ok(sum)
    }

    fn get(&self, k: u64) -> Result<&Q> {
        self.delta
            .get(&k)
            .ok_or_else(|| Error::Precondition(format!("residue {k} is not witnessed")))
    }
}

/// Collects `Δ(i, j)` for `2 ≤ i ≤ i_max` keyed by residue, failing on the
/// first residue that receives two different values.
pub fn delta_profile(r: i64, i_max: i64) -> Result<DeltaProfile> {
    check_r(r)?;
    if i_max < 2 * r {
        return Err(Error::Precondition(format!(
            "i_max = {i_max} must be at least 2r = {}",
            2 * r
        )));
    }
    let mut map: BTreeMap<u64, Q> = BTreeMap::new();
    for i in 2..=i_max {
        for j in 0..=1u8 {
            let key = delta_key(r, i, j);
            let value = delta(r, i, j)?;
            match map.get(&key) {
                Some(prev) if *prev != value => {
                    return Err(Error::WellDefinedness {
                        key,
                        first: crate::rational::format_q(prev),
                        second: crate::rational::format_q(&value),
                    })
                }
                Some(_) => {}
                None => {
                    map.insert(key, value);
                }
            }
        }
    }
    Ok(DeltaProfile::new(r, map))
}

/// Reconstructs `B` on `Z/2r` from `B(k+2) − B(k) = delta(k)`, normalized by
/// `B(0) = B(1) = 0`.
pub fn solve_b(profile: &DeltaProfile) -> Result<BTreeMap<u64, Q>> {
    let modulus = 2 * profile.r as u64;
    let mut b = BTreeMap::new();
    for start in 0..2u64 {
        let mut k = start;
        let mut value = Q::zero();
        for _ in 0..profile.r {
            b.insert(k, value.clone());
            value += profile.get(k)?;
            k = (k + 2) % modulus;
        }
        if !value.is_zero() {
            return Err(Error::Inconsistency {
                start,
                sum: crate::rational::format_q(&value),
            });
        }
    }
    Ok(b)
}

/// `dim V_i^j` for `0 ≤ i ≤ i_max`, `j ∈ {0, 1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DimensionTable {
    pub r: i64,
    pub rows: BTreeMap<(i64, u8), usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct DimRow {
    i: i64,
    j: u8,
    dim: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct DimTableJson {
    r: i64,
    dims: Vec<DimRow>,
}

impl DimensionTable {
    pub fn build(r: i64, i_max: i64) -> Result<Self> {
        check_r(r)?;
        let mut rows = BTreeMap::new();
        for i in 0..=i_max {
            for j in 0..=1u8 {
                rows.insert((i, j), dim_v(r, i, j)?);
            }
        }
        Ok(DimensionTable { r, rows })
    }

    pub fn get(&self, i: i64, j: u8) -> Option<usize> {
        self.rows.get(&(i, j)).copied()
    }

    /// `{"r":7,"dims":[{"i":0,"j":0,"dim":1},…]}`
    pub fn to_json(&self) -> serde_json::Value {
        let dims = self
            .rows
            .iter()
            .map(|(&(i, j), &dim)| DimRow { i, j, dim })
            .collect();
        serde_json::to_value(DimTableJson { r: self.r, dims }).expect("plain data")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let t: DimTableJson = serde_json::from_value(value.clone())
            .map_err(|e| Error::Parse(format!("dimension table: {e}")))?;
        Ok(DimensionTable {
            r: t.r,
            rows: t.dims.into_iter().map(|d| ((d.i, d.j), d.dim)).collect(),
        })
    }

    /// Aligned columns `i  dim V_i^0  dim V_i^1`.
    pub fn to_table(&self) -> String {
        let mut out = format!("r = {}\n{:>5} {:>9} {:>9}\n", self.r, "i", "dim V^0", "dim V^1");
        let mut i_values: Vec<i64> = self.rows.keys().map(|&(i, _)| i).collect();
        i_values.dedup();
        for i in i_values {
            let cell = |j| self.get(i, j).map_or("-".to_string(), |d| d.to_string());
            out.push_str(&format!("{:>5} {:>9} {:>9}\n", i, cell(0), cell(1)));
        }
        out
    }
}

/// Runs every check of the dimension recursion for `0 ≤ i ≤ i_max`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecursionReport {
    pub r: i64,
    pub i_max: i64,
    /// `(i, j)` pairs whose decomposition counts disagree.
    pub decomposition_failures: Vec<(i64, u8)>,
    pub profile: std::result::Result<DeltaProfile, Error>,
    pub orbit_sums: Vec<(u64, Q)>,
    pub b: std::result::Result<BTreeMap<u64, Q>, Error>,
}

impl RecursionReport {
    pub fn passed(&self) -> bool {
        self.decomposition_failures.is_empty()
            && self.profile.is_ok()
            && self.orbit_sums.iter().all(|(_, s)| s.is_zero())
            && self.b.is_ok()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let qmap = |m: &BTreeMap<u64, Q>| -> serde_json::Value {
            m.iter()
                .map(|(k, v)| (k.to_string(), serde_json::Value::from(format_q(v))))
                .collect::<serde_json::Map<_, _>>()
                .into()
        };
        let or_error = |r: std::result::Result<serde_json::Value, &Error>| match r {
            Ok(v) => v,
            Err(e) => serde_json::json!({ "error": e.to_string() }),
        };
        serde_json::json!({
            "r": self.r,
            "i_max": self.i_max,
            "passed": self.passed(),
            "decomposition_failures": self.decomposition_failures,
            "delta": or_error(self.profile.as_ref().map(|p| qmap(&p.delta))),
            "orbit_sums": self
                .orbit_sums
                .iter()
                .map(|(s, v)| serde_json::json!({ "start": s, "sum": format_q(v) }))
                .collect::<Vec<_>>(),
            "b": or_error(self.b.as_ref().map(qmap)),
        })
    }

    pub fn to_table(&self) -> String {
        let mut out = format!("r = {}, 0 <= i <= {}\n", self.r, self.i_max);
        let mark = |ok: bool| if ok { "pass" } else { "FAIL" };
        out.push_str(&format!(
            "{}  decomposition ({} failures)\n",
            mark(self.decomposition_failures.is_empty()),
            self.decomposition_failures.len()
        ));
        match &self.profile {
            Ok(p) => {
                out.push_str(&format!("pass  delta well defined on {} residues\n", p.delta.len()));
                out.push_str(&format!("{:>6} {:>12} {:>12}\n", "key", "delta", "B"));
                for (k, d) in &p.delta {
                    let b = match &self.b {
                        Ok(b) => b.get(k).map_or("-".to_string(), format_q),
                        Err(_) => "-".to_string(),
                    };
                    out.push_str(&format!("{:>6} {:>12} {:>12}\n", k, format_q(d), b));
                }
            }
            Err(e) => out.push_str(&format!("FAIL  {e}\n")),
        }
        for (s, v) in &self.orbit_sums {
            out.push_str(&format!("{}  orbit sum from {s} = {}\n", mark(v.is_zero()), format_q(v)));
        }
        match &self.b {
            Ok(_) => out.push_str("pass  B solved\n"),
            Err(e) => out.push_str(&format!("FAIL  {e}\n")),
        }
        out
    }
}

pub fn verify_recursion(r: i64, i_max: i64) -> Result<RecursionReport> {
    check_r(r)?;
    let mut decomposition_failures = Vec::new();
    for i in 0..=i_max {
        for j in 0..=1u8 {
            if !check_decomposition(r, i, j)? {
                decomposition_failures.push((i, j));
            }
        }
    }
    let profile = delta_profile(r, i_max);
    let (orbit_sums, b) = match &profile {
        Ok(p) => {
            let sums = (0..2u64)
                .map(|s| p.orbit_sum(s).map(|v| (s, v)))
                .collect::<Result<Vec<_>>>()?;
            (sums, solve_b(p))
        }
        Err(e) => (Vec::new(), Err(e.clone())),
    };
    Ok(RecursionReport {
        r,
        i_max,
        decomposition_failures,
        profile,
        orbit_sums,
        b,
    })
}

/// The default range `6r` covers three full periods.
pub fn default_i_max(r: i64) -> i64 {
    6 * r
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent oracle: every exponent vector in a box, filtered by the
    /// defining equation.
    fn brute_force(r: i64, i: i64) -> Vec<NiPoint> {
        let mut out = Vec::new();
        if i < 0 {
            return out;
        }
        let i = i as u64;
        for l1 in 0..=1 {
            for l2 in 0..=1 {
                for l3 in 0..=i {
                    for l4 in 0..=i {
                        for l5 in 0..=i {
                            let p = NiPoint::new([l1, l2, l3, l4, l5]);
                            if p.degree(r) == i as i64 {
                                out.push(p);
                            }
                        }
                    }
                }
            }
        }
        out.sort();
        out
    }

    #[test]
    fn enumeration_matches_brute_force() {
        for r in [7, 9, 15] {
            for i in -3..=2 * r {
                assert_eq!(enumerate_ni(r, i).unwrap(), brute_force(r, i), "r={r} i={i}");
            }
        }
    }

    #[test]
    fn small_degrees() {
        assert_eq!(enumerate_ni(7, 1).unwrap(), vec![NiPoint::new([0, 0, 0, 1, 0])]);
        assert!(enumerate_ni(7, -2).unwrap().is_empty());
        let n4 = enumerate_ni(7, 4).unwrap();
        assert_eq!(n4.len(), 5);
        assert_eq!(n4.iter().filter(|p| p.parity() == 0).count(), 2);
        assert_eq!(n4.iter().filter(|p| p.parity() == 1).count(), 3);
    }

    #[test]
    fn rejects_bad_r() {
        assert!(matches!(enumerate_ni(8, 1), Err(Error::InvalidR { .. })));
        assert!(matches!(enumerate_ni(5, 1), Err(Error::InvalidR { .. })));
        assert!(dim_v(7, 1, 2).is_err());
    }

    #[test]
    fn dimension_facts() {
        assert_eq!(dim_v(7, 1, 0).unwrap(), 1);
        assert_eq!(dim_v(7, 1, 1).unwrap(), 0);
        assert_eq!(dim_v(7, 2, 1).unwrap(), 1);
        assert_eq!(dim_v(7, 0, 0).unwrap(), 1);
        assert_eq!(dim_v(7, 4, 0).unwrap(), 2);
    }

    #[test]
    fn decomposition_examples() {
        assert!(check_decomposition(7, 4, 0).unwrap());
        assert!(check_decomposition(7, 0, 1).unwrap());
        assert!(check_decomposition(9, 20, 1).unwrap());
        assert!(check_decomposition(7, -1, 0).is_err());
    }

    #[test]
    fn profile_needs_full_period() {
        assert!(matches!(delta_profile(7, 10), Err(Error::Precondition(_))));
        let p = delta_profile(7, 28).unwrap();
        assert_eq!(p.delta.len(), 14);
    }

    #[test]
    fn solve_b_normalization_and_errors() {
        let p = delta_profile(7, 28).unwrap();
        let b = solve_b(&p).unwrap();
        assert_eq!(b.len(), 14);
        assert!(b[&0].is_zero() && b[&1].is_zero());
        for k in 0..14u64 {
            assert_eq!(&b[&((k + 2) % 14)] - &b[&k], p.delta[&k]);
        }

        let zero = DeltaProfile::new(7, (0..14).map(|k| (k, Q::zero())).collect());
        assert!(solve_b(&zero).unwrap().values().all(|v| v.is_zero()));

        let mut bad = zero.clone();
        bad.delta.insert(4, frac(1, 7));
        assert!(matches!(solve_b(&bad), Err(Error::Inconsistency { start: 0, .. })));
    }

    #[test]
    fn table_json_round_trip() {
        let t = DimensionTable::build(7, 5).unwrap();
        let json = t.to_json();
        assert_eq!(json["dims"][0], serde_json::json!({"i":0,"j":0,"dim":1}));
        assert_eq!(DimensionTable::from_json(&json).unwrap(), t);
        assert!(t.to_table().contains("dim V^0"));
    }
}
