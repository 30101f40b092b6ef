//! The lattice `N = Z^m + Z·(1/n)(a_1, …, a_m)` of a cyclic quotient and the
//! charts of the weighted blow-up along a vector `v ∈ N`.
//!
//! Chart `i` is the cone spanned by `e_1, …, v, …, e_m` (`v` in slot `i`).
//! It is `C^m / G_i` with `G_i = N / L_i`, `L_i` the sublattice spanned by
//! those generators. `G_i` is read off from a Smith normal form of the
//! relations among the generators `e_1, …, e_m, (1/n)a` of `N`; an element
//! `Σ c_k u_k` of `N` acts on chart coordinate `y_k` by `exp(2πi·c_k)`.

use num::integer::gcd;
use num::{BigInt, Integer, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::quotient::QuotientType;
use super::snf::{smith_normal_form, IntMatrix};
use crate::rational::{format_q, q, Q};
use crate::{Error, Result};

/// The `t ∈ [0, n)` with `v − t·a/n ∈ Z^m`, if `v ∈ N`.
pub fn lattice_shift(v: &[Q], ambient: &QuotientType) -> Option<u64> {
    if v.len() != ambient.arity() {
        return None;
    }
    let n = ambient.n();
    (0..n).find(|&t| {
        v.iter().zip(ambient.weights()).all(|(x, &a)| {
            let shifted = x - Q::new(BigInt::from(t * a), BigInt::from(n));
            shifted.is_integer()
        })
    })
}

pub fn is_in_lattice(v: &[Q], ambient: &QuotientType) -> bool {
    lattice_shift(v, ambient).is_some()
}

/// No `v/k` with integer `k ≥ 2` lies in `N`.
pub fn is_primitive(v: &[Q], ambient: &QuotientType) -> bool {
    if !is_in_lattice(v, ambient) || v.iter().all(Zero::is_zero) {
        return false;
    }
    // v/k ∈ N forces k | n·v_j for every j
    let n = Q::from_integer(BigInt::from(ambient.n()));
    let bound = v
        .iter()
        .filter(|x| !x.is_zero())
        .map(|x| (x * &n).abs().to_integer())
        .fold(BigInt::zero(), |g, x| g.gcd(&x));
    let bound = bound.to_u64().unwrap_or(u64::MAX);
    !(2..=bound).any(|k| {
        let scaled: Vec<Q> = v.iter().map(|x| x / q(k as i64)).collect();
        is_in_lattice(&scaled, ambient)
    })
}

/// A positive primitive vector of `N`: the orders `ord_E x_i` of a weighted
/// blow-up.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightVector {
    v: Vec<Q>,
}

impl WeightVector {
    pub fn new(v: Vec<Q>, ambient: &QuotientType) -> Result<Self> {
        let shown = || v.iter().map(format_q).collect::<Vec<_>>().join(",");
        if v.len() != ambient.arity() {
            return Err(Error::Lattice(format!(
                "weight vector ({}) has arity {}, ambient {ambient} has {}",
                shown(),
                v.len(),
                ambient.arity()
            )));
        }
        if v.iter().any(|x| !x.is_positive()) {
            return Err(Error::Lattice(format!("weights ({}) must be positive", shown())));
        }
        if !is_in_lattice(&v, ambient) {
            return Err(Error::Lattice(format!("({}) is not in the lattice of {ambient}", shown())));
        }
        if !is_primitive(&v, ambient) {
            return Err(Error::Lattice(format!("({}) is not primitive for {ambient}", shown())));
        }
        Ok(WeightVector { v })
    }

    pub fn as_slice(&self) -> &[Q] {
        &self.v
    }

    pub fn len(&self) -> usize {
        self.v.len()
    }

    pub fn is_empty(&self) -> bool {
        self.v.is_empty()
    }
}

/// One cyclic factor `Z/order` of a chart group with its weights on the `m`
/// chart coordinates, reduced mod `order`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclicFactor {
    pub order: u64,
    pub weights: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Chart {
    /// The coordinate whose generator `e_i` is replaced by `v`.
    pub index: usize,
    /// Nontrivial invariant factors of `N / L_i`, in divisibility order.
    pub factors: Vec<CyclicFactor>,
}

impl Chart {
    pub fn group_order(&self) -> u64 {
        self.factors.iter().map(|f| f.order).product()
    }

    pub fn is_smooth(&self) -> bool {
        self.factors.is_empty()
    }

    /// The group as a single cyclic quotient, when it is cyclic.
    pub fn as_quotient_type(&self, m: usize) -> Option<QuotientType> {
        DiagonalAction::from_factors(&self.factors, m).as_cyclic()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChartReport {
    pub charts: Vec<Chart>,
}

/// `|N / Z^m| = n / gcd(n, a_1, …, a_m)`.
pub fn lattice_index(ambient: &QuotientType) -> u64 {
    ambient.effective_order()
}

pub fn charts(ambient: &QuotientType, v: &[Q]) -> Result<ChartReport> {
    let wv = WeightVector::new(v.to_vec(), ambient)?;
    let v = wv.as_slice();
    let m = ambient.arity();
    let n = ambient.n();
    let a = ambient.weights();
    let t = lattice_shift(v, ambient).expect("checked membership");

    let d0 = a.iter().fold(n, |g, &x| gcd(g, x));
    // relation n/d0 · (a/n) = Σ (a_j/d0) e_j among the generators of N
    let kernel: Vec<i64> = a
        .iter()
        .map(|&x| -((x / d0) as i64))
        .chain(std::iter::once((n / d0) as i64))
        .collect();
    let lift: Vec<i64> = v
        .iter()
        .zip(a)
        .map(|(x, &aj)| {
            let c = x - Q::new(BigInt::from(t * aj), BigInt::from(n));
            c.to_integer().to_i64().expect("small lattice coordinates")
        })
        .chain(std::iter::once(t as i64))
        .collect();

    let mut charts = Vec::with_capacity(m);
    for i in 0..m {
        let mut rows: Vec<Vec<i64>> = Vec::with_capacity(m + 1);
        for j in (0..m).filter(|&j| j != i) {
            let mut e = vec![0; m + 1];
            e[j] = 1;
            rows.push(e);
        }
        rows.push(lift.clone());
        rows.push(kernel.clone());
        let snf = smith_normal_form(&IntMatrix::from_rows(&rows));

        let mut factors = Vec::new();
        for (k, order) in snf.diagonal().iter().enumerate() {
            let order = order.to_i64().expect("chart group order fits in i64");
            if order == 0 {
                return Err(Error::Lattice(format!("chart {i} has an infinite group")));
            }
            if order == 1 {
                continue;
            }
            let x = snf.v_inv.row(k);
            // the element Σ x_l b_l of N, b = (e_1, …, e_m, a/n)
            let point: Vec<Q> = (0..m)
                .map(|l| Q::from_integer(x[l].clone()) + Q::new(&x[m] * BigInt::from(a[l]), BigInt::from(n)))
                .collect();
            let coords = chart_coordinates(&point, v, i);
            let weights = coords
                .iter()
                .map(|c| {
                    let scaled = c * q(order);
                    assert!(scaled.is_integer(), "generator of order {order} has coordinate {c}");
                    scaled
                        .to_integer()
                        .mod_floor(&BigInt::from(order))
                        .to_u64()
                        .expect("reduced")
                })
                .collect();
            factors.push(CyclicFactor {
                order: order as u64,
                weights,
            });
        }
        charts.push(Chart { index: i, factors });
    }
    Ok(ChartReport { charts })
}

/// Coordinates of `point` in the basis `e_1, …, v, …, e_m` (`v` in slot `i`).
fn chart_coordinates(point: &[Q], v: &[Q], i: usize) -> Vec<Q> {
    let ci = &point[i] / &v[i];
    (0..point.len())
        .map(|k| {
            if k == i {
                ci.clone()
            } else {
                &point[k] - &ci * &v[k]
            }
        })
        .collect()
}

/// A finite abelian group acting diagonally on `m` coordinates, stored as
/// its distinct elements: numerators over a common `modulus`, so element `g`
/// acts on coordinate `l` by `exp(2πi·g[l]/modulus)`. Includes the identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagonalAction {
    modulus: u64,
    elements: Vec<Vec<u64>>,
}

impl DiagonalAction {
    pub fn from_factors(factors: &[CyclicFactor], m: usize) -> Self {
        let modulus = factors.iter().fold(1u64, |l, f| num::integer::lcm(l, f.order));
        let mut elements: Vec<Vec<u64>> = vec![vec![0; m]];
        for f in factors {
            let step = modulus / f.order;
            let mut next = Vec::new();
            for base in &elements {
                for k in 0..f.order {
                    next.push(
                        base.iter()
                            .zip(&f.weights)
                            .map(|(b, w)| (b + k * w * step) % modulus)
                            .collect(),
                    );
                }
            }
            elements = next;
        }
        DiagonalAction::dedup(modulus, elements)
    }

    pub fn from_quotient_type(t: &QuotientType) -> Self {
        let f = CyclicFactor {
            order: t.n(),
            weights: t.weights().to_vec(),
        };
        Self::from_factors(&[f], t.arity())
    }

    fn dedup(modulus: u64, mut elements: Vec<Vec<u64>>) -> Self {
        elements.sort();
        elements.dedup();
        DiagonalAction { modulus, elements }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn elements(&self) -> impl Iterator<Item = &[u64]> {
        self.elements.iter().map(Vec::as_slice)
    }

    /// The image of the group acting on the kept coordinates only.
    pub fn restrict(&self, keep: &[usize]) -> Self {
        let elements = self
            .elements
            .iter()
            .map(|g| keep.iter().map(|&l| g[l]).collect())
            .collect();
        DiagonalAction::dedup(self.modulus, elements)
    }

    /// Character of a monomial: its weight under every element.
    pub fn character(&self, exponents: &[u32]) -> Vec<u64> {
        self.elements
            .iter()
            .map(|g| {
                g.iter()
                    .zip(exponents)
                    .map(|(&w, &k)| (w as u128 * k as u128 % self.modulus as u128) as u64)
                    .sum::<u64>()
                    % self.modulus
            })
            .collect()
    }

    /// For every non-identity element, the set of coordinates it fixes.
    pub fn fixed_coordinate_sets(&self) -> Vec<Vec<usize>> {
        let mut sets: Vec<Vec<usize>> = self
            .elements
            .iter()
            .filter(|g| g.iter().any(|&x| x != 0))
            .map(|g| (0..g.len()).filter(|&l| g[l] == 0).collect())
            .collect();
        sets.sort();
        sets.dedup();
        sets
    }

    /// The group as `1/n(w)`, when it is cyclic.
    pub fn as_cyclic(&self) -> Option<QuotientType> {
        let size = self.elements.len() as u64;
        let m = self.elements.first().map_or(0, Vec::len);
        if size == 1 {
            return Some(QuotientType::trivial(m));
        }
        self.elements.iter().find_map(|g| {
            let g_gcd = g.iter().fold(self.modulus, |acc, &x| gcd(acc, x));
            let order = self.modulus / g_gcd;
            (order == size).then(|| {
                let w = g.iter().map(|&x| x * order / self.modulus).collect();
                QuotientType::from_reduced(order, w)
            })
        })
    }
}

impl std::fmt::Display for ChartReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "{:>6} {:>7}  factors", "chart", "order")?;
        for c in &self.charts {
            let factors: Vec<String> = c
                .factors
                .iter()
                .map(|fac| {
                    let w: Vec<String> = fac.weights.iter().map(u64::to_string).collect();
                    format!("Z/{}({})", fac.order, w.join(","))
                })
                .collect();
            let shown = if factors.is_empty() {
                "smooth".to_string()
            } else {
                factors.join(" x ")
            };
            writeln!(f, "{:>6} {:>7}  {}", c.index + 1, c.group_order(), shown)?;
        }
        Ok(())
    }
}

/// Convenience: `Q` vector from integer weights.
pub fn int_vector(v: &[i64]) -> Vec<Q> {
    v.iter().map(|&x| q(x)).collect()
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;
    use proptest::prelude::*;

    fn qt(s: &str) -> QuotientType {
        s.parse().unwrap()
    }

    #[test]
    fn membership_and_primitivity() {
        let amb = qt("1/2(1,1,1,0,0)");
        let v = int_vector(&[4, 3, 2, 1, 7]);
        assert!(is_in_lattice(&v, &amb));
        assert!(is_primitive(&v, &amb));

        let v2 = int_vector(&[2, 2, 2]);
        assert!(is_in_lattice(&v2, &QuotientType::trivial(3)));
        assert!(!is_primitive(&v2, &QuotientType::trivial(3)));

        let half = vec![frac(1, 2); 3];
        assert!(is_in_lattice(&half, &qt("1/2(1,1,1)")));
        assert!(is_primitive(&half, &qt("1/2(1,1,1)")));
        assert!(!is_in_lattice(&half, &QuotientType::trivial(3)));

        // (1,1,1) = 2·(1/2,1/2,1/2) is not primitive once 1/2(1,1,1) is in N
        assert!(!is_primitive(&int_vector(&[1, 1, 1]), &qt("1/2(1,1,1)")));
    }

    #[test]
    fn invalid_vectors_are_rejected() {
        let amb = qt("1/2(1,1,1,0,0)");
        assert!(matches!(charts(&amb, &int_vector(&[4, 3, 2, 1])), Err(Error::Lattice(_))));
        assert!(matches!(charts(&amb, &int_vector(&[8, 6, 4, 2, 14])), Err(Error::Lattice(_))));
        let off = vec![frac(1, 2), q(1), q(1), q(1), q(1)];
        assert!(matches!(charts(&amb, &off), Err(Error::Lattice(_))));
        assert!(matches!(charts(&amb, &int_vector(&[4, 3, 0, 1, 7])), Err(Error::Lattice(_))));
    }

    #[test]
    fn cd2_weights_for_r7() {
        let amb = qt("1/2(1,1,1,0,0)");
        let report = charts(&amb, &int_vector(&[4, 3, 2, 1, 7])).unwrap();
        let orders: Vec<u64> = report.charts.iter().map(Chart::group_order).collect();
        assert_eq!(orders, vec![8, 6, 4, 2, 14]);
        assert_eq!(
            report.charts[3].as_quotient_type(5).unwrap(),
            qt("1/2(1,1,1,0,0)")
        );
        let chart5 = report.charts[4].as_quotient_type(5).unwrap();
        assert!(chart5.is_equivalent(&qt("1/14(13,1,3,12,2)")), "{chart5}");
    }

    #[test]
    fn ordinary_and_veronese_blowups_have_smooth_charts() {
        let smooth = charts(&QuotientType::trivial(3), &int_vector(&[1, 1, 1])).unwrap();
        assert!(smooth.charts.iter().all(Chart::is_smooth));
        let ver = charts(&qt("1/2(1,1,1)"), &vec![frac(1, 2); 3]).unwrap();
        assert!(ver.charts.iter().all(Chart::is_smooth));
    }

    #[test]
    fn kawamata_charts() {
        // 1/5(2,3,1) blown up at (2,3,1)/5: charts 1/2(…) and 1/3(…) and smooth
        let amb = qt("1/5(2,3,1)");
        let v = vec![frac(2, 5), frac(3, 5), frac(1, 5)];
        let report = charts(&amb, &v).unwrap();
        let orders: Vec<u64> = report.charts.iter().map(Chart::group_order).collect();
        assert_eq!(orders, vec![2, 3, 1]);
    }

    #[test]
    fn diagonal_action_helpers() {
        let a = DiagonalAction::from_quotient_type(&qt("1/6(1,3,0)"));
        assert_eq!(a.order(), 6);
        assert_eq!(a.fixed_coordinate_sets(), vec![vec![1, 2], vec![2]]);
        assert_eq!(a.restrict(&[1]).order(), 2);
        assert_eq!(a.restrict(&[2]).order(), 1);
        // Z/2 × Z/3 is cyclic of order 6
        let f = [
            CyclicFactor { order: 2, weights: vec![1, 0] },
            CyclicFactor { order: 3, weights: vec![0, 1] },
        ];
        let c = DiagonalAction::from_factors(&f, 2).as_cyclic().unwrap();
        assert_eq!(c.n(), 6);
        // Z/2 × Z/2 is not
        let g = [
            CyclicFactor { order: 2, weights: vec![1, 0] },
            CyclicFactor { order: 2, weights: vec![0, 1] },
        ];
        assert!(DiagonalAction::from_factors(&g, 2).as_cyclic().is_none());
    }

    fn arb_ambient_and_vector() -> impl Strategy<Value = (QuotientType, Vec<Q>)> {
        (1u64..8, prop::collection::vec(0u64..8, 3), 0u64..8, prop::collection::vec(0i64..4, 3))
            .prop_map(|(n, a, t, c)| {
                let amb = QuotientType::from_reduced(n, a);
                let t = t % n;
                let v: Vec<Q> = amb
                    .weights()
                    .iter()
                    .zip(&c)
                    .map(|(&aj, &cj)| {
                        let frac_part = Q::new(BigInt::from(t * aj % n), BigInt::from(n));
                        // keep every entry positive
                        if frac_part.is_zero() { q(cj + 1) } else { q(cj) + frac_part }
                    })
                    .collect();
                (amb, v)
            })
    }

    proptest! {
        #[test]
        fn chart_orders_match_lattice_index((amb, v) in arb_ambient_and_vector()) {
            prop_assume!(is_primitive(&v, &amb));
            let report = charts(&amb, &v).unwrap();
            for (i, chart) in report.charts.iter().enumerate() {
                let expected = q(lattice_index(&amb) as i64) * &v[i];
                prop_assert!(expected.is_integer());
                prop_assert_eq!(q(chart.group_order() as i64), expected);
                for f in &chart.factors {
                    prop_assert!(f.weights.iter().all(|&w| w < f.order));
                }
                // the action is faithful on the chart
                prop_assert_eq!(
                    DiagonalAction::from_factors(&chart.factors, v.len()).order() as u64,
                    chart.group_order()
                );
            }
        }
    }
}
