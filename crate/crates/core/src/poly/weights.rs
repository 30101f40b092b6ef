use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num::{Signed, Zero};

use super::{Exponents, SparsePoly};
use crate::rational::{format_q, Q};
use crate::{Error, Result};

/// Positive rational weights keyed by variable name.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct WeightAssignment {
    weights: BTreeMap<String, Q>,
}

impl WeightAssignment {
    pub fn new<S: AsRef<str>>(pairs: impl IntoIterator<Item = (S, Q)>) -> Result<Self> {
        let mut weights = BTreeMap::new();
        for (name, w) in pairs {
            if !w.is_positive() {
                return Err(Error::Precondition(format!(
                    "weight of `{}` must be positive, got {}",
                    name.as_ref(),
                    format_q(&w)
                )));
            }
            weights.insert(name.as_ref().to_string(), w);
        }
        Ok(WeightAssignment { weights })
    }

    /// Integer weights, e.g. `from_ints(&["x1","x2"], &[4, 3])`.
    pub fn from_ints<S: AsRef<str>>(names: &[S], weights: &[i64]) -> Result<Self> {
        assert_eq!(names.len(), weights.len());
        Self::new(
            names
                .iter()
                .zip(weights)
                .map(|(n, &w)| (n.as_ref(), crate::rational::q(w))),
        )
    }

    pub fn get(&self, name: &str) -> Option<&Q> {
        self.weights.get(name)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &Q)> {
        self.weights.iter()
    }

    /// Weight of one exponent vector of `p`.
    fn monomial_weight(&self, vars: &[String], e: &Exponents) -> Result<Q> {
        let mut total = Q::zero();
        for (k, v) in e.iter().zip(vars) {
            if *k == 0 {
                continue;
            }
            let w = self
                .weights
                .get(v)
                .ok_or_else(|| Error::MissingWeight(v.clone()))?;
            total += w * Q::from_integer((*k).into());
        }
        Ok(total)
    }

    /// Weight of every term, in term order.
    pub fn term_weights(&self, p: &SparsePoly) -> Result<Vec<Q>> {
        p.terms
            .keys()
            .map(|e| self.monomial_weight(&p.vars, e))
            .collect()
    }
}

/// A weighted order: a rational, or `+∞` for the zero polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Order {
    Finite(Q),
    Infinite,
}

impl Order {
    pub fn finite(&self) -> Option<&Q> {
        match self {
            Order::Finite(q) => Some(q),
            Order::Infinite => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Order::Infinite)
    }
}

impl PartialOrd for Order {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Order {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Order::Finite(a), Order::Finite(b)) => a.cmp(b),
            (Order::Finite(_), Order::Infinite) => Ordering::Less,
            (Order::Infinite, Order::Finite(_)) => Ordering::Greater,
            (Order::Infinite, Order::Infinite) => Ordering::Equal,
        }
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(q) => write!(f, "{}", format_q(q)),
            Order::Infinite => write!(f, "inf"),
        }
    }
}

impl SparsePoly {
    /// Minimum weight over the terms; `Infinite` for zero.
    pub fn weighted_order(&self, w: &WeightAssignment) -> Result<Order> {
        Ok(w.term_weights(self)?
            .into_iter()
            .min()
            .map_or(Order::Infinite, Order::Finite))
    }

    /// The terms of weight exactly `d`.
    pub fn homogeneous_part(&self, w: &WeightAssignment, d: &Q) -> Result<SparsePoly> {
        self.filter_by_weight(w, |x| x == d)
    }

    /// The terms of weight `≤ d`.
    pub fn truncate_le(&self, w: &WeightAssignment, d: &Q) -> Result<SparsePoly> {
        self.filter_by_weight(w, |x| x <= d)
    }

    /// The terms of weight `> d`.
    pub fn truncate_gt(&self, w: &WeightAssignment, d: &Q) -> Result<SparsePoly> {
        self.filter_by_weight(w, |x| x > d)
    }

    /// Distinct term weights with their homogeneous parts, ascending.
    pub fn homogeneous_decomposition(
        &self,
        w: &WeightAssignment,
    ) -> Result<BTreeMap<Q, SparsePoly>> {
        let mut parts: BTreeMap<Q, SparsePoly> = BTreeMap::new();
        for ((e, c), wt) in self.terms.iter().zip(w.term_weights(self)?) {
            parts
                .entry(wt)
                .or_insert_with(|| SparsePoly::zero(&self.vars))
                .add_term(e.clone(), c.clone());
        }
        Ok(parts)
    }

    /// Whether every term has weight exactly `d` (false for zero).
    pub fn is_weighted_homogeneous(&self, w: &WeightAssignment, d: &Q) -> Result<bool> {
        let weights = w.term_weights(self)?;
        Ok(!weights.is_empty() && weights.iter().all(|x| x == d))
    }

    fn filter_by_weight(
        &self,
        w: &WeightAssignment,
        keep: impl Fn(&Q) -> bool,
    ) -> Result<SparsePoly> {
        let weights = w.term_weights(self)?;
        let mut it = weights.iter();
        Ok(self.filter_terms(|_, _| keep(it.next().expect("one weight per term"))))
    }
}

/// Finds `c` with `φ_{≤r} = c·(x4·ψ)_{≤r}`, the weight-`≤ r` parts under `w`.
///
/// Returns `Some(0)` when `φ` has weighted order `> r`, and `None` when the
/// low part is not a multiple of `x4·ψ`.
pub fn corollary_membership(
    phi: &SparsePoly,
    psi: &SparsePoly,
    w: &WeightAssignment,
    r: &Q,
) -> Result<Option<Q>> {
    if psi.is_zero() {
        return Err(Error::Precondition("ψ must be nonzero".into()));
    }
    let low = phi.truncate_le(w, r)?;
    if low.is_zero() {
        return Ok(Some(Q::zero()));
    }
    let x4 = SparsePoly::var(&["x4"], "x4");
    let target = (&x4 * psi).truncate_le(w, r)?;
    let Some((e, lead)) = target.leading_term() else {
        return Ok(None);
    };
    let e_named: Vec<(&str, u32)> = target
        .vars
        .iter()
        .map(String::as_str)
        .zip(e.iter().copied())
        .collect();
    let c = low.coeff_of(&e_named) / lead;
    if c.is_zero() {
        return Ok(None);
    }
    Ok((low == target.scale(&c)).then_some(c))
}
