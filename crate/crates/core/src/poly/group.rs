use std::collections::BTreeMap;

use super::SparsePoly;
use crate::{Error, Result};

/// A cyclic group `Z/n` acting diagonally on named coordinates.
///
/// Variables without a declared character are fixed by the action.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupAction {
    order: u64,
    characters: BTreeMap<String, u64>,
}

impl GroupAction {
    pub fn new<S: AsRef<str>>(order: u64, characters: &[(S, i64)]) -> Result<Self> {
        if order == 0 {
            return Err(Error::Precondition("group order must be positive".into()));
        }
        Ok(GroupAction {
            order,
            characters: characters
                .iter()
                .map(|(v, c)| (v.as_ref().to_string(), c.rem_euclid(order as i64) as u64))
                .collect(),
        })
    }

    /// `1/n(a_1, …, a_m)` on the listed variables.
    pub fn from_weights<S: AsRef<str>>(order: u64, vars: &[S], weights: &[i64]) -> Result<Self> {
        assert_eq!(vars.len(), weights.len());
        let pairs: Vec<(&str, i64)> = vars
            .iter()
            .map(AsRef::as_ref)
            .zip(weights.iter().copied())
            .collect();
        Self::new(order, &pairs)
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn character(&self, var: &str) -> u64 {
        self.characters.get(var).copied().unwrap_or(0)
    }

    pub fn monomial_character(&self, vars: &[String], e: &[u32]) -> u64 {
        let n = self.order as u128;
        let total: u128 = vars
            .iter()
            .zip(e)
            .map(|(v, &k)| self.character(v) as u128 * k as u128)
            .sum();
        (total % n) as u64
    }
}

impl SparsePoly {
    /// The common character of all terms, or `None` when the terms disagree.
    /// The zero polynomial is reported with character 0.
    pub fn is_semi_invariant(&self, g: &GroupAction) -> Option<u64> {
        let mut chars = self
            .terms
            .keys()
            .map(|e| g.monomial_character(&self.vars, e));
        let first = chars.next().unwrap_or(0);
        chars.all(|c| c == first).then_some(first)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const V5: [&str; 5] = ["x1", "x2", "x3", "x4", "x5"];

    fn half() -> GroupAction {
        GroupAction::from_weights(2, &V5, &[1, 1, 1, 0, 0]).unwrap()
    }

    fn p(s: &str) -> SparsePoly {
        SparsePoly::parse(&V5, s).unwrap()
    }

    #[test]
    fn semi_invariance_examples() {
        assert_eq!(p("x1^2 + x4*x5").is_semi_invariant(&half()), Some(0));
        // r = 17: x2·x3^((r+3)/4) = x2·x3^5
        assert_eq!(p("x2*x3^5").is_semi_invariant(&half()), Some(0));
        assert_eq!(p("x1 + x4").is_semi_invariant(&half()), None);
        assert_eq!(p("x1 + x2*x4").is_semi_invariant(&half()), Some(1));
    }

    #[test]
    fn negative_characters_are_reduced() {
        let g = GroupAction::new(14, &[("y1", -1), ("y2", 15)]).unwrap();
        assert_eq!(g.character("y1"), 13);
        assert_eq!(g.character("y2"), 1);
        assert!(GroupAction::new(0, &[("y", 1)]).is_err());
    }

    fn arb_monomial_sum() -> impl Strategy<Value = SparsePoly> {
        // a single character class: scale a monomial by polynomials in
        // invariant variables x4, x5
        (prop::collection::vec(0u32..4, 3), prop::collection::vec((1i64..5, 0u32..3, 0u32..3), 1..4))
            .prop_map(|(base, extras)| {
                let terms = extras.into_iter().map(|(c, a, b)| {
                    (vec![base[0], base[1], base[2], a, b], crate::rational::q(c))
                });
                SparsePoly::from_terms(&V5, terms).unwrap()
            })
    }

    proptest! {
        #[test]
        fn characters_add_under_products(f in arb_monomial_sum(), g in arb_monomial_sum()) {
            let act = GroupAction::from_weights(6, &V5, &[1, 5, 2, 0, 0]).unwrap();
            let cf = f.is_semi_invariant(&act);
            let cg = g.is_semi_invariant(&act);
            prop_assume!(cf.is_some() && cg.is_some() && !f.is_zero() && !g.is_zero());
            let prod = (&f * &g).is_semi_invariant(&act);
            prop_assert_eq!(prod, Some((cf.unwrap() + cg.unwrap()) % 6));
        }
    }
}
