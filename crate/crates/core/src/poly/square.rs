//! Detection of the forbidden shape `q = (x3·s(x3², x4))²`.

use num::{One, Zero};

use super::{Exponents, SparsePoly};
use crate::rational::{sqrt_exact, Q};

const VARS: [&str; 2] = ["x3", "x4"];

/// `q = scale·(x3·s)²`, with `s` over `(x3, x4)` using only even powers of `x3`.
///
/// `scale` is one whenever the leading coefficient of `q` is a square in `Q`;
/// otherwise the square root lives in a quadratic extension and is carried
/// by `scale` (the shape exists over `C` either way).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquareForm {
    pub scale: Q,
    pub s: SparsePoly,
}

impl SquareForm {
    pub fn expand(&self) -> SparsePoly {
        let x3 = SparsePoly::var(&VARS, "x3");
        let f = &x3 * &self.s;
        (&f * &f).scale(&self.scale)
    }
}

/// Returns `s` with `q = (x3·s(x3², x4))²` when such `s` exists over `C`.
pub fn square_form_detect(q: &SparsePoly) -> Option<SquareForm> {
    if q.is_zero() {
        return None;
    }
    let g = q.with_vars(&VARS).ok()?;
    let (_, lead) = g.leading_term()?;
    let lead = lead.clone();
    let monic = g.scale(&(Q::one() / &lead));
    let root = monic_square_root(&monic)?;

    if root.terms().any(|(e, _)| e[0] % 2 == 0) {
        return None;
    }
    let s0 = root.div_by_power("x3", 1)?;
    let form = match sqrt_exact(&lead) {
        Some(c) => SquareForm {
            scale: Q::one(),
            s: s0.scale(&c),
        },
        None => SquareForm {
            scale: lead,
            s: s0,
        },
    };
    (form.expand() == *q).then_some(form)
}

/// The square root with leading coefficient one, by peeling terms off in
/// lexicographic order (`x3 > x4`).
fn monic_square_root(g: &SparsePoly) -> Option<SparsePoly> {
    let (lead_e, _) = g.leading_term()?;
    if lead_e.iter().any(|k| k % 2 == 1) {
        return None;
    }
    let half_degree = g.total_degree() / 2;
    let first: Exponents = lead_e.iter().map(|k| k / 2).collect();
    let mut root = SparsePoly::monomial(&VARS, &first, Q::one());
    let mut last = first.clone();
    loop {
        let rest = g - &(&root * &root);
        let Some((e, c)) = rest.leading_term() else {
            return Some(root);
        };
        let next: Option<Exponents> = e
            .iter()
            .zip(&first)
            .map(|(a, b)| a.checked_sub(*b))
            .collect();
        let next = next?;
        if next >= last || next.iter().sum::<u32>() > half_degree {
            return None;
        }
        let coeff = c / Q::from_integer(2.into());
        if coeff.is_zero() {
            return None;
        }
        root = &root + &SparsePoly::monomial(&VARS, &next, coeff);
        last = next;
    }
}
