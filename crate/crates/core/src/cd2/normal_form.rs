//! Recognizer for germs already written in one of the two normal shapes
//!
//! * (A) `x1² + x2·x3·x4 + x2^{2α} + x3^{2β} + x4^γ`, `α, β ≥ 2`, `γ ≥ 3`;
//! * (B) `x1² + x2²·x4 + λ·x2·x3^{2α−1} + g(x3², x4)`, `α ≥ 2`,
//!   `g ∈ (x3⁴, x3²x4², x4³)`,
//!
//! with the elephant conditions `γ ≥ r` in (A) and `ord g(0, x4) ≥ r` in
//! (B). Nonzero coefficients other than that of `x1²` are accepted as they
//! are, and the sign of `x4` is flipped when the `x2²·x4` coefficient is
//! negative. No coordinate changes beyond that are attempted.

use num::{One, Signed, Zero};

use super::model::VARS4;
use crate::poly::{Exponents, SparsePoly};
use crate::rational::{q, Q};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalFormA {
    pub alpha: u32,
    pub beta: u32,
    pub gamma: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalFormB {
    pub lambda: Q,
    /// Zero when `λ = 0`.
    pub alpha: u32,
    /// `g` over `(u, x4)` with `u = x3²`.
    pub g: SparsePoly,
    /// Whether `x4 ↦ −x4` was applied.
    pub flipped_x4: bool,
}

impl NormalFormB {
    /// `ord g(0, x4)`, or `None` when `g(0, x4) = 0`.
    pub fn x4_order(&self) -> Option<u32> {
        self.g.terms().filter(|(e, _)| e[0] == 0).map(|(e, _)| e[1]).min()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NormalForm {
    A(NormalFormA),
    B(NormalFormB),
    Unrecognized,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub form: NormalForm,
    /// The elephant condition for the given `r`; `None` when unrecognized.
    pub elephant: Option<bool>,
}

pub fn classify_normal_form(phi: &SparsePoly, r: i64) -> Verdict {
    let form = recognize(phi);
    let elephant = match &form {
        NormalForm::A(a) => Some(i64::from(a.gamma) >= r),
        NormalForm::B(b) => Some(b.x4_order().is_none_or(|k| i64::from(k) >= r)),
        NormalForm::Unrecognized => None,
    };
    Verdict { form, elephant }
}

fn recognize(phi: &SparsePoly) -> NormalForm {
    let Ok(phi) = phi.with_vars(&VARS4) else {
        return NormalForm::Unrecognized;
    };
    let lead = phi.coeff(&[2, 0, 0, 0]);
    if lead.is_zero() {
        return NormalForm::Unrecognized;
    }
    let phi = phi.scale(&(Q::one() / lead));
    let rest = phi.filter_terms(|e, _| *e != vec![2, 0, 0, 0]);
    if rest.terms().any(|(e, _)| e[0] != 0) {
        return NormalForm::Unrecognized;
    }
    if let Some(a) = recognize_a(&rest) {
        return NormalForm::A(a);
    }
    recognize_b(&rest).map_or(NormalForm::Unrecognized, NormalForm::B)
}

fn recognize_a(rest: &SparsePoly) -> Option<NormalFormA> {
    if rest.num_terms() != 4 || rest.coeff(&[0, 1, 1, 1]).is_zero() {
        return None;
    }
    let pure = |k: usize| -> Option<u32> {
        let mut hits = rest
            .terms()
            .filter(|(e, _)| e.iter().enumerate().all(|(l, &x)| (l == k) == (x > 0)));
        let (e, _) = hits.next()?;
        hits.next().is_none().then_some(e[k])
    };
    let (a2, b2, g) = (pure(1)?, pure(2)?, pure(3)?);
    (a2 % 2 == 0 && a2 >= 4 && b2 % 2 == 0 && b2 >= 4 && g >= 3).then_some(NormalFormA {
        alpha: a2 / 2,
        beta: b2 / 2,
        gamma: g,
    })
}

fn recognize_b(rest: &SparsePoly) -> Option<NormalFormB> {
    let c = rest.coeff(&[0, 2, 0, 1]);
    if c.is_zero() {
        return None;
    }
    let flipped_x4 = c.is_negative();
    let rest = if flipped_x4 {
        rest.map_sign_x4()
    } else {
        rest.clone()
    };
    let mut lambda = Q::zero();
    let mut alpha = 0;
    let mut g_terms: Vec<(Exponents, Q)> = Vec::new();
    for (e, coeff) in rest.terms() {
        match (e[1], e[2], e[3]) {
            (2, 0, 1) => {}
            (1, k, 0) if k % 2 == 1 && k >= 3 && lambda.is_zero() => {
                lambda = coeff.clone();
                alpha = k.div_ceil(2);
            }
            (0, k, b) if k % 2 == 0 => {
                let u = k / 2;
                if !(u >= 2 || (u >= 1 && b >= 2) || b >= 3) {
                    return None;
                }
                g_terms.push((vec![u, b], coeff.clone()));
            }
            _ => return None,
        }
    }
    let g = SparsePoly::from_terms(&["u", "x4"], g_terms).ok()?;
    Some(NormalFormB {
        lambda,
        alpha,
        g,
        flipped_x4,
    })
}

impl SparsePoly {
    /// `f(…, −x4)` for a polynomial over `(x1, x2, x3, x4)`.
    fn map_sign_x4(&self) -> SparsePoly {
        let minus_x4 = SparsePoly::var(&VARS4, "x4").scale(&q(-1));
        self.substitute("x4", &minus_x4)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cd2::{eliminate_x5, generate};

    fn p(s: &str) -> SparsePoly {
        SparsePoly::parse(&VARS4, s).unwrap()
    }

    #[test]
    fn form_a_example() {
        let v = classify_normal_form(&p("x1^2 + x2*x3*x4 + x2^4 + x3^4 + x4^9"), 7);
        assert_eq!(v.form, NormalForm::A(NormalFormA { alpha: 2, beta: 2, gamma: 9 }));
        assert_eq!(v.elephant, Some(true));
        let v = classify_normal_form(&p("x1^2 + x2*x3*x4 + x2^4 + x3^6 + x4^5"), 7);
        assert_eq!(v.elephant, Some(false));
        // α = 1 is outside the shape
        let v = classify_normal_form(&p("x1^2 + x2*x3*x4 + x2^2 + x3^4 + x4^9"), 7);
        assert_eq!(v.form, NormalForm::Unrecognized);
    }

    #[test]
    fn form_b_example() {
        let v = classify_normal_form(&p("x1^2 + x2^2*x4 + x3^6*x4 + x4^7"), 7);
        let NormalForm::B(b) = &v.form else { panic!("{v:?}") };
        assert!(b.lambda.is_zero());
        assert_eq!(b.g, SparsePoly::parse(&["u", "x4"], "u^3*x4 + x4^7").unwrap());
        assert_eq!(b.x4_order(), Some(7));
        assert_eq!(v.elephant, Some(true));
    }

    #[test]
    fn form_b_with_lambda_and_flip() {
        let v = classify_normal_form(&p("2*x1^2 - 2*x2^2*x4 + 6*x2*x3^5 + 2*x3^4 - 2*x4^5"), 7);
        let NormalForm::B(b) = &v.form else { panic!("{v:?}") };
        assert!(b.flipped_x4);
        assert_eq!(b.lambda, q(3));
        assert_eq!(b.alpha, 3);
        assert_eq!(b.g, SparsePoly::parse(&["u", "x4"], "u^2 + x4^5").unwrap());
        assert_eq!(v.elephant, Some(false));
    }

    #[test]
    fn unrecognized() {
        let v = classify_normal_form(&p("x1^2 + x2^3"), 7);
        assert_eq!(v.form, NormalForm::Unrecognized);
        assert_eq!(v.elephant, None);
        // x3² alone is not in the ideal
        assert_eq!(classify_normal_form(&p("x1^2 + x2^2*x4 + x3^2"), 7).form, NormalForm::Unrecognized);
        assert_eq!(classify_normal_form(&p("x2^2*x4 + x4^7"), 7).form, NormalForm::Unrecognized);
    }

    #[test]
    fn pipeline_output_is_never_form_a() {
        for r in [7, 9, 15, 17] {
            for seed in 0..10 {
                let phi = eliminate_x5(&generate(r, seed, 4).unwrap());
                assert!(!matches!(classify_normal_form(&phi, r).form, NormalForm::A(_)));
            }
        }
    }
}
