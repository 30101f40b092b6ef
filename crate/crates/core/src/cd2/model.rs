use num::Zero;
use serde_json::{json, Value};

use super::report::ValidationReport;
use crate::blowup::CIGerm;
use crate::poly::{square_form_detect, GroupAction, Order, PolyInput, SparsePoly, WeightAssignment};
use crate::rational::{format_q, frac, q, Q};
use crate::toric::{QuotientType, WeightVector};
use crate::{Error, Result};

pub const VARS5: [&str; 5] = ["x1", "x2", "x3", "x4", "x5"];
pub const VARS4: [&str; 4] = ["x1", "x2", "x3", "x4"];
pub const P_VARS: [&str; 3] = ["x2", "x3", "x4"];
pub const Q_VARS: [&str; 3] = ["x1", "x3", "x4"];

/// `r ≥ 7` with `r ≡ ±1 mod 8`.
pub fn check_r_residue(r: i64) -> Result<()> {
    if r < 7 {
        return Err(Error::InvalidR { r, reason: "r must be at least 7" });
    }
    if !matches!(r.rem_euclid(8), 1 | 7) {
        return Err(Error::InvalidR { r, reason: "r must be congruent to 1 or 7 mod 8" });
    }
    Ok(())
}

fn weights_from(names: &[&str], w: Vec<Q>) -> Result<WeightAssignment> {
    WeightAssignment::new(names.iter().copied().zip(w))
}

/// `wt(x1, x2, x3, x4, x5) = ((r+1)/2, (r−1)/2, 2, 1, r)`.
pub fn weights5(r: i64) -> Result<WeightAssignment> {
    weights_from(&VARS5, vec![frac(r + 1, 2), frac(r - 1, 2), q(2), q(1), q(r)])
}

pub fn weights4(r: i64) -> Result<WeightAssignment> {
    weights_from(&VARS4, vec![frac(r + 1, 2), frac(r - 1, 2), q(2), q(1)])
}

pub fn p_weights(r: i64) -> Result<WeightAssignment> {
    weights_from(&P_VARS, vec![frac(r - 1, 2), q(2), q(1)])
}

pub fn q_weights(r: i64) -> Result<WeightAssignment> {
    weights_from(&Q_VARS, vec![frac(r + 1, 2), q(2), q(1)])
}

fn half_action() -> GroupAction {
    GroupAction::from_weights(2, &VARS5, &[1, 1, 1, 0, 0]).expect("order 2")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CD2Model {
    pub r: i64,
    pub p: SparsePoly,
    pub q: SparsePoly,
}

impl CD2Model {
    pub fn new(r: i64, p: SparsePoly, q: SparsePoly) -> Self {
        CD2Model { r, p, q }
    }

    /// `{"r":7,"p":<poly>,"q":<poly>}`.
    pub fn to_json(&self) -> Value {
        json!({"r": self.r, "p": self.p.to_json(), "q": self.q.to_json()})
    }

    /// Polynomials may also be given as expression strings in their default
    /// variables.
    pub fn from_json(value: &Value) -> Result<Self> {
        let obj = value
            .as_object()
            .ok_or_else(|| Error::Parse("model must be a JSON object".into()))?;
        let r = obj
            .get("r")
            .and_then(Value::as_i64)
            .ok_or_else(|| Error::Parse("model needs an integer `r`".into()))?;
        let poly = |key: &str, vars: &[&str]| -> Result<SparsePoly> {
            let raw = obj
                .get(key)
                .ok_or_else(|| Error::Parse(format!("model needs `{key}`")))?;
            let input: PolyInput = serde_json::from_value(raw.clone())
                .map_err(|e| Error::Parse(format!("`{key}`: {e}")))?;
            input.resolve(vars)
        };
        Ok(CD2Model {
            r,
            p: poly("p", &P_VARS)?,
            q: poly("q", &Q_VARS)?,
        })
    }

    /// `ψ = x2² + q`, so that the second equation reads `ψ + x5 = 0`.
    pub fn psi(&self) -> SparsePoly {
        psi(self)
    }

    /// `(x1² + x4·x5 + p, x2² + q + x5)` in `C^5 / (1/2)(1,1,1,0,0)`.
    pub fn germ(&self) -> Result<CIGerm> {
        let v = |s| SparsePoly::parse(&VARS5, s).expect("fixed expression");
        let f1 = &v("x1^2 + x4*x5") + &self.p;
        let f2 = &v("x2^2 + x5") + &self.q;
        CIGerm::new(QuotientType::from_reduced(2, vec![1, 1, 1, 0, 0]), &VARS5, vec![f1, f2])
    }

    pub fn weight_vector(&self) -> Result<WeightVector> {
        let r = self.r;
        let v = vec![frac(r + 1, 2), frac(r - 1, 2), q(2), q(1), q(r)];
        WeightVector::new(v, &QuotientType::from_reduced(2, vec![1, 1, 1, 0, 0]))
    }
}

pub fn psi(model: &CD2Model) -> SparsePoly {
    &SparsePoly::parse(&["x2"], "x2^2").expect("fixed expression") + &model.q
}

/// `φ = x1² − x4·(x2² + q) + p` over `(x1, x2, x3, x4)`, from `x5 = −(x2² + q)`.
pub fn eliminate_x5(model: &CD2Model) -> SparsePoly {
    let x1 = SparsePoly::var(&VARS4, "x1");
    let x4 = SparsePoly::var(&VARS4, "x4");
    let phi = &(&(&x1 * &x1) - &(&x4 * &psi(model))) + &model.p;
    phi.with_vars(&VARS4).unwrap_or(phi)
}

/// The monomials that must occur in `p` and `q` for the residue of `r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RemarkMonomials {
    pub residue: u8,
    pub p: Vec<(&'static str, u32)>,
    pub q: Vec<(&'static str, u32)>,
}

impl RemarkMonomials {
    pub fn p_poly(&self) -> SparsePoly {
        monomial_poly(&P_VARS, &self.p)
    }

    pub fn q_poly(&self) -> SparsePoly {
        monomial_poly(&Q_VARS, &self.q)
    }
}

fn monomial_poly(vars: &[&str], m: &[(&str, u32)]) -> SparsePoly {
    let e: Vec<u32> = vars
        .iter()
        .map(|v| m.iter().find(|(n, _)| n == v).map_or(0, |&(_, k)| k))
        .collect();
    SparsePoly::monomial(vars, &e, q(1))
}

/// For `r ≡ 1 mod 8`: `x2·x3^{(r+3)/4}` in `p` and `x3^{(r−1)/2}` in `q`.
/// For `r ≡ 7 mod 8`: `x3^{(r+1)/2}` in `p` and `x1·x3^{(r−3)/4}` in `q`.
pub fn remark_monomials(r: i64) -> Result<RemarkMonomials> {
    check_r_residue(r)?;
    let k = |x: i64| u32::try_from(x).expect("r ≥ 7");
    Ok(if r.rem_euclid(8) == 1 {
        RemarkMonomials {
            residue: 1,
            p: vec![("x2", 1), ("x3", k((r + 3) / 4))],
            q: vec![("x3", k((r - 1) / 2))],
        }
    } else {
        RemarkMonomials {
            residue: 7,
            p: vec![("x3", k((r + 1) / 2))],
            q: vec![("x1", 1), ("x3", k((r - 3) / 4))],
        }
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RemarkReport {
    pub monomials: RemarkMonomials,
    pub p_present: bool,
    pub q_present: bool,
}

impl RemarkReport {
    pub fn passed(&self) -> bool {
        self.p_present && self.q_present
    }
}

pub fn remark_check(model: &CD2Model) -> Result<RemarkReport> {
    let monomials = remark_monomials(model.r)?;
    let p_present = !model.p.coeff_of(&monomials.p).is_zero();
    let q_present = !model.q.coeff_of(&monomials.q).is_zero();
    Ok(RemarkReport {
        monomials,
        p_present,
        q_present,
    })
}

fn support_detail(f: &SparsePoly, allowed: &[&str]) -> (bool, String) {
    let extra: Vec<String> = f
        .used_vars()
        .into_iter()
        .filter(|v| !allowed.contains(&v.as_str()))
        .collect();
    if extra.is_empty() {
        (true, format!("uses only {}", allowed.join(",")))
    } else {
        (false, format!("uses {}", extra.join(",")))
    }
}

/// Runs every model invariant as a named check; `strict_remark` also
/// requires the residue-specific monomials.
pub fn validate(model: &CD2Model, strict_remark: bool) -> ValidationReport {
    let r = model.r;
    let mut report = ValidationReport::default();
    report.push("r_at_least_7", r >= 7, format!("r = {r}"));
    report.push(
        "r_congruence",
        matches!(r.rem_euclid(8), 1 | 7),
        format!("r mod 8 = {}", r.rem_euclid(8)),
    );

    let (ok, detail) = support_detail(&model.p, &P_VARS);
    report.push("p_support", ok, detail);
    let (ok, detail) = support_detail(&model.q, &Q_VARS);
    report.push("q_support", ok, detail);

    let p_order = p_weights(r).and_then(|w| model.p.weighted_order(&w));
    let (ok, detail) = match p_order {
        Ok(Order::Infinite) => (true, "p = 0".to_string()),
        Ok(Order::Finite(d)) => (d > q(r), format!("weighted order {}", format_q(&d))),
        Err(e) => (false, e.to_string()),
    };
    report.push("p_order_exceeds_r", ok, detail);

    let target = q(r - 1);
    let q_homog = q_weights(r).and_then(|w| {
        let order = model.q.weighted_order(&w)?;
        Ok((model.q.is_weighted_homogeneous(&w, &target)?, order))
    });
    let (ok, detail) = match q_homog {
        Ok((h, order)) => (h, format!("weighted order {order}, required weight {}", r - 1)),
        Err(e) => (false, e.to_string()),
    };
    report.push("q_homogeneous", ok, detail);

    let g = half_action();
    for (name, f) in [("p_parity", &model.p), ("q_parity", &model.q)] {
        let ch = f.is_semi_invariant(&g);
        let detail = match ch {
            Some(c) => format!("character {c}"),
            None => "mixed characters".to_string(),
        };
        report.push(name, ch == Some(0), detail);
    }

    match square_form_detect(&model.q) {
        None => report.push("q_not_square_form", true, "q is not (x3·s(x3²,x4))²"),
        Some(form) => report.push(
            "q_not_square_form",
            false,
            format!("q = {}·(x3·({}))²", format_q(&form.scale), form.s),
        ),
    }

    if strict_remark {
        match remark_check(model) {
            Ok(rc) => {
                let p_m = rc.monomials.p_poly().to_string();
                let q_m = rc.monomials.q_poly().to_string();
                let word = |b: bool| if b { "present" } else { "absent" };
                report.push("remark_p", rc.p_present, format!("{p_m} {}", word(rc.p_present)));
                report.push("remark_q", rc.q_present, format!("{q_m} {}", word(rc.q_present)));
            }
            Err(e) => report.push("remark", false, e.to_string()),
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::corollary_membership;

    fn model(r: i64, p: &str, qs: &str) -> CD2Model {
        CD2Model::new(
            r,
            SparsePoly::parse(&P_VARS, p).unwrap(),
            SparsePoly::parse(&Q_VARS, qs).unwrap(),
        )
    }

    #[test]
    fn validation_examples() {
        let m = model(7, "x3^4", "x1*x3");
        let rep = validate(&m, true);
        assert!(rep.passed(), "{}", rep.to_table());
        assert!(remark_check(&m).unwrap().q_present);

        let rep = validate(&model(11, "x3^6", "x3^5"), false);
        assert!(!rep.get("r_congruence").unwrap().passed);

        let rep = validate(&model(9, "x3^5", "x3^2*x4^4"), false);
        assert!(!rep.get("q_not_square_form").unwrap().passed);
        assert!(rep.get("q_homogeneous").unwrap().passed);
    }

    #[test]
    fn counterexamples_fail_their_check() {
        // odd parity p
        let rep = validate(&model(7, "x2*x3^4", "x1*x3"), false);
        assert!(!rep.get("p_parity").unwrap().passed);
        // q of the wrong weight
        let rep = validate(&model(7, "x3^4", "x1*x3 + x4^5"), false);
        assert!(!rep.get("q_homogeneous").unwrap().passed);
        // p of low order
        let rep = validate(&model(7, "x3^2", "x1*x3"), false);
        assert!(!rep.get("p_order_exceeds_r").unwrap().passed);
        // foreign variable
        let m = CD2Model::new(7, SparsePoly::parse(&VARS5, "x1^8").unwrap(), model(7, "0", "x1*x3").q);
        assert!(!validate(&m, false).get("p_support").unwrap().passed);
    }

    #[test]
    fn remark_examples() {
        let rc = remark_check(&model(17, "x2*x3^5", "x3^8")).unwrap();
        assert!(rc.p_present && rc.q_present);
        let rc = remark_check(&model(7, "x3^5*x4", "x1*x3")).unwrap();
        assert!(!rc.p_present);
        assert!(rc.q_present);
        assert!(remark_check(&model(11, "0", "0")).is_err());
    }

    #[test]
    fn elimination_examples() {
        let m = model(7, "0", "x1*x3");
        assert_eq!(
            eliminate_x5(&m),
            SparsePoly::parse(&VARS4, "x1^2 - x2^2*x4 - x1*x3*x4").unwrap()
        );
        let m = model(7, "x3^4", "x1*x3 + x4^6");
        let phi = eliminate_x5(&m);
        let w = weights4(7).unwrap();
        assert_eq!(phi.weighted_order(&w).unwrap(), Order::Finite(q(7)));
        assert_eq!(corollary_membership(&phi, &psi(&m), &w, &q(7)).unwrap(), Some(q(-1)));
    }

    #[test]
    fn json_forms() {
        let m = model(7, "x3^4", "x1*x3 - 1/2*x4^6");
        let back = CD2Model::from_json(&m.to_json()).unwrap();
        assert_eq!(back, m);
        let text = serde_json::json!({"r": 7, "p": "x3^4", "q": "x1*x3 - 1/2*x4^6"});
        assert_eq!(CD2Model::from_json(&text).unwrap(), m);
        assert!(CD2Model::from_json(&serde_json::json!({"p": "x3^4"})).is_err());
    }

    #[test]
    fn germ_and_weights() {
        let m = model(7, "x3^4", "x1*x3");
        let g = m.germ().unwrap();
        assert_eq!(g.equations().len(), 2);
        assert_eq!(m.weight_vector().unwrap().as_slice(), &crate::toric::int_vector(&[4, 3, 2, 1, 7])[..]);
        assert!(check_r_residue(9).is_ok());
        assert!(check_r_residue(1).is_err());
        assert!(check_r_residue(13).is_err());
    }
}
