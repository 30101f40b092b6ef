//! The cD/2 family `x1² + x4·x5 + p(x2,x3,x4) = x2² + q(x1,x3,x4) + x5 = 0`
//! in `C^5 / (1/2)(1,1,1,0,0)`, blown up with weights
//! `((r+1)/2, (r−1)/2, 2, 1, r)`.

mod generate;
mod model;
mod normal_form;
mod profile;
mod report;

pub use generate::{generate, generate_with, GenerateOptions};
pub use model::{
    check_r_residue, eliminate_x5, p_weights, psi, q_weights, remark_check, remark_monomials,
    validate, weights4, weights5, CD2Model, RemarkMonomials, RemarkReport, P_VARS, Q_VARS, VARS4,
    VARS5,
};
pub use normal_form::{classify_normal_form, NormalForm, NormalFormA, NormalFormB, Verdict};
pub use profile::{expected_quotient, verify_e1_profile, ProfileReport};
pub use report::{Check, ValidationReport};
