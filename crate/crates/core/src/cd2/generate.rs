//! Random members of the family.
//!
//! The generator is `ChaCha8Rng::seed_from_u64(seed)`. Coefficients are
//! `±n/d` with `n, d` uniform in `1..=9` and the sign uniform. Candidate
//! monomials are visited in increasing exponent order:
//!
//! * `q` takes every even-parity monomial of weight `r − 1` in
//!   `(x1, x3, x4)`, each with a fresh coefficient, resampled until `q` is not
//!   of the square shape;
//! * `p` takes the residue-specific monomial (unless disabled) and then each
//!   even-parity monomial of weight in `(r, r + extra]` in `(x2, x3, x4)`
//!   with probability 1/2.
//!
//! When the residue-specific monomials are disabled they are dropped from `q`
//! as well, which gives negative fixtures.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::model::{check_r_residue, remark_monomials, CD2Model, P_VARS, Q_VARS};
use crate::poly::{square_form_detect, Exponents, SparsePoly};
use crate::rational::{frac, Q};
use crate::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GenerateOptions {
    pub include_remark: bool,
}

impl Default for GenerateOptions {
    fn default() -> Self {
        GenerateOptions { include_remark: true }
    }
}

pub fn generate(r: i64, seed: u64, extra_degree: u32) -> Result<CD2Model> {
    generate_with(r, seed, extra_degree, GenerateOptions::default())
}

pub fn generate_with(r: i64, seed: u64, extra_degree: u32, opts: GenerateOptions) -> Result<CD2Model> {
    check_r_residue(r)?;
    let remark = remark_monomials(r)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    // doubled weights keep everything integral
    let q_weights = [r + 1, 4, 2];
    let p_weights = [r - 1, 4, 2];
    let q_skip = exponents_of(&Q_VARS, &remark.q);
    let q_support: Vec<Exponents> = monomials_in(&q_weights, 2 * (r - 1), 2 * (r - 1))
        .into_iter()
        .filter(|e| (e[0] + e[1]) % 2 == 0)
        .filter(|e| opts.include_remark || *e != q_skip)
        .collect();
    let q = loop {
        let terms = q_support.iter().map(|e| (e.clone(), coefficient(&mut rng)));
        let q = SparsePoly::from_terms(&Q_VARS, terms)?;
        if square_form_detect(&q).is_none() {
            break q;
        }
    };

    let p_remark = exponents_of(&P_VARS, &remark.p);
    let mut p_terms: Vec<(Exponents, Q)> = Vec::new();
    if opts.include_remark {
        p_terms.push((p_remark.clone(), coefficient(&mut rng)));
    }
    let extra = i64::from(extra_degree);
    for e in monomials_in(&p_weights, 2 * r + 1, 2 * (r + extra)) {
        if (e[0] + e[1]) % 2 != 0 || e == p_remark {
            continue;
        }
        if rng.gen_bool(0.5) {
            p_terms.push((e, coefficient(&mut rng)));
        }
    }
    let p = SparsePoly::from_terms(&P_VARS, p_terms)?;
    Ok(CD2Model::new(r, p, q))
}

fn coefficient(rng: &mut ChaCha8Rng) -> Q {
    let n: i64 = rng.gen_range(1..=9);
    let d: i64 = rng.gen_range(1..=9);
    if rng.gen_bool(0.5) {
        frac(n, d)
    } else {
        frac(-n, d)
    }
}

fn exponents_of(vars: &[&str], m: &[(&str, u32)]) -> Exponents {
    vars.iter()
        .map(|v| m.iter().find(|(n, _)| n == v).map_or(0, |&(_, k)| k))
        .collect()
}

/// Exponent triples with `lo ≤ Σ w_k e_k ≤ hi`, in increasing order.
fn monomials_in(w: &[i64; 3], lo: i64, hi: i64) -> Vec<Exponents> {
    let mut out = Vec::new();
    for a in 0..=hi / w[0] {
        for b in 0..=(hi - a * w[0]) / w[1] {
            let base = a * w[0] + b * w[1];
            let c_lo = ((lo - base).max(0) + w[2] - 1) / w[2];
            for c in c_lo..=(hi - base) / w[2] {
                out.push(vec![a as u32, b as u32, c as u32]);
            }
        }
    }
    out
}
