//! Sparse multivariate polynomials over `Q` with named variables.
//!
//! Variables are identified by name, so germs over `(x1, …, x4)` and
//! `(x1, …, x5)` share every operation: binary operations first align both
//! operands onto the union of their variable lists.

mod group;
mod json;
mod parse;
mod square;
mod weights;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{One, Signed, Zero};

use crate::rational::{format_q, Q};
use crate::{Error, Result};

pub use group::GroupAction;
pub use json::{PolyInput, PolyJson, TermJson};
pub use square::{square_form_detect, SquareForm};
pub use weights::{corollary_membership, Order, WeightAssignment};

pub type Exponents = Vec<u32>;

#[derive(Clone, Debug)]
pub struct SparsePoly {
    vars: Vec<String>,
    terms: BTreeMap<Exponents, Q>,
}

impl SparsePoly {
    pub fn zero<S: AsRef<str>>(vars: &[S]) -> Self {
        SparsePoly {
            vars: vars.iter().map(|v| v.as_ref().to_string()).collect(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant<S: AsRef<str>>(vars: &[S], c: Q) -> Self {
        let mut p = Self::zero(vars);
        let e = vec![0; p.vars.len()];
        p.add_term(e, c);
        p
    }

    /// The polynomial `name` over `vars`. Panics if `name` is not in `vars`.
    pub fn var<S: AsRef<str>>(vars: &[S], name: &str) -> Self {
        let mut p = Self::zero(vars);
        let idx = p.index_of(name).expect("variable must be declared");
        let mut e = vec![0; p.vars.len()];
        e[idx] = 1;
        p.add_term(e, Q::one());
        p
    }

    pub fn monomial<S: AsRef<str>>(vars: &[S], exponents: &[u32], c: Q) -> Self {
        assert_eq!(vars.len(), exponents.len(), "exponent arity");
        let mut p = Self::zero(vars);
        p.add_term(exponents.to_vec(), c);
        p
    }

    /// Builds from `(exponents, coefficient)` pairs; like terms are combined.
    pub fn from_terms<S: AsRef<str>>(
        vars: &[S],
        terms: impl IntoIterator<Item = (Exponents, Q)>,
    ) -> Result<Self> {
        let mut p = Self::zero(vars);
        for (e, c) in terms {
            if e.len() != p.vars.len() {
                return Err(Error::Parse(format!(
                    "exponent vector of length {} for {} variables",
                    e.len(),
                    p.vars.len()
                )));
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &Q)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn coeff(&self, exponents: &[u32]) -> Q {
        self.terms.get(exponents).cloned().unwrap_or_else(Q::zero)
    }

    /// Coefficient of the monomial given as `(name, exponent)` pairs; names
    /// not in the variable list make the coefficient zero unless their
    /// exponent is zero.
    pub fn coeff_of(&self, monomial: &[(&str, u32)]) -> Q {
        let mut e = vec![0; self.vars.len()];
        for &(name, k) in monomial {
            match self.index_of(name) {
                Some(i) => e[i] += k,
                None if k == 0 => {}
                None => return Q::zero(),
            }
        }
        self.coeff(&e)
    }

    pub fn constant_term(&self) -> Q {
        self.coeff(&vec![0; self.vars.len()])
    }

    /// Coefficient of the degree-one monomial `name`.
    pub fn linear_coefficient(&self, name: &str) -> Q {
        self.coeff_of(&[(name, 1)])
    }

    pub fn degree_in(&self, name: &str) -> u32 {
        match self.index_of(name) {
            Some(i) => self.terms.keys().map(|e| e[i]).max().unwrap_or(0),
            None => 0,
        }
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    /// Whether some term has a positive power of `name`.
    pub fn uses_var(&self, name: &str) -> bool {
        self.degree_in(name) > 0
    }

    pub fn used_vars(&self) -> Vec<String> {
        self.vars
            .iter()
            .filter(|v| self.uses_var(v))
            .cloned()
            .collect()
    }

    /// The lexicographically largest term (variable order = declaration order).
    pub fn leading_term(&self) -> Option<(&Exponents, &Q)> {
        self.terms.iter().next_back()
    }

    fn add_term(&mut self, e: Exponents, c: Q) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Re-expresses the polynomial over `vars`, which must contain every
    /// variable the polynomial actually uses.
    pub fn with_vars<S: AsRef<str>>(&self, vars: &[S]) -> Result<Self> {
        let target: Vec<String> = vars.iter().map(|v| v.as_ref().to_string()).collect();
        let mut map = Vec::with_capacity(self.vars.len());
        for (i, v) in self.vars.iter().enumerate() {
            let pos = target.iter().position(|t| t == v);
            if pos.is_none() && self.terms.keys().any(|e| e[i] > 0) {
                return Err(Error::Germ(format!("variable `{v}` is used but not declared")));
            }
            map.push(pos);
        }
        let mut out = SparsePoly::zero(&target);
        for (e, c) in &self.terms {
            let mut ne = vec![0; target.len()];
            for (i, &k) in e.iter().enumerate() {
                if let Some(j) = map[i] {
                    ne[j] += k;
                }
            }
            out.add_term(ne, c.clone());
        }
        Ok(out)
    }

    /// Both operands over the union of their variables (`self`'s first).
    fn unify(&self, other: &SparsePoly) -> (SparsePoly, SparsePoly) {
        if self.vars == other.vars {
            return (self.clone(), other.clone());
        }
        let mut vars = self.vars.clone();
        for v in &other.vars {
            if !vars.contains(v) {
                vars.push(v.clone());
            }
        }
        (
            self.with_vars(&vars).expect("superset"),
            other.with_vars(&vars).expect("superset"),
        )
    }

    pub fn scale(&self, c: &Q) -> SparsePoly {
        let mut out = SparsePoly::zero(&self.vars);
        if c.is_zero() {
            return out;
        }
        for (e, a) in &self.terms {
            out.terms.insert(e.clone(), a * c);
        }
        out
    }

    pub fn pow(&self, k: u32) -> SparsePoly {
        let mut result = SparsePoly::constant(&self.vars, Q::one());
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Keeps the terms satisfying `keep`.
    pub fn filter_terms(&self, mut keep: impl FnMut(&Exponents, &Q) -> bool) -> SparsePoly {
        SparsePoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(e, c)| keep(e, c))
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// Applies `f` to each exponent vector; colliding terms are summed.
    pub fn map_exponents(&self, mut f: impl FnMut(&Exponents) -> Exponents) -> SparsePoly {
        let mut out = SparsePoly::zero(&self.vars);
        for (e, c) in &self.terms {
            let ne = f(e);
            assert_eq!(ne.len(), self.vars.len());
            out.add_term(ne, c.clone());
        }
        out
    }

    /// Sets `name = 0`.
    pub fn set_zero(&self, name: &str) -> SparsePoly {
        match self.index_of(name) {
            Some(i) => self.filter_terms(|e, _| e[i] == 0),
            None => self.clone(),
        }
    }

    /// Exact substitution `var ↦ replacement`. The result lives over the
    /// union of both variable lists; `var` itself stays declared.
    pub fn substitute(&self, var: &str, replacement: &SparsePoly) -> SparsePoly {
        let Some(idx) = self.index_of(var) else {
            return self.clone();
        };
        let (base, repl) = self.unify(replacement);
        let mut powers: Vec<SparsePoly> = vec![SparsePoly::constant(&base.vars, Q::one())];
        let mut out = SparsePoly::zero(&base.vars);
        for (e, c) in &base.terms {
            let k = e[idx] as usize;
            while powers.len() <= k {
                let next = &powers[powers.len() - 1] * &repl;
                powers.push(next);
            }
            let mut rest = e.clone();
            rest[idx] = 0;
            let mono = SparsePoly::monomial(&base.vars, &rest, c.clone());
            out = &out + &(&mono * &powers[k]);
        }
        out
    }

    /// Divides every term by `name^k`; `None` unless the division is exact.
    pub fn div_by_power(&self, name: &str, k: u32) -> Option<SparsePoly> {
        let i = self.index_of(name)?;
        if self.terms.keys().any(|e| e[i] < k) {
            return None;
        }
        Some(self.map_exponents(|e| {
            let mut e = e.clone();
            e[i] -= k;
            e
        }))
    }

    /// Univariate view in `name`: the coefficients indexed by degree, for a
    /// polynomial that uses no other variable.
    pub fn as_univariate(&self, name: &str) -> Option<Vec<Q>> {
        let i = self.index_of(name);
        let mut out = Vec::new();
        for (e, c) in &self.terms {
            let d = match i {
                Some(i) => {
                    if e.iter().enumerate().any(|(j, &k)| j != i && k > 0) {
                        return None;
                    }
                    e[i] as usize
                }
                None => 0,
            };
            if out.len() <= d {
                out.resize(d + 1, Q::zero());
            }
            out[d] = c.clone();
        }
        Some(out)
    }

    /// Renders one monomial, e.g. `x1^2*x4`.
    fn format_monomial(&self, e: &[u32]) -> String {
        let factors: Vec<String> = e
            .iter()
            .zip(&self.vars)
            .filter(|(k, _)| **k > 0)
            .map(|(&k, v)| if k == 1 { v.clone() } else { format!("{v}^{k}") })
            .collect();
        factors.join("*")
    }
}

impl PartialEq for SparsePoly {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = self.unify(other);
        a.terms == b.terms
    }
}

impl Eq for SparsePoly {}

impl fmt::Display for SparsePoly {
    /// Highest term first, e.g. `x1^2 + x4*x5 - 1/2*x2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (e, c)) in self.terms.iter().rev().enumerate() {
            let mono = self.format_monomial(e);
            let abs = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            if n == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            match (mono.is_empty(), abs.is_one()) {
                (true, _) => write!(f, "{}", format_q(&abs))?,
                (false, true) => write!(f, "{mono}")?,
                (false, false) => write!(f, "{}*{mono}", format_q(&abs))?,
            }
        }
        Ok(())
    }
}

impl Add<&SparsePoly> for &SparsePoly {
    type Output = SparsePoly;
    fn add(self, rhs: &SparsePoly) -> SparsePoly {
        let (mut a, b) = self.unify(rhs);
        for (e, c) in b.terms {
            a.add_term(e, c);
        }
        a
    }
}

impl Sub<&SparsePoly> for &SparsePoly {
    type Output = SparsePoly;
    fn sub(self, rhs: &SparsePoly) -> SparsePoly {
        let (mut a, b) = self.unify(rhs);
        for (e, c) in b.terms {
            a.add_term(e, -c);
        }
        a
    }
}

impl Mul<&SparsePoly> for &SparsePoly {
    type Output = SparsePoly;
    fn mul(self, rhs: &SparsePoly) -> SparsePoly {
        let (a, b) = self.unify(rhs);
        let mut out = SparsePoly::zero(&a.vars);
        for (ea, ca) in &a.terms {
            for (eb, cb) in &b.terms {
                #[allow(clippy::suspicious_arithmetic_impl)]
                let e: Exponents = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }
}

impl Neg for &SparsePoly {
    type Output = SparsePoly;
    fn neg(self) -> SparsePoly {
        self.scale(&-Q::one())
    }
}

impl Add for SparsePoly {
    type Output = SparsePoly;
    fn add(self, rhs: SparsePoly) -> SparsePoly {
        &self + &rhs
    }
}

impl Sub for SparsePoly {
    type Output = SparsePoly;
    fn sub(self, rhs: SparsePoly) -> SparsePoly {
        &self - &rhs
    }
}

impl Mul for SparsePoly {
    type Output = SparsePoly;
    fn mul(self, rhs: SparsePoly) -> SparsePoly {
        &self * &rhs
    }
}

impl Neg for SparsePoly {
    type Output = SparsePoly;
    fn neg(self) -> SparsePoly {
        -&self
    }
}

/// Greatest common divisor of univariate polynomials given as coefficient
/// vectors (index = degree), made monic. The zero polynomial is `[]`.
pub fn univariate_gcd(a: &[Q], b: &[Q]) -> Vec<Q> {
    fn trim(mut v: Vec<Q>) -> Vec<Q> {
        while v.last().is_some_and(|c| c.is_zero()) {
            v.pop();
        }
        v
    }
    let mut a = trim(a.to_vec());
    let mut b = trim(b.to_vec());
    while !b.is_empty() {
        // a mod b
        let lead = b.last().unwrap().clone();
        while a.len() >= b.len() {
            let factor = a.last().unwrap() / &lead;
            let shift = a.len() - b.len();
            for (k, c) in b.iter().enumerate() {
                a[shift + k] -= &factor * c;
            }
            a = trim(a);
            if a.is_empty() {
                break;
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
    if let Some(lead) = a.last().cloned() {
        for c in a.iter_mut() {
            *c = &*c / &lead;
        }
    }
    a
}
