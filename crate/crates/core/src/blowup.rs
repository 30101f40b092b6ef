//! Weighted blow-ups of complete-intersection germs in cyclic quotients.
//!
//! For `X = (φ_1 = … = φ_k = 0) ⊂ C^m / (1/n)(a)` and a weight vector `v`,
//! the exceptional divisor `E` of the blow-up along `v` satisfies
//! `a(E) = Σ v_i − Σ ord_E φ_k − 1` and `E³ = Π ord_E φ_k / (n · Π v_i)` on a
//! three-fold. Each chart is `C^m / G_i` with coordinates `y_1, …, y_m` and
//! `E = (y_i = 0)`; a monomial `x^e` becomes `y^{e'}` with `e'_j = e_j` for
//! `j ≠ i` and `e'_i = ⟨e, v⟩`.

use itertools::Itertools;
use num::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::poly::{GroupAction, Order, PolyInput, SparsePoly, WeightAssignment};
use crate::rational::{format_q, parse_q, Q};
use crate::toric::{charts, CyclicFactor, DiagonalAction, QuotientType, WeightVector};
use crate::{Error, Result};

/// A complete intersection through the origin of a cyclic quotient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CIGerm {
    ambient: QuotientType,
    vars: Vec<String>,
    equations: Vec<SparsePoly>,
}

impl CIGerm {
    pub fn new<S: AsRef<str>>(
        ambient: QuotientType,
        vars: &[S],
        equations: Vec<SparsePoly>,
    ) -> Result<Self> {
        let vars: Vec<String> = vars.iter().map(|v| v.as_ref().to_string()).collect();
        if vars.len() != ambient.arity() {
            return Err(Error::Germ(format!(
                "{} variables for the ambient {ambient}",
                vars.len()
            )));
        }
        if vars.iter().duplicates().next().is_some() {
            return Err(Error::Germ("duplicate variable names".into()));
        }
        let weights: Vec<i64> = ambient.weights().iter().map(|&a| a as i64).collect();
        let action = GroupAction::from_weights(ambient.n(), &vars, &weights)?;
        let equations = equations
            .iter()
            .enumerate()
            .map(|(k, f)| {
                let f = f
                    .with_vars(&vars)
                    .map_err(|e| Error::Germ(format!("equation {}: {e}", k + 1)))?;
                if !f.constant_term().is_zero() {
                    return Err(Error::Germ(format!(
                        "equation {} does not vanish at the origin",
                        k + 1
                    )));
                }
                if f.is_zero() {
                    return Err(Error::Germ(format!("equation {} is zero", k + 1)));
                }
                if f.is_semi_invariant(&action).is_none() {
                    return Err(Error::Germ(format!(
                        "equation {} is not semi-invariant under {ambient}",
                        k + 1
                    )));
                }
                Ok(f)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(CIGerm {
            ambient,
            vars,
            equations,
        })
    }

    pub fn ambient(&self) -> &QuotientType {
        &self.ambient
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn equations(&self) -> &[SparsePoly] {
        &self.equations
    }

    pub fn dimension(&self) -> isize {
        self.vars.len() as isize - self.equations.len() as isize
    }

    fn require_threefold(&self) -> Result<()> {
        if self.dimension() != 3 {
            return Err(Error::Dimension {
                arity: self.vars.len(),
                equations: self.equations.len(),
            });
        }
        Ok(())
    }
}

fn weight_assignment(germ: &CIGerm, v: &WeightVector) -> Result<WeightAssignment> {
    if v.len() != germ.vars.len() {
        return Err(Error::Lattice(format!(
            "{} weights for {} variables",
            v.len(),
            germ.vars.len()
        )));
    }
    WeightAssignment::new(germ.vars.iter().zip(v.as_slice().iter().cloned()))
}

/// `ord_E φ_k`, the weighted order of each equation under `v`.
pub fn equation_orders(germ: &CIGerm, v: &WeightVector) -> Result<Vec<Q>> {
    let w = weight_assignment(germ, v)?;
    germ.equations
        .iter()
        .map(|f| match f.weighted_order(&w)? {
            Order::Finite(d) => Ok(d),
            Order::Infinite => Err(Error::Germ("zero equation".into())),
        })
        .collect()
}

pub fn discrepancy(germ: &CIGerm, v: &WeightVector) -> Result<Q> {
    let orders = equation_orders(germ, v)?;
    let total_v: Q = v.as_slice().iter().sum();
    let total_ord: Q = orders.iter().sum();
    Ok(total_v - total_ord - Q::one())
}

pub fn e_cubed(germ: &CIGerm, v: &WeightVector) -> Result<Q> {
    germ.require_threefold()?;
    let orders = equation_orders(germ, v)?;
    let num: Q = orders.iter().product();
    let den: Q = v.as_slice().iter().product::<Q>() * Q::from_integer(germ.ambient.n().into());
    Ok(num / den)
}

/// What the strict transform looks like near `E` on one chart.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "type", rename_all = "snake_case")]
pub enum ChartFinding {
    Smooth,
    Quotient(QuotientType),
    ManualAnalysisRequired,
}

impl std::fmt::Display for ChartFinding {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ChartFinding::Smooth => write!(f, "smooth"),
            ChartFinding::Quotient(t) => write!(f, "quotient {t}"),
            ChartFinding::ManualAnalysisRequired => write!(f, "manual analysis required"),
        }
    }
}

/// Raw data for one chart, kept so that a reader can finish the analysis by
/// hand when the finding is `ManualAnalysisRequired`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChartAnalysis {
    pub index: usize,
    pub group: Vec<CyclicFactor>,
    pub strict_transforms: Vec<SparsePoly>,
    pub finding: ChartFinding,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlowupReport {
    pub weights: Vec<Q>,
    pub orders: Vec<Q>,
    pub discrepancy: Q,
    pub e_cubed: Q,
    pub charts: Vec<ChartAnalysis>,
}

impl BlowupReport {
    pub fn chart_findings(&self) -> Vec<ChartFinding> {
        self.charts.iter().map(|c| c.finding.clone()).collect()
    }

    pub fn quotient_findings(&self) -> Vec<&QuotientType> {
        self.charts
            .iter()
            .filter_map(|c| match &c.finding {
                ChartFinding::Quotient(t) => Some(t),
                _ => None,
            })
            .collect()
    }

    pub fn manual_count(&self) -> usize {
        self.charts
            .iter()
            .filter(|c| c.finding == ChartFinding::ManualAnalysisRequired)
            .count()
    }

    pub fn to_json(&self) -> Value {
        let charts: Vec<Value> = self
            .charts
            .iter()
            .map(|c| {
                json!({
                    "chart": c.index + 1,
                    "group": c.group,
                    "strict_transforms": c.strict_transforms.iter().map(|f| f.to_string()).collect::<Vec<_>>(),
                    "finding": c.finding,
                })
            })
            .collect();
        json!({
            "weights": self.weights.iter().map(format_q).collect::<Vec<_>>(),
            "orders": self.orders.iter().map(format_q).collect::<Vec<_>>(),
            "discrepancy": format_q(&self.discrepancy),
            "e3": format_q(&self.e_cubed),
            "charts": charts,
        })
    }

    pub fn to_table(&self) -> String {
        let shown = |xs: &[Q]| xs.iter().map(format_q).collect::<Vec<_>>().join(", ");
        let mut out = String::new();
        out.push_str(&format!("weights      ({})\n", shown(&self.weights)));
        out.push_str(&format!("orders       ({})\n", shown(&self.orders)));
        out.push_str(&format!("discrepancy  {}\n", format_q(&self.discrepancy)));
        out.push_str(&format!("E^3          {}\n", format_q(&self.e_cubed)));
        out.push_str(&format!("{:>6}  {:<28} finding\n", "chart", "group"));
        for c in &self.charts {
            let group = if c.group.is_empty() {
                "trivial".to_string()
            } else {
                c.group
                    .iter()
                    .map(|f| format!("Z/{}({})", f.order, f.weights.iter().join(",")))
                    .join(" x ")
            };
            out.push_str(&format!("{:>6}  {:<28} {}\n", c.index + 1, group, c.finding));
        }
        out
    }
}

pub fn blowup(germ: &CIGerm, v: &WeightVector) -> Result<BlowupReport> {
    germ.require_threefold()?;
    Ok(BlowupReport {
        weights: v.as_slice().to_vec(),
        orders: equation_orders(germ, v)?,
        discrepancy: discrepancy(germ, v)?,
        e_cubed: e_cubed(germ, v)?,
        charts: analyze_charts(germ, v)?,
    })
}

pub fn chart_singularities(germ: &CIGerm, v: &WeightVector) -> Result<Vec<ChartFinding>> {
    germ.require_threefold()?;
    Ok(analyze_charts(germ, v)?
        .into_iter()
        .map(|c| c.finding)
        .collect())
}

/// Names of the chart coordinates.
pub fn chart_vars(m: usize) -> Vec<String> {
    (1..=m).map(|k| format!("y{k}")).collect()
}

/// The strict transform of `f` on chart `i`: `y^{e'} / y_i^{ord}`.
pub fn strict_transform(f: &SparsePoly, v: &[Q], i: usize, ord: &Q) -> SparsePoly {
    let ys = chart_vars(v.len());
    let terms = f.terms().map(|(e, c)| {
        let pairing: Q = e
            .iter()
            .zip(v)
            .map(|(&k, w)| w * Q::from_integer(k.into()))
            .sum();
        let shifted = pairing - ord;
        assert!(
            shifted.is_integer() && !shifted.is_negative(),
            "strict transform is not divisible by the exceptional coordinate"
        );
        let mut e2 = e.clone();
        e2[i] = u32::try_from(shifted.to_integer()).expect("small exponent");
        (e2, c.clone())
    });
    SparsePoly::from_terms(&ys, terms).expect("arity matches")
}

fn analyze_charts(germ: &CIGerm, v: &WeightVector) -> Result<Vec<ChartAnalysis>> {
    let orders = equation_orders(germ, v)?;
    let report = charts(&germ.ambient, v.as_slice())?;
    let m = germ.vars.len();
    Ok(report
        .charts
        .into_iter()
        .map(|chart| {
            let strict: Vec<SparsePoly> = germ
                .equations
                .iter()
                .zip(&orders)
                .map(|(f, d)| strict_transform(f, v.as_slice(), chart.index, d))
                .collect();
            let action = DiagonalAction::from_factors(&chart.factors, m);
            let finding = analyze_chart(&strict, &action, chart.index);
            ChartAnalysis {
                index: chart.index,
                group: chart.factors,
                strict_transforms: strict,
                finding,
            }
        })
        .collect())
}

/// Where the strict transform meets a fixed stratum of the group inside `E`.
#[derive(Debug, PartialEq, Eq)]
enum StratumMeet {
    Empty,
    Origin,
    Unknown,
}

fn analyze_chart(strict: &[SparsePoly], action: &DiagonalAction, i: usize) -> ChartFinding {
    let m = action.elements().next().map_or(0, <[u64]>::len);
    let ys = chart_vars(m);
    let mut origin_is_fixed = false;
    for fixed in action.fixed_coordinate_sets() {
        let free: Vec<usize> = fixed.into_iter().filter(|&l| l != i).collect();
        match stratum_meet(strict, &ys, &free) {
            StratumMeet::Empty => {}
            StratumMeet::Origin => origin_is_fixed = true,
            StratumMeet::Unknown => return ChartFinding::ManualAnalysisRequired,
        }
    }
    if !origin_is_fixed {
        return ChartFinding::Smooth;
    }
    let Some(pivots) = choose_pivots(strict, action, &ys) else {
        return ChartFinding::ManualAnalysisRequired;
    };
    let keep: Vec<usize> = (0..m).filter(|l| !pivots.contains(l)).collect();
    let residual = action.restrict(&keep);
    if residual.is_trivial() {
        return ChartFinding::Smooth;
    }
    match residual.as_cyclic() {
        Some(t) => ChartFinding::Quotient(t.normalize()),
        None => ChartFinding::ManualAnalysisRequired,
    }
}

/// Solves the equations on the coordinate subspace spanned by `free`.
fn stratum_meet(strict: &[SparsePoly], ys: &[String], free: &[usize]) -> StratumMeet {
    let mut eqs: Vec<SparsePoly> = strict
        .iter()
        .map(|f| {
            (0..ys.len())
                .filter(|l| !free.contains(l))
                .fold(f.clone(), |g, l| g.set_zero(&ys[l]))
        })
        .collect();
    let mut remaining: Vec<&str> = free.iter().map(|&l| ys[l].as_str()).collect();
    let mut solved: Vec<(&str, SparsePoly)> = Vec::new();

    // eliminate variables that occur in some equation only as `c·y`
    while remaining.len() > 1 {
        let found = eqs.iter().enumerate().find_map(|(k, f)| {
            remaining
                .iter()
                .copied()
                .find_map(|y| isolated_linear(f, y).map(|c| (k, y, c)))
        });
        let Some((k, y, c)) = found else { break };
        let f = eqs.remove(k);
        let y_poly = SparsePoly::var(f.vars(), y).scale(&c);
        let value = (&y_poly - &f).scale(&(Q::one() / c));
        for g in eqs.iter_mut() {
            *g = g.substitute(y, &value);
        }
        remaining.retain(|&z| z != y);
        solved.push((y, value));
    }

    let eqs: Vec<SparsePoly> = eqs.into_iter().filter(|f| !f.is_zero()).collect();
    if eqs.iter().any(|f| f.used_vars().is_empty()) {
        return StratumMeet::Empty;
    }
    match remaining.as_slice() {
        [] => {}
        [y] => {
            let mut g: Option<Vec<Q>> = None;
            for f in &eqs {
                let Some(u) = f.as_univariate(y) else {
                    return StratumMeet::Unknown;
                };
                g = Some(match g {
                    None => crate::poly::univariate_gcd(&u, &[]),
                    Some(acc) => crate::poly::univariate_gcd(&acc, &u),
                });
            }
            let Some(g) = g else {
                return StratumMeet::Unknown;
            };
            if g.len() == 1 {
                return StratumMeet::Empty;
            }
            // c·y^k: only y = 0
            if g[..g.len() - 1].iter().any(|c| !c.is_zero()) {
                return StratumMeet::Unknown;
            }
        }
        _ => return StratumMeet::Unknown,
    }

    // every remaining coordinate is zero; recover the eliminated ones
    let mut point_is_origin = true;
    let mut values: Vec<(&str, SparsePoly)> = Vec::new();
    for (y, expr) in solved.into_iter().rev() {
        let mut val = expr;
        for z in remaining.iter().copied() {
            val = val.set_zero(z);
        }
        for (z, zv) in &values {
            val = val.substitute(z, zv);
        }
        if !val.is_zero() {
            point_is_origin = false;
        }
        values.push((y, val));
    }
    if point_is_origin {
        StratumMeet::Origin
    } else {
        StratumMeet::Unknown
    }
}

/// `c` when `f = c·y + h` with `h` free of `y`.
fn isolated_linear(f: &SparsePoly, y: &str) -> Option<Q> {
    let idx = f.index_of(y)?;
    let mut with_y = f.terms().filter(|(e, _)| e[idx] > 0);
    let (e, c) = with_y.next()?;
    let is_linear = e.iter().enumerate().all(|(l, &k)| k == u32::from(l == idx));
    (is_linear && with_y.next().is_none()).then(|| c.clone())
}

/// Distinct coordinates `y_{l_k}`, one per equation, whose linear coefficient
/// is a nonzero constant and whose character matches the equation's, with
/// invertible linear part.
fn choose_pivots(strict: &[SparsePoly], action: &DiagonalAction, ys: &[String]) -> Option<Vec<usize>> {
    let m = ys.len();
    let unit = |l: usize| -> Vec<u32> { (0..m).map(|k| u32::from(k == l)).collect() };
    let candidates: Vec<Vec<usize>> = strict
        .iter()
        .map(|f| {
            let (e, _) = f.leading_term().expect("nonzero");
            let chi = action.character(e);
            (0..m)
                .filter(|&l| !f.linear_coefficient(&ys[l]).is_zero() && action.character(&unit(l)) == chi)
                .collect()
        })
        .collect();
    candidates
        .iter()
        .map(|c| c.iter().copied())
        .multi_cartesian_product()
        .filter(|pick| pick.iter().all_unique())
        .find(|pick| {
            let matrix: Vec<Vec<Q>> = strict
                .iter()
                .map(|f| pick.iter().map(|&l| f.linear_coefficient(&ys[l])).collect())
                .collect();
            determinant(matrix) != Q::zero()
        })
        .or_else(|| strict.is_empty().then(Vec::new))
}

fn determinant(mut a: Vec<Vec<Q>>) -> Q {
    let n = a.len();
    let mut det = Q::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return Q::zero();
        };
        if p != k {
            a.swap(p, k);
            det = -det;
        }
        let pivot = a[k][k].clone();
        det *= &pivot;
        let (top, below) = a.split_at_mut(k + 1);
        for row in below {
            let factor = &row[k] / &pivot;
            for (x, y) in row[k..].iter_mut().zip(&top[k][k..]) {
                *x -= &factor * y;
            }
        }
    }
    det
}

/// `{"ambient":"1/2(1,1,1,0,0)","vars":[…],"weights":["4",…],"equations":[…]}`.
///
/// Equations are polynomial objects or expression strings in `vars`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CIGermJson {
    pub ambient: String,
    pub vars: Vec<String>,
    pub weights: Vec<String>,
    pub equations: Vec<PolyInput>,
}

impl CIGermJson {
    pub fn from_value(value: &Value) -> Result<Self> {
        serde_json::from_value(value.clone()).map_err(|e| Error::Parse(format!("germ: {e}")))
    }

    pub fn build(&self) -> Result<(CIGerm, WeightVector)> {
        let ambient: QuotientType = self.ambient.parse()?;
        let equations = self
            .equations
            .iter()
            .map(|e| e.resolve(&self.vars))
            .collect::<Result<Vec<_>>>()?;
        let germ = CIGerm::new(ambient, &self.vars, equations)?;
        let weights = self
            .weights
            .iter()
            .map(|s| parse_q(s))
            .collect::<Result<Vec<_>>>()?;
        let v = WeightVector::new(weights, germ.ambient())?;
        Ok((germ, v))
    }

    pub fn from_germ(germ: &CIGerm, v: &WeightVector) -> Self {
        CIGermJson {
            ambient: germ.ambient.to_string(),
            vars: germ.vars.clone(),
            weights: v.as_slice().iter().map(format_q).collect(),
            equations: germ
                .equations
                .iter()
                .map(|f| PolyInput::Poly(f.to_json_repr()))
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, q};
    use crate::toric::int_vector;

    fn qt(s: &str) -> QuotientType {
        s.parse().unwrap()
    }

    fn smooth3() -> CIGerm {
        CIGerm::new(QuotientType::trivial(3), &["x1", "x2", "x3"], vec![]).unwrap()
    }

    #[test]
    fn germ_invariants_are_enforced() {
        let v5 = ["x1", "x2", "x3", "x4", "x5"];
        let amb = qt("1/2(1,1,1,0,0)");
        let p = |s| SparsePoly::parse(&v5, s).unwrap();
        assert!(CIGerm::new(amb.clone(), &v5, vec![p("x1^2 + x4*x5")]).is_ok());
        assert!(matches!(CIGerm::new(amb.clone(), &v5, vec![p("x1 + x4")]), Err(Error::Germ(_))));
        assert!(matches!(CIGerm::new(amb.clone(), &v5, vec![p("1 + x4")]), Err(Error::Germ(_))));
        assert!(CIGerm::new(amb.clone(), &["x1", "x2"], vec![]).is_err());
        let other = SparsePoly::parse(&["z"], "z^2").unwrap();
        assert!(CIGerm::new(amb, &v5, vec![other]).is_err());
    }

    #[test]
    fn orders_examples() {
        let v4 = ["x1", "x2", "x3", "x4"];
        let g = CIGerm::new(QuotientType::trivial(4), &v4, vec![SparsePoly::var(&v4, "x4")]).unwrap();
        let v = WeightVector::new(int_vector(&[2, 3, 5, 7]), g.ambient()).unwrap();
        assert_eq!(equation_orders(&g, &v).unwrap(), vec![q(7)]);
        let s = smooth3();
        let v = WeightVector::new(int_vector(&[1, 1, 1]), s.ambient()).unwrap();
        assert!(equation_orders(&s, &v).unwrap().is_empty());
    }

    #[test]
    fn anchor_values() {
        let s = smooth3();
        let v = WeightVector::new(int_vector(&[1, 1, 1]), s.ambient()).unwrap();
        assert_eq!(discrepancy(&s, &v).unwrap(), q(2));
        assert_eq!(e_cubed(&s, &v).unwrap(), q(1));

        let ver = CIGerm::new(qt("1/2(1,1,1)"), &["x1", "x2", "x3"], vec![]).unwrap();
        let v = WeightVector::new(vec![frac(1, 2); 3], ver.ambient()).unwrap();
        assert_eq!(e_cubed(&ver, &v).unwrap(), q(4));
        assert_eq!(discrepancy(&ver, &v).unwrap(), frac(1, 2));

        let kaw = CIGerm::new(qt("1/5(2,3,1)"), &["x1", "x2", "x3"], vec![]).unwrap();
        let v = WeightVector::new(vec![frac(2, 5), frac(3, 5), frac(1, 5)], kaw.ambient()).unwrap();
        assert_eq!(discrepancy(&kaw, &v).unwrap(), frac(1, 5));
    }

    #[test]
    fn e_cubed_requires_a_threefold() {
        let g = CIGerm::new(QuotientType::trivial(4), &["a", "b", "c", "d"], vec![]).unwrap();
        let v = WeightVector::new(int_vector(&[1, 1, 1, 1]), g.ambient()).unwrap();
        assert_eq!(
            e_cubed(&g, &v),
            Err(Error::Dimension { arity: 4, equations: 0 })
        );
        assert!(discrepancy(&g, &v).is_ok());
    }

    #[test]
    fn smooth_and_veronese_charts() {
        let s = smooth3();
        let v = WeightVector::new(int_vector(&[1, 1, 1]), s.ambient()).unwrap();
        assert_eq!(chart_singularities(&s, &v).unwrap(), vec![ChartFinding::Smooth; 3]);
        let ver = CIGerm::new(qt("1/2(1,1,1)"), &["x1", "x2", "x3"], vec![]).unwrap();
        let v = WeightVector::new(vec![frac(1, 2); 3], ver.ambient()).unwrap();
        assert_eq!(chart_singularities(&ver, &v).unwrap(), vec![ChartFinding::Smooth; 3]);
    }

    #[test]
    fn kawamata_blowup_has_two_quotient_points() {
        let kaw = CIGerm::new(qt("1/5(2,3,1)"), &["x1", "x2", "x3"], vec![]).unwrap();
        let v = WeightVector::new(vec![frac(2, 5), frac(3, 5), frac(1, 5)], kaw.ambient()).unwrap();
        let found = chart_singularities(&kaw, &v).unwrap();
        assert_eq!(found[2], ChartFinding::Smooth);
        for (k, n) in [(0, 2u64), (1, 3)] {
            match &found[k] {
                ChartFinding::Quotient(t) => {
                    assert_eq!(t.n(), n);
                    assert!(t.reid_tai().terminal, "{t}");
                }
                other => panic!("chart {k}: {other}"),
            }
        }
    }

    #[test]
    fn no_linear_term_needs_manual_analysis() {
        let v4 = ["x1", "x2", "x3", "x4"];
        let f = SparsePoly::parse(&v4, "x1^2 + x2^2 + x3^2 + x4^4").unwrap();
        let g = CIGerm::new(qt("1/2(1,1,1,0)"), &v4, vec![f]).unwrap();
        let v = WeightVector::new(int_vector(&[1, 1, 1, 1]), g.ambient()).unwrap();
        let report = blowup(&g, &v).unwrap();
        assert_eq!(report.charts[3].finding, ChartFinding::ManualAnalysisRequired);
        assert_eq!(
            report.charts[3].strict_transforms[0],
            SparsePoly::parse(&chart_vars(4), "y1^2 + y2^2 + y3^2 + y4^2").unwrap()
        );
    }

    #[test]
    fn strict_transform_divides_exactly() {
        let f = SparsePoly::parse(&["x1", "x2"], "x1^2 + x2^3").unwrap();
        let v = int_vector(&[3, 2]);
        let t = strict_transform(&f, &v, 0, &q(6));
        assert_eq!(t, SparsePoly::parse(&["y1", "y2"], "y2^3 + 1").unwrap());
        let t = strict_transform(&f, &v, 1, &q(6));
        assert_eq!(t, SparsePoly::parse(&["y1", "y2"], "y1^2 + 1").unwrap());
    }

    #[test]
    fn germ_json_round_trip() {
        let text = serde_json::json!({
            "ambient": "1/2(1,1,1,0)",
            "vars": ["x1", "x2", "x3", "x4"],
            "weights": ["1", "1", "1", "1"],
            "equations": ["x1^2 + x2^2 + x3^2 + x4^4"]
        });
        let (g, v) = CIGermJson::from_value(&text).unwrap().build().unwrap();
        let back = serde_json::to_value(CIGermJson::from_germ(&g, &v)).unwrap();
        let (g2, v2) = CIGermJson::from_value(&back).unwrap().build().unwrap();
        assert_eq!(g, g2);
        assert_eq!(v, v2);
    }
}
