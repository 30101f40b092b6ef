use cd2_core::blowup::{blowup, chart_singularities, discrepancy, e_cubed, CIGerm, ChartFinding};
use cd2_core::cd2::{eliminate_x5, generate, generate_with, validate, CD2Model, GenerateOptions};
use cd2_core::poly::SparsePoly;
use cd2_core::rational::{frac, q};
use cd2_core::toric::{int_vector, QuotientType, WeightVector};
use cd2_core::Q;
use proptest::prelude::*;

fn permuted_germ(m: &CD2Model, perm: &[usize; 5]) -> (CIGerm, WeightVector) {
    let g = m.germ().unwrap();
    let vars: Vec<String> = perm.iter().map(|&k| g.vars()[k].clone()).collect();
    let weights: Vec<i64> = perm
        .iter()
        .map(|&k| g.ambient().weights()[k] as i64)
        .collect();
    let ambient = QuotientType::new(2, &weights).unwrap();
    let mut eqs = g.equations().to_vec();
    eqs.reverse();
    let germ = CIGerm::new(ambient, &vars, eqs).unwrap();
    let v0 = m.weight_vector().unwrap();
    let v: Vec<Q> = perm.iter().map(|&k| v0.as_slice()[k].clone()).collect();
    let v = WeightVector::new(v, germ.ambient()).unwrap();
    (germ, v)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn invariants_under_relabeling(seed in 0u64..1000, perm in Just([0usize, 1, 2, 3, 4]).prop_shuffle()) {
        let m = generate(7, seed, 2).unwrap();
        let (g0, v0) = (m.germ().unwrap(), m.weight_vector().unwrap());
        let (g, v) = permuted_germ(&m, &perm);
        prop_assert_eq!(discrepancy(&g, &v).unwrap(), discrepancy(&g0, &v0).unwrap());
        prop_assert_eq!(e_cubed(&g, &v).unwrap(), e_cubed(&g0, &v0).unwrap());
    }

    #[test]
    fn weighted_projective_degree(w in prop::collection::vec(1i64..8, 3)) {
        let g = CIGerm::new(QuotientType::trivial(3), &["a", "b", "c"], vec![]).unwrap();
        let primitive = num::integer::gcd(num::integer::gcd(w[0], w[1]), w[2]) == 1;
        prop_assume!(primitive);
        let v = WeightVector::new(int_vector(&w), g.ambient()).unwrap();
        prop_assert_eq!(e_cubed(&g, &v).unwrap(), frac(1, w[0] * w[1] * w[2]));
    }

    #[test]
    fn quotient_finding_survives_high_weight_perturbation(
        seed in 0u64..1000,
        r in prop::sample::select(vec![7i64, 9, 15, 17]),
        k in 1u32..6,
    ) {
        let m = generate(r, seed, 2).unwrap();
        let (g, v) = (m.germ().unwrap(), m.weight_vector().unwrap());
        let before = chart_singularities(&g, &v).unwrap();
        // x4^(r+k) has weight r + k > r + 1 and leaves every linear part alone
        let bump = SparsePoly::monomial(&["x2", "x3", "x4"], &[0, 0, (r as u32) + 1 + k], q(1));
        let perturbed = CD2Model::new(r, &m.p + &bump, m.q.clone());
        prop_assert!(validate(&perturbed, true).passed());
        let after = chart_singularities(&perturbed.germ().unwrap(), &v).unwrap();
        prop_assert_eq!(before, after);
    }
}

#[test]
fn every_generated_model_has_one_quotient_point() {
    for r in [7, 9, 15, 17, 23, 25] {
        for seed in 0..5 {
            let m = generate(r, seed, 2).unwrap();
            let rep = blowup(&m.germ().unwrap(), &m.weight_vector().unwrap()).unwrap();
            assert_eq!(rep.discrepancy, q(2));
            assert_eq!(rep.e_cubed, frac(1, r));
            let found = rep.quotient_findings();
            assert_eq!(found.len(), 1, "r={r} seed={seed}\n{}", rep.to_table());
            assert_eq!(rep.manual_count(), 0);
        }
    }
}

#[test]
fn models_without_the_monomials_still_blow_up() {
    let m = generate_with(7, 11, 2, GenerateOptions { include_remark: false }).unwrap();
    let rep = blowup(&m.germ().unwrap(), &m.weight_vector().unwrap()).unwrap();
    assert_eq!(rep.discrepancy, q(2));
    assert!(rep
        .chart_findings()
        .iter()
        .any(|f| *f != ChartFinding::Smooth));
}

#[test]
fn p_zero_elimination() {
    let q_poly = SparsePoly::parse(&["x1", "x3", "x4"], "x1*x3 + x4^6").unwrap();
    let m = CD2Model::new(7, SparsePoly::zero(&["x2", "x3", "x4"]), q_poly);
    let phi = eliminate_x5(&m);
    let expected = SparsePoly::parse(
        &["x1", "x2", "x3", "x4"],
        "x1^2 - x2^2*x4 - x1*x3*x4 - x4^7",
    )
    .unwrap();
    assert_eq!(phi, expected);
}
