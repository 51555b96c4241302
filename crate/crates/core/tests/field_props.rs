use bspline_burgers::field::end_slopes;
use bspline_burgers::{CoefficientVector, UniformGrid};
use proptest::prelude::*;

const M: usize = 16;

fn grid() -> UniformGrid {
    UniformGrid::new(0.0, 1.0 / M as f64, M).unwrap()
}

fn coeffs() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-5.0f64..5.0, M + 3)
}

proptest! {
    #[test]
    fn fit_reproduces_samples_and_slopes(
        samples in prop::collection::vec(-10.0f64..10.0, M + 1),
        dl in -20.0f64..20.0,
        dr in -20.0f64..20.0,
    ) {
        let c = CoefficientVector::fit_initial(grid(), &samples, dl, dr).unwrap();
        let scale = samples.iter().fold(1.0f64, |a, v| a.max(v.abs()));
        for (i, s) in samples.iter().enumerate() {
            let n = c.eval_nodal(i as isize).unwrap();
            prop_assert!((n.value - s).abs() <= 1e-12 * scale);
        }
        let d_scale = dl.abs().max(dr.abs()).max(1.0);
        prop_assert!((c.eval_nodal(0).unwrap().d1 - dl).abs() <= 1e-12 * d_scale * M as f64);
        prop_assert!((c.eval_nodal(M as isize).unwrap().d1 - dr).abs() <= 1e-12 * d_scale * M as f64);
    }

    #[test]
    fn cubic_polynomials_are_reproduced(
        a in -3.0f64..3.0, b in -3.0f64..3.0, c2 in -3.0f64..3.0, d in -3.0f64..3.0,
        xs in prop::collection::vec(0.0f64..=1.0, 100),
    ) {
        let p = |x: f64| a + b * x + c2 * x * x + d * x * x * x;
        let dp = |x: f64| b + 2.0 * c2 * x + 3.0 * d * x * x;
        let g = grid();
        let samples: Vec<f64> = g.nodes().into_iter().map(p).collect();
        let c = CoefficientVector::fit_initial(g, &samples, dp(0.0), dp(1.0)).unwrap();
        for x in xs {
            prop_assert!((c.eval_at(x).unwrap() - p(x)).abs() < 1e-10);
        }
    }

    #[test]
    fn nodal_evaluation_is_linear(u in coeffs(), v in coeffs(), alpha in -3.0f64..3.0, beta in -3.0f64..3.0) {
        let g = grid();
        let cu = CoefficientVector::new(u.clone(), g).unwrap();
        let cv = CoefficientVector::new(v.clone(), g).unwrap();
        let mix: Vec<f64> = u.iter().zip(&v).map(|(a, b)| alpha * a + beta * b).collect();
        let cm = CoefficientVector::new(mix, g).unwrap();
        for i in 0..=M as isize {
            let (a, b, m) = (cu.eval_nodal(i).unwrap(), cv.eval_nodal(i).unwrap(), cm.eval_nodal(i).unwrap());
            prop_assert!((m.value - (alpha * a.value + beta * b.value)).abs() < 1e-10);
            prop_assert!((m.d1 - (alpha * a.d1 + beta * b.d1)).abs() < 1e-8);
            prop_assert!((m.d2 - (alpha * a.d2 + beta * b.d2)).abs() < 1e-6);
        }
    }

    #[test]
    fn eval_at_nodes_matches_eval_nodal(u in coeffs()) {
        let g = grid();
        let c = CoefficientVector::new(u, g).unwrap();
        for i in 0..=M as isize {
            let n = c.eval_nodal(i).unwrap();
            let d = c.eval_with_derivs_at(g.node(i)).unwrap();
            prop_assert!((c.eval_at(g.node(i)).unwrap() - n.value).abs() < 3e-11);
            prop_assert!((d.d1 - n.d1).abs() < 1e-9);
        }
    }
}

#[test]
fn end_slopes_exact_for_quartics() {
    let h = 0.05;
    let p = |x: f64| x.powi(4) - 2.0 * x * x + x;
    let dp = |x: f64| 4.0 * x.powi(3) - 4.0 * x + 1.0;
    let samples: Vec<f64> = (0..=20).map(|i| p(i as f64 * h)).collect();
    let (l, r) = end_slopes(&samples, h).unwrap();
    assert!((l - dp(0.0)).abs() < 1e-10);
    assert!((r - dp(1.0)).abs() < 1e-10);
    assert!(end_slopes(&samples[..4], h).is_err());
}

#[test]
fn spec_fit_examples() {
    let g = UniformGrid::new(0.0, 0.1, 10).unwrap();
    let c = CoefficientVector::fit_initial(g, &[6.0; 11], 0.0, 0.0).unwrap();
    assert!(c.values().iter().all(|v| (v - 1.0).abs() < 1e-14));

    let ramp = CoefficientVector::fit_initial(g, &g.nodes(), 1.0, 1.0).unwrap();
    assert!((ramp.get(-1) + 0.1 / 6.0).abs() < 1e-14);
    assert!((ramp.get(11) - 1.1 / 6.0).abs() < 1e-14);

    let zero = CoefficientVector::fit_initial(g, &[0.0; 11], 0.0, 0.0).unwrap();
    assert!(zero.values().iter().all(|&v| v == 0.0));
}
