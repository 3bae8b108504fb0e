//! Randomized invariants for the cheap kernels.

use proptest::prelude::*;

use semiscale::funcspace::{holder_quotient, parse_label, sample, sup_norm, Grid};
use semiscale::semigroups::SemigroupDescriptor;

fn small_grid() -> Grid {
    Grid::new(-8.0, 8.0, 1601).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn sup_norm_absolutely_homogeneous(c in -50.0f64..50.0) {
        let f = parse_label("sin").unwrap();
        let g = small_grid();
        let base = sup_norm(&f, &g).unwrap();
        let scaled = sup_norm(&f.scale(c), &g).unwrap();
        prop_assert!((scaled - c.abs() * base).abs() <= 1e-12 * (1.0 + base));
    }

    #[test]
    fn sup_norm_triangle_inequality(c in -5.0f64..5.0) {
        let g = small_grid();
        let f = parse_label("sin").unwrap();
        let h = parse_label("cos").unwrap().scale(c);
        let sum = Into::<f64>::into(sup_norm(&f.sub(&h.scale(-1.0)), &g).unwrap());
        prop_assert!(sum <= sup_norm(&f, &g).unwrap() + sup_norm(&h, &g).unwrap() + 1e-12);
    }

    #[test]
    fn holder_quotient_homogeneous(c in -10.0f64..10.0, alpha in 0.1f64..1.0) {
        let f = parse_label("holder_bump:0.5").unwrap();
        let g = Grid::new(-2.0, 2.0, 801).unwrap();
        let base = holder_quotient(&f, alpha, &g, 100).unwrap();
        let scaled = holder_quotient(&f.scale(c), alpha, &g, 100).unwrap();
        prop_assert!((scaled - c.abs() * base).abs() <= 1e-10 * (1.0 + base));
    }

    #[test]
    fn translation_law_pointwise(s in 0.0f64..2.0, t in 0.0f64..2.0, x in -5.0f64..5.0) {
        let sg = SemigroupDescriptor::translation();
        let f = parse_label("sin").unwrap();
        let two = sg.apply(t, &sg.apply(s, &f).unwrap()).unwrap();
        let one = sg.apply(s + t, &f).unwrap();
        prop_assert!((two.eval(x) - one.eval(x)).abs() <= 1e-12);
    }

    #[test]
    fn multiplication_law_pointwise(s in 0.0f64..2.0, t in 0.0f64..2.0, x in -5.0f64..5.0) {
        let q = parse_label("neg_quad").unwrap();
        let sg = SemigroupDescriptor::multiplication(q, &Grid::default_estimation()).unwrap();
        let f = parse_label("cos").unwrap();
        let two = sg.apply(t, &sg.apply(s, &f).unwrap()).unwrap();
        let one = sg.apply(s + t, &f).unwrap();
        let scale = 1.0 + two.eval(x).abs();
        prop_assert!((two.eval(x) - one.eval(x)).abs() <= 1e-12 * scale);
    }

    #[test]
    fn sample_matches_pointwise_eval(n in 2usize..64) {
        let f = parse_label("inv_quad:0.5").unwrap();
        let g = Grid::new(-3.0, 3.0, n).unwrap();
        let v = sample(&f, &g).unwrap();
        prop_assert_eq!(v.len(), n);
        for (i, x) in g.points().enumerate() {
            prop_assert_eq!(v[i], f.eval(x));
        }
    }
}
