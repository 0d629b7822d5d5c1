use num_complex::Complex64;
use polyad::hilbert::generators;
use polyad::{ComplexRational, ResonanceSpec, ZMonomial, ZPolynomial};
use proptest::prelude::*;

fn poly_strategy(n: usize) -> impl Strategy<Value = ZPolynomial> {
    let term = (
        prop::collection::vec(0u32..=2, n),
        prop::collection::vec(0u32..=2, n),
        -4i64..=4,
        -4i64..=4,
    );
    prop::collection::vec(term, 0..5).prop_map(move |terms| {
        let mut f = ZPolynomial::zero(n);
        for (a, b, re, im) in terms {
            if a.iter().chain(&b).sum::<u32>() > 4 {
                continue;
            }
            f = &f
                + &ZPolynomial::monomial(
                    ZMonomial::new(a, b),
                    ComplexRational::from_integers(re, im),
                );
        }
        f
    })
}

fn bracket(f: &ZPolynomial, g: &ZPolynomial) -> ZPolynomial {
    f.poisson_bracket(g).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn antisymmetry(f in poly_strategy(2), g in poly_strategy(2)) {
        prop_assert_eq!(bracket(&f, &g), -&bracket(&g, &f));
    }

    #[test]
    fn jacobi_identity(f in poly_strategy(3), g in poly_strategy(3), h in poly_strategy(3)) {
        let sum = &(&bracket(&f, &bracket(&g, &h)) + &bracket(&g, &bracket(&h, &f))) + &bracket(&h, &bracket(&f, &g));
        prop_assert!(sum.is_zero());
    }

    #[test]
    fn leibniz_rule(f in poly_strategy(2), g in poly_strategy(2), h in poly_strategy(2)) {
        let lhs = bracket(&f, &(&g * &h));
        let rhs = &(&bracket(&f, &g) * &h) + &(&g * &bracket(&f, &h));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn invariant_products_stay_in_kernel(e in prop::collection::vec(0u32..=2, 5), pq in prop::sample::select(vec![(1u32, 1u32), (2, 1), (3, 2)])) {
        let spec = ResonanceSpec::new(3, pq.0, pq.1).unwrap();
        let gens = generators(&spec);
        let mut f = ZPolynomial::one(3);
        for ((_, g), k) in gens.iter().zip(&e) {
            f = &f * &g.pow(*k);
        }
        prop_assert!(spec.ad_h0(&f).unwrap().is_zero());
    }

    #[test]
    fn flow_preserves_generators(
        re in prop::collection::vec(-2.0f64..2.0, 3),
        im in prop::collection::vec(-2.0f64..2.0, 3),
        t in 0.0f64..20.0,
    ) {
        let spec = ResonanceSpec::new(3, 2, 1).unwrap();
        let z0: Vec<Complex64> = re.iter().zip(&im).map(|(a, b)| Complex64::new(*a, *b)).collect();
        let zt = spec.flow_h0(&z0, t).unwrap();
        for (_, g) in generators(&spec).iter() {
            let a = g.evaluate(&z0).unwrap();
            let b = g.evaluate(&zt).unwrap();
            prop_assert!((a - b).norm() <= 1e-12 * a.norm().max(1.0));
        }
    }

    #[test]
    fn time_reversal_is_an_involution(f in poly_strategy(2)) {
        prop_assert_eq!(f.time_reversal().time_reversal(), f);
    }
}
