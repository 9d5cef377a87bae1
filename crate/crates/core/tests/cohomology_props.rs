use proptest::prelude::*;

use bigrade_core::cohomology::{h0_h1, h1_via_duality, CurveProblem};
use bigrade_core::reduction::classify;
use bigrade_core::{grid_curve_form, random_biform, smoothness_certificate, BiForm, Field, Fp, Rationals};

fn fp() -> Fp {
    Fp::default_prime()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    // a larger twist embeds the smaller bundle, so h^0 cannot drop
    #[test]
    fn h0_is_monotone(seed in any::<u64>(), a in 1usize..4, b in 1usize..4, dh in 0i64..3, dk in -4i64..0, sh in 0i64..3, sk in 0i64..3) {
        let form = random_biform(&fp(), 1, 1, a, b, seed);
        let (h, k) = (a as i64 + dh, dk - 2);
        let (hb, kb) = (h + sh, (k + sk).min(-2));
        prop_assume!(kb >= k);
        let small = h0_h1(&form, h, k).unwrap();
        let big = h0_h1(&form, hb, kb).unwrap();
        prop_assert!(small.h0 <= big.h0);
    }

    #[test]
    fn line_components_also_monotone(seed in any::<u64>(), dh in 0i64..3, dk in 0i64..3) {
        let f = fp();
        let g = random_biform(&f, 1, 1, 2, 1, seed);
        let form = BiForm::linear_y(f, 1, 1, &[1, 0]).multiply(&g).unwrap();
        let small = h0_h1(&form, 2 + dh, -5 + dk).unwrap();
        let big = h0_h1(&form, 4, -2).unwrap();
        prop_assert!(small.h0 <= big.h0);
    }

    #[test]
    fn duality_exchanges_h0_and_h1(seed in any::<u64>(), a in 2i64..5, b in 2i64..5, h in -10i64..10, k in -10i64..10) {
        let r = classify(a, b, h, k);
        prop_assume!(r.target.is_some());
        let (ta, tb, th, tk) = r.target.unwrap();
        let form = random_biform(&fp(), 1, 1, ta as usize, tb as usize, seed);
        let direct = h0_h1(&form, th, tk).unwrap();
        prop_assert_eq!(direct.h1, h1_via_duality(&form, th, tk).unwrap());
    }

    #[test]
    fn substitution_preserves_cohomology(seed in any::<u64>(), g in prop::array::uniform4(0u64..65537)) {
        let f = fp();
        prop_assume!(f.sub(&f.mul(&g[0], &g[3]), &f.mul(&g[1], &g[2])) != 0);
        let gm = vec![vec![g[0], g[1]], vec![g[2], g[3]]];
        let y0 = BiForm::linear_y(f, 1, 1, &[1, 0]);
        let form = y0.multiply(&random_biform(&f, 1, 1, 2, 1, seed)).unwrap();
        let moved = form.substitute_linear(&gm, &gm).unwrap();
        prop_assert_eq!(h0_h1(&form, 3, -3).unwrap(), h0_h1(&moved, 3, -3).unwrap());
    }
}

#[test]
fn swap_of_rulings_keeps_numbers() {
    for seed in 0..5 {
        let form = random_biform(&fp(), 1, 1, 2, 3, seed);
        let p = CurveProblem::new(form, 4, -4);
        let dual_swapped = p.serre_dual().swap_rulings();
        let direct = p.cohomology().unwrap();
        let mirrored = dual_swapped.cohomology().unwrap();
        assert_eq!((direct.h0, direct.h1), (mirrored.h1, mirrored.h0));
        assert_eq!(dual_swapped.swap_rulings().serre_dual(), p);
    }
}

#[test]
fn grid_curves_over_the_rationals() {
    let q = Rationals;
    let v = |xs: &[i64]| xs.iter().map(|&x| q.from_i64(x)).collect::<Vec<_>>();
    for (a, b, m) in [(2i64, 2i64, 2i64), (2, 3, 2), (3, 3, 2)] {
        let lambda = v(&(1..=a).collect::<Vec<_>>());
        let mu = v(&(1..=b).collect::<Vec<_>>());
        let h: Vec<_> = v(&[5, 7, 3, 11][..a as usize + 1]);
        assert!(smoothness_certificate(&q, a as usize, b as usize, &lambda, &mu, &h).unwrap());
        let form = grid_curve_form(&q, a as usize, b as usize, &lambda, &mu, &h).unwrap();
        let res = h0_h1(&form, -1 + m * a, b - 1 - m * b).unwrap();
        assert_eq!((res.h0, res.h1), (0, 0), "({a},{b})");
    }
}
