use num_bigint::BigInt;
use num_traits::{One, Signed};

use dyadic_core::chebyshev::{p_poly, signed_composition_angle, verify_inverse_mod_minpoly};
use dyadic_core::even_power::{even_first_row, even_matrix, verify_even};
use dyadic_core::minpoly::{closed_minpoly, lemma_power_of_two, nested_minpoly};
use dyadic_core::negative_power::negative_matrix;
use dyadic_core::odd_power::{commutes, conjugation_invariance, is_normal, matrix_scatter, transpose_relations_hold,
    verify_numeric, GroupElement};
use dyadic_core::series::{generalized_multiple_angle, multiple_angle, SeriesOptions};
use dyadic_core::zeta::{zeta_binomial_series, zeta_sine_sum};
use dyadic_core::EvalContext;

fn ctx() -> EvalContext {
    EvalContext::new(256).unwrap().with_tolerance_log2(128)
}

#[test]
fn minpoly_shape() {
    for n in 2..=10u32 {
        let f = closed_minpoly(n).unwrap();
        assert_eq!(f.coeff(0), BigInt::one());
        assert_eq!(f.degree(), Some(1 << (n - 1)));
        // sign (−1)^{2^{n−2}}: only n = 2 has a negative leading coefficient
        let lead = BigInt::one() << ((1usize << (n - 1)) - 1);
        let lead = if n == 2 { -lead } else { lead };
        assert_eq!(f.leading().unwrap(), &lead);
        if n >= 3 {
            assert_eq!(nested_minpoly(n).unwrap(), f);
        }
    }
    for n in 2..=8 {
        for k in 1..=1i64 << (n - 2) {
            let (l, r) = lemma_power_of_two(n, k).unwrap();
            // n = 2 means r = 1, where the identity holds only up to sign
            let r = if n == 2 { -r } else { r };
            assert_eq!(l, r, "n={n} k={k}");
        }
    }
}

#[test]
fn composition_angle_matches_numeric() {
    let ctx = ctx();
    for n in 3..=7u32 {
        for i in 1..=12i64 {
            let p = p_poly(i as u64).unwrap().signed();
            for j in 1..=1i64 << (n - 2) {
                let (k, s) = signed_composition_angle(i, j, n).unwrap();
                let direct = p.eval(&ctx.cos_pi_dyadic(2 * j - 1, n), &ctx);
                let folded = ctx.cos_pi_dyadic(2 * k - 1, n) * s.as_i64();
                assert!(ctx.within_tolerance(&(direct - folded)), "i={i} j={j} n={n}");
            }
        }
    }
}

#[test]
fn inverse_index_reduces_to_x() {
    for n in 3..=6u32 {
        for i in 1..=1i64 << (n - 2) {
            assert!(verify_inverse_mod_minpoly(i, n).unwrap(), "i={i} n={n}");
        }
    }
}

#[test]
fn odd_matrix_structure() {
    let ctx = ctx();
    for n in 3..=6u32 {
        for r in (1..=15).step_by(2) {
            let m = matrix_scatter(r, n).unwrap();
            assert!(m.rows_are_signed_permutations());
            assert!(transpose_relations_hold(&m).unwrap(), "r={r} n={n}");
            for a in 1..=1i64 << (n - 2) {
                assert!(conjugation_invariance(&m, GroupElement(a)).unwrap());
            }
            assert!(ctx.within_tolerance(&verify_numeric(&m, r, &ctx).unwrap()));
        }
    }
    for n in [4u32, 5] {
        let ms: Vec<_> = (1..=15).step_by(2).map(|r| matrix_scatter(r, n).unwrap()).collect();
        for a in &ms {
            assert!(is_normal(a));
            for b in &ms {
                assert!(commutes(a, b).unwrap());
            }
        }
    }
}

#[test]
fn even_matrix_structure() {
    let ctx = ctx();
    for n in 3..=6u32 {
        for r in (2..=20).step_by(2) {
            let m = even_matrix(r, n).unwrap();
            let c = m.entry(1, 1).clone();
            assert!((1..=m.dim()).all(|i| *m.entry(i, 1) == c), "constant column r={r} n={n}");
            assert!(ctx.within_tolerance(&verify_even(&m, r, &ctx).unwrap()), "r={r} n={n}");
        }
        for r in (2..=(1i64 << n) - 2).step_by(2) {
            let row = even_first_row(r, n).unwrap();
            let tail = &row[1..];
            assert!(tail.iter().all(|v| !v.is_negative()), "r={r} n={n}");
            assert!(tail.windows(2).all(|w| w[0] >= w[1]), "r={r} n={n}");
        }
    }
}

#[test]
fn negative_matrix_structure() {
    let ctx = ctx();
    for n in 3..=7u32 {
        for r in [-1i64, -3, -5] {
            let m = negative_matrix(r, n).unwrap();
            assert!(ctx.within_tolerance(&m.power_residual(r as i32, &ctx)), "r={r} n={n}");
            assert!(m.rows_are_signed_permutations(), "r={r} n={n}");
            let back = m.reversed().unwrap().reversed().unwrap();
            assert_eq!(back, m);
        }
    }
}

#[test]
fn generalized_expansion_terminates_for_integers() {
    let ctx = ctx();
    let theta = ctx.float(0.3);
    for big_n in 1..=12u32 {
        let (s, c) = multiple_angle(big_n, &theta, &ctx).unwrap();
        let g = generalized_multiple_angle(&ctx.float(big_n), &theta, SeriesOptions::fixed(big_n as usize + 2), &ctx)
            .unwrap();
        assert!(ctx.within_tolerance(&(s - &g.sin.value)), "N={big_n}");
        assert!(ctx.within_tolerance(&(c - &g.cos.value)), "N={big_n}");
    }
}

#[test]
fn binomial_series_matches_sine_sum() {
    let ctx = ctx();
    let bound = ctx.float(1) >> 40u32;
    for s in [2u32, 3] {
        for n in 3..=5u32 {
            let a = zeta_binomial_series(&ctx.float(s), n, 100_000, &ctx).unwrap();
            let b = zeta_sine_sum(&ctx.float(s), n, &ctx).unwrap();
            assert!(ctx.float(&a.value - &b.value).abs() < bound, "s={s} n={n}");
            assert!(!a.value.is_zero());
        }
    }
}
