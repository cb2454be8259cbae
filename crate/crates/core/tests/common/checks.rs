//! Assertions on R_i and alpha_i shared by the invariant tests and the acceptance run.

use nuniv_core::space::{extend, hyperbolic, is_isometric, orthogonal_sum, space_of_classes};
use nuniv_core::{BongLattice, Ext};

pub fn check_r_alpha(l: &BongLattice) {
    let ctx = l.ctx();
    let e = ctx.ei();
    let m = l.rank();
    let minus_one = ctx.class_of_int(-1);
    for i in 1..m {
        let diff = l.r(i + 1) - l.r(i);
        let a = l.alpha(i);
        let dpair = l.d_bracket(minus_one, i, i + 1).unwrap();

        // Monotonicity of R_i + alpha_i and alpha_i - R_{i+1}.
        for j in i..m {
            assert!(a + l.r(i) <= l.alpha(j) + l.r(j));
            assert!(a - l.r(i + 1) >= l.alpha(j) - l.r(j + 1));
            if l.r(i) + l.r(i + 1) == l.r(j) + l.r(j + 1) {
                for k in i..=j {
                    assert!(l.alpha(k) + l.r(k) == a + l.r(i));
                }
            }
        }

        // Range and trichotomy.
        if a <= 2 * e {
            assert!(a.is_integer() && a >= 0);
        } else {
            assert!(a.twice().is_some());
        }
        assert_eq!(a == 0, diff == -2 * e);
        assert_eq!(diff.cmp(&(2 * e)), a.partial_cmp(&(2 * e)).unwrap());
        if diff <= 2 * e {
            assert!(a >= diff);
            assert_eq!(a == diff, diff == 2 * e || diff % 2 != 0);
        }
        if diff >= 2 * e || [-2 * e, 2 - 2 * e, 2 * e - 2].contains(&diff) {
            assert_eq!(a, Ext::from_twice(diff + 2 * e));
        }
        if a == 0 {
            assert!(dpair >= 2 * e);
        }
        if a == 1 {
            assert!((diff <= 0 && diff >= 2 - 2 * e && diff % 2 == 0) || diff == 1, "diff {diff}");
            assert!(dpair >= 1 - diff);
            if diff != 2 - 2 * e {
                assert!(dpair == 1 - diff);
            }
        }
        if 2 - 2 * e < diff && diff <= 0 {
            assert_eq!(a == 1, dpair == 1 - diff);
        }

        // Odd steps are positive; a step of -2e gives a hyperbolic or [1, -Delta] plane.
        if diff % 2 != 0 {
            assert!(diff > 0);
        }
        if diff == -2 * e {
            let d = ctx.class_mul(minus_one, ctx.class_mul(l.class(i), l.class(i + 1))).dval();
            assert!(d >= 2 * e);
            let plane = space_of_classes(ctx, &[l.class(i), l.class(i + 1)]);
            let scale = if l.r(i) % 2 == 0 { ctx.class_one() } else { ctx.class_pi() };
            let alt = space_of_classes(ctx, &[scale, ctx.class_mul(scale, ctx.class_mul(minus_one, ctx.class_delta()))]);
            assert!(is_isometric(&plane, &hyperbolic(ctx, 1)) || is_isometric(&plane, &alt));
        }
    }
}

/// Returns whether the hyperbolic-prefix branch was exercised.
pub fn check_integral(l: &BongLattice) -> bool {
    let ctx = l.ctx();
    let e = ctx.ei();
    let m = l.rank();
    let minus_one = ctx.class_of_int(-1);
    assert!(l.is_integral());
    for i in 1..=m {
        for j in (i..=m).step_by(2) {
            let floor = if i % 2 == 1 { 0 } else { -2 * e };
            assert!(l.r(j) >= l.r(i) && l.r(i) >= floor);
        }
    }
    for j in (1..=m).step_by(2) {
        if l.r(j) == 0 {
            for i in 1..=j {
                assert_eq!(l.r(i).rem_euclid(2), 0);
                if i % 2 == 1 {
                    assert_eq!(l.r(i), 0);
                }
            }
        }
    }
    let one_minus_delta = space_of_classes(ctx, &[ctx.class_one(), ctx.class_mul(minus_one, ctx.class_delta())]);
    let mut hit = false;
    for j in (2..=m).step_by(2) {
        if l.r(j) != -2 * e {
            continue;
        }
        for i in (2..=j).step_by(2) {
            assert_eq!(l.r(i - 1), 0);
            assert_eq!(l.r(i), -2 * e);
            let d = ctx.class_mul(minus_one, ctx.class_mul(l.class(i - 1), l.class(i))).dval();
            let db = l.d_bracket(minus_one, i - 1, i).unwrap();
            assert!(d >= db && db >= 2 * e);
        }
        let sign = if (j / 2) % 2 == 1 { minus_one } else { ctx.class_one() };
        assert!(l.d_bracket(sign, 1, j).unwrap() >= 2 * e);
        hit = true;
        let prefix = l.prefix_space(j);
        let hk = hyperbolic(ctx, j / 2);
        let alt = orthogonal_sum(ctx, hyperbolic(ctx, j / 2 - 1), one_minus_delta);
        assert!(is_isometric(&prefix, &hk) || is_isometric(&prefix, &alt));
        if j < m && l.r(j + 1) % 2 == 0 {
            let next = l.prefix_space(j + 1);
            let c = l.class(j + 1);
            let ok = [c, ctx.class_mul(c, ctx.class_delta())]
                .iter()
                .any(|&eps| is_isometric(&next, &extend(ctx, hk, eps)));
            assert!(ok);
        }
    }
    hit
}
