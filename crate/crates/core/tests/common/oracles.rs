//! Independent reference computations.

use nuniv_core::universal::TestingEntry;
use nuniv_core::{Ext, FieldContext};

/// All units modulo `pi^(2e+1)`, as digit vectors.
pub fn units_mod(ctx: &FieldContext) -> Vec<Vec<u32>> {
    let len = (2 * ctx.ei() + 1) as usize;
    let q = 1u32 << ctx.f();
    let mut out = vec![vec![]];
    for pos in 0..len {
        let lo = if pos == 0 { 1 } else { 0 };
        out = out
            .into_iter()
            .flat_map(|p| (lo..q).map(move |d| [p.clone(), vec![d]].concat()))
            .collect();
    }
    out
}

/// `d(c)` for a nonzero integer `c` in Q2 by exhaustive search over `x mod 2^k`.
/// Valid when `ord c + 3 <= k`.
pub fn q2_defect_brute(c: i64, k: u32) -> Ext {
    let modulus = 1i64 << k;
    let v = c.trailing_zeros() as i64;
    if v % 2 == 1 {
        return Ext::int(0);
    }
    let best = (0..modulus)
        .map(|x| {
            let diff = (c - x * x).rem_euclid(modulus);
            if diff == 0 {
                k as i64
            } else {
                diff.trailing_zeros() as i64
            }
        })
        .max()
        .unwrap()
        - v;
    if best >= 3 {
        Ext::INF
    } else {
        Ext::int(best)
    }
}

/// `(a, b)` over Q2 for `a = 2^alpha u`, `b = 2^beta v`.
pub fn q2_hilbert_closed_form(a: i64, b: i64) -> i8 {
    let (al, be) = (a.trailing_zeros() as i64, b.trailing_zeros() as i64);
    let (u, v) = (a >> al, b >> be);
    let eps = |x: i64| ((x - 1) / 2).rem_euclid(2);
    let omega = |x: i64| ((x * x - 1) / 8).rem_euclid(2);
    if (eps(u) * eps(v) + al * omega(v) + be * omega(u)) % 2 == 0 {
        1
    } else {
        -1
    }
}

/// The R-invariants of the maximal lattice on `W_nu^n(c)`.
pub fn expected_r(ctx: &FieldContext, t: &TestingEntry, n: usize) -> Vec<i64> {
    let e = ctx.ei();
    let hyp = |i: usize| if i % 2 == 1 { 0 } else { -2 * e };
    let mut r: Vec<i64> = (1..=n).map(hyp).collect();
    let trivial = t.c == ctx.class_one() || t.c == ctx.class_delta();
    if n.is_multiple_of(2) {
        if trivial {
            if t.nu == 2 {
                r[n - 2] = 1;
                r[n - 1] = 1 - 2 * e;
            }
        } else {
            r[n - 1] = 1 - t.c.dval().as_int().unwrap();
        }
    } else if t.c.parity() == 0 {
        if t.nu == 2 {
            r[n - 2] = 2 - 2 * e;
        }
    } else {
        r[n - 1] = 1;
    }
    r
}
