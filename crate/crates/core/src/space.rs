//! Quadratic spaces over the field, up to isometry.
//!
//! A nondegenerate space is determined by its dimension, determinant class
//! and Hasse invariant `prod_{i<j} (a_i, a_j)` of any orthogonal basis.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{FieldContext, FieldElement, SquareClass};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SpaceInv {
    pub dim: usize,
    #[serde(skip)]
    pub det: SquareClass,
    pub hasse: i8,
}

pub fn empty_space(ctx: &FieldContext) -> SpaceInv {
    SpaceInv { dim: 0, det: ctx.class_one(), hasse: 1 }
}

/// `V + [c]`.
pub fn extend(ctx: &FieldContext, v: SpaceInv, c: SquareClass) -> SpaceInv {
    SpaceInv {
        dim: v.dim + 1,
        det: ctx.class_mul(v.det, c),
        hasse: v.hasse * ctx.hilbert_classes(v.det, c),
    }
}

pub fn space_of_classes(ctx: &FieldContext, classes: &[SquareClass]) -> SpaceInv {
    classes.iter().fold(empty_space(ctx), |v, &c| extend(ctx, v, c))
}

pub fn space_of_diagonal(ctx: &FieldContext, entries: &[FieldElement]) -> Result<SpaceInv> {
    let classes = entries.iter().map(|a| ctx.square_class_of(a)).collect::<Result<Vec<_>>>()?;
    Ok(space_of_classes(ctx, &classes))
}

pub fn orthogonal_sum(ctx: &FieldContext, a: SpaceInv, b: SpaceInv) -> SpaceInv {
    SpaceInv {
        dim: a.dim + b.dim,
        det: ctx.class_mul(a.det, b.det),
        hasse: a.hasse * b.hasse * ctx.hilbert_classes(a.det, b.det),
    }
}

pub fn is_isometric(a: &SpaceInv, b: &SpaceInv) -> bool {
    a == b
}

/// `H^k`, the orthogonal sum of `k` hyperbolic planes.
pub fn hyperbolic(ctx: &FieldContext, k: usize) -> SpaceInv {
    let minus_one = ctx.class_of_int(-1);
    (0..k).fold(empty_space(ctx), |v, _| {
        let h = space_of_classes(ctx, &[ctx.class_one(), minus_one]);
        orthogonal_sum(ctx, v, h)
    })
}

/// `[1, -Delta, pi, -Delta pi]`, the anisotropic quaternary space.
pub fn anisotropic_quaternary(ctx: &FieldContext) -> SpaceInv {
    let m1 = ctx.class_of_int(-1);
    let md = ctx.class_mul(m1, ctx.class_delta());
    let pi = ctx.class_pi();
    space_of_classes(ctx, &[ctx.class_one(), md, pi, ctx.class_mul(md, pi)])
}

pub fn is_isotropic(ctx: &FieldContext, v: &SpaceInv) -> bool {
    match v.dim {
        0 | 1 => false,
        2 => v.det == ctx.class_of_int(-1),
        3 => {
            let minus_det = ctx.class_mul(ctx.class_of_int(-1), v.det);
            let hd = orthogonal_sum(ctx, hyperbolic(ctx, 1), space_of_classes(ctx, &[minus_det]));
            *v == hd
        }
        4 => !(v.det == ctx.class_one() && v.hasse == anisotropic_quaternary(ctx).hasse),
        _ => true,
    }
}

/// Whether `w` embeds isometrically in `v`.
pub fn space_represents(ctx: &FieldContext, w: &SpaceInv, v: &SpaceInv) -> bool {
    if w.dim > v.dim {
        return false;
    }
    let quot = ctx.class_mul(v.det, w.det);
    match v.dim - w.dim {
        0 => w == v,
        1 => orthogonal_sum(ctx, *w, space_of_classes(ctx, &[quot])) == *v,
        2 => quot != ctx.class_of_int(-1) || orthogonal_sum(ctx, *w, hyperbolic(ctx, 1)) == *v,
        _ => true,
    }
}

/// Whether `v` represents every space of dimension `n`.
pub fn is_n_universal_space(ctx: &FieldContext, v: &SpaceInv, n: usize) -> bool {
    match n {
        0 => true,
        1 => v.dim >= 4 || (v.dim >= 2 && is_isotropic(ctx, v)),
        _ => v.dim >= n + 3 || (n == 2 && *v == hyperbolic(ctx, 2)),
    }
}

/// Every isometry class of nondegenerate spaces of dimension `n`.
pub fn all_spaces(ctx: &FieldContext, n: usize) -> Vec<SpaceInv> {
    let classes = ctx.all_classes();
    let mut current: Vec<SpaceInv> = vec![empty_space(ctx)];
    for _ in 0..n {
        let mut next = Vec::new();
        let mut seen = BTreeSet::new();
        for v in &current {
            for &c in &classes {
                let w = extend(ctx, *v, c);
                if seen.insert((w.det.bits(), w.hasse)) {
                    next.push(w);
                }
            }
        }
        current = next;
    }
    current
}

fn check_w_args(n: usize, nu: u8, c: SquareClass, ctx: &FieldContext) -> Result<()> {
    if nu != 1 && nu != 2 {
        return Err(Error::UndefinedSpace(format!("nu must be 1 or 2, got {nu}")));
    }
    if n == 0 {
        return Err(Error::UndefinedSpace("n must be positive".into()));
    }
    if nu == 2 && n == 1 {
        return Err(Error::UndefinedSpace("W_2 is undefined in dimension 1".into()));
    }
    if nu == 2 && n == 2 && c == ctx.class_one() {
        return Err(Error::UndefinedSpace("W_2 of dimension 2 with c = 1 does not exist".into()));
    }
    Ok(())
}

/// The space `W_nu^n(c)`: `W_1` is `H^k + [1, -c]` (even `n`) or `H^k + [c]` (odd `n`),
/// and `W_2` is the other space with the same dimension and determinant.
pub fn w_space(ctx: &FieldContext, nu: u8, n: usize, c: SquareClass) -> Result<SpaceInv> {
    check_w_args(n, nu, c, ctx)?;
    let w1 = if n.is_multiple_of(2) {
        let mc = ctx.class_mul(ctx.class_of_int(-1), c);
        orthogonal_sum(ctx, hyperbolic(ctx, (n - 2) / 2), space_of_classes(ctx, &[ctx.class_one(), mc]))
    } else {
        orthogonal_sum(ctx, hyperbolic(ctx, (n - 1) / 2), space_of_classes(ctx, &[c]))
    };
    if nu == 1 {
        return Ok(w1);
    }
    Ok(SpaceInv { hasse: -w1.hasse, ..w1 })
}

/// `W_2^n(c)` written as an explicit diagonal form.
pub fn w2_diagonal(ctx: &FieldContext, n: usize, c: SquareClass) -> Result<Vec<FieldElement>> {
    check_w_args(n, 2, c, ctx)?;
    let one = ctx.one();
    let m1 = ctx.from_int(-1);
    let delta = ctx.delta();
    let pi = ctx.pi();
    let md = ctx.neg(&delta);
    let rep = ctx.class_rep(c);
    let h = |k: usize| -> Vec<FieldElement> {
        (0..k).flat_map(|_| [ctx.one(), ctx.from_int(-1)]).collect()
    };
    let mut out;
    if n.is_multiple_of(2) {
        if c == ctx.class_one() {
            out = h((n - 4) / 2);
            out.extend([one, md.clone(), pi.clone(), ctx.mul(&md, &pi)]);
        } else if c == ctx.class_delta() {
            out = h((n - 2) / 2);
            out.extend([pi.clone(), ctx.mul(&md, &pi)]);
        } else if c.parity() == 0 {
            let s = ctx.sharp(&rep)?;
            out = h((n - 2) / 2);
            out.extend([s.clone(), ctx.mul(&m1, &ctx.mul(&s, &rep))]);
        } else {
            out = h((n - 2) / 2);
            out.extend([delta.clone(), ctx.mul(&md, &rep)]);
        }
    } else if c.parity() == 0 {
        out = h((n - 3) / 2);
        out.extend([pi.clone(), ctx.mul(&md, &pi), ctx.mul(&delta, &rep)]);
    } else {
        out = h((n - 3) / 2);
        out.extend([one, md, ctx.mul(&delta, &rep)]);
    }
    Ok(out)
}
