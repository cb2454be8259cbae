//! Lattices given by a good BONG (basis of norm generators) `x_1, ..., x_m`,
//! recorded as `a_i = Q(x_i)`, together with the derived invariants
//! `R_i = ord(a_i)` and `alpha_i`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ext::Ext;
use crate::field::{FieldContext, FieldElement, SquareClass};
use crate::space::{extend, empty_space, SpaceInv};

#[derive(Clone)]
pub struct BongLattice {
    ctx: Arc<FieldContext>,
    a: Vec<FieldElement>,
    r: Vec<i64>,
    classes: Vec<SquareClass>,
    /// `prefix[i]` is the class of `a_1 ... a_i`.
    prefix: Vec<SquareClass>,
    /// `pair_d[i - 1] = d(-a_i a_{i+1})`.
    pair_d: Vec<Ext>,
    /// `alpha[i - 1] = alpha_i`.
    alpha: Vec<Ext>,
    /// `prefix_space[i]` is the space `[a_1, ..., a_i]`.
    prefix_space: Vec<SpaceInv>,
}

impl std::fmt::Debug for BongLattice {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let labels: Vec<String> = self.classes.iter().map(|&c| self.ctx.class_label(c)).collect();
        write!(f, "Bong(R={:?}, classes={:?})", self.r, labels)
    }
}

/// A building block for lattices.
#[derive(Clone, Debug)]
pub enum Block {
    /// The hyperbolic plane `<1, -pi^(-2e)>`.
    H,
    /// `2^-1 A(2, 2 rho)`, i.e. `<1, -Delta pi^(-2e)>`.
    A22Rho,
    /// `2^-1 pi A(2, 2 rho)`, i.e. `<pi, -Delta pi^(1-2e)>`.
    PiA22Rho,
    Unary(FieldElement),
    /// `<x, y>` for a diagonal lattice with `ord x <= ord y`.
    BinaryDiag(FieldElement, FieldElement),
    /// `<delta k#, -delta k# k pi^(2-2e), delta k>` with `d(k) = 2e - 1`;
    /// `None` picks a canonical `k`.
    TernaryKappa(FieldElement, Option<FieldElement>),
    Literal(Vec<FieldElement>),
    Concat(Vec<Block>),
}

impl Block {
    fn entries(&self, ctx: &FieldContext) -> Result<Vec<FieldElement>> {
        let e = ctx.ei();
        Ok(match self {
            Block::H => vec![ctx.one(), ctx.neg(&ctx.pi_pow(-2 * e))],
            Block::A22Rho => vec![ctx.one(), ctx.neg(&ctx.mul(&ctx.delta(), &ctx.pi_pow(-2 * e)))],
            Block::PiA22Rho => {
                vec![ctx.pi(), ctx.neg(&ctx.mul(&ctx.delta(), &ctx.pi_pow(1 - 2 * e)))]
            }
            Block::Unary(x) => vec![x.clone()],
            Block::BinaryDiag(x, y) => {
                let (vx, vy) = (nonzero_val(x)?, nonzero_val(y)?);
                if vx > vy {
                    return Err(Error::BadParams("binary block needs ord x <= ord y".into()));
                }
                vec![x.clone(), y.clone()]
            }
            Block::TernaryKappa(delta, kappa) => {
                let kappa = match kappa {
                    Some(k) => k.clone(),
                    None => canonical_kappa(ctx),
                };
                if ctx.defect_order(&kappa)? != Ext::int(2 * e - 1) {
                    return Err(Error::BadParams("kappa must have defect order 2e-1".into()));
                }
                let ks = ctx.sharp(&kappa)?;
                let dks = ctx.mul(delta, &ks);
                vec![
                    dks.clone(),
                    ctx.neg(&ctx.mul(&ctx.mul(&dks, &kappa), &ctx.pi_pow(2 - 2 * e))),
                    ctx.mul(delta, &kappa),
                ]
            }
            Block::Literal(v) => v.clone(),
            Block::Concat(blocks) => {
                let mut out = Vec::new();
                for b in blocks {
                    out.extend(b.entries(ctx)?);
                }
                out
            }
        })
    }
}

fn nonzero_val(x: &FieldElement) -> Result<i64> {
    x.val().ok_or_else(|| Error::BadParams("BONG entries must be nonzero".into()))
}

/// The first canonical unit class representative with defect order `2e - 1`.
pub fn canonical_kappa(ctx: &FieldContext) -> FieldElement {
    let target = Ext::int(2 * ctx.ei() - 1);
    let c = ctx
        .unit_class_reps()
        .into_iter()
        .find(|c| c.dval() == target)
        .expect("a unit class with defect order 2e-1 exists");
    ctx.class_rep(c)
}

pub fn make_block(ctx: &Arc<FieldContext>, block: &Block) -> Result<BongLattice> {
    BongLattice::new(ctx, block.entries(ctx)?)
}

/// Juxtapose BONGs and validate the result.
pub fn concat(parts: &[&BongLattice]) -> Result<BongLattice> {
    let first = parts.first().ok_or_else(|| Error::BadParams("nothing to concatenate".into()))?;
    let mut a = Vec::new();
    for p in parts {
        if !Arc::ptr_eq(&p.ctx, &first.ctx) {
            return Err(Error::BadParams("lattices over different fields".into()));
        }
        a.extend(p.a.iter().cloned());
    }
    BongLattice::new(&first.ctx, a)
}

impl BongLattice {
    /// Validate `a` as a good BONG and compute its invariants.
    pub fn new(ctx: &Arc<FieldContext>, a: Vec<FieldElement>) -> Result<BongLattice> {
        if a.is_empty() {
            return Err(Error::BadParams("a BONG needs at least one entry".into()));
        }
        let mut r = Vec::with_capacity(a.len());
        let mut classes = Vec::with_capacity(a.len());
        for x in &a {
            r.push(nonzero_val(x)?);
            classes.push(ctx.square_class_of(x)?);
        }
        let m = a.len();
        let two_e = 2 * ctx.ei();
        let mut pair_d = Vec::with_capacity(m.saturating_sub(1));
        let minus_one = ctx.class_of_int(-1);
        for i in 0..m.saturating_sub(1) {
            let c = ctx.class_mul(minus_one, ctx.class_mul(classes[i], classes[i + 1]));
            pair_d.push(c.dval());
        }
        for i in 0..m.saturating_sub(1) {
            let step = r[i + 1] - r[i];
            if pair_d[i] + step < 0 {
                return Err(Error::NotAGoodBong {
                    index: i + 1,
                    inequality: "R[i+1] - R[i] + d(-a[i] a[i+1]) >= 0".into(),
                });
            }
            if step < -two_e {
                return Err(Error::NotAGoodBong {
                    index: i + 1,
                    inequality: "R[i+1] - R[i] >= -2e".into(),
                });
            }
        }
        for i in 0..m.saturating_sub(2) {
            if r[i] > r[i + 2] {
                return Err(Error::NotAGoodBong { index: i + 1, inequality: "R[i] <= R[i+2]".into() });
            }
        }
        let mut prefix = vec![ctx.class_one()];
        let mut prefix_space = vec![empty_space(ctx)];
        for &c in &classes {
            prefix.push(ctx.class_mul(*prefix.last().unwrap(), c));
            prefix_space.push(extend(ctx, *prefix_space.last().unwrap(), c));
        }
        let mut lat = BongLattice {
            ctx: ctx.clone(),
            a,
            r,
            classes,
            prefix,
            pair_d,
            alpha: Vec::new(),
            prefix_space,
        };
        lat.alpha = (1..m).map(|i| lat.alpha_by_minimum(i)).collect();
        for i in 1..m {
            let other = lat.alpha_by_bracket(i);
            if other != lat.alpha(i) {
                return Err(Error::Internal(format!(
                    "alpha_{i} disagrees between its two formulas ({} vs {other})",
                    lat.alpha(i)
                )));
            }
        }
        Ok(lat)
    }

    pub fn ctx(&self) -> &Arc<FieldContext> {
        &self.ctx
    }

    pub fn rank(&self) -> usize {
        self.a.len()
    }

    pub fn entries(&self) -> &[FieldElement] {
        &self.a
    }

    /// `a_i`, 1-based.
    pub fn a(&self, i: usize) -> &FieldElement {
        &self.a[i - 1]
    }

    /// `R_i`, 1-based.
    pub fn r(&self, i: usize) -> i64 {
        self.r[i - 1]
    }

    pub fn r_vec(&self) -> &[i64] {
        &self.r
    }

    pub fn class(&self, i: usize) -> SquareClass {
        self.classes[i - 1]
    }

    pub fn classes(&self) -> &[SquareClass] {
        &self.classes
    }

    /// Class of `a_1 ... a_i`.
    pub fn prefix_class(&self, i: usize) -> SquareClass {
        self.prefix[i]
    }

    /// The space `[a_1, ..., a_i]`.
    pub fn prefix_space(&self, i: usize) -> SpaceInv {
        self.prefix_space[i]
    }

    /// `d(-a_i a_{i+1})` for `1 <= i < m`.
    pub fn pair_d(&self, i: usize) -> Ext {
        self.pair_d[i - 1]
    }

    /// `alpha_i` for `1 <= i < m`.
    pub fn alpha(&self, i: usize) -> Ext {
        self.alpha[i - 1]
    }

    pub fn alphas(&self) -> &[Ext] {
        &self.alpha
    }

    pub fn space(&self) -> SpaceInv {
        self.prefix_space[self.rank()]
    }

    pub fn is_integral(&self) -> bool {
        self.r[0] >= 0
    }

    /// Same field, same rank and entries equal to working precision.
    pub fn same_bong(&self, other: &BongLattice) -> bool {
        Arc::ptr_eq(&self.ctx, &other.ctx)
            && self.rank() == other.rank()
            && self.a.iter().zip(&other.a).all(|(x, y)| self.ctx.approx_eq(x, y))
    }

    fn alpha_by_minimum(&self, i: usize) -> Ext {
        let m = self.rank();
        let e = self.ctx.ei();
        let mut best = Ext::from_twice(self.r(i + 1) - self.r(i) + 2 * e);
        for j in 1..=i {
            best = best.min(self.pair_d(j) + (self.r(i + 1) - self.r(j)));
        }
        for j in i..m {
            best = best.min(self.pair_d(j) + (self.r(j + 1) - self.r(i)));
        }
        best
    }

    fn alpha_by_bracket(&self, i: usize) -> Ext {
        let e = self.ctx.ei();
        let minus_one = self.ctx.class_of_int(-1);
        let bracket = self.d_bracket(minus_one, i, i + 1).expect("indices in range");
        Ext::from_twice(self.r(i + 1) - self.r(i) + 2 * e).min(bracket + (self.r(i + 1) - self.r(i)))
    }

    fn alpha_or_inf(&self, i: usize) -> Ext {
        if i >= 1 && i < self.rank() {
            self.alpha(i)
        } else {
            Ext::INF
        }
    }

    /// `d[c a_{i,j}] = min(d(c a_i ... a_j), alpha_{i-1}, alpha_j)`, ignoring
    /// `alpha_0` and `alpha_m`.
    pub fn d_bracket(&self, c: SquareClass, i: usize, j: usize) -> Result<Ext> {
        let m = self.rank();
        if i == 0 || i > j + 1 || j > m {
            return Err(Error::IndexError(format!("d[c a_{{{i},{j}}}] with m = {m}")));
        }
        let prod = self.ctx.class_mul(c, self.ctx.class_mul(self.prefix[j], self.prefix[i - 1]));
        Ok(prod.dval().min(self.alpha_or_inf(i - 1)).min(self.alpha_or_inf(j)))
    }
}

/// `d[c a_{1,i} b_{1,j}] = min(d(c a_1...a_i b_1...b_j), alpha_i, beta_j)`.
pub fn d_bracket_pair(m: &BongLattice, n: &BongLattice, c: SquareClass, i: usize, j: usize) -> Result<Ext> {
    if i > m.rank() || j > n.rank() {
        return Err(Error::IndexError(format!(
            "d[c a_{{1,{i}}} b_{{1,{j}}}] with ranks {} and {}",
            m.rank(),
            n.rank()
        )));
    }
    let ctx = &m.ctx;
    let prod = ctx.class_mul(c, ctx.class_mul(m.prefix[i], n.prefix[j]));
    Ok(prod.dval().min(m.alpha_or_inf(i)).min(n.alpha_or_inf(j)))
}

/// The invariant `A_i(M, N)` for `1 <= i <= min(m - 1, n)`.
pub fn big_a(m: &BongLattice, n: &BongLattice, i: usize) -> Result<Ext> {
    let (rm, rn) = (m.rank(), n.rank());
    if i == 0 || i > rn || i + 1 > rm {
        return Err(Error::IndexError(format!("A_{i} with ranks {rm} and {rn}")));
    }
    let ctx = &m.ctx;
    let e = ctx.ei();
    let one = ctx.class_one();
    let minus_one = ctx.class_of_int(-1);
    let (r, s) = (|k: usize| m.r(k), |k: usize| n.r(k));
    let mut best = Ext::from_twice(r(i + 1) - s(i) + 2 * e);
    best = best.min(d_bracket_pair(m, n, minus_one, i + 1, i - 1)? + (r(i + 1) - s(i)));
    if i != 1 && i != rm - 1 {
        let t = d_bracket_pair(m, n, one, i + 2, i - 2)? + (r(i + 1) + r(i + 2) - s(i - 1) - s(i));
        best = best.min(t);
    }
    Ok(best)
}
