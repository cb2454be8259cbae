//! Decision procedures for n-universality of integral lattices.
//!
//! Five independent formulations are provided (one closed form in terms of
//! `R_i` and defects, two using `alpha` invariants for each parity of `n`) plus
//! the testing-set oracle built on the representation criterion.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::bong::{make_block, BongLattice, Block};
use crate::error::{Error, Result};
use crate::ext::Ext;
use crate::field::{FieldContext, SquareClass};
use crate::represent::represents;
use crate::space::{hyperbolic, is_n_universal_space};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    /// Conditions on `R_i` and `d(-a_i a_{i+1})` only.
    ClosedForm,
    /// Even `n`: the invariant conditions on `R_i`, `alpha_{n+1}` and `d[-a_{n+1,n+2}]`.
    EvenInvariants,
    /// Even `n`: the compact variant with `alpha_{n+1} <= 1`.
    EvenCompact,
    /// Odd `n`: conditions on `alpha_n`, `alpha_{n+2}` and `R_{n+1..n+3}`.
    OddInvariants,
    /// Odd `n`: the case split on `alpha_n` in `{0, 1}`.
    OddAlpha,
    /// Representation of every lattice in the minimal testing set.
    TestingSet,
}

impl Method {
    pub const ALL: [Method; 6] = [
        Method::ClosedForm,
        Method::EvenInvariants,
        Method::EvenCompact,
        Method::OddInvariants,
        Method::OddAlpha,
        Method::TestingSet,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::ClosedForm => "closed-form",
            Method::EvenInvariants => "even-invariants",
            Method::EvenCompact => "even-compact",
            Method::OddInvariants => "odd-invariants",
            Method::OddAlpha => "odd-alpha",
            Method::TestingSet => "testing-set",
        }
    }

    pub fn from_name(s: &str) -> Option<Method> {
        Method::ALL.into_iter().find(|m| m.name() == s)
    }

    /// The methods that apply to this parity of `n`.
    pub fn for_n(n: usize) -> Vec<Method> {
        if n.is_multiple_of(2) {
            vec![Method::ClosedForm, Method::EvenInvariants, Method::EvenCompact, Method::TestingSet]
        } else {
            vec![Method::ClosedForm, Method::OddInvariants, Method::OddAlpha, Method::TestingSet]
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UnivVerdict {
    pub universal: bool,
    pub method: Method,
    /// The first failing condition, when not universal.
    pub witness: Option<String>,
}

struct Check {
    method: Method,
}

impl Check {
    fn fail(&self, why: String) -> UnivVerdict {
        UnivVerdict { universal: false, method: self.method, witness: Some(why) }
    }

    fn pass(&self) -> UnivVerdict {
        UnivVerdict { universal: true, method: self.method, witness: None }
    }
}

fn preflight(m: &BongLattice, n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::BadParams("n must be at least 2".into()));
    }
    if !m.is_integral() {
        return Err(Error::NotIntegral(m.r(1)));
    }
    Ok(())
}

fn parity_guard(n: usize, even: bool, method: Method) -> Result<()> {
    if n.is_multiple_of(2) != even {
        return Err(Error::ParityMismatch(format!(
            "method {} needs {} n, got {n}",
            method.name(),
            if even { "even" } else { "odd" }
        )));
    }
    Ok(())
}

/// First `i <= upto` where `R_i` breaks the pattern `0, -2e, 0, -2e, ...`.
fn pattern_break(m: &BongLattice, upto: usize) -> Option<usize> {
    let e = m.ctx().ei();
    (1..=upto.min(m.rank())).find(|&i| m.r(i) != if i % 2 == 1 { 0 } else { -2 * e })
}

fn is_h2(m: &BongLattice) -> bool {
    m.space() == hyperbolic(m.ctx(), 2)
}

fn in_even_range(x: i64, lo: i64, hi: i64) -> bool {
    x % 2 == 0 && lo <= x && x <= hi
}

/// `d(a_1 a_2 a_3 a_4) = 2e`, used by the `n = 2` clause.
fn first_four_delta(m: &BongLattice) -> bool {
    m.prefix_class(4).dval() == Ext::int(2 * m.ctx().ei())
}

pub fn is_n_universal(m: &BongLattice, n: usize, method: Method) -> Result<UnivVerdict> {
    match method {
        Method::ClosedForm => closed_form(m, n),
        Method::EvenInvariants => even_invariants(m, n),
        Method::EvenCompact => even_compact(m, n),
        Method::OddInvariants => odd_invariants(m, n),
        Method::OddAlpha => odd_alpha(m, n),
        Method::TestingSet => {
            preflight(m, n)?;
            let set = testing_set(m.ctx(), n)?;
            by_testing_set(m, &set)
        }
    }
}

pub fn closed_form(m: &BongLattice, n: usize) -> Result<UnivVerdict> {
    preflight(m, n)?;
    let ck = Check { method: Method::ClosedForm };
    let e = m.ctx().ei();
    let rank = m.rank();
    let r = |i: usize| m.r(i);
    if rank < n + 2 {
        return Ok(ck.fail(format!("rank {rank} < n + 2")));
    }
    if rank == n + 2 {
        if n != 2 {
            return Ok(ck.fail(format!("rank {rank} = n + 2 with n != 2")));
        }
        if !is_h2(m) {
            return Ok(ck.fail("rank 4 and FM is not H^2".into()));
        }
        if let Some(i) = pattern_break(m, 4) {
            return Ok(ck.fail(format!("rank 4 and R_{i} = {} breaks (0, -2e, 0, -2e)", r(i))));
        }
        return Ok(ck.pass());
    }
    if let Some(i) = pattern_break(m, n) {
        return Ok(ck.fail(format!("R_{i} = {} breaks the 0, -2e pattern", r(i))));
    }
    let exists_j = |lo: usize, pred: &dyn Fn(usize) -> bool| (lo..rank).any(pred);
    if n.is_multiple_of(2) {
        if r(n + 1) != 0 {
            return Ok(ck.fail(format!("R_{} = {} != 0", n + 1, r(n + 1))));
        }
        let x = r(n + 2);
        if !(in_even_range(x, -2 * e, 0) || x == 1) {
            return Ok(ck.fail(format!("R_{} = {x} not in [-2e, 0] even or {{1}}", n + 2)));
        }
        if in_even_range(x, 2 - 2 * e, 0) {
            if x == 2 - 2 * e {
                if !(m.pair_d(n + 1) == Ext::int(2 * e - 1) || r(n + 3) == 0 || r(n + 3) == 1) {
                    return Ok(ck.fail(format!(
                        "R_{} = 2 - 2e but d(-a_{} a_{}) != 2e - 1 and R_{} not in {{0, 1}}",
                        n + 2,
                        n + 1,
                        n + 2,
                        n + 3
                    )));
                }
            } else if !exists_j(n + 1, &|j| m.pair_d(j) == Ext::int(1 - r(j + 1))) {
                return Ok(ck.fail(format!("no j >= {} with d(-a_j a_(j+1)) = 1 - R_(j+1)", n + 1)));
            }
        }
        if r(n + 3) - r(n + 2) > 2 * e {
            if r(n + 2) != -2 * e {
                return Ok(ck.fail(format!("R_{} - R_{} > 2e but R_{} != -2e", n + 3, n + 2, n + 2)));
            }
            if (n >= 4 || (n == 2 && first_four_delta(m))) && r(n + 3) != 1 {
                return Ok(ck.fail(format!("R_{} - R_{} > 2e but R_{} != 1", n + 3, n + 2, n + 3)));
            }
        }
    } else {
        let x = r(n + 1);
        if !(in_even_range(x, -2 * e, 0) || x == 1) {
            return Ok(ck.fail(format!("R_{} = {x} not in [-2e, 0] even or {{1}}", n + 1)));
        }
        if in_even_range(x, 4 - 2 * e, 0) && !exists_j(n, &|j| m.pair_d(j) == Ext::int(1 - r(j + 1))) {
            return Ok(ck.fail(format!("no j >= {n} with d(-a_j a_(j+1)) = 1 - R_(j+1)")));
        }
        if x == 1 || (x != -2 * e && r(n + 2) > 1) {
            let sum = r(n + 3) + r(n + 2) - 2 * x;
            let slack = if (r(n + 2) - x) % 2 == 0 { 1 } else { 0 };
            let ok = sum <= 2 * e - 2 * slack
                || exists_j(n + 2, &|j| m.pair_d(j) <= Ext::int(2 * e + x - r(j + 1) - slack));
            if !ok {
                return Ok(ck.fail(format!(
                    "R_{} + R_{} - 2R_{} = {sum} too large and no small defect beyond n + 2",
                    n + 3,
                    n + 2,
                    n + 1
                )));
            }
        }
        if x == -2 * e && !(r(n + 2) == 0 || r(n + 2) == 1) {
            return Ok(ck.fail(format!("R_{} = -2e but R_{} not in {{0, 1}}", n + 1, n + 2)));
        }
        if r(n + 3) - r(n + 2) > 2 * e {
            return Ok(ck.fail(format!("R_{} - R_{} > 2e", n + 3, n + 2)));
        }
    }
    Ok(ck.pass())
}

/// The tail condition shared by the even formulations.
fn even_tail_gap(m: &BongLattice, n: usize) -> Option<String> {
    let e = m.ctx().ei();
    if m.rank() < n + 3 || m.r(n + 3) - m.r(n + 2) <= 2 * e {
        return None;
    }
    if m.r(n + 2) != -2 * e {
        return Some(format!("R_{} - R_{} > 2e but R_{} != -2e", n + 3, n + 2, n + 2));
    }
    if (n >= 4 || (n == 2 && first_four_delta(m))) && m.r(n + 3) != 1 {
        return Some(format!("R_{} - R_{} > 2e but R_{} != 1", n + 3, n + 2, n + 3));
    }
    None
}

pub fn even_invariants(m: &BongLattice, n: usize) -> Result<UnivVerdict> {
    preflight(m, n)?;
    parity_guard(n, true, Method::EvenInvariants)?;
    let ck = Check { method: Method::EvenInvariants };
    if !is_n_universal_space(m.ctx(), &m.space(), n) {
        return Ok(ck.fail(format!("FM is not {n}-universal")));
    }
    if let Some(i) = pattern_break(m, n + 1) {
        return Ok(ck.fail(format!("R_{i} = {} breaks the 0, -2e pattern", m.r(i))));
    }
    let a = m.alpha(n + 1);
    let minus_one = m.ctx().class_of_int(-1);
    let ok = a == Ext::int(0)
        || (a == Ext::int(1) && m.d_bracket(minus_one, n + 1, n + 2)? == Ext::int(1 - m.r(n + 2)));
    if !ok {
        return Ok(ck.fail(format!("alpha_{} = {a} and the bracket defect condition fails", n + 1)));
    }
    if let Some(w) = even_tail_gap(m, n) {
        return Ok(ck.fail(w));
    }
    Ok(ck.pass())
}

pub fn even_compact(m: &BongLattice, n: usize) -> Result<UnivVerdict> {
    preflight(m, n)?;
    parity_guard(n, true, Method::EvenCompact)?;
    let ck = Check { method: Method::EvenCompact };
    let e = m.ctx().ei();
    let rank = m.rank();
    if !(rank >= n + 3 || (rank == 4 && n == 2)) {
        return Ok(ck.fail(format!("rank {rank} is too small")));
    }
    if let Some(i) = pattern_break(m, n + 1) {
        return Ok(ck.fail(format!("R_{i} = {} breaks the 0, -2e pattern", m.r(i))));
    }
    if rank == n + 2 {
        if !is_h2(m) {
            return Ok(ck.fail("rank 4 and FM is not H^2".into()));
        }
        if m.r(4) != -2 * e {
            return Ok(ck.fail(format!("rank 4 and R_4 = {} != -2e", m.r(4))));
        }
        return Ok(ck.pass());
    }
    if m.alpha(n + 1) > Ext::int(1) {
        return Ok(ck.fail(format!("alpha_{} = {} > 1", n + 1, m.alpha(n + 1))));
    }
    if let Some(w) = even_tail_gap(m, n) {
        return Ok(ck.fail(w));
    }
    if m.r(n + 3) - m.r(n + 2) == 2 * e && m.r(n + 2) == 2 - 2 * e && m.pair_d(n + 1) != Ext::int(2 * e - 1) {
        return Ok(ck.fail(format!(
            "R_{} = 2 - 2e, R_{} - R_{} = 2e and d(-a_{} a_{}) != 2e - 1",
            n + 2,
            n + 3,
            n + 2,
            n + 1,
            n + 2
        )));
    }
    Ok(ck.pass())
}

/// `G_n = 2(e - floor((R_{n+2} - R_{n+1}) / 2)) - 1`.
fn g_bound(m: &BongLattice, n: usize) -> Ext {
    let e = m.ctx().ei();
    Ext::int(2 * (e - (m.r(n + 2) - m.r(n + 1)).div_euclid(2)) - 1)
}

pub fn odd_invariants(m: &BongLattice, n: usize) -> Result<UnivVerdict> {
    preflight(m, n)?;
    parity_guard(n, false, Method::OddInvariants)?;
    let ck = Check { method: Method::OddInvariants };
    let e = m.ctx().ei();
    if m.rank() < n + 3 {
        return Ok(ck.fail(format!("rank {} < n + 3", m.rank())));
    }
    if let Some(i) = pattern_break(m, n) {
        return Ok(ck.fail(format!("R_{i} = {} breaks the 0, -2e pattern", m.r(i))));
    }
    let a = m.alpha(n);
    if a != Ext::int(0) && a != Ext::int(1) {
        return Ok(ck.fail(format!("alpha_{n} = {a} not in {{0, 1}}")));
    }
    if a == Ext::int(0) && !(m.r(n + 2) == 0 || m.r(n + 2) == 1) {
        return Ok(ck.fail(format!("alpha_{n} = 0 but R_{} not in {{0, 1}}", n + 2)));
    }
    if a == Ext::int(1) && (m.r(n + 1) == 1 || m.r(n + 2) > 1) && m.alpha(n + 2) > g_bound(m, n) {
        return Ok(ck.fail(format!("alpha_{} = {} exceeds {}", n + 2, m.alpha(n + 2), g_bound(m, n))));
    }
    if m.r(n + 3) - m.r(n + 2) > 2 * e {
        return Ok(ck.fail(format!("R_{} - R_{} > 2e", n + 3, n + 2)));
    }
    Ok(ck.pass())
}

pub fn odd_alpha(m: &BongLattice, n: usize) -> Result<UnivVerdict> {
    preflight(m, n)?;
    parity_guard(n, false, Method::OddAlpha)?;
    let ck = Check { method: Method::OddAlpha };
    let e = m.ctx().ei();
    if m.rank() < n + 3 {
        return Ok(ck.fail(format!("rank {} < n + 3", m.rank())));
    }
    if let Some(i) = pattern_break(m, n) {
        return Ok(ck.fail(format!("R_{i} = {} breaks the 0, -2e pattern", m.r(i))));
    }
    if m.r(n + 3) - m.r(n + 2) > 2 * e {
        return Ok(ck.fail(format!("R_{} - R_{} > 2e", n + 3, n + 2)));
    }
    let a = m.alpha(n);
    let zero_case = a == Ext::int(0) && m.r(n + 2) <= 1;
    let one_case = a == Ext::int(1)
        && (!(m.r(n + 1) == 1 || m.r(n + 2) > 1) || m.alpha(n + 2) <= g_bound(m, n));
    if zero_case || one_case {
        Ok(ck.pass())
    } else {
        Ok(ck.fail(format!("neither alpha_{n} case holds (alpha_{n} = {a})")))
    }
}

/// 2-universality of a quaternary lattice.
pub fn quaternary_2universal(m: &BongLattice) -> Result<bool> {
    if m.rank() != 4 {
        return Err(Error::RankError(format!("expected rank 4, got {}", m.rank())));
    }
    let e = m.ctx().ei();
    Ok(is_h2(m) && m.r_vec() == [0, -2 * e, 0, -2 * e])
}

// ---- testing set ----------------------------------------------------------

#[derive(Clone, Debug)]
pub struct TestingEntry {
    pub nu: u8,
    pub c: SquareClass,
    pub jordan: String,
    pub lattice: BongLattice,
}

fn with_h(ctx: &Arc<FieldContext>, k: usize, tail: Vec<Block>, tail_name: String) -> Result<(BongLattice, String)> {
    let mut blocks = vec![Block::H; k];
    blocks.extend(tail);
    let name = match (k, tail_name.is_empty()) {
        (0, _) => tail_name,
        (_, true) => format!("H^{k}"),
        (_, false) => format!("H^{k} ⊥ {tail_name}"),
    };
    Ok((make_block(ctx, &Block::Concat(blocks))?, name))
}

/// The minimal testing set for `n`-universality: one maximal lattice on each
/// `W_nu^n(c)`.
pub fn testing_set(ctx: &Arc<FieldContext>, n: usize) -> Result<Vec<TestingEntry>> {
    if n < 2 {
        return Err(Error::BadParams("n must be at least 2".into()));
    }
    let units = ctx.unit_class_reps();
    let one = ctx.class_one();
    let delta = ctx.class_delta();
    let mut out = Vec::new();
    let mut push = |nu: u8, c: SquareClass, (lattice, jordan): (BongLattice, String)| {
        out.push(TestingEntry { nu, c, jordan, lattice });
    };
    let lab = |c: SquareClass| ctx.class_label(c);
    if n.is_multiple_of(2) {
        let k = (n - 2) / 2;
        push(1, one, with_h(ctx, n / 2, vec![], String::new())?);
        if n >= 4 {
            push(
                2,
                one,
                with_h(ctx, (n - 4) / 2, vec![Block::A22Rho, Block::PiA22Rho], "2^-1 A(2,2ρ) ⊥ 2^-1 πA(2,2ρ)".into())?,
            );
        }
        push(1, delta, with_h(ctx, k, vec![Block::A22Rho], "2^-1 A(2,2ρ)".into())?);
        push(2, delta, with_h(ctx, k, vec![Block::PiA22Rho], "2^-1 πA(2,2ρ)".into())?);
        for &c in units.iter().filter(|&&c| c != one && c != delta) {
            let d = c.dval().as_int().expect("odd defect");
            let rep = ctx.class_rep(c);
            let scale = ctx.pi_pow(1 - d);
            let b1 = Block::Literal(vec![ctx.one(), ctx.neg(&ctx.mul(&rep, &scale))]);
            let name1 = format!("π^{}A(π^{}, -({}-1)π^{})", (1 - d) / 2, (d - 1) / 2, lab(c), (1 - d) / 2);
            push(1, c, with_h(ctx, k, vec![b1], name1)?);
            let s = ctx.sharp(&rep)?;
            let b2 = Block::Literal(vec![s.clone(), ctx.neg(&ctx.mul(&ctx.mul(&s, &rep), &scale))]);
            let name2 = format!(
                "π^{}A(π^{}{}♯, -({}-1)π^{}{}♯)",
                (1 - d) / 2,
                (d - 1) / 2,
                lab(c),
                lab(c),
                (1 - d) / 2,
                lab(c)
            );
            push(2, c, with_h(ctx, k, vec![b2], name2)?);
        }
        for &c in &units {
            let rep = ctx.class_rep(c);
            let epi = ctx.mul(&rep, &ctx.pi());
            let cpi = ctx.class_mul(c, ctx.class_pi());
            let b1 = Block::BinaryDiag(ctx.one(), ctx.neg(&epi));
            push(1, cpi, with_h(ctx, k, vec![b1], format!("<1, -{}>", lab(cpi)))?);
            let b2 = Block::BinaryDiag(ctx.delta(), ctx.neg(&ctx.mul(&ctx.delta(), &epi)));
            push(2, cpi, with_h(ctx, k, vec![b2], format!("<Δ, -Δ{}>", lab(cpi)))?);
        }
    } else {
        let k1 = (n - 1) / 2;
        for &c in &units {
            let rep = ctx.class_rep(c);
            let dc = ctx.class_mul(delta, c);
            push(1, c, with_h(ctx, k1, vec![Block::Unary(rep.clone())], format!("<{}>", lab(c)))?);
            {
                let t = Block::TernaryKappa(rep.clone(), None);
                push(2, c, with_h(ctx, (n - 3) / 2, vec![t], format!("2^-1 πA(2,2ρ) ⊥ <{}>", lab(dc)))?);
            }
        }
        for &c in &units {
            let rep = ctx.class_rep(c);
            let cpi = ctx.class_mul(c, ctx.class_pi());
            let epi = ctx.mul(&rep, &ctx.pi());
            push(1, cpi, with_h(ctx, k1, vec![Block::Unary(epi.clone())], format!("<{}>", lab(cpi)))?);
            {
                let dcpi = ctx.class_mul(delta, cpi);
                let tail = vec![Block::A22Rho, Block::Unary(ctx.mul(&ctx.delta(), &epi))];
                push(2, cpi, with_h(ctx, (n - 3) / 2, tail, format!("2^-1 A(2,2ρ) ⊥ <{}>", lab(dcpi)))?);
            }
        }
    }
    Ok(out)
}

/// n-universality by representing every entry of a precomputed testing set.
pub fn by_testing_set(m: &BongLattice, set: &[TestingEntry]) -> Result<UnivVerdict> {
    if !m.is_integral() {
        return Err(Error::NotIntegral(m.r(1)));
    }
    let ck = Check { method: Method::TestingSet };
    for entry in set {
        if entry.lattice.rank() > m.rank() {
            return Ok(ck.fail(format!("rank {} is below the testing rank", m.rank())));
        }
        if !represents(&entry.lattice, m)?.represented {
            return Ok(ck.fail(format!(
                "does not represent N_{}({}) = {}",
                entry.nu,
                m.ctx().class_label(entry.c),
                entry.jordan
            )));
        }
    }
    Ok(ck.pass())
}

#[derive(Clone, Debug, Serialize)]
pub struct MinimalityReport {
    /// `rows[i][j]`: the lattice built for entry `i` represents entry `j`.
    pub rows: Vec<Vec<bool>>,
    pub labels: Vec<String>,
    pub ok: bool,
}

/// For each testing entry `(nu, c)`, the maximal lattice on `W_{3-nu}^{n+2}(c)`
/// must represent every entry except `(nu, c)` itself.
pub fn minimality_check(ctx: &Arc<FieldContext>, n: usize) -> Result<MinimalityReport> {
    let set = testing_set(ctx, n)?;
    let big = testing_set(ctx, n + 2)?;
    let mut rows = Vec::new();
    let mut ok = true;
    for (i, entry) in set.iter().enumerate() {
        let host = big
            .iter()
            .find(|b| b.nu == 3 - entry.nu && b.c == entry.c)
            .ok_or_else(|| Error::Internal("missing lattice in the larger testing set".into()))?;
        let mut row = Vec::new();
        for (j, other) in set.iter().enumerate() {
            let rep = represents(&other.lattice, &host.lattice)?.represented;
            ok &= rep == (i != j);
            row.push(rep);
        }
        rows.push(row);
    }
    let labels = set.iter().map(|t| format!("N_{}({})", t.nu, ctx.class_label(t.c))).collect();
    Ok(MinimalityReport { rows, labels, ok })
}
