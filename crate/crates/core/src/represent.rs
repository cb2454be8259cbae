//! Deciding whether one lattice represents another, given good BONGs of both.

use std::sync::Arc;

use serde::Serialize;

use crate::bong::{big_a, d_bracket_pair, BongLattice};
use crate::error::{Error, Result};
use crate::space::space_represents;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    /// Which condition failed: `space`, `i`, `ii`, `iii` or `iv`.
    pub condition: String,
    #[serde(rename = "i")]
    pub index: usize,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RepVerdict {
    pub represented: bool,
    pub witness: Option<Witness>,
}

impl RepVerdict {
    fn yes() -> RepVerdict {
        RepVerdict { represented: true, witness: None }
    }

    fn no(condition: &str, index: usize, detail: String) -> RepVerdict {
        RepVerdict {
            represented: false,
            witness: Some(Witness { condition: condition.into(), index, detail }),
        }
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct RepOptions {
    /// Skip the `d[a b] >= A_i` check at a non-essential index whose successor
    /// is also non-essential; the first index and the end of each run are kept.
    pub skip_nonessential: bool,
}

/// Indices `2 <= i <= min(m-1, n)` with `R_{i+1} > S_{i-1}`.
pub fn essential_indices(m: &BongLattice, n: &BongLattice) -> Vec<usize> {
    let last = (m.rank() - 1).min(n.rank());
    (2..=last).filter(|&i| m.r(i + 1) > n.r(i - 1)).collect()
}

pub fn represents(n: &BongLattice, m: &BongLattice) -> Result<RepVerdict> {
    represents_with(n, m, RepOptions::default())
}

/// Whether `M` represents `N`.
pub fn represents_with(nl: &BongLattice, ml: &BongLattice, opts: RepOptions) -> Result<RepVerdict> {
    if !Arc::ptr_eq(nl.ctx(), ml.ctx()) {
        return Err(Error::BadParams("lattices over different fields".into()));
    }
    let (n, m) = (nl.rank(), ml.rank());
    if n > m {
        return Err(Error::RankError(format!("rank {n} cannot embed in rank {m}")));
    }
    for l in [nl, ml] {
        if !l.is_integral() {
            return Err(Error::NotIntegral(l.r(1)));
        }
    }
    let ctx = ml.ctx();
    let e = ctx.ei();
    let one = ctx.class_one();
    let minus_one = ctx.class_of_int(-1);
    let r = |i: usize| ml.r(i);
    let s = |i: usize| nl.r(i);

    if !space_represents(ctx, &nl.space(), &ml.space()) {
        return Ok(RepVerdict::no("space", 0, "FN does not embed in FM".into()));
    }

    for i in 1..=n {
        let ok = r(i) <= s(i) || (1 < i && i < m && r(i) + r(i + 1) <= s(i - 1) + s(i));
        if !ok {
            return Ok(RepVerdict::no("i", i, format!("R_{i} = {} > S_{i} = {}", r(i), s(i))));
        }
    }

    let last = (m - 1).min(n);
    for i in 1..=last {
        if opts.skip_nonessential && i > 1 && i < last && r(i + 1) <= s(i - 1) && r(i + 2) <= s(i) {
            continue;
        }
        let lhs = d_bracket_pair(ml, nl, one, i, i)?;
        let a = big_a(ml, nl, i)?;
        if lhs < a {
            return Ok(RepVerdict::no("ii", i, format!("d[a_1..a_{i} b_1..b_{i}] = {lhs} < A_{i} = {a}")));
        }
    }

    for i in 2..=(m - 1).min(n + 1) {
        if r(i + 1) <= s(i - 1) {
            continue;
        }
        let sum = d_bracket_pair(ml, nl, minus_one, i, i - 2)? + d_bracket_pair(ml, nl, minus_one, i + 1, i - 1)?;
        if sum > crate::ext::Ext::int(2 * e + s(i - 1) - r(i + 1))
            && !space_represents(ctx, &nl.prefix_space(i - 1), &ml.prefix_space(i))
        {
            return Ok(RepVerdict::no(
                "iii",
                i,
                format!("[b_1..b_{}] does not embed in [a_1..a_{i}]", i - 1),
            ));
        }
    }

    if m >= 2 {
        for i in 2..=(m.saturating_sub(2)).min(n + 1) {
            let upper = i == n + 1 || s(i) >= r(i + 2);
            if upper
                && r(i + 2) > s(i - 1) + 2 * e
                && s(i - 1) >= r(i + 1)
                && !space_represents(ctx, &nl.prefix_space(i - 1), &ml.prefix_space(i + 1))
            {
                return Ok(RepVerdict::no(
                    "iv",
                    i,
                    format!("[b_1..b_{}] does not embed in [a_1..a_{}]", i - 1, i + 1),
                ));
            }
        }
    }
    Ok(RepVerdict::yes())
}
