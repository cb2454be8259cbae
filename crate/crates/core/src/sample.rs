//! Seeded random good BONGs and bulk cross-checks of the universality methods.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::bong::BongLattice;
use crate::error::{Error, Result};
use crate::field::FieldContext;
use crate::universal::{by_testing_set, is_n_universal, testing_set, Method};

/// A random integral lattice of rank `rank` with `R_1 <= r_bound` and steps in `[-2e, r_bound]`.
///
/// `hint_n` biases the sampler towards the `0, -2e` prefix that n-universal
/// lattices share, so that both verdicts occur often.
pub fn sample_lattice_with(
    ctx: &Arc<FieldContext>,
    rank: usize,
    r_bound: i64,
    hint_n: Option<usize>,
    rng: &mut ChaCha8Rng,
) -> Result<BongLattice> {
    let e = ctx.ei();
    if rank == 0 {
        return Err(Error::BadParams("rank must be positive".into()));
    }
    if r_bound < 2 * e {
        return Err(Error::BadParams("r_bound must be at least 2e".into()));
    }
    let units = ctx.unit_class_reps();
    let minus_one = ctx.class_of_int(-1);
    let prefix_len = match hint_n {
        Some(n) if rng.gen_bool(0.6) => (n + rng.gen_range(0..3)).saturating_sub(1).min(rank),
        _ => 0,
    };
    let boundary = [-2 * e, 2 - 2 * e, 1, 2 * e, 2 * e + 1];
    let targets = [0, 1, -2 * e, 2 - 2 * e];

    let mut r: Vec<i64> = Vec::with_capacity(rank);
    let mut cls = Vec::with_capacity(rank);
    for i in 0..rank {
        let ri = if i < prefix_len {
            if i % 2 == 0 {
                0
            } else {
                -2 * e
            }
        } else if i == 0 {
            if rng.gen_bool(0.5) {
                0
            } else {
                rng.gen_range(0..=r_bound)
            }
        } else {
            let prev = r[i - 1];
            let lo = if i >= 2 { (-2 * e).max(r[i - 2] - prev) } else { -2 * e };
            let hi = r_bound;
            let roll: f64 = rng.gen();
            let mut step = if roll < 0.3 {
                let opts: Vec<i64> = boundary.iter().copied().filter(|s| (lo..=hi).contains(s)).collect();
                *opts.choose(rng).unwrap_or(&lo.max(0))
            } else if roll < 0.45 {
                let opts: Vec<i64> =
                    targets.iter().map(|t| t - prev).filter(|s| (lo..=hi).contains(s)).collect();
                *opts.choose(rng).unwrap_or(&lo.max(0))
            } else {
                rng.gen_range(lo..=hi)
            };
            if step < 0 && step % 2 != 0 {
                step += 1;
            }
            prev + step
        };
        let options: Vec<_> = if i == 0 {
            units.clone()
        } else {
            let step = ri - r[i - 1];
            let parity = ((ri + r[i - 1]).rem_euclid(2)) as u32;
            units
                .iter()
                .copied()
                .filter(|&u| {
                    let prod = ctx.class_mul(minus_one, ctx.class_mul(cls[i - 1], u));
                    let d = if parity == 1 { crate::ext::Ext::int(0) } else { prod.dval() };
                    d + step >= crate::ext::Ext::int(0)
                })
                .collect()
        };
        let u = *options
            .choose(rng)
            .ok_or_else(|| Error::Internal("no unit class satisfies the BONG inequality".into()))?;
        r.push(ri);
        cls.push(u);
    }
    let a = r
        .iter()
        .zip(&cls)
        .map(|(&ri, &c)| ctx.mul_pi_pow(&ctx.class_rep(c), ri))
        .collect();
    BongLattice::new(ctx, a)
}

pub fn sample_lattice(ctx: &Arc<FieldContext>, rank: usize, r_bound: i64, seed: u64) -> Result<BongLattice> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    sample_lattice_with(ctx, rank, r_bound, None, &mut rng)
}

/// The rng used for the `index`-th lattice of a seeded corpus.
pub fn corpus_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// A seeded corpus of integral lattices of rank `n + 2 ..= n + 5`, biased towards `n`-universality.
pub fn corpus(ctx: &Arc<FieldContext>, n: usize, count: usize, seed: u64) -> Result<Vec<BongLattice>> {
    let r_bound = 2 * ctx.ei() + 2;
    (0..count)
        .into_par_iter()
        .map(|i| {
            let mut rng = corpus_rng(seed, i as u64);
            let rank = n + rng.gen_range(2..=5);
            sample_lattice_with(ctx, rank, r_bound, Some(n), &mut rng)
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct Disagreement {
    pub index: usize,
    pub r: Vec<i64>,
    pub verdicts: Vec<(String, bool)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CrossReport {
    pub n: usize,
    pub count: usize,
    pub seed: u64,
    pub universal: usize,
    pub disagreements: Vec<Disagreement>,
}

impl CrossReport {
    pub fn agree(&self) -> bool {
        self.disagreements.is_empty()
    }
}

/// Run every applicable method on a seeded corpus and collect disagreements.
pub fn crosscheck(ctx: &Arc<FieldContext>, n: usize, count: usize, seed: u64) -> Result<CrossReport> {
    let lattices = corpus(ctx, n, count, seed)?;
    let set = testing_set(ctx, n)?;
    let methods = Method::for_n(n);
    let rows: Vec<Vec<(Method, bool)>> = lattices
        .par_iter()
        .map(|l| {
            methods
                .iter()
                .map(|&m| {
                    let v = if m == Method::TestingSet { by_testing_set(l, &set)? } else { is_n_universal(l, n, m)? };
                    Ok((m, v.universal))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let mut disagreements = Vec::new();
    let mut universal = 0;
    for (i, (row, l)) in rows.iter().zip(&lattices).enumerate() {
        let first = row[0].1;
        if row.iter().all(|&(_, v)| v == first) {
            universal += first as usize;
        } else {
            disagreements.push(Disagreement {
                index: i,
                r: l.r_vec().to_vec(),
                verdicts: row.iter().map(|(m, v)| (m.name().to_string(), *v)).collect(),
            });
        }
    }
    Ok(CrossReport { n, count, seed, universal, disagreements })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;

    #[test]
    fn sampler_is_deterministic() {
        let k = make_field(1, 1).unwrap();
        let a = sample_lattice(&k, 6, 4, 7).unwrap();
        let b = sample_lattice(&k, 6, 4, 7).unwrap();
        assert!(a.same_bong(&b));
        assert!(a.is_integral());
    }

    #[test]
    fn sampler_rejects_small_bound() {
        let k = make_field(2, 1).unwrap();
        assert!(sample_lattice(&k, 3, 3, 0).is_err());
    }
}
