#![allow(dead_code)]

pub mod checks;
pub mod oracles;

use std::sync::Arc;

use nuniv_core::sample::{corpus_rng, sample_lattice_with};
use nuniv_core::{make_field, BongLattice, FieldContext};

/// `(e, f)` for Q2, the ramified quadratic field and the unramified quadratic field.
pub const FIELDS: [(u32, u32); 3] = [(1, 1), (2, 1), (1, 2)];

pub fn fields() -> Vec<Arc<FieldContext>> {
    FIELDS.iter().map(|&(e, f)| make_field(e, f).unwrap()).collect()
}

/// `count` random integral lattices with ranks `1..=max_rank`, half of them
/// with the hyperbolic prefix that n-universal lattices have.
pub fn mixed_corpus(ctx: &Arc<FieldContext>, count: usize, max_rank: usize, seed: u64) -> Vec<BongLattice> {
    use rand::Rng;
    (0..count)
        .map(|i| {
            let mut rng = corpus_rng(seed, i as u64);
            let rank = rng.gen_range(1..=max_rank);
            let hint = if i % 2 == 0 { Some(rng.gen_range(2..=4)) } else { None };
            sample_lattice_with(ctx, rank, 2 * ctx.ei() + 2, hint, &mut rng).unwrap()
        })
        .collect()
}
