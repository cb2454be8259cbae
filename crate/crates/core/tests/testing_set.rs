//! The minimal testing set: sizes, R-invariants, underlying spaces and minimality.

mod common;

use nuniv_core::space::{all_spaces, is_isometric, w_space};
use common::oracles::expected_r;
use nuniv_core::universal::{minimality_check, testing_set};
use nuniv_core::{make_field, Error};

#[test]
fn sizes() {
    let cases = [((1, 1), vec![(2, 15), (3, 16), (4, 16), (5, 16)]), ((2, 1), vec![(2, 31), (3, 32), (4, 32)]), ((1, 2), vec![(2, 31), (3, 32), (4, 32)])];
    for ((e, f), rows) in cases {
        let ctx = make_field(e, f).unwrap();
        for (n, size) in rows {
            assert_eq!(testing_set(&ctx, n).unwrap().len(), size, "(e, f) = ({e}, {f}), n = {n}");
        }
    }
}

#[test]
fn rejects_n_below_2() {
    let ctx = make_field(1, 1).unwrap();
    assert!(matches!(testing_set(&ctx, 1), Err(Error::BadParams(_))));
}

#[test]
fn r_invariants_follow_the_table() {
    for ctx in common::fields() {
        for n in 2..=6 {
            for t in testing_set(&ctx, n).unwrap() {
                assert_eq!(t.lattice.rank(), n);
                assert_eq!(t.lattice.r_vec(), expected_r(&ctx, &t, n), "n = {n}, {}", t.jordan);
            }
        }
    }
}

#[test]
fn spaces_are_distinct_and_exhaustive() {
    for ctx in common::fields() {
        for n in 2..=5 {
            let set = testing_set(&ctx, n).unwrap();
            for (i, a) in set.iter().enumerate() {
                assert_eq!(a.lattice.space(), w_space(&ctx, a.nu, n, a.c).unwrap());
                for b in &set[i + 1..] {
                    assert!(!is_isometric(&a.lattice.space(), &b.lattice.space()));
                }
            }
            let spaces = all_spaces(&ctx, n);
            assert_eq!(spaces.len(), set.len());
            for v in &spaces {
                assert!(set.iter().any(|t| is_isometric(&t.lattice.space(), v)));
            }
        }
    }
}

#[test]
fn minimality() {
    for ctx in common::fields() {
        for n in 2..=4 {
            let report = minimality_check(&ctx, n).unwrap();
            assert!(report.ok, "field e = {}, f = {}, n = {n}", ctx.e(), ctx.f());
            let k = report.rows.len();
            for (i, row) in report.rows.iter().enumerate() {
                assert_eq!(row.len(), k);
                assert_eq!(row.iter().filter(|&&b| !b).count(), 1);
                assert!(!row[i]);
            }
        }
    }
}
