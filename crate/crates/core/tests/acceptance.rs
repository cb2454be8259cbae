//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::checks::{check_integral, check_r_alpha};
use common::oracles::{expected_r, q2_defect_brute, q2_hilbert_closed_form};
use nuniv_core::sample::{corpus_rng, crosscheck, sample_lattice_with, CrossReport};
use nuniv_core::universal::{closed_form, minimality_check, quaternary_2universal, testing_set};
use nuniv_core::{make_block, make_field, Block, Ext, Method};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn class_counts() -> Outcome {
    for ((e, f), (all, units)) in common::FIELDS.iter().zip([(8, 4), (16, 8), (16, 8)]) {
        let t = Instant::now();
        let ctx = make_field(*e, *f).map_err(|x| x.to_string())?;
        let (a, u) = (ctx.all_classes().len(), ctx.unit_class_reps().len());
        ensure(a == all && u == units, || format!("(e, f) = ({e}, {f}): {a} classes, {u} unit classes"))?;
        ensure(t.elapsed() < Duration::from_secs(1), || format!("(e, f) = ({e}, {f}) took {:?}", t.elapsed()))?;
    }
    Ok("8/16/16 classes, 4/8/8 unit classes".into())
}

fn testing_set_sizes() -> Outcome {
    let cases = [((1, 1), vec![(2, 15), (3, 16), (4, 16), (5, 16)]), ((2, 1), vec![(2, 31), (3, 32)]), ((1, 2), vec![(2, 31), (3, 32)])];
    let mut seen = Vec::new();
    for ((e, f), rows) in cases {
        let ctx = make_field(e, f).unwrap();
        for (n, size) in rows {
            let got = testing_set(&ctx, n).map_err(|x| x.to_string())?.len();
            ensure(got == size, || format!("(e, f) = ({e}, {f}), n = {n}: {got} entries, expected {size}"))?;
            seen.push(got.to_string());
        }
    }
    Ok(seen.join(" "))
}

fn testing_set_r_tables() -> Outcome {
    let mut checked = 0;
    for ctx in common::fields() {
        for n in 2..=6 {
            for t in testing_set(&ctx, n).unwrap() {
                let want = expected_r(&ctx, &t, n);
                ensure(t.lattice.r_vec() == want, || format!("{}: R = {:?}, expected {want:?}", t.jordan, t.lattice.r_vec()))?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} lattices, n = 2..6"))
}

fn quaternary_examples() -> Outcome {
    for ctx in common::fields() {
        let e = ctx.ei();
        let build = |blocks: Vec<Block>| make_block(&ctx, &Block::Concat(blocks)).unwrap();
        let hh = build(vec![Block::H, Block::H]);
        let aa = build(vec![Block::A22Rho, Block::A22Rho]);
        let ha = build(vec![Block::H, Block::A22Rho]);
        ensure(aa.r_vec() == [0, -2 * e, 0, -2 * e], || format!("R(A + A) = {:?}", aa.r_vec()))?;
        let verdicts = [&hh, &aa, &ha].map(|l| closed_form(l, 2).unwrap().universal);
        ensure(verdicts == [true, true, false], || format!("e = {e}, f = {}: {verdicts:?}", ctx.f()))?;
        for i in 0..100 {
            let mut rng = corpus_rng(4, i);
            let l = sample_lattice_with(&ctx, 4, 2 * e + 2, Some(2), &mut rng).unwrap();
            let q = quaternary_2universal(&l).unwrap();
            ensure(q == closed_form(&l, 2).unwrap().universal, || format!("R = {:?}", l.r_vec()))?;
        }
    }
    Ok("H+H, A+A universal; H+A not; 100 random quaternaries agree per field".into())
}

const CORPUS_SIZE: usize = 500;
const CORPUS_SEED: u64 = 2024;

fn corpus_reports() -> Vec<(String, CrossReport, Duration)> {
    let mut out = Vec::new();
    for ctx in common::fields() {
        for n in 2..=5 {
            let t = Instant::now();
            let report = crosscheck(&ctx, n, CORPUS_SIZE, CORPUS_SEED).unwrap();
            out.push((format!("(e, f) = ({}, {}), n = {n}", ctx.e(), ctx.f()), report, t.elapsed()));
        }
    }
    out
}

fn method_equivalence(reports: &[(String, CrossReport, Duration)]) -> Outcome {
    let mut per_field = [Duration::ZERO; 3];
    for (k, (label, report, took)) in reports.iter().enumerate() {
        per_field[k / 4] += *took;
        for d in &report.disagreements {
            let direct: Vec<bool> = d.verdicts.iter().filter(|(m, _)| m != Method::TestingSet.name()).map(|&(_, v)| v).collect();
            ensure(direct.iter().all(|&v| v == direct[0]), || format!("{label}: R = {:?}, {:?}", d.r, d.verdicts))?;
        }
    }
    let slowest = per_field.iter().max().unwrap();
    ensure(*slowest <= Duration::from_secs(120), || format!("slowest field took {slowest:?}"))?;
    let universal: usize = reports.iter().map(|r| r.1.universal).sum();
    Ok(format!("{} lattices, {universal} universal, slowest field {slowest:.1?}", reports.len() * CORPUS_SIZE))
}

fn testing_set_agreement(reports: &[(String, CrossReport, Duration)]) -> Outcome {
    let total: Duration = reports.iter().map(|r| r.2).sum();
    for (label, report, _) in reports {
        for d in &report.disagreements {
            let get = |name: &str| d.verdicts.iter().find(|(m, _)| m == name).map(|&(_, v)| v);
            let (a, b) = (get(Method::ClosedForm.name()), get(Method::TestingSet.name()));
            ensure(a == b, || format!("{label}: R = {:?}, closed form {a:?}, testing set {b:?}", d.r))?;
        }
    }
    ensure(total <= Duration::from_secs(600), || format!("took {total:?}"))?;
    Ok(format!("{} lattices, {total:.1?}", reports.len() * CORPUS_SIZE))
}

fn minimality() -> Outcome {
    let ctx = make_field(1, 1).unwrap();
    let t = Instant::now();
    let mut sizes = Vec::new();
    for n in [2, 3] {
        let report = minimality_check(&ctx, n).unwrap();
        let k = report.rows.len();
        for (i, row) in report.rows.iter().enumerate() {
            for (j, &rep) in row.iter().enumerate() {
                ensure(rep == (i != j), || format!("n = {n}: {} vs {} is {rep}", report.labels[i], report.labels[j]))?;
            }
        }
        sizes.push(format!("{k}x{k}"));
    }
    ensure(t.elapsed() <= Duration::from_secs(60), || format!("took {:?}", t.elapsed()))?;
    Ok(sizes.join(", "))
}

fn sharp_duality() -> Outcome {
    let mut checked = 0;
    for ctx in common::fields() {
        let e = ctx.ei();
        for c in ctx.all_classes() {
            if c == ctx.class_one() || c == ctx.class_delta() {
                continue;
            }
            let rep = ctx.class_rep(c);
            let s = ctx.sharp(&rep).map_err(|x| x.to_string())?;
            let ds = ctx.defect_order(&s).unwrap();
            let h = ctx.hilbert(&s, &rep).unwrap();
            ensure(ds + c.dval() == Ext::int(2 * e) && h == -1, || {
                format!("{}: d(c#) = {ds}, (c#, c) = {h}", ctx.class_label(c))
            })?;
            checked += 1;
        }
    }
    Ok(format!("{checked} classes"))
}

fn hilbert_suite() -> Outcome {
    let q2 = make_field(1, 1).unwrap();
    let reps = [1i64, 3, 5, 7, 2, 6, 10, 14];
    for &a in &reps {
        for &b in &reps {
            let got = q2.hilbert(&q2.from_int(a), &q2.from_int(b)).unwrap();
            ensure(got == q2_hilbert_closed_form(a, b), || format!("Q2: ({a}, {b}) = {got}"))?;
        }
    }
    let mut pairs = Vec::new();
    for ctx in common::fields() {
        let cls = ctx.all_classes();
        let minus_one = ctx.class_of_int(-1);
        let h = |a, b| ctx.hilbert_classes(a, b);
        for &a in &cls {
            ensure(h(a, ctx.class_mul(a, minus_one)) == 1, || format!("(a, -a) != 1 for {}", ctx.class_label(a)))?;
            for &b in &cls {
                ensure(h(a, b) == h(b, a), || "asymmetric".into())?;
                for &c in &cls {
                    ensure(h(a, ctx.class_mul(b, c)) == h(a, b) * h(a, c), || "not bimultiplicative".into())?;
                }
            }
        }
        pairs.push((cls.len() * cls.len()).to_string());
    }
    Ok(format!("{} class pairs", pairs.join("/")))
}

fn q2_defects() -> Outcome {
    let ctx = make_field(1, 1).unwrap();
    let expect = [(3, Ext::int(1)), (7, Ext::int(1)), (-1, Ext::int(1)), (5, Ext::int(2)), (-3, Ext::int(2)), (2, Ext::int(0)), (17, Ext::INF)];
    for (c, d) in expect {
        let brute = q2_defect_brute(c, 6);
        ensure(brute == d, || format!("search mod 64 gives d({c}) = {brute}"))?;
        let got = ctx.defect_order(&ctx.from_int(c)).unwrap();
        ensure(got == d, || format!("d({c}) = {got}, expected {d}"))?;
    }
    Ok("d(3) d(7) d(-1) = 1, d(5) d(-3) = 2, d(2) = 0, d(17) = inf".into())
}

fn invariant_suite() -> Outcome {
    let mut built = 0;
    for (k, ctx) in common::fields().iter().enumerate() {
        // Construction cross-checks alpha_i against the neighbour formula and
        // fails with an internal error on mismatch.
        for l in common::mixed_corpus(ctx, 1000, 8, 900 + k as u64) {
            check_r_alpha(&l);
            check_integral(&l);
            built += 1;
        }
    }
    Ok(format!("{built} lattices"))
}

fn run(id: usize, name: &str, f: impl FnOnce() -> Outcome) -> bool {
    let t = Instant::now();
    let result = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
        let msg = p
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_else(|| "panic".into());
        Err(msg)
    });
    let secs = t.elapsed().as_secs_f64();
    match &result {
        Ok(detail) => println!("PASS {id:>2}. {name}: {detail} [{secs:.2}s]"),
        Err(why) => println!("FAIL {id:>2}. {name}: {why} [{secs:.2}s]"),
    }
    result.is_ok()
}

fn main() -> ExitCode {
    std::panic::set_hook(Box::new(|_| {}));
    let mut ok = true;
    ok &= run(1, "square-class counts", class_counts);
    ok &= run(2, "testing-set sizes", testing_set_sizes);
    ok &= run(3, "testing-set R-invariants", testing_set_r_tables);
    ok &= run(4, "quaternary 2-universality", quaternary_examples);
    let reports = corpus_reports();
    ok &= run(5, "method equivalence on seeded corpus", || method_equivalence(&reports));
    ok &= run(6, "closed form vs testing set", || testing_set_agreement(&reports));
    ok &= run(7, "testing-set minimality over Q2", minimality);
    ok &= run(8, "sharp duality", sharp_duality);
    ok &= run(9, "Hilbert symbol suite", hilbert_suite);
    ok &= run(10, "Q2 defect values", q2_defects);
    ok &= run(11, "R/alpha invariant suite", invariant_suite);
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
