//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so the report is always printed. The
//! process exits nonzero if any criterion's outcome differs from the
//! expected one. Criterion 1 is expected to FAIL on one row: the printed
//! table lists `y^2 = x^3 + 1` over `F_49` as cyclic, but that curve has
//! full 4-torsion there (checked below with separate arithmetic), so the
//! group column cannot match. Everything else in that criterion must pass.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use orchard_core::counting::{all_structures, count_3rich_bruteforce, count_3rich_formula, green_tao_bound};
use orchard_core::curve::{ProjPoint, SupersingularMethod, WeierstrassCurve};
use orchard_core::field::FieldSpec;
use orchard_core::orchard::{
    lines_from_group, lines_geometric, reproduce_table3, sweep, verify_theorem, Arrangement,
    TheoremId, TheoremTarget,
};
use orchard_core::rational::{
    lifted_fig4_config, match_reduction, rat_enumerate_3rich, FIG4_CURVE, KNOWN_MAX_REAL_9,
};
use orchard_core::AbelianStructure;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn curve(s: &str) -> WeierstrassCurve {
    s.parse().unwrap_or_else(|e| panic!("{s}: {e}"))
}

/// Labelled lines as sets of labels, from index triples of `arr`.
fn labelled_lines(arr: &Arrangement, labels: &[(&str, ProjPoint)]) -> BTreeSet<BTreeSet<String>> {
    let name = |i: usize| {
        let p = arr.points()[i];
        labels
            .iter()
            .find(|(_, q)| *q == p)
            .map(|(n, _)| n.to_string())
            .unwrap_or_else(|| format!("?{i}"))
    };
    arr.lines()
        .iter()
        .map(|l| l.iter().map(|&i| name(i)).collect())
        .collect()
}

fn expected_lines(text: &[&str]) -> BTreeSet<BTreeSet<String>> {
    text.iter()
        .map(|l| l.chars().map(|c| c.to_string()).collect())
        .collect()
}

/// `#{P : 4P = O}` and `#E` for `y^2 = x^3 + 1` over `F_49 = F_7[i]/(i^2+1)`,
/// with arithmetic written out here rather than taken from the library.
fn f49_torsion_oracle() -> (usize, usize) {
    type G = (i64, i64);
    let m = |a: G, b: G| -> G {
        (
            (a.0 * b.0 - a.1 * b.1).rem_euclid(7),
            (a.0 * b.1 + a.1 * b.0).rem_euclid(7),
        )
    };
    let ad = |a: G, b: G| -> G { ((a.0 + b.0).rem_euclid(7), (a.1 + b.1).rem_euclid(7)) };
    let ng = |a: G| -> G { ((-a.0).rem_euclid(7), (-a.1).rem_euclid(7)) };
    let inv = |a: G| -> G {
        let mut r = (1, 0);
        for _ in 0..47 {
            r = m(r, a);
        }
        r
    };
    let els: Vec<G> = (0..49).map(|k| (k / 7, k % 7)).collect();
    let mut pts: Vec<Option<(G, G)>> = vec![None];
    for &x in &els {
        for &y in &els {
            if m(y, y) == ad(m(m(x, x), x), (1, 0)) {
                pts.push(Some((x, y)));
            }
        }
    }
    let add = |p: Option<(G, G)>, q: Option<(G, G)>| -> Option<(G, G)> {
        let (Some((x1, y1)), Some((x2, y2))) = (p, q) else {
            return p.or(q);
        };
        if x1 == x2 && ad(y1, y2) == (0, 0) {
            return None;
        }
        let l = if x1 == x2 {
            m(m((3, 0), m(x1, x1)), inv(m((2, 0), y1)))
        } else {
            m(ad(y2, ng(y1)), inv(ad(x2, ng(x1))))
        };
        let x3 = ad(ad(m(l, l), ng(x1)), ng(x2));
        let y3 = ad(m(l, ad(x1, ng(x3))), ng(y1));
        Some((x3, y3))
    };
    let four = pts
        .iter()
        .filter(|&&p| {
            let d = add(p, p);
            add(d, d).is_none()
        })
        .count();
    (four, pts.len())
}

fn criterion_1() -> Outcome {
    let rows = match reproduce_table3() {
        Ok(r) => r,
        Err(e) => return outcome(false, e.to_string()),
    };
    let failed: Vec<usize> = rows.iter().filter(|r| !r.pass).map(|r| r.index).collect();
    let mut detail = format!("{}/{} rows match", rows.len() - failed.len(), rows.len());
    for r in rows.iter().filter(|r| !r.pass) {
        if let Err(e) = r.check() {
            detail.push_str(&format!("; {e}"));
        }
    }
    let (four, n) = f49_torsion_oracle();
    detail.push_str(&format!(
        "; independent F_49 check: {n} points, {four} of order dividing 4"
    ));
    outcome(failed.is_empty(), detail)
}

/// The only tolerated failure: row 4 differs in its group column alone,
/// and the separate arithmetic agrees with the computed group.
fn criterion_1_expected_failure_only() -> bool {
    let Ok(rows) = reproduce_table3() else {
        return false;
    };
    let others_pass = rows.iter().filter(|r| r.index != 4).all(|r| r.pass);
    let row4 = &rows[3];
    let only_group = row4.n_points == row4.expected.n_points
        && row4.t == row4.expected.t
        && row4.bound == row4.expected.bound
        && row4.group.factors() == [4, 12];
    others_pass && !row4.pass && only_group && f49_torsion_oracle() == (16, 48)
}

fn criterion_2() -> Outcome {
    let e = curve("5^1;y2=x3+3");
    let f = e.field().clone();
    let start = Instant::now();
    let arr = lines_from_group(&e).unwrap();
    let structure = e.group_structure().unwrap();
    let a = ProjPoint::from_ints(&f, 1, 2);
    let generator = e.order_of(&a).unwrap() == 6;
    let elapsed = start.elapsed();
    let labels = [
        ("O", ProjPoint::infinity(&f)),
        ("A", a),
        ("B", ProjPoint::from_ints(&f, 1, 3)),
        ("C", ProjPoint::from_ints(&f, 2, 1)),
        ("D", ProjPoint::from_ints(&f, 2, 4)),
        ("E", ProjPoint::from_ints(&f, 3, 0)),
    ];
    let lines = labelled_lines(&arr, &labels);
    let want = expected_lines(&["OAB", "OCD", "ACE", "BDE"]);
    let pass = arr.n_points() == 6
        && lines == want
        && structure == AbelianStructure::cyclic(6)
        && generator
        && elapsed < Duration::from_millis(1);
    outcome(
        pass,
        format!(
            "{} points, {} lines, group {structure}, (1,2) generates: {generator}, {elapsed:?}",
            arr.n_points(),
            arr.n_lines()
        ),
    )
}

fn criterion_3() -> Outcome {
    let e8 = curve("7^1;y2=x3+5x2+4x");
    let f = e8.field().clone();
    let p = |x, y| ProjPoint::from_ints(&f, x, y);
    let arr8 = lines_from_group(&e8).unwrap();
    let labels8 = [
        ("O", ProjPoint::infinity(&f)),
        ("A", p(0, 0)),
        ("B", p(2, 1)),
        ("C", p(2, 6)),
        ("D", p(3, 0)),
        ("E", p(5, 2)),
        ("F", p(5, 5)),
        ("G", p(6, 0)),
    ];
    let ok8 = labelled_lines(&arr8, &labels8)
        == expected_lines(&["ADG", "OBC", "OEF", "BDF", "BEG", "CDE", "CFG"])
        && e8.group_structure().unwrap().factors() == [2, 4];

    let e9 = curve("7^1;y2=x3+2");
    let arr9 = lines_from_group(&e9).unwrap();
    let labels9 = [
        ("O", ProjPoint::infinity(&f)),
        ("A", p(0, 3)),
        ("B", p(0, 4)),
        ("C", p(3, 1)),
        ("D", p(3, 6)),
        ("E", p(5, 1)),
        ("F", p(5, 6)),
        ("G", p(6, 1)),
        ("H", p(6, 6)),
    ];
    let ok9 = labelled_lines(&arr9, &labels9)
        == expected_lines(&[
            "OAB", "OCD", "OEF", "OGH", "ACH", "ADE", "AFG", "BCF", "BDG", "BEH", "CEG", "DFH",
        ])
        && e9.group_structure().unwrap().factors() == [3, 3];
    let bound9 = green_tao_bound(9).unwrap();
    let excess = arr9.n_lines() as i64 - bound9 as i64;
    outcome(
        ok8 && ok9 && arr8.n_lines() == 7 && bound9 == 10 && excess == 2,
        format!(
            "(8,{}) over F_7 as Z_2+Z_4: {ok8}; (9,{}) as Z_3+Z_3: {ok9}; bound(9) = {bound9}, excess {excess}",
            arr8.n_lines(),
            arr9.n_lines()
        ),
    )
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let groups = all_structures(200, 3);
    let mut mismatches = Vec::new();
    for g in &groups {
        if count_3rich_formula(g).unwrap() != count_3rich_bruteforce(g).unwrap() {
            mismatches.push(g.to_string());
        }
    }
    let elapsed = start.elapsed();
    outcome(
        mismatches.is_empty() && elapsed < Duration::from_secs(10),
        format!(
            "{} groups, {} mismatches {:?}, {elapsed:.2?}",
            groups.len(),
            mismatches.len(),
            mismatches
        ),
    )
}

fn short_curves(p: u64) -> Vec<WeierstrassCurve> {
    let f = FieldSpec::prime(p).unwrap();
    let mut out = Vec::new();
    for a in f.elements() {
        for b in f.elements() {
            if let Ok(c) = WeierstrassCurve::short(f.clone(), a, b) {
                out.push(c);
            }
        }
    }
    out
}

fn criterion_5() -> Outcome {
    let start = Instant::now();
    let mut curves = 0;
    let mut bad = Vec::new();
    for p in [5, 7, 11, 13] {
        for c in short_curves(p) {
            curves += 1;
            let group = lines_from_group(&c).unwrap();
            let geo = lines_geometric(group.points(), c.field()).unwrap();
            if group.line_point_sets() != geo.line_point_sets() {
                bad.push(c.to_string());
            }
        }
    }
    let elapsed = start.elapsed();
    outcome(
        bad.is_empty() && elapsed < Duration::from_secs(60),
        format!("{curves} curves, {} disagreements {bad:?}, {elapsed:.2?}", bad.len()),
    )
}

fn criterion_6() -> Outcome {
    let mut failures: Vec<String> = Vec::new();
    let mut checked = 0;
    let mut run = |failures: &mut Vec<String>, id: TheoremId, target: TheoremTarget, label: String| {
        match verify_theorem(id, &target) {
            Ok(r) => {
                checked += r.models.len();
                if !r.pass() {
                    failures.push(format!("{label}: {:?}", r.models));
                }
                Some(r)
            }
            Err(e) => {
                failures.push(format!("{label}: {e}"));
                None
            }
        }
    };
    let field = |p: u64, n: u32| FieldSpec::new(p, n, None).unwrap();
    for q in [7, 11, 19] {
        run(&mut failures, TheoremId::T35, TheoremTarget::Field(field(q, 1)), format!("t35 q={q}"));
    }
    for n in [3, 5, 2, 4] {
        run(&mut failures, TheoremId::T36, TheoremTarget::Field(field(2, n)), format!("t36 q=2^{n}"));
    }
    let mut excess_ok = true;
    for (p, n) in [(2u64, 2u32), (3, 2), (2, 4), (5, 2)] {
        let q = p.pow(n);
        let s = (q as f64).sqrt() as u64;
        if let Some(r) = run(&mut failures, TheoremId::T37, TheoremTarget::Field(field(p, n)), format!("t37 q={q}")) {
            // minus model first: m = sqrt(q) - 1, divisible by 3 iff sqrt(q) = 1 mod 3
            let minus = &r.models[0];
            excess_ok &= (minus.excess == Some(2)) == (s % 3 == 1);
            for model in &r.models {
                let m = (model.n_points as f64).sqrt().round() as u64;
                excess_ok &= (model.excess == Some(2)) == m.is_multiple_of(3);
            }
        }
    }
    for factors in [&[20][..], &[2, 10][..]] {
        let structure = AbelianStructure::new(factors).unwrap();
        let label = format!("t38 p=13 {structure}");
        if let Some(r) = run(
            &mut failures,
            TheoremId::T38,
            TheoremTarget::Classification {
                p: 13,
                order: 20,
                structure,
            },
            label.clone(),
        ) {
            if r.models[0].t_formula != 57 || r.models[0].t_group != Some(57) {
                failures.push(format!("{label}: t != 57"));
            }
        }
    }
    outcome(
        failures.is_empty() && excess_ok,
        format!(
            "{checked} models checked, excess pattern ok: {excess_ok}, failures: {failures:?}"
        ),
    )
}

fn criterion_7() -> Outcome {
    let mut curves = 0;
    let mut disagreements = Vec::new();
    for p in [5u64, 7, 11, 13] {
        for c in short_curves(p) {
            curves += 1;
            // trace from a full enumeration, not the fast count
            let t = p as i64 + 1 - c.points().unwrap().len() as i64;
            let deuring = c.is_supersingular(SupersingularMethod::Deuring).unwrap();
            if deuring != (t.rem_euclid(p as i64) == 0) {
                disagreements.push(c.to_string());
            }
        }
    }
    outcome(
        disagreements.is_empty(),
        format!("{curves} curves, {} disagreements {disagreements:?}", disagreements.len()),
    )
}

fn criterion_8() -> Outcome {
    let mut detail = Vec::new();
    let mut pass = true;
    for p in [5, 7, 11, 13] {
        let r = sweep(&FieldSpec::prime(p).unwrap()).unwrap();
        // the sweep's own order tally is checked against full enumeration
        let enumerated: BTreeSet<u64> = short_curves(p)
            .iter()
            .map(|c| c.points().unwrap().len() as u64)
            .collect();
        let (missing, extra) = r.discrepancies();
        pass &= r.pass() && enumerated == r.realizable;
        detail.push(format!(
            "p={p}: {} orders, missing {missing:?}, unexpected {extra:?}",
            r.realizable.len()
        ));
    }
    outcome(pass, detail.join("; "))
}

fn criterion_9() -> Outcome {
    let pts = lifted_fig4_config();
    let on_curve = pts.iter().all(|p| p.on_curve(FIG4_CURVE));
    let arr = match rat_enumerate_3rich(&pts) {
        Ok(a) => a,
        Err(e) => return outcome(false, e.to_string()),
    };
    let mut bad = Vec::new();
    let mut primes = Vec::new();
    for p in (7..=47u64).filter(|&p| orchard_core::field::is_prime(p)) {
        primes.push(p);
        let target = curve(&format!("{p}^1;0,5,0,4,0"));
        match match_reduction(&arr, p, Some(&target)) {
            Ok(m) if m.pass() && m.reduced_lines == Some(7) => {}
            Ok(m) => bad.push(format!("p={p}: {m:?}")),
            Err(e) => bad.push(format!("p={p}: {e}")),
        }
    }
    let pass = on_curve && arr.n_lines() == 7 && !arr.exceeds_known_real_maximum() && bad.is_empty();
    outcome(
        pass,
        format!(
            "{} rational lines, on curve: {on_curve}, valid (8,7) reductions mod {primes:?}, known 9-point real maximum {KNOWN_MAX_REAL_9}, failures: {bad:?}",
            arr.n_lines()
        ),
    )
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("table reproduction", criterion_1),
        ("six-point example", criterion_2),
        ("eight- and nine-point examples", criterion_3),
        ("counting formula vs brute force", criterion_4),
        ("geometric vs group lines", criterion_5),
        ("theorem verifications", criterion_6),
        ("supersingularity cross-check", criterion_7),
        ("order sweep", criterion_8),
        ("rational realization", criterion_9),
    ];
    let mut unexpected = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = run();
        let elapsed = start.elapsed();
        let expected_fail = i == 0 && criterion_1_expected_failure_only();
        println!(
            "criterion {}: {} {name} ({elapsed:.2?}) {}",
            i + 1,
            if o.pass { "PASS" } else { "FAIL" },
            o.detail
        );
        if i == 0 && elapsed > Duration::from_secs(30) {
            println!("criterion 1: FAIL runtime {elapsed:.2?} over 30s");
            unexpected += 1;
        }
        if !o.pass && !expected_fail {
            unexpected += 1;
        }
    }
    if unexpected > 0 {
        println!("{unexpected} unexpected acceptance failure(s)");
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
