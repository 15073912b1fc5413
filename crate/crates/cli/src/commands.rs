use std::path::Path;

use orchard_core::counting::{
    count_3rich_bruteforce, count_3rich_formula, count_3rich_formula_index_difference,
    green_tao_bound, psi, psi_index_difference, MAX_BRUTEFORCE_ORDER,
};
use orchard_core::curve::{SupersingularMethod, WeierstrassCurve};
use orchard_core::field::{is_prime, FieldSpec};
use orchard_core::orchard::{
    self, construct_family, family_expectation, lines_from_group, reproduce_table3,
    ruck_admissible, schoof_admissible, verify_theorem, AdmissibilityVerdict, Family,
    OrchardError, TheoremId, TheoremTarget,
};
use orchard_core::rational::{match_reduction, rat_enumerate_3rich, RationalConfig, RationalError};
use orchard_core::AbelianStructure;
use serde_json::{json, Value};

use crate::report::{Failure, Report};

const MAX_Q_VAR: &str = "ORCHARD_MAX_Q";

/// `ORCHARD_MAX_Q` lowers every cap; it can never raise one.
fn check_env_cap(q: u64) -> Result<(), Failure> {
    let Ok(raw) = std::env::var(MAX_Q_VAR) else {
        return Ok(());
    };
    let cap: u64 = raw
        .trim()
        .parse()
        .map_err(|_| Failure::usage(format!("{MAX_Q_VAR}={raw:?} is not a number")))?;
    if q > cap {
        return Err(Failure::Cap(format!("q = {q} exceeds {MAX_Q_VAR} = {cap}")));
    }
    Ok(())
}

/// A field spec (`p^n`, `p^n:modulus`) or a plain prime power `q`.
fn parse_field(text: &str) -> Result<FieldSpec, Failure> {
    let text = text.trim();
    let field = if text.contains('^') || text.contains(':') {
        text.parse::<FieldSpec>()?
    } else {
        let q: u64 = text
            .parse()
            .map_err(|_| Failure::usage(format!("cannot parse field {text:?}")))?;
        let p = (2..=q).find(|d| q.is_multiple_of(*d)).filter(|&p| is_prime(p));
        let Some(p) = p else {
            return Err(Failure::usage(format!("{q} is not a prime power")));
        };
        let (mut rest, mut n) = (q, 0u32);
        while rest % p == 0 {
            rest /= p;
            n += 1;
        }
        if rest != 1 {
            return Err(Failure::usage(format!("{q} is not a prime power")));
        }
        FieldSpec::new(p, n, None)?
    };
    check_env_cap(field.order() as u64)?;
    Ok(field)
}

fn parse_curve(text: &str) -> Result<WeierstrassCurve, Failure> {
    let curve: WeierstrassCurve = text.parse()?;
    check_env_cap(curve.field().order() as u64)?;
    Ok(curve)
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map_or_else(|| "-".to_string(), |v| v.to_string())
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn status(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}

pub fn curve(text: &str, lines: bool, structure: bool, supersingular: bool) -> Result<Report, Failure> {
    let e = parse_curve(text)?;
    let f = e.field();
    let group = e.group_structure()?;
    let n = group.order();
    let t = count_3rich_formula(&group)?;
    let bound = green_tao_bound(n).ok();
    let excess = bound.map(|b| t as i64 - b as i64);
    let mut r = Report::default();
    r.lines.push(format!(
        "N={n} t={t} group={group} bound={} excess={}",
        opt(bound),
        opt(excess)
    ));
    let mut j = json!({
        "curve": e.to_string(),
        "q": f.order(),
        "n": n,
        "t": t,
        "group": group,
        "bound": bound,
        "excess": excess,
    });
    r.csv_header = vec!["curve", "q", "N", "t", "group", "bound", "excess"];
    r.csv_rows.push(vec![
        e.to_string(),
        f.order().to_string(),
        n.to_string(),
        t.to_string(),
        group.to_string(),
        opt(bound),
        opt(excess),
    ]);
    if structure {
        let trace = e.trace()?;
        let jinv = f.format_element(e.j_invariant()?);
        let disc = f.format_element(e.discriminant());
        r.lines.push(format!("trace={trace} j={jinv} discriminant={disc}"));
        j["trace"] = json!(trace);
        j["j_invariant"] = json!(jinv);
        j["discriminant"] = json!(disc);
    }
    if supersingular {
        let by_trace = e.is_supersingular(SupersingularMethod::Trace)?;
        let deuring = e.is_supersingular(SupersingularMethod::Deuring).ok();
        r.lines.push(format!(
            "supersingular={by_trace} deuring={}",
            deuring.map_or("n/a".to_string(), |d| d.to_string())
        ));
        if deuring.is_some_and(|d| d != by_trace) {
            r.mismatch = true;
        }
        j["supersingular"] = json!(by_trace);
        j["deuring"] = json!(deuring);
    }
    if lines {
        let arr = lines_from_group(&e)?;
        if arr.n_lines() as u64 != t {
            r.mismatch = true;
            r.notes
                .push(format!("enumerated {} lines but the formula gives {t}", arr.n_lines()));
        }
        r.lines.extend(arr.to_file_string().lines().map(str::to_string));
        j["arrangement"] = serde_json::to_value(arr.to_json(Some(&e))).expect("serializable");
    }
    r.json = j;
    Ok(r)
}

pub fn formula(text: &str) -> Result<Report, Failure> {
    let g: AbelianStructure = text.parse()?;
    let n = g.order();
    let t = count_3rich_formula(&g)?;
    let brute = if n <= MAX_BRUTEFORCE_ORDER {
        Some(count_3rich_bruteforce(&g)?)
    } else {
        None
    };
    let bound = green_tao_bound(n).ok();
    let excess = bound.map(|b| t as i64 - b as i64);
    let p = psi(&g);
    let mut r = Report::default();
    r.lines.push(format!(
        "group={g} N={n} formula={t} brute={} psi={p} bound={} excess={}",
        opt(brute),
        opt(bound),
        opt(excess)
    ));
    r.mismatch = brute.is_some_and(|b| b != t);
    let literal = psi_index_difference(&g);
    let literal_t = count_3rich_formula_index_difference(&g).ok();
    if literal != p {
        r.notes.push(format!(
            "psi read as an index difference would be {literal}, giving {} lines",
            opt(literal_t)
        ));
    }
    r.json = json!({
        "group": g,
        "n": n,
        "formula": t,
        "brute": brute,
        "psi": p,
        "psi_index_difference": literal,
        "bound": bound,
        "excess": excess,
    });
    r.csv_header = vec!["group", "N", "formula", "brute", "psi", "bound", "excess"];
    r.csv_rows.push(vec![
        g.to_string(),
        n.to_string(),
        t.to_string(),
        opt(brute),
        p.to_string(),
        opt(bound),
        opt(excess),
    ]);
    Ok(r)
}

pub fn admissible(p: u64, n: u32, t: i64, n1: Option<u64>, n2: Option<u64>) -> Result<Report, Failure> {
    let verdict: Result<AdmissibilityVerdict, OrchardError> = match (n1, n2) {
        (None, None) => schoof_admissible(p, n, t),
        (Some(a), Some(b)) => ruck_admissible(p, n, t, a, b),
        _ => return Err(Failure::usage("give both n1 and n2, or neither")),
    };
    let mut r = Report::default();
    let (q, admissible, clause) = match verdict {
        Ok(v) => (v.q, v.admissible, v.rule_fired.to_string()),
        Err(OrchardError::NotRealizableOrder(_)) => {
            let q = schoof_admissible(p, n, t)?.q;
            (q, false, "order not realizable".to_string())
        }
        Err(e) => return Err(e.into()),
    };
    let order = q as i64 + 1 - t;
    let group = match (n1, n2) {
        (Some(a), Some(b)) => format!(" group={a},{b}"),
        _ => String::new(),
    };
    r.lines.push(format!(
        "q={q} t={t} N={order}{group} admissible={admissible} clause=\"{clause}\""
    ));
    r.json = json!({
        "p": p, "n": n, "q": q, "t": t, "order": order,
        "group": n1.zip(n2).map(|(a, b)| [a, b]),
        "admissible": admissible, "clause": clause,
    });
    r.csv_header = vec!["p", "n", "q", "t", "N", "n1", "n2", "admissible", "clause"];
    r.csv_rows.push(vec![
        p.to_string(),
        n.to_string(),
        q.to_string(),
        t.to_string(),
        order.to_string(),
        opt(n1),
        opt(n2),
        admissible.to_string(),
        clause,
    ]);
    Ok(r)
}

pub fn table3() -> Result<Report, Failure> {
    let rows = reproduce_table3()?;
    let mut r = Report {
        csv_header: vec!["curve", "q", "group", "N", "t", "bound", "excess", "status"],
        ..Report::default()
    };
    let mut json_rows = Vec::new();
    let mut passed = 0;
    for row in &rows {
        let e = &row.expected;
        let expected_group = AbelianStructure::new(e.group)?;
        let mut diff = Vec::new();
        if row.group != expected_group {
            diff.push("group");
        }
        if row.n_points != e.n_points {
            diff.push("N");
        }
        if row.t != e.t || row.t_group.is_some_and(|t| t != e.t) {
            diff.push("t");
        }
        if row.bound != e.bound {
            diff.push("bound");
        }
        passed += usize::from(row.pass);
        let mut line = format!(
            "{:>2} {} q={} group={} N={} t={}{} bound={} excess={} {}",
            row.index,
            e.curve,
            row.q_model,
            row.group,
            row.n_points,
            row.t,
            row.t_group.map(|t| format!(" (enumerated {t})")).unwrap_or_default(),
            row.bound,
            row.excess,
            status(row.pass)
        );
        if !row.pass {
            line.push_str(&format!(
                " [printed group={expected_group} N={} t={} bound={}]",
                e.n_points, e.t, e.bound
            ));
        }
        r.lines.push(line);
        if let Some(note) = e.note {
            r.notes.push(format!("row {} (printed q={}): {note}", row.index, e.q));
        }
        r.csv_rows.push(vec![
            e.curve.to_string(),
            row.q_model.to_string(),
            row.group.to_string(),
            row.n_points.to_string(),
            row.t.to_string(),
            row.bound.to_string(),
            row.excess.to_string(),
            status(row.pass).to_lowercase(),
        ]);
        json_rows.push(json!({
            "row": row.index,
            "curve": e.curve,
            "q_printed": e.q,
            "q": row.q_model,
            "expected": {"group": expected_group, "n": e.n_points, "t": e.t, "bound": e.bound},
            "computed": {"group": row.group, "n": row.n_points, "t": row.t, "t_enumerated": row.t_group, "bound": row.bound, "excess": row.excess},
            "diff": diff,
            "status": status(row.pass).to_lowercase(),
            "note": e.note,
        }));
    }
    r.lines.push(format!("{passed}/{} rows pass", rows.len()));
    r.mismatch = passed != rows.len();
    r.json = json!({ "rows": json_rows, "passed": passed, "total": rows.len() });
    Ok(r)
}

pub fn verify(
    theorem: &str,
    q: Option<&str>,
    p: Option<u64>,
    order: Option<u64>,
    group: Option<&str>,
) -> Result<Report, Failure> {
    let id: TheoremId = theorem.parse().map_err(Failure::usage)?;
    let target = if id == TheoremId::T38 {
        let (Some(p), Some(order), Some(group)) = (p, order, group) else {
            return Err(Failure::usage("t38 needs --p, --order and --group"));
        };
        check_env_cap(p)?;
        TheoremTarget::Classification {
            p,
            order,
            structure: group.parse()?,
        }
    } else {
        let q = q.ok_or_else(|| Failure::usage(format!("{id} needs --q")))?;
        TheoremTarget::Field(parse_field(q)?)
    };
    let report = verify_theorem(id, &target)?;
    let mut r = Report::default();
    r.lines.push(format!("{id} q={}: {}", report.q, status(report.pass())));
    r.csv_header = vec![
        "theorem", "q", "model", "curve", "N", "group", "t", "t_group", "t_geometric", "claimed",
        "bound", "excess", "status",
    ];
    for m in &report.models {
        r.lines.push(format!(
            "  {}: curve={} N={} group={} t={} enumerated={} geometric={} claimed={} bound={} excess={} {}",
            m.label,
            m.curve,
            m.n_points,
            m.structure,
            m.t_formula,
            opt(m.t_group),
            opt(m.t_geometric),
            m.claimed_t,
            opt(m.bound),
            opt(m.excess),
            status(m.pass)
        ));
        r.csv_rows.push(vec![
            id.to_string(),
            report.q.to_string(),
            m.label.clone(),
            m.curve.clone(),
            m.n_points.to_string(),
            m.structure.to_string(),
            m.t_formula.to_string(),
            opt(m.t_group),
            opt(m.t_geometric),
            m.claimed_t.to_string(),
            opt(m.bound),
            opt(m.excess),
            status(m.pass).to_lowercase(),
        ]);
    }
    r.notes.extend(report.notes.iter().cloned());
    r.mismatch = !report.pass();
    r.json = json!({
        "theorem": id.to_string(),
        "q": report.q,
        "pass": report.pass(),
        "models": report.models,
        "notes": report.notes,
    });
    Ok(r)
}

pub fn real(path: &Path, curve: Option<&str>) -> Result<Report, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    let cfg: RationalConfig = text.parse()?;
    let target = curve.map(parse_curve).transpose()?;
    let mut r = Report::default();
    let arr = match rat_enumerate_3rich(&cfg.points) {
        Ok(a) => a,
        Err(e @ RationalError::FourCollinear(_)) => {
            r.lines.push(format!("FAIL: {e}"));
            r.mismatch = true;
            r.json = json!({ "pass": false, "error": e.to_string() });
            r.csv_header = vec!["points", "lines", "status"];
            r.csv_rows.push(vec![cfg.points.len().to_string(), "-".into(), "fail".into()]);
            return Ok(r);
        }
        Err(e) => return Err(e.into()),
    };
    let declared_ok = cfg.declared_lines.is_empty() || cfg.declared_lines == arr.lines();
    let too_many = arr.exceeds_known_real_maximum();
    let mut summary = format!("{} lines", arr.n_lines());
    let mut reduction = None;
    if cfg.q > 0 {
        check_env_cap(cfg.q)?;
        let m = match_reduction(&arr, cfg.q, target.as_ref())?;
        summary.push_str(&format!(
            "; reduction mod {} {}",
            cfg.q,
            if m.pass() { "matches" } else { "does not match" }
        ));
        reduction = Some(m);
    }
    r.lines.push(summary);
    r.lines.push(format!(
        "points={} declared lines {}",
        cfg.points.len(),
        if cfg.declared_lines.is_empty() {
            "absent".to_string()
        } else if declared_ok {
            "agree".to_string()
        } else {
            format!("disagree ({} declared)", cfg.declared_lines.len())
        }
    ));
    if too_many {
        r.lines.push(format!(
            "FAIL: 9 points with {} lines exceed the known real maximum",
            arr.n_lines()
        ));
    }
    if let Some(m) = &reduction {
        r.lines.push(format!("reduced points: {}", m.reduced.join(" ")));
        if let Some(on) = m.on_curve {
            r.lines.push(format!(
                "on curve: {} bijection onto its points: {}",
                yes(on),
                yes(m.bijection == Some(true))
            ));
        }
    }
    let pass = declared_ok && !too_many && reduction.as_ref().is_none_or(|m| m.pass());
    r.mismatch = !pass;
    r.json = json!({
        "points": arr.points().iter().map(|p| p.to_string()).collect::<Vec<_>>(),
        "lines": arr.lines(),
        "declared_lines_agree": declared_ok,
        "exceeds_known_real_maximum": too_many,
        "reduction": reduction,
        "pass": pass,
    });
    r.csv_header = vec!["points", "lines", "reduction_prime", "reduction_matches", "status"];
    r.csv_rows.push(vec![
        cfg.points.len().to_string(),
        arr.n_lines().to_string(),
        cfg.q.to_string(),
        opt(reduction.as_ref().map(|m| m.pass())),
        status(pass).to_lowercase(),
    ]);
    Ok(r)
}

pub fn sweep(q: &str) -> Result<Report, Failure> {
    let field = parse_field(q)?;
    let rep = orchard::sweep(&field)?;
    let mut r = Report::default();
    r.lines.push(format!("q={} curves={}", rep.q, rep.curves));
    r.csv_header = vec!["N", "trace", "group", "curves", "lines", "bound", "excess"];
    for row in &rep.rows {
        let groups: Vec<String> = row
            .structures
            .iter()
            .map(|s| format!("[{}]x{}", s.group, s.curves))
            .collect();
        let lines: Vec<String> = row
            .structures
            .iter()
            .map(|s| format!("{}{}", s.lines, opt_signed(s.excess)))
            .collect();
        r.lines.push(format!(
            "N={} t={} curves={} groups={} lines={} bound={}",
            row.n_points,
            row.trace,
            row.curves,
            groups.join(" "),
            lines.join(" "),
            opt(row.bound)
        ));
        for s in &row.structures {
            r.csv_rows.push(vec![
                row.n_points.to_string(),
                row.trace.to_string(),
                s.group.to_string(),
                s.curves.to_string(),
                s.lines.to_string(),
                opt(row.bound),
                opt(s.excess),
            ]);
        }
    }
    let (missing, extra) = rep.discrepancies();
    r.lines.push(format!(
        "realizable orders match the order criterion: {} (missing {missing:?}, unexpected {extra:?})",
        yes(rep.pass())
    ));
    r.mismatch = !rep.pass();
    r.json = serde_json::to_value(&rep).expect("serializable");
    if let Value::Object(o) = &mut r.json {
        o.insert("pass".into(), json!(rep.pass()));
    }
    Ok(r)
}

fn opt_signed(excess: Option<i64>) -> String {
    match excess {
        Some(e) if e > 0 => format!("(+{e})"),
        _ => String::new(),
    }
}

pub fn family(name: &str, q: &str) -> Result<Report, Failure> {
    let fam: Family = name.parse().map_err(Failure::usage)?;
    let field = parse_field(q)?;
    let exp = family_expectation(fam, &field)?;
    let mut r = Report::default();
    let curve = match construct_family(fam, &field) {
        Ok(c) => c,
        Err(e @ OrchardError::NoParameterFound { .. }) => {
            r.lines.push(format!("FAIL: {e}"));
            r.mismatch = true;
            r.json = json!({ "family": fam.to_string(), "pass": false, "error": e.to_string() });
            r.csv_header = vec!["family", "q", "status"];
            r.csv_rows.push(vec![fam.to_string(), field.order().to_string(), "fail".into()]);
            return Ok(r);
        }
        Err(e) => return Err(e.into()),
    };
    let n = curve.order();
    let group = if field.order() <= orchard_core::curve::MAX_STRUCTURE_Q {
        Some(curve.group_structure()?)
    } else {
        None
    };
    let pass = n == exp.order
        && match (&group, &exp.structure) {
            (Some(g), Some(s)) => g == s,
            _ => true,
        };
    r.lines.push(format!(
        "{fam} curve={curve} N={n} group={} expected N={} ({}) group={} {}",
        opt(group.as_ref()),
        exp.order,
        exp.printed_order,
        opt(exp.structure.as_ref()),
        status(pass)
    ));
    r.notes.extend(exp.note.iter().cloned());
    r.mismatch = !pass;
    r.json = json!({
        "family": fam.to_string(),
        "curve": curve.to_string(),
        "n": n,
        "group": group,
        "expected_n": exp.order,
        "printed_order": exp.printed_order,
        "expected_group": exp.structure,
        "note": exp.note,
        "pass": pass,
    });
    r.csv_header = vec!["family", "q", "curve", "N", "group", "expected_N", "status"];
    r.csv_rows.push(vec![
        fam.to_string(),
        field.order().to_string(),
        curve.to_string(),
        n.to_string(),
        opt(group.as_ref()),
        exp.order.to_string(),
        status(pass).to_lowercase(),
    ]);
    Ok(r)
}
