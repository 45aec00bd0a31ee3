//! Subcommand implementations. Each returns a [`Report`] holding both the
//! text rendering and the JSON document.

use std::fmt::Write as _;
use std::path::Path;

use codiff_core::catalog::{self, CellStatus, ColumnOrder};
use codiff_core::{
    check_extension, cohomology_dims, cohomology_with_basis, enumerate_simple01_solutions,
    extend_to_stable, find_witness, infinitesimal_deformation,
    infinitesimal_deformation_with_basis, is_codifferential, obstruction_relations, pullback,
    verify_jump, Coderivation, DeformationState, JumpVerdict, LinearComponent, Polynomial,
    Rational, RelationIdeal, SearchOptions, Verdict, Witness,
};
use serde::Serialize;
use serde_json::{json, Value};

use crate::{input, CliError, Format};

pub struct Context {
    pub format: Format,
    pub seed: u64,
}

impl Context {
    fn search(&self) -> SearchOptions {
        SearchOptions {
            seed: self.seed,
            ..SearchOptions::default()
        }
    }
}

#[derive(Debug)]
pub struct Report {
    pub text: String,
    pub json: Value,
}

impl Report {
    pub fn print(&self, format: Format) {
        match format {
            Format::Text => print!("{}", self.text),
            Format::Json => println!(
                "{}",
                serde_json::to_string_pretty(&self.json).expect("serializable")
            ),
        }
    }
}

type CmdResult = Result<Report, CliError>;

fn to_json<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

pub fn check(_ctx: &Context, d: &str) -> CmdResult {
    let d = input::coderivation(d)?;
    let c = is_codifferential(&d)?;
    let mut text = format!("codifferential: {}\n", c.holds);
    if !c.holds {
        writeln!(text, "[d,d] = {}", c.defect).unwrap();
    }
    let report = Report {
        text,
        json: json!({
            "codifferential": c.holds,
            "d": d,
            "defect": c.defect,
        }),
    };
    if c.holds {
        Ok(report)
    } else {
        Err(CliError::Failed(report))
    }
}

pub fn bracket(_ctx: &Context, a: &str, b: &str) -> CmdResult {
    let a = input::coderivation(a)?;
    let b = input::coderivation(b)?;
    let r = a.bracket(&b)?;
    Ok(Report {
        text: format!("{r}\n"),
        json: to_json(&r),
    })
}

pub fn cohomology(_ctx: &Context, d: &str, max_degree: usize, basis: bool) -> CmdResult {
    let d = input::coderivation(d)?;
    let r = if basis {
        cohomology_with_basis(&d, max_degree)?
    } else {
        cohomology_dims(&d, max_degree)?
    };
    let mut text = String::new();
    for (n, h) in r.h.iter().enumerate() {
        writeln!(text, "H{n} = {h}   (Z = {}, B = {})", r.z[n], r.b[n]).unwrap();
        if let Some(b) = &r.basis {
            for c in &b[n] {
                writeln!(text, "    {c}").unwrap();
            }
        }
    }
    Ok(Report {
        text,
        json: to_json(&r),
    })
}

pub fn table(_ctx: &Context) -> CmdResult {
    let r = catalog::reproduce_table()?;
    let width = r.rows.iter().map(|row| row.row.len()).max().unwrap_or(0);
    let mut text = String::new();
    write!(text, "{:width$}", "").unwrap();
    for n in 0..5 {
        write!(text, "  {:>22}", format!("H{n}")).unwrap();
    }
    text.push('\n');
    for row in &r.rows {
        write!(text, "{:width$}", row.row).unwrap();
        for n in 0..row.computed.len() {
            let cell = match row.status[n] {
                CellStatus::Match => format!("{} MATCH", row.computed[n]),
                CellStatus::Documented => {
                    format!("{} (table {}) DOC", row.computed[n], row.expected[n])
                }
                CellStatus::Mismatch => {
                    format!("{} (table {}) MISMATCH", row.computed[n], row.expected[n])
                }
            };
            write!(text, "  {cell:>22}").unwrap();
        }
        text.push('\n');
    }
    writeln!(
        text,
        "cells: {}, match: {}, documented: {}, mismatch: {}",
        r.cells(),
        r.matches,
        r.documented,
        r.mismatches
    )
    .unwrap();
    let report = Report {
        text,
        json: to_json(&r),
    };
    if r.mismatches == 0 {
        Ok(report)
    } else {
        Err(CliError::Failed(report))
    }
}

pub fn transform(_ctx: &Context, g: &str, d: &str) -> CmdResult {
    let w = input::witness(g)?;
    let d = input::coderivation(d)?;
    let g = w.automorphism(*d.space())?;
    let r = pullback(&g, &d)?;
    Ok(Report {
        text: format!("{r}\n"),
        json: to_json(&r),
    })
}

fn witness_text(w: &Witness) -> String {
    let rows: Vec<String> = w
        .matrix
        .iter()
        .map(|r| {
            let cells: Vec<String> = r.iter().map(|x| x.to_string()).collect();
            format!("[{}]", cells.join(", "))
        })
        .collect();
    let mut s = format!("[{}]", rows.join(", "));
    if let Some(b) = &w.beta {
        write!(s, " * exp(beta: v{} -> {} v{})", b.from, b.coeff, b.to).unwrap();
    }
    s
}

pub fn equivalent(ctx: &Context, a: &str, b: &str) -> CmdResult {
    let a = input::coderivation(a)?;
    let b = input::coderivation(b)?;
    match find_witness(&a, &b, &ctx.search())? {
        Verdict::Equivalent(w) => Ok(Report {
            text: format!("equivalent: true\nwitness: {}\n", witness_text(&w)),
            json: json!({ "verdict": "equivalent", "witness": w }),
        }),
        Verdict::NotEquivalent(why) => Err(CliError::Failed(Report {
            text: format!("equivalent: false\nreason: {why}\n"),
            json: json!({ "verdict": "not-equivalent", "reason": why }),
        })),
        Verdict::Inconclusive => Err(CliError::Failed(Report {
            text: "equivalent: inconclusive\n".into(),
            json: json!({ "verdict": "inconclusive" }),
        })),
    }
}

/// Sample points on a component: the images of the unit vectors and of
/// `(1, …, 1)`, `(-1, …, -1)` under its parameterization.
fn sample_points(params: &[Polynomial], dim: usize) -> Vec<Vec<Rational>> {
    let mut seeds: Vec<Vec<Rational>> = (0..dim)
        .map(|k| {
            (0..dim)
                .map(|i| Rational::from(i64::from(i == k)))
                .collect()
        })
        .collect();
    seeds.push(vec![Rational::from(1); dim]);
    seeds.push(vec![Rational::from(-1); dim]);
    let mut out: Vec<Vec<Rational>> = Vec::new();
    for s in seeds {
        let p: Vec<Rational> = params.iter().map(|q| q.evaluate_at(&s)).collect();
        if !out.contains(&p) {
            out.push(p);
        }
    }
    out
}

#[derive(Serialize)]
struct JumpAttempt {
    component: String,
    point: Vec<Rational>,
    /// `jump`, `trivial` (equivalent to the base) or `inconclusive`.
    verdict: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    target: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    reason: Option<String>,
}

fn attempt_jumps(
    s: &DeformationState,
    ideal: &RelationIdeal,
    opts: &SearchOptions,
) -> Result<Vec<JumpAttempt>, CliError> {
    let m = s.num_parameters();
    let comps = if ideal.components.is_empty() {
        vec![LinearComponent { equations: vec![] }]
    } else {
        ideal.components.clone()
    };
    let targets = catalog::table_rows();
    let target_h = targets
        .iter()
        .map(|e| cohomology_dims(&e.formula, 2).map(|r| r.h))
        .collect::<Result<Vec<_>, _>>()?;
    let mut out = Vec::new();
    for c in &comps {
        let dim = c.dimension(m);
        if dim == 0 {
            continue;
        }
        for point in sample_points(&c.parameterization(m), dim) {
            let mut a = JumpAttempt {
                component: c.display(&s.parameters),
                point: point.clone(),
                verdict: "inconclusive",
                target: None,
                witness: None,
                reason: None,
            };
            let spec = s.current.evaluate_params(&point);
            if !spec.bracket(&spec)?.is_zero() {
                a.reason = Some("specialization is not a codifferential at this order".into());
                out.push(a);
                continue;
            }
            if let Verdict::Equivalent(w) = find_witness(&spec, &s.base, opts)? {
                a.verdict = "trivial";
                a.witness = Some(w);
                out.push(a);
                continue;
            }
            let spec_h = cohomology_dims(&spec, 2)?.h;
            for (e, h) in targets.iter().zip(&target_h) {
                if *h != spec_h {
                    continue;
                }
                if let JumpVerdict::Jump(w) = verify_jump(s, &point, &e.formula, opts)? {
                    a.verdict = "jump";
                    a.target = Some(e.label.clone());
                    a.witness = Some(w);
                    break;
                }
            }
            if a.target.is_none() {
                a.reason = Some("no catalog entry matched by the witness search".into());
            }
            out.push(a);
        }
    }
    Ok(out)
}

pub fn deform(ctx: &Context, d: &str, order: usize, basis: Option<&str>, jumps: bool) -> CmdResult {
    let d = input::coderivation(d)?;
    if order == 0 {
        return Err(CliError::Usage("--order must be at least 1".into()));
    }
    let s0 = match basis {
        Some(b) => infinitesimal_deformation_with_basis(&d, input::coderivation_list(b)?)?,
        None => infinitesimal_deformation(&d)?,
    };
    let s = extend_to_stable(&s0, order)?;
    let ideal = obstruction_relations(&s);
    let m = s.num_parameters();
    let mut text = String::new();
    writeln!(text, "base: {}", s.base).unwrap();
    writeln!(text, "parameters: {}", m).unwrap();
    for (t, b) in s.parameters.iter().zip(&s.basis) {
        writeln!(text, "  {t}: {b}").unwrap();
    }
    writeln!(
        text,
        "order: {} (exact: {}, last correction: {})",
        s.order, s.exact, s.last_correction
    )
    .unwrap();
    writeln!(text, "d_inf: {}", s.current).unwrap();
    if ideal.is_trivial() {
        if s.last_correction <= 1 {
            writeln!(text, "relations: none; infinitesimal deformation is versal").unwrap();
        } else {
            writeln!(text, "relations: none").unwrap();
        }
    } else {
        writeln!(text, "relations:").unwrap();
        for g in &ideal.generators {
            writeln!(text, "  {g} = 0").unwrap();
        }
        writeln!(text, "components:").unwrap();
        for c in &ideal.components {
            writeln!(
                text,
                "  {} (dimension {})",
                c.display(&s.parameters),
                c.dimension(m)
            )
            .unwrap();
        }
    }

    let mut attempts = Vec::new();
    if jumps && m > 0 {
        attempts = attempt_jumps(&s, &ideal, &ctx.search())?;
        writeln!(text, "jump targets attempted:").unwrap();
        for a in &attempts {
            let point: Vec<String> = a.point.iter().map(|x| x.to_string()).collect();
            let what = match (a.verdict, &a.target, &a.reason) {
                ("jump", Some(t), _) => format!("jumps to {t}"),
                ("trivial", _, _) => "equivalent to the base".to_string(),
                (_, _, r) => format!("inconclusive ({})", r.as_deref().unwrap_or("")),
            };
            writeln!(
                text,
                "  at ({}) on {}: {what}",
                point.join(", "),
                a.component
            )
            .unwrap();
        }
    }

    Ok(Report {
        text,
        json: json!({
            "state": s,
            "relations": ideal,
            "jumps": attempts,
        }),
    })
}

pub fn extension_check(_ctx: &Context, datum: &str) -> CmdResult {
    let e = input::datum(datum)?;
    let r = check_extension(&e)?;
    let d = e.assemble()?;
    let mut text = String::new();
    let line = |name: &str, c: &Coderivation<Rational>| {
        if c.is_zero() {
            format!("{name}: holds\n")
        } else {
            format!("{name}: fails, defect {c}\n")
        }
    };
    text += &line("maurer-cartan", &r.maurer_cartan);
    text += &line("compatibility", &r.compatibility);
    text += &line("cocycle", &r.cocycle);
    writeln!(text, "base codifferentials: {}", r.base_codifferentials).unwrap();
    writeln!(text, "assembled: {d}").unwrap();
    writeln!(
        text,
        "assembled codifferential: {}",
        r.assembled_codifferential
    )
    .unwrap();
    let report = Report {
        text,
        json: json!({
            "maurer_cartan": r.maurer_cartan,
            "compatibility": r.compatibility,
            "cocycle": r.cocycle,
            "base_codifferentials": r.base_codifferentials,
            "assembled": d,
            "assembled_codifferential": r.assembled_codifferential,
            "holds": r.all_hold(),
        }),
    };
    if r.all_hold() {
        Ok(report)
    } else {
        Err(CliError::Failed(report))
    }
}

pub fn enumerate_simple01(ctx: &Context) -> CmdResult {
    let sols = enumerate_simple01_solutions(ctx.seed)?;
    let mut text = String::new();
    let mut out = Vec::new();
    let mut unmatched = 0;
    for (k, s) in sols.iter().enumerate() {
        let diag = |m: &[Vec<Rational>]| -> String {
            let v: Vec<String> = (0..m.len()).map(|i| m[i][i].to_string()).collect();
            format!("diag({})", v.join(","))
        };
        let label = s.matched.as_ref().map(|(l, _)| l.clone());
        if label.is_none() {
            unmatched += 1;
        }
        writeln!(
            text,
            "{:>2}. L = {}, R = {}: {}  ~ {}",
            k + 1,
            diag(s.l()),
            diag(s.r()),
            s.codifferential,
            label.as_deref().unwrap_or("unmatched")
        )
        .unwrap();
        out.push(json!({
            "l": s.l(),
            "r": s.r(),
            "codifferential": s.codifferential,
            "match": label,
            "witness": s.matched.as_ref().map(|(_, w)| w),
        }));
    }
    writeln!(
        text,
        "solutions: {}, matched: {}",
        sols.len(),
        sols.len() - unmatched
    )
    .unwrap();
    let report = Report {
        text,
        json: Value::Array(out),
    };
    if unmatched == 0 {
        Ok(report)
    } else {
        Err(CliError::Failed(report))
    }
}

pub fn catalog_list(_ctx: &Context) -> CmdResult {
    let rows = catalog::table_rows();
    let labels = catalog::row_labels();
    let mut text = String::new();
    let mut out = Vec::new();
    for (e, row) in rows.iter().zip(labels) {
        writeln!(text, "{row:<12} {}", e.formula).unwrap();
        out.push(json!({ "row": row, "label": e.label, "formula": e.formula }));
    }
    Ok(Report {
        text,
        json: Value::Array(out),
    })
}

pub fn catalog_get(_ctx: &Context, label: &str, column_order: &str) -> CmdResult {
    let order = match column_order {
        "lex" => ColumnOrder::Lex,
        "parity-block" => ColumnOrder::ParityBlock,
        other => {
            return Err(CliError::Usage(format!(
                "unknown column order `{other}`; expected lex or parity-block"
            )))
        }
    };
    let e = catalog::get_label(label)?;
    let m = catalog::to_matrix(&e.formula, order)?;
    let mut text = format!("{}\nformula: {}\n", e.label, e.formula);
    let cols: Vec<String> = order
        .columns()
        .iter()
        .map(|(j, k)| format!("{j}{k}"))
        .collect();
    writeln!(text, "matrix ({column_order}), columns {}:", cols.join(" ")).unwrap();
    for r in &m.rows {
        let cells: Vec<String> = r.iter().map(|x| format!("{:>3}", x.to_string())).collect();
        writeln!(text, "  [{}]", cells.join(" ")).unwrap();
    }
    let h: Vec<String> = e.expected.h.iter().map(|p| p.to_string()).collect();
    writeln!(text, "expected H0..H4: {}", h.join(", ")).unwrap();
    if let Some(op) = &e.opposite {
        writeln!(text, "opposite: {op}").unwrap();
    }
    for n in &e.notes {
        writeln!(text, "note: {n}").unwrap();
    }
    Ok(Report {
        text,
        json: json!({ "entry": e, "matrix": m }),
    })
}

pub fn catalog_export(_ctx: &Context, output: Option<&Path>) -> CmdResult {
    let doc = catalog::export_json();
    match output {
        None => Ok(Report {
            text: format!(
                "{}\n",
                serde_json::to_string_pretty(&doc).expect("serializable")
            ),
            json: doc,
        }),
        Some(path) => {
            let path = match std::env::var_os("CODIFF_OUTPUT_DIR") {
                Some(dir) if path.is_relative() => Path::new(&dir).join(path),
                _ => path.to_path_buf(),
            };
            let body = serde_json::to_string_pretty(&doc).expect("serializable") + "\n";
            std::fs::write(&path, body)
                .map_err(|e| CliError::Usage(format!("cannot write `{}`: {e}", path.display())))?;
            Ok(Report {
                text: format!("wrote {}\n", path.display()),
                json: json!({ "written": path.display().to_string() }),
            })
        }
    }
}
