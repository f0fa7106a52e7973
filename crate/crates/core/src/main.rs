use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use reflekt::catalog::group_by_spec;
use reflekt::invariants::{molien, molien_rational, presentation, reflection_degrees};
use reflekt::presentations::{
    coset_enumerate, diagram_presentation, tables as diagram_tables, verify_chain, Diagram,
    Realized,
};
use reflekt::quotients::{self, g31, tables, Reason};
use reflekt::{CycNum, Error, Mat, MatGroup};

#[derive(Parser)]
#[command(name = "reflekt", version, about = "Reflection groups, good subgroups and their quotients")]
struct Cli {
    /// Print a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for parallel steps.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Information about a catalog group.
    Group {
        #[command(subcommand)]
        cmd: GroupCmd,
    },
    /// Molien series up to a given degree.
    Molien {
        name: String,
        #[arg(long, default_value_t = 12)]
        order: usize,
    },
    /// Degrees of a minimal generating set of invariants.
    Degrees { name: String },
    /// Whether G is a good normal subgroup of WT.
    Good { wt: String, g: String },
    /// The quotient reflection group WT/G.
    Quotient { wt: String, g: String },
    /// Reproduce one of the tables.
    Tables {
        #[command(subcommand)]
        cmd: TablesCmd,
    },
    /// The G31 example.
    G31Demo,
    /// Diagram operations.
    Diagram {
        #[command(subcommand)]
        cmd: DiagramCmd,
    },
    /// Presentations.
    Present {
        #[command(subcommand)]
        cmd: PresentCmd,
    },
}

#[derive(Subcommand)]
enum GroupCmd {
    Info { name: String },
}

#[derive(Subcommand)]
enum TablesCmd {
    Verify {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=6))]
        table: u32,
        #[arg(long)]
        max_param: Option<u32>,
        /// Table 6 only: leave out exceptional groups above this order.
        #[arg(long)]
        max_order: Option<usize>,
    },
}

#[derive(Subcommand)]
enum DiagramCmd {
    /// Apply rules to a diagram and check each step against the matrices
    /// of the named group.
    Quotient {
        file: PathBuf,
        #[arg(long)]
        rule: Vec<String>,
        /// Group realizing the diagram: `G(m,p,n)`, a Coxeter name or a
        /// catalog name.
        #[arg(long)]
        group: String,
        #[arg(long, default_value_t = reflekt::presentations::DEFAULT_MAX_COSETS)]
        max: usize,
    },
}

#[derive(Subcommand)]
enum PresentCmd {
    /// Order of the group presented by a diagram file.
    Enumerate {
        file: PathBuf,
        #[arg(long, default_value_t = reflekt::presentations::DEFAULT_MAX_COSETS)]
        max: usize,
    },
}

#[derive(Serialize, Clone, Copy, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
enum Status {
    Ok,
    Failed,
    Inconclusive,
}

#[derive(Serialize)]
struct Report {
    command: String,
    status: Status,
    payload: Value,
    timing_ms: u128,
}

struct Outcome {
    status: Status,
    payload: Value,
    text: String,
}

fn ok(payload: Value, text: String) -> Outcome {
    Outcome {
        status: Status::Ok,
        payload,
        text,
    }
}

fn checked(pass: bool, payload: Value, text: String) -> Outcome {
    Outcome {
        status: if pass { Status::Ok } else { Status::Failed },
        payload,
        text,
    }
}

fn bad_input(e: &Error) -> bool {
    matches!(
        e,
        Error::Parse(_)
            | Error::UnknownName(_)
            | Error::MalformedDiagram(_)
            | Error::RuleMismatch(_)
            | Error::UnknownCommand(_)
            | Error::Io(_)
            | Error::NotSquare(..)
            | Error::DimensionMismatch(_)
            | Error::NotSubgroup(_)
            | Error::NotNormal
            | Error::NotReflectionGroup(_)
    )
}

fn group_json(name: &str, g: &MatGroup) -> Value {
    json!({
        "name": name,
        "order": g.order(),
        "dim": g.dim(),
        "reflections": g.num_reflections(),
        "degrees": if g.is_reflection_group() { reflection_degrees(g).ok() } else { None },
    })
}

/// Reads a JSON file holding a list of square matrices of number strings.
fn matrices_from_file(path: &str) -> Result<Vec<Mat>, Error> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{path}: {e}")))?;
    let raw: Vec<Vec<Vec<String>>> =
        serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{path}: {e}")))?;
    raw.iter()
        .map(|m| {
            let rows = m
                .iter()
                .map(|r| r.iter().map(|s| s.parse::<CycNum>()).collect())
                .collect::<Result<Vec<Vec<CycNum>>, Error>>()?;
            if rows.iter().any(|r| r.len() != rows.len()) {
                return Err(Error::NotSquare(rows.len(), rows.first().map_or(0, |r| r.len())));
            }
            Ok(Mat::from_rows(rows))
        })
        .collect()
}

fn subgroup(wt: &MatGroup, spec: &str) -> Result<MatGroup, Error> {
    let g = match spec {
        "center2" => tables::plus_minus_one(wt)?,
        "derived" => wt.derived_subgroup()?,
        "sl" => wt.sl_part(),
        "center" => wt.center(),
        "q8" => tables::quaternion_subgroup(wt)?,
        s if std::path::Path::new(s).is_file() => {
            let mats = matrices_from_file(s)?;
            MatGroup::generate_in_dim(wt.dim(), &mats)?
        }
        s => {
            if let Some(d) = s.strip_prefix("diag") {
                let d: u32 = d
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad subgroup `{s}`")))?;
                tables::cyclic_diagonal(d)?
            } else {
                group_by_spec(s)?
            }
        }
    };
    if g.dim() != wt.dim() || !wt.contains_group(&g) {
        return Err(Error::NotSubgroup(format!("`{spec}` is not a subgroup")));
    }
    Ok(g)
}

fn rows_outcome(rows: Vec<tables::TableRow>) -> Outcome {
    let pass = rows.iter().all(|r| r.ok && r.degree_identity != Some(false) && r.generators != Some(false));
    let text = rows
        .iter()
        .map(|r| {
            format!(
                "{:<5} {}: expected {}, computed {}{}",
                if r.ok { "ok" } else { "FAIL" },
                r.label,
                r.expected,
                r.computed,
                r.detail.as_ref().map(|d| format!(" ({d})")).unwrap_or_default()
            )
        })
        .collect::<Vec<_>>()
        .join("\n");
    checked(pass, json!({ "tables": rows }), text)
}

fn diagram_rows_outcome(rows: Vec<diagram_tables::RowCheck>) -> Outcome {
    let pass = rows.iter().all(|r| r.ok);
    let text = rows
        .iter()
        .map(|r| {
            let tag = if r.skipped.is_some() {
                "skip"
            } else if r.ok {
                "ok"
            } else {
                "FAIL"
            };
            let orders: Vec<String> = r
                .steps
                .iter()
                .map(|s| format!("{}={}", s.rule, s.presented_order))
                .collect();
            format!(
                "{tag:<5} {} on {}: {}{}{}",
                r.row,
                r.group,
                orders.join(", "),
                r.skipped.as_ref().map(|s| format!("({s})")).unwrap_or_default(),
                r.error.as_ref().map(|s| format!(" error: {s}")).unwrap_or_default(),
            )
        })
        .collect::<Vec<_>>()
        .join("\n");
    checked(pass, json!({ "tables": rows }), text)
}

fn reason_text(r: &Reason) -> String {
    serde_json::to_string(r).unwrap_or_default()
}

fn realized_for(d: Diagram, group: &str) -> Result<Realized, Error> {
    let w = group_by_spec(group)?;
    let mats = reflekt::presentations::realize(&d, &w)?
        .ok_or_else(|| Error::MalformedDiagram(format!("no reflections of {group} satisfy the diagram")))?;
    Realized::new(d, mats)
}

fn run(cmd: &Command) -> Result<Outcome, Error> {
    Ok(match cmd {
        Command::Group { cmd: GroupCmd::Info { name } } => {
            let g = group_by_spec(name)?;
            let v = group_json(name, &g);
            let text = format!(
                "{name}: order {}, dimension {}, {} reflections, degrees {}",
                g.order(),
                g.dim(),
                g.num_reflections(),
                v["degrees"]
            );
            ok(json!({ "group": v }), text)
        }
        Command::Molien { name, order } => {
            let g = group_by_spec(name)?;
            let s = molien(&g, *order).dims();
            let r = molien_rational(&g);
            let text = format!("{name}: {s:?}");
            ok(
                json!({ "group": {"name": name, "order": g.order()}, "series": s, "period": r.period }),
                text,
            )
        }
        Command::Degrees { name } => {
            let g = group_by_spec(name)?;
            let p = presentation(&g, None, None)?;
            let text = format!(
                "{name}: generator degrees {:?}, relation degrees {:?}",
                p.generator_degrees, p.relation_degrees
            );
            ok(
                json!({
                    "group": {"name": name, "order": g.order(), "degrees": p.generator_degrees},
                    "relation_degrees": p.relation_degrees,
                    "complete_intersection": p.is_complete_intersection(),
                }),
                text,
            )
        }
        Command::Good { wt, g } => {
            let w = group_by_spec(wt)?;
            let h = subgroup(&w, g)?;
            let (q, id) = quotients::full_quotient(&w, &h)?;
            let mut payload = json!({
                "group": group_json(wt, &w),
                "subgroup": {"name": g, "order": h.order()},
                "good": q.good,
                "reason": q.reason,
            });
            let mut text = format!("good: {}\nreason: {}", q.good, reason_text(&q.reason));
            if q.good {
                payload["quotient_degrees"] = json!(q.w_degrees);
                text.push_str(&format!("\nquotient degrees: {:?}", q.w_degrees));
            }
            if let Some(id) = id {
                payload["degree_identity"] = json!(id);
            }
            // a pair that is not good is a failed check, with its witness
            checked(q.good, payload, text)
        }
        Command::Quotient { wt, g } => {
            let w = group_by_spec(wt)?;
            let h = subgroup(&w, g)?;
            let (q, id) = quotients::full_quotient(&w, &h)?;
            if !q.good {
                let payload = json!({ "good": false, "reason": q.reason });
                return Ok(checked(false, payload, format!("not good: {}", reason_text(&q.reason))));
            }
            let wq = q.w.as_ref().expect("good quotient");
            let corr = quotients::hyperplane_map_with(&w, &h, &q)?;
            let holds = id.as_ref().map_or(false, |i| i.holds);
            let payload = json!({
                "group": group_json(wt, &w),
                "good": true,
                "reason": q.reason,
                "quotient": {
                    "order": wq.order(),
                    "degrees": q.w_degrees,
                    "weights": q.v_weights,
                    "relation_degrees": q.relation_degrees,
                    "generators": q.phi_gens.iter().map(|m| m.to_string()).collect::<Vec<_>>(),
                },
                "hyperplanes": {
                    "classes": corr.classes.len(),
                    "pairs": corr.pairs,
                    "image_orders": corr.image_orders,
                    "target_size": corr.target_size,
                },
                "degree_identity": id,
            });
            let text = format!(
                "|W| = {}, degrees {:?}, weights {:?}, relation degrees {:?}\nhyperplane classes: {}, bijection {}, orders match {}\ndegree identity: {}",
                wq.order(),
                q.w_degrees,
                q.v_weights,
                q.relation_degrees,
                corr.classes.len(),
                corr.is_bijection(),
                corr.orders_match(),
                holds
            );
            checked(holds && corr.is_bijection() && corr.orders_match(), payload, text)
        }
        Command::Tables { cmd: TablesCmd::Verify { table, max_param, max_order } } => match table {
            1 => rows_outcome(tables::table1(max_param.unwrap_or(5))),
            2 => rows_outcome(tables::table2(max_param.unwrap_or(8))),
            3 => rows_outcome(tables::table3()),
            4 => rows_outcome(tables::table4(max_param.unwrap_or(8))),
            5 => diagram_rows_outcome(diagram_tables::table5(max_param.unwrap_or(3))),
            _ => diagram_rows_outcome(diagram_tables::table6_limited(
                max_param.unwrap_or(3),
                max_order.unwrap_or(usize::MAX),
            )),
        },
        Command::G31Demo => {
            let r = g31::g31_report()?;
            let text = format!(
                "|G31| = {}, |G| = {} with {} reflections, normal {}\n\
                 p_s..p_w invariant {:?}, {} hyperplane classes, s..w classes give p_s..p_w {:?}\n\
                 change of basis {}, relations {} of degree {:?}, equal to R {}\n\
                 R = {}\n\
                 quotient order {}, degrees {:?}, degree identity {}, generators {}",
                r.order,
                r.subgroup_order,
                r.subgroup_reflections,
                r.subgroup_normal,
                r.p_invariant,
                r.classes,
                r.generator_match,
                r.change_of_basis,
                r.relation_count,
                r.relation_degrees,
                r.relation_matches_r,
                r.relation,
                r.quotient_order,
                r.quotient_degrees,
                r.degree_identity,
                r.generators_generate
            );
            checked(r.ok(), json!(r), text)
        }
        Command::Diagram { cmd: DiagramCmd::Quotient { file, rule, group, max } } => {
            let text = std::fs::read_to_string(file)
                .map_err(|e| Error::Io(format!("{}: {e}", file.display())))?;
            let (d, mut rules) = Diagram::parse(&text)?;
            rules.extend(rule.iter().cloned());
            if rules.is_empty() {
                return Err(Error::RuleMismatch("no rule given".into()));
            }
            let start = realized_for(d, group)?;
            let refs: Vec<&str> = rules.iter().map(String::as_str).collect();
            let steps = verify_chain(&start, &refs, *max)?;
            let pass = steps.iter().all(|s| s.ok);
            let text = steps
                .iter()
                .map(|s| {
                    format!(
                        "{} {}: presented {}, |W̃|/|N| = {}, good {}, relators vanish {}\n{}",
                        if s.ok { "ok" } else { "FAIL" },
                        s.rule,
                        s.presented_order,
                        s.matrix_order,
                        s.good,
                        s.relators_vanish,
                        s.diagram.trim_end()
                    )
                })
                .collect::<Vec<_>>()
                .join("\n");
            checked(pass, json!({ "steps": steps }), text)
        }
        Command::Present { cmd: PresentCmd::Enumerate { file, max } } => {
            let text = std::fs::read_to_string(file)
                .map_err(|e| Error::Io(format!("{}: {e}", file.display())))?;
            let (d, _) = Diagram::parse(&text)?;
            let p = diagram_presentation(&d)?;
            match coset_enumerate(&p, *max) {
                Ok(n) => ok(
                    json!({ "order": n, "presentation": p }),
                    format!("{p}\norder {n}"),
                ),
                Err(Error::CosetLimitExceeded(m)) => Outcome {
                    status: Status::Inconclusive,
                    payload: json!({ "limit": m, "presentation": p }),
                    text: format!("{p}\ncoset limit {m} exceeded"),
                },
                Err(e) => return Err(e),
            }
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    let command: Vec<String> = std::env::args().skip(1).collect();
    let start = Instant::now();
    let (status, payload, text, code) = match run(&cli.command) {
        Ok(o) => {
            let code = if o.status == Status::Ok { 0 } else { 1 };
            (o.status, o.payload, o.text, code)
        }
        Err(e) => {
            let code = if bad_input(&e) { 2 } else { 1 };
            (Status::Failed, json!({ "error": e.to_string() }), format!("error: {e}"), code)
        }
    };
    if cli.json {
        let report = Report {
            command: command.join(" "),
            status,
            payload,
            timing_ms: start.elapsed().as_millis(),
        };
        println!("{}", serde_json::to_string_pretty(&report).expect("serializable"));
    } else if code == 2 {
        eprintln!("{text}");
    } else {
        println!("{text}");
    }
    ExitCode::from(code)
}
