//! Command-line front end. Output is deterministic; diagnostics go to
//! standard error as `{"code": ..., "message": ...}`.

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::decider::{decider, Answer};
use crate::error::{Error, Result};
use crate::exactnum::{format_rational, parse_rational};
use crate::foliation::{compile, parse_obstacles};
use crate::groupoid::{saturate, DEFAULT_DEPTH_LIMIT};
use crate::oracle::{cross_validate, DEFAULT_ORACLE_DEPTH};
use crate::presentation::{parse_presentation, PointRef, Presentation};
use crate::quotient::{build_quotient, classify_hausdorff};
use crate::separation::{check_graph_like, Separation};

#[derive(Parser, Debug)]
#[command(
    name = "nhgraph",
    version,
    about = "Hausdorff quotients of non-Hausdorff 1-manifolds"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Saturation round limit.
    #[arg(long, global = true, default_value_t = DEFAULT_DEPTH_LIMIT)]
    pub depth_limit: usize,
    /// Output file (standard output if absent).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Dot,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Parse and saturate a presentation.
    Validate {
        /// Input document.
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// List inseparable pairs and chain classes.
    BranchPoints {
        /// Input document.
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Build the minimal Hausdorff quotient.
    Quotient {
        /// Input document.
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Cross-check inseparability against the neighbourhood oracle.
        #[arg(long)]
        oracle_check: bool,
    },
    /// Classify branch-free components.
    Classify {
        /// Input document.
        #[arg(long = "in")]
        input: PathBuf,
        /// Classify only this component, failing if it has branch points.
        #[arg(long)]
        component: Option<usize>,
    },
    /// Compile an obstacle set into a presentation of its leaf space.
    FoliationCompile {
        /// Input document.
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Decide inseparability of two points, written `CHART:PARAM`.
    Oracle {
        /// Input document.
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, num_args = 2, value_names = ["A", "B"], required = true)]
        pair: Vec<String>,
        #[arg(long, default_value = "epsilon")]
        method: String,
        #[arg(long, default_value_t = DEFAULT_ORACLE_DEPTH)]
        depth: u32,
    },
}

fn read(path: &PathBuf) -> Result<String> {
    Ok(std::fs::read_to_string(path)?)
}

fn load(path: &PathBuf) -> Result<Presentation> {
    parse_presentation(&read(path)?)
}

fn point_json(p: &Presentation, x: &PointRef) -> Value {
    json!({"chart": p.chart(x.chart).id, "param": format_rational(&x.param)})
}

fn parse_point(p: &Presentation, text: &str) -> Result<PointRef> {
    let (chart, param) = text
        .rsplit_once(':')
        .ok_or_else(|| Error::Parse(format!("point `{text}` is not CHART:PARAM")))?;
    let param = parse_rational(param).map_err(|_| Error::Rational(param.to_string()))?;
    let x = p.point(chart, param)?;
    p.check_point(&x)?;
    Ok(x)
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("json value serializes")
}

/// Runs one command and returns its primary output.
pub fn execute(cli: &Cli) -> Result<String> {
    let depth_limit = cli.depth_limit;
    let text = match &cli.command {
        Command::Validate { input } => {
            let p = load(input)?.symmetrize();
            let g = saturate(&p, depth_limit)?;
            pretty(&json!({
                "charts": p.charts().len(),
                "generators": p.gluings().len(),
                "maps": g.map_count(),
                "rounds": g.rounds(),
                "components": p.components().len(),
            }))
        }
        Command::BranchPoints { input } => {
            let p = load(input)?.symmetrize();
            let g = saturate(&p, depth_limit)?;
            let sep = Separation::analyze(&p, &g);
            let report = check_graph_like(&p, &g, &sep.partition);
            let pairs: Vec<Value> = sep
                .pairs
                .iter()
                .map(|pr| json!([point_json(&p, &pr.a), point_json(&p, &pr.b)]))
                .collect();
            let classes: Vec<Value> = sep
                .partition
                .classes()
                .iter()
                .map(|c| Value::Array(c.iter().map(|x| point_json(&p, x)).collect()))
                .collect();
            let branch: Vec<Value> = sep
                .partition
                .classes()
                .iter()
                .filter(|c| c.len() > 1)
                .flatten()
                .map(|x| point_json(&p, x))
                .collect();
            pretty(&json!({
                "inseparable_pairs": pairs,
                "branch_points": branch,
                "classes": classes,
                "graph_like": report.graph_like,
            }))
        }
        Command::Quotient {
            input,
            format,
            oracle_check,
        } => {
            let a = build_quotient(&load(input)?, depth_limit)?;
            if *oracle_check {
                let cc = cross_validate(
                    &a.presentation,
                    &a.groupoid,
                    &a.separation,
                    DEFAULT_ORACLE_DEPTH,
                )?;
                if !cc.agrees() {
                    return Err(Error::Internal(format!(
                        "oracle disagreement: {}",
                        cc.disagreements.join("; ")
                    )));
                }
            }
            match format {
                Format::Json => a.graph.to_json(&a.presentation),
                Format::Dot => a.graph.to_dot(&a.presentation),
            }
        }
        Command::Classify { input, component } => {
            let a = build_quotient(&load(input)?, depth_limit)?;
            let qg = &a.graph;
            let chart_ids = |i: usize| -> Vec<String> {
                qg.components[i]
                    .charts
                    .iter()
                    .map(|&c| a.presentation.chart(c).id.clone())
                    .collect()
            };
            match component {
                Some(i) => {
                    let class = classify_hausdorff(qg, *i)?;
                    pretty(
                        &json!({"component": i, "charts": chart_ids(*i), "class": class.to_string()}),
                    )
                }
                None => {
                    let rows: Vec<Value> = (0..qg.components.len())
                        .map(|i| match classify_hausdorff(qg, i) {
                            Ok(class) => json!({"component": i, "charts": chart_ids(i), "class": class.to_string()}),
                            Err(e) => json!({"component": i, "charts": chart_ids(i), "class": null, "reason": e.to_string()}),
                        })
                        .collect();
                    pretty(&Value::Array(rows))
                }
            }
        }
        Command::FoliationCompile { input } => compile(&parse_obstacles(&read(input)?)?).to_json(),
        Command::Oracle {
            input,
            pair,
            method,
            depth,
        } => {
            let d = decider(method, *depth)?;
            let p = load(input)?.symmetrize();
            let g = saturate(&p, depth_limit)?;
            let (a, b) = (parse_point(&p, &pair[0])?, parse_point(&p, &pair[1])?);
            let answer = match d.decide(&p, &g, &a, &b)? {
                Answer::Inseparable => "inseparable",
                Answer::Separable => "separable",
                Answer::Unknown => "unresolved",
            };
            pretty(&json!({
                "method": d.name(),
                "a": point_json(&p, &a),
                "b": point_json(&p, &b),
                "answer": answer,
            }))
        }
    };
    Ok(text)
}

pub fn diagnostic(e: &Error) -> String {
    json!({"code": e.code(), "message": e.to_string()}).to_string()
}

/// Parses arguments, runs, writes output and returns the exit status:
/// 0 on success, 1 on rejected input, 2 on internal failure.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = if code == 0 {
                write!(stdout, "{e}")
            } else {
                write!(stderr, "{e}")
            };
            return code;
        }
    };
    let result = execute(&cli).and_then(|mut text| {
        if !text.ends_with('\n') {
            text.push('\n');
        }
        match &cli.out {
            Some(path) => std::fs::write(path, text)?,
            None => stdout.write_all(text.as_bytes())?,
        }
        Ok(())
    });
    match result {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "{}", diagnostic(&e));
            if e.is_internal() {
                2
            } else {
                1
            }
        }
    }
}
