//! Command-line front end. [`run`] is the whole program minus process exit,
//! so tests can drive it in-process.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::ag::{
    evaluation_code, first_smooth_curve, goppa_report_for_curve_code, realize_code_on_curve,
    realize_on_curve, search_smooth_curves, EvaluationCodeSpec,
};
use crate::bounds::{crossing_region, is_perfect_square, write_bounds_table};
use crate::codes::LinearCode;
use crate::curve::{is_smooth_plane_curve, singular_points_upto, bezout_bound};
use crate::error::Error;
use crate::field::Field;
use crate::forms::HomogeneousForm;
use crate::projective::{enumerate_points, PointSet};
use crate::Settings;

#[derive(Parser, Debug)]
#[command(name = "agcodes", version, about = "Evaluation codes on projective space and plane curves")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Field size (a prime power).
    #[arg(long, global = true)]
    q: Option<u64>,

    /// Write the primary output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    workers: u64,

    /// Cap on field sizes and exhaustive enumerations.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    cap: Option<u64>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    Csv,
}

#[derive(Args, Debug)]
struct PointArgs {
    /// `all` for every rational point of the ambient space.
    #[arg(long, conflicts_with = "points_file")]
    points: Option<String>,

    /// JSON array of coordinate tuples.
    #[arg(long)]
    points_file: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Describe GF(q).
    Field {
        #[arg(long)]
        elements: bool,
    },
    /// List the rational points of P^n.
    Points {
        #[arg(long, default_value_t = 2)]
        n: usize,
    },
    /// Build the evaluation code of degree-a forms at a point set.
    CodeBuild {
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long)]
        a: u32,
        #[command(flatten)]
        points: PointArgs,
        /// Evaluate on this plane curve instead of P^n.
        #[arg(long)]
        curve: Option<String>,
        #[arg(long)]
        min_dist: bool,
    },
    /// Minimum distance of a code given as JSON.
    MinDist {
        #[arg(long)]
        code_file: PathBuf,
    },
    /// Exhaustively search smooth plane curves through points.
    SearchCurves {
        #[arg(long)]
        degree: u32,
        #[command(flatten)]
        points: PointArgs,
        #[arg(long)]
        limit: Option<usize>,
        #[arg(long)]
        m_max: Option<u32>,
    },
    /// Smoothness certificate of a plane curve.
    CurveCheck {
        #[arg(long)]
        form: String,
        #[arg(long)]
        m_max: Option<u32>,
        /// List every singular point up to m_max instead of stopping at the first.
        #[arg(long)]
        list: bool,
    },
    /// Realize the code C(P^2, P, O(a)) on a smooth curve of the given degree.
    Realize {
        #[arg(long)]
        a: u32,
        #[arg(long)]
        degree: u32,
        #[command(flatten)]
        points: PointArgs,
        #[arg(long)]
        m_max: Option<u32>,
        /// Report on every smooth curve found rather than the first.
        #[arg(long)]
        all_curves: bool,
    },
    /// Goppa inequality k + d >= n - g + 1 for a curve code.
    GoppaCheck {
        #[arg(long)]
        a: u32,
        /// Curve equation; defaults to the first smooth curve of --degree.
        #[arg(long, conflicts_with = "degree")]
        form: Option<String>,
        #[arg(long)]
        degree: Option<u32>,
        #[command(flatten)]
        points: PointArgs,
        #[arg(long)]
        m_max: Option<u32>,
    },
    /// GV and AG bound table.
    Bounds {
        #[arg(long, default_value_t = 0.001)]
        step: f64,
    },
}

enum Failure {
    Usage(String),
    Domain(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

struct Output {
    json: Value,
    text: String,
}

/// Runs the CLI; returns the process exit code (0 ok, 1 domain error,
/// 2 usage error).
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            // --help and --version also surface as clap errors.
            if !e.use_stderr() {
                let _ = out.write_all(e.render().to_string().as_bytes());
                return 0;
            }
            let msg = e.render().to_string();
            let _ = writeln!(err, "{}", json!({ "error": "UsageError", "message": msg.trim_end() }));
            return 2;
        }
    };
    match execute(&cli, out) {
        Ok(()) => 0,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "{}", json!({ "error": "UsageError", "message": msg }));
            2
        }
        Err(Failure::Domain(e)) => {
            let _ = writeln!(err, "{}", json!({ "error": e.kind(), "message": e.to_string() }));
            1
        }
    }
}

fn settings(cli: &Cli, m_max: Option<u32>) -> Settings {
    let mut s = Settings::new(cli.workers as usize);
    if let Some(cap) = cli.cap {
        s = s.with_caps(cap, cap);
    }
    s.m_max_override = m_max;
    s
}

fn field(cli: &Cli, settings: &Settings) -> Result<Field, Failure> {
    let q = cli.q.ok_or_else(|| Failure::Usage("--q is required".into()))?;
    Ok(Field::from_order_with_cap(q, settings.field_cap)?)
}

fn read_json(path: &Path) -> Result<Value, Failure> {
    let text = std::fs::read_to_string(path).map_err(Error::from)?;
    serde_json::from_str(&text).map_err(|e| Failure::Domain(Error::Parse(format!("{}: {e}", path.display()))))
}

fn point_set(args: &PointArgs, field: &Field, n: usize, settings: &Settings) -> Result<PointSet, Failure> {
    match (&args.points, &args.points_file) {
        (Some(s), None) if s == "all" => Ok(enumerate_points(field, n, settings.enumeration_cap)?),
        (Some(s), None) => Err(Failure::Usage(format!("--points accepts only `all`, got {s:?}"))),
        (None, Some(path)) => Ok(PointSet::from_json(field, n, &read_json(path)?)?),
        _ => Err(Failure::Usage("one of --points all or --points-file is required".into())),
    }
}

fn emit(cli: &Cli, out: &mut dyn Write, output: Output) -> Result<(), Failure> {
    let body = match cli.format {
        Format::Json | Format::Csv => {
            serde_json::to_string_pretty(&output.json).expect("JSON values serialize") + "\n"
        }
        Format::Text => output.text,
    };
    write_primary(cli, out, body.as_bytes())
}

fn write_primary(cli: &Cli, out: &mut dyn Write, bytes: &[u8]) -> Result<(), Failure> {
    match &cli.out {
        Some(path) => std::fs::write(path, bytes).map_err(Error::from)?,
        None => out.write_all(bytes).map_err(Error::from)?,
    }
    Ok(())
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<(), Failure> {
    match &cli.command {
        Command::Bounds { step } => return bounds(cli, out, *step),
        Command::MinDist { code_file } => return min_dist(cli, out, code_file),
        _ => {}
    }
    let m_max = match &cli.command {
        Command::SearchCurves { m_max, .. }
        | Command::CurveCheck { m_max, .. }
        | Command::Realize { m_max, .. }
        | Command::GoppaCheck { m_max, .. } => *m_max,
        _ => None,
    };
    let settings = settings(cli, m_max);
    let field = field(cli, &settings)?;
    let output = match &cli.command {
        Command::Field { elements } => {
            let mut json = json!({
                "field": field.to_string(),
                "p": field.p(),
                "k": field.k(),
                "q": field.q(),
                "defining_poly": field.modulus_text(),
            });
            let mut text = format!("{field} = F_{}[t]/({})\n", field.p(), field.modulus_text());
            if *elements {
                let names: Vec<_> = field.elements().map(|e| field.format_elem(e)).collect();
                text += &format!("{}\n", names.join(" "));
                json["elements"] = json!(names);
            }
            Output { json, text }
        }
        Command::Points { n } => {
            let set = enumerate_points(&field, *n, settings.enumeration_cap)?;
            let text = set.points().iter().map(|p| format!("{p}\n")).collect();
            Output {
                json: json!({ "field": field.to_string(), "n": n, "count": set.len(), "points": set.to_json() }),
                text,
            }
        }
        Command::CodeBuild { n, a, points, curve, min_dist } => {
            let (code, liftable_only) = match curve {
                Some(form) => {
                    let set = point_set(points, &field, 2, &settings)?;
                    let f = HomogeneousForm::parse(form, &field, 3, None)?;
                    let curve = is_smooth_plane_curve(&f, &settings)?;
                    let spec = EvaluationCodeSpec::on_curve(curve, *a, set);
                    (evaluation_code(&spec)?, spec.liftable_only())
                }
                None => {
                    let set = point_set(points, &field, *n, &settings)?;
                    (evaluation_code(&EvaluationCodeSpec::on_projective_space(*n, *a, set))?, false)
                }
            };
            let d = if *min_dist { Some(code.minimum_distance(&settings)?) } else { None };
            let mut json = code.to_json(d);
            json["liftable_only"] = json!(liftable_only);
            Output { json, text: format!("{}\n", code.summary(d)) }
        }
        Command::SearchCurves { degree, points, limit, .. } => {
            let set = point_set(points, &field, 2, &settings)?;
            let search = search_smooth_curves(&field, *degree, &set, *limit, &settings)?;
            let mut text = format!(
                "{} smooth curves of degree {} among {} candidates\n",
                search.smooth_count, degree, search.total_classes
            );
            for c in &search.smooth {
                text += &format!("{}\n", c.form());
            }
            Output { json: search.to_json(), text }
        }
        Command::CurveCheck { form, list, m_max } => {
            let f = HomogeneousForm::parse(form, &field, 3, None)?;
            let curve = is_smooth_plane_curve(&f, &settings)?;
            let mut json = curve.to_json();
            if *list {
                let bound = m_max.unwrap_or_else(|| bezout_bound(f.degree()));
                let singular = singular_points_upto(&f, bound, &settings)?;
                json["singular_points"] = singular
                    .iter()
                    .map(|(m, p)| json!({ "m": m, "point": p.to_json() }))
                    .collect();
            }
            let status = if curve.is_smooth() { "smooth" } else { "singular" };
            Output { text: format!("{}: {status} (m_max = {})\n", curve.form(), curve.m_max()), json }
        }
        Command::Realize { a, degree, points, all_curves, .. } => {
            let set = point_set(points, &field, 2, &settings)?;
            if *all_curves {
                if degree <= a {
                    return Err(Error::DegreeTooSmall { degree: *degree, twist: *a }.into());
                }
                let search = search_smooth_curves(&field, *degree, &set, None, &settings)?;
                if search.smooth.is_empty() {
                    return Err(Error::NoCurveFound { degree: *degree, points: set.len() }.into());
                }
                let reports = search
                    .smooth
                    .iter()
                    .map(|c| realize_on_curve(c, *a, &set, &settings))
                    .collect::<Result<Vec<_>, _>>()?;
                let all_equal = reports.iter().all(|r| r.equal);
                let text = reports
                    .iter()
                    .map(|r| format!("{}: equal = {}\n", r.curve.form(), r.equal))
                    .collect();
                Output {
                    json: json!({
                        "all_equal": all_equal,
                        "count": reports.len(),
                        "reports": reports.iter().map(|r| r.to_json()).collect::<Vec<_>>(),
                    }),
                    text,
                }
            } else {
                let report = realize_code_on_curve(&field, *a, &set, *degree, &settings)?;
                let text = format!(
                    "curve {}\ncode {} equal = {} h0_X = {} h0_Y = {}\n",
                    report.curve.form(),
                    report.code_on_x.summary(report.min_distance),
                    report.equal,
                    report.h0.h0_x,
                    report.h0.h0_y
                );
                Output { json: report.to_json(), text }
            }
        }
        Command::GoppaCheck { a, form, degree, points, .. } => {
            let set = point_set(points, &field, 2, &settings)?;
            let curve = match (form, degree) {
                (Some(text), _) => is_smooth_plane_curve(&HomogeneousForm::parse(text, &field, 3, None)?, &settings)?,
                (None, Some(d)) => first_smooth_curve(&field, *d, &set, &settings)?
                    .ok_or(Error::NoCurveFound { degree: *d, points: set.len() })?,
                (None, None) => return Err(Failure::Usage("goppa-check needs --form or --degree".into())),
            };
            let report = goppa_report_for_curve_code(&curve, *a, &set, &settings)?;
            let mut json = report.to_json();
            json["curve"] = curve.to_json();
            let r = &report.report;
            let text = format!(
                "k + d = {} >= n - g + 1 = {}: {} (slack {}, deg D < n: {})\n",
                r.k + r.d,
                r.n as i64 - r.g as i64 + 1,
                r.holds,
                r.slack,
                report.hypothesis_holds
            );
            Output { json, text }
        }
        Command::Bounds { .. } | Command::MinDist { .. } => unreachable!("handled above"),
    };
    emit(cli, out, output)
}

fn min_dist(cli: &Cli, out: &mut dyn Write, code_file: &Path) -> Result<(), Failure> {
    let settings = settings(cli, None);
    let default_field = match cli.q {
        Some(q) => Some(Field::from_order_with_cap(q, settings.field_cap)?),
        None => None,
    };
    let code = LinearCode::from_json(&read_json(code_file)?, default_field.as_ref())?;
    let d = code.minimum_distance(&settings)?;
    let summary = code.summary(Some(d));
    let json = json!({ "n": code.n(), "k": code.k(), "d": d, "q": code.field().q(), "summary": summary });
    emit(cli, out, Output { json, text: format!("{summary}\n") })
}

fn bounds(cli: &Cli, out: &mut dyn Write, step: f64) -> Result<(), Failure> {
    let q = cli.q.ok_or_else(|| Failure::Usage("--q is required".into()))?;
    let mut csv = Vec::new();
    let rows = write_bounds_table(q, step, &mut csv)?;
    match &cli.out {
        None => out.write_all(&csv).map_err(Error::from)?,
        Some(path) => {
            std::fs::write(path, &csv).map_err(Error::from)?;
            let crossing = if q >= 4 && is_perfect_square(q) {
                json!(crossing_region(q, step.min(0.01))?)
            } else {
                Value::Null
            };
            let summary = json!({ "q": q, "rows": rows, "out": path.display().to_string(), "crossing": crossing });
            writeln!(out, "{}", serde_json::to_string_pretty(&summary).expect("serializable"))
                .map_err(Error::from)?;
        }
    }
    Ok(())
}
