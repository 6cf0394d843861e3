//! Command-line front end. `run` parses argv, dispatches, and returns the
//! exit code with the text for stdout and stderr.

use crate::arith::field::{fmt_rat, rat_to_f64};
use crate::arith::linalg::Mat;
use crate::arith::parse::parse_rat;
use crate::arith::solve::{AlgPoint, PointClass, DEFAULT_EXTENSION_CAP};
use crate::arith::{factor_rational, HomoForm, Rat};
use crate::cubic::{self, WeierstrassForm};
use crate::divisor::{self, Divisor1, TreeOfSpheres, P1};
use crate::projective::{self, ProjMap, C};
use crate::singularity::{self, LocalPoint, SingularityReport};
use crate::{flex, realcurves, stabilizer, Error};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use std::time::Instant;

#[derive(Parser, Debug)]
#[command(name = "curvemod", version, about = "Invariants and moduli tests for divisors on P^1 and plane curves")]
pub struct Cli {
    #[command(flatten)]
    pub opts: GlobalOpts,
    #[command(subcommand)]
    pub cmd: Cmd,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalOpts {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Binary digits of certified enclosures
    #[arg(long, default_value_t = 160, global = true)]
    pub prec: u32,
    /// Largest number field degree handled exactly
    #[arg(long, default_value_t = DEFAULT_EXTENSION_CAP, global = true)]
    pub cap: usize,
    /// Add wall-clock timing to the report
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
pub enum Cmd {
    /// Divisors on the projective line
    #[command(subcommand)]
    Divisor(DivisorCmd),
    /// Plane curves
    #[command(subcommand)]
    Curve(CurveCmd),
    /// Plane cubics (aliases of the cubic-specific curve commands)
    #[command(subcommand)]
    Cubic(CubicCmd),
    /// Trees of marked spheres
    #[command(subcommand)]
    Tree(TreeCmd),
    /// Numeric analysis of projective maps
    #[command(subcommand)]
    Group(GroupCmd),
    /// Dimension and bound tables
    #[command(subcommand)]
    Tables(TablesCmd),
    /// Topology of real curves from user-supplied nesting data
    #[command(subcommand)]
    Real(RealCmd),
    /// Run a file of commands, one JSON array of arguments per line
    Batch {
        file: String,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum DivisorCmd {
    #[command(allow_negative_numbers = true)]
    CrossRatio { x: String, y: String, z: String, w: String },
    #[command(allow_negative_numbers = true)]
    Orbit { rho: String },
    J { divisor: String },
    Classify { divisor: String },
    Membership { divisor: String },
    Theta { divisor: String },
    Normalize {
        divisor: String,
        #[arg(long, default_value_t = divisor::THETA_MAX_ITER)]
        max_iter: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum CurveCmd {
    Factor { form: String },
    Flexes { form: String },
    Properness {
        form: String,
        /// also test membership for this kappa
        #[arg(long)]
        kappa: Option<String>,
    },
    Singularities { form: String },
    Genus { form: String },
    GenusProperness { form: String },
    Stabilizer { form: String },
    Reduce {
        form: String,
        /// rational flex as x:y:z
        #[arg(long)]
        flex: Option<String>,
    },
    FlexSlope {
        form: String,
        #[arg(long)]
        flex: Option<String>,
    },
    ClassifyReal {
        form: String,
        #[arg(long)]
        flex: Option<String>,
    },
}

#[derive(Subcommand, Debug)]
pub enum CubicCmd {
    Reduce {
        form: String,
        #[arg(long)]
        flex: Option<String>,
    },
    Flexes { form: String },
    Classify {
        form: String,
        #[arg(long)]
        flex: Option<String>,
    },
    FlexSlope {
        form: String,
        #[arg(long)]
        flex: Option<String>,
    },
}

#[derive(Subcommand, Debug)]
pub enum TreeCmd {
    /// Retract a tree (JSON) onto one of its spheres
    Retract {
        tree: String,
        #[arg(long)]
        sphere: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum GroupCmd {
    /// Singular values of a 2x2 or 3x3 matrix given row-major
    Svd { matrix: String },
    Distortion {
        matrix: String,
        #[arg(long)]
        eps: f64,
    },
}

#[derive(Subcommand, Debug)]
pub enum TablesCmd {
    AutDims {
        #[arg(long)]
        n: Option<u64>,
        #[arg(long)]
        p: Option<u64>,
        #[arg(long, default_value_t = 7)]
        max_n: u64,
    },
    Chow {
        #[arg(long, default_value_t = 5)]
        max_n: u64,
    },
    Harnack {
        #[arg(long, default_value_t = 6)]
        max_n: u64,
    },
}

#[derive(Subcommand, Debug)]
pub enum RealCmd {
    Validate {
        graph: String,
        #[arg(long)]
        degree: u64,
    },
    Isotopy { a: String, b: String },
}

pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code: 2, stdout: String::new(), stderr: text }
            };
        }
    };
    if let Cmd::Batch { file, jobs } = &cli.cmd {
        return batch(file, *jobs);
    }
    let start = Instant::now();
    let (name, input) = echo(&cli.cmd);
    let res = dispatch(&cli.cmd, &cli.opts);
    let mut report = json!({ "schema": 1, "command": name, "input": input });
    let code = match res {
        Ok((result, exact)) => {
            report["result"] = result;
            report["exact"] = json!(exact);
            0
        }
        Err(e) => {
            report["error"] = json!({ "kind": kind(&e), "message": e.to_string() });
            e.exit_code()
        }
    };
    if cli.opts.timing {
        report["seconds"] = json!(start.elapsed().as_secs_f64());
    }
    let stdout = match cli.opts.format {
        Format::Json => serde_json::to_string_pretty(&report).unwrap() + "\n",
        Format::Text => text(&report),
    };
    let stderr = report.get("error").map(|e| format!("error: {}\n", e["message"].as_str().unwrap_or(""))).unwrap_or_default();
    Outcome { code, stdout, stderr }
}

fn kind(e: &Error) -> String {
    let d = format!("{e:?}");
    d.chars().take_while(|c| c.is_alphanumeric()).collect()
}

fn text(report: &Value) -> String {
    let mut out = format!("{}\n", report["command"].as_str().unwrap_or(""));
    let body = report.get("result").or_else(|| report.get("error")).cloned().unwrap_or(Value::Null);
    match body {
        Value::Object(m) => {
            for (k, v) in m {
                let s = match v {
                    Value::String(s) => s,
                    other => other.to_string(),
                };
                out.push_str(&format!("{k}: {s}\n"));
            }
        }
        other => out.push_str(&format!("{other}\n")),
    }
    out
}

fn batch(file: &str, jobs: usize) -> Outcome {
    let content = match std::fs::read_to_string(file) {
        Ok(c) => c,
        Err(e) => return Outcome { code: 2, stdout: String::new(), stderr: format!("error: {e}\n") },
    };
    let lines: Vec<&str> = content.lines().filter(|l| !l.trim().is_empty()).collect();
    let mut results: Vec<Option<Value>> = vec![None; lines.len()];
    let jobs = jobs.max(1);
    std::thread::scope(|s| {
        let chunks: Vec<(usize, &mut [Option<Value>])> = {
            let size = lines.len().div_ceil(jobs).max(1);
            results.chunks_mut(size).enumerate().map(|(i, c)| (i * size, c)).collect()
        };
        for (off, chunk) in chunks {
            let lines = &lines;
            s.spawn(move || {
                for (k, slot) in chunk.iter_mut().enumerate() {
                    *slot = Some(batch_line(lines[off + k]));
                }
            });
        }
    });
    let mut worst = 0;
    let mut stdout = String::new();
    for v in results.into_iter().flatten() {
        worst = worst.max(v["code"].as_i64().unwrap_or(2) as i32);
        stdout.push_str(&serde_json::to_string(&v).unwrap());
        stdout.push('\n');
    }
    Outcome { code: worst, stdout, stderr: String::new() }
}

fn batch_line(line: &str) -> Value {
    let args: Vec<String> = match serde_json::from_str(line) {
        Ok(a) => a,
        Err(e) => return json!({ "code": 2, "error": format!("bad batch line: {e}") }),
    };
    // batch output is always JSON lines
    let mut kept = Vec::new();
    let mut it = args.iter();
    while let Some(a) = it.next() {
        if a == "--format" {
            it.next();
        } else if !a.starts_with("--format=") {
            kept.push(a.clone());
        }
    }
    let argv = std::iter::once("curvemod".to_string()).chain(kept);
    let out = run(argv);
    let report: Value = serde_json::from_str(&out.stdout).unwrap_or(Value::Null);
    json!({ "code": out.code, "args": args, "report": report })
}

fn echo(cmd: &Cmd) -> (String, Value) {
    let s = |v: &str| json!(v);
    match cmd {
        Cmd::Divisor(d) => match d {
            DivisorCmd::CrossRatio { x, y, z, w } => ("divisor cross-ratio".into(), json!([x, y, z, w])),
            DivisorCmd::Orbit { rho } => ("divisor orbit".into(), s(rho)),
            DivisorCmd::J { divisor } => ("divisor j".into(), canonical_divisor(divisor)),
            DivisorCmd::Classify { divisor } => ("divisor classify".into(), canonical_divisor(divisor)),
            DivisorCmd::Membership { divisor } => ("divisor membership".into(), canonical_divisor(divisor)),
            DivisorCmd::Theta { divisor } => ("divisor theta".into(), canonical_divisor(divisor)),
            DivisorCmd::Normalize { divisor, .. } => ("divisor normalize".into(), canonical_divisor(divisor)),
        },
        Cmd::Curve(c) => {
            let (n, f) = match c {
                CurveCmd::Factor { form } => ("factor", form),
                CurveCmd::Flexes { form } => ("flexes", form),
                CurveCmd::Properness { form, .. } => ("properness", form),
                CurveCmd::Singularities { form } => ("singularities", form),
                CurveCmd::Genus { form } => ("genus", form),
                CurveCmd::GenusProperness { form } => ("genus-properness", form),
                CurveCmd::Stabilizer { form } => ("stabilizer", form),
                CurveCmd::Reduce { form, .. } => ("reduce", form),
                CurveCmd::FlexSlope { form, .. } => ("flex-slope", form),
                CurveCmd::ClassifyReal { form, .. } => ("classify-real", form),
            };
            (format!("curve {n}"), canonical_form(f))
        }
        Cmd::Cubic(c) => {
            let (n, f) = match c {
                CubicCmd::Reduce { form, .. } => ("reduce", form),
                CubicCmd::Flexes { form } => ("flexes", form),
                CubicCmd::Classify { form, .. } => ("classify", form),
                CubicCmd::FlexSlope { form, .. } => ("flex-slope", form),
            };
            (format!("cubic {n}"), canonical_form(f))
        }
        Cmd::Tree(TreeCmd::Retract { tree, sphere }) => ("tree retract".into(), json!({ "tree": tree, "sphere": sphere })),
        Cmd::Group(g) => match g {
            GroupCmd::Svd { matrix } => ("group svd".into(), s(matrix)),
            GroupCmd::Distortion { matrix, eps } => ("group distortion".into(), json!({ "matrix": matrix, "eps": eps })),
        },
        Cmd::Tables(t) => match t {
            TablesCmd::AutDims { n, p, max_n } => ("tables aut-dims".into(), json!({ "n": n, "p": p, "maxN": max_n })),
            TablesCmd::Chow { max_n } => ("tables chow".into(), json!({ "maxN": max_n })),
            TablesCmd::Harnack { max_n } => ("tables harnack".into(), json!({ "maxN": max_n })),
        },
        Cmd::Real(r) => match r {
            RealCmd::Validate { graph, degree } => ("real validate".into(), json!({ "graph": graph, "degree": degree })),
            RealCmd::Isotopy { a, b } => ("real isotopy".into(), json!([a, b])),
        },
        Cmd::Batch { file, .. } => ("batch".into(), s(file)),
    }
}

fn canonical_form(s: &str) -> Value {
    HomoForm::parse(s).map(|f| json!(f.to_string())).unwrap_or_else(|_| json!(s))
}

fn canonical_divisor(s: &str) -> Value {
    Divisor1::parse(s).map(|d| json!(d.to_string())).unwrap_or_else(|_| json!(s))
}

type Res = Result<(Value, bool), Error>;

fn dispatch(cmd: &Cmd, o: &GlobalOpts) -> Res {
    match cmd {
        Cmd::Divisor(d) => run_divisor(d),
        Cmd::Curve(c) => run_curve(c, o),
        Cmd::Cubic(c) => run_curve(
            &match c {
                CubicCmd::Reduce { form, flex } => CurveCmd::Reduce { form: form.clone(), flex: flex.clone() },
                CubicCmd::Flexes { form } => CurveCmd::Flexes { form: form.clone() },
                CubicCmd::Classify { form, flex } => CurveCmd::ClassifyReal { form: form.clone(), flex: flex.clone() },
                CubicCmd::FlexSlope { form, flex } => CurveCmd::FlexSlope { form: form.clone(), flex: flex.clone() },
            },
            o,
        ),
        Cmd::Tree(TreeCmd::Retract { tree, sphere }) => {
            let t = parse_tree(tree)?;
            let d = divisor::tree_retract(&t, *sphere)?;
            Ok((json!({ "divisor": d.to_string(), "degree": d.degree() }), true))
        }
        Cmd::Group(g) => run_group(g),
        Cmd::Tables(t) => run_tables(t),
        Cmd::Real(r) => run_real(r),
        Cmd::Batch { .. } => unreachable!("handled in run"),
    }
}

fn p1_json(p: &P1) -> Value {
    json!(p.to_string())
}

fn run_divisor(d: &DivisorCmd) -> Res {
    match d {
        DivisorCmd::CrossRatio { x, y, z, w } => {
            let r = divisor::cross_ratio(&P1::parse(x)?, &P1::parse(y)?, &P1::parse(z)?, &P1::parse(w)?)?;
            Ok((json!({ "rho": p1_json(&r) }), true))
        }
        DivisorCmd::Orbit { rho } => {
            let o = divisor::cross_ratio_orbit(&P1::parse(rho)?)?;
            Ok((json!({ "orbit": o.iter().map(|q| q.to_string()).collect::<Vec<_>>(), "distinct": distinct(&o) }), true))
        }
        DivisorCmd::J { divisor } => {
            let d = Divisor1::parse(divisor)?;
            if d.degree() != 4 {
                return Err(Error::InvalidInput(format!("J needs a divisor of degree 4, got {}", d.degree())));
            }
            let p = d.expanded();
            let j = divisor::shape_invariant(&p[0], &p[1], &p[2], &p[3])?;
            Ok((json!({ "J": p1_json(&j) }), true))
        }
        DivisorCmd::Classify { divisor } => {
            let d = Divisor1::parse(divisor)?;
            let c = divisor::classify_deg4(&d)?;
            Ok((
                json!({
                    "degree": d.degree(),
                    "maxMult": d.max_mult(),
                    "J": p1_json(&c.j),
                    "class": format!("{:?}", c.tag),
                    "stabilizerOrder": c.stabilizer_order,
                    "ramification": c.ramification,
                }),
                true,
            ))
        }
        DivisorCmd::Membership { divisor } => {
            let d = Divisor1::parse(divisor)?;
            let m = divisor::moduli_membership(&d);
            Ok((json!({ "degree": d.degree(), "maxMult": d.max_mult(), "membership": format!("{m:?}") }), true))
        }
        DivisorCmd::Theta { divisor } => {
            let d = Divisor1::parse(divisor)?;
            let t = divisor::theta(&divisor::to_numeric(&d))?;
            Ok((json!({ "degree": d.degree(), "theta": t }), false))
        }
        DivisorCmd::Normalize { divisor, max_iter } => {
            let d = Divisor1::parse(divisor)?;
            let r = divisor::normalize_theta(&divisor::to_numeric(&d), *max_iter)?;
            let pts: Vec<Value> = r.divisor.iter().map(|(p, m)| json!({ "point": [cjson(p[0]), cjson(p[1])], "mult": m })).collect();
            Ok((json!({ "theta": r.theta, "iterations": r.iterations, "g": cmat_json(&r.g), "points": pts }), false))
        }
    }
}

fn distinct(v: &[crate::arith::QuadExt]) -> usize {
    let mut u: Vec<&crate::arith::QuadExt> = Vec::new();
    for x in v {
        if !u.contains(&x) {
            u.push(x);
        }
    }
    u.len()
}

fn cjson(c: C) -> Value {
    // adding 0.0 turns -0.0 into 0.0
    json!([c.re + 0.0, c.im + 0.0])
}

fn cmat_json(m: &[Vec<C>]) -> Value {
    json!(m.iter().map(|r| r.iter().map(|&c| cjson(c)).collect::<Vec<_>>()).collect::<Vec<_>>())
}

fn point_json(p: &PointClass) -> Value {
    match p {
        PointClass::Exact(a) => alg_point_json(a),
        PointClass::Numeric(n) => json!({
            "numeric": n.coords.iter().map(|c| c.iter().map(|&v| cjson(v)).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "conjugates": n.coords.len(),
        }),
    }
}

fn alg_point_json(a: &AlgPoint) -> Value {
    let a = a.normalized();
    json!({
        "coords": a.coords.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        "field": a.field().map(|k| format!("{} = 0", k.minpoly_string())),
        "conjugates": a.degree(),
    })
}

fn local_json(lp: &LocalPoint, r: &SingularityReport) -> Value {
    json!({
        "chart": lp.chart.label(),
        "coords": lp.coords_string(),
        "field": lp.field().map(|k| format!("{} = 0", k.minpoly_string())),
        "conjugates": lp.conjugates(),
        "mu": r.mu,
        "m": r.mult,
        "b": r.branches,
        "g": r.genus,
        "gPlus": r.genus_plus,
    })
}

fn rat_json(r: &Rat) -> Value {
    json!(fmt_rat(r))
}

fn mat_json(m: &Mat<Rat>) -> Value {
    json!(m.iter().map(|r| r.iter().map(fmt_rat).collect::<Vec<_>>()).collect::<Vec<_>>())
}

fn parse_point(s: &str) -> Result<AlgPoint, Error> {
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != 3 {
        return Err(Error::Parse { pos: 0, msg: "point must be x:y:z".into() });
    }
    let v: Vec<Rat> = parts.iter().map(|p| parse_rat(p.trim())).collect::<Result<_, _>>()?;
    if v.iter().all(|r| r == &Rat::from_integer(0.into())) {
        return Err(Error::ZeroInput);
    }
    Ok(AlgPoint::rational([v[0].clone(), v[1].clone(), v[2].clone()]))
}

/// The given flex, or the first rational simple flex found.
fn choose_flex(f: &HomoForm, flex: &Option<String>, cap: usize) -> Result<AlgPoint, Error> {
    if let Some(s) = flex {
        return parse_point(s);
    }
    for i in cubic::find_flexes_cubic(f, cap)? {
        if let PointClass::Exact(p) = &i.points {
            if p.is_rational() && i.mult == 1 {
                return Ok(p.clone());
            }
        }
    }
    Err(Error::ExtensionTooLarge("no rational flex; pass one with --flex".into()))
}

fn reduce(f: &HomoForm, flex: &Option<String>, cap: usize) -> Result<(WeierstrassForm, Mat<Rat>, AlgPoint), Error> {
    let p = choose_flex(f, flex, cap)?;
    let (w, g) = cubic::reduce_weierstrass(f, &p)?;
    Ok((w, g, p))
}

fn run_curve(c: &CurveCmd, o: &GlobalOpts) -> Res {
    let form = |s: &str| HomoForm::parse(s);
    let cap = o.cap;
    match c {
        CurveCmd::Factor { form: s } => {
            let f = form(s)?;
            let cyc = factor_rational(&f);
            let comps: Vec<Value> = cyc.components.iter().map(|(h, m)| json!({ "form": h.to_string(), "mult": m })).collect();
            let absolute = crate::arith::bifactor::absolute_component_count(&cyc.support());
            Ok((json!({ "degree": f.degree(), "components": comps, "absoluteComponents": absolute }), true))
        }
        CurveCmd::Flexes { form: s } => {
            let f = form(s)?;
            let v = flex::virtual_flexes(&f, cap)?;
            let exact = v.entries.iter().all(|e| e.points.is_exact());
            let entries: Vec<Value> = v.entries.iter().map(|e| json!({ "point": point_json(&e.points), "phi": e.phi })).collect();
            Ok((json!({ "n": v.n, "entries": entries, "total": v.total() }), exact))
        }
        CurveCmd::Properness { form: s, kappa } => {
            let f = form(s)?;
            let v = flex::virtual_flexes(&f, cap)?;
            let exact = v.entries.iter().all(|e| e.points.is_exact());
            let m = flex::flex_measures(&v)?;
            let p = flex::properness_from(&m);
            let (proper, interval) = match &p {
                flex::Properness::Proper(lo, hi) => (true, json!([fmt_rat(lo), fmt_rat(hi)])),
                flex::Properness::Inconclusive => (false, Value::Null),
            };
            let mut r = json!({
                "n": v.n,
                "total": m.total,
                "pMax": rat_json(&m.p_max),
                "LMax": rat_json(&m.l_max),
                "sum": rat_json(&(m.p_max.clone() + m.l_max.clone())),
                "proper": proper,
                "kappaInterval": interval,
            });
            if let Some(k) = kappa {
                let k = parse_rat(k)?;
                if !(k > Rat::from_integer(0.into()) && k < Rat::from_integer(1.into())) {
                    return Err(Error::InvalidInput("kappa must lie in (0, 1)".into()));
                }
                let one = Rat::from_integer(1.into());
                r["kappa"] = rat_json(&k);
                r["member"] = json!(m.p_max < k && m.l_max < one - k);
            }
            Ok((r, exact))
        }
        CurveCmd::Singularities { form: s } => {
            let f = form(s)?;
            let reps = singularity::singularity_reports(&f, cap)?;
            let pts: Vec<Value> = reps.iter().map(|(lp, r)| local_json(lp, r)).collect();
            Ok((json!({ "points": pts }), true))
        }
        CurveCmd::Genus { form: s } => {
            let f = form(s)?;
            let g = singularity::geometric_genus(&f, cap)?;
            let pts: Vec<Value> = g.points.iter().map(|(lp, r)| local_json(lp, r)).collect();
            Ok((
                json!({
                    "degree": g.degree,
                    "components": g.components,
                    "points": pts,
                    "sumGPlus": g.sum_genus_plus(),
                    "geomGenus": g.geom_genus,
                }),
                true,
            ))
        }
        CurveCmd::GenusProperness { form: s } => {
            let f = form(s)?;
            let g = singularity::genus_properness(&f, cap)?;
            Ok((
                json!({
                    "properness": g.proper,
                    "maxG": g.max_g,
                    "maxGPlus": g.max_g_plus,
                    "bound": g.bound,
                    "condition1": g.condition1,
                    "condition2": g.condition2,
                    "separatingPoint": g.separating_point.as_ref().map(alg_point_json),
                    "lineCondition": g.line_condition.as_ref().map(|l| json!({ "holds": l.holds, "maxGLine": l.max_g_line, "experimental": true })),
                }),
                true,
            ))
        }
        CurveCmd::Stabilizer { form: s } => {
            let f = form(s)?;
            let r = stabilizer::stab_lie(&f)?;
            let basis: Vec<Value> = r.basis.iter().map(|(a, l)| json!({ "A": mat_json(a), "lambda": rat_json(l) })).collect();
            Ok((
                json!({
                    "lieDim": r.lie_dim,
                    "finite": r.lie_dim == 0,
                    "basis": basis,
                    "type": r.one_param_type.as_ref().map(|t| t.to_string()),
                    // four concurrent lines keep a cross-ratio on their pencil
                    "pencilJ": stabilizer::concurrent_lines_j(&f).ok().map(|j| p1_json(&j)),
                }),
                true,
            ))
        }
        CurveCmd::Reduce { form: s, flex } => {
            let f = form(s)?;
            let (w, g, p) = reduce(&f, flex, cap)?;
            let ratio = cubic::m3_point(&w).map(|m| m.to_string()).ok();
            Ok((
                json!({
                    "a": rat_json(&w.a),
                    "b": rat_json(&w.b),
                    "form": w.form().to_string(),
                    "ratio": ratio,
                    "finiteStabilizer": w.has_finite_stabilizer(),
                    "J": w.j().ok().map(|j| j.to_string()),
                    "flex": alg_point_json(&p),
                    "g": mat_json(&g),
                }),
                true,
            ))
        }
        CurveCmd::FlexSlope { form: s, flex } => {
            let f = form(s)?;
            let (w, _, _) = reduce(&f, flex, cap)?;
            let fs = cubic::flex_slope_prec(&w, o.prec)?;
            Ok((
                json!({
                    "a": rat_json(&w.a),
                    "b": rat_json(&w.b),
                    "s": [fmt_rat(&fs.lo), fmt_rat(&fs.hi)],
                    "sApprox": fs.mid(),
                    "flexX": [rat_to_f64(&fs.flex_x.0), rat_to_f64(&fs.flex_x.1)],
                    "singular": fs.singular,
                }),
                false,
            ))
        }
        CurveCmd::ClassifyReal { form: s, flex } => {
            let f = form(s)?;
            let (w, _, _) = reduce(&f, flex, cap)?;
            Ok((
                json!({ "a": rat_json(&w.a), "b": rat_json(&w.b), "realClass": cubic::classify_real_cubic(&w).name() }),
                true,
            ))
        }
    }
}

fn parse_matrix(s: &str) -> Result<ProjMap, Error> {
    let toks: Vec<&str> = s.split(|c: char| c.is_whitespace() || c == ',' || c == ';').filter(|t| !t.is_empty()).collect();
    let n = match toks.len() {
        4 => 2,
        9 => 3,
        k => return Err(Error::InvalidInput(format!("expected 4 or 9 entries, got {k}"))),
    };
    if let Ok(v) = toks.iter().map(|t| parse_rat(t)).collect::<Result<Vec<Rat>, _>>() {
        return ProjMap::exact(v.chunks(n).map(|r| r.to_vec()).collect());
    }
    let v: Vec<f64> = toks
        .iter()
        .map(|t| t.parse::<f64>().map_err(|_| Error::Parse { pos: 0, msg: format!("bad matrix entry '{t}'") }))
        .collect::<Result<_, _>>()?;
    ProjMap::real(&v.chunks(n).map(|r| r.to_vec()).collect::<Vec<_>>())
}

fn run_group(g: &GroupCmd) -> Res {
    match g {
        GroupCmd::Svd { matrix } => {
            let m = parse_matrix(matrix)?;
            let s = projective::svd_decompose(&m)?;
            let last = *s.a.last().unwrap();
            Ok((
                json!({
                    "a": s.a,
                    "ratio": s.a[0] / last,
                    "r": cmat_json(&s.r),
                    "r2": cmat_json(&s.r2),
                }),
                false,
            ))
        }
        GroupCmd::Distortion { matrix, eps } => {
            let m = parse_matrix(matrix)?;
            let v = |x: &[C]| json!(x.iter().map(|&c| cjson(c)).collect::<Vec<_>>());
            let r = if m.dim() == 3 {
                match projective::distortion_p2(&m, *eps)? {
                    projective::DistortionP2::Case1 { attract, repel } => {
                        json!({ "case": "Case1", "attractLine": v(&attract), "repelPoint": v(&repel) })
                    }
                    projective::DistortionP2::Case2 { attract, repel } => {
                        json!({ "case": "Case2", "attractPoint": v(&attract), "repelLine": v(&repel) })
                    }
                    projective::DistortionP2::InsideCompact => json!({ "case": "InsideCompact" }),
                }
            } else {
                match projective::distortion_p1(&m, *eps)? {
                    projective::DistortionP1::Disks { repel, attract } => {
                        json!({ "case": "Disks", "attract": v(&attract), "repel": v(&repel) })
                    }
                    projective::DistortionP1::InsideCompact => json!({ "case": "InsideCompact" }),
                }
            };
            Ok((r, false))
        }
    }
}

fn run_tables(t: &TablesCmd) -> Res {
    match t {
        TablesCmd::AutDims { n: Some(n), p, .. } => {
            let p = p.unwrap_or(2);
            let d = stabilizer::dim_counts(*n, p)?;
            Ok((
                json!({
                    "n": n,
                    "p": p,
                    "dimModuliSmooth": d.dim_moduli_smooth,
                    "dimTwoEqualEigen": d.dim_two_equal_eigen,
                    "boundThreeDistinct": d.bound_three_distinct,
                    "sCount": d.s_count,
                    "periodExists": stabilizer::period_p_exists(*n, p)?,
                }),
                true,
            ))
        }
        TablesCmd::AutDims { n: None, p, max_n } => {
            if *max_n < 3 {
                return Err(Error::DegreeTooLow { need: 3, got: *max_n as u32 });
            }
            let q = p.unwrap_or(3);
            let two: Vec<Value> = (3..=*max_n)
                .map(|n| {
                    let d = stabilizer::dim_counts(n, 2)?;
                    Ok(json!({ "n": n, "dimModuliSmooth": d.dim_moduli_smooth, "dimTwoEqualEigen": d.dim_two_equal_eigen }))
                })
                .collect::<Result<_, Error>>()?;
            let three: Vec<Value> = (4..=*max_n)
                .map(|n| Ok(json!({ "n": n, "bound": stabilizer::dim_counts(n, q)?.bound_three_distinct })))
                .collect::<Result<_, Error>>()?;
            Ok((json!({ "twoEqualEigen": two, "threeDistinct": { "p": q, "rows": three } }), true))
        }
        TablesCmd::Chow { max_n } => {
            let rows: Vec<Value> = (1..=*max_n)
                .map(|n| {
                    let c = stabilizer::chow_dims(n)?;
                    Ok(json!({ "n": n, "chowDim": c.chow_dim, "reducibleDim": c.reducible_dim }))
                })
                .collect::<Result<_, Error>>()?;
            Ok((json!({ "rows": rows }), true))
        }
        TablesCmd::Harnack { max_n } => {
            let rows: Vec<Value> =
                (1..=*max_n).map(|n| Ok(json!({ "n": n, "bound": realcurves::harnack_bound(n)? }))).collect::<Result<_, Error>>()?;
            Ok((json!({ "rows": rows }), true))
        }
    }
}

fn run_real(r: &RealCmd) -> Res {
    match r {
        RealCmd::Validate { graph, degree } => {
            let g = realcurves::DualGraph::from_json(graph)?;
            let v = realcurves::validate_arrangement(&g, *degree)?;
            let (status, reason) = match v {
                realcurves::Validity::Valid => ("Valid", None),
                realcurves::Validity::Violation(s) => ("Violation", Some(s)),
            };
            Ok((
                json!({
                    "status": status,
                    "reason": reason,
                    "components": g.components(),
                    "harnackBound": realcurves::harnack_bound(*degree)?,
                    "canonical": g.canonical(),
                }),
                true,
            ))
        }
        RealCmd::Isotopy { a, b } => {
            let (ga, gb) = (realcurves::DualGraph::from_json(a)?, realcurves::DualGraph::from_json(b)?);
            Ok((json!({ "equal": realcurves::isotopy_equal(&ga, &gb), "canonical": [ga.canonical(), gb.canonical()] }), true))
        }
    }
}

pub fn parse_curve(s: &str) -> Result<HomoForm, Error> {
    HomoForm::parse(s)
}

pub fn parse_divisor(s: &str) -> Result<Divisor1, Error> {
    Divisor1::parse(s)
}

/// Tree JSON: {"spheres": k, "nodes": [[[i, "p"], [j, "q"]], ...], "marked": [[i, "p"], ...]}
pub fn parse_tree(s: &str) -> Result<TreeOfSpheres, Error> {
    #[derive(serde::Deserialize)]
    struct Raw {
        spheres: usize,
        nodes: Vec<[(usize, String); 2]>,
        marked: Vec<(usize, String)>,
    }
    let raw: Raw = serde_json::from_str(s).map_err(|e| Error::Parse { pos: e.column(), msg: e.to_string() })?;
    let pt = |(i, p): &(usize, String)| -> Result<(usize, P1), Error> { Ok((*i, P1::parse(p)?)) };
    Ok(TreeOfSpheres {
        spheres: raw.spheres,
        nodes: raw.nodes.iter().map(|[a, b]| Ok((pt(a)?, pt(b)?))).collect::<Result<_, Error>>()?,
        marked: raw.marked.iter().map(pt).collect::<Result<_, _>>()?,
    })
}
