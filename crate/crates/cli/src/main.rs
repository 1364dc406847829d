use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use meshwork::cluster::{cc, g_vector, verify_exchange};
use meshwork::oracle::{self, ExplicitRep, DEFAULT_BUDGET};
use meshwork::{ArQuiver, DimVector, FTable, ModuleExpr, OneVarPolynomial, PoincareTable, Quiver};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "meshwork", version, about = "Auslander-Reiten and cluster invariants of Dynkin quivers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Quiver file (`type: D4` / `arrows: 1->4, 2->4, 3->4`).
    #[arg(long)]
    quiver: PathBuf,
    /// Write output here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Dot,
    Text,
}

#[derive(Args)]
struct ModuleArg {
    /// Dimension vector; the module is its generic representation.
    #[arg(long, conflicts_with = "module")]
    d: Option<String>,
    /// Direct sum of indecomposables given by dimension vectors, e.g. `1,1,0+0,1,1^2`.
    #[arg(long)]
    module: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Quiver summary and its matrices.
    Show(Common),
    /// Positive roots, which are the indecomposable dimension vectors.
    Roots(Common),
    /// The Auslander-Reiten quiver.
    Ar {
        #[command(flatten)]
        common: Common,
        /// Shorthand for `--format dot`.
        #[arg(long)]
        dot: bool,
    },
    /// Hom and Ext dimensions between all indecomposables.
    Homext(Common),
    /// Generic decomposition of a dimension vector.
    Decomp {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        d: String,
    },
    /// Whether the generic quiver Grassmannian Gr_e(d) is non-empty.
    Nonempty {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        e: String,
        #[arg(long)]
        d: String,
    },
    /// F-polynomials, of all indecomposables or of one module.
    Fpoly {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        module: ModuleArg,
    },
    /// Poincaré polynomials of quiver Grassmannians of a rigid module.
    Poincare {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        module: ModuleArg,
        /// A single subdimension vector; all of them when omitted.
        #[arg(long)]
        e: Option<String>,
    },
    /// g-vectors and cluster characters.
    Cc {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        module: ModuleArg,
    },
    /// Check every mesh and injective exchange relation; exit 2 on failure.
    Verify(Common),
    /// Count subrepresentations of an explicit representation over finite fields.
    OracleCount(OracleCountArgs),
    /// Finite-field oracle.
    Oracle {
        #[command(subcommand)]
        command: OracleCommand,
    },
}

#[derive(Subcommand)]
enum OracleCommand {
    /// Same as `oracle-count`.
    Count(OracleCountArgs),
}

#[derive(Args)]
struct OracleCountArgs {
    /// Representation JSON file.
    #[arg(long)]
    rep: PathBuf,
    #[arg(long)]
    e: String,
    #[arg(long, default_value = "2,3,5")]
    primes: String,
    /// Degree bound of the interpolant; defaults to one less than the number of primes.
    #[arg(long)]
    degree: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u128,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

enum Outcome {
    Ok,
    VerificationFailed,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli.command) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::VerificationFailed) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn run(command: Command) -> Result<Outcome> {
    match command {
        Command::Show(c) => emit(&c, show(&c)?),
        Command::Roots(c) => emit(&c, roots(&c)?),
        Command::Ar { mut common, dot } => {
            if dot {
                common.format = Format::Dot;
            }
            emit(&common, ar(&common)?)
        }
        Command::Homext(c) => emit(&c, homext(&c)?),
        Command::Decomp { common, d } => emit(&common, decomp(&common, &d)?),
        Command::Nonempty { common, e, d } => emit(&common, nonempty(&common, &e, &d)?),
        Command::Fpoly { common, module } => emit(&common, fpoly(&common, &module)?),
        Command::Poincare { common, module, e } => emit(&common, poincare(&common, &module, e.as_deref())?),
        Command::Cc { common, module } => emit(&common, characters(&common, &module)?),
        Command::Verify(c) => {
            let (out, passed) = verify(&c)?;
            emit(&c, out)?;
            Ok(if passed { Outcome::Ok } else { Outcome::VerificationFailed })
        }
        Command::OracleCount(args) | Command::Oracle { command: OracleCommand::Count(args) } => oracle_count(&args),
    }
}

/// Rendered output: JSON is canonical, other formats are optional per command.
struct Output {
    json: Value,
    text: Option<String>,
    csv: Option<String>,
    dot: Option<String>,
}

impl Output {
    fn json(json: Value) -> Self {
        Output { json, text: None, csv: None, dot: None }
    }

    fn text(mut self, t: String) -> Self {
        self.text = Some(t);
        self
    }

    fn csv(mut self, t: String) -> Self {
        self.csv = Some(t);
        self
    }
}

fn emit(c: &Common, out: Output) -> Result<Outcome> {
    write_out(c.out.as_deref(), c.format, out)?;
    Ok(Outcome::Ok)
}

fn write_out(path: Option<&Path>, format: Format, out: Output) -> Result<()> {
    let body = match format {
        Format::Json => serde_json::to_string_pretty(&out.json)? + "\n",
        Format::Text => out.text.ok_or_else(|| anyhow!("text output is not available for this command"))?,
        Format::Csv => out.csv.ok_or_else(|| anyhow!("csv output is not available for this command"))?,
        Format::Dot => out.dot.ok_or_else(|| anyhow!("dot output is only available for `ar`"))?,
    };
    match path {
        Some(p) => fs::write(p, body).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn load_quiver(c: &Common) -> Result<Quiver> {
    let text = fs::read_to_string(&c.quiver).with_context(|| format!("reading {}", c.quiver.display()))?;
    Quiver::parse(&text).with_context(|| format!("parsing {}", c.quiver.display()))
}

fn load_ar(c: &Common) -> Result<ArQuiver> {
    Ok(ArQuiver::knit(&load_quiver(c)?)?)
}

fn vector(q: &Quiver, s: &str) -> Result<DimVector> {
    let d = DimVector::parse_csv(s).map_err(|e| anyhow!("bad dimension vector `{s}`: {e}"))?;
    q.check_len(&d)?;
    if !d.is_nonnegative() {
        bail!("dimension vector {d} has a negative entry");
    }
    Ok(d)
}

/// `1,1,0+0,1,1^2` as a direct sum of indecomposables.
fn parse_module(ar: &ArQuiver, s: &str) -> Result<ModuleExpr> {
    let mut m = ModuleExpr::zero();
    for part in s.split('+').map(str::trim) {
        let (dim, mult) = match part.split_once('^') {
            Some((d, k)) => (d, k.trim().parse::<u32>().map_err(|_| anyhow!("bad multiplicity in `{part}`"))?),
            None => (part, 1),
        };
        let d = vector(ar.quiver(), dim)?;
        let v = ar.vertex_by_dim(&d).with_context(|| format!("{d} is not the dimension of an indecomposable"))?;
        m = m.plus(v, mult);
    }
    Ok(m)
}

fn selected_module(ar: &ArQuiver, arg: &ModuleArg) -> Result<Option<ModuleExpr>> {
    match (&arg.d, &arg.module) {
        (Some(d), _) => Ok(Some(ar.generic_decomposition(&vector(ar.quiver(), d)?)?)),
        (None, Some(m)) => Ok(Some(parse_module(ar, m)?)),
        (None, None) => Ok(None),
    }
}

fn matrix_json(rows: &[Vec<i64>]) -> Value {
    json!(rows)
}

fn show(c: &Common) -> Result<Output> {
    let ar = load_ar(c)?;
    let q = ar.quiver();
    let m = ar.matrices();
    let arrows: Vec<String> = q.arrows().iter().map(|a| format!("{}->{}", a.source + 1, a.target + 1)).collect();
    let json = json!({
        "type": q.type_label(),
        "vertices": q.vertex_count(),
        "arrows": arrows,
        "indecomposables": ar.len(),
        "euler": matrix_json(m.euler.rows()),
        "cartan": matrix_json(m.cartan.rows()),
        "exchange": matrix_json(m.exchange.rows()),
        "coxeter": matrix_json(m.coxeter.rows()),
    });
    let text = format!(
        "type: {}\narrows: {}\nvertices: {}\nindecomposables: {}\n",
        q.type_label(),
        arrows.join(", "),
        q.vertex_count(),
        ar.len()
    );
    Ok(Output::json(json).text(text))
}

fn sorted_roots(ar: &ArQuiver) -> Vec<DimVector> {
    let mut roots: Vec<DimVector> = ar.vertices().iter().map(|v| v.dim.clone()).collect();
    roots.sort_by(|a, b| a.total().cmp(&b.total()).then_with(|| a.cmp(b)));
    roots
}

fn roots(c: &Common) -> Result<Output> {
    let ar = load_ar(c)?;
    let roots = sorted_roots(&ar);
    let lines: Vec<String> = roots.iter().map(|r| csv_vec(r)).collect();
    let json = json!({ "quiver": ar.quiver().type_label(), "count": roots.len(), "roots": roots });
    let text = roots.iter().map(|r| format!("{r}\n")).collect();
    Ok(Output::json(json).text(text).csv(lines.join("\n") + "\n"))
}

fn csv_vec(d: &DimVector) -> String {
    d.entries().iter().map(i64::to_string).collect::<Vec<_>>().join(",")
}

fn ar(c: &Common) -> Result<Output> {
    let ar = load_ar(c)?;
    let mut text = String::new();
    for v in ar.vertices() {
        let tags = match (v.is_projective, v.is_injective) {
            (true, true) => " projective injective",
            (true, false) => " projective",
            (false, true) => " injective",
            (false, false) => "",
        };
        text.push_str(&format!("{} {}{}\n", v.label(), v.dim, tags));
    }
    let mut out = Output::json(serde_json::to_value(ar.to_json())?).text(text);
    out.dot = Some(ar.to_dot());
    Ok(out)
}

fn homext(c: &Common) -> Result<Output> {
    let ar = load_ar(c)?;
    let labels: Vec<String> = ar.vertices().iter().map(|v| v.label()).collect();
    let hom: Vec<Vec<i64>> = ar.ids().map(|x| ar.ids().map(|y| ar.hom_ind(x, y)).collect()).collect();
    let ext: Vec<Vec<i64>> = ar.ids().map(|x| ar.ids().map(|y| ar.ext_ind(x, y)).collect()).collect();
    let mut csv = String::from("x,y,hom,ext\n");
    for x in ar.ids() {
        for y in ar.ids() {
            csv.push_str(&format!("{},{},{},{}\n", labels[x.0], labels[y.0], hom[x.0][y.0], ext[x.0][y.0]));
        }
    }
    let json = json!({ "labels": labels, "hom": hom, "ext": ext });
    Ok(Output::json(json).csv(csv))
}

fn summands_json(ar: &ArQuiver, m: &ModuleExpr) -> Value {
    m.summands()
        .map(|(v, k)| json!({ "vertex": ar.vertex(v).label(), "dim": ar.dim(v), "multiplicity": k }))
        .collect()
}

fn decomp(c: &Common, d: &str) -> Result<Output> {
    let ar = load_ar(c)?;
    let d = vector(ar.quiver(), d)?;
    let m = ar.generic_decomposition(&d)?;
    let json = json!({
        "d": d,
        "summands": summands_json(&ar, &m),
        "display": m.display(&ar),
        "codimension": ar.ext_dim(&m, &m),
    });
    Ok(Output::json(json).text(m.display(&ar) + "\n"))
}

fn nonempty(c: &Common, e: &str, d: &str) -> Result<Output> {
    let ar = load_ar(c)?;
    let (e, d) = (vector(ar.quiver(), e)?, vector(ar.quiver(), d)?);
    let status = if ar.grassmannian_nonempty(&e, &d)? { "nonempty" } else { "empty" };
    let min_dim = ar.generic_min_dimension(&e, &d)?;
    let json = json!({ "e": e, "d": d, "status": status, "dimension": min_dim });
    Ok(Output::json(json).text(format!("{status}\n")))
}

fn module_rows(ar: &ArQuiver, arg: &ModuleArg) -> Result<Vec<ModuleExpr>> {
    Ok(match selected_module(ar, arg)? {
        Some(m) => vec![m],
        None => ar.ids().map(ModuleExpr::indecomposable).collect(),
    })
}

fn fpoly(c: &Common, arg: &ModuleArg) -> Result<Output> {
    let ar = load_ar(c)?;
    let ft = FTable::build(&ar)?;
    let mut rows = Vec::new();
    let mut text = String::new();
    for m in module_rows(&ar, arg)? {
        let f = ft.of(&m);
        let shown = f.display_with("y");
        text.push_str(&format!("{}: {}\n", m.display(&ar), shown));
        rows.push(json!({ "module": m.display(&ar), "dim": m.dim(&ar), "terms": f.to_term_list(), "text": shown }));
    }
    Ok(Output::json(Value::Array(rows)).text(text))
}

fn poincare(c: &Common, arg: &ModuleArg, e: Option<&str>) -> Result<Output> {
    let ar = load_ar(c)?;
    let pt = PoincareTable::build(&ar)?;
    let m = selected_module(&ar, arg)?.ok_or_else(|| anyhow!("give --d or --module"))?;
    let d = m.dim(&ar);
    let es = match e {
        Some(e) => vec![vector(ar.quiver(), e)?],
        None => d.box_below(),
    };
    let mut rows = Vec::new();
    let mut text = String::new();
    for e in es {
        let p: OneVarPolynomial = pt.poincare(&ar, &m, &e)?;
        let shown = p.display_with("q");
        text.push_str(&format!("{e}: {shown}\n"));
        rows.push(json!({ "e": e, "terms": p.to_term_list(), "text": shown, "euler": p.value_at_one().to_string() }));
    }
    let json = json!({ "module": m.display(&ar), "dim": d, "entries": rows });
    Ok(Output::json(json).text(text))
}

fn characters(c: &Common, arg: &ModuleArg) -> Result<Output> {
    let ar = load_ar(c)?;
    let ft = FTable::build(&ar)?;
    let mats = ar.matrices();
    let mut rows = Vec::new();
    let mut text = String::new();
    for m in module_rows(&ar, arg)? {
        let d = m.dim(&ar);
        let x = cc(&ar, &ft, &m);
        let shown = x.display_with("x");
        text.push_str(&format!("{}: {}\n", m.display(&ar), shown));
        rows.push(json!({
            "vertex": m.display(&ar),
            "dim": d,
            "g_vector": g_vector(mats, &d),
            "cc_terms": x.to_term_list(),
            "text": shown,
        }));
    }
    Ok(Output::json(Value::Array(rows)).text(text))
}

fn verify(c: &Common) -> Result<(Output, bool)> {
    let ar = load_ar(c)?;
    let ft = FTable::build(&ar)?;
    let report = verify_exchange(&ar, &ft);
    let passed = report.passed();
    let mut text = String::new();
    for check in &report.checks {
        let mark = if check.passed { "ok" } else { "FAILED" };
        text.push_str(&format!("{:?} {}: {}\n", check.kind, check.subject, mark));
    }
    text.push_str(if passed { "all relations hold\n" } else { "some relations fail\n" });
    let mut json = serde_json::to_value(&report)?;
    json["passed"] = json!(passed);
    Ok((Output::json(json).text(text), passed))
}

fn oracle_count(args: &OracleCountArgs) -> Result<Outcome> {
    let text = fs::read_to_string(&args.rep).with_context(|| format!("reading {}", args.rep.display()))?;
    let rep = ExplicitRep::from_json(&text)?;
    let e = vector(rep.quiver(), &args.e)?;
    let primes: Vec<u64> = args
        .primes
        .split(',')
        .map(|p| p.trim().parse::<u64>().map_err(|_| anyhow!("bad prime `{p}`")))
        .collect::<Result<_>>()?;
    let counts = oracle::counts_over(&rep, &e, &primes, args.budget)?;
    let degree = args.degree.unwrap_or(primes.len().saturating_sub(1));
    let (interpolant, euler, error) = match oracle::interpolate_count(&counts, degree) {
        Ok(p) => (Some(p.display_with("t")), Some(oracle::euler_estimate(&p).to_string()), None),
        Err(err) => (None, None, Some(err.to_string())),
    };
    let count_rows: Vec<Value> = counts.iter().map(|(p, n)| json!({ "prime": p, "count": n.to_string() })).collect();
    let mut lines: String = counts.iter().map(|(p, n)| format!("p = {p}: {n}\n")).collect();
    match (&interpolant, &euler, &error) {
        (Some(i), Some(x), _) => lines.push_str(&format!("interpolant: {i}\neuler: {x}\n")),
        (_, _, Some(err)) => lines.push_str(&format!("interpolation failed: {err}\n")),
        _ => {}
    }
    let mut csv = String::from("prime,count\n");
    for (p, n) in &counts {
        csv.push_str(&format!("{p},{n}\n"));
    }
    let json = json!({
        "e": e,
        "dims": rep.dims(),
        "counts": count_rows,
        "degree_bound": degree,
        "interpolant": interpolant,
        "euler": euler,
        "interpolation_error": error,
    });
    write_out(args.out.as_deref(), args.format, Output::json(json).text(lines).csv(csv))?;
    Ok(Outcome::Ok)
}
