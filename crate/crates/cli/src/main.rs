use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use bimon::checkers::{classify_monoid, monoid_from_group};
use bimon::cuntz::witness::{self, Certificate};
use bimon::cuntz::{ClopenSet, CuntzElement, CuntzMonoid, DEFAULT_DEPTH_CAP};
use bimon::duality::{groupoid_of, ideal_correspondence, roundtrip, theorem_one_check};
use bimon::verify::{self, Suite};
use bimon::{Basic, BooleanInverseMonoid, Error, FinBim, FiniteGroupoid, Permutation};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "bimon",
    version,
    about = "Boolean inverse monoids, their groupoids and the Cuntz monoids"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write the report to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Pretty-print reports.
    #[arg(long, global = true)]
    human: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a finite monoid.
    Analyze(MonoidArgs),
    /// Compute the groupoid of atoms and check the duality round trips.
    Dualize(MonoidArgs),
    /// Run an operation in the Cuntz monoid C_n.
    Cuntz(CuntzArgs),
    /// Run a property suite.
    Verify(VerifyArgs),
    /// Render a groupoid, or the groupoid of atoms of a monoid, as DOT.
    ExportDot(MonoidArgs),
}

#[derive(Args)]
struct MonoidArgs {
    /// `pair:n`, `group:NAME`, a `disjoint_union(..)` of those, or a groupoid JSON file.
    #[arg(long, conflicts_with = "from_group", required_unless_present = "from_group")]
    monoid: Option<String>,
    /// Build the monoid of a permutation group on this many points.
    #[arg(long, value_name = "N")]
    from_group: Option<usize>,
    /// Generators for `--from-group`, in cycle notation.
    #[arg(requires = "from_group")]
    generators: Vec<String>,
}

#[derive(Args)]
struct CuntzArgs {
    /// Alphabet size.
    #[arg(long, default_value_t = 2)]
    n: usize,
    #[arg(long)]
    op: String,
    #[arg(long, default_value_t = DEFAULT_DEPTH_CAP)]
    depth_cap: usize,
    /// Elements such as `0->10, 11->0` or clopen sets such as `{0, 11}`.
    exprs: Vec<String>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, default_value = "all")]
    suite: Suite,
    #[arg(long, default_value_t = 42)]
    seed: u64,
}

enum Failure {
    Usage(String),
    Verification(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Inconsistent(_) => Failure::Verification(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

type Outcome = Result<(Output, bool), Failure>;

enum Output {
    Json(Value),
    Text(String),
}

fn load_monoid(args: &MonoidArgs) -> Result<FinBim, Failure> {
    if let Some(n) = args.from_group {
        let gens = args
            .generators
            .iter()
            .map(|g| Permutation::parse(g, n))
            .collect::<bimon::Result<Vec<_>>>()?;
        return Ok(monoid_from_group(n, &gens)?);
    }
    Ok(FinBim::kb(load_groupoid(args.monoid.as_deref().unwrap_or_default())?))
}

fn load_groupoid(spec: &str) -> Result<FiniteGroupoid, Failure> {
    let path = Path::new(spec);
    if path.is_file() {
        let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{spec}: {e}")))?;
        Ok(FiniteGroupoid::from_json(&text)?)
    } else {
        Ok(FiniteGroupoid::from_spec(spec)?)
    }
}

fn analyze(args: &MonoidArgs) -> Outcome {
    let s = load_monoid(args)?;
    let profile = classify_monoid(&s);
    Ok((Output::Json(serde_json::to_value(profile).unwrap()), true))
}

fn dualize(args: &MonoidArgs) -> Outcome {
    let s = load_monoid(args)?;
    let atoms = groupoid_of(&s)?;
    let round = roundtrip(&s)?;
    let theorem = theorem_one_check(&s)?;
    let ideals = ideal_correspondence(&s)?;
    let ok =
        round.passes() && ideals.passes() && theorem.fundamental_iff_effective && theorem.zero_simplifying_iff_minimal;
    let report = json!({
        "groupoid": atoms.groupoid.to_json(),
        "properties": atoms.groupoid.properties(),
        "roundtrip": round,
        "dictionary": theorem,
        "ideals": {
            "orbits": ideals.orbits.len(),
            "vee_ideals": ideals.vee_ideals.len(),
            "matches_brute_force": ideals.matches_brute_force,
            "order_isomorphism": ideals.order_isomorphism,
        },
    });
    Ok((Output::Json(report), ok))
}

fn export_dot(args: &MonoidArgs) -> Outcome {
    let (name, g) = match (&args.monoid, args.from_group) {
        (Some(spec), _) => ("G", load_groupoid(spec)?),
        _ => ("atoms", groupoid_of(&load_monoid(args)?)?.groupoid),
    };
    Ok((Output::Text(g.to_dot(name)), true))
}

fn run_verify(args: &VerifyArgs) -> Outcome {
    let report = verify::run(args.suite, args.seed)?;
    let ok = report.passed;
    Ok((Output::Json(serde_json::to_value(report).unwrap()), ok))
}

fn arity(op: &str, exprs: &[String], k: usize) -> Result<(), Failure> {
    if exprs.len() == k {
        Ok(())
    } else {
        Err(Failure::Usage(format!(
            "`{op}` takes {k} argument(s), got {}",
            exprs.len()
        )))
    }
}

fn witnessed(value: Vec<Vec<String>>, certificate: &Certificate) -> Result<(Output, bool), Failure> {
    let ok = certificate.reverify()?;
    let report = json!({ "result": value, "certificate": certificate });
    Ok((Output::Json(report), ok))
}

fn cuntz(args: &CuntzArgs) -> Outcome {
    let m = CuntzMonoid::with_depth_cap(args.n, args.depth_cap)?;
    let op = args.op.as_str();
    let exprs = &args.exprs;
    let el = |i: usize| -> Result<CuntzElement, Failure> { Ok(m.parse(&exprs[i])?) };
    let set = |i: usize| -> Result<ClopenSet, Failure> { Ok(m.parse_clopen(&exprs[i])?) };
    let text = |s: String| Ok((Output::Text(s), true));
    match op {
        "compose" => {
            if exprs.is_empty() {
                return Err(Failure::Usage("`compose` needs at least one element".into()));
            }
            let parts = (0..exprs.len()).map(el).collect::<Result<Vec<_>, _>>()?;
            let refs: Vec<&CuntzElement> = parts.iter().collect();
            text(m.product(&refs)?.to_string())
        }
        "inverse" => {
            arity(op, exprs, 1)?;
            text(m.inverse(&el(0)?).to_string())
        }
        "phi" => {
            arity(op, exprs, 1)?;
            text(m.fixed_clopen(&el(0)?).to_string())
        }
        "sigma" | "support" => {
            arity(op, exprs, 1)?;
            text(m.support(&el(0)?).to_string())
        }
        "dom" => {
            arity(op, exprs, 1)?;
            text(m.d(&el(0)?).to_string())
        }
        "ran" => {
            arity(op, exprs, 1)?;
            text(m.r(&el(0)?).to_string())
        }
        "meet" | "join" => {
            arity(op, exprs, 2)?;
            let (a, b) = (el(0)?, el(1)?);
            let r = if op == "meet" { m.meet(&a, &b)? } else { m.join(&a, &b)? };
            text(r.to_string())
        }
        "relations" => {
            arity(op, exprs, 2)?;
            let r = m.relations(&el(0)?, &el(1)?)?;
            Ok((Output::Json(serde_json::to_value(r).unwrap()), true))
        }
        "classify" => {
            arity(op, exprs, 1)?;
            let c = m.classify(&el(0)?)?;
            Ok((Output::Json(serde_json::to_value(c).unwrap()), true))
        }
        "cooper" => {
            arity(op, exprs, 1)?;
            let fs = m.fixpoint_and_support(&el(0)?)?;
            let (e, moving) = fs.cooper;
            let report = json!({ "phi": e.to_string(), "moving": moving.to_string() });
            Ok((Output::Json(report), true))
        }
        "basic" => {
            arity(op, exprs, 1)?;
            let report = match m.basic_decompose(&el(0)?) {
                Basic::Decomposed(d) => json!({
                    "basic": true,
                    "idempotent": d.idempotent.to_string(),
                    "infinitesimals": d.infinitesimals.iter().map(ToString::to_string).collect::<Vec<_>>(),
                }),
                Basic::Obstructed(w) => json!({ "basic": false, "witness": w }),
            };
            Ok((Output::Json(report), true))
        }
        "refine" => {
            let parts = (0..exprs.len()).map(el).collect::<Result<Vec<_>, _>>()?;
            let refined = m.orthogonal_refinement(&parts)?;
            text(refined.iter().map(|x| format!("[{x}]")).collect::<Vec<_>>().join(" "))
        }
        "unit-from-infinitesimal" => {
            arity(op, exprs, 1)?;
            text(m.unit_from_infinitesimal(&el(0)?)?.to_string())
        }
        "transporter" | "clopen-iso" | "conrade-unit" | "pencil-transport" => {
            arity(op, exprs, 2)?;
            let (e, f) = (set(0)?, set(1)?);
            let w = match op {
                "transporter" => witness::transporter(&m, &e, &f)?,
                "clopen-iso" => witness::clopen_iso(&m, &e, &f)?,
                "conrade-unit" => witness::conrade_unit(&m, &e, &f)?,
                _ => witness::pencil_transport(&m, &e, &f)?,
            };
            witnessed(vec![vec![w.value.to_string()]], &w.certificate)
        }
        "infinitesimal-in" => {
            arity(op, exprs, 1)?;
            let w = witness::infinitesimal_in(&m, &set(0)?)?;
            witnessed(vec![vec![w.value.to_string()]], &w.certificate)
        }
        "properly-infinite" => {
            arity(op, exprs, 1)?;
            let w = witness::properly_infinite_witness(&m, &set(0)?)?;
            let (a, b) = &w.value;
            witnessed(vec![vec![a.to_string(), b.to_string()]], &w.certificate)
        }
        "orthogonal-pencil" => {
            arity(op, exprs, 2)?;
            let w = witness::orthogonal_pencil(&m, &set(0)?, &set(1)?)?;
            let members = w.value.elements.iter().map(|x| vec![x.to_string()]).collect();
            witnessed(members, &w.certificate)
        }
        "piecewise-units" => {
            arity(op, exprs, 1)?;
            let w = witness::piecewise_unit_decomposition(&m, &el(0)?)?;
            let pairs = w
                .value
                .iter()
                .map(|(p, u)| vec![p.to_string(), u.to_string()])
                .collect();
            witnessed(pairs, &w.certificate)
        }
        "moved-points" => {
            if exprs.is_empty() || exprs.len() > 2 {
                return Err(Failure::Usage(
                    "`moved-points` takes a unit and an optional depth".into(),
                ));
            }
            let depth = match exprs.get(1) {
                Some(d) => d.parse().map_err(|_| Failure::Usage(format!("bad depth `{d}`")))?,
                None => 4,
            };
            let report = witness::moved_point_check(&m, &el(0)?, depth)?;
            let ok = report.passes();
            Ok((Output::Json(serde_json::to_value(report).unwrap()), ok))
        }
        _ => Err(Failure::Usage(format!("unknown operation `{op}`"))),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Analyze(a) => analyze(a),
        Command::Dualize(a) => dualize(a),
        Command::Cuntz(a) => cuntz(a),
        Command::Verify(a) => run_verify(a),
        Command::ExportDot(a) => export_dot(a),
    };
    let (output, ok) = match outcome {
        Ok(r) => r,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
        Err(Failure::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            return ExitCode::from(1);
        }
    };
    let mut rendered = match output {
        Output::Json(v) if cli.human => serde_json::to_string_pretty(&v).unwrap(),
        Output::Json(v) => serde_json::to_string(&v).unwrap(),
        Output::Text(t) => t,
    };
    if !rendered.ends_with('\n') {
        rendered.push('\n');
    }
    match &cli.out {
        Some(path) => {
            if let Err(e) = fs::write(path, &rendered) {
                eprintln!("error: {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{rendered}"),
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
