use std::fs;
use std::io::{self, Read};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use staudt::arith::{RingDescriptor, ScalarIo};
use staudt::deform::h0_h1_dims;
use staudt::gadgets::{
    gadget_add, gadget_const, gadget_free_input, gadget_identity, gadget_mul, gadget_sub,
    gadget_triangle, propagate, read_outputs, verify_functional, FunctionalArrangement, Sign,
};
use staudt::geometrizer::{
    compile_system, geo, is_weighted_homogeneous, parse_polys, parse_system, tau, violations_at,
    PolySystem,
};
use staudt::groups::{
    artin_presentation, build_lambda, coxeter_presentation, extended_artin_presentation,
    malcev_presentation, shephard_presentation, PresentationKind,
};
use staudt::io::{
    self as sio, CohomologyReport, FunctionalDoc, GraphDoc, PresentationDoc, RealizationDoc,
    RelationsReport, RepresentationDoc,
};
use staudt::represent::{alg, group_closure, is_stable, Representation};
use staudt::{Error, RatFunc, Rational, Truncated};

#[derive(Parser)]
#[command(
    name = "staudt",
    version,
    about = "Projective arrangements, gadgets and their group representations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Coefficient ring: q, func(a,b,...) or trunc(m).
    #[arg(long, global = true, default_value = "q")]
    ring: String,

    /// Comma-separated input values, parsed in the chosen ring.
    #[arg(long, global = true, allow_hyphen_values = true)]
    at: Option<String>,

    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Seed for sampling commands.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
    Text,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GroupKind {
    Lambda,
    Coxeter,
    Artin,
    Shephard,
    ExtendedArtin,
    Malcev,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PresChoice {
    Shephard,
    Artin,
}

#[derive(Subcommand)]
enum Command {
    /// Compile a polynomial system ("x1*x1 - x1 = 0; ...") into an arrangement.
    Compile {
        /// System text, `@path` to read a file, or `-` for stdin.
        system: String,
    },
    /// Propagate a functional arrangement at `--at` over `--ring`.
    Realize { file: PathBuf },
    /// Symbolically check a gadget (mul, add, sub, const+, const-, identity,
    /// triangle, free) or an arrangement file.
    VerifyGadget { gadget: String },
    /// Emit the labelled graph or a group presentation of an arrangement.
    Groups {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "shephard")]
        kind: GroupKind,
    },
    /// Representation attached to the rational realization at `--at`.
    Alg { file: PathBuf },
    /// Check every relation of a representation file.
    VerifyRep { file: PathBuf },
    /// Order of the image group of a representation.
    Closure {
        file: PathBuf,
        #[arg(long, default_value_t = 10_000)]
        cap: usize,
    },
    /// First-order deformation dimensions of a representation.
    Rigidity {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "shephard")]
        presentation: PresChoice,
    },
    /// Whether no three of the four distinguished triangle points are collinear.
    Stability { file: PathBuf },
    /// Sampled geo/tau bijection test for a compiled system over `--ring`.
    Tangent {
        file: PathBuf,
        #[arg(long, default_value_t = 20)]
        samples: usize,
    },
    /// Weighted homogeneity of `;`-separated polynomials.
    Homogeneity {
        polys: String,
        #[arg(long)]
        weights: String,
        /// Variable names in weight order; defaults to order of appearance.
        #[arg(long)]
        vars: Option<String>,
    },
}

enum Failure {
    Usage(String),
    Check(serde_json::Value),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Syntax { .. }
            | Error::Schema(_)
            | Error::InvalidRing(_)
            | Error::DescriptorMismatch(_)
            | Error::UnsupportedRing(_)
            | Error::UnsupportedLabel(_)
            | Error::UnknownGenerator(_)
            | Error::InputCount { .. } => Failure::Usage(e.to_string()),
            other => Failure::Check(json!({
                "schema": "staudt.failure/1",
                "error": other.to_string(),
            })),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<String, Failure>;

struct Ctx {
    ring: RingDescriptor,
    at: Option<String>,
    format: Option<Format>,
    seed: u64,
}

impl Ctx {
    fn format(&self, default: Format) -> Format {
        self.format.unwrap_or(default)
    }

    fn values<S: ScalarIo>(&self) -> Result<Vec<S>, Failure> {
        match &self.at {
            None => Ok(Vec::new()),
            Some(s) if s.trim().is_empty() => Ok(Vec::new()),
            Some(s) => Ok(s
                .split(',')
                .map(|v| S::parse_in(&self.ring, v))
                .collect::<Result<Vec<_>, _>>()?),
        }
    }

    fn require_rationals(&self) -> Result<(), Failure> {
        if self.ring == RingDescriptor::Rationals {
            Ok(())
        } else {
            Err(Failure::Usage(format!(
                "this command works over q, not {}",
                self.ring
            )))
        }
    }
}

fn read_input(path: &Path) -> io::Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        fs::read_to_string(path)
    }
}

struct Loaded {
    fa: FunctionalArrangement,
    system: Option<PolySystem>,
}

fn load_functional(path: &Path) -> Result<Loaded, Failure> {
    let doc: FunctionalDoc = sio::from_str(&read_input(path)?, sio::FUNCTIONAL)?;
    let system = doc.source.as_deref().map(parse_system).transpose()?;
    Ok(Loaded {
        fa: doc.to_functional()?,
        system,
    })
}

fn var_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("x{i}")).collect()
}

fn compile(ctx: &Ctx, system: &str) -> Outcome {
    let text = if system == "-" {
        read_input(Path::new("-"))?
    } else if let Some(p) = system.strip_prefix('@') {
        fs::read_to_string(p)?
    } else {
        system.to_string()
    };
    let sys = parse_system(&text)?;
    let fa = compile_system(&sys)?;
    let arr = fa.arrangement();
    eprintln!(
        "points {} lines {} incidences {} gadgets {} inputs {}",
        arr.points().len(),
        arr.lines().len(),
        arr.incidences().len(),
        fa.gadgets,
        fa.inputs().len()
    );
    match ctx.format(Format::Json) {
        Format::Text => Ok(fa.schedule.iter().map(|s| format!("{s}\n")).collect()),
        Format::Json => {
            let mut doc = FunctionalDoc::new(&fa);
            doc.source = Some(text.trim().to_string());
            doc.identified_outputs = sys.slps.len();
            Ok(sio::to_string(&doc))
        }
        Format::Dot => Err(Failure::Usage("compile has no dot output".into())),
    }
}

fn realize_in<S: ScalarIo>(ctx: &Ctx, loaded: &Loaded) -> Outcome {
    let x: Vec<S> = ctx.values()?;
    let r = match &loaded.system {
        Some(sys) => geo(sys, &loaded.fa, &x)?,
        None => propagate(&loaded.fa, &x)?,
    };
    Ok(sio::to_string(&RealizationDoc::new(&ctx.ring, &r)))
}

fn realize(ctx: &Ctx, file: &Path) -> Outcome {
    let loaded = load_functional(file)?;
    match ctx.ring {
        RingDescriptor::Rationals => realize_in::<Rational>(ctx, &loaded),
        RingDescriptor::FunctionField { .. } => realize_in::<RatFunc>(ctx, &loaded),
        RingDescriptor::Truncated { .. } => realize_in::<Truncated>(ctx, &loaded),
    }
}

fn named_gadget(name: &str) -> Option<FunctionalArrangement> {
    Some(match name {
        "mul" => gadget_mul(),
        "add" => gadget_add(),
        "sub" => gadget_sub(),
        "const+" | "plus" => gadget_const(Sign::Plus),
        "const-" | "minus" => gadget_const(Sign::Minus),
        "identity" => gadget_identity(),
        "triangle" => gadget_triangle(),
        "free" => gadget_free_input(),
        _ => return None,
    })
}

fn verify_gadget(ctx: &Ctx, gadget: &str) -> Outcome {
    let fa = match named_gadget(gadget) {
        Some(fa) => fa,
        None => load_functional(Path::new(gadget))?.fa,
    };
    let outputs = verify_functional(&fa)?;
    let names = var_names(fa.inputs().len());
    let shown: Vec<String> = outputs.iter().map(|f| f.display_with(&names)).collect();
    Ok(match ctx.format(Format::Json) {
        Format::Text => shown
            .iter()
            .enumerate()
            .map(|(i, s)| format!("output {} = {s}\n", i + 1))
            .collect(),
        _ => sio::to_string(&json!({
            "schema": "staudt.gadget-check/1",
            "ok": true,
            "inputs": fa.inputs().len(),
            "incidences": fa.arrangement().incidences().len(),
            "outputs": shown,
        })),
    })
}

fn groups(ctx: &Ctx, file: &Path, kind: GroupKind) -> Outcome {
    let text = read_input(file)?;
    let lambda = if sio::schema_of(&text)? == sio::GRAPH {
        sio::from_str::<GraphDoc>(&text, sio::GRAPH)?.to_graph()?
    } else {
        let doc: FunctionalDoc = sio::from_str(&text, sio::FUNCTIONAL)?;
        build_lambda(doc.to_functional()?.based())?
    };
    let format = ctx.format(Format::Json);
    let presentation = match kind {
        GroupKind::Lambda => {
            return Ok(match format {
                Format::Dot => lambda.to_dot(),
                Format::Json => sio::to_string(&GraphDoc::new(&lambda)),
                Format::Text => {
                    let mut s = String::new();
                    for (v, d) in lambda.vertices.iter().zip(&lambda.vertex_labels) {
                        s.push_str(&format!("vertex {v} {d}\n"));
                    }
                    for (&(i, j), l) in &lambda.edges {
                        s.push_str(&format!(
                            "edge {} {} {l}\n",
                            lambda.vertices[i], lambda.vertices[j]
                        ));
                    }
                    s
                }
            })
        }
        GroupKind::Malcev => {
            let lie = malcev_presentation(&lambda);
            return match format {
                Format::Text => Ok(lie.to_string()),
                Format::Json => {
                    let mut v = serde_json::to_value(&lie).expect("serializable");
                    v["schema"] = json!("staudt.lie/1");
                    Ok(sio::to_string(&v))
                }
                Format::Dot => Err(Failure::Usage(
                    "dot output is only for --kind lambda".into(),
                )),
            };
        }
        GroupKind::Coxeter => coxeter_presentation(&lambda),
        GroupKind::Artin => artin_presentation(&lambda),
        GroupKind::Shephard => shephard_presentation(&lambda),
        GroupKind::ExtendedArtin => extended_artin_presentation(&lambda)?,
    };
    match format {
        Format::Text => Ok(presentation.to_string()),
        Format::Json => Ok(sio::to_string(&PresentationDoc::new(&presentation))),
        Format::Dot => Err(Failure::Usage(
            "dot output is only for --kind lambda".into(),
        )),
    }
}

fn alg_of(ctx: &Ctx, loaded: &Loaded) -> Result<Representation, Failure> {
    ctx.require_rationals()?;
    let x: Vec<Rational> = ctx.values()?;
    let psi = match &loaded.system {
        Some(sys) => geo(sys, &loaded.fa, &x)?,
        None => propagate(&loaded.fa, &x)?,
    };
    Ok(alg(loaded.fa.based(), &psi)?)
}

fn alg_cmd(ctx: &Ctx, file: &Path) -> Outcome {
    let rep = alg_of(ctx, &load_functional(file)?)?;
    Ok(sio::to_string(&RepresentationDoc::new(&rep)))
}

/// A representation file, or an arrangement file evaluated at `--at`.
fn load_representation(ctx: &Ctx, file: &Path) -> Result<Representation, Failure> {
    let text = read_input(file)?;
    if sio::schema_of(&text)? == sio::REPRESENTATION {
        Ok(sio::from_str::<RepresentationDoc>(&text, sio::REPRESENTATION)?.to_representation()?)
    } else {
        alg_of(ctx, &load_functional(file)?)
    }
}

fn verify_rep(ctx: &Ctx, file: &Path) -> Outcome {
    let rep = load_representation(ctx, file)?;
    let report = RelationsReport::new(&rep.verify_relations());
    let text = sio::to_string(&report);
    if report.ok {
        Ok(text)
    } else {
        Err(Failure::Check(
            serde_json::to_value(&report).expect("serializable"),
        ))
    }
}

fn closure(ctx: &Ctx, file: &Path, cap: usize) -> Outcome {
    let rep = load_representation(ctx, file)?;
    match group_closure(&rep, cap) {
        Some(n) => Ok(match ctx.format(Format::Text) {
            Format::Text => format!("{n}\n"),
            _ => sio::to_string(&json!({"schema": "staudt.closure/1", "order": n, "cap": cap})),
        }),
        None => Err(Failure::Check(json!({
            "schema": "staudt.closure/1",
            "order": null,
            "cap": cap,
        }))),
    }
}

fn rigidity(ctx: &Ctx, file: &Path, choice: PresChoice) -> Outcome {
    let rep = load_representation(ctx, file)?;
    let mut pres = rep.presentation.clone();
    if choice == PresChoice::Artin {
        pres.kind = PresentationKind::Artin;
        pres.torsion.clear();
    }
    let dims = h0_h1_dims(&pres, &rep)?;
    let report = CohomologyReport::new(dims);
    if dims.h1 == 0 {
        Ok(sio::to_string(&report))
    } else {
        Err(Failure::Check(
            serde_json::to_value(&report).expect("serializable"),
        ))
    }
}

fn stability(ctx: &Ctx, file: &Path) -> Outcome {
    let text = read_input(file)?;
    let based = staudt::arrangement::standard_triangle();
    let stable = if sio::schema_of(&text)? == sio::REALIZATION {
        let doc: RealizationDoc = sio::from_str(&text, sio::REALIZATION)?;
        match doc.ring {
            RingDescriptor::Rationals => is_stable(&based, &doc.to_realization::<Rational>()?)?,
            RingDescriptor::FunctionField { .. } => {
                is_stable(&based, &doc.to_realization::<RatFunc>()?)?
            }
            RingDescriptor::Truncated { .. } => {
                return Err(Failure::Usage(
                    "stability needs a field, not a truncated ring".into(),
                ))
            }
        }
    } else {
        let loaded = load_functional(file)?;
        ctx.require_rationals()?;
        let psi = propagate(&loaded.fa, &ctx.values::<Rational>()?)?;
        is_stable(loaded.fa.based(), &psi)?
    };
    let body = match ctx.format(Format::Text) {
        Format::Text => format!("{}\n", if stable { "stable" } else { "unstable" }),
        _ => sio::to_string(&json!({"schema": "staudt.stability/1", "stable": stable})),
    };
    if stable {
        Ok(body)
    } else {
        Err(Failure::Check(
            json!({"schema": "staudt.stability/1", "stable": false}),
        ))
    }
}

/// Checks one sample: solutions must round-trip through geo and tau with
/// finite outputs, non-solutions must break an incidence.
fn tangent_check<S: ScalarIo>(
    sys: &PolySystem,
    fa: &FunctionalArrangement,
    x: &[S],
) -> Result<bool, Error> {
    let solution = sys.first_nonzero(x).is_none();
    if solution {
        let r = geo(sys, fa, x)?;
        read_outputs(fa, &r)?;
        Ok(tau(fa, &r)? == x)
    } else {
        Ok(!violations_at(fa, x)?.is_empty())
    }
}

fn tangent_in<S: ScalarIo>(
    ctx: &Ctx,
    loaded: &Loaded,
    samples: usize,
    mut sample: impl FnMut(&mut ChaCha8Rng) -> S,
) -> Outcome {
    let sys = loaded.system.as_ref().ok_or_else(|| {
        Failure::Usage("tangent needs a compiled system (missing `source`)".into())
    })?;
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed);
    let mut points: Vec<Vec<S>> = Vec::new();
    if ctx.at.is_some() {
        points.push(ctx.values()?);
    }
    for _ in 0..samples {
        points.push((0..sys.nvars).map(|_| sample(&mut rng)).collect());
    }
    let mut solutions = 0;
    let mut failures = Vec::new();
    for x in &points {
        if sys.first_nonzero(x).is_none() {
            solutions += 1;
        }
        match tangent_check(sys, &loaded.fa, x) {
            Ok(true) => {}
            Ok(false) => failures.push(render_point(&ctx.ring, x)),
            Err(e) => failures.push(format!("{} ({e})", render_point(&ctx.ring, x))),
        }
    }
    let report = json!({
        "schema": "staudt.tangent/1",
        "ring": ctx.ring.to_string(),
        "samples": points.len(),
        "solutions": solutions,
        "non_solutions": points.len() - solutions,
        "ok": failures.is_empty(),
        "failures": failures,
    });
    if failures.is_empty() {
        Ok(sio::to_string(&report))
    } else {
        Err(Failure::Check(report))
    }
}

fn render_point<S: ScalarIo>(ring: &RingDescriptor, x: &[S]) -> String {
    x.iter()
        .map(|v| v.render_in(ring))
        .collect::<Vec<_>>()
        .join(", ")
}

fn tangent(ctx: &Ctx, file: &Path, samples: usize) -> Outcome {
    let loaded = load_functional(file)?;
    let q = |n: i64| Rational::from_integer(n.into());
    match ctx.ring {
        RingDescriptor::Truncated { order } => tangent_in(ctx, &loaded, samples, |rng| {
            // constant term zero half of the time, to hit the special fibre
            let c0 = if rng.gen_bool(0.5) {
                0
            } else {
                rng.gen_range(-3..=3)
            };
            let mut coeffs = vec![q(c0)];
            coeffs.extend((0..order).map(|_| q(rng.gen_range(-5..=5))));
            Truncated::new(order, coeffs)
        }),
        RingDescriptor::Rationals => tangent_in(ctx, &loaded, samples, |rng| {
            Rational::new(rng.gen_range(-6..=6).into(), rng.gen_range(1..=3).into())
        }),
        RingDescriptor::FunctionField { .. } => {
            Err(Failure::Usage("tangent samples over q or trunc(m)".into()))
        }
    }
}

fn identifiers(text: &str) -> Vec<String> {
    let mut out: Vec<String> = Vec::new();
    let mut cur = String::new();
    for c in text.chars().chain(std::iter::once(' ')) {
        if c.is_ascii_alphanumeric() || c == '_' {
            cur.push(c);
        } else {
            if cur.starts_with(|c: char| c.is_ascii_alphabetic()) && !out.contains(&cur) {
                out.push(cur.clone());
            }
            cur.clear();
        }
    }
    out
}

fn homogeneity(ctx: &Ctx, polys: &str, weights: &str, vars: Option<&str>) -> Outcome {
    let weights: Vec<u64> = weights
        .split(',')
        .map(|w| {
            w.trim()
                .parse()
                .map_err(|_| Failure::Usage(format!("bad weight `{w}`")))
        })
        .collect::<Result<_, _>>()?;
    let vars: Vec<String> = match vars {
        Some(v) => v.split(',').map(|s| s.trim().to_string()).collect(),
        None => identifiers(polys),
    };
    if vars.len() > weights.len() {
        return Err(Failure::Usage(format!(
            "{} variables but {} weights",
            vars.len(),
            weights.len()
        )));
    }
    let ps = parse_polys(polys, &vars)?;
    let result = is_weighted_homogeneous(&ps, &weights);
    let report = json!({
        "schema": "staudt.homogeneity/1",
        "weighted_homogeneous": result.is_some(),
        "degrees": result,
    });
    match result {
        Some(u) => Ok(match ctx.format(Format::Text) {
            Format::Text => format!(
                "u = {}\n",
                u.iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
                    .join(", ")
            ),
            _ => sio::to_string(&report),
        }),
        None => Err(Failure::Check(report)),
    }
}

fn run(cli: &Cli) -> Outcome {
    let ctx = Ctx {
        ring: RingDescriptor::parse(&cli.ring)?,
        at: cli.at.clone(),
        format: cli.format,
        seed: cli.seed,
    };
    match &cli.command {
        Command::Compile { system } => compile(&ctx, system),
        Command::Realize { file } => realize(&ctx, file),
        Command::VerifyGadget { gadget } => verify_gadget(&ctx, gadget),
        Command::Groups { file, kind } => groups(&ctx, file, *kind),
        Command::Alg { file } => alg_cmd(&ctx, file),
        Command::VerifyRep { file } => verify_rep(&ctx, file),
        Command::Closure { file, cap } => closure(&ctx, file, *cap),
        Command::Rigidity { file, presentation } => rigidity(&ctx, file, *presentation),
        Command::Stability { file } => stability(&ctx, file),
        Command::Tangent { file, samples } => tangent(&ctx, file, *samples),
        Command::Homogeneity {
            polys,
            weights,
            vars,
        } => homogeneity(&ctx, polys, weights, vars.as_deref()),
    }
}

fn emit(out: Option<&Path>, text: &str) -> io::Result<()> {
    match out {
        Some(p) => fs::write(p, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = cli.out.as_deref();
    match run(&cli) {
        Ok(text) => match emit(out, &text) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(2)
            }
        },
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Check(report)) => {
            if let Some(e) = report.get("error").and_then(|e| e.as_str()) {
                eprintln!("check failed: {e}");
            }
            match emit(out, &sio::to_string(&report)) {
                Ok(()) => ExitCode::from(1),
                Err(_) => ExitCode::from(2),
            }
        }
    }
}
