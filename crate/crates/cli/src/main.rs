use std::fs::File;
use std::io::BufWriter;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use num_rational::BigRational;
use serde_json::{json, Value};

use germ_core::blowup::{
    blowup_chart1, blowup_chart2, chart_transition, characteristic_directions, direction_data,
};
use germ_core::dynamics::{
    classify_characteristic_roots, flower_verify, iterate_orbit, limit_direction_check, seq1_check,
    FlowerParams, ProbeParams, RadiusChoice,
};
use germ_core::jets::{FlatOrder, MapGerm};
use germ_core::lie::{
    abelian_structure, average_linearizer, exp_field, find_resonances, flow_power, germ_order,
    group_commutator, is_dicritic, is_invariant_field, lie_bracket, linearize_radial, log_diffeo,
    sla_membership, Dicriticity, FlowMembership, GermOrder,
};
use germ_core::normalform::{
    dicritic_normal_form_with, lagrange_lf, lambda_invariant, lambda_invariant_numeric, residue_1d,
};
use germ_core::text::{parse_germ_with_order, parse_scalar, GermDocument};
use germ_core::{GaussianRational as GR, RatFunc};

/// Exact jet computations and orbit checks for germs of diffeomorphisms of (C^2, 0).
#[derive(Parser)]
#[command(name = "germ2", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    global: Global,
}

#[derive(Args)]
struct Global {
    /// Truncation order, overriding the one declared in the input files.
    #[arg(long, global = true)]
    order: Option<u32>,
    /// Seed for sampling commands.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Print germs as JSON instead of canonical text.
    #[arg(long, global = true)]
    json: bool,
    /// Also write per-step data as CSV to this path.
    #[arg(long, global = true, value_name = "PATH")]
    csv: Option<PathBuf>,
    /// Fall back to floating-point roots where exact ones are unavailable.
    #[arg(long, global = true)]
    numeric_roots: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Chart {
    #[value(name = "1")]
    One,
    #[value(name = "2")]
    Two,
    Transition,
}

#[derive(Clone, Copy, ValueEnum)]
enum NormalFormKind {
    Dicritic,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a germ file and print its canonical form.
    Parse { file: PathBuf },
    /// F∘G.
    Compose { f: PathBuf, g: PathBuf },
    /// F^{-1}.
    Invert { f: PathBuf },
    /// Time-one map of a flat vector field.
    Exp { field: PathBuf },
    /// Infinitesimal generator of a germ tangent to the identity.
    Log { f: PathBuf },
    /// F^[t] for a Gaussian rational t.
    FlowPower {
        f: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        t: String,
    },
    /// [X, Y].
    Bracket { x: PathBuf, y: PathBuf },
    /// F∘G∘F^{-1}∘G^{-1}.
    Commutator { f: PathBuf, g: PathBuf },
    /// Least n with F^n = id.
    Order {
        f: PathBuf,
        #[arg(long, default_value_t = 64)]
        max: u32,
    },
    /// Linearizing conjugation of the finite group generated by the inputs.
    AverageLinearize {
        #[arg(required = true)]
        generators: Vec<PathBuf>,
        #[arg(long, default_value_t = 256)]
        max_group: usize,
    },
    /// Whether F_* X = X.
    InvariantField { f: PathBuf, x: PathBuf },
    /// Conjugation taking a field with radial linear part to the radial field.
    LinearizeRadial { field: PathBuf },
    /// Dicriticity of F and its leading factor.
    Dicritic { f: PathBuf },
    /// Time t with G = F^[t] for a germ G commuting with a dicritic F.
    AbelianT { f: PathBuf, g: PathBuf },
    /// Resonances λ1^m1 λ2^m2 = λj up to a total degree.
    Resonances {
        #[arg(allow_hyphen_values = true)]
        lambda1: String,
        #[arg(allow_hyphen_values = true)]
        lambda2: String,
        #[arg(long, default_value_t = 10)]
        degree: u32,
    },
    /// Membership of (B, λ) in SL_λ(n, Z).
    Sla {
        /// Rows separated by `;`, entries by `,`.
        #[arg(long, allow_hyphen_values = true)]
        matrix: String,
        /// Comma-separated rationals.
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
    },
    /// Blow-up of F in a chart.
    Blowup {
        f: PathBuf,
        #[arg(long, value_enum, default_value = "1")]
        chart: Chart,
    },
    /// Direction data and characteristic directions.
    Directions { f: PathBuf },
    /// Normal form of a dicritic germ.
    NormalForm {
        #[arg(value_enum)]
        kind: NormalFormKind,
        f: PathBuf,
        /// Free component of the resonant conjugator.
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        h1k: String,
    },
    /// Local invariant at simple roots of r.
    Lambda {
        f: PathBuf,
        /// Root of r in Q(i); all simple roots when omitted.
        #[arg(long, allow_hyphen_values = true)]
        v0: Option<String>,
        /// Truncation in v - v0.
        #[arg(long)]
        vorder: Option<usize>,
    },
    /// Interpolating polynomial of the local invariants.
    Lagrange {
        f: PathBuf,
        #[arg(long)]
        vorder: Option<usize>,
    },
    /// Order and iterative residue of a 1-D germ.
    Residue { h: PathBuf },
    /// Iterate F from a start point.
    Orbit {
        f: PathBuf,
        /// `x,y`, each a rational or decimal complex literal.
        #[arg(long, allow_hyphen_values = true)]
        start: String,
        #[arg(long, default_value_t = 10_000)]
        n: usize,
        #[arg(long, default_value_t = 1.0)]
        escape: f64,
    },
    /// Compare 1/(n x_n^k) with -k p(v).
    Seq1 {
        f: PathBuf,
        /// `x,y` as for `orbit`.
        #[arg(long, allow_hyphen_values = true)]
        start: String,
        #[arg(long, default_value_t = 10_000)]
        n: usize,
    },
    /// Sample orbits in the petals of a dicritic germ.
    Flower {
        f: PathBuf,
        #[arg(long, default_value_t = 500)]
        samples: usize,
        #[arg(long, default_value_t = 10_000)]
        n: usize,
        /// `auto` or a fixed sector radius.
        #[arg(long, default_value = "auto")]
        radius: String,
    },
    /// Orientation of the simple roots of r by orbit probes.
    ClassifyRoots {
        f: PathBuf,
        #[arg(long, default_value_t = 1e-9)]
        tolerance: f64,
    },
}

enum Failure {
    Usage(String),
    Math(germ_core::Error),
}

impl From<germ_core::Error> for Failure {
    fn from(e: germ_core::Error) -> Self {
        Failure::Math(e)
    }
}

type Out = Result<String, Failure>;

fn usage<T>(msg: impl Into<String>) -> Result<T, Failure> {
    Err(Failure::Usage(msg.into()))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(s) => {
            print!("{s}");
            if !s.ends_with('\n') {
                println!();
            }
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Math(e)) => {
            eprintln!("error[{}]: {e}", e.code());
            ExitCode::from(2)
        }
    }
}

struct Ctx<'a> {
    g: &'a Global,
}

impl Ctx<'_> {
    fn doc(&self, path: &Path) -> Result<GermDocument, Failure> {
        let text = std::fs::read_to_string(path)
            .or_else(|e| usage(format!("{}: {e}", path.display())))?;
        parse_germ_with_order(&text, self.g.order).or_else(|e| usage(format!("{}: {e}", path.display())))
    }

    fn map(&self, path: &Path) -> Result<(String, MapGerm), Failure> {
        let d = self.doc(path)?;
        let f = d.as_map().or_else(|e| usage(format!("{}: {e}", path.display())))?;
        Ok((d.name, f))
    }

    fn field(&self, path: &Path) -> Result<(String, germ_core::jets::VFieldGerm), Failure> {
        let d = self.doc(path)?;
        let x = d.as_field().or_else(|e| usage(format!("{}: {e}", path.display())))?;
        Ok((d.name, x))
    }

    fn germ(&self, d: GermDocument) -> String {
        if self.g.json {
            let vars: Vec<&str> = d.variables.iter().map(|s| s.as_str()).collect();
            let y = vars.get(1).copied().unwrap_or("y");
            pretty(&json!({
                "kind": if d.as_field().is_ok() { "field" } else { "map" },
                "name": d.name,
                "variables": vars,
                "order": d.truncation,
                "components": d.components.iter().map(|c| c.render(vars[0], y)).collect::<Vec<_>>(),
            }))
        } else {
            d.render()
        }
    }

    fn no_csv(&self) -> Result<(), Failure> {
        match self.g.csv {
            Some(_) => usage("--csv is only supported by `orbit` and `seq1`"),
            None => Ok(()),
        }
    }
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).unwrap() + "\n"
}

fn scalar(s: &str) -> Result<GR, Failure> {
    parse_scalar(s).or_else(|e| usage(format!("`{s}`: {e}")))
}

fn complex(s: &str) -> Result<Complex64, Failure> {
    if let Ok(c) = parse_scalar(s) {
        return Ok(c.to_complex());
    }
    s.trim()
        .parse::<f64>()
        .map(|re| Complex64::new(re, 0.0))
        .or_else(|_| usage(format!("`{s}` is not a number")))
}

fn start_point(s: &str) -> Result<(Complex64, Complex64), Failure> {
    match s.split_once(',') {
        Some((a, b)) => Ok((complex(a)?, complex(b)?)),
        None => usage("--start expects `x,y`"),
    }
}

fn c2(z: Complex64) -> Value {
    json!([z.re, z.im])
}

fn run(cli: &Cli) -> Out {
    let cx = Ctx { g: &cli.global };
    if !matches!(cli.command, Command::Orbit { .. } | Command::Seq1 { .. }) {
        cx.no_csv()?;
    }
    match &cli.command {
        Command::Parse { file } => Ok(cx.germ(cx.doc(file)?)),
        Command::Compose { f, g } => {
            let ((nf, f), (ng, g)) = (cx.map(f)?, cx.map(g)?);
            Ok(cx.germ(GermDocument::from_map(&format!("{nf}_{ng}"), &f.compose(&g)?)))
        }
        Command::Invert { f } => {
            let (n, f) = cx.map(f)?;
            Ok(cx.germ(GermDocument::from_map(&format!("{n}_inv"), &f.invert())))
        }
        Command::Exp { field } => {
            let (n, x) = cx.field(field)?;
            Ok(cx.germ(GermDocument::from_map(&format!("exp_{n}"), &exp_field(&x)?)))
        }
        Command::Log { f } => {
            let (n, f) = cx.map(f)?;
            Ok(cx.germ(GermDocument::from_field(&format!("log_{n}"), &log_diffeo(&f)?)))
        }
        Command::FlowPower { f, t } => {
            let (n, f) = cx.map(f)?;
            Ok(cx.germ(GermDocument::from_map(&format!("{n}_t"), &flow_power(&f, &scalar(t)?)?)))
        }
        Command::Bracket { x, y } => {
            let ((nx, x), (ny, y)) = (cx.field(x)?, cx.field(y)?);
            Ok(cx.germ(GermDocument::from_field(&format!("{nx}_{ny}"), &lie_bracket(&x, &y)?)))
        }
        Command::Commutator { f, g } => {
            let ((nf, f), (ng, g)) = (cx.map(f)?, cx.map(g)?);
            Ok(cx.germ(GermDocument::from_map(&format!("{nf}_{ng}_comm"), &group_commutator(&f, &g)?)))
        }
        Command::Order { f, max } => {
            let (_, f) = cx.map(f)?;
            Ok(pretty(&match germ_order(&f, *max) {
                GermOrder::Finite(n) => json!({"finite": true, "order": n}),
                GermOrder::NoneUpTo(m) => json!({"finite": false, "searched_up_to": m}),
            }))
        }
        Command::AverageLinearize { generators, max_group } => {
            let gens = generators.iter().map(|p| cx.map(p).map(|x| x.1)).collect::<Result<Vec<_>, _>>()?;
            Ok(cx.germ(GermDocument::from_map("g", &average_linearizer(&gens, *max_group)?)))
        }
        Command::InvariantField { f, x } => {
            let ((_, f), (_, x)) = (cx.map(f)?, cx.field(x)?);
            Ok(pretty(&json!({"invariant": is_invariant_field(&f, &x)?})))
        }
        Command::LinearizeRadial { field } => {
            let (_, x) = cx.field(field)?;
            Ok(cx.germ(GermDocument::from_map("g", &linearize_radial(&x)?)))
        }
        Command::Dicritic { f } => {
            let (_, f) = cx.map(f)?;
            Ok(pretty(&match is_dicritic(&f) {
                Dicriticity::NotTangent => return Err(germ_core::Error::NotTangentToIdentity.into()),
                Dicriticity::Identity => json!({"dicritic": false, "identity": true}),
                Dicriticity::Dicritic { k, f } => json!({"dicritic": true, "k": k, "f": f.to_string()}),
                Dicriticity::NonDicritic { k } => json!({"dicritic": false, "k": k}),
            }))
        }
        Command::AbelianT { f, g } => {
            let ((_, f), (_, g)) = (cx.map(f)?, cx.map(g)?);
            Ok(pretty(&match abelian_structure(&f, &g)? {
                FlowMembership::Time(t) => json!({"in_flow": true, "t": t.to_string()}),
                FlowMembership::NotInFlow => json!({"in_flow": false}),
            }))
        }
        Command::Resonances { lambda1, lambda2, degree } => {
            let rs = find_resonances(&scalar(lambda1)?, &scalar(lambda2)?, *degree)?;
            Ok(pretty(&json!({"degree": degree, "resonances": rs})))
        }
        Command::Sla { matrix, lambda } => {
            let b = matrix
                .split(';')
                .map(|row| row.split(',').map(|e| e.trim().parse::<i64>()).collect::<Result<Vec<_>, _>>())
                .collect::<Result<Vec<_>, _>>()
                .or_else(|e| usage(format!("--matrix: {e}")))?;
            let lam = lambda
                .split(',')
                .map(|s| {
                    let c = scalar(s)?;
                    if c.is_real() {
                        Ok(c.re())
                    } else {
                        usage(format!("`{s}` is not real"))
                    }
                })
                .collect::<Result<Vec<BigRational>, _>>()?;
            Ok(pretty(&json!({"member": sla_membership(&b, &lam)?})))
        }
        Command::Blowup { f, chart } => {
            let (_, f) = cx.map(f)?;
            let (s, var) = match chart {
                Chart::One => (blowup_chart1(&f)?, "v"),
                Chart::Two => (blowup_chart2(&f)?, "s"),
                Chart::Transition => (chart_transition(&blowup_chart1(&f)?)?, "s"),
            };
            Ok(pretty(&s.to_json(var)))
        }
        Command::Directions { f } => {
            let (_, f) = cx.map(f)?;
            let d = direction_data(&f).ok_or(germ_core::Error::NotTangentToIdentity)?;
            let cd = characteristic_directions(&f).ok_or(germ_core::Error::NotTangentToIdentity)?;
            Ok(pretty(&json!({"data": d.to_json(), "directions": cd.to_json()})))
        }
        Command::NormalForm { kind: NormalFormKind::Dicritic, f, h1k } => {
            let (_, f) = cx.map(f)?;
            let h = RatFunc::constant(scalar(h1k)?);
            let nf = dicritic_normal_form_with(&f, None, &h)?;
            Ok(pretty(&nf.to_json()))
        }
        Command::Lambda { f, v0, vorder } => {
            let (_, f) = cx.map(f)?;
            let s = blowup_chart1(&f)?;
            let invs = match v0 {
                Some(v) => vec![lambda_invariant(&s, &scalar(v)?, *vorder)?.to_json()],
                None => {
                    let d = direction_data(&f).ok_or(germ_core::Error::NotTangentToIdentity)?;
                    if d.is_dicritic() {
                        return Err(germ_core::Error::Dicritic.into());
                    }
                    let mut out = Vec::new();
                    for (v, m) in &d.rational_roots {
                        if *m == 1 {
                            out.push(lambda_invariant(&s, v, *vorder)?.to_json());
                        }
                    }
                    if !d.numeric_roots.is_empty() {
                        if !cx.g.numeric_roots {
                            return usage("r has roots outside Q(i); pass --numeric-roots");
                        }
                        for z in &d.numeric_roots {
                            out.push(lambda_invariant_numeric(&s, *z, *vorder)?.to_json());
                        }
                    }
                    out
                }
            };
            Ok(pretty(&json!({"invariants": invs})))
        }
        Command::Lagrange { f, vorder } => {
            let (_, f) = cx.map(f)?;
            let (l, invs) = lagrange_lf(&blowup_chart1(&f)?, *vorder)?;
            Ok(pretty(&json!({
                "L": l.render(),
                "invariants": invs.iter().map(|i| i.to_json()).collect::<Vec<_>>(),
            })))
        }
        Command::Residue { h } => {
            let d = cx.doc(h)?;
            let h = d.as_jet1().or_else(|e| usage(e.to_string()))?;
            let (k, c) = residue_1d(&h)?;
            Ok(pretty(&json!({"k": k, "residue": c.to_string()})))
        }
        Command::Orbit { f, start, n, escape } => {
            let (_, f) = cx.map(f)?;
            let orbit = iterate_orbit(&f, start_point(start)?, *n, *escape)?;
            let d = direction_data(&f);
            let mut out = orbit.to_json();
            if let Ok((v, res)) = limit_direction_check(&f, &orbit) {
                out["limit_direction"] = c2(v);
                out["r_residual"] = json!(res);
            }
            if let Some(path) = &cx.g.csv {
                let (k, p) = match &d {
                    Some(d) => (d.k, d.p.clone()),
                    None => (1, germ_core::Poly1::zero()),
                };
                let w = BufWriter::new(File::create(path).or_else(|e| usage(format!("{}: {e}", path.display())))?);
                orbit.write_csv(w, k, &p)?;
            }
            Ok(pretty(&out))
        }
        Command::Seq1 { f, start, n } => {
            let (_, f) = cx.map(f)?;
            let st = start_point(start)?;
            let r = seq1_check(&f, st, *n)?;
            if let Some(path) = &cx.g.csv {
                let d = direction_data(&f).ok_or(germ_core::Error::NotTangentToIdentity)?;
                let orbit = iterate_orbit(&f, st, *n, 1.0)?;
                let w = BufWriter::new(File::create(path).or_else(|e| usage(format!("{}: {e}", path.display())))?);
                orbit.write_csv(w, d.k, &d.p)?;
            }
            Ok(pretty(&r.to_json()))
        }
        Command::Flower { f, samples, n, radius } => {
            let (_, f) = cx.map(f)?;
            let radius = if radius == "auto" {
                RadiusChoice::Auto(1.0)
            } else {
                match radius.parse::<f64>() {
                    Ok(r) if r > 0.0 => RadiusChoice::Fixed(r),
                    _ => return usage("--radius expects `auto` or a positive number"),
                }
            };
            let params = FlowerParams { samples: *samples, n_max: *n, radius, seed: cx.g.seed, ..Default::default() };
            Ok(pretty(&flower_verify(&f, &params)?.to_json()))
        }
        Command::ClassifyRoots { f, tolerance } => {
            let (_, f) = cx.map(f)?;
            if let FlatOrder::NotTangent = f.flat_order() {
                return Err(germ_core::Error::NotTangentToIdentity.into());
            }
            let cs = classify_characteristic_roots(&f, *tolerance, &ProbeParams::default())?;
            Ok(pretty(&json!({"roots": cs.iter().map(|c| c.to_json()).collect::<Vec<_>>()})))
        }
    }
}
