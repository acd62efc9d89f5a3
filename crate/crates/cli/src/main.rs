//! `phasekit` command-line front end.
//!
//! Exit status: 0 on success, 1 when a computation fails (or a verification
//! report does not pass), 2 on usage errors, unreadable or malformed spec
//! files and unsupported parameters.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde_json::{json, Map, Value};

use phasekit::algebra::{AlgebraRegistry, Chart, RegistryEntry};
use phasekit::bch::{bch, deformed_ops};
use phasekit::clifford::{self, CliffordSpec};
use phasekit::exact::{format_cq, CRational};
use phasekit::fermion::{self, FermiSymbol};
use phasekit::group::{self, FiniteGroup, GroupAlgebraElement};
use phasekit::linalg::{self, CMatrix};
use phasekit::moyal::{moyal_bracket, poisson_bracket, star_product, PhasePolynomial};
use phasekit::quadrature::{self, Surface};
use phasekit::verify::{self, VerifyOptions};
use phasekit::weyl::{self, WeylContext};
use phasekit::Error;

const ENV_PATH: &str = "PHASEKIT_ALGEBRA_PATH";

#[derive(Parser, Debug)]
#[command(name = "phasekit", version, about = "Generalized Wigner-Weyl-Moyal computations")]
struct Cli {
    /// Output format; csv is limited to flat tables (`symbol`, `rule --dump`).
    #[arg(long, value_enum, global = true, default_value_t = Format::Json)]
    out: Format,
    /// Seed for randomized rules and verification suites.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Overrides every non-exact verification tolerance.
    #[arg(long, global = true)]
    tolerance: Option<f64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Pretty,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List registered algebras, or describe one.
    Algebras {
        #[arg(long)]
        algebra: Option<String>,
    },
    /// Weyl symbol of an operator sampled on a quadrature rule.
    Symbol {
        #[arg(long)]
        algebra: String,
        /// Representation selector such as `l=1/2`, `l=1`, `fundamental`.
        #[arg(long)]
        rep: Option<String>,
        /// `identity`, a basis label (`sigma1`), or a matrix unit `e<i><j>`.
        #[arg(long, default_value = "identity")]
        operator: String,
        /// Rule name such as `lebedev:26`, `gauss:8`, `clifford`.
        #[arg(long)]
        rule: Option<String>,
    },
    /// Flat Moyal product of two polynomials in u1..un, v1..vn, hbar, i.
    Star {
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
        #[arg(long, value_enum, default_value_t = StarOp::Star)]
        op: StarOp,
        /// Number of canonical pairs; inferred when omitted.
        #[arg(long)]
        pairs: Option<usize>,
    },
    /// Exact BCH series of an algebra.
    Bch {
        #[arg(long)]
        algebra: String,
        #[arg(long, default_value_t = 3)]
        order: usize,
        /// Split into deformed addition and deformed symplectic product.
        #[arg(long)]
        project: bool,
    },
    /// Finite group tables and the S3 translation series.
    Group {
        #[arg(long, default_value = "s3")]
        name: String,
        /// S3 coordinates `u1,u2,u3`.
        #[arg(long)]
        pi: Option<String>,
        /// S3 coordinates `l1,l2`.
        #[arg(long)]
        lambda: Option<String>,
        #[arg(long, default_value_t = 20)]
        order: usize,
        /// Also emit the regular-representation exponential and the deviation.
        #[arg(long)]
        compare: bool,
    },
    /// Fermionic symbols over the basis (1, θ, η, θη).
    Fermi {
        #[arg(long, value_enum, default_value_t = FermiOp::Star)]
        op: FermiOp,
        /// Four comma-separated components, e.g. `1,0,1/2,0` or `0,2i,0,0`.
        #[arg(long)]
        f: Option<String>,
        #[arg(long)]
        g: Option<String>,
        /// For `--op symbol`: identity, a, adag or number.
        #[arg(long)]
        operator: Option<String>,
    },
    /// Clifford C(r,s) phase spaces.
    Clifford {
        /// Signature `r,s`.
        #[arg(long, default_value = "1,3")]
        sig: String,
        #[arg(long, value_enum, default_value_t = CliffordCheck::Sigma)]
        check: CliffordCheck,
    },
    /// Quadrature rules.
    Rule {
        #[arg(long, value_enum, default_value_t = SurfaceKind::Sphere)]
        surface: SurfaceKind,
        /// Sphere level; the rule is `sphere:<level>` unless `--name` is given.
        #[arg(long, default_value_t = 3)]
        level: usize,
        /// Explicit rule name for the surface.
        #[arg(long)]
        name: Option<String>,
        /// Twice the spin fixing the sphere radius.
        #[arg(long, default_value_t = 1)]
        two_l: u32,
        /// Emit nodes and weights.
        #[arg(long)]
        dump: bool,
    },
    /// Run an invariant battery.
    Verify {
        /// One of weyl, moyal, bch, loops, directsum, su3, fermion, clifford, group, all.
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value = "su2")]
        algebra: String,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum StarOp {
    Star,
    Bracket,
    Poisson,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum FermiOp {
    Star,
    Symbol,
    Inverse,
    Q,
    Table,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum CliffordCheck {
    Sigma,
    Translation,
    Delta,
    Dim,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SurfaceKind {
    Sphere,
    Hyperboloid,
    Su3,
}

/// Failure classes mapped onto exit codes.
enum Failure {
    Usage(String),
    Compute(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Io(_)
            | Error::SpecFormat { .. }
            | Error::UnknownAlgebra(_)
            | Error::UnknownRepresentation { .. }
            | Error::UnknownRule(_)
            | Error::Parse { .. }
            | Error::UnsupportedOrder { .. }
            | Error::UnsupportedLevel(_) => Failure::Usage(e.to_string()),
            _ => Failure::Compute(e.to_string()),
        }
    }
}

type Outcome = Result<Output, Failure>;

/// A JSON value plus, for flat tables, a CSV rendering.
struct Output {
    value: Value,
    table: Option<(Vec<String>, Vec<Vec<String>>)>,
    pass: bool,
}

impl Output {
    fn new(value: Value) -> Self {
        Output { value, table: None, pass: true }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.out;
    match run(cli) {
        Ok(out) => match render(&out, format) {
            Ok(text) => {
                // A closed pipe (e.g. `| head`) is not an error of ours.
                let _ = writeln!(std::io::stdout(), "{text}");
                ExitCode::from(if out.pass { 0 } else { 1 })
            }
            Err(msg) => fail(2, &msg),
        },
        Err(Failure::Usage(msg)) => fail(2, &msg),
        Err(Failure::Compute(msg)) => fail(1, &msg),
    }
}

fn fail(code: u8, msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(code)
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn search_path() -> Vec<PathBuf> {
    std::env::var_os(ENV_PATH).map(|p| std::env::split_paths(&p).collect()).unwrap_or_default()
}

fn resolve(name: &str) -> Result<(AlgebraRegistry, RegistryEntry), Failure> {
    let mut reg = AlgebraRegistry::builtin();
    let entry = reg.resolve(name, &search_path())?.clone();
    Ok((reg, entry))
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Algebras { algebra } => algebras(algebra.as_deref()),
        Command::Symbol { algebra, rep, operator, rule } => {
            symbol(&algebra, rep.as_deref(), &operator, rule.as_deref(), cli.seed.unwrap_or(quadrature::DEFAULT_SEED))
        }
        Command::Star { f, g, op, pairs } => star(&f, &g, op, pairs),
        Command::Bch { algebra, order, project } => bch_cmd(&algebra, order, project),
        Command::Group { name, pi, lambda, order, compare } => group_cmd(&name, pi.as_deref(), lambda.as_deref(), order, compare),
        Command::Fermi { op, f, g, operator } => fermi(op, f.as_deref(), g.as_deref(), operator.as_deref()),
        Command::Clifford { sig, check } => clifford_cmd(&sig, check),
        Command::Rule { surface, level, name, two_l, dump } => {
            rule(surface, level, name.as_deref(), two_l, dump, cli.seed.unwrap_or(quadrature::DEFAULT_SEED))
        }
        Command::Verify { suite, algebra } => {
            if suite != "all" && !verify::SUITES.contains(&suite.as_str()) {
                return Err(usage(format!("unknown suite {suite:?}; expected one of {} or all", verify::SUITES.join(", "))));
            }
            let opts = VerifyOptions { seed: cli.seed.unwrap_or(verify::DEFAULT_SEED), tolerance: cli.tolerance };
            let (mut reg, _) = resolve(&algebra)?;
            // Make sure path-loaded algebras are present under their own name.
            let name = reg.resolve(&algebra, &search_path())?.spec.name.clone();
            let report = verify::run(&suite, &reg, &name, &opts)?;
            let value = serde_json::to_value(&report).map_err(|e| Failure::Compute(e.to_string()))?;
            Ok(Output { value, table: None, pass: report.pass })
        }
    }
}

fn complex_json(z: Complex64) -> Value {
    json!({ "re": z.re, "im": z.im })
}

fn algebra_json(entry: &RegistryEntry) -> Value {
    let spec = &entry.spec;
    let labels = |idx: &[usize]| idx.iter().map(|&i| spec.labels[i].clone()).collect::<Vec<_>>();
    json!({
        "name": spec.name,
        "dim": spec.dim(),
        "phase_space_dim": spec.phase_space_dim(),
        "defficiency": spec.defficiency(),
        "labels": spec.labels,
        "raising": labels(&spec.raising),
        "lowering": labels(&spec.lowering),
        "abelian": labels(&spec.abelian),
        "representations": entry.reps.iter().map(|r| r.label.clone()).collect::<Vec<_>>(),
        "chart": format!("{:?}", entry.chart).to_lowercase(),
    })
}

fn algebras(name: Option<&str>) -> Outcome {
    match name {
        None => {
            let reg = AlgebraRegistry::builtin();
            let list: Vec<Value> = reg.entries().iter().map(algebra_json).collect();
            let table = (
                ["name", "dim", "phase_space_dim", "defficiency", "chart"].map(String::from).to_vec(),
                reg.entries()
                    .iter()
                    .map(|e| {
                        vec![
                            e.spec.name.clone(),
                            e.spec.dim().to_string(),
                            e.spec.phase_space_dim().to_string(),
                            e.spec.defficiency().to_string(),
                            format!("{:?}", e.chart).to_lowercase(),
                        ]
                    })
                    .collect(),
            );
            Ok(Output { value: Value::Array(list), table: Some(table), pass: true })
        }
        Some(n) => {
            let (_, entry) = resolve(n)?;
            let mut v = algebra_json(&entry);
            let report = entry.spec.validate();
            v["validation"] = serde_json::to_value(&report).map_err(|e| Failure::Compute(e.to_string()))?;
            Ok(Output::new(v))
        }
    }
}

fn operator_matrix(entry: &RegistryEntry, d: usize, rep: &phasekit::algebra::Representation, op: &str) -> Result<CMatrix, Failure> {
    if op == "identity" {
        return Ok(linalg::identity(d));
    }
    if let Some(k) = entry.spec.index_of(op) {
        return Ok(rep.matrices[k].clone());
    }
    if let Some(ij) = op.strip_prefix('e') {
        let digits: Vec<usize> = ij.chars().filter_map(|ch| ch.to_digit(10).map(|x| x as usize)).collect();
        if digits.len() == 2 && ij.len() == 2 && digits[0] < d && digits[1] < d {
            let mut m = CMatrix::zeros(d, d);
            m[(digits[0], digits[1])] = Complex64::new(1.0, 0.0);
            return Ok(m);
        }
    }
    Err(usage(format!(
        "unknown operator {op:?}; expected identity, one of {}, or e<i><j> with i, j < {d}",
        entry.spec.labels.join(", ")
    )))
}

fn symbol(algebra: &str, rep_sel: Option<&str>, op: &str, rule_name: Option<&str>, seed: u64) -> Outcome {
    let (_, entry) = resolve(algebra)?;
    if matches!(entry.chart, Chart::Flat | Chart::None) {
        return Err(usage(format!("{} has no compact phase-space chart; use `star` for flat symbols", entry.spec.name)));
    }
    let ctx = WeylContext::for_entry(&entry, rep_sel, rule_name, seed)?;
    let a = operator_matrix(&entry, ctx.rep.d(), &ctx.rep, op)?;
    let sym = ctx.symbol(&a)?;
    let n_lambda = entry.spec.abelian.len();
    let mut rows = Vec::with_capacity(sym.values.len());
    let mut nodes = Vec::with_capacity(sym.values.len());
    for (p, (w, val)) in ctx.rule.nodes.iter().zip(ctx.rule.weights.iter().zip(&sym.values)) {
        let mut row: Vec<String> = Vec::new();
        row.extend(p.u.iter().map(|x| x.to_string()));
        row.extend(p.v.iter().map(|x| x.to_string()));
        row.extend(p.lambda.iter().map(|x| x.to_string()));
        row.extend([w.to_string(), val.re.to_string(), val.im.to_string()]);
        rows.push(row);
        nodes.push(json!({ "u": p.u, "v": p.v, "lambda": p.lambda, "weight": w, "value": complex_json(*val) }));
    }
    let mut header = Vec::new();
    for i in 1..=entry.spec.raising.len() {
        header.push(format!("u{i}"));
    }
    for i in 1..=entry.spec.lowering.len() {
        header.push(format!("v{i}"));
    }
    for i in 1..=n_lambda {
        header.push(format!("lambda{i}"));
    }
    header.extend(["weight", "re", "im"].map(String::from));
    let value = json!({
        "algebra": entry.spec.name,
        "rep": ctx.rep.label,
        "rule": ctx.rule.id,
        "operator": op,
        "normalization": sym.normalization,
        "gram_condition": ctx.gram_condition(),
        "nodes": nodes,
    });
    Ok(Output { value, table: Some((header, rows)), pass: true })
}

fn star(f: &str, g: &str, op: StarOp, pairs: Option<usize>) -> Outcome {
    let fp = PhasePolynomial::parse(f, pairs)?;
    let gp = PhasePolynomial::parse(g, pairs)?;
    let n = pairs.unwrap_or(fp.n_pairs().max(gp.n_pairs()));
    let (fp, gp) = (PhasePolynomial::parse(f, Some(n))?, PhasePolynomial::parse(g, Some(n))?);
    let result = match op {
        StarOp::Star => star_product(&fp, &gp)?,
        StarOp::Bracket => moyal_bracket(&fp, &gp)?,
        StarOp::Poisson => poisson_bracket(&fp, &gp)?,
    };
    let name = match op {
        StarOp::Star => "star",
        StarOp::Bracket => "bracket",
        StarOp::Poisson => "poisson",
    };
    Ok(Output::new(json!({ "op": name, "pairs": n, "f": fp.to_string(), "g": gp.to_string(), "result": result.to_string() })))
}

fn bch_cmd(algebra: &str, order: usize, project: bool) -> Outcome {
    let (_, entry) = resolve(algebra)?;
    let series = bch(&entry.spec, order)?;
    let value = if project {
        let (add, sympl) = deformed_ops(&series, &entry.spec);
        json!({
            "algebra": entry.spec.name,
            "order": order,
            "deformed_addition": add.to_report(&entry.spec),
            "deformed_symplectic": sympl.to_report(&entry.spec),
        })
    } else {
        json!({ "algebra": entry.spec.name, "order": order, "series": series.to_report(&entry.spec) })
    };
    Ok(Output::new(value))
}

fn floats<const N: usize>(s: &str, what: &str) -> Result<[f64; N], Failure> {
    let parts: Vec<f64> = s
        .split(',')
        .map(|t| t.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|e| usage(format!("{what}: {e}")))?;
    parts.try_into().map_err(|p: Vec<f64>| usage(format!("{what}: expected {N} values, found {}", p.len())))
}

fn element_json(x: &GroupAlgebraElement) -> Value {
    Value::Array(x.coeffs.iter().map(|z| complex_json(*z)).collect())
}

fn group_cmd(name: &str, pi: Option<&str>, lambda: Option<&str>, order: usize, compare: bool) -> Outcome {
    let g = FiniteGroup::by_name(name).map_err(|e| usage(e.to_string()))?;
    let mut value = json!({
        "name": g.name,
        "order": g.order(),
        "labels": g.labels,
        "center": g.center.iter().map(|&i| g.labels[i].clone()).collect::<Vec<_>>(),
        "table": g.table,
    });
    match (pi, lambda) {
        (None, None) => {
            if compare {
                return Err(usage("--compare needs --pi and --lambda"));
            }
        }
        (Some(p), Some(l)) => {
            if g.name != "s3" {
                return Err(usage("the translation series is implemented for s3 only"));
            }
            if order > group::S3_MAX_ORDER {
                return Err(usage(format!("order {order} exceeds the supported maximum {}", group::S3_MAX_ORDER)));
            }
            let (u, lam) = (floats::<3>(p, "--pi")?, floats::<2>(l, "--lambda")?);
            let series = group::s3_pi_recursion(u, lam, order)?;
            value["exponent"] = json!(group::s3_exponent(u, lam));
            value["series"] = element_json(&series);
            if compare {
                let oracle = group::s3_pi_oracle(u, lam);
                value["oracle"] = element_json(&oracle);
                value["max_deviation"] = json!(series.max_abs_diff(&oracle));
            }
        }
        _ => return Err(usage("--pi and --lambda must be given together")),
    }
    Ok(Output::new(value))
}

fn parse_cq(tok: &str) -> Result<CRational, Failure> {
    let t = tok.trim();
    let bad = || usage(format!("cannot parse {t:?} as a Gaussian rational"));
    let (body, imaginary) = match t.strip_suffix('i') {
        Some(b) => (b.trim(), true),
        None => (t, false),
    };
    let body = match body {
        "" | "+" => "1",
        "-" => "-1",
        b => b,
    };
    let r: phasekit::exact::Rational = body.parse().map_err(|_| bad())?;
    let zero = phasekit::exact::Rational::from_integer(0);
    Ok(if imaginary { CRational::new(zero, r) } else { CRational::new(r, zero) })
}

fn fermi_symbol_arg(s: Option<&str>, flag: &str) -> Result<FermiSymbol, Failure> {
    let s = s.ok_or_else(|| usage(format!("{flag} is required")))?;
    let parts: Vec<CRational> = s.split(',').map(parse_cq).collect::<Result<_, _>>()?;
    parts.try_into().map_err(|p: Vec<CRational>| usage(format!("{flag}: expected 4 components, found {}", p.len())))
}

const FERMI_BASIS: [&str; 4] = ["1", "θ", "η", "θη"];

fn fermi_json(f: &FermiSymbol) -> Value {
    let mut m = Map::new();
    for (name, c) in FERMI_BASIS.iter().zip(f) {
        m.insert(name.to_string(), Value::String(format_cq(c)));
    }
    Value::Object(m)
}

fn fermi(op: FermiOp, f: Option<&str>, g: Option<&str>, operator: Option<&str>) -> Outcome {
    let value = match op {
        FermiOp::Star => {
            let (fs, gs) = (fermi_symbol_arg(f, "--f")?, fermi_symbol_arg(g, "--g")?);
            let computed = fermion::fermi_star(&fs, &gs)?;
            let printed = fermion::printed_star(&fs, &gs);
            json!({
                "basis": FERMI_BASIS,
                "f": fermi_json(&fs),
                "g": fermi_json(&gs),
                "star": fermi_json(&computed),
                "star_kernel": fermi_json(&fermion::fermi_star_kernel(&fs, &gs)?),
                "printed_table": fermi_json(&printed),
                "printed_table_agrees": printed == computed,
            })
        }
        FermiOp::Symbol => {
            let basis = fermion::operator_basis();
            let name = operator.unwrap_or("identity");
            let idx = match name {
                "identity" => 0,
                "a" => 1,
                "adag" => 2,
                "number" => 3,
                other => return Err(usage(format!("unknown fermionic operator {other:?}; expected identity, a, adag or number"))),
            };
            json!({ "operator": name, "basis": FERMI_BASIS, "symbol": fermi_json(&fermion::fermi_symbol(&basis[idx])?) })
        }
        FermiOp::Inverse => {
            let fs = fermi_symbol_arg(f, "--f")?;
            let m = fermion::fermi_inverse(&fs)?;
            let rows: Vec<Vec<String>> = (0..2).map(|r| (0..2).map(|col| format_cq(&m.get(r, col))).collect()).collect();
            json!({ "f": fermi_json(&fs), "operator": rows })
        }
        FermiOp::Q => {
            let q = fermion::fermi_q()?;
            let printed = fermion::fermi_q_printed()?;
            json!({
                "q": q.format_with(&fermion::Q_NAMES),
                "composition": fermion::fermi_q_from_composition()?.format_with(&fermion::Q_NAMES),
                "printed": printed.format_with(&fermion::Q_NAMES),
                "printed_agrees": printed == q,
            })
        }
        FermiOp::Table => {
            let report = fermion::star_table_report()?;
            let mismatches = report.iter().filter(|c| !c.matches).count();
            json!({ "basis": FERMI_BASIS, "mismatches": mismatches, "coefficients": report })
        }
    };
    Ok(Output::new(value))
}

fn clifford_cmd(sig: &str, check: CliffordCheck) -> Outcome {
    let rs: Vec<usize> = sig
        .split(',')
        .map(|t| t.trim().parse::<usize>())
        .collect::<Result<_, _>>()
        .map_err(|e| usage(format!("--sig: {e}")))?;
    let [r, s]: [usize; 2] = rs.try_into().map_err(|_| usage("--sig expects r,s"))?;
    let dirac = (r, s) == (1, 3);
    let value = match check {
        CliffordCheck::Dim => json!({ "r": r, "s": s, "phase_space_dim": clifford::clifford_phase_space_dim(r, s) }),
        CliffordCheck::Delta => {
            let spec = CliffordSpec::new(r, s).map_err(|e| usage(e.to_string()))?;
            to_json(&clifford::clifford_delta_check(&spec, 2)?)?
        }
        CliffordCheck::Sigma | CliffordCheck::Translation if !dirac => {
            return Err(usage("printed component formulas exist for C(1,3) only"));
        }
        CliffordCheck::Sigma => {
            let rep = clifford::sigma_report()?;
            let n = rep.iter().filter(|c| !c.matches).count();
            json!({ "r": r, "s": s, "mismatches": n, "components": to_json(&rep)? })
        }
        CliffordCheck::Translation => {
            let rep = clifford::translation_report()?;
            let n = rep.iter().filter(|c| !c.linear_matches).count();
            json!({ "r": r, "s": s, "mismatches": n, "components": to_json(&rep)? })
        }
    };
    Ok(Output::new(value))
}

fn to_json<T: serde::Serialize + ?Sized>(x: &T) -> Result<Value, Failure> {
    serde_json::to_value(x).map_err(|e| Failure::Compute(e.to_string()))
}

fn rule(kind: SurfaceKind, level: usize, name: Option<&str>, two_l: u32, dump: bool, seed: u64) -> Outcome {
    let (surface, default_name) = match kind {
        SurfaceKind::Sphere => {
            if two_l == 0 {
                return Err(usage("--two-l must be at least 1"));
            }
            (Surface::Sphere { radius: quadrature::sphere_radius(two_l)? }, format!("sphere:{level}"))
        }
        SurfaceKind::Hyperboloid => {
            let s = Surface::Hyperboloid { z: weyl::HYPERBOLOID_Z, beta_max: quadrature::HYPERBOLOID_DEFAULT.0 };
            let n = weyl::default_rule_name(&s);
            (s, n)
        }
        SurfaceKind::Su3 => (Surface::Su3Orbit, "clifford".to_string()),
    };
    let rule = quadrature::build_rule(name.unwrap_or(&default_name), &surface, seed)?;
    let mut value = json!({
        "id": rule.id,
        "surface": rule.surface,
        "nodes": rule.len(),
        "total_weight": rule.total_weight(),
        "exactness_degree": rule.exactness_degree,
    });
    let mut table = None;
    if dump {
        let full: Value = serde_json::from_str(&rule.to_json()).map_err(|e| Failure::Compute(e.to_string()))?;
        value = full;
        let width = rule.nodes.first().map(|p| (p.u.len(), p.v.len(), p.lambda.len())).unwrap_or((0, 0, 0));
        let mut header = Vec::new();
        header.extend((1..=width.0).map(|i| format!("u{i}")));
        header.extend((1..=width.1).map(|i| format!("v{i}")));
        header.extend((1..=width.2).map(|i| format!("lambda{i}")));
        header.push("weight".into());
        let rows = rule
            .nodes
            .iter()
            .zip(&rule.weights)
            .map(|(p, w)| p.u.iter().chain(&p.v).chain(&p.lambda).chain(std::iter::once(w)).map(|x| x.to_string()).collect())
            .collect();
        table = Some((header, rows));
    }
    Ok(Output { value, table, pass: true })
}

fn render(out: &Output, format: Format) -> Result<String, String> {
    match format {
        Format::Json => serde_json::to_string_pretty(&out.value).map_err(|e| e.to_string()),
        Format::Csv => {
            let (header, rows) = out.table.as_ref().ok_or("csv output is limited to flat tables: algebras, symbol, rule --dump")?;
            let mut w = csv::Writer::from_writer(Vec::new());
            for r in std::iter::once(header).chain(rows) {
                w.write_record(r).map_err(|e| e.to_string())?;
            }
            let bytes = w.into_inner().map_err(|e| e.to_string())?;
            Ok(String::from_utf8_lossy(&bytes).trim_end().to_string())
        }
        Format::Pretty => {
            let mut s = String::new();
            pretty(&out.value, 0, &mut s);
            Ok(s.trim_end().to_string())
        }
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::String(s) => Some(s.clone()),
        Value::Array(_) | Value::Object(_) => match (v.get("re"), v.get("im")) {
            (Some(re), Some(im)) if v.as_object().is_some_and(|o| o.len() == 2) => Some(format!("{re}{:+}i", im.as_f64().unwrap_or(0.0))),
            _ => None,
        },
        other => Some(other.to_string()),
    }
}

fn pretty(v: &Value, indent: usize, s: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                match scalar(x) {
                    Some(t) => s.push_str(&format!("{pad}{k}: {t}\n")),
                    None if x.as_array().is_some_and(|a| a.iter().all(|y| scalar(y).is_some())) => {
                        let items: Vec<String> = x.as_array().unwrap().iter().filter_map(scalar).collect();
                        s.push_str(&format!("{pad}{k}: [{}]\n", items.join(", ")));
                    }
                    None => {
                        s.push_str(&format!("{pad}{k}:\n"));
                        pretty(x, indent + 1, s);
                    }
                }
            }
        }
        Value::Array(a) => {
            for (i, x) in a.iter().enumerate() {
                match scalar(x) {
                    Some(t) => s.push_str(&format!("{pad}- {t}\n")),
                    None => {
                        s.push_str(&format!("{pad}[{i}]\n"));
                        pretty(x, indent + 1, s);
                    }
                }
            }
        }
        other => s.push_str(&format!("{pad}{}\n", scalar(other).unwrap_or_default())),
    }
}
