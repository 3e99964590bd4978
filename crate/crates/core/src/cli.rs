//! `rectlab` command line.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use serde_json::{json, Value};

use crate::constructions::{
    cylinder_bundle, cylinder_family, default_chain, hat_family, hyperbolic_family, lemma1_bundle, rademacher_bundle, soria_chain, Construction,
    CounterexampleBundle, RademacherBundle,
};
use crate::dyadic::DyadicRational;
use crate::error::{Error, Result};
use crate::io::{self, BundleFile, ChainFile, FamilyFile, GridFunctionFile, MeasuredFile};
use crate::limits::{Limits, DEFAULT_MAX_CELLS, DEFAULT_MAX_EXPONENT};
use crate::maximal::{maximal_function, maximal_function_bruteforce};
use crate::orlicz::{divergence_sweep, guzman_instance_check, kappa_check, Enclosure, Evaluated, GuzmanMode, Interval, OrliczFn};
use crate::poset::{is_chain, project, property_c_check, weak11_sweep, width, WidthReport};
use crate::rect::{union_measure_anchored, RectangleFamily};

#[derive(Debug, Parser)]
#[command(name = "rectlab", version, about = "Exact dyadic-rectangle maximal operators, widths and Orlicz checks")]
struct Cli {
    /// Largest grid allowed, in cells.
    #[arg(long, global = true, env = "RECTLAB_MAX_CELLS", default_value_t = DEFAULT_MAX_CELLS)]
    max_cells: u64,
    /// Largest dyadic exponent allowed.
    #[arg(long = "max-exp", global = true, default_value_t = DEFAULT_MAX_EXPONENT)]
    max_exp: u32,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build a family, chain or counterexample bundle.
    Construct(ConstructArgs),
    /// Width with its Dilworth certificate, optionally of a projection.
    Width(WidthArgs),
    /// Maximal function of a grid function; writes gridfn.json.
    Maximal(MaximalArgs),
    /// Check bundle hypotheses or a weak-type instance; exit 1 on failure.
    #[command(subcommand)]
    Verify(Verify),
    /// Divergence sweep or width growth over k.
    Sweep(SweepArgs),
    /// Recompute a bundle's measured constants by brute force and diff.
    Oracle(OracleArgs),
}

#[derive(Debug, Args)]
struct ConstructArgs {
    #[command(subcommand)]
    kind: ConstructKind,
    /// Output file; standard output when absent.
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum ConstructKind {
    /// Hyperbolic family in R^n; alpha defaults to 2^(-nk).
    Hyperbolic {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        alpha: Option<DyadicRational>,
    },
    /// Hat family of a strict chain.
    Hat {
        #[arg(long)]
        chain: PathBuf,
    },
    /// Rademacher bundle; default chain m = k+1-j and p = k+1.
    Rademacher {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        k: Option<u32>,
        #[arg(long)]
        chain: Option<PathBuf>,
        #[arg(long)]
        p: Option<u32>,
    },
    /// Strict chain and certificates from 2k+1 incomparable planar rectangles.
    Soria {
        #[arg(long)]
        family: PathBuf,
    },
    /// Cylinder of a family, or the cylinder bundle for --n/--k.
    Cylinder {
        #[arg(long, conflicts_with_all = ["n", "k"])]
        family: Option<PathBuf>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        k: Option<u32>,
    },
    /// Hyperbolic bundle with alpha = 2^(-nk).
    Lemma1 {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: u32,
    },
}

#[derive(Debug, Args)]
struct WidthArgs {
    #[arg(long)]
    family: PathBuf,
    /// Coordinate plane, 1-based axes.
    #[arg(long, num_args = 2, value_names = ["A", "B"])]
    plane: Option<Vec<usize>>,
    /// Property (C) on the plane (default: the last two axes).
    #[arg(long)]
    property_c: bool,
    #[arg(long, default_value_t = 8)]
    kmax: usize,
}

#[derive(Debug, Args)]
struct MaximalArgs {
    #[arg(long)]
    family: PathBuf,
    #[arg(long)]
    function: PathBuf,
    #[arg(long)]
    brute_force: bool,
}

#[derive(Debug, Subcommand)]
enum Verify {
    /// Hypotheses (i)-(iii), the level-set inequality and the divergence sweep per k.
    PropStokn(PropStoknArgs),
    /// Single-instance weak L log^(n-2) L inequality.
    Guzman(GuzmanArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum BundleKind {
    Lemma1,
    Rademacher,
    Cylinder,
}

#[derive(Debug, Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args)]
struct PropStoknArgs {
    #[arg(long, value_enum)]
    construction: BundleKind,
    #[arg(long)]
    n: usize,
    /// Defaults to 1 for lemma1 and cylinder, max(0, 2n-6) for rademacher.
    #[arg(long)]
    kmin: Option<u32>,
    #[arg(long)]
    kmax: u32,
    #[arg(long, default_value = "p:1")]
    phi: OrliczFn,
    #[arg(long = "C", default_value = "2")]
    c: DyadicRational,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Debug, Args)]
struct GuzmanArgs {
    #[arg(long)]
    family: PathBuf,
    #[arg(long)]
    function: PathBuf,
    #[arg(long, default_value = "1")]
    lambda: DyadicRational,
    #[arg(long, default_value = "prop1")]
    mode: GuzmanMode,
    #[arg(long, default_value_t = 8)]
    kmax: usize,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SweepKind {
    Divergence,
    Width,
}

#[derive(Debug, Args)]
struct SweepArgs {
    #[arg(long, value_enum, default_value_t = SweepKind::Divergence)]
    kind: SweepKind,
    #[arg(long, value_enum, default_value_t = BundleKind::Lemma1)]
    construction: BundleKind,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    kmin: Option<u32>,
    #[arg(long)]
    kmax: u32,
    #[arg(long, default_value = "p:1")]
    phi: OrliczFn,
    #[arg(long = "C", default_value = "2")]
    c: DyadicRational,
    /// Width bound for the "bounded" verdict.
    #[arg(long, default_value_t = 1)]
    threshold: usize,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Debug, Args)]
struct OracleArgs {
    #[arg(long)]
    bundle: PathBuf,
}

/// What a subcommand produced: text for standard output, and a failure
/// report when some asserted inequality did not pass.
struct Outcome {
    stdout: String,
    failure: Option<Value>,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self { stdout, failure: None }
    }
}

/// Entry point of the binary.
pub fn main() -> i32 {
    run(std::env::args_os(), &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}

/// Runs `argv` (program name first); returns the exit code. 0 iff every
/// asserted inequality passes, 1 with a JSON failure report on standard
/// error otherwise, 2 on usage or input errors.
pub fn run<I, T>(argv: I, out: &mut impl Write, err: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    let limits = Limits::default().with_max_cells(cli.max_cells).with_max_exponent(cli.max_exp);
    match dispatch(cli.command, &limits) {
        Ok(o) => {
            let _ = write!(out, "{}", o.stdout);
            match o.failure {
                None => 0,
                Some(report) => {
                    let _ = write!(err, "{}", io::to_json_string(&report));
                    1
                }
            }
        }
        Err(e) => {
            let _ = write!(err, "{}", io::to_json_string(&json!({ "error": e.to_string() })));
            2
        }
    }
}

fn dispatch(command: Command, limits: &Limits) -> Result<Outcome> {
    match command {
        Command::Construct(a) => construct(a, limits),
        Command::Width(a) => width_cmd(a, limits),
        Command::Maximal(a) => maximal_cmd(a, limits),
        Command::Verify(Verify::PropStokn(a)) => prop_stokn(a, limits),
        Command::Verify(Verify::Guzman(a)) => guzman(a, limits),
        Command::Sweep(a) => sweep(a, limits),
        Command::Oracle(a) => oracle(a, limits),
    }
}

fn missing(flag: &str) -> Error {
    Error::InvalidArgument(format!("missing --{flag}"))
}

fn family_json(f: &RectangleFamily) -> Value {
    serde_json::to_value(FamilyFile::from_family(f)).expect("plain data")
}

fn bundle_json(b: &CounterexampleBundle) -> Result<Value> {
    Ok(serde_json::to_value(BundleFile::new(b, &b.measure()?))?)
}

fn rademacher_json(rb: &RademacherBundle) -> Result<Value> {
    let mut file = BundleFile::from_rademacher(rb, &rb.bundle.measure()?);
    let claim_e: Vec<Value> = rb
        .claim_e_check()
        .iter()
        .map(|e| json!({ "prefix": e.prefix, "union": e.union_measure, "half_sum": e.half_sum, "holds": e.holds() }))
        .collect();
    file.params.insert("claim_e".into(), claim_e.into());
    file.params.insert("count_bound_holds".into(), rb.count_bound_holds().into());
    Ok(serde_json::to_value(file)?)
}

fn default_rademacher(n: usize, k: u32, limits: &Limits) -> Result<RademacherBundle> {
    if n < 2 {
        return Err(Error::InvalidArgument("Rademacher bundles need n ≥ 2".into()));
    }
    rademacher_bundle(&default_chain(n - 1, k)?, k + 1, limits)
}

fn construct(a: ConstructArgs, limits: &Limits) -> Result<Outcome> {
    let value = match a.kind {
        ConstructKind::Hyperbolic { n, k, alpha } => {
            let alpha = alpha.unwrap_or_else(|| DyadicRational::pow2_neg(n as u32 * k));
            let f = hyperbolic_family(n, k, &alpha)?;
            f.check_limits(limits)?;
            family_json(&f)
        }
        ConstructKind::Hat { chain } => family_json(&hat_family(&io::read_chain(&chain, limits)?)?),
        ConstructKind::Rademacher { n, k, chain, p } => {
            let rb = match chain {
                Some(path) => {
                    let chain = io::read_chain(&path, limits)?;
                    let k = chain.len() as u32 - 1;
                    rademacher_bundle(&chain, p.unwrap_or(k + 1), limits)?
                }
                None => {
                    let (n, k) = (n.ok_or_else(|| missing("n"))?, k.ok_or_else(|| missing("k"))?);
                    let chain = default_chain(n.checked_sub(1).filter(|&d| d > 0).ok_or(Error::EmptyDimension)?, k)?;
                    rademacher_bundle(&chain, p.unwrap_or(k + 1), limits)?
                }
            };
            rademacher_json(&rb)?
        }
        ConstructKind::Soria { family } => {
            let r = soria_chain(&io::read_family(&family, limits)?)?;
            let all = r.certificates.iter().all(|c| c.holds());
            json!({
                "dim": 2,
                "chain": ChainFile::from_chain(&r.chain).chain,
                "certificates": r.certificates,
                "certificates_hold": all,
            })
        }
        ConstructKind::Cylinder { family: Some(path), .. } => family_json(&cylinder_family(&io::read_family(&path, limits)?)?),
        ConstructKind::Cylinder { family: None, n, k } => {
            bundle_json(&cylinder_bundle(n.ok_or_else(|| missing("n"))?, k.ok_or_else(|| missing("k"))?, limits)?)?
        }
        ConstructKind::Lemma1 { n, k } => bundle_json(&lemma1_bundle(n, k, limits)?)?,
    };
    let text = io::to_json_string(&value);
    match a.output {
        Some(path) => {
            std::fs::write(&path, text).map_err(|e| Error::InvalidArgument(format!("{}: {e}", path.display())))?;
            Ok(Outcome::ok(String::new()))
        }
        None => Ok(Outcome::ok(text)),
    }
}

fn width_json(r: &WidthReport) -> Value {
    let ex = |v: &[crate::rect::DyadicRectangle]| v.iter().map(|r| r.exponents().to_vec()).collect::<Vec<_>>();
    json!({
        "width": r.width,
        "antichain": ex(&r.antichain),
        "chains": r.chains.iter().map(|c| ex(c)).collect::<Vec<_>>(),
        "certified": r.is_certified(),
    })
}

/// 1-based CLI plane to 0-based axes.
fn plane_axes(plane: &[usize], dim: usize) -> Result<(usize, usize)> {
    let (a, b) = (plane[0], plane[1]);
    if a == 0 || b == 0 || a > dim || b > dim || a == b {
        return Err(Error::InvalidArgument(format!("plane axes must be distinct and in 1..={dim}, got {a} {b}")));
    }
    Ok((a - 1, b - 1))
}

fn width_cmd(a: WidthArgs, limits: &Limits) -> Result<Outcome> {
    let family = io::read_family(&a.family, limits)?;
    let dim = family.dim();
    let plane = match &a.plane {
        Some(p) => Some(plane_axes(p, dim)?),
        None if a.property_c => {
            if dim < 2 {
                return Err(Error::InvalidArgument("property (C) needs dimension at least 2".into()));
            }
            Some((dim - 2, dim - 1))
        }
        None => None,
    };
    let target = match (plane, a.property_c) {
        (Some(p), false) => project(&family, p)?,
        _ => family.clone(),
    };
    let w = width(&target);
    let mut report = json!({
        "size": target.len(),
        "is_chain": is_chain(&target),
        "report": width_json(&w),
    });
    if let (Some(p), false) = (plane, a.property_c) {
        report["plane"] = json!([p.0 + 1, p.1 + 1]);
    }
    let mut failure = (!w.is_certified()).then(|| json!({ "failures": ["Dilworth certificate did not verify"] }));
    if a.property_c {
        let p = plane.expect("set above");
        let c = property_c_check(&family, p, a.kmax)?;
        report["property_c"] = json!({
            "plane": [p.0 + 1, p.1 + 1],
            "largest": c.largest,
            "k": c.k,
            "kmax": c.kmax,
            "holds": c.holds(),
            "witness": c.witness.iter().map(|r| r.exponents().to_vec()).collect::<Vec<_>>(),
        });
        if !c.holds() {
            failure = Some(json!({ "failures": [format!("property (C) needs k = {} > kmax = {}", c.k, c.kmax)] }));
        }
    }
    Ok(Outcome { stdout: io::to_json_string(&report), failure })
}

fn maximal_cmd(a: MaximalArgs, limits: &Limits) -> Result<Outcome> {
    let family = io::read_family(&a.family, limits)?;
    let f = io::read_function(&a.function, limits)?;
    let m = if a.brute_force { maximal_function_bruteforce(&f, &family)? } else { maximal_function(&f, &family)? };
    Ok(Outcome::ok(io::to_json_string(&GridFunctionFile::from_function(&m))))
}

fn bundle_for(kind: BundleKind, n: usize, k: u32, limits: &Limits) -> Result<(CounterexampleBundle, Option<RademacherBundle>)> {
    Ok(match kind {
        BundleKind::Lemma1 => (lemma1_bundle(n, k, limits)?, None),
        BundleKind::Cylinder => (cylinder_bundle(n, k, limits)?, None),
        BundleKind::Rademacher => {
            let rb = default_rademacher(n, k, limits)?;
            (rb.bundle.clone(), Some(rb))
        }
    })
}

fn default_kmin(kind: BundleKind, n: usize) -> u32 {
    match kind {
        BundleKind::Rademacher => (2 * n as u32).saturating_sub(6),
        _ => 1,
    }
}

fn convention(kind: BundleKind) -> &'static str {
    match kind {
        BundleKind::Rademacher => io::RADEMACHER_CONVENTION,
        BundleKind::Lemma1 => "alpha = 2^(-nk)",
        BundleKind::Cylinder => "lemma1 bundle in dimension n-1 times [0,1]",
    }
}

fn interval_json(i: &Interval) -> Value {
    json!({ "lo": i.lo, "hi": i.hi })
}

fn enclosure_json(e: &Enclosure) -> Value {
    json!({ "lo": e.lo(), "hi": e.hi(), "exact": e.exact.as_ref().map(ToString::to_string) })
}

fn rat(r: &BigRational) -> String {
    r.to_string()
}

fn prop_stokn(a: PropStoknArgs, limits: &Limits) -> Result<Outcome> {
    let kmin = a.kmin.unwrap_or_else(|| default_kmin(a.construction, a.n));
    if kmin > a.kmax {
        return Err(Error::InvalidArgument(format!("empty k range {kmin}..={}", a.kmax)));
    }
    let mut evaluated = Vec::new();
    let mut extras = Vec::new();
    for k in kmin..=a.kmax {
        let (bundle, rb) = bundle_for(a.construction, a.n, k, limits)?;
        evaluated.push(Evaluated::new(bundle)?);
        extras.push(rb);
    }
    let sweep = divergence_sweep(&evaluated, a.phi, &a.c)?;

    let mut failures: Vec<String> = Vec::new();
    let mut rows = Vec::new();
    let mut csv_rows = Vec::new();
    for ((ev, rb), entry) in evaluated.iter().zip(&extras).zip(&sweep.entries) {
        let b = &ev.bundle;
        let m = &ev.measured;
        let hyp = b.check(m)?;
        let kappa = kappa_check(ev)?;
        let k = b.k;
        if !hyp.contained {
            failures.push(format!("k={k}: (i) Θ ⊄ Y"));
        }
        if !hyp.ratio_ok {
            failures.push(format!("k={k}: (ii) |Y| below claimed c = {}", rat(&b.claimed_c)));
        }
        if !hyp.lower_bound_ok {
            failures.push(format!("k={k}: (iii) min_Y M χ_Θ = {} below {}·2^-{}", m.min_m, rat(&b.claimed_c_prime), b.d * k));
        }
        if !kappa.passes {
            failures.push(format!("k={k}: level-set inequality not certified"));
        }
        let mut claim_e = Value::Null;
        if let Some(rb) = rb {
            let entries = rb.claim_e_check();
            if let Some(bad) = entries.iter().find(|e| !e.holds()) {
                failures.push(format!("k={k}: nested-union inequality fails at prefix {:?}", bad.prefix));
            }
            claim_e = entries
                .iter()
                .map(|e| json!({ "prefix": e.prefix, "union": e.union_measure, "half_sum": e.half_sum, "holds": e.holds() }))
                .collect();
        }
        let row_ok = hyp.all() && kappa.passes && claim_e.as_array().is_none_or(|v| v.iter().all(|e| e["holds"] == true));
        let verdict = if row_ok { "pass" } else { "fail" };
        let rhs = kappa.rhs.as_ref();
        csv_rows.push(vec![
            k.to_string(),
            m.theta.to_string(),
            m.y.to_string(),
            m.min_m.to_string(),
            kappa.lhs.as_ref().map(ToString::to_string).unwrap_or_default(),
            rhs.map(|r| r.lo().to_string()).unwrap_or_default(),
            rhs.map(|r| r.hi().to_string()).unwrap_or_default(),
            entry.ratio.map(|r| r.lo.to_string()).unwrap_or_default(),
            entry.ratio.map(|r| r.hi.to_string()).unwrap_or_default(),
            verdict.to_string(),
        ]);
        rows.push(json!({
            "k": k,
            "theta": m.theta,
            "y": m.y,
            "min_m": m.min_m,
            "witness": b.spec.coords(m.witness),
            "constants": {
                "claimed": { "c": rat(&b.claimed_c), "c_prime": rat(&b.claimed_c_prime) },
                "measured": { "a": m.a.as_ref().map(rat), "c_prime": m.c_prime },
                "c_prime_used": kappa.c_prime,
            },
            "hypotheses": { "contained": hyp.contained, "ratio": hyp.ratio_ok, "lower_bound": hyp.lower_bound_ok, "exact": true },
            "level_set": {
                "lhs": kappa.lhs,
                "rhs": rhs.map(enclosure_json),
                "margin": kappa.margin.as_ref().map(interval_json),
                "passes": kappa.passes,
                "certified": "interval, outward rounded",
            },
            "claim_e": claim_e,
            "sweep": {
                "numerator": entry.numerator.as_ref().map(enclosure_json),
                "denominator": entry.denominator.as_ref().map(enclosure_json),
                "ratio": entry.ratio.as_ref().map(interval_json),
            },
            "verdict": verdict,
        }));
    }
    if !sweep.diverging {
        failures.push(format!("sweep ∫Φ_{}(f_k)/∫{}(C f_k) not certified strictly increasing with last/first ≥ 2", sweep.d, a.phi));
    }
    let passes = failures.is_empty();
    let stdout = match a.format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["k", "|Θ|", "|Y|", "minM", "lhs", "rhs_lo", "rhs_hi", "ratio_lo", "ratio_hi", "verdict"]).map_err(csv_err)?;
            for r in &csv_rows {
                w.write_record(r).map_err(csv_err)?;
            }
            String::from_utf8(w.into_inner().map_err(|e| Error::Parse(e.to_string()))?).expect("utf-8")
        }
        Format::Json => io::to_json_string(&json!({
            "check": "prop-stokn",
            "construction": a.construction.to_possible_value().map(|v| v.get_name().to_string()),
            "n": a.n,
            "d": sweep.d,
            "convention": convention(a.construction),
            "level_set_direction": "|{M f_k ≥ 1}| ≥ (c·c′/d^d) ∫Φ_d(f_k)",
            "phi": a.phi,
            "C": a.c,
            "rows": rows,
            "sweep": {
                "diverging": sweep.diverging,
                "criterion": "certified strict increase and last/first ≥ 2 over the finite k range",
            },
            "passes": passes,
        })),
    };
    let failure = (!passes).then(|| json!({ "check": "prop-stokn", "failures": failures }));
    Ok(Outcome { stdout, failure })
}

fn csv_err(e: csv::Error) -> Error {
    Error::Parse(e.to_string())
}

fn guzman(a: GuzmanArgs, limits: &Limits) -> Result<Outcome> {
    let family = io::read_family(&a.family, limits)?;
    let f = io::read_function(&a.function, limits)?;
    let r = guzman_instance_check(&family, &f, &a.lambda, a.mode, a.kmax)?;
    let report = json!({
        "check": "guzman",
        "mode": r.mode,
        "lambda": a.lambda,
        "hypotheses_met": r.hypotheses_met,
        "hypothesis_value": r.hypothesis_value,
        "lhs": r.lhs,
        "rhs": r.rhs.as_ref().map(enclosure_json),
        "holds": r.holds,
    });
    let failure = (!r.holds).then(|| {
        let why = if r.hypotheses_met { "inequality not certified" } else { "hypotheses not met" };
        json!({ "check": "guzman", "failures": [why] })
    });
    Ok(Outcome { stdout: io::to_json_string(&report), failure })
}

fn sweep(a: SweepArgs, limits: &Limits) -> Result<Outcome> {
    let kmin = a.kmin.unwrap_or_else(|| default_kmin(a.construction, a.n));
    if kmin > a.kmax {
        return Err(Error::InvalidArgument(format!("empty k range {kmin}..={}", a.kmax)));
    }
    match a.kind {
        SweepKind::Width => {
            let gens = (kmin..=a.kmax)
                .map(|k| Ok((k, hyperbolic_family(a.n, k, &DyadicRational::pow2_neg(a.n as u32 * k))?)))
                .collect::<Result<Vec<_>>>()?;
            let r = weak11_sweep(&gens, a.threshold);
            let stdout = match a.format {
                Format::Json => io::to_json_string(&r),
                Format::Csv => {
                    let mut s = String::from("k,width\n");
                    r.widths.iter().for_each(|(k, w)| s.push_str(&format!("{k},{w}\n")));
                    s
                }
            };
            Ok(Outcome::ok(stdout))
        }
        SweepKind::Divergence => {
            let evaluated = (kmin..=a.kmax)
                .map(|k| Evaluated::new(bundle_for(a.construction, a.n, k, limits)?.0))
                .collect::<Result<Vec<_>>>()?;
            let r = divergence_sweep(&evaluated, a.phi, &a.c)?;
            let stdout = match a.format {
                Format::Json => io::to_json_string(&json!({
                    "d": r.d,
                    "phi": r.phi,
                    "C": r.c,
                    "entries": r.entries.iter().map(|e| json!({
                        "k": e.k,
                        "numerator": e.numerator.as_ref().map(enclosure_json),
                        "denominator": e.denominator.as_ref().map(enclosure_json),
                        "ratio": e.ratio.as_ref().map(interval_json),
                    })).collect::<Vec<_>>(),
                    "diverging": r.diverging,
                })),
                Format::Csv => {
                    let mut s = String::from("k,ratio_lo,ratio_hi\n");
                    for e in &r.entries {
                        let (lo, hi) = e.ratio.map(|i| (i.lo.to_string(), i.hi.to_string())).unwrap_or_default();
                        s.push_str(&format!("{},{lo},{hi}\n", e.k));
                    }
                    s
                }
            };
            let failure = (!r.diverging).then(|| json!({ "check": "sweep", "failures": ["ratios not certified diverging"] }));
            Ok(Outcome { stdout, failure })
        }
    }
}

fn oracle(a: OracleArgs, limits: &Limits) -> Result<Outcome> {
    let file: BundleFile = io::read_json(&a.bundle)?;
    let bundle = file.to_bundle(limits)?;
    let m = maximal_function_bruteforce(&bundle.chi_theta(), &bundle.family)?;
    let recomputed = MeasuredFile::from_measured(&bundle.measure_with(&m)?);
    let stored = &file.measured;
    let mut diffs = Vec::new();
    let mut diff = |field: &str, s: String, r: String| {
        if s != r {
            diffs.push(json!({ "field": field, "stored": s, "recomputed": r }));
        }
    };
    diff("theta", stored.theta.to_string(), recomputed.theta.to_string());
    diff("y", stored.y.to_string(), recomputed.y.to_string());
    diff("min_m", stored.min_m.to_string(), recomputed.min_m.to_string());
    diff("witness", stored.witness.to_string(), recomputed.witness.to_string());
    diff("a", format!("{:?}", stored.a), format!("{:?}", recomputed.a));
    diff("c_prime", stored.c_prime.to_string(), recomputed.c_prime.to_string());
    if !bundle.theta.is_subset(&bundle.y)? {
        diff("theta_subset_y", "true".into(), "false".into());
    }
    if matches!(bundle.construction, Construction::Lemma1 | Construction::Cylinder) {
        diff("y_is_union", bundle.y.measure().to_string(), union_measure_anchored(&bundle.family)?.to_string());
    }
    let report = json!({
        "check": "oracle",
        "construction": bundle.construction,
        "method": "exhaustive (rectangle, anchor) enumeration",
        "stored": stored,
        "recomputed": recomputed,
        "diffs": diffs,
    });
    let failure = (!diffs.is_empty()).then(|| json!({ "check": "oracle", "failures": diffs }));
    Ok(Outcome { stdout: io::to_json_string(&report), failure })
}
