use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use nefstab::bundle_maps::{ch3_twist_identity, frobenius_pullback, toric_split_summands, SplitCase};
use nefstab::chern::{
    beta_bar, bg_quantity, bms_check, delta_bar, nabla_bar, twist, v_vector, BmsVerdict, ChernVector, Polarization,
};
use nefstab::classexpr::parse_class;
use nefstab::divisor_checks::{hodge_chain, neg_divisor_test};
use nefstab::ptp2::{verify_report, AlphaParam};
use nefstab::rational::{format_rational, parse_coords, parse_rational};
use nefstab::ring::{RingDocument, PRESET_NAMES};
use nefstab::stability::{central_charge, charge_s, mu_slope, nu_slope, render_svg, wall_scan, ExtendedSlope, Grid};
use nefstab::verify::{verify_all, VerifyConfig};
use nefstab::{preset, DivisorClass, Error, PresetThreefold, QuadExt, Rational};

const DEFAULT_RING: &str = "PT_P2";
const LI_THRESHOLD: &str = "li-threshold";

/// Exact tilt-stability computations on threefolds with nef tangent bundle.
#[derive(Parser, Debug)]
#[command(name = "nefstab", version)]
struct Cli {
    /// Preset name or path to a ring JSON document.
    #[arg(long, global = true, value_name = "PATH|PRESET")]
    ring: Option<String>,
    /// Polarization H as divisor coordinates, e.g. `1,2`. Defaults to all ones.
    #[arg(long = "H", global = true, value_name = "COORDS", allow_hyphen_values = true)]
    h_coords: Option<String>,
    /// `p/q`, `sqrt(p/q)`, `c*sqrt(p/q)` or `li-threshold` (= sqrt(1/12)).
    #[arg(long, global = true)]
    alpha: Option<String>,
    /// B-field as divisor coordinates. Defaults to 0.
    #[arg(long = "B", global = true, value_name = "COORDS", allow_hyphen_values = true)]
    b_coords: Option<String>,
    /// Also write the JSON report here.
    #[arg(long, global = true)]
    json: Option<PathBuf>,
    /// Where `walls` writes its SVG.
    #[arg(long, global = true)]
    svg: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List the preset threefolds.
    Presets,
    /// Evaluate twisted characters, slopes and charges of a class.
    Eval {
        /// Class expression such as `O(1,0)`, `2*O - pt` or `ch(1; 0,0; 0,0; 0)`.
        #[arg(long)]
        class: String,
        /// Also evaluate `Z_{alpha,0,s}` (at B = 0).
        #[arg(long)]
        s: Option<String>,
    },
    /// `Delta-bar + 6 nabla-bar >= 0`.
    BgCheck {
        #[arg(long)]
        class: String,
    },
    /// `beta-bar` and `ch3` twisted by `B + beta-bar omega`.
    BetaBar {
        #[arg(long)]
        class: String,
    },
    /// The negativity inequality for a divisor D against H.
    NegTest {
        #[arg(long = "D", allow_hyphen_values = true)]
        d: String,
    },
    /// The Hodge index chain for a nef divisor D against H.
    HodgeChain {
        #[arg(long = "D", allow_hyphen_values = true)]
        d: String,
    },
    /// Pull a class back along multiplication by m; with `--D` also checks the ch3 twist identity.
    Frobenius {
        #[arg(long)]
        class: String,
        #[arg(long)]
        m: u64,
        #[arg(long = "D", allow_hyphen_values = true)]
        d: Option<String>,
        #[arg(long, default_value_t = 1)]
        q: u64,
    },
    /// Line bundle summands of a toric Frobenius pushforward.
    Split {
        /// `p1a`, `p2c` or `p1p1c`.
        #[arg(long)]
        case: String,
        #[arg(long)]
        m: u64,
        #[arg(long, allow_hyphen_values = true)]
        a: i64,
        /// Second fiber degree for `p1p1c`.
        #[arg(long, allow_hyphen_values = true)]
        b: Option<i64>,
    },
    /// Numerical wall between two classes on an (alpha, beta) grid.
    Walls {
        #[arg(long = "E")]
        e: String,
        #[arg(long = "F")]
        f: String,
        #[arg(long, default_value_t = 50)]
        grid: usize,
        #[arg(long, default_value = "2")]
        alpha_max: String,
        #[arg(long, default_value = "-2", allow_hyphen_values = true)]
        beta_min: String,
        #[arg(long, default_value = "2", allow_hyphen_values = true)]
        beta_max: String,
    },
    /// Checks on the flag threefold P(T_P2).
    Ptp2 {
        #[command(subcommand)]
        command: Ptp2Command,
    },
    /// Run the regression suite.
    VerifyAll {
        /// One of ring, ptp2, divisors, bundle_maps, chern, walls.
        #[arg(long)]
        suite: Option<String>,
    },
}

#[derive(Subcommand, Debug)]
enum Ptp2Command {
    /// Chern formulas, heart placement, charge cone and skyscraper for H = a h1 + b h2.
    Verify {
        #[arg(long)]
        a: i64,
        #[arg(long)]
        b: i64,
        #[arg(long, default_value = "1/18")]
        s: String,
    },
}

/// A usage, parse or input error; exits with status 2.
struct Failure(String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(e.to_string())
    }
}

type Outcome = Result<(Value, bool), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((report, ok)) => match emit(&report, cli.json.as_deref()) {
            Ok(()) if ok => ExitCode::SUCCESS,
            Ok(()) => ExitCode::from(1),
            Err(Failure(m)) => {
                eprintln!("error: {m}");
                ExitCode::from(2)
            }
        },
        Err(Failure(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
    }
}

fn emit(report: &Value, path: Option<&Path>) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(report).expect("json values serialize");
    // a closed pipe on stdout is not an error worth reporting
    let _ = writeln!(std::io::stdout().lock(), "{text}");
    if let Some(p) = path {
        std::fs::write(p, format!("{text}\n")).map_err(|e| Failure(format!("{}: {e}", p.display())))?;
    }
    Ok(())
}

fn load_ring(source: Option<&str>) -> Result<PresetThreefold, Failure> {
    let source = source.unwrap_or(DEFAULT_RING);
    if PRESET_NAMES.contains(&source) {
        return Ok(preset(source)?);
    }
    let text = std::fs::read_to_string(source)
        .map_err(|e| Failure(format!("`{source}` is neither a preset nor a readable file: {e}")))?;
    Ok(RingDocument::from_json(&text)?.into_threefold()?)
}

fn divisor(x: &PresetThreefold, text: &str, flag: &str) -> Result<DivisorClass, Failure> {
    let coords = parse_coords(text).map_err(|e| Failure(format!("{flag}: {e}")))?;
    let d = DivisorClass::new(coords);
    x.ring.check_divisor(&d)?;
    Ok(d)
}

fn parse_alpha(text: Option<&str>) -> Result<QuadExt, Failure> {
    let a = match text {
        None => QuadExt::one(),
        Some(LI_THRESHOLD) => QuadExt::parse("sqrt(1/12)")?,
        Some(t) => QuadExt::parse(t).map_err(|e| Failure(format!("--alpha: {e}")))?,
    };
    if !a.is_positive() {
        return Err(Failure(format!("--alpha must be positive, got {a}")));
    }
    Ok(a)
}

fn rational_arg(text: &str, flag: &str) -> Result<Rational, Failure> {
    parse_rational(text).map_err(|e| Failure(format!("{flag}: {e}")))
}

fn class_arg(x: &PresetThreefold, text: &str, flag: &str) -> Result<ChernVector, Failure> {
    parse_class(&x.ring, text).map_err(|e| Failure(format!("{flag}: {e}")))
}

struct Context {
    x: PresetThreefold,
    h: DivisorClass,
    alpha: QuadExt,
    b: DivisorClass,
}

impl Context {
    fn new(cli: &Cli) -> Result<Self, Failure> {
        let x = load_ring(cli.ring.as_deref())?;
        let h = match &cli.h_coords {
            Some(t) => divisor(&x, t, "--H")?,
            None => DivisorClass::from_ints(&vec![1; x.ring.rho()]),
        };
        let b = match &cli.b_coords {
            Some(t) => divisor(&x, t, "--B")?,
            None => x.ring.zero_divisor(),
        };
        Ok(Context { alpha: parse_alpha(cli.alpha.as_deref())?, x, h, b })
    }

    fn polarization(&self) -> Result<Polarization<'_>, Failure> {
        Ok(Polarization::new(&self.x, self.h.clone(), self.alpha.clone(), self.b.clone())?)
    }

    fn echo(&self, command: &str) -> Value {
        let li = QuadExt::parse("sqrt(1/12)").expect("literal");
        json!({
            "command": command,
            "ring": self.x.name,
            "H": self.h.to_strings(),
            "alpha": self.alpha.to_string(),
            "alpha_at_least_li_threshold": self.alpha.exact_cmp(&li) != std::cmp::Ordering::Less,
            "B": self.b.to_strings(),
        })
    }
}

fn merge(mut base: Value, extra: Value) -> Value {
    if let (Value::Object(b), Value::Object(e)) = (&mut base, extra) {
        b.extend(e);
    }
    base
}

fn slope_json(s: &ExtendedSlope) -> Value {
    json!(s.to_string())
}

fn or_error<T>(r: nefstab::Result<T>, f: impl FnOnce(T) -> Value) -> Value {
    match r {
        Ok(v) => f(v),
        Err(e) => json!({ "error": e.to_string() }),
    }
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Presets => presets(),
        Command::VerifyAll { suite } => verify(cli, suite.clone()),
        Command::Split { case, m, a, b } => split(case, *m, *a, *b),
        Command::Ptp2 { command: Ptp2Command::Verify { a, b, s } } => ptp2_verify(cli, *a, *b, s),
        command => {
            let ctx = Context::new(cli)?;
            match command {
                Command::Eval { class, s } => eval(&ctx, class, s.as_deref()),
                Command::BgCheck { class } => bg_check(&ctx, class),
                Command::BetaBar { class } => beta_bar_cmd(&ctx, class),
                Command::NegTest { d } => neg_test(&ctx, d),
                Command::HodgeChain { d } => hodge(&ctx, d),
                Command::Frobenius { class, m, d, q } => frobenius(&ctx, class, *m, d.as_deref(), *q),
                Command::Walls { e, f, grid, alpha_max, beta_min, beta_max } => {
                    walls(&ctx, cli.svg.as_deref(), e, f, *grid, (alpha_max, beta_min, beta_max))
                }
                _ => unreachable!("handled above"),
            }
        }
    }
}

fn presets() -> Outcome {
    let list: Vec<Value> = PRESET_NAMES
        .iter()
        .map(|n| {
            let x = preset(n).expect("preset");
            json!({
                "name": x.name,
                "rho": x.ring.rho(),
                "divisor_basis": x.ring.divisor_basis(),
                "nef_cone": x.nef_cone.iter().map(DivisorClass::to_strings).collect::<Vec<_>>(),
                "chi(O_X)": x.chi.as_ref().map(format_rational),
            })
        })
        .collect();
    Ok((json!({ "command": "presets", "presets": list }), true))
}

fn eval(ctx: &Context, class: &str, s: Option<&str>) -> Outcome {
    let ch = class_arg(&ctx.x, class, "--class")?;
    let pol = ctx.polarization()?;
    let r = &ctx.x.ring;
    let v = v_vector(&ch, &pol)?;
    let mut out = json!({
        "class": class,
        "ch": ch.to_json(),
        "ch_B": twist(r, &ch, &ctx.b)?.to_json(),
        "v": v.to_json(),
        "delta_bar": delta_bar(&ch, &pol)?.to_string(),
        "nabla_bar": nabla_bar(&ch, &pol)?.to_string(),
        "bg_quantity": bg_quantity(&ch, &pol)?.to_string(),
        "mu": slope_json(&mu_slope(&v)),
        "nu": slope_json(&nu_slope(&v)),
        "Z": central_charge(&ch, &pol)?.to_json(),
        "beta_bar": or_error(beta_bar(&ch, &pol), |b| b.to_json()),
        "bms": or_error(bms_check(&ch, &pol), |b| b.to_json()),
    });
    if let Some(s) = s {
        let s = rational_arg(s, "--s")?;
        let z = charge_s(r, &ch, &ctx.alpha, &ctx.h, &s)?;
        out = merge(out, json!({ "Z_s": { "s": format_rational(&s), "value": z.to_json() } }));
    }
    Ok((merge(ctx.echo("eval"), out), true))
}

fn bg_check(ctx: &Context, class: &str) -> Outcome {
    let ch = class_arg(&ctx.x, class, "--class")?;
    let pol = ctx.polarization()?;
    let q = bg_quantity(&ch, &pol)?;
    let holds = !q.is_negative();
    let out = json!({
        "class": class,
        "delta_bar": delta_bar(&ch, &pol)?.to_string(),
        "nabla_bar": nabla_bar(&ch, &pol)?.to_string(),
        "bg_quantity": q.to_string(),
        "holds": holds,
    });
    Ok((merge(ctx.echo("bg-check"), out), holds))
}

fn beta_bar_cmd(ctx: &Context, class: &str) -> Outcome {
    let ch = class_arg(&ctx.x, class, "--class")?;
    let pol = ctx.polarization()?;
    let report = bms_check(&ch, &pol)?;
    let holds = report.verdict == BmsVerdict::Holds;
    Ok((merge(ctx.echo("beta-bar"), json!({ "class": class, "bms": report.to_json() })), holds))
}

fn neg_test(ctx: &Context, d: &str) -> Outcome {
    let d = divisor(&ctx.x, d, "--D")?;
    let t = neg_divisor_test(&d, &ctx.h, &ctx.x)?;
    let out = json!({ "D": d.to_strings(), "D_is_nef": ctx.x.is_nef(&d)?, "test": t.to_json() });
    Ok((merge(ctx.echo("neg-test"), out), true))
}

fn hodge(ctx: &Context, d: &str) -> Outcome {
    let d = divisor(&ctx.x, d, "--D")?;
    let c = hodge_chain(&d, &ctx.h, &ctx.x)?;
    let ok = c.all_hold();
    Ok((merge(ctx.echo("hodge-chain"), json!({ "D": d.to_strings(), "chain": c.to_json() })), ok))
}

fn frobenius(ctx: &Context, class: &str, m: u64, d: Option<&str>, q: u64) -> Outcome {
    let ch = class_arg(&ctx.x, class, "--class")?;
    let pulled = frobenius_pullback(&ch, m)?;
    let mut out = json!({ "class": class, "m": m, "pullback": pulled.to_json() });
    let mut ok = true;
    if let Some(d) = d {
        let d = divisor(&ctx.x, d, "--D")?;
        let t = ch3_twist_identity(&ctx.x.ring, &ch, &d, m, q)?;
        ok = t.equal;
        out = merge(out, json!({ "D": d.to_strings(), "q": q, "ch3_twist_identity": t.to_json() }));
    }
    Ok((merge(json!({ "command": "frobenius", "ring": ctx.x.name }), out), ok))
}

fn split(case: &str, m: u64, a: i64, b: Option<i64>) -> Outcome {
    let case = SplitCase::parse(case)?;
    let degrees: Vec<i64> = std::iter::once(a).chain(b).collect();
    let s = toric_split_summands(case, &degrees, m)?;
    Ok((merge(json!({ "command": "split" }), s.to_json()), true))
}

fn walls(ctx: &Context, svg: Option<&Path>, e: &str, f: &str, n: usize, range: (&str, &str, &str)) -> Outcome {
    let ce = class_arg(&ctx.x, e, "--E")?;
    let cf = class_arg(&ctx.x, f, "--F")?;
    let grid = Grid::new(
        (Rational::from_integer(0.into()), rational_arg(range.0, "--alpha-max")?),
        (rational_arg(range.1, "--beta-min")?, rational_arg(range.2, "--beta-max")?),
        n,
        n,
    );
    if !ctx.x.is_ample(&ctx.h)? {
        return Err(Failure(format!("--H {} is not ample", ctx.h)));
    }
    let d = wall_scan(&ctx.x.ring, &ce, &cf, &ctx.h, &grid)?;
    if let Some(p) = svg {
        std::fs::write(p, render_svg(&d)).map_err(|e| Failure(format!("{}: {e}", p.display())))?;
    }
    let out = json!({
        "command": "walls",
        "ring": ctx.x.name,
        "H": ctx.h.to_strings(),
        "E": e,
        "F": f,
        "diagram": d.to_json(),
    });
    Ok((out, d.consistent))
}

fn ptp2_verify(cli: &Cli, a: i64, b: i64, s: &str) -> Outcome {
    if cli.ring.as_deref().is_some_and(|r| r != "PT_P2") {
        return Err(Failure("ptp2 verify always works on PT_P2".into()));
    }
    let alpha = AlphaParam::from_alpha(parse_alpha(Some(cli.alpha.as_deref().unwrap_or("1/3")))?)?;
    let s = rational_arg(s, "--s")?;
    let report = verify_report(a, b, &alpha, &s)?;
    let ok = report["all_conventions_pass"].as_bool().unwrap_or(false);
    Ok((merge(json!({ "command": "ptp2 verify" }), report), ok))
}

fn verify(cli: &Cli, suite: Option<String>) -> Outcome {
    let custom = match cli.ring.as_deref() {
        Some(r) if !PRESET_NAMES.contains(&r) => Some(load_ring(Some(r))?),
        _ => None,
    };
    let config = VerifyConfig { seed: cli.seed, suite, custom };
    let report = verify_all(&config)?;
    for r in &report.results {
        eprintln!("{}", r.line());
    }
    Ok((report.to_json(), report.passed()))
}
