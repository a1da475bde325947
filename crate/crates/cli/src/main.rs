use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use geospec_core::algebra::DEFAULT_BITS;
use geospec_core::dimension::{self, DimCase};
use geospec_core::format::{decimal, parse_rational, parse_surd};
use geospec_core::interval;
use geospec_core::limsup::{self, Alpha, Mode, RealInput};
use geospec_core::spectrum::{integer, quadratic};
use geospec_core::words::{self, BiEpWord, EpWord};
use geospec_core::{beta, verify, BigRational, Error, PisotQuadraticUnit, QuadraticSurd, UnitSign};

#[derive(Parser)]
#[command(
    name = "geospec",
    version,
    about = "Lagrange-type spectra of geometric sequences modulo one"
)]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Emit CSV (table commands only).
    #[arg(long, global = true, conflicts_with = "json")]
    csv: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Discrete part of the spectrum and its first accumulation point.
    #[command(subcommand)]
    Spectrum(SpectrumCmd),
    /// Running maximum of ||xi alpha^n||.
    Limsup(LimsupArgs),
    /// Word tools.
    #[command(subcommand)]
    Words(WordsCmd),
    /// Symmetric beta expansions.
    #[command(subcommand)]
    Betasym(BetaCmd),
    /// Words realizing eta in [kappa, 1/2].
    Interval(IntervalArgs),
    /// Hausdorff-dimension upper bounds.
    Dim(DimArgs),
    /// Acceptance criteria: one suite by name, or all.
    Verify {
        #[arg(default_value = "all")]
        suite: String,
    },
}

#[derive(Subcommand)]
enum SpectrumCmd {
    Integer {
        #[arg(long)]
        base: u64,
        #[arg(long, default_value_t = 5)]
        count: u32,
        #[arg(long)]
        precision: Option<u32>,
    },
    Quadratic {
        #[arg(long)]
        b: u64,
        #[arg(long)]
        sign: UnitSign,
        #[arg(long, default_value_t = 5)]
        count: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Exact,
    Ball,
}

#[derive(Args)]
struct LimsupArgs {
    /// `int:A`, `quad:B:plus|minus` or `poly:c0,c1,...,1`.
    #[arg(long)]
    alpha: String,
    /// Rational `p/q`, decimal, or surd `(p+q*sqrt(D))/r`.
    #[arg(long, allow_hyphen_values = true)]
    xi: String,
    #[arg(long, default_value_t = limsup::DEFAULT_N)]
    iters: usize,
    #[arg(long)]
    precision: Option<u32>,
    #[arg(long, value_enum)]
    mode: Option<ModeArg>,
    /// Ignore indices below this when taking the running maximum.
    #[arg(long, default_value_t = 0)]
    from: usize,
    /// Report the most frequent digit blocks of half-width W near the maximum.
    #[arg(long)]
    blocks: Option<usize>,
}

#[derive(Subcommand)]
enum WordsCmd {
    /// Lower (or upper) Christoffel word of slope p/q.
    Christoffel {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        q: u64,
        #[arg(long)]
        upper: bool,
    },
    /// Balance test with palindromic witness, plus a scan for F-factors.
    BalancedCheck { word: String },
    /// Occurrences of 0v01~v1 and 1~v10v0.
    ForbiddenScan { word: String },
    /// Run-length recoding of the periodic word `word^Z`.
    Phi { word: String },
    /// Mirror index; `--periodic` reads the word as `word^Z`.
    Iota {
        word: String,
        #[arg(long)]
        periodic: bool,
    },
}

#[derive(Args, Clone, Copy)]
struct UnitArgs {
    #[arg(long)]
    b: u64,
    #[arg(long)]
    sign: UnitSign,
}

impl UnitArgs {
    fn unit(self) -> geospec_core::Result<PisotQuadraticUnit> {
        PisotQuadraticUnit::new(self.b, self.sign)
    }
}

#[derive(Subcommand)]
enum BetaCmd {
    /// Expansion of x (rational or surd in the field of alpha).
    Expand {
        #[command(flatten)]
        unit: UnitArgs,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
    },
    /// Closed forms of d(1/2) and d(-1/2).
    Boundary {
        #[command(flatten)]
        unit: UnitArgs,
    },
    /// Admissibility of `prefix (period)^inf`.
    Admissible {
        #[command(flatten)]
        unit: UnitArgs,
        #[arg(long, default_value = "", allow_hyphen_values = true)]
        prefix: String,
        #[arg(long, allow_hyphen_values = true)]
        period: String,
    },
}

#[derive(Args)]
struct IntervalArgs {
    #[command(flatten)]
    unit: UnitArgs,
    /// A single eta; otherwise an 11-point grid on [kappa, 1/2].
    #[arg(long)]
    eta: Option<String>,
    #[arg(long, default_value_t = 200)]
    window: i64,
}

#[derive(Args)]
struct DimArgs {
    /// `int:A` or `quad:B:plus|minus`.
    #[arg(long = "case")]
    case: String,
    #[arg(long)]
    t: String,
    #[arg(long, default_value_t = 64)]
    search_limit: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Status {
    Ok,
    VerifyFailed,
}

impl Status {
    fn from_passed(ok: bool) -> Status {
        if ok {
            Status::Ok
        } else {
            Status::VerifyFailed
        }
    }

    fn label(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::VerifyFailed => "verify-failed",
        }
    }
}

/// Text, a JSON payload, and optionally CSV rows.
struct Output {
    status: Status,
    text: String,
    json: Value,
    csv: Option<Vec<Vec<String>>>,
}

fn to_json<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn precision(flag: Option<u32>) -> Result<u32, Error> {
    if let Some(p) = flag {
        return Ok(p);
    }
    match std::env::var("GEOSPEC_PRECISION") {
        Ok(s) => s
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("GEOSPEC_PRECISION={s:?} is not a bit count"))),
        Err(_) => Ok(DEFAULT_BITS),
    }
}

fn approx(q: &BigRational) -> String {
    decimal(q, 12)
}

fn spectrum_integer(base: u64, count: u32, bits: u32) -> Result<Output, Error> {
    if count == 0 {
        return Err(Error::InvalidParameter("count must be positive".into()));
    }
    let s = integer::enumerate_spectrum(base, count - 1, bits)?;
    let mut text = String::from("k\tvalue\tdecimal\twitness\n");
    let mut rows = vec![vec![
        "k".into(),
        "value".into(),
        "decimal".into(),
        "witness".into(),
    ]];
    for p in &s.points {
        text += &format!(
            "{}\t{}\t{}\t({})^inf\n",
            p.index,
            p.value,
            approx(&p.value),
            p.witness
        );
        rows.push(vec![
            p.index.to_string(),
            p.value.to_string(),
            approx(&p.value),
            p.witness.clone(),
        ]);
    }
    text += &format!(
        "limit\t{} +- {:.1e}\n",
        decimal(&s.limit.ball.mid_rational(), 12),
        s.limit.ball.rad_f64()
    );
    let passed = s.checks.iter().filter(|c| c.passed).count();
    text += &format!("checks\t{passed}/{} passed\n", s.checks.len());
    for c in s.checks.iter().filter(|c| !c.passed) {
        text += &format!("FAILED\t{}\n", c.name);
    }
    Ok(Output {
        status: Status::from_passed(s.all_passed()),
        text,
        json: to_json(&s),
        csv: Some(rows),
    })
}

fn spectrum_quadratic(unit: PisotQuadraticUnit, count: usize) -> Result<Output, Error> {
    if count == 0 {
        return Err(Error::InvalidParameter("count must be positive".into()));
    }
    let t = quadratic::pq_spectrum(unit, count - 1)?;
    let slopes = |w: &[(u64, u64)]| {
        w.iter()
            .map(|(p, q)| format!("{p}/{q}"))
            .collect::<Vec<_>>()
            .join(" ")
    };
    let mut text = String::from("n\tp_n/q_n\tdecimal\twitness slopes\n");
    let mut rows = vec![vec![
        "n".into(),
        "p".into(),
        "q".into(),
        "value".into(),
        "decimal".into(),
        "slopes".into(),
    ]];
    for r in &t.rows {
        text += &format!(
            "{}\t{}\t{}\t{}\n",
            r.n,
            r.value,
            approx(&r.value),
            slopes(&r.witnesses)
        );
        rows.push(vec![
            r.n.to_string(),
            r.p.clone(),
            r.q.clone(),
            r.value.to_string(),
            approx(&r.value),
            slopes(&r.witnesses),
        ]);
    }
    text += &format!("limit\t{} ~ {:.12}\n", t.limit, t.limit_approx);
    for c in &t.checks {
        text += &format!("{}\t{}\n", if c.passed { "ok" } else { "FAILED" }, c.name);
    }
    Ok(Output {
        status: Status::from_passed(t.all_passed()),
        text,
        json: to_json(&t),
        csv: Some(rows),
    })
}

fn limsup_cmd(a: &LimsupArgs) -> Result<Output, Error> {
    let alpha: Alpha = a.alpha.parse()?;
    let xi = RealInput::parse(&a.xi)?;
    let mode = a.mode.map(|m| match m {
        ModeArg::Exact => Mode::Exact,
        ModeArg::Ball => Mode::Ball,
    });
    let bits = match a.precision {
        Some(p) => Some(p),
        None => std::env::var("GEOSPEC_PRECISION")
            .ok()
            .map(|_| precision(None))
            .transpose()?,
    };
    let values = limsup::norm_sequence(&xi, &alpha, a.iters, bits, mode)?;
    let est = limsup::limsup_estimate(&values, a.from);
    // Exact value of the limsup itself, when a finite orbit decides it.
    let exact: Option<String> = match (&alpha, &xi) {
        (Alpha::Integer(b), RealInput::Rational(q)) => {
            Some(integer::rational_orbit_limsup(q, *b).0.to_string())
        }
        (Alpha::Quadratic(u), RealInput::Rational(q)) => Some(
            quadratic::trace_limsup(*u, &QuadraticSurd::from_rational(q.clone()))?
                .0
                .to_string(),
        ),
        (Alpha::Quadratic(u), RealInput::Surd(s)) if s.radicand() == u.radicand() => {
            Some(quadratic::trace_limsup(*u, s)?.0.to_string())
        }
        _ => None,
    };
    let mut text = format!(
        "alpha\t{alpha}\nxi\t{}\niterations\t{}\nrunning max\t{:.15} (n = {}, last improvement at {})\n",
        a.xi, est.n, est.lower_bound, est.argmax, est.last_improvement
    );
    if let Some(m) = &est.exact_max {
        text += &format!("running max exact\t{m}\n");
    }
    if let Some(e) = &exact {
        text += &format!("limsup exact\t{e}\n");
    }
    let mut blocks = Value::Null;
    if let Some(w) = a.blocks {
        let digits = limsup::digits_from_norms(&values, &alpha)?;
        let d = alpha.poly().len() - 1;
        // digits[j] is s_{j + d - 1}; align each score with its digit
        let scores: Vec<f64> = values.iter().skip(d - 1).map(|v| v.value).collect();
        let top = limsup::limsup_word_extract(&digits, &scores, w, 5, 1e-3)?;
        for b in &top {
            let s: Vec<String> = b.block.iter().map(|x| x.to_string()).collect();
            text += &format!("block\t{}\t{}\n", s.join(" "), b.count);
        }
        blocks = to_json(&top);
    }
    let json = json!({ "estimate": est, "limsup_exact": exact, "blocks": blocks });
    Ok(Output {
        status: Status::Ok,
        text,
        json,
        csv: None,
    })
}

fn words_cmd(cmd: &WordsCmd) -> Result<Output, Error> {
    match cmd {
        WordsCmd::Christoffel { p, q, upper } => {
            let w = words::christoffel(*p, *q, *upper)?;
            let central = if *q >= 2 {
                Some(words::binary_string(&words::central_word(*p, *q)?))
            } else {
                None
            };
            let s = words::binary_string(&w);
            let mut text = format!("{s}\n");
            if let Some(c) = &central {
                text += &format!("central word\t{c}\n");
            }
            Ok(Output {
                status: Status::Ok,
                text,
                json: json!({ "word": s, "central": central }),
                csv: None,
            })
        }
        WordsCmd::BalancedCheck { word } => {
            let w = words::parse_binary(word)?;
            let rep = words::is_balanced(&w);
            let hits = words::forbidden_scan(&w);
            let mut text = format!(
                "{}; {}\n",
                if rep.balanced {
                    "balanced"
                } else {
                    "unbalanced"
                },
                if hits.is_empty() {
                    "no F-factor".to_string()
                } else {
                    format!("{} F-factor(s)", hits.len())
                }
            );
            if let Some(p) = &rep.witness {
                let p = words::binary_string(p);
                text += &format!("witness\t0{p}0 and 1{p}1\n");
            }
            let json = json!({
                "balanced": rep.balanced,
                "witness": rep.witness.as_deref().map(words::binary_string),
                "f_factors": hits.iter().map(|h| json!({"position": h.position, "factor": words::binary_string(&h.factor())})).collect::<Vec<_>>(),
            });
            Ok(Output {
                status: Status::Ok,
                text,
                json,
                csv: None,
            })
        }
        WordsCmd::ForbiddenScan { word } => {
            let w = words::parse_binary(word)?;
            let hits = words::forbidden_scan(&w);
            let mut text = String::new();
            let mut rows = vec![vec![
                "position".into(),
                "kind".into(),
                "v".into(),
                "factor".into(),
            ]];
            for h in &hits {
                let kind = format!("{:?}", h.kind);
                let (v, f) = (
                    words::binary_string(&h.v),
                    words::binary_string(&h.factor()),
                );
                text += &format!("{}\t{kind}\tv={v}\t{f}\n", h.position);
                rows.push(vec![h.position.to_string(), kind, v, f]);
            }
            if hits.is_empty() {
                text += "no F-factor\n";
            }
            Ok(Output {
                status: Status::Ok,
                text,
                json: to_json(&hits),
                csv: Some(rows),
            })
        }
        WordsCmd::Phi { word } => {
            let w = words::parse_binary(word)?;
            let r = words::phi(&BiEpWord::periodic(w)?)?;
            let period = words::binary_string(&r.word.right);
            let text = format!(
                "({period})^Z\ta = {}\tcomplemented = {}\n",
                r.a, r.complemented
            );
            let json = json!({ "period": period, "a": r.a, "complemented": r.complemented });
            Ok(Output {
                status: Status::Ok,
                text,
                json,
                csv: None,
            })
        }
        WordsCmd::Iota { word, periodic } => {
            let w = words::parse_binary(word)?;
            let r = if *periodic {
                words::iota_periodic(&w)
            } else {
                words::iota_window(&w)
            };
            let value = if r.infinite {
                "infinite".to_string()
            } else {
                r.value.to_string()
            };
            let text = format!(
                "iota\t{value}{}\nattained at\t{:?}\n",
                if r.exact {
                    ""
                } else {
                    " (lower bound from the window)"
                },
                r.attained_at
            );
            Ok(Output {
                status: Status::Ok,
                text,
                json: to_json(&r),
                csv: None,
            })
        }
    }
}

fn beta_cmd(cmd: &BetaCmd) -> Result<Output, Error> {
    match cmd {
        BetaCmd::Expand { unit, x } => {
            let u = unit.unit()?;
            let x = parse_surd(x)?;
            let e = beta::encode(u, &x)?;
            let back = beta::reconstruct(u, &e.digits);
            let admissible = beta::is_admissible(u, &e.digits)?;
            let text = format!(
                "digits\t{}\nreconstructs\t{}\nadmissible\t{admissible}\n",
                e.digits,
                back == x
            );
            Ok(Output {
                status: Status::from_passed(back == x && admissible),
                text,
                json: json!({ "expansion": e, "reconstructs": back == x, "admissible": admissible }),
                csv: None,
            })
        }
        BetaCmd::Boundary { unit } => {
            let u = unit.unit()?;
            let (hi, lo) = beta::boundary_expansions(u);
            let half = QuadraticSurd::from_ratio(1, 2);
            let agree = beta::digits_prefix(u, &half, 50)? == hi.take(50)
                && beta::digits_prefix(u, &-half, 50)? == lo.take(50);
            let text =
                format!("d(1/2)\t{hi}\nd(-1/2)\t{lo}\nmatches the map (50 digits)\t{agree}\n");
            Ok(Output {
                status: Status::from_passed(agree),
                text,
                json: json!({ "upper": hi, "lower": lo, "matches_map": agree }),
                csv: None,
            })
        }
        BetaCmd::Admissible {
            unit,
            prefix,
            period,
        } => {
            let u = unit.unit()?;
            let w = EpWord::new(words::parse_digits(prefix)?, words::parse_digits(period)?)?;
            let ok = beta::is_admissible(u, &w)?;
            Ok(Output {
                status: Status::Ok,
                text: format!("{w}\tadmissible = {ok}\n"),
                json: json!({ "admissible": ok }),
                csv: None,
            })
        }
    }
}

fn interval_cmd(a: &IntervalArgs) -> Result<Output, Error> {
    let unit = a.unit.unit()?;
    let case = interval::kappa_and_keys(unit)?;
    let etas = match &a.eta {
        Some(e) => vec![parse_surd(e)?],
        None => interval::eta_grid(&case, 10),
    };
    let mut text = format!(
        "{unit}\t{:?} split\n{:?}\t{:.6} <= {:.6}: {}\nkappa\t{} ~ {:.9}\tbelow 1/2: {}\n",
        case.split,
        case.key,
        case.key_lhs.to_f64(),
        case.key_rhs.to_f64(),
        case.key_holds,
        case.kappa,
        case.kappa_approx,
        case.kappa_below_half
    );
    let mut rows = vec![vec![
        "eta".into(),
        "approx".into(),
        "g_equals_eta".into(),
        "max_shift".into(),
        "bounded".into(),
    ]];
    let mut checks = Vec::new();
    let mut ok = case.key_holds && case.kappa_below_half;
    for eta in &etas {
        let c = interval::check_eta(&case, eta, a.window)?;
        ok &= c.g_equals_eta && c.shifts_bounded;
        text += &format!(
            "eta {:.9}\tg = eta: {}\tmax |g| over |k| <= {}: {:.9}\tbounded: {}\n",
            c.eta_approx, c.g_equals_eta, a.window, c.max_shift_value, c.shifts_bounded
        );
        rows.push(vec![
            c.eta.to_string(),
            format!("{:.12}", c.eta_approx),
            c.g_equals_eta.to_string(),
            format!("{:.12}", c.max_shift_value),
            c.shifts_bounded.to_string(),
        ]);
        checks.push(c);
    }
    let json = json!({ "case": case, "etas": checks });
    Ok(Output {
        status: Status::from_passed(ok),
        text,
        json,
        csv: Some(rows),
    })
}

fn dim_cmd(a: &DimArgs) -> Result<Output, Error> {
    let case = match a.case.parse::<Alpha>()? {
        Alpha::Integer(n) => DimCase::Integer { a: n },
        Alpha::Quadratic(u) => DimCase::Quadratic { unit: u },
        Alpha::Poly(_) => {
            return Err(Error::InvalidParameter(
                "dim takes int:A or quad:B:sign".into(),
            ))
        }
    };
    let t = parse_rational(&a.t)?;
    let d = dimension::dimension_bounds(&case, &t, a.search_limit)?;
    let text = match (&d.integer, &d.quadratic) {
        (Some(i), _) => format!(
            "bound\t{:.12} at l = {} (ceil(a^l t) = {})\nthreshold l\t{}\tbelow 1 there: {}\n",
            i.bound.value, i.ell, i.count, i.threshold_ell, i.below_one_at_threshold
        ),
        (_, Some(q)) => format!(
            "m\t{}\nbound\t{:.12}\tbelow 1: {}\nt0\t{} ~ {:.12}\tbelow 1/4: {}\n",
            q.m, q.bound.value, q.below_one, q.t0, q.t0_approx, q.t0_below_quarter
        ),
        _ => unreachable!(),
    };
    Ok(Output {
        status: Status::Ok,
        text,
        json: to_json(&d),
        csv: None,
    })
}

fn verify_cmd(suite: &str) -> Result<Output, Error> {
    let results = if suite == "all" {
        verify::run_all()
    } else {
        let id = verify::suite_id(suite).ok_or_else(|| {
            Error::InvalidParameter(format!(
                "unknown suite {suite:?}; expected all or one of {}",
                verify::SUITES.join(", ")
            ))
        })?;
        verify::run(id).into_iter().collect()
    };
    let mut text = String::new();
    let mut rows = vec![vec![
        "id".into(),
        "suite".into(),
        "passed".into(),
        "detail".into(),
    ]];
    for r in &results {
        text += &r.line();
        text.push('\n');
        for f in &r.failures {
            text += &format!("       - {f}\n");
        }
        rows.push(vec![
            r.id.to_string(),
            r.name.into(),
            r.passed.to_string(),
            r.detail.clone(),
        ]);
    }
    let ok = results.iter().all(|r| r.passed);
    Ok(Output {
        status: Status::from_passed(ok),
        text,
        json: to_json(&results),
        csv: Some(rows),
    })
}

fn dispatch(cli: &Cli) -> Result<Output, Error> {
    match &cli.command {
        Command::Spectrum(SpectrumCmd::Integer {
            base,
            count,
            precision: p,
        }) => spectrum_integer(*base, *count, precision(*p)?),
        Command::Spectrum(SpectrumCmd::Quadratic { b, sign, count }) => {
            spectrum_quadratic(PisotQuadraticUnit::new(*b, *sign)?, *count)
        }
        Command::Limsup(a) => limsup_cmd(a),
        Command::Words(w) => words_cmd(w),
        Command::Betasym(b) => beta_cmd(b),
        Command::Interval(a) => interval_cmd(a),
        Command::Dim(a) => dim_cmd(a),
        Command::Verify { suite } => verify_cmd(suite),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = match dispatch(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    if cli.json {
        let doc = json!({ "status": out.status.label(), "payload": out.json });
        // a closed pipe (e.g. `| head`) is not an error worth reporting
        let _ = writeln!(
            std::io::stdout().lock(),
            "{}",
            serde_json::to_string_pretty(&doc).expect("valid JSON")
        );
    } else if cli.csv {
        let Some(rows) = out.csv else {
            eprintln!("error: this command has no tabular output; use --json");
            return ExitCode::from(2);
        };
        let mut w = csv::Writer::from_writer(std::io::stdout());
        for r in rows {
            if w.write_record(&r).is_err() {
                return ExitCode::from(2);
            }
        }
        let _ = w.flush();
    } else {
        let _ = std::io::stdout().lock().write_all(out.text.as_bytes());
    }
    match out.status {
        Status::Ok => ExitCode::SUCCESS,
        Status::VerifyFailed => ExitCode::from(1),
    }
}
