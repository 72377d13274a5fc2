//! Command-line front end. Parsing and dispatch only; all computation
//! lives in the library modules. Identical invocations produce
//! byte-identical output.
//!
//! Exit codes: 0 success, 2 invalid arguments, 3 resource limit, 1
//! internal error.

use std::io::Write;

use clap::{Args, Parser, Subcommand};
use num_bigint::{BigInt, BigUint};
use num_traits::ToPrimitive;

use crate::automata::{
    congruence_dfao, detect_eventual_period, dfao_product, dfao_subsequence, vp_mod_dfao, Dfao,
};
use crate::dynamics::{cycle_census, fix_seq, MapSpec, MethodChoice};
use crate::error::{Error, Result};
use crate::field::FieldDesc;
use crate::poly::{parse_poly, DEFAULT_DEGREE_CAP};
use crate::witness::{additive_report, char2_power_report, odd_power_report};
use crate::zeta::{detect_linear_recurrence, induced_zeta, recurrence_to_rational, zeta_from_fix_seq};

/// Pair encoding base for `dfao product --combine pair`.
const PAIR_BASE: i64 = 65536;

#[derive(Parser)]
#[command(
    name = "ffzeta",
    about = "Fixed-point counts, zeta series, and digit automata for polynomial maps over finite fields",
    disable_version_flag = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Fixed-point counts a_n, by oracle, closed form, or both
    An(AnArgs),
    /// Zeta-series coefficients, optionally with rationality detection
    Zeta(ZetaArgs),
    /// Build, run, and transform digit automata
    Dfao {
        #[command(subcommand)]
        command: DfaoCommand,
    },
    /// Eventual-periodicity scan of a count sequence or an explicit list
    Periodicity(PeriodicityArgs),
    /// Reduction-chain verification reports with periodicity counterexamples
    Witness(WitnessArgs),
    /// Functional-graph census of a map on a single finite field
    Census(CensusArgs),
}

#[derive(Args)]
struct AnArgs {
    /// Map: power:p,m | additive:p,m,[a] | pthpow:p,"poly" | general:p,m,"poly"
    #[arg(long)]
    map: String,
    /// Index or inclusive range, e.g. 7 or 1..8
    #[arg(long)]
    n: String,
    /// oracle | closed | both
    #[arg(long, default_value = "both")]
    method: String,
    #[arg(long, default_value_t = DEFAULT_DEGREE_CAP)]
    degree_cap: u64,
    /// Versioned JSON document instead of JSON lines
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct ZetaArgs {
    #[arg(long)]
    map: String,
    /// Truncation order K
    #[arg(long, default_value_t = 24)]
    order: usize,
    /// Fit a linear recurrence to a_1..a_K and report a closed form
    #[arg(long)]
    detect_rational: bool,
    /// Maximum recurrence order for detection (clamped to K/2)
    #[arg(long, default_value_t = 6)]
    max_order: usize,
    #[arg(long, default_value_t = DEFAULT_DEGREE_CAP)]
    degree_cap: u64,
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum DfaoCommand {
    /// Construct an automaton
    Build {
        #[command(subcommand)]
        kind: DfaoBuild,
    },
    /// Run an automaton on one input
    Run {
        #[arg(long)]
        file: String,
        #[arg(long)]
        n: String,
    },
    /// Product of two automata with combined outputs
    Product {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
        /// pair | and | left | right
        #[arg(long, default_value = "pair")]
        combine: String,
        #[arg(long)]
        out: Option<String>,
    },
    /// Automaton computing runs along n -> a*n + b
    Subsequence {
        #[arg(long)]
        file: String,
        #[arg(long)]
        a: u64,
        #[arg(long)]
        b: u64,
        #[arg(long)]
        out: Option<String>,
    },
}

#[derive(Subcommand)]
enum DfaoBuild {
    /// Recognizer of v_p(n) mod d (undefined on n = 0)
    VpMod {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        d: u64,
        /// Output symbols per residue class, default 0..d-1
        #[arg(long)]
        outputs: Option<String>,
        #[arg(long)]
        out: Option<String>,
    },
    /// Recognizer of n mod M membership in an accept set
    Congruence {
        #[arg(long)]
        p: u64,
        #[arg(long = "mod")]
        modulus: u64,
        /// Comma-separated accepted residues
        #[arg(long)]
        accept: String,
        #[arg(long)]
        out: Option<String>,
    },
}

#[derive(Args)]
struct PeriodicityArgs {
    /// Map whose counts a_n are scanned (with --n)
    #[arg(long)]
    map: Option<String>,
    #[arg(long)]
    n: Option<String>,
    /// Reduce counts mod this before scanning
    #[arg(long = "mod")]
    modulus: Option<u64>,
    /// Explicit comma-separated sequence instead of a map
    #[arg(long)]
    seq: Option<String>,
    #[arg(long, default_value_t = 256)]
    max_preperiod: usize,
    #[arg(long, default_value_t = 64)]
    max_period: usize,
    #[arg(long, default_value_t = DEFAULT_DEGREE_CAP)]
    degree_cap: u64,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct WitnessArgs {
    /// power-char2 | power-odd | additive
    #[arg(long)]
    scenario: String,
    /// Characteristic (power-odd, additive)
    #[arg(long)]
    p: Option<u64>,
    /// Exponent (power scenarios) or extension degree (additive)
    #[arg(long)]
    m: Option<u64>,
    /// Odd prime divisor of m (power-char2)
    #[arg(long)]
    q: Option<u64>,
    /// Additive multiplier as [c0,c1,...] (additive; default the unit 1)
    #[arg(long)]
    a: Option<String>,
    #[arg(long, default_value_t = 32)]
    range: u64,
    #[arg(long, default_value_t = 16)]
    k_max: u64,
    #[arg(long, default_value_t = DEFAULT_DEGREE_CAP)]
    degree_cap: u64,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct CensusArgs {
    /// Polynomial over the census field, e.g. "x^2 + 1"
    #[arg(long)]
    f: String,
    /// Field as p^k or p
    #[arg(long)]
    field: String,
    #[arg(long)]
    json: bool,
}

/// Entry point used by the binary.
pub fn run_from_env() -> i32 {
    let args: Vec<String> = std::env::args().collect();
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(args, &mut stdout.lock(), &mut stderr.lock())
}

/// Parses argv and dispatches; output goes to the supplied streams.
pub fn run<O: Write, E: Write>(
    args: impl IntoIterator<Item = String>,
    out: &mut O,
    err: &mut E,
) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    0
                }
                _ => {
                    let _ = write!(err, "{e}");
                    2
                }
            };
        }
    };
    match dispatch(cli, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch<O: Write>(cli: Cli, out: &mut O) -> Result<()> {
    match cli.command {
        Command::An(args) => cmd_an(args, out),
        Command::Zeta(args) => cmd_zeta(args, out),
        Command::Dfao { command } => cmd_dfao(command, out),
        Command::Periodicity(args) => cmd_periodicity(args, out),
        Command::Witness(args) => cmd_witness(args, out),
        Command::Census(args) => cmd_census(args, out),
    }
}

fn io_err(e: std::io::Error) -> Error {
    Error::Io(e.to_string())
}

fn cmd_an<O: Write>(args: AnArgs, out: &mut O) -> Result<()> {
    let map = parse_map(&args.map)?;
    let ns = parse_range(&args.n)?;
    let choice = parse_method(&args.method)?;
    let seq = fix_seq(&map, &ns, choice, args.degree_cap)?;
    if args.json {
        let entries: Vec<String> = seq
            .entries
            .iter()
            .map(|(n, a, method)| format!("{{\"n\":{n},\"a_n\":\"{a}\",\"method\":\"{method}\"}}"))
            .collect();
        writeln!(
            out,
            "{{\"schema\":\"ffzeta.an/1\",\"map\":{},\"entries\":[{}]}}",
            serde_json::to_string(&args.map).expect("string serializes"),
            entries.join(",")
        )
        .map_err(io_err)?;
    } else {
        for (n, a, method) in &seq.entries {
            writeln!(out, "{{\"n\":{n},\"a_n\":\"{a}\",\"method\":\"{method}\"}}")
                .map_err(io_err)?;
        }
    }
    Ok(())
}

fn cmd_zeta<O: Write>(args: ZetaArgs, out: &mut O) -> Result<()> {
    let map = parse_map(&args.map)?;
    let ns: Vec<u64> = (1..=args.order as u64).collect();
    let seq = fix_seq(&map, &ns, MethodChoice::Both, args.degree_cap)?;
    let series = zeta_from_fix_seq(&seq, args.order)?;
    let detection = if args.detect_rational {
        let counts: Vec<BigInt> = series.counts.iter().map(|a| BigInt::from(a.clone())).collect();
        // the detector needs a window of 2L terms
        let max_order = args.max_order.min(args.order / 2);
        match detect_linear_recurrence(&counts, max_order)? {
            Some(rec) => {
                let gf = recurrence_to_rational(&rec, &counts)?;
                match induced_zeta(&rec, &counts) {
                    Some(zeta_fn) => Some(format!("zeta = {zeta_fn}")),
                    None => Some(format!(
                        "count generating function = {gf} (recurrence order {})",
                        rec.order()
                    )),
                }
            }
            None => Some(format!(
                "no linear recurrence up to order {max_order} on a window of {} terms",
                args.order
            )),
        }
    } else {
        None
    };
    if args.json {
        let coeffs: Vec<String> = series.coeffs.iter().map(|c| format!("\"{c}\"")).collect();
        let detect_field = detection
            .as_ref()
            .map(|d| {
                format!(
                    ",\"detection\":{}",
                    serde_json::to_string(d).expect("string serializes")
                )
            })
            .unwrap_or_default();
        writeln!(
            out,
            "{{\"schema\":\"ffzeta.zeta/1\",\"order\":{},\"coefficients\":[{}]{}}}",
            args.order,
            coeffs.join(","),
            detect_field
        )
        .map_err(io_err)?;
    } else {
        write!(out, "{series}").map_err(io_err)?;
        if let Some(d) = detection {
            writeln!(out, "{d}").map_err(io_err)?;
        }
    }
    Ok(())
}

fn cmd_dfao<O: Write>(command: DfaoCommand, out: &mut O) -> Result<()> {
    match command {
        DfaoCommand::Build { kind } => {
            let (dfao, path) = match kind {
                DfaoBuild::VpMod { p, d, outputs, out } => {
                    let symbols = match outputs {
                        Some(text) => parse_i64_list(&text)?,
                        None => (0..d as i64).collect(),
                    };
                    (vp_mod_dfao(p, d, &symbols)?, out)
                }
                DfaoBuild::Congruence {
                    p,
                    modulus,
                    accept,
                    out,
                } => {
                    let accept = parse_u64_list(&accept)?;
                    (congruence_dfao(p, modulus, &accept)?, out)
                }
            };
            emit_dfao(&dfao, path, out)
        }
        DfaoCommand::Run { file, n } => {
            let dfao = load_dfao(&file)?;
            let n: BigUint = n
                .parse()
                .map_err(|_| Error::Parse(format!("bad index {n:?}")))?;
            writeln!(out, "{}", dfao.run(&n)?).map_err(io_err)
        }
        DfaoCommand::Product {
            left,
            right,
            combine,
            out: path,
        } => {
            let a = load_dfao(&left)?;
            let b = load_dfao(&right)?;
            let combined = match combine.as_str() {
                // pair encodes (x, y) as x*65536 + y
                "pair" => dfao_product(&a, &b, |x, y| x * PAIR_BASE + y)?,
                "and" => dfao_product(&a, &b, |x, y| i64::from(x != 0 && y != 0))?,
                "left" => dfao_product(&a, &b, |x, _| x)?,
                "right" => dfao_product(&a, &b, |_, y| y)?,
                other => {
                    return Err(Error::InvalidArgument(format!(
                        "unknown combiner {other:?}; use pair, and, left, or right"
                    )))
                }
            };
            emit_dfao(&combined, path, out)
        }
        DfaoCommand::Subsequence {
            file,
            a,
            b,
            out: path,
        } => {
            let dfao = load_dfao(&file)?;
            emit_dfao(&dfao_subsequence(&dfao, a, b)?, path, out)
        }
    }
}

fn emit_dfao<O: Write>(dfao: &Dfao, path: Option<String>, out: &mut O) -> Result<()> {
    let json = dfao.to_json();
    match path {
        Some(p) => std::fs::write(&p, json + "\n").map_err(io_err),
        None => writeln!(out, "{json}").map_err(io_err),
    }
}

fn load_dfao(path: &str) -> Result<Dfao> {
    let text = std::fs::read_to_string(path).map_err(io_err)?;
    Dfao::from_json(&text)
}

fn cmd_periodicity<O: Write>(args: PeriodicityArgs, out: &mut O) -> Result<()> {
    let seq: Vec<i64> = match (&args.seq, &args.map) {
        (Some(text), None) => parse_i64_list(text)?,
        (None, Some(map_text)) => {
            let map = parse_map(map_text)?;
            let n_text = args.n.as_ref().ok_or_else(|| {
                Error::InvalidArgument("--map also needs --n with an index range".into())
            })?;
            let ns = parse_range(n_text)?;
            let counts = fix_seq(&map, &ns, MethodChoice::Both, args.degree_cap)?;
            counts
                .entries
                .iter()
                .map(|(_, a, _)| match args.modulus {
                    Some(q) => Ok((a % q).to_i64().expect("residue fits")),
                    None => a.to_i64().ok_or_else(|| {
                        Error::InvalidArgument(
                            "count exceeds i64; reduce with --mod before scanning".into(),
                        )
                    }),
                })
                .collect::<Result<_>>()?
        }
        _ => {
            return Err(Error::InvalidArgument(
                "supply exactly one of --seq or --map".into(),
            ))
        }
    };
    let found = detect_eventual_period(&seq, args.max_preperiod, args.max_period)?;
    if args.json {
        let body = match found {
            Some((s, t)) => format!("{{\"preperiod\":{s},\"period\":{t}}}"),
            None => "null".into(),
        };
        writeln!(
            out,
            "{{\"schema\":\"ffzeta.periodicity/1\",\"max_preperiod\":{},\"max_period\":{},\"result\":{body}}}",
            args.max_preperiod, args.max_period
        )
        .map_err(io_err)?;
    } else {
        match found {
            Some((s, t)) => writeln!(out, "preperiod {s}, period {t}").map_err(io_err)?,
            None => writeln!(
                out,
                "none within preperiod <= {}, period <= {}",
                args.max_preperiod, args.max_period
            )
            .map_err(io_err)?,
        }
    }
    Ok(())
}

fn cmd_witness<O: Write>(args: WitnessArgs, out: &mut O) -> Result<()> {
    let need = |opt: Option<u64>, name: &str| {
        opt.ok_or_else(|| Error::InvalidArgument(format!("scenario requires --{name}")))
    };
    let report = match args.scenario.as_str() {
        "power-char2" => char2_power_report(
            need(args.m, "m")?,
            need(args.q, "q")?,
            args.range,
            args.k_max,
            args.degree_cap,
        )?,
        "power-odd" => odd_power_report(
            need(args.p, "p")?,
            need(args.m, "m")?,
            args.range,
            args.k_max,
            args.degree_cap,
        )?,
        "additive" => {
            let p = need(args.p, "p")?;
            let m = need(args.m, "m")?;
            let field = FieldDesc::new(p, m as usize)?;
            let a = match &args.a {
                Some(text) => field.parse_element(text)?,
                None => field.one(),
            };
            additive_report(&a, args.range, args.k_max, args.degree_cap)?
        }
        other => {
            return Err(Error::InvalidArgument(format!(
                "unknown scenario {other:?}; use power-char2, power-odd, or additive"
            )))
        }
    };
    if args.json {
        writeln!(
            out,
            "{{\"schema\":\"ffzeta.witness/1\",\"report\":{}}}",
            serde_json::to_string(&report).expect("report serializes")
        )
        .map_err(io_err)?;
    } else {
        writeln!(out, "{}", report.to_json()).map_err(io_err)?;
    }
    Ok(())
}

fn cmd_census<O: Write>(args: CensusArgs, out: &mut O) -> Result<()> {
    let (p, k) = parse_field(&args.field)?;
    let field = FieldDesc::new(p, k)?;
    let f = parse_poly(&field, strip_quotes(&args.f))?;
    let census = cycle_census(&f)?;
    let body = serde_json::to_string(&census).expect("census serializes");
    if args.json {
        writeln!(out, "{{\"schema\":\"ffzeta.census/1\",\"census\":{body}}}").map_err(io_err)?;
    } else {
        writeln!(out, "{body}").map_err(io_err)?;
    }
    Ok(())
}

// -- argument grammars -------------------------------------------------------

fn strip_quotes(s: &str) -> &str {
    let t = s.trim();
    t.strip_prefix('"')
        .and_then(|u| u.strip_suffix('"'))
        .unwrap_or(t)
}

fn parse_method(s: &str) -> Result<MethodChoice> {
    match s {
        "oracle" => Ok(MethodChoice::Oracle),
        "closed" => Ok(MethodChoice::Closed),
        "both" => Ok(MethodChoice::Both),
        other => Err(Error::Parse(format!(
            "unknown method {other:?}; use oracle, closed, or both"
        ))),
    }
}

/// Map mini-grammar: power:p,m | additive:p,m,[coeffs] | pthpow:p,"poly" |
/// general:p,m,"poly".
pub fn parse_map(text: &str) -> Result<MapSpec> {
    let (variant, rest) = text
        .split_once(':')
        .ok_or_else(|| Error::Parse(format!("map {text:?} lacks a variant prefix")))?;
    match variant {
        "power" => {
            let (p, m) = split2(rest)?;
            MapSpec::power(parse_u64(p)?, parse_u64(m)?)
        }
        "additive" => {
            let (p, m, a) = split3(rest)?;
            let field = FieldDesc::new(parse_u64(p)?, parse_u64(m)? as usize)?;
            MapSpec::additive(field.parse_element(a.trim())?)
        }
        "pthpow" => {
            let (p, poly_text) = rest
                .split_once(',')
                .ok_or_else(|| Error::Parse(format!("pthpow map {rest:?} needs p,poly")))?;
            let field = FieldDesc::new(parse_u64(p)?, 1)?;
            MapSpec::pth_power_coeff(parse_poly(&field, strip_quotes(poly_text))?)
        }
        "general" => {
            let (p, m, poly_text) = split3(rest)?;
            let field = FieldDesc::new(parse_u64(p)?, parse_u64(m)? as usize)?;
            MapSpec::general(parse_poly(&field, strip_quotes(poly_text))?)
        }
        other => Err(Error::Parse(format!(
            "unknown map variant {other:?}; use power, additive, pthpow, or general"
        ))),
    }
}

fn split2(s: &str) -> Result<(&str, &str)> {
    s.split_once(',')
        .ok_or_else(|| Error::Parse(format!("expected two comma-separated fields in {s:?}")))
}

fn split3(s: &str) -> Result<(&str, &str, &str)> {
    let (a, rest) = split2(s)?;
    let (b, c) = rest
        .split_once(',')
        .ok_or_else(|| Error::Parse(format!("expected three comma-separated fields in {s:?}")))?;
    Ok((a, b, c))
}

fn parse_u64(s: &str) -> Result<u64> {
    s.trim()
        .parse::<u64>()
        .map_err(|_| Error::Parse(format!("bad integer {s:?}")))
}

/// Inclusive range lo..hi, or a single index.
pub fn parse_range(text: &str) -> Result<Vec<u64>> {
    if let Some((lo, hi)) = text.split_once("..") {
        let lo = parse_u64(lo)?;
        let hi = parse_u64(hi)?;
        if lo > hi || lo == 0 {
            return Err(Error::Parse(format!("bad range {text:?}")));
        }
        Ok((lo..=hi).collect())
    } else {
        Ok(vec![parse_u64(text)?])
    }
}

/// Field syntax p^k or bare p.
pub fn parse_field(text: &str) -> Result<(u64, usize)> {
    match text.split_once('^') {
        Some((p, k)) => Ok((parse_u64(p)?, parse_u64(k)? as usize)),
        None => Ok((parse_u64(text)?, 1)),
    }
}

fn parse_u64_list(text: &str) -> Result<Vec<u64>> {
    text.split(',').map(parse_u64).collect()
}

fn parse_i64_list(text: &str) -> Result<Vec<i64>> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse::<i64>()
                .map_err(|_| Error::Parse(format!("bad integer {s:?}")))
        })
        .collect()
}
