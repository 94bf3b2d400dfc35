//! Command-line front end. JSON goes to stdout, diagnostics to stderr.
//! Exit codes: 0 success, 1 domain errors, 2 usage errors.

use clap::{Args, Parser, Subcommand, ValueEnum};
use jumptile::{
    classify_search_with, classify_theorem, is_member_with, render_attractor, render_parameter_map,
    sweep_with, tilde_bounds, verify_expansion, Classification, Error, Evidence, ExpansionWord,
    FractalParams, LatticePoint, SweepRow, Verdict, DEFAULT_POINT_BUDGET, DEFAULT_STATE_CAP,
};
use num::ToPrimitive;
use serde_json::{json, Value};
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "jumptile",
    version,
    about = "Connectedness analysis and rendering for self-affine fractals from collinear digit sets with a jump"
)]
struct Cli {
    /// Worker threads (0 = one per core).
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct ParamArgs {
    /// Linear coefficient of x^2 + px + q.
    #[arg(short, long, allow_negative_numbers = true)]
    p: i64,

    /// Constant coefficient of x^2 + px + q (|q| >= 2).
    #[arg(short, long, allow_negative_numbers = true)]
    q: i64,

    /// Jump offset of the digit set {0, ..., |q|-2, |q|+m}.
    #[arg(short, long, default_value_t = 0, allow_negative_numbers = true)]
    m: i64,
}

impl ParamArgs {
    fn build(&self) -> Result<FractalParams, Error> {
        FractalParams::new(self.p, self.q, self.m)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Theorem,
    Search,
    Both,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SweepFormat {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Decide connectedness by the closed-form classifier, the search
    /// engine, or both.
    Classify {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, value_enum, default_value_t = MethodArg::Both)]
        method: MethodArg,
    },
    /// Decide membership of gamma*v + delta*Av in T - T, with certificate.
    Decide {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, allow_negative_numbers = true)]
        gamma: i64,
        #[arg(long, allow_negative_numbers = true)]
        delta: i64,
    },
    /// Print certified coefficient bounds and the induced search box.
    Bounds {
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Classify a rectangle of (p, q) cells for each jump offset.
    Sweep {
        #[arg(long, allow_negative_numbers = true)]
        p_min: i64,
        #[arg(long, allow_negative_numbers = true)]
        p_max: i64,
        #[arg(long, allow_negative_numbers = true)]
        q_min: i64,
        #[arg(long, allow_negative_numbers = true)]
        q_max: i64,
        /// Jump offsets, comma separated.
        #[arg(
            short,
            long,
            value_delimiter = ',',
            default_value = "0",
            allow_negative_numbers = true
        )]
        m: Vec<i64>,
        #[arg(long, value_enum, default_value_t = SweepFormat::Json)]
        format: SweepFormat,
        /// Write the table here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Render the attractor point cloud to a PPM/PGM image.
    Render {
        #[command(flatten)]
        params: ParamArgs,
        /// Expansion depth; the cloud has |q|^depth points, which must fit
        /// the budget.
        #[arg(long, default_value_t = 8)]
        depth: u32,
        /// Square image side in pixels.
        #[arg(long, default_value_t = 512)]
        size: u32,
        #[arg(long, default_value_t = DEFAULT_POINT_BUDGET)]
        budget: u64,
        /// Output path; .pgm selects P5, anything else gets P6.
        #[arg(long)]
        out: PathBuf,
    },
    /// Render the parameter-plane classification map.
    Map {
        #[arg(long, allow_negative_numbers = true)]
        p_min: i64,
        #[arg(long, allow_negative_numbers = true)]
        p_max: i64,
        #[arg(long, allow_negative_numbers = true)]
        q_min: i64,
        #[arg(long, allow_negative_numbers = true)]
        q_max: i64,
        #[arg(short, long, default_value_t = 0, allow_negative_numbers = true)]
        m: i64,
        /// Square cell side in pixels.
        #[arg(long, default_value_t = 8)]
        cell: u32,
        #[arg(long)]
        out: PathBuf,
    },
    /// Check a user-supplied expansion word against a lattice point.
    Verify {
        #[command(flatten)]
        params: ParamArgs,
        /// JSON file {"preperiod": [...], "period": [...]}.
        #[arg(long)]
        word: PathBuf,
        #[arg(long, allow_negative_numbers = true)]
        gamma: i64,
        #[arg(long, allow_negative_numbers = true)]
        delta: i64,
    },
}

enum CliError {
    Domain(Error),
    Usage(String),
    Io(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Domain(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.jobs > 0 {
        // ignore failure: the global pool can only be set once
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(cli.jobs)
            .build_global();
    }
    let cap = match state_cap_from_env() {
        Ok(cap) => cap,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    match run(cli.command, cap) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Domain(e)) => {
            println!(
                "{}",
                json!({"error": {"kind": e.kind(), "message": e.to_string()}})
            );
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn state_cap_from_env() -> Result<u64, String> {
    match std::env::var("JUMPTILE_STATE_CAP") {
        Ok(raw) => raw
            .parse::<u64>()
            .map_err(|_| format!("JUMPTILE_STATE_CAP must be an integer, got {raw:?}")),
        Err(_) => Ok(DEFAULT_STATE_CAP),
    }
}

fn run(command: Command, cap: u64) -> Result<(), CliError> {
    match command {
        Command::Classify { params, method } => cmd_classify(params.build()?, method, cap),
        Command::Decide {
            params,
            gamma,
            delta,
        } => cmd_decide(params.build()?, gamma, delta, cap),
        Command::Bounds { params } => cmd_bounds(params.build()?),
        Command::Sweep {
            p_min,
            p_max,
            q_min,
            q_max,
            m,
            format,
            out,
        } => cmd_sweep(p_min..=p_max, q_min..=q_max, &m, format, out, cap),
        Command::Render {
            params,
            depth,
            size,
            budget,
            out,
        } => cmd_render(params.build()?, depth, size, budget, out),
        Command::Map {
            p_min,
            p_max,
            q_min,
            q_max,
            m,
            cell,
            out,
        } => cmd_map(p_min..=p_max, q_min..=q_max, m, cell, out),
        Command::Verify {
            params,
            word,
            gamma,
            delta,
        } => cmd_verify(params.build()?, word, gamma, delta),
    }
}

fn verdict_value(v: Verdict) -> Value {
    Value::String(v.to_string())
}

fn word_value(w: &ExpansionWord) -> Value {
    json!({"preperiod": w.preperiod, "period": w.period})
}

fn search_evidence(doc: &mut serde_json::Map<String, Value>, result: &Classification) {
    match &result.evidence {
        Some(Evidence::Witnesses { v, c, mc }) => {
            doc.insert(
                "witnesses".into(),
                json!({"v": word_value(v), "c": c, "mc": word_value(mc)}),
            );
        }
        Some(Evidence::Refutation {
            v_member,
            refuted_c,
            member_c,
        }) => {
            doc.insert(
                "refutation".into(),
                json!({"v_member": v_member, "refuted_c": refuted_c, "member_c": member_c}),
            );
        }
        None => {}
    }
}

fn cmd_classify(params: FractalParams, method: MethodArg, cap: u64) -> Result<(), CliError> {
    let mut doc = serde_json::Map::new();
    doc.insert("p".into(), json!(params.p()));
    doc.insert("q".into(), json!(params.q()));
    doc.insert("m".into(), json!(params.m()));

    let mut theorem = None;
    let mut search = None;
    if method != MethodArg::Search {
        let result = classify_theorem(&params)?;
        doc.insert("theorem".into(), verdict_value(result.verdict));
        theorem = Some(result.verdict);
    }
    if method != MethodArg::Theorem {
        let result = classify_search_with(&params, cap)?;
        doc.insert("search".into(), verdict_value(result.verdict));
        search_evidence(&mut doc, &result);
        search = Some(result.verdict);
    }
    if let (Some(t), Some(s)) = (theorem, search) {
        doc.insert("agree".into(), json!(t == s));
    }
    println!("{}", Value::Object(doc));
    Ok(())
}

fn cmd_decide(params: FractalParams, gamma: i64, delta: i64, cap: u64) -> Result<(), CliError> {
    let point = LatticePoint::new(gamma, delta);
    let (member, witness) = is_member_with(&params, point, cap)?;
    let mut doc = serde_json::Map::new();
    doc.insert("p".into(), json!(params.p()));
    doc.insert("q".into(), json!(params.q()));
    doc.insert("m".into(), json!(params.m()));
    doc.insert("gamma".into(), json!(gamma));
    doc.insert("delta".into(), json!(delta));
    doc.insert("member".into(), json!(member));
    if let Some(w) = witness {
        doc.insert("witness".into(), word_value(&w));
    }
    println!("{}", Value::Object(doc));
    Ok(())
}

fn cmd_bounds(params: FractalParams) -> Result<(), CliError> {
    let bounds = tilde_bounds(&params)?;
    let doc = json!({
        "p": params.p(),
        "q": params.q(),
        "m": params.m(),
        "discriminant": params.discriminant(),
        "alpha_tilde_ub": jumptile::ratio::frac_string(bounds.alpha_tilde_ub()),
        "alpha_tilde_ub_decimal": bounds.alpha_tilde_ub().to_f64(),
        "beta_tilde_ub": jumptile::ratio::frac_string(bounds.beta_tilde_ub()),
        "beta_tilde_ub_decimal": bounds.beta_tilde_ub().to_f64(),
        "gamma_max": bounds.gamma_max(),
        "delta_max": bounds.delta_max(),
        "tail_index": bounds.tail_index(),
    });
    println!("{doc}");
    Ok(())
}

fn sweep_json(rows: &[SweepRow]) -> Value {
    let cell = |v: Option<Verdict>| match v {
        Some(v) => verdict_value(v),
        None => Value::String("out_of_scope".into()),
    };
    let rows: Vec<Value> = rows
        .iter()
        .map(|r| {
            json!({
                "p": r.p,
                "q": r.q,
                "m": r.m,
                "theorem": cell(r.theorem),
                "search": cell(r.search),
                "agree": r.agree,
            })
        })
        .collect();
    json!({"rows": rows})
}

fn cmd_sweep(
    p_range: std::ops::RangeInclusive<i64>,
    q_range: std::ops::RangeInclusive<i64>,
    m_values: &[i64],
    format: SweepFormat,
    out: Option<PathBuf>,
    cap: u64,
) -> Result<(), CliError> {
    let rows = sweep_with(p_range, q_range, m_values, cap);
    let rendered = match format {
        SweepFormat::Csv => jumptile::sweep_csv(&rows),
        SweepFormat::Json => format!("{}\n", sweep_json(&rows)),
    };
    match out {
        Some(path) => {
            fs::write(&path, rendered)?;
            let disagreements = rows.iter().filter(|r| r.agree == Some(false)).count();
            println!(
                "{}",
                json!({"out": path.display().to_string(), "rows": rows.len(), "disagreements": disagreements})
            );
        }
        None => print!("{rendered}"),
    }
    Ok(())
}

fn write_image(image: &jumptile::RasterImage, path: &PathBuf) -> Result<String, CliError> {
    let format = if path.extension().map(|e| e == "pgm").unwrap_or(false) {
        "pgm"
    } else {
        "ppm"
    };
    let bytes = if format == "pgm" {
        image.pgm_bytes()
    } else {
        image.ppm_bytes()
    };
    fs::write(path, bytes)?;
    Ok(format.to_string())
}

fn cmd_render(
    params: FractalParams,
    depth: u32,
    size: u32,
    budget: u64,
    out: PathBuf,
) -> Result<(), CliError> {
    let image = render_attractor(&params, depth, size, size, budget)?;
    let format = write_image(&image, &out)?;
    println!(
        "{}",
        json!({
            "out": out.display().to_string(),
            "format": format,
            "width": image.width(),
            "height": image.height(),
            "depth": depth,
            "bbox": image.bbox().to_vec(),
        })
    );
    Ok(())
}

fn cmd_map(
    p_range: std::ops::RangeInclusive<i64>,
    q_range: std::ops::RangeInclusive<i64>,
    m: i64,
    cell: u32,
    out: PathBuf,
) -> Result<(), CliError> {
    let image = render_parameter_map(p_range, q_range, m, cell)?;
    let format = write_image(&image, &out)?;
    println!(
        "{}",
        json!({
            "out": out.display().to_string(),
            "format": format,
            "width": image.width(),
            "height": image.height(),
            "m": m,
        })
    );
    Ok(())
}

fn cmd_verify(
    params: FractalParams,
    word_path: PathBuf,
    gamma: i64,
    delta: i64,
) -> Result<(), CliError> {
    let raw = fs::read_to_string(&word_path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", word_path.display())))?;
    let word: ExpansionWord = serde_json::from_str(&raw).map_err(|e| {
        CliError::Usage(format!("malformed word file {}: {e}", word_path.display()))
    })?;
    if word.period.is_empty() {
        return Err(CliError::Usage(format!(
            "malformed word file {}: empty period",
            word_path.display()
        )));
    }
    let point = LatticePoint::new(gamma, delta);
    let valid = verify_expansion(&params, &word, point)?;
    println!(
        "{}",
        json!({
            "p": params.p(),
            "q": params.q(),
            "m": params.m(),
            "gamma": gamma,
            "delta": delta,
            "word": word_value(&word),
            "valid": valid,
        })
    );
    Ok(())
}
