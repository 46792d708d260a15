use std::process::ExitCode;

use bruhat_core::affinegraph::{sweep_relation, AffineInterval, AffineRule};
use bruhat_core::affineperm::{from_core, AffinePermutation, CorePartition};
use bruhat_core::combinat::Partition;
use bruhat_core::embedding::{build_embedding_with_k, map_chain, verify_embedding};
use bruhat_core::kschur::{k_function_weak, k_matrix, kschur_in_h};
use bruhat_core::qsym::{is_symmetric, schur_expand, QBasis};
use bruhat_core::rbruhat::{first_chain, interval_from_zeta, FinitePermutation, RBruhatInterval};
use bruhat_core::{Error, KMatrix, Limits, QSym, VerificationReport};
use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde_json::{json, Value};

const SCHEMA: &str = "bruhat-kit/1";

#[derive(Parser, Debug)]
#[command(
    name = "bruhat-kit",
    version,
    about = "Chains in r-Bruhat and affine 0-Bruhat intervals"
)]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Largest number of chains or paths to enumerate.
    #[arg(long, global = true, default_value_t = bruhat_core::DEFAULT_CAP)]
    cap: usize,
    /// Worker threads (0 = rayon default).
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct IntervalArgs {
    /// `w u^{-1}` as one-line images; determines u, w and r.
    #[arg(long, conflicts_with_all = ["u", "w", "r"])]
    zeta: Option<String>,
    #[arg(long, requires_all = ["w", "r"])]
    u: Option<String>,
    #[arg(long)]
    w: Option<String>,
    #[arg(long)]
    r: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// K function of an r-Bruhat interval.
    Rbruhat {
        #[command(flatten)]
        interval: IntervalArgs,
        /// List every chain.
        #[arg(long)]
        chains: bool,
        /// Print the Schur expansion.
        #[arg(long)]
        schur: bool,
    },
    /// K function of an affine 0-Bruhat interval.
    Affine {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        u: String,
        #[arg(long)]
        w: String,
        #[arg(long)]
        count_only: bool,
        /// List every path.
        #[arg(long)]
        paths: bool,
        /// Allow vertices outside W^0.
        #[arg(long)]
        unrestricted: bool,
    },
    /// K function of a weak-order interval of 0-grassmannians.
    Weak {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        u: String,
        #[arg(long)]
        w: String,
    },
    /// k-Schur functions of one degree in the h basis.
    Kschur {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        degree: usize,
        #[arg(long, conflicts_with = "invert")]
        matrix: bool,
        #[arg(long)]
        invert: bool,
    },
    /// Convert between 0-grassmannian windows and (k+1)-cores.
    Core {
        #[arg(long)]
        k: usize,
        #[arg(long, conflicts_with = "mu", required_unless_present = "mu")]
        u: Option<String>,
        #[arg(long)]
        mu: Option<String>,
    },
    /// Build the affine image of an r-Bruhat interval.
    Embed {
        #[command(flatten)]
        interval: IntervalArgs,
        /// Use this k instead of the smallest admissible one.
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        verify: bool,
    },
    /// Randomized checks of the affine operator relations.
    Relations {
        /// Largest k sampled.
        #[arg(long, default_value_t = 5)]
        k: usize,
        /// Trials per rule.
        #[arg(long, default_value_t = 1000)]
        sweep: usize,
        /// Comma-separated rule names, default all.
        #[arg(long, value_delimiter = ',')]
        rules: Vec<String>,
    },
}

struct Output {
    text: Vec<String>,
    json: Value,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new()
        .num_threads(cli.threads)
        .build()
    {
        Ok(pool) => pool,
        Err(e) => {
            eprintln!("error: cannot start worker pool: {e}");
            return ExitCode::from(3);
        }
    };
    match pool.install(|| run(&cli)) {
        Ok(out) => {
            if cli.json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&out.json).expect("serializable")
                );
            } else {
                for line in out.text {
                    println!("{line}");
                }
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse(_) => 2,
        Error::CapExceeded(_) => 4,
        _ => 3,
    }
}

fn run(cli: &Cli) -> Result<Output, Error> {
    let limits = Limits { cap: cli.cap };
    let (verb, mut out) = match &cli.command {
        Command::Rbruhat {
            interval,
            chains,
            schur,
        } => ("rbruhat", rbruhat(interval, *chains, *schur, &limits)?),
        Command::Affine {
            k,
            u,
            w,
            count_only,
            paths,
            unrestricted,
        } => {
            let u = window(*k, u)?;
            let w = window(*k, w)?;
            (
                "affine",
                affine(&u, &w, *count_only, *paths, *unrestricted, &limits)?,
            )
        }
        Command::Weak { k, u, w } => ("weak", weak(&window(*k, u)?, &window(*k, w)?)?),
        Command::Kschur {
            k,
            degree,
            matrix,
            invert,
        } => ("kschur", kschur(*k, *degree, *matrix, *invert)?),
        Command::Core { k, u, mu } => ("core", core(*k, u.as_deref(), mu.as_deref())?),
        Command::Embed {
            interval,
            k,
            verify,
        } => ("embed", embed(interval, *k, *verify, &limits)?),
        Command::Relations { k, sweep, rules } => {
            ("relations", relations(*k, *sweep, rules, cli.seed)?)
        }
    };
    let mut json = json!({ "schema": SCHEMA, "command": verb });
    if let (Value::Object(head), Value::Object(body)) = (&mut json, out.json) {
        head.extend(body);
    }
    out.json = json;
    Ok(out)
}

fn window(k: usize, text: &str) -> Result<AffinePermutation, Error> {
    let parsed: AffinePermutation = text.parse()?;
    AffinePermutation::with_k(k, parsed.window().to_vec())
}

fn interval(args: &IntervalArgs) -> Result<(FinitePermutation, FinitePermutation, usize), Error> {
    match (&args.zeta, &args.u, &args.w, args.r) {
        (Some(z), _, _, _) => interval_from_zeta(&z.parse()?),
        (None, Some(u), Some(w), Some(r)) => Ok((u.parse()?, w.parse()?, r)),
        _ => Err(Error::Parse("give --zeta, or --u, --w and --r".into())),
    }
}

fn report_json(report: &VerificationReport) -> Value {
    let checks: Vec<Value> = report
        .checks
        .iter()
        .map(|(name, ok)| json!({ "name": name, "ok": ok }))
        .collect();
    json!({ "passed": report.passed(), "checks": checks, "notes": report.notes })
}

fn report_text(report: &VerificationReport) -> Vec<String> {
    let mut lines: Vec<String> = report
        .checks
        .iter()
        .map(|(name, ok)| format!("  {} {name}", if *ok { "ok  " } else { "FAIL" }))
        .collect();
    lines.extend(report.notes.iter().map(|n| format!("  {n}")));
    lines
}

/// Text and JSON for a K function: its F form and, when symmetric, its Schur form.
fn k_summary(k: &QSym, lines: &mut Vec<String>, with_schur: bool) -> Result<Value, Error> {
    let f = k.to_basis(QBasis::Fundamental);
    lines.push(format!("K = {f}"));
    let symmetric = is_symmetric(k);
    let mut value = json!({ "K": f.to_json(), "symmetric": symmetric });
    if with_schur {
        if symmetric {
            let s = schur_expand(k)?;
            lines.push(format!("  = {s}"));
            value["schur"] = s.to_json();
        } else {
            lines.push("  (not symmetric)".into());
        }
    }
    Ok(value)
}

fn rbruhat(args: &IntervalArgs, list: bool, schur: bool, limits: &Limits) -> Result<Output, Error> {
    let (u, w, r) = interval(args)?;
    let iv = RBruhatInterval::new(&u, &w, r);
    if iv.is_empty() {
        return Err(Error::EmptyInterval);
    }
    let mut text = vec![format!("u = {u}"), format!("w = {w}"), format!("r = {r}")];
    text.push(format!("chains: {}", iv.chain_count()));
    let k: QSym = iv.k_function();
    let mut json = json!({
        "u": u.images(), "w": w.images(), "r": r,
        "chain_count": iv.chain_count().to_string(),
    });
    if list {
        let chains = iv.chains(limits)?;
        text.extend(
            chains
                .iter()
                .map(|c| format!("  {}    {}", c.word(), c.render_steps())),
        );
        let words: Vec<Value> = chains
            .iter()
            .map(|c| json!({ "steps": c.steps.iter().map(|&(a, b)| [a, b]).collect::<Vec<_>>(), "word": c.word() }))
            .collect();
        json["chains"] = Value::Array(words);
    }
    let summary = k_summary(&k, &mut text, schur)?;
    merge(&mut json, summary);
    Ok(Output { text, json })
}

fn affine(
    u: &AffinePermutation,
    w: &AffinePermutation,
    count_only: bool,
    list: bool,
    unrestricted: bool,
    limits: &Limits,
) -> Result<Output, Error> {
    let iv = if unrestricted {
        AffineInterval::build(u, w, false)?
    } else {
        AffineInterval::new(u, w)?
    };
    if iv.is_empty() {
        return Err(Error::EmptyInterval);
    }
    let mut text = vec![
        format!("u = {u}"),
        format!("w = {w}"),
        format!("paths: {}", iv.path_count()),
    ];
    let mut json = json!({ "k": u.k(), "u": u.window(), "w": w.window(), "path_count": iv.path_count().to_string() });
    if count_only {
        return Ok(Output { text, json });
    }
    if list {
        let paths = iv.paths(limits)?;
        text.extend(paths.iter().map(|p| format!("  {p}")));
        json["paths"] = Value::Array(paths.iter().map(|p| Value::String(p.render())).collect());
    }
    let k: QSym = iv.k_function();
    let summary = k_summary(&k, &mut text, true)?;
    merge(&mut json, summary);
    Ok(Output { text, json })
}

fn weak(u: &AffinePermutation, w: &AffinePermutation) -> Result<Output, Error> {
    let k: QSym = k_function_weak(u, w)?;
    let m = k.to_basis(QBasis::Monomial);
    let mut text = vec![format!("u = {u}"), format!("w = {w}"), format!("K = {m}")];
    let mut json =
        json!({ "k": u.k(), "u": u.window(), "w": w.window(), "K_monomial": m.to_json() });
    let summary = k_summary(&k, &mut text, true)?;
    merge(&mut json, summary);
    Ok(Output { text, json })
}

fn kschur(k: usize, degree: usize, matrix: bool, invert: bool) -> Result<Output, Error> {
    let km: KMatrix = k_matrix(k, degree)?;
    let rows: Vec<String> = km.rows.iter().map(|l| format!("({l})")).collect();
    let cols: Vec<String> = km.columns.iter().map(ToString::to_string).collect();
    let mut json = json!({ "k": k, "degree": degree, "rows": rows, "columns": cols });
    let mut text = Vec::new();
    if matrix || invert {
        let m = if matrix { km.dense() } else { km.inverse()? };
        let label = if matrix {
            "h_lambda = sum K S_u"
        } else {
            "S_u = sum b h_lambda"
        };
        text.push(format!("{label}; order {}", rows.join(" ")));
        text.extend(
            m.iter()
                .map(|row| row.iter().map(|c| format!("{c:>4}")).collect::<String>()),
        );
        let entries: Vec<Value> = m
            .iter()
            .map(|r| Value::Array(r.iter().map(|c| json!(c.to_string())).collect()))
            .collect();
        json[if matrix { "matrix" } else { "inverse" }] = Value::Array(entries);
    } else {
        let funcs: Vec<(AffinePermutation, bruhat_core::Sym)> = km
            .columns
            .par_iter()
            .map(|u| kschur_in_h(u).map(|s| (u.clone(), s)))
            .collect::<Result<_, _>>()?;
        let mut values = Vec::new();
        for ((u, s), lambda) in funcs.iter().zip(&km.rows) {
            text.push(format!("S_{u} (k-bounded ({lambda})) = {s}"));
            values.push(json!({ "u": u.window(), "k_bounded": lambda.parts(), "h": s.to_json() }));
        }
        json["functions"] = Value::Array(values);
    }
    Ok(Output { text, json })
}

fn core(k: usize, u: Option<&str>, mu: Option<&str>) -> Result<Output, Error> {
    let (w, c) = match (u, mu) {
        (Some(u), _) => {
            let w = window(k, u)?;
            let c = w.to_core()?;
            (w, c)
        }
        (None, Some(mu)) => {
            let p: Partition = mu.parse()?;
            let c = CorePartition::new(p.clone(), k + 1)?;
            (from_core(&p, k)?, c)
        }
        _ => return Err(Error::Parse("give --u or --mu".into())),
    };
    let text = vec![
        format!("window: {w}"),
        format!("{c}"),
        format!("k-bounded: ({})", c.k_bounded()),
    ];
    let json = json!({
        "k": k, "window": w.window(), "core": c.partition.parts(),
        "modulus": c.modulus, "k_bounded": c.k_bounded().parts(),
    });
    Ok(Output { text, json })
}

fn embed(
    args: &IntervalArgs,
    k: Option<usize>,
    verify: bool,
    limits: &Limits,
) -> Result<Output, Error> {
    let (x, y, r) = interval(args)?;
    let e = build_embedding_with_k(&x, &y, r, k)?;
    let first = first_chain(&x, &y, r)?;
    let path = map_chain(&first, &e).ok_or(Error::EmptyInterval)?;
    let u_prime = format!(
        "[{}]",
        e.u_prime
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(",")
    );
    let mapped: Vec<String> = path
        .edges
        .iter()
        .map(|t| format!("t({},{})", t.a, t.b))
        .collect();
    let mut text = vec![
        format!("x = {x}"),
        format!("y = {y}"),
        format!("r = {r}"),
        format!("k = {}, s = {}", e.k, e.s),
        format!("u' = {u_prime}"),
        format!("u = {}", e.u),
        format!("v = {}", e.v),
        format!("first chain: {}", first.render_steps()),
        format!("image:       {}", mapped.join(" ")),
    ];
    let mut json = json!({
        "x": x.images(), "y": y.images(), "r": r, "k": e.k, "s": e.s,
        "u_prime": e.u_prime, "u": e.u.window(), "v": e.v.window(),
        "first_chain": first.render_steps(), "image": mapped.join(" "),
    });
    if verify {
        let report = verify_embedding(&e, limits)?;
        text.push(format!(
            "verification: {}",
            if report.passed() { "passed" } else { "FAILED" }
        ));
        text.extend(report_text(&report));
        json["verification"] = report_json(&report);
    }
    Ok(Output { text, json })
}

fn relations(max_k: usize, trials: usize, names: &[String], seed: u64) -> Result<Output, Error> {
    let rules: Vec<AffineRule> = if names.is_empty() {
        AffineRule::ALL.to_vec()
    } else {
        names.iter().map(|n| n.parse()).collect::<Result<_, _>>()?
    };
    let summaries: Vec<_> = rules
        .par_iter()
        .map(|&rule| (rule, sweep_relation(rule, max_k, trials, seed)))
        .collect();
    let mut text = vec![format!(
        "{:<4} {:>7} {:>10} {:>8}  witness",
        "rule", "trials", "nontrivial", "failures"
    )];
    let mut values = Vec::new();
    for (rule, s) in &summaries {
        let witness = s.witness.as_ref().map(|(u, letters)| {
            let ls: Vec<String> = letters.iter().map(|(a, b)| format!("t({a},{b})")).collect();
            format!("{u} {}", ls.join(" "))
        });
        text.push(format!(
            "{:<4} {:>7} {:>10} {:>8}  {}",
            rule.to_string(),
            s.trials,
            s.nontrivial,
            s.failures,
            witness.clone().unwrap_or_else(|| "-".into())
        ));
        values.push(json!({
            "rule": rule.to_string(), "trials": s.trials, "nontrivial": s.nontrivial,
            "failures": s.failures, "witness": witness, "all_words_nonzero": s.all_words_nonzero,
        }));
    }
    Ok(Output {
        text,
        json: json!({ "max_k": max_k, "seed": seed, "rules": values }),
    })
}

fn merge(into: &mut Value, from: Value) {
    if let (Value::Object(a), Value::Object(b)) = (into, from) {
        a.extend(b);
    }
}
