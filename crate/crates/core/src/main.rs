use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use braidgen::certify::{
    build_certificate, build_rewrite_certificate, emit_json, parse_json, verify_certificate,
    Certificate, VerificationReport,
};
use braidgen::rewrite::{
    admissible_ks, rewrite_full, sigma1_decomposition, two_generator_factor, RewriteParams,
    Sigma1Letter,
};
use braidgen::slp::TwoGenSlp;
use braidgen::suite::{run_suite, tasks_for, SuiteConfig};
use braidgen::{equal, normal_form, BraidError, BraidWord, LkOracle, Sign};

const VERIFIED: u8 = 0;
const DISPROVED: u8 = 1;
const USAGE: u8 = 2;

#[derive(Parser)]
#[command(name = "braidgen", version, about = "Braid group word problem and commutator-subgroup rewriting")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads (0 = one per core).
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
    /// Seed for randomized cases.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Largest two-letter program that may be expanded.
    #[arg(long, global = true, default_value_t = 1_000_000)]
    max_flat_len: u128,
    /// Longest reduced word the Lawrence-Krammer oracle accepts.
    #[arg(long, global = true, default_value_t = braidgen::lk::DEFAULT_LK_BOUND)]
    lk_bound: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Print the left normal form of a word.
    Nf {
        #[arg(long)]
        n: usize,
        /// Word such as "1 2^-1 3", or @path.
        #[arg(allow_hyphen_values = true)]
        word: String,
    },
    /// Exit 0 if the two words are the same braid, 1 otherwise.
    Eq {
        #[arg(long)]
        n: usize,
        #[arg(allow_hyphen_values = true)]
        word1: String,
        #[arg(allow_hyphen_values = true)]
        word2: String,
        /// Also decide with the Lawrence-Krammer oracle.
        #[arg(long)]
        lk: bool,
    },
    /// Factor σ₁σᵢ⁻¹ or a commutator-subgroup word over the two generators r, s.
    Rewrite {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: i64,
        #[arg(long, conflicts_with = "word", required_unless_present = "word")]
        target: Option<i64>,
        #[arg(long, allow_hyphen_values = true)]
        word: Option<String>,
        /// Where to write the certificate JSON.
        #[arg(long)]
        cert_out: Option<PathBuf>,
    },
    /// Factor any exponent-sum-zero word over σ₁σₓ⁻¹ (and over r, s when --k is given).
    RewriteAny {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: Option<i64>,
        #[arg(long, allow_hyphen_values = true)]
        word: String,
        #[arg(long)]
        cert_out: Option<PathBuf>,
    },
    /// Verify a certificate file.
    Certify {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Run the identity battery.
    Suite {
        #[arg(long, required_unless_present = "all_small", conflicts_with = "all_small")]
        n: Option<usize>,
        /// Every strand count from 3 to 8.
        #[arg(long)]
        all_small: bool,
        /// Randomized cases per randomized check.
        #[arg(long, default_value_t = 100)]
        cases: usize,
    },
    /// Normal-form timing table on random words.
    Bench {
        #[arg(long, default_value_t = 7)]
        n: usize,
        #[arg(long, value_delimiter = ',', default_value = "1000,10000,100000")]
        lengths: Vec<usize>,
    },
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Disproved,
}

impl From<BraidError> for Failure {
    fn from(e: BraidError) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter("BRAIDGEN_LOG")).init();
    let cli = Cli::parse();
    if cli.global.jobs > 0 {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(cli.global.jobs)
            .build_global()
        {
            log::warn!("could not size the thread pool: {e}");
        }
    }
    match run(&cli) {
        Ok(()) => ExitCode::from(VERIFIED),
        Err(Failure::Disproved) => ExitCode::from(DISPROVED),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(USAGE)
        }
    }
}

fn run(cli: &Cli) -> Outcome {
    let g = &cli.global;
    match &cli.command {
        Command::Nf { n, word } => cmd_nf(g, *n, word),
        Command::Eq { n, word1, word2, lk } => cmd_eq(g, *n, word1, word2, *lk),
        Command::Rewrite {
            n,
            k,
            target,
            word,
            cert_out,
        } => cmd_rewrite(g, *n, *k, *target, word.as_deref(), cert_out.clone()),
        Command::RewriteAny {
            n,
            k,
            word,
            cert_out,
        } => cmd_rewrite_any(g, *n, *k, word, cert_out.clone()),
        Command::Certify { input } => cmd_certify(g, input),
        Command::Suite {
            n,
            all_small,
            cases,
        } => cmd_suite(g, *n, *all_small, *cases),
        Command::Bench { n, lengths } => cmd_bench(g, *n, lengths),
    }
}

/// Word text, or the contents of a file when written `@path`.
fn read_word(n: usize, arg: &str) -> Result<BraidWord, Failure> {
    let text = match arg.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path)
            .map_err(|e| Failure::Usage(format!("cannot read {path}: {e}")))?,
        None => arg.to_string(),
    };
    Ok(BraidWord::parse(n, &text)?)
}

fn print_json(value: &serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(value).expect("json value"));
}

fn cmd_nf(g: &Global, n: usize, word: &str) -> Outcome {
    let w = read_word(n, word)?;
    let nf = normal_form(&w);
    if g.json {
        print_json(&json!({
            "n": n,
            "delta_power": nf.delta_power,
            "factors": nf.factors.iter().map(|f| f.one_line()).collect::<Vec<_>>(),
            "text": nf.to_string(),
        }));
    } else {
        println!("{nf}");
    }
    Ok(())
}

fn cmd_eq(g: &Global, n: usize, a: &str, b: &str, lk: bool) -> Outcome {
    let (a, b) = (read_word(n, a)?, read_word(n, b)?);
    let garside = equal(&a, &b)?;
    let lk_verdict = if lk {
        Some(LkOracle::new(g.lk_bound).equal(&a, &b)?)
    } else {
        None
    };
    if g.json {
        print_json(&json!({ "equal": garside, "lk": lk_verdict }));
    } else {
        println!("{}", if garside { "equal" } else { "not equal" });
        if let Some(v) = lk_verdict {
            println!("lk oracle: {}", if v { "equal" } else { "not equal" });
        }
    }
    if lk_verdict.is_some_and(|v| v != garside) {
        return Err(Failure::Usage("normal form and LK oracle disagree".into()));
    }
    if garside {
        Ok(())
    } else {
        Err(Failure::Disproved)
    }
}

fn write_certificate(cert: &Certificate, path: &PathBuf) -> Result<(), Failure> {
    std::fs::write(path, emit_json(cert))
        .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))
}

fn report_rewrite(
    g: &Global,
    slp: &TwoGenSlp,
    cert: &Certificate,
    path: &PathBuf,
    extra: serde_json::Value,
) -> Outcome {
    write_certificate(cert, path)?;
    let report = verify_certificate(cert);
    let flat = slp.flat_len();
    let direct = if flat <= g.max_flat_len {
        let target = &cert.conclusion.as_ref().expect("rewrite conclusion").target;
        Some(equal(&slp.artin_expansion(g.max_flat_len)?, target)?)
    } else {
        None
    };
    if g.json {
        print_json(&json!({
            "n": slp.params.n(),
            "k": slp.params.k(),
            "slp": slp.lines(),
            "flat_len": flat.to_string(),
            "certificate": path.display().to_string(),
            "verified": report.pass,
            "expanded_equal": direct,
            "extra": extra,
        }));
    } else {
        println!("{slp}");
        println!("flat length: {flat}");
        match direct {
            Some(v) => println!("expansion equals target: {v}"),
            None => println!("expansion skipped (flat length above {})", g.max_flat_len),
        }
        println!("certificate: {}", path.display());
        println!(
            "certificate {} ({} claims)",
            if report.pass { "verified" } else { "FAILED" },
            report.claims.len()
        );
    }
    if report.pass && direct != Some(false) {
        Ok(())
    } else {
        Err(Failure::Disproved)
    }
}

fn cmd_rewrite(
    g: &Global,
    n: usize,
    k: i64,
    target: Option<i64>,
    word: Option<&str>,
    cert_out: Option<PathBuf>,
) -> Outcome {
    let p = RewriteParams::new(n, k)?;
    let (slp, cert, default_name) = match (target, word) {
        (Some(i), _) => (
            two_generator_factor(p, i)?,
            build_certificate(p, i)?,
            format!("braidgen-n{n}-k{k}-target{i}.json"),
        ),
        (None, Some(word)) => {
            let w = read_word(n, word)?;
            (
                rewrite_full(p, &w)?,
                build_rewrite_certificate(p, &w)?,
                format!("braidgen-n{n}-k{k}-word.json"),
            )
        }
        (None, None) => return Err(Failure::Usage("give --target or --word".into())),
    };
    let path = cert_out.unwrap_or_else(|| PathBuf::from(default_name));
    report_rewrite(g, &slp, &cert, &path, serde_json::Value::Null)
}

fn format_sigma1(letters: &[Sigma1Letter]) -> String {
    letters
        .iter()
        .map(|l| match l.sign {
            Sign::Pos => format!("x{}", l.index),
            Sign::Neg => format!("x{}^-1", l.index),
        })
        .collect::<Vec<_>>()
        .join(" ")
}

fn cmd_rewrite_any(
    g: &Global,
    n: usize,
    k: Option<i64>,
    word: &str,
    cert_out: Option<PathBuf>,
) -> Outcome {
    let w = read_word(n, word)?;
    let letters = sigma1_decomposition(&w)?;
    let check = equal(&braidgen::rewrite::sigma1_word(n, &letters), &w)?;
    let text = format_sigma1(&letters);
    let Some(k) = k else {
        if g.json {
            print_json(&json!({
                "n": n,
                "sigma1_word": text,
                "letters": letters.len(),
                "equal": check,
                "admissible_k": admissible_ks(n),
            }));
        } else {
            println!("xj = s1 sj^-1");
            println!("{text}");
            println!("{} letters; product equals input: {check}", letters.len());
        }
        return if check { Ok(()) } else { Err(Failure::Disproved) };
    };
    let p = RewriteParams::new(n, k)?;
    let slp = rewrite_full(p, &w)?;
    let cert = build_rewrite_certificate(p, &w)?;
    if !g.json {
        println!("xj = s1 sj^-1: {text}");
    }
    let path = cert_out.unwrap_or_else(|| PathBuf::from(format!("braidgen-n{n}-k{k}-word.json")));
    let outcome = report_rewrite(g, &slp, &cert, &path, json!({ "sigma1_word": text }));
    if !check {
        return Err(Failure::Disproved);
    }
    outcome
}

fn print_report(g: &Global, report: &VerificationReport) {
    if g.json {
        print_json(&serde_json::to_value(report).expect("report serializes"));
        return;
    }
    for c in &report.claims {
        println!(
            "{} claim {:>3} {:<14} lhs {:>6} rhs {:>6} {:>9} us{}",
            if c.pass { "PASS" } else { "FAIL" },
            c.index,
            c.rule.tag(),
            c.lhs_len,
            c.rhs_len,
            c.micros,
            c.note.as_ref().map(|s| format!("  ({s})")).unwrap_or_default()
        );
    }
    for e in &report.structure_errors {
        println!("FAIL structure: {e}");
    }
    println!(
        "certificate {} in {} ms",
        if report.pass { "verified" } else { "FAILED" },
        report.micros / 1000
    );
}

fn cmd_certify(g: &Global, input: &PathBuf) -> Outcome {
    let text = std::fs::read_to_string(input)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", input.display())))?;
    let cert = parse_json(&text)?;
    let report = verify_certificate(&cert);
    print_report(g, &report);
    if report.pass {
        Ok(())
    } else {
        Err(Failure::Disproved)
    }
}

fn cmd_suite(g: &Global, n: Option<usize>, all_small: bool, cases: usize) -> Outcome {
    let ns: Vec<usize> = match n {
        Some(n) if !(2..=braidgen::word::MAX_STRANDS).contains(&n) => {
            return Err(Failure::Usage(format!("unsupported strand count {n}")))
        }
        Some(n) => vec![n],
        None if all_small => (3..=8).collect(),
        None => return Err(Failure::Usage("give --n or --all-small".into())),
    };
    let cfg = SuiteConfig {
        seed: g.seed,
        lk_bound: g.lk_bound,
        max_flat_len: g.max_flat_len,
        cases,
    };
    let tasks: Vec<_> = ns.iter().flat_map(|&n| tasks_for(n)).collect();
    let start = Instant::now();
    let results = run_suite(&tasks, &cfg);
    let pass = results.iter().all(|r| r.pass);
    if g.json {
        print_json(&json!({ "pass": pass, "checks": results }));
    } else {
        for r in &results {
            println!(
                "{} {:<44} {:>9} ms  {}",
                if r.pass { "PASS" } else { "FAIL" },
                r.name,
                r.micros / 1000,
                r.detail
            );
        }
        println!(
            "{}/{} checks passed in {:.1} s",
            results.iter().filter(|r| r.pass).count(),
            results.len(),
            start.elapsed().as_secs_f64()
        );
    }
    if pass {
        Ok(())
    } else {
        Err(Failure::Disproved)
    }
}

fn cmd_bench(g: &Global, n: usize, lengths: &[usize]) -> Outcome {
    if !(2..=braidgen::word::MAX_STRANDS).contains(&n) {
        return Err(Failure::Usage(format!("unsupported strand count {n}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(g.seed);
    let mut rows = Vec::new();
    for &len in lengths {
        let w = braidgen::random::random_word(&mut rng, n, len);
        let start = Instant::now();
        let nf = normal_form(&w);
        let secs = start.elapsed().as_secs_f64();
        log::info!("n={n} len={len}: {secs:.3} s");
        rows.push((len, secs, nf.delta_power, nf.canonical_length()));
    }
    if g.json {
        let rows: Vec<_> = rows
            .iter()
            .map(|&(len, secs, p, l)| {
                json!({ "length": len, "seconds": secs, "delta_power": p, "canonical_length": l })
            })
            .collect();
        print_json(&json!({ "n": n, "rows": rows }));
    } else {
        println!("{:>10} {:>12} {:>10} {:>10}", "length", "seconds", "delta", "factors");
        for (len, secs, p, l) in rows {
            println!("{len:>10} {secs:>12.4} {p:>10} {l:>10}");
        }
    }
    Ok(())
}
