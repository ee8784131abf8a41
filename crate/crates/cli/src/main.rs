//! `unknot-foliate`: unknot recognition by enumeration of braid-foliated
//! spanning discs, plus direct access to the underlying operations.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rand::{rngs::SmallRng, Rng, SeedableRng};
use unknot_core::enumerate::{enumerate_complexity, write_layer, Complexity};
use unknot_core::garside::{
    conjugate_test, summit_element, NormalForm, SuperSummitSet, DEFAULT_SUMMIT_CAP,
};
use unknot_core::halting::HaltingBound;
use unknot_core::recognize::{recognize_with, Certificate, Input, RecognizeOptions, Verdict};
use unknot_core::vogel::{seifert_smooth, vogel_trace, KnotDiagram};
use unknot_core::{BandLetter, BraidWord, Sign};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Structured,
}

#[derive(Debug, Parser)]
#[command(name = "unknot-foliate", version, about)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Largest vertex count searched by `recognize`.
    #[arg(long, global = true, default_value_t = 8)]
    cutoff: usize,
    /// Disc cache directory (layout `n<N>/v<V>/<signature>.disc`).
    #[arg(long, global = true)]
    cache: Option<PathBuf>,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Replay the certificate checks after `recognize`, or check a
    /// certificate file given as the input.
    #[arg(long, global = true)]
    verify: bool,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Debug, Subcommand)]
enum Cmd {
    /// Search for a spanning disc of a knot given as a braid word or PD code.
    Recognize {
        /// Braid word (`n=3; a(2,1) s2^-1`), PD code, or a file holding one.
        input: String,
        /// Treat the input as a PD code.
        #[arg(long)]
        pd: bool,
        /// Also write the certificate to this file.
        #[arg(long)]
        certificate: Option<PathBuf>,
    },
    /// Enumerate discs of braid index N up to V_MAX vertices into the cache.
    Enumerate { n: usize, v_max: usize },
    /// Left canonical form and summit data of a braid word.
    Canon { word: String },
    /// Conjugacy test of two braid words.
    Conj {
        word1: String,
        word2: String,
        /// Also test this many random conjugates of the first word.
        #[arg(long, default_value_t = 0)]
        trials: usize,
    },
    /// Convert a PD code to a closed braid.
    Vogel { pd: String },
    /// Halting bound for `n=<N> k=<K>` or for a braid word.
    Bound { args: Vec<String> },
}

type Fallible<T> = Result<T, String>;

/// The argument itself, or the contents of the file it names.
fn read_arg(s: &str) -> Fallible<String> {
    let p = Path::new(s);
    if p.is_file() {
        fs::read_to_string(p).map_err(|e| format!("{s}: {e}"))
    } else {
        Ok(s.to_string())
    }
}

fn word(s: &str) -> Fallible<BraidWord> {
    let text = read_arg(s)?;
    text.trim().parse().map_err(|e| format!("{e}"))
}

fn json<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable")
}

fn cmd_recognize(cli: &Cli, input: &str, pd: bool, cert_path: Option<&Path>) -> Fallible<ExitCode> {
    let text = read_arg(input)?;
    if text.starts_with("unknot-certificate") {
        let cert = Certificate::from_text(&text).map_err(|e| e.to_string())?;
        cert.verify().map_err(|e| e.to_string())?;
        println!(
            "certificate OK: {} bounds a disc with (n, v) = ({}, {})",
            cert.input, cert.complexity.n, cert.complexity.v
        );
        return Ok(ExitCode::SUCCESS);
    }
    let input = if pd || text.contains("X[") {
        Input::Diagram(text.parse().map_err(|e| format!("{e}"))?)
    } else {
        Input::Word(text.trim().parse().map_err(|e| format!("{e}"))?)
    };
    let opts = RecognizeOptions {
        cutoff: cli.cutoff,
        cache_dir: cli.cache.clone(),
        summit_cap: DEFAULT_SUMMIT_CAP,
    };
    let verdict = recognize_with(&input, &opts, |c, count| {
        eprintln!("searched n={} v={}: {count} discs", c.n, c.v);
    })
    .map_err(|e| e.to_string())?;
    if let Verdict::Unknot(cert) = &verdict {
        if cli.verify {
            cert.verify().map_err(|e| e.to_string())?;
            eprintln!("certificate verified");
        }
        if let Some(p) = cert_path {
            fs::write(p, cert.to_text()).map_err(|e| format!("{}: {e}", p.display()))?;
        }
    }
    match cli.format {
        Format::Structured => println!("{}", json(&verdict)),
        Format::Text => match &verdict {
            Verdict::Unknot(cert) => {
                println!("UNKNOT");
                print!("{}", cert.to_text());
            }
            Verdict::NotFoundUpTo(v) => println!("NOT_FOUND_UP_TO {v}"),
            Verdict::Knotted { cutoff } => {
                println!("KNOTTED (searched to the halting bound, v = {cutoff})")
            }
        },
    }
    Ok(ExitCode::from(verdict.exit_code() as u8))
}

fn cmd_enumerate(cli: &Cli, n: usize, v_max: usize) -> Fallible<ExitCode> {
    if n == 0 || v_max < n {
        return Err(format!(
            "need 1 <= n <= v_max, got n = {n}, v_max = {v_max}"
        ));
    }
    let root = cli.cache.clone().unwrap_or_else(|| PathBuf::from("cache"));
    let mut summary = Vec::new();
    for v in (n..=v_max).step_by(2) {
        let c = Complexity { n, v };
        let discs = enumerate_complexity(c);
        let dir = write_layer(&root, c, &discs).map_err(|e| e.to_string())?;
        if cli.format == Format::Text {
            println!("n={n} v={v}: {} discs -> {}", discs.len(), dir.display());
        }
        summary.push((c, discs.len(), dir));
    }
    if cli.format == Format::Structured {
        let rows: Vec<serde_json::Value> = summary
            .iter()
            .map(|(c, k, d)| serde_json::json!({"n": c.n, "v": c.v, "discs": k, "dir": d.display().to_string()}))
            .collect();
        println!("{}", json(&rows));
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_canon(cli: &Cli, w: &str) -> Fallible<ExitCode> {
    let w = word(w)?;
    let nf = NormalForm::from_word(&w);
    let summit = summit_element(&nf);
    let sss = SuperSummitSet::from_summit(summit.clone(), DEFAULT_SUMMIT_CAP)
        .map_err(|e| e.to_string())?;
    match cli.format {
        Format::Text => {
            println!("input: {w}");
            println!("left canonical form: {nf}");
            println!("canonical word: {}", nf.to_word());
            println!(
                "inf = {}, sup = {}, canonical length = {}",
                nf.inf(),
                nf.sup(),
                nf.canonical_length()
            );
            println!("summit element: {summit}");
            println!(
                "super summit set: {} elements, inf = {}, sup = {}",
                sss.len(),
                sss.inf(),
                sss.sup()
            );
        }
        Format::Structured => println!(
            "{}",
            json(&serde_json::json!({
                "input": w.to_string(),
                "normal_form": nf.to_string(),
                "word": nf.to_word().to_string(),
                "inf": nf.inf(), "sup": nf.sup(),
                "summit": summit.to_string(),
                "super_summit_size": sss.len(),
            }))
        ),
    }
    Ok(ExitCode::SUCCESS)
}

fn random_word(rng: &mut SmallRng, n: usize, len: usize) -> BraidWord {
    let letters = (0..len)
        .map(|_| {
            let t = rng.gen_range(2..=n);
            let s = rng.gen_range(1..t);
            BandLetter::new(t, s, if rng.gen() { Sign::Pos } else { Sign::Neg })
        })
        .collect();
    BraidWord::new(n, letters).expect("indices in range")
}

fn cmd_conj(cli: &Cli, a: &str, b: &str, trials: usize) -> Fallible<ExitCode> {
    let (a, b) = (word(a)?, word(b)?);
    let result = conjugate_test(&a, &b, DEFAULT_SUMMIT_CAP).map_err(|e| e.to_string())?;
    let mut agree = 0;
    if trials > 0 {
        let mut rng = SmallRng::seed_from_u64(cli.seed);
        for _ in 0..trials {
            let g = if a.strands() > 1 {
                random_word(&mut rng, a.strands(), 8)
            } else {
                BraidWord::empty(1)
            };
            let ga = a.conjugated_by(&g).map_err(|e| e.to_string())?;
            if conjugate_test(&ga, &b, DEFAULT_SUMMIT_CAP).map_err(|e| e.to_string())? == result {
                agree += 1;
            }
        }
    }
    match cli.format {
        Format::Text => {
            println!("{result}");
            if trials > 0 {
                println!(
                    "random conjugates agreeing: {agree}/{trials} (seed {})",
                    cli.seed
                );
            }
        }
        Format::Structured => {
            println!(
                "{}",
                json(
                    &serde_json::json!({"conjugate": result, "trials": trials, "agreeing": agree})
                )
            )
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_vogel(cli: &Cli, pd: &str) -> Fallible<ExitCode> {
    let d: KnotDiagram = read_arg(pd)?.parse().map_err(|e| format!("{e}"))?;
    let circles = seifert_smooth(&d).map_err(|e| e.to_string())?.n();
    let t = vogel_trace(&d).map_err(|e| e.to_string())?;
    match cli.format {
        Format::Text => {
            println!("seifert circles: {circles}");
            println!("vogel moves: {}", t.moves.len());
            println!(
                "crossings: {} -> {}",
                t.initial_crossings,
                t.final_diagram.len()
            );
            println!("braid: {}", t.word);
        }
        Format::Structured => println!(
            "{}",
            json(&serde_json::json!({
                "circles": circles,
                "moves": t.moves.len(),
                "crossings_before": t.initial_crossings,
                "crossings_after": t.final_diagram.len(),
                "diagram": t.final_diagram.to_string(),
                "braid": t.word.to_string(),
            }))
        ),
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_bound(cli: &Cli, args: &[String]) -> Fallible<ExitCode> {
    let mut n = None;
    let mut k = None;
    for a in args {
        if let Some(x) = a.strip_prefix("n=").filter(|x| !x.contains(';')) {
            n = x.parse::<u64>().ok();
        } else if let Some(x) = a.strip_prefix("k=") {
            k = x.parse::<u64>().ok();
        }
    }
    let b = match (n, k) {
        (Some(n), Some(k)) => HaltingBound::new(n, k),
        _ => HaltingBound::of_word(&word(&args.join(" "))?),
    }
    .map_err(|e| e.to_string())?;
    match cli.format {
        Format::Text => {
            println!("n = {}, k = {}", b.n, b.artin_length);
            println!("t = {}", b.t);
            println!("v_max digits = {}", b.v_max_digits());
            println!("v_max = {}", b.v_max);
            println!("p_max = {}", b.p_max);
        }
        Format::Structured => println!("{}", json(&b)),
    }
    Ok(ExitCode::SUCCESS)
}

fn run(cli: &Cli) -> Fallible<ExitCode> {
    if let Some(j) = cli.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(j.max(1))
            .build_global()
            .map_err(|e| e.to_string())?;
    }
    match &cli.cmd {
        Cmd::Recognize {
            input,
            pd,
            certificate,
        } => cmd_recognize(cli, input, *pd, certificate.as_deref()),
        Cmd::Enumerate { n, v_max } => cmd_enumerate(cli, *n, *v_max),
        Cmd::Canon { word } => cmd_canon(cli, word),
        Cmd::Conj {
            word1,
            word2,
            trials,
        } => cmd_conj(cli, word1, word2, *trials),
        Cmd::Vogel { pd } => cmd_vogel(cli, pd),
        Cmd::Bound { args } => cmd_bound(cli, args),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
    }
}
