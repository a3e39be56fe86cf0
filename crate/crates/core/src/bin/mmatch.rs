use std::io::Read;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use mmatch::io::{matroid_to_value, report_to_value, MatroidSpec};
use mmatch::matching::matroid_matched_with;
use mmatch::suite::{run_campaign, CampaignOptions, CampaignResult, CAMPAIGNS};
use mmatch::{Engine, Error, Matroid};

#[derive(Parser)]
#[command(
    name = "mmatch",
    version,
    about = "Matroids over abelian groups and their matchability"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Clone, Copy, ValueEnum)]
enum EngineArg {
    Auto,
    Brute,
    Intersection,
}

#[derive(Subcommand)]
enum Command {
    /// Build a matroid and print it as an explicit ground/bases document.
    Construct {
        /// Inline JSON, a file path, or `-` for stdin.
        input: String,
    },
    /// List the bases of a matroid as sets of group elements.
    Bases { input: String },
    /// Decide whether M is matched to N.
    Match {
        m: String,
        n: String,
        #[arg(long, value_enum, default_value_t = EngineArg::Auto)]
        engine: EngineArg,
    },
    /// Run a verification campaign (or `all`).
    Verify {
        campaign: String,
        #[command(flatten)]
        bounds: Bounds,
    },
    /// Reproduce the worked P_{3,4,5} and SM_5 examples.
    Examples,
}

#[derive(Args)]
struct Bounds {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Sample count for sampled campaigns.
    #[arg(long, default_value_t = 1000)]
    trials: usize,
    /// Largest ground size in exhaustive sweeps.
    #[arg(long, default_value_t = 7)]
    max_m: usize,
    /// Smallest rank in exhaustive sweeps.
    #[arg(long, default_value_t = 1)]
    min_n: usize,
    /// Modulus (Losonczy universe, small-sets prime, or paving-general group).
    #[arg(long = "mod")]
    modulus: Option<i64>,
    /// Largest subset size in the Losonczy sweep.
    #[arg(long)]
    max_size: Option<usize>,
    /// Also sweep a generator of Z/(2^31 - 1).
    #[arg(long)]
    with_torsion: bool,
}

enum Failed {
    /// Not matched, or a campaign found failures.
    Negative,
    Usage(String),
}

impl From<Error> for Failed {
    fn from(e: Error) -> Self {
        Failed::Usage(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failed::Negative) => ExitCode::from(1),
        Err(Failed::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<(), Failed> {
    match &cli.command {
        Command::Construct { input } => {
            let m = load(input)?;
            eprintln!(
                "rank {}, ground size {}, {} bases",
                m.rank(),
                m.ground().len(),
                m.bases().len()
            );
            match cli.format {
                Format::Json => print_json(&matroid_to_value(&m)),
                Format::Table => print_bases(&m),
            }
            Ok(())
        }
        Command::Bases { input } => {
            let m = load(input)?;
            match cli.format {
                Format::Json => {
                    let bases: Vec<Vec<Value>> = m
                        .bases()
                        .iter()
                        .map(|&b| m.elements_of(b).iter().map(|x| json!(x.coords())).collect())
                        .collect();
                    print_json(&json!(bases));
                }
                Format::Table => print_bases(&m),
            }
            Ok(())
        }
        Command::Match { m, n, engine } => {
            let m = load(m)?;
            let n = load(n)?;
            let engine = match engine {
                EngineArg::Auto => Engine::default(),
                EngineArg::Brute => Engine::BruteForce,
                EngineArg::Intersection => Engine::Intersection,
            };
            let report = matroid_matched_with(&m, &n, engine)?;
            match cli.format {
                Format::Json => print_json(&report_to_value(&report)),
                Format::Table => {
                    println!("matched: {}", report.matched);
                    if let Some(c) = report.counterexample {
                        println!("counterexample: {}", show_set(&m, c));
                    }
                    for w in report.witnesses() {
                        let pairs: Vec<String> = w
                            .pairs
                            .iter()
                            .map(|&(i, j)| format!("{} -> {}", m.ground()[i], n.ground()[j]))
                            .collect();
                        println!("{}  =>  {}", show_set(&m, w.source), pairs.join(", "));
                    }
                }
            }
            if report.matched {
                Ok(())
            } else {
                Err(Failed::Negative)
            }
        }
        Command::Verify { campaign, bounds } => {
            let opts = CampaignOptions {
                seed: bounds.seed,
                trials: bounds.trials,
                max_m: bounds.max_m,
                min_n: bounds.min_n,
                modulus: bounds.modulus,
                max_size: bounds.max_size,
                with_torsion: bounds.with_torsion,
            };
            let ids: Vec<&str> = if campaign == "all" {
                CAMPAIGNS.to_vec()
            } else {
                vec![campaign.as_str()]
            };
            let results = ids
                .iter()
                .map(|id| run_campaign(id, &opts))
                .collect::<mmatch::Result<Vec<_>>>()?;
            report_campaigns(cli.format, &results)
        }
        Command::Examples => {
            let results = vec![run_campaign("examples", &CampaignOptions::default())?];
            report_campaigns(cli.format, &results)
        }
    }
}

fn report_campaigns(format: Format, results: &[CampaignResult]) -> Result<(), Failed> {
    match format {
        Format::Json => {
            let value = match results {
                [one] => serde_json::to_value(one),
                many => serde_json::to_value(many),
            }
            .expect("campaign results serialize");
            print_json(&value);
        }
        Format::Table => {
            println!(
                "{:<22} {:>9} {:>8} {:>9} {:>10}",
                "campaign", "instances", "skipped", "failures", "elapsed_ms"
            );
            for r in results {
                println!(
                    "{:<22} {:>9} {:>8} {:>9} {:>10}",
                    r.campaign,
                    r.instances,
                    r.skipped,
                    r.failures.len(),
                    r.elapsed_ms
                );
            }
            for r in results {
                for note in &r.notes {
                    println!("note [{}]: {note}", r.campaign);
                }
                for f in r.failures.iter().take(5) {
                    println!("failure [{}]: {}", r.campaign, f.detail);
                }
                if r.failures.len() > 5 {
                    println!(
                        "failure [{}]: ... {} more",
                        r.campaign,
                        r.failures.len() - 5
                    );
                }
            }
        }
    }
    if results.iter().all(CampaignResult::passed) {
        Ok(())
    } else {
        Err(Failed::Negative)
    }
}

fn load(input: &str) -> Result<Matroid, Failed> {
    let text = if input == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| Failed::Usage(format!("reading stdin: {e}")))?;
        buf
    } else if input.trim_start().starts_with('{') {
        input.to_string()
    } else {
        std::fs::read_to_string(input).map_err(|e| Failed::Usage(format!("{input}: {e}")))?
    };
    Ok(MatroidSpec::from_json(&text)?.build()?)
}

fn show_set(m: &Matroid, set: mmatch::IndexSet) -> String {
    let items: Vec<String> = m.elements_of(set).iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", items.join(", "))
}

fn print_bases(m: &Matroid) {
    for &b in m.bases() {
        println!("{}", show_set(m, b));
    }
}

fn print_json(value: &Value) {
    println!(
        "{}",
        serde_json::to_string_pretty(value).expect("JSON values serialize")
    );
}
