use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use pfaff_core::bwb::bwb;
use pfaff_core::partition::{mult_with, MultMethod};
use pfaff_core::phi::analyze_phi;
use pfaff_core::schur::{pieri, plethysm_sym_wedge2, weyl_dim};
use pfaff_core::suite::{PartSelection, SuiteError};
use pfaff_core::{
    emit, run_suite, GradedRep, OutputFormat, Partition, PhiSpec, Report, SchurMultiset,
    ShiftConvention, SuiteConfig, SuiteName, Weight,
};

#[derive(Parser)]
#[command(name = "pfaff", version, about = "Checks semiorthogonality claims on X₁ by exact computation")]
struct Cli {
    /// Output format: text, json or csv.
    #[arg(long, global = true, default_value = "text")]
    format: String,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Number of even-column subdiagrams μ ⊂ λ with λ/μ a vertical k-strip.
    Mult {
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        /// Single argument; all k ≤ ht(λ) when omitted.
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        enumerate: bool,
    },
    /// Λ^k ⊗ Σ^μ truncated to a rank.
    Pieri {
        #[arg(long, allow_hyphen_values = true)]
        mu: String,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        max_rows: usize,
    },
    /// Sym^m(Λ²) truncated to a rank.
    Plethysm {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        max_rows: usize,
    },
    /// Cohomology of Σ^λU^∨ ⊗ Σ^μQ^∨ on Gr(k, N).
    Bwb {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, allow_hyphen_values = true)]
        u: String,
        #[arg(long, allow_hyphen_values = true)]
        q: String,
    },
    /// Exact rank, kernel and cokernel of φ_{n,i,m} on a space of dimension N.
    PhiAnalyze {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        i: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        dim: usize,
    },
    /// Run a verification suite.
    Verify {
        suite: String,
        #[command(flatten)]
        opts: SuiteOpts,
    },
    /// Run an exploration sweep.
    Explore {
        #[command(subcommand)]
        target: ExploreTarget,
    },
    /// Re-emit a saved JSON report.
    Report {
        file: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum ExploreTarget {
    /// Euler table of the conjectured collection on X₂.
    X2 {
        #[command(flatten)]
        opts: SuiteOpts,
    },
}

#[derive(Args)]
struct SuiteOpts {
    #[arg(long)]
    n: Option<usize>,
    /// 1, 2, 3 or all.
    #[arg(long, default_value = "all")]
    part: String,
    /// reldim or paperdim.
    #[arg(long, default_value = "reldim")]
    shift_convention: String,
    /// Width of the twist window for p1lemma.
    #[arg(long)]
    kmax: Option<usize>,
    #[arg(long)]
    max_boxes: Option<usize>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Worker threads; 0 uses every core.
    #[arg(long, default_value_t = 0)]
    jobs: usize,
    #[arg(long)]
    large: bool,
    /// Write the report here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Failed(String),
}

impl From<SuiteError> for CliError {
    fn from(e: SuiteError) -> Self {
        match e {
            SuiteError::Usage(m) => CliError::Usage(m),
            other => CliError::Failed(other.to_string()),
        }
    }
}

fn usage(e: impl ToString) -> CliError {
    CliError::Usage(e.to_string())
}

fn failed(e: impl ToString) -> CliError {
    CliError::Failed(e.to_string())
}

fn parse_ints(s: &str) -> Result<Vec<i64>, CliError> {
    let t = s.trim().trim_start_matches(['[', '(']).trim_end_matches([']', ')']);
    t.split(',')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(|p| p.parse::<i64>().map_err(|e| usage(format!("bad integer {p:?}: {e}"))))
        .collect()
}

fn parse_partition(s: &str) -> Result<Partition, CliError> {
    let v = parse_ints(s)?;
    let rows = v
        .into_iter()
        .map(|x| u32::try_from(x).map_err(|_| usage(format!("negative part {x}"))))
        .collect::<Result<Vec<u32>, _>>()?;
    Partition::new(rows).map_err(usage)
}

fn json<T: serde::Serialize>(v: &T) -> Result<String, CliError> {
    serde_json::to_string_pretty(v).map(|s| s + "\n").map_err(failed)
}

fn multiset_out(m: &SchurMultiset, format: OutputFormat) -> Result<String, CliError> {
    let n = m.len();
    Ok(match format {
        OutputFormat::Json => json(m)?,
        OutputFormat::Csv => {
            let mut s = String::from("weight,mult,dim\n");
            for (w, c) in m.iter() {
                s.push_str(&format!("\"{w}\",{c},{}\n", weyl_dim(w, n)));
            }
            s
        }
        OutputFormat::Text => {
            let mut s = String::new();
            for (w, c) in m.iter() {
                s.push_str(&format!("{w}  mult {c}  dim {}\n", weyl_dim(w, n)));
            }
            s.push_str(&format!("terms {}  total dim {}\n", m.num_terms(), m.dim()));
            s
        }
    })
}

fn suite_config(suite: SuiteName, o: &SuiteOpts) -> Result<SuiteConfig, CliError> {
    let mut c = SuiteConfig::new(suite);
    if let Some(n) = o.n {
        c.n = vec![n];
    }
    c.part = o.part.parse::<PartSelection>()?;
    c.shift = o.shift_convention.parse::<ShiftConvention>().map_err(usage)?;
    c.kmax = o.kmax;
    if let Some(b) = o.max_boxes {
        c.max_boxes = b;
    }
    if let Some(m) = o.m {
        c.max_m = m;
    }
    if let Some(s) = o.samples {
        c.samples = s;
    }
    if let Some(s) = o.seed {
        c.seed = s;
    }
    c.jobs = o.jobs;
    c.large = o.large;
    Ok(c)
}

fn write_out(text: &str, output: &Option<PathBuf>) -> Result<(), CliError> {
    match output {
        Some(p) => fs::write(p, text).map_err(failed),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run_report(config: SuiteConfig, format: OutputFormat, output: &Option<PathBuf>) -> Result<ExitCode, CliError> {
    let report = run_suite(&config)?;
    write_out(&emit(&report, format)?, output)?;
    eprintln!(
        "{}: {} records in {:.2?}",
        report.suite,
        report.summary.total,
        report.wall_clock
    );
    Ok(ExitCode::from(report.exit_code() as u8))
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    let format: OutputFormat = cli.format.parse()?;
    match cli.command {
        Command::Mult { lambda, k, enumerate } => {
            let lambda = parse_partition(&lambda)?;
            let method = if enumerate {
                MultMethod::Enumerate
            } else {
                MultMethod::Profile
            };
            let ks: Vec<usize> = match k {
                Some(k) => vec![k],
                None => (0..=lambda.height()).collect(),
            };
            let vals: Vec<(usize, u64)> = ks.iter().map(|&k| (k, mult_with(&lambda, k, method))).collect();
            let text = match format {
                OutputFormat::Json => json(&serde_json::json!({
                    "lambda": lambda,
                    "values": vals.iter().map(|(k, v)| serde_json::json!({"k": k, "mult": v})).collect::<Vec<_>>(),
                }))?,
                OutputFormat::Csv => {
                    let mut s = String::from("k,mult\n");
                    for (k, v) in &vals {
                        s.push_str(&format!("{k},{v}\n"));
                    }
                    s
                }
                OutputFormat::Text => vals.iter().map(|(k, v)| format!("mult({lambda}, {k}) = {v}\n")).collect(),
            };
            print!("{text}");
        }
        Command::Pieri { mu, k, max_rows } => {
            let mu = parse_partition(&mu)?;
            print!("{}", multiset_out(&pieri(&mu, k, max_rows), format)?);
        }
        Command::Plethysm { m, max_rows } => {
            print!("{}", multiset_out(&plethysm_sym_wedge2(m, max_rows), format)?);
        }
        Command::Bwb { n, k, u, q } => {
            let u = Weight::new(parse_ints(&u)?).map_err(usage)?;
            let q = Weight::new(parse_ints(&q)?).map_err(usage)?;
            let res = bwb(n, k, &u, &q).map_err(usage)?;
            let graded = match &res {
                Some((d, w)) => GradedRep::concentrated(*d as i64, SchurMultiset::singleton(w.clone())),
                None => GradedRep::zero(n),
            };
            let text = match (format, &res) {
                (OutputFormat::Json, _) => json(&graded)?,
                (OutputFormat::Csv, Some((d, w))) => {
                    format!("degree,weight,dim\n{d},\"{w}\",{}\n", weyl_dim(w, n))
                }
                (OutputFormat::Csv, None) => "degree,weight,dim\n".into(),
                (OutputFormat::Text, Some((d, w))) => {
                    format!("degree {d}  weight {w}  dim {}\n", weyl_dim(w, n))
                }
                (OutputFormat::Text, None) => "acyclic\n".into(),
            };
            print!("{text}");
        }
        Command::PhiAnalyze { n, i, m, dim } => {
            let spec = PhiSpec::new(n, i, m, dim).map_err(usage)?;
            let a = analyze_phi(&spec).map_err(failed)?;
            let text = match format {
                OutputFormat::Json => json(&a)?,
                OutputFormat::Csv => {
                    let mut s = String::from("part,weight,mult\n");
                    for (part, ms) in [("ker", &a.ker_char), ("coker", &a.coker_char)] {
                        for (w, c) in ms.iter() {
                            s.push_str(&format!("{part},\"{w}\",{c}\n"));
                        }
                    }
                    s
                }
                OutputFormat::Text => {
                    let mut s = format!(
                        "φ_{{{n},{i},{m}}} at N = {dim}: rank {}  domain {}  codomain {}\n",
                        a.rank, a.domain_dim, a.codomain_dim
                    );
                    s.push_str(&format!("ker ({}): {}\n", a.ker_dim(), a.ker_char));
                    s.push_str(&format!("coker ({}): {}\n", a.coker_dim(), a.coker_char));
                    s
                }
            };
            print!("{text}");
        }
        Command::Verify { suite, opts } => {
            let name: SuiteName = suite.parse()?;
            return run_report(suite_config(name, &opts)?, format, &opts.output);
        }
        Command::Explore {
            target: ExploreTarget::X2 { opts },
        } => {
            return run_report(suite_config(SuiteName::X2Explore, &opts)?, format, &opts.output);
        }
        Command::Report { file, output } => {
            let text = fs::read_to_string(&file).map_err(failed)?;
            let report: Report = serde_json::from_str(&text).map_err(failed)?;
            write_out(&emit(&report, format)?, &output)?;
            return Ok(ExitCode::from(report.exit_code() as u8));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => e.exit(),
    };
    match run(cli) {
        Ok(code) => code,
        Err(CliError::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(CliError::Failed(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
    }
}
