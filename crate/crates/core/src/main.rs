use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};

use parcolor::bench::{
    emit_results, run_benchmark, timed_run, Algorithm, BenchConfig, InputSource, MonotonicClock,
    OutputFormat,
};
use parcolor::coloring::write_coloring;
use parcolor::{
    count_colors, partition_uniform, round_trace, verify_coloring, Error, SyntheticSpec,
};

/// Shared-memory parallel graph coloring.
#[derive(Parser)]
#[command(name = "parcolor", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Time an algorithm over a sweep of thread counts.
    ///
    /// Thread counts above the number of hardware threads measure
    /// oversubscription rather than parallel speedup.
    Bench(BenchArgs),
    /// Color a graph once and write `vertex_id color` lines.
    Color(ColorArgs),
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Source {
    /// Edge-list file (SNAP format: `#` comments, one `u v` pair per line).
    #[arg(long, value_name = "PATH")]
    input: Option<PathBuf>,

    /// Synthetic graph as kind:params:seed, e.g. gnp:5000,0.004:1.
    /// Kinds: path:N, cycle:N, complete:N, bipartite:A,B, gnp:N,PROB.
    #[arg(long, value_name = "SPEC")]
    synthetic: Option<SyntheticSpec>,
}

impl Source {
    fn into_input(self) -> InputSource {
        match (self.input, self.synthetic) {
            (Some(path), _) => InputSource::File(path),
            (None, Some(spec)) => InputSource::Synthetic(spec),
            (None, None) => unreachable!("clap enforces one source"),
        }
    }
}

#[derive(Args)]
struct BenchArgs {
    #[command(flatten)]
    source: Source,

    #[arg(long, value_enum)]
    algo: Algorithm,

    /// Comma-separated thread counts.
    #[arg(long, value_delimiter = ',', default_value = "1")]
    threads: Vec<usize>,

    #[arg(long, default_value_t = 10)]
    reps: usize,

    /// Check every coloring; a conflict aborts with a nonzero exit.
    #[arg(long)]
    verify: bool,

    /// Skip the sequential baseline used for the speedup column.
    #[arg(long)]
    no_baseline: bool,

    /// Output file; stdout when omitted.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,

    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    format: OutputFormat,
}

#[derive(Args)]
struct ColorArgs {
    #[command(flatten)]
    source: Source,

    #[arg(long, value_enum, default_value_t = Algorithm::Fine)]
    algo: Algorithm,

    #[arg(long, default_value_t = 1)]
    threads: usize,

    #[arg(long)]
    verify: bool,

    /// Coloring file; stdout when omitted.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,

    /// Barrier only: write a per-round `round thread work recolor` log.
    #[arg(long, value_name = "PATH")]
    trace: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Bench(args) => bench(args),
        Command::Color(args) => color(args),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            if let Some(Error::VerificationFailed { conflicts, .. }) = err.downcast_ref::<Error>() {
                eprintln!("error: {err}");
                for (u, v) in &conflicts.conflicts {
                    eprintln!("conflict {u} {v}");
                }
                ExitCode::from(2)
            } else {
                eprintln!("error: {err:#}");
                ExitCode::FAILURE
            }
        }
    }
}

fn open_output(path: Option<&Path>) -> anyhow::Result<Box<dyn Write>> {
    Ok(match path {
        Some(path) => Box::new(BufWriter::new(
            File::create(path).with_context(|| format!("creating {}", path.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn bench(args: BenchArgs) -> anyhow::Result<()> {
    let cfg = BenchConfig {
        input: args.source.into_input(),
        algorithm: args.algo,
        threads: args.threads,
        repetitions: args.reps,
        verify: args.verify,
        baseline: !args.no_baseline,
    };
    let results = run_benchmark(&cfg)?;
    for r in &results {
        eprintln!(
            "{} p={} mean={:.6}s colors={}{}",
            r.algorithm,
            r.p,
            r.mean_time_s,
            r.max_colors(),
            r.speedup
                .map(|s| format!(" speedup={s:.3}"))
                .unwrap_or_default()
        );
    }
    let mut out = open_output(args.out.as_deref())?;
    out.write_all(&emit_results(&results, args.format)?)?;
    out.flush()?;
    Ok(())
}

fn color(args: ColorArgs) -> anyhow::Result<()> {
    let g = args.source.into_input().load()?;
    let (coloring, elapsed, rounds) =
        timed_run(&g, args.algo, args.threads, &MonotonicClock::default())?;

    if args.verify {
        let report = verify_coloring(&g, &coloring)?;
        if !report.is_empty() {
            return Err(Error::VerificationFailed {
                algorithm: args.algo.name().to_owned(),
                threads: args.threads,
                conflicts: report,
            }
            .into());
        }
    }
    if let Some(path) = &args.trace {
        anyhow::ensure!(
            args.algo == Algorithm::Barrier,
            "--trace needs --algo barrier"
        );
        let part = partition_uniform(&g, args.threads)?;
        let trace = round_trace(&g, &part)?;
        trace.write_log(open_output(Some(path))?)?;
    }

    eprintln!(
        "{} vertices, {} edges, max degree {}; {} p={}: {} colors in {:.6}s{}",
        g.vertex_count(),
        g.edge_count(),
        g.max_degree(),
        args.algo,
        args.threads,
        count_colors(&coloring),
        elapsed.as_secs_f64(),
        rounds.map(|r| format!(", {r} rounds")).unwrap_or_default()
    );
    write_coloring(&g, &coloring, open_output(args.out.as_deref())?)?;
    Ok(())
}
