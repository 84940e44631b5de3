use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use ideal_points::{
    classify_all, cone_analysis, degeneration_vector, emit_report, equations_at_infinity,
    equations_at_infinity_in_chart, load_validated, quotient_by_weight_action, reduce, run_system,
    solve_at_infinity, trace_branch, DegenerationIndex, Error, IndexClassification, InputFormat,
    MonomialSystem, Options, ReducedSystem, ReportFormat, ScanConfig, TraceOptions,
};

const EXIT_OTHER: u8 = 1;
const EXIT_PARSE: u8 = 3;
const EXIT_VALIDATION: u8 = 4;
const EXIT_CAP: u8 = 5;

#[derive(Parser)]
#[command(name = "ideal-points", version, about = "Certify and count ideal points of deformation varieties from gluing equations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Input {
    /// Gluing-system file (.json or snap-style text).
    file: PathBuf,
    /// Input format; detected from the extension when omitted.
    #[arg(long, value_parser = parse_input_format)]
    input_format: Option<InputFormat>,
    /// Print elapsed wall time to stderr.
    #[arg(long)]
    timing: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full pipeline and print a report.
    Analyze {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = ScanConfig::DEFAULT_MAX_INDICES)]
        max_indices: u64,
        /// json, csv or markdown.
        #[arg(long, default_value = "json", value_parser = parse_report_format)]
        format: ReportFormat,
        /// Skip solving the equations at infinity.
        #[arg(long)]
        no_solve: bool,
        /// Trace each branch at this value of t.
        #[arg(long)]
        trace_t: Option<f64>,
    },
    /// Print the classification of every degeneration index.
    Indices {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = ScanConfig::DEFAULT_MAX_INDICES)]
        max_indices: u64,
        /// json, csv or markdown.
        #[arg(long, default_value = "json", value_parser = parse_report_format)]
        format: ReportFormat,
    },
    /// Cone analysis of one index.
    Cones {
        #[command(flatten)]
        input: Input,
        /// Index literal such as "1,0,inf".
        #[arg(long)]
        index: DegenerationIndex,
    },
    /// Equations at infinity of a certified index and their solutions.
    Infinity {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        index: DegenerationIndex,
        /// 1-based coordinate to set to 1; defaults to the largest weight.
        #[arg(long)]
        chart: Option<usize>,
    },
    /// Newton-correct each branch of a certified index at one value of t.
    Trace {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        index: DegenerationIndex,
        #[arg(long)]
        t: f64,
        #[arg(long)]
        chart: Option<usize>,
    },
}

fn parse_input_format(s: &str) -> Result<InputFormat, String> {
    s.parse()
}

fn parse_report_format(s: &str) -> Result<ReportFormat, String> {
    s.parse()
}

fn load(input: &Input) -> Result<ReducedSystem, Error> {
    let (sys, warnings) = load_validated(&input.file, input.input_format)?;
    for w in warnings {
        eprintln!("warning: {}: {w}", input.file.display());
    }
    Ok(reduce(&sys))
}

fn monomial_system(
    sys: &ReducedSystem,
    index: &DegenerationIndex,
    chart: Option<usize>,
) -> Result<MonomialSystem, Error> {
    let vector = degeneration_vector(sys, index)?;
    match chart {
        None => equations_at_infinity(sys, index, &vector),
        Some(0) => Err(Error::InvalidParameter("chart is 1-based".into())),
        Some(c) => equations_at_infinity_in_chart(sys, index, &vector, c - 1),
    }
}

fn to_json(value: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("output serializes");
    s.push('\n');
    s
}

fn indices_table(sys: &ReducedSystem, max_indices: u64, format: ReportFormat) -> Result<String, Error> {
    let entries = classify_all(sys, &ScanConfig { max_indices })?;
    let class = |c: &IndexClassification| match c {
        IndexClassification::Certified { .. } => "certified",
        IndexClassification::Candidate => "candidate",
        IndexClassification::Rejected => "rejected",
    };
    Ok(match format {
        ReportFormat::Json => {
            let rows: Vec<_> = entries
                .iter()
                .map(|e| {
                    json!({
                        "index": e.index,
                        "d": e.vector.render(),
                        "gcd": e.vector.gcd_value.to_string(),
                        "class": class(&e.classification),
                    })
                })
                .collect();
            to_json(&json!(rows))
        }
        ReportFormat::Csv => {
            let mut out = String::from("index,d,gcd,class\n");
            for e in &entries {
                out.push_str(&format!(
                    "\"{}\",\"{}\",{},{}\n",
                    e.index,
                    e.vector.render(),
                    e.vector.gcd_value,
                    class(&e.classification)
                ));
            }
            out
        }
        ReportFormat::Markdown => {
            let mut out = String::from("| index | d(I) | gcd | class |\n|---|---|---|---|\n");
            for e in &entries {
                out.push_str(&format!(
                    "| {} | {} | {} | {} |\n",
                    e.index.pretty(),
                    e.vector.render(),
                    e.vector.gcd_value,
                    class(&e.classification)
                ));
            }
            out
        }
    })
}

fn run(command: Command) -> Result<(String, bool, PathBuf), Error> {
    let (out, input) = match command {
        Command::Analyze {
            input,
            max_indices,
            format,
            no_solve,
            trace_t,
        } => {
            let sys = load_validated(&input.file, input.input_format)?;
            for w in &sys.1 {
                eprintln!("warning: {}: {w}", input.file.display());
            }
            let options = Options {
                max_indices,
                solve: !no_solve,
                trace_t,
                input_format: input.input_format,
                trace: TraceOptions::default(),
            };
            (emit_report(&run_system(&sys.0, &options)?, format), input)
        }
        Command::Indices {
            input,
            max_indices,
            format,
        } => (indices_table(&load(&input)?, max_indices, format)?, input),
        Command::Cones { input, index } => {
            let sys = load(&input)?;
            let vector = degeneration_vector(&sys, &index)?;
            let cone = cone_analysis(&sys, &index)?;
            let out = json!({ "index": index, "d": vector.render(), "cone": cone });
            (to_json(&out), input)
        }
        Command::Infinity { input, index, chart } => {
            let sys = load(&input)?;
            let msys = monomial_system(&sys, &index, chart)?;
            let solutions = solve_at_infinity(&msys)?;
            let reps = quotient_by_weight_action(&solutions, &msys)?;
            let out = json!({
                "index": index,
                "d": msys.vector.render(),
                "chart": msys.chart + 1,
                "exponents": msys.exponents.to_rows().iter()
                    .map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>())
                    .collect::<Vec<_>>(),
                "targets": msys.targets,
                "solutions": solutions,
                "orbit_representatives": reps,
            });
            (to_json(&out), input)
        }
        Command::Trace {
            input,
            index,
            t,
            chart,
        } => {
            let sys = load(&input)?;
            let msys = monomial_system(&sys, &index, chart)?;
            let solutions = solve_at_infinity(&msys)?;
            let reps = quotient_by_weight_action(&solutions, &msys)?;
            let traces = reps
                .iter()
                .map(|a| trace_branch(&sys, &msys, a, t, &TraceOptions::default()))
                .collect::<Result<Vec<_>, _>>()?;
            let out = json!({ "index": index, "chart": msys.chart + 1, "seeds": reps, "traces": traces });
            (to_json(&out), input)
        }
    };
    Ok((out, input.timing, input.file))
}

fn exit_code(err: &Error) -> u8 {
    match err {
        Error::Parse(_) => EXIT_PARSE,
        Error::Validation { .. } => EXIT_VALIDATION,
        Error::CapExceeded { .. } => EXIT_CAP,
        _ => EXIT_OTHER,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    match run(cli.command) {
        Ok((out, timing, path)) => {
            print!("{out}");
            if timing {
                eprintln!("{}: {:.3} s", path.display(), start.elapsed().as_secs_f64());
            }
            ExitCode::SUCCESS
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code(&err))
        }
    }
}
