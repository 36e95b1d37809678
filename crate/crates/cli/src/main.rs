use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use qfesim::cosim::{cosimulate, CheckOptions};
use qfesim::workloads::{run_bench, Suite, BENCH_HEADER};
use qfesim::{parse_circuit, Circuit};

#[derive(Parser)]
#[command(name = "qfesim", version, about = "Sparse stabiliser state simulator")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Sample measurement records.
    Run {
        circuit: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        shots: u64,
        /// Write records here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Worker threads (defaults to available parallelism).
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Exact Z-basis probability of a bit string on a measurement-free circuit.
    Prob {
        circuit: PathBuf,
        /// Comma-separated qubit indices, e.g. 0,1,2
        #[arg(long, value_delimiter = ',', required = true)]
        qubits: Vec<usize>,
        /// Outcome bits, one per qubit, e.g. 010
        #[arg(long)]
        bits: String,
    },
    /// Co-simulate against the dense reference simulator.
    Check {
        circuit: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
    /// Print touch counts and timings as CSV.
    Bench {
        #[arg(long)]
        suite: Suite,
        /// Comma-separated register sizes; empty prints only the header.
        #[arg(long, default_value = "")]
        sizes: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

enum Fail {
    Usage(String),
    Runtime(String),
}

fn load(path: &Path) -> Result<Circuit, Fail> {
    let text = fs::read_to_string(path)
        .map_err(|e| Fail::Runtime(format!("{}: {e}", path.display())))?;
    parse_circuit(&text).map_err(|e| Fail::Usage(format!("{}: {e}", path.display())))
}

fn parse_bits(s: &str) -> Result<Vec<bool>, Fail> {
    s.chars()
        .map(|c| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            _ => Err(Fail::Usage(format!("invalid bit '{c}' in --bits"))),
        })
        .collect()
}

fn execute(cmd: Cmd) -> Result<String, Fail> {
    let rt = |e: &dyn std::fmt::Display| Fail::Runtime(e.to_string());
    match cmd {
        Cmd::Run { circuit, seed, shots, out, threads } => {
            let c = load(&circuit)?;
            let threads = threads.unwrap_or_else(|| {
                std::thread::available_parallelism().map_or(1, |n| n.get())
            });
            let recs = c.run(seed, shots, threads.max(1)).map_err(|e| rt(&e))?;
            let text = recs.to_string();
            match out {
                Some(p) => {
                    fs::write(&p, text).map_err(|e| rt(&format!("{}: {e}", p.display())))?;
                    Ok(String::new())
                }
                None => Ok(text),
            }
        }
        Cmd::Prob { circuit, qubits, bits } => {
            let c = load(&circuit)?;
            if c.has_measurements() {
                return Err(Fail::Usage("prob requires a measurement-free circuit".into()));
            }
            let bits = parse_bits(&bits)?;
            if bits.len() != qubits.len() {
                return Err(Fail::Usage(format!(
                    "{} qubits but {} bits",
                    qubits.len(),
                    bits.len()
                )));
            }
            if let Some(&q) = qubits.iter().find(|&&q| q >= c.n) {
                return Err(Fail::Usage(format!("qubit {q} out of range for {} qubits", c.n)));
            }
            let s = c.final_state().map_err(|e| rt(&e))?;
            let p = s.strong_prob_z(&qubits, &bits).map_err(|e| Fail::Usage(e.to_string()))?;
            Ok(format!("{p} {}\n", p.to_f64()))
        }
        Cmd::Check { circuit, seed, inject_fault } => {
            let c = load(&circuit)?;
            let opts = CheckOptions { inject_fault, validate: true };
            let r = cosimulate(&c, seed, opts).map_err(|e| rt(&e))?;
            match r.failure {
                None => Ok(format!(
                    "ok: {} steps, max deviation {:e}\n",
                    r.steps, r.max_deviation
                )),
                Some(f) => Err(Fail::Runtime(format!(
                    "check failed at instruction {} (line {}): {}; max deviation {:e}",
                    f.step + 1,
                    c.lines.get(f.step).copied().unwrap_or(0),
                    f.reason,
                    r.max_deviation
                ))),
            }
        }
        Cmd::Bench { suite, sizes, seed } => {
            let mut out = format!("{BENCH_HEADER}\n");
            let sizes = sizes
                .split(',')
                .map(str::trim)
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<usize>().map_err(|_| Fail::Usage(format!("invalid size '{t}'"))))
                .collect::<Result<Vec<_>, _>>()?;
            for size in sizes {
                for row in run_bench(suite, size, seed).map_err(|e| rt(&e))? {
                    out.push_str(&format!("{row}\n"));
                }
            }
            Ok(out)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli.cmd) {
        Ok(text) => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(text.as_bytes());
            ExitCode::SUCCESS
        }
        Err(Fail::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Fail::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
