// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use slicescan::io::{format_contacts, format_partition, format_sliced, parse_partition, parse_static};
use slicescan::modularity::{modularity_multislice, ReplicatedModel};
use slicescan::selection::cluster_slicing;
use slicescan::{
    corrected_scan, gen_hidden_cliques, gen_replicated, gen_time_separated_cliques_with_rounds, nmi,
    shuffle_stack, ContactSequence64, Error, GroundTruth, OptimizerConfig64, Partition, ScanConfig64,
};

#[derive(Parser)]
#[command(name = "slicescan", version, about = "Pick the number of time slices for temporal-network clustering")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Kind {
    HiddenCliques,
    TimeCliques,
}

#[derive(Subcommand)]
enum Command {
    /// Scan slice counts 1..=N and report the corrected-modularity maximizer.
    Scan {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 30)]
        max_slices: usize,
        #[arg(long, default_value_t = 10)]
        runs: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 10.0)]
        attempts_per_edge: f64,
        /// Shuffled replicates averaged into m_r.
        #[arg(long, default_value_t = 1)]
        replicates: usize,
        /// Ground-truth partition file (`vertex slice label`).
        #[arg(long)]
        truth: Option<PathBuf>,
        /// Output prefix; `.csv` or `.json` is appended.
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Write a synthetic contact file and its ground truth.
    Generate {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long, default_value_t = 5)]
        reps: usize,
        #[arg(long, default_value_t = 8)]
        clique_size: usize,
        #[arg(long, default_value_t = 0.2)]
        noise: f64,
        #[arg(long, default_value_t = 5)]
        k: usize,
        #[arg(long, default_value_t = slicescan::synthesis::DEFAULT_ROUNDS)]
        rounds: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Output prefix; writes `<out>.contacts` and `<out>.truth`.
        #[arg(long)]
        out: PathBuf,
    },
    /// Compare the replicated-network closed form with direct evaluation.
    Analytic {
        /// Contact file (`u v t`) or edge list (`u v`); timestamps are ignored.
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        partition: PathBuf,
        #[arg(long, default_value_t = 20)]
        max_slices: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Cluster one slicing and write the partition.
    Cluster {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        slices: usize,
        #[arg(long, default_value_t = 10)]
        runs: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Shuffle one slicing slice by slice and write `u v slice` lines.
    Shuffle {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        slices: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 10.0)]
        attempts_per_edge: f64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Normalized mutual information between two partition files.
    Nmi { first: PathBuf, second: PathBuf },
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    NoValidSlicing,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NoValidSlicing => Failure::NoValidSlicing,
            other => Failure::Usage(other.to_string()),
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn with_suffix(prefix: &Path, suffix: &str) -> PathBuf {
    let mut s = prefix.as_os_str().to_owned();
    s.push(suffix);
    PathBuf::from(s)
}

fn contacts(path: &Path) -> Result<ContactSequence64, Failure> {
    let text = read(path)?;
    ContactSequence64::parse(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn optimizer(runs: usize, seed: u64) -> OptimizerConfig64 {
    OptimizerConfig64::default().with_runs(runs).with_seed(seed)
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Scan { input, max_slices, runs, seed, attempts_per_edge, replicates, truth, out, format } => {
            let cs = contacts(&input)?;
            let truth = match truth {
                Some(p) => Some(GroundTruth::new(parse_partition(&read(&p)?)?)),
                None => None,
            };
            let cfg = ScanConfig64 {
                max_slices,
                optimizer: optimizer(runs, seed),
                attempts_per_edge,
                shuffle_replicates: replicates,
            };
            let result = corrected_scan(&cs, &cfg, truth.as_ref())?;
            let skipped = result.skipped_counts();
            if !skipped.is_empty() {
                eprintln!("skipped slice counts (empty slices): {skipped:?}");
            }
            match format {
                Format::Csv => write(&with_suffix(&out, ".csv"), &result.to_csv())?,
                Format::Json => write(&with_suffix(&out, ".json"), &result.to_json())?,
            }
            println!("selected: {}", result.selected);
        }
        Command::Generate { kind, reps, clique_size, noise, k, rounds, seed, out } => {
            let (cs, truth) = match kind {
                Kind::HiddenCliques => gen_hidden_cliques::<f64>(reps, clique_size, noise, seed)?,
                Kind::TimeCliques => gen_time_separated_cliques_with_rounds::<f64>(k, clique_size, rounds, seed)?,
            };
            write(&with_suffix(&out, ".contacts"), &format_contacts(&cs))?;
            write(&with_suffix(&out, ".truth"), &format_partition(truth.labels()))?;
        }
        Command::Analytic { input, partition, max_slices, out } => {
            let g = parse_static(&read(&input)?)?;
            let p = parse_partition(&read(&partition)?)?;
            if p.n_slices() != 1 || p.n_vertices() != g.n_vertices() {
                return Err(Failure::Usage(format!(
                    "partition must label vertices 0..{} in slice 0",
                    g.n_vertices()
                )));
            }
            let model = ReplicatedModel::<f64>::from_snapshot(&g, p.labels())?;
            let mut csv = String::from("n_slices,analytic,empirical\n");
            for s in 1..=max_slices {
                let stack = gen_replicated::<f64>(&g, s)?;
                let empirical = modularity_multislice(&stack, &Partition::replicated(p.labels(), s))?;
                csv.push_str(&format!("{s},{},{empirical}\n", model.modularity(s)?));
            }
            write(&out, &csv)?;
        }
        Command::Cluster { input, slices, runs, seed, out } => {
            let cs = contacts(&input)?;
            let cfg = ScanConfig64 { optimizer: optimizer(runs, seed), ..Default::default() };
            let (p, q) = cluster_slicing(&cs, slices, &cfg)?;
            write(&out, &format_partition(&p))?;
            println!("modularity: {q}");
        }
        Command::Shuffle { input, slices, seed, attempts_per_edge, out } => {
            let stack = contacts(&input)?.slice(slices)?;
            let shuffled = shuffle_stack(&stack, seed, attempts_per_edge)?;
            write(&out, &format_sliced(&shuffled))?;
        }
        Command::Nmi { first, second } => {
            let a = parse_partition(&read(&first)?)?;
            let b = parse_partition(&read(&second)?)?;
            println!("{}", nmi::<f64>(&a, &b)?);
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::NoValidSlicing) => {
            eprintln!("error: no valid slicing");
            ExitCode::from(3)
        }
    }
}
