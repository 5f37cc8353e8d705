use std::collections::BTreeMap;
use std::io::{self, BufWriter, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use epistab::acceptance::{run_criterion, AcceptanceConfig, CRITERIA};
use epistab::backend::{BackendKind, Compiled};
use epistab::circuit::parse_circuit;
use epistab::compact::{bit_len, CompactOnticState};
use epistab::experiments::{compare_to_oracle, contextuality, mp, pbr, ExperimentReport, DEFAULT_SIGMA};
use epistab::pauli::SignedPauli;
use epistab::rng::shot_rng;
use epistab::tableau::StabilizerTableau;

#[derive(Parser)]
#[command(name = "epistab", version, about = "Stabilizer circuits under quantum and contextual ψ-epistemic models")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Sampling {
    #[arg(long, default_value_t = 10_000)]
    shots: u64,
    #[arg(long, env = "EPISTAB_SEED", default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Run a circuit file on one backend and print one record per shot.
    Run {
        circuit: PathBuf,
        #[arg(long, default_value = "oracle")]
        backend: BackendKind,
        #[command(flatten)]
        sampling: Sampling,
        /// Print only the aggregate record.
        #[arg(long)]
        summary: bool,
    },
    /// Compare each backend's outcome frequencies with the exact distribution.
    Compare {
        circuit: PathBuf,
        /// Backends to compare; repeat the flag for several. Defaults to all.
        #[arg(long)]
        backend: Vec<BackendKind>,
        #[command(flatten)]
        sampling: Sampling,
        #[arg(long, default_value_t = DEFAULT_SIGMA)]
        tolerance_sigma: f64,
    },
    /// Run one of the scripted scenarios.
    Experiment {
        scenario: Scenario,
        #[arg(long, default_value = "full")]
        backend: BackendKind,
        #[command(flatten)]
        sampling: Sampling,
        #[arg(long, default_value_t = DEFAULT_SIGMA)]
        tolerance_sigma: f64,
        /// Input state for `pbr` (0..=3).
        #[arg(long, default_value_t = 0)]
        state: usize,
        /// Qubit count for `prep-ctx` and `witness`.
        #[arg(long, default_value_t = 2)]
        n: usize,
        /// Use ZZ and ZX as the second measurement of `pbr`.
        #[arg(long)]
        alternate: bool,
    },
    /// Run the acceptance criteria.
    Selftest {
        #[arg(long, default_value_t = 10_000)]
        shots: u64,
        #[arg(long, default_value_t = AcceptanceConfig::default().seed)]
        seed: u64,
        /// Run a single criterion.
        #[arg(long)]
        criterion: Option<u8>,
    },
    /// Sample a compact ontic state for a pure state and print its bits.
    DumpCompact {
        /// Stabilizer generators separated by commas, e.g. `+ZI,+IZ`.
        #[arg(long)]
        state: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Scenario {
    Mp,
    MpSeq,
    Pbr,
    PrepCtx,
    EffResp,
    Witness,
}

/// Problems with the user's input, reported with exit status 2.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn usage(e: epistab::Error) -> anyhow::Error {
    Usage(e.to_string()).into()
}

fn read_circuit(path: &PathBuf) -> Result<epistab::circuit::Circuit> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        s
    } else {
        std::fs::read_to_string(path).map_err(|e| Usage(format!("{}: {e}", path.display())))?
    };
    parse_circuit(&text).map_err(|e| Usage(format!("{}: {e}", path.display())).into())
}

fn bits(o: &[bool]) -> String {
    o.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

fn emit(out: &mut impl Write, report: &ExperimentReport) -> Result<bool> {
    writeln!(out, "{}", report.to_json())?;
    Ok(report.passed())
}

fn run(cli: Cli, out: &mut impl Write) -> Result<bool> {
    match cli.command {
        Command::Run { circuit, backend, sampling, summary } => {
            let c = read_circuit(&circuit)?;
            let compiled = Compiled::new(&c).map_err(usage)?;
            let outcomes = compiled.run(backend, sampling.shots, sampling.seed).map_err(usage)?;
            let mut counts: BTreeMap<String, u64> = BTreeMap::new();
            for (shot, o) in outcomes.iter().enumerate() {
                let key = bits(o);
                if !summary {
                    let record = json!({"shot": shot, "outcomes": key, "backend": backend.name(), "seed": sampling.seed});
                    writeln!(out, "{record}")?;
                }
                *counts.entry(key).or_insert(0) += 1;
            }
            let frequencies: BTreeMap<&String, f64> =
                counts.iter().map(|(k, &v)| (k, v as f64 / sampling.shots.max(1) as f64)).collect();
            let aggregate = json!({
                "backend": backend.name(),
                "seed": sampling.seed,
                "shots": sampling.shots,
                "counts": counts,
                "frequencies": frequencies,
            });
            writeln!(out, "{aggregate}")?;
            Ok(true)
        }
        Command::Compare { circuit, backend, sampling, tolerance_sigma } => {
            let c = read_circuit(&circuit)?;
            let kinds = if backend.is_empty() { BackendKind::ALL.to_vec() } else { backend };
            let report = compare_to_oracle(&c, &kinds, sampling.shots, sampling.seed, tolerance_sigma).map_err(usage)?;
            for b in &report.backends {
                let record = json!({
                    "backend": b.backend,
                    "seed": report.seed,
                    "shots": report.shots,
                    "passed": b.passed(),
                    "counts": b.counts,
                    "impossible": b.impossible,
                    "out_of_tolerance": b.out_of_tolerance,
                });
                writeln!(out, "{record}")?;
            }
            writeln!(out, "{}", json!({"expected": report.expected, "sigma": report.sigma, "passed": report.passed()}))?;
            Ok(report.passed())
        }
        Command::Experiment { scenario, backend, sampling, tolerance_sigma, state, n, alternate } => {
            let Sampling { shots, seed } = sampling;
            let report = match scenario {
                Scenario::Mp => mp::mp_run(backend, shots, seed),
                Scenario::MpSeq => mp::mp_sequences_run(backend, shots, seed, tolerance_sigma),
                Scenario::Pbr => pbr::pbr_run(backend, state, shots, seed, alternate),
                Scenario::PrepCtx => contextuality::prep_ctx_report(backend, n, shots, seed, tolerance_sigma),
                Scenario::EffResp => contextuality::eff_resp_report(),
                Scenario::Witness => contextuality::witness_report(n),
            }
            .map_err(usage)?;
            emit(out, &report)
        }
        Command::Selftest { shots, seed, criterion } => {
            let cfg = AcceptanceConfig { shots, seed, ..AcceptanceConfig::default() };
            let ids: Vec<u8> = match criterion {
                Some(id) if CRITERIA.iter().any(|(i, _)| *i == id) => vec![id],
                Some(id) => return Err(Usage(format!("no criterion {id}; expected 1..={}", CRITERIA.len())).into()),
                None => CRITERIA.iter().map(|(i, _)| *i).collect(),
            };
            let mut all = true;
            for id in ids {
                let r = run_criterion(id, &cfg);
                writeln!(out, "{}", r.line())?;
                out.flush()?;
                all &= r.passed;
            }
            Ok(all)
        }
        Command::DumpCompact { state, seed } => {
            let gens: Vec<SignedPauli> = state
                .split(',')
                .map(|g| SignedPauli::parse(g.trim()))
                .collect::<epistab::Result<_>>()
                .map_err(usage)?;
            let n = gens.first().map(|g| g.index.n()).context("empty generator list")?;
            let psi = StabilizerTableau::new(n, &gens).map_err(usage)?;
            let s = CompactOnticState::sample_preparation(&psi, &mut shot_rng(seed, 0));
            let bytes = s.to_bytes();
            let hex: String = bytes.iter().map(|b| format!("{b:02x}")).collect();
            let rows: Vec<String> = s.generator_rows().iter().chain(s.extension_rows()).map(|r| r.to_string()).collect();
            let record = json!({"n": n, "seed": seed, "bits": bit_len(n), "hex": hex, "rows": rows});
            writeln!(out, "{record}")?;
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let result = run(cli, &mut out);
    let flushed = out.flush();
    match result {
        Ok(true) if flushed.is_ok() => ExitCode::SUCCESS,
        Ok(_) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.is::<Usage>() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
