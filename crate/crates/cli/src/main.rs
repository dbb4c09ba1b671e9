// Copyright contributors to the globalqec project
//
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

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use globalqec::codes::{CodeKind, CodeSpec};
use globalqec::compiler::{compile_code_tables, compile_phases, CompilationReport, Phase};
use globalqec::config::Config;
use globalqec::labels::{composite_labels, hierarchy_labels, supercu_labels, Half, LabelPlan};
use globalqec::model::{ChainLayout, CostModel};
use globalqec::orchestrator::{
    fit_loglog_slope, monte_carlo_sweep, AlgorithmGate, DeviceState, LogicalOp, NoiseModel,
};
use num_complex::Complex;
use serde::Serialize;

const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser)]
#[command(
    name = "globalqec",
    version,
    about = "Globally controlled 1D quantum computer model"
)]
struct Cli {
    /// TOML file with [layout], [cost_model], [noise] and [device] tables.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Encode a logical qubit and write the circuit and block state.
    Encode {
        #[arg(long, default_value = "steane")]
        code: CodeKind,
        /// Amplitude of |0_L> as `re,im`.
        #[arg(long, default_value = "1,0")]
        alpha: String,
        /// Amplitude of |1_L> as `re,im`.
        #[arg(long, default_value = "0,0")]
        beta: String,
        /// Write the encoder and EC circuits in text form.
        #[arg(long)]
        circuit_out: Option<PathBuf>,
        /// Write the block state as `index real imag` lines.
        #[arg(long)]
        dump: Option<PathBuf>,
    },
    /// Run machine cycles on a chain of blocks.
    EcCycle {
        #[arg(long, default_value = "steane")]
        code: CodeKind,
        #[arg(long, default_value_t = 1)]
        blocks: usize,
        #[arg(long, default_value_t = 1)]
        cycles: usize,
        /// Level selecting the CUs kept for the algorithm phase.
        #[arg(long, default_value_t = 0)]
        level: u32,
        /// Depolarizing rate per data qubit per cycle; overrides the config.
        #[arg(long)]
        rate: Option<f64>,
        /// Logical X on block 0 in every algorithm phase.
        #[arg(long)]
        gate: bool,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Monte-Carlo logical error rate against physical rate.
    Sweep {
        #[arg(long, default_value = "steane")]
        code: CodeKind,
        #[arg(long, value_delimiter = ',', required = true)]
        rates: Vec<f64>,
        #[arg(long, default_value_t = 100_000)]
        trials: u64,
        #[arg(long, default_value_t = 1)]
        cycles: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Pulse counts for encoding and EC.
    Compile {
        #[arg(long, default_value = "steane")]
        code: CodeKind,
        #[arg(long, value_enum, default_value_t = PhaseArg::Both)]
        phase: PhaseArg,
        /// TOML cost model, either bare keys or a [cost_model] table.
        #[arg(long)]
        cost_model: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Per-gate breakdown; defaults to the report path with a .csv
        /// extension.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Switching-station labels and their activation at one level.
    Labels {
        #[arg(long, value_enum, default_value_t = Mode::Hierarchy)]
        mode: Mode,
        #[arg(long)]
        p: u32,
        #[arg(long = "L", alias = "l", default_value_t = 16)]
        l: u64,
        #[arg(long)]
        num_ss: usize,
        #[arg(long, default_value_t = 0)]
        level: u32,
        /// Half of a composite label to evaluate.
        #[arg(long, value_enum, default_value_t = HalfArg::A)]
        half: HalfArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum PhaseArg {
    Encode,
    Ec,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Hierarchy,
    Supercu,
    Composite,
    Explicit,
}

#[derive(Clone, Copy, ValueEnum)]
enum HalfArg {
    A,
    B,
}

fn output(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("creating {}", p.display()))?,
        )),
        None => Box::new(io::stdout().lock()),
    })
}

/// CSV with a leading `# globalqec version=.. seed=..` line.
fn write_csv<T: Serialize>(path: Option<&Path>, meta: &[(&str, String)], rows: &[T]) -> Result<()> {
    let mut out = output(path)?;
    write!(out, "# globalqec version={VERSION}")?;
    for (k, v) in meta {
        write!(out, " {k}={v}")?;
    }
    writeln!(out)?;
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

fn parse_complex(s: &str) -> Result<Complex<f64>> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let num = |t: &str| {
        t.parse::<f64>()
            .with_context(|| format!("bad number {t:?}"))
    };
    match parts.as_slice() {
        [re] => Ok(Complex::new(num(re)?, 0.0)),
        [re, im] => Ok(Complex::new(num(re)?, num(im)?)),
        _ => bail!("amplitude must be `re` or `re,im`, got {s:?}"),
    }
}

fn encode(
    code: CodeKind,
    alpha: &str,
    beta: &str,
    circuit_out: Option<&Path>,
    dump: Option<&Path>,
) -> Result<()> {
    let spec = CodeSpec::of(code);
    let (a, b) = (parse_complex(alpha)?, parse_complex(beta)?);
    let norm = (a.norm_sqr() + b.norm_sqr()).sqrt();
    if norm == 0.0 {
        bail!("alpha and beta are both zero");
    }
    let state = spec.encoded_block(a / norm, b / norm, 0, 0)?;
    if let Some(p) = circuit_out {
        let mut out = output(Some(p))?;
        writeln!(out, "# {code} encoder")?;
        write!(out, "{}", spec.encode().to_text())?;
        writeln!(out, "# {code} error correction")?;
        write!(out, "{}", spec.ec().to_text())?;
    }
    if let Some(p) = dump {
        state.dump(output(Some(p))?)?;
    }
    let nonzero = state
        .amplitudes()
        .iter()
        .filter(|c| c.norm_sqr() > 1e-24)
        .count();
    println!(
        "{code}: {} wires ({} data, {} ancilla), {nonzero} nonzero amplitudes",
        spec.n_wires(),
        spec.n_data,
        spec.n_ancilla
    );
    Ok(())
}

#[derive(Serialize)]
struct CycleRow {
    cycle: u64,
    level: u32,
    ec_pulses: u64,
    transition_pulses: u64,
    algorithm_pulses: u64,
    total_pulses: u64,
    injected: usize,
    active_blocks: usize,
    min_fidelity: f64,
    zeno_stable: bool,
}

#[allow(clippy::too_many_arguments)]
fn ec_cycle(
    config: &Config,
    code: CodeKind,
    blocks: usize,
    cycles: usize,
    level: u32,
    rate: Option<f64>,
    gate: bool,
    seed: Option<u64>,
    out: Option<&Path>,
) -> Result<()> {
    let spec = CodeSpec::of(code);
    let layout = ChainLayout {
        block_size_qubits: spec.block_size_qubits,
        num_blocks: blocks,
        ..config.layout
    };
    layout.validate()?;
    let mut device_cfg = config.device;
    device_cfg.code = code;
    if let Some(s) = seed {
        device_cfg.seed = s;
    }
    let noise = match rate {
        Some(r) => NoiseModel {
            granularity: config.noise.granularity,
            ..NoiseModel::depolarizing(r)?
        },
        None => config.noise,
    };
    let mut device = DeviceState::new(&device_cfg, &layout, &config.cost_model)?;
    let gates: Vec<AlgorithmGate> = if gate {
        vec![AlgorithmGate {
            block: 0,
            op: LogicalOp::X,
        }]
    } else {
        Vec::new()
    };
    if gates.len() > config.cycle_budget.max_algorithm_gates {
        bail!(
            "{} algorithm gates exceed the cycle budget of {}",
            gates.len(),
            config.cycle_budget.max_algorithm_gates
        );
    }
    let mut rows = Vec::with_capacity(cycles);
    for _ in 0..cycles {
        let r = device.run_cycle(level, &gates, &noise)?;
        rows.push(CycleRow {
            cycle: r.cycle,
            level: r.level,
            ec_pulses: r.ec_pulses,
            transition_pulses: r.transition_pulses,
            algorithm_pulses: r.algorithm_pulses,
            total_pulses: r.total_pulses,
            injected: r.injected.len(),
            active_blocks: r.active_in_algorithm.len(),
            min_fidelity: r.fidelities.iter().copied().fold(1.0, f64::min),
            zeno_stable: r.zeno_stable,
        });
    }
    write_csv(
        out,
        &[
            ("seed", device_cfg.seed.to_string()),
            ("code", code.to_string()),
            ("blocks", blocks.to_string()),
        ],
        &rows,
    )?;
    let ledger = device.ledger();
    eprintln!(
        "ledger: ec={} transition={} algorithm={} total={}",
        ledger.ec,
        ledger.transition,
        ledger.algorithm,
        ledger.total()
    );
    Ok(())
}

#[derive(Serialize)]
struct SweepRow {
    rate: f64,
    trials: u64,
    failures: u64,
    logical_error_rate: f64,
    stderr: f64,
}

fn sweep(
    code: CodeKind,
    rates: &[f64],
    trials: u64,
    cycles: usize,
    seed: u64,
    out: Option<&Path>,
) -> Result<()> {
    let points = monte_carlo_sweep(&CodeSpec::of(code), rates, cycles, trials, seed)?;
    let rows: Vec<SweepRow> = points
        .iter()
        .map(|p| SweepRow {
            rate: p.rate,
            trials: p.trials,
            failures: p.failures,
            logical_error_rate: p.logical_error_rate,
            stderr: p.stderr,
        })
        .collect();
    write_csv(
        out,
        &[
            ("seed", seed.to_string()),
            ("code", code.to_string()),
            ("cycles", cycles.to_string()),
        ],
        &rows,
    )?;
    if let Some(slope) = fit_loglog_slope(&points) {
        eprintln!("log-log slope {slope:.3}");
    }
    Ok(())
}

fn load_cost_model(path: &Path) -> Result<CostModel> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let model = match toml::from_str::<CostModel>(&text) {
        Ok(m) => m,
        Err(bare) => Config::from_toml(&text)
            .map(|c| c.cost_model)
            .map_err(|_| anyhow::anyhow!("{}: {bare}", path.display()))?,
    };
    model.validate()?;
    Ok(model)
}

#[derive(Serialize)]
struct TableRow {
    row: &'static str,
    pulses: u64,
}

#[derive(Serialize)]
struct CompileOutput {
    version: &'static str,
    code: CodeKind,
    phase: &'static str,
    cost_model: CostModel,
    rows: Vec<TableRow>,
    report: CompilationReport,
}

fn compile_cmd(
    code: CodeKind,
    phase: PhaseArg,
    model: &CostModel,
    out: Option<&Path>,
    csv_path: Option<&Path>,
) -> Result<()> {
    let spec = CodeSpec::of(code);
    let layout = ChainLayout::blocks(spec.block_size_qubits, 1)?;
    let (name, report) = match phase {
        PhaseArg::Both => {
            let row = compile_code_tables(&[code], model)?.remove(0);
            ("both", row.report)
        }
        PhaseArg::Encode => {
            let enc = spec.encode();
            let out = compile_phases(&[(Phase::Encoding, &enc)], &layout, model, None)?;
            ("encode", out.report)
        }
        PhaseArg::Ec => {
            let ec = spec.ec();
            let out = compile_phases(&[(Phase::SyndromeRecovery, &ec)], &layout, model, None)?;
            ("ec", out.report)
        }
    };
    let doc = CompileOutput {
        version: VERSION,
        code,
        phase: name,
        cost_model: *model,
        rows: vec![
            TableRow {
                row: "encoding",
                pulses: report.encoding_pulses,
            },
            TableRow {
                row: "syndrome_recovery",
                pulses: report.syndrome_recovery_pulses,
            },
            TableRow {
                row: "total",
                pulses: report.total_pulses,
            },
        ],
        report,
    };
    let mut w = output(out)?;
    serde_json::to_writer_pretty(&mut w, &doc)?;
    writeln!(w)?;
    w.flush()?;
    let csv_path = csv_path
        .map(Path::to_path_buf)
        .or_else(|| out.map(|p| p.with_extension("csv")));
    if let Some(p) = csv_path {
        write_csv(
            Some(&p),
            &[
                ("seed", "none".into()),
                ("code", code.to_string()),
                ("phase", name.into()),
            ],
            &doc.report.breakdown,
        )?;
    }
    eprintln!(
        "{code} {name}: encoding {} syndrome/recovery {} total {}",
        doc.report.encoding_pulses, doc.report.syndrome_recovery_pulses, doc.report.total_pulses
    );
    Ok(())
}

#[derive(Serialize)]
struct LabelRow {
    index: usize,
    label: String,
    active_at_level_b: u8,
}

fn plan_rows(plan: &LabelPlan, level: u32) -> Result<Vec<LabelRow>> {
    (1..=plan.num_ss())
        .map(|i| {
            Ok(LabelRow {
                index: i,
                label: plan.label(i)?.to_string(),
                active_at_level_b: u8::from(plan.active(i, level)?),
            })
        })
        .collect()
}

fn labels_cmd(
    mode: Mode,
    p: u32,
    l: u64,
    num_ss: usize,
    level: u32,
    half: HalfArg,
    out: Option<&Path>,
) -> Result<()> {
    let rows = match mode {
        Mode::Hierarchy => plan_rows(&hierarchy_labels(p, l, num_ss)?, level)?,
        Mode::Supercu => plan_rows(&supercu_labels(p, l, num_ss)?, level)?,
        Mode::Explicit => plan_rows(&hierarchy_labels(p, l, num_ss)?.to_explicit(p)?, level)?,
        Mode::Composite => {
            let plan = composite_labels(
                hierarchy_labels(p, l, num_ss)?,
                supercu_labels(p, l.max(16), num_ss)?,
            )?;
            let h = match half {
                HalfArg::A => Half::A,
                HalfArg::B => Half::B,
            };
            (1..=num_ss)
                .map(|i| {
                    Ok(LabelRow {
                        index: i,
                        label: plan.label(i)?.to_string(),
                        active_at_level_b: u8::from(plan.active(i, h, level)?),
                    })
                })
                .collect::<globalqec::Result<Vec<_>>>()?
        }
    };
    write_csv(
        out,
        &[
            ("seed", "none".into()),
            ("p", p.to_string()),
            ("L", l.to_string()),
            ("level", level.to_string()),
        ],
        &rows,
    )
}

fn main() -> Result<()> {
    let cli = Cli::parse();
    let config = match &cli.config {
        Some(p) => Config::load(p)?,
        None => Config::default(),
    };
    match cli.command {
        Command::Encode {
            code,
            alpha,
            beta,
            circuit_out,
            dump,
        } => encode(code, &alpha, &beta, circuit_out.as_deref(), dump.as_deref()),
        Command::EcCycle {
            code,
            blocks,
            cycles,
            level,
            rate,
            gate,
            seed,
            out,
        } => ec_cycle(
            &config,
            code,
            blocks,
            cycles,
            level,
            rate,
            gate,
            seed,
            out.as_deref(),
        ),
        Command::Sweep {
            code,
            rates,
            trials,
            cycles,
            seed,
            out,
        } => sweep(code, &rates, trials, cycles, seed, out.as_deref()),
        Command::Compile {
            code,
            phase,
            cost_model,
            out,
            csv,
        } => {
            let model = match cost_model {
                Some(p) => load_cost_model(&p)?,
                None => config.cost_model,
            };
            compile_cmd(code, phase, &model, out.as_deref(), csv.as_deref())
        }
        Command::Labels {
            mode,
            p,
            l,
            num_ss,
            level,
            half,
            out,
        } => labels_cmd(mode, p, l, num_ss, level, half, out.as_deref()),
    }
}
