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

//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion
//! and exits non-zero if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use globalqec::codes::{
    coherent_ec_experiment, correct_single_error, Circuit, CodeKind, CodeSpec, ErrorAmplitudes,
};
use globalqec::compiler::{compile, compile_code_tables, ec_cycle_pulses, serial_ec_pulses};
use globalqec::labels::{
    active_at_level, comparator_program, evaluate, explicit_per_level_labels, hierarchy_labels,
    supercu_labels,
};
use globalqec::model::{subcomputer_capacity, subcomputer_cell_cost, ChainLayout, CostModel};
use globalqec::orchestrator::{
    cu_marker, fit_loglog_slope, frame_label, frame_plan, monte_carlo_sweep, stabilize, CellPattern,
};
use globalqec::qsim::{random_qubit, Gate, Pauli};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Check = std::result::Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(limit: Duration, start: Instant) -> std::result::Result<(), String> {
    let t = start.elapsed();
    ensure(t <= limit, || format!("took {t:?}, limit {limit:?}"))
}

fn single_error_correction() -> Check {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut worst = 1.0f64;
    let mut cases = 0;
    for code in [CodeSpec::steane(), CodeSpec::shor()] {
        for trial in 0..20 {
            let psi = random_qubit::<f64, _>(&mut rng);
            for q in 0..code.n_data {
                for p in Pauli::ALL {
                    let f = correct_single_error(&code, psi, Some((q, p)), trial)
                        .map_err(|e| e.to_string())?;
                    worst = worst.min(f);
                    cases += 1;
                }
            }
        }
    }
    ensure(cases == 20 * (21 + 27), || format!("{cases} cases"))?;
    ensure(worst >= 1.0 - 1e-9, || format!("worst fidelity {worst}"))?;
    within(Duration::from_secs(60), start)?;
    Ok(format!("{cases} cases, worst fidelity {worst:.12}"))
}

fn coherent_factorization() -> Check {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut worst_f = 1.0f64;
    let mut worst_s = 0.0f64;
    for code in [CodeSpec::steane(), CodeSpec::shor()] {
        let psi = random_qubit::<f64, _>(&mut rng);
        for q in 0..code.n_data {
            let r = coherent_ec_experiment(
                &code,
                ErrorAmplitudes::<f64>::real(0.3, 0.2, 0.1),
                q,
                psi,
                1e-8,
                q as u64,
            )
            .map_err(|e| e.to_string())?;
            ensure(
                r.product_before_erasure && r.product_after_erasure && r.ancilla_reset,
                || format!("{} qubit {q}: {r:?}", code.kind),
            )?;
            worst_f = worst_f.min(r.data_fidelity);
            worst_s = worst_s.max(r.schmidt_residual);
        }
    }
    ensure(worst_f >= 1.0 - 1e-9, || {
        format!("worst fidelity {worst_f}")
    })?;
    within(Duration::from_secs(120), start)?;
    Ok(format!(
        "worst fidelity {worst_f:.12}, largest residual {worst_s:.1e}"
    ))
}

fn band(value: u64, target: f64) -> bool {
    (value as f64 - target).abs() <= 0.25 * target
}

fn table_reproduction() -> Check {
    let start = Instant::now();
    let rows = compile_code_tables(&[CodeKind::Steane, CodeKind::Shor], &CostModel::default())
        .map_err(|e| e.to_string())?;
    let (steane, shor) = (&rows[0], &rows[1]);
    ensure(
        band(steane.total, 4086.0) && band(steane.encoding, 464.0),
        || format!("steane {}/{}", steane.encoding, steane.total),
    )?;
    ensure(
        band(shor.total, 3352.0) && band(shor.encoding, 397.0),
        || format!("shor {}/{}", shor.encoding, shor.total),
    )?;
    let ratio = shor.total as f64 / steane.total as f64;
    ensure((0.72..=0.92).contains(&ratio), || format!("ratio {ratio}"))?;
    within(Duration::from_secs(1), start)?;
    Ok(format!(
        "steane {}+{}={}, shor {}+{}={}, ratio {ratio:.3}",
        steane.encoding,
        steane.syndrome_recovery,
        steane.total,
        shor.encoding,
        shor.syndrome_recovery,
        shor.total
    ))
}

fn circuit_of(n: usize, gates: &[Gate]) -> Circuit {
    let mut c = Circuit::new(n, 0);
    for g in gates {
        c.gate(g.clone()).unwrap();
    }
    c
}

fn pulse_primitives() -> Check {
    let model = CostModel::default();
    let layout = ChainLayout::blocks(8, 1).map_err(|e| e.to_string())?;
    let cost = |gates: &[Gate]| {
        compile(&circuit_of(8, gates), &layout, &model).map(|c| c.report.total_pulses)
    };
    let one = cost(&[Gate::h(2)]).map_err(|e| e.to_string())?;
    ensure(one == 15, || format!("one-qubit gate {one}"))?;
    let approach = model.approach(1, 4);
    ensure(approach == 8, || format!("approach {approach}"))?;
    let a = cost(&[Gate::cnot(1, 3)]).map_err(|e| e.to_string())?;
    let b = cost(&[Gate::cnot(1, 5)]).map_err(|e| e.to_string())?;
    let fan = cost(&[Gate::cnot(1, 3), Gate::cnot(1, 5)]).map_err(|e| e.to_string())?;
    ensure(fan < a + b, || format!("fan-out {fan} vs {a}+{b}"))?;
    Ok(format!(
        "one-qubit {one}, approach(3) {approach}, fan-out {fan} < {}",
        a + b
    ))
}

fn parallel_ec() -> Check {
    let model = CostModel::default();
    let mut notes = Vec::new();
    for code in [CodeSpec::steane(), CodeSpec::shor()] {
        let base = ChainLayout::blocks(code.block_size_qubits, 1)
            .map_err(|e| e.to_string())?
            .with_ss_cells(16);
        let counts = [1usize, 2, 4, 8, 1024]
            .iter()
            .map(|&m| ec_cycle_pulses(&code, &base.with_num_blocks(m)?, &model))
            .collect::<globalqec::Result<Vec<u64>>>()
            .map_err(|e| e.to_string())?;
        ensure(counts.iter().all(|&c| c == counts[0]), || {
            format!("{} counts {counts:?}", code.kind)
        })?;
        let per_block = compile(&code.ec(), &base, &model)
            .map_err(|e| e.to_string())?
            .report
            .total_pulses;
        for m in [1usize, 2, 4, 8] {
            let serial = serial_ec_pulses(&code, &base.with_num_blocks(m).unwrap(), &model)
                .map_err(|e| e.to_string())?;
            ensure(serial >= m as u64 * per_block, || {
                format!("{} serial M={m}: {serial} < {m}x{per_block}", code.kind)
            })?;
        }
        notes.push(format!("{} {}", code.kind, counts[0]));
    }
    Ok(format!("per-cycle pulses {}", notes.join(", ")))
}

fn hierarchy_oracle(i: u64, p: u32, l: u64) -> u64 {
    (1..p).filter(|&j| i % l.pow(j) == 1).count() as u64
}

fn label_machinery() -> Check {
    let start = Instant::now();
    for p in [2u32, 3, 4] {
        for l in [2u64, 4, 16] {
            let n = l.pow(p - 1);
            let plan = hierarchy_labels(p, l, n as usize).map_err(|e| e.to_string())?;
            ensure(plan.label(1).unwrap() == u64::from(p), || {
                "reserved station".into()
            })?;
            for i in 2..=n {
                let got = plan.label(i as usize).unwrap();
                ensure(got == hierarchy_oracle(i, p, l), || {
                    format!("p={p} L={l} i={i}: {got}")
                })?;
            }
            let sets: Vec<Vec<usize>> = (0..=p).map(|b| plan.active_set(b).unwrap()).collect();
            for b in 0..sets.len() {
                for b2 in b + 1..sets.len() {
                    ensure(sets[b2].iter().all(|i| sets[b].contains(i)), || {
                        format!("nesting p={p} L={l} b={b} b'={b2}")
                    })?;
                }
            }
        }
    }
    let prog = comparator_program(8);
    ensure(prog.ancillas() == 2, || "ancilla count".into())?;
    for label in 0..=8u64 {
        for b in 0..=8u32 {
            let got = evaluate(&prog, label, b).map_err(|e| e.to_string())?;
            ensure(got == active_at_level(label, b), || {
                format!("label {label} b {b}")
            })?;
        }
    }
    // 7 steps per label bit plus 3, and label bits <= log2(p) + 1.
    let c = 17.0;
    ensure(
        comparator_program(8).step_count() <= comparator_program(64).step_count(),
        || "step count not monotone".into(),
    )?;
    for p in [2u32, 3, 8, 64, 1000] {
        let steps = comparator_program(p).step_count();
        ensure(steps as f64 <= c * f64::from(p).log2(), || {
            format!("p={p}: {steps} steps")
        })?;
    }
    let super_cu = supercu_labels(3, 16, 256).map_err(|e| e.to_string())?;
    let level1 = super_cu.active_set(1).map_err(|e| e.to_string())?;
    ensure(level1 == [1, 2, 3, 6, 7, 8, 11, 12, 13], || {
        format!("level 1 {level1:?}")
    })?;
    for b in 0..3 {
        for b2 in b + 1..=3 {
            let lo = super_cu.active_set(b).unwrap();
            let hi = super_cu.active_set(b2).unwrap();
            ensure(lo.iter().all(|i| hi.contains(i)), || {
                format!("super-CU b={b} b'={b2}")
            })?;
        }
    }
    within(Duration::from_secs(10), start)?;
    Ok(format!(
        "comparator {} steps at p=8, {} at p=64",
        comparator_program(8).step_count(),
        comparator_program(64).step_count()
    ))
}

fn zeno_rule() -> Check {
    let mut checked = 0u64;
    for len in 0..=12usize {
        for word in 0..1u64 << len {
            let bits: Vec<bool> = (0..len).map(|k| word >> k & 1 == 1).collect();
            let out = stabilize(&CellPattern::new(bits.clone()));
            for k in 0..len {
                let left = k > 0 && bits[k - 1];
                let right = k + 1 < len && bits[k + 1];
                let lone = bits[k] && !left && !right;
                ensure(out.bits()[k] == (bits[k] && !lone), || {
                    format!("pattern {word:#b} len {len} cell {k}")
                })?;
            }
            checked += 1;
        }
    }
    let mut framings = vec![cu_marker()];
    for bits in 1..=6u32 {
        for v in 0..1u64 << bits {
            framings.push(frame_label(v, bits));
        }
    }
    for plan in [
        hierarchy_labels(3, 4, 64).unwrap(),
        hierarchy_labels(8, 2, 300).unwrap(),
        supercu_labels(3, 16, 256).unwrap(),
        explicit_per_level_labels(&[
            vec![true, false, true, true],
            vec![false, true, false, false],
        ])
        .unwrap(),
    ] {
        framings.push(frame_plan(&plan));
    }
    for f in &framings {
        ensure(stabilize(f) == *f, || format!("framing {f} not fixed"))?;
    }
    Ok(format!(
        "{checked} patterns, {} framings fixed",
        framings.len()
    ))
}

fn acceptance_trials() -> u64 {
    std::env::var("GLOBALQEC_ACCEPTANCE_TRIALS")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(4_000_000)
        .max(100_000)
}

fn distance_three_scaling() -> Check {
    let start = Instant::now();
    let trials = acceptance_trials();
    let rates = [1e-3, 3e-3, 1e-2];
    let mut notes = Vec::new();
    for code in [CodeSpec::steane(), CodeSpec::shor()] {
        let pts = monte_carlo_sweep(&code, &rates, 1, trials, 2024).map_err(|e| e.to_string())?;
        let slope = fit_loglog_slope(&pts).ok_or("no failures to fit")?;
        ensure((slope - 2.0).abs() <= 0.3, || {
            format!("{} slope {slope:.3}", code.kind)
        })?;
        let mid = pts[1].logical_error_rate;
        ensure(mid < rates[1], || {
            format!("{} no suppression at 3e-3: {mid}", code.kind)
        })?;
        notes.push(format!("{} slope {slope:.3}", code.kind));
    }
    within(Duration::from_secs(600), start)?;
    Ok(format!("{trials} trials per point, {}", notes.join(", ")))
}

fn subcomputer_overhead() -> Check {
    let plain = ChainLayout::plain_capacity(80_000, 8);
    ensure(plain >= 10_000, || format!("plain {plain}"))?;
    let sub = subcomputer_capacity(80_000, 0);
    ensure(sub < 900, || format!("sub-computer {sub}"))?;
    ensure(900 * subcomputer_cell_cost(900, 0) > 80_000, || {
        "900 qubits fit".into()
    })?;
    Ok(format!("plain {plain} qubits, sub-computer {sub} qubits"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Check); 9] = [
        ("single-error correction", single_error_correction),
        ("coherent-correction factorization", coherent_factorization),
        ("pulse table reproduction", table_reproduction),
        ("pulse primitives", pulse_primitives),
        ("constant-time parallel EC", parallel_ec),
        ("label machinery", label_machinery),
        ("Zeno rule", zeno_rule),
        ("distance-3 scaling", distance_three_scaling),
        ("sub-computer overhead", subcomputer_overhead),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        match check() {
            Ok(note) => println!("PASS {}. {name}: {note} ({:.2?})", k + 1, start.elapsed()),
            Err(why) => {
                failed += 1;
                println!("FAIL {}. {name}: {why}", k + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
