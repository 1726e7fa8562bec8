//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit status
//! when any criterion fails. Run with `cargo test -p mbqc-core --test acceptance`.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use mbqc::depth::quantum_depth;
use mbqc::fixtures::{
    corpus_circuits, corpus_patterns, parity_circuit, random_angles, random_flow_geometry,
    random_source_circuit, reset_ladder, seven_vertex_geometry, seven_vertex_pattern,
    wild_flow_pattern,
};
use mbqc::flow::{characterized_depth, find_flow, influencing_paths};
use mbqc::rewrite::{pauli_simplify, signal_shift, standardize};
use mbqc::sim::{
    check_determinism, circuit_unitary, equiv_up_to_phase, pattern_operator, SimAngles, EQ_TOL,
};
use mbqc::translate::{circuit_to_pattern, parallelize_circuit, FanInMode, Parallelized, Variant};
use mbqc::{Angle, Circuit, Command, Gate, Qubit, Signal};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn q(v: u32) -> Qubit {
    Qubit(v)
}

fn sig(vs: &[u32]) -> Signal {
    vs.iter().map(|&v| Qubit(v)).collect()
}

fn ceil_log2(k: usize) -> usize {
    if k <= 1 {
        0
    } else {
        (usize::BITS - (k - 1).leading_zeros()) as usize
    }
}

fn round_trip_ok(source: &Circuit, par: &Parallelized) -> Result<bool, String> {
    let u = circuit_unitary(&source.normalize_cz()).map_err(|e| e.to_string())?;
    let m = par.logical_map().map_err(|e| e.to_string())?;
    equiv_up_to_phase(&m, &u, EQ_TOL).map_err(|e| e.to_string())
}

fn seven_vertex_reproduction() -> Outcome {
    let start = Instant::now();
    let p = seven_vertex_pattern();
    let a = Angle::symbolic;
    let mut expected: Vec<Command> = (2..7).map(|v| Command::Prep(q(v))).collect();
    for (x, y) in [(0, 2), (1, 2), (1, 3), (2, 4), (2, 5), (3, 5), (3, 6)] {
        expected.push(Command::ent(x, y));
    }
    expected.extend([
        Command::meas(0, a(0), sig(&[]), sig(&[])),
        Command::meas(1, a(1), sig(&[]), sig(&[0])),
        Command::meas(2, a(2), sig(&[0]), sig(&[])),
        Command::meas(3, a(3), sig(&[1]), sig(&[])),
        Command::CorrX {
            q: q(4),
            s: sig(&[2]),
        },
        Command::CorrZ {
            q: q(4),
            s: sig(&[0]),
        },
        Command::CorrZ {
            q: q(5),
            s: sig(&[0]),
        },
        Command::CorrZ {
            q: q(5),
            s: sig(&[1]),
        },
        Command::CorrX {
            q: q(6),
            s: sig(&[3]),
        },
        Command::CorrZ {
            q: q(6),
            s: sig(&[1]),
        },
    ]);
    let before = quantum_depth(&p);
    let after = signal_shift(&p).and_then(|(s, _)| quantum_depth(&s));
    let elapsed = start.elapsed();
    let pass = p.commands == expected
        && before == Ok(4)
        && after == Ok(3)
        && elapsed < Duration::from_secs(1);
    outcome(
        pass,
        format!(
            "sequence {}, depth {:?} -> {:?}, {:.0?}",
            if p.commands == expected {
                "matches"
            } else {
                "differs"
            },
            before,
            after,
            elapsed
        ),
    )
}

fn seven_vertex_paths() -> Outcome {
    let g = seven_vertex_geometry();
    let flow = find_flow(&g).expect("flow");
    let got: BTreeSet<Vec<u32>> = match influencing_paths(&g, &flow, None) {
        Ok(paths) => paths
            .iter()
            .map(|p| p.vertices.iter().map(|v| v.0).collect())
            .collect(),
        Err(e) => return outcome(false, e.to_string()),
    };
    let want: BTreeSet<Vec<u32>> = [
        vec![0, 2, 4],
        vec![0, 2, 5],
        vec![0, 2, 1, 3, 5],
        vec![0, 2, 1, 3, 6],
    ]
    .into_iter()
    .collect();
    let letters = |p: &Vec<u32>| {
        p.iter()
            .map(|&v| (b'a' + v as u8) as char)
            .collect::<String>()
    };
    let shown: Vec<String> = got.iter().map(letters).collect();
    outcome(got == want, format!("paths {{{}}}", shown.join(", ")))
}

fn rewrite_soundness() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let angles = SimAngles::default();
    let mut failures = Vec::new();
    let total = 500;
    for k in 0..total {
        let (g, flow) = random_flow_geometry(&mut rng, 8, 6);
        let a = random_angles(&mut rng, &g);
        let wild = wild_flow_pattern(&mut rng, &g, &flow, &a);
        let check = || -> Result<Option<String>, mbqc::Error> {
            let (std, _) = standardize(&wild)?;
            let (shifted, _) = signal_shift(&std)?;
            let ops = [
                pattern_operator(&wild, &angles)?,
                pattern_operator(&std, &angles)?,
                pattern_operator(&shifted, &angles)?,
            ];
            if !equiv_up_to_phase(&ops[1], &ops[0], EQ_TOL)?
                || !equiv_up_to_phase(&ops[2], &ops[0], EQ_TOL)?
            {
                return Ok(Some("operator changed".into()));
            }
            let depths = [
                quantum_depth(&wild)?,
                quantum_depth(&std)?,
                quantum_depth(&shifted)?,
            ];
            if depths[1] > depths[0] || depths[2] > depths[1] {
                return Ok(Some(format!("depth grew {depths:?}")));
            }
            Ok(None)
        };
        match check() {
            Ok(None) => {}
            Ok(Some(why)) => failures.push(format!("#{k}: {why}")),
            Err(e) => failures.push(format!("#{k}: {e}")),
        }
    }
    let elapsed = start.elapsed();
    let pass = failures.is_empty() && elapsed < Duration::from_secs(300);
    outcome(
        pass,
        format!(
            "{total} patterns, {} failures {:?}, {:.1?}",
            failures.len(),
            failures.iter().take(3).collect::<Vec<_>>(),
            elapsed
        ),
    )
}

fn flow_determinism() -> Outcome {
    let mut failures = Vec::new();
    let corpus = corpus_patterns();
    for (name, p) in &corpus {
        match check_determinism(p, &SimAngles::default()) {
            Ok(r) if r.strong && r.uniform => {}
            Ok(r) => failures.push(format!("{name}: strong={} uniform={}", r.strong, r.uniform)),
            Err(e) => failures.push(format!("{name}: {e}")),
        }
    }
    outcome(
        failures.is_empty(),
        format!(
            "{} patterns, {} failures {:?}",
            corpus.len(),
            failures.len(),
            failures.iter().take(3).collect::<Vec<_>>()
        ),
    )
}

fn depth_characterization() -> Outcome {
    let corpus = corpus_patterns();
    let mut mismatches = Vec::new();
    let mut errors = Vec::new();
    for (name, p) in &corpus {
        let predicted = characterized_depth(p).map(|r| r.characterized_depth);
        let measured = pauli_simplify(p)
            .and_then(|(s, _)| signal_shift(&s))
            .and_then(|(s, _)| quantum_depth(&s));
        match (predicted, measured) {
            (Ok(a), Ok(b)) if a == b => {}
            (Ok(a), Ok(b)) => mismatches.push(format!("{name}: predicted {a}, measured {b}")),
            (Err(e), _) | (_, Err(e)) => errors.push(format!("{name}: {e}")),
        }
    }
    let agree = corpus.len() - mismatches.len() - errors.len();
    outcome(
        mismatches.is_empty() && errors.is_empty(),
        format!(
            "{agree}/{} agree; e.g. {:?} {:?}",
            corpus.len(),
            mismatches.iter().take(3).collect::<Vec<_>>(),
            errors.iter().take(2).collect::<Vec<_>>()
        ),
    )
}

fn translation_counting() -> Outcome {
    let mut direct_bad = Vec::new();
    let mut cluster_count_bad = Vec::new();
    let mut cluster_shape_bad = Vec::new();
    let mut circuits = corpus_circuits();
    circuits.push(("parity".into(), parity_circuit()));
    circuits.push(("reset_ladder_3".into(), reset_ladder(3)));
    for (name, c) in &circuits {
        let n = c.n as usize;
        match circuit_to_pattern(c, Variant::Direct) {
            Ok(t) => {
                let g2 = t.stats.j_gates;
                if t.stats.qubits != n + g2 || t.stats.measurements != g2 {
                    direct_bad.push(name.clone());
                }
            }
            Err(e) => direct_bad.push(format!("{name}: {e}")),
        }
        match circuit_to_pattern(c, Variant::Cluster) {
            Ok(t) => {
                let s = &t.stats;
                if s.qubits != n + s.j_gates + s.cluster_positions {
                    cluster_count_bad.push(format!(
                        "{name}: {} qubits, n+G2+m = {}",
                        s.qubits,
                        n + s.j_gates + s.cluster_positions
                    ));
                }
                if s.max_degree > 4 || s.preparation_depth > 4 {
                    cluster_shape_bad.push(name.clone());
                }
            }
            Err(e) => cluster_shape_bad.push(format!("{name}: {e}")),
        }
    }
    outcome(
        direct_bad.is_empty() && cluster_count_bad.is_empty() && cluster_shape_bad.is_empty(),
        format!(
            "{} circuits; direct mismatches {}, cluster count mismatches {} (e.g. {:?}), degree/preparation violations {}",
            circuits.len(),
            direct_bad.len(),
            cluster_count_bad.len(),
            cluster_count_bad.first(),
            cluster_shape_bad.len()
        ),
    )
}

fn clifford_collapse() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut bad = Vec::new();
    let mut checked = 0;
    while checked < 100 {
        let n = rng.gen_range(1..=6);
        let gates = rng.gen_range(1..=20);
        let c = random_source_circuit(&mut rng, n, gates, true);
        if !c.gates.iter().any(|g| matches!(g, Gate::J(..))) {
            continue;
        }
        checked += 1;
        let run = || -> Result<(usize, usize), mbqc::Error> {
            let t = circuit_to_pattern(&c, Variant::Direct)?;
            let predicted = characterized_depth(&t.standard)?.characterized_depth;
            let par = parallelize_circuit(&c)?;
            Ok((predicted, par.report.pattern_depth))
        };
        match run() {
            Ok((2, 2)) => {}
            Ok(d) => bad.push(format!("{c:?}: {d:?}")),
            Err(e) => bad.push(e.to_string()),
        }
    }
    let parity = parity_circuit();
    let parity_result = (|| -> Result<(usize, usize, bool), String> {
        let t = circuit_to_pattern(&parity, Variant::Direct).map_err(|e| e.to_string())?;
        let predicted = characterized_depth(&t.standard)
            .map_err(|e| e.to_string())?
            .characterized_depth;
        let par = parallelize_circuit(&parity).map_err(|e| e.to_string())?;
        Ok((
            predicted,
            par.report.pattern_depth,
            round_trip_ok(&parity, &par)?,
        ))
    })();
    let parity_ok = matches!(parity_result, Ok((2, 2, true)));
    outcome(
        bad.is_empty() && parity_ok,
        format!(
            "{checked} random circuits, {} off depth 2; parity (predicted, measured, equivalent) = {:?}",
            bad.len(),
            parity_result
        ),
    )
}

fn reset_sequence_circuit() -> Outcome {
    let mut notes = Vec::new();
    let mut pass = true;
    for n in [3, 4] {
        let c = reset_ladder(n);
        match parallelize_circuit(&c) {
            Ok(par) => {
                let eq = round_trip_ok(&c, &par);
                pass &= par.report.d_prime == 1 && eq == Ok(true);
                notes.push(format!(
                    "n={n}: D'={} equivalent={:?}",
                    par.report.d_prime, eq
                ));
            }
            Err(e) => {
                pass = false;
                notes.push(format!("n={n}: {e}"));
            }
        }
    }
    outcome(pass, notes.join("; "))
}

fn round_trip_fidelity() -> Outcome {
    let corpus = corpus_circuits();
    let mut bad = Vec::new();
    let mut checked = 0;
    for (name, c) in &corpus {
        if c.n > 5 || c.gates.len() > 12 {
            continue;
        }
        checked += 1;
        match parallelize_circuit(c)
            .map_err(|e| e.to_string())
            .and_then(|p| round_trip_ok(c, &p))
        {
            Ok(true) => {}
            Ok(false) => bad.push(format!("{name}: differs")),
            Err(e) => bad.push(format!("{name}: {e}")),
        }
    }
    outcome(
        bad.is_empty(),
        format!(
            "{checked} circuits, {} failures {:?}",
            bad.len(),
            bad.iter().take(3).collect::<Vec<_>>()
        ),
    )
}

fn structural_scaling() -> Outcome {
    let mut fan_bad = 0;
    let mut fans = 0;
    let mut points = Vec::new();
    for n in [2, 3, 4, 5] {
        let c = reset_ladder(n);
        let par = match parallelize_circuit(&c) {
            Ok(p) => p,
            Err(e) => return outcome(false, format!("n={n}: {e}")),
        };
        for f in &par.coherent.fanins {
            fans += 1;
            let k = f.sources.len();
            if f.height != ceil_log2(k) || f.ancillas.len() != k - 1 {
                fan_bad += 1;
            }
        }
        let s = c.gates.len();
        points.push((
            n,
            par.report.d_prime * ceil_log2(s),
            par.report.output_depth,
        ));
    }
    let mut corpus_fans = 0;
    for (_, c) in corpus_circuits() {
        let t = circuit_to_pattern(&c, Variant::Direct).expect("translation");
        let rewritten = signal_shift(&pauli_simplify(&t.pattern).expect("standard").0)
            .expect("standard")
            .0;
        let cc = mbqc::translate::pattern_to_circuit(&rewritten, FanInMode::Tree).expect("shifted");
        for f in &cc.fanins {
            corpus_fans += 1;
            let k = f.sources.len();
            if f.height != ceil_log2(k) || f.ancillas.len() != k - 1 {
                fan_bad += 1;
            }
        }
    }
    let monotone = points
        .iter()
        .all(|a| points.iter().all(|b| a.1 >= b.1 || a.2 <= b.2));
    outcome(
        fan_bad == 0 && monotone,
        format!(
            "{} fan-ins checked, {fan_bad} off; (n, D'*ceil(log2 s), depth) = {points:?}",
            fans + corpus_fans
        ),
    )
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        (
            "seven-vertex flow pattern and depths",
            seven_vertex_reproduction,
        ),
        ("seven-vertex influencing paths", seven_vertex_paths),
        ("rewrite soundness", rewrite_soundness),
        ("flow patterns are deterministic", flow_determinism),
        ("depth characterization exactness", depth_characterization),
        ("translation counting", translation_counting),
        ("Clifford collapse", clifford_collapse),
        ("reset-sequence circuit", reset_sequence_circuit),
        ("round-trip fidelity", round_trip_fidelity),
        ("structural scaling checks", structural_scaling),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let o = run();
        if !o.pass {
            failed += 1;
        }
        println!(
            "{} criterion {:>2} {name}: {}",
            if o.pass { "PASS" } else { "FAIL" },
            i + 1,
            o.detail
        );
    }
    println!(
        "{} of {} criteria pass",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
