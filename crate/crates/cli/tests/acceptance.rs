//! Acceptance gate: one line per criterion, non-zero exit if any fails.
//!
//! Reference values come from the dense oracles in `wsim-testkit`, never from
//! the closed forms under test alone.

mod support;

use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use wsim_core::entanglement::{pair_report, total_concurrence, w_reduced_density};
use wsim_core::optics::{cavity_register, design_chain, simulate_chain};
use wsim_core::protocols::{build_balancer, expand_pair, prepare_w, rotated_basis, run_qst};
use wsim_core::{partial_trace, StateVectorF64, WSpecF64, C64};
use wsim_testkit::{
    qst_oracle, random_complex_wspec, random_qubit, random_real_qubit, random_real_wspec,
    reduced_pair_density, w_amplitudes,
};

const CLOSED_FORM_VS_WOOTTERS: f64 = 1e-9;
const REDUCED_DENSITY: f64 = 1e-12;
const TOTAL_AT_UNIFORM: f64 = 1e-12;
const QST_VS_ORACLE: f64 = 1e-9;
const QST_UNIFORM: f64 = 1e-10;
const SUCCESS_FIDELITY: f64 = 1e-9;
const INPUT_INDEPENDENCE: f64 = 1e-9;
const PREPARATION: f64 = 1e-10;
const CROSS_TERMS: f64 = 1e-12;
const UNITARITY: f64 = 1e-10;
const ROUND_TRIP: f64 = 1e-12;
const PIPELINE: f64 = 1e-9;

const SWEEP_LIMIT: Duration = Duration::from_secs(30);
const QST_LIMIT: Duration = Duration::from_secs(60);

type Check<'a> = Box<dyn Fn() -> Outcome + 'a>;

struct Outcome {
    pass: bool,
    detail: String,
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn qubit(a: C64, b: C64) -> StateVectorF64 {
    StateVectorF64::qubit(a, b).expect("normalized input")
}

fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (1..=n).flat_map(move |m| (m + 1..=n).map(move |k| (m, k)))
}

fn sweep_wspecs() -> Vec<WSpecF64> {
    let mut r = rng(1);
    (2..=10)
        .flat_map(|n| (0..200).map(move |_| n))
        .map(|n| random_complex_wspec(&mut r, n))
        .collect()
}

fn closed_form_vs_wootters(ws: &[WSpecF64]) -> Outcome {
    let start = Instant::now();
    let mut worst = 0.0f64;
    let mut count = 0;
    for w in ws {
        for (m, k) in pairs(w.num_qubits()) {
            let r = pair_report(w, m, k).expect("pair report");
            worst = worst.max((r.closed_form - r.wootters).abs());
            count += 1;
        }
    }
    let elapsed = start.elapsed();
    Outcome {
        pass: worst < CLOSED_FORM_VS_WOOTTERS && elapsed < SWEEP_LIMIT,
        detail: format!(
            "max |closed - wootters| = {worst:.2e} over {count} pairs (tol {CLOSED_FORM_VS_WOOTTERS:e}), {:.2} s (limit {} s)",
            elapsed.as_secs_f64(),
            SWEEP_LIMIT.as_secs()
        ),
    }
}

fn reduced_density_exact(ws: &[WSpecF64]) -> Outcome {
    let mut worst = 0.0f64;
    for w in ws {
        let n = w.num_qubits();
        let state = w.to_state().expect("state");
        let amps = w_amplitudes(w.coeffs());
        for (m, k) in pairs(n) {
            let closed = w_reduced_density(w, m, k).expect("closed form");
            let traced = partial_trace(&state, &[m, k]).expect("partial trace");
            let explicit = reduced_pair_density(&amps, n, m, k);
            for (r, row) in explicit.iter().enumerate() {
                for (c, &want) in row.iter().enumerate() {
                    worst = worst
                        .max((closed.get(r, c) - want).norm())
                        .max((traced.get(r, c) - want).norm());
                }
            }
        }
    }
    Outcome {
        pass: worst < REDUCED_DENSITY,
        detail: format!("max entry deviation {worst:.2e} (tol {REDUCED_DENSITY:e})"),
    }
}

fn total_concurrence_bound() -> Outcome {
    let mut r = rng(3);
    let mut largest = 0.0f64;
    for i in 0..10_000 {
        let w = random_complex_wspec(&mut r, 2 + i % 11);
        largest = largest.max(total_concurrence(&w));
    }
    let uniform_worst = (2..=12)
        .map(|n| (total_concurrence(&WSpecF64::uniform(n).unwrap()) - 1.0).abs())
        .fold(0.0, f64::max);
    let w2 = WSpecF64::uniform(2).unwrap();
    let two = (total_concurrence(&w2) - pair_report(&w2, 1, 2).unwrap().wootters).abs();
    Outcome {
        pass: largest <= 1.0 && uniform_worst < TOTAL_AT_UNIFORM && two < TOTAL_AT_UNIFORM,
        detail: format!(
            "max over 10^4 random = {largest:.15}, uniform N=2..12 max |C-1| = {uniform_worst:.1e}, N=2 |C - wootters| = {two:.1e} (tol {TOTAL_AT_UNIFORM:e})"
        ),
    }
}

fn qst_probabilities() -> Outcome {
    let start = Instant::now();
    let mut r = rng(4);
    let mut worst_oracle = 0.0f64;
    let mut worst_formula = 0.0f64;
    for n in 2..=8 {
        for _ in 0..100 {
            let w = random_real_wspec(&mut r, n, false);
            let (a, b) = random_qubit(&mut r);
            let p = run_qst(&w, &qubit(a, b))
                .unwrap()
                .report
                .success_probability;
            let (oracle, _) = qst_oracle(&w).unwrap();
            let formula = 2.0 * w.first().norm_sqr().min(w.last().norm_sqr());
            worst_oracle = worst_oracle.max((p - oracle).abs());
            worst_formula = worst_formula.max((oracle - formula).abs());
        }
    }
    let input = qubit(C64::new(0.6, 0.0), C64::new(0.8, 0.0));
    let run = |w: &WSpecF64| run_qst(w, &input).unwrap().report.success_probability;
    let uniform_worst = (3..=8)
        .map(|n| (run(&WSpecF64::uniform(n).unwrap()) - 2.0 / n as f64).abs())
        .fold(0.0, f64::max);
    let two_uniform = run(&WSpecF64::uniform(2).unwrap());
    let two_skewed = run(&WSpecF64::from_real(&[0.8, 0.6]).unwrap());
    let elapsed = start.elapsed();
    let pass = worst_oracle < QST_VS_ORACLE
        && worst_formula < QST_VS_ORACLE
        && uniform_worst < QST_UNIFORM
        && (two_uniform - 1.0).abs() < QST_UNIFORM
        && (two_skewed - 0.72).abs() < QST_UNIFORM
        && elapsed < QST_LIMIT;
    Outcome {
        pass,
        detail: format!(
            "vs oracle {worst_oracle:.1e}, oracle vs 2min {worst_formula:.1e} (tol {QST_VS_ORACLE:e}); uniform 2/N {uniform_worst:.1e} (tol {QST_UNIFORM:e}); N=2 uniform {two_uniform:.12}, (0.8,0.6) {two_skewed:.12}; {:.2} s (limit {} s)",
            elapsed.as_secs_f64(),
            QST_LIMIT.as_secs()
        ),
    }
}

fn fidelity_on_success() -> Outcome {
    let mut r = rng(5);
    let mut min_fidelity = 1.0f64;
    let mut spread = 0.0f64;
    let mut runs = 0;
    for n in 2..=8 {
        for _ in 0..4 {
            let w = random_complex_wspec(&mut r, n);
            let mut probs = Vec::new();
            for _ in 0..50 {
                let (a, b) = random_qubit(&mut r);
                let input = qubit(a, b);
                let report = run_qst(&w, &input).unwrap().report;
                for branch in report
                    .branches
                    .iter()
                    .filter(|b| b.heralded && b.bob_fidelity > 1.0 - SUCCESS_FIDELITY)
                {
                    let f = branch.bob_state.as_ref().unwrap().fidelity(&input).unwrap();
                    min_fidelity = min_fidelity.min(f);
                }
                probs.push(report.success_probability);
                runs += 1;
            }
            let lo = probs.iter().copied().fold(f64::INFINITY, f64::min);
            let hi = probs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            spread = spread.max(hi - lo);
        }
    }
    Outcome {
        pass: min_fidelity > 1.0 - SUCCESS_FIDELITY && spread < INPUT_INDEPENDENCE,
        detail: format!(
            "min success-branch fidelity 1 - {:.1e} (tol {SUCCESS_FIDELITY:e}); max spread over 50 inputs {spread:.1e} (tol {INPUT_INDEPENDENCE:e}); {runs} runs",
            1.0 - min_fidelity
        ),
    }
}

fn preparation() -> Outcome {
    let mut r = rng(6);
    let mut worst = 0.0f64;
    for n in 3..=8 {
        for _ in 0..50 {
            let base = random_real_wspec(&mut r, n, false);
            let mut c = base.coeffs().to_vec();
            c[n - 1] = -c[0];
            let Ok(w) = WSpecF64::renormalized(c, 1.0) else {
                continue;
            };
            let (alpha, beta) = random_real_qubit(&mut r);
            let prep = prepare_w(&w, &rotated_basis(alpha, beta).unwrap()).unwrap();
            worst = worst.max((prep.report.success_probability - 2.0 * w.first().norm_sqr()).abs());
        }
    }
    let mut cross = 0.0f64;
    for _ in 0..200 {
        let (alpha, beta) = random_real_qubit(&mut r);
        let (c1, _) = random_qubit(&mut r);
        let c1 = c1 / (2.0f64.sqrt() * c1.norm());
        let zero = C64::new(0.0, 0.0);
        let e = expand_pair([zero, c1, -c1, zero], &rotated_basis(alpha, beta).unwrap());
        cross = cross.max(e.phi_phi.norm()).max(e.psi_psi.norm());
    }
    Outcome {
        pass: worst < PREPARATION && cross < CROSS_TERMS,
        detail: format!(
            "max |P - 2|c1|^2| = {worst:.1e} (tol {PREPARATION:e}); max cross term {cross:.1e} (tol {CROSS_TERMS:e})"
        ),
    }
}

fn balancer_unitarity() -> Outcome {
    let mut r = rng(7);
    let mut worst = 0.0f64;
    let mut built = 0;
    for n in 3..=8 {
        for _ in 0..100 {
            let w = random_complex_wspec(&mut r, n);
            let spec = build_balancer(&w).unwrap();
            worst = worst.max(spec.matrix.to_dense().unitarity_defect());
            built += 1;
        }
    }
    Outcome {
        pass: worst < UNITARITY,
        detail: format!(
            "max ||U^dag U - I||_max = {worst:.1e} over {built} matrices (tol {UNITARITY:e})"
        ),
    }
}

fn optics_round_trip() -> Outcome {
    let mut r = rng(8);
    let mut worst = 0.0f64;
    for i in 0..1000 {
        let w = random_complex_wspec(&mut r, 2 + i % 11);
        let out = simulate_chain(&design_chain(&w).unwrap());
        for (a, c) in out.magnitudes().iter().zip(w.coeffs()) {
            worst = worst.max((a - c.norm()).abs());
        }
    }
    let mut pipeline = 0.0f64;
    for i in 0..100 {
        let w = random_complex_wspec(&mut r, 2 + i % 7);
        let (a, b) = random_qubit(&mut r);
        let input = qubit(a, b);
        let register = cavity_register(&simulate_chain(&design_chain(&w).unwrap())).unwrap();
        let via = run_qst(&register.spec, &input)
            .unwrap()
            .report
            .success_probability;
        let direct = run_qst(&w, &input).unwrap().report.success_probability;
        pipeline = pipeline.max((via - direct).abs());
    }
    Outcome {
        pass: worst < ROUND_TRIP && pipeline < PIPELINE,
        detail: format!(
            "max magnitude error {worst:.1e} over 10^3 targets (tol {ROUND_TRIP:e}); pipeline vs direct {pipeline:.1e} (tol {PIPELINE:e})"
        ),
    }
}

fn cli_golden_files() -> Outcome {
    let failures: Vec<String> = support::CASES
        .iter()
        .filter_map(|c| c.check().err())
        .collect();
    Outcome {
        pass: failures.is_empty(),
        detail: if failures.is_empty() {
            format!(
                "{} invocations byte-identical with expected exit codes",
                support::CASES.len()
            )
        } else {
            failures.join("; ")
        },
    }
}

fn main() {
    let ws = sweep_wspecs();
    let criteria: Vec<(&str, Check)> = vec![
        (
            "closed-form vs Wootters concurrence",
            Box::new(|| closed_form_vs_wootters(&ws)),
        ),
        (
            "reduced pair density exact",
            Box::new(|| reduced_density_exact(&ws)),
        ),
        (
            "total concurrence bound and maximum",
            Box::new(total_concurrence_bound),
        ),
        ("state transfer probabilities", Box::new(qst_probabilities)),
        (
            "fidelity on success branches",
            Box::new(fidelity_on_success),
        ),
        ("remote preparation", Box::new(preparation)),
        ("balancer unitarity", Box::new(balancer_unitarity)),
        (
            "optics round trip and pipeline",
            Box::new(optics_round_trip),
        ),
        ("CLI golden files", Box::new(cli_golden_files)),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let outcome = check();
        let tag = if outcome.pass { "PASS" } else { "FAIL" };
        println!("[{tag}] {}. {name}: {}", i + 1, outcome.detail);
        if !outcome.pass {
            failed += 1;
        }
    }
    println!(
        "acceptance: {} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
