use serde_json::{json, Map, Value};
use wsim_core::entanglement::{
    mirror_concurrence, pair_report, pairwise_matrix, total_concurrence,
    unnormalized_total_concurrence,
};
use wsim_core::optics::{cavity_register, design_chain, simulate_chain};
use wsim_core::protocols::{
    prepare_w, rotated_basis, run_qst, run_qst_between, sample_report, ScaledComponent,
};
use wsim_core::{BeamSplitterChainF64, Scalar, StateVectorF64, Target, C64};

use crate::error::CliError;
use crate::input::{real_qubit, CoefficientFile, INPUT_NORM_TOLERANCE};
use crate::output::{cnum, cnums, num, nums, ResultDocument};

type Tol = wsim_core::Tolerances<f64>;

fn tol() -> Tol {
    f64::tolerances()
}

fn echo_file(doc: &mut ResultDocument, file: &CoefficientFile) {
    let inputs = &mut doc.inputs;
    inputs.insert("source".into(), json!(file.source));
    inputs.insert("n".into(), json!(file.spec.num_qubits()));
    inputs.insert("coeffs".into(), cnums(&file.parsed));
    inputs.insert("norm_sqr".into(), num(file.norm_sqr));
    inputs.insert("normalized_coeffs".into(), cnums(file.spec.coeffs()));
    doc.tolerances
        .insert("input_normalization".into(), num(INPUT_NORM_TOLERANCE));
}

fn echo_qubit(doc: &mut ResultDocument, alpha: f64, beta: f64, norm_sqr: f64) {
    doc.inputs.insert("alpha".into(), num(alpha));
    doc.inputs.insert("beta".into(), num(beta));
    doc.inputs.insert("qubit_norm_sqr".into(), num(norm_sqr));
}

fn check_qubit_index(n: usize, q: usize, what: &str) -> Result<(), CliError> {
    if (1..=n).contains(&q) {
        Ok(())
    } else {
        Err(CliError::Usage(format!("{what} {q} is outside 1..={n}")))
    }
}

pub fn concurrence(
    file: &CoefficientFile,
    pair: Option<(usize, usize)>,
) -> Result<ResultDocument, CliError> {
    let mut doc = ResultDocument::new("concurrence");
    echo_file(&mut doc, file);
    let w = &file.spec;
    let n = w.num_qubits();
    let r = &mut doc.results;
    match pair {
        Some((m, k)) => {
            check_qubit_index(n, m, "pair qubit")?;
            check_qubit_index(n, k, "pair qubit")?;
            if m == k {
                return Err(CliError::Usage(format!(
                    "pair needs two distinct qubits, got {m},{k}"
                )));
            }
            doc.inputs.insert("pair".into(), json!([m, k]));
            let report = pair_report(w, m, k)?;
            r.insert("closed_form".into(), num(report.closed_form));
            r.insert("wootters".into(), num(report.wootters));
            r.insert(
                "difference".into(),
                num((report.closed_form - report.wootters).abs()),
            );
            r.insert("eigenvalues".into(), nums(report.eigenvalues));
            doc.tolerances
                .insert("closed_form_vs_wootters".into(), num(1e-9));
        }
        None => {
            let matrix: Vec<Value> = pairwise_matrix(w).into_iter().map(nums).collect();
            r.insert("pairwise".into(), Value::Array(matrix));
            r.insert("total".into(), num(total_concurrence(w)));
            r.insert(
                "total_unnormalized".into(),
                num(unnormalized_total_concurrence(w)),
            );
            let mirror = mirror_concurrence(w);
            r.insert(
                "mirror".into(),
                json!({ "value": num(mirror.value), "self_pair": mirror.self_pair }),
            );
            if let Some(j) = mirror.self_pair {
                doc.warnings.push(format!(
                    "odd N: the mirror sum includes qubit {j} paired with itself (2|c_{j}|^2)"
                ));
            }
        }
    }
    doc.tolerances.insert("exact".into(), num(tol().exact));
    Ok(doc)
}

pub struct QstArgs {
    pub alpha: f64,
    pub beta: f64,
    pub seed: Option<u64>,
    pub trials: u64,
    pub from: Option<usize>,
    pub to: Option<usize>,
}

fn scaled_name(s: ScaledComponent) -> &'static str {
    match s {
        ScaledComponent::ReceiverExcited => "receiver_excited",
        ScaledComponent::ReceiverGround => "receiver_ground",
    }
}

pub fn qst(file: &CoefficientFile, args: &QstArgs) -> Result<ResultDocument, CliError> {
    let mut doc = ResultDocument::new("qst");
    echo_file(&mut doc, file);
    let (alpha, beta, qnorm) = real_qubit(args.alpha, args.beta)?;
    echo_qubit(&mut doc, alpha, beta, qnorm);
    let n = file.spec.num_qubits();
    let from = args.from.unwrap_or(1);
    let to = args.to.unwrap_or(n);
    check_qubit_index(n, from, "--from")?;
    check_qubit_index(n, to, "--to")?;
    if from == to {
        return Err(CliError::Usage(format!("--from and --to are both {from}")));
    }
    doc.inputs.insert("from".into(), json!(from));
    doc.inputs.insert("to".into(), json!(to));

    let input = StateVectorF64::qubit(C64::new(alpha, 0.0), C64::new(beta, 0.0))?;
    let run = run_qst_between(&file.spec, &input, from, to)?;
    let report = &run.report;
    let branches: Vec<Value> = report
        .branches
        .iter()
        .map(|b| {
            json!({
                "outcome": b.outcome,
                "heralded": b.heralded,
                "probability": num(b.probability),
                "fidelity": num(b.bob_fidelity),
            })
        })
        .collect();
    let claimed = report.claimed_probability.unwrap_or(0.0);
    let r = &mut doc.results;
    r.insert("branches".into(), Value::Array(branches));
    r.insert(
        "success_probability".into(),
        num(report.success_probability),
    );
    r.insert("claimed_probability".into(), num(claimed));
    r.insert(
        "difference".into(),
        num((report.success_probability - claimed).abs()),
    );
    r.insert("total_probability".into(), num(report.total_probability()));
    let repaired: Vec<Value> = run
        .balancer
        .repaired
        .iter()
        .map(|&((r0, c0), (r1, c1))| json!({ "from": [r0, c0], "to": [r1, c1] }))
        .collect();
    r.insert(
        "balancer".into(),
        json!({
            "t": cnum(run.balancer.t),
            "scaled_component": scaled_name(run.balancer.scaled),
            "ancilla": run.ancilla,
            "dimension": run.balancer.m,
            "repaired": repaired,
            "unitarity_defect": num(run.balancer.matrix.unitarity_defect()),
        }),
    );
    if let Some(seed) = args.seed {
        let tally = sample_report(report, args.trials, seed);
        let counts: Map<String, Value> = report
            .branches
            .iter()
            .zip(&tally.counts)
            .map(|(b, &c)| {
                let key = format!("{}{}", b.outcome, if b.heralded { "" } else { "/lost" });
                (key, json!(c))
            })
            .collect();
        r.insert(
            "sampling".into(),
            json!({
                "seed": seed,
                "trials": tally.trials,
                "successes": tally.successes,
                "success_rate": num(tally.successes as f64 / tally.trials.max(1) as f64),
                "counts": counts,
            }),
        );
    }
    doc.tolerances
        .insert("fidelity".into(), num(tol().fidelity));
    doc.tolerances.insert("branch".into(), num(tol().branch));
    doc.tolerances.insert("prune".into(), num(tol().prune));
    Ok(doc)
}

fn target_name(t: Option<Target>) -> Value {
    match t {
        Some(Target::Phi) => json!("phi"),
        Some(Target::Psi) => json!("psi"),
        Some(Target::Input) => json!("input"),
        None => Value::Null,
    }
}

pub fn prepare(file: &CoefficientFile, alpha: f64, beta: f64) -> Result<ResultDocument, CliError> {
    let mut doc = ResultDocument::new("prepare");
    echo_file(&mut doc, file);
    let (alpha, beta, qnorm) = real_qubit(alpha, beta)?;
    echo_qubit(&mut doc, alpha, beta, qnorm);
    let basis = rotated_basis(alpha, beta)?;
    let prep = prepare_w(&file.spec, &basis)?;
    let e = &prep.expansion;
    let branches: Vec<Value> = prep
        .report
        .branches
        .iter()
        .map(|b| {
            json!({
                "outcome": b.outcome,
                "heralded": b.heralded,
                "probability": num(b.probability),
                "receiver_state": target_name(b.target),
                "fidelity": num(b.bob_fidelity),
            })
        })
        .collect();
    let r = &mut doc.results;
    r.insert(
        "target_state".into(),
        json!({ "phi": nums([alpha, beta]), "psi": nums([beta, -alpha]) }),
    );
    r.insert(
        "expansion".into(),
        json!({
            "phi_phi": cnum(e.phi_phi),
            "phi_psi": cnum(e.phi_psi),
            "psi_phi": cnum(e.psi_phi),
            "psi_psi": cnum(e.psi_psi),
        }),
    );
    r.insert("middle_probability".into(), num(prep.middle_probability));
    r.insert("branches".into(), Value::Array(branches));
    r.insert(
        "success_probability".into(),
        num(prep.report.success_probability),
    );
    r.insert("target_probability".into(), num(prep.target_probability));
    r.insert(
        "claimed_probability".into(),
        prep.report.claimed_probability.map_or(Value::Null, num),
    );
    r.insert("condition_holds".into(), json!(prep.condition_holds));
    if !prep.condition_holds {
        doc.warnings.push(
            "c_1 != -c_N: the preparation condition does not hold; probabilities are reported as computed"
                .into(),
        );
    }
    doc.tolerances.insert("condition".into(), num(tol().exact));
    doc.tolerances
        .insert("fidelity".into(), num(tol().fidelity));
    Ok(doc)
}

pub fn design_bs(
    file: &CoefficientFile,
    run_pipeline: Option<(f64, f64)>,
) -> Result<ResultDocument, CliError> {
    let mut doc = ResultDocument::new("design-bs");
    echo_file(&mut doc, file);
    let w = &file.spec;
    let chain = design_chain(w)?;
    let out = simulate_chain(&chain);
    let deviation = out
        .amplitudes()
        .iter()
        .zip(w.coeffs())
        .map(|(a, c)| (a - c).norm())
        .fold(0.0, f64::max);
    let r = &mut doc.results;
    r.insert(
        "reflectivities".into(),
        nums(chain.reflectivities().iter().copied()),
    );
    r.insert("transmissivities".into(), nums(chain.transmissivities()));
    r.insert("phases".into(), nums(chain.phases().iter().copied()));
    r.insert(
        "verification".into(),
        json!({
            "target": cnums(w.coeffs()),
            "simulated": cnums(out.amplitudes()),
            "max_deviation": num(deviation),
        }),
    );
    if let Some((alpha, beta)) = run_pipeline {
        let (alpha, beta, qnorm) = real_qubit(alpha, beta)?;
        echo_qubit(&mut doc, alpha, beta, qnorm);
        let input = StateVectorF64::qubit(C64::new(alpha, 0.0), C64::new(beta, 0.0))?;
        let register = cavity_register(&out)?;
        let via_optics = run_qst(&register.spec, &input)?.report.success_probability;
        let direct = run_qst(w, &input)?.report.success_probability;
        doc.results.insert(
            "pipeline".into(),
            json!({
                "index_map": register.index_map,
                "success_probability": num(via_optics),
                "direct_success_probability": num(direct),
                "difference": num((via_optics - direct).abs()),
            }),
        );
        doc.tolerances.insert("pipeline".into(), num(1e-9));
    }
    doc.tolerances.insert("round_trip".into(), num(tol().exact));
    Ok(doc)
}

pub fn simulate_bs(
    reflectivities: Vec<f64>,
    phases: Option<Vec<f64>>,
) -> Result<ResultDocument, CliError> {
    let mut doc = ResultDocument::new("simulate-bs");
    doc.inputs.insert(
        "reflectivities".into(),
        nums(reflectivities.iter().copied()),
    );
    if let Some(p) = &phases {
        doc.inputs.insert("phases".into(), nums(p.iter().copied()));
    }
    if let Some((k, r)) = reflectivities
        .iter()
        .enumerate()
        .find(|(_, r)| !(0.0..=1.0).contains(*r))
    {
        return Err(CliError::Usage(format!(
            "reflectivity {} = {r} is outside [0, 1]",
            k + 1
        )));
    }
    let modes = reflectivities.len() + 1;
    let chain = match phases {
        Some(p) if p.len() != modes => {
            return Err(CliError::Usage(format!(
                "{} reflectivities need {modes} phases, got {}",
                reflectivities.len(),
                p.len()
            )))
        }
        Some(p) => BeamSplitterChainF64::new(reflectivities, p)?,
        None => BeamSplitterChainF64::from_reflectivities(reflectivities)?,
    };
    let out = simulate_chain(&chain);
    let norm_sqr: f64 = out.amplitudes().iter().map(|a| a.norm_sqr()).sum();
    let coeffs: Vec<Value> = out
        .amplitudes()
        .iter()
        .map(|a| if a.im == 0.0 { num(a.re) } else { cnum(*a) })
        .collect();
    let r = &mut doc.results;
    r.insert("amplitudes".into(), cnums(out.amplitudes()));
    r.insert("magnitudes".into(), nums(out.magnitudes()));
    r.insert("norm_sqr".into(), num(norm_sqr));
    r.insert(
        "coefficient_file".into(),
        json!({ "n": modes, "coeffs": coeffs }),
    );
    doc.tolerances.insert("lossless".into(), num(tol().exact));
    Ok(doc)
}
