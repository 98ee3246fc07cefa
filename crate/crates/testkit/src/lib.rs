//! Reference implementations used only by tests.
//!
//! Each oracle works on raw amplitude arrays with its own index arithmetic and
//! never calls the library routine it is checking.

use rand::Rng;
use wsim_core::protocols::build_balancer;
use wsim_core::{Result, WSpecF64, C64};

pub fn complex(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn normalize(mut v: Vec<C64>) -> Vec<C64> {
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    for z in &mut v {
        *z /= norm;
    }
    v
}

fn nonzero_vector<R: Rng>(
    rng: &mut R,
    len: usize,
    mut draw: impl FnMut(&mut R) -> C64,
) -> Vec<C64> {
    loop {
        let v: Vec<C64> = (0..len).map(|_| draw(rng)).collect();
        if v.iter().map(|z| z.norm_sqr()).sum::<f64>() > 1e-6 {
            return normalize(v);
        }
    }
}

pub fn random_complex_wspec<R: Rng>(rng: &mut R, n: usize) -> WSpecF64 {
    let v = nonzero_vector(rng, n, |r| {
        complex(r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0))
    });
    WSpecF64::new(v).expect("normalized by construction")
}

/// Real coefficients; `nonnegative` restricts them to `[0, 1]`.
pub fn random_real_wspec<R: Rng>(rng: &mut R, n: usize, nonnegative: bool) -> WSpecF64 {
    let lo = if nonnegative { 0.0 } else { -1.0 };
    let v = nonzero_vector(rng, n, |r| complex(r.gen_range(lo..1.0), 0.0));
    WSpecF64::new(v).expect("normalized by construction")
}

pub fn random_state<R: Rng>(rng: &mut R, num_qubits: usize) -> Vec<C64> {
    nonzero_vector(rng, 1 << num_qubits, |r| {
        complex(r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0))
    })
}

/// `(alpha, beta)` with complex amplitudes.
pub fn random_qubit<R: Rng>(rng: &mut R) -> (C64, C64) {
    let v = random_state(rng, 1);
    (v[0], v[1])
}

/// Real `(alpha, beta)` on the unit circle.
pub fn random_real_qubit<R: Rng>(rng: &mut R) -> (f64, f64) {
    let theta: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
    (theta.cos(), theta.sin())
}

/// Amplitude vector of `sum_i c_i |0..1_i..0>` with qubit 1 as the top bit.
pub fn w_amplitudes(coeffs: &[C64]) -> Vec<C64> {
    let n = coeffs.len();
    let mut v = vec![C64::new(0.0, 0.0); 1 << n];
    for (i, &c) in coeffs.iter().enumerate() {
        v[1 << (n - 1 - i)] = c;
    }
    v
}

/// Reduced density matrix of qubits `(m, n)` by explicit summation over the
/// other qubits. Row and column order `00, 01, 10, 11` with `m` first.
pub fn reduced_pair_density(amps: &[C64], num_qubits: usize, m: usize, n: usize) -> [[C64; 4]; 4] {
    let bm = 1 << (num_qubits - m);
    let bn = 1 << (num_qubits - n);
    let embed = |rest: usize, k: usize| {
        rest | if k & 2 != 0 { bm } else { 0 } | if k & 1 != 0 { bn } else { 0 }
    };
    let mut rho = [[C64::new(0.0, 0.0); 4]; 4];
    for rest in (0..amps.len()).filter(|i| i & (bm | bn) == 0) {
        for (r, row) in rho.iter_mut().enumerate() {
            for (c, entry) in row.iter_mut().enumerate() {
                *entry += amps[embed(rest, r)] * amps[embed(rest, c)].conj();
            }
        }
    }
    rho
}

/// One sender outcome of the transfer, as seen by the oracle.
#[derive(Debug, Clone)]
pub struct OracleBranch {
    /// Sender record `(sign bit, W bit)`.
    pub outcome: (u8, u8),
    /// Probability that the herald fires, averaged over inputs.
    pub herald: f64,
    /// The receiver's map from input to output is a multiple of a unitary,
    /// so some fixed correction recovers every input exactly.
    pub faithful: bool,
}

/// Exact transfer probability by dense enumeration.
///
/// Runs the protocol on `|0>` and `|1>` inputs, collects for each sender
/// outcome the 2x2 map `K` from input to (unnormalized) receiver state on the
/// heralded sector, and counts the branch when `K^dagger K` is a multiple of
/// the identity. Receiver corrections are not modeled: a branch counts exactly
/// when some input-independent unitary could undo it.
pub fn qst_oracle(w: &WSpecF64) -> Result<(f64, Vec<OracleBranch>)> {
    let coeffs: Vec<C64> = if w.num_qubits() == 2 {
        vec![w.first(), C64::new(0.0, 0.0), w.last()]
    } else {
        w.coeffs().to_vec()
    };
    let n = coeffs.len();
    let u = build_balancer(&WSpecF64::new(coeffs.clone())?)?
        .matrix
        .to_dense();
    let w_amps = w_amplitudes(&coeffs);
    let dim = 2usize << n;
    let input_bit = 1 << n;
    let sender_bit = 1 << (n - 1);
    let s = std::f64::consts::FRAC_1_SQRT_2;

    // k_maps[outcome][input] = receiver amplitudes (|0>, |1>)
    let mut k_maps = [[[C64::new(0.0, 0.0); 2]; 2]; 4];
    for input in 0..2 {
        let mut v = vec![C64::new(0.0, 0.0); dim];
        for (i, &a) in w_amps.iter().enumerate() {
            v[(input << n) | i] = a;
        }
        // CNOT input -> sender
        let mut after = vec![C64::new(0.0, 0.0); dim];
        for (i, &a) in v.iter().enumerate() {
            let j = if i & input_bit != 0 {
                i ^ sender_bit
            } else {
                i
            };
            after[j] = a;
        }
        // Hadamard on input
        let mut h = vec![C64::new(0.0, 0.0); dim];
        for i0 in (0..dim).filter(|i| i & input_bit == 0) {
            let (a0, a1) = (after[i0], after[i0 | input_bit]);
            h[i0] = (a0 + a1) * s;
            h[i0 | input_bit] = (a0 - a1) * s;
        }
        let block = 1 << (n - 1);
        for outcome in 0..4 {
            let slice = &h[outcome * block..(outcome + 1) * block];
            let rotated = u.mul_vec(slice)?;
            k_maps[outcome][input] = [rotated[0], rotated[1]];
        }
    }

    let mut total = 0.0;
    let mut branches = Vec::new();
    for (outcome, k) in k_maps.iter().enumerate() {
        // columns of K are k[0], k[1]
        let g00: f64 = k[0].iter().map(|z| z.norm_sqr()).sum();
        let g11: f64 = k[1].iter().map(|z| z.norm_sqr()).sum();
        let g01 = k[0][0].conj() * k[1][0] + k[0][1].conj() * k[1][1];
        let faithful = g00 > 1e-14 && (g00 - g11).abs() < 1e-12 && g01.norm() < 1e-12;
        if faithful {
            total += g00;
        }
        branches.push(OracleBranch {
            outcome: ((outcome >> 1) as u8, (outcome & 1) as u8),
            herald: 0.5 * (g00 + g11),
            faithful,
        });
    }
    Ok((total, branches))
}

/// Preparation by direct contraction: project the middle qubits on `0`,
/// contract qubit 1 with `<phi|` and `<psi|`, and test whether what is left on
/// qubit N is parallel to `phi` or `psi`.
///
/// Returns `(probability the last qubit ends in phi or psi, probability it
/// ends in phi)`.
pub fn prepare_oracle(w: &WSpecF64, alpha: f64, beta: f64) -> (f64, f64) {
    let n = w.num_qubits();
    let amps = w_amplitudes(w.coeffs());
    let top = 1 << (n - 1);
    let pair = |a: usize, b: usize| amps[if a == 1 { top } else { 0 } | b];
    let phi = [alpha, beta];
    let psi = [beta, -alpha];
    let mut either = 0.0;
    let mut on_phi = 0.0;
    for bra in [phi, psi] {
        let bob: Vec<C64> = (0..2)
            .map(|b| pair(0, b) * bra[0] + pair(1, b) * bra[1])
            .collect();
        let p: f64 = bob.iter().map(|z| z.norm_sqr()).sum();
        if p < 1e-14 {
            continue;
        }
        let overlap = |ket: [f64; 2]| (bob[0] * ket[0] + bob[1] * ket[1]).norm_sqr() / p;
        if overlap(phi) > 1.0 - 1e-9 {
            either += p;
            on_phi += p;
        } else if overlap(psi) > 1.0 - 1e-9 {
            either += p;
        }
    }
    (either, on_phi)
}

/// Magnitudes produced by a serial chain, recomputed from scratch.
pub fn chain_output(reflectivities: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(reflectivities.len() + 1);
    let mut passing = 1.0;
    for &r in reflectivities {
        out.push(passing * r);
        passing *= (1.0 - r * r).max(0.0).sqrt();
    }
    out.push(passing);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn oracle_on_uniform_registers() {
        for n in 2..=6 {
            let (p, _) = qst_oracle(&WSpecF64::uniform(n).unwrap()).unwrap();
            let want = if n == 2 { 1.0 } else { 2.0 / n as f64 };
            assert!((p - want).abs() < 1e-12, "N = {n}: {p}");
        }
    }

    #[test]
    fn reduced_density_of_w3() {
        let w = WSpecF64::uniform(3).unwrap();
        let rho = reduced_pair_density(&w_amplitudes(w.coeffs()), 3, 1, 2);
        let third = 1.0 / 3.0;
        assert!((rho[0][0].re - third).abs() < 1e-15);
        assert!((rho[1][2].re - third).abs() < 1e-15);
        assert!(rho[3][3].norm() < 1e-15);
    }

    #[test]
    fn prepare_oracle_two_qubits() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let w = WSpecF64::from_real(&[s, -s]).unwrap();
        let (either, phi) = prepare_oracle(&w, 0.6, 0.8);
        assert!((either - 1.0).abs() < 1e-12);
        assert!((phi - 0.5).abs() < 1e-12);
    }
}
