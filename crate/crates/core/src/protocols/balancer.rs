//! The balancing unitary applied by the receiver after the sender's measurement.
//!
//! On the `M = 2^(N-1)` dimensional register left after measuring the input
//! qubit and the sender's W qubit (middle qubits followed by the receiver),
//! the printed element list is
//!
//! ```text
//! U[2,2] = t          U[2,M] = sqrt(1-|t|^2)
//! U[3,2] = -sqrt(1-|t|^2)   U[3,M] = conj(t)
//! U[k,k] = 1 for k not in {2, 3, M}
//! U[M,L] = 1 with L = 2^(N-2) + 1
//! ```
//!
//! (1-based). For `N >= 4` the last entry shares column `L` with `U[L,L] = 1`
//! and leaves column 3 empty, so the list is not unitary as written. The
//! rotation block is kept verbatim; the unit entries are placed where they fit
//! and leftover rows and columns are paired in ascending order, which for
//! `N >= 4` moves the stray entry to `U[M,3]`. For `N = 3` the list is already
//! a unitary and nothing moves.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::matrix::CMatrix;
use crate::scalar::{cone, creal, czero, Scalar};
use crate::wspec::WSpec;

/// Ratio that equalizes the sender- and receiver-weighted amplitudes:
/// `c_N / c_1` when `|c_1| > |c_N|`, `c_1 / c_N` when `|c_N| > |c_1|`, and 1
/// when the magnitudes agree. Always `|t| <= 1`.
pub fn compute_t<T: Scalar>(c1: Complex<T>, cn: Complex<T>) -> Result<Complex<T>> {
    let (p1, pn) = (c1.norm_sqr(), cn.norm_sqr());
    if p1 == T::zero() && pn == T::zero() {
        return Err(Error::DegenerateProtocol(
            "both endpoint coefficients vanish".into(),
        ));
    }
    Ok(if p1 > pn {
        cn / c1
    } else if pn > p1 {
        c1 / cn
    } else {
        cone()
    })
}

/// Which receiver amplitude the rotation block scales by `t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScaledComponent {
    /// Receiver in `|1>`, middle qubits in `|0..0>` (register index 1). This
    /// is the printed orientation; used when the receiver's coefficient is
    /// the larger one.
    ReceiverExcited,
    /// Receiver in `|0>` (register index 0): the printed matrix conjugated by
    /// the transposition of indices 0 and 1. Used when the sender's
    /// coefficient is the larger one.
    ReceiverGround,
}

/// Square matrix stored by columns, each holding its nonzero `(row, value)` entries.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseMatrix<T> {
    dim: usize,
    columns: Vec<Vec<(usize, Complex<T>)>>,
}

impl<T: Scalar> SparseMatrix<T> {
    fn new(dim: usize) -> Self {
        Self {
            dim,
            columns: vec![Vec::new(); dim],
        }
    }

    fn set(&mut self, row: usize, col: usize, value: Complex<T>) {
        let column = &mut self.columns[col];
        match column.iter_mut().find(|(r, _)| *r == row) {
            Some(entry) => entry.1 = value,
            None => column.push((row, value)),
        }
        column.sort_by_key(|(r, _)| *r);
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Entry at 0-based `(row, col)`.
    pub fn get(&self, row: usize, col: usize) -> Complex<T> {
        self.columns[col]
            .iter()
            .find(|(r, _)| *r == row)
            .map_or(czero(), |(_, v)| *v)
    }

    pub fn nonzeros(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn mul_vec(&self, v: &[Complex<T>]) -> Result<Vec<Complex<T>>> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: v.len(),
            });
        }
        let mut out = vec![czero(); self.dim];
        for (col, entries) in self.columns.iter().enumerate() {
            let x = v[col];
            if x == czero() {
                continue;
            }
            for &(row, value) in entries {
                out[row] = out[row] + value * x;
            }
        }
        Ok(out)
    }

    /// `max |U^dag U - I|`, computed from the sparse columns.
    pub fn unitarity_defect(&self) -> T {
        let mut by_row: Vec<Vec<(usize, Complex<T>)>> = vec![Vec::new(); self.dim];
        for (col, entries) in self.columns.iter().enumerate() {
            for &(row, value) in entries {
                by_row[row].push((col, value));
            }
        }
        let mut worst = T::zero();
        // diagonal of the Gram matrix
        for entries in &self.columns {
            let norm = entries.iter().fold(T::zero(), |a, (_, v)| a + v.norm_sqr());
            worst = worst.max((norm - T::one()).abs());
        }
        // off-diagonal: only column pairs sharing a row can overlap
        let mut gram: std::collections::BTreeMap<(usize, usize), Complex<T>> = Default::default();
        for entries in &by_row {
            for (a, &(ci, vi)) in entries.iter().enumerate() {
                for &(cj, vj) in &entries[a + 1..] {
                    let key = (ci.min(cj), ci.max(cj));
                    let term = if ci < cj {
                        vi.conj() * vj
                    } else {
                        vj.conj() * vi
                    };
                    let slot = gram.entry(key).or_insert_with(czero);
                    *slot = *slot + term;
                }
            }
        }
        gram.values().fold(worst, |acc, z| acc.max(z.norm()))
    }

    pub fn to_dense(&self) -> CMatrix<T> {
        let mut m = CMatrix::zeros(self.dim, self.dim);
        for (col, entries) in self.columns.iter().enumerate() {
            for &(row, value) in entries {
                m[(row, col)] = value;
            }
        }
        m
    }

    fn swap_indices(&self, a: usize, b: usize) -> Self {
        let relabel = |i: usize| {
            if i == a {
                b
            } else if i == b {
                a
            } else {
                i
            }
        };
        let mut out = Self::new(self.dim);
        for (col, entries) in self.columns.iter().enumerate() {
            for &(row, value) in entries {
                out.set(relabel(row), relabel(col), value);
            }
        }
        out
    }
}

/// An entry moved from one `(row, column)` position to another, 1-based.
pub type Repair = ((usize, usize), (usize, usize));

/// Balancing unitary for one W register.
#[derive(Debug, Clone, PartialEq)]
pub struct BalancerSpec<T> {
    /// Size of the W register the protocol runs on (at least 3).
    pub n: usize,
    /// `2^(N-1)`.
    pub m: usize,
    /// `2^(N-2) + 1` (1-based column of the printed `U[M,L]` entry).
    pub l: usize,
    pub t: Complex<T>,
    pub scaled: ScaledComponent,
    /// 1-based `(row, col)` entries of the printed list that had to move.
    pub repaired: Vec<Repair>,
    pub matrix: SparseMatrix<T>,
}

impl<T: Scalar> BalancerSpec<T> {
    /// The matrix as printed (plus repair), before any orientation change.
    pub fn printed(n: usize, t: Complex<T>) -> Result<(SparseMatrix<T>, Vec<Repair>)> {
        if n < 3 {
            return Err(Error::Construction(format!(
                "balancer needs N >= 3, got {n}"
            )));
        }
        if n > usize::BITS as usize {
            return Err(Error::Construction(format!("N = {n} too large")));
        }
        if t.norm() > T::one() + T::tolerances().exact {
            return Err(Error::Construction(format!("|t| = {} exceeds 1", t.norm())));
        }
        let m = 1usize << (n - 1);
        let l = (1usize << (n - 2)) + 1;
        let s = creal((T::one() - t.norm_sqr()).max(T::zero()).sqrt());
        let mut u = SparseMatrix::new(m);
        // 0-based: printed (i, j) -> (i-1, j-1)
        let (r2, r3, cm) = (1, 2, m - 1);
        u.set(r2, 1, t);
        u.set(r3, cm, t.conj());
        u.set(r3, 1, -s);
        u.set(r2, cm, s);

        let mut row_used = vec![false; m];
        let mut col_used = vec![false; m];
        for idx in [r2, r3] {
            row_used[idx] = true;
        }
        for idx in [1, cm] {
            col_used[idx] = true;
        }
        for k in (0..m).filter(|&k| k != 1 && k != 2 && k != m - 1) {
            u.set(k, k, cone());
            row_used[k] = true;
            col_used[k] = true;
        }
        let mut repaired = Vec::new();
        let (ml_row, ml_col) = (m - 1, l - 1);
        if !row_used[ml_row] && !col_used[ml_col] {
            u.set(ml_row, ml_col, cone());
            row_used[ml_row] = true;
            col_used[ml_col] = true;
        }
        let free_rows: Vec<usize> = (0..m).filter(|&r| !row_used[r]).collect();
        let free_cols: Vec<usize> = (0..m).filter(|&c| !col_used[c]).collect();
        if free_rows.len() != free_cols.len() {
            return Err(Error::Construction(format!(
                "{} free rows but {} free columns",
                free_rows.len(),
                free_cols.len()
            )));
        }
        for (&r, &c) in free_rows.iter().zip(&free_cols) {
            u.set(r, c, cone());
            if (r, c) != (ml_row, ml_col) {
                repaired.push(((ml_row + 1, ml_col + 1), (r + 1, c + 1)));
            }
        }
        let defect = u.unitarity_defect();
        if defect > T::tolerances().branch {
            return Err(Error::Construction(format!(
                "completed matrix has unitarity defect {defect}"
            )));
        }
        Ok((u, repaired))
    }
}

/// Balancer for a W register, oriented so that the larger of `|c_1|`, `|c_N|`
/// is scaled down to the smaller one.
pub fn build_balancer<T: Scalar>(w: &WSpec<T>) -> Result<BalancerSpec<T>> {
    let n = w.num_qubits();
    let (c1, cn) = (w.first(), w.last());
    let t = compute_t(c1, cn)?;
    let (printed, repaired) = BalancerSpec::printed(n, t)?;
    let scaled = if c1.norm_sqr() > cn.norm_sqr() {
        ScaledComponent::ReceiverGround
    } else {
        ScaledComponent::ReceiverExcited
    };
    let matrix = match scaled {
        ScaledComponent::ReceiverExcited => printed,
        ScaledComponent::ReceiverGround => printed.swap_indices(0, 1),
    };
    Ok(BalancerSpec {
        n,
        m: 1 << (n - 1),
        l: (1 << (n - 2)) + 1,
        t,
        scaled,
        repaired,
        matrix,
    })
}
