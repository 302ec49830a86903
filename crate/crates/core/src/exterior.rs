//! The exterior algebra Λ*ℝ² in the basis `{1, e₁, e₂, e₁e₂}`, with wedge and
//! contraction operators and the five Clifford images built from them.

use crate::linalg::Matrix;
use crate::rational::Q;
use num_traits::Zero;

pub const DIM: usize = 4;

/// Basis index of the form with the given bitmask (`1 = e₁`, `2 = e₂`).
fn index(mask: usize) -> usize {
    mask
}

fn sign_before(mask: usize, k: usize) -> i64 {
    // Number of basis 1-forms in `mask` that precede `e_k`.
    if (mask & ((1 << k) - 1)).count_ones().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// `e_k^∧` for `k ∈ {0, 1}`.
pub fn wedge_basis(k: usize) -> Matrix {
    let mut m = Matrix::zeros(DIM, DIM);
    for mask in 0..DIM {
        if mask >> k & 1 == 0 {
            let s = sign_before(mask, k);
            m[(index(mask | 1 << k), index(mask))] = Q::from_integer(s.into());
        }
    }
    m
}

/// `e_k^⌟` (interior product with the metric dual of `e_k`).
pub fn contraction_basis(k: usize) -> Matrix {
    wedge_basis(k).transpose()
}

/// `v^∧` for `v = v₁e₁ + v₂e₂`.
pub fn wedge(v: &[Q; 2]) -> Matrix {
    &wedge_basis(0).scale(&v[0]) + &wedge_basis(1).scale(&v[1])
}

pub fn contraction(v: &[Q; 2]) -> Matrix {
    wedge(v).transpose()
}

/// `(−1)^deg`.
pub fn parity() -> Matrix {
    Matrix::from_fn(DIM, DIM, |r, c| {
        if r != c {
            Q::zero()
        } else if (r as u32).count_ones().is_multiple_of(2) {
            Q::from_integer(1.into())
        } else {
            Q::from_integer((-1).into())
        }
    })
}

/// Images of `e₁, e₂, ε₁, ε₂, ε₃` under the representation of `Cl(2,3)`:
/// `e_k ↦ e_k^∧ − e_k^⌟`, `ε₁ ↦ (−1)^deg`, `ε_{k+1} ↦ e_k^∧ + e_k^⌟`.
pub fn cl23_images() -> [Matrix; 5] {
    let w = [wedge_basis(0), wedge_basis(1)];
    let c = [contraction_basis(0), contraction_basis(1)];
    [&w[0] - &c[0], &w[1] - &c[1], parity(), &w[0] + &c[0], &w[1] + &c[1]]
}

/// `i = −ρ(e₁e₂ε₁)`.
pub fn complex_structure() -> Matrix {
    let [e1, e2, eps1, _, _] = cl23_images();
    -&(&(&e1 * &e2) * &eps1)
}
