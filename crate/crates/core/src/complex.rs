//! Complex-linear and anti-linear operators over the Gaussian rationals, and
//! the passage between them and real matrices with a complex structure.
//!
//! A complex vector `(z₁,…,z_m)` is realified as the interleaved real vector
//! `(Re z₁, Im z₁, …, Re z_m, Im z_m)`; the standard complex structure is
//! block-diagonal `[[0, −1], [1, 0]]`. An anti-linear operator `v ↦ M·v̄` is
//! stored as the pair `(M, antilinear = true)`.

use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{Echelon, Matrix};
use crate::rational::Q;

/// Gaussian rational `re + i·im`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cq {
    pub re: Q,
    pub im: Q,
}

impl Cq {
    pub fn new(re: Q, im: Q) -> Self {
        Cq { re, im }
    }

    pub fn real(re: Q) -> Self {
        Cq { re, im: Q::zero() }
    }

    pub fn zero() -> Self {
        Cq::real(Q::zero())
    }

    pub fn one() -> Self {
        Cq::real(Q::one())
    }

    pub fn i() -> Self {
        Cq { re: Q::zero(), im: Q::one() }
    }

    pub fn conj(&self) -> Self {
        Cq { re: self.re.clone(), im: -self.im.clone() }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn norm_sq(&self) -> Q {
        &self.re * &self.re + &self.im * &self.im
    }
}

impl Add for &Cq {
    type Output = Cq;
    fn add(self, o: &Cq) -> Cq {
        Cq { re: &self.re + &o.re, im: &self.im + &o.im }
    }
}

impl Sub for &Cq {
    type Output = Cq;
    fn sub(self, o: &Cq) -> Cq {
        Cq { re: &self.re - &o.re, im: &self.im - &o.im }
    }
}

impl Mul for &Cq {
    type Output = Cq;
    fn mul(self, o: &Cq) -> Cq {
        Cq {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }
}

impl Neg for &Cq {
    type Output = Cq;
    fn neg(self) -> Cq {
        Cq { re: -self.re.clone(), im: -self.im.clone() }
    }
}

/// Dense square-or-rectangular matrix over the Gaussian rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Cq>,
}

impl CMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        CMatrix { rows, cols, data: vec![Cq::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for k in 0..n {
            m.set(k, k, Cq::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Cq) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        CMatrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Cq {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Cq) {
        self.data[r * self.cols + c] = v;
    }

    pub fn conj(&self) -> CMatrix {
        CMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(Cq::conj).collect() }
    }

    pub fn scale(&self, s: &Cq) -> CMatrix {
        CMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * s).collect() }
    }

    pub fn add(&self, o: &CMatrix) -> CMatrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        CMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect() }
    }

    pub fn mul(&self, o: &CMatrix) -> CMatrix {
        assert_eq!(self.cols, o.rows, "complex product shape mismatch");
        let mut out = CMatrix::zeros(self.rows, o.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..o.cols {
                    let b = o.get(k, c);
                    if !b.is_zero() {
                        let v = &out.data[r * o.cols + c] + &(a * b);
                        out.data[r * o.cols + c] = v;
                    }
                }
            }
        }
        out
    }

    pub fn kron(&self, o: &CMatrix) -> CMatrix {
        CMatrix::from_fn(self.rows * o.rows, self.cols * o.cols, |r, c| {
            let a = self.get(r / o.rows, c / o.cols);
            if a.is_zero() {
                Cq::zero()
            } else {
                a * o.get(r % o.rows, c % o.cols)
            }
        })
    }

    /// Real matrix of `v ↦ M·v` (or `v ↦ M·v̄` when `antilinear`).
    pub fn realify(&self, antilinear: bool) -> Matrix {
        let mut out = Matrix::zeros(2 * self.rows, 2 * self.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                let z = self.get(r, c);
                let (a, b) = (z.re.clone(), z.im.clone());
                // [[a, −b], [b, a]] for z·v; right-multiplied by diag(1, −1) for z·v̄.
                out[(2 * r, 2 * c)] = a.clone();
                out[(2 * r + 1, 2 * c)] = b.clone();
                if antilinear {
                    out[(2 * r, 2 * c + 1)] = b;
                    out[(2 * r + 1, 2 * c + 1)] = -a;
                } else {
                    out[(2 * r, 2 * c + 1)] = -b;
                    out[(2 * r + 1, 2 * c + 1)] = a;
                }
            }
        }
        out
    }
}

/// Standard complex structure on `ℝ^{2m}`.
pub fn standard_complex_structure(m: usize) -> Matrix {
    CMatrix::identity(m).scale(&Cq::i()).realify(false)
}

/// A real-linear operator on `ℂ^m` that is either complex-linear or anti-linear.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexOp {
    pub matrix: CMatrix,
    pub antilinear: bool,
}

impl ComplexOp {
    pub fn linear(matrix: CMatrix) -> Self {
        ComplexOp { matrix, antilinear: false }
    }

    pub fn antilinear(matrix: CMatrix) -> Self {
        ComplexOp { matrix, antilinear: true }
    }

    pub fn identity(m: usize) -> Self {
        Self::linear(CMatrix::identity(m))
    }

    pub fn realify(&self) -> Matrix {
        self.matrix.realify(self.antilinear)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &ComplexOp) -> ComplexOp {
        let rhs = if self.antilinear { other.matrix.conj() } else { other.matrix.clone() };
        ComplexOp { matrix: self.matrix.mul(&rhs), antilinear: self.antilinear != other.antilinear }
    }

    /// Tensor product over ℂ. Only defined when both factors have the same
    /// linearity type.
    pub fn kron(&self, other: &ComplexOp) -> Result<ComplexOp> {
        if self.antilinear != other.antilinear {
            return Err(Error::NotComplex(
                "tensor product over ℂ of a linear and an anti-linear map is not well defined".into(),
            ));
        }
        Ok(ComplexOp { matrix: self.matrix.kron(&other.matrix), antilinear: self.antilinear })
    }

    /// Reads a real matrix on `ℝ^{2m}` (standard complex structure) as a
    /// complex-linear or anti-linear operator.
    pub fn from_real(a: &Matrix) -> Result<ComplexOp> {
        if !a.is_square() || !a.rows().is_multiple_of(2) {
            return Err(Error::NotComplex(format!("{}x{} matrix has no complex reading", a.rows(), a.cols())));
        }
        let m = a.rows() / 2;
        let j = standard_complex_structure(m);
        let antilinear = if a.commutes_with(&j) {
            false
        } else if a.anticommutes_with(&j) {
            true
        } else {
            return Err(Error::NotComplex("matrix is neither complex-linear nor anti-linear".into()));
        };
        let mat = CMatrix::from_fn(m, m, |r, c| Cq::new(a[(2 * r, 2 * c)].clone(), a[(2 * r + 1, 2 * c)].clone()));
        let op = ComplexOp { matrix: mat, antilinear };
        debug_assert_eq!(&op.realify(), a);
        Ok(op)
    }
}

/// A real basis `(v₁, J v₁, v₂, J v₂, …)` adapted to a complex structure `J`,
/// turning `J` into the standard block form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexFrame {
    basis: Matrix,
    inverse: Matrix,
}

impl ComplexFrame {
    /// Greedy frame: standard basis vectors are taken in order whenever they
    /// are not already in the complex span of those chosen.
    pub fn adapted_to(j: &Matrix) -> Result<ComplexFrame> {
        let n = j.rows();
        if !j.is_square() || !n.is_multiple_of(2) || !(j * j).is_scalar(&-Q::one()) {
            return Err(Error::NotComplex("complex structure must square to −Id on an even-dimensional space".into()));
        }
        let mut ech = Echelon::new(n);
        let mut cols: Vec<Vec<Q>> = Vec::new();
        for k in 0..n {
            if cols.len() == n {
                break;
            }
            let mut v = vec![Q::zero(); n];
            v[k] = Q::one();
            let jv = j.apply(&v);
            let sparse = |w: &[Q]| w.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(c, x)| (c, x.clone())).collect();
            let mut trial = ech.clone();
            if trial.insert(sparse(&v)) && trial.insert(sparse(&jv)) {
                ech = trial;
                cols.push(v);
                cols.push(jv);
            }
        }
        let basis = Matrix::from_columns(&cols);
        let inverse = basis.inverse().ok_or_else(|| Error::Internal("adapted frame is singular".into()))?;
        Ok(ComplexFrame { basis, inverse })
    }

    pub fn identity(n: usize) -> ComplexFrame {
        ComplexFrame { basis: Matrix::identity(n), inverse: Matrix::identity(n) }
    }

    /// Columns are the frame vectors in the original coordinates.
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn to_standard(&self, a: &Matrix) -> Matrix {
        &(&self.inverse * a) * &self.basis
    }

    pub fn from_standard(&self, a: &Matrix) -> Matrix {
        &(&self.basis * a) * &self.inverse
    }

    /// Complex reading of a real operator in this frame.
    pub fn complex_form(&self, a: &Matrix) -> Result<ComplexOp> {
        ComplexOp::from_real(&self.to_standard(a))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn cq(re: i64, im: i64) -> Cq {
        Cq::new(int(re), int(im))
    }

    #[test]
    fn realify_respects_composition() {
        let a = ComplexOp::antilinear(CMatrix::from_fn(2, 2, |r, c| cq(r as i64 + 1, c as i64 - 1)));
        let b = ComplexOp::linear(CMatrix::from_fn(2, 2, |r, c| cq(c as i64, r as i64 + 2)));
        for (x, y) in [(&a, &b), (&b, &a), (&a, &a), (&b, &b)] {
            assert_eq!(x.compose(y).realify(), &x.realify() * &y.realify());
        }
    }

    #[test]
    fn from_real_inverts_realify() {
        let m = CMatrix::from_fn(3, 3, |r, c| cq((r * c) as i64 - 1, r as i64 - c as i64));
        for anti in [false, true] {
            let op = ComplexOp { matrix: m.clone(), antilinear: anti };
            assert_eq!(ComplexOp::from_real(&op.realify()).unwrap(), op);
        }
    }

    #[test]
    fn kron_of_mixed_types_is_rejected() {
        let a = ComplexOp::identity(1);
        let b = ComplexOp::antilinear(CMatrix::identity(1));
        assert!(a.kron(&b).is_err());
    }

    #[test]
    fn adapted_frame_standardizes_structure() {
        // J on ℝ⁴: e0 ↦ −e3, e3 ↦ e0, e1 ↦ e2, e2 ↦ −e1.
        let j = Matrix::from_i64(&[&[0, 0, 0, 1], &[0, 0, -1, 0], &[0, 1, 0, 0], &[-1, 0, 0, 0]]);
        let f = ComplexFrame::adapted_to(&j).unwrap();
        assert_eq!(f.to_standard(&j), standard_complex_structure(2));
    }
}
