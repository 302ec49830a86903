//! Fiberwise models of the localized symbol: `σ = c ⊗ i + h ⊗ iᵗ` on the
//! complexified spinors, its split form near the characteristic
//! submanifold, the operator `θ`, the Thom-class symbol, and the intertwiners
//! relating them.
//!
//! Conventions:
//! * `S ⊗_ℝ ℂ` is `S ⊕ S`, with `(a, b) ↦ (−b, a)` as the new `i`.
//! * A point of the model fiber is `(ξ, u_b, u_f)` with `ξ ∈ ℝ^{dim Y}`;
//!   `u_f` pairs with the last two `e` generators, `u_b` with `η₁, η₂`.
//! * `θ` lives on `S(Y)_ℝ ⊗_ℝ Λ*ℝ²`, identified with
//!   `S(Y) ⊗_ℂ (Λ*ℝ² ⊗_ℝ ℂ)` by `x ⊗ (y ⊗ z) ↦ z·x ⊗ y`.
//! * The Thom model lives on `S(Y) ⊗_ℂ Λ_ℂ(ℂ²)` with
//!   `w = (u_b1 + i u_f1, u_b2 + i u_f2)`.

use num_traits::{One, Zero};
use rand::Rng;

use crate::cl3::Cl3Extension;
use crate::complex::{standard_complex_structure, CMatrix, ComplexFrame, ComplexOp, Cq};
use crate::error::{Error, Result};
use crate::exterior;
use crate::linalg::{linear_combination, restrict_space, solve_matrix_space, Echelon, Matrix, MatrixConstraint, SparseRow};
use crate::rational::{frac, Q};
use crate::rep::{first_invertible, graded_intertwiner, tensor_operator, GradedRep};
use crate::clifford::Signature;

/// `[[0, −1], [1, 0]]`.
pub fn j2() -> Matrix {
    standard_complex_structure(1)
}

fn doubled(a: &Matrix) -> Matrix {
    Matrix::identity(2).kron(a)
}

fn times_i(a: &Matrix) -> Matrix {
    j2().kron(a)
}

fn dot(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).fold(Q::zero(), |acc, (x, y)| acc + x * y)
}

/// A point `(ξ, u_b, u_f)` of the model fiber.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberPoint {
    pub xi: Vec<Q>,
    pub u_b: [Q; 2],
    pub u_f: [Q; 2],
}

impl FiberPoint {
    pub fn new(xi: Vec<Q>, u_b: [Q; 2], u_f: [Q; 2]) -> Self {
        FiberPoint { xi, u_b, u_f }
    }

    pub fn zero(dim_y: usize) -> Self {
        FiberPoint { xi: vec![Q::zero(); dim_y], u_b: [Q::zero(), Q::zero()], u_f: [Q::zero(), Q::zero()] }
    }

    /// Coordinates in the order `ξ, u_b, u_f`.
    pub fn coordinates(&self) -> Vec<Q> {
        let mut v = self.xi.clone();
        v.extend(self.u_b.iter().cloned());
        v.extend(self.u_f.iter().cloned());
        v
    }

    pub fn from_coordinates(dim_y: usize, c: &[Q]) -> Self {
        assert_eq!(c.len(), dim_y + 4);
        FiberPoint {
            xi: c[..dim_y].to_vec(),
            u_b: [c[dim_y].clone(), c[dim_y + 1].clone()],
            u_f: [c[dim_y + 2].clone(), c[dim_y + 3].clone()],
        }
    }

    /// One point per coordinate direction.
    pub fn axes(dim_y: usize) -> Vec<FiberPoint> {
        (0..dim_y + 4)
            .map(|k| {
                let mut c = vec![Q::zero(); dim_y + 4];
                c[k] = Q::one();
                Self::from_coordinates(dim_y, &c)
            })
            .collect()
    }

    /// Coordinates drawn from `{−2,…,2}/{1,2}`.
    pub fn random<R: Rng>(rng: &mut R, dim_y: usize) -> Self {
        let c: Vec<Q> = (0..dim_y + 4).map(|_| frac(rng.gen_range(-2..=2), rng.gen_range(1..=2))).collect();
        Self::from_coordinates(dim_y, &c)
    }

    pub fn norm_sq(&self) -> Q {
        let c = self.coordinates();
        dot(&c, &c)
    }

    pub fn scale(&self, t: &Q) -> Self {
        let c: Vec<Q> = self.coordinates().iter().map(|x| x * t).collect();
        Self::from_coordinates(self.xi.len(), &c)
    }

    /// `i·(u_b, u_f) = (−u_f, u_b)`, `ξ` unchanged.
    pub fn rotate_i(&self) -> Self {
        FiberPoint {
            xi: self.xi.clone(),
            u_b: [-self.u_f[0].clone(), -self.u_f[1].clone()],
            u_f: self.u_b.clone(),
        }
    }

    /// The tangent vector `(ξ, u_f)` of the total space.
    pub fn tangent(&self) -> Vec<Q> {
        let mut v = self.xi.clone();
        v.extend(self.u_f.iter().cloned());
        v
    }
}

/// `σ(ξ, h)` on `S ⊕ S` with its complex structure `K` and grading.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolOperator {
    pub matrix: Matrix,
    pub complex_structure: Matrix,
    pub grading: Matrix,
    pub xi: Vec<Q>,
    pub h_coeff: [Q; 2],
    /// `|ξ|² + |h|²`.
    pub norm_sq: Q,
}

impl SymbolOperator {
    pub fn square_is_norm(&self) -> bool {
        (&self.matrix * &self.matrix).is_scalar(&self.norm_sq)
    }

    pub fn is_odd(&self) -> bool {
        self.matrix.anticommutes_with(&self.grading)
    }

    pub fn is_invertible(&self) -> bool {
        self.matrix.is_invertible()
    }
}

/// `c(ξ) = Σ ξ_i ρ̃(e_i)` over all `8n+2+4τ` directions.
pub fn clifford_multiplication(ext: &Cl3Extension, xi: &[Q]) -> Result<Matrix> {
    if xi.len() != ext.layout.dim_x {
        return Err(Error::DimensionMismatch(format!("ξ has {} entries, expected {}", xi.len(), ext.layout.dim_x)));
    }
    let mats: Vec<Matrix> = (0..xi.len()).map(|i| ext.e(i).clone()).collect();
    Ok(linear_combination(xi, &mats))
}

fn assemble(tau: u8, c: &Matrix, h: &Matrix) -> Matrix {
    let h_part = if tau == 0 { doubled(h) } else { times_i(h) };
    &times_i(c) + &h_part
}

/// `σ = c(ξ) ⊗ i + h ⊗ iᵗ` with `h = a·ρ̃(η₁) + b·ρ̃(η₂)`.
pub fn symbol(ext: &Cl3Extension, xi: &[Q], h_coeff: &[Q; 2]) -> Result<SymbolOperator> {
    let c = clifford_multiplication(ext, xi)?;
    let h = linear_combination(h_coeff, &[ext.eta(0).clone(), ext.eta(1).clone()]);
    Ok(SymbolOperator {
        matrix: assemble(ext.tau(), &c, &h),
        complex_structure: times_i(&Matrix::identity(ext.dim())),
        grading: doubled(ext.rep.grading()),
        xi: xi.to_vec(),
        h_coeff: h_coeff.clone(),
        norm_sq: dot(xi, xi) + dot(h_coeff, h_coeff),
    })
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SupportReport {
    pub checked: usize,
    pub zero_points: usize,
    pub square_failures: Vec<usize>,
    pub invertibility_failures: Vec<usize>,
    pub parity_failures: Vec<usize>,
}

impl SupportReport {
    pub fn holds(&self) -> bool {
        self.square_failures.is_empty() && self.invertibility_failures.is_empty() && self.parity_failures.is_empty()
    }

    fn record(&mut self, idx: usize, op: &SymbolOperator) {
        self.checked += 1;
        let zero = op.norm_sq.is_zero();
        if zero {
            self.zero_points += 1;
        }
        if !op.square_is_norm() {
            self.square_failures.push(idx);
        }
        if op.is_invertible() == zero {
            self.invertibility_failures.push(idx);
        }
        if !op.is_odd() {
            self.parity_failures.push(idx);
        }
    }
}

/// For each `(ξ, h)` checks `σ² = (|ξ|² + |h|²)·Id`, that `σ` is odd, and
/// that `σ` is invertible exactly when `(ξ, h) ≠ 0`.
pub fn support_identity_check(ext: &Cl3Extension, samples: &[(Vec<Q>, [Q; 2])]) -> Result<SupportReport> {
    let mut report = SupportReport::default();
    for (idx, (xi, h)) in samples.iter().enumerate() {
        report.record(idx, &symbol(ext, xi, h)?);
    }
    Ok(report)
}

/// The factor `E = ℂ^m` of a twisted symbol, with an anti-linear
/// conjugation `s` (even, `s² = Id`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistBundle {
    dim: usize,
    conjugation: Matrix,
}

impl TwistBundle {
    pub fn new(dim: usize, conjugation: Matrix) -> Result<Self> {
        let jc = standard_complex_structure(dim);
        if conjugation.rows() != 2 * dim || !conjugation.is_square() {
            return Err(Error::InvalidConjugation(format!("expected a {0}x{0} real matrix", 2 * dim)));
        }
        if !conjugation.anticommutes_with(&jc) {
            return Err(Error::InvalidConjugation("conjugation is not anti-linear".into()));
        }
        if !(&conjugation * &conjugation).is_identity() {
            return Err(Error::InvalidConjugation("conjugation does not square to Id".into()));
        }
        Ok(TwistBundle { dim, conjugation })
    }

    /// Coordinate-wise complex conjugation on `ℂ^m`.
    pub fn standard(dim: usize) -> Self {
        let conj = ComplexOp::antilinear(CMatrix::identity(dim)).realify();
        Self::new(dim, conj).expect("standard conjugation is valid")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn conjugation(&self) -> &Matrix {
        &self.conjugation
    }
}

/// `σ_E = (c ⊗ 1) ⊗ i + (h ⊗ f·s) ⊗ iᵗ` on `(S ⊗_ℂ E) ⊕ (S ⊗_ℂ E)`, in the
/// standard complex coordinates of `S ⊗_ℂ E` (for `S` read in its adapted
/// frame).
pub fn twisted_symbol(ext: &Cl3Extension, xi: &[Q], h_coeff: &[Q; 2], bundle: &TwistBundle, f_value: &Q) -> Result<SymbolOperator> {
    let fs = ComplexFrame::adapted_to(ext.complex_structure())?;
    let fe = ComplexFrame::identity(2 * bundle.dim());
    let c = clifford_multiplication(ext, xi)?;
    let h = linear_combination(h_coeff, &[ext.eta(0).clone(), ext.eta(1).clone()]);
    let c_e = tensor_operator(&c, &fs, &Matrix::identity(2 * bundle.dim()), &fe)?;
    let h_e = tensor_operator(&h, &fs, bundle.conjugation(), &fe)?.scale(f_value);
    let grading = tensor_operator(ext.rep.grading(), &fs, &Matrix::identity(2 * bundle.dim()), &fe)?;
    let d = c_e.rows();
    Ok(SymbolOperator {
        matrix: assemble(ext.tau(), &c_e, &h_e),
        complex_structure: times_i(&Matrix::identity(d)),
        grading: doubled(&grading),
        xi: xi.to_vec(),
        h_coeff: h_coeff.clone(),
        norm_sq: dot(xi, xi) + f_value * f_value * dot(h_coeff, h_coeff),
    })
}

pub fn twisted_support_check(
    ext: &Cl3Extension,
    samples: &[(Vec<Q>, [Q; 2])],
    bundle: &TwistBundle,
    f_value: &Q,
) -> Result<SupportReport> {
    let mut report = SupportReport::default();
    for (idx, (xi, h)) in samples.iter().enumerate() {
        report.record(idx, &twisted_symbol(ext, xi, h, bundle, f_value)?);
    }
    Ok(report)
}

fn check_point(ext: &Cl3Extension, point: &FiberPoint) -> Result<()> {
    let dim_y = ext.y_generators();
    if point.xi.len() != dim_y {
        return Err(Error::DimensionMismatch(format!("ξ has {} entries, expected {dim_y}", point.xi.len())));
    }
    Ok(())
}

/// Converts an operator in split coordinates to the carrier's coordinates.
fn from_split(ext: &Cl3Extension, m: &Matrix) -> Matrix {
    let inv = ext.split_basis.inverse().expect("split basis is invertible");
    &(&ext.split_basis * m) * &inv
}

fn y_clifford(ext: &Cl3Extension, xi: &[Q]) -> Matrix {
    let y = &ext.y_factor;
    let mats: Vec<Matrix> = y.images().to_vec();
    if mats.is_empty() {
        Matrix::zeros(y.dim(), y.dim())
    } else {
        linear_combination(xi, &mats)
    }
}

fn rho(ext: &Cl3Extension, i: usize) -> &Matrix {
    ext.rho23.rep.image(i)
}

/// `u_f1 ρ(e₁) + u_f2 ρ(e₂)` on `Λ*ℝ²`, i.e. `u_f^∧ − u_f^⌟`.
fn fiber_e(ext: &Cl3Extension, u: &[Q; 2]) -> Matrix {
    linear_combination(u, &[rho(ext, 0).clone(), rho(ext, 1).clone()])
}

/// `u_b1 ρ(ε₂) + u_b2 ρ(ε₃)` on `Λ*ℝ²`, i.e. `u_b^∧ + u_b^⌟`.
fn fiber_eps(ext: &Cl3Extension, u: &[Q; 2]) -> Matrix {
    linear_combination(u, &[rho(ext, 3).clone(), rho(ext, 4).clone()])
}

/// `c_Y(ξ) ⊗ 1 + (−1)^deg ⊗ (u_f^∧ − u_f^⌟)` on `S(Y) ⊗̂ Λ*ℝ²`.
pub fn tangent_model(ext: &Cl3Extension, point: &FiberPoint) -> Result<Matrix> {
    check_point(ext, point)?;
    let fy = ext.y_factor.frame()?;
    let fl = ext.rho23.frame();
    let a = tensor_operator(&y_clifford(ext, &point.xi), &fy, &Matrix::identity(exterior::DIM), &fl)?;
    let b = tensor_operator(ext.y_factor.grading(), &fy, &fiber_e(ext, &point.u_f), &fl)?;
    Ok(from_split(ext, &(&a + &b)))
}

/// `J ⊗ (u_b^∧ + u_b^⌟)` on `S(Y) ⊗̂ Λ*ℝ²`.
pub fn eta_model(ext: &Cl3Extension, point: &FiberPoint) -> Result<Matrix> {
    check_point(ext, point)?;
    let fy = ext.y_factor.frame()?;
    let fl = ext.rho23.frame();
    let m = tensor_operator(ext.y_structure.matrix(), &fy, &fiber_eps(ext, &point.u_b), &fl)?;
    Ok(from_split(ext, &m))
}

/// `σ` assembled from the tangent and η models: `tangent ⊗ i + η ⊗ iᵗ`.
pub fn split_symbol(ext: &Cl3Extension, point: &FiberPoint) -> Result<Matrix> {
    Ok(assemble(ext.tau(), &tangent_model(ext, point)?, &eta_model(ext, point)?))
}

/// Operator on `S(Y)_ℝ ⊗_ℝ Λ*ℝ²` with its complex structure and grading.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelOperator {
    pub matrix: Matrix,
    pub complex_structure: Matrix,
    pub grading: Matrix,
}

/// `θ = i c_Y ⊗ (1⊗1) + (−1)^deg ⊗ (i^τ(u_b^∧ + u_b^⌟) ⊗ 1 + (u_f^∧ − u_f^⌟) ⊗ i)`.
///
/// `i^τ` is the complex structure of `Λ*ℝ²`; the outer `i` (on `ℂ`) acts
/// on `S(Y)` through the identification described in the module docs.
pub fn theta(ext: &Cl3Extension, point: &FiberPoint) -> Result<ModelOperator> {
    check_point(ext, point)?;
    let y = &ext.y_factor;
    let jy = y.require_complex()?;
    let gy = y.grading();
    let i_l = ext.rho23.complex_structure();
    let base = (jy * &y_clifford(ext, &point.xi)).kron(&Matrix::identity(exterior::DIM));
    let eps = fiber_eps(ext, &point.u_b);
    let eps = if ext.tau() == 0 { eps } else { i_l * &eps };
    let b_part = gy.kron(&eps);
    let f_part = (jy * gy).kron(&fiber_e(ext, &point.u_f));
    Ok(ModelOperator {
        matrix: &(&base + &b_part) + &f_part,
        complex_structure: jy.kron(&Matrix::identity(exterior::DIM)),
        grading: gy.kron(ext.rho23.rep.grading()),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ThomVariant {
    /// `(∧ + ⌟)(w)`.
    Standard,
    /// `w₂` built from `−u_f2`: the fiber plane with reversed orientation.
    OrientationReversed,
    /// `(∧ − ⌟)(w)`.
    ContractionSignFlipped,
    /// `−θ'` as a whole.
    Negated,
}

impl ThomVariant {
    pub fn name(&self) -> &'static str {
        match self {
            ThomVariant::Standard => "standard",
            ThomVariant::OrientationReversed => "orientation-reversed",
            ThomVariant::ContractionSignFlipped => "contraction-sign-flipped",
            ThomVariant::Negated => "negated",
        }
    }
}

/// `w∧` on `Λ_ℂ(ℂ²)` in the basis `1, v₁, v₂, v₁∧v₂`.
fn thom_wedge(w: &[Cq; 2]) -> CMatrix {
    let mut m = CMatrix::zeros(4, 4);
    m.set(1, 0, w[0].clone());
    m.set(2, 0, w[1].clone());
    m.set(3, 1, -&w[1]);
    m.set(3, 2, w[0].clone());
    m
}

/// Conjugate transpose.
fn adjoint(m: &CMatrix) -> CMatrix {
    CMatrix::from_fn(m.cols(), m.rows(), |r, c| m.get(c, r).conj())
}

fn thom_w(point: &FiberPoint, variant: ThomVariant) -> [Cq; 2] {
    let f2 = if variant == ThomVariant::OrientationReversed { -point.u_f[1].clone() } else { point.u_f[1].clone() };
    [Cq::new(point.u_b[0].clone(), point.u_f[0].clone()), Cq::new(point.u_b[1].clone(), f2)]
}

fn thom_complex(point: &FiberPoint, variant: ThomVariant) -> CMatrix {
    let w = thom_wedge(&thom_w(point, variant));
    let c = adjoint(&w);
    let t = match variant {
        ThomVariant::ContractionSignFlipped => w.add(&c.scale(&Cq::real(-Q::one()))),
        _ => w.add(&c),
    };
    if variant == ThomVariant::Negated {
        t.scale(&Cq::real(-Q::one()))
    } else {
        t
    }
}

/// Real forms of `w∧` and `w⌟` on `Λ_ℂ(ℂ²)`.
pub fn thom_parts(point: &FiberPoint) -> (Matrix, Matrix) {
    let w = thom_wedge(&thom_w(point, ThomVariant::Standard));
    (w.realify(false), adjoint(&w).realify(false))
}

/// `(∧ + ⌟)(w)` realified on `Λ_ℂ(ℂ²)` (real dimension 8).
pub fn thom_symbol(point: &FiberPoint) -> Matrix {
    thom_complex(point, ThomVariant::Standard).realify(false)
}

/// Form-degree parity on `Λ_ℂ(ℂ²)`.
pub fn thom_grading() -> Matrix {
    let g = CMatrix::from_fn(4, 4, |r, c| {
        if r != c {
            Cq::zero()
        } else if (r as u32).count_ones().is_multiple_of(2) {
            Cq::one()
        } else {
            Cq::real(-Q::one())
        }
    });
    g.realify(false)
}

/// `i c_Y ⊗ 1 + (−1)^deg ⊗ (∧ + ⌟)(w)` on `S(Y) ⊗_ℂ Λ_ℂ(ℂ²)`.
pub fn thom_model(ext: &Cl3Extension, point: &FiberPoint, variant: ThomVariant) -> Result<ModelOperator> {
    check_point(ext, point)?;
    let y = &ext.y_factor;
    let fy = y.frame()?;
    let fl = ComplexFrame::identity(8);
    let jy = y.require_complex()?;
    let base = jy * &y_clifford(ext, &point.xi);
    let base = if variant == ThomVariant::Negated { -&base } else { base };
    let t = thom_complex(point, variant).realify(false);
    let a = tensor_operator(&base, &fy, &Matrix::identity(8), &fl)?;
    let b = tensor_operator(y.grading(), &fy, &t, &fl)?;
    Ok(ModelOperator {
        matrix: &a + &b,
        complex_structure: standard_complex_structure(y.dim() * 2),
        grading: tensor_operator(y.grading(), &fy, &thom_grading(), &fl)?,
    })
}

/// The action of `Cl(0,4)` on `Λ*ℝ² ⊗_ℝ ℂ` through
/// `i^τ(u_b^∧ + u_b^⌟) ⊗ 1 + (u_f^∧ − u_f^⌟) ⊗ i`, generators ordered
/// `u_b1, u_b2, u_f1, u_f2`.
pub fn complexified_exterior_rep(tau: u8) -> Result<GradedRep> {
    let r = crate::cl3::build_rho23()?;
    let i_l = r.complex_structure().clone();
    let eps = |k: usize| {
        let m = r.rep.image(3 + k).clone();
        if tau == 0 {
            m
        } else {
            &i_l * &m
        }
    };
    let images = vec![doubled(&eps(0)), doubled(&eps(1)), times_i(r.rep.image(0)), times_i(r.rep.image(1))];
    GradedRep::new(Signature::new(0, 4)?, images, doubled(r.rep.grading()), Some(times_i(&Matrix::identity(4))))
}

/// The action of `Cl(0,4)` on `Λ_ℂ(ℂ²)` through `(∧ + ⌟)(w)`, generators
/// ordered as in [`complexified_exterior_rep`].
pub fn thom_rep() -> Result<GradedRep> {
    let images = FiberPoint::axes(0).iter().map(thom_symbol).collect();
    GradedRep::new(Signature::new(0, 4)?, images, thom_grading(), Some(standard_complex_structure(4)))
}

/// An invertible, ℂ-linear, grading-preserving map carrying the first
/// `Cl(0,4)` action to the second.
pub fn exterior_intertwiner(tau: u8) -> Result<Option<Matrix>> {
    graded_intertwiner(&complexified_exterior_rep(tau)?, &thom_rep()?)
}

/// Outcome of a simultaneous intertwiner solve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntertwinerSolve {
    /// Dimension of the solution space determined by the axis points.
    pub axis_solution_dim: usize,
    /// Dimension after adding every sample.
    pub solution_dim: usize,
    pub points_checked: usize,
    pub map: Option<Matrix>,
}

impl IntertwinerSolve {
    pub fn found(&self) -> bool {
        self.map.is_some()
    }
}

/// Solves for `Φ` with `Φ·A(p) = B(p)·Φ` at every point, `Φ·K_A = K_B·Φ`
/// and `Φ·g_A = g_B·Φ`, then scans for an invertible solution and verifies
/// it at every point.
fn simultaneous_intertwiner<F, G>(dim_y: usize, samples: &[FiberPoint], src: F, dst: G) -> Result<IntertwinerSolve>
where
    F: Fn(&FiberPoint) -> Result<ModelOperator>,
    G: Fn(&FiberPoint) -> Result<ModelOperator>,
{
    let zero = FiberPoint::zero(dim_y);
    let a0 = src(&zero)?;
    let b0 = dst(&zero)?;
    let (rows, cols) = (b0.matrix.rows(), a0.matrix.rows());
    if rows != cols {
        return Err(Error::DimensionMismatch(format!("carriers of dimension {cols} and {rows}")));
    }
    let mut cons = vec![
        MatrixConstraint::intertwines(&a0.complex_structure, &b0.complex_structure),
        MatrixConstraint::intertwines(&a0.grading, &b0.grading),
    ];
    for p in FiberPoint::axes(dim_y) {
        cons.push(MatrixConstraint::intertwines(&src(&p)?.matrix, &dst(&p)?.matrix));
    }
    let axis_space = solve_matrix_space(rows, cols, &cons);
    let axis_solution_dim = axis_space.len();
    let mut sample_cons = Vec::with_capacity(samples.len());
    for p in samples {
        sample_cons.push(MatrixConstraint::intertwines(&src(p)?.matrix, &dst(p)?.matrix));
    }
    let space = restrict_space(&axis_space, &sample_cons);
    let map = first_invertible(&space);
    if let Some(phi) = &map {
        for p in samples {
            if (phi * &src(p)?.matrix) != (&dst(p)?.matrix * phi) {
                return Err(Error::Internal("intertwiner fails at a sample after the solve".into()));
            }
        }
    }
    Ok(IntertwinerSolve { axis_solution_dim, solution_dim: space.len(), points_checked: samples.len(), map })
}

/// `σ` on `S ⊕ S` as a [`ModelOperator`].
pub fn sigma_model(ext: &Cl3Extension, point: &FiberPoint) -> Result<ModelOperator> {
    Ok(ModelOperator {
        matrix: split_symbol(ext, point)?,
        complex_structure: times_i(&Matrix::identity(ext.dim())),
        grading: doubled(ext.rep.grading()),
    })
}

/// One point-independent `Φ` with `Φ σ(p) = θ'(p) Φ` at every sample, where
/// `θ'` is the Thom model in the requested variant.
pub fn localization_intertwiner(ext: &Cl3Extension, samples: &[FiberPoint], variant: ThomVariant) -> Result<IntertwinerSolve> {
    simultaneous_intertwiner(ext.y_generators(), samples, |p| sigma_model(ext, p), |p| thom_model(ext, p, variant))
}

/// `Φ` with `Φ θ(p) = θ'(p) Φ`: the exterior intertwiner tensored with
/// `S(Y)`.
pub fn theta_thom_intertwiner(ext: &Cl3Extension, samples: &[FiberPoint]) -> Result<IntertwinerSolve> {
    simultaneous_intertwiner(ext.y_generators(), samples, |p| theta(ext, p), |p| thom_model(ext, p, ThomVariant::Standard))
}

/// `Φ` with `Φ σ(p) = θ(p) Φ`.
pub fn sigma_theta_intertwiner(ext: &Cl3Extension, samples: &[FiberPoint]) -> Result<IntertwinerSolve> {
    simultaneous_intertwiner(ext.y_generators(), samples, |p| sigma_model(ext, p), |p| theta(ext, p))
}

/// The map `(x ⊗_ℂ y) ⊗_ℝ z ↦ (J+1)/2 x ⊗ (y ⊗ z) + (J−1)/2 x ⊗ (iy ⊗ iz)`
/// from `S ⊕ S` to the carrier of `θ`, evaluated on a spanning set and
/// checked for consistency. Here `J` is the structure map of `S(Y)` composed
/// with `(−1)^deg`, so that it commutes with Clifford multiplication.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerticalMapReport {
    /// Whether the images of linearly dependent inputs are compatible.
    pub well_defined: bool,
    pub matrix: Option<Matrix>,
    pub invertible: bool,
    pub complex_linear: bool,
    /// Points where `M σ(p) ≠ θ(p) M`.
    pub failing_points: Vec<usize>,
}

impl VerticalMapReport {
    pub fn intertwines(&self) -> bool {
        self.matrix.is_some() && self.failing_points.is_empty()
    }
}

fn unit(n: usize, k: usize) -> Vec<Q> {
    let mut v = vec![Q::zero(); n];
    v[k] = Q::one();
    v
}

fn real_kron(a: &[Q], b: &[Q]) -> Vec<Q> {
    a.iter().flat_map(|x| b.iter().map(move |y| x * y)).collect()
}

fn add(a: &[Q], b: &[Q]) -> Vec<Q> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn explicit_vertical_map(ext: &Cl3Extension, samples: &[FiberPoint]) -> Result<VerticalMapReport> {
    let y = &ext.y_factor;
    let fy = y.frame()?;
    let fl = ext.rho23.frame();
    let jy = y.require_complex()?;
    let j = &(ext.y_structure.matrix() * y.grading());
    let i_l = ext.rho23.complex_structure();
    let half = frac(1, 2);
    let (dy, dl, d) = (y.dim(), exterior::DIM, ext.dim());
    let id_y = Matrix::identity(dy);
    let x_plus = (j + &id_y).scale(&half);
    let x_minus = (j - &id_y).scale(&half);
    let mut sources: Vec<Vec<Q>> = Vec::new();
    let mut targets: Vec<Vec<Q>> = Vec::new();
    for a in 0..dy {
        let x = unit(dy, a);
        for b in 0..dl {
            let yv = unit(dl, b);
            let xy = ext.split_basis.apply(&complex_tensor(&x, &fy, &yv, &fl));
            let x1 = x_plus.apply(&x);
            let x2 = x_minus.apply(&x);
            let iy = i_l.apply(&yv);
            // z = 1
            let mut src = xy.clone();
            src.extend(vec![Q::zero(); d]);
            let tgt = add(&real_kron(&x1, &yv), &real_kron(&jy.apply(&x2), &iy));
            sources.push(src);
            targets.push(tgt);
            // z = i
            let mut src = vec![Q::zero(); d];
            src.extend(xy);
            let neg_x2: Vec<Q> = x2.iter().map(|v| -v.clone()).collect();
            let tgt = add(&real_kron(&jy.apply(&x1), &yv), &real_kron(&neg_x2, &iy));
            sources.push(src);
            targets.push(tgt);
        }
    }
    // Choose an independent subset of sources, solve, then test the rest.
    let n = 2 * d;
    let mut ech = Echelon::new(n);
    let mut chosen = Vec::new();
    for (k, s) in sources.iter().enumerate() {
        if ech.insert(to_sparse(s)) {
            chosen.push(k);
        }
    }
    if chosen.len() != n {
        return Ok(VerticalMapReport { well_defined: false, matrix: None, invertible: false, complex_linear: false, failing_points: vec![] });
    }
    let s_mat = Matrix::from_columns(&chosen.iter().map(|&k| sources[k].clone()).collect::<Vec<_>>());
    let t_mat = Matrix::from_columns(&chosen.iter().map(|&k| targets[k].clone()).collect::<Vec<_>>());
    let m = &t_mat * &s_mat.inverse().expect("independent columns");
    let well_defined = sources.iter().zip(&targets).all(|(s, t)| &m.apply(s) == t);
    let invertible = m.is_invertible();
    let sigma_k = times_i(&Matrix::identity(d));
    let theta_k = jy.kron(&Matrix::identity(dl));
    let complex_linear = &m * &sigma_k == &theta_k * &m;
    let mut failing_points = Vec::new();
    for (k, p) in samples.iter().enumerate() {
        if &m * &split_symbol(ext, p)? != &theta(ext, p)?.matrix * &m {
            failing_points.push(k);
        }
    }
    Ok(VerticalMapReport { well_defined, matrix: Some(m), invertible, complex_linear, failing_points })
}

fn to_sparse(v: &[Q]) -> SparseRow {
    v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect()
}

/// `x ⊗_ℂ y` in the standard coordinates of the complex tensor product.
fn complex_tensor(x: &[Q], fx: &ComplexFrame, y: &[Q], fy: &ComplexFrame) -> Vec<Q> {
    let cx = complex_coords(x, fx);
    let cy = complex_coords(y, fy);
    let mut out = Vec::with_capacity(4 * cx.len() * cy.len());
    for a in &cx {
        for b in &cy {
            let p = a * b;
            out.push(p.re);
            out.push(p.im);
        }
    }
    out
}

/// Complex coordinates of a real vector in an adapted frame.
fn complex_coords(v: &[Q], frame: &ComplexFrame) -> Vec<Cq> {
    let inv = frame.basis().inverse().expect("frame is invertible");
    let w = inv.apply(v);
    w.chunks(2).map(|c| Cq::new(c[0].clone(), c[1].clone())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cl3::extend_to_cl3;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use crate::rational::int;

    fn samples(dim_y: usize, n: usize, seed: u64) -> Vec<FiberPoint> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..n).map(|_| FiberPoint::random(&mut rng, dim_y)).collect()
    }

    #[test]
    fn zero_symbol_is_singular() {
        let ext = extend_to_cl3(0, 0).unwrap();
        let s = symbol(&ext, &[int(0), int(0)], &[int(0), int(0)]).unwrap();
        assert!(s.matrix.is_zero());
        assert!(!s.is_invertible());
    }

    #[test]
    fn unit_symbols_square_to_one() {
        for tau in [0, 1] {
            let ext = extend_to_cl3(0, tau).unwrap();
            let d = ext.layout.dim_x;
            let mut xi = vec![int(0); d];
            xi[0] = int(1);
            let s = symbol(&ext, &xi, &[int(0), int(0)]).unwrap();
            assert!((&s.matrix * &s.matrix).is_identity());
            let s = symbol(&ext, &vec![int(0); d], &[int(1), int(0)]).unwrap();
            assert!((&s.matrix * &s.matrix).is_identity());
        }
    }

    #[test]
    fn split_symbol_matches_intrinsic_symbol() {
        for tau in [0, 1] {
            let ext = extend_to_cl3(0, tau).unwrap();
            for p in samples(ext.y_generators(), 5, 11) {
                let s = symbol(&ext, &p.tangent(), &p.u_b).unwrap();
                assert_eq!(split_symbol(&ext, &p).unwrap(), s.matrix);
            }
        }
    }

    #[test]
    fn tangent_and_eta_models_anticommute() {
        for tau in [0, 1] {
            let ext = extend_to_cl3(0, tau).unwrap();
            for p in samples(ext.y_generators(), 5, 3) {
                let a = tangent_model(&ext, &p).unwrap();
                let b = eta_model(&ext, &p).unwrap();
                assert!(a.anticommutes_with(&b));
                let f2 = p.u_f[0].clone() * &p.u_f[0] + &p.u_f[1] * &p.u_f[1] + dot(&p.xi, &p.xi);
                assert!((&a * &a).is_scalar(&-f2));
                let b2 = dot(&p.u_b, &p.u_b) * int(if tau == 0 { 1 } else { -1 });
                assert!((&b * &b).is_scalar(&b2));
            }
        }
    }

    #[test]
    fn theta_squares_to_norm() {
        for tau in [0, 1] {
            let ext = extend_to_cl3(0, tau).unwrap();
            for p in samples(ext.y_generators(), 5, 5) {
                let t = theta(&ext, &p).unwrap();
                assert!((&t.matrix * &t.matrix).is_scalar(&p.norm_sq()));
                assert!(t.matrix.anticommutes_with(&t.grading));
                assert!(t.matrix.commutes_with(&t.complex_structure));
            }
        }
    }

    #[test]
    fn degenerate_theta_is_sigma() {
        let ext = extend_to_cl3(0, 0).unwrap();
        for p in samples(0, 5, 8) {
            assert_eq!(theta(&ext, &p).unwrap().matrix, split_symbol(&ext, &p).unwrap());
        }
    }

    #[test]
    fn thom_symbol_squares_to_norm() {
        let p = FiberPoint::new(vec![], [int(1), int(2)], [int(-1), int(3)]);
        let t = thom_symbol(&p);
        assert!((&t * &t).is_scalar(&int(15)));
        let (w, c) = thom_parts(&p);
        assert_eq!(&w + &c, t);
    }

    #[test]
    fn thom_rotation() {
        let p = FiberPoint::new(vec![], [int(1), int(2)], [int(-1), int(3)]);
        let jc = standard_complex_structure(4);
        let (w, c) = thom_parts(&p);
        let (wi, ci) = thom_parts(&p.rotate_i());
        assert_eq!(wi, &jc * &w);
        assert_eq!(ci, -&(&jc * &c));
    }

    #[test]
    fn exterior_intertwiners_exist() {
        for tau in [0, 1] {
            let t = exterior_intertwiner(tau).unwrap();
            assert!(t.is_some());
        }
    }

    #[test]
    fn degenerate_localization() {
        let ext = extend_to_cl3(0, 0).unwrap();
        let pts = samples(0, 20, 1);
        let r = localization_intertwiner(&ext, &pts, ThomVariant::Standard).unwrap();
        assert!(r.found());
        let r = localization_intertwiner(&ext, &pts, ThomVariant::OrientationReversed).unwrap();
        assert!(!r.found());
        let r = localization_intertwiner(&ext, &pts, ThomVariant::ContractionSignFlipped).unwrap();
        assert!(!r.found());
    }

    #[test]
    fn negation_is_absorbed_by_the_grading() {
        let ext = extend_to_cl3(0, 0).unwrap();
        let pts = samples(0, 10, 2);
        let r = localization_intertwiner(&ext, &pts, ThomVariant::Negated).unwrap();
        assert!(r.found());
    }

    #[test]
    fn vertical_map_intertwines_with_theta() {
        let ext = extend_to_cl3(0, 1).unwrap();
        let r = explicit_vertical_map(&ext, &FiberPoint::axes(4)).unwrap();
        assert!(r.well_defined && r.invertible && r.complex_linear);
        assert!(r.intertwines());
    }

    #[test]
    fn degenerate_vertical_map_is_identity() {
        let ext = extend_to_cl3(0, 0).unwrap();
        let r = explicit_vertical_map(&ext, &samples(0, 10, 4)).unwrap();
        assert!(r.well_defined);
        assert!(r.matrix.as_ref().unwrap().is_identity());
        assert!(r.intertwines());
    }

    #[test]
    fn twisted_unit_bundle_matches_symbol() {
        let ext = extend_to_cl3(0, 0).unwrap();
        let e = TwistBundle::standard(1);
        let xi = [int(1), int(-2)];
        let h = [int(2), int(1)];
        let t = twisted_symbol(&ext, &xi, &h, &e, &int(1)).unwrap();
        let s = symbol(&ext, &xi, &h).unwrap();
        let frame = doubled(ext.rho23.frame().basis());
        let back = &(&frame * &t.matrix) * &frame.inverse().unwrap();
        assert_eq!(back, s.matrix);
    }

    #[test]
    fn twisted_support_with_vanishing_f() {
        let ext = extend_to_cl3(0, 1).unwrap();
        let e = TwistBundle::standard(2);
        let zero = vec![int(0); 6];
        let t = twisted_symbol(&ext, &zero, &[int(1), int(0)], &e, &int(0)).unwrap();
        assert!(!t.is_invertible());
        assert!(t.square_is_norm());
    }

    #[test]
    fn invalid_conjugation_is_rejected() {
        assert!(TwistBundle::new(1, Matrix::identity(2)).is_err());
        let anti_square_minus = Matrix::from_i64(&[&[0, 1], &[1, 0]]).scale(&int(1));
        // anti-linear with square +1: accepted
        assert!(TwistBundle::new(1, anti_square_minus).is_ok());
    }
}
