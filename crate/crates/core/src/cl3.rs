//! The representation of `Cl(2,3)` on `Λ*ℝ²`, its extension to the
//! four-generator-larger algebra acting on spinors of dimension `8n+2+4τ`,
//! the twisted adjoint action of spin^c, and the fiber of odd
//! endomorphisms anti-commuting with Clifford multiplication.

use num_traits::{One, Zero};

use crate::clifford::{anticommutant_basis, generated_subalgebra_dimension, AlgebraElement, Blade, Signature};
use crate::complex::ComplexFrame;
use crate::error::{Error, Result};
use crate::exterior;
use crate::linalg::{linear_combination, solve_matrix_space, Echelon, Matrix, MatrixConstraint, SparseRow};
use crate::rational::{int, Q};
use crate::rep::{
    build_spinor_rep, conjugation_structure, find_structure_j, spin_c_matrix, tensor_operator, trivial_spinor_rep,
    AntiLinearMap, GradedRep, SpinCElement, StructureKind,
};

/// `ρ_{2,3}` on `Λ*ℝ²` together with its building blocks.
#[derive(Clone, Debug)]
pub struct Rho23Rep {
    pub rep: GradedRep,
    pub wedge: [Matrix; 2],
    pub contraction: [Matrix; 2],
}

impl Rho23Rep {
    pub fn complex_structure(&self) -> &Matrix {
        self.rep.complex_structure().expect("exterior module carries i")
    }

    /// Frame `(1, i·1, e₁, i·e₁)` adapted to `i`.
    pub fn frame(&self) -> ComplexFrame {
        self.rep.frame().expect("i squares to −Id")
    }
}

/// Builds `e_k ↦ e_k^∧ − e_k^⌟`, `ε₁ ↦ (−1)^deg`, `ε_{k+1} ↦ e_k^∧ + e_k^⌟`
/// with complex structure `i = −ρ(e₁e₂ε₁)`, and checks its invariants.
pub fn build_rho23() -> Result<Rho23Rep> {
    let sig = Signature::new(2, 3)?;
    let rep = GradedRep::new(
        sig,
        exterior::cl23_images().to_vec(),
        exterior::parity(),
        Some(exterior::complex_structure()),
    )?;
    let expected_antilinear = [false, false, false, true, true];
    for (i, &anti) in expected_antilinear.iter().enumerate() {
        if rep.is_antilinear(i) != anti {
            return Err(Error::Internal(format!("linearity of {} is wrong", sig.generator_name(i))));
        }
    }
    Ok(Rho23Rep {
        rep,
        wedge: [exterior::wedge_basis(0), exterior::wedge_basis(1)],
        contraction: [exterior::contraction_basis(0), exterior::contraction_basis(1)],
    })
}

/// Generator positions inside the algebra acted on by the extension.
///
/// τ = 0: `Cl(8n+2, 3)` with order `e₁…e_{8n+2}, ε₁, η₁, η₂`.
/// τ = 1: `Cl(8n+8, 1)` with order `e₁…e_{8n+6}, η₁, η₂, ε₁`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cl3Layout {
    pub n: usize,
    pub tau: u8,
    pub sig: Signature,
    /// Number of `e` generators (the real dimension `8n+2+4τ`).
    pub dim_x: usize,
    pub eps1: usize,
    pub eta: [usize; 2],
}

impl Cl3Layout {
    pub fn new(n: usize, tau: u8) -> Result<Self> {
        let dim_x = 8 * n + 2 + 4 * tau as usize;
        match tau {
            0 => Ok(Cl3Layout { n, tau, sig: Signature::new(dim_x, 3)?, dim_x, eps1: dim_x, eta: [dim_x + 1, dim_x + 2] }),
            1 => Ok(Cl3Layout { n, tau, sig: Signature::new(dim_x + 2, 1)?, dim_x, eps1: dim_x + 2, eta: [dim_x, dim_x + 1] }),
            _ => Err(Error::InvalidInput(format!("τ must be 0 or 1, found {tau}"))),
        }
    }

    pub fn e(&self, i: usize) -> usize {
        assert!(i < self.dim_x);
        i
    }

    /// Signature of the spin group's Clifford algebra `Cl(8n+2+4τ, 0)`.
    pub fn base_signature(&self) -> Signature {
        Signature::new(self.dim_x, 0).expect("fits")
    }

    /// Square of `η_k` forced by the signature.
    pub fn eta_signature_square(&self) -> i64 {
        self.sig.square(self.eta[0])
    }

    /// The algebra of the anticommutant statement: `Cl(8n+2, 2)` or
    /// `Cl(8n+7, 1)`, with the constraint generators `ε₁, e₁…e_{8n+2+4τ}`.
    pub fn anticommutant_setting(&self) -> (Signature, Vec<usize>) {
        match self.tau {
            0 => {
                let sig = Signature::new(self.dim_x, 2).expect("fits");
                let mut cons = vec![self.dim_x];
                cons.extend(0..self.dim_x);
                (sig, cons)
            }
            _ => {
                let sig = Signature::new(self.dim_x + 1, 1).expect("fits");
                let mut cons = vec![self.dim_x + 1];
                cons.extend(0..self.dim_x);
                (sig, cons)
            }
        }
    }

    /// Generators of the extension spanning the subalgebra of the
    /// anticommutant statement: the `e`'s, `ε₁` and `η₁`.
    pub fn subalgebra_generators(&self) -> Vec<usize> {
        let mut g: Vec<usize> = (0..self.dim_x).collect();
        match self.tau {
            0 => g.extend([self.eps1, self.eta[0]]),
            _ => g.extend([self.eta[0], self.eps1]),
        }
        g
    }
}

/// The representation of the extended algebra on spinors `S`, built from a
/// split `S ≅ S(Y) ⊗̂ Λ*ℝ²`.
#[derive(Clone, Debug)]
pub struct Cl3Extension {
    pub layout: Cl3Layout,
    pub rep: GradedRep,
    /// Spinors of the `8n+4τ`-dimensional factor.
    pub y_factor: GradedRep,
    /// Real (τ=0) or quaternionic (τ=1) structure of `y_factor`.
    pub y_structure: AntiLinearMap,
    pub rho23: Rho23Rep,
    /// Columns are split coordinates (standard complex coordinates of
    /// `S(Y) ⊗_ℂ Λ*ℝ²`, the latter in its adapted frame) expressed in the
    /// carrier's coordinates.
    pub split_basis: Matrix,
}

impl Cl3Extension {
    pub fn tau(&self) -> u8 {
        self.layout.tau
    }

    pub fn dim(&self) -> usize {
        self.rep.dim()
    }

    pub fn complex_structure(&self) -> &Matrix {
        self.rep.complex_structure().expect("extension carries a complex structure")
    }

    pub fn eta(&self, k: usize) -> &Matrix {
        self.rep.image(self.layout.eta[k])
    }

    pub fn e(&self, i: usize) -> &Matrix {
        self.rep.image(self.layout.e(i))
    }

    pub fn eps1(&self) -> &Matrix {
        self.rep.image(self.layout.eps1)
    }

    /// The restriction to `e₁…e_{8n+2+4τ}`.
    pub fn base_rep(&self) -> Result<GradedRep> {
        let gens: Vec<usize> = (0..self.layout.dim_x).collect();
        self.rep.restrict(&gens, self.layout.base_signature())
    }

    /// Real dimension of `S(Y)`.
    pub fn y_dim(&self) -> usize {
        self.y_factor.dim()
    }

    /// Number of `e` generators coming from `Y`.
    pub fn y_generators(&self) -> usize {
        self.y_factor.signature().generators()
    }
}

/// Images of the extension's generators in split coordinates:
/// `e_i ↦ ρ_Y(e_i) ⊗ 1`, `e_{k+j} ↦ (−1)^deg ⊗ ρ(e_j)`,
/// `η_j ↦ J ⊗ ρ(ε_{j+1})`, `ε₁ ↦ (−1)^deg ⊗ ρ(ε₁)`.
///
/// `J` anti-commutes with the `Y` generators, which is what makes the
/// `η`'s anti-commute with the `e`'s; an extra `(−1)^deg` next to `J` would
/// spoil that (see [`literal_eta_images`]).
fn split_images(y: &GradedRep, j: &AntiLinearMap, rho: &Rho23Rep, layout: &Cl3Layout) -> Result<Vec<Matrix>> {
    let fy = y.frame()?;
    let fl = rho.frame();
    let img = |i: usize| rho.rep.image(i);
    let id_l = Matrix::identity(exterior::DIM);
    let k = y.signature().generators();
    let mut out = vec![Matrix::zeros(0, 0); layout.sig.generators()];
    for i in 0..k {
        out[i] = tensor_operator(y.image(i), &fy, &id_l, &fl)?;
    }
    for jx in 0..2 {
        out[k + jx] = tensor_operator(y.grading(), &fy, img(jx), &fl)?;
    }
    for kx in 0..2 {
        out[layout.eta[kx]] = tensor_operator(j.matrix(), &fy, img(3 + kx), &fl)?;
    }
    out[layout.eps1] = tensor_operator(y.grading(), &fy, img(2), &fl)?;
    Ok(out)
}

/// `η` images read literally as `J(−1)^deg ⊗ ρ(ε_{k+1})` with `J`
/// anti-commuting with Clifford multiplication. Returned for diagnostics:
/// these fail the relations of the extended algebra. Reading the formula
/// with `J(−1)^deg` in place of `J`, i.e. a structure map commuting with
/// Clifford multiplication, gives back the images used by the extension.
pub fn literal_eta_images(ext: &Cl3Extension) -> Result<Vec<Matrix>> {
    let y = &ext.y_factor;
    let fy = y.frame()?;
    let fl = ext.rho23.frame();
    let jg = ext.y_structure.matrix() * y.grading();
    let mut images = ext.rep.images().to_vec();
    for kx in 0..2 {
        images[ext.layout.eta[kx]] = &ext.split_basis * &(&tensor_operator(&jg, &fy, ext.rho23.rep.image(3 + kx), &fl)? * &ext.split_basis.inverse().expect("frame"));
    }
    Ok(images)
}

/// Builds the extension for `(n, τ)`.
///
/// For `(0, 0)` the carrier is `Λ*ℝ²` itself with `ρ_{2,3}`; otherwise the
/// carrier is `S_{8n+4τ} ⊗̂ Λ*ℝ²` in standard complex coordinates, using the
/// structure map `J` of the first factor found by the exact solver.
pub fn extend_to_cl3(n: usize, tau: u8) -> Result<Cl3Extension> {
    let layout = Cl3Layout::new(n, tau)?;
    let rho = build_rho23()?;
    let (y, j) = if n == 0 && tau == 0 {
        (trivial_spinor_rep(), conjugation_structure())
    } else {
        let y = build_spinor_rep(8 * n + 4 * tau as usize)?;
        let kind = if tau == 0 { StructureKind::Real } else { StructureKind::Quaternionic };
        let j = find_structure_j(&y, kind)?;
        (y, j)
    };
    let images = split_images(&y, &j, &rho, &layout)?;
    let grading = tensor_operator(y.grading(), &y.frame()?, rho.rep.grading(), &rho.frame())?;
    let jc = crate::complex::standard_complex_structure(y.dim() * exterior::DIM / 4);
    let split = GradedRep::new(layout.sig, images, grading, Some(jc))?;
    let (rep, split_basis) = if n == 0 && tau == 0 {
        let basis = rho.frame().basis().clone();
        (split.conjugate(&basis)?, basis)
    } else {
        let d = split.dim();
        (split, Matrix::identity(d))
    };
    let ext = Cl3Extension { layout, rep, y_factor: y, y_structure: j, rho23: rho, split_basis };
    validate_extension(&ext)?;
    Ok(ext)
}

fn validate_extension(ext: &Cl3Extension) -> Result<()> {
    if !ext.base_rep()?.is_standard_complex_module() {
        return Err(Error::Internal("restriction to the base algebra is not a complex spinor module".into()));
    }
    for k in 0..2 {
        if !ext.rep.is_antilinear(ext.layout.eta[k]) {
            return Err(Error::Internal(format!("η{} is not anti-linear", k + 1)));
        }
    }
    Ok(())
}

/// `Ad⊗z²(λ)` applied to `v`: `e_i ↦ μ e_i μ⁻¹`, `ε₁` fixed, `η_k ↦ u² η_k`
/// with `i·η₁ = η₂`, `i·η₂ = −η₁`, extended multiplicatively over blades.
pub fn ad_z2(lam: &SpinCElement, v: &AlgebraElement, layout: &Cl3Layout) -> Result<AlgebraElement> {
    let sig = layout.sig;
    if v.signature() != sig {
        let s = v.signature();
        return Err(Error::SignatureMismatch(s.p(), s.q(), sig.p(), sig.q()));
    }
    if lam.even_part().signature() != layout.base_signature() {
        let s = lam.even_part().signature();
        return Err(Error::InvalidSpinC(format!("λ must lie over Cl({},0), found {s}", layout.dim_x)));
    }
    let index_map: Vec<usize> = (0..layout.dim_x).collect();
    let mu = lam.even_part().embed(sig, &index_map)?;
    let mu_inv = lam.even_inverse().embed(sig, &index_map)?;
    let u2 = lam.phase().square();
    let gen = |i: usize| AlgebraElement::generator(sig, i);
    let eta1 = gen(layout.eta[0])?;
    let eta2 = gen(layout.eta[1])?;
    let mut images = Vec::with_capacity(sig.generators());
    for i in 0..sig.generators() {
        let img = if i < layout.dim_x {
            mu.mul(&gen(i)?)?.mul(&mu_inv)?
        } else if i == layout.eps1 {
            gen(i)?
        } else if i == layout.eta[0] {
            eta1.scale(u2.cos()).add(&eta2.scale(u2.sin()))?
        } else {
            eta2.scale(u2.cos()).sub(&eta1.scale(u2.sin()))?
        };
        images.push(img);
    }
    let mut out = AlgebraElement::zero(sig);
    for (blade, c) in v.terms() {
        let mut term = AlgebraElement::scalar(sig, c.clone());
        for i in blade.indices() {
            term = term.mul(&images[i])?;
        }
        out = out.add(&term)?;
    }
    Ok(out)
}

/// `Δ(λ)` on the extension's carrier: `ρ̃(μ)` followed by the phase.
pub fn spin_c_on_extension(lam: &SpinCElement, ext: &Cl3Extension) -> Result<Matrix> {
    spin_c_matrix(&ext.base_rep()?, lam)
}

/// Whether `Δ(λ) ∘ ρ̃(v) = ρ̃(Ad⊗z²(λ) v) ∘ Δ(λ)`.
pub fn check_equivariance(lam: &SpinCElement, v: &AlgebraElement, ext: &Cl3Extension) -> Result<bool> {
    let delta = spin_c_on_extension(lam, ext)?;
    let lhs = &delta * &ext.rep.image_of(v)?;
    let rhs = &ext.rep.image_of(&ad_z2(lam, v, &ext.layout)?)? * &delta;
    Ok(lhs == rhs)
}

/// A real basis of the fiber together with the `η`-image basis.
#[derive(Clone, Debug)]
pub struct LHFiber {
    /// Basis returned by the exact solve.
    pub basis: Vec<AntiLinearMap>,
    /// `ρ̃(η₁), ρ̃(η₂)`.
    pub eta_basis: [Matrix; 2],
    pub complex_structure: Matrix,
    /// Whether post-composition with `i` preserves the span.
    pub closed_under_i: bool,
}

impl LHFiber {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    fn echelon(&self) -> Echelon {
        let mut e = Echelon::new(self.complex_structure.rows().pow(2));
        for b in &self.basis {
            e.insert(sparse(b.matrix()));
        }
        e
    }

    pub fn contains(&self, m: &Matrix) -> bool {
        self.echelon().contains(sparse(m))
    }

    /// `h = a·ρ̃(η₁) + b·ρ̃(η₂)`.
    pub fn element(&self, a: &Q, b: &Q) -> Matrix {
        linear_combination(&[a.clone(), b.clone()], &self.eta_basis)
    }
}

fn sparse(m: &Matrix) -> SparseRow {
    m.entries().iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect()
}

/// The real inner product used for (skew-)symmetry: the standard one in the
/// carrier's coordinates. On `Λ*ℝ²` this is the induced Euclidean metric,
/// and the split coordinates are orthonormal for the tensor metric.
pub fn canonical_inner_product(ext: &Cl3Extension) -> Matrix {
    Matrix::identity(ext.dim())
}

/// Solves for all real endomorphisms that are odd, symmetric (τ=0) or
/// skew-symmetric (τ=1) for `inner_product`, and anti-commute with every
/// `e` image.
pub fn lh_fiber_basis(ext: &Cl3Extension, inner_product: &Matrix) -> Result<LHFiber> {
    let d = ext.dim();
    let sign = if ext.tau() == 0 { 1 } else { -1 };
    let mut cons = vec![
        MatrixConstraint::anticommutes(ext.rep.grading()),
        MatrixConstraint::Adjoint { metric: inner_product.clone(), sign },
    ];
    for i in 0..ext.layout.dim_x {
        cons.push(MatrixConstraint::anticommutes(ext.e(i)));
    }
    let solutions = solve_matrix_space(d, d, &cons);
    if solutions.len() != 2 {
        return Err(Error::FiberDimension { found: solutions.len(), expected: 2 });
    }
    let jc = ext.complex_structure().clone();
    let basis = solutions.into_iter().map(|m| AntiLinearMap::new(m, jc.clone())).collect::<Result<Vec<_>>>()?;
    let mut fiber = LHFiber {
        basis,
        eta_basis: [ext.eta(0).clone(), ext.eta(1).clone()],
        complex_structure: jc.clone(),
        closed_under_i: false,
    };
    let ech = fiber.echelon();
    fiber.closed_under_i = fiber.basis.iter().all(|b| ech.contains(sparse(&(&jc * b.matrix()))));
    Ok(fiber)
}

/// The map `a η₁ + b η₂ ↦ a ρ̃(η₁) + b ρ̃(η₂)` checked to be a bijection onto
/// the fiber that turns `i·η₁ = η₂` into post-composition with `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EtaCorrespondence {
    /// Coordinates of `ρ̃(η_k)` in the solver basis (columns).
    pub change_of_basis: Matrix,
    pub determinant_nonzero: bool,
    pub intertwines_i: bool,
    pub zero_maps_to_zero: bool,
}

impl EtaCorrespondence {
    pub fn holds(&self) -> bool {
        self.determinant_nonzero && self.intertwines_i && self.zero_maps_to_zero
    }
}

pub fn eta_fiber_correspondence(fiber: &LHFiber) -> Result<EtaCorrespondence> {
    // Solve ρ̃(η_k) = Σ c_{jk} b_j by restricting to two coordinates.
    let mut cols = Vec::new();
    for eta in &fiber.eta_basis {
        let mut ech = Echelon::new(fiber.dim() + 1);
        let n = eta.entries().len();
        for idx in 0..n {
            let mut row: SparseRow = Vec::new();
            for (j, b) in fiber.basis.iter().enumerate() {
                let x = &b.matrix().entries()[idx];
                if !x.is_zero() {
                    row.push((j, x.clone()));
                }
            }
            let y = &eta.entries()[idx];
            if !y.is_zero() {
                row.push((fiber.dim(), -y.clone()));
            }
            if !row.is_empty() {
                ech.insert(row);
            }
        }
        let ns = ech.nullspace();
        let sol = ns.iter().find(|v| !v[fiber.dim()].is_zero());
        let Some(sol) = sol else {
            return Ok(EtaCorrespondence {
                change_of_basis: Matrix::zeros(2, 2),
                determinant_nonzero: false,
                intertwines_i: false,
                zero_maps_to_zero: true,
            });
        };
        let scale = Q::one() / &sol[fiber.dim()];
        cols.push(sol[..fiber.dim()].iter().map(|x| x * &scale).collect::<Vec<Q>>());
    }
    let change = Matrix::from_columns(&cols);
    let jc = &fiber.complex_structure;
    let [e1, e2] = &fiber.eta_basis;
    let intertwines_i = &(jc * e1) == e2 && (jc * e2) == -e1;
    let zero = fiber.element(&Q::zero(), &Q::zero()).is_zero();
    Ok(EtaCorrespondence { determinant_nonzero: change.is_invertible(), change_of_basis: change, intertwines_i, zero_maps_to_zero: zero })
}

/// Span of the images of the anticommutant-statement algebra inside
/// `End_ℝ(S)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EndIsoReport {
    pub image_dimension: usize,
    pub endomorphism_dimension: usize,
    /// `4^τ·4·16ⁿ`.
    pub formula_dimension: usize,
    pub carrier_dimension: usize,
}

impl EndIsoReport {
    pub fn holds(&self) -> bool {
        self.image_dimension == self.endomorphism_dimension && self.formula_dimension == self.carrier_dimension
    }
}

pub fn end_iso_check(ext: &Cl3Extension) -> EndIsoReport {
    let images: Vec<Matrix> = ext.layout.subalgebra_generators().iter().map(|&g| ext.rep.image(g).clone()).collect();
    let d = ext.dim();
    EndIsoReport {
        image_dimension: generated_subalgebra_dimension(&images),
        endomorphism_dimension: d * d,
        formula_dimension: 4usize.pow(ext.tau() as u32) * 4 * 16usize.pow(ext.layout.n as u32),
        carrier_dimension: d,
    }
}

/// Squares of the extra generators, of the anticommutant basis, and the
/// sign `(−1)^{τ+1}` they are claimed to have.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignRow {
    pub n: usize,
    pub tau: u8,
    pub eta_squares: [Option<Q>; 2],
    pub signature_square: i64,
    pub anticommutant_basis: Vec<String>,
    pub anticommutant_squares: Vec<Option<Q>>,
    pub claimed: i64,
}

impl SignRow {
    pub fn eta_agrees_with_claim(&self) -> bool {
        self.eta_squares.iter().all(|s| s.as_ref() == Some(&int(self.claimed)))
    }

    pub fn anticommutant_agrees_with_claim(&self) -> bool {
        self.anticommutant_squares.iter().all(|s| s.as_ref() == Some(&int(self.claimed)))
    }

    pub fn eta_agrees_with_signature(&self) -> bool {
        self.eta_squares.iter().all(|s| s.as_ref() == Some(&int(self.signature_square)))
    }
}

/// Basis of the anticommutant for the layout's setting.
pub fn layout_anticommutant(layout: &Cl3Layout) -> Result<Vec<AlgebraElement>> {
    let (sig, cons) = layout.anticommutant_setting();
    let cons: Vec<AlgebraElement> = cons.iter().map(|&g| AlgebraElement::generator(sig, g)).collect::<Result<_>>()?;
    anticommutant_basis(sig, &cons)
}

pub fn sign_report(ext: &Cl3Extension) -> Result<SignRow> {
    let layout = &ext.layout;
    let sq = |m: &Matrix| (m * m).scalar_value();
    let basis = layout_anticommutant(layout)?;
    let squares = basis.iter().map(|v| v.mul(v).ok().and_then(|s| s.scalar_part_only())).collect();
    Ok(SignRow {
        n: layout.n,
        tau: layout.tau,
        eta_squares: [sq(ext.eta(0)), sq(ext.eta(1))],
        signature_square: layout.eta_signature_square(),
        anticommutant_basis: basis.iter().map(|v| v.to_string()).collect(),
        anticommutant_squares: squares,
        claimed: if layout.tau == 0 { -1 } else { 1 },
    })
}

/// The two elements `x` and `e₁⋯e_m ε₁ x` (up to ordering, the top blade)
/// spanning the anticommutant in closed form.
pub fn anticommutant_pattern(layout: &Cl3Layout) -> Result<[AlgebraElement; 2]> {
    let (sig, _) = layout.anticommutant_setting();
    // τ=0: the extra generator is ε₂ (last); τ=1: it is e_{8n+7}.
    let x_index = if layout.tau == 0 { sig.generators() - 1 } else { layout.dim_x };
    let x = AlgebraElement::generator(sig, x_index)?;
    let top = AlgebraElement::from_blade(sig, Blade::from_mask(((1u64 << sig.generators()) - 1) as u32), Q::one())?;
    Ok([x, top])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::check_generator_relations;
    use crate::rep::{intertwiner, Phase};

    #[test]
    fn rho23_relations_and_linearity() {
        let r = build_rho23().unwrap();
        assert!(r.rep.relations().holds());
        assert_eq!(r.rep.image(2), &exterior::parity());
        let i = r.complex_structure();
        assert!((i * i).is_scalar(&int(-1)));
        let e1 = r.rep.image(0);
        assert!((e1 * e1).is_scalar(&int(-1)));
        assert_eq!(&(&r.wedge[0] - &r.contraction[0]), e1);
    }

    #[test]
    fn rho23_restricts_to_complex_module() {
        let r = build_rho23().unwrap();
        let sub = r.rep.restrict(&[0, 1], Signature::new(2, 0).unwrap()).unwrap();
        assert!(sub.is_standard_complex_module());
    }

    #[test]
    fn degenerate_extension_is_rho23() {
        let ext = extend_to_cl3(0, 0).unwrap();
        let r = build_rho23().unwrap();
        assert_eq!(ext.rep.images(), r.rep.images());
        assert_eq!(ext.rep.grading(), r.rep.grading());
        assert_eq!(ext.complex_structure(), r.complex_structure());
    }

    #[test]
    fn six_dimensional_extension() {
        let ext = extend_to_cl3(0, 1).unwrap();
        assert_eq!(ext.dim(), 16);
        assert_eq!(ext.layout.sig, Signature::new(8, 1).unwrap());
        assert!(ext.rep.relations().holds());
        let s6 = build_spinor_rep(6).unwrap();
        let t = intertwiner(&ext.base_rep().unwrap(), &s6).unwrap();
        assert!(t.is_some());
    }

    #[test]
    fn literal_eta_reading_breaks_relations() {
        for tau in [0, 1] {
            let ext = extend_to_cl3(0, tau).unwrap();
            let images = literal_eta_images(&ext).unwrap();
            let report = check_generator_relations(&images, ext.layout.sig);
            if tau == 0 {
                // (−1)^deg on ℂ is the identity, so nothing changes.
                assert!(report.holds());
            } else {
                assert!(!report.holds());
            }
        }
    }

    #[test]
    fn eta_i_action_matches_complex_structure() {
        for tau in [0, 1] {
            let ext = extend_to_cl3(0, tau).unwrap();
            assert_eq!(&(ext.complex_structure() * ext.eta(0)), ext.eta(1));
        }
    }

    #[test]
    fn trivial_twisted_adjoint() {
        let layout = Cl3Layout::new(0, 0).unwrap();
        let lam = SpinCElement::identity(layout.base_signature());
        let v = AlgebraElement::generator(layout.sig, layout.eta[0]).unwrap();
        assert_eq!(ad_z2(&lam, &v, &layout).unwrap(), v);
    }

    #[test]
    fn phase_i_negates_eta() {
        let layout = Cl3Layout::new(0, 1).unwrap();
        let lam = SpinCElement::new(AlgebraElement::one(layout.base_signature()), Phase::i()).unwrap();
        let v = AlgebraElement::generator(layout.sig, layout.eta[0]).unwrap();
        assert_eq!(ad_z2(&lam, &v, &layout).unwrap(), v.neg());
    }

    #[test]
    fn rotation_conjugates_e1() {
        let layout = Cl3Layout::new(0, 0).unwrap();
        let base = layout.base_signature();
        let e12 = AlgebraElement::from_blade(base, Blade::from_mask(0b11), int(1)).unwrap();
        let lam = SpinCElement::new(e12, Phase::one()).unwrap();
        let e1 = AlgebraElement::generator(layout.sig, 0).unwrap();
        let mu = AlgebraElement::from_blade(layout.sig, Blade::from_mask(0b11), int(1)).unwrap();
        let expected = mu.mul(&e1).unwrap().mul(&mu.reverse()).unwrap();
        assert_eq!(ad_z2(&lam, &e1, &layout).unwrap(), expected);
        assert_eq!(expected, e1.neg());
        let ext = extend_to_cl3(0, 0).unwrap();
        assert!(check_equivariance(&lam, &e1, &ext).unwrap());
    }

    #[test]
    fn fiber_dimension_and_closure() {
        for tau in [0, 1] {
            let ext = extend_to_cl3(0, tau).unwrap();
            let fiber = lh_fiber_basis(&ext, &canonical_inner_product(&ext)).unwrap();
            assert_eq!(fiber.dim(), 2);
            assert!(fiber.closed_under_i);
            let corr = eta_fiber_correspondence(&fiber).unwrap();
            assert!(corr.holds(), "{corr:?}");
        }
    }

    #[test]
    fn degenerate_fiber_is_spanned_by_eps2_eps3() {
        let ext = extend_to_cl3(0, 0).unwrap();
        let fiber = lh_fiber_basis(&ext, &canonical_inner_product(&ext)).unwrap();
        let r = build_rho23().unwrap();
        assert!(fiber.contains(r.rep.image(3)));
        assert!(fiber.contains(r.rep.image(4)));
    }

    #[test]
    fn wrong_inner_product_changes_fiber() {
        // Asking for the wrong symmetry type leaves no solutions.
        let ext = extend_to_cl3(0, 0).unwrap();
        let d = ext.dim();
        let cons = vec![
            MatrixConstraint::anticommutes(ext.rep.grading()),
            MatrixConstraint::Adjoint { metric: Matrix::identity(d), sign: -1 },
            MatrixConstraint::anticommutes(ext.e(0)),
            MatrixConstraint::anticommutes(ext.e(1)),
        ];
        assert!(solve_matrix_space(d, d, &cons).is_empty());
    }

    #[test]
    fn endomorphism_algebra_dimensions() {
        for (tau, dim) in [(0u8, 16usize), (1, 256)] {
            let ext = extend_to_cl3(0, tau).unwrap();
            let r = end_iso_check(&ext);
            assert_eq!(r.image_dimension, dim);
            assert!(r.holds());
        }
    }

    #[test]
    fn anticommutant_matches_pattern() {
        for tau in [0, 1] {
            let layout = Cl3Layout::new(0, tau).unwrap();
            let basis = layout_anticommutant(&layout).unwrap();
            assert_eq!(basis.to_vec(), anticommutant_pattern(&layout).unwrap().to_vec());
        }
    }

    #[test]
    fn sign_rows() {
        let r0 = sign_report(&extend_to_cl3(0, 0).unwrap()).unwrap();
        assert_eq!(r0.eta_squares, [Some(int(1)), Some(int(1))]);
        assert!(r0.eta_agrees_with_signature());
        let r1 = sign_report(&extend_to_cl3(0, 1).unwrap()).unwrap();
        assert_eq!(r1.eta_squares, [Some(int(-1)), Some(int(-1))]);
        assert!(r1.eta_agrees_with_signature());
    }
}
