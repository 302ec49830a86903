//! Clifford modules as exact real matrices on graded spaces, optionally
//! carrying a complex structure.

use num_traits::{One, Signed, Zero};

use crate::clifford::{check_generator_relations, AlgebraElement, RelationReport, Signature};
use crate::complex::{standard_complex_structure, CMatrix, ComplexFrame, ComplexOp, Cq};
use crate::error::{Error, Result};
use crate::exterior;
use crate::linalg::{linear_combination, small_integer_combinations, solve_matrix_space, Matrix, MatrixConstraint};
use crate::rational::{int, sqrt_exact, Q};

/// Search bound for integer combinations in the invertibility and
/// normalization scans.
const SCAN_BOUND: i64 = 2;
const SCAN_LIMIT: usize = 4096;

/// A representation of `Cl(sig)` on a graded real space.
///
/// Generator images are usually odd and complex-linear. Some constructions
/// also need even images (the grading itself can be a generator image) or
/// anti-linear ones, so parity and linearity are recorded per generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedRep {
    sig: Signature,
    images: Vec<Matrix>,
    grading: Matrix,
    complex_structure: Option<Matrix>,
    odd: Vec<bool>,
    antilinear: Vec<bool>,
}

impl GradedRep {
    pub fn new(sig: Signature, images: Vec<Matrix>, grading: Matrix, complex_structure: Option<Matrix>) -> Result<Self> {
        let dim = grading.rows();
        if !grading.is_square() || images.iter().any(|m| m.rows() != dim || m.cols() != dim) {
            return Err(Error::DimensionMismatch("generator images and grading must share one square size".into()));
        }
        let report = check_generator_relations(&images, sig);
        if !report.holds() {
            return Err(Error::RelationFailure(report.summary()));
        }
        if !(&grading * &grading).is_identity() {
            return Err(Error::InvalidInput("grading does not square to Id".into()));
        }
        let mut odd = Vec::with_capacity(images.len());
        for (i, g) in images.iter().enumerate() {
            odd.push(if g.anticommutes_with(&grading) {
                true
            } else if g.commutes_with(&grading) {
                false
            } else {
                return Err(Error::InvalidInput(format!("image of {} has no parity", sig.generator_name(i))));
            });
        }
        let mut antilinear = vec![false; images.len()];
        if let Some(jc) = &complex_structure {
            if jc.rows() != dim || !(jc * jc).is_scalar(&-Q::one()) {
                return Err(Error::NotComplex("complex structure must square to −Id".into()));
            }
            if !jc.commutes_with(&grading) {
                return Err(Error::NotComplex("grading is not complex-linear".into()));
            }
            for (i, g) in images.iter().enumerate() {
                antilinear[i] = if g.commutes_with(jc) {
                    false
                } else if g.anticommutes_with(jc) {
                    true
                } else {
                    return Err(Error::NotComplex(format!(
                        "image of {} is neither complex-linear nor anti-linear",
                        sig.generator_name(i)
                    )));
                };
            }
        }
        Ok(GradedRep { sig, images, grading, complex_structure, odd, antilinear })
    }

    pub fn signature(&self) -> Signature {
        self.sig
    }

    /// Real dimension of the carrier.
    pub fn dim(&self) -> usize {
        self.grading.rows()
    }

    pub fn images(&self) -> &[Matrix] {
        &self.images
    }

    pub fn image(&self, i: usize) -> &Matrix {
        &self.images[i]
    }

    pub fn grading(&self) -> &Matrix {
        &self.grading
    }

    pub fn complex_structure(&self) -> Option<&Matrix> {
        self.complex_structure.as_ref()
    }

    pub fn require_complex(&self) -> Result<&Matrix> {
        self.complex_structure.as_ref().ok_or(Error::MissingComplexStructure)
    }

    pub fn is_odd(&self, i: usize) -> bool {
        self.odd[i]
    }

    pub fn is_antilinear(&self, i: usize) -> bool {
        self.antilinear[i]
    }

    /// True when every generator acts oddly and complex-linearly, as for a
    /// spinor module.
    pub fn is_standard_complex_module(&self) -> bool {
        self.complex_structure.is_some() && self.odd.iter().all(|&o| o) && self.antilinear.iter().all(|&a| !a)
    }

    pub fn relations(&self) -> RelationReport {
        check_generator_relations(&self.images, self.sig)
    }

    /// Frame adapted to the complex structure.
    pub fn frame(&self) -> Result<ComplexFrame> {
        ComplexFrame::adapted_to(self.require_complex()?)
    }

    /// Representation of the subalgebra generated by the listed generators.
    pub fn restrict(&self, gens: &[usize], sig: Signature) -> Result<GradedRep> {
        let images = gens.iter().map(|&g| self.images[g].clone()).collect();
        GradedRep::new(sig, images, self.grading.clone(), self.complex_structure.clone())
    }

    /// `P ρ P⁻¹`, with grading and complex structure transported as well.
    pub fn conjugate(&self, p: &Matrix) -> Result<GradedRep> {
        let inv = p.inverse().ok_or_else(|| Error::InvalidInput("conjugating matrix is singular".into()))?;
        let c = |m: &Matrix| &(p * m) * &inv;
        GradedRep::new(self.sig, self.images.iter().map(c).collect(), c(&self.grading), self.complex_structure.as_ref().map(c))
    }

    /// `ρ(v)` for an arbitrary algebra element.
    pub fn image_of(&self, v: &AlgebraElement) -> Result<Matrix> {
        if v.signature() != self.sig {
            let s = v.signature();
            return Err(Error::SignatureMismatch(s.p(), s.q(), self.sig.p(), self.sig.q()));
        }
        let mut acc = Matrix::zeros(self.dim(), self.dim());
        for (blade, c) in v.terms() {
            let mut m = Matrix::identity(self.dim());
            for i in blade.indices() {
                m = &m * &self.images[i];
            }
            acc = &acc + &m.scale(c);
        }
        Ok(acc)
    }

    /// Complex readings of the generator images in this rep's frame.
    fn complex_images(&self, frame: &ComplexFrame) -> Result<Vec<ComplexOp>> {
        self.images.iter().map(|m| frame.complex_form(m)).collect()
    }
}

/// A real-linear map anti-commuting with a reference complex structure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AntiLinearMap {
    matrix: Matrix,
    complex_structure: Matrix,
}

impl AntiLinearMap {
    pub fn new(matrix: Matrix, complex_structure: Matrix) -> Result<Self> {
        if matrix.rows() != complex_structure.rows() || !matrix.anticommutes_with(&complex_structure) {
            return Err(Error::NotComplex("map does not anti-commute with the complex structure".into()));
        }
        Ok(AntiLinearMap { matrix, complex_structure })
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn complex_structure(&self) -> &Matrix {
        &self.complex_structure
    }

    /// Scalar `s` with `J² = s·Id`, if the square is scalar.
    pub fn square_sign(&self) -> Option<Q> {
        (&self.matrix * &self.matrix).scalar_value()
    }
}

/// An exact point `(cos, sin)` of the unit circle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Phase {
    cos: Q,
    sin: Q,
}

impl Phase {
    pub fn new(cos: Q, sin: Q) -> Result<Self> {
        if &cos * &cos + &sin * &sin != Q::one() {
            return Err(Error::InvalidSpinC(format!("phase ({cos}, {sin}) is not on the unit circle")));
        }
        Ok(Phase { cos, sin })
    }

    pub fn one() -> Self {
        Phase { cos: Q::one(), sin: Q::zero() }
    }

    pub fn i() -> Self {
        Phase { cos: Q::zero(), sin: Q::one() }
    }

    /// `((a²−b²)/(a²+b²), 2ab/(a²+b²))`, the square of the direction `(a,b)`
    /// rescaled onto the circle.
    pub fn from_direction(a: i64, b: i64) -> Result<Self> {
        let n = a * a + b * b;
        if n == 0 {
            return Err(Error::InvalidSpinC("zero direction".into()));
        }
        Self::new(Q::new((a * a - b * b).into(), n.into()), Q::new((2 * a * b).into(), n.into()))
    }

    pub fn cos(&self) -> &Q {
        &self.cos
    }

    pub fn sin(&self) -> &Q {
        &self.sin
    }

    pub fn square(&self) -> Phase {
        Phase {
            cos: &self.cos * &self.cos - &self.sin * &self.sin,
            sin: int(2) * &self.cos * &self.sin,
        }
    }

    /// `cos·Id + sin·Jc`.
    pub fn action(&self, jc: &Matrix) -> Matrix {
        &Matrix::scalar(jc.rows(), self.cos.clone()) + &jc.scale(&self.sin)
    }
}

/// `[μ, u]` with `μ` even and `μ·μ̃ = 1`, `|u| = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpinCElement {
    even_part: AlgebraElement,
    phase: Phase,
}

impl SpinCElement {
    pub fn new(even_part: AlgebraElement, phase: Phase) -> Result<Self> {
        if !even_part.is_even() {
            return Err(Error::InvalidSpinC(format!("{even_part} is not even")));
        }
        let norm = even_part.mul(&even_part.reverse())?;
        if norm != AlgebraElement::one(even_part.signature()) {
            return Err(Error::InvalidSpinC(format!("{even_part} is not unit-normalized")));
        }
        Ok(SpinCElement { even_part, phase })
    }

    pub fn identity(sig: Signature) -> Self {
        SpinCElement { even_part: AlgebraElement::one(sig), phase: Phase::one() }
    }

    pub fn even_part(&self) -> &AlgebraElement {
        &self.even_part
    }

    pub fn phase(&self) -> &Phase {
        &self.phase
    }

    /// `μ⁻¹ = μ̃` for unit-normalized even elements.
    pub fn even_inverse(&self) -> AlgebraElement {
        self.even_part.reverse()
    }
}

/// `ρ(μ)·u` as a matrix.
pub fn spin_c_matrix(rep: &GradedRep, lam: &SpinCElement) -> Result<Matrix> {
    let jc = rep.require_complex()?;
    let mu = rep.image_of(lam.even_part())?;
    Ok(&mu * &lam.phase().action(jc))
}

pub fn spin_c_apply(rep: &GradedRep, lam: &SpinCElement, v: &[Q]) -> Result<Vec<Q>> {
    if v.len() != rep.dim() {
        return Err(Error::DimensionMismatch(format!("vector of length {} on a {}-dimensional carrier", v.len(), rep.dim())));
    }
    Ok(spin_c_matrix(rep, lam)?.apply(v))
}

/// `ℂ` as the module of `Cl(0,0)`.
pub fn trivial_spinor_rep() -> GradedRep {
    let sig = Signature::new(0, 0).expect("empty signature");
    GradedRep::new(sig, Vec::new(), Matrix::identity(2), Some(standard_complex_structure(1))).expect("trivial module")
}

/// The module of `Cl(2,0)` on `Λ*ℝ²`: `e_k ↦ e_k^∧ − e_k^⌟`, with the
/// complex structure `−ρ(e₁e₂ε₁)` and grading by form degree.
fn exterior_spinor_rep() -> GradedRep {
    let [e1, e2, ..] = exterior::cl23_images();
    GradedRep::new(
        Signature::new(2, 0).expect("small signature"),
        vec![e1, e2],
        exterior::parity(),
        Some(exterior::complex_structure()),
    )
    .expect("exterior module is valid")
}

/// Complex spinor module of `Cl(two_n, 0)`, of complex dimension `2^{two_n/2}`.
///
/// The base case is `Λ*ℝ²`; larger cases are graded tensor products with
/// further copies of it, expressed in standard complex coordinates.
pub fn build_spinor_rep(two_n: usize) -> Result<GradedRep> {
    if two_n == 0 || !two_n.is_multiple_of(2) || two_n > 12 {
        return Err(Error::UnsupportedDimension(format!("spinor module for 2n = {two_n} (supported: 2, 4, …, 12)")));
    }
    let s2 = exterior_spinor_rep();
    let mut rep = s2.clone();
    for _ in 1..two_n / 2 {
        rep = graded_tensor(&rep, &s2)?;
    }
    Ok(rep)
}

/// `Jcⁿ · ρ(e₁)⋯ρ(e_{2n})`.
pub fn grading_operator(rep: &GradedRep) -> Result<Matrix> {
    let jc = rep.require_complex()?;
    let gens = rep.signature().generators();
    if !gens.is_multiple_of(2) {
        return Err(Error::UnsupportedDimension(format!("chirality needs an even number of generators, found {gens}")));
    }
    let mut m = jc.pow(gens / 2);
    for g in rep.images() {
        m = &m * g;
    }
    Ok(m)
}

/// Tensor product over ℂ of two operators, each read in its own frame; the
/// result is in standard complex coordinates of the product.
pub fn tensor_operator(a: &Matrix, frame_a: &ComplexFrame, b: &Matrix, frame_b: &ComplexFrame) -> Result<Matrix> {
    if a.is_zero() || b.is_zero() {
        // The zero map reads as both linear and anti-linear.
        let n = a.rows() * b.rows() / 2;
        return Ok(Matrix::zeros(n, n));
    }
    let ca = frame_a.complex_form(a)?;
    let cb = frame_b.complex_form(b)?;
    Ok(ca.kron(&cb)?.realify())
}

/// `a ⊗̂ b`: generators of `a` act as `ρ_a ⊗ 1`, those of `b` as
/// `(−1)^deg ⊗ ρ_b`; the grading is `(−1)^deg ⊗ (−1)^deg`.
pub fn graded_tensor(a: &GradedRep, b: &GradedRep) -> Result<GradedRep> {
    let fa = a.frame()?;
    let fb = b.frame()?;
    let sig = Signature::new(a.sig.p() + b.sig.p(), a.sig.q() + b.sig.q())?;
    let ca = a.complex_images(&fa)?;
    let cb = b.complex_images(&fb)?;
    if ca.iter().chain(cb.iter()).any(|op| op.antilinear) {
        return Err(Error::NotComplex("graded tensor needs complex-linear generator images".into()));
    }
    let ga = fa.complex_form(a.grading())?;
    let gb = fb.complex_form(b.grading())?;
    // Generators are ordered e's of a, e's of b, then ε's of a, ε's of b.
    let (pa, pb) = (a.sig.p(), b.sig.p());
    let mut images = Vec::with_capacity(sig.generators());
    for i in 0..pa {
        images.push(ca[i].kron(&ComplexOp::identity(b.dim() / 2))?.realify());
    }
    for j in 0..pb {
        images.push(ga.kron(&cb[j])?.realify());
    }
    for i in pa..ca.len() {
        images.push(ca[i].kron(&ComplexOp::identity(b.dim() / 2))?.realify());
    }
    for j in pb..cb.len() {
        images.push(ga.kron(&cb[j])?.realify());
    }
    let grading = ga.kron(&gb)?.realify();
    GradedRep::new(sig, images, grading, Some(standard_complex_structure(a.dim() * b.dim() / 4)))
}

/// Block-diagonal sum of two representations of the same algebra.
pub fn direct_sum(a: &GradedRep, b: &GradedRep) -> Result<GradedRep> {
    if a.sig != b.sig {
        return Err(Error::SignatureMismatch(a.sig.p(), a.sig.q(), b.sig.p(), b.sig.q()));
    }
    let images = a.images.iter().zip(&b.images).map(|(x, y)| x.direct_sum(y)).collect();
    let jc = match (&a.complex_structure, &b.complex_structure) {
        (Some(x), Some(y)) => Some(x.direct_sum(y)),
        _ => None,
    };
    GradedRep::new(a.sig, images, a.grading.direct_sum(&b.grading), jc)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Linearity {
    /// Commutes with the complex structure.
    Complex,
    /// Anti-commutes with the complex structure.
    AntiLinear,
    /// No condition relative to the complex structure.
    Real,
}

fn linearity_constraint(rep: &GradedRep, linearity: Linearity) -> Result<Option<MatrixConstraint>> {
    Ok(match linearity {
        Linearity::Real => None,
        Linearity::Complex => Some(MatrixConstraint::commutes(rep.require_complex()?)),
        Linearity::AntiLinear => Some(MatrixConstraint::anticommutes(rep.require_complex()?)),
    })
}

/// Real dimension of the maps commuting with every generator image, with
/// the requested relation to the complex structure.
pub fn commutant_dimension(rep: &GradedRep, linearity: Linearity) -> Result<usize> {
    let mut cons: Vec<MatrixConstraint> = rep.images.iter().map(MatrixConstraint::commutes).collect();
    cons.extend(linearity_constraint(rep, linearity)?);
    Ok(solve_matrix_space(rep.dim(), rep.dim(), &cons).len())
}

/// Basis of the anti-linear maps that anti-commute with every generator
/// image and commute with the grading.
pub fn structure_space(rep: &GradedRep) -> Result<Vec<Matrix>> {
    let jc = rep.require_complex()?;
    let mut cons = vec![MatrixConstraint::anticommutes(jc), MatrixConstraint::commutes(rep.grading())];
    cons.extend(rep.images.iter().map(MatrixConstraint::anticommutes));
    Ok(solve_matrix_space(rep.dim(), rep.dim(), &cons))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StructureKind {
    /// `J² = +Id`.
    Real,
    /// `J² = −Id`.
    Quaternionic,
}

impl StructureKind {
    pub fn sign(&self) -> i64 {
        match self {
            StructureKind::Real => 1,
            StructureKind::Quaternionic => -1,
        }
    }
}

/// Finds `J` anti-linear, anti-commuting with every generator image and
/// commuting with the grading, with `J² = ±Id` per `kind`.
///
/// The constraint space is solved exactly; integer combinations of its basis
/// are scanned in a fixed order, and the first whose square is a scalar of
/// the right sign with a rational square root is normalized.
pub fn find_structure_j(rep: &GradedRep, kind: StructureKind) -> Result<AntiLinearMap> {
    let jc = rep.require_complex()?.clone();
    let space = structure_space(rep)?;
    if space.is_empty() {
        return Err(Error::NoStructure(format!(
            "the constraint space is zero on the {}-dimensional module of {}",
            rep.dim(),
            rep.signature()
        )));
    }
    let want = int(kind.sign());
    let mut seen_signs = Vec::new();
    for coeffs in small_integer_combinations(space.len(), SCAN_BOUND).take(SCAN_LIMIT) {
        let q: Vec<Q> = coeffs.iter().map(|&c| int(c)).collect();
        let cand = linear_combination(&q, &space);
        let Some(s) = (&cand * &cand).scalar_value() else { continue };
        if s.is_zero() {
            continue;
        }
        if s.signum() != want {
            if !seen_signs.contains(&s.signum()) {
                seen_signs.push(s.signum());
            }
            continue;
        }
        if let Some(root) = sqrt_exact(&s.abs()) {
            let j = cand.scale(&(Q::one() / root));
            return AntiLinearMap::new(j, jc);
        }
    }
    let observed: Vec<String> = seen_signs.iter().map(|s| s.to_string()).collect();
    Err(Error::NoStructure(format!(
        "constraint space of dimension {} has no element squaring to {}·Id (scalar square signs seen: [{}])",
        space.len(),
        kind.sign(),
        observed.join(", ")
    )))
}

/// First invertible member of the span, scanning integer coordinates in a
/// fixed order.
pub fn first_invertible(basis: &[Matrix]) -> Option<Matrix> {
    if basis.is_empty() {
        return None;
    }
    small_integer_combinations(basis.len(), SCAN_BOUND).take(SCAN_LIMIT).find_map(|coeffs| {
        let q: Vec<Q> = coeffs.iter().map(|&c| int(c)).collect();
        let cand = linear_combination(&q, basis);
        cand.is_invertible().then_some(cand)
    })
}

fn intertwiner_constraints(r1: &GradedRep, r2: &GradedRep) -> Result<Vec<MatrixConstraint>> {
    if r1.sig != r2.sig {
        return Err(Error::SignatureMismatch(r1.sig.p(), r1.sig.q(), r2.sig.p(), r2.sig.q()));
    }
    if r1.dim() != r2.dim() {
        return Err(Error::DimensionMismatch(format!("carriers of dimension {} and {}", r1.dim(), r2.dim())));
    }
    let mut cons: Vec<MatrixConstraint> =
        r1.images.iter().zip(&r2.images).map(|(a, b)| MatrixConstraint::intertwines(a, b)).collect();
    if let (Some(j1), Some(j2)) = (&r1.complex_structure, &r2.complex_structure) {
        cons.push(MatrixConstraint::intertwines(j1, j2));
    }
    Ok(cons)
}

/// Invertible `T` with `T·ρ₁(g) = ρ₂(g)·T` for every generator (and
/// `T·Jc₁ = Jc₂·T` when both carry complex structures).
pub fn intertwiner(r1: &GradedRep, r2: &GradedRep) -> Result<Option<Matrix>> {
    let cons = intertwiner_constraints(r1, r2)?;
    Ok(first_invertible(&solve_matrix_space(r1.dim(), r1.dim(), &cons)))
}

/// As [`intertwiner`], additionally requiring `T` to preserve the grading.
pub fn graded_intertwiner(r1: &GradedRep, r2: &GradedRep) -> Result<Option<Matrix>> {
    let mut cons = intertwiner_constraints(r1, r2)?;
    cons.push(MatrixConstraint::intertwines(r1.grading(), r2.grading()));
    Ok(first_invertible(&solve_matrix_space(r1.dim(), r1.dim(), &cons)))
}

/// Complex conjugation on `ℂ`, the real structure of the trivial module.
pub fn conjugation_structure() -> AntiLinearMap {
    let conj = ComplexOp::antilinear(CMatrix::identity(1)).realify();
    AntiLinearMap::new(conj, standard_complex_structure(1)).expect("conjugation is anti-linear")
}

/// Complex number `a + bi` acting through `Jc`.
pub fn complex_scalar(jc: &Matrix, z: &Cq) -> Matrix {
    &Matrix::scalar(jc.rows(), z.re.clone()) + &jc.scale(&z.im)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::Blade;
    use crate::rational::frac;

    fn sig(p: usize, q: usize) -> Signature {
        Signature::new(p, q).unwrap()
    }

    #[test]
    fn two_dimensional_spinors() {
        let s2 = build_spinor_rep(2).unwrap();
        assert_eq!(s2.dim(), 4);
        for g in s2.images() {
            assert!((g * g).is_scalar(&int(-1)));
        }
        assert!(s2.is_standard_complex_module());
    }

    #[test]
    fn chirality_of_two_dimensional_spinors_is_form_parity() {
        let s2 = build_spinor_rep(2).unwrap();
        assert_eq!(grading_operator(&s2).unwrap(), exterior::parity());
    }

    #[test]
    fn spinor_dimensions() {
        for (two_n, real_dim) in [(4, 8), (6, 16)] {
            let s = build_spinor_rep(two_n).unwrap();
            assert_eq!(s.dim(), real_dim);
            assert!(s.relations().holds());
        }
    }

    #[test]
    fn graded_tensor_grading_matches_chirality() {
        for two_n in [4, 6] {
            let s = build_spinor_rep(two_n).unwrap();
            let chi = grading_operator(&s).unwrap();
            assert_eq!(&chi, s.grading());
            assert!((&chi * &chi).is_identity());
            for g in s.images() {
                assert!(g.anticommutes_with(&chi));
            }
        }
    }

    #[test]
    fn odd_factor_generators_anticommute_in_graded_tensor() {
        let s4 = build_spinor_rep(4).unwrap();
        for i in 0..2 {
            for j in 2..4 {
                assert!(s4.image(i).anticommutes_with(s4.image(j)));
            }
        }
        // A vector even in the first factor and odd in the second has
        // total grading −1.
        let g = s4.grading();
        let mut found = false;
        for k in 0..s4.dim() {
            if g[(k, k)] == int(-1) {
                found = true;
            }
        }
        assert!(found);
    }

    #[test]
    fn schur_commutants() {
        let s4 = build_spinor_rep(4).unwrap();
        assert_eq!(commutant_dimension(&s4, Linearity::Complex).unwrap(), 2);
        let s2 = build_spinor_rep(2).unwrap();
        let doubled = direct_sum(&s2, &s2).unwrap();
        assert_eq!(commutant_dimension(&doubled, Linearity::Complex).unwrap(), 8);
    }

    #[test]
    fn quaternionic_structure_in_dimension_four() {
        let s4 = build_spinor_rep(4).unwrap();
        let space = structure_space(&s4).unwrap();
        assert_eq!(space.len(), 2);
        let j = find_structure_j(&s4, StructureKind::Quaternionic).unwrap();
        assert!((j.matrix() * j.matrix()).is_scalar(&int(-1)));
        assert!(j.matrix().commutes_with(s4.grading()));
        for g in s4.images() {
            assert!(j.matrix().anticommutes_with(g));
        }
        assert!(find_structure_j(&s4, StructureKind::Real).is_err());
    }

    #[test]
    fn real_structure_in_dimension_eight() {
        let s8 = build_spinor_rep(8).unwrap();
        let j = find_structure_j(&s8, StructureKind::Real).unwrap();
        assert!((j.matrix() * j.matrix()).is_identity());
        assert!(j.matrix().commutes_with(s8.grading()));
        for g in s8.images() {
            assert!(j.matrix().anticommutes_with(g));
        }
    }

    #[test]
    fn no_structure_in_dimension_two() {
        let s2 = build_spinor_rep(2).unwrap();
        assert!(structure_space(&s2).unwrap().is_empty());
        assert!(matches!(find_structure_j(&s2, StructureKind::Real), Err(Error::NoStructure(_))));
    }

    #[test]
    fn conjugation_is_the_trivial_real_structure() {
        let s0 = trivial_spinor_rep();
        let j = find_structure_j(&s0, StructureKind::Real).unwrap();
        let conj = conjugation_structure();
        assert!(j.matrix() == conj.matrix() || j.matrix() == &-conj.matrix());
    }

    #[test]
    fn self_intertwiner_is_invertible() {
        let s4 = build_spinor_rep(4).unwrap();
        let t = intertwiner(&s4, &s4).unwrap().unwrap();
        assert!(t.is_invertible());
        for g in s4.images() {
            assert!(t.commutes_with(g));
        }
    }

    #[test]
    fn intertwiner_recovers_conjugated_rep() {
        let s2 = build_spinor_rep(2).unwrap();
        let p = Matrix::from_fn(4, 4, |r, c| if r == c { int(1) } else if r < c { int((r + 2 * c) as i64 % 3 - 1) } else { int(0) });
        let q = s2.conjugate(&p).unwrap();
        let t = intertwiner(&s2, &q).unwrap().unwrap();
        for (a, b) in s2.images().iter().zip(q.images()) {
            assert_eq!(&t * a, b * &t);
        }
    }

    #[test]
    fn spin_c_actions() {
        let s2 = build_spinor_rep(2).unwrap();
        let s = sig(2, 0);
        let id = SpinCElement::identity(s);
        assert!(spin_c_matrix(&s2, &id).unwrap().is_identity());
        let e12 = AlgebraElement::from_blade(s, Blade::from_mask(0b11), int(1)).unwrap();
        let rot = SpinCElement::new(e12, Phase::one()).unwrap();
        let m = spin_c_matrix(&s2, &rot).unwrap();
        assert!(!m.is_identity());
        assert!(m.pow(2).is_scalar(&int(-1)));
        assert!(m.pow(4).is_identity());
        let phase = SpinCElement::new(AlgebraElement::one(s), Phase::from_direction(2, 1).unwrap()).unwrap();
        let pm = spin_c_matrix(&s2, &phase).unwrap();
        for g in s2.images() {
            assert!(pm.commutes_with(g));
        }
        let v: Vec<Q> = (0..4).map(|k| int(k as i64 + 1)).collect();
        assert_eq!(spin_c_apply(&s2, &id, &v).unwrap(), v);
    }

    #[test]
    fn spin_c_validation() {
        let s = sig(2, 0);
        let e1 = AlgebraElement::generator(s, 0).unwrap();
        assert!(SpinCElement::new(e1, Phase::one()).is_err());
        let two = AlgebraElement::scalar(s, int(2));
        assert!(SpinCElement::new(two, Phase::one()).is_err());
        assert!(Phase::new(frac(1, 2), frac(1, 2)).is_err());
        assert_eq!(Phase::i().square(), Phase::new(int(-1), int(0)).unwrap());
    }
}
