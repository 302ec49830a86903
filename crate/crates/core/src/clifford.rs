//! Basis-blade arithmetic in the indefinite Clifford algebras `Cl(p,q)`.
//!
//! Generators are numbered `0..p+q`. The first `p` square to `−1` (written
//! `e₁…e_p`), the remaining `q` square to `+1` (written `ε₁…ε_q`). A blade is
//! the strictly ascending product of the generators in its bitmask.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{Echelon, Matrix, SparseRow};
use crate::rational::Q;

pub const MAX_GENERATORS: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Signature {
    p: usize,
    q: usize,
}

impl Signature {
    pub fn new(p: usize, q: usize) -> Result<Self> {
        if p + q > MAX_GENERATORS {
            return Err(Error::SignatureTooLarge { p, q });
        }
        Ok(Signature { p, q })
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn generators(&self) -> usize {
        self.p + self.q
    }

    /// `2^{p+q}`.
    pub fn algebra_dim(&self) -> usize {
        1 << self.generators()
    }

    /// Square of generator `i`: `−1` for `i < p`, `+1` otherwise.
    pub fn square(&self, i: usize) -> i64 {
        if i < self.p {
            -1
        } else {
            1
        }
    }

    fn negative_mask(&self) -> u32 {
        (1u32 << self.p) - 1
    }

    fn check_blade(&self, b: Blade) -> Result<()> {
        if self.generators() < 32 && b.0 >> self.generators() != 0 {
            let index = 31 - b.0.leading_zeros() as usize;
            return Err(Error::GeneratorOutOfRange { index, p: self.p, q: self.q });
        }
        Ok(())
    }

    pub fn generator_name(&self, i: usize) -> String {
        if i < self.p {
            format!("e{}", i + 1)
        } else {
            format!("ε{}", i - self.p + 1)
        }
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cl({},{})", self.p, self.q)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Blade(u32);

impl Blade {
    pub const UNIT: Blade = Blade(0);

    pub fn from_mask(mask: u32) -> Self {
        Blade(mask)
    }

    pub fn generator(i: usize) -> Self {
        Blade(1 << i)
    }

    pub fn from_generators(gens: &[usize]) -> Self {
        Blade(gens.iter().fold(0, |m, &g| m | (1 << g)))
    }

    pub fn mask(&self) -> u32 {
        self.0
    }

    pub fn grade(&self) -> u32 {
        self.0.count_ones()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    /// Generator indices in ascending order.
    pub fn indices(&self) -> Vec<usize> {
        (0..32).filter(|&i| self.contains(i)).collect()
    }
}

/// Product of two blades: `(sign, blade)` with `a·b = sign · blade`.
pub fn blade_product(a: Blade, b: Blade, sig: Signature) -> Result<(i64, Blade)> {
    sig.check_blade(a)?;
    sig.check_blade(b)?;
    // Pairs (i in a, j in b) with i > j each cost one transposition.
    let mut swaps = 0u32;
    let mut shifted = a.0 >> 1;
    while shifted != 0 {
        swaps += (shifted & b.0).count_ones();
        shifted >>= 1;
    }
    let contractions = (a.0 & b.0 & sig.negative_mask()).count_ones();
    let sign = if (swaps + contractions).is_multiple_of(2) { 1 } else { -1 };
    Ok((sign, Blade(a.0 ^ b.0)))
}

/// Sparse exact multivector in `Cl(p,q)`. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct AlgebraElement {
    sig: Signature,
    coeffs: BTreeMap<Blade, Q>,
}

impl AlgebraElement {
    pub fn zero(sig: Signature) -> Self {
        AlgebraElement { sig, coeffs: BTreeMap::new() }
    }

    pub fn one(sig: Signature) -> Self {
        Self::scalar(sig, Q::one())
    }

    pub fn scalar(sig: Signature, s: Q) -> Self {
        Self::from_blade(sig, Blade::UNIT, s).expect("unit blade is always valid")
    }

    pub fn from_blade(sig: Signature, blade: Blade, coeff: Q) -> Result<Self> {
        sig.check_blade(blade)?;
        let mut e = Self::zero(sig);
        e.add_term(blade, coeff);
        Ok(e)
    }

    pub fn generator(sig: Signature, i: usize) -> Result<Self> {
        if i >= sig.generators() {
            return Err(Error::GeneratorOutOfRange { index: i, p: sig.p, q: sig.q });
        }
        Self::from_blade(sig, Blade::generator(i), Q::one())
    }

    /// `Σ coords[i] · g_i` over the listed generators.
    pub fn vector(sig: Signature, gens: &[usize], coords: &[Q]) -> Result<Self> {
        assert_eq!(gens.len(), coords.len());
        let mut e = Self::zero(sig);
        for (&g, c) in gens.iter().zip(coords) {
            e = e.add(&Self::generator(sig, g)?.scale(c))?;
        }
        Ok(e)
    }

    pub fn signature(&self) -> Signature {
        self.sig
    }

    fn add_term(&mut self, blade: Blade, coeff: Q) {
        if coeff.is_zero() {
            return;
        }
        let e = self.coeffs.entry(blade).or_insert_with(Q::zero);
        *e += coeff;
        if e.is_zero() {
            self.coeffs.remove(&blade);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Blade, &Q)> {
        self.coeffs.iter()
    }

    pub fn coefficient(&self, b: Blade) -> Q {
        self.coeffs.get(&b).cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Scalar value when the element is a multiple of the unit.
    pub fn scalar_part_only(&self) -> Option<Q> {
        match self.coeffs.len() {
            0 => Some(Q::zero()),
            1 => self.coeffs.get(&Blade::UNIT).cloned(),
            _ => None,
        }
    }

    fn check_sig(&self, other: &Self) -> Result<()> {
        if self.sig != other.sig {
            return Err(Error::SignatureMismatch(self.sig.p, self.sig.q, other.sig.p, other.sig.q));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_sig(other)?;
        let mut out = self.clone();
        for (b, c) in &other.coeffs {
            out.add_term(*b, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Q::one())
    }

    pub fn scale(&self, s: &Q) -> Self {
        let mut out = Self::zero(self.sig);
        for (b, c) in &self.coeffs {
            out.add_term(*b, c * s);
        }
        out
    }

    /// Exact distributive product.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_sig(other)?;
        let mut out = Self::zero(self.sig);
        for (a, x) in &self.coeffs {
            for (b, y) in &other.coeffs {
                let (sign, blade) = blade_product(*a, *b, self.sig)?;
                let c = x * y;
                out.add_term(blade, if sign < 0 { -c } else { c });
            }
        }
        Ok(out)
    }

    /// Negates odd-grade components.
    pub fn grade_involution(&self) -> Self {
        self.map_signs(|b| if b.grade() % 2 == 1 { -1 } else { 1 })
    }

    /// Reverses the order of generators in each blade.
    pub fn reverse(&self) -> Self {
        self.map_signs(|b| {
            let k = b.grade();
            if (k * k.saturating_sub(1) / 2) % 2 == 1 {
                -1
            } else {
                1
            }
        })
    }

    fn map_signs(&self, sign: impl Fn(Blade) -> i64) -> Self {
        let mut out = Self::zero(self.sig);
        for (b, c) in &self.coeffs {
            out.add_term(*b, if sign(*b) < 0 { -c.clone() } else { c.clone() });
        }
        out
    }

    pub fn is_even(&self) -> bool {
        self.coeffs.keys().all(|b| b.grade() % 2 == 0)
    }

    pub fn is_odd(&self) -> bool {
        self.coeffs.keys().all(|b| b.grade() % 2 == 1)
    }

    /// Reinterprets the element in another signature, sending generator `i`
    /// to `index_map[i]`. Squares must agree.
    pub fn embed(&self, target: Signature, index_map: &[usize]) -> Result<Self> {
        let mut acc = Self::zero(target);
        for (b, c) in &self.coeffs {
            let mut out = Self::one(target);
            for i in b.indices() {
                let t = *index_map.get(i).ok_or(Error::GeneratorOutOfRange { index: i, p: self.sig.p, q: self.sig.q })?;
                if target.square(t) != self.sig.square(i) {
                    return Err(Error::InvalidInput(format!(
                        "embedding sends {} to {} with a different square",
                        self.sig.generator_name(i),
                        target.generator_name(t)
                    )));
                }
                out = out.mul(&Self::generator(target, t)?)?;
            }
            acc = acc.add(&out.scale(c))?;
        }
        Ok(acc)
    }

    /// Dense coordinates in blade-mask order.
    pub fn to_coordinates(&self) -> Vec<(usize, Q)> {
        self.coeffs.iter().map(|(b, c)| (b.0 as usize, c.clone())).collect()
    }

    pub fn from_dense(sig: Signature, coords: &[Q]) -> Self {
        let mut e = Self::zero(sig);
        for (m, c) in coords.iter().enumerate() {
            e.add_term(Blade(m as u32), c.clone());
        }
        e
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (k, (b, c)) in self.coeffs.iter().enumerate() {
            let name: String = if *b == Blade::UNIT {
                String::new()
            } else {
                b.indices().iter().map(|&i| self.sig.generator_name(i)).collect()
            };
            let mag = c.abs();
            let sep = match (k, c.is_negative()) {
                (0, false) => "",
                (0, true) => "-",
                (_, false) => " + ",
                (_, true) => " - ",
            };
            write!(f, "{sep}")?;
            match (name.is_empty(), mag.is_one()) {
                (true, _) => write!(f, "{mag}")?,
                (false, true) => write!(f, "{name}")?,
                (false, false) => write!(f, "{mag}{name}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in {}", self, self.sig)
    }
}

/// Anything in which generator relations can be checked: abstract algebra
/// elements, tensor-product elements, or matrices.
pub trait CliffordImage: Clone {
    fn product(&self, other: &Self) -> Self;
    fn sum(&self, other: &Self) -> Self;
    fn is_scalar_multiple_of_one(&self, s: i64) -> bool;
    fn is_zero_element(&self) -> bool;
    /// Sparse coordinates in some fixed ambient basis.
    fn coordinates(&self) -> Vec<(usize, Q)>;
    fn ambient_dim(&self) -> usize;
    fn unit_like(&self) -> Self;
}

impl CliffordImage for AlgebraElement {
    fn product(&self, other: &Self) -> Self {
        self.mul(other).expect("images share one signature")
    }
    fn sum(&self, other: &Self) -> Self {
        self.add(other).expect("images share one signature")
    }
    fn is_scalar_multiple_of_one(&self, s: i64) -> bool {
        self.scalar_part_only() == Some(crate::rational::int(s))
    }
    fn is_zero_element(&self) -> bool {
        self.is_zero()
    }
    fn coordinates(&self) -> Vec<(usize, Q)> {
        self.to_coordinates()
    }
    fn ambient_dim(&self) -> usize {
        self.sig.algebra_dim()
    }
    fn unit_like(&self) -> Self {
        Self::one(self.sig)
    }
}

impl CliffordImage for Matrix {
    fn product(&self, other: &Self) -> Self {
        self * other
    }
    fn sum(&self, other: &Self) -> Self {
        self + other
    }
    fn is_scalar_multiple_of_one(&self, s: i64) -> bool {
        self.is_scalar(&crate::rational::int(s))
    }
    fn is_zero_element(&self) -> bool {
        self.is_zero()
    }
    fn coordinates(&self) -> Vec<(usize, Q)> {
        self.entries().iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect()
    }
    fn ambient_dim(&self) -> usize {
        self.rows() * self.cols()
    }
    fn unit_like(&self) -> Self {
        Matrix::identity(self.rows())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RelationFailure {
    WrongCount { expected: usize, found: usize },
    Square { generator: usize, expected: i64 },
    Anticommute { i: usize, j: usize },
}

impl fmt::Display for RelationFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RelationFailure::WrongCount { expected, found } => write!(f, "expected {expected} images, found {found}"),
            RelationFailure::Square { generator, expected } => write!(f, "g{}² ≠ {expected}", generator + 1),
            RelationFailure::Anticommute { i, j } => write!(f, "g{} g{} ≠ −g{} g{}", i + 1, j + 1, j + 1, i + 1),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RelationReport {
    pub checked: usize,
    pub failures: Vec<RelationFailure>,
}

impl RelationReport {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn summary(&self) -> String {
        if self.holds() {
            format!("{} relations hold", self.checked)
        } else {
            let f: Vec<String> = self.failures.iter().map(|x| x.to_string()).collect();
            format!("{} of {} relations fail: {}", self.failures.len(), self.checked, f.join("; "))
        }
    }
}

/// Checks `g_i² = ±1` per signature and `g_i g_j = −g_j g_i` for `i ≠ j`.
pub fn check_generator_relations<T: CliffordImage>(images: &[T], sig: Signature) -> RelationReport {
    let mut report = RelationReport::default();
    if images.len() != sig.generators() {
        report.failures.push(RelationFailure::WrongCount { expected: sig.generators(), found: images.len() });
        return report;
    }
    for (i, g) in images.iter().enumerate() {
        report.checked += 1;
        let expected = sig.square(i);
        if !g.product(g).is_scalar_multiple_of_one(expected) {
            report.failures.push(RelationFailure::Square { generator: i, expected });
        }
        for (j, h) in images.iter().enumerate().skip(i + 1) {
            report.checked += 1;
            if !g.product(h).sum(&h.product(g)).is_zero_element() {
                report.failures.push(RelationFailure::Anticommute { i, j });
            }
        }
    }
    report
}

/// Dimension of the span of all ordered products `g_{i₁}⋯g_{i_k}`
/// (`i₁ < … < i_k`) of the images, the empty product included.
pub fn generated_subalgebra_dimension<T: CliffordImage>(images: &[T]) -> usize {
    let Some(first) = images.first() else { return 1 };
    let mut ech = Echelon::new(first.ambient_dim());
    let m = images.len();
    assert!(m < 24, "too many images to enumerate products");
    for mask in 0u32..(1 << m) {
        let mut prod = first.unit_like();
        for (i, g) in images.iter().enumerate() {
            if mask >> i & 1 == 1 {
                prod = prod.product(g);
            }
        }
        ech.insert(prod.coordinates());
    }
    ech.rank()
}

/// Exact basis of `{v ∈ Cl(sig) : v·g + g·v = 0 for every constraint g}`.
pub fn anticommutant_basis(sig: Signature, constraints: &[AlgebraElement]) -> Result<Vec<AlgebraElement>> {
    let n = sig.algebra_dim();
    for g in constraints {
        if g.sig != sig {
            return Err(Error::SignatureMismatch(sig.p, sig.q, g.sig.p, g.sig.q));
        }
    }
    let mut ech = Echelon::new(n);
    for g in constraints {
        // Column for blade B is the coordinate vector of B·g + g·B; gather
        // the transposed (row) view keyed by output blade.
        let mut rows: BTreeMap<usize, SparseRow> = BTreeMap::new();
        for mask in 0..n {
            let b = AlgebraElement::from_blade(sig, Blade(mask as u32), Q::one())?;
            let image = b.mul(g)?.add(&g.mul(&b)?)?;
            for (out, c) in image.to_coordinates() {
                rows.entry(out).or_default().push((mask, c));
            }
        }
        for (_, row) in rows {
            ech.insert(row);
        }
    }
    Ok(ech.nullspace().iter().map(|v| AlgebraElement::from_dense(sig, v)).collect())
}

/// Element of the ungraded tensor product `Cl(sig_a) ⊗ Cl(sig_b)`, stored
/// by pairs of blades.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorElement {
    left: Signature,
    right: Signature,
    coeffs: BTreeMap<(Blade, Blade), Q>,
}

impl TensorElement {
    pub fn zero(left: Signature, right: Signature) -> Self {
        TensorElement { left, right, coeffs: BTreeMap::new() }
    }

    /// `a ⊗ b`.
    pub fn pure(a: &AlgebraElement, b: &AlgebraElement) -> Self {
        let mut t = Self::zero(a.sig, b.sig);
        for (ba, x) in &a.coeffs {
            for (bb, y) in &b.coeffs {
                t.add_term((*ba, *bb), x * y);
            }
        }
        t
    }

    fn add_term(&mut self, key: (Blade, Blade), c: Q) {
        if c.is_zero() {
            return;
        }
        let e = self.coeffs.entry(key).or_insert_with(Q::zero);
        *e += c;
        if e.is_zero() {
            self.coeffs.remove(&key);
        }
    }
}

impl CliffordImage for TensorElement {
    fn product(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.left, self.right);
        for ((a1, b1), x) in &self.coeffs {
            for ((a2, b2), y) in &other.coeffs {
                let (s1, a) = blade_product(*a1, *a2, self.left).expect("valid left blade");
                let (s2, b) = blade_product(*b1, *b2, self.right).expect("valid right blade");
                let c = x * y;
                out.add_term((a, b), if s1 * s2 < 0 { -c } else { c });
            }
        }
        out
    }
    fn sum(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.coeffs {
            out.add_term(*k, c.clone());
        }
        out
    }
    fn is_scalar_multiple_of_one(&self, s: i64) -> bool {
        let s = crate::rational::int(s);
        if s.is_zero() {
            return self.coeffs.is_empty();
        }
        self.coeffs.len() == 1 && self.coeffs.get(&(Blade::UNIT, Blade::UNIT)) == Some(&s)
    }
    fn is_zero_element(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn coordinates(&self) -> Vec<(usize, Q)> {
        let rb = self.right.algebra_dim();
        self.coeffs.iter().map(|((a, b), c)| (a.0 as usize * rb + b.0 as usize, c.clone())).collect()
    }
    fn ambient_dim(&self) -> usize {
        self.left.algebra_dim() * self.right.algebra_dim()
    }
    fn unit_like(&self) -> Self {
        let mut t = Self::zero(self.left, self.right);
        t.add_term((Blade::UNIT, Blade::UNIT), Q::one());
        t
    }
}

/// Images of the generators of `Cl(k+2, 1)` in `Cl(k,0) ⊗ Cl(2,1)`:
/// `e_i ↦ e′_i ⊗ 1` for `i ≤ k`, `e_{k+j} ↦ ω ⊗ e″_j`, `ε₁ ↦ ω ⊗ ε″₁`,
/// where `ω = e′₁⋯e′_k` plays the role of the grading on the left factor.
/// `k` must be a multiple of 4 so that `ω² = 1`.
pub fn split_isomorphism_images(k: usize) -> Result<(Signature, Vec<TensorElement>)> {
    if !k.is_multiple_of(4) {
        return Err(Error::UnsupportedDimension(format!("left factor Cl({k},0) needs k ≡ 0 mod 4")));
    }
    let left = Signature::new(k, 0)?;
    let right = Signature::new(2, 1)?;
    let source = Signature::new(k + 2, 1)?;
    let one_r = AlgebraElement::one(right);
    let omega = AlgebraElement::from_blade(left, Blade::from_mask(((1u64 << k) - 1) as u32), Q::one())?;
    let mut images = Vec::with_capacity(k + 3);
    for i in 0..k {
        images.push(TensorElement::pure(&AlgebraElement::generator(left, i)?, &one_r));
    }
    for j in 0..2 {
        images.push(TensorElement::pure(&omega, &AlgebraElement::generator(right, j)?));
    }
    images.push(TensorElement::pure(&omega, &AlgebraElement::generator(right, 2)?));
    Ok((source, images))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn sig(p: usize, q: usize) -> Signature {
        Signature::new(p, q).unwrap()
    }

    /// Independent oracle: concatenate generator words, bubble-sort while
    /// counting swaps, then cancel equal neighbours with their squares.
    fn word_product(a: Blade, b: Blade, s: Signature) -> (i64, Blade) {
        let mut word: Vec<usize> = a.indices();
        word.extend(b.indices());
        let mut sign = 1i64;
        let n = word.len();
        for i in 0..n {
            for j in 0..n - 1 - i {
                if word[j] > word[j + 1] {
                    word.swap(j, j + 1);
                    sign = -sign;
                }
            }
        }
        let mut out: Vec<usize> = Vec::new();
        for g in word {
            if out.last() == Some(&g) {
                out.pop();
                sign *= s.square(g);
            } else {
                out.push(g);
            }
        }
        (sign, Blade::from_generators(&out))
    }

    #[test]
    fn generator_squares() {
        let s = sig(2, 0);
        assert_eq!(blade_product(Blade::generator(0), Blade::generator(0), s).unwrap(), (-1, Blade::UNIT));
        let s = sig(0, 1);
        assert_eq!(blade_product(Blade::generator(0), Blade::generator(0), s).unwrap(), (1, Blade::UNIT));
    }

    #[test]
    fn orthogonal_generators_anticommute() {
        let s = sig(2, 0);
        let (s12, b12) = blade_product(Blade::generator(0), Blade::generator(1), s).unwrap();
        let (s21, b21) = blade_product(Blade::generator(1), Blade::generator(0), s).unwrap();
        assert_eq!(b12, b21);
        assert_eq!(b12, Blade::from_mask(0b11));
        assert_eq!(s12, -s21);
    }

    #[test]
    fn out_of_range_index_is_an_error() {
        let s = sig(2, 0);
        assert!(matches!(
            blade_product(Blade::generator(2), Blade::UNIT, s),
            Err(Error::GeneratorOutOfRange { index: 2, .. })
        ));
    }

    #[test]
    fn blade_product_matches_word_oracle() {
        for (p, q) in [(2, 2), (3, 1), (1, 4), (0, 5)] {
            let s = sig(p, q);
            let n = s.algebra_dim() as u32;
            for a in 0..n {
                for b in 0..n {
                    let (a, b) = (Blade::from_mask(a), Blade::from_mask(b));
                    assert_eq!(blade_product(a, b, s).unwrap(), word_product(a, b, s));
                }
            }
        }
    }

    #[test]
    fn bivector_squares_to_minus_one() {
        let s = sig(2, 0);
        let e12 = AlgebraElement::from_blade(s, Blade::from_mask(0b11), Q::one()).unwrap();
        assert_eq!(e12.mul(&e12).unwrap(), AlgebraElement::scalar(s, int(-1)));
    }

    #[test]
    fn unit_is_identity() {
        let s = sig(2, 1);
        let x = AlgebraElement::from_dense(s, &(0..8).map(|k| int(k as i64 - 3)).collect::<Vec<_>>());
        assert_eq!(AlgebraElement::one(s).mul(&x).unwrap(), x);
    }

    #[test]
    fn square_of_top_blade_in_cl22_matches_oracle() {
        let s = sig(2, 2);
        let top = Blade::from_mask(0b1111);
        let (sign, blade) = word_product(top, top, s);
        let x = AlgebraElement::from_blade(s, top, Q::one()).unwrap();
        assert_eq!(x.mul(&x).unwrap(), AlgebraElement::from_blade(s, blade, int(sign)).unwrap());
        assert_eq!((sign, blade), (1, Blade::UNIT));
    }

    #[test]
    fn signature_mismatch_is_an_error() {
        let a = AlgebraElement::one(sig(2, 0));
        let b = AlgebraElement::one(sig(1, 1));
        assert!(matches!(a.mul(&b), Err(Error::SignatureMismatch(..))));
    }

    #[test]
    fn grade_involution_examples() {
        let s = sig(2, 0);
        let e1 = AlgebraElement::generator(s, 0).unwrap();
        let e12 = AlgebraElement::from_blade(s, Blade::from_mask(0b11), Q::one()).unwrap();
        assert_eq!(e1.grade_involution(), e1.neg());
        assert_eq!(e12.grade_involution(), e12);
        let x = AlgebraElement::one(s).add(&e1).unwrap();
        assert_eq!(x.grade_involution(), AlgebraElement::one(s).sub(&e1).unwrap());
    }

    #[test]
    fn anticommutant_in_cl22() {
        let s = sig(2, 2);
        let g = |i| AlgebraElement::generator(s, i).unwrap();
        let basis = anticommutant_basis(s, &[g(2), g(0), g(1)]).unwrap();
        let eps2 = g(3);
        let top = AlgebraElement::from_blade(s, Blade::from_mask(0b1111), Q::one()).unwrap();
        assert_eq!(basis, vec![eps2, top]);
    }

    /// Brute-force oracle: blade B anticommutes with generator g iff
    /// `|B| − [g ∈ B]` is odd; the anticommutant of a set of generators is
    /// spanned by the blades passing every test.
    fn blade_anticommutant_count(s: Signature, gens: &[usize]) -> usize {
        (0..s.algebra_dim() as u32)
            .filter(|&m| {
                let b = Blade::from_mask(m);
                gens.iter().all(|&g| (b.grade() - b.contains(g) as u32) % 2 == 1)
            })
            .count()
    }

    #[test]
    fn anticommutant_in_cl71_has_dimension_two() {
        let s = sig(7, 1);
        let mut cons = vec![AlgebraElement::generator(s, 7).unwrap()];
        cons.extend((0..6).map(|i| AlgebraElement::generator(s, i).unwrap()));
        let basis = anticommutant_basis(s, &cons).unwrap();
        assert_eq!(basis.len(), blade_anticommutant_count(s, &[7, 0, 1, 2, 3, 4, 5]));
        assert_eq!(basis.len(), 2);
        let e7 = AlgebraElement::generator(s, 6).unwrap();
        let top = AlgebraElement::from_blade(s, Blade::from_mask(0xff), Q::one()).unwrap();
        assert_eq!(basis, vec![e7, top]);
    }

    #[test]
    fn anticommutant_in_cl10_is_trivial() {
        let s = sig(1, 0);
        let basis = anticommutant_basis(s, &[AlgebraElement::generator(s, 0).unwrap()]).unwrap();
        assert_eq!(basis.len(), blade_anticommutant_count(s, &[0]));
        assert!(basis.is_empty());
    }

    #[test]
    fn identity_images_satisfy_relations() {
        let s = sig(2, 1);
        let images: Vec<_> = (0..3).map(|i| AlgebraElement::generator(s, i).unwrap()).collect();
        assert!(check_generator_relations(&images, s).holds());
        assert_eq!(generated_subalgebra_dimension(&images), 8);
    }

    #[test]
    fn wrong_square_is_reported() {
        let s = sig(1, 1);
        let images = vec![AlgebraElement::generator(s, 1).unwrap(), AlgebraElement::generator(s, 1).unwrap()];
        let r = check_generator_relations(&images, s);
        assert!(r.failures.contains(&RelationFailure::Square { generator: 0, expected: -1 }));
    }

    #[test]
    fn split_isomorphism_for_cl61() {
        let (source, images) = split_isomorphism_images(4).unwrap();
        assert_eq!(source, sig(6, 1));
        assert!(check_generator_relations(&images, source).holds());
        assert_eq!(generated_subalgebra_dimension(&images), 128);
    }

    #[test]
    fn split_isomorphism_without_grading_twist_fails() {
        // Sending e_{k+j} to 1 ⊗ e″_j instead of ω ⊗ e″_j breaks anticommutation.
        let left = sig(4, 0);
        let right = sig(2, 1);
        let one_r = AlgebraElement::one(right);
        let one_l = AlgebraElement::one(left);
        let mut images: Vec<_> = (0..4).map(|i| TensorElement::pure(&AlgebraElement::generator(left, i).unwrap(), &one_r)).collect();
        for j in 0..3 {
            images.push(TensorElement::pure(&one_l, &AlgebraElement::generator(right, j).unwrap()));
        }
        assert!(!check_generator_relations(&images, sig(6, 1)).holds());
    }
}
