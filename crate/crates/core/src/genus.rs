//! Characteristic-class arithmetic in `ℚ[h]/(h^{d+1})` and the index
//! comparison between a `4n+2`-manifold and its characteristic submanifold.
//!
//! With `x = c₁` of the determinant line:
//!
//! ```text
//! index(X, E) = ⟨ch(E) e^{x/2} Â(X), [X]⟩
//! index(Y, E) = ⟨ch(E) (e^{x/2} − e^{−x/2}) Â(X), [X]⟩
//! ```

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::{factorial, pow, Q};

/// Longest series accepted by [`odd_part_identity`].
pub const MAX_SERIES_ORDER: usize = 50;

/// `ℚ[h]/(h^{d+1})` with `deg h = 2` and `⟨h^d, [X]⟩ = pairing`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TruncatedRing {
    pub generator: String,
    pub top_power: usize,
    #[serde(serialize_with = "crate::rational::serialize_q")]
    pub pairing: Q,
}

impl TruncatedRing {
    pub fn new(top_power: usize, pairing: Q) -> Self {
        TruncatedRing { generator: "h".into(), top_power, pairing }
    }

    pub fn zero(&self) -> TruncatedClass {
        TruncatedClass { coeffs: vec![Q::zero(); self.top_power + 1] }
    }

    pub fn one(&self) -> TruncatedClass {
        self.constant(Q::one())
    }

    pub fn constant(&self, c: Q) -> TruncatedClass {
        let mut z = self.zero();
        z.coeffs[0] = c;
        z
    }

    /// `c·h`.
    pub fn h_multiple(&self, c: Q) -> TruncatedClass {
        let mut z = self.zero();
        if self.top_power >= 1 {
            z.coeffs[1] = c;
        }
        z
    }

    /// A class from coefficients of `1, h, h², …`; missing ones are zero,
    /// extra ones are truncated.
    pub fn class(&self, coeffs: &[Q]) -> TruncatedClass {
        let mut z = self.zero();
        for (k, c) in coeffs.iter().enumerate().take(self.top_power + 1) {
            z.coeffs[k] = c.clone();
        }
        z
    }

    /// `⟨a, [X]⟩`.
    pub fn evaluate(&self, a: &TruncatedClass) -> Q {
        a.coeffs[self.top_power].clone() * &self.pairing
    }
}

/// `Σ c_k h^k`, `k ≤ d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TruncatedClass {
    coeffs: Vec<Q>,
}

impl TruncatedClass {
    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Q {
        self.coeffs.get(k).cloned().unwrap_or_else(Q::zero)
    }

    pub fn top_power(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, s: &Q) -> Self {
        TruncatedClass { coeffs: self.coeffs.iter().map(|c| c * s).collect() }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = self.unit();
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    fn unit(&self) -> Self {
        let mut coeffs = vec![Q::zero(); self.coeffs.len()];
        coeffs[0] = Q::one();
        TruncatedClass { coeffs }
    }

    /// Powers `k` with a nonzero coefficient.
    pub fn support(&self) -> Vec<usize> {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, _)| k).collect()
    }

    /// Degree `2k` component only.
    pub fn component(&self, k: usize) -> Self {
        let mut out = TruncatedClass { coeffs: vec![Q::zero(); self.coeffs.len()] };
        out.coeffs[k] = self.coeffs[k].clone();
        out
    }

    /// `Σ a_k self^k` for a power series `a`, truncated.
    pub fn compose(&self, series: &[Q]) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        let mut out = TruncatedClass { coeffs: vec![Q::zero(); self.coeffs.len()] };
        let mut power = self.unit();
        for a in series.iter().take(self.coeffs.len()) {
            out = &out + &power.scale(a);
            power = &power * self;
        }
        Ok(out)
    }

    fn check(&self, other: &Self) {
        assert_eq!(self.coeffs.len(), other.coeffs.len(), "classes from different truncated rings");
    }
}

impl fmt::Display for TruncatedClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            let neg = c.is_negative();
            match (first, neg) {
                (true, true) => write!(f, "-")?,
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
                (true, false) => {}
            }
            let a = c.abs();
            match k {
                0 => write!(f, "{a}")?,
                1 if a.is_one() => write!(f, "h")?,
                1 => write!(f, "{a}·h")?,
                _ if a.is_one() => write!(f, "h^{k}")?,
                _ => write!(f, "{a}·h^{k}")?,
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl Add for &TruncatedClass {
    type Output = TruncatedClass;
    fn add(self, o: &TruncatedClass) -> TruncatedClass {
        self.check(o);
        TruncatedClass { coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for &TruncatedClass {
    type Output = TruncatedClass;
    fn sub(self, o: &TruncatedClass) -> TruncatedClass {
        self.check(o);
        TruncatedClass { coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a - b).collect() }
    }
}

impl Neg for &TruncatedClass {
    type Output = TruncatedClass;
    fn neg(self) -> TruncatedClass {
        TruncatedClass { coeffs: self.coeffs.iter().map(|a| -a).collect() }
    }
}

impl Mul for &TruncatedClass {
    type Output = TruncatedClass;
    fn mul(self, o: &TruncatedClass) -> TruncatedClass {
        self.check(o);
        let n = self.coeffs.len();
        let mut coeffs = vec![Q::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in o.coeffs.iter().enumerate().take(n - i) {
                coeffs[i + j] += a * b;
            }
        }
        TruncatedClass { coeffs }
    }
}

/// Coefficients of `e^{s t}` up to `t^order`.
pub fn exp_series(s: &Q, order: usize) -> Vec<Q> {
    (0..=order).map(|k| pow(s, k) / factorial(k)).collect()
}

/// Inverse of a power series with nonzero constant term.
pub fn invert_series(a: &[Q]) -> Result<Vec<Q>> {
    if a.is_empty() || a[0].is_zero() {
        return Err(Error::InvalidInput("series is not invertible".into()));
    }
    let mut b = vec![Q::zero(); a.len()];
    b[0] = a[0].recip();
    for k in 1..a.len() {
        let s = (1..=k).fold(Q::zero(), |acc, j| acc + &a[j] * &b[k - j]);
        b[k] = -s * &b[0];
    }
    Ok(b)
}

/// Coefficients of `t / (e^{t/2} − e^{−t/2})` up to `t^order`.
pub fn a_hat_series(order: usize) -> Vec<Q> {
    let half = Q::new(1.into(), 2.into());
    // (e^{t/2} − e^{−t/2}) / t has coefficient 2·(1/2)^{m}/m! at t^{m−1}, m odd.
    let denom: Vec<Q> = (0..=order)
        .map(|k| if k % 2 == 0 { Q::from_integer(2.into()) * pow(&half, k + 1) / factorial(k + 1) } else { Q::zero() })
        .collect();
    invert_series(&denom).expect("constant term is 1")
}

/// `e^{x/2}`.
pub fn series_exp_half(x: &TruncatedClass) -> Result<TruncatedClass> {
    x.compose(&exp_series(&Q::new(1.into(), 2.into()), x.top_power()))
}

/// `e^{x/2} − e^{−x/2}`.
pub fn exp_half_difference(x: &TruncatedClass) -> Result<TruncatedClass> {
    Ok(&series_exp_half(x)? - &series_exp_half(&-x)?)
}

/// `x / (e^{x/2} − e^{−x/2})`.
pub fn a_hat_line(x: &TruncatedClass) -> Result<TruncatedClass> {
    x.compose(&a_hat_series(x.top_power()))
}

/// `e^{c₁}`.
pub fn ch_line(c1: &TruncatedClass) -> Result<TruncatedClass> {
    c1.compose(&exp_series(&Q::one(), c1.top_power()))
}

/// `⟨ch(E) e^{x/2} Â(X), [X]⟩`.
pub fn index_x(ring: &TruncatedRing, ch_e: &TruncatedClass, x: &TruncatedClass, a_hat: &TruncatedClass) -> Result<Q> {
    let e = series_exp_half(x)?;
    Ok(ring.evaluate(&(&(ch_e * &e) * a_hat)))
}

/// `⟨ch(E) (e^{x/2} − e^{−x/2}) Â(X), [X]⟩`.
pub fn index_y(ring: &TruncatedRing, ch_e: &TruncatedClass, x: &TruncatedClass, a_hat: &TruncatedClass) -> Result<Q> {
    let e = exp_half_difference(x)?;
    Ok(ring.evaluate(&(&(ch_e * &e) * a_hat)))
}

/// A hypothesis of the index comparison that an input violates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Violation {
    /// `ch(E)` has an `h^k` term with `k` odd.
    OddChernTerm { power: usize },
    /// `Â(X)` has an `h^k` term with `k` odd.
    AHatDegree { power: usize },
    /// `Â(X)` does not start with 1.
    AHatConstant,
    /// `d` must be odd (real dimension `4n+2`).
    EvenTopPower { top_power: usize },
    /// `x` must have zero constant term.
    XConstant,
    /// `x = c₁` has degree 2, so only its `h` coefficient may be nonzero.
    XDegree { power: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::OddChernTerm { power } => write!(f, "ch(E) has a nonzero h^{power} term (odd power)"),
            Violation::AHatDegree { power } => write!(f, "Â(X) has a nonzero h^{power} term (odd power)"),
            Violation::AHatConstant => write!(f, "Â(X) must have constant term 1"),
            Violation::EvenTopPower { top_power } => write!(f, "top power {top_power} is even; the manifold dimension must be 2 mod 4"),
            Violation::XConstant => write!(f, "x has a nonzero constant term"),
            Violation::XDegree { power } => write!(f, "x has a nonzero h^{power} term; it must be a multiple of h"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IndexComparison {
    #[serde(serialize_with = "crate::rational::serialize_q")]
    pub index_x: Q,
    #[serde(serialize_with = "crate::rational::serialize_q")]
    pub index_y: Q,
    /// `2·index_X == index_Y`.
    pub equality: bool,
    pub violations: Vec<Violation>,
}

impl IndexComparison {
    /// Equality holds and every hypothesis is met.
    pub fn holds(&self) -> bool {
        self.equality && self.violations.is_empty()
    }
}

pub fn check_hypotheses(ring: &TruncatedRing, ch_e: &TruncatedClass, x: &TruncatedClass, a_hat: &TruncatedClass) -> Vec<Violation> {
    let mut v = Vec::new();
    if ring.top_power.is_multiple_of(2) {
        v.push(Violation::EvenTopPower { top_power: ring.top_power });
    }
    if !x.coeff(0).is_zero() {
        v.push(Violation::XConstant);
    }
    v.extend(x.support().into_iter().filter(|&k| k >= 2).map(|power| Violation::XDegree { power }));
    v.extend(ch_e.support().into_iter().filter(|k| k % 2 == 1).map(|power| Violation::OddChernTerm { power }));
    if !a_hat.coeff(0).is_one() {
        v.push(Violation::AHatConstant);
    }
    v.extend(a_hat.support().into_iter().filter(|k| k % 2 == 1).map(|power| Violation::AHatDegree { power }));
    v
}

/// Computes both indices and compares `2·index_X` with `index_Y`. Violated
/// hypotheses are reported alongside; a violation with a nonzero constant
/// term in `x` gives no indices and is returned as the only violation.
pub fn compare_indices(ring: &TruncatedRing, ch_e: &TruncatedClass, x: &TruncatedClass, a_hat: &TruncatedClass) -> IndexComparison {
    let violations = check_hypotheses(ring, ch_e, x, a_hat);
    match (index_x(ring, ch_e, x, a_hat), index_y(ring, ch_e, x, a_hat)) {
        (Ok(ix), Ok(iy)) => {
            let equality = Q::from_integer(2.into()) * &ix == iy;
            IndexComparison { index_x: ix, index_y: iy, equality, violations }
        }
        _ => IndexComparison { index_x: Q::zero(), index_y: Q::zero(), equality: false, violations },
    }
}

/// Checks `2·odd(e^{t/2}) = e^{t/2} − e^{−t/2}` coefficient-wise up to
/// `t^order`.
pub fn odd_part_identity(order: usize) -> Result<bool> {
    if order > MAX_SERIES_ORDER {
        return Err(Error::InvalidInput(format!("series order {order} exceeds {MAX_SERIES_ORDER}")));
    }
    let half = Q::new(1.into(), 2.into());
    let plus = exp_series(&half, order);
    let minus = exp_series(&-half, order);
    Ok((0..=order).all(|k| {
        let odd = if k % 2 == 1 { Q::from_integer(2.into()) * &plus[k] } else { Q::zero() };
        odd == &plus[k] - &minus[k]
    }))
}

/// Two-sphere: `d = 1`, `x = 2h`, `Â = 1`.
pub fn sphere_model() -> (TruncatedRing, TruncatedClass, TruncatedClass) {
    let ring = TruncatedRing::new(1, Q::one());
    let x = ring.h_multiple(Q::from_integer(2.into()));
    let a = ring.one();
    (ring, x, a)
}

/// Complex projective 3-space: `d = 3`, `x = 4h`, `Â = a_hat_line(h)⁴`.
pub fn projective_3_model() -> (TruncatedRing, TruncatedClass, TruncatedClass) {
    let ring = TruncatedRing::new(3, Q::one());
    let x = ring.h_multiple(Q::from_integer(4.into()));
    let a = a_hat_line(&ring.h_multiple(Q::one())).expect("zero constant term").pow(4);
    (ring, x, a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    #[test]
    fn exp_half_examples() {
        let r = TruncatedRing::new(1, int(1));
        assert_eq!(series_exp_half(&r.zero()).unwrap(), r.one());
        assert_eq!(series_exp_half(&r.h_multiple(int(2))).unwrap(), r.class(&[int(1), int(1)]));
        let r = TruncatedRing::new(3, int(1));
        assert_eq!(
            series_exp_half(&r.h_multiple(int(1))).unwrap(),
            r.class(&[int(1), frac(1, 2), frac(1, 8), frac(1, 48)])
        );
        assert_eq!(series_exp_half(&r.one()), Err(Error::NonzeroConstantTerm));
    }

    #[test]
    fn a_hat_by_long_division() {
        // Oracle: solve (Σ b_k t^k)·(Σ d_k t^k) = 1 by hand for
        // d = 1 + t²/24 + t⁴/1920.
        let s = a_hat_series(5);
        assert_eq!(s, vec![int(1), int(0), frac(-1, 24), int(0), frac(7, 5760), int(0)]);
    }

    #[test]
    fn a_hat_times_difference_is_x() {
        let r = TruncatedRing::new(7, int(1));
        let x = r.class(&[int(0), frac(3, 2), int(-1)]);
        let prod = &a_hat_line(&x).unwrap() * &exp_half_difference(&x).unwrap();
        assert_eq!(prod, x);
    }

    #[test]
    fn ch_line_examples() {
        let r = TruncatedRing::new(1, int(1));
        assert_eq!(ch_line(&r.h_multiple(int(1))).unwrap(), r.class(&[int(1), int(1)]));
        let r = TruncatedRing::new(3, int(1));
        assert_eq!(ch_line(&r.zero()).unwrap(), r.one());
        assert_eq!(ch_line(&r.h_multiple(int(2))).unwrap(), r.class(&[int(1), int(2), int(2), frac(4, 3)]));
    }

    #[test]
    fn sphere_indices() {
        let (r, x, a) = sphere_model();
        let c = compare_indices(&r, &r.one(), &x, &a);
        assert_eq!((c.index_x.clone(), c.index_y.clone()), (int(1), int(2)));
        assert!(c.holds());
        let c = compare_indices(&r, &r.zero(), &x, &a);
        assert_eq!((c.index_x.clone(), c.index_y.clone()), (int(0), int(0)));
    }

    #[test]
    fn projective_indices() {
        let (r, x, a) = projective_3_model();
        let c = compare_indices(&r, &r.one(), &x, &a);
        assert_eq!((c.index_x.clone(), c.index_y.clone()), (int(1), int(2)));
        assert!(c.holds());
    }

    #[test]
    fn odd_chern_term_is_flagged() {
        let (r, x, a) = projective_3_model();
        let ch = r.class(&[int(1), int(1)]);
        let c = compare_indices(&r, &ch, &x, &a);
        assert!(!c.holds());
        assert!(!c.equality);
        assert_eq!(c.violations, vec![Violation::OddChernTerm { power: 1 }]);
    }

    #[test]
    fn odd_part_examples() {
        assert!(odd_part_identity(20).unwrap());
        assert!(odd_part_identity(1).unwrap());
        assert!(odd_part_identity(MAX_SERIES_ORDER + 1).is_err());
        let e = exp_series(&frac(1, 2), 3);
        assert_eq!(int(2) * &e[3], frac(1, 24));
    }
}
