//! Dense exact matrices and sparse exact elimination.
//!
//! All solvers here work over [`Q`]. Operators in this crate are built from
//! signed permutation matrices, so the linear systems that come out of them
//! are extremely sparse; [`Echelon`] keeps rows sparse and only ever touches
//! stored nonzeros.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::rational::{int, Q};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Q>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Q::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, Q::one())
    }

    pub fn scalar(n: usize, s: Q) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = s.clone();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Q) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Builds a matrix from integer rows. Panics on ragged input.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix literal");
        Self::from_fn(r, c, |i, j| int(rows[i][j]))
    }

    pub fn diagonal(entries: &[Q]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, e) in entries.iter().enumerate() {
            m[(i, i)] = e.clone();
        }
        m
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[Vec<Q>]) -> Self {
        let n = cols.first().map_or(0, |c| c.len());
        Self::from_fn(n, cols.len(), |r, c| cols[c][r].clone())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[Q] {
        &self.data
    }

    pub fn column(&self, c: usize) -> Vec<Q> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |r, c| self[(c, r)].clone())
    }

    pub fn scale(&self, s: &Q) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * s).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// True when the matrix is `s · Id`.
    pub fn is_scalar(&self, s: &Q) -> bool {
        self.is_square()
            && (0..self.rows).all(|r| {
                (0..self.cols).all(|c| {
                    let e = &self[(r, c)];
                    if r == c {
                        e == s
                    } else {
                        e.is_zero()
                    }
                })
            })
    }

    /// Returns `s` if the matrix equals `s · Id`.
    pub fn scalar_value(&self) -> Option<Q> {
        if !self.is_square() || self.rows == 0 {
            return None;
        }
        let s = self[(0, 0)].clone();
        self.is_scalar(&s).then_some(s)
    }

    pub fn is_identity(&self) -> bool {
        self.is_scalar(&Q::one())
    }

    pub fn kron(&self, other: &Matrix) -> Matrix {
        let (r2, c2) = (other.rows, other.cols);
        Matrix::from_fn(self.rows * r2, self.cols * c2, |r, c| {
            let a = &self[(r / r2, c / c2)];
            if a.is_zero() {
                Q::zero()
            } else {
                a * &other[(r % r2, c % c2)]
            }
        })
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &Matrix) -> Matrix {
        let mut m = Matrix::zeros(self.rows + other.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m[(r, c)] = self[(r, c)].clone();
            }
        }
        for r in 0..other.rows {
            for c in 0..other.cols {
                m[(self.rows + r, self.cols + c)] = other[(r, c)].clone();
            }
        }
        m
    }

    pub fn apply(&self, v: &[Q]) -> Vec<Q> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        (0..self.rows)
            .map(|r| {
                let mut acc = Q::zero();
                for (c, x) in v.iter().enumerate() {
                    let a = &self[(r, c)];
                    if !a.is_zero() && !x.is_zero() {
                        acc += a * x;
                    }
                }
                acc
            })
            .collect()
    }

    pub fn pow(&self, k: usize) -> Matrix {
        let mut acc = Matrix::identity(self.rows);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// `self·other − other·self`.
    pub fn commutator(&self, other: &Matrix) -> Matrix {
        &(self * other) - &(other * self)
    }

    /// `self·other + other·self`.
    pub fn anticommutator(&self, other: &Matrix) -> Matrix {
        &(self * other) + &(other * self)
    }

    pub fn commutes_with(&self, other: &Matrix) -> bool {
        self * other == other * self
    }

    pub fn anticommutes_with(&self, other: &Matrix) -> bool {
        self.anticommutator(other).is_zero()
    }

    /// Nonzero entries of row `r`.
    fn row_nonzeros(&self, r: usize) -> impl Iterator<Item = (usize, &Q)> {
        self.data[r * self.cols..(r + 1) * self.cols]
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
    }

    pub fn rank(&self) -> usize {
        let mut e = Echelon::new(self.cols);
        for r in 0..self.rows {
            e.insert(self.row_nonzeros(r).map(|(c, x)| (c, x.clone())).collect());
        }
        e.rank()
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// Gauss-Jordan inverse.
    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Matrix::identity(n);
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a[(r, col)].is_zero())?;
            if pivot != col {
                a.swap_rows(pivot, col);
                inv.swap_rows(pivot, col);
            }
            let p = a[(col, col)].clone();
            for c in 0..n {
                if !a[(col, c)].is_zero() {
                    a[(col, c)] = &a[(col, c)] / &p;
                }
                if !inv[(col, c)].is_zero() {
                    inv[(col, c)] = &inv[(col, c)] / &p;
                }
            }
            for r in 0..n {
                if r == col || a[(r, col)].is_zero() {
                    continue;
                }
                let f = a[(r, col)].clone();
                for c in 0..n {
                    if !a[(col, c)].is_zero() {
                        let d = &f * &a[(col, c)];
                        a[(r, c)] -= d;
                    }
                    if !inv[(col, c)].is_zero() {
                        let d = &f * &inv[(col, c)];
                        inv[(r, c)] -= d;
                    }
                }
            }
        }
        Some(inv)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn to_vec(&self) -> Vec<Q> {
        self.data.clone()
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<Q>) -> Matrix {
        assert_eq!(data.len(), rows * cols);
        Matrix { rows, cols, data }
    }

    /// Rows rendered as exact rational strings, for reports.
    pub fn to_string_rows(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|r| (0..self.cols).map(|c| self[(r, c)].to_string()).collect())
            .collect()
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Q;
    fn index(&self, (r, c): (usize, usize)) -> &Q {
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Q {
        &mut self.data[r * self.cols + c]
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "matrix product shape mismatch");
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for (k, a) in self.row_nonzeros(r) {
                for (c, b) in rhs.row_nonzeros(k) {
                    out[(r, c)] += a * b;
                }
            }
        }
        out
    }
}

impl Add for &Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "matrix sum shape mismatch");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "matrix difference shape mismatch");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| -x).collect() }
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self[(r, c)].to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Sum of `coeffs[i] · mats[i]`.
pub fn linear_combination(coeffs: &[Q], mats: &[Matrix]) -> Matrix {
    assert_eq!(coeffs.len(), mats.len());
    assert!(!mats.is_empty(), "empty linear combination");
    let mut acc = Matrix::zeros(mats[0].rows, mats[0].cols);
    for (c, m) in coeffs.iter().zip(mats) {
        if !c.is_zero() {
            acc = &acc + &m.scale(c);
        }
    }
    acc
}

pub type SparseRow = Vec<(usize, Q)>;

/// Incremental row-echelon form over sparse rows.
///
/// Every stored row has leading coefficient 1 at its pivot column and
/// entries only at larger columns.
#[derive(Clone, Debug)]
pub struct Echelon {
    ncols: usize,
    pivots: BTreeMap<usize, SparseRow>,
}

impl Echelon {
    pub fn new(ncols: usize) -> Self {
        Echelon { ncols, pivots: BTreeMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    fn reduce(&self, row: SparseRow) -> BTreeMap<usize, Q> {
        let mut work: BTreeMap<usize, Q> = BTreeMap::new();
        for (c, x) in row {
            debug_assert!(c < self.ncols);
            if x.is_zero() {
                continue;
            }
            let e = work.entry(c).or_insert_with(Q::zero);
            *e += x;
            if e.is_zero() {
                work.remove(&c);
            }
        }
        let mut cursor = 0usize;
        loop {
            let next = work
                .range(cursor..)
                .map(|(c, _)| *c)
                .find(|c| self.pivots.contains_key(c));
            let Some(col) = next else { break };
            let factor = work.remove(&col).expect("pivot entry present");
            for (c, x) in &self.pivots[&col][1..] {
                let e = work.entry(*c).or_insert_with(Q::zero);
                *e -= &factor * x;
                if e.is_zero() {
                    work.remove(c);
                }
            }
            cursor = col + 1;
        }
        work
    }

    /// Adds a row; returns true when it was independent of the rows so far.
    pub fn insert(&mut self, row: SparseRow) -> bool {
        let work = self.reduce(row);
        let Some((&lead, lead_val)) = work.iter().next() else {
            return false;
        };
        let inv = Q::one() / lead_val;
        let normalized: SparseRow = work.into_iter().map(|(c, x)| (c, x * &inv)).collect();
        self.pivots.insert(lead, normalized);
        true
    }

    pub fn contains(&self, row: SparseRow) -> bool {
        self.reduce(row).is_empty()
    }

    /// Basis of the solution space of the stored homogeneous system, one
    /// vector per free column in ascending column order.
    pub fn nullspace(&self) -> Vec<Vec<Q>> {
        // Back-substitute to reduced form, highest pivot first.
        let mut reduced: BTreeMap<usize, BTreeMap<usize, Q>> = BTreeMap::new();
        for (&p, row) in self.pivots.iter().rev() {
            let mut work: BTreeMap<usize, Q> = BTreeMap::new();
            for (c, x) in &row[1..] {
                if let Some(prow) = reduced.get(c) {
                    for (c2, y) in prow {
                        let e = work.entry(*c2).or_insert_with(Q::zero);
                        *e -= x * y;
                    }
                } else {
                    let e = work.entry(*c).or_insert_with(Q::zero);
                    *e += x;
                }
            }
            work.retain(|_, x| !x.is_zero());
            reduced.insert(p, work);
        }
        let free: Vec<usize> = (0..self.ncols).filter(|c| !self.pivots.contains_key(c)).collect();
        let mut index_of_free = BTreeMap::new();
        for (k, &f) in free.iter().enumerate() {
            index_of_free.insert(f, k);
        }
        let mut basis: Vec<Vec<Q>> = free
            .iter()
            .map(|&f| {
                let mut v = vec![Q::zero(); self.ncols];
                v[f] = Q::one();
                v
            })
            .collect();
        for (&p, row) in &reduced {
            for (c, x) in row {
                let k = index_of_free[c];
                basis[k][p] = -x.clone();
            }
        }
        basis
    }
}

/// Rank of a family of vectors.
pub fn span_rank<'a>(vectors: impl IntoIterator<Item = &'a [Q]>) -> usize {
    let mut e: Option<Echelon> = None;
    for v in vectors {
        let ech = e.get_or_insert_with(|| Echelon::new(v.len()));
        ech.insert(v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(c, x)| (c, x.clone())).collect());
    }
    e.map_or(0, |e| e.rank())
}

/// Nullspace of a dense matrix (kernel vectors of length `cols`).
pub fn nullspace(m: &Matrix) -> Vec<Vec<Q>> {
    let mut e = Echelon::new(m.cols);
    for r in 0..m.rows {
        e.insert(m.row_nonzeros(r).map(|(c, x)| (c, x.clone())).collect());
    }
    e.nullspace()
}

/// A homogeneous linear condition on an unknown matrix `X`.
#[derive(Clone, Debug)]
pub enum MatrixConstraint {
    /// `L·X + X·R = 0`; a missing side contributes nothing.
    Sylvester { left: Option<Matrix>, right: Option<Matrix> },
    /// `Xᵀ·G − sign·G·X = 0`: self-adjoint (`sign = 1`) or skew-adjoint
    /// (`sign = −1`) for the metric `G`.
    Adjoint { metric: Matrix, sign: i64 },
}

impl MatrixConstraint {
    /// `X·src = dst·X`.
    pub fn intertwines(src: &Matrix, dst: &Matrix) -> Self {
        MatrixConstraint::Sylvester { left: Some(-dst), right: Some(src.clone()) }
    }

    /// `X·g = g·X`.
    pub fn commutes(g: &Matrix) -> Self {
        Self::intertwines(g, g)
    }

    /// `X·g = −g·X`.
    pub fn anticommutes(g: &Matrix) -> Self {
        MatrixConstraint::Sylvester { left: Some(g.clone()), right: Some(g.clone()) }
    }

    pub fn residual(&self, x: &Matrix) -> Matrix {
        match self {
            MatrixConstraint::Sylvester { left, right } => {
                let mut acc = Matrix::zeros(x.rows(), x.cols());
                if let Some(l) = left {
                    acc = &acc + &(l * x);
                }
                if let Some(r) = right {
                    acc = &acc + &(x * r);
                }
                acc
            }
            MatrixConstraint::Adjoint { metric, sign } => {
                &(&x.transpose() * metric) - &(metric * x).scale(&int(*sign))
            }
        }
    }

    fn rows(&self, rows: usize, cols: usize) -> Vec<SparseRow> {
        let var = |r: usize, c: usize| r * cols + c;
        let mut out = Vec::new();
        match self {
            MatrixConstraint::Sylvester { left, right } => {
                for a in 0..rows {
                    for b in 0..cols {
                        let mut row: SparseRow = Vec::new();
                        if let Some(l) = left {
                            for (k, x) in l.row_nonzeros(a) {
                                row.push((var(k, b), x.clone()));
                            }
                        }
                        if let Some(r) = right {
                            for k in 0..r.rows {
                                let x = &r[(k, b)];
                                if !x.is_zero() {
                                    row.push((var(a, k), x.clone()));
                                }
                            }
                        }
                        if !row.is_empty() {
                            out.push(row);
                        }
                    }
                }
            }
            MatrixConstraint::Adjoint { metric, sign } => {
                let s = int(*sign);
                for a in 0..cols {
                    for b in 0..cols {
                        let mut row: SparseRow = Vec::new();
                        // (XᵀG)[a,b] = Σ_k X[k,a] G[k,b]
                        for k in 0..rows {
                            let g = &metric[(k, b)];
                            if !g.is_zero() {
                                row.push((var(k, a), g.clone()));
                            }
                        }
                        // (GX)[a,b] = Σ_k G[a,k] X[k,b]
                        for (k, g) in metric.row_nonzeros(a) {
                            row.push((var(k, b), -(g * &s)));
                        }
                        if !row.is_empty() {
                            out.push(row);
                        }
                    }
                }
            }
        }
        out
    }
}

/// Basis of `{X ∈ Mat(rows × cols) : every constraint holds}`.
pub fn solve_matrix_space(rows: usize, cols: usize, constraints: &[MatrixConstraint]) -> Vec<Matrix> {
    let mut e = Echelon::new(rows * cols);
    for c in constraints {
        for row in c.rows(rows, cols) {
            e.insert(row);
            if e.rank() == rows * cols {
                return Vec::new();
            }
        }
    }
    e.nullspace().into_iter().map(|v| Matrix::from_vec(rows, cols, v)).collect()
}

/// Restricts an existing solution space by further constraints, solving only
/// for coordinates along `basis`.
pub fn restrict_space(basis: &[Matrix], constraints: &[MatrixConstraint]) -> Vec<Matrix> {
    if basis.is_empty() {
        return Vec::new();
    }
    let k = basis.len();
    let mut e = Echelon::new(k);
    for c in constraints {
        let residuals: Vec<Matrix> = basis.iter().map(|b| c.residual(b)).collect();
        let len = residuals[0].entries().len();
        for idx in 0..len {
            let row: SparseRow = residuals
                .iter()
                .enumerate()
                .filter(|(_, r)| !r.entries()[idx].is_zero())
                .map(|(j, r)| (j, r.entries()[idx].clone()))
                .collect();
            if !row.is_empty() {
                e.insert(row);
            }
        }
        if e.rank() == k {
            return Vec::new();
        }
    }
    e.nullspace().into_iter().map(|coeffs| linear_combination(&coeffs, basis)).collect()
}

/// Small-integer coordinate vectors in a deterministic order: by max-norm
/// bound `1..=max_bound`, and within a bound lexicographically with entries
/// ordered `0, 1, −1, 2, −2, …`. The zero vector is skipped.
pub fn small_integer_combinations(k: usize, max_bound: i64) -> impl Iterator<Item = Vec<i64>> {
    (1..=max_bound).flat_map(move |bound| {
        let values: Vec<i64> = std::iter::once(0)
            .chain((1..=bound).flat_map(|v| [v, -v]))
            .collect();
        let total = values.len().checked_pow(k as u32).unwrap_or(usize::MAX);
        (0..total).filter_map(move |mut idx| {
            let mut v = vec![0i64; k];
            for slot in v.iter_mut().rev() {
                *slot = values[idx % values.len()];
                idx /= values.len();
            }
            (v.iter().map(|x| x.abs()).max() == Some(bound)).then_some(v)
        })
    })
}
