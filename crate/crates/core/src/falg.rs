//! Exact linear algebra over prime fields `F_p`.
//!
//! Everything here is small and dense: residues are stored as `u32`, matrices row-major. The
//! subspace type keeps its basis in reduced row echelon form so that two subspaces are equal
//! exactly when their stored forms are identical.

use std::fmt;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{too_large, Error, Result};

/// A prime field `F_p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct FieldSpec {
    p: u32,
}

impl TryFrom<u32> for FieldSpec {
    type Error = Error;
    fn try_from(p: u32) -> Result<Self> {
        FieldSpec::new(p)
    }
}

impl From<FieldSpec> for u32 {
    fn from(f: FieldSpec) -> u32 {
        f.p
    }
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl FieldSpec {
    pub fn new(p: u32) -> Result<Self> {
        if is_prime(p) {
            Ok(FieldSpec { p })
        } else {
            Err(Error::InvalidField(p))
        }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn reduce(&self, x: i64) -> u32 {
        x.rem_euclid(self.p as i64) as u32
    }

    #[inline]
    pub fn add(&self, x: u32, y: u32) -> u32 {
        ((x as u64 + y as u64) % self.p as u64) as u32
    }

    #[inline]
    pub fn sub(&self, x: u32, y: u32) -> u32 {
        ((x as u64 + self.p as u64 - y as u64) % self.p as u64) as u32
    }

    #[inline]
    pub fn mul(&self, x: u32, y: u32) -> u32 {
        ((x as u64 * y as u64) % self.p as u64) as u32
    }

    #[inline]
    pub fn neg(&self, x: u32) -> u32 {
        if x == 0 {
            0
        } else {
            self.p - x
        }
    }

    pub fn pow(&self, mut x: u32, mut e: u64) -> u32 {
        let mut acc = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, x);
            }
            x = self.mul(x, x);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, x: u32) -> Result<u32> {
        if x.is_multiple_of(self.p) {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(x, self.p as u64 - 2))
    }

    /// Smallest generator of the multiplicative group.
    pub fn primitive_root(&self) -> u32 {
        if self.p == 2 {
            return 1;
        }
        let order = self.p - 1;
        let mut factors = Vec::new();
        let mut m = order;
        let mut d = 2;
        while d * d <= m {
            if m.is_multiple_of(d) {
                factors.push(d);
                while m.is_multiple_of(d) {
                    m /= d;
                }
            }
            d += 1;
        }
        if m > 1 {
            factors.push(m);
        }
        (2..self.p)
            .find(|&g| factors.iter().all(|&f| self.pow(g, (order / f) as u64) != 1))
            .expect("prime field has a primitive root")
    }
}

/// The four primitive field operations, exposed as data for table-driven callers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Mul,
    Neg,
    Inv,
}

pub fn field_arith(spec: FieldSpec, op: FieldOp, x: u32, y: Option<u32>) -> Result<u32> {
    let p = spec.p();
    let check = |v: u32| {
        if v >= p {
            Err(Error::IncompatibleObjects(format!(
                "residue {v} out of range for F_{p}"
            )))
        } else {
            Ok(v)
        }
    };
    let x = check(x)?;
    let need_y = || {
        y.ok_or_else(|| Error::IncompatibleObjects("binary field operation needs two operands".into()))
            .and_then(check)
    };
    match op {
        FieldOp::Add => Ok(spec.add(x, need_y()?)),
        FieldOp::Mul => Ok(spec.mul(x, need_y()?)),
        FieldOp::Neg => Ok(spec.neg(x)),
        FieldOp::Inv => spec.inv(x),
    }
}

/// Dense matrix over `F_p`, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldMatrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl fmt::Debug for FieldMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F{}[", self.field.p)?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(r, c))?;
            }
        }
        write!(f, "]({}x{})", self.rows, self.cols)
    }
}

impl FieldMatrix {
    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Self {
        FieldMatrix {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Builds a matrix from row-major data, reducing every entry mod `p`.
    pub fn from_vec(field: FieldSpec, rows: usize, cols: usize, data: Vec<u32>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data length does not match shape");
        let p = field.p();
        FieldMatrix {
            field,
            rows,
            cols,
            data: data.into_iter().map(|x| x % p).collect(),
        }
    }

    pub fn from_rows(field: FieldSpec, rows: &[Vec<u32>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix rows");
        Self::from_vec(field, rows.len(), cols, rows.concat())
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[u32] {
        &self.data
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v % self.field.p;
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<u32> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn mul(&self, other: &FieldMatrix) -> FieldMatrix {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let p = self.field.p as u64;
        let mut out = vec![0u32; self.rows * other.cols];
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k] as u64;
                if a == 0 {
                    continue;
                }
                let brow = &other.data[k * other.cols..(k + 1) * other.cols];
                let orow = &mut out[i * other.cols..(i + 1) * other.cols];
                for (o, &b) in orow.iter_mut().zip(brow) {
                    *o = ((*o as u64 + a * b as u64) % p) as u32;
                }
            }
        }
        FieldMatrix {
            field: self.field,
            rows: self.rows,
            cols: other.cols,
            data: out,
        }
    }

    pub fn mul_vec(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        let p = self.field.p as u64;
        (0..self.rows)
            .map(|r| {
                let s: u64 = self.row(r).iter().zip(v).map(|(&a, &b)| a as u64 * b as u64).sum();
                (s % p) as u32
            })
            .collect()
    }

    pub fn add(&self, other: &FieldMatrix) -> FieldMatrix {
        assert_eq!(
            (self.rows, self.cols),
            (other.rows, other.cols),
            "matrix sum shape mismatch"
        );
        let f = self.field;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.add(a, b)).collect();
        FieldMatrix {
            field: f,
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn sub(&self, other: &FieldMatrix) -> FieldMatrix {
        assert_eq!(
            (self.rows, self.cols),
            (other.rows, other.cols),
            "matrix difference shape mismatch"
        );
        let f = self.field;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.sub(a, b)).collect();
        FieldMatrix {
            field: f,
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn scale(&self, s: u32) -> FieldMatrix {
        let f = self.field;
        let data = self.data.iter().map(|&a| f.mul(a, s)).collect();
        FieldMatrix {
            field: f,
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn transpose(&self) -> FieldMatrix {
        let mut t = FieldMatrix::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c);
            }
        }
        t
    }

    /// Reduced row echelon form together with its pivot columns.
    pub fn rref_with_pivots(&self) -> (FieldMatrix, Vec<usize>) {
        let f = self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(pr) = (row..m.rows).find(|&r| m.get(r, col) != 0) else {
                continue;
            };
            if pr != row {
                for c in 0..m.cols {
                    m.data.swap(pr * m.cols + c, row * m.cols + c);
                }
            }
            let inv = f.inv(m.get(row, col)).expect("pivot is nonzero");
            for c in 0..m.cols {
                let v = f.mul(m.get(row, c), inv);
                m.data[row * m.cols + c] = v;
            }
            for r in 0..m.rows {
                if r == row {
                    continue;
                }
                let factor = m.get(r, col);
                if factor == 0 {
                    continue;
                }
                for c in 0..m.cols {
                    let v = f.sub(m.get(r, c), f.mul(factor, m.get(row, c)));
                    m.data[r * m.cols + c] = v;
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    /// The unique reduced row echelon form and the rank.
    pub fn rref(&self) -> (FieldMatrix, usize) {
        let (m, pivots) = self.rref_with_pivots();
        (m, pivots.len())
    }

    pub fn rank(&self) -> usize {
        self.rref_with_pivots().1.len()
    }

    /// Right kernel `{v : M v = 0}`.
    pub fn kernel_basis(&self) -> Subspace {
        let f = self.field;
        let (r, pivots) = self.rref_with_pivots();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut vectors = Vec::with_capacity(free.len());
        for &fc in &free {
            let mut v = vec![0u32; self.cols];
            v[fc] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(r.get(i, fc));
            }
            vectors.push(v);
        }
        Subspace::span(f, self.cols, &vectors)
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    pub fn inverse(&self) -> Option<FieldMatrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug = FieldMatrix::zeros(self.field, n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.data[r * 2 * n + c] = self.get(r, c);
            }
            aug.data[r * 2 * n + n + r] = 1;
        }
        let (red, pivots) = aug.rref_with_pivots();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = FieldMatrix::zeros(self.field, n, n);
        for r in 0..n {
            for c in 0..n {
                inv.data[r * n + c] = red.get(r, n + c);
            }
        }
        Some(inv)
    }

    /// Block-diagonal sum `diag(self, other)`.
    pub fn block_diag(&self, other: &FieldMatrix) -> FieldMatrix {
        let mut m = FieldMatrix::zeros(self.field, self.rows + other.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m.data[r * m.cols + c] = self.get(r, c);
            }
        }
        for r in 0..other.rows {
            for c in 0..other.cols {
                m.data[(self.rows + r) * m.cols + self.cols + c] = other.get(r, c);
            }
        }
        m
    }
}

/// A linear subspace of `F_p^n`, stored canonically by an RREF basis.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Subspace {
    ambient_dim: usize,
    basis: FieldMatrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: FieldSpec, n: usize) -> Self {
        Subspace {
            ambient_dim: n,
            basis: FieldMatrix::zeros(field, 0, n),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: FieldSpec, n: usize) -> Self {
        Subspace {
            ambient_dim: n,
            basis: FieldMatrix::identity(field, n),
            pivots: (0..n).collect(),
        }
    }

    /// Span of the given vectors.
    pub fn span(field: FieldSpec, n: usize, vectors: &[Vec<u32>]) -> Self {
        if vectors.is_empty() {
            return Self::zero(field, n);
        }
        let m = FieldMatrix::from_rows(field, vectors);
        assert_eq!(m.cols(), n, "vector length does not match ambient dimension");
        Self::row_space(&m)
    }

    pub fn row_space(m: &FieldMatrix) -> Self {
        let (r, pivots) = m.rref_with_pivots();
        let k = pivots.len();
        let basis = FieldMatrix::from_vec(m.field, k, m.cols, r.data[..k * m.cols].to_vec());
        Subspace {
            ambient_dim: m.cols,
            basis,
            pivots,
        }
    }

    /// Column space `M(F_p^cols)` as a subspace of `F_p^rows`.
    pub fn column_space(m: &FieldMatrix) -> Self {
        Self::row_space(&m.transpose())
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn basis(&self) -> &FieldMatrix {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn field(&self) -> FieldSpec {
        self.basis.field
    }

    pub fn basis_vector(&self, i: usize) -> &[u32] {
        self.basis.row(i)
    }

    /// Columns that are not pivots; the standard vectors there span a complement.
    pub fn complement_columns(&self) -> Vec<usize> {
        (0..self.ambient_dim).filter(|c| !self.pivots.contains(c)).collect()
    }

    /// Subtracts the pivot components, leaving a vector supported on the complement columns.
    pub fn reduce(&self, v: &[u32]) -> Vec<u32> {
        let f = self.field();
        let mut w = v.to_vec();
        for (i, &pc) in self.pivots.iter().enumerate() {
            let c = w[pc];
            if c == 0 {
                continue;
            }
            for (wj, &bj) in w.iter_mut().zip(self.basis.row(i)) {
                *wj = f.sub(*wj, f.mul(c, bj));
            }
        }
        w
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// Coordinates of `v` in the stored basis, if `v` lies in the subspace.
    pub fn coords(&self, v: &[u32]) -> Option<Vec<u32>> {
        if self.contains(v) {
            Some(self.pivots.iter().map(|&pc| v[pc]).collect())
        } else {
            None
        }
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        (0..self.dim()).all(|i| other.contains(self.basis.row(i)))
    }

    /// `M(U)` for a matrix `M` whose column count equals the ambient dimension.
    pub fn image_under(&self, m: &FieldMatrix) -> Subspace {
        let vectors: Vec<Vec<u32>> = (0..self.dim()).map(|i| m.mul_vec(self.basis.row(i))).collect();
        Subspace::span(self.field(), m.rows(), &vectors)
    }
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Odometer step over base-`p` digits, last digit fastest. Returns false after wrapping around.
pub(crate) fn advance_digits(digits: &mut [u32], p: u32) -> bool {
    for d in digits.iter_mut().rev() {
        *d += 1;
        if *d < p {
            return true;
        }
        *d = 0;
    }
    false
}

fn push_subspaces_of_dim(field: FieldSpec, n: usize, d: usize, out: &mut Vec<Subspace>) {
    let p = field.p();
    for pivots in combinations(n, d) {
        let free: Vec<(usize, usize)> = pivots
            .iter()
            .enumerate()
            .flat_map(|(r, &pc)| ((pc + 1)..n).filter(|c| !pivots.contains(c)).map(move |c| (r, c)))
            .collect();
        let mut digits = vec![0u32; free.len()];
        loop {
            let mut basis = FieldMatrix::zeros(field, d, n);
            for (r, &pc) in pivots.iter().enumerate() {
                basis.data[r * n + pc] = 1;
            }
            for (&(r, c), &v) in free.iter().zip(&digits) {
                basis.data[r * n + c] = v;
            }
            out.push(Subspace {
                ambient_dim: n,
                basis,
                pivots: pivots.clone(),
            });
            if !advance_digits(&mut digits, p) {
                break;
            }
        }
    }
}

/// All subspaces of `F_p^n` (or those of one dimension), ordered by dimension, then pivot set,
/// then free entries.
pub fn enumerate_subspaces(
    field: FieldSpec,
    ambient_dim: usize,
    dim_filter: Option<usize>,
    max_ambient_dim: usize,
) -> Result<Vec<Subspace>> {
    if ambient_dim > max_ambient_dim {
        return Err(too_large(
            "subspace enumeration ambient dimension",
            ambient_dim as u64,
            max_ambient_dim as u64,
        ));
    }
    let mut out = Vec::new();
    match dim_filter {
        Some(d) if d > ambient_dim => {}
        Some(d) => push_subspaces_of_dim(field, ambient_dim, d, &mut out),
        None => {
            for d in 0..=ambient_dim {
                push_subspaces_of_dim(field, ambient_dim, d, &mut out);
            }
        }
    }
    Ok(out)
}

/// The `q`-binomial coefficient `[n choose d]_q`; zero when `d > n`.
pub fn gaussian_binomial(n: u32, d: u32, q: u32) -> BigUint {
    if d > n {
        return BigUint::from(0u32);
    }
    let q = BigUint::from(q);
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..d {
        num *= q.pow(n - i) - 1u32;
        den *= q.pow(i + 1) - 1u32;
    }
    num / den
}

/// `|GL_n(F_q)| = prod_{i<n} (q^n - q^i)`.
pub fn gl_order(n: u32, q: u32) -> BigUint {
    let q = BigUint::from(q);
    let qn = q.pow(n);
    (0..n).fold(BigUint::one(), |acc, i| acc * (&qn - q.pow(i)))
}
