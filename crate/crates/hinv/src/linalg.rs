//! Dense exact vectors and matrices over GF(p), and the canonical
//! [`Subspace`] abstraction.
//!
//! A subspace is stored as its reduced row echelon basis with zero rows
//! pruned. That form is unique for a given set of vectors, so structural
//! equality of two `Subspace` values is exactly set equality, and the same
//! bytes serve as the hash key for all deduplication downstream.
//!
//! For p = 2 the row reduction runs on bit-packed rows (one `u64` per row,
//! ambient dimension up to 64); the result is bit-identical to the generic
//! path, which the tests check exhaustively on small sizes.

use std::fmt;

use crate::error::{Error, Result};
use crate::gf::{PrimeField, Scalar};

pub(crate) mod gf2;

/// A vector in GF(p)^n with fully reduced entries.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VectorF {
    field: PrimeField,
    entries: Vec<u8>,
}

impl VectorF {
    pub fn new(field: PrimeField, entries: Vec<u8>) -> Self {
        debug_assert!(entries.iter().all(|&e| e < field.modulus()));
        VectorF { field, entries }
    }

    pub fn from_ints(field: PrimeField, entries: &[i64]) -> Self {
        VectorF {
            field,
            entries: entries.iter().map(|&v| field.reduce(v)).collect(),
        }
    }

    pub fn zero(field: PrimeField, n: usize) -> Self {
        VectorF {
            field,
            entries: vec![0; n],
        }
    }

    /// The standard unit vector `e_{i+1}` (zero-based index).
    pub fn unit(field: PrimeField, n: usize, i: usize) -> Self {
        let mut entries = vec![0; n];
        entries[i] = 1;
        VectorF { field, entries }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn entries(&self) -> &[u8] {
        &self.entries
    }

    pub fn get(&self, i: usize) -> Scalar {
        self.field.scalar(self.entries[i] as i64)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&e| e == 0)
    }

    fn check_compatible(&self, other: &VectorF) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch {
                left: self.field.modulus(),
                right: other.field.modulus(),
            });
        }
        if self.len() != other.len() {
            return Err(Error::DimensionMismatch {
                left: self.len(),
                right: other.len(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &VectorF) -> Result<VectorF> {
        self.check_compatible(other)?;
        let f = self.field;
        Ok(VectorF {
            field: f,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(&a, &b)| f.add(a, b))
                .collect(),
        })
    }

    pub fn sub(&self, other: &VectorF) -> Result<VectorF> {
        self.check_compatible(other)?;
        let f = self.field;
        Ok(VectorF {
            field: f,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(&a, &b)| f.sub(a, b))
                .collect(),
        })
    }

    pub fn scale(&self, c: u8) -> VectorF {
        let f = self.field;
        VectorF {
            field: f,
            entries: self.entries.iter().map(|&a| f.mul(a, c)).collect(),
        }
    }

    /// Render as a combination of unit vectors, e.g. `e1+2e3`; `0` if zero.
    pub fn symbolic(&self) -> String {
        let mut terms = Vec::new();
        for (i, &c) in self.entries.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if c == 1 {
                terms.push(format!("e{}", i + 1));
            } else {
                terms.push(format!("{}e{}", c, i + 1));
            }
        }
        if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join("+")
        }
    }
}

impl fmt::Display for VectorF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "]")
    }
}

/// A dense row-major matrix over GF(p).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MatrixF {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<u8>,
}

impl MatrixF {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        MatrixF {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn from_fn(
        field: PrimeField,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> u8,
    ) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                let v = f(r, c);
                debug_assert!(v < field.modulus());
                data.push(v);
            }
        }
        MatrixF {
            field,
            rows,
            cols,
            data,
        }
    }

    pub fn from_int_rows(field: PrimeField, rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch {
                    left: cols,
                    right: r.len(),
                });
            }
        }
        let data = rows
            .iter()
            .flat_map(|r| r.iter().map(|&v| field.reduce(v)))
            .collect();
        Ok(MatrixF {
            field,
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub fn from_rows(field: PrimeField, cols: usize, rows: &[VectorF]) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.field() != field {
                return Err(Error::FieldMismatch {
                    left: field.modulus(),
                    right: r.field().modulus(),
                });
            }
            if r.len() != cols {
                return Err(Error::DimensionMismatch {
                    left: cols,
                    right: r.len(),
                });
            }
            data.extend_from_slice(r.entries());
        }
        Ok(MatrixF {
            field,
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u8 {
        self.data[r * self.cols + c]
    }

    pub fn scalar_at(&self, r: usize, c: usize) -> Scalar {
        self.field.scalar(self.get(r, c) as i64)
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u8) {
        debug_assert!(v < self.field.modulus());
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> VectorF {
        VectorF {
            field: self.field,
            entries: self.data[r * self.cols..(r + 1) * self.cols].to_vec(),
        }
    }

    pub fn row_slice(&self, r: usize) -> &[u8] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn rows_iter(&self) -> impl Iterator<Item = VectorF> + '_ {
        (0..self.rows).map(|r| self.row(r))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    fn check_same_shape(&self, other: &MatrixF) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch {
                left: self.field.modulus(),
                right: other.field.modulus(),
            });
        }
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                left: self.rows * self.cols,
                right: other.rows * other.cols,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &MatrixF) -> Result<MatrixF> {
        self.check_same_shape(other)?;
        let f = self.field;
        Ok(MatrixF {
            field: f,
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| f.add(a, b))
                .collect(),
        })
    }

    pub fn sub(&self, other: &MatrixF) -> Result<MatrixF> {
        self.check_same_shape(other)?;
        let f = self.field;
        Ok(MatrixF {
            field: f,
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| f.sub(a, b))
                .collect(),
        })
    }

    pub fn scale(&self, c: u8) -> MatrixF {
        let f = self.field;
        MatrixF {
            field: f,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&a| f.mul(a, c)).collect(),
        }
    }

    /// `self += c * other`, same shape required.
    pub(crate) fn add_scaled_in_place(&mut self, other: &MatrixF, c: u8) {
        debug_assert!(self.check_same_shape(other).is_ok());
        let f = self.field;
        for (a, &b) in self.data.iter_mut().zip(&other.data) {
            *a = f.add(*a, f.mul(c, b));
        }
    }

    pub fn mul(&self, other: &MatrixF) -> Result<MatrixF> {
        if self.field != other.field {
            return Err(Error::FieldMismatch {
                left: self.field.modulus(),
                right: other.field.modulus(),
            });
        }
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                left: self.cols,
                right: other.rows,
            });
        }
        let f = self.field;
        let p = f.modulus() as u32;
        let mut out = MatrixF::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k) as u32;
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let cur = out.data[i * other.cols + j] as u32;
                    out.data[i * other.cols + j] =
                        ((cur + a * other.get(k, j) as u32) % p) as u8;
                }
            }
        }
        Ok(out)
    }

    /// `self * v` with `v` a column vector.
    pub fn mul_vec(&self, v: &VectorF) -> Result<VectorF> {
        if self.field != v.field() {
            return Err(Error::FieldMismatch {
                left: self.field.modulus(),
                right: v.field().modulus(),
            });
        }
        if self.cols != v.len() {
            return Err(Error::DimensionMismatch {
                left: self.cols,
                right: v.len(),
            });
        }
        let f = self.field;
        let p = f.modulus() as u32;
        let mut out = vec![0u8; self.rows];
        for (i, o) in out.iter_mut().enumerate() {
            let mut acc = 0u32;
            for k in 0..self.cols {
                acc = (acc + self.get(i, k) as u32 * v.entries[k] as u32) % p;
            }
            *o = acc as u8;
        }
        Ok(VectorF {
            field: f,
            entries: out,
        })
    }

    pub fn transpose(&self) -> MatrixF {
        let mut out = MatrixF::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.data[c * self.rows + r] = self.get(r, c);
            }
        }
        out
    }

    pub fn pow(&self, e: usize) -> Result<MatrixF> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let mut acc = MatrixF::identity(self.field, self.rows);
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    pub fn det(&self) -> Result<u8> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let f = self.field;
        let n = self.rows;
        let mut m = self.data.clone();
        let mut det = 1u8;
        for col in 0..n {
            let pivot = (col..n).find(|&r| m[r * n + col] != 0);
            let Some(pr) = pivot else {
                return Ok(0);
            };
            if pr != col {
                for c in 0..n {
                    m.swap(pr * n + c, col * n + c);
                }
                det = f.neg(det);
            }
            let pv = m[col * n + col];
            det = f.mul(det, pv);
            let pinv = f.inv(pv).expect("pivot is nonzero");
            for r in (col + 1)..n {
                let factor = f.mul(m[r * n + col], pinv);
                if factor == 0 {
                    continue;
                }
                for c in col..n {
                    let sub = f.mul(factor, m[col * n + c]);
                    m[r * n + c] = f.sub(m[r * n + c], sub);
                }
            }
        }
        Ok(det)
    }

    pub fn rank(&self) -> usize {
        self.rref().nonzero_row_count()
    }

    pub fn inverse(&self) -> Result<Option<MatrixF>> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let f = self.field;
        // eliminate on [self | I]
        let mut aug = MatrixF::zeros(f, n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self.get(r, c));
            }
            aug.set(r, n + r, 1);
        }
        let red = aug.rref();
        for i in 0..n {
            if red.get(i, i) != 1 {
                return Ok(None);
            }
        }
        let mut inv = MatrixF::zeros(f, n, n);
        for r in 0..n {
            for c in 0..n {
                inv.set(r, c, red.get(r, n + c));
            }
        }
        Ok(Some(inv))
    }

    fn nonzero_row_count(&self) -> usize {
        (0..self.rows)
            .filter(|&r| self.row_slice(r).iter().any(|&v| v != 0))
            .count()
    }

    /// Canonical reduced row echelon form. Row space is preserved; for a
    /// given row space the output is unique. Zero rows sink to the bottom.
    pub fn rref(&self) -> MatrixF {
        if self.field.modulus() == 2 && self.cols <= 64 {
            let packed: Vec<u64> = (0..self.rows)
                .map(|r| gf2::pack_row(self.row_slice(r)))
                .collect();
            let reduced = gf2::rref_packed(packed);
            let mut out = MatrixF::zeros(self.field, self.rows, self.cols);
            for (r, &bits) in reduced.iter().enumerate() {
                let row = gf2::unpack_row(bits, self.cols);
                out.data[r * self.cols..(r + 1) * self.cols].copy_from_slice(&row);
            }
            out
        } else {
            self.rref_generic()
        }
    }

    /// Generic elimination path, independent of the bit-packed GF(2)
    /// kernel; `rref` must match it bit for bit.
    pub fn rref_generic(&self) -> MatrixF {
        let f = self.field;
        let (rows, cols) = (self.rows, self.cols);
        let mut m = self.data.clone();
        let mut pivot_row = 0usize;
        for col in 0..cols {
            if pivot_row == rows {
                break;
            }
            let Some(pr) = (pivot_row..rows).find(|&r| m[r * cols + col] != 0) else {
                continue;
            };
            if pr != pivot_row {
                for c in 0..cols {
                    m.swap(pr * cols + c, pivot_row * cols + c);
                }
            }
            let pinv = f.inv(m[pivot_row * cols + col]).expect("pivot is nonzero");
            if pinv != 1 {
                for c in col..cols {
                    m[pivot_row * cols + c] = f.mul(m[pivot_row * cols + c], pinv);
                }
            }
            for r in 0..rows {
                if r == pivot_row {
                    continue;
                }
                let factor = m[r * cols + col];
                if factor == 0 {
                    continue;
                }
                for c in col..cols {
                    let sub = f.mul(factor, m[pivot_row * cols + c]);
                    m[r * cols + c] = f.sub(m[r * cols + c], sub);
                }
            }
            pivot_row += 1;
        }
        MatrixF {
            field: f,
            rows,
            cols,
            data: m,
        }
    }
}

impl fmt::Display for MatrixF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            writeln!(f, "{}", self.row(r))?;
        }
        Ok(())
    }
}

/// Canonical reduced row echelon form of a matrix (free function mirror).
pub fn rref(m: &MatrixF) -> MatrixF {
    m.rref()
}

/// One solution of `m * u = b`, if any, via the reduced augmented system.
pub fn solve(m: &MatrixF, b: &VectorF) -> Result<Option<VectorF>> {
    if m.field() != b.field() {
        return Err(Error::FieldMismatch {
            left: m.field().modulus(),
            right: b.field().modulus(),
        });
    }
    if m.nrows() != b.len() {
        return Err(Error::DimensionMismatch {
            left: m.nrows(),
            right: b.len(),
        });
    }
    let (rows, cols) = (m.nrows(), m.ncols());
    let mut aug = MatrixF::zeros(m.field(), rows, cols + 1);
    for r in 0..rows {
        for c in 0..cols {
            aug.set(r, c, m.get(r, c));
        }
        aug.set(r, cols, b.entries()[r]);
    }
    let red = aug.rref();
    let mut u = vec![0u8; cols];
    for r in 0..rows {
        let Some(pivot) = (0..=cols).find(|&c| red.get(r, c) != 0) else {
            continue;
        };
        if pivot == cols {
            return Ok(None); // inconsistent row 0 ... 0 | 1
        }
        u[pivot] = red.get(r, cols);
    }
    let sol = VectorF::new(m.field(), u);
    debug_assert_eq!(&m.mul_vec(&sol)?, b);
    Ok(Some(sol))
}

/// The null space of `m` as a canonical subspace of GF(p)^cols.
pub fn kernel(m: &MatrixF) -> Subspace {
    let f = m.field();
    let red = m.rref();
    let cols = m.ncols();
    let mut pivots = Vec::new();
    let mut col = 0usize;
    for r in 0..red.nrows() {
        while col < cols && red.get(r, col) == 0 {
            col += 1;
        }
        if col == cols {
            break;
        }
        pivots.push((r, col));
        col += 1;
    }
    let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
    let mut basis = Vec::new();
    for j in 0..cols {
        if pivot_cols.contains(&j) {
            continue;
        }
        let mut v = vec![0u8; cols];
        v[j] = 1;
        for &(r, pc) in &pivots {
            v[pc] = f.neg(red.get(r, j));
        }
        basis.push(VectorF::new(f, v));
    }
    Subspace::from_rows(f, cols, &basis).expect("kernel rows are well formed")
}

/// The column space of `m` as a canonical subspace of GF(p)^rows.
pub fn image(m: &MatrixF) -> Subspace {
    let t = m.transpose();
    let rows: Vec<VectorF> = t.rows_iter().collect();
    Subspace::from_rows(m.field(), m.nrows(), &rows).expect("image rows are well formed")
}

/// A subspace of GF(p)^n in canonical form: the basis matrix is in reduced
/// row echelon form with zero rows pruned, one basis vector per row.
///
/// Two values are equal as sets exactly when they are equal entrywise, so
/// `==` and `Hash` treat subspaces as sets. The zero subspace has a 0-row
/// basis and is valid everywhere.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    field: PrimeField,
    ambient: usize,
    basis: MatrixF,
}

impl Subspace {
    pub fn zero(field: PrimeField, ambient: usize) -> Self {
        Subspace {
            field,
            ambient,
            basis: MatrixF::zeros(field, 0, ambient),
        }
    }

    pub fn full(field: PrimeField, ambient: usize) -> Self {
        Subspace {
            field,
            ambient,
            basis: MatrixF::identity(field, ambient),
        }
    }

    /// Span of the given vectors, canonicalized.
    pub fn from_rows(field: PrimeField, ambient: usize, rows: &[VectorF]) -> Result<Self> {
        for r in rows {
            if r.field() != field {
                return Err(Error::FieldMismatch {
                    left: field.modulus(),
                    right: r.field().modulus(),
                });
            }
            if r.len() != ambient {
                return Err(Error::AmbientMismatch {
                    left: ambient,
                    right: r.len(),
                });
            }
        }
        let m = MatrixF::from_rows(field, ambient, rows)?;
        Ok(Self::from_matrix(&m))
    }

    /// Span of the rows of `m`, canonicalized.
    pub fn from_matrix(m: &MatrixF) -> Self {
        let red = m.rref();
        let dim = red.nonzero_row_count();
        let mut basis = MatrixF::zeros(m.field(), dim, m.ncols());
        for r in 0..dim {
            for c in 0..m.ncols() {
                basis.set(r, c, red.get(r, c));
            }
        }
        Subspace {
            field: m.field(),
            ambient: m.ncols(),
            basis,
        }
    }

    /// Internal: rows are already canonical RREF with no zero rows.
    pub(crate) fn from_canonical_basis(basis: MatrixF) -> Self {
        debug_assert_eq!(basis, basis.rref());
        Subspace {
            field: basis.field(),
            ambient: basis.ncols(),
            basis,
        }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.nrows()
    }

    pub fn basis(&self) -> &MatrixF {
        &self.basis
    }

    pub fn basis_rows(&self) -> impl Iterator<Item = VectorF> + '_ {
        self.basis.rows_iter()
    }

    pub fn is_zero_space(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full_space(&self) -> bool {
        self.dim() == self.ambient
    }

    /// Pivot column of each basis row. Strictly increasing.
    pub fn pivots(&self) -> Vec<usize> {
        (0..self.dim())
            .map(|r| {
                (0..self.ambient)
                    .find(|&c| self.basis.get(r, c) != 0)
                    .expect("basis rows are nonzero")
            })
            .collect()
    }

    fn check_vector(&self, v: &VectorF) -> Result<()> {
        if v.field() != self.field {
            return Err(Error::FieldMismatch {
                left: self.field.modulus(),
                right: v.field().modulus(),
            });
        }
        if v.len() != self.ambient {
            return Err(Error::AmbientMismatch {
                left: self.ambient,
                right: v.len(),
            });
        }
        Ok(())
    }

    fn check_ambient(&self, other: &Subspace) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch {
                left: self.field.modulus(),
                right: other.field.modulus(),
            });
        }
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch {
                left: self.ambient,
                right: other.ambient,
            });
        }
        Ok(())
    }

    /// Residual of `v` after reducing by the basis; zero iff `v` lies here.
    pub fn reduce(&self, v: &VectorF) -> Result<VectorF> {
        self.check_vector(v)?;
        let f = self.field;
        let mut res = v.entries().to_vec();
        for (r, pc) in self.pivots().into_iter().enumerate() {
            let c = res[pc];
            if c == 0 {
                continue;
            }
            for (j, rj) in res.iter_mut().enumerate() {
                let sub = f.mul(c, self.basis.get(r, j));
                *rj = f.sub(*rj, sub);
            }
        }
        Ok(VectorF::new(f, res))
    }

    pub fn contains(&self, v: &VectorF) -> Result<bool> {
        Ok(self.reduce(v)?.is_zero())
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> Result<bool> {
        self.check_ambient(other)?;
        for row in self.basis_rows() {
            if !other.contains(&row)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Coordinates of `v` with respect to the RREF basis, if `v` lies here.
    /// For an RREF basis the coordinates are just the pivot entries.
    pub fn coords(&self, v: &VectorF) -> Result<Option<Vec<u8>>> {
        self.check_vector(v)?;
        if !self.contains(v)? {
            return Ok(None);
        }
        Ok(Some(
            self.pivots().into_iter().map(|pc| v.entries()[pc]).collect(),
        ))
    }

    /// Linear combination of the basis rows with the given coordinates.
    pub fn lift(&self, coords: &[u8]) -> VectorF {
        assert_eq!(coords.len(), self.dim());
        let f = self.field;
        let mut out = vec![0u8; self.ambient];
        for (r, &c) in coords.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (j, oj) in out.iter_mut().enumerate() {
                *oj = f.add(*oj, f.mul(c, self.basis.get(r, j)));
            }
        }
        VectorF::new(f, out)
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        let rows: Vec<VectorF> = self.basis_rows().chain(other.basis_rows()).collect();
        Subspace::from_rows(self.field, self.ambient, &rows)
    }

    /// Intersection via the Zassenhaus block method: row reduce
    /// `[A | A; B | 0]`; rows whose left half vanished span the meet.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        let n = self.ambient;
        let f = self.field;
        let d1 = self.dim();
        let d2 = other.dim();
        let mut block = MatrixF::zeros(f, d1 + d2, 2 * n);
        for r in 0..d1 {
            for c in 0..n {
                let v = self.basis.get(r, c);
                block.set(r, c, v);
                block.set(r, n + c, v);
            }
        }
        for r in 0..d2 {
            for c in 0..n {
                block.set(d1 + r, c, other.basis.get(r, c));
            }
        }
        let red = block.rref();
        let mut rows = Vec::new();
        for r in 0..red.nrows() {
            let left_zero = (0..n).all(|c| red.get(r, c) == 0);
            if left_zero {
                let right: Vec<u8> = (0..n).map(|c| red.get(r, n + c)).collect();
                if right.iter().any(|&v| v != 0) {
                    rows.push(VectorF::new(f, right));
                }
            }
        }
        Subspace::from_rows(f, n, &rows)
    }

    /// Number of vectors in the subspace, `p^dim`; saturates at `u128::MAX`.
    pub fn vector_count(&self) -> u128 {
        (self.field.modulus() as u128)
            .checked_pow(self.dim() as u32)
            .unwrap_or(u128::MAX)
    }

    /// All `p^dim` vectors, each exactly once, in lexicographic order of the
    /// coordinate tuple with respect to the RREF basis (first coordinate most
    /// significant). Deterministic, so sweeps built on it are reproducible.
    pub fn enumerate_vectors(&self, cap: u64) -> Result<VectorEnumerator<'_>> {
        let needed = self.vector_count();
        if needed > cap as u128 {
            return Err(Error::EnumerationTooLarge {
                what: "subspace vector",
                needed,
                cap,
            });
        }
        Ok(VectorEnumerator {
            space: self,
            digits: vec![0; self.dim()],
            done: false,
        })
    }

    /// First vector of `self` (in `enumerate_vectors` order) that is not in
    /// `bad`, computed greedily without enumerating. `None` iff `self ⊆ bad`.
    pub(crate) fn min_lex_not_in(&self, bad: &Subspace) -> Result<Option<VectorF>> {
        self.check_ambient(bad)?;
        let d = self.dim();
        let f = self.field;
        let basis_rows: Vec<VectorF> = self.basis_rows().collect();
        // tail_free[j] = some basis row with index >= j lies outside `bad`
        let mut tail_free = vec![false; d + 1];
        for j in (0..d).rev() {
            tail_free[j] = tail_free[j + 1] || !bad.contains(&basis_rows[j])?;
        }
        if !tail_free.first().copied().unwrap_or(false) {
            return Ok(None);
        }
        let mut current = VectorF::zero(f, self.ambient);
        for (j, row) in basis_rows.iter().enumerate() {
            let mut chosen = None;
            for c in f.elements() {
                let candidate = current.add(&row.scale(c))?;
                let feasible = tail_free[j + 1] || !bad.contains(&candidate)?;
                if feasible {
                    chosen = Some(candidate);
                    break;
                }
            }
            current = chosen.expect("feasibility invariant");
        }
        debug_assert!(!bad.contains(&current)?);
        Ok(Some(current))
    }
}

impl fmt::Display for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.dim() == 0 {
            return write!(f, "0");
        }
        write!(f, "span{{")?;
        for (i, row) in self.basis_rows().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", row.symbolic())?;
        }
        write!(f, "}}")
    }
}

/// Iterator over all vectors of a subspace in deterministic order.
#[derive(Debug)]
pub struct VectorEnumerator<'a> {
    space: &'a Subspace,
    digits: Vec<u8>,
    done: bool,
}

impl Iterator for VectorEnumerator<'_> {
    type Item = VectorF;

    fn next(&mut self) -> Option<VectorF> {
        if self.done {
            return None;
        }
        let out = self.space.lift(&self.digits);
        // odometer with the last coordinate fastest
        let p = self.space.field().modulus();
        let mut i = self.digits.len();
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.digits[i] + 1 < p {
                self.digits[i] += 1;
                for d in &mut self.digits[i + 1..] {
                    *d = 0;
                }
                break;
            }
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u16) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    /// f = diag(0, N3) over GF(2), the 4x4 workhorse.
    fn shift_block_matrix() -> MatrixF {
        MatrixF::from_int_rows(
            gf(2),
            &[
                vec![0, 0, 0, 0],
                vec![0, 0, 0, 0],
                vec![0, 1, 0, 0],
                vec![0, 0, 1, 0],
            ],
        )
        .unwrap()
    }

    #[test]
    fn rref_fixed_points() {
        let f = gf(5);
        let id = MatrixF::identity(f, 4);
        assert_eq!(id.rref(), id);
        let z = MatrixF::zeros(f, 3, 4);
        assert_eq!(z.rref(), z);
        assert_eq!(Subspace::from_matrix(&z).dim(), 0);
    }

    #[test]
    fn rref_of_already_canonical_rows() {
        // rows {e1+e3, e4} over GF(2): already canonical, hand row-reduction
        // leaves them unchanged.
        let f = gf(2);
        let m = MatrixF::from_int_rows(f, &[vec![1, 0, 1, 0], vec![0, 0, 0, 1]]).unwrap();
        assert_eq!(m.rref(), m);
    }

    #[test]
    fn kernel_image_of_shift_block() {
        let m = shift_block_matrix();
        let f = m.field();
        // oracle: solve f x = 0 by hand row-reduction -> x2 = x3 = 0
        let k = kernel(&m);
        let expected_k = Subspace::from_rows(
            f,
            4,
            &[VectorF::from_ints(f, &[1, 0, 0, 0]), VectorF::from_ints(f, &[0, 0, 0, 1])],
        )
        .unwrap();
        assert_eq!(k, expected_k);
        // oracle: columns of f, row-reduced -> span{e3, e4}
        let im = image(&m);
        let expected_im = Subspace::from_rows(
            f,
            4,
            &[VectorF::from_ints(f, &[0, 0, 1, 0]), VectorF::from_ints(f, &[0, 0, 0, 1])],
        )
        .unwrap();
        assert_eq!(im, expected_im);
        assert_eq!(k.dim() + im.dim(), 4);
    }

    #[test]
    fn kernel_of_identity_is_zero() {
        let f = gf(3);
        let id = MatrixF::identity(f, 3);
        assert!(kernel(&id).is_zero_space());
        assert!(image(&id).is_full_space());
    }

    #[test]
    fn sum_and_intersect_basics() {
        let f = gf(2);
        let z = Subspace::from_rows(
            f,
            4,
            &[VectorF::from_ints(f, &[1, 0, 1, 0]), VectorF::from_ints(f, &[0, 0, 0, 1])],
        )
        .unwrap();
        // Z ∩ <e1> = 0
        let e1 = Subspace::from_rows(f, 4, &[VectorF::unit(f, 4, 0)]).unwrap();
        assert!(z.intersect(&e1).unwrap().is_zero_space());
        // Z ∩ <e2>_f = <e4>, with <e2>_f = span{e2,e3,e4}
        let v2 = Subspace::from_rows(
            f,
            4,
            &[
                VectorF::unit(f, 4, 1),
                VectorF::unit(f, 4, 2),
                VectorF::unit(f, 4, 3),
            ],
        )
        .unwrap();
        let meet = z.intersect(&v2).unwrap();
        let e4 = Subspace::from_rows(f, 4, &[VectorF::unit(f, 4, 3)]).unwrap();
        assert_eq!(meet, e4);
        // idempotence
        assert_eq!(z.sum(&z).unwrap(), z);
        assert_eq!(z.intersect(&z).unwrap(), z);
    }

    #[test]
    fn membership_examples() {
        let f = gf(2);
        let z = Subspace::from_rows(
            f,
            4,
            &[VectorF::from_ints(f, &[1, 0, 1, 0]), VectorF::from_ints(f, &[0, 0, 0, 1])],
        )
        .unwrap();
        let e1 = VectorF::unit(f, 4, 0);
        assert!(!z.contains(&e1).unwrap());
        let z_plus_e4 = VectorF::from_ints(f, &[1, 0, 1, 1]);
        assert!(z.contains(&z_plus_e4).unwrap());
        let zero = Subspace::zero(f, 4);
        assert!(zero.is_subspace_of(&z).unwrap());
        assert!(!z.is_subspace_of(&zero).unwrap());
    }

    #[test]
    fn set_equality_is_structural_equality() {
        // different spanning sets of the same subspace compare equal
        let f = gf(3);
        let a = Subspace::from_rows(
            f,
            3,
            &[VectorF::from_ints(f, &[1, 2, 0]), VectorF::from_ints(f, &[0, 1, 1])],
        )
        .unwrap();
        let b = Subspace::from_rows(
            f,
            3,
            &[
                VectorF::from_ints(f, &[1, 0, 1]), // = first - 2 * second
                VectorF::from_ints(f, &[2, 2, 1]), // another combination
            ],
        )
        .unwrap();
        assert_eq!(a, b);
        let mut set = std::collections::HashSet::new();
        set.insert(a);
        assert!(set.contains(&b));
    }

    #[test]
    fn ambient_mismatch_is_reported() {
        let f = gf(2);
        let a = Subspace::full(f, 3);
        let b = Subspace::full(f, 4);
        assert!(matches!(
            a.sum(&b),
            Err(Error::AmbientMismatch { left: 3, right: 4 })
        ));
        let v = VectorF::zero(f, 4);
        assert!(matches!(
            a.contains(&v),
            Err(Error::AmbientMismatch { .. })
        ));
    }

    #[test]
    fn enumerate_vectors_order_and_content() {
        let f = gf(2);
        let z = Subspace::from_rows(
            f,
            4,
            &[VectorF::from_ints(f, &[1, 0, 1, 0]), VectorF::from_ints(f, &[0, 0, 0, 1])],
        )
        .unwrap();
        let got: Vec<VectorF> = z.enumerate_vectors(1 << 20).unwrap().collect();
        let expect = vec![
            VectorF::from_ints(f, &[0, 0, 0, 0]),
            VectorF::from_ints(f, &[0, 0, 0, 1]),
            VectorF::from_ints(f, &[1, 0, 1, 0]),
            VectorF::from_ints(f, &[1, 0, 1, 1]),
        ];
        assert_eq!(got, expect);

        let zero = Subspace::zero(f, 4);
        let got: Vec<VectorF> = zero.enumerate_vectors(16).unwrap().collect();
        assert_eq!(got, vec![VectorF::zero(f, 4)]);
    }

    #[test]
    fn enumerate_vectors_respects_cap() {
        let f = gf(2);
        let big = Subspace::full(f, 21);
        match big.enumerate_vectors(1 << 20) {
            Err(Error::EnumerationTooLarge { needed, cap, .. }) => {
                assert_eq!(needed, 1 << 21);
                assert_eq!(cap, 1 << 20);
            }
            other => panic!("expected cap error, got {other:?}"),
        }
    }

    #[test]
    fn min_lex_not_in_matches_enumeration() {
        // brute-force oracle over small spaces and fields
        for p in [2u16, 3] {
            let f = gf(p);
            let n = 3;
            let full = Subspace::full(f, n);
            let all: Vec<Subspace> = crate::lattice::enumerate_all_subspaces(f, n, 10_000)
                .unwrap();
            for s in &all {
                for bad in &all {
                    let expect = s
                        .enumerate_vectors(1 << 20)
                        .unwrap()
                        .find(|v| !bad.contains(v).unwrap());
                    let got = s.min_lex_not_in(bad).unwrap();
                    assert_eq!(got, expect, "s={s} bad={bad}");
                }
                let got = s.min_lex_not_in(&full).unwrap();
                assert_eq!(got, None);
            }
        }
    }

    #[test]
    fn packed_rref_matches_generic() {
        // exhaustive over all 3x3 GF(2) matrices
        let f = gf(2);
        for code in 0u32..512 {
            let m = MatrixF::from_fn(f, 3, 3, |r, c| ((code >> (r * 3 + c)) & 1) as u8);
            assert_eq!(m.rref(), m.rref_generic(), "code={code}");
        }
    }

    #[test]
    fn det_and_inverse() {
        let f = gf(5);
        let m = MatrixF::from_int_rows(f, &[vec![1, 2], vec![3, 4]]).unwrap();
        // det = 4 - 6 = -2 = 3 mod 5
        assert_eq!(m.det().unwrap(), 3);
        let inv = m.inverse().unwrap().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), MatrixF::identity(f, 2));
        let singular = MatrixF::from_int_rows(f, &[vec![1, 2], vec![2, 4]]).unwrap();
        assert_eq!(singular.det().unwrap(), 0);
        assert!(singular.inverse().unwrap().is_none());
    }

    #[test]
    fn coords_roundtrip() {
        let f = gf(3);
        let s = Subspace::from_rows(
            f,
            4,
            &[VectorF::from_ints(f, &[1, 0, 2, 0]), VectorF::from_ints(f, &[0, 1, 1, 0])],
        )
        .unwrap();
        for v in s.enumerate_vectors(1 << 10).unwrap() {
            let c = s.coords(&v).unwrap().unwrap();
            assert_eq!(s.lift(&c), v);
        }
        let outside = VectorF::unit(f, 4, 3);
        assert_eq!(s.coords(&outside).unwrap(), None);
    }
}
