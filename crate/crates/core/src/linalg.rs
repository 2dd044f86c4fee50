//! Exact linear algebra over [`Scalar`]s.
//!
//! Subspaces are always stored in reduced row echelon form with rows ordered by
//! pivot column, so two subspaces are equal exactly when their bases are equal.
//! Pivoting is deterministic: a row's pivot is its first nonzero entry.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalars::{FieldMode, Scalar};

/// Sparse vector with strictly increasing indices and no stored zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct SparseVec {
    entries: Vec<(usize, Scalar)>,
}

impl SparseVec {
    pub fn new() -> Self {
        SparseVec::default()
    }

    /// Builds from arbitrary `(index, value)` pairs, summing duplicates.
    pub fn from_pairs(mut pairs: Vec<(usize, Scalar)>) -> Self {
        pairs.sort_by_key(|(i, _)| *i);
        let mut entries: Vec<(usize, Scalar)> = Vec::with_capacity(pairs.len());
        for (i, v) in pairs {
            match entries.last_mut() {
                Some((j, w)) if *j == i => *w = &*w + &v,
                _ => entries.push((i, v)),
            }
        }
        entries.retain(|(_, v)| !v.is_zero());
        SparseVec { entries }
    }

    pub fn from_dense(values: &[Scalar]) -> Self {
        SparseVec {
            entries: values
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(i, v)| (i, v.clone()))
                .collect(),
        }
    }

    pub fn unit(i: usize, mode: FieldMode) -> Self {
        SparseVec {
            entries: vec![(i, Scalar::one(mode))],
        }
    }

    pub fn to_dense(&self, len: usize, mode: FieldMode) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(mode); len];
        for (i, v) in &self.entries {
            out[*i] = v.clone();
        }
        out
    }

    pub fn entries(&self) -> &[(usize, Scalar)] {
        &self.entries
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Scalar)> {
        self.entries.iter().map(|(i, v)| (*i, v))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, i: usize) -> Option<&Scalar> {
        self.entries
            .binary_search_by_key(&i, |(j, _)| *j)
            .ok()
            .map(|k| &self.entries[k].1)
    }

    pub fn leading(&self) -> Option<(usize, &Scalar)> {
        self.entries.first().map(|(i, v)| (*i, v))
    }

    pub fn max_index(&self) -> Option<usize> {
        self.entries.last().map(|(i, _)| *i)
    }

    pub fn scale(&self, c: &Scalar) -> SparseVec {
        if c.is_zero() {
            return SparseVec::new();
        }
        SparseVec {
            entries: self.entries.iter().map(|(i, v)| (*i, v * c)).collect(),
        }
    }

    /// `self + c * other`.
    pub fn add_scaled(&self, c: &Scalar, other: &SparseVec) -> SparseVec {
        if c.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut a, mut b) = (
            self.entries.iter().peekable(),
            other.entries.iter().peekable(),
        );
        loop {
            match (a.peek(), b.peek()) {
                (Some((i, x)), Some((j, y))) => {
                    if i < j {
                        out.push((*i, x.clone()));
                        a.next();
                    } else if j < i {
                        out.push((*j, c * y));
                        b.next();
                    } else {
                        let s = x + &(c * y);
                        if !s.is_zero() {
                            out.push((*i, s));
                        }
                        a.next();
                        b.next();
                    }
                }
                (Some((i, x)), None) => {
                    out.push((*i, x.clone()));
                    a.next();
                }
                (None, Some((j, y))) => {
                    out.push((*j, c * y));
                    b.next();
                }
                (None, None) => break,
            }
        }
        SparseVec { entries: out }
    }

    pub fn sub(&self, other: &SparseVec, mode: FieldMode) -> SparseVec {
        self.add_scaled(&Scalar::from_int(mode, -1), other)
    }

    /// Keeps the coordinates listed in `coords`, renumbered by their position there.
    pub fn restrict(&self, coords: &[usize]) -> SparseVec {
        SparseVec::from_pairs(
            coords
                .iter()
                .enumerate()
                .filter_map(|(k, &c)| self.get(c).map(|v| (k, v.clone())))
                .collect(),
        )
    }

    /// Renumbers coordinates through `map`.
    pub fn reindex(&self, map: impl Fn(usize) -> usize) -> SparseVec {
        SparseVec::from_pairs(
            self.entries
                .iter()
                .map(|(i, v)| (map(*i), v.clone()))
                .collect(),
        )
    }
}

/// Dense matrix. Column `j` of an operator matrix holds the image of basis vector `j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    mode: FieldMode,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(mode: FieldMode, rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            mode,
            data: vec![Scalar::zero(mode); rows * cols],
        }
    }

    pub fn identity(mode: FieldMode, n: usize) -> Self {
        let mut m = Matrix::zeros(mode, n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one(mode));
        }
        m
    }

    pub fn from_rows(mode: FieldMode, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != c {
                return Err(Error::Dimension(format!(
                    "row {i} has {} entries, expected {c}",
                    row.len()
                )));
            }
            for v in row {
                if v.mode() != mode {
                    return Err(Error::ModeMismatch(mode.to_string(), v.mode().to_string()));
                }
                data.push(v);
            }
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            mode,
            data,
        })
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(mode: FieldMode, rows: usize, columns: &[SparseVec]) -> Self {
        let mut m = Matrix::zeros(mode, rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            for (i, v) in col.iter() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn mode(&self) -> FieldMode {
        self.mode
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> SparseVec {
        SparseVec::from_dense(&self.data[i * self.cols..(i + 1) * self.cols])
    }

    pub fn column(&self, j: usize) -> SparseVec {
        SparseVec::from_pairs(
            (0..self.rows)
                .map(|i| (i, self.get(i, j).clone()))
                .collect(),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        *self == Matrix::identity(self.mode, self.rows)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.mode, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    fn check_same_shape(&self, other: &Matrix) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Dimension(format!(
                "{}x{} versus {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.check_same_shape(other)?;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.checked_add(b))
            .collect::<Result<_>>()?;
        Ok(Matrix {
            data,
            ..self.clone()
        })
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.check_same_shape(other)?;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.checked_sub(b))
            .collect::<Result<_>>()?;
        Ok(Matrix {
            data,
            ..self.clone()
        })
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        Matrix {
            data: self.data.iter().map(|a| a * c).collect(),
            ..self.clone()
        }
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        if self.mode != other.mode {
            return Err(Error::ModeMismatch(
                self.mode.to_string(),
                other.mode.to_string(),
            ));
        }
        let mut out = Matrix::zeros(self.mode, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j) + &(a * b);
                        out.set(i, j, v);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Matrix-vector product on a sparse vector.
    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        let mut pairs = Vec::new();
        for (j, x) in v.iter() {
            for i in 0..self.rows {
                let a = self.get(i, j);
                if !a.is_zero() {
                    pairs.push((i, a * x));
                }
            }
        }
        SparseVec::from_pairs(pairs)
    }

    /// Non-negative integer power.
    pub fn pow(&self, e: u32) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::Dimension("power of a non-square matrix".into()));
        }
        let mut acc = Matrix::identity(self.mode, self.rows);
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    pub fn rank(&self) -> usize {
        row_space(self.cols, self.mode, (0..self.rows).map(|i| self.row(i))).dim()
    }

    /// Exact inverse, or `None` when the matrix is singular.
    pub fn inverse(&self) -> Result<Option<Matrix>> {
        if !self.is_square() {
            return Err(Error::Dimension("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let one = Scalar::one(self.mode);
        let augmented = (0..n).map(|i| {
            let mut pairs: Vec<(usize, Scalar)> =
                self.row(i).iter().map(|(j, v)| (j, v.clone())).collect();
            pairs.push((n + i, one.clone()));
            SparseVec::from_pairs(pairs)
        });
        let rref = row_space(2 * n, self.mode, augmented);
        if rref.dim() != n || rref.pivots().iter().enumerate().any(|(k, &p)| k != p) {
            return Ok(None);
        }
        let mut inv = Matrix::zeros(self.mode, n, n);
        for (i, row) in rref.basis().iter().enumerate() {
            for (j, v) in row.iter() {
                if j >= n {
                    inv.set(i, j - n, v.clone());
                }
            }
        }
        Ok(Some(inv))
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Row-major flattening: entry `(i, j)` goes to coordinate `i * cols + j`.
pub fn flatten(m: &Matrix) -> SparseVec {
    SparseVec::from_dense(&m.data)
}

/// Inverse of [`flatten`].
pub fn unflatten(v: &SparseVec, rows: usize, cols: usize, mode: FieldMode) -> Matrix {
    let mut m = Matrix::zeros(mode, rows, cols);
    for (k, x) in v.iter() {
        m.set(k / cols, k % cols, x.clone());
    }
    m
}

/// Null space of the map whose columns are the images of the standard basis.
pub fn kernel_of_columns(nrows: usize, mode: FieldMode, columns: &[SparseVec]) -> Subspace {
    let mut rows: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); nrows];
    for (j, col) in columns.iter().enumerate() {
        for (i, v) in col.iter() {
            rows[i].push((j, v.clone()));
        }
    }
    kernel_of_rows(
        columns.len(),
        mode,
        rows.into_iter().map(SparseVec::from_pairs),
    )
}

/// A solution of `m x = b` (free variables set to zero), or `None` if inconsistent.
pub fn solve(m: &Matrix, b: &SparseVec) -> Option<SparseVec> {
    let n = m.cols();
    let mut r = RowReducer::new(n + 1, m.mode());
    for i in 0..m.rows() {
        let mut pairs: Vec<(usize, Scalar)> =
            m.row(i).iter().map(|(j, v)| (j, v.clone())).collect();
        if let Some(c) = b.get(i) {
            pairs.push((n, c.clone()));
        }
        r.insert(SparseVec::from_pairs(pairs));
    }
    if r.pivot_row[n].is_some() {
        return None;
    }
    let pairs = r
        .rows
        .iter()
        .filter_map(|row| {
            row.get(n)
                .map(|c| (row.leading().expect("nonzero row").0, c.clone()))
        })
        .collect();
    Some(SparseVec::from_pairs(pairs))
}

/// Incremental Gauss-Jordan elimination. Rows are kept fully reduced, so the
/// accumulated rows always form the reduced echelon basis of their span.
#[derive(Clone, Debug)]
pub struct RowReducer {
    ncols: usize,
    mode: FieldMode,
    rows: Vec<SparseVec>,
    pivot_row: Vec<Option<usize>>,
}

impl RowReducer {
    pub fn new(ncols: usize, mode: FieldMode) -> Self {
        RowReducer {
            ncols,
            mode,
            rows: Vec::new(),
            pivot_row: vec![None; ncols],
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    /// Residual of `v` after elimination against the current rows.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut work = v.clone();
        let hits: Vec<(usize, Scalar)> = work
            .iter()
            .filter_map(|(c, x)| self.pivot_row[c].map(|r| (r, x.clone())))
            .collect();
        for (r, x) in hits {
            work = work.add_scaled(&-&x, &self.rows[r]);
        }
        work
    }

    /// Adds a row; returns `true` if it increased the rank.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        debug_assert!(v.max_index().is_none_or(|m| m < self.ncols));
        let work = self.reduce(&v);
        let Some((p, lead)) = work.leading() else {
            return false;
        };
        let work = work.scale(&lead.inv().expect("nonzero pivot"));
        for row in &mut self.rows {
            if let Some(x) = row.get(p).cloned() {
                *row = row.add_scaled(&-&x, &work);
            }
        }
        self.pivot_row[p] = Some(self.rows.len());
        self.rows.push(work);
        true
    }

    /// The row space in canonical form.
    pub fn into_subspace(self) -> Subspace {
        let mut rows = self.rows;
        rows.sort_by_key(|r| r.leading().map(|(i, _)| i));
        Subspace {
            ambient: self.ncols,
            mode: self.mode,
            basis: rows,
        }
    }

    /// Null space of the accumulated rows, read as linear equations.
    pub fn kernel(&self) -> Subspace {
        let one = Scalar::one(self.mode);
        let free = (0..self.ncols).filter(|&c| self.pivot_row[c].is_none());
        let vectors = free.map(|f| {
            let mut pairs = vec![(f, one.clone())];
            for row in &self.rows {
                if let Some(x) = row.get(f) {
                    let p = row.leading().expect("nonzero row").0;
                    pairs.push((p, -x));
                }
            }
            SparseVec::from_pairs(pairs)
        });
        row_space(self.ncols, self.mode, vectors)
    }
}

/// Canonical span of the given vectors.
pub fn row_space(
    ncols: usize,
    mode: FieldMode,
    vectors: impl IntoIterator<Item = SparseVec>,
) -> Subspace {
    let mut r = RowReducer::new(ncols, mode);
    for v in vectors {
        r.insert(v);
    }
    r.into_subspace()
}

/// Null space of the system whose equations are the given rows.
pub fn kernel_of_rows(
    ncols: usize,
    mode: FieldMode,
    rows: impl IntoIterator<Item = SparseVec>,
) -> Subspace {
    let mut r = RowReducer::new(ncols, mode);
    for v in rows {
        r.insert(v);
    }
    r.kernel()
}

/// Null space of a matrix, in canonical echelon form.
pub fn kernel_basis(m: &Matrix) -> Subspace {
    kernel_of_rows(m.cols(), m.mode(), (0..m.rows()).map(|i| m.row(i)))
}

/// Column space of a matrix, in canonical echelon form.
pub fn image_basis(m: &Matrix) -> Subspace {
    row_space(m.rows(), m.mode(), (0..m.cols()).map(|j| m.column(j)))
}

/// A linear subspace of `F^ambient` held by its reduced echelon basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    mode: FieldMode,
    basis: Vec<SparseVec>,
}

impl Subspace {
    pub fn zero(ambient: usize, mode: FieldMode) -> Self {
        Subspace {
            ambient,
            mode,
            basis: Vec::new(),
        }
    }

    pub fn full(ambient: usize, mode: FieldMode) -> Self {
        Subspace {
            ambient,
            mode,
            basis: (0..ambient).map(|i| SparseVec::unit(i, mode)).collect(),
        }
    }

    pub fn span(
        ambient: usize,
        mode: FieldMode,
        vectors: impl IntoIterator<Item = SparseVec>,
    ) -> Self {
        row_space(ambient, mode, vectors)
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn mode(&self) -> FieldMode {
        self.mode
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[SparseVec] {
        &self.basis
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.basis
            .iter()
            .map(|r| r.leading().expect("nonzero basis row").0)
            .collect()
    }

    fn reducer(&self) -> RowReducer {
        let mut r = RowReducer::new(self.ambient, self.mode);
        for (k, row) in self.basis.iter().enumerate() {
            r.pivot_row[row.leading().expect("nonzero basis row").0] = Some(k);
        }
        r.rows = self.basis.clone();
        r
    }

    /// Residual of `v` modulo this subspace; zero exactly when `v` lies in it.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        self.reducer().reduce(v)
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Index of the first basis vector of `self` that is not in `other`.
    pub fn first_outside(&self, other: &Subspace) -> Option<usize> {
        let r = other.reducer();
        self.basis.iter().position(|v| !r.reduce(v).is_zero())
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.first_outside(other).is_none()
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        row_space(
            self.ambient,
            self.mode,
            self.basis.iter().chain(&other.basis).cloned(),
        )
    }

    /// Image under the coordinate projection onto `coords`, renumbered in order.
    pub fn project(&self, coords: &[usize]) -> Subspace {
        row_space(
            coords.len(),
            self.mode,
            self.basis.iter().map(|v| v.restrict(coords)),
        )
    }

    /// Coordinates of `v` in the echelon basis, or `None` if `v` is outside.
    pub fn coordinates(&self, v: &SparseVec) -> Option<Vec<Scalar>> {
        let coords: Vec<Scalar> = self
            .basis
            .iter()
            .map(|row| {
                let p = row.leading().expect("nonzero basis row").0;
                v.get(p).cloned().unwrap_or_else(|| Scalar::zero(self.mode))
            })
            .collect();
        let mut rebuilt = SparseVec::new();
        for (c, row) in coords.iter().zip(&self.basis) {
            rebuilt = rebuilt.add_scaled(c, row);
        }
        (rebuilt == *v).then_some(coords)
    }
}

/// Result of comparing `Z` with a subspace `B` of it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quotient {
    pub dim: usize,
    /// Basis vectors of `Z` completing a basis of `B` to one of `Z`.
    pub representatives: Vec<SparseVec>,
}

/// Dimension of `Z/B` and representatives chosen greedily from the echelon basis of `Z`.
/// Fails with a witness when `B` is not contained in `Z`.
pub fn quotient_data(z: &Subspace, b: &Subspace) -> Result<Quotient> {
    if let Some(k) = b.first_outside(z) {
        return Err(Error::Precondition(format!(
            "subspace is not contained in the ambient one: basis vector {k} lies outside"
        )));
    }
    let mut r = b.reducer();
    let mut representatives = Vec::new();
    for v in &z.basis {
        if r.insert(v.clone()) {
            representatives.push(v.clone());
        }
    }
    Ok(Quotient {
        dim: z.dim() - b.dim(),
        representatives,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const M: FieldMode = FieldMode::Rational;

    fn mat(rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(
            M,
            rows.iter()
                .map(|r| r.iter().map(|&x| Scalar::from_int(M, x)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn kernel_of_rank_one() {
        let k = kernel_basis(&mat(&[&[1, 2, 3], &[2, 4, 6]]));
        assert_eq!(k.dim(), 2);
        let m = mat(&[&[1, 2, 3]]);
        for v in k.basis() {
            assert!(m.apply(v).is_zero());
        }
    }

    #[test]
    fn inverse_roundtrip() {
        let a = mat(&[&[2, 1], &[1, 1]]);
        let inv = a.inverse().unwrap().unwrap();
        assert!(a.mul(&inv).unwrap().is_identity());
        assert!(mat(&[&[1, 2], &[2, 4]]).inverse().unwrap().is_none());
    }

    #[test]
    fn quotient_rejects_non_inclusion() {
        let z = Subspace::span(3, M, [SparseVec::unit(0, M)]);
        let b = Subspace::span(3, M, [SparseVec::unit(1, M)]);
        assert!(quotient_data(&z, &b).is_err());
        let q = quotient_data(&Subspace::full(3, M), &b).unwrap();
        assert_eq!(q.dim, 2);
        assert_eq!(q.representatives.len(), 2);
    }

    #[test]
    fn solve_finds_particular_solution() {
        let m = mat(&[&[1, 1], &[1, -1]]);
        let b = SparseVec::from_dense(&[Scalar::from_int(M, 3), Scalar::from_int(M, 1)]);
        let x = solve(&m, &b).unwrap();
        assert_eq!(m.apply(&x), b);
        assert!(solve(&mat(&[&[1, 1], &[2, 2]]), &b).is_none());
    }

    #[test]
    fn image_of_identity_is_full() {
        assert_eq!(image_basis(&Matrix::identity(M, 4)), Subspace::full(4, M));
    }
}
