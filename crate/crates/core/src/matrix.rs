//! Dense exact matrices and the elimination toolkit built on RREF.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::scalar::Gaussian;

/// Row-major dense matrix over Q(i). Column vectors are `n x 1` matrices.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Gaussian>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Gaussian::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for k in 0..n {
            m[(k, k)] = Gaussian::one();
        }
        m
    }

    pub fn diag(entries: &[Gaussian]) -> Self {
        let mut m = Matrix::zeros(entries.len(), entries.len());
        for (k, e) in entries.iter().enumerate() {
            m[(k, k)] = e.clone();
        }
        m
    }

    /// Panics if the rows are ragged.
    pub fn from_rows(rows: Vec<Vec<Gaussian>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_int_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.as_ref().iter().map(|&v| Gaussian::from_int(v)).collect())
                .collect(),
        )
    }

    pub fn column_vector(entries: Vec<Gaussian>) -> Self {
        Matrix {
            rows: entries.len(),
            cols: 1,
            data: entries,
        }
    }

    pub fn int_column(entries: &[i64]) -> Self {
        Matrix::column_vector(entries.iter().map(|&v| Gaussian::from_int(v)).collect())
    }

    /// Unit vector `e_k` in dimension `n`.
    pub fn unit(n: usize, k: usize) -> Self {
        let mut v = Matrix::zeros(n, 1);
        v[(k, 0)] = Gaussian::one();
        v
    }

    /// Horizontally stacks column vectors. `rows` is needed when `cols` is empty.
    pub fn from_columns(rows: usize, cols: &[Matrix]) -> Self {
        let mut m = Matrix::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.rows, rows, "column height mismatch");
            for i in 0..rows {
                m[(i, j)] = c.data[i * c.cols].clone();
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

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[Gaussian] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Gaussian] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Matrix {
        Matrix::column_vector((0..self.rows).map(|i| self[(i, j)].clone()).collect())
    }

    pub fn columns(&self) -> Vec<Matrix> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Gaussian>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn trace(&self) -> Gaussian {
        let mut t = Gaussian::zero();
        for k in 0..self.rows.min(self.cols) {
            t += &self[(k, k)];
        }
        t
    }

    pub fn scale(&self, s: &Gaussian) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|e| e * s).collect(),
        }
    }

    /// `self - lambda * I`.
    pub fn shift(&self, lambda: &Gaussian) -> Matrix {
        let mut m = self.clone();
        for k in 0..self.rows.min(self.cols) {
            m[(k, k)] -= lambda;
        }
        m
    }

    pub fn pow(&self, e: u32) -> Matrix {
        assert!(self.is_square());
        let mut acc = Matrix::identity(self.rows);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn is_upper_triangular(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols.min(i)).all(|j| self[(i, j)].is_zero()))
    }

    pub fn diagonal(&self) -> Vec<Gaussian> {
        (0..self.rows.min(self.cols))
            .map(|k| self[(k, k)].clone())
            .collect()
    }

    /// Contiguous block `[r0, r0+nr) x [c0, c0+nc)`.
    pub fn submatrix(&self, r0: usize, c0: usize, nr: usize, nc: usize) -> Matrix {
        let mut m = Matrix::zeros(nr, nc);
        for i in 0..nr {
            for j in 0..nc {
                m[(i, j)] = self[(r0 + i, c0 + j)].clone();
            }
        }
        m
    }

    /// Writes `block` with its top-left corner at `(r0, c0)`.
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Matrix) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self[(r0 + i, c0 + j)] = block[(i, j)].clone();
            }
        }
    }

    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows);
        let mut m = Matrix::zeros(self.rows, self.cols + other.cols);
        m.set_block(0, 0, self);
        m.set_block(0, self.cols, other);
        m
    }

    /// Block-diagonal matrix with the given square blocks.
    pub fn block_diag(blocks: &[Matrix]) -> Matrix {
        let n = blocks.iter().map(|b| b.rows).sum();
        let mut m = Matrix::zeros(n, n);
        let mut at = 0;
        for b in blocks {
            m.set_block(at, at, b);
            at += b.rows;
        }
        m
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// `row[dst] += factor * row[src]`.
    pub fn add_row_multiple(&mut self, dst: usize, src: usize, factor: &Gaussian) {
        if factor.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let t = &self[(src, j)] * factor;
            self[(dst, j)] += &t;
        }
    }

    fn check_same_shape(&self, other: &Matrix, op: &'static str) {
        assert!(
            self.rows == other.rows && self.cols == other.cols,
            "{op}: shape mismatch {}x{} vs {}x{}",
            self.rows,
            self.cols,
            other.rows,
            other.cols
        );
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Gaussian;
    fn index(&self, (i, j): (usize, usize)) -> &Gaussian {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Gaussian {
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "matrix product shape mismatch");
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += &(a * b);
                    }
                }
            }
        }
        out
    }
}

impl Mul for Matrix {
    type Output = Matrix;
    fn mul(self, rhs: Matrix) -> Matrix {
        &self * &rhs
    }
}

impl Add for &Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        self.check_same_shape(rhs, "add");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        self.check_same_shape(rhs, "sub");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.to_rows()).finish()
    }
}

/// Right-aligned columns, one row per line.
impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.data.iter().map(ToString::to_string).collect();
        let widths: Vec<usize> = (0..self.cols)
            .map(|j| {
                (0..self.rows)
                    .map(|i| cells[i * self.cols + j].len())
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, "  ")?;
                }
                write!(f, "{:>w$}", cells[i * self.cols + j], w = widths[j])?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

/// An ordered, linearly independent list of column vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Basis {
    pub ambient_dim: usize,
    pub vectors: Vec<Matrix>,
}

impl Basis {
    pub fn empty(ambient_dim: usize) -> Self {
        Basis {
            ambient_dim,
            vectors: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn to_matrix(&self) -> Matrix {
        Matrix::from_columns(self.ambient_dim, &self.vectors)
    }

    /// Whether `v` lies in the span.
    pub fn contains(&self, v: &Matrix) -> bool {
        if self.vectors.is_empty() {
            return v.is_zero();
        }
        rank(&self.to_matrix().hstack(v)) == self.dim()
    }
}

/// Reduced row echelon form and pivot columns.
///
/// The pivot in each column is the first nonzero entry at or below the
/// current row.
pub fn rref(m: &Matrix) -> (Matrix, Vec<usize>) {
    let mut r = m.clone();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..r.cols {
        if row == r.rows {
            break;
        }
        let Some(p) = (row..r.rows).find(|&i| !r[(i, col)].is_zero()) else {
            continue;
        };
        r.swap_rows(row, p);
        let inv = r[(row, col)].inv().expect("pivot is nonzero");
        for j in col..r.cols {
            r[(row, j)] = &r[(row, j)] * &inv;
        }
        for i in 0..r.rows {
            if i != row && !r[(i, col)].is_zero() {
                let f = -&r[(i, col)];
                r.add_row_multiple(i, row, &f);
            }
        }
        pivots.push(col);
        row += 1;
    }
    (r, pivots)
}

pub fn rank(m: &Matrix) -> usize {
    rref(m).1.len()
}

/// Canonical kernel basis: one vector per free column of the RREF, with that
/// free variable set to 1 and the other free variables 0, in column order.
pub fn nullspace_basis(m: &Matrix) -> Basis {
    let (r, pivots) = rref(m);
    let n = m.cols;
    let mut vectors = Vec::new();
    let mut pivot_iter = pivots.iter().peekable();
    for free in 0..n {
        if pivot_iter.peek() == Some(&&free) {
            pivot_iter.next();
            continue;
        }
        let mut v = Matrix::zeros(n, 1);
        v[(free, 0)] = Gaussian::one();
        for (row, &pc) in pivots.iter().enumerate() {
            v[(pc, 0)] = -&r[(row, free)];
        }
        vectors.push(v);
    }
    Basis {
        ambient_dim: n,
        vectors,
    }
}

/// The pivot columns of `m` itself, in order.
pub fn colspace_basis(m: &Matrix) -> Basis {
    let (_, pivots) = rref(m);
    Basis {
        ambient_dim: m.rows,
        vectors: pivots.into_iter().map(|j| m.column(j)).collect(),
    }
}

/// Solves `m x = b`. Returns `Ok(None)` when the system is inconsistent; free
/// variables are set to zero otherwise.
pub fn solve(m: &Matrix, b: &Matrix) -> Result<Option<Matrix>> {
    if m.rows != b.rows || b.cols != 1 {
        return Err(Error::DimensionMismatch {
            op: "solve",
            detail: format!("matrix {}x{}, rhs {}x{}", m.rows, m.cols, b.rows, b.cols),
        });
    }
    let (r, pivots) = rref(&m.hstack(b));
    if pivots.last() == Some(&m.cols) {
        return Ok(None);
    }
    let mut x = Matrix::zeros(m.cols, 1);
    for (row, &pc) in pivots.iter().enumerate() {
        x[(pc, 0)] = r[(row, m.cols)].clone();
    }
    Ok(Some(x))
}

pub fn inverse(m: &Matrix) -> Result<Matrix> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            op: "inverse",
            rows: m.rows,
            cols: m.cols,
        });
    }
    let n = m.rows;
    let (r, pivots) = rref(&m.hstack(&Matrix::identity(n)));
    let rank = pivots.iter().take_while(|&&p| p < n).count();
    if rank < n {
        return Err(Error::Singular { rank, n });
    }
    Ok(r.submatrix(0, n, n, n))
}

/// Extends an independent set to a basis of the ambient space, appending
/// standard unit vectors in index order and skipping dependent ones.
pub fn complete_basis(partial: &Basis) -> Result<Matrix> {
    let n = partial.ambient_dim;
    let mut cols = partial.vectors.clone();
    if !cols.is_empty() && rank(&Matrix::from_columns(n, &cols)) != cols.len() {
        return Err(Error::DependentInput);
    }
    for k in 0..n {
        if cols.len() == n {
            break;
        }
        let mut trial = cols.clone();
        trial.push(Matrix::unit(n, k));
        if rank(&Matrix::from_columns(n, &trial)) == trial.len() {
            cols = trial;
        }
    }
    Ok(Matrix::from_columns(n, &cols))
}

/// Monic polynomial `P` of least degree with `P(A) v = 0`, found from the
/// first linear dependence in `v, Av, A²v, ...`.
pub fn krylov_annihilator(a: &Matrix, v: &Matrix) -> Result<Polynomial> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            op: "krylov_annihilator",
            rows: a.rows,
            cols: a.cols,
        });
    }
    if v.rows != a.rows || v.cols != 1 {
        return Err(Error::DimensionMismatch {
            op: "krylov_annihilator",
            detail: format!("matrix {}x{}, vector {}x{}", a.rows, a.cols, v.rows, v.cols),
        });
    }
    if v.is_zero() {
        return Err(Error::ZeroVector);
    }
    let mut krylov = vec![v.clone()];
    loop {
        let next = a * krylov.last().expect("nonempty");
        let k = Matrix::from_columns(a.rows, &krylov);
        if let Some(c) = solve(&k, &next)? {
            // next = Σ c_j A^j v  =>  P(z) = z^d - Σ c_j z^j
            let mut coeffs: Vec<Gaussian> = c.entries().iter().map(|x| -x).collect();
            coeffs.push(Gaussian::one());
            return Ok(Polynomial::new(coeffs));
        }
        krylov.push(next);
    }
}
