//! Dense exact linear algebra over a [`Field`].
//!
//! Everything is deterministic: elimination always picks the first nonzero
//! entry in column order, so downstream bases are reproducible run to run.

use crate::error::{Error, Result};
use crate::field::Field;

/// Dense matrix, row-major.
#[derive(Clone, PartialEq)]
pub struct Matrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>,
}

impl<F: Field> std::fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "Matrix {}x{} over {}", self.rows, self.cols, self.field.spec())?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.field.render(self.get(i, j))).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl<F: Field> Matrix<F> {
    pub fn zero(field: F, rows: usize, cols: usize) -> Self {
        let data = vec![field.zero(); rows * cols];
        Matrix { field, rows, cols, data }
    }

    pub fn identity(field: F, n: usize) -> Self {
        let mut m = Matrix::zero(field, n, n);
        for i in 0..n {
            let one = m.field.one();
            m.set(i, i, one);
        }
        m
    }

    pub fn from_rows(field: F, rows: Vec<Vec<F::Elem>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |v| v.len());
        assert!(rows.iter().all(|v| v.len() == c), "ragged rows");
        let data = rows.into_iter().flatten().collect();
        Matrix { field, rows: r, cols: c, data }
    }

    pub fn from_fn(field: F, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F::Elem) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { field, rows, cols, data }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &F::Elem {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: F::Elem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[F::Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vec(&self, i: usize) -> Vec<F::Elem> {
        self.row(i).to_vec()
    }

    pub fn col_vec(&self, j: usize) -> Vec<F::Elem> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| self.field.is_zero(x))
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.field.clone(), self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix::from_fn(self.field.clone(), self.rows, self.cols, |i, j| {
            self.field.add(self.get(i, j), other.get(i, j))
        })
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix::from_fn(self.field.clone(), self.rows, self.cols, |i, j| {
            self.field.sub(self.get(i, j), other.get(i, j))
        })
    }

    pub fn neg(&self) -> Self {
        Matrix::from_fn(self.field.clone(), self.rows, self.cols, |i, j| self.field.neg(self.get(i, j)))
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        Matrix::from_fn(self.field.clone(), self.rows, self.cols, |i, j| self.field.mul(self.get(i, j), c))
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch in matrix product");
        let f = &self.field;
        let mut out = Matrix::zero(f.clone(), self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let mut acc = out.get(i, j).clone();
                    f.axpy(&mut acc, a, other.get(k, j));
                    out.set(i, j, acc);
                }
            }
        }
        out
    }

    /// `v * self` for a row vector `v`.
    pub fn apply_row(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        assert_eq!(v.len(), self.rows);
        let f = &self.field;
        let mut out = vec![f.zero(); self.cols];
        for (k, a) in v.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for j in 0..self.cols {
                let x = self.get(k, j);
                f.axpy(&mut out[j], a, x);
            }
        }
        out
    }

    /// `self * v` for a column vector `v`.
    pub fn apply_col(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        assert_eq!(v.len(), self.cols);
        let f = &self.field;
        (0..self.rows)
            .map(|i| {
                let mut acc = f.zero();
                for (j, x) in v.iter().enumerate() {
                    f.axpy(&mut acc, self.get(i, j), x);
                }
                acc
            })
            .collect()
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows);
        Matrix::from_fn(self.field.clone(), self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                other.get(i, j - self.cols).clone()
            }
        })
    }

    /// Vertical concatenation.
    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix { field: self.field.clone(), rows: self.rows + other.rows, cols: self.cols, data }
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Matrix::from_fn(self.field.clone(), rows.len(), cols.len(), |i, j| {
            self.get(rows[i], cols[j]).clone()
        })
    }

    pub fn trace(&self) -> F::Elem {
        assert_eq!(self.rows, self.cols);
        let f = &self.field;
        let mut acc = f.zero();
        for i in 0..self.rows {
            acc = f.add(&acc, self.get(i, i));
        }
        acc
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Reduced row echelon form. Returns the reduced matrix and the pivot
    /// column of each pivot row. Pivot rule: first row with a nonzero entry,
    /// scanning columns left to right.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let f = m.field.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| !f.is_zero(m.get(i, c))) else {
                continue;
            };
            m.swap_rows(r, pr);
            let inv = f.inv(m.get(r, c)).expect("pivot is nonzero");
            for j in c..m.cols {
                let v = f.mul(m.get(r, j), &inv);
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || f.is_zero(m.get(i, c)) {
                    continue;
                }
                let factor = f.neg(m.get(i, c));
                for j in c..m.cols {
                    let mut v = m.get(i, j).clone();
                    f.axpy(&mut v, &factor, m.get(r, j));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right null space `{ v : self * v = 0 }`.
    /// Vectors are indexed by the free columns in ascending order.
    pub fn kernel_basis(&self) -> Vec<Vec<F::Elem>> {
        let f = self.field.clone();
        let (rr, pivots) = self.rref();
        let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
        let free: Vec<usize> = (0..self.cols).filter(|j| !pivot_set.contains(j)).collect();
        let mut basis = Vec::with_capacity(free.len());
        for &fc in &free {
            let mut v = vec![f.zero(); self.cols];
            v[fc] = f.one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(rr.get(row, fc));
            }
            basis.push(v);
        }
        basis
    }

    /// Basis of the left null space `{ v : v * self = 0 }` (row vectors).
    pub fn left_kernel_basis(&self) -> Vec<Vec<F::Elem>> {
        self.transpose().kernel_basis()
    }

    /// Solve `self * x = b`. `Err` only on dimension mismatch; an unsolvable
    /// system yields the rank certificate.
    pub fn solve(&self, b: &[F::Elem]) -> Result<SolveOutcome<F>> {
        if b.len() != self.rows {
            return Err(Error::invalid(format!(
                "dimension mismatch: matrix has {} rows, vector has {}",
                self.rows,
                b.len()
            )));
        }
        let rhs = Matrix::from_fn(self.field.clone(), self.rows, 1, |i, _| b[i].clone());
        match self.solve_right(&rhs) {
            Some(x) => Ok(SolveOutcome::Solution(x.col_vec(0))),
            None => Ok(SolveOutcome::Inconsistent {
                rank: self.rank(),
                rank_augmented: self.hstack(&rhs).rank(),
            }),
        }
    }

    /// Solve `self * X = rhs` for all columns at once. Free variables are set
    /// to zero, so the solution is deterministic.
    pub fn solve_right(&self, rhs: &Self) -> Option<Self> {
        assert_eq!(self.rows, rhs.rows);
        let f = self.field.clone();
        let aug = self.hstack(rhs);
        let (rr, pivots) = aug.rref();
        // Any pivot in the rhs block certifies inconsistency.
        if pivots.iter().any(|&c| c >= self.cols) {
            return None;
        }
        let mut x = Matrix::zero(f, self.cols, rhs.cols);
        for (row, &pc) in pivots.iter().enumerate() {
            for j in 0..rhs.cols {
                x.set(pc, j, rr.get(row, self.cols + j).clone());
            }
        }
        Some(x)
    }

    /// Solve `X * self = rhs` (row-vector systems).
    pub fn solve_left(&self, rhs: &Self) -> Option<Self> {
        self.transpose().solve_right(&rhs.transpose()).map(|x| x.transpose())
    }

    pub fn inverse(&self) -> Option<Self> {
        assert_eq!(self.rows, self.cols);
        let id = Matrix::identity(self.field.clone(), self.rows);
        let inv = self.solve_right(&id)?;
        if self.mul(&inv) == id {
            Some(inv)
        } else {
            None
        }
    }

    /// Coefficients `c_0..c_n` of the characteristic polynomial
    /// `det(tI - A) = c_0 + c_1 t + ... + c_n t^n`, via Hessenberg reduction.
    pub fn charpoly(&self) -> Vec<F::Elem> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let f = self.field.clone();
        if n == 0 {
            return vec![f.one()];
        }
        let mut h = self.clone();
        // Similarity reduction to upper Hessenberg form.
        for j in 0..n.saturating_sub(2) {
            let Some(pr) = ((j + 1)..n).find(|&i| !f.is_zero(h.get(i, j))) else {
                continue;
            };
            if pr != j + 1 {
                h.swap_rows(j + 1, pr);
                // column swap to keep similarity
                for i in 0..n {
                    let a = h.get(i, j + 1).clone();
                    let b = h.get(i, pr).clone();
                    h.set(i, j + 1, b);
                    h.set(i, pr, a);
                }
            }
            let inv = f.inv(h.get(j + 1, j)).unwrap();
            for i in (j + 2)..n {
                if f.is_zero(h.get(i, j)) {
                    continue;
                }
                let factor = f.mul(h.get(i, j), &inv);
                let nfactor = f.neg(&factor);
                for c in 0..n {
                    let mut v = h.get(i, c).clone();
                    f.axpy(&mut v, &nfactor, h.get(j + 1, c));
                    h.set(i, c, v);
                }
                for r in 0..n {
                    let mut v = h.get(r, j + 1).clone();
                    f.axpy(&mut v, &factor, h.get(r, i));
                    h.set(r, j + 1, v);
                }
            }
        }
        // p_k(t) = (t - h_kk) p_{k-1}(t) - sum_i h_ik (prod subdiagonals) p_{i-1}(t)
        let mut polys: Vec<Vec<F::Elem>> = vec![vec![f.one()]];
        for k in 1..=n {
            let hkk = h.get(k - 1, k - 1);
            let prev = &polys[k - 1];
            let mut p = vec![f.zero(); k + 1];
            for (d, c) in prev.iter().enumerate() {
                p[d + 1] = f.add(&p[d + 1], c);
                let t = f.mul(hkk, c);
                p[d] = f.sub(&p[d], &t);
            }
            let mut subprod = f.one();
            for i in (1..k).rev() {
                // product of subdiagonal entries h_{j+1,j} for j = i..k-1
                subprod = f.mul(&subprod, h.get(i, i - 1));
                if f.is_zero(&subprod) {
                    break;
                }
                let hik = h.get(i - 1, k - 1);
                if f.is_zero(hik) {
                    continue;
                }
                let coef = f.mul(hik, &subprod);
                for (d, c) in polys[i - 1].iter().enumerate() {
                    let t = f.mul(&coef, c);
                    p[d] = f.sub(&p[d], &t);
                }
            }
            polys.push(p);
        }
        polys.pop().unwrap()
    }
}

/// Result of [`Matrix::solve`]: either a solution or a rank certificate for
/// unsolvability (`rank < rank_augmented`).
#[derive(Clone, Debug)]
pub enum SolveOutcome<F: Field> {
    Solution(Vec<F::Elem>),
    Inconsistent { rank: usize, rank_augmented: usize },
}

impl<F: Field> SolveOutcome<F> {
    pub fn solution(self) -> Option<Vec<F::Elem>> {
        match self {
            SolveOutcome::Solution(v) => Some(v),
            SolveOutcome::Inconsistent { .. } => None,
        }
    }
}

/// A subspace of `k^n` stored as a reduced row echelon basis. The basis is
/// canonical, so equal subspaces compare equal.
#[derive(Clone, Debug, PartialEq)]
pub struct Subspace<F: Field> {
    field: F,
    ambient: usize,
    rows: Vec<Vec<F::Elem>>,
    pivots: Vec<usize>,
}

impl<F: Field> Subspace<F> {
    pub fn new(field: F, ambient: usize) -> Self {
        Subspace { field, ambient, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn from_vectors(field: F, ambient: usize, vecs: impl IntoIterator<Item = Vec<F::Elem>>) -> Self {
        let mut s = Subspace::new(field, ambient);
        for v in vecs {
            s.insert(v);
        }
        s
    }

    pub fn full(field: F, ambient: usize) -> Self {
        let mut s = Subspace::new(field.clone(), ambient);
        for i in 0..ambient {
            let mut v = vec![field.zero(); ambient];
            v[i] = field.one();
            s.insert(v);
        }
        s
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[Vec<F::Elem>] {
        &self.rows
    }

    pub fn basis_matrix(&self) -> Matrix<F> {
        Matrix::from_rows(self.field.clone(), if self.rows.is_empty() { vec![] } else { self.rows.clone() })
    }

    /// Reduce `v` modulo the subspace; the result has zeros at all pivots.
    pub fn reduce(&self, mut v: Vec<F::Elem>) -> Vec<F::Elem> {
        assert_eq!(v.len(), self.ambient);
        let f = &self.field;
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if f.is_zero(&v[p]) {
                continue;
            }
            let c = f.neg(&v[p]);
            for j in p..self.ambient {
                let x = row[j].clone();
                f.axpy(&mut v[j], &c, &x);
            }
        }
        v
    }

    pub fn contains(&self, v: &[F::Elem]) -> bool {
        let r = self.reduce(v.to_vec());
        r.iter().all(|x| self.field.is_zero(x))
    }

    pub fn contains_subspace(&self, other: &Subspace<F>) -> bool {
        other.rows.iter().all(|r| self.contains(r))
    }

    /// Insert a vector; returns true if the dimension grew.
    pub fn insert(&mut self, v: Vec<F::Elem>) -> bool {
        let f = self.field.clone();
        let mut v = self.reduce(v);
        let Some(p) = v.iter().position(|x| !f.is_zero(x)) else {
            return false;
        };
        let inv = f.inv(&v[p]).unwrap();
        for x in v.iter_mut() {
            *x = f.mul(x, &inv);
        }
        // Back-eliminate the new pivot from existing rows.
        for row in self.rows.iter_mut() {
            if f.is_zero(&row[p]) {
                continue;
            }
            let c = f.neg(&row[p]);
            for j in 0..self.ambient {
                let x = v[j].clone();
                f.axpy(&mut row[j], &c, &x);
            }
        }
        let pos = self.pivots.iter().position(|&q| q > p).unwrap_or(self.pivots.len());
        self.pivots.insert(pos, p);
        self.rows.insert(pos, v);
        true
    }

    pub fn sum(&self, other: &Subspace<F>) -> Subspace<F> {
        let mut s = self.clone();
        for r in &other.rows {
            s.insert(r.clone());
        }
        s
    }

    pub fn intersect(&self, other: &Subspace<F>) -> Subspace<F> {
        if self.dim() == 0 || other.dim() == 0 {
            return Subspace::new(self.field.clone(), self.ambient);
        }
        // v = x A = y B; solve [A^T | -B^T] (x; y) = 0.
        let a = self.basis_matrix().transpose();
        let b = other.basis_matrix().transpose().neg();
        let stacked = a.hstack(&b);
        let mut out = Subspace::new(self.field.clone(), self.ambient);
        for k in stacked.kernel_basis() {
            let x = &k[..self.dim()];
            let v = self.basis_matrix().apply_row(x);
            out.insert(v);
        }
        out
    }

    /// The free (non-pivot) coordinates, which index the canonical complement.
    pub fn free_coords(&self) -> Vec<usize> {
        let pivot_set: std::collections::BTreeSet<usize> = self.pivots.iter().copied().collect();
        (0..self.ambient).filter(|j| !pivot_set.contains(j)).collect()
    }

    /// Projection `k^n -> k^q` and section `k^q -> k^n` for the quotient by
    /// this subspace (`q = n - dim`). Both are given as matrices acting on
    /// row vectors (`v * proj`, `w * section`), and `section * proj = id`.
    pub fn quotient_maps(&self) -> (Matrix<F>, Matrix<F>) {
        let f = self.field.clone();
        let free = self.free_coords();
        let q = free.len();
        let mut proj = Matrix::zero(f.clone(), self.ambient, q);
        for i in 0..self.ambient {
            let mut e = vec![f.zero(); self.ambient];
            e[i] = f.one();
            let r = self.reduce(e);
            for (jq, &jc) in free.iter().enumerate() {
                proj.set(i, jq, r[jc].clone());
            }
        }
        let mut section = Matrix::zero(f.clone(), q, self.ambient);
        for (jq, &jc) in free.iter().enumerate() {
            section.set(jq, jc, f.one());
        }
        (proj, section)
    }
}

/// Repeated coordinate extraction against a fixed spanning set: given
/// independent rows `g_1..g_d`, answers `v = sum c_k g_k` queries in
/// `O(d n)` after one elimination.
#[derive(Clone, Debug)]
pub struct SpanSolver<F: Field> {
    field: F,
    ambient: usize,
    rref: Vec<Vec<F::Elem>>,
    pivots: Vec<usize>,
    /// `rref[r] = sum transform[r][k] * g_k`
    transform: Vec<Vec<F::Elem>>,
}

impl<F: Field> SpanSolver<F> {
    /// `rows` must be linearly independent.
    pub fn new(field: F, ambient: usize, rows: &[Vec<F::Elem>]) -> SpanSolver<F> {
        let d = rows.len();
        let mut s = SpanSolver { field: field.clone(), ambient, rref: Vec::new(), pivots: Vec::new(), transform: Vec::new() };
        for (k, row) in rows.iter().enumerate() {
            let mut coef = vec![field.zero(); d];
            coef[k] = field.one();
            let (mut v, c) = s.reduce_tracked(row.clone(), coef);
            let p = v
                .iter()
                .position(|x| !field.is_zero(x))
                .expect("SpanSolver rows must be independent");
            let inv = field.inv(&v[p]).unwrap();
            for x in v.iter_mut() {
                *x = field.mul(x, &inv);
            }
            let c: Vec<F::Elem> = c.iter().map(|x| field.mul(x, &inv)).collect();
            let pos = s.pivots.iter().position(|&q| q > p).unwrap_or(s.pivots.len());
            s.pivots.insert(pos, p);
            s.rref.insert(pos, v);
            s.transform.insert(pos, c);
        }
        s
    }

    fn reduce_tracked(&self, mut v: Vec<F::Elem>, mut coef: Vec<F::Elem>) -> (Vec<F::Elem>, Vec<F::Elem>) {
        let f = &self.field;
        for (r, &p) in self.pivots.iter().enumerate() {
            if f.is_zero(&v[p]) {
                continue;
            }
            let c = f.neg(&v[p]);
            for j in 0..self.ambient {
                let x = self.rref[r][j].clone();
                f.axpy(&mut v[j], &c, &x);
            }
            for j in 0..coef.len() {
                let x = self.transform[r][j].clone();
                f.axpy(&mut coef[j], &c, &x);
            }
        }
        (v, coef)
    }

    /// Coefficients of `v` over the original rows, or `None` if outside the span.
    pub fn coords(&self, v: &[F::Elem]) -> Option<Vec<F::Elem>> {
        let f = &self.field;
        let d = self.transform.first().map_or(0, |t| t.len());
        let mut coef = vec![f.zero(); d];
        let mut w = v.to_vec();
        for (r, &p) in self.pivots.iter().enumerate() {
            if f.is_zero(&w[p]) {
                continue;
            }
            let c = w[p].clone();
            let nc = f.neg(&c);
            for j in 0..self.ambient {
                let x = self.rref[r][j].clone();
                f.axpy(&mut w[j], &nc, &x);
            }
            for j in 0..d {
                let x = self.transform[r][j].clone();
                f.axpy(&mut coef[j], &c, &x);
            }
        }
        if w.iter().all(|x| f.is_zero(x)) {
            Some(coef)
        } else {
            None
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    fn qmat(rows: Vec<Vec<i64>>) -> Matrix<Rationals> {
        let q = Rationals;
        Matrix::from_rows(
            q,
            rows.into_iter().map(|r| r.into_iter().map(|x| Rationals.from_i64(x)).collect()).collect(),
        )
    }

    #[test]
    fn kernel_of_identity_is_empty() {
        let id = Matrix::identity(Rationals, 3);
        assert!(id.kernel_basis().is_empty());
    }

    #[test]
    fn kernel_of_zero_matrix_is_full() {
        let z: Matrix<Rationals> = Matrix::zero(Rationals, 2, 2);
        let k = z.kernel_basis();
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(z.apply_col(v).iter().all(|x| Rationals.is_zero(x)));
        }
    }

    #[test]
    fn solve_identity_returns_rhs() {
        let id = Matrix::identity(Rationals, 3);
        let b: Vec<_> = [1, 2, 3].iter().map(|&x| Rationals.from_i64(x)).collect();
        let x = id.solve(&b).unwrap().solution().unwrap();
        assert_eq!(x, b);
    }

    #[test]
    fn solve_zero_matrix_inconsistent() {
        let z: Matrix<Rationals> = Matrix::zero(Rationals, 2, 2);
        let b = vec![Rationals.from_i64(1), Rationals.from_i64(0)];
        match z.solve(&b).unwrap() {
            SolveOutcome::Inconsistent { rank, rank_augmented } => {
                assert_eq!(rank, 0);
                assert_eq!(rank_augmented, 1);
            }
            SolveOutcome::Solution(_) => panic!("expected inconsistency"),
        }
    }

    #[test]
    fn solve_dimension_mismatch_is_error() {
        let id = Matrix::identity(Rationals, 2);
        let b = vec![Rationals.from_i64(1)];
        assert!(id.solve(&b).is_err());
    }

    #[test]
    fn rank_nullity_examples() {
        let m = qmat(vec![vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 1]]);
        assert_eq!(m.rank() + m.kernel_basis().len(), 3);
        let f5 = PrimeField::new(5);
        let m5 = Matrix::from_rows(
            f5,
            vec![vec![1u64, 2, 3], vec![2, 4, 1], vec![3, 1, 4]],
        );
        assert_eq!(m5.rank() + m5.kernel_basis().len(), 3);
    }

    #[test]
    fn charpoly_companion() {
        // charpoly of [[0,1],[2,1]] is t^2 - t - 2
        let m = qmat(vec![vec![0, 1], vec![2, 1]]);
        let p = m.charpoly();
        let c: Vec<i64> = vec![-2, -1, 1];
        for (i, x) in c.iter().enumerate() {
            assert_eq!(p[i], Rationals.from_i64(*x));
        }
        // and over F_5
        let f5 = PrimeField::new(5);
        let m5 = Matrix::from_rows(f5, vec![vec![0u64, 1], vec![2, 1]]);
        assert_eq!(m5.charpoly(), vec![3, 4, 1]);
    }

    #[test]
    fn charpoly_matches_trace_det_3x3() {
        let m = qmat(vec![vec![1, 2, 0], vec![0, 1, 3], vec![4, 0, 1]]);
        let p = m.charpoly();
        // det(tI - A) = t^3 - tr t^2 + c1 t - det; tr = 3, det = 25
        assert_eq!(p[3], Rationals.from_i64(1));
        assert_eq!(p[2], Rationals.from_i64(-3));
        assert_eq!(p[0], Rationals.from_i64(-25));
    }

    #[test]
    fn subspace_quotient_roundtrip() {
        let q = Rationals;
        let s = Subspace::from_vectors(
            q,
            3,
            vec![vec![q.from_i64(1), q.from_i64(1), q.from_i64(0)]],
        );
        assert_eq!(s.dim(), 1);
        let (proj, section) = s.quotient_maps();
        assert_eq!(proj.ncols(), 2);
        let id = section.mul(&proj);
        assert_eq!(id, Matrix::identity(q, 2));
        // v and v + s reduce to the same class
        let v = vec![q.from_i64(2), q.from_i64(0), q.from_i64(5)];
        let mut w = v.clone();
        w[0] = q.from_i64(3);
        w[1] = q.from_i64(1);
        assert_eq!(proj.apply_row(&v), proj.apply_row(&w));
    }

    #[test]
    fn subspace_intersection() {
        let q = Rationals;
        let a = Subspace::from_vectors(
            q,
            3,
            vec![
                vec![q.from_i64(1), q.from_i64(0), q.from_i64(0)],
                vec![q.from_i64(0), q.from_i64(1), q.from_i64(0)],
            ],
        );
        let b = Subspace::from_vectors(
            q,
            3,
            vec![
                vec![q.from_i64(0), q.from_i64(1), q.from_i64(1)],
                vec![q.from_i64(0), q.from_i64(0), q.from_i64(1)],
            ],
        );
        let c = a.intersect(&b);
        assert_eq!(c.dim(), 1);
        assert!(c.contains(&[q.from_i64(0), q.from_i64(1), q.from_i64(0)]));
    }

    #[test]
    fn span_solver_coords() {
        let q = Rationals;
        let rows = vec![
            vec![q.from_i64(1), q.from_i64(1), q.from_i64(0)],
            vec![q.from_i64(0), q.from_i64(2), q.from_i64(2)],
        ];
        let s = SpanSolver::new(q, 3, &rows);
        let v = vec![q.from_i64(2), q.from_i64(5), q.from_i64(3)];
        // v = 2*r0 + 3/2*r1
        let c = s.coords(&v).unwrap();
        assert_eq!(c[0], q.from_i64(2));
        assert_eq!(c[1], q.from_ratio(3, 2).unwrap());
        assert!(s.coords(&[q.from_i64(0), q.from_i64(0), q.from_i64(1)]).is_none());
    }

    #[test]
    fn solve_left_right() {
        let a = qmat(vec![vec![1, 2], vec![3, 4]]);
        let b = qmat(vec![vec![5, 6], vec![7, 8]]);
        let x = a.solve_right(&b).unwrap();
        assert_eq!(a.mul(&x), b);
        let y = a.solve_left(&b).unwrap();
        assert_eq!(y.mul(&a), b);
    }
}
