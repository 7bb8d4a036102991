//! Dense exact linear algebra over F_p.
//!
//! Row-major matrices of residues, reduced row echelon form, kernels, and
//! the two closure operators used everywhere in module theory: `spin`
//! (smallest subspace containing given vectors and closed under a list of
//! operators) and `largest_invariant_subspace` (largest subspace of a given
//! one mapped into itself by every operator). Subspaces are kept in reduced
//! echelon form so equality is literal comparison.

use crate::field::Fp;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix {
    field: Fp,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinalgError {
    #[error("ambient dimension mismatch: {0} vs {1}")]
    AmbientMismatch(usize, usize),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
}

impl Matrix {
    pub fn zeros(field: Fp, rows: usize, cols: usize) -> Self {
        Matrix {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: Fp, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Builds from signed integer entries, reducing mod p.
    pub fn from_i64(field: Fp, rows: usize, cols: usize, entries: &[i64]) -> Self {
        assert_eq!(entries.len(), rows * cols);
        Matrix {
            field,
            rows,
            cols,
            data: entries.iter().map(|&e| field.reduce_i64(e)).collect(),
        }
    }

    pub fn from_rows(field: Fp, cols: usize, rows: &[Vec<u64>]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols);
            data.extend_from_slice(r);
        }
        Matrix {
            field,
            rows: rows.len(),
            cols,
            data,
        }
    }

    pub fn field(&self) -> Fp {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u64) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[u64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let f = self.field;
        let p = f.modulus();
        let mut out = Matrix::zeros(f, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a == 0 {
                    continue;
                }
                let orow = k * other.cols;
                let trow = r * other.cols;
                for c in 0..other.cols {
                    let v = out.data[trow + c] + a * other.data[orow + c];
                    out.data[trow + c] = v % p;
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = self.field;
        let mut out = self.clone();
        for (a, &b) in out.data.iter_mut().zip(&other.data) {
            *a = f.add(*a, b);
        }
        out
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = self.field;
        let mut out = self.clone();
        for (a, &b) in out.data.iter_mut().zip(&other.data) {
            *a = f.sub(*a, b);
        }
        out
    }

    pub fn scale(&self, c: u64) -> Matrix {
        let f = self.field;
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a = f.mul(*a, c);
        }
        out
    }

    pub fn pow(&self, mut e: u64) -> Matrix {
        assert_eq!(self.rows, self.cols);
        let mut acc = Matrix::identity(self.field, self.rows);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    pub fn apply(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(v.len(), self.cols);
        let p = self.field.modulus();
        let mut out = vec![0u64; self.rows];
        for r in 0..self.rows {
            let mut acc = 0u64;
            let row = self.row(r);
            for (a, &x) in row.iter().zip(v) {
                acc = (acc + a * x) % p;
            }
            out[r] = acc;
        }
        out
    }

    /// In-place reduced row echelon form; returns the rank.
    pub fn rref_in_place(&mut self) -> usize {
        let f = self.field;
        let p = f.modulus();
        let mut pivot_row = 0;
        for col in 0..self.cols {
            if pivot_row == self.rows {
                break;
            }
            let mut sel = None;
            for r in pivot_row..self.rows {
                if self.get(r, col) != 0 {
                    sel = Some(r);
                    break;
                }
            }
            let Some(sel) = sel else { continue };
            self.data.swap_range(sel * self.cols, pivot_row * self.cols, self.cols);
            let inv = f.inv(self.get(pivot_row, col));
            for c in col..self.cols {
                let v = self.get(pivot_row, c);
                self.set(pivot_row, c, f.mul(v, inv));
            }
            for r in 0..self.rows {
                if r == pivot_row {
                    continue;
                }
                let factor = self.get(r, col);
                if factor == 0 {
                    continue;
                }
                for c in col..self.cols {
                    let v = self.get(r, c) + (p - factor) * self.get(pivot_row, c) % p;
                    self.set(r, c, v % p);
                }
            }
            pivot_row += 1;
        }
        pivot_row
    }

    pub fn rref(&self) -> (Matrix, usize) {
        let mut m = self.clone();
        let rank = m.rref_in_place();
        (m, rank)
    }

    pub fn rank(&self) -> usize {
        self.rref().1
    }

    /// Basis of `{v : self * v = 0}` as a subspace of F_p^{cols}.
    pub fn kernel(&self) -> Subspace {
        let f = self.field;
        let (r, rank) = self.rref();
        let mut pivot_of_col = vec![None; self.cols];
        let mut pivots = Vec::new();
        for row in 0..rank {
            let col = (0..self.cols).find(|&c| r.get(row, c) != 0).unwrap();
            pivot_of_col[col] = Some(row);
            pivots.push(col);
        }
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_of_col[free].is_some() {
                continue;
            }
            let mut v = vec![0u64; self.cols];
            v[free] = 1;
            for (&pc, row) in pivots.iter().zip(0..rank) {
                v[pc] = f.neg(r.get(row, free));
            }
            basis.push(v);
        }
        Subspace::from_rows(f, self.cols, basis)
    }
}

trait SwapRange {
    fn swap_range(&mut self, a: usize, b: usize, len: usize);
}

impl SwapRange for Vec<u64> {
    fn swap_range(&mut self, a: usize, b: usize, len: usize) {
        if a == b {
            return;
        }
        for k in 0..len {
            self.swap(a + k, b + k);
        }
    }
}

/// A subspace of F_p^n held as a reduced-echelon row basis.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subspace {
    field: Fp,
    ambient: usize,
    /// rank x ambient, in reduced row echelon form with no zero rows
    basis: Matrix,
}

impl Subspace {
    pub fn zero(field: Fp, ambient: usize) -> Self {
        Subspace {
            field,
            ambient,
            basis: Matrix::zeros(field, 0, ambient),
        }
    }

    pub fn full(field: Fp, ambient: usize) -> Self {
        Subspace {
            field,
            ambient,
            basis: Matrix::identity(field, ambient),
        }
    }

    pub fn from_rows(field: Fp, ambient: usize, rows: Vec<Vec<u64>>) -> Self {
        let mut m = Matrix::from_rows(field, ambient, &rows);
        let rank = m.rref_in_place();
        let mut data = Vec::with_capacity(rank * ambient);
        for r in 0..rank {
            data.extend_from_slice(m.row(r));
        }
        Subspace {
            field,
            ambient,
            basis: Matrix {
                field,
                rows: rank,
                cols: ambient,
                data,
            },
        }
    }

    pub fn field(&self) -> Fp {
        self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn basis_rows(&self) -> Vec<Vec<u64>> {
        (0..self.dim()).map(|r| self.basis.row(r).to_vec()).collect()
    }

    /// Reduces `v` against the basis; the remainder is zero iff `v` lies in
    /// the subspace.
    pub fn reduce(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(v.len(), self.ambient);
        let f = self.field;
        let p = f.modulus();
        let mut w = v.to_vec();
        for r in 0..self.dim() {
            let lead = (0..self.ambient).find(|&c| self.basis.get(r, c) != 0).unwrap();
            let coeff = w[lead];
            if coeff != 0 {
                for c in lead..self.ambient {
                    w[c] = (w[c] + (p - coeff) * self.basis.get(r, c)) % p;
                }
            }
        }
        w
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        (0..other.dim()).all(|r| self.contains(other.basis.row(r)))
    }

    /// Row space of the functionals vanishing on this subspace.
    pub fn annihilator_conditions(&self) -> Matrix {
        // q kills the row space iff basis * q^T = 0
        let ker = self.basis.kernel();
        ker.basis.clone()
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        if self.ambient != other.ambient {
            return Err(LinalgError::AmbientMismatch(self.ambient, other.ambient));
        }
        let qa = self.annihilator_conditions();
        let qb = other.annihilator_conditions();
        let mut rows = Vec::with_capacity(qa.rows() + qb.rows());
        for r in 0..qa.rows() {
            rows.push(qa.row(r).to_vec());
        }
        for r in 0..qb.rows() {
            rows.push(qb.row(r).to_vec());
        }
        let stacked = Matrix::from_rows(self.field, self.ambient, &rows);
        Ok(stacked.kernel())
    }
}

/// Smallest subspace containing `seeds` and closed under every operator.
pub fn spin(field: Fp, ambient: usize, seeds: &[Vec<u64>], ops: &[&Matrix]) -> Subspace {
    for op in ops {
        assert_eq!(op.rows(), ambient);
        assert_eq!(op.cols(), ambient);
    }
    let mut rows: Vec<Vec<u64>> = Vec::new();
    let mut space = Subspace::zero(field, ambient);
    let mut queue: Vec<Vec<u64>> = Vec::new();
    for s in seeds {
        let red = space.reduce(s);
        if red.iter().any(|&x| x != 0) {
            rows.push(red.clone());
            space = Subspace::from_rows(field, ambient, rows.clone());
            queue.push(s.clone());
        }
    }
    while let Some(v) = queue.pop() {
        for op in ops {
            let w = op.apply(&v);
            let red = space.reduce(&w);
            if red.iter().any(|&x| x != 0) {
                rows.push(red);
                space = Subspace::from_rows(field, ambient, rows.clone());
                queue.push(w);
            }
        }
    }
    space
}

/// Largest subspace N of `within` with op(N) ⊆ N for every operator,
/// by the fixed-point iteration N ← N ∩ op⁻¹(N).
pub fn largest_invariant_subspace(
    ops: &[&Matrix],
    within: &Subspace,
) -> Result<Subspace, LinalgError> {
    let ambient = within.ambient_dim();
    let field = within.field();
    for op in ops {
        if op.rows() != ambient || op.cols() != ambient {
            return Err(LinalgError::DimensionMismatch(format!(
                "operator is {}x{}, ambient is {}",
                op.rows(),
                op.cols(),
                ambient
            )));
        }
    }
    let mut current = within.clone();
    loop {
        let before = current.dim();
        // one full pass: preimage conditions of every operator at once
        let q = current.annihilator_conditions();
        let mut rows: Vec<Vec<u64>> = Vec::new();
        for r in 0..q.rows() {
            rows.push(q.row(r).to_vec());
        }
        for op in ops {
            let qm = q.mul(op);
            for r in 0..qm.rows() {
                rows.push(qm.row(r).to_vec());
            }
        }
        let stacked = Matrix::from_rows(field, ambient, &rows);
        current = stacked.kernel();
        if current.dim() == before {
            return Ok(current);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f5() -> Fp {
        Fp::new(5).unwrap()
    }

    #[test]
    fn rref_identity() {
        let id = Matrix::identity(f5(), 3);
        let (r, rank) = id.rref();
        assert_eq!(r, id);
        assert_eq!(rank, 3);
    }

    #[test]
    fn rref_zero() {
        let z = Matrix::zeros(f5(), 2, 4);
        let (r, rank) = z.rref();
        assert_eq!(r, z);
        assert_eq!(rank, 0);
    }

    #[test]
    fn rref_rank_one() {
        // [[1,2],[2,4]] over F_5 row-reduces to [[1,2],[0,0]]
        let m = Matrix::from_i64(f5(), 2, 2, &[1, 2, 2, 4]);
        let (r, rank) = m.rref();
        assert_eq!(rank, 1);
        assert_eq!(r.row(0), &[1, 2]);
        assert_eq!(r.row(1), &[0, 0]);
    }

    #[test]
    fn rref_idempotent() {
        let m = Matrix::from_i64(f5(), 3, 4, &[1, 2, 3, 4, 2, 4, 1, 3, 0, 1, 1, 1]);
        let (r1, _) = m.rref();
        let (r2, _) = r1.rref();
        assert_eq!(r1, r2);
    }

    #[test]
    fn kernel_identity_and_zero() {
        assert_eq!(Matrix::identity(f5(), 3).kernel().dim(), 0);
        assert_eq!(Matrix::zeros(f5(), 4, 4).kernel().dim(), 4);
    }

    #[test]
    fn kernel_row_vector() {
        // kernel of [1 2] over F_5 is spanned by (3,1): 1*3 + 2*1 = 5 = 0
        let m = Matrix::from_i64(f5(), 1, 2, &[1, 2]);
        let k = m.kernel();
        assert_eq!(k.dim(), 1);
        assert!(k.contains(&[3, 1]));
    }

    #[test]
    fn rank_nullity() {
        let m = Matrix::from_i64(f5(), 3, 5, &[1, 2, 0, 4, 1, 0, 0, 3, 3, 3, 1, 2, 3, 2, 4]);
        assert_eq!(m.rank() + m.kernel().dim(), m.cols());
    }

    #[test]
    fn intersect_basics() {
        let f = f5();
        let a = Subspace::from_rows(f, 3, vec![vec![1, 0, 0], vec![0, 1, 0]]);
        assert_eq!(a.intersect(&a).unwrap(), a);
        let full = Subspace::full(f, 3);
        assert_eq!(a.intersect(&full).unwrap(), a);
        let x = Subspace::from_rows(f, 2, vec![vec![1, 0]]);
        let y = Subspace::from_rows(f, 2, vec![vec![0, 1]]);
        assert_eq!(x.intersect(&y).unwrap().dim(), 0);
        assert!(x.intersect(&Subspace::zero(f, 3)).is_err());
    }

    #[test]
    fn spin_trivial_cases() {
        let f = f5();
        let zero_seed = vec![vec![0, 0]];
        assert_eq!(spin(f, 2, &zero_seed, &[]).dim(), 0);
        let seeds = vec![vec![1, 2], vec![2, 4]];
        let s = spin(f, 2, &seeds, &[]);
        assert_eq!(s.dim(), 1);
    }

    #[test]
    fn spin_shift_matrix() {
        // e_{12} sends (0,1) to (1,0); spinning (0,1) fills the plane
        let f = f5();
        let shift = Matrix::from_i64(f, 2, 2, &[0, 1, 0, 0]);
        let s = spin(f, 2, &[vec![0, 1]], &[&shift]);
        assert_eq!(s.dim(), 2);
        // closure: op * basis stays inside
        for row in s.basis_rows() {
            assert!(s.contains(&shift.apply(&row)));
        }
    }

    #[test]
    fn invariant_subspace_identity_and_zero_ops() {
        let f = f5();
        let w = Subspace::from_rows(f, 3, vec![vec![1, 0, 2], vec![0, 1, 1]]);
        let id = Matrix::identity(f, 3);
        assert_eq!(largest_invariant_subspace(&[&id], &w).unwrap(), w);
        let zero = Matrix::zeros(f, 3, 3);
        assert_eq!(largest_invariant_subspace(&[&zero], &w).unwrap(), w);
    }

    #[test]
    fn invariant_subspace_shift() {
        let f = f5();
        let shift = Matrix::from_i64(f, 2, 2, &[0, 1, 0, 0]);
        let line_x = Subspace::from_rows(f, 2, vec![vec![1, 0]]);
        assert_eq!(
            largest_invariant_subspace(&[&shift], &line_x).unwrap(),
            line_x
        );
        let line_y = Subspace::from_rows(f, 2, vec![vec![0, 1]]);
        assert_eq!(largest_invariant_subspace(&[&shift], &line_y).unwrap().dim(), 0);
    }

    #[test]
    fn invariant_subspace_is_maximal() {
        // exhaustive maximality check at small size: adjoining any vector of
        // `within` outside N breaks closure
        let f = f5();
        let p = 5u64;
        let op = Matrix::from_i64(f, 3, 3, &[0, 1, 0, 0, 0, 0, 0, 0, 2]);
        let within = Subspace::from_rows(f, 3, vec![vec![0, 1, 0], vec![0, 0, 1]]);
        let n = largest_invariant_subspace(&[&op], &within).unwrap();
        assert_eq!(n, Subspace::from_rows(f, 3, vec![vec![0, 0, 1]]));
        for a in 0..p {
            for b in 0..p {
                for c in 0..p {
                    let v = vec![a, b, c];
                    if v.iter().all(|&x| x == 0) || !within.contains(&v) || n.contains(&v) {
                        continue;
                    }
                    let mut rows = n.basis_rows();
                    rows.push(v);
                    let bigger = Subspace::from_rows(f, 3, rows);
                    let closed = bigger
                        .basis_rows()
                        .iter()
                        .all(|r| bigger.contains(&op.apply(r)));
                    assert!(!closed || !within.contains_subspace(&bigger));
                }
            }
        }
    }
}
