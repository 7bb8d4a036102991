//! The restricted Lie superalgebra p(n) in characteristic p.
//!
//! p(n) sits inside gl(2n) as block matrices `[[a, b], [c, -a^t]]` with `b`
//! symmetric and `c` skew-symmetric. The even part is gl(n) with basis
//! `e~(i,j) = e_ij - e_{j+n,i+n}` (so `h_i = e~(i,i)`), the degree -1 part
//! has basis `y(i,j) = e_{i+n,j} - e_{j+n,i}` for i < j, and the degree +1
//! part has basis `z(i,i) = e_{i,i+n}` and `z(i,j) = e_{i,j+n} + e_{j,i+n}`
//! for i < j. All structure constants are computed from the 2n x 2n matrix
//! realization and re-expressed in this basis, which is possible because
//! each basis vector owns a matrix entry no other basis vector touches.
//!
//! The p-mapping on the even part is the p-th matrix power; the full
//! bracket/p-power table is immutable after construction and shared by the
//! PBW engine and every module builder.

use crate::field::{is_prime, Fp};
use crate::linalg::Matrix;
use std::sync::Arc;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Parity {
    Even,
    Odd,
}

/// A basis vector of p(n). Indices are 1-based as in the matrix entries.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum BasisVector {
    /// `e~(i,j)` with 1 <= i,j <= n; `E(i,i)` is the Cartan element `h_i`.
    E(usize, usize),
    /// `y(i,j)` with i < j, degree -1.
    Y(usize, usize),
    /// `z(i,j)` with i <= j, degree +1.
    Z(usize, usize),
}

impl BasisVector {
    pub fn parity(&self) -> Parity {
        match self {
            BasisVector::E(_, _) => Parity::Even,
            _ => Parity::Odd,
        }
    }

    pub fn is_odd(&self) -> bool {
        self.parity() == Parity::Odd
    }

    pub fn z_degree(&self) -> i64 {
        match self {
            BasisVector::E(_, _) => 0,
            BasisVector::Y(_, _) => -1,
            BasisVector::Z(_, _) => 1,
        }
    }

    /// Integral T-weight in Z^n. The h-eigenvalue of every basis vector is
    /// this weight reduced mod p: e~(i,j) has weight eps_i - eps_j, y(i,j)
    /// has weight -(eps_i + eps_j) and z(i,j) has weight eps_i + eps_j,
    /// matching the adjoint action of the diagonal torus on the matrix
    /// realization.
    pub fn weight(&self, n: usize) -> Vec<i64> {
        let mut w = vec![0i64; n];
        match *self {
            BasisVector::E(i, j) => {
                w[i - 1] += 1;
                w[j - 1] -= 1;
            }
            BasisVector::Y(i, j) => {
                w[i - 1] -= 1;
                w[j - 1] -= 1;
            }
            BasisVector::Z(i, j) => {
                w[i - 1] += 1;
                w[j - 1] += 1;
            }
        }
        w
    }

    /// The 2n x 2n matrix realization over F_p.
    pub fn matrix(&self, n: usize, field: Fp) -> Matrix {
        let mut m = Matrix::zeros(field, 2 * n, 2 * n);
        let one = 1u64;
        let neg = field.neg(1);
        match *self {
            BasisVector::E(i, j) => {
                m.set(i - 1, j - 1, one);
                m.set(n + j - 1, n + i - 1, neg);
            }
            BasisVector::Y(i, j) => {
                m.set(n + i - 1, j - 1, one);
                m.set(n + j - 1, i - 1, neg);
            }
            BasisVector::Z(i, j) => {
                if i == j {
                    m.set(i - 1, n + i - 1, one);
                } else {
                    m.set(i - 1, n + j - 1, one);
                    m.set(j - 1, n + i - 1, one);
                }
            }
        }
        m
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum StructureError {
    #[error("rank must be at least 2, got {0}")]
    RankTooSmall(usize),
    #[error("p must be a prime greater than 3, got {0}")]
    BadPrime(u64),
}

/// Sparse vector in the p(n) basis: (basis index, coefficient) pairs.
pub type SparseVec = Vec<(usize, u64)>;

/// Brackets, p-powers and index bookkeeping for p(n), fixed after build.
pub struct StructureTable {
    n: usize,
    field: Fp,
    basis: Vec<BasisVector>,
    /// bracket[a][b] = super bracket [basis[a], basis[b]]
    bracket: Vec<Vec<SparseVec>>,
    /// p_power[a] for even a; `None` on odd indices
    p_power: Vec<Option<SparseVec>>,
}

impl StructureTable {
    /// Number of y generators (= dimension of the degree -1 part).
    pub fn d(&self) -> usize {
        self.n * (self.n - 1) / 2
    }

    /// Number of z generators (= dimension of the degree +1 part).
    pub fn z_count(&self) -> usize {
        self.n * (self.n + 1) / 2
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> u64 {
        self.field.modulus()
    }

    pub fn field(&self) -> Fp {
        self.field
    }

    pub fn dim(&self) -> usize {
        2 * self.n * self.n
    }

    pub fn basis(&self) -> &[BasisVector] {
        &self.basis
    }

    /// Global canonical position. Ordering: y block (lex), f block
    /// (e~(j,i) for i < j, lex by (i,j)), h_1..h_n, e block (e~(i,j),
    /// i < j, lex), z block (lex by (i,j), i <= j). This refinement of the
    /// triangular order (negative part, Cartan, positive part) is the
    /// normal-form order of the PBW engine.
    pub fn index_of(&self, bv: BasisVector) -> usize {
        let n = self.n;
        let d = self.d();
        match bv {
            BasisVector::Y(i, j) => pair_index_strict(n, i, j),
            BasisVector::E(i, j) => {
                if i > j {
                    d + pair_index_strict(n, j, i)
                } else if i == j {
                    2 * d + (i - 1)
                } else {
                    2 * d + n + pair_index_strict(n, i, j)
                }
            }
            BasisVector::Z(i, j) => 2 * d + n + d + pair_index_weak(n, i, j),
        }
    }

    pub fn bracket(&self, a: usize, b: usize) -> &SparseVec {
        &self.bracket[a][b]
    }

    pub fn p_power(&self, a: usize) -> Option<&SparseVec> {
        self.p_power[a].as_ref()
    }

    /// Builds the table from the matrix realization.
    pub fn build(n: usize, p: u64) -> Result<Arc<StructureTable>, StructureError> {
        if n < 2 {
            return Err(StructureError::RankTooSmall(n));
        }
        if p <= 3 || !is_prime(p) {
            return Err(StructureError::BadPrime(p));
        }
        let field = Fp::new(p).expect("checked prime");
        let basis = enumerate_basis(n);
        let dim = basis.len();
        debug_assert_eq!(dim, 2 * n * n);

        let mats: Vec<Matrix> = basis.iter().map(|bv| bv.matrix(n, field)).collect();
        let mut table = StructureTable {
            n,
            field,
            basis: basis.clone(),
            bracket: Vec::with_capacity(dim),
            p_power: vec![None; dim],
        };
        // sanity: the canonical order enumerates exactly 0..dim
        for (k, bv) in basis.iter().enumerate() {
            assert_eq!(table.index_of(*bv), k);
        }

        for a in 0..dim {
            let mut row = Vec::with_capacity(dim);
            for b in 0..dim {
                let ab = mats[a].mul(&mats[b]);
                let ba = mats[b].mul(&mats[a]);
                let sup = if basis[a].is_odd() && basis[b].is_odd() {
                    ab.add(&ba)
                } else {
                    ab.sub(&ba)
                };
                row.push(table.expand_in_basis(&sup, &mats));
            }
            table.bracket.push(row);
        }
        for a in 0..dim {
            if basis[a].is_odd() {
                continue;
            }
            let mp = mats[a].pow(p);
            let coords = table.expand_in_basis(&mp, &mats);
            assert!(
                coords.iter().all(|&(k, _)| !basis[k].is_odd()),
                "p-th power of an even matrix must be even"
            );
            table.p_power[a] = Some(coords);
        }
        Ok(Arc::new(table))
    }

    /// Expresses a 2n x 2n matrix in the p(n) basis, panicking if it is not
    /// in the span (cannot happen for brackets and p-powers of the basis).
    fn expand_in_basis(&self, m: &Matrix, mats: &[Matrix]) -> SparseVec {
        let n = self.n;
        let mut coords: SparseVec = Vec::new();
        for (k, bv) in self.basis.iter().enumerate() {
            let c = match *bv {
                BasisVector::E(i, j) => m.get(i - 1, j - 1),
                BasisVector::Y(i, j) => m.get(n + i - 1, j - 1),
                BasisVector::Z(i, j) => m.get(i - 1, n + j - 1),
            };
            if c != 0 {
                coords.push((k, c));
            }
        }
        let mut recon = Matrix::zeros(self.field, 2 * n, 2 * n);
        for &(k, c) in &coords {
            recon = recon.add(&mats[k].scale(c));
        }
        assert_eq!(&recon, m, "matrix not in the span of the p(n) basis");
        coords
    }

    /// Matrix of `ad x` on g in the canonical basis order.
    pub fn ad_matrix(&self, x: usize) -> Matrix {
        let dim = self.dim();
        let mut m = Matrix::zeros(self.field, dim, dim);
        for b in 0..dim {
            for &(k, c) in &self.bracket[x][b] {
                m.set(k, b, c);
            }
        }
        m
    }

    /// Verifies (ad x)^p = ad(x^{[p]}) for every even basis vector x.
    /// Returns the list of violations (expected empty).
    pub fn check_restrictedness(&self) -> Vec<String> {
        let mut violations = Vec::new();
        for a in 0..self.dim() {
            let Some(pp) = &self.p_power[a] else { continue };
            let lhs = self.ad_matrix(a).pow(self.p());
            let mut rhs = Matrix::zeros(self.field, self.dim(), self.dim());
            for &(k, c) in pp {
                rhs = rhs.add(&self.ad_matrix(k).scale(c));
            }
            if lhs != rhs {
                violations.push(format!("(ad {:?})^p != ad({:?}^[p])", self.basis[a], self.basis[a]));
            }
        }
        violations
    }

    /// Bilinear extension of the bracket to sparse vectors.
    pub fn bracket_sparse(&self, a: &SparseVec, b: &SparseVec) -> SparseVec {
        let f = self.field;
        let mut acc = vec![0u64; self.dim()];
        for &(i, ci) in a {
            for &(j, cj) in b {
                let c = f.mul(ci, cj);
                for &(k, ck) in &self.bracket[i][j] {
                    acc[k] = f.add(acc[k], f.mul(c, ck));
                }
            }
        }
        acc.into_iter()
            .enumerate()
            .filter(|&(_, v)| v != 0)
            .collect()
    }

    /// Graded antisymmetry over all basis pairs; violations returned.
    pub fn check_antisymmetry(&self) -> Vec<String> {
        let f = self.field;
        let mut violations = Vec::new();
        for a in 0..self.dim() {
            for b in 0..self.dim() {
                let sign_neg = !(self.basis[a].is_odd() && self.basis[b].is_odd());
                let mut rhs = self.bracket[b][a].clone();
                if sign_neg {
                    for e in rhs.iter_mut() {
                        e.1 = f.neg(e.1);
                    }
                }
                if self.bracket[a][b] != rhs {
                    violations.push(format!("[{:?},{:?}]", self.basis[a], self.basis[b]));
                }
            }
        }
        violations
    }

    /// Graded Jacobi in Leibniz form, exhaustively over basis triples:
    /// [a,[b,c]] = [[a,b],c] + (-1)^{|a||b|} [b,[a,c]].
    pub fn check_jacobi(&self) -> Vec<String> {
        let f = self.field;
        let mut violations = Vec::new();
        for a in 0..self.dim() {
            for b in 0..self.dim() {
                let ab = self.bracket[a][b].clone();
                let sign = self.basis[a].is_odd() && self.basis[b].is_odd();
                for c in 0..self.dim() {
                    let lhs = self.bracket_sparse(&[(a, 1)].to_vec(), &self.bracket[b][c]);
                    let t1 = self.bracket_sparse(&ab, &[(c, 1)].to_vec());
                    let mut t2 = self.bracket_sparse(&[(b, 1)].to_vec(), &self.bracket[a][c]);
                    if sign {
                        for e in t2.iter_mut() {
                            e.1 = f.neg(e.1);
                        }
                    }
                    let rhs = add_sparse(f, &t1, &t2);
                    if lhs != rhs {
                        violations.push(format!(
                            "jacobi({:?},{:?},{:?})",
                            self.basis[a], self.basis[b], self.basis[c]
                        ));
                    }
                }
            }
        }
        violations
    }

    /// Brackets respect the Z-grading and integral weights.
    pub fn check_gradings(&self) -> Vec<String> {
        let mut violations = Vec::new();
        for a in 0..self.dim() {
            for b in 0..self.dim() {
                let zd = self.basis[a].z_degree() + self.basis[b].z_degree();
                let mut wt = self.basis[a].weight(self.n);
                for (w, v) in wt.iter_mut().zip(self.basis[b].weight(self.n)) {
                    *w += v;
                }
                for &(k, _) in &self.bracket[a][b] {
                    if self.basis[k].z_degree() != zd {
                        violations.push(format!(
                            "z-degree of [{:?},{:?}]",
                            self.basis[a], self.basis[b]
                        ));
                    }
                    if self.basis[k].weight(self.n) != wt {
                        violations.push(format!(
                            "weight of [{:?},{:?}]",
                            self.basis[a], self.basis[b]
                        ));
                    }
                }
            }
        }
        violations
    }
}

pub fn add_sparse(f: Fp, a: &SparseVec, b: &SparseVec) -> SparseVec {
    let mut m = std::collections::BTreeMap::new();
    for &(k, c) in a.iter().chain(b.iter()) {
        let e = m.entry(k).or_insert(0u64);
        *e = f.add(*e, c);
    }
    m.into_iter().filter(|&(_, v)| v != 0).collect()
}

/// 0-based rank of the pair (i,j), i < j, in lex order.
pub fn pair_index_strict(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(1 <= i && i < j && j <= n);
    (i - 1) * n - (i - 1) * i / 2 + (j - i - 1)
}

/// 0-based rank of the pair (i,j), i <= j, in lex order.
pub fn pair_index_weak(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(1 <= i && i <= j && j <= n);
    (i - 1) * (n + 1) - i * (i - 1) / 2 + (j - i)
}

pub fn strict_pairs(n: usize) -> Vec<(usize, usize)> {
    let mut v = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            v.push((i, j));
        }
    }
    v
}

pub fn weak_pairs(n: usize) -> Vec<(usize, usize)> {
    let mut v = Vec::new();
    for i in 1..=n {
        for j in i..=n {
            v.push((i, j));
        }
    }
    v
}

fn enumerate_basis(n: usize) -> Vec<BasisVector> {
    let mut basis = Vec::with_capacity(2 * n * n);
    for (i, j) in strict_pairs(n) {
        basis.push(BasisVector::Y(i, j));
    }
    for (i, j) in strict_pairs(n) {
        basis.push(BasisVector::E(j, i));
    }
    for i in 1..=n {
        basis.push(BasisVector::E(i, i));
    }
    for (i, j) in strict_pairs(n) {
        basis.push(BasisVector::E(i, j));
    }
    for (i, j) in weak_pairs(n) {
        basis.push(BasisVector::Z(i, j));
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table25() -> Arc<StructureTable> {
        StructureTable::build(2, 5).unwrap()
    }

    fn coords(t: &StructureTable, v: &[(BasisVector, i64)]) -> SparseVec {
        let f = t.field();
        let mut out: SparseVec = v
            .iter()
            .map(|&(bv, c)| (t.index_of(bv), f.reduce_i64(c)))
            .collect();
        out.sort();
        out
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(StructureTable::build(1, 5).is_err());
        assert!(StructureTable::build(2, 4).is_err());
        assert!(StructureTable::build(2, 3).is_err());
    }

    #[test]
    fn dimension_counts() {
        let t = table25();
        assert_eq!(t.dim(), 8);
        assert_eq!(t.d(), 1);
        assert_eq!(t.z_count(), 3);
        let t3 = StructureTable::build(3, 7).unwrap();
        assert_eq!(t3.dim(), 18);
        assert_eq!(t3.d(), 3);
        assert_eq!(t3.z_count(), 6);
    }

    #[test]
    fn bracket_h1_z11() {
        // [h_1, z_11] = 2 z_11: z(1,1) has weight 2 eps_1
        let t = table25();
        let h1 = t.index_of(BasisVector::E(1, 1));
        let z11 = t.index_of(BasisVector::Z(1, 1));
        assert_eq!(t.bracket(h1, z11), &coords(&t, &[(BasisVector::Z(1, 1), 2)]));
    }

    #[test]
    fn bracket_z11_y12() {
        // {z_11, y_12} = e~(1,2): anticommutator of e_13 with e_32 - e_41
        let t = table25();
        let z11 = t.index_of(BasisVector::Z(1, 1));
        let y12 = t.index_of(BasisVector::Y(1, 2));
        assert_eq!(
            t.bracket(z11, y12),
            &coords(&t, &[(BasisVector::E(1, 2), 1)])
        );
    }

    #[test]
    fn bracket_z12_y12() {
        // {z_12, y_12} = -(h_1 - h_2)
        let t = table25();
        let z12 = t.index_of(BasisVector::Z(1, 2));
        let y12 = t.index_of(BasisVector::Y(1, 2));
        assert_eq!(
            t.bracket(z12, y12),
            &coords(&t, &[(BasisVector::E(1, 1), -1), (BasisVector::E(2, 2), 1)])
        );
    }

    #[test]
    fn bracket_e12_e21() {
        let t = table25();
        let e12 = t.index_of(BasisVector::E(1, 2));
        let e21 = t.index_of(BasisVector::E(2, 1));
        assert_eq!(
            t.bracket(e12, e21),
            &coords(&t, &[(BasisVector::E(1, 1), 1), (BasisVector::E(2, 2), -1)])
        );
    }

    #[test]
    fn p_power_table() {
        let t = table25();
        let h1 = t.index_of(BasisVector::E(1, 1));
        let e12 = t.index_of(BasisVector::E(1, 2));
        let y12 = t.index_of(BasisVector::Y(1, 2));
        assert_eq!(t.p_power(h1).unwrap(), &vec![(h1, 1)]);
        assert_eq!(t.p_power(e12).unwrap(), &Vec::new());
        assert!(t.p_power(y12).is_none());
    }

    #[test]
    fn ad_h_is_diagonal_with_weights() {
        let t = table25();
        for i in 1..=2 {
            let h = t.index_of(BasisVector::E(i, i));
            let ad = t.ad_matrix(h);
            for (b, bv) in t.basis().iter().enumerate() {
                for k in 0..t.dim() {
                    let expect = if k == b {
                        t.field().reduce_i64(bv.weight(2)[i - 1])
                    } else {
                        0
                    };
                    assert_eq!(ad.get(k, b), expect);
                }
            }
        }
    }

    #[test]
    fn ad_y12_squares_to_zero() {
        let t = table25();
        let y12 = t.index_of(BasisVector::Y(1, 2));
        let ad = t.ad_matrix(y12);
        assert!(ad.mul(&ad).is_zero());
    }

    #[test]
    fn ad_e12_is_nilpotent_traceless() {
        let t = table25();
        let e12 = t.index_of(BasisVector::E(1, 2));
        let ad = t.ad_matrix(e12);
        let mut trace = 0i64;
        for k in 0..t.dim() {
            trace += ad.get(k, k) as i64;
        }
        assert_eq!(trace % 5, 0);
        assert!(ad.pow(5).is_zero());
    }

    #[test]
    fn structure_checks_pass_small() {
        for (n, p) in [(2usize, 5u64), (3, 7)] {
            let t = StructureTable::build(n, p).unwrap();
            assert!(t.check_antisymmetry().is_empty());
            assert!(t.check_jacobi().is_empty());
            assert!(t.check_gradings().is_empty());
            assert!(t.check_restrictedness().is_empty());
        }
    }

    #[test]
    fn pair_indexing_roundtrip() {
        for n in 2..=5 {
            for (k, (i, j)) in strict_pairs(n).into_iter().enumerate() {
                assert_eq!(pair_index_strict(n, i, j), k);
            }
            for (k, (i, j)) in weak_pairs(n).into_iter().enumerate() {
                assert_eq!(pair_index_weak(n, i, j), k);
            }
        }
    }
}
