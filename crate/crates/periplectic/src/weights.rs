//! Weights mod p, the dot action of the Weyl group, typicality and linkage.
//!
//! Λ₀ = F_p^n is the set of restricted weights. The Weyl group is S_n
//! permuting coordinates; its dot action is w·λ = w(λ+ρ) − ρ with
//! ρ = (n-1, ..., 1, 0). The typicality polynomial Θ is the product of the
//! linear factors Θ_ij = h_i - h_j + j - i - 1 over ordered pairs i ≠ j,
//! and δ is the product over i < j. Two weights are linked when their
//! ρ-shifts lie in one S_n orbit.

use crate::field::{Fp, Scalar};
use crate::linalg::{Matrix, Subspace};
use crate::pbw::{h_rank, h_unrank, HPolynomial};
use std::collections::BTreeSet;
use std::fmt;

/// A point of Λ₀ = F_p^n.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Weight {
    coords: Vec<u64>,
    p: u64,
}

impl Weight {
    pub fn new(coords: Vec<i64>, p: u64) -> Self {
        let f = Fp::new(p).unwrap();
        Weight {
            coords: coords.into_iter().map(|c| f.reduce_i64(c)).collect(),
            p,
        }
    }

    pub fn from_residues(coords: Vec<u64>, p: u64) -> Self {
        assert!(coords.iter().all(|&c| c < p));
        Weight { coords, p }
    }

    pub fn zero(n: usize, p: u64) -> Self {
        Weight {
            coords: vec![0; n],
            p,
        }
    }

    pub fn coords(&self) -> &[u64] {
        &self.coords
    }

    pub fn n(&self) -> usize {
        self.coords.len()
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn add(&self, other: &Weight) -> Weight {
        assert_eq!(self.p, other.p);
        let f = Fp::new(self.p).unwrap();
        Weight {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(&a, &b)| f.add(a, b))
                .collect(),
            p: self.p,
        }
    }

    pub fn sub(&self, other: &Weight) -> Weight {
        assert_eq!(self.p, other.p);
        let f = Fp::new(self.p).unwrap();
        Weight {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(&a, &b)| f.sub(a, b))
                .collect(),
            p: self.p,
        }
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// ρ = (n-1, n-2, ..., 1, 0) reduced mod p; ρ(h_i - h_{i+1}) = 1.
pub fn rho(n: usize, p: u64) -> Weight {
    Weight::new((0..n).map(|i| (n - 1 - i) as i64).collect(), p)
}

/// A Weyl group element: a permutation of {0, .., n-1}; `perm[i]` is the
/// image of i.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct WeylElement {
    perm: Vec<usize>,
}

impl WeylElement {
    pub fn identity(n: usize) -> Self {
        WeylElement {
            perm: (0..n).collect(),
        }
    }

    /// Transposition of 1-based coordinates i and j.
    pub fn transposition(n: usize, i: usize, j: usize) -> Self {
        let mut perm: Vec<usize> = (0..n).collect();
        perm.swap(i - 1, j - 1);
        WeylElement { perm }
    }

    pub fn n(&self) -> usize {
        self.perm.len()
    }

    pub fn image(&self, i: usize) -> usize {
        self.perm[i]
    }

    /// (self ∘ other)(i) = self(other(i)).
    pub fn compose(&self, other: &WeylElement) -> WeylElement {
        assert_eq!(self.n(), other.n());
        WeylElement {
            perm: other.perm.iter().map(|&i| self.perm[i]).collect(),
        }
    }

    pub fn inverse(&self) -> WeylElement {
        let mut inv = vec![0; self.n()];
        for (i, &j) in self.perm.iter().enumerate() {
            inv[j] = i;
        }
        WeylElement { perm: inv }
    }

    /// Plain permutation action: (w v)_{w(i)} = v_i.
    pub fn permute(&self, v: &Weight) -> Weight {
        let mut out = vec![0u64; v.n()];
        for (i, &c) in v.coords.iter().enumerate() {
            out[self.perm[i]] = c;
        }
        Weight {
            coords: out,
            p: v.p,
        }
    }

    /// Dot action w·λ = w(λ+ρ) − ρ.
    pub fn dot(&self, lambda: &Weight) -> Weight {
        let r = rho(lambda.n(), lambda.p);
        self.permute(&lambda.add(&r)).sub(&r)
    }

    /// Adjacent transpositions s_1, ..., s_{n-1}; they generate.
    pub fn generators(n: usize) -> Vec<WeylElement> {
        (1..n).map(|i| Self::transposition(n, i, i + 1)).collect()
    }

    /// The whole group, enumerated by closure over the generators.
    pub fn all(n: usize) -> Vec<WeylElement> {
        let mut seen = BTreeSet::new();
        let mut out = vec![WeylElement::identity(n)];
        seen.insert(out[0].perm.clone());
        let gens = Self::generators(n);
        let mut frontier = out.clone();
        while let Some(w) = frontier.pop() {
            for g in &gens {
                let next = w.compose(g);
                if seen.insert(next.perm.clone()) {
                    out.push(next.clone());
                    frontier.push(next);
                }
            }
        }
        out
    }
}

/// Θ_ij evaluated at μ: μ_i − μ_j + j − i − 1 (1-based indices, i ≠ j).
pub fn theta_ij(i: usize, j: usize, mu: &Weight) -> Scalar {
    assert_ne!(i, j);
    let f = Fp::new(mu.p).unwrap();
    let v = mu.coords[i - 1] as i64 - mu.coords[j - 1] as i64 + j as i64 - i as i64 - 1;
    Scalar {
        value: f.reduce_i64(v),
        p: mu.p,
    }
}

/// Θ(μ) = Π_{i≠j} Θ_ij(μ).
pub fn theta(mu: &Weight) -> Scalar {
    let f = Fp::new(mu.p).unwrap();
    let n = mu.n();
    let mut acc = 1u64;
    for i in 1..=n {
        for j in 1..=n {
            if i != j {
                acc = f.mul(acc, theta_ij(i, j, mu).value);
            }
        }
    }
    Scalar { value: acc, p: mu.p }
}

/// δ_μ = Π_{i<j} Θ_ij(μ), the Kac-simplicity scalar.
pub fn delta(mu: &Weight) -> Scalar {
    let f = Fp::new(mu.p).unwrap();
    let n = mu.n();
    let mut acc = 1u64;
    for i in 1..=n {
        for j in i + 1..=n {
            acc = f.mul(acc, theta_ij(i, j, mu).value);
        }
    }
    Scalar { value: acc, p: mu.p }
}

pub fn is_typical(mu: &Weight) -> bool {
    !theta(mu).is_zero()
}

/// All of Λ₀ in lex order (first coordinate fastest).
pub fn all_weights(n: usize, p: u64) -> Vec<Weight> {
    let total = (p as usize).pow(n as u32);
    (0..total)
        .map(|r| Weight {
            coords: h_unrank(r, n, p).into_iter().map(|x| x as u64).collect(),
            p,
        })
        .collect()
}

pub fn weight_rank(mu: &Weight) -> usize {
    let exp: Vec<u8> = mu.coords.iter().map(|&c| c as u8).collect();
    h_rank(&exp, mu.p)
}

/// The atypical wall s_ij = {μ : Θ_ij(μ) = 0}.
pub fn atypical_wall_members(i: usize, j: usize, n: usize, p: u64) -> Vec<Weight> {
    all_weights(n, p)
        .into_iter()
        .filter(|mu| theta_ij(i, j, mu).is_zero())
        .collect()
}

/// Union of all walls = the atypical weights.
pub fn atypical_set(n: usize, p: u64) -> Vec<Weight> {
    all_weights(n, p)
        .into_iter()
        .filter(|mu| !is_typical(mu))
        .collect()
}

/// The dot orbit of μ, by closure over the generating transpositions.
pub fn linkage_class(mu: &Weight) -> Vec<Weight> {
    let gens = WeylElement::generators(mu.n());
    let mut seen = BTreeSet::new();
    seen.insert(mu.clone());
    let mut frontier = vec![mu.clone()];
    while let Some(w) = frontier.pop() {
        for g in &gens {
            let next = g.dot(&w);
            if seen.insert(next.clone()) {
                frontier.push(next);
            }
        }
    }
    seen.into_iter().collect()
}

pub fn linked(mu: &Weight, nu: &Weight) -> bool {
    linkage_class(mu).contains(nu)
}

/// Partition of Λ₀ into dot orbits, each sorted, orbits sorted by minimum.
pub fn dot_orbits(n: usize, p: u64) -> Vec<Vec<Weight>> {
    let mut unassigned: BTreeSet<Weight> = all_weights(n, p).into_iter().collect();
    let mut orbits = Vec::new();
    while let Some(mu) = unassigned.iter().next().cloned() {
        let orbit = linkage_class(&mu);
        for w in &orbit {
            unassigned.remove(w);
        }
        orbits.push(orbit);
    }
    orbits
}

/// Θ_ij as an element of u(h): h_i − h_j + (j − i − 1).
pub fn theta_ij_poly(n: usize, p: u64, i: usize, j: usize) -> HPolynomial {
    let hi = HPolynomial::h(n, p, i);
    let hj = HPolynomial::h(n, p, j);
    let c = HPolynomial::constant(n, p, j as i64 - i as i64 - 1);
    hi.sub(&hj).add(&c)
}

/// Θ = Π_{i≠j} Θ_ij in u(h).
pub fn theta_poly(n: usize, p: u64) -> HPolynomial {
    let mut acc = HPolynomial::one(n, p);
    for i in 1..=n {
        for j in 1..=n {
            if i != j {
                acc = acc.mul(&theta_ij_poly(n, p, i, j));
            }
        }
    }
    acc
}

/// δ = Π_{i<j} Θ_ij in u(h).
pub fn delta_poly(n: usize, p: u64) -> HPolynomial {
    let mut acc = HPolynomial::one(n, p);
    for i in 1..=n {
        for j in i + 1..=n {
            acc = acc.mul(&theta_ij_poly(n, p, i, j));
        }
    }
    acc
}

/// Dot action on u(h): (w·f)(λ) = f(w⁻¹·λ), computed by the substitution
/// h_i ↦ h_{w(i)} + (ρ_{w(i)} − ρ_i) and re-reduction.
pub fn dot_action_on_uh(w: &WeylElement, f: &HPolynomial) -> HPolynomial {
    let n = f.n();
    let p = f.p();
    let r = rho(n, p);
    let fp = Fp::new(p).unwrap();
    // images of the variables
    let mut images = Vec::with_capacity(n);
    for i in 0..n {
        let target = w.image(i);
        let shift = fp.sub(r.coords()[target], r.coords()[i]);
        let img = HPolynomial::h(n, p, target + 1).add(&HPolynomial::constant(n, p, shift as i64));
        images.push(img);
    }
    let mut out = HPolynomial::zero(n, p);
    for (exp, &c) in f.coeffs() {
        let mut term = HPolynomial::constant(n, p, c as i64);
        for (i, &e) in exp.iter().enumerate() {
            for _ in 0..e {
                term = term.mul(&images[i]);
            }
        }
        out = out.add(&term);
    }
    out
}

/// The dot-invariants u(h)^{W·} as a subspace of the p^n-dimensional u(h),
/// coordinates ranked by [`h_rank`].
pub fn invariants_uh(n: usize, p: u64) -> Subspace {
    let field = Fp::new(p).unwrap();
    let size = (p as usize).pow(n as u32);
    let mut conditions: Vec<Vec<u64>> = Vec::new();
    for s in WeylElement::generators(n) {
        // column r of (s·(-) - id) in the monomial basis
        let mut cols: Vec<Vec<u64>> = Vec::with_capacity(size);
        for r in 0..size {
            let mono = HPolynomial::from_dense(n, p, &unit_vec(size, r));
            let moved = dot_action_on_uh(&s, &mono);
            let mut col = moved.to_dense();
            col[r] = field.sub(col[r], 1);
            cols.push(col);
        }
        // condition rows: one per output coordinate
        for o in 0..size {
            conditions.push((0..size).map(|r| cols[r][o]).collect());
        }
    }
    Matrix::from_rows(field, size, &conditions).kernel()
}

fn unit_vec(size: usize, k: usize) -> Vec<u64> {
    let mut v = vec![0u64; size];
    v[k] = 1;
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rho_values() {
        let r = rho(2, 5);
        assert_eq!(r.coords(), &[1, 0]);
        let r3 = rho(3, 7);
        assert_eq!(r3.coords(), &[2, 1, 0]);
    }

    #[test]
    fn dot_identity_and_example() {
        let id = WeylElement::identity(2);
        let mu = Weight::new(vec![3, 1], 5);
        assert_eq!(id.dot(&mu), mu);
        // s·(0,0) = (4,1) at n=2, p=5
        let s = WeylElement::transposition(2, 1, 2);
        let nu = Weight::zero(2, 5);
        assert_eq!(s.dot(&nu), Weight::new(vec![4, 1], 5));
    }

    #[test]
    fn dot_is_group_action() {
        let all = WeylElement::all(3);
        assert_eq!(all.len(), 6);
        for w1 in &all {
            for w2 in &all {
                for mu in [Weight::new(vec![1, 4, 2], 5), Weight::new(vec![0, 3, 3], 5)] {
                    assert_eq!(w1.dot(&w2.dot(&mu)), w1.compose(w2).dot(&mu));
                }
            }
        }
    }

    #[test]
    fn dot_action_independent_of_rho_shift() {
        // with ρ' = ρ + (1,...,1) the dot action is unchanged
        let p = 5;
        for w in WeylElement::all(2) {
            for mu in all_weights(2, p) {
                let r = rho(2, p);
                let shift = Weight::new(vec![1, 1], p);
                let r2 = r.add(&shift);
                let alt = w.permute(&mu.add(&r2)).sub(&r2);
                assert_eq!(w.dot(&mu), alt);
            }
        }
    }

    #[test]
    fn theta_values_n2() {
        let p = 5;
        let mu = Weight::new(vec![0, 0], p);
        assert!(theta_ij(1, 2, &mu).is_zero());
        assert!(theta(&mu).is_zero());
        assert!(delta(&mu).is_zero());
        let mu = Weight::new(vec![1, 0], p);
        assert_eq!(theta_ij(1, 2, &mu).value, 1);
        assert_eq!(theta_ij(2, 1, &mu).value, 2); // -3 mod 5
        assert_eq!(theta(&mu).value, 2);
        assert_eq!(delta(&mu).value, 1);
    }

    #[test]
    fn staircase_weight_is_typical() {
        // (n-1, ..., 1, 0) is typical when p > 2n-1
        for (n, p) in [(2usize, 5u64), (3, 7)] {
            let lam = Weight::new((0..n).map(|i| (n - 1 - i) as i64).collect(), p);
            assert!(is_typical(&lam));
        }
    }

    #[test]
    fn atypical_census_25() {
        let atyp = atypical_set(2, 5);
        assert_eq!(atyp.len(), 10);
        for mu in &atyp {
            let dfrnc = (mu.coords()[0] + 5 - mu.coords()[1]) % 5;
            assert!(dfrnc == 0 || dfrnc == 3);
        }
        let typical: Vec<_> = all_weights(2, 5).into_iter().filter(is_typical).collect();
        assert_eq!(typical.len(), 15);
        // union of walls = atypical set
        let mut union: BTreeSet<Weight> = BTreeSet::new();
        for (i, j) in [(1, 2), (2, 1)] {
            union.extend(atypical_wall_members(i, j, 2, 5));
        }
        assert_eq!(union.len(), 10);
        assert!(atyp.iter().all(|mu| union.contains(mu)));
    }

    #[test]
    fn orbit_structure_25() {
        let orbits = dot_orbits(2, 5);
        assert_eq!(orbits.len(), 15);
        for o in &orbits {
            assert!(o.len() == 1 || o.len() == 2);
        }
        let fixed = orbits.iter().filter(|o| o.len() == 1).count();
        assert_eq!(fixed, 5);
        assert!(linked(&Weight::zero(2, 5), &Weight::new(vec![4, 1], 5)));
        // membership is reflexive
        let mu = Weight::new(vec![2, 3], 5);
        assert!(linkage_class(&mu).contains(&mu));
    }

    #[test]
    fn typicality_is_linkage_invariant() {
        for mu in all_weights(2, 5) {
            let t = is_typical(&mu);
            for nu in linkage_class(&mu) {
                assert_eq!(is_typical(&nu), t);
            }
        }
    }

    #[test]
    fn theta_poly_matches_pointwise() {
        let th = theta_poly(2, 5);
        let dl = delta_poly(2, 5);
        for mu in all_weights(2, 5) {
            assert_eq!(th.evaluate(&mu).value, theta(&mu).value);
            assert_eq!(dl.evaluate(&mu).value, delta(&mu).value);
        }
    }

    #[test]
    fn theta_poly_factorization_n3() {
        // Θ as a coefficient map equals the product of its linear factors
        let n = 3;
        let p = 7;
        let mut prod = HPolynomial::one(n, p);
        for i in 1..=n {
            for j in 1..=n {
                if i != j {
                    prod = prod.mul(&theta_ij_poly(n, p, i, j));
                }
            }
        }
        assert_eq!(prod, theta_poly(n, p));
        for mu in all_weights(n, p) {
            assert_eq!(prod.evaluate(&mu).value, theta(&mu).value);
        }
    }

    #[test]
    fn dot_action_on_uh_defining_property() {
        let n = 2;
        let p = 5;
        // f = 2 h1^3 h2 + h2^2 + 3
        let mut f = HPolynomial::zero(n, p);
        f.add_term(vec![3, 1], 2);
        f.add_term(vec![0, 2], 1);
        f.add_term(vec![0, 0], 3);
        for w in WeylElement::all(n) {
            let wf = dot_action_on_uh(&w, &f);
            let winv = w.inverse();
            for lam in all_weights(n, p) {
                assert_eq!(
                    wf.evaluate(&lam).value,
                    f.evaluate(&winv.dot(&lam)).value,
                    "w = {:?}, lam = {}",
                    w,
                    lam
                );
            }
        }
        // w·1 = 1
        let one = HPolynomial::one(n, p);
        for w in WeylElement::all(n) {
            assert_eq!(dot_action_on_uh(&w, &one), one);
        }
    }

    #[test]
    fn theta_is_dot_invariant_and_in_invariants_subspace() {
        let th = theta_poly(2, 5);
        for s in WeylElement::generators(2) {
            assert_eq!(dot_action_on_uh(&s, &th), th);
        }
        let inv = invariants_uh(2, 5);
        assert!(inv.contains(&th.to_dense()));
        // invariant functions = functions constant on dot orbits
        assert_eq!(inv.dim(), dot_orbits(2, 5).len());
    }
}
