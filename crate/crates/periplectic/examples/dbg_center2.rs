use periplectic::field::Fp;
use periplectic::linalg::{Matrix, Subspace};
use periplectic::pbw::{Engine, HPolynomial, Mode, PBWMonomial};
use periplectic::structure::{BasisVector, StructureTable};
use periplectic::weights::{all_weights, atypical_set, dot_orbits, dot_action_on_uh, invariants_uh, is_typical, theta_poly, WeylElement};
use std::collections::{BTreeMap, HashMap};
use std::time::Instant;

// per-weight-component row reduction; rows are sparse maps monomial -> coeff
struct GradedReducer {
    p: u64,
    comps: HashMap<Vec<i64>, Vec<BTreeMap<PBWMonomial, u64>>>,
}

impl GradedReducer {
    fn new(p: u64) -> Self { GradedReducer { p, comps: HashMap::new() } }
    fn inv(&self, a: u64) -> u64 {
        let mut acc = 1; let mut b = a % self.p; let mut e = self.p - 2;
        while e > 0 { if e & 1 == 1 { acc = acc * b % self.p; } b = b * b % self.p; e >>= 1; }
        acc
    }
    /// reduce a sparse row in place against one component; rows kept with
    /// normalized leading coeff, sorted insert by leading monomial
    fn insert(&mut self, w: Vec<i64>, mut row: BTreeMap<PBWMonomial, u64>) -> bool {
        let p = self.p;
        let pinv = |a: u64| { let mut acc = 1u64; let mut b = a % p; let mut e = p - 2; while e > 0 { if e & 1 == 1 { acc = acc * b % p; } b = b * b % p; e >>= 1; } acc };
        let comp = self.comps.entry(w).or_default();
        loop {
            row.retain(|_, v| *v % p != 0);
            let Some((lead_m, &lead_c)) = row.iter().next().map(|(k, v)| (k.clone(), v)) else { return false };
            if let Some(r) = comp.iter().find(|r| r.keys().next() == Some(&lead_m)) {
                let r = r.clone();
                for (m, &v) in &r {
                    let e = row.entry(m.clone()).or_insert(0);
                    *e = (*e + (p - lead_c % p) * v) % p;
                }
            } else {
                let li = pinv(lead_c);
                let norm: BTreeMap<PBWMonomial, u64> = row.iter().map(|(k, &v)| (k.clone(), v * li % p)).collect();
                comp.push(norm);
                return true;
            }
        }
    }
    fn reduce(&self, w: &Vec<i64>, mut row: BTreeMap<PBWMonomial, u64>) -> BTreeMap<PBWMonomial, u64> {
        let p = self.p;
        let Some(comp) = self.comps.get(w) else {
            row.retain(|_, v| *v % p != 0);
            return row;
        };
        loop {
            row.retain(|_, v| *v % p != 0);
            let Some((lead_m, &lead_c)) = row.iter().next().map(|(k, v)| (k.clone(), v)) else { return row };
            if let Some(r) = comp.iter().find(|r| r.keys().next() == Some(&lead_m)) {
                let r = r.clone();
                for (m, &v) in &r {
                    let e = row.entry(m.clone()).or_insert(0);
                    *e = (*e + (p - lead_c % p) * v) % p;
                }
            } else {
                // leading monomial is not a pivot: move on by splitting: since
                // rows aren't in RREF (only leading-reduced), do full pass
                break;
            }
        }
        row
    }
    fn rank(&self) -> usize { self.comps.values().map(|v| v.len()).sum() }
}

fn elem_row(e: &periplectic::pbw::AlgebraElement) -> BTreeMap<PBWMonomial, u64> {
    e.terms().clone()
}

fn main() {
    let t0 = Instant::now();
    let table = StructureTable::build(2, 5).unwrap();
    let ef = Engine::new(table.clone(), Mode::Full);
    let f = Fp::new(5).unwrap();

    // two-sided ideal closure, weight-graded
    let mut red = GradedReducer::new(5);
    let mut frontier: Vec<periplectic::pbw::AlgebraElement> = Vec::new();
    for g in ef.ideal_generators().unwrap() {
        let w = ef.weight(g.terms().keys().next().unwrap());
        if red.insert(w, elem_row(&g)) { frontier.push(g); }
    }
    let letters: Vec<usize> = (0..table.dim()).collect();
    while let Some(el) = frontier.pop() {
        for &g in &letters {
            let ge = ef.element_from_word(&[g]).unwrap();
            for prod in [ef.mul(&ge, &el).unwrap(), ef.mul(&el, &ge).unwrap()] {
                if prod.is_zero() { continue; }
                let w = ef.weight(prod.terms().keys().next().unwrap());
                if red.insert(w, elem_row(&prod)) { frontier.push(prod); }
            }
        }
    }
    eprintln!("dim I_true = {} ({:?})", red.rank(), t0.elapsed());
    let zero_w = vec![0i64, 0];
    let it_dim = red.comps.get(&zero_w).map_or(0, |v| v.len());
    eprintln!("dim (I_true ∩ weight-0) = {}", it_dim);

    // center: conditions mod I_true. To test membership u ∈ I_true we need a
    // proper normal form; build a full RREF per component.
    let mut comp_rref: HashMap<Vec<i64>, (Vec<PBWMonomial>, Matrix)> = HashMap::new();
    for (w, rows) in &red.comps {
        // collect support
        let mut support: BTreeMap<PBWMonomial, usize> = BTreeMap::new();
        for r in rows { for m in r.keys() { let n = support.len(); support.entry(m.clone()).or_insert(n); } }
        let ncols = support.len();
        let mut dense: Vec<Vec<u64>> = Vec::new();
        for r in rows {
            let mut row = vec![0u64; ncols];
            for (m, &c) in r { row[support[m]] = c; }
            dense.push(row);
        }
        let mat = Matrix::from_rows(f, ncols, &dense);
        let (rref, _) = mat.rref();
        let mons: Vec<PBWMonomial> = {
            let mut v: Vec<(PBWMonomial, usize)> = support.into_iter().collect();
            v.sort_by_key(|(_, i)| *i);
            v.into_iter().map(|(m, _)| m).collect()
        };
        comp_rref.insert(w.clone(), (mons, rref));
    }

    // reduce a sparse element mod I_true (within its weight component)
    let reduce_mod_i = |w: &Vec<i64>, mut row: BTreeMap<PBWMonomial, u64>| -> BTreeMap<PBWMonomial, u64> {
        row.retain(|_, v| *v != 0);
        let Some((mons, rref)) = comp_rref.get(w) else { return row };
        let index: HashMap<&PBWMonomial, usize> = mons.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut dense = vec![0u64; mons.len()];
        let mut outside: BTreeMap<PBWMonomial, u64> = BTreeMap::new();
        for (m, c) in row {
            match index.get(&m) {
                Some(&i) => dense[i] = c,
                None => { outside.insert(m, c); }
            }
        }
        for r in 0..rref.rows() {
            let lead = (0..rref.cols()).find(|&c| rref.get(r, c) != 0).unwrap();
            let coeff = dense[lead];
            if coeff != 0 {
                for c in lead..rref.cols() {
                    dense[c] = (dense[c] + (5 - coeff) * rref.get(r, c)) % 5;
                }
            }
        }
        for (i, &c) in dense.iter().enumerate() {
            if c != 0 { outside.insert(mons[i].clone(), c); }
        }
        outside
    };

    // weight-0 monomial basis for the T-invariants
    let eq = Engine::new(table.clone(), Mode::Quotient);
    let basis = eq.t_weight_zero_basis(1 << 20).unwrap();
    let nb = basis.len();

    let mut xs: Vec<BasisVector> = Vec::new();
    for i in 1..=2usize { for j in 1..=2usize { if i != j { xs.push(BasisVector::E(i, j)); } } }
    for (i, j) in [(1, 1), (1, 2), (2, 2)] { xs.push(BasisVector::Z(i, j)); }

    let mut out_index: HashMap<(usize, PBWMonomial), usize> = HashMap::new();
    let mut row_data: Vec<BTreeMap<usize, u64>> = Vec::new();
    for (xi, &x) in xs.iter().enumerate() {
        for (j, m) in basis.iter().enumerate() {
            let br = ef.super_commutator(x, &ef.monomial(m.clone())).unwrap();
            if br.is_zero() { continue; }
            let w = ef.weight(br.terms().keys().next().unwrap());
            let residue = reduce_mod_i(&w, br.terms().clone());
            for (om, c) in residue {
                let key = (xi, om);
                let next = out_index.len();
                let row = *out_index.entry(key).or_insert(next);
                if row == row_data.len() { row_data.push(BTreeMap::new()); }
                row_data[row].insert(j, c);
            }
        }
    }
    let mut rows: Vec<Vec<u64>> = Vec::new();
    for r in &row_data {
        let mut row = vec![0u64; nb];
        for (&j, &c) in r { row[j] = c; }
        rows.push(row);
    }
    eprintln!("center conditions: {} rows ({:?})", rows.len(), t0.elapsed());
    let ker = Matrix::from_rows(f, nb, &rows).kernel();
    eprintln!("dim center(mod I_true) pre-quotient = {}", ker.dim());

    // quotient by I_true ∩ span(basis): weight-0 component of I_true expressed in basis?
    // the weight-0 component support is within weight-0 monomials = our basis.
    let mut i0_rows: Vec<Vec<u64>> = Vec::new();
    if let Some((mons, rref)) = comp_rref.get(&zero_w) {
        let index: HashMap<&PBWMonomial, usize> = basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
        for r in 0..rref.rows() {
            let mut row = vec![0u64; nb];
            for c in 0..rref.cols() {
                if rref.get(r, c) != 0 {
                    row[*index.get(&mons[c]).expect("weight-0 monomial in basis")] = rref.get(r, c);
                }
            }
            i0_rows.push(row);
        }
    }
    eprintln!("I_true ∩ weight-0 dim = {}", i0_rows.len());

    // the image of the center in ū_true^T: span(ker ∪ i0) / i0
    let mut all_rows = ker.basis_rows();
    let pre = Subspace::from_rows(f, nb, all_rows.clone());
    all_rows.extend(i0_rows.clone());
    let span_with_i = Subspace::from_rows(f, nb, all_rows);
    let i0 = Subspace::from_rows(f, nb, i0_rows);
    eprintln!("dim center image in ū_true = {}", span_with_i.dim() - i0.dim());
    let _ = pre;

    // hc images of the kernel basis (pure-h part of representative)
    let hsize = 25usize;
    let mut hc_rows: Vec<Vec<u64>> = Vec::new();
    for row in ker.basis_rows() {
        let mut hp = HPolynomial::zero(2, 5);
        for (j, m) in basis.iter().enumerate() {
            if row[j] != 0 && m.is_pure_h() { hp.add_term(m.h.clone(), row[j]); }
        }
        hc_rows.push(hp.to_dense());
    }
    let hc_space = Subspace::from_rows(f, hsize, hc_rows.clone());
    eprintln!("dim h(center) = {}", hc_space.dim());

    let th = theta_poly(2, 5);
    let inv = invariants_uh(2, 5);
    let mut target_rows: Vec<Vec<u64>> = vec![HPolynomial::one(2, 5).to_dense()];
    for r in 0..inv.dim() {
        let g = HPolynomial::from_dense(2, 5, inv.basis().row(r));
        target_rows.push(th.mul(&g).to_dense());
    }
    let target = Subspace::from_rows(f, hsize, target_rows);
    eprintln!("dim F + Theta*inv = {}", target.dim());
    eprintln!("h(Z) ⊆ F+Theta*inv: {}", target.contains_subspace(&hc_space));
    eprintln!("F+Theta*inv ⊆ h(Z): {}", hc_space.contains_subspace(&target));

    // characters
    let weights = all_weights(2, 5);
    let mut classes: BTreeMap<Vec<u64>, usize> = BTreeMap::new();
    for mu in &weights {
        let mut vals = Vec::new();
        for row in &hc_rows {
            let hp = HPolynomial::from_dense(2, 5, row);
            vals.push(hp.evaluate(mu).value);
        }
        *classes.entry(vals).or_default() += 1;
    }
    eprintln!("distinct characters: {}", classes.len());
    let orbits = dot_orbits(2, 5);
    let typical_orbits = orbits.iter().filter(|o| is_typical(&o[0])).count();
    eprintln!("expected 1 + {} = {}", typical_orbits, 1 + typical_orbits);

    // wall constancy + W-invariance
    let atyp = atypical_set(2, 5);
    let mut wall_ok = true;
    let mut winv_ok = true;
    for row in &hc_rows {
        let hp = HPolynomial::from_dense(2, 5, row);
        let vals: Vec<u64> = atyp.iter().map(|mu| hp.evaluate(mu).value).collect();
        if !vals.windows(2).all(|w| w[0] == w[1]) { wall_ok = false; }
        for s in WeylElement::generators(2) {
            if dot_action_on_uh(&s, &hp) != hp { winv_ok = false; }
        }
    }
    eprintln!("wall constancy: {}, W-invariance: {}", wall_ok, winv_ok);

    // super-centrality mod I_true including y
    let mut central_ok = true;
    for row in ker.basis_rows() {
        let mut el = ef.zero();
        for (j, m) in basis.iter().enumerate() {
            if row[j] != 0 { el = ef.add(&el, &ef.scale(&ef.monomial(m.clone()), row[j] as i64)).unwrap(); }
        }
        for bv in table.basis() {
            let c = ef.super_commutator(*bv, &el).unwrap();
            if c.is_zero() { continue; }
            let w = ef.weight(c.terms().keys().next().unwrap());
            let res = reduce_mod_i(&w, c.terms().clone());
            if !res.is_empty() { central_ok = false; eprintln!("[{:?}, u_k] ∉ I_true", bv); }
        }
    }
    eprintln!("super-centrality mod I_true: {}", central_ok);
    eprintln!("total {:?}", t0.elapsed());
}
