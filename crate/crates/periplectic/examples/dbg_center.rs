use periplectic::field::Fp;
use periplectic::linalg::Matrix;
use periplectic::pbw::{Engine, Mode, PBWMonomial};
use periplectic::structure::{BasisVector, StructureTable};
use periplectic::weights::{all_weights, atypical_set, dot_orbits, invariants_uh, is_typical, theta_poly, WeylElement, dot_action_on_uh};
use std::collections::{BTreeMap, HashMap};
use std::time::Instant;

fn main() {
    let t0 = Instant::now();
    let table = StructureTable::build(2, 5).unwrap();
    let eq = Engine::new(table.clone(), Mode::Quotient);
    let f = Fp::new(5).unwrap();
    let basis = eq.t_weight_zero_basis(1 << 20).unwrap();
    let nb = basis.len();
    eprintln!("weight-0 basis: {}", nb);

    // conditions
    let mut xs: Vec<BasisVector> = Vec::new();
    for i in 1..=2usize {
        for j in 1..=2usize {
            if i != j { xs.push(BasisVector::E(i, j)); }
        }
    }
    for (i, j) in [(1, 1), (1, 2), (2, 2)] { xs.push(BasisVector::Z(i, j)); }

    let mut rows: Vec<Vec<u64>> = Vec::new();
    let mut out_index: HashMap<(usize, PBWMonomial), usize> = HashMap::new();
    let mut row_data: Vec<BTreeMap<usize, u64>> = Vec::new();
    for (xi, &x) in xs.iter().enumerate() {
        for (j, m) in basis.iter().enumerate() {
            let br = eq.super_commutator(x, &eq.monomial(m.clone())).unwrap();
            for (om, &c) in br.terms() {
                let key = (xi, om.clone());
                let next = out_index.len();
                let row = *out_index.entry(key).or_insert(next);
                if row == row_data.len() { row_data.push(BTreeMap::new()); }
                row_data[row].insert(j, c);
            }
        }
    }
    for r in &row_data {
        let mut row = vec![0u64; nb];
        for (&j, &c) in r { row[j] = c; }
        rows.push(row);
    }
    eprintln!("conditions: {} rows", rows.len());
    let cond = Matrix::from_rows(f, nb, &rows);
    let ker = cond.kernel();
    eprintln!("dim center-hat = {}", ker.dim());

    // hc images: pure-h part
    let mut hc_rows: Vec<Vec<u64>> = Vec::new();
    let hsize = 25usize;
    for r in 0..ker.dim() {
        let coeffs = ker.basis().row(r);
        let mut hp = periplectic::pbw::HPolynomial::zero(2, 5);
        for (j, m) in basis.iter().enumerate() {
            if coeffs[j] != 0 && m.is_pure_h() {
                hp.add_term(m.h.clone(), coeffs[j]);
            }
        }
        hc_rows.push(hp.to_dense());
    }
    let hc_space = periplectic::linalg::Subspace::from_rows(f, hsize, hc_rows.clone());
    eprintln!("dim h(center-hat) = {}", hc_space.dim());

    // expected space: F + Theta * invariants
    let th = theta_poly(2, 5);
    let inv = invariants_uh(2, 5);
    let mut target_rows: Vec<Vec<u64>> = vec![periplectic::pbw::HPolynomial::one(2,5).to_dense()];
    for r in 0..inv.dim() {
        let g = periplectic::pbw::HPolynomial::from_dense(2, 5, inv.basis().row(r));
        target_rows.push(th.mul(&g).to_dense());
    }
    let target = periplectic::linalg::Subspace::from_rows(f, hsize, target_rows);
    eprintln!("dim F + Theta*inv = {}", target.dim());
    eprintln!("h(Z) subset of target: {}", target.contains_subspace(&hc_space));
    eprintln!("target subset of h(Z): {}", hc_space.contains_subspace(&target));

    // distinct characters
    let weights = all_weights(2, 5);
    let mut classes: BTreeMap<Vec<u64>, Vec<String>> = BTreeMap::new();
    for mu in &weights {
        let mut vals = Vec::new();
        for row in &hc_rows {
            let hp = periplectic::pbw::HPolynomial::from_dense(2, 5, row);
            vals.push(hp.evaluate(mu).value);
        }
        classes.entry(vals).or_default().push(format!("{}", mu));
    }
    eprintln!("distinct characters: {}", classes.len());
    let orbits = dot_orbits(2, 5);
    let typical_orbits = orbits.iter().filter(|o| is_typical(&o[0])).count();
    eprintln!("expected: 1 + typical orbits = {}", 1 + typical_orbits);

    // wall constancy
    let atyp = atypical_set(2, 5);
    for (k, row) in hc_rows.iter().enumerate() {
        let hp = periplectic::pbw::HPolynomial::from_dense(2, 5, row);
        let vals: Vec<u64> = atyp.iter().map(|mu| hp.evaluate(mu).value).collect();
        let constant = vals.windows(2).all(|w| w[0] == w[1]);
        if !constant { eprintln!("element {k}: NOT constant on walls"); }
    }
    eprintln!("wall constancy checked");

    // W-invariance of hc images
    for (k, row) in hc_rows.iter().enumerate() {
        let hp = periplectic::pbw::HPolynomial::from_dense(2, 5, row);
        for s in WeylElement::generators(2) {
            if dot_action_on_uh(&s, &hp) != hp {
                eprintln!("element {k}: hc image NOT dot-invariant");
            }
        }
    }
    eprintln!("W-invariance checked");

    // super-centrality against every basis vector (including y)
    let mut ok = true;
    for r in 0..ker.dim() {
        let coeffs = ker.basis().row(r);
        let mut el = eq.zero();
        for (j, m) in basis.iter().enumerate() {
            if coeffs[j] != 0 {
                el = eq.add(&el, &eq.scale(&eq.monomial(m.clone()), coeffs[j] as i64)).unwrap();
            }
        }
        for bv in table.basis() {
            let c = eq.super_commutator(*bv, &el).unwrap();
            if !c.is_zero() {
                eprintln!("element {r}: [{:?}, u] != 0 in quotient model", bv);
                ok = false;
            }
        }
    }
    eprintln!("super-centrality {}", if ok { "PASS" } else { "FAIL" });
    eprintln!("total {:?}", t0.elapsed());
}
