use periplectic::pbw::{AlgebraElement, Engine, Mode, PBWMonomial};
use periplectic::structure::StructureTable;
use std::collections::{BTreeMap, HashMap};

// sparse row reduction over F_p keyed by monomial-rank
struct Reducer {
    p: u64,
    rows: HashMap<usize, BTreeMap<usize, u64>>, // pivot -> normalized row
}

impl Reducer {
    fn new(p: u64) -> Self { Reducer { p, rows: HashMap::new() } }
    fn inv(&self, a: u64) -> u64 {
        let mut acc = 1u64; let mut b = a % self.p; let mut e = self.p - 2;
        while e > 0 { if e & 1 == 1 { acc = acc * b % self.p; } b = b * b % self.p; e >>= 1; }
        acc
    }
    // returns true if the row was new (rank grew)
    fn insert(&mut self, mut row: BTreeMap<usize, u64>) -> bool {
        loop {
            row.retain(|_, v| *v % self.p != 0);
            let Some((&piv, &lead)) = row.iter().next() else { return false };
            match self.rows.get(&piv) {
                None => {
                    let linv = self.inv(lead);
                    let norm: BTreeMap<usize, u64> = row.iter().map(|(&k, &v)| (k, v * linv % self.p)).collect();
                    self.rows.insert(piv, norm);
                    return true;
                }
                Some(r) => {
                    let r = r.clone();
                    let c = lead % self.p;
                    for (&k, &v) in &r {
                        let e = row.entry(k).or_insert(0);
                        *e = (*e + (self.p - c) * v) % self.p;
                    }
                }
            }
        }
    }
    fn rank(&self) -> usize { self.rows.len() }
}

fn rank_of(m: &PBWMonomial, e: &Engine) -> usize {
    // mixed radix over (y, f, h, e, z)
    let p = e.p() as usize;
    let d = e.d();
    let n = e.n();
    let zc = e.table().z_count();
    let mut r = m.y as usize;
    let mut base = 1usize << d;
    for &x in &m.f { r += base * x as usize; base *= p; }
    for &x in &m.h { r += base * x as usize; base *= p; }
    for &x in &m.e { r += base * x as usize; base *= p; }
    r += base * m.z as usize;
    base *= 1 << zc;
    let _ = base;
    r
}

fn to_row(el: &AlgebraElement, e: &Engine) -> BTreeMap<usize, u64> {
    el.terms().iter().map(|(m, &c)| (rank_of(m, e), c)).collect()
}

fn main() {
    let t = StructureTable::build(2, 5).unwrap();
    let e = Engine::new(t.clone(), Mode::Full);
    let mut red = Reducer::new(5);
    let mut frontier: Vec<AlgebraElement> = Vec::new();
    for g in e.ideal_generators().unwrap() {
        if red.insert(to_row(&g, &e)) {
            frontier.push(g);
        }
    }
    // also the wedge^3 generator z11 z12 z22
    let zi = |k: usize| 2 * e.d() + e.n() + e.d() + k;
    let g3 = e.element_from_word(&[zi(0), zi(1), zi(2)]).unwrap();
    if red.insert(to_row(&g3, &e)) { frontier.push(g3); }
    eprintln!("initial rank {}", red.rank());
    let gens: Vec<usize> = (0..t.dim()).collect();
    while let Some(el) = frontier.pop() {
        for &g in &gens {
            let ge = e.element_from_word(&[g]).unwrap();
            for prod in [e.mul(&ge, &el).unwrap(), e.mul(&el, &ge).unwrap()] {
                if prod.is_zero() { continue; }
                if red.insert(to_row(&prod, &e)) {
                    frontier.push(prod);
                }
            }
        }
    }
    eprintln!("dim I_true at (2,5) = {}", red.rank());
    eprintln!("dim u(g) = 10000, so dim quotient = {}", 10000 - red.rank());
}
