use periplectic::pbw::{Engine, Mode, PBWMonomial};
use periplectic::structure::StructureTable;
use std::time::Instant;

fn main() {
    let t = StructureTable::build(2, 5).unwrap();
    let e = Engine::new(t.clone(), Mode::Full);
    // worst-ish monomials
    let mut a = PBWMonomial::one(2);
    a.y = 1; a.z = 7; a.f[0] = 2; a.e[0] = 2; a.h = vec![2, 2];
    let mut b = a.clone();
    b.z = 7;
    let ea = e.monomial(a.clone());
    let eb = e.monomial(b.clone());
    eprintln!("word len a = {}, b = {}", a.len(), b.len());
    let t0 = Instant::now();
    let ab = e.mul(&ea, &eb).unwrap();
    eprintln!("a*b: {} terms in {:?}", ab.num_terms(), t0.elapsed());
    let t1 = Instant::now();
    let ec = e.monomial(b.clone());
    let abc = e.mul(&ab, &ec).unwrap();
    eprintln!("(a*b)*c: {} terms in {:?}", abc.num_terms(), t1.elapsed());
}
