use periplectic::pbw::{Engine, Mode, PBWMonomial};
use periplectic::structure::StructureTable;

fn main() {
    let t = StructureTable::build(2, 5).unwrap();
    let e = Engine::new(t.clone(), Mode::Full);
    // enumerate small monomials: y,z masks + single f/h/e exponents <=1
    let mut monos: Vec<PBWMonomial> = Vec::new();
    for y in 0..2u64 {
        for z in 0..8u64 {
            for f0 in 0..2u8 {
                for h0 in 0..2u8 {
                    for h1 in 0..2u8 {
                        for e0 in 0..2u8 {
                            let mut m = PBWMonomial::one(2);
                            m.y = y; m.z = z; m.f[0] = f0; m.h = vec![h0, h1]; m.e[0] = e0;
                            monos.push(m);
                        }
                    }
                }
            }
        }
    }
    println!("monomials: {}", monos.len());
    let mut fails = 0;
    'outer: for a in &monos {
        for b in &monos {
            for c in &monos {
                let ea = e.monomial(a.clone());
                let eb = e.monomial(b.clone());
                let ec = e.monomial(c.clone());
                let ab_c = e.mul(&e.mul(&ea, &eb).unwrap(), &ec).unwrap();
                let a_bc = e.mul(&ea, &e.mul(&eb, &ec).unwrap()).unwrap();
                if ab_c != a_bc {
                    fails += 1;
                    println!("FAIL a={} b={} c={}", e.format_element(&ea), e.format_element(&eb), e.format_element(&ec));
                    println!("  (ab)c = {}", e.format_element(&ab_c));
                    println!("  a(bc) = {}", e.format_element(&a_bc));
                    if fails >= 3 { break 'outer; }
                }
            }
        }
    }
    println!("fails: {fails}");
}
