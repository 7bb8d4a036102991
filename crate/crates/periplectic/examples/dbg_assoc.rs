use periplectic::pbw::{Engine, Mode};
use periplectic::structure::StructureTable;

fn main() {
    let t = StructureTable::build(2, 5).unwrap();
    let e = Engine::new(t.clone(), Mode::Full);
    let dim = t.dim();
    let mut fails = 0;
    for a in 0..dim {
        for b in 0..dim {
            for c in 0..dim {
                let ea = e.element_from_word(&[a]).unwrap();
                let eb = e.element_from_word(&[b]).unwrap();
                let ec = e.element_from_word(&[c]).unwrap();
                let ab_c = e.mul(&e.mul(&ea, &eb).unwrap(), &ec).unwrap();
                let a_bc = e.mul(&ea, &e.mul(&eb, &ec).unwrap()).unwrap();
                if ab_c != a_bc {
                    fails += 1;
                    if fails <= 5 {
                        println!("FAIL ({a},{b},{c}) = ({:?},{:?},{:?})", t.basis()[a], t.basis()[b], t.basis()[c]);
                        println!("  (ab)c = {}", e.format_element(&ab_c));
                        println!("  a(bc) = {}", e.format_element(&a_bc));
                    }
                }
            }
        }
    }
    println!("total fails: {fails} / {}", dim*dim*dim);
}
