use periplectic::pbw::{AlgebraElement, Engine, Mode, PBWMonomial};
use periplectic::structure::StructureTable;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_element(e: &Engine, rng: &mut ChaCha8Rng, max_terms: usize) -> AlgebraElement {
    let d = e.d();
    let n = e.n();
    let zc = e.table().z_count();
    let p = e.p() as u8;
    let mut acc = e.zero();
    let nterms = rng.gen_range(1..=max_terms);
    for _ in 0..nterms {
        let mut m = PBWMonomial::one(n);
        m.y = rng.gen_range(0..(1u64 << d));
        loop {
            m.z = rng.gen_range(0..(1u64 << zc));
            if e.mode() == Mode::Full || m.z.count_ones() as usize <= d {
                break;
            }
        }
        for k in 0..d {
            m.f[k] = rng.gen_range(0..3.min(p));
            m.e[k] = rng.gen_range(0..3.min(p));
        }
        for k in 0..n {
            m.h[k] = rng.gen_range(0..3.min(p));
        }
        let c = rng.gen_range(1..e.p()) as i64;
        acc = e.add(&acc, &e.scale(&e.monomial(m), c)).unwrap();
    }
    acc
}

fn main() {
    for mode in [Mode::Full, Mode::Quotient] {
        let e = Engine::new(StructureTable::build(2, 5).unwrap(), mode);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for trial in 0..60 {
            let a = random_element(&e, &mut rng, 2);
            let b = random_element(&e, &mut rng, 2);
            let c = random_element(&e, &mut rng, 2);
            let ab_c = e.mul(&e.mul(&a, &b).unwrap(), &c).unwrap();
            let a_bc = e.mul(&a, &e.mul(&b, &c).unwrap()).unwrap();
            if ab_c != a_bc {
                eprintln!("mode {:?} trial {} FAIL", mode, trial);
                eprintln!("a = {}", e.format_element(&a));
                eprintln!("b = {}", e.format_element(&b));
                eprintln!("c = {}", e.format_element(&c));
                let diff = e.sub(&ab_c, &a_bc).unwrap();
                eprintln!("diff = {}", e.format_element(&diff));
                return;
            }
        }
        eprintln!("mode {:?}: 60 triples ok", mode);
    }
}
