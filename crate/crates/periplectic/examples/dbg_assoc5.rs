use periplectic::pbw::{Engine, Mode, PBWMonomial};
use periplectic::structure::StructureTable;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::time::Instant;

fn rand_mono(e: &Engine, rng: &mut ChaCha8Rng) -> PBWMonomial {
    let mut m = PBWMonomial::one(e.n());
    m.y = rng.gen_range(0..2u64);
    m.z = rng.gen_range(0..8u64);
    m.f[0] = rng.gen_range(0..3u8);
    m.e[0] = rng.gen_range(0..3u8);
    m.h[0] = rng.gen_range(0..3u8);
    m.h[1] = rng.gen_range(0..3u8);
    m
}

fn main() {
    let t = StructureTable::build(2, 5).unwrap();
    let e = Engine::new(t.clone(), Mode::Full);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for trial in 0..500 {
        let (a, b, c) = (rand_mono(&e, &mut rng), rand_mono(&e, &mut rng), rand_mono(&e, &mut rng));
        let t0 = Instant::now();
        let ea = e.monomial(a.clone());
        let eb = e.monomial(b.clone());
        let ec = e.monomial(c.clone());
        let ab_c = e.mul(&e.mul(&ea, &eb).unwrap(), &ec).unwrap();
        let a_bc = e.mul(&ea, &e.mul(&eb, &ec).unwrap()).unwrap();
        if t0.elapsed().as_millis() > 500 {
            eprintln!("trial {trial} SLOW {:?}: a={:?} b={:?} c={:?}", t0.elapsed(), a, b, c);
        }
        if ab_c != a_bc {
            eprintln!("trial {trial} FAIL");
            eprintln!("a = {:?}\nb = {:?}\nc = {:?}", a, b, c);
            eprintln!("(ab)c = {}", e.format_element(&ab_c));
            eprintln!("a(bc) = {}", e.format_element(&a_bc));
            return;
        }
    }
    eprintln!("no failure in 500 triples");
}
