use periplectic::pbw::{Engine, Mode, PBWMonomial};
use periplectic::structure::StructureTable;

fn check(e: &Engine, a: &PBWMonomial, b: &PBWMonomial, c: &PBWMonomial) -> bool {
    let ea = e.monomial(a.clone());
    let eb = e.monomial(b.clone());
    let ec = e.monomial(c.clone());
    let ab_c = e.mul(&e.mul(&ea, &eb).unwrap(), &ec).unwrap();
    let a_bc = e.mul(&ea, &e.mul(&eb, &ec).unwrap()).unwrap();
    ab_c == a_bc
}

fn shrinks(m: &PBWMonomial) -> Vec<PBWMonomial> {
    let mut out = Vec::new();
    for k in 0..64 {
        if m.y >> k & 1 == 1 {
            let mut s = m.clone();
            s.y &= !(1 << k);
            out.push(s);
        }
        if m.z >> k & 1 == 1 {
            let mut s = m.clone();
            s.z &= !(1 << k);
            out.push(s);
        }
    }
    for i in 0..m.f.len() {
        if m.f[i] > 0 {
            let mut s = m.clone();
            s.f[i] -= 1;
            out.push(s);
        }
        if m.e[i] > 0 {
            let mut s = m.clone();
            s.e[i] -= 1;
            out.push(s);
        }
    }
    for i in 0..m.h.len() {
        if m.h[i] > 0 {
            let mut s = m.clone();
            s.h[i] -= 1;
            out.push(s);
        }
    }
    out
}

fn main() {
    let e = Engine::new(StructureTable::build(2, 5).unwrap(), Mode::Quotient);
    // from the failing trial
    let mut a = PBWMonomial::one(2);
    a.y = 1; a.h[0] = 1; a.z = 2; // y.h1.z12
    let mut b = PBWMonomial::one(2);
    b.h[0] = 1; b.e[0] = 2; b.z = 2; // h1.e^2.z12
    let mut c = PBWMonomial::one(2);
    c.f[0] = 1; c.z = 2; // f.z12
    if check(&e, &a, &b, &c) {
        eprintln!("seed triple passes; searching failing pair from scratch over tiny monomials");
        let mut tiny = Vec::new();
        for y in 0..2u64 { for z in 0..4u64 { for f0 in 0..2 { for e0 in 0..3 { for h0 in 0..2 {
            let mut m = PBWMonomial::one(2);
            m.y = y; m.z = z; m.f[0] = f0; m.e[0] = e0; m.h[0] = h0;
            if m.z.count_ones() <= 1 { tiny.push(m); }
        }}}}}
        for a in &tiny { for b in &tiny { for c in &tiny {
            if !check(&e, a, b, c) {
                eprintln!("FAIL tiny a={:?} b={:?} c={:?}", a, b, c);
                return;
            }
        }}}
        eprintln!("no tiny failure");
        return;
    }
    // greedy shrink
    let (mut a, mut b, mut c) = (a, b, c);
    loop {
        let mut improved = false;
        for sa in shrinks(&a) {
            if !check(&e, &sa, &b, &c) { a = sa; improved = true; break; }
        }
        if !improved {
            for sb in shrinks(&b) {
                if !check(&e, &a, &sb, &c) { b = sb; improved = true; break; }
            }
        }
        if !improved {
            for sc in shrinks(&c) {
                if !check(&e, &a, &b, &sc) { c = sc; improved = true; break; }
            }
        }
        if !improved { break; }
    }
    let ea = e.monomial(a.clone());
    let eb = e.monomial(b.clone());
    let ec = e.monomial(c.clone());
    eprintln!("minimal: a={} b={} c={}", e.format_element(&ea), e.format_element(&eb), e.format_element(&ec));
    let ab = e.mul(&ea, &eb).unwrap();
    let bc = e.mul(&eb, &ec).unwrap();
    eprintln!("ab = {}", e.format_element(&ab));
    eprintln!("bc = {}", e.format_element(&bc));
    eprintln!("(ab)c = {}", e.format_element(&e.mul(&ab, &ec).unwrap()));
    eprintln!("a(bc) = {}", e.format_element(&e.mul(&ea, &bc).unwrap()));
    // compare against full mode images
    let ef = Engine::new(StructureTable::build(2, 5).unwrap(), Mode::Full);
    let fa = ef.monomial(a.clone());
    let fb = ef.monomial(b.clone());
    let fc = ef.monomial(c.clone());
    let full = ef.mul(&ef.mul(&fa, &fb).unwrap(), &fc).unwrap();
    eprintln!("full-mode (ab)c = {}", ef.format_element(&full));
}
