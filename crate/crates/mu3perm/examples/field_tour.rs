//! Tour of the field layer: prime and extension fields, arithmetic,
//! element encodings, ranks, and multiplicative generators.
//!
//! Run with: cargo run --example field_tour

use mu3perm::{FieldSpec, MAX_ORDER};

fn main() {
    println!("== prime field F_109 ==");
    let f109 = FieldSpec::prime(109).unwrap();
    let a = f109.from_int(63);
    let b = f109.from_int(45);
    println!("63 * 45 = {}", f109.mul(&a, &b).unwrap());
    println!("63^2 = {}", f109.mul(&a, &a).unwrap());
    println!("inv(63) = {}", f109.inv(&a).unwrap());
    assert!(f109.mul(&a, &f109.inv(&a).unwrap()).unwrap().is_one());
    println!("27^36 = {}", f109.pow(&f109.from_int(27), 36).unwrap());
    assert!(f109.pow(&f109.from_int(27), 36).unwrap().is_one());

    println!("\n== extension field F_343 = F_7[X]/(modulus) ==");
    let f343 = FieldSpec::new(7, 3).unwrap();
    println!("spec: {f343}, q = {}", f343.q());
    println!("modulus coefficients (ascending): {:?}", f343.modulus().unwrap());
    let x = f343.parse_element("0,1,0").unwrap(); // the generator X of the tower
    let x3 = f343.pow(&x, 3).unwrap();
    println!("X^3 = {x3}");
    // X^3 = -modulus tail; multiplying back and forth stays consistent.
    let y = f343.mul(&x3, &x).unwrap();
    assert_eq!(y, f343.pow(&x, 4).unwrap());

    println!("\n== ranks are a bijection with 0..q ==");
    let f25 = FieldSpec::new(5, 2).unwrap();
    for rank in [0u64, 1, 7, 23, 24] {
        let e = f25.unrank(rank);
        println!("rank {rank} <-> {e}");
        assert_eq!(f25.rank(&e), rank);
    }

    println!("\n== multiplicative generators ==");
    for q in [7u64, 13, 25, 31] {
        let spec = if q == 25 {
            FieldSpec::new(5, 2).unwrap()
        } else {
            FieldSpec::prime(q).unwrap()
        };
        let g = spec.multiplicative_generator();
        println!("F_{q}: generator {g}");
        // The generator's powers cover every unit exactly once.
        let mut seen = vec![false; q as usize];
        let mut x = spec.one();
        for _ in 0..q - 1 {
            let rank = spec.rank(&x) as usize;
            assert!(!seen[rank]);
            seen[rank] = true;
            x = spec.mul(&x, &g).unwrap();
        }
        assert!(x.is_one());
    }

    println!("\nlargest supported order: 2^31 = {MAX_ORDER}");
}
