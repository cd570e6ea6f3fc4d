//! The trinomial shape X^r c(X^s) and its two published families, with
//! dense-polynomial cross-checks.
//!
//! Run with: cargo run --example trinomial_families

use std::sync::Arc;

use mu3perm::{family_context, CycloTrinomial, FieldSpec, Mu3Context};

fn main() {
    println!("== the delta family over F_109 ==");
    let spec = FieldSpec::prime(109).unwrap();
    let delta = spec.from_int(63);
    let ctx = family_context(&spec, &delta).unwrap();
    let t = CycloTrinomial::delta_family(ctx, &delta, 73).unwrap();
    let c = t.c_table();
    println!("c on (1, delta, delta^2) = ({}, {}, {})", c[0], c[1], c[2]);
    let dense = t.dense_f();
    let terms: Vec<String> = dense.iter().map(|(e, b)| format!("{b}*X^{e}")).collect();
    println!("dense f = {}", terms.join(" + "));
    assert_eq!(dense.iter().map(|(e, _)| *e).collect::<Vec<_>>(), vec![73, 109, 145]);

    // Dense and table evaluation agree everywhere.
    for x in spec.elements() {
        let direct = t.eval_f(&x).unwrap();
        let horner = dense
            .iter()
            .fold(spec.zero(), |acc, (e, b)| {
                spec.add(&acc, &spec.mul(b, &spec.pow(&x, *e).unwrap()).unwrap())
                    .unwrap()
            });
        assert_eq!(direct, horner);
    }
    println!("dense evaluation agrees at all {} points", spec.q());

    println!("\n== the gamma family over F_13 ==");
    let f13 = FieldSpec::prime(13).unwrap();
    let ctx13 = Arc::new(Mu3Context::new(&f13).unwrap());
    let gamma = f13.from_int(6);
    let g = CycloTrinomial::gamma_family(ctx13, &gamma, 5).unwrap();
    let c = g.c_table();
    println!("c on (1, omega, omega^2) = ({}, {}, {})", c[0], c[1], c[2]);
    assert_eq!(c[1], c[2], "both nontrivial fibers share gamma - 1");

    println!("\n== F = f + X and exponent reduction ==");
    let f7 = FieldSpec::prime(7).unwrap();
    let delta = f7.from_int(2);
    let ctx7 = family_context(&f7, &delta).unwrap();
    let t = CycloTrinomial::delta_family(ctx7.clone(), &delta, 1).unwrap();
    for x in [0u64, 3, 4] {
        println!("F({x}) = {}", t.eval_f_plus_x(&f7.from_int(x)).unwrap());
    }
    // x^r depends only on r mod q-1 for units, so r and r + (q-1) agree.
    let big = CycloTrinomial::delta_family(ctx7, &delta, 1 + 6).unwrap();
    assert_eq!(big.r_reduced(), 1);
    for x in f7.elements() {
        assert_eq!(t.eval_f(&x).unwrap(), big.eval_f(&x).unwrap());
    }
    println!("r = 1 and r = 7 evaluate identically over F_7");
}
