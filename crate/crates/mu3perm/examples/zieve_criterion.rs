//! The if-and-only-if permutation criterion for X^r h(X^((q-1)/d)):
//! coprimality, nonzero h-values, and distinct images on mu_d.
//!
//! Run with: cargo run --example zieve_criterion

use mu3perm::oracle::cyclotomic_map_is_bijection;
use mu3perm::{zieve_check, FieldSpec, ZieveInput};

fn main() {
    println!("== a passing instance over F_31 ==");
    let spec = FieldSpec::prime(31).unwrap();
    let input = ZieveInput {
        spec: spec.clone(),
        d: 3,
        r: 7,
        h_values: vec![spec.from_int(4), spec.one(), spec.one()],
    };
    let report = zieve_check(&input).unwrap();
    println!(
        "coprime: {}, nonzero: {}, distinct: {} -> is_pp = {}",
        report.coprime, report.no_zero_values, report.images_distinct, report.is_pp
    );
    let image: Vec<String> = report.mu_d_image.iter().map(|x| x.to_string()).collect();
    println!("induced image on mu_3: ({})", image.join(", "));
    assert!(report.is_pp);

    println!("\n== each condition can fail separately ==");
    let share_factor = ZieveInput { r: 5, ..input.clone() };
    println!("r = 5: coprime = {}", zieve_check(&share_factor).unwrap().coprime);
    let with_zero = ZieveInput {
        h_values: vec![spec.one(), spec.zero(), spec.one()],
        ..input.clone()
    };
    println!(
        "zero h-value: no_zero_values = {}",
        zieve_check(&with_zero).unwrap().no_zero_values
    );
    let f7 = FieldSpec::prime(7).unwrap();
    let colliding = ZieveInput {
        spec: f7.clone(),
        d: 3,
        r: 1,
        h_values: vec![f7.one(), f7.one(), f7.from_int(2)],
    };
    let rep = zieve_check(&colliding).unwrap();
    println!("h = (1, 1, 2) over F_7: images_distinct = {}", rep.images_distinct);
    assert!(!rep.is_pp);

    println!("\n== the criterion is an iff: exhaustive check over F_13, d = 4 ==");
    let f13 = FieldSpec::prime(13).unwrap();
    let mut checked = 0;
    for r in 1..13u64 {
        for a in 0..13u64 {
            for b in 0..13u64 {
                let h = vec![f13.one(), f13.from_int(a), f13.from_int(b), f13.from_int(5)];
                let verdict = zieve_check(&ZieveInput {
                    spec: f13.clone(),
                    d: 4,
                    r,
                    h_values: h.clone(),
                })
                .unwrap();
                let oracle = cyclotomic_map_is_bijection(&f13, r, 4, &h, false).unwrap();
                assert_eq!(verdict.is_pp, oracle, "r = {r}, h = (1, {a}, {b}, 5)");
                checked += 1;
            }
        }
    }
    println!("criterion and oracle agree on all {checked} instances");
}
