//! The four-condition CPP criterion: coprimality and kernel-valued c (G1),
//! fiber-wise injectivity (G2), fiber-wise constancy (G3), and the induced
//! permutation of mu_3 (G4).
//!
//! Run with: cargo run --example general_criterion

use mu3perm::{check_pp_cpp, family_context, general_cpp_check, CycloTrinomial, FieldSpec};

fn main() {
    println!("== a certified instance over F_109 ==");
    let spec = FieldSpec::prime(109).unwrap();
    let delta = spec.from_int(63);
    let ctx = family_context(&spec, &delta).unwrap();
    let t = CycloTrinomial::delta_family(ctx, &delta, 73).unwrap();
    let report = general_cpp_check(&t).unwrap();
    println!(
        "g1 {} g2 {} g3 {} g4 {} -> certified: {}",
        report.g1, report.g2, report.g3, report.g4, report.certified
    );
    let beta: Vec<String> = report.beta.iter().map(|x| x.to_string()).collect();
    println!("beta per fiber: ({})", beta.join(", "));
    println!("v indices: {:?}, psi_bar indices: {:?}", report.v, report.psi_bar);
    assert!(report.certified);
    let oracle = check_pp_cpp(&t);
    println!("oracle agrees: is_cpp = {}", oracle.is_cpp);
    assert!(oracle.is_cpp);

    println!("\n== a rejected instance over F_31, with diagnostics ==");
    let f31 = FieldSpec::prime(31).unwrap();
    let delta = f31.from_int(25);
    let ctx31 = family_context(&f31, &delta).unwrap();
    let t = CycloTrinomial::delta_family(ctx31, &delta, 7).unwrap();
    let report = general_cpp_check(&t).unwrap();
    println!(
        "g1 {} g2 {} g3 {} g4 {} -> certified: {}",
        report.g1, report.g2, report.g3, report.g4, report.certified
    );
    let w = report.g3_witness.as_ref().unwrap();
    println!(
        "g3 witness: fiber {}, z = {}: (1 + beta z^(r-1))^s = {} but the z = 1 value is {}",
        w.fiber, w.z, w.value, w.base
    );
    assert!(!report.certified);
    let oracle = check_pp_cpp(&t);
    println!(
        "oracle agrees: f permutes = {}, F permutes = {}",
        oracle.f_is_pp, oracle.f_plus_x_is_pp
    );
    assert!(oracle.f_is_pp && !oracle.is_cpp);

    println!("\n== v is the same for every choice of fiber representative ==");
    use mu3perm::criteria::general_fiber_conditions;
    let spec = FieldSpec::prime(109).unwrap();
    let delta = spec.from_int(63);
    let ctx = family_context(&spec, &delta).unwrap();
    let t = CycloTrinomial::delta_family(ctx.clone(), &delta, 73).unwrap();
    for m in 0..3 {
        let reps = ctx.fiber_elements(m);
        let first = general_fiber_conditions(&t, m, &reps[0]).unwrap();
        for rep in reps {
            assert_eq!(general_fiber_conditions(&t, m, rep).unwrap(), first);
        }
    }
    println!("checked all {} representatives per fiber over F_109", 36);
}
