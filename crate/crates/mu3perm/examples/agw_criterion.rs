//! The fiber-decomposition equivalence on finite tables: a map bijects the
//! whole set iff the induced map on fiber labels bijects and the map is
//! injective on every fiber.
//!
//! Run with: cargo run --example agw_criterion

use mu3perm::{agw_check, family_context, AgwData, CycloTrinomial, FieldSpec};

fn main() {
    println!("== a small commuting square by hand ==");
    // A = {0,1,2,3} split into two labels; g swaps within each label.
    let a = AgwData::new(
        4,
        2,
        vec![1, 0, 3, 2],
        vec![0, 0, 1, 1],
        vec![0, 0, 1, 1],
        vec![0, 1],
    )
    .unwrap();
    let report = agw_check(&a);
    println!(
        "commutes: {}, surjective: {}, g bijective: {}, label side: {}",
        report.commutes,
        report.surjective,
        report.g_bijective,
        report.gbar_bijective_and_fibers_injective
    );
    assert!(report.g_bijective && report.gbar_bijective_and_fibers_injective);

    println!("\n== F = f + X over F_109: fibers map to themselves ==");
    let spec = FieldSpec::prime(109).unwrap();
    let delta = spec.from_int(63);
    let ctx = family_context(&spec, &delta).unwrap();
    let t = CycloTrinomial::delta_family(ctx.clone(), &delta, 73).unwrap();
    let square = AgwData::from_projected_map(&ctx, |x| t.eval_f_plus_x(x).unwrap()).unwrap();
    let report = agw_check(&square);
    println!(
        "units of F_109 under F: both sides of the equivalence = ({}, {})",
        report.g_bijective, report.gbar_bijective_and_fibers_injective
    );
    assert!(report.commutes && report.surjective);
    assert!(report.g_bijective);

    println!("\n== F over F_7 collapses a fiber onto zero ==");
    let f7 = FieldSpec::prime(7).unwrap();
    let delta = f7.from_int(2);
    let ctx7 = family_context(&f7, &delta).unwrap();
    let bad = CycloTrinomial::delta_family(ctx7.clone(), &delta, 1).unwrap();
    // The square needs a fourth label for zero, since F(3) = F(4) = 0.
    let square = AgwData::from_zero_extended_map(&ctx7, |x| bad.eval_f_plus_x(x).unwrap()).unwrap();
    let report = agw_check(&square);
    println!(
        "hypotheses hold: {}; g bijective: {}; label side: {}",
        report.commutes && report.surjective,
        report.g_bijective,
        report.gbar_bijective_and_fibers_injective
    );
    assert!(!report.g_bijective && !report.gbar_bijective_and_fibers_injective);
    println!("both sides fail together, as the equivalence demands");

    println!("\n== maps that mix fibers do not induce a label map ==");
    let shift = AgwData::from_projected_map(&ctx7, |x| {
        let y = f7.add(x, &f7.one()).unwrap();
        if y.is_zero() {
            f7.one()
        } else {
            y
        }
    });
    println!("x -> x + 1 on units: {:?}", shift.err().map(|e| e.to_string()));
}
