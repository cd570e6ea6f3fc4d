//! The order-3 decomposition of the unit group: cube roots of unity, the
//! projection x -> x^s, and the three fibers it induces.
//!
//! Run with: cargo run --example cube_roots_and_fibers

use mu3perm::{FieldSpec, Mu3Context};

fn main() {
    println!("== canonical mu_3 over F_31 ==");
    let spec = FieldSpec::prime(31).unwrap();
    let ctx = Mu3Context::new(&spec).unwrap();
    println!("s = (q - 1) / 3 = {}", ctx.s());
    println!("mu_3 listing: 1, {}, {}", ctx.mu3()[1], ctx.mu3()[2]);

    println!("\n== the projection pi(x) = x^s ==");
    for x in [1u64, 2, 3, 5, 8, 30] {
        let e = spec.from_int(x);
        println!("pi({x}) = {}", ctx.project(&e).unwrap());
    }

    println!("\n== fibers partition the units ==");
    let mut total = 0;
    for m in 0..3 {
        let fiber = ctx.fiber_elements(m);
        let shown: Vec<String> = fiber.iter().take(5).map(|e| e.to_string()).collect();
        println!(
            "fiber of {} ({} elements): {}, ...",
            ctx.mu3()[m],
            fiber.len(),
            shown.join(", ")
        );
        assert_eq!(fiber.len() as u64, ctx.s());
        total += fiber.len();
    }
    assert_eq!(total as u64, spec.q() - 1);

    println!("\n== the kernel is the fiber of 1 ==");
    let kernel: Vec<String> = ctx.kernel_elements().iter().map(|e| e.to_string()).collect();
    println!("K = {{{}}}", kernel.join(", "));
    for z in ctx.kernel_elements() {
        assert!(spec.pow(z, ctx.s()).unwrap().is_one());
    }

    println!("\n== reordering mu_3 around a chosen root ==");
    let delta = spec.from_int(25);
    let reordered = Mu3Context::with_omega(&spec, &delta).unwrap();
    println!(
        "listing for delta = 25: 1, {}, {}",
        reordered.mu3()[1],
        reordered.mu3()[2]
    );
    println!(
        "fiber representatives: {}, {}, {}",
        reordered.fiber_representative(0),
        reordered.fiber_representative(1),
        reordered.fiber_representative(2)
    );
    assert_eq!(reordered.mu3()[1], delta);

    println!("\n== an extension field has the same structure ==");
    let f25 = FieldSpec::new(5, 2).unwrap();
    let ctx25 = Mu3Context::new(&f25).unwrap();
    println!(
        "F_25: omega = {}, s = {}, kernel size {}",
        ctx25.omega(),
        ctx25.s(),
        ctx25.kernel_elements().len()
    );
}
