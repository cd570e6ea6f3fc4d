//! Sweeping the scalar family: admissibility of each cube root, the
//! k-sweep over one field, and the parallel range scan.
//!
//! Run with: cargo run --example scalar_family_search

use mu3perm::{enumerate_delta, scan_scalar_families, search::scan_range, FieldSpec, Mu3Context};

fn main() {
    println!("== which deltas are admissible? ==");
    for q in [13u64, 19, 109, 163] {
        let spec = FieldSpec::prime(q).unwrap();
        let ctx = Mu3Context::new(&spec).unwrap();
        let marks: Vec<String> = enumerate_delta(&ctx)
            .iter()
            .map(|st| {
                format!(
                    "delta = {} (witness {}): {}",
                    st.delta,
                    st.witness,
                    if st.admissible { "admissible" } else { "no" }
                )
            })
            .collect();
        println!("F_{q}:");
        for m in marks {
            println!("  {m}");
        }
    }

    println!("\n== k-sweep over F_109 ==");
    let spec = FieldSpec::prime(109).unwrap();
    let certs = scan_scalar_families(&spec, 2).unwrap();
    for cert in &certs {
        println!(
            "certified: delta = {}, k = {}, r = {} (oracle confirmed: {})",
            cert.delta,
            cert.k.unwrap(),
            cert.r,
            cert.oracle_confirmed
        );
    }
    assert!(certs
        .iter()
        .any(|c| c.delta == "63" && c.k == Some(2) && c.r == 73));

    println!("\n== fields where nothing certifies ==");
    let f19 = FieldSpec::prime(19).unwrap();
    let none = scan_scalar_families(&f19, 6).unwrap();
    println!("F_19 (no admissible delta): {} certificates", none.len());
    assert!(none.is_empty());

    println!("\n== parallel range scan, 10 <= q <= 200, k <= 3 ==");
    let certs = scan_range(10, 200, 3);
    println!("{} certificates", certs.len());
    let mut specs: Vec<&str> = certs.iter().map(|c| c.spec.as_str()).collect();
    specs.dedup();
    println!("fields represented: {}", specs.join(", "));
    assert!(specs.contains(&"163") && specs.contains(&"199"));
    for cert in &certs {
        assert!(cert.oracle_confirmed, "every certificate is oracle-backed");
    }
}
