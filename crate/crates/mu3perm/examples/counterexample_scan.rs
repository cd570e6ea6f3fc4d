//! Scanning the range where q = 1 mod 3 but q != 1 mod 9: the scalar
//! construction has no certificates there, and the oracle finds concrete
//! failures of F = f + X with reusable witnesses.
//!
//! Run with: cargo run --example counterexample_scan

use mu3perm::{counterexample_scan, FailureReason};

fn main() {
    println!("== scanning 4 <= q <= 31 ==");
    let (records, meta) = counterexample_scan(4, 31);
    println!(
        "r policy: exhaustive over units for q <= {}, first {} above",
        meta.exhaustive_r_bound, meta.sample_size
    );
    println!("{} failure records\n", records.len());

    println!("== the two published failures ==");
    let triple_zero = records
        .iter()
        .find(|rec| rec.spec == "7" && rec.delta == "2" && rec.r == 1)
        .unwrap();
    println!(
        "q = 7, delta = 2, r = 1: F({}) = F({}) = {} [{:?}]",
        triple_zero.x1, triple_zero.x2, triple_zero.common_image, triple_zero.reason
    );
    assert_eq!(triple_zero.reason, FailureReason::HitsZeroTwice);

    let collision = records
        .iter()
        .find(|rec| rec.spec == "31" && rec.delta == "25" && rec.r == 7)
        .unwrap();
    println!(
        "q = 31, delta = 25, r = 7: F({}) = F({}) = {} [{:?}]",
        collision.x1, collision.x2, collision.common_image, collision.reason
    );
    assert_eq!(collision.reason, FailureReason::NotInjective);

    println!("\n== every record re-verifies under evaluation ==");
    for rec in &records {
        assert!(rec.reverify().unwrap(), "stale witness: {rec:?}");
    }
    println!("all {} witnesses check out", records.len());

    println!("\n== records serialize as JSON-Lines ==");
    for rec in records.iter().take(3) {
        println!("{}", serde_json::to_string(rec).unwrap());
    }
}
