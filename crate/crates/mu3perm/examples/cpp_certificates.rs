//! Scalar-regime certification end to end: the two-condition check, the
//! constant-v shortcut, certificate emission, and JSON round-tripping.
//!
//! Run with: cargo run --example cpp_certificates

use mu3perm::{
    check_pp_cpp, constant_v_check, family_context, scalar_cpp_check, Certificate,
    CycloTrinomial, FieldSpec,
};

fn main() {
    println!("== the three published scalar instances ==");
    for (q, delta, k) in [(109u64, 63u64, 2u64), (163, 58, 3), (199, 106, 3)] {
        let spec = FieldSpec::prime(q).unwrap();
        let d = spec.from_int(delta);
        let ctx = family_context(&spec, &d).unwrap();
        let r = 1 + k * ctx.s();
        let t = CycloTrinomial::delta_family(ctx.clone(), &d, r).unwrap();
        let report = scalar_cpp_check(&t).unwrap();
        let tau: Vec<String> = report.tau.iter().map(|x| x.to_string()).collect();
        println!(
            "q = {q}, delta = {delta}, k = {k} (r = {r}): tau = ({}), h1 = {}, h2 = {}",
            tau.join(", "),
            report.h1,
            report.h2
        );
        assert!(report.certified);

        // v is constant on mu_3, so psi_bar is a rotation and the whole
        // family is certified at once.
        let shortcut = constant_v_check(&report);
        let alpha = shortcut.alpha.unwrap();
        println!(
            "  constant v = {} -> psi_bar is multiplication by it",
            ctx.mu3()[alpha]
        );
        assert!(shortcut.family_certified);

        let oracle = check_pp_cpp(&t);
        assert!(oracle.is_cpp, "the oracle confirms each published instance");
        let cert = Certificate::from_scalar(&t, &d, &report, oracle.is_cpp);
        println!("  certificate: {}", cert.to_json_line());

        // Round trip: parse the emitted line and re-run everything.
        let parsed = Certificate::parse(&cert.to_json_line()).unwrap();
        assert_eq!(parsed, cert);
        assert!(parsed.reverify().unwrap());
        println!("  round trip + reverification: ok");
    }

    println!("\n== tampered certificates are caught ==");
    let spec = FieldSpec::prime(109).unwrap();
    let d = spec.from_int(63);
    let ctx = family_context(&spec, &d).unwrap();
    let t = CycloTrinomial::delta_family(ctx, &d, 73).unwrap();
    let report = scalar_cpp_check(&t).unwrap();
    let cert = Certificate::from_scalar(&t, &d, &report, check_pp_cpp(&t).is_cpp);
    let mut tampered = cert.clone();
    tampered.v = [Some(2), Some(2), Some(2)];
    assert!(!tampered.reverify().unwrap());
    println!("a certificate with a forged v fails reverification");
}
