//! Plain integer number theory on `u64`: gcd, deterministic primality,
//! factorization, prime-power decomposition.
//!
//! All field orders in this crate are at most 2^31, so trial division is
//! exact, deterministic, and fast enough everywhere it is used.

/// Greatest common divisor. `gcd(0, 0) == 0`.
pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Deterministic primality by trial division (6k±1 wheel).
pub fn is_prime(x: u64) -> bool {
    if x < 2 {
        return false;
    }
    if x < 4 {
        return true;
    }
    if x % 2 == 0 || x % 3 == 0 {
        return false;
    }
    let mut d = 5u64;
    while d * d <= x {
        if x % d == 0 || x % (d + 2) == 0 {
            return false;
        }
        d += 6;
    }
    true
}

/// Prime factorization as `(prime, multiplicity)` pairs, primes ascending.
pub fn factorize(mut x: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut push = |p: u64, x: &mut u64| {
        if *x % p == 0 {
            let mut e = 0u32;
            while *x % p == 0 {
                *x /= p;
                e += 1;
            }
            out.push((p, e));
        }
    };
    push(2, &mut x);
    push(3, &mut x);
    let mut d = 5u64;
    while d * d <= x {
        push(d, &mut x);
        push(d + 2, &mut x);
        d += 6;
    }
    if x > 1 {
        out.push((x, 1));
    }
    out
}

/// Writes `x` as `p^n` for a single prime `p`, if possible.
pub fn prime_power(x: u64) -> Option<(u64, u32)> {
    let f = factorize(x);
    match f.as_slice() {
        [(p, n)] => Some((*p, *n)),
        _ => None,
    }
}

/// All primes in `[2, limit]`, ascending. Intended for test sweeps, where
/// `limit` stays in the low thousands.
pub fn primes_up_to(limit: u64) -> Vec<u64> {
    (2..=limit).filter(|&x| is_prime(x)).collect()
}
