//! Ground truth by full evaluation: exhaustive bijectivity checking on F_q.
//!
//! Everything here decides by enumeration, never by criterion, so the rest of
//! the crate can be audited against it. The workhorse is an occupancy bitset
//! indexed by element rank; diagnostics (first collision in rank order, the
//! full preimage list of the collided image, the first missed element) are
//! reproducible across runs by construction.
//!
//! For maps of the shape x^r * h(x^((q-1)/d)) a generator walk evaluates the
//! whole unit group incrementally — two running products instead of a
//! modular power per point — which is what makes the soundness sweeps cheap.
//! Verdicts from the walk and from pointwise evaluation are cross-checked in
//! this module's tests, not assumed.

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::trinomial::CycloTrinomial;

/// Outcome of one exhaustive bijectivity check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BijectionVerdict {
    pub is_bijection: bool,
    /// First collision in rank order: the smallest preimage of the collided
    /// image, paired with the first point that re-hit it.
    pub collision: Option<(FieldElement, FieldElement)>,
    /// Smallest element never attained.
    pub missed: Option<FieldElement>,
}

/// Bitset index of an element: its base-p positional value.
pub fn element_rank(spec: &FieldSpec, x: &FieldElement) -> u64 {
    spec.rank(x)
}

/// Evaluates `eval` on all q points and decides bijectivity by occupancy.
pub fn check_permutation(
    spec: &FieldSpec,
    mut eval: impl FnMut(&FieldElement) -> FieldElement,
) -> BijectionVerdict {
    let q = spec.q();
    let mut bits = vec![0u64; q.div_ceil(64) as usize];
    let mut first_repeat: Option<(u64, u64)> = None; // (image rank, second preimage rank)
    for rank in 0..q {
        let x = spec.unrank(rank);
        let image = spec.rank(&eval(&x));
        debug_assert!(image < q);
        let (word, bit) = ((image / 64) as usize, image % 64);
        if bits[word] >> bit & 1 == 1 {
            if first_repeat.is_none() {
                first_repeat = Some((image, rank));
            }
        } else {
            bits[word] |= 1 << bit;
        }
    }
    match first_repeat {
        None => BijectionVerdict {
            is_bijection: true,
            collision: None,
            missed: None,
        },
        Some((image_rank, second)) => {
            let first = (0..second)
                .map(|r| spec.unrank(r))
                .find(|x| spec.rank(&eval(x)) == image_rank)
                .expect("occupied bit has an earlier preimage");
            let missed_rank = (0..q)
                .find(|&r| bits[(r / 64) as usize] >> (r % 64) & 1 == 0)
                .expect("a collision forces a missed element");
            BijectionVerdict {
                is_bijection: false,
                collision: Some((first, spec.unrank(second))),
                missed: Some(spec.unrank(missed_rank)),
            }
        }
    }
}

/// Fast exhaustive verdict for x^r * h(x^((q-1)/d)), optionally + x, with
/// h given by its values on the canonical listing of mu_d. Zero maps to
/// zero. Same answer as [`check_permutation`] on the pointwise map, at a
/// fraction of the cost: the unit group is walked as powers of a generator.
pub fn cyclotomic_map_is_bijection(
    spec: &FieldSpec,
    r: u64,
    d: u64,
    values: &[FieldElement],
    add_x: bool,
) -> Result<bool> {
    let q = spec.q();
    if d == 0 || (q - 1) % d != 0 {
        return Err(Error::DNotDividing {
            d,
            q_minus_one: q - 1,
        });
    }
    if values.len() as u64 != d {
        return Err(Error::MalformedTable(format!(
            "{} values supplied for the {d} classes of mu_{d}",
            values.len()
        )));
    }
    for v in values {
        spec.add(v, &spec.zero())?;
    }
    let mu_d = spec.mu_d(d)?;
    let g = spec.multiplicative_generator();
    let w = spec.pow(&g, (q - 1) / d)?;
    let m = mu_d
        .iter()
        .position(|x| *x == w)
        .expect("g^((q-1)/d) lies in mu_d") as u64;
    let g_r = spec.pow(&g, r % (q - 1))?;

    let mut bits = vec![0u64; q.div_ceil(64) as usize];
    bits[0] = 1; // 0 maps to 0
    let mut x = spec.one();
    let mut x_r = spec.one();
    let mut class = 0usize;
    for i in 0..q - 1 {
        if i > 0 {
            x = spec.mul_raw(&x, &g);
            x_r = spec.mul_raw(&x_r, &g_r);
            class = (class + m as usize) % d as usize;
        }
        let mut image = spec.mul_raw(&x_r, &values[class]);
        if add_x {
            image = spec.add_raw(&image, &x);
        }
        let rank = spec.rank(&image);
        let (word, bit) = ((rank / 64) as usize, rank % 64);
        if bits[word] >> bit & 1 == 1 {
            return Ok(false);
        }
        bits[word] |= 1 << bit;
    }
    Ok(true)
}

/// Failure detail for one non-bijective map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MapDiagnostics {
    /// First collision in rank order.
    pub collision: (FieldElement, FieldElement),
    /// The image both collision points share.
    pub common_image: FieldElement,
    /// Every preimage of `common_image`, in rank order.
    pub preimages: Vec<FieldElement>,
    /// Smallest element never attained.
    pub missed: FieldElement,
}

/// PP/CPP verdict for a cyclotomic trinomial, with witnesses on failure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PpCppVerdict {
    pub f_is_pp: bool,
    pub f_plus_x_is_pp: bool,
    pub is_cpp: bool,
    pub f_diagnostics: Option<MapDiagnostics>,
    pub f_plus_x_diagnostics: Option<MapDiagnostics>,
}

/// Decides by full evaluation whether f and F = f + X permute F_q.
pub fn check_pp_cpp(t: &CycloTrinomial) -> PpCppVerdict {
    let spec = t.spec();
    let values = canonical_c_values(t);
    let f_is_pp = cyclotomic_map_is_bijection(spec, t.r_reduced(), 3, &values, false)
        .expect("trinomial context guarantees 3 | q - 1");
    let f_plus_x_is_pp = cyclotomic_map_is_bijection(spec, t.r_reduced(), 3, &values, true)
        .expect("trinomial context guarantees 3 | q - 1");
    let f_diagnostics =
        (!f_is_pp).then(|| diagnose(spec, |x| t.eval_f(x).expect("element of the field")));
    let f_plus_x_diagnostics = (!f_plus_x_is_pp)
        .then(|| diagnose(spec, |x| t.eval_f_plus_x(x).expect("element of the field")));
    PpCppVerdict {
        f_is_pp,
        f_plus_x_is_pp,
        is_cpp: f_is_pp && f_plus_x_is_pp,
        f_diagnostics,
        f_plus_x_diagnostics,
    }
}

/// Reindexes a trinomial's c-table from its context order onto the canonical
/// listing of mu_3, the order the generator walk works in.
fn canonical_c_values(t: &CycloTrinomial) -> Vec<FieldElement> {
    let canonical = t.spec().mu_d(3).expect("3 | q - 1");
    canonical
        .iter()
        .map(|u| {
            let i = t.ctx().mu3_index(u).expect("same subgroup");
            t.c_table()[i].clone()
        })
        .collect()
}

/// Full failure report for a map already known not to biject.
fn diagnose(
    spec: &FieldSpec,
    mut eval: impl FnMut(&FieldElement) -> FieldElement,
) -> MapDiagnostics {
    let verdict = check_permutation(spec, &mut eval);
    let (first, second) = verdict
        .collision
        .expect("diagnosis is only run on non-bijections");
    let common_image = eval(&first);
    let preimages = (0..spec.q())
        .map(|r| spec.unrank(r))
        .filter(|x| eval(x) == common_image)
        .collect();
    MapDiagnostics {
        collision: (first, second),
        common_image,
        preimages,
        missed: verdict.missed.expect("non-bijection misses an element"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mu3::Mu3Context;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::sync::Arc;

    fn delta_instance(q: u64, delta: u64, r: u64) -> CycloTrinomial {
        let spec = FieldSpec::prime(q).unwrap();
        let d = spec.from_int(delta);
        let ctx = Arc::new(Mu3Context::with_omega(&spec, &d).unwrap());
        CycloTrinomial::delta_family(ctx, &d, r).unwrap()
    }

    #[test]
    fn identity_and_scalings_biject() {
        for spec in [
            FieldSpec::prime(7).unwrap(),
            FieldSpec::prime(109).unwrap(),
            FieldSpec::new(5, 2).unwrap(),
            FieldSpec::new(7, 3).unwrap(),
        ] {
            let v = check_permutation(&spec, |x| x.clone());
            assert!(v.is_bijection);
            assert_eq!(v.collision, None);
            assert_eq!(v.missed, None);
            let g = spec.multiplicative_generator();
            assert!(check_permutation(&spec, |x| spec.mul(&g, x).unwrap()).is_bijection);
        }
    }

    #[test]
    fn squaring_collides_in_odd_characteristic() {
        for q in [7u64, 13, 31] {
            let spec = FieldSpec::prime(q).unwrap();
            let v = check_permutation(&spec, |x| spec.mul(x, x).unwrap());
            assert!(!v.is_bijection);
            // x and -x share an image; scanning upward, the first repeat is
            // at (q+1)/2, whose negative (q-1)/2 was seen just before it.
            let (a, b) = v.collision.unwrap();
            assert_eq!((a.residue(), b.residue()), ((q - 1) / 2, (q + 1) / 2));
        }
    }

    #[test]
    fn triple_zero_failure_over_f7() {
        let t = delta_instance(7, 2, 1);
        let spec = t.spec().clone();
        let v = check_permutation(&spec, |x| t.eval_f_plus_x(x).unwrap());
        assert!(!v.is_bijection);
        let (a, b) = v.collision.unwrap();
        assert_eq!((a.residue(), b.residue()), (0, 3));
        assert_eq!(v.missed.unwrap().residue(), 1);

        let verdict = check_pp_cpp(&t);
        assert!(verdict.f_is_pp);
        assert!(!verdict.f_plus_x_is_pp);
        assert!(!verdict.is_cpp);
        assert!(verdict.f_diagnostics.is_none());
        let diag = verdict.f_plus_x_diagnostics.unwrap();
        assert!(diag.common_image.is_zero());
        assert_eq!(
            diag.preimages.iter().map(|x| x.residue()).collect::<Vec<_>>(),
            vec![0, 3, 4]
        );
    }

    #[test]
    fn collision_pair_over_f31() {
        let t = delta_instance(31, 25, 7);
        let verdict = check_pp_cpp(&t);
        assert!(verdict.f_is_pp, "f itself permutes F_31");
        assert!(!verdict.f_plus_x_is_pp);
        let diag = verdict.f_plus_x_diagnostics.unwrap();
        assert_eq!(diag.common_image.residue(), 10);
        assert_eq!(
            diag.collision.0.residue() < diag.collision.1.residue(),
            true
        );
        assert!(diag
            .preimages
            .iter()
            .map(|x| x.residue())
            .collect::<Vec<_>>()
            .contains(&5));
        assert!(diag
            .preimages
            .iter()
            .map(|x| x.residue())
            .collect::<Vec<_>>()
            .contains(&8));
        assert_eq!(diag.collision.0.residue(), 5);
        assert_eq!(diag.collision.1.residue(), 8);
    }

    #[test]
    fn paper_cpp_instances_confirm() {
        for (q, delta, r) in [(109u64, 63u64, 73u64), (163, 58, 163), (199, 106, 199)] {
            let t = delta_instance(q, delta, r);
            let verdict = check_pp_cpp(&t);
            assert!(verdict.is_cpp, "q = {q}");
        }
    }

    #[test]
    fn agrees_with_sort_and_compare_reference() {
        // Reference implementation: a map is a bijection iff its sorted
        // image ranks are exactly 0..q.
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        for q in [7u64, 13, 25, 31] {
            let spec = if q == 25 {
                FieldSpec::new(5, 2).unwrap()
            } else {
                FieldSpec::prime(q).unwrap()
            };
            for trial in 0..200 {
                // Mix permutations in with arbitrary maps so both verdicts occur.
                let images: Vec<u64> = if trial % 3 == 0 {
                    let mut v: Vec<u64> = (0..q).collect();
                    for i in (1..v.len()).rev() {
                        let j = rng.gen_range(0..=i);
                        v.swap(i, j);
                    }
                    v
                } else {
                    (0..q).map(|_| rng.gen_range(0..q)).collect()
                };
                let verdict =
                    check_permutation(&spec, |x| spec.unrank(images[spec.rank(x) as usize]));
                let mut sorted = images.clone();
                sorted.sort_unstable();
                let reference = sorted.iter().copied().eq(0..q);
                assert_eq!(verdict.is_bijection, reference, "q = {q}, trial = {trial}");
                if let Some((a, b)) = verdict.collision {
                    assert_ne!(a, b);
                    assert_eq!(
                        images[spec.rank(&a) as usize],
                        images[spec.rank(&b) as usize]
                    );
                }
            }
        }
    }

    #[test]
    fn walk_agrees_with_pointwise_evaluation() {
        // The generator walk and the pointwise oracle must give the same
        // verdict for every trinomial, bijective or not, zero values
        // included, extension fields included.
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let specs = [
            FieldSpec::prime(7).unwrap(),
            FieldSpec::prime(13).unwrap(),
            FieldSpec::prime(31).unwrap(),
            FieldSpec::prime(109).unwrap(),
            FieldSpec::new(5, 2).unwrap(),
            FieldSpec::new(2, 4).unwrap(),
            FieldSpec::new(7, 3).unwrap(),
        ];
        for spec in &specs {
            let ctx = Arc::new(Mu3Context::new(spec).unwrap());
            for _ in 0..12 {
                let r = rng.gen_range(1..spec.q());
                let c_table = std::array::from_fn(|_| {
                    // Zero with probability 1/8 to hit the degenerate branch.
                    if rng.gen_range(0..8) == 0 {
                        spec.zero()
                    } else {
                        spec.unrank(rng.gen_range(1..spec.q()))
                    }
                });
                let t = CycloTrinomial::new(ctx.clone(), r, c_table).unwrap();
                let fast = check_pp_cpp(&t);
                let slow_f = check_permutation(spec, |x| t.eval_f(x).unwrap());
                let slow_fx = check_permutation(spec, |x| t.eval_f_plus_x(x).unwrap());
                assert_eq!(fast.f_is_pp, slow_f.is_bijection, "{spec} r={r}");
                assert_eq!(fast.f_plus_x_is_pp, slow_fx.is_bijection, "{spec} r={r}");
            }
        }
    }

    #[test]
    fn walk_handles_general_divisors() {
        // d other than 3: x^r * h(x^((q-1)/d)) against pointwise evaluation.
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for (q, d) in [(13u64, 4u64), (13, 6), (31, 5), (109, 12), (7, 6)] {
            let spec = FieldSpec::prime(q).unwrap();
            let mu = spec.mu_d(d).unwrap();
            let s = (q - 1) / d;
            for _ in 0..20 {
                let r = rng.gen_range(1..q);
                let values: Vec<FieldElement> =
                    (0..d).map(|_| spec.unrank(rng.gen_range(0..q))).collect();
                let fast = cyclotomic_map_is_bijection(&spec, r, d, &values, false).unwrap();
                let slow = check_permutation(&spec, |x| {
                    if x.is_zero() {
                        return spec.zero();
                    }
                    let class = spec.pow(x, s).unwrap();
                    let i = mu.iter().position(|u| *u == class).unwrap();
                    spec.mul(&spec.pow(x, r).unwrap(), &values[i]).unwrap()
                });
                assert_eq!(fast, slow.is_bijection, "q={q} d={d} r={r}");
            }
        }
        let spec = FieldSpec::prime(13).unwrap();
        assert!(matches!(
            cyclotomic_map_is_bijection(&spec, 1, 5, &[spec.one()], false),
            Err(Error::DNotDividing { d: 5, .. })
        ));
        assert!(matches!(
            cyclotomic_map_is_bijection(&spec, 1, 4, &[spec.one()], false),
            Err(Error::MalformedTable(_))
        ));
    }

    #[test]
    fn rank_examples() {
        let f109 = FieldSpec::prime(109).unwrap();
        assert_eq!(element_rank(&f109, &f109.from_int(45)), 45);
        assert_eq!(element_rank(&f109, &f109.zero()), 0);
        let f25 = FieldSpec::new(5, 2).unwrap();
        let x = f25.from_coeffs(&[3, 4]).unwrap();
        assert_eq!(element_rank(&f25, &x), 23);
    }
}
