//! The cyclotomic trinomial shape f(X) = X^r c(X^s) and its named families.
//!
//! The inner function c lives on mu_3 and is stored as its value triple
//! [c(1), c(w), c(w^2)] in context order; every permutation criterion in the
//! crate consumes only those three values. A dense polynomial form (three
//! monomials X^r, X^(r+s), X^(r+2s)) is derived by interpolation when a
//! concrete polynomial is wanted for display or cross-checking.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::mu3::Mu3Context;

/// f(X) = X^r c(X^s) over the field of its context, with F(X) = f(X) + X.
#[derive(Debug, Clone)]
pub struct CycloTrinomial {
    ctx: Arc<Mu3Context>,
    /// The exponent as given; kept for reporting even when it exceeds q - 1.
    r: u64,
    /// r reduced into [1, q-1]; agrees with r on the nonzero domain.
    r_reduced: u64,
    c_table: [FieldElement; 3],
}

impl CycloTrinomial {
    /// Builds f from its exponent and the value triple [c(1), c(w), c(w^2)].
    /// Zero values are allowed here; criteria that need units reject them.
    pub fn new(ctx: Arc<Mu3Context>, r: u64, c_table: [FieldElement; 3]) -> Result<CycloTrinomial> {
        if r < 1 {
            return Err(Error::InvalidExponent(r));
        }
        let spec = ctx.spec();
        for v in &c_table {
            // Surface shape mismatches at construction time.
            spec.add(v, &spec.zero())?;
        }
        let group = spec.q() - 1;
        let r_reduced = (r - 1) % group + 1;
        Ok(CycloTrinomial {
            ctx,
            r,
            r_reduced,
            c_table,
        })
    }

    /// The family X^r (X^2s + delta X^s + delta^2 + 1) for delta a cube root
    /// of unity: c(u) = u^2 + delta u + delta^2 + 1 on mu_3, which works out
    /// to 3 delta^2 + 1 at u = delta and 1 elsewhere (4 at every u when
    /// delta = 1).
    pub fn delta_family(
        ctx: Arc<Mu3Context>,
        delta: &FieldElement,
        r: u64,
    ) -> Result<CycloTrinomial> {
        let spec = ctx.spec();
        if delta.is_zero() || !spec.pow(delta, 3)?.is_one() {
            return Err(Error::DeltaNotInMu3(delta.to_string()));
        }
        let delta_sq = spec.mul(delta, delta)?;
        let shift = spec.add(&delta_sq, &spec.one())?;
        let c_table = std::array::from_fn(|i| {
            let u = &ctx.mu3()[i];
            let u_sq = spec.mul_raw(u, u);
            let du = spec.mul_raw(delta, u);
            spec.add_raw(&spec.add_raw(&u_sq, &du), &shift)
        });
        CycloTrinomial::new(ctx, r, c_table)
    }

    /// The family X^r (X^2s + X^s + gamma): c = [gamma+2, gamma-1, gamma-1].
    /// gamma = 1 and gamma = -2 are rejected because they zero a c-value.
    pub fn gamma_family(
        ctx: Arc<Mu3Context>,
        gamma: &FieldElement,
        r: u64,
    ) -> Result<CycloTrinomial> {
        let spec = ctx.spec();
        let two = spec.from_int(2);
        let head = spec.add(gamma, &two)?;
        let tail = spec.sub(gamma, &spec.one())?;
        if head.is_zero() || tail.is_zero() {
            return Err(Error::GammaDegenerate(gamma.to_string()));
        }
        let c_table = [head, tail.clone(), tail];
        CycloTrinomial::new(ctx, r, c_table)
    }

    pub fn ctx(&self) -> &Arc<Mu3Context> {
        &self.ctx
    }

    pub fn spec(&self) -> &FieldSpec {
        self.ctx.spec()
    }

    /// The exponent as originally given.
    pub fn r(&self) -> u64 {
        self.r
    }

    /// The evaluation exponent, normalized into [1, q-1].
    pub fn r_reduced(&self) -> u64 {
        self.r_reduced
    }

    /// The value triple [c(1), c(w), c(w^2)] in context order.
    pub fn c_table(&self) -> &[FieldElement; 3] {
        &self.c_table
    }

    /// f(x) = x^r c(pi(x)), with f(0) = 0.
    pub fn eval_f(&self, x: &FieldElement) -> Result<FieldElement> {
        let spec = self.ctx.spec();
        if x.is_zero() {
            // Validate the shape even though the value is forced.
            spec.add(x, &spec.zero())?;
            return Ok(spec.zero());
        }
        let m = self.ctx.projected_index(x)?;
        let power = spec.pow(x, self.r_reduced)?;
        Ok(spec.mul_raw(&power, &self.c_table[m]))
    }

    /// F(x) = f(x) + x.
    pub fn eval_f_plus_x(&self, x: &FieldElement) -> Result<FieldElement> {
        let spec = self.ctx.spec();
        let fx = self.eval_f(x)?;
        Ok(spec.add_raw(&fx, x))
    }

    /// Sparse dense-polynomial form of f: the monomials (r, b0), (r+s, b1),
    /// (r+2s, b2) where b0 + b1 Y + b2 Y^2 interpolates the c-values on
    /// mu_3. Exponents use the original r, unreduced; zero coefficients are
    /// dropped.
    pub fn dense_f(&self) -> Vec<(u64, FieldElement)> {
        let s = self.ctx.s();
        let h = self.interpolate_c();
        let mut out = Vec::with_capacity(3);
        for (j, coeff) in h.into_iter().enumerate() {
            if !coeff.is_zero() {
                out.push((self.r + s * j as u64, coeff));
            }
        }
        out
    }

    /// Sparse form of F = f + X: `dense_f` plus the monomial X.
    pub fn dense_f_plus_x(&self) -> Vec<(u64, FieldElement)> {
        let spec = self.ctx.spec();
        let mut out = self.dense_f();
        match out.iter_mut().find(|(e, _)| *e == 1) {
            Some((_, coeff)) => {
                *coeff = spec.add_raw(coeff, &spec.one());
                out.retain(|(_, c)| !c.is_zero());
            }
            None => {
                out.push((1, spec.one()));
                out.sort_by_key(|&(e, _)| e);
            }
        }
        out
    }

    /// Lagrange interpolation of the c-values at the three nodes of mu_3,
    /// returned as [b0, b1, b2] with h(Y) = b0 + b1 Y + b2 Y^2.
    fn interpolate_c(&self) -> [FieldElement; 3] {
        let spec = self.ctx.spec();
        let nodes = self.ctx.mu3();
        let mut acc = [spec.zero(), spec.zero(), spec.zero()];
        for i in 0..3 {
            let (j, k) = ((i + 1) % 3, (i + 2) % 3);
            // Basis polynomial (Y - n_j)(Y - n_k) / ((n_i - n_j)(n_i - n_k)).
            let denom = spec.mul_raw(
                &spec.add_raw(&nodes[i], &spec.neg_raw(&nodes[j])),
                &spec.add_raw(&nodes[i], &spec.neg_raw(&nodes[k])),
            );
            let scale = spec
                .mul(&self.c_table[i], &spec.inv(&denom).expect("nodes are distinct"))
                .expect("same field");
            let prod = spec.mul_raw(&nodes[j], &nodes[k]);
            let sum = spec.add_raw(&nodes[j], &nodes[k]);
            acc[0] = spec.add_raw(&acc[0], &spec.mul_raw(&scale, &prod));
            acc[1] = spec.add_raw(&acc[1], &spec.neg_raw(&spec.mul_raw(&scale, &sum)));
            acc[2] = spec.add_raw(&acc[2], &scale);
        }
        acc
    }
}

/// The three fixed-gamma instances whose hypotheses force a permutation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FixedGamma {
    /// gamma = (p-1)/2 over any q = 1 mod 6.
    HalfOfCharMinusOne,
    /// gamma = 2 over q = p^n with p = 1 mod 3 and 3 | n.
    TwoInCubicTower,
    /// gamma = 2 over q = p^n with p >= 5, p = -1 mod 3, and n even.
    TwoInEvenTower,
}

impl FixedGamma {
    /// Stable item number used in hypothesis-violation reports.
    pub fn item(self) -> u8 {
        match self {
            FixedGamma::HalfOfCharMinusOne => 1,
            FixedGamma::TwoInCubicTower => 2,
            FixedGamma::TwoInEvenTower => 3,
        }
    }

    /// Checks the instance's hypotheses on the field.
    pub fn check_hypotheses(self, spec: &FieldSpec) -> Result<()> {
        let (p, n, q) = (spec.p(), spec.n(), spec.q());
        let fail = |reason: &str| {
            Err(Error::HypothesisViolated {
                item: self.item(),
                reason: reason.to_string(),
            })
        };
        match self {
            FixedGamma::HalfOfCharMinusOne => {
                if q % 6 != 1 {
                    return fail(&format!("q = {q} is not 1 mod 6"));
                }
            }
            FixedGamma::TwoInCubicTower => {
                if p % 3 != 1 {
                    return fail(&format!("p = {p} is not 1 mod 3"));
                }
                if n % 3 != 0 {
                    return fail(&format!("extension degree {n} is not a multiple of 3"));
                }
            }
            FixedGamma::TwoInEvenTower => {
                if p < 5 {
                    return fail(&format!("p = {p} is below 5"));
                }
                if p % 3 != 2 {
                    return fail(&format!("p = {p} is not -1 mod 3"));
                }
                if n % 2 != 0 {
                    return fail(&format!("extension degree {n} is odd"));
                }
            }
        }
        Ok(())
    }

    /// The instance's gamma value, after checking the hypotheses.
    pub fn gamma_value(self, spec: &FieldSpec) -> Result<FieldElement> {
        self.check_hypotheses(spec)?;
        match self {
            FixedGamma::HalfOfCharMinusOne => Ok(spec.from_int((spec.p() - 1) / 2)),
            FixedGamma::TwoInCubicTower | FixedGamma::TwoInEvenTower => Ok(spec.from_int(2)),
        }
    }
}
