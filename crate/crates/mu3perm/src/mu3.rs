//! The order-3 cyclotomic decomposition of F_q^* for q = 1 mod 3.
//!
//! With s = (q-1)/3, the power map pi(x) = x^s sends F_q^* onto the group
//! mu_3 of cube roots of unity and splits the units into three fibers of
//! size s: the kernel K = mu_s and its two nontrivial cosets. A
//! [`Mu3Context`] fixes an ordering [1, w, w^2] of mu_3 (canonically w is
//! the smallest-rank primitive cube root; constructions tied to a specific
//! root can override it) and exposes projection, fiber membership, and the
//! smallest-rank representative of each fiber.

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};

/// The cyclotomic structure of one F_q^* with respect to a chosen primitive
/// cube root of unity.
#[derive(Debug)]
pub struct Mu3Context {
    spec: FieldSpec,
    s: u64,
    mu3: [FieldElement; 3],
    fibers: OnceLock<[Vec<FieldElement>; 3]>,
}

impl Mu3Context {
    /// Canonical context: w is the smallest-rank primitive cube root of
    /// unity, so mu_3 is listed as `[1, w, w^2]` with `w < w^2`.
    pub fn new(spec: &FieldSpec) -> Result<Mu3Context> {
        let q = spec.q();
        if q % 3 != 1 {
            return Err(Error::NotOneModThree(q));
        }
        let mu3_list = spec.mu_d(3).expect("3 divides q - 1");
        let mu3 = [
            mu3_list[0].clone(),
            mu3_list[1].clone(),
            mu3_list[2].clone(),
        ];
        Ok(Mu3Context {
            spec: spec.clone(),
            s: (q - 1) / 3,
            mu3,
            fibers: OnceLock::new(),
        })
    }

    /// Context ordered by a caller-chosen primitive cube root: mu_3 is
    /// listed as `[1, omega, omega^2]`.
    pub fn with_omega(spec: &FieldSpec, omega: &FieldElement) -> Result<Mu3Context> {
        let q = spec.q();
        if q % 3 != 1 {
            return Err(Error::NotOneModThree(q));
        }
        let cube = spec.pow(omega, 3)?;
        if omega.is_one() || !cube.is_one() {
            return Err(Error::DeltaNotInMu3(omega.to_string()));
        }
        let omega_sq = spec.mul(omega, omega)?;
        Ok(Mu3Context {
            spec: spec.clone(),
            s: (q - 1) / 3,
            mu3: [spec.one(), omega.clone(), omega_sq],
            fibers: OnceLock::new(),
        })
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    /// s = (q - 1) / 3, the size of each fiber.
    pub fn s(&self) -> u64 {
        self.s
    }

    /// The chosen primitive cube root of unity.
    pub fn omega(&self) -> &FieldElement {
        &self.mu3[1]
    }

    /// The cube roots of unity in context order: `[1, w, w^2]`.
    pub fn mu3(&self) -> &[FieldElement; 3] {
        &self.mu3
    }

    /// pi(x) = x^s. Zero has no cube-root image.
    pub fn project(&self, x: &FieldElement) -> Result<FieldElement> {
        if x.is_zero() {
            return Err(Error::ZeroInput);
        }
        self.spec.pow(x, self.s)
    }

    /// The exponent m with x = w^m, if x lies in mu_3.
    pub fn mu3_index(&self, x: &FieldElement) -> Option<usize> {
        self.mu3.iter().position(|v| v == x)
    }

    /// The fiber index of x: the m with pi(x) = w^m.
    pub fn projected_index(&self, x: &FieldElement) -> Result<usize> {
        let image = self.project(x)?;
        Ok(self
            .mu3_index(&image)
            .expect("x^s is always a cube root of unity"))
    }

    /// The three fibers of pi, each sorted in rank order. Fiber m collects
    /// the x with pi(x) = w^m; fiber 0 is the kernel K = mu_s.
    pub fn fibers(&self) -> &[Vec<FieldElement>; 3] {
        self.fibers.get_or_init(|| {
            let spec = &self.spec;
            let g = spec.multiplicative_generator();
            let g_s = spec.pow(&g, self.s).expect("generator is in the field");
            let m_g = self
                .mu3_index(&g_s)
                .expect("g^s is a cube root of unity");
            debug_assert!(m_g != 0, "g^s has order 3 exactly");
            // Walk x = g^i; its fiber index is m_g * i mod 3, so the three
            // fibers fill in one pass over the unit group.
            let mut fibers: [Vec<FieldElement>; 3] = [
                Vec::with_capacity(self.s as usize),
                Vec::with_capacity(self.s as usize),
                Vec::with_capacity(self.s as usize),
            ];
            let mut x = spec.one();
            let mut idx = 0usize;
            for i in 0..spec.q() - 1 {
                if i > 0 {
                    x = spec.mul(&x, &g).expect("walk stays in the field");
                    idx = (idx + m_g) % 3;
                }
                fibers[idx].push(x.clone());
            }
            for fiber in fibers.iter_mut() {
                fiber.sort();
            }
            fibers
        })
    }

    /// The elements of fiber m in rank order.
    pub fn fiber_elements(&self, m: usize) -> &[FieldElement] {
        &self.fibers()[m]
    }

    /// K = mu_s, the kernel of pi, in rank order.
    pub fn kernel_elements(&self) -> &[FieldElement] {
        &self.fibers()[0]
    }

    /// The smallest-rank element of fiber m. For the kernel this is 1.
    pub fn fiber_representative(&self, m: usize) -> &FieldElement {
        &self.fibers()[m][0]
    }
}
