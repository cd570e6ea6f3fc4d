//! Parameter sweeps: certificate emission for the scalar family, failure
//! scanning in the range where the scalar hypotheses cannot hold, and a
//! census summarizing both.
//!
//! Sweeps parallelize across field orders with rayon; results are merged in
//! ascending order of q, so output is identical across runs and thread
//! counts. Every certificate carries a verdict from an actual oracle run.

use std::collections::BTreeMap;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{gcd, prime_power};
use crate::criteria::{
    family_hypothesis, general_cpp_check, scalar_cpp_check, FamilyForm, GeneralReport,
    ScalarReport,
};
use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::mu3::Mu3Context;
use crate::oracle::check_pp_cpp;
use crate::trinomial::CycloTrinomial;

/// Admissibility of one cube root of unity for the delta family.
#[derive(Debug, Clone)]
pub struct DeltaStatus {
    pub delta: FieldElement,
    /// witness^s = 1, the family hypothesis.
    pub admissible: bool,
    /// 3 delta^2 + 1.
    pub witness: FieldElement,
}

/// Reports the family hypothesis for each of the three cube roots of unity,
/// in canonical mu_3 order.
pub fn enumerate_delta(ctx: &Mu3Context) -> Vec<DeltaStatus> {
    ctx.mu3()
        .iter()
        .map(|delta| {
            let report = family_hypothesis(ctx, &FamilyForm::Delta(delta.clone()))
                .expect("mu_3 members are valid deltas");
            DeltaStatus {
                delta: delta.clone(),
                admissible: report.holds,
                witness: report.witness,
            }
        })
        .collect()
}

/// The mu_3 context a delta-family instance is reported in: fibers listed
/// as [1, delta, delta^2] when delta is primitive, canonically otherwise.
pub fn family_context(spec: &FieldSpec, delta: &FieldElement) -> Result<Arc<Mu3Context>> {
    if delta.is_one() {
        Ok(Arc::new(Mu3Context::new(spec)?))
    } else {
        Ok(Arc::new(Mu3Context::with_omega(spec, delta)?))
    }
}

/// The trinomial reconstruction triple embedded in a certificate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrinomialJson {
    pub q: u64,
    pub r: u64,
    pub c: [String; 3],
}

/// Which criterion certified an instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Criterion {
    Scalar,
    General,
}

/// A machine-checkable record of one certified CPP instance: parameters,
/// per-condition booleans, and the verdict of an oracle run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub spec: String,
    pub trinomial: TrinomialJson,
    pub delta: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<u64>,
    pub r: u64,
    pub c_table: [String; 3],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tau: Option<[String; 3]>,
    pub v: [Option<usize>; 3],
    pub psi_bar: [Option<usize>; 3],
    pub criterion: Criterion,
    pub checks: BTreeMap<String, bool>,
    pub oracle_confirmed: bool,
}

fn encode3(xs: &[FieldElement; 3]) -> [String; 3] {
    std::array::from_fn(|i| xs[i].to_string())
}

impl Certificate {
    /// Packages a passing scalar report with its oracle verdict.
    pub fn from_scalar(
        t: &CycloTrinomial,
        delta: &FieldElement,
        report: &ScalarReport,
        oracle_confirmed: bool,
    ) -> Certificate {
        let c_table = encode3(t.c_table());
        Certificate {
            spec: t.spec().to_string(),
            trinomial: TrinomialJson {
                q: t.spec().q(),
                r: t.r(),
                c: c_table.clone(),
            },
            delta: delta.to_string(),
            k: Some(report.k),
            r: t.r(),
            c_table,
            tau: Some(encode3(&report.tau)),
            v: report.v,
            psi_bar: report.psi_bar,
            criterion: Criterion::Scalar,
            checks: BTreeMap::from([("h1".to_string(), report.h1), ("h2".to_string(), report.h2)]),
            oracle_confirmed,
        }
    }

    /// Packages a passing four-condition report with its oracle verdict.
    pub fn from_general(
        t: &CycloTrinomial,
        delta: &FieldElement,
        report: &GeneralReport,
        oracle_confirmed: bool,
    ) -> Certificate {
        let c_table = encode3(t.c_table());
        Certificate {
            spec: t.spec().to_string(),
            trinomial: TrinomialJson {
                q: t.spec().q(),
                r: t.r(),
                c: c_table.clone(),
            },
            delta: delta.to_string(),
            k: None,
            r: t.r(),
            c_table,
            tau: None,
            v: report.v,
            psi_bar: report.psi_bar,
            criterion: Criterion::General,
            checks: BTreeMap::from([
                ("g1".to_string(), report.g1),
                ("g2".to_string(), report.g2),
                ("g3".to_string(), report.g3),
                ("g4".to_string(), report.g4),
            ]),
            oracle_confirmed,
        }
    }

    /// One JSON-Lines line.
    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("certificates serialize")
    }

    /// Parses one JSON-Lines line.
    pub fn parse(line: &str) -> Result<Certificate> {
        serde_json::from_str(line).map_err(|e| Error::BadCertificate(e.to_string()))
    }

    /// Rebuilds the certified trinomial from the stored fields, checking
    /// internal consistency.
    pub fn rebuild(&self) -> Result<CycloTrinomial> {
        let spec = FieldSpec::parse(&self.spec)?;
        if self.trinomial.q != spec.q()
            || self.trinomial.r != self.r
            || self.trinomial.c != self.c_table
        {
            return Err(Error::BadCertificate(
                "embedded trinomial disagrees with the certificate fields".to_string(),
            ));
        }
        let delta = spec.parse_element(&self.delta)?;
        let ctx = family_context(&spec, &delta)?;
        let c_table = [
            spec.parse_element(&self.c_table[0])?,
            spec.parse_element(&self.c_table[1])?,
            spec.parse_element(&self.c_table[2])?,
        ];
        CycloTrinomial::new(ctx, self.r, c_table)
    }

    /// Re-runs the named criterion and the oracle on the rebuilt trinomial;
    /// true when every stored verdict matches the recomputation.
    pub fn reverify(&self) -> Result<bool> {
        let t = self.rebuild()?;
        let (checks, v, psi_bar, tau, k) = match self.criterion {
            Criterion::Scalar => {
                let report = scalar_cpp_check(&t)?;
                (
                    BTreeMap::from([
                        ("h1".to_string(), report.h1),
                        ("h2".to_string(), report.h2),
                    ]),
                    report.v,
                    report.psi_bar,
                    Some(encode3(&report.tau)),
                    Some(report.k),
                )
            }
            Criterion::General => {
                let report = general_cpp_check(&t)?;
                (
                    BTreeMap::from([
                        ("g1".to_string(), report.g1),
                        ("g2".to_string(), report.g2),
                        ("g3".to_string(), report.g3),
                        ("g4".to_string(), report.g4),
                    ]),
                    report.v,
                    report.psi_bar,
                    None,
                    None,
                )
            }
        };
        let oracle = check_pp_cpp(&t).is_cpp;
        Ok(checks == self.checks
            && v == self.v
            && psi_bar == self.psi_bar
            && tau == self.tau
            && k == self.k
            && oracle == self.oracle_confirmed)
    }
}

/// Why F = f + X failed the oracle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FailureReason {
    NotInjective,
    HitsZeroTwice,
}

/// A witnessed failure of F = f + X for one delta-family instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FailureRecord {
    pub spec: String,
    pub delta: String,
    pub r: u64,
    pub x1: String,
    pub x2: String,
    pub common_image: String,
    pub reason: FailureReason,
}

impl FailureRecord {
    /// Rebuilds the instance and confirms eval_F(x1) = eval_F(x2) with
    /// x1 != x2, equal to the recorded common image.
    pub fn reverify(&self) -> Result<bool> {
        let spec = FieldSpec::parse(&self.spec)?;
        let delta = spec.parse_element(&self.delta)?;
        let ctx = family_context(&spec, &delta)?;
        let t = CycloTrinomial::delta_family(ctx, &delta, self.r)?;
        let x1 = spec.parse_element(&self.x1)?;
        let x2 = spec.parse_element(&self.x2)?;
        let common = spec.parse_element(&self.common_image)?;
        let y1 = t.eval_f_plus_x(&x1)?;
        let y2 = t.eval_f_plus_x(&x2)?;
        Ok(x1 != x2 && y1 == y2 && y1 == common)
    }
}

/// Scans the scalar family over one field: every admissible delta crossed
/// with k in [1, k_max], r = 1 + ks. Emits a certificate for each instance
/// passing both scalar conditions, with the oracle verdict recorded from an
/// actual run; instances failing H1 or H2 are dropped.
pub fn scan_scalar_families(spec: &FieldSpec, k_max: u64) -> Result<Vec<Certificate>> {
    if spec.q() % 9 != 1 {
        return Err(Error::NotOneModNine(spec.q()));
    }
    let canonical = Mu3Context::new(spec)?;
    let mut certificates = Vec::new();
    for status in enumerate_delta(&canonical) {
        if !status.admissible {
            continue;
        }
        let ctx = family_context(spec, &status.delta)?;
        for k in 1..=k_max {
            let r = 1 + k * ctx.s();
            let t = CycloTrinomial::delta_family(ctx.clone(), &status.delta, r)?;
            let report = scalar_cpp_check(&t)?;
            if report.certified {
                let oracle = check_pp_cpp(&t);
                certificates.push(Certificate::from_scalar(
                    &t,
                    &status.delta,
                    &report,
                    oracle.is_cpp,
                ));
            }
        }
    }
    Ok(certificates)
}

fn field_for(q: u64) -> Option<FieldSpec> {
    let (p, n) = prime_power(q)?;
    FieldSpec::new(p, n).ok()
}

/// Runs [`scan_scalar_families`] over every prime power q = 1 mod 9 in
/// [q_min, q_max], in parallel, merging certificates in ascending q.
pub fn scan_range(q_min: u64, q_max: u64, k_max: u64) -> Vec<Certificate> {
    let qs: Vec<u64> = (q_min.max(4)..=q_max)
        .filter(|&q| q % 9 == 1 && prime_power(q).is_some())
        .collect();
    let mut per_q: Vec<(u64, Vec<Certificate>)> = qs
        .par_iter()
        .map(|&q| {
            let spec = field_for(q).expect("filtered to prime powers");
            let certs = scan_scalar_families(&spec, k_max).expect("filtered to q = 1 mod 9");
            (q, certs)
        })
        .collect();
    per_q.sort_by_key(|(q, _)| *q);
    per_q.into_iter().flat_map(|(_, certs)| certs).collect()
}

/// The r-enumeration policy of a failure scan.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanMetadata {
    pub q_min: u64,
    pub q_max: u64,
    /// r runs over all units mod q-1 when q is at most this bound...
    pub exhaustive_r_bound: u64,
    /// ...and over the first this-many units above it.
    pub sample_size: usize,
}

/// Scans every prime power q = 1 mod 3 with q != 1 mod 9 in range: all
/// three deltas, r over units mod q-1 (exhaustive up to the recorded bound,
/// a prefix sample above), testing F = f + X by oracle and recording each
/// failure with its collision witness.
pub fn counterexample_scan(q_min: u64, q_max: u64) -> (Vec<FailureRecord>, ScanMetadata) {
    const EXHAUSTIVE_R_BOUND: u64 = 256;
    const SAMPLE_SIZE: usize = 50;
    let qs: Vec<u64> = (q_min.max(4)..=q_max)
        .filter(|&q| q % 3 == 1 && q % 9 != 1 && prime_power(q).is_some())
        .collect();
    let mut per_q: Vec<(u64, Vec<FailureRecord>)> = qs
        .par_iter()
        .map(|&q| {
            let spec = field_for(q).expect("filtered to prime powers");
            let canonical = Mu3Context::new(&spec).expect("q = 1 mod 3");
            let r_limit = if q <= EXHAUSTIVE_R_BOUND {
                usize::MAX
            } else {
                SAMPLE_SIZE
            };
            let rs: Vec<u64> = (1..q)
                .filter(|&r| gcd(r, q - 1) == 1)
                .take(r_limit)
                .collect();
            let mut records = Vec::new();
            for delta in canonical.mu3() {
                let ctx = family_context(&spec, delta).expect("delta is a cube root");
                for &r in &rs {
                    let t = CycloTrinomial::delta_family(ctx.clone(), delta, r)
                        .expect("family parameters are valid");
                    let verdict = check_pp_cpp(&t);
                    if !verdict.f_plus_x_is_pp {
                        let d = verdict
                            .f_plus_x_diagnostics
                            .expect("failing maps carry diagnostics");
                        let reason = if d.common_image.is_zero() {
                            FailureReason::HitsZeroTwice
                        } else {
                            FailureReason::NotInjective
                        };
                        records.push(FailureRecord {
                            spec: spec.to_string(),
                            delta: delta.to_string(),
                            r,
                            x1: d.collision.0.to_string(),
                            x2: d.collision.1.to_string(),
                            common_image: d.common_image.to_string(),
                            reason,
                        });
                    }
                }
            }
            (q, records)
        })
        .collect();
    per_q.sort_by_key(|(q, _)| *q);
    let records = per_q.into_iter().flat_map(|(_, r)| r).collect();
    (
        records,
        ScanMetadata {
            q_min,
            q_max,
            exhaustive_r_bound: EXHAUSTIVE_R_BOUND,
            sample_size: SAMPLE_SIZE,
        },
    )
}

/// One census line: hypothesis and certification counts for a field order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CensusRow {
    pub q: u64,
    pub p: u64,
    pub n: u32,
    pub s: u64,
    /// Deltas with witness^s = 1, out of 3.
    pub admissible_delta: usize,
    /// Scanned shapes passing the scalar criterion (0 unless q = 1 mod 9).
    pub scalar_certified: usize,
    /// Scanned shapes the oracle confirms as CPPs.
    pub oracle_cpp: usize,
    /// Shapes certified by the criterion but refuted by the oracle: any
    /// nonzero count is a defect.
    pub discrepancies: usize,
}

/// Censuses every prime power q = 1 mod 3 up to q_max. Scanned shapes are
/// the admissible deltas crossed with k in [1, k_max] at r = 1 + ks; the
/// oracle runs on every shape, the scalar criterion only where q = 1 mod 9.
pub fn census(q_max: u64, k_max: u64) -> Vec<CensusRow> {
    let qs: Vec<u64> = (4..=q_max)
        .filter(|&q| q % 3 == 1 && prime_power(q).is_some())
        .collect();
    let mut rows: Vec<CensusRow> = qs
        .par_iter()
        .map(|&q| {
            let spec = field_for(q).expect("filtered to prime powers");
            let canonical = Mu3Context::new(&spec).expect("q = 1 mod 3");
            let s = canonical.s();
            let scalar_gate = q % 9 == 1;
            let statuses = enumerate_delta(&canonical);
            let admissible_delta = statuses.iter().filter(|st| st.admissible).count();
            let mut scalar_certified = 0;
            let mut oracle_cpp = 0;
            let mut discrepancies = 0;
            for status in statuses.iter().filter(|st| st.admissible) {
                let ctx = family_context(&spec, &status.delta).expect("delta is a cube root");
                for k in 1..=k_max {
                    let r = 1 + k * s;
                    let t = CycloTrinomial::delta_family(ctx.clone(), &status.delta, r)
                        .expect("family parameters are valid");
                    let certified = scalar_gate
                        && scalar_cpp_check(&t).map(|rep| rep.certified).unwrap_or(false);
                    let cpp = check_pp_cpp(&t).is_cpp;
                    scalar_certified += certified as usize;
                    oracle_cpp += cpp as usize;
                    discrepancies += (certified && !cpp) as usize;
                }
            }
            CensusRow {
                q,
                p: spec.p(),
                n: spec.n(),
                s,
                admissible_delta,
                scalar_certified,
                oracle_cpp,
                discrepancies,
            }
        })
        .collect();
    rows.sort_by_key(|row| row.q);
    rows
}

/// Renders census rows as CSV under the stable header.
pub fn census_csv(rows: &[CensusRow]) -> String {
    let mut out =
        String::from("q,p,n,s,admissible_delta,scalar_certified,oracle_cpp,discrepancies\n");
    for row in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            row.q,
            row.p,
            row.n,
            row.s,
            row.admissible_delta,
            row.scalar_certified,
            row.oracle_cpp,
            row.discrepancies
        ));
    }
    out
}
