//! Pinned end-to-end instances with every published number hard-coded as an
//! expected string, recomputed from scratch on each run and compared
//! exactly. A corrupt mode deliberately breaks one expectation so the
//! harness can prove it detects mismatches.

use std::sync::Arc;

use crate::criteria::{
    constant_v_check, family_hypothesis, fixed_gamma_divisibility, general_cpp_check,
    scalar_cpp_check, FamilyForm, GeneralReport, ScalarReport,
};
use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::mu3::Mu3Context;
use crate::oracle::check_pp_cpp;
use crate::search::family_context;
use crate::trinomial::{CycloTrinomial, FixedGamma};

/// One expected-vs-computed comparison.
#[derive(Debug, Clone)]
pub struct FixtureLine {
    pub label: String,
    pub expected: String,
    pub computed: String,
}

impl FixtureLine {
    pub fn matches(&self) -> bool {
        self.expected == self.computed
    }
}

/// One pinned instance: a field order, a name, and its comparison lines.
#[derive(Debug, Clone)]
pub struct FixtureOutcome {
    pub name: &'static str,
    pub q: u64,
    pub lines: Vec<FixtureLine>,
}

impl FixtureOutcome {
    pub fn passed(&self) -> bool {
        self.lines.iter().all(FixtureLine::matches)
    }
}

/// Field orders with a pinned fixture, in run order.
pub fn fixture_orders() -> [u64; 8] {
    [109, 163, 199, 7, 31, 13, 25, 343]
}

/// Runs the pinned fixtures, optionally restricted to one field order, and
/// optionally corrupting the first expectation as a negative control.
pub fn run_fixtures(only: Option<u64>, corrupt: bool) -> Result<Vec<FixtureOutcome>> {
    let orders: Vec<u64> = match only {
        None => fixture_orders().to_vec(),
        Some(q) if fixture_orders().contains(&q) => vec![q],
        Some(q) => {
            return Err(Error::BadFieldString(format!(
                "no pinned fixture for field order {q}"
            )))
        }
    };
    let mut outcomes: Vec<FixtureOutcome> = orders
        .into_iter()
        .map(|q| match q {
            109 => scalar_cpp_fixture(
                "f109-scalar-cpp",
                109,
                63,
                73,
                ["45", "27", "2", "(2, 17, 64)", "(1, 1, 1)", "rotation by 1"],
            ),
            163 => scalar_cpp_fixture(
                "f163-scalar-cpp",
                163,
                58,
                163,
                [
                    "104",
                    "150",
                    "3",
                    "(2, 151, 2)",
                    "(104, 104, 104)",
                    "rotation by 104",
                ],
            ),
            199 => scalar_cpp_fixture(
                "f199-scalar-cpp",
                199,
                106,
                199,
                [
                    "92",
                    "78",
                    "3",
                    "(2, 79, 2)",
                    "(106, 106, 106)",
                    "rotation by 106",
                ],
            ),
            7 => triple_zero_fixture(),
            31 => collision_fixture(),
            13 => fixed_gamma_fixture(
                "f13-half-char-gamma",
                FixedGamma::HalfOfCharMinusOne,
                FieldSpec::prime(13).expect("13 is prime"),
                ["6", "4", "s = 4 is even", "12"],
                [1, 5, 7, 11, 25],
            ),
            25 => fixed_gamma_fixture(
                "f25-gamma-two-even-tower",
                FixedGamma::TwoInEvenTower,
                FieldSpec::new(5, 2).expect("25 is a prime power"),
                ["2,0", "8", "p - 1 = 4 divides s = 8", "4,0"],
                [1, 5, 7, 11, 13],
            ),
            343 => fixed_gamma_fixture(
                "f343-gamma-two-cubic-tower",
                FixedGamma::TwoInCubicTower,
                FieldSpec::new(7, 3).expect("343 is a prime power"),
                ["2,0,0", "114", "p - 1 = 6 divides s = 114", "4,0,0"],
                [1, 5, 11, 13, 17],
            ),
            _ => unreachable!("fixture_orders is exhaustive"),
        })
        .collect();
    if corrupt {
        let first = &mut outcomes[0].lines[0];
        first.expected.push_str(" [corrupted]");
    }
    Ok(outcomes)
}

fn line(label: &str, expected: &str, computed: impl ToString) -> FixtureLine {
    FixtureLine {
        label: label.to_string(),
        expected: expected.to_string(),
        computed: computed.to_string(),
    }
}

fn triple(xs: &[FieldElement; 3]) -> String {
    format!("({}, {}, {})", xs[0], xs[1], xs[2])
}

fn v_values(ctx: &Mu3Context, v: &[Option<usize>; 3]) -> String {
    let show = |o: &Option<usize>| match o {
        Some(i) => ctx.mu3()[*i].to_string(),
        None => "undefined".to_string(),
    };
    format!("({}, {}, {})", show(&v[0]), show(&v[1]), show(&v[2]))
}

fn rotation(ctx: &Mu3Context, report: &ScalarReport) -> String {
    match constant_v_check(report).alpha {
        Some(alpha) => format!("rotation by {}", ctx.mu3()[alpha]),
        None => "not a rotation".to_string(),
    }
}

fn first_failed(report: &GeneralReport) -> &'static str {
    match () {
        _ if !report.g1 => "g1",
        _ if !report.g2 => "g2",
        _ if !report.g3 => "g3",
        _ if !report.g4 => "g4",
        _ => "none",
    }
}

/// Formats an ascending (exponent, coefficient) list as a descending
/// polynomial string, e.g. "X^5 + 2X^3 + 6X".
fn dense_string(terms: &[(u64, FieldElement)]) -> String {
    let parts: Vec<String> = terms
        .iter()
        .rev()
        .map(|(e, c)| {
            let coeff = if c.is_one() && *e > 0 {
                String::new()
            } else {
                c.to_string()
            };
            let var = match e {
                0 => String::new(),
                1 => "X".to_string(),
                _ => format!("X^{e}"),
            };
            format!("{coeff}{var}")
        })
        .collect();
    parts.join(" + ")
}

/// A certified scalar-family CPP: pins delta^2, c(delta), k, tau, the
/// common v, the rotation, both criterion verdicts, and the oracle.
fn scalar_cpp_fixture(
    name: &'static str,
    q: u64,
    delta: u64,
    r: u64,
    [d2, c_delta, k, tau, v, psi]: [&str; 6],
) -> FixtureOutcome {
    let spec = FieldSpec::prime(q).expect("fixture fields are prime");
    let delta = spec.from_int(delta);
    let ctx = family_context(&spec, &delta).expect("fixture deltas are cube roots");
    let t = CycloTrinomial::delta_family(ctx.clone(), &delta, r).expect("valid family");
    let report = scalar_cpp_check(&t).expect("fixture instances satisfy the preconditions");
    let oracle = check_pp_cpp(&t);
    let lines = vec![
        line("delta^2", d2, spec.mul(&delta, &delta).unwrap()),
        line("c(delta)", c_delta, &t.c_table()[1]),
        line(
            "c(delta)^s",
            "1",
            spec.pow(&t.c_table()[1], ctx.s()).unwrap(),
        ),
        line("k", k, report.k),
        line("tau", tau, triple(&report.tau)),
        line("v", v, v_values(&ctx, &report.v)),
        line("psi_bar", psi, rotation(&ctx, &report)),
        line(
            "scalar criterion",
            "pass",
            if report.certified { "pass" } else { "fail" },
        ),
        line("oracle", "CPP", if oracle.is_cpp { "CPP" } else { "not CPP" }),
    ];
    FixtureOutcome { name, q, lines }
}

/// The F_7 failure: F = f + X in dense form, the three preimages of zero,
/// and the split verdict (f permutes, F does not).
fn triple_zero_fixture() -> FixtureOutcome {
    let spec = FieldSpec::prime(7).unwrap();
    let delta = spec.from_int(2);
    let ctx = family_context(&spec, &delta).unwrap();
    let t = CycloTrinomial::delta_family(ctx, &delta, 1).unwrap();
    let oracle = check_pp_cpp(&t);
    let diag = oracle
        .f_plus_x_diagnostics
        .as_ref()
        .expect("F fails over F_7");
    let evals = |x: u64| t.eval_f_plus_x(&spec.from_int(x)).unwrap();
    let preimages: Vec<String> = diag.preimages.iter().map(|x| x.to_string()).collect();
    let lines = vec![
        line("dense F", "X^5 + 2X^3 + 6X", dense_string(&t.dense_f_plus_x())),
        line(
            "F(0), F(3), F(4)",
            "(0, 0, 0)",
            format!("({}, {}, {})", evals(0), evals(3), evals(4)),
        ),
        line("common image", "0", &diag.common_image),
        line("preimages of 0", "{0, 3, 4}", format!("{{{}}}", preimages.join(", "))),
        line("f oracle", "PP", if oracle.f_is_pp { "PP" } else { "not a PP" }),
        line(
            "F oracle",
            "not a PP",
            if oracle.f_plus_x_is_pp { "PP" } else { "not a PP" },
        ),
    ];
    FixtureOutcome {
        name: "f7-triple-zero-failure",
        q: 7,
        lines,
    }
}

/// The F_31 failure: the witnessed collision of F and the precise condition
/// the four-condition criterion rejects.
fn collision_fixture() -> FixtureOutcome {
    let spec = FieldSpec::prime(31).unwrap();
    let delta = spec.from_int(25);
    let ctx = family_context(&spec, &delta).unwrap();
    let t = CycloTrinomial::delta_family(ctx, &delta, 7).unwrap();
    let oracle = check_pp_cpp(&t);
    let diag = oracle
        .f_plus_x_diagnostics
        .as_ref()
        .expect("F fails over F_31");
    let report = general_cpp_check(&t).unwrap();
    let evals = |x: u64| t.eval_f_plus_x(&spec.from_int(x)).unwrap();
    let lines = vec![
        line("F(5)", "10", evals(5)),
        line("F(8)", "10", evals(8)),
        line(
            "collision",
            "(5, 8) -> 10",
            format!(
                "({}, {}) -> {}",
                diag.collision.0, diag.collision.1, diag.common_image
            ),
        ),
        line("f oracle", "PP", if oracle.f_is_pp { "PP" } else { "not a PP" }),
        line(
            "F oracle",
            "not a PP",
            if oracle.f_plus_x_is_pp { "PP" } else { "not a PP" },
        ),
        line("failed condition", "g3", first_failed(&report)),
        line(
            "g3 witness z",
            "2",
            report
                .g3_witness
                .as_ref()
                .map(|w| w.z.to_string())
                .unwrap_or_else(|| "none".to_string()),
        ),
    ];
    FixtureOutcome {
        name: "f31-collision-failure",
        q: 31,
        lines,
    }
}

/// A fixed-gamma instance: hypotheses, the divisibility fact, the family
/// hypothesis witness, and oracle permutation checks at five pinned
/// exponents coprime to q - 1.
fn fixed_gamma_fixture(
    name: &'static str,
    item: FixedGamma,
    spec: FieldSpec,
    [gamma, s, detail, witness]: [&str; 4],
    rs: [u64; 5],
) -> FixtureOutcome {
    let q = spec.q();
    let ctx = Arc::new(Mu3Context::new(&spec).expect("fixture orders are 1 mod 3"));
    let g = item.gamma_value(&spec).expect("fixture hypotheses hold");
    let div = fixed_gamma_divisibility(item, &spec).expect("fixture hypotheses hold");
    let hyp = family_hypothesis(&ctx, &FamilyForm::Gamma(g.clone())).unwrap();
    let permuting = rs
        .iter()
        .filter(|&&r| {
            let t = CycloTrinomial::gamma_family(ctx.clone(), &g, r).unwrap();
            check_pp_cpp(&t).f_is_pp
        })
        .count();
    let lines = vec![
        line("gamma", gamma, &g),
        line("s", s, ctx.s()),
        line("divisibility", detail, &div.detail),
        line(
            "divisibility holds",
            "yes",
            if div.holds { "yes" } else { "no" },
        ),
        line("family hypothesis witness", witness, &hyp.witness),
        line(
            "family hypothesis",
            "holds",
            if hyp.holds { "holds" } else { "fails" },
        ),
        line(
            "permutes at 5 pinned exponents",
            "5 of 5",
            format!("{permuting} of 5"),
        ),
    ];
    FixtureOutcome { name, q, lines }
}
