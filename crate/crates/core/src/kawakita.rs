//! Exponent bookkeeping for the ordinary `cD/2` contractions with discrepancy
//! `a/2` (`a` odd, `a >= 3`).
//!
//! Case A: `phi = u^2 + y^2 z + sum a_ij x^2i z^j + u sum b_ij x^(2i+1) z^j
//! + l y x^(2 alpha - 1)` with `r + 1 = 2ad`. The blow-up with weight
//! `1/2(a, r, 2, r+2)` is compared with a chain `Z_a -> ... -> Z_0 = X` of
//! w-morphisms alternating the weights `1/2(1, 2d-1, 2, 2d+1)` (even steps)
//! and `1/2(1, 2d+1, 2, 2d-1)` (odd steps). At stage `k` the exponents of
//! `z` are `beta_ij(k)`, `gamma_ij(k)` and `delta(k)`.
//!
//! Case B: the point is cut out by two equations in five variables with
//! `r + 2 = (2d+1)a`; the `z` exponents at stage `k` are
//! `k i + j - k(2d+1)` and `j + 1 + k(i - d)`.
//!
//! Half-integers are carried as exact rationals and integrality is checked.

use std::collections::BTreeSet;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rat_to_string;
use crate::singular::{int, rat, Rat};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum O3Error {
    #[error("invalid case: {0}")]
    InvalidCase(String),
    #[error("constraint violated: {constraint} at (i, j) = {ij:?}, k = {k:?}")]
    ConstraintViolation {
        constraint: String,
        ij: Option<(i64, i64)>,
        k: Option<i64>,
    },
    #[error("weight mismatch at stage {k}: {monomial} has weight {weight}, expected {expected}")]
    WeightMismatch {
        k: i64,
        monomial: String,
        weight: String,
        expected: String,
    },
}

fn violation(constraint: &str, ij: Option<(i64, i64)>, k: Option<i64>) -> O3Error {
    O3Error::ConstraintViolation {
        constraint: constraint.into(),
        ij,
        k,
    }
}

/// `beta_ij(k) = k(i - 2d) + j`.
pub fn beta_k(i: i64, j: i64, k: i64, d: i64) -> i64 {
    k * (i - 2 * d) + j
}

/// `gamma_ij(k) = k(2i+1)/2 - kd + j`, plus `1/2` for odd `k`.
pub fn gamma_k(i: i64, j: i64, k: i64, d: i64) -> Rat {
    let base = rat(k * (2 * i + 1), 2) - int(k * d) + int(j);
    if k % 2 == 1 {
        base + rat(1, 2)
    } else {
        base
    }
}

/// `delta(k) = k(2 alpha - 1)/2 - kd`, minus `1/2` for odd `k`.
pub fn delta_k(k: i64, alpha: i64, d: i64) -> Rat {
    let base = rat(k * (2 * alpha - 1), 2) - int(k * d);
    if k % 2 == 1 {
        base - rat(1, 2)
    } else {
        base
    }
}

/// Case B exponent of `z` in `phi_1` at stage `k`.
pub fn case_b_e1(i: i64, j: i64, k: i64, d: i64) -> i64 {
    k * i + j - k * (2 * d + 1)
}

/// Case B exponent of `z` in `phi_2` at stage `k`.
pub fn case_b_e2(i: i64, j: i64, k: i64, d: i64) -> Rat {
    int(j + 1) + rat(k * (2 * i + 1) - k * (2 * d + 1), 2)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SubCase {
    A,
    B,
}

/// Weight of the blow-up `Z_{k+1} -> Z_k`, as numerators over 2, in the
/// coordinates `(x, y, z, u)` (case A) or `(x, y, z, u, w)` (case B).
pub fn chain_weights(sub: SubCase, d: i64, k: i64) -> Vec<i64> {
    let even = k % 2 == 0;
    match (sub, even) {
        (SubCase::A, true) => vec![1, 2 * d - 1, 2, 2 * d + 1],
        (SubCase::A, false) => vec![1, 2 * d + 1, 2, 2 * d - 1],
        (SubCase::B, true) => vec![1, 2 * d - 1, 2, 2 * d + 1, 2 * d + 3],
        (SubCase::B, false) => vec![1, 2 * d + 3, 2, 2 * d + 1, 2 * d - 1],
    }
}

fn check_shape(a: i64, d: i64) -> Result<(), O3Error> {
    if a < 3 || a % 2 == 0 {
        return Err(O3Error::InvalidCase(format!(
            "a = {a} must be odd and >= 3"
        )));
    }
    if d < 1 {
        return Err(O3Error::InvalidCase(format!("d = {d} must be >= 1")));
    }
    Ok(())
}

fn check_support(supp: &BTreeSet<(i64, i64)>) -> Result<(), O3Error> {
    match supp.iter().find(|&&(i, j)| i < 0 || j < 0) {
        Some(&(i, j)) => Err(O3Error::InvalidCase(format!(
            "negative exponent ({i}, {j})"
        ))),
        None => Ok(()),
    }
}

/// First sub-case, `r = 2ad - 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct O3CaseA {
    pub a: i64,
    pub d: i64,
    pub alpha: i64,
    /// `(i, j)` with `a_ij != 0`, the terms `x^2i z^j`.
    pub supp_a: BTreeSet<(i64, i64)>,
    /// `(i, j)` with `b_ij != 0`, the terms `u x^(2i+1) z^j`.
    pub supp_b: BTreeSet<(i64, i64)>,
}

impl O3CaseA {
    /// Checks the shape of the data only; [`check_constraints`] checks the
    /// weight conditions.
    pub fn new<A, B>(a: i64, d: i64, alpha: i64, supp_a: A, supp_b: B) -> Result<Self, O3Error>
    where
        A: IntoIterator<Item = (i64, i64)>,
        B: IntoIterator<Item = (i64, i64)>,
    {
        check_shape(a, d)?;
        if alpha < 1 {
            return Err(O3Error::InvalidCase(format!(
                "alpha = {alpha} must be >= 1"
            )));
        }
        let case = O3CaseA {
            a,
            d,
            alpha,
            supp_a: supp_a.into_iter().collect(),
            supp_b: supp_b.into_iter().collect(),
        };
        check_support(&case.supp_a)?;
        check_support(&case.supp_b)?;
        Ok(case)
    }

    pub fn r(&self) -> i64 {
        2 * self.a * self.d - 1
    }
}

/// Checks that `phi` has weight `r + 1` for `1/2(a, r, 2, r+2)` and contains
/// `x^4d`.
pub fn check_constraints(case: &O3CaseA) -> Result<(), O3Error> {
    let (a, d) = (case.a, case.d);
    if !case.supp_a.contains(&(2 * d, 0)) {
        return Err(violation("x^4d must appear in phi", Some((2 * d, 0)), None));
    }
    if let Some(&ij) = case.supp_a.iter().find(|&&(i, j)| a * i + j < 2 * a * d) {
        return Err(violation("a i + j >= 2ad", Some(ij), None));
    }
    if let Some(&ij) = case
        .supp_b
        .iter()
        .find(|&&(i, j)| (2 * i + 1) * a + 2 * j < 2 * a * d - 1)
    {
        return Err(violation("(2i+1) a + 2j >= 2ad - 1", Some(ij), None));
    }
    if (2 * case.alpha - 1) * a < 2 * a * d + 1 {
        return Err(violation("(2 alpha - 1) a >= 2ad + 1", None, None));
    }
    Ok(())
}

fn require_integer(x: &Rat, what: &str, ij: Option<(i64, i64)>, k: i64) -> Result<i64, O3Error> {
    if !x.is_integer() {
        return Err(violation(&format!("{what} is an integer"), ij, Some(k)));
    }
    Ok(i64::try_from(x.to_integer()).expect("small exponent"))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NonnegReport {
    pub stages: i64,
    pub checked_terms: usize,
    pub min_beta: Option<i64>,
    pub min_gamma: Option<i64>,
    pub min_delta: i64,
}

/// Verifies `beta`, `gamma`, `delta >= 0` for `1 <= k <= a` on the support,
/// going through the rational lower bounds `j(a-k)/a`, `-k/2a` and
/// `k/2a - 1/2` and then integrality.
pub fn nonnegativity_check(case: &O3CaseA) -> Result<NonnegReport, O3Error> {
    check_constraints(case)?;
    let (a, d) = (case.a, case.d);
    let mut min_beta: Option<i64> = None;
    let mut min_gamma: Option<i64> = None;
    let mut min_delta = i64::MAX;
    let mut checked = 0;
    for k in 1..=a {
        for &(i, j) in &case.supp_a {
            let beta = beta_k(i, j, k, d);
            if int(beta) < rat(j * (a - k), a) {
                return Err(violation("beta >= j(a-k)/a", Some((i, j)), Some(k)));
            }
            if beta < 0 {
                return Err(violation("beta >= 0", Some((i, j)), Some(k)));
            }
            min_beta = Some(min_beta.map_or(beta, |m| m.min(beta)));
            checked += 1;
        }
        for &(i, j) in &case.supp_b {
            let gamma = gamma_k(i, j, k, d);
            if gamma < rat(-k, 2 * a) {
                return Err(violation("gamma >= -k/2a", Some((i, j)), Some(k)));
            }
            let gamma = require_integer(&gamma, "gamma", Some((i, j)), k)?;
            if gamma < 0 {
                return Err(violation("gamma >= 0", Some((i, j)), Some(k)));
            }
            min_gamma = Some(min_gamma.map_or(gamma, |m| m.min(gamma)));
            checked += 1;
        }
        let delta = delta_k(k, case.alpha, d);
        if delta < rat(k, 2 * a) - rat(1, 2) {
            return Err(violation("delta >= k/2a - 1/2", None, Some(k)));
        }
        let delta = require_integer(&delta, "delta", None, k)?;
        if delta < 0 {
            return Err(violation("delta >= 0", None, Some(k)));
        }
        min_delta = min_delta.min(delta);
    }
    Ok(NonnegReport {
        stages: a,
        checked_terms: checked,
        min_beta,
        min_gamma,
        min_delta,
    })
}

/// Exponents of `z` at one stage of the chain, with the weight data of the
/// blow-up performed there.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StageReport {
    pub k: i64,
    /// `((i, j), beta_ij(k))`.
    pub beta: Vec<((i64, i64), i64)>,
    /// `((i, j), gamma_ij(k))`.
    pub gamma: Vec<((i64, i64), i64)>,
    pub delta: i64,
    /// Numerators over 2 of the next weight; absent at the last stage.
    pub weights: Option<Vec<i64>>,
    /// Weight of `phi_k` for the next blow-up (`2d` when present).
    #[serde(serialize_with = "crate::serialize_opt_rat")]
    pub weight: Option<Rat>,
    /// Two monomials of weight `2d` forcing the leading part irreducible.
    pub irreducible_witness: Option<[String; 2]>,
    /// Discrepancy of the next exceptional divisor.
    #[serde(serialize_with = "crate::serialize_opt_rat")]
    pub discrepancy: Option<Rat>,
}

/// Weight of `x^ex y^ey z^ez u^eu` for weights `w/2`.
fn monomial_weight(w: &[i64], exps: &[Rat]) -> Rat {
    w.iter()
        .zip(exps)
        .fold(Rat::zero(), |acc, (wi, e)| acc + rat(*wi, 2) * e)
}

/// Walks the chain for `k = 0..=k_max`, checking at every stage `k < a`
/// that `phi_k` has weight `2d` for the next blow-up.
pub fn chain_simulate(case: &O3CaseA, k_max: i64) -> Result<Vec<StageReport>, O3Error> {
    let (a, d) = (case.a, case.d);
    if !(0..=a).contains(&k_max) {
        return Err(O3Error::InvalidCase(format!(
            "k_max = {k_max} outside 0..={a}"
        )));
    }
    check_constraints(case)?;
    let target = int(2 * d);
    let mut stages = Vec::new();
    for k in 0..=k_max {
        let beta: Vec<_> = case
            .supp_a
            .iter()
            .map(|&(i, j)| ((i, j), beta_k(i, j, k, d)))
            .collect();
        let gamma = case
            .supp_b
            .iter()
            .map(|&(i, j)| {
                Ok((
                    (i, j),
                    require_integer(&gamma_k(i, j, k, d), "gamma", Some((i, j)), k)?,
                ))
            })
            .collect::<Result<Vec<_>, O3Error>>()?;
        let delta = require_integer(&delta_k(k, case.alpha, d), "delta", None, k)?;

        let mut report = StageReport {
            k,
            beta,
            gamma,
            delta,
            weights: None,
            weight: None,
            irreducible_witness: None,
            discrepancy: None,
        };
        if k < a {
            let w = chain_weights(SubCase::A, d, k);
            // (x, y, z, u) exponent vectors
            let e = |x: i64, y: i64, z: i64, u: i64| [int(x), int(y), int(z), int(u)];
            let (quad_u, quad_y, lead) = if k % 2 == 1 {
                // u^2 z + y^2
                (e(0, 0, 1, 2), e(0, 2, 0, 0), "u^2 z")
            } else {
                // u^2 + y^2 z
                (e(0, 0, 0, 2), e(0, 2, 1, 0), "y^2 z")
            };
            let mut terms: Vec<(String, Rat)> = vec![
                (
                    if k % 2 == 1 { "u^2 z" } else { "u^2" }.to_string(),
                    monomial_weight(&w, &quad_u),
                ),
                (
                    if k % 2 == 1 { "y^2" } else { "y^2 z" }.to_string(),
                    monomial_weight(&w, &quad_y),
                ),
            ];
            for &((i, j), b) in &report.beta {
                let m = e(2 * i, 0, b, 0);
                terms.push((
                    format!("x^{} z^{b} (a_{i}{j})", 2 * i),
                    monomial_weight(&w, &m),
                ));
            }
            for &((i, j), g) in &report.gamma {
                let m = e(2 * i + 1, 0, g, 1);
                terms.push((
                    format!("u x^{} z^{g} (b_{i}{j})", 2 * i + 1),
                    monomial_weight(&w, &m),
                ));
            }
            let m = e(2 * case.alpha - 1, 1, delta, 0);
            terms.push((
                format!("y x^{} z^{delta}", 2 * case.alpha - 1),
                monomial_weight(&w, &m),
            ));

            if let Some((name, weight)) = terms.iter().find(|(_, wt)| wt < &target) {
                return Err(O3Error::WeightMismatch {
                    k,
                    monomial: name.clone(),
                    weight: rat_to_string(weight),
                    expected: rat_to_string(&target),
                });
            }
            let weight = terms.iter().map(|(_, wt)| wt.clone()).min().expect("terms");
            if weight != target {
                return Err(O3Error::WeightMismatch {
                    k,
                    monomial: "phi_k".into(),
                    weight: rat_to_string(&weight),
                    expected: rat_to_string(&target),
                });
            }
            let x4d = monomial_weight(&w, &e(4 * d, 0, beta_k(2 * d, 0, k, d), 0));
            let lead_weight = terms
                .iter()
                .find(|(n, _)| n == lead)
                .map(|(_, wt)| wt.clone());
            if x4d != target || lead_weight.as_ref() != Some(&target) {
                return Err(O3Error::WeightMismatch {
                    k,
                    monomial: format!("{lead} + x^{}", 4 * d),
                    weight: rat_to_string(&lead_weight.unwrap_or(x4d)),
                    expected: rat_to_string(&target),
                });
            }
            // wt(xyzu) - wt(phi_k) - 1
            let total: i64 = w.iter().sum();
            report.discrepancy = Some(rat(total, 2) - &target - int(1));
            report.irreducible_witness = Some([lead.to_string(), format!("x^{}", 4 * d)]);
            report.weight = Some(weight);
            report.weights = Some(w);
        }
        stages.push(report);
    }
    Ok(stages)
}

/// Exponents of the direct blow-up at `Q_3`:
/// `(beta_bar, gamma_bar, delta_bar)` with `ai + j - r - 1`,
/// `(2ai + a + 2j - r)/2` and `(2a alpha - a - r - 2)/2`.
pub fn direct_blowup_exponents(case: &O3CaseA) -> (Vec<i64>, Vec<Rat>, Rat) {
    let (a, r) = (case.a, case.r());
    let beta = case
        .supp_a
        .iter()
        .map(|&(i, j)| a * i + j - r - 1)
        .collect();
    let gamma = case
        .supp_b
        .iter()
        .map(|&(i, j)| rat(2 * a * i + a + 2 * j - r, 2))
        .collect();
    let delta = rat(2 * a * case.alpha - a - r - 2, 2);
    (beta, gamma, delta)
}

/// Second sub-case, `r = (2d+1)a - 2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct O3CaseB {
    pub a: i64,
    pub d: i64,
    /// `(i, j)` with `a_ij != 0` in `p(x^2, z)`.
    pub supp_a: BTreeSet<(i64, i64)>,
    /// `(i, j)` with `b_ij != 0` in `x z q(x^2, z)`.
    pub supp_b: BTreeSet<(i64, i64)>,
}

impl O3CaseB {
    pub fn new<A, B>(a: i64, d: i64, supp_a: A, supp_b: B) -> Result<Self, O3Error>
    where
        A: IntoIterator<Item = (i64, i64)>,
        B: IntoIterator<Item = (i64, i64)>,
    {
        check_shape(a, d)?;
        let case = O3CaseB {
            a,
            d,
            supp_a: supp_a.into_iter().collect(),
            supp_b: supp_b.into_iter().collect(),
        };
        check_support(&case.supp_a)?;
        check_support(&case.supp_b)?;
        Ok(case)
    }

    pub fn r(&self) -> i64 {
        (2 * self.d + 1) * self.a - 2
    }
}

/// Checks that both exponent maps stay nonnegative for `1 <= k <= a`.
pub fn nonnegativity_check_b(case: &O3CaseB) -> Result<NonnegReport, O3Error> {
    let (a, d) = (case.a, case.d);
    let mut min_a: Option<i64> = None;
    let mut min_b: Option<i64> = None;
    let mut checked = 0;
    for k in 1..=a {
        for &(i, j) in &case.supp_a {
            let e = case_b_e1(i, j, k, d);
            if e < 0 {
                return Err(violation("k i + j - k(2d+1) >= 0", Some((i, j)), Some(k)));
            }
            min_a = Some(min_a.map_or(e, |m| m.min(e)));
            checked += 1;
        }
        for &(i, j) in &case.supp_b {
            let e = require_integer(&case_b_e2(i, j, k, d), "phi_2 exponent", Some((i, j)), k)?;
            if e < 0 {
                return Err(violation(
                    "j + 1 + (k(2i+1) - k(2d+1))/2 >= 0",
                    Some((i, j)),
                    Some(k),
                ));
            }
            min_b = Some(min_b.map_or(e, |m| m.min(e)));
            checked += 1;
        }
    }
    Ok(NonnegReport {
        stages: a,
        checked_terms: checked,
        min_beta: min_a,
        min_gamma: min_b,
        min_delta: 0,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StageReportB {
    pub k: i64,
    pub e1: Vec<((i64, i64), i64)>,
    pub e2: Vec<((i64, i64), i64)>,
    pub weights: Option<Vec<i64>>,
    /// Weights of `phi_1` and `phi_2`: `2d+1` and `(2d+1)/2`.
    #[serde(serialize_with = "crate::serialize_opt_rat_pair")]
    pub weight: Option<(Rat, Rat)>,
}

/// Case B analogue of [`chain_simulate`].
pub fn chain_simulate_b(case: &O3CaseB, k_max: i64) -> Result<Vec<StageReportB>, O3Error> {
    let (a, d) = (case.a, case.d);
    if !(0..=a).contains(&k_max) {
        return Err(O3Error::InvalidCase(format!(
            "k_max = {k_max} outside 0..={a}"
        )));
    }
    nonnegativity_check_b(case)?;
    let (t1, t2) = (int(2 * d + 1), rat(2 * d + 1, 2));
    let mut stages = Vec::new();
    for k in 0..=k_max {
        let e1: Vec<_> = case
            .supp_a
            .iter()
            .map(|&(i, j)| ((i, j), case_b_e1(i, j, k, d)))
            .collect();
        let e2 = case
            .supp_b
            .iter()
            .map(|&(i, j)| {
                Ok((
                    (i, j),
                    require_integer(&case_b_e2(i, j, k, d), "phi_2 exponent", Some((i, j)), k)?,
                ))
            })
            .collect::<Result<Vec<_>, O3Error>>()?;
        let mut report = StageReportB {
            k,
            e1,
            e2,
            weights: None,
            weight: None,
        };
        if k < a {
            let w = chain_weights(SubCase::B, d, k);
            // (x, y, z, u, w) exponent vectors
            let e =
                |x: i64, y: i64, z: i64, u: i64, ww: i64| [int(x), int(y), int(z), int(u), int(ww)];
            let mut phi1 = vec![
                ("u^2".to_string(), monomial_weight(&w, &e(0, 0, 0, 2, 0))),
                ("y w".to_string(), monomial_weight(&w, &e(0, 1, 0, 0, 1))),
            ];
            for &((i, _), z) in &report.e1 {
                phi1.push((
                    format!("x^{} z^{z}", 2 * i),
                    monomial_weight(&w, &e(2 * i, 0, z, 0, 0)),
                ));
            }
            let (ylead, wlead) = if k % 2 == 1 {
                (e(0, 1, 0, 0, 0), e(0, 0, 1, 0, 1))
            } else {
                (e(0, 1, 1, 0, 0), e(0, 0, 0, 0, 1))
            };
            let mut phi2 = vec![
                ("y-term".to_string(), monomial_weight(&w, &ylead)),
                ("w-term".to_string(), monomial_weight(&w, &wlead)),
                (
                    format!("x^{}", 2 * d + 1),
                    monomial_weight(&w, &e(2 * d + 1, 0, 0, 0, 0)),
                ),
            ];
            for &((i, _), z) in &report.e2 {
                phi2.push((
                    format!("x^{} z^{z}", 2 * i + 1),
                    monomial_weight(&w, &e(2 * i + 1, 0, z, 0, 0)),
                ));
            }
            for (terms, target) in [(&phi1, &t1), (&phi2, &t2)] {
                let min = terms.iter().map(|(_, wt)| wt.clone()).min().expect("terms");
                if &min != target {
                    let (name, weight) = terms
                        .iter()
                        .find(|(_, wt)| wt == &min)
                        .expect("min")
                        .clone();
                    return Err(O3Error::WeightMismatch {
                        k,
                        monomial: name,
                        weight: rat_to_string(&weight),
                        expected: rat_to_string(target),
                    });
                }
            }
            report.weights = Some(w);
            report.weight = Some((t1.clone(), t2.clone()));
        }
        stages.push(report);
    }
    Ok(stages)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DepthIdentity {
    pub r: i64,
    pub dep_x_upper: i64,
    pub dep_y: i64,
    /// `dep(Y) = dep(X)_upper + a - 2`.
    pub check: bool,
}

/// Compares the chain bound for `dep(X)` with `dep(Y)`.
///
/// The chain has `a` w-morphisms, the point `R^3_a = Q_3` and at each stage
/// two cyclic points (indices `2d+1`, `2d-1` in case A; `2d+3`, `2d-1` in
/// case B). `Y` has cyclic points of indices `r`, `r+2` (A) or `r`, `r+4`
/// (B) besides `Q_3`.
pub fn depth_identity(sub: SubCase, a: i64, d: i64, dep_q3: i64) -> Result<DepthIdentity, O3Error> {
    check_shape(a, d)?;
    if dep_q3 < 0 {
        return Err(O3Error::InvalidCase(format!(
            "dep(Q3) = {dep_q3} is negative"
        )));
    }
    let cyc = |index: i64| index - 1;
    let (r, stage_points, y_points) = match sub {
        SubCase::A => {
            let r = 2 * a * d - 1;
            (r, [2 * d + 1, 2 * d - 1], [r, r + 2])
        }
        SubCase::B => {
            let r = (2 * d + 1) * a - 2;
            (r, [2 * d + 3, 2 * d - 1], [r, r + 4])
        }
    };
    let per_stage: i64 = stage_points.iter().map(|&i| cyc(i)).sum();
    let dep_x_upper = a + dep_q3 + a * per_stage;
    let dep_y = y_points.iter().map(|&i| cyc(i)).sum::<i64>() + dep_q3;
    let closed = match sub {
        SubCase::A => dep_q3 + 2 * r + 2 - a,
        SubCase::B => dep_q3 + 2 * r + 4 - a,
    };
    debug_assert_eq!(closed, dep_x_upper);
    Ok(DepthIdentity {
        r,
        dep_x_upper,
        dep_y,
        check: dep_y == dep_x_upper + a - 2,
    })
}

/// `true` iff `x >= 0`.
pub fn is_nonnegative(x: &Rat) -> bool {
    !x.is_negative()
}
