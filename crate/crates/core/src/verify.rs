//! Property sweeps over finite parameter ranges.
//!
//! Each sweep returns a [`CriterionReport`] with the number of cases run and
//! the first few failures.

use std::time::Instant;

use num_traits::{One, Signed};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::car::{admissible_splits, blowup_step, depth_formula, depth_search, CARGerm};
use crate::kawakita::{
    beta_k, case_b_e1, case_b_e2, chain_simulate, chain_simulate_b, chain_weights, delta_k,
    depth_identity, direct_blowup_exponents, gamma_k, nonnegativity_check, nonnegativity_check_b,
    O3CaseA, O3CaseB, SubCase,
};
use crate::ledger::{mutate_kind, random_trace, validate_trace, violating_kinds};
use crate::neighborhood::{cf_intersection, key_check, semistable_delta, ENCase, KeyOptions};
use crate::riemannroch::{
    aw_upper_bound, case_data, case_depth_check, cd2_basket, delta_chi, meets_threshold,
    ContractionCase, RrError,
};
use crate::singular::{gcd, int, mod_inverse, rat, Rat};

const MAX_REPORTED_FAILURES: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyConfig {
    pub cyclic_max_r: i64,
    pub car_max_r: i64,
    pub car_max_lambda: i64,
    pub car_max_i: i64,
    pub car_max_j: i64,
    /// Extra support points beyond `(0, lambda)`.
    pub car_max_extra: usize,
    pub rr_max_rprime: i64,
    pub en_exceptional_max_r: i64,
    pub en_semistable_max_r: i64,
    pub en_iib_max: i64,
    pub o3_max_a: i64,
    pub o3_max_d: i64,
    pub o3_cases: usize,
    pub ledger_traces: usize,
    pub ledger_max_len: usize,
    pub seed: u64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            cyclic_max_r: 25,
            car_max_r: 7,
            car_max_lambda: 4,
            car_max_i: 4,
            car_max_j: 8,
            car_max_extra: 2,
            rr_max_rprime: 40,
            en_exceptional_max_r: 99,
            en_semistable_max_r: 30,
            en_iib_max: 51,
            o3_max_a: 9,
            o3_max_d: 3,
            o3_cases: 240,
            ledger_traces: 10_000,
            ledger_max_len: 24,
            seed: 0x5eed,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CriterionReport {
    pub id: u8,
    pub name: String,
    pub cases: u64,
    pub passed: bool,
    pub failures: Vec<String>,
    pub elapsed_ms: u128,
}

struct Tally {
    cases: u64,
    failures: Vec<String>,
    failed: u64,
}

impl Tally {
    fn new() -> Self {
        Tally {
            cases: 0,
            failures: Vec::new(),
            failed: 0,
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.failed += 1;
            if self.failures.len() < MAX_REPORTED_FAILURES {
                self.failures.push(what());
            }
        }
    }

    fn finish(self, id: u8, name: &str, start: Instant) -> CriterionReport {
        CriterionReport {
            id,
            name: name.into(),
            cases: self.cases,
            passed: self.failed == 0 && self.cases > 0,
            failures: self.failures,
            elapsed_ms: start.elapsed().as_millis(),
        }
    }
}

/// Depth search on `1/r(1, -1, b)` for every unit `b`, expecting `r - 1`.
pub fn sweep_cyclic(cfg: &VerifyConfig) -> CriterionReport {
    let start = Instant::now();
    let mut t = Tally::new();
    for r in 2..=cfg.cyclic_max_r {
        for b in (1..r).filter(|&b| gcd(b, r) == 1) {
            t.cases += 1;
            let got = CARGerm::cyclic(r, b)
                .map_err(|e| e.to_string())
                .and_then(|g| depth_search(&g).map_err(|e| e.to_string()));
            t.check(got == Ok(r - 1), || format!("r = {r}, b = {b}: {got:?}"));
        }
    }
    t.finish(1, "cyclic depth", start)
}

/// Every germ with `2 <= r <= max_r`, unit `beta`, `lambda <= max_lambda`
/// and support `{(0, lambda)}` plus at most `max_extra` further points of the
/// box `[0, max_i] x [0, max_j]` (never `(0, j)` with `j < lambda`).
pub fn enumerate_car_germs(
    max_r: i64,
    max_lambda: i64,
    max_i: i64,
    max_j: i64,
    max_extra: usize,
) -> Vec<CARGerm> {
    let mut out = Vec::new();
    for r in 2..=max_r {
        for beta in (1..r).filter(|&b| gcd(b, r) == 1) {
            for lambda in 1..=max_lambda {
                let pool: Vec<(i64, i64)> = (0..=max_i)
                    .flat_map(|i| (0..=max_j).map(move |j| (i, j)))
                    .filter(|&(i, j)| i > 0 || j > lambda)
                    .collect();
                let mut chosen = vec![(0, lambda)];
                subsets(&pool, 0, max_extra, &mut chosen, &mut |s| {
                    if let Ok(g) = CARGerm::new(r, beta, s.iter().copied()) {
                        out.push(g);
                    }
                });
            }
        }
    }
    out
}

fn subsets<F: FnMut(&[(i64, i64)])>(
    pool: &[(i64, i64)],
    from: usize,
    left: usize,
    chosen: &mut Vec<(i64, i64)>,
    f: &mut F,
) {
    f(chosen);
    if left == 0 {
        return;
    }
    for k in from..pool.len() {
        chosen.push(pool[k]);
        subsets(pool, k + 1, left - 1, chosen, f);
        chosen.pop();
    }
}

fn car_family(cfg: &VerifyConfig) -> Vec<CARGerm> {
    enumerate_car_germs(
        cfg.car_max_r,
        cfg.car_max_lambda,
        cfg.car_max_i,
        cfg.car_max_j,
        cfg.car_max_extra,
    )
}

/// `depth_search = depth_formula = lambda r - t` within `[xi - aw, xi - 1]`.
pub fn sweep_car(cfg: &VerifyConfig) -> CriterionReport {
    let start = Instant::now();
    let mut t = Tally::new();
    for g in car_family(cfg) {
        t.cases += 1;
        let (l, r, tv) = (g.lambda(), g.index(), g.tvalue());
        let expected = l * r - tv;
        let formula = depth_formula(&g).ok();
        let search = depth_search(&g).ok();
        let (xi, aw) = (g.xi(), l);
        t.check(
            formula == Some(expected)
                && search == Some(expected)
                && xi - aw <= expected
                && expected < xi,
            || format!("{g:?}: formula {formula:?}, search {search:?}, expected {expected}"),
        );
    }
    t.finish(2, "cA/r depth formula", start)
}

/// Residuals of every admissible split satisfy `lambda' = lambda - nu_1`,
/// `t' = t - 1`.
pub fn sweep_residual(cfg: &VerifyConfig) -> CriterionReport {
    let start = Instant::now();
    let mut t = Tally::new();
    for g in car_family(cfg) {
        let nu1 = g.nu(1);
        let splits = admissible_splits(&g);
        t.check(splits.len() as i64 == nu1, || {
            format!("{g:?}: {} splits, nu_1 = {nu1}", splits.len())
        });
        for (r1, r2) in splits {
            t.cases += 1;
            let res = blowup_step(&g, r1, r2);
            let ok = match &res {
                Ok(b) if nu1 < g.lambda() => b.residual.as_ref().is_some_and(|h| {
                    h.lambda() == g.lambda() - nu1 && h.tvalue() == g.tvalue() - 1
                }),
                Ok(b) => b.residual.is_none(),
                Err(_) => false,
            };
            t.check(ok, || format!("{g:?} split ({r1}, {r2}): {res:?}"));
        }
    }
    t.finish(3, "residual recursion", start)
}

fn rr_cases(max_rprime: i64) -> Vec<(ContractionCase, i64)> {
    let mut out = Vec::new();
    for rp in 5..=max_rprime {
        out.push((ContractionCase::E1A4 { rprime: rp }, rp));
    }
    for rp in 3..=max_rprime {
        out.push((ContractionCase::E1A2 { rprime: rp }, rp));
        out.push((ContractionCase::E2 { rprime: rp }, rp));
    }
    out
}

/// Riemann-Roch bounds and depth comparisons for e1/e2.
///
/// When the `Y` basket is not a terminal one (`gcd(b, r) > 1`) the case
/// data must be rejected.
pub fn sweep_rr(cfg: &VerifyConfig) -> CriterionReport {
    let start = Instant::now();
    let mut t = Tally::new();
    for (case, rp) in rr_cases(cfg.rr_max_rprime) {
        t.cases += 1;
        let e1 = !matches!(case, ContractionCase::E2 { .. });
        let (yb, yr) = match case {
            ContractionCase::E1A4 { .. } => (rp - 4, 2 * rp),
            ContractionCase::E1A2 { .. } => (rp - 2, 2 * rp),
            _ => (rp - 1, 2 * rp),
        };
        if gcd(yb, yr) != 1 {
            let rejected = matches!(aw_upper_bound(&case), Err(RrError::InvalidParameter(_)));
            t.check(rejected, || {
                format!("{case:?}: non-terminal basket accepted")
            });
            continue;
        }
        let data = match case_data(&case) {
            Ok(d) => d,
            Err(e) => {
                t.check(false, || format!("{case:?}: {e}"));
                continue;
            }
        };
        let bound = aw_upper_bound(&case).expect("case data is valid");
        let sufficient = if e1 { rp - 1 } else { 2 * rp - 1 };
        t.check(bound <= sufficient, || {
            format!("{case:?}: bound {bound} > {sufficient}")
        });
        let delta = |aw: i64| {
            delta_chi(
                &data.a_over_n,
                &data.e3,
                &data.basket_y,
                &cd2_basket(aw).unwrap(),
            )
        };
        if bound >= 0 {
            t.check(meets_threshold(&delta(bound)), || {
                format!("{case:?}: delta < 1 at bound {bound}")
            });
        }
        for aw in bound.max(-1) + 1..=sufficient + 2 {
            if aw >= 0 {
                t.check(!meets_threshold(&delta(aw)), || {
                    format!("{case:?}: delta >= 1 at aw {aw} > bound")
                });
            }
        }
        for aw in 1..=sufficient {
            match case_depth_check(&case, aw) {
                Ok(rep) => {
                    t.check(rep.check && rep.dep_y_min >= rep.dep_x_upper - 1, || {
                        format!("{case:?}, aw {aw}: {rep:?}")
                    });
                    if e1 && aw == rp - 1 {
                        t.check(
                            rep.dep_y_min - 1 == 2 * rp - 2 && rep.dep_x_upper == 2 * rp - 2,
                            || {
                                format!(
                                    "{case:?}, aw {aw}: dep(Y) - 1 = {} != 2r' - 2",
                                    rep.dep_y_min - 1
                                )
                            },
                        );
                    }
                }
                Err(e) => t.check(false, || format!("{case:?}, aw {aw}: {e}")),
            }
        }
    }
    t.finish(4, "Riemann-Roch cases", start)
}

/// The e11 case: `dep(Y) = 6`, `dep(X) <= 7`.
pub fn sweep_e11(_cfg: &VerifyConfig) -> CriterionReport {
    let start = Instant::now();
    let mut t = Tally::new();
    t.cases = 1;
    let rep = case_depth_check(&ContractionCase::E11, 0);
    t.check(
        matches!(&rep, Ok(r) if r.dep_y_min == 6 && r.dep_y_max == 6 && r.dep_x_upper == 7 && r.check),
        || format!("{rep:?}"),
    );
    t.finish(5, "e11", start)
}

/// Exceptional and semistable IA+IA sweeps and the IIB sweep.
pub fn sweep_neighborhoods(cfg: &VerifyConfig) -> CriterionReport {
    let start = Instant::now();
    let mut t = Tally::new();
    for r in (5..=cfg.en_exceptional_max_r).step_by(2) {
        for a2 in (r / 2 + 1..r).filter(|&a| gcd(a, r) == 1) {
            let case = ENCase::ExceptionalIAIA { r, a2 };
            let base = mod_inverse(a2, r).unwrap();
            let s = 2 * a2 - r;
            for r1 in (base..=3 * r).step_by(r as usize) {
                t.cases += 1;
                let v = key_check(
                    &case,
                    &KeyOptions {
                        r1: Some(r1),
                        kx_c: None,
                    },
                );
                let expected = rat(1, r) * (rat(-s, 2) + rat(1, r1));
                t.check(
                    s * r1 >= 2 && matches!(&v, Ok(v) if v.nonpositive && v.ky_cy == expected && !v.ky_cy.is_positive()),
                    || format!("exceptional r = {r}, a2 = {a2}, r1 = {r1}: {v:?}"),
                );
            }
        }
    }
    for r in 2..=cfg.en_semistable_max_r {
        for rp in 2..=r {
            for a in (1..r).filter(|&a| gcd(a, r) == 1) {
                for ap in (1..rp).filter(|&b| gcd(b, rp) == 1) {
                    let delta = semistable_delta(r, a, rp, ap);
                    if delta <= 0 {
                        continue;
                    }
                    t.cases += 1;
                    let case = ENCase::SemistableIAIA {
                        r,
                        a,
                        rprime: rp,
                        aprime: ap,
                    };
                    let v = key_check(&case, &KeyOptions::default());
                    let ok = match &v {
                        Ok(v) => {
                            let r1 = v.witness_r1.unwrap_or(0);
                            let expected = rat(-delta, r * rp) + rat(1, r * r1);
                            r1 * delta >= rp && v.nonpositive && v.ky_cy == expected
                        }
                        Err(_) => false,
                    };
                    t.check(ok, || {
                        format!("semistable r = {r}, r' = {rp}, a = {a}, a' = {ap}: {v:?}")
                    });
                }
            }
        }
    }
    let class = |c: i64| (1..=cfg.en_iib_max).filter(move |w| w % 4 == c);
    for r1 in class(3) {
        for r2 in class(2) {
            for r3 in class(1) {
                for r4 in class(1) {
                    t.cases += 1;
                    let cf = cf_intersection(&ENCase::IIB { r1, r2, r3, r4 }, None);
                    t.check(matches!(&cf, Ok(c) if c <= &Rat::one()), || {
                        format!("IIB ({r1}, {r2}, {r3}, {r4}): {cf:?}")
                    });
                }
            }
        }
    }
    t.finish(6, "extremal neighborhoods", start)
}

/// Random case A data satisfying the weight constraints of the blow-up.
pub fn random_case_a<R: Rng + ?Sized>(rng: &mut R, a: i64, d: i64) -> O3CaseA {
    let mut supp_a = vec![(2 * d, 0)];
    for _ in 0..rng.gen_range(0..5) {
        let i = rng.gen_range(0..=3 * d);
        let j = (2 * a * d - a * i).max(0) + rng.gen_range(0..3);
        supp_a.push((i, j));
    }
    let mut supp_b = Vec::new();
    for _ in 0..rng.gen_range(0..4) {
        let i = rng.gen_range(0..=2 * d);
        // (2i+1) a + 2j >= 2ad - 1
        let need = 2 * a * d - 1 - (2 * i + 1) * a;
        let j = ((need + 1).div_euclid(2)).max(0) + rng.gen_range(0..3);
        supp_b.push((i, j));
    }
    // (2 alpha - 1) a >= 2ad + 1
    let mut alpha = 1;
    while (2 * alpha - 1) * a < 2 * a * d + 1 {
        alpha += 1;
    }
    alpha += rng.gen_range(0..3);
    O3CaseA::new(a, d, alpha, supp_a, supp_b).expect("shape is valid")
}

/// Random case B data whose exponent maps stay nonnegative.
pub fn random_case_b<R: Rng + ?Sized>(rng: &mut R, a: i64, d: i64) -> O3CaseB {
    let mut supp_a = Vec::new();
    for _ in 0..rng.gen_range(1..5) {
        let i = rng.gen_range(0..=3 * d);
        let j = (a * (2 * d + 1) - a * i).max(0) + rng.gen_range(0..3);
        supp_a.push((i, j));
    }
    let mut supp_b = Vec::new();
    for _ in 0..rng.gen_range(0..4) {
        let i = rng.gen_range(0..=2 * d);
        let j = (a * (d - i) - 1).max(0) + rng.gen_range(0..3);
        supp_b.push((i, j));
    }
    O3CaseB::new(a, d, supp_a, supp_b).expect("shape is valid")
}

/// Next exponent of `z` for a monomial of weight `wt` (numerator over 2)
/// with `z^e`, when the equation has weight `target`.
fn next_exponent(wt_rest: i64, w: &[i64], e: &Rat, target: &Rat) -> Rat {
    rat(wt_rest, 2) + rat(w[2], 2) * e - target
}

fn check_case_a(case: &O3CaseA, dep_q3: i64) -> Result<(), String> {
    let (a, d, alpha) = (case.a, case.d, case.alpha);
    let target = int(2 * d);
    for k in 0..a {
        let w = chain_weights(SubCase::A, d, k);
        for &(i, j) in &case.supp_a {
            let next = next_exponent(2 * i * w[0], &w, &int(beta_k(i, j, k, d)), &target);
            if next != int(beta_k(i, j, k + 1, d)) {
                return Err(format!("beta recurrence at ({i}, {j}), k = {k}"));
            }
        }
        for &(i, j) in &case.supp_b {
            let next = next_exponent(w[3] + (2 * i + 1) * w[0], &w, &gamma_k(i, j, k, d), &target);
            if next != gamma_k(i, j, k + 1, d) {
                return Err(format!("gamma recurrence at ({i}, {j}), k = {k}"));
            }
        }
        let next = next_exponent(
            w[1] + (2 * alpha - 1) * w[0],
            &w,
            &delta_k(k, alpha, d),
            &target,
        );
        if next != delta_k(k + 1, alpha, d) {
            return Err(format!("delta recurrence at k = {k}"));
        }
    }
    nonnegativity_check(case).map_err(|e| e.to_string())?;
    let stages = chain_simulate(case, a).map_err(|e| e.to_string())?;
    if stages[..a as usize]
        .iter()
        .any(|s| s.weight != Some(target.clone()))
    {
        return Err("stage weight differs from 2d".into());
    }
    let (beta, gamma, delta) = direct_blowup_exponents(case);
    let last = &stages[a as usize];
    if int(last.delta) != delta
        || last.beta.iter().map(|x| x.1).collect::<Vec<_>>() != beta
        || last.gamma.iter().map(|x| int(x.1)).collect::<Vec<_>>() != gamma
    {
        return Err("last stage differs from the direct blow-up".into());
    }
    let id = depth_identity(SubCase::A, a, d, dep_q3).map_err(|e| e.to_string())?;
    if !id.check
        || id.dep_y != id.dep_x_upper + a - 2
        || id.dep_x_upper != a + dep_q3 + a * (4 * d - 2)
    {
        return Err(format!("depth identity {id:?}"));
    }
    Ok(())
}

fn check_case_b(case: &O3CaseB, dep_q3: i64) -> Result<(), String> {
    let (a, d) = (case.a, case.d);
    for k in 0..a {
        let w = chain_weights(SubCase::B, d, k);
        for &(i, j) in &case.supp_a {
            let next = next_exponent(
                2 * i * w[0],
                &w,
                &int(case_b_e1(i, j, k, d)),
                &int(2 * d + 1),
            );
            if next != int(case_b_e1(i, j, k + 1, d)) {
                return Err(format!("phi_1 recurrence at ({i}, {j}), k = {k}"));
            }
        }
        for &(i, j) in &case.supp_b {
            let next = next_exponent(
                (2 * i + 1) * w[0],
                &w,
                &case_b_e2(i, j, k, d),
                &rat(2 * d + 1, 2),
            );
            if next != case_b_e2(i, j, k + 1, d) {
                return Err(format!("phi_2 recurrence at ({i}, {j}), k = {k}"));
            }
        }
    }
    nonnegativity_check_b(case).map_err(|e| e.to_string())?;
    chain_simulate_b(case, a).map_err(|e| e.to_string())?;
    let id = depth_identity(SubCase::B, a, d, dep_q3).map_err(|e| e.to_string())?;
    if !id.check || id.dep_y != id.dep_x_upper + a - 2 || id.dep_x_upper != a + dep_q3 + 4 * a * d {
        return Err(format!("depth identity {id:?}"));
    }
    Ok(())
}

/// Random `cD/2` chain data for both sub-cases, `cfg.o3_cases` each.
pub fn sweep_o3(cfg: &VerifyConfig) -> CriterionReport {
    let start = Instant::now();
    let mut t = Tally::new();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let grid: Vec<(i64, i64)> = (3..=cfg.o3_max_a)
        .step_by(2)
        .flat_map(|a| (1..=cfg.o3_max_d).map(move |d| (a, d)))
        .collect();
    if grid.is_empty() {
        return t.finish(7, "o3 chains", start);
    }
    for n in 0..cfg.o3_cases {
        let (a, d) = grid[n % grid.len()];
        let dep_q3 = rng.gen_range(0..20);
        let case = random_case_a(&mut rng, a, d);
        t.cases += 1;
        let res = check_case_a(&case, dep_q3);
        t.check(res.is_ok(), || format!("A {case:?}: {res:?}"));
        let case = random_case_b(&mut rng, a, d);
        t.cases += 1;
        let res = check_case_b(&case, dep_q3);
        t.check(res.is_ok(), || format!("B {case:?}: {res:?}"));
    }
    t.finish(7, "o3 chains", start)
}

/// Random rule-respecting traces validate and every single-step kind
/// mutation is rejected.
pub fn sweep_ledger(cfg: &VerifyConfig) -> CriterionReport {
    let start = Instant::now();
    let mut t = Tally::new();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x1ed9e7);
    for _ in 0..cfg.ledger_traces {
        let len = rng.gen_range(1..=cfg.ledger_max_len.max(1));
        let trace = random_trace(&mut rng, len, 16);
        t.cases += 1;
        let v = validate_trace(&trace);
        t.check(v.is_ok(), || format!("{trace:?}: {v:?}"));
        let i = rng.gen_range(0..trace.steps.len());
        let s = &trace.steps[i];
        let kinds = violating_kinds(s.before, s.after);
        let kind = kinds[rng.gen_range(0..kinds.len())];
        let mutant = mutate_kind(&trace, i, kind);
        t.check(validate_trace(&mutant).is_err(), || {
            format!("mutant accepted: {mutant:?}")
        });
    }
    t.finish(8, "ledger metamorphic", start)
}

pub fn run_all(cfg: &VerifyConfig) -> Vec<CriterionReport> {
    vec![
        sweep_cyclic(cfg),
        sweep_car(cfg),
        sweep_residual(cfg),
        sweep_rr(cfg),
        sweep_e11(cfg),
        sweep_neighborhoods(cfg),
        sweep_o3(cfg),
        sweep_ledger(cfg),
    ]
}

pub fn run_one(id: u8, cfg: &VerifyConfig) -> Option<CriterionReport> {
    Some(match id {
        1 => sweep_cyclic(cfg),
        2 => sweep_car(cfg),
        3 => sweep_residual(cfg),
        4 => sweep_rr(cfg),
        5 => sweep_e11(cfg),
        6 => sweep_neighborhoods(cfg),
        7 => sweep_o3(cfg),
        8 => sweep_ledger(cfg),
        _ => return None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> VerifyConfig {
        VerifyConfig {
            cyclic_max_r: 9,
            car_max_r: 4,
            car_max_lambda: 2,
            car_max_i: 2,
            car_max_j: 3,
            car_max_extra: 1,
            rr_max_rprime: 12,
            en_exceptional_max_r: 15,
            en_semistable_max_r: 8,
            en_iib_max: 15,
            o3_max_a: 5,
            o3_max_d: 2,
            o3_cases: 20,
            ledger_traces: 200,
            ledger_max_len: 8,
            seed: 1,
        }
    }

    #[test]
    fn small_sweeps_pass() {
        for rep in run_all(&small()) {
            assert!(rep.passed, "{rep:?}");
        }
    }

    #[test]
    fn enumeration_counts() {
        // r = 2, beta = 1, lambda = 1, box {0..1} x {0..1}: pool {(1,0),(1,1)}
        let g = enumerate_car_germs(2, 1, 1, 1, 2);
        assert_eq!(g.len(), 4);
        assert!(run_one(9, &small()).is_none());
    }

    #[test]
    fn random_cases_meet_constraints() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for a in [3, 5, 7, 9] {
            for d in 1..=3 {
                for _ in 0..20 {
                    assert!(nonnegativity_check(&random_case_a(&mut rng, a, d)).is_ok());
                    assert!(nonnegativity_check_b(&random_case_b(&mut rng, a, d)).is_ok());
                }
            }
        }
    }
}
