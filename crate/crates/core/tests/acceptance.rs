//! Acceptance criteria. Each criterion runs the library sweep and an
//! independent brute-force oracle, under a wall-clock limit.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use flipdepth::car::{admissible_splits, blowup_step, depth_search, CARGerm};
use flipdepth::kawakita::{beta_k, case_b_e1, case_b_e2, delta_k, gamma_k, O3CaseA, O3CaseB};
use flipdepth::ledger::{validate_trace, FactorizationTrace, TraceKind, TraceStep};
use flipdepth::neighborhood::{key_check, ENCase, KeyOptions};
use flipdepth::riemannroch::{aw_upper_bound, case_depth_check, ContractionCase};
use flipdepth::verify::{self, VerifyConfig};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Q = BigRational;

fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

fn g(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        g(b, a % b)
    }
}

type Oracle = fn(&VerifyConfig) -> Result<u64, String>;

struct Criterion {
    id: u8,
    name: &'static str,
    limit: Option<Duration>,
    oracle: Oracle,
}

// Indices only: a cyclic point of index r has exactly one split r = b + (r - b)
// into smaller cyclic points.
fn oracle_cyclic(cfg: &VerifyConfig) -> Result<u64, String> {
    let n = cfg.cyclic_max_r as usize;
    let mut dep = vec![0i64; n + 1];
    for r in 2..=n {
        dep[r] = i64::MAX;
        for b in 1..r {
            if g(b as i64, r as i64) == 1 {
                dep[r] = dep[r].min(1 + dep[b] + dep[r - b]);
            }
        }
    }
    let mut cases = 0;
    for r in 2..=cfg.cyclic_max_r {
        for b in (1..r).filter(|&b| g(b, r) == 1) {
            let got = depth_search(&CARGerm::cyclic(r, b).unwrap()).map_err(|e| e.to_string())?;
            if got != dep[r as usize] || got != r - 1 {
                return Err(format!(
                    "r = {r}, b = {b}: search {got}, oracle {}",
                    dep[r as usize]
                ));
            }
            cases += 1;
        }
    }
    Ok(cases)
}

fn lambda_t(support: &BTreeSet<(i64, i64)>) -> (i64, i64) {
    let lambda = support
        .iter()
        .filter(|p| p.0 == 0)
        .map(|p| p.1)
        .min()
        .unwrap();
    let nu = |s: i64| support.iter().map(|&(i, j)| s * i + j).min().unwrap();
    let t = (1..).find(|&s| nu(s) == lambda).unwrap();
    (lambda, t)
}

fn family(cfg: &VerifyConfig) -> Vec<CARGerm> {
    verify::enumerate_car_germs(
        cfg.car_max_r,
        cfg.car_max_lambda,
        cfg.car_max_i,
        cfg.car_max_j,
        cfg.car_max_extra,
    )
}

fn oracle_car(cfg: &VerifyConfig) -> Result<u64, String> {
    let germs = family(cfg);
    if germs.len() < 1000 {
        return Err(format!("only {} germs enumerated", germs.len()));
    }
    for germ in &germs {
        let (lambda, t) = lambda_t(germ.support());
        let r = germ.index();
        let got = depth_search(germ).map_err(|e| e.to_string())?;
        if got != lambda * r - t || got < lambda * r - lambda || got > lambda * r - 1 {
            return Err(format!("{germ:?}: search {got}, oracle {}", lambda * r - t));
        }
    }
    Ok(germs.len() as u64)
}

fn oracle_residual(cfg: &VerifyConfig) -> Result<u64, String> {
    let mut cases = 0;
    for germ in family(cfg) {
        let (lambda, t) = lambda_t(germ.support());
        let nu1 = germ.support().iter().map(|&(i, j)| i + j).min().unwrap();
        for (r1, r2) in admissible_splits(&germ) {
            let res = blowup_step(&germ, r1, r2)
                .map_err(|e| e.to_string())?
                .residual;
            if nu1 == lambda {
                if res.is_some() {
                    return Err(format!("{germ:?}: unexpected residual"));
                }
                continue;
            }
            let expected: BTreeSet<(i64, i64)> = germ
                .support()
                .iter()
                .map(|&(i, j)| (i, i + j - nu1))
                .filter(|p| p.1 >= 0)
                .collect();
            let res = res.ok_or_else(|| format!("{germ:?}: missing residual"))?;
            let (l2, t2) = lambda_t(res.support());
            let (le, te) = lambda_t(&expected);
            if (l2, t2) != (lambda - nu1, t - 1) || (le, te) != (l2, t2) {
                return Err(format!("{germ:?} -> {res:?}: lambda' {l2}, t' {t2}"));
            }
            cases += 1;
        }
    }
    Ok(cases)
}

// b(r-b)/2r summed over the basket
fn correction(entries: &[(i64, i64, i64)]) -> Q {
    entries
        .iter()
        .fold(q(0, 1), |acc, &(n, b, r)| acc + q(n * b * (r - b), 2 * r))
}

fn oracle_rr(cfg: &VerifyConfig) -> Result<u64, String> {
    let mut cases = 0;
    let one = q(1, 1);
    let mut run = |case: ContractionCase,
                   rp: i64,
                   lead: Q,
                   y: (i64, i64, i64),
                   sufficient: i64|
     -> Result<(), String> {
        cases += 1;
        if g(y.1, y.2) != 1 {
            return match aw_upper_bound(&case) {
                Err(_) => Ok(()),
                Ok(b) => Err(format!("{case:?}: non-terminal basket gave bound {b}")),
            };
        }
        let delta = |aw: i64| lead.clone() + correction(&[y]) - correction(&[(aw, 1, 2)]);
        let scanned = (0..=4 * sufficient + 8)
            .filter(|&aw| delta(aw) >= one)
            .max()
            .unwrap_or(-1);
        let bound = aw_upper_bound(&case).map_err(|e| e.to_string())?;
        if bound.max(-1) != scanned || bound > sufficient {
            return Err(format!("{case:?}: bound {bound}, scan {scanned}"));
        }
        for aw in 1..=sufficient {
            let rep = case_depth_check(&case, aw).map_err(|e| e.to_string())?;
            if rep.dep_y_min < rep.dep_x_upper - 1 {
                return Err(format!("{case:?}, aw {aw}: {rep:?}"));
            }
        }
        if !matches!(case, ContractionCase::E2 { .. }) {
            let rep = case_depth_check(&case, rp - 1).map_err(|e| e.to_string())?;
            if rep.dep_y_min - 1 != 2 * rp - 2 {
                return Err(format!("{case:?}: dep(Y) = {}", rep.dep_y_min));
            }
        }
        Ok(())
    };
    for rp in 3..=cfg.rr_max_rprime {
        let r = 2 * rp;
        // (1/2)(a/n)^3 E^3
        if rp >= 5 {
            run(
                ContractionCase::E1A4 { rprime: rp },
                rp,
                q(8, 2) * q(2, r),
                (1, rp - 4, r),
                rp - 1,
            )?;
        }
        run(
            ContractionCase::E1A2 { rprime: rp },
            rp,
            q(1, 2) * q(4, r),
            (1, rp - 2, r),
            rp - 1,
        )?;
        run(
            ContractionCase::E2 { rprime: rp },
            rp,
            q(1, 2) * q(2, r),
            (2, rp - 1, r),
            2 * rp - 1,
        )?;
    }
    Ok(cases)
}

fn oracle_e11(_cfg: &VerifyConfig) -> Result<u64, String> {
    // 1/2(1,1,1) and 1/6(1,-1,-1): depths 1 and 5; cE/2 general elephant E7
    let rep = case_depth_check(&ContractionCase::E11, 0).map_err(|e| e.to_string())?;
    if (rep.dep_y_min, rep.dep_x_upper) != ((2 - 1) + (6 - 1), 7) {
        return Err(format!("{rep:?}"));
    }
    Ok(1)
}

fn oracle_neighborhoods(cfg: &VerifyConfig) -> Result<u64, String> {
    let mut cases = 0;
    for r in (5..=cfg.en_exceptional_max_r).step_by(2) {
        for a2 in (r / 2 + 1..r).filter(|&a| g(a, r) == 1) {
            for r1 in (1..=3 * r).filter(|&x| (a2 * x) % r == 1) {
                let s = 2 * a2 - r;
                let ky = q(-1, r) * q(s, 2) + q(1, r * r1);
                let v = key_check(
                    &ENCase::ExceptionalIAIA { r, a2 },
                    &KeyOptions {
                        r1: Some(r1),
                        kx_c: None,
                    },
                )
                .map_err(|e| e.to_string())?;
                if s * r1 < 2 || v.ky_cy != ky || ky > q(0, 1) {
                    return Err(format!("exceptional r = {r}, a2 = {a2}, r1 = {r1}"));
                }
                cases += 1;
            }
        }
    }
    for r in 2..=cfg.en_semistable_max_r {
        for rp in 2..=r {
            for a in (1..r).filter(|&a| g(a, r) == 1) {
                for ap in (1..rp).filter(|&b| g(b, rp) == 1) {
                    let delta = a * rp + ap * r - r * rp;
                    if delta <= 0 {
                        continue;
                    }
                    let r1 = (1..=r).find(|&x| (a * x) % r == 1 % r).unwrap();
                    let ky = q(-delta, r * rp) + q(1, r * r1);
                    let v = key_check(
                        &ENCase::SemistableIAIA {
                            r,
                            a,
                            rprime: rp,
                            aprime: ap,
                        },
                        &KeyOptions::default(),
                    )
                    .map_err(|e| e.to_string())?;
                    if r1 * delta < rp || v.ky_cy != ky || ky > q(0, 1) {
                        return Err(format!("semistable r = {r}, r' = {rp}, a = {a}, a' = {ap}"));
                    }
                    cases += 1;
                }
            }
        }
    }
    Ok(cases)
}

fn oracle_o3(cfg: &VerifyConfig) -> Result<u64, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(99));
    let mut cases = 0;
    for a in (3..=cfg.o3_max_a).step_by(2) {
        for d in 1..=cfg.o3_max_d {
            for _ in 0..10 {
                // direct blow-up with weights (a, r, 2, r+2)/2: phi has weight r+1
                let r = 2 * a * d - 1;
                let alpha = d + 1 + rng.gen_range(0..3);
                let mut sa = vec![(2 * d, 0)];
                let mut sb = vec![];
                for _ in 0..3 {
                    let i = rng.gen_range(0..=3 * d);
                    sa.push((i, (r + 1 - a * i).max(0) + rng.gen_range(0..2)));
                    let i = rng.gen_range(0..=2 * d);
                    // (2i+1)a + 2j >= r
                    sb.push((
                        i,
                        (r - (2 * i + 1) * a + 1).div_euclid(2).max(0) + rng.gen_range(0..2),
                    ));
                }
                let case =
                    O3CaseA::new(a, d, alpha, sa.clone(), sb.clone()).map_err(|e| e.to_string())?;
                flipdepth::kawakita::nonnegativity_check(&case)
                    .map_err(|e| format!("{case:?}: {e}"))?;
                for &(i, j) in &sa {
                    if beta_k(i, j, a, d) != a * i + j - (r + 1) {
                        return Err(format!("beta(a) at ({i}, {j})"));
                    }
                }
                for &(i, j) in &sb {
                    if gamma_k(i, j, a, d) != q(2 * a * i + a + 2 * j - r, 2) {
                        return Err(format!("gamma(a) at ({i}, {j})"));
                    }
                }
                if delta_k(a, alpha, d) != q(2 * a * alpha - a - r - 2, 2) {
                    return Err("delta(a)".into());
                }
                // case B: weights (a, r, 2, r+2, r+4)/2
                let rb = (2 * d + 1) * a - 2;
                let pa: Vec<_> = (0..3)
                    .map(|_| {
                        let i = rng.gen_range(0..=3 * d);
                        (i, (rb + 2 - a * i).max(0) + rng.gen_range(0..2))
                    })
                    .collect();
                let pb: Vec<_> = (0..3)
                    .map(|_| {
                        let i = rng.gen_range(0..=2 * d);
                        (i, (a * (d - i) - 1).max(0) + rng.gen_range(0..2))
                    })
                    .collect();
                let case = O3CaseB::new(a, d, pa.clone(), pb.clone()).map_err(|e| e.to_string())?;
                flipdepth::kawakita::nonnegativity_check_b(&case)
                    .map_err(|e| format!("{case:?}: {e}"))?;
                for &(i, j) in &pa {
                    if case_b_e1(i, j, a, d) != a * i + j - (rb + 2) {
                        return Err(format!("phi_1 exponent at ({i}, {j})"));
                    }
                }
                for &(i, j) in &pb {
                    if case_b_e2(i, j, a, d) != q(2 * j + 2 + (2 * i + 1) * a - (rb + 2), 2) {
                        return Err(format!("phi_2 exponent at ({i}, {j})"));
                    }
                }
                cases += 2;
            }
        }
    }
    Ok(cases)
}

fn admits(kind: TraceKind, b: u64, a: u64) -> bool {
    let (b, a) = (b as i64, a as i64);
    match kind {
        TraceKind::Flip => a < b,
        TraceKind::Flop => a == b,
        TraceKind::WExtraction => b > 0 && a >= b - 1,
        TraceKind::DivToPoint => a <= b + 1,
        TraceKind::DivToCurve => a <= b,
        TraceKind::BlowDownLCI => a == 0 && b == 0,
    }
}

fn oracle_ledger(cfg: &VerifyConfig) -> Result<u64, String> {
    let kinds = [
        TraceKind::WExtraction,
        TraceKind::Flip,
        TraceKind::Flop,
        TraceKind::DivToPoint,
        TraceKind::DivToCurve,
        TraceKind::BlowDownLCI,
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(7));
    let mut cases = 0;
    while cases < cfg.ledger_traces as u64 {
        // random walk over depth values, keeping only admissible steps
        let mut dep = rng.gen_range(0..10u64);
        let mut steps = Vec::new();
        while steps.len() < 12 {
            let kind = kinds[rng.gen_range(0..6)];
            let after = rng.gen_range(0..12u64);
            if admits(kind, dep, after) {
                steps.push(TraceStep::new(kind, dep, after));
                dep = after;
            }
        }
        let trace = FactorizationTrace::new(steps);
        validate_trace(&trace).map_err(|e| format!("{trace:?}: {e}"))?;
        for i in 0..trace.steps.len() {
            for &k in &kinds {
                let s = &trace.steps[i];
                if admits(k, s.before, s.after) {
                    continue;
                }
                let mut m = trace.clone();
                m.steps[i].kind = k;
                if validate_trace(&m).is_ok() {
                    return Err(format!("mutant accepted: {m:?}"));
                }
            }
        }
        cases += 1;
    }
    Ok(cases)
}

fn main() -> ExitCode {
    let cfg = VerifyConfig::default();
    let secs = |s: u64| Some(Duration::from_secs(s));
    let criteria = [
        Criterion {
            id: 1,
            name: "cyclic depth",
            limit: secs(10),
            oracle: oracle_cyclic,
        },
        Criterion {
            id: 2,
            name: "cA/r depth formula",
            limit: secs(60),
            oracle: oracle_car,
        },
        Criterion {
            id: 3,
            name: "residual recursion",
            limit: None,
            oracle: oracle_residual,
        },
        Criterion {
            id: 4,
            name: "Riemann-Roch cases",
            limit: secs(5),
            oracle: oracle_rr,
        },
        Criterion {
            id: 5,
            name: "e11",
            limit: secs(1),
            oracle: oracle_e11,
        },
        Criterion {
            id: 6,
            name: "extremal neighborhoods",
            limit: secs(30),
            oracle: oracle_neighborhoods,
        },
        Criterion {
            id: 7,
            name: "o3 chains",
            limit: secs(30),
            oracle: oracle_o3,
        },
        Criterion {
            id: 8,
            name: "ledger metamorphic",
            limit: secs(5),
            oracle: oracle_ledger,
        },
    ];
    let mut all = true;
    for c in criteria {
        let start = Instant::now();
        let report = verify::run_one(c.id, &cfg).expect("known criterion");
        let oracle = (c.oracle)(&cfg);
        let elapsed = start.elapsed();
        let in_time = c.limit.is_none_or(|l| elapsed <= l);
        let ok = report.passed && oracle.is_ok() && in_time;
        all &= ok;
        let limit = c
            .limit
            .map_or("none".to_string(), |l| format!("{}s", l.as_secs()));
        println!(
            "criterion {}: {} {} (sweep cases {}, oracle cases {}, {:.2}s, limit {})",
            c.id,
            if ok { "PASS" } else { "FAIL" },
            c.name,
            report.cases,
            oracle.as_ref().map_or("-".to_string(), |n| n.to_string()),
            elapsed.as_secs_f64(),
            limit,
        );
        for f in &report.failures {
            println!("    sweep failure: {f}");
        }
        if let Err(e) = &oracle {
            println!("    oracle failure: {e}");
        }
        if !in_time {
            println!("    over the time limit");
        }
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
