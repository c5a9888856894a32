//! Validation of factorization traces against the depth rules.
//!
//! A trace `X_0 --> X_1 --> ... --> X_n` is a list of steps annotated with
//! the depth before and after. Each kind of step has one rule:
//!
//! | kind          | rule                                  |
//! |---------------|---------------------------------------|
//! | `WExtraction` | `before > 0`, `after >= before - 1`   |
//! | `Flip`        | `after < before`                      |
//! | `Flop`        | `after == before`                     |
//! | `DivToPoint`  | `after <= before + 1`                 |
//! | `DivToCurve`  | `after <= before`                     |
//! | `BlowDownLCI` | `before == 0`, `after == 0`           |
//!
//! `WExtraction` is the inverse of a w-morphism `Y -> X`, so it goes from
//! `X` to `Y`. `DivToPoint` is a divisorial contraction `Y -> X` to a point,
//! going from `Y` to `X`.

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TraceKind {
    WExtraction,
    Flip,
    Flop,
    DivToPoint,
    DivToCurve,
    BlowDownLCI,
}

impl TraceKind {
    pub const ALL: [TraceKind; 6] = [
        TraceKind::WExtraction,
        TraceKind::Flip,
        TraceKind::Flop,
        TraceKind::DivToPoint,
        TraceKind::DivToCurve,
        TraceKind::BlowDownLCI,
    ];

    pub fn rule(self) -> &'static str {
        match self {
            TraceKind::WExtraction => "WExtraction: before > 0 and after >= before - 1",
            TraceKind::Flip => "Flip: after < before",
            TraceKind::Flop => "Flop: after == before",
            TraceKind::DivToPoint => "DivToPoint: after <= before + 1",
            TraceKind::DivToCurve => "DivToCurve: after <= before",
            TraceKind::BlowDownLCI => "BlowDownLCI: before == 0 and after == 0",
        }
    }

    pub fn admits(self, before: u64, after: u64) -> bool {
        match self {
            TraceKind::WExtraction => before > 0 && after + 1 >= before,
            TraceKind::Flip => after < before,
            TraceKind::Flop => after == before,
            TraceKind::DivToPoint => after <= before + 1,
            TraceKind::DivToCurve => after <= before,
            TraceKind::BlowDownLCI => before == 0 && after == 0,
        }
    }
}

impl std::fmt::Display for TraceKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{self:?}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TraceStep {
    pub kind: TraceKind,
    pub before: u64,
    pub after: u64,
    /// Factorization of this step into smaller steps, if recorded.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub factorization: Option<FactorizationTrace>,
}

impl TraceStep {
    pub fn new(kind: TraceKind, before: u64, after: u64) -> Self {
        TraceStep {
            kind,
            before,
            after,
            factorization: None,
        }
    }

    pub fn with_factorization(mut self, t: FactorizationTrace) -> Self {
        self.factorization = Some(t);
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FactorizationTrace {
    pub steps: Vec<TraceStep>,
}

impl FactorizationTrace {
    pub fn new(steps: Vec<TraceStep>) -> Self {
        FactorizationTrace { steps }
    }

    pub fn start(&self) -> Option<u64> {
        self.steps.first().map(|s| s.before)
    }

    pub fn end(&self) -> Option<u64> {
        self.steps.last().map(|s| s.after)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LedgerError {
    /// `path` is the step index, followed by indices inside nested
    /// factorizations.
    #[error("step {path:?} violates {rule}")]
    RuleViolation { path: Vec<usize>, rule: String },
    #[error("step {path:?} starts at depth {found}, previous step ended at {expected}")]
    ChainBreak {
        path: Vec<usize>,
        expected: u64,
        found: u64,
    },
}

impl LedgerError {
    fn nest(self, i: usize) -> Self {
        match self {
            LedgerError::RuleViolation { mut path, rule } => {
                path.insert(0, i);
                LedgerError::RuleViolation { path, rule }
            }
            LedgerError::ChainBreak {
                mut path,
                expected,
                found,
            } => {
                path.insert(0, i);
                LedgerError::ChainBreak {
                    path,
                    expected,
                    found,
                }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StepDiagnostic {
    pub index: usize,
    pub kind: TraceKind,
    pub before: u64,
    pub after: u64,
    pub rule: &'static str,
    /// `WExtraction` with `after = before - 1`.
    pub minimal: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub factorization: Option<TraceVerdict>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceVerdict {
    pub valid: bool,
    pub steps: Vec<StepDiagnostic>,
}

/// Checks chaining and the per-kind rules, recursing into nested
/// factorizations. A nested factorization must run from `before` to
/// `after` of its step.
pub fn validate_trace(t: &FactorizationTrace) -> Result<TraceVerdict, LedgerError> {
    let mut steps = Vec::with_capacity(t.steps.len());
    for (i, s) in t.steps.iter().enumerate() {
        if i > 0 {
            let prev = t.steps[i - 1].after;
            if prev != s.before {
                return Err(LedgerError::ChainBreak {
                    path: vec![i],
                    expected: prev,
                    found: s.before,
                });
            }
        }
        if !s.kind.admits(s.before, s.after) {
            return Err(LedgerError::RuleViolation {
                path: vec![i],
                rule: s.kind.rule().into(),
            });
        }
        let nested = match &s.factorization {
            Some(inner) if !inner.steps.is_empty() => {
                let (start, end) = (inner.start().unwrap(), inner.end().unwrap());
                if start != s.before {
                    return Err(LedgerError::ChainBreak {
                        path: vec![i, 0],
                        expected: s.before,
                        found: start,
                    });
                }
                if end != s.after {
                    return Err(LedgerError::ChainBreak {
                        path: vec![i, inner.steps.len()],
                        expected: end,
                        found: s.after,
                    });
                }
                Some(validate_trace(inner).map_err(|e| e.nest(i))?)
            }
            _ => None,
        };
        steps.push(StepDiagnostic {
            index: i,
            kind: s.kind,
            before: s.before,
            after: s.after,
            rule: s.kind.rule(),
            minimal: s.kind == TraceKind::WExtraction && s.after + 1 == s.before,
            factorization: nested,
        });
    }
    Ok(TraceVerdict { valid: true, steps })
}

/// Whether the trace fits an induction on depth: every `Flip` and
/// `DivToCurve` starts strictly below the depth the trace starts from, and
/// nested factorizations satisfy the same condition from their own start.
pub fn induction_certificate(t: &FactorizationTrace) -> bool {
    validate_trace(t).is_ok() && certify(t)
}

fn certify(t: &FactorizationTrace) -> bool {
    let Some(origin) = t.start() else {
        return true;
    };
    t.steps.iter().all(|s| {
        let recursed = matches!(s.kind, TraceKind::Flip | TraceKind::DivToCurve);
        (!recursed || s.before < origin) && s.factorization.as_ref().is_none_or(certify)
    })
}

/// Kinds whose rule rejects `before -> after`. Never empty: `Flop` rejects
/// any change and `Flip` rejects equality.
pub fn violating_kinds(before: u64, after: u64) -> Vec<TraceKind> {
    TraceKind::ALL
        .into_iter()
        .filter(|k| !k.admits(before, after))
        .collect()
}

/// Replaces the kind of step `index` by `kind`, keeping the depths.
pub fn mutate_kind(t: &FactorizationTrace, index: usize, kind: TraceKind) -> FactorizationTrace {
    let mut out = t.clone();
    out.steps[index].kind = kind;
    out
}

/// A random trace of `len` steps obeying every rule, with depths at most
/// `max_dep`.
pub fn random_trace<R: Rng + ?Sized>(rng: &mut R, len: usize, max_dep: u64) -> FactorizationTrace {
    let mut dep = rng.gen_range(0..=max_dep);
    let mut steps = Vec::with_capacity(len);
    for _ in 0..len {
        let options: Vec<TraceKind> = TraceKind::ALL
            .into_iter()
            .filter(|k| match k {
                TraceKind::WExtraction | TraceKind::Flip => dep > 0,
                TraceKind::BlowDownLCI => dep == 0,
                _ => true,
            })
            .collect();
        let kind = options[rng.gen_range(0..options.len())];
        let after = match kind {
            TraceKind::WExtraction => rng.gen_range(dep - 1..=max_dep.max(dep)),
            TraceKind::Flip => rng.gen_range(0..dep),
            TraceKind::Flop | TraceKind::BlowDownLCI => dep,
            TraceKind::DivToPoint => rng.gen_range(0..=(dep + 1).min(max_dep.max(dep))),
            TraceKind::DivToCurve => rng.gen_range(0..=dep),
        };
        steps.push(TraceStep::new(kind, dep, after));
        dep = after;
    }
    FactorizationTrace::new(steps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use TraceKind::*;

    fn trace(steps: &[(TraceKind, u64, u64)]) -> FactorizationTrace {
        FactorizationTrace::new(
            steps
                .iter()
                .map(|&(k, b, a)| TraceStep::new(k, b, a))
                .collect(),
        )
    }

    #[test]
    fn examples() {
        let t = trace(&[(Flip, 5, 4), (Flop, 4, 4), (DivToPoint, 4, 3)]);
        assert!(validate_trace(&t).unwrap().valid);
        let err = validate_trace(&trace(&[(Flop, 3, 2)])).unwrap_err();
        assert_eq!(
            err,
            LedgerError::RuleViolation {
                path: vec![0],
                rule: Flop.rule().into()
            }
        );
        for a in 0..5 {
            assert!(validate_trace(&trace(&[(WExtraction, 0, a)])).is_err());
        }
    }

    #[test]
    fn rule_table() {
        assert!(WExtraction.admits(3, 2) && WExtraction.admits(3, 9) && !WExtraction.admits(3, 1));
        assert!(DivToPoint.admits(3, 4) && !DivToPoint.admits(3, 5) && DivToPoint.admits(3, 0));
        assert!(DivToCurve.admits(3, 3) && !DivToCurve.admits(3, 4));
        assert!(BlowDownLCI.admits(0, 0) && !BlowDownLCI.admits(1, 1) && !BlowDownLCI.admits(0, 1));
        assert!(!Flip.admits(0, 0));
    }

    #[test]
    fn minimal_flag() {
        let v = validate_trace(&trace(&[(WExtraction, 4, 3), (WExtraction, 3, 5)])).unwrap();
        assert!(v.steps[0].minimal);
        assert!(!v.steps[1].minimal);
    }

    #[test]
    fn chain_break() {
        let err = validate_trace(&trace(&[(Flip, 5, 4), (Flop, 3, 3)])).unwrap_err();
        assert_eq!(
            err,
            LedgerError::ChainBreak {
                path: vec![1],
                expected: 4,
                found: 3
            }
        );
    }

    #[test]
    fn certificates() {
        assert!(induction_certificate(&trace(&[(BlowDownLCI, 0, 0)])));
        assert!(!induction_certificate(&trace(&[(Flip, 0, 0)])));
        assert!(!induction_certificate(&trace(&[
            (Flop, 0, 0),
            (Flip, 0, 0)
        ])));
        let inner = trace(&[(WExtraction, 2, 1), (Flip, 1, 0), (DivToPoint, 0, 1)]);
        let outer = FactorizationTrace::new(vec![
            TraceStep::new(WExtraction, 3, 2),
            TraceStep::new(Flip, 2, 1).with_factorization(inner),
            TraceStep::new(DivToCurve, 1, 0),
            TraceStep::new(BlowDownLCI, 0, 0),
        ]);
        assert!(validate_trace(&outer).is_ok());
        assert!(induction_certificate(&outer));
        // a flip at the starting depth is not a smaller subproblem
        assert!(!induction_certificate(&trace(&[(Flip, 3, 2)])));
    }

    #[test]
    fn nested_errors_carry_path() {
        let inner = trace(&[(WExtraction, 2, 1), (Flop, 1, 0)]);
        let outer =
            FactorizationTrace::new(vec![TraceStep::new(Flip, 2, 0).with_factorization(inner)]);
        assert_eq!(
            validate_trace(&outer).unwrap_err(),
            LedgerError::RuleViolation {
                path: vec![0, 1],
                rule: Flop.rule().into()
            }
        );
        let inner = trace(&[(Flip, 2, 1)]);
        let outer =
            FactorizationTrace::new(vec![TraceStep::new(Flip, 2, 0).with_factorization(inner)]);
        assert!(matches!(
            validate_trace(&outer),
            Err(LedgerError::ChainBreak { .. })
        ));
    }

    #[test]
    fn json_schema() {
        let t: FactorizationTrace =
            serde_json::from_str(r#"{"steps":[{"kind":"Flop","before":3,"after":2}]}"#).unwrap();
        assert_eq!(t, trace(&[(Flop, 3, 2)]));
        assert!(serde_json::from_str::<FactorizationTrace>(
            r#"{"steps":[{"kind":"Flap","before":3,"after":2}]}"#
        )
        .is_err());
        assert!(serde_json::from_str::<FactorizationTrace>(
            r#"{"steps":[{"kind":"Flop","before":-1,"after":2}]}"#
        )
        .is_err());
    }

    #[test]
    fn mutation_always_possible() {
        for b in 0..6 {
            for a in 0..6 {
                let v = violating_kinds(b, a);
                assert!(!v.is_empty());
                for k in v {
                    assert!(!k.admits(b, a));
                }
            }
        }
    }

    proptest! {
        #[test]
        fn generated_traces_validate_and_mutants_fail(seed in any::<u64>(), len in 0usize..30) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let t = random_trace(&mut rng, len, 12);
            prop_assert!(validate_trace(&t).is_ok());
            for (i, s) in t.steps.iter().enumerate() {
                for k in violating_kinds(s.before, s.after) {
                    prop_assert!(validate_trace(&mutate_kind(&t, i, k)).is_err());
                }
            }
        }
    }
}
