//! Extremal neighborhood numerics.
//!
//! For a neighborhood `X > C` and a w-morphism `f: Y -> X` over a point of
//! index `r` with exceptional divisor `F`,
//!
//! ```text
//! K_Y . C_Y = K_X . C + (1/r) C_Y . F
//! ```
//!
//! [`key_check`] evaluates this for each case of the classification that
//! needs an explicit computation and checks that it is `<= 0`.

use num_traits::Signed;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::singular::{gcd, int, mod_inverse, modulo, rat, Rat};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NeighborhoodError {
    #[error("invalid point: {0}")]
    InvalidPoint(String),
    #[error("invalid case data: {0}")]
    InvalidCaseData(String),
    #[error("case violation: {0}")]
    CaseViolation(String),
}

/// A point on the curve with its index and `w_P(0)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ENPoint {
    r: i64,
    w0: Rat,
}

impl ENPoint {
    /// `w0` must lie in `[0, (r-1)/r]`; in particular it is 0 for `r = 1`.
    pub fn new(r: i64, w0: Rat) -> Result<Self, NeighborhoodError> {
        if r < 1 {
            return Err(NeighborhoodError::InvalidPoint(format!("index {r} < 1")));
        }
        if w0.is_negative() || w0 > rat(r - 1, r) {
            return Err(NeighborhoodError::InvalidPoint(format!(
                "w_P(0) = {w0} outside [0, {}]",
                rat(r - 1, r)
            )));
        }
        Ok(ENPoint { r, w0 })
    }

    pub fn index(&self) -> i64 {
        self.r
    }

    pub fn w0(&self) -> &Rat {
        &self.w0
    }
}

/// `K_X . C = -1 + sum w_P(0)`.
pub fn mori_kc(points: &[ENPoint]) -> Rat {
    points.iter().fold(int(-1), |acc, p| acc + &p.w0)
}

/// Cases of the classification handled explicitly.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "case")]
pub enum ENCase {
    /// `C# = {y1^(r-2) = y2^2}` in `C^3/Z_r(2, r-2, 1)`, `r` odd `>= 5`.
    IC { r: i64 },
    /// `cAx/4` point; `1/4(r1, r2, r3, r4)` are the weights of the w-morphism.
    IIB { r1: i64, r2: i64, r3: i64, r4: i64 },
    /// A `cA/r` point on an IA neighborhood, `C# = {y1^a2 = y2^a1}`.
    IA { r: i64, a1: i64, a2: i64 },
    /// `cA/2` companion point plus a `cA/r` point with `a1 = 1`.
    #[serde(rename = "ExceptionalIAIA")]
    ExceptionalIAIA { r: i64, a2: i64 },
    /// Two `cA` points of indices `r >= r'` with weights `a`, `a'`.
    #[serde(rename = "SemistableIAIA")]
    SemistableIAIA {
        r: i64,
        a: i64,
        rprime: i64,
        aprime: i64,
    },
    /// Divisorial IA + IA + III; same numerics as the exceptional case.
    #[serde(rename = "IAIAIII")]
    IAIAIII { r: i64, a2: i64 },
}

fn invalid(msg: String) -> NeighborhoodError {
    NeighborhoodError::InvalidCaseData(msg)
}

impl ENCase {
    pub fn validate(&self) -> Result<(), NeighborhoodError> {
        match *self {
            ENCase::IC { r } => {
                if r < 5 || r % 2 == 0 {
                    return Err(invalid(format!("IC needs odd r >= 5, got {r}")));
                }
            }
            ENCase::IIB { r1, r2, r3, r4 } => {
                let ok = [(r1, 3), (r2, 2), (r3, 1), (r4, 1)]
                    .iter()
                    .all(|&(w, c)| w > 0 && modulo(w, 4) == c);
                if !ok {
                    return Err(invalid(format!(
                        "IIB weights ({r1}, {r2}, {r3}, {r4}) must be positive and = (3, 2, 1, 1) mod 4"
                    )));
                }
            }
            ENCase::IA { r, a1, a2 } => {
                if r < 2 || !(0 < a1 && a1 < r) || !(0 < a2 && a2 < r) || gcd(a1 * a2, r) != 1 {
                    return Err(invalid("IA needs 0 < a1, a2 < r, gcd(a1 a2, r) = 1".into()));
                }
            }
            ENCase::ExceptionalIAIA { r, a2 } => {
                if r < 3 || r % 2 == 0 {
                    return Err(invalid(format!(
                        "exceptional IA+IA needs odd r >= 3, got {r}"
                    )));
                }
                check_half_weight(r, a2)?;
            }
            ENCase::IAIAIII { r, a2 } => {
                if r < 3 {
                    return Err(invalid(format!("IA+IA+III needs r >= 3, got {r}")));
                }
                check_half_weight(r, a2)?;
            }
            ENCase::SemistableIAIA {
                r,
                a,
                rprime,
                aprime,
            } => {
                if rprime < 2 || r < rprime {
                    return Err(invalid("semistable needs r >= r' >= 2".into()));
                }
                if !(0 < a && a < r) || gcd(a, r) != 1 {
                    return Err(invalid(format!("a = {a} is not a unit in 1..{r}")));
                }
                if !(0 < aprime && aprime < rprime) || gcd(aprime, rprime) != 1 {
                    return Err(invalid(format!(
                        "a' = {aprime} is not a unit in 1..{rprime}"
                    )));
                }
                if semistable_delta(r, a, rprime, aprime) <= 0 {
                    return Err(invalid("a/r + a'/r' must exceed 1".into()));
                }
            }
        }
        Ok(())
    }

    /// Index of the point being blown up (the discrepancy is `1/index`).
    pub fn index(&self) -> i64 {
        match *self {
            ENCase::IC { r }
            | ENCase::IA { r, .. }
            | ENCase::ExceptionalIAIA { r, .. }
            | ENCase::SemistableIAIA { r, .. }
            | ENCase::IAIAIII { r, .. } => r,
            ENCase::IIB { .. } => 4,
        }
    }

    /// Residue that `r1` must have modulo the index, for the IA-type cases.
    pub fn r1_residue(&self) -> Option<i64> {
        match *self {
            ENCase::IA { r, a1, a2 } => Some(modulo(a1 * mod_inverse(a2, r)?, r)),
            ENCase::ExceptionalIAIA { r, a2 } | ENCase::IAIAIII { r, a2 } => mod_inverse(a2, r),
            ENCase::SemistableIAIA { r, a, .. } => mod_inverse(a, r),
            ENCase::IC { .. } | ENCase::IIB { .. } => None,
        }
    }

    /// Smallest positive admissible `r1`.
    pub fn default_r1(&self) -> Option<i64> {
        let res = self.r1_residue()?;
        Some(if res == 0 { self.index() } else { res })
    }

    /// `K_X . C` when the case data determines it.
    pub fn kx_c(&self) -> Option<Rat> {
        match *self {
            ENCase::ExceptionalIAIA { r, a2 } | ENCase::IAIAIII { r, a2 } => {
                Some(-rat(2 * a2 - r, 2 * r))
            }
            ENCase::SemistableIAIA {
                r,
                a,
                rprime,
                aprime,
            } => Some(-rat(semistable_delta(r, a, rprime, aprime), r * rprime)),
            _ => None,
        }
    }
}

fn check_half_weight(r: i64, a2: i64) -> Result<(), NeighborhoodError> {
    if !(2 * a2 > r && a2 < r) || gcd(a2, r) != 1 {
        return Err(invalid(format!(
            "need r/2 < a2 < r with gcd(a2, r) = 1, got a2 = {a2}"
        )));
    }
    Ok(())
}

/// `delta = a r' + a' r - r r'`.
pub fn semistable_delta(r: i64, a: i64, rprime: i64, aprime: i64) -> i64 {
    a * rprime + aprime * r - r * rprime
}

fn resolve_r1(case: &ENCase, r1: Option<i64>) -> Result<Option<i64>, NeighborhoodError> {
    let Some(residue) = case.r1_residue() else {
        return Ok(None);
    };
    match r1 {
        None => Ok(case.default_r1()),
        Some(r1) if r1 > 0 && modulo(r1, case.index()) == residue => Ok(Some(r1)),
        Some(r1) => Err(invalid(format!(
            "r1 = {r1} must be positive and = {residue} mod {}",
            case.index()
        ))),
    }
}

/// `C_Y . F` for the case, with an optional explicit `r1` for the IA types.
pub fn cf_intersection(case: &ENCase, r1: Option<i64>) -> Result<Rat, NeighborhoodError> {
    case.validate()?;
    let r1 = resolve_r1(case, r1)?;
    Ok(match *case {
        ENCase::IC { .. } => int(1),
        ENCase::IIB { r1, r2, .. } => rat(3, r1).min(rat(2, r2)),
        ENCase::IA { a1, .. } => rat(a1, r1.expect("IA has r1")),
        ENCase::ExceptionalIAIA { .. } | ENCase::IAIAIII { .. } | ENCase::SemistableIAIA { .. } => {
            rat(1, r1.expect("IA type has r1"))
        }
    })
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct KeyOptions {
    /// Explicit `r1`; defaults to the smallest positive admissible one.
    pub r1: Option<i64>,
    /// `K_X . C` for IC, IIB and IA; defaults to `-1/r`, the largest value
    /// allowed when the point of index `r` is the only non-Gorenstein point.
    pub kx_c: Option<Rat>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KeyVerdict {
    #[serde(serialize_with = "crate::serialize_rat")]
    pub kx_c: Rat,
    #[serde(serialize_with = "crate::serialize_rat")]
    pub cf: Rat,
    #[serde(serialize_with = "crate::serialize_rat")]
    pub ky_cy: Rat,
    pub nonpositive: bool,
    pub witness_r1: Option<i64>,
}

/// Computes `K_Y . C_Y` for the case and checks the witness inequality
/// (`s r1 >= 2` for the exceptional cases, `r1 delta >= r'` for the
/// semistable case).
pub fn key_check(case: &ENCase, opts: &KeyOptions) -> Result<KeyVerdict, NeighborhoodError> {
    case.validate()?;
    let r1 = resolve_r1(case, opts.r1)?;
    let cf = cf_intersection(case, r1)?;
    let index = case.index();
    let kx_c = match case.kx_c() {
        Some(k) => {
            if let Some(given) = &opts.kx_c {
                if given != &k {
                    return Err(invalid(format!(
                        "K_X.C = {given} contradicts case value {k}"
                    )));
                }
            }
            k
        }
        None => opts.kx_c.clone().unwrap_or_else(|| rat(-1, index)),
    };
    let ky_cy = &kx_c + &cf / int(index);

    match *case {
        ENCase::ExceptionalIAIA { r, a2 } | ENCase::IAIAIII { r, a2 } => {
            let r1 = r1.expect("IA type has r1");
            let s = 2 * a2 - r;
            if s * r1 < 2 {
                return Err(NeighborhoodError::CaseViolation(format!(
                    "s r1 = {} < 2",
                    s * r1
                )));
            }
            debug_assert_eq!(ky_cy, rat(1, r) * (rat(-s, 2) + rat(1, r1)));
        }
        ENCase::SemistableIAIA {
            r,
            a,
            rprime,
            aprime,
        } => {
            let r1 = r1.expect("IA type has r1");
            let delta = semistable_delta(r, a, rprime, aprime);
            // a r1 = gamma r + 1
            let gamma = (a * r1 - 1) / r;
            if gamma == 0 {
                return Err(NeighborhoodError::CaseViolation(
                    "gamma = 0 forces r' > r".into(),
                ));
            }
            if r1 * delta < rprime {
                return Err(NeighborhoodError::CaseViolation(format!(
                    "r1 delta = {} < r' = {rprime}",
                    r1 * delta
                )));
            }
        }
        _ => {}
    }

    Ok(KeyVerdict {
        nonpositive: !ky_cy.is_positive(),
        kx_c,
        cf,
        ky_cy,
        witness_r1: r1,
    })
}

/// `true` iff `x <= 0`.
pub fn is_nonpositive(x: &Rat) -> bool {
    !x.is_positive()
}
