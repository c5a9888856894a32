//! Singular Riemann-Roch bookkeeping for divisorial contractions to a point.
//!
//! Across a contraction `Y -> X` with exceptional divisor `E` and discrepancy
//! `a/n`,
//!
//! ```text
//! chi(2K_Y) - chi(2K_X) = 1/2 (a/n)^3 E^3 + sum_Y b(r-b)/2r - sum_X b(r-b)/2r
//! ```
//!
//! and this difference is at least 1 whenever the discrepancy is 1 or 2. That
//! lower bound is taken as given here. Combined with the exceptional-type case
//! data it bounds the axial weight of the `cD/2` point `X`.

use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::car::{depth_bound, depth_formula, CARGerm, CarError};
use crate::singular::{
    int, mod_inverse, normalize_cyclic, rat, Basket, CyclicQuotient, Rat, SingularError,
    TerminalClass,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RrError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error(transparent)]
    Singular(#[from] SingularError),
    #[error(transparent)]
    Car(#[from] CarError),
}

/// Exceptional-type divisorial contractions to a `cD/2` or `cE/2` point, and
/// the ordinary `o3` family (handled in [`crate::kawakita`]). `rprime` is
/// `r'` with `r = 2r'` the index of the point on `Y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "case")]
pub enum ContractionCase {
    /// e1 with `a/n = 4/2`.
    #[serde(rename = "E1_a4")]
    E1A4 { rprime: i64 },
    /// e1 with `a/n = 2/2`.
    #[serde(rename = "E1_a2")]
    E1A2 { rprime: i64 },
    #[serde(rename = "E2")]
    E2 { rprime: i64 },
    #[serde(rename = "E11")]
    E11,
    #[serde(rename = "O3")]
    O3,
}

/// `sum n * b(r-b) / 2r`.
pub fn rr_correction(basket: &Basket) -> Rat {
    basket
        .entries()
        .iter()
        .map(|e| rat(e.n as i64 * e.b * (e.r - e.b), 2 * e.r))
        .fold(Rat::zero(), |acc, x| acc + x)
}

pub fn delta_chi(a_over_n: &Rat, e3: &Rat, basket_y: &Basket, basket_x: &Basket) -> Rat {
    let half = rat(1, 2);
    half * a_over_n * a_over_n * a_over_n * e3 + rr_correction(basket_y) - rr_correction(basket_x)
}

/// Numerical data of an e1/e2 case.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CaseData {
    pub a_over_n: Rat,
    pub e3: Rat,
    pub basket_y: Basket,
    /// Smallest and largest possible depth of `Y`.
    pub dep_y: (i64, i64),
    /// The sufficient bound `aw <= r'-1` (e1) or `aw <= 2r'-1` (e2).
    pub aw_sufficient: i64,
}

/// Basket of a `cD/2` point of axial weight `aw`.
pub fn cd2_basket(aw: i64) -> Result<Basket, RrError> {
    if aw < 0 {
        return Err(RrError::InvalidParameter(format!(
            "axial weight {aw} is negative"
        )));
    }
    if aw == 0 {
        return Ok(Basket::empty());
    }
    Ok(Basket::single(1, 2, aw as u64)?)
}

fn checked_basket(b: i64, r: i64, n: u64) -> Result<Basket, RrError> {
    Basket::single(b, r, n).map_err(|_| {
        RrError::InvalidParameter(format!("({b}, {r}) is not a terminal basket entry"))
    })
}

pub fn case_data(case: &ContractionCase) -> Result<CaseData, RrError> {
    let need = |ok: bool, what: &str| {
        if ok {
            Ok(())
        } else {
            Err(RrError::InvalidParameter(what.to_string()))
        }
    };
    match *case {
        ContractionCase::E1A4 { rprime } => {
            need(rprime > 4, "e1 with a/n = 4/2 needs r' > 4")?;
            let r = 2 * rprime;
            // (4/2) E^3 = 4/r
            Ok(CaseData {
                a_over_n: int(2),
                e3: rat(2, r),
                basket_y: checked_basket(rprime - 4, r, 1)?,
                dep_y: cyclic_depth(r, rprime - 4)?,
                aw_sufficient: rprime - 1,
            })
        }
        ContractionCase::E1A2 { rprime } => {
            need(rprime > 2, "e1 with a/n = 2/2 needs r' > 2")?;
            let r = 2 * rprime;
            // (2/2) E^3 = 4/r
            Ok(CaseData {
                a_over_n: int(1),
                e3: rat(4, r),
                basket_y: checked_basket(rprime - 2, r, 1)?,
                dep_y: cyclic_depth(r, rprime - 2)?,
                aw_sufficient: rprime - 1,
            })
        }
        ContractionCase::E2 { rprime } => {
            need(rprime > 1, "e2 needs r' > 1")?;
            let r = 2 * rprime;
            // (2/2) E^3 = 2/r; Y has a cA/r point deforming to 2 x (r'-1, r)
            let basket_y = checked_basket(rprime - 1, r, 2)?;
            Ok(CaseData {
                a_over_n: int(1),
                e3: rat(2, r),
                basket_y,
                dep_y: ca_depth_range(r, rprime - 1, 2)?,
                aw_sufficient: 2 * rprime - 1,
            })
        }
        ContractionCase::E11 | ContractionCase::O3 => Err(RrError::InvalidParameter(
            "only e1 and e2 carry a Riemann-Roch bound".into(),
        )),
    }
}

fn cyclic_depth(r: i64, b: i64) -> Result<(i64, i64), RrError> {
    let q = CyclicQuotient::standard(r, b)?;
    let d = depth_bound(&TerminalClass::Cyclic(q))?;
    Ok((d.upper, d.upper))
}

/// Depth range of a `cA/r` point with basket `aw x (b, r)`: one germ for
/// each possible `t` in `1..=aw`.
fn ca_depth_range(r: i64, b: i64, aw: i64) -> Result<(i64, i64), RrError> {
    // (beta, -beta, 1) ~ (1, -1, b)  <=>  beta = b^-1
    let beta = mod_inverse(b, r)
        .ok_or_else(|| RrError::InvalidParameter(format!("{b} is not a unit mod {r}")))?;
    let depths = (1..=aw)
        .map(|t| {
            // nu_s = min(aw, s + aw - t), so nu_s reaches aw first at s = t
            let g = CARGerm::new(r, beta, [(0, aw), (1, aw - t)])?;
            debug_assert_eq!(g.tvalue(), t);
            depth_formula(&g)
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok((*depths.iter().min().unwrap(), *depths.iter().max().unwrap()))
}

/// Largest `aw` with `delta_chi >= 1` for the case's data and `X` a `cD/2`
/// point of axial weight `aw`. May be negative, meaning no `aw` is possible.
pub fn aw_upper_bound(case: &ContractionCase) -> Result<i64, RrError> {
    let data = case_data(case)?;
    // delta_chi(aw) = c - aw/4, so aw <= 4(c - 1)
    let c = delta_chi(&data.a_over_n, &data.e3, &data.basket_y, &Basket::empty());
    let bound = ((c - Rat::one()) * int(4)).floor();
    Ok(bound.to_integer().to_i64().expect("bound fits in i64"))
}

/// Outcome of comparing `dep(Y)` with the upper bound for `dep(X)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CaseDepthReport {
    pub dep_y_min: i64,
    pub dep_y_max: i64,
    pub dep_x_upper: i64,
    /// Largest `aw` allowed by `delta_chi >= 1`, for e1/e2.
    pub aw_bound: Option<i64>,
    /// `delta_chi` at the given `aw`, for e1/e2.
    #[serde(serialize_with = "crate::serialize_opt_rat")]
    pub delta: Option<Rat>,
    /// `dep(Y) >= dep(X) - 1` using the smallest possible `dep(Y)`.
    pub check: bool,
}

/// Depth comparison for a contraction case.
///
/// For e1/e2 `aw` must satisfy `1 <= aw <= r'-1` (e1) or `2r'-1` (e2); the
/// sharper Riemann-Roch bound is reported alongside.
pub fn case_depth_check(case: &ContractionCase, aw: i64) -> Result<CaseDepthReport, RrError> {
    if let ContractionCase::E11 = case {
        // Y carries 1/2(1,1,1) and 1/6(1,-1,-1).
        let mut dep_y = 0;
        for (r, w) in [(2, [1, 1, 1]), (6, [1, -1, -1])] {
            let q = CyclicQuotient::new(r, w)?;
            normalize_cyclic(&q)?;
            dep_y += depth_bound(&TerminalClass::Cyclic(q))?.upper;
        }
        let dep_x_upper = depth_bound(&TerminalClass::CE2)?.upper;
        return Ok(CaseDepthReport {
            dep_y_min: dep_y,
            dep_y_max: dep_y,
            dep_x_upper,
            aw_bound: None,
            delta: None,
            check: dep_y >= dep_x_upper - 1,
        });
    }
    let data = case_data(case)?;
    if aw < 1 || aw > data.aw_sufficient {
        return Err(RrError::InvalidParameter(format!(
            "axial weight {aw} outside 1..={}",
            data.aw_sufficient
        )));
    }
    let basket_x = cd2_basket(aw)?;
    let delta = delta_chi(&data.a_over_n, &data.e3, &data.basket_y, &basket_x);
    let dep_x_upper = depth_bound(&TerminalClass::CD2 { k: aw })?.upper;
    Ok(CaseDepthReport {
        dep_y_min: data.dep_y.0,
        dep_y_max: data.dep_y.1,
        dep_x_upper,
        aw_bound: Some(aw_upper_bound(case)?),
        delta: Some(delta),
        check: data.dep_y.0 >= dep_x_upper - 1,
    })
}

/// `true` iff `x >= 1`.
pub fn meets_threshold(x: &Rat) -> bool {
    !(x - Rat::one()).is_negative()
}
