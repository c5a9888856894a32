//! `cA/r` germs `xy + g(z^r, u) = 0` with weights `1/r(beta, -beta, 1, r)`.
//!
//! Only the monomial support of `g` is stored: `(i, j)` stands for
//! `z^{ri} u^j` with a nonzero coefficient. Everything here assumes generic
//! coefficients, so cancellation between terms is never considered.
//!
//! For `s >= 1` let `nu_s = min { s*i + j }` over the support, `lambda` the
//! smallest `j` with `(0, j)` in the support and `t` the least `s` with
//! `nu_s = lambda`. The depth of the germ is `lambda * r - t`.
//! [`depth_search`] recomputes the same number by enumerating every
//! w-resolution built from the admissible weighted blow-ups.

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::singular::{
    gcd, mod_inverse, modulo, normalize_cyclic, Basket, CyclicQuotient, SingularError,
    TerminalClass,
};

/// Largest index or exponent accepted in a germ; keeps every product in `i64`.
pub const MAX_GERM_ENTRY: i64 = 1 << 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CarError {
    #[error("invalid germ: {0}")]
    InvalidGerm(String),
    #[error("germ is Gorenstein (index 1); its depth is 0")]
    GorensteinInput,
    #[error("invalid split ({r1}, {r2}): {reason}")]
    InvalidSplit { r1: i64, r2: i64, reason: String },
    #[error("resolution search exceeded nesting limit {limit}")]
    SearchLimitExceeded { limit: i64 },
    #[error(transparent)]
    Singular(#[from] SingularError),
}

/// A `cA/r` germ described by its index, weight unit and monomial support.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawGerm", into = "RawGerm")]
pub struct CARGerm {
    r: i64,
    beta: i64,
    support: BTreeSet<(i64, i64)>,
}

#[derive(Serialize, Deserialize)]
struct RawGerm {
    r: i64,
    beta: i64,
    support: Vec<(i64, i64)>,
}

impl TryFrom<RawGerm> for CARGerm {
    type Error = CarError;
    fn try_from(raw: RawGerm) -> Result<Self, CarError> {
        CARGerm::new(raw.r, raw.beta, raw.support)
    }
}

impl From<CARGerm> for RawGerm {
    fn from(g: CARGerm) -> Self {
        RawGerm {
            r: g.r,
            beta: g.beta,
            support: g.support.into_iter().collect(),
        }
    }
}

impl CARGerm {
    pub fn new<I>(r: i64, beta: i64, support: I) -> Result<Self, CarError>
    where
        I: IntoIterator<Item = (i64, i64)>,
    {
        if !(1..=MAX_GERM_ENTRY).contains(&r) {
            return Err(CarError::InvalidGerm(format!("index {r} out of range")));
        }
        if gcd(beta, r) != 1 {
            return Err(CarError::InvalidGerm(format!(
                "beta {beta} is not a unit mod {r}"
            )));
        }
        let support: BTreeSet<_> = support.into_iter().collect();
        if support.is_empty() {
            return Err(CarError::InvalidGerm("empty support".into()));
        }
        for &(i, j) in &support {
            if !(0..=MAX_GERM_ENTRY).contains(&i) || !(0..=MAX_GERM_ENTRY).contains(&j) {
                return Err(CarError::InvalidGerm(format!(
                    "exponent ({i}, {j}) out of range"
                )));
            }
        }
        if support.contains(&(0, 0)) {
            return Err(CarError::InvalidGerm(
                "(0, 0) in support: germ is smooth".into(),
            ));
        }
        if !support.iter().any(|&(i, _)| i == 0) {
            return Err(CarError::InvalidGerm(
                "no pure power of u: axial weight is infinite".into(),
            ));
        }
        Ok(CARGerm {
            r,
            beta: modulo(beta, r),
            support,
        })
    }

    /// The cyclic point `xy + u = 0`, i.e. `1/r(beta, -beta, 1)`.
    pub fn cyclic(r: i64, beta: i64) -> Result<Self, CarError> {
        Self::new(r, beta, [(0, 1)])
    }

    /// The germ of a cyclic quotient point.
    pub fn from_cyclic(q: &CyclicQuotient) -> Result<Self, CarError> {
        if q.is_smooth() {
            return Self::cyclic(1, 0);
        }
        let (b, r) = normalize_cyclic(q)?;
        // (1, -1, b) ~ (b^-1, -b^-1, 1)
        let beta = mod_inverse(b, r).expect("b is a unit");
        Self::cyclic(r, beta)
    }

    pub fn index(&self) -> i64 {
        self.r
    }

    pub fn beta(&self) -> i64 {
        self.beta
    }

    pub fn support(&self) -> &BTreeSet<(i64, i64)> {
        &self.support
    }

    /// Axial weight: least `j` with `(0, j)` in the support.
    pub fn lambda(&self) -> i64 {
        self.support
            .iter()
            .filter(|&&(i, _)| i == 0)
            .map(|&(_, j)| j)
            .min()
            .expect("germ invariant: axial monomial present")
    }

    pub fn nu(&self, s: i64) -> i64 {
        self.support
            .iter()
            .map(|&(i, j)| s * i + j)
            .min()
            .expect("nonempty support")
    }

    pub fn tvalue(&self) -> i64 {
        let lambda = self.lambda();
        (1..=lambda)
            .find(|&s| self.nu(s) == lambda)
            .expect("nu_lambda == lambda")
    }

    pub fn is_gorenstein(&self) -> bool {
        self.r == 1
    }

    /// `Xi = lambda * r` (0 when Gorenstein).
    pub fn xi(&self) -> i64 {
        if self.is_gorenstein() {
            0
        } else {
            self.lambda() * self.r
        }
    }

    /// `aw x (b, r)` where `(b, r)` is the normal form of `1/r(beta, -beta, 1)`.
    pub fn basket(&self) -> Result<Basket, SingularError> {
        if self.is_gorenstein() {
            return Ok(Basket::empty());
        }
        let q = CyclicQuotient::new(self.r, [self.beta, -self.beta, 1])?;
        let (b, r) = normalize_cyclic(&q)?;
        Basket::single(b, r, self.lambda() as u64)
    }

    fn memo_key(&self) -> (i64, i64, Vec<(i64, i64)>) {
        let beta = if self.r == 1 {
            0
        } else {
            self.beta.min(self.r - self.beta)
        };
        (self.r, beta, self.support.iter().copied().collect())
    }
}

pub fn lambda(g: &CARGerm) -> i64 {
    g.lambda()
}

pub fn nu(g: &CARGerm, s: i64) -> i64 {
    g.nu(s)
}

pub fn tvalue(g: &CARGerm) -> i64 {
    g.tvalue()
}

/// `lambda * r - t`.
pub fn depth_formula(g: &CARGerm) -> Result<i64, CarError> {
    if g.is_gorenstein() {
        return Err(CarError::GorensteinInput);
    }
    Ok(g.lambda() * g.r - g.tvalue())
}

/// Output of one weighted blow-up `1/r(r1, r2, 1, r)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlowupResult {
    /// Points of index `r1` and `r2`, each of type `1/ri(r, -r, -1)`.
    /// Index 1 means the point is smooth.
    pub cyclic_points: Vec<CyclicQuotient>,
    /// The `cA/r` point on the exceptional divisor, present iff `nu_1 < lambda`.
    pub residual: Option<CARGerm>,
}

/// All `(r1, r2)` with `r1 + r2 = r * nu_1`, `r1 = beta mod r`, `r1, r2 >= 1`.
pub fn admissible_splits(g: &CARGerm) -> Vec<(i64, i64)> {
    if g.is_gorenstein() {
        return Vec::new();
    }
    let total = g.r * g.nu(1);
    (0..)
        .map(|m| g.beta + m * g.r)
        .take_while(|&r1| r1 < total)
        .map(|r1| (r1, total - r1))
        .collect()
}

pub fn blowup_step(g: &CARGerm, r1: i64, r2: i64) -> Result<BlowupResult, CarError> {
    if g.is_gorenstein() {
        return Err(CarError::GorensteinInput);
    }
    let bad = |reason: String| CarError::InvalidSplit { r1, r2, reason };
    let nu1 = g.nu(1);
    if r1 < 1 || r2 < 1 {
        return Err(bad("weights must be positive".into()));
    }
    if r1 + r2 != g.r * nu1 {
        return Err(bad(format!("r1 + r2 must equal r * nu_1 = {}", g.r * nu1)));
    }
    if modulo(r1, g.r) != g.beta || modulo(r2, g.r) != modulo(-g.beta, g.r) {
        return Err(bad(format!(
            "need r1 = {0}, r2 = -{0} mod {1}",
            g.beta, g.r
        )));
    }
    let cyclic_points = [r1, r2]
        .into_iter()
        .map(|ri| CyclicQuotient::new(ri, [g.r, -g.r, -1]))
        .collect::<Result<Vec<_>, _>>()?;
    let residual = if nu1 < g.lambda() {
        let support = g.support.iter().map(|&(i, j)| (i, i + j - nu1));
        Some(CARGerm::new(g.r, g.beta, support)?)
    } else {
        None
    };
    Ok(BlowupResult {
        cyclic_points,
        residual,
    })
}

/// A minimal w-resolution found by [`depth_search_tree`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ResolutionTree {
    pub germ: CARGerm,
    pub depth: i64,
    pub step: Option<ResolutionStep>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ResolutionStep {
    pub r1: i64,
    pub r2: i64,
    /// Singular points after the blow-up, all written as `cA` germs.
    pub children: Vec<ResolutionTree>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchConfig {
    /// Maximum nesting of blow-ups; `None` means `lambda * r` of the root.
    pub limit: Option<i64>,
}

type MemoKey = (i64, i64, Vec<(i64, i64)>);

struct Search {
    limit: i64,
    memo: HashMap<MemoKey, i64>,
}

fn singular_children(g: &CARGerm, r1: i64, r2: i64) -> Result<Vec<CARGerm>, CarError> {
    let out = blowup_step(g, r1, r2)?;
    let mut children = Vec::new();
    for q in &out.cyclic_points {
        if !q.is_smooth() {
            children.push(CARGerm::from_cyclic(q)?);
        }
    }
    children.extend(out.residual);
    Ok(children)
}

impl Search {
    fn new(root: &CARGerm, config: &SearchConfig) -> Self {
        let limit = config.limit.unwrap_or_else(|| root.xi().max(1));
        Search {
            limit,
            memo: HashMap::new(),
        }
    }

    fn depth(&mut self, g: &CARGerm, level: i64) -> Result<i64, CarError> {
        if g.is_gorenstein() {
            return Ok(0);
        }
        let key = g.memo_key();
        if let Some(&d) = self.memo.get(&key) {
            return Ok(d);
        }
        if level >= self.limit {
            return Err(CarError::SearchLimitExceeded { limit: self.limit });
        }
        let mut best: Option<i64> = None;
        for (r1, r2) in admissible_splits(g) {
            let mut total = 1;
            for child in singular_children(g, r1, r2)? {
                total += self.depth(&child, level + 1)?;
            }
            best = Some(best.map_or(total, |b| b.min(total)));
        }
        let d = best.expect("index > 1 germ has an admissible split");
        self.memo.insert(key, d);
        Ok(d)
    }

    fn tree(&mut self, g: &CARGerm) -> Result<ResolutionTree, CarError> {
        let depth = self.depth(g, 0)?;
        if depth == 0 {
            return Ok(ResolutionTree {
                germ: g.clone(),
                depth,
                step: None,
            });
        }
        for (r1, r2) in admissible_splits(g) {
            let children = singular_children(g, r1, r2)?;
            let mut total = 1;
            for child in &children {
                total += self.depth(child, 0)?;
            }
            if total == depth {
                let children = children
                    .iter()
                    .map(|c| self.tree(c))
                    .collect::<Result<Vec<_>, _>>()?;
                return Ok(ResolutionTree {
                    germ: g.clone(),
                    depth,
                    step: Some(ResolutionStep { r1, r2, children }),
                });
            }
        }
        unreachable!("a split attaining the minimum exists")
    }
}

/// Minimum number of w-morphisms over all w-resolutions, by exhaustive search.
pub fn depth_search(g: &CARGerm) -> Result<i64, CarError> {
    depth_search_with(g, &SearchConfig::default())
}

pub fn depth_search_with(g: &CARGerm, config: &SearchConfig) -> Result<i64, CarError> {
    Search::new(g, config).depth(g, 0)
}

/// Like [`depth_search_with`] but also returns one minimal resolution.
pub fn depth_search_tree(g: &CARGerm, config: &SearchConfig) -> Result<ResolutionTree, CarError> {
    let mut search = Search::new(g, config);
    search.depth(g, 0)?;
    search.tree(g)
}

/// Depth of the germ after first blowing up with the split `(r1, r2)`.
pub fn depth_after_split(g: &CARGerm, r1: i64, r2: i64) -> Result<i64, CarError> {
    let mut total = 1;
    for child in singular_children(g, r1, r2)? {
        total += depth_search(&child)?;
    }
    Ok(total)
}

/// What is known about the depth of a point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DepthBound {
    pub lower: Option<i64>,
    pub upper: i64,
    pub exact: bool,
}

impl DepthBound {
    pub fn exact(d: i64) -> Self {
        DepthBound {
            lower: Some(d),
            upper: d,
            exact: true,
        }
    }

    pub fn upper(u: i64) -> Self {
        DepthBound {
            lower: None,
            upper: u,
            exact: false,
        }
    }
}

/// Exact depth for cyclic and `cA/r` points, otherwise the general elephant
/// bound (`Xi - 1` for `cAx/4`, `Xi` for `cD/2` and `cD/3`, `Xi + 1` for
/// `cE/2`).
pub fn depth_bound(cls: &TerminalClass) -> Result<DepthBound, CarError> {
    cls.validate()?;
    Ok(match cls {
        TerminalClass::Gorenstein => DepthBound::exact(0),
        TerminalClass::Cyclic(q) => DepthBound::exact(q.depth()),
        TerminalClass::CA(g) if g.is_gorenstein() => DepthBound::exact(0),
        TerminalClass::CA(g) => DepthBound::exact(depth_formula(g)?),
        other => DepthBound::upper(other.elephant_rank()),
    })
}
