//! Exact arithmetic helpers, terminal singularity classes and their baskets.
//!
//! A basket is the multiset of cyclic quotient points `1/r(1,-1,b)` with
//! `0 < b <= r/2` that a terminal point deforms to. The invariants `aw`,
//! `sigma` and `xi` are the number of points, the sum of the `b` values and
//! the sum of the indices.
//!
//! Note on `cE/2`: the usual table lists `sigma = 2` for this class, while its
//! basket `3 x (1,2)` sums to 3. [`Basket::sigma`] always computes the sum, so
//! `cE/2` reports 3.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::car::CARGerm;

/// Exact rational number; always reduced with a positive denominator.
pub type Rat = BigRational;

/// `n/d` as an exact rational. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Non-negative gcd; `gcd(0, 0) == 0`.
pub fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a as i64
}

/// Representative of `a` in `0..m`.
pub fn modulo(a: i64, m: i64) -> i64 {
    a.rem_euclid(m)
}

/// Inverse of `a` modulo `m` in `0..m`, if it exists.
pub fn mod_inverse(a: i64, m: i64) -> Option<i64> {
    if m == 1 {
        return Some(0);
    }
    let (mut old_r, mut r) = (modulo(a, m), m);
    let (mut old_s, mut s) = (1i64, 0i64);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    (old_r == 1).then(|| modulo(old_s, m))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SingularError {
    #[error("weights {weights:?} mod {r} are not equivalent to (1, -1, b) with gcd(b, r) = 1")]
    NotTerminalForm { r: i64, weights: [i64; 3] },
    #[error("index must be at least {min}, got {r}")]
    InvalidIndex { r: i64, min: i64 },
    #[error("invalid basket entry {n} x ({b}, {r}): need 0 < b <= r/2, gcd(b, r) = 1, n >= 1")]
    InvalidBasketEntry { b: i64, r: i64, n: u64 },
    #[error("parameter k must be at least 1, got {0}")]
    InvalidParameter(i64),
}

/// A cyclic quotient point `1/r(w0, w1, w2)`.
///
/// The first two coordinates are the axial pair, the third is the axis. For
/// `r >= 2` construction checks that the weights are equivalent to
/// `(1, -1, b)` with `b` a unit. Index 1 is accepted and denotes a smooth
/// point; such points appear as the outputs of weighted blow-ups.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawCyclic", into = "RawCyclic")]
pub struct CyclicQuotient {
    r: i64,
    weights: [i64; 3],
}

#[derive(Serialize, Deserialize)]
struct RawCyclic {
    r: i64,
    weights: [i64; 3],
}

impl TryFrom<RawCyclic> for CyclicQuotient {
    type Error = SingularError;
    fn try_from(raw: RawCyclic) -> Result<Self, Self::Error> {
        CyclicQuotient::new(raw.r, raw.weights)
    }
}

impl From<CyclicQuotient> for RawCyclic {
    fn from(q: CyclicQuotient) -> Self {
        RawCyclic {
            r: q.r,
            weights: q.weights,
        }
    }
}

impl CyclicQuotient {
    pub fn new(r: i64, weights: [i64; 3]) -> Result<Self, SingularError> {
        if r < 1 {
            return Err(SingularError::InvalidIndex { r, min: 1 });
        }
        let q = CyclicQuotient {
            r,
            weights: weights.map(|w| modulo(w, r)),
        };
        if r >= 2 {
            find_normal_form(&q).ok_or(SingularError::NotTerminalForm { r, weights })?;
        }
        Ok(q)
    }

    /// The point `1/r(1, -1, b)`.
    pub fn standard(r: i64, b: i64) -> Result<Self, SingularError> {
        Self::new(r, [1, -1, b])
    }

    pub fn index(&self) -> i64 {
        self.r
    }

    pub fn weights(&self) -> [i64; 3] {
        self.weights
    }

    pub fn is_smooth(&self) -> bool {
        self.r == 1
    }

    /// Depth of a cyclic point: `r - 1`.
    pub fn depth(&self) -> i64 {
        self.r - 1
    }
}

impl fmt::Display for CyclicQuotient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.weights;
        write!(f, "1/{}({}, {}, {})", self.r, a, b, c)
    }
}

fn find_normal_form(q: &CyclicQuotient) -> Option<i64> {
    let r = q.r;
    let [w0, w1, w2] = q.weights;
    (1..r).filter(|&l| gcd(l, r) == 1).find_map(|l| {
        let (x, y, z) = (modulo(l * w0, r), modulo(l * w1, r), modulo(l * w2, r));
        let axial = (x == 1 && y == r - 1) || (y == 1 && x == r - 1);
        (axial && z != 0 && gcd(z, r) == 1).then_some(z)
    })
}

/// Reduces a cyclic quotient of index `r >= 2` to its basket key `(b, r)`
/// with `0 < b <= r/2`.
pub fn normalize_cyclic(q: &CyclicQuotient) -> Result<(i64, i64), SingularError> {
    if q.r < 2 {
        return Err(SingularError::InvalidIndex { r: q.r, min: 2 });
    }
    let b = find_normal_form(q).ok_or(SingularError::NotTerminalForm {
        r: q.r,
        weights: q.weights,
    })?;
    Ok((b.min(q.r - b), q.r))
}

/// `n x (b, r)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BasketEntry {
    pub b: i64,
    pub r: i64,
    pub n: u64,
}

impl BasketEntry {
    pub fn new(b: i64, r: i64, n: u64) -> Result<Self, SingularError> {
        if r < 2 || b <= 0 || 2 * b > r || gcd(b, r) != 1 || n == 0 {
            return Err(SingularError::InvalidBasketEntry { b, r, n });
        }
        Ok(BasketEntry { b, r, n })
    }
}

/// A basket of cyclic quotient points.
///
/// Entries are kept in decreasing `(r, b)` order with no repeated keys.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Basket {
    entries: Vec<BasketEntry>,
}

impl Basket {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Builds a basket from `(b, r, n)` triples, merging repeated keys.
    pub fn new<I>(items: I) -> Result<Self, SingularError>
    where
        I: IntoIterator<Item = (i64, i64, u64)>,
    {
        let mut map: BTreeMap<(i64, i64), u64> = BTreeMap::new();
        for (b, r, n) in items {
            let e = BasketEntry::new(b, r, n)?;
            *map.entry((e.r, e.b)).or_default() += e.n;
        }
        let entries = map
            .into_iter()
            .rev()
            .map(|((r, b), n)| BasketEntry { b, r, n })
            .collect();
        Ok(Basket { entries })
    }

    /// `n x (b, r)` as a basket.
    pub fn single(b: i64, r: i64, n: u64) -> Result<Self, SingularError> {
        Self::new([(b, r, n)])
    }

    pub fn entries(&self) -> &[BasketEntry] {
        &self.entries
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn union(&self, other: &Basket) -> Basket {
        let items = self
            .entries
            .iter()
            .chain(&other.entries)
            .map(|e| (e.b, e.r, e.n));
        // Both sides are already valid.
        Basket::new(items).expect("union of valid baskets")
    }

    /// Axial weight: the number of points.
    pub fn aw(&self) -> u64 {
        self.entries.iter().map(|e| e.n).sum()
    }

    pub fn sigma(&self) -> i64 {
        self.entries.iter().map(|e| e.n as i64 * e.b).sum()
    }

    pub fn xi(&self) -> i64 {
        self.entries.iter().map(|e| e.n as i64 * e.r).sum()
    }
}

/// Terminal 3-fold singularity classes.
///
/// `k` is the class parameter from the table: the axial weight for `cAx/4`
/// and `cD/2`, and the general elephant parameter `D_{k+2}` for `cAx/2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "class")]
pub enum TerminalClass {
    #[serde(rename = "gorenstein")]
    Gorenstein,
    #[serde(rename = "cyclic")]
    Cyclic(CyclicQuotient),
    #[serde(rename = "cA")]
    CA(CARGerm),
    #[serde(rename = "cAx2")]
    CAx2 { k: i64 },
    #[serde(rename = "cAx4")]
    CAx4 { k: i64 },
    #[serde(rename = "cD2")]
    CD2 { k: i64 },
    #[serde(rename = "cD3")]
    CD3,
    #[serde(rename = "cE2")]
    CE2,
}

impl TerminalClass {
    pub fn validate(&self) -> Result<(), SingularError> {
        match *self {
            TerminalClass::CAx2 { k } | TerminalClass::CAx4 { k } | TerminalClass::CD2 { k }
                if k < 1 =>
            {
                Err(SingularError::InvalidParameter(k))
            }
            _ => Ok(()),
        }
    }

    /// Rank of the Du Val general elephant: `A_{kr-1}`, `D_{k+2}`, `D_{2k+1}`,
    /// `D_{2k}`, `E_6`, `E_7`. A w-resolution has at most this many steps.
    pub fn elephant_rank(&self) -> i64 {
        match self {
            TerminalClass::Gorenstein => 0,
            TerminalClass::Cyclic(q) => q.index() - 1,
            TerminalClass::CA(g) if g.index() == 1 => 0,
            TerminalClass::CA(g) => g.lambda() * g.index() - 1,
            TerminalClass::CAx2 { k } => k + 2,
            TerminalClass::CAx4 { k } => 2 * k + 1,
            TerminalClass::CD2 { k } => 2 * k,
            TerminalClass::CD3 => 6,
            TerminalClass::CE2 => 7,
        }
    }
}

/// The basket of a terminal class.
pub fn basket_of(cls: &TerminalClass) -> Result<Basket, SingularError> {
    cls.validate()?;
    match cls {
        TerminalClass::Gorenstein => Ok(Basket::empty()),
        TerminalClass::Cyclic(q) if q.is_smooth() => Ok(Basket::empty()),
        TerminalClass::Cyclic(q) => {
            let (b, r) = normalize_cyclic(q)?;
            Basket::single(b, r, 1)
        }
        TerminalClass::CA(g) => g.basket(),
        TerminalClass::CAx2 { .. } => Basket::single(1, 2, 2),
        TerminalClass::CAx4 { k } => {
            let k = *k as u64;
            if k == 1 {
                Basket::single(1, 4, 1)
            } else {
                Basket::new([(1, 4, 1), (1, 2, k - 1)])
            }
        }
        TerminalClass::CD2 { k } => Basket::single(1, 2, *k as u64),
        TerminalClass::CD3 => Basket::single(1, 3, 2),
        TerminalClass::CE2 => Basket::single(1, 2, 3),
    }
}
