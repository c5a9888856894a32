//! Depth of terminal 3-fold singularities.
//!
//! The depth of a terminal germ is the least length of a chain of
//! w-morphisms ending in a Gorenstein 3-fold. This crate computes it for
//! cyclic quotient and `cA/r` points, bounds it for the other terminal
//! classes, and provides the exact bookkeeping around it: baskets,
//! singular Riemann-Roch corrections, extremal neighborhood intersection
//! numbers, the `cD/2` blow-up chains and a validator for factorization
//! traces.
//!
//! All arithmetic is exact.

pub mod car;
pub mod kawakita;
pub mod ledger;
pub mod neighborhood;
pub mod riemannroch;
pub mod singular;
pub mod verify;

pub use singular::Rat;

use serde::Serializer;

/// `p/q` in lowest terms, or `p` for integers.
pub fn rat_to_string(x: &Rat) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub(crate) fn serialize_rat<S: Serializer>(x: &Rat, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&rat_to_string(x))
}

pub(crate) fn serialize_opt_rat<S: Serializer>(x: &Option<Rat>, s: S) -> Result<S::Ok, S::Error> {
    match x {
        Some(x) => serialize_rat(x, s),
        None => s.serialize_none(),
    }
}

pub(crate) fn serialize_opt_rat_pair<S: Serializer>(
    x: &Option<(Rat, Rat)>,
    s: S,
) -> Result<S::Ok, S::Error> {
    match x {
        Some((a, b)) => s.collect_seq([rat_to_string(a), rat_to_string(b)]),
        None => s.serialize_none(),
    }
}
