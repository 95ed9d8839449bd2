use num_bigint::BigInt;
use thiserror::Error;

use crate::partition::Phrasing;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("constant term {0} is not a unit in the integers")]
    NotAUnit(BigInt),

    #[error("Pochhammer factor must have a positive q-exponent, got {0}")]
    NonPositiveExponent(i64),

    #[error("term a^{a_exp} q^{q_exp} lands at negative exponent {target} under a -> q^{e}")]
    NegativeExponent {
        a_exp: usize,
        q_exp: usize,
        e: i64,
        target: i64,
    },

    #[error("requested order {requested} exceeds available order {available}")]
    OrderTooLarge { requested: usize, available: usize },

    #[error("k must be at least 2, got {0}")]
    InvalidK(usize),

    #[error("i must lie in 0..={max} for k = {k}, got {i}", max = k - 1)]
    InvalidI { i: usize, k: usize },

    #[error("phrasing {phrasing} is only defined for i = {required}, got i = {i} (k = {k})")]
    PhrasingMismatch {
        phrasing: Phrasing,
        required: usize,
        i: usize,
        k: usize,
    },

    #[error("coefficient of a^{a_degree} q^{q_degree} has not stabilized by j = {j_max}")]
    NotStabilized {
        a_degree: usize,
        q_degree: usize,
        j_max: usize,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn check_k(k: usize) -> Result<()> {
    if k < 2 {
        return Err(Error::InvalidK(k));
    }
    Ok(())
}

pub(crate) fn check_ki(k: usize, i: usize) -> Result<()> {
    check_k(k)?;
    if i >= k {
        return Err(Error::InvalidI { i, k });
    }
    Ok(())
}
