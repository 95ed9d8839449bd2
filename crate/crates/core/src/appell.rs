//! The recursion for `R_j(a, q)`, the coefficientwise functional equation of
//! `F(a, x, q) = sum_j R_j(a, q) x^j`, its closed product form, and the
//! formal `x -> 1` limit of `(1 - x) F`.
//!
//! `F` is never stored as a three-variable object. It lives as the indexed
//! family of its `x`-coefficients in [`RSequence`].

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{check_k, check_ki, Error, Result};
use crate::partition::is_b_part;
use crate::series::{overpartition_product, BivariateSeries, QSeries};

/// Which pair of initial conditions seeds the recursion.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InitialConditions {
    /// `R_j = 1/(q;q)_j` for `0 <= j < k`, recursion from `j = k`.
    Bounded,
    /// `R_0 = 1`, `R_j = 0` for `-k < j < 0`, recursion from `j = 1`.
    Extended,
}

/// `R_0, ..., R_{j_max}` for a fixed `k`, truncated at `(q_order, a_order)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RSequence {
    k: usize,
    q_order: usize,
    a_order: usize,
    terms: Vec<BivariateSeries>,
    zero: BivariateSeries,
}

impl RSequence {
    /// Runs the recursion from the extended initial conditions.
    pub fn build(k: usize, j_max: usize, q_order: usize, a_order: usize) -> Result<Self> {
        Self::build_from(InitialConditions::Extended, k, j_max, q_order, a_order)
    }

    pub fn build_from(
        init: InitialConditions,
        k: usize,
        j_max: usize,
        q_order: usize,
        a_order: usize,
    ) -> Result<Self> {
        check_k(k)?;
        let mut rs = Self {
            k,
            q_order,
            a_order,
            terms: Vec::with_capacity(j_max + 1),
            zero: BivariateSeries::zero(q_order, a_order),
        };
        for j in 0..=j_max {
            let term = match init {
                InitialConditions::Bounded if j < k => {
                    QSeries::q_pochhammer(j, q_order).invert_unit()?.to_bivariate(a_order)
                }
                InitialConditions::Extended if j == 0 => BivariateSeries::one(q_order, a_order),
                _ => rs.recurrence_step(j),
            };
            rs.terms.push(term);
        }
        Ok(rs)
    }

    /// `R_j = (R_{j-1} + a q^(j-k+1) R_{j-k}) / (1 - q^j)`.
    fn recurrence_step(&self, j: usize) -> BivariateSeries {
        let mut rhs = self.get(j as i64 - 1).clone();
        if j >= self.k {
            rhs = &rhs + &self.get((j - self.k) as i64).shift(1, j + 1 - self.k);
        }
        rhs.mul_q(&QSeries::geometric(j, self.q_order))
    }

    /// Constructs a sequence from explicit terms, for checking arbitrary
    /// candidate families against the functional equation or the limit.
    pub fn from_terms(k: usize, terms: Vec<BivariateSeries>) -> Result<Self> {
        check_k(k)?;
        assert!(!terms.is_empty(), "need at least R_0");
        let q_order = terms.iter().map(BivariateSeries::q_order).min().unwrap();
        let a_order = terms.iter().map(BivariateSeries::a_order).min().unwrap();
        let terms = terms
            .into_iter()
            .map(|t| t.truncate(q_order, a_order))
            .collect::<Result<_>>()?;
        Ok(Self {
            k,
            q_order,
            a_order,
            terms,
            zero: BivariateSeries::zero(q_order, a_order),
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn j_max(&self) -> usize {
        self.terms.len() - 1
    }

    pub fn q_order(&self) -> usize {
        self.q_order
    }

    pub fn a_order(&self) -> usize {
        self.a_order
    }

    pub fn terms(&self) -> &[BivariateSeries] {
        &self.terms
    }

    /// `R_j`, with `R_j = 0` for negative `j`.
    ///
    /// # Panics
    ///
    /// Panics if `j > j_max`.
    pub fn get(&self, j: i64) -> &BivariateSeries {
        if j < 0 {
            &self.zero
        } else {
            &self.terms[j as usize]
        }
    }

    pub fn term_mut(&mut self, j: usize) -> &mut BivariateSeries {
        &mut self.terms[j]
    }

    /// Compares `R_j` for `0 <= j < k` against `1/(q;q)_j`, returning the
    /// first mismatch as `(j, a_degree, q_degree)`.
    pub fn check_initial_conditions(&self) -> std::result::Result<(), Mismatch> {
        for j in 0..self.k.min(self.terms.len()) {
            let expected = QSeries::q_pochhammer(j, self.q_order)
                .invert_unit()
                .expect("(q;q)_j has constant term 1")
                .to_bivariate(self.a_order);
            if let Some((m, n)) = self.terms[j].first_difference(&expected) {
                return Err(Mismatch::new(j, m, n, &self.terms[j], &expected));
            }
        }
        Ok(())
    }
}

/// A coefficient where two series that should agree do not.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub j: usize,
    pub a_degree: usize,
    pub q_degree: usize,
    pub lhs: BigInt,
    pub rhs: BigInt,
}

impl Mismatch {
    fn new(j: usize, m: usize, n: usize, lhs: &BivariateSeries, rhs: &BivariateSeries) -> Self {
        Self {
            j,
            a_degree: m,
            q_degree: n,
            lhs: lhs.coeff(m, n).clone(),
            rhs: rhs.coeff(m, n).clone(),
        }
    }
}

/// Checks, for every `1 <= j <= j_max`, the `x^j`-coefficient of
/// `(1 - x) F(a, x, q) = (1 + a x^k q) F(a, xq, q)`:
///
/// `R_j - R_{j-1} = q^j R_j + a q^(j-k+1) R_{j-k}`.
pub fn check_functional_equation(rs: &RSequence) -> std::result::Result<(), Mismatch> {
    let k = rs.k();
    for j in 1..=rs.j_max() {
        let lhs = rs.get(j as i64) - rs.get(j as i64 - 1);
        let mut rhs = rs.get(j as i64).shift(0, j);
        if j >= k {
            rhs = &rhs + &rs.get((j - k) as i64).shift(1, j + 1 - k);
        }
        if let Some((m, n)) = lhs.first_difference(&rhs) {
            return Err(Mismatch::new(j, m, n, &lhs, &rhs));
        }
    }
    Ok(())
}

/// Every `x`-coefficient up to `x^j_max` of
/// `prod_{t >= 0} (1 + a x^k q^(tk+1)) / (1 - x q^t)`.
pub fn closed_product_coefficients(
    k: usize,
    j_max: usize,
    q_order: usize,
    a_order: usize,
) -> Result<Vec<BivariateSeries>> {
    check_k(k)?;
    let mut coeffs = vec![BivariateSeries::zero(q_order, a_order); j_max + 1];
    coeffs[0] = BivariateSeries::one(q_order, a_order);
    // 1/(1 - x q^t) = sum_d x^d q^(t d); for t > q_order only d = 0 survives
    for t in 0..=q_order {
        for d in 1..=j_max {
            let carried = coeffs[d - 1].shift(0, t);
            coeffs[d] = &coeffs[d] + &carried;
        }
    }
    let mut e = 1;
    while e <= q_order {
        for d in (k..=j_max).rev() {
            let carried = coeffs[d - k].shift(1, e);
            coeffs[d] = &coeffs[d] + &carried;
        }
        e += k;
    }
    Ok(coeffs)
}

/// The `x^j` coefficient of the closed product for `F(a, x, q)`.
pub fn closed_product_f_coefficient(
    k: usize,
    j: usize,
    q_order: usize,
    a_order: usize,
) -> Result<BivariateSeries> {
    Ok(closed_product_coefficients(k, j, q_order, a_order)?.swap_remove(j))
}

/// Coefficientwise limit of a sequence of series, with the index at which
/// each `q`-degree settled.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalLimit {
    pub limit: BivariateSeries,
    /// `stabilization_index[d]` is the least `j` from which every coefficient
    /// of `q^d` stays constant through the end of the sequence.
    pub stabilization_index: Vec<usize>,
}

/// Formal limit of `terms`, given for each `(a_degree, q_degree)` the index
/// beyond which that coefficient can no longer change.
///
/// Coefficients whose frozen index lies past the end of the sequence are
/// reported as not stabilized. Within the certified window the actual
/// settling index is detected from the data.
pub fn formal_limit(
    terms: &[BivariateSeries],
    frozen_after: impl Fn(usize, usize) -> usize,
) -> Result<FormalLimit> {
    assert!(!terms.is_empty(), "empty sequence has no limit");
    let last = terms.len() - 1;
    let q_order = terms.iter().map(BivariateSeries::q_order).min().unwrap();
    let a_order = terms.iter().map(BivariateSeries::a_order).min().unwrap();
    let limit = terms[last].truncate(q_order, a_order)?;
    let mut stabilization_index = vec![0; q_order + 1];
    for d in 0..=q_order {
        for m in 0..=a_order {
            if frozen_after(m, d) > last {
                return Err(Error::NotStabilized {
                    a_degree: m,
                    q_degree: d,
                    j_max: last,
                });
            }
            let target = limit.coeff(m, d);
            let mut settle = last;
            while settle > 0 && terms[settle - 1].coeff(m, d) == target {
                settle -= 1;
            }
            stabilization_index[d] = stabilization_index[d].max(settle);
        }
    }
    Ok(FormalLimit {
        limit,
        stabilization_index,
    })
}

/// `lim_{x -> 1} (1 - x) F(a, x, q)` evaluated as the coefficientwise limit
/// of `R_j`.
///
/// `R_j - R_{j-1} = q^j R_j + a q^(j-k+1) R_{j-k}`, so past `j = d` the
/// `a^0 q^d` coefficient is final and past `j = d + k - 1` every coefficient
/// of `q^d` is. Sequences too short to reach that point for every stored
/// coefficient are rejected with [`Error::NotStabilized`].
pub fn appell_limit(rs: &RSequence) -> Result<FormalLimit> {
    let k = rs.k();
    formal_limit(rs.terms(), |m, d| if m == 0 { d } else { d + k - 1 })
}

/// `prod_{p allowed} 1/(1 - q^p)` over the B-side parts `p <= q_order`; the
/// coefficient of `q^n` is `B_{i,k}(n)`.
pub fn congruence_product_series(k: usize, i: usize, q_order: usize) -> Result<QSeries> {
    check_ki(k, i)?;
    let mut s = QSeries::one(q_order);
    for p in (1..=q_order).filter(|&p| is_b_part(p, k, i)) {
        s = &s * &QSeries::geometric(p, q_order);
    }
    Ok(s)
}

/// The same series obtained from the marked generating function by
/// `(a, q) -> (q^(2i-1), q^2)`.
pub fn specialized_product_series(k: usize, i: usize, q_order: usize) -> Result<QSeries> {
    check_ki(k, i)?;
    // after q -> q^2 every a^m carries at least q^(2m), so with a -> q^(2i-1)
    // a landing degree n <= q_order needs stored degree at most 2 q_order
    // and m <= q_order
    let product = overpartition_product(k, q_order, q_order)?;
    product
        .substitute_q_power(2)
        .specialize_a(2 * i as i64 - 1, q_order)
}

/// `P_j` assembled by the position `t` of the largest overlined part:
///
/// `P_j = 1/(q;q)_j + sum_{t=1}^{j} a q^t R_{t-1} prod_{v=t+k-1}^{j} 1/(1-q^v)`.
///
/// Above `t̄` only plain parts `>= t+k-1` may appear; below it sits any
/// overpartition counted by `R_{t-1}`.
pub fn p_series(rs: &RSequence, j: usize) -> BivariateSeries {
    direct_sum(rs, j, 1..=j)
}

/// `R_j` assembled the same way, keeping only `t <= j - k + 1`.
pub fn r_series_direct(rs: &RSequence, j: usize) -> BivariateSeries {
    let top = (j + 1).saturating_sub(rs.k());
    direct_sum(rs, j, 1..=top)
}

fn direct_sum(rs: &RSequence, j: usize, positions: std::ops::RangeInclusive<usize>) -> BivariateSeries {
    let (q_order, a_order, k) = (rs.q_order(), rs.a_order(), rs.k());
    let plain_above = |lo: usize| {
        let mut s = QSeries::one(q_order);
        for v in lo..=j {
            s = &s * &QSeries::geometric(v, q_order);
        }
        s
    };
    let mut total = plain_above(1).to_bivariate(a_order);
    for t in positions {
        let below = rs.get(t as i64 - 1).shift(1, t);
        total = &total + &below.mul_q(&plain_above(t + k - 1));
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::overpartition::{dk_table, pj_table, rj_table};
    use num_bigint::BigInt;
    use num_traits::One;

    #[test]
    fn initial_terms() {
        let rs = RSequence::build(2, 1, 10, 3).unwrap();
        assert_eq!(rs.get(0), &BivariateSeries::one(10, 3));
        assert_eq!(rs.get(1), &QSeries::geometric(1, 10).to_bivariate(3));
        assert!(rs.get(-1).is_zero());
        assert!(rs.check_initial_conditions().is_ok());
    }

    #[test]
    fn both_initial_condition_forms_agree() {
        for k in 2..=6 {
            let a = RSequence::build_from(InitialConditions::Extended, k, 12, 20, 6).unwrap();
            let b = RSequence::build_from(InitialConditions::Bounded, k, 12, 20, 6).unwrap();
            assert_eq!(a, b, "k = {k}");
            assert!(a.check_initial_conditions().is_ok());
        }
    }

    #[test]
    fn r6_matches_enumeration() {
        let rs = RSequence::build(2, 6, 20, 4).unwrap();
        let table = rj_table(20, 4, 6, 2).unwrap();
        for n in 0..=20 {
            for m in 0..=4 {
                assert_eq!(*rs.get(6).coeff(m, n), BigInt::from(table[n][m]), "m={m} n={n}");
            }
        }
    }

    #[test]
    fn r3_hand_expansion() {
        // R_3 = (R_2 + a q^2 R_1)/(1 - q^3) for k = 2
        let rs = RSequence::build(2, 3, 8, 2).unwrap();
        let r3 = rs.get(3);
        // a^0: partitions into parts <= 3
        let plain = [1, 1, 2, 3, 4, 5, 7, 8, 10];
        for (n, &c) in plain.iter().enumerate() {
            assert_eq!(*r3.coeff(0, n), BigInt::from(c));
        }
        // a^1: 1̄ with plain parts from {2, 3}, or 2̄ with plain parts from
        // {1, 3}: q/((1-q^2)(1-q^3)) + q^2/((1-q)(1-q^3))
        let marked = [0, 1, 1, 2, 2, 3, 3, 4, 4];
        for (n, &c) in marked.iter().enumerate() {
            assert_eq!(*r3.coeff(1, n), BigInt::from(c), "n = {n}");
        }
        assert!(r3.a_coefficient(2).is_zero());
    }

    #[test]
    fn functional_equation_holds() {
        let rs = RSequence::build(2, 60, 100, 6).unwrap();
        assert_eq!(check_functional_equation(&rs), Ok(()));
        let rs = RSequence::build(4, 20, 30, 4).unwrap();
        assert_eq!(check_functional_equation(&rs), Ok(()));
    }

    #[test]
    fn functional_equation_catches_mutation() {
        let mut rs = RSequence::build(3, 12, 20, 4).unwrap();
        *rs.term_mut(7).coeff_mut(1, 9) += 1;
        let err = check_functional_equation(&rs).unwrap_err();
        assert_eq!((err.j, err.a_degree, err.q_degree), (7, 1, 9));
    }

    #[test]
    fn closed_product_matches_recursion() {
        assert_eq!(closed_product_f_coefficient(2, 0, 10, 2).unwrap(), BivariateSeries::one(10, 2));
        assert_eq!(
            closed_product_f_coefficient(2, 1, 10, 2).unwrap(),
            QSeries::geometric(1, 10).to_bivariate(2)
        );
        for k in 2..=4 {
            let rs = RSequence::build(k, 10, 24, 6).unwrap();
            let closed = closed_product_coefficients(k, 10, 24, 6).unwrap();
            assert_eq!(closed.as_slice(), rs.terms(), "k = {k}");
        }
        let rs = RSequence::build(3, 7, 15, 15).unwrap();
        assert_eq!(&closed_product_f_coefficient(3, 7, 15, 15).unwrap(), rs.get(7));
    }

    #[test]
    fn limit_of_constant_sequence() {
        let s = overpartition_product(3, 6, 2).unwrap();
        let lim = formal_limit(&vec![s.clone(); 4], |_, _| 0).unwrap();
        assert_eq!(lim.limit, s);
        assert!(lim.stabilization_index.iter().all(|&j| j == 0));
    }

    #[test]
    fn appell_limit_is_the_product() {
        let rs = RSequence::build(2, 45, 40, 40).unwrap();
        let lim = appell_limit(&rs).unwrap();
        assert_eq!(lim.limit, overpartition_product(2, 40, 40).unwrap());
        for (d, &j) in lim.stabilization_index.iter().enumerate() {
            assert!(j <= d + 1, "d={d} j={j}");
        }
    }

    #[test]
    fn stabilization_index_tracks_k() {
        // the single overlined part d̄ enters R_j at j = d + k - 1
        for k in 2..=4 {
            let rs = RSequence::build(k, 30, 25, 3).unwrap();
            let lim = appell_limit(&rs).unwrap();
            for d in 1..=25 {
                assert_eq!(lim.stabilization_index[d], d + k - 1, "k={k} d={d}");
            }
        }
    }

    #[test]
    fn short_sequence_is_not_stabilized() {
        let rs = RSequence::build(3, 20, 30, 4).unwrap();
        assert!(matches!(appell_limit(&rs), Err(Error::NotStabilized { .. })));
        let rs = RSequence::build(3, 10, 30, 0).unwrap();
        assert_eq!(
            appell_limit(&rs),
            Err(Error::NotStabilized {
                a_degree: 0,
                q_degree: 11,
                j_max: 10
            })
        );
    }

    #[test]
    fn limit_matches_enumeration() {
        let rs = RSequence::build(3, 24, 22, 22).unwrap();
        let lim = appell_limit(&rs).unwrap();
        let table = dk_table(22, 22, 3).unwrap();
        for n in 0..=22 {
            for m in 0..=22 {
                assert_eq!(*lim.limit.coeff(m, n), BigInt::from(table[n][m]));
            }
        }
    }

    #[test]
    fn congruence_series_examples() {
        let s = congruence_product_series(2, 0, 10).unwrap();
        assert_eq!(*s.coeff(0), BigInt::one());
        assert_eq!(*s.coeff(10), BigInt::from(10));
        for k in 2..=5 {
            for i in 0..k {
                assert_eq!(
                    congruence_product_series(k, i, 60).unwrap(),
                    specialized_product_series(k, i, 60).unwrap(),
                    "k={k} i={i}"
                );
            }
        }
    }

    #[test]
    fn direct_sums_match_enumeration() {
        for k in 2..=4 {
            let rs = RSequence::build(k, 10, 18, 6).unwrap();
            for j in 0..=10 {
                let p = p_series(&rs, j);
                let r = r_series_direct(&rs, j);
                assert_eq!(&r, rs.get(j as i64), "k={k} j={j}");
                let pt = pj_table(18, 6, j, k).unwrap();
                for n in 0..=18 {
                    for m in 0..=6 {
                        assert_eq!(*p.coeff(m, n), BigInt::from(pt[n][m]), "k={k} j={j} m={m} n={n}");
                    }
                }
            }
        }
    }
}
