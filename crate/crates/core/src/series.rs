//! Exact truncated power series in `q`, optionally carrying a polynomial
//! marker variable `a`.
//!
//! Every series stores all coefficients of `q^0..=q^order` as [`BigInt`]s.
//! Binary operations truncate to the smaller order of their operands, so
//! mixing orders is legal and never an error.
//!
//! [`BivariateSeries`] keeps a dense `(a_order + 1) x (q_order + 1)` matrix.
//! The generating functions handled here are sparse in `a` (an overlined
//! part costs at least one unit of weight), so the products below iterate
//! over nonzero entries only.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// A truncated power series `c_0 + c_1 q + ... + c_N q^N` with exact integer
/// coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QSeries {
    coeffs: Vec<BigInt>,
}

impl QSeries {
    pub fn zero(order: usize) -> Self {
        Self {
            coeffs: vec![BigInt::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::monomial(BigInt::one(), 0, order)
    }

    /// `c q^exp`, or the zero series if `exp > order`.
    pub fn monomial(c: BigInt, exp: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if exp <= order {
            s.coeffs[exp] = c;
        }
        s
    }

    /// Builds a series from its coefficient list; the order is `coeffs.len() - 1`.
    ///
    /// # Panics
    ///
    /// Panics if `coeffs` is empty.
    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        assert!(!coeffs.is_empty(), "a series stores at least the q^0 coefficient");
        Self { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// `1 / (1 - q^step) = 1 + q^step + q^(2 step) + ...`
    pub fn geometric(step: usize, order: usize) -> Self {
        assert!(step > 0, "geometric series needs a positive step");
        let mut s = Self::zero(order);
        for e in (0..=order).step_by(step) {
            s.coeffs[e] = BigInt::one();
        }
        s
    }

    /// The finite product `(q;q)_j = (1-q)(1-q^2)...(1-q^j)`.
    pub fn q_pochhammer(j: usize, order: usize) -> Self {
        let mut s = Self::one(order);
        for e in 1..=j.min(order) {
            s.mul_one_plus_monomial_in_place(-1, e);
        }
        s
    }

    /// Euler's function `(q;q)_inf` truncated at `order`.
    pub fn euler(order: usize) -> Self {
        Self::q_pochhammer(order, order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    /// Coefficient of `q^n`.
    ///
    /// # Panics
    ///
    /// Panics if `n` exceeds the truncation order.
    pub fn coeff(&self, n: usize) -> &BigInt {
        &self.coeffs[n]
    }

    pub fn get(&self, n: usize) -> Option<&BigInt> {
        self.coeffs.get(n)
    }

    pub fn coeff_mut(&mut self, n: usize) -> &mut BigInt {
        &mut self.coeffs[n]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Drops every coefficient above `order`. Raising the order is refused
    /// because the missing coefficients are unknown.
    pub fn truncate(&self, order: usize) -> Result<Self> {
        if order > self.order() {
            return Err(Error::OrderTooLarge {
                requested: order,
                available: self.order(),
            });
        }
        Ok(Self {
            coeffs: self.coeffs[..=order].to_vec(),
        })
    }

    /// Smallest degree at which `self` and `other` differ, compared up to the
    /// smaller of the two orders.
    pub fn first_difference(&self, other: &Self) -> Option<usize> {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .position(|(x, y)| x != y)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Multiplies in place by `1 + c q^e`.
    pub(crate) fn mul_one_plus_monomial_in_place(&mut self, c: i64, e: usize) {
        if e == 0 || e > self.order() {
            if e == 0 {
                let f = BigInt::from(1 + c);
                for x in &mut self.coeffs {
                    *x *= &f;
                }
            }
            return;
        }
        for n in (e..=self.order()).rev() {
            let shifted = &self.coeffs[n - e] * c;
            self.coeffs[n] += shifted;
        }
    }

    /// Multiplicative inverse of a series whose constant term is `+1` or `-1`.
    pub fn invert_unit(&self) -> Result<Self> {
        let c0 = &self.coeffs[0];
        if !(c0.abs().is_one()) {
            return Err(Error::NotAUnit(c0.clone()));
        }
        // c0 is its own inverse
        let u = c0.clone();
        let order = self.order();
        let mut out = Self::zero(order);
        out.coeffs[0] = u.clone();
        for n in 1..=order {
            let mut acc = BigInt::zero();
            for t in 1..=n {
                let a = &self.coeffs[t];
                if !a.is_zero() {
                    acc += a * &out.coeffs[n - t];
                }
            }
            out.coeffs[n] = -(acc * &u);
        }
        Ok(out)
    }

    /// `s(q) -> s(q^t)`; the result has order `t * order`.
    pub fn substitute_q_power(&self, t: usize) -> Self {
        assert!(t > 0, "substitution exponent must be positive");
        let mut out = Self::zero(t * self.order());
        for (n, c) in self.coeffs.iter().enumerate() {
            out.coeffs[t * n] = c.clone();
        }
        out
    }

    /// Views the series as a [`BivariateSeries`] of `a`-degree zero.
    pub fn to_bivariate(&self, a_order: usize) -> BivariateSeries {
        let mut out = BivariateSeries::zero(self.order(), a_order);
        for (n, c) in self.coeffs.iter().enumerate() {
            *out.coeff_mut(0, n) = c.clone();
        }
        out
    }
}

impl Add for &QSeries {
    type Output = QSeries;

    fn add(self, rhs: &QSeries) -> QSeries {
        let order = self.order().min(rhs.order());
        QSeries {
            coeffs: (0..=order)
                .map(|n| &self.coeffs[n] + &rhs.coeffs[n])
                .collect(),
        }
    }
}

impl Sub for &QSeries {
    type Output = QSeries;

    fn sub(self, rhs: &QSeries) -> QSeries {
        let order = self.order().min(rhs.order());
        QSeries {
            coeffs: (0..=order)
                .map(|n| &self.coeffs[n] - &rhs.coeffs[n])
                .collect(),
        }
    }
}

impl Neg for &QSeries {
    type Output = QSeries;

    fn neg(self) -> QSeries {
        QSeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &QSeries {
    type Output = QSeries;

    fn mul(self, rhs: &QSeries) -> QSeries {
        let order = self.order().min(rhs.order());
        let mut out = QSeries::zero(order);
        for (i, x) in self.coeffs[..=order].iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in rhs.coeffs[..=order - i].iter().enumerate() {
                if !y.is_zero() {
                    out.coeffs[i + j] += x * y;
                }
            }
        }
        out
    }
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<(usize, usize, &BigInt)> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(n, c)| (0, n, c))
            .collect();
        write_terms(f, &terms)?;
        write!(f, " + O(q^{})", self.order() + 1)
    }
}

/// A truncated series in `q` whose coefficients are polynomials in `a`.
///
/// `coeff(m, n)` is the coefficient of `a^m q^n` for `m <= a_order` and
/// `n <= q_order`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BivariateSeries {
    q_order: usize,
    a_order: usize,
    // row-major by a-degree
    coeffs: Vec<BigInt>,
}

impl BivariateSeries {
    pub fn zero(q_order: usize, a_order: usize) -> Self {
        Self {
            q_order,
            a_order,
            coeffs: vec![BigInt::zero(); (q_order + 1) * (a_order + 1)],
        }
    }

    pub fn one(q_order: usize, a_order: usize) -> Self {
        let mut s = Self::zero(q_order, a_order);
        s.coeffs[0] = BigInt::one();
        s
    }

    /// `c a^a_exp q^q_exp`, zero if either exponent falls outside the truncation.
    pub fn monomial(c: BigInt, a_exp: usize, q_exp: usize, q_order: usize, a_order: usize) -> Self {
        let mut s = Self::zero(q_order, a_order);
        if a_exp <= a_order && q_exp <= q_order {
            *s.coeff_mut(a_exp, q_exp) = c;
        }
        s
    }

    /// Builds a series from rows indexed by `a`-degree; each row holds the
    /// `q`-coefficients. Rows must be non-empty and of equal length.
    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Self {
        assert!(!rows.is_empty() && !rows[0].is_empty());
        let width = rows[0].len();
        assert!(rows.iter().all(|r| r.len() == width), "ragged coefficient matrix");
        Self {
            q_order: width - 1,
            a_order: rows.len() - 1,
            coeffs: rows.into_iter().flatten().collect(),
        }
    }

    pub fn q_order(&self) -> usize {
        self.q_order
    }

    pub fn a_order(&self) -> usize {
        self.a_order
    }

    #[inline]
    fn idx(&self, m: usize, n: usize) -> usize {
        debug_assert!(m <= self.a_order && n <= self.q_order);
        m * (self.q_order + 1) + n
    }

    /// Coefficient of `a^m q^n`.
    ///
    /// # Panics
    ///
    /// Panics if `(m, n)` lies outside the truncation.
    pub fn coeff(&self, m: usize, n: usize) -> &BigInt {
        assert!(m <= self.a_order && n <= self.q_order, "coefficient outside truncation");
        &self.coeffs[self.idx(m, n)]
    }

    pub fn get(&self, m: usize, n: usize) -> Option<&BigInt> {
        (m <= self.a_order && n <= self.q_order).then(|| &self.coeffs[self.idx(m, n)])
    }

    pub fn coeff_mut(&mut self, m: usize, n: usize) -> &mut BigInt {
        assert!(m <= self.a_order && n <= self.q_order, "coefficient outside truncation");
        let i = self.idx(m, n);
        &mut self.coeffs[i]
    }

    /// The `q`-series multiplying `a^m`.
    pub fn a_coefficient(&self, m: usize) -> QSeries {
        let start = self.idx(m, 0);
        QSeries::from_coeffs(self.coeffs[start..=start + self.q_order].to_vec())
    }

    /// Sets `a = 1`.
    pub fn at_a_equals_one(&self) -> QSeries {
        let mut out = QSeries::zero(self.q_order);
        for (_, n, c) in self.terms() {
            out.coeffs[n] += c;
        }
        out
    }

    /// Nonzero terms as `(a_degree, q_degree, coefficient)`, ordered by
    /// `a`-degree and then `q`-degree.
    pub fn terms(&self) -> impl Iterator<Item = (usize, usize, &BigInt)> + '_ {
        let w = self.q_order + 1;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (i / w, i % w, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Restricts to smaller orders. Raising either order is refused.
    pub fn truncate(&self, q_order: usize, a_order: usize) -> Result<Self> {
        if q_order > self.q_order {
            return Err(Error::OrderTooLarge {
                requested: q_order,
                available: self.q_order,
            });
        }
        if a_order > self.a_order {
            return Err(Error::OrderTooLarge {
                requested: a_order,
                available: self.a_order,
            });
        }
        Ok(self.restrict(q_order, a_order))
    }

    fn restrict(&self, q_order: usize, a_order: usize) -> Self {
        if q_order == self.q_order && a_order == self.a_order {
            return self.clone();
        }
        let mut out = Self::zero(q_order, a_order);
        for m in 0..=a_order {
            for n in 0..=q_order {
                let c = &self.coeffs[self.idx(m, n)];
                if !c.is_zero() {
                    let i = out.idx(m, n);
                    out.coeffs[i] = c.clone();
                }
            }
        }
        out
    }

    /// Smallest `(a_degree, q_degree)` (ordered by `q`-degree, then
    /// `a`-degree) at which the two series differ, within the common
    /// truncation.
    pub fn first_difference(&self, other: &Self) -> Option<(usize, usize)> {
        let q = self.q_order.min(other.q_order);
        let a = self.a_order.min(other.a_order);
        (0..=q)
            .flat_map(|n| (0..=a).map(move |m| (m, n)))
            .find(|&(m, n)| self.coeffs[self.idx(m, n)] != other.coeffs[other.idx(m, n)])
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self {
            q_order: self.q_order,
            a_order: self.a_order,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Multiplies by `a^a_exp q^q_exp`, truncating at the current orders.
    pub fn shift(&self, a_exp: usize, q_exp: usize) -> Self {
        let mut out = Self::zero(self.q_order, self.a_order);
        for (m, n, c) in self.terms() {
            if m + a_exp <= self.a_order && n + q_exp <= self.q_order {
                let i = out.idx(m + a_exp, n + q_exp);
                out.coeffs[i] = c.clone();
            }
        }
        out
    }

    /// Multiplies by a pure `q`-series. Cheaper than a full product since
    /// `a`-degrees are untouched.
    pub fn mul_q(&self, s: &QSeries) -> Self {
        let q_order = self.q_order.min(s.order());
        let mut out = Self::zero(q_order, self.a_order);
        let rhs: Vec<(usize, &BigInt)> = s.coeffs[..=q_order]
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .collect();
        for (m, n, c) in self.terms() {
            if n > q_order {
                continue;
            }
            for &(t, d) in &rhs {
                if n + t > q_order {
                    break;
                }
                let i = out.idx(m, n + t);
                out.coeffs[i] += c * d;
            }
        }
        out
    }

    /// Multiplies in place by `1 + c a^a_exp q^q_exp`.
    pub(crate) fn mul_binomial_in_place(&mut self, c: &BigInt, a_exp: usize, q_exp: usize) {
        if a_exp == 0 && q_exp == 0 {
            let f = BigInt::one() + c;
            for x in &mut self.coeffs {
                *x *= &f;
            }
            return;
        }
        if a_exp > self.a_order || q_exp > self.q_order {
            return;
        }
        // descending sweep reads only entries not yet updated
        for m in (a_exp..=self.a_order).rev() {
            for n in (q_exp..=self.q_order).rev() {
                let src = self.idx(m - a_exp, n - q_exp);
                if self.coeffs[src].is_zero() {
                    continue;
                }
                let add = &self.coeffs[src] * c;
                let dst = self.idx(m, n);
                self.coeffs[dst] += add;
            }
        }
    }

    /// `s(a, q) -> s(a, q^t)`; the result has `q`-order `t * q_order`.
    pub fn substitute_q_power(&self, t: usize) -> Self {
        assert!(t > 0, "substitution exponent must be positive");
        let mut out = Self::zero(t * self.q_order, self.a_order);
        for (m, n, c) in self.terms() {
            let i = out.idx(m, t * n);
            out.coeffs[i] = c.clone();
        }
        out
    }

    /// Sets `a = q^e`, sending `a^m q^n` to `q^(n + m e)`, and keeps the
    /// coefficients through `q^order`.
    ///
    /// This is exponent bookkeeping on the stored matrix, so `e` may be
    /// negative as long as no nonzero term lands below `q^0`. Terms beyond the
    /// stored truncation are unknown; the caller sizes the input so that
    /// everything landing at or below `order` is present. `order` may not
    /// exceed the input's `q_order`.
    pub fn specialize_a(&self, e: i64, order: usize) -> Result<QSeries> {
        if order > self.q_order {
            return Err(Error::OrderTooLarge {
                requested: order,
                available: self.q_order,
            });
        }
        let mut out = QSeries::zero(order);
        for (m, n, c) in self.terms() {
            let target = n as i64 + m as i64 * e;
            if target < 0 {
                return Err(Error::NegativeExponent {
                    a_exp: m,
                    q_exp: n,
                    e,
                    target,
                });
            }
            let target = target as usize;
            if target <= order {
                out.coeffs[target] += c;
            }
        }
        Ok(out)
    }
}

impl Add for &BivariateSeries {
    type Output = BivariateSeries;

    fn add(self, rhs: &BivariateSeries) -> BivariateSeries {
        let mut out = self.restrict(self.q_order.min(rhs.q_order), self.a_order.min(rhs.a_order));
        for (m, n, c) in rhs.terms() {
            if m <= out.a_order && n <= out.q_order {
                let i = out.idx(m, n);
                out.coeffs[i] += c;
            }
        }
        out
    }
}

impl Neg for &BivariateSeries {
    type Output = BivariateSeries;

    fn neg(self) -> BivariateSeries {
        self.scale(&BigInt::from(-1))
    }
}

impl Sub for &BivariateSeries {
    type Output = BivariateSeries;

    fn sub(self, rhs: &BivariateSeries) -> BivariateSeries {
        self + &(-rhs)
    }
}

impl Mul for &BivariateSeries {
    type Output = BivariateSeries;

    fn mul(self, rhs: &BivariateSeries) -> BivariateSeries {
        let q_order = self.q_order.min(rhs.q_order);
        let a_order = self.a_order.min(rhs.a_order);
        let mut out = BivariateSeries::zero(q_order, a_order);
        let rhs_terms: Vec<(usize, usize, &BigInt)> = rhs.terms().collect();
        for (m1, n1, c1) in self.terms() {
            if m1 > a_order || n1 > q_order {
                continue;
            }
            for &(m2, n2, c2) in &rhs_terms {
                if m1 + m2 <= a_order && n1 + n2 <= q_order {
                    let i = out.idx(m1 + m2, n1 + n2);
                    out.coeffs[i] += c1 * c2;
                }
            }
        }
        out
    }
}

impl fmt::Display for BivariateSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<(usize, usize, &BigInt)> = self.terms().collect();
        terms.sort_by_key(|&(m, n, _)| (n, m));
        write_terms(f, &terms)?;
        write!(f, " + O(q^{}, a^{})", self.q_order + 1, self.a_order + 1)
    }
}

fn write_terms(f: &mut fmt::Formatter<'_>, terms: &[(usize, usize, &BigInt)]) -> fmt::Result {
    if terms.is_empty() {
        return write!(f, "0");
    }
    for (idx, &(m, n, c)) in terms.iter().enumerate() {
        let neg = c.is_negative();
        let mag = c.abs();
        match (idx, neg) {
            (0, true) => write!(f, "-")?,
            (0, false) => {}
            (_, true) => write!(f, " - ")?,
            (_, false) => write!(f, " + ")?,
        }
        let mut vars = String::new();
        match m {
            0 => {}
            1 => vars.push('a'),
            _ => vars.push_str(&format!("a^{m}")),
        }
        match n {
            0 => {}
            1 => vars.push('q'),
            _ => vars.push_str(&format!("q^{n}")),
        }
        if vars.is_empty() {
            write!(f, "{mag}")?;
        } else if mag.is_one() {
            write!(f, "{vars}")?;
        } else {
            write!(f, "{mag}{vars}")?;
        }
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

/// `sign * a^a_exp * q^q_exp`, the building block of Pochhammer factors
/// `1 + sign a^a_exp q^q_exp`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub sign: Sign,
    pub a_exp: usize,
    pub q_exp: i64,
}

impl Monomial {
    pub fn new(sign: Sign, a_exp: usize, q_exp: i64) -> Self {
        Self { sign, a_exp, q_exp }
    }

    /// `-q^e`, the factor of `(q^e; q^step)_inf`.
    pub fn minus_q(q_exp: i64) -> Self {
        Self::new(Sign::Minus, 0, q_exp)
    }

    /// `+a q^e`, the factor of `(-a q^e; q^step)_inf`.
    pub fn plus_aq(q_exp: i64) -> Self {
        Self::new(Sign::Plus, 1, q_exp)
    }
}

/// The infinite product `prod_{j >= 0} (1 + sign a^a_exp q^(q_exp + j step))`
/// truncated at `q_order` in `q` and `a_order` in `a`.
///
/// Factors whose `q`-exponent exceeds `q_order` are congruent to 1 and are
/// skipped, so the truncated result is exact.
pub fn pochhammer_inf(
    factor: Monomial,
    step_q: usize,
    q_order: usize,
    a_order: usize,
) -> Result<BivariateSeries> {
    if factor.q_exp <= 0 {
        return Err(Error::NonPositiveExponent(factor.q_exp));
    }
    assert!(step_q > 0, "step must be positive");
    let c = BigInt::from(factor.sign.as_i64());
    let mut out = BivariateSeries::one(q_order, a_order);
    let mut e = factor.q_exp as usize;
    while e <= q_order {
        out.mul_binomial_in_place(&c, factor.a_exp, e);
        e += step_q;
    }
    Ok(out)
}

/// `(-aq; q^k)_inf / (q;q)_inf`, the generating function of the admissible
/// overpartitions counted by marked weight.
pub fn overpartition_product(k: usize, q_order: usize, a_order: usize) -> Result<BivariateSeries> {
    crate::error::check_k(k)?;
    let numerator = pochhammer_inf(Monomial::plus_aq(1), k, q_order, a_order)?;
    let denominator = QSeries::euler(q_order).invert_unit()?;
    Ok(numerator.mul_q(&denominator))
}
