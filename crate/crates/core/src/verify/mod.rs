//! Top-level identity checks. Each verifier computes both sides of an
//! identity along independent routes and reports the first disagreement.
//!
//! The `*_with` variants take the sides as plain function pointers so a
//! deliberately broken oracle can be substituted in tests.

mod report;

use std::collections::BTreeSet;
use std::time::Instant;

use num_bigint::BigInt;
use rayon::prelude::*;

pub use report::{
    CheckedRange, Identity, ObjectList, Params, Status, VerificationReport, Witness, REPORT_SCHEMA_VERSION,
    WITNESS_CAP,
};

use crate::appell::{
    appell_limit, check_functional_equation, closed_product_coefficients, congruence_product_series, p_series,
    specialized_product_series, InitialConditions, RSequence,
};
use crate::error::{check_k, check_ki, Error, Result};
use crate::overpartition::{admissible_overpartitions, pj_table, rj_table, specialized_images, Overpartition};
use crate::partition::{
    b_partitions, c_partitions, count_b_table, count_schur_product_table, enumerate_partitions, satisfies_schur_gap,
    Partition, Phrasing,
};
use crate::series::{overpartition_product, BivariateSeries, QSeries};

/// Default ranges for the full suite.
pub mod defaults {
    pub const ENUM_LIMIT: usize = 25;
    pub const N_MAX: usize = 200;
    pub const M_MAX: usize = 8;
    pub const OVERPARTITION_N_MAX: usize = 22;
    pub const SCHUR_N_MAX: usize = 40;
    pub const Q_ORDER: usize = 60;
    pub const J_MAX: usize = 65;
    pub const K_MAX: usize = 5;
    /// Brute-force objects a single check may generate before aborting.
    pub const ENUM_BUDGET: u64 = 20_000_000;
}

fn finish(mut report: VerificationReport, start: Instant) -> VerificationReport {
    report.elapsed = start.elapsed();
    report
}

fn budget_exceeded(report: &mut VerificationReport, budget: u64, n: usize) {
    report.abort(
        format!("enumeration budget of {budget} objects exhausted at n={n}"),
        n.checked_sub(1),
    );
}

/// Sides of the marked-overpartition identity.
#[derive(Clone, Copy, Debug)]
pub struct OverpartitionOracles {
    pub product: fn(usize, usize, usize) -> Result<BivariateSeries>,
    pub admissible: fn(usize, usize) -> Result<Vec<Overpartition>>,
    pub budget: u64,
}

impl Default for OverpartitionOracles {
    fn default() -> Self {
        Self {
            product: overpartition_product,
            admissible: |n, k| admissible_overpartitions(n, k, None),
            budget: defaults::ENUM_BUDGET,
        }
    }
}

/// Brute-force `D_k(m, n)` against the coefficient of `a^m q^n` in
/// `(-aq; q^k)_inf / (q;q)_inf` for every `n <= n_max`, `m <= m_max`.
pub fn verify_overpartition(k: usize, n_max: usize, m_max: usize) -> Result<VerificationReport> {
    verify_overpartition_with(&OverpartitionOracles::default(), k, n_max, m_max)
}

pub fn verify_overpartition_with(
    oracles: &OverpartitionOracles,
    k: usize,
    n_max: usize,
    m_max: usize,
) -> Result<VerificationReport> {
    check_k(k)?;
    let start = Instant::now();
    let mut report = VerificationReport::new(
        Identity::Overpartition,
        "enumeration-vs-product",
        Params { k: Some(k), i: None },
        CheckedRange {
            n_max,
            m_max: Some(m_max),
            ..Default::default()
        },
    );
    let product = (oracles.product)(k, n_max, m_max)?;
    let mut generated = 0u64;
    for n in 0..=n_max {
        let objects = (oracles.admissible)(n, k)?;
        generated += objects.len() as u64;
        if generated > oracles.budget {
            budget_exceeded(&mut report, oracles.budget, n);
            return Ok(finish(report, start));
        }
        let mut counts = vec![0u64; m_max + 1];
        for o in &objects {
            if let Some(c) = counts.get_mut(o.overline_count()) {
                *c += 1;
            }
        }
        for (m, &count) in counts.iter().enumerate() {
            let coeff = product.coeff(m, n);
            if BigInt::from(count) != *coeff {
                let matching = objects.iter().filter(|o| o.overline_count() == m);
                report.fail(
                    Witness::counts(n, "D_k(m,n)", count, "product", coeff)
                        .with_m(m)
                        .with_objects(ObjectList::capped("admissible overpartitions", matching)),
                );
                return Ok(finish(report, start));
            }
        }
    }
    Ok(finish(report, start))
}

/// Sides of the congruence/difference identity for a given `(k, i)`.
#[derive(Clone, Copy, Debug)]
pub struct CorollaryOracles {
    pub b_dp: fn(usize, usize, usize) -> Result<Vec<BigInt>>,
    pub c_side: fn(usize, usize, usize, Phrasing) -> Result<Vec<Partition>>,
    pub product: fn(usize, usize, usize) -> Result<QSeries>,
    pub specialized: fn(usize, usize, usize) -> Result<QSeries>,
    pub budget: u64,
}

impl Default for CorollaryOracles {
    fn default() -> Self {
        Self {
            b_dp: count_b_table,
            c_side: c_partitions,
            product: congruence_product_series,
            specialized: specialized_product_series,
            budget: defaults::ENUM_BUDGET,
        }
    }
}

/// `B_{i,k}(n) = C_{i,k}(n) = [q^n] prod` for `n <= min(n_max, enum_limit)`,
/// and the DP count against the product alone up to `n_max`.
///
/// The product is also rederived from the marked generating function by
/// specialization and compared through `n_max`. For `i = k-1` and `i = 0`
/// the case-specific phrasing of the C-side is checked alongside.
pub fn verify_corollary(k: usize, i: usize, n_max: usize, enum_limit: usize) -> Result<VerificationReport> {
    verify_corollary_with(&CorollaryOracles::default(), Identity::Corollary, k, i, n_max, enum_limit)
}

/// [`verify_corollary`] at `i = k-1`.
pub fn verify_andrews(k: usize, n_max: usize, enum_limit: usize) -> Result<VerificationReport> {
    check_k(k)?;
    verify_corollary_with(&CorollaryOracles::default(), Identity::Andrews, k, k - 1, n_max, enum_limit)
}

/// [`verify_corollary`] at `i = 0`.
pub fn verify_dual(k: usize, n_max: usize, enum_limit: usize) -> Result<VerificationReport> {
    verify_corollary_with(&CorollaryOracles::default(), Identity::Dual, k, 0, n_max, enum_limit)
}

pub fn verify_corollary_with(
    oracles: &CorollaryOracles,
    identity: Identity,
    k: usize,
    i: usize,
    n_max: usize,
    enum_limit: usize,
) -> Result<VerificationReport> {
    check_ki(k, i)?;
    let start = Instant::now();
    let mut report = VerificationReport::new(
        identity,
        "congruence-vs-difference",
        Params { k: Some(k), i: Some(i) },
        CheckedRange {
            n_max,
            enum_limit: Some(enum_limit),
            ..Default::default()
        },
    );
    let dp = (oracles.b_dp)(n_max, k, i)?;
    let product = (oracles.product)(k, i, n_max)?;
    let specialized = (oracles.specialized)(k, i, n_max)?;

    let special_phrasing = if i == k - 1 {
        Some(Phrasing::Andrews)
    } else if i == 0 {
        Some(Phrasing::Dual)
    } else {
        None
    };

    let brute_max = n_max.min(enum_limit);
    let mut generated = 0u64;
    for n in 0..=n_max {
        let coeff = product.coeff(n);
        if n <= brute_max {
            generated += enumerate_partitions(n).count() as u64;
            if generated > oracles.budget {
                budget_exceeded(&mut report, oracles.budget, n);
                return Ok(finish(report, start));
            }
            let c_side = (oracles.c_side)(n, k, i, Phrasing::Corollary)?;
            let c = BigInt::from(c_side.len());
            if dp[n] != c || c != *coeff {
                let b_side = b_partitions(n, k, i)?;
                let (lhs_label, lhs, rhs_label, rhs) = if dp[n] != c {
                    ("B (dp)", &dp[n], "C (enumeration)", &c)
                } else {
                    ("C (enumeration)", &c, "product", coeff)
                };
                report.fail(
                    Witness::counts(n, lhs_label, lhs, rhs_label, rhs)
                        .with_objects(ObjectList::capped("B-side partitions", &b_side))
                        .with_objects(ObjectList::capped("C-side partitions", &c_side)),
                );
                return Ok(finish(report, start));
            }
            if let Some(ph) = special_phrasing {
                let alt = (oracles.c_side)(n, k, i, ph)?;
                if alt != c_side {
                    report.fail(
                        Witness::counts(n, "C (corollary phrasing)", c_side.len(), &format!("C ({ph} phrasing)"), alt.len())
                            .with_objects(ObjectList::capped("corollary phrasing", &c_side))
                            .with_objects(ObjectList::capped(format!("{ph} phrasing"), &alt)),
                    );
                    return Ok(finish(report, start));
                }
            }
        } else if dp[n] != *coeff {
            report.fail(Witness::counts(n, "B (dp)", &dp[n], "product", coeff));
            return Ok(finish(report, start));
        }
        if specialized.coeff(n) != coeff {
            report.fail(Witness::counts(n, "specialized product", specialized.coeff(n), "product", coeff));
            return Ok(finish(report, start));
        }
    }
    if let Some(ph) = special_phrasing {
        report
            .notes
            .push(format!("{ph} phrasing agreed with the corollary phrasing for n <= {brute_max}"));
    }
    Ok(finish(report, start))
}

#[derive(Clone, Copy, Debug)]
pub struct SchurOracles {
    pub product: fn(usize) -> Vec<BigInt>,
    pub gap_side: fn(usize) -> Vec<Partition>,
    pub budget: u64,
}

impl Default for SchurOracles {
    fn default() -> Self {
        Self {
            product: count_schur_product_table,
            gap_side: |n| enumerate_partitions(n).filter(satisfies_schur_gap).collect(),
            budget: defaults::ENUM_BUDGET,
        }
    }
}

/// Parts `±1 mod 6` against the gap condition for every `n <= n_max`.
pub fn verify_schur(n_max: usize) -> VerificationReport {
    verify_schur_with(&SchurOracles::default(), n_max)
}

pub fn verify_schur_with(oracles: &SchurOracles, n_max: usize) -> VerificationReport {
    let start = Instant::now();
    let mut report = VerificationReport::new(
        Identity::Schur,
        "congruence-vs-gap",
        Params::default(),
        CheckedRange {
            n_max,
            ..Default::default()
        },
    );
    let product = (oracles.product)(n_max);
    let mut generated = 0u64;
    for n in 0..=n_max {
        generated += enumerate_partitions(n).count() as u64;
        if generated > oracles.budget {
            budget_exceeded(&mut report, oracles.budget, n);
            return finish(report, start);
        }
        let gap = (oracles.gap_side)(n);
        if BigInt::from(gap.len()) != product[n] {
            let prod_side: Vec<Partition> = enumerate_partitions(n)
                .filter(|l| l.parts().iter().all(|&p| crate::partition::is_schur_product_part(p)))
                .collect();
            report.fail(
                Witness::counts(n, "parts ±1 mod 6", &product[n], "gap condition", gap.len())
                    .with_objects(ObjectList::capped("congruence side", &prod_side))
                    .with_objects(ObjectList::capped("gap side", &gap)),
            );
            break;
        }
    }
    finish(report, start)
}

/// Specialization of admissible overpartitions is injective and its image
/// in weight `n` is exactly the C-side set, for every `n <= n_max`.
pub fn verify_specialization(k: usize, i: usize, n_max: usize) -> Result<VerificationReport> {
    check_ki(k, i)?;
    let start = Instant::now();
    let mut report = VerificationReport::new(
        Identity::Corollary,
        "specialization-image",
        Params { k: Some(k), i: Some(i) },
        CheckedRange {
            n_max,
            ..Default::default()
        },
    );
    for n in 0..=n_max {
        let pairs = specialized_images(n, k, i)?;
        let images: BTreeSet<Partition> = pairs.iter().map(|(_, p)| p.clone()).collect();
        if images.len() != pairs.len() {
            let mut seen = BTreeSet::new();
            let clash = pairs.iter().find(|(_, p)| !seen.insert(p.clone())).map(|(_, p)| p.clone());
            let sources = pairs.iter().filter(|(_, p)| Some(p) == clash.as_ref()).map(|(o, _)| o);
            report.fail(
                Witness::counts(n, "overpartitions", pairs.len(), "distinct images", images.len())
                    .with_objects(ObjectList::capped("overpartitions with a shared image", sources)),
            );
            break;
        }
        let c: BTreeSet<Partition> = c_partitions(n, k, i, Phrasing::Corollary)?.into_iter().collect();
        if images != c {
            report.fail(
                Witness::counts(n, "images", images.len(), "C-side", c.len())
                    .with_objects(ObjectList::capped("images outside the C-side", images.difference(&c)))
                    .with_objects(ObjectList::capped("C-side partitions never hit", c.difference(&images))),
            );
            break;
        }
    }
    Ok(finish(report, start))
}

/// Limits for the enumeration sub-check of [`verify_machinery`].
pub const MACHINERY_ENUM_J_MAX: usize = 10;
pub const MACHINERY_ENUM_N_MAX: usize = 18;
pub const MACHINERY_CLOSED_J_MAX: usize = 10;

/// The recursion, functional equation, closed product, bounded enumerations
/// and the formal limit for one `k`, as one report per sub-check.
pub fn verify_machinery(k: usize, q_order: usize, j_max: usize) -> Result<Vec<VerificationReport>> {
    check_k(k)?;
    let rs = RSequence::build(k, j_max, q_order, q_order)?;
    verify_machinery_on(&rs)
}

/// Runs every machinery sub-check against an already built sequence.
pub fn verify_machinery_on(rs: &RSequence) -> Result<Vec<VerificationReport>> {
    let k = rs.k();
    let (q_order, a_order, j_max) = (rs.q_order(), rs.a_order(), rs.j_max());
    let params = Params { k: Some(k), i: None };
    let range = CheckedRange {
        n_max: q_order,
        m_max: Some(a_order),
        j_max: Some(j_max),
        ..Default::default()
    };
    let mut out = Vec::new();

    // both initial-condition formulations
    let start = Instant::now();
    let mut r = VerificationReport::new(Identity::Machinery, "initial-conditions", params, range);
    let bounded = RSequence::build_from(InitialConditions::Bounded, k, j_max, q_order, a_order)?;
    if let Err(mm) = rs.check_initial_conditions() {
        r.fail(mismatch_witness(&mm, "R_j", "1/(q;q)_j"));
    } else if let Some(j) = (0..=j_max).find(|&j| rs.get(j as i64) != bounded.get(j as i64)) {
        let (m, n) = rs.get(j as i64).first_difference(bounded.get(j as i64)).unwrap();
        r.fail(
            Witness::counts(
                n,
                "R_j (extended start)",
                rs.get(j as i64).coeff(m, n),
                "R_j (bounded start)",
                bounded.get(j as i64).coeff(m, n),
            )
            .with_m(m)
            .with_j(j),
        );
    }
    out.push(finish(r, start));

    let start = Instant::now();
    let mut r = VerificationReport::new(Identity::Machinery, "functional-equation", params, range);
    if let Err(mm) = check_functional_equation(rs) {
        r.fail(mismatch_witness(&mm, "R_j - R_{j-1}", "q^j R_j + a q^(j-k+1) R_{j-k}"));
    }
    out.push(finish(r, start));

    let start = Instant::now();
    let closed_j = j_max.min(MACHINERY_CLOSED_J_MAX);
    let mut r = VerificationReport::new(
        Identity::Machinery,
        "closed-product",
        params,
        CheckedRange {
            j_max: Some(closed_j),
            ..range
        },
    );
    let closed = closed_product_coefficients(k, closed_j, q_order, a_order)?;
    for (j, c) in closed.iter().enumerate() {
        if let Some((m, n)) = c.first_difference(rs.get(j as i64)) {
            r.fail(
                Witness::counts(n, "closed product [x^j]", c.coeff(m, n), "R_j", rs.get(j as i64).coeff(m, n))
                    .with_m(m)
                    .with_j(j),
            );
            break;
        }
    }
    out.push(finish(r, start));

    let start = Instant::now();
    let enum_j = j_max.min(MACHINERY_ENUM_J_MAX);
    let enum_n = q_order.min(MACHINERY_ENUM_N_MAX);
    let enum_m = a_order.min(enum_n);
    let mut r = VerificationReport::new(
        Identity::Machinery,
        "bounded-enumeration",
        params,
        CheckedRange {
            n_max: enum_n,
            m_max: Some(enum_m),
            j_max: Some(enum_j),
            ..Default::default()
        },
    );
    'outer: for j in 0..=enum_j {
        let rt = rj_table(enum_n, enum_m, j, k)?;
        let pt = pj_table(enum_n, enum_m, j, k)?;
        let p = p_series(rs, j);
        for n in 0..=enum_n {
            for m in 0..=enum_m {
                let (rc, pc) = (BigInt::from(rt[n][m]), BigInt::from(pt[n][m]));
                if rc != *rs.get(j as i64).coeff(m, n) {
                    r.fail(
                        Witness::counts(n, "r_j (enumeration)", rc, "R_j", rs.get(j as i64).coeff(m, n))
                            .with_m(m)
                            .with_j(j),
                    );
                    break 'outer;
                }
                if pc != *p.coeff(m, n) {
                    r.fail(
                        Witness::counts(n, "p_j (enumeration)", pc, "P_j (direct sum)", p.coeff(m, n))
                            .with_m(m)
                            .with_j(j),
                    );
                    break 'outer;
                }
            }
        }
    }
    out.push(finish(r, start));

    let start = Instant::now();
    let mut r = VerificationReport::new(Identity::Machinery, "appell-limit", params, range);
    match appell_limit(rs) {
        Ok(lim) => {
            let product = overpartition_product(k, q_order, a_order)?;
            if let Some((m, n)) = lim.limit.first_difference(&product) {
                r.fail(
                    Witness::counts(n, "lim R_j", lim.limit.coeff(m, n), "product", product.coeff(m, n)).with_m(m),
                );
            } else {
                let worst = lim
                    .stabilization_index
                    .iter()
                    .enumerate()
                    .map(|(d, &j)| j as i64 - d as i64)
                    .max()
                    .unwrap_or(0);
                r.notes.push(format!(
                    "every q^d coefficient settled by j = d + {worst}"
                ));
            }
        }
        Err(Error::NotStabilized {
            a_degree,
            q_degree,
            j_max,
        }) => {
            r.abort(
                format!("not stabilized: coefficient of a^{a_degree} q^{q_degree} is not final by j = {j_max}"),
                q_degree.checked_sub(1),
            );
        }
        Err(e) => return Err(e),
    }
    out.push(finish(r, start));

    Ok(out)
}

fn mismatch_witness(mm: &crate::appell::Mismatch, lhs: &str, rhs: &str) -> Witness {
    Witness::counts(mm.q_degree, lhs, &mm.lhs, rhs, &mm.rhs)
        .with_m(mm.a_degree)
        .with_j(mm.j)
}

fn parse_partition(s: &str) -> Partition {
    Partition::from_parts(s.split('+').map(|p| p.parse().expect("literal partition")).collect())
}

/// The printed product-side list for `B_{0,2}(10)`.
pub fn golden_product_side() -> Vec<Partition> {
    [
        "9+1",
        "8+1+1",
        "6+4",
        "6+1+1+1+1",
        "5+5",
        "5+4+1",
        "5+1+1+1+1+1",
        "4+4+1+1",
        "4+1+1+1+1+1+1",
        "1+1+1+1+1+1+1+1+1+1",
    ]
    .into_iter()
    .map(parse_partition)
    .collect()
}

/// The printed sum-side list for `C_{0,2}(10)`.
pub fn golden_sum_side() -> Vec<Partition> {
    ["10", "9+1", "8+2", "7+3", "6+4", "6+2+2", "5+4+1", "4+4+2", "4+2+2+2", "2+2+2+2+2"]
        .into_iter()
        .map(parse_partition)
        .collect()
}

/// The `k = 2`, `n = 10` worked example: both printed lists, as sets.
pub fn golden_example_n10() -> VerificationReport {
    golden_example_against(&golden_product_side(), &golden_sum_side())
}

/// Compares the computed `k = 2, i = 0, n = 10` sides against given lists.
pub fn golden_example_against(expected_product: &[Partition], expected_sum: &[Partition]) -> VerificationReport {
    let (n, k, i) = (10, 2, 0);
    let start = Instant::now();
    let mut report = VerificationReport::new(
        Identity::Dual,
        "golden-n10",
        Params { k: Some(k), i: Some(i) },
        CheckedRange {
            n_max: n,
            ..Default::default()
        },
    );
    let b: BTreeSet<Partition> = b_partitions(n, k, i).expect("valid parameters").into_iter().collect();
    let c: BTreeSet<Partition> = c_partitions(n, k, i, Phrasing::Dual)
        .expect("valid parameters")
        .into_iter()
        .collect();
    let c_cor: BTreeSet<Partition> = c_partitions(n, k, i, Phrasing::Corollary)
        .expect("valid parameters")
        .into_iter()
        .collect();
    let images: BTreeSet<Partition> = specialized_images(n, k, i)
        .expect("valid parameters")
        .into_iter()
        .map(|(_, p)| p)
        .collect();
    let dp = &count_b_table(n, k, i).expect("valid parameters")[n];
    let series = congruence_product_series(k, i, n).expect("valid parameters");

    let want_b: BTreeSet<Partition> = expected_product.iter().cloned().collect();
    let want_c: BTreeSet<Partition> = expected_sum.iter().cloned().collect();

    let set_diff = |computed: &BTreeSet<Partition>, expected: &BTreeSet<Partition>, side: &str| {
        Witness::counts(n, &format!("{side} (computed)"), computed.len(), &format!("{side} (expected)"), expected.len())
            .with_objects(ObjectList::capped("computed but not expected", computed.difference(expected)))
            .with_objects(ObjectList::capped("expected but not computed", expected.difference(computed)))
    };

    if b != want_b {
        report.fail(set_diff(&b, &want_b, "B_{0,2}(10)"));
    } else if c != want_c {
        report.fail(set_diff(&c, &want_c, "C_{0,2}(10)"));
    } else if c_cor != c {
        report.fail(set_diff(&c_cor, &c, "C_{0,2}(10) corollary phrasing"));
    } else if images != c {
        report.fail(set_diff(&images, &c, "specialized overpartitions"));
    } else if BigInt::from(b.len()) != *dp || *dp != *series.coeff(n) {
        report.fail(Witness::counts(n, "B_{0,2}(10) (dp)", dp, "product", series.coeff(n)));
    } else {
        report.notes.push(format!("B_{{0,2}}(10) = C_{{0,2}}(10) = {}", b.len()));
        report
            .notes
            .push("the sum-side count is indexed C_{0,2} (k = 2, i = 0); the label C_{0,1} sometimes attached to this example does not fit k >= 2".into());
    }
    finish(report, start)
}

/// The full default suite for `2 <= k <= k_max`, evaluated in parallel on
/// the current rayon pool. Reports come back in a fixed order.
pub fn verify_all(k_max: usize) -> Result<Vec<VerificationReport>> {
    check_k(k_max)?;
    #[derive(Clone, Copy)]
    enum Job {
        Golden,
        Schur,
        Overpartition(usize),
        Corollary(usize, usize),
        Machinery(usize),
    }
    let mut jobs = vec![Job::Golden, Job::Schur];
    for k in 2..=k_max {
        jobs.push(Job::Overpartition(k));
    }
    for k in 2..=k_max {
        for i in 0..k {
            jobs.push(Job::Corollary(k, i));
        }
    }
    for k in 2..=k_max.min(4) {
        jobs.push(Job::Machinery(k));
    }
    let results: Vec<Result<Vec<VerificationReport>>> = jobs
        .par_iter()
        .map(|job| match *job {
            Job::Golden => Ok(vec![golden_example_n10()]),
            Job::Schur => Ok(vec![verify_schur(defaults::SCHUR_N_MAX)]),
            Job::Overpartition(k) => {
                let n = defaults::OVERPARTITION_N_MAX;
                verify_overpartition(k, n, n).map(|r| vec![r])
            }
            Job::Corollary(k, i) => {
                let identity = if i == k - 1 {
                    Identity::Andrews
                } else if i == 0 {
                    Identity::Dual
                } else {
                    Identity::Corollary
                };
                verify_corollary_with(
                    &CorollaryOracles::default(),
                    identity,
                    k,
                    i,
                    defaults::N_MAX,
                    defaults::ENUM_LIMIT,
                )
                .map(|r| vec![r])
            }
            Job::Machinery(k) => verify_machinery(k, defaults::Q_ORDER, defaults::J_MAX),
        })
        .collect();
    let mut out = Vec::new();
    for r in results {
        out.extend(r?);
    }
    Ok(out)
}
