//! Acceptance suite. Runs every criterion at its stated range and time
//! budget and prints one PASS/FAIL line per criterion.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

use overpart_core::overpartition::{admissible_overpartitions, specialize_overpartition};
use overpart_core::partition::{c_partitions, count_b_table, enumerate_partitions, satisfies_c};
use overpart_core::series::{pochhammer_inf, BivariateSeries, Monomial, QSeries};
use overpart_core::verify::{self, CorollaryOracles, OverpartitionOracles, SchurOracles};
use overpart_core::{Identity, Partition, Phrasing, RSequence, Status, VerificationReport};

type Outcome = Result<Vec<String>, String>;

struct Criterion {
    name: &'static str,
    budget: Duration,
    run: fn() -> Outcome,
}

fn all_pass(reports: &[VerificationReport]) -> Outcome {
    let mut lines = Vec::new();
    for r in reports {
        if !r.passed() {
            return Err(r.to_string());
        }
        lines.push(r.to_string().lines().next().unwrap_or_default().to_owned());
    }
    Ok(lines)
}

fn golden() -> Outcome {
    let r = verify::golden_example_n10();
    if !r.passed() {
        return Err(r.to_string());
    }
    let b = verify::golden_product_side();
    let c = verify::golden_sum_side();
    if b.len() != 10 || c.len() != 10 {
        return Err(format!("list sizes {} and {}", b.len(), c.len()));
    }
    Ok(vec![r.to_string()])
}

fn overpartitions() -> Outcome {
    let mut reports = Vec::new();
    for k in 2..=5 {
        reports.push(verify::verify_overpartition(k, 22, 22).map_err(|e| e.to_string())?);
    }
    all_pass(&reports)
}

fn corollary_grid() -> Outcome {
    let mut reports = Vec::new();
    for k in 2..=5 {
        for i in 0..k {
            let r = verify::verify_corollary(k, i, 200, 25).map_err(|e| e.to_string())?;
            let wants_note = i == 0 || i == k - 1;
            if wants_note && r.passed() && r.notes.is_empty() {
                return Err(format!("k={k} i={i}: special phrasing was not checked"));
            }
            reports.push(r);
        }
    }
    all_pass(&reports)
}

fn schur() -> Outcome {
    all_pass(&[verify::verify_schur(40)])
}

fn machinery() -> Outcome {
    let mut reports = Vec::new();
    for k in 2..=4 {
        reports.extend(verify::verify_machinery(k, 60, 65).map_err(|e| e.to_string())?);
    }
    for check in ["functional-equation", "closed-product", "appell-limit", "bounded-enumeration"] {
        if reports.iter().filter(|r| r.check == check).count() != 3 {
            return Err(format!("missing {check} reports"));
        }
    }
    all_pass(&reports)
}

fn series_strategy(order: usize) -> impl Strategy<Value = QSeries> {
    prop::collection::vec(-20i64..=20, order + 1).prop_map(|c| QSeries::from_i64s(&c))
}

fn bivariate_strategy(q_order: usize, a_order: usize) -> impl Strategy<Value = BivariateSeries> {
    prop::collection::vec(prop::collection::vec(-9i64..=9, q_order + 1), a_order + 1)
        .prop_map(|rows| BivariateSeries::from_rows(rows.into_iter().map(|r| r.into_iter().map(BigInt::from).collect()).collect()))
}

fn runner() -> TestRunner {
    TestRunner::new_with_rng(
        Config {
            cases: 128,
            failure_persistence: None,
            ..Config::default()
        },
        TestRng::deterministic_rng(RngAlgorithm::ChaCha),
    )
}

fn ring_axioms() -> Result<(), String> {
    runner()
        .run(&(series_strategy(16), series_strategy(16), series_strategy(16)), |(a, b, c)| {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&(&a + &b) - &b, a.clone());
            prop_assert_eq!(&a * &QSeries::one(16), a);
            Ok(())
        })
        .map_err(|e| format!("q-series ring axioms: {e}"))?;
    runner()
        .run(
            &(bivariate_strategy(8, 3), bivariate_strategy(8, 3), bivariate_strategy(8, 3)),
            |(a, b, c)| {
                prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
                prop_assert_eq!(&a * &b, &b * &a);
                prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
                prop_assert_eq!(&a * &BivariateSeries::one(8, 3), a);
                Ok(())
            },
        )
        .map_err(|e| format!("bivariate ring axioms: {e}"))
}

fn pentagonal() -> Result<(), String> {
    let order = 200;
    let mut expected = vec![0i64; order + 1];
    for j in 0i64.. {
        let g = (j * (3 * j - 1) / 2) as usize;
        if g > order {
            break;
        }
        let sign = if j % 2 == 0 { 1 } else { -1 };
        expected[g] = sign;
        let h = (j * (3 * j + 1) / 2) as usize;
        if j > 0 && h <= order {
            expected[h] = sign;
        }
    }
    let euler = QSeries::euler(order);
    if euler != QSeries::from_i64s(&expected) {
        return Err("(q;q)_inf differs from the pentagonal expansion".into());
    }
    // 1/(q;q)_inf against partition numbers by direct enumeration
    let inverse = euler.invert_unit().map_err(|e| e.to_string())?;
    for n in 0..=40 {
        if *inverse.coeff(n) != BigInt::from(enumerate_partitions(n).count()) {
            return Err(format!("p({n}) disagrees with 1/(q;q)_inf"));
        }
    }
    Ok(())
}

fn specialization() -> Result<Vec<String>, String> {
    let mut lines = Vec::new();
    for k in 2..=5 {
        for i in 0..k {
            // injectivity and membership over every admissible overpartition of weight <= 12
            let mut seen: BTreeMap<Partition, String> = BTreeMap::new();
            for w in 0..=12 {
                for o in admissible_overpartitions(w, k, None).map_err(|e| e.to_string())? {
                    let image = specialize_overpartition(&o, i, k).map_err(|e| e.to_string())?;
                    if !satisfies_c(&image, k, i, Phrasing::Corollary) {
                        return Err(format!("k={k} i={i}: image {image} of {o} is not a C-side partition"));
                    }
                    if let Some(prev) = seen.insert(image.clone(), o.to_string()) {
                        return Err(format!("k={k} i={i}: {prev} and {o} share the image {image}"));
                    }
                }
            }
            // surjectivity onto the C-side
            let r = verify::verify_specialization(k, i, 24).map_err(|e| e.to_string())?;
            if !r.passed() {
                return Err(r.to_string());
            }
            lines.push(r.to_string());
        }
    }
    Ok(lines)
}

fn expect_fail(r: &VerificationReport, what: &str) -> Result<(), String> {
    if r.status != Status::Fail || r.witness.is_none() {
        return Err(format!("{what}: mutation was not detected\n{r}"));
    }
    Ok(())
}

fn mutations() -> Result<(), String> {
    let e = |e: overpart_core::Error| e.to_string();

    // numerator (-aq^2; q^k)_inf loses the single part 1-bar
    let oracles = OverpartitionOracles {
        product: |k, q, a| {
            let num = pochhammer_inf(Monomial::plus_aq(2), k, q, a)?;
            Ok(num.mul_q(&QSeries::euler(q).invert_unit()?))
        },
        ..Default::default()
    };
    let r = verify::verify_overpartition_with(&oracles, 3, 22, 22).map_err(e)?;
    expect_fail(&r, "overpartition")?;
    let w = r.witness.as_ref().unwrap();
    if (w.n, w.m, w.lhs.as_str(), w.rhs.as_str()) != (1, Some(1), "1", "0") {
        return Err(format!("overpartition: wrong witness\n{r}"));
    }

    // C-side forgetting the smallest-odd-part bound
    let oracles = CorollaryOracles {
        c_side: |n, k, _, ph| match ph {
            Phrasing::Corollary => c_partitions(n, k, 0, ph),
            _ => Ok(Vec::new()),
        },
        ..Default::default()
    };
    let r = verify::verify_corollary_with(&oracles, Identity::Corollary, 4, 2, 200, 25).map_err(e)?;
    expect_fail(&r, "corollary")?;
    let w = r.witness.as_ref().unwrap();
    if w.n != 1 || w.objects.len() != 2 || w.objects[1].items != ["1"] {
        return Err(format!("corollary: wrong witness\n{r}"));
    }

    // DP off by one past the enumeration limit
    let oracles = CorollaryOracles {
        b_dp: |n_max, k, i| {
            let mut t = count_b_table(n_max, k, i)?;
            if let Some(c) = t.get_mut(137) {
                *c += 1;
            }
            Ok(t)
        },
        ..Default::default()
    };
    let r = verify::verify_corollary_with(&oracles, Identity::Corollary, 5, 3, 200, 25).map_err(e)?;
    expect_fail(&r, "corollary dp")?;
    if r.witness.as_ref().unwrap().n != 137 {
        return Err(format!("corollary dp: wrong witness\n{r}"));
    }

    // gap condition without the multiple-of-3 rule
    let r = verify::verify_schur_with(
        &SchurOracles {
            gap_side: |n| {
                enumerate_partitions(n)
                    .filter(|l| l.parts().windows(2).all(|w| w[0] - w[1] >= 3))
                    .collect()
            },
            ..Default::default()
        },
        40,
    );
    expect_fail(&r, "schur")?;
    let w = r.witness.as_ref().unwrap();
    if w.n != 9 || !w.objects[1].items.iter().any(|s| s == "6+3") {
        return Err(format!("schur: wrong witness\n{r}"));
    }

    // one corrupted coefficient in R_5
    let mut rs = RSequence::build(3, 65, 60, 60).map_err(e)?;
    *rs.term_mut(5).coeff_mut(1, 9) += 1;
    let reports = verify::verify_machinery_on(&rs).map_err(e)?;
    for check in ["functional-equation", "closed-product", "bounded-enumeration"] {
        let r = reports.iter().find(|r| r.check == check).unwrap();
        expect_fail(r, check)?;
        let w = r.witness.as_ref().unwrap();
        if (w.j, w.m, w.n) != (Some(5), Some(1), 9) {
            return Err(format!("{check}: wrong witness\n{r}"));
        }
    }

    // golden lists with one entry swapped
    let mut wrong = verify::golden_product_side();
    wrong[0] = Partition::from_parts(vec![7, 3]);
    let r = verify::golden_example_against(&wrong, &verify::golden_sum_side());
    expect_fail(&r, "golden")?;
    let w = r.witness.as_ref().unwrap();
    if w.objects[0].items != ["9+1"] || w.objects[1].items != ["7+3"] {
        return Err(format!("golden: wrong witness\n{r}"));
    }

    // budget exhaustion is reported as aborted, not as a pass
    let oracles = OverpartitionOracles {
        budget: 1000,
        ..Default::default()
    };
    let r = verify::verify_overpartition_with(&oracles, 2, 22, 22).map_err(e)?;
    if !matches!(r.status, Status::Aborted(_)) {
        return Err(format!("budget: expected an aborted report\n{r}"));
    }
    Ok(())
}

fn properties() -> Outcome {
    ring_axioms()?;
    pentagonal()?;
    let mut lines = specialization()?;
    mutations()?;
    lines.push("ring axioms, pentagonal oracle and mutation checks passed".into());
    Ok(lines)
}

fn main() -> ExitCode {
    let criteria = [
        Criterion {
            name: "1 golden example n=10",
            budget: Duration::from_secs(1),
            run: golden,
        },
        Criterion {
            name: "2 D_k against the product, k=2..5, n<=22",
            budget: Duration::from_secs(60),
            run: overpartitions,
        },
        Criterion {
            name: "3 B = C = product grid, k=2..5, n<=25 / n<=200",
            budget: Duration::from_secs(90),
            run: corollary_grid,
        },
        Criterion {
            name: "4 Schur, n<=40",
            budget: Duration::from_secs(30),
            run: schur,
        },
        Criterion {
            name: "5 recursion machinery, k=2..4, q_order 60, j_max 65",
            budget: Duration::from_secs(60),
            run: machinery,
        },
        Criterion {
            name: "6 property suites and mutations",
            budget: Duration::from_secs(120),
            run: properties,
        },
    ];
    let verbose = std::env::args().any(|a| a == "--verbose" || a == "-v");
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let (ok, detail) = match outcome {
            Ok(lines) if elapsed <= c.budget => (true, lines.join("\n  ")),
            Ok(_) => (false, format!("over budget of {:?}", c.budget)),
            Err(msg) => (false, msg),
        };
        println!(
            "{} criterion {} ({:.2}s, limit {}s)",
            if ok { "PASS" } else { "FAIL" },
            c.name,
            elapsed.as_secs_f64(),
            c.budget.as_secs()
        );
        if !ok || verbose {
            println!("  {detail}");
        }
        failed += usize::from(!ok);
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
