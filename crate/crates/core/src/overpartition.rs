//! Overpartitions and the admissibility rules for the marked-part family.
//!
//! An overpartition is stored per distinct part value. Only the last
//! occurrence of a value can carry the overline, so a value `v` has a
//! non-overlined occurrence exactly when its multiplicity is at least 2, or
//! it occurs once without the overline.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{check_k, check_ki, Result};
use crate::partition::{enumerate_partitions_bounded, Partition};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PartEntry {
    pub multiplicity: usize,
    pub overlined: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Overpartition {
    entries: BTreeMap<usize, PartEntry>,
}

impl Overpartition {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Builds an overpartition from its plain parts and its overlined parts.
    ///
    /// # Panics
    ///
    /// Panics if a value is overlined twice or a part is zero.
    pub fn from_parts(plain: &[usize], overlined: &[usize]) -> Self {
        let mut entries: BTreeMap<usize, PartEntry> = BTreeMap::new();
        for &v in plain {
            assert!(v > 0, "parts are positive");
            entries
                .entry(v)
                .or_insert(PartEntry {
                    multiplicity: 0,
                    overlined: false,
                })
                .multiplicity += 1;
        }
        for &v in overlined {
            assert!(v > 0, "parts are positive");
            let e = entries.entry(v).or_insert(PartEntry {
                multiplicity: 0,
                overlined: false,
            });
            assert!(!e.overlined, "value {v} overlined twice");
            e.multiplicity += 1;
            e.overlined = true;
        }
        Self { entries }
    }

    pub fn entries(&self) -> &BTreeMap<usize, PartEntry> {
        &self.entries
    }

    pub fn weight(&self) -> usize {
        self.entries.iter().map(|(v, e)| v * e.multiplicity).sum()
    }

    /// Number of overlined values.
    pub fn overline_count(&self) -> usize {
        self.entries.values().filter(|e| e.overlined).count()
    }

    pub fn is_overlined(&self, v: usize) -> bool {
        self.entries.get(&v).is_some_and(|e| e.overlined)
    }

    /// Whether `v` occurs at least once without the overline.
    pub fn has_plain_occurrence(&self, v: usize) -> bool {
        self.entries
            .get(&v)
            .is_some_and(|e| e.multiplicity >= 2 || !e.overlined)
    }

    pub fn max_part(&self) -> Option<usize> {
        self.entries.keys().next_back().copied()
    }

    pub fn max_overlined(&self) -> Option<usize> {
        self.overlined_values().next_back()
    }

    pub fn overlined_values(&self) -> impl DoubleEndedIterator<Item = usize> + '_ {
        self.entries
            .iter()
            .filter(|(_, e)| e.overlined)
            .map(|(&v, _)| v)
    }
}

impl fmt::Display for Overpartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return write!(f, "()");
        }
        let mut first = true;
        for (&v, e) in self.entries.iter().rev() {
            for occ in 0..e.multiplicity {
                if !first {
                    write!(f, "+")?;
                }
                first = false;
                if e.overlined && occ + 1 == e.multiplicity {
                    for d in v.to_string().chars() {
                        write!(f, "{d}\u{305}")?;
                    }
                } else {
                    write!(f, "{v}")?;
                }
            }
        }
        Ok(())
    }
}

fn multiplicities(lambda: &Partition) -> Vec<(usize, usize)> {
    // descending by value
    let mut out: Vec<(usize, usize)> = Vec::new();
    for &p in lambda.parts() {
        match out.last_mut() {
            Some((v, m)) if *v == p => *m += 1,
            _ => out.push((p, 1)),
        }
    }
    out
}

/// Every overpartition of `n` with parts at most `max_part` (unbounded when
/// `None`), each exactly once: partitions in lexicographically decreasing
/// order, then overline subsets in binary order.
pub fn enumerate_overpartitions(
    n: usize,
    max_part: Option<usize>,
) -> impl Iterator<Item = Overpartition> {
    enumerate_partitions_bounded(n, max_part.unwrap_or(n)).flat_map(|lambda| {
        let mults = multiplicities(&lambda);
        let subsets = 1u64 << mults.len();
        (0..subsets).map(move |mask| {
            let entries = mults
                .iter()
                .enumerate()
                .map(|(bit, &(v, m))| {
                    (
                        v,
                        PartEntry {
                            multiplicity: m,
                            overlined: mask >> bit & 1 == 1,
                        },
                    )
                })
                .collect();
            Overpartition { entries }
        })
    })
}

/// The two rules for an overlined part `b̄`:
/// (a) none of `b, b+1, ..., b+k-2` occurs as a non-overlined part, and
/// (b) none of `b+1, ..., b+k-1` is overlined.
pub fn is_dk_admissible(o: &Overpartition, k: usize) -> bool {
    o.overlined_values().all(|b| {
        (b..=b + k - 2).all(|v| !o.has_plain_occurrence(v))
            && (b + 1..=b + k - 1).all(|v| !o.is_overlined(v))
    })
}

/// Admissible overpartitions of `n` with parts at most `max_part`.
///
/// Overline choices are made from the largest value down, so both rules can
/// be checked as soon as a value is marked.
pub fn admissible_overpartitions(n: usize, k: usize, max_part: Option<usize>) -> Result<Vec<Overpartition>> {
    check_k(k)?;
    let mut out = Vec::new();
    for lambda in enumerate_partitions_bounded(n, max_part.unwrap_or(n)) {
        let mults = multiplicities(&lambda);
        let mut marks = vec![false; mults.len()];
        extend_marks(&mults, k, 0, &mut marks, &mut out);
    }
    Ok(out)
}

fn extend_marks(
    mults: &[(usize, usize)],
    k: usize,
    pos: usize,
    marks: &mut Vec<bool>,
    out: &mut Vec<Overpartition>,
) {
    if pos == mults.len() {
        let entries = mults
            .iter()
            .zip(marks.iter())
            .map(|(&(v, m), &overlined)| {
                (
                    v,
                    PartEntry {
                        multiplicity: m,
                        overlined,
                    },
                )
            })
            .collect();
        out.push(Overpartition { entries });
        return;
    }
    let (b, mult) = mults[pos];

    // leave b plain: a smaller overlined value decided later re-checks b
    marks[pos] = false;
    extend_marks(mults, k, pos + 1, marks, out);

    // overline b: every larger value is already decided
    let larger_ok = mults[..pos].iter().zip(marks.iter()).all(|(&(v, m), &over)| {
        let plain = m >= 2 || !over;
        let rule_a = !(v <= b + k - 2 && plain);
        let rule_b = !(v < b + k && over);
        rule_a && rule_b
    });
    if mult == 1 && larger_ok {
        marks[pos] = true;
        extend_marks(mults, k, pos + 1, marks, out);
        marks[pos] = false;
    }
}

/// `D_k(m, n)`: admissible overpartitions of `n` with exactly `m` overlined
/// parts.
pub fn count_dk(m: usize, n: usize, k: usize) -> Result<u64> {
    Ok(admissible_overpartitions(n, k, None)?
        .iter()
        .filter(|o| o.overline_count() == m)
        .count() as u64)
}

/// `table[n][m] = D_k(m, n)` for `n <= n_max`, `m <= m_max`.
pub fn dk_table(n_max: usize, m_max: usize, k: usize) -> Result<Vec<Vec<u64>>> {
    bounded_table(n_max, m_max, k, None, None)
}

/// `r_j(m, n)`: admissible overpartitions of `n` with `m` overlines, parts at
/// most `j`, and no overlined value above `j - k + 1`.
pub fn count_rj(m: usize, n: usize, j: usize, k: usize) -> Result<u64> {
    Ok(rj_table(n, m, j, k)?[n][m])
}

/// `p_j(m, n)`: admissible overpartitions of `n` with `m` overlines and parts
/// at most `j`.
pub fn count_pj(m: usize, n: usize, j: usize, k: usize) -> Result<u64> {
    Ok(pj_table(n, m, j, k)?[n][m])
}

pub fn rj_table(n_max: usize, m_max: usize, j: usize, k: usize) -> Result<Vec<Vec<u64>>> {
    check_k(k)?;
    // overlines at most j-k+1; when that is below 1 no overline is allowed
    let cap = (j + 1).saturating_sub(k);
    bounded_table(n_max, m_max, k, Some(j), Some(cap))
}

pub fn pj_table(n_max: usize, m_max: usize, j: usize, k: usize) -> Result<Vec<Vec<u64>>> {
    bounded_table(n_max, m_max, k, Some(j), None)
}

fn bounded_table(
    n_max: usize,
    m_max: usize,
    k: usize,
    max_part: Option<usize>,
    max_overlined: Option<usize>,
) -> Result<Vec<Vec<u64>>> {
    check_k(k)?;
    let mut table = vec![vec![0u64; m_max + 1]; n_max + 1];
    for (n, row) in table.iter_mut().enumerate() {
        for o in admissible_overpartitions(n, k, max_part)? {
            if let Some(cap) = max_overlined {
                if o.max_overlined().is_some_and(|b| b > cap) {
                    continue;
                }
            }
            let m = o.overline_count();
            if m <= m_max {
                row[m] += 1;
            }
        }
    }
    Ok(table)
}

/// Relabels parts: a plain occurrence of `j` becomes `2j` and an overlined
/// `j̄` becomes the odd part `2j + 2i - 1`.
///
/// The result has weight `2 |o| + (2i - 1) m` where `m` is the overline
/// count. Meant for admissible inputs, though any overpartition is accepted.
pub fn specialize_overpartition(o: &Overpartition, i: usize, k: usize) -> Result<Partition> {
    check_ki(k, i)?;
    let mut parts = Vec::with_capacity(o.entries.values().map(|e| e.multiplicity).sum());
    for (&v, e) in &o.entries {
        let plain = e.multiplicity - usize::from(e.overlined);
        parts.extend(std::iter::repeat(2 * v).take(plain));
        if e.overlined {
            parts.push(2 * v + 2 * i - 1);
        }
    }
    Ok(Partition::from_parts(parts))
}

/// Images under [`specialize_overpartition`] of all admissible
/// overpartitions whose image has weight `n`.
pub fn specialized_images(n: usize, k: usize, i: usize) -> Result<Vec<(Overpartition, Partition)>> {
    check_ki(k, i)?;
    let mut out = Vec::new();
    // image weight 2w + (2i-1)m with m <= w, so w <= n
    for w in 0..=n {
        for o in admissible_overpartitions(w, k, None)? {
            let m = o.overline_count();
            if 2 * w + 2 * i * m - m == n {
                let image = specialize_overpartition(&o, i, k)?;
                out.push((o, image));
            }
        }
    }
    Ok(out)
}
