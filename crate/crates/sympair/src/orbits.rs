//! Nilpotent orbit types in the odd part g^σ for the equal-rank pair
//! (gl_{2n}, gl_n × gl_n), encoded as balanced signed partitions, and the
//! per-orbit trace bound T = ½ Σ_{i,j} m_{ij} < 0.
//!
//! A nilpotent element decomposes the 2n-dimensional graded space into
//! irreducible graded sl₂ ladders; the orbit type records the multiset of
//! ladder dimensions r with their highest-weight parities w. Equality of the
//! even and odd graded dimensions forces the number of odd parts with w = +1
//! to equal the number with w = −1.

use std::cmp::Reverse;
use std::fmt;

use num::Zero;
use thiserror::Error;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::graded::{m_closed_form, Parity};
use crate::rational::{rat, rint, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OrbitError {
    #[error("parts must have size >= 1")]
    ZeroPart,
    #[error("part sizes sum to {0}, which is odd")]
    OddTotal(u64),
    #[error("unbalanced odd parts: {plus} with parity + vs {minus} with parity -")]
    Unbalanced { plus: usize, minus: usize },
    #[error("empty orbit")]
    Empty,
}

/// A balanced signed partition of 2n: the multiset of (r, w) pairs describing
/// one nilpotent orbit type. Parts are kept in canonical order (decreasing r,
/// then + before −), with multiplicity expanded into repeated entries.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SignedOrbit {
    parts: Vec<(u32, Parity)>,
    n: u32,
}

fn canonical_sort(parts: &mut [(u32, Parity)]) {
    parts.sort_by_key(|&(r, w)| (Reverse(r), w));
}

impl SignedOrbit {
    /// Validates and canonicalizes a multiset of parts.
    pub fn from_parts(mut parts: Vec<(u32, Parity)>) -> Result<Self, OrbitError> {
        if parts.is_empty() {
            return Err(OrbitError::Empty);
        }
        if parts.iter().any(|&(r, _)| r == 0) {
            return Err(OrbitError::ZeroPart);
        }
        let total: u64 = parts.iter().map(|&(r, _)| u64::from(r)).sum();
        if !total.is_multiple_of(2) {
            return Err(OrbitError::OddTotal(total));
        }
        let plus = parts.iter().filter(|&&(r, w)| r % 2 == 1 && w == Parity::Plus).count();
        let minus = parts.iter().filter(|&&(r, w)| r % 2 == 1 && w == Parity::Minus).count();
        if plus != minus {
            return Err(OrbitError::Unbalanced { plus, minus });
        }
        canonical_sort(&mut parts);
        Ok(Self {
            parts,
            n: u32::try_from(total / 2).expect("desk-scale n"),
        })
    }

    pub fn parts(&self) -> &[(u32, Parity)] {
        &self.parts
    }

    pub fn n(&self) -> u32 {
        self.n
    }
}

impl fmt::Display for SignedOrbit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rendered: Vec<String> = self
            .parts
            .iter()
            .map(|&(r, w)| format!("({r},{w})"))
            .collect();
        write!(f, "[{}]", rendered.join(","))
    }
}

/// Enumerates every SignedOrbit for a given n, in canonical lexicographic
/// order (part sequences compared with r decreasing, + before −).
pub fn enumerate_orbits(n: u32) -> Vec<SignedOrbit> {
    assert!(n >= 1, "n must be >= 1");
    let total = 2 * n;
    let mut out = Vec::new();
    let mut cur: Vec<(u32, Parity)> = Vec::new();
    extend(total, (total, Parity::Plus), 0, &mut cur, &mut out);
    out
}

fn extend(
    remaining: u32,
    last: (u32, Parity),
    balance: i64,
    cur: &mut Vec<(u32, Parity)>,
    out: &mut Vec<SignedOrbit>,
) {
    if remaining == 0 {
        if balance == 0 {
            let total: u32 = cur.iter().map(|&(r, _)| r).sum();
            out.push(SignedOrbit {
                parts: cur.clone(),
                n: total / 2,
            });
        }
        return;
    }
    // Every odd part moves the balance by one and costs at least one unit.
    if balance.unsigned_abs() > u64::from(remaining) {
        return;
    }
    for r in (1..=last.0.min(remaining)).rev() {
        for w in [Parity::Plus, Parity::Minus] {
            if r == last.0 && w < last.1 {
                continue; // keep the sequence nondecreasing in canonical order
            }
            let nb = if r % 2 == 1 { balance + w.sign() } else { balance };
            cur.push((r, w));
            extend(remaining - r, (r, w), nb, cur, out);
            cur.pop();
        }
    }
}

/// Per-orbit evaluation of the trace bound: the matrix m_{ij} over the
/// expanded parts, T = ½ Σ_{i,j} m_{ij}, and the trace value 2n² + T that a
/// matrix-level computation must reproduce.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KeyLemmaReport {
    pub orbit: SignedOrbit,
    pub m_matrix: Vec<Vec<i64>>,
    pub t: Rational,
    pub trace_value: Rational,
    pub passed: bool,
}

pub fn key_lemma_sum(orbit: &SignedOrbit) -> KeyLemmaReport {
    let parts = orbit.parts();
    let count = parts.len();
    let mut m_matrix = vec![vec![0i64; count]; count];
    let mut total: i64 = 0;
    for i in 0..count {
        for j in 0..count {
            let (ri, wi) = parts[i];
            let (rj, wj) = parts[j];
            let m = m_closed_form(ri, wi, rj, wj);
            m_matrix[i][j] = m;
            total += m;
        }
    }
    let t = rat(total, 2);
    let n = i64::from(orbit.n());
    let trace_value = rint(2 * n * n) + &t;
    let passed = t < Rational::zero();
    KeyLemmaReport {
        orbit: orbit.clone(),
        m_matrix,
        t,
        trace_value,
        passed,
    }
}

/// Reports for a slice of orbits, preserving input (canonical) order.
/// Evaluates in parallel when the `parallel` feature is enabled.
pub fn key_lemma_reports_of(orbits: &[SignedOrbit]) -> Vec<KeyLemmaReport> {
    #[cfg(feature = "parallel")]
    {
        key_lemma_reports_of_par(orbits)
    }
    #[cfg(not(feature = "parallel"))]
    {
        key_lemma_reports_of_seq(orbits)
    }
}

pub fn key_lemma_reports_of_seq(orbits: &[SignedOrbit]) -> Vec<KeyLemmaReport> {
    orbits.iter().map(key_lemma_sum).collect()
}

#[cfg(feature = "parallel")]
pub fn key_lemma_reports_of_par(orbits: &[SignedOrbit]) -> Vec<KeyLemmaReport> {
    orbits.par_iter().map(key_lemma_sum).collect()
}

/// All reports at level n, canonical order.
pub fn key_lemma_reports(n: u32) -> Vec<KeyLemmaReport> {
    key_lemma_reports_of(&enumerate_orbits(n))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifySummary {
    pub n: u32,
    pub orbit_count: usize,
    pub min_t: Rational,
    pub max_t: Rational,
    pub all_passed: bool,
}

/// Runs the trace bound over every orbit at level n.
pub fn verify_all(n: u32) -> VerifySummary {
    let reports = key_lemma_reports(n);
    summarize(n, &reports)
}

pub fn summarize(n: u32, reports: &[KeyLemmaReport]) -> VerifySummary {
    assert!(!reports.is_empty(), "no orbits at n={n}");
    let min_t = reports.iter().map(|r| r.t.clone()).min().unwrap();
    let max_t = reports.iter().map(|r| r.t.clone()).max().unwrap();
    VerifySummary {
        n,
        orbit_count: reports.len(),
        min_t,
        max_t,
        all_passed: reports.iter().all(|r| r.passed),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::Signed;
    use std::collections::BTreeSet;

    const P: Parity = Parity::Plus;
    const M: Parity = Parity::Minus;

    fn orbit(parts: &[(u32, Parity)]) -> SignedOrbit {
        SignedOrbit::from_parts(parts.to_vec()).unwrap()
    }

    #[test]
    fn invariants_are_enforced() {
        assert_eq!(
            SignedOrbit::from_parts(vec![(3, P)]),
            Err(OrbitError::OddTotal(3))
        );
        assert_eq!(
            SignedOrbit::from_parts(vec![(1, P), (1, P)]),
            Err(OrbitError::Unbalanced { plus: 2, minus: 0 })
        );
        assert_eq!(SignedOrbit::from_parts(vec![(0, P), (2, P)]), Err(OrbitError::ZeroPart));
    }

    #[test]
    fn canonical_part_order() {
        let o = orbit(&[(1, M), (3, P), (1, P), (3, M)]);
        assert_eq!(o.parts(), &[(3, P), (3, M), (1, P), (1, M)]);
        assert_eq!(o.n(), 4);
        assert_eq!(o.to_string(), "[(3,+),(3,-),(1,+),(1,-)]");
    }

    #[test]
    fn enumeration_golden_n1() {
        let orbits = enumerate_orbits(1);
        assert_eq!(
            orbits,
            vec![
                orbit(&[(2, P)]),
                orbit(&[(2, M)]),
                orbit(&[(1, P), (1, M)]),
            ]
        );
    }

    #[test]
    fn enumeration_counts_frozen() {
        // Confirmed against the brute-force generator below before freezing.
        let counts: Vec<usize> = (1..=4).map(|n| enumerate_orbits(n).len()).collect();
        assert_eq!(counts, vec![3, 10, 27, 69]);
    }

    /// Independent brute-force generator: all compositions of 2n into
    /// positive parts, all parity assignments, filtered and canonicalized.
    fn brute_force_orbits(n: u32) -> BTreeSet<Vec<(u32, Parity)>> {
        fn compositions(total: u32) -> Vec<Vec<u32>> {
            if total == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for first in 1..=total {
                for mut rest in compositions(total - first) {
                    rest.insert(0, first);
                    out.push(rest);
                }
            }
            out
        }
        let mut set = BTreeSet::new();
        for comp in compositions(2 * n) {
            let k = comp.len();
            for mask in 0..(1u32 << k) {
                let parts: Vec<(u32, Parity)> = comp
                    .iter()
                    .enumerate()
                    .map(|(i, &r)| (r, if mask & (1 << i) == 0 { P } else { M }))
                    .collect();
                if let Ok(o) = SignedOrbit::from_parts(parts) {
                    set.insert(o.parts().to_vec());
                }
            }
        }
        set
    }

    #[test]
    fn enumeration_matches_brute_force() {
        for n in 1..=4 {
            let fast: BTreeSet<Vec<(u32, Parity)>> = enumerate_orbits(n)
                .iter()
                .map(|o| o.parts().to_vec())
                .collect();
            let brute = brute_force_orbits(n);
            assert_eq!(fast, brute, "n={n}");
            assert_eq!(fast.len(), enumerate_orbits(n).len(), "duplicates at n={n}");
        }
    }

    #[test]
    fn enumeration_is_lexicographically_sorted() {
        for n in 1..=5 {
            let orbits = enumerate_orbits(n);
            let keys: Vec<Vec<(Reverse<u32>, Parity)>> = orbits
                .iter()
                .map(|o| o.parts().iter().map(|&(r, w)| (Reverse(r), w)).collect())
                .collect();
            let mut sorted = keys.clone();
            sorted.sort();
            assert_eq!(keys, sorted, "n={n}");
        }
    }

    #[test]
    fn key_lemma_golden_n1() {
        let r = key_lemma_sum(&orbit(&[(2, P)]));
        assert_eq!(r.m_matrix, vec![vec![-4]]);
        assert_eq!(r.t, rint(-2));
        assert_eq!(r.trace_value, rint(0));
        assert!(r.passed);

        let r = key_lemma_sum(&orbit(&[(1, P), (1, M)]));
        assert_eq!(r.m_matrix, vec![vec![-1, -1], vec![-1, -1]]);
        assert_eq!(r.t, rint(-2));
        assert_eq!(r.trace_value, rint(0));
        assert!(r.passed);
    }

    #[test]
    fn key_lemma_golden_n2() {
        let r = key_lemma_sum(&orbit(&[(3, P), (1, M)]));
        assert_eq!(r.m_matrix, vec![vec![-1, -3], vec![-3, -1]]);
        assert_eq!(r.t, rint(-4));
        assert_eq!(r.trace_value, rint(4));
        assert!(r.passed);
    }

    #[test]
    fn summaries_golden() {
        let s1 = verify_all(1);
        assert_eq!(s1.orbit_count, 3);
        assert!(s1.all_passed);
        assert_eq!(s1.max_t, rint(-2));

        let s2 = verify_all(2);
        assert_eq!(s2.orbit_count, 10);
        assert!(s2.all_passed);
        assert_eq!(s2.max_t, rint(-4));
    }

    #[test]
    fn t_is_half_integer_and_trace_is_integer() {
        for n in 1..=5 {
            for r in key_lemma_reports(n) {
                let doubled = &r.t * &rint(2);
                assert!(doubled.is_integer(), "2T not integral for {}", r.orbit);
                assert!(r.trace_value.is_integer(), "trace not integral for {}", r.orbit);
                // Symmetry of the m matrix.
                let k = r.m_matrix.len();
                for i in 0..k {
                    for j in 0..k {
                        assert_eq!(r.m_matrix[i][j], r.m_matrix[j][i]);
                    }
                }
            }
        }
    }

    #[test]
    fn all_even_orbits_have_nonpositive_entries() {
        for n in 1..=5 {
            for r in key_lemma_reports(n) {
                if r.orbit.parts().iter().all(|&(p, _)| p % 2 == 0) {
                    let k = r.m_matrix.len();
                    for i in 0..k {
                        assert!(r.m_matrix[i][i] < 0);
                        for j in 0..k {
                            assert!(r.m_matrix[i][j] <= 0);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn seq_and_par_paths_agree() {
        let orbits = enumerate_orbits(4);
        let seq = key_lemma_reports_of_seq(&orbits);
        let dispatched = key_lemma_reports_of(&orbits);
        assert_eq!(seq, dispatched);
        #[cfg(feature = "parallel")]
        {
            assert_eq!(seq, key_lemma_reports_of_par(&orbits));
        }
    }

    #[test]
    fn reports_t_negative_small_n() {
        for n in 1..=5 {
            for r in key_lemma_reports(n) {
                assert!(r.t.is_negative(), "T >= 0 for {}", r.orbit);
            }
        }
    }
}
