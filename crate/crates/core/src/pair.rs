//! Classification data of a variety: the `(p, q, m)` input pair, the
//! derived constants `(k, a, b, alpha, beta, t)`, the toricity test, the
//! weight semigroup with its minimal generators, and the exponent
//! sequences `(e_i, l_i, n_i)` attached to the continued-fraction
//! convergents.

use std::collections::HashSet;

use num::{Integer, One, Signed, ToPrimitive, Zero};

use crate::error::Error;
use crate::exact::{gcd, int, HjExpansion, Int};

/// A validated classification pair: height `p/q` in lowest terms and
/// degree `m`. The smooth case is exactly `p = q`, stored normalized as
/// `p = q = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PopovPair {
    pub p: Int,
    pub q: Int,
    pub m: Int,
    pub smooth: bool,
}

impl PopovPair {
    pub fn new(p: i64, q: i64, m: i64) -> Result<Self, Error> {
        validate_pair(&int(p), &int(q), &int(m))
    }

    pub fn q_minus_p(&self) -> Int {
        &self.q - &self.p
    }
}

/// Validates `(p, q, m)`. Heights above 1 and non-reduced fractions with
/// `p < q` are rejected; `p = q` is accepted as the smooth case and
/// normalized to height `1/1`.
pub fn validate_pair(p: &Int, q: &Int, m: &Int) -> Result<PopovPair, Error> {
    if !p.is_positive() {
        return Err(Error::InvalidPair(format!("p must be positive, got {p}")));
    }
    if !m.is_positive() {
        return Err(Error::InvalidPair(format!("m must be positive, got {m}")));
    }
    if q < p {
        return Err(Error::InvalidPair(format!("height {p}/{q} exceeds 1")));
    }
    if p == q {
        return Ok(PopovPair {
            p: Int::one(),
            q: Int::one(),
            m: m.clone(),
            smooth: true,
        });
    }
    if !gcd(p, q).is_one() {
        return Err(Error::InvalidPair(format!(
            "height {p}/{q} is not in lowest terms"
        )));
    }
    Ok(PopovPair {
        p: p.clone(),
        q: q.clone(),
        m: m.clone(),
        smooth: false,
    })
}

/// The constants derived from a non-smooth pair:
/// `k = gcd(m, q-p)`, `a = m/k`, `b = (q-p)/k`, the division
/// `mp = alpha (q-p) + beta` and `t = (q-p-beta)/k = (alpha+1) b - a p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivedInvariants {
    pub k: Int,
    pub a: Int,
    pub b: Int,
    pub alpha: Int,
    pub beta: Int,
    pub t: Int,
}

pub fn derive_invariants(pair: &PopovPair) -> Result<DerivedInvariants, Error> {
    if pair.smooth {
        return Err(Error::SmoothCaseUnsupported);
    }
    let qp = pair.q_minus_p();
    let k = gcd(&pair.m, &qp);
    let a = &pair.m / &k;
    let b = &qp / &k;
    let mp = &pair.m * &pair.p;
    let alpha = mp.div_floor(&qp);
    let beta = mp.mod_floor(&qp);
    let t = (&qp - &beta) / &k;
    debug_assert_eq!(t, (&alpha + 1) * &b - &a * &pair.p);
    debug_assert!(gcd(&b, &t).is_one());
    Ok(DerivedInvariants { k, a, b, alpha, beta, t })
}

/// `true` exactly when `q - p` divides `m`; equivalently `beta = 0`,
/// equivalently `b = t` (in fact `b = t = 1`).
pub fn is_toric(pair: &PopovPair) -> Result<bool, Error> {
    if pair.smooth {
        return Err(Error::SmoothCaseUnsupported);
    }
    Ok((&pair.m % pair.q_minus_p()).is_zero())
}

/// Minimal generating set of the weight semigroup
/// `{(u1, u2) >= 0 : q u2 <= p u1, m | (u1 - u2)}`, found by a bounded
/// scan whose bound is certified by a saturation check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemigroupGenerators {
    /// Sorted lexicographically.
    pub gens: Vec<(Int, Int)>,
    /// The scan bound that was certified.
    pub scan_bound: Int,
}

/// Membership test exposed for oracles and the report.
pub fn semigroup_contains(pair: &PopovPair, u1: &Int, u2: &Int) -> bool {
    !u1.is_negative()
        && !u2.is_negative()
        && &(&pair.q * u2) <= &(&pair.p * u1)
        && (u1 - u2).mod_floor(&pair.m).is_zero()
}

/// Scans `u1 <= bound`, keeps the elements that are not a sum of two
/// nonzero elements, then certifies the result: every semigroup point
/// with `u1` up to twice the largest generator coordinate must decompose
/// into the candidates. On failure the bound doubles and the scan
/// repeats.
pub fn semigroup_generators(pair: &PopovPair) -> Result<SemigroupGenerators, Error> {
    let p = pair
        .p
        .to_i64()
        .ok_or_else(|| Error::BoundFailure("p too large to enumerate".into()))?;
    let q = pair.q.to_i64().unwrap_or(i64::MAX);
    let m = pair
        .m
        .to_i64()
        .ok_or_else(|| Error::BoundFailure("m too large to enumerate".into()))?;
    if q == i64::MAX {
        return Err(Error::BoundFailure("q too large to enumerate".into()));
    }

    let mut bound: i64 = q * (m + q);
    loop {
        if bound > 1 << 24 {
            return Err(Error::BoundFailure(format!(
                "semigroup scan did not saturate below u1 = {bound}"
            )));
        }
        let mut gens: Vec<(i64, i64)> = Vec::new();
        let mut members: HashSet<(i64, i64)> = HashSet::new();
        // lexicographic scan; every candidate sees all smaller members first
        for u1 in 0..=bound {
            let mut u2 = u1 % m;
            while q * u2 <= p * u1 {
                if (u1, u2) != (0, 0) {
                    let decomposable = gens.iter().any(|&(g1, g2)| {
                        g1 <= u1 && g2 <= u2 && {
                            let (v1, v2) = (u1 - g1, u2 - g2);
                            (v1, v2) != (0, 0) && members.contains(&(v1, v2))
                        }
                    });
                    if !decomposable {
                        gens.push((u1, u2));
                    }
                }
                members.insert((u1, u2));
                u2 += m;
            }
        }

        let max_gen = gens.iter().map(|&(g1, _)| g1).max().unwrap_or(0);
        let sat_bound = (2 * max_gen).min(bound);
        if 2 * max_gen > bound {
            // the certification box outgrew the scan; rescan larger
            bound *= 2;
            continue;
        }
        // saturation: everything in the box is a sum of candidates
        let mut reachable: HashSet<(i64, i64)> = HashSet::new();
        reachable.insert((0, 0));
        let mut frontier: Vec<(i64, i64)> = vec![(0, 0)];
        while let Some((x1, x2)) = frontier.pop() {
            for &(g1, g2) in &gens {
                let (y1, y2) = (x1 + g1, x2 + g2);
                if y1 <= sat_bound && reachable.insert((y1, y2)) {
                    frontier.push((y1, y2));
                }
            }
        }
        let saturated = members
            .iter()
            .filter(|&&(u1, _)| u1 <= sat_bound)
            .all(|pt| reachable.contains(pt));
        if saturated {
            gens.sort();
            return Ok(SemigroupGenerators {
                gens: gens.into_iter().map(|(a, b)| (int(a), int(b))).collect(),
                scan_bound: int(bound),
            });
        }
        bound *= 2;
    }
}

/// The sequences `e_i`, `l_i`, `n_i` for `0 <= i <= r+1`.
///
/// For `i <= r` these follow the convergent formulas
/// `e_i = (alpha+1+m) P_i - Q_i`, `l_i = (alpha+1) P_i - Q_i`,
/// `n_i = -p e_i + q l_i`. The terminal entry is `(aq, ap, 0)`; in the
/// degenerate expansion (`r = 0`, the toric case) the raw formula with
/// `Q_1 = 0` would miss it, so the terminal entry is pinned explicitly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceTable {
    pub e: Vec<Int>,
    pub l: Vec<Int>,
    pub n: Vec<Int>,
}

impl SequenceTable {
    /// Number of entries minus one, i.e. `r + 1`.
    pub fn last_index(&self) -> usize {
        self.e.len() - 1
    }
}

pub fn eln_sequences(
    inv: &DerivedInvariants,
    hj: &HjExpansion,
    pair: &PopovPair,
) -> Result<SequenceTable, Error> {
    if pair.smooth {
        return Err(Error::SmoothCaseUnsupported);
    }
    if hj.b != inv.b || hj.t != inv.t {
        return Err(Error::InvalidArgument(format!(
            "expansion of {}/{} does not match invariants b = {}, t = {}",
            hj.b, hj.t, inv.b, inv.t
        )));
    }
    let r = hj.depth();
    let mut e = Vec::with_capacity(r + 2);
    let mut l = Vec::with_capacity(r + 2);
    let mut n = Vec::with_capacity(r + 2);
    for i in 0..=r + 1 {
        let (ei, li) = if i == r + 1 && r == 0 {
            (&inv.a * &pair.q, &inv.a * &pair.p)
        } else {
            (
                (&inv.alpha + 1 + &pair.m) * &hj.pconv[i] - &hj.qconv[i],
                (&inv.alpha + 1) * &hj.pconv[i] - &hj.qconv[i],
            )
        };
        let ni = -(&pair.p * &ei) + &pair.q * &li;
        e.push(ei);
        l.push(li);
        n.push(ni);
    }
    debug_assert_eq!(e[r + 1], &inv.a * &pair.q);
    debug_assert_eq!(l[r + 1], &inv.a * &pair.p);
    debug_assert!(n[r + 1].is_zero());
    Ok(SequenceTable { e, l, n })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::hj_expand;

    fn pair(p: i64, q: i64, m: i64) -> PopovPair {
        PopovPair::new(p, q, m).unwrap()
    }

    fn in_semigroup(p: i64, q: i64, m: i64, u1: i64, u2: i64) -> bool {
        u1 >= 0 && u2 >= 0 && q * u2 <= p * u1 && (u1 - u2) % m == 0
    }

    fn gens_i64(sg: &SemigroupGenerators) -> Vec<(i64, i64)> {
        sg.gens
            .iter()
            .map(|(a, b)| (a.to_i64().unwrap(), b.to_i64().unwrap()))
            .collect()
    }

    #[test]
    fn validate_examples() {
        let ok = pair(1, 4, 2);
        assert!(!ok.smooth);
        assert!(PopovPair::new(2, 4, 1).is_err());
        let smooth = pair(3, 3, 5);
        assert!(smooth.smooth);
        assert_eq!(smooth.p, int(1));
        assert!(PopovPair::new(0, 4, 2).is_err());
        assert!(PopovPair::new(5, 4, 2).is_err());
        assert!(PopovPair::new(1, 4, 0).is_err());
    }

    #[test]
    fn invariants_1_4_2() {
        let inv = derive_invariants(&pair(1, 4, 2)).unwrap();
        assert_eq!(
            (inv.k, inv.a, inv.b, inv.alpha, inv.beta, inv.t),
            (int(1), int(2), int(3), int(0), int(2), int(1))
        );
    }

    #[test]
    fn invariants_1_3_3() {
        // direct evaluation of the defining divisions
        let inv = derive_invariants(&pair(1, 3, 3)).unwrap();
        assert_eq!(
            (inv.k, inv.a, inv.b, inv.alpha, inv.beta, inv.t),
            (int(1), int(3), int(2), int(1), int(1), int(1))
        );
    }

    #[test]
    fn invariants_1_2_1_toric() {
        // mp = 1 = 1*(q-p) + 0 forces alpha = 1, and both expressions
        // for t agree on 1
        let inv = derive_invariants(&pair(1, 2, 1)).unwrap();
        assert_eq!(
            (inv.k, inv.a, inv.b, inv.alpha, inv.beta, inv.t),
            (int(1), int(1), int(1), int(1), int(0), int(1))
        );
    }

    #[test]
    fn toricity() {
        assert!(is_toric(&pair(1, 2, 1)).unwrap());
        assert!(!is_toric(&pair(1, 4, 2)).unwrap());
        assert!(is_toric(&pair(2, 5, 3)).unwrap());
        assert!(is_toric(&pair(3, 3, 5)).is_err());
    }

    #[test]
    fn toric_iff_b_is_one() {
        for q in 2i64..=9 {
            for p in 1..q {
                if !int(p).gcd(&int(q)).is_one() {
                    continue;
                }
                for m in 1..=9 {
                    let pr = pair(p, q, m);
                    let inv = derive_invariants(&pr).unwrap();
                    assert_eq!(is_toric(&pr).unwrap(), inv.b.is_one(), "({p},{q},{m})");
                }
            }
        }
    }

    /// Independent oracle: exhaustive scan plus greedy decomposition over
    /// a fixed box, no reuse of the production scan.
    fn oracle_generators(p: i64, q: i64, m: i64, box_i: i64) -> Vec<(i64, i64)> {
        let mut members = Vec::new();
        for u1 in 0..=box_i {
            for u2 in 0..=u1 {
                if in_semigroup(p, q, m, u1, u2) && (u1, u2) != (0, 0) {
                    members.push((u1, u2));
                }
            }
        }
        let set: HashSet<_> = members.iter().cloned().collect();
        members
            .iter()
            .filter(|&&(u1, u2)| {
                !members.iter().any(|&(v1, v2)| {
                    v1 <= u1 && v2 <= u2 && (v1, v2) != (u1, u2) && set.contains(&(u1 - v1, u2 - v2))
                })
            })
            .cloned()
            .collect()
    }

    #[test]
    fn semigroup_1_4_2() {
        let sg = semigroup_generators(&pair(1, 4, 2)).unwrap();
        assert_eq!(gens_i64(&sg), vec![(2, 0), (5, 1), (8, 2)]);
    }

    #[test]
    fn semigroup_1_3_3() {
        let sg = semigroup_generators(&pair(1, 3, 3)).unwrap();
        let expected = oracle_generators(1, 3, 3, 27);
        assert_eq!(gens_i64(&sg), expected);
        assert_eq!(gens_i64(&sg), vec![(3, 0), (4, 1), (9, 3)]);
    }

    #[test]
    fn semigroup_1_2_1() {
        let sg = semigroup_generators(&pair(1, 2, 1)).unwrap();
        let expected = oracle_generators(1, 2, 1, 12);
        assert_eq!(gens_i64(&sg), expected);
        assert_eq!(gens_i64(&sg), vec![(1, 0), (2, 1)]);
    }

    #[test]
    fn semigroup_matches_oracle_on_small_sweep() {
        for q in 2i64..=7 {
            for p in 1..q {
                if !int(p).gcd(&int(q)).is_one() {
                    continue;
                }
                for m in 1..=7 {
                    let sg = semigroup_generators(&pair(p, q, m)).unwrap();
                    let expected = oracle_generators(p, q, m, q * (m + q));
                    assert_eq!(gens_i64(&sg), expected, "({p},{q},{m})");
                }
            }
        }
    }

    #[test]
    fn sequences_1_4_2() {
        let pr = pair(1, 4, 2);
        let inv = derive_invariants(&pr).unwrap();
        let hj = hj_expand(&inv.b, &inv.t).unwrap();
        let seq = eln_sequences(&inv, &hj, &pr).unwrap();
        assert_eq!(seq.e, vec![int(1), int(3), int(8)]);
        assert_eq!(seq.l, vec![int(1), int(1), int(2)]);
        assert_eq!(seq.n, vec![int(3), int(1), int(0)]);
    }

    #[test]
    fn sequences_1_3_3() {
        // formula evaluation, cross-checked in-place against n_i = k(t P_i - b Q_i)
        let pr = pair(1, 3, 3);
        let inv = derive_invariants(&pr).unwrap();
        let hj = hj_expand(&inv.b, &inv.t).unwrap();
        let seq = eln_sequences(&inv, &hj, &pr).unwrap();
        assert_eq!(seq.e, vec![int(1), int(5), int(9)]);
        assert_eq!(seq.l, vec![int(1), int(2), int(3)]);
        assert_eq!(seq.n, vec![int(2), int(1), int(0)]);
        for i in 0..=hj.depth() {
            assert_eq!(
                seq.n[i],
                &inv.k * (&inv.t * &hj.pconv[i] - &inv.b * &hj.qconv[i])
            );
        }
    }

    #[test]
    fn sequences_reject_mismatched_expansion() {
        let pr = pair(1, 4, 2);
        let inv = derive_invariants(&pr).unwrap();
        let wrong = hj_expand(&int(5), &int(3)).unwrap();
        assert!(eln_sequences(&inv, &wrong, &pr).is_err());
    }

    #[test]
    fn terminal_entry_always_zero() {
        for q in 2i64..=9 {
            for p in 1..q {
                if !int(p).gcd(&int(q)).is_one() {
                    continue;
                }
                for m in 1..=9 {
                    let pr = pair(p, q, m);
                    let inv = derive_invariants(&pr).unwrap();
                    let hj = hj_expand(&inv.b, &inv.t).unwrap();
                    let seq = eln_sequences(&inv, &hj, &pr).unwrap();
                    assert!(seq.n.last().unwrap().is_zero(), "({p},{q},{m})");
                    assert_eq!(*seq.e.last().unwrap(), &inv.a * &pr.q);
                    assert_eq!(*seq.l.last().unwrap(), &inv.a * &pr.p);
                }
            }
        }
    }
}
