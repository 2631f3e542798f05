//! Exact arbitrary-precision arithmetic: directed remainders and the
//! minus-sign (negative-regular) continued fraction with its convergents.

use num::{BigInt, BigRational, Integer, One, Signed, Zero};

use crate::error::Error;

/// All domain integers in this crate are arbitrary precision.
pub type Int = BigInt;

/// Convenience constructor used pervasively in code and tests.
pub fn int(v: i64) -> Int {
    Int::from(v)
}

/// Mathematical remainder of `m1` divided by `m2`: the unique value in
/// `[0, m2)` congruent to `m1`, independent of sign conventions.
pub fn rem(m1: &Int, m2: &Int) -> Result<Int, Error> {
    if !m2.is_positive() {
        return Err(Error::InvalidArgument(format!(
            "modulus must be positive, got {m2}"
        )));
    }
    Ok(m1.mod_floor(m2))
}

pub fn gcd(a: &Int, b: &Int) -> Int {
    a.gcd(b)
}

/// Expansion of `b/t` as `c_1 - 1/(c_2 - 1/(... - 1/c_r))` with every
/// `c_i >= 2`, plus the convergents `P_i`, `Q_i` and the remainder chain
/// `t_0 = b > t_1 > ... > t_r = 1 > t_{r+1} = 0` produced by the modified
/// Euclidean algorithm.
///
/// The expansion of `1/1` is empty (`r = 0`); callers treat that as the
/// degenerate case in which nothing needs resolving.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HjExpansion {
    pub b: Int,
    pub t: Int,
    /// `c_1..c_r`
    pub coeffs: Vec<Int>,
    /// `P_0..P_{r+1}`
    pub pconv: Vec<Int>,
    /// `Q_0..Q_{r+1}`
    pub qconv: Vec<Int>,
    /// `t_0..t_{r+1}`
    pub tchain: Vec<Int>,
}

impl HjExpansion {
    /// The length `r` of the expansion.
    pub fn depth(&self) -> usize {
        self.coeffs.len()
    }

    /// Evaluates `c_1 - 1/(c_2 - 1/(...))` as an exact rational.
    /// The empty expansion evaluates to `1`.
    pub fn value(&self) -> BigRational {
        let mut acc: Option<BigRational> = None;
        for c in self.coeffs.iter().rev() {
            let c = BigRational::from(c.clone());
            acc = Some(match acc {
                None => c,
                Some(prev) => c - prev.recip(),
            });
        }
        acc.unwrap_or_else(BigRational::one)
    }
}

/// Runs the modified Euclidean algorithm `c_i = ceil(t_{i-1}/t_i)`,
/// `t_{i+1} = c_i t_i - t_{i-1}` and populates the convergent recursion
/// `P_i = c_{i-1} P_{i-1} - P_{i-2}` (same for `Q`) from the seeds
/// `P_0 = 0, P_1 = 1, Q_0 = -1, Q_1 = 0`.
pub fn hj_expand(b: &Int, t: &Int) -> Result<HjExpansion, Error> {
    if !t.is_positive() {
        return Err(Error::InvalidArgument(format!("t must be positive, got {t}")));
    }
    if t > b {
        return Err(Error::InvalidArgument(format!("t must not exceed b, got {t} > {b}")));
    }
    if !gcd(b, t).is_one() {
        return Err(Error::InvalidArgument(format!("b and t must be coprime, got ({b}, {t})")));
    }

    let mut coeffs: Vec<Int> = Vec::new();
    let mut tchain: Vec<Int> = vec![b.clone()];
    if b.is_one() {
        tchain.push(Int::zero());
    } else {
        tchain.push(t.clone());
        while !tchain.last().unwrap().is_zero() {
            let prev = tchain[tchain.len() - 2].clone();
            let cur = tchain.last().unwrap().clone();
            let c = prev.div_ceil(&cur);
            let next = &c * &cur - &prev;
            coeffs.push(c);
            tchain.push(next);
        }
    }

    let r = coeffs.len();
    let mut pconv = vec![Int::zero(), Int::one()];
    let mut qconv = vec![-Int::one(), Int::zero()];
    for i in 2..=r + 1 {
        let c = &coeffs[i - 2];
        let p = c * &pconv[i - 1] - &pconv[i - 2];
        let q = c * &qconv[i - 1] - &qconv[i - 2];
        pconv.push(p);
        qconv.push(q);
    }

    Ok(HjExpansion {
        b: b.clone(),
        t: t.clone(),
        coeffs,
        pconv,
        qconv,
        tchain,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::traits::ToPrimitive;
    use proptest::prelude::*;

    fn ints(vs: &[i64]) -> Vec<Int> {
        vs.iter().map(|&v| int(v)).collect()
    }

    #[test]
    fn rem_examples() {
        assert_eq!(rem(&int(3), &int(3)).unwrap(), int(0));
        assert_eq!(rem(&int(2), &int(3)).unwrap(), int(2));
        assert_eq!(rem(&int(7), &int(3)).unwrap(), int(1));
        // mathematical convention on negative arguments
        assert_eq!(rem(&int(-1), &int(3)).unwrap(), int(2));
        assert!(rem(&int(5), &int(0)).is_err());
        assert!(rem(&int(5), &int(-2)).is_err());
    }

    #[test]
    fn expand_three_over_one() {
        let hj = hj_expand(&int(3), &int(1)).unwrap();
        assert_eq!(hj.coeffs, ints(&[3]));
        assert_eq!(hj.pconv, ints(&[0, 1, 3]));
        assert_eq!(hj.qconv, ints(&[-1, 0, 1]));
        assert_eq!(hj.tchain, ints(&[3, 1, 0]));
    }

    #[test]
    fn expand_degenerate() {
        let hj = hj_expand(&int(1), &int(1)).unwrap();
        assert_eq!(hj.depth(), 0);
        assert_eq!(hj.pconv, ints(&[0, 1]));
        assert_eq!(hj.qconv, ints(&[-1, 0]));
        assert_eq!(hj.tchain, ints(&[1, 0]));
    }

    #[test]
    fn expand_five_over_three() {
        // oracle: repeated ceiling division, 5 = 2*3 - 1, 3 = 3*1
        let hj = hj_expand(&int(5), &int(3)).unwrap();
        assert_eq!(hj.coeffs, ints(&[2, 3]));
        assert_eq!(hj.tchain, ints(&[5, 3, 1, 0]));
        assert_eq!(hj.pconv, ints(&[0, 1, 2, 5]));
        assert_eq!(hj.qconv, ints(&[-1, 0, 1, 3]));
    }

    #[test]
    fn expand_rejects_bad_input() {
        assert!(hj_expand(&int(3), &int(0)).is_err());
        assert!(hj_expand(&int(3), &int(4)).is_err());
        assert!(hj_expand(&int(6), &int(3)).is_err());
    }

    fn check_invariants(hj: &HjExpansion) {
        let r = hj.depth();
        for c in &hj.coeffs {
            assert!(*c >= int(2), "coefficient {c} below 2");
        }
        // determinant identity and strict monotonicity
        for i in 1..=r + 1 {
            let det = &hj.pconv[i - 1] * &hj.qconv[i] - &hj.pconv[i] * &hj.qconv[i - 1];
            assert_eq!(det, int(1), "determinant fails at i = {i}");
            assert!(hj.pconv[i - 1] < hj.pconv[i]);
            assert!(hj.qconv[i - 1] < hj.qconv[i]);
        }
        // remainder chain relation and strict descent
        for i in 1..=r {
            assert_eq!(
                hj.tchain[i - 1],
                &hj.coeffs[i - 1] * &hj.tchain[i] - &hj.tchain[i + 1]
            );
            assert!(hj.tchain[i - 1] > hj.tchain[i]);
        }
        if r >= 1 {
            assert_eq!(hj.tchain[r], int(1));
            // b/t = P_{r+1}/Q_{r+1} in lowest terms
            assert_eq!(hj.pconv[r + 1], hj.b);
            assert_eq!(hj.qconv[r + 1], hj.t);
        }
        assert!(hj.tchain.last().unwrap().is_zero());
        // reconstruction of the fraction
        let v = hj.value();
        assert_eq!(
            v,
            BigRational::new(hj.b.clone(), hj.t.clone()),
            "reconstruction failed for {}/{}",
            hj.b,
            hj.t
        );
    }

    #[test]
    fn sweep_coprime_pairs_up_to_200() {
        for b in 1i64..=200 {
            for t in 1..=b {
                if int(b).gcd(&int(t)).is_one() {
                    let hj = hj_expand(&int(b), &int(t)).unwrap();
                    check_invariants(&hj);
                }
            }
        }
    }

    proptest! {
        #[test]
        fn reconstruction_random(b in 1i64..4000, t in 1i64..4000) {
            prop_assume!(t <= b);
            prop_assume!(int(b).gcd(&int(t)).is_one());
            let hj = hj_expand(&int(b), &int(t)).unwrap();
            prop_assert_eq!(hj.value(), BigRational::new(int(b), int(t)));
            prop_assert_eq!(hj.tchain.len(), hj.depth() + 2);
        }

        #[test]
        fn rem_is_mathematical(a in -10_000i64..10_000, m in 1i64..500) {
            let r = rem(&int(a), &int(m)).unwrap().to_i64().unwrap();
            prop_assert!(0 <= r && r < m);
            prop_assert_eq!((a - r) % m, 0);
        }
    }
}
