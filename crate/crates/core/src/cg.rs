//! Coupling vectors for tensor products of irreducible sl(2)
//! representations: the distinguished basis of the top component inside
//! `V(mu_1) x ... x V(mu_s)` and the lowering operator acting by the
//! Leibniz rule. All coefficients are exact rationals.

use num::{BigInt, BigRational, One, Zero};

use crate::error::Error;

/// A vector in a tensor product of symmetric powers. Each term is a
/// rational coefficient on a pure tensor, recorded by the per-factor
/// `Y`-exponents `(i_1, ..., i_s)`; factor `j` carries
/// `X^{mu_j - i_j} Y^{i_j}`. Terms are sorted and never carry a zero
/// coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorVector {
    pub terms: Vec<(BigRational, Vec<u64>)>,
}

impl TensorVector {
    pub fn zero() -> Self {
        TensorVector { terms: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn from_map(map: std::collections::BTreeMap<Vec<u64>, BigRational>) -> Self {
        TensorVector {
            terms: map
                .into_iter()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| (c, k))
                .collect(),
        }
    }

    pub fn scaled(&self, s: &BigRational) -> TensorVector {
        if s.is_zero() {
            return TensorVector::zero();
        }
        TensorVector {
            terms: self.terms.iter().map(|(c, k)| (c * s, k.clone())).collect(),
        }
    }

    /// Coefficient of the pure tensor with the given exponents.
    pub fn coefficient(&self, key: &[u64]) -> BigRational {
        self.terms
            .iter()
            .find(|(_, k)| k == key)
            .map(|(c, _)| c.clone())
            .unwrap_or_else(BigRational::zero)
    }
}

fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for j in 0..k.min(n - k) {
        acc = acc * BigInt::from(n - j) / BigInt::from(j + 1);
    }
    acc
}

/// The `i`-th basis vector of the top irreducible component:
/// a binomially weighted sum over all exponent splittings of `i`,
/// normalized by `1/binom(n, i)` so the image of `X^{n-i} Y^i` has
/// leading coefficient pattern matching the single-factor case.
pub fn cg_vector(partition: &[u64], i: u64) -> Result<TensorVector, Error> {
    if partition.is_empty() {
        return Err(Error::InvalidArgument("empty partition".into()));
    }
    let n: u64 = partition.iter().sum();
    if i > n {
        return Err(Error::IndexOutOfRange(format!(
            "index {i} exceeds total weight {n}"
        )));
    }
    let mut map = std::collections::BTreeMap::new();
    let mut stack: Vec<(usize, u64, Vec<u64>, BigInt)> = vec![(0, i, Vec::new(), BigInt::one())];
    while let Some((j, left, key, coeff)) = stack.pop() {
        if j == partition.len() {
            if left == 0 {
                map.insert(key, BigRational::from(coeff));
            }
            continue;
        }
        let cap = partition[j].min(left);
        // remaining factors must be able to absorb the rest
        let tail: u64 = partition[j + 1..].iter().sum();
        for ij in 0..=cap {
            if left - ij > tail {
                continue;
            }
            let mut k = key.clone();
            k.push(ij);
            stack.push((j + 1, left - ij, k, &coeff * binomial(partition[j], ij)));
        }
    }
    let norm = BigRational::new(BigInt::one(), binomial(n, i));
    Ok(TensorVector::from_map(map).scaled(&norm))
}

/// The lowering operator `Y d/dX` extended to the tensor product by the
/// Leibniz rule: `X^a Y^b` in factor `j` maps to `a X^{a-1} Y^{b+1}`.
pub fn lowering_action(v: &TensorVector, partition: &[u64]) -> TensorVector {
    let mut map: std::collections::BTreeMap<Vec<u64>, BigRational> =
        std::collections::BTreeMap::new();
    for (c, key) in &v.terms {
        for j in 0..partition.len() {
            let xexp = partition[j] - key[j];
            if xexp == 0 {
                continue;
            }
            let mut k = key.clone();
            k[j] += 1;
            let add = c * BigRational::from(BigInt::from(xexp));
            *map.entry(k).or_insert_with(BigRational::zero) += add;
        }
    }
    TensorVector::from_map(map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn single_factor_is_monomial_basis() {
        for i in 0..=4u64 {
            let v = cg_vector(&[4], i).unwrap();
            assert_eq!(v.terms.len(), 1);
            assert_eq!(v.terms[0], (rat(1, 1), vec![i]));
        }
    }

    #[test]
    fn vector_1_3() {
        // (1/4)(Y (x) X^3 + 3 X (x) X^2 Y)
        let v = cg_vector(&[1, 3], 1).unwrap();
        assert_eq!(v.coefficient(&[1, 0]), rat(1, 4));
        assert_eq!(v.coefficient(&[0, 1]), rat(3, 4));
        assert_eq!(v.terms.len(), 2);
    }

    #[test]
    fn vector_1_1() {
        // (1/2)(X (x) Y + Y (x) X)
        let v = cg_vector(&[1, 1], 1).unwrap();
        assert_eq!(v.coefficient(&[0, 1]), rat(1, 2));
        assert_eq!(v.coefficient(&[1, 0]), rat(1, 2));
    }

    #[test]
    fn top_coefficient_is_one() {
        for part in [vec![2, 3], vec![1, 1, 4], vec![5]] {
            let v = cg_vector(&part, 0).unwrap();
            assert_eq!(v.terms.len(), 1);
            assert_eq!(v.terms[0].0, rat(1, 1));
            assert!(v.terms[0].1.iter().all(|&e| e == 0));
        }
    }

    #[test]
    fn lowering_examples() {
        // lowest vector annihilated
        let part = [1u64, 3];
        let n = 4u64;
        let bottom = cg_vector(&part, n).unwrap();
        assert!(lowering_action(&bottom, &part).is_zero());
        // f . phi_0 = n phi_1
        let top = cg_vector(&part, 0).unwrap();
        let lowered = lowering_action(&top, &part);
        let expect = cg_vector(&part, 1).unwrap().scaled(&rat(n as i64, 1));
        assert_eq!(lowered, expect);
        // two-factor spin case with scalar n - i = 2
        let part = [1u64, 1];
        let lowered = lowering_action(&cg_vector(&part, 0).unwrap(), &part);
        assert_eq!(lowered, cg_vector(&part, 1).unwrap().scaled(&rat(2, 1)));
    }

    #[test]
    fn index_range_checked() {
        assert!(cg_vector(&[1, 3], 5).is_err());
        assert!(cg_vector(&[], 0).is_err());
    }

    /// Exhaustive equivariance over all compositions of total weight <= 8.
    #[test]
    fn equivariance_small_compositions() {
        fn compositions(total: u64) -> Vec<Vec<u64>> {
            if total == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for first in 1..=total {
                for rest in compositions(total - first) {
                    let mut c = vec![first];
                    c.extend(rest);
                    out.push(c);
                }
            }
            out
        }
        for n in 1..=8u64 {
            for part in compositions(n) {
                for i in 0..n {
                    let lhs = lowering_action(&cg_vector(&part, i).unwrap(), &part);
                    let rhs = cg_vector(&part, i + 1)
                        .unwrap()
                        .scaled(&rat((n - i) as i64, 1));
                    assert_eq!(lhs, rhs, "partition {part:?}, i = {i}");
                }
            }
        }
    }

    proptest! {
        #[test]
        fn equivariance_random(parts in proptest::collection::vec(1u64..5, 1..4), i in 0u64..10) {
            let n: u64 = parts.iter().sum();
            prop_assume!(i < n);
            let lhs = lowering_action(&cg_vector(&parts, i).unwrap(), &parts);
            let rhs = cg_vector(&parts, i + 1).unwrap()
                .scaled(&BigRational::from(BigInt::from(n - i)));
            prop_assert_eq!(lhs, rhs);
        }
    }
}
