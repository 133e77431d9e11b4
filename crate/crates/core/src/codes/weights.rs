use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    /// Every codeword visited.
    Enumeration,
    /// Dual code enumerated, then transformed.
    MacWilliams,
    /// Nothing enumerated; only a lower bound on the minimum weight.
    BoundOnly,
}

/// `A_0 .. A_n` for a code of length `n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WeightDistribution {
    #[serde(serialize_with = "decimal_vec")]
    counts: Vec<BigUint>,
    exact: bool,
    method: Method,
    /// Lower bound on the minimum nonzero weight when not exact.
    #[serde(skip_serializing_if = "Option::is_none")]
    bound: Option<u64>,
}

fn decimal_vec<S: Serializer>(v: &[BigUint], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_str_radix(10)))
}

impl WeightDistribution {
    pub fn exact(counts: Vec<BigUint>, method: Method) -> Self {
        WeightDistribution {
            counts,
            exact: true,
            method,
            bound: None,
        }
    }

    pub(crate) fn from_parts(counts: Vec<BigUint>, exact: bool, method: Method, bound: Option<u64>) -> Self {
        WeightDistribution {
            counts,
            exact,
            method,
            bound,
        }
    }

    pub(crate) fn from_counts(counts: &[u64], method: Method) -> Self {
        Self::exact(counts.iter().map(|&c| BigUint::from(c)).collect(), method)
    }

    /// Non-exact placeholder carrying only the zero word and a bound.
    pub fn bound_only(n: usize, bound: u64) -> Self {
        let mut counts = vec![BigUint::zero(); n + 1];
        counts[0] = BigUint::one();
        WeightDistribution {
            counts,
            exact: false,
            method: Method::BoundOnly,
            bound: Some(bound),
        }
    }

    pub fn counts(&self) -> &[BigUint] {
        &self.counts
    }

    /// `A_i` (zero beyond the length).
    pub fn a(&self, i: usize) -> BigUint {
        self.counts.get(i).cloned().unwrap_or_default()
    }

    pub fn is_exact(&self) -> bool {
        self.exact
    }

    pub fn method(&self) -> Method {
        self.method
    }

    pub fn bound(&self) -> Option<u64> {
        self.bound
    }

    pub fn len(&self) -> usize {
        self.counts.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.counts.len() <= 1
    }

    pub fn total(&self) -> BigUint {
        self.counts.iter().sum()
    }

    /// Smallest nonzero weight present; `None` for the zero code or when the
    /// distribution is not exact.
    pub fn min_distance(&self) -> Option<usize> {
        if !self.exact {
            return None;
        }
        (1..self.counts.len()).find(|&i| !self.counts[i].is_zero())
    }
}

fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// `K_j(i) = sum_s (-1)^s (q-1)^(j-s) C(i, s) C(n-i, j-s)`, by the defining sum.
pub fn krawtchouk(n: usize, q: u64, j: usize, i: usize) -> BigInt {
    let qm1 = BigInt::from(q - 1);
    let mut total = BigInt::zero();
    for s in 0..=j {
        let term = num_traits::pow(qm1.clone(), j - s) * binomial(i, s) * binomial(n - i, j - s);
        if s % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

/// `K_0(i) .. K_n(i)` via the three-term recurrence
/// `(j+1) K_{j+1} = ((n-j)(q-1) + j - q i) K_j - (q-1)(n-j+1) K_{j-1}`.
fn krawtchouk_column(n: usize, q: u64, i: usize) -> Vec<BigInt> {
    let q = q as i64;
    let mut col = Vec::with_capacity(n + 1);
    col.push(BigInt::one());
    if n == 0 {
        return col;
    }
    col.push(BigInt::from((n - i) as i64 * (q - 1) - i as i64));
    for j in 1..n {
        let a = BigInt::from((n - j) as i64 * (q - 1) + j as i64 - q * i as i64);
        let b = BigInt::from((q - 1) * (n - j + 1) as i64);
        let next = (a * &col[j] - b * &col[j - 1]) / BigInt::from(j as i64 + 1);
        col.push(next);
    }
    col
}

/// Weight distribution of a code from the exact distribution of its dual
/// (of dimension `dual_dim`): `A_j = q^(-dual_dim) sum_i B_i K_j(i)`.
pub fn macwilliams_transform(dual: &WeightDistribution, n: usize, q: u64, dual_dim: usize) -> Result<WeightDistribution> {
    if !dual.exact {
        return Err(Error::Consistency("MacWilliams needs an exact dual distribution".into()));
    }
    if dual.counts.len() != n + 1 {
        return Err(Error::Consistency(format!(
            "distribution has {} entries for length {n}",
            dual.counts.len()
        )));
    }
    let mut sums = vec![BigInt::zero(); n + 1];
    for (i, b) in dual.counts.iter().enumerate() {
        if b.is_zero() {
            continue;
        }
        let b = BigInt::from_biguint(Sign::Plus, b.clone());
        for (s, k) in sums.iter_mut().zip(krawtchouk_column(n, q, i)) {
            *s += &b * k;
        }
    }
    let scale = num_traits::pow(BigInt::from(q), dual_dim);
    let mut counts = Vec::with_capacity(n + 1);
    for (j, s) in sums.into_iter().enumerate() {
        if s.is_negative() || !(&s % &scale).is_zero() {
            return Err(Error::Consistency(format!(
                "MacWilliams coefficient A_{j} = {s} / {scale} is not a nonnegative integer"
            )));
        }
        counts.push((s / &scale).to_biguint().expect("nonnegative"));
    }
    let expected = num_traits::pow(BigUint::from(q), n - dual_dim);
    let out = WeightDistribution::exact(counts, Method::MacWilliams);
    if out.total() != expected {
        return Err(Error::Consistency(format!(
            "MacWilliams output sums to {}, expected {expected}",
            out.total()
        )));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recurrence_matches_defining_sum() {
        for (n, q) in [(7usize, 2u64), (12, 3), (9, 4), (6, 9)] {
            for i in 0..=n {
                let col = krawtchouk_column(n, q, i);
                for (j, kj) in col.iter().enumerate() {
                    assert_eq!(*kj, krawtchouk(n, q, j, i), "n={n} q={q} j={j} i={i}");
                }
            }
        }
    }

    #[test]
    fn zero_code_transforms_to_full_space() {
        let (n, q) = (10usize, 3u64);
        let mut zero = vec![BigUint::zero(); n + 1];
        zero[0] = BigUint::one();
        let full = macwilliams_transform(&WeightDistribution::exact(zero.clone(), Method::Enumeration), n, q, 0).unwrap();
        for j in 0..=n {
            let expected = binomial(n, j) * num_traits::pow(BigInt::from(q - 1), j);
            assert_eq!(BigInt::from(full.a(j)), expected);
        }
        let back = macwilliams_transform(&full, n, q, n).unwrap();
        assert_eq!(back.counts(), zero.as_slice());
    }

    #[test]
    fn rejects_inconsistent_input() {
        // Claims dimension 1 but holds a single word.
        let bogus = WeightDistribution::exact(
            vec![BigUint::one(), BigUint::zero(), BigUint::zero()],
            Method::Enumeration,
        );
        assert!(macwilliams_transform(&bogus, 2, 2, 1).is_err());
        assert!(macwilliams_transform(&WeightDistribution::bound_only(2, 1), 2, 2, 0).is_err());
    }
}
