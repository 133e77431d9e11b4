//! Sphere-packing volumes, distance-optimality certificates and the largest
//! minimum distance the sphere-packing bound leaves open.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

fn decimal<S: Serializer>(v: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_str_radix(10))
}

/// `V_q(r) = sum_{i <= r} C(n, i) (q - 1)^i`.
pub fn hamming_volume(q: u64, n: usize, r: usize) -> Result<BigUint> {
    if r > n {
        return Err(Error::RadiusTooLarge { r, n });
    }
    Ok(VolumeSums::new(q, n).take(r + 1).last().expect("r + 1 terms"))
}

/// Running partial sums `V_q(0), V_q(1), ...`.
struct VolumeSums {
    qm1: BigUint,
    n: usize,
    i: usize,
    term: BigUint,
    sum: BigUint,
}

impl VolumeSums {
    fn new(q: u64, n: usize) -> Self {
        VolumeSums {
            qm1: BigUint::from(q - 1),
            n,
            i: 0,
            term: BigUint::one(),
            sum: BigUint::zero(),
        }
    }
}

impl Iterator for VolumeSums {
    type Item = BigUint;

    fn next(&mut self) -> Option<BigUint> {
        if self.i > self.n {
            return None;
        }
        if self.i > 0 {
            // C(n, i) (q-1)^i from C(n, i-1) (q-1)^(i-1)
            self.term = &self.term * (self.n - self.i + 1) * &self.qm1 / self.i;
        }
        self.sum += &self.term;
        self.i += 1;
        Some(self.sum.clone())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    DistanceOptimal,
    Inconclusive,
}

/// Every integer needed to re-check a sphere-packing optimality claim by
/// hand: `lhs = q^k V_q(r) > rhs = q^n` with `r = floor(d/2)` rules out an
/// `[n, k, d+1]_q` code.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundCertificate {
    pub q: u64,
    pub n: usize,
    pub k: usize,
    pub d: u64,
    pub r: usize,
    #[serde(serialize_with = "decimal")]
    pub volume: BigUint,
    #[serde(serialize_with = "decimal")]
    pub lhs: BigUint,
    #[serde(serialize_with = "decimal")]
    pub rhs: BigUint,
    pub verdict: Verdict,
}

impl BoundCertificate {
    /// Recomputes every integer from `(q, n, k, d)` and compares.
    pub fn recheck(&self) -> bool {
        certify_distance_optimal(self.q, self.n, self.k, self.d).is_ok_and(|c| c == *self)
    }
}

fn check_params(q: u64, n: usize, k: usize) -> Result<()> {
    if q < 2 {
        return Err(Error::BadParameters(format!("alphabet size {q} < 2")));
    }
    if k == 0 || k > n {
        return Err(Error::BadParameters(format!("need 1 <= k <= n, got n = {n}, k = {k}")));
    }
    Ok(())
}

pub fn certify_distance_optimal(q: u64, n: usize, k: usize, d: u64) -> Result<BoundCertificate> {
    check_params(q, n, k)?;
    if d == 0 {
        return Err(Error::BadParameters("minimum distance must be at least 1".into()));
    }
    let r = ((d / 2) as usize).min(n);
    let volume = hamming_volume(q, n, r)?;
    let lhs = num_traits::pow(BigUint::from(q), k) * &volume;
    let rhs = num_traits::pow(BigUint::from(q), n);
    let verdict = if lhs > rhs {
        Verdict::DistanceOptimal
    } else {
        Verdict::Inconclusive
    };
    Ok(BoundCertificate {
        q,
        n,
        k,
        d,
        r,
        volume,
        lhs,
        rhs,
        verdict,
    })
}

/// Largest `d` with `q^k V_q(floor((d-1)/2)) <= q^n`, capped at the
/// Singleton value `n - k + 1`.
pub fn sphere_packing_dmax(q: u64, n: usize, k: usize) -> Result<u64> {
    check_params(q, n, k)?;
    let qk = num_traits::pow(BigUint::from(q), k);
    let qn = num_traits::pow(BigUint::from(q), n);
    let cap = (n - k + 1) as u64;
    let volumes: Vec<BigUint> = VolumeSums::new(q, n).take_while(|v| &qk * v <= qn).collect();
    // volumes[r] fits for r < volumes.len(); d fits iff floor((d-1)/2) < len
    let by_packing = 2 * volumes.len() as u64;
    Ok(by_packing.min(cap))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn volumes() {
        assert_eq!(hamming_volume(5, 10, 0).unwrap(), BigUint::one());
        assert_eq!(hamming_volume(2, 21, 3).unwrap(), BigUint::from(1562u32));
        assert_eq!(hamming_volume(2, 30, 30).unwrap(), BigUint::from(1u64 << 30));
        assert_eq!(hamming_volume(3, 4, 4).unwrap(), BigUint::from(81u32));
        assert!(hamming_volume(2, 3, 4).is_err());
    }

    #[test]
    fn certificates() {
        let c = certify_distance_optimal(2, 21, 11, 6).unwrap();
        assert_eq!(c.verdict, Verdict::DistanceOptimal);
        assert_eq!(c.lhs, BigUint::from(3_198_976u32));
        assert_eq!(c.rhs, BigUint::from(2_097_152u32));
        assert!(c.recheck());
        assert_eq!(certify_distance_optimal(4, 31, 25, 4).unwrap().verdict, Verdict::DistanceOptimal);
        assert_eq!(certify_distance_optimal(2, 100, 1, 3).unwrap().verdict, Verdict::Inconclusive);
        assert!(certify_distance_optimal(2, 10, 0, 3).is_err());
    }

    #[test]
    fn dmax() {
        assert!(sphere_packing_dmax(2, 315, 284).unwrap() <= 11);
        assert!(sphere_packing_dmax(3, 104, 88).unwrap() <= 11);
        assert_eq!(sphere_packing_dmax(3, 7, 7).unwrap(), 1);
        // perfect codes meet the bound
        assert_eq!(sphere_packing_dmax(2, 7, 4).unwrap(), 4);
        assert_eq!(sphere_packing_dmax(2, 23, 12).unwrap(), 8);
        assert_eq!(sphere_packing_dmax(3, 11, 6).unwrap(), 6);
    }

    /// Direct oracle: test every `d` against the defining inequality.
    #[test]
    fn dmax_matches_linear_scan() {
        for (q, n) in [(2u64, 12usize), (3, 9), (4, 7), (7, 6)] {
            for k in 1..=n {
                let qk = num_traits::pow(BigUint::from(q), k);
                let qn = num_traits::pow(BigUint::from(q), n);
                let mut best = 1;
                for d in 1..=(n - k + 1) as u64 {
                    let v = hamming_volume(q, n, ((d - 1) / 2) as usize).unwrap();
                    if &qk * v <= qn {
                        best = d;
                    }
                }
                assert_eq!(sphere_packing_dmax(q, n, k).unwrap(), best, "q={q} n={n} k={k}");
            }
        }
    }
}
