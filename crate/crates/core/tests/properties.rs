use std::collections::BTreeSet;

use bchfam::codes::{macwilliams_transform, Method};
use bchfam::cosets::{all_cosets, odd_cosets};
use bchfam::gf::{gcd, make_field, FieldDesc};
use bchfam::{DefiningSet, Elem, Kind, LinearCode};
use proptest::prelude::*;
use std::sync::Arc;

const FIELDS: &[(u64, u32)] = &[(2, 1), (2, 4), (2, 8), (3, 1), (3, 2), (3, 5), (5, 1), (5, 2), (7, 2), (11, 1)];

fn field(i: usize) -> Arc<FieldDesc> {
    let (p, m) = FIELDS[i % FIELDS.len()];
    make_field(p, m).unwrap()
}

fn pick(f: &FieldDesc, x: u32) -> Elem {
    f.elem(x % f.q()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12_000))]

    #[test]
    fn field_axioms(i in 0usize..FIELDS.len(), a in any::<u32>(), b in any::<u32>(), c in any::<u32>()) {
        let f = field(i);
        let (a, b, c) = (pick(&f, a), pick(&f, b), pick(&f, c));
        prop_assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.add(a, b), f.add(b, a));
        prop_assert_eq!(f.mul(a, b), f.mul(b, a));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.add(a, f.neg(a)), pick(&f, 0));
        if !a.is_zero() {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), pick(&f, 1));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2_000))]

    #[test]
    fn frobenius_is_additive(i in 0usize..FIELDS.len(), a in any::<u32>(), b in any::<u32>()) {
        let f = field(i);
        let p = f.p() as u64;
        let (a, b) = (pick(&f, a), pick(&f, b));
        prop_assert_eq!(f.pow(f.add(a, b), p), f.add(f.pow(a, p), f.pow(b, p)));
    }

    #[test]
    fn cosets_partition(qi in 0usize..6, n in 1u64..400) {
        let q = [2u64, 3, 4, 5, 7, 9][qi];
        if gcd(q, n) != 1 {
            return Ok(());
        }
        let cs = all_cosets(q, n).unwrap();
        let mut seen = BTreeSet::new();
        for c in &cs {
            for &e in c.elems() {
                prop_assert!(seen.insert(e), "{} in two cosets", e);
                prop_assert!(c.contains(e * q % n));
            }
            prop_assert_eq!(c.rep(), *c.elems().iter().min().unwrap());
        }
        prop_assert_eq!(seen.len() as u64, n);

        if q % 2 == 1 {
            let odd = odd_cosets(q, 2 * n).unwrap();
            let elems: BTreeSet<u64> = odd.iter().flat_map(|c| c.elems().iter().copied()).collect();
            let expected: BTreeSet<u64> = (0..2 * n).filter(|i| i % 2 == 1).collect();
            prop_assert_eq!(elems, expected);
        }
    }
}

/// Cyclic or negacyclic code from a seed: small length, random subset of
/// cosets.
fn small_code(qi: usize, n: u64, negacyclic: bool, mask: u64) -> Option<LinearCode> {
    let q = [2u64, 3, 4, 5, 7, 9][qi];
    let kind = if negacyclic && q % 2 == 1 { Kind::Negacyclic } else { Kind::Cyclic };
    if gcd(q, n) != 1 {
        return None;
    }
    let cosets = match kind {
        Kind::Cyclic => all_cosets(q, n).ok()?,
        Kind::Negacyclic => odd_cosets(q, 2 * n).ok()?,
    };
    let reps: Vec<u64> = cosets
        .iter()
        .enumerate()
        .filter(|(i, _)| mask >> (i % 64) & 1 == 1)
        .map(|(_, c)| c.rep())
        .collect();
    let t = DefiningSet::from_reps(q, n, kind, &reps).ok()?;
    let f = bchfam::gf::field_of_order(q).ok()?;
    LinearCode::from_defining_set(&f, &t).ok()
}

fn fits(q: u64, k: usize, limit: u64) -> bool {
    (q as f64).powi(k as i32) <= limit as f64
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn shift_closure(qi in 0usize..6, n in 2u64..40, neg in any::<bool>(), mask in any::<u64>(), msgs in prop::collection::vec(any::<u32>(), 100 * 40)) {
        let Some(code) = small_code(qi, n, neg, mask) else { return Ok(()) };
        prop_assume!(code.k() > 0);
        let f = code.field().clone();
        for chunk in msgs.chunks(code.k()).take(100) {
            if chunk.len() < code.k() {
                break;
            }
            let msg: Vec<Elem> = chunk.iter().map(|&x| pick(&f, x)).collect();
            let word = code.encode(&msg).unwrap();
            prop_assert!(code.contains(&word).unwrap());
            prop_assert!(code.contains(&code.shift(&word)).unwrap());
        }
    }

    #[test]
    fn duality(qi in 0usize..6, n in 2u64..40, neg in any::<bool>(), mask in any::<u64>()) {
        let Some(code) = small_code(qi, n, neg, mask) else { return Ok(()) };
        let dual = code.dual().unwrap();
        prop_assert_eq!(code.k() + dual.k(), code.n());
        prop_assert_eq!(&dual.dual().unwrap(), &code);
        let f = code.field();
        for g in code.generator_matrix() {
            for h in dual.generator_matrix() {
                let dot = g.iter().zip(&h).fold(pick(f, 0), |acc, (&a, &b)| f.add(acc, f.mul(a, b)));
                prop_assert!(dot.is_zero());
            }
        }
    }
}

/// Every cyclic and negacyclic code over the small grid with both the code
/// and its dual at most 10^5 words: enumeration agrees with MacWilliams.
#[test]
fn macwilliams_agrees_with_enumeration() {
    const LIMIT: u64 = 100_000;
    let mut checked = 0;
    for q in [2u64, 3, 4, 5, 7, 9] {
        let f = bchfam::gf::field_of_order(q).unwrap();
        for n in 2u64..=24 {
            if gcd(q, n) != 1 {
                continue;
            }
            for kind in [Kind::Cyclic, Kind::Negacyclic] {
                if kind == Kind::Negacyclic && q % 2 == 0 {
                    continue;
                }
                let cosets = match kind {
                    Kind::Cyclic => all_cosets(q, n).unwrap(),
                    Kind::Negacyclic => odd_cosets(q, 2 * n).unwrap(),
                };
                let m = cosets.len().min(12);
                for mask in 0u64..(1 << m) {
                    let reps: Vec<u64> = (0..m).filter(|i| mask >> i & 1 == 1).map(|i| cosets[i].rep()).collect();
                    let t = DefiningSet::from_reps(q, n, kind, &reps).unwrap();
                    let k = n as usize - t.len();
                    if !fits(q, k, LIMIT) || !fits(q, n as usize - k, LIMIT) {
                        continue;
                    }
                    let code = LinearCode::from_defining_set(&f, &t).unwrap();
                    let dual = code.dual().unwrap();
                    let direct = code.weight_distribution(LIMIT).unwrap();
                    let dd = dual.weight_distribution(LIMIT).unwrap();
                    assert_eq!(direct.method(), Method::Enumeration);
                    assert_eq!(dd.method(), Method::Enumeration);
                    let via = macwilliams_transform(&dd, n as usize, q, dual.k()).unwrap();
                    assert_eq!(direct.counts(), via.counts(), "q={q} n={n} {kind:?} reps={reps:?}");
                    let lb = code.lower_bound() as usize;
                    if let Some(d) = direct.min_distance() {
                        assert!(d >= lb, "bound {lb} above d = {d} for q={q} n={n} reps={reps:?}");
                    }
                    checked += 1;
                }
            }
        }
    }
    assert!(checked > 1000, "only {checked} codes checked");
}

#[test]
fn gcd_identity() {
    for q in [2u64, 3, 4, 5, 7, 9] {
        for a in 1u32..=12 {
            for b in 1u32..=12 {
                let g = gcd(q.pow(a) - 1, q.pow(b) - 1);
                assert_eq!(g, q.pow(gcd(a as u64, b as u64) as u32) - 1, "q={q} a={a} b={b}");
            }
        }
    }
}

#[test]
fn odd_cosets_of_projective_length() {
    // q = 3 mod 4, n = (q^p - 1)/(q - 1), p not dividing q - 1.
    for (q, p) in [(3u64, 3u32), (3, 5), (7, 5), (11, 3)] {
        let n = (q.pow(p) - 1) / (q - 1);
        for c in odd_cosets(q, 2 * n).unwrap() {
            if c.rep() == n {
                assert_eq!(c.len(), 1);
            } else {
                assert_eq!(c.len(), p as usize, "q={q} p={p} C_{}", c.rep());
            }
        }
    }
}

#[test]
fn projective_length_needs_p_coprime_to_q_minus_1() {
    // q = 7, p = 3: 7 * 19 = 19 mod 114, so C_19 is a singleton.
    let cs = odd_cosets(7, 114).unwrap();
    assert!(cs.iter().any(|c| c.rep() == 19 && c.len() == 1));
}

#[test]
fn odd_cosets_of_half_length() {
    // n = (q^p - 1)/2.
    for (q, p) in [(3u64, 3u32), (3, 5), (7, 3), (5, 3), (9, 3)] {
        let n = (q.pow(p) - 1) / 2;
        let step = (q.pow(p) - 1) / (q - 1);
        let mut singletons = 0;
        for c in odd_cosets(q, 2 * n).unwrap() {
            if c.rep() % step == 0 {
                assert_eq!(c.len(), 1, "q={q} p={p} C_{}", c.rep());
                singletons += 1;
            } else {
                assert_eq!(c.len(), p as usize, "q={q} p={p} C_{}", c.rep());
            }
        }
        assert_eq!(singletons, (q - 1) / 2, "q={q} p={p}");
    }
}
