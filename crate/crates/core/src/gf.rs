//! Exact arithmetic in prime fields and small extension fields `F_{p^m}`.
//!
//! Elements use the polynomial basis over `F_p`. An element is stored as the
//! base-`p` integer whose digits are its coefficients (constant term in the
//! least significant digit), so the canonical ordering of elements is the
//! ordering of these integers. Fields of up to `2^20` elements are supported.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};

/// Largest supported field size.
pub const MAX_FIELD_SIZE: u64 = 1 << 20;

const MAX_DEGREE: usize = 20;

/// Fields at or below this size carry full add/mul/inv tables.
const TABLE_LIMIT: u32 = 256;

/// A field element in packed polynomial-basis form. Only meaningful together
/// with the [`FieldDesc`] that produced it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Elem(u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    #[inline]
    pub(crate) const fn from_code(code: u32) -> Elem {
        Elem(code)
    }

    /// The base-`p` integer encoding of the element.
    #[inline]
    pub fn code(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

struct Tables {
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    inv: Vec<u32>,
}

/// Description of a finite field `F_{p^m} = F_p[x]/(modulus)`.
pub struct FieldDesc {
    p: u32,
    m: u32,
    q: u32,
    modulus: Vec<u32>,
    tables: Option<Tables>,
    primitive: OnceLock<Elem>,
}

impl fmt::Debug for FieldDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldDesc")
            .field("p", &self.p)
            .field("m", &self.m)
            .field("modulus", &self.modulus)
            .finish()
    }
}

impl fmt::Display for FieldDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.m == 1 {
            write!(f, "F_{}", self.p)
        } else {
            write!(f, "F_{}^{}", self.p, self.m)
        }
    }
}

impl PartialEq for FieldDesc {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.m == other.m && self.modulus == other.modulus
    }
}

impl Eq for FieldDesc {}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime factors of `n`, ascending.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Smallest `t >= 1` with `q^t = 1 (mod n)`.
pub fn multiplicative_order(q: u64, n: u64) -> Result<u32> {
    if n == 0 || gcd(q, n) != 1 {
        return Err(Error::NotCoprime { q, n });
    }
    if n == 1 {
        return Ok(1);
    }
    let q = q % n;
    let mut x = q;
    let mut t = 1u32;
    while x != 1 {
        x = ((x as u128 * q as u128) % n as u128) as u64;
        t += 1;
    }
    Ok(t)
}

/// `F_p` polynomial remainder; `g` must be monic and nonzero.
fn fp_rem(f: &[u32], g: &[u32], p: u32) -> Vec<u32> {
    let mut r: Vec<u64> = f.iter().map(|&c| c as u64).collect();
    let p = p as u64;
    let dg = g.len() - 1;
    while r.len() > dg {
        let lead = r[r.len() - 1] % p;
        let shift = r.len() - 1 - dg;
        if lead != 0 {
            for (i, &gc) in g.iter().enumerate() {
                let sub = lead * gc as u64 % p;
                r[shift + i] = (r[shift + i] + p - sub) % p;
            }
        }
        r.pop();
    }
    while r.last() == Some(&0) {
        r.pop();
    }
    r.into_iter().map(|c| c as u32).collect()
}

fn base_digits(mut x: u64, p: u32, len: usize) -> Vec<u32> {
    let mut out = vec![0u32; len];
    for slot in out.iter_mut() {
        *slot = (x % p as u64) as u32;
        x /= p as u64;
    }
    out
}

/// Trial division by every monic polynomial of degree `1..=deg/2`.
pub fn is_irreducible_over_prime(f: &[u32], p: u32) -> bool {
    let deg = match f.len() {
        0 | 1 => return false,
        l => l - 1,
    };
    if deg == 1 {
        return true;
    }
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for low in 0..count {
            let mut g = base_digits(low, p, d);
            g.push(1);
            if fp_rem(f, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// Lexicographically smallest monic irreducible polynomial of degree `m`
/// over `F_p`, comparing the coefficients below the leading one as a base-`p`
/// integer with the constant term least significant. Degree 1 uses `x + 1`.
fn smallest_irreducible(p: u32, m: u32) -> Vec<u32> {
    if m == 1 {
        return vec![1, 1];
    }
    let count = (p as u64).pow(m);
    for low in 0..count {
        let mut f = base_digits(low, p, m as usize);
        f.push(1);
        if is_irreducible_over_prime(&f, p) {
            return f;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

/// Builds `F_{p^m}` with the deterministic modulus.
pub fn make_field(p: u64, m: u32) -> Result<Arc<FieldDesc>> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if m == 0 {
        return Err(Error::ZeroDegree);
    }
    check_size(p, m)?;
    let modulus = smallest_irreducible(p as u32, m);
    Ok(FieldDesc::build(p as u32, m, modulus))
}

/// `F_q` for a prime power `q`, via [`make_field`].
pub fn field_of_order(q: u64) -> Result<Arc<FieldDesc>> {
    match prime_factors(q).as_slice() {
        [p] => {
            let (mut m, mut rest) = (0, q);
            while rest > 1 {
                rest /= p;
                m += 1;
            }
            make_field(*p, m)
        }
        _ => Err(Error::NotPrimePower(q)),
    }
}

fn check_size(p: u64, m: u32) -> Result<()> {
    match p.checked_pow(m) {
        Some(q) if q <= MAX_FIELD_SIZE => Ok(()),
        _ => Err(Error::FieldTooLarge { p, m }),
    }
}

impl FieldDesc {
    /// Builds a field from an explicit monic modulus (constant term first).
    pub fn with_modulus(p: u64, modulus: Vec<u32>) -> Result<Arc<FieldDesc>> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if modulus.len() < 2 {
            return Err(Error::ZeroDegree);
        }
        let m = (modulus.len() - 1) as u32;
        check_size(p, m)?;
        if modulus.last() != Some(&1) || modulus.iter().any(|&c| c as u64 >= p) {
            return Err(Error::Consistency(format!(
                "modulus {modulus:?} is not a monic polynomial over F_{p}"
            )));
        }
        if !is_irreducible_over_prime(&modulus, p as u32) {
            return Err(Error::Consistency(format!(
                "modulus {modulus:?} is reducible over F_{p}"
            )));
        }
        Ok(FieldDesc::build(p as u32, m, modulus))
    }

    fn build(p: u32, m: u32, modulus: Vec<u32>) -> Arc<FieldDesc> {
        let q = p.pow(m);
        let mut field = FieldDesc {
            p,
            m,
            q,
            modulus,
            tables: None,
            primitive: OnceLock::new(),
        };
        if q <= TABLE_LIMIT {
            let qs = q as usize;
            let mut add = vec![0; qs * qs];
            let mut mul = vec![0; qs * qs];
            for a in 0..q {
                for b in 0..q {
                    add[a as usize * qs + b as usize] = field.add_slow(a, b);
                    mul[a as usize * qs + b as usize] = field.mul_slow(a, b);
                }
            }
            let neg = (0..q).map(|a| field.neg_slow(a)).collect();
            let mut inv = vec![0; qs];
            for a in 1..q {
                for b in 1..q {
                    if mul[a as usize * qs + b as usize] == 1 {
                        inv[a as usize] = b;
                        break;
                    }
                }
            }
            field.tables = Some(Tables { add, mul, neg, inv });
        }
        Arc::new(field)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// Monic modulus, constant term first.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.q).map(Elem)
    }

    /// Element from a raw encoding; `None` if out of range.
    pub fn elem(&self, code: u32) -> Option<Elem> {
        (code < self.q).then_some(Elem(code))
    }

    /// Element from its coefficient vector (constant term first). Coefficients
    /// are reduced mod `p`; at most `m` coefficients are accepted.
    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<Elem> {
        if coeffs.len() > self.m as usize {
            return Err(Error::Consistency(format!(
                "{} coefficients given for a degree-{} extension",
                coeffs.len(),
                self.m
            )));
        }
        let mut code = 0u32;
        for &c in coeffs.iter().rev() {
            code = code * self.p + c % self.p;
        }
        Ok(Elem(code))
    }

    pub fn coeffs(&self, e: Elem) -> Vec<u32> {
        base_digits(e.0 as u64, self.p, self.m as usize)
    }

    /// Embeds an integer into the prime subfield.
    pub fn from_int(&self, v: i64) -> Elem {
        Elem(v.rem_euclid(self.p as i64) as u32)
    }

    #[inline]
    fn digits(&self, x: u32) -> [u32; MAX_DEGREE] {
        let mut d = [0u32; MAX_DEGREE];
        let mut x = x;
        for slot in d.iter_mut().take(self.m as usize) {
            *slot = x % self.p;
            x /= self.p;
        }
        d
    }

    #[inline]
    fn encode(&self, d: &[u32]) -> u32 {
        d[..self.m as usize]
            .iter()
            .rev()
            .fold(0u32, |acc, &c| acc * self.p + c)
    }

    fn add_slow(&self, a: u32, b: u32) -> u32 {
        if self.p == 2 {
            return a ^ b;
        }
        if self.m == 1 {
            return (a + b) % self.p;
        }
        let (da, db) = (self.digits(a), self.digits(b));
        let mut out = [0u32; MAX_DEGREE];
        for i in 0..self.m as usize {
            out[i] = (da[i] + db[i]) % self.p;
        }
        self.encode(&out)
    }

    fn neg_slow(&self, a: u32) -> u32 {
        if self.p == 2 {
            return a;
        }
        let da = self.digits(a);
        let mut out = [0u32; MAX_DEGREE];
        for i in 0..self.m as usize {
            out[i] = (self.p - da[i]) % self.p;
        }
        self.encode(&out)
    }

    fn mul_slow(&self, a: u32, b: u32) -> u32 {
        let p = self.p as u64;
        if self.m == 1 {
            return ((a as u64 * b as u64) % p) as u32;
        }
        let m = self.m as usize;
        let (da, db) = (self.digits(a), self.digits(b));
        let mut prod = [0u64; 2 * MAX_DEGREE];
        for i in 0..m {
            if da[i] == 0 {
                continue;
            }
            for j in 0..m {
                prod[i + j] = (prod[i + j] + da[i] as u64 * db[j] as u64) % p;
            }
        }
        for deg in (m..2 * m - 1).rev() {
            let c = prod[deg];
            if c == 0 {
                continue;
            }
            for i in 0..m {
                let sub = c * self.modulus[i] as u64 % p;
                prod[deg - m + i] = (prod[deg - m + i] + p - sub) % p;
            }
            prod[deg] = 0;
        }
        let mut out = [0u32; MAX_DEGREE];
        for i in 0..m {
            out[i] = prod[i] as u32;
        }
        self.encode(&out)
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        match &self.tables {
            Some(t) => Elem(t.add[(a.0 * self.q + b.0) as usize]),
            None => Elem(self.add_slow(a.0, b.0)),
        }
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        match &self.tables {
            Some(t) => Elem(t.neg[a.0 as usize]),
            None => Elem(self.neg_slow(a.0)),
        }
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        match &self.tables {
            Some(t) => Elem(t.mul[(a.0 * self.q + b.0) as usize]),
            None => Elem(self.mul_slow(a.0, b.0)),
        }
    }

    /// Square-and-multiply.
    pub fn pow(&self, a: Elem, mut e: u64) -> Elem {
        let mut base = a;
        let mut acc = Elem::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: Elem) -> Result<Elem> {
        if a.is_zero() {
            return Err(Error::NotInvertible {
                what: "zero".into(),
            });
        }
        Ok(match &self.tables {
            Some(t) => Elem(t.inv[a.0 as usize]),
            None => self.pow(a, self.q as u64 - 2),
        })
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, a: Elem) -> Result<u64> {
        if a.is_zero() {
            return Err(Error::NotInvertible {
                what: "zero".into(),
            });
        }
        let mut ord = self.q as u64 - 1;
        for r in prime_factors(ord) {
            while ord % r == 0 && self.pow(a, ord / r) == Elem::ONE {
                ord /= r;
            }
        }
        Ok(ord)
    }

    /// The smallest element (by encoding) generating the multiplicative group.
    pub fn primitive_element(&self) -> Elem {
        *self.primitive.get_or_init(|| {
            let group = self.q as u64 - 1;
            let factors = prime_factors(group);
            (1..self.q)
                .map(Elem)
                .find(|&c| factors.iter().all(|r| self.pow(c, group / r) != Elem::ONE))
                .expect("the multiplicative group of a finite field is cyclic")
        })
    }

    /// `gamma^((q-1)/n)` for the deterministic primitive element `gamma`.
    pub fn root_of_unity(&self, n: u64) -> Result<Elem> {
        let group = self.q as u64 - 1;
        if n == 0 || group % n != 0 {
            return Err(Error::NoRootOfUnity { n, order: group });
        }
        Ok(self.pow(self.primitive_element(), group / n))
    }

    pub fn format_elem(&self, e: Elem) -> String {
        if self.m == 1 {
            return e.0.to_string();
        }
        let coeffs = self.coeffs(e);
        let terms: Vec<String> = coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| {
                let coef = if c == 1 && i > 0 {
                    String::new()
                } else {
                    c.to_string()
                };
                match i {
                    0 => coef,
                    1 => format!("{coef}x"),
                    _ => format!("{coef}x^{i}"),
                }
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }
}

/// A field element tied to its field. Arithmetic panics when the operands
/// belong to different fields.
#[derive(Clone)]
pub struct FieldElem {
    field: Arc<FieldDesc>,
    value: Elem,
}

impl FieldElem {
    pub fn new(field: &Arc<FieldDesc>, coeffs: &[u32]) -> Result<Self> {
        let value = field.from_coeffs(coeffs)?;
        Ok(FieldElem {
            field: field.clone(),
            value,
        })
    }

    pub fn from_elem(field: &Arc<FieldDesc>, value: Elem) -> Self {
        assert!(value.0 < field.q, "element code out of range");
        FieldElem {
            field: field.clone(),
            value,
        }
    }

    pub fn zero(field: &Arc<FieldDesc>) -> Self {
        Self::from_elem(field, Elem::ZERO)
    }

    pub fn one(field: &Arc<FieldDesc>) -> Self {
        Self::from_elem(field, Elem::ONE)
    }

    pub fn field(&self) -> &Arc<FieldDesc> {
        &self.field
    }

    pub fn value(&self) -> Elem {
        self.value
    }

    pub fn coeffs(&self) -> Vec<u32> {
        self.field.coeffs(self.value)
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    pub fn inv(&self) -> Result<Self> {
        Ok(self.with(self.field.inv(self.value)?))
    }

    pub fn pow(&self, e: u64) -> Self {
        self.with(self.field.pow(self.value, e))
    }

    pub fn order(&self) -> Result<u64> {
        self.field.order(self.value)
    }

    fn with(&self, value: Elem) -> Self {
        FieldElem {
            field: self.field.clone(),
            value,
        }
    }

    fn same_field(&self, other: &Self) {
        assert!(
            Arc::ptr_eq(&self.field, &other.field) || *self.field == *other.field,
            "mixing elements of {} and {}",
            self.field,
            other.field
        );
    }
}

impl PartialEq for FieldElem {
    fn eq(&self, other: &Self) -> bool {
        *self.field == *other.field && self.value == other.value
    }
}

impl Eq for FieldElem {}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in {}", self.field.format_elem(self.value), self.field)
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.field.format_elem(self.value))
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident) => {
        impl $trait<&FieldElem> for &FieldElem {
            type Output = FieldElem;
            fn $method(self, rhs: &FieldElem) -> FieldElem {
                self.same_field(rhs);
                self.with(self.field.$method(self.value, rhs.value))
            }
        }
        impl $trait for FieldElem {
            type Output = FieldElem;
            fn $method(self, rhs: FieldElem) -> FieldElem {
                (&self).$method(&rhs)
            }
        }
    };
}

binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);

impl Neg for &FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        self.with(self.field.neg(self.value))
    }
}

impl Neg for FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        -&self
    }
}

/// A primitive `n`-th root of unity in `splitting`.
pub fn nth_root_of_unity(splitting: &Arc<FieldDesc>, n: u64) -> Result<FieldElem> {
    let beta = splitting.root_of_unity(n)?;
    Ok(FieldElem::from_elem(splitting, beta))
}

/// Embedding of `F_q` as the Frobenius-fixed subfield of `F_{q^t}`.
///
/// For a prime `q` the image is the constants. Otherwise the image of `x` is
/// the smallest root of the small field's modulus inside the big field.
#[derive(Debug, Clone)]
pub struct Embedding {
    small: Arc<FieldDesc>,
    big: Arc<FieldDesc>,
    image: Vec<Elem>,
    preimage: HashMap<Elem, Elem>,
}

impl Embedding {
    pub fn new(small: &Arc<FieldDesc>, big: &Arc<FieldDesc>) -> Result<Self> {
        if small.p != big.p || big.m % small.m != 0 {
            return Err(Error::FieldMismatch(format!(
                "{small} is not a subfield of {big}"
            )));
        }
        let image: Vec<Elem> = if small.m == 1 {
            (0..small.q).map(Elem).collect()
        } else {
            let group = big.q as u64 - 1;
            let zeta = big.pow(big.primitive_element(), group / (small.q as u64 - 1));
            let mut sub: Vec<Elem> = std::iter::once(Elem::ZERO)
                .chain((0..small.q as u64 - 1).map(|i| big.pow(zeta, i)))
                .collect();
            sub.sort();
            let eval = |x: Elem| {
                small
                    .modulus
                    .iter()
                    .rev()
                    .fold(Elem::ZERO, |acc, &c| big.add(big.mul(acc, x), Elem(c)))
            };
            let alpha = sub
                .into_iter()
                .find(|&x| eval(x).is_zero())
                .ok_or_else(|| Error::Consistency("modulus has no root in subfield".into()))?;
            small
                .elements()
                .map(|e| {
                    small
                        .coeffs(e)
                        .iter()
                        .rev()
                        .fold(Elem::ZERO, |acc, &c| big.add(big.mul(acc, alpha), Elem(c)))
                })
                .collect()
        };
        let preimage = image
            .iter()
            .enumerate()
            .map(|(i, &e)| (e, Elem(i as u32)))
            .collect();
        Ok(Embedding {
            small: small.clone(),
            big: big.clone(),
            image,
            preimage,
        })
    }

    pub fn small(&self) -> &Arc<FieldDesc> {
        &self.small
    }

    pub fn big(&self) -> &Arc<FieldDesc> {
        &self.big
    }

    pub fn embed(&self, e: Elem) -> Elem {
        self.image[e.0 as usize]
    }

    /// The preimage of a big-field element, or `None` when it lies outside
    /// the subfield.
    pub fn project(&self, e: Elem) -> Option<Elem> {
        self.preimage.get(&e).copied()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_uses_x_plus_one() {
        let f = make_field(2, 1).unwrap();
        assert_eq!(f.modulus(), &[1, 1]);
        assert_eq!(f.q(), 2);
    }

    #[test]
    fn f4_modulus_is_the_only_irreducible_quadratic() {
        // Brute force: a monic quadratic over F_2 is irreducible iff it has no root.
        let irreducible: Vec<Vec<u32>> = (0..4u32)
            .map(|low| vec![low & 1, low >> 1, 1])
            .filter(|f| (0..2).all(|x| (f[0] + f[1] * x + f[2] * x * x) % 2 != 0))
            .collect();
        assert_eq!(irreducible, vec![vec![1, 1, 1]]);
        assert_eq!(make_field(2, 2).unwrap().modulus(), &[1, 1, 1]);
    }

    #[test]
    fn f9_modulus_is_lexicographically_smallest() {
        let rootless = |f: &[u32]| (0..3).all(|x| (f[0] + f[1] * x + f[2] * x * x) % 3 != 0);
        let first = (0..9u32)
            .map(|low| vec![low % 3, low / 3, 1])
            .find(|f| rootless(f))
            .unwrap();
        assert_eq!(first, vec![1, 0, 1]);
        assert_eq!(make_field(3, 2).unwrap().modulus(), first.as_slice());
    }

    #[test]
    fn rejects_bad_parameters() {
        assert_eq!(make_field(4, 1).unwrap_err(), Error::NotPrime(4));
        assert_eq!(make_field(2, 0).unwrap_err(), Error::ZeroDegree);
        assert!(matches!(make_field(2, 21), Err(Error::FieldTooLarge { .. })));
        assert!(make_field(2, 20).is_ok());
    }

    #[test]
    fn small_examples() {
        let f3 = make_field(3, 1).unwrap();
        let two = FieldElem::new(&f3, &[2]).unwrap();
        assert_eq!((&two + &two).coeffs(), vec![1]);

        let f4 = make_field(2, 2).unwrap();
        let x = FieldElem::new(&f4, &[0, 1]).unwrap();
        assert_eq!((&x * &x).coeffs(), vec![1, 1]);
    }

    #[test]
    fn inverse_of_zero_is_an_error() {
        let f = make_field(5, 1).unwrap();
        assert!(FieldElem::zero(&f).inv().is_err());
        let big = make_field(2, 12).unwrap();
        assert!(big.inv(Elem::ZERO).is_err());
    }

    #[test]
    #[should_panic(expected = "mixing")]
    fn mixing_fields_panics() {
        let a = FieldElem::one(&make_field(2, 2).unwrap());
        let b = FieldElem::one(&make_field(3, 1).unwrap());
        let _ = &a + &b;
    }

    #[test]
    fn lagrange_on_every_element() {
        for (p, m) in [(2, 1), (2, 2), (3, 2), (5, 1), (7, 1), (2, 6), (3, 4)] {
            let f = make_field(p, m).unwrap();
            for a in f.elements().skip(1) {
                assert_eq!(f.pow(a, f.q() as u64 - 1), Elem::ONE);
                assert_eq!(f.mul(a, f.inv(a).unwrap()), Elem::ONE);
            }
        }
    }

    #[test]
    fn table_and_schoolbook_agree() {
        let f = make_field(3, 2).unwrap();
        for a in 0..9 {
            for b in 0..9 {
                assert_eq!(f.mul(Elem(a), Elem(b)).0, f.mul_slow(a, b));
                assert_eq!(f.add(Elem(a), Elem(b)).0, f.add_slow(a, b));
            }
        }
    }

    #[test]
    fn multiplicative_order_examples() {
        // Oracle: direct iteration of powers.
        let brute = |q: u64, n: u64| (1..).find(|&t| q.pow(t) % n == 1).unwrap();
        assert_eq!(multiplicative_order(2, 21).unwrap(), 6);
        assert_eq!(brute(2, 21), 6);
        assert_eq!(multiplicative_order(3, 242).unwrap(), 5);
        assert_eq!(multiplicative_order(3, 121).unwrap(), 5);
        assert_eq!(multiplicative_order(7, 1).unwrap(), 1);
        assert!(multiplicative_order(3, 6).is_err());
    }

    #[test]
    fn roots_of_unity() {
        let f4 = make_field(2, 2).unwrap();
        let beta = nth_root_of_unity(&f4, 3).unwrap();
        assert_eq!(beta.coeffs(), vec![0, 1]);

        let f2 = make_field(2, 1).unwrap();
        assert_eq!(nth_root_of_unity(&f2, 1).unwrap(), FieldElem::one(&f2));

        let f64 = make_field(2, 6).unwrap();
        let gamma = f64.primitive_element();
        let beta = nth_root_of_unity(&f64, 21).unwrap();
        assert_eq!(beta.value(), f64.pow(gamma, 3));
        assert_eq!(beta.order().unwrap(), 21);

        assert!(nth_root_of_unity(&f64, 10).is_err());
    }

    #[test]
    fn embedding_of_f4_and_f9() {
        for (p, m, t) in [(2, 2, 5), (3, 2, 2), (2, 1, 6)] {
            let small = make_field(p, m).unwrap();
            let big = make_field(p as u64, m * t).unwrap();
            let emb = Embedding::new(&small, &big).unwrap();
            for a in small.elements() {
                let ea = emb.embed(a);
                // Frobenius-fixed
                assert_eq!(big.pow(ea, small.q() as u64), ea);
                assert_eq!(emb.project(ea), Some(a));
                for b in small.elements() {
                    let eb = emb.embed(b);
                    assert_eq!(big.mul(ea, eb), emb.embed(small.mul(a, b)));
                    assert_eq!(big.add(ea, eb), emb.embed(small.add(a, b)));
                }
            }
        }
    }

    #[test]
    fn display() {
        let f9 = make_field(3, 2).unwrap();
        let e = FieldElem::new(&f9, &[2, 1]).unwrap();
        assert_eq!(e.to_string(), "x + 2");
        assert_eq!(FieldElem::zero(&f9).to_string(), "0");
    }
}
