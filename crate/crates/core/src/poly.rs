//! Dense polynomials over a [`FieldDesc`], minimal polynomials of powers of a
//! root of unity, and generator polynomials built from defining sets.

use std::fmt;
use std::sync::Arc;

use crate::cosets::{Coset, DefiningSet, Kind};
use crate::error::{Error, Result};
use crate::gf::{make_field, multiplicative_order, Elem, Embedding, FieldDesc, FieldElem};

#[derive(Clone)]
pub struct Poly {
    field: Arc<FieldDesc>,
    coeffs: Vec<Elem>,
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        *self.field == *other.field && self.coeffs == other.coeffs
    }
}

impl Eq for Poly {}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self} over {})", self.field)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut terms = Vec::new();
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mut coef = self.field.format_elem(c);
            if coef.contains('+') {
                coef = format!("({coef})");
            }
            let term = match (i, coef.as_str()) {
                (0, _) => coef,
                (1, "1") => "x".into(),
                (1, _) => format!("{coef}x"),
                (_, "1") => format!("x^{i}"),
                _ => format!("{coef}x^{i}"),
            };
            terms.push(term);
        }
        f.write_str(&terms.join(" + "))
    }
}

impl Poly {
    /// Coefficients constant term first; trailing zeros are dropped.
    pub fn new(field: &Arc<FieldDesc>, mut coeffs: Vec<Elem>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly {
            field: field.clone(),
            coeffs,
        }
    }

    /// Polynomial with integer coefficients mapped into the prime subfield.
    pub fn from_ints(field: &Arc<FieldDesc>, coeffs: &[i64]) -> Self {
        Self::new(field, coeffs.iter().map(|&c| field.from_int(c)).collect())
    }

    pub fn zero(field: &Arc<FieldDesc>) -> Self {
        Self::new(field, Vec::new())
    }

    pub fn one(field: &Arc<FieldDesc>) -> Self {
        Self::new(field, vec![Elem::ONE])
    }

    /// `x^n - 1` for cyclic codes, `x^n + 1` for negacyclic ones.
    pub fn x_n_minus_sign(field: &Arc<FieldDesc>, n: usize, kind: Kind) -> Self {
        let mut coeffs = vec![Elem::ZERO; n + 1];
        coeffs[n] = Elem::ONE;
        coeffs[0] = match kind {
            Kind::Cyclic => field.neg(Elem::ONE),
            Kind::Negacyclic => Elem::ONE,
        };
        Self::new(field, coeffs)
    }

    pub fn field(&self) -> &Arc<FieldDesc> {
        &self.field
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Elem {
        self.coeffs.last().copied().unwrap_or(Elem::ZERO)
    }

    pub fn is_monic(&self) -> bool {
        self.lead() == Elem::ONE
    }

    fn check(&self, other: &Poly) {
        assert!(
            *self.field == *other.field,
            "mixing polynomials over {} and {}",
            self.field,
            other.field
        );
    }

    pub fn add(&self, other: &Poly) -> Poly {
        self.check(other);
        let f = &self.field;
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len)
            .map(|i| {
                let a = self.coeffs.get(i).copied().unwrap_or(Elem::ZERO);
                let b = other.coeffs.get(i).copied().unwrap_or(Elem::ZERO);
                f.add(a, b)
            })
            .collect();
        Poly::new(f, coeffs)
    }

    pub fn neg(&self) -> Poly {
        let coeffs = self.coeffs.iter().map(|&c| self.field.neg(c)).collect();
        Poly::new(&self.field, coeffs)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: Elem) -> Poly {
        let coeffs = self.coeffs.iter().map(|&a| self.field.mul(a, c)).collect();
        Poly::new(&self.field, coeffs)
    }

    /// Schoolbook product.
    pub fn mul(&self, other: &Poly) -> Poly {
        self.check(other);
        if self.is_zero() || other.is_zero() {
            return Poly::zero(&self.field);
        }
        let f = &self.field;
        let mut out = vec![Elem::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Poly::new(f, out)
    }

    /// `(quotient, remainder)` with `deg r < deg divisor`.
    pub fn divmod(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        self.check(divisor);
        let f = &self.field;
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let lead_inv = f.inv(divisor.lead())?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Poly::zero(f), self.clone()));
        }
        let mut quot = vec![Elem::ZERO; rem.len() - dd];
        for shift in (0..quot.len()).rev() {
            let c = f.mul(rem[shift + dd], lead_inv);
            quot[shift] = c;
            if c.is_zero() {
                continue;
            }
            for (i, &d) in divisor.coeffs.iter().enumerate() {
                rem[shift + i] = f.sub(rem[shift + i], f.mul(c, d));
            }
        }
        rem.truncate(dd);
        Ok((Poly::new(f, quot), Poly::new(f, rem)))
    }

    pub fn rem(&self, divisor: &Poly) -> Result<Poly> {
        Ok(self.divmod(divisor)?.1)
    }

    pub fn divides(&self, other: &Poly) -> Result<bool> {
        Ok(other.rem(self)?.is_zero())
    }

    /// Scales to a monic polynomial; the zero polynomial is returned as is.
    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.field.inv(self.lead()).expect("nonzero leading coefficient");
        self.scale(inv)
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Poly) -> Poly {
        self.check(other);
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b).expect("b is nonzero");
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn eval(&self, x: Elem) -> Elem {
        self.coeffs
            .iter()
            .rev()
            .fold(Elem::ZERO, |acc, &c| self.field.add(self.field.mul(acc, x), c))
    }

    /// Trial division by every monic polynomial of degree up to half the
    /// degree. Intended for small fields and moderate degrees.
    pub fn is_irreducible(&self) -> bool {
        let deg = match self.degree() {
            None | Some(0) => return false,
            Some(d) => d,
        };
        if deg == 1 {
            return true;
        }
        let q = self.field.q() as u64;
        for d in 1..=deg / 2 {
            for low in 0..q.pow(d as u32) {
                let mut coeffs = Vec::with_capacity(d + 1);
                let mut x = low;
                for _ in 0..d {
                    coeffs.push(self.field.elem((x % q) as u32).unwrap());
                    x /= q;
                }
                coeffs.push(Elem::ONE);
                let g = Poly::new(&self.field, coeffs);
                if self.rem(&g).unwrap().is_zero() {
                    return false;
                }
            }
        }
        true
    }
}

/// Splitting data for one `(F_q, Z_N)` pair: the smallest extension
/// `F_{q^t}` holding a primitive `N`-th root of unity `beta`, and the
/// embedding of `F_q` into it.
#[derive(Debug, Clone)]
pub struct Splitting {
    ambient: u64,
    degree: u32,
    embedding: Embedding,
    beta: Elem,
}

impl Splitting {
    pub fn new(base: &Arc<FieldDesc>, ambient: u64) -> Result<Self> {
        let t = multiplicative_order(base.q() as u64, ambient)?;
        let big = make_field(base.p() as u64, base.m() * t)?;
        let beta = big.root_of_unity(ambient)?;
        let embedding = Embedding::new(base, &big)?;
        Ok(Splitting {
            ambient,
            degree: t,
            embedding,
            beta,
        })
    }

    pub fn base(&self) -> &Arc<FieldDesc> {
        self.embedding.small()
    }

    pub fn big(&self) -> &Arc<FieldDesc> {
        self.embedding.big()
    }

    pub fn ambient(&self) -> u64 {
        self.ambient
    }

    /// `t = ord_N(q)`.
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn beta(&self) -> FieldElem {
        FieldElem::from_elem(self.big(), self.beta)
    }

    pub fn minimal_polynomial(&self, coset: &Coset) -> Result<Poly> {
        if coset.ambient() != self.ambient || coset.q() != self.base().q() as u64 {
            return Err(Error::Consistency(format!(
                "coset {coset} does not match Z_{} over {}",
                self.ambient,
                self.base()
            )));
        }
        minimal_polynomial_in(coset, self.beta, &self.embedding)
    }

    pub fn generator_polynomial(&self, t: &DefiningSet) -> Result<Poly> {
        if t.ambient() != self.ambient {
            return Err(Error::Consistency(format!(
                "defining set lives in Z_{}, splitting is for Z_{}",
                t.ambient(),
                self.ambient
            )));
        }
        let mut g = Poly::one(self.base());
        for c in t.cosets() {
            g = g.mul(&self.minimal_polynomial(c)?);
        }
        if g.degree() != Some(t.len()) {
            return Err(Error::Consistency(format!(
                "generator degree {:?} differs from |T| = {}",
                g.degree(),
                t.len()
            )));
        }
        let modulus = Poly::x_n_minus_sign(self.base(), t.n() as usize, t.kind());
        if !g.divides(&modulus)? {
            let sign = if t.kind() == Kind::Cyclic { '-' } else { '+' };
            return Err(Error::NotADivisor(g.to_string(), sign));
        }
        Ok(g)
    }
}

fn minimal_polynomial_in(coset: &Coset, beta: Elem, emb: &Embedding) -> Result<Poly> {
    let big = emb.big();
    // prod (x - beta^j), constant term first
    let mut prod = vec![Elem::ONE];
    for &j in coset.elems() {
        let root = big.neg(big.pow(beta, j));
        prod.push(Elem::ZERO);
        for i in (0..prod.len()).rev() {
            let shifted = if i > 0 { prod[i - 1] } else { Elem::ZERO };
            prod[i] = big.add(shifted, big.mul(prod[i], root));
        }
    }
    let coeffs = prod
        .iter()
        .map(|&c| {
            emb.project(c).ok_or_else(|| {
                Error::Consistency(format!(
                    "coefficient {} of the minimal polynomial of C_{} is not in {}",
                    big.format_elem(c),
                    coset.rep(),
                    emb.small()
                ))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Poly::new(emb.small(), coeffs))
}

/// `prod_{j in coset} (x - beta^j)` projected to `base`.
pub fn minimal_polynomial(coset: &Coset, beta: &FieldElem, base: &Arc<FieldDesc>) -> Result<Poly> {
    let emb = Embedding::new(base, beta.field())?;
    if beta.order()? != coset.ambient() {
        return Err(Error::Consistency(format!(
            "beta has order {}, coset lives in Z_{}",
            beta.order()?,
            coset.ambient()
        )));
    }
    minimal_polynomial_in(coset, beta.value(), &emb)
}

/// Product of the minimal polynomials of the cosets of `t`, checked to divide
/// `x^n - 1` (cyclic) or `x^n + 1` (negacyclic).
pub fn generator_polynomial(t: &DefiningSet, beta: &FieldElem, base: &Arc<FieldDesc>) -> Result<Poly> {
    if beta.order()? != t.ambient() {
        return Err(Error::Consistency(format!(
            "beta has order {}, defining set lives in Z_{}",
            beta.order()?,
            t.ambient()
        )));
    }
    let split = Splitting {
        ambient: t.ambient(),
        degree: multiplicative_order(base.q() as u64, t.ambient())?,
        embedding: Embedding::new(base, beta.field())?,
        beta: beta.value(),
    };
    split.generator_polynomial(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cosets::{all_cosets, cyclotomic_coset, odd_cosets};

    fn f(p: u64, m: u32) -> Arc<FieldDesc> {
        make_field(p, m).unwrap()
    }

    #[test]
    fn arithmetic_examples() {
        let f2 = f(2, 1);
        let xp1 = Poly::from_ints(&f2, &[1, 1]);
        assert_eq!(xp1.mul(&xp1), Poly::from_ints(&f2, &[1, 0, 1]));

        let f3 = f(3, 1);
        let (q, r) = Poly::from_ints(&f3, &[-1, 0, 0, 1])
            .divmod(&Poly::from_ints(&f3, &[-1, 1]))
            .unwrap();
        assert_eq!(q, Poly::from_ints(&f3, &[1, 1, 1]));
        assert!(r.is_zero());

        let g = Poly::from_ints(&f3, &[2, 0, 2]);
        assert_eq!(g.gcd(&Poly::zero(&f3)), g.monic());
        assert_eq!(g.monic(), Poly::from_ints(&f3, &[1, 0, 1]));
        assert_eq!(
            Poly::one(&f3).divmod(&Poly::zero(&f3)).unwrap_err(),
            Error::DivisionByZero
        );
    }

    #[test]
    fn minimal_polynomials_mod_7() {
        let f2 = f(2, 1);
        let s = Splitting::new(&f2, 7).unwrap();
        let c1 = cyclotomic_coset(2, 7, 1).unwrap();
        let m1 = s.minimal_polynomial(&c1).unwrap();
        let cubics = [
            Poly::from_ints(&f2, &[1, 1, 0, 1]),
            Poly::from_ints(&f2, &[1, 0, 1, 1]),
        ];
        assert!(cubics.contains(&m1));
        assert!(m1.divides(&Poly::x_n_minus_sign(&f2, 7, Kind::Cyclic)).unwrap());
        // beta^2 and beta^4 are roots too
        let big = s.big();
        let beta = s.beta().value();
        for j in [1, 2, 4] {
            let root = big.pow(beta, j);
            let val = m1
                .coeffs()
                .iter()
                .rev()
                .fold(Elem::ZERO, |acc, &c| big.add(big.mul(acc, root), c));
            assert!(val.is_zero());
        }
        let c0 = cyclotomic_coset(2, 7, 0).unwrap();
        assert_eq!(s.minimal_polynomial(&c0).unwrap(), Poly::from_ints(&f2, &[-1, 1]));
    }

    #[test]
    fn negacyclic_singleton_gives_x_plus_one() {
        // n = 31 over F_5: C_31 = {31} in Z_62 and beta^31 = -1.
        let f5 = f(5, 1);
        let s = Splitting::new(&f5, 62).unwrap();
        let c = cyclotomic_coset(5, 62, 31).unwrap();
        assert_eq!(c.elems(), &[31]);
        assert_eq!(s.minimal_polynomial(&c).unwrap(), Poly::from_ints(&f5, &[1, 1]));
    }

    #[test]
    fn free_function_matches_splitting() {
        let f9 = f(3, 2);
        let s = Splitting::new(&f9, 40).unwrap();
        let t = crate::cosets::DefiningSet::from_reps(9, 20, Kind::Negacyclic, &[1, 3, 5, 7]).unwrap();
        let g1 = s.generator_polynomial(&t).unwrap();
        let g2 = generator_polynomial(&t, &s.beta(), &f9).unwrap();
        assert_eq!(g1, g2);
        assert_eq!(g1.degree(), Some(7));
    }

    #[test]
    fn product_of_all_minimal_polynomials() {
        for (p, m, n) in [(2, 1, 21u64), (3, 1, 20), (2, 2, 31), (3, 2, 20), (5, 1, 12), (7, 1, 15)] {
            let base = f(p, m);
            let q = base.q() as u64;
            let s = Splitting::new(&base, n).unwrap();
            let mut prod = Poly::one(&base);
            for c in all_cosets(q, n).unwrap() {
                let mp = s.minimal_polynomial(&c).unwrap();
                assert!(mp.is_monic());
                assert_eq!(mp.degree(), Some(c.len()));
                assert!(mp.is_irreducible());
                prod = prod.mul(&mp);
            }
            assert_eq!(prod, Poly::x_n_minus_sign(&base, n as usize, Kind::Cyclic));

            if q % 2 == 1 {
                let s2 = Splitting::new(&base, 2 * n).unwrap();
                let mut prod = Poly::one(&base);
                for c in odd_cosets(q, 2 * n).unwrap() {
                    prod = prod.mul(&s2.minimal_polynomial(&c).unwrap());
                }
                assert_eq!(prod, Poly::x_n_minus_sign(&base, n as usize, Kind::Negacyclic));
            }
        }
    }

    #[test]
    fn generator_examples() {
        let f2 = f(2, 1);
        let t = crate::cosets::DefiningSet::from_reps(2, 21, Kind::Cyclic, &[0, 1, 3]).unwrap();
        let g = Splitting::new(&f2, 21).unwrap().generator_polynomial(&t).unwrap();
        assert_eq!(g.degree(), Some(10));

        let f3 = f(3, 1);
        let reps = [1, 5, 7, 11, 13, 17, 19, 23, 25, 31, 35, 41];
        let t = crate::cosets::DefiningSet::from_reps(3, 121, Kind::Negacyclic, &reps).unwrap();
        let g = Splitting::new(&f3, 242).unwrap().generator_polynomial(&t).unwrap();
        assert_eq!(g.degree(), Some(60));

        let empty = crate::cosets::DefiningSet::empty(2, 21, Kind::Cyclic).unwrap();
        let g = Splitting::new(&f2, 21).unwrap().generator_polynomial(&empty).unwrap();
        assert_eq!(g, Poly::one(&f2));
    }
}
