//! Linear codes over small fields: construction from generator polynomials,
//! encoding, duals, shortening, puncturing, Construction Y1, and exact weight
//! distributions by enumeration or MacWilliams.

mod enumerate;
mod matrix;
mod weights;

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::cosets::{boston_bound, DefiningSet, Kind};
use crate::error::{Error, Result};
use crate::gf::{Elem, FieldDesc};
use crate::poly::{Poly, Splitting};

use matrix::{rref, Arith};
pub use weights::{krawtchouk, macwilliams_transform, Method, WeightDistribution};

/// Codewords visited before falling back to bounds.
pub const DEFAULT_BUDGET: u64 = 1 << 26;
/// Opt-in budget for the hours-scale sweeps.
pub const EXTENDED_BUDGET: u64 = 1 << 31;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CodeKind {
    Cyclic,
    Negacyclic,
    Derived,
}

impl From<Kind> for CodeKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::Cyclic => CodeKind::Cyclic,
            Kind::Negacyclic => CodeKind::Negacyclic,
        }
    }
}

impl fmt::Display for CodeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CodeKind::Cyclic => "cyclic",
            CodeKind::Negacyclic => "negacyclic",
            CodeKind::Derived => "derived",
        })
    }
}

/// Where a code came from.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Provenance {
    pub family: Option<String>,
    pub param: Option<String>,
    /// Defining set of the code the derivation chain started from.
    pub defining_set: Option<DefiningSet>,
    pub ops: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DistanceStatus {
    Exact,
    LowerBoundOnly,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MinDistance {
    /// `None` only for the zero code.
    pub d: Option<u64>,
    pub status: DistanceStatus,
}

/// A linear `[n, k]_q` code held as a canonical RREF generator matrix.
#[derive(Clone)]
pub struct LinearCode {
    field: Arc<FieldDesc>,
    arith: Arc<Arith>,
    n: usize,
    genmat: Vec<Vec<u8>>,
    pivots: Vec<usize>,
    kind: CodeKind,
    defining_set: Option<DefiningSet>,
    lower_bound: u64,
    provenance: Provenance,
}

impl PartialEq for LinearCode {
    fn eq(&self, other: &Self) -> bool {
        *self.field == *other.field && self.n == other.n && self.genmat == other.genmat
    }
}

impl Eq for LinearCode {}

impl fmt::Debug for LinearCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {self}", self.kind)
    }
}

impl fmt::Display for LinearCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]_{}", self.n, self.k(), self.field.q())
    }
}

/// Number of nonzero symbols.
pub fn weight(word: &[Elem]) -> usize {
    word.iter().filter(|e| !e.is_zero()).count()
}

fn to_syms(word: &[Elem]) -> Vec<u8> {
    word.iter().map(|e| e.code() as u8).collect()
}

fn to_elems(word: &[u8]) -> Vec<Elem> {
    word.iter().map(|&s| Elem::from_code(s as u32)).collect()
}

impl LinearCode {
    fn assemble(field: &Arc<FieldDesc>, arith: Arc<Arith>, n: usize, mut rows: Vec<Vec<u8>>, kind: CodeKind) -> Self {
        let pivots = rref(&arith, &mut rows, n);
        LinearCode {
            field: field.clone(),
            arith,
            n,
            genmat: rows,
            pivots,
            kind,
            defining_set: None,
            lower_bound: 1,
            provenance: Provenance::default(),
        }
    }

    /// Derived code sharing this code's field and provenance, with one more
    /// operation recorded.
    fn derive(&self, n: usize, rows: Vec<Vec<u8>>, op: String, lower_bound: u64) -> Self {
        let mut out = Self::assemble(&self.field, self.arith.clone(), n, rows, CodeKind::Derived);
        out.lower_bound = lower_bound;
        out.provenance = self.provenance.clone();
        out.provenance.ops.push(op);
        out
    }

    /// Row space of `rows` (any rank), reduced to RREF.
    pub fn from_generator_matrix(field: &Arc<FieldDesc>, n: usize, rows: &[Vec<Elem>]) -> Result<Self> {
        let arith = Arc::new(Arith::new(field)?);
        let mut syms = Vec::with_capacity(rows.len());
        for row in rows {
            if row.len() != n {
                return Err(Error::MessageLength {
                    expected: n,
                    got: row.len(),
                });
            }
            if let Some(bad) = row.iter().find(|e| e.code() >= field.q()) {
                return Err(Error::FieldMismatch(format!("{bad:?} is not an element of {field}")));
            }
            syms.push(to_syms(row));
        }
        Ok(Self::assemble(field, arith, n, syms, CodeKind::Derived))
    }

    /// The ideal generated by `g` in `F_q[x]/(x^n - 1)` or `F_q[x]/(x^n + 1)`.
    pub fn from_generator_poly(g: &Poly, n: usize, kind: Kind) -> Result<Self> {
        let field = g.field();
        let arith = Arc::new(Arith::new(field)?);
        let modulus = Poly::x_n_minus_sign(field, n, kind);
        let sign = match kind {
            Kind::Cyclic => '-',
            Kind::Negacyclic => '+',
        };
        if n == 0 || g.is_zero() || !g.divides(&modulus)? {
            return Err(Error::NotADivisor(g.to_string(), sign));
        }
        let r = g.degree().unwrap_or(0);
        let k = n - r;
        let g_syms: Vec<u8> = g.coeffs().iter().map(|e| e.code() as u8).collect();
        let mut rows: Vec<Vec<u8>> = (0..k)
            .map(|i| {
                let mut row = vec![0u8; n];
                row[i..=i + r].copy_from_slice(&g_syms);
                row
            })
            .collect();
        reduce_banded(&arith, &mut rows, k);
        Ok(LinearCode {
            field: field.clone(),
            arith,
            n,
            genmat: rows,
            pivots: (0..k).collect(),
            kind: kind.into(),
            defining_set: None,
            lower_bound: 1,
            provenance: Provenance::default(),
        })
    }

    /// Cyclic or negacyclic code with defining set `t` over `field`.
    pub fn from_defining_set(field: &Arc<FieldDesc>, t: &DefiningSet) -> Result<Self> {
        if field.q() as u64 != t.q() {
            return Err(Error::FieldMismatch(format!(
                "defining set is {}-cyclotomic, field is {field}",
                t.q()
            )));
        }
        let splitting = Splitting::new(field, t.ambient())?;
        let g = splitting.generator_polynomial(t)?;
        let mut code = Self::from_generator_poly(&g, t.n() as usize, t.kind())?;
        code.lower_bound = t.lower_bound();
        code.defining_set = Some(t.clone());
        code.provenance.defining_set = Some(t.clone());
        Ok(code)
    }

    /// `[n, n]` code.
    pub fn full_space(field: &Arc<FieldDesc>, n: usize) -> Result<Self> {
        let rows = (0..n)
            .map(|i| {
                let mut r = vec![Elem::ZERO; n];
                r[i] = Elem::ONE;
                r
            })
            .collect::<Vec<_>>();
        Self::from_generator_matrix(field, n, &rows)
    }

    /// `[n, 0]` code.
    pub fn zero_code(field: &Arc<FieldDesc>, n: usize) -> Result<Self> {
        Self::from_generator_matrix(field, n, &[])
    }

    /// `[n, 1, n]` repetition code.
    pub fn repetition(field: &Arc<FieldDesc>, n: usize) -> Result<Self> {
        let mut code = Self::from_generator_matrix(field, n, &[vec![Elem::ONE; n]])?;
        code.lower_bound = n as u64;
        Ok(code)
    }

    pub fn with_origin(mut self, family: &str, param: &str) -> Self {
        self.provenance.family = Some(family.to_string());
        self.provenance.param = Some(param.to_string());
        self
    }

    pub fn field(&self) -> &Arc<FieldDesc> {
        &self.field
    }

    pub fn q(&self) -> u64 {
        self.field.q() as u64
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.genmat.len()
    }

    pub fn kind(&self) -> CodeKind {
        self.kind
    }

    pub fn defining_set(&self) -> Option<&DefiningSet> {
        self.defining_set.as_ref()
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn bch_bound(&self) -> Option<u64> {
        self.defining_set.as_ref().map(DefiningSet::bch_bound)
    }

    pub fn boston_bound(&self) -> Option<u64> {
        self.defining_set
            .as_ref()
            .filter(|t| t.kind() == Kind::Cyclic)
            .and_then(boston_bound)
    }

    /// Best lower bound on the minimum distance known without enumeration.
    pub fn lower_bound(&self) -> u64 {
        self.lower_bound
    }

    pub fn generator_matrix(&self) -> Vec<Vec<Elem>> {
        self.genmat.iter().map(|r| to_elems(r)).collect()
    }

    /// Pivot column of each generator row.
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn check_word(&self, word: &[Elem]) -> Result<()> {
        if word.len() != self.n {
            return Err(Error::MessageLength {
                expected: self.n,
                got: word.len(),
            });
        }
        match word.iter().find(|e| e.code() >= self.field.q()) {
            Some(bad) => Err(Error::FieldMismatch(format!("{bad:?} is not an element of {}", self.field))),
            None => Ok(()),
        }
    }

    pub fn encode(&self, message: &[Elem]) -> Result<Vec<Elem>> {
        if message.len() != self.k() {
            return Err(Error::MessageLength {
                expected: self.k(),
                got: message.len(),
            });
        }
        let mut word = vec![0u8; self.n];
        for (m, row) in message.iter().zip(&self.genmat) {
            let c = m.code() as u8;
            if c == 0 {
                continue;
            }
            for (w, &r) in word.iter_mut().zip(row) {
                *w = self.arith.add(*w, self.arith.mul(c, r));
            }
        }
        Ok(to_elems(&word))
    }

    /// Membership test by reduction against the RREF rows.
    pub fn contains(&self, word: &[Elem]) -> Result<bool> {
        self.check_word(word)?;
        let mut w = to_syms(word);
        for (row, &p) in self.genmat.iter().zip(&self.pivots) {
            let f = w[p];
            if f != 0 {
                self.arith.axpy_neg(&mut w, f, row, 0);
            }
        }
        Ok(w.iter().all(|&s| s == 0))
    }

    /// `(c_{n-1}, c_0, ..., c_{n-2})`, with the wrapped symbol negated for
    /// negacyclic codes.
    pub fn shift(&self, word: &[Elem]) -> Vec<Elem> {
        let n = word.len();
        if n == 0 {
            return Vec::new();
        }
        let mut out = Vec::with_capacity(n);
        let last = word[n - 1];
        out.push(match self.kind {
            CodeKind::Negacyclic => self.field.neg(last),
            _ => last,
        });
        out.extend_from_slice(&word[..n - 1]);
        out
    }

    /// `[n, n - k]` code spanning the null space of the generator matrix.
    pub fn dual(&self) -> Result<Self> {
        let k = self.k();
        let mut is_pivot = vec![false; self.n];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        let rows: Vec<Vec<u8>> = (0..self.n)
            .filter(|&c| !is_pivot[c])
            .map(|c| {
                let mut v = vec![0u8; self.n];
                v[c] = 1;
                for r in 0..k {
                    v[self.pivots[r]] = self.arith.neg[self.genmat[r][c] as usize];
                }
                v
            })
            .collect();
        let mut out = self.derive(self.n, rows, "dual".into(), 1);
        if let Some(t) = &self.defining_set {
            let td = t.dual()?;
            out.kind = t.kind().into();
            out.lower_bound = td.lower_bound();
            out.defining_set = Some(td);
        } else if matches!(self.kind, CodeKind::Cyclic | CodeKind::Negacyclic) {
            out.kind = self.kind;
        }
        Ok(out)
    }

    fn check_position(&self, position: usize) -> Result<()> {
        if position >= self.n {
            return Err(Error::PositionOutOfRange { position, n: self.n });
        }
        Ok(())
    }

    /// Codewords vanishing at `position`, with that coordinate deleted.
    pub fn shorten(&self, position: usize) -> Result<Self> {
        self.check_position(position)?;
        let mut rows = self.genmat.clone();
        if let Some(i) = rows.iter().position(|r| r[position] != 0) {
            let pivot = rows.remove(i);
            let inv = self.arith.inv[pivot[position] as usize];
            for row in rows.iter_mut() {
                let f = self.arith.mul(row[position], inv);
                if f != 0 {
                    self.arith.axpy_neg(row, f, &pivot, 0);
                }
            }
        }
        for row in rows.iter_mut() {
            row.remove(position);
        }
        Ok(self.derive(self.n - 1, rows, format!("shorten({position})"), self.lower_bound))
    }

    /// Shortens at each position in turn (positions refer to the current
    /// code at each step).
    pub fn shorten_many(&self, positions: &[usize]) -> Result<Self> {
        let mut code = self.clone();
        for &p in positions {
            code = code.shorten(p)?;
        }
        Ok(code)
    }

    /// Deletes coordinate `position`.
    pub fn puncture(&self, position: usize) -> Result<Self> {
        self.check_position(position)?;
        let rows = self
            .genmat
            .iter()
            .map(|r| {
                let mut r = r.clone();
                r.remove(position);
                r
            })
            .collect();
        let bound = self.lower_bound.saturating_sub(1).max(1);
        Ok(self.derive(self.n - 1, rows, format!("puncture({position})"), bound))
    }

    pub fn puncture_many(&self, positions: &[usize]) -> Result<Self> {
        let mut code = self.clone();
        for &p in positions {
            code = code.puncture(p)?;
        }
        Ok(code)
    }

    /// Shortens on the support of a minimum-weight codeword of the dual.
    pub fn construction_y1(&self, budget: u64) -> Result<Self> {
        let dual = self.dual()?;
        if dual.k() == 0 {
            return Err(Error::NoDualCodeword);
        }
        if !within(dual.q(), dual.k(), budget) {
            return Err(Error::BudgetExceeded {
                needed: format!("{}^{}", dual.q(), dual.k()),
                budget,
            });
        }
        let e = enumerate::enumerate(&dual.arith, &dual.genmat, dual.n, true);
        let word = e.min_word.ok_or(Error::NoDualCodeword)?;
        let support: Vec<usize> = (0..self.n).filter(|&i| word[i] != 0).collect();
        let mut code = self.clone();
        for &p in support.iter().rev() {
            code = code.shorten(p)?;
        }
        code.provenance = self.provenance.clone();
        code.provenance.ops.push(format!("y1{support:?}"));
        Ok(code)
    }

    /// Exact distribution when either the code or its dual fits the budget,
    /// otherwise a bound-only placeholder.
    pub fn weight_distribution(&self, budget: u64) -> Result<WeightDistribution> {
        let k = self.k();
        if within(self.q(), k, budget) {
            let e = enumerate::enumerate(&self.arith, &self.genmat, self.n, false);
            return Ok(WeightDistribution::from_counts(&e.counts, Method::Enumeration));
        }
        if within(self.q(), self.n - k, budget) {
            let dual = self.dual()?;
            let e = enumerate::enumerate(&dual.arith, &dual.genmat, dual.n, false);
            let dd = WeightDistribution::from_counts(&e.counts, Method::Enumeration);
            return macwilliams_transform(&dd, self.n, self.q(), dual.k());
        }
        Ok(WeightDistribution::bound_only(self.n, self.lower_bound))
    }

    pub fn min_distance(&self, budget: u64) -> Result<MinDistance> {
        let dist = self.weight_distribution(budget)?;
        Ok(if dist.is_exact() {
            MinDistance {
                d: dist.min_distance().map(|d| d as u64),
                status: DistanceStatus::Exact,
            }
        } else {
            MinDistance {
                d: (self.k() > 0).then_some(self.lower_bound),
                status: DistanceStatus::LowerBoundOnly,
            }
        })
    }

    /// A minimum-weight codeword, if the code fits the budget.
    pub fn min_weight_word(&self, budget: u64) -> Result<Option<Vec<Elem>>> {
        if !within(self.q(), self.k(), budget) {
            return Err(Error::BudgetExceeded {
                needed: format!("{}^{}", self.q(), self.k()),
                budget,
            });
        }
        let e = enumerate::enumerate(&self.arith, &self.genmat, self.n, true);
        Ok(e.min_word.map(|w| to_elems(&w)))
    }
}

/// `q^k <= budget`.
fn within(q: u64, k: usize, budget: u64) -> bool {
    u32::try_from(k)
        .ok()
        .and_then(|k| (q as u128).checked_pow(k))
        .is_some_and(|v| v <= budget as u128)
}

/// RREF of the shifted-generator matrix, whose row `i` starts at column `i`.
/// Works bottom-up so each elimination touches only the pivot entry and the
/// `n - k` redundancy columns.
fn reduce_banded(arith: &Arith, rows: &mut [Vec<u8>], k: usize) {
    for i in (0..k).rev() {
        let (head, tail) = rows.split_at_mut(i + 1);
        let row = &mut head[i];
        let lead = row[i];
        if lead != 1 {
            arith.scale(&mut row[i..], arith.inv[lead as usize]);
        }
        for (off, below) in tail.iter().enumerate() {
            let j = i + 1 + off;
            let f = row[j];
            if f == 0 {
                continue;
            }
            row[j] = 0;
            let mul = &arith.mul[f as usize * arith.q..(f as usize + 1) * arith.q];
            for c in k..row.len() {
                let b = below[c];
                if b != 0 {
                    row[c] = arith.sub(row[c], mul[b as usize]);
                }
            }
        }
    }
}
