//! `q`-cyclotomic cosets of `Z_N`, defining sets, and the lower bounds read
//! off a defining set (BCH for cyclic and negacyclic codes, and the
//! `{0, 1, 3, 5}` Boston instance).

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::gcd;

/// Whether a defining set lives in `Z_n` (cyclic) or among the odd residues
/// of `Z_{2n}` (negacyclic).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Cyclic,
    Negacyclic,
}

impl Kind {
    /// Size of the residue ring holding the defining set for length `n`.
    pub fn ambient(self, n: u64) -> u64 {
        match self {
            Kind::Cyclic => n,
            Kind::Negacyclic => 2 * n,
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Cyclic => "cyclic",
            Kind::Negacyclic => "negacyclic",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Coset {
    ambient: u64,
    q: u64,
    elems: Vec<u64>,
}

impl Coset {
    pub fn ambient(&self) -> u64 {
        self.ambient
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// Smallest element.
    pub fn rep(&self) -> u64 {
        self.elems[0]
    }

    /// Sorted residues.
    pub fn elems(&self) -> &[u64] {
        &self.elems
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn is_odd(&self) -> bool {
        self.elems.iter().all(|e| e % 2 == 1)
    }

    pub fn contains(&self, i: u64) -> bool {
        self.elems.binary_search(&i).is_ok()
    }
}

impl fmt::Display for Coset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.elems.iter().map(u64::to_string).collect();
        write!(f, "C_{} = {{{}}}", self.rep(), items.join(", "))
    }
}

/// The orbit of `i` under multiplication by `q` modulo `ambient`.
pub fn cyclotomic_coset(q: u64, ambient: u64, i: u64) -> Result<Coset> {
    if ambient == 0 || gcd(q, ambient) != 1 {
        return Err(Error::NotCoprime { q, n: ambient });
    }
    let start = i % ambient;
    let mut elems = vec![start];
    let mut x = (start as u128 * q as u128 % ambient as u128) as u64;
    while x != start {
        elems.push(x);
        x = (x as u128 * q as u128 % ambient as u128) as u64;
    }
    elems.sort_unstable();
    Ok(Coset {
        ambient,
        q,
        elems,
    })
}

/// Partition of `Z_ambient` into cosets, ordered by representative.
pub fn all_cosets(q: u64, ambient: u64) -> Result<Vec<Coset>> {
    if ambient == 0 || gcd(q, ambient) != 1 {
        return Err(Error::NotCoprime { q, n: ambient });
    }
    let mut seen = vec![false; ambient as usize];
    let mut out = Vec::new();
    for i in 0..ambient {
        if seen[i as usize] {
            continue;
        }
        let c = cyclotomic_coset(q, ambient, i)?;
        for &e in c.elems() {
            seen[e as usize] = true;
        }
        out.push(c);
    }
    Ok(out)
}

/// Cosets of `Z_ambient` made of odd residues, ordered by representative.
/// `ambient` is `2n` for negacyclic codes of length `n`.
pub fn odd_cosets(q: u64, ambient: u64) -> Result<Vec<Coset>> {
    if q % 2 == 0 {
        return Err(Error::EvenQNegacyclic(q));
    }
    Ok(all_cosets(q, ambient)?
        .into_iter()
        .filter(|c| c.rep() % 2 == 1)
        .collect())
}

/// A disjoint union of cyclotomic cosets.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DefiningSet {
    q: u64,
    n: u64,
    kind: Kind,
    cosets: Vec<Coset>,
    elems: Vec<u64>,
}

impl DefiningSet {
    /// Builds the union of the cosets generated by `reps` (residues of the
    /// ambient ring, reduced modulo it).
    pub fn from_reps(q: u64, n: u64, kind: Kind, reps: &[u64]) -> Result<Self> {
        if kind == Kind::Negacyclic && q % 2 == 0 {
            return Err(Error::EvenQNegacyclic(q));
        }
        let ambient = kind.ambient(n);
        let cosets = reps
            .iter()
            .map(|&r| cyclotomic_coset(q, ambient, r))
            .collect::<Result<Vec<_>>>()?;
        Self::from_cosets(q, n, kind, cosets)
    }

    pub fn from_cosets(q: u64, n: u64, kind: Kind, mut cosets: Vec<Coset>) -> Result<Self> {
        let ambient = kind.ambient(n);
        if n == 0 {
            return Err(Error::InvalidDefiningSet("length must be positive".into()));
        }
        if gcd(q, ambient) != 1 {
            return Err(Error::NotCoprime { q, n: ambient });
        }
        let mut all = BTreeSet::new();
        for c in &cosets {
            if c.ambient != ambient || c.q != q {
                return Err(Error::InvalidDefiningSet(format!(
                    "coset {c} is not a {q}-cyclotomic coset of Z_{ambient}"
                )));
            }
            if kind == Kind::Negacyclic && !c.is_odd() {
                return Err(Error::InvalidDefiningSet(format!(
                    "negacyclic defining sets need odd cosets, got {c}"
                )));
            }
            for &e in c.elems() {
                if !all.insert(e) {
                    return Err(Error::InvalidDefiningSet(format!(
                        "coset {c} overlaps another coset"
                    )));
                }
            }
        }
        cosets.sort_by_key(Coset::rep);
        Ok(DefiningSet {
            q,
            n,
            kind,
            cosets,
            elems: all.into_iter().collect(),
        })
    }

    pub fn empty(q: u64, n: u64, kind: Kind) -> Result<Self> {
        Self::from_cosets(q, n, kind, Vec::new())
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// Code length.
    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn ambient(&self) -> u64 {
        self.kind.ambient(self.n)
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn cosets(&self) -> &[Coset] {
        &self.cosets
    }

    pub fn elems(&self) -> &[u64] {
        &self.elems
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn contains(&self, i: u64) -> bool {
        self.elems.binary_search(&(i % self.ambient())).is_ok()
    }

    pub fn reps(&self) -> Vec<u64> {
        self.cosets.iter().map(Coset::rep).collect()
    }

    /// BCH bound appropriate to the kind.
    pub fn bch_bound(&self) -> u64 {
        match self.kind {
            Kind::Cyclic => bch_bound_cyclic(self),
            Kind::Negacyclic => bch_bound_negacyclic(self),
        }
    }

    /// Defining set of the dual code: the negatives of every residue outside
    /// `T` (odd residues only, for negacyclic codes).
    pub fn dual(&self) -> Result<Self> {
        let ambient = self.ambient();
        let pool = match self.kind {
            Kind::Cyclic => all_cosets(self.q, ambient)?,
            Kind::Negacyclic => odd_cosets(self.q, ambient)?,
        };
        let reps: Vec<u64> = pool
            .iter()
            .filter(|c| !self.contains(c.rep()))
            .map(|c| (ambient - c.rep()) % ambient)
            .collect();
        Self::from_reps(self.q, self.n, self.kind, &reps)
    }

    /// `max(BCH, Boston)`.
    pub fn lower_bound(&self) -> u64 {
        let bch = self.bch_bound();
        match self.kind {
            Kind::Cyclic => bch.max(boston_bound(self).unwrap_or(0)),
            Kind::Negacyclic => bch,
        }
    }
}

/// Longest circular run of `true` in `hits`.
fn longest_circular_run(hits: &[bool]) -> u64 {
    let len = hits.len();
    if hits.iter().all(|&h| h) {
        return len as u64;
    }
    // Start scanning just after a miss so every run is seen unbroken.
    let start = hits.iter().position(|&h| !h).unwrap();
    let (mut best, mut cur) = (0u64, 0u64);
    for step in 1..=len {
        if hits[(start + step) % len] {
            cur += 1;
            best = best.max(cur);
        } else {
            cur = 0;
        }
    }
    best
}

/// One more than the longest run of consecutive residues mod `n` in `T`.
pub fn bch_bound_cyclic(t: &DefiningSet) -> u64 {
    debug_assert_eq!(t.kind, Kind::Cyclic);
    let n = t.ambient() as usize;
    let mut hits = vec![false; n];
    for &e in t.elems() {
        hits[e as usize] = true;
    }
    1 + longest_circular_run(&hits)
}

/// One more than the longest run of odd residues `i, i+2, ...` mod `2n` in `T`.
pub fn bch_bound_negacyclic(t: &DefiningSet) -> u64 {
    debug_assert_eq!(t.kind, Kind::Negacyclic);
    let mut hits = vec![false; t.n as usize];
    for &e in t.elems() {
        hits[(e / 2) as usize] = true;
    }
    1 + longest_circular_run(&hits)
}

/// `Some(4)` when `{0, 1, 3, 5}` lies in a cyclic defining set.
pub fn boston_bound(t: &DefiningSet) -> Option<u64> {
    if t.kind != Kind::Cyclic || t.ambient() <= 5 {
        return None;
    }
    [0, 1, 3, 5]
        .iter()
        .all(|&i| t.contains(i))
        .then_some(4)
}
