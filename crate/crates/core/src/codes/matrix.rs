use crate::error::{Error, Result};
use crate::gf::{Elem, FieldDesc};

/// Byte-sized operation tables for a code alphabet (`q <= 256`). Symbols use
/// the same encoding as [`Elem`].
#[derive(Debug, Clone)]
pub(crate) struct Arith {
    pub q: usize,
    pub p: u32,
    pub m: u32,
    pub add: Vec<u8>,
    pub sub: Vec<u8>,
    pub mul: Vec<u8>,
    pub neg: Vec<u8>,
    pub inv: Vec<u8>,
}

impl Arith {
    pub fn new(field: &FieldDesc) -> Result<Self> {
        let q = field.q() as usize;
        if q > 256 {
            return Err(Error::CodeFieldTooLarge);
        }
        let mut add = vec![0u8; q * q];
        let mut sub = vec![0u8; q * q];
        let mut mul = vec![0u8; q * q];
        let elems: Vec<Elem> = field.elements().collect();
        for &a in &elems {
            for &b in &elems {
                let idx = a.code() as usize * q + b.code() as usize;
                add[idx] = field.add(a, b).code() as u8;
                sub[idx] = field.sub(a, b).code() as u8;
                mul[idx] = field.mul(a, b).code() as u8;
            }
        }
        let neg = elems.iter().map(|&a| field.neg(a).code() as u8).collect();
        let inv = elems
            .iter()
            .map(|&a| field.inv(a).map(|e| e.code() as u8).unwrap_or(0))
            .collect();
        Ok(Arith {
            q,
            p: field.p(),
            m: field.m(),
            add,
            sub,
            mul,
            neg,
            inv,
        })
    }

    #[inline]
    pub fn add(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn sub(&self, a: u8, b: u8) -> u8 {
        self.sub[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize * self.q + b as usize]
    }

    /// `row -= factor * pivot`, from column `from` on.
    pub fn axpy_neg(&self, row: &mut [u8], factor: u8, pivot: &[u8], from: usize) {
        let mul = &self.mul[factor as usize * self.q..(factor as usize + 1) * self.q];
        for (r, &p) in row[from..].iter_mut().zip(&pivot[from..]) {
            if p != 0 {
                *r = self.sub[*r as usize * self.q + mul[p as usize] as usize];
            }
        }
    }

    pub fn scale(&self, row: &mut [u8], factor: u8) {
        for r in row.iter_mut() {
            *r = self.mul(*r, factor);
        }
    }
}

/// Reduces `rows` in place to reduced row-echelon form, dropping zero rows.
/// Returns the pivot column of each remaining row.
pub(crate) fn rref(arith: &Arith, rows: &mut Vec<Vec<u8>>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(found) = (r..rows.len()).find(|&i| rows[i][col] != 0) else {
            continue;
        };
        rows.swap(r, found);
        let lead = rows[r][col];
        if lead != 1 {
            let inv = arith.inv[lead as usize];
            arith.scale(&mut rows[r][col..], inv);
        }
        let pivot = std::mem::take(&mut rows[r]);
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && row[col] != 0 {
                let f = row[col];
                arith.axpy_neg(row, f, &pivot, col);
            }
        }
        rows[r] = pivot;
        pivots.push(col);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::make_field;

    #[test]
    fn rref_is_canonical() {
        let f = make_field(3, 1).unwrap();
        let a = Arith::new(&f).unwrap();
        let mut m1 = vec![vec![1, 2, 0, 1], vec![2, 1, 1, 0], vec![0, 0, 1, 1]];
        // same row space, different basis
        let mut m2 = vec![vec![0, 0, 1, 1], vec![1, 2, 1, 2], vec![1, 2, 0, 1]];
        let p1 = rref(&a, &mut m1, 4);
        let p2 = rref(&a, &mut m2, 4);
        assert_eq!(m1, m2);
        assert_eq!(p1, p2);
        assert_eq!(p1, vec![0, 2]);
        assert_eq!(m1, vec![vec![1, 2, 0, 1], vec![0, 0, 1, 1]]);
    }

    #[test]
    fn rejects_large_alphabets() {
        let f = make_field(2, 9).unwrap();
        assert_eq!(Arith::new(&f).unwrap_err(), Error::CodeFieldTooLarge);
    }
}
