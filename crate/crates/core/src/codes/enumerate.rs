//! Exhaustive codeword enumeration.
//!
//! The message space `F_q^k` is viewed as `F_p^{km}` by expanding every
//! generator row into its multiples by the basis elements `1, x, ..., x^{m-1}`.
//! Messages are visited in modular Gray-code order over `F_p`, so each step
//! adds exactly one expanded row to the running codeword. For `p = 2` and
//! `p = 3` the running codeword is bit-sliced into 64-symbol words; other
//! characteristics keep a symbol vector and an incremental weight tally.
//!
//! The top coordinates of the message space are split off into independent
//! chunks that run in parallel. Chunk results are merged in chunk order, so
//! the counts (and the reported minimum-weight word) do not depend on
//! scheduling.

use rayon::prelude::*;

use super::matrix::Arith;

pub(crate) struct Enumerated {
    pub counts: Vec<u64>,
    /// First codeword of minimum nonzero weight, in chunk/Gray order.
    pub min_word: Option<Vec<u8>>,
}

trait Engine: Send {
    fn add_row(&mut self, j: usize);
    fn weight(&self) -> usize;
    fn word(&self) -> Vec<u8>;
}

struct Binary<'a> {
    planes: usize,
    words: usize,
    n: usize,
    rows: &'a [Vec<u64>],
    state: Vec<u64>,
}

impl Engine for Binary<'_> {
    #[inline]
    fn add_row(&mut self, j: usize) {
        for (s, r) in self.state.iter_mut().zip(&self.rows[j]) {
            *s ^= *r;
        }
    }

    #[inline]
    fn weight(&self) -> usize {
        let mut total = 0;
        for w in 0..self.words {
            let mut acc = 0u64;
            for pl in 0..self.planes {
                acc |= self.state[pl * self.words + w];
            }
            total += acc.count_ones() as usize;
        }
        total
    }

    fn word(&self) -> Vec<u8> {
        (0..self.n)
            .map(|i| {
                (0..self.planes).fold(0u8, |acc, pl| {
                    let bit = (self.state[pl * self.words + i / 64] >> (i % 64)) & 1;
                    acc | ((bit as u8) << pl)
                })
            })
            .collect()
    }
}

/// Each `F_3` digit uses two planes: one marking the value 1, one marking 2.
struct Ternary<'a> {
    digits: usize,
    words: usize,
    n: usize,
    rows: &'a [Vec<u64>],
    state: Vec<u64>,
}

impl Engine for Ternary<'_> {
    #[inline]
    fn add_row(&mut self, j: usize) {
        let row = &self.rows[j];
        let w = self.words;
        for d in 0..self.digits {
            let base = 2 * d * w;
            for i in 0..w {
                let (a0, a1) = (self.state[base + i], self.state[base + w + i]);
                let (b0, b1) = (row[base + i], row[base + w + i]);
                let az = !(a0 | a1);
                let bz = !(b0 | b1);
                self.state[base + i] = (az & b0) | (a0 & bz) | (a1 & b1);
                self.state[base + w + i] = (az & b1) | (a1 & bz) | (a0 & b0);
            }
        }
    }

    #[inline]
    fn weight(&self) -> usize {
        let mut total = 0;
        for i in 0..self.words {
            let mut acc = 0u64;
            for pl in 0..2 * self.digits {
                acc |= self.state[pl * self.words + i];
            }
            total += acc.count_ones() as usize;
        }
        total
    }

    fn word(&self) -> Vec<u8> {
        let w = self.words;
        (0..self.n)
            .map(|i| {
                let mut code = 0u8;
                for d in (0..self.digits).rev() {
                    let lo = (self.state[2 * d * w + i / 64] >> (i % 64)) & 1;
                    let hi = (self.state[(2 * d + 1) * w + i / 64] >> (i % 64)) & 1;
                    code = code * 3 + (lo + 2 * hi) as u8;
                }
                code
            })
            .collect()
    }
}

struct Sparse<'a> {
    q: usize,
    add: &'a [u8],
    rows: &'a [Vec<(u32, u8)>],
    state: Vec<u8>,
    weight: usize,
}

impl Engine for Sparse<'_> {
    #[inline]
    fn add_row(&mut self, j: usize) {
        for &(pos, val) in &self.rows[j] {
            let old = self.state[pos as usize];
            let new = self.add[old as usize * self.q + val as usize];
            self.weight = self.weight + (new != 0) as usize - (old != 0) as usize;
            self.state[pos as usize] = new;
        }
    }

    #[inline]
    fn weight(&self) -> usize {
        self.weight
    }

    fn word(&self) -> Vec<u8> {
        self.state.clone()
    }
}

enum Layout {
    Binary { planes: usize, rows: Vec<Vec<u64>> },
    Ternary { digits: usize, rows: Vec<Vec<u64>> },
    Sparse { rows: Vec<Vec<(u32, u8)>> },
}

fn pack_planes(rows: &[Vec<u8>], n: usize, planes: usize, bit: impl Fn(u8, usize) -> bool) -> Vec<Vec<u64>> {
    let words = n.div_ceil(64).max(1);
    rows.iter()
        .map(|row| {
            let mut packed = vec![0u64; planes * words];
            for (i, &s) in row.iter().enumerate() {
                for pl in 0..planes {
                    if bit(s, pl) {
                        packed[pl * words + i / 64] |= 1 << (i % 64);
                    }
                }
            }
            packed
        })
        .collect()
}

fn layout(arith: &Arith, rows: &[Vec<u8>], n: usize) -> Layout {
    let m = arith.m as usize;
    match arith.p {
        2 => Layout::Binary {
            planes: m,
            rows: pack_planes(rows, n, m, |s, pl| (s >> pl) & 1 == 1),
        },
        3 => Layout::Ternary {
            digits: m,
            rows: pack_planes(rows, n, 2 * m, |s, pl| {
                let digit = (s as u32 / 3u32.pow(pl as u32 / 2)) % 3;
                digit == 1 + (pl as u32 % 2)
            }),
        },
        _ => Layout::Sparse {
            rows: rows
                .iter()
                .map(|row| {
                    row.iter()
                        .enumerate()
                        .filter(|(_, &v)| v != 0)
                        .map(|(i, &v)| (i as u32, v))
                        .collect()
                })
                .collect(),
        },
    }
}

/// Expands each generator row into its multiples by `1, x, ..., x^{m-1}`.
fn expand(arith: &Arith, genmat: &[Vec<u8>]) -> Vec<Vec<u8>> {
    let p = arith.p as u8;
    let mut out = Vec::with_capacity(genmat.len() * arith.m as usize);
    for row in genmat {
        let mut basis = 1u8;
        for _ in 0..arith.m {
            out.push(row.iter().map(|&c| arith.mul(basis, c)).collect());
            basis = basis.wrapping_mul(p);
        }
    }
    out
}

struct ChunkResult {
    counts: Vec<u64>,
    best: Option<(usize, Vec<u8>)>,
}

fn run_chunk<E: Engine>(mut engine: E, chunk: u64, low: usize, top: usize, p: u32, n: usize, track: bool) -> ChunkResult {
    // Position the engine at the chunk's fixed top coordinates.
    let mut c = chunk;
    for t in 0..top {
        for _ in 0..c % p as u64 {
            engine.add_row(low + t);
        }
        c /= p as u64;
    }
    let mut counts = vec![0u64; n + 1];
    let mut best: Option<(usize, Vec<u8>)> = None;
    let mut best_w = usize::MAX;
    let mut visit = |e: &E| {
        let w = e.weight();
        counts[w] += 1;
        if track && w > 0 && w < best_w {
            best_w = w;
            best = Some((w, e.word()));
        }
    };
    visit(&engine);
    let pm1 = (p - 1) as u8;
    let mut digits = vec![0u8; low + 1];
    loop {
        let mut j = 0;
        while digits[j] == pm1 {
            digits[j] = 0;
            j += 1;
        }
        if j == low {
            break;
        }
        digits[j] += 1;
        engine.add_row(j);
        visit(&engine);
    }
    ChunkResult { counts, best }
}

/// Enumerates every codeword of the row space of `genmat` (length `n`).
pub(crate) fn enumerate(arith: &Arith, genmat: &[Vec<u8>], n: usize, track_min: bool) -> Enumerated {
    let rows = expand(arith, genmat);
    let total = rows.len();
    let p = arith.p;
    // Roughly 256 chunks, but never fewer than 2^12 words per chunk.
    let mut top = 0;
    while top < total && (p as u64).pow(top as u32 + 1) <= 256 && total - top > 12 {
        top += 1;
    }
    let low = total - top;
    let chunks = (p as u64).pow(top as u32);
    let words = n.div_ceil(64).max(1);
    let lay = layout(arith, &rows, n);

    let run = |chunk: u64| -> ChunkResult {
        match &lay {
            Layout::Binary { planes, rows } => run_chunk(
                Binary {
                    planes: *planes,
                    words,
                    n,
                    rows,
                    state: vec![0; planes * words],
                },
                chunk,
                low,
                top,
                p,
                n,
                track_min,
            ),
            Layout::Ternary { digits, rows } => run_chunk(
                Ternary {
                    digits: *digits,
                    words,
                    n,
                    rows,
                    state: vec![0; 2 * digits * words],
                },
                chunk,
                low,
                top,
                p,
                n,
                track_min,
            ),
            Layout::Sparse { rows } => run_chunk(
                Sparse {
                    q: arith.q,
                    add: &arith.add,
                    rows,
                    state: vec![0; n],
                    weight: 0,
                },
                chunk,
                low,
                top,
                p,
                n,
                track_min,
            ),
        }
    };

    let results: Vec<ChunkResult> = (0..chunks).into_par_iter().map(run).collect();
    let mut counts = vec![0u64; n + 1];
    let mut best: Option<(usize, Vec<u8>)> = None;
    for r in results {
        for (c, v) in counts.iter_mut().zip(&r.counts) {
            *c += v;
        }
        if let Some((w, word)) = r.best {
            if best.as_ref().is_none_or(|(bw, _)| w < *bw) {
                best = Some((w, word));
            }
        }
    }
    Enumerated {
        counts,
        min_word: best.map(|(_, w)| w),
    }
}
