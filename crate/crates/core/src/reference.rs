//! Best-known minimum distances read from a `q,n,k,d_best` CSV file.

use std::collections::BTreeMap;
use std::io::Read;
use std::path::Path;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BoundsTable {
    rows: BTreeMap<(u64, usize, usize), u64>,
}

fn bad(line: u64, msg: impl std::fmt::Display) -> Error {
    Error::Parse(format!("line {line}: {msg}"))
}

impl BoundsTable {
    pub fn from_path(path: &Path) -> Result<Self> {
        let f = std::fs::File::open(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Self::from_reader(f)
    }

    /// An empty input gives an empty table; otherwise the header must be
    /// exactly `q,n,k,d_best`.
    pub fn from_reader<R: Read>(reader: R) -> Result<Self> {
        let mut text = String::new();
        let mut reader = reader;
        reader.read_to_string(&mut text)?;
        let mut table = BoundsTable::default();
        let mut header_seen = false;
        for (i, raw) in text.lines().enumerate() {
            let line = i as u64 + 1;
            let raw = raw.trim();
            if raw.is_empty() || raw.starts_with('#') {
                continue;
            }
            let rec: Vec<&str> = raw.split(',').map(str::trim).collect();
            if !header_seen {
                if rec != ["q", "n", "k", "d_best"] {
                    return Err(bad(line, format!("expected header `q,n,k,d_best`, found `{raw}`")));
                }
                header_seen = true;
                continue;
            }
            if rec.len() != 4 {
                return Err(bad(line, format!("expected 4 fields, found {}", rec.len())));
            }
            let num = |i: usize, name: &str| -> Result<u64> {
                rec[i]
                    .parse::<u64>()
                    .map_err(|_| bad(line, format!("{name} = `{}` is not a nonnegative integer", &rec[i])))
            };
            let (q, n, k, d) = (num(0, "q")?, num(1, "n")? as usize, num(2, "k")? as usize, num(3, "d_best")?);
            if q < 2 {
                return Err(bad(line, format!("q = {q} is below 2")));
            }
            if k > n || n == 0 {
                return Err(bad(line, format!("need 0 <= k <= n and n >= 1, got n = {n}, k = {k}")));
            }
            if d as usize > n - k + 1 {
                return Err(bad(line, format!("d_best = {d} exceeds the Singleton bound {}", n - k + 1)));
            }
            if table.rows.insert((q, n, k), d).is_some() {
                return Err(bad(line, format!("duplicate entry for ({q}, {n}, {k})")));
            }
        }
        Ok(table)
    }

    pub fn get(&self, q: u64, n: usize, k: usize) -> Option<u64> {
        self.rows.get(&(q, n, k)).copied()
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// `d_best - d`, when the table has an entry.
    pub fn gap(&self, q: u64, n: usize, k: usize, d: u64) -> Option<i64> {
        self.get(q, n, k).map(|b| b as i64 - d as i64)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_looks_up() {
        let t = BoundsTable::from_reader("q,n,k,d_best\n3,121,61,23\n7, 60, 50, 6\n".as_bytes()).unwrap();
        assert_eq!(t.len(), 2);
        assert_eq!(t.gap(3, 121, 61, 22), Some(1));
        assert_eq!(t.gap(7, 60, 50, 5), Some(1));
        assert_eq!(t.get(2, 21, 11), None);
    }

    #[test]
    fn empty_input() {
        assert!(BoundsTable::from_reader("".as_bytes()).unwrap().is_empty());
        assert!(BoundsTable::from_reader("q,n,k,d_best\n".as_bytes()).unwrap().is_empty());
    }

    #[test]
    fn errors_carry_line_numbers() {
        let cases = [
            ("q,n,k\n", "line 1"),
            ("q,n,k,d_best\n3,121,61,23\n3,x,1,1\n", "line 3"),
            ("q,n,k,d_best\n3,121,61,23\n3,121,61,22\n", "line 3: duplicate"),
            ("q,n,k,d_best\n\n2,5,6,1\n", "line 3"),
            ("q,n,k,d_best\n2,5,3,9\n", "line 2: d_best"),
            ("q,n,k,d_best\n2,5,3\n", "line 2"),
        ];
        for (text, want) in cases {
            let err = BoundsTable::from_reader(text.as_bytes()).unwrap_err().to_string();
            assert!(err.contains(want), "{text:?}: {err}");
        }
    }
}
