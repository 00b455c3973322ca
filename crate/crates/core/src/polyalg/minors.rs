use std::collections::HashMap;

use super::poly::Poly;
use crate::error::{Error, Result};

/// A dense row-major matrix of polynomials over one ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    p: u32,
    nvars: usize,
    rows: usize,
    cols: usize,
    entries: Vec<Poly>,
}

impl PolyMatrix {
    pub fn zeros(p: u32, nvars: usize, rows: usize, cols: usize) -> Self {
        PolyMatrix {
            p,
            nvars,
            rows,
            cols,
            entries: vec![Poly::zero(p, nvars); rows * cols],
        }
    }

    pub fn from_rows(p: u32, nvars: usize, rows: Vec<Vec<Poly>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let nrows = rows.len();
        let mut entries = Vec::with_capacity(nrows * cols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != cols {
                return Err(Error::ShapeError(format!(
                    "row {i} has {} entries, expected {cols}",
                    row.len()
                )));
            }
            for f in row {
                if f.modulus() != p || f.nvars() != nvars {
                    return Err(Error::ModulusMismatch(format!(
                        "entry over F_{}[{} vars] in a matrix over F_{p}[{nvars} vars]",
                        f.modulus(),
                        f.nvars()
                    )));
                }
                entries.push(f);
            }
        }
        Ok(PolyMatrix {
            p,
            nvars,
            rows: nrows,
            cols,
            entries,
        })
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, f: Poly) {
        assert!(
            f.modulus() == self.p && f.nvars() == self.nvars,
            "entry from another ring"
        );
        self.entries[i * self.cols + j] = f;
    }

    pub fn row(&self, i: usize) -> &[Poly] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Poly>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn remove_row(&mut self, i: usize) {
        self.entries.drain(i * self.cols..(i + 1) * self.cols);
        self.rows -= 1;
    }

    pub fn remove_col(&mut self, j: usize) {
        let cols = self.cols;
        let mut k = 0;
        self.entries.retain(|_| {
            let keep = k % cols != j;
            k += 1;
            keep
        });
        self.cols -= 1;
    }
}

/// All maximal minors of a matrix with `l` columns and at least `l` rows,
/// one per `l`-subset of rows in lexicographic order.
///
/// Each minor is expanded along its last column; subdeterminants on the
/// first `k` columns are shared between minors through a cache keyed by the
/// row subset.
pub fn maximal_minors(m: &PolyMatrix, l: usize) -> Result<Vec<Poly>> {
    if m.cols != l || m.rows < l {
        return Err(Error::ShapeError(format!(
            "need {l} columns and at least {l} rows, got {}x{}",
            m.rows, m.cols
        )));
    }
    if m.rows > 64 {
        return Err(Error::ShapeError(format!("{} rows exceed the supported 64", m.rows)));
    }
    let mut cache: HashMap<u64, Poly> = HashMap::new();
    let mut out = Vec::new();
    for subset in combinations(m.rows, l) {
        let mask = subset.iter().fold(0u64, |acc, &i| acc | 1 << i);
        out.push(det(m, mask, &mut cache));
    }
    Ok(out)
}

/// Determinant of the rows in `mask` against the first `popcount(mask)`
/// columns.
fn det(m: &PolyMatrix, mask: u64, cache: &mut HashMap<u64, Poly>) -> Poly {
    let k = mask.count_ones() as usize;
    if k == 0 {
        return Poly::one(m.p, m.nvars);
    }
    if let Some(hit) = cache.get(&mask) {
        return hit.clone();
    }
    let col = k - 1;
    let mut acc = Poly::zero(m.p, m.nvars);
    let mut pos = 0;
    for i in 0..m.rows {
        if mask & (1 << i) == 0 {
            continue;
        }
        let entry = m.get(i, col);
        if !entry.is_zero() {
            let sub = det(m, mask & !(1 << i), cache);
            let term = entry * &sub;
            acc = if (pos + col).is_multiple_of(2) {
                &acc + &term
            } else {
                &acc - &term
            };
        }
        pos += 1;
    }
    cache.insert(mask, acc.clone());
    acc
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}
