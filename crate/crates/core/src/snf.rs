//! Sparse integer matrices and their Smith normal form.
//!
//! Elimination runs on arbitrary-precision integers. Unit pivots are taken
//! first (their rows and columns can be dropped once the column is cleared);
//! otherwise the pivot is a nonzero entry of minimal absolute value, and
//! Euclidean remainders shrink that minimum until the pivot divides its row
//! and column.

use std::collections::{HashMap, HashSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// A sparse integer matrix stored by columns; each column is sorted by row
/// and holds no explicit zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    columns: Vec<Vec<(usize, i64)>>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            columns: vec![Vec::new(); cols],
        }
    }

    pub fn from_dense(data: &[Vec<i64>]) -> Self {
        let rows = data.len();
        let cols = data.first().map_or(0, Vec::len);
        let mut m = IntMatrix::zeros(rows, cols);
        for (i, row) in data.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged dense matrix");
            for (j, &x) in row.iter().enumerate() {
                m.add(i, j, x);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn column(&self, j: usize) -> &[(usize, i64)] {
        &self.columns[j]
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        match self.columns[j].binary_search_by_key(&i, |&(r, _)| r) {
            Ok(p) => self.columns[j][p].1,
            Err(_) => 0,
        }
    }

    /// Adds `x` to entry `(i, j)`.
    pub fn add(&mut self, i: usize, j: usize, x: i64) {
        assert!(i < self.rows && j < self.cols);
        let col = &mut self.columns[j];
        match col.binary_search_by_key(&i, |&(r, _)| r) {
            Ok(p) => {
                col[p].1 += x;
                if col[p].1 == 0 {
                    col.remove(p);
                }
            }
            Err(p) => {
                if x != 0 {
                    col.insert(p, (i, x));
                }
            }
        }
    }

    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        let mut d = vec![vec![0; self.cols]; self.rows];
        for (j, col) in self.columns.iter().enumerate() {
            for &(i, x) in col {
                d[i][j] = x;
            }
        }
        d
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Vec::is_empty)
    }

    /// Matrix product `self * rhs`.
    pub fn mul(&self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        let mut out = IntMatrix::zeros(self.rows, rhs.cols);
        for (j, col) in rhs.columns.iter().enumerate() {
            let mut acc: HashMap<usize, i64> = HashMap::new();
            for &(k, y) in col {
                for &(i, x) in &self.columns[k] {
                    *acc.entry(i).or_default() += x * y;
                }
            }
            let mut entries: Vec<(usize, i64)> = acc.into_iter().filter(|&(_, v)| v != 0).collect();
            entries.sort_unstable();
            out.columns[j] = entries;
        }
        out
    }
}

/// Nonzero invariant factors `d_1 | d_2 | ... | d_rank`, all positive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub factors: Vec<BigInt>,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    /// The factors greater than one.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.factors.iter().filter(|d| !d.is_one()).cloned().collect()
    }
}

struct Work {
    rows: Vec<HashMap<usize, BigInt>>,
    cols: Vec<HashSet<usize>>,
}

impl Work {
    fn new(m: &IntMatrix) -> Self {
        let mut rows = vec![HashMap::new(); m.rows];
        let mut cols = vec![HashSet::new(); m.cols];
        for (j, col) in m.columns.iter().enumerate() {
            for &(i, x) in col {
                rows[i].insert(j, BigInt::from(x));
                cols[j].insert(i);
            }
        }
        Work { rows, cols }
    }

    /// `row[dst] -= q * row[src]`.
    fn row_axpy(&mut self, dst: usize, src: usize, q: &BigInt) {
        let src_row: Vec<(usize, BigInt)> =
            self.rows[src].iter().map(|(&c, v)| (c, v.clone())).collect();
        for (c, v) in src_row {
            let entry = self.rows[dst].entry(c).or_insert_with(BigInt::zero);
            *entry -= q * v;
            if entry.is_zero() {
                self.rows[dst].remove(&c);
                self.cols[c].remove(&dst);
            } else {
                self.cols[c].insert(dst);
            }
        }
    }

    /// `col[dst] -= q * col[src]`.
    fn col_axpy(&mut self, dst: usize, src: usize, q: &BigInt) {
        let rows_in_src: Vec<usize> = self.cols[src].iter().copied().collect();
        for i in rows_in_src {
            let v = self.rows[i][&src].clone();
            let entry = self.rows[i].entry(dst).or_insert_with(BigInt::zero);
            *entry -= q * v;
            if entry.is_zero() {
                self.rows[i].remove(&dst);
                self.cols[dst].remove(&i);
            } else {
                self.cols[dst].insert(i);
            }
        }
    }

    fn drop_row_col(&mut self, r: usize, c: usize) {
        for &j in self.rows[r].keys() {
            self.cols[j].remove(&r);
        }
        self.rows[r].clear();
        for i in std::mem::take(&mut self.cols[c]) {
            self.rows[i].remove(&c);
        }
    }

    /// A unit entry, preferring the sparsest row, scanning columns in order.
    fn find_unit(&self, start_col: usize) -> Option<(usize, usize)> {
        let ncols = self.cols.len();
        for off in 0..ncols {
            let c = (start_col + off) % ncols;
            let best = self.cols[c]
                .iter()
                .filter(|&&i| self.rows[i][&c].magnitude().is_one())
                .min_by_key(|&&i| (self.rows[i].len(), i));
            if let Some(&i) = best {
                return Some((i, c));
            }
        }
        None
    }

    fn find_min(&self) -> Option<(usize, usize)> {
        let mut best: Option<(BigInt, usize, usize)> = None;
        for (i, row) in self.rows.iter().enumerate() {
            for (&c, v) in row {
                let a = v.abs();
                let better = match &best {
                    None => true,
                    Some((b, bi, bc)) => a < *b || (a == *b && (i, c) < (*bi, *bc)),
                };
                if better {
                    best = Some((a, i, c));
                }
            }
        }
        best.map(|(_, i, c)| (i, c))
    }
}

/// Computes the invariant factors of an integer matrix.
pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let mut w = Work::new(m);
    let mut diagonal: Vec<BigInt> = Vec::new();
    let mut start = 0;

    loop {
        if let Some((p, c)) = w.find_unit(start) {
            let pivot = w.rows[p][&c].clone();
            let others: Vec<usize> = w.cols[c].iter().copied().filter(|&i| i != p).collect();
            for i in others {
                // pivot is ±1, so v / pivot = v * pivot
                let q = &w.rows[i][&c] * &pivot;
                w.row_axpy(i, p, &q);
            }
            w.drop_row_col(p, c);
            diagonal.push(BigInt::one());
            start = c;
            continue;
        }
        let Some((p, c)) = w.find_min() else { break };
        let pivot = w.rows[p][&c].clone();
        let others: Vec<usize> = w.cols[c].iter().copied().filter(|&i| i != p).collect();
        for i in others {
            let q = w.rows[i][&c].div_floor(&pivot);
            w.row_axpy(i, p, &q);
        }
        let others: Vec<usize> = w.rows[p].keys().copied().filter(|&j| j != c).collect();
        for j in others {
            let q = w.rows[p][&j].div_floor(&pivot);
            w.col_axpy(j, c, &q);
        }
        if w.cols[c].len() == 1 && w.rows[p].len() == 1 {
            diagonal.push(pivot.abs());
            w.drop_row_col(p, c);
        }
    }

    SmithForm {
        factors: divisibility_chain(diagonal),
    }
}

/// Turns a diagonal into the equivalent divisibility chain by replacing
/// pairs `(a, b)` with `(gcd, lcm)`.
fn divisibility_chain(diagonal: Vec<BigInt>) -> Vec<BigInt> {
    let (ones, mut rest): (Vec<BigInt>, Vec<BigInt>) = diagonal.into_iter().partition(|d| d.is_one());
    for i in 0..rest.len() {
        for j in i + 1..rest.len() {
            if (&rest[j] % &rest[i]).is_zero() {
                continue;
            }
            let g = rest[i].gcd(&rest[j]);
            let l = rest[i].lcm(&rest[j]);
            rest[i] = g;
            rest[j] = l;
        }
    }
    let mut out = ones;
    out.extend(rest);
    out
}
