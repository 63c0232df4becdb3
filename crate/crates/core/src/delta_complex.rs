//! Δ-complexes: graded cells with ordered face maps `d_0, ..., d_k`.
//!
//! Cells carry opaque keys chosen by whoever builds the complex; internally
//! every face reference is a position in the list of cells one dimension
//! down. Homology is unreduced and computed over the integers.

use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde_json::{json, Map, Value};

use crate::error::ComplexError;
use crate::snf::{smith_normal_form, IntMatrix, SmithForm};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaComplex<K> {
    cells: Vec<Vec<K>>,
    /// `faces[k][c]` lists `d_0 .. d_k` of the `c`-th `k`-cell; empty for `k = 0`.
    faces: Vec<Vec<Vec<usize>>>,
}

/// What [`DeltaComplex::validate`] found wrong, and where.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    FaceCount { dim: usize, cell: usize, found: usize },
    FaceOutOfRange { dim: usize, cell: usize, index: usize },
    /// `d_i d_j != d_{j-1} d_i` at this cell.
    Identity { dim: usize, cell: usize, i: usize, j: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::FaceCount { dim, cell, found } => {
                write!(f, "{dim}-cell #{cell} has {found} faces, expected {}", dim + 1)
            }
            Violation::FaceOutOfRange { dim, cell, index } => {
                write!(f, "d_{index} of {dim}-cell #{cell} is out of range")
            }
            Violation::Identity { dim, cell, i, j } => write!(
                f,
                "{dim}-cell #{cell} violates d_{i} d_{j} = d_{} d_{i}",
                j - 1
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyResult {
    pub betti: Vec<usize>,
    /// Invariant factors greater than one, per degree.
    pub torsion: Vec<Vec<BigInt>>,
}

impl HomologyResult {
    pub fn is_torsion_free(&self) -> bool {
        self.torsion.iter().all(Vec::is_empty)
    }

    /// Betti numbers with trailing zeros removed (at least degree 0 kept).
    pub fn trimmed_betti(&self) -> Vec<usize> {
        let mut b = self.betti.clone();
        while b.len() > 1 && b.last() == Some(&0) {
            b.pop();
        }
        b
    }

    pub fn to_json(&self) -> Value {
        json!({
            "betti": self.betti,
            "torsion": torsion_json(&self.torsion),
        })
    }
}

pub(crate) fn torsion_json(t: &[Vec<BigInt>]) -> Value {
    Value::Array(
        t.iter()
            .map(|ds| {
                Value::Array(
                    ds.iter()
                        .map(|d| match d.to_u64() {
                            Some(x) => json!(x),
                            None => json!(d.to_string()),
                        })
                        .collect(),
                )
            })
            .collect(),
    )
}

/// A group acting on the cells of a complex, given by generators. Each
/// generator lists, per dimension, the image position of every cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellAction {
    pub generators: Vec<Vec<Vec<usize>>>,
}

impl CellAction {
    pub fn trivial() -> Self {
        CellAction { generators: Vec::new() }
    }
}

/// The orbit complex together with the orbit of every original cell.
#[derive(Clone, Debug)]
pub struct Quotient<K> {
    pub complex: DeltaComplex<K>,
    /// `orbit_of[k][c]` is the quotient cell containing the `c`-th `k`-cell.
    pub orbit_of: Vec<Vec<usize>>,
}

impl<K: Clone + Eq + Hash + fmt::Debug> DeltaComplex<K> {
    /// Builds a complex from positional face lists. Nothing is checked; call
    /// [`validate`](Self::validate).
    pub fn from_indexed(cells: Vec<Vec<K>>, faces: Vec<Vec<Vec<usize>>>) -> Self {
        assert_eq!(cells.len(), faces.len(), "one face table per dimension");
        DeltaComplex { cells, faces }
    }

    /// Builds a complex by resolving each cell's face keys one dimension down.
    pub fn from_keyed<F>(cells: Vec<Vec<K>>, mut face_keys: F) -> Result<Self, ComplexError>
    where
        F: FnMut(usize, &K) -> Vec<K>,
    {
        let mut index: Vec<HashMap<&K, usize>> = Vec::with_capacity(cells.len());
        for layer in &cells {
            let mut m = HashMap::with_capacity(layer.len());
            for (i, k) in layer.iter().enumerate() {
                if m.insert(k, i).is_some() {
                    return Err(ComplexError::DuplicateCell(format!("{k:?}")));
                }
            }
            index.push(m);
        }
        let mut faces = vec![vec![Vec::new(); cells[0].len()]];
        for k in 1..cells.len() {
            let mut layer = Vec::with_capacity(cells[k].len());
            for key in &cells[k] {
                let fk = face_keys(k, key);
                if fk.len() != k + 1 {
                    return Err(ComplexError::FaceCount {
                        dim: k,
                        cell: format!("{key:?}"),
                        expected: k + 1,
                        found: fk.len(),
                    });
                }
                let idx = fk
                    .iter()
                    .map(|f| {
                        index[k - 1].get(f).copied().ok_or_else(|| ComplexError::UnknownFace {
                            dim: k - 1,
                            cell: format!("{key:?}"),
                            face: format!("{f:?}"),
                        })
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                layer.push(idx);
            }
            faces.push(layer);
        }
        Ok(DeltaComplex { cells, faces })
    }

    /// The one-point complex.
    pub fn point(key: K) -> Self {
        DeltaComplex {
            cells: vec![vec![key]],
            faces: vec![vec![Vec::new()]],
        }
    }

    /// Number of dimension layers (top dimension plus one).
    pub fn layers(&self) -> usize {
        self.cells.len()
    }

    pub fn top_dimension(&self) -> Option<usize> {
        self.cells.iter().rposition(|l| !l.is_empty())
    }

    pub fn cells(&self, k: usize) -> &[K] {
        self.cells.get(k).map_or(&[], Vec::as_slice)
    }

    pub fn cell(&self, k: usize, c: usize) -> &K {
        &self.cells[k][c]
    }

    pub fn faces_of(&self, k: usize, c: usize) -> &[usize] {
        &self.faces[k][c]
    }

    /// `d_i` of the `c`-th `k`-cell, as a position among the `(k-1)`-cells.
    pub fn face(&self, k: usize, c: usize, i: usize) -> usize {
        self.faces[k][c][i]
    }

    pub fn position(&self, k: usize, key: &K) -> Option<usize> {
        self.cells.get(k)?.iter().position(|x| x == key)
    }

    /// A lookup table from key to position for dimension `k`.
    pub fn key_index(&self, k: usize) -> HashMap<&K, usize> {
        self.cells(k).iter().enumerate().map(|(i, key)| (key, i)).collect()
    }

    pub fn validate(&self) -> Result<(), Violation> {
        for k in 1..self.cells.len() {
            let below = self.cells[k - 1].len();
            for (c, fs) in self.faces[k].iter().enumerate() {
                if fs.len() != k + 1 {
                    return Err(Violation::FaceCount { dim: k, cell: c, found: fs.len() });
                }
                if let Some(index) = fs.iter().position(|&f| f >= below) {
                    return Err(Violation::FaceOutOfRange { dim: k, cell: c, index });
                }
            }
        }
        for k in 2..self.cells.len() {
            for (c, fs) in self.faces[k].iter().enumerate() {
                for j in 1..=k {
                    for i in 0..j {
                        let lhs = self.faces[k - 1][fs[j]][i];
                        let rhs = self.faces[k - 1][fs[i]][j - 1];
                        if lhs != rhs {
                            return Err(Violation::Identity { dim: k, cell: c, i, j });
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn f_vector(&self) -> Vec<usize> {
        let mut f: Vec<usize> = self.cells.iter().map(Vec::len).collect();
        while f.len() > 1 && f.last() == Some(&0) {
            f.pop();
        }
        f
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.cells
            .iter()
            .enumerate()
            .map(|(k, l)| if k % 2 == 0 { l.len() as i64 } else { -(l.len() as i64) })
            .sum()
    }

    /// `∂_k = Σ_i (-1)^i d_i`: rows are `(k-1)`-cells, columns `k`-cells.
    pub fn boundary_matrix(&self, k: usize) -> IntMatrix {
        assert!(k >= 1, "boundary matrices start in degree 1");
        let rows = self.cells(k - 1).len();
        let cols = self.cells(k).len();
        let mut m = IntMatrix::zeros(rows, cols);
        if k < self.cells.len() {
            for (c, fs) in self.faces[k].iter().enumerate() {
                for (i, &f) in fs.iter().enumerate() {
                    m.add(f, c, if i % 2 == 0 { 1 } else { -1 });
                }
            }
        }
        m
    }

    /// Integral homology via the Smith normal forms of all boundary maps.
    pub fn homology(&self) -> HomologyResult {
        let top = self.top_dimension().unwrap_or(0);
        // snf[k] is the form of ∂_k for k = 1..=top+1
        let matrices: Vec<IntMatrix> = (1..=top + 1).map(|k| self.boundary_matrix(k)).collect();
        let snf: Vec<SmithForm> = matrices.par_iter().map(smith_normal_form).collect();
        let rank = |k: usize| if k == 0 { 0 } else { snf[k - 1].rank() };
        let mut betti = Vec::with_capacity(top + 1);
        let mut torsion = Vec::with_capacity(top + 1);
        for k in 0..=top {
            betti.push(self.cells(k).len() - rank(k) - rank(k + 1));
            torsion.push(snf[k].torsion());
        }
        HomologyResult { betti, torsion }
    }

    /// The `k + 1` vertices of a `k`-cell, in order, found by iterating face
    /// maps: to keep vertex `j` drop the last vertex while `j` is not last,
    /// otherwise drop the first.
    pub fn vertices(&self, k: usize, c: usize) -> Vec<usize> {
        (0..=k)
            .map(|mut j| {
                let (mut dim, mut cell) = (k, c);
                while dim > 0 {
                    if j < dim {
                        cell = self.faces[dim][cell][dim];
                    } else {
                        cell = self.faces[dim][cell][0];
                        j -= 1;
                    }
                    dim -= 1;
                }
                cell
            })
            .collect()
    }

    /// True iff every cell has pairwise distinct vertices and no two cells
    /// of the same dimension share a vertex set.
    pub fn is_simplicial(&self) -> bool {
        for k in 1..self.cells.len() {
            let mut seen = std::collections::HashSet::with_capacity(self.cells[k].len());
            for c in 0..self.cells[k].len() {
                let mut vs = self.vertices(k, c);
                vs.sort_unstable();
                if vs.windows(2).any(|w| w[0] == w[1]) {
                    return false;
                }
                if !seen.insert(vs) {
                    return false;
                }
            }
        }
        true
    }

    /// Connected components of the 1-skeleton.
    pub fn component_count(&self) -> usize {
        let n = self.cells(0).len();
        let mut parent: Vec<usize> = (0..n).collect();
        if self.cells.len() > 1 {
            for fs in &self.faces[1] {
                union(&mut parent, fs[0], fs[1]);
            }
        }
        (0..n).filter(|&v| find(&mut parent, v) == v).count()
    }

    /// The complex spanned by cells all of whose vertices are selected.
    pub fn vertex_span(&self, keep: &[bool]) -> DeltaComplex<K> {
        let mut new_pos: Vec<Vec<Option<usize>>> = Vec::with_capacity(self.cells.len());
        let mut cells = Vec::with_capacity(self.cells.len());
        let mut faces = Vec::with_capacity(self.cells.len());
        for k in 0..self.cells.len() {
            let mut pos = vec![None; self.cells[k].len()];
            let mut layer = Vec::new();
            let mut flayer = Vec::new();
            for c in 0..self.cells[k].len() {
                let inside = if k == 0 {
                    keep[c]
                } else {
                    self.faces[k][c].iter().all(|&f| new_pos[k - 1][f].is_some())
                };
                if inside {
                    pos[c] = Some(layer.len());
                    layer.push(self.cells[k][c].clone());
                    flayer.push(
                        self.faces[k]
                            .get(c)
                            .map(|fs| fs.iter().map(|&f| new_pos[k - 1][f].unwrap()).collect())
                            .unwrap_or_default(),
                    );
                }
            }
            new_pos.push(pos);
            cells.push(layer);
            faces.push(flayer);
        }
        while cells.len() > 1 && cells.last().is_some_and(Vec::is_empty) {
            cells.pop();
            faces.pop();
        }
        DeltaComplex { cells, faces }
    }

    /// The same complex with cells permuted within each dimension:
    /// `perm[k][old] = new`.
    pub fn permuted(&self, perm: &[Vec<usize>]) -> DeltaComplex<K> {
        let mut cells = Vec::with_capacity(self.cells.len());
        let mut faces = Vec::with_capacity(self.cells.len());
        for k in 0..self.cells.len() {
            let n = self.cells[k].len();
            let mut layer: Vec<Option<K>> = vec![None; n];
            let mut flayer = vec![Vec::new(); n];
            for c in 0..n {
                layer[perm[k][c]] = Some(self.cells[k][c].clone());
                if k > 0 {
                    flayer[perm[k][c]] = self.faces[k][c].iter().map(|&f| perm[k - 1][f]).collect();
                }
            }
            cells.push(layer.into_iter().map(|x| x.expect("perm is a bijection")).collect());
            faces.push(flayer);
        }
        DeltaComplex { cells, faces }
    }

    /// Quotient by a cell action commuting with all face maps. Orbits are
    /// keyed by their lowest-positioned member and ordered by it.
    pub fn quotient(&self, act: &CellAction) -> Result<Quotient<K>, ComplexError> {
        let layers = self.cells.len();
        for (gi, gen) in act.generators.iter().enumerate() {
            for k in 0..layers {
                let n = self.cells[k].len();
                let perm = gen.get(k).ok_or(ComplexError::NotAPermutation { generator: gi, dim: k })?;
                let mut hit = vec![false; n];
                if perm.len() != n || perm.iter().any(|&x| x >= n || std::mem::replace(&mut hit[x], true)) {
                    return Err(ComplexError::NotAPermutation { generator: gi, dim: k });
                }
                if k == 0 {
                    continue;
                }
                for c in 0..n {
                    for i in 0..=k {
                        if gen[k - 1][self.faces[k][c][i]] != self.faces[k][perm[c]][i] {
                            return Err(ComplexError::ActionNotCommuting {
                                generator: gi,
                                dim: k,
                                cell: format!("{:?}", self.cells[k][c]),
                                index: i,
                            });
                        }
                    }
                }
            }
        }

        let mut orbit_of = Vec::with_capacity(layers);
        let mut reps: Vec<Vec<usize>> = Vec::with_capacity(layers);
        for k in 0..layers {
            let n = self.cells[k].len();
            let mut parent: Vec<usize> = (0..n).collect();
            for gen in &act.generators {
                for c in 0..n {
                    union(&mut parent, c, gen[k][c]);
                }
            }
            let mut root_to_orbit = HashMap::new();
            let mut orbit = vec![0; n];
            let mut rep = Vec::new();
            for c in 0..n {
                let root = find(&mut parent, c);
                let o = *root_to_orbit.entry(root).or_insert_with(|| {
                    rep.push(c);
                    rep.len() - 1
                });
                orbit[c] = o;
            }
            orbit_of.push(orbit);
            reps.push(rep);
        }

        let mut cells = Vec::with_capacity(layers);
        let mut faces = Vec::with_capacity(layers);
        for k in 0..layers {
            cells.push(reps[k].iter().map(|&c| self.cells[k][c].clone()).collect::<Vec<_>>());
            if k == 0 {
                faces.push(vec![Vec::new(); reps[0].len()]);
                continue;
            }
            let mut flayer: Vec<Vec<usize>> = reps[k]
                .iter()
                .map(|&c| self.faces[k][c].iter().map(|&f| orbit_of[k - 1][f]).collect())
                .collect();
            for c in 0..self.cells[k].len() {
                let o = orbit_of[k][c];
                for i in 0..=k {
                    if orbit_of[k - 1][self.faces[k][c][i]] != flayer[o][i] {
                        return Err(ComplexError::ActionNotCommuting {
                            generator: usize::MAX,
                            dim: k,
                            cell: format!("{:?}", self.cells[k][c]),
                            index: i,
                        });
                    }
                }
            }
            faces.push(std::mem::take(&mut flayer));
        }
        Ok(Quotient {
            complex: DeltaComplex { cells, faces },
            orbit_of,
        })
    }

    /// `{"cells": [[key, ...] per dimension], "faces": {key: [key, ...]}}`.
    pub fn to_json<F: Fn(&K) -> String>(&self, name: F) -> Value {
        let cells: Vec<Vec<String>> = self.cells.iter().map(|l| l.iter().map(&name).collect()).collect();
        let mut faces = Map::new();
        for k in 1..self.cells.len() {
            for (c, fs) in self.faces[k].iter().enumerate() {
                let names: Vec<Value> = fs.iter().map(|&f| Value::String(cells[k - 1][f].clone())).collect();
                faces.insert(cells[k][c].clone(), Value::Array(names));
            }
        }
        json!({ "cells": cells, "faces": faces })
    }
}

impl<K: Clone + Eq + Hash + fmt::Debug> DeltaComplex<K> {
    /// `{"f_vector", "euler", "betti", "torsion", "simplicial"}`, plus a
    /// `"cells"`/`"faces"` dump when `dump` is set.
    pub fn report<F: Fn(&K) -> String>(&self, name: F, dump: bool) -> Value {
        let h = self.homology();
        let mut out = Map::new();
        out.insert("f_vector".into(), json!(self.f_vector()));
        out.insert("euler".into(), json!(self.euler_characteristic()));
        out.insert("betti".into(), json!(h.betti));
        out.insert("torsion".into(), torsion_json(&h.torsion));
        out.insert("simplicial".into(), json!(self.is_simplicial()));
        if dump {
            if let Value::Object(cells) = self.to_json(name) {
                out.extend(cells);
            }
        }
        Value::Object(out)
    }
}

impl DeltaComplex<String> {
    /// Inverse of [`to_json`](Self::to_json) for string keys.
    pub fn from_json(value: &Value) -> Result<Self, ComplexError> {
        let bad = |m: &str| ComplexError::InvalidCell(m.to_string());
        let cells: Vec<Vec<String>> = value
            .get("cells")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("missing `cells`"))?
            .iter()
            .map(|l| {
                l.as_array()
                    .ok_or_else(|| bad("cell layer must be an array"))?
                    .iter()
                    .map(|k| k.as_str().map(str::to_string).ok_or_else(|| bad("cell keys must be strings")))
                    .collect()
            })
            .collect::<Result<_, _>>()?;
        let faces = value.get("faces").and_then(Value::as_object).cloned().unwrap_or_default();
        if cells.is_empty() {
            return Err(bad("complex has no layers"));
        }
        DeltaComplex::from_keyed(cells, |_, key| {
            faces
                .get(key)
                .and_then(Value::as_array)
                .map(|a| a.iter().filter_map(|x| x.as_str().map(str::to_string)).collect())
                .unwrap_or_default()
        })
    }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

fn union(parent: &mut [usize], a: usize, b: usize) {
    let ra = find(parent, a);
    let rb = find(parent, b);
    if ra != rb {
        // keep the smaller root so orbit roots are deterministic
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        parent[hi] = lo;
    }
}
