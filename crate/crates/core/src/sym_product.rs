//! The product complex `Γⁿ` (cubes cut into shuffle simplices), the
//! symmetric product `Symⁿ(Γ)` with its `(a, r)` cells, the orbit
//! identification between the two, and weight-minimal subcomplexes.
//!
//! Face conventions. A `k`-cell of `Symⁿ(Γ)` distributes `n` points over
//! the vertices (`a`) and over `k` ordered stages of every arrow (`r`).
//! `d_0` pushes stage 1 to the arrow sources, `d_k` pushes stage `k` to the
//! targets, and `d_i` for `0 < i < k` merges stages `i` and `i + 1`. The
//! product complex uses the matching geometric rule: block 1 of a shuffle
//! chain sits at coordinate 0 (sources), block `k` at coordinate 1
//! (targets).

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;

use crate::delta_complex::{CellAction, DeltaComplex, Quotient};
use crate::error::ComplexError;
use crate::graph::OrientedGraph;
use crate::stability::compositions;

/// Default refusal threshold for predicted cell counts.
pub const DEFAULT_MAX_CELLS: u128 = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BuildLimits {
    pub max_cells: u128,
}

impl Default for BuildLimits {
    fn default() -> Self {
        BuildLimits {
            max_cells: DEFAULT_MAX_CELLS,
        }
    }
}

/// A cell `(a, r)` of `Symⁿ(Γ)`: `a[v]` points on vertex `v`, `r[γ][i]`
/// points on stage `i + 1` of arrow `γ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SymCell {
    pub a: Vec<usize>,
    pub r: Vec<Vec<usize>>,
}

impl SymCell {
    pub fn dim(&self) -> usize {
        self.r.first().map_or(0, Vec::len)
    }

    pub fn total(&self) -> usize {
        self.a.iter().sum::<usize>() + self.r.iter().flatten().sum::<usize>()
    }

    /// Checks both cell conditions for point count `n`.
    pub fn is_valid(&self, g: &OrientedGraph, n: usize) -> bool {
        let k = self.dim();
        self.a.len() == g.vertex_count()
            && self.r.len() == g.arrow_count()
            && self.r.iter().all(|t| t.len() == k)
            && self.total() == n
            && (0..k).all(|i| self.r.iter().any(|t| t[i] > 0))
    }

    /// Canonical name: nonzero vertex counts and nonzero arrow stage tuples,
    /// each sorted by label, e.g. `[v:1,w:1|g:(1,0)]`. Zero entries are
    /// omitted, so a cell of a full subgraph keeps its name.
    pub fn name(&self, g: &OrientedGraph) -> String {
        let mut verts: Vec<(&str, usize)> = self
            .a
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(v, &c)| (g.vertex_label(v), c))
            .collect();
        verts.sort();
        let mut arrows: Vec<(&str, &Vec<usize>)> = self
            .r
            .iter()
            .enumerate()
            .filter(|(_, t)| t.iter().any(|&x| x > 0))
            .map(|(e, t)| (g.arrow(e).label.as_str(), t))
            .collect();
        arrows.sort();
        let vs: Vec<String> = verts.iter().map(|(l, c)| format!("{l}:{c}")).collect();
        let es: Vec<String> = arrows
            .iter()
            .map(|(l, t)| {
                let inner: Vec<String> = t.iter().map(usize::to_string).collect();
                format!("{l}:({})", inner.join(","))
            })
            .collect();
        if es.is_empty() {
            format!("[{}]", vs.join(","))
        } else {
            format!("[{}|{}]", vs.join(","), es.join(","))
        }
    }

    /// Re-indexes a cell of a full subgraph `sub` of `g` as a cell of `g`.
    pub fn embed(&self, sub: &OrientedGraph, g: &OrientedGraph) -> SymCell {
        let k = self.dim();
        let mut a = vec![0; g.vertex_count()];
        for (v, &c) in self.a.iter().enumerate() {
            a[g.vertex_id(sub.vertex_label(v)).expect("subgraph vertex")] = c;
        }
        let mut r = vec![vec![0; k]; g.arrow_count()];
        for (e, t) in self.r.iter().enumerate() {
            r[g.arrow_id(&sub.arrow(e).label).expect("subgraph arrow")] = t.clone();
        }
        SymCell { a, r }
    }
}

/// `d_i` of a `k`-cell of `Symⁿ(Γ)`, `0 <= i <= k`.
pub fn sym_face(g: &OrientedGraph, c: &SymCell, i: usize) -> Result<SymCell, ComplexError> {
    let k = c.dim();
    if k == 0 || i > k {
        return Err(ComplexError::FaceOutOfRange { index: i, dim: k });
    }
    let mut a = c.a.clone();
    let r: Vec<Vec<usize>> = if i == 0 {
        for (e, arrow) in g.arrows().iter().enumerate() {
            a[arrow.src] += c.r[e][0];
        }
        c.r.iter().map(|t| t[1..].to_vec()).collect()
    } else if i == k {
        for (e, arrow) in g.arrows().iter().enumerate() {
            a[arrow.tgt] += c.r[e][k - 1];
        }
        c.r.iter().map(|t| t[..k - 1].to_vec()).collect()
    } else {
        c.r.iter()
            .map(|t| {
                let mut m = t.clone();
                let merged = m.remove(i);
                m[i - 1] += merged;
                m
            })
            .collect()
    };
    Ok(SymCell { a, r })
}

fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul(n - i) / (i + 1);
    }
    acc
}

/// Upper bound on the number of cells of `Symⁿ(Γ)`: all weak compositions
/// of `n` into `|V| + k|E|` parts, summed over `k`.
pub fn predicted_sym_cells(g: &OrientedGraph, n: usize) -> u128 {
    let v = g.vertex_count() as u128;
    let e = g.arrow_count() as u128;
    let n = n as u128;
    let top = if e == 0 { 0 } else { n };
    (0..=top)
        .map(|k| {
            let parts = v + e * k;
            if parts == 0 {
                u128::from(n == 0)
            } else {
                binomial(n + parts - 1, n)
            }
        })
        .fold(0u128, u128::saturating_add)
}

/// All `k`-cells of `Symⁿ(Γ)` in lexicographic order of
/// `(a, r stage by stage)`.
pub fn sym_cells(g: &OrientedGraph, n: usize, k: usize) -> Vec<SymCell> {
    let nv = g.vertex_count();
    let ne = g.arrow_count();
    if k > 0 && (ne == 0 || k > n) {
        return Vec::new();
    }
    compositions(n, nv + ne * k)
        .into_iter()
        .filter(|x| (0..k).all(|i| x[nv + i * ne..nv + (i + 1) * ne].iter().any(|&y| y > 0)))
        .map(|x| SymCell {
            a: x[..nv].to_vec(),
            r: (0..ne).map(|e| (0..k).map(|i| x[nv + i * ne + e]).collect()).collect(),
        })
        .collect()
}

/// Builds `Symⁿ(Γ)` with the default size bound.
pub fn sym_complex(g: &OrientedGraph, n: usize) -> Result<DeltaComplex<SymCell>, ComplexError> {
    sym_complex_with(g, n, BuildLimits::default())
}

pub fn sym_complex_with(
    g: &OrientedGraph,
    n: usize,
    limits: BuildLimits,
) -> Result<DeltaComplex<SymCell>, ComplexError> {
    let predicted = predicted_sym_cells(g, n);
    if predicted > limits.max_cells {
        return Err(ComplexError::TooLarge {
            predicted,
            bound: limits.max_cells,
        });
    }
    let top = if g.arrow_count() == 0 { 0 } else { n };
    let mut layers: Vec<Vec<SymCell>> = (0..=top).into_par_iter().map(|k| sym_cells(g, n, k)).collect();
    while layers.len() > 1 && layers.last().is_some_and(Vec::is_empty) {
        layers.pop();
    }
    DeltaComplex::from_keyed(layers, |k, c| {
        (0..=k).map(|i| sym_face(g, c, i).expect("face index in range")).collect()
    })
}

/// One factor of a cube `S_1 × ... × S_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Factor {
    Vertex(usize),
    Arrow(usize),
}

/// A shuffle simplex of `Γⁿ`: a cube and an ordered partition of its
/// arrow positions into blocks of equal coordinate,
/// `0 <= x_{B_1} <= ... <= x_{B_k} <= 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProductCell {
    pub cube: Vec<Factor>,
    /// Positions (0-based) per block, each block sorted, blocks in chain order.
    pub blocks: Vec<Vec<usize>>,
}

impl ProductCell {
    pub fn dim(&self) -> usize {
        self.blocks.len()
    }

    pub fn name(&self, g: &OrientedGraph) -> String {
        let cube: Vec<&str> = self
            .cube
            .iter()
            .map(|f| match *f {
                Factor::Vertex(v) => g.vertex_label(v),
                Factor::Arrow(e) => g.arrow(e).label.as_str(),
            })
            .collect();
        let blocks: Vec<String> = self
            .blocks
            .iter()
            .map(|b| {
                let ps: Vec<String> = b.iter().map(|p| (p + 1).to_string()).collect();
                format!("{{{}}}", ps.join(","))
            })
            .collect();
        format!("({})[{}]", cube.join(","), blocks.join("<"))
    }

    /// The orbit invariant: occurrence counts as a `Symⁿ` cell.
    pub fn sym_label(&self, g: &OrientedGraph) -> SymCell {
        let k = self.dim();
        let mut a = vec![0; g.vertex_count()];
        let mut r = vec![vec![0; k]; g.arrow_count()];
        for f in &self.cube {
            if let Factor::Vertex(v) = *f {
                a[v] += 1;
            }
        }
        for (j, block) in self.blocks.iter().enumerate() {
            for &p in block {
                if let Factor::Arrow(e) = self.cube[p] {
                    r[e][j] += 1;
                }
            }
        }
        SymCell { a, r }
    }

    /// Moves the factor at position `p` to position `perm[p]`.
    fn permute(&self, perm: &[usize]) -> ProductCell {
        let mut cube = self.cube.clone();
        for (p, &f) in self.cube.iter().enumerate() {
            cube[perm[p]] = f;
        }
        let blocks = self
            .blocks
            .iter()
            .map(|b| {
                let mut nb: Vec<usize> = b.iter().map(|&p| perm[p]).collect();
                nb.sort_unstable();
                nb
            })
            .collect();
        ProductCell { cube, blocks }
    }
}

/// `d_i` of a shuffle simplex: collapse the first block to sources, merge
/// neighbouring blocks, or collapse the last block to targets.
pub fn product_face(g: &OrientedGraph, c: &ProductCell, i: usize) -> Result<ProductCell, ComplexError> {
    let k = c.dim();
    if k == 0 || i > k {
        return Err(ComplexError::FaceOutOfRange { index: i, dim: k });
    }
    let mut cube = c.cube.clone();
    let mut blocks = c.blocks.clone();
    let collapse = |cube: &mut Vec<Factor>, block: &[usize], to_source: bool| {
        for &p in block {
            if let Factor::Arrow(e) = cube[p] {
                let a = g.arrow(e);
                cube[p] = Factor::Vertex(if to_source { a.src } else { a.tgt });
            }
        }
    };
    if i == 0 {
        let b = blocks.remove(0);
        collapse(&mut cube, &b, true);
    } else if i == k {
        let b = blocks.pop().expect("k >= 1");
        collapse(&mut cube, &b, false);
    } else {
        let b = blocks.remove(i);
        blocks[i - 1].extend(b);
        blocks[i - 1].sort_unstable();
    }
    Ok(ProductCell { cube, blocks })
}

fn fubini(m: usize) -> u128 {
    // ordered set partitions: a(m) = Σ_{j=1}^{m} C(m, j) a(m - j)
    let mut a = vec![1u128; m + 1];
    for i in 1..=m {
        a[i] = (1..=i)
            .map(|j| binomial(i as u128, j as u128).saturating_mul(a[i - j]))
            .fold(0, u128::saturating_add);
    }
    a[m]
}

/// Exact number of cells of `Γⁿ`.
pub fn predicted_product_cells(g: &OrientedGraph, n: usize) -> u128 {
    let v = g.vertex_count() as u128;
    let e = g.arrow_count() as u128;
    (0..=n)
        .map(|m| {
            binomial(n as u128, m as u128)
                .saturating_mul(v.saturating_pow((n - m) as u32))
                .saturating_mul(e.saturating_pow(m as u32))
                .saturating_mul(fubini(m))
        })
        .fold(0, u128::saturating_add)
}

/// All surjections of `positions` onto `k` blocks, as ordered partitions.
fn ordered_partitions(positions: &[usize], out: &mut Vec<Vec<Vec<usize>>>) {
    let m = positions.len();
    if m == 0 {
        out.push(Vec::new());
        return;
    }
    for k in 1..=m {
        let mut assign = vec![0usize; m];
        loop {
            let mut blocks = vec![Vec::new(); k];
            for (idx, &b) in assign.iter().enumerate() {
                blocks[b].push(positions[idx]);
            }
            if blocks.iter().all(|b| !b.is_empty()) {
                out.push(blocks);
            }
            // odometer over k^m assignments
            let mut p = 0;
            while p < m {
                assign[p] += 1;
                if assign[p] < k {
                    break;
                }
                assign[p] = 0;
                p += 1;
            }
            if p == m {
                break;
            }
        }
    }
}

/// `Γⁿ` together with the action of the symmetric group permuting cube
/// positions.
pub struct ProductComplex {
    pub complex: DeltaComplex<ProductCell>,
    pub action: CellAction,
}

pub fn product_complex(g: &OrientedGraph, n: usize) -> Result<ProductComplex, ComplexError> {
    product_complex_with(g, n, BuildLimits::default())
}

pub fn product_complex_with(
    g: &OrientedGraph,
    n: usize,
    limits: BuildLimits,
) -> Result<ProductComplex, ComplexError> {
    let predicted = predicted_product_cells(g, n);
    if predicted > limits.max_cells {
        return Err(ComplexError::TooLarge {
            predicted,
            bound: limits.max_cells,
        });
    }
    let factors: Vec<Factor> = (0..g.vertex_count())
        .map(Factor::Vertex)
        .chain((0..g.arrow_count()).map(Factor::Arrow))
        .collect();

    let mut layers: Vec<Vec<ProductCell>> = vec![Vec::new(); n + 1];
    if !factors.is_empty() || n == 0 {
        let mut idx = vec![0usize; n];
        loop {
            let cube: Vec<Factor> = idx.iter().map(|&i| factors[i]).collect();
            let arrow_pos: Vec<usize> = (0..n).filter(|&p| matches!(cube[p], Factor::Arrow(_))).collect();
            let mut parts = Vec::new();
            ordered_partitions(&arrow_pos, &mut parts);
            for blocks in parts {
                layers[blocks.len()].push(ProductCell { cube: cube.clone(), blocks });
            }
            let mut p = n;
            loop {
                if p == 0 {
                    break;
                }
                p -= 1;
                idx[p] += 1;
                if idx[p] < factors.len() {
                    break;
                }
                idx[p] = 0;
                if p == 0 {
                    p = usize::MAX;
                    break;
                }
            }
            if p == usize::MAX || n == 0 {
                break;
            }
        }
    }
    layers.par_iter_mut().for_each(|l| l.sort());
    while layers.len() > 1 && layers.last().is_some_and(Vec::is_empty) {
        layers.pop();
    }

    let complex = DeltaComplex::from_keyed(layers, |k, c| {
        (0..=k).map(|i| product_face(g, c, i).expect("face index in range")).collect()
    })?;

    let mut gens: Vec<Vec<usize>> = Vec::new();
    if n >= 2 {
        let mut swap: Vec<usize> = (0..n).collect();
        swap.swap(0, 1);
        gens.push(swap);
        if n >= 3 {
            gens.push((0..n).map(|p| (p + 1) % n).collect());
        }
    }
    let generators = gens
        .iter()
        .map(|perm| {
            (0..complex.layers())
                .map(|k| {
                    let index = complex.key_index(k);
                    complex.cells(k).iter().map(|c| index[&c.permute(perm)]).collect()
                })
                .collect()
        })
        .collect();
    Ok(ProductComplex {
        complex,
        action: CellAction { generators },
    })
}

/// `Γⁿ / 𝔖ₙ` with each orbit labelled by its occurrence-count cell.
pub struct SymQuotient {
    pub product: ProductComplex,
    pub quotient: Quotient<ProductCell>,
    /// `labels[k][o]` labels the `o`-th orbit of dimension `k`.
    pub labels: Vec<Vec<SymCell>>,
}

impl SymQuotient {
    pub fn complex(&self) -> &DeltaComplex<ProductCell> {
        &self.quotient.complex
    }
}

pub fn quotient_sym(g: &OrientedGraph, n: usize) -> Result<SymQuotient, ComplexError> {
    quotient_sym_with(g, n, BuildLimits::default())
}

pub fn quotient_sym_with(g: &OrientedGraph, n: usize, limits: BuildLimits) -> Result<SymQuotient, ComplexError> {
    let product = product_complex_with(g, n, limits)?;
    let quotient = product.complex.quotient(&product.action)?;
    let labels = (0..quotient.complex.layers())
        .map(|k| quotient.complex.cells(k).iter().map(|c| c.sym_label(g)).collect())
        .collect();
    Ok(SymQuotient {
        product,
        quotient,
        labels,
    })
}

/// Outcome of comparing the orbit construction with the direct one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Comparison {
    pub matches: bool,
    pub direct_f_vector: Vec<usize>,
    pub quotient_f_vector: Vec<usize>,
    /// First discrepancy found, if any.
    pub mismatch: Option<String>,
}

/// Checks that orbit labelling is a bijection onto the cells of
/// `sym_complex` commuting with every face map.
pub fn compare_constructions(
    g: &OrientedGraph,
    direct: &DeltaComplex<SymCell>,
    q: &SymQuotient,
) -> Comparison {
    let qc = q.complex();
    let mismatch = (|| {
        if direct.layers() != qc.layers() {
            return Some(format!("dimensions differ: {} vs {}", direct.layers(), qc.layers()));
        }
        let mut to_direct: Vec<Vec<usize>> = Vec::with_capacity(qc.layers());
        for k in 0..qc.layers() {
            let index = direct.key_index(k);
            let mut hit = vec![false; direct.cells(k).len()];
            let mut map = Vec::with_capacity(q.labels[k].len());
            for (o, label) in q.labels[k].iter().enumerate() {
                let Some(&d) = index.get(label) else {
                    return Some(format!("orbit {} labels a non-cell {}", o, label.name(g)));
                };
                if std::mem::replace(&mut hit[d], true) {
                    return Some(format!("two orbits share the label {}", label.name(g)));
                }
                map.push(d);
            }
            if let Some(d) = hit.iter().position(|h| !h) {
                return Some(format!("cell {} is not hit by any orbit", direct.cell(k, d).name(g)));
            }
            if k > 0 {
                for (o, &d) in map.iter().enumerate() {
                    for i in 0..=k {
                        if to_direct[k - 1][qc.face(k, o, i)] != direct.face(k, d, i) {
                            return Some(format!("d_{i} disagrees at {}", direct.cell(k, d).name(g)));
                        }
                    }
                }
            }
            to_direct.push(map);
        }
        None
    })();
    Comparison {
        matches: mismatch.is_none(),
        direct_f_vector: direct.f_vector(),
        quotient_f_vector: qc.f_vector(),
        mismatch,
    }
}

/// `Symⁿ(Γ)` is a simplicial complex for every `n` exactly when the
/// underlying unoriented graph is a tree.
pub fn simplicial_for_all_n(g: &OrientedGraph) -> bool {
    g.is_tree()
}

/// Per-vertex integer weights (orders of vanishing), in vertex order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexWeights(pub Vec<i64>);

impl VertexWeights {
    /// From `(label, weight)` pairs; every vertex must receive a weight.
    pub fn from_labels<'a, I>(g: &OrientedGraph, pairs: I) -> Result<Self, String>
    where
        I: IntoIterator<Item = (&'a str, i64)>,
    {
        let mut w: Vec<Option<i64>> = vec![None; g.vertex_count()];
        for (label, x) in pairs {
            let v = g.vertex_id(label).ok_or_else(|| format!("unknown vertex `{label}`"))?;
            w[v] = Some(x);
        }
        w.iter()
            .enumerate()
            .map(|(v, x)| x.ok_or_else(|| format!("no weight for vertex `{}`", g.vertex_label(v))))
            .collect::<Result<Vec<_>, _>>()
            .map(VertexWeights)
    }

    pub fn min(&self) -> Option<i64> {
        self.0.iter().copied().min()
    }
}

/// The full subgraph on the minimal-weight vertices.
pub fn minimal_span(g: &OrientedGraph, w: &VertexWeights) -> OrientedGraph {
    assert_eq!(w.0.len(), g.vertex_count(), "weights must cover every vertex");
    let keep: Vec<bool> = match w.min() {
        Some(m) => w.0.iter().map(|&x| x == m).collect(),
        None => Vec::new(),
    };
    g.induced_subgraph(&keep)
}

/// Weight of a vertex of `Symⁿ(Γ)`: the sum over its `n` points.
pub fn induced_weight(w: &VertexWeights, vertex: &SymCell) -> i64 {
    vertex.a.iter().zip(&w.0).map(|(&c, &x)| c as i64 * x).sum()
}

pub struct Skeleton {
    /// `Γ(ω)`.
    pub span: OrientedGraph,
    /// `Symⁿ(Γ(ω))`, cells indexed over `span`.
    pub complex: DeltaComplex<SymCell>,
    /// Summed weights of every vertex of `Symⁿ(Γ)`, in its vertex order
    /// (cells indexed over the full graph).
    pub vertex_weights: Vec<(SymCell, i64)>,
}

pub fn skeleton_complex(g: &OrientedGraph, w: &VertexWeights, n: usize) -> Result<Skeleton, ComplexError> {
    skeleton_complex_with(g, w, n, BuildLimits::default())
}

pub fn skeleton_complex_with(
    g: &OrientedGraph,
    w: &VertexWeights,
    n: usize,
    limits: BuildLimits,
) -> Result<Skeleton, ComplexError> {
    let span = minimal_span(g, w);
    let complex = sym_complex_with(&span, n, limits)?;
    let vertex_weights = sym_cells(g, n, 0)
        .into_iter()
        .map(|c| {
            let x = induced_weight(w, &c);
            (c, x)
        })
        .collect();
    Ok(Skeleton {
        span,
        complex,
        vertex_weights,
    })
}

/// Cells by canonical name with their face names, per dimension. Two
/// complexes built over different full subgraphs compare equal here iff
/// they are the same labelled complex.
pub fn labeled_layers(g: &OrientedGraph, dc: &DeltaComplex<SymCell>) -> Vec<BTreeMap<String, Vec<String>>> {
    let names: Vec<Vec<String>> = (0..dc.layers())
        .map(|k| dc.cells(k).iter().map(|c| c.name(g)).collect())
        .collect();
    (0..dc.layers())
        .map(|k| {
            (0..dc.cells(k).len())
                .map(|c| {
                    let faces = dc.faces_of(k, c).iter().map(|&f| names[k - 1][f].clone()).collect();
                    (names[k][c].clone(), faces)
                })
                .collect()
        })
        .collect()
}

/// Minimum-weight span of `Symⁿ(Γ)` under the summed vertex weights.
pub fn min_weight_span(g: &OrientedGraph, w: &VertexWeights, full: &DeltaComplex<SymCell>) -> DeltaComplex<SymCell> {
    let weights: Vec<i64> = full.cells(0).iter().map(|c| induced_weight(w, c)).collect();
    let keep: Vec<bool> = match weights.iter().min() {
        Some(&m) => weights.iter().map(|&x| x == m).collect(),
        None => Vec::new(),
    };
    let _ = g;
    full.vertex_span(&keep)
}

/// A lookup from canonical name to cell, for turning CLI or JSON input
/// back into cells.
pub fn cells_by_name(g: &OrientedGraph, dc: &DeltaComplex<SymCell>) -> HashMap<String, (usize, usize)> {
    let mut m = HashMap::new();
    for k in 0..dc.layers() {
        for (c, cell) in dc.cells(k).iter().enumerate() {
            m.insert(cell.name(g), (k, c));
        }
    }
    m
}
