//! Support vectors, stable stratum indices `(b, s)`, stable node tuples and
//! the facet maps between them.
//!
//! Stratum indices are positional: `b[v]` follows the graph's vertex order
//! and `s[γ]` its arrow order, each `s[γ]` holding `|I| - 1` stage counts.
//! Facet indices `k` are 1-based, so `k` ranges over `1..=|J|`.

use serde_json::{json, Map, Value};

use crate::error::StabilityError;
use crate::expansion::{ExpandedGraph, IndexSet, Node};
use crate::graph::{OrientedGraph, VertexPartition};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SupportVector(pub Vec<usize>);

impl SupportVector {
    pub fn entries(&self) -> &[usize] {
        &self.0
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StratumIndex {
    pub b: Vec<usize>,
    pub s: Vec<Vec<usize>>,
}

impl StratumIndex {
    pub fn new(b: Vec<usize>, s: Vec<Vec<usize>>) -> Self {
        StratumIndex { b, s }
    }

    /// Number of stages `|I| - 1` if there is at least one arrow.
    pub fn stage_count(&self) -> Option<usize> {
        self.s.first().map(Vec::len)
    }

    pub fn total(&self) -> usize {
        self.b.iter().sum::<usize>() + self.s.iter().flatten().sum::<usize>()
    }

    /// The ordering key: `b` in vertex order followed by `s` stage by stage.
    pub fn sort_key(&self) -> Vec<usize> {
        let stages = self.stage_count().unwrap_or(0);
        let mut key = self.b.clone();
        for l in 0..stages {
            key.extend(self.s.iter().map(|t| t[l]));
        }
        key
    }

    pub fn to_json(&self, g: &OrientedGraph) -> Value {
        let mut b = Map::new();
        for (v, &c) in self.b.iter().enumerate() {
            b.insert(g.vertex_label(v).to_string(), json!(c));
        }
        let mut s = Map::new();
        for (e, t) in self.s.iter().enumerate() {
            s.insert(g.arrow(e).label.clone(), json!(t));
        }
        json!({ "b": b, "s": s })
    }

    /// Reads `{"b": {vertex: int}, "s": {arrow: [int, ...]}}`. Missing
    /// vertices count as zero; missing arrows get zero tuples of the common
    /// length.
    pub fn from_json(g: &OrientedGraph, value: &Value) -> Result<Self, String> {
        let obj = value.as_object().ok_or("stratum index must be a JSON object")?;
        let mut b = vec![0; g.vertex_count()];
        if let Some(bm) = obj.get("b") {
            for (name, c) in bm.as_object().ok_or("`b` must be an object")? {
                let v = g.vertex_id(name).ok_or_else(|| format!("unknown vertex `{name}`"))?;
                b[v] = as_count(c)?;
            }
        }
        let mut s: Vec<Option<Vec<usize>>> = vec![None; g.arrow_count()];
        if let Some(sm) = obj.get("s") {
            for (name, t) in sm.as_object().ok_or("`s` must be an object")? {
                let e = g.arrow_id(name).ok_or_else(|| format!("unknown arrow `{name}`"))?;
                let arr = t.as_array().ok_or("stage tuples must be arrays")?;
                s[e] = Some(arr.iter().map(as_count).collect::<Result<_, _>>()?);
            }
        }
        let len = s.iter().flatten().map(Vec::len).next().unwrap_or(0);
        Ok(StratumIndex {
            b,
            s: s.into_iter().map(|t| t.unwrap_or_else(|| vec![0; len])).collect(),
        })
    }
}

fn as_count(v: &Value) -> Result<usize, String> {
    v.as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| format!("expected a nonnegative integer, found {v}"))
}

/// An ordered `n`-tuple of nodes of an expanded graph.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TupleIndex(pub Vec<Node>);

impl TupleIndex {
    /// Occurrence counts: `b_v` from black entries, `s_{γ,ℓ}` from white ones.
    pub fn counts(&self, g: &OrientedGraph, stages: usize) -> StratumIndex {
        let mut b = vec![0; g.vertex_count()];
        let mut s = vec![vec![0; stages]; g.arrow_count()];
        for node in &self.0 {
            match *node {
                Node::Black(v) => b[v] += 1,
                Node::White { arrow, pos } => s[arrow][pos - 1] += 1,
            }
        }
        StratumIndex { b, s }
    }

    pub fn to_json(&self, g: &OrientedGraph, x: &ExpandedGraph) -> Value {
        Value::Array(self.0.iter().map(|&n| Value::String(x.node_name(g, n))).collect())
    }

    pub fn from_json(g: &OrientedGraph, x: &ExpandedGraph, value: &Value) -> Result<Self, String> {
        let arr = value.as_array().ok_or("tuple must be a JSON array")?;
        arr.iter()
            .map(|v| {
                let name = v.as_str().ok_or("tuple entries must be node names")?;
                x.node_by_name(g, name).ok_or_else(|| format!("unknown node `{name}`"))
            })
            .collect::<Result<Vec<_>, String>>()
            .map(TupleIndex)
    }
}

/// The gap vector of `I` inside `[n+1]` with `a_0 = 1` and `a_{r+1} = n+1`.
pub fn combinatorial_support(index_set: &IndexSet) -> SupportVector {
    let mut a = Vec::with_capacity(index_set.len() + 2);
    a.push(1);
    a.extend_from_slice(index_set.members());
    a.push(index_set.n() + 1);
    SupportVector(a.windows(2).map(|w| w[1] - w[0]).collect())
}

fn stage_count_checked(idx: &StratumIndex) -> Result<usize, StabilityError> {
    let mut len = None;
    for t in &idx.s {
        match len {
            None => len = Some(t.len()),
            Some(l) if l != t.len() => return Err(StabilityError::RaggedStages(l, t.len())),
            _ => {}
        }
    }
    Ok(len.unwrap_or(0))
}

fn check_shape(g: &OrientedGraph, idx: &StratumIndex) -> Result<(), StabilityError> {
    if idx.b.len() != g.vertex_count() {
        return Err(StabilityError::Shape {
            what: "vertices",
            expected: g.vertex_count(),
            found: idx.b.len(),
        });
    }
    if idx.s.len() != g.arrow_count() {
        return Err(StabilityError::Shape {
            what: "arrows",
            expected: g.arrow_count(),
            found: idx.s.len(),
        });
    }
    Ok(())
}

fn support_with(part: &VertexPartition, idx: &StratumIndex, stages: usize) -> SupportVector {
    let mut v = Vec::with_capacity(stages + 2);
    v.push(part.sources.iter().map(|&x| idx.b[x]).sum());
    for l in 0..stages {
        v.push(idx.s.iter().map(|t| t[l]).sum());
    }
    v.push(part.sinks.iter().map(|&x| idx.b[x]).sum());
    SupportVector(v)
}

/// `(Σ_{V+} b, Σ_γ s_{γ,1}, ..., Σ_γ s_{γ,r-1}, Σ_{V-} b)`. With no arrows
/// the stage count is zero.
pub fn numerical_support(g: &OrientedGraph, idx: &StratumIndex) -> Result<SupportVector, StabilityError> {
    check_shape(g, idx)?;
    let stages = stage_count_checked(idx)?;
    let part = g.bipartite_partition()?;
    Ok(support_with(&part, idx, stages))
}

pub fn is_stable(g: &OrientedGraph, index_set: &IndexSet, idx: &StratumIndex) -> Result<bool, StabilityError> {
    check_shape(g, idx)?;
    let stages = stage_count_checked(idx)?;
    if !idx.s.is_empty() && stages != index_set.len() - 1 {
        return Err(StabilityError::StageLength {
            expected: index_set.len() - 1,
            found: stages,
        });
    }
    let part = g.bipartite_partition()?;
    Ok(support_with(&part, idx, index_set.len() - 1) == combinatorial_support(index_set))
}

/// All ways of writing `total` as an ordered sum of `parts` nonnegative
/// integers, in lexicographic order.
pub fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = vec![0; parts];
    fn rec(i: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i + 1 >= cur.len() {
            if cur.is_empty() {
                if left == 0 {
                    out.push(Vec::new());
                }
            } else {
                cur[i] = left;
                out.push(cur.clone());
            }
            return;
        }
        for x in 0..=left {
            cur[i] = x;
            rec(i + 1, left - x, cur, out);
        }
    }
    rec(0, total, &mut cur, &mut out);
    out
}

/// All stable `(b, s)` with respect to `I`, ordered by [`StratumIndex::sort_key`].
pub fn enumerate_strata(g: &OrientedGraph, index_set: &IndexSet) -> Result<Vec<StratumIndex>, StabilityError> {
    let part = g.bipartite_partition()?;
    let target = combinatorial_support(index_set);
    let stages = index_set.len() - 1;
    let t = target.entries();
    let src_choices = compositions(t[0], part.sources.len());
    let sink_choices = compositions(t[stages + 1], part.sinks.len());
    let stage_choices: Vec<Vec<Vec<usize>>> =
        (1..=stages).map(|l| compositions(t[l], g.arrow_count())).collect();

    let mut out = Vec::new();
    for sc in &src_choices {
        for kc in &sink_choices {
            let mut b = vec![0; g.vertex_count()];
            for (&v, &c) in part.sources.iter().zip(sc) {
                b[v] = c;
            }
            for (&v, &c) in part.sinks.iter().zip(kc) {
                b[v] = c;
            }
            let mut s = vec![vec![0; stages]; g.arrow_count()];
            product_fill(&stage_choices, 0, &mut s, &mut |s| {
                out.push(StratumIndex { b: b.clone(), s: s.clone() })
            });
        }
    }
    out.sort_by_cached_key(StratumIndex::sort_key);
    Ok(out)
}

fn product_fill(
    choices: &[Vec<Vec<usize>>],
    stage: usize,
    s: &mut Vec<Vec<usize>>,
    emit: &mut dyn FnMut(&Vec<Vec<usize>>),
) {
    if stage == choices.len() {
        emit(s);
        return;
    }
    for c in &choices[stage] {
        for (e, &x) in c.iter().enumerate() {
            s[e][stage] = x;
        }
        product_fill(choices, stage + 1, s, emit);
    }
}

fn facet_range(j: &IndexSet, k: usize) -> Result<IndexSet, StabilityError> {
    if j.len() < 2 {
        return Err(StabilityError::NoFacets);
    }
    j.without(k)
        .ok_or(StabilityError::FacetOutOfRange { k, max: j.len() })
}

/// The stratum over `I(k) = J \ {j_k}` whose closure contains the stratum
/// `idx_j` over `J`.
pub fn stratum_facet(
    g: &OrientedGraph,
    j: &IndexSet,
    idx_j: &StratumIndex,
    k: usize,
) -> Result<(IndexSet, StratumIndex), StabilityError> {
    let i = facet_range(j, k)?;
    if !is_stable(g, j, idx_j)? {
        return Err(StabilityError::NotStable(j.to_string()));
    }
    let r = j.len() - 1;
    let mut b = idx_j.b.clone();
    let s: Vec<Vec<usize>> = if k == 1 {
        for (e, a) in g.arrows().iter().enumerate() {
            b[a.src] += idx_j.s[e][0];
        }
        idx_j.s.iter().map(|t| t[1..].to_vec()).collect()
    } else if k == r + 1 {
        for (e, a) in g.arrows().iter().enumerate() {
            b[a.tgt] += idx_j.s[e][r - 1];
        }
        idx_j.s.iter().map(|t| t[..r - 1].to_vec()).collect()
    } else {
        idx_j
            .s
            .iter()
            .map(|t| {
                let mut m = t.clone();
                let merged = m.remove(k - 1);
                m[k - 2] += merged;
                m
            })
            .collect()
    };
    Ok((i, StratumIndex { b, s }))
}

/// All stable `n`-tuples of nodes of `Γ_I`, in lexicographic node order
/// (black nodes before white nodes).
pub fn enumerate_tuples(g: &OrientedGraph, index_set: &IndexSet) -> Result<Vec<TupleIndex>, StabilityError> {
    let strata = enumerate_strata(g, index_set)?;
    let mut out = Vec::new();
    for st in &strata {
        let mut pool: Vec<(Node, usize)> = Vec::new();
        for (v, &c) in st.b.iter().enumerate() {
            if c > 0 {
                pool.push((Node::Black(v), c));
            }
        }
        for (e, t) in st.s.iter().enumerate() {
            for (l, &c) in t.iter().enumerate() {
                if c > 0 {
                    pool.push((Node::White { arrow: e, pos: l + 1 }, c));
                }
            }
        }
        let mut cur = Vec::with_capacity(index_set.n());
        arrangements(&mut pool, index_set.n(), &mut cur, &mut out);
    }
    out.sort();
    Ok(out)
}

fn arrangements(pool: &mut [(Node, usize)], n: usize, cur: &mut Vec<Node>, out: &mut Vec<TupleIndex>) {
    if cur.len() == n {
        out.push(TupleIndex(cur.clone()));
        return;
    }
    for i in 0..pool.len() {
        if pool[i].1 == 0 {
            continue;
        }
        pool[i].1 -= 1;
        cur.push(pool[i].0);
        arrangements(pool, n, cur, out);
        cur.pop();
        pool[i].1 += 1;
    }
}

fn check_tuple(g: &OrientedGraph, j: &IndexSet, z: &TupleIndex) -> Result<(), StabilityError> {
    if z.0.len() != j.n() {
        return Err(StabilityError::TupleLength {
            expected: j.n(),
            found: z.0.len(),
        });
    }
    for node in &z.0 {
        let ok = match *node {
            Node::Black(v) => v < g.vertex_count(),
            Node::White { arrow, pos } => arrow < g.arrow_count() && pos >= 1 && pos < j.len(),
        };
        if !ok {
            return Err(StabilityError::UnknownNode(format!("{node:?}")));
        }
    }
    Ok(())
}

/// Relabels each entry of a stable tuple over `J` into `Γ_{I(k)}`.
pub fn tuple_facet(
    g: &OrientedGraph,
    j: &IndexSet,
    z: &TupleIndex,
    k: usize,
) -> Result<TupleIndex, StabilityError> {
    let _ = facet_range(j, k)?;
    check_tuple(g, j, z)?;
    let r = j.len() - 1;
    if !is_stable(g, j, &z.counts(g, r))? {
        return Err(StabilityError::NotStable(j.to_string()));
    }
    let relabel = |node: Node| -> Node {
        let Node::White { arrow, pos } = node else {
            return node;
        };
        let a = g.arrow(arrow);
        if k == 1 {
            if pos == 1 {
                Node::Black(a.src)
            } else {
                Node::White { arrow, pos: pos - 1 }
            }
        } else if k == r + 1 {
            if pos == r {
                Node::Black(a.tgt)
            } else {
                node
            }
        } else if pos < k {
            node
        } else {
            Node::White { arrow, pos: pos - 1 }
        }
    };
    Ok(TupleIndex(z.0.iter().map(|&n| relabel(n)).collect()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expansion::expand;
    use crate::graph::parse_graph;

    fn edge() -> OrientedGraph {
        parse_graph("v\nw\nv -> w : g").unwrap()
    }

    fn set(n: usize, m: &[usize]) -> IndexSet {
        IndexSet::new(n, m.to_vec()).unwrap()
    }

    #[test]
    fn combinatorial_supports() {
        assert_eq!(combinatorial_support(&set(2, &[2])).0, vec![1, 1]);
        assert_eq!(combinatorial_support(&set(2, &[1, 3])).0, vec![0, 2, 0]);
        assert_eq!(combinatorial_support(&set(2, &[1, 2, 3])).0, vec![0, 1, 1, 0]);
    }

    #[test]
    fn numerical_supports() {
        let g = edge();
        let v = numerical_support(&g, &StratumIndex::new(vec![1, 1], vec![vec![]])).unwrap();
        assert_eq!(v.0, vec![1, 1]);
        let v = numerical_support(&g, &StratumIndex::new(vec![0, 0], vec![vec![2]])).unwrap();
        assert_eq!(v.0, vec![0, 2, 0]);
        let par = parse_graph("v\nw\nv -> w\nv -> w").unwrap();
        let v = numerical_support(&par, &StratumIndex::new(vec![0, 0], vec![vec![1], vec![1]])).unwrap();
        assert_eq!(v.0, vec![0, 2, 0]);
        let e = numerical_support(&par, &StratumIndex::new(vec![0, 0], vec![vec![1], vec![1, 0]]));
        assert_eq!(e, Err(StabilityError::RaggedStages(1, 2)));
    }

    #[test]
    fn stability_checks() {
        let g = edge();
        assert!(is_stable(&g, &set(2, &[2]), &StratumIndex::new(vec![1, 1], vec![vec![]])).unwrap());
        assert!(!is_stable(&g, &set(2, &[2]), &StratumIndex::new(vec![2, 0], vec![vec![]])).unwrap());
        assert!(is_stable(&g, &set(2, &[1, 3]), &StratumIndex::new(vec![0, 0], vec![vec![2]])).unwrap());
        assert_eq!(
            is_stable(&g, &set(2, &[1, 3]), &StratumIndex::new(vec![0, 0], vec![vec![]])),
            Err(StabilityError::StageLength { expected: 1, found: 0 })
        );
    }

    #[test]
    fn strata_examples() {
        let g = edge();
        let st = enumerate_strata(&g, &set(2, &[2])).unwrap();
        assert_eq!(st, vec![StratumIndex::new(vec![1, 1], vec![vec![]])]);

        let path = parse_graph("v1\nv2\nw\nv1 -> w\nv2 -> w").unwrap();
        let st = enumerate_strata(&path, &set(2, &[2])).unwrap();
        assert_eq!(
            st,
            vec![
                StratumIndex::new(vec![0, 1, 1], vec![vec![], vec![]]),
                StratumIndex::new(vec![1, 0, 1], vec![vec![], vec![]]),
            ]
        );

        let par = parse_graph("v\nw\nv -> w\nv -> w").unwrap();
        let st = enumerate_strata(&par, &set(2, &[1, 3])).unwrap();
        let splits: Vec<_> = st.iter().map(|x| (x.s[0][0], x.s[1][0])).collect();
        assert_eq!(splits, vec![(0, 2), (1, 1), (2, 0)]);
    }

    #[test]
    fn stratum_facet_examples() {
        let g = edge();
        let j = set(2, &[1, 2, 3]);
        let idx = StratumIndex::new(vec![0, 0], vec![vec![1, 1]]);
        let (i, st) = stratum_facet(&g, &j, &idx, 1).unwrap();
        assert_eq!((i.members(), st), (&[2, 3][..], StratumIndex::new(vec![1, 0], vec![vec![1]])));
        let (i, st) = stratum_facet(&g, &j, &idx, 2).unwrap();
        assert_eq!((i.members(), st), (&[1, 3][..], StratumIndex::new(vec![0, 0], vec![vec![2]])));
        let (i, st) = stratum_facet(&g, &j, &idx, 3).unwrap();
        assert_eq!((i.members(), st), (&[1, 2][..], StratumIndex::new(vec![0, 1], vec![vec![1]])));

        assert_eq!(
            stratum_facet(&g, &j, &idx, 4),
            Err(StabilityError::FacetOutOfRange { k: 4, max: 3 })
        );
        let bad = StratumIndex::new(vec![1, 0], vec![vec![1, 0]]);
        assert!(matches!(stratum_facet(&g, &j, &bad, 1), Err(StabilityError::NotStable(_))));
    }

    #[test]
    fn tuple_examples() {
        let g = edge();
        let t = enumerate_tuples(&g, &set(2, &[2])).unwrap();
        assert_eq!(
            t,
            vec![
                TupleIndex(vec![Node::Black(0), Node::Black(1)]),
                TupleIndex(vec![Node::Black(1), Node::Black(0)]),
            ]
        );
        let w = Node::White { arrow: 0, pos: 1 };
        assert_eq!(enumerate_tuples(&g, &set(2, &[1, 3])).unwrap(), vec![TupleIndex(vec![w, w])]);
        assert_eq!(enumerate_tuples(&g, &set(1, &[1, 2])).unwrap(), vec![TupleIndex(vec![w])]);
    }

    #[test]
    fn tuple_facet_examples() {
        let g = edge();
        let j = set(2, &[1, 2, 3]);
        let z = TupleIndex(vec![Node::White { arrow: 0, pos: 1 }, Node::White { arrow: 0, pos: 2 }]);
        let w1 = Node::White { arrow: 0, pos: 1 };
        assert_eq!(tuple_facet(&g, &j, &z, 2).unwrap(), TupleIndex(vec![w1, w1]));
        assert_eq!(tuple_facet(&g, &j, &z, 1).unwrap(), TupleIndex(vec![Node::Black(0), w1]));
        assert_eq!(tuple_facet(&g, &j, &z, 3).unwrap(), TupleIndex(vec![w1, Node::Black(1)]));
        let bad = TupleIndex(vec![w1, w1]);
        assert!(matches!(tuple_facet(&g, &j, &bad, 1), Err(StabilityError::NotStable(_))));
        let short = TupleIndex(vec![w1]);
        assert!(matches!(tuple_facet(&g, &j, &short, 1), Err(StabilityError::TupleLength { .. })));
    }

    #[test]
    fn json_forms() {
        let g = edge();
        let idx = StratumIndex::new(vec![1, 0], vec![vec![1]]);
        let v = idx.to_json(&g);
        assert_eq!(v.to_string(), r#"{"b":{"v":1,"w":0},"s":{"g":[1]}}"#);
        assert_eq!(StratumIndex::from_json(&g, &v).unwrap(), idx);

        let i = set(2, &[1, 3]);
        let x = expand(&g, &i);
        let z = TupleIndex(vec![Node::White { arrow: 0, pos: 1 }, Node::Black(1)]);
        let v = z.to_json(&g, &x);
        assert_eq!(v.to_string(), r#"["({1,3}|g|1)","w@{1,3}"]"#);
        assert_eq!(TupleIndex::from_json(&g, &x, &v).unwrap(), z);
    }

    #[test]
    fn compositions_enumerate_in_order() {
        assert_eq!(compositions(2, 2), vec![vec![0, 2], vec![1, 1], vec![2, 0]]);
        assert_eq!(compositions(0, 0), vec![Vec::<usize>::new()]);
        assert!(compositions(1, 0).is_empty());
        assert_eq!(compositions(3, 1), vec![vec![3]]);
    }
}
