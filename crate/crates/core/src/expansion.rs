//! Expanded graphs `Γ_I`: each arrow is subdivided into `|I|` arrows
//! through `|I| - 1` new white nodes.

use std::fmt;

use crate::error::IndexSetError;
use crate::graph::OrientedGraph;

/// A nonempty subset of `[n+1] = {1, ..., n+1}`, stored with its `n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IndexSet {
    n: usize,
    members: Vec<usize>,
}

impl IndexSet {
    pub fn new(n: usize, members: Vec<usize>) -> Result<Self, IndexSetError> {
        if n == 0 {
            return Err(IndexSetError::ZeroPoints);
        }
        if members.is_empty() {
            return Err(IndexSetError::Empty);
        }
        if members.windows(2).any(|w| w[0] >= w[1]) {
            return Err(IndexSetError::NotIncreasing);
        }
        if let Some(&m) = members.iter().find(|&&m| m == 0 || m > n + 1) {
            return Err(IndexSetError::OutOfRange { member: m, max: n + 1 });
        }
        Ok(IndexSet { n, members })
    }

    /// Accepts members in any order, sorting and deduplicating first.
    pub fn from_unsorted(n: usize, mut members: Vec<usize>) -> Result<Self, IndexSetError> {
        members.sort_unstable();
        members.dedup();
        Self::new(n, members)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    /// `r = |I|`.
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// The 1-based `k`-th member `i_k`.
    pub fn member(&self, k: usize) -> usize {
        self.members[k - 1]
    }

    /// `I(k) = J \ {j_k}` for 1-based `k`; `None` when that would be empty.
    pub fn without(&self, k: usize) -> Option<IndexSet> {
        if self.members.len() <= 1 || k == 0 || k > self.members.len() {
            return None;
        }
        let mut m = self.members.clone();
        m.remove(k - 1);
        Some(IndexSet { n: self.n, members: m })
    }

    /// All nonempty subsets of `[n+1]`, ordered by size and then
    /// lexicographically.
    pub fn all(n: usize) -> Vec<IndexSet> {
        let top = n + 1;
        let mut out: Vec<IndexSet> = (1u64..(1u64 << top))
            .map(|mask| IndexSet {
                n,
                members: (0..top).filter(|b| mask >> b & 1 == 1).map(|b| b + 1).collect(),
            })
            .collect();
        out.sort_by(|a, b| a.members.len().cmp(&b.members.len()).then(a.members.cmp(&b.members)));
        out
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, m) in self.members.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{m}")?;
        }
        f.write_str("}")
    }
}

/// A node of `Γ_I`. White nodes are stored positionally: `pos` runs over
/// `1..r`, the displayed label is the member `i_pos`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Node {
    Black(usize),
    White { arrow: usize, pos: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StageArrow {
    pub arrow: usize,
    /// 1-based stage, labelled by `i_stage` in the displayed graph.
    pub stage: usize,
    pub from: Node,
    pub to: Node,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpandedGraph {
    pub index_set: IndexSet,
    pub black_nodes: Vec<usize>,
    pub white_nodes: Vec<(usize, usize)>,
    pub arrows: Vec<StageArrow>,
}

/// Builds `Γ_I`. Along every arrow `γ: v -> v'` the chain reads
/// `v_I -> (I,γ,i_1) -> ... -> (I,γ,i_{r-1}) -> v'_I` with stages `1..=r`.
pub fn expand(g: &OrientedGraph, index_set: &IndexSet) -> ExpandedGraph {
    let r = index_set.len();
    let black_nodes: Vec<usize> = (0..g.vertex_count()).collect();
    let mut white_nodes = Vec::with_capacity(g.arrow_count() * (r - 1));
    let mut arrows = Vec::with_capacity(g.arrow_count() * r);
    for (e, a) in g.arrows().iter().enumerate() {
        for pos in 1..r {
            white_nodes.push((e, pos));
        }
        let node_at = |pos: usize| -> Node {
            if pos == 0 {
                Node::Black(a.src)
            } else if pos == r {
                Node::Black(a.tgt)
            } else {
                Node::White { arrow: e, pos }
            }
        };
        for stage in 1..=r {
            arrows.push(StageArrow {
                arrow: e,
                stage,
                from: node_at(stage - 1),
                to: node_at(stage),
            });
        }
    }
    ExpandedGraph {
        index_set: index_set.clone(),
        black_nodes,
        white_nodes,
        arrows,
    }
}

impl ExpandedGraph {
    /// Black nodes first, then white nodes arrow by arrow.
    pub fn nodes(&self) -> Vec<Node> {
        self.black_nodes
            .iter()
            .map(|&v| Node::Black(v))
            .chain(self.white_nodes.iter().map(|&(arrow, pos)| Node::White { arrow, pos }))
            .collect()
    }

    pub fn node_count(&self) -> usize {
        self.black_nodes.len() + self.white_nodes.len()
    }

    pub fn node_name(&self, g: &OrientedGraph, node: Node) -> String {
        match node {
            Node::Black(v) => format!("{}@{}", g.vertex_label(v), self.index_set),
            Node::White { arrow, pos } => format!(
                "({}|{}|{})",
                self.index_set,
                g.arrow(arrow).label,
                self.index_set.member(pos)
            ),
        }
    }

    pub fn node_by_name(&self, g: &OrientedGraph, name: &str) -> Option<Node> {
        self.nodes().into_iter().find(|&n| self.node_name(g, n) == name)
    }

    pub fn degree(&self, node: Node) -> usize {
        self.arrows
            .iter()
            .map(|a| usize::from(a.from == node) + usize::from(a.to == node))
            .sum()
    }

    /// The expansion as an ordinary oriented graph with display names, arrow
    /// labels `γ#stage`.
    pub fn to_oriented_graph(&self, g: &OrientedGraph) -> OrientedGraph {
        let nodes = self.nodes();
        let mut out = OrientedGraph::empty();
        let mut ids = std::collections::HashMap::new();
        for &n in &nodes {
            let id = out.add_vertex(self.node_name(g, n)).expect("node names are unique");
            ids.insert(n, id);
        }
        for a in &self.arrows {
            out.add_arrow(
                format!("{}#{}", g.arrow(a.arrow).label, a.stage),
                ids[&a.from],
                ids[&a.to],
            )
            .expect("expanded arrows are loop-free");
        }
        out
    }
}
