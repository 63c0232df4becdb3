//! Oriented dual graphs: parsing, orientation checks and cycle structure.
//!
//! Vertices and arrows are stored in declaration order and referred to by
//! their position. Every enumeration elsewhere in the crate iterates in
//! this order, which keeps cell indexing reproducible.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use crate::error::{GraphError, ParseError};

/// A directed arrow `src -> tgt`; endpoints are vertex positions.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub label: String,
    pub src: usize,
    pub tgt: usize,
}

/// A finite loop-free directed multigraph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrientedGraph {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    vertex_index: HashMap<String, usize>,
}

/// The sources `V+` and sinks `V-` of a bipartitely oriented graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexPartition {
    pub sources: Vec<usize>,
    pub sinks: Vec<usize>,
}

impl VertexPartition {
    pub fn is_source(&self, v: usize) -> bool {
        self.sources.binary_search(&v).is_ok()
    }
}

impl OrientedGraph {
    /// Builds a graph from vertex labels and `(label, src, tgt)` triples
    /// naming the endpoints by label.
    pub fn new<V, A>(vertices: V, arrows: A) -> Result<Self, GraphError>
    where
        V: IntoIterator,
        V::Item: Into<String>,
        A: IntoIterator<Item = (String, String, String)>,
    {
        let mut g = OrientedGraph::empty();
        for v in vertices {
            g.add_vertex(v.into())?;
        }
        for (label, src, tgt) in arrows {
            let s = g.require_vertex(&src)?;
            let t = g.require_vertex(&tgt)?;
            g.add_arrow(label, s, t)?;
        }
        Ok(g)
    }

    /// Convenience constructor from string slices; arrow triples are
    /// `(label, src, tgt)`.
    pub fn from_parts(vertices: &[&str], arrows: &[(&str, &str, &str)]) -> Result<Self, GraphError> {
        Self::new(
            vertices.iter().copied(),
            arrows
                .iter()
                .map(|(l, s, t)| (l.to_string(), s.to_string(), t.to_string())),
        )
    }

    pub fn empty() -> Self {
        OrientedGraph {
            vertices: Vec::new(),
            arrows: Vec::new(),
            vertex_index: HashMap::new(),
        }
    }

    pub fn add_vertex(&mut self, label: String) -> Result<usize, GraphError> {
        if self.vertex_index.contains_key(&label) {
            return Err(GraphError::DuplicateVertex(label));
        }
        let idx = self.vertices.len();
        self.vertex_index.insert(label.clone(), idx);
        self.vertices.push(label);
        Ok(idx)
    }

    pub fn add_arrow(&mut self, label: String, src: usize, tgt: usize) -> Result<usize, GraphError> {
        assert!(src < self.vertices.len() && tgt < self.vertices.len());
        if src == tgt {
            return Err(GraphError::Loop {
                arrow: label,
                vertex: self.vertices[src].clone(),
            });
        }
        if self.arrows.iter().any(|a| a.label == label) {
            return Err(GraphError::DuplicateArrow(label));
        }
        self.arrows.push(Arrow { label, src, tgt });
        Ok(self.arrows.len() - 1)
    }

    fn require_vertex(&self, label: &str) -> Result<usize, GraphError> {
        self.vertex_index
            .get(label)
            .copied()
            .ok_or_else(|| GraphError::UnknownVertex(label.to_string()))
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn vertex_label(&self, v: usize) -> &str {
        &self.vertices[v]
    }

    pub fn arrow(&self, e: usize) -> &Arrow {
        &self.arrows[e]
    }

    pub fn vertex_id(&self, label: &str) -> Option<usize> {
        self.vertex_index.get(label).copied()
    }

    pub fn arrow_id(&self, label: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.label == label)
    }

    /// Arrows directed towards `v` (`E(v)+`).
    pub fn incoming(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.arrows
            .iter()
            .enumerate()
            .filter(move |(_, a)| a.tgt == v)
            .map(|(i, _)| i)
    }

    /// Arrows directed away from `v` (`E(v)-`).
    pub fn outgoing(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.arrows
            .iter()
            .enumerate()
            .filter(move |(_, a)| a.src == v)
            .map(|(i, _)| i)
    }

    /// Same vertices, every arrow reversed.
    pub fn reversed(&self) -> OrientedGraph {
        let mut g = self.clone();
        for a in &mut g.arrows {
            std::mem::swap(&mut a.src, &mut a.tgt);
        }
        g
    }

    /// The full subgraph on the given vertices (in graph order), keeping
    /// every arrow whose endpoints both survive.
    pub fn induced_subgraph(&self, keep: &[bool]) -> OrientedGraph {
        let mut g = OrientedGraph::empty();
        let mut map = vec![usize::MAX; self.vertices.len()];
        for (v, label) in self.vertices.iter().enumerate() {
            if keep[v] {
                map[v] = g.add_vertex(label.clone()).expect("labels already unique");
            }
        }
        for a in &self.arrows {
            if keep[a.src] && keep[a.tgt] {
                g.add_arrow(a.label.clone(), map[a.src], map[a.tgt])
                    .expect("arrows already valid");
            }
        }
        g
    }

    /// Undirected adjacency: for each vertex, `(neighbour, arrow)` pairs.
    fn undirected_adjacency(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.vertices.len()];
        for (e, a) in self.arrows.iter().enumerate() {
            adj[a.src].push((a.tgt, e));
            adj[a.tgt].push((a.src, e));
        }
        adj
    }

    /// Number of connected components of the underlying undirected graph.
    pub fn component_count(&self) -> usize {
        let adj = self.undirected_adjacency();
        let mut seen = vec![false; self.vertices.len()];
        let mut count = 0;
        for start in 0..self.vertices.len() {
            if seen[start] {
                continue;
            }
            count += 1;
            seen[start] = true;
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                for &(w, _) in &adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
        }
        count
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() <= 1
    }

    /// First Betti number `|E| - |V| + #components` of the underlying graph.
    pub fn cycle_rank(&self) -> usize {
        self.arrows.len() + self.component_count() - self.vertices.len()
    }

    /// True iff the underlying undirected multigraph has an odd cycle, i.e.
    /// iff no bipartite orientation exists. Two-colours each component by BFS.
    pub fn has_odd_cycle(&self) -> bool {
        let adj = self.undirected_adjacency();
        let mut colour: Vec<Option<bool>> = vec![None; self.vertices.len()];
        for start in 0..self.vertices.len() {
            if colour[start].is_some() {
                continue;
            }
            colour[start] = Some(false);
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                let c = colour[v].unwrap();
                for &(w, _) in &adj[v] {
                    match colour[w] {
                        None => {
                            colour[w] = Some(!c);
                            queue.push_back(w);
                        }
                        Some(cw) if cw == c => return true,
                        Some(_) => {}
                    }
                }
            }
        }
        false
    }

    /// Splits the vertices into pure sources and pure sinks. Isolated
    /// vertices join the sources.
    pub fn bipartite_partition(&self) -> Result<VertexPartition, GraphError> {
        let n = self.vertices.len();
        let mut has_in = vec![false; n];
        let mut has_out = vec![false; n];
        for a in &self.arrows {
            has_out[a.src] = true;
            has_in[a.tgt] = true;
        }
        let mut sources = Vec::new();
        let mut sinks = Vec::new();
        for v in 0..n {
            match (has_out[v], has_in[v]) {
                (true, true) => {
                    return Err(GraphError::NotBipartitelyOriented(self.vertices[v].clone()))
                }
                (false, true) => sinks.push(v),
                _ => sources.push(v),
            }
        }
        Ok(VertexPartition { sources, sinks })
    }

    /// True iff some directed cycle exists. Kahn's algorithm: the graph is
    /// acyclic iff every vertex can be peeled off at in-degree zero.
    pub fn has_directed_cycle(&self) -> bool {
        let n = self.vertices.len();
        let mut indeg = vec![0usize; n];
        let mut out: Vec<Vec<usize>> = vec![Vec::new(); n];
        for a in &self.arrows {
            indeg[a.tgt] += 1;
            out[a.src].push(a.tgt);
        }
        let mut queue: VecDeque<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut removed = 0;
        while let Some(v) = queue.pop_front() {
            removed += 1;
            for &w in &out[v] {
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    queue.push_back(w);
                }
            }
        }
        removed < n
    }

    /// Connected and acyclic as an undirected multigraph. The empty graph is
    /// not a tree.
    pub fn is_tree(&self) -> bool {
        !self.vertices.is_empty()
            && self.is_connected()
            && self.arrows.len() + 1 == self.vertices.len()
    }

    /// Renders the graph in the line-based graph-file format.
    pub fn to_graph_file(&self) -> String {
        let mut out = String::new();
        for v in &self.vertices {
            out.push_str(v);
            out.push('\n');
        }
        for a in &self.arrows {
            out.push_str(&format!(
                "{} -> {} : {}\n",
                self.vertices[a.src], self.vertices[a.tgt], a.label
            ));
        }
        out
    }
}

impl fmt::Display for OrientedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_graph_file())
    }
}

/// Parses the graph-file format.
///
/// One item per line. A bare token declares a vertex; `SRC -> TGT : LABEL`
/// declares an arrow (the `: LABEL` part is optional, unlabelled arrows get
/// `e<k>` with `k` the 1-based arrow position). A `#` at the start of a
/// token begins a comment running to the end of the line, so `#` inside a
/// label such as `g#2` is kept.
pub fn parse_graph(text: &str) -> Result<OrientedGraph, ParseError> {
    let mut g = OrientedGraph::empty();
    for (lineno, raw) in text.lines().enumerate() {
        let line_no = lineno + 1;
        let line = strip_comment(raw);
        let tokens = tokenize(line);
        if tokens.is_empty() {
            continue;
        }
        let err = |col: usize, msg: String| ParseError::Syntax {
            line: line_no,
            column: col,
            message: msg,
        };
        if tokens.len() == 1 && tokens[0].1 != "->" && tokens[0].1 != ":" {
            let (col, tok) = tokens[0];
            check_name(tok).map_err(|m| err(col, m))?;
            g.add_vertex(tok.to_string())
                .map_err(|e| ParseError::Graph { line: line_no, source: e })?;
            continue;
        }
        // SRC -> TGT [: LABEL]
        if tokens.len() < 3 || tokens[1].1 != "->" {
            let col = tokens.get(1).map_or(tokens[0].0 + tokens[0].1.len(), |t| t.0);
            return Err(err(col, "expected `SRC -> TGT [: LABEL]` or a single vertex name".into()));
        }
        let (src_col, src) = tokens[0];
        let (tgt_col, tgt) = tokens[2];
        check_name(src).map_err(|m| err(src_col, m))?;
        check_name(tgt).map_err(|m| err(tgt_col, m))?;
        let label = match tokens.len() {
            3 => format!("e{}", g.arrow_count() + 1),
            5 if tokens[3].1 == ":" => {
                let (col, l) = tokens[4];
                check_name(l).map_err(|m| err(col, m))?;
                l.to_string()
            }
            _ => {
                let col = tokens[3].0;
                return Err(err(col, "expected `: LABEL` after the arrow target".into()));
            }
        };
        let s = g.vertex_id(src).ok_or_else(|| {
            err(src_col, format!("vertex `{src}` used before its declaration"))
        })?;
        let t = g.vertex_id(tgt).ok_or_else(|| {
            err(tgt_col, format!("vertex `{tgt}` used before its declaration"))
        })?;
        g.add_arrow(label, s, t)
            .map_err(|e| ParseError::Graph { line: line_no, source: e })?;
    }
    Ok(g)
}

fn strip_comment(line: &str) -> &str {
    let mut prev_ws = true;
    for (i, c) in line.char_indices() {
        if c == '#' && prev_ws {
            return &line[..i];
        }
        prev_ws = c.is_whitespace();
    }
    line
}

/// Splits on whitespace, additionally separating `->` and `:` when they are
/// glued to names. Columns are 1-based character positions.
fn tokenize(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start: Option<usize> = None;
    let bytes = line.as_bytes();
    let mut i = 0;
    let col_of = |byte: usize| line[..byte].chars().count() + 1;
    while i < bytes.len() {
        let c = bytes[i];
        let sep = if c == b'-' && bytes.get(i + 1) == Some(&b'>') {
            Some(2)
        } else if c == b':' {
            Some(1)
        } else {
            None
        };
        if (c as char).is_ascii_whitespace() || sep.is_some() {
            if let Some(s) = start.take() {
                out.push((col_of(s), &line[s..i]));
            }
            if let Some(w) = sep {
                out.push((col_of(i), &line[i..i + w]));
                i += w;
                continue;
            }
        } else if start.is_none() {
            start = Some(i);
        }
        i += 1;
    }
    if let Some(s) = start {
        out.push((col_of(s), &line[s..]));
    }
    out
}

fn check_name(tok: &str) -> Result<(), String> {
    if tok == "->" || tok == ":" {
        Err(format!("expected a name, found `{tok}`"))
    } else {
        Ok(())
    }
}
