//! Small-graph families shared by the integration tests. Graphs are
//! generated up to isomorphism by brute-force canonical forms.

#![allow(dead_code)]

use std::collections::BTreeSet;

use symdual::graph::OrientedGraph;

pub type Arrows = Vec<(usize, usize)>;

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// Smallest relabelling of a directed multigraph on `v` vertices.
pub fn canonical(arrows: &Arrows, perms: &[Vec<usize>]) -> Arrows {
    perms
        .iter()
        .map(|p| {
            let mut a: Arrows = arrows.iter().map(|&(s, t)| (p[s], p[t])).collect();
            a.sort_unstable();
            a
        })
        .min()
        .unwrap_or_default()
}

pub fn build(v: usize, arrows: &Arrows) -> OrientedGraph {
    let names: Vec<String> = (0..v).map(|i| format!("v{i}")).collect();
    let labelled: Vec<(String, String, String)> = arrows
        .iter()
        .enumerate()
        .map(|(k, &(s, t))| (format!("e{}", k + 1), names[s].clone(), names[t].clone()))
        .collect();
    OrientedGraph::new(names, labelled).expect("loop-free")
}

fn connected(v: usize, arrows: &Arrows) -> bool {
    let mut seen = vec![false; v];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(x) = stack.pop() {
        for &(s, t) in arrows {
            for (a, b) in [(s, t), (t, s)] {
                if a == x && !seen[b] {
                    seen[b] = true;
                    stack.push(b);
                }
            }
        }
    }
    seen.iter().all(|&s| s)
}

fn multisets(items: &[(usize, usize)], size: usize, from: usize, cur: &mut Arrows, out: &mut Vec<Arrows>) {
    if cur.len() == size {
        out.push(cur.clone());
        return;
    }
    for i in from..items.len() {
        cur.push(items[i]);
        multisets(items, size, i, cur, out);
        cur.pop();
    }
}

/// Every loop-free directed multigraph with `1..=max_v` vertices and at
/// most `max_e` arrows, up to isomorphism.
pub fn graphs(max_v: usize, max_e: usize, only_connected: bool) -> Vec<OrientedGraph> {
    let mut out = Vec::new();
    for v in 1..=max_v {
        let perms = permutations(v);
        let pairs: Vec<(usize, usize)> = (0..v)
            .flat_map(|s| (0..v).filter(move |&t| t != s).map(move |t| (s, t)))
            .collect();
        let mut seen: BTreeSet<Arrows> = BTreeSet::new();
        for m in 0..=max_e {
            let mut sets = Vec::new();
            multisets(&pairs, m, 0, &mut Vec::new(), &mut sets);
            for a in sets {
                if only_connected && !connected(v, &a) {
                    continue;
                }
                let c = canonical(&a, &perms);
                if seen.insert(c.clone()) {
                    out.push(build(v, &c));
                }
            }
        }
    }
    out
}

/// Graphs in which every vertex is a pure source or a pure sink.
pub fn bipartitely_oriented(max_v: usize, max_e: usize, only_connected: bool) -> Vec<OrientedGraph> {
    graphs(max_v, max_e, only_connected)
        .into_iter()
        .filter(|g| g.bipartite_partition().is_ok())
        .collect()
}

fn prufer_tree(v: usize, seq: &[usize]) -> Arrows {
    let mut degree = vec![1usize; v];
    for &x in seq {
        degree[x] += 1;
    }
    let mut edges = Vec::new();
    for &x in seq {
        let leaf = (0..v).find(|&u| degree[u] == 1).expect("leaf");
        edges.push((leaf.min(x), leaf.max(x)));
        degree[leaf] -= 1;
        degree[x] -= 1;
    }
    let rest: Vec<usize> = (0..v).filter(|&u| degree[u] == 1).collect();
    edges.push((rest[0], rest[1]));
    edges
}

/// Every oriented tree with `1..=max_v` vertices, up to isomorphism.
pub fn oriented_trees(max_v: usize) -> Vec<OrientedGraph> {
    let mut out = vec![build(1, &Vec::new())];
    for v in 2..=max_v {
        let perms = permutations(v);
        let mut shapes: BTreeSet<Arrows> = BTreeSet::new();
        let total = v.pow((v - 2) as u32);
        for code in 0..total {
            let mut seq = Vec::with_capacity(v - 2);
            let mut c = code;
            for _ in 0..v - 2 {
                seq.push(c % v);
                c /= v;
            }
            let edges = prufer_tree(v, &seq);
            let canon = perms
                .iter()
                .map(|p| {
                    let mut e: Arrows = edges.iter().map(|&(a, b)| (p[a].min(p[b]), p[a].max(p[b]))).collect();
                    e.sort_unstable();
                    e
                })
                .min()
                .unwrap();
            shapes.insert(canon);
        }
        let mut seen: BTreeSet<Arrows> = BTreeSet::new();
        for shape in shapes {
            for mask in 0u32..(1 << shape.len()) {
                let a: Arrows = shape
                    .iter()
                    .enumerate()
                    .map(|(i, &(x, y))| if mask >> i & 1 == 1 { (y, x) } else { (x, y) })
                    .collect();
                let c = canonical(&a, &perms);
                if seen.insert(c.clone()) {
                    out.push(build(v, &c));
                }
            }
        }
    }
    out
}

/// A cycle of length `len >= 2` with arrow `i` reversed when bit `i` of
/// `flips` is set (`flips = 0` is the directed cycle).
pub fn cycle(len: usize, flips: u32) -> OrientedGraph {
    let a: Arrows = (0..len)
        .map(|i| {
            let (s, t) = (i, (i + 1) % len);
            if flips >> i & 1 == 1 {
                (t, s)
            } else {
                (s, t)
            }
        })
        .collect();
    build(len, &a)
}

/// Number of ways to arrange a multiset with the given multiplicities.
pub fn multinomial(counts: &[usize]) -> u128 {
    let mut acc: u128 = 1;
    let mut total: u128 = 0;
    for &c in counts {
        for i in 1..=c as u128 {
            total += 1;
            acc = acc * total / i;
        }
    }
    acc
}

pub fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}
