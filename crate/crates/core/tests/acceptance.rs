//! Acceptance suite: one line per criterion, exit status nonzero if any
//! criterion fails. Run with `cargo test --test acceptance`.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use symdual::delta_complex::DeltaComplex;
use symdual::expansion::{expand, IndexSet, Node};
use symdual::graph::OrientedGraph;
use symdual::stability::{enumerate_strata, enumerate_tuples, is_stable, stratum_facet, tuple_facet, StratumIndex};
use symdual::sym_product::{
    compare_constructions, labeled_layers, min_weight_span, product_complex, quotient_sym, skeleton_complex,
    sym_complex, sym_face, Factor, SymCell, VertexWeights,
};

use common::{binomial, bipartitely_oriented, cycle, graphs, multinomial, oriented_trees};

type Outcome = Result<String, String>;
type Criterion = (u32, &'static str, u64, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn describe(g: &OrientedGraph) -> String {
    g.to_graph_file().replace('\n', "; ")
}

/// `∂_{k} ∘ ∂_{k+1} = 0` in every degree.
fn boundary_squares_to_zero<K>(dc: &DeltaComplex<K>) -> bool
where
    K: Clone + Eq + std::hash::Hash + std::fmt::Debug,
{
    (1..dc.layers()).all(|k| dc.boundary_matrix(k).mul(&dc.boundary_matrix(k + 1)).is_zero())
}

/// Orbit labels biject onto direct cells and commute with every face map,
/// checked without the library's comparison routine.
fn orbit_labels_agree(g: &OrientedGraph, n: usize) -> Result<(), String> {
    let direct = sym_complex(g, n).map_err(|e| e.to_string())?;
    let q = quotient_sym(g, n).map_err(|e| e.to_string())?;
    let qc = q.complex();
    ensure(direct.f_vector() == qc.f_vector(), || {
        format!("f-vectors {:?} vs {:?}", direct.f_vector(), qc.f_vector())
    })?;
    for k in 0..qc.layers() {
        let mut image: Vec<usize> = Vec::with_capacity(qc.cells(k).len());
        for (o, pc) in qc.cells(k).iter().enumerate() {
            // occurrence counts, recomputed here from the cube and chain
            let mut a = vec![0; g.vertex_count()];
            let mut r = vec![vec![0; pc.blocks.len()]; g.arrow_count()];
            for f in &pc.cube {
                if let Factor::Vertex(v) = *f {
                    a[v] += 1;
                }
            }
            for (j, b) in pc.blocks.iter().enumerate() {
                for &p in b {
                    if let Factor::Arrow(e) = pc.cube[p] {
                        r[e][j] += 1;
                    }
                }
            }
            let label = SymCell { a, r };
            ensure(label == q.labels[k][o], || format!("label mismatch at orbit {o}"))?;
            let d = direct
                .position(k, &label)
                .ok_or_else(|| format!("orbit label {} is not a direct cell", label.name(g)))?;
            image.push(d);
        }
        let mut sorted = image.clone();
        sorted.sort_unstable();
        sorted.dedup();
        ensure(sorted.len() == direct.cells(k).len() && sorted.len() == image.len(), || {
            format!("labels are not a bijection in dimension {k}")
        })?;
        if k > 0 {
            for (o, &d) in image.iter().enumerate() {
                for i in 0..=k {
                    let via_orbit = qc.cell(k - 1, qc.face(k, o, i));
                    let via_direct = direct.cell(k - 1, direct.face(k, d, i));
                    ensure(via_orbit.sym_label(g) == *via_direct, || {
                        format!("d_{i} disagrees on {}", direct.cell(k, d).name(g))
                    })?;
                }
            }
        }
    }
    ensure(compare_constructions(g, &direct, &q).matches, || "library comparison disagrees".into())
}

fn criterion_1() -> Outcome {
    let family = bipartitely_oriented(4, 4, true);
    let checked: Vec<Result<(), String>> = family
        .par_iter()
        .flat_map_iter(|g| (1..=3).map(move |n| (g, n)))
        .map(|(g, n)| orbit_labels_agree(g, n).map_err(|e| format!("n={n}, {}: {e}", describe(g))))
        .collect();
    let cases = checked.len();
    checked.into_iter().collect::<Result<Vec<_>, _>>()?;
    Ok(format!("{} graphs, {cases} cases", family.len()))
}

fn acyclic(h: &symdual::HomologyResult) -> bool {
    h.trimmed_betti() == vec![1] && h.is_torsion_free()
}

fn criterion_2() -> Outcome {
    let trees = oriented_trees(6);
    let results: Vec<Result<(), String>> = trees
        .par_iter()
        .flat_map_iter(|g| (1..=4).map(move |n| (g, n)))
        .map(|(g, n)| {
            let h = sym_complex(g, n).map_err(|e| e.to_string())?.homology();
            ensure(acyclic(&h), || format!("n={n}, {}: {:?}", describe(g), h))
        })
        .collect();
    let cases = results.len();
    results.into_iter().collect::<Result<Vec<_>, _>>()?;
    Ok(format!("{} oriented trees, {cases} cases", trees.len()))
}

fn criterion_3() -> Outcome {
    // both orientations of the 2-cycle and every orientation of the 4-cycle
    let mut family: Vec<OrientedGraph> = vec![cycle(2, 0), cycle(2, 1)];
    family.extend((0..16).map(|f| cycle(4, f)));
    let mut cases = 0;
    for g in &family {
        for n in 1..=4 {
            let h = sym_complex(g, n).map_err(|e| e.to_string())?.homology();
            ensure(h.trimmed_betti() == vec![1, 1] && h.is_torsion_free(), || {
                format!("n={n}, {}: {:?}", describe(g), h)
            })?;
            cases += 1;
        }
    }
    Ok(format!("{cases} cases"))
}

fn criterion_4() -> Outcome {
    let g = OrientedGraph::from_parts(
        &["v", "w1", "w2"],
        &[("a1", "v", "w1"), ("a2", "v", "w1"), ("b1", "v", "w2"), ("b2", "v", "w2")],
    )
    .map_err(|e| e.to_string())?;
    let h1 = sym_complex(&g, 1).map_err(|e| e.to_string())?.homology();
    let h2 = sym_complex(&g, 2).map_err(|e| e.to_string())?.homology();
    ensure(h1.trimmed_betti() == vec![1, 2] && h1.is_torsion_free(), || format!("Sym1: {h1:?}"))?;
    ensure(h2.trimmed_betti() == vec![1, 2, 1] && h2.is_torsion_free(), || format!("Sym2: {h2:?}"))?;
    Ok("Sym1 betti (1,2), Sym2 betti (1,2,1)".into())
}

fn criterion_5() -> Outcome {
    let family = graphs(4, 4, true);
    let failures: Vec<String> = family
        .par_iter()
        .filter_map(|g| {
            let simplicial: Vec<bool> = (1..=3)
                .map(|n| sym_complex(g, n).expect("small").is_simplicial())
                .collect();
            let tree = g.is_tree();
            let agrees = if tree {
                simplicial.iter().all(|&s| s)
            } else {
                simplicial.iter().any(|&s| !s)
            };
            (!agrees).then(|| format!("tree={tree} simplicial(n=1..3)={simplicial:?}: {}", describe(g)))
        })
        .collect();
    ensure(failures.is_empty(), || {
        format!("{} of {} graphs disagree, e.g. {}", failures.len(), family.len(), failures.join(" / "))
    })?;
    Ok(format!("{} connected graphs", family.len()))
}

fn as_cell(idx: &StratumIndex) -> SymCell {
    SymCell {
        a: idx.b.clone(),
        r: idx.s.clone(),
    }
}

fn facet_coherence(g: &OrientedGraph, n: usize) -> Result<usize, String> {
    let mut checked = 0;
    for j in IndexSet::all(n) {
        if j.len() < 2 {
            continue;
        }
        let strata = enumerate_strata(g, &j).map_err(|e| e.to_string())?;
        for s in &strata {
            let cell = as_cell(s);
            ensure(cell.is_valid(g, n), || format!("J={j}: stratum {s:?} is not a cell"))?;
            for k in 1..=j.len() {
                let (_, f) = stratum_facet(g, &j, s, k).map_err(|e| e.to_string())?;
                let d = sym_face(g, &cell, k - 1).map_err(|e| e.to_string())?;
                ensure(d == as_cell(&f), || format!("J={j}, k={k}: {s:?} -> {f:?} vs {d:?}"))?;
                checked += 1;
            }
        }
        let stages = j.len() - 1;
        for z in enumerate_tuples(g, &j).map_err(|e| e.to_string())? {
            let counts = z.counts(g, stages);
            for k in 1..=j.len() {
                let t = tuple_facet(g, &j, &z, k).map_err(|e| e.to_string())?;
                let (_, f) = stratum_facet(g, &j, &counts, k).map_err(|e| e.to_string())?;
                ensure(t.counts(g, stages - 1) == f, || format!("J={j}, k={k}: tuple {z:?}"))?;
                checked += 1;
            }
        }
    }
    Ok(checked)
}

fn criterion_6() -> Outcome {
    let family = bipartitely_oriented(3, 3, true);
    let counts: Vec<Result<usize, String>> = family
        .par_iter()
        .flat_map_iter(|g| (1..=4).map(move |n| (g, n)))
        .map(|(g, n)| facet_coherence(g, n).map_err(|e| format!("n={n}, {}: {e}", describe(g))))
        .collect();
    let total: usize = counts.into_iter().collect::<Result<Vec<_>, _>>()?.iter().sum();
    Ok(format!("{} graphs, {total} facet checks", family.len()))
}

/// Every vector in `[0, n]^d`, or only those with coordinate sum at most
/// `n` when the full box is large.
fn bounded_vectors(d: usize, n: usize) -> Vec<Vec<usize>> {
    let full = (n + 1).checked_pow(d as u32).is_some_and(|s| s <= 200_000);
    let mut out = Vec::new();
    let mut cur = vec![0; d];
    fn rec(i: usize, used: usize, n: usize, full: bool, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == cur.len() {
            out.push(cur.clone());
            return;
        }
        let top = if full { n } else { n - used };
        for x in 0..=top {
            cur[i] = x;
            rec(i + 1, used + x, n, full, cur, out);
        }
    }
    rec(0, 0, n, full, &mut cur, &mut out);
    out
}

fn stability_oracle(g: &OrientedGraph, n: usize) -> Result<usize, String> {
    let nv = g.vertex_count();
    let ne = g.arrow_count();
    let mut checked = 0;
    for i in IndexSet::all(n) {
        let stages = i.len() - 1;
        let mut brute: Vec<StratumIndex> = bounded_vectors(nv + ne * stages, n)
            .into_iter()
            .map(|x| StratumIndex {
                b: x[..nv].to_vec(),
                s: (0..ne).map(|e| x[nv + e * stages..nv + (e + 1) * stages].to_vec()).collect(),
            })
            .filter(|idx| is_stable(g, &i, idx).expect("well-shaped"))
            .collect();
        brute.sort_by_key(StratumIndex::sort_key);
        let listed = enumerate_strata(g, &i).map_err(|e| e.to_string())?;
        ensure(brute == listed, || format!("I={i}: {} brute vs {} listed", brute.len(), listed.len()))?;

        let tuples = enumerate_tuples(g, &i).map_err(|e| e.to_string())?;
        let mut expected: u128 = 0;
        for s in &listed {
            let flat: Vec<usize> = s.b.iter().copied().chain(s.s.iter().flatten().copied()).collect();
            let m = multinomial(&flat);
            let got = tuples.iter().filter(|z| z.counts(g, stages) == *s).count() as u128;
            ensure(got == m, || format!("I={i}: {s:?} has {got} tuples, expected {m}"))?;
            expected += m;
        }
        ensure(tuples.len() as u128 == expected, || format!("I={i}: stray tuples"))?;
        // every tuple entry is a node of the expansion
        let x = expand(g, &i);
        let nodes = x.nodes();
        ensure(
            tuples.iter().all(|z| z.0.len() == n && z.0.iter().all(|p: &Node| nodes.contains(p))),
            || format!("I={i}: tuple outside the expansion"),
        )?;
        checked += 1;
    }
    Ok(checked)
}

fn criterion_7() -> Outcome {
    let family = bipartitely_oriented(3, 3, true);
    let results: Vec<Result<usize, String>> = family
        .par_iter()
        .flat_map_iter(|g| (1..=3).map(move |n| (g, n)))
        .map(|(g, n)| stability_oracle(g, n).map_err(|e| format!("n={n}, {}: {e}", describe(g))))
        .collect();
    let total: usize = results.into_iter().collect::<Result<Vec<_>, _>>()?.iter().sum();
    Ok(format!("{} graphs, {total} index sets", family.len()))
}

fn criterion_8() -> Outcome {
    let g = OrientedGraph::from_parts(&["v", "w"], &[("g", "v", "w")]).map_err(|e| e.to_string())?;
    for n in 0..=8usize {
        let dc = sym_complex(&g, n).map_err(|e| e.to_string())?;
        let expected: Vec<usize> = (0..=n).map(|k| binomial(n as u128 + 1, k as u128 + 1) as usize).collect();
        ensure(dc.f_vector() == expected, || format!("n={n}: {:?} vs {expected:?}", dc.f_vector()))?;
        ensure(dc.euler_characteristic() == 1, || format!("n={n}: euler {}", dc.euler_characteristic()))?;
    }
    Ok("n = 0..=8".into())
}

fn criterion_9() -> Outcome {
    let family = graphs(4, 4, true);
    let results: Vec<Result<usize, String>> = family
        .par_iter()
        .flat_map_iter(|g| (1..=3).map(move |n| (g, n)))
        .map(|(g, n)| {
            let full = sym_complex(g, n).map_err(|e| e.to_string())?;
            let nv = g.vertex_count();
            let mut checked = 0;
            for code in 0..3usize.pow(nv as u32) {
                let w = VertexWeights((0..nv).map(|v| (code / 3usize.pow(v as u32) % 3) as i64).collect());
                let sk = skeleton_complex(g, &w, n).map_err(|e| e.to_string())?;
                let span = min_weight_span(g, &w, &full);
                ensure(labeled_layers(g, &span) == labeled_layers(&sk.span, &sk.complex), || {
                    format!("n={n}, w={:?}, {}", w.0, describe(g))
                })?;
                checked += 1;
            }
            Ok(checked)
        })
        .collect();
    let total: usize = results.into_iter().collect::<Result<Vec<_>, _>>()?.iter().sum();
    Ok(format!("{} graphs, {total} weightings", family.len()))
}

/// The projective plane: two vertices, three edges, two triangles.
fn projective_plane() -> DeltaComplex<String> {
    let names = |xs: &[&str]| xs.iter().map(|s| s.to_string()).collect::<Vec<_>>();
    DeltaComplex::from_indexed(
        vec![names(&["v", "w"]), names(&["a", "b", "c"]), names(&["U", "L"])],
        vec![
            vec![vec![], vec![]],
            vec![vec![1, 0], vec![1, 0], vec![1, 1]],
            vec![vec![2, 1, 0], vec![2, 0, 1]],
        ],
    )
}

fn criterion_10() -> Outcome {
    let rp2 = projective_plane();
    ensure(rp2.validate().is_ok(), || "projective plane fails the face identities".into())?;
    let h = rp2.homology();
    ensure(
        h.betti == vec![1, 0, 0] && h.torsion[1] == vec![2.into()] && h.torsion[0].is_empty() && h.torsion[2].is_empty(),
        || format!("projective plane: {h:?}"),
    )?;
    ensure(boundary_squares_to_zero(&rp2), || "∂∂ != 0 on the projective plane".into())?;

    let mut family = graphs(3, 3, false);
    family.extend(bipartitely_oriented(4, 4, true));
    let counts: Vec<Result<usize, String>> = family
        .par_iter()
        .flat_map_iter(|g| (0..=3).map(move |n| (g, n)))
        .map(|(g, n)| {
            let sym = sym_complex(g, n).map_err(|e| e.to_string())?;
            let prod = product_complex(g, n).map_err(|e| e.to_string())?;
            let q = quotient_sym(g, n).map_err(|e| e.to_string())?;
            let ok = boundary_squares_to_zero(&sym)
                && boundary_squares_to_zero(&prod.complex)
                && boundary_squares_to_zero(q.complex())
                && sym.validate().is_ok()
                && prod.complex.validate().is_ok();
            ensure(ok, || format!("n={n}, {}", describe(g)))?;
            Ok(3)
        })
        .collect();
    let total: usize = counts.into_iter().collect::<Result<Vec<_>, _>>()?.iter().sum();
    Ok(format!("RP2 torsion Z/2 in degree 1, ∂∂ = 0 on {total} complexes"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        (1, "quotient matches direct construction", 60, criterion_1),
        (2, "trees give acyclic symmetric products", 120, criterion_2),
        (3, "even cycles give circle homology", 120, criterion_3),
        (4, "two 2-cycles at a vertex give torus homology", 60, criterion_4),
        (5, "simplicial exactly for trees", 60, criterion_5),
        (6, "stratum facets match cell faces", 120, criterion_6),
        (7, "stable strata match brute force", 60, criterion_7),
        (8, "single-edge f-vector is binomial", 10, criterion_8),
        (9, "minimal-weight span is the skeleton", 60, criterion_9),
        (10, "boundary maps and torsion", 5, criterion_10),
    ];
    let mut failed = 0;
    for (id, name, budget, run) in criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            Err(format!("panicked: {msg}"))
        });
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(_) if elapsed > Duration::from_secs(budget) => Err(format!("over the {budget} s budget")),
            other => other,
        };
        let secs = elapsed.as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {id:>2}: PASS  {name} ({detail}; {secs:.2} s)"),
            Err(why) => {
                failed += 1;
                println!("criterion {id:>2}: FAIL  {name} ({why}; {secs:.2} s)");
            }
        }
    }
    println!("{} of 10 criteria passed", 10 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
