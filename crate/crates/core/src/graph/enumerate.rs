//! Exhaustive enumeration of small graphs up to isomorphism.
//!
//! Canonical codes come from an individualization/refinement search that
//! visits every leaf (no automorphism pruning). That is exponential for highly
//! symmetric graphs but exact, and at most eight or nine vertices it finishes
//! quickly. Graphs on `n` vertices are produced by attaching a new vertex to
//! every neighbour subset of each graph on `n - 1` vertices and keeping one
//! representative per canonical code.

use std::collections::BTreeSet;

use super::{Graph, GraphError};

/// Largest vertex count accepted by the enumerators. The canonical code packs
/// the upper triangle into a `u64`, which would allow eleven, but the search
/// cost makes anything past nine impractical.
pub const MAX_ENUMERATION_N: usize = 9;

/// Splits cells until the ordered partition is equitable.
fn refine(masks: &[u64], cells: &mut Vec<Vec<usize>>) {
    'outer: loop {
        for s in 0..cells.len() {
            let splitter = cells[s].iter().fold(0u64, |m, &v| m | (1 << v));
            for c in 0..cells.len() {
                if cells[c].len() < 2 {
                    continue;
                }
                let count = |v: usize| (masks[v] & splitter).count_ones();
                let first = count(cells[c][0]);
                if cells[c].iter().all(|&v| count(v) == first) {
                    continue;
                }
                let mut keyed: Vec<(u32, usize)> = cells[c].iter().map(|&v| (count(v), v)).collect();
                keyed.sort_unstable();
                let mut pieces: Vec<Vec<usize>> = Vec::new();
                let mut last = None;
                for (k, v) in keyed {
                    if last != Some(k) {
                        pieces.push(Vec::new());
                        last = Some(k);
                    }
                    pieces.last_mut().expect("pushed above").push(v);
                }
                cells.splice(c..=c, pieces);
                continue 'outer;
            }
        }
        return;
    }
}

fn leaf_code(masks: &[u64], cells: &[Vec<usize>]) -> u64 {
    let order: Vec<usize> = cells.iter().map(|c| c[0]).collect();
    let mut code = 0u64;
    for j in 1..order.len() {
        for i in 0..j {
            code = (code << 1) | (masks[order[i]] >> order[j] & 1);
        }
    }
    code
}

fn search(masks: &[u64], cells: Vec<Vec<usize>>, best: &mut u64) {
    let Some(target) = cells.iter().position(|c| c.len() > 1) else {
        *best = (*best).max(leaf_code(masks, &cells));
        return;
    };
    for &v in &cells[target] {
        let rest: Vec<usize> = cells[target].iter().copied().filter(|&w| w != v).collect();
        let mut next = cells.clone();
        next.splice(target..=target, [vec![v], rest]);
        refine(masks, &mut next);
        search(masks, next, best);
    }
}

/// A complete isomorphism invariant: two graphs on the same number of
/// vertices get equal codes iff they are isomorphic.
pub fn canonical_code(g: &Graph) -> Result<u64, GraphError> {
    let n = g.vertex_count();
    if n > MAX_ENUMERATION_N {
        return Err(GraphError::TooLarge(n, MAX_ENUMERATION_N));
    }
    let masks = g.adjacency_masks();
    let mut cells = vec![(0..n).collect::<Vec<_>>()];
    refine(&masks, &mut cells);
    let mut best = 0;
    search(&masks, cells, &mut best);
    Ok(best)
}

fn graph_from_code(n: usize, code: u64) -> Graph {
    let total = n * (n - 1) / 2;
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if code >> (total - 1 - k) & 1 == 1 {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    Graph::from_edges(n, edges).expect("codes describe simple graphs")
}

fn codes_by_size(max_n: usize) -> Result<Vec<BTreeSet<u64>>, GraphError> {
    if max_n > MAX_ENUMERATION_N {
        return Err(GraphError::TooLarge(max_n, MAX_ENUMERATION_N));
    }
    let mut levels: Vec<BTreeSet<u64>> = vec![BTreeSet::new(), BTreeSet::from([0])];
    for n in 2..=max_n {
        let prev = &levels[n - 1];
        let mut next = BTreeSet::new();
        for &code in prev {
            let base = graph_from_code(n - 1, code);
            let base_edges: Vec<(usize, usize)> = base.edges().collect();
            for subset in 0u32..(1 << (n - 1)) {
                let edges = base_edges
                    .iter()
                    .copied()
                    .chain((0..n - 1).filter(|&v| subset >> v & 1 == 1).map(|v| (v, n - 1)));
                let g = Graph::from_edges(n, edges)?;
                next.insert(canonical_code(&g)?);
            }
        }
        levels.push(next);
    }
    Ok(levels)
}

/// Every graph on exactly `n` vertices, one per isomorphism class, in
/// descending canonical-code order (the complete graph first).
pub fn all_graphs(n: usize) -> Result<Vec<Graph>, GraphError> {
    if n == 0 {
        return Err(GraphError::Empty);
    }
    let levels = codes_by_size(n)?;
    Ok(levels[n].iter().rev().map(|&c| graph_from_code(n, c)).collect())
}

/// Every connected graph on exactly `n` vertices, up to isomorphism.
pub fn connected_graphs(n: usize) -> Result<Vec<Graph>, GraphError> {
    Ok(all_graphs(n)?.into_iter().filter(Graph::is_connected).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn code_is_invariant_under_relabelling() {
        let p4 = Graph::path(4).unwrap();
        let relabelled = Graph::from_edges(4, [(2, 0), (0, 3), (3, 1)]).unwrap();
        assert_eq!(canonical_code(&p4), canonical_code(&relabelled));
        let star = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_ne!(canonical_code(&p4), canonical_code(&star));
    }

    #[test]
    fn round_trip_through_code() {
        let c5 = Graph::cycle(5).unwrap();
        let code = canonical_code(&c5).unwrap();
        assert_eq!(canonical_code(&graph_from_code(5, code)).unwrap(), code);
    }

    #[test]
    fn small_counts() {
        // OEIS A000088 and A001349.
        let all: Vec<usize> = (1..=6).map(|n| all_graphs(n).unwrap().len()).collect();
        assert_eq!(all, vec![1, 2, 4, 11, 34, 156]);
        let conn: Vec<usize> = (1..=6).map(|n| connected_graphs(n).unwrap().len()).collect();
        assert_eq!(conn, vec![1, 1, 2, 6, 21, 112]);
    }

    #[test]
    fn rejects_large_n() {
        assert!(matches!(all_graphs(10), Err(GraphError::TooLarge(10, _))));
    }
}
