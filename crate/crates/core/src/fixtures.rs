//! Small named hypergraphs used across tests, examples and the CLI.

use crate::hypercore::Hypergraph;

/// The eight-vertex 3-graph with edges a1a2a3, a1b1c1, a2b2c2, a4b1c2, a4b2c1.
/// It is unifoliate 3-partite but not strong unifoliate.
pub fn f_star() -> Hypergraph {
    Hypergraph::new(
        3,
        ["a1", "a2", "a3", "a4", "b1", "b2", "c1", "c2"],
        [
            ["a1", "a2", "a3"],
            ["a1", "b1", "c1"],
            ["a2", "b2", "c2"],
            ["a4", "b1", "c2"],
            ["a4", "b2", "c1"],
        ],
    )
    .expect("fixture is valid")
}

/// Complete r-graph on vertices named `1..=n`.
pub fn complete(r: usize, n: usize) -> Hypergraph {
    let names: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
    Hypergraph::from_indices(r, names, subsets(n, r)).expect("fixture is valid")
}

/// A single edge on vertices `1..=r`.
pub fn single_edge(r: usize) -> Hypergraph {
    let names: Vec<String> = (1..=r).map(|i| i.to_string()).collect();
    Hypergraph::from_indices(r, names, [(0..r).collect()]).expect("fixture is valid")
}

/// All k-subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        let mut i = k;
        while i > 0 && cur[i - 1] == n - k + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return out;
        }
        cur[i - 1] += 1;
        for j in i..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}
