use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Complete bipartite graphs `B_1..B_ell` on `[r]` from bit strings of length
/// `ell = ceil(log2 r)`: vertex `j` (0-based here) carries the binary code of
/// `j`, and `B_i` joins the vertices whose `i`-th bit (from the left) is 0 to
/// those where it is 1.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BipartiteCover {
    pub r: usize,
    pub ell: usize,
    /// `graphs[i]` lists pairs `(zero_side, one_side)` in lexicographic order.
    pub graphs: Vec<Vec<(usize, usize)>>,
}

impl BipartiteCover {
    pub fn bit(&self, vertex: usize, i: usize) -> bool {
        (vertex >> (self.ell - 1 - i)) & 1 == 1
    }

    /// Coordinates `i` with `{a, b} ∈ B_i`.
    pub fn separating(&self, a: usize, b: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.ell).filter(move |&i| self.bit(a, i) != self.bit(b, i))
    }

    pub fn covers_all_pairs(&self) -> bool {
        (0..self.r).all(|a| (a + 1..self.r).all(|b| self.separating(a, b).next().is_some()))
    }
}

pub fn ell_for(r: usize) -> usize {
    (usize::BITS - (r.max(2) - 1).leading_zeros()) as usize
}

pub fn bipartite_cover(r: usize) -> Result<BipartiteCover> {
    if r < 3 {
        return Err(Error::InvalidArgument(format!(
            "the construction needs r >= 3, got {r}"
        )));
    }
    let ell = ell_for(r);
    let mut cover = BipartiteCover {
        r,
        ell,
        graphs: Vec::with_capacity(ell),
    };
    for i in 0..ell {
        let mut pairs = Vec::new();
        for a in 0..r {
            for b in 0..r {
                if !cover.bit(a, i) && cover.bit(b, i) {
                    pairs.push((a, b));
                }
            }
        }
        cover.graphs.push(pairs);
    }
    Ok(cover)
}
