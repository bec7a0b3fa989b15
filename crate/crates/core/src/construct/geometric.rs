use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::cover::{bipartite_cover, BipartiteCover};
use crate::error::{Budget, Error, Result};
use crate::hypercore::Hypergraph;
use crate::spheregeo::{chord, SphereSample};

/// Largest `|P|^ell` that `build_h_prime` will materialize.
pub const MAX_TUPLES: usize = 250_000;

/// A vertex of `H′`: an `ell`-tuple of point indices.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GeometricVertex {
    pub tuple: Vec<usize>,
}

impl GeometricVertex {
    /// Name used for the vertex in `H′`, e.g. `"3.7"`.
    pub fn name(&self) -> String {
        let parts: Vec<String> = self.tuple.iter().map(usize::to_string).collect();
        parts.join(".")
    }
}

#[derive(Debug, Clone)]
pub struct GeometricHypergraph {
    pub graph: Hypergraph,
    /// Geometry of vertex `v` of `graph`.
    pub geometry: Vec<GeometricVertex>,
    pub cover: BipartiteCover,
}

/// Does the ordering `slots[0..r]` of tuples satisfy the distance rule,
/// `‖x^a_i − x^b_i‖ > 2 − theta` for every `i` and every `{a, b} ∈ B_i`?
pub fn ordering_satisfies(
    sample: &SphereSample,
    cover: &BipartiteCover,
    slots: &[&[usize]],
    theta: f64,
) -> bool {
    cover.graphs.iter().enumerate().all(|(i, pairs)| {
        pairs.iter().all(|&(a, b)| {
            chord(sample.point(slots[a][i]), sample.point(slots[b][i])) > 2.0 - theta
        })
    })
}

/// The hypergraph `H′` on `P^ell`: an r-set of tuples is an edge when some
/// ordering of it satisfies the distance rule.
///
/// Orderings are searched slot by slot. A candidate for slot `b` must already
/// be far from slot 0 in the first coordinate separating `b` from `0`, so
/// candidates are drawn from the far list of that coordinate.
pub fn build_h_prime(
    sample: &SphereSample,
    r: usize,
    theta: f64,
    budget: &mut Budget,
) -> Result<GeometricHypergraph> {
    if theta.is_nan() || theta <= 0.0 {
        return Err(Error::InvalidArgument(format!("theta must be positive, got {theta}")));
    }
    let cover = bipartite_cover(r)?;
    let ell = cover.ell;
    let p = sample.len();
    let total = p
        .checked_pow(ell as u32)
        .filter(|&t| t <= MAX_TUPLES)
        .ok_or_else(|| Error::BudgetExhausted {
            stage: format!("H′ has {p}^{ell} tuples, more than {MAX_TUPLES}"),
            limit: MAX_TUPLES as u64,
        })?;

    let tuples: Vec<Vec<usize>> = (0..total)
        .map(|mut x| {
            let mut t = vec![0; ell];
            for slot in t.iter_mut().rev() {
                *slot = x % p;
                x /= p;
            }
            t
        })
        .collect();
    let far: Vec<Vec<bool>> = (0..p)
        .map(|a| {
            (0..p)
                .map(|b| chord(sample.point(a), sample.point(b)) > 2.0 - theta)
                .collect()
        })
        .collect();
    // by_coord[i][q]: tuples whose i-th coordinate is q
    let mut by_coord = vec![vec![Vec::new(); p]; ell];
    for (id, t) in tuples.iter().enumerate() {
        for (i, &q) in t.iter().enumerate() {
            by_coord[i][q].push(id);
        }
    }
    let pivot: Vec<usize> = (0..r)
        .map(|b| cover.separating(0, b).next().unwrap_or(0))
        .collect();

    let mut found = BTreeSet::new();
    let mut slots = Vec::with_capacity(r);
    for u in 0..total {
        slots.push(u);
        extend(&cover, &tuples, &far, &by_coord, &pivot, &mut slots, &mut found, budget)?;
        slots.pop();
    }

    let geometry: Vec<GeometricVertex> = tuples
        .into_iter()
        .map(|tuple| GeometricVertex { tuple })
        .collect();
    let names = geometry.iter().map(GeometricVertex::name).collect();
    let graph = Hypergraph::from_indices(r, names, found)?;
    Ok(GeometricHypergraph {
        graph,
        geometry,
        cover,
    })
}

#[allow(clippy::too_many_arguments)]
fn extend(
    cover: &BipartiteCover,
    tuples: &[Vec<usize>],
    far: &[Vec<bool>],
    by_coord: &[Vec<Vec<usize>>],
    pivot: &[usize],
    slots: &mut Vec<usize>,
    found: &mut BTreeSet<Vec<usize>>,
    budget: &mut Budget,
) -> Result<()> {
    budget.tick("H′ edge search")?;
    let b = slots.len();
    if b == cover.r {
        let mut e = slots.clone();
        e.sort_unstable();
        found.insert(e);
        return Ok(());
    }
    let i0 = pivot[b];
    let anchor = tuples[slots[0]][i0];
    for q in (0..far.len()).filter(|&q| far[anchor][q]) {
        for &v in &by_coord[i0][q] {
            if slots.contains(&v) {
                continue;
            }
            let ok = slots.iter().enumerate().all(|(a, &u)| {
                cover
                    .separating(a, b)
                    .all(|i| far[tuples[u][i]][tuples[v][i]])
            });
            if ok {
                slots.push(v);
                extend(cover, tuples, far, by_coord, pivot, slots, found, budget)?;
                slots.pop();
            }
        }
    }
    Ok(())
}

/// Tuples whose coordinates are pairwise within chordal distance `√2`.
pub fn in_v0(sample: &SphereSample, tuple: &[usize]) -> bool {
    let limit = std::f64::consts::SQRT_2;
    tuple.iter().enumerate().all(|(i, &a)| {
        tuple[i + 1..]
            .iter()
            .all(|&b| chord(sample.point(a), sample.point(b)) <= limit)
    })
}

/// Induced subhypergraph on the vertices whose tuple lies in `V′₀`.
/// Returns the restricted hypergraph and the kept vertex indices of `h`.
pub fn restrict_v0(
    h: &Hypergraph,
    geometry: &[GeometricVertex],
    sample: &SphereSample,
) -> Result<(Hypergraph, Vec<usize>)> {
    if geometry.len() != h.num_vertices() {
        return Err(Error::DimensionMismatch(geometry.len(), h.num_vertices()));
    }
    if let Some(g) = geometry
        .iter()
        .find(|g| g.tuple.iter().any(|&q| q >= sample.len()))
    {
        return Err(Error::InvalidArgument(format!(
            "tuple {:?} indexes past the {} sample points",
            g.tuple,
            sample.len()
        )));
    }
    let kept: Vec<usize> = (0..h.num_vertices())
        .filter(|&v| in_v0(sample, &geometry[v].tuple))
        .collect();
    Ok((h.induced_indices(&kept), kept))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spheregeo::sample_points;

    #[test]
    fn nonpositive_theta_rejected() {
        let s = sample_points(4, 3, 1).unwrap();
        let mut b = Budget::unlimited();
        assert!(build_h_prime(&s, 3, 0.0, &mut b).is_err());
        assert!(build_h_prime(&s, 3, -1.0, &mut b).is_err());
    }

    #[test]
    fn tiny_theta_gives_no_edges() {
        let s = sample_points(6, 3, 2).unwrap();
        let h = build_h_prime(&s, 3, 1e-12, &mut Budget::unlimited()).unwrap();
        assert_eq!(h.graph.num_vertices(), 36);
        assert_eq!(h.graph.num_edges(), 0);
    }

    #[test]
    fn oversized_instance_refused() {
        let s = sample_points(600, 2, 3).unwrap();
        let err = build_h_prime(&s, 3, 0.5, &mut Budget::unlimited()).unwrap_err();
        assert!(matches!(err, Error::BudgetExhausted { .. }));
    }

    #[test]
    fn edges_have_a_valid_ordering() {
        let s = sample_points(5, 2, 4).unwrap();
        let h = build_h_prime(&s, 3, 1.2, &mut Budget::unlimited()).unwrap();
        assert!(h.graph.num_edges() > 0);
        for e in h.graph.edges() {
            let t: Vec<&[usize]> = e.iter().map(|&v| h.geometry[v].tuple.as_slice()).collect();
            let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
            assert!(perms.iter().any(|p| {
                let slots: Vec<&[usize]> = p.iter().map(|&i| t[i]).collect();
                ordering_satisfies(&s, &h.cover, &slots, 1.2)
            }));
        }
    }

    #[test]
    fn antipodal_coordinates_leave_v0() {
        let s = SphereSample {
            d: 1,
            seed: 0,
            points: vec![vec![1.0, 0.0], vec![-1.0, 0.0], vec![0.0, 1.0]],
        };
        assert!(!in_v0(&s, &[0, 1]));
        assert!(in_v0(&s, &[0, 2]));
        assert!(in_v0(&s, &[1]));
    }
}
