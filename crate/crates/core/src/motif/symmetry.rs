use std::collections::BTreeMap;

use itertools::Itertools;

use super::Motif;
use crate::error::{Error, Result};

/// Largest motif for which permutations are enumerated exhaustively.
pub const MAX_SYMMETRY_SIZE: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetryProfile {
    /// Anchor-preserving automorphisms of the motif.
    pub automorphisms: usize,
    /// For each ordered pair of distinct anchors, automorphisms fixing both.
    pub pair_automorphisms: BTreeMap<(usize, usize), usize>,
    /// Largest shortest-path distance (ignoring direction) between two anchors.
    pub anchor_distance: usize,
}

impl SymmetryProfile {
    pub fn pair(&self, a: usize, b: usize) -> Option<usize> {
        self.pair_automorphisms.get(&(a, b)).copied()
    }
}

/// True iff `perm` (motif vertex `i` maps to `perm[i]`) preserves edges and non-edges.
pub fn is_automorphism(m: &Motif, perm: &[usize]) -> bool {
    let s = m.s();
    (0..s).all(|i| (0..s).all(|j| m.has_edge(i, j) == m.has_edge(perm[i], perm[j])))
}

/// All automorphisms of the underlying pattern; with `preserve_anchors`, only those mapping
/// the anchor set onto itself.
pub fn automorphisms(m: &Motif, preserve_anchors: bool) -> Result<Vec<Vec<usize>>> {
    let s = m.s();
    if s > MAX_SYMMETRY_SIZE {
        return Err(Error::Capability(format!(
            "symmetry enumeration supports at most {MAX_SYMMETRY_SIZE} motif vertices, got {s}"
        )));
    }
    let degree: Vec<(usize, usize)> = (0..s)
        .map(|v| ((0..s).filter(|&x| m.has_edge(v, x)).count(), (0..s).filter(|&x| m.has_edge(x, v)).count()))
        .collect();
    Ok((0..s)
        .permutations(s)
        .filter(|p| (0..s).all(|i| degree[i] == degree[p[i]]))
        .filter(|p| !preserve_anchors || m.anchors().iter().all(|&a| m.is_anchor(p[a])))
        .filter(|p| is_automorphism(m, p))
        .collect())
}

pub fn anchor_distance(m: &Motif) -> usize {
    m.anchors()
        .iter()
        .map(|&a| {
            let dist = m.distances_from(a);
            m.anchors().iter().map(|&b| dist[b].unwrap()).max().unwrap()
        })
        .max()
        .unwrap()
}

pub fn symmetry_profile(m: &Motif) -> Result<SymmetryProfile> {
    let autos = automorphisms(m, true)?;
    let mut pair_automorphisms = BTreeMap::new();
    for &a in m.anchors() {
        for &b in m.anchors() {
            if a != b {
                let count = autos.iter().filter(|p| p[a] == a && p[b] == b).count();
                pair_automorphisms.insert((a, b), count);
            }
        }
    }
    Ok(SymmetryProfile { automorphisms: autos.len(), pair_automorphisms, anchor_distance: anchor_distance(m) })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_and_path() {
        let t = symmetry_profile(&Motif::builtin("triangle2").unwrap()).unwrap();
        assert_eq!(t.automorphisms, 2);
        assert_eq!(t.pair(0, 1), Some(1));
        assert_eq!(t.anchor_distance, 1);

        let p = symmetry_profile(&Motif::builtin("path2").unwrap()).unwrap();
        assert_eq!(p.automorphisms, 2);
        assert_eq!(p.pair(0, 2), Some(1));
        assert_eq!(p.anchor_distance, 2);
    }

    #[test]
    fn complete_bipartite_two_three() {
        let edges: Vec<_> = [0, 1].iter().flat_map(|&a| [2, 3, 4].map(|c| (a, c))).collect();
        let m = Motif::new(5, false, &edges, &[0, 1]).unwrap();
        assert_eq!(symmetry_profile(&m).unwrap().automorphisms, 12);
    }

    #[test]
    fn directed_cycle_has_no_anchor_swap() {
        let prof = symmetry_profile(&Motif::builtin("dtriangle2").unwrap()).unwrap();
        assert_eq!(prof.automorphisms, 1);
    }

    #[test]
    fn oversized_motif_is_a_capability_error() {
        let edges: Vec<_> = (0..11).map(|i| (i, i + 1)).collect();
        let m = Motif::new(12, false, &edges, &[0, 11]).unwrap();
        assert!(matches!(symmetry_profile(&m), Err(Error::Capability(_))));
    }
}
