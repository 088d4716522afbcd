use std::collections::BTreeSet;

use super::{automorphisms, Motif};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedMotif {
    pub motif: Motif,
    pub weight: usize,
    /// Every anchor pair of the source motif equivalent to this representative.
    pub pairs: Vec<(usize, usize)>,
}

/// Two-anchor motifs whose weighted sum reproduces a multi-anchor motif graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoAnchorDecomposition {
    pub parts: Vec<WeightedMotif>,
}

impl TwoAnchorDecomposition {
    pub fn weight_of(&self, a: usize, b: usize) -> Option<usize> {
        let key = (a.min(b), a.max(b));
        self.parts.iter().find(|p| p.pairs.contains(&key)).map(|p| p.weight)
    }
}

pub fn two_anchor_decomposition(m: &Motif) -> Result<TwoAnchorDecomposition> {
    if m.anchors().len() < 3 {
        return Err(Error::arg("decomposition needs a motif with at least 3 anchors"));
    }
    let autos = automorphisms(m, false)?;
    let images: BTreeSet<Vec<usize>> = autos
        .iter()
        .map(|p| {
            let mut img: Vec<usize> = m.anchors().iter().map(|&a| p[a]).collect();
            img.sort_unstable();
            img
        })
        .collect();
    let weight = |a: usize, b: usize| images.iter().filter(|img| img.contains(&a) && img.contains(&b)).count();

    let anchors = m.anchors();
    let mut parts: Vec<WeightedMotif> = Vec::new();
    for (i, &a) in anchors.iter().enumerate() {
        for &b in &anchors[i + 1..] {
            let equivalent = parts.iter_mut().find(|part| {
                let (c, d) = part.pairs[0];
                autos.iter().any(|p| (p[c] == a && p[d] == b) || (p[c] == b && p[d] == a))
            });
            match equivalent {
                Some(part) => {
                    debug_assert_eq!(part.weight, weight(a, b));
                    part.pairs.push((a, b));
                }
                None => parts.push(WeightedMotif { motif: m.with_anchors(&[a, b])?, weight: weight(a, b), pairs: vec![(a, b)] }),
            }
        }
    }
    Ok(TwoAnchorDecomposition { parts })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_two_one_weights() {
        let m = Motif::new(4, false, &[(0, 2), (2, 1), (2, 3), (1, 3)], &[0, 1, 2]).unwrap();
        let dec = two_anchor_decomposition(&m).unwrap();
        let weights: Vec<usize> = dec.parts.iter().map(|p| p.weight).collect();
        assert_eq!(weights, vec![1, 2, 1]);
        assert_eq!(dec.weight_of(0, 2), Some(2));
    }

    #[test]
    fn path_with_all_anchors_has_two_classes() {
        let m = Motif::new(3, false, &[(0, 2), (2, 1)], &[0, 1, 2]).unwrap();
        let dec = two_anchor_decomposition(&m).unwrap();
        assert_eq!(dec.parts.len(), 2);
        assert_eq!(dec.parts[0].pairs, vec![(0, 1)]);
        assert_eq!(dec.parts[1].pairs, vec![(0, 2), (1, 2)]);
    }

    #[test]
    fn anchored_triangle_is_one_class() {
        let dec = two_anchor_decomposition(&Motif::builtin("triangle3").unwrap()).unwrap();
        assert_eq!(dec.parts.len(), 1);
        assert_eq!(dec.parts[0].weight, 1);
        assert_eq!(dec.parts[0].pairs.len(), 3);
    }

    #[test]
    fn two_anchors_rejected() {
        assert!(two_anchor_decomposition(&Motif::builtin("triangle2").unwrap()).is_err());
    }
}
