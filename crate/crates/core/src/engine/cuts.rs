use std::collections::BTreeMap;

use super::MotifInstance;
use crate::graph::Graph;

/// Instances with at least one anchor inside `inside` and one outside.
pub fn motif_cut<'a, I>(instances: I, inside: &[bool]) -> usize
where
    I: IntoIterator<Item = &'a MotifInstance>,
{
    instances
        .into_iter()
        .filter(|inst| {
            let a = inst.anchors();
            a.iter().any(|&v| inside[v]) && a.iter().any(|&v| !inside[v])
        })
        .count()
}

/// Total number of anchor positions falling inside `inside`.
pub fn motif_volume<'a, I>(instances: I, inside: &[bool]) -> usize
where
    I: IntoIterator<Item = &'a MotifInstance>,
{
    instances.into_iter().map(|inst| inst.anchors().iter().filter(|&&v| inside[v]).count()).sum()
}

pub fn cut_weight(g: &Graph, inside: &[bool]) -> f64 {
    g.edges().filter(|&(u, v, _)| inside[u] != inside[v]).map(|(_, _, w)| w).sum()
}

pub fn volume(g: &Graph, inside: &[bool]) -> f64 {
    (0..g.n()).filter(|&v| inside[v]).map(|v| g.strength(v)).sum()
}

#[derive(Default)]
struct PartTotals {
    cut: f64,
    vol: f64,
    size: usize,
}

fn ratio(cut: f64, denom: f64) -> f64 {
    if cut == 0.0 {
        return 0.0;
    }
    assert!(denom > 0.0, "positive cut with empty denominator");
    cut / denom
}

fn graph_parts(g: &Graph, labels: &[usize]) -> BTreeMap<usize, PartTotals> {
    assert_eq!(labels.len(), g.n());
    let mut parts: BTreeMap<usize, PartTotals> = BTreeMap::new();
    for (v, &l) in labels.iter().enumerate() {
        let p = parts.entry(l).or_default();
        p.size += 1;
        p.vol += g.strength(v);
    }
    for (u, v, w) in g.edges() {
        if labels[u] != labels[v] {
            parts.get_mut(&labels[u]).unwrap().cut += w;
            parts.get_mut(&labels[v]).unwrap().cut += w;
        }
    }
    parts
}

/// Sum over parts of cut/volume, each term 0 when its cut is 0.
pub fn conductance(g: &Graph, labels: &[usize]) -> f64 {
    graph_parts(g, labels).values().map(|p| ratio(p.cut, p.vol)).sum()
}

/// Sum over parts of cut/size.
pub fn ratio_cut(g: &Graph, labels: &[usize]) -> f64 {
    graph_parts(g, labels).values().map(|p| ratio(p.cut, p.size as f64)).sum()
}

fn motif_parts<'a, I>(instances: I, labels: &[usize]) -> BTreeMap<usize, PartTotals>
where
    I: IntoIterator<Item = &'a MotifInstance>,
{
    let mut parts: BTreeMap<usize, PartTotals> = BTreeMap::new();
    for &l in labels {
        parts.entry(l).or_default().size += 1;
    }
    let mut seen: Vec<usize> = Vec::new();
    for inst in instances {
        seen.clear();
        for &v in inst.anchors() {
            parts.get_mut(&labels[v]).unwrap().vol += 1.0;
            seen.push(labels[v]);
        }
        seen.sort_unstable();
        seen.dedup();
        if seen.len() > 1 {
            for l in &seen {
                parts.get_mut(l).unwrap().cut += 1.0;
            }
        }
    }
    parts
}

pub fn motif_conductance<'a, I>(instances: I, labels: &[usize]) -> f64
where
    I: IntoIterator<Item = &'a MotifInstance>,
{
    motif_parts(instances, labels).values().map(|p| ratio(p.cut, p.vol)).sum()
}

pub fn motif_ratio_cut<'a, I>(instances: I, labels: &[usize]) -> f64
where
    I: IntoIterator<Item = &'a MotifInstance>,
{
    motif_parts(instances, labels).values().map(|p| ratio(p.cut, p.size as f64)).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{build_motif_graph_exact, enumerate_instances};
    use crate::motif::Motif;

    fn k4() -> Graph {
        let edges = (0..4).flat_map(|u| (u + 1..4).map(move |v| (u, v, 1.0)));
        Graph::from_edges(4, false, edges).unwrap()
    }

    #[test]
    fn triangle_on_k4_single_vertex_side() {
        let m = Motif::builtin("triangle2").unwrap();
        let inst = enumerate_instances(&m, &k4());
        let w = [true, false, false, false];
        assert_eq!(motif_cut(&inst, &w), 6);
        assert_eq!(motif_volume(&inst, &w), 6);
        assert_eq!(motif_cut(&inst, &[true; 4]), 0);
        assert_eq!(motif_volume(&inst, &[true; 4]), 24);
        assert_eq!(motif_cut(&inst, &[false; 4]), 0);
        assert_eq!(motif_volume(&inst, &[false; 4]), 0);

        let mg = build_motif_graph_exact(&m, &k4());
        assert_eq!(cut_weight(mg.graph(), &w), 6.0);
        assert_eq!(volume(mg.graph(), &w), 6.0);
        let labels = [0, 1, 1, 1];
        let phi_single = cut_weight(mg.graph(), &w) / volume(mg.graph(), &w);
        assert_eq!(phi_single, 1.0);
        assert_eq!(ratio_cut(mg.graph(), &labels), 6.0 + 6.0 / 3.0);
    }

    #[test]
    fn disjoint_triangles_have_zero_cut() {
        let g = Graph::from_edges(
            6,
            false,
            [(0, 1, 1.0), (1, 2, 1.0), (0, 2, 1.0), (3, 4, 1.0), (4, 5, 1.0), (3, 5, 1.0)],
        )
        .unwrap();
        let labels = [0, 0, 0, 1, 1, 1];
        assert_eq!(conductance(&g, &labels), 0.0);
        assert_eq!(ratio_cut(&g, &labels), 0.0);
    }

    #[test]
    fn motif_and_graph_measures_agree_for_two_anchors() {
        let m = Motif::builtin("triangle2").unwrap();
        let inst = enumerate_instances(&m, &k4());
        let mg = build_motif_graph_exact(&m, &k4());
        let labels = [0, 0, 1, 1];
        assert_eq!(motif_conductance(&inst, &labels), conductance(mg.graph(), &labels));
        assert_eq!(motif_ratio_cut(&inst, &labels), ratio_cut(mg.graph(), &labels));
    }
}
