//! Weighted graphs backed by sorted adjacency lists, plus the edge-list text format.
//!
//! Every list is sorted strictly ascending by neighbour id, so edge queries are a
//! binary search over one list. Undirected graphs store each edge in both lists
//! with the same weight. Directed graphs additionally keep an orientation-free
//! "walk" view (sorted union of in- and out-neighbours) used for neighbourhood
//! exploration, where anchors may be reachable only against edge direction.

use std::collections::{BTreeMap, HashSet, VecDeque};
use std::fmt::Write as _;

use crate::error::{Error, Result};

pub type VertexId = usize;

#[derive(Debug, Clone, PartialEq)]
pub struct Graph {
    n: usize,
    directed: bool,
    adj: Vec<Vec<(VertexId, f64)>>,
    walk: Option<Vec<Vec<VertexId>>>,
}

impl Graph {
    pub fn empty(n: usize, directed: bool) -> Self {
        let walk = directed.then(|| vec![Vec::new(); n]);
        Graph { n, directed, adj: vec![Vec::new(); n], walk }
    }

    /// Builds a graph from `(src, dst, weight)` triples. Undirected edges are given
    /// once and mirrored; listing both orientations is a duplicate.
    pub fn from_edges<I>(n: usize, directed: bool, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (VertexId, VertexId, f64)>,
    {
        let mut adj: Vec<Vec<(VertexId, f64)>> = vec![Vec::new(); n];
        for (u, v, w) in edges {
            check_edge(n, u, v, w)?;
            adj[u].push((v, w));
            if !directed {
                adj[v].push((u, w));
            }
        }
        for (u, list) in adj.iter_mut().enumerate() {
            list.sort_by_key(|&(v, _)| v);
            if let Some(pair) = list.windows(2).find(|p| p[0].0 == p[1].0) {
                return Err(Error::arg(format!("duplicate edge ({u}, {})", pair[0].0)));
            }
        }
        Ok(Self::from_sorted(n, directed, adj))
    }

    /// `adj` must already satisfy every list invariant.
    pub(crate) fn from_sorted(n: usize, directed: bool, adj: Vec<Vec<(VertexId, f64)>>) -> Self {
        debug_assert_eq!(adj.len(), n);
        debug_assert!(adj.iter().all(|l| l.windows(2).all(|p| p[0].0 < p[1].0)));
        let walk = directed.then(|| {
            let mut walk: Vec<Vec<VertexId>> = adj.iter().map(|l| l.iter().map(|&(v, _)| v).collect()).collect();
            for (u, list) in adj.iter().enumerate() {
                for &(v, _) in list {
                    walk[v].push(u);
                }
            }
            for list in &mut walk {
                list.sort_unstable();
                list.dedup();
            }
            walk
        });
        Graph { n, directed, adj, walk }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    /// Out-list of `v`, sorted by neighbour id.
    pub fn neighbors(&self, v: VertexId) -> &[(VertexId, f64)] {
        &self.adj[v]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adj[v].len()
    }

    /// Weighted degree (sum of out-weights).
    pub fn strength(&self, v: VertexId) -> f64 {
        self.adj[v].iter().map(|&(_, w)| w).sum()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Number of edges; undirected edges count once.
    pub fn edge_count(&self) -> usize {
        let total: usize = self.adj.iter().map(Vec::len).sum();
        if self.directed {
            total
        } else {
            total / 2
        }
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> Result<Option<f64>> {
        if u >= self.n || v >= self.n {
            return Err(Error::arg(format!("vertex out of range: ({u}, {v}) with n = {}", self.n)));
        }
        Ok(self.weight(u, v))
    }

    /// Unchecked variant of [`Graph::has_edge`] for hot loops. Panics on out-of-range `u`.
    #[inline]
    pub fn weight(&self, u: VertexId, v: VertexId) -> Option<f64> {
        let list = &self.adj[u];
        list.binary_search_by_key(&v, |&(x, _)| x).ok().map(|i| list[i].1)
    }

    #[inline]
    pub fn contains_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.adj[u].binary_search_by_key(&v, |&(x, _)| x).is_ok()
    }

    /// Number of neighbours visible to neighbourhood walks (both directions for directed graphs).
    #[inline]
    pub fn walk_degree(&self, v: VertexId) -> usize {
        match &self.walk {
            Some(walk) => walk[v].len(),
            None => self.adj[v].len(),
        }
    }

    #[inline]
    pub fn walk_neighbor(&self, v: VertexId, i: usize) -> Option<VertexId> {
        match &self.walk {
            Some(walk) => walk[v].get(i).copied(),
            None => self.adj[v].get(i).map(|&(x, _)| x),
        }
    }

    pub fn max_walk_degree(&self) -> usize {
        (0..self.n).map(|v| self.walk_degree(v)).max().unwrap_or(0)
    }

    /// Edges as `(src, dst, weight)` sorted by `(src, dst)`; undirected edges once with `src < dst`.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId, f64)> + '_ {
        self.adj.iter().enumerate().flat_map(move |(u, list)| {
            list.iter()
                .filter(move |&&(v, _)| self.directed || u < v)
                .map(move |&(v, w)| (u, v, w))
        })
    }

    /// Same edge set with new weights. `f` is called once per edge as listed by [`Graph::edges`];
    /// a non-positive result drops the edge.
    pub fn reweighted<F>(&self, mut f: F) -> Graph
    where
        F: FnMut(VertexId, VertexId, f64) -> f64,
    {
        let mut adj: Vec<Vec<(VertexId, f64)>> = vec![Vec::new(); self.n];
        for (u, v, w) in self.edges() {
            let nw = f(u, v, w);
            if nw > 0.0 {
                adj[u].push((v, nw));
                if !self.directed {
                    adj[v].push((u, nw));
                }
            }
        }
        for list in &mut adj {
            list.sort_by_key(|&(v, _)| v);
        }
        Graph::from_sorted(self.n, self.directed, adj)
    }

    /// Subgraph induced by `keep` (any order), relabelled to `0..keep.len()` in that order.
    pub fn induced(&self, keep: &[VertexId]) -> Graph {
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in keep.iter().enumerate() {
            index[v] = i;
        }
        let adj = keep
            .iter()
            .map(|&v| {
                let mut list: Vec<(VertexId, f64)> = self.adj[v]
                    .iter()
                    .filter(|&&(x, _)| index[x] != usize::MAX)
                    .map(|&(x, w)| (index[x], w))
                    .collect();
                list.sort_by_key(|&(x, _)| x);
                list
            })
            .collect();
        Graph::from_sorted(keep.len(), self.directed, adj)
    }

    /// Weakly connected components, each sorted; components ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<VertexId>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for i in 0..self.walk_degree(u) {
                    let v = self.walk_neighbor(u, i).unwrap();
                    if !seen[v] {
                        seen[v] = true;
                        comp.push(v);
                        queue.push_back(v);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.components().len() == 1
    }

    /// Vertices within `depth` hops of `source` (ignoring direction), excluding `source`.
    pub fn ball(&self, source: VertexId, depth: usize) -> Vec<VertexId> {
        let mut dist = BTreeMap::new();
        dist.insert(source, 0usize);
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            let du = dist[&u];
            if du == depth {
                continue;
            }
            for i in 0..self.walk_degree(u) {
                let v = self.walk_neighbor(u, i).unwrap();
                if let std::collections::btree_map::Entry::Vacant(e) = dist.entry(v) {
                    e.insert(du + 1);
                    queue.push_back(v);
                }
            }
        }
        dist.into_keys().filter(|&v| v != source).collect()
    }
}

fn check_edge(n: usize, u: VertexId, v: VertexId, w: f64) -> Result<()> {
    if u >= n || v >= n {
        return Err(Error::arg(format!("edge ({u}, {v}) out of range for n = {n}")));
    }
    if u == v {
        return Err(Error::arg(format!("self-loop at {u}")));
    }
    if !(w > 0.0) || !w.is_finite() {
        return Err(Error::arg(format!("edge ({u}, {v}) has non-positive or non-finite weight {w}")));
    }
    Ok(())
}

/// A sorted set of distinct vertex ids.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(Vec<VertexId>);

impl VertexSet {
    pub fn new(mut members: Vec<VertexId>, n: usize) -> Result<Self> {
        members.sort_unstable();
        if members.windows(2).any(|p| p[0] == p[1]) {
            return Err(Error::arg("vertex set has repeated ids"));
        }
        if members.last().is_some_and(|&v| v >= n) {
            return Err(Error::arg(format!("vertex set member out of range for n = {n}")));
        }
        Ok(VertexSet(members))
    }

    pub fn as_slice(&self) -> &[VertexId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn complement(&self, n: usize) -> VertexSet {
        VertexSet((0..n).filter(|v| !self.contains(*v)).collect())
    }

    pub fn indicator(&self, n: usize) -> Vec<bool> {
        let mut mask = vec![false; n];
        for &v in &self.0 {
            mask[v] = true;
        }
        mask
    }
}

/// A graph together with the original (file) label of every dense vertex id.
#[derive(Debug, Clone, PartialEq)]
pub struct LabeledGraph {
    pub graph: Graph,
    pub labels: Vec<u64>,
}

impl LabeledGraph {
    pub fn identity(graph: Graph) -> Self {
        let labels = (0..graph.n() as u64).collect();
        LabeledGraph { graph, labels }
    }

    pub fn is_identity(&self) -> bool {
        self.labels.iter().enumerate().all(|(i, &l)| l == i as u64)
    }
}

/// Parses the edge-list format:
///
/// ```text
/// # comment
/// u 4            (or `d 4` for a directed graph)
/// e 0 1
/// e 1 2 2.5
/// ```
///
/// Labels that do not fit in `0..n` are remapped to dense ids in ascending label
/// order. A `# label <id> <original>` comment pins the mapping explicitly, which is
/// how emitted files carry it.
pub fn parse_graph(text: &str) -> Result<LabeledGraph> {
    let mut header: Option<(usize, bool)> = None;
    let mut raw: Vec<(usize, u64, u64, f64)> = Vec::new();
    let mut pinned: BTreeMap<u64, u64> = BTreeMap::new();

    for (idx, line) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(comment) = line.strip_prefix('#') {
            let mut tok = comment.split_whitespace();
            if tok.next() == Some("label") {
                let id = parse_u64(tok.next(), lineno)?;
                let label = parse_u64(tok.next(), lineno)?;
                if pinned.insert(id, label).is_some() {
                    return Err(Error::parse(lineno, format!("label for id {id} given twice")));
                }
            }
            continue;
        }
        let mut tok = line.split_whitespace();
        match tok.next() {
            Some(kind @ ("u" | "d")) => {
                if header.is_some() {
                    return Err(Error::parse(lineno, "second header line"));
                }
                let n = parse_u64(tok.next(), lineno)? as usize;
                if tok.next().is_some() {
                    return Err(Error::parse(lineno, "trailing tokens after header"));
                }
                header = Some((n, kind == "d"));
            }
            Some("e") => {
                if header.is_none() {
                    return Err(Error::parse(lineno, "edge before header"));
                }
                let src = parse_u64(tok.next(), lineno)?;
                let dst = parse_u64(tok.next(), lineno)?;
                let w = match tok.next() {
                    None => 1.0,
                    Some(t) => t
                        .parse::<f64>()
                        .map_err(|_| Error::parse(lineno, format!("bad weight `{t}`")))?,
                };
                if tok.next().is_some() {
                    return Err(Error::parse(lineno, "trailing tokens after edge"));
                }
                if w < 0.0 {
                    return Err(Error::parse(lineno, format!("negative weight {w}")));
                }
                if !(w > 0.0) || !w.is_finite() {
                    return Err(Error::parse(lineno, format!("weight must be positive and finite, got {w}")));
                }
                if src == dst {
                    return Err(Error::parse(lineno, format!("self-loop at {src}")));
                }
                raw.push((lineno, src, dst, w));
            }
            Some(other) => return Err(Error::parse(lineno, format!("unknown line kind `{other}`"))),
            None => unreachable!(),
        }
    }

    let (n, directed) = header.ok_or_else(|| Error::parse(0, "missing `u <n>` or `d <n>` header"))?;
    let labels = resolve_labels(n, &raw, &pinned)?;
    let index: std::collections::HashMap<u64, usize> = if pinned.is_empty() {
        labels.iter().enumerate().map(|(i, &l)| (l, i)).collect()
    } else {
        (0..n).map(|i| (i as u64, i)).collect()
    };

    let mut adj: Vec<Vec<(VertexId, f64)>> = vec![Vec::new(); n];
    let mut seen: HashSet<(usize, usize)> = HashSet::with_capacity(raw.len());
    for &(lineno, src, dst, w) in &raw {
        let (u, v) = (index[&src], index[&dst]);
        let key = if directed { (u, v) } else { (u.min(v), u.max(v)) };
        if !seen.insert(key) {
            return Err(Error::parse(lineno, format!("duplicate edge ({src}, {dst})")));
        }
        adj[u].push((v, w));
        if !directed {
            adj[v].push((u, w));
        }
    }
    for list in &mut adj {
        list.sort_by_key(|&(v, _)| v);
    }
    Ok(LabeledGraph { graph: Graph::from_sorted(n, directed, adj), labels })
}

fn resolve_labels(n: usize, raw: &[(usize, u64, u64, f64)], pinned: &BTreeMap<u64, u64>) -> Result<Vec<u64>> {
    if !pinned.is_empty() {
        let mut labels: Vec<u64> = (0..n as u64).collect();
        for (&id, &label) in pinned {
            if id as usize >= n {
                return Err(Error::parse(0, format!("label comment for id {id} out of range")));
            }
            labels[id as usize] = label;
        }
        if raw.iter().any(|&(_, s, d, _)| s as usize >= n || d as usize >= n) {
            return Err(Error::parse(0, "edge id out of range in a file with explicit labels"));
        }
        return Ok(labels);
    }
    if raw.iter().all(|&(_, s, d, _)| (s as usize) < n && (d as usize) < n) {
        return Ok((0..n as u64).collect());
    }
    let distinct: std::collections::BTreeSet<u64> = raw.iter().flat_map(|&(_, s, d, _)| [s, d]).collect();
    if distinct.len() > n {
        return Err(Error::parse(0, format!("{} distinct labels exceed declared n = {n}", distinct.len())));
    }
    let mut labels: Vec<u64> = distinct.into_iter().collect();
    let mut next = labels.last().map_or(0, |&l| l + 1);
    while labels.len() < n {
        labels.push(next);
        next += 1;
    }
    Ok(labels)
}

fn parse_u64(tok: Option<&str>, lineno: usize) -> Result<u64> {
    let t = tok.ok_or_else(|| Error::parse(lineno, "missing field"))?;
    t.parse::<u64>().map_err(|_| Error::parse(lineno, format!("expected a non-negative integer, got `{t}`")))
}

/// Emits `g` in the edge-list format with dense ids. Unit weights are omitted.
pub fn emit_graph(g: &Graph) -> String {
    let mut out = String::new();
    let kind = if g.is_directed() { 'd' } else { 'u' };
    writeln!(out, "{kind} {}", g.n()).unwrap();
    for (u, v, w) in g.edges() {
        if w == 1.0 {
            writeln!(out, "e {u} {v}").unwrap();
        } else {
            writeln!(out, "e {u} {v} {w}").unwrap();
        }
    }
    out
}

/// Like [`emit_graph`], with `# label` lines when the labelling is not the identity.
pub fn emit_labeled(lg: &LabeledGraph) -> String {
    let mut out = String::new();
    if !lg.is_identity() {
        for (i, l) in lg.labels.iter().enumerate() {
            writeln!(out, "# label {i} {l}").unwrap();
        }
    }
    out.push_str(&emit_graph(&lg.graph));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k3() -> Graph {
        Graph::from_edges(3, false, [(0, 1, 1.0), (1, 2, 1.0), (0, 2, 1.0)]).unwrap()
    }

    fn star(n: usize) -> Graph {
        Graph::from_edges(n, false, (1..n).map(|v| (0, v, 1.0))).unwrap()
    }

    #[test]
    fn max_degree_examples() {
        assert_eq!(Graph::empty(3, false).max_degree(), 0);
        assert_eq!(k3().max_degree(), 2);
        assert_eq!(star(5).max_degree(), 4);
    }

    #[test]
    fn has_edge_examples() {
        let g = k3();
        assert_eq!(g.has_edge(0, 1).unwrap(), Some(1.0));
        assert_eq!(g.has_edge(0, 0).unwrap(), None);
        assert_eq!(star(5).has_edge(1, 2).unwrap(), None);
        assert!(matches!(g.has_edge(0, 3), Err(Error::Argument(_))));
    }

    #[test]
    fn parse_path_graph() {
        let lg = parse_graph("u 3\ne 0 1\ne 1 2").unwrap();
        let g = &lg.graph;
        assert_eq!(g.n(), 3);
        assert_eq!(g.neighbors(1), &[(0, 1.0), (2, 1.0)]);
        assert_eq!(g.edge_count(), 2);
        assert!(lg.is_identity());
    }

    #[test]
    fn parse_weight_is_mirrored() {
        let g = parse_graph("u 2\ne 0 1 2.5\n").unwrap().graph;
        assert_eq!(g.weight(0, 1), Some(2.5));
        assert_eq!(g.weight(1, 0), Some(2.5));
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let cases = [
            ("u 3\ne 0 1\ne 0 1\n", 3),
            ("u 3\ne 0 1\ne 1 0\n", 3),
            ("u 3\n# c\ne 0 1 -1\n", 3),
            ("u 3\ne 2 2\n", 2),
            ("u 3\ne 0 x\n", 2),
            ("e 0 1\nu 3\n", 1),
            ("u 3\nq 1\n", 2),
        ];
        for (text, line) in cases {
            match parse_graph(text) {
                Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("expected parse error for {text:?}, got {other:?}"),
            }
        }
    }

    #[test]
    fn directed_duplicates_are_per_orientation() {
        let g = parse_graph("d 2\ne 0 1\ne 1 0\n").unwrap().graph;
        assert!(g.contains_edge(0, 1) && g.contains_edge(1, 0));
        assert_eq!(g.edge_count(), 2);
    }

    #[test]
    fn sparse_labels_are_remapped() {
        let lg = parse_graph("u 3\ne 10 20\ne 20 7\n").unwrap();
        assert_eq!(lg.labels, vec![7, 10, 20]);
        assert!(lg.graph.contains_edge(1, 2));
        assert!(lg.graph.contains_edge(0, 2));
        let again = parse_graph(&emit_labeled(&lg)).unwrap();
        assert_eq!(again, lg);
    }

    #[test]
    fn emit_is_sorted_and_undirected_once() {
        let g = Graph::from_edges(4, false, [(3, 1, 1.0), (2, 0, 0.5), (0, 1, 1.0)]).unwrap();
        assert_eq!(emit_graph(&g), "u 4\ne 0 1\ne 0 2 0.5\ne 1 3\n");
    }

    #[test]
    fn directed_walk_view_sees_both_orientations() {
        let g = Graph::from_edges(3, true, [(0, 1, 1.0), (2, 1, 1.0)]).unwrap();
        assert_eq!(g.walk_degree(1), 2);
        assert_eq!(g.walk_neighbor(1, 0), Some(0));
        assert_eq!(g.walk_neighbor(1, 1), Some(2));
        assert_eq!(g.degree(1), 0);
        assert!(g.is_connected());
    }

    #[test]
    fn ball_respects_depth() {
        let g = Graph::from_edges(5, false, [(0, 1, 1.0), (1, 2, 1.0), (2, 3, 1.0), (3, 4, 1.0)]).unwrap();
        assert_eq!(g.ball(0, 2), vec![1, 2]);
        assert_eq!(g.ball(2, 1), vec![1, 3]);
    }

    #[test]
    fn vertex_set_rules() {
        assert!(VertexSet::new(vec![1, 1], 3).is_err());
        assert!(VertexSet::new(vec![3], 3).is_err());
        let w = VertexSet::new(vec![2, 0], 4).unwrap();
        assert_eq!(w.as_slice(), &[0, 2]);
        assert_eq!(w.complement(4).as_slice(), &[1, 3]);
    }
}
