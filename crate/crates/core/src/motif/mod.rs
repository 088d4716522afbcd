//! Small pattern graphs with distinguished anchor vertices.

mod decompose;
mod symmetry;
mod tree;

pub use decompose::{two_anchor_decomposition, TwoAnchorDecomposition, WeightedMotif};
pub use symmetry::{anchor_distance, automorphisms, is_automorphism, symmetry_profile, SymmetryProfile, MAX_SYMMETRY_SIZE};
pub use tree::{spanning_tree, spanning_tree_split, RootedTree, TreeSplit};

use std::collections::VecDeque;
use std::fmt::Write as _;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Motif {
    s: usize,
    directed: bool,
    edges: Vec<(usize, usize)>,
    anchors: Vec<usize>,
    adj: Vec<bool>,
}

impl Motif {
    /// Validates and builds a motif. Undirected edges are normalised to `(min, max)`;
    /// edges and anchors are stored sorted.
    pub fn new(s: usize, directed: bool, edges: &[(usize, usize)], anchors: &[usize]) -> Result<Self> {
        if s < 3 {
            return Err(Error::arg(format!("a motif needs at least 3 vertices, got {s}")));
        }
        let mut adj = vec![false; s * s];
        let mut norm = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            if u >= s || v >= s {
                return Err(Error::arg(format!("motif edge ({u}, {v}) out of range for s = {s}")));
            }
            if u == v {
                return Err(Error::arg(format!("motif self-loop at {u}")));
            }
            let (u, v) = if directed { (u, v) } else { (u.min(v), u.max(v)) };
            if adj[u * s + v] {
                return Err(Error::arg(format!("duplicate motif edge ({u}, {v})")));
            }
            adj[u * s + v] = true;
            if !directed {
                adj[v * s + u] = true;
            }
            norm.push((u, v));
        }
        norm.sort_unstable();

        let mut anchors = anchors.to_vec();
        anchors.sort_unstable();
        anchors.dedup();
        if anchors.len() < 2 || anchors.len() > s {
            return Err(Error::arg(format!("need between 2 and {s} distinct anchors, got {}", anchors.len())));
        }
        if anchors.iter().any(|&a| a >= s) {
            return Err(Error::arg("anchor out of range"));
        }

        let m = Motif { s, directed, edges: norm, anchors, adj };
        if m.distances_from(0).iter().any(Option::is_none) {
            return Err(Error::arg("motif must be connected"));
        }
        Ok(m)
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn anchors(&self) -> &[usize] {
        &self.anchors
    }

    pub fn is_anchor(&self, v: usize) -> bool {
        self.anchors.binary_search(&v).is_ok()
    }

    /// Directed adjacency test (symmetric for undirected motifs).
    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u * self.s + v]
    }

    /// Neighbours ignoring direction, ascending.
    pub fn undirected_neighbors(&self, v: usize) -> Vec<usize> {
        (0..self.s).filter(|&x| x != v && (self.has_edge(v, x) || self.has_edge(x, v))).collect()
    }

    /// Same pattern with a different anchor set.
    pub fn with_anchors(&self, anchors: &[usize]) -> Result<Motif> {
        Motif::new(self.s, self.directed, &self.edges, anchors)
    }

    pub(crate) fn distances_from(&self, src: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.s];
        dist[src] = Some(0);
        let mut queue = VecDeque::from([src]);
        while let Some(u) = queue.pop_front() {
            for v in self.undirected_neighbors(u) {
                if dist[v].is_none() {
                    dist[v] = Some(dist[u].unwrap() + 1);
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    /// Resolves a built-in motif name:
    /// `triangle2`, `triangle3`, `clique<s>a<k>`, `path<l>`, and `d`-prefixed
    /// directed variants `dtriangle2` (3-cycle), `dtriangle3` (feed-forward loop),
    /// `dclique<s>a<k>` (transitive tournament), `dpath<l>` (directed path).
    pub fn builtin(name: &str) -> Result<Motif> {
        let unknown = || Error::arg(format!("unknown motif `{name}`"));
        let (directed, body) = match name.strip_prefix('d') {
            Some(rest) => (true, rest),
            None => (false, name),
        };
        match body {
            "triangle2" | "triangle3" => {
                let anchors: &[usize] = if body == "triangle2" { &[0, 1] } else { &[0, 1, 2] };
                let edges: &[(usize, usize)] = match (directed, body) {
                    (false, _) => &[(0, 1), (1, 2), (0, 2)],
                    (true, "triangle2") => &[(0, 1), (1, 2), (2, 0)],
                    (true, _) => &[(0, 1), (1, 2), (0, 2)],
                };
                Motif::new(3, directed, edges, anchors)
            }
            _ => {
                if let Some(rest) = body.strip_prefix("clique") {
                    let (s, k) = rest.split_once('a').ok_or_else(unknown)?;
                    let s: usize = s.parse().map_err(|_| unknown())?;
                    let k: usize = k.parse().map_err(|_| unknown())?;
                    let mut edges = Vec::new();
                    for u in 0..s {
                        for v in u + 1..s {
                            edges.push((u, v));
                        }
                    }
                    let anchors: Vec<usize> = (0..k).collect();
                    Motif::new(s, directed, &edges, &anchors)
                } else if let Some(rest) = body.strip_prefix("path") {
                    let l: usize = rest.parse().map_err(|_| unknown())?;
                    let edges: Vec<(usize, usize)> = (0..l).map(|i| (i, i + 1)).collect();
                    Motif::new(l + 1, directed, &edges, &[0, l])
                } else {
                    Err(unknown())
                }
            }
        }
    }
}

/// Parses the motif format:
///
/// ```text
/// m 3 u
/// a 0 1
/// e 0 1
/// e 1 2
/// e 0 2
/// ```
pub fn parse_motif(text: &str) -> Result<Motif> {
    let mut header: Option<(usize, bool)> = None;
    let mut anchors: Option<Vec<usize>> = None;
    let mut edges = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut tok = line.split_whitespace();
        let kind = tok.next().unwrap();
        let nums = |tok: std::str::SplitWhitespace<'_>| -> Result<Vec<usize>> {
            tok.map(|t| t.parse::<usize>().map_err(|_| Error::parse(lineno, format!("expected an integer, got `{t}`"))))
                .collect()
        };
        match kind {
            "m" => {
                if header.is_some() {
                    return Err(Error::parse(lineno, "second header line"));
                }
                let s = tok.next().and_then(|t| t.parse::<usize>().ok());
                let dir = tok.next();
                match (s, dir, tok.next()) {
                    (Some(s), Some("u"), None) => header = Some((s, false)),
                    (Some(s), Some("d"), None) => header = Some((s, true)),
                    _ => return Err(Error::parse(lineno, "expected `m <s> <u|d>`")),
                }
            }
            "a" => {
                if anchors.is_some() {
                    return Err(Error::parse(lineno, "anchors given twice"));
                }
                anchors = Some(nums(tok)?);
            }
            "e" => {
                let ids = nums(tok)?;
                if ids.len() != 2 {
                    return Err(Error::parse(lineno, "expected `e <u> <v>`"));
                }
                edges.push((ids[0], ids[1]));
            }
            other => return Err(Error::parse(lineno, format!("unknown line kind `{other}`"))),
        }
    }
    let (s, directed) = header.ok_or_else(|| Error::parse(0, "missing `m <s> <u|d>` header"))?;
    let anchors = anchors.ok_or_else(|| Error::parse(0, "missing anchor line"))?;
    Motif::new(s, directed, &edges, &anchors)
}

pub fn emit_motif(m: &Motif) -> String {
    let mut out = String::new();
    writeln!(out, "m {} {}", m.s, if m.directed { 'd' } else { 'u' }).unwrap();
    let anchors: Vec<String> = m.anchors.iter().map(ToString::to_string).collect();
    writeln!(out, "a {}", anchors.join(" ")).unwrap();
    for &(u, v) in &m.edges {
        writeln!(out, "e {u} {v}").unwrap();
    }
    out
}

/// Loads a motif from a built-in name or, failing that, a file path.
pub fn load_motif(spec: &str) -> Result<Motif> {
    match Motif::builtin(spec) {
        Ok(m) => Ok(m),
        Err(_) if std::path::Path::new(spec).exists() => parse_motif(&std::fs::read_to_string(spec)?),
        Err(e) => Err(e),
    }
}
