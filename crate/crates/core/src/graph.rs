//! Undirected simple graphs with dense integer ids, plus the capped BFS
//! primitives everything else is built from.

use crate::error::{Error, Result};

/// Subset of `[0, n)` with O(1) membership test and ascending iteration.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct VertexSet {
    capacity: usize,
    words: Vec<u64>,
    len: usize,
}

impl VertexSet {
    pub fn new(capacity: usize) -> Self {
        VertexSet {
            capacity,
            words: vec![0; capacity.div_ceil(64)],
            len: 0,
        }
    }

    pub fn full(capacity: usize) -> Self {
        let mut s = Self::new(capacity);
        for v in 0..capacity {
            s.insert(v);
        }
        s
    }

    pub fn from_iter<I: IntoIterator<Item = usize>>(capacity: usize, items: I) -> Self {
        let mut s = Self::new(capacity);
        for v in items {
            s.insert(v);
        }
        s
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn contains(&self, v: usize) -> bool {
        v < self.capacity && self.words[v / 64] >> (v % 64) & 1 == 1
    }

    /// Returns true if the vertex was newly inserted.
    pub fn insert(&mut self, v: usize) -> bool {
        assert!(v < self.capacity, "vertex {v} out of range {}", self.capacity);
        let w = &mut self.words[v / 64];
        let bit = 1u64 << (v % 64);
        if *w & bit == 0 {
            *w |= bit;
            self.len += 1;
            true
        } else {
            false
        }
    }

    pub fn remove(&mut self, v: usize) -> bool {
        if !self.contains(v) {
            return false;
        }
        self.words[v / 64] &= !(1u64 << (v % 64));
        self.len -= 1;
        true
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(i * 64 + b)
                }
            })
        })
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn union_with(&mut self, other: &VertexSet) {
        assert_eq!(self.capacity, other.capacity);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
        self.len = self.words.iter().map(|w| w.count_ones() as usize).sum();
    }

    pub fn is_subset_of(&self, other: &VertexSet) -> bool {
        assert_eq!(self.capacity, other.capacity);
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint_from(&self, other: &VertexSet) -> bool {
        assert_eq!(self.capacity, other.capacity);
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        assert_eq!(self.capacity, other.capacity);
        let words: Vec<u64> = self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect();
        let len = words.iter().map(|w| w.count_ones() as usize).sum();
        VertexSet { capacity: self.capacity, words, len }
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        assert_eq!(self.capacity, other.capacity);
        let words: Vec<u64> = self.words.iter().zip(&other.words).map(|(a, b)| a & !b).collect();
        let len = words.iter().map(|w| w.count_ones() as usize).sum();
        VertexSet { capacity: self.capacity, words, len }
    }

    /// Complement within `[0, capacity)`.
    pub fn complement(&self) -> VertexSet {
        let full = VertexSet::full(self.capacity);
        full.difference(self)
    }
}

/// Capped single-source shortest distances, with BFS parents for path
/// reconstruction.
#[derive(Clone, Debug)]
pub struct DistanceMap {
    pub source: usize,
    pub cap: usize,
    dist: Vec<Option<usize>>,
    parent: Vec<Option<usize>>,
}

impl DistanceMap {
    pub fn get(&self, v: usize) -> Option<usize> {
        self.dist.get(v).copied().flatten()
    }

    /// Vertices reached, ascending by id, with their distances.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.dist
            .iter()
            .enumerate()
            .filter_map(|(v, d)| d.map(|d| (v, d)))
    }

    pub fn reached(&self) -> VertexSet {
        VertexSet::from_iter(self.dist.len(), self.iter().map(|(v, _)| v))
    }

    /// Path from the source to `v` (inclusive), following BFS parents.
    pub fn path_to(&self, v: usize) -> Option<Vec<usize>> {
        self.get(v)?;
        let mut path = vec![v];
        let mut cur = v;
        while let Some(p) = self.parent[cur] {
            path.push(p);
            cur = p;
        }
        path.reverse();
        Some(path)
    }
}

/// Undirected simple graph. Neighbor lists are kept sorted so every
/// iteration order in the library is deterministic.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Graph {
    n: usize,
    adj: Vec<Vec<usize>>,
    labels: Vec<Option<String>>,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Graph {
            n,
            adj: vec![Vec::new(); n],
            labels: vec![None; n],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.adj.iter().map(|a| a.len()).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(|a| a.len()).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn label(&self, v: usize) -> Option<&str> {
        self.labels[v].as_deref()
    }

    pub fn set_label(&mut self, v: usize, label: &str) {
        self.labels[v] = Some(label.to_string());
    }

    pub fn add_vertex(&mut self) -> usize {
        self.n += 1;
        self.adj.push(Vec::new());
        self.labels.push(None);
        self.n - 1
    }

    /// Inserts the edge `{u, v}`; duplicates are ignored, self-loops panic
    /// (they can only arise from a library bug, parse paths check first).
    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u != v, "self-loop at {u}");
        assert!(u < self.n && v < self.n, "edge ({u},{v}) out of range {}", self.n);
        if let Err(pos) = self.adj[u].binary_search(&v) {
            self.adj[u].insert(pos, v);
            let pos = self.adj[v].binary_search(&u).unwrap_err();
            self.adj[v].insert(pos, u);
        }
    }

    /// Sorted edge list, each edge once as `(min, max)`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut es = Vec::with_capacity(self.m());
        for u in 0..self.n {
            for &v in &self.adj[u] {
                if u < v {
                    es.push((u, v));
                }
            }
        }
        es
    }

    /// Parses the edge-list format: optional header `p <n>`, lines `u v`,
    /// `#` comments, 0-based ids.
    pub fn load_edge_list(text: &str) -> Result<Graph> {
        let mut header: Option<usize> = None;
        let mut edges: Vec<(usize, usize)> = Vec::new();
        let mut max_id: Option<usize> = None;
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = match raw.find('#') {
                Some(pos) => &raw[..pos],
                None => raw,
            }
            .trim();
            if line.is_empty() {
                continue;
            }
            let mut parts = line.split_whitespace();
            let first = parts.next().unwrap();
            if first == "p" {
                let n = parts
                    .next()
                    .and_then(|t| t.parse::<usize>().ok())
                    .ok_or_else(|| Error::Parse { line: line_no, text: raw.to_string() })?;
                if parts.next().is_some() {
                    return Err(Error::Parse { line: line_no, text: raw.to_string() });
                }
                header = Some(n);
                continue;
            }
            let u = first
                .parse::<usize>()
                .map_err(|_| Error::Parse { line: line_no, text: raw.to_string() })?;
            let v = parts
                .next()
                .and_then(|t| t.parse::<usize>().ok())
                .ok_or_else(|| Error::Parse { line: line_no, text: raw.to_string() })?;
            if parts.next().is_some() {
                return Err(Error::Parse { line: line_no, text: raw.to_string() });
            }
            if u == v {
                return Err(Error::SelfLoop { line: line_no, v: u });
            }
            max_id = Some(max_id.map_or(u.max(v), |m| m.max(u).max(v)));
            edges.push((u, v));
        }
        let n = match (header, max_id) {
            (Some(h), Some(m)) => h.max(m + 1),
            (Some(h), None) => h,
            (None, Some(m)) => m + 1,
            (None, None) => 0,
        };
        let mut g = Graph::new(n);
        for (u, v) in edges {
            g.add_edge(u, v);
        }
        Ok(g)
    }

    /// Canonical serialization: header line then sorted `min max` edges.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("p {}\n", self.n);
        for (u, v) in self.edges() {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }

    /// BFS truncated at hop distance `cap`.
    pub fn bfs_within(&self, source: usize, cap: usize) -> Result<DistanceMap> {
        if source >= self.n {
            return Err(Error::IdRange { v: source, n: self.n });
        }
        Ok(self.bfs_impl(source, cap, None))
    }

    /// BFS whose *internal* vertices avoid `forbidden`: forbidden vertices
    /// are recorded at their distance but never expanded.
    pub fn bfs_within_avoiding(
        &self,
        source: usize,
        cap: usize,
        forbidden: &VertexSet,
    ) -> Result<DistanceMap> {
        if source >= self.n {
            return Err(Error::IdRange { v: source, n: self.n });
        }
        if forbidden.contains(source) {
            return Err(Error::ForbiddenSource { v: source });
        }
        Ok(self.bfs_impl(source, cap, Some(forbidden)))
    }

    fn bfs_impl(&self, source: usize, cap: usize, forbidden: Option<&VertexSet>) -> DistanceMap {
        let mut dist = vec![None; self.n];
        let mut parent = vec![None; self.n];
        dist[source] = Some(0);
        let mut queue = std::collections::VecDeque::new();
        queue.push_back(source);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap();
            if du == cap {
                continue;
            }
            if u != source {
                if let Some(f) = forbidden {
                    if f.contains(u) {
                        continue; // recorded but not expanded
                    }
                }
            }
            for &w in &self.adj[u] {
                if dist[w].is_none() {
                    dist[w] = Some(du + 1);
                    parent[w] = Some(u);
                    queue.push_back(w);
                }
            }
        }
        DistanceMap { source, cap, dist, parent }
    }

    /// Distance between two vertices if it is at most `cap`.
    pub fn dist(&self, u: usize, v: usize, cap: usize) -> Option<usize> {
        self.bfs_within(u, cap).ok()?.get(v)
    }

    /// Closed ball `N^r[v]` as a vertex set.
    pub fn ball(&self, v: usize, r: usize) -> VertexSet {
        self.bfs_within(v, r).expect("valid vertex").reached()
    }

    /// Induced subgraph on `keep` with dense relabeling.
    pub fn induced_subgraph(&self, keep: &VertexSet) -> (Graph, IdMap) {
        let new_to_old: Vec<usize> = keep.iter().collect();
        let mut old_to_new = vec![None; self.n];
        for (new, &old) in new_to_old.iter().enumerate() {
            old_to_new[old] = Some(new);
        }
        let mut g = Graph::new(new_to_old.len());
        for (new, &old) in new_to_old.iter().enumerate() {
            g.labels[new] = self.labels[old].clone();
            for &w in &self.adj[old] {
                if let Some(nw) = old_to_new[w] {
                    if new < nw {
                        g.add_edge(new, nw);
                    }
                }
            }
        }
        (g, IdMap { old_to_new, new_to_old })
    }

    /// Appends a path of `length` new vertices starting at `from`; returns
    /// the far endpoint.
    pub fn attach_path(&mut self, from: usize, length: usize) -> usize {
        assert!(length >= 1);
        let mut prev = from;
        let mut end = from;
        for _ in 0..length {
            end = self.add_vertex();
            self.add_edge(prev, end);
            prev = end;
        }
        end
    }

    /// Connects two existing vertices by a path of the given length
    /// (length - 1 fresh internal vertices; length 1 is a plain edge).
    pub fn connect_by_path(&mut self, a: usize, b: usize, length: usize) {
        assert!(length >= 1);
        if length == 1 {
            self.add_edge(a, b);
            return;
        }
        let mid_end = self.attach_path(a, length - 1);
        self.add_edge(mid_end, b);
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        self.bfs_within(0, self.n).unwrap().iter().count() == self.n
    }
}

/// Relabeling produced by `induced_subgraph`.
#[derive(Clone, Debug)]
pub struct IdMap {
    pub old_to_new: Vec<Option<usize>>,
    pub new_to_old: Vec<usize>,
}

impl IdMap {
    pub fn to_new(&self, old: usize) -> Option<usize> {
        self.old_to_new[old]
    }

    pub fn to_old(&self, new: usize) -> usize {
        self.new_to_old[new]
    }

    /// Maps a set of old ids into the new id space, dropping absentees.
    pub fn set_to_new(&self, s: &VertexSet, new_capacity: usize) -> VertexSet {
        VertexSet::from_iter(new_capacity, s.iter().filter_map(|v| self.old_to_new[v]))
    }

    /// Maps a set of new ids back into the old id space.
    pub fn set_to_old(&self, s: &VertexSet, old_capacity: usize) -> VertexSet {
        VertexSet::from_iter(old_capacity, s.iter().map(|v| self.new_to_old[v]))
    }
}
