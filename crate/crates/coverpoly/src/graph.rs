//! Labeled simple undirected graphs with the cycle analysis the rest of
//! the crate builds on: biconnected blocks, cactus recognition, simple
//! cycle enumeration in canonical form, basic 5-cycle detection, and the
//! two-sided reachability split around a 5-cycle block.

use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::error::{Error, Result};

/// Hard cap on enumerated simple cycles. Non-cactus oracle inputs can have
/// exponentially many; enumeration aborts with a budget error past this.
pub const MAX_CYCLES: usize = 100_000;

/// A labeled simple undirected graph. Vertices are opaque string labels
/// kept in sorted order, so every traversal and tie-break below is
/// deterministic by lexicographic label order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    adj: Vec<BTreeSet<usize>>,
}

impl Graph {
    /// Builds a graph from declared vertices and edges. Labels must be
    /// distinct, endpoints declared, no loops. Duplicate edges collapse.
    pub fn new<I, S>(vertices: I, edges: &[(&str, &str)]) -> Result<Graph>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut labels: Vec<String> = vertices.into_iter().map(Into::into).collect();
        labels.sort();
        for pair in labels.windows(2) {
            if pair[0] == pair[1] {
                return Err(Error::MalformedGraph(format!(
                    "duplicate vertex label `{}`",
                    pair[0]
                )));
            }
        }
        let index: HashMap<String, usize> = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.clone(), i))
            .collect();
        let mut adj = vec![BTreeSet::new(); labels.len()];
        for (u, v) in edges {
            let &ui = index.get(*u).ok_or_else(|| {
                Error::MalformedGraph(format!("edge endpoint `{u}` not declared"))
            })?;
            let &vi = index.get(*v).ok_or_else(|| {
                Error::MalformedGraph(format!("edge endpoint `{v}` not declared"))
            })?;
            if ui == vi {
                return Err(Error::MalformedGraph(format!("loop at `{u}`")));
            }
            adj[ui].insert(vi);
            adj[vi].insert(ui);
        }
        Ok(Graph { labels, index, adj })
    }

    /// Builds a graph whose vertex set is the union of the edge endpoints.
    pub fn from_edges(edges: &[(&str, &str)]) -> Result<Graph> {
        let mut vertices = BTreeSet::new();
        for (u, v) in edges {
            vertices.insert(u.to_string());
            vertices.insert(v.to_string());
        }
        Graph::new(vertices, edges)
    }

    /// Parses the edge-list text format: one edge per line `u v`, blank
    /// lines ignored, `#` starts a comment, and `vertex u` declares an
    /// isolated vertex.
    pub fn parse(text: &str) -> Result<Graph> {
        let mut vertices: BTreeSet<String> = BTreeSet::new();
        let mut edges: Vec<(String, String)> = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = match raw.split_once('#') {
                Some((before, _)) => before.trim(),
                None => raw.trim(),
            };
            if line.is_empty() {
                continue;
            }
            let tokens: Vec<&str> = line.split_whitespace().collect();
            match tokens.as_slice() {
                ["vertex", v] => {
                    vertices.insert(v.to_string());
                }
                [u, v] => {
                    vertices.insert(u.to_string());
                    vertices.insert(v.to_string());
                    edges.push((u.to_string(), v.to_string()));
                }
                _ => {
                    return Err(Error::Parse(format!(
                        "line {}: expected `u v` or `vertex u`, got `{}`",
                        lineno + 1,
                        raw.trim()
                    )));
                }
            }
        }
        let edge_refs: Vec<(&str, &str)> = edges
            .iter()
            .map(|(u, v)| (u.as_str(), v.as_str()))
            .collect();
        Graph::new(vertices, &edge_refs)
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|n| n.len()).sum::<usize>() / 2
    }

    /// Vertex labels in sorted order.
    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn has_vertex(&self, v: &str) -> bool {
        self.index.contains_key(v)
    }

    pub fn has_edge(&self, u: &str, v: &str) -> bool {
        match (self.index.get(u), self.index.get(v)) {
            (Some(&ui), Some(&vi)) => self.adj[ui].contains(&vi),
            _ => false,
        }
    }

    pub fn degree(&self, v: &str) -> Option<usize> {
        self.index.get(v).map(|&i| self.adj[i].len())
    }

    pub fn neighbors(&self, v: &str) -> Vec<&str> {
        match self.index.get(v) {
            Some(&i) => self.adj[i]
                .iter()
                .map(|&j| self.labels[j].as_str())
                .collect(),
            None => Vec::new(),
        }
    }

    /// Edges as label pairs `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(&str, &str)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (i, nbrs) in self.adj.iter().enumerate() {
            for &j in nbrs.iter().filter(|&&j| j > i) {
                out.push((self.labels[i].as_str(), self.labels[j].as_str()));
            }
        }
        out
    }

    pub(crate) fn idx(&self, v: &str) -> Option<usize> {
        self.index.get(v).copied()
    }

    pub(crate) fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub(crate) fn adj_idx(&self, i: usize) -> &BTreeSet<usize> {
        &self.adj[i]
    }

    /// Induced subgraph on the given vertices (unknown labels ignored).
    pub fn induced<'a, I: IntoIterator<Item = &'a str>>(&self, keep: I) -> Graph {
        let keep: BTreeSet<usize> = keep.into_iter().filter_map(|v| self.idx(v)).collect();
        let labels: Vec<String> = keep.iter().map(|&i| self.labels[i].clone()).collect();
        let mut edges: Vec<(&str, &str)> = Vec::new();
        for &i in &keep {
            for &j in &self.adj[i] {
                if j > i && keep.contains(&j) {
                    edges.push((self.labels[i].as_str(), self.labels[j].as_str()));
                }
            }
        }
        Graph::new(labels, &edges).expect("induced subgraph is well-formed")
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertex_count();
        if n == 0 {
            return false;
        }
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = queue.pop_front() {
            for &w in &self.adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    queue.push_back(w);
                }
            }
        }
        count == n
    }

    /// Biconnected blocks as edge sets, via iterative Tarjan lowlink.
    fn blocks(&self) -> Vec<Vec<(usize, usize)>> {
        enum Step {
            Descend(usize, usize, usize), // (v, parent, w)
            Retreat(usize),
        }

        let n = self.vertex_count();
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![0usize; n];
        let mut timer = 0usize;
        let mut edge_stack: Vec<(usize, usize)> = Vec::new();
        let mut blocks = Vec::new();

        for root in 0..n {
            if disc[root] != usize::MAX {
                continue;
            }
            disc[root] = timer;
            low[root] = timer;
            timer += 1;
            // frames: (vertex, parent, neighbors, cursor)
            let mut stack: Vec<(usize, usize, Vec<usize>, usize)> = vec![(
                root,
                usize::MAX,
                self.adj[root].iter().copied().collect(),
                0,
            )];
            loop {
                let step = match stack.last_mut() {
                    None => break,
                    Some(frame) => {
                        if frame.3 < frame.2.len() {
                            let w = frame.2[frame.3];
                            frame.3 += 1;
                            Step::Descend(frame.0, frame.1, w)
                        } else {
                            Step::Retreat(frame.0)
                        }
                    }
                };
                match step {
                    Step::Descend(v, parent, w) => {
                        if disc[w] == usize::MAX {
                            edge_stack.push((v, w));
                            disc[w] = timer;
                            low[w] = timer;
                            timer += 1;
                            stack.push((w, v, self.adj[w].iter().copied().collect(), 0));
                        } else if w != parent && disc[w] < disc[v] {
                            // back edge
                            edge_stack.push((v, w));
                            low[v] = low[v].min(disc[w]);
                        }
                    }
                    Step::Retreat(v) => {
                        stack.pop();
                        if let Some(pframe) = stack.last_mut() {
                            let pv = pframe.0;
                            low[pv] = low[pv].min(low[v]);
                            if low[v] >= disc[pv] {
                                // pv separates v's subtree; pop one block
                                let mut block = Vec::new();
                                while let Some(&e) = edge_stack.last() {
                                    edge_stack.pop();
                                    block.push(e);
                                    if e == (pv, v) {
                                        break;
                                    }
                                }
                                if !block.is_empty() {
                                    blocks.push(block);
                                }
                            }
                        }
                    }
                }
            }
        }
        blocks
    }

    /// A cactus: connected, and every edge lies on at most one simple
    /// cycle. Equivalently every biconnected block is a single edge or a
    /// single cycle, i.e. has at most as many edges as vertices.
    pub fn is_cactus(&self) -> bool {
        if !self.is_connected() {
            return false;
        }
        for block in self.blocks() {
            let mut verts = BTreeSet::new();
            for &(a, b) in &block {
                verts.insert(a);
                verts.insert(b);
            }
            if block.len() > verts.len() {
                return false;
            }
        }
        true
    }

    /// All simple cycles, each reported once in canonical form, sorted.
    /// Fails with a budget error past [`MAX_CYCLES`].
    pub fn simple_cycles(&self) -> Result<CycleList> {
        let n = self.vertex_count();
        let mut cycles: Vec<Vec<String>> = Vec::new();
        // Paths start at the cycle's smallest vertex and only visit larger
        // vertices, so each cycle is found from exactly one start. Keeping
        // path[1] < path[last] fixes the direction and kills the mirror.
        let mut path: Vec<usize> = Vec::new();
        let mut on_path = vec![false; n];
        for s in 0..n {
            path.clear();
            path.push(s);
            on_path[s] = true;
            self.cycle_dfs(s, s, &mut path, &mut on_path, &mut cycles)?;
            on_path[s] = false;
        }
        cycles.sort();
        Ok(CycleList { cycles })
    }

    fn cycle_dfs(
        &self,
        start: usize,
        v: usize,
        path: &mut Vec<usize>,
        on_path: &mut Vec<bool>,
        cycles: &mut Vec<Vec<String>>,
    ) -> Result<()> {
        for &w in &self.adj[v] {
            if w == start && path.len() >= 3 {
                if path[1] < path[path.len() - 1] {
                    if cycles.len() >= MAX_CYCLES {
                        return Err(Error::BudgetExceeded(format!(
                            "more than {MAX_CYCLES} simple cycles"
                        )));
                    }
                    cycles.push(path.iter().map(|&i| self.labels[i].clone()).collect());
                }
            } else if w > start && !on_path[w] {
                path.push(w);
                on_path[w] = true;
                self.cycle_dfs(start, w, path, on_path, cycles)?;
                on_path[w] = false;
                path.pop();
            }
        }
        Ok(())
    }

    /// True iff no two vertices of the 5-cycle `cycle` that are adjacent in
    /// the graph both have degree three or more. Errors unless `cycle` is a
    /// simple 5-cycle of this graph.
    pub fn is_basic_five_cycle(&self, cycle: &[String]) -> Result<bool> {
        if cycle.len() != 5 {
            return Err(Error::InvalidInput(format!(
                "expected a 5-cycle, got {} vertices",
                cycle.len()
            )));
        }
        let mut seen = BTreeSet::new();
        for v in cycle {
            if !self.has_vertex(v) {
                return Err(Error::InvalidInput(format!("unknown vertex `{v}`")));
            }
            if !seen.insert(v.as_str()) {
                return Err(Error::InvalidInput(format!(
                    "repeated vertex `{v}` in cycle"
                )));
            }
        }
        for i in 0..5 {
            let u = &cycle[i];
            let v = &cycle[(i + 1) % 5];
            if !self.has_edge(u, v) {
                return Err(Error::InvalidInput(format!(
                    "`{u}`-`{v}` is not an edge; not a cycle of the graph"
                )));
            }
        }
        for i in 0..5 {
            for j in (i + 1)..5 {
                let (u, v) = (&cycle[i], &cycle[j]);
                if self.has_edge(u, v)
                    && self.degree(u).unwrap() >= 3
                    && self.degree(v).unwrap() >= 3
                {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// Rotates/reflects a simple cycle to canonical form: smallest vertex
/// first, proceeding toward its smaller neighbor on the cycle.
pub fn canonical_cycle(cycle: &[String]) -> Vec<String> {
    assert!(cycle.len() >= 3, "cycles have at least 3 vertices");
    let n = cycle.len();
    let start = (0..n).min_by_key(|&i| &cycle[i]).unwrap();
    let fwd = &cycle[(start + 1) % n];
    let bwd = &cycle[(start + n - 1) % n];
    let mut out = Vec::with_capacity(n);
    if fwd <= bwd {
        for k in 0..n {
            out.push(cycle[(start + k) % n].clone());
        }
    } else {
        for k in 0..n {
            out.push(cycle[(start + n - k) % n].clone());
        }
    }
    out
}

/// Simple cycles of a graph, canonical and sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleList {
    cycles: Vec<Vec<String>>,
}

impl CycleList {
    pub fn len(&self) -> usize {
        self.cycles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cycles.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &[String]> {
        self.cycles.iter().map(|c| c.as_slice())
    }

    pub fn cycles(&self) -> &[Vec<String>] {
        &self.cycles
    }

    /// How many cycles each edge lies on; keys are `(u, v)` with `u <= v`.
    pub fn edge_multiplicity(&self) -> HashMap<(String, String), usize> {
        let mut mult = HashMap::new();
        for cycle in &self.cycles {
            let n = cycle.len();
            for i in 0..n {
                let u = cycle[i].clone();
                let v = cycle[(i + 1) % n].clone();
                let key = if u <= v { (u, v) } else { (v, u) };
                *mult.entry(key).or_insert(0) += 1;
            }
        }
        mult
    }
}

/// Splits the graph around a labeled basic 5-cycle block `y1..y5`:
/// with `T` the induced subgraph on everything but `y3,y4,y5`, returns the
/// vertices of `T` (other than `y1,y2`) reachable from `y1` and from `y2`.
/// In a cactus the two sides are disjoint and, with `{y1,y2}`, exhaust
/// `V(T)`; anything else is reported as a structural violation.
pub fn reachable_partition(
    graph: &Graph,
    ys: [&str; 5],
) -> Result<(BTreeSet<String>, BTreeSet<String>)> {
    for y in ys {
        if !graph.has_vertex(y) {
            return Err(Error::InvalidInput(format!("unknown vertex `{y}`")));
        }
    }
    let [y1, y2, y3, y4, y5] = ys;
    let removed: BTreeSet<&str> = [y3, y4, y5].into_iter().collect();
    let t = graph.induced(
        graph
            .labels()
            .iter()
            .map(|s| s.as_str())
            .filter(|v| !removed.contains(v)),
    );
    let reach = |from: &str| -> BTreeSet<String> {
        let mut seen: BTreeSet<String> = BTreeSet::new();
        let mut queue = VecDeque::from([from.to_string()]);
        seen.insert(from.to_string());
        while let Some(v) = queue.pop_front() {
            for w in t.neighbors(&v) {
                if seen.insert(w.to_string()) {
                    queue.push_back(w.to_string());
                }
            }
        }
        seen.remove(y1);
        seen.remove(y2);
        seen
    };
    let t1 = reach(y1);
    let t2 = reach(y2);
    if let Some(shared) = t1.intersection(&t2).next() {
        return Err(Error::StructuralViolation(format!(
            "reachability sides overlap at `{shared}`; not a valid cactus 5-cycle configuration"
        )));
    }
    let mut covered: BTreeSet<&str> = t1.iter().chain(t2.iter()).map(|s| s.as_str()).collect();
    covered.insert(y1);
    covered.insert(y2);
    for v in t.labels() {
        if !covered.contains(v.as_str()) {
            return Err(Error::StructuralViolation(format!(
                "vertex `{v}` unreachable from both anchor vertices"
            )));
        }
    }
    Ok((t1, t2))
}
