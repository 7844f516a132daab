//! Vertex decompositions of cactus graphs into cliques, basic 5-cycle
//! blocks, and degree-two edges of 4-cycles, plus the block variable order
//! those decompositions induce and a seeded generator of decomposable
//! cactus graphs for fuzzing.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{canonical_cycle, Graph};
use crate::monomial::Monomial;

/// Decomposition search is exponential; reject anything bigger.
pub const MAX_SEARCH_VERTICES: usize = 24;

/// A clique block: 2 or 3 vertices inducing a clique, with its free
/// vertices (those whose whole neighborhood stays inside the block)
/// listed separately.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CliqueBlock {
    pub vertices: Vec<String>,
    pub free: Vec<String>,
}

/// A labeled basic 5-cycle block. The cycle traversal order is
/// `y1, y4, y2, y3, y5`, and `y3, y4, y5` have degree two in the ambient
/// graph, so all outside attachments sit on `y1` and `y2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FiveCycleBlock {
    pub y1: String,
    pub y2: String,
    pub y3: String,
    pub y4: String,
    pub y5: String,
}

impl FiveCycleBlock {
    /// Labels as `[y1, y2, y3, y4, y5]`.
    pub fn labels(&self) -> [&str; 5] {
        [&self.y1, &self.y2, &self.y3, &self.y4, &self.y5]
    }

    /// Vertices in cycle traversal order.
    pub fn traversal(&self) -> [&str; 5] {
        [&self.y1, &self.y4, &self.y2, &self.y3, &self.y5]
    }

    pub fn contains(&self, v: &str) -> bool {
        self.labels().contains(&v)
    }

    /// Position 1..=5 of a vertex in the block, if it belongs to it.
    pub fn position(&self, v: &str) -> Option<u8> {
        self.labels()
            .iter()
            .position(|&y| y == v)
            .map(|i| i as u8 + 1)
    }
}

/// Partition of the vertex set into clique blocks, basic 5-cycle blocks,
/// and degree-two edges of 4-cycles.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct Decomposition {
    pub cliques: Vec<CliqueBlock>,
    pub five_cycles: Vec<FiveCycleBlock>,
    pub four_cycle_edges: Vec<(String, String)>,
}

impl Decomposition {
    pub fn from_json(text: &str) -> Result<Decomposition> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("decomposition JSON: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("decomposition serializes")
    }

    /// All vertices mentioned by the decomposition, with multiplicity.
    fn listed_vertices(&self) -> Vec<&str> {
        let mut out: Vec<&str> = Vec::new();
        for c in &self.cliques {
            out.extend(c.vertices.iter().map(|s| s.as_str()));
        }
        for f in &self.five_cycles {
            out.extend(f.labels());
        }
        for (z1, z2) in &self.four_cycle_edges {
            out.push(z1);
            out.push(z2);
        }
        out
    }
}

/// Outcome of checking a decomposition against a graph: valid iff the
/// violation list is empty. Violations are data, not errors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub violations: Vec<String>,
}

impl VerifyReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Free vertices of a clique in `g`: neighborhood contained in the clique.
fn free_vertices(g: &Graph, clique: &[String]) -> Vec<String> {
    let set: BTreeSet<&str> = clique.iter().map(|s| s.as_str()).collect();
    clique
        .iter()
        .filter(|v| g.neighbors(v).iter().all(|n| set.contains(n)))
        .cloned()
        .collect()
}

/// Whether the edge `(a, b)` lies on some 4-cycle of `g`.
fn edge_on_four_cycle(g: &Graph, a: &str, b: &str) -> bool {
    for x in g.neighbors(b) {
        if x == a {
            continue;
        }
        for y in g.neighbors(a) {
            if y == b || y == x {
                continue;
            }
            if g.has_edge(x, y) {
                return true;
            }
        }
    }
    false
}

/// Checks every invariant of a decomposition against the graph and lists
/// each violated clause.
pub fn verify_decomposition(g: &Graph, d: &Decomposition) -> VerifyReport {
    let mut violations = Vec::new();

    // partition: pairwise disjoint and exhaustive
    let listed = d.listed_vertices();
    let mut seen: BTreeMap<&str, usize> = BTreeMap::new();
    for v in &listed {
        *seen.entry(v).or_insert(0) += 1;
    }
    for (v, count) in &seen {
        if *count > 1 {
            violations.push(format!("vertex `{v}` listed in {count} blocks"));
        }
        if !g.has_vertex(v) {
            violations.push(format!("vertex `{v}` not in the graph"));
        }
    }
    for v in g.labels() {
        if !seen.contains_key(v.as_str()) {
            violations.push(format!("union of blocks misses vertex `{v}`"));
        }
    }

    for (i, c) in d.cliques.iter().enumerate() {
        if !(2..=3).contains(&c.vertices.len()) {
            violations.push(format!("clique {i} has size {}", c.vertices.len()));
            continue;
        }
        if c.vertices.iter().any(|v| !g.has_vertex(v)) {
            continue; // already reported above
        }
        for a in 0..c.vertices.len() {
            for b in (a + 1)..c.vertices.len() {
                if !g.has_edge(&c.vertices[a], &c.vertices[b]) {
                    violations.push(format!(
                        "clique {i} not a clique: `{}`-`{}` missing",
                        c.vertices[a], c.vertices[b]
                    ));
                }
            }
        }
        let mut expected = free_vertices(g, &c.vertices);
        expected.sort();
        let mut declared = c.free.clone();
        declared.sort();
        if expected != declared {
            violations.push(format!(
                "clique {i} free vertices declared {declared:?}, derived {expected:?}"
            ));
        }
    }

    for (j, f) in d.five_cycles.iter().enumerate() {
        if f.labels().iter().any(|v| !g.has_vertex(v)) {
            continue;
        }
        let traversal: Vec<String> = f.traversal().iter().map(|s| s.to_string()).collect();
        match g.is_basic_five_cycle(&traversal) {
            Err(e) => violations.push(format!("5-cycle block {j}: {e}")),
            Ok(false) => violations.push(format!("5-cycle block {j} is not basic")),
            Ok(true) => {}
        }
        for v in [&f.y3, &f.y4, &f.y5] {
            if g.degree(v) != Some(2) {
                violations.push(format!(
                    "5-cycle block {j}: `{v}` must have degree 2, has {:?}",
                    g.degree(v)
                ));
            }
        }
    }

    for (l, (z1, z2)) in d.four_cycle_edges.iter().enumerate() {
        if !g.has_vertex(z1) || !g.has_vertex(z2) {
            continue;
        }
        if !g.has_edge(z1, z2) {
            violations.push(format!("4-cycle edge {l}: `{z1}`-`{z2}` is not an edge"));
            continue;
        }
        for z in [z1, z2] {
            if g.degree(z) != Some(2) {
                violations.push(format!(
                    "4-cycle edge {l}: `{z}` must have degree 2, has {:?}",
                    g.degree(z)
                ));
            }
        }
        if !edge_on_four_cycle(g, z1, z2) {
            violations.push(format!(
                "4-cycle edge {l}: `{z1}`-`{z2}` lies on no 4-cycle"
            ));
        }
    }

    VerifyReport { violations }
}

/// Labels a basic 5-cycle `y1..y5` so that the traversal order is
/// `y1, y4, y2, y3, y5` with `y3, y4, y5` of degree two, choosing among
/// valid assignments the one with lexicographically least `(y1, y2)`.
pub fn label_five_cycle(g: &Graph, cycle: &[String]) -> Result<FiveCycleBlock> {
    if !g.is_basic_five_cycle(cycle)? {
        return Err(Error::InvalidInput(
            "cycle is not basic: two adjacent vertices of degree 3 or more".into(),
        ));
    }
    let deg2 = |v: &str| g.degree(v) == Some(2);
    let mut best: Option<FiveCycleBlock> = None;
    for rot in 0..5i32 {
        for dir in [1i32, -1] {
            let at = |m: i32| -> &str {
                let idx = (rot + dir * m).rem_euclid(5) as usize;
                &cycle[idx]
            };
            // traversal (t0..t4) = (y1, y4, y2, y3, y5)
            let (y1, y4, y2, y3, y5) = (at(0), at(1), at(2), at(3), at(4));
            if deg2(y3) && deg2(y4) && deg2(y5) {
                let candidate = FiveCycleBlock {
                    y1: y1.to_string(),
                    y2: y2.to_string(),
                    y3: y3.to_string(),
                    y4: y4.to_string(),
                    y5: y5.to_string(),
                };
                let better = match &best {
                    None => true,
                    Some(b) => (&candidate.y1, &candidate.y2) < (&b.y1, &b.y2),
                };
                if better {
                    best = Some(candidate);
                }
            }
        }
    }
    best.ok_or_else(|| {
        Error::InvalidInput("no labeling with three consecutive-free degree-2 vertices".into())
    })
}

// ---------------------------------------------------------------------------
// decomposition search
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
enum Candidate {
    Five(FiveCycleBlock, BTreeSet<usize>),
    Four(String, String, BTreeSet<usize>),
    Clique(Vec<String>, BTreeSet<usize>),
}

impl Candidate {
    fn vertices(&self) -> &BTreeSet<usize> {
        match self {
            Candidate::Five(_, s) | Candidate::Four(_, _, s) | Candidate::Clique(_, s) => s,
        }
    }
}

/// Searches for a decomposition by backtracking over vertex partitions:
/// for the smallest uncovered vertex, 5-cycle blocks are tried first, then
/// 4-cycle edges, then cliques, each in lexicographic order. Returns the
/// first complete partition found, or `None` when none exists.
pub fn find_decomposition(g: &Graph) -> Result<Option<Decomposition>> {
    let n = g.vertex_count();
    if n > MAX_SEARCH_VERTICES {
        return Err(Error::BudgetExceeded(format!(
            "decomposition search limited to {MAX_SEARCH_VERTICES} vertices, got {n}"
        )));
    }
    let to_set =
        |labels: &[&str]| -> BTreeSet<usize> { labels.iter().map(|v| g.idx(v).unwrap()).collect() };

    let mut fives: Vec<Candidate> = Vec::new();
    for cycle in g.simple_cycles()?.iter() {
        if cycle.len() == 5 && g.is_basic_five_cycle(cycle)? {
            if let Ok(block) = label_five_cycle(g, cycle) {
                let set = to_set(&block.labels());
                fives.push(Candidate::Five(block, set));
            }
        }
    }

    let mut fours: Vec<Candidate> = Vec::new();
    for (u, v) in g.edges() {
        if g.degree(u) == Some(2) && g.degree(v) == Some(2) && edge_on_four_cycle(g, u, v) {
            fours.push(Candidate::Four(
                u.to_string(),
                v.to_string(),
                to_set(&[u, v]),
            ));
        }
    }

    let mut cliques: Vec<Candidate> = Vec::new();
    let labels = g.labels();
    for (u, v) in g.edges() {
        cliques.push(Candidate::Clique(
            vec![u.to_string(), v.to_string()],
            to_set(&[u, v]),
        ));
    }
    for i in 0..n {
        for j in (i + 1)..n {
            for k in (j + 1)..n {
                let (a, b, c) = (labels[i].as_str(), labels[j].as_str(), labels[k].as_str());
                if g.has_edge(a, b) && g.has_edge(a, c) && g.has_edge(b, c) {
                    cliques.push(Candidate::Clique(
                        vec![a.to_string(), b.to_string(), c.to_string()],
                        to_set(&[a, b, c]),
                    ));
                }
            }
        }
    }
    // lexicographic candidate order within each kind
    let sort_key = |c: &Candidate| -> Vec<usize> { c.vertices().iter().copied().collect() };
    fives.sort_by_key(sort_key);
    fours.sort_by_key(sort_key);
    cliques.sort_by_key(sort_key);

    let pools = [fives, fours, cliques];
    let mut covered = vec![false; n];
    let mut chosen: Vec<&Candidate> = Vec::new();

    fn search<'a>(
        covered: &mut Vec<bool>,
        chosen: &mut Vec<&'a Candidate>,
        pools: &'a [Vec<Candidate>; 3],
    ) -> bool {
        let next = match covered.iter().position(|&c| !c) {
            None => return true,
            Some(v) => v,
        };
        for pool in pools {
            for cand in pool {
                if !cand.vertices().contains(&next) {
                    continue;
                }
                if cand.vertices().iter().any(|&v| covered[v]) {
                    continue;
                }
                for &v in cand.vertices() {
                    covered[v] = true;
                }
                chosen.push(cand);
                if search(covered, chosen, pools) {
                    return true;
                }
                chosen.pop();
                for &v in cand.vertices() {
                    covered[v] = false;
                }
            }
        }
        false
    }

    if !search(&mut covered, &mut chosen, &pools) {
        return Ok(None);
    }

    let mut d = Decomposition::default();
    for cand in chosen {
        match cand {
            Candidate::Five(block, _) => d.five_cycles.push(block.clone()),
            Candidate::Four(z1, z2, _) => d.four_cycle_edges.push((z1.clone(), z2.clone())),
            Candidate::Clique(vs, _) => d.cliques.push(CliqueBlock {
                vertices: vs.clone(),
                free: free_vertices(g, vs),
            }),
        }
    }
    debug_assert!(verify_decomposition(g, &d).is_valid());
    Ok(Some(d))
}

// ---------------------------------------------------------------------------
// variable order
// ---------------------------------------------------------------------------

/// A total order on vertex labels, as a rank map with rank 0 greatest.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VariableOrder {
    seq: Vec<String>,
    rank: HashMap<String, usize>,
}

impl VariableOrder {
    /// Builds an order from labels listed greatest first.
    pub fn from_sequence<I, S>(labels: I) -> Result<VariableOrder>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let seq: Vec<String> = labels.into_iter().map(Into::into).collect();
        let mut rank = HashMap::with_capacity(seq.len());
        for (i, l) in seq.iter().enumerate() {
            if rank.insert(l.clone(), i).is_some() {
                return Err(Error::InvalidInput(format!(
                    "duplicate variable `{l}` in order"
                )));
            }
        }
        Ok(VariableOrder { seq, rank })
    }

    /// Label-lexicographic order: lexicographically least label greatest.
    pub fn label_lex<I, S>(labels: I) -> VariableOrder
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut seq: Vec<String> = labels.into_iter().map(Into::into).collect();
        seq.sort();
        seq.dedup();
        VariableOrder::from_sequence(seq).expect("deduplicated")
    }

    /// Parses an order file: one label per line, greatest first, with `#`
    /// comments and blank lines ignored.
    pub fn parse(text: &str) -> Result<VariableOrder> {
        let mut labels = Vec::new();
        for raw in text.lines() {
            let line = match raw.split_once('#') {
                Some((before, _)) => before.trim(),
                None => raw.trim(),
            };
            if !line.is_empty() {
                labels.push(line.to_string());
            }
        }
        VariableOrder::from_sequence(labels)
    }

    pub fn len(&self) -> usize {
        self.seq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seq.is_empty()
    }

    /// Position of a variable; 0 is the greatest variable.
    pub fn rank(&self, label: &str) -> Option<usize> {
        self.rank.get(label).copied()
    }

    /// Labels from greatest to least.
    pub fn sequence(&self) -> &[String] {
        &self.seq
    }

    pub fn contains(&self, label: &str) -> bool {
        self.rank.contains_key(label)
    }

    /// `a > b` as variables?
    pub fn var_gt(&self, a: &str, b: &str) -> Result<bool> {
        Ok(self.require(a)? < self.require(b)?)
    }

    pub(crate) fn require(&self, label: &str) -> Result<usize> {
        self.rank(label)
            .ok_or_else(|| Error::InvalidInput(format!("variable `{label}` not in the order")))
    }

    /// Dense exponent vector of `m`, indexed by rank.
    pub(crate) fn dense(&self, m: &Monomial) -> Result<Vec<u32>> {
        let mut v = vec![0u32; self.seq.len()];
        for (label, e) in m.iter() {
            v[self.require(label)?] = e;
        }
        Ok(v)
    }

    pub(crate) fn monomial(&self, dense: &[u32]) -> Monomial {
        Monomial::from_pairs(
            dense
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| (self.seq[i].clone(), e)),
        )
    }

    /// Lexicographic comparison of monomials: compare exponents variable by
    /// variable from the greatest down.
    pub fn lex_cmp(&self, a: &Monomial, b: &Monomial) -> Result<Ordering> {
        Ok(self.dense(a)?.cmp(&self.dense(b)?))
    }
}

/// The block variable order of a valid decomposition: clique vertices
/// first (within a clique the non-free vertices precede the free ones),
/// then 5-cycle blocks as `y1 > y2 > y3 > y4 > y5`, then the 4-cycle edge
/// pairs. Blocks follow their sequence order in the decomposition; ties
/// inside a group break lexicographically.
pub fn variable_order(g: &Graph, d: &Decomposition) -> Result<VariableOrder> {
    let report = verify_decomposition(g, d);
    if !report.is_valid() {
        return Err(Error::InvalidInput(format!(
            "decomposition invalid: {}",
            report.violations.join("; ")
        )));
    }
    let mut seq: Vec<String> = Vec::with_capacity(g.vertex_count());
    for c in &d.cliques {
        let free: BTreeSet<&str> = c.free.iter().map(|s| s.as_str()).collect();
        let mut non_free: Vec<&String> = c
            .vertices
            .iter()
            .filter(|v| !free.contains(v.as_str()))
            .collect();
        let mut free_vs: Vec<&String> = c
            .vertices
            .iter()
            .filter(|v| free.contains(v.as_str()))
            .collect();
        non_free.sort();
        free_vs.sort();
        seq.extend(non_free.into_iter().cloned());
        seq.extend(free_vs.into_iter().cloned());
    }
    for f in &d.five_cycles {
        seq.extend(f.labels().map(str::to_string));
    }
    for (z1, z2) in &d.four_cycle_edges {
        seq.push(z1.clone());
        seq.push(z2.clone());
    }
    VariableOrder::from_sequence(seq)
}

// ---------------------------------------------------------------------------
// seeded generator
// ---------------------------------------------------------------------------

/// Upper bounds on how many blocks of each kind the generator may emit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BlockLimits {
    pub cliques: usize,
    pub five_cycles: usize,
    pub four_cycles: usize,
}

impl BlockLimits {
    pub fn new(cliques: usize, five_cycles: usize, four_cycles: usize) -> Self {
        BlockLimits {
            cliques,
            five_cycles,
            four_cycles,
        }
    }

    /// Largest vertex count any sample can reach (cliques 3, 5-cycles 5,
    /// 4-cycle blocks 6 including their two pendant vertices).
    pub fn max_vertices(&self) -> usize {
        3 * self.cliques + 5 * self.five_cycles + 6 * self.four_cycles
    }
}

#[derive(Debug, Clone, Copy)]
enum BlockKind {
    Clique,
    Five,
    Four,
}

/// Deterministically generates a cactus graph together with a valid
/// decomposition: blocks are created fresh and joined along a random tree
/// pattern by bridge edges. 5-cycle blocks accept bridges only at `y1`/`y2`
/// and 4-cycle blocks only at their two non-degree-two cycle vertices, so
/// the degree-two invariants survive gluing. Each 4-cycle block carries a
/// pendant vertex on both attachment vertices (packaged as two 2-cliques),
/// keeping the candidate within the decomposition grammar.
pub fn random_decomposed_graph(seed: u64, limits: BlockLimits) -> Result<(Graph, Decomposition)> {
    if limits.max_vertices() == 0 {
        return Err(Error::InvalidInput("all block limits are zero".into()));
    }
    if limits.max_vertices() > 90 {
        return Err(Error::BudgetExceeded(
            "block limits allow more than 90 vertices".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (n_cliques, n_fives, n_fours) = loop {
        let c = rng.gen_range(0..=limits.cliques);
        let f = rng.gen_range(0..=limits.five_cycles);
        let q = rng.gen_range(0..=limits.four_cycles);
        if c + f + q > 0 {
            break (c, f, q);
        }
    };
    let mut kinds: Vec<BlockKind> = Vec::new();
    kinds.extend(std::iter::repeat_n(BlockKind::Clique, n_cliques));
    kinds.extend(std::iter::repeat_n(BlockKind::Five, n_fives));
    kinds.extend(std::iter::repeat_n(BlockKind::Four, n_fours));
    // Fisher-Yates so the tree pattern interleaves block kinds
    for i in (1..kinds.len()).rev() {
        let j = rng.gen_range(0..=i);
        kinds.swap(i, j);
    }

    let mut vertices: Vec<String> = Vec::new();
    let mut edges: Vec<(String, String)> = Vec::new();
    let fresh = |vertices: &mut Vec<String>| -> String {
        let label = format!("v{:02}", vertices.len());
        vertices.push(label.clone());
        label
    };

    // raw blocks before free-vertex derivation
    let mut clique_sets: Vec<Vec<String>> = Vec::new();
    let mut five_blocks: Vec<FiveCycleBlock> = Vec::new();
    let mut four_pairs: Vec<(String, String)> = Vec::new();
    // per created block: vertices a bridge may attach to, and the vertex
    // this block uses to attach to its parent
    let mut glue_targets: Vec<Vec<String>> = Vec::new();

    for (i, kind) in kinds.iter().enumerate() {
        let (targets, anchor_choices) = match kind {
            BlockKind::Clique => {
                let size = rng.gen_range(2..=3usize);
                let vs: Vec<String> = (0..size).map(|_| fresh(&mut vertices)).collect();
                for a in 0..size {
                    for b in (a + 1)..size {
                        edges.push((vs[a].clone(), vs[b].clone()));
                    }
                }
                clique_sets.push(vs.clone());
                // keep the last vertex bridge-free so the clique retains a
                // free vertex
                let targets: Vec<String> = vs[..size - 1].to_vec();
                (targets.clone(), targets)
            }
            BlockKind::Five => {
                let y1 = fresh(&mut vertices);
                let y2 = fresh(&mut vertices);
                let y3 = fresh(&mut vertices);
                let y4 = fresh(&mut vertices);
                let y5 = fresh(&mut vertices);
                // traversal y1-y4-y2-y3-y5
                edges.push((y1.clone(), y4.clone()));
                edges.push((y4.clone(), y2.clone()));
                edges.push((y2.clone(), y3.clone()));
                edges.push((y3.clone(), y5.clone()));
                edges.push((y5.clone(), y1.clone()));
                let targets = vec![y1.clone(), y2.clone()];
                five_blocks.push(FiveCycleBlock { y1, y2, y3, y4, y5 });
                (targets.clone(), targets)
            }
            BlockKind::Four => {
                let a = fresh(&mut vertices);
                let b = fresh(&mut vertices);
                let z1 = fresh(&mut vertices);
                let z2 = fresh(&mut vertices);
                let wa = fresh(&mut vertices);
                let wb = fresh(&mut vertices);
                // 4-cycle a-b-z1-z2 with pendants on a and b
                edges.push((a.clone(), b.clone()));
                edges.push((b.clone(), z1.clone()));
                edges.push((z1.clone(), z2.clone()));
                edges.push((z2.clone(), a.clone()));
                edges.push((a.clone(), wa.clone()));
                edges.push((b.clone(), wb.clone()));
                clique_sets.push(vec![a.clone(), wa]);
                clique_sets.push(vec![b.clone(), wb]);
                four_pairs.push((z1, z2));
                let targets = vec![a, b];
                (targets.clone(), targets)
            }
        };
        if i > 0 {
            let parent = rng.gen_range(0..i);
            let parent_vertex =
                glue_targets[parent][rng.gen_range(0..glue_targets[parent].len())].clone();
            let child_vertex = anchor_choices[rng.gen_range(0..anchor_choices.len())].clone();
            edges.push((parent_vertex, child_vertex));
        }
        glue_targets.push(targets);
    }

    let edge_refs: Vec<(&str, &str)> = edges
        .iter()
        .map(|(u, v)| (u.as_str(), v.as_str()))
        .collect();
    let graph = Graph::new(vertices, &edge_refs)?;
    let decomposition = Decomposition {
        cliques: clique_sets
            .into_iter()
            .map(|vs| CliqueBlock {
                free: free_vertices(&graph, &vs),
                vertices: vs,
            })
            .collect(),
        five_cycles: five_blocks,
        four_cycle_edges: four_pairs,
    };
    debug_assert!(graph.is_cactus());
    debug_assert!(verify_decomposition(&graph, &decomposition).is_valid());
    Ok((graph, decomposition))
}

/// Canonical 5-cycle traversal of a labeled block, for tests and displays.
pub fn block_cycle(block: &FiveCycleBlock) -> Vec<String> {
    canonical_cycle(
        &block
            .traversal()
            .iter()
            .map(|s| s.to_string())
            .collect::<Vec<_>>(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c5() -> Graph {
        Graph::from_edges(&[
            ("y1", "y4"),
            ("y4", "y2"),
            ("y2", "y3"),
            ("y3", "y5"),
            ("y5", "y1"),
        ])
        .unwrap()
    }

    fn c5_block() -> FiveCycleBlock {
        FiveCycleBlock {
            y1: "y1".into(),
            y2: "y2".into(),
            y3: "y3".into(),
            y4: "y4".into(),
            y5: "y5".into(),
        }
    }

    #[test]
    fn verify_c5_block_labeling() {
        let d = Decomposition {
            five_cycles: vec![c5_block()],
            ..Default::default()
        };
        assert!(verify_decomposition(&c5(), &d).is_valid());
    }

    #[test]
    fn verify_k3_clique() {
        let g = Graph::from_edges(&[("a", "b"), ("b", "c"), ("a", "c")]).unwrap();
        let d = Decomposition {
            cliques: vec![CliqueBlock {
                vertices: vec!["a".into(), "b".into(), "c".into()],
                free: vec!["a".into(), "b".into(), "c".into()],
            }],
            ..Default::default()
        };
        assert!(verify_decomposition(&g, &d).is_valid());
    }

    #[test]
    fn verify_reports_missing_union() {
        let d = Decomposition {
            cliques: vec![CliqueBlock {
                vertices: vec!["y1".into(), "y2".into()],
                free: vec![],
            }],
            ..Default::default()
        };
        let report = verify_decomposition(&c5(), &d);
        assert!(!report.is_valid());
        assert!(report
            .violations
            .iter()
            .any(|v| v.contains("union of blocks misses")));
        // y1-y2 is not even an edge of C5
        assert!(report.violations.iter().any(|v| v.contains("not a clique")));
    }

    #[test]
    fn find_decomposition_c5_matches_canonical_labeling() {
        let d = find_decomposition(&c5()).unwrap().unwrap();
        assert_eq!(d.five_cycles, vec![c5_block()]);
        assert!(d.cliques.is_empty() && d.four_cycle_edges.is_empty());
    }

    #[test]
    fn find_decomposition_single_edge() {
        let g = Graph::from_edges(&[("a", "b")]).unwrap();
        let d = find_decomposition(&g).unwrap().unwrap();
        assert_eq!(d.cliques.len(), 1);
        assert_eq!(
            d.cliques[0].vertices,
            vec!["a".to_string(), "b".to_string()]
        );
        assert_eq!(d.cliques[0].free.len(), 2);
    }

    #[test]
    fn find_decomposition_path3_none() {
        let g = Graph::from_edges(&[("a", "b"), ("b", "c")]).unwrap();
        assert_eq!(find_decomposition(&g).unwrap(), None);
    }

    #[test]
    fn find_decomposition_respects_budget() {
        let labels: Vec<String> = (0..26).map(|i| format!("q{i:02}")).collect();
        let edges: Vec<(String, String)> = (0..25)
            .map(|i| (labels[i].clone(), labels[i + 1].clone()))
            .collect();
        let edge_refs: Vec<(&str, &str)> = edges
            .iter()
            .map(|(u, v)| (u.as_str(), v.as_str()))
            .collect();
        let g = Graph::new(labels.clone(), &edge_refs).unwrap();
        assert!(matches!(
            find_decomposition(&g),
            Err(Error::BudgetExceeded(_))
        ));
    }

    #[test]
    fn label_five_cycle_tiebreak() {
        // bare 5-cycle a-b-c-d-e in cycle order: all labelings valid, the
        // tie-break minimizes (y1, y2)
        let g = Graph::from_edges(&[("a", "b"), ("b", "c"), ("c", "d"), ("d", "e"), ("e", "a")])
            .unwrap();
        let cycle: Vec<String> = ["a", "b", "c", "d", "e"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        let block = label_five_cycle(&g, &cycle).unwrap();
        assert_eq!(block.y1, "a");
        assert_eq!(block.y2, "c"); // two steps along, direction toward b
        assert_eq!(block.y4, "b");
    }

    #[test]
    fn label_five_cycle_forced_by_degrees() {
        // whiskers on two non-adjacent cycle vertices force {y1,y2}
        let g = Graph::from_edges(&[
            ("a", "b"),
            ("b", "c"),
            ("c", "d"),
            ("d", "e"),
            ("e", "a"),
            ("a", "u"),
            ("c", "w"),
        ])
        .unwrap();
        let cycle: Vec<String> = ["a", "b", "c", "d", "e"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        let block = label_five_cycle(&g, &cycle).unwrap();
        assert_eq!(
            BTreeSet::from([block.y1.clone(), block.y2.clone()]),
            BTreeSet::from(["a".to_string(), "c".to_string()])
        );

        // whiskers on adjacent vertices: not basic
        let g = Graph::from_edges(&[
            ("a", "b"),
            ("b", "c"),
            ("c", "d"),
            ("d", "e"),
            ("e", "a"),
            ("a", "u"),
            ("b", "w"),
        ])
        .unwrap();
        assert!(label_five_cycle(&g, &cycle).is_err());
    }

    #[test]
    fn variable_order_c5() {
        let g = c5();
        let d = find_decomposition(&g).unwrap().unwrap();
        let ord = variable_order(&g, &d).unwrap();
        assert_eq!(ord.sequence(), ["y1", "y2", "y3", "y4", "y5"]);
        assert!(ord.var_gt("y1", "y5").unwrap());
    }

    #[test]
    fn variable_order_triangle_label_tiebreak() {
        let g = Graph::from_edges(&[("a", "b"), ("b", "c"), ("a", "c")]).unwrap();
        let d = find_decomposition(&g).unwrap().unwrap();
        let ord = variable_order(&g, &d).unwrap();
        assert_eq!(ord.sequence(), ["a", "b", "c"]);
    }

    #[test]
    fn variable_order_cliques_before_cycles() {
        // triangle bridged to a 5-cycle at y1
        let g = Graph::from_edges(&[
            ("a", "b"),
            ("b", "c"),
            ("a", "c"),
            ("y1", "y4"),
            ("y4", "y2"),
            ("y2", "y3"),
            ("y3", "y5"),
            ("y5", "y1"),
            ("a", "y1"),
        ])
        .unwrap();
        let d = Decomposition {
            cliques: vec![CliqueBlock {
                vertices: vec!["a".into(), "b".into(), "c".into()],
                free: free_vertices(&g, &["a".into(), "b".into(), "c".into()]),
            }],
            five_cycles: vec![c5_block()],
            four_cycle_edges: vec![],
        };
        assert!(verify_decomposition(&g, &d).is_valid());
        let ord = variable_order(&g, &d).unwrap();
        assert_eq!(
            ord.sequence(),
            ["a", "b", "c", "y1", "y2", "y3", "y4", "y5"]
        );
        // a is glued, hence non-free and first; b, c free
        assert_eq!(d.cliques[0].free, vec!["b".to_string(), "c".to_string()]);
    }

    #[test]
    fn variable_order_four_cycle_pairs_last() {
        // 4-cycle a-b-z1-z2 with pendants on a and b: two 2-cliques plus
        // the degree-two edge pair, which sorts after all clique vertices
        let g = Graph::from_edges(&[
            ("a", "b"),
            ("b", "z1"),
            ("z1", "z2"),
            ("z2", "a"),
            ("a", "wa"),
            ("b", "wb"),
        ])
        .unwrap();
        let d = find_decomposition(&g).unwrap().unwrap();
        assert_eq!(
            d.four_cycle_edges,
            vec![("z1".to_string(), "z2".to_string())]
        );
        let ord = variable_order(&g, &d).unwrap();
        assert_eq!(ord.sequence(), ["a", "wa", "b", "wb", "z1", "z2"]);
    }

    #[test]
    fn variable_order_requires_valid_decomposition() {
        let d = Decomposition::default();
        assert!(variable_order(&c5(), &d).is_err());
    }

    #[test]
    fn order_parse_and_ranks() {
        let ord = VariableOrder::parse("# greatest first\ny1\ny2\n\ny3\n").unwrap();
        assert_eq!(ord.rank("y1"), Some(0));
        assert_eq!(ord.rank("y3"), Some(2));
        assert!(VariableOrder::parse("a\na\n").is_err());
    }

    #[test]
    fn generator_single_block_limits() {
        let (g, d) = random_decomposed_graph(7, BlockLimits::new(1, 0, 0)).unwrap();
        assert_eq!(d.cliques.len(), 1);
        assert!(d.five_cycles.is_empty() && d.four_cycle_edges.is_empty());
        assert!(g.is_cactus());

        let (g, d) = random_decomposed_graph(7, BlockLimits::new(0, 1, 0)).unwrap();
        assert_eq!(d.five_cycles.len(), 1);
        assert_eq!(g.vertex_count(), 5);
        assert!(g.is_cactus());
    }

    #[test]
    fn generator_postconditions_over_seeds() {
        for seed in 0..40 {
            let (g, d) = random_decomposed_graph(seed, BlockLimits::new(2, 1, 1)).unwrap();
            assert!(g.is_cactus(), "seed {seed}");
            let report = verify_decomposition(&g, &d);
            assert!(report.is_valid(), "seed {seed}: {:?}", report.violations);
        }
    }

    #[test]
    fn generator_deterministic() {
        let a = random_decomposed_graph(99, BlockLimits::new(2, 1, 1)).unwrap();
        let b = random_decomposed_graph(99, BlockLimits::new(2, 1, 1)).unwrap();
        assert_eq!(a.0, b.0);
        assert_eq!(a.1, b.1);
    }

    #[test]
    fn generator_rejects_zero_limits() {
        assert!(random_decomposed_graph(1, BlockLimits::new(0, 0, 0)).is_err());
    }

    #[test]
    fn decomposition_json_round_trip() {
        let d = Decomposition {
            cliques: vec![CliqueBlock {
                vertices: vec!["a".into(), "b".into()],
                free: vec!["b".into()],
            }],
            five_cycles: vec![c5_block()],
            four_cycle_edges: vec![("z1".into(), "z2".into())],
        };
        let json = d.to_json();
        assert!(json.contains("\"cliques\""));
        assert!(json.contains("\"five_cycles\""));
        assert!(json.contains("\"four_cycle_edges\""));
        assert_eq!(Decomposition::from_json(&json).unwrap(), d);
    }
}
