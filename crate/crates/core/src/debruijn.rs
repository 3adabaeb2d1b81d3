//! De Bruijn graphs `B_k(n)`, their Eulerian and Hamiltonian tours, and de
//! Bruijn words of every length.
//!
//! Vertices (words of length `n`) and edges (words of length `n + 1`) are
//! encoded as big-endian base-`k` integers, so numeric order is lexicographic
//! order. An edge `e` runs from `e / k` to `e mod k^n`, and the out-edges of
//! `v` are `v·k + a` for `a = 0..k`.

use std::collections::VecDeque;
use std::fmt::Write as _;

use serde::Serialize;

use crate::complexity::{complexity_sequence, pow_sat};
use crate::error::{domain, Error, Result};
use crate::word::{Letter, Word, MAX_ALPHABET};

/// Largest edge count a graph may have.
pub const MAX_EDGES: u64 = 1 << 26;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DeBruijnGraph {
    k: usize,
    order: usize,
    vertex_count: u64,
    edge_count: u64,
}

impl DeBruijnGraph {
    pub fn alphabet_size(&self) -> usize {
        self.k
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn vertex_count(&self) -> u64 {
        self.vertex_count
    }

    pub fn edge_count(&self) -> u64 {
        self.edge_count
    }

    pub fn source(&self, edge: u64) -> u64 {
        edge / self.k as u64
    }

    pub fn target(&self, edge: u64) -> u64 {
        edge % self.vertex_count
    }

    /// Out-edges of `v` in lexicographic order.
    pub fn out_edges(&self, v: u64) -> impl Iterator<Item = u64> {
        let k = self.k as u64;
        (0..k).map(move |a| v * k + a)
    }

    /// In-edges of `v` in lexicographic order.
    pub fn in_edges(&self, v: u64) -> impl Iterator<Item = u64> {
        let stride = self.vertex_count;
        (0..self.k as u64).map(move |a| a * stride + v)
    }

    pub fn out_degree(&self, v: u64) -> usize {
        self.out_edges(v).count()
    }

    pub fn in_degree(&self, v: u64) -> usize {
        self.in_edges(v).count()
    }

    pub fn vertex_word(&self, v: u64) -> Word {
        decode(v, self.order, self.k)
    }

    pub fn edge_word(&self, e: u64) -> Word {
        decode(e, self.order + 1, self.k)
    }

    pub fn vertex_id(&self, w: &Word) -> Result<u64> {
        self.encode_checked(w, self.order)
    }

    pub fn edge_id(&self, w: &Word) -> Result<u64> {
        self.encode_checked(w, self.order + 1)
    }

    fn encode_checked(&self, w: &Word, len: usize) -> Result<u64> {
        if w.len() != len || w.alphabet_size() > self.k {
            return domain(format!(
                "{w} is not a word of length {len} over A_{}",
                self.k
            ));
        }
        Ok(encode(w.letters(), self.k))
    }

    pub fn vertices(&self) -> impl Iterator<Item = Word> + '_ {
        (0..self.vertex_count).map(|v| self.vertex_word(v))
    }

    pub fn edges(&self) -> impl Iterator<Item = Word> + '_ {
        (0..self.edge_count).map(|e| self.edge_word(e))
    }

    /// Whether the underlying undirected graph is connected.
    pub fn is_symmetrization_connected(&self) -> bool {
        let mut seen = vec![false; self.vertex_count as usize];
        let mut queue = VecDeque::from([0u64]);
        seen[0] = true;
        let mut reached = 1u64;
        while let Some(v) = queue.pop_front() {
            let nbrs = self
                .out_edges(v)
                .map(|e| self.target(e))
                .chain(self.in_edges(v).map(|e| self.source(e)));
            for u in nbrs.collect::<Vec<_>>() {
                if !seen[u as usize] {
                    seen[u as usize] = true;
                    reached += 1;
                    queue.push_back(u);
                }
            }
        }
        reached == self.vertex_count
    }

    /// Graphviz rendering with word labels.
    pub fn to_dot(&self) -> String {
        let mut out = format!("digraph B_{}_{} {{\n", self.k, self.order);
        for v in self.vertices() {
            let _ = writeln!(out, "  \"{v}\";");
        }
        for e in 0..self.edge_count {
            let _ = writeln!(
                out,
                "  \"{}\" -> \"{}\" [label=\"{}\"];",
                self.vertex_word(self.source(e)),
                self.vertex_word(self.target(e)),
                self.edge_word(e)
            );
        }
        out.push_str("}\n");
        out
    }
}

fn encode(letters: &[Letter], k: usize) -> u64 {
    letters
        .iter()
        .fold(0u64, |acc, &l| acc * k as u64 + u64::from(l))
}

fn decode(mut code: u64, len: usize, k: usize) -> Word {
    let mut letters = vec![0; len];
    for slot in letters.iter_mut().rev() {
        *slot = (code % k as u64) as Letter;
        code /= k as u64;
    }
    Word::from_parts(k, letters)
}

pub fn build_graph(k: usize, order: usize) -> Result<DeBruijnGraph> {
    if !(2..=MAX_ALPHABET).contains(&k) {
        return domain(format!(
            "alphabet size must lie in 2..={MAX_ALPHABET}, got {k}"
        ));
    }
    if order == 0 {
        return domain("de Bruijn graph order must be at least 1");
    }
    let edges = pow_sat(k, order + 1) as u128;
    if edges > u128::from(MAX_EDGES) {
        return Err(Error::Capacity {
            what: format!("B_{k}({order}) edges"),
            estimated: edges,
            limit: u128::from(MAX_EDGES),
        });
    }
    Ok(DeBruijnGraph {
        k,
        order,
        vertex_count: pow_sat(k, order) as u64,
        edge_count: edges as u64,
    })
}

/// A trail in `B_k(n)`: edge codes in walking order, no edge repeated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tour {
    graph: DeBruijnGraph,
    edges: Vec<u64>,
}

impl Tour {
    pub fn graph(&self) -> &DeBruijnGraph {
        &self.graph
    }

    pub fn edge_ids(&self) -> &[u64] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn edge_words(&self) -> Vec<Word> {
        self.edges
            .iter()
            .map(|&e| self.graph.edge_word(e))
            .collect()
    }

    /// Vertices `v_0, .., v_m` visited, endpoints included.
    pub fn vertex_ids(&self) -> Vec<u64> {
        let mut out = Vec::with_capacity(self.edges.len() + 1);
        if let Some(&first) = self.edges.first() {
            out.push(self.graph.source(first));
        }
        out.extend(self.edges.iter().map(|&e| self.graph.target(e)));
        out
    }

    pub fn is_closed(&self) -> bool {
        match (self.edges.first(), self.edges.last()) {
            (Some(&a), Some(&b)) => self.graph.source(a) == self.graph.target(b),
            _ => false,
        }
    }

    /// Consecutive edges chain and no edge repeats.
    pub fn is_valid(&self) -> bool {
        let chained = self
            .edges
            .windows(2)
            .all(|p| self.graph.target(p[0]) == self.graph.source(p[1]));
        let mut seen = vec![false; self.graph.edge_count as usize];
        let distinct = self.edges.iter().all(|&e| {
            let fresh = !seen[e as usize];
            seen[e as usize] = true;
            fresh
        });
        chained && distinct
    }

    /// The word of length `n + m` whose `(n+1)`-factors are the tour's edges in order.
    pub fn to_word(&self) -> Word {
        let g = &self.graph;
        let Some(&first) = self.edges.first() else {
            return Word::from_parts(g.k, Vec::new());
        };
        let mut letters = g.vertex_word(g.source(first)).into_letters();
        letters.extend(self.edges.iter().map(|&e| (e % g.k as u64) as Letter));
        Word::from_parts(g.k, letters)
    }
}

// Iterative Hierholzer from `start`, taking out-edges in lexicographic order
// and skipping those rejected by `allowed`.
fn hierholzer(g: &DeBruijnGraph, start: u64, allowed: impl Fn(u64) -> bool) -> Vec<u64> {
    let k = g.k as u64;
    let mut cursor = vec![0u64; g.vertex_count as usize];
    let mut stack: Vec<(u64, Option<u64>)> = vec![(start, None)];
    let mut circuit = Vec::new();
    while let Some(&(v, _)) = stack.last() {
        let c = &mut cursor[v as usize];
        while *c < k && !allowed(v * k + *c) {
            *c += 1;
        }
        if *c < k {
            let e = v * k + *c;
            *c += 1;
            stack.push((g.target(e), Some(e)));
        } else if let Some((_, Some(e))) = stack.pop() {
            circuit.push(e);
        }
    }
    circuit.reverse();
    circuit
}

/// Closed tour through every edge exactly once, starting at `0^n`.
pub fn eulerian_circuit(g: &DeBruijnGraph) -> Tour {
    Tour {
        graph: *g,
        edges: hierholzer(g, 0, |_| true),
    }
}

/// Closed tour through every vertex of `B_k(n)` exactly once.
///
/// For `n = 1` this is the cycle `0 → 1 → .. → k-1 → 0`; for larger orders the
/// edges of an Eulerian circuit of `B_k(n-1)` are read as consecutive vertices
/// of its line graph `B_k(n)`.
pub fn hamiltonian_cycle(k: usize, order: usize) -> Result<Tour> {
    let g = build_graph(k, order)?;
    let ku = k as u64;
    let edges = if order == 1 {
        (0..ku).map(|a| a * ku + (a + 1) % ku).collect()
    } else {
        let lower = build_graph(k, order - 1)?;
        let euler = eulerian_circuit(&lower).edges;
        let m = euler.len();
        (0..m)
            .map(|i| euler[i] * ku + euler[(i + 1) % m] % ku)
            .collect()
    };
    Ok(Tour { graph: g, edges })
}

/// Whether `p(n) = min(k^n, N-n+1)` for every `1 ≤ n ≤ N`.
pub fn is_de_bruijn(w: &Word) -> bool {
    let Ok(profile) = complexity_sequence(w) else {
        return false;
    };
    let n_len = w.len();
    let k = w.alphabet_size();
    (1..=n_len).all(|n| profile.p(n) == pow_sat(k, n).min(n_len - n + 1))
}

/// Largest `n ≥ 1` with `k^n + n - 1 ≤ len`, or `None` when even `n = 1` overshoots.
fn tour_order(k: usize, len: usize) -> Option<usize> {
    let fits = |n: usize| pow_sat(k, n).saturating_add(n - 1) <= len;
    if !fits(1) {
        return None;
    }
    let mut n = 1;
    while fits(n + 1) {
        n += 1;
    }
    Some(n)
}

/// A de Bruijn word of length `len` over `A_k`.
///
/// * `len < k`: the word `0 1 .. (len-1)`.
/// * `len = k^n + n - 1`: a Hamiltonian cycle of `B_k(n)` with its
///   lexicographically largest edge removed.
/// * otherwise: with `n` maximal such that `k^n + n - 1 < len`, a trail of
///   `len - n` edges that walks a Hamiltonian cycle `C` of `B_k(n)` once,
///   detouring through Eulerian circuits of the components of `B_k(n) - C`.
///   Components are ordered by their smallest vertex, which also serves as
///   the anchor where each circuit is spliced in.
pub fn de_bruijn_word(k: usize, len: usize) -> Result<Word> {
    if !(2..=MAX_ALPHABET).contains(&k) {
        return domain(format!(
            "alphabet size must lie in 2..={MAX_ALPHABET}, got {k}"
        ));
    }
    if len == 0 {
        return domain("de Bruijn words have positive length");
    }
    let Some(order) = tour_order(k, len) else {
        return Ok(Word::from_parts(k, (0..len as Letter).collect()));
    };
    let cycle = hamiltonian_cycle(k, order)?;
    let exact = pow_sat(k, order) + order - 1;
    if len == exact {
        return Ok(cycle_minus_largest_edge(&cycle).to_word());
    }
    let word = extended_tour(&cycle, len - order)?.to_word();
    debug_assert_eq!(word.len(), len);
    Ok(word)
}

fn cycle_minus_largest_edge(cycle: &Tour) -> Tour {
    let edges = &cycle.edges;
    let (cut, _) = edges
        .iter()
        .enumerate()
        .max_by_key(|&(_, &e)| e)
        .expect("cycle is nonempty");
    let path = edges[cut + 1..]
        .iter()
        .chain(&edges[..cut])
        .copied()
        .collect();
    Tour {
        graph: cycle.graph,
        edges: path,
    }
}

struct Component {
    anchor: u64,
    circuit: Vec<u64>,
}

// Weakly connected components of `B_k(n)` minus the cycle's edges, each with
// an Eulerian circuit from its smallest vertex.
fn residual_components(cycle: &Tour) -> Vec<Component> {
    let g = &cycle.graph;
    let mut on_cycle = vec![false; g.edge_count as usize];
    for &e in &cycle.edges {
        on_cycle[e as usize] = true;
    }
    let allowed = |e: u64| !on_cycle[e as usize];

    let mut component = vec![u32::MAX; g.vertex_count as usize];
    let mut out = Vec::new();
    for seed in 0..g.vertex_count {
        if component[seed as usize] != u32::MAX {
            continue;
        }
        let id = out.len() as u32;
        component[seed as usize] = id;
        let mut queue = VecDeque::from([seed]);
        let mut has_edge = false;
        while let Some(v) = queue.pop_front() {
            let fwd = g.out_edges(v).filter(|&e| allowed(e)).map(|e| g.target(e));
            let back = g.in_edges(v).filter(|&e| allowed(e)).map(|e| g.source(e));
            for u in fwd.chain(back).collect::<Vec<_>>() {
                has_edge = true;
                if component[u as usize] == u32::MAX {
                    component[u as usize] = id;
                    queue.push_back(u);
                }
            }
        }
        if has_edge {
            out.push(Component {
                anchor: seed,
                circuit: hierholzer(g, seed, allowed),
            });
        }
    }
    out
}

fn extended_tour(cycle: &Tour, edge_total: usize) -> Result<Tour> {
    let g = cycle.graph;
    let base = cycle.edges.len();
    let extra = edge_total - base;
    let comps = residual_components(cycle);

    // Smallest r with m_1 + .. + m_r ≥ extra.
    let mut acc = 0;
    let mut r = None;
    for (i, c) in comps.iter().enumerate() {
        acc += c.circuit.len();
        if acc >= extra {
            r = Some(i);
            break;
        }
    }
    let Some(r) = r else {
        return domain(format!(
            "length {edge_total} exceeds the edges of B_{}({})",
            g.k, g.order
        ));
    };
    let before: usize = comps[..r].iter().map(|c| c.circuit.len()).sum();
    let tail = extra - before;

    let mut splice_at = vec![usize::MAX; g.vertex_count as usize];
    for (i, c) in comps[..r].iter().enumerate() {
        splice_at[c.anchor as usize] = i;
    }

    // Rotate the cycle so it leaves from the anchor of component r.
    let start = comps[r].anchor;
    let pos = cycle
        .edges
        .iter()
        .position(|&e| g.source(e) == start)
        .expect("Hamiltonian cycle visits every vertex");
    let mut edges = Vec::with_capacity(edge_total);
    for i in 0..base {
        let e = cycle.edges[(pos + i) % base];
        let v = g.source(e);
        if let Some(c) = comps.get(splice_at[v as usize]) {
            edges.extend_from_slice(&c.circuit);
        }
        edges.push(e);
    }
    edges.extend_from_slice(&comps[r].circuit[..tail]);
    Ok(Tour { graph: g, edges })
}

/// Summary of a de Bruijn construction for reporting.
#[derive(Clone, Debug, Serialize)]
pub struct DeBruijnSummary {
    pub k: usize,
    pub length: usize,
    pub order: Option<usize>,
    pub word: String,
    pub is_de_bruijn: bool,
}

pub fn summarize(k: usize, len: usize) -> Result<DeBruijnSummary> {
    let word = de_bruijn_word(k, len)?;
    Ok(DeBruijnSummary {
        k,
        length: len,
        order: tour_order(k, len),
        is_de_bruijn: is_de_bruijn(&word),
        word: word.to_string(),
    })
}
