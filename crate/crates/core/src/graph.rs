//! Inter-machine traffic and the weighted flow graph.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::dsu::DisjointSet;
use crate::flow::Flow;
use crate::instance::Instance;

/// Symmetric machine-to-machine traffic with a zero diagonal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrafficMatrix {
    size: usize,
    entries: Vec<Flow>,
}

impl TrafficMatrix {
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, i: usize, q: usize) -> Flow {
        self.entries[i * self.size + q]
    }

    pub fn row(&self, i: usize) -> &[Flow] {
        &self.entries[i * self.size..(i + 1) * self.size]
    }

    fn add(&mut self, i: usize, q: usize, amount: Flow) {
        self.entries[i * self.size + q] += amount;
        self.entries[q * self.size + i] += amount;
    }
}

/// Traffic between each machine pair: the volume of every part times the
/// number of times the pair is adjacent in its routing, in either direction.
pub fn compute_traffic(inst: &Instance) -> TrafficMatrix {
    let m = inst.machine_count();
    let mut t = TrafficMatrix {
        size: m,
        entries: vec![Flow::ZERO; m * m],
    };
    for part in inst.parts() {
        for w in part.routing().windows(2) {
            t.add(w[0], w[1], part.volume());
        }
    }
    t
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    /// Lower endpoint (0-based).
    pub a: usize,
    /// Higher endpoint (0-based).
    pub b: usize,
    pub weight: Flow,
    /// Zero-weight edge added only to connect the graph.
    pub fictive: bool,
    pub in_cohabit: bool,
    pub in_separate: bool,
}

/// Connected, undirected flow graph whose edges are sorted by
/// `(lower endpoint, higher endpoint)`. Edge positions index every
/// [`EdgeMask`](crate::EdgeMask).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowGraph {
    vertex_count: usize,
    edges: Vec<Edge>,
    incident: Vec<Vec<usize>>,
}

impl FlowGraph {
    /// Builds a graph from an explicit edge list, adding fictive edges if it
    /// is disconnected. Duplicate pairs are merged by summing weights.
    pub fn from_weighted_edges(vertex_count: usize, edges: &[(usize, usize, Flow)]) -> Self {
        let mut map = BTreeMap::new();
        for &(a, b, w) in edges {
            assert!(a != b && a < vertex_count && b < vertex_count, "bad edge ({a},{b})");
            let e = map.entry((a.min(b), a.max(b))).or_insert(Edge {
                a: a.min(b),
                b: a.max(b),
                weight: Flow::ZERO,
                fictive: false,
                in_cohabit: false,
                in_separate: false,
            });
            e.weight += w;
        }
        Self::finish(vertex_count, map)
    }

    fn finish(vertex_count: usize, mut map: BTreeMap<(usize, usize), Edge>) -> Self {
        let mut dsu = DisjointSet::new(vertex_count);
        for &(a, b) in map.keys() {
            dsu.union(a, b);
        }
        // Link the lowest vertex of every other component to vertex 0, which
        // is the lowest vertex of the first component.
        let labels = dsu.canonical_labels();
        let mut seen = vec![false; vertex_count];
        for (v, &label) in labels.iter().enumerate() {
            if label > 0 && !seen[label] {
                seen[label] = true;
                map.insert(
                    (0, v),
                    Edge {
                        a: 0,
                        b: v,
                        weight: Flow::ZERO,
                        fictive: true,
                        in_cohabit: false,
                        in_separate: false,
                    },
                );
            }
        }
        let edges: Vec<Edge> = map.into_values().collect();
        let mut incident = vec![Vec::new(); vertex_count];
        for (idx, e) in edges.iter().enumerate() {
            incident[e.a].push(idx);
            incident[e.b].push(idx);
        }
        Self {
            vertex_count,
            edges,
            incident,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Indices of edges incident to `v`, ascending.
    pub fn incident(&self, v: usize) -> &[usize] {
        &self.incident[v]
    }

    pub fn edge_index(&self, a: usize, b: usize) -> Option<usize> {
        let key = (a.min(b), a.max(b));
        self.edges.binary_search_by(|e| (e.a, e.b).cmp(&key)).ok()
    }

    pub fn total_weight(&self) -> Flow {
        self.edges.iter().map(|e| e.weight).sum()
    }

    pub fn is_connected(&self) -> bool {
        let mut dsu = DisjointSet::new(self.vertex_count);
        let mut joins = 0;
        for e in &self.edges {
            if dsu.union(e.a, e.b) {
                joins += 1;
            }
        }
        joins + 1 == self.vertex_count
    }

    /// One line per edge: `i j weight [fictive] [sc] [sn]`, 1-based.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for e in &self.edges {
            let _ = write!(out, "{} {} {}", e.a + 1, e.b + 1, e.weight);
            if e.fictive {
                out.push_str(" fictive");
            }
            if e.in_cohabit {
                out.push_str(" sc");
            }
            if e.in_separate {
                out.push_str(" sn");
            }
            out.push('\n');
        }
        out
    }
}

/// Edge set = positive-traffic pairs plus every cohabitation and
/// separation pair, then fictive edges until connected.
pub fn build_graph(inst: &Instance, traffic: &TrafficMatrix) -> FlowGraph {
    let m = inst.machine_count();
    let mut map = BTreeMap::new();
    let blank = |a, b| Edge {
        a,
        b,
        weight: Flow::ZERO,
        fictive: false,
        in_cohabit: false,
        in_separate: false,
    };
    for a in 0..m {
        for b in a + 1..m {
            let t = traffic.get(a, b);
            if !t.is_zero() {
                map.insert((a, b), Edge { weight: t, ..blank(a, b) });
            }
        }
    }
    for &(a, b) in inst.cohabit() {
        map.entry((a, b)).or_insert_with(|| blank(a, b)).in_cohabit = true;
    }
    for &(a, b) in inst.separate() {
        map.entry((a, b)).or_insert_with(|| blank(a, b)).in_separate = true;
    }
    FlowGraph::finish(m, map)
}
