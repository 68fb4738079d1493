//! Cut-space algebra over a connected flow graph.
//!
//! The singleton cuts of every vertex except one form a basis of the cut
//! space under XOR. A cut is therefore identified by an integer whose bit
//! `i` selects the singleton cut of the `i`-th basis vertex; with the
//! default basis (all vertices but the last) machine `M_i` owns bit `i - 1`.
//! Unions of cuts are taken with OR, and the connected components left after
//! removing a union's edges are the cells of a partition.

use std::fmt;

use crate::dsu::DisjointSet;
use crate::error::{Error, Result};
use crate::graph::FlowGraph;
use crate::mask::EdgeMask;

/// Largest machine count whose cut indices fit in a `u64`.
pub const MAX_BASIS_MACHINES: usize = 64;
/// Guard for [`enumerate_all_cuts`].
pub const MAX_ENUMERATION_MACHINES: usize = 20;

/// An edge subset together with its coordinates over a [`CutBasis`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cut {
    pub mask: EdgeMask,
    pub index: u64,
}

impl Cut {
    pub fn empty(edge_count: usize) -> Self {
        Self {
            mask: EdgeMask::zeros(edge_count),
            index: 0,
        }
    }
}

#[derive(Debug, Clone)]
pub struct CutBasis {
    cuts: Vec<Cut>,
    basis_vertices: Vec<usize>,
    excluded_vertex: usize,
    edge_count: usize,
}

impl CutBasis {
    pub fn cuts(&self) -> &[Cut] {
        &self.cuts
    }

    /// Vertex whose singleton cut is the `i`-th basis element.
    pub fn basis_vertices(&self) -> &[usize] {
        &self.basis_vertices
    }

    pub fn excluded_vertex(&self) -> usize {
        self.excluded_vertex
    }

    pub fn dimension(&self) -> usize {
        self.cuts.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// Largest valid cut index, `2^(m-1) - 1`.
    pub fn max_index(&self) -> u64 {
        index_mask(self.dimension())
    }
}

pub(crate) fn index_mask(bits: usize) -> u64 {
    if bits >= 64 {
        u64::MAX
    } else {
        (1u64 << bits) - 1
    }
}

/// Singleton cuts of every vertex except the last.
pub fn build_basis(g: &FlowGraph) -> Result<CutBasis> {
    build_basis_excluding(g, g.vertex_count() - 1)
}

/// Singleton cuts of every vertex except `excluded`, in ascending vertex order.
pub fn build_basis_excluding(g: &FlowGraph, excluded: usize) -> Result<CutBasis> {
    let m = g.vertex_count();
    if m > MAX_BASIS_MACHINES + 1 {
        return Err(Error::TooManyMachines {
            what: "the cut basis",
            limit: MAX_BASIS_MACHINES + 1,
            machines: m,
        });
    }
    if excluded >= m {
        return Err(Error::InvalidParameter(format!(
            "excluded basis vertex {} is not a machine",
            excluded + 1
        )));
    }
    let basis_vertices: Vec<usize> = (0..m).filter(|&v| v != excluded).collect();
    let cuts = basis_vertices
        .iter()
        .enumerate()
        .map(|(i, &v)| {
            let mut mask = EdgeMask::zeros(g.edge_count());
            for &e in g.incident(v) {
                mask.set(e, true);
            }
            Cut {
                mask,
                index: 1u64 << i,
            }
        })
        .collect();
    Ok(CutBasis {
        cuts,
        basis_vertices,
        excluded_vertex: excluded,
        edge_count: g.edge_count(),
    })
}

/// XOR of the basis cuts selected by the bits of `n`.
pub fn cut_from_index(basis: &CutBasis, n: u64) -> Result<Cut> {
    if n > basis.max_index() {
        return Err(Error::CutIndexOutOfRange {
            index: n,
            machines: basis.dimension() + 1,
            max: basis.max_index(),
        });
    }
    Ok(Cut {
        mask: mask_from_index(basis, n),
        index: n,
    })
}

/// Unchecked variant for hot paths; `n` must be in range.
pub(crate) fn mask_from_index(basis: &CutBasis, n: u64) -> EdgeMask {
    let mut mask = EdgeMask::zeros(basis.edge_count);
    let mut rest = n;
    while rest != 0 {
        let i = rest.trailing_zeros() as usize;
        mask ^= &basis.cuts[i].mask;
        rest &= rest - 1;
    }
    mask
}

pub fn xor_cuts(a: &Cut, b: &Cut) -> Cut {
    Cut {
        mask: &a.mask ^ &b.mask,
        index: a.index ^ b.index,
    }
}

/// OR of the cut masks: the set of intercellular edges.
pub fn union_cuts<'a>(edge_count: usize, cuts: impl IntoIterator<Item = &'a Cut>) -> EdgeMask {
    let mut out = EdgeMask::zeros(edge_count);
    for c in cuts {
        out |= &c.mask;
    }
    out
}

/// Every nonempty cut, in index order `1..=2^(m-1)-1`.
pub fn enumerate_all_cuts(basis: &CutBasis) -> Result<Vec<Cut>> {
    let m = basis.dimension() + 1;
    if m > MAX_ENUMERATION_MACHINES {
        return Err(Error::TooManyMachines {
            what: "cut enumeration",
            limit: MAX_ENUMERATION_MACHINES,
            machines: m,
        });
    }
    // Gray-code walk: each step XORs a single basis cut.
    let count = basis.max_index();
    let mut out = Vec::with_capacity(count as usize);
    let mut mask = EdgeMask::zeros(basis.edge_count);
    let mut prev_gray = 0u64;
    for step in 1..=count {
        let gray = step ^ (step >> 1);
        let flipped = (gray ^ prev_gray).trailing_zeros() as usize;
        mask ^= &basis.cuts[flipped].mask;
        prev_gray = gray;
        out.push(Cut {
            mask: mask.clone(),
            index: gray,
        });
    }
    out.sort_by_key(|c| c.index);
    Ok(out)
}

/// A partition of the machines into non-empty cells, numbered by their
/// lowest machine, ascending.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    cell_of: Vec<usize>,
    cells: Vec<Vec<usize>>,
}

impl Partition {
    /// Canonicalizes an arbitrary labelling; labels need not be contiguous.
    pub fn from_labels<L: Copy + Eq + std::hash::Hash>(labels: &[L]) -> Self {
        let mut remap = std::collections::HashMap::new();
        let mut cell_of = Vec::with_capacity(labels.len());
        let mut cells: Vec<Vec<usize>> = Vec::new();
        for (machine, l) in labels.iter().enumerate() {
            let id = *remap.entry(*l).or_insert_with(|| {
                cells.push(Vec::new());
                cells.len() - 1
            });
            cells[id].push(machine);
            cell_of.push(id);
        }
        Self { cell_of, cells }
    }

    /// From explicit cells (0-based machines). Panics if they do not
    /// partition `0..machine_count`.
    pub fn from_cells(machine_count: usize, cells: &[Vec<usize>]) -> Self {
        let mut labels = vec![usize::MAX; machine_count];
        for (c, cell) in cells.iter().enumerate() {
            assert!(!cell.is_empty(), "empty cell");
            for &m in cell {
                assert!(labels[m] == usize::MAX, "machine {m} in two cells");
                labels[m] = c;
            }
        }
        assert!(labels.iter().all(|&l| l != usize::MAX), "cells do not cover all machines");
        Self::from_labels(&labels)
    }

    pub(crate) fn from_canonical_labels(cell_of: Vec<usize>) -> Self {
        let count = cell_of.iter().copied().max().map_or(0, |c| c + 1);
        let mut cells = vec![Vec::new(); count];
        for (machine, &c) in cell_of.iter().enumerate() {
            cells[c].push(machine);
        }
        Self { cell_of, cells }
    }

    pub fn cell_of(&self, machine: usize) -> usize {
        self.cell_of[machine]
    }

    pub fn labels(&self) -> &[usize] {
        &self.cell_of
    }

    pub fn cells(&self) -> &[Vec<usize>] {
        &self.cells
    }

    pub fn cell_count(&self) -> usize {
        self.cells.len()
    }

    pub fn machine_count(&self) -> usize {
        self.cell_of.len()
    }

    pub fn same_cell(&self, a: usize, b: usize) -> bool {
        self.cell_of[a] == self.cell_of[b]
    }

    /// Cells as 1-based machine lists, the form used in reports.
    pub fn to_one_based(&self) -> Vec<Vec<usize>> {
        self.cells
            .iter()
            .map(|c| c.iter().map(|m| m + 1).collect())
            .collect()
    }

    /// Edges whose endpoints lie in different cells.
    pub fn boundary_mask(&self, g: &FlowGraph) -> EdgeMask {
        let mut mask = EdgeMask::zeros(g.edge_count());
        for (i, e) in g.edges().iter().enumerate() {
            if !self.same_cell(e.a, e.b) {
                mask.set(i, true);
            }
        }
        mask
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, cell) in self.cells.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str("{")?;
            for (j, m) in cell.iter().enumerate() {
                if j > 0 {
                    f.write_str(",")?;
                }
                write!(f, "M{}", m + 1)?;
            }
            f.write_str("}")?;
        }
        f.write_str("}")
    }
}

/// Connected components of the graph after deleting the marked edges.
pub fn decode_partition(g: &FlowGraph, intercellular: &EdgeMask) -> Partition {
    assert_eq!(intercellular.len(), g.edge_count(), "mask length mismatch");
    let mut dsu = DisjointSet::new(g.vertex_count());
    for (i, e) in g.edges().iter().enumerate() {
        if !intercellular.get(i) {
            dsu.union(e.a, e.b);
        }
    }
    Partition::from_canonical_labels(dsu.canonical_labels())
}
