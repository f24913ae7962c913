//! Grouping all graphs of one order by spectral key.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec::Vec;

use crate::canon::{canonical_form, CanonicalForm};
use crate::error::{Error, Result};
use crate::generate::generate_all;
use crate::graph::Graph;
use crate::graph6;
use crate::spectra::{spectral_key, MatrixKind, SpectralKey};

/// Graphs sharing one spectral key, as sorted canonical forms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusClass {
    pub key: SpectralKey,
    pub members: Vec<CanonicalForm>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusReport {
    pub n: usize,
    pub kind: MatrixKind,
    pub total_graphs: usize,
    /// Graphs sharing their key with at least one other graph.
    pub with_mate: usize,
    /// Classes of size at least two, in key order.
    pub classes: Vec<CensusClass>,
}

impl CensusReport {
    /// Number of unordered cospectral pairs.
    pub fn mate_pairs(&self) -> usize {
        self.classes.iter().map(|c| c.members.len() * (c.members.len() - 1) / 2).sum()
    }
}

/// Running state of a census. Accumulators over disjoint parts of the input
/// merge into the accumulator of the whole.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusAccumulator {
    n: usize,
    kind: MatrixKind,
    groups: BTreeMap<SpectralKey, BTreeSet<CanonicalForm>>,
}

impl CensusAccumulator {
    pub fn new(n: usize, kind: MatrixKind) -> Self {
        CensusAccumulator { n, kind, groups: BTreeMap::new() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn kind(&self) -> MatrixKind {
        self.kind
    }

    /// Adds a graph; an isomorphic copy of a graph already present is ignored.
    pub fn add(&mut self, g: &Graph) -> Result<()> {
        if g.order() != self.n {
            return Err(Error::CensusInput(format!("graph of order {} in a census of order {}", g.order(), self.n)));
        }
        let key = spectral_key(g, self.kind);
        self.insert(key, canonical_form(g));
        Ok(())
    }

    /// Adds a precomputed entry.
    pub fn insert(&mut self, key: SpectralKey, form: CanonicalForm) {
        self.groups.entry(key).or_default().insert(form);
    }

    pub fn merge(&mut self, other: CensusAccumulator) {
        for (key, forms) in other.groups {
            self.groups.entry(key).or_default().extend(forms);
        }
    }

    pub fn total(&self) -> usize {
        self.groups.values().map(BTreeSet::len).sum()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&SpectralKey, &CanonicalForm)> {
        self.groups.iter().flat_map(|(k, forms)| forms.iter().map(move |f| (k, f)))
    }

    pub fn finish(self) -> CensusReport {
        let total_graphs = self.total();
        let classes: Vec<CensusClass> = self
            .groups
            .into_iter()
            .filter(|(_, forms)| forms.len() >= 2)
            .map(|(key, forms)| CensusClass { key, members: forms.into_iter().collect() })
            .collect();
        CensusReport {
            n: self.n,
            kind: self.kind,
            total_graphs,
            with_mate: classes.iter().map(|c| c.members.len()).sum(),
            classes,
        }
    }
}

/// Census over all graphs of order `n`, generated internally.
pub fn run_census(n: usize, kind: MatrixKind) -> CensusReport {
    let mut acc = CensusAccumulator::new(n, kind);
    for g in generate_all(n) {
        acc.add(&g).expect("generated graphs have order n");
    }
    acc.finish()
}

/// Census over the given graphs of order `n`.
pub fn run_census_from<I: IntoIterator<Item = Graph>>(n: usize, kind: MatrixKind, graphs: I) -> Result<CensusReport> {
    let mut acc = CensusAccumulator::new(n, kind);
    for g in graphs {
        acc.add(&g)?;
    }
    Ok(acc.finish())
}

/// Normalized Laplacian cospectral pairs on every order up to `n`, each
/// pair in class order.
fn nl_pairs(n: usize) -> Vec<(Graph, Graph)> {
    let mut out = Vec::new();
    for m in 1..=n {
        for class in run_census(m, MatrixKind::NormalizedLaplacian).classes {
            let graphs: Vec<Graph> =
                class.members.iter().map(|f| graph6::decode(f.as_str()).expect("canonical forms are graph6")).collect();
            for i in 0..graphs.len() {
                for j in i + 1..graphs.len() {
                    out.push((graphs[i].clone(), graphs[j].clone()));
                }
            }
        }
    }
    out
}

/// Normalized Laplacian cospectral pairs `(g1, g2)` on at most `n` vertices
/// where `g2` is a spanning subgraph of `g1` with fewer edges.
pub fn find_subgraph_cospectral_pairs(n: usize) -> Vec<(Graph, Graph)> {
    nl_pairs(n)
        .into_iter()
        .filter_map(|(a, b)| {
            let (big, small) = if a.edge_count() >= b.edge_count() { (a, b) } else { (b, a) };
            (big.edge_count() > small.edge_count() && is_spanning_subgraph(&small, &big)).then_some((big, small))
        })
        .collect()
}

/// Normalized Laplacian cospectral pairs on at most `n` vertices with
/// different numbers of edges.
pub fn find_unequal_edge_pairs(n: usize) -> Vec<(Graph, Graph)> {
    nl_pairs(n).into_iter().filter(|(a, b)| a.edge_count() != b.edge_count()).collect()
}

/// Normalized Laplacian cospectral pairs on at most `n` vertices with exactly
/// one regular member, the regular one first.
pub fn find_regular_nonregular_pairs(n: usize) -> Vec<(Graph, Graph)> {
    nl_pairs(n)
        .into_iter()
        .filter_map(|(a, b)| match (a.is_regular(), b.is_regular()) {
            (true, false) => Some((a, b)),
            (false, true) => Some((b, a)),
            _ => None,
        })
        .collect()
}

/// Whether some bijection maps every edge of `small` onto an edge of `big`.
pub fn is_spanning_subgraph(small: &Graph, big: &Graph) -> bool {
    let n = small.order();
    if n != big.order() || small.edge_count() > big.edge_count() {
        return false;
    }
    // place high-degree vertices of `small` first
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| core::cmp::Reverse(small.degree(v)));
    let mut image = alloc::vec![usize::MAX; n];
    let mut used = 0u128;
    embed(small, big, &order, 0, &mut image, &mut used)
}

fn embed(small: &Graph, big: &Graph, order: &[usize], depth: usize, image: &mut [usize], used: &mut u128) -> bool {
    let Some(&v) = order.get(depth) else { return true };
    for w in 0..big.order() {
        if *used >> w & 1 == 1 || big.degree(w) < small.degree(v) {
            continue;
        }
        let fits = small.neighbors(v).iter().all(|u| image[u] == usize::MAX || big.has_edge(w, image[u]));
        if !fits {
            continue;
        }
        image[v] = w;
        *used |= 1 << w;
        if embed(small, big, order, depth + 1, image, used) {
            return true;
        }
        *used &= !(1 << w);
        image[v] = usize::MAX;
    }
    false
}
