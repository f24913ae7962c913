mod common;

use std::collections::BTreeSet;

use cospec_core::canon::{canonical_form, has_trivial_automorphism_group};
use cospec_core::construct::{assemble, search_pieces, theorem2_pair, Blueprint, SearchMode};
use cospec_core::families::{
    exponential_family_atd, exponential_family_nl, first_asymmetric_graph, fuzzy_ball, inflated_star, partitions,
    star_forest_piece, Partition, WidgetChoice,
};
use cospec_core::spectra::{spectral_key, MatrixKind};
use cospec_core::{is_isomorphic, Error, Graph, VertexSet};

/// Partitions of `n` into `k` parts by brute force over all k-tuples.
fn partition_oracle(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, k: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == 0 {
            if n == 0 {
                out.push(prefix.clone());
            }
            return;
        }
        for part in (1..=max.min(n)).rev() {
            prefix.push(part);
            rec(n - part, k - 1, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, k, n, &mut Vec::new(), &mut out);
    out
}

fn all_same_key(graphs: &[Graph], kind: MatrixKind) -> bool {
    graphs.windows(2).all(|w| spectral_key(&w[0], kind) == spectral_key(&w[1], kind))
}

fn distinct_forms(graphs: &[Graph]) -> usize {
    graphs.iter().map(canonical_form).collect::<BTreeSet<_>>().len()
}

#[test]
fn partitions_match_oracle() {
    for n in 1..=14 {
        for k in 1..=n {
            let got: Vec<Vec<usize>> = partitions(n, k).unwrap().map(|p| p.parts().to_vec()).collect();
            assert_eq!(got, partition_oracle(n, k), "({n}, {k})");
        }
    }
    assert_eq!(partitions(21, 5).unwrap().count(), 101);
    assert!(matches!(partitions(2, 3), Err(Error::PartitionRange { n: 2, k: 3 })));
}

#[test]
fn fuzzy_balls_are_cospectral_families() {
    for n in 1..=9 {
        for k in 1..=n {
            let graphs: Vec<Graph> = partitions(n, k).unwrap().map(|p| fuzzy_ball(&p).unwrap()).collect();
            assert!(all_same_key(&graphs, MatrixKind::NormalizedLaplacian), "({n}, {k})");
            assert_eq!(distinct_forms(&graphs), graphs.len());
            assert!(graphs.iter().all(|g| g.order() == n + k));
        }
    }
}

#[test]
fn inflated_stars_are_cospectral_families() {
    for n in 1..=8 {
        for k in 1..=n {
            let graphs: Vec<Graph> = partitions(n, k).unwrap().map(|p| inflated_star(&p).unwrap()).collect();
            assert!(all_same_key(&graphs, MatrixKind::NormalizedLaplacian), "({n}, {k})");
            assert_eq!(distinct_forms(&graphs), graphs.len());
        }
    }
    let first = inflated_star(&Partition::new(vec![6, 1, 1]).unwrap()).unwrap();
    let other = inflated_star(&Partition::new(vec![3, 3, 2]).unwrap()).unwrap();
    assert_eq!(
        spectral_key(&first, MatrixKind::NormalizedLaplacian),
        spectral_key(&other, MatrixKind::NormalizedLaplacian)
    );
}

#[test]
fn reduction_steps_preserve_the_key() {
    // FB(m_1, ..., m_i, ...) and FB(m_1 + m_i - 1, ..., 1, ...)
    for p in partitions(9, 4).unwrap() {
        let parts = p.parts();
        for i in 1..parts.len() {
            let mut moved = parts.to_vec();
            moved[0] += parts[i] - 1;
            moved[i] = 1;
            moved.sort_unstable_by(|a, b| b.cmp(a));
            let q = Partition::new(moved).unwrap();
            assert_eq!(
                spectral_key(&fuzzy_ball(&p).unwrap(), MatrixKind::NormalizedLaplacian),
                spectral_key(&fuzzy_ball(&q).unwrap(), MatrixKind::NormalizedLaplacian)
            );
        }
    }
}

#[test]
fn members_are_assemblies() {
    for p in partitions(7, 3).unwrap() {
        let piece = star_forest_piece(&p).unwrap();
        let n = p.n();
        let ball = Blueprint::new(Graph::empty(0).unwrap(), VertexSet::EMPTY, n, true).unwrap();
        assert!(is_isomorphic(&assemble(&ball, &piece).unwrap(), &fuzzy_ball(&p).unwrap()));
        let star = Blueprint::new(Graph::empty(1).unwrap(), VertexSet::from_vertices([0]).unwrap(), n, false).unwrap();
        assert!(is_isomorphic(&assemble(&star, &piece).unwrap(), &inflated_star(&p).unwrap()));
    }
}

#[test]
fn nl_family_on_six_vertices() {
    let base = first_asymmetric_graph(6).unwrap();
    assert!(has_trivial_automorphism_group(&base));
    let members: Vec<Graph> =
        (0..64).map(|i| exponential_family_nl(&base, &WidgetChoice::from_index(i, 6)).unwrap()).collect();
    assert!(members.iter().all(|g| g.order() == 42));
    assert!(all_same_key(&members, MatrixKind::NormalizedLaplacian));
    assert_eq!(distinct_forms(&members), 64);
    assert!(first_asymmetric_graph(5).is_none());
}

#[test]
fn atd_family_on_six_vertices() {
    let widget = search_pieces(12, SearchMode::Biregular).into_iter().find(|p| p.self_pair).unwrap();
    let base = first_asymmetric_graph(6).unwrap();
    let members: Vec<Graph> =
        (0..64).map(|i| exponential_family_atd(&base, &WidgetChoice::from_index(i, 6), &widget).unwrap()).collect();
    assert!(members.iter().all(|g| g.order() == 78));
    assert_eq!(distinct_forms(&members), 64);
    // all-clear, all-set and every single-bit flip of all-clear
    let sample: Vec<Graph> = [0, 63, 1, 2, 4, 8, 16, 32].iter().map(|&i| members[i].clone()).collect();
    assert!(all_same_key(&sample, MatrixKind::AdjacencyPlusTD));

    let k1 = Graph::empty(1).unwrap();
    let single = |bit| exponential_family_atd(&k1, &WidgetChoice::new(vec![bit]), &widget).unwrap();
    let hub = Blueprint::new(k1.clone(), VertexSet::from_vertices([0]).unwrap(), 6, false).unwrap();
    let (g1, g2) = theorem2_pair(&hub, &widget.p1, &widget.p2).unwrap();
    assert_eq!((single(false), single(true)), (g1, g2));

    let symmetric = Graph::cycle(6).unwrap();
    assert_eq!(
        exponential_family_atd(&symmetric, &WidgetChoice::new(vec![false; 6]), &widget),
        Err(Error::SymmetricBase)
    );
    let mut forged = widget.clone();
    forged.p2 = common::star_pieces(2, 4);
    assert!(exponential_family_atd(&base, &WidgetChoice::new(vec![false; 6]), &forged).is_err());
    // two disjoint K_{3,3}: same sizes and degrees, different adjacency spectrum
    let rows: Vec<Vec<usize>> = (0..6).map(|i| if i < 3 { vec![0, 1, 2] } else { vec![3, 4, 5] }).collect();
    forged.p2 = common::piece_from_rows(6, 6, &rows);
    assert!(matches!(
        exponential_family_atd(&base, &WidgetChoice::new(vec![false; 6]), &forged),
        Err(Error::CertificateFailed(_))
    ));
}
