//! The acceptance checks, each reporting pass or fail with a short detail.

use std::collections::BTreeSet;

use cospec_core::canon::{canonical_form, is_isomorphic};
use cospec_core::census::run_census;
use cospec_core::construct::{
    assemble, certify_pair, decomposition_check_theorem1, search_pieces, Blueprint, CertifiedPair, SearchMode,
    SwapPiece,
};
use cospec_core::families::{
    exponential_family_atd, exponential_family_nl, first_asymmetric_graph, fuzzy_ball, inflated_star, partitions,
    star_forest_piece, Partition, WidgetChoice,
};
use cospec_core::linalg::{det, pencil_charpoly};
use cospec_core::spectra::{
    a_plus_td, are_cospectral, degree_matrix, laplacian_matrix, spectral_key, MatrixKind, SpectralKey,
};
use cospec_core::{Graph, VertexSet};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::properties::{self as props, INSTANCES};

/// Graphs with a cospectral mate for orders 1 to 8, in `MatrixKind::CLASSICAL` order.
pub const TABLE: [[usize; 8]; 4] = [
    [0, 0, 0, 0, 2, 10, 110, 1722],
    [0, 0, 0, 0, 0, 4, 130, 1767],
    [0, 0, 0, 2, 4, 16, 102, 1201],
    [0, 0, 0, 2, 4, 14, 52, 201],
];

pub const GRAPH_COUNTS: [usize; 8] = [1, 2, 4, 11, 34, 156, 1044, 12346];

pub const CHECK_COUNT: usize = 9;

#[derive(Clone, Copy, Debug, Default)]
pub struct VerifyOptions {
    /// Stop the census at order 7 and sample the `A + tD` family.
    pub fast: bool,
    /// Break the star pair certificate, which must make check 2 fail.
    pub corrupt_certificate: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckOutcome {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl CheckOutcome {
    pub fn line(&self) -> String {
        format!("[{}] {}. {}: {}", if self.passed { "PASS" } else { "FAIL" }, self.id, self.name, self.detail)
    }
}

type Outcome = Result<String, String>;

type Property<'a> = (&'a str, &'a dyn Fn(&mut ChaCha8Rng) -> bool);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

pub fn check_name(id: usize) -> &'static str {
    match id {
        1 => "census table",
        2 => "normalized Laplacian swap",
        3 => "eigenvalue transfer",
        4 => "biregular swap",
        5 => "determinant identity",
        6 => "fuzzy balls and inflated stars",
        7 => "exponential families",
        8 => "negative controls",
        9 => "property suites",
        _ => "unknown",
    }
}

pub fn run_check(id: usize, opts: &VerifyOptions) -> CheckOutcome {
    let result = match id {
        1 => census_table(opts),
        2 => star_swap(opts),
        3 => eigenvalue_transfer(),
        4 => biregular_swap(),
        5 => determinant_identity(),
        6 => partition_families(),
        7 => exponential_families(opts),
        8 => negative_controls(),
        9 => property_suites(),
        _ => Err(format!("no check {id}")),
    };
    let (passed, detail) = match result {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    CheckOutcome { id, name: check_name(id), passed, detail }
}

pub fn run_all(opts: &VerifyOptions) -> Vec<CheckOutcome> {
    (1..=CHECK_COUNT).map(|id| run_check(id, opts)).collect()
}

fn census_table(opts: &VerifyOptions) -> Outcome {
    let max_n = if opts.fast { 7 } else { 8 };
    for n in 1..=max_n {
        for (row, kind) in MatrixKind::CLASSICAL.into_iter().enumerate() {
            let r = run_census(n, kind);
            ensure(r.total_graphs == GRAPH_COUNTS[n - 1], || format!("{} graphs on {n} vertices", r.total_graphs))?;
            ensure(r.with_mate == TABLE[row][n - 1], || {
                format!("{kind} on {n} vertices: {} with a mate, expected {}", r.with_mate, TABLE[row][n - 1])
            })?;
        }
    }
    Ok(format!("orders 1..{max_n}, all four kinds exact"))
}

fn hub(b: usize, clique: bool) -> Blueprint {
    Blueprint::new(Graph::empty(1).expect("order 1"), VertexSet::from_mask(1), b, clique).expect("valid blueprint")
}

/// Leaves of `K_{1,a}` and `K_{1,b}` as `B`, centres as `C`.
pub fn star_piece(a: usize, b: usize) -> SwapPiece {
    let parts = if a >= b { vec![a, b] } else { vec![b, a] };
    star_forest_piece(&Partition::new(parts).expect("partition")).expect("piece")
}

fn star_swap(opts: &VerifyOptions) -> Outcome {
    let (p1, p2) = (star_piece(1, 6), star_piece(4, 3));
    let mut cert = certify_pair(&p1, &p2).map_err(|e| e.to_string())?;
    if opts.corrupt_certificate {
        cert.dim_b_eigenspace_1.1 += 1;
    }
    ensure(cert.dim_b_eigenspace_1 == (5, 5), || format!("eigenvalue-1 dimensions {:?}", cert.dim_b_eigenspace_1))?;
    for clique in [false, true] {
        cert.check_theorem1(clique).map_err(|e| e.to_string())?;
        let bp = hub(7, clique);
        let g1 = assemble(&bp, &p1).map_err(|e| e.to_string())?;
        let g2 = assemble(&bp, &p2).map_err(|e| e.to_string())?;
        let k1 = spectral_key(&g1, MatrixKind::NormalizedLaplacian);
        ensure(k1 == spectral_key(&g2, MatrixKind::NormalizedLaplacian), || format!("keys differ (clique {clique})"))?;
        ensure(!is_isomorphic(&g1, &g2), || format!("assemblies isomorphic (clique {clique})"))?;
    }
    Ok("10-vertex pair equal keys and non-isomorphic, with and without a clique on B, dims (5, 5)".to_string())
}

pub fn random_blueprint(rng: &mut ChaCha8Rng, b: usize, clique_allowed: bool) -> Blueprint {
    let n = rng.random_range(0..=5);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(0.5) {
                edges.push((u, v));
            }
        }
    }
    let core = Graph::from_edges(n, &edges).expect("valid edges");
    let a_prime: VertexSet = (0..n).filter(|_| rng.random_bool(0.5)).collect();
    let clique = clique_allowed && rng.random_bool(0.5);
    Blueprint::new(core, a_prime, b, clique).expect("valid blueprint")
}

fn eigenvalue_transfer() -> Outcome {
    let pairs = search_pieces(9, SearchMode::NL);
    ensure(!pairs.is_empty(), || "no certified pairs on at most 9 vertices".to_string())?;
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for pair in &pairs {
        let clique_allowed = pair.certificate.check_theorem1(true).is_ok();
        for _ in 0..20 {
            let bp = random_blueprint(&mut rng, pair.p1.b().len(), clique_allowed);
            let ok = decomposition_check_theorem1(&bp, &pair.p1, &pair.p2).map_err(|e| e.to_string())?;
            ensure(ok, || "spectrum does not split into predicted values and a shared remainder".to_string())?;
        }
    }
    Ok(format!("{} pairs x 20 blueprints within 1e-7", pairs.len()))
}

fn sorted_degrees(g: &Graph) -> Vec<usize> {
    let mut d = g.degrees();
    d.sort_unstable();
    d
}

fn same_spectra(g1: &Graph, g2: &Graph) -> Result<(), String> {
    for kind in MatrixKind::ALL {
        ensure(spectral_key(g1, kind) == spectral_key(g2, kind), || format!("{kind} keys differ"))?;
    }
    ensure(sorted_degrees(g1) == sorted_degrees(g2), || "degree sequences differ".to_string())
}

/// The first self-piece pair among biregular pieces on at most 12 vertices.
pub fn self_piece_widget() -> Option<CertifiedPair> {
    search_pieces(12, SearchMode::Biregular).into_iter().find(|p| p.self_pair)
}

fn biregular_swap() -> Outcome {
    let pairs = search_pieces(12, SearchMode::Biregular);
    ensure(!pairs.is_empty(), || "no certified biregular pairs".to_string())?;
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut self_non_isomorphic = false;
    for pair in &pairs {
        pair.certificate.check_theorem2().map_err(|e| e.to_string())?;
        let b = pair.p1.b().len();
        let mut blueprints = vec![hub(b, false), hub(b, true)];
        blueprints.extend((0..3).map(|_| random_blueprint(&mut rng, b, true)));
        for bp in &blueprints {
            let g1 = assemble(bp, &pair.p1).map_err(|e| e.to_string())?;
            let g2 = assemble(bp, &pair.p2).map_err(|e| e.to_string())?;
            same_spectra(&g1, &g2)?;
        }
        if pair.self_pair {
            let g1 = assemble(&hub(b, false), &pair.p1).map_err(|e| e.to_string())?;
            let g2 = assemble(&hub(b, false), &pair.p2).map_err(|e| e.to_string())?;
            self_non_isomorphic |= !is_isomorphic(&g1, &g2);
        }
    }
    ensure(self_non_isomorphic, || "no self-piece pair gives non-isomorphic assemblies".to_string())?;
    let mut complement_pair = false;
    for pair in pairs.iter().filter(|p| p.self_pair) {
        let bare = Blueprint::new(Graph::empty(0).expect("order 0"), VertexSet::EMPTY, pair.p1.b().len(), true)
            .expect("valid blueprint");
        let h1 = assemble(&bare, &pair.p1).map_err(|e| e.to_string())?;
        let h2 = assemble(&bare, &pair.p2).map_err(|e| e.to_string())?;
        complement_pair |= is_isomorphic(&h1.complement(), &h2) && !is_isomorphic(&h1, &h2);
    }
    ensure(complement_pair, || "no complement-cospectral pair with an empty core and a clique on B".to_string())?;
    Ok(format!(
        "certified pairs: {}, all kinds equal on 5 blueprints each; self-piece non-isomorphic; complement-cospectral pair found",
        pairs.len()
    ))
}

fn determinant_identity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..100 {
        let g = props::random_graph_without_isolated(&mut rng, 2, 10);
        let prod: BigInt = g.degrees().iter().map(|&d| BigInt::from(d)).product();
        let SpectralKey::NormalizedLaplacian { isolated: 0, poly } = spectral_key(&g, MatrixKind::NormalizedLaplacian)
        else {
            return Err("normalized key with isolated vertices".to_string());
        };
        let pencil = pencil_charpoly(&laplacian_matrix(&g), &degree_matrix(&g));
        ensure(pencil.leading() == Some(&prod), || "pencil leading coefficient is not the degree product".to_string())?;
        for lambda in -2i64..=2 {
            let lhs = det(&a_plus_td(&g, -lambda - 1));
            let at = BigInt::from(-lambda);
            ensure(lhs == pencil.eval(&at), || format!("pencil route fails at {lambda}"))?;
            let lead = poly.leading().expect("nonzero");
            ensure(&lhs * lead == &prod * poly.eval(&at), || format!("key route fails at {lambda}"))?;
        }
    }
    Ok("100 graphs x 5 values, exact by two routes".to_string())
}

fn family_ok(graphs: &[Graph]) -> bool {
    let key = spectral_key(&graphs[0], MatrixKind::NormalizedLaplacian);
    let forms: BTreeSet<_> = graphs.iter().map(canonical_form).collect();
    graphs.iter().all(|g| spectral_key(g, MatrixKind::NormalizedLaplacian) == key) && forms.len() == graphs.len()
}

fn partition_families() -> Outcome {
    let mut members = 0;
    for n in 1..=8 {
        for k in 1..=n {
            let parts: Vec<Partition> = partitions(n, k).map_err(|e| e.to_string())?.collect();
            let fb: Vec<Graph> = parts.iter().map(fuzzy_ball).collect::<Result<_, _>>().map_err(|e| e.to_string())?;
            let is: Vec<Graph> =
                parts.iter().map(inflated_star).collect::<Result<_, _>>().map_err(|e| e.to_string())?;
            ensure(family_ok(&fb), || format!("fuzzy balls ({n}, {k})"))?;
            ensure(family_ok(&is), || format!("inflated stars ({n}, {k})"))?;
            members += fb.len() + is.len();
        }
    }
    let count = partitions(21, 5).map_err(|e| e.to_string())?.count();
    ensure(count == 101, || format!("partitions(21, 5) gave {count}"))?;
    Ok(format!("{members} members over n <= 8; partitions(21, 5) = 101"))
}

fn family_members(
    base: &Graph,
    build: impl Fn(&WidgetChoice) -> cospec_core::Result<Graph>,
) -> Result<Vec<Graph>, String> {
    let len = base.order();
    (0..1u64 << len).map(|i| build(&WidgetChoice::from_index(i, len)).map_err(|e| e.to_string())).collect()
}

fn exponential_families(opts: &VerifyOptions) -> Outcome {
    let base = first_asymmetric_graph(6).ok_or("no asymmetric graph on 6 vertices")?;
    let nl = family_members(&base, |c| exponential_family_nl(&base, c))?;
    ensure(family_ok(&nl), || "normalized Laplacian family".to_string())?;

    let widget = self_piece_widget().ok_or("no self-piece widget")?;
    let atd = family_members(&base, |c| exponential_family_atd(&base, c, &widget))?;
    let forms: BTreeSet<_> = atd.iter().map(canonical_form).collect();
    ensure(forms.len() == 64, || format!("{} distinct A+tD members", forms.len()))?;
    let checked: Vec<&Graph> =
        if opts.fast { [0, 63, 1, 2, 4, 8, 16, 32].iter().map(|&i| &atd[i]).collect() } else { atd.iter().collect() };
    let key = spectral_key(checked[0], MatrixKind::AdjacencyPlusTD);
    for g in &checked[1..] {
        ensure(spectral_key(g, MatrixKind::AdjacencyPlusTD) == key, || "A+tD keys differ".to_string())?;
    }
    Ok(format!(
        "64 + 64 members of orders {} and {}, distinct forms, {} A+tD keys compared",
        nl[0].order(),
        atd[0].order(),
        checked.len()
    ))
}

fn negative_controls() -> Outcome {
    let star = Graph::star(4).expect("star");
    let c4_k1 = Graph::cycle(4).expect("cycle").disjoint_union(&Graph::empty(1).expect("K1")).expect("union");
    ensure(are_cospectral(&star, &c4_k1, MatrixKind::Adjacency), || "saltire pair not A-cospectral".to_string())?;
    for kind in [MatrixKind::Laplacian, MatrixKind::SignlessLaplacian, MatrixKind::NormalizedLaplacian] {
        ensure(!are_cospectral(&star, &c4_k1, kind), || format!("saltire pair {kind}-cospectral"))?;
    }
    let c4 = Graph::cycle(4).expect("cycle");
    let k13 = Graph::star(3).expect("star");
    ensure(are_cospectral(&c4, &k13, MatrixKind::NormalizedLaplacian), || "C4, K13 not NL-cospectral".to_string())?;
    for kind in [MatrixKind::Adjacency, MatrixKind::Laplacian, MatrixKind::SignlessLaplacian] {
        ensure(!are_cospectral(&c4, &k13, kind), || format!("C4, K13 {kind}-cospectral"))?;
    }
    Ok("saltire: A only; C4 and K13: NL only".to_string())
}

fn property_suites() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let suites: [Property; 9] = [
        ("regular side, eigenvalue 1 splits", &|r| {
            props::regular_side_eigenvalue_one_splits(&props::random_regular_side_piece(r, 5))
        }),
        ("regular side, reflection", &|r| props::regular_side_reflection(&props::random_regular_side_piece(r, 5))),
        ("regular side, interior balance", &|r| {
            props::regular_side_interior_balance(&props::random_regular_side_piece(r, 5))
        }),
        ("biregular, eigenvalue 0 splits", &|r| {
            props::biregular_eigenvalue_zero_splits(&props::random_biregular_piece(r))
        }),
        ("biregular, reflection", &|r| props::biregular_reflection(&props::random_biregular_piece(r))),
        ("biregular, interior balance", &|r| props::biregular_interior_balance(&props::random_biregular_piece(r))),
        ("harmonic relation", &|r| props::harmonic_relation(&props::random_graph_without_isolated(r, 2, 10))),
        ("A + tD relation", &|r| {
            let g = props::random_graph(r, 1, 9);
            let (num, den) = (r.random_range(-6..=6), r.random_range(1..=4));
            props::pencil_relation(&g, num, den)
        }),
        ("bipartite symmetries", &|r| props::bipartite_symmetries(&props::random_bipartite(r, 5))),
    ];
    for (name, check) in suites {
        for i in 0..INSTANCES {
            ensure(check(&mut rng), || format!("{name} fails on instance {i}"))?;
        }
    }
    Ok(format!("9 suites x {INSTANCES} instances at 1e-9"))
}
