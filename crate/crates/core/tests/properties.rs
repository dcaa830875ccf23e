use proptest::prelude::*;
use trace_lab_core::binomials::{binom_real, invert_binomial, mu};
use trace_lab_core::construct::{build_sparse_kk_extremal, build_trace_ub_family, ConstructionSpec};
use trace_lab_core::decompose::{collect_link_shadow_lower, heavy_vertices};
use trace_lab_core::hypergraph::enumerate::binomial_u128;
use trace_lab_core::hypergraph::{
    downward_closure, find_separating_subset, induced, shadow, shadow_size, trace_onto, trace_size, trace_value,
    vc_dimension, wp,
};
use trace_lab_core::oracle::{
    codegree_exact, shadow_exact, tau_exact, trace_exact, trace_value_exact, wp_exact, OracleBudget,
};
use trace_lab_core::{Hypergraph, VertexSet};

/// A family on `n <= max_n` vertices given by edge bitmasks.
fn family(max_n: usize, max_m: usize) -> impl Strategy<Value = Hypergraph> {
    (1..=max_n).prop_flat_map(move |n| {
        prop::collection::vec(0u64..1 << n, 0..=max_m)
            .prop_map(move |words| Hypergraph::from_words(n, &words).unwrap())
    })
}

/// A non-empty `k`-graph on `n <= max_n` vertices.
fn uniform_family(max_n: usize) -> impl Strategy<Value = (Hypergraph, usize)> {
    (2..=max_n)
        .prop_flat_map(|n| (Just(n), 1..=n.min(4)))
        .prop_flat_map(|(n, k)| {
            let all = Hypergraph::complete(n, k);
            let count = all.len();
            prop::collection::vec(0..count, 1..=count.min(40)).prop_map(move |picks| {
                let f = Hypergraph::new(n, picks.iter().map(|&j| all.edges()[j].clone())).unwrap();
                (f, k)
            })
        })
}

/// Family plus two nested windows `inner ⊆ outer`.
fn nested_windows() -> impl Strategy<Value = (Hypergraph, VertexSet, VertexSet)> {
    family(9, 30).prop_flat_map(|f| {
        let n = f.n();
        (Just(f), 0u64..1 << n, 0u64..1 << n).prop_map(|(f, a, b)| {
            let outer = VertexSet::from_word(a | b);
            let inner = VertexSet::from_word(a);
            (f, inner, outer)
        })
    })
}

fn vertices(set: &VertexSet) -> Vec<usize> {
    set.iter().collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn trace_monotone_in_window((f, inner, outer) in nested_windows()) {
        prop_assert!(trace_size(&f, &inner).unwrap() <= trace_size(&f, &outer).unwrap());
    }

    #[test]
    fn full_window_trace_is_family_size(f in family(10, 40)) {
        prop_assert_eq!(trace_value(&f, f.n()).unwrap(), f.len() as u64);
    }

    #[test]
    fn induced_edges_inject_into_trace((f, window, _) in nested_windows()) {
        prop_assert!(induced(&f, &window).unwrap().len() <= trace_size(&f, &window).unwrap());
    }

    #[test]
    fn shadows_nest((f, k) in uniform_family(8)) {
        for j in 0..=k {
            let upper = shadow(&f, j);
            for i in 0..=j {
                for s in shadow(&f, i) {
                    prop_assert!(upper.iter().any(|t| s.is_subset(t)));
                }
            }
        }
    }

    #[test]
    fn kruskal_katona_floor((f, k) in uniform_family(10)) {
        let y = invert_binomial(f.len() as f64, k).unwrap();
        for i in 0..=k {
            prop_assert!(shadow_size(&f, i) as f64 >= binom_real(y, i) - 1e-9);
        }
    }

    #[test]
    fn closure_idempotent_and_monotone(f in family(7, 12), extra in prop::collection::vec(0u64..128, 0..6)) {
        let c = downward_closure(&f).unwrap();
        prop_assert!(c.is_down_closed());
        prop_assert_eq!(&downward_closure(&c).unwrap(), &c);
        let mut words: Vec<u64> = f.edges().iter().map(|e| e.as_word().unwrap()).collect();
        words.extend(extra.iter().map(|w| w & ((1 << f.n()) - 1)));
        let bigger = downward_closure(&Hypergraph::from_words(f.n(), &words).unwrap()).unwrap();
        prop_assert!(c.edges().iter().all(|e| bigger.contains_edge(e)));
    }

    #[test]
    fn vc_matches_shatter_function(f in family(8, 30)) {
        let expected = (0..=f.n()).rev().find(|&k| trace_value(&f, k).unwrap() == 1 << k);
        prop_assert_eq!(vc_dimension(&f).unwrap(), expected);
    }

    #[test]
    fn separating_projections_distinct(f in family(10, 30), size in 0usize..=10, seed in any::<u64>()) {
        let size = size.min(f.n());
        let s = find_separating_subset(&f, size, 20, seed).unwrap();
        prop_assert_eq!(s.window.len(), size);
        let mut proj: Vec<VertexSet> =
            s.representatives.iter().map(|&j| f.edges()[j].intersection(&s.window)).collect();
        let total = proj.len();
        proj.sort();
        proj.dedup();
        prop_assert_eq!(proj.len(), total);
        prop_assert_eq!(total, trace_size(&f, &s.window).unwrap());
    }

    #[test]
    fn matches_naive_oracle(f in family(9, 25), k in 0usize..=9, seed in any::<u64>()) {
        let k = k.min(f.n());
        prop_assert_eq!(trace_value(&f, k).unwrap(), trace_value_exact(&f, k).unwrap() as u64);
        prop_assert_eq!(shadow_size(&f, k), shadow_exact(&f, k).unwrap());
        prop_assert_eq!(wp(&f, k).unwrap(), wp_exact(&f, k).unwrap() as u64);
        let window: Vec<usize> = (0..f.n()).filter(|v| seed >> v & 1 == 1).collect();
        let w = VertexSet::from_vertices(window.iter().copied());
        prop_assert_eq!(trace_size(&f, &w).unwrap(), trace_exact(&f, &window).unwrap());
        prop_assert_eq!(trace_onto(&f, &w).unwrap().len(), trace_exact(&f, &vertices(&w)).unwrap());
        prop_assert_eq!(f.codegree(&w), codegree_exact(&f, &window).unwrap());
    }

    #[test]
    fn heavy_vertices_when_sparse((f, _) in uniform_family(10), i in 1usize..=10) {
        let i = i.min(f.n());
        if wp(&f, i).unwrap() as f64 <= f.len() as f64 / 2.0 {
            prop_assert!(heavy_vertices(&f, i).unwrap().len() > i);
        }
    }

    #[test]
    fn link_shadow_bound_below_truth((f, k) in uniform_family(9), t in 0usize..=4, i in 0usize..=4) {
        if t <= i && i <= k {
            let bound = collect_link_shadow_lower(&f, t, i).unwrap();
            prop_assert!(bound <= shadow_exact(&f, i).unwrap() as f64 + 1e-9);
        }
    }

    #[test]
    fn inverse_binomial_round_trip(k in 1usize..=8, frac in 0.0f64..1.0) {
        let y = k as f64 + frac * (1e6 - k as f64);
        let back = invert_binomial(binom_real(y, k), k).unwrap();
        prop_assert!((back - y).abs() <= 1e-6 * y, "y = {}, back = {}", y, back);
    }

    #[test]
    fn mu_increasing(r in 1.0f64..4.0, dr in 1e-3f64..1.0, alpha in 0.01f64..0.99, da in 1e-3f64..0.5) {
        prop_assert!(mu(r + dr, alpha).unwrap() > mu(r, alpha).unwrap());
        let a2 = (alpha + da).min(1.0);
        if r > 1.0 {
            prop_assert!(mu(r, a2).unwrap() > mu(r, alpha).unwrap());
        }
    }
}

#[test]
fn real_binomial_matches_integers() {
    for y in 0..=60u64 {
        for i in 0..=y as usize {
            let exact = binomial_u128(y, i as u64) as f64;
            let got = binom_real(y as f64, i);
            assert!((got - exact).abs() <= 1e-13 * exact, "C({y}, {i}) = {got}, exact {exact}");
        }
    }
}

#[test]
fn mu_flat_in_alpha_at_r_one() {
    for alpha in [0.05, 0.3, 0.5, 0.9, 1.0] {
        assert!((mu(1.0, alpha).unwrap() - 1.0).abs() < 1e-12);
    }
}

#[test]
fn tau_monotone_in_window_and_size() {
    let budget = OracleBudget::default();
    for n in 1..=4usize {
        let mut prev_row: Option<Vec<u64>> = None;
        for m in 1..=1usize << n {
            let row: Vec<u64> = (0..=n).map(|k| tau_exact(n, m, k, &budget).unwrap()).collect();
            assert!(row.windows(2).all(|w| w[0] <= w[1]), "n={n} m={m}: {row:?}");
            if let Some(prev) = &prev_row {
                assert!(prev.iter().zip(&row).all(|(a, b)| a <= b), "n={n} m={m}");
            }
            prev_row = Some(row);
        }
    }
}

#[test]
fn constructions_ignore_thread_count() {
    let sparse = ConstructionSpec::sparse_kk(4096, 1.2, 0.5, 4, 8).with_seed(11).relaxed(true);
    let power = ConstructionSpec::trace_ub(1024, 2.0, 0.5).with_seed(11);
    let run = |threads: usize| {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        pool.install(|| {
            let a = build_sparse_kk_extremal(&sparse).unwrap();
            let b = build_trace_ub_family(&power).unwrap();
            let stats = b.sample_trace_statistics(500, 3).unwrap();
            (a.family, a.intersection_histogram, b.family().sets().to_vec(), stats)
        })
    };
    assert_eq!(run(1), run(4));
}

#[test]
fn sparse_kk_cliques_disjoint_under_e1() {
    for seed in 0..20 {
        let spec = ConstructionSpec::sparse_kk(2048, 1.2, 0.5, 4, 8).with_seed(seed).relaxed(true);
        let Ok(report) = build_sparse_kk_extremal(&spec) else { continue };
        let cliques = binomial_u128(8, 4) as u64;
        assert_eq!(report.untrimmed_size, report.ell as u64 * cliques);
        assert!(report.family.len() as u64 <= report.untrimmed_size);
        assert!(report.family.uniformity() == Some(4));
    }
}
