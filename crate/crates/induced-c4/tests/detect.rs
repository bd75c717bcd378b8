use induced_c4::decomposition::DecompConfig;
use induced_c4::graph_core::rng::counter_u64;
use induced_c4::{detect, find, oracle_detect, verify_witness, Graph, GraphSpec, Phase};
use proptest::prelude::*;

fn gen(spec: &str) -> Graph {
    spec.parse::<GraphSpec>().unwrap().generate().unwrap().graph
}

fn forced() -> DecompConfig {
    DecompConfig { n0: 0, ..DecompConfig::default() }
}

fn graph_from_bits(n: usize, seed: u64, density: u64) -> Graph {
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if counter_u64(seed, 1, (u * n + v) as u64) % 100 < density {
                g.add_edge(u, v);
            }
        }
    }
    g
}

#[test]
fn forced_phases_agree_with_the_oracle_on_random_graphs() {
    let cfg = forced();
    let mut by_phase = std::collections::BTreeMap::new();
    for seed in 0..600u64 {
        let n = 5 + seed as usize % 40;
        let density = [10, 30, 50, 70, 90][seed as usize % 5];
        let g = graph_from_bits(n, seed, density);
        let r = detect(&g, &cfg);
        assert!(r.diagnostic.is_none(), "seed {seed}: {:?}", r.diagnostic);
        assert_eq!(r.found, oracle_detect(&g).is_some(), "seed {seed}: {r}");
        if let Some(w) = r.witness {
            assert!(verify_witness(&g, &w));
        }
        *by_phase.entry(r.phase.as_str()).or_insert(0) += 1;
    }
    for phase in ["decomposition", "4-clustered"] {
        assert!(by_phase.contains_key(phase), "{by_phase:?}");
    }
}

#[test]
fn structured_families_agree_with_the_oracle() {
    let cfg = DecompConfig::default();
    let specs = [
        "polarity-blowup:q=7,w=4",
        "polarity-blowup:q=5,w=8",
        "clique-blowup:n=20,p=0.5,w=6,seed=3",
        "nested-pair:a=60,b=60,seed=1,plant=0",
        "nested-pair:a=60,b=60,seed=1,plant=1",
        "planted-c4:n=200,p=0.01,seed=9",
        "gnp:n=300,p=0.5,seed=4",
    ];
    for spec in specs {
        let g = gen(spec);
        let r = detect(&g, &cfg);
        assert_eq!(r.found, oracle_detect(&g).is_some(), "{spec}: {r}");
        assert!(r.diagnostic.is_none(), "{spec}: {:?}", r.diagnostic);
    }
}

#[test]
fn negatives_reach_the_last_phase() {
    let r = detect(&gen("polarity-blowup:q=7,w=4"), &DecompConfig::default());
    assert!(!r.found);
    assert_eq!(r.phase, Phase::FourClustered);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn find_agrees_with_detect(n in 4usize..30, seed in any::<u64>(), density in 5u64..95) {
        let g = graph_from_bits(n, seed, density);
        let cfg = forced();
        let found = detect(&g, &cfg).found;
        let w = find(&g, &cfg).unwrap();
        prop_assert_eq!(w.is_some(), found);
        if let Some(w) = w {
            prop_assert!(verify_witness(&g, &w));
        }
    }
}
