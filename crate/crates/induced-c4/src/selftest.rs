//! Self-check suites run by `ic4 selftest` and the acceptance harness.
//!
//! Each suite compares the fast machinery with an independent reference
//! (brute-force search, bitset counts, or a linear scan) on a fixed seeded
//! corpus and reports the number of mismatches.

use crate::bench::{fit_slope, Algo, BenchPlan};
use crate::corpus::ordered_clusters;
use crate::decomposition::{decompose_layers, DecompConfig, Decomposition};
use crate::detector::{detect, find};
use crate::graph_core::rng::CounterRng;
use crate::graph_core::{naive_detect, oracle_detect, verify_witness, Graph, GraphSpec};
use crate::orderings::{build_table, detect_pair, edge_law_holds, is_concise, Cluster, OrientedOrdering, PairOutcome, TableOutcome};
use crate::quadruples::{cluster_codegrees, correlated_vectors, detect_quadruple};
use crate::range_query::{AxisRange, ExtendedInt, Point, RangeBox, RangePointSet};
use crate::triples::detect_triple;
use std::borrow::Cow;
use std::fmt;
use std::time::{Duration, Instant};

/// Wall-clock limit for the exhaustive suite.
pub const EXHAUSTIVE_TIME_LIMIT: Duration = Duration::from_secs(300);

/// Sparsity constant the decomposition suite requires of the configuration.
pub const REQUIRED_C_SPARSE: f64 = 4.0;

/// Common-neighborhood constant the decomposition suite requires: stored
/// entries at level `ℓ` may hold at most `n / 2^(ℓ-1)` vertices.
pub const REQUIRED_C_NBR: f64 = 2.0;

/// Largest accepted log-log runtime slope of the scaling suite.
pub const MAX_SCALING_SLOPE: f64 = 3.2;

/// Outcome of one suite.
#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub name: &'static str,
    pub passed: bool,
    /// Counts checked, first failure if any.
    pub detail: String,
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}: {}", if self.passed { "PASS" } else { "FAIL" }, self.name, self.detail)
    }
}

/// Collects failures, keeping the first few messages.
#[derive(Default)]
struct Tally {
    checked: usize,
    failures: usize,
    first: Vec<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures += 1;
            if self.first.len() < 3 {
                self.first.push(msg());
            }
        }
    }

    fn report(self, name: &'static str, extra: String) -> SuiteReport {
        let mut detail = format!("{} checks, {} failures", self.checked, self.failures);
        if !extra.is_empty() {
            detail.push_str("; ");
            detail.push_str(&extra);
        }
        if !self.first.is_empty() {
            detail.push_str("; first: ");
            detail.push_str(&self.first.join(" | "));
        }
        SuiteReport { name, passed: self.failures == 0 && self.checked > 0, detail }
    }
}

fn gen(spec: &str) -> crate::Result<Graph> {
    Ok(spec.parse::<GraphSpec>()?.generate()?.graph)
}

fn forced() -> DecompConfig {
    DecompConfig { n0: 0, ..DecompConfig::default() }
}

/// Every labeled graph on at most `max_n` vertices: the default detector,
/// the detector with all phases forced, and the quartic brute force all
/// agree with the oracle, and every reported witness verifies.
pub fn exhaustive(max_n: usize) -> SuiteReport {
    let start = Instant::now();
    let mut t = Tally::default();
    let (default, forced) = (DecompConfig::default(), forced());
    let mut graphs = 0u64;
    for n in 0..=max_n {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        for mask in 0u64..1 << pairs.len() {
            graphs += 1;
            let mut g = Graph::new(n);
            for (k, &(u, v)) in pairs.iter().enumerate() {
                if mask >> k & 1 == 1 {
                    g.add_edge(u, v);
                }
            }
            let expect = oracle_detect(&g).is_some();
            t.check(naive_detect(&g).is_some() == expect, || format!("naive disagrees on n={n} mask={mask}"));
            for cfg in [&default, &forced] {
                let r = detect(&g, cfg);
                let witness_ok = r.witness.is_none_or(|w| verify_witness(&g, &w));
                t.check(r.found == expect && witness_ok, || format!("n={n} mask={mask} n0={}: {r}", cfg.n0));
            }
        }
    }
    let elapsed = start.elapsed();
    t.check(elapsed <= EXHAUSTIVE_TIME_LIMIT, || format!("took {elapsed:?}"));
    t.report("exhaustive", format!("{graphs} graphs on n <= {max_n} in {:.1}s", elapsed.as_secs_f64()))
}

/// Seeded `G(n, p)` instances cycling through `n` in {32, 64, 128, 256} and
/// six densities: detection agrees with the oracle (also with all phases
/// forced below the fallback size), and `find` returns a verified witness
/// on every positive.
pub fn differential(instances: usize) -> SuiteReport {
    const NS: [usize; 4] = [32, 64, 128, 256];
    const PS: [&str; 6] = ["0.05", "0.1", "0.25", "0.5", "0.75", "0.95"];
    let mut t = Tally::default();
    let cfg = DecompConfig::default();
    let mut positives = 0;
    for i in 0..instances {
        let spec = format!("gnp:n={},p={},seed={i}", NS[i % 4], PS[(i / 4) % 6]);
        let g = match gen(&spec) {
            Ok(g) => g,
            Err(e) => {
                t.check(false, || format!("{spec}: {e}"));
                continue;
            }
        };
        let expect = oracle_detect(&g).is_some();
        let r = detect(&g, &cfg);
        t.check(r.found == expect, || format!("{spec}: {r}"));
        if g.n() < cfg.n0 {
            let f = detect(&g, &forced());
            t.check(f.found == expect, || format!("{spec} forced: {f}"));
        }
        if expect {
            positives += 1;
            let w = find(&g, &cfg);
            t.check(matches!(&w, Ok(Some(w)) if verify_witness(&g, w)), || format!("{spec}: find gave {w:?}"));
        }
    }
    t.report("differential", format!("{instances} instances, {positives} positive"))
}

/// Polarity blow-ups for `q` in {7, 11} and widths {1, 4, 16} are negative
/// for both algorithms; then `perturbations` seeded single cross-pair flips
/// that make the oracle positive must make the fast detector positive.
pub fn hard_instances(perturbations: usize) -> SuiteReport {
    let mut t = Tally::default();
    let cfg = DecompConfig::default();
    let bases: Vec<(usize, usize)> = [7, 11].iter().flat_map(|&q| [1, 4, 16].map(|w| (q, w))).collect();
    let mut graphs = Vec::new();
    for &(q, w) in &bases {
        let spec = format!("polarity-blowup:q={q},w={w}");
        let g = match gen(&spec) {
            Ok(g) => g,
            Err(e) => {
                t.check(false, || format!("{spec}: {e}"));
                continue;
            }
        };
        t.check(oracle_detect(&g).is_none(), || format!("{spec}: oracle positive"));
        let r = detect(&g, &cfg);
        t.check(!r.found, || format!("{spec}: {r}"));
        graphs.push((spec, w, g));
    }
    if graphs.is_empty() {
        return t.report("hard-instances", String::new());
    }
    let mut attempts = 0;
    for k in 0..perturbations {
        let (spec, w, base) = &graphs[k % graphs.len()];
        let mut rng = CounterRng::new(k as u64, 41);
        let n = base.n() as u64;
        let mut flipped = None;
        for _ in 0..256 {
            attempts += 1;
            let (u, v) = (rng.below(n) as usize, rng.below(n) as usize);
            if u / w == v / w {
                continue;
            }
            let mut g = base.clone();
            g.set_edge(u, v, !g.has_edge(u, v));
            if oracle_detect(&g).is_some() {
                flipped = Some((u, v, g));
                break;
            }
        }
        let Some((u, v, g)) = flipped else {
            t.check(false, || format!("{spec}: no positive flip for perturbation {k}"));
            continue;
        };
        let r = detect(&g, &cfg);
        let witness_ok = r.witness.is_none_or(|w| verify_witness(&g, &w));
        t.check(r.found && witness_ok, || format!("{spec} flip ({u}, {v}): {r}"));
    }
    t.report("hard-instances", format!("{} base graphs, {perturbations} flips ({attempts} candidates)", graphs.len()))
}

/// Seeded instances on 256, 512 and 1024 vertices: every completed
/// decomposition satisfies the structural invariants (verified cliques in
/// the band, a partition, the remainder edge bound, the common-neighborhood
/// bound) and its tables match the bitsets; a witness returned instead must
/// verify.
///
/// Half of the instances are random `n`-vertex induced subgraphs of polarity
/// blow-ups, which are C4-free, so the decomposition always completes on
/// them; the rest are clique blow-ups of sparse random graphs and sparse
/// `G(n, p)` instances.
pub fn decomposition_invariants(instances: usize) -> SuiteReport {
    const NS: [usize; 3] = [256, 512, 1024];
    let mut t = Tally::default();
    let cfg = DecompConfig::default();
    t.check(cfg.c_sparse == REQUIRED_C_SPARSE && cfg.c_nbr == REQUIRED_C_NBR, || format!("constants {cfg:?}"));
    let (mut layered, mut witnesses) = (0, 0);
    for i in 0..instances {
        let n = NS[i % 3];
        let sampled = |q: usize| -> crate::Result<Graph> {
            let order = q * q + q + 1;
            let big = gen(&format!("polarity-blowup:q={q},w={}", n.div_ceil(order)))?;
            let mut keep: Vec<usize> =
                CounterRng::new(i as u64, 23).distinct(n, big.n() as u64).into_iter().map(|v| v as usize).collect();
            keep.sort_unstable();
            Ok(big.induced(&keep))
        };
        let (spec, g) = match (i / 3) % 4 {
            0 => (format!("polarity-blowup:q=7 sampled to n={n}, seed={i}"), sampled(7)),
            1 => (format!("polarity-blowup:q=11 sampled to n={n}, seed={i}"), sampled(11)),
            2 => {
                let spec = format!("clique-blowup:n={},p=0.02,w=8,seed={i}", n / 8);
                let g = gen(&spec);
                (spec, g)
            }
            _ => {
                let spec = format!("gnp:n={n},p=0.01,seed={i}");
                let g = gen(&spec);
                (spec, g)
            }
        };
        let g = match g {
            Ok(g) => g,
            Err(e) => {
                t.check(false, || format!("{spec}: {e}"));
                continue;
            }
        };
        match decompose_layers(&g, &cfg) {
            Decomposition::Found(w) => {
                witnesses += 1;
                t.check(verify_witness(&g, &w), || format!("{spec}: bad witness {w}"));
            }
            Decomposition::Layers(d) => {
                layered += 1;
                let mut problems = d.check_invariants(&g, &cfg);
                problems.extend(d.check_table_exact(&g));
                t.check(problems.is_empty(), || format!("{spec}: {}", problems.join(", ")));
            }
        }
    }
    t.check(layered * 2 >= instances, || format!("only {layered} of {instances} decompositions completed"));
    t.report("decomposition", format!("{layered} decompositions, {witnesses} witnesses"))
}

/// Nested cluster pairs: C4-free pairs come back ordered with a valid,
/// concise labeling; pairs with a planted crossing come back with a
/// verified witness.
pub fn orderings(free: usize, planted: usize) -> SuiteReport {
    let mut t = Tally::default();
    for (count, plant) in [(free, false), (planted, true)] {
        for i in 0..count {
            let (a, b) = (2 + i % 11, 2 + (i / 11) % 13);
            let spec = format!("nested-pair:a={a},b={b},seed={i},plant={}", u8::from(plant));
            let g = match gen(&spec) {
                Ok(g) => g,
                Err(e) => {
                    t.check(false, || format!("{spec}: {e}"));
                    continue;
                }
            };
            let x = Cluster::new(0, 0, (0..a).collect());
            let y = Cluster::new(1, 0, (a..a + b).collect());
            let ok = match detect_pair(&g, &x, &y) {
                Ok(PairOutcome::Ordered(o)) if !plant => {
                    let view = OrientedOrdering { f: Cow::Borrowed(&o.f), g: Cow::Borrowed(&o.g) };
                    oracle_detect(&g).is_none()
                        && edge_law_holds(&g, &x.vertices, &y.vertices, &view)
                        && is_concise(&g, &x.vertices, &y.vertices, &view)
                }
                Ok(PairOutcome::Found(w)) if plant => verify_witness(&g, &w),
                _ => false,
            };
            t.check(ok, || spec.clone());
        }
    }
    t.report("orderings", format!("{free} free pairs, {planted} planted pairs"))
}

fn random_coord(rng: &mut CounterRng) -> ExtendedInt {
    match rng.below(14) {
        0 => ExtendedInt::BOTTOM,
        1 => ExtendedInt::TOP,
        v => ExtendedInt::finite(v as i64 - 8),
    }
}

fn random_range(rng: &mut CounterRng) -> AxisRange {
    if rng.below(4) == 0 {
        return AxisRange::ALL;
    }
    let (a, b) = (random_coord(rng), random_coord(rng));
    AxisRange::new(a.min(b), rng.below(2) == 0, a.max(b), rng.below(2) == 0)
}

/// Random point sets and boxes in dimensions 2, 3 and 4: counts equal a
/// linear scan and the reported witness lies in the box with the smallest
/// payload there.
pub fn range_queries(cases_per_dim: usize) -> SuiteReport {
    let mut t = Tally::default();
    for d in 2..=4usize {
        let mut rng = CounterRng::new(d as u64, 7);
        for case in 0..cases_per_dim {
            let len = rng.below(65) as usize;
            let points: Vec<Point> = (0..len)
                .map(|p| {
                    let coords: Vec<ExtendedInt> = (0..d).map(|_| random_coord(&mut rng)).collect();
                    Point::new(&coords, p)
                })
                .collect();
            let mut bx = RangeBox::UNIVERSE;
            for axis in 0..d {
                bx = bx.with(axis, random_range(&mut rng));
            }
            let s = RangePointSet::from_points(d, points.clone());
            let inside: Vec<&Point> = points.iter().filter(|p| bx.contains(d, &p.coords)).collect();
            let (count, witness) = s.count_and_witness(&bx);
            let witness_ok = match witness {
                Some(w) => inside.iter().any(|p| p.payload == w) && inside.iter().all(|p| p.payload >= w),
                None => inside.is_empty(),
            };
            t.check(count == inside.len() && witness_ok, || {
                format!("d={d} case {case}: got ({count}, {witness:?}), expected {}", inside.len())
            });
        }
    }
    t.report("range-queries", format!("{cases_per_dim} cases per dimension"))
}

fn ordered_table(g: &Graph, cl: &[Cluster]) -> Option<crate::orderings::OrderingTable> {
    match build_table(g, cl) {
        Ok(TableOutcome::Table(t)) => Some(t),
        _ => None,
    }
}

fn union_has_c4(g: &Graph, cl: &[&Cluster]) -> bool {
    let verts: Vec<usize> = cl.iter().flat_map(|c| c.vertices.iter().copied()).collect();
    oracle_detect(&g.induced(&verts)).is_some()
}

/// Spot checks of the cluster-level lemmas, `per_suite` instances each:
/// correlated vectors rebuild the true neighborhoods on C4-free triples,
/// cluster co-degrees equal bitset counts, and the triple and quadruple
/// detectors agree with the oracle on the union of their clusters.
pub fn structural(per_suite: usize) -> SuiteReport {
    let mut t = Tally::default();
    let mut counts = [0usize; 4];
    // Correlated vectors.
    let mut seed = 0u64;
    while counts[0] < per_suite && seed < 100 * per_suite as u64 {
        seed += 1;
        let sizes = [1 + seed as usize % 4, 2 + seed as usize % 5, 1 + (seed as usize / 4) % 5];
        let (g, cl) = ordered_clusters(&sizes, 5, 0, seed);
        if oracle_detect(&g).is_some() {
            continue;
        }
        let Some(table) = ordered_table(&g, &cl) else { continue };
        counts[0] += 1;
        let (w, x, z) = (&cl[0], &cl[1], &cl[2]);
        let ok = (|| -> crate::Result<bool> {
            let vs = correlated_vectors(&g, &table, w, x, z)?;
            let xz = table.ordering_for(&g, x.id, z.id)?;
            for (k, &wv) in w.vertices.iter().enumerate() {
                let nx: Vec<usize> = (0..x.len()).filter(|&i| g.has_edge(wv, x.vertices[i])).collect();
                let nz: Vec<usize> = (0..z.len()).filter(|&j| g.has_edge(wv, z.vertices[j])).collect();
                let Some(v) = vs[k] else {
                    if !(nx.is_empty() || nz.is_empty()) {
                        return Ok(false);
                    }
                    continue;
                };
                let e = |l: i64| ExtendedInt::finite(l);
                let xi_high = e(nx.iter().map(|&i| xz.f[i]).max().unwrap_or(0));
                let zeta_low = e(nz.iter().map(|&j| xz.g[j]).min().unwrap_or(0));
                if v.xi_high != xi_high || v.zeta_low != zeta_low {
                    return Ok(false);
                }
                let rebuilt_x: Vec<usize> = (0..x.len())
                    .filter(|&i| e(xz.f[i]) <= v.xi_pre || (nx.contains(&i) && e(xz.f[i]) == v.xi_high))
                    .collect();
                let rebuilt_z: Vec<usize> = (0..z.len())
                    .filter(|&j| e(xz.g[j]) >= v.zeta_suff || (nz.contains(&j) && e(xz.g[j]) == v.zeta_low))
                    .collect();
                if v.is_split() && (rebuilt_x != nx || rebuilt_z != nz) {
                    return Ok(false);
                }
            }
            Ok(true)
        })();
        t.check(matches!(ok, Ok(true)), || format!("correlated vectors, seed {seed}: {ok:?}"));
    }
    // Cluster co-degrees.
    for seed in 0..per_suite as u64 {
        let sizes = [1 + seed as usize % 6, 1 + (seed as usize / 6) % 4, 1 + (seed as usize / 24) % 5];
        let (g, cl) = ordered_clusters(&sizes, 5, 0, seed);
        let Some(table) = ordered_table(&g, &cl) else {
            t.check(false, || format!("co-degrees, seed {seed}: pairs not ordered"));
            continue;
        };
        counts[1] += 1;
        let m = cluster_codegrees(&g, &table, &cl[0], &cl[1], &cl[2]);
        let ok = m.as_ref().is_ok_and(|m| {
            cl[1].vertices.iter().enumerate().all(|(i, &x)| {
                cl[2].vertices.iter().enumerate().all(|(j, &z)| {
                    m[i][j] == cl[0].vertices.iter().filter(|&&w| g.has_edge(w, x) && g.has_edge(w, z)).count()
                })
            })
        });
        t.check(ok, || format!("co-degrees, seed {seed}"));
    }
    // Triples and quadruples against the oracle on the union.
    let mut seed = 0u64;
    while (counts[2] < per_suite || counts[3] < per_suite) && seed < 100 * per_suite as u64 {
        seed += 1;
        let s = seed as usize;
        if counts[2] < per_suite {
            let (g, cl) = ordered_clusters(&[1 + s % 5, 1 + (s / 5) % 5, 1 + (s / 25) % 5], 4, s % 3, seed);
            if let Some(table) = ordered_table(&g, &cl) {
                counts[2] += 1;
                let got = detect_triple(&g, &table, &cl[0], &cl[1], &cl[2]);
                let expect = union_has_c4(&g, &[&cl[0], &cl[1], &cl[2]]);
                t.check(got.as_ref().is_ok_and(|&b| b == expect), || format!("triple, seed {seed}: {got:?}"));
            }
        }
        if counts[3] < per_suite {
            let sizes = [1 + s % 3, 1 + (s / 3) % 3, 1 + (s / 9) % 3, 1 + (s / 27) % 3];
            let (g, cl) = ordered_clusters(&sizes, 3, s % 3, seed);
            if let Some(table) = ordered_table(&g, &cl) {
                counts[3] += 1;
                let got = detect_quadruple(&g, &table, &cl[0], &cl[1], &cl[2], &cl[3]);
                let expect = union_has_c4(&g, &[&cl[0], &cl[1], &cl[2], &cl[3]]);
                t.check(got.as_ref().is_ok_and(|&b| b == expect), || format!("quadruple, seed {seed}: {got:?}"));
            }
        }
    }
    for (k, name) in ["correlated vectors", "co-degrees", "triples", "quadruples"].iter().enumerate() {
        t.check(counts[k] >= per_suite, || format!("only {} {name} instances", counts[k]));
    }
    t.report(
        "structural",
        format!("{} vector, {} co-degree, {} triple, {} quadruple instances", counts[0], counts[1], counts[2], counts[3]),
    )
}

/// Times the fast detector on `G(n, 1/2)` and fits the log-log slope of the
/// median runtime; the slope must not exceed [`MAX_SCALING_SLOPE`], and
/// every algorithm must agree on each graph.
pub fn scaling(sizes: &[usize], reps: u64) -> SuiteReport {
    let mut t = Tally::default();
    let mut plan = BenchPlan::new(sizes.to_vec(), reps);
    plan.naive_max_n = 0;
    let records = match plan.run() {
        Ok(r) => r,
        Err(e) => {
            t.check(false, || format!("bench failed: {e}"));
            return t.report("scaling", String::new());
        }
    };
    for r in &records {
        let fast = records.iter().find(|f| f.algo == Algo::Fast && f.n == r.n && f.seed == r.seed);
        t.check(fast.is_some_and(|f| f.found == r.found), || format!("n={} seed={} {} disagrees", r.n, r.seed, r.algo));
    }
    let slope = fit_slope(&records, Algo::Fast);
    t.check(slope.is_some_and(|s| s <= MAX_SCALING_SLOPE), || format!("slope {slope:?}"));
    t.report("scaling", format!("slope {:.3} over sizes {sizes:?}", slope.unwrap_or(f64::NAN)))
}
