//! Seeded graph generators and their string grammar.
//!
//! ```text
//! spec  := kind [ ':' param { ',' param } ]
//! param := key '=' value
//!
//! gnp:n=<int>,p=<decimal>,seed=<u64>                 Erdos-Renyi G(n, p)
//! polarity-blowup:q=<prime>,w=<int>                  polarity graph of PG(2, q), blown up
//! clique-blowup:n=<int>,p=<decimal>,w=<int>,seed=<u64>   G(n, p) with every vertex a w-clique
//! planted-c4:n=<int>,p=<decimal>,seed=<u64>          G(n, p) with one induced C4 forced in
//! nested-pair:a=<int>,b=<int>,seed=<u64>,plant=<0|1> two cliques with nested cross edges
//! ```
//!
//! Defaults: `p = 0.5`, `seed = 0`, `w = 1`, `plant = 0`. Probabilities are
//! exact decimals (`0.3`, `1`, `0.125`); edge `(u, v)` of `gnp` is present iff
//! `r * den < num * 2^64` where `r = counter_u64(seed, 0, u * n + v)` and
//! `p = num / den`.
//!
//! Blow-ups map base vertex `i` to ids `i*w .. i*w + w - 1`. Polarity base
//! points are the normalized vectors of F_q^3 in the order `(1, a, b)` for
//! `a, b` ascending, then `(0, 1, a)`, then `(0, 0, 1)`; points `x != y` are
//! adjacent iff `x . y = 0 (mod q)`.

use super::rng::{counter_u64, CounterRng};
use super::{C4Witness, Graph};
use crate::error::{Error, Result};
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

/// Largest vertex count any generator or loader will produce.
pub const DEFAULT_MAX_VERTICES: usize = 1 << 15;

/// Exact decimal probability `num / den` with `den` a power of ten.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Probability {
    num: u64,
    den: u64,
}

impl Probability {
    pub fn new(num: u64, den: u64) -> Result<Self> {
        if den == 0 || num > den {
            return Err(Error::Spec(format!("probability {num}/{den} outside [0, 1]")));
        }
        Ok(Self { num, den })
    }

    pub fn as_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    /// Bernoulli trial driven by a uniform 64-bit value.
    #[inline]
    pub fn accepts(&self, r: u64) -> bool {
        (r as u128) * (self.den as u128) < (self.num as u128) << 64
    }
}

impl FromStr for Probability {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Spec(format!("`{s}` is not a decimal probability"));
        let (int, frac) = s.split_once('.').unwrap_or((s, ""));
        if int.is_empty() && frac.is_empty() || frac.len() > 18 {
            return Err(bad());
        }
        if !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let den = 10u64.pow(frac.len() as u32);
        let int_part: u64 = if int.is_empty() { 0 } else { int.parse().map_err(|_| bad())? };
        let frac_part: u64 = if frac.is_empty() { 0 } else { frac.parse().map_err(|_| bad())? };
        let num = int_part
            .checked_mul(den)
            .and_then(|v| v.checked_add(frac_part))
            .ok_or_else(bad)?;
        Self::new(num, den)
    }
}

impl fmt::Display for Probability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = self.den.ilog10() as usize;
        if digits == 0 {
            return write!(f, "{}", self.num);
        }
        write!(
            f,
            "{}.{:0width$}",
            self.num / self.den,
            self.num % self.den,
            width = digits
        )
    }
}

/// Generator kind with its parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Kind {
    Gnp { n: usize, p: Probability, seed: u64 },
    PolarityBlowup { q: usize, w: usize },
    CliqueBlowup { n: usize, p: Probability, w: usize, seed: u64 },
    PlantedC4 { n: usize, p: Probability, seed: u64 },
    NestedPair { a: usize, b: usize, seed: u64, plant: bool },
}

/// Parsed generator specification; see the module docs for the grammar.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphSpec {
    pub kind: Kind,
}

/// Generator output: the graph plus the planted cycle for planting kinds.
#[derive(Clone, Debug)]
pub struct Generated {
    pub graph: Graph,
    pub plant: Option<C4Witness>,
}

impl GraphSpec {
    pub fn new(kind: Kind) -> Self {
        Self { kind }
    }

    /// Short kind name as used in the grammar.
    pub fn kind_name(&self) -> &'static str {
        match self.kind {
            Kind::Gnp { .. } => "gnp",
            Kind::PolarityBlowup { .. } => "polarity-blowup",
            Kind::CliqueBlowup { .. } => "clique-blowup",
            Kind::PlantedC4 { .. } => "planted-c4",
            Kind::NestedPair { .. } => "nested-pair",
        }
    }

    /// Vertex count of the generated graph.
    pub fn vertex_count(&self) -> usize {
        match self.kind {
            Kind::Gnp { n, .. } | Kind::PlantedC4 { n, .. } => n,
            Kind::PolarityBlowup { q, w } => (q * q + q + 1).saturating_mul(w),
            Kind::CliqueBlowup { n, w, .. } => n.saturating_mul(w),
            Kind::NestedPair { a, b, .. } => a + b,
        }
    }

    /// Generates with the default vertex limit.
    pub fn generate(&self) -> Result<Generated> {
        self.generate_with_limit(DEFAULT_MAX_VERTICES)
    }

    /// Generates, failing if the result would exceed `max_n` vertices.
    pub fn generate_with_limit(&self, max_n: usize) -> Result<Generated> {
        let n = self.vertex_count();
        if n > max_n {
            return Err(Error::TooLarge { n, max: max_n });
        }
        let mut plant = None;
        let graph = match self.kind {
            Kind::Gnp { n, p, seed } => gnp(n, p, seed),
            Kind::PolarityBlowup { q, w } => blow_up(&polarity_graph(q), w),
            Kind::CliqueBlowup { n, p, w, seed } => blow_up(&gnp(n, p, seed), w),
            Kind::PlantedC4 { n, p, seed } => {
                let mut g = gnp(n, p, seed);
                let mut rng = CounterRng::new(seed, 1);
                let v: Vec<usize> = rng.distinct(4, n as u64).into_iter().map(|x| x as usize).collect();
                let w = C4Witness::new(v[0], v[1], v[2], v[3]);
                force_cycle(&mut g, &w);
                plant = Some(w.canonical());
                g
            }
            Kind::NestedPair { a, b, seed, plant: planted } => {
                let mut g = nested_pair(a, b, seed);
                if planted {
                    let mut rng = CounterRng::new(seed, 3);
                    let xs = rng.distinct(2, a as u64);
                    let ys = rng.distinct(2, b as u64);
                    let (a1, a2) = (xs[0] as usize, xs[1] as usize);
                    let (b1, b2) = (a + ys[0] as usize, a + ys[1] as usize);
                    let w = C4Witness::new(a1, b1, b2, a2);
                    force_cycle(&mut g, &w);
                    plant = Some(w.canonical());
                }
                g
            }
        };
        Ok(Generated { graph, plant })
    }

    fn validate(&self) -> Result<()> {
        match self.kind {
            Kind::PolarityBlowup { q, w } => {
                if !is_prime(q) {
                    return Err(Error::Spec(format!("q = {q} is not prime")));
                }
                if w == 0 {
                    return Err(Error::Spec("clique width w must be at least 1".into()));
                }
            }
            Kind::CliqueBlowup { w, .. } if w == 0 => {
                return Err(Error::Spec("clique width w must be at least 1".into()));
            }
            Kind::PlantedC4 { n, .. } if n < 4 => {
                return Err(Error::Spec("planted-c4 needs n >= 4".into()));
            }
            Kind::NestedPair { a, b, plant: true, .. } if a < 2 || b < 2 => {
                return Err(Error::Spec("planting needs both sides of size >= 2".into()));
            }
            _ => {}
        }
        Ok(())
    }
}

impl FromStr for GraphSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (kind, rest) = s.trim().split_once(':').unwrap_or((s.trim(), ""));
        let mut params = BTreeMap::new();
        for item in rest.split(',').filter(|t| !t.is_empty()) {
            let (k, v) = item
                .split_once('=')
                .ok_or_else(|| Error::Spec(format!("parameter `{item}` is not key=value")))?;
            if params.insert(k.trim(), v.trim()).is_some() {
                return Err(Error::Spec(format!("parameter `{k}` given twice")));
            }
        }
        let allowed: &[&str] = match kind {
            "gnp" | "planted-c4" => &["n", "p", "seed"],
            "polarity-blowup" => &["q", "w"],
            "clique-blowup" => &["n", "p", "w", "seed"],
            "nested-pair" => &["a", "b", "seed", "plant"],
            other => return Err(Error::Spec(format!("unknown generator kind `{other}`"))),
        };
        if let Some(k) = params.keys().find(|k| !allowed.contains(k)) {
            return Err(Error::Spec(format!("unknown parameter `{k}` for `{kind}`")));
        }
        let int = |key: &str, default: Option<u64>| -> Result<u64> {
            match params.get(key) {
                Some(v) => v
                    .parse::<u64>()
                    .map_err(|_| Error::Spec(format!("`{key}={v}` is not a non-negative integer"))),
                None => default.ok_or_else(|| Error::Spec(format!("missing parameter `{key}`"))),
            }
        };
        let prob = || -> Result<Probability> {
            params.get("p").map_or(Probability::new(1, 2), |v| v.parse())
        };
        let size = |key: &str, default: Option<u64>| -> Result<usize> {
            usize::try_from(int(key, default)?).map_err(|_| Error::Spec(format!("`{key}` too large")))
        };
        let kind = match kind {
            "gnp" => Kind::Gnp { n: size("n", None)?, p: prob()?, seed: int("seed", Some(0))? },
            "planted-c4" => Kind::PlantedC4 { n: size("n", None)?, p: prob()?, seed: int("seed", Some(0))? },
            "polarity-blowup" => Kind::PolarityBlowup { q: size("q", None)?, w: size("w", Some(1))? },
            "clique-blowup" => Kind::CliqueBlowup {
                n: size("n", None)?,
                p: prob()?,
                w: size("w", Some(1))?,
                seed: int("seed", Some(0))?,
            },
            _ => Kind::NestedPair {
                a: size("a", None)?,
                b: size("b", None)?,
                seed: int("seed", Some(0))?,
                plant: match int("plant", Some(0))? {
                    0 => false,
                    1 => true,
                    v => return Err(Error::Spec(format!("plant must be 0 or 1, got {v}"))),
                },
            },
        };
        let spec = GraphSpec { kind };
        spec.validate()?;
        Ok(spec)
    }
}

impl fmt::Display for GraphSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            Kind::Gnp { n, p, seed } => write!(f, "gnp:n={n},p={p},seed={seed}"),
            Kind::PolarityBlowup { q, w } => write!(f, "polarity-blowup:q={q},w={w}"),
            Kind::CliqueBlowup { n, p, w, seed } => {
                write!(f, "clique-blowup:n={n},p={p},w={w},seed={seed}")
            }
            Kind::PlantedC4 { n, p, seed } => write!(f, "planted-c4:n={n},p={p},seed={seed}"),
            Kind::NestedPair { a, b, seed, plant } => {
                write!(f, "nested-pair:a={a},b={b},seed={seed},plant={}", u8::from(*plant))
            }
        }
    }
}

fn is_prime(q: usize) -> bool {
    q >= 2 && (2..).take_while(|d| d * d <= q).all(|d| !q.is_multiple_of(d))
}

fn gnp(n: usize, p: Probability, seed: u64) -> Graph {
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if p.accepts(counter_u64(seed, 0, (u * n + v) as u64)) {
                g.add_edge(u, v);
            }
        }
    }
    g
}

/// Polarity graph of PG(2, q) for prime `q`, absolute points kept without loops.
fn polarity_graph(q: usize) -> Graph {
    let mut points = Vec::with_capacity(q * q + q + 1);
    for a in 0..q {
        for b in 0..q {
            points.push([1, a, b]);
        }
    }
    for a in 0..q {
        points.push([0, 1, a]);
    }
    points.push([0, 0, 1]);
    let mut g = Graph::new(points.len());
    for (i, x) in points.iter().enumerate() {
        for (j, y) in points.iter().enumerate().skip(i + 1) {
            if (x[0] * y[0] + x[1] * y[1] + x[2] * y[2]) % q == 0 {
                g.add_edge(i, j);
            }
        }
    }
    g
}

/// Replaces every vertex by a `w`-clique and every edge by a complete join.
fn blow_up(base: &Graph, w: usize) -> Graph {
    let mut g = Graph::new(base.n() * w);
    for u in 0..base.n() {
        for i in 0..w {
            for j in i + 1..w {
                g.add_edge(u * w + i, u * w + j);
            }
        }
        for v in base.neighbors(u).filter(|&v| v > u) {
            for i in 0..w {
                for j in 0..w {
                    g.add_edge(u * w + i, v * w + j);
                }
            }
        }
    }
    g
}

/// Cliques on `0..a` and `a..a+b`; `x` and `y` adjacent iff `f(x) <= g(y)`
/// for labels drawn uniformly from `0..=max(a, b)`.
fn nested_pair(a: usize, b: usize, seed: u64) -> Graph {
    let mut g = Graph::new(a + b);
    let k = a.max(b) as u64 + 1;
    let mut rng = CounterRng::new(seed, 2);
    let f: Vec<u64> = (0..a).map(|_| rng.below(k)).collect();
    let h: Vec<u64> = (0..b).map(|_| rng.below(k)).collect();
    for x in 0..a {
        for y in x + 1..a {
            g.add_edge(x, y);
        }
    }
    for x in 0..b {
        for y in x + 1..b {
            g.add_edge(a + x, a + y);
        }
    }
    for x in 0..a {
        for y in 0..b {
            if f[x] <= h[y] {
                g.add_edge(x, a + y);
            }
        }
    }
    g
}

fn force_cycle(g: &mut Graph, w: &C4Witness) {
    g.add_edge(w.a, w.b);
    g.add_edge(w.b, w.c);
    g.add_edge(w.c, w.d);
    g.add_edge(w.d, w.a);
    g.remove_edge(w.a, w.c);
    g.remove_edge(w.b, w.d);
}

#[cfg(test)]
mod tests {
    use super::super::{oracle_detect, verify_witness};
    use super::*;

    fn gen(s: &str) -> Generated {
        s.parse::<GraphSpec>().unwrap().generate().unwrap()
    }

    #[test]
    fn fano_polarity_is_c4_free() {
        let g = gen("polarity-blowup:q=2,w=1").graph;
        assert_eq!(g.n(), 7);
        // q + 1 = 3 points on each polar line, minus the point itself when absolute.
        assert_eq!(g.edge_count(), (7 * 3 - 3) / 2);
        assert!(oracle_detect(&g).is_none());
    }

    #[test]
    fn polarity_blowups_are_c4_free() {
        for (q, w) in [(3, 1), (3, 3), (5, 2), (7, 1)] {
            let g = gen(&format!("polarity-blowup:q={q},w={w}")).graph;
            assert_eq!(g.n(), (q * q + q + 1) * w);
            assert!(g.check_invariants());
            assert!(oracle_detect(&g).is_none(), "q={q} w={w}");
        }
    }

    #[test]
    fn p_one_gives_complete_graph() {
        for seed in [0, 1, 99] {
            assert_eq!(gen(&format!("gnp:n=4,p=1,seed={seed}")).graph, Graph::complete(4));
        }
        assert_eq!(gen("gnp:n=5,p=0").graph.edge_count(), 0);
    }

    #[test]
    fn generation_is_deterministic() {
        let a = gen("gnp:n=90,p=0.3,seed=42").graph;
        let b = gen("gnp:n=90,p=0.3,seed=42").graph;
        let c = gen("gnp:n=90,p=0.3,seed=43").graph;
        assert_eq!(a, b);
        assert_ne!(a, c);
        let m = a.edge_count() as f64;
        let expected = 0.3 * 90.0 * 89.0 / 2.0;
        assert!((m - expected).abs() < 0.15 * expected, "{m} vs {expected}");
    }

    #[test]
    fn planted_cycle_verifies() {
        let out = gen("planted-c4:n=10,seed=7");
        let w = out.plant.unwrap();
        assert!(verify_witness(&out.graph, &w));
        assert!(oracle_detect(&out.graph).is_some());
    }

    #[test]
    fn nested_pairs_are_c4_free_unless_planted() {
        for seed in 0..30 {
            let clean = gen(&format!("nested-pair:a=5,b=7,seed={seed}")).graph;
            assert!(oracle_detect(&clean).is_none());
            let planted = gen(&format!("nested-pair:a=5,b=7,seed={seed},plant=1"));
            assert!(verify_witness(&planted.graph, &planted.plant.unwrap()));
        }
    }

    #[test]
    fn grammar_round_trips_and_rejects() {
        for s in [
            "gnp:n=128,p=0.3,seed=42",
            "polarity-blowup:q=7,w=5",
            "clique-blowup:n=10,p=0.25,w=3,seed=1",
            "planted-c4:n=10,p=0.5,seed=7",
            "nested-pair:a=3,b=4,seed=2,plant=1",
        ] {
            let spec: GraphSpec = s.parse().unwrap();
            assert_eq!(spec.to_string(), s);
        }
        for s in [
            "polarity-blowup:q=4",
            "gnp:n=3,p=1.5",
            "gnp:p=0.5",
            "gnp:n=3,p=0.5,q=2",
            "gnp:n=3,n=4",
            "cube:n=3",
            "gnp:n=3,p=.",
            "nested-pair:a=1,b=3,plant=1",
        ] {
            assert!(s.parse::<GraphSpec>().is_err(), "{s}");
        }
        let big: GraphSpec = "polarity-blowup:q=7,w=5".parse().unwrap();
        assert!(matches!(big.generate_with_limit(100), Err(Error::TooLarge { n: 285, .. })));
    }

    #[test]
    fn probability_parsing() {
        assert_eq!("0.25".parse::<Probability>().unwrap(), Probability::new(25, 100).unwrap());
        assert_eq!("1".parse::<Probability>().unwrap().to_string(), "1");
        assert_eq!(".5".parse::<Probability>().unwrap().to_string(), "0.5");
        assert!(Probability::new(1, 1).unwrap().accepts(u64::MAX));
        assert!(!Probability::new(0, 1).unwrap().accepts(0));
    }
}
