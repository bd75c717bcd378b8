//! Timing records, their CSV form, and the log-log runtime slope.

use crate::decomposition::DecompConfig;
use crate::detector::detect;
use crate::error::{Error, Result};
use crate::graph_core::{naive_detect, oracle_detect, Graph, GraphSpec};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use std::io::{Read, Write};
use std::str::FromStr;
use std::time::Instant;

/// CSV header line of [`BenchRecord`].
pub const CSV_HEADER: &str = "n,seed,gen,algo,found,ms,ms_decomp,ms_p2,ms_p3,ms_p4";

/// Detection algorithm being timed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algo {
    Fast,
    Oracle,
    Naive,
}

impl Algo {
    pub fn as_str(self) -> &'static str {
        match self {
            Algo::Fast => "fast",
            Algo::Oracle => "oracle",
            Algo::Naive => "naive",
        }
    }
}

impl fmt::Display for Algo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Algo {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fast" => Ok(Algo::Fast),
            "oracle" => Ok(Algo::Oracle),
            "naive" => Ok(Algo::Naive),
            _ => Err(Error::Spec(format!("unknown algorithm `{s}` (expected fast, oracle or naive)"))),
        }
    }
}

/// One timed detection. Phase timings are zero for the baselines.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchRecord {
    pub n: usize,
    pub seed: u64,
    /// Generator kind, e.g. `gnp`.
    pub gen: String,
    pub algo: Algo,
    #[serde(with = "bit")]
    pub found: bool,
    pub ms: f64,
    pub ms_decomp: f64,
    pub ms_p2: f64,
    pub ms_p3: f64,
    pub ms_p4: f64,
}

/// Outcome bits are written as `0` / `1`.
mod bit {
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(b: &bool, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_u8(u8::from(*b))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<bool, D::Error> {
        match u8::deserialize(d)? {
            0 => Ok(false),
            1 => Ok(true),
            v => Err(D::Error::custom(format!("outcome bit must be 0 or 1, got {v}"))),
        }
    }
}

/// Times `algo` on `g`. `seed` and `gen` only label the record.
pub fn time_algo(g: &Graph, algo: Algo, cfg: &DecompConfig, seed: u64, gen: &str) -> BenchRecord {
    let mut record = BenchRecord {
        n: g.n(),
        seed,
        gen: gen.to_string(),
        algo,
        found: false,
        ms: 0.0,
        ms_decomp: 0.0,
        ms_p2: 0.0,
        ms_p3: 0.0,
        ms_p4: 0.0,
    };
    let start = Instant::now();
    match algo {
        Algo::Fast => {
            let r = detect(g, cfg);
            record.found = r.found;
            record.ms_decomp = r.timings.decomp;
            record.ms_p2 = r.timings.p2;
            record.ms_p3 = r.timings.p3;
            record.ms_p4 = r.timings.p4;
        }
        Algo::Oracle => record.found = oracle_detect(g).is_some(),
        Algo::Naive => record.found = naive_detect(g).is_some(),
    }
    record.ms = start.elapsed().as_secs_f64() * 1e3;
    record
}

/// Benchmark plan over `G(n, 1/2)`.
#[derive(Clone, Debug)]
pub struct BenchPlan {
    pub sizes: Vec<usize>,
    /// Repetitions per size; repetition `r` uses seed `r`.
    pub reps: u64,
    /// Sizes up to this also get an oracle row.
    pub oracle_max_n: usize,
    /// Sizes up to this also get a naive row.
    pub naive_max_n: usize,
    /// Worker threads; each generates and owns its graph.
    pub jobs: usize,
    pub config: DecompConfig,
}

impl BenchPlan {
    pub fn new(sizes: Vec<usize>, reps: u64) -> Self {
        Self { sizes, reps, oracle_max_n: 8192, naive_max_n: 256, jobs: 1, config: DecompConfig::default() }
    }

    /// Runs every (size, seed) cell and returns records ordered by size,
    /// seed and algorithm.
    pub fn run(&self) -> Result<Vec<BenchRecord>> {
        let cells: Vec<(usize, u64)> =
            self.sizes.iter().flat_map(|&n| (0..self.reps).map(move |seed| (n, seed))).collect();
        let run_cell = |&(n, seed): &(usize, u64)| -> Result<Vec<BenchRecord>> {
            let spec: GraphSpec = format!("gnp:n={n},p=0.5,seed={seed}").parse()?;
            let g = spec.generate()?.graph;
            let mut out = vec![time_algo(&g, Algo::Fast, &self.config, seed, spec.kind_name())];
            if n <= self.oracle_max_n {
                out.push(time_algo(&g, Algo::Oracle, &self.config, seed, spec.kind_name()));
            }
            if n <= self.naive_max_n {
                out.push(time_algo(&g, Algo::Naive, &self.config, seed, spec.kind_name()));
            }
            Ok(out)
        };
        let jobs = self.jobs.max(1).min(cells.len().max(1));
        let chunks: Vec<Result<Vec<BenchRecord>>> = std::thread::scope(|s| {
            let handles: Vec<_> = (0..jobs)
                .map(|j| {
                    let cells = &cells;
                    let run_cell = &run_cell;
                    s.spawn(move || -> Result<Vec<BenchRecord>> {
                        let mut out = Vec::new();
                        for cell in cells.iter().skip(j).step_by(jobs) {
                            out.extend(run_cell(cell)?);
                        }
                        Ok(out)
                    })
                })
                .collect();
            handles.into_iter().map(|h| h.join().expect("bench worker panicked")).collect()
        });
        let mut records = Vec::new();
        for chunk in chunks {
            records.extend(chunk?);
        }
        records.sort_by_key(|a| (a.n, a.seed, a.algo));
        Ok(records)
    }
}

fn io_error(e: impl fmt::Display) -> Error {
    Error::Parse { line: 0, message: format!("csv: {e}") }
}

/// Writes `records` with the [`CSV_HEADER`] header.
pub fn write_csv<W: Write>(out: W, records: &[BenchRecord]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    if records.is_empty() {
        w.write_record(CSV_HEADER.split(',')).map_err(io_error)?;
    }
    for r in records {
        w.serialize(r).map_err(io_error)?;
    }
    w.flush().map_err(io_error)
}

/// Parses records written by [`write_csv`]; the header must match exactly.
pub fn read_csv<R: Read>(input: R) -> Result<Vec<BenchRecord>> {
    let mut rd = csv::Reader::from_reader(input);
    let header = rd.headers().map_err(io_error)?.iter().collect::<Vec<_>>().join(",");
    if header != CSV_HEADER {
        return Err(io_error(format!("unexpected header `{header}`")));
    }
    rd.deserialize().map(|r| r.map_err(io_error)).collect()
}

/// Median runtime of `algo` per size.
pub fn medians(records: &[BenchRecord], algo: Algo) -> BTreeMap<usize, f64> {
    let mut by_n: BTreeMap<usize, Vec<f64>> = BTreeMap::new();
    for r in records.iter().filter(|r| r.algo == algo) {
        by_n.entry(r.n).or_default().push(r.ms);
    }
    by_n.into_iter()
        .map(|(n, mut ms)| {
            ms.sort_by(f64::total_cmp);
            let k = ms.len();
            let m = if k % 2 == 1 { ms[k / 2] } else { (ms[k / 2 - 1] + ms[k / 2]) / 2.0 };
            (n, m)
        })
        .collect()
}

/// Least-squares slope of `log ms` against `log n` over the per-size
/// medians of `algo`; `None` with fewer than two sizes. Medians are clamped
/// below at 1 µs so that instant runs stay finite.
pub fn fit_slope(records: &[BenchRecord], algo: Algo) -> Option<f64> {
    let pts: Vec<(f64, f64)> =
        medians(records, algo).into_iter().map(|(n, ms)| ((n as f64).ln(), ms.max(1e-3).ln())).collect();
    if pts.len() < 2 {
        return None;
    }
    let k = pts.len() as f64;
    let (mx, my) = (pts.iter().map(|p| p.0).sum::<f64>() / k, pts.iter().map(|p| p.1).sum::<f64>() / k);
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    Some(sxy / sxx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rec(n: usize, algo: Algo, ms: f64) -> BenchRecord {
        BenchRecord {
            n,
            seed: 0,
            gen: "gnp".into(),
            algo,
            found: true,
            ms,
            ms_decomp: 0.0,
            ms_p2: 0.0,
            ms_p3: 0.0,
            ms_p4: 0.0,
        }
    }

    #[test]
    fn header_and_bits() {
        let mut buf = Vec::new();
        write_csv(&mut buf, &[rec(8, Algo::Oracle, 1.5)]).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text, format!("{CSV_HEADER}\n8,0,gnp,oracle,1,1.5,0.0,0.0,0.0,0.0\n"));
        let mut empty = Vec::new();
        write_csv(&mut empty, &[]).unwrap();
        assert_eq!(read_csv(&empty[..]).unwrap(), vec![]);
        assert!(read_csv("n,seed\n1,2\n".as_bytes()).is_err());
        assert!(read_csv(format!("{CSV_HEADER}\n8,0,gnp,oracle,2,1,0,0,0,0\n").as_bytes()).is_err());
    }

    #[test]
    fn slope_of_exact_power_laws() {
        // ms = n^3 / 1e6 and ms = 5 n^2: slopes 3 and 2.
        let mut recs = Vec::new();
        for n in [1024usize, 2048, 4096, 8192] {
            for jitter in [0.9, 1.0, 1.3] {
                recs.push(rec(n, Algo::Fast, (n as f64).powi(3) / 1e6 * jitter));
                recs.push(rec(n, Algo::Oracle, 5.0 * (n as f64).powi(2) * jitter));
            }
        }
        assert!((fit_slope(&recs, Algo::Fast).unwrap() - 3.0).abs() < 1e-9);
        assert!((fit_slope(&recs, Algo::Oracle).unwrap() - 2.0).abs() < 1e-9);
        assert_eq!(fit_slope(&recs, Algo::Naive), None);
    }

    #[test]
    fn even_counts_take_the_middle_mean() {
        let recs = [rec(4, Algo::Fast, 1.0), rec(4, Algo::Fast, 3.0), rec(4, Algo::Fast, 100.0), rec(4, Algo::Fast, 2.0)];
        assert_eq!(medians(&recs, Algo::Fast)[&4], 2.5);
    }

    #[test]
    fn plan_rows_and_agreement() {
        let mut plan = BenchPlan::new(vec![32, 64], 3);
        plan.jobs = 2;
        let recs = plan.run().unwrap();
        assert_eq!(recs.iter().filter(|r| r.algo == Algo::Fast).count(), 6);
        assert_eq!(recs.len(), 18);
        for cell in recs.chunks(3) {
            assert!(cell.iter().all(|r| r.found == cell[0].found && r.ms >= 0.0));
        }
    }

    proptest! {
        #[test]
        fn csv_round_trips(
            rows in prop::collection::vec(
                (0usize..1 << 20, any::<u64>(), 0usize..3, any::<bool>(), prop::array::uniform5(0.0f64..1e7)),
                0..20,
            )
        ) {
            let records: Vec<BenchRecord> = rows
                .into_iter()
                .map(|(n, seed, a, found, t)| BenchRecord {
                    n,
                    seed,
                    gen: "polarity-blowup".into(),
                    algo: [Algo::Fast, Algo::Oracle, Algo::Naive][a],
                    found,
                    ms: t[0],
                    ms_decomp: t[1],
                    ms_p2: t[2],
                    ms_p3: t[3],
                    ms_p4: t[4],
                })
                .collect();
            let mut buf = Vec::new();
            write_csv(&mut buf, &records).unwrap();
            prop_assert_eq!(read_csv(&buf[..]).unwrap(), records);
        }
    }
}
