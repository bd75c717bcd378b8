//! Top-level detection: decomposition followed by the 2-, 3- and 4-clustered
//! phases, plus the witness search built on repeated detection.
//!
//! Every induced 4-cycle touches two, three or four clusters of the
//! decomposition, so a negative answer from all three phases is final.

mod find;
mod phases;
pub mod types;

pub use find::find;
pub use phases::{detect_2_clustered, detect_3_clustered, detect_4_clustered, MAX_JOIN_VERTICES};
pub use types::{Case3, Case4, LevelType3, LevelType4};

use crate::decomposition::{decompose_layers, DecompConfig, Decomposition};
use crate::error::{Error, Result};
use crate::graph_core::{oracle_detect, verify_witness, C4Witness, Graph};
use crate::orderings::TableOutcome;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

/// The step that settled the outcome.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Phase {
    OracleFallback,
    Decomposition,
    TwoClustered,
    ThreeClustered,
    FourClustered,
}

impl Phase {
    pub fn as_str(self) -> &'static str {
        match self {
            Phase::OracleFallback => "oracle-fallback",
            Phase::Decomposition => "decomposition",
            Phase::TwoClustered => "2-clustered",
            Phase::ThreeClustered => "3-clustered",
            Phase::FourClustered => "4-clustered",
        }
    }
}

impl FromStr for Phase {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [
            Phase::OracleFallback,
            Phase::Decomposition,
            Phase::TwoClustered,
            Phase::ThreeClustered,
            Phase::FourClustered,
        ]
        .into_iter()
        .find(|p| p.as_str() == s)
        .ok_or_else(|| Error::Parse { line: 1, message: format!("unknown phase `{s}`") })
    }
}

/// Why the oracle answered instead of the phases.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Fallback {
    None,
    /// Fewer than `n0` vertices.
    SmallGraph,
    /// A phase raised a contract error; see [`DetectionReport::diagnostic`].
    Contract,
}

impl Fallback {
    pub fn as_str(self) -> &'static str {
        match self {
            Fallback::None => "none",
            Fallback::SmallGraph => "small-n",
            Fallback::Contract => "contract",
        }
    }
}

/// Wall-clock milliseconds per phase.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct PhaseTimings {
    pub decomp: f64,
    pub p2: f64,
    pub p3: f64,
    pub p4: f64,
    pub total: f64,
}

/// Outcome of [`detect`].
///
/// Serializes to one line of space-separated `key=value` fields:
/// `outcome` (`found` or `none`), `phase`, `witness` (`a,b,c,d` or `-`),
/// `n`, `ms_decomp`, `ms_p2`, `ms_p3`, `ms_p4`, `ms_total`, `fallback`
/// (`none`, `small-n` or `contract`).
#[derive(Clone, Debug, PartialEq)]
pub struct DetectionReport {
    pub found: bool,
    pub phase: Phase,
    /// Present only when `found`; always verified.
    pub witness: Option<C4Witness>,
    pub n: usize,
    pub timings: PhaseTimings,
    pub fallback: Fallback,
    /// The contract error behind a [`Fallback::Contract`]; not serialized.
    pub diagnostic: Option<String>,
}

impl fmt::Display for DetectionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t = &self.timings;
        write!(
            f,
            "outcome={} phase={} witness={} n={} ms_decomp={:.3} ms_p2={:.3} ms_p3={:.3} ms_p4={:.3} ms_total={:.3} fallback={}",
            if self.found { "found" } else { "none" },
            self.phase.as_str(),
            self.witness.map_or_else(|| "-".to_string(), |w| {
                let [a, b, c, d] = w.as_array();
                format!("{a},{b},{c},{d}")
            }),
            self.n,
            t.decomp,
            t.p2,
            t.p3,
            t.p4,
            t.total,
            self.fallback.as_str()
        )
    }
}

impl FromStr for DetectionReport {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |m: String| Error::Parse { line: 1, message: m };
        let mut fields = std::collections::HashMap::new();
        for part in s.split_whitespace() {
            let (k, v) = part.split_once('=').ok_or_else(|| bad(format!("field `{part}` has no `=`")))?;
            fields.insert(k, v);
        }
        let get = |k: &str| fields.get(k).copied().ok_or_else(|| bad(format!("missing field `{k}`")));
        let ms = |k: &str| -> Result<f64> { get(k)?.parse().map_err(|_| bad(format!("bad number in `{k}`"))) };
        let found = match get("outcome")? {
            "found" => true,
            "none" => false,
            o => return Err(bad(format!("unknown outcome `{o}`"))),
        };
        let witness = match get("witness")? {
            "-" => None,
            w => {
                let ids: Vec<usize> = w
                    .split(',')
                    .map(|x| x.parse().map_err(|_| bad(format!("bad witness `{w}`"))))
                    .collect::<Result<_>>()?;
                let [a, b, c, d] = ids[..] else { return Err(bad(format!("bad witness `{w}`"))) };
                Some(C4Witness::new(a, b, c, d))
            }
        };
        let fallback = match get("fallback")? {
            "none" => Fallback::None,
            "small-n" => Fallback::SmallGraph,
            "contract" => Fallback::Contract,
            o => return Err(bad(format!("unknown fallback `{o}`"))),
        };
        Ok(Self {
            found,
            phase: get("phase")?.parse()?,
            witness,
            n: get("n")?.parse().map_err(|_| bad("bad n".into()))?,
            timings: PhaseTimings {
                decomp: ms("ms_decomp")?,
                p2: ms("ms_p2")?,
                p3: ms("ms_p3")?,
                p4: ms("ms_p4")?,
                total: ms("ms_total")?,
            },
            fallback,
            diagnostic: None,
        })
    }
}

fn millis(since: Instant) -> f64 {
    since.elapsed().as_secs_f64() * 1e3
}

/// Decides whether `g` contains an induced 4-cycle.
///
/// Graphs with fewer than `cfg.n0` vertices go to the brute-force oracle.
/// A contract error inside the phases is reported as a diagnostic and the
/// oracle supplies the verdict.
pub fn detect(g: &Graph, cfg: &DecompConfig) -> DetectionReport {
    let start = Instant::now();
    let mut report = DetectionReport {
        found: false,
        phase: Phase::OracleFallback,
        witness: None,
        n: g.n(),
        timings: PhaseTimings::default(),
        fallback: Fallback::SmallGraph,
        diagnostic: None,
    };
    let run = if g.n() < cfg.n0 {
        Err(None)
    } else {
        cfg.validate().map_err(Some).and_then(|_| run_phases(g, cfg, &mut report).map_err(Some))
    };
    if let Err(diag) = run {
        if diag.is_some() {
            report.fallback = Fallback::Contract;
            report.diagnostic = diag.map(|e| e.to_string());
        }
        report.phase = Phase::OracleFallback;
        report.witness = oracle_detect(g);
        report.found = report.witness.is_some();
    } else {
        report.fallback = Fallback::None;
    }
    report.timings.total = millis(start);
    report
}

fn run_phases(g: &Graph, cfg: &DecompConfig, report: &mut DetectionReport) -> Result<()> {
    let verified = |w: C4Witness| -> Result<C4Witness> {
        if verify_witness(g, &w) {
            Ok(w)
        } else {
            Err(Error::Contract(format!("reported witness {w} does not verify")))
        }
    };
    let t = Instant::now();
    let decomposition = decompose_layers(g, cfg);
    report.timings.decomp = millis(t);
    let d = match decomposition {
        Decomposition::Found(w) => {
            report.witness = Some(verified(w)?);
            report.found = true;
            report.phase = Phase::Decomposition;
            return Ok(());
        }
        Decomposition::Layers(d) => d,
    };
    let t = Instant::now();
    let table = detect_2_clustered(g, &d);
    report.timings.p2 = millis(t);
    let table = match table {
        TableOutcome::Found(w) => {
            report.witness = Some(verified(w)?);
            report.found = true;
            report.phase = Phase::TwoClustered;
            return Ok(());
        }
        TableOutcome::Table(t) => t,
    };
    let t = Instant::now();
    let p3 = detect_3_clustered(g, &d, &table)?;
    report.timings.p3 = millis(t);
    if p3 {
        report.found = true;
        report.phase = Phase::ThreeClustered;
        return Ok(());
    }
    let t = Instant::now();
    report.found = detect_4_clustered(g, &d, &table)?;
    report.timings.p4 = millis(t);
    report.phase = Phase::FourClustered;
    Ok(())
}
