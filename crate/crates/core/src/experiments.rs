//! Reproducible experiments: Monte Carlo runs compared against the exact
//! closed forms, exhaustive enumeration of small skeletons, exact
//! unlinkedness fractions and the circle-free convergence report.
//!
//! Every trial derives its own random stream from the master seed and the
//! trial index, and per-trial results are integers aggregated with exact
//! sums, so a report is byte-identical for any worker count.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::combinatorics::{
    self, catalan, count_exact, expected_twists, ratio_sequence, ratio_to_f64, volume_bounds,
    VolumeBounds,
};
use crate::meander::{CrossingAssignment, LinkDiagram, MeanderGraph};
use crate::pstring::{enumerate_with_cap, BallotTable};

/// Largest `s` for exhaustive enumeration of all `C_s^2` skeleton pairs.
pub const ENUMERATION_MAX_S: u64 = 6;
/// Largest `r` for the exact unlinkedness enumeration (`4^10` combos).
pub const UNLINKED_MAX_R: u64 = 10;

#[derive(Debug, Error, PartialEq)]
pub enum ExperimentError {
    #[error("unknown statistic {0:?}")]
    UnknownStatistic(String),
    #[error("trials must be at least 1")]
    NoTrials,
    #[error("s must be at least {min} for {what}")]
    STooSmall { min: u64, what: &'static str },
    #[error("r must be at least 1")]
    RTooSmall,
    #[error("exhaustive enumeration supports s <= {ENUMERATION_MAX_S}, got {0}")]
    EnumerationTooLarge(u64),
    #[error("exact unlinkedness supports 1 <= r <= {UNLINKED_MAX_R}, got {0}")]
    UnlinkedOutOfRange(u64),
}

/// Per-diagram statistics with a Monte Carlo estimator.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Statistic {
    PiercedCircles,
    Nestings,
    NestingBigons,
    FaceBigons,
    Twists,
    Components,
    UnlinkedCircleFraction,
    CrossingCount,
}

impl Statistic {
    pub const ALL: [Statistic; 8] = [
        Statistic::PiercedCircles,
        Statistic::Nestings,
        Statistic::NestingBigons,
        Statistic::FaceBigons,
        Statistic::Twists,
        Statistic::Components,
        Statistic::UnlinkedCircleFraction,
        Statistic::CrossingCount,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Statistic::PiercedCircles => "pierced_circles",
            Statistic::Nestings => "nestings",
            Statistic::NestingBigons => "nesting_bigons",
            Statistic::FaceBigons => "face_bigons",
            Statistic::Twists => "twists",
            Statistic::Components => "components",
            Statistic::UnlinkedCircleFraction => "unlinked_circle_fraction",
            Statistic::CrossingCount => "crossing_count",
        }
    }

    /// Exact expectation, when one exists. Components only has the bounds
    /// `r <= mean <= s r`, and face bigons depend on the kink pattern.
    pub fn closed_form(self, s: u64, r: u64) -> Option<BigRational> {
        match self {
            Statistic::PiercedCircles => Some(combinatorics::expected_pierced_circles(s)),
            Statistic::Nestings => Some(combinatorics::expected_nestings(s)),
            Statistic::NestingBigons => Some(combinatorics::expected_bigons(s)),
            Statistic::Twists => Some(expected_twists(s, r)),
            Statistic::FaceBigons | Statistic::Components => None,
            Statistic::UnlinkedCircleFraction => Some(BigRational::new(
                BigInt::one(),
                BigInt::from(2u64).pow(r as u32),
            )),
            Statistic::CrossingCount => Some(BigRational::from_integer(BigInt::from(
                (2 * s as i128 - 1) * r as i128 * r as i128,
            ))),
        }
    }
}

impl FromStr for Statistic {
    type Err = ExperimentError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Statistic::ALL
            .into_iter()
            .find(|stat| stat.name() == s)
            .ok_or_else(|| ExperimentError::UnknownStatistic(s.to_string()))
    }
}

impl fmt::Display for Statistic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Aggregated result of one Monte Carlo run.
#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentReport {
    pub statistic: Statistic,
    pub s: u64,
    pub r: u64,
    pub trials: u64,
    pub seed: u64,
    pub mean: f64,
    pub stderr: f64,
    pub closed_form: Option<BigRational>,
    pub z: Option<f64>,
}

#[derive(Serialize)]
struct ReportRecord<'a> {
    statistic: &'a str,
    s: u64,
    r: u64,
    trials: u64,
    seed: u64,
    mean: f64,
    stderr: f64,
    closed_form: Option<String>,
    z: Option<f64>,
}

impl ExperimentReport {
    pub fn to_json(&self) -> String {
        let record = ReportRecord {
            statistic: self.statistic.name(),
            s: self.s,
            r: self.r,
            trials: self.trials,
            seed: self.seed,
            mean: self.mean,
            stderr: self.stderr,
            closed_form: self.closed_form.as_ref().map(|c| c.to_string()),
            z: self.z,
        };
        serde_json::to_string(&record).expect("plain data serializes")
    }

    pub const CSV_HEADER: &'static str = "statistic,s,r,trials,seed,mean,stderr,closed_form,z";

    pub fn to_csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{}",
            self.statistic.name(),
            self.s,
            self.r,
            self.trials,
            self.seed,
            self.mean,
            self.stderr,
            self.closed_form
                .as_ref()
                .map(|c| c.to_string())
                .unwrap_or_default(),
            self.z.map(|z| z.to_string()).unwrap_or_default(),
        )
    }
}

impl fmt::Display for ExperimentReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "statistic    {}", self.statistic.name())?;
        writeln!(f, "s, r         {}, {}", self.s, self.r)?;
        writeln!(f, "trials       {}", self.trials)?;
        writeln!(f, "seed         {}", self.seed)?;
        writeln!(f, "mean         {}", self.mean)?;
        writeln!(f, "stderr       {}", self.stderr)?;
        match &self.closed_form {
            Some(c) => writeln!(f, "closed form  {} = {}", c, ratio_to_f64(c))?,
            None => writeln!(f, "closed form  (none)")?,
        }
        match self.z {
            Some(z) => write!(f, "z            {z}"),
            None => write!(f, "z            (n/a)"),
        }
    }
}

/// Independent random stream for one trial of a seeded run.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

fn sample_skeleton(table: &BallotTable, rng: &mut ChaCha8Rng) -> MeanderGraph {
    let top = table.sample(rng);
    let bottom = table.sample(rng);
    MeanderGraph::new(top, bottom).expect("sampled strings have equal positive length")
}

fn trial_value(
    statistic: Statistic,
    s: u64,
    r: u64,
    table: &BallotTable,
    seed: u64,
    trial: u64,
) -> i64 {
    let mut rng = trial_rng(seed, trial);
    let crossings = (2 * s as i64 - 1) * r as i64 * r as i64;
    match statistic {
        Statistic::CrossingCount => crossings,
        Statistic::Nestings => table.sample(&mut rng).nestings().len() as i64,
        Statistic::PiercedCircles => {
            sample_skeleton(table, &mut rng).pierced_circles().len() as i64
        }
        Statistic::NestingBigons => {
            let g = sample_skeleton(table, &mut rng);
            (g.top().nestings().len() + g.bottom().nestings().len()) as i64
        }
        Statistic::Twists => {
            let g = sample_skeleton(table, &mut rng);
            crossings - (g.top().nestings().len() + g.bottom().nestings().len()) as i64
        }
        Statistic::Components => {
            (sample_skeleton(table, &mut rng).cycles().len() * r as usize) as i64
        }
        Statistic::FaceBigons => {
            let g = sample_skeleton(table, &mut rng);
            let assignment = CrossingAssignment::sample(g.s(), r as usize, &mut rng);
            let d = LinkDiagram::assemble(g, assignment).expect("shapes match");
            d.bigon_count() as i64
        }
        Statistic::UnlinkedCircleFraction => {
            // Resample until the skeleton carries a pierced circle, then
            // test the first circle's innermost copy against every axis
            // copy through the assembled diagram.
            let g = loop {
                let g = sample_skeleton(table, &mut rng);
                if !g.pierced_circles().is_empty() {
                    break g;
                }
            };
            let position = g.pierced_circles()[0];
            let assignment = CrossingAssignment::sample(g.s(), r as usize, &mut rng);
            let d = LinkDiagram::assemble(g, assignment).expect("shapes match");
            let circle = d
                .pierced_circle_component(position, 1)
                .expect("circle present by construction");
            i64::from(d.circle_fully_unlinked(circle).expect("pierced circle"))
        }
    }
}

/// Runs `trials` independent diagrams and aggregates the statistic.
/// `workers = 0` uses the available parallelism; the report is identical
/// for every worker count.
pub fn run_monte_carlo(
    statistic: Statistic,
    s: u64,
    r: u64,
    trials: u64,
    seed: u64,
    workers: usize,
) -> Result<ExperimentReport, ExperimentError> {
    if trials == 0 {
        return Err(ExperimentError::NoTrials);
    }
    if r == 0 {
        return Err(ExperimentError::RTooSmall);
    }
    let min_s = if statistic == Statistic::UnlinkedCircleFraction {
        2
    } else {
        1
    };
    if s < min_s {
        return Err(ExperimentError::STooSmall {
            min: min_s,
            what: statistic.name(),
        });
    }

    let table = BallotTable::new(s as usize);
    let workers = effective_workers(workers, trials);
    let chunk = trials.div_ceil(workers as u64);

    let mut partials: Vec<(i128, i128)> = Vec::with_capacity(workers);
    std::thread::scope(|scope| {
        let mut handles = Vec::with_capacity(workers);
        for w in 0..workers {
            let table = &table;
            handles.push(scope.spawn(move || {
                let lo = w as u64 * chunk;
                let hi = trials.min(lo + chunk);
                let mut sum: i128 = 0;
                let mut sum_sq: i128 = 0;
                for trial in lo..hi {
                    let value = trial_value(statistic, s, r, table, seed, trial) as i128;
                    sum += value;
                    sum_sq += value * value;
                }
                (sum, sum_sq)
            }));
        }
        for handle in handles {
            partials.push(handle.join().expect("worker does not panic"));
        }
    });

    let sum: i128 = partials.iter().map(|p| p.0).sum();
    let sum_sq: i128 = partials.iter().map(|p| p.1).sum();
    let n = trials as f64;
    let mean = sum as f64 / n;
    let variance = if trials > 1 {
        ((sum_sq as f64 - (sum as f64) * (sum as f64) / n) / (n - 1.0)).max(0.0)
    } else {
        0.0
    };
    let stderr = (variance / n).sqrt();
    let closed_form = statistic.closed_form(s, r);
    let z = closed_form
        .as_ref()
        .and_then(|c| (stderr > 0.0).then(|| (mean - ratio_to_f64(c)) / stderr));

    Ok(ExperimentReport {
        statistic,
        s,
        r,
        trials,
        seed,
        mean,
        stderr,
        closed_form,
        z,
    })
}

fn effective_workers(requested: usize, trials: u64) -> usize {
    let available = if requested == 0 {
        std::thread::available_parallelism()
            .map(|n| n.get())
            .unwrap_or(1)
    } else {
        requested
    };
    available.min(trials as usize).max(1)
}

/// Exact histogram of pierced-circle counts over all skeleton pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumerationReport {
    pub s: u64,
    /// Graphs with `k` pierced circles, indexed by `k`.
    pub histogram: Vec<u64>,
    /// Entrywise agreement with the inclusion-exclusion counts.
    pub matches: Vec<bool>,
}

impl EnumerationReport {
    pub fn all_match(&self) -> bool {
        self.matches.iter().all(|&m| m)
    }

    pub fn total(&self) -> u64 {
        self.histogram.iter().sum()
    }
}

/// Counts pierced circles over every pair of strings of `s` pairs and
/// compares the histogram with the exact counting formulas.
pub fn run_enumeration(s: u64) -> Result<EnumerationReport, ExperimentError> {
    if s == 0 {
        return Err(ExperimentError::STooSmall {
            min: 1,
            what: "enumeration",
        });
    }
    if s > ENUMERATION_MAX_S {
        return Err(ExperimentError::EnumerationTooLarge(s));
    }
    let all =
        enumerate_with_cap(s as usize, ENUMERATION_MAX_S as usize).expect("cap checked above");
    let mut histogram = vec![0u64; s as usize + 1];
    for top in &all {
        for bottom in &all {
            let g = MeanderGraph::new(top.clone(), bottom.clone())
                .expect("equal lengths by construction");
            histogram[g.pierced_circles().len()] += 1;
        }
    }
    let matches = histogram
        .iter()
        .enumerate()
        .map(|(k, &count)| num_bigint::BigUint::from(count) == count_exact(s, k as u64))
        .collect();
    Ok(EnumerationReport {
        s,
        histogram,
        matches,
    })
}

/// Exact fraction of sense combinations leaving one pierced circle copy
/// unlinked from all `r` axis copies: enumerates all `4^r` combinations
/// of the two letters per axis copy.
pub fn run_unlinked_exact(r: u64) -> Result<BigRational, ExperimentError> {
    if !(1..=UNLINKED_MAX_R).contains(&r) {
        return Err(ExperimentError::UnlinkedOutOfRange(r));
    }
    let combos = 1u64 << (2 * r);
    let mut unlinked = 0u64;
    for mask in 0..combos {
        let all_equal = (0..r).all(|a| {
            let first = (mask >> (2 * a)) & 1;
            let second = (mask >> (2 * a + 1)) & 1;
            first == second
        });
        if all_equal {
            unlinked += 1;
        }
    }
    Ok(BigRational::new(
        BigInt::from(unlinked),
        BigInt::from(combos),
    ))
}

/// One checkpoint of the circle-free convergence run.
#[derive(Clone, Debug)]
pub struct ConvergencePoint {
    pub s: u64,
    /// Circle-free fraction as a float.
    pub fraction: f64,
    /// Growth ratio of consecutive circle-free counts.
    pub growth: f64,
    /// Distance of the growth ratio from the dominant root `7 + 4 sqrt 3`.
    pub gap: f64,
}

/// Evaluates the exact ratio sequence and reports floats at the given
/// checkpoints (clamped to `max_s`).
pub fn run_convergence(max_s: u64, checkpoints: &[u64]) -> Vec<ConvergencePoint> {
    assert!(max_s >= 4);
    let sequence = ratio_sequence(max_s);
    let dominant = combinatorics::characteristic_roots()[2];
    checkpoints
        .iter()
        .filter(|&&s| s >= 1 && s <= max_s)
        .map(|&s| {
            let point = &sequence[s as usize - 1];
            let growth = point.growth.as_ref().map(ratio_to_f64).unwrap_or(f64::NAN);
            ConvergencePoint {
                s,
                fraction: ratio_to_f64(&point.fraction),
                growth,
                gap: (growth - dominant).abs(),
            }
        })
        .collect()
}

/// Volume bounds together with the twist expectation they come from.
#[derive(Clone, Debug)]
pub struct VolumeReport {
    pub s: u64,
    pub r: u64,
    pub alternating: bool,
    pub expected_twists: BigRational,
    pub bounds: VolumeBounds,
}

pub fn expected_volume_report(s: u64, r: u64, alternating: bool) -> VolumeReport {
    VolumeReport {
        s,
        r,
        alternating,
        expected_twists: expected_twists(s, r),
        bounds: volume_bounds(s, r, alternating),
    }
}

/// Chi-square-free sanity bound used by callers: `sum E = C_s^2`.
pub fn enumeration_total(s: u64) -> u64 {
    let c = catalan(s);
    (&c * &c).to_u64().expect("small s")
}
