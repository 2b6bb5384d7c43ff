//! Monte-Carlo harness. Every trial draws from its own ChaCha stream
//! (`trial_rng(seed, trial)`), so a report depends only on the parameters and
//! the seed, never on how trials are spread over worker threads.

use std::fmt;
use std::str::FromStr;

use altiso_core::main_algorithm::{main_isometry, MainOptions, ResultKind};
use altiso_core::random::{sample_bipnait, sample_liner, trial_rng};
use altiso_core::stability::{is_semistable_capped, is_stable_capped, DEFAULT_STABILITY_CAP};
use altiso_core::{Error, PrimeField};
use serde::{Deserialize, Serialize};

pub const CSV_HEADER: &str = "kind,n,m,q,r,trials,successes,rate,seed";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    /// `r` uniform `n×n` matrices; success = stable.
    Stability,
    /// LinER space; success = the individualisation gate passes.
    #[serde(rename = "propertyF")]
    PropertyF,
    /// LinER space; success = gate passes and `|Aut| ≤ q^n`.
    Autsize,
    /// `m` uniform `n×n` matrices; success = semi-stable.
    SemistableThreshold,
    /// LinER draws; `trials` counts draws, `successes` accepted samples.
    RetryCount,
}

impl Kind {
    pub const ALL: [Kind; 5] = [
        Kind::Stability,
        Kind::PropertyF,
        Kind::Autsize,
        Kind::SemistableThreshold,
        Kind::RetryCount,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Kind::Stability => "stability",
            Kind::PropertyF => "propertyF",
            Kind::Autsize => "autsize",
            Kind::SemistableThreshold => "semistable-threshold",
            Kind::RetryCount => "retry-count",
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Kind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Kind::ALL
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| {
                let names: Vec<_> = Kind::ALL.iter().map(|k| k.name()).collect();
                format!("unknown experiment {s:?}; expected one of {}", names.join(", "))
            })
    }
}

#[derive(Clone, Copy, Debug)]
pub struct Caps {
    pub stability: u128,
    pub individualisations: u128,
    pub pi1: u128,
}

impl Default for Caps {
    fn default() -> Self {
        let main = MainOptions::default();
        Caps {
            stability: DEFAULT_STABILITY_CAP,
            individualisations: main.individualisation_cap,
            pi1: main.pi1_cap,
        }
    }
}

/// One parameter point. Unused columns are `None` and print empty.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Point {
    pub kind: Kind,
    pub n: usize,
    pub m: Option<usize>,
    pub q: u32,
    pub r: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Row {
    pub kind: Kind,
    pub n: usize,
    pub m: Option<usize>,
    pub q: u32,
    pub r: Option<usize>,
    pub trials: u64,
    /// `None` when the row was skipped.
    pub successes: Option<u64>,
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub skipped: Option<String>,
}

impl Row {
    pub fn rate(&self) -> Option<f64> {
        self.successes.map(|s| {
            if self.trials == 0 {
                0.0
            } else {
                s as f64 / self.trials as f64
            }
        })
    }

    pub fn to_csv(&self) -> String {
        let opt = |x: Option<usize>| x.map(|v| v.to_string()).unwrap_or_default();
        let (succ, rate) = match (self.successes, self.rate()) {
            (Some(s), Some(r)) => (s.to_string(), format!("{r:.6}")),
            _ => (String::new(), "skipped".to_string()),
        };
        format!(
            "{},{},{},{},{},{},{},{},{}",
            self.kind,
            self.n,
            opt(self.m),
            self.q,
            opt(self.r),
            self.trials,
            succ,
            rate,
            self.seed
        )
    }
}

#[derive(Clone, Copy, Debug)]
struct Outcome {
    success: bool,
    weight: u64,
}

fn need(x: Option<usize>, name: &str, kind: Kind) -> Result<usize, Error> {
    x.ok_or_else(|| Error::OutOfRange(format!("{kind} needs --{name}")))
}

fn trial(point: &Point, field: PrimeField, caps: &Caps, seed: u64, index: u64) -> Result<Outcome, Error> {
    let mut rng = trial_rng(seed, index);
    let n = point.n;
    let one = |success| Outcome { success, weight: 1 };
    match point.kind {
        Kind::Stability => {
            let r = need(point.r, "r", point.kind)?;
            let b = sample_bipnait(n, n, r, field, &mut rng);
            Ok(one(is_stable_capped(&b, caps.stability)?))
        }
        Kind::SemistableThreshold => {
            let m = need(point.m, "m", point.kind)?;
            let b = sample_bipnait(n, n, m, field, &mut rng);
            Ok(one(is_semistable_capped(&b, caps.stability)?))
        }
        Kind::RetryCount => {
            let m = need(point.m, "m", point.kind)?;
            let (_, draws) = sample_liner(n, m, field, &mut rng)?;
            Ok(Outcome {
                success: true,
                weight: draws as u64,
            })
        }
        Kind::PropertyF | Kind::Autsize => {
            let m = need(point.m, "m", point.kind)?;
            let r = need(point.r, "r", point.kind)?;
            let (g, _) = sample_liner(n, m, field, &mut rng)?;
            if point.kind == Kind::PropertyF {
                let (_, ok) = altiso_core::adjoint::property_f_margin(&g, r)?;
                return Ok(one(ok));
            }
            let opts = MainOptions {
                find_one: false,
                individualisation_cap: caps.individualisations,
                pi1_cap: caps.pi1,
            };
            let res = main_isometry(&g, &g, r, &opts)?;
            let small = res.kind == ResultKind::IsoSet
                && (res.isometries.len() as u128)
                    <= altiso_core::matrix::pow_u128(field.order(), n as u64);
            Ok(one(small))
        }
    }
}

fn worker_count(trials: u64) -> usize {
    let hw = std::thread::available_parallelism().map_or(1, |n| n.get());
    hw.min(trials.max(1) as usize)
}

/// Runs `trials` trials of one point. Cap errors (or any other library error)
/// mark the row skipped; the earliest failing trial supplies the reason.
pub fn run_point(point: &Point, trials: u64, seed: u64, caps: &Caps) -> Row {
    let mut row = Row {
        kind: point.kind,
        n: point.n,
        m: point.m,
        q: point.q,
        r: point.r,
        trials,
        successes: None,
        seed,
        skipped: None,
    };
    let field = match PrimeField::new(point.q) {
        Ok(f) => f,
        Err(e) => {
            row.skipped = Some(e.to_string());
            return row;
        }
    };
    let workers = worker_count(trials);
    let results: Vec<Vec<(u64, Result<Outcome, Error>)>> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                scope.spawn(move || {
                    let mut out = Vec::new();
                    let mut i = w as u64;
                    while i < trials {
                        let res = trial(point, field, caps, seed, i);
                        let failed = res.is_err();
                        out.push((i, res));
                        if failed {
                            break;
                        }
                        i += workers as u64;
                    }
                    out
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
    });
    let mut all: Vec<(u64, Result<Outcome, Error>)> = results.into_iter().flatten().collect();
    all.sort_by_key(|(i, _)| *i);
    let (mut weight, mut successes) = (0u64, 0u64);
    for (_, res) in all {
        match res {
            Ok(o) => {
                weight += o.weight;
                successes += o.success as u64;
            }
            Err(e) => {
                row.skipped = Some(e.to_string());
                return row;
            }
        }
    }
    if point.kind == Kind::RetryCount {
        row.trials = weight;
    }
    row.successes = Some(successes);
    row
}

/// Cartesian product of the parameter lists: `q` outermost, then `n`, `m`,
/// `r`. An empty `m` or `r` list leaves that column unused.
pub fn grid(kind: Kind, ns: &[usize], ms: &[usize], qs: &[u32], rs: &[usize]) -> Vec<Point> {
    let opt = |v: &[usize]| -> Vec<Option<usize>> {
        if v.is_empty() {
            vec![None]
        } else {
            v.iter().map(|&x| Some(x)).collect()
        }
    };
    let (ms, rs) = (opt(ms), opt(rs));
    let mut out = Vec::new();
    for &q in qs {
        for &n in ns {
            for &m in &ms {
                for &r in &rs {
                    out.push(Point { kind, n, m, q, r });
                }
            }
        }
    }
    out
}

pub fn report(points: &[Point], trials: u64, seed: u64, caps: &Caps) -> Vec<Row> {
    points.iter().map(|p| run_point(p, trials, seed, caps)).collect()
}

pub fn to_csv(rows: &[Row]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&r.to_csv());
        out.push('\n');
    }
    out
}
