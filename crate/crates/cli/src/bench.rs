//! Benchmark harness: times the fast routines and the brute-force baselines
//! on seeded random inputs and reports one CSV row per run.
//!
//! Reproducibility contract: a root SplitMix64 generator is seeded with the
//! `--seed` value and draws one cell seed per `(n, algo, rep)` in that
//! nesting order. Each cell then seeds its own SplitMix64 and draws the
//! inputs — `f` (m coefficients) then `g` (n coefficients) for the
//! composition algorithms, `w` (n coefficients) then `g` (n coefficients)
//! for the projection algorithms — so identical flags and seed reproduce
//! identical inputs everywhere; only the timings vary.

use std::fmt;
use std::time::Instant;

use pscomp::reference::{compose_horner, powproj_naive};
use pscomp::rng::SplitMix64;
use pscomp::{compose_series, power_projection, LinearForm, PrimeModulus};

/// One timed routine.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algo {
    ComposeFast,
    ComposeHorner,
    PowprojFast,
    PowprojNaive,
}

impl Algo {
    pub const ALL: [Algo; 4] = [
        Algo::ComposeFast,
        Algo::ComposeHorner,
        Algo::PowprojFast,
        Algo::PowprojNaive,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algo::ComposeFast => "compose_fast",
            Algo::ComposeHorner => "compose_horner",
            Algo::PowprojFast => "powproj_fast",
            Algo::PowprojNaive => "powproj_naive",
        }
    }

    pub fn from_name(name: &str) -> Option<Algo> {
        Algo::ALL.into_iter().find(|a| a.name() == name)
    }
}

impl fmt::Display for Algo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// How the y-order is derived from each `n` in the list.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MRule {
    /// `m = n` (the default).
    EqualN,
    /// `m = k` regardless of `n`.
    Fixed(usize),
}

impl MRule {
    pub fn parse(text: &str) -> Result<MRule, String> {
        if text == "n" {
            return Ok(MRule::EqualN);
        }
        if let Some(k) = text.strip_prefix("fixed:") {
            let k: usize = k
                .parse()
                .map_err(|_| format!("invalid m-rule constant: {k:?}"))?;
            if k == 0 {
                return Err("m-rule constant must be positive".to_string());
            }
            return Ok(MRule::Fixed(k));
        }
        Err(format!(
            "unknown m-rule {text:?}; expected \"n\" or \"fixed:<k>\""
        ))
    }

    pub fn apply(self, n: usize) -> usize {
        match self {
            MRule::EqualN => n,
            MRule::Fixed(k) => k,
        }
    }
}

/// One benchmark measurement row.
#[derive(Debug, Clone)]
pub struct BenchRecord {
    pub algo: Algo,
    pub n: usize,
    pub m: usize,
    pub seed: u64,
    pub elapsed_ms: f64,
}

pub const CSV_HEADER: &str = "algo,n,m,seed,elapsed_ms";

/// Plain numeric CSV; no field ever needs quoting.
pub fn write_csv(records: &[BenchRecord]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in records {
        out.push_str(&format!(
            "{},{},{},{},{:.6}\n",
            r.algo, r.n, r.m, r.seed, r.elapsed_ms
        ));
    }
    out
}

/// Generates the cell inputs from `seed` and times one run of `algo`.
pub fn run_cell(algo: Algo, n: usize, m: usize, seed: u64, md: &PrimeModulus) -> BenchRecord {
    let mut rng = SplitMix64::new(seed);
    let elapsed_ms = match algo {
        Algo::ComposeFast | Algo::ComposeHorner => {
            let f = rng.poly(m, md);
            let g = rng.poly(n, md);
            let start = Instant::now();
            let out = match algo {
                Algo::ComposeFast => compose_series(&f, &g, n, md).expect("valid sizes"),
                _ => compose_horner(&f, &g, n, md),
            };
            let elapsed = start.elapsed();
            std::hint::black_box(out);
            elapsed.as_secs_f64() * 1e3
        }
        Algo::PowprojFast | Algo::PowprojNaive => {
            let w = LinearForm::new(rng.poly(n, md).into_coeffs());
            let g = rng.poly(n, md);
            let start = Instant::now();
            let out = match algo {
                Algo::PowprojFast => power_projection(&w, &g, n, m, md).expect("valid sizes"),
                _ => powproj_naive(&w, &g, n, m, md),
            };
            let elapsed = start.elapsed();
            std::hint::black_box(out);
            elapsed.as_secs_f64() * 1e3
        }
    };
    BenchRecord {
        algo,
        n,
        m,
        seed,
        elapsed_ms,
    }
}

/// Full benchmark sweep in the documented deterministic order.
pub fn run_bench(
    n_list: &[usize],
    m_rule: MRule,
    reps: usize,
    seed: u64,
    algos: &[Algo],
    md: &PrimeModulus,
) -> Vec<BenchRecord> {
    let mut root = SplitMix64::new(seed);
    let mut records = Vec::with_capacity(n_list.len() * algos.len() * reps);
    for &n in n_list {
        let m = m_rule.apply(n);
        for &algo in algos {
            for _ in 0..reps {
                let cell_seed = root.next_u64();
                records.push(run_cell(algo, n, m, cell_seed, md));
            }
        }
    }
    records
}

/// Median of the elapsed times, in milliseconds.
pub fn median_ms(records: &[BenchRecord]) -> f64 {
    assert!(!records.is_empty());
    let mut times: Vec<f64> = records.iter().map(|r| r.elapsed_ms).collect();
    times.sort_by(f64::total_cmp);
    times[times.len() / 2]
}
