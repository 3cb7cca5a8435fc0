use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::LabError;
use crate::formula::Symbol;
use crate::kripke::{KripkeModel, ModelFile, ModelSpace, DEFAULT_ENUMERATION_CAP};
use crate::worldset::World;

/// Models handled per unit of parallel work.
const SHARD: u128 = 4096;

/// Uniform sampling in place of exhaustive enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Sampling {
    pub budget: u64,
    pub seed: u64,
}

/// The model space a sweep covers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Bounds {
    pub max_worlds: usize,
    pub atoms: Vec<String>,
    /// When set, `budget` models with exactly `max_worlds` worlds are drawn
    /// instead of enumerating every size from 1 to `max_worlds`.
    pub sample: Option<Sampling>,
}

impl Bounds {
    pub fn exhaustive<S: AsRef<str>>(max_worlds: usize, atoms: &[S]) -> Bounds {
        Bounds {
            max_worlds,
            atoms: atoms.iter().map(|a| a.as_ref().to_string()).collect(),
            sample: None,
        }
    }

    pub fn sampled<S: AsRef<str>>(max_worlds: usize, atoms: &[S], budget: u64, seed: u64) -> Bounds {
        Bounds {
            sample: Some(Sampling { budget, seed }),
            ..Bounds::exhaustive(max_worlds, atoms)
        }
    }
}

/// A failing point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub model: ModelFile,
    pub world: String,
    pub instance: String,
    /// Values of free nominals, if any.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub assignment: Vec<(String, String)>,
}

/// A failing point as found by a probe.
#[derive(Clone, Debug)]
pub(crate) struct Hit {
    pub world: World,
    pub instance: usize,
    pub assignment: Vec<(Symbol, World)>,
}

/// Per-model check run by a sweep.
pub(crate) trait Probe: Sync {
    type Worker;

    fn worker(&self) -> Self::Worker;

    /// Push failing points of `m` to `out`; return the number of points
    /// where the probed formula held.
    fn probe(&self, worker: &mut Self::Worker, m: &Arc<KripkeModel>, out: &mut Vec<Hit>) -> u64;

    fn instance_text(&self, instance: usize) -> String;
}

/// Aggregated result of running a probe over a model space.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub(crate) struct Tally {
    pub models: u64,
    pub points: u64,
    pub satisfied: u64,
    pub failures: u64,
    /// First failures in sweep order, as (order key, model, hit).
    pub first: Vec<(u128, u128, Arc<KripkeModel>, HitKey)>,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub(crate) struct HitKey {
    pub world: World,
    pub instance: usize,
    pub assignment: Vec<(Symbol, World)>,
}

impl Tally {
    fn merge(mut self, other: Tally, keep: usize) -> Tally {
        self.models += other.models;
        self.points += other.points;
        self.satisfied += other.satisfied;
        self.failures += other.failures;
        self.first.extend(other.first);
        self.first.sort_by(|a, b| (a.0, a.1, &a.3).cmp(&(b.0, b.1, &b.3)));
        self.first.truncate(keep);
        self
    }

    pub fn counterexamples<P: Probe>(&self, probe: &P) -> Vec<Counterexample> {
        self.first
            .iter()
            .map(|(_, _, m, h)| Counterexample {
                model: ModelFile::from_model(m),
                world: m.name(h.world).to_string(),
                instance: probe.instance_text(h.instance),
                assignment: h
                    .assignment
                    .iter()
                    .map(|(x, w)| (x.to_string(), m.name(*w).to_string()))
                    .collect(),
            })
            .collect()
    }
}

/// Options shared by every sweep.
#[derive(Clone, Copy, Debug)]
pub struct SweepOptions {
    /// Worker threads; 1 runs on the calling thread.
    pub jobs: usize,
    /// Counterexamples kept in a report.
    pub keep: usize,
    /// Stop after the first model size that yields a failure.
    pub stop_at_first_size: bool,
}

impl Default for SweepOptions {
    fn default() -> Self {
        SweepOptions {
            jobs: 1,
            keep: 16,
            stop_at_first_size: false,
        }
    }
}

fn run_shard<P: Probe>(
    probe: &P,
    worker: &mut P::Worker,
    order: u128,
    models: impl Iterator<Item = (u128, KripkeModel)>,
    keep: usize,
) -> Tally {
    let mut t = Tally::default();
    let mut hits = Vec::new();
    for (key, m) in models {
        let m = Arc::new(m);
        hits.clear();
        t.models += 1;
        t.points += m.len() as u64;
        t.satisfied += probe.probe(worker, &m, &mut hits);
        t.failures += hits.len() as u64;
        for h in hits.drain(..) {
            if t.first.len() < keep {
                t.first.push((
                    order,
                    key,
                    m.clone(),
                    HitKey {
                        world: h.world,
                        instance: h.instance,
                        assignment: h.assignment,
                    },
                ));
            }
        }
    }
    t
}

fn shards<P: Probe>(probe: &P, space: &ModelSpace, order: u128, sample: Option<Sampling>, keep: usize) -> Vec<Tally> {
    let count = match sample {
        None => space.count(),
        Some(s) => s.budget as u128,
    };
    let jobs: Vec<(u128, u128)> = (0..count.div_ceil(SHARD))
        .map(|k| (k * SHARD, ((k + 1) * SHARD).min(count)))
        .collect();
    jobs.into_par_iter()
        .map_init(
            || probe.worker(),
            |worker, (lo, hi)| match sample {
                None => run_shard(probe, worker, order, (lo..hi).map(|i| (i, space.decode(i))), keep),
                Some(s) => {
                    let mut rng = ChaCha8Rng::seed_from_u64(s.seed);
                    rng.set_stream((lo / SHARD) as u64);
                    let models: Vec<(u128, KripkeModel)> = (lo..hi).map(|i| (i, space.sample(&mut rng))).collect();
                    run_shard(probe, worker, order, models.into_iter(), keep)
                }
            },
        )
        .collect()
}

/// Run `probe` over the bounded space, smallest models first.
pub(crate) fn run<P: Probe>(probe: &P, bounds: &Bounds, opts: &SweepOptions) -> Result<Tally, LabError> {
    if bounds.max_worlds == 0 {
        return Err(LabError::Bounds("max_worlds must be at least 1".into()));
    }
    let sizes: Vec<usize> = match bounds.sample {
        None => (1..=bounds.max_worlds).collect(),
        Some(_) => vec![bounds.max_worlds],
    };
    let spaces = sizes
        .iter()
        .map(|&n| ModelSpace::new(n, &bounds.atoms))
        .collect::<Result<Vec<_>, _>>()?;
    if bounds.sample.is_none() {
        for s in &spaces {
            s.check_cap(DEFAULT_ENUMERATION_CAP)?;
        }
    }
    let body = || -> Tally {
        let mut total = Tally::default();
        for (n, space) in spaces.iter().enumerate() {
            let parts = shards(probe, space, n as u128, bounds.sample, opts.keep);
            for p in parts {
                total = total.merge(p, opts.keep);
            }
            if opts.stop_at_first_size && total.failures > 0 {
                break;
            }
        }
        total
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.jobs.max(1))
        .build()
        .map_err(|e| LabError::Threads(e.to_string()))?;
    Ok(pool.install(body))
}
