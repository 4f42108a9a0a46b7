//! Exact minimum-determinant search: the decay function D(N₁, N₂).
//!
//! The minimum of |det X|² over all nonzero constellation pairs is found
//! by a symmetry-reduced scan. Multiplying either user's element by a
//! unit in {±1, ±i} multiplies the determinant by a unit-magnitude
//! element, so the box [−N, N]⁴ \ {0} splits into orbits of size four per
//! user and only one representative per orbit needs to be visited (a 16×
//! pair reduction). Candidates are prefiltered with a certified float
//! lower bound and every survivor is confirmed with exact Z\[τ\]
//! comparisons, so the reported minimum never rests on floating point.
//!
//! The scan is embarrassingly parallel: user-1 representatives are split
//! into contiguous chunks, each worker keeps a local best, and the local
//! bests are merged exactly at the end. The reported minimum and witness
//! are identical for every worker count.

use std::thread;
use std::time::Instant;

use crate::codes::{det_abs_squared, CodeConfig, UserCoords};
use crate::ring::{QuadInt, RingElem};
use crate::{Error, Result};

/// Relative pruning margin: a pair may be skipped only if its certified
/// float lower bound exceeds the current best by this factor. Double
/// precision on coordinates below ~10⁶ keeps the float error near 1e-14,
/// five orders of magnitude inside the margin.
const PRUNE_MARGIN: f64 = 1.0 + 1e-9;

/// Per-user coordinate ranges of the finite constellations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBox {
    pub n1: u32,
    pub n2: u32,
}

impl SearchBox {
    pub fn new(n1: u32, n2: u32) -> Result<Self> {
        if n1 < 1 || n2 < 1 {
            return Err(Error::InvalidParameter(format!(
                "box sizes must be at least 1, got ({n1}, {n2})"
            )));
        }
        Ok(SearchBox { n1, n2 })
    }
}

/// Which series of boxes a multi-record run sweeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesMode {
    /// D(N, N) for N = 1..=n_max.
    Equal,
    /// D(N, 1) for N = 1..=n_max.
    FixedSecond,
}

/// Execution controls for the search.
#[derive(Debug, Clone)]
pub struct SearchOptions {
    /// Worker threads; 0 means use the available parallelism.
    pub workers: usize,
    /// Maximum admissible number of reduced candidate pairs.
    pub budget: u128,
    /// Allow runs whose reduced pair count exceeds the budget.
    pub force: bool,
}

pub const DEFAULT_BUDGET: u128 = 10_000_000_000;

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            workers: 0,
            budget: DEFAULT_BUDGET,
            force: false,
        }
    }
}

/// One decay-function evaluation with its exact value and witness.
#[derive(Debug, Clone, PartialEq)]
pub struct DecayRecord {
    pub n1: u32,
    pub n2: u32,
    /// Exact minimal |det|² as an element of Z\[τ\]. D(N₁, N₂) is the
    /// square root of this value, taken only at reporting time.
    pub min_detsq: QuadInt,
    pub min_detsq_float: f64,
    pub witness1: UserCoords,
    pub witness2: UserCoords,
    /// Candidate pairs after the 16× orbit reduction.
    pub orbit_reduced_count: u128,
    /// Pairs that survived the float prefilter and were confirmed with
    /// exact arithmetic. Depends on the worker partitioning.
    pub visited_pairs: u64,
    pub wall_time_s: f64,
}

impl DecayRecord {
    /// D(N₁, N₂) itself, i.e. the square root of the exact minimum.
    pub fn decay_value(&self) -> f64 {
        self.min_detsq_float.sqrt()
    }
}

/// Orbits of the nonzero box [−N, N]⁴ under the unit action:
/// ((2N+1)⁴ − 1)/4, saturating for absurd N.
fn orbit_count(n: u32) -> u128 {
    (2 * n as u128 + 1)
        .checked_pow(4)
        .map(|v| (v - 1) / 4)
        .unwrap_or(u128::MAX)
}

/// Number of reduced candidate pairs for a box, used by the budget
/// guard. Saturates at u128::MAX for boxes that could never fit a
/// budget anyway.
pub fn reduced_pair_count(n1: u32, n2: u32) -> u128 {
    orbit_count(n1).saturating_mul(orbit_count(n2))
}

fn orbit_reps_i64(n: u32) -> Result<Vec<[i64; 4]>> {
    if n < 1 {
        return Err(Error::InvalidParameter(format!(
            "orbit enumeration needs N ≥ 1, got {n}"
        )));
    }
    let capacity = usize::try_from(orbit_count(n))
        .map_err(|_| Error::InvalidParameter(format!("box size {n} is too large to enumerate")))?;
    let n = n as i64;
    let mut reps = Vec::with_capacity(capacity);
    for a in -n..=n {
        for b in -n..=n {
            for c in -n..=n {
                for d in -n..=n {
                    let v = [a, b, c, d];
                    if v == [0, 0, 0, 0] {
                        continue;
                    }
                    // orbit of v under multiplication by {1, i, −1, −i}
                    let iv = [-b, a, -d, c];
                    let nv = [-a, -b, -c, -d];
                    let niv = [b, -a, d, -c];
                    if v <= iv && v <= nv && v <= niv {
                        reps.push(v);
                    }
                }
            }
        }
    }
    Ok(reps)
}

/// One representative per orbit of the nonzero box [−N, N]⁴ under the
/// unit action x ↦ ix, i.e. (a, b, c, d) ↦ (−b, a, −d, c). All orbits
/// have size four, the representative is the lexicographically smallest
/// member, and the list has exactly ((2N+1)⁴ − 1)/4 entries.
pub fn enumerate_orbit_reps(n: u32) -> Result<Vec<UserCoords>> {
    Ok(orbit_reps_i64(n)?
        .into_iter()
        .map(|[a, b, c, d]| UserCoords::from_i64(a, b, c, d))
        .collect())
}

struct Rep {
    v: [i64; 4],
    elem: RingElem,
    /// |x| in double precision.
    modulus: f64,
    /// |σ(x)| in double precision.
    sigma_modulus: f64,
}

fn build_reps(n: u32) -> Result<Vec<Rep>> {
    const TAU: f64 = crate::ring::TAU_F64;
    Ok(orbit_reps_i64(n)?
        .into_iter()
        .map(|v| {
            let [a, b, c, d] = v.map(|x| x as f64);
            let modulus = ((a + c * TAU).powi(2) + (b + d * TAU).powi(2)).sqrt();
            let sigma_modulus = (((a + c) - c * TAU).powi(2) + ((b + d) - d * TAU).powi(2)).sqrt();
            Rep {
                v,
                elem: RingElem::from_i64(v[0], v[1], v[2], v[3]),
                modulus,
                sigma_modulus,
            }
        })
        .collect())
}

#[derive(Clone)]
struct Best {
    value: QuadInt,
    value_f: f64,
    w1: [i64; 4],
    w2: [i64; 4],
}

impl Best {
    fn consider(&mut self, value: QuadInt, w1: [i64; 4], w2: [i64; 4]) {
        match value.cmp(&self.value) {
            std::cmp::Ordering::Less => {
                self.value_f = value.to_f64();
                self.value = value;
                self.w1 = w1;
                self.w2 = w2;
            }
            std::cmp::Ordering::Equal => {
                if (w1, w2) < (self.w1, self.w2) {
                    self.w1 = w1;
                    self.w2 = w2;
                }
            }
            std::cmp::Ordering::Greater => {}
        }
    }

    fn merge(mut self, other: Best) -> Best {
        self.consider(other.value, other.w1, other.w2);
        self
    }
}

struct ChunkResult {
    best: Best,
    visited: u64,
}

fn scan_chunk(
    reps1: &[Rep],
    reps2: &[Rep],
    cfg: &CodeConfig,
    gamma_modulus: f64,
    seed: &Best,
    prefilter: bool,
) -> ChunkResult {
    let mut best = seed.clone();
    let mut visited = 0u64;
    for r1 in reps1 {
        let m = r1.modulus;
        let ms = r1.sigma_modulus * gamma_modulus;
        for r2 in reps2 {
            if prefilter {
                let gap = m * r2.sigma_modulus - ms * r2.modulus;
                if gap * gap > best.value_f * PRUNE_MARGIN {
                    continue;
                }
            }
            visited += 1;
            let detsq = det_abs_squared(&r1.elem, &r2.elem, cfg);
            best.consider(detsq, r1.v, r2.v);
        }
    }
    ChunkResult { best, visited }
}

/// Compute D(N₁, N₂)²: the exact minimum of |det X|² over all nonzero
/// constellation pairs, together with the lexicographically smallest
/// witness pair attaining it.
///
/// The result is independent of traversal order and worker count.
/// Refuses boxes whose reduced pair count exceeds the configured budget
/// unless [`SearchOptions::force`] is set.
pub fn decay(bbox: SearchBox, cfg: &CodeConfig, opts: &SearchOptions) -> Result<DecayRecord> {
    let start = Instant::now();
    let required = reduced_pair_count(bbox.n1, bbox.n2);
    if required > opts.budget && !opts.force {
        return Err(Error::BudgetExceeded {
            required,
            budget: opts.budget,
        });
    }

    let reps1 = build_reps(bbox.n1)?;
    let reps2 = build_reps(bbox.n2)?;

    let gamma_modulus = cfg.gamma.to_complex().norm();
    let prefilter = gamma_modulus.is_finite();

    // Every box contains the representative of the orbit of 1, so the
    // scan starts from a valid candidate instead of an empty best. Ties
    // with the seed are always re-examined by the exact path, so the
    // final witness is still the lexicographic minimum.
    let one_rep = [-1i64, 0, 0, 0];
    let minus_one = RingElem::from_i64(-1, 0, 0, 0);
    let seed_value = det_abs_squared(&minus_one, &minus_one, cfg);
    let seed = Best {
        value_f: seed_value.to_f64(),
        value: seed_value,
        w1: one_rep,
        w2: one_rep,
    };

    let workers = if opts.workers == 0 {
        thread::available_parallelism()
            .map(|n| n.get())
            .unwrap_or(1)
    } else {
        opts.workers
    };
    let chunk_size = reps1.len().div_ceil(workers.max(1));

    let results: Vec<ChunkResult> = thread::scope(|scope| {
        let handles: Vec<_> = reps1
            .chunks(chunk_size.max(1))
            .map(|chunk| {
                let (reps2, seed) = (&reps2, &seed);
                scope.spawn(move || scan_chunk(chunk, reps2, cfg, gamma_modulus, seed, prefilter))
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("search worker panicked"))
            .collect()
    });

    let visited = results.iter().map(|r| r.visited).sum();
    let best = results.into_iter().map(|r| r.best).fold(seed, Best::merge);

    Ok(DecayRecord {
        n1: bbox.n1,
        n2: bbox.n2,
        min_detsq_float: best.value.to_f64(),
        min_detsq: best.value,
        witness1: coords_from(best.w1),
        witness2: coords_from(best.w2),
        orbit_reduced_count: required,
        visited_pairs: visited,
        wall_time_s: start.elapsed().as_secs_f64(),
    })
}

fn coords_from(v: [i64; 4]) -> UserCoords {
    UserCoords::new(v[0], v[1], v[2], v[3])
}

/// Evaluate the decay function along a series of boxes.
pub fn decay_series(
    n_max: u32,
    mode: SeriesMode,
    cfg: &CodeConfig,
    opts: &SearchOptions,
) -> Result<Vec<DecayRecord>> {
    if n_max < 1 {
        return Err(Error::InvalidParameter(format!(
            "series length must be at least 1, got {n_max}"
        )));
    }
    (1..=n_max)
        .map(|n| {
            let bbox = match mode {
                SeriesMode::Equal => SearchBox::new(n, n)?,
                SeriesMode::FixedSecond => SearchBox::new(n, 1)?,
            };
            decay(bbox, cfg, opts)
        })
        .collect()
}

/// Re-evaluate the witness pair of a record; exact consistency check.
pub fn witness_detsq(record: &DecayRecord, cfg: &CodeConfig) -> QuadInt {
    let x1 = crate::codes::user_element(&record.witness1);
    let x2 = crate::codes::user_element(&record.witness2);
    det_abs_squared(&x1, &x2, cfg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    #[test]
    fn orbit_rep_counts() {
        assert_eq!(enumerate_orbit_reps(1).unwrap().len(), 20);
        assert_eq!(enumerate_orbit_reps(2).unwrap().len(), 156);
        for n in 1..=3u32 {
            let expected = (((2 * n as usize + 1).pow(4)) - 1) / 4;
            assert_eq!(enumerate_orbit_reps(n).unwrap().len(), expected);
        }
        assert!(enumerate_orbit_reps(0).is_err());
    }

    #[test]
    fn orbit_representative_is_lexicographic_minimum() {
        let reps = orbit_reps_i64(1).unwrap();
        assert!(reps.contains(&[-1, 0, 0, 0]));
        for image in [[1, 0, 0, 0], [0, 1, 0, 0], [0, -1, 0, 0]] {
            assert!(!reps.contains(&image));
        }
        // every orbit contributes exactly once
        for v in &reps {
            let [a, b, c, d] = *v;
            for image in [[-b, a, -d, c], [-a, -b, -c, -d], [b, -a, d, -c]] {
                assert!(!reps.contains(&image), "orbit of {v:?} double-counted");
            }
        }
    }

    #[test]
    fn budget_guard() {
        let cfg = CodeConfig::default();
        let opts = SearchOptions {
            budget: 10,
            ..Default::default()
        };
        let err = decay(SearchBox::new(2, 2).unwrap(), &cfg, &opts).unwrap_err();
        assert!(matches!(
            err,
            Error::BudgetExceeded {
                required: 24336,
                budget: 10
            }
        ));
        let forced = SearchOptions {
            budget: 10,
            force: true,
            ..Default::default()
        };
        assert!(decay(SearchBox::new(2, 2).unwrap(), &cfg, &forced).is_ok());
    }

    #[test]
    fn identical_results_for_any_worker_count() {
        let cfg = CodeConfig::default();
        let mut outcomes = Vec::new();
        for workers in [1usize, 2, 5] {
            let opts = SearchOptions {
                workers,
                ..Default::default()
            };
            let record = decay(SearchBox::new(2, 2).unwrap(), &cfg, &opts).unwrap();
            outcomes.push((record.min_detsq, record.witness1, record.witness2));
        }
        assert_eq!(outcomes[0], outcomes[1]);
        assert_eq!(outcomes[0], outcomes[2]);
    }

    #[test]
    fn frozen_minima_from_brute_force() {
        // expected values computed by the independent quadruple-loop
        // oracle in tests/oracle.rs
        let cfg = CodeConfig::default();
        let opts = SearchOptions::default();
        let d11 = decay(SearchBox::new(1, 1).unwrap(), &cfg, &opts).unwrap();
        assert_eq!(d11.min_detsq, QuadInt::new(26, -16));
        assert_eq!(d11.witness1, UserCoords::from_i64(-1, -1, 0, -1));
        assert_eq!(d11.witness2, UserCoords::from_i64(-1, -1, -1, 0));
        let d41 = decay(SearchBox::new(4, 1).unwrap(), &cfg, &opts).unwrap();
        assert_eq!(d41.min_detsq, QuadInt::new(123, -76));
        assert_eq!(d41.witness1, UserCoords::from_i64(-4, -1, -3, 4));
        assert_eq!(d41.witness2, UserCoords::from_i64(0, 0, -1, 0));
    }

    #[test]
    fn nesting_monotonicity_and_positivity() {
        let cfg = CodeConfig::default();
        let opts = SearchOptions::default();
        let d11 = decay(SearchBox::new(1, 1).unwrap(), &cfg, &opts).unwrap();
        let d21 = decay(SearchBox::new(2, 1).unwrap(), &cfg, &opts).unwrap();
        let d22 = decay(SearchBox::new(2, 2).unwrap(), &cfg, &opts).unwrap();
        assert!(d11.min_detsq.signum() > 0);
        assert!(d21.min_detsq <= d11.min_detsq);
        assert!(d22.min_detsq <= d21.min_detsq);
    }

    #[test]
    fn witness_reproduces_minimum() {
        let cfg = CodeConfig::default();
        let record = decay(
            SearchBox::new(2, 2).unwrap(),
            &cfg,
            &SearchOptions::default(),
        )
        .unwrap();
        assert_eq!(witness_detsq(&record, &cfg), record.min_detsq);
        let n1 = record.n1 as i64;
        for coord in [
            &record.witness1.a,
            &record.witness1.b,
            &record.witness1.c,
            &record.witness1.d,
        ] {
            assert!(coord.to_i64().unwrap().abs() <= n1);
        }
    }

    #[test]
    fn shuffled_traversal_changes_nothing() {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;

        let cfg = CodeConfig::default();
        let mut reps1 = build_reps(2).unwrap();
        let mut reps2 = build_reps(2).unwrap();
        let seed_value = det_abs_squared(
            &RingElem::from_i64(-1, 0, 0, 0),
            &RingElem::from_i64(-1, 0, 0, 0),
            &cfg,
        );
        let seed = Best {
            value_f: seed_value.to_f64(),
            value: seed_value,
            w1: [-1, 0, 0, 0],
            w2: [-1, 0, 0, 0],
        };
        let baseline = scan_chunk(&reps1, &reps2, &cfg, 1.0, &seed, true);
        let mut rng = rand::rngs::StdRng::seed_from_u64(99);
        for _ in 0..3 {
            reps1.shuffle(&mut rng);
            reps2.shuffle(&mut rng);
            let shuffled = scan_chunk(&reps1, &reps2, &cfg, 1.0, &seed, true);
            assert_eq!(shuffled.best.value, baseline.best.value);
            assert_eq!(shuffled.best.w1, baseline.best.w1);
            assert_eq!(shuffled.best.w2, baseline.best.w2);
        }
    }

    #[test]
    fn prefilter_never_exceeds_the_exact_value() {
        use rand::Rng;
        // the certified lower bound (|x₁||σ(x₂)| − |σ(x₁)||x₂|)² must sit
        // below the exact |det|² within the pruning margin
        let cfg = CodeConfig::default();
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        use rand::SeedableRng;
        const TAU: f64 = crate::ring::TAU_F64;
        for _ in 0..2000 {
            let v1: [i64; 4] = std::array::from_fn(|_| rng.gen_range(-1000..=1000));
            let v2: [i64; 4] = std::array::from_fn(|_| rng.gen_range(-1000..=1000));
            let moduli = |v: [i64; 4]| {
                let [a, b, c, d] = v.map(|x| x as f64);
                (
                    ((a + c * TAU).powi(2) + (b + d * TAU).powi(2)).sqrt(),
                    (((a + c) - c * TAU).powi(2) + ((b + d) - d * TAU).powi(2)).sqrt(),
                )
            };
            let (m1, s1) = moduli(v1);
            let (m2, s2) = moduli(v2);
            let gap = m1 * s2 - s1 * m2;
            let lower_bound = gap * gap;
            let exact = det_abs_squared(
                &RingElem::from_i64(v1[0], v1[1], v1[2], v1[3]),
                &RingElem::from_i64(v2[0], v2[1], v2[2], v2[3]),
                &cfg,
            )
            .to_f64();
            assert!(
                lower_bound <= exact * PRUNE_MARGIN + 1e-12,
                "lower bound {lower_bound} above exact {exact} for {v1:?}, {v2:?}"
            );
        }
    }

    #[test]
    fn series_shapes() {
        let cfg = CodeConfig::default();
        let opts = SearchOptions::default();
        let equal = decay_series(3, SeriesMode::Equal, &cfg, &opts).unwrap();
        assert_eq!(equal.len(), 3);
        assert!(equal.windows(2).all(|w| w[1].min_detsq <= w[0].min_detsq));
        assert_eq!((equal[2].n1, equal[2].n2), (3, 3));

        let fixed = decay_series(4, SeriesMode::FixedSecond, &cfg, &opts).unwrap();
        assert_eq!(fixed.len(), 4);
        assert!(fixed.iter().all(|r| r.n2 == 1));
        assert!(fixed.windows(2).all(|w| w[1].min_detsq <= w[0].min_detsq));

        let single = decay_series(1, SeriesMode::Equal, &cfg, &opts).unwrap();
        let direct = decay(SearchBox::new(1, 1).unwrap(), &cfg, &opts).unwrap();
        assert_eq!(single[0].min_detsq, direct.min_detsq);
        assert_eq!(single[0].witness1, direct.witness1);

        assert!(decay_series(0, SeriesMode::Equal, &cfg, &opts).is_err());
    }
}
