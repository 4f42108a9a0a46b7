//! Shared test support: an independent brute-force oracle for the decay
//! function. No symmetry reduction, no pruning, no floating point — a
//! plain quadruple loop over every nonzero coordinate vector of both
//! boxes with exact minimum tracking, kept deliberately separate from the
//! search implementation it validates.

use decaylab::codes::{det_abs_squared, CodeConfig};
use decaylab::ring::{QuadInt, RingElem};

pub fn box_vectors(n: i64) -> Vec<[i64; 4]> {
    let mut out = Vec::new();
    for a in -n..=n {
        for b in -n..=n {
            for c in -n..=n {
                for d in -n..=n {
                    if (a, b, c, d) != (0, 0, 0, 0) {
                        out.push([a, b, c, d]);
                    }
                }
            }
        }
    }
    out
}

pub struct OracleResult {
    pub min_detsq: QuadInt,
    pub witness1: [i64; 4],
    pub witness2: [i64; 4],
}

/// Exact minimum of |det|² over all nonzero pairs, with the
/// lexicographically smallest attaining (witness1, witness2).
pub fn brute_force_decay(n1: i64, n2: i64, cfg: &CodeConfig) -> OracleResult {
    let vectors1: Vec<(RingElem, [i64; 4])> = box_vectors(n1)
        .into_iter()
        .map(|v| (RingElem::from_i64(v[0], v[1], v[2], v[3]), v))
        .collect();
    let vectors2: Vec<(RingElem, [i64; 4])> = box_vectors(n2)
        .into_iter()
        .map(|v| (RingElem::from_i64(v[0], v[1], v[2], v[3]), v))
        .collect();

    let mut best: Option<OracleResult> = None;
    for (x1, v1) in &vectors1 {
        for (x2, v2) in &vectors2 {
            let detsq = det_abs_squared(x1, x2, cfg);
            let replace = match &best {
                None => true,
                Some(current) => {
                    detsq < current.min_detsq
                        || (detsq == current.min_detsq
                            && (*v1, *v2) < (current.witness1, current.witness2))
                }
            };
            if replace {
                best = Some(OracleResult {
                    min_detsq: detsq,
                    witness1: *v1,
                    witness2: *v2,
                });
            }
        }
    }
    best.expect("nonempty boxes")
}
