//! The small-determinant sequence z_n = a_n + i√5·b_n, its cyclotomic
//! factorizations, and balanced factor splits between the two users.
//!
//! Powers of the unit α = 2 + √5 generate arbitrarily small algebraic
//! integers (2−√5)ⁿ = a_n − b_n√5. Setting x₁ = z_n, x₂ = 1 realizes a
//! determinant of absolute value √2·|2−√5|ⁿ but leaves user 2 with a
//! one-point constellation. Whenever 5 | n the number z_n factors through
//! the quadratic factors of φ₂₀ evaluated at α^{2n}, which lets the
//! coordinate budget be split far more evenly between the users; applying
//! the factorization recursively at indices divisible by 25 balances it
//! further still.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::codes::{det_abs_squared, CodeConfig};
use crate::ring::{QuadInt, RingElem};
use crate::{Error, Result};

/// ln|2−√5| = −ln(2+√5).
fn ln_small_unit() -> f64 {
    (5f64.sqrt() - 2.0).ln()
}

/// The pair (a_n, b_n) with a_n − b_n√5 = (2−√5)ⁿ.
///
/// Satisfies a_{n+1} = 2a_n + 5b_n, b_{n+1} = a_n + 2b_n from (1, 0), the
/// norm identity a_n² − 5b_n² = (−1)ⁿ, and |b_n| < |a_n| for n > 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlphaPower {
    pub n: u32,
    pub a: BigInt,
    pub b: BigInt,
}

/// Generate (a_n, b_n) by the recurrence.
pub fn alpha_power(n: u32) -> AlphaPower {
    let mut a = BigInt::one();
    let mut b = BigInt::zero();
    for _ in 0..n {
        let next_a = 2 * &a + 5 * &b;
        let next_b = &a + 2 * &b;
        a = next_a;
        b = next_b;
    }
    AlphaPower { n, a, b }
}

/// z_n = a_n + i√5·b_n in coordinates (a_n, −b_n, 0, 2b_n), using
/// i√5 = −i + 2iτ.
pub fn z_element(n: u32) -> Result<RingElem> {
    if n < 1 {
        return Err(Error::InvalidParameter(format!("z_n needs n ≥ 1, got {n}")));
    }
    let ap = alpha_power(n);
    Ok(RingElem {
        a: ap.a,
        b: -&ap.b,
        c: BigInt::zero(),
        d: 2 * ap.b,
    })
}

/// The factor m_j(n) = α^{−2n}·p_j(α^{2n}) of a_{10n}/a_{2n}, in closed
/// form through α^{2n} − α^{−2n} = 2b_{2n}√5:
/// m₁ = 2b√5 + i(1−τ), m₂ = 2b√5 − i(1−τ), m₃ = 2b√5 + iτ,
/// m₄ = 2b√5 − iτ, with b = b_{2n}.
pub fn m_factor(j: u8, n: u32) -> Result<RingElem> {
    if n < 1 {
        return Err(Error::InvalidParameter(format!("m_j needs n ≥ 1, got {n}")));
    }
    let b = alpha_power(2 * n).b;
    // 2b√5 = −2b + 4bτ
    let (real_a, real_c) = (-2 * &b, 4 * &b);
    let (im_b, im_d): (BigInt, BigInt) = match j {
        1 => (BigInt::one(), -BigInt::one()),
        2 => (-BigInt::one(), BigInt::one()),
        3 => (BigInt::zero(), BigInt::one()),
        4 => (BigInt::zero(), -BigInt::one()),
        _ => {
            return Err(Error::InvalidParameter(format!(
                "factor index must be 1..=4, got {j}"
            )))
        }
    };
    Ok(RingElem {
        a: real_a,
        b: im_b,
        c: real_c,
        d: im_d,
    })
}

/// Parity-selected factor index for the z_{5n} factorization: 2 for odd
/// n, 1 for even n.
pub fn parity_factor_index(n: u32) -> u8 {
    if n.is_multiple_of(2) {
        1
    } else {
        2
    }
}

/// The parity-selected factorization z_{5n} = z_n·m_j(n)·m_{j+2}(n).
/// Returns the three factors.
pub fn factor_z5n(n: u32) -> Result<(RingElem, RingElem, RingElem)> {
    if n < 1 {
        return Err(Error::InvalidParameter(format!(
            "factorization needs n ≥ 1, got {n}"
        )));
    }
    let j = parity_factor_index(n);
    Ok((z_element(n)?, m_factor(j, n)?, m_factor(j + 2, n)?))
}

/// Fully factor z_n into atoms by applying the index-5 factorization
/// recursively while the index stays divisible by 5.
pub fn atom_factors(n: u32) -> Result<Vec<RingElem>> {
    if n < 1 {
        return Err(Error::InvalidParameter(format!(
            "atoms need n ≥ 1, got {n}"
        )));
    }
    if !n.is_multiple_of(5) {
        return Ok(vec![z_element(n)?]);
    }
    let base = n / 5;
    let (_, m_a, m_b) = factor_z5n(base)?;
    let mut atoms = atom_factors(base)?;
    atoms.push(m_a);
    atoms.push(m_b);
    Ok(atoms)
}

/// One row of the small-determinant table: the balanced split of z_n into
/// a codeword pair, the coordinate budget m it needs, and the resulting
/// decay-exponent estimate.
#[derive(Debug, Clone, PartialEq)]
pub struct SequenceRecord {
    pub n: u32,
    pub z: RingElem,
    pub factors: Vec<RingElem>,
    pub x1: RingElem,
    pub x2: RingElem,
    /// Max absolute coordinate over x₁ and x₂, minimized over all
    /// 2-partitions of the atom multiset.
    pub m: BigInt,
    /// Exact |det|² = |(a_n − b_n√5)(1−i)|² ∈ Z\[τ\].
    pub detsq: QuadInt,
    /// δ = −ln|det| / ln m with |det| = √2·|2−√5|ⁿ (natural logs; the
    /// ratio is base-invariant).
    pub delta_estimate: f64,
}

/// Exact |(a_n − b_n√5)(1−i)|² = (2(a²+5b²)+4ab) − 8ab·τ.
fn detsq_closed_form(n: u32) -> QuadInt {
    let ap = alpha_power(n);
    let (a, b) = (&ap.a, &ap.b);
    let ab = a * b;
    QuadInt {
        p: 2 * (a * a + 5 * b * b) + 4 * &ab,
        q: -8 * ab,
    }
}

fn ln_det_abs(n: u32) -> f64 {
    0.5 * std::f64::consts::LN_2 + n as f64 * ln_small_unit()
}

fn ln_bigint(x: &BigInt) -> f64 {
    // accurate enough for δ estimates at table scale
    x.to_f64().map(|v| v.ln()).unwrap_or(f64::INFINITY)
}

fn validate_table_index(n: u32) -> Result<()> {
    if n.is_multiple_of(5) && (5..=25).contains(&n) {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "table rows are defined for n ∈ {{5, 10, 15, 20, 25}}, got {n}"
        )))
    }
}

fn record_from_split(
    n: u32,
    atoms: Vec<RingElem>,
    x1: RingElem,
    x2: RingElem,
    m: BigInt,
) -> Result<SequenceRecord> {
    let delta = -ln_det_abs(n) / ln_bigint(&m);
    Ok(SequenceRecord {
        n,
        z: z_element(n)?,
        factors: atoms,
        x1,
        x2,
        m,
        detsq: detsq_closed_form(n),
        delta_estimate: delta,
    })
}

fn split_by_mask(atoms: &[RingElem], mask: u32) -> (RingElem, RingElem, BigInt) {
    let mut group1 = RingElem::one();
    let mut group2 = RingElem::one();
    for (idx, atom) in atoms.iter().enumerate() {
        if mask & (1 << idx) != 0 {
            group1 = group1.mul(atom);
        } else {
            group2 = group2.mul(atom);
        }
    }
    let x1 = group1;
    let x2 = group2.sigma();
    let m = x1.max_abs_coord().max(x2.max_abs_coord());
    (x1, x2, m)
}

/// Tightest balanced split: enumerate every 2-partition of the atoms into
/// (x₁-group, x₂-group) with x₁ = ∏ group₁ and x₂ = σ(∏ group₂), so that
/// x₁σ(x₂) = z_n exactly, and keep the partition minimizing the larger
/// max-coordinate. Ties prefer the orientation whose x₁ carries the
/// larger coordinates, then the earliest enumeration.
pub fn balanced_split(n: u32) -> Result<SequenceRecord> {
    validate_table_index(n)?;
    let atoms = atom_factors(n)?;
    let mut best: Option<(BigInt, bool, RingElem, RingElem)> = None;
    for mask in 0u32..(1 << atoms.len()) {
        let (x1, x2, budget) = split_by_mask(&atoms, mask);
        let oriented = x1.max_abs_coord() >= x2.max_abs_coord();
        let better = match &best {
            None => true,
            Some((m, o, _, _)) => budget < *m || (budget == *m && oriented && !o),
        };
        if better {
            best = Some((budget, oriented, x1, x2));
        }
    }
    let (m, _, x1, x2) = best.expect("at least one partition");
    record_from_split(n, atoms, x1, x2, m)
}

/// Atom subsets (as bit masks over `atom_factors(n)`) forming x₁ in the
/// reference table. These assignments pin the reference rows exactly.
/// They coincide with the output of [`balanced_split`] everywhere except
/// n = 15, where the reference row keeps the twin split
/// (z₃·m₄(3), σ(m₂(3))) with budget 219640 although the mirrored split
/// (z₃·m₂(3), σ(m₄(3))) is marginally tighter at 219602; both realize the
/// same determinant.
fn reference_mask(n: u32) -> u32 {
    match n {
        5 => 0b00011,
        10 | 15 | 20 => 0b00101,
        25 => 0b10101,
        _ => unreachable!("validated table index"),
    }
}

/// One reference table row (n ∈ {5, 10, 15, 20, 25}).
pub fn table_row(n: u32) -> Result<SequenceRecord> {
    validate_table_index(n)?;
    let atoms = atom_factors(n)?;
    let (x1, x2, m) = split_by_mask(&atoms, reference_mask(n));
    record_from_split(n, atoms, x1, x2, m)
}

/// All five reference table rows (n = 5, 10, 15, 20, 25).
pub fn table_rows() -> Result<Vec<SequenceRecord>> {
    [5u32, 10, 15, 20, 25]
        .iter()
        .map(|&n| table_row(n))
        .collect()
}

/// One single-application split of z_{5n}: x₁ = z_n·m_j(n) carries
/// coordinates on the order of α^{3n} while x₂ = σ(m_{j+2}(n)) stays near
/// α^{2n}, the 3:2 budget split behind the 5/3-exponent upper bound.
#[derive(Debug, Clone, PartialEq)]
pub struct SizeSplitRecord {
    /// Index of the factored element (a multiple of 5).
    pub z_index: u32,
    pub x1: RingElem,
    pub x2: RingElem,
    /// Smallest box sizes admitting the witnesses: max abs coordinates.
    pub box1: BigInt,
    pub box2: BigInt,
    pub detsq: QuadInt,
}

impl SizeSplitRecord {
    /// ln(box1)/ln(box2); tends to 3/2 as the index grows.
    pub fn log_size_ratio(&self) -> f64 {
        ln_bigint(&self.box1) / ln_bigint(&self.box2)
    }

    /// δ estimate −ln|det|/ln(box1) for this witness pair.
    pub fn delta_estimate(&self) -> f64 {
        -ln_det_abs(self.z_index) / ln_bigint(&self.box1)
    }
}

/// The unbalanced-split witness series for n = 1..=k_max (factoring
/// z_{5n} once, without recursion).
pub fn size_split_series(k_max: u32) -> Result<Vec<SizeSplitRecord>> {
    if k_max < 1 {
        return Err(Error::InvalidParameter(format!(
            "series length must be ≥ 1, got {k_max}"
        )));
    }
    (1..=k_max)
        .map(|n| {
            let (z_n, m_a, m_b) = factor_z5n(n)?;
            let x1 = z_n.mul(&m_a);
            let x2 = m_b.sigma();
            Ok(SizeSplitRecord {
                z_index: 5 * n,
                box1: x1.max_abs_coord(),
                box2: x2.max_abs_coord(),
                detsq: detsq_closed_form(5 * n),
                x1,
                x2,
            })
        })
        .collect()
}

/// Exact check that a record's codeword pair realizes its determinant:
/// |det(x₁, x₂)|² must reproduce the stored |det|² coordinate for
/// coordinate.
pub fn witness_matches_detsq(x1: &RingElem, x2: &RingElem, detsq: &QuadInt) -> bool {
    det_abs_squared(x1, x2, &CodeConfig::default()) == *detsq
}
