//! Codeword construction and exact determinants for the two-user,
//! single-antenna code.
//!
//! Each user disperses two Gaussian integers z₁ = a + bi, z₂ = c + di
//! into the ring element x = z₁ + z₂τ. User 1 transmits (x₁, σ(x₁)) and
//! user 2 transmits (γx₂, σ(x₂)), giving the composite matrix
//! X = [[x₁, σ(x₁)], [γx₂, σ(x₂)]] with determinant
//! det(X) = x₁σ(x₂) − γσ(x₁)x₂. With the non-norm choice γ = i the
//! matrix is invertible whenever both users send nonzero blocks.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::ring::{QuadInt, RingElem};

/// Code parameters. The user count and antenna count are fixed at 2 and
/// 1; γ is configurable so the effect of alternative (or deliberately
/// bad, e.g. γ = 1) twist elements can be explored cheaply.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodeConfig {
    pub gamma: RingElem,
}

impl Default for CodeConfig {
    fn default() -> Self {
        CodeConfig {
            gamma: RingElem::i(),
        }
    }
}

impl CodeConfig {
    /// Number of users (fixed).
    pub const USERS: u32 = 2;
    /// Transmit antennas per user (fixed).
    pub const TX_ANTENNAS: u32 = 1;

    pub fn with_gamma(gamma: RingElem) -> Self {
        CodeConfig { gamma }
    }

    /// True for the standard twist γ = i, which enables the fast integer
    /// search path.
    pub fn is_standard_gamma(&self) -> bool {
        self.gamma == RingElem::i()
    }
}

/// The four dispersed integer coordinates of one user: z₁ = a + bi and
/// z₂ = c + di.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct UserCoords {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
    pub d: BigInt,
}

impl UserCoords {
    pub fn new(
        a: impl Into<BigInt>,
        b: impl Into<BigInt>,
        c: impl Into<BigInt>,
        d: impl Into<BigInt>,
    ) -> Self {
        UserCoords {
            a: a.into(),
            b: b.into(),
            c: c.into(),
            d: d.into(),
        }
    }

    pub fn from_i64(a: i64, b: i64, c: i64, d: i64) -> Self {
        UserCoords::new(a, b, c, d)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero() && self.c.is_zero() && self.d.is_zero()
    }
}

/// Combine one user's Gaussian integers into x = z₁ + z₂τ. The element is
/// zero exactly when all four coordinates are zero.
pub fn user_element(u: &UserCoords) -> RingElem {
    RingElem {
        a: u.a.clone(),
        b: u.b.clone(),
        c: u.c.clone(),
        d: u.d.clone(),
    }
}

/// The stacked 2×2 transmission matrix [[x₁, σ(x₁)], [γx₂, σ(x₂)]].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompositeMatrix {
    pub x1: RingElem,
    pub x2: RingElem,
    pub gamma: RingElem,
}

impl CompositeMatrix {
    pub fn new(x1: RingElem, x2: RingElem, cfg: &CodeConfig) -> Self {
        CompositeMatrix {
            x1,
            x2,
            gamma: cfg.gamma.clone(),
        }
    }

    pub fn entries(&self) -> [[RingElem; 2]; 2] {
        [
            [self.x1.clone(), self.x1.sigma()],
            [self.gamma.mul(&self.x2), self.x2.sigma()],
        ]
    }

    pub fn det(&self) -> RingElem {
        let [[a, b], [c, d]] = self.entries();
        a.mul(&d).sub(&b.mul(&c))
    }
}

/// det(X) = x₁σ(x₂) − γσ(x₁)x₂, i.e. x − γσ(x) for x = x₁σ(x₂).
pub fn bb_determinant(x1: &RingElem, x2: &RingElem, cfg: &CodeConfig) -> RingElem {
    x1.mul(&x2.sigma()).sub(&cfg.gamma.mul(&x1.sigma()).mul(x2))
}

/// Exact squared determinant magnitude |det(X)|² ∈ Z\[τ\].
pub fn det_abs_squared(x1: &RingElem, x2: &RingElem, cfg: &CodeConfig) -> QuadInt {
    bb_determinant(x1, x2, cfg).abs_squared()
}

/// Rank-criterion predicate: vacuously true when either input is zero,
/// otherwise true iff the determinant does not vanish.
pub fn rank_criterion_check(x1: &RingElem, x2: &RingElem, cfg: &CodeConfig) -> bool {
    x1.is_zero() || x2.is_zero() || !bb_determinant(x1, x2, cfg).is_zero()
}

/// Computed coefficient-size constant K₁ for the determinant's τ-part.
///
/// Writing det(X) = (R + Sτ) + (T + Vτ)i, both S and V are bilinear forms
/// in the two users' coordinate vectors. Evaluating the determinant on
/// all 16 basis-vector pairs recovers the coefficient matrices exactly,
/// and the triangle inequality gives |S| ≤ K₁N₁N₂ and |V| ≤ K₁N₁N₂ over
/// the boxes [−N₁,N₁]⁴ × [−N₂,N₂]⁴ with K₁ the larger absolute
/// coefficient sum. The constant is computed, not assumed, so it adapts
/// to any γ.
pub fn coefficient_bound(cfg: &CodeConfig) -> BigInt {
    let basis = [
        RingElem::new(1, 0, 0, 0),
        RingElem::new(0, 1, 0, 0),
        RingElem::new(0, 0, 1, 0),
        RingElem::new(0, 0, 0, 1),
    ];
    let mut sum_s = BigInt::from(0);
    let mut sum_v = BigInt::from(0);
    for e1 in &basis {
        for e2 in &basis {
            let det = bb_determinant(e1, e2, cfg);
            sum_s += det.c.abs();
            sum_v += det.d.abs();
        }
    }
    sum_s.max(sum_v)
}
