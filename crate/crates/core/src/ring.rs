//! Exact arithmetic in O = Z\[i, τ\] and its subrings Z\[i\] and Z\[τ\].
//!
//! Elements of O are stored as four arbitrary-precision coordinates over
//! the ordered integral basis {1, i, τ, iτ}, so every element reads as
//! (a + b·i) + (c + d·i)·τ. Products reduce through τ² = τ + 1 and
//! i² = −1 and therefore stay in the same coordinate form. Z\[τ\] values
//! embed into the reals through τ = (1+√5)/2, which makes their sign —
//! and hence comparison — exactly decidable from the two coordinates.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{Signed, ToPrimitive, Zero};

/// Double-precision golden ratio, used only for advisory float views.
pub const TAU_F64: f64 = 1.618_033_988_749_895_f64;

/// A Gaussian integer re + im·i ∈ Z\[i\].
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussInt {
    pub re: BigInt,
    pub im: BigInt,
}

impl GaussInt {
    pub fn new(re: impl Into<BigInt>, im: impl Into<BigInt>) -> Self {
        GaussInt {
            re: re.into(),
            im: im.into(),
        }
    }

    pub fn zero() -> Self {
        GaussInt::default()
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn add(&self, other: &GaussInt) -> GaussInt {
        GaussInt {
            re: &self.re + &other.re,
            im: &self.im + &other.im,
        }
    }

    pub fn mul(&self, other: &GaussInt) -> GaussInt {
        GaussInt {
            re: &self.re * &other.re - &self.im * &other.im,
            im: &self.re * &other.im + &self.im * &other.re,
        }
    }

    /// Complex conjugate re − im·i.
    pub fn conj(&self) -> GaussInt {
        GaussInt {
            re: self.re.clone(),
            im: -&self.im,
        }
    }
}

/// An element p + q·τ of Z\[τ\].
///
/// Ordering is the ordering of the real numbers p + q·(1+√5)/2 and is
/// computed exactly from the integer coordinates; no floating point is
/// involved in comparisons.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct QuadInt {
    pub p: BigInt,
    pub q: BigInt,
}

impl QuadInt {
    pub fn new(p: impl Into<BigInt>, q: impl Into<BigInt>) -> Self {
        QuadInt {
            p: p.into(),
            q: q.into(),
        }
    }

    pub fn zero() -> Self {
        QuadInt::default()
    }

    pub fn is_zero(&self) -> bool {
        self.p.is_zero() && self.q.is_zero()
    }

    pub fn add(&self, other: &QuadInt) -> QuadInt {
        QuadInt {
            p: &self.p + &other.p,
            q: &self.q + &other.q,
        }
    }

    pub fn sub(&self, other: &QuadInt) -> QuadInt {
        QuadInt {
            p: &self.p - &other.p,
            q: &self.q - &other.q,
        }
    }

    /// Product in Z\[τ\], reducing τ² = τ + 1.
    pub fn mul(&self, other: &QuadInt) -> QuadInt {
        let qq = &self.q * &other.q;
        QuadInt {
            p: &self.p * &other.p + &qq,
            q: &self.p * &other.q + &self.q * &other.p + &qq,
        }
    }

    /// Exact sign of the real number p + q·τ: −1, 0 or +1.
    ///
    /// With s = 2p + q the value is (s + q√5)/2, so the sign reduces to
    /// integer comparisons of s² against 5q² (s² = 5q² is impossible for
    /// nonzero coordinates since 5 is not a square).
    pub fn signum(&self) -> i32 {
        let s: BigInt = 2 * &self.p + &self.q;
        let q = &self.q;
        if q.is_zero() && s.is_zero() {
            return 0;
        }
        if !q.is_negative() {
            if !s.is_negative() || &s * &s < 5 * q * q {
                1
            } else {
                -1
            }
        } else if s.is_negative() {
            -1
        } else if &s * &s > 5 * q * q {
            1
        } else {
            -1
        }
    }

    /// Advisory double-precision value of p + q·τ.
    ///
    /// Computed through an integer square root at a scale that adapts to
    /// the coordinate size, so the relative error stays far below 1e-12
    /// even when p and q are hundreds of digits long and cancel almost
    /// completely.
    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let digits = self.p.abs().max(self.q.abs()).to_string().len() as u32;
        let scale = BigInt::from(10u32).pow(digits + 40);
        let five_q2_s2: BigInt = 5 * &self.q * &self.q * &scale * &scale;
        let root = BigInt::from(five_q2_s2.to_biguint().expect("nonnegative").sqrt());
        let signed_root = if self.q.is_negative() { -root } else { root };
        let num = (2 * &self.p + &self.q) * &scale + signed_root;
        big_ratio_to_f64(&num, &(2 * scale))
    }
}

impl PartialOrd for QuadInt {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QuadInt {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.sub(other).signum() {
            0 => Ordering::Equal,
            s if s < 0 => Ordering::Less,
            _ => Ordering::Greater,
        }
    }
}

impl fmt::Display for QuadInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}τ", self.p, SignedCoeff(&self.q))
    }
}

/// Compare two Z\[τ\] values exactly, as real numbers.
pub fn cmp_quad(u: &QuadInt, v: &QuadInt) -> Ordering {
    u.cmp(v)
}

/// Floor-accurate f64 for num/den with den > 0, robust to operands far
/// outside the f64 range as long as the ratio itself is representable.
pub(crate) fn big_ratio_to_f64(num: &BigInt, den: &BigInt) -> f64 {
    debug_assert!(den.is_positive());
    if num.is_zero() {
        return 0.0;
    }
    let negative = num.is_negative();
    let num_abs = num.abs();
    let e: i64 = 64 + den.bits() as i64 - num_abs.bits() as i64;
    let t = if e >= 0 {
        (num_abs << e as u64) / den
    } else {
        num_abs / (den << (-e) as u64)
    };
    let magnitude = t.to_f64().unwrap_or(f64::INFINITY) * 2f64.powi(-e as i32);
    if negative {
        -magnitude
    } else {
        magnitude
    }
}

/// The four field automorphisms of Q(i, √5), forming the Klein
/// four-group: ρ conjugates i, σ conjugates √5 (so σ(τ) = 1 − τ), and
/// μ = σρ = ρσ does both.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GaloisMap {
    Identity,
    Rho,
    Sigma,
    Mu,
}

impl GaloisMap {
    pub const ALL: [GaloisMap; 4] = [
        GaloisMap::Identity,
        GaloisMap::Rho,
        GaloisMap::Sigma,
        GaloisMap::Mu,
    ];

    /// Group composition: apply `other` first, then `self`.
    pub fn compose(self, other: GaloisMap) -> GaloisMap {
        use GaloisMap::*;
        match (self, other) {
            (Identity, g) | (g, Identity) => g,
            (Rho, Rho) | (Sigma, Sigma) | (Mu, Mu) => Identity,
            (Rho, Sigma) | (Sigma, Rho) => Mu,
            (Rho, Mu) | (Mu, Rho) => Sigma,
            (Sigma, Mu) | (Mu, Sigma) => Rho,
        }
    }

    /// Apply the automorphism coordinatewise over {1, i, τ, iτ}.
    pub fn apply(self, x: &RingElem) -> RingElem {
        match self {
            GaloisMap::Identity => x.clone(),
            // i ↦ −i
            GaloisMap::Rho => RingElem {
                a: x.a.clone(),
                b: -&x.b,
                c: x.c.clone(),
                d: -&x.d,
            },
            // τ ↦ 1 − τ
            GaloisMap::Sigma => RingElem {
                a: &x.a + &x.c,
                b: &x.b + &x.d,
                c: -&x.c,
                d: -&x.d,
            },
            GaloisMap::Mu => RingElem {
                a: &x.a + &x.c,
                b: -(&x.b + &x.d),
                c: -&x.c,
                d: x.d.clone(),
            },
        }
    }
}

/// An element (a + b·i) + (c + d·i)·τ of Z\[i, τ\], stored over the
/// ordered integral basis {1, i, τ, iτ}.
///
/// This single coordinate form is used everywhere; in particular the
/// determinant of the composite code matrix reads (a + c·τ) + (b + d·τ)·i
/// in the reordered basis {1, τ, i, iτ}, so its "τ-part" coefficients are
/// the c and d coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct RingElem {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
    pub d: BigInt,
}

impl RingElem {
    pub fn new(
        a: impl Into<BigInt>,
        b: impl Into<BigInt>,
        c: impl Into<BigInt>,
        d: impl Into<BigInt>,
    ) -> Self {
        RingElem {
            a: a.into(),
            b: b.into(),
            c: c.into(),
            d: d.into(),
        }
    }

    pub fn zero() -> Self {
        RingElem::default()
    }

    pub fn one() -> Self {
        RingElem::new(1, 0, 0, 0)
    }

    /// The imaginary unit i.
    pub fn i() -> Self {
        RingElem::new(0, 1, 0, 0)
    }

    /// The golden ratio τ.
    pub fn tau() -> Self {
        RingElem::new(0, 0, 1, 0)
    }

    /// √5 = 2τ − 1.
    pub fn sqrt5() -> Self {
        RingElem::new(-1, 0, 2, 0)
    }

    /// The fundamental unit α = 2 + √5 = 1 + 2τ = τ³.
    pub fn alpha() -> Self {
        RingElem::new(1, 0, 2, 0)
    }

    pub fn from_i64(a: i64, b: i64, c: i64, d: i64) -> Self {
        RingElem::new(a, b, c, d)
    }

    /// View as the pair of Gaussian integers (z₁, z₂) with x = z₁ + z₂τ.
    pub fn gauss_parts(&self) -> (GaussInt, GaussInt) {
        (
            GaussInt {
                re: self.a.clone(),
                im: self.b.clone(),
            },
            GaussInt {
                re: self.c.clone(),
                im: self.d.clone(),
            },
        )
    }

    /// Build z₁ + z₂·τ from two Gaussian integers.
    pub fn from_gauss(z1: &GaussInt, z2: &GaussInt) -> Self {
        RingElem {
            a: z1.re.clone(),
            b: z1.im.clone(),
            c: z2.re.clone(),
            d: z2.im.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero() && self.c.is_zero() && self.d.is_zero()
    }

    pub fn add(&self, other: &RingElem) -> RingElem {
        RingElem {
            a: &self.a + &other.a,
            b: &self.b + &other.b,
            c: &self.c + &other.c,
            d: &self.d + &other.d,
        }
    }

    pub fn sub(&self, other: &RingElem) -> RingElem {
        RingElem {
            a: &self.a - &other.a,
            b: &self.b - &other.b,
            c: &self.c - &other.c,
            d: &self.d - &other.d,
        }
    }

    pub fn neg(&self) -> RingElem {
        RingElem {
            a: -&self.a,
            b: -&self.b,
            c: -&self.c,
            d: -&self.d,
        }
    }

    /// Exact product, reducing τ² = τ + 1 on the τ-components and
    /// i² = −1 inside the Gaussian components:
    /// (z₁ + z₂τ)(w₁ + w₂τ) = (z₁w₁ + z₂w₂) + (z₁w₂ + z₂w₁ + z₂w₂)τ.
    pub fn mul(&self, other: &RingElem) -> RingElem {
        let (z1, z2) = self.gauss_parts();
        let (w1, w2) = other.gauss_parts();
        let z2w2 = z2.mul(&w2);
        let first = z1.mul(&w1).add(&z2w2);
        let second = z1.mul(&w2).add(&z2.mul(&w1)).add(&z2w2);
        RingElem::from_gauss(&first, &second)
    }

    pub fn mul_scalar(&self, k: &BigInt) -> RingElem {
        RingElem {
            a: k * &self.a,
            b: k * &self.b,
            c: k * &self.c,
            d: k * &self.d,
        }
    }

    pub fn pow(&self, mut n: u32) -> RingElem {
        let mut base = self.clone();
        let mut acc = RingElem::one();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn galois(&self, map: GaloisMap) -> RingElem {
        map.apply(self)
    }

    /// σ-image (√5 ↦ −√5, so τ ↦ 1 − τ).
    pub fn sigma(&self) -> RingElem {
        GaloisMap::Sigma.apply(self)
    }

    /// ρ-image (complex conjugation).
    pub fn rho(&self) -> RingElem {
        GaloisMap::Rho.apply(self)
    }

    /// μ-image (both conjugations).
    pub fn mu(&self) -> RingElem {
        GaloisMap::Mu.apply(self)
    }

    /// |x|² = x·ρ(x), which is fixed by ρ and therefore lands in Z\[τ\]:
    /// (a² + b² + c² + d²) + (2(ac + bd) + c² + d²)·τ.
    ///
    /// Nonnegative as a real number, and zero exactly when x = 0.
    pub fn abs_squared(&self) -> QuadInt {
        let (a, b, c, d) = (&self.a, &self.b, &self.c, &self.d);
        let c2d2 = c * c + d * d;
        QuadInt {
            p: a * a + b * b + &c2d2,
            q: 2 * (a * c + b * d) + c2d2,
        }
    }

    /// Advisory complex double view (a + cτ) + (b + dτ)·i.
    ///
    /// Used for pruning and diagnostics only; no returned exact result may
    /// depend on it. Degrades once coordinates exceed 2⁵³.
    pub fn to_complex(&self) -> Complex64 {
        let f = |x: &BigInt| x.to_f64().unwrap_or(f64::INFINITY);
        Complex64::new(
            f(&self.a) + f(&self.c) * TAU_F64,
            f(&self.b) + f(&self.d) * TAU_F64,
        )
    }

    /// Largest absolute value among the four coordinates.
    pub fn max_abs_coord(&self) -> BigInt {
        self.a
            .abs()
            .max(self.b.abs())
            .max(self.c.abs())
            .max(self.d.abs())
    }
}

struct SignedCoeff<'a>(&'a BigInt);

impl fmt::Display for SignedCoeff<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_negative() {
            write!(f, "-{}", self.0.abs())
        } else {
            write!(f, "+{}", self.0)
        }
    }
}

impl fmt::Display for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}{}i{}τ{}iτ",
            self.a,
            SignedCoeff(&self.b),
            SignedCoeff(&self.c),
            SignedCoeff(&self.d)
        )
    }
}

fn parse_terms(s: &str) -> Result<Vec<(BigInt, String)>, String> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err("empty input".into());
    }
    let mut terms = Vec::new();
    let mut current = String::new();
    for (idx, ch) in s.char_indices() {
        if (ch == '+' || ch == '-') && idx != 0 {
            terms.push(std::mem::take(&mut current));
        }
        current.push(ch);
    }
    terms.push(current);
    let mut out = Vec::new();
    for term in terms {
        let (sign, body) = match term.strip_prefix('-') {
            Some(rest) => (-1, rest),
            None => (1, term.strip_prefix('+').unwrap_or(&term)),
        };
        let digits_end = body
            .find(|c: char| !c.is_ascii_digit())
            .unwrap_or(body.len());
        let (digits, suffix) = body.split_at(digits_end);
        let magnitude = if digits.is_empty() {
            if suffix.is_empty() {
                return Err(format!("term '{term}' has no coefficient"));
            }
            BigInt::from(1)
        } else {
            digits.parse::<BigInt>().map_err(|e| e.to_string())?
        };
        out.push((sign * magnitude, suffix.to_string()));
    }
    Ok(out)
}

impl FromStr for RingElem {
    type Err = String;

    /// Parse the rendering grammar "a+bi+cτ+diτ". Terms may appear in any
    /// order or be omitted; "t" is accepted as an ASCII alias for "τ".
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut elem = RingElem::zero();
        let mut seen = [false; 4];
        for (value, suffix) in parse_terms(s)? {
            let slot = match suffix.as_str() {
                "" => 0,
                "i" => 1,
                "τ" | "t" | "tau" => 2,
                "iτ" | "it" | "itau" => 3,
                other => return Err(format!("unrecognized term suffix '{other}'")),
            };
            if seen[slot] {
                return Err(format!("duplicate term for basis slot {slot}"));
            }
            seen[slot] = true;
            match slot {
                0 => elem.a = value,
                1 => elem.b = value,
                2 => elem.c = value,
                _ => elem.d = value,
            }
        }
        Ok(elem)
    }
}

impl FromStr for QuadInt {
    type Err = String;

    /// Parse "p+qτ"; both terms optional, any order.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut quad = QuadInt::zero();
        let mut seen = [false; 2];
        for (value, suffix) in parse_terms(s)? {
            let slot = match suffix.as_str() {
                "" => 0,
                "τ" | "t" | "tau" => 1,
                other => return Err(format!("unrecognized term suffix '{other}'")),
            };
            if seen[slot] {
                return Err(format!("duplicate term for basis slot {slot}"));
            }
            seen[slot] = true;
            if slot == 0 {
                quad.p = value;
            } else {
                quad.q = value;
            }
        }
        Ok(quad)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn re(a: i64, b: i64, c: i64, d: i64) -> RingElem {
        RingElem::from_i64(a, b, c, d)
    }

    #[test]
    fn addition_examples() {
        assert_eq!(re(1, 0, 0, 0).add(&re(0, 0, 1, 0)), re(1, 0, 1, 0));
        let x = re(7, -3, 2, 5);
        assert_eq!(x.add(&RingElem::zero()), x);
        assert_eq!(re(2, -1, 0, 2).add(&re(-2, 1, 0, -2)), RingElem::zero());
    }

    #[test]
    fn multiplication_examples() {
        // τ·τ = 1 + τ
        assert_eq!(RingElem::tau().mul(&RingElem::tau()), re(1, 0, 1, 0));
        // τ³ = 1 + 2τ = 2 + √5
        assert_eq!(RingElem::tau().pow(3), RingElem::alpha());
        // i·i = −1
        assert_eq!(RingElem::i().mul(&RingElem::i()), re(-1, 0, 0, 0));
    }

    #[test]
    fn galois_examples() {
        assert_eq!(RingElem::tau().sigma(), re(1, 0, -1, 0));
        assert_eq!(re(3, 4, 5, 6).rho(), re(3, -4, 5, -6));
        // μ = σ∘ρ = ρ∘σ
        let x = re(2, -7, 3, 11);
        assert_eq!(x.mu(), x.rho().sigma());
        assert_eq!(x.mu(), x.sigma().rho());
    }

    #[test]
    fn klein_four_group() {
        use GaloisMap::*;
        for g in GaloisMap::ALL {
            assert_eq!(g.compose(g), Identity);
        }
        assert_eq!(Sigma.compose(Rho), Mu);
        assert_eq!(Rho.compose(Sigma), Mu);
        assert_eq!(Mu.compose(Sigma), Rho);
    }

    #[test]
    fn alpha_is_a_unit_of_norm_minus_one() {
        let alpha = RingElem::alpha();
        let minus_one = re(-1, 0, 0, 0);
        assert_eq!(alpha.sigma().mul(&alpha), minus_one);
        // the inverse is √5 − 2
        let sqrt5_minus_two = RingElem::sqrt5().sub(&re(2, 0, 0, 0));
        assert_eq!(alpha.mul(&sqrt5_minus_two), RingElem::one());
    }

    #[test]
    fn abs_squared_examples() {
        assert_eq!(re(1, -1, 0, 0).abs_squared(), QuadInt::new(2, 0));
        // (2−√5)(1−i) = 3 − 3i − 2τ + 2iτ, |·|² = 2(9−4√5) = 26 − 16τ
        let x = re(3, -3, -2, 2);
        assert_eq!(x.abs_squared(), QuadInt::new(26, -16));
        let value = x.abs_squared().to_f64();
        assert!((value - 0.11145618000168098).abs() < 1e-12, "{value}");
        assert_eq!(RingElem::zero().abs_squared(), QuadInt::zero());
    }

    #[test]
    fn cmp_quad_examples() {
        assert_eq!(
            cmp_quad(&QuadInt::new(26, -16), &QuadInt::zero()),
            Ordering::Greater
        );
        assert_eq!(
            cmp_quad(&QuadInt::new(1, 0), &QuadInt::new(0, 1)),
            Ordering::Less
        );
        assert_eq!(
            cmp_quad(&QuadInt::new(9, -4), &QuadInt::new(9, -4)),
            Ordering::Equal
        );
        // −1 + τ > 0, 1 − τ < 0
        assert_eq!(QuadInt::new(-1, 1).signum(), 1);
        assert_eq!(QuadInt::new(1, -1).signum(), -1);
        assert_eq!(QuadInt::zero().signum(), 0);
    }

    #[test]
    fn to_complex_examples() {
        let t = RingElem::tau().to_complex();
        assert!((t.re - TAU_F64).abs() < 1e-15 && t.im == 0.0);
        let x = re(1, 1, 0, 0).to_complex();
        assert_eq!((x.re, x.im), (1.0, 1.0));
        let y = re(1, 0, -1, 0).to_complex();
        assert!((y.re + 0.6180339887498949).abs() < 1e-15);
    }

    #[test]
    fn quad_to_f64_survives_cancellation() {
        // (2−√5)² = 9 − 4√5 = 13 − 8τ ≈ 0.05572809...
        let v = QuadInt::new(13, -8).to_f64();
        assert!((v - 0.05572809000084121).abs() < 1e-15, "{v}");
        // huge coordinates, tiny value: (13−8τ)^32
        let mut x = QuadInt::new(13, -8);
        for _ in 0..5 {
            x = x.mul(&x);
        }
        let expected = 0.05572809000084121f64.powi(32);
        assert!((x.to_f64() / expected - 1.0).abs() < 1e-12);
    }

    #[test]
    fn rendering_round_trip() {
        let x = re(-19, 38, 33, 2);
        assert_eq!(x.to_string(), "-19+38i+33τ+2iτ");
        assert_eq!("-19+38i+33τ+2iτ".parse::<RingElem>().unwrap(), x);
        assert_eq!("i".parse::<RingElem>().unwrap(), RingElem::i());
        assert_eq!("-τ+1".parse::<RingElem>().unwrap(), re(1, 0, -1, 0));
        assert_eq!("2-1i+0t+2it".parse::<RingElem>().unwrap(), re(2, -1, 0, 2));
        assert!("2x".parse::<RingElem>().is_err());
        assert!("1+1+1".parse::<RingElem>().is_err());
        let q = QuadInt::new(26, -16);
        assert_eq!(q.to_string(), "26-16τ");
        assert_eq!("26-16τ".parse::<QuadInt>().unwrap(), q);
    }

    fn arb_elem() -> impl Strategy<Value = RingElem> {
        let coord = -1_000_000i64..=1_000_000i64;
        (coord.clone(), coord.clone(), coord.clone(), coord)
            .prop_map(|(a, b, c, d)| RingElem::from_i64(a, b, c, d))
    }

    proptest! {
        #[test]
        fn ring_laws(x in arb_elem(), y in arb_elem(), z in arb_elem()) {
            prop_assert_eq!(x.add(&y), y.add(&x));
            prop_assert_eq!(x.mul(&y), y.mul(&x));
            prop_assert_eq!(x.add(&y).add(&z), x.add(&y.add(&z)));
            prop_assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
            prop_assert_eq!(x.mul(&y.add(&z)), x.mul(&y).add(&x.mul(&z)));
        }

        #[test]
        fn galois_maps_are_ring_homomorphisms(x in arb_elem(), y in arb_elem()) {
            for g in GaloisMap::ALL {
                prop_assert_eq!(g.apply(&x.add(&y)), g.apply(&x).add(&g.apply(&y)));
                prop_assert_eq!(g.apply(&x.mul(&y)), g.apply(&x).mul(&g.apply(&y)));
                prop_assert_eq!(g.apply(&g.apply(&x)), x.clone());
            }
            prop_assert_eq!(x.rho().sigma(), x.mu());
        }

        #[test]
        fn abs_squared_is_multiplicative(x in arb_elem(), y in arb_elem()) {
            prop_assert_eq!(
                x.mul(&y).abs_squared(),
                x.abs_squared().mul(&y.abs_squared())
            );
            prop_assert!(x.abs_squared().signum() >= 0);
            prop_assert_eq!(x.abs_squared().is_zero(), x.is_zero());
        }

        #[test]
        fn cmp_quad_matches_floats_outside_noise(
            p1 in -1_000_000i64..=1_000_000, q1 in -1_000_000i64..=1_000_000,
            p2 in -1_000_000i64..=1_000_000, q2 in -1_000_000i64..=1_000_000,
        ) {
            let u = QuadInt::new(p1, q1);
            let v = QuadInt::new(p2, q2);
            let fu = p1 as f64 + q1 as f64 * TAU_F64;
            let fv = p2 as f64 + q2 as f64 * TAU_F64;
            if (fu - fv).abs() > 1e-9 {
                let expected = if fu < fv { Ordering::Less } else { Ordering::Greater };
                prop_assert_eq!(cmp_quad(&u, &v), expected);
            }
        }

        #[test]
        fn to_complex_is_approximately_multiplicative(x in arb_elem(), y in arb_elem()) {
            let exact = x.mul(&y).to_complex();
            let approx = x.to_complex() * y.to_complex();
            let scale = exact.norm().max(1.0);
            prop_assert!((exact - approx).norm() <= 1e-12 * scale);
        }

        #[test]
        fn display_parse_round_trip(x in arb_elem()) {
            let rendered = x.to_string();
            prop_assert_eq!(rendered.parse::<RingElem>().unwrap(), x);
        }

        #[test]
        fn quad_float_view_matches_direct_evaluation(
            p in -1_000_000i64..=1_000_000,
            q in -1_000_000i64..=1_000_000,
        ) {
            let exact = QuadInt::new(p, q).to_f64();
            let direct = p as f64 + q as f64 * TAU_F64;
            let scale = direct.abs().max(1.0);
            prop_assert!((exact - direct).abs() <= 1e-9 * scale);
        }
    }
}
