//! Polynomials with coefficients in Z\[i, τ\].
//!
//! Just enough structure for the cyclotomic identities behind the
//! small-determinant factorizations: exact products, evaluation, and the
//! handful of fixed polynomials (φ₂₀, its four quadratic factors over
//! Q(i, √5), and the degree-five factorizations of x⁵ ± i over Z\[i\]).

use std::fmt;

use crate::ring::RingElem;

/// A polynomial over Z\[i, τ\]; `coeffs[k]` is the degree-k coefficient.
/// The leading coefficient is nonzero unless the polynomial is zero
/// (represented by an empty list).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RingPoly {
    coeffs: Vec<RingElem>,
}

impl RingPoly {
    pub fn new(mut coeffs: Vec<RingElem>) -> Self {
        while coeffs.last().is_some_and(RingElem::is_zero) {
            coeffs.pop();
        }
        RingPoly { coeffs }
    }

    pub fn zero() -> Self {
        RingPoly::default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &[RingElem] {
        &self.coeffs
    }

    /// Degree, or None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Build from (degree, coefficient) pairs; unlisted degrees are zero.
    pub fn from_terms(terms: &[(usize, RingElem)]) -> Self {
        let len = terms.iter().map(|(d, _)| d + 1).max().unwrap_or(0);
        let mut coeffs = vec![RingElem::zero(); len];
        for (degree, coeff) in terms {
            coeffs[*degree] = coeffs[*degree].add(coeff);
        }
        RingPoly::new(coeffs)
    }

    pub fn add(&self, other: &RingPoly) -> RingPoly {
        let len = self.coeffs.len().max(other.coeffs.len());
        let zero = RingElem::zero();
        let coeffs = (0..len)
            .map(|k| {
                self.coeffs
                    .get(k)
                    .unwrap_or(&zero)
                    .add(other.coeffs.get(k).unwrap_or(&zero))
            })
            .collect();
        RingPoly::new(coeffs)
    }

    /// Exact product by coefficient convolution.
    pub fn mul(&self, other: &RingPoly) -> RingPoly {
        if self.is_zero() || other.is_zero() {
            return RingPoly::zero();
        }
        let mut coeffs = vec![RingElem::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (j, cj) in self.coeffs.iter().enumerate() {
            for (k, ck) in other.coeffs.iter().enumerate() {
                coeffs[j + k] = coeffs[j + k].add(&cj.mul(ck));
            }
        }
        RingPoly::new(coeffs)
    }

    /// Horner evaluation at a ring element.
    pub fn eval(&self, x: &RingElem) -> RingElem {
        let mut acc = RingElem::zero();
        for coeff in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(coeff);
        }
        acc
    }

    /// The twentieth cyclotomic polynomial x⁸ − x⁶ + x⁴ − x² + 1.
    pub fn phi20() -> Self {
        let one = RingElem::one();
        let minus_one = RingElem::one().neg();
        RingPoly::from_terms(&[
            (0, one.clone()),
            (2, minus_one.clone()),
            (4, one.clone()),
            (6, minus_one),
            (8, one),
        ])
    }

    /// The quadratic factors p₁..p₄ of φ₂₀ over Q(i, √5):
    /// p₁ = x² + i(1−τ)x − 1, p₂ = x² − i(1−τ)x − 1,
    /// p₃ = x² + iτx − 1,     p₄ = x² − iτx − 1.
    pub fn phi20_factor(j: u8) -> Option<Self> {
        let linear = match j {
            1 => RingElem::new(0, 1, 0, -1),
            2 => RingElem::new(0, -1, 0, 1),
            3 => RingElem::new(0, 0, 0, 1),
            4 => RingElem::new(0, 0, 0, -1),
            _ => return None,
        };
        Some(RingPoly::new(vec![
            RingElem::one().neg(),
            linear,
            RingElem::one(),
        ]))
    }

    /// x² + 1.
    pub fn x2_plus_1() -> Self {
        RingPoly::from_terms(&[(0, RingElem::one()), (2, RingElem::one())])
    }

    /// x¹⁰ + 1.
    pub fn x10_plus_1() -> Self {
        RingPoly::from_terms(&[(0, RingElem::one()), (10, RingElem::one())])
    }

    /// x⁵ + εi for ε = ±1.
    pub fn x5_plus_eps_i(eps: i64) -> Self {
        RingPoly::from_terms(&[(0, RingElem::new(0, eps, 0, 0)), (5, RingElem::one())])
    }

    /// x + εi.
    pub fn x_plus_eps_i(eps: i64) -> Self {
        RingPoly::new(vec![RingElem::new(0, eps, 0, 0), RingElem::one()])
    }

    /// x⁴ − εix³ − x² + εix + 1, the quartic cofactor of x⁵ + εi.
    pub fn quartic_cofactor(eps: i64) -> Self {
        RingPoly::new(vec![
            RingElem::one(),
            RingElem::new(0, eps, 0, 0),
            RingElem::one().neg(),
            RingElem::new(0, -eps, 0, 0),
            RingElem::one(),
        ])
    }
}

impl fmt::Display for RingPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| match k {
                0 => format!("({c})"),
                1 => format!("({c})·x"),
                _ => format!("({c})·x^{k}"),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}
