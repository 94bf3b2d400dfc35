//! Parameter validation, digit sets, and the concrete matrix realization.
//!
//! The whole system is driven by three integers: the characteristic
//! polynomial x^2 + px + q of the expanding multiplier, and the jump offset
//! m of the digit set {0, 1, ..., |q|-2, |q|+m}. Everything downstream
//! (coefficient bounds, the neighbor search, the classifiers, rendering)
//! receives a validated [`FractalParams`].

use crate::error::{Error, Result};
use crate::ratio::{rat, RatMat2};
use serde::Serialize;

/// Validated parameter triple (p, q, m).
///
/// Invariants established at construction:
/// - |q| >= 2,
/// - m >= -1 (m = -1 collapses the jump and gives consecutive digits),
/// - the coefficient inequalities for an expanding multiplier hold:
///   |p| <= q when q >= 2, and |p| <= |q+2| when q <= -2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct FractalParams {
    p: i64,
    q: i64,
    m: i64,
}

impl FractalParams {
    /// Validates a raw integer triple.
    pub fn new(p: i64, q: i64, m: i64) -> Result<Self> {
        if q.abs() < 2 {
            return Err(Error::DeterminantTooSmall { q });
        }
        if m < -1 {
            return Err(Error::BadJump { m });
        }
        let expanding = if q >= 2 {
            p.abs() <= q
        } else {
            p.abs() <= (q + 2).abs()
        };
        if !expanding {
            return Err(Error::NotExpanding { p, q });
        }
        Ok(FractalParams { p, q, m })
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    pub fn m(&self) -> i64 {
        self.m
    }

    pub fn abs_q(&self) -> i64 {
        self.q.abs()
    }

    /// Discriminant p^2 - 4q of the characteristic polynomial.
    pub fn discriminant(&self) -> i64 {
        self.p * self.p - 4 * self.q
    }

    /// Largest digit magnitude |q| + m, which is also the largest absolute
    /// value in the difference alphabet.
    pub fn max_digit(&self) -> i64 {
        self.q.abs() + self.m
    }

    /// The same parameters with the sign of p flipped.
    pub fn negated_p(&self) -> FractalParams {
        FractalParams {
            p: -self.p,
            q: self.q,
            m: self.m,
        }
    }

    pub fn digit_set(&self) -> DigitSet {
        DigitSet::new(self)
    }

    pub fn companion(&self) -> CompanionRealization {
        CompanionRealization {
            p: self.p,
            q: self.q,
        }
    }
}

/// Decides whether both roots of x^2 + px + q have modulus strictly greater
/// than one, using only integer sign tests.
///
/// This is deliberately independent of the coefficient inequalities checked
/// by [`FractalParams::new`]; the two must agree on every integer pair, and
/// the test suite sweeps that equivalence exhaustively.
pub fn expanding_crosscheck(p: i64, q: i64) -> bool {
    let disc = p * p - 4 * q;
    if disc < 0 {
        // Complex conjugate pair with |root|^2 = q.
        return q >= 2;
    }
    // Real roots. f(1) < 0 and f(-1) < 0 puts one root on each side of
    // [-1, 1]; f(1) > 0 and f(-1) > 0 with the vertex -p/2 outside [-1, 1]
    // puts both roots on one side. A root at +-1 or inside the interval
    // fails both patterns.
    let f_pos = 1 + p + q;
    let f_neg = 1 - p + q;
    (f_pos < 0 && f_neg < 0) || (f_pos > 0 && f_neg > 0 && p.abs() >= 3)
}

/// The digit set D = {0, 1, ..., |q|-2, |q|+m} and its difference alphabet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DigitSet {
    digits: Vec<i64>,
    differences: Vec<i64>,
    max_abs: i64,
}

impl DigitSet {
    fn new(params: &FractalParams) -> Self {
        let aq = params.abs_q();
        let mut digits: Vec<i64> = (0..=aq - 2).collect();
        digits.push(aq + params.m);
        digits.sort_unstable();
        digits.dedup();

        let mut differences: Vec<i64> = digits
            .iter()
            .flat_map(|&a| digits.iter().map(move |&b| a - b))
            .collect();
        differences.sort_unstable();
        differences.dedup();

        DigitSet {
            digits,
            differences,
            max_abs: aq + params.m,
        }
    }

    /// Digits, sorted ascending. Always |q| of them.
    pub fn digits(&self) -> &[i64] {
        &self.digits
    }

    /// The difference alphabet D - D, sorted ascending. Symmetric about 0.
    pub fn differences(&self) -> &[i64] {
        &self.differences
    }

    /// max |b| over the difference alphabet, equal to |q| + m.
    pub fn max_abs(&self) -> i64 {
        self.max_abs
    }

    pub fn contains_difference(&self, b: i64) -> bool {
        self.differences.binary_search(&b).is_ok()
    }
}

/// Concrete integer realization of the multiplier in the basis {v, Av}:
/// the companion matrix M = [[0, -q], [1, -p]], with v itself landing on
/// the first coordinate vector.
///
/// Any valid pair (A, v) with {v, Av} independent is affinely equivalent to
/// this one, and every decision made here only depends on coordinates in
/// that basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CompanionRealization {
    p: i64,
    q: i64,
}

impl CompanionRealization {
    /// Matrix entries, row major.
    pub fn entries(&self) -> [[i64; 2]; 2] {
        [[0, -self.q], [1, -self.p]]
    }

    /// Coordinates of v: the first basis vector.
    pub fn base_vector(&self) -> (i64, i64) {
        (1, 0)
    }

    pub fn trace(&self) -> i64 {
        -self.p
    }

    pub fn det(&self) -> i64 {
        self.q
    }

    /// Exact rational inverse M^-1 = (1/q) [[-p, q], [-1, 0]].
    pub fn inverse(&self) -> RatMat2 {
        RatMat2::new([
            [rat(-self.p, self.q), rat(self.q, self.q)],
            [rat(-1, self.q), rat(0, 1)],
        ])
    }

    /// The inverse in floating point, for rendering.
    pub fn inverse_f64(&self) -> [[f64; 2]; 2] {
        let q = self.q as f64;
        [[-(self.p as f64) / q, 1.0], [-1.0 / q, 0.0]]
    }
}
