//! Exact rational scalars and 2x2 rational matrices.
//!
//! All decision-relevant arithmetic in this crate runs on `BigRational` so
//! that comparisons are exact; floating point only appears in rendering.

use num::bigint::BigInt;
use num::{BigRational, One, Zero};

pub type Rat = BigRational;

/// The integer `n` as an exact rational.
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// The exact fraction `num/den`.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// Renders a rational as `numerator/denominator`, always with an explicit
/// denominator ("3" becomes "3/1").
pub fn frac_string(x: &Rat) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

const SQRT_SCALE: i64 = 1_000_000;

/// A rational lower bound on sqrt(n): floor(sqrt(n * S^2)) / S with S = 10^6.
///
/// Used to round irrational factors outward when certifying series tails.
pub fn sqrt_lower(n: i64) -> Rat {
    assert!(n >= 0, "sqrt_lower needs a non-negative argument");
    let scaled = BigInt::from(n) * SQRT_SCALE * SQRT_SCALE;
    Rat::new(scaled.sqrt(), BigInt::from(SQRT_SCALE))
}

/// A 2x2 matrix with exact rational entries, row major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatMat2 {
    pub rows: [[Rat; 2]; 2],
}

impl RatMat2 {
    pub fn new(rows: [[Rat; 2]; 2]) -> Self {
        RatMat2 { rows }
    }

    pub fn from_int(rows: [[i64; 2]; 2]) -> Self {
        RatMat2::new([
            [rat_int(rows[0][0]), rat_int(rows[0][1])],
            [rat_int(rows[1][0]), rat_int(rows[1][1])],
        ])
    }

    pub fn identity() -> Self {
        RatMat2::new([[Rat::one(), Rat::zero()], [Rat::zero(), Rat::one()]])
    }

    pub fn mul(&self, other: &RatMat2) -> RatMat2 {
        let a = &self.rows;
        let b = &other.rows;
        RatMat2::new([
            [
                &a[0][0] * &b[0][0] + &a[0][1] * &b[1][0],
                &a[0][0] * &b[0][1] + &a[0][1] * &b[1][1],
            ],
            [
                &a[1][0] * &b[0][0] + &a[1][1] * &b[1][0],
                &a[1][0] * &b[0][1] + &a[1][1] * &b[1][1],
            ],
        ])
    }

    pub fn sub(&self, other: &RatMat2) -> RatMat2 {
        RatMat2::new([
            [
                &self.rows[0][0] - &other.rows[0][0],
                &self.rows[0][1] - &other.rows[0][1],
            ],
            [
                &self.rows[1][0] - &other.rows[1][0],
                &self.rows[1][1] - &other.rows[1][1],
            ],
        ])
    }

    pub fn apply(&self, v: &(Rat, Rat)) -> (Rat, Rat) {
        (
            &self.rows[0][0] * &v.0 + &self.rows[0][1] * &v.1,
            &self.rows[1][0] * &v.0 + &self.rows[1][1] * &v.1,
        )
    }

    /// First column, i.e. the image of the first basis vector.
    pub fn col0(&self) -> (Rat, Rat) {
        (self.rows[0][0].clone(), self.rows[1][0].clone())
    }

    pub fn det(&self) -> Rat {
        &self.rows[0][0] * &self.rows[1][1] - &self.rows[0][1] * &self.rows[1][0]
    }

    pub fn inverse(&self) -> Option<RatMat2> {
        let det = self.det();
        if det.is_zero() {
            return None;
        }
        Some(RatMat2::new([
            [&self.rows[1][1] / &det, -&self.rows[0][1] / &det],
            [-&self.rows[1][0] / &det, &self.rows[0][0] / &det],
        ]))
    }
}
