//! Exact evaluation of the inverse-power coordinate sequences and certified
//! upper bounds for their absolute sums.
//!
//! Writing A^-i v = alpha_i v + beta_i A v, both coordinate sequences obey
//! the exact rational recurrence q x_{i+2} + p x_{i+1} + x_i = 0 seeded by
//! alpha_1 = -p/q, alpha_2 = (p^2 - q)/q^2, beta_1 = -1/q, beta_2 = p/q^2.
//! The absolute series sums alpha~ = sum |alpha_i| and beta~ = sum |beta_i|
//! bound the lattice coordinates of every point of T - T, so a certified
//! upper bound for them yields a finite search box for the neighbor engine.
//! Soundness of the whole decision procedure rests on these bounds never
//! being undersized, hence the outward rounding below.

use crate::error::{Error, Result};
use crate::params::FractalParams;
use crate::ratio::{rat, rat_int, sqrt_lower, Rat};
use num::{Signed, ToPrimitive, Zero};

/// Exact leading terms of the coordinate recurrence, plus running absolute
/// partial sums.
#[derive(Clone, Debug)]
pub struct AlphaBetaSequence {
    params: FractalParams,
    terms: Vec<(Rat, Rat)>,
    abs_sums: (Rat, Rat),
}

impl AlphaBetaSequence {
    pub fn params(&self) -> &FractalParams {
        &self.params
    }

    /// Term pairs (alpha_i, beta_i) for i = 1..=n in order.
    pub fn terms(&self) -> &[(Rat, Rat)] {
        &self.terms
    }

    /// alpha_i, 1-based.
    pub fn alpha(&self, i: usize) -> &Rat {
        &self.terms[i - 1].0
    }

    /// beta_i, 1-based.
    pub fn beta(&self, i: usize) -> &Rat {
        &self.terms[i - 1].1
    }

    /// (sum |alpha_i|, sum |beta_i|) over the stored terms.
    pub fn abs_sums(&self) -> &(Rat, Rat) {
        &self.abs_sums
    }
}

/// Evaluates n >= 2 terms of both recurrences exactly.
pub fn alpha_beta(params: &FractalParams, n: usize) -> AlphaBetaSequence {
    assert!(n >= 2, "need at least the two seed terms");
    let p = params.p();
    let q = params.q();
    let mut terms = Vec::with_capacity(n);
    terms.push((rat(-p, q), rat(-1, q)));
    terms.push((rat(p * p - q, q * q), rat(p, q * q)));
    let p_rat = rat_int(p);
    let q_rat = rat_int(q);
    while terms.len() < n {
        let len = terms.len();
        let next = |prev: &Rat, prev2: &Rat| -(&p_rat * prev + prev2) / &q_rat;
        let a = next(&terms[len - 1].0, &terms[len - 2].0);
        let b = next(&terms[len - 1].1, &terms[len - 2].1);
        terms.push((a, b));
    }
    let mut abs_sums = (Rat::zero(), Rat::zero());
    for (a, b) in &terms {
        abs_sums.0 += a.abs();
        abs_sums.1 += b.abs();
    }
    AlphaBetaSequence {
        params: *params,
        terms,
        abs_sums,
    }
}

/// Certified upper bounds for the absolute series sums and the integer
/// search box they induce.
#[derive(Clone, Debug)]
pub struct BoundsBox {
    alpha_tilde_ub: Rat,
    beta_tilde_ub: Rat,
    gamma_max: i64,
    delta_max: i64,
    tail_index: Option<usize>,
}

impl BoundsBox {
    /// Rational upper bound for sum |alpha_i|.
    pub fn alpha_tilde_ub(&self) -> &Rat {
        &self.alpha_tilde_ub
    }

    /// Rational upper bound for sum |beta_i|.
    pub fn beta_tilde_ub(&self) -> &Rat {
        &self.beta_tilde_ub
    }

    /// floor(max digit * alpha bound): the gamma extent of the search box.
    pub fn gamma_max(&self) -> i64 {
        self.gamma_max
    }

    /// floor(max digit * beta bound): the delta extent of the search box.
    pub fn delta_max(&self) -> i64 {
        self.delta_max
    }

    /// Number of terms summed before the geometric tail estimate took over;
    /// `None` when the closed forms applied.
    pub fn tail_index(&self) -> Option<usize> {
        self.tail_index
    }
}

/// Hard cap on tail terms. Convergence is geometric with ratio at most
/// 1/sqrt(2), so the cap is far beyond what any valid parameters need.
pub const TAIL_TERM_CAP: usize = 512;

// Stop extending the partial sums once the certified tail drops below 2^-20.
fn tail_threshold() -> Rat {
    rat(1, 1 << 20)
}

/// Certified upper bounds for alpha~ and beta~.
///
/// For a non-negative discriminant the known closed forms are exact values:
///   q > 0: alpha~ = (|p|-1)/(q-|p|+1),   beta~ = 1/(q-|p|+1)
///   q < 0: alpha~ = (|p|+1)/(|q|-|p|-1), beta~ = 1/(|q|-|p|-1)
/// (q > 0 with a non-negative discriminant forces |p| >= 3, so the first
/// numerator is positive; p = 0 with q > 0 always lands in the negative
/// discriminant branch.)
///
/// For a negative discriminant (only possible with q > 0) the bound is an
/// exact partial sum plus the geometric tail
///   sum_{i>=n} |beta_i| <= 2 q^{-n/2} / ((1 - q^{-1/2}) (4q - p^2)^{1/2})
/// and the alpha tail with exponent -(n-1)/2, with every irrational factor
/// replaced by an outward-rounded rational: q^{-1/2} and (4q-p^2)^{-1/2} are
/// bounded above via integer-square-root lower bounds of q and 4q - p^2.
pub fn tilde_bounds(params: &FractalParams) -> Result<BoundsBox> {
    let (alpha_ub, beta_ub, tail_index) = if params.discriminant() >= 0 {
        closed_form_sums(params)
    } else {
        tail_sums(params)?
    };
    let (gamma_max, delta_max) = box_extents(params.max_digit(), &alpha_ub, &beta_ub);
    Ok(BoundsBox {
        alpha_tilde_ub: alpha_ub,
        beta_tilde_ub: beta_ub,
        gamma_max,
        delta_max,
        tail_index,
    })
}

fn closed_form_sums(params: &FractalParams) -> (Rat, Rat, Option<usize>) {
    let ap = params.p().abs();
    let q = params.q();
    let denom = if q > 0 { q - ap + 1 } else { q.abs() - ap - 1 };
    debug_assert!(
        denom >= 1,
        "expanding parameters keep the denominator positive"
    );
    let numer = if q > 0 { ap - 1 } else { ap + 1 };
    (rat(numer, denom), rat(1, denom), None)
}

fn tail_sums(params: &FractalParams) -> Result<(Rat, Rat, Option<usize>)> {
    let p = params.p();
    let q = params.q();
    debug_assert!(q >= 2 && p * p < 4 * q);

    // 2 s / ((s - 1) t) with s, t rational lower bounds of sqrt(q) and
    // sqrt(4q - p^2); lowering s raises s/(s-1), lowering t raises 1/t,
    // so the factor as a whole is rounded up.
    let s_lo = sqrt_lower(q);
    let t_lo = sqrt_lower(4 * q - p * p);
    debug_assert!(s_lo > rat_int(1));
    let factor = rat_int(2) * &s_lo / ((&s_lo - rat_int(1)) * &t_lo);

    // Upper bound on q^{-n/2}: exact for even n, one outward-rounded factor
    // of q^{-1/2} <= 1/s_lo for odd n.
    let qpow_ub = |n: usize| -> Rat {
        let whole = rat_int(q).pow((n / 2) as i32).recip();
        if n.is_multiple_of(2) {
            whole
        } else {
            whole / &s_lo
        }
    };

    let threshold = tail_threshold();
    let p_rat = rat_int(p);
    let q_rat = rat_int(q);
    let mut terms = vec![
        (rat(-p, q), rat(-1, q)),
        (rat(p * p - q, q * q), rat(p, q * q)),
    ];
    // partial covers terms 1..=n-1 at the top of iteration n
    let mut partial = (
        terms[0].0.abs() + terms[1].0.abs(),
        terms[0].1.abs() + terms[1].1.abs(),
    );
    for n in 3..=TAIL_TERM_CAP {
        let tail_alpha = &factor * qpow_ub(n - 1);
        let tail_beta = &factor * qpow_ub(n);
        if tail_alpha < threshold && tail_beta < threshold {
            return Ok((&partial.0 + tail_alpha, &partial.1 + tail_beta, Some(n)));
        }
        let len = terms.len();
        let a = -(&p_rat * &terms[len - 1].0 + &terms[len - 2].0) / &q_rat;
        let b = -(&p_rat * &terms[len - 1].1 + &terms[len - 2].1) / &q_rat;
        partial.0 += a.abs();
        partial.1 += b.abs();
        terms.push((a, b));
    }
    Err(Error::TailNotConverged { cap: TAIL_TERM_CAP })
}

/// The integer box of Eq.-style coefficient bounds: gamma_max =
/// floor(max digit * alpha bound), delta_max likewise for beta.
pub fn coefficient_box(params: &FractalParams, bounds: &BoundsBox) -> (i64, i64) {
    box_extents(
        params.max_digit(),
        &bounds.alpha_tilde_ub,
        &bounds.beta_tilde_ub,
    )
}

fn box_extents(max_digit: i64, alpha_ub: &Rat, beta_ub: &Rat) -> (i64, i64) {
    let floor_scaled = |ub: &Rat| -> i64 {
        (rat_int(max_digit) * ub)
            .floor()
            .to_integer()
            .to_i64()
            // absurd parameter scales saturate and then fail the state cap
            .unwrap_or(i64::MAX / 4)
    };
    (floor_scaled(alpha_ub), floor_scaled(beta_ub))
}
