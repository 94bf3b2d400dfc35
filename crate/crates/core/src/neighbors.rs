//! Exact decision engine for lattice membership in T - T.
//!
//! A lattice point l = gamma v + delta A v lies in T - T exactly when it has
//! a radix expansion l = sum b_i A^-i v over the difference alphabet. One
//! digit of that expansion is consumed by the shift
//!
//! ```text
//! (gamma, delta) -> (-q delta - b, gamma - p delta)
//! ```
//!
//! and every iterate of a point of T - T stays inside the certified
//! coefficient box. Membership is therefore equivalent to having an
//! infinite in-box walk, i.e. to surviving in the greatest fixed point of
//! the prune-until-stable operator that repeatedly deletes states with no
//! surviving successor. Survivors are exactly the neighbor translations
//! (plus the origin), and walking the survivor graph until a state repeats
//! yields an eventually periodic digit word that certifies membership; the
//! certificate is checked independently by exact rational summation.

use crate::error::{Error, Result};
use crate::params::FractalParams;
use crate::ratio::{rat_int, Rat, RatMat2};
use crate::sequences::{tilde_bounds, BoundsBox};
use num::Zero;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;

/// Integer pair (gamma, delta) standing for gamma v + delta A v.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LatticePoint {
    pub gamma: i64,
    pub delta: i64,
}

impl LatticePoint {
    pub fn new(gamma: i64, delta: i64) -> Self {
        LatticePoint { gamma, delta }
    }
}

impl std::ops::Neg for LatticePoint {
    type Output = LatticePoint;

    fn neg(self) -> LatticePoint {
        LatticePoint::new(-self.gamma, -self.delta)
    }
}

/// Eventually periodic digit word over the difference alphabet: a
/// machine-checkable membership certificate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpansionWord {
    pub preperiod: Vec<i64>,
    pub period: Vec<i64>,
}

impl ExpansionWord {
    pub fn new(preperiod: Vec<i64>, period: Vec<i64>) -> Self {
        ExpansionWord { preperiod, period }
    }
}

/// One digit of the radix shift: multiply by A, subtract b v, reduce by the
/// characteristic polynomial. Errors if b is outside the difference alphabet.
pub fn step(params: &FractalParams, state: LatticePoint, b: i64) -> Result<LatticePoint> {
    if !params.digit_set().contains_difference(b) {
        return Err(Error::BadDigit { digit: b });
    }
    Ok(step_raw(params.p(), params.q(), state, b))
}

#[inline]
fn step_raw(p: i64, q: i64, state: LatticePoint, b: i64) -> LatticePoint {
    LatticePoint::new(-q * state.delta - b, state.gamma - p * state.delta)
}

/// Default cap on the number of box states the engine will allocate.
pub const DEFAULT_STATE_CAP: u64 = 10_000_000;

/// Iteration order of the pruning sweep. The greatest fixed point is unique,
/// so both orders must produce the same survivor set; exposing the choice
/// lets tests check exactly that.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SweepOrder {
    Forward,
    Reverse,
}

/// The survivor set S* of the pruning operator, stored as a dense grid over
/// the coefficient box. Immutable once built; queries are read-only.
#[derive(Clone, Debug)]
pub struct MembershipTable {
    params: FractalParams,
    bounds: BoundsBox,
    gamma_max: i64,
    delta_max: i64,
    alive: Vec<bool>,
    rounds: usize,
}

/// Builds the membership table for the certified coefficient box.
pub fn membership_table(params: &FractalParams) -> Result<MembershipTable> {
    membership_table_with(params, DEFAULT_STATE_CAP, SweepOrder::Forward, (0, 0))
}

/// Full-control variant: `cap` bounds the state count, `order` picks the
/// sweep direction, and `inflate` widens the box by the given extra extents
/// (membership inside the certified box must not change; tests rely on it).
pub fn membership_table_with(
    params: &FractalParams,
    cap: u64,
    order: SweepOrder,
    inflate: (i64, i64),
) -> Result<MembershipTable> {
    let bounds = tilde_bounds(params)?;
    let gamma_max = bounds.gamma_max().saturating_add(inflate.0);
    let delta_max = bounds.delta_max().saturating_add(inflate.1);
    let states = (2 * gamma_max as u128 + 1) * (2 * delta_max as u128 + 1);
    if states > cap as u128 {
        return Err(Error::BoxTooLarge { states, cap });
    }

    let p = params.p();
    let q = params.q();
    let diffs = params.digit_set().differences().to_vec();
    let dheight = (2 * delta_max + 1) as usize;
    let idx = |pt: LatticePoint| -> usize {
        (pt.gamma + gamma_max) as usize * dheight + (pt.delta + delta_max) as usize
    };

    let mut alive = vec![true; states as usize];
    let total = states as usize;
    let mut rounds = 0;
    loop {
        rounds += 1;
        let mut changed = false;
        let visit = |i: usize, alive: &mut Vec<bool>, changed: &mut bool| {
            if !alive[i] {
                return;
            }
            let gamma = (i / dheight) as i64 - gamma_max;
            let delta = (i % dheight) as i64 - delta_max;
            let has_successor = diffs.iter().any(|&b| {
                let next = step_raw(p, q, LatticePoint::new(gamma, delta), b);
                next.gamma.abs() <= gamma_max && next.delta.abs() <= delta_max && alive[idx(next)]
            });
            if !has_successor {
                alive[i] = false;
                *changed = true;
            }
        };
        match order {
            SweepOrder::Forward => {
                for i in 0..total {
                    visit(i, &mut alive, &mut changed);
                }
            }
            SweepOrder::Reverse => {
                for i in (0..total).rev() {
                    visit(i, &mut alive, &mut changed);
                }
            }
        }
        if !changed {
            break;
        }
    }

    Ok(MembershipTable {
        params: *params,
        bounds,
        gamma_max,
        delta_max,
        alive,
        rounds,
    })
}

impl MembershipTable {
    pub fn params(&self) -> &FractalParams {
        &self.params
    }

    /// The certified bounds the box was built from (before any inflation).
    pub fn bounds(&self) -> &BoundsBox {
        &self.bounds
    }

    /// Gamma extent actually allocated (inflation included).
    pub fn gamma_max(&self) -> i64 {
        self.gamma_max
    }

    /// Delta extent actually allocated (inflation included).
    pub fn delta_max(&self) -> i64 {
        self.delta_max
    }

    /// Number of pruning rounds until the fixed point, including the final
    /// no-change round.
    pub fn rounds(&self) -> usize {
        self.rounds
    }

    fn index(&self, pt: LatticePoint) -> Option<usize> {
        if pt.gamma.abs() > self.gamma_max || pt.delta.abs() > self.delta_max {
            return None;
        }
        let dheight = (2 * self.delta_max + 1) as usize;
        Some((pt.gamma + self.gamma_max) as usize * dheight + (pt.delta + self.delta_max) as usize)
    }

    /// Membership of the point in the survivor set (hence in T - T).
    pub fn contains(&self, pt: LatticePoint) -> bool {
        self.index(pt).map(|i| self.alive[i]).unwrap_or(false)
    }

    /// All survivors, sorted.
    pub fn members(&self) -> Vec<LatticePoint> {
        let dheight = (2 * self.delta_max + 1) as usize;
        self.alive
            .iter()
            .enumerate()
            .filter(|(_, &a)| a)
            .map(|(i, _)| {
                LatticePoint::new(
                    (i / dheight) as i64 - self.gamma_max,
                    (i % dheight) as i64 - self.delta_max,
                )
            })
            .collect()
    }

    /// Extracts an eventually periodic digit word certifying membership.
    ///
    /// The walk always picks the smallest-magnitude digit (negative first on
    /// ties) whose successor survives, so certificates are deterministic.
    /// Returns `None` for non-members.
    pub fn witness(&self, pt: LatticePoint) -> Option<ExpansionWord> {
        if !self.contains(pt) {
            return None;
        }
        let mut order = self.params.digit_set().differences().to_vec();
        order.sort_unstable_by_key(|&b| (b.abs(), b));
        let p = self.params.p();
        let q = self.params.q();

        let mut seen: HashMap<LatticePoint, usize> = HashMap::new();
        let mut digits = Vec::new();
        let mut cur = pt;
        loop {
            if let Some(&start) = seen.get(&cur) {
                let period = digits.split_off(start);
                return Some(ExpansionWord::new(digits, period));
            }
            seen.insert(cur, digits.len());
            // a surviving successor exists by the fixed-point property
            let &b = order
                .iter()
                .find(|&&b| self.contains(step_raw(p, q, cur, b)))
                .expect("survivor without surviving successor");
            digits.push(b);
            cur = step_raw(p, q, cur, b);
        }
    }
}

/// One-shot membership query with certificate extraction.
///
/// Points outside the certified coefficient box are rejected without
/// building the engine.
pub fn is_member(
    params: &FractalParams,
    pt: LatticePoint,
) -> Result<(bool, Option<ExpansionWord>)> {
    is_member_with(params, pt, DEFAULT_STATE_CAP)
}

pub fn is_member_with(
    params: &FractalParams,
    pt: LatticePoint,
    cap: u64,
) -> Result<(bool, Option<ExpansionWord>)> {
    let bounds = tilde_bounds(params)?;
    if pt.gamma.abs() > bounds.gamma_max() || pt.delta.abs() > bounds.delta_max() {
        return Ok((false, None));
    }
    let table = membership_table_with(params, cap, SweepOrder::Forward, (0, 0))?;
    if table.contains(pt) {
        let witness = table.witness(pt);
        Ok((true, witness))
    } else {
        Ok((false, None))
    }
}

/// Checks a certificate by exact rational summation: evaluates
///
///   sum_{i=1}^{K} b_i M^-i e1  +  M^-K (I - M^-P)^-1 sum_{j=1}^{P} b_{K+j} M^-j e1
///
/// with K the preperiod length and P the period length, and compares with
/// the point exactly. I - M^-P is invertible because every eigenvalue of
/// M^-1 has modulus below one.
pub fn verify_expansion(
    params: &FractalParams,
    word: &ExpansionWord,
    pt: LatticePoint,
) -> Result<bool> {
    let ds = params.digit_set();
    for &b in word.preperiod.iter().chain(word.period.iter()) {
        if !ds.contains_difference(b) {
            return Err(Error::BadDigit { digit: b });
        }
    }
    if word.period.is_empty() {
        return Err(Error::EmptyPeriod);
    }

    let minv = params.companion().inverse();
    let weighted_sum = |letters: &[i64]| -> ((Rat, Rat), RatMat2) {
        let mut acc = (Rat::zero(), Rat::zero());
        let mut power = RatMat2::identity();
        for &b in letters {
            power = power.mul(&minv);
            let col = power.col0();
            acc.0 += rat_int(b) * col.0;
            acc.1 += rat_int(b) * col.1;
        }
        (acc, power)
    };

    let (pre_sum, pre_power) = weighted_sum(&word.preperiod);
    let (per_sum, per_power) = weighted_sum(&word.period);
    let geometric = RatMat2::identity()
        .sub(&per_power)
        .inverse()
        .ok_or(Error::SingularPeriodMatrix)?;
    let tail = pre_power.apply(&geometric.apply(&per_sum));
    let total = (pre_sum.0 + tail.0, pre_sum.1 + tail.1);
    Ok(total == (rat_int(pt.gamma), rat_int(pt.delta)))
}
