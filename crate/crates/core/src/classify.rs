//! Two independent connectedness deciders and the sweep harness that
//! cross-validates them.
//!
//! The closed-form classifier answers from the parameters alone:
//! m = -1 gives consecutive digits and is always connected; m >= 1 is always
//! disconnected; for m = 0 the attractor is connected exactly on the lines
//! 2|p| = |q+2| plus the four sporadic pairs (+-1,-3), (+-2,3), (+-3,3),
//! (+-4,4). The search decider knows none of that: it asks the membership
//! engine whether v and some (m+c)v with c in {2, ..., |q|} lie in T - T,
//! which is the piecewise criterion for the attractor's |q| pieces to chain
//! up. Agreement of the two on every valid parameter triple is the main
//! cross-check of this crate.

use crate::error::{Error, Result};
use crate::neighbors::{
    membership_table_with, ExpansionWord, LatticePoint, SweepOrder, DEFAULT_STATE_CAP,
};
use crate::params::FractalParams;
use rayon::prelude::*;
use serde::Serialize;
use std::fmt;
use std::ops::RangeInclusive;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Connected,
    Disconnected,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Connected => write!(f, "connected"),
            Verdict::Disconnected => write!(f, "disconnected"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Method {
    TheoremClosedForm,
    NeighborSearch,
}

/// Search-side evidence: either verified certificates for both criterion
/// points, or the refutation record.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Evidence {
    Witnesses {
        v: ExpansionWord,
        c: i64,
        mc: ExpansionWord,
    },
    Refutation {
        v_member: bool,
        refuted_c: Vec<i64>,
        member_c: Vec<i64>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub verdict: Verdict,
    pub method: Method,
    pub evidence: Option<Evidence>,
}

/// Sporadic connected pairs for m = 0, beyond the 2|p| = |q+2| lines.
pub const SPORADIC_CONNECTED: [(i64, i64); 8] = [
    (1, -3),
    (-1, -3),
    (2, 3),
    (-2, 3),
    (3, 3),
    (-3, 3),
    (4, 4),
    (-4, 4),
];

/// Closed-form connectedness decision.
///
/// Requires |q| >= 3 when m >= 0; m = -1 is answered for any valid q.
pub fn classify_theorem(params: &FractalParams) -> Result<Classification> {
    let verdict = if params.m() == -1 {
        Verdict::Connected
    } else {
        if params.abs_q() < 3 {
            return Err(Error::TheoremOutOfScope { q: params.q() });
        }
        if params.m() >= 1 {
            Verdict::Disconnected
        } else if on_connected_locus(params.p(), params.q()) {
            Verdict::Connected
        } else {
            Verdict::Disconnected
        }
    };
    Ok(Classification {
        verdict,
        method: Method::TheoremClosedForm,
        evidence: None,
    })
}

fn on_connected_locus(p: i64, q: i64) -> bool {
    2 * p.abs() == (q + 2).abs() || SPORADIC_CONNECTED.contains(&(p, q))
}

/// Search-based connectedness decision via the membership engine.
///
/// Connected iff v survives and some (m+c)v with c in {2, ..., |q|}
/// survives; both conjuncts are checked independently and reported.
/// Requires |q| >= 3 (the piecewise criterion needs at least one
/// consecutive pair of digits).
pub fn classify_search(params: &FractalParams) -> Result<Classification> {
    classify_search_with(params, DEFAULT_STATE_CAP)
}

pub fn classify_search_with(params: &FractalParams, cap: u64) -> Result<Classification> {
    if params.abs_q() < 3 {
        return Err(Error::TheoremOutOfScope { q: params.q() });
    }
    let table = membership_table_with(params, cap, SweepOrder::Forward, (0, 0))?;
    let v = LatticePoint::new(1, 0);
    let v_member = table.contains(v);
    let mut member_c = Vec::new();
    let mut refuted_c = Vec::new();
    for c in 2..=params.abs_q() {
        if table.contains(LatticePoint::new(params.m() + c, 0)) {
            member_c.push(c);
        } else {
            refuted_c.push(c);
        }
    }

    if v_member && !member_c.is_empty() {
        let c = member_c[0];
        let v_witness = table.witness(v).expect("member must have a witness");
        let mc_witness = table
            .witness(LatticePoint::new(params.m() + c, 0))
            .expect("member must have a witness");
        Ok(Classification {
            verdict: Verdict::Connected,
            method: Method::NeighborSearch,
            evidence: Some(Evidence::Witnesses {
                v: v_witness,
                c,
                mc: mc_witness,
            }),
        })
    } else {
        Ok(Classification {
            verdict: Verdict::Disconnected,
            method: Method::NeighborSearch,
            evidence: Some(Evidence::Refutation {
                v_member,
                refuted_c,
                member_c,
            }),
        })
    }
}

/// One sweep cell: both verdicts where the classifiers apply, and whether
/// they agree. `None` marks a classifier that declined the parameters
/// (|q| = 2 with m >= 0); invalid grid points never produce a row.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepRow {
    pub p: i64,
    pub q: i64,
    pub m: i64,
    pub theorem: Option<Verdict>,
    pub search: Option<Verdict>,
    pub agree: Option<bool>,
}

/// Classifies every valid grid point with both methods, in parallel.
/// Rows come back ordered by (m, q, p).
pub fn sweep(
    p_range: RangeInclusive<i64>,
    q_range: RangeInclusive<i64>,
    m_values: &[i64],
) -> Vec<SweepRow> {
    sweep_with(p_range, q_range, m_values, DEFAULT_STATE_CAP)
}

pub fn sweep_with(
    p_range: RangeInclusive<i64>,
    q_range: RangeInclusive<i64>,
    m_values: &[i64],
    cap: u64,
) -> Vec<SweepRow> {
    let ps: Vec<i64> = p_range.collect();
    let qs: Vec<i64> = q_range.collect();
    let mut cells: Vec<(i64, i64, i64)> = Vec::with_capacity(m_values.len() * qs.len() * ps.len());
    for &m in m_values {
        for &q in &qs {
            for &p in &ps {
                cells.push((m, q, p));
            }
        }
    }
    cells
        .par_iter()
        .filter_map(|&(m, q, p)| {
            let params = FractalParams::new(p, q, m).ok()?;
            let theorem = classify_theorem(&params).ok().map(|c| c.verdict);
            let search = classify_search_with(&params, cap).ok().map(|c| c.verdict);
            let agree = match (theorem, search) {
                (Some(t), Some(s)) => Some(t == s),
                _ => None,
            };
            Some(SweepRow {
                p,
                q,
                m,
                theorem,
                search,
                agree,
            })
        })
        .collect()
}

fn verdict_cell(v: Option<Verdict>) -> &'static str {
    match v {
        Some(Verdict::Connected) => "connected",
        Some(Verdict::Disconnected) => "disconnected",
        None => "out_of_scope",
    }
}

/// Renders sweep rows as CSV with the fixed header `p,q,m,theorem,search,agree`.
pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut out = String::from("p,q,m,theorem,search,agree\n");
    for r in rows {
        let agree = match r.agree {
            Some(true) => "true",
            Some(false) => "false",
            None => "",
        };
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            r.p,
            r.q,
            r.m,
            verdict_cell(r.theorem),
            verdict_cell(r.search),
            agree
        ));
    }
    out
}
