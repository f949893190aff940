//! The skein long exact sequence at the level of dimensions, and the
//! induction computing Khovanov homology along the twist families.

mod induction;

pub use induction::{
    closed_form_table, induction_step, lee_feasibility, Candidate, Family, InductionError, InductionResult, LeeVerdict, Parameter,
};

use std::collections::BTreeSet;

use serde_json::json;

use crate::algebra::{BigradedDims, ExactField};
use crate::diagram::{PlanarDiagram, SkeinTriple};
use crate::khovanov::{normalization, unnormalized_kh_with, KhError, KhOptions, ShiftSpec};

/// A skein triple with the unnormalized homology of each member.
#[derive(Clone, Debug)]
pub struct LESInstance {
    pub triple: SkeinTriple,
    /// Normalizing shifts of `D`, `D_0`, `D_1`.
    pub shifts: [ShiftSpec; 3],
    /// Unnormalized homology of `D`, `D_0`, `D_1`.
    pub dims: [BigradedDims; 3],
}

#[derive(Debug, thiserror::Error)]
pub enum SkeinError {
    #[error(transparent)]
    Kh(#[from] KhError),
    #[error("shift bookkeeping does not match the triple: {0}")]
    ShiftMismatch(String),
}

impl LESInstance {
    pub fn compute(d: &PlanarDiagram, crossing: usize, ring: ExactField, opts: &KhOptions) -> Result<Self, SkeinError> {
        let triple = d.skein_triple(crossing).map_err(KhError::from)?;
        let dims = [
            unnormalized_kh_with(&triple.d, ring, opts)?,
            unnormalized_kh_with(&triple.d0, ring, opts)?,
            unnormalized_kh_with(&triple.d1, ring, opts)?,
        ];
        let shifts = [normalization(&triple.d), normalization(&triple.d0), normalization(&triple.d1)];
        Ok(LESInstance { triple, shifts, dims })
    }

    /// Each shift must be the normalizing shift of its member, and both
    /// resolutions must have one crossing fewer than `D`.
    pub fn check_bookkeeping(&self) -> Result<(), SkeinError> {
        let t = &self.triple;
        let n = t.d.crossing_count();
        for (name, x) in [("D0", &t.d0), ("D1", &t.d1)] {
            if x.crossing_count() + 1 != n {
                return Err(SkeinError::ShiftMismatch(format!(
                    "{name} has {} crossings, expected {}",
                    x.crossing_count(),
                    n - 1
                )));
            }
        }
        for (k, x) in [&t.d, &t.d0, &t.d1].into_iter().enumerate() {
            if self.shifts[k] != normalization(x) {
                return Err(SkeinError::ShiftMismatch(format!("member {k}: {:?} is not [-n-]{{n+ - 2n-}}", self.shifts[k])));
            }
        }
        Ok(())
    }

    /// Normalized homology of the three members.
    pub fn normalized(&self) -> [BigradedDims; 3] {
        [0, 1, 2].map(|k| self.shifts[k].apply(&self.dims[k]))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ViolationKind {
    /// The alternating sum along the sequence is nonzero in this q.
    Euler,
    /// A term is larger than its two neighbours allow.
    Triangle,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub kind: ViolationKind,
    pub q: i32,
    pub i: Option<i32>,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct LesReport {
    pub crossing: usize,
    pub counts: [(usize, usize); 3],
    pub pass: bool,
    pub violations: Vec<Violation>,
}

impl LesReport {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "triple": {
                "crossing": self.crossing,
                "n_plus_minus": self.counts.iter().map(|&(p, m)| json!([p, m])).collect::<Vec<_>>(),
            },
            "pass": self.pass,
            "violations": self.violations.iter().map(|v| json!({
                "kind": match v.kind { ViolationKind::Euler => "euler", ViolationKind::Triangle => "triangle" },
                "i": v.i,
                "q": v.q,
                "detail": v.detail,
            })).collect::<Vec<_>>(),
        })
    }
}

/// Checks the dimension-level consequences of exactness of
/// `… → Kĥ^{i−1}(D₁){1} → Kĥ^i(D) → Kĥ^i(D₀) → Kĥ^i(D₁){1} → …`
/// in every quantum grading.
pub fn les_consistency(inst: &LESInstance) -> Result<LesReport, SkeinError> {
    inst.check_bookkeeping()?;
    let [d, d0, d1] = &inst.dims;
    // a^i = Kĥ^{i−1}(D₁){1}, b^i = Kĥ^i(D), c^i = Kĥ^i(D₀)
    let a = |i: i32, q: i32| d1.get(i - 1, q - 1);
    let b = |i: i32, q: i32| d.get(i, q);
    let c = |i: i32, q: i32| d0.get(i, q);
    let mut qs = BTreeSet::new();
    let mut is = BTreeSet::new();
    for (i, q, _) in d.iter().chain(d0.iter()) {
        qs.insert(q);
        is.insert(i);
    }
    for (i, q, _) in d1.iter() {
        qs.insert(q + 1);
        is.insert(i + 1);
    }
    let (lo, hi) = match (is.first(), is.last()) {
        (Some(&lo), Some(&hi)) => (lo - 1, hi + 1),
        _ => (0, 0),
    };
    let mut violations = Vec::new();
    for &q in &qs {
        let mut sum: i64 = 0;
        for i in lo..=hi {
            let sign = if i.rem_euclid(2) == 0 { 1 } else { -1 };
            sum += sign * (c(i, q) as i64 + a(i, q) as i64 - b(i, q) as i64);
            let checks = [
                (b(i, q), a(i, q) + c(i, q), "Kh(D)"),
                (c(i, q), b(i, q) + a(i + 1, q), "Kh(D0)"),
                (a(i, q), c(i - 1, q) + b(i, q), "Kh(D1){1}[1]"),
            ];
            for (x, bound, name) in checks {
                if x > bound {
                    violations.push(Violation {
                        kind: ViolationKind::Triangle,
                        q,
                        i: Some(i),
                        detail: format!("{name} has dimension {x}, neighbours allow at most {bound}"),
                    });
                }
            }
        }
        if sum != 0 {
            violations.push(Violation { kind: ViolationKind::Euler, q, i: None, detail: format!("alternating sum is {sum}") });
        }
    }
    Ok(LesReport {
        crossing: inst.triple.crossing,
        counts: inst.triple.crossing_counts(),
        pass: violations.is_empty(),
        violations,
    })
}

#[cfg(test)]
mod tests;
