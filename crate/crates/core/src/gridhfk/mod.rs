//! Knot Floer homology of small grid diagrams over `F2`.
//!
//! Gradings follow the lattice-point formulas: Maslov `M = M_O`, and
//! `A = (M_O − M_X − (g − ℓ)) / 2` for an `ℓ`-component link. With every
//! variable set to zero the grid complex computes `HFK^ ⊗ W^{g−ℓ}`, where
//! `W` has one generator in `(0, 0)` and one in `(−1, −1)`. With every
//! variable set equal to a single `U` it computes `HFK⁻ ⊗ W^{g−ℓ}`.

pub mod alexander;
pub mod grid;
pub mod states;

use std::collections::BTreeMap;

use serde_json::json;

use crate::algebra::{BigradedDims, DeltaGradedDims, LaurentPoly, Reducer, F2};
pub use alexander::alexander_polynomial;
pub use grid::GridDiagram;
use states::d_squared_vanishes;
pub use states::StateSpace;

/// Dimensions over `F2` indexed by `(maslov, alexander)`.
pub type HFKDims = BigradedDims;

pub const DEFAULT_HAT_MAX_SIZE: usize = 8;
pub const MINUS_MAX_SIZE: usize = 6;
pub const DEFAULT_TRUNCATION: u32 = 8;

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum GridError {
    #[error("cannot parse grid: {0}")]
    Parse(String),
    #[error("invalid grid: {0}")]
    Invalid(String),
    #[error("grid of size {size} is above the limit of {limit}")]
    TooLarge { size: usize, limit: usize },
    #[error("expected a knot grid, got {0} components")]
    NotAKnot(usize),
    #[error("homology is not divisible by the stabilization factor")]
    NotDivisible,
    #[error("truncated homology at U^{0} disagrees with the module structure")]
    Unstable(u32),
}

fn check_size(g: &GridDiagram, limit: usize) -> Result<(), GridError> {
    if g.size > limit {
        return Err(GridError::TooLarge { size: g.size, limit });
    }
    Ok(())
}

/// Divides a table by `W^k`: `t(m, a) = h(m, a) + h(m + 1, a + 1)`.
fn divide_by_w(t: &BigradedDims, k: usize) -> Option<BigradedDims> {
    let mut cur = t.clone();
    for _ in 0..k {
        let mut h = BigradedDims::new();
        let entries: Vec<(i32, i32, u64)> = cur.iter().collect();
        // highest Maslov first, so h(m + 1, a + 1) is already known
        for &(m, a, d) in entries.iter().rev() {
            let sub = h.get(m + 1, a + 1);
            h.add(m, a, d.checked_sub(sub)?);
        }
        let mut check = h.clone();
        for (m, a, d) in h.iter() {
            check.add(m - 1, a - 1, d);
        }
        if check != cur {
            return None;
        }
        cur = h;
    }
    Some(cur)
}

// The reducer wants differentials raising degree, and these lower `M`.
fn homology(space: &StateSpace, rects: &[(u32, u32, u32)]) -> BigradedDims {
    let mut r: Reducer<F2> = Reducer::new(space.gradings.iter().map(|&(m, a)| (-m, a)));
    for &(s, t, _) in rects {
        r.add_entry(s as usize, t as usize, F2(true));
    }
    r.eliminate_all_by_level(&|_, _| 0);
    BigradedDims::from_entries(r.live_generators().map(|g| (space.gradings[g], 1)))
}

/// Homology of the tilde complex: rectangles avoid every marking.
pub fn tilde_hfk(g: &GridDiagram) -> Result<HFKDims, GridError> {
    check_size(g, DEFAULT_HAT_MAX_SIZE)?;
    let space = StateSpace::new(g);
    Ok(homology(&space, &space.rectangles(g, true)))
}

/// `HFK^` of the knot or link, using the default size bound.
pub fn hat_hfk(g: &GridDiagram) -> Result<HFKDims, GridError> {
    hat_hfk_with(g, DEFAULT_HAT_MAX_SIZE)
}

pub fn hat_hfk_with(g: &GridDiagram, limit: usize) -> Result<HFKDims, GridError> {
    check_size(g, limit)?;
    let space = StateSpace::new(g);
    let tilde = homology(&space, &space.rectangles(g, true));
    let hat = divide_by_w(&tilde, g.size - g.components()).ok_or(GridError::NotDivisible)?;
    Ok(hat)
}

/// A finitely generated bigraded `F2[U]`-module, `U` of degree `(−2, −1)`:
/// free towers and cyclic torsion summands, listed by generator grading.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MinusModule {
    pub towers: BigradedDims,
    /// `k -> gradings of the generators of F2[U]/U^k summands`.
    pub torsion: BTreeMap<u32, BigradedDims>,
}

impl MinusModule {
    pub fn tower_count(&self) -> u64 {
        self.towers.total()
    }

    /// `F2`-dimensions of `module ⊗ F2[U]/U^d` plus its `Tor` term, which
    /// is the homology of the complex truncated at `U^d`.
    pub fn truncated_dims(&self, d: u32) -> BigradedDims {
        let mut out = BigradedDims::new();
        let d = d as i32;
        for (m, a, n) in self.towers.iter() {
            for j in 0..d {
                out.add(m - 2 * j, a - j, n);
            }
        }
        for (&k, gens) in &self.torsion {
            let k = k as i32;
            for (m, a, n) in gens.iter() {
                for j in 0..k.min(d) {
                    out.add(m - 2 * j, a - j, n);
                }
                // the generator mapping onto U^k times this one
                let (ms, as_) = (m - 2 * k + 1, a - k);
                for j in (d - k).max(0)..d {
                    out.add(ms - 2 * j, as_ - j, n);
                }
            }
        }
        out
    }

    fn divide_by_w(&self, k: usize) -> Option<Self> {
        let towers = divide_by_w(&self.towers, k)?;
        let mut torsion = BTreeMap::new();
        for (&order, gens) in &self.torsion {
            torsion.insert(order, divide_by_w(gens, k)?);
        }
        Some(MinusModule { towers, torsion })
    }

    pub fn to_json(&self) -> serde_json::Value {
        let dims = |b: &BigradedDims| b.iter().map(|(m, a, d)| json!([m, a, d])).collect::<Vec<_>>();
        json!({
            "towers": dims(&self.towers),
            "torsion": self.torsion.iter().map(|(k, g)| json!({"order": k, "generators": dims(g)})).collect::<Vec<_>>(),
        })
    }
}

fn collapsed_module(space: &StateSpace, rects: &[(u32, u32, u32)]) -> MinusModule {
    // setting U = 1 leaves only the grading 2A − M
    let mut r: Reducer<F2> = Reducer::new(space.gradings.iter().map(|&(m, a)| (2 * a - m, a)));
    for &(s, t, k) in rects {
        debug_assert_eq!(space.gradings[t as usize].1 - space.gradings[s as usize].1, k as i32);
        r.add_entry(s as usize, t as usize, F2(true));
    }
    // entry s -> t carries U^(A(t) − A(s)); minimal powers first
    let cancelled = r.eliminate_all_by_level(&|ws, wt| i64::from(wt - ws));
    let mut module = MinusModule {
        towers: BigradedDims::from_entries(r.live_generators().map(|g| (space.gradings[g], 1))),
        torsion: BTreeMap::new(),
    };
    for c in cancelled.into_iter().filter(|c| c.level > 0) {
        module.torsion.entry(c.level as u32).or_default().add(space.gradings[c.target].0, space.gradings[c.target].1, 1);
    }
    module
}

/// Homology of the collapsed complex truncated at `U^d`, by direct linear
/// algebra over `F2`.
pub fn collapsed_truncated_dims(g: &GridDiagram, d: u32) -> Result<BigradedDims, GridError> {
    check_size(g, MINUS_MAX_SIZE)?;
    let space = StateSpace::new(g);
    let rects = space.rectangles(g, false);
    truncated(&space, &rects, d)
}

fn truncated(space: &StateSpace, rects: &[(u32, u32, u32)], d: u32) -> Result<BigradedDims, GridError> {
    let n = space.len();
    let grade = |s: usize, j: u32| (space.gradings[s].0 - 2 * j as i32, space.gradings[s].1 - j as i32);
    let gens: Vec<(i32, i32)> = (0..d).flat_map(|j| (0..n).map(move |s| (s, j))).map(|(s, j)| grade(s, j)).collect();
    let mut r: Reducer<F2> = Reducer::new(gens.iter().map(|&(m, a)| (-m, a)));
    for &(s, t, k) in rects {
        for j in 0..d.saturating_sub(k) {
            r.add_entry(j as usize * n + s as usize, (j + k) as usize * n + t as usize, F2(true));
        }
    }
    r.eliminate_all_by_level(&|_, _| 0);
    Ok(BigradedDims::from_entries(r.live_generators().map(|g| (gens[g], 1))))
}

/// `HFK⁻` as an `F2[U]`-module. The exact barcode is checked against the
/// truncated complexes at `U^d` and `U^{d+2}` for `d = DEFAULT_TRUNCATION`.
pub fn minus_hfk(g: &GridDiagram) -> Result<MinusModule, GridError> {
    check_size(g, MINUS_MAX_SIZE)?;
    let space = StateSpace::new(g);
    let rects = space.rectangles(g, false);
    let collapsed = collapsed_module(&space, &rects);
    for d in [DEFAULT_TRUNCATION, DEFAULT_TRUNCATION + 2] {
        if truncated(&space, &rects, d)? != collapsed.truncated_dims(d) {
            return Err(GridError::Unstable(d));
        }
    }
    collapsed.divide_by_w(g.size - g.components()).ok_or(GridError::NotDivisible)
}

/// `τ(K)`, read off as the Alexander grading of the tower of `HFK⁻(m(K))`:
/// `τ(m(K)) = max{a | some ξ in HFK⁻(K, a) has U^d ξ ≠ 0 for all d}`.
pub fn tau(g: &GridDiagram) -> Result<i32, GridError> {
    if g.components() != 1 {
        return Err(GridError::NotAKnot(g.components()));
    }
    let m = minus_hfk(&g.mirror())?;
    let (_, a, _) = m.towers.iter().max_by_key(|&(_, a, _)| a).expect("a knot has one tower");
    Ok(a)
}

/// Checks `∂∘∂ = 0` on the tilde complex and on the full minus complex
/// with every `U_i` set equal.
pub fn grid_complexes_are_complexes(g: &GridDiagram) -> Result<bool, GridError> {
    check_size(g, DEFAULT_HAT_MAX_SIZE)?;
    let space = StateSpace::new(g);
    Ok(d_squared_vanishes(&space, &space.rectangles(g, true)) && d_squared_vanishes(&space, &space.rectangles(g, false)))
}

/// `HFK^_δ = ⊕_{δ = a − m} HFK^_m(a)`.
pub fn hfk_delta_collapse(h: &HFKDims) -> DeltaGradedDims {
    h.collapse(|m, a| a - m)
}

/// `dim(m, a) = dim(m − 2a, −a)` for every entry.
pub fn conjugation_symmetric(h: &HFKDims) -> bool {
    h.iter().all(|(m, a, d)| h.get(m - 2 * a, -a) == d)
}

/// `Σ (−1)^m dim · t^a`.
pub fn hfk_euler(h: &HFKDims) -> LaurentPoly {
    LaurentPoly::from_terms(h.iter().map(|(m, a, d)| (a, if m.rem_euclid(2) == 0 { d as i64 } else { -(d as i64) })))
}

/// A reference `HFK^` table shipped as fixture data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HfkTable {
    pub knot: String,
    pub dims: HFKDims,
}

impl HfkTable {
    /// Reads `{"knot": name, "dims": [[m, a, d], ...]}`; other keys are ignored.
    pub fn from_json(text: &str) -> Result<Self, GridError> {
        let v: serde_json::Value = serde_json::from_str(text).map_err(|e| GridError::Parse(e.to_string()))?;
        let knot = v.get("knot").and_then(|k| k.as_str()).unwrap_or_default().to_string();
        let rows = v.get("dims").and_then(|d| d.as_array()).ok_or_else(|| GridError::Parse("missing dims".into()))?;
        let mut dims = HFKDims::new();
        for row in rows {
            let r: Option<Vec<i64>> = row.as_array().map(|r| r.iter().filter_map(|x| x.as_i64()).collect());
            match r.as_deref() {
                Some(&[m, a, d]) if d >= 0 => dims.add(m as i32, a as i32, d as u64),
                _ => return Err(GridError::Parse(format!("bad row {row}"))),
            }
        }
        Ok(HfkTable { knot, dims })
    }
}

/// Report for `hfk grid`.
pub fn hat_report(g: &GridDiagram, h: &HFKDims) -> serde_json::Value {
    json!({
        "flavor": "hat",
        "size": g.size,
        "components": g.components(),
        "dims": h.iter().map(|(m, a, d)| json!([m, a, d])).collect::<Vec<_>>(),
        "total": h.total(),
    })
}
