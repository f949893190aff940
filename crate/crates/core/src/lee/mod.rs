//! Lee's deformation, its spectral sequence, and the Rasmussen invariant.
//!
//! Lee's differential raises q by a multiple of 4. Cancelling its entries
//! in order of increasing q-jump is a filtered reduction: a pair cancelled
//! through a jump of `r` lives on the pages `E_1, ..., E_r` and is killed
//! by `d_r`, which here goes from `E_r^{p,q}` to `E_r^{p+1,q+r}`. `E_1` is
//! Khovanov homology.

use std::collections::BTreeMap;

use serde_json::json;

use crate::algebra::{BigradedDims, Cancellation, Rational};
use crate::diagram::PlanarDiagram;
use crate::khovanov::{complex, normalization, Flavor, KhError, KhOptions, SmallComplex};

/// Generators with homological grading and q-filtration level, with the
/// deformed differential. Normalized gradings.
pub type FilteredComplex = SmallComplex<Rational>;

pub fn lee_complex(d: &PlanarDiagram, opts: &KhOptions) -> Result<FilteredComplex, KhError> {
    let n = normalization(d);
    Ok(complex::<Rational>(d, Flavor::Lee, opts)?.shifted(n.homological, n.quantum))
}

/// One page of the spectral sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectralPage {
    pub r: u32,
    pub dims: BigradedDims,
    /// Ranks of `d_r` as `((p, q), rank)`, mapping `E_r^{p,q} -> E_r^{p+1,q+r}`.
    pub differentials: Vec<((i32, i32), u64)>,
}

/// The whole filtered reduction of a Lee complex.
#[derive(Clone, Debug)]
pub struct LeeSequence {
    pub survivors: Vec<(i32, i32)>,
    /// `(jump r, source grading, target grading)` for every cancelled pair
    /// with positive jump.
    pub kills: Vec<(u32, (i32, i32), (i32, i32))>,
    /// Khovanov homology, i.e. the page `E_1`.
    pub e1: BigradedDims,
}

impl LeeSequence {
    pub fn from_complex(cx: &FilteredComplex) -> Self {
        let mut red = cx.reducer();
        let cancelled: Vec<Cancellation> = red.eliminate_all_by_level(&|qs, qt| i64::from((qt - qs) / 4));
        let survivors: Vec<(i32, i32)> = red.live_generators().map(|g| cx.gens[g]).collect();
        let kills: Vec<_> = cancelled
            .iter()
            .filter(|c| c.level > 0)
            .map(|c| (4 * c.level as u32, cx.gens[c.source], cx.gens[c.target]))
            .collect();
        let mut e1 = BigradedDims::from_entries(survivors.iter().map(|&g| (g, 1)));
        for (_, s, t) in &kills {
            e1.add(s.0, s.1, 1);
            e1.add(t.0, t.1, 1);
        }
        LeeSequence { survivors, kills, e1 }
    }

    pub fn page(&self, r: u32) -> SpectralPage {
        assert!(r >= 1, "pages start at 1");
        let mut dims = BigradedDims::from_entries(self.survivors.iter().map(|&g| (g, 1)));
        let mut diff: BTreeMap<(i32, i32), u64> = BTreeMap::new();
        for &(jump, s, t) in &self.kills {
            if jump >= r {
                dims.add(s.0, s.1, 1);
                dims.add(t.0, t.1, 1);
            }
            if jump == r {
                *diff.entry(s).or_default() += 1;
            }
        }
        SpectralPage { r, dims, differentials: diff.into_iter().collect() }
    }

    /// Pages where something changes, in increasing order: `E_1` and every
    /// `E_{r+1}` after a nonzero `d_r`.
    pub fn distinct_pages(&self) -> Vec<SpectralPage> {
        let mut rs: Vec<u32> = self.kills.iter().map(|k| k.0 + 1).collect();
        rs.push(1);
        rs.sort_unstable();
        rs.dedup();
        rs.into_iter().map(|r| self.page(r)).collect()
    }

    pub fn e_infinity(&self) -> BigradedDims {
        BigradedDims::from_entries(self.survivors.iter().map(|&g| (g, 1)))
    }
}

pub fn lee_sequence(d: &PlanarDiagram, opts: &KhOptions) -> Result<LeeSequence, KhError> {
    Ok(LeeSequence::from_complex(&lee_complex(d, opts)?))
}

/// Lee homology with each basis element placed at its filtration level.
/// Links are accepted; their homology has dimension `2^components`.
pub fn lee_homology(d: &PlanarDiagram) -> Result<BigradedDims, KhError> {
    if !d.is_knot() {
        log::warn!("Lee homology of a {}-component link", d.component_count());
    }
    Ok(lee_sequence(d, &KhOptions::default())?.e_infinity())
}

fn s_from(e_inf: &BigradedDims) -> i32 {
    let qs: Vec<i32> = e_inf.iter().flat_map(|(_, q, d)| std::iter::repeat(q).take(d as usize)).collect();
    assert_eq!(qs.len(), 2, "a knot has two-dimensional Lee homology");
    debug_assert_eq!(qs[1] - qs[0], 2);
    qs[0] + 1
}

/// The Rasmussen invariant: the surviving filtration levels are `s ± 1`.
pub fn s_invariant(d: &PlanarDiagram) -> Result<i32, KhError> {
    s_invariant_with(d, &KhOptions::default())
}

pub fn s_invariant_with(d: &PlanarDiagram, opts: &KhOptions) -> Result<i32, KhError> {
    if !d.is_knot() {
        return Err(KhError::NotAKnot { components: d.component_count() });
    }
    Ok(s_from(&lee_sequence(d, opts)?.e_infinity()))
}

/// The page `E_r`. `E_1` is Khovanov homology over `Q`.
pub fn page_dims(d: &PlanarDiagram, r: u32) -> Result<SpectralPage, KhError> {
    Ok(lee_sequence(d, &KhOptions::default())?.page(r))
}

/// Everything reported for the Lee spectral sequence of a knot.
#[derive(Clone, Debug)]
pub struct LeeReport {
    pub s: i32,
    pub sequence: LeeSequence,
}

impl LeeReport {
    pub fn compute(d: &PlanarDiagram, opts: &KhOptions) -> Result<Self, KhError> {
        if !d.is_knot() {
            return Err(KhError::NotAKnot { components: d.component_count() });
        }
        let sequence = lee_sequence(d, opts)?;
        Ok(LeeReport { s: s_from(&sequence.e_infinity()), sequence })
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut by_i: BTreeMap<i32, u64> = BTreeMap::new();
        for (i, _, d) in self.sequence.e_infinity().iter() {
            *by_i.entry(i).or_default() += d;
        }
        let dims = |b: &BigradedDims| b.iter().map(|(i, q, d)| json!([i, q, d])).collect::<Vec<_>>();
        let mut pages = serde_json::Map::new();
        for p in self.sequence.distinct_pages() {
            pages.insert(p.r.to_string(), json!(dims(&p.dims)));
        }
        pages.insert("inf".into(), json!(dims(&self.sequence.e_infinity())));
        json!({
            "s": self.s,
            "lee_dims": by_i.into_iter().map(|(i, d)| json!([i, d])).collect::<Vec<_>>(),
            "pages": pages,
        })
    }
}

#[cfg(test)]
mod tests;
