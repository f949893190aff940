//! Khovanov homology over `Q` and `F2`.
//!
//! The default pipeline scans the diagram crossing by crossing (see
//! [`scan`]); [`cube`] builds the full cube of resolutions and is kept as
//! an oracle for small diagrams.

pub mod cobordism;
pub mod cube;
pub mod scan;

use serde_json::json;

use std::collections::BTreeMap;

use crate::algebra::{
    BigradedDims, Cancellation, ComplexError, DeltaGradedDims, ExactField, Field, GradedChainComplex, LaurentPoly, Rational,
    Reducer, SparseMatrix, F2,
};
use crate::diagram::{DiagramError, PlanarDiagram};
pub use scan::CrossingOrder;

/// Default bound on the number of crossings.
pub const DEFAULT_MAX_CROSSINGS: usize = 28;

/// Environment variable overriding [`DEFAULT_MAX_CROSSINGS`].
pub const MAX_CROSSINGS_VAR: &str = "KH_MAX_CROSSINGS";

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum KhError {
    #[error("diagram has {crossings} crossings, above the limit of {limit} (set {MAX_CROSSINGS_VAR} to raise it)")]
    TooLarge { crossings: usize, limit: usize },
    #[error("reduced homology needs a basepoint")]
    MissingBasepoint,
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error("expected a knot, got {components} components")]
    NotAKnot { components: usize },
    #[error("{0} is not supported over {1}")]
    UnsupportedField(&'static str, &'static str),
    #[error("graded Euler characteristic is not divisible by q + q^-1")]
    NotDivisible,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    /// Crossing-by-crossing scan with delooping and elimination.
    Scan,
    /// Full cube of resolutions.
    Naive,
}

#[derive(Clone, Debug)]
pub struct KhOptions {
    pub order: CrossingOrder,
    pub method: Method,
    /// `None` reads [`MAX_CROSSINGS_VAR`], falling back to the default.
    pub max_crossings: Option<usize>,
}

impl Default for KhOptions {
    fn default() -> Self {
        KhOptions { order: CrossingOrder::Input, method: Method::Scan, max_crossings: None }
    }
}

impl KhOptions {
    pub fn naive() -> Self {
        KhOptions { method: Method::Naive, ..Self::default() }
    }

    pub fn limit(&self) -> usize {
        self.max_crossings.unwrap_or_else(|| {
            std::env::var(MAX_CROSSINGS_VAR).ok().and_then(|s| s.trim().parse().ok()).unwrap_or(DEFAULT_MAX_CROSSINGS)
        })
    }
}

/// Which homology theory to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Flavor {
    Unreduced,
    Reduced,
    /// Lee's deformation `x^2 = 1`; entries may raise q by multiples of 4.
    Lee,
}

/// A finite complex given by generators `(h, q)` and matrix entries
/// `(source, target, value)`. Entries raise `h` by one.
#[derive(Clone, Debug)]
pub struct SmallComplex<F: Field> {
    pub gens: Vec<(i32, i32)>,
    pub entries: Vec<(usize, usize, F)>,
}

impl<F: Field> SmallComplex<F> {
    pub fn shifted(mut self, h: i32, q: i32) -> Self {
        for g in &mut self.gens {
            g.0 += h;
            g.1 += q;
        }
        self
    }

    /// Tensor with `k` free circles.
    fn with_free_loops(self, k: usize) -> Self {
        if k == 0 {
            return self;
        }
        let labels = 1usize << k;
        let offsets: Vec<i32> = (0..labels).map(|l| k as i32 - 2 * l.count_ones() as i32).collect();
        let gens = self.gens.iter().flat_map(|&(h, q)| offsets.iter().map(move |o| (h, q + o))).collect();
        let entries = self
            .entries
            .iter()
            .flat_map(|(s, t, v)| (0..labels).map(move |l| (s * labels + l, t * labels + l, v.clone())))
            .collect();
        SmallComplex { gens, entries }
    }

    pub fn generator_dims(&self) -> BigradedDims {
        let mut b = BigradedDims::new();
        for &(h, q) in &self.gens {
            b.add(h, q, 1);
        }
        b
    }

    pub fn reducer(&self) -> Reducer<F> {
        let mut r = Reducer::new(self.gens.iter().copied());
        for (s, t, v) in &self.entries {
            r.add_entry(*s, *t, v.clone());
        }
        r
    }

    /// Cancels everything in order of q-jump (level `Δq / 4`), returning
    /// the surviving generators and the cancelled pairs.
    pub fn eliminate(&self) -> (Vec<(i32, i32)>, Vec<Cancellation>) {
        let mut r = self.reducer();
        let cancelled = r.eliminate_all_by_level(&|qs, qt| i64::from((qt - qs) / 4));
        let survivors = r.live_generators().map(|g| (r.degree(g), r.weight(g))).collect();
        (survivors, cancelled)
    }

    pub fn homology_dims(&self) -> BigradedDims {
        let (surv, _) = self.eliminate();
        BigradedDims::from_entries(surv.into_iter().map(|g| (g, 1)))
    }

    /// The same complex as a [`GradedChainComplex`], for rank-based
    /// homology. Fails on Lee complexes, whose entries move q.
    pub fn to_graded(&self) -> Result<GradedChainComplex<F>, ComplexError> {
        let mut gens: BTreeMap<i32, Vec<i32>> = BTreeMap::new();
        let pos: Vec<usize> = self
            .gens
            .iter()
            .map(|&(h, q)| {
                let v = gens.entry(h).or_default();
                v.push(q);
                v.len() - 1
            })
            .collect();
        let mut triplets: BTreeMap<i32, Vec<(usize, usize, F)>> = BTreeMap::new();
        for (s, t, v) in &self.entries {
            triplets.entry(self.gens[*s].0).or_default().push((pos[*t], pos[*s], v.clone()));
        }
        let diffs = triplets
            .into_iter()
            .map(|(h, t)| {
                let rows = gens.get(&(h + 1)).map_or(0, Vec::len);
                (h, SparseMatrix::from_triplets(rows, gens[&h].len(), t))
            })
            .collect();
        GradedChainComplex::new(gens, diffs)
    }
}

fn guard(d: &PlanarDiagram, opts: &KhOptions) -> Result<(), KhError> {
    let limit = opts.limit();
    if d.crossing_count() > limit {
        return Err(KhError::TooLarge { crossings: d.crossing_count(), limit });
    }
    Ok(())
}

/// The unnormalized complex of `d` with homology-preserving simplification
/// already applied (scan) or not (naive).
pub fn complex<F: Field>(d: &PlanarDiagram, flavor: Flavor, opts: &KhOptions) -> Result<SmallComplex<F>, KhError> {
    guard(d, opts)?;
    if flavor == Flavor::Lee && F::TAG != ExactField::Rationals {
        return Err(KhError::UnsupportedField("Lee homology", F::TAG.name()));
    }
    let reduced = flavor == Flavor::Reduced;
    let lee = flavor == Flavor::Lee;
    let basepoint = match (reduced, d.basepoint()) {
        (true, None) if d.crossing_count() > 0 => return Err(KhError::MissingBasepoint),
        (_, Some(b)) => Some(b),
        _ => d.arcs().into_iter().next(),
    };
    if d.crossing_count() == 0 {
        let loops = d.free_loops();
        let one = SmallComplex { gens: vec![(0, 0)], entries: Vec::new() };
        return Ok(if reduced { one.with_free_loops(loops.saturating_sub(1)) } else { one.with_free_loops(loops) });
    }
    let cut = basepoint.expect("diagram with crossings has arcs");
    let cx = match opts.method {
        Method::Naive => cube::cube_complex(d, reduced.then_some(cut), lee),
        Method::Scan => {
            let arc = scan::scan::<F>(d, cut, opts.order, lee);
            close_arc(arc, reduced, lee).with_free_loops(d.free_loops())
        }
    };
    Ok(cx)
}

fn close_arc<F: Field>(arc: scan::ArcComplex<F>, reduced: bool, lee: bool) -> SmallComplex<F> {
    if reduced {
        let entries = arc.entries.into_iter().filter(|e| !e.2.is_zero()).map(|(s, t, a, _)| (s, t, a)).collect();
        return SmallComplex { gens: arc.gens, entries };
    }
    let gens = arc.gens.iter().flat_map(|&(h, q)| [(h, q + 1), (h, q - 1)]).collect();
    let mut entries = Vec::new();
    for (s, t, a, b) in arc.entries {
        let (one_s, x_s, one_t, x_t) = (2 * s, 2 * s + 1, 2 * t, 2 * t + 1);
        if !a.is_zero() {
            entries.push((one_s, one_t, a.clone()));
            entries.push((x_s, x_t, a));
        }
        if !b.is_zero() {
            if lee {
                entries.push((x_s, one_t, b.clone()));
            }
            entries.push((one_s, x_t, b));
        }
    }
    SmallComplex { gens, entries }
}

/// A grading shift `[h]{q}`: `Kh(K)[h]` has `Kh^i` in degree `i + h`, and
/// `Q_j{q} = Q_{j+q}`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ShiftSpec {
    pub homological: i32,
    pub quantum: i32,
}

impl ShiftSpec {
    pub fn new(homological: i32, quantum: i32) -> Self {
        ShiftSpec { homological, quantum }
    }

    /// The normalizing shift `[−n₋]{n₊−2n₋}`.
    pub fn normalizing(n_plus: usize, n_minus: usize) -> Self {
        let (np, nm) = (n_plus as i32, n_minus as i32);
        ShiftSpec::new(-nm, np - 2 * nm)
    }

    pub fn then(self, other: ShiftSpec) -> Self {
        ShiftSpec::new(self.homological + other.homological, self.quantum + other.quantum)
    }

    pub fn inverse(self) -> Self {
        ShiftSpec::new(-self.homological, -self.quantum)
    }

    pub fn apply(self, b: &BigradedDims) -> BigradedDims {
        b.shifted(self.homological, self.quantum)
    }
}

/// The overall shift of `d`.
pub fn normalization(d: &PlanarDiagram) -> ShiftSpec {
    ShiftSpec::normalizing(d.n_plus(), d.n_minus())
}

fn dims_generic<F: Field>(d: &PlanarDiagram, flavor: Flavor, normalize: bool, opts: &KhOptions) -> Result<BigradedDims, KhError> {
    let h = complex::<F>(d, flavor, opts)?.homology_dims();
    let shift = if normalize { normalization(d) } else { ShiftSpec::default() };
    Ok(shift.apply(&h))
}

fn dispatch(
    d: &PlanarDiagram,
    ring: ExactField,
    flavor: Flavor,
    normalize: bool,
    opts: &KhOptions,
) -> Result<BigradedDims, KhError> {
    match ring {
        ExactField::Rationals => dims_generic::<Rational>(d, flavor, normalize, opts),
        ExactField::F2 => dims_generic::<F2>(d, flavor, normalize, opts),
    }
}

/// Homology of the cube complex before the overall shift.
pub fn unnormalized_kh(d: &PlanarDiagram, ring: ExactField) -> Result<BigradedDims, KhError> {
    unnormalized_kh_with(d, ring, &KhOptions::default())
}

pub fn unnormalized_kh_with(d: &PlanarDiagram, ring: ExactField, opts: &KhOptions) -> Result<BigradedDims, KhError> {
    dispatch(d, ring, Flavor::Unreduced, false, opts)
}

/// Khovanov homology, normalized to be a link invariant.
pub fn kh(d: &PlanarDiagram, ring: ExactField) -> Result<BigradedDims, KhError> {
    kh_with(d, ring, &KhOptions::default())
}

pub fn kh_with(d: &PlanarDiagram, ring: ExactField, opts: &KhOptions) -> Result<BigradedDims, KhError> {
    dispatch(d, ring, Flavor::Unreduced, true, opts)
}

/// Reduced Khovanov homology at the diagram's basepoint, normalized.
pub fn reduced_kh(d: &PlanarDiagram, ring: ExactField) -> Result<BigradedDims, KhError> {
    reduced_kh_with(d, ring, &KhOptions::default())
}

pub fn reduced_kh_with(d: &PlanarDiagram, ring: ExactField, opts: &KhOptions) -> Result<BigradedDims, KhError> {
    dispatch(d, ring, Flavor::Reduced, true, opts)
}

pub fn delta_collapse(b: &BigradedDims) -> DeltaGradedDims {
    b.collapse(|i, q| q - 2 * i)
}

/// `Σ (−1)^i dim Kh^i_q · q^q`.
pub fn graded_euler_characteristic(b: &BigradedDims) -> LaurentPoly {
    b.euler()
}

/// `|J(i) / (i + i⁻¹)|` for the unnormalized Jones polynomial `J`, computed
/// as the Gaussian integer value of `J / (q + q⁻¹)` at `q = i`.
pub fn determinant(b: &BigradedDims) -> Result<u64, KhError> {
    let j = graded_euler_characteristic(b);
    let v = j.div_exact(&LaurentPoly::from_terms([(-1, 1), (1, 1)])).ok_or(KhError::NotDivisible)?;
    let (re, im) = v.eval_at_i();
    if re != 0 && im != 0 {
        return Err(KhError::NotDivisible);
    }
    Ok((re.abs() + im.abs()) as u64)
}

/// Everything reported by `kh compute`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KhReport {
    pub ring: ExactField,
    pub reduced: bool,
    pub dims: BigradedDims,
}

impl KhReport {
    pub fn compute(d: &PlanarDiagram, ring: ExactField, reduced: bool, opts: &KhOptions) -> Result<Self, KhError> {
        let dims = if reduced { reduced_kh_with(d, ring, opts)? } else { kh_with(d, ring, opts)? };
        Ok(KhReport { ring, reduced, dims })
    }

    pub fn to_json(&self) -> serde_json::Value {
        let dims: Vec<[i64; 3]> = self.dims.iter().map(|(i, q, d)| [i64::from(i), i64::from(q), d as i64]).collect();
        let delta: Vec<[i64; 2]> = delta_collapse(&self.dims).iter().map(|(k, d)| [i64::from(k), d as i64]).collect();
        let euler: Vec<[i64; 2]> = graded_euler_characteristic(&self.dims).terms().map(|(e, c)| [i64::from(e), c]).collect();
        json!({
            "ring": self.ring.name(),
            "reduced": self.reduced,
            "dims": dims,
            "total": self.dims.total(),
            "delta": delta,
            "euler": euler,
        })
    }

    pub fn from_json(v: &serde_json::Value) -> Option<Self> {
        let ring = ExactField::parse(v.get("ring")?.as_str()?)?;
        let reduced = v.get("reduced")?.as_bool()?;
        let mut dims = BigradedDims::new();
        for e in v.get("dims")?.as_array()? {
            let e = e.as_array()?;
            if e.len() != 3 {
                return None;
            }
            dims.add(e[0].as_i64()? as i32, e[1].as_i64()? as i32, e[2].as_u64()?);
        }
        Some(KhReport { ring, reduced, dims })
    }
}

#[cfg(test)]
mod tests;
