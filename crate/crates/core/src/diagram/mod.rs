//! Planar diagrams in PD notation.
//!
//! A crossing `X[i,j,k,l]` lists its four arc labels counterclockwise,
//! starting from the incoming under-strand, so the under-strand runs
//! `i -> k`. The crossing is positive when the over-strand runs `l -> j`.
//! Smoothing 0 joins `{i,j}` and `{k,l}`; smoothing 1 joins `{i,l}` and
//! `{j,k}`. For a positive crossing the 0-smoothing is the oriented one.

mod braid;
mod family;
mod parse;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

pub use braid::braid_closure;
pub use family::{generate_family, insert_twist, BandSite, Face, FamilySpec};
pub use parse::parse_pd;

pub type Arc = u32;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiagramError {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("empty diagram")]
    Empty,
    #[error("arc {label} appears {count} times (expected 2)")]
    ArcMultiplicity { label: Arc, count: usize },
    #[error("crossing index {index} out of range ({len} crossings)")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("crossing {0} is negative")]
    NotPositive(usize),
    #[error("diagram has no band site")]
    MissingBandSite,
    #[error("invalid band site: {0}")]
    InvalidBandSite(String),
    #[error("unknown arc {0}")]
    UnknownArc(Arc),
}

/// An oriented planar diagram.
///
/// Stored tuples always start at the incoming under-strand. Crossingless
/// unknotted components are counted in `free_loops`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PlanarDiagram {
    crossings: Vec<[Arc; 4]>,
    signs: Vec<i8>,
    free_loops: usize,
    components: usize,
    basepoint: Option<Arc>,
    band_site: Option<(Arc, Arc)>,
}

/// Smoothing choice at a crossing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Smoothing {
    Zero,
    One,
}

impl Smoothing {
    pub fn from_bit(b: u8) -> Self {
        if b == 0 {
            Smoothing::Zero
        } else {
            Smoothing::One
        }
    }

    /// Pairs of slots joined by the smoothing.
    pub fn pairs(self) -> [(usize, usize); 2] {
        match self {
            Smoothing::Zero => [(0, 1), (2, 3)],
            Smoothing::One => [(0, 3), (1, 2)],
        }
    }
}

/// A full smoothing of every crossing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmoothedState {
    pub vertex: Vec<u8>,
    /// Circles as sets of arc labels; free loops appear as empty sets.
    pub circles: Vec<Vec<Arc>>,
}

impl SmoothedState {
    pub fn circle_count(&self) -> usize {
        self.circles.len()
    }
}

/// Result of the orientation pass over unoriented crossings.
struct Oriented {
    crossings: Vec<[Arc; 4]>,
    signs: Vec<i8>,
    components: usize,
    /// Component traversals as `(crossing, entry slot)` lists.
    traversals: Vec<Vec<(usize, usize)>>,
}

fn occurrences(crossings: &[[Arc; 4]]) -> Result<BTreeMap<Arc, Vec<(usize, usize)>>, DiagramError> {
    let mut occ: BTreeMap<Arc, Vec<(usize, usize)>> = BTreeMap::new();
    for (c, x) in crossings.iter().enumerate() {
        for (s, &a) in x.iter().enumerate() {
            occ.entry(a).or_default().push((c, s));
        }
    }
    for (&label, v) in &occ {
        if v.len() != 2 {
            return Err(DiagramError::ArcMultiplicity { label, count: v.len() });
        }
    }
    Ok(occ)
}

fn other(occ: &BTreeMap<Arc, Vec<(usize, usize)>>, label: Arc, here: (usize, usize)) -> (usize, usize) {
    let v = &occ[&label];
    if v[0] == here {
        v[1]
    } else {
        v[0]
    }
}

/// Orients every component. Components that pass under somewhere are
/// oriented to enter the first such crossing at its slot 0; over-only
/// components follow increasing labels. Tuples are then rotated so that
/// slot 0 is the incoming under-strand.
fn orient(crossings: &[[Arc; 4]]) -> Result<Oriented, DiagramError> {
    let occ = occurrences(crossings)?;
    let n = crossings.len();
    let mut entry = vec![[false; 4]; n];
    let mut seen = vec![[false; 4]; n];
    let mut traversals = Vec::new();
    let walk = |start: (usize, usize), entry: &mut Vec<[bool; 4]>, seen: &mut Vec<[bool; 4]>| {
        let mut trav = Vec::new();
        let mut cur = start;
        loop {
            let (c, s) = cur;
            entry[c][s] = true;
            seen[c][s] = true;
            let out = (s + 2) % 4;
            seen[c][out] = true;
            trav.push(cur);
            cur = other(&occ, crossings[c][out], (c, out));
            if cur == start {
                break;
            }
        }
        trav
    };
    for c in 0..n {
        if !seen[c][0] {
            traversals.push(walk((c, 0), &mut entry, &mut seen));
        }
    }
    for c in 0..n {
        for s in [1, 3] {
            if !seen[c][s] {
                let (j, l) = (crossings[c][1], crossings[c][3]);
                let up = j == l.wrapping_add(1) || l > j.wrapping_add(1);
                let start = if up { (c, 3) } else { (c, 1) };
                traversals.push(walk(start, &mut entry, &mut seen));
            }
        }
    }
    let mut out = Vec::with_capacity(n);
    let mut signs = Vec::with_capacity(n);
    let mut rotation = vec![0usize; n];
    for c in 0..n {
        let x = crossings[c];
        let (y, r) = if entry[c][0] { (x, 0) } else { ([x[2], x[3], x[0], x[1]], 2) };
        rotation[c] = r;
        let over_in = if entry[c][(3 + r) % 4] { 3 } else { 1 };
        out.push(y);
        signs.push(if over_in == 3 { 1 } else { -1 });
    }
    for t in &mut traversals {
        for (c, s) in t.iter_mut() {
            *s = (*s + 4 - rotation[*c]) % 4;
        }
    }
    Ok(Oriented { crossings: out, signs, components: traversals.len(), traversals })
}

impl PlanarDiagram {
    /// Builds and orients a diagram from crossing tuples. The tuples must
    /// list arcs counterclockwise with the under-strand in slots 0 and 2;
    /// orientation is recovered from the slot-0 convention where it is
    /// consistent and reconstructed otherwise.
    pub fn from_crossings(crossings: Vec<[Arc; 4]>, free_loops: usize) -> Result<Self, DiagramError> {
        if crossings.is_empty() && free_loops == 0 {
            return Err(DiagramError::Empty);
        }
        let o = orient(&crossings)?;
        Ok(PlanarDiagram {
            crossings: o.crossings,
            signs: o.signs,
            free_loops,
            components: o.components + free_loops,
            basepoint: None,
            band_site: None,
        })
    }

    /// The crossingless diagram of the unknot.
    pub fn unknot() -> Self {
        Self::unlink(1)
    }

    /// `k` disjoint crossingless circles.
    pub fn unlink(k: usize) -> Self {
        assert!(k > 0, "unlink needs at least one component");
        PlanarDiagram { crossings: Vec::new(), signs: Vec::new(), free_loops: k, components: k, basepoint: None, band_site: None }
    }

    pub fn with_basepoint(mut self, arc: Arc) -> Result<Self, DiagramError> {
        if !self.has_arc(arc) {
            return Err(DiagramError::UnknownArc(arc));
        }
        self.basepoint = Some(arc);
        Ok(self)
    }

    pub fn with_band_site(mut self, a: Arc, b: Arc) -> Result<Self, DiagramError> {
        for x in [a, b] {
            if !self.has_arc(x) {
                return Err(DiagramError::UnknownArc(x));
            }
        }
        if a == b {
            return Err(DiagramError::InvalidBandSite("band arcs must differ".into()));
        }
        self.band_site = Some((a, b));
        Ok(self)
    }

    pub fn crossings(&self) -> &[[Arc; 4]] {
        &self.crossings
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn sign(&self, c: usize) -> i8 {
        self.signs[c]
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn n_plus(&self) -> usize {
        self.signs.iter().filter(|&&s| s > 0).count()
    }

    pub fn n_minus(&self) -> usize {
        self.signs.iter().filter(|&&s| s < 0).count()
    }

    pub fn writhe(&self) -> i64 {
        self.signs.iter().map(|&s| s as i64).sum()
    }

    pub fn free_loops(&self) -> usize {
        self.free_loops
    }

    pub fn component_count(&self) -> usize {
        self.components
    }

    pub fn is_knot(&self) -> bool {
        self.components == 1
    }

    pub fn basepoint(&self) -> Option<Arc> {
        self.basepoint
    }

    pub fn band_site(&self) -> Option<(Arc, Arc)> {
        self.band_site
    }

    pub fn arcs(&self) -> BTreeSet<Arc> {
        self.crossings.iter().flatten().copied().collect()
    }

    pub fn has_arc(&self, a: Arc) -> bool {
        self.crossings.iter().any(|x| x.contains(&a))
    }

    /// Number of times each arc label occurs; always 2 for a valid diagram.
    pub fn arc_multiplicities(&self) -> BTreeMap<Arc, usize> {
        let mut m = BTreeMap::new();
        for &a in self.crossings.iter().flatten() {
            *m.entry(a).or_insert(0) += 1;
        }
        m
    }

    fn check_index(&self, c: usize) -> Result<(), DiagramError> {
        if c >= self.crossings.len() {
            Err(DiagramError::IndexOutOfRange { index: c, len: self.crossings.len() })
        } else {
            Ok(())
        }
    }

    /// Component traversals as `(crossing, entry slot)` sequences.
    pub fn traversals(&self) -> Vec<Vec<(usize, usize)>> {
        orient(&self.crossings).map(|o| o.traversals).unwrap_or_default()
    }

    /// Replaces crossing `c` by its smoothing. Joined arcs take the smaller
    /// label; closed-off circles become free loops.
    pub fn resolve(&self, c: usize, choice: Smoothing) -> Result<PlanarDiagram, DiagramError> {
        self.check_index(c)?;
        let x = self.crossings[c];
        let mut rep: BTreeMap<Arc, Arc> = BTreeMap::new();
        fn find(rep: &BTreeMap<Arc, Arc>, mut a: Arc) -> Arc {
            while let Some(&p) = rep.get(&a) {
                if p == a {
                    break;
                }
                a = p;
            }
            a
        }
        for (s, t) in choice.pairs() {
            let (ra, rb) = (find(&rep, x[s]), find(&rep, x[t]));
            if ra != rb {
                let (lo, hi) = (ra.min(rb), ra.max(rb));
                rep.insert(hi, lo);
            }
        }
        let rest: Vec<[Arc; 4]> =
            self.crossings.iter().enumerate().filter(|&(k, _)| k != c).map(|(_, y)| y.map(|a| find(&rep, a))).collect();
        let remaining: BTreeSet<Arc> = rest.iter().flatten().copied().collect();
        let classes: BTreeSet<Arc> = x.iter().map(|&a| find(&rep, a)).collect();
        let new_loops = classes.iter().filter(|r| !remaining.contains(r)).count();
        let free_loops = self.free_loops + new_loops;
        let mut d =
            if rest.is_empty() { PlanarDiagram::unlink(free_loops) } else { PlanarDiagram::from_crossings(rest, free_loops)? };
        d.basepoint = self.basepoint.map(|a| find(&rep, a)).filter(|&a| d.has_arc(a));
        d.band_site =
            self.band_site.map(|(a, b)| (find(&rep, a), find(&rep, b))).filter(|&(a, b)| a != b && d.has_arc(a) && d.has_arc(b));
        Ok(d)
    }

    /// The mirror image: every crossing switched, labels unchanged.
    pub fn mirror(&self) -> PlanarDiagram {
        let crossings = self
            .crossings
            .iter()
            .zip(&self.signs)
            .map(|(&[i, j, k, l], &s)| if s > 0 { [l, i, j, k] } else { [j, k, l, i] })
            .collect();
        PlanarDiagram { crossings, signs: self.signs.iter().map(|s| -s).collect(), ..self.clone() }
    }

    /// `(D, D_0, D_1)` at a positive crossing.
    pub fn skein_triple(&self, c: usize) -> Result<SkeinTriple, DiagramError> {
        self.check_index(c)?;
        if self.signs[c] < 0 {
            return Err(DiagramError::NotPositive(c));
        }
        Ok(SkeinTriple {
            d: self.clone(),
            d0: self.resolve(c, Smoothing::Zero)?,
            d1: self.resolve(c, Smoothing::One)?,
            crossing: c,
        })
    }

    /// Smooths every crossing according to `vertex` (bit `c` for crossing
    /// `c`) and returns the resulting circles.
    pub fn smoothing(&self, vertex: &[u8]) -> SmoothedState {
        assert_eq!(vertex.len(), self.crossings.len());
        let labels: Vec<Arc> = self.arcs().into_iter().collect();
        let index: BTreeMap<Arc, usize> = labels.iter().enumerate().map(|(k, &a)| (a, k)).collect();
        let mut parent: Vec<usize> = (0..labels.len()).collect();
        fn root(p: &mut [usize], mut a: usize) -> usize {
            while p[a] != a {
                p[a] = p[p[a]];
                a = p[a];
            }
            a
        }
        for (x, &v) in self.crossings.iter().zip(vertex) {
            for (s, t) in Smoothing::from_bit(v).pairs() {
                let (a, b) = (root(&mut parent, index[&x[s]]), root(&mut parent, index[&x[t]]));
                parent[a] = b;
            }
        }
        let mut circles: BTreeMap<usize, Vec<Arc>> = BTreeMap::new();
        for (k, &a) in labels.iter().enumerate() {
            let r = root(&mut parent, k);
            circles.entry(r).or_default().push(a);
        }
        let mut circles: Vec<Vec<Arc>> = circles.into_values().collect();
        circles.extend(std::iter::repeat(Vec::new()).take(self.free_loops));
        SmoothedState { vertex: vertex.to_vec(), circles }
    }

    /// Inserts a Reidemeister I kink of the given sign on arc `a`.
    pub fn add_kink(&self, a: Arc, positive: bool) -> Result<PlanarDiagram, DiagramError> {
        if self.crossings.is_empty() {
            let x = if positive { [1, 1, 2, 2] } else { [1, 2, 2, 1] };
            let mut d = PlanarDiagram::from_crossings(vec![x], self.free_loops - 1)?;
            d.basepoint = self.basepoint.map(|_| 1);
            return Ok(d);
        }
        let o = orient(&self.crossings)?;
        let mut entry_pos = None;
        for t in &o.traversals {
            for &(c, s) in t {
                if self.crossings[c][s] == a {
                    entry_pos = Some((c, s));
                }
            }
        }
        let (c2, s2) = entry_pos.ok_or(DiagramError::UnknownArc(a))?;
        let fresh = self.arcs().last().copied().unwrap_or(0);
        let (a2, m) = (fresh + 1, fresh + 2);
        let mut crossings = self.crossings.clone();
        crossings[c2][s2] = a2;
        crossings.push(if positive { [a, a2, m, m] } else { [a, m, m, a2] });
        let mut d = PlanarDiagram::from_crossings(crossings, self.free_loops)?;
        d.basepoint = self.basepoint;
        d.band_site = self.band_site;
        Ok(d)
    }

    /// Relabels arcs `1, 2, ...` along each component in traversal order.
    /// Returns the diagram and the old-to-new label map.
    pub fn relabeled(&self) -> (PlanarDiagram, BTreeMap<Arc, Arc>) {
        let o = orient(&self.crossings).expect("valid diagram");
        let mut map = BTreeMap::new();
        let mut next = 1;
        for t in &o.traversals {
            for &(c, s) in t {
                map.entry(o.crossings[c][s]).or_insert_with(|| {
                    next += 1;
                    next - 1
                });
            }
        }
        let crossings = o.crossings.iter().map(|x| x.map(|a| map[&a])).collect();
        let d = PlanarDiagram {
            crossings,
            signs: o.signs,
            free_loops: self.free_loops,
            components: self.components,
            basepoint: self.basepoint.map(|a| map[&a]),
            band_site: self.band_site.map(|(a, b)| (map[&a], map[&b])),
        };
        (d, map)
    }

    /// `PD[X[...],...]` text.
    pub fn to_pd_string(&self) -> String {
        let xs: Vec<String> = self.crossings.iter().map(|x| format!("X[{},{},{},{}]", x[0], x[1], x[2], x[3])).collect();
        format!("PD[{}]", xs.join(","))
    }

    /// JSON fixture form.
    pub fn to_json(&self) -> serde_json::Value {
        let mut v = serde_json::json!({ "pd": self.crossings });
        if let Some(b) = self.basepoint {
            v["basepoint"] = b.into();
        }
        if let Some((a, b)) = self.band_site {
            v["band_site"] = serde_json::json!([a, b]);
        }
        if self.free_loops > 0 {
            v["free_loops"] = self.free_loops.into();
        }
        v
    }
}

impl fmt::Display for PlanarDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_pd_string())?;
        if self.free_loops > 0 {
            write!(f, " + {} free loop(s)", self.free_loops)?;
        }
        Ok(())
    }
}

/// A diagram together with both smoothings at one positive crossing.
#[derive(Clone, Debug)]
pub struct SkeinTriple {
    pub d: PlanarDiagram,
    pub d0: PlanarDiagram,
    pub d1: PlanarDiagram,
    pub crossing: usize,
}

impl SkeinTriple {
    /// `(n_+, n_-)` of `D`, `D_0`, `D_1`.
    pub fn crossing_counts(&self) -> [(usize, usize); 3] {
        [&self.d, &self.d0, &self.d1].map(|x| (x.n_plus(), x.n_minus()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trefoil() -> PlanarDiagram {
        parse_pd("PD[X[3,1,4,6],X[1,5,2,4],X[5,3,6,2]]").unwrap()
    }

    #[test]
    fn hopf_link_has_two_components() {
        let d = parse_pd("PD[X[1,3,2,4],X[3,1,4,2]]").unwrap();
        assert_eq!(d.component_count(), 2);
        assert_eq!(d.crossing_count(), 2);
    }

    #[test]
    fn trefoil_signs() {
        let d = trefoil();
        assert!(d.is_knot());
        assert_eq!((d.n_plus(), d.n_minus()), (3, 0));
        let m = d.mirror();
        assert_eq!((m.n_plus(), m.n_minus()), (0, 3));
        assert_eq!(m.mirror(), d);
    }

    #[test]
    fn resolving_trefoil() {
        let d = trefoil();
        for c in 0..3 {
            let h = d.resolve(c, Smoothing::Zero).unwrap();
            assert_eq!(h.crossing_count(), 2);
            assert_eq!(h.component_count(), 2);
            let u = d.resolve(c, Smoothing::One).unwrap();
            assert_eq!(u.component_count(), 1);
        }
        assert!(d.resolve(3, Smoothing::Zero).is_err());
    }

    #[test]
    fn kinks() {
        let p = parse_pd("PD[X[1,1,2,2]]").unwrap();
        assert_eq!(p.signs(), &[1]);
        let n = parse_pd("PD[X[1,2,2,1]]").unwrap();
        assert_eq!(n.signs(), &[-1]);
        for d in [p, n] {
            let r: Vec<usize> =
                [Smoothing::Zero, Smoothing::One].iter().map(|&s| d.resolve(0, s).unwrap().free_loops()).collect();
            let mut r = r;
            r.sort();
            assert_eq!(r, vec![1, 2]);
        }
        let t = trefoil();
        let k = t.add_kink(4, true).unwrap();
        assert_eq!((k.n_plus(), k.n_minus()), (4, 0));
        assert!(k.is_knot());
        let k = t.add_kink(4, false).unwrap();
        assert_eq!((k.n_plus(), k.n_minus()), (3, 1));
    }

    #[test]
    fn circle_counts_change_by_one() {
        let d = trefoil();
        let base = d.smoothing(&[0, 0, 0]).circle_count();
        for c in 0..3 {
            let mut v = vec![0; 3];
            v[c] = 1;
            let n = d.smoothing(&v).circle_count();
            assert_eq!((n as i64 - base as i64).abs(), 1);
        }
    }

    #[test]
    fn relabel_is_consecutive() {
        let d = parse_pd("PD[X[10,30,20,40],X[30,10,40,20]]").unwrap();
        let (r, _) = d.relabeled();
        assert_eq!(r.arcs().into_iter().collect::<Vec<_>>(), vec![1, 2, 3, 4]);
        assert_eq!(r.signs(), d.signs());
    }
}
