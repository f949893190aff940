//! Faces of a diagram and half-twist insertion along a band.

use super::{orient, Arc, DiagramError, PlanarDiagram};

/// A half-edge `(crossing, slot)`: the arc leaving `crossing` through `slot`.
pub type HalfEdge = (usize, usize);

/// A face, as the cycle of half-edges traversed with the face on the left.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub half_edges: Vec<HalfEdge>,
}

/// Two half-edges on a common face; a twist is inserted across that face
/// between the two arcs they start.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BandSite {
    pub a: HalfEdge,
    pub b: HalfEdge,
}

#[derive(Clone, Debug)]
pub struct FamilySpec {
    pub base: PlanarDiagram,
    pub twists: usize,
}

fn partner(d: &PlanarDiagram, (c, s): HalfEdge) -> HalfEdge {
    let label = d.crossings[c][s];
    for (c2, x) in d.crossings.iter().enumerate() {
        for (s2, &a) in x.iter().enumerate() {
            if a == label && (c2, s2) != (c, s) {
                return (c2, s2);
            }
        }
    }
    unreachable!("every arc occurs twice")
}

impl PlanarDiagram {
    /// All faces of the diagram. A connected diagram with `n > 0` crossings
    /// has `n + 2` of them.
    pub fn faces(&self) -> Vec<Face> {
        let mut seen = vec![[false; 4]; self.crossings.len()];
        let mut faces = Vec::new();
        for c in 0..self.crossings.len() {
            for s in 0..4 {
                if seen[c][s] {
                    continue;
                }
                let mut he = Vec::new();
                let mut cur = (c, s);
                while !seen[cur.0][cur.1] {
                    seen[cur.0][cur.1] = true;
                    he.push(cur);
                    let (c2, s2) = partner(self, cur);
                    cur = (c2, (s2 + 3) % 4);
                }
                faces.push(Face { half_edges: he });
            }
        }
        faces
    }

    /// True when the half-edge runs along the orientation of its strand.
    pub fn is_forward(&self, (c, s): HalfEdge) -> bool {
        match s {
            2 => true,
            0 => false,
            1 => self.signs[c] > 0,
            _ => self.signs[c] < 0,
        }
    }

    /// Resolves a pair of arc labels to a band site: the face bordering both
    /// arcs, preferring the one on the left of `a` when two faces qualify.
    pub fn band_site_for(&self, a: Arc, b: Arc) -> Result<BandSite, DiagramError> {
        let mut found = Vec::new();
        for f in self.faces() {
            let ha = f.half_edges.iter().find(|&&(c, s)| self.crossings[c][s] == a);
            let hb = f.half_edges.iter().find(|&&(c, s)| self.crossings[c][s] == b);
            if let (Some(&ha), Some(&hb)) = (ha, hb) {
                found.push(BandSite { a: ha, b: hb });
            }
        }
        found.sort_by_key(|s| !self.is_forward(s.a));
        found.into_iter().next().ok_or_else(|| DiagramError::InvalidBandSite(format!("arcs {a} and {b} share no face")))
    }

    /// The band site recorded in the diagram.
    pub fn marked_band_site(&self) -> Result<BandSite, DiagramError> {
        let (a, b) = self.band_site.ok_or(DiagramError::MissingBandSite)?;
        self.band_site_for(a, b)
    }

    fn fresh_label(&self) -> Arc {
        self.crossings.iter().flatten().copied().max().unwrap_or(0) + 1
    }
}

/// Inserts one positive crossing across the face of `site`, joining the
/// start of arc `a` to the start of arc `b`. The new crossing is appended
/// last. Returns the new diagram and the site for the next twist, which
/// stacks on the same band.
pub fn insert_twist(d: &PlanarDiagram, site: BandSite) -> Result<(PlanarDiagram, BandSite), DiagramError> {
    let faces = d.faces();
    let face = faces
        .iter()
        .find(|f| f.half_edges.contains(&site.a))
        .ok_or_else(|| DiagramError::InvalidBandSite("unknown half-edge".into()))?;
    if !face.half_edges.contains(&site.b) || site.a == site.b {
        return Err(DiagramError::InvalidBandSite("half-edges not on a common face".into()));
    }
    let (a_end, b_end) = (partner(d, site.a), partner(d, site.b));
    let a1 = d.crossings[site.a.0][site.a.1];
    let b1 = d.crossings[site.b.0][site.b.1];
    let fresh = d.fresh_label();
    let (a2, b2) = (fresh, fresh + 1);
    let mut crossings = d.crossings.clone();
    crossings[a_end.0][a_end.1] = a2;
    crossings[b_end.0][b_end.1] = b2;
    let n = crossings.len();
    // counterclockwise around the new crossing: a's start, a's end, b's start, b's end
    let t = [a1, a2, b1, b2];
    let mut chosen = None;
    for cand in [t, [a2, b1, b2, a1]] {
        let mut cs = crossings.clone();
        cs.push(cand);
        let o = orient(&cs)?;
        if o.signs[n] > 0 {
            chosen = Some(o);
            break;
        }
    }
    let o = chosen.expect("one of the two crossing choices is positive");
    let slot_of = |c: usize, label: Arc| o.crossings[c].iter().position(|&x| x == label).expect("label present");
    let next = BandSite { a: (n, slot_of(n, a2)), b: (site.b.0, slot_of(site.b.0, b1)) };
    let out = PlanarDiagram {
        crossings: o.crossings,
        signs: o.signs,
        free_loops: d.free_loops,
        components: o.components + d.free_loops,
        basepoint: d.basepoint,
        band_site: None,
    };
    Ok((out, next))
}

/// `K_n`: the base diagram with `n` positive half-twists on its marked band.
/// Crossing order is the base order followed by the twists, so for `n > 0`
/// the newest twist is the last crossing. Arcs are relabeled `1, 2, ...`
/// along the knot.
pub fn generate_family(spec: &FamilySpec) -> Result<PlanarDiagram, DiagramError> {
    let mut d = spec.base.clone();
    let mut site = d.marked_band_site()?;
    for _ in 0..spec.twists {
        let (next_d, next_site) = insert_twist(&d, site)?;
        d = next_d;
        site = next_site;
    }
    let (out, _) = d.relabeled();
    Ok(with_recorded_site(out, site))
}

/// Relabeling keeps crossing order and slots, so `site` is still valid in
/// `d`; record it as an arc pair if the pair resolves back to this face.
fn with_recorded_site(mut d: PlanarDiagram, site: BandSite) -> PlanarDiagram {
    let label = |(c, s): HalfEdge| d.crossings[c][s];
    let (la, lb) = (label(site.a), label(site.b));
    let faces = d.faces();
    let face = faces.iter().find(|f| f.half_edges.contains(&site.a)).map(|f| f.half_edges.clone()).unwrap_or_default();
    d.band_site = [(la, lb), (lb, la)]
        .into_iter()
        .find(|&(p, q)| d.band_site_for(p, q).map_or(false, |s| face.contains(&s.a) && face.contains(&s.b)));
    d
}
