//! Crossingless matchings and dotted cobordisms between them.
//!
//! A morphism between two matchings `M1, M2` of the same boundary points
//! is a combination of basis cobordisms: one disk per circle of `M1 ∪ M2`,
//! each disk carrying at most one dot. A basis element is a bitmask over
//! those circles, numbered by their smallest boundary position.
//!
//! Gluing pieces along intervals and capping circles with disks produces a
//! surface; each connected component is then evaluated in the Frobenius
//! algebra `F[x]/(x^2 - t)` with `t` in `{0, 1}`.

use rustc_hash::FxHashMap;

use crate::algebra::Field;

/// A perfect matching of boundary positions: `partner[p]` is matched to `p`.
pub type Matching = Vec<u8>;

/// A linear combination of basis cobordisms, sorted by mask.
pub type Mor<F> = Vec<(u64, F)>;

/// Interning table for matchings of one boundary.
#[derive(Default)]
pub struct MatchingTable {
    pub list: Vec<Matching>,
    index: FxHashMap<Matching, u32>,
}

impl MatchingTable {
    pub fn intern(&mut self, m: Matching) -> u32 {
        if let Some(&id) = self.index.get(&m) {
            return id;
        }
        let id = self.list.len() as u32;
        self.index.insert(m.clone(), id);
        self.list.push(m);
        id
    }

    pub fn get(&self, id: u32) -> &Matching {
        &self.list[id as usize]
    }
}

/// Circles of `M1 ∪ M2`.
#[derive(Clone, Debug)]
pub struct Circles {
    pub count: usize,
    pub of_point: Vec<u8>,
}

pub fn circles(m1: &Matching, m2: &Matching) -> Circles {
    let n = m1.len();
    let mut of_point = vec![u8::MAX; n];
    let mut count = 0;
    for start in 0..n {
        if of_point[start] != u8::MAX {
            continue;
        }
        let mut p = start;
        loop {
            of_point[p] = count as u8;
            let q = m1[p] as usize;
            of_point[q] = count as u8;
            p = m2[q] as usize;
            if p == start {
                break;
            }
        }
        count += 1;
    }
    Circles { count, of_point }
}

/// Mask of the identity cobordism (undotted curtains).
pub const IDENTITY: u64 = 0;

/// Degree of a basis cobordism between matchings on `points` boundary points.
pub fn degree(circle_count: usize, points: usize, mask: u64) -> i32 {
    circle_count as i32 - points as i32 / 2 - 2 * mask.count_ones() as i32
}

/// Connected components of a glued surface, ready for evaluation.
#[derive(Clone, Debug, Default)]
pub struct Surface {
    pub genus: Vec<u8>,
    /// Per component: mask of result circles on its boundary.
    pub boundary: Vec<u64>,
}

/// Union-find over surface pieces with Euler characteristic bookkeeping.
pub struct SurfaceBuilder {
    parent: Vec<usize>,
    chi: Vec<i32>,
}

impl SurfaceBuilder {
    /// `pieces` disks, each of Euler characteristic 1.
    pub fn new(pieces: usize) -> Self {
        SurfaceBuilder { parent: (0..pieces).collect(), chi: vec![1; pieces] }
    }

    pub fn find(&mut self, mut a: usize) -> usize {
        while self.parent[a] != a {
            self.parent[a] = self.parent[self.parent[a]];
            a = self.parent[a];
        }
        a
    }

    /// Glues two pieces along an interval.
    pub fn glue(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
            self.chi[rb] += self.chi[ra];
        }
        self.chi[rb] -= 1;
    }

    /// Caps a closed boundary circle lying on piece `a` with a disk.
    pub fn cap(&mut self, a: usize) {
        let r = self.find(a);
        self.chi[r] += 1;
    }

    /// Finishes the surface. `result_circles[k]` is a piece touching result
    /// circle `k`. Returns the surface and the component of each piece.
    pub fn finish(mut self, result_circles: &[usize]) -> (Surface, Vec<u8>) {
        let n = self.parent.len();
        let mut comp_of_root = vec![u8::MAX; n];
        let mut comp = vec![0u8; n];
        let mut roots = Vec::new();
        for p in 0..n {
            let r = self.find(p);
            if comp_of_root[r] == u8::MAX {
                comp_of_root[r] = roots.len() as u8;
                roots.push(r);
            }
            comp[p] = comp_of_root[r];
        }
        let mut boundary = vec![0u64; roots.len()];
        for (k, &piece) in result_circles.iter().enumerate() {
            boundary[comp[piece] as usize] |= 1 << k;
        }
        let genus = roots
            .iter()
            .zip(&boundary)
            .map(|(&r, b)| {
                let g2 = 2 - b.count_ones() as i32 - self.chi[r];
                debug_assert!(g2 >= 0 && g2 % 2 == 0, "non-orientable or inconsistent surface");
                (g2 / 2) as u8
            })
            .collect();
        (Surface { genus, boundary }, comp)
    }
}

fn push_subsets<F: Field>(boundary: u64, parity: Option<u32>, exact: Option<u32>, coef: &F, out: &mut Vec<(u64, F)>) {
    let bits: Vec<u64> = (0..64).filter(|k| boundary >> k & 1 == 1).map(|k| 1u64 << k).collect();
    let b = bits.len();
    if let Some(size) = exact {
        if size as usize == b {
            out.push((boundary, coef.clone()));
        } else if size as usize + 1 == b {
            for &skip in &bits {
                out.push((boundary & !skip, coef.clone()));
            }
        } else {
            unreachable!("only b and b-1 occur");
        }
        return;
    }
    let parity = parity.expect("parity or size");
    for sub in 0u64..(1 << b) {
        if sub.count_ones() % 2 == parity {
            let mut m = 0;
            for (k, &bit) in bits.iter().enumerate() {
                if sub >> k & 1 == 1 {
                    m |= bit;
                }
            }
            out.push((m, coef.clone()));
        }
    }
}

/// Evaluates a surface with `dots[c]` dots on component `c`.
///
/// A component of genus `g` with `d` dots and `b > 0` boundary circles is
/// `Δ^{b-1}(2^g x^{g+d})`; a closed component is `ε(2^g x^{g+d})`.
pub fn evaluate<F: Field>(s: &Surface, dots: &[u8], lee: bool) -> Mor<F> {
    let mut acc: Vec<(u64, F)> = vec![(0, F::one())];
    for c in 0..s.genus.len() {
        let g = s.genus[c] as u32;
        let e = g + dots[c] as u32;
        if !lee && e >= 2 {
            return Vec::new();
        }
        let coef = F::from_i64(1 << g);
        if coef.is_zero() {
            return Vec::new();
        }
        let b = s.boundary[c];
        let nb = b.count_ones();
        let mut local = Vec::new();
        if nb == 0 {
            if e % 2 == 0 {
                return Vec::new();
            }
            local.push((0, coef));
        } else if lee {
            // Δ^{b-1}(1): |S| ≡ b-1; Δ^{b-1}(x): |S| ≡ b (mod 2)
            let parity = if e % 2 == 0 { (nb - 1) % 2 } else { nb % 2 };
            push_subsets(b, Some(parity), None, &coef, &mut local);
        } else {
            let size = if e == 0 { nb - 1 } else { nb };
            push_subsets(b, None, Some(size), &coef, &mut local);
        }
        let mut next = Vec::with_capacity(acc.len() * local.len());
        for (m1, c1) in &acc {
            for (m2, c2) in &local {
                next.push((m1 | m2, c1.mul(c2)));
            }
        }
        acc = next;
    }
    acc
}

/// Adds `coef * term` into a sorted morphism.
pub fn add_term<F: Field>(m: &mut Mor<F>, mask: u64, coef: F) {
    match m.binary_search_by_key(&mask, |e| e.0) {
        Ok(k) => {
            m[k].1.add_assign(&coef);
            if m[k].1.is_zero() {
                m.remove(k);
            }
        }
        Err(k) => {
            if !coef.is_zero() {
                m.insert(k, (mask, coef));
            }
        }
    }
}

/// Template for composing `M_z -> M_b -> M_w`.
pub struct Composition {
    surface: Surface,
    comp_a: Vec<u8>,
    comp_b: Vec<u8>,
}

impl Composition {
    pub fn new(mz: &Matching, mb: &Matching, mw: &Matching) -> Self {
        let ca = circles(mz, mb);
        let cb = circles(mb, mw);
        let cr = circles(mz, mw);
        let mut sb = SurfaceBuilder::new(ca.count + cb.count);
        for p in 0..mb.len() {
            if (mb[p] as usize) > p {
                sb.glue(ca.of_point[p] as usize, ca.count + cb.of_point[p] as usize);
            }
        }
        let mut rep = vec![usize::MAX; cr.count];
        for p in 0..mz.len() {
            let k = cr.of_point[p] as usize;
            if rep[k] == usize::MAX {
                rep[k] = ca.of_point[p] as usize;
            }
        }
        let (surface, comp) = sb.finish(&rep);
        let comp_a = comp[..ca.count].to_vec();
        let comp_b = comp[ca.count..].to_vec();
        Composition { surface, comp_a, comp_b }
    }

    /// `g ∘ f`, accumulated into `out` with factor `scale`.
    pub fn compose_into<F: Field>(&self, f: &Mor<F>, g: &Mor<F>, scale: &F, lee: bool, out: &mut Mor<F>) {
        let nc = self.surface.genus.len();
        let mut dots = vec![0u8; nc];
        for (ma, ca) in f {
            for (mb, cb) in g {
                dots.iter_mut().for_each(|d| *d = 0);
                for (k, &c) in self.comp_a.iter().enumerate() {
                    dots[c as usize] += (ma >> k & 1) as u8;
                }
                for (k, &c) in self.comp_b.iter().enumerate() {
                    dots[c as usize] += (mb >> k & 1) as u8;
                }
                let coef = ca.mul(cb).mul(scale);
                for (m, v) in evaluate::<F>(&self.surface, &dots, lee) {
                    add_term(out, m, v.mul(&coef));
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Rational;

    #[test]
    fn circles_are_numbered_by_first_point() {
        let m1 = vec![1, 0, 3, 2];
        let m2 = vec![3, 2, 1, 0];
        let c = circles(&m1, &m2);
        assert_eq!(c.count, 1);
        let c = circles(&m1, &m1);
        assert_eq!(c.count, 2);
        assert_eq!(c.of_point, vec![0, 0, 1, 1]);
    }

    #[test]
    fn identity_composes_to_identity() {
        let m = vec![1, 0, 3, 2];
        let comp = Composition::new(&m, &m, &m);
        let id: Mor<Rational> = vec![(IDENTITY, Rational::from_i64(1))];
        let mut out = Vec::new();
        comp.compose_into(&id, &id, &Rational::from_i64(1), false, &mut out);
        assert_eq!(out, id);
    }

    #[test]
    fn saddle_then_saddle_is_sum_of_dots() {
        // two saddles M1 -> M2 -> M1 give a tube: dot on either curtain
        let m1 = vec![1, 0, 3, 2];
        let m2 = vec![3, 2, 1, 0];
        let comp = Composition::new(&m1, &m2, &m1);
        let s: Mor<Rational> = vec![(0, Rational::from_i64(1))];
        let mut out = Vec::new();
        comp.compose_into(&s, &s, &Rational::from_i64(1), false, &mut out);
        assert_eq!(out, vec![(1, Rational::from_i64(1)), (2, Rational::from_i64(1))]);
        let mut lee = Vec::new();
        comp.compose_into(&s, &s, &Rational::from_i64(1), true, &mut lee);
        assert_eq!(lee, vec![(1, Rational::from_i64(1)), (2, Rational::from_i64(1))]);
    }

    #[test]
    fn closed_components() {
        let sphere = Surface { genus: vec![0], boundary: vec![0] };
        assert!(evaluate::<Rational>(&sphere, &[0], false).is_empty());
        assert_eq!(evaluate::<Rational>(&sphere, &[1], false), vec![(0, Rational::from_i64(1))]);
        assert!(evaluate::<Rational>(&sphere, &[2], true).is_empty());
        let torus = Surface { genus: vec![1], boundary: vec![0] };
        assert_eq!(evaluate::<Rational>(&torus, &[0], false), vec![(0, Rational::from_i64(2))]);
        assert_eq!(evaluate::<Rational>(&torus, &[1], true), Vec::new());
    }
}
