//! Tangle-scanning computation of the Khovanov complex.
//!
//! The knot is cut open at its basepoint arc and crossings are added one at
//! a time. The running complex lives over crossingless matchings of the
//! current tangle boundary; after each crossing, closed loops are removed
//! by delooping and every isomorphism entry is cancelled by Gaussian
//! elimination. What remains at the end is a small complex over the
//! one-strand tangle, whose entries are `a + b·x`.

use rustc_hash::{FxHashMap, FxHashSet};

use super::cobordism::{add_term, circles, degree, evaluate, Composition, MatchingTable, Mor, Surface, SurfaceBuilder, IDENTITY};
use crate::algebra::Field;
use crate::diagram::{Arc, PlanarDiagram};

/// Order in which crossings are added to the tangle.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum CrossingOrder {
    /// Diagram order.
    #[default]
    Input,
    /// Next crossing sharing the most arcs with the current boundary.
    Greedy,
}

#[derive(Clone, Copy, Debug)]
struct Obj {
    h: i32,
    q: i32,
    m: u32,
}

struct Complex<F: Field> {
    objs: Vec<Obj>,
    alive: Vec<bool>,
    out: Vec<FxHashMap<u32, Mor<F>>>,
    inc: Vec<FxHashSet<u32>>,
}

impl<F: Field> Complex<F> {
    fn new() -> Self {
        Complex { objs: Vec::new(), alive: Vec::new(), out: Vec::new(), inc: Vec::new() }
    }

    fn push(&mut self, o: Obj) -> u32 {
        self.objs.push(o);
        self.alive.push(true);
        self.out.push(FxHashMap::default());
        self.inc.push(FxHashSet::default());
        (self.objs.len() - 1) as u32
    }

    fn add(&mut self, src: u32, tgt: u32, mask: u64, coef: F) {
        if coef.is_zero() {
            return;
        }
        let mor = self.out[src as usize].entry(tgt).or_default();
        add_term(mor, mask, coef);
        if mor.is_empty() {
            self.out[src as usize].remove(&tgt);
            self.inc[tgt as usize].remove(&src);
        } else {
            self.inc[tgt as usize].insert(src);
        }
    }

    fn remove(&mut self, g: u32) {
        for z in std::mem::take(&mut self.inc[g as usize]) {
            self.out[z as usize].remove(&g);
        }
        for (w, _) in std::mem::take(&mut self.out[g as usize]) {
            self.inc[w as usize].remove(&g);
        }
        self.alive[g as usize] = false;
    }

    fn live(&self) -> impl Iterator<Item = u32> + '_ {
        (0..self.objs.len() as u32).filter(|&g| self.alive[g as usize])
    }

    fn eliminate(
        &mut self,
        a: u32,
        b: u32,
        table: &MatchingTable,
        cache: &mut FxHashMap<(u32, u32, u32), Composition>,
        lee: bool,
    ) {
        let phi = &self.out[a as usize][&b];
        debug_assert!(phi.len() == 1 && phi[0].0 == IDENTITY, "pivot must be a multiple of the identity");
        let scale = phi[0].1.inv().expect("unit pivot").neg();
        let mb = self.objs[b as usize].m;
        let sources: Vec<(u32, Mor<F>)> =
            self.inc[b as usize].iter().filter(|&&z| z != a).map(|&z| (z, self.out[z as usize][&b].clone())).collect();
        let targets: Vec<(u32, Mor<F>)> =
            self.out[a as usize].iter().filter(|(w, _)| **w != b).map(|(w, m)| (*w, m.clone())).collect();
        for (z, delta) in &sources {
            let mz = self.objs[*z as usize].m;
            for (w, gamma) in &targets {
                let mw = self.objs[*w as usize].m;
                let comp =
                    cache.entry((mz, mb, mw)).or_insert_with(|| Composition::new(table.get(mz), table.get(mb), table.get(mw)));
                let mut acc = Vec::new();
                comp.compose_into(delta, gamma, &scale, lee, &mut acc);
                for (mask, v) in acc {
                    self.add(*z, *w, mask, v);
                }
            }
        }
        self.remove(a);
        self.remove(b);
    }

    /// Cancels every entry between equal matchings in equal quantum degree;
    /// such entries are invertible multiples of the identity.
    fn eliminate_isomorphisms(&mut self, table: &MatchingTable, lee: bool) {
        let mut cache = FxHashMap::default();
        loop {
            let mut cands: Vec<(usize, u32, u32)> = Vec::new();
            for a in self.live() {
                let oa = self.objs[a as usize];
                for (&b, mor) in &self.out[a as usize] {
                    let ob = self.objs[b as usize];
                    if oa.m == ob.m && oa.q == ob.q && mor.len() == 1 && mor[0].0 == IDENTITY {
                        let cost = (self.inc[b as usize].len() - 1) * (self.out[a as usize].len() - 1);
                        cands.push((cost, a, b));
                    }
                }
            }
            if cands.is_empty() {
                return;
            }
            cands.sort_unstable();
            let mut touched: FxHashSet<u32> = FxHashSet::default();
            for (_, a, b) in cands {
                if !self.alive[a as usize] || !self.alive[b as usize] || touched.contains(&a) || touched.contains(&b) {
                    continue;
                }
                let Some(mor) = self.out[a as usize].get(&b) else { continue };
                if mor.len() != 1 || mor[0].0 != IDENTITY {
                    continue;
                }
                touched.extend(self.inc[b as usize].iter().copied());
                touched.extend(self.out[a as usize].keys().copied());
                self.eliminate(a, b, table, &mut cache, lee);
            }
        }
    }
}

/// Topology of `id_T ⊗ (crossing map)` after gluing and delooping.
struct TensorTemplate {
    surface: Surface,
    comp_t: Vec<u8>,
    comp_src_loops: Vec<u8>,
    comp_tgt_loops: Vec<u8>,
}

/// Result of gluing a tangle matching with a crossing smoothing.
#[derive(Clone)]
struct Glued {
    matching: u32,
    /// One node on each closed loop.
    loops: Vec<usize>,
}

const SMOOTHINGS: [[u8; 4]; 2] = [[1, 0, 3, 2], [3, 2, 1, 0]];

struct Gluer<'a> {
    n_t: usize,
    ident: Vec<Option<usize>>,
    new_pos: Vec<Option<usize>>,
    /// New boundary position -> node.
    node_of_pos: Vec<usize>,
    old: &'a MatchingTable,
    new: MatchingTable,
    cache: FxHashMap<(u32, usize), Glued>,
}

impl Gluer<'_> {
    fn arc_partner(&self, m: &[u8], s: usize, node: usize) -> usize {
        if node < self.n_t {
            m[node] as usize
        } else {
            self.n_t + SMOOTHINGS[s][node - self.n_t] as usize
        }
    }

    fn glue(&mut self, mid: u32, s: usize) -> Glued {
        if let Some(g) = self.cache.get(&(mid, s)) {
            return g.clone();
        }
        let m = self.old.get(mid).clone();
        let total = self.n_t + 4;
        let mut seen = vec![false; total];
        let mut matching = vec![0u8; self.node_of_pos.len()];
        for (p, &start) in self.node_of_pos.iter().enumerate() {
            if seen[start] {
                continue;
            }
            let mut cur = start;
            let end = loop {
                seen[cur] = true;
                let nxt = self.arc_partner(&m, s, cur);
                seen[nxt] = true;
                match self.ident[nxt] {
                    Some(j) => {
                        seen[j] = true;
                        cur = j;
                    }
                    None => break nxt,
                }
            };
            let q = self.new_pos[end].expect("path ends on the boundary");
            matching[p] = q as u8;
            matching[q] = p as u8;
        }
        let mut loops = Vec::new();
        for start in 0..total {
            if seen[start] {
                continue;
            }
            loops.push(start);
            let mut cur = start;
            loop {
                seen[cur] = true;
                let nxt = self.arc_partner(&m, s, cur);
                seen[nxt] = true;
                cur = self.ident[nxt].expect("closed loop");
                if cur == start {
                    break;
                }
            }
        }
        let g = Glued { matching: self.new.intern(matching), loops };
        self.cache.insert((mid, s), g.clone());
        g
    }

    fn template(&mut self, m1: u32, m2: u32, sa: usize, sb: usize) -> TensorTemplate {
        let g1 = self.glue(m1, sa);
        let g2 = self.glue(m2, sb);
        let ct = circles(self.old.get(m1), self.old.get(m2));
        let x_piece = |j: usize| -> usize {
            if sa != sb {
                0
            } else {
                usize::from(!(j == 0 || SMOOTHINGS[sa][0] as usize == j))
            }
        };
        let n_x = if sa == sb { 2 } else { 1 };
        let piece = |node: usize| -> usize {
            if node < self.n_t {
                ct.of_point[node] as usize
            } else {
                ct.count + x_piece(node - self.n_t)
            }
        };
        let mut sb_ = SurfaceBuilder::new(ct.count + n_x);
        for (u, v) in self.ident.iter().enumerate() {
            if let Some(v) = *v {
                if u < v {
                    sb_.glue(piece(u), piece(v));
                }
            }
        }
        for &l in g1.loops.iter().chain(&g2.loops) {
            sb_.cap(piece(l));
        }
        let cr = circles(self.new.get(g1.matching), self.new.get(g2.matching));
        let mut reps = vec![usize::MAX; cr.count];
        for (p, &k) in cr.of_point.iter().enumerate() {
            if reps[k as usize] == usize::MAX {
                reps[k as usize] = piece(self.node_of_pos[p]);
            }
        }
        let (surface, comp) = sb_.finish(&reps);
        TensorTemplate {
            surface,
            comp_t: comp[..ct.count].to_vec(),
            comp_src_loops: g1.loops.iter().map(|&l| comp[piece(l)]).collect(),
            comp_tgt_loops: g2.loops.iter().map(|&l| comp[piece(l)]).collect(),
        }
    }
}

fn loop_label_q(l: usize, bits: usize) -> i32 {
    l as i32 - 2 * bits.count_ones() as i32
}

struct Stage<F: Field> {
    boundary: Vec<Arc>,
    table: MatchingTable,
    cx: Complex<F>,
}

fn add_crossing<F: Field>(st: Stage<F>, x: [Arc; 4], lee: bool) -> Stage<F> {
    let n_t = st.boundary.len();
    let pos: FxHashMap<Arc, usize> = st.boundary.iter().enumerate().map(|(p, &a)| (a, p)).collect();
    let mut ident = vec![None; n_t + 4];
    for j in 0..4 {
        if let Some(&p) = pos.get(&x[j]) {
            ident[p] = Some(n_t + j);
            ident[n_t + j] = Some(p);
        } else if let Some(k) = (0..4).find(|&k| k != j && x[k] == x[j]) {
            ident[n_t + j] = Some(n_t + k);
        }
    }
    let mut new_labels: Vec<(Arc, usize)> = Vec::new();
    for node in 0..n_t + 4 {
        if ident[node].is_none() {
            let label = if node < n_t { st.boundary[node] } else { x[node - n_t] };
            new_labels.push((label, node));
        }
    }
    new_labels.sort_unstable();
    let mut new_pos = vec![None; n_t + 4];
    for (p, &(_, node)) in new_labels.iter().enumerate() {
        new_pos[node] = Some(p);
    }
    let mut g = Gluer {
        n_t,
        ident,
        new_pos,
        node_of_pos: new_labels.iter().map(|&(_, n)| n).collect(),
        old: &st.table,
        new: MatchingTable::default(),
        cache: FxHashMap::default(),
    };
    let old = &st.cx;
    let mut cx: Complex<F> = Complex::new();
    // first new object for (old object, smoothing)
    let mut base: FxHashMap<(u32, usize), (u32, usize)> = FxHashMap::default();
    for o in old.live() {
        let ob = old.objs[o as usize];
        for s in 0..2 {
            let gl = g.glue(ob.m, s);
            let l = gl.loops.len();
            let first = cx.objs.len() as u32;
            for bits in 0..1usize << l {
                cx.push(Obj { h: ob.h + s as i32, q: ob.q + s as i32 + loop_label_q(l, bits), m: gl.matching });
            }
            base.insert((o, s), (first, l));
        }
    }
    let mut templates: FxHashMap<(u32, u32, usize, usize), TensorTemplate> = FxHashMap::default();
    let emit = |cx: &mut Complex<F>, t: &TensorTemplate, mor: &Mor<F>, src: (u32, usize), tgt: (u32, usize), sign: &F| {
        let mut dots = vec![0u8; t.surface.genus.len()];
        for bs in 0..1usize << src.1 {
            for bt in 0..1usize << tgt.1 {
                for (mask, coef) in mor {
                    dots.iter_mut().for_each(|d| *d = 0);
                    for (k, &c) in t.comp_t.iter().enumerate() {
                        dots[c as usize] += (mask >> k & 1) as u8;
                    }
                    for (i, &c) in t.comp_src_loops.iter().enumerate() {
                        dots[c as usize] += (bs >> i & 1) as u8;
                    }
                    for (i, &c) in t.comp_tgt_loops.iter().enumerate() {
                        dots[c as usize] += 1 - (bt >> i & 1) as u8;
                    }
                    let c = coef.mul(sign);
                    for (m, v) in evaluate::<F>(&t.surface, &dots, lee) {
                        cx.add(src.0 + bs as u32, tgt.0 + bt as u32, m, v.mul(&c));
                    }
                }
            }
        }
    };
    let one = F::one();
    for o in old.live() {
        let ob = old.objs[o as usize];
        for (&w, mor) in &old.out[o as usize] {
            let mw = old.objs[w as usize].m;
            for s in 0..2 {
                let t = templates.entry((ob.m, mw, s, s)).or_insert_with(|| g.template(ob.m, mw, s, s));
                emit(&mut cx, t, mor, base[&(o, s)], base[&(w, s)], &one);
            }
        }
        let t = templates.entry((ob.m, ob.m, 0, 1)).or_insert_with(|| g.template(ob.m, ob.m, 0, 1));
        let sign = if ob.h % 2 == 0 { F::one() } else { F::one().neg() };
        let id: Mor<F> = vec![(IDENTITY, F::one())];
        emit(&mut cx, t, &id, base[&(o, 0)], base[&(o, 1)], &sign);
    }
    let table = g.new;
    if cfg!(debug_assertions) {
        check_degrees(&cx, &table, new_labels.len(), lee);
    }
    cx.eliminate_isomorphisms(&table, lee);
    Stage { boundary: new_labels.into_iter().map(|(a, _)| a).collect(), table, cx }
}

fn check_degrees<F: Field>(cx: &Complex<F>, table: &MatchingTable, points: usize, lee: bool) {
    for a in cx.live() {
        let oa = cx.objs[a as usize];
        for (&b, mor) in &cx.out[a as usize] {
            let ob = cx.objs[b as usize];
            assert_eq!(ob.h, oa.h + 1);
            let nc = circles(table.get(oa.m), table.get(ob.m)).count;
            for (mask, _) in mor {
                let excess = ob.q - oa.q + degree(nc, points, *mask);
                if lee {
                    assert!(excess >= 0 && excess % 4 == 0, "inhomogeneous Lee entry");
                } else {
                    assert_eq!(excess, 0, "differential must preserve q");
                }
            }
        }
    }
}

/// Final complex over the one-strand tangle: generators `(h, q)` and
/// entries `src -> tgt` equal to `a + b·x`.
pub struct ArcComplex<F: Field> {
    pub gens: Vec<(i32, i32)>,
    pub entries: Vec<(usize, usize, F, F)>,
}

fn crossing_order(crossings: &[[Arc; 4]], start: Arc, order: CrossingOrder) -> Vec<usize> {
    match order {
        CrossingOrder::Input => (0..crossings.len()).collect(),
        CrossingOrder::Greedy => {
            let mut done = vec![false; crossings.len()];
            let mut boundary: FxHashSet<Arc> = FxHashSet::default();
            let mut seq = Vec::new();
            for _ in 0..crossings.len() {
                let best = (0..crossings.len())
                    .filter(|&c| !done[c])
                    .max_by_key(|&c| {
                        let shared = crossings[c].iter().filter(|a| boundary.contains(a)).count() as i64;
                        let starts = i64::from(seq.is_empty() && crossings[c].contains(&start));
                        (starts, shared, -(c as i64))
                    })
                    .expect("crossings remain");
                done[best] = true;
                seq.push(best);
                for a in crossings[best] {
                    if !boundary.remove(&a) {
                        boundary.insert(a);
                    }
                }
            }
            seq
        }
    }
}

/// Runs the scan on a diagram with at least one crossing, cut at `cut`.
pub fn scan<F: Field>(d: &PlanarDiagram, cut: Arc, order: CrossingOrder, lee: bool) -> ArcComplex<F> {
    let mut xs: Vec<[Arc; 4]> = d.crossings().to_vec();
    assert!(!xs.is_empty(), "scan needs a crossing");
    let fresh = xs.iter().flatten().copied().max().unwrap_or(0) + 1;
    'cut: for x in xs.iter_mut().rev() {
        for a in x.iter_mut().rev() {
            if *a == cut {
                *a = fresh;
                break 'cut;
            }
        }
    }
    let mut table = MatchingTable::default();
    let empty = table.intern(Vec::new());
    let mut cx: Complex<F> = Complex::new();
    cx.push(Obj { h: 0, q: 0, m: empty });
    let mut st = Stage { boundary: Vec::new(), table, cx };
    for c in crossing_order(&xs, cut, order) {
        st = add_crossing(st, xs[c], lee);
        log::trace!("after crossing {c}: {} objects, boundary {}", st.cx.live().count(), st.boundary.len());
    }
    assert_eq!(st.boundary, vec![cut, fresh], "one-strand tangle expected");
    let live: Vec<u32> = st.cx.live().collect();
    let index: FxHashMap<u32, usize> = live.iter().enumerate().map(|(k, &g)| (g, k)).collect();
    let gens = live.iter().map(|&g| (st.cx.objs[g as usize].h, st.cx.objs[g as usize].q)).collect();
    let mut entries = Vec::new();
    for &g in &live {
        for (&w, mor) in &st.cx.out[g as usize] {
            let mut a = F::zero();
            let mut b = F::zero();
            for (mask, v) in mor {
                if *mask == 0 {
                    a = v.clone();
                } else {
                    b = v.clone();
                }
            }
            entries.push((index[&g], index[&w], a, b));
        }
    }
    entries.sort_by_key(|e| (e.0, e.1));
    ArcComplex { gens, entries }
}
