//! Grid states, their gradings, and empty rectangles.

use itertools::Itertools;
use rustc_hash::FxHashMap;

use super::grid::GridDiagram;

/// All grid states with their `(M, A)` bigradings.
pub struct StateSpace {
    pub states: Vec<Vec<u8>>,
    pub gradings: Vec<(i32, i32)>,
    index: FxHashMap<Vec<u8>, u32>,
}

/// `#{(p, q) : p < q coordinatewise}` on doubled coordinates.
fn count_ne(ps: &[(i32, i32)], qs: &[(i32, i32)]) -> i32 {
    let mut n = 0;
    for p in ps {
        for q in qs {
            if p.0 < q.0 && p.1 < q.1 {
                n += 1;
            }
        }
    }
    n
}

fn maslov(pts: &[(i32, i32)], marks: &[(i32, i32)]) -> i32 {
    count_ne(pts, pts) - count_ne(pts, marks) - count_ne(marks, pts) + count_ne(marks, marks) + 1
}

impl StateSpace {
    pub fn new(g: &GridDiagram) -> Self {
        let n = g.size;
        let ell = g.components() as i32;
        let marks = |rows: &[usize]| -> Vec<(i32, i32)> {
            rows.iter().enumerate().map(|(c, &r)| (2 * c as i32 + 1, 2 * r as i32 + 1)).collect()
        };
        let (os, xs) = (marks(&g.o), marks(&g.x));
        let mut states = Vec::new();
        let mut gradings = Vec::new();
        let mut index = FxHashMap::default();
        for perm in (0..n as u8).permutations(n) {
            let pts: Vec<(i32, i32)> = perm.iter().enumerate().map(|(c, &r)| (2 * c as i32, 2 * r as i32)).collect();
            let mo = maslov(&pts, &os);
            let mx = maslov(&pts, &xs);
            let a2 = mo - mx - (n as i32 - ell);
            debug_assert_eq!(a2 % 2, 0);
            index.insert(perm.clone(), states.len() as u32);
            states.push(perm);
            gradings.push((mo, a2 / 2));
        }
        StateSpace { states, gradings, index }
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    /// Empty rectangles out of every state: `(source, target, #O inside)`.
    /// Rectangles containing an `X` are skipped, and so are rectangles
    /// containing an `O` when `avoid_o` is set.
    pub fn rectangles(&self, g: &GridDiagram, avoid_o: bool) -> Vec<(u32, u32, u32)> {
        let n = g.size;
        // cyclic half-open interval [a, b)
        let in_range = |v: usize, a: usize, b: usize| -> bool { (v + n - a) % n < (b + n - a) % n };
        let in_open = |v: usize, a: usize, b: usize| -> bool { v != a && in_range(v, a, b) };
        let mut out = Vec::new();
        for (s, x) in self.states.iter().enumerate() {
            for i in 0..n {
                for j in 0..n {
                    if i == j {
                        continue;
                    }
                    // lower-left corner (i, x[i]), upper-right corner (j, x[j])
                    let (ri, rj) = (x[i] as usize, x[j] as usize);
                    let mut ok = true;
                    let mut os = 0;
                    let mut c = i;
                    while c != j {
                        if in_range(g.x[c], ri, rj) {
                            ok = false;
                            break;
                        }
                        if in_range(g.o[c], ri, rj) {
                            if avoid_o {
                                ok = false;
                                break;
                            }
                            os += 1;
                        }
                        if c != i && in_open(x[c] as usize, ri, rj) {
                            ok = false;
                            break;
                        }
                        c = (c + 1) % n;
                    }
                    if !ok {
                        continue;
                    }
                    let mut y = x.clone();
                    y.swap(i, j);
                    out.push((s as u32, self.index[&y], os));
                }
            }
        }
        out
    }
}

/// Checks `∂∘∂ = 0` over `F2[U]`: for every source, every target, and every
/// total `U`-power, the number of two-step rectangle paths is even.
pub fn d_squared_vanishes(space: &StateSpace, rects: &[(u32, u32, u32)]) -> bool {
    let mut out: Vec<Vec<(u32, u32)>> = vec![Vec::new(); space.len()];
    for &(s, t, k) in rects {
        out[s as usize].push((t, k));
    }
    let mut counts: FxHashMap<(u32, u32), u32> = FxHashMap::default();
    for first in &out {
        counts.clear();
        for &(mid, k1) in first {
            for &(t, k2) in &out[mid as usize] {
                *counts.entry((t, k1 + k2)).or_insert(0) += 1;
            }
        }
        if counts.values().any(|c| c % 2 == 1) {
            return false;
        }
    }
    true
}
