//! The full cube of resolutions, used as an oracle for the scanner.

use std::collections::BTreeMap;

use super::SmallComplex;
use crate::algebra::Field;
use crate::diagram::{Arc, PlanarDiagram};

/// Unnormalized cube complex. Generators are enumerated vertex by vertex;
/// circle labellings are bitmasks with bit `k` set when circle `k` carries
/// `x`. With `reduced`, the circle through `basepoint` is fixed to `x` and
/// q is raised by one. With `lee`, `x^2 = 1`.
pub fn cube_complex<F: Field>(d: &PlanarDiagram, reduced: Option<Arc>, lee: bool) -> SmallComplex<F> {
    let n = d.crossing_count();
    assert!(n < 24, "naive cube is limited to small diagrams");
    let t = if lee { F::one() } else { F::zero() };
    let states: Vec<(Vec<u8>, Vec<usize>, usize)> = (0..1u32 << n)
        .map(|v| {
            let bits: Vec<u8> = (0..n).map(|c| (v >> c & 1) as u8).collect();
            let st = d.smoothing(&bits);
            let mut of_arc = vec![usize::MAX; 0];
            let max = d.arcs().into_iter().max().unwrap_or(0) as usize;
            of_arc.resize(max + 1, usize::MAX);
            for (k, circ) in st.circles.iter().enumerate() {
                for &a in circ {
                    of_arc[a as usize] = k;
                }
            }
            (bits, of_arc, st.circle_count())
        })
        .collect();
    let mut gens = Vec::new();
    let mut index: BTreeMap<(u32, u64), usize> = BTreeMap::new();
    let fixed = |v: usize| reduced.map(|a| states[v].1[a as usize]);
    for (v, (bits, _, k)) in states.iter().enumerate() {
        let weight: i32 = bits.iter().map(|&b| i32::from(b)).sum();
        for lab in 0..1u64 << k {
            if let Some(p) = fixed(v) {
                if lab >> p & 1 == 0 {
                    continue;
                }
            }
            let xs = lab.count_ones() as i32;
            let q = *k as i32 - 2 * xs + weight + i32::from(reduced.is_some());
            index.insert((v as u32, lab), gens.len());
            gens.push((weight, q));
        }
    }
    let mut entries = Vec::new();
    for (v, (bits, of_arc, k)) in states.iter().enumerate() {
        for c in 0..n {
            if bits[c] == 1 {
                continue;
            }
            let w = v | 1 << c;
            let (_, of_arc2, k2) = &states[w];
            let before = bits[..c].iter().filter(|&&b| b == 1).count();
            let sign = if before % 2 == 0 { F::one() } else { F::one().neg() };
            // circle correspondence away from the crossing
            let x = d.crossings()[c];
            let touched: Vec<usize> = dedup(x.iter().map(|&a| of_arc[a as usize]));
            let touched2: Vec<usize> = dedup(x.iter().map(|&a| of_arc2[a as usize]));
            let mut map = vec![usize::MAX; *k];
            for (a, &circ) in of_arc.iter().enumerate() {
                if circ != usize::MAX && !touched.contains(&circ) {
                    map[circ] = of_arc2[a];
                }
            }
            let free = d.free_loops();
            for f in 0..free {
                map[k - free + f] = k2 - free + f;
            }
            for lab in 0..1u64 << k {
                let Some(&src) = index.get(&(v as u32, lab)) else { continue };
                let mut rest = 0u64;
                for (circ, &m) in map.iter().enumerate() {
                    if m != usize::MAX && lab >> circ & 1 == 1 {
                        rest |= 1 << m;
                    }
                }
                let mut add = |tl: u64, coef: F| {
                    if let Some(&tgt) = index.get(&(w as u32, tl)) {
                        entries.push((src, tgt, coef));
                    }
                };
                if touched.len() == 2 {
                    let (a, b) = (lab >> touched[0] & 1, lab >> touched[1] & 1);
                    let out = 1u64 << touched2[0];
                    match a + b {
                        0 => add(rest, sign.clone()),
                        1 => add(rest | out, sign.clone()),
                        _ => add(rest, sign.mul(&t)),
                    }
                } else {
                    let (p, q) = (1u64 << touched2[0], 1u64 << touched2[1]);
                    if lab >> touched[0] & 1 == 0 {
                        add(rest | q, sign.clone());
                        add(rest | p, sign.clone());
                    } else {
                        add(rest | p | q, sign.clone());
                        add(rest, sign.mul(&t));
                    }
                }
            }
        }
    }
    entries.retain(|e| !e.2.is_zero());
    SmallComplex { gens, entries }
}

fn dedup(it: impl Iterator<Item = usize>) -> Vec<usize> {
    let mut v: Vec<usize> = it.collect();
    v.sort_unstable();
    v.dedup();
    v
}
