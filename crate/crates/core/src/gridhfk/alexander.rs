//! Alexander polynomial from the grid matrix, used as an independent check
//! on the Euler characteristic of grid homology.

use itertools::Itertools;

use super::grid::GridDiagram;
use crate::algebra::LaurentPoly;

/// Winding number of the grid projection around lattice point `(i, j)`.
fn winding(g: &GridDiagram, i: usize, j: usize) -> i32 {
    (i..g.size).filter(|&c| g.o[c].min(g.x[c]) < j && j <= g.o[c].max(g.x[c])).map(|c| if g.o[c] > g.x[c] { 1 } else { -1 }).sum()
}

/// `det(t^{-a(i,j)}) = ± t^k (1 − t)^{g−1} Δ(t)`. Returns the symmetrized
/// `Δ` with `Δ(1) = 1`, or `None` for links and degenerate grids.
pub fn alexander_polynomial(g: &GridDiagram) -> Option<LaurentPoly> {
    if g.components() != 1 {
        return None;
    }
    let n = g.size;
    let w: Vec<Vec<i32>> = (0..n).map(|i| (0..n).map(|j| -winding(g, i, j)).collect()).collect();
    let mut det = LaurentPoly::zero();
    for perm in (0..n).permutations(n) {
        let mut inversions = 0;
        for a in 0..n {
            for b in a + 1..n {
                if perm[a] > perm[b] {
                    inversions += 1;
                }
            }
        }
        let e: i32 = (0..n).map(|i| w[i][perm[i]]).sum();
        det.add_term(e, if inversions % 2 == 0 { 1 } else { -1 });
    }
    let one_minus_t = LaurentPoly::from_terms([(0, 1), (1, -1)]);
    let mut d = det;
    for _ in 1..n {
        d = d.div_exact(&one_minus_t)?;
    }
    let (lo, hi) = (d.min_exp()?, d.max_exp()?);
    if (lo + hi) % 2 != 0 {
        return None;
    }
    let d = d.shift(-(lo + hi) / 2);
    let at_one: i64 = d.terms().map(|(_, c)| c).sum();
    match at_one {
        1 => Some(d),
        -1 => Some(d.scale(-1)),
        _ => None,
    }
}
