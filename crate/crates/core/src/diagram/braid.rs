//! Closures of braid words.

use super::{Arc, DiagramError, PlanarDiagram};

/// Closure of a braid on `strands` strands. Letter `k > 0` is `σ_k`, a
/// positive crossing of strands `k` and `k + 1` (1-based); `-k` is its
/// inverse. Strands that no letter touches become free loops.
pub fn braid_closure(word: &[i32], strands: usize) -> Result<PlanarDiagram, DiagramError> {
    if strands == 0 {
        return Err(DiagramError::Empty);
    }
    if let Some(&bad) = word.iter().find(|&&l| l == 0 || l.unsigned_abs() as usize >= strands) {
        return Err(DiagramError::Syntax(format!("braid letter {bad} out of range for {strands} strands")));
    }
    // arcs run upward; `top[p]` is the arc currently leaving position p
    let mut top: Vec<Arc> = (1..=strands as Arc).collect();
    let mut next = strands as Arc + 1;
    let mut touched = vec![false; strands];
    let mut crossings = Vec::with_capacity(word.len());
    for &l in word {
        let p = l.unsigned_abs() as usize - 1;
        let (a, b) = (top[p], top[p + 1]);
        let (c, d) = (next, next + 1);
        next += 2;
        // a runs bottom-left to top-right, b bottom-right to top-left
        crossings.push(if l > 0 { [b, d, c, a] } else { [a, b, d, c] });
        top[p] = c;
        top[p + 1] = d;
        touched[p] = true;
        touched[p + 1] = true;
    }
    // close up: the arc leaving the top at p is the one entering at p
    let close = |x: Arc| match top.iter().position(|&t| t == x) {
        Some(p) => p as Arc + 1,
        None => x,
    };
    let crossings: Vec<[Arc; 4]> = crossings.into_iter().map(|x| x.map(close)).collect();
    let free = touched.iter().filter(|&&t| !t).count();
    if crossings.is_empty() {
        return Ok(PlanarDiagram::unlink(free));
    }
    Ok(PlanarDiagram::from_crossings(crossings, free)?.relabeled().0)
}
