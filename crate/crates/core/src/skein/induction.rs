//! Closed forms for `Kh(K_n)` and `Kh(K_nᵗ)`, and the inductive step that
//! derives one from the previous via the skein sequence and Lee's theorem.

use std::collections::BTreeMap;

use crate::algebra::BigradedDims;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    /// `K_n`, twisted from `K_0`.
    K,
    /// `K_nᵗ`, twisted from the mutant `K_0ᵗ`.
    Tau,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::K => "K",
            Family::Tau => "K^tau",
        }
    }
}

// (i, q) = (n + a, 2n + b) for each entry (a, b); two entries at i = 0 do
// not move with n.
const K_TERMS: &[(i32, i32)] = &[
    (-7, -13),
    (-6, -9),
    (-4, -7),
    (-3, -7),
    (-3, -3),
    (-2, -5),
    (-2, -3),
    (-1, -3),
    (-1, -1),
    (0, -3),
    (0, -1),
    (0, 1),
    (1, 1),
    (1, 1),
    (1, 3),
    (2, 1),
    (2, 3),
    (2, 5),
    (3, 3),
    (3, 5),
    (3, 7),
    (4, 7),
    (5, 7),
    (6, 11),
];
const TAU_TERMS: &[(i32, i32)] = &[
    (-7, -13),
    (-6, -9),
    (-5, -9),
    (-4, -9),
    (-4, -7),
    (-4, -5),
    (-3, -7),
    (-3, -5),
    (-3, -3),
    (-2, -5),
    (-2, -3),
    (-2, -3),
    (-1, -3),
    (-1, -1),
    (-1, 1),
    (0, -1),
    (0, 1),
    (1, 1),
    (1, 3),
    (2, 1),
    (2, 5),
    (3, 5),
    (5, 7),
    (6, 11),
];

/// The closed form for `Kh(K_n; Q)` or `Kh(K_nᵗ; Q)`, valid for `n ≥ 8`.
pub fn closed_form_table(family: Family, n: i32) -> BigradedDims {
    let terms = match family {
        Family::K => K_TERMS,
        Family::Tau => TAU_TERMS,
    };
    let mut b = BigradedDims::from_entries([((0, -1), 1), ((0, 1), 1)]);
    for &(a, c) in terms {
        b.add(n + a, 2 * n + c, 1);
    }
    b
}

/// A free dimension left by exactness: the number of extra copies of `Q_q`
/// in both `Kh^0` and `Kh^1`, between 0 and `max`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Parameter {
    pub name: char,
    pub q: i32,
    pub max: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LeeVerdict {
    /// Some pairing by differentials `d_r`, `r ∈ 4Z_{>0}`, leaves exactly
    /// the two expected survivors.
    Feasible,
    /// A required survivor is missing from the table.
    MissingSurvivor((i32, i32)),
    /// However the differentials are chosen, these classes survive too.
    Contradiction { unmatched: Vec<(i32, i32)> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Candidate {
    pub values: Vec<u64>,
    pub table: BigradedDims,
    pub verdict: LeeVerdict,
}

#[derive(Clone, Debug)]
pub struct InductionResult {
    pub n: i32,
    /// Rows `j ≠ 0, 1`, forced by exactness.
    pub forced: BigradedDims,
    pub parameters: Vec<Parameter>,
    pub candidates: Vec<Candidate>,
    /// The only candidate compatible with Lee's theorem, if unique.
    pub resolved: Option<BigradedDims>,
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum InductionError {
    #[error("the induction starts from n = 8; got n = {0}")]
    TooSmall(i32),
    #[error("previous table does not match the closed form for n = {n}")]
    TemplateMismatch { n: i32 },
}

/// Derives `Kh(K_n)` from `Kh(K_{n−1})` using the skein sequence with the
/// 2-component unlink, and decides the free parameters by requiring Lee's
/// spectral sequence to end at `Q_{−1} ⊕ Q_1` in degree 0.
pub fn induction_step(kh_prev: &BigradedDims, n: i32, family: Family) -> Result<InductionResult, InductionError> {
    if n < 9 {
        return Err(InductionError::TooSmall(n));
    }
    if *kh_prev != closed_form_table(family, n - 1) {
        return Err(InductionError::TemplateMismatch { n: n - 1 });
    }
    Ok(step(kh_prev, n))
}

/// The unconditional part of [`induction_step`].
fn step(kh_prev: &BigradedDims, n: i32) -> InductionResult {
    // a^j = Kh^{j−1}(K_{n−1}){2}, c^j = Kh^j(U){1}; in this coordinate
    // system the sequence is … → a^j → Kh^j(K_n) → c^j → a^{j+1} → …
    let a = kh_prev.shifted(1, 2);
    let c: BTreeMap<i32, u64> = [(-1, 1), (1, 2), (3, 1)].into_iter().collect();
    let mut forced = BigradedDims::new();
    for (i, q, d) in a.iter() {
        if i != 0 && i != 1 {
            forced.add(i, q, d);
        }
    }
    let mut parameters = Vec::new();
    let mut base = forced.clone();
    let mut qs: Vec<i32> = c.keys().copied().chain(a.row(0).into_keys()).chain(a.row(1).into_keys()).collect();
    qs.sort_unstable();
    qs.dedup();
    for q in qs {
        let (a0, a1, c0) = (a.get(0, q), a.get(1, q), c.get(&q).copied().unwrap_or(0));
        let m = a1.min(c0);
        // rank of c^0 -> a^1 is m − e, leaving e extra copies in both rows
        base.add(0, q, a0 + c0 - m);
        base.add(1, q, a1 - m);
        if m > 0 {
            parameters.push(Parameter { name: (b'a' + parameters.len() as u8) as char, q, max: m });
        }
    }
    let mut candidates = Vec::new();
    let mut values = vec![0u64; parameters.len()];
    loop {
        let mut table = base.clone();
        for (p, &v) in parameters.iter().zip(&values) {
            table.add(0, p.q, v);
            table.add(1, p.q, v);
        }
        let verdict = lee_feasibility(&table, 0);
        candidates.push(Candidate { values: values.clone(), table, verdict });
        let Some(k) = (0..values.len()).find(|&k| values[k] < parameters[k].max) else { break };
        values[k] += 1;
        values[..k].iter_mut().for_each(|v| *v = 0);
    }
    let feasible: Vec<&Candidate> = candidates.iter().filter(|c| c.verdict == LeeVerdict::Feasible).collect();
    let resolved = (feasible.len() == 1).then(|| feasible[0].table.clone());
    InductionResult { n, forced, parameters, candidates, resolved }
}

/// Whether `e1` can be the `E_1` page of a spectral sequence whose `d_r`
/// maps `(p, q)` to `(p + 1, q + r)` with `r` a positive multiple of 4 and
/// whose `E_∞` is `Q_{s−1} ⊕ Q_{s+1}` in degree 0.
pub fn lee_feasibility(e1: &BigradedDims, s: i32) -> LeeVerdict {
    let mut rest = e1.clone();
    for q in [s - 1, s + 1] {
        let d = rest.get(0, q);
        if d == 0 {
            return LeeVerdict::MissingSurvivor((0, q));
        }
        rest.set(0, q, d - 1);
    }
    let units: Vec<(i32, i32)> = rest.iter().flat_map(|(i, q, d)| std::iter::repeat((i, q)).take(d as usize)).collect();
    let left: Vec<usize> = (0..units.len()).filter(|&u| units[u].0.rem_euclid(2) == 0).collect();
    let adj: Vec<Vec<usize>> = left
        .iter()
        .map(|&u| {
            let (p, q) = units[u];
            (0..units.len())
                .filter(|&v| {
                    let (p2, q2) = units[v];
                    let (lo, hi) = if p2 == p + 1 {
                        ((p, q), (p2, q2))
                    } else if p2 == p - 1 {
                        ((p2, q2), (p, q))
                    } else {
                        return false;
                    };
                    let r = hi.1 - lo.1;
                    r > 0 && r % 4 == 0
                })
                .collect()
        })
        .collect();
    let mut mate: Vec<Option<usize>> = vec![None; units.len()];
    fn augment(u: usize, adj: &[Vec<usize>], left: &[usize], mate: &mut [Option<usize>], seen: &mut [bool]) -> bool {
        for &v in &adj[u] {
            if seen[v] {
                continue;
            }
            seen[v] = true;
            let free = match mate[v] {
                None => true,
                Some(w) => augment(left.iter().position(|&x| x == w).expect("left vertex"), adj, left, mate, seen),
            };
            if free {
                mate[v] = Some(left[u]);
                mate[left[u]] = Some(v);
                return true;
            }
        }
        false
    }
    for u in 0..left.len() {
        let mut seen = vec![false; units.len()];
        augment(u, &adj, &left, &mut mate, &mut seen);
    }
    let unmatched: Vec<(i32, i32)> = (0..units.len()).filter(|&u| mate[u].is_none()).map(|u| units[u]).collect();
    if unmatched.is_empty() {
        LeeVerdict::Feasible
    } else {
        LeeVerdict::Contradiction { unmatched }
    }
}
