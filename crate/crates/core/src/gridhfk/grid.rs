//! Grid diagrams: markings, validation, and grid moves.

use serde::{Deserialize, Serialize};

use super::GridError;

/// A `g × g` grid. Column `i` holds an `O` in row `o[i]` and an `X` in row
/// `x[i]`. Vertical segments run from `X` to `O`, horizontal ones from `O`
/// to `X`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridDiagram {
    pub size: usize,
    #[serde(rename = "O")]
    pub o: Vec<usize>,
    #[serde(rename = "X")]
    pub x: Vec<usize>,
}

fn is_permutation(p: &[usize], n: usize) -> bool {
    let mut seen = vec![false; n];
    p.len() == n && p.iter().all(|&v| v < n && !std::mem::replace(&mut seen[v], true))
}

impl GridDiagram {
    pub fn new(o: Vec<usize>, x: Vec<usize>) -> Result<Self, GridError> {
        let g = GridDiagram { size: o.len(), o, x };
        g.validate()?;
        Ok(g)
    }

    pub fn from_json(text: &str) -> Result<Self, GridError> {
        let g: GridDiagram = serde_json::from_str(text).map_err(|e| GridError::Parse(e.to_string()))?;
        g.validate()?;
        Ok(g)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({ "size": self.size, "O": self.o, "X": self.x })
    }

    fn validate(&self) -> Result<(), GridError> {
        let n = self.size;
        if n == 0 {
            return Err(GridError::Invalid("empty grid".into()));
        }
        if !is_permutation(&self.o, n) || !is_permutation(&self.x, n) {
            return Err(GridError::Invalid(format!("O and X must be permutations of 0..{n}")));
        }
        if let Some(i) = (0..n).find(|&i| self.o[i] == self.x[i]) {
            return Err(GridError::Invalid(format!("O and X share the cell in column {i}")));
        }
        Ok(())
    }

    /// Number of link components.
    pub fn components(&self) -> usize {
        let n = self.size;
        let mut col_of_o = vec![0; n];
        for (c, &r) in self.o.iter().enumerate() {
            col_of_o[r] = c;
        }
        let mut seen = vec![false; n];
        let mut count = 0;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            count += 1;
            let mut c = start;
            while !seen[c] {
                seen[c] = true;
                c = col_of_o[self.x[c]];
            }
        }
        count
    }

    /// Reflection in a vertical line, which presents the mirror link.
    pub fn mirror(&self) -> Self {
        GridDiagram { size: self.size, o: self.o.iter().rev().copied().collect(), x: self.x.iter().rev().copied().collect() }
    }

    /// Cyclic permutation of the columns by `k` places (a torus isotopy).
    pub fn rotate_columns(&self, k: usize) -> Self {
        let n = self.size;
        let f = |p: &Vec<usize>| (0..n).map(|i| p[(i + n - k % n) % n]).collect();
        GridDiagram { size: n, o: f(&self.o), x: f(&self.x) }
    }

    /// Cyclic permutation of the rows by `k` places.
    pub fn rotate_rows(&self, k: usize) -> Self {
        let n = self.size;
        GridDiagram { size: n, o: self.o.iter().map(|r| (r + k) % n).collect(), x: self.x.iter().map(|r| (r + k) % n).collect() }
    }

    /// Stabilization at the `X` of column `c`: that marking becomes a 2×2
    /// block with `X`s on one diagonal and an `O` in the new corner.
    pub fn stabilize(&self, c: usize) -> Self {
        let r = self.x[c];
        let shift = |v: usize| if v > r { v + 1 } else { v };
        let mut o = Vec::with_capacity(self.size + 1);
        let mut x = Vec::with_capacity(self.size + 1);
        for i in 0..self.size {
            o.push(shift(self.o[i]));
            x.push(if i == c { r + 1 } else { shift(self.x[i]) });
            if i == c {
                o.push(r + 1);
                x.push(r);
            }
        }
        GridDiagram { size: self.size + 1, o, x }
    }
}
