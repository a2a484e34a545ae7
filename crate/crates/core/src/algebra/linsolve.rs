//! Exact linear algebra over `Rat`: a dense solver for `A v = b` and a
//! sparse null-space routine used by the intertwiner ansatz.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};

use super::rat::{bit_size, Rat};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rat>,
}

impl ExactMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Rat>) -> Result<Self> {
        if rows == 0 || cols == 0 || entries.len() != rows * cols {
            return Err(Error::Dimension(format!("{rows}x{cols} matrix with {} entries", entries.len())));
        }
        Ok(ExactMatrix { rows, cols, entries })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix { rows, cols, entries: vec![Rat::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = Rat::one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rat {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rat) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j) * &v[j]).fold(Rat::zero(), |a, b| a + b))
            .collect()
    }
}

/// Affine solution set of `A v = b`.
#[derive(Clone, Debug, PartialEq)]
pub enum LinearSolution {
    Solved { particular: Vec<Rat>, null_basis: Vec<Vec<Rat>> },
    Inconsistent,
}

/// Gauss-Jordan elimination; each pivot is the candidate entry of smallest
/// bit size, which limits coefficient swell.
pub fn solve_linear_exact(a: &ExactMatrix, b: &[Rat]) -> Result<LinearSolution> {
    if b.len() != a.rows {
        return Err(Error::Dimension(format!("{} right-hand sides for {} rows", b.len(), a.rows)));
    }
    let (r, c) = (a.rows, a.cols);
    let w = c + 1;
    let mut m: Vec<Rat> = Vec::with_capacity(r * w);
    for i in 0..r {
        m.extend_from_slice(&a.entries[i * c..(i + 1) * c]);
        m.push(b[i].clone());
    }

    let mut pivot_cols = Vec::new();
    let mut row = 0;
    for col in 0..c {
        if row == r {
            break;
        }
        let Some(p) = (row..r).filter(|&i| !m[i * w + col].is_zero()).min_by_key(|&i| bit_size(&m[i * w + col]))
        else {
            continue;
        };
        if p != row {
            for j in 0..w {
                m.swap(p * w + j, row * w + j);
            }
        }
        let inv = m[row * w + col].recip();
        for j in col..w {
            m[row * w + j] = &m[row * w + j] * &inv;
        }
        for i in 0..r {
            if i == row || m[i * w + col].is_zero() {
                continue;
            }
            let f = m[i * w + col].clone();
            for j in col..w {
                if !m[row * w + j].is_zero() {
                    let t = &f * &m[row * w + j];
                    m[i * w + j] -= t;
                }
            }
        }
        pivot_cols.push(col);
        row += 1;
    }

    if (row..r).any(|i| !m[i * w + c].is_zero()) {
        return Ok(LinearSolution::Inconsistent);
    }

    let mut particular = vec![Rat::zero(); c];
    for (k, &pc) in pivot_cols.iter().enumerate() {
        particular[pc] = m[k * w + c].clone();
    }
    let is_pivot: Vec<bool> = {
        let mut v = vec![false; c];
        for &pc in &pivot_cols {
            v[pc] = true;
        }
        v
    };
    let null_basis = (0..c)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vec![Rat::zero(); c];
            v[f] = Rat::one();
            for (k, &pc) in pivot_cols.iter().enumerate() {
                v[pc] = -m[k * w + f].clone();
            }
            v
        })
        .collect();
    Ok(LinearSolution::Solved { particular, null_basis })
}

/// Sparse homogeneous system, one `(column, value)` list per equation.
#[derive(Clone, Debug, Default)]
pub struct SparseSystem {
    pub ncols: usize,
    pub rows: Vec<Vec<(usize, Rat)>>,
}

impl SparseSystem {
    pub fn new(ncols: usize) -> Self {
        SparseSystem { ncols, rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<(usize, Rat)>) {
        let row: Vec<_> = row.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        if !row.is_empty() {
            self.rows.push(row);
        }
    }

    /// Basis of `{v : A v = 0}`. Columns split into connected components
    /// (columns sharing an equation), each eliminated independently.
    pub fn nullspace(&self) -> Vec<Vec<Rat>> {
        let n = self.ncols;
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut i: usize) -> usize {
            while p[i] != i {
                p[i] = p[p[i]];
                i = p[i];
            }
            i
        }
        for row in &self.rows {
            let a = find(&mut parent, row[0].0);
            for &(j, _) in &row[1..] {
                let b = find(&mut parent, j);
                if a != b {
                    parent[b] = a;
                }
            }
        }
        let mut comp_cols: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for j in 0..n {
            let r = find(&mut parent, j);
            comp_cols.entry(r).or_default().push(j);
        }
        let mut comp_rows: HashMap<usize, Vec<&Vec<(usize, Rat)>>> = HashMap::new();
        for row in &self.rows {
            let r = find(&mut parent, row[0].0);
            comp_rows.entry(r).or_default().push(row);
        }

        let mut basis = Vec::new();
        for (root, cols) in comp_cols {
            let rows = comp_rows.remove(&root).unwrap_or_default();
            for local in component_nullspace(&cols, rows) {
                let mut v = vec![Rat::zero(); n];
                for (j, x) in local {
                    v[j] = x;
                }
                basis.push(v);
            }
        }
        basis
    }
}

type Row = Vec<(usize, Rat)>;

fn component_nullspace(cols: &[usize], mut rows: Vec<&Row>) -> Vec<Vec<(usize, Rat)>> {
    // short, small-entry rows first: they make the cheapest pivots
    rows.sort_by_key(|r| (r.len(), r.iter().map(|(_, v)| bit_size(v)).sum::<u64>()));
    let mut pivots: HashMap<usize, Row> = HashMap::new();
    for row in rows {
        let mut cur: BTreeMap<usize, Rat> = row.iter().cloned().collect();
        while let Some((&lead, v)) = cur.iter().next() {
            match pivots.get(&lead) {
                Some(p) => {
                    let f = v.clone();
                    for (j, a) in p {
                        let e = cur.entry(*j).or_insert_with(Rat::zero);
                        *e -= &f * a;
                        if e.is_zero() {
                            cur.remove(j);
                        }
                    }
                }
                None => {
                    let inv = v.recip();
                    let normalized: Row = cur.into_iter().map(|(j, a)| (j, a * &inv)).collect();
                    pivots.insert(lead, normalized);
                    break;
                }
            }
        }
    }

    let mut pivot_cols: Vec<usize> = pivots.keys().copied().collect();
    pivot_cols.sort_unstable_by(|a, b| b.cmp(a));
    cols.iter()
        .filter(|c| !pivots.contains_key(c))
        .map(|&free| {
            let mut v: HashMap<usize, Rat> = HashMap::new();
            v.insert(free, Rat::one());
            for &pc in &pivot_cols {
                let s = pivots[&pc]
                    .iter()
                    .filter(|(j, _)| *j != pc)
                    .filter_map(|(j, a)| v.get(j).map(|x| a * x))
                    .fold(Rat::zero(), |acc, t| acc + t);
                if !s.is_zero() {
                    v.insert(pc, -s);
                }
            }
            let mut out: Vec<(usize, Rat)> = v.into_iter().collect();
            out.sort_by_key(|(j, _)| *j);
            out
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat::rat;

    #[test]
    fn identity_unique_solution() {
        let a = ExactMatrix::identity(2);
        let s = solve_linear_exact(&a, &[rat(1), rat(2)]).unwrap();
        assert_eq!(s, LinearSolution::Solved { particular: vec![rat(1), rat(2)], null_basis: vec![] });
    }

    #[test]
    fn zero_matrix_full_nullspace() {
        let a = ExactMatrix::zeros(2, 3);
        match solve_linear_exact(&a, &[rat(0), rat(0)]).unwrap() {
            LinearSolution::Solved { null_basis, .. } => assert_eq!(null_basis.len(), 3),
            LinearSolution::Inconsistent => panic!("consistent"),
        }
        assert_eq!(solve_linear_exact(&a, &[rat(1), rat(0)]).unwrap(), LinearSolution::Inconsistent);
    }

    #[test]
    fn dimension_errors() {
        assert!(ExactMatrix::new(2, 2, vec![rat(1)]).is_err());
        assert!(solve_linear_exact(&ExactMatrix::identity(2), &[rat(1)]).is_err());
    }

    #[test]
    fn sparse_nullspace_components() {
        // x0 + x1 = 0 ; x2 - 2 x3 = 0 ; x4 unconstrained
        let mut s = SparseSystem::new(5);
        s.push(vec![(0, rat(1)), (1, rat(1))]);
        s.push(vec![(2, rat(1)), (3, rat(-2))]);
        s.push(vec![(2, rat(2)), (3, rat(-4))]);
        let basis = s.nullspace();
        assert_eq!(basis.len(), 3);
        for v in &basis {
            assert_eq!(&v[0] + &v[1], rat(0));
            assert_eq!(&v[2] - &(&v[3] * &rat(2)), rat(0));
        }
    }
}
