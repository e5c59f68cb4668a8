//! Ice quivers encoded as integer exchange matrices.
//!
//! An [`IceQuiver`] with `n` mutable and `m - n` frozen vertices is stored as
//! the `m x n` matrix `B` whose entry `b_ij` counts arrows `i -> j` minus
//! arrows `j -> i`. Loops and 2-cycles cannot be represented. Valued
//! (skew-symmetrizable) quivers carry a symmetrizer `d` with
//! `d_i b_ij = -d_j b_ji` on the principal part.

mod canonical;
mod class;
pub mod examples;
mod io;
mod triangulation;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use canonical::{canonical_form, canonical_labeling, CanonicalKey};
pub use class::{
    classify, identify_dynkin, markoff_acyclic_test, mutation_class, ClassOptions, ClassReport,
    ClassSize, Classification, InfiniteEvidence, DEFAULT_CLASS_CAP,
};
pub use io::QuiverJson;
pub use triangulation::{
    all_triangulations, flip, polygon_triangulation_quiver, Diagonal, TriangulationQuiver,
};

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(try_from = "QuiverJson", into = "QuiverJson")]
pub struct IceQuiver {
    n: usize,
    m: usize,
    /// Row-major `m x n`.
    b: Vec<i32>,
    symmetrizer: Vec<u32>,
    names: Option<Vec<String>>,
}

impl PartialEq for IceQuiver {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n
            && self.m == other.m
            && self.b == other.b
            && self.symmetrizer == other.symmetrizer
    }
}

impl Eq for IceQuiver {}

impl std::hash::Hash for IceQuiver {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.n.hash(state);
        self.m.hash(state);
        self.b.hash(state);
        self.symmetrizer.hash(state);
    }
}

impl IceQuiver {
    /// Builds an ice quiver from its `m x n` exchange matrix.
    ///
    /// When `symmetrizer` is `None` one is computed (all ones for
    /// skew-symmetric principal parts).
    pub fn new(n: usize, b: Vec<Vec<i32>>, symmetrizer: Option<Vec<u32>>) -> Result<Self> {
        let m = b.len();
        if n == 0 {
            return Err(Error::domain("empty_quiver", "a quiver needs at least one mutable vertex"));
        }
        if m < n {
            return Err(Error::domain(
                "bad_shape",
                format!("matrix has {m} rows but {n} mutable vertices"),
            ));
        }
        let mut flat = Vec::with_capacity(m * n);
        for (i, row) in b.iter().enumerate() {
            if row.len() != n {
                return Err(Error::domain(
                    "bad_shape",
                    format!("row {} has {} entries, expected {n}", i + 1, row.len()),
                ));
            }
            flat.extend_from_slice(row);
        }
        Self::from_flat(n, m, flat, symmetrizer)
    }

    pub(crate) fn from_flat(
        n: usize,
        m: usize,
        b: Vec<i32>,
        symmetrizer: Option<Vec<u32>>,
    ) -> Result<Self> {
        debug_assert_eq!(b.len(), m * n);
        for i in 0..n {
            if b[i * n + i] != 0 {
                return Err(Error::domain(
                    "loop",
                    format!("diagonal entry b_{0}{0} is nonzero", i + 1),
                ));
            }
        }
        let symmetrizer = match symmetrizer {
            Some(d) => {
                if d.len() != n || d.iter().any(|&x| x == 0) {
                    return Err(Error::domain(
                        "bad_symmetrizer",
                        "symmetrizer must list one positive integer per mutable vertex",
                    ));
                }
                for i in 0..n {
                    for j in 0..n {
                        let lhs = d[i] as i64 * b[i * n + j] as i64;
                        let rhs = -(d[j] as i64) * b[j * n + i] as i64;
                        if lhs != rhs {
                            return Err(Error::domain(
                                "not_skew_symmetrizable",
                                format!(
                                    "d_{i1} b_{i1}{j1} != -d_{j1} b_{j1}{i1}",
                                    i1 = i + 1,
                                    j1 = j + 1
                                ),
                            ));
                        }
                    }
                }
                d
            }
            None => find_symmetrizer(n, &b)?,
        };
        Ok(Self {
            n,
            m,
            b,
            symmetrizer,
            names: None,
        })
    }

    /// A quiver (no frozen vertices) from a list of 0-based arrows; repeated
    /// arrows add up, opposite arrows cancel.
    pub fn from_arrows(vertices: usize, arrows: &[(usize, usize)]) -> Result<Self> {
        Self::ice_from_arrows(vertices, vertices, arrows)
    }

    /// An ice quiver with `n` mutable vertices out of `m`, from 0-based
    /// arrows. Arrows between two frozen vertices are rejected.
    pub fn ice_from_arrows(n: usize, m: usize, arrows: &[(usize, usize)]) -> Result<Self> {
        let mut b = vec![0i32; m * n];
        for &(s, t) in arrows {
            if s >= m || t >= m {
                return Err(Error::domain("vertex_out_of_range", format!("arrow {}->{}", s + 1, t + 1)));
            }
            if s == t {
                return Err(Error::domain("loop", format!("loop at vertex {}", s + 1)));
            }
            if s >= n && t >= n {
                return Err(Error::domain(
                    "frozen_arrow",
                    format!("arrow {}->{} joins two frozen vertices", s + 1, t + 1),
                ));
            }
            if t < n {
                b[s * n + t] += 1;
            }
            if s < n {
                b[t * n + s] -= 1;
            }
        }
        Self::from_flat(n, m, b, None)
    }

    pub fn with_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.m {
            return Err(Error::domain("bad_names", "one name per vertex expected"));
        }
        self.names = Some(names);
        Ok(self)
    }

    /// Number of mutable vertices.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Total number of vertices.
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    pub fn symmetrizer(&self) -> &[u32] {
        &self.symmetrizer
    }

    /// Entry `b_ij`, `i < m`, `j < n`.
    pub fn b(&self, i: usize, j: usize) -> i32 {
        self.b[i * self.n + j]
    }

    /// The `m x n` matrix as rows.
    pub fn matrix(&self) -> Vec<Vec<i32>> {
        self.b.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn is_frozen(&self, v: usize) -> bool {
        v >= self.n
    }

    /// True when the principal part is skew-symmetric (an ordinary quiver).
    pub fn is_skew_symmetric(&self) -> bool {
        self.symmetrizer.iter().all(|&d| d == self.symmetrizer[0])
    }

    /// Signed entry for any pair of vertices: `b_ij` when `j` is mutable,
    /// `-b_ji` when only `i` is mutable, `0` between frozen vertices.
    pub fn entry(&self, i: usize, j: usize) -> i32 {
        if j < self.n {
            self.b(i, j)
        } else if i < self.n {
            -self.b(j, i)
        } else {
            0
        }
    }

    /// Number of arrows `i -> j` (zero if they point the other way).
    pub fn arrows_between(&self, i: usize, j: usize) -> u32 {
        self.entry(i, j).max(0) as u32
    }

    /// All arrows as `(source, target, multiplicity)`, 0-based.
    pub fn arrows(&self) -> Vec<(usize, usize, u32)> {
        let mut out = Vec::new();
        for i in 0..self.m {
            for j in 0..self.m {
                if i == j || (i >= self.n && j >= self.n) {
                    continue;
                }
                let e = self.entry(i, j);
                if e > 0 {
                    out.push((i, j, e as u32));
                }
            }
        }
        out
    }

    pub fn arrow_count(&self) -> u32 {
        self.arrows().iter().map(|a| a.2).sum()
    }

    /// Largest `|b_ij|` on the principal part.
    pub fn max_multiplicity(&self) -> u32 {
        let mut best = 0;
        for i in 0..self.n {
            for j in 0..self.n {
                best = best.max(self.b(i, j).unsigned_abs());
            }
        }
        best
    }

    /// Mutation at the mutable vertex `k` (0-based).
    pub fn mutate(&self, k: usize) -> Result<IceQuiver> {
        if k >= self.m {
            return Err(Error::domain(
                "vertex_out_of_range",
                format!("vertex {} does not exist", k + 1),
            ));
        }
        if k >= self.n {
            return Err(Error::domain(
                "frozen_vertex",
                format!("vertex {} is frozen and cannot be mutated", k + 1),
            ));
        }
        let n = self.n;
        let mut b = self.b.clone();
        for i in 0..self.m {
            for j in 0..n {
                let idx = i * n + j;
                if i == k || j == k {
                    b[idx] = -self.b[idx];
                } else {
                    let bik = self.b[i * n + k];
                    let bkj = self.b[k * n + j];
                    let prod = bik * bkj;
                    if prod > 0 {
                        b[idx] = self.b[idx] + bik.signum() * prod;
                    }
                }
            }
        }
        Ok(IceQuiver {
            n,
            m: self.m,
            b,
            symmetrizer: self.symmetrizer.clone(),
            names: self.names.clone(),
        })
    }

    /// Applies mutations left to right.
    pub fn mutate_sequence(&self, seq: &[usize]) -> Result<IceQuiver> {
        let mut q = self.clone();
        for &k in seq {
            q = q.mutate(k)?;
        }
        Ok(q)
    }

    /// Relabels vertices: old vertex `v` becomes `perm[v]`. The permutation
    /// must map mutable vertices to mutable ones.
    pub fn relabel(&self, perm: &[usize]) -> Result<IceQuiver> {
        if perm.len() != self.m {
            return Err(Error::domain("bad_permutation", "permutation has wrong length"));
        }
        let mut seen = vec![false; self.m];
        for (v, &p) in perm.iter().enumerate() {
            if p >= self.m || seen[p] || (v < self.n) != (p < self.n) {
                return Err(Error::domain(
                    "bad_permutation",
                    "not a permutation preserving mutable and frozen vertices",
                ));
            }
            seen[p] = true;
        }
        let n = self.n;
        let mut b = vec![0; self.m * n];
        let mut d = vec![0; n];
        for i in 0..self.m {
            for j in 0..n {
                b[perm[i] * n + perm[j]] = self.b[i * n + j];
            }
        }
        for j in 0..n {
            d[perm[j]] = self.symmetrizer[j];
        }
        let names = self.names.as_ref().map(|names| {
            let mut out = vec![String::new(); self.m];
            for (v, name) in names.iter().enumerate() {
                out[perm[v]] = name.clone();
            }
            out
        });
        Ok(IceQuiver {
            n,
            m: self.m,
            b,
            symmetrizer: d,
            names,
        })
    }

    /// The full subquiver on the mutable vertices.
    pub fn principal_part(&self) -> IceQuiver {
        IceQuiver {
            n: self.n,
            m: self.n,
            b: self.b[..self.n * self.n].to_vec(),
            symmetrizer: self.symmetrizer.clone(),
            names: self.names.as_ref().map(|v| v[..self.n].to_vec()),
        }
    }

    /// Reverses every arrow.
    pub fn opposite(&self) -> IceQuiver {
        IceQuiver {
            b: self.b.iter().map(|x| -x).collect(),
            ..self.clone()
        }
    }

    /// Neighbours of `v` in the underlying graph of the principal part.
    pub fn neighbours(&self, v: usize) -> Vec<usize> {
        (0..self.n).filter(|&u| u != v && self.b(v, u) != 0).collect()
    }

    /// Whether the principal part is connected.
    pub fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for u in self.neighbours(v) {
                if !seen[u] {
                    seen[u] = true;
                    stack.push(u);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Whether the principal part has no oriented cycle.
    pub fn is_acyclic(&self) -> bool {
        self.topological_order().is_some()
    }

    /// A topological order of the principal part (sources first), if acyclic.
    pub fn topological_order(&self) -> Option<Vec<usize>> {
        let n = self.n;
        let mut indeg: Vec<usize> = (0..n)
            .map(|j| (0..n).filter(|&i| self.b(i, j) > 0).count())
            .collect();
        let mut ready: Vec<usize> = (0..n).rev().filter(|&v| indeg[v] == 0).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(v) = ready.pop() {
            order.push(v);
            for u in (0..n).rev() {
                if self.b(v, u) > 0 {
                    indeg[u] -= 1;
                    if indeg[u] == 0 {
                        ready.push(u);
                    }
                }
            }
        }
        (order.len() == n).then_some(order)
    }

    pub fn is_source(&self, v: usize) -> bool {
        (0..self.n).all(|u| self.b(u, v) <= 0)
    }

    pub fn is_sink(&self, v: usize) -> bool {
        (0..self.n).all(|u| self.b(v, u) <= 0)
    }
}

/// Finds the smallest positive integer symmetrizer, component by component.
fn find_symmetrizer(n: usize, b: &[i32]) -> Result<Vec<u32>> {
    use num_integer::Integer;
    use num_rational::Ratio;

    let bad = |i: usize, j: usize| {
        Error::domain(
            "not_skew_symmetrizable",
            format!("principal part is not skew-symmetrizable at ({}, {})", i + 1, j + 1),
        )
    };
    for i in 0..n {
        for j in 0..n {
            let (x, y) = (b[i * n + j], b[j * n + i]);
            if (x == 0) != (y == 0) || (x != 0 && x.signum() == y.signum()) {
                return Err(bad(i, j));
            }
        }
    }
    let mut d: Vec<Option<Ratio<i64>>> = vec![None; n];
    for root in 0..n {
        if d[root].is_some() {
            continue;
        }
        d[root] = Some(Ratio::from_integer(1));
        let mut component = vec![root];
        let mut stack = vec![root];
        while let Some(i) = stack.pop() {
            let di = d[i].unwrap();
            for j in 0..n {
                let bij = b[i * n + j] as i64;
                if bij == 0 {
                    continue;
                }
                let bji = b[j * n + i] as i64;
                // d_i b_ij = -d_j b_ji
                let dj = di * Ratio::new(bij, -bji);
                match d[j] {
                    None => {
                        d[j] = Some(dj);
                        component.push(j);
                        stack.push(j);
                    }
                    Some(existing) if existing != dj => return Err(bad(i, j)),
                    Some(_) => {}
                }
            }
        }
        let lcm = component
            .iter()
            .fold(1i64, |acc, &v| acc.lcm(d[v].unwrap().denom()));
        let mut ints: Vec<i64> = component
            .iter()
            .map(|&v| (d[v].unwrap() * lcm).to_integer())
            .collect();
        let g = ints.iter().fold(0i64, |acc, &x| acc.gcd(&x));
        for x in ints.iter_mut() {
            *x /= g;
        }
        for (&v, &x) in component.iter().zip(&ints) {
            d[v] = Some(Ratio::from_integer(x));
        }
    }
    Ok(d.into_iter().map(|x| x.unwrap().to_integer() as u32).collect())
}

impl fmt::Display for IceQuiver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", io::to_text(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyclic_triangle() -> IceQuiver {
        // 1 -> 3 -> 2 -> 1
        IceQuiver::from_arrows(3, &[(1, 0), (0, 2), (2, 1)]).unwrap()
    }

    #[test]
    fn mutating_the_cyclic_triangle_breaks_the_cycle() {
        let q = cyclic_triangle().mutate(0).unwrap();
        let expected = IceQuiver::from_arrows(3, &[(0, 1), (2, 0)]).unwrap();
        assert_eq!(q, expected);
        assert_eq!(q.b(1, 2), 0);
    }

    #[test]
    fn mutation_is_an_involution() {
        let q = cyclic_triangle();
        for k in 0..3 {
            assert_eq!(q.mutate(k).unwrap().mutate(k).unwrap(), q);
        }
    }

    #[test]
    fn frozen_and_out_of_range_vertices_are_rejected() {
        let q = IceQuiver::ice_from_arrows(1, 3, &[(0, 1), (0, 2)]).unwrap();
        assert_eq!(q.mutate(1).unwrap_err().code(), "frozen_vertex");
        assert_eq!(q.mutate(3).unwrap_err().code(), "vertex_out_of_range");
    }

    #[test]
    fn sink_mutation_only_reverses_arrows() {
        let q = IceQuiver::from_arrows(3, &[(0, 1), (1, 2)]).unwrap();
        let r = q.mutate(2).unwrap();
        assert_eq!(r, IceQuiver::from_arrows(3, &[(0, 1), (2, 1)]).unwrap());
    }

    #[test]
    fn symmetrizer_is_found_and_checked() {
        let g2 = IceQuiver::new(2, vec![vec![0, 3], vec![-1, 0]], None).unwrap();
        assert_eq!(g2.symmetrizer(), &[1, 3]);
        assert!(IceQuiver::new(2, vec![vec![0, 3], vec![-1, 0]], Some(vec![3, 1])).is_err());
        assert!(IceQuiver::new(2, vec![vec![0, 1], vec![1, 0]], None).is_err());
        let m = g2.mutate(0).unwrap();
        assert_eq!(m.matrix(), vec![vec![0, -3], vec![1, 0]]);
    }

    #[test]
    fn frozen_rows_follow_mutation() {
        // 1 -> 2, frozen 3 -> 1
        let q = IceQuiver::ice_from_arrows(2, 3, &[(0, 1), (2, 0)]).unwrap();
        let r = q.mutate(0).unwrap();
        // after mutation at 1: 2 -> 1, 1 -> 3, and 3 -> 2 appears
        assert_eq!(r.matrix(), vec![vec![0, -1], vec![1, 0], vec![-1, 1]]);
    }

    #[test]
    fn relabel_preserves_structure() {
        let q = cyclic_triangle();
        let r = q.relabel(&[1, 2, 0]).unwrap();
        assert_eq!(r.arrow_count(), 3);
        assert_eq!(r.relabel(&[2, 0, 1]).unwrap(), q);
        assert!(IceQuiver::ice_from_arrows(1, 2, &[(0, 1)]).unwrap().relabel(&[1, 0]).is_err());
    }
}
