//! Knitting on the repetition quiver of an acyclic quiver.
//!
//! Slice `p` holds one Laurent polynomial per vertex. The mesh relation at
//! `(p, i)` reads
//!
//! ```text
//! x(p, i) * x(p-1, i) = 1 + prod x(w)^v
//! ```
//!
//! over the predecessors `w` of `(p, i)`: `(p, j)` for each arrow `j -> i` and
//! `(p-1, j)` for each arrow `i -> j`. The exponent `v` is `|b_ji|`, the
//! valuation at the end of the arrow nearest to `(p, i)`. Slices are filled
//! in topological order going right and in reverse order going left.

mod dynkin;

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exchange::denominator_vector;
use crate::laurent::LaurentPolynomial;
use crate::quiver::{identify_dynkin, IceQuiver};

pub use dynkin::{
    cartan_companion, dynkin_data, max_coxeter_number, positive_roots, DynkinData, DynkinType,
};

/// Variables with more terms than this abort knitting.
const TERM_LIMIT: usize = 200_000;

/// A finite window of the repetition quiver with its knitted values.
#[derive(Clone, Debug, Serialize)]
pub struct KnittingFrame {
    pub quiver: IceQuiver,
    /// Topological order of the vertices used for the recursion.
    pub order: Vec<usize>,
    /// Index of the leftmost slice.
    pub first: i32,
    pub slices: Vec<Vec<LaurentPolynomial>>,
    /// Least `p >= 1` with slice `p` equal to slice 0, if inside the window.
    pub period: Option<usize>,
}

impl KnittingFrame {
    pub fn last(&self) -> i32 {
        self.first + self.slices.len() as i32 - 1
    }

    pub fn slice(&self, p: i32) -> Option<&[LaurentPolynomial]> {
        let idx = usize::try_from(p - self.first).ok()?;
        self.slices.get(idx).map(|s| s.as_slice())
    }

    pub fn value(&self, p: i32, i: usize) -> Option<&LaurentPolynomial> {
        self.slice(p).and_then(|s| s.get(i))
    }

    /// Distinct values in the window, sorted.
    pub fn variables(&self) -> Vec<LaurentPolynomial> {
        let set: BTreeSet<&LaurentPolynomial> = self.slices.iter().flatten().collect();
        set.into_iter().cloned().collect()
    }

    /// The window as aligned text, one row per vertex.
    pub fn render(&self) -> String {
        let n = self.quiver.n();
        let cells: Vec<Vec<String>> = self
            .slices
            .iter()
            .map(|s| s.iter().map(|v| v.display_with("x")).collect())
            .collect();
        let widths: Vec<usize> = cells
            .iter()
            .enumerate()
            .map(|(k, col)| {
                let header = (self.first + k as i32).to_string().len();
                col.iter().map(|c| c.len()).max().unwrap_or(0).max(header)
            })
            .collect();
        let mut out = String::new();
        out.push_str("p  ");
        for (k, w) in widths.iter().enumerate() {
            let _ = write!(out, " | {:<w$}", self.first + k as i32, w = w);
        }
        out.push('\n');
        for i in 0..n {
            let _ = write!(out, "{:<3}", i + 1);
            for (col, w) in cells.iter().zip(&widths) {
                let _ = write!(out, " | {:<w$}", col[i], w = w);
            }
            out.push('\n');
        }
        out
    }
}

fn check_input(q: &IceQuiver) -> Result<Vec<usize>> {
    if q.m() != q.n() {
        return Err(Error::domain(
            "frozen_vertices",
            "knitting works on quivers without frozen vertices",
        ));
    }
    q.topological_order()
        .ok_or_else(|| Error::domain("not_acyclic", "knitting needs a quiver without oriented cycles"))
}

fn mesh_value(
    prod: LaurentPolynomial,
    opposite: &LaurentPolynomial,
    at: (i32, usize),
) -> Result<LaurentPolynomial> {
    let n = prod.nvars();
    let numerator = LaurentPolynomial::one(n).add(&prod);
    let value = numerator.exact_div(opposite).ok_or_else(|| {
        Error::integrity(format!(
            "mesh relation at ({}, {}) is not an exact Laurent division",
            at.0,
            at.1 + 1
        ))
    })?;
    if value.num_terms() > TERM_LIMIT {
        return Err(Error::domain(
            "not_dynkin",
            "knitted values grow without bound; the quiver is not of Dynkin type",
        ));
    }
    Ok(value)
}

fn step_right(
    q: &IceQuiver,
    order: &[usize],
    prev: &[LaurentPolynomial],
    p: i32,
) -> Result<Vec<LaurentPolynomial>> {
    let n = q.n();
    let mut next: Vec<Option<LaurentPolynomial>> = vec![None; n];
    for &i in order {
        let mut prod = LaurentPolynomial::one(n);
        for j in 0..n {
            let v = q.b(j, i).unsigned_abs();
            if q.b(j, i) > 0 {
                prod = prod.mul(&next[j].as_ref().expect("topological order").pow(v));
            } else if q.b(i, j) > 0 {
                prod = prod.mul(&prev[j].pow(v));
            }
        }
        next[i] = Some(mesh_value(prod, &prev[i], (p, i))?);
    }
    Ok(next.into_iter().map(|v| v.unwrap()).collect())
}

fn step_left(
    q: &IceQuiver,
    order: &[usize],
    cur: &[LaurentPolynomial],
    p: i32,
) -> Result<Vec<LaurentPolynomial>> {
    let n = q.n();
    let mut prev: Vec<Option<LaurentPolynomial>> = vec![None; n];
    for &i in order.iter().rev() {
        let mut prod = LaurentPolynomial::one(n);
        for j in 0..n {
            let v = q.b(j, i).unsigned_abs();
            if q.b(j, i) > 0 {
                prod = prod.mul(&cur[j].pow(v));
            } else if q.b(i, j) > 0 {
                prod = prod.mul(&prev[j].as_ref().expect("reverse topological order").pow(v));
            }
        }
        prev[i] = Some(mesh_value(prod, &cur[i], (p - 1, i))?);
    }
    Ok(prev.into_iter().map(|v| v.unwrap()).collect())
}

fn initial_slice(n: usize) -> Vec<LaurentPolynomial> {
    (0..n).map(|i| LaurentPolynomial::var(n, i)).collect()
}

fn find_period(slices: &[Vec<LaurentPolynomial>], zero: usize) -> Option<usize> {
    (zero + 1..slices.len())
        .find(|&k| slices[k] == slices[zero])
        .map(|k| k - zero)
}

/// Knits the slices `lo..=hi` (with `lo <= 0 <= hi`) starting from the
/// initial cluster in slice 0.
pub fn knit(q: &IceQuiver, lo: i32, hi: i32) -> Result<KnittingFrame> {
    if lo > 0 || hi < 0 {
        return Err(Error::domain("bad_window", "the window must contain slice 0"));
    }
    let order = check_input(q)?;
    let n = q.n();
    let mut right = vec![initial_slice(n)];
    for p in 1..=hi {
        let next = step_right(q, &order, right.last().unwrap(), p)?;
        right.push(next);
    }
    let mut left: Vec<Vec<LaurentPolynomial>> = Vec::new();
    let mut cur = right[0].clone();
    for p in (lo + 1..=0).rev() {
        cur = step_left(q, &order, &cur, p)?;
        left.push(cur.clone());
    }
    left.reverse();
    let zero = left.len();
    let mut slices = left;
    slices.extend(right);
    let period = find_period(&slices, zero);
    Ok(KnittingFrame {
        quiver: q.clone(),
        order,
        first: lo,
        slices,
        period,
    })
}

fn safety_bound(q: &IceQuiver) -> usize {
    let h = identify_dynkin(q)
        .map(|t| t.coxeter_number())
        .unwrap_or_else(|| max_coxeter_number(q.n()));
    4 * (h + 2)
}

/// Knits to the right until slice 0 recurs. Fails with `not_dynkin` when no
/// repetition occurs within `4 (h + 2)` slices.
pub fn knit_one_period(q: &IceQuiver) -> Result<KnittingFrame> {
    let order = check_input(q)?;
    let bound = safety_bound(q);
    let mut slices = vec![initial_slice(q.n())];
    for p in 1..=bound {
        let next = step_right(q, &order, slices.last().unwrap(), p as i32)?;
        let done = next == slices[0];
        slices.push(next);
        if done {
            return Ok(KnittingFrame {
                quiver: q.clone(),
                order,
                first: 0,
                slices,
                period: Some(p),
            });
        }
    }
    Err(Error::domain(
        "not_dynkin",
        format!("no period within {bound} slices; the quiver is not of Dynkin type"),
    ))
}

/// Every distinct value over one period of the knitting.
pub fn knitting_variable_set(q: &IceQuiver) -> Result<Vec<LaurentPolynomial>> {
    Ok(knit_one_period(q)?.variables())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RootMatch {
    pub root: Vec<i64>,
    pub variable: LaurentPolynomial,
}

/// Matches each non-initial knitted variable with the positive root of the
/// Cartan companion given by its denominator vector.
pub fn root_bijection(q: &IceQuiver) -> Result<Vec<RootMatch>> {
    let vars = knitting_variable_set(q)?;
    let roots = positive_roots(&cartan_companion(q))?;
    let mut matches = Vec::new();
    for v in vars {
        let d = denominator_vector(&v)?;
        if d.is_initial() {
            continue;
        }
        matches.push(RootMatch {
            root: d.0.iter().map(|&x| x as i64).collect(),
            variable: v,
        });
    }
    matches.sort_by(|a, b| {
        let ha: i64 = a.root.iter().sum();
        let hb: i64 = b.root.iter().sum();
        (ha, &b.root).cmp(&(hb, &a.root))
    });
    let found: Vec<&Vec<i64>> = matches.iter().map(|m| &m.root).collect();
    let expected: Vec<&Vec<i64>> = roots.iter().collect();
    if found != expected {
        return Err(Error::integrity(format!(
            "denominator vectors {found:?} do not match the positive roots {expected:?}"
        )));
    }
    Ok(matches)
}
