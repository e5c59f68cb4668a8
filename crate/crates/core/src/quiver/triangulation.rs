//! Ice quivers of triangulated polygons.
//!
//! Polygon vertices are `0..n+3` in cyclic order. Diagonals become mutable
//! vertices in the order given, sides become frozen vertices in the order
//! `01, 12, ..., 0(n+2)`. In every triangle `a < b < c` the arrows run
//! `ab -> ac -> bc -> ab`; arrows between two sides are dropped.

use serde::Serialize;

use super::IceQuiver;
use crate::error::{Error, Result};

/// A chord `(a, b)` with `a < b`.
pub type Diagonal = (usize, usize);

#[derive(Clone, Debug, Serialize)]
pub struct TriangulationQuiver {
    pub quiver: IceQuiver,
    pub diagonals: Vec<Diagonal>,
    pub sides: Vec<Diagonal>,
    /// One label per vertex of the quiver, diagonals first.
    pub labels: Vec<String>,
}

fn normalize(d: Diagonal) -> Diagonal {
    (d.0.min(d.1), d.0.max(d.1))
}

fn crosses(x: Diagonal, y: Diagonal) -> bool {
    let (a, b) = x;
    let (c, d) = y;
    (a < c && c < b && b < d) || (c < a && a < d && d < b)
}

fn label((a, b): Diagonal, corners: usize) -> String {
    if corners <= 10 {
        format!("{a}{b}")
    } else {
        format!("{a}-{b}")
    }
}

fn sides(corners: usize) -> Vec<Diagonal> {
    let mut s: Vec<Diagonal> = (0..corners - 1).map(|i| (i, i + 1)).collect();
    s.push((0, corners - 1));
    s
}

fn validate(n: usize, diagonals: &[Diagonal]) -> Result<Vec<Diagonal>> {
    let corners = n + 3;
    if diagonals.len() != n {
        return Err(Error::domain(
            "incomplete_triangulation",
            format!("a triangulation of the {corners}-gon has {n} diagonals, got {}", diagonals.len()),
        ));
    }
    let ds: Vec<Diagonal> = diagonals.iter().map(|&d| normalize(d)).collect();
    for (idx, &(a, b)) in ds.iter().enumerate() {
        if b >= corners || b - a < 2 || (a == 0 && b == corners - 1) {
            return Err(Error::domain(
                "not_a_diagonal",
                format!("{} is not a diagonal of the {corners}-gon", label((a, b), corners)),
            ));
        }
        for &other in &ds[..idx] {
            if other == (a, b) {
                return Err(Error::domain("repeated_diagonal", label((a, b), corners)));
            }
            if crosses(other, (a, b)) {
                return Err(Error::domain(
                    "crossing_diagonals",
                    format!(
                        "{} crosses {}",
                        label(other, corners),
                        label((a, b), corners)
                    ),
                ));
            }
        }
    }
    Ok(ds)
}

fn triangles(corners: usize, edges: &[Diagonal]) -> Vec<(usize, usize, usize)> {
    let has = |x: usize, y: usize| edges.contains(&(x, y));
    let mut out = Vec::new();
    for a in 0..corners {
        for b in a + 1..corners {
            if !has(a, b) {
                continue;
            }
            for c in b + 1..corners {
                if has(a, c) && has(b, c) {
                    out.push((a, b, c));
                }
            }
        }
    }
    out
}

/// The ice quiver of a triangulation of the `(n+3)`-gon.
pub fn polygon_triangulation_quiver(
    n: usize,
    diagonals: &[Diagonal],
) -> Result<TriangulationQuiver> {
    if n == 0 {
        return Err(Error::domain("empty_quiver", "a triangle has no diagonals"));
    }
    let corners = n + 3;
    let diagonals = validate(n, diagonals)?;
    let sides = sides(corners);
    let vertices: Vec<Diagonal> = diagonals.iter().chain(&sides).copied().collect();
    let index = |e: Diagonal| vertices.iter().position(|&v| v == e).unwrap();
    let mut arrows = Vec::new();
    for (a, b, c) in triangles(corners, &vertices) {
        let (ab, ac, bc) = (index((a, b)), index((a, c)), index((b, c)));
        for (s, t) in [(ab, ac), (ac, bc), (bc, ab)] {
            if s < n || t < n {
                arrows.push((s, t));
            }
        }
    }
    let labels: Vec<String> = vertices.iter().map(|&v| label(v, corners)).collect();
    let quiver = IceQuiver::ice_from_arrows(n, n + corners, &arrows)?.with_names(labels.clone())?;
    Ok(TriangulationQuiver {
        quiver,
        diagonals,
        sides,
        labels,
    })
}

/// Replaces diagonal `k` by the other diagonal of the quadrilateral formed
/// by its two adjacent triangles.
pub fn flip(n: usize, diagonals: &[Diagonal], k: usize) -> Result<Vec<Diagonal>> {
    let corners = n + 3;
    let ds = validate(n, diagonals)?;
    if k >= n {
        return Err(Error::domain("vertex_out_of_range", format!("no diagonal {}", k + 1)));
    }
    let edges: Vec<Diagonal> = ds.iter().chain(&sides(corners)).copied().collect();
    let (a, c) = ds[k];
    let apexes: Vec<usize> = triangles(corners, &edges)
        .into_iter()
        .filter_map(|(x, y, z)| match () {
            _ if (x, y) == (a, c) => Some(z),
            _ if (x, z) == (a, c) => Some(y),
            _ if (y, z) == (a, c) => Some(x),
            _ => None,
        })
        .collect();
    let [b, d] = apexes[..] else {
        return Err(Error::integrity("a diagonal must border exactly two triangles"));
    };
    let mut out = ds;
    out[k] = normalize((b, d));
    Ok(out)
}

/// Every triangulation of the `(n+3)`-gon, each as a sorted diagonal list.
pub fn all_triangulations(n: usize) -> Vec<Vec<Diagonal>> {
    fn go(poly: &[usize]) -> Vec<Vec<Diagonal>> {
        if poly.len() < 3 {
            return vec![Vec::new()];
        }
        let last = poly.len() - 1;
        let mut out = Vec::new();
        for k in 1..last {
            let lefts = go(&poly[..=k]);
            let rights = go(&poly[k..]);
            for l in &lefts {
                for r in &rights {
                    let mut t = l.clone();
                    t.extend_from_slice(r);
                    if k > 1 {
                        t.push((poly[0], poly[k]));
                    }
                    if k < last - 1 {
                        t.push((poly[k], poly[last]));
                    }
                    out.push(t);
                }
            }
        }
        out
    }
    let poly: Vec<usize> = (0..n + 3).collect();
    let mut all = go(&poly);
    for t in all.iter_mut() {
        t.sort_unstable();
    }
    all.sort();
    all
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_has_one_mutable_and_four_frozen_vertices() {
        let t = polygon_triangulation_quiver(1, &[(0, 2)]).unwrap();
        assert_eq!((t.quiver.n(), t.quiver.m()), (1, 5));
        assert_eq!(t.quiver.arrow_count(), 4);
    }

    #[test]
    fn hexagon_fan() {
        let t = polygon_triangulation_quiver(3, &[(0, 2), (0, 3), (0, 4)]).unwrap();
        assert_eq!(t.labels, ["02", "03", "04", "01", "12", "23", "34", "45", "05"]);
        let named = |s: &str| t.labels.iter().position(|l| l == s).unwrap();
        let arrow = |s: &str, u: &str| t.quiver.arrows_between(named(s), named(u));
        for (s, u) in [
            ("02", "03"),
            ("03", "04"),
            ("04", "05"),
            ("45", "04"),
            ("04", "34"),
            ("34", "03"),
            ("03", "23"),
            ("23", "02"),
            ("01", "02"),
            ("02", "12"),
        ] {
            assert_eq!(arrow(s, u), 1, "{s} -> {u}");
        }
        assert_eq!(t.quiver.arrow_count(), 10);
    }

    #[test]
    fn invalid_triangulations_are_rejected() {
        assert_eq!(
            polygon_triangulation_quiver(3, &[(0, 2), (1, 3), (0, 4)]).unwrap_err().code(),
            "crossing_diagonals"
        );
        assert_eq!(
            polygon_triangulation_quiver(3, &[(0, 2), (0, 3)]).unwrap_err().code(),
            "incomplete_triangulation"
        );
        assert_eq!(
            polygon_triangulation_quiver(3, &[(0, 1), (0, 3), (0, 4)]).unwrap_err().code(),
            "not_a_diagonal"
        );
    }

    #[test]
    fn catalan_counts() {
        let counts: Vec<usize> = (1..6).map(|n| all_triangulations(n).len()).collect();
        assert_eq!(counts, [2, 5, 14, 42, 132]);
    }

    #[test]
    fn flip_in_square() {
        assert_eq!(flip(1, &[(0, 2)], 0).unwrap(), [(1, 3)]);
    }
}
