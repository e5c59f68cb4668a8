//! Dynkin types, Cartan matrices, positive roots and Coxeter numbers.
//!
//! Vertices follow Bourbaki's numbering. Cartan entries are
//! `c_ij = <alpha_i^vee, alpha_j>`, so `c_ij = -2` or `-3` means `alpha_i` is the
//! short root of the pair.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::quiver::IceQuiver;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DynkinType {
    A(u32),
    B(u32),
    C(u32),
    D(u32),
    E(u32),
    F4,
    G2,
}

impl DynkinType {
    pub fn new(family: char, rank: u32) -> Result<Self> {
        let t = match (family.to_ascii_uppercase(), rank) {
            ('A', r) if r >= 1 => DynkinType::A(r),
            ('B', r) if r >= 2 => DynkinType::B(r),
            ('C', r) if r >= 2 => DynkinType::C(r),
            ('D', r) if r >= 4 => DynkinType::D(r),
            ('E', r) if (6..=8).contains(&r) => DynkinType::E(r),
            ('F', 4) => DynkinType::F4,
            ('G', 2) => DynkinType::G2,
            (f, r) => {
                return Err(Error::domain(
                    "unknown_dynkin_type",
                    format!("{f}{r} is not a Dynkin type"),
                ))
            }
        };
        Ok(t)
    }

    pub fn rank(self) -> usize {
        match self {
            DynkinType::A(n)
            | DynkinType::B(n)
            | DynkinType::C(n)
            | DynkinType::D(n)
            | DynkinType::E(n) => n as usize,
            DynkinType::F4 => 4,
            DynkinType::G2 => 2,
        }
    }

    pub fn coxeter_number(self) -> usize {
        match self {
            DynkinType::A(n) => n as usize + 1,
            DynkinType::B(n) | DynkinType::C(n) => 2 * n as usize,
            DynkinType::D(n) => 2 * n as usize - 2,
            DynkinType::E(6) => 12,
            DynkinType::E(7) => 18,
            DynkinType::E(_) => 30,
            DynkinType::F4 => 12,
            DynkinType::G2 => 6,
        }
    }

    pub fn is_simply_laced(self) -> bool {
        matches!(self, DynkinType::A(_) | DynkinType::D(_) | DynkinType::E(_))
    }

    /// Edges of the Dynkin diagram `(i, j)` with `i < j`, 0-based.
    fn edges(self) -> Vec<(usize, usize)> {
        let n = self.rank();
        match self {
            DynkinType::A(_) | DynkinType::B(_) | DynkinType::C(_) | DynkinType::F4 | DynkinType::G2 => {
                (1..n).map(|i| (i - 1, i)).collect()
            }
            DynkinType::D(_) => {
                let mut e: Vec<_> = (1..n - 1).map(|i| (i - 1, i)).collect();
                e.push((n - 3, n - 1));
                e
            }
            DynkinType::E(_) => {
                // 1-3-4-5-6-7-8 with 2 attached to 4
                let mut e = vec![(0, 2), (1, 3)];
                e.extend((3..n).map(|i| (i - 1, i)));
                e
            }
        }
    }

    pub fn cartan(self) -> Vec<Vec<i32>> {
        let n = self.rank();
        let mut c = vec![vec![0; n]; n];
        for (i, row) in c.iter_mut().enumerate() {
            row[i] = 2;
        }
        for (i, j) in self.edges() {
            c[i][j] = -1;
            c[j][i] = -1;
        }
        match self {
            DynkinType::B(_) => c[n - 1][n - 2] = -2,
            DynkinType::C(_) => c[n - 2][n - 1] = -2,
            DynkinType::F4 => c[2][1] = -2,
            DynkinType::G2 => c[0][1] = -3,
            _ => {}
        }
        c
    }

    pub fn positive_roots(self) -> Vec<Vec<i64>> {
        positive_roots(&self.cartan()).expect("finite type")
    }

    /// The orientation with every arrow `i -> j` for `i < j`.
    pub fn linear_orientation(self) -> IceQuiver {
        self.orientation(|i, _| i)
    }

    /// The alternating orientation in which vertex 1 is a source (or a sink
    /// when `first_is_source` is false).
    pub fn alternating_orientation(self, first_is_source: bool) -> IceQuiver {
        let colour = self.bipartition();
        self.orientation(|i, j| {
            if colour[i] == first_is_source {
                i
            } else {
                j
            }
        })
    }

    /// `true` for vertices in the same part as vertex 1.
    pub fn bipartition(self) -> Vec<bool> {
        let n = self.rank();
        let edges = self.edges();
        let mut colour: Vec<Option<bool>> = vec![None; n];
        colour[0] = Some(true);
        let mut changed = true;
        while changed {
            changed = false;
            for &(i, j) in &edges {
                match (colour[i], colour[j]) {
                    (Some(c), None) => {
                        colour[j] = Some(!c);
                        changed = true;
                    }
                    (None, Some(c)) => {
                        colour[i] = Some(!c);
                        changed = true;
                    }
                    _ => {}
                }
            }
        }
        colour.into_iter().map(|c| c.expect("connected diagram")).collect()
    }

    /// Orientation with the arrow on edge `{i, j}` leaving `source(i, j)`.
    fn orientation(self, source: impl Fn(usize, usize) -> usize) -> IceQuiver {
        let n = self.rank();
        let c = self.cartan();
        let mut b = vec![vec![0; n]; n];
        for (i, j) in self.edges() {
            let (s, t) = if source(i, j) == i { (i, j) } else { (j, i) };
            b[s][t] = -c[s][t];
            b[t][s] = c[t][s];
        }
        IceQuiver::new(n, b, None).expect("Dynkin orientation")
    }
}

impl fmt::Display for DynkinType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DynkinType::A(n) => write!(f, "A{n}"),
            DynkinType::B(n) => write!(f, "B{n}"),
            DynkinType::C(n) => write!(f, "C{n}"),
            DynkinType::D(n) => write!(f, "D{n}"),
            DynkinType::E(n) => write!(f, "E{n}"),
            DynkinType::F4 => write!(f, "F4"),
            DynkinType::G2 => write!(f, "G2"),
        }
    }
}

impl FromStr for DynkinType {
    type Err = Error;

    /// Accepts `A3`, `a3`, `A_3`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let family = chars
            .next()
            .ok_or_else(|| Error::domain("unknown_dynkin_type", "empty type"))?;
        let rest = chars.as_str().trim_start_matches('_');
        let rank: u32 = rest
            .parse()
            .map_err(|_| Error::domain("unknown_dynkin_type", format!("cannot parse {s:?}")))?;
        DynkinType::new(family, rank)
    }
}

impl Serialize for DynkinType {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for DynkinType {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Root-system data of a Dynkin type.
#[derive(Clone, Debug, Serialize)]
pub struct DynkinData {
    #[serde(rename = "type")]
    pub dynkin_type: DynkinType,
    pub cartan: Vec<Vec<i32>>,
    pub positive_roots: Vec<Vec<i64>>,
    pub coxeter_number: usize,
}

pub fn dynkin_data(t: DynkinType) -> DynkinData {
    DynkinData {
        dynkin_type: t,
        cartan: t.cartan(),
        positive_roots: t.positive_roots(),
        coxeter_number: t.coxeter_number(),
    }
}

/// Largest Coxeter number among Dynkin types of rank `n`.
pub fn max_coxeter_number(n: usize) -> usize {
    match n {
        6 => 12,
        7 => 18,
        8 => 30,
        _ => (2 * n).max(2),
    }
}

/// The Cartan companion of the principal part: `c_ii = 2`, `c_ij = -|b_ij|`.
pub fn cartan_companion(q: &IceQuiver) -> Vec<Vec<i32>> {
    let n = q.n();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { 2 } else { -q.b(i, j).abs() })
                .collect()
        })
        .collect()
}

/// Positive roots of a finite-type Cartan matrix by closure of the simple
/// roots under simple reflections, sorted by height and then in decreasing
/// lexicographic order, so the simple roots come first in index order. Fails when the closure exceeds 10000 roots.
pub fn positive_roots(cartan: &[Vec<i32>]) -> Result<Vec<Vec<i64>>> {
    let n = cartan.len();
    let mut roots: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut stack: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            let mut e = vec![0; n];
            e[i] = 1;
            e
        })
        .collect();
    while let Some(beta) = stack.pop() {
        if !roots.insert(beta.clone()) {
            continue;
        }
        if roots.len() > 10_000 {
            return Err(Error::domain("not_finite_type", "root closure does not terminate"));
        }
        for i in 0..n {
            let pairing: i64 = (0..n).map(|j| cartan[i][j] as i64 * beta[j]).sum();
            let mut image = beta.clone();
            image[i] -= pairing;
            if image.iter().all(|&x| x >= 0) && image.iter().any(|&x| x > 0) && !roots.contains(&image) {
                stack.push(image);
            }
        }
    }
    let mut out: Vec<Vec<i64>> = roots.into_iter().collect();
    out.sort_by_key(|r| (r.iter().sum::<i64>(), std::cmp::Reverse(r.clone())));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_types() -> Vec<DynkinType> {
        let mut v: Vec<DynkinType> = (1..=8).map(DynkinType::A).collect();
        v.extend((2..=6).map(DynkinType::B));
        v.extend((2..=6).map(DynkinType::C));
        v.extend((4..=8).map(DynkinType::D));
        v.extend((6..=8).map(DynkinType::E));
        v.extend([DynkinType::F4, DynkinType::G2]);
        v
    }

    #[test]
    fn root_counts_match_coxeter_numbers() {
        for t in all_types() {
            let roots = t.positive_roots();
            assert_eq!(roots.len(), t.rank() * t.coxeter_number() / 2, "{t}");
        }
    }

    #[test]
    fn a2_and_g2_roots() {
        assert_eq!(
            DynkinType::A(2).positive_roots(),
            vec![vec![1, 0], vec![0, 1], vec![1, 1]]
        );
        let g2 = DynkinType::G2.positive_roots();
        assert_eq!(
            g2,
            vec![vec![1, 0], vec![0, 1], vec![1, 1], vec![2, 1], vec![3, 1], vec![3, 2]]
        );
    }

    #[test]
    fn parse_and_display() {
        for t in all_types() {
            assert_eq!(t.to_string().parse::<DynkinType>().unwrap(), t);
        }
        assert_eq!("e_8".parse::<DynkinType>().unwrap(), DynkinType::E(8));
        assert!("D3".parse::<DynkinType>().is_err());
        assert!("E9".parse::<DynkinType>().is_err());
        assert!("X".parse::<DynkinType>().is_err());
    }

    #[test]
    fn orientations_are_recognised() {
        for t in all_types() {
            let q = t.linear_orientation();
            let found = crate::quiver::identify_dynkin(&q).unwrap();
            let same = found == t
                || matches!((found, t), (DynkinType::B(2), DynkinType::C(2)));
            assert!(same, "{t} recognised as {found}");
            let alt = t.alternating_orientation(true);
            assert!((0..t.rank()).all(|v| alt.is_source(v) || alt.is_sink(v)));
            assert!(alt.is_source(0));
        }
    }

    #[test]
    fn g2_orientation_matches_the_valued_example() {
        assert_eq!(DynkinType::G2.linear_orientation(), crate::quiver::examples::g2());
    }
}
