use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quiver::IceQuiver;

/// A representation of a quiver without frozen vertices and with at most
/// single arrows: a dimension vector plus one integer matrix per arrow.
///
/// The matrix of an arrow `i -> j` has `dims[j]` rows and `dims[i]` columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuiverRep {
    quiver: IceQuiver,
    dims: Vec<usize>,
    arrows: Vec<(usize, usize)>,
    mats: Vec<Vec<Vec<i64>>>,
}

impl QuiverRep {
    /// `mats` is keyed by 0-based arrows `(i, j)`; missing arrows get zero
    /// matrices.
    pub fn new(
        quiver: IceQuiver,
        dims: Vec<usize>,
        mut mats: BTreeMap<(usize, usize), Vec<Vec<i64>>>,
    ) -> Result<Self> {
        if quiver.m() != quiver.n() {
            return Err(Error::domain("frozen_vertices", "representations need quivers without frozen vertices"));
        }
        if dims.len() != quiver.n() {
            return Err(Error::domain("bad_dims", "one dimension per vertex expected"));
        }
        let mut arrows = Vec::new();
        for (s, t, mult) in quiver.arrows() {
            if mult > 1 {
                return Err(Error::domain("multiple_arrows", "only single arrows are supported"));
            }
            arrows.push((s, t));
        }
        let mut out = Vec::with_capacity(arrows.len());
        for &(s, t) in &arrows {
            let m = mats
                .remove(&(s, t))
                .unwrap_or_else(|| vec![vec![0; dims[s]]; dims[t]]);
            if m.len() != dims[t] || m.iter().any(|r| r.len() != dims[s]) {
                return Err(Error::domain(
                    "bad_matrix",
                    format!("the matrix of {}->{} must be {}x{}", s + 1, t + 1, dims[t], dims[s]),
                ));
            }
            out.push(m);
        }
        if let Some(&(s, t)) = mats.keys().next() {
            return Err(Error::domain("not_an_arrow", format!("{}->{} is not an arrow", s + 1, t + 1)));
        }
        Ok(QuiverRep { quiver, dims, arrows, mats: out })
    }

    pub fn quiver(&self) -> &IceQuiver {
        &self.quiver
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// Arrows `(source, target)` in the order of [`Self::matrices`].
    pub fn arrows(&self) -> &[(usize, usize)] {
        &self.arrows
    }

    pub fn matrices(&self) -> &[Vec<Vec<i64>>] {
        &self.mats
    }

    pub fn matrix(&self, s: usize, t: usize) -> Option<&Vec<Vec<i64>>> {
        self.arrows.iter().position(|&a| a == (s, t)).map(|k| &self.mats[k])
    }

    pub fn is_zero(&self) -> bool {
        self.dims.iter().all(|&d| d == 0)
    }

    /// The block-diagonal sum.
    pub fn direct_sum(&self, other: &QuiverRep) -> Result<QuiverRep> {
        if self.quiver != other.quiver {
            return Err(Error::domain("different_quivers", "summands must live on the same quiver"));
        }
        let dims: Vec<usize> = self.dims.iter().zip(&other.dims).map(|(a, b)| a + b).collect();
        let mut mats = BTreeMap::new();
        for (k, &(s, t)) in self.arrows.iter().enumerate() {
            let mut m = vec![vec![0; dims[s]]; dims[t]];
            for (r, row) in self.mats[k].iter().enumerate() {
                m[r][..row.len()].copy_from_slice(row);
            }
            for (r, row) in other.mats[k].iter().enumerate() {
                m[self.dims[t] + r][self.dims[s]..].copy_from_slice(row);
            }
            mats.insert((s, t), m);
        }
        QuiverRep::new(self.quiver.clone(), dims, mats)
    }
}

/// The interval module `I[p, q]` (1-based, inclusive) on an orientation of
/// the path `1 - 2 - ... - n`.
pub fn interval_module(quiver: &IceQuiver, p: usize, q: usize) -> Result<QuiverRep> {
    let n = quiver.n();
    let is_path = quiver.m() == n
        && quiver.arrow_count() as usize + 1 == n.max(1)
        && (0..n.saturating_sub(1)).all(|i| quiver.entry(i, i + 1).abs() == 1);
    if !is_path {
        return Err(Error::domain("not_type_a", "interval modules need an orientation of the path 1 - 2 - ... - n"));
    }
    if p < 1 || p > q || q > n {
        return Err(Error::domain("invalid_interval", format!("[{p},{q}] is not an interval in 1..{n}")));
    }
    let dims: Vec<usize> = (1..=n).map(|v| usize::from(p <= v && v <= q)).collect();
    let mut mats = BTreeMap::new();
    for (s, t, _) in quiver.arrows() {
        if dims[s] == 1 && dims[t] == 1 {
            mats.insert((s, t), vec![vec![1]]);
        }
    }
    QuiverRep::new(quiver.clone(), dims, mats)
}

/// All `n (n + 1) / 2` interval modules, ordered by `(p, q)`.
pub fn interval_modules(quiver: &IceQuiver) -> Result<Vec<QuiverRep>> {
    let n = quiver.n();
    let mut out = Vec::new();
    for p in 1..=n {
        for q in p..=n {
            out.push(interval_module(quiver, p, q)?);
        }
    }
    Ok(out)
}

/// The quiver `1 -> 4 <- 2`, `3 -> 4`.
pub fn d4_subspace_quiver() -> IceQuiver {
    IceQuiver::from_arrows(4, &[(0, 3), (1, 3), (2, 3)]).expect("D4")
}

/// Three lines in general position in a plane, spanned by `(1,0)`, `(0,1)`
/// and `(1,1)`.
pub fn d4_three_lines() -> QuiverRep {
    let mats = BTreeMap::from([
        ((0, 3), vec![vec![1], vec![0]]),
        ((1, 3), vec![vec![0], vec![1]]),
        ((2, 3), vec![vec![1], vec![1]]),
    ]);
    QuiverRep::new(d4_subspace_quiver(), vec![1, 1, 1, 2], mats).expect("three lines")
}

/// JSON form `{quiver, dims, mats: {"1->2": [[..]]}}` with 1-based arrows.
#[derive(Serialize, Deserialize)]
struct RepJson {
    quiver: IceQuiver,
    dims: Vec<usize>,
    #[serde(default)]
    mats: BTreeMap<String, Vec<Vec<i64>>>,
}

fn parse_arrow(key: &str) -> Result<(usize, usize)> {
    let bad = || Error::domain("bad_arrow", format!("expected `i->j`, got {key:?}"));
    let (s, t) = key.split_once("->").ok_or_else(bad)?;
    let s: usize = s.trim().parse().map_err(|_| bad())?;
    let t: usize = t.trim().parse().map_err(|_| bad())?;
    if s == 0 || t == 0 {
        return Err(bad());
    }
    Ok((s - 1, t - 1))
}

impl Serialize for QuiverRep {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mats = self
            .arrows
            .iter()
            .zip(&self.mats)
            .map(|(&(s, t), m)| (format!("{}->{}", s + 1, t + 1), m.clone()))
            .collect();
        RepJson { quiver: self.quiver.clone(), dims: self.dims.clone(), mats }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for QuiverRep {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = RepJson::deserialize(deserializer)?;
        let mut mats = BTreeMap::new();
        for (k, m) in raw.mats {
            mats.insert(parse_arrow(&k).map_err(serde::de::Error::custom)?, m);
        }
        QuiverRep::new(raw.quiver, raw.dims, mats).map_err(serde::de::Error::custom)
    }
}
