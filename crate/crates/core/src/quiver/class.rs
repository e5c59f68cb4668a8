//! Mutation classes and cluster-type classification.

use std::collections::HashSet;

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use super::{canonical_labeling, CanonicalKey, IceQuiver};
use crate::error::{Error, Result};
use crate::knitting::DynkinType;

pub const DEFAULT_CLASS_CAP: usize = 100_000;

#[derive(Clone, Debug)]
pub struct ClassOptions {
    /// Stop once more than this many classes have been found.
    pub cap: usize,
    /// How many members to keep in the report.
    pub max_representatives: usize,
}

impl Default for ClassOptions {
    fn default() -> Self {
        ClassOptions {
            cap: DEFAULT_CLASS_CAP,
            max_representatives: usize::MAX,
        }
    }
}

impl ClassOptions {
    pub fn with_cap(cap: usize) -> Self {
        ClassOptions {
            cap,
            ..Self::default()
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClassSize {
    Exact(usize),
    /// More than `cap` members.
    ExceededCap(usize),
}

impl ClassSize {
    pub fn exact(self) -> Option<usize> {
        match self {
            ClassSize::Exact(n) => Some(n),
            ClassSize::ExceededCap(_) => None,
        }
    }
}

impl Serialize for ClassSize {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            ClassSize::Exact(n) => s.serialize_u64(*n as u64),
            ClassSize::ExceededCap(_) => s.serialize_str("exceeded cap"),
        }
    }
}

/// Summary of a mutation-class enumeration. Members are canonical
/// representatives in discovery order.
#[derive(Clone, Debug, Serialize)]
pub struct ClassReport {
    pub class_size: ClassSize,
    /// Members examined (equals the size when the class is complete).
    pub explored: usize,
    pub representatives: Vec<IceQuiver>,
    pub max_multiplicity: u32,
    pub dynkin_hit: Option<DynkinType>,
    pub double_arrow_count: usize,
    /// Members with some `|b_ij| >= 3`.
    pub high_multiplicity_count: usize,
}

struct Visit<'a> {
    member: &'a IceQuiver,
}

/// Level-synchronous breadth-first search over the mutation class. Mutation
/// and canonical labeling run in parallel; new keys are inserted in a fixed
/// order so the result does not depend on scheduling. `visit` sees each new
/// member and may stop the search by returning `true`.
fn explore(
    q: &IceQuiver,
    cap: usize,
    mut visit: impl FnMut(Visit<'_>) -> bool,
) -> (Vec<IceQuiver>, bool, bool) {
    let (perm, key) = canonical_labeling(q);
    let start = q.relabel(&perm).expect("canonical labeling is admissible");
    let mut seen: HashSet<CanonicalKey> = HashSet::new();
    seen.insert(key);
    let mut members = vec![start];
    if visit(Visit { member: &members[0] }) {
        return (members, false, true);
    }
    let mut frontier = 0..1;
    while !frontier.is_empty() {
        let n = q.n();
        let children: Vec<(CanonicalKey, IceQuiver)> = members[frontier.clone()]
            .par_iter()
            .flat_map_iter(|member| {
                (0..n).map(move |k| {
                    let child = member.mutate(k).expect("mutable vertex");
                    let (perm, key) = canonical_labeling(&child);
                    (key, child.relabel(&perm).expect("canonical labeling is admissible"))
                })
            })
            .collect();
        let level_start = members.len();
        for (key, child) in children {
            if seen.contains(&key) {
                continue;
            }
            if members.len() >= cap {
                return (members, true, false);
            }
            seen.insert(key);
            members.push(child);
            if visit(Visit {
                member: members.last().unwrap(),
            }) {
                return (members, false, true);
            }
        }
        frontier = level_start..members.len();
    }
    (members, false, false)
}

fn has_multiplicity(q: &IceQuiver, k: u32) -> bool {
    let n = q.n();
    (0..n).any(|i| (0..n).any(|j| q.b(i, j).unsigned_abs() == k))
}

/// Enumerates the mutation class of `q` up to isomorphism.
pub fn mutation_class(q: &IceQuiver, options: &ClassOptions) -> ClassReport {
    let mut max_multiplicity = 0;
    let mut dynkin_hit = None;
    let mut double_arrow_count = 0;
    let mut high_multiplicity_count = 0;
    let (members, exceeded, _) = explore(q, options.cap.max(1), |v| {
        let mult = v.member.max_multiplicity();
        max_multiplicity = max_multiplicity.max(mult);
        if has_multiplicity(v.member, 2) {
            double_arrow_count += 1;
        }
        if mult >= 3 {
            high_multiplicity_count += 1;
        }
        if dynkin_hit.is_none() {
            dynkin_hit = identify_dynkin(v.member);
        }
        false
    });
    let explored = members.len();
    ClassReport {
        class_size: if exceeded {
            ClassSize::ExceededCap(options.cap)
        } else {
            ClassSize::Exact(explored)
        },
        explored,
        representatives: members.into_iter().take(options.max_representatives).collect(),
        max_multiplicity,
        dynkin_hit,
        double_arrow_count,
        high_multiplicity_count,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum InfiniteEvidence {
    /// A member with an arrow of multiplicity at least 3 on at least three
    /// vertices.
    HighMultiplicity { member: IceQuiver, multiplicity: u32 },
    /// A member with a two-vertex full subquiver of infinite type
    /// (`|b_ij b_ji| >= 4`).
    RankTwo {
        member: IceQuiver,
        vertices: [usize; 2],
        product: u32,
    },
    /// The whole class was enumerated and contains no Dynkin orientation.
    NoDynkinMember { class_size: usize },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum Classification {
    Finite { dynkin: DynkinType },
    Infinite { evidence: InfiniteEvidence },
    Unknown { explored: usize, cap: usize },
}

impl Classification {
    pub fn dynkin(&self) -> Option<DynkinType> {
        match self {
            Classification::Finite { dynkin } => Some(*dynkin),
            _ => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Classification::Infinite { .. })
    }
}

/// Decides cluster-finiteness of the principal part of `q` by searching its
/// mutation class for a Dynkin orientation or for a certificate of infinite
/// type.
pub fn classify(q: &IceQuiver, cap: usize) -> Result<Classification> {
    let q = q.principal_part();
    if !q.is_connected() {
        return Err(Error::domain(
            "disconnected",
            "classification needs a connected mutable part",
        ));
    }
    let n = q.n();
    let mut verdict = None;
    let (members, exceeded, stopped) = explore(&q, cap.max(1), |v| {
        if let Some(d) = identify_dynkin(v.member) {
            verdict = Some(Classification::Finite { dynkin: d });
            return true;
        }
        let mult = v.member.max_multiplicity();
        if mult >= 3 && n > 2 {
            verdict = Some(Classification::Infinite {
                evidence: InfiniteEvidence::HighMultiplicity {
                    member: v.member.clone(),
                    multiplicity: mult,
                },
            });
            return true;
        }
        if let Some((i, j, product)) = infinite_rank_two_pair(v.member) {
            verdict = Some(Classification::Infinite {
                evidence: InfiniteEvidence::RankTwo {
                    member: v.member.clone(),
                    vertices: [i, j],
                    product,
                },
            });
            return true;
        }
        false
    });
    if stopped {
        return Ok(verdict.expect("search stops only with a verdict"));
    }
    if exceeded {
        return Ok(Classification::Unknown {
            explored: members.len(),
            cap,
        });
    }
    Ok(Classification::Infinite {
        evidence: InfiniteEvidence::NoDynkinMember {
            class_size: members.len(),
        },
    })
}

fn infinite_rank_two_pair(q: &IceQuiver) -> Option<(usize, usize, u32)> {
    let n = q.n();
    for i in 0..n {
        for j in i + 1..n {
            let product = (q.b(i, j) * q.b(j, i)).unsigned_abs();
            if product >= 4 {
                return Some((i, j, product));
            }
        }
    }
    None
}

/// The Dynkin type of the principal part when it is an orientation of a
/// (possibly valued) Dynkin diagram.
pub fn identify_dynkin(q: &IceQuiver) -> Option<DynkinType> {
    let n = q.n();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if q.b(i, j) != 0 {
                edges.push((i, j, q.b(i, j).unsigned_abs(), q.b(j, i).unsigned_abs()));
            }
        }
    }
    if edges.len() + 1 != n || !q.is_connected() {
        return None;
    }
    if n == 1 {
        return Some(DynkinType::A(1));
    }
    let degree: Vec<usize> = (0..n).map(|v| q.neighbours(v).len()).collect();
    let valued: Vec<_> = edges.iter().filter(|e| e.2 * e.3 != 1).collect();
    match valued.as_slice() {
        [] => simply_laced_tree(q, &degree),
        [&(a, b, vab, vba)] => {
            if degree.iter().any(|&d| d > 2) {
                return None;
            }
            let product = vab * vba;
            if n == 2 {
                return match product {
                    2 => Some(DynkinType::B(2)),
                    3 => Some(DynkinType::G2),
                    _ => None,
                };
            }
            if product != 2 {
                return None;
            }
            if degree[a] == 1 || degree[b] == 1 {
                // end vertex e with neighbour f; e is short iff |b_ef| = 2
                let (e, f) = if degree[a] == 1 { (a, b) } else { (b, a) };
                let short_end = q.b(e, f).unsigned_abs() == 2;
                Some(if short_end {
                    DynkinType::B(n as u32)
                } else {
                    DynkinType::C(n as u32)
                })
            } else if n == 4 {
                Some(DynkinType::F4)
            } else {
                None
            }
        }
        _ => None,
    }
}

fn simply_laced_tree(q: &IceQuiver, degree: &[usize]) -> Option<DynkinType> {
    let n = q.n() as u32;
    let branch: Vec<usize> = (0..q.n()).filter(|&v| degree[v] >= 3).collect();
    match branch.as_slice() {
        [] => Some(DynkinType::A(n)),
        [c] if degree[*c] == 3 => {
            let mut arms: Vec<u32> = q
                .neighbours(*c)
                .into_iter()
                .map(|start| {
                    let (mut prev, mut cur, mut len) = (*c, start, 1);
                    loop {
                        let next: Vec<usize> =
                            q.neighbours(cur).into_iter().filter(|&u| u != prev).collect();
                        match next.as_slice() {
                            [] => return len,
                            [u] => {
                                prev = cur;
                                cur = *u;
                                len += 1;
                            }
                            _ => unreachable!("single branch vertex"),
                        }
                    }
                })
                .collect();
            arms.sort_unstable();
            match arms.as_slice() {
                [1, 1, k] => Some(DynkinType::D(k + 3)),
                [1, 2, 2] => Some(DynkinType::E(6)),
                [1, 2, 3] => Some(DynkinType::E(7)),
                [1, 2, 4] => Some(DynkinType::E(8)),
                _ => None,
            }
        }
        _ => None,
    }
}

/// Whether the oriented triangle with arrow multiplicities `r, s, t` is
/// mutation-equivalent to a quiver without an oriented 3-cycle.
pub fn markoff_acyclic_test(r: u64, s: u64, t: u64) -> bool {
    let (r, s, t) = (r as i128, s as i128, t as i128);
    r.min(s).min(t) < 2 || r * r + s * s + t * t - r * s * t > 4
}
