//! Seeds, exact seed mutation and exchange graphs.
//!
//! A [`Seed`] pairs an ice quiver with `n` cluster variables, each a Laurent
//! polynomial in the initial variables `x_1, ..., x_m`. The frozen variables
//! `x_{n+1}, ..., x_m` are coefficients and never change.

use std::collections::{BTreeSet, HashMap, HashSet};

use rayon::prelude::*;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::laurent::LaurentPolynomial;
use crate::quiver::IceQuiver;

pub const DEFAULT_SEED_CAP: usize = 50_000;
pub const DEFAULT_VARIABLE_CAP: usize = 20_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Seed {
    pub quiver: IceQuiver,
    pub cluster: Vec<LaurentPolynomial>,
}

impl Seed {
    /// The initial seed `(x_1, ..., x_n)`.
    pub fn initial(quiver: IceQuiver) -> Seed {
        let (n, m) = (quiver.n(), quiver.m());
        let cluster = (0..n).map(|i| LaurentPolynomial::var(m, i)).collect();
        Seed { quiver, cluster }
    }

    fn extended_variable(&self, i: usize) -> LaurentPolynomial {
        if i < self.quiver.n() {
            self.cluster[i].clone()
        } else {
            LaurentPolynomial::var(self.quiver.m(), i)
        }
    }

    /// The exchange binomial at `k` (before division by `u_k`).
    fn exchange_numerator(&self, k: usize) -> LaurentPolynomial {
        let m = self.quiver.m();
        let mut plus = LaurentPolynomial::one(m);
        let mut minus = LaurentPolynomial::one(m);
        for i in 0..m {
            let b = self.quiver.b(i, k);
            if b > 0 {
                plus = plus.mul(&self.extended_variable(i).pow(b as u32));
            } else if b < 0 {
                minus = minus.mul(&self.extended_variable(i).pow((-b) as u32));
            }
        }
        plus.add(&minus)
    }

    /// Mutation at the mutable vertex `k`.
    pub fn mutate(&self, k: usize) -> Result<Seed> {
        let quiver = self.quiver.mutate(k)?;
        let numerator = self.exchange_numerator(k);
        let new = numerator.exact_div(&self.cluster[k]).ok_or_else(|| {
            Error::integrity(format!(
                "exchange at vertex {} is not an exact Laurent division",
                k + 1
            ))
        })?;
        let mut cluster = self.cluster.clone();
        cluster[k] = new;
        Ok(Seed { quiver, cluster })
    }

    pub fn mutate_sequence(&self, seq: &[usize]) -> Result<Seed> {
        let mut s = self.clone();
        for &k in seq {
            s = s.mutate(k)?;
        }
        Ok(s)
    }

    /// Renumbers the mutable vertices so that the cluster is sorted; frozen
    /// vertices keep their positions.
    pub fn normalized(&self) -> Seed {
        let n = self.quiver.n();
        let mut idx: Vec<usize> = (0..n).collect();
        idx.sort_by(|&a, &b| self.cluster[a].cmp(&self.cluster[b]));
        // old vertex idx[new] moves to `new`
        let mut perm: Vec<usize> = (0..self.quiver.m()).collect();
        for (new, &old) in idx.iter().enumerate() {
            perm[old] = new;
        }
        Seed {
            quiver: self.quiver.relabel(&perm).expect("mutable permutation"),
            cluster: idx.iter().map(|&i| self.cluster[i].clone()).collect(),
        }
    }

    /// Cluster variables rendered with stem `x`.
    pub fn cluster_strings(&self) -> Vec<String> {
        self.cluster.iter().map(|v| v.display_with("x")).collect()
    }
}

/// Denominator vector of a cluster variable. Initial variables `x_i` have
/// `-e_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DenominatorVector(pub Vec<i32>);

impl DenominatorVector {
    pub fn is_initial(&self) -> bool {
        self.0.iter().filter(|&&d| d != 0).count() == 1 && self.0.contains(&-1)
    }

    /// Denominator vector of `numerator / denominator`, where the
    /// denominator must be a monomial. Only the first `n` variables count.
    pub fn from_fraction(
        numerator: &LaurentPolynomial,
        denominator: &LaurentPolynomial,
        n: usize,
    ) -> Result<Self> {
        if !denominator.is_monomial() {
            return Err(Error::domain(
                "non_monomial_denominator",
                format!("denominator {} is not a monomial", denominator.display_with("x")),
            ));
        }
        let (e, c) = &denominator.terms()[0];
        let inverse = LaurentPolynomial::monomial(e.iter().map(|x| -x).collect(), 1);
        let value = numerator.mul(&inverse);
        if value.terms().iter().any(|(_, k)| !(k % c).is_zero()) {
            return Err(Error::domain("not_laurent", "the fraction is not a Laurent polynomial"));
        }
        let v = LaurentPolynomial::from_terms(
            value.nvars(),
            value.terms().iter().map(|(e, k)| (e.clone(), k / c)),
        );
        let mut d = denominator_vector(&v)?;
        d.0.truncate(n);
        Ok(d)
    }
}

/// The exponent vector of the monomial denominator of `v`, or `-e_i` when
/// `v = x_i`.
pub fn denominator_vector(v: &LaurentPolynomial) -> Result<DenominatorVector> {
    if v.is_zero() {
        return Err(Error::domain("zero", "zero has no denominator vector"));
    }
    if v.is_monomial() {
        let (e, c) = &v.terms()[0];
        let ones = e.iter().filter(|&&x| x == 1).count();
        if *c == 1.into() && ones == 1 && e.iter().all(|&x| x == 0 || x == 1) {
            return Ok(DenominatorVector(e.iter().map(|&x| -x).collect()));
        }
    }
    Ok(DenominatorVector(v.denominator_exponents()))
}

#[derive(Clone, Debug)]
pub struct ExchangeOptions {
    pub seed_cap: usize,
    pub variable_cap: usize,
}

impl Default for ExchangeOptions {
    fn default() -> Self {
        ExchangeOptions {
            seed_cap: DEFAULT_SEED_CAP,
            variable_cap: DEFAULT_VARIABLE_CAP,
        }
    }
}

/// Seeds up to simultaneous renumbering, joined by single mutations.
#[derive(Clone, Debug, Serialize)]
pub struct ExchangeGraph {
    /// Normalized seeds; index 0 is the initial seed.
    pub seeds: Vec<Seed>,
    /// Unordered pairs of seed indices, `a < b`, sorted.
    pub edges: Vec<(usize, usize)>,
    /// All cluster variables found, sorted.
    pub variables: Vec<LaurentPolynomial>,
    /// False when a cap stopped the search.
    pub complete: bool,
}

impl ExchangeGraph {
    pub fn degree(&self, seed: usize) -> usize {
        self.edges
            .iter()
            .filter(|&&(a, b)| a == seed || b == seed)
            .count()
    }

    pub fn is_regular(&self, k: usize) -> bool {
        let mut deg = vec![0usize; self.seeds.len()];
        for &(a, b) in &self.edges {
            deg[a] += 1;
            deg[b] += 1;
        }
        deg.into_iter().all(|d| d == k)
    }
}

/// Breadth-first enumeration of the exchange graph. Seeds are identified by
/// their sorted cluster; a second seed with the same cluster but a different
/// quiver is an integrity error.
pub fn exchange_graph(q: &IceQuiver, options: &ExchangeOptions) -> Result<ExchangeGraph> {
    let n = q.n();
    let start = Seed::initial(q.clone()).normalized();
    let mut index: HashMap<Vec<LaurentPolynomial>, usize> = HashMap::new();
    index.insert(start.cluster.clone(), 0);
    let mut variables: BTreeSet<LaurentPolynomial> = start.cluster.iter().cloned().collect();
    let mut seeds = vec![start];
    let mut edges: HashSet<(usize, usize)> = HashSet::new();
    let mut frontier = 0..1;
    let mut complete = true;
    'bfs: while !frontier.is_empty() {
        let children: Vec<Result<(usize, Seed)>> = frontier
            .clone()
            .into_par_iter()
            .flat_map_iter(|s| {
                let seed = &seeds[s];
                (0..n).map(move |k| seed.mutate(k).map(|c| (s, c.normalized())))
            })
            .collect();
        let level_start = seeds.len();
        for child in children {
            let (parent, child) = child?;
            let target = match index.get(&child.cluster) {
                Some(&t) => {
                    if seeds[t].quiver != child.quiver {
                        return Err(Error::integrity(
                            "two seeds share a cluster but not a quiver",
                        ));
                    }
                    t
                }
                None => {
                    if seeds.len() >= options.seed_cap {
                        complete = false;
                        break 'bfs;
                    }
                    variables.extend(child.cluster.iter().cloned());
                    let t = seeds.len();
                    index.insert(child.cluster.clone(), t);
                    seeds.push(child);
                    if variables.len() > options.variable_cap {
                        complete = false;
                        edges.insert((parent.min(t), parent.max(t)));
                        break 'bfs;
                    }
                    t
                }
            };
            edges.insert((parent.min(target), parent.max(target)));
        }
        frontier = level_start..seeds.len();
    }
    let mut edges: Vec<(usize, usize)> = edges.into_iter().collect();
    edges.sort_unstable();
    Ok(ExchangeGraph {
        seeds,
        edges,
        variables: variables.into_iter().collect(),
        complete,
    })
}

/// All cluster variables reachable from the initial seed.
pub fn all_cluster_variables(
    q: &IceQuiver,
    options: &ExchangeOptions,
) -> Result<Vec<LaurentPolynomial>> {
    Ok(exchange_graph(q, options)?.variables)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::examples;

    fn strings(vs: &[LaurentPolynomial]) -> Vec<String> {
        vs.iter().map(|v| v.display_with("x")).collect()
    }

    #[test]
    fn a2_first_exchange() {
        let s = Seed::initial(examples::linear_a(2)).mutate(0).unwrap();
        assert_eq!(s.cluster_strings(), ["(1+x2)/x1", "x2"]);
        assert_eq!(s.mutate(0).unwrap(), Seed::initial(examples::linear_a(2)));
    }

    #[test]
    fn cyclic_triangle_exchanges() {
        let s = Seed::initial(examples::cyclic_triangle()).mutate(0).unwrap();
        assert_eq!(s.cluster_strings()[0], "(x2+x3)/x1");
        let s = s.mutate(1).unwrap();
        assert_eq!(s.cluster_strings()[1], "(x1+x2+x3)/(x1x2)");
    }

    #[test]
    fn denominator_vectors() {
        let a = Seed::initial(examples::linear_a(2)).mutate_sequence(&[0, 1]).unwrap();
        assert_eq!(denominator_vector(&a.cluster[1]).unwrap().0, [1, 1]);
        let x3 = LaurentPolynomial::var(3, 2);
        let d = denominator_vector(&x3).unwrap();
        assert_eq!(d.0, [0, 0, -1]);
        assert!(d.is_initial());
        let num = LaurentPolynomial::one(2).add(&LaurentPolynomial::var(2, 0));
        let den = num.clone();
        assert_eq!(
            DenominatorVector::from_fraction(&num, &den, 2).unwrap_err().code(),
            "non_monomial_denominator"
        );
    }

    #[test]
    fn small_exchange_graphs() {
        let a1 = exchange_graph(&examples::linear_a(1), &ExchangeOptions::default()).unwrap();
        assert_eq!(a1.seeds.len(), 2);
        assert_eq!(a1.edges, [(0, 1)]);
        assert_eq!(strings(&a1.variables), ["2/x1", "x1"]);

        let a2 = exchange_graph(&examples::linear_a(2), &ExchangeOptions::default()).unwrap();
        assert_eq!((a2.seeds.len(), a2.edges.len(), a2.variables.len()), (5, 5, 5));
        assert!(a2.is_regular(2));
    }

    #[test]
    fn frozen_variables_are_coefficients() {
        // 1 -> 2 with a frozen vertex 3 -> 1
        let q = IceQuiver::ice_from_arrows(2, 3, &[(0, 1), (2, 0)]).unwrap();
        let s = Seed::initial(q).mutate(0).unwrap();
        assert_eq!(s.cluster_strings()[0], "(x2+x3)/x1");
        let g = exchange_graph(&s.quiver, &ExchangeOptions::default()).unwrap();
        assert_eq!(g.seeds.len(), 5);
    }

    #[test]
    fn caps_stop_the_search() {
        let opts = ExchangeOptions {
            seed_cap: 3,
            variable_cap: 100,
        };
        let g = exchange_graph(&examples::linear_a(3), &opts).unwrap();
        assert!(!g.complete);
        assert_eq!(g.seeds.len(), 3);
    }
}
