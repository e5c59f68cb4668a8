use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use super::rep::QuiverRep;
use crate::error::{Error, Result};
use crate::modular::{is_prime, mul_mod, small_primes, sub_mod};

/// Refuse enumerations with more candidate tuples than this.
pub const ENUMERATION_CAP: u128 = 10_000_000;

/// Number of `k`-dimensional subspaces of `F_p^d`.
pub fn gaussian_binomial(d: usize, k: usize, p: u64) -> u128 {
    if k > d {
        return 0;
    }
    let p = p as u128;
    let (mut num, mut den) = (1u128, 1u128);
    for i in 0..k {
        num = num.saturating_mul(p.saturating_pow((d - i) as u32).saturating_sub(1));
        den = den.saturating_mul(p.saturating_pow((i + 1) as u32).saturating_sub(1));
    }
    if num == u128::MAX {
        return u128::MAX;
    }
    num / den
}

/// A subspace in reduced row-echelon form.
#[derive(Clone, Debug)]
struct Subspace {
    rows: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

impl Subspace {
    fn contains(&self, v: &[u64], p: u64) -> bool {
        let mut v = v.to_vec();
        for (row, &c) in self.rows.iter().zip(&self.pivots) {
            let f = v[c];
            if f != 0 {
                for (x, &r) in v.iter_mut().zip(row) {
                    *x = sub_mod(*x, mul_mod(f, r, p), p);
                }
            }
        }
        v.iter().all(|&x| x == 0)
    }
}

fn combinations(d: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, d: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for c in start..d {
            cur.push(c);
            go(c + 1, d, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, d, k, &mut Vec::new(), &mut out);
    out
}

/// Every `k`-dimensional subspace of `F_p^d`, once each.
fn subspaces(d: usize, k: usize, p: u64) -> Vec<Subspace> {
    let mut out = Vec::new();
    for pivots in combinations(d, k) {
        let free: Vec<(usize, usize)> = (0..k)
            .flat_map(|r| {
                let pivots = &pivots;
                (pivots[r] + 1..d).filter(move |c| !pivots.contains(c)).map(move |c| (r, c))
            })
            .collect();
        let mut fill = vec![0u64; free.len()];
        loop {
            let mut rows = vec![vec![0u64; d]; k];
            for (r, &c) in pivots.iter().enumerate() {
                rows[r][c] = 1;
            }
            for (&(r, c), &x) in free.iter().zip(&fill) {
                rows[r][c] = x;
            }
            out.push(Subspace { rows, pivots: pivots.clone() });
            let mut i = 0;
            while i < fill.len() && fill[i] == p - 1 {
                fill[i] = 0;
                i += 1;
            }
            if i == fill.len() {
                break;
            }
            fill[i] += 1;
        }
    }
    out
}

fn check_e(v: &QuiverRep, e: &[usize]) -> Result<()> {
    if e.len() != v.dims().len() || e.iter().zip(v.dims()).any(|(a, b)| a > b) {
        return Err(Error::domain("bad_dimension_vector", "need 0 <= e <= d componentwise"));
    }
    Ok(())
}

/// The number of subrepresentations of `v` over `F_p` with dimension vector
/// `e`.
pub fn count_subreps(v: &QuiverRep, e: &[usize], p: u64) -> Result<u64> {
    if !is_prime(p) || p > u32::MAX as u64 {
        return Err(Error::domain("not_prime", format!("{p} is not a prime below 2^32")));
    }
    check_e(v, e)?;
    let dims = v.dims();
    let total = dims
        .iter()
        .zip(e)
        .fold(1u128, |acc, (&d, &k)| acc.saturating_mul(gaussian_binomial(d, k, p)));
    if total > ENUMERATION_CAP {
        return Err(Error::domain(
            "too_large",
            format!("{total} candidate subspace tuples exceed the cap of {ENUMERATION_CAP}"),
        ));
    }
    let n = dims.len();
    let choices: Vec<Vec<Subspace>> = (0..n).map(|i| subspaces(dims[i], e[i], p)).collect();
    let mats: Vec<Vec<Vec<u64>>> = v
        .matrices()
        .iter()
        .map(|m| {
            m.iter()
                .map(|row| row.iter().map(|&x| x.rem_euclid(p as i64) as u64).collect())
                .collect()
        })
        .collect();
    // arrows checked once both endpoints are chosen, vertices in index order
    let mut checks: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (k, &(s, t)) in v.arrows().iter().enumerate() {
        checks[s.max(t)].push(k);
    }
    let closed = |chosen: &[&Subspace], k: usize| -> bool {
        let (s, t) = v.arrows()[k];
        let m = &mats[k];
        chosen[s].rows.iter().all(|u| {
            let image: Vec<u64> = m
                .iter()
                .map(|row| row.iter().zip(u).fold(0, |acc, (&a, &b)| (acc + mul_mod(a, b, p)) % p))
                .collect();
            chosen[t].contains(&image, p)
        })
    };
    fn go<'a>(
        depth: usize,
        choices: &'a [Vec<Subspace>],
        checks: &[Vec<usize>],
        chosen: &mut Vec<&'a Subspace>,
        closed: &dyn Fn(&[&Subspace], usize) -> bool,
    ) -> u64 {
        if depth == choices.len() {
            return 1;
        }
        let mut count = 0;
        for s in &choices[depth] {
            chosen.push(s);
            if checks[depth].iter().all(|&k| closed(chosen, k)) {
                count += go(depth + 1, choices, checks, chosen, closed);
            }
            chosen.pop();
        }
        count
    }
    Ok(go(0, &choices, &checks, &mut Vec::new(), &closed))
}

/// A polynomial in `q` with integer coefficients, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CountingPolynomial {
    #[serde(serialize_with = "ser_coeffs")]
    pub coeffs: Vec<BigInt>,
}

fn ser_coeffs<S: serde::Serializer>(c: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(c.iter().map(|x| x.to_string()))
}

impl CountingPolynomial {
    pub fn eval(&self, q: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * q + c)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }
}

/// Interpolating polynomial through `(x, y)` points, with rational
/// coefficients.
fn interpolate(points: &[(u64, u64)]) -> Vec<BigRational> {
    let k = points.len();
    let mut coeffs = vec![BigRational::zero(); k];
    for (i, &(xi, yi)) in points.iter().enumerate() {
        // basis polynomial prod_{j != i} (q - x_j) / (x_i - x_j)
        let mut basis = vec![BigRational::one()];
        let mut denom = BigRational::one();
        for (j, &(xj, _)) in points.iter().enumerate() {
            if j == i {
                continue;
            }
            let xj = BigRational::from_integer(BigInt::from(xj));
            let mut next = vec![BigRational::zero(); basis.len() + 1];
            for (d, c) in basis.iter().enumerate() {
                next[d + 1] += c;
                next[d] -= c * &xj;
            }
            basis = next;
            denom *= BigRational::from_integer(BigInt::from(xi)) - xj;
        }
        let scale = BigRational::from_integer(BigInt::from(yi)) / denom;
        for (d, c) in basis.into_iter().enumerate() {
            coeffs[d] += c * &scale;
        }
    }
    coeffs
}

/// Dimension of the ambient product of Grassmannians.
pub fn degree_bound(v: &QuiverRep, e: &[usize]) -> usize {
    v.dims().iter().zip(e).map(|(&d, &k)| k * (d - k)).sum()
}

/// Recovers the counting polynomial of `Gr_e(v)` from point counts at
/// `max(bound + 1, 3)` primes and checks it against one more prime.
pub fn counting_polynomial(v: &QuiverRep, e: &[usize]) -> Result<CountingPolynomial> {
    check_e(v, e)?;
    let needed = (degree_bound(v, e) + 1).max(3);
    let primes = small_primes(needed + 1);
    let counts: Vec<u64> = primes
        .par_iter()
        .map(|&p| count_subreps(v, e, p))
        .collect::<Result<_>>()?;
    let points: Vec<(u64, u64)> = primes[..needed].iter().copied().zip(counts.iter().copied()).collect();
    let rational = interpolate(&points);
    if rational.iter().any(|c| !c.is_integer()) {
        return Err(Error::domain("not_polynomial_count", "point counts do not fit an integer polynomial"));
    }
    let mut coeffs: Vec<BigInt> = rational.into_iter().map(|c| c.to_integer()).collect();
    while coeffs.len() > 1 && coeffs.last().is_some_and(|c| c.is_zero()) {
        coeffs.pop();
    }
    let poly = CountingPolynomial { coeffs };
    let held_out = primes[needed];
    if poly.eval(&BigInt::from(held_out)) != BigInt::from(counts[needed]) {
        return Err(Error::domain(
            "not_polynomial_count",
            format!("the interpolant misses the count at the held-out prime {held_out}"),
        ));
    }
    Ok(poly)
}

/// The Euler characteristic of `Gr_e(v)`, the counting polynomial at 1.
pub fn euler_char(v: &QuiverRep, e: &[usize]) -> Result<i64> {
    counting_polynomial(v, e)?
        .eval(&BigInt::one())
        .to_i64()
        .ok_or_else(|| Error::integrity("Euler characteristic out of range"))
}

/// Euler characteristic from user-chosen primes: the first `len - 1` are
/// interpolated and the last is held out.
pub fn euler_char_with_primes(v: &QuiverRep, e: &[usize], primes: &[u64]) -> Result<i64> {
    check_e(v, e)?;
    if primes.len() < degree_bound(v, e) + 2 {
        return Err(Error::domain("too_few_primes", "need one prime per coefficient plus one held out"));
    }
    let mut sorted = primes.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != primes.len() {
        return Err(Error::domain("repeated_prime", "primes must be distinct"));
    }
    let counts: Vec<u64> = primes.iter().map(|&p| count_subreps(v, e, p)).collect::<Result<_>>()?;
    let last = primes.len() - 1;
    let points: Vec<(u64, u64)> = primes[..last].iter().copied().zip(counts.iter().copied()).collect();
    let rational = interpolate(&points);
    if rational.iter().any(|c| !c.is_integer()) {
        return Err(Error::domain("not_polynomial_count", "point counts do not fit an integer polynomial"));
    }
    let poly = CountingPolynomial { coeffs: rational.into_iter().map(|c| c.to_integer()).collect() };
    if poly.eval(&BigInt::from(primes[last])) != BigInt::from(counts[last]) {
        return Err(Error::domain("not_polynomial_count", "the interpolant misses the held-out prime"));
    }
    poly.eval(&BigInt::one())
        .to_i64().ok_or_else(|| Error::integrity("Euler characteristic out of range"))
}
