//! Sparse multivariate Laurent polynomials with arbitrary-precision integer
//! coefficients.
//!
//! A [`LaurentPolynomial`] is kept in a canonical form: terms sorted by
//! exponent vector (lexicographically, ascending) with no zero coefficients.
//! Two values are therefore equal iff they are equal as Laurent polynomials,
//! and the derived `Ord` gives a deterministic total order used to sort
//! clusters and variable sets.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use rustc_hash::FxHashMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::packing::Packing;

pub type Exponents = Vec<i32>;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct LaurentPolynomial {
    nvars: usize,
    terms: Vec<(Exponents, BigInt)>,
}

impl LaurentPolynomial {
    pub fn zero(nvars: usize) -> Self {
        Self {
            nvars,
            terms: Vec::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigInt::one())
    }

    pub fn constant(nvars: usize, c: impl Into<BigInt>) -> Self {
        Self::monomial(vec![0; nvars], c)
    }

    /// The variable `x_{index+1}` (indices are 0-based here).
    pub fn var(nvars: usize, index: usize) -> Self {
        assert!(index < nvars, "variable index {index} out of range");
        let mut e = vec![0; nvars];
        e[index] = 1;
        Self::monomial(e, 1)
    }

    pub fn monomial(exponents: Exponents, coeff: impl Into<BigInt>) -> Self {
        let coeff = coeff.into();
        let nvars = exponents.len();
        if coeff.is_zero() {
            return Self::zero(nvars);
        }
        Self {
            nvars,
            terms: vec![(exponents, coeff)],
        }
    }

    /// Builds a polynomial from arbitrary (possibly repeated, possibly zero)
    /// terms.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Exponents, BigInt)>,
    {
        let mut acc: BTreeMap<Exponents, BigInt> = BTreeMap::new();
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent vector has wrong length");
            *acc.entry(e).or_insert_with(BigInt::zero) += c;
        }
        Self {
            nvars,
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    fn from_map(nvars: usize, map: HashMap<Exponents, BigInt>) -> Self {
        let mut terms: Vec<_> = map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        Self { nvars, terms }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[(Exponents, BigInt)] {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].1.is_one() && self.terms[0].0.iter().all(|&e| e == 0)
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// True when no exponent is negative.
    pub fn is_polynomial(&self) -> bool {
        self.terms.iter().all(|(e, _)| e.iter().all(|&x| x >= 0))
    }

    pub fn coefficients_positive(&self) -> bool {
        self.terms.iter().all(|(_, c)| c.is_positive())
    }

    /// Coefficient of the given monomial (zero if absent).
    pub fn coeff(&self, exponents: &[i32]) -> BigInt {
        match self.terms.binary_search_by(|(e, _)| e.as_slice().cmp(exponents)) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => BigInt::zero(),
        }
    }

    /// Componentwise minimum of the exponent vectors.
    pub fn min_exponents(&self) -> Exponents {
        self.fold_exponents(i32::min)
    }

    /// Componentwise maximum of the exponent vectors.
    pub fn max_exponents(&self) -> Exponents {
        self.fold_exponents(i32::max)
    }

    fn fold_exponents(&self, f: fn(i32, i32) -> i32) -> Exponents {
        let mut it = self.terms.iter();
        let mut acc = match it.next() {
            Some((e, _)) => e.clone(),
            None => return vec![0; self.nvars],
        };
        for (e, _) in it {
            for (a, &b) in acc.iter_mut().zip(e) {
                *a = f(*a, b);
            }
        }
        acc
    }

    /// Exponents of the monomial denominator: `max(0, -min_i)` per variable.
    pub fn denominator_exponents(&self) -> Exponents {
        self.min_exponents().into_iter().map(|e| (-e).max(0)).collect()
    }

    /// The polynomial numerator `self * x^denominator`.
    pub fn numerator(&self) -> LaurentPolynomial {
        self.mul_monomial(&self.denominator_exponents())
    }

    /// Total degree of the highest-degree term.
    pub fn total_degree(&self) -> i64 {
        self.terms
            .iter()
            .map(|(e, _)| e.iter().map(|&x| x as i64).sum::<i64>())
            .max()
            .unwrap_or(0)
    }

    pub fn mul_monomial(&self, shift: &[i32]) -> LaurentPolynomial {
        debug_assert_eq!(shift.len(), self.nvars);
        Self {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (add_exps(e, shift), c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, k: &BigInt) -> LaurentPolynomial {
        if k.is_zero() {
            return Self::zero(self.nvars);
        }
        Self {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * k)).collect(),
        }
    }

    pub fn add(&self, other: &LaurentPolynomial) -> LaurentPolynomial {
        assert_eq!(self.nvars, other.nvars);
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (a, b) = (&self.terms[i], &other.terms[j]);
            match a.0.cmp(&b.0) {
                std::cmp::Ordering::Less => {
                    out.push(a.clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b.clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = &a.1 + &b.1;
                    if !c.is_zero() {
                        out.push((a.0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&other.terms[j..]);
        Self {
            nvars: self.nvars,
            terms: out,
        }
    }

    pub fn neg(&self) -> LaurentPolynomial {
        Self {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &LaurentPolynomial) -> LaurentPolynomial {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &LaurentPolynomial) -> LaurentPolynomial {
        assert_eq!(self.nvars, other.nvars);
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.nvars);
        }
        if other.is_monomial() {
            let (e, c) = &other.terms[0];
            return self.mul_monomial(e).scale_if_needed(c);
        }
        if self.is_monomial() {
            let (e, c) = &self.terms[0];
            return other.mul_monomial(e).scale_if_needed(c);
        }
        let (amin, amax) = (self.min_exponents(), self.max_exponents());
        let (bmin, bmax) = (other.min_exponents(), other.max_exponents());
        let lo = add_exps(&amin, &bmin);
        let hi = add_exps(&amax, &bmax);
        if let Some(p) = self.mul_dense(other, (&amin, &bmin, &lo, &hi)) {
            return p;
        }
        match Packing::new(&lo, &hi) {
            Some(packing) => self.mul_packed(other, &packing, (&amin, &bmin, &lo)),
            None => self.mul_generic(other),
        }
    }

    fn mul_generic(&self, other: &LaurentPolynomial) -> LaurentPolynomial {
        let mut acc: HashMap<Exponents, BigInt> =
            HashMap::with_capacity((self.terms.len() * other.terms.len() / 2 + 1).min(1 << 16));
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = add_exps(ea, eb);
                match acc.get_mut(&e) {
                    Some(c) => *c += ca * cb,
                    None => {
                        acc.insert(e, ca * cb);
                    }
                }
            }
        }
        Self::from_map(self.nvars, acc)
    }

    /// Multiplication into a dense array over the exponent box, used when
    /// the box is small compared with the number of term products and the
    /// coefficients fit in `i128`.
    fn mul_dense(
        &self,
        other: &LaurentPolynomial,
        (amin, bmin, lo, hi): (&[i32], &[i32], &[i32], &[i32]),
    ) -> Option<LaurentPolynomial> {
        const DENSE_LIMIT: u64 = 1 << 22;
        let n = self.nvars;
        let mut strides = vec![0u64; n];
        let mut volume = 1u64;
        for v in (0..n).rev() {
            strides[v] = volume;
            volume = volume.checked_mul((hi[v] - lo[v]) as u64 + 1)?;
            if volume > DENSE_LIMIT {
                return None;
            }
        }
        let products = (self.terms.len() as u64).saturating_mul(other.terms.len() as u64);
        if volume > products.saturating_mul(4) {
            return None;
        }
        let coeffs = |p: &LaurentPolynomial| -> Option<Vec<i64>> {
            p.terms.iter().map(|(_, c)| c.to_i64()).collect()
        };
        let (ca, cb) = (coeffs(self)?, coeffs(other)?);
        let bits = |c: &[i64]| 64 - c.iter().map(|x| x.unsigned_abs()).max().unwrap_or(0).leading_zeros();
        let count = 64 - (ca.len().min(cb.len()) as u64).leading_zeros();
        if bits(&ca) + bits(&cb) + count > 125 {
            return None;
        }
        let index = |e: &[i32], base: &[i32]| -> usize {
            e.iter().zip(base).zip(&strides).map(|((&x, &b), &s)| (x - b) as u64 * s).sum::<u64>() as usize
        };
        let ia: Vec<usize> = self.terms.iter().map(|(e, _)| index(e, amin)).collect();
        let ib: Vec<usize> = other.terms.iter().map(|(e, _)| index(e, bmin)).collect();
        let mut acc = vec![0i128; volume as usize];
        for (&ka, &xa) in ia.iter().zip(&ca) {
            let xa = xa as i128;
            for (&kb, &xb) in ib.iter().zip(&cb) {
                acc[ka + kb] += xa * xb as i128;
            }
        }
        let terms = acc
            .iter()
            .enumerate()
            .filter(|&(_, &c)| c != 0)
            .map(|(k, &c)| {
                let mut rest = k as u64;
                let e = (0..n)
                    .map(|v| {
                        let x = rest / strides[v];
                        rest %= strides[v];
                        lo[v] + x as i32
                    })
                    .collect();
                (e, BigInt::from(c))
            })
            .collect();
        Some(Self { nvars: n, terms })
    }

    /// Multiplication with packed keys; coefficients stay in `i128` when the
    /// sizes guarantee no overflow.
    fn mul_packed(
        &self,
        other: &LaurentPolynomial,
        packing: &Packing,
        (amin, bmin, lo): (&[i32], &[i32], &[i32]),
    ) -> LaurentPolynomial {
        let a: Vec<u128> = self.terms.iter().map(|(e, _)| packing.pack(e, amin)).collect();
        let b: Vec<u128> = other.terms.iter().map(|(e, _)| packing.pack(e, bmin)).collect();
        let cap = (a.len() * b.len() / 2 + 1).min(1 << 16);
        let small = |p: &LaurentPolynomial| -> Option<Vec<i64>> {
            p.terms.iter().map(|(_, c)| c.to_i64()).collect()
        };
        let bits = |c: &[i64]| 64 - c.iter().map(|x| x.unsigned_abs()).max().unwrap_or(0).leading_zeros();
        let fits = |ca: &[i64], cb: &[i64]| {
            let count = 64 - (a.len().min(b.len()) as u64).leading_zeros();
            bits(ca) + bits(cb) + count <= 125
        };
        let mut out: Vec<(u128, BigInt)> = match (small(self), small(other)) {
            (Some(ca), Some(cb)) if fits(&ca, &cb) => {
                let mut acc: FxHashMap<u128, i128> =
                    FxHashMap::with_capacity_and_hasher(cap, Default::default());
                for (&ka, &xa) in a.iter().zip(&ca) {
                    for (&kb, &xb) in b.iter().zip(&cb) {
                        *acc.entry(ka + kb).or_insert(0) += xa as i128 * xb as i128;
                    }
                }
                acc.into_iter()
                    .filter(|&(_, c)| c != 0)
                    .map(|(k, c)| (k, BigInt::from(c)))
                    .collect()
            }
            _ => {
                let mut acc: FxHashMap<u128, BigInt> =
                    FxHashMap::with_capacity_and_hasher(cap, Default::default());
                for (&ka, (_, xa)) in a.iter().zip(&self.terms) {
                    for (&kb, (_, xb)) in b.iter().zip(&other.terms) {
                        *acc.entry(ka + kb).or_insert_with(BigInt::zero) += xa * xb;
                    }
                }
                acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
            }
        };
        out.sort_unstable_by_key(|&(k, _)| k);
        Self {
            nvars: self.nvars,
            terms: out.into_iter().map(|(k, c)| (packing.unpack(k, lo), c)).collect(),
        }
    }

    fn scale_if_needed(self, c: &BigInt) -> Self {
        if c.is_one() {
            self
        } else {
            self.scale(c)
        }
    }

    pub fn pow(&self, exp: u32) -> LaurentPolynomial {
        if exp == 0 {
            return Self::one(self.nvars);
        }
        if self.is_monomial() {
            let (e, c) = &self.terms[0];
            let e = e.iter().map(|&x| x * exp as i32).collect();
            return Self::monomial(e, num_traits::pow(c.clone(), exp as usize));
        }
        let mut result = Self::one(self.nvars);
        let mut base = self.clone();
        let mut k = exp;
        loop {
            if k & 1 == 1 {
                result = result.mul(&base);
            }
            k >>= 1;
            if k == 0 {
                break;
            }
            base = base.mul(&base);
        }
        result
    }

    /// Exact division in the Laurent polynomial ring.
    ///
    /// Returns `None` when `divisor` does not divide `self` (or is zero).
    /// Every term of an exact quotient lies in the box bounded by the
    /// per-variable degree differences, which bounds the search.
    pub fn exact_div(&self, divisor: &LaurentPolynomial) -> Option<LaurentPolynomial> {
        assert_eq!(self.nvars, divisor.nvars);
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero(self.nvars));
        }
        if divisor.is_monomial() {
            let (e, c) = &divisor.terms[0];
            let shift: Exponents = e.iter().map(|&x| -x).collect();
            let mut terms = Vec::with_capacity(self.terms.len());
            for (te, tc) in &self.terms {
                let (q, r) = tc.div_rem(c);
                if !r.is_zero() {
                    return None;
                }
                terms.push((add_exps(te, &shift), q));
            }
            return Some(Self {
                nvars: self.nvars,
                terms,
            });
        }
        if self.terms.len() < divisor.terms.len() {
            return None;
        }

        let lo: Exponents = sub_exps(&self.min_exponents(), &divisor.min_exponents());
        let hi: Exponents = sub_exps(&self.max_exponents(), &divisor.max_exponents());
        if lo.iter().zip(&hi).any(|(a, b)| a > b) {
            return None;
        }
        let smin = self.min_exponents();
        if let Some(packing) = Packing::new(&smin, &self.max_exponents()) {
            return self.exact_div_packed(divisor, &packing, (&lo, &hi));
        }
        let (lead_e, lead_c) = divisor.terms.last().unwrap();

        let mut rem: BTreeMap<Exponents, BigInt> = self.terms.iter().cloned().collect();
        let mut quotient: Vec<(Exponents, BigInt)> = Vec::new();
        while let Some((re, rc)) = rem.iter().next_back() {
            let qe = sub_exps(re, lead_e);
            if qe.iter().zip(lo.iter().zip(&hi)).any(|(x, (l, h))| x < l || x > h) {
                return None;
            }
            let (qc, r) = rc.div_rem(lead_c);
            if !r.is_zero() {
                return None;
            }
            for (de, dc) in &divisor.terms {
                let e = add_exps(&qe, de);
                let delta = &qc * dc;
                match rem.get_mut(&e) {
                    Some(c) => {
                        *c -= delta;
                        if c.is_zero() {
                            rem.remove(&e);
                        }
                    }
                    None => {
                        rem.insert(e, -delta);
                    }
                }
            }
            quotient.push((qe, qc));
        }
        quotient.reverse();
        Some(Self {
            nvars: self.nvars,
            terms: quotient,
        })
    }

    /// Long division with packed keys. Keys of the remainder are measured
    /// from the lower corner of `self`, quotient keys from `lo` and divisor
    /// keys from the divisor's lower corner, so that `rem = quot + div`
    /// holds on keys.
    fn exact_div_packed(
        &self,
        divisor: &LaurentPolynomial,
        packing: &Packing,
        (lo, hi): (&[i32], &[i32]),
    ) -> Option<LaurentPolynomial> {
        let n = self.nvars;
        let smin = self.min_exponents();
        let dmin = divisor.min_exponents();
        let span: Vec<u128> = lo.iter().zip(hi).map(|(&l, &h)| (h - l) as u128).collect();
        let div: Vec<(u128, &BigInt)> =
            divisor.terms.iter().map(|(e, c)| (packing.pack(e, &dmin), c)).collect();
        if let Ok(q) = Self::exact_div_small(self, divisor, packing, (lo, &span, &smin, &dmin)) {
            return q;
        }
        let (lead_k, lead_c) = *div.last().unwrap();
        let mut rem: BTreeMap<u128, BigInt> =
            self.terms.iter().map(|(e, c)| (packing.pack(e, &smin), c.clone())).collect();
        let mut quotient: Vec<(u128, BigInt)> = Vec::new();
        while let Some((&rk, rc)) = rem.iter().next_back() {
            for v in 0..n {
                let (r, d) = (packing.field(rk, v), packing.field(lead_k, v));
                if r < d || r - d > span[v] {
                    return None;
                }
            }
            let qk = rk - lead_k;
            let (qc, r) = rc.div_rem(lead_c);
            if !r.is_zero() {
                return None;
            }
            for &(dk, dc) in &div {
                let delta = &qc * dc;
                match rem.entry(qk + dk) {
                    std::collections::btree_map::Entry::Occupied(mut slot) => {
                        *slot.get_mut() -= delta;
                        if slot.get().is_zero() {
                            slot.remove();
                        }
                    }
                    std::collections::btree_map::Entry::Vacant(slot) => {
                        slot.insert(-delta);
                    }
                }
            }
            quotient.push((qk, qc));
        }
        quotient.reverse();
        Some(Self {
            nvars: n,
            terms: quotient.into_iter().map(|(k, c)| (packing.unpack(k, lo), c)).collect(),
        })
    }

    /// The packed division in `i128`; `Err` on overflow.
    fn exact_div_small(
        &self,
        divisor: &LaurentPolynomial,
        packing: &Packing,
        (lo, span, smin, dmin): (&[i32], &[u128], &[i32], &[i32]),
    ) -> std::result::Result<Option<LaurentPolynomial>, ()> {
        let small = |c: &BigInt| c.to_i128().filter(|x| x.unsigned_abs() < 1 << 100).ok_or(());
        let div: Vec<(u128, i128)> = divisor
            .terms
            .iter()
            .map(|(e, c)| Ok((packing.pack(e, dmin), small(c)?)))
            .collect::<std::result::Result<_, ()>>()?;
        let (lead_k, lead_c) = *div.last().unwrap();
        let mut rem: BTreeMap<u128, i128> = self
            .terms
            .iter()
            .map(|(e, c)| Ok((packing.pack(e, smin), small(c)?)))
            .collect::<std::result::Result<_, ()>>()?;
        let mut quotient: Vec<(u128, i128)> = Vec::new();
        while let Some((&rk, &rc)) = rem.iter().next_back() {
            for (v, &sp) in span.iter().enumerate() {
                let (r, d) = (packing.field(rk, v), packing.field(lead_k, v));
                if r < d || r - d > sp {
                    return Ok(None);
                }
            }
            let qk = rk - lead_k;
            if rc % lead_c != 0 {
                return Ok(None);
            }
            let qc = rc / lead_c;
            for &(dk, dc) in &div {
                let delta = qc.checked_mul(dc).ok_or(())?;
                let slot = rem.entry(qk + dk).or_insert(0);
                *slot = slot.checked_sub(delta).ok_or(())?;
                if *slot == 0 {
                    rem.remove(&(qk + dk));
                }
            }
            quotient.push((qk, qc));
        }
        quotient.reverse();
        Ok(Some(Self {
            nvars: self.nvars,
            terms: quotient
                .into_iter()
                .map(|(k, c)| (packing.unpack(k, lo), BigInt::from(c)))
                .collect(),
        }))
    }

    /// Gcd of the integer coefficients (zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for (_, c) in &self.terms {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Evaluates at a point modulo the prime `p`. Returns `None` if a
    /// variable raised to a negative power vanishes at the point.
    pub fn eval_mod(&self, point: &[u64], p: u64) -> Option<u64> {
        use crate::modular::{inv_mod, mul_mod, pow_mod};
        assert_eq!(point.len(), self.nvars);
        let mut invs: Vec<Option<u64>> = vec![None; self.nvars];
        let mut acc: u64 = 0;
        for (e, c) in &self.terms {
            let mut t = bigint_mod(c, p);
            for (i, &x) in e.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                let base = if x > 0 {
                    point[i] % p
                } else {
                    if invs[i].is_none() {
                        invs[i] = Some(inv_mod(point[i] % p, p)?);
                    }
                    invs[i].unwrap()
                };
                t = mul_mod(t, pow_mod(base, x.unsigned_abs() as u64, p), p);
            }
            acc = crate::modular::add_mod(acc, t, p);
        }
        Some(acc)
    }

    /// Substitutes `x_i -> 1` for every variable, i.e. the sum of coefficients.
    pub fn eval_at_ones(&self) -> BigInt {
        self.terms.iter().map(|(_, c)| c.clone()).sum()
    }

    /// Renders the polynomial as `numerator/denominator` with the given
    /// variable stem (`x1`, `y2`, ...).
    pub fn display_with(&self, stem: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let den = self.denominator_exponents();
        let num = self.mul_monomial(&den);
        let num_s = format_polynomial(&num, stem);
        if den.iter().all(|&d| d == 0) {
            return num_s;
        }
        let den_s = format_monomial(&den, stem);
        let num_s = if num.num_terms() > 1 {
            format!("({num_s})")
        } else {
            num_s
        };
        let den_factors = den.iter().filter(|&&d| d != 0).count();
        if den_factors == 1 && den.iter().all(|&d| d <= 1) {
            format!("{num_s}/{den_s}")
        } else {
            format!("{num_s}/({den_s})")
        }
    }
}

pub(crate) fn add_exps(a: &[i32], b: &[i32]) -> Exponents {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub(crate) fn sub_exps(a: &[i32], b: &[i32]) -> Exponents {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub(crate) fn bigint_mod(c: &BigInt, p: u64) -> u64 {
    let r = c.mod_floor(&BigInt::from(p));
    r.to_u64().expect("residue fits in u64")
}

fn format_monomial(e: &[i32], stem: &str) -> String {
    let mut s = String::new();
    for (i, &x) in e.iter().enumerate() {
        match x {
            0 => {}
            1 => s.push_str(&format!("{stem}{}", i + 1)),
            _ => s.push_str(&format!("{stem}{}^{x}", i + 1)),
        }
    }
    s
}

/// Graded order: ascending total degree, then lexicographically
/// descending so that `x1` precedes `x2`.
fn format_polynomial(p: &LaurentPolynomial, stem: &str) -> String {
    let mut terms: Vec<&(Exponents, BigInt)> = p.terms.iter().collect();
    terms.sort_by(|a, b| {
        let da: i64 = a.0.iter().map(|&x| x as i64).sum();
        let db: i64 = b.0.iter().map(|&x| x as i64).sum();
        da.cmp(&db).then_with(|| b.0.cmp(&a.0))
    });
    let mut s = String::new();
    for (k, (e, c)) in terms.into_iter().enumerate() {
        let mono = format_monomial(e, stem);
        let neg = c.is_negative();
        let abs = c.abs();
        if k > 0 {
            s.push(if neg { '-' } else { '+' });
        } else if neg {
            s.push('-');
        }
        if mono.is_empty() {
            s.push_str(&abs.to_string());
        } else {
            if !abs.is_one() {
                s.push_str(&abs.to_string());
            }
            s.push_str(&mono);
        }
    }
    s
}

impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with("x"))
    }
}

/// JSON form: a list of `[[e_1, ..., e_m], "coefficient"]` pairs.
impl Serialize for LaurentPolynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = serializer.serialize_seq(Some(self.terms.len()))?;
        for (e, c) in &self.terms {
            seq.serialize_element(&(e, c.to_string()))?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for LaurentPolynomial {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw: Vec<(Exponents, String)> = Vec::deserialize(deserializer)?;
        let nvars = raw.first().map(|(e, _)| e.len()).unwrap_or(0);
        let mut terms = Vec::with_capacity(raw.len());
        for (e, c) in raw {
            if e.len() != nvars {
                return Err(D::Error::custom("inconsistent exponent vector lengths"));
            }
            let c: BigInt = c
                .trim()
                .parse()
                .map_err(|_| D::Error::custom(format!("bad coefficient {c:?}")))?;
            terms.push((e, c));
        }
        Ok(LaurentPolynomial::from_terms(nvars, terms))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(n: usize, i: usize) -> LaurentPolynomial {
        LaurentPolynomial::var(n, i)
    }

    #[test]
    fn exact_division_recovers_factor() {
        let n = 3;
        let one = LaurentPolynomial::one(n);
        let a = one.add(&x(n, 0)).add(&x(n, 1).mul(&x(n, 2)));
        let b = x(n, 1).add(&x(n, 2).pow(2)).add(&one);
        let prod = a.mul(&b);
        assert_eq!(prod.exact_div(&b).unwrap(), a);
        assert_eq!(prod.exact_div(&a).unwrap(), b);
    }

    #[test]
    fn inexact_division_fails() {
        let n = 2;
        let one = LaurentPolynomial::one(n);
        let a = one.add(&x(n, 0));
        let b = one.add(&x(n, 1));
        assert!(a.exact_div(&b).is_none());
        let two_x = x(n, 0).scale(&BigInt::from(2));
        assert!(x(n, 0).exact_div(&two_x).is_none());
        assert!(a.exact_div(&LaurentPolynomial::zero(n)).is_none());
    }

    #[test]
    fn laurent_division_by_monomial() {
        let n = 2;
        let p = LaurentPolynomial::one(n).add(&x(n, 1));
        let q = p.exact_div(&x(n, 0)).unwrap();
        assert_eq!(q.to_string(), "(1+x2)/x1");
        assert_eq!(q.denominator_exponents(), vec![1, 0]);
    }

    #[test]
    fn display_matches_fraction_form() {
        let n = 3;
        let one = LaurentPolynomial::one(n);
        let num = x(n, 0).add(&x(n, 2)).add(&x(n, 1).mul(&x(n, 2)));
        let v = num.exact_div(&x(n, 1).mul(&x(n, 2))).unwrap();
        assert_eq!(v.to_string(), "(x1+x3+x2x3)/(x2x3)");
        let g = one.add(&x(n, 0).pow(3)).exact_div(&x(n, 0).pow(3).mul(&x(n, 1))).unwrap();
        assert_eq!(g.to_string(), "(1+x1^3)/(x1^3x2)");
        assert_eq!(x(n, 2).to_string(), "x3");
        assert_eq!(LaurentPolynomial::constant(1, 2).exact_div(&x(1, 0)).unwrap().to_string(), "2/x1");
        assert_eq!(one.sub(&x(n, 0)).to_string(), "1-x1");
    }

    #[test]
    fn json_term_list_round_trip() {
        let p = LaurentPolynomial::from_terms(
            2,
            vec![(vec![-1, 0], BigInt::from(1)), (vec![-1, 1], BigInt::from(12345678901234567890u64))],
        );
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"[[[-1,0],"1"],[[-1,1],"12345678901234567890"]]"#);
        let back: LaurentPolynomial = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn modular_evaluation() {
        let n = 2;
        let p = LaurentPolynomial::one(n).add(&x(n, 1)).exact_div(&x(n, 0)).unwrap();
        // (1 + 3) / 2 mod 7 = 2
        assert_eq!(p.eval_mod(&[2, 3], 7), Some(2));
        assert_eq!(p.eval_mod(&[7, 3], 7), None);
    }

    #[test]
    fn pow_matches_repeated_multiplication() {
        let n = 2;
        let p = LaurentPolynomial::one(n).add(&x(n, 0)).add(&x(n, 1).scale(&BigInt::from(-2)));
        let mut q = LaurentPolynomial::one(n);
        for _ in 0..5 {
            q = q.mul(&p);
        }
        assert_eq!(p.pow(5), q);
    }
}
