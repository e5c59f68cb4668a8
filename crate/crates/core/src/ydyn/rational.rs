//! Rational functions in `y_1, ..., y_n`.
//!
//! [`RationalFunction`] is an unreduced numerator/denominator pair compared by
//! cross-multiplication. [`FactoredRational`] is the working form used along
//! mutation paths: a rational constant times a Laurent monomial times powers
//! of polynomials from a shared [`FactorBase`]. Sums `1 + Y` are expanded and
//! trial-divided by the known factors, which keeps repeated factors from
//! piling up without a multivariate gcd.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::laurent::LaurentPolynomial;
use crate::modular::{inv_mod, mul_mod, pow_mod};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RationalFunction {
    pub num: LaurentPolynomial,
    pub den: LaurentPolynomial,
}

impl RationalFunction {
    pub fn new(num: LaurentPolynomial, den: LaurentPolynomial) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        RationalFunction { num, den }
    }

    pub fn from_laurent(p: LaurentPolynomial) -> Self {
        let n = p.nvars();
        RationalFunction {
            num: p,
            den: LaurentPolynomial::one(n),
        }
    }

    /// `num_a * den_b == num_b * den_a`.
    pub fn equals(&self, other: &RationalFunction) -> bool {
        self.num.mul(&other.den) == other.num.mul(&self.den)
    }

    pub fn eval_mod(&self, point: &[u64], p: u64) -> Option<u64> {
        let n = self.num.eval_mod(point, p)?;
        let d = self.den.eval_mod(point, p)?;
        Some(mul_mod(n, inv_mod(d, p)?, p))
    }

    pub fn display_with(&self, stem: &str) -> String {
        let num = self.num.display_with(stem);
        if self.den.is_one() {
            return num;
        }
        let den = self.den.display_with(stem);
        let wrap = |s: String, p: &LaurentPolynomial| {
            if p.num_terms() > 1 || !p.min_exponents().iter().all(|&e| e >= 0) {
                format!("({s})")
            } else {
                s
            }
        };
        format!("{}/{}", wrap(num, &self.num), wrap(den, &self.den))
    }
}

impl PartialEq for RationalFunction {
    fn eq(&self, other: &Self) -> bool {
        self.equals(other)
    }
}

/// Polynomials with positive leading coefficient, trivial content and no
/// monomial factor.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FactorBase {
    factors: Vec<LaurentPolynomial>,
}

impl FactorBase {
    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn get(&self, k: usize) -> &LaurentPolynomial {
        &self.factors[k]
    }

    /// Evaluates every factor at `point` mod `p`.
    pub fn eval_mod(&self, point: &[u64], p: u64) -> Vec<Option<u64>> {
        self.factors.iter().map(|f| f.eval_mod(point, p)).collect()
    }

    /// Writes a nonzero polynomial as `c * y^a * prod f_k^{e_k}`, appending
    /// the cofactor left after trial division to the base.
    pub fn factor(&mut self, poly: &LaurentPolynomial) -> FactoredRational {
        assert!(!poly.is_zero(), "cannot factor zero");
        let n = poly.nvars();
        let shift = poly.min_exponents();
        let mut rest = poly.mul_monomial(&shift.iter().map(|e| -e).collect::<Vec<_>>());
        let mut content = rest.content();
        if rest.terms().last().unwrap().1.is_negative() {
            content = -content;
        }
        rest = LaurentPolynomial::from_terms(
            n,
            rest.terms().iter().map(|(e, c)| (e.clone(), c / &content)),
        );
        let mut powers = BTreeMap::new();
        for (k, f) in self.factors.iter().enumerate() {
            if rest.is_one() {
                break;
            }
            while let Some(q) = rest.exact_div(f) {
                *powers.entry(k).or_insert(0) += 1;
                rest = q;
            }
        }
        if !rest.is_one() {
            powers.insert(self.factors.len(), 1);
            self.factors.push(rest);
        }
        FactoredRational {
            coeff: BigRational::from_integer(content),
            mono: shift,
            powers,
        }
    }
}

/// `coeff * y^mono * prod_k base[k]^powers[k]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactoredRational {
    coeff: BigRational,
    mono: Vec<i32>,
    powers: BTreeMap<usize, i32>,
}

impl FactoredRational {
    pub fn one(n: usize) -> Self {
        FactoredRational {
            coeff: BigRational::one(),
            mono: vec![0; n],
            powers: BTreeMap::new(),
        }
    }

    pub fn monomial(mono: Vec<i32>) -> Self {
        FactoredRational {
            coeff: BigRational::one(),
            mono,
            powers: BTreeMap::new(),
        }
    }

    pub fn var(n: usize, i: usize) -> Self {
        let mut mono = vec![0; n];
        mono[i] = 1;
        Self::monomial(mono)
    }

    pub fn mul(&self, other: &FactoredRational) -> FactoredRational {
        let mut powers = self.powers.clone();
        for (&k, &e) in &other.powers {
            let slot = powers.entry(k).or_insert(0);
            *slot += e;
            if *slot == 0 {
                powers.remove(&k);
            }
        }
        FactoredRational {
            coeff: &self.coeff * &other.coeff,
            mono: self.mono.iter().zip(&other.mono).map(|(a, b)| a + b).collect(),
            powers,
        }
    }

    pub fn inv(&self) -> FactoredRational {
        FactoredRational {
            coeff: self.coeff.recip(),
            mono: self.mono.iter().map(|e| -e).collect(),
            powers: self.powers.iter().map(|(&k, &e)| (k, -e)).collect(),
        }
    }

    pub fn pow(&self, e: i32) -> FactoredRational {
        if e == 0 {
            return FactoredRational::one(self.mono.len());
        }
        let base = if e < 0 { self.inv() } else { self.clone() };
        let e = e.unsigned_abs();
        FactoredRational {
            coeff: num_traits::pow(base.coeff.clone(), e as usize),
            mono: base.mono.iter().map(|x| x * e as i32).collect(),
            powers: base.powers.iter().map(|(&k, &x)| (k, x * e as i32)).collect(),
        }
    }

    /// Splits into numerator and denominator parts, each with nonnegative
    /// exponents and positive integer coefficient in the denominator.
    fn split(&self) -> (FactoredRational, FactoredRational) {
        let num = FactoredRational {
            coeff: BigRational::from_integer(self.coeff.numer().clone()),
            mono: self.mono.iter().map(|&e| e.max(0)).collect(),
            powers: self.powers.iter().filter(|(_, &e)| e > 0).map(|(&k, &e)| (k, e)).collect(),
        };
        let den = FactoredRational {
            coeff: BigRational::from_integer(self.coeff.denom().clone()),
            mono: self.mono.iter().map(|&e| (-e).max(0)).collect(),
            powers: self.powers.iter().filter(|(_, &e)| e < 0).map(|(&k, &e)| (k, -e)).collect(),
        };
        (num, den)
    }

    /// Expands a factored value whose exponents are all nonnegative and whose
    /// coefficient is an integer.
    fn expand_polynomial(&self, base: &FactorBase) -> LaurentPolynomial {
        debug_assert!(self.coeff.is_integer());
        let mut out = LaurentPolynomial::monomial(self.mono.clone(), self.coeff.numer().clone());
        for (&k, &e) in &self.powers {
            out = out.mul(&base.get(k).pow(e as u32));
        }
        out
    }

    /// Expanded numerator and denominator polynomials.
    pub fn expand(&self, base: &FactorBase) -> RationalFunction {
        let (num, den) = self.split();
        RationalFunction::new(num.expand_polynomial(base), den.expand_polynomial(base))
    }

    /// `1 + self`, with the new numerator factored against `base`.
    pub fn one_plus(&self, base: &mut FactorBase) -> FactoredRational {
        let (num, den) = self.split();
        let sum = num.expand_polynomial(base).add(&den.expand_polynomial(base));
        if sum.is_zero() {
            panic!("1 + Y vanished identically");
        }
        base.factor(&sum).mul(&den.inv())
    }

    /// Value at `point` mod `p`, given the base factors' values there.
    /// `None` at zeros of the denominator.
    pub fn eval_mod(&self, factor_values: &[Option<u64>], point: &[u64], p: u64) -> Option<u64> {
        let num = crate::laurent::bigint_mod(self.coeff.numer(), p);
        let den = crate::laurent::bigint_mod(self.coeff.denom(), p);
        let mut acc = mul_mod(num, inv_mod(den, p)?, p);
        for (&y, &e) in point.iter().zip(&self.mono) {
            acc = mul_mod(acc, signed_pow(y, e, p)?, p);
        }
        for (&k, &e) in &self.powers {
            acc = mul_mod(acc, signed_pow(factor_values[k]?, e, p)?, p);
        }
        Some(acc)
    }

    /// Equality of values, by representation or cross-multiplication.
    pub fn equals(&self, other: &FactoredRational, base: &FactorBase) -> bool {
        self == other || self.expand(base).equals(&other.expand(base))
    }

    /// Whether the value is 1, comparing expanded numerator and denominator
    /// when the representation is not already trivial.
    pub fn is_one(&self, base: &FactorBase) -> bool {
        let (num, den) = self.split();
        num == den || num.expand_polynomial(base) == den.expand_polynomial(base)
    }

    pub fn is_zero_coefficient(&self) -> bool {
        self.coeff.is_zero()
    }

    /// Builds a factored value from a fraction of Laurent polynomials.
    pub fn from_fraction(rf: &RationalFunction, base: &mut FactorBase) -> FactoredRational {
        base.factor(&rf.num).mul(&base.factor(&rf.den).inv())
    }
}

fn signed_pow(x: u64, e: i32, p: u64) -> Option<u64> {
    if e >= 0 {
        Some(pow_mod(x, e as u64, p))
    } else {
        inv_mod(pow_mod(x, e.unsigned_abs() as u64, p), p)
    }
}
