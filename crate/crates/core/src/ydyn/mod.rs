//! Y-seeds: tropical y-variables (c-vectors), F-polynomials and Y-variables.
//!
//! With `B = (b_ij)` the current exchange matrix and mutation at `k`:
//!
//! ```text
//! y'_j = y_j y_k^[b_kj]+ (y_k (+) 1)^(-b_kj)          (j != k),  y'_k = y_k^-1
//! F'_k = (y^[c_k]+ prod F_j^[b_jk]+  +  y^[-c_k]+ prod F_j^[-b_jk]+) / F_k
//! Y'_j = Y_j Y_k^[b_kj]+ (Y_k + 1)^(-b_kj)            (j != k),  Y'_k = Y_k^-1
//! ```
//!
//! where `m (+) 1` keeps the negative-exponent part of a monomial and `c_k` is
//! the exponent vector of `y_k`. At every node `Y_j = y_j prod_i F_i^b_ij`.

mod rational;

use std::sync::Arc;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::laurent::LaurentPolynomial;
use crate::modular::{add_mod, inv_mod, mul_mod, pow_mod};
use crate::quiver::IceQuiver;

pub use rational::{FactorBase, FactoredRational, RationalFunction};

#[derive(Clone, Debug)]
pub struct YSeed {
    quiver: IceQuiver,
    /// `c[j][l]`: exponent of `y_j` in the tropical variable `y_l`.
    c: Vec<Vec<i32>>,
    f: Vec<LaurentPolynomial>,
    y: Vec<FactoredRational>,
    base: Arc<FactorBase>,
}

fn principal(quiver: &IceQuiver) -> Result<()> {
    if quiver.m() != quiver.n() {
        return Err(Error::domain(
            "frozen_vertices",
            "Y-seeds are defined on quivers without frozen vertices",
        ));
    }
    Ok(())
}

fn check_vertex(q: &IceQuiver, k: usize) -> Result<()> {
    if k >= q.n() {
        return Err(Error::domain(
            "vertex_out_of_range",
            format!("vertex {} does not exist", k + 1),
        ));
    }
    Ok(())
}

impl YSeed {
    /// The initial Y-seed: `c = I`, `F = 1`, `Y_j = y_j`.
    pub fn initial(quiver: IceQuiver) -> Result<YSeed> {
        principal(&quiver)?;
        let n = quiver.n();
        Ok(YSeed {
            c: (0..n)
                .map(|j| (0..n).map(|l| (j == l) as i32).collect())
                .collect(),
            f: vec![LaurentPolynomial::one(n); n],
            y: (0..n).map(|j| FactoredRational::var(n, j)).collect(),
            base: Arc::new(FactorBase::default()),
            quiver,
        })
    }

    pub fn quiver(&self) -> &IceQuiver {
        &self.quiver
    }

    pub fn n(&self) -> usize {
        self.quiver.n()
    }

    pub fn c_matrix(&self) -> &[Vec<i32>] {
        &self.c
    }

    /// The exponent vector of `y_l` (column `l` of the c-matrix).
    pub fn c_vector(&self, l: usize) -> Vec<i32> {
        self.c.iter().map(|row| row[l]).collect()
    }

    pub fn f_polynomials(&self) -> &[LaurentPolynomial] {
        &self.f
    }

    pub fn factor_base(&self) -> &FactorBase {
        &self.base
    }

    pub fn y_factored(&self) -> &[FactoredRational] {
        &self.y
    }

    /// The Y-variables as numerator/denominator pairs.
    pub fn y_variables(&self) -> Vec<RationalFunction> {
        self.y.iter().map(|v| v.expand(&self.base)).collect()
    }

    /// Mutation at `k` of all three layers and of the quiver.
    pub fn mutate(&self, k: usize) -> Result<YSeed> {
        check_vertex(&self.quiver, k)?;
        let n = self.n();
        let b = |i: usize, j: usize| self.quiver.b(i, j);

        let ck = self.c_vector(k);
        let mut c = self.c.clone();
        for j in 0..n {
            for l in 0..n {
                c[l][j] = if j == k {
                    -ck[l]
                } else {
                    self.c[l][j] + b(k, j).max(0) * ck[l] - b(k, j) * ck[l].min(0)
                };
            }
        }

        let mut plus = LaurentPolynomial::monomial(ck.iter().map(|&e| e.max(0)).collect(), 1);
        let mut minus = LaurentPolynomial::monomial(ck.iter().map(|&e| (-e).max(0)).collect(), 1);
        for j in 0..n {
            let e = b(j, k);
            if e > 0 {
                plus = plus.mul(&self.f[j].pow(e as u32));
            } else if e < 0 {
                minus = minus.mul(&self.f[j].pow((-e) as u32));
            }
        }
        let fk = plus.add(&minus).exact_div(&self.f[k]).ok_or_else(|| {
            Error::integrity(format!("F-polynomial division at vertex {} is not exact", k + 1))
        })?;
        let mut f = self.f.clone();
        f[k] = fk;

        let mut base = Arc::clone(&self.base);
        let yk = &self.y[k];
        let needs_sum = (0..n).any(|j| j != k && b(k, j) != 0);
        let one_plus = needs_sum.then(|| yk.one_plus(Arc::make_mut(&mut base)));
        let y = (0..n)
            .map(|j| {
                if j == k {
                    yk.inv()
                } else if b(k, j) == 0 {
                    self.y[j].clone()
                } else {
                    let s = one_plus.as_ref().unwrap();
                    self.y[j].mul(&yk.pow(b(k, j).max(0))).mul(&s.pow(-b(k, j)))
                }
            })
            .collect();

        Ok(YSeed {
            quiver: self.quiver.mutate(k)?,
            c,
            f,
            y,
            base,
        })
    }

    pub fn mutate_sequence(&self, seq: &[usize]) -> Result<YSeed> {
        let mut s = self.clone();
        for &k in seq {
            s = s.mutate(k)?;
        }
        Ok(s)
    }

    /// Whether `Y_j = y_j prod F_i^{b_ij}` holds for every `j`.
    ///
    /// The quotient of the two sides is formed over the factor base first, so
    /// only the factors that do not cancel get expanded and cross-multiplied.
    pub fn identity_holds(&self) -> bool {
        let n = self.n();
        let mut base = (*self.base).clone();
        let fs: Vec<FactoredRational> = self.f.iter().map(|f| base.factor(f)).collect();
        (0..n).all(|j| {
            let mut rhs = FactoredRational::monomial(self.c_vector(j));
            for (i, fi) in fs.iter().enumerate() {
                let b = self.quiver.b(i, j);
                if b != 0 {
                    rhs = rhs.mul(&fi.pow(b));
                }
            }
            self.y[j].mul(&rhs.inv()).is_one(&base)
        })
    }

    /// Equality of all three layers and the quiver; Y-variables are compared
    /// by cross-multiplication.
    pub fn same_as(&self, other: &YSeed) -> bool {
        self.quiver == other.quiver
            && self.c == other.c
            && self.f == other.f
            && self
                .y_variables()
                .iter()
                .zip(other.y_variables())
                .all(|(a, b)| a.equals(&b))
    }

    /// Whether this is the initial Y-seed of its quiver.
    pub fn is_initial(&self) -> bool {
        let n = self.n();
        (0..n).all(|j| (0..n).all(|l| self.c[j][l] == (j == l) as i32))
            && self.f.iter().all(|p| p.is_one())
            && self
                .y
                .iter()
                .enumerate()
                .all(|(j, v)| v.equals(&FactoredRational::var(n, j), &self.base))
    }
}

/// Recomputes the Y-variables from the tropical layer, the F-polynomials and
/// the exchange matrix.
pub fn y_from_f(ys: &YSeed) -> Vec<RationalFunction> {
    let n = ys.n();
    (0..n)
        .map(|j| {
            let c = ys.c_vector(j);
            let mut num = LaurentPolynomial::monomial(c.iter().map(|&e| e.max(0)).collect(), 1);
            let mut den = LaurentPolynomial::monomial(c.iter().map(|&e| (-e).max(0)).collect(), 1);
            for i in 0..n {
                let b = ys.quiver.b(i, j);
                if b > 0 {
                    num = num.mul(&ys.f[i].pow(b as u32));
                } else if b < 0 {
                    den = den.mul(&ys.f[i].pow((-b) as u32));
                }
            }
            RationalFunction::new(num, den)
        })
        .collect()
}

/// Mutation of a Y-seed, as a free function.
pub fn mutate_y_seed(ys: &YSeed, k: usize) -> Result<YSeed> {
    ys.mutate(k)
}

/// `m (+) 1` in the tropical semifield: the negative-exponent part of the
/// monomial `m`.
pub fn tropical_semifield_add_one(m: &LaurentPolynomial) -> Result<LaurentPolynomial> {
    if !m.is_monomial() || m.terms()[0].1 != 1.into() {
        return Err(Error::domain(
            "not_a_monomial",
            "the tropical sum is defined for Laurent monomials",
        ));
    }
    Ok(LaurentPolynomial::monomial(
        m.terms()[0].0.iter().map(|&e| e.min(0)).collect(),
        1,
    ))
}

#[derive(Serialize, Deserialize)]
struct YSeedJson {
    quiver: IceQuiver,
    c_matrix: Vec<Vec<i32>>,
    f: Vec<LaurentPolynomial>,
    y: Vec<RationalFunction>,
}

impl Serialize for YSeed {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        YSeedJson {
            quiver: self.quiver.clone(),
            c_matrix: self.c.clone(),
            f: self.f.clone(),
            y: self.y_variables(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for YSeed {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let j = YSeedJson::deserialize(d)?;
        YSeed::from_parts(j.quiver, j.c_matrix, j.f, j.y).map_err(D::Error::custom)
    }
}

impl YSeed {
    /// Assembles a Y-seed from its layers, checking shapes. Polynomials with
    /// no terms are read as polynomials in `n` variables.
    pub fn from_parts(
        quiver: IceQuiver,
        c: Vec<Vec<i32>>,
        f: Vec<LaurentPolynomial>,
        y: Vec<RationalFunction>,
    ) -> Result<YSeed> {
        principal(&quiver)?;
        let n = quiver.n();
        let bad = |what: &str| Error::domain("bad_yseed", format!("{what} has the wrong shape"));
        if c.len() != n || c.iter().any(|r| r.len() != n) {
            return Err(bad("c_matrix"));
        }
        if f.len() != n || f.iter().any(|p| p.nvars() != n || !p.is_polynomial()) {
            return Err(bad("f"));
        }
        if y.len() != n
            || y
                .iter()
                .any(|r| r.num.nvars() != n || r.den.nvars() != n || r.num.is_zero() || r.den.is_zero())
        {
            return Err(bad("y"));
        }
        let mut base = FactorBase::default();
        let y = y
            .iter()
            .map(|r| FactoredRational::from_fraction(r, &mut base))
            .collect();
        Ok(YSeed {
            quiver,
            c,
            f,
            y,
            base: Arc::new(base),
        })
    }
}

/// A Y-seed evaluated at a point of `(Z/p)^n`: the c-matrix stays exact,
/// F- and Y-values are residues.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModularYSeed {
    pub quiver: IceQuiver,
    pub c: Vec<Vec<i32>>,
    pub f: Vec<u64>,
    pub y: Vec<u64>,
    pub point: Vec<u64>,
    pub p: u64,
}

fn signed_pow(x: u64, e: i32, p: u64) -> Option<u64> {
    if e >= 0 {
        Some(pow_mod(x, e as u64, p))
    } else {
        inv_mod(pow_mod(x, e.unsigned_abs() as u64, p), p)
    }
}

fn monomial_value(point: &[u64], exps: impl Iterator<Item = i32>, p: u64) -> Option<u64> {
    let mut acc = 1 % p;
    for (&y, e) in point.iter().zip(exps) {
        acc = mul_mod(acc, signed_pow(y, e, p)?, p);
    }
    Some(acc)
}

impl ModularYSeed {
    pub fn initial(quiver: IceQuiver, point: Vec<u64>, p: u64) -> Result<Self> {
        principal(&quiver)?;
        let n = quiver.n();
        if point.len() != n {
            return Err(Error::domain("bad_point", "one residue per vertex expected"));
        }
        Ok(ModularYSeed {
            c: (0..n)
                .map(|j| (0..n).map(|l| (j == l) as i32).collect())
                .collect(),
            f: vec![1 % p; n],
            y: point.clone(),
            quiver,
            point,
            p,
        })
    }

    /// Mutation at `k`; `None` when a division by zero mod `p` occurs.
    pub fn mutate(&self, k: usize) -> Option<Self> {
        let n = self.quiver.n();
        let p = self.p;
        let b = |i: usize, j: usize| self.quiver.b(i, j);
        let ck: Vec<i32> = self.c.iter().map(|r| r[k]).collect();
        let mut c = self.c.clone();
        for j in 0..n {
            for l in 0..n {
                c[l][j] = if j == k {
                    -ck[l]
                } else {
                    self.c[l][j] + b(k, j).max(0) * ck[l] - b(k, j) * ck[l].min(0)
                };
            }
        }
        let mut plus = monomial_value(&self.point, ck.iter().map(|&e| e.max(0)), p)?;
        let mut minus = monomial_value(&self.point, ck.iter().map(|&e| (-e).max(0)), p)?;
        for j in 0..n {
            let e = b(j, k);
            if e > 0 {
                plus = mul_mod(plus, pow_mod(self.f[j], e as u64, p), p);
            } else if e < 0 {
                minus = mul_mod(minus, pow_mod(self.f[j], (-e) as u64, p), p);
            }
        }
        let mut f = self.f.clone();
        f[k] = mul_mod(add_mod(plus, minus, p), inv_mod(self.f[k], p)?, p);
        let yk = self.y[k];
        let s = add_mod(yk, 1, p);
        let mut y = self.y.clone();
        for j in 0..n {
            y[j] = if j == k {
                inv_mod(yk, p)?
            } else {
                let e = b(k, j);
                let v = mul_mod(self.y[j], signed_pow(yk, e.max(0), p)?, p);
                mul_mod(v, signed_pow(s, -e, p)?, p)
            };
        }
        Some(ModularYSeed {
            quiver: self.quiver.mutate(k).ok()?,
            c,
            f,
            y,
            point: self.point.clone(),
            p,
        })
    }

    /// `Y_j = y_j prod F_i^{b_ij}` at this point; `None` if undefined.
    pub fn identity_holds(&self) -> Option<bool> {
        let n = self.quiver.n();
        for j in 0..n {
            let mut v = monomial_value(&self.point, self.c.iter().map(|r| r[j]), self.p)?;
            for i in 0..n {
                v = mul_mod(v, signed_pow(self.f[i], self.quiver.b(i, j), self.p)?, self.p);
            }
            if v != self.y[j] {
                return Some(false);
            }
        }
        Some(true)
    }

    pub fn is_initial(&self) -> bool {
        let n = self.quiver.n();
        (0..n).all(|j| (0..n).all(|l| self.c[j][l] == (j == l) as i32))
            && self.f.iter().all(|&v| v == 1 % self.p)
            && self.y == self.point
    }
}
