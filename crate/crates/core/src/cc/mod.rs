//! Quiver representations and the Caldero-Chapoton map.
//!
//! Euler characteristics of quiver Grassmannians are obtained from point
//! counts over prime fields: the counts are interpolated by a polynomial in
//! `q`, checked at a held-out prime, and evaluated at `q = 1`.
//!
//! For a representation `V` with dimension vector `d`,
//! `CC(V) = x^-d * sum_e chi(Gr_e(V)) * prod_i x_i^(sum_{j->i} e_j + sum_{i->j} (d_j - e_j))`.

mod grassmannian;
mod rep;

pub use grassmannian::{
    count_subreps, counting_polynomial, degree_bound, euler_char, euler_char_with_primes,
    gaussian_binomial, CountingPolynomial, ENUMERATION_CAP,
};
pub use rep::{d4_subspace_quiver, d4_three_lines, interval_module, interval_modules, QuiverRep};

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::error::Result;
use crate::laurent::LaurentPolynomial;

/// Every dimension vector `0 <= e <= d`.
pub fn dimension_vectors_below(d: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for &di in d {
        out = out
            .into_iter()
            .flat_map(|e| {
                (0..=di).map(move |k| {
                    let mut e = e.clone();
                    e.push(k);
                    e
                })
            })
            .collect();
    }
    out
}

/// The exponent vector attached to `e` before dividing by `x^d`.
pub fn cc_exponents(v: &QuiverRep, e: &[usize]) -> Vec<i32> {
    let d = v.dims();
    let mut exps = vec![0i32; d.len()];
    for &(s, t) in v.arrows() {
        exps[t] += e[s] as i32;
        exps[s] += (d[t] - e[t]) as i32;
    }
    exps
}

/// `CC(V)` as a Laurent polynomial in `x_1, ..., x_n`.
pub fn caldero_chapoton(v: &QuiverRep) -> Result<LaurentPolynomial> {
    let d = v.dims();
    let terms: Vec<(Vec<i32>, BigInt)> = dimension_vectors_below(d)
        .into_par_iter()
        .map(|e| {
            let chi = euler_char(v, &e)?;
            let exps = cc_exponents(v, &e)
                .iter()
                .zip(d)
                .map(|(&x, &di)| x - di as i32)
                .collect();
            Ok((exps, BigInt::from(chi)))
        })
        .collect::<Result<_>>()?;
    Ok(LaurentPolynomial::from_terms(d.len(), terms))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::IceQuiver;

    fn a2() -> IceQuiver {
        IceQuiver::from_arrows(2, &[(0, 1)]).unwrap()
    }

    #[test]
    fn a2_modules() {
        let s2 = interval_module(&a2(), 2, 2).unwrap();
        assert_eq!(s2.dims(), &[0, 1]);
        assert_eq!(caldero_chapoton(&s2).unwrap().to_string(), "(1+x1)/x2");
        let p1 = interval_module(&a2(), 1, 2).unwrap();
        assert_eq!(caldero_chapoton(&p1).unwrap().to_string(), "(1+x1+x2)/(x1x2)");
        assert_eq!(count_subreps(&p1, &[1, 0], 5).unwrap(), 0);
        assert_eq!(euler_char(&p1, &[1, 1]).unwrap(), 1);
        assert_eq!(interval_module(&a2(), 2, 1).unwrap_err().code(), "invalid_interval");
    }

    #[test]
    fn three_lines() {
        let v = d4_three_lines();
        assert_eq!(count_subreps(&v, &[0, 0, 0, 1], 2).unwrap(), 3);
        assert_eq!(count_subreps(&v, &[0, 0, 0, 0], 7).unwrap(), 1);
        assert_eq!(count_subreps(&v, &[1, 1, 1, 2], 7).unwrap(), 1);
        assert_eq!(euler_char(&v, &[0, 0, 0, 1]).unwrap(), 2);
        let cc = caldero_chapoton(&v).unwrap();
        assert_eq!(
            cc.to_string(),
            "(1+3x4+3x4^2+2x1x2x3+x4^3+3x1x2x3x4+x1^2x2^2x3^2)/(x1x2x3x4^2)"
        );
        assert_eq!(cc.eval_at_ones(), 14.into());
    }

    #[test]
    fn direct_sums_and_json() {
        let s1 = interval_module(&a2(), 1, 1).unwrap();
        let s2 = interval_module(&a2(), 2, 2).unwrap();
        let sum = s1.direct_sum(&s2).unwrap();
        assert_eq!(sum.dims(), &[1, 1]);
        assert_eq!(sum.matrix(0, 1), Some(&vec![vec![0]]));
        let json = serde_json::to_string(&d4_three_lines()).unwrap();
        assert!(json.contains("\"1->4\":[[1],[0]]"), "{json}");
        let back: QuiverRep = serde_json::from_str(&json).unwrap();
        assert_eq!(back, d4_three_lines());
    }

    #[test]
    fn enumeration_cap() {
        let q = IceQuiver::from_arrows(1, &[]).unwrap();
        let big = QuiverRep::new(q, vec![12], Default::default()).unwrap();
        assert_eq!(count_subreps(&big, &[6], 7).unwrap_err().code(), "too_large");
    }
}
