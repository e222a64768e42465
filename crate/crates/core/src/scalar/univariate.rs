//! Dense univariate helpers over Q for polynomials in `t` alone.
//!
//! Used to keep concrete-metric denominators fully reduced and to split
//! perfect powers out of root-atom bases (Yun squarefree factorization),
//! which is what makes e.g. sqrt((1+tC)^2 (1 + t/t0)) collapse onto the
//! Harvey-Lawson kernel atom.

use super::gauss::GaussRat;
use super::poly::{Monomial, Poly, Var};
use num::{BigRational, One, Zero};

/// Dense coefficients, ascending powers of t; no trailing zeros.
pub type Dense = Vec<BigRational>;

pub fn to_dense(p: &Poly) -> Option<Dense> {
    let mut out: Dense = Vec::new();
    for (m, c) in p.terms() {
        if !c.is_real() {
            return None;
        }
        let mut deg = 0u32;
        for (v, e) in m.vars() {
            if *v != Var::T {
                return None;
            }
            deg = *e;
        }
        if out.len() <= deg as usize {
            out.resize(deg as usize + 1, BigRational::zero());
        }
        out[deg as usize] = c.re().clone();
    }
    trim(&mut out);
    Some(out)
}

pub fn from_dense(d: &Dense) -> Poly {
    let mut p = Poly::zero();
    for (k, c) in d.iter().enumerate() {
        if !c.is_zero() {
            p.add_term(
                Monomial::var_pow(Var::T, k as u32),
                GaussRat::from_rational(c.clone()),
            );
        }
    }
    p
}

fn trim(d: &mut Dense) {
    while d.last().map_or(false, |c| c.is_zero()) {
        d.pop();
    }
}

pub fn degree(d: &Dense) -> Option<usize> {
    if d.is_empty() {
        None
    } else {
        Some(d.len() - 1)
    }
}

pub fn derivative(d: &Dense) -> Dense {
    let mut out: Dense = Vec::new();
    for (k, c) in d.iter().enumerate().skip(1) {
        out.push(c * BigRational::from_integer(k.into()));
    }
    trim(&mut out);
    out
}

pub fn make_monic(d: &mut Dense) -> BigRational {
    match d.last() {
        None => BigRational::one(),
        Some(lead) => {
            let lead = lead.clone();
            for c in d.iter_mut() {
                *c /= &lead;
            }
            lead
        }
    }
}

pub fn mul(a: &Dense, b: &Dense) -> Dense {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

pub fn sub(a: &Dense, b: &Dense) -> Dense {
    let mut out = a.clone();
    if out.len() < b.len() {
        out.resize(b.len(), BigRational::zero());
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(&mut out);
    out
}

/// Quotient and remainder of a by b.
pub fn div_rem(a: &Dense, b: &Dense) -> (Dense, Dense) {
    assert!(!b.is_empty(), "univariate division by zero");
    let mut rem = a.clone();
    let db = b.len() - 1;
    let lead = b.last().unwrap().clone();
    if rem.len() <= db {
        return (Vec::new(), rem);
    }
    let mut quot = vec![BigRational::zero(); rem.len() - db];
    while rem.len() > db && !rem.is_empty() {
        let dr = rem.len() - 1;
        let q = rem.last().unwrap() / &lead;
        quot[dr - db] = q.clone();
        for (i, c) in b.iter().enumerate() {
            let idx = dr - db + i;
            let delta = c * &q;
            rem[idx] -= delta;
        }
        trim(&mut rem);
        if dr == db {
            break;
        }
    }
    trim(&mut quot);
    (quot, rem)
}

pub fn div_exact(a: &Dense, b: &Dense) -> Option<Dense> {
    let (q, r) = div_rem(a, b);
    if r.is_empty() {
        Some(q)
    } else {
        None
    }
}

/// Monic gcd via Euclid.
pub fn gcd(a: &Dense, b: &Dense) -> Dense {
    let mut x = a.clone();
    let mut y = b.clone();
    while !y.is_empty() {
        let (_, r) = div_rem(&x, &y);
        x = y;
        y = r;
    }
    make_monic(&mut x);
    x
}

/// Yun squarefree decomposition of a monic polynomial:
/// p = prod factors[i].0 ^ factors[i].1 with each factor monic squarefree.
pub fn squarefree_decompose(p: &Dense) -> Vec<(Dense, u32)> {
    let mut out = Vec::new();
    if degree(p).unwrap_or(0) == 0 {
        return out;
    }
    let dp = derivative(p);
    let g = gcd(p, &dp);
    if degree(&g).unwrap_or(0) == 0 {
        let mut q = p.clone();
        make_monic(&mut q);
        out.push((q, 1));
        return out;
    }
    let mut b = div_exact(p, &g).expect("gcd divides");
    let c = div_exact(&dp, &g).expect("gcd divides");
    let mut d = sub(&c, &derivative(&b));
    let mut i = 1u32;
    while degree(&b).unwrap_or(0) > 0 {
        let mut a = gcd(&b, &d);
        make_monic(&mut a);
        if degree(&a).unwrap_or(0) > 0 {
            out.push((a.clone(), i));
        }
        b = div_exact(&b, &a).expect("factor divides");
        let c2 = div_exact(&d, &a).expect("factor divides");
        d = sub(&c2, &derivative(&b));
        i += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(coeffs: &[i64]) -> Dense {
        let mut d: Dense = coeffs
            .iter()
            .map(|&c| BigRational::from_integer(c.into()))
            .collect();
        trim(&mut d);
        d
    }

    #[test]
    fn gcd_and_division() {
        // (t+1)^2 (t-2) and (t+1)(t-3)
        let a = mul(&mul(&poly(&[1, 1]), &poly(&[1, 1])), &poly(&[-2, 1]));
        let b = mul(&poly(&[1, 1]), &poly(&[-3, 1]));
        let g = gcd(&a, &b);
        assert_eq!(g, poly(&[1, 1]));
        assert!(div_exact(&a, &g).is_some());
    }

    #[test]
    fn squarefree_split() {
        // p = (t+1)^2 (t+2)^3
        let f1 = poly(&[1, 1]);
        let f2 = poly(&[2, 1]);
        let p = mul(&mul(&f1, &f1), &mul(&mul(&f2, &f2), &f2));
        let parts = squarefree_decompose(&p);
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[0], (poly(&[1, 1]), 2));
        assert_eq!(parts[1], (poly(&[2, 1]), 3));
    }
}
