//! Differentiable expression trees for the metric profiles phi(t), sigma(t).
//!
//! These are the numeric bindings behind every symbolic tower: exact
//! tree-level differentiation supplies the derivative jets, and the same
//! trees evaluate in f64 for guards and quadrature.

use num::{BigInt, BigRational, One, Signed, Zero};
use std::fmt;

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Const(BigRational),
    T,
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, BigRational),
    Exp(Box<Expr>),
    Ln(Box<Expr>),
}

impl Expr {
    pub fn zero() -> Expr {
        Expr::Const(BigRational::zero())
    }

    pub fn one() -> Expr {
        Expr::Const(BigRational::one())
    }

    pub fn constant_int(n: i64) -> Expr {
        Expr::Const(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn constant_ratio(p: i64, q: i64) -> Expr {
        Expr::Const(BigRational::new(BigInt::from(p), BigInt::from(q)))
    }

    pub fn is_zero_expr(&self) -> bool {
        self.const_value().map_or(false, |c| c.is_zero())
    }

    /// The value when the expression is a constant (folds arithmetic).
    pub fn const_value(&self) -> Option<BigRational> {
        match self {
            Expr::Const(c) => Some(c.clone()),
            Expr::T => None,
            Expr::Neg(a) => a.const_value().map(|x| -x),
            Expr::Add(a, b) => Some(a.const_value()? + b.const_value()?),
            Expr::Sub(a, b) => Some(a.const_value()? - b.const_value()?),
            Expr::Mul(a, b) => Some(a.const_value()? * b.const_value()?),
            Expr::Div(a, b) => {
                let d = b.const_value()?;
                if d.is_zero() {
                    None
                } else {
                    Some(a.const_value()? / d)
                }
            }
            Expr::Pow(a, q) => {
                let base = a.const_value()?;
                if q.is_integer() {
                    let e: i64 = q.numer().try_into().ok()?;
                    if e >= 0 {
                        Some(num::pow::pow(base, e as usize))
                    } else if base.is_zero() {
                        None
                    } else {
                        Some(num::pow::pow(base.recip(), (-e) as usize))
                    }
                } else {
                    None
                }
            }
            Expr::Exp(_) | Expr::Ln(_) => None,
        }
    }

    /// Exact symbolic derivative d/dt at the tree level.
    pub fn derive(&self) -> Expr {
        match self {
            Expr::Const(_) => Expr::zero(),
            Expr::T => Expr::one(),
            Expr::Neg(a) => Expr::Neg(Box::new(a.derive())),
            Expr::Add(a, b) => Expr::Add(Box::new(a.derive()), Box::new(b.derive())),
            Expr::Sub(a, b) => Expr::Sub(Box::new(a.derive()), Box::new(b.derive())),
            Expr::Mul(a, b) => Expr::Add(
                Box::new(Expr::Mul(Box::new(a.derive()), b.clone())),
                Box::new(Expr::Mul(a.clone(), Box::new(b.derive()))),
            ),
            Expr::Div(a, b) => {
                // (a'b - ab')/b^2
                let num = Expr::Sub(
                    Box::new(Expr::Mul(Box::new(a.derive()), b.clone())),
                    Box::new(Expr::Mul(a.clone(), Box::new(b.derive()))),
                );
                Expr::Div(
                    Box::new(num),
                    Box::new(Expr::Pow(b.clone(), BigRational::from_integer(2.into()))),
                )
            }
            Expr::Pow(a, q) => {
                let qm1 = q - BigRational::one();
                Expr::Mul(
                    Box::new(Expr::Mul(
                        Box::new(Expr::Const(q.clone())),
                        Box::new(a.derive()),
                    )),
                    Box::new(Expr::Pow(a.clone(), qm1)),
                )
            }
            Expr::Exp(a) => Expr::Mul(Box::new(a.derive()), Box::new(self.clone())),
            Expr::Ln(a) => Expr::Div(Box::new(a.derive()), a.clone()),
        }
    }

    pub fn eval(&self, t: f64) -> Result<f64, String> {
        match self {
            Expr::Const(c) => Ok(crate::scalar::gauss::rational_to_f64(c)),
            Expr::T => Ok(t),
            Expr::Neg(a) => Ok(-a.eval(t)?),
            Expr::Add(a, b) => Ok(a.eval(t)? + b.eval(t)?),
            Expr::Sub(a, b) => Ok(a.eval(t)? - b.eval(t)?),
            Expr::Mul(a, b) => Ok(a.eval(t)? * b.eval(t)?),
            Expr::Div(a, b) => {
                let d = b.eval(t)?;
                if d.abs() < 1e-300 {
                    return Err(format!("division by {d} at t={t}"));
                }
                Ok(a.eval(t)? / d)
            }
            Expr::Pow(a, q) => {
                let base = a.eval(t)?;
                let qf = crate::scalar::gauss::rational_to_f64(q);
                if q.is_integer() {
                    Ok(base.powf(qf))
                } else {
                    if base < 0.0 {
                        return Err(format!(
                            "fractional power of negative base {base} at t={t}"
                        ));
                    }
                    Ok(base.powf(qf))
                }
            }
            Expr::Exp(a) => Ok(a.eval(t)?.exp()),
            Expr::Ln(a) => {
                let x = a.eval(t)?;
                if x <= 0.0 {
                    return Err(format!("ln of non-positive value {x} at t={t}"));
                }
                Ok(x.ln())
            }
        }
    }

    /// Canonical serialization: fully parenthesized, whitespace-free, and
    /// reparseable by the CLI grammar.
    pub fn to_canonical_string(&self) -> String {
        fn rat(r: &BigRational) -> String {
            if r.denom().is_one() {
                format!("{}", r.numer())
            } else {
                format!("{}/{}", r.numer(), r.denom())
            }
        }
        match self {
            Expr::Const(c) => {
                if c.is_negative() {
                    format!("({})", rat(c))
                } else {
                    rat(c)
                }
            }
            Expr::T => "t".to_string(),
            Expr::Neg(a) => format!("(-{})", a.to_canonical_string()),
            Expr::Add(a, b) => format!(
                "({}+{})",
                a.to_canonical_string(),
                b.to_canonical_string()
            ),
            Expr::Sub(a, b) => format!(
                "({}-{})",
                a.to_canonical_string(),
                b.to_canonical_string()
            ),
            Expr::Mul(a, b) => format!(
                "({}*{})",
                a.to_canonical_string(),
                b.to_canonical_string()
            ),
            Expr::Div(a, b) => format!(
                "({}/{})",
                a.to_canonical_string(),
                b.to_canonical_string()
            ),
            Expr::Pow(a, q) => format!("({})^({})", a.to_canonical_string(), rat(q)),
            Expr::Exp(a) => format!("exp({})", a.to_canonical_string()),
            Expr::Ln(a) => format!("ln({})", a.to_canonical_string()),
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_canonical_string())
    }
}

/// A concrete SO(n)-invariant metric: profiles phi(t), sigma(t) and the even
/// fiber dimension.
#[derive(Clone, Debug)]
pub struct MetricSpec {
    pub phi: Expr,
    pub sigma: Expr,
    pub n: usize,
    phi_derivs: Vec<Expr>,
    sigma_derivs: Vec<Expr>,
}

const MAX_JET_ORDER: usize = 7;

impl MetricSpec {
    pub fn new(phi: Expr, sigma: Expr, n: usize) -> Result<Self, String> {
        if n == 0 || n % 2 != 0 {
            return Err(format!("fiber dimension must be even and positive, got {n}"));
        }
        let mut phi_derivs = vec![phi.clone()];
        let mut sigma_derivs = vec![sigma.clone()];
        for k in 1..=MAX_JET_ORDER {
            phi_derivs.push(phi_derivs[k - 1].derive());
            sigma_derivs.push(sigma_derivs[k - 1].derive());
        }
        Ok(MetricSpec {
            phi,
            sigma,
            n,
            phi_derivs,
            sigma_derivs,
        })
    }

    /// d^order phi / dt^order at t.
    pub fn phi_derivative(&self, order: usize, t: f64) -> Result<f64, String> {
        self.phi_derivs
            .get(order)
            .ok_or_else(|| format!("jet order {order} beyond precomputed tower"))?
            .eval(t)
    }

    /// d^order sigma / dt^order at t.
    pub fn sigma_derivative(&self, order: usize, t: f64) -> Result<f64, String> {
        self.sigma_derivs
            .get(order)
            .ok_or_else(|| format!("jet order {order} beyond precomputed tower"))?
            .eval(t)
    }

    /// Positive-definiteness: 1 + t sigma(t) > 0 sampled at 32 points of
    /// [0, t_max].
    pub fn validate_positivity(&self, t_max: f64) -> Result<(), String> {
        for k in 0..32 {
            let t = t_max * (k as f64) / 31.0;
            let s = self.sigma.eval(t)?;
            if 1.0 + t * s <= 0.0 {
                return Err(format!(
                    "metric not positive definite: 1 + t*sigma = {} at t = {t}",
                    1.0 + t * s
                ));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derivative_of_exp() {
        // d/dt exp(-t/4) = -1/4 exp(-t/4)
        let e = Expr::Exp(Box::new(Expr::Div(
            Box::new(Expr::Neg(Box::new(Expr::T))),
            Box::new(Expr::constant_int(4)),
        )));
        let d = e.derive();
        let t = 0.9;
        let expect = -0.25 * (-t / 4.0f64).exp();
        assert!((d.eval(t).unwrap() - expect).abs() < 1e-14);
    }

    #[test]
    fn pow_eval() {
        // (1+t)^(1/2) at t = 3 -> 2
        let e = Expr::Pow(
            Box::new(Expr::Add(Box::new(Expr::one()), Box::new(Expr::T))),
            BigRational::new(1.into(), 2.into()),
        );
        assert!((e.eval(3.0).unwrap() - 2.0).abs() < 1e-14);
    }

    #[test]
    fn positivity_check() {
        let ok = MetricSpec::new(Expr::zero(), Expr::one(), 2).unwrap();
        assert!(ok.validate_positivity(100.0).is_ok());
        let bad = MetricSpec::new(Expr::zero(), Expr::constant_int(-1), 2).unwrap();
        assert!(bad.validate_positivity(4.0).is_err());
    }
}
