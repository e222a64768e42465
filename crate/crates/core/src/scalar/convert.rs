//! Conversion from expression trees to ring elements.
//!
//! `phi` itself may involve ln (which has no ring representation), but the
//! pipeline only ever needs C = phi-dot, e^phi and the sigma tower, all of
//! which stay inside the ring: ln collapses under differentiation and
//! exp(ln h) patterns are rewritten before an atom is minted.

use super::atom::Atom;
use super::radial::{RadialScalar, ScalarError};
use crate::expr::Expr;
use num::{BigRational, Zero};

pub fn radial_from_expr(e: &Expr) -> Result<RadialScalar, ScalarError> {
    match e {
        Expr::Const(r) => Ok(RadialScalar::from_rational(r.clone())),
        Expr::T => Ok(RadialScalar::t()),
        Expr::Neg(a) => Ok(radial_from_expr(a)?.neg()),
        Expr::Add(a, b) => Ok(radial_from_expr(a)?.add(&radial_from_expr(b)?)),
        Expr::Sub(a, b) => Ok(radial_from_expr(a)?.sub(&radial_from_expr(b)?)),
        Expr::Mul(a, b) => Ok(radial_from_expr(a)?.mul(&radial_from_expr(b)?)),
        Expr::Div(a, b) => {
            let rb = radial_from_expr(b)?;
            Ok(radial_from_expr(a)?.mul(&rb.try_inv()?))
        }
        Expr::Pow(base, q) => pow_rational(&radial_from_expr(base)?, q),
        Expr::Exp(arg) => exp_of_expr(arg),
        Expr::Ln(arg) => {
            let ra = radial_from_expr(arg)?;
            if ra.is_one() {
                return Ok(RadialScalar::zero());
            }
            if ra.is_zero() {
                return Err(ScalarError::DomainError("ln(0)".into()));
            }
            Ok(RadialScalar::atom(Atom::log(ra)))
        }
    }
}

/// e^{expr} as a ring element, rewriting exp/ln patterns first.
pub fn exp_of_expr(e: &Expr) -> Result<RadialScalar, ScalarError> {
    match e {
        Expr::Ln(h) => radial_from_expr(h),
        Expr::Neg(a) => Ok(exp_of_expr(a)?.inv()),
        Expr::Add(a, b) => Ok(exp_of_expr(a)?.mul(&exp_of_expr(b)?)),
        Expr::Sub(a, b) => Ok(exp_of_expr(a)?.div(&exp_of_expr(b)?)),
        Expr::Mul(a, b) => {
            if let (Some(q), Expr::Ln(h)) = (a.const_value(), b.as_ref()) {
                return pow_rational(&radial_from_expr(h)?, &q);
            }
            if let (Expr::Ln(h), Some(q)) = (a.as_ref(), b.const_value()) {
                return pow_rational(&radial_from_expr(h)?, &q);
            }
            default_exp_atom(e)
        }
        _ => default_exp_atom(e),
    }
}

fn default_exp_atom(e: &Expr) -> Result<RadialScalar, ScalarError> {
    let g = radial_from_expr(e)?;
    if g.is_zero() {
        return Ok(RadialScalar::one());
    }
    Ok(g.exp_of())
}

fn pow_rational(base: &RadialScalar, q: &BigRational) -> Result<RadialScalar, ScalarError> {
    if q.is_zero() {
        return Ok(RadialScalar::one());
    }
    if q.is_integer() {
        let e: i64 = q
            .numer()
            .try_into()
            .map_err(|_| ScalarError::Unsupported("exponent too large".into()))?;
        if e < 0 && base.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        return Ok(base.pow(e));
    }
    let p: i64 = q
        .numer()
        .try_into()
        .map_err(|_| ScalarError::Unsupported("exponent too large".into()))?;
    let r: i64 = q
        .denom()
        .try_into()
        .map_err(|_| ScalarError::Unsupported("exponent too large".into()))?;
    let root = base.nth_root(r.unsigned_abs() as u32)?;
    if p.is_negative() && root.is_zero() {
        return Err(ScalarError::DivisionByZero);
    }
    Ok(root.pow(p))
}
