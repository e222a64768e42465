//! The metric-to-equivariant-curvature pipeline.
//!
//! From the invariant metric g_ij = e^phi (delta_ij + sigma v_i v_j) this
//! module produces the inverse metric, Christoffel symbols (definition and
//! closed form), the connection and curvature matrices, the Omega-part of the
//! equivariant curvature, and the 2x2 matrices M and N through which the
//! whole curvature factors as a trace.
//!
//! Matrix convention: a mixed tensor X^j_i is stored with the upper index as
//! the row, so matrix products compose as X^j_k Y^k_i.

pub mod context;

pub use context::MetricContext;

use crate::scalar::{RadialScalar, ScalarError};
use crate::superalgebra::{Form, FormMatrix, FormMonomial, VPoly};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum GeometryError {
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error("matrix dimension mismatch")]
    DimensionMismatch,
}

/// Christoffel symbols Gamma^k_{ij}, symmetric in (i, j).
#[derive(Clone, Debug)]
pub struct Christoffel {
    n: usize,
    data: Vec<VPoly>,
}

impl Christoffel {
    fn new(n: usize) -> Self {
        Christoffel {
            n,
            data: vec![VPoly::zero(n); n * n * n],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, k: usize, i: usize, j: usize) -> &VPoly {
        &self.data[(k * self.n + i) * self.n + j]
    }

    pub fn set(&mut self, k: usize, i: usize, j: usize, v: VPoly) {
        self.data[(k * self.n + i) * self.n + j] = v;
    }

    pub fn sub(&self, other: &Christoffel) -> Christoffel {
        assert_eq!(self.n, other.n);
        let mut out = Christoffel::new(self.n);
        for idx in 0..self.data.len() {
            out.data[idx] = self.data[idx].sub(&other.data[idx]);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|p| p.is_zero())
    }
}

/// The 2x2 radial matrix M of the trace form.
#[derive(Clone, Debug, PartialEq)]
pub struct MMatrix {
    pub m11: RadialScalar,
    pub m12: RadialScalar,
    pub m21: RadialScalar,
    pub m22: RadialScalar,
}

impl MMatrix {
    pub fn det(&self) -> RadialScalar {
        self.m11.mul(&self.m22).sub(&self.m12.mul(&self.m21))
    }

    /// M * Sbar(D) with Sbar(D) = [[1, D], [0, 1 + t D]].
    pub fn mul_sbar(&self, d: &RadialScalar) -> MMatrix {
        let one_td = RadialScalar::one().add(&RadialScalar::t().mul(d));
        MMatrix {
            m11: self.m11.clone(),
            m12: self.m11.mul(d).add(&self.m12.mul(&one_td)),
            m21: self.m21.clone(),
            m22: self.m21.mul(d).add(&self.m22.mul(&one_td)),
        }
    }
}

/// The 2x2 matrix of n x n antisymmetric tensor structures N^{ij}.
#[derive(Clone, Debug)]
pub struct NMatrix {
    pub n11: FormMatrix,
    pub n12: FormMatrix,
    pub n21: FormMatrix,
    pub n22: FormMatrix,
}

impl NMatrix {
    pub fn block(&self, a: usize, b: usize) -> &FormMatrix {
        match (a, b) {
            (0, 0) => &self.n11,
            (0, 1) => &self.n12,
            (1, 0) => &self.n21,
            (1, 1) => &self.n22,
            _ => panic!("2x2 block index out of range"),
        }
    }
}

fn metric_entries(ctx: &MetricContext) -> Vec<VPoly> {
    let n = ctx.n();
    let mut out = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let mut e = VPoly::v(n, i).mul(&VPoly::v(n, j)).scale(ctx.sigma());
            if i == j {
                e = e.add(&VPoly::one(n));
            }
            out.push(e.scale(ctx.exp_phi()));
        }
    }
    out
}

fn inverse_metric_entries(ctx: &MetricContext) -> Result<Vec<VPoly>, GeometryError> {
    let n = ctx.n();
    let tilde = ctx.tilde_sigma()?;
    let inv_exp = ctx.exp_phi().inv();
    let mut out = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let mut e = VPoly::v(n, i).mul(&VPoly::v(n, j)).scale(&tilde);
            if i == j {
                e = e.add(&VPoly::one(n));
            }
            out.push(e.scale(&inv_exp));
        }
    }
    Ok(out)
}

/// g_ij = e^phi (delta_ij + sigma v_i v_j).
pub fn metric(ctx: &MetricContext) -> FormMatrix {
    let n = ctx.n();
    let entries = metric_entries(ctx);
    FormMatrix::from_fn(n, |i, j| Form::from_vpoly(entries[i * n + j].clone()))
}

/// g^{ij} = e^{-phi} (delta^{ij} + sigma-tilde v^i v^j).
pub fn inverse_metric(ctx: &MetricContext) -> Result<FormMatrix, GeometryError> {
    let n = ctx.n();
    let entries = inverse_metric_entries(ctx)?;
    Ok(FormMatrix::from_fn(n, |i, j| {
        Form::from_vpoly(entries[i * n + j].clone())
    }))
}

/// Definition-based Christoffel symbols
/// Gamma^k_{ij} = 1/2 g^{kl} (d_i g_lj + d_j g_il - d_l g_ij).
pub fn christoffel(ctx: &MetricContext) -> Result<Christoffel, GeometryError> {
    let n = ctx.n();
    let g = metric_entries(ctx);
    let ginv = inverse_metric_entries(ctx)?;
    // dg[l][i][j] = d g_ij / d v^l
    let mut dg = vec![VPoly::zero(n); n * n * n];
    for i in 0..n {
        for j in 0..n {
            for l in 0..n {
                dg[(l * n + i) * n + j] = g[i * n + j].partial_v(l);
            }
        }
    }
    let half = RadialScalar::from_ratio(1, 2);
    let mut out = Christoffel::new(n);
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let mut acc = VPoly::zero(n);
                for l in 0..n {
                    let term = dg[(i * n + l) * n + j]
                        .add(&dg[(j * n + i) * n + l])
                        .sub(&dg[(l * n + i) * n + j]);
                    acc = acc.add(&ginv[k * n + l].mul(&term));
                }
                out.set(k, i, j, acc.scale(&half));
            }
        }
    }
    Ok(out)
}

/// The closed form
/// Gamma^k_{ij} = (1+t sigma~) v^k [(sigma - C) delta_ij + (sigma' - sigma C) v_i v_j]
///              + C (v_i delta^k_j + v_j delta^k_i).
pub fn christoffel_closed_form(ctx: &MetricContext) -> Result<Christoffel, GeometryError> {
    let n = ctx.n();
    let tilde = ctx.tilde_sigma()?;
    let one_plus_tilde = RadialScalar::one().add(&RadialScalar::t().mul(&tilde));
    let c = ctx.c(0);
    let sigma = ctx.sigma();
    let sigma_dot = ctx.s(1);
    let coeff_delta = sigma.sub(c).mul(&one_plus_tilde);
    let coeff_vv = sigma_dot.sub(&sigma.mul(c)).mul(&one_plus_tilde);
    let mut out = Christoffel::new(n);
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let mut acc = VPoly::zero(n);
                let vk = VPoly::v(n, k);
                if i == j {
                    acc = acc.add(&vk.scale(&coeff_delta));
                }
                acc = acc.add(
                    &vk.mul(&VPoly::v(n, i))
                        .mul(&VPoly::v(n, j))
                        .scale(&coeff_vv),
                );
                if k == j {
                    acc = acc.add(&VPoly::v(n, i).scale(c));
                }
                if k == i {
                    acc = acc.add(&VPoly::v(n, j).scale(c));
                }
                out.set(k, i, j, acc);
            }
        }
    }
    Ok(out)
}

/// Connection one-form matrix Gamma^j_i = Psi^k Gamma^j_{ik}; entry (j, i).
pub fn connection_matrix(ctx: &MetricContext) -> Result<FormMatrix, GeometryError> {
    let n = ctx.n();
    let gamma = christoffel(ctx)?;
    Ok(FormMatrix::from_fn(n, |j, i| {
        let mut f = Form::zero(n);
        for k in 0..n {
            f.insert(FormMonomial::psi_gen(k), gamma.get(j, i, k).clone());
        }
        f
    }))
}

/// The scalars A, B, C of the closed-form connection matrix.
pub fn connection_abc(
    ctx: &MetricContext,
) -> Result<(RadialScalar, RadialScalar, RadialScalar), GeometryError> {
    let tilde = ctx.tilde_sigma()?;
    let one_plus_tilde = RadialScalar::one().add(&RadialScalar::t().mul(&tilde));
    let c = ctx.c(0).clone();
    let a = one_plus_tilde.mul(&ctx.s(1).sub(&c.mul(ctx.sigma())));
    let b = one_plus_tilde.mul(&ctx.sigma().sub(&c));
    Ok((a, b, c))
}

/// Gamma^j_i = A v^j v_i (v.Psi) + B v^j Psi_i + C (v_i Psi^j + delta^j_i v.Psi).
pub fn connection_matrix_closed_form(ctx: &MetricContext) -> Result<FormMatrix, GeometryError> {
    let n = ctx.n();
    let (a, b, c) = connection_abc(ctx)?;
    let vpsi = Form::v_dot_psi(n);
    Ok(FormMatrix::from_fn(n, |j, i| {
        let mut f = Form::v(n, j)
            .mul(&Form::v(n, i))
            .mul(&vpsi)
            .scale_radial(&a);
        f = f.add(&Form::v(n, j).mul(&Form::psi(n, i)).scale_radial(&b));
        f = f.add(&Form::v(n, i).mul(&Form::psi(n, j)).scale_radial(&c));
        if i == j {
            f = f.add(&vpsi.scale_radial(&c));
        }
        f
    }))
}

/// Curvature R^j_i = d Gamma^j_i + Gamma^j_k Gamma^k_i; entry (j, i).
pub fn curvature(ctx: &MetricContext) -> Result<FormMatrix, GeometryError> {
    let gamma = connection_matrix(ctx)?;
    let dgamma = gamma.map(|f| f.de_rham());
    Ok(dgamma.add(&gamma.mul(&gamma)))
}

/// Raised curvature R^{ij} = g^{ik} R^j_k; entry (i, j), antisymmetric.
pub fn curvature_raised(ctx: &MetricContext) -> Result<FormMatrix, GeometryError> {
    let ginv = inverse_metric(ctx)?;
    let r = curvature(ctx)?;
    Ok(ginv.mul(&r.transpose()))
}

/// The Omega-part of the equivariant curvature before raising:
/// X^j_k = Omega^j_k + Omega^l_m v^m Gamma^j_{lk}; entry (j, k).
fn omega_part_lower(ctx: &MetricContext) -> Result<FormMatrix, GeometryError> {
    let n = ctx.n();
    let gamma = christoffel(ctx)?;
    Ok(FormMatrix::from_fn(n, |j, k| {
        // Omega_k^j = Omega^{kj}
        let mut f = Form::omega(n, k, j);
        for l in 0..n {
            for m in 0..n {
                if m == l {
                    continue;
                }
                // Omega_m^l v^m Gamma^j_{lk}
                let om = Form::omega(n, m, l);
                let term = om
                    .scale_vpoly(&VPoly::v(n, m))
                    .scale_vpoly(gamma.get(j, l, k));
                f = f.add(&term);
            }
        }
        f
    }))
}

/// Raised Omega-part g^{ik} (Omega_k^j + Omega_m^l v^m Gamma^j_{lk}); entry (i, j).
pub fn omega_part_raised(ctx: &MetricContext) -> Result<FormMatrix, GeometryError> {
    let ginv = inverse_metric(ctx)?;
    let x = omega_part_lower(ctx)?;
    Ok(ginv.mul(&x.transpose()))
}

/// Full equivariant curvature (R_int^eq)^{ij}; entry (i, j), antisymmetric.
pub fn equivariant_curvature(ctx: &MetricContext) -> Result<FormMatrix, GeometryError> {
    Ok(curvature_raised(ctx)?.add(&omega_part_raised(ctx)?))
}

/// Closed-form M matrix:
/// M11 = C^2 t + 2C - sigma,
/// M12 = 2C' - C^2 - sigma' + (1+t sigma~)(sigma - C)(sigma + t sigma'),
/// M21 = 1 + t sigma,
/// M22 = C - sigma.
pub fn m_matrix(ctx: &MetricContext) -> Result<MMatrix, GeometryError> {
    let t = RadialScalar::t();
    let c = ctx.c(0).clone();
    let cdot = ctx.c(1).clone();
    let sigma = ctx.sigma().clone();
    let sigma_dot = ctx.s(1).clone();
    let tilde = ctx.tilde_sigma()?;
    let one_plus_tilde = RadialScalar::one().add(&t.mul(&tilde));
    let two = RadialScalar::from_int(2);
    let m11 = c.mul(&c).mul(&t).add(&two.mul(&c)).sub(&sigma);
    let dts = sigma.add(&t.mul(&sigma_dot)); // d(t sigma)/dt
    let m12 = two
        .mul(&cdot)
        .sub(&c.mul(&c))
        .sub(&sigma_dot)
        .add(&one_plus_tilde.mul(&sigma.sub(&c)).mul(&dts));
    let m21 = RadialScalar::one().add(&t.mul(&sigma));
    let m22 = c.sub(&sigma);
    Ok(MMatrix { m11, m12, m21, m22 })
}

/// The four antisymmetric tensor structures N^{ij}.
pub fn n_matrix(n: usize) -> NMatrix {
    let vpsi = Form::v_dot_psi(n);
    let n11 = FormMatrix::from_fn(n, |i, j| Form::psi(n, i).mul(&Form::psi(n, j)));
    let n12 = FormMatrix::from_fn(n, |i, j| Form::omega(n, i, j));
    let n21 = FormMatrix::from_fn(n, |i, j| {
        Form::v(n, i)
            .mul(&vpsi)
            .mul(&Form::psi(n, j))
            .sub(&Form::v(n, j).mul(&vpsi).mul(&Form::psi(n, i)))
    });
    let n22 = FormMatrix::from_fn(n, |i, j| {
        let mut f = Form::zero(n);
        for k in 0..n {
            f = f.add(&Form::v(n, i).mul(&Form::v(n, k)).mul(&Form::omega(n, k, j)));
            f = f.sub(&Form::v(n, j).mul(&Form::v(n, k)).mul(&Form::omega(n, k, i)));
        }
        f
    });
    NMatrix { n11, n12, n21, n22 }
}

/// e^{-phi} (1 + t sigma~) Tr(M N^{ij}); entry (i, j).
pub fn equivariant_curvature_trace_form(ctx: &MetricContext) -> Result<FormMatrix, GeometryError> {
    let n = ctx.n();
    let m = m_matrix(ctx)?;
    let nm = n_matrix(n);
    let tilde = ctx.tilde_sigma()?;
    let prefactor = ctx
        .exp_phi()
        .inv()
        .mul(&RadialScalar::one().add(&RadialScalar::t().mul(&tilde)));
    let trace = nm
        .n11
        .scale_radial(&m.m11)
        .add(&nm.n21.scale_radial(&m.m12))
        .add(&nm.n12.scale_radial(&m.m21))
        .add(&nm.n22.scale_radial(&m.m22));
    Ok(trace.scale_radial(&prefactor))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{Expr, MetricSpec};

    fn flat(n: usize) -> MetricContext {
        MetricContext::from_spec(&MetricSpec::new(Expr::zero(), Expr::zero(), n).unwrap()).unwrap()
    }

    #[test]
    fn metric_examples() {
        // flat -> identity
        let ctx = flat(2);
        assert_eq!(metric(&ctx), FormMatrix::identity(2));
        // phi = 0, sigma = 1 at v = (1, 0): [[2, 0], [0, 1]]
        let ctx = MetricContext::from_spec(&MetricSpec::new(Expr::zero(), Expr::one(), 2).unwrap())
            .unwrap();
        let g = metric(&ctx);
        let vals = [[2.0, 0.0], [0.0, 1.0]];
        for i in 0..2 {
            for j in 0..2 {
                let (re, im) = g.get(i, j).scalar_part().eval(&[1.0, 0.0], None).unwrap();
                assert!((re - vals[i][j]).abs() < 1e-14 && im.abs() < 1e-14);
            }
        }
        // symbolic g has the exact displayed entries
        let sym = MetricContext::symbolic(2);
        let g = metric(&sym);
        let expect = Form::from_vpoly(
            VPoly::one(2).add(
                &VPoly::v(2, 0)
                    .mul(&VPoly::v(2, 0))
                    .scale(&RadialScalar::s(0)),
            ),
        )
        .scale_radial(&RadialScalar::atom(crate::scalar::Atom::exp_phi()));
        assert_eq!(g.get(0, 0), &expect);
    }

    #[test]
    fn inverse_metric_is_exact_inverse() {
        for n in [2usize, 4] {
            let ctx = MetricContext::symbolic(n);
            let g = metric(&ctx);
            let ginv = inverse_metric(&ctx).unwrap();
            assert_eq!(g.mul(&ginv), FormMatrix::identity(n));
        }
    }

    #[test]
    fn christoffel_flat_and_closed_form() {
        let ctx = flat(2);
        assert!(christoffel(&ctx).unwrap().is_zero());
        // definition equals closed form, symbolic n = 2
        let sym = MetricContext::symbolic(2);
        let a = christoffel(&sym).unwrap();
        let b = christoffel_closed_form(&sym).unwrap();
        assert!(a.sub(&b).is_zero());
    }

    #[test]
    fn christoffel_matches_finite_differences() {
        // phi = 0, sigma = 1, n = 2, at v = (1, 0)
        let spec = MetricSpec::new(Expr::zero(), Expr::one(), 2).unwrap();
        let ctx = MetricContext::from_spec(&spec).unwrap();
        let n = 2;
        let gamma = christoffel(&ctx).unwrap();
        let g_entries = super::metric_entries(&ctx);
        let ginv_entries = super::inverse_metric_entries(&ctx).unwrap();
        let v0 = [1.0f64, 0.0];
        let h = 1e-6;
        let eval_g = |v: &[f64], i: usize, j: usize| -> f64 {
            g_entries[i * n + j].eval(v, Some(&spec)).unwrap().0
        };
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    let mut num = 0.0;
                    for l in 0..n {
                        let dgi = {
                            let mut vp = v0;
                            vp[i] += h;
                            let mut vm = v0;
                            vm[i] -= h;
                            (eval_g(&vp, l, j) - eval_g(&vm, l, j)) / (2.0 * h)
                        };
                        let dgj = {
                            let mut vp = v0;
                            vp[j] += h;
                            let mut vm = v0;
                            vm[j] -= h;
                            (eval_g(&vp, i, l) - eval_g(&vm, i, l)) / (2.0 * h)
                        };
                        let dgl = {
                            let mut vp = v0;
                            vp[l] += h;
                            let mut vm = v0;
                            vm[l] -= h;
                            (eval_g(&vp, i, j) - eval_g(&vm, i, j)) / (2.0 * h)
                        };
                        let ginv_val = ginv_entries[k * n + l].eval(&v0, Some(&spec)).unwrap().0;
                        num += 0.5 * ginv_val * (dgi + dgj - dgl);
                    }
                    let sym_val = gamma.get(k, i, j).eval(&v0, Some(&spec)).unwrap().0;
                    assert!(
                        (num - sym_val).abs() < 1e-6 * sym_val.abs().max(1.0),
                        "Gamma^{k}_{i}{j}: fd {num} vs symbolic {sym_val}"
                    );
                }
            }
        }
    }

    #[test]
    fn connection_matrix_closed_form_matches() {
        let sym = MetricContext::symbolic(2);
        let a = connection_matrix(&sym).unwrap();
        let b = connection_matrix_closed_form(&sym).unwrap();
        assert_eq!(a, b);
        // flat -> zero
        assert!(connection_matrix(&flat(2)).unwrap().is_zero());
    }

    #[test]
    fn connection_abc_at_concrete_profile() {
        // phi = -t/2, sigma = 0: C = -1/2, B = 1/2, A = 0 (and M12 = -1/4).
        let spec = MetricSpec::new(
            Expr::Mul(Box::new(Expr::constant_ratio(-1, 2)), Box::new(Expr::T)),
            Expr::zero(),
            2,
        )
        .unwrap();
        let ctx = MetricContext::from_spec(&spec).unwrap();
        let (a, b, c) = connection_abc(&ctx).unwrap();
        assert!(a.is_zero());
        assert_eq!(b, RadialScalar::from_ratio(1, 2));
        assert_eq!(c, RadialScalar::from_ratio(-1, 2));
        let m = m_matrix(&ctx).unwrap();
        assert_eq!(m.m12, RadialScalar::from_ratio(-1, 4));
        // M11 = t/4 - 1
        let expect = RadialScalar::t()
            .scale(&crate::scalar::GaussRat::from_ratio(1, 4))
            .sub(&RadialScalar::one());
        assert_eq!(m.m11, expect);
    }

    #[test]
    fn curvature_flat_and_antisymmetry() {
        assert!(curvature(&flat(2)).unwrap().is_zero());
        // numeric antisymmetry of R^{ij} for phi = 0, sigma = 1 at v=(1,0)
        let spec = MetricSpec::new(Expr::zero(), Expr::one(), 2).unwrap();
        let ctx = MetricContext::from_spec(&spec).unwrap();
        let r = curvature_raised(&ctx).unwrap();
        assert!(r.add(&r.transpose()).is_zero());
    }

    #[test]
    fn equivariant_curvature_flat_is_omega() {
        let ctx = flat(2);
        let r = equivariant_curvature(&ctx).unwrap();
        let expect = FormMatrix::from_fn(2, |i, j| Form::omega(2, i, j));
        assert_eq!(r, expect);
    }

    #[test]
    fn m_matrix_flat() {
        let m = m_matrix(&flat(2)).unwrap();
        assert!(m.m11.is_zero());
        assert!(m.m12.is_zero());
        assert_eq!(m.m21, RadialScalar::one());
        assert!(m.m22.is_zero());
    }

    #[test]
    fn m_matrix_invariants_symbolic() {
        let sym = MetricContext::symbolic(2);
        let m = m_matrix(&sym).unwrap();
        // M21 = 1 + t sigma and M22 = C - sigma identically
        assert!(m
            .m21
            .sub(&RadialScalar::one().add(&RadialScalar::t().mul(&RadialScalar::s(0))))
            .is_zero());
        assert!(m
            .m22
            .sub(&RadialScalar::c(0).sub(&RadialScalar::s(0)))
            .is_zero());
    }

    #[test]
    fn trace_form_equals_pipeline_n2() {
        let sym = MetricContext::symbolic(2);
        let pipeline = equivariant_curvature(&sym).unwrap();
        let trace = equivariant_curvature_trace_form(&sym).unwrap();
        assert_eq!(pipeline, trace);
        assert!(pipeline.is_antisymmetric());
    }

    #[test]
    fn omega_part_trace_identity() {
        // g^{ik}(Om_k^j + Om_m^l v^m Gamma^j_{lk})
        //   = e^{-phi}(1+t sigma~)[M21 Om^{ij} + M22 (v^i v_k Om^{kj} - v^j v_k Om^{ki})]
        let sym = MetricContext::symbolic(2);
        let lhs = omega_part_raised(&sym).unwrap();
        let m = m_matrix(&sym).unwrap();
        let nm = n_matrix(2);
        let tilde = sym.tilde_sigma().unwrap();
        let pref = sym
            .exp_phi()
            .inv()
            .mul(&RadialScalar::one().add(&RadialScalar::t().mul(&tilde)));
        let rhs = nm
            .n12
            .scale_radial(&m.m21)
            .add(&nm.n22.scale_radial(&m.m22))
            .scale_radial(&pref);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn n_matrix_contraction_identity_n2() {
        // eps_ij N^{ij} = 2 [[Psi1 Psi2, Om12], [t Psi1 Psi2, t Om12]]
        let nm = n_matrix(2);
        let eps = |m: &FormMatrix| m.get(0, 1).sub(m.get(1, 0));
        let two = RadialScalar::from_int(2);
        let p12 = Form::psi(2, 0).mul(&Form::psi(2, 1));
        let om = Form::omega(2, 0, 1);
        let t = RadialScalar::t();
        assert_eq!(eps(&nm.n11), p12.scale_radial(&two));
        assert_eq!(eps(&nm.n12), om.scale_radial(&two));
        assert_eq!(eps(&nm.n21), p12.scale_radial(&two.mul(&t)));
        assert_eq!(eps(&nm.n22), om.scale_radial(&two.mul(&t)));
        // all four blocks antisymmetric
        for b in [&nm.n11, &nm.n12, &nm.n21, &nm.n22] {
            assert!(b.is_antisymmetric());
        }
    }

    #[test]
    fn trace_form_rotation_covariance() {
        // Tr(M N^{ij}) transforms as an antisymmetric 2-tensor under finite
        // rotations (numeric check via the matrix exponential).
        use crate::superalgebra::SoNElement;
        let n = 4;
        let spec = MetricSpec::new(Expr::zero(), Expr::constant_ratio(1, 3), n).unwrap();
        let ctx = MetricContext::from_spec(&spec).unwrap();
        let x = equivariant_curvature_trace_form(&ctx).unwrap();
        let lambda = SoNElement::elementary(n, 0, 2);
        let r = lambda.matrix_exp(0.37);
        let v = [0.4, -0.3, 0.8, 0.2];
        let omega_seed = [
            [0.0, 0.7, -0.2, 0.4],
            [-0.7, 0.0, 0.5, -0.1],
            [0.2, -0.5, 0.0, 0.3],
            [-0.4, 0.1, -0.3, 0.0],
        ];
        let mut omega = vec![vec![0.0; n]; n];
        for i in 0..n {
            for j in 0..n {
                omega[i][j] = omega_seed[i][j];
            }
        }
        // transformed inputs: v' = R v, Omega' = R Omega R^T
        let mut vr = [0.0; 4];
        for i in 0..n {
            for j in 0..n {
                vr[i] += r[i][j] * v[j];
            }
        }
        let mut omr = vec![vec![0.0; n]; n];
        for i in 0..n {
            for j in 0..n {
                for a in 0..n {
                    for b in 0..n {
                        omr[i][j] += r[i][a] * omega[a][b] * r[j][b];
                    }
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                // X^{ij}(v', Psi', Omega') with Psi'^k = R^k_m Psi^m, expressed
                // back in the Psi basis
                let lhs = x
                    .get(i, j)
                    .substitute_numeric(&vr, &omr, Some(&spec))
                    .unwrap()
                    .linear_substitute(&r);
                // sum_ab R^i_a R^j_b X^{ab}(v, Psi, Omega)
                let mut rhs = crate::superalgebra::GrassmannNumber::zero(n);
                for a in 0..n {
                    for b in 0..n {
                        let g = x
                            .get(a, b)
                            .substitute_numeric(&v, &omega, Some(&spec))
                            .unwrap();
                        rhs = rhs.add(&g.scale(num::complex::Complex64::new(
                            r[i][a] * r[j][b],
                            0.0,
                        )));
                    }
                }
                let diff = lhs.sub(&rhs).norm_inf();
                assert!(diff < 1e-8, "covariance residual {diff} at ({i},{j})");
            }
        }
    }
}
