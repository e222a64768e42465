//! Elements of the graded-commutative algebra over the radial ring,
//! generated by Psi^i (odd), Omega^{ij} (even, antisymmetric), and the
//! auxiliary sector varpi_k (odd), b_k (even).
//!
//! The equivariant differential is the Cartan-model structure differential
//! (connection generator set to zero):
//!
//!   s v^k   = Psi^k              s Psi^k = -Omega^{km} v^m
//!   s varpi = b                  s b_k   = -Omega^{km} varpi_m
//!   s Omega = 0                  s f(t)  = 2 f'(t) v_k Psi^k
//!
//! so s^2 = -L(Omega) degree-wise, which the tests verify generator by
//! generator.

use super::grassmann::GrassmannNumber;
use super::monomial::FormMonomial;
use super::son::SoNElement;
use super::vpoly::VPoly;
use crate::expr::MetricSpec;
use crate::scalar::{GaussRat, RadialScalar, ScalarError, ZeroGuard};
use num::complex::Complex64;
use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum LieScope {
    /// so(n) acting on the fiber only: v and Psi transform, Omega is frozen.
    VOnly,
    /// so(n) acting on everything: v, Psi, varpi, b and Omega (by commutator).
    Full,
}

#[derive(Clone, Debug)]
pub struct Form {
    n: usize,
    terms: BTreeMap<FormMonomial, VPoly>,
}

enum Generator {
    Psi(usize),
    Varpi(usize),
    Omega(usize, usize),
    B(usize),
}

impl Form {
    pub fn zero(n: usize) -> Self {
        Form {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: usize) -> Self {
        Self::from_radial(n, RadialScalar::one())
    }

    pub fn from_radial(n: usize, r: RadialScalar) -> Self {
        Self::from_vpoly(VPoly::from_radial(n, r))
    }

    pub fn from_vpoly(p: VPoly) -> Self {
        let mut f = Form::zero(p.dim());
        f.insert(FormMonomial::one(), p);
        f
    }

    pub fn v(n: usize, k: usize) -> Self {
        Self::from_vpoly(VPoly::v(n, k))
    }

    pub fn psi(n: usize, k: usize) -> Self {
        assert!(k < n);
        let mut f = Form::zero(n);
        f.insert(FormMonomial::psi_gen(k), VPoly::one(n));
        f
    }

    /// Omega^{ij} with the antisymmetry convention baked in.
    pub fn omega(n: usize, i: usize, j: usize) -> Self {
        assert!(i < n && j < n);
        if i == j {
            return Form::zero(n);
        }
        let mut f = Form::zero(n);
        if i < j {
            f.insert(FormMonomial::omega_gen(i, j), VPoly::one(n));
        } else {
            f.insert(
                FormMonomial::omega_gen(j, i),
                VPoly::one(n).neg(),
            );
        }
        f
    }

    pub fn varpi(n: usize, k: usize) -> Self {
        assert!(k < n);
        let mut f = Form::zero(n);
        f.insert(FormMonomial::varpi_gen(k), VPoly::one(n));
        f
    }

    pub fn b_gen(n: usize, k: usize) -> Self {
        assert!(k < n);
        let mut f = Form::zero(n);
        f.insert(FormMonomial::b_gen(k), VPoly::one(n));
        f
    }

    /// The invariant pairing v_k Psi^k.
    pub fn v_dot_psi(n: usize) -> Self {
        let mut f = Form::zero(n);
        for k in 0..n {
            f.insert(FormMonomial::psi_gen(k), VPoly::v(n, k));
        }
        f
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> impl Iterator<Item = (&FormMonomial, &VPoly)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn insert(&mut self, mono: FormMonomial, coeff: VPoly) {
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(mono) {
            Entry::Vacant(slot) => {
                slot.insert(coeff);
            }
            Entry::Occupied(mut slot) => {
                let sum = slot.get().add(&coeff);
                if sum.is_zero() {
                    slot.remove();
                } else {
                    *slot.get_mut() = sum;
                }
            }
        }
    }

    pub fn coefficient(&self, mono: &FormMonomial) -> VPoly {
        self.terms
            .get(mono)
            .cloned()
            .unwrap_or_else(|| VPoly::zero(self.n))
    }

    pub fn add(&self, other: &Form) -> Form {
        assert_eq!(self.n, other.n);
        let mut out = self.clone();
        for (m, c) in other.terms.iter() {
            out.insert(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Form) -> Form {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Form {
        let mut out = Form::zero(self.n);
        for (m, c) in self.terms.iter() {
            out.terms.insert(m.clone(), c.neg());
        }
        out
    }

    pub fn mul(&self, other: &Form) -> Form {
        assert_eq!(self.n, other.n);
        let mut out = Form::zero(self.n);
        for (m1, c1) in self.terms.iter() {
            for (m2, c2) in other.terms.iter() {
                if let Some((m, sign)) = m1.try_mul(m2) {
                    let mut c = c1.mul(c2);
                    if sign < 0 {
                        c = c.neg();
                    }
                    out.insert(m, c);
                }
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Form {
        let mut acc = Form::one(self.n);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn scale_radial(&self, r: &RadialScalar) -> Form {
        let mut out = Form::zero(self.n);
        for (m, c) in self.terms.iter() {
            out.insert(m.clone(), c.scale(r));
        }
        out
    }

    pub fn scale_gauss(&self, g: &GaussRat) -> Form {
        self.scale_radial(&RadialScalar::from_gauss(g.clone()))
    }

    pub fn scale_vpoly(&self, p: &VPoly) -> Form {
        let mut out = Form::zero(self.n);
        for (m, c) in self.terms.iter() {
            out.insert(m.clone(), c.mul(p));
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero_checked(&self, guard: &mut ZeroGuard) -> Result<bool, ScalarError> {
        let mut all = true;
        for (_, c) in self.terms.iter() {
            all &= c.is_zero_checked(guard)?;
        }
        Ok(all)
    }

    /// The scalar (generator-free) part.
    pub fn scalar_part(&self) -> VPoly {
        self.coefficient(&FormMonomial::one())
    }

    /// Coefficient of Psi^1...Psi^n with no Omega/varpi/b factors.
    pub fn top_psi_coefficient(&self) -> VPoly {
        let mono = FormMonomial {
            psi: ((1u32 << self.n) - 1) as u16,
            ..Default::default()
        };
        self.coefficient(&mono)
    }

    /// Degree in the (Psi:1, Omega:2) grading when homogeneous.
    pub fn psi_omega_weight(&self) -> Option<usize> {
        let mut w = None;
        for (m, _) in self.terms.iter() {
            let mw = m.psi_omega_weight();
            match w {
                None => w = Some(mw),
                Some(prev) if prev != mw => return None,
                _ => {}
            }
        }
        w
    }

    pub fn has_auxiliary_sector(&self) -> bool {
        self.terms
            .keys()
            .any(|m| m.varpi != 0 || !m.b.is_empty())
    }

    // ---- derivations -----------------------------------------------------

    fn split_first(mono: &FormMonomial) -> Option<(Generator, FormMonomial)> {
        if mono.psi != 0 {
            let i = mono.psi.trailing_zeros() as usize;
            let mut rest = mono.clone();
            rest.psi &= !(1 << i);
            return Some((Generator::Psi(i), rest));
        }
        if mono.varpi != 0 {
            let k = mono.varpi.trailing_zeros() as usize;
            let mut rest = mono.clone();
            rest.varpi &= !(1 << k);
            return Some((Generator::Varpi(k), rest));
        }
        if !mono.omega.is_empty() {
            let (i, j) = mono.omega[0];
            let mut rest = mono.clone();
            rest.omega.remove(0);
            return Some((Generator::Omega(i as usize, j as usize), rest));
        }
        if !mono.b.is_empty() {
            let (k, e) = mono.b[0];
            let mut rest = mono.clone();
            if e > 1 {
                rest.b[0] = (k, e - 1);
            } else {
                rest.b.remove(0);
            }
            return Some((Generator::B(k as usize), rest));
        }
        None
    }

    fn mono_form(&self, mono: FormMonomial) -> Form {
        let mut f = Form::zero(self.n);
        f.insert(mono, VPoly::one(self.n));
        f
    }

    /// -Omega^{km} x_m summed over m, for x one of the generator families.
    fn omega_row_action(&self, k: usize, make: impl Fn(usize) -> Form) -> Form {
        let mut out = Form::zero(self.n);
        for m in 0..self.n {
            if m == k {
                continue;
            }
            out = out.add(&Form::omega(self.n, k, m).mul(&make(m)));
        }
        out
    }

    fn s_generator(&self, g: &Generator) -> Form {
        match g {
            Generator::Psi(i) => self
                .omega_row_action(*i, |m| Form::v(self.n, m))
                .neg(),
            Generator::Varpi(k) => Form::b_gen(self.n, *k),
            Generator::Omega(_, _) => Form::zero(self.n),
            Generator::B(k) => self
                .omega_row_action(*k, |m| Form::varpi(self.n, m))
                .neg(),
        }
    }

    fn s_monomial(&self, mono: &FormMonomial) -> Form {
        match Self::split_first(mono) {
            None => Form::zero(self.n),
            Some((g, rest)) => {
                let odd = matches!(g, Generator::Psi(_) | Generator::Varpi(_));
                let head = match &g {
                    Generator::Psi(i) => Form::psi(self.n, *i),
                    Generator::Varpi(k) => Form::varpi(self.n, *k),
                    Generator::Omega(i, j) => self.mono_form(FormMonomial::omega_gen(*i, *j)),
                    Generator::B(k) => Form::b_gen(self.n, *k),
                };
                let rest_form = self.mono_form(rest.clone());
                let mut out = self.s_generator(&g).mul(&rest_form);
                let tail = head.mul(&self.s_monomial(&rest));
                if odd {
                    out = out.sub(&tail);
                } else {
                    out = out.add(&tail);
                }
                out
            }
        }
    }

    /// The equivariant (Cartan model) differential.
    pub fn equivariant_differential(&self) -> Form {
        let mut out = Form::zero(self.n);
        for (mono, coeff) in self.terms.iter() {
            // s on the coefficient: sum_k (d coeff / d v^k) Psi^k
            for k in 0..self.n {
                let d = coeff.partial_v(k);
                if d.is_zero() {
                    continue;
                }
                let mut lead = Form::zero(self.n);
                lead.insert(FormMonomial::psi_gen(k), d);
                out = out.add(&lead.mul(&self.mono_form(mono.clone())));
            }
            // coefficient times s on the monomial
            let smono = self.s_monomial(mono);
            if !smono.is_zero() {
                out = out.add(&smono.scale_vpoly(coeff));
            }
        }
        out
    }

    fn lie_omega_generator(&self, g: &Generator) -> Form {
        match g {
            Generator::Psi(i) => self.omega_row_action(*i, |m| Form::psi(self.n, m)),
            Generator::Varpi(k) => self.omega_row_action(*k, |m| Form::varpi(self.n, m)),
            Generator::B(k) => self.omega_row_action(*k, |m| Form::b_gen(self.n, m)),
            // [Omega, Omega] = 0 since the entries commute.
            Generator::Omega(_, _) => Form::zero(self.n),
        }
    }

    fn lie_omega_monomial(&self, mono: &FormMonomial) -> Form {
        match Self::split_first(mono) {
            None => Form::zero(self.n),
            Some((g, rest)) => {
                let head = match &g {
                    Generator::Psi(i) => Form::psi(self.n, *i),
                    Generator::Varpi(k) => Form::varpi(self.n, *k),
                    Generator::Omega(i, j) => self.mono_form(FormMonomial::omega_gen(*i, *j)),
                    Generator::B(k) => Form::b_gen(self.n, *k),
                };
                let rest_form = self.mono_form(rest.clone());
                self.lie_omega_generator(&g)
                    .mul(&rest_form)
                    .add(&head.mul(&self.lie_omega_monomial(&rest)))
            }
        }
    }

    /// L(Omega): the so(n) action with the curvature generator as parameter.
    pub fn lie_omega(&self) -> Form {
        let mut out = Form::zero(self.n);
        for (mono, coeff) in self.terms.iter() {
            for k in 0..self.n {
                let d = coeff.partial_v(k);
                if d.is_zero() {
                    continue;
                }
                // L v^k = Omega^{km} v^m
                let action = self.omega_row_action(k, |m| Form::v(self.n, m));
                out = out.add(
                    &Form::from_vpoly(d)
                        .mul(&action)
                        .mul(&self.mono_form(mono.clone())),
                );
            }
            let lmono = self.lie_omega_monomial(mono);
            if !lmono.is_zero() {
                out = out.add(&lmono.scale_vpoly(coeff));
            }
        }
        out
    }

    fn lambda_row(&self, lambda: &SoNElement, k: usize, make: impl Fn(usize) -> Form) -> Form {
        let mut out = Form::zero(self.n);
        for m in 0..self.n {
            let c = lambda.entry(k, m);
            if num::Zero::is_zero(c) {
                continue;
            }
            out = out.add(&make(m).scale_radial(&RadialScalar::from_rational(c.clone())));
        }
        out
    }

    fn lie_lambda_generator(&self, lambda: &SoNElement, scope: LieScope, g: &Generator) -> Form {
        match g {
            Generator::Psi(i) => self.lambda_row(lambda, *i, |m| Form::psi(self.n, m)),
            Generator::Varpi(k) => match scope {
                LieScope::Full => self.lambda_row(lambda, *k, |m| Form::varpi(self.n, m)),
                LieScope::VOnly => Form::zero(self.n),
            },
            Generator::B(k) => match scope {
                LieScope::Full => self.lambda_row(lambda, *k, |m| Form::b_gen(self.n, m)),
                LieScope::VOnly => Form::zero(self.n),
            },
            Generator::Omega(i, j) => match scope {
                LieScope::VOnly => Form::zero(self.n),
                LieScope::Full => {
                    // [lambda, Omega]^{ij}
                    let mut out = Form::zero(self.n);
                    for k in 0..self.n {
                        let lik = lambda.entry(*i, k);
                        if !num::Zero::is_zero(lik) {
                            out = out.add(
                                &Form::omega(self.n, k, *j)
                                    .scale_radial(&RadialScalar::from_rational(lik.clone())),
                            );
                        }
                        let lkj = lambda.entry(k, *j);
                        if !num::Zero::is_zero(lkj) {
                            out = out.sub(
                                &Form::omega(self.n, *i, k)
                                    .scale_radial(&RadialScalar::from_rational(lkj.clone())),
                            );
                        }
                    }
                    out
                }
            },
        }
    }

    fn lie_lambda_monomial(
        &self,
        lambda: &SoNElement,
        scope: LieScope,
        mono: &FormMonomial,
    ) -> Form {
        match Self::split_first(mono) {
            None => Form::zero(self.n),
            Some((g, rest)) => {
                let head = match &g {
                    Generator::Psi(i) => Form::psi(self.n, *i),
                    Generator::Varpi(k) => Form::varpi(self.n, *k),
                    Generator::Omega(i, j) => self.mono_form(FormMonomial::omega_gen(*i, *j)),
                    Generator::B(k) => Form::b_gen(self.n, *k),
                };
                let rest_form = self.mono_form(rest.clone());
                self.lie_lambda_generator(lambda, scope, &g)
                    .mul(&rest_form)
                    .add(&head.mul(&self.lie_lambda_monomial(lambda, scope, &rest)))
            }
        }
    }

    /// Infinitesimal so(n) action by a numeric antisymmetric matrix.
    pub fn lie_action(&self, lambda: &SoNElement, scope: LieScope) -> Form {
        assert_eq!(lambda.dim(), self.n);
        let mut out = Form::zero(self.n);
        for (mono, coeff) in self.terms.iter() {
            for k in 0..self.n {
                let d = coeff.partial_v(k);
                if d.is_zero() {
                    continue;
                }
                let mut lv = VPoly::zero(self.n);
                for m in 0..self.n {
                    let c = lambda.entry(k, m);
                    if !num::Zero::is_zero(c) {
                        lv = lv.add(
                            &VPoly::v(self.n, m)
                                .scale(&RadialScalar::from_rational(c.clone())),
                        );
                    }
                }
                if !lv.is_zero() {
                    let mut lead = Form::zero(self.n);
                    lead.insert(mono.clone(), d.mul(&lv));
                    out = out.add(&lead);
                }
            }
            let lmono = self.lie_lambda_monomial(lambda, scope, mono);
            if !lmono.is_zero() {
                out = out.add(&lmono.scale_vpoly(coeff));
            }
        }
        out
    }

    /// De Rham differential: acts on the coefficients only (the generators
    /// Psi, Omega are treated as constants, which is the restriction of the
    /// structure differential used inside the curvature computation).
    pub fn de_rham(&self) -> Form {
        let mut out = Form::zero(self.n);
        for (mono, coeff) in self.terms.iter() {
            for k in 0..self.n {
                let d = coeff.partial_v(k);
                if d.is_zero() {
                    continue;
                }
                let mut lead = Form::zero(self.n);
                lead.insert(FormMonomial::psi_gen(k), d);
                out = out.add(&lead.mul(&self.mono_form(mono.clone())));
            }
        }
        out
    }

    /// exp of a nilpotent element; errors if x^k does not vanish by k = cap.
    pub fn exp_nilpotent(&self) -> Result<Form, ScalarError> {
        let cap = 2 * self.n + 3;
        let mut out = Form::one(self.n);
        let mut power = Form::one(self.n);
        let mut factorial = GaussRat::one();
        for k in 1..=cap {
            power = power.mul(self);
            if power.is_zero() {
                return Ok(out);
            }
            factorial = &factorial * &GaussRat::from_int(k as i64);
            out = out.add(&power.scale_gauss(&factorial.inv()));
        }
        Err(ScalarError::Unsupported(
            "exponent is not nilpotent".to_string(),
        ))
    }

    /// Numeric substitution v -> numbers, Omega^{ij} -> antisymmetric floats.
    pub fn substitute_numeric(
        &self,
        v: &[f64],
        omega: &[Vec<f64>],
        spec: Option<&MetricSpec>,
    ) -> Result<GrassmannNumber, ScalarError> {
        assert_eq!(v.len(), self.n);
        let mut out = GrassmannNumber::zero(self.n);
        for (mono, coeff) in self.terms.iter() {
            if mono.varpi != 0 || !mono.b.is_empty() {
                return Err(ScalarError::Unsupported(
                    "numeric substitution in the auxiliary (varpi, b) sector".into(),
                ));
            }
            let (re, im) = coeff.eval(v, spec)?;
            let mut z = Complex64::new(re, im);
            for (i, j) in mono.omega.iter() {
                z *= omega[*i as usize][*j as usize];
            }
            out.add_assign_term(mono.psi as usize, z);
        }
        Ok(out)
    }

    pub fn to_canonical_string(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| format!("{}:{{{}}}", m.to_canonical_string(), c.to_canonical_string()))
            .collect();
        parts.join("|")
    }
}

impl PartialEq for Form {
    fn eq(&self, other: &Self) -> bool {
        self.sub(other).is_zero()
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_canonical_string())
    }
}
