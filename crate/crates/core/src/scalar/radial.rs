//! The exact differential ring of radial functions of t.
//!
//! A `RadialScalar` is a rational expression `num / prod f_i^{e_i}` whose
//! numerator may contain registered atoms and whose denominator factors are
//! monic, root-atom-free polynomials kept in a canonical factored form.
//! Cancellation runs by exact trial division against each factor; in the
//! univariate (concrete metric) regime the denominator is additionally
//! reduced by a full gcd and re-split into squarefree factors, which makes
//! canonical forms collapse across different computation routes.

use super::atom::{Atom, AtomKind};
use super::gauss::GaussRat;
use super::poly::{Monomial, Poly, Var};
use super::univariate;
use crate::expr::MetricSpec;
use num::{BigInt, BigRational, Integer, One, Signed, Zero};
use std::cmp::Ordering;
use std::fmt;

#[derive(Debug, Clone, thiserror::Error, PartialEq)]
pub enum ScalarError {
    #[error("degenerate metric: 1 + t*sigma vanishes identically")]
    DegenerateMetric,
    #[error("degenerate kernel: 1 + t*C vanishes identically")]
    DegenerateKernel,
    #[error("symbolic zero test and numeric guard disagree for `{0}`")]
    InconsistentNormalization(String),
    #[error("domain error during evaluation: {0}")]
    DomainError(String),
    #[error("no numeric interpretation for `{0}` without metric bindings")]
    MissingBinding(String),
    #[error("division by an exact zero")]
    DivisionByZero,
    #[error("unsupported operation: {0}")]
    Unsupported(String),
}

#[derive(Clone, Debug)]
pub struct RadialScalar {
    num: Poly,
    /// Monic denominator factors with exponents, sorted by `Poly` order.
    den: Vec<(Poly, u32)>,
}

impl RadialScalar {
    fn make(num: Poly, den: Vec<(Poly, u32)>) -> Self {
        let mut r = RadialScalar { num, den };
        r.normalize();
        r
    }

    pub fn zero() -> Self {
        RadialScalar {
            num: Poly::zero(),
            den: Vec::new(),
        }
    }

    pub fn one() -> Self {
        RadialScalar {
            num: Poly::one(),
            den: Vec::new(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        RadialScalar {
            num: Poly::from_int(n),
            den: Vec::new(),
        }
    }

    pub fn from_ratio(p: i64, q: i64) -> Self {
        RadialScalar {
            num: Poly::constant(GaussRat::from_ratio(p, q)),
            den: Vec::new(),
        }
    }

    pub fn from_rational(r: BigRational) -> Self {
        RadialScalar {
            num: Poly::constant(GaussRat::from_rational(r)),
            den: Vec::new(),
        }
    }

    pub fn from_gauss(c: GaussRat) -> Self {
        RadialScalar {
            num: Poly::constant(c),
            den: Vec::new(),
        }
    }

    pub fn i_unit() -> Self {
        Self::from_gauss(GaussRat::i())
    }

    pub fn var(v: Var) -> Self {
        RadialScalar {
            num: Poly::var(v),
            den: Vec::new(),
        }
    }

    pub fn t() -> Self {
        Self::var(Var::T)
    }

    pub fn c(k: u8) -> Self {
        Self::var(Var::C(k))
    }

    pub fn s(k: u8) -> Self {
        Self::var(Var::S(k))
    }

    pub fn pi() -> Self {
        Self::var(Var::Pi)
    }

    pub fn atom(a: Atom) -> Self {
        Self::var(Var::Atom(a))
    }

    pub fn from_poly(p: Poly) -> Self {
        RadialScalar {
            num: p,
            den: Vec::new(),
        }
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator_factors(&self) -> &[(Poly, u32)] {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_empty() && self.num.as_constant().map_or(false, |c| c.is_one())
    }

    pub fn as_constant(&self) -> Option<GaussRat> {
        if self.den.is_empty() {
            self.num.as_constant()
        } else {
            None
        }
    }

    pub fn is_real(&self) -> bool {
        self.num.terms().all(|(_, c)| c.is_real())
            && self
                .den
                .iter()
                .all(|(f, _)| f.terms().all(|(_, c)| c.is_real()))
    }

    pub fn den_expanded(&self) -> Poly {
        let mut p = Poly::one();
        for (f, e) in &self.den {
            p = p.mul(&f.pow(*e));
        }
        p
    }

    // ---- normalization -------------------------------------------------

    fn push_factor(&mut self, factor: Poly, exp: u32) {
        if exp == 0 {
            return;
        }
        let mut f = factor;
        assert!(!f.is_zero(), "zero denominator factor");
        let lead = f.make_monic();
        if !lead.is_one() {
            let scale = lead.inv().pow(exp as i64);
            self.num.scale(&scale);
        }
        if f.as_constant().is_some() {
            return; // constants fold into the numerator
        }
        self.den.push((f, exp));
    }

    fn normalize(&mut self) {
        if self.num.is_zero() {
            self.den.clear();
            return;
        }
        self.den.sort_by(|a, b| a.0.cmp(&b.0));
        let mut merged: Vec<(Poly, u32)> = Vec::with_capacity(self.den.len());
        for (f, e) in self.den.drain(..) {
            match merged.last_mut() {
                Some((g, ge)) if *g == f => *ge += e,
                _ => merged.push((f, e)),
            }
        }
        self.den = merged;
        for i in 0..self.den.len() {
            loop {
                if self.den[i].1 == 0 {
                    break;
                }
                match self.num.exact_div(&self.den[i].0) {
                    Some(q) => {
                        self.num = q;
                        self.den[i].1 -= 1;
                    }
                    None => break,
                }
            }
        }
        self.den.retain(|(_, e)| *e > 0);
        if !self.den.is_empty()
            && self.den.iter().all(|(f, _)| f.is_univariate_t())
            && self
                .den
                .iter()
                .all(|(f, _)| f.terms().all(|(_, c)| c.is_real()))
        {
            self.reduce_univariate();
        }
        self.den.sort_by(|a, b| a.0.cmp(&b.0));
    }

    /// gcd-reduce the numerator's t-content against a univariate denominator
    /// and re-split the denominator into squarefree monic factors.
    fn reduce_univariate(&mut self) {
        let mut den_dense = vec![BigRational::one()];
        for (f, e) in &self.den {
            let fd = match univariate::to_dense(f) {
                Some(d) => d,
                None => return,
            };
            for _ in 0..*e {
                den_dense = univariate::mul(&den_dense, &fd);
            }
        }
        // t-content of the numerator: gcd over the t-parts of each group of
        // terms sharing the same non-t monomial.
        let mut groups: std::collections::BTreeMap<Monomial, Poly> =
            std::collections::BTreeMap::new();
        for (m, c) in self.num.terms() {
            let te = m.exponent(&Var::T);
            let rest = m.with_exponent(&Var::T, 0);
            let mut tpart = Poly::zero();
            tpart.add_term(Monomial::var_pow(Var::T, te), c.clone());
            groups
                .entry(rest)
                .and_modify(|p| *p = p.add(&tpart))
                .or_insert(tpart);
        }
        let mut content: Option<univariate::Dense> = None;
        for p in groups.values() {
            let d = match univariate::to_dense(p) {
                Some(d) => d,
                None => {
                    content = None;
                    break;
                }
            };
            content = Some(match content {
                None => d,
                Some(c) => univariate::gcd(&c, &d),
            });
            if content
                .as_ref()
                .map_or(false, |c| univariate::degree(c) == Some(0))
            {
                break;
            }
        }
        if let Some(c) = content {
            if univariate::degree(&c).unwrap_or(0) > 0 {
                let g = univariate::gcd(&c, &den_dense);
                if univariate::degree(&g).unwrap_or(0) > 0 {
                    let gp = univariate::from_dense(&g);
                    self.num = self.num.exact_div(&gp).expect("content divides numerator");
                    den_dense = univariate::div_exact(&den_dense, &g).expect("gcd divides");
                }
            }
        }
        let mut monic = den_dense;
        let lc = univariate::make_monic(&mut monic);
        if !lc.is_one() {
            self.num.scale(&GaussRat::from_rational(lc).inv());
        }
        self.den.clear();
        if univariate::degree(&monic).unwrap_or(0) == 0 {
            return;
        }
        for (f, e) in univariate::squarefree_decompose(&monic) {
            self.den.push((univariate::from_dense(&f), e));
        }
    }

    // ---- arithmetic ------------------------------------------------------

    pub fn add(&self, other: &RadialScalar) -> RadialScalar {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let mut union: Vec<(Poly, u32)> = self.den.clone();
        for (f, e) in &other.den {
            match union.iter_mut().find(|(g, _)| g == f) {
                Some((_, ue)) => *ue = (*ue).max(*e),
                None => union.push((f.clone(), *e)),
            }
        }
        let lift = |x: &RadialScalar| -> Poly {
            let mut p = x.num.clone();
            for (f, ue) in &union {
                let have = x
                    .den
                    .iter()
                    .find(|(g, _)| g == f)
                    .map(|(_, e)| *e)
                    .unwrap_or(0);
                if *ue > have {
                    p = p.mul(&f.pow(ue - have));
                }
            }
            p
        };
        let num = lift(self).add(&lift(other));
        RadialScalar::make(num, union)
    }

    pub fn sub(&self, other: &RadialScalar) -> RadialScalar {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> RadialScalar {
        RadialScalar {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &RadialScalar) -> RadialScalar {
        if self.is_zero() || other.is_zero() {
            return RadialScalar::zero();
        }
        let num = self.num.mul(&other.num);
        let mut den = self.den.clone();
        den.extend(other.den.iter().cloned());
        RadialScalar::make(num, den)
    }

    pub fn scale(&self, c: &GaussRat) -> RadialScalar {
        let mut num = self.num.clone();
        num.scale(c);
        RadialScalar::make(num, self.den.clone())
    }

    pub fn div(&self, other: &RadialScalar) -> RadialScalar {
        self.mul(&other.inv())
    }

    /// Multiplicative inverse.  Panics on exact zero; use `try_inv` for a
    /// checked version.
    pub fn inv(&self) -> RadialScalar {
        self.try_inv().expect("division by zero RadialScalar")
    }

    pub fn try_inv(&self) -> Result<RadialScalar, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        let den_poly = self.den_expanded();
        let root_atoms: Vec<Atom> = {
            let mut vars = Vec::new();
            self.num.collect_vars(&mut vars);
            vars.into_iter()
                .filter_map(|v| match v {
                    Var::Atom(a) if matches!(a.kind(), AtomKind::Root { .. }) => Some(a),
                    _ => None,
                })
                .collect()
        };
        if root_atoms.is_empty() {
            let mut out = RadialScalar {
                num: den_poly,
                den: Vec::new(),
            };
            out.push_factor(self.num.clone(), 1);
            out.normalize();
            return Ok(out);
        }
        // Single-term numerator: atom powers invert via K^{-e} = K^{r-e}/base.
        if self.num.num_terms() == 1 {
            let (mono, coeff) = self.num.terms().next().unwrap();
            let mut num = den_poly;
            num.scale(&coeff.inv());
            let mut out = RadialScalar {
                num,
                den: Vec::new(),
            };
            for (v, e) in mono.vars() {
                match v {
                    Var::Atom(a) => {
                        if let AtomKind::Root { base, index } = a.kind() {
                            // exponents are reduced, so 0 < e < index
                            let mut lift = Poly::zero();
                            lift.add_term(
                                Monomial::var_pow(v.clone(), index - e),
                                GaussRat::one(),
                            );
                            out.num = out.num.mul(&lift);
                            out.push_factor(base.clone(), 1);
                        } else {
                            out.push_factor(Poly::var(v.clone()), *e);
                        }
                    }
                    _ => out.push_factor(Poly::var(v.clone()), *e),
                }
            }
            out.normalize();
            return Ok(out);
        }
        // (p + q K)^{-1} = (p - q K) / (p^2 - q^2 base) for a single sqrt atom.
        if root_atoms.len() == 1 {
            let a = &root_atoms[0];
            if let AtomKind::Root { base, index: 2 } = a.kind() {
                let v = Var::Atom(a.clone());
                let p = self.num.coefficient_of(&v, 0);
                let q = self.num.coefficient_of(&v, 1);
                let conj = p.sub(&q.mul(&Poly::var(v.clone())));
                let norm = p.mul(&p).sub(&q.mul(&q).mul(base));
                let inv_norm = RadialScalar::make(norm, Vec::new()).try_inv()?;
                let out = RadialScalar {
                    num: den_poly.mul(&conj),
                    den: Vec::new(),
                };
                return Ok(out.mul(&inv_norm));
            }
        }
        Err(ScalarError::Unsupported(
            "inverse of a multi-term root-atom expression".to_string(),
        ))
    }

    pub fn pow(&self, e: i64) -> RadialScalar {
        if e < 0 {
            return self.inv().pow(-e);
        }
        let mut acc = RadialScalar::one();
        let mut base = self.clone();
        let mut e = e as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    // ---- differentiation -------------------------------------------------

    /// d/dt of a single ring variable.
    fn derive_var(v: &Var) -> RadialScalar {
        match v {
            Var::T => RadialScalar::one(),
            Var::C(k) => RadialScalar::c(k + 1),
            Var::S(k) => RadialScalar::s(k + 1),
            Var::Pi => RadialScalar::zero(),
            Var::Atom(a) => match a.kind() {
                AtomKind::ExpPhi => RadialScalar::c(0).mul(&RadialScalar::var(v.clone())),
                AtomKind::Exp { exponent } => {
                    exponent.derive().mul(&RadialScalar::var(v.clone()))
                }
                AtomKind::Log { arg } => arg.derive().div(arg),
                AtomKind::Root { base, index } => {
                    let db = derive_poly(base);
                    let b = RadialScalar::from_poly(base.clone());
                    db.div(&b)
                        .scale(&GaussRat::from_ratio(1, *index as i64))
                        .mul(&RadialScalar::var(v.clone()))
                }
            },
        }
    }

    /// Exact symbolic derivative d/dt.
    pub fn derive(&self) -> RadialScalar {
        let mut out = derive_poly(&self.num).div_by_factors(&self.den);
        for (f, e) in &self.den {
            let term = derive_poly(f)
                .div(&RadialScalar::from_poly(f.clone()))
                .scale(&GaussRat::from_int(*e as i64))
                .mul(self);
            out = out.sub(&term);
        }
        out
    }

    fn div_by_factors(mut self, factors: &[(Poly, u32)]) -> RadialScalar {
        for (f, e) in factors {
            self.den.push((f.clone(), *e));
        }
        self.normalize();
        self
    }

    // ---- named operations --------------------------------------------------

    /// sigma-tilde with (1 + t sigma-tilde)(1 + t sigma) = 1.
    pub fn tilde_sigma(sigma: &RadialScalar) -> Result<RadialScalar, ScalarError> {
        let one_plus = RadialScalar::one().add(&RadialScalar::t().mul(sigma));
        if one_plus.is_zero() {
            return Err(ScalarError::DegenerateMetric);
        }
        Ok(sigma.neg().div(&one_plus))
    }

    /// r-th root.  Splits rational and (univariate) polynomial perfect powers
    /// out of the base and returns `mult * K` with `K^r = base` for the
    /// power-free remainder, or a plain scalar when the root is exact.
    pub fn nth_root(&self, r: u32) -> Result<RadialScalar, ScalarError> {
        assert!(r >= 1);
        if r == 1 {
            return Ok(self.clone());
        }
        if self.is_zero() {
            return Ok(RadialScalar::zero());
        }
        let den = self.den_expanded();
        let base0 = self.num.mul(&den.pow(r - 1));
        let inv_den = RadialScalar::from_poly(den).inv();
        let rooted = poly_root(&base0, r)?;
        Ok(rooted.mul(&inv_den))
    }

    pub fn sqrt(&self) -> Result<RadialScalar, ScalarError> {
        self.nth_root(2)
    }

    /// e^{self} as a ring element.
    pub fn exp_of(&self) -> RadialScalar {
        if self.is_zero() {
            return RadialScalar::one();
        }
        RadialScalar::atom(Atom::exp(self.clone()))
    }

    // ---- evaluation -----------------------------------------------------

    /// Numeric value at `t`, with metric bindings for the symbolic towers.
    pub fn eval(&self, t: f64, spec: Option<&MetricSpec>) -> Result<f64, ScalarError> {
        let (re, im, mag) = self.eval_complex(t, spec)?;
        if im.abs() > 1e-9 * mag.max(1.0) {
            return Err(ScalarError::DomainError(
                "value has a nonzero imaginary part".into(),
            ));
        }
        Ok(re)
    }

    pub fn eval_complex(
        &self,
        t: f64,
        spec: Option<&MetricSpec>,
    ) -> Result<(f64, f64, f64), ScalarError> {
        let (nre, nim, nmag) = self.num.eval_with(|v| resolve_spec(v, t, spec))?;
        let mut dre = 1.0;
        let mut dim = 0.0;
        for (f, e) in &self.den {
            let (fre, fim, _) = f.eval_with(|v| resolve_spec(v, t, spec))?;
            for _ in 0..*e {
                let r = dre * fre - dim * fim;
                let i = dre * fim + dim * fre;
                dre = r;
                dim = i;
            }
        }
        let dn = dre * dre + dim * dim;
        if dn.sqrt() < 1e-300 {
            return Err(ScalarError::DomainError(
                "denominator magnitude below 1e-300".into(),
            ));
        }
        Ok((
            (nre * dre + nim * dim) / dn,
            (nim * dre - nre * dim) / dn,
            nmag / dn.sqrt(),
        ))
    }

    /// Evaluate the numerator at an arbitrary jet assignment (the zero guard).
    pub(crate) fn eval_numerator_assignment(
        &self,
        a: &super::guard::VarAssignment,
    ) -> Result<(f64, f64, f64), ScalarError> {
        self.num.eval_with(|v| a.resolve(v))
    }

    // ---- serialization ----------------------------------------------------

    pub fn to_canonical_string(&self) -> String {
        if self.den.is_empty() {
            format!("{}", self.num)
        } else {
            let den: Vec<String> = self
                .den
                .iter()
                .map(|(f, e)| {
                    if *e == 1 {
                        format!("({f})")
                    } else {
                        format!("({f})^{e}")
                    }
                })
                .collect();
            format!("({})/{}", self.num, den.join("*"))
        }
    }
}

/// Derivative of a polynomial as a ring element (rational in general).
fn derive_poly(p: &Poly) -> RadialScalar {
    let mut out = RadialScalar::zero();
    for (m, c) in p.terms() {
        for (v, e) in m.vars() {
            let dv = RadialScalar::derive_var(v);
            if dv.is_zero() {
                continue;
            }
            let lowered = m.with_exponent(v, e - 1);
            let mut factor = Poly::zero();
            let mut ce = c.clone();
            ce *= &GaussRat::from_int(*e as i64);
            factor.add_term(lowered, ce);
            out = out.add(&RadialScalar::from_poly(factor).mul(&dv));
        }
    }
    out
}

/// r-th root of a polynomial with perfect-power extraction.
fn poly_root(p: &Poly, r: u32) -> Result<RadialScalar, ScalarError> {
    if p.is_zero() {
        return Ok(RadialScalar::zero());
    }
    if p.terms().any(|(_, c)| !c.is_real()) {
        return Err(ScalarError::Unsupported(
            "root of a complex-coefficient polynomial".into(),
        ));
    }
    // Positive rational content and primitive part.
    let mut content = BigRational::zero();
    for (_, c) in p.terms() {
        content = rational_content_gcd(&content, &c.re().abs());
    }
    let mut prim = p.clone();
    prim.scale(&GaussRat::from_rational(content.clone()).inv());
    let mut mult = RadialScalar::one();
    let mut residue = Poly::one();
    if let Some(dense) = univariate::to_dense(&prim) {
        let mut monic = dense;
        let lc = univariate::make_monic(&mut monic);
        content *= lc.abs();
        if lc.is_negative() {
            residue = residue.neg();
        }
        if univariate::degree(&monic).unwrap_or(0) > 0 {
            for (f, e) in univariate::squarefree_decompose(&monic) {
                let fp = univariate::from_dense(&f);
                if e / r > 0 {
                    mult = mult.mul(&RadialScalar::from_poly(fp.pow(e / r)));
                }
                if e % r != 0 {
                    residue = residue.mul(&fp.pow(e % r));
                }
            }
        }
    } else {
        residue = residue.mul(&prim);
    }
    // content = alpha/beta: (alpha/beta)^{1/r} = (alpha beta^{r-1})^{1/r} / beta.
    let alpha = content.numer().clone();
    let beta = content.denom().clone();
    let inside = &alpha * ipow(&beta, r - 1);
    let (int_root, int_rest) = extract_rth_power(&inside, r);
    mult = mult.mul(&RadialScalar::from_rational(BigRational::new(
        int_root, beta,
    )));
    if !int_rest.is_one() {
        let mut cpoly = Poly::constant(GaussRat::from_rational(BigRational::from_integer(
            int_rest,
        )));
        cpoly = cpoly.mul(&residue);
        residue = cpoly;
    }
    match residue.as_constant() {
        Some(c) if c.is_one() => Ok(mult),
        Some(c) if c.re().is_negative() => Err(ScalarError::DomainError(format!(
            "{r}-th root of negative quantity {c}"
        ))),
        Some(_) => {
            let atom = Atom::root_raw(residue, r);
            Ok(mult.mul(&RadialScalar::atom(atom)))
        }
        None => {
            let atom = Atom::root_raw(residue, r);
            Ok(mult.mul(&RadialScalar::atom(atom)))
        }
    }
}

fn rational_content_gcd(a: &BigRational, b: &BigRational) -> BigRational {
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    BigRational::new(a.numer().gcd(b.numer()), a.denom().lcm(b.denom()))
}

fn ipow(b: &BigInt, e: u32) -> BigInt {
    let mut acc = BigInt::one();
    for _ in 0..e {
        acc *= b;
    }
    acc
}

/// n = root^r * rest; rest r-th-power-free up to trial factoring below 10^4
/// plus a perfect-power check on the remainder.
fn extract_rth_power(n: &BigInt, r: u32) -> (BigInt, BigInt) {
    assert!(!n.is_negative());
    if n.is_zero() || n.is_one() {
        return (n.clone(), BigInt::one());
    }
    let mut remaining = n.clone();
    let mut root = BigInt::one();
    let mut rest = BigInt::one();
    let mut p = BigInt::from(2u32);
    let limit = BigInt::from(10_000u32);
    while &(&p * &p) <= &remaining && p <= limit {
        if (&remaining % &p).is_zero() {
            let mut count = 0u32;
            while (&remaining % &p).is_zero() {
                remaining /= &p;
                count += 1;
            }
            root *= ipow(&p, count / r);
            rest *= ipow(&p, count % r);
        }
        p += 1u32;
    }
    if !remaining.is_one() {
        let cand = remaining.nth_root(r);
        if ipow(&cand, r) == remaining {
            root *= cand;
        } else {
            rest *= &remaining;
        }
    }
    (root, rest)
}

impl PartialEq for RadialScalar {
    fn eq(&self, other: &Self) -> bool {
        self.sub(other).is_zero()
    }
}
impl Eq for RadialScalar {}

impl PartialOrd for RadialScalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for RadialScalar {
    fn cmp(&self, other: &Self) -> Ordering {
        self.num
            .cmp(&other.num)
            .then_with(|| self.den.cmp(&other.den))
    }
}

fn resolve_spec(v: &Var, t: f64, spec: Option<&MetricSpec>) -> Result<f64, ScalarError> {
    match v {
        Var::T => Ok(t),
        Var::Pi => Ok(std::f64::consts::PI),
        Var::C(k) => {
            let spec = spec.ok_or_else(|| ScalarError::MissingBinding(format!("{v}")))?;
            spec.phi_derivative(*k as usize + 1, t)
                .map_err(ScalarError::DomainError)
        }
        Var::S(k) => {
            let spec = spec.ok_or_else(|| ScalarError::MissingBinding(format!("{v}")))?;
            spec.sigma_derivative(*k as usize, t)
                .map_err(ScalarError::DomainError)
        }
        Var::Atom(a) => match a.kind() {
            AtomKind::ExpPhi => {
                let spec = spec.ok_or_else(|| ScalarError::MissingBinding(format!("{v}")))?;
                let phi = spec
                    .phi_derivative(0, t)
                    .map_err(ScalarError::DomainError)?;
                Ok(phi.exp())
            }
            AtomKind::Exp { exponent } => Ok(exponent.eval(t, spec)?.exp()),
            AtomKind::Log { arg } => {
                let x = arg.eval(t, spec)?;
                if x <= 0.0 {
                    return Err(ScalarError::DomainError(format!(
                        "ln of non-positive value {x}"
                    )));
                }
                Ok(x.ln())
            }
            AtomKind::Root { base, index } => {
                let (re, im, _) = base.eval_with(|w| resolve_spec(w, t, spec))?;
                if im.abs() > 1e-12 * re.abs().max(1.0) {
                    return Err(ScalarError::DomainError("complex root base".into()));
                }
                if re < 0.0 {
                    return Err(ScalarError::DomainError(format!(
                        "{index}-th root of negative value {re}"
                    )));
                }
                Ok(re.powf(1.0 / *index as f64))
            }
        },
    }
}

impl fmt::Display for RadialScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_canonical_string())
    }
}
