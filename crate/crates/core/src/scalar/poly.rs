//! Sparse multivariate polynomials over Q(i) in the radial indeterminates.
//!
//! Variables are `t`, the derivative towers `c_k = phi^{(k+1)}` and
//! `s_k = sigma^{(k)}`, the constant `pi`, and registered transcendental
//! atoms (exponentials, logarithms, roots).  Root atoms carry an algebraic
//! relation `K^r = base`; insertion keeps every root exponent reduced below
//! `r`, so the zero polynomial is the unique representation of zero.

use super::atom::{Atom, AtomKind};
use super::gauss::GaussRat;
use smallvec::SmallVec;
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

/// Indeterminates of the radial ring, in canonical order.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Var {
    /// t = (v, v)
    T,
    /// c_k: the k-th t-derivative of phi-dot (c_0 = C = phi-dot).
    C(u8),
    /// s_k: the k-th t-derivative of sigma (s_0 = sigma).
    S(u8),
    /// The circle constant.
    Pi,
    /// A registered transcendental atom.
    Atom(Atom),
}

impl Var {
    pub fn atom(&self) -> Option<&Atom> {
        match self {
            Var::Atom(a) => Some(a),
            _ => None,
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::T => write!(f, "t"),
            Var::C(k) => write!(f, "c{k}"),
            Var::S(k) => write!(f, "s{k}"),
            Var::Pi => write!(f, "pi"),
            Var::Atom(a) => write!(f, "{}", a.key()),
        }
    }
}

/// A power product of variables, sorted by `Var`; exponents are positive.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Monomial(SmallVec<[(Var, u32); 4]>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(SmallVec::new())
    }

    pub fn var(v: Var) -> Self {
        Monomial(smallvec::smallvec![(v, 1)])
    }

    pub fn var_pow(v: Var, e: u32) -> Self {
        if e == 0 {
            Monomial::one()
        } else {
            Monomial(smallvec::smallvec![(v, e)])
        }
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|(_, e)| *e as u64).sum()
    }

    pub fn exponent(&self, v: &Var) -> u32 {
        self.0
            .iter()
            .find(|(w, _)| w == v)
            .map(|(_, e)| *e)
            .unwrap_or(0)
    }

    pub fn vars(&self) -> impl Iterator<Item = &(Var, u32)> {
        self.0.iter()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out: SmallVec<[(Var, u32); 4]> = SmallVec::new();
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].0.cmp(&other.0[j].0) {
                Ordering::Less => {
                    out.push(self.0[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(other.0[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((self.0[i].0.clone(), self.0[i].1 + other.0[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.0[i..].iter().cloned());
        out.extend(other.0[j..].iter().cloned());
        Monomial(out)
    }

    /// Componentwise division; `None` if any exponent would go negative.
    pub fn try_div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out: SmallVec<[(Var, u32); 4]> = SmallVec::new();
        let mut i = 0;
        for (v, e) in other.0.iter() {
            loop {
                if i >= self.0.len() {
                    return None;
                }
                match self.0[i].0.cmp(v) {
                    Ordering::Less => {
                        out.push(self.0[i].clone());
                        i += 1;
                    }
                    Ordering::Equal => {
                        if self.0[i].1 < *e {
                            return None;
                        }
                        if self.0[i].1 > *e {
                            out.push((v.clone(), self.0[i].1 - e));
                        }
                        i += 1;
                        break;
                    }
                    Ordering::Greater => return None,
                }
            }
        }
        out.extend(self.0[i..].iter().cloned());
        Some(Monomial(out))
    }

    /// Set an exponent directly (removing the entry when zero).
    pub fn with_exponent(&self, v: &Var, e: u32) -> Monomial {
        let mut out: SmallVec<[(Var, u32); 4]> = SmallVec::new();
        let mut placed = false;
        for (w, we) in self.0.iter() {
            if w == v {
                if e > 0 {
                    out.push((w.clone(), e));
                }
                placed = true;
            } else {
                if !placed && *w > *v && e > 0 {
                    out.push((v.clone(), e));
                    placed = true;
                }
                out.push((w.clone(), *we));
            }
        }
        if !placed && e > 0 {
            out.push((v.clone(), e));
        }
        Monomial(out)
    }
}

/// Graded lexicographic order: by total degree, ties broken lexicographically
/// with earlier variables more significant.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        let (mut i, mut j) = (0, 0);
        loop {
            match (self.0.get(i), other.0.get(j)) {
                (None, None) => return Ordering::Equal,
                // The side that still has exponent on an earlier var is larger.
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some((va, ea)), Some((vb, eb))) => match va.cmp(vb) {
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                    Ordering::Equal => match ea.cmp(eb) {
                        Ordering::Equal => {
                            i += 1;
                            j += 1;
                        }
                        ord => return ord,
                    },
                },
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(v, e)| {
                if *e == 1 {
                    format!("{v}")
                } else {
                    format!("{v}^{e}")
                }
            })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// Sparse polynomial; no zero coefficients, root-atom exponents reduced.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, GaussRat>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::constant(GaussRat::one())
    }

    pub fn constant(c: GaussRat) -> Self {
        let mut p = Poly::zero();
        p.add_term(Monomial::one(), c);
        p
    }

    pub fn from_int(n: i64) -> Self {
        Poly::constant(GaussRat::from_int(n))
    }

    pub fn var(v: Var) -> Self {
        let mut p = Poly::zero();
        p.add_term(Monomial::var(v), GaussRat::one());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() <= 1 && self.terms.keys().all(|m| m.is_one())
    }

    pub fn as_constant(&self) -> Option<GaussRat> {
        if self.terms.is_empty() {
            return Some(GaussRat::zero());
        }
        if self.terms.len() == 1 {
            if let Some((m, c)) = self.terms.iter().next() {
                if m.is_one() {
                    return Some(c.clone());
                }
            }
        }
        None
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &GaussRat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Leading term under graded lex.
    pub fn leading(&self) -> Option<(&Monomial, &GaussRat)> {
        self.terms.iter().next_back()
    }

    /// Insert with root-atom reduction `K^r -> base * K^{r - r}`.
    pub fn add_term(&mut self, mono: Monomial, coeff: GaussRat) {
        if coeff.is_zero() {
            return;
        }
        // Find a root atom with exponent >= its index.
        let needs = mono.vars().find_map(|(v, e)| {
            if let Var::Atom(a) = v {
                if let AtomKind::Root { base, index } = a.kind() {
                    if *e >= *index {
                        return Some((v.clone(), *e, base.clone(), *index));
                    }
                }
            }
            None
        });
        match needs {
            None => {
                use std::collections::btree_map::Entry;
                match self.terms.entry(mono) {
                    Entry::Vacant(slot) => {
                        slot.insert(coeff);
                    }
                    Entry::Occupied(mut slot) => {
                        let sum = &*slot.get() + &coeff;
                        if sum.is_zero() {
                            slot.remove();
                        } else {
                            *slot.get_mut() = sum;
                        }
                    }
                }
            }
            Some((v, e, base, index)) => {
                let q = e / index;
                let rem = e % index;
                let reduced = mono.with_exponent(&v, rem);
                let mut base_pow = base.pow(q);
                base_pow.scale(&coeff);
                for (m, c) in base_pow.terms {
                    self.add_term(reduced.mul(&m), c);
                }
            }
        }
    }

    pub fn scale(&mut self, c: &GaussRat) {
        if c.is_zero() {
            self.terms.clear();
            return;
        }
        for coeff in self.terms.values_mut() {
            *coeff *= c;
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in other.terms.iter() {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in other.terms.iter() {
            out.add_term(m.clone(), -c);
        }
        out
    }

    pub fn neg(&self) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in self.terms.iter() {
            out.add_term(m.clone(), -c);
        }
        out
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (m1, c1) in self.terms.iter() {
            for (m2, c2) in other.terms.iter() {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Exact polynomial division; `None` when the division does not come out even.
    pub fn exact_div(&self, divisor: &Poly) -> Option<Poly> {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let (dm, dc) = divisor.leading().expect("nonzero divisor");
        let mut rem = self.clone();
        let mut quot = Poly::zero();
        while !rem.is_zero() {
            let (lm, lc) = rem.leading().unwrap();
            let qm = lm.try_div(dm)?;
            let qc = lc / dc;
            let mut piece = Poly::zero();
            piece.add_term(qm.clone(), qc.clone());
            quot.add_term(qm, qc);
            rem = rem.sub(&piece.mul(divisor));
        }
        Some(quot)
    }

    /// All variables occurring.
    pub fn collect_vars(&self, out: &mut Vec<Var>) {
        for (m, _) in self.terms.iter() {
            for (v, _) in m.vars() {
                if !out.contains(v) {
                    out.push(v.clone());
                }
            }
        }
    }

    /// True when the only variable (if any) is `t`.
    pub fn is_univariate_t(&self) -> bool {
        self.terms
            .keys()
            .all(|m| m.vars().all(|(v, _)| *v == Var::T))
    }

    pub fn degree_in(&self, v: &Var) -> u32 {
        self.terms
            .keys()
            .map(|m| m.exponent(v))
            .max()
            .unwrap_or(0)
    }

    /// Coefficient of `v^e` as a polynomial in the remaining variables.
    pub fn coefficient_of(&self, v: &Var, e: u32) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in self.terms.iter() {
            if m.exponent(v) == e {
                out.add_term(m.with_exponent(v, 0), c.clone());
            }
        }
        out
    }

    /// Evaluate against a variable resolver.  Returns the complex value
    /// `(re, im)` together with the sum of term magnitudes, so callers can
    /// run relative-error zero tests.
    pub fn eval_with<E>(
        &self,
        mut resolve: impl FnMut(&Var) -> Result<f64, E>,
    ) -> Result<(f64, f64, f64), E> {
        let mut total_re = 0.0f64;
        let mut total_im = 0.0f64;
        let mut mag = 0.0f64;
        for (m, c) in self.terms.iter() {
            let (mut re, mut im) = c.to_f64_pair();
            for (v, e) in m.vars() {
                let x = resolve(v)?;
                let p = x.powi(*e as i32);
                re *= p;
                im *= p;
            }
            total_re += re;
            total_im += im;
            mag += (re * re + im * im).sqrt();
        }
        Ok((total_re, total_im, mag))
    }

    /// Monic normalization: divides by the leading coefficient, returning it.
    pub fn make_monic(&mut self) -> GaussRat {
        match self.leading() {
            None => GaussRat::one(),
            Some((_, c)) => {
                let lead = c.clone();
                let inv = lead.inv();
                self.scale(&inv);
                lead
            }
        }
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        // Descending order puts leading terms first.
        for (m, c) in self.terms.iter().rev() {
            let cs = format!("{c}");
            let body = if m.is_one() {
                cs
            } else if c.is_one() {
                format!("{m}")
            } else if (-c).is_one() {
                format!("-{m}")
            } else {
                format!("{cs}*{m}")
            };
            if first {
                write!(f, "{body}")?;
                first = false;
            } else if body.starts_with('-') {
                write!(f, "{body}")?;
            } else {
                write!(f, "+{body}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t() -> Poly {
        Poly::var(Var::T)
    }

    #[test]
    fn arithmetic_and_ordering() {
        let p = t().mul(&t()).add(&Poly::from_int(3)); // t^2 + 3
        let q = t().sub(&Poly::from_int(1)); // t - 1
        let prod = p.mul(&q);
        // (t^2+3)(t-1) = t^3 - t^2 + 3t - 3
        let mut expect = Poly::zero();
        expect.add_term(Monomial::var_pow(Var::T, 3), GaussRat::from_int(1));
        expect.add_term(Monomial::var_pow(Var::T, 2), GaussRat::from_int(-1));
        expect.add_term(Monomial::var(Var::T), GaussRat::from_int(3));
        expect.add_term(Monomial::one(), GaussRat::from_int(-3));
        assert_eq!(prod, expect);
    }

    #[test]
    fn exact_division() {
        let p = t().mul(&t()).sub(&Poly::from_int(1)); // t^2-1
        let d = t().add(&Poly::from_int(1)); // t+1
        let q = p.exact_div(&d).unwrap();
        assert_eq!(q, t().sub(&Poly::from_int(1)));
        assert!(p.exact_div(&t()).is_none());
    }

    #[test]
    fn multivariate_division() {
        // (1 + t s0)^2 / (1 + t s0)
        let f = Poly::one().add(&t().mul(&Poly::var(Var::S(0))));
        let sq = f.mul(&f);
        assert_eq!(sq.exact_div(&f).unwrap(), f);
    }

    #[test]
    fn grlex_is_multiplicative() {
        let a = Monomial::var(Var::T);
        let b = Monomial::var(Var::C(0));
        let c = Monomial::var_pow(Var::S(0), 2);
        assert!(a > b || b > a);
        let (x, y) = if a < b { (a, b) } else { (b, a) };
        assert!(x.mul(&c) < y.mul(&c));
    }
}
