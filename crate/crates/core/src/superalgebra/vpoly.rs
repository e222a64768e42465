//! Polynomial coefficients in the fiber coordinates v^1..v^n over the radial
//! ring.
//!
//! Representatives are kept reduced modulo the relation sum_i (v^i)^2 = t by
//! eliminating (v^n)^2, so purely radial combinations like v_1^2 + ... + v_n^2
//! collapse onto `t` syntactically.  That reduction is what turns the
//! so(n)-invariance scan into a literal "no explicit v-monomials" test.

use crate::expr::MetricSpec;
use crate::scalar::{RadialScalar, ScalarError, ZeroGuard};
use smallvec::SmallVec;
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

/// Exponent vector of a v-monomial; fixed length n.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct VMono(SmallVec<[u16; 8]>);

impl VMono {
    pub fn unit(n: usize) -> Self {
        VMono(smallvec::smallvec![0; n])
    }

    pub fn var(n: usize, k: usize) -> Self {
        let mut m = Self::unit(n);
        m.0[k] = 1;
        m
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn is_unit(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn exponents(&self) -> &[u16] {
        &self.0
    }

    pub fn mul(&self, other: &VMono) -> VMono {
        VMono(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(a, b)| a + b)
                .collect(),
        )
    }
}

impl Ord for VMono {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for VMono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for VMono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_unit() {
            return write!(f, "1");
        }
        let mut parts = Vec::new();
        for (i, &e) in self.0.iter().enumerate() {
            if e == 1 {
                parts.push(format!("v{}", i + 1));
            } else if e > 1 {
                parts.push(format!("v{}^{}", i + 1, e));
            }
        }
        write!(f, "{}", parts.join("*"))
    }
}

/// Polynomial in v with RadialScalar coefficients, reduced mod (v,v) = t.
#[derive(Clone, PartialEq, Debug)]
pub struct VPoly {
    n: usize,
    terms: BTreeMap<VMono, RadialScalar>,
}

impl VPoly {
    pub fn zero(n: usize) -> Self {
        VPoly {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: usize) -> Self {
        Self::from_radial(n, RadialScalar::one())
    }

    pub fn from_radial(n: usize, r: RadialScalar) -> Self {
        let mut p = Self::zero(n);
        p.insert(VMono::unit(n), r);
        p
    }

    pub fn v(n: usize, k: usize) -> Self {
        assert!(k < n);
        let mut p = Self::zero(n);
        p.insert(VMono::var(n, k), RadialScalar::one());
        p
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&VMono, &RadialScalar)> {
        self.terms.iter()
    }

    /// Insert with the reduction (v^n)^2 -> t - sum_{i<n} (v^i)^2.
    pub fn insert(&mut self, mono: VMono, coeff: RadialScalar) {
        if coeff.is_zero() {
            return;
        }
        let last = self.n - 1;
        if mono.0[last] >= 2 {
            let mut m2 = mono.clone();
            m2.0[last] -= 2;
            // t * m2
            self.insert(m2.clone(), coeff.mul(&RadialScalar::t()));
            // - v_i^2 * m2
            for i in 0..last {
                let mut m3 = m2.clone();
                m3.0[i] += 2;
                self.insert(m3, coeff.neg());
            }
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

    pub fn add(&self, other: &VPoly) -> VPoly {
        assert_eq!(self.n, other.n);
        let mut out = self.clone();
        for (m, c) in other.terms.iter() {
            out.insert(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &VPoly) -> VPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> VPoly {
        let mut out = VPoly::zero(self.n);
        for (m, c) in self.terms.iter() {
            out.terms.insert(m.clone(), c.neg());
        }
        out
    }

    pub fn mul(&self, other: &VPoly) -> VPoly {
        assert_eq!(self.n, other.n);
        let mut out = VPoly::zero(self.n);
        for (m1, c1) in self.terms.iter() {
            for (m2, c2) in other.terms.iter() {
                out.insert(m1.mul(m2), c1.mul(c2));
            }
        }
        out
    }

    pub fn scale(&self, r: &RadialScalar) -> VPoly {
        let mut out = VPoly::zero(self.n);
        for (m, c) in self.terms.iter() {
            out.insert(m.clone(), c.mul(r));
        }
        out
    }

    /// Partial derivative in v^k, including the radial chain rule
    /// d f(t) / d v^k = 2 v^k f'(t).
    pub fn partial_v(&self, k: usize) -> VPoly {
        assert!(k < self.n);
        let mut out = VPoly::zero(self.n);
        for (m, c) in self.terms.iter() {
            // chain part through the radial coefficient
            let df = c.derive();
            if !df.is_zero() {
                let mut mk = m.clone();
                mk.0[k] += 1;
                out.insert(mk, df.mul(&RadialScalar::from_int(2)));
            }
            // polynomial part
            let e = m.0[k];
            if e > 0 {
                let mut ml = m.clone();
                ml.0[k] -= 1;
                out.insert(ml, c.mul(&RadialScalar::from_int(e as i64)));
            }
        }
        out
    }

    /// True when the canonical expansion has no explicit v-monomials.
    pub fn is_radial(&self) -> bool {
        self.terms.keys().all(|m| m.is_unit())
    }

    pub fn radial_part(&self) -> Option<RadialScalar> {
        if self.terms.is_empty() {
            return Some(RadialScalar::zero());
        }
        if self.terms.len() == 1 {
            if let Some((m, c)) = self.terms.iter().next() {
                if m.is_unit() {
                    return Some(c.clone());
                }
            }
        }
        None
    }

    pub fn is_zero_checked(&self, guard: &mut ZeroGuard) -> Result<bool, ScalarError> {
        let mut all = true;
        for (_, c) in self.terms.iter() {
            all &= c.is_zero_checked(guard)?;
        }
        Ok(all)
    }

    /// Complex evaluation at a numeric fiber point (t is derived from v).
    pub fn eval(
        &self,
        v: &[f64],
        spec: Option<&MetricSpec>,
    ) -> Result<(f64, f64), ScalarError> {
        assert_eq!(v.len(), self.n);
        let t: f64 = v.iter().map(|x| x * x).sum();
        let mut re = 0.0;
        let mut im = 0.0;
        for (m, c) in self.terms.iter() {
            let (cre, cim, _) = c.eval_complex(t, spec)?;
            let mut factor = 1.0;
            for (i, &e) in m.0.iter().enumerate() {
                factor *= v[i].powi(e as i32);
            }
            re += cre * factor;
            im += cim * factor;
        }
        Ok((re, im))
    }

    pub fn to_canonical_string(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                if m.is_unit() {
                    c.to_canonical_string()
                } else {
                    format!("{}*{}", c.to_canonical_string(), m)
                }
            })
            .collect();
        parts.join("+")
    }
}

impl fmt::Display for VPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_canonical_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn radial_reduction() {
        // v1^2 + v2^2 reduces to t at n = 2
        let n = 2;
        let v1 = VPoly::v(n, 0);
        let v2 = VPoly::v(n, 1);
        let sum = v1.mul(&v1).add(&v2.mul(&v2));
        assert!(sum.is_radial());
        assert_eq!(sum.radial_part().unwrap(), RadialScalar::t());
    }

    #[test]
    fn partial_of_radial_coefficient() {
        // d/dv^1 of f(t) = 2 v1 f'(t); take f = t^2 so f' = 2t
        let n = 2;
        let f = VPoly::from_radial(n, RadialScalar::t().mul(&RadialScalar::t()));
        let d = f.partial_v(0);
        let expect = VPoly::v(n, 0).scale(&RadialScalar::from_int(4).mul(&RadialScalar::t()));
        assert_eq!(d.sub(&expect).is_zero(), true);
    }

    #[test]
    fn partial_with_reduction_consistent() {
        // p = v2^2 (reduces to t - v1^2); dp/dv2 must equal 2 v2.
        let n = 2;
        let v2 = VPoly::v(n, 1);
        let p = v2.mul(&v2);
        let d = p.partial_v(1);
        let expect = v2.scale(&RadialScalar::from_int(2));
        assert!(d.sub(&expect).is_zero());
    }
}
