//! Generator monomials of the superalgebra and the Koszul sign rule.
//!
//! Canonical generator order inside a monomial: Psi (ascending index),
//! varpi (ascending), Omega pairs (lexicographic, i < j), b powers.  All
//! signs are absorbed into coefficients at construction time.

use smallvec::SmallVec;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct FormMonomial {
    /// Bitmask of Psi^i factors (bit i-1 for Psi^i).
    pub psi: u16,
    /// Bitmask of varpi_k factors.
    pub varpi: u16,
    /// Multiset of Omega^{ij} factors, i < j, sorted.
    pub omega: SmallVec<[(u8, u8); 6]>,
    /// b_k exponents, sorted by k, exponents positive.
    pub b: SmallVec<[(u8, u16); 4]>,
}

impl FormMonomial {
    pub fn one() -> Self {
        FormMonomial::default()
    }

    pub fn is_one(&self) -> bool {
        self.psi == 0 && self.varpi == 0 && self.omega.is_empty() && self.b.is_empty()
    }

    pub fn psi_gen(k: usize) -> Self {
        FormMonomial {
            psi: 1 << k,
            ..Default::default()
        }
    }

    pub fn varpi_gen(k: usize) -> Self {
        FormMonomial {
            varpi: 1 << k,
            ..Default::default()
        }
    }

    pub fn omega_gen(i: usize, j: usize) -> Self {
        assert!(i < j);
        FormMonomial {
            omega: smallvec::smallvec![(i as u8, j as u8)],
            ..Default::default()
        }
    }

    pub fn b_gen(k: usize) -> Self {
        FormMonomial {
            b: smallvec::smallvec![(k as u8, 1)],
            ..Default::default()
        }
    }

    /// Parity of the monomial (number of odd generators mod 2).
    pub fn parity(&self) -> u32 {
        (self.psi.count_ones() + self.varpi.count_ones()) & 1
    }

    /// Degree in the (Psi:1, Omega:2) grading; varpi and b count 0.
    pub fn psi_omega_weight(&self) -> usize {
        self.psi.count_ones() as usize + 2 * self.omega.len()
    }

    pub fn b_degree(&self) -> u32 {
        self.b.iter().map(|(_, e)| *e as u32).sum()
    }

    /// Odd generator tokens in canonical order: (0, i) for Psi^i then (1, k)
    /// for varpi_k.
    fn odd_tokens(&self) -> SmallVec<[(u8, u8); 8]> {
        let mut out = SmallVec::new();
        for i in 0..16 {
            if self.psi & (1 << i) != 0 {
                out.push((0u8, i as u8));
            }
        }
        for k in 0..16 {
            if self.varpi & (1 << k) != 0 {
                out.push((1u8, k as u8));
            }
        }
        out
    }

    /// Graded product; `None` when an odd generator repeats.
    pub fn try_mul(&self, other: &FormMonomial) -> Option<(FormMonomial, i64)> {
        if self.psi & other.psi != 0 || self.varpi & other.varpi != 0 {
            return None;
        }
        // Koszul sign: inversions between the two canonical odd sequences.
        let a = self.odd_tokens();
        let bt = other.odd_tokens();
        let mut inversions = 0usize;
        for x in a.iter() {
            for y in bt.iter() {
                if x > y {
                    inversions += 1;
                }
            }
        }
        let sign = if inversions % 2 == 0 { 1 } else { -1 };
        // merge omega multisets
        let mut omega: SmallVec<[(u8, u8); 6]> = SmallVec::new();
        let (mut i, mut j) = (0, 0);
        while i < self.omega.len() && j < other.omega.len() {
            if self.omega[i] <= other.omega[j] {
                omega.push(self.omega[i]);
                i += 1;
            } else {
                omega.push(other.omega[j]);
                j += 1;
            }
        }
        omega.extend_from_slice(&self.omega[i..]);
        omega.extend_from_slice(&other.omega[j..]);
        // merge b exponents
        let mut b: SmallVec<[(u8, u16); 4]> = SmallVec::new();
        let (mut i, mut j) = (0, 0);
        while i < self.b.len() && j < other.b.len() {
            match self.b[i].0.cmp(&other.b[j].0) {
                std::cmp::Ordering::Less => {
                    b.push(self.b[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    b.push(other.b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    b.push((self.b[i].0, self.b[i].1 + other.b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        b.extend_from_slice(&self.b[i..]);
        b.extend_from_slice(&other.b[j..]);
        Some((
            FormMonomial {
                psi: self.psi | other.psi,
                varpi: self.varpi | other.varpi,
                omega,
                b,
            },
            sign,
        ))
    }

    pub fn to_canonical_string(&self) -> String {
        if self.is_one() {
            return "1".to_string();
        }
        let mut parts: Vec<String> = Vec::new();
        for i in 0..16 {
            if self.psi & (1 << i) != 0 {
                parts.push(format!("Psi{}", i + 1));
            }
        }
        for k in 0..16 {
            if self.varpi & (1 << k) != 0 {
                parts.push(format!("vp{}", k + 1));
            }
        }
        for (i, j) in self.omega.iter() {
            parts.push(format!("Om{}{}", i + 1, j + 1));
        }
        for (k, e) in self.b.iter() {
            if *e == 1 {
                parts.push(format!("b{}", k + 1));
            } else {
                parts.push(format!("b{}^{}", k + 1, e));
            }
        }
        parts.join("*")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn anticommutation_sign() {
        let p1 = FormMonomial::psi_gen(0);
        let p2 = FormMonomial::psi_gen(1);
        let (m12, s12) = p1.try_mul(&p2).unwrap();
        let (m21, s21) = p2.try_mul(&p1).unwrap();
        assert_eq!(m12, m21);
        assert_eq!(s12, 1);
        assert_eq!(s21, -1);
        assert!(p1.try_mul(&p1).is_none());
    }

    #[test]
    fn omega_is_even() {
        let om = FormMonomial::omega_gen(0, 1);
        let p1 = FormMonomial::psi_gen(0);
        let (a, sa) = om.try_mul(&p1).unwrap();
        let (b, sb) = p1.try_mul(&om).unwrap();
        assert_eq!(a, b);
        assert_eq!(sa, sb);
    }

    #[test]
    fn mixed_psi_varpi_ordering() {
        // varpi_1 * Psi^1 = - Psi^1 varpi_1 (both odd, Psi precedes varpi)
        let vp = FormMonomial::varpi_gen(0);
        let ps = FormMonomial::psi_gen(0);
        let (m, s) = vp.try_mul(&ps).unwrap();
        assert_eq!(m.psi, 1);
        assert_eq!(m.varpi, 1);
        assert_eq!(s, -1);
        let (m2, s2) = ps.try_mul(&vp).unwrap();
        assert_eq!(m2, m);
        assert_eq!(s2, 1);
    }
}
