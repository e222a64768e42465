//! Finite Grassmann algebra on Psi^1..Psi^n with complex float coefficients.
//!
//! Numeric target of `substitute_numeric`; used by the guards and the
//! rotation-covariance checks.

use num::complex::Complex64;

#[derive(Clone, Debug)]
pub struct GrassmannNumber {
    n: usize,
    /// Coefficient of the basis monomial with Psi-set given by the index
    /// bitmask, generators in ascending order.
    coeffs: Vec<Complex64>,
}

impl GrassmannNumber {
    pub fn zero(n: usize) -> Self {
        GrassmannNumber {
            n,
            coeffs: vec![Complex64::new(0.0, 0.0); 1 << n],
        }
    }

    pub fn scalar(n: usize, z: Complex64) -> Self {
        let mut g = Self::zero(n);
        g.coeffs[0] = z;
        g
    }

    pub fn psi(n: usize, k: usize) -> Self {
        let mut g = Self::zero(n);
        g.coeffs[1 << k] = Complex64::new(1.0, 0.0);
        g
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn coeff(&self, mask: usize) -> Complex64 {
        self.coeffs[mask]
    }

    pub fn add_assign_term(&mut self, mask: usize, z: Complex64) {
        self.coeffs[mask] += z;
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        let mut out = self.clone();
        for (a, b) in out.coeffs.iter_mut().zip(other.coeffs.iter()) {
            *a += b;
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        let mut out = self.clone();
        for (a, b) in out.coeffs.iter_mut().zip(other.coeffs.iter()) {
            *a -= b;
        }
        out
    }

    pub fn scale(&self, z: Complex64) -> Self {
        let mut out = self.clone();
        for a in out.coeffs.iter_mut() {
            *a *= z;
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        let mut out = Self::zero(self.n);
        for (ma, ca) in self.coeffs.iter().enumerate() {
            if ca.norm_sqr() == 0.0 {
                continue;
            }
            for (mb, cb) in other.coeffs.iter().enumerate() {
                if cb.norm_sqr() == 0.0 || (ma & mb) != 0 {
                    continue;
                }
                let sign = koszul_sign(ma, mb);
                out.coeffs[ma | mb] += ca * cb * sign;
            }
        }
        out
    }

    pub fn norm_inf(&self) -> f64 {
        self.coeffs
            .iter()
            .map(|z| z.norm())
            .fold(0.0f64, f64::max)
    }

    /// Basis change Psi^i -> sum_j R[i][j] Psi^j.
    pub fn linear_substitute(&self, r: &[Vec<f64>]) -> Self {
        let n = self.n;
        let images: Vec<GrassmannNumber> = (0..n)
            .map(|i| {
                let mut g = Self::zero(n);
                for j in 0..n {
                    g.coeffs[1 << j] = Complex64::new(r[i][j], 0.0);
                }
                g
            })
            .collect();
        let mut out = Self::zero(n);
        for (mask, c) in self.coeffs.iter().enumerate() {
            if c.norm_sqr() == 0.0 {
                continue;
            }
            let mut prod = Self::scalar(n, *c);
            for i in 0..n {
                if mask & (1 << i) != 0 {
                    prod = prod.mul(&images[i]);
                }
            }
            out = out.add(&prod);
        }
        out
    }
}

fn koszul_sign(a: usize, b: usize) -> f64 {
    let mut inversions = 0u32;
    let mut bb = b;
    while bb != 0 {
        let j = bb.trailing_zeros();
        let higher = a >> (j + 1);
        inversions += higher.count_ones();
        bb &= bb - 1;
    }
    if inversions % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grassmann_products() {
        let n = 3;
        let p1 = GrassmannNumber::psi(n, 0);
        let p2 = GrassmannNumber::psi(n, 1);
        let a = p1.mul(&p2);
        let b = p2.mul(&p1);
        assert_eq!(a.coeff(0b11).re, 1.0);
        assert_eq!(b.coeff(0b11).re, -1.0);
        assert_eq!(p1.mul(&p1).norm_inf(), 0.0);
    }

    #[test]
    fn substitution_rotation() {
        // Psi1 Psi2 under a rotation picks up the determinant.
        let n = 2;
        let th = 0.3f64;
        let r = vec![
            vec![th.cos(), -th.sin()],
            vec![th.sin(), th.cos()],
        ];
        let top = GrassmannNumber::psi(n, 0).mul(&GrassmannNumber::psi(n, 1));
        let rotated = top.linear_substitute(&r);
        assert!((rotated.coeff(0b11).re - 1.0).abs() < 1e-14);
    }
}
