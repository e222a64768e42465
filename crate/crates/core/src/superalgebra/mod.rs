//! Graded-commutative superalgebra with the Cartan-model differential.

pub mod form;
pub mod grassmann;
pub mod matrix;
pub mod monomial;
pub mod son;
pub mod vpoly;

pub use form::{Form, LieScope};
pub use grassmann::GrassmannNumber;
pub use matrix::FormMatrix;
pub use monomial::FormMonomial;
pub use son::SoNElement;
pub use vpoly::{VMono, VPoly};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::RadialScalar;

    fn n2() -> usize {
        2
    }

    #[test]
    fn product_examples() {
        let n = n2();
        let p1 = Form::psi(n, 0);
        let p2 = Form::psi(n, 1);
        let p12 = p1.mul(&p2);
        assert_eq!(p2.mul(&p1), p12.neg());
        assert!(p1.mul(&p1).is_zero());
        // (v1 Psi2) * Om12 == Om12 * (v1 Psi2)
        let a = Form::v(n, 0).mul(&p2);
        let om = Form::omega(n, 0, 1);
        assert_eq!(a.mul(&om), om.mul(&a));
    }

    #[test]
    fn omega_antisymmetry_convention() {
        let n = n2();
        assert_eq!(Form::omega(n, 1, 0), Form::omega(n, 0, 1).neg());
        assert!(Form::omega(n, 0, 0).is_zero());
    }

    #[test]
    fn differential_on_generators() {
        let n = n2();
        // s v^1 = Psi^1
        assert_eq!(Form::v(n, 0).equivariant_differential(), Form::psi(n, 0));
        // s Psi^1 = -Omega^{1m} v^m = -Om12 v2
        let spsi = Form::psi(n, 0).equivariant_differential();
        let expect = Form::omega(n, 0, 1).mul(&Form::v(n, 1)).neg();
        assert_eq!(spsi, expect);
        // s Omega = 0
        assert!(Form::omega(n, 0, 1).equivariant_differential().is_zero());
        // s varpi_1 = b_1, s b_1 = -Omega^{1m} varpi_m
        assert_eq!(
            Form::varpi(n, 0).equivariant_differential(),
            Form::b_gen(n, 0)
        );
        let sb = Form::b_gen(n, 0).equivariant_differential();
        let expect_b = Form::omega(n, 0, 1).mul(&Form::varpi(n, 1)).neg();
        assert_eq!(sb, expect_b);
    }

    #[test]
    fn differential_of_radial_function() {
        // s t = 2 v_k Psi^k
        let n = n2();
        let t = Form::from_radial(n, RadialScalar::t());
        let st = t.equivariant_differential();
        let expect = Form::v_dot_psi(n).scale_radial(&RadialScalar::from_int(2));
        assert_eq!(st, expect);
        // and as a v-polynomial sum (v1^2 + v2^2) the answer is identical
        let tv = Form::v(n, 0)
            .mul(&Form::v(n, 0))
            .add(&Form::v(n, 1).mul(&Form::v(n, 1)));
        assert_eq!(tv.equivariant_differential(), expect);
    }

    #[test]
    fn s_squared_equals_minus_lie_omega() {
        for n in [2usize, 4] {
            let mut cases = vec![
                Form::v(n, 0),
                Form::psi(n, 0),
                Form::psi(n, n - 1),
                Form::varpi(n, 0),
                Form::b_gen(n, 1),
                Form::omega(n, 0, 1),
                Form::from_radial(n, RadialScalar::t()),
                Form::v_dot_psi(n),
            ];
            // a composite: f(t) v^1 Psi^2 Om12 varpi_1
            cases.push(
                Form::from_radial(n, RadialScalar::t())
                    .mul(&Form::v(n, 0))
                    .mul(&Form::psi(n, 1))
                    .mul(&Form::omega(n, 0, 1))
                    .mul(&Form::varpi(n, 0)),
            );
            for x in cases {
                let ss = x.equivariant_differential().equivariant_differential();
                let lie = x.lie_omega();
                assert!(ss.add(&lie).is_zero(), "s^2 != -L(Omega) at n={n} for {x}");
            }
        }
    }

    #[test]
    fn s_is_an_odd_derivation() {
        let n = 4;
        let samples = vec![
            Form::v(n, 2).mul(&Form::psi(n, 0)),
            Form::omega(n, 1, 3).mul(&Form::varpi(n, 2)),
            Form::from_radial(n, RadialScalar::t()).mul(&Form::psi(n, 3)),
            Form::b_gen(n, 0),
        ];
        for a in &samples {
            for b in &samples {
                let lhs = a.mul(b).equivariant_differential();
                let sa = a.equivariant_differential();
                let sb = b.equivariant_differential();
                // all samples are homogeneous in parity
                let parity = a.terms().next().map(|(m, _)| m.parity()).unwrap_or(0);
                let signed = if parity == 1 {
                    a.mul(&sb).neg()
                } else {
                    a.mul(&sb)
                };
                assert!(lhs.sub(&sa.mul(b)).sub(&signed).is_zero());
            }
        }
    }

    #[test]
    fn lie_action_invariants() {
        let n = 4;
        let lambda = SoNElement::elementary(n, 0, 2);
        // full scope kills t
        let t = Form::from_radial(n, RadialScalar::t());
        assert!(t.lie_action(&lambda, LieScope::Full).is_zero());
        // full scope kills v_k Psi^k
        assert!(Form::v_dot_psi(n)
            .lie_action(&lambda, LieScope::Full)
            .is_zero());
        // V-only scope leaves Omega untouched
        assert!(Form::omega(n, 0, 1)
            .lie_action(&lambda, LieScope::VOnly)
            .is_zero());
        // full scope kills v_i Omega^{ij} v_j
        let mut vov = Form::zero(n);
        for i in 0..n {
            for j in 0..n {
                vov = vov.add(
                    &Form::v(n, i)
                        .mul(&Form::omega(n, i, j))
                        .mul(&Form::v(n, j)),
                );
            }
        }
        assert!(vov.lie_action(&lambda, LieScope::Full).is_zero());
        // and it is a derivation on products
        let a = Form::v(n, 1).mul(&Form::psi(n, 2));
        let b = Form::omega(n, 1, 3);
        let lhs = a.mul(&b).lie_action(&lambda, LieScope::Full);
        let rhs = a
            .lie_action(&lambda, LieScope::Full)
            .mul(&b)
            .add(&a.mul(&b.lie_action(&lambda, LieScope::Full)));
        assert!(lhs.sub(&rhs).is_zero());
    }

    #[test]
    fn fourier_argument_identities() {
        // Eq (3.17) and Eq (3.19), with the dotted pairings read in canonical
        // order: varpi.v = varpi_k v^k, b.v = b_k v^k, varpi.Psi = Psi^k varpi_k.
        for n in [2usize, 4] {
            let mut varpi_v = Form::zero(n);
            let mut b_v = Form::zero(n);
            let mut psi_varpi = Form::zero(n);
            let mut varpi_b = Form::zero(n);
            let mut b_b = Form::zero(n);
            for k in 0..n {
                varpi_v = varpi_v.add(&Form::varpi(n, k).mul(&Form::v(n, k)));
                b_v = b_v.add(&Form::b_gen(n, k).mul(&Form::v(n, k)));
                psi_varpi = psi_varpi.add(&Form::psi(n, k).mul(&Form::varpi(n, k)));
                varpi_b = varpi_b.add(&Form::varpi(n, k).mul(&Form::b_gen(n, k)));
                b_b = b_b.add(&Form::b_gen(n, k).mul(&Form::b_gen(n, k)));
            }
            // (3.17): s(varpi.v) = b.v + varpi.Psi
            let lhs = varpi_v.equivariant_differential();
            assert!(
                lhs.sub(&b_v.add(&psi_varpi)).is_zero(),
                "3.17 fails at n={n}"
            );
            // (3.19): s(varpi.v + i (varpi, b)) =
            //         b.v + varpi.Psi + i (b,b) - i (L(Omega)varpi, varpi)
            let i = RadialScalar::i_unit();
            let arg = varpi_v.add(&varpi_b.scale_radial(&i));
            let lhs = arg.equivariant_differential();
            let mut lie_pair = Form::zero(n);
            for k in 0..n {
                lie_pair = lie_pair.add(&Form::varpi(n, k).lie_omega().mul(&Form::varpi(n, k)));
            }
            let rhs = b_v
                .add(&psi_varpi)
                .add(&b_b.scale_radial(&i))
                .sub(&lie_pair.scale_radial(&i));
            assert!(lhs.sub(&rhs).is_zero(), "3.19 fails at n={n}");
        }
    }

    #[test]
    fn top_psi_extraction() {
        let n = 2;
        let f = Form::psi(n, 0)
            .mul(&Form::psi(n, 1))
            .scale_radial(&RadialScalar::t());
        assert_eq!(
            f.top_psi_coefficient().radial_part().unwrap(),
            RadialScalar::t()
        );
        assert!(Form::omega(n, 0, 1).top_psi_coefficient().is_zero());
    }

    #[test]
    fn numeric_substitution() {
        let n = 2;
        // x = v^1 Psi^1 at v = (2, 0): 2 Psi^1
        let x = Form::v(n, 0).mul(&Form::psi(n, 0));
        let omega = vec![vec![0.0, 0.0], vec![0.0, 0.0]];
        let g = x.substitute_numeric(&[2.0, 0.0], &omega, None).unwrap();
        assert!((g.coeff(0b01).re - 2.0).abs() < 1e-14);
        // x = s(t) at v = (1, 0) -> 2 Psi^1
        let st = Form::from_radial(n, RadialScalar::t()).equivariant_differential();
        let g2 = st.substitute_numeric(&[1.0, 0.0], &omega, None).unwrap();
        assert!((g2.coeff(0b01).re - 2.0).abs() < 1e-14);
        assert!(g2.coeff(0b10).norm() < 1e-14);
    }

    #[test]
    fn exp_nilpotent_truncates() {
        let n = 2;
        let x = Form::psi(n, 0).mul(&Form::varpi(n, 0));
        let e = x.exp_nilpotent().unwrap();
        // exp(x) = 1 + x since x^2 = 0
        assert!(e.sub(&Form::one(n)).sub(&x).is_zero());
        // non-nilpotent input is rejected
        assert!(Form::one(n).exp_nilpotent().is_err());
    }
}
