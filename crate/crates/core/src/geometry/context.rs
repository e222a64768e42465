//! Metric context: the derivative towers and kernel atoms a pipeline run
//! needs, either for the symbolic two-parameter family (c_k, s_k as free
//! indeterminates) or for a concrete profile pair (phi, sigma).

use crate::expr::MetricSpec;
use crate::scalar::{radial_from_expr, exp_of_expr, Atom, RadialScalar, ScalarError};

/// Number of precomputed derivative orders; curvature needs two, the
/// Det M analysis one more.
const TOWER_ORDERS: usize = 6;

#[derive(Clone, Debug)]
pub struct MetricContext {
    n: usize,
    /// c[k] = d^k/dt^k of C = phi-dot.
    c: Vec<RadialScalar>,
    /// s[k] = d^k/dt^k of sigma.
    s: Vec<RadialScalar>,
    exp_phi: RadialScalar,
    sqrt_one_plus_t_sigma: RadialScalar,
    spec: Option<MetricSpec>,
}

impl MetricContext {
    /// The symbolic two-parameter family: phi, sigma arbitrary smooth radial
    /// profiles represented by their derivative towers.
    pub fn symbolic(n: usize) -> Self {
        assert!(n >= 2 && n % 2 == 0 && n <= 8, "n must be even, 2..=8");
        let c = (0..TOWER_ORDERS).map(|k| RadialScalar::c(k as u8)).collect();
        let s = (0..TOWER_ORDERS).map(|k| RadialScalar::s(k as u8)).collect();
        let one_plus = RadialScalar::one().add(&RadialScalar::t().mul(&RadialScalar::s(0)));
        MetricContext {
            n,
            c,
            s,
            exp_phi: RadialScalar::atom(Atom::exp_phi()),
            sqrt_one_plus_t_sigma: one_plus.sqrt().expect("symbolic sqrt"),
            spec: None,
        }
    }

    /// Concrete profiles from expression trees.
    pub fn from_spec(spec: &MetricSpec) -> Result<Self, ScalarError> {
        let phi_ring = radial_from_expr(&spec.phi)?;
        let sigma0 = radial_from_expr(&spec.sigma)?;
        let exp_phi = exp_of_expr(&spec.phi)?;
        Self::from_towers(spec.n, phi_ring.derive(), sigma0, exp_phi, Some(spec.clone()))
    }

    /// Assemble from explicitly given c0 = phi-dot, sigma and e^phi.
    pub fn from_towers(
        n: usize,
        c0: RadialScalar,
        sigma: RadialScalar,
        exp_phi: RadialScalar,
        spec: Option<MetricSpec>,
    ) -> Result<Self, ScalarError> {
        assert!(n >= 2 && n % 2 == 0 && n <= 8, "n must be even, 2..=8");
        let one_plus = RadialScalar::one().add(&RadialScalar::t().mul(&sigma));
        if one_plus.is_zero() {
            return Err(ScalarError::DegenerateMetric);
        }
        let mut c = vec![c0];
        let mut s = vec![sigma];
        for k in 1..TOWER_ORDERS {
            c.push(c[k - 1].derive());
            s.push(s[k - 1].derive());
        }
        Ok(MetricContext {
            n,
            c,
            s,
            exp_phi,
            sqrt_one_plus_t_sigma: one_plus.sqrt()?,
            spec,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn half_n(&self) -> usize {
        self.n / 2
    }

    /// C = phi-dot and its derivatives.
    pub fn c(&self, k: usize) -> &RadialScalar {
        &self.c[k]
    }

    /// sigma and its derivatives.
    pub fn s(&self, k: usize) -> &RadialScalar {
        &self.s[k]
    }

    pub fn sigma(&self) -> &RadialScalar {
        &self.s[0]
    }

    pub fn exp_phi(&self) -> &RadialScalar {
        &self.exp_phi
    }

    pub fn one_plus_t_sigma(&self) -> RadialScalar {
        RadialScalar::one().add(&RadialScalar::t().mul(self.sigma()))
    }

    pub fn one_plus_t_c(&self) -> RadialScalar {
        RadialScalar::one().add(&RadialScalar::t().mul(self.c(0)))
    }

    /// (1 + t sigma)^{1/2}.
    pub fn sqrt_one_plus_t_sigma(&self) -> &RadialScalar {
        &self.sqrt_one_plus_t_sigma
    }

    /// sigma-tilde = -sigma / (1 + t sigma).
    pub fn tilde_sigma(&self) -> Result<RadialScalar, ScalarError> {
        RadialScalar::tilde_sigma(self.sigma())
    }

    /// sqrt(det g) = e^{n phi / 2} (1 + t sigma)^{1/2}.
    pub fn sqrt_det_g(&self) -> RadialScalar {
        self.exp_phi
            .pow(self.half_n() as i64)
            .mul(&self.sqrt_one_plus_t_sigma)
    }

    pub fn spec(&self) -> Option<&MetricSpec> {
        self.spec.as_ref()
    }
}
