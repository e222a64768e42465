//! Numeric guard for symbolic zero tests.
//!
//! The atom set of a computation is assumed algebraically independent.  The
//! guard samples random jets (t, c_k, s_k, e^phi treated as free positive
//! data; root/log/exp atoms evaluated honestly from their defining data) and
//! cross-checks the symbolic verdict.  A disagreement in either direction is
//! reported as `InconsistentNormalization` instead of being silently trusted.

use super::atom::AtomKind;
use super::poly::Var;
use super::radial::{RadialScalar, ScalarError};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

#[derive(Clone, Debug)]
pub struct VarAssignment {
    pub t: f64,
    pub c: Vec<f64>,
    pub s: Vec<f64>,
    pub exp_phi: f64,
}

impl VarAssignment {
    pub fn resolve(&self, v: &Var) -> Result<f64, ScalarError> {
        match v {
            Var::T => Ok(self.t),
            Var::Pi => Ok(std::f64::consts::PI),
            Var::C(k) => self
                .c
                .get(*k as usize)
                .copied()
                .ok_or_else(|| ScalarError::MissingBinding(format!("{v}"))),
            Var::S(k) => self
                .s
                .get(*k as usize)
                .copied()
                .ok_or_else(|| ScalarError::MissingBinding(format!("{v}"))),
            Var::Atom(a) => match a.kind() {
                AtomKind::ExpPhi => Ok(self.exp_phi),
                AtomKind::Exp { exponent } => {
                    Ok(eval_assignment(exponent, self)?.exp())
                }
                AtomKind::Log { arg } => {
                    let x = eval_assignment(arg, self)?;
                    if x <= 0.0 {
                        return Err(ScalarError::DomainError("ln of non-positive sample".into()));
                    }
                    Ok(x.ln())
                }
                AtomKind::Root { base, index } => {
                    let (re, im, _) = base.eval_with(|w| self.resolve(w))?;
                    if im != 0.0 {
                        return Err(ScalarError::DomainError("complex root base".into()));
                    }
                    if re < 0.0 {
                        return Err(ScalarError::DomainError("negative root base sample".into()));
                    }
                    Ok(re.powf(1.0 / *index as f64))
                }
            },
        }
    }
}

fn eval_assignment(r: &RadialScalar, a: &VarAssignment) -> Result<f64, ScalarError> {
    let (nre, nim, _) = r.numerator().eval_with(|v| a.resolve(v))?;
    let mut den = 1.0;
    for (f, e) in r.denominator_factors() {
        let (fre, fim, _) = f.eval_with(|v| a.resolve(v))?;
        if fim != 0.0 {
            return Err(ScalarError::DomainError("complex denominator sample".into()));
        }
        den *= fre.powi(*e as i32);
    }
    if den.abs() < 1e-300 {
        return Err(ScalarError::DomainError("vanishing denominator sample".into()));
    }
    if nim.abs() > 1e-9 * nre.abs().max(1.0) {
        return Err(ScalarError::DomainError("complex sample value".into()));
    }
    Ok(nre / den)
}

/// Seeded sampler running the numeric side of `is_zero`.
#[derive(Debug)]
pub struct ZeroGuard {
    rng: StdRng,
    samples: usize,
}

impl ZeroGuard {
    pub fn new(seed: u64) -> Self {
        ZeroGuard {
            rng: StdRng::seed_from_u64(seed),
            samples: 3,
        }
    }

    fn draw(&mut self) -> VarAssignment {
        let mut c = Vec::with_capacity(8);
        let mut s = Vec::with_capacity(8);
        for _ in 0..8 {
            c.push(self.rng.gen_range(-1.5..1.5));
        }
        // Keep 1 + t*s0 comfortably positive on the sampled t range.
        s.push(self.rng.gen_range(-0.3..1.7));
        for _ in 1..8 {
            s.push(self.rng.gen_range(-1.5..1.5));
        }
        VarAssignment {
            t: self.rng.gen_range(0.25..2.25),
            c,
            s,
            exp_phi: self.rng.gen_range(0.2..3.0),
        }
    }

    /// Cross-check a symbolic verdict on `f` numerically.
    pub fn check(&mut self, f: &RadialScalar, symbolic_zero: bool) -> Result<(), ScalarError> {
        let mut evaluated = 0usize;
        let mut all_tiny = true;
        let mut attempts = 0usize;
        while evaluated < self.samples && attempts < self.samples * 8 {
            attempts += 1;
            let a = self.draw();
            match f.eval_numerator_assignment(&a) {
                Err(_) => continue, // domain miss; resample
                Ok((re, im, mag)) => {
                    evaluated += 1;
                    let val = (re * re + im * im).sqrt();
                    let scale = mag.max(1.0);
                    if symbolic_zero {
                        if val > 1e-8 * scale {
                            return Err(ScalarError::InconsistentNormalization(
                                f.to_canonical_string(),
                            ));
                        }
                    } else if val > 1e-12 * scale {
                        all_tiny = false;
                    }
                }
            }
        }
        if !symbolic_zero && evaluated >= self.samples && all_tiny {
            // Claimed nonzero but vanishes at every sampled jet: the atom
            // independence assumption looks violated.
            return Err(ScalarError::InconsistentNormalization(
                f.to_canonical_string(),
            ));
        }
        Ok(())
    }
}

impl Default for ZeroGuard {
    fn default() -> Self {
        ZeroGuard::new(0xC0FFEE)
    }
}

impl RadialScalar {
    /// The spec-level zero test: exact symbolic verdict plus numeric guard.
    pub fn is_zero_checked(&self, guard: &mut ZeroGuard) -> Result<bool, ScalarError> {
        let sym = self.is_zero();
        guard.check(self, sym)?;
        Ok(sym)
    }
}
