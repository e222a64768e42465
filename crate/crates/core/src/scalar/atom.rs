//! Transcendental atoms extending the rational radial ring.
//!
//! Each atom carries a derivative rule that closes within the ring:
//!
//! * `ExpPhi`        — e^phi with d/dt = c0 * atom (symbolic profile),
//! * `Exp{g}`        — e^{g(t)} with d/dt = g' * atom,
//! * `Log{arg}`      — ln(arg) with d/dt = arg'/arg,
//! * `Root{base, r}` — K with K^r = base, d/dt = base'/(r*base) * K.
//!
//! Atoms are identified by their canonical key string, so two independently
//! constructed atoms with the same defining data compare equal.  The atom set
//! of a computation is assumed algebraically independent; the numeric zero
//! guard flags violations at runtime instead of proving independence.

use super::poly::Poly;
use super::radial::RadialScalar;
use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

#[derive(Debug)]
pub enum AtomKind {
    ExpPhi,
    Exp { exponent: RadialScalar },
    Log { arg: RadialScalar },
    Root { base: Poly, index: u32 },
}

#[derive(Debug)]
pub struct AtomData {
    key: String,
    kind: AtomKind,
}

#[derive(Clone, Debug)]
pub struct Atom(Arc<AtomData>);

impl Atom {
    pub fn exp_phi() -> Atom {
        Atom(Arc::new(AtomData {
            key: "exp(phi)".to_string(),
            kind: AtomKind::ExpPhi,
        }))
    }

    pub fn exp(exponent: RadialScalar) -> Atom {
        let key = format!("exp({})", exponent.to_canonical_string());
        Atom(Arc::new(AtomData {
            key,
            kind: AtomKind::Exp { exponent },
        }))
    }

    pub fn log(arg: RadialScalar) -> Atom {
        let key = format!("ln({})", arg.to_canonical_string());
        Atom(Arc::new(AtomData {
            key,
            kind: AtomKind::Log { arg },
        }))
    }

    /// Raw root atom; callers go through `RadialScalar::nth_root`, which
    /// normalizes the base first.
    pub(crate) fn root_raw(base: Poly, index: u32) -> Atom {
        assert!(index >= 2);
        let key = if index == 2 {
            format!("sqrt({base})")
        } else {
            format!("root{index}({base})")
        };
        Atom(Arc::new(AtomData {
            key,
            kind: AtomKind::Root { base, index },
        }))
    }

    pub fn key(&self) -> &str {
        &self.0.key
    }

    pub fn kind(&self) -> &AtomKind {
        &self.0.kind
    }
}

impl PartialEq for Atom {
    fn eq(&self, other: &Self) -> bool {
        self.0.key == other.0.key
    }
}
impl Eq for Atom {}

impl PartialOrd for Atom {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Atom {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.key.cmp(&other.0.key)
    }
}

impl Hash for Atom {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.key.hash(state);
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.key)
    }
}
