//! Square matrices with Form entries (metric, connection, curvature, S(D), N).

use super::form::Form;
use crate::scalar::RadialScalar;
use std::fmt;

#[derive(Clone, Debug)]
pub struct FormMatrix {
    dim: usize,
    n: usize,
    entries: Vec<Form>,
}

impl FormMatrix {
    pub fn zero(n: usize) -> Self {
        FormMatrix {
            dim: n,
            n,
            entries: vec![Form::zero(n); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m.set(i, i, Form::one(n));
        }
        m
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Form) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            for j in 0..n {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &Form {
        &self.entries[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, f: Form) {
        assert_eq!(f.dim(), self.n);
        self.entries[i * self.dim + j] = f;
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        Self::from_fn(self.dim, |i, j| self.get(i, j).add(other.get(i, j)))
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        Self::from_fn(self.dim, |i, j| self.get(i, j).sub(other.get(i, j)))
    }

    pub fn neg(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self.get(i, j).neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        Self::from_fn(self.dim, |i, j| {
            let mut acc = Form::zero(self.n);
            for k in 0..self.dim {
                acc = acc.add(&self.get(i, k).mul(other.get(k, j)));
            }
            acc
        })
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self.get(j, i).clone())
    }

    pub fn scale_radial(&self, r: &RadialScalar) -> Self {
        Self::from_fn(self.dim, |i, j| self.get(i, j).scale_radial(r))
    }

    pub fn scale_form(&self, f: &Form) -> Self {
        Self::from_fn(self.dim, |i, j| f.mul(self.get(i, j)))
    }

    pub fn map(&self, mut f: impl FnMut(&Form) -> Form) -> Self {
        Self::from_fn(self.dim, |i, j| f(self.get(i, j)))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn is_antisymmetric(&self) -> bool {
        for i in 0..self.dim {
            for j in i..self.dim {
                if !self.get(i, j).add(self.get(j, i)).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_symmetric(&self) -> bool {
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                if !self.get(i, j).sub(self.get(j, i)).is_zero() {
                    return false;
                }
            }
        }
        true
    }
}

impl PartialEq for FormMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.sub(other).is_zero()
    }
}

impl fmt::Display for FormMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.dim {
            for j in 0..self.dim {
                writeln!(f, "[{i}][{j}] {}", self.get(i, j))?;
            }
        }
        Ok(())
    }
}
