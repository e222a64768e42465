//! Numeric so(n) elements: antisymmetric matrices with rational entries.

use num::{BigRational, Zero};

#[derive(Clone, Debug, PartialEq)]
pub struct SoNElement {
    n: usize,
    entries: Vec<BigRational>,
}

impl SoNElement {
    /// Build from a row-major matrix; panics unless lambda + lambda^T = 0.
    pub fn new(n: usize, entries: Vec<BigRational>) -> Self {
        assert_eq!(entries.len(), n * n);
        for i in 0..n {
            for j in 0..n {
                assert!(
                    (&entries[i * n + j] + &entries[j * n + i]).is_zero(),
                    "so(n) element must be antisymmetric"
                );
            }
        }
        SoNElement { n, entries }
    }

    pub fn zero(n: usize) -> Self {
        SoNElement {
            n,
            entries: vec![BigRational::zero(); n * n],
        }
    }

    /// Elementary generator with +1 at (i, j) and -1 at (j, i).
    pub fn elementary(n: usize, i: usize, j: usize) -> Self {
        assert!(i != j && i < n && j < n);
        let mut entries = vec![BigRational::zero(); n * n];
        entries[i * n + j] = BigRational::from_integer(1.into());
        entries[j * n + i] = BigRational::from_integer((-1).into());
        SoNElement { n, entries }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn entry(&self, i: usize, j: usize) -> &BigRational {
        &self.entries[i * self.n + j]
    }

    pub fn to_f64(&self) -> Vec<Vec<f64>> {
        (0..self.n)
            .map(|i| {
                (0..self.n)
                    .map(|j| crate::scalar::gauss::rational_to_f64(self.entry(i, j)))
                    .collect()
            })
            .collect()
    }

    /// exp(theta * lambda) via the Taylor series, to machine precision.
    pub fn matrix_exp(&self, theta: f64) -> Vec<Vec<f64>> {
        let n = self.n;
        let a = self.to_f64();
        let mut result = vec![vec![0.0; n]; n];
        for (i, row) in result.iter_mut().enumerate() {
            row[i] = 1.0;
        }
        let mut term = result.clone();
        for k in 1..60 {
            // term = term * (theta a) / k
            let mut next = vec![vec![0.0; n]; n];
            for i in 0..n {
                for j in 0..n {
                    let mut s = 0.0;
                    for (l, arow) in a.iter().enumerate() {
                        s += term[i][l] * arow[j];
                    }
                    next[i][j] = s * theta / k as f64;
                }
            }
            let mut biggest = 0.0f64;
            for i in 0..n {
                for j in 0..n {
                    result[i][j] += next[i][j];
                    biggest = biggest.max(next[i][j].abs());
                }
            }
            term = next;
            if biggest < 1e-17 {
                break;
            }
        }
        result
    }
}
