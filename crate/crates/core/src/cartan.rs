//! Affine Cartan datum of type `A_n^(1)` and the weight lattice `P`.
//!
//! Weights are stored in the basis `Λ_0, …, Λ_n, δ`, so that
//! `⟨h_i, λ⟩` is simply the `i`-th `Λ` coordinate and `δ` pairs to zero with
//! every coroot.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_rational::Rational64;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Generalized Cartan matrix together with its null root and canonical
/// central element, expressed as the kernel vectors `marks` (`δ = Σ a_i α_i`)
/// and `comarks` (`c = Σ a_i^∨ h_i`).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CartanDatum {
    rank: usize,
    matrix: Vec<Vec<i64>>,
    marks: Vec<i64>,
    comarks: Vec<i64>,
}

impl CartanDatum {
    /// Type `A_n^(1)`: the cycle on `n + 1` nodes, or `[[2,-2],[-2,2]]` for
    /// `n = 1`.
    pub fn affine_a(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroRank);
        }
        let size = n + 1;
        let mut matrix = vec![vec![0i64; size]; size];
        for (i, row) in matrix.iter_mut().enumerate() {
            row[i] = 2;
            if n == 1 {
                row[1 - i] = -2;
            } else {
                row[(i + 1) % size] = -1;
                row[(i + size - 1) % size] = -1;
            }
        }
        Self::from_matrix(matrix)
    }

    /// Builds a datum from an affine generalized Cartan matrix indexed
    /// `0..=n`, solving for marks and comarks.
    pub fn from_matrix(matrix: Vec<Vec<i64>>) -> Result<Self> {
        let size = matrix.len();
        if size < 2 {
            return Err(Error::ZeroRank);
        }
        if matrix.iter().any(|row| row.len() != size) {
            return Err(Error::Config("Cartan matrix must be square".into()));
        }
        for (i, row) in matrix.iter().enumerate() {
            if row[i] != 2 {
                return Err(Error::Config(format!("diagonal entry a_{i}{i} must be 2")));
            }
            if row.iter().enumerate().any(|(j, &a)| j != i && a > 0) {
                return Err(Error::Config(format!("off-diagonal entries of row {i} must be <= 0")));
            }
        }
        let transpose: Vec<Vec<i64>> = (0..size)
            .map(|j| (0..size).map(|i| matrix[i][j]).collect())
            .collect();
        let marks = primitive_kernel_vector(&matrix)?;
        let comarks = primitive_kernel_vector(&transpose)?;
        Ok(Self {
            rank: size - 1,
            matrix,
            marks,
            comarks,
        })
    }

    /// Number of non-zero nodes `n`.
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// `0..=n`.
    pub fn nodes(&self) -> std::ops::RangeInclusive<usize> {
        0..=self.rank
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.matrix[i][j]
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.matrix
    }

    pub fn marks(&self) -> &[i64] {
        &self.marks
    }

    pub fn comarks(&self) -> &[i64] {
        &self.comarks
    }

    pub fn is_symmetric(&self) -> bool {
        self.nodes()
            .all(|i| self.nodes().all(|j| self.matrix[i][j] == self.matrix[j][i]))
    }

    fn check_node(&self, j: usize) -> Result<()> {
        if j > self.rank {
            Err(Error::IndexOutOfRange { index: j, lo: 0, hi: self.rank })
        } else {
            Ok(())
        }
    }

    /// `α_j = Σ_i a_ij Λ_i + [j = 0] δ`.
    pub fn alpha<T: Scalar>(&self, j: usize) -> Result<AffineWeight<T>> {
        self.check_node(j)?;
        let lambda = self.nodes().map(|i| T::from_int(self.matrix[i][j])).collect();
        let delta = if j == 0 { T::one() } else { T::zero() };
        Ok(AffineWeight { lambda, delta })
    }

    /// Fundamental weight `Λ_i`.
    pub fn fundamental<T: Scalar>(&self, i: usize) -> Result<AffineWeight<T>> {
        self.check_node(i)?;
        let mut w = AffineWeight::zero(self.rank);
        w.lambda[i] = T::one();
        Ok(w)
    }

    /// Level-zero fundamental weight `ϖ_i = Λ_i − a_i^∨ Λ_0`, `1 ≤ i ≤ n`.
    pub fn varpi<T: Scalar>(&self, i: usize) -> Result<AffineWeight<T>> {
        if i == 0 || i > self.rank {
            return Err(Error::IndexOutOfRange { index: i, lo: 1, hi: self.rank });
        }
        let mut w = AffineWeight::zero(self.rank);
        w.lambda[i] = T::one();
        w.lambda[0] = w.lambda[0].clone() - T::from_int(self.comarks[i]);
        Ok(w)
    }

    pub fn delta<T: Scalar>(&self) -> AffineWeight<T> {
        let mut w = AffineWeight::zero(self.rank);
        w.delta = T::one();
        w
    }

    /// `⟨c, λ⟩ = Σ a_i^∨ ⟨h_i, λ⟩`.
    pub fn level<T: Scalar>(&self, weight: &AffineWeight<T>) -> T {
        weight
            .lambda
            .iter()
            .zip(&self.comarks)
            .fold(T::zero(), |acc, (c, &a)| acc + c.clone() * T::from_int(a))
    }

    /// `Σ m_i ϖ_i`.
    pub fn level_zero_weight<T: Scalar>(&self, multiplicities: &[usize]) -> Result<AffineWeight<T>> {
        if multiplicities.len() != self.rank {
            return Err(Error::Config(format!(
                "expected {} multiplicities, got {}",
                self.rank,
                multiplicities.len()
            )));
        }
        let mut w = AffineWeight::zero(self.rank);
        for (i, &m) in multiplicities.iter().enumerate() {
            w = w + self.varpi::<T>(i + 1)?.scale(&T::from_int(m as i64));
        }
        Ok(w)
    }
}

fn primitive_kernel_vector(matrix: &[Vec<i64>]) -> Result<Vec<i64>> {
    let rows = matrix.len();
    let cols = matrix[0].len();
    let mut m: Vec<Vec<Rational64>> = matrix
        .iter()
        .map(|r| r.iter().map(|&a| Rational64::from_integer(a)).collect())
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let factor = m[i][c];
                for k in 0..cols {
                    let sub = factor * m[r][k];
                    m[i][k] -= sub;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    if free.len() != 1 {
        return Err(Error::Config(format!(
            "Cartan matrix has corank {}, expected 1",
            free.len()
        )));
    }
    let f = free[0];
    let mut v = vec![Rational64::zero(); cols];
    v[f] = Rational64::one();
    for (row, &pc) in pivots.iter().enumerate() {
        v[pc] = -m[row][f];
    }
    let denom = v
        .iter()
        .fold(1i64, |acc, x| num_integer::lcm(acc, *x.denom()));
    let mut ints: Vec<i64> = v.iter().map(|x| (x * denom).to_integer()).collect();
    let g = ints.iter().fold(0i64, |acc, &x| num_integer::gcd(acc, x));
    for x in ints.iter_mut() {
        *x /= g;
    }
    if ints.iter().all(|&x| x < 0) {
        for x in ints.iter_mut() {
            *x = -*x;
        }
    }
    if ints.iter().any(|&x| x <= 0) {
        return Err(Error::Config("kernel vector is not positive".into()));
    }
    Ok(ints)
}

/// `λ = Σ c_i Λ_i + d δ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AffineWeight<T> {
    pub lambda: Vec<T>,
    pub delta: T,
}

impl<T: Scalar> AffineWeight<T> {
    pub fn zero(rank: usize) -> Self {
        Self {
            lambda: vec![T::zero(); rank + 1],
            delta: T::zero(),
        }
    }

    pub fn new(lambda: Vec<T>, delta: T) -> Self {
        Self { lambda, delta }
    }

    /// `⟨h_i, λ⟩`.
    pub fn pairing(&self, i: usize) -> T {
        self.lambda[i].clone()
    }

    pub fn scale(&self, k: &T) -> Self {
        Self {
            lambda: self.lambda.iter().map(|c| c.clone() * k.clone()).collect(),
            delta: self.delta.clone() * k.clone(),
        }
    }

    /// Drops the δ-coordinate (the class of λ modulo `Zδ`).
    pub fn modulo_delta(&self) -> Self {
        Self {
            lambda: self.lambda.clone(),
            delta: T::zero(),
        }
    }

    pub fn shift_delta(&self, k: T) -> Self {
        Self {
            lambda: self.lambda.clone(),
            delta: self.delta.clone() + k,
        }
    }

    /// Flattened `(c_0, …, c_n, d)`.
    pub fn coords(&self) -> Vec<T> {
        let mut v = self.lambda.clone();
        v.push(self.delta.clone());
        v
    }

    pub fn from_coords(mut coords: Vec<T>) -> Self {
        let delta = coords.pop().expect("weight coordinates are non-empty");
        Self { lambda: coords, delta }
    }
}

impl<T: Scalar> Add for AffineWeight<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        assert_eq!(self.lambda.len(), rhs.lambda.len(), "weights of different rank");
        Self {
            lambda: self.lambda.into_iter().zip(rhs.lambda).map(|(a, b)| a + b).collect(),
            delta: self.delta + rhs.delta,
        }
    }
}

impl<T: Scalar> Sub for AffineWeight<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<T: Scalar> Neg for AffineWeight<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            lambda: self.lambda.into_iter().map(|a| -a).collect(),
            delta: -self.delta,
        }
    }
}

impl<T: Scalar> fmt::Display for AffineWeight<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.lambda.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "; d={})", self.delta)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Weight;
    use num_bigint::BigInt;

    fn w(lambda: &[i64], delta: i64) -> Weight {
        Weight::new(lambda.to_vec(), delta)
    }

    #[test]
    fn marks_and_comarks() {
        let a2 = CartanDatum::affine_a(2).unwrap();
        assert_eq!(a2.marks(), &[1, 1, 1]);
        assert_eq!(a2.comarks(), &[1, 1, 1]);
        assert_eq!(a2.entry(0, 1), -1);
        let a1 = CartanDatum::affine_a(1).unwrap();
        assert_eq!(a1.marks(), &[1, 1]);
        assert_eq!(a1.matrix(), &[vec![2, -2], vec![-2, 2]]);
        assert_eq!(CartanDatum::affine_a(0), Err(Error::ZeroRank));
    }

    #[test]
    fn kernel_conditions() {
        for n in 1..=6 {
            let d = CartanDatum::affine_a(n).unwrap();
            assert!(d.is_symmetric());
            for i in d.nodes() {
                let row: i64 = d.nodes().map(|j| d.entry(i, j) * d.marks()[j]).sum();
                let col: i64 = d.nodes().map(|j| d.comarks()[j] * d.entry(j, i)).sum();
                assert_eq!(row, 0);
                assert_eq!(col, 0);
            }
            for i in d.nodes() {
                let j = (i + 1) % (n + 1);
                assert!(d.nodes().all(|k| d.entry(i, k) == d.entry((i + 1) % (n + 1), (k + 1) % (n + 1))));
                assert_eq!(d.marks()[i], d.marks()[j]);
            }
        }
    }

    #[test]
    fn non_affine_matrix_rejected() {
        // finite A_2 has trivial kernel
        assert!(CartanDatum::from_matrix(vec![vec![2, -1], vec![-1, 2]]).is_err());
        // affine D_4^(1) marks (1,1,2,1,1) with the branch node at 2
        let mut m = vec![vec![0i64; 5]; 5];
        for i in 0..5 {
            m[i][i] = 2;
        }
        for leaf in [0, 1, 3, 4] {
            m[leaf][2] = -1;
            m[2][leaf] = -1;
        }
        let d = CartanDatum::from_matrix(m).unwrap();
        assert_eq!(d.marks(), &[1, 1, 2, 1, 1]);
    }

    #[test]
    fn simple_roots() {
        let d = CartanDatum::affine_a(2).unwrap();
        assert_eq!(d.alpha::<i64>(1).unwrap(), w(&[-1, 2, -1], 0));
        assert_eq!(d.alpha::<i64>(0).unwrap(), w(&[2, -1, -1], 1));
        let sum = d
            .nodes()
            .map(|j| d.alpha::<i64>(j).unwrap().scale(&d.marks()[j]))
            .fold(Weight::zero(2), |a, b| a + b);
        assert_eq!(sum, d.delta());
        assert!(d.alpha::<i64>(3).is_err());
    }

    #[test]
    fn pairing_and_level() {
        for n in 1..=5 {
            let d = CartanDatum::affine_a(n).unwrap();
            for j in d.nodes() {
                let a = d.alpha::<i64>(j).unwrap();
                assert_eq!(d.level(&a), 0);
                for i in d.nodes() {
                    assert_eq!(a.pairing(i), d.entry(i, j));
                }
            }
            for i in 1..=n {
                let v = d.varpi::<i64>(i).unwrap();
                assert_eq!(d.level(&v), 0);
                assert_eq!(v.pairing(i), 1);
            }
            assert!(d.varpi::<i64>(0).is_err());
            let delta: Weight = d.delta();
            assert!(d.nodes().all(|i| delta.pairing(i) == 0));
            assert_eq!(d.level(&d.fundamental::<i64>(0).unwrap()), 1);
        }
    }

    #[test]
    fn varpi_coordinates() {
        let d2 = CartanDatum::affine_a(2).unwrap();
        assert_eq!(d2.varpi::<i64>(1).unwrap(), w(&[-1, 1, 0], 0));
        let d1 = CartanDatum::affine_a(1).unwrap();
        assert_eq!(d1.varpi::<i64>(1).unwrap(), w(&[-1, 1], 0));
    }

    #[test]
    fn generic_scalar() {
        let d = CartanDatum::affine_a(3).unwrap();
        let a: AffineWeight<BigInt> = d.alpha(2).unwrap();
        assert_eq!(a.pairing(2), BigInt::from(2));
        let lam: AffineWeight<i128> = d.level_zero_weight(&[1, 0, 2]).unwrap();
        assert_eq!(d.level(&lam), 0);
        assert_eq!(lam.lambda, vec![-3, 1, 0, 2]);
    }

    #[test]
    fn json_shape() {
        let v = serde_json::to_value(w(&[-1, 1, 0], 2)).unwrap();
        assert_eq!(v, serde_json::json!({"lambda": [-1, 1, 0], "delta": 2}));
    }
}
