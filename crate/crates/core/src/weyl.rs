//! Weyl group action on regular crystals and exact extremality checks.
//!
//! Weyl group elements are identified with their integer action matrices on
//! `(Λ_0, …, Λ_n, δ)` coordinates, so two words are equal exactly when their
//! matrices are.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;

use serde::Serialize;

use crate::cartan::{AffineWeight, CartanDatum};
use crate::crystal::Crystal;
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::Weight;

/// Square integer matrix acting on weight coordinates (column vectors).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeylMatrixOf<T> {
    dim: usize,
    data: Vec<T>,
}

impl<T: Scalar> WeylMatrixOf<T> {
    pub fn identity(dim: usize) -> Self {
        Self::from_fn(dim, |r, c| if r == c { T::one() } else { T::zero() })
    }

    fn from_fn(dim: usize, f: impl Fn(usize, usize) -> T) -> Self {
        let data = (0..dim * dim).map(|k| f(k / dim, k % dim)).collect();
        Self { dim, data }
    }

    /// Matrix whose `c`-th column is the image of the `c`-th basis weight.
    fn from_linear_map(rank: usize, map: impl Fn(&AffineWeight<T>) -> AffineWeight<T>) -> Self {
        let dim = rank + 2;
        let columns: Vec<Vec<T>> = (0..dim)
            .map(|c| {
                let mut coords = vec![T::zero(); dim];
                coords[c] = T::one();
                map(&AffineWeight::from_coords(coords)).coords()
            })
            .collect();
        Self::from_fn(dim, |r, c| columns[c][r].clone())
    }

    /// `s_i(λ) = λ − ⟨h_i, λ⟩ α_i`.
    pub fn reflection(datum: &CartanDatum, i: usize) -> Result<Self> {
        let alpha = datum.alpha::<T>(i)?;
        Ok(Self::from_linear_map(datum.rank(), |w| {
            w.clone() - alpha.scale(&w.pairing(i))
        }))
    }

    /// Translation `t(α_i)` on a simply laced affine algebra, normalised by
    /// `(α_i|α_i) = 2`:
    /// `t(α_i)(λ) = λ + ⟨c,λ⟩ α_i − (⟨h_i,λ⟩ + ⟨c,λ⟩) δ`.
    pub fn translation(datum: &CartanDatum, i: usize) -> Result<Self> {
        if i == 0 || i > datum.rank() {
            return Err(Error::IndexOutOfRange { index: i, lo: 1, hi: datum.rank() });
        }
        let alpha = datum.alpha::<T>(i)?;
        Ok(Self::from_linear_map(datum.rank(), |w| {
            let level = datum.level(w);
            let shift = w.pairing(i) + level.clone();
            (w.clone() + alpha.scale(&level)).shift_delta(-shift)
        }))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, r: usize, c: usize) -> &T {
        &self.data[r * self.dim + c]
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        Self::from_fn(self.dim, |r, c| {
            (0..self.dim).fold(T::zero(), |acc, k| {
                acc.add_exact(&self.get(r, k).mul_exact(other.get(k, c)))
            })
        })
    }

    pub fn apply(&self, w: &AffineWeight<T>) -> AffineWeight<T> {
        let x = w.coords();
        assert_eq!(x.len(), self.dim, "weight of the wrong rank");
        AffineWeight::from_coords(
            (0..self.dim)
                .map(|r| (0..self.dim).fold(T::zero(), |acc, k| acc + self.get(r, k).clone() * x[k].clone()))
                .collect(),
        )
    }
}

/// A word `s_{i_1} ⋯ s_{i_k}` with its action matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeylWord {
    letters: Vec<usize>,
    matrix: WeylMatrixOf<i64>,
}

impl WeylWord {
    pub fn new(datum: &CartanDatum, letters: Vec<usize>) -> Result<Self> {
        let mut matrix = WeylMatrixOf::identity(datum.rank() + 2);
        for &i in &letters {
            matrix = matrix.mul(&WeylMatrixOf::reflection(datum, i)?);
        }
        Ok(Self { letters, matrix })
    }

    pub fn letters(&self) -> &[usize] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn matrix(&self) -> &WeylMatrixOf<i64> {
        &self.matrix
    }

    pub fn act_on_weight(&self, w: &Weight) -> Weight {
        self.matrix.apply(w)
    }
}

impl fmt::Display for WeylWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "e");
        }
        let s: Vec<String> = self.letters.iter().map(|i| format!("s{i}")).collect();
        write!(f, "{}", s.join(" "))
    }
}

/// Shortest words for all Weyl group elements of length `≤ max_len`, in
/// breadth-first (shortlex by discovery) order.
pub fn shortest_words(datum: &CartanDatum, max_len: usize) -> Vec<WeylWord> {
    let reflections: Vec<WeylMatrixOf<i64>> = datum
        .nodes()
        .map(|i| WeylMatrixOf::reflection(datum, i).expect("node in range"))
        .collect();
    let id = WeylWord {
        letters: Vec::new(),
        matrix: WeylMatrixOf::identity(datum.rank() + 2),
    };
    let mut seen: HashSet<WeylMatrixOf<i64>> = HashSet::from([id.matrix.clone()]);
    let mut out = vec![id];
    let mut layer_start = 0;
    for _ in 0..max_len {
        let layer_end = out.len();
        for k in layer_start..layer_end {
            for (j, s) in reflections.iter().enumerate() {
                let matrix = out[k].matrix.mul(s);
                if seen.insert(matrix.clone()) {
                    let mut letters = out[k].letters.clone();
                    letters.push(j);
                    out.push(WeylWord { letters, matrix });
                }
            }
        }
        layer_start = layer_end;
    }
    out
}

/// Shortest word whose matrix equals `t(α_i)`.
pub fn find_translation_word(datum: &CartanDatum, i: usize, length_cap: usize) -> Result<WeylWord> {
    let target = WeylMatrixOf::<i64>::translation(datum, i)?;
    shortest_words(datum, length_cap)
        .into_iter()
        .find(|w| w.matrix == target)
        .ok_or(Error::WordNotFound { cap: length_cap })
}

/// `S_{s_i} b`: `f_i^k b` if `k = ⟨h_i, wt b⟩ ≥ 0`, else `e_i^{-k} b`.
pub fn s_action<C: Crystal>(crystal: &C, i: usize, b: &C::Elem) -> Result<C::Elem> {
    let k = crystal.weight(b).pairing(i);
    let mut x = b.clone();
    let needed = k.unsigned_abs() as usize;
    for step in 0..needed {
        let next = if k >= 0 { crystal.f(i, &x) } else { crystal.e(i, &x) };
        x = next.ok_or_else(|| Error::Regularity {
            element: crystal.label(b),
            color: i,
            steps: step,
            needed,
        })?;
    }
    Ok(x)
}

/// `S_w b` for `w = s_{i_1} ⋯ s_{i_k}`, applying `s_{i_k}` first.
pub fn w_action<C: Crystal>(crystal: &C, word: &WeylWord, b: &C::Elem) -> Result<C::Elem> {
    word.letters
        .iter()
        .rev()
        .try_fold(b.clone(), |x, &i| s_action(crystal, i, &x))
}

/// One point of a Weyl orbit.
#[derive(Debug, Clone, Serialize)]
pub struct OrbitPoint {
    pub word: Vec<usize>,
    pub weight: Weight,
    pub element: String,
}

/// `S_w b` for every Weyl element of length `≤ max_len`.
pub fn element_orbit<C: Crystal>(crystal: &C, b: &C::Elem, max_len: usize) -> Result<Vec<OrbitPoint>> {
    shortest_words(crystal.datum(), max_len)
        .into_iter()
        .map(|w| {
            let x = w_action(crystal, &w, b)?;
            Ok(OrbitPoint {
                word: w.letters.clone(),
                weight: crystal.weight(&x),
                element: crystal.label(&x),
            })
        })
        .collect()
}

/// Classes modulo `Zδ` of the Weyl orbit of a level-zero weight. The orbit
/// is finite because translations only move level-zero weights along `δ`.
pub fn orbit_mod_delta(datum: &CartanDatum, weight: &Weight) -> Result<BTreeSet<Weight>> {
    if datum.level(weight) != 0 {
        return Err(Error::Config(format!("{weight} is not of level zero")));
    }
    let reflections: Vec<WeylMatrixOf<i64>> = datum
        .nodes()
        .map(|i| WeylMatrixOf::reflection(datum, i))
        .collect::<Result<_>>()?;
    let start = weight.modulo_delta();
    let mut seen = BTreeSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some(w) = queue.pop_front() {
        for s in &reflections {
            let v = s.apply(&w).modulo_delta();
            if seen.insert(v.clone()) {
                queue.push_back(v);
            }
        }
    }
    Ok(seen)
}

/// Verdict of [`is_extremal`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExtremalityReport<E> {
    /// Every condition holds; `closure` lists the classical projections of
    /// `{S_w b}`.
    Extremal { closure: Vec<E> },
    NotExtremal { witness: E, color: usize, reason: String },
}

impl<E> ExtremalityReport<E> {
    pub fn is_extremal(&self) -> bool {
        matches!(self, Self::Extremal { .. })
    }
}

/// Decides whether `b` is an extremal vector.
///
/// Grade shifts commute with all operators and `δ` pairs to zero with every
/// coroot, so every condition on `S_w b` depends only on its classical
/// projection. The closure of the projection under the `S_{s_i}` is finite,
/// which makes the check exact over the whole (infinite) Weyl group.
pub fn is_extremal<C: Crystal>(crystal: &C, b: &C::Elem) -> ExtremalityReport<C::Elem> {
    let start = crystal.classical_projection(b);
    let mut seen: HashSet<C::Elem> = HashSet::from([start.clone()]);
    let mut order = vec![start.clone()];
    let mut queue = VecDeque::from([start]);
    let colors = crystal.colors();
    while let Some(x) = queue.pop_front() {
        let wt = crystal.weight(&x);
        for &i in &colors {
            let k = wt.pairing(i);
            if k >= 0 && crystal.epsilon(i, &x) != 0 {
                return ExtremalityReport::NotExtremal {
                    witness: x,
                    color: i,
                    reason: format!("<h_{i}, wt> = {k} >= 0 but e_{i} acts"),
                };
            }
            if k <= 0 && crystal.phi(i, &x) != 0 {
                return ExtremalityReport::NotExtremal {
                    witness: x,
                    color: i,
                    reason: format!("<h_{i}, wt> = {k} <= 0 but f_{i} acts"),
                };
            }
            let next = match s_action(crystal, i, &x) {
                Ok(y) => crystal.classical_projection(&y),
                Err(e) => {
                    return ExtremalityReport::NotExtremal {
                        witness: x,
                        color: i,
                        reason: e.to_string(),
                    }
                }
            };
            if seen.insert(next.clone()) {
                order.push(next.clone());
                queue.push_back(next);
            }
        }
    }
    ExtremalityReport::Extremal { closure: order }
}
