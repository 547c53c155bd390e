//! The crystal interface and tensor products.
//!
//! Tensor products follow Kashiwara's convention:
//!
//! ```text
//! e_i(b1 ⊗ b2) = e_i b1 ⊗ b2   if φ_i(b1) ≥ ε_i(b2),   else b1 ⊗ e_i b2
//! f_i(b1 ⊗ b2) = f_i b1 ⊗ b2   if φ_i(b1) > ε_i(b2),   else b1 ⊗ f_i b2
//! ```
//!
//! N-fold products associate to the left. The same operators are also
//! available through the signature (bracketing) rule; both must agree.

mod graph;

use std::fmt::{self, Debug};
use std::hash::Hash;

use serde::Serialize;

use crate::cartan::CartanDatum;
use crate::error::{Error, Result};
use crate::Weight;

pub use graph::{check_axioms, explore, isomorphic_under, AxiomReport, CrystalGraph, Edge, Window};

/// Longest string the default `ε`/`φ` implementations will walk.
const STRING_GUARD: usize = 1 << 16;

/// A (regular) crystal: a set with weights and partial operators `e_i`,
/// `f_i` for the colours returned by [`Crystal::colors`].
pub trait Crystal {
    type Elem: Clone + Eq + Ord + Hash + Debug;

    fn datum(&self) -> &CartanDatum;

    /// Colours carrying crystal operators, ascending.
    fn colors(&self) -> Vec<usize>;

    fn weight(&self, b: &Self::Elem) -> Weight;

    fn e(&self, i: usize, b: &Self::Elem) -> Option<Self::Elem>;

    fn f(&self, i: usize, b: &Self::Elem) -> Option<Self::Elem>;

    fn epsilon(&self, i: usize, b: &Self::Elem) -> usize {
        string_length(b, |x| self.e(i, x))
    }

    fn phi(&self, i: usize, b: &Self::Elem) -> usize {
        string_length(b, |x| self.f(i, x))
    }

    /// Per-factor z-grades; empty for crystals without grades.
    fn grades(&self, _b: &Self::Elem) -> Vec<i64> {
        Vec::new()
    }

    fn total_grade(&self, b: &Self::Elem) -> i64 {
        self.grades(b).iter().sum()
    }

    /// Representative with every grade reset to zero. Grade shifts commute
    /// with every operator, so this is a crystal morphism onto a finite set.
    fn classical_projection(&self, b: &Self::Elem) -> Self::Elem {
        b.clone()
    }

    fn label(&self, b: &Self::Elem) -> String;

    /// `e_i^k b`, or `None` once the string ends.
    fn e_pow(&self, i: usize, k: usize, b: &Self::Elem) -> Option<Self::Elem> {
        (0..k).try_fold(b.clone(), |x, _| self.e(i, &x))
    }

    fn f_pow(&self, i: usize, k: usize, b: &Self::Elem) -> Option<Self::Elem> {
        (0..k).try_fold(b.clone(), |x, _| self.f(i, &x))
    }
}

/// Number of times `step` applies before returning `None`.
pub fn string_length<E: Clone>(b: &E, step: impl Fn(&E) -> Option<E>) -> usize {
    let mut x = b.clone();
    let mut k = 0;
    while let Some(y) = step(&x) {
        x = y;
        k += 1;
        assert!(k < STRING_GUARD, "crystal string does not terminate");
    }
    k
}

/// Ordered factor list `b_1 ⊗ … ⊗ b_N`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct TensorElement<E>(pub Vec<E>);

impl<E> TensorElement<E> {
    pub fn factors(&self) -> &[E] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl<E: fmt::Display> fmt::Display for TensorElement<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, b) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, "⊗")?;
            }
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

/// How tensor operators are evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TensorRule {
    /// Left-associated binary rule.
    #[default]
    Binary,
    /// Signature rule: cancel `+−` pairs, act on the rightmost surviving `−`
    /// (for `e`) or the leftmost surviving `+` (for `f`).
    Signature,
}

impl std::str::FromStr for TensorRule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "binary" => Ok(Self::Binary),
            "signature" => Ok(Self::Signature),
            other => Err(Error::Config(format!("unknown tensor rule {other:?}"))),
        }
    }
}

/// Tie-breaking in the binary rule. `Flipped` swaps the strict and non-strict
/// comparisons between `e` and `f`; it exists only for fault injection.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TieBreak {
    #[default]
    Kashiwara,
    Flipped,
}

/// `B_1 ⊗ … ⊗ B_N` for crystals of a common type.
#[derive(Debug, Clone)]
pub struct TensorCrystal<C> {
    factors: Vec<C>,
    rule: TensorRule,
    tie_break: TieBreak,
}

impl<C: Crystal> TensorCrystal<C> {
    pub fn new(factors: Vec<C>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::Config("tensor product needs at least one factor".into()));
        }
        let first = factors[0].datum();
        for c in &factors[1..] {
            if c.datum() != first {
                return Err(Error::MismatchedDatum {
                    left: first.rank(),
                    right: c.datum().rank(),
                });
            }
            if c.colors() != factors[0].colors() {
                return Err(Error::Config("tensor factors carry different colour sets".into()));
            }
        }
        Ok(Self {
            factors,
            rule: TensorRule::Binary,
            tie_break: TieBreak::Kashiwara,
        })
    }

    pub fn with_rule(mut self, rule: TensorRule) -> Self {
        self.rule = rule;
        self
    }

    pub fn with_tie_break(mut self, tie_break: TieBreak) -> Self {
        self.tie_break = tie_break;
        self
    }

    pub fn rule(&self) -> TensorRule {
        self.rule
    }

    pub fn factors(&self) -> &[C] {
        &self.factors
    }

    fn check(&self, b: &TensorElement<C::Elem>) {
        assert_eq!(b.len(), self.factors.len(), "tensor element has the wrong number of factors");
    }

    /// `(ε_i, φ_i)` of every left prefix `b_1 ⊗ … ⊗ b_k`.
    fn prefix_strings(&self, i: usize, b: &TensorElement<C::Elem>) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(b.len());
        let mut acc: Option<(usize, usize)> = None;
        for (c, x) in self.factors.iter().zip(&b.0) {
            let (eps, phi) = (c.epsilon(i, x), c.phi(i, x));
            let next = match acc {
                None => (eps, phi),
                Some((pe, pp)) => (pe + eps.saturating_sub(pp), phi + pp.saturating_sub(eps)),
            };
            out.push(next);
            acc = Some(next);
        }
        out
    }

    /// Factor acted on by the binary rule.
    fn binary_target(&self, i: usize, b: &TensorElement<C::Elem>, raising: bool) -> usize {
        let prefix = self.prefix_strings(i, b);
        let mut pos = b.len() - 1;
        while pos > 0 {
            let phi_left = prefix[pos - 1].1;
            let eps_right = self.factors[pos].epsilon(i, &b.0[pos]);
            let go_left = match (raising, self.tie_break) {
                (true, TieBreak::Kashiwara) | (false, TieBreak::Flipped) => phi_left >= eps_right,
                (false, TieBreak::Kashiwara) | (true, TieBreak::Flipped) => phi_left > eps_right,
            };
            if go_left {
                pos -= 1;
            } else {
                break;
            }
        }
        pos
    }

    /// Factor acted on by the signature rule, if any sign survives.
    fn signature_target(&self, i: usize, b: &TensorElement<C::Elem>, raising: bool) -> Option<usize> {
        let mut open_plus: Vec<usize> = Vec::new();
        let mut free_minus: Vec<usize> = Vec::new();
        for (k, (c, x)) in self.factors.iter().zip(&b.0).enumerate() {
            for _ in 0..c.epsilon(i, x) {
                if open_plus.pop().is_none() {
                    free_minus.push(k);
                }
            }
            open_plus.extend(std::iter::repeat_n(k, c.phi(i, x)));
        }
        if raising {
            free_minus.last().copied()
        } else {
            open_plus.first().copied()
        }
    }

    fn act(&self, i: usize, b: &TensorElement<C::Elem>, raising: bool) -> Option<TensorElement<C::Elem>> {
        self.check(b);
        let target = match self.rule {
            TensorRule::Binary => self.binary_target(i, b, raising),
            TensorRule::Signature => self.signature_target(i, b, raising)?,
        };
        let c = &self.factors[target];
        let x = &b.0[target];
        let y = if raising { c.e(i, x)? } else { c.f(i, x)? };
        let mut out = b.clone();
        out.0[target] = y;
        Some(out)
    }
}

impl<C: Crystal> Crystal for TensorCrystal<C> {
    type Elem = TensorElement<C::Elem>;

    fn datum(&self) -> &CartanDatum {
        self.factors[0].datum()
    }

    fn colors(&self) -> Vec<usize> {
        self.factors[0].colors()
    }

    fn weight(&self, b: &Self::Elem) -> Weight {
        self.check(b);
        self.factors
            .iter()
            .zip(&b.0)
            .map(|(c, x)| c.weight(x))
            .reduce(|a, w| a + w)
            .expect("non-empty tensor")
    }

    fn e(&self, i: usize, b: &Self::Elem) -> Option<Self::Elem> {
        self.act(i, b, true)
    }

    fn f(&self, i: usize, b: &Self::Elem) -> Option<Self::Elem> {
        self.act(i, b, false)
    }

    fn epsilon(&self, i: usize, b: &Self::Elem) -> usize {
        self.check(b);
        self.prefix_strings(i, b).last().expect("non-empty tensor").0
    }

    fn phi(&self, i: usize, b: &Self::Elem) -> usize {
        self.check(b);
        self.prefix_strings(i, b).last().expect("non-empty tensor").1
    }

    fn grades(&self, b: &Self::Elem) -> Vec<i64> {
        self.factors
            .iter()
            .zip(&b.0)
            .flat_map(|(c, x)| c.grades(x))
            .collect()
    }

    fn classical_projection(&self, b: &Self::Elem) -> Self::Elem {
        TensorElement(
            self.factors
                .iter()
                .zip(&b.0)
                .map(|(c, x)| c.classical_projection(x))
                .collect(),
        )
    }

    fn label(&self, b: &Self::Elem) -> String {
        self.factors
            .iter()
            .zip(&b.0)
            .map(|(c, x)| c.label(x))
            .collect::<Vec<_>>()
            .join("⊗")
    }
}

/// Binary tensor of two possibly different crystals; used to compare
/// bracketings of triple products.
#[derive(Debug, Clone)]
pub struct TensorPair<A, B> {
    left: A,
    right: B,
}

impl<A: Crystal, B: Crystal> TensorPair<A, B> {
    pub fn new(left: A, right: B) -> Result<Self> {
        if left.datum() != right.datum() {
            return Err(Error::MismatchedDatum {
                left: left.datum().rank(),
                right: right.datum().rank(),
            });
        }
        if left.colors() != right.colors() {
            return Err(Error::Config("tensor factors carry different colour sets".into()));
        }
        Ok(Self { left, right })
    }
}

impl<A: Crystal, B: Crystal> Crystal for TensorPair<A, B> {
    type Elem = (A::Elem, B::Elem);

    fn datum(&self) -> &CartanDatum {
        self.left.datum()
    }

    fn colors(&self) -> Vec<usize> {
        self.left.colors()
    }

    fn weight(&self, b: &Self::Elem) -> Weight {
        self.left.weight(&b.0) + self.right.weight(&b.1)
    }

    fn e(&self, i: usize, b: &Self::Elem) -> Option<Self::Elem> {
        if self.left.phi(i, &b.0) >= self.right.epsilon(i, &b.1) {
            Some((self.left.e(i, &b.0)?, b.1.clone()))
        } else {
            Some((b.0.clone(), self.right.e(i, &b.1)?))
        }
    }

    fn f(&self, i: usize, b: &Self::Elem) -> Option<Self::Elem> {
        if self.left.phi(i, &b.0) > self.right.epsilon(i, &b.1) {
            Some((self.left.f(i, &b.0)?, b.1.clone()))
        } else {
            Some((b.0.clone(), self.right.f(i, &b.1)?))
        }
    }

    fn epsilon(&self, i: usize, b: &Self::Elem) -> usize {
        let (e1, p1) = (self.left.epsilon(i, &b.0), self.left.phi(i, &b.0));
        e1 + self.right.epsilon(i, &b.1).saturating_sub(p1)
    }

    fn phi(&self, i: usize, b: &Self::Elem) -> usize {
        let (e2, p2) = (self.right.epsilon(i, &b.1), self.right.phi(i, &b.1));
        p2 + self.left.phi(i, &b.0).saturating_sub(e2)
    }

    fn grades(&self, b: &Self::Elem) -> Vec<i64> {
        let mut g = self.left.grades(&b.0);
        g.extend(self.right.grades(&b.1));
        g
    }

    fn classical_projection(&self, b: &Self::Elem) -> Self::Elem {
        (self.left.classical_projection(&b.0), self.right.classical_projection(&b.1))
    }

    fn label(&self, b: &Self::Elem) -> String {
        format!("({})⊗({})", self.left.label(&b.0), self.right.label(&b.1))
    }
}
