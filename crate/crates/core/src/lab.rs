//! The level-zero construction: `W′ = ⊗ Aff(B^{i,1})^{⊗ m_i}`, the component
//! `B_0` of `u′`, its extremal elements and the index set `{(c_0, b′)}`
//! realised as formal sums of grade-shifted elements.

use std::collections::{BTreeMap, HashSet, VecDeque};
use std::fmt;

use num_bigint::BigInt;

use crate::cartan::CartanDatum;
use crate::crystal::{explore, Crystal, CrystalGraph, TensorCrystal, TensorElement, TensorRule, TieBreak, Window};
use crate::error::{Error, Result};
use crate::kr::{AffineElement, AffinizedKr, GradeSign};
use crate::partitions::{enumerate_c0, PartitionTuple};
use crate::scalar::Scalar;
use crate::schur::{schur_tuple, SchurMethod};
use crate::weyl::{is_extremal, orbit_mod_delta};
use crate::Weight;

/// `λ = Σ m_i ϖ_i`, a dominant level-zero weight.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LambdaSpec {
    datum: CartanDatum,
    multiplicities: Vec<usize>,
}

impl LambdaSpec {
    pub fn new(datum: CartanDatum, multiplicities: Vec<usize>) -> Result<Self> {
        if multiplicities.len() != datum.rank() {
            return Err(Error::Config(format!(
                "expected {} multiplicities, got {}",
                datum.rank(),
                multiplicities.len()
            )));
        }
        if multiplicities.iter().all(|&m| m == 0) {
            return Err(Error::Config("λ must be nonzero".into()));
        }
        Ok(Self { datum, multiplicities })
    }

    /// Shorthand for type `A_n^(1)`.
    pub fn affine_a(n: usize, multiplicities: &[usize]) -> Result<Self> {
        Self::new(CartanDatum::affine_a(n)?, multiplicities.to_vec())
    }

    pub fn datum(&self) -> &CartanDatum {
        &self.datum
    }

    pub fn multiplicities(&self) -> &[usize] {
        &self.multiplicities
    }

    /// `⟨h_i, λ⟩ = m_i`, the length caps defining `c_0(λ)`.
    pub fn caps(&self) -> &[usize] {
        &self.multiplicities
    }

    pub fn weight(&self) -> Weight {
        self.datum
            .level_zero_weight(&self.multiplicities)
            .expect("multiplicities match the rank")
    }

    /// Colour of each tensor factor: colours ascending, copies ascending.
    pub fn factor_colors(&self) -> Vec<usize> {
        self.multiplicities
            .iter()
            .enumerate()
            .flat_map(|(k, &m)| std::iter::repeat_n(k + 1, m))
            .collect()
    }
}

impl fmt::Display for LambdaSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .multiplicities
            .iter()
            .enumerate()
            .filter(|(_, &m)| m > 0)
            .map(|(k, &m)| if m == 1 { format!("ϖ{}", k + 1) } else { format!("{m}ϖ{}", k + 1) })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

/// Conventions of the construction; non-default values exist for fault
/// injection and comparison runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Conventions {
    pub rule: TensorRule,
    pub tie_break: TieBreak,
    pub grade_sign: GradeSign,
}

pub type WPrime = TensorCrystal<AffinizedKr>;
pub type WPrimeElement = TensorElement<AffineElement>;

/// Window keeping every factor grade, and the total grade, in `[-depth, 0]`.
pub fn depth_window(depth: usize) -> Window {
    Window::per_factor(-(depth as i64), 0)
}

/// Formal `Z`-linear combination of elements of `W′`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FormalSum<C> {
    terms: BTreeMap<WPrimeElement, C>,
}

impl<C: Scalar> FormalSum<C> {
    pub fn zero() -> Self {
        Self { terms: BTreeMap::new() }
    }

    pub fn singleton(b: WPrimeElement) -> Self {
        let mut s = Self::zero();
        s.add_term(b, C::one());
        s
    }

    pub fn add_term(&mut self, b: WPrimeElement, c: C) {
        let entry = self.terms.entry(b).or_insert_with(C::zero);
        *entry = entry.add_exact(&c);
        if entry.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, b: &WPrimeElement) -> C {
        self.terms.get(b).cloned().unwrap_or_else(C::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&WPrimeElement, &C)> {
        self.terms.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &WPrimeElement> {
        self.terms.keys()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.terms
                .iter()
                .map(|(b, c)| serde_json::json!({ "element": b.to_string(), "coeff": c.to_string() }))
                .collect(),
        )
    }
}

impl<C: Scalar> fmt::Display for FormalSum<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(b, c)| if c.is_one() { b.to_string() } else { format!("{c}*{b}") })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// A pair `(c_0, b′)` with its realisation `s_{c_0}(z^{-1}) b′`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexedImage {
    pub c0: PartitionTuple,
    pub element: WPrimeElement,
    pub realization: FormalSum<BigInt>,
}

impl IndexedImage {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "c0": self.c0.to_string(),
            "element": self.element.to_string(),
            "realization": self.realization.to_json(),
        })
    }
}

/// Outcome of the connectivity check.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ConnectivityReport {
    /// Fully expanded component elements inside the inner window.
    pub checked: usize,
    pub connected: usize,
    /// Elements whose only connections to an extremal z-shift of `u′` leave
    /// the inner window.
    pub undetermined: Vec<String>,
    /// Extremal z-shifts of `u′` usable as path ends.
    pub targets: usize,
    pub truncated: bool,
}

/// `W′` for a fixed `λ`, with its distinguished element `u′`.
#[derive(Debug, Clone)]
pub struct Lab {
    spec: LambdaSpec,
    crystal: WPrime,
    u_prime: WPrimeElement,
    schur_method: SchurMethod,
}

impl Lab {
    pub fn new(spec: LambdaSpec, conventions: Conventions) -> Result<Self> {
        let factors = spec
            .factor_colors()
            .into_iter()
            .map(|i| {
                AffinizedKr::new(spec.datum().clone(), i).map(|k| k.with_grade_sign(conventions.grade_sign))
            })
            .collect::<Result<Vec<_>>>()?;
        let crystal = TensorCrystal::new(factors)?
            .with_rule(conventions.rule)
            .with_tie_break(conventions.tie_break);
        let u_prime = build_u_prime(&spec);
        Ok(Self {
            spec,
            crystal,
            u_prime,
            schur_method: SchurMethod::Tableaux,
        })
    }

    pub fn with_schur_method(mut self, method: SchurMethod) -> Self {
        self.schur_method = method;
        self
    }

    pub fn spec(&self) -> &LambdaSpec {
        &self.spec
    }

    pub fn crystal(&self) -> &WPrime {
        &self.crystal
    }

    pub fn u_prime(&self) -> &WPrimeElement {
        &self.u_prime
    }

    /// The component of `u′` inside `window`.
    pub fn enumerate_b0(&self, window: Window) -> CrystalGraph<WPrimeElement> {
        explore(&self.crystal, &self.u_prime, window)
    }

    /// Extremal elements of an enumerated component, with their weights.
    pub fn extremal_in_component(&self, graph: &CrystalGraph<WPrimeElement>) -> Vec<(WPrimeElement, Weight)> {
        graph
            .nodes()
            .iter()
            .filter(|b| is_extremal(&self.crystal, b).is_extremal())
            .map(|b| (b.clone(), self.crystal.weight(b)))
            .collect()
    }

    /// Whether `w ∈ Wλ + Zδ`.
    pub fn in_weyl_orbit(&self, w: &Weight) -> bool {
        orbit_mod_delta(self.spec.datum(), &self.spec.weight())
            .map(|orbit| orbit.contains(&w.modulo_delta()))
            .unwrap_or(false)
    }

    /// Whether `b` is `u′` with arbitrary factor grades.
    pub fn is_z_shift_of_u_prime(&self, b: &WPrimeElement) -> bool {
        self.crystal.classical_projection(b) == self.u_prime
    }

    /// Checks that every element of `B_0` with all factor grades in
    /// `[-depth, 0]` reaches an extremal z-shift of `u′` along a path whose
    /// total grade stays in `[-depth, 0]`.
    ///
    /// `B_0` is explored with factor grades in `[-depth - margin, margin]`;
    /// paths may use any explored element, so the margin only limits how far
    /// individual factors may swing while the total stays in the window.
    pub fn connectivity(&self, depth: usize, margin: usize) -> ConnectivityReport {
        let (d, m) = (depth as i64, margin as i64);
        let outer = self.enumerate_b0(Window::per_factor(-d - m, m));
        let inner = depth_window(depth);
        let nodes = outer.nodes();
        let inside: Vec<bool> = nodes.iter().map(|b| inner.admits(&self.crystal.grades(b))).collect();
        let on_path: Vec<bool> = nodes.iter().map(|b| inner.contains(self.crystal.total_grade(b))).collect();
        let adj = outer.neighbours();
        let mut reached = vec![false; nodes.len()];
        let mut queue = VecDeque::new();
        let mut extremal_cache: HashSet<WPrimeElement> = HashSet::new();
        for (k, b) in nodes.iter().enumerate() {
            if on_path[k] && self.is_z_shift_of_u_prime(b) {
                let proj = self.crystal.classical_projection(b);
                let extremal = extremal_cache.contains(&proj) || is_extremal(&self.crystal, b).is_extremal();
                if extremal {
                    extremal_cache.insert(proj);
                    reached[k] = true;
                    queue.push_back(k);
                }
            }
        }
        let targets = queue.len();
        while let Some(x) = queue.pop_front() {
            for &y in &adj[x] {
                if on_path[y] && !reached[y] {
                    reached[y] = true;
                    queue.push_back(y);
                }
            }
        }
        let mut report = ConnectivityReport {
            targets,
            truncated: outer.cap_hit(),
            ..Default::default()
        };
        for (k, b) in nodes.iter().enumerate() {
            if !inside[k] || !outer.is_fully_expanded(k) {
                continue;
            }
            report.checked += 1;
            if reached[k] {
                report.connected += 1;
            } else {
                report.undetermined.push(b.to_string());
            }
        }
        report
    }

    /// `s_{c_0}(z^{-1}) b′` as a formal sum: each monomial `Π x_{i,ν}^{e}`
    /// lowers the grade of factor `(i, ν)` by `e`. Vanishes when some
    /// `ℓ(ρ^(i)) > m_i`, since the Schur polynomial itself vanishes.
    pub fn phi_image(&self, c0: &PartitionTuple, b: &WPrimeElement) -> Result<IndexedImage> {
        let rank = self.spec.datum().rank();
        if c0.rank() != rank {
            return Err(Error::Config(format!("c0 has {} components, expected {rank}", c0.rank())));
        }
        if b.len() != self.u_prime.len() {
            return Err(Error::Config(format!("{b} has the wrong number of factors")));
        }
        let polys = schur_tuple::<BigInt>(c0, self.spec.multiplicities(), self.schur_method);
        // (grade shifts per factor, coefficient)
        let mut partial: Vec<(Vec<i64>, BigInt)> = vec![(Vec::new(), BigInt::from(1))];
        for poly in &polys {
            partial = partial
                .iter()
                .flat_map(|(shifts, c)| {
                    poly.terms().map(move |(mono, k)| {
                        let mut s = shifts.clone();
                        s.extend(mono.0.iter().map(|&e| -(e as i64)));
                        (s, c.mul_exact(k))
                    })
                })
                .collect();
        }
        let mut realization = FormalSum::zero();
        for (shifts, c) in partial {
            let shifted = TensorElement(
                b.factors()
                    .iter()
                    .zip(&shifts)
                    .map(|(x, &s)| x.z_shift(s))
                    .collect(),
            );
            realization.add_term(shifted, c);
        }
        Ok(IndexedImage {
            c0: c0.clone(),
            element: b.clone(),
            realization,
        })
    }

    /// All `(c_0, b′)` with `c_0 ∈ c_0(λ)`, `|c_0| ≤ max_size` and `b′` in
    /// the enumerated component; `c_0` outermost, then component order.
    pub fn index_set(&self, graph: &CrystalGraph<WPrimeElement>, max_size: usize) -> Result<Vec<IndexedImage>> {
        let mut out = Vec::new();
        for c0 in enumerate_c0(self.spec.caps(), max_size) {
            for b in graph.nodes() {
                let image = self.phi_image(&c0, b)?;
                if !image.realization.is_zero() {
                    out.push(image);
                }
            }
        }
        Ok(out)
    }
}

/// `u′ = ⊗ u_{ϖ_i}^{⊗ m_i}` with every factor at grade 0.
pub fn build_u_prime(spec: &LambdaSpec) -> WPrimeElement {
    TensorElement(
        spec.factor_colors()
            .into_iter()
            .map(|i| AffineElement::new(crate::kr::Column::highest(i), 0))
            .collect(),
    )
}

/// Counts keyed by (weight modulo `δ`, `δ`-degree).
pub fn graded_character<'a, C: Crystal>(
    crystal: &C,
    elements: impl IntoIterator<Item = &'a C::Elem>,
) -> BTreeMap<(Weight, i64), usize>
where
    C::Elem: 'a,
{
    let mut out = BTreeMap::new();
    for b in elements {
        let w = crystal.weight(b);
        *out.entry((w.modulo_delta(), w.delta)).or_insert(0) += 1;
    }
    out
}

/// JSON form of a graded character.
pub fn character_to_json(ch: &BTreeMap<(Weight, i64), usize>) -> serde_json::Value {
    serde_json::Value::Array(
        ch.iter()
            .map(|((w, d), c)| serde_json::json!({ "weight": w.lambda, "degree": d, "count": c }))
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kr::{Column, ColumnCrystal};
    use crate::partitions::{enumerate_all_tuples, Partition};
    use std::collections::BTreeSet;

    fn el(col: &[usize], n: usize, m: i64) -> AffineElement {
        AffineElement::new(Column::new(col.to_vec(), n).unwrap(), m)
    }

    fn lab(n: usize, m: &[usize]) -> Lab {
        Lab::new(LambdaSpec::affine_a(n, m).unwrap(), Conventions::default()).unwrap()
    }

    fn tuple(parts: &[&[usize]]) -> PartitionTuple {
        PartitionTuple::new(parts.iter().map(|p| Partition::new(p.to_vec()).unwrap()).collect())
    }

    #[test]
    fn spec_validation() {
        assert!(LambdaSpec::affine_a(2, &[0, 0]).is_err());
        assert!(LambdaSpec::affine_a(2, &[1]).is_err());
        let s = LambdaSpec::affine_a(3, &[2, 0, 1]).unwrap();
        assert_eq!(s.factor_colors(), vec![1, 1, 3]);
        assert_eq!(s.datum().level(&s.weight()), 0);
        assert_eq!(s.to_string(), "2ϖ1 + ϖ3");
    }

    #[test]
    fn u_prime_examples() {
        let l = lab(1, &[2]);
        assert_eq!(l.u_prime(), &TensorElement(vec![el(&[1], 1, 0), el(&[1], 1, 0)]));
        assert_eq!(l.crystal().weight(l.u_prime()), l.spec().weight());
        assert!(is_extremal(l.crystal(), l.u_prime()).is_extremal());

        let l = lab(2, &[1, 1]);
        assert_eq!(l.u_prime(), &TensorElement(vec![el(&[1], 2, 0), el(&[1, 2], 2, 0)]));
        let d = l.spec().datum();
        assert_eq!(
            l.crystal().weight(l.u_prime()),
            d.varpi::<i64>(1).unwrap() + d.varpi(2).unwrap()
        );
    }

    #[test]
    fn b0_examples() {
        let l = lab(1, &[1]);
        let g = l.enumerate_b0(depth_window(1));
        let got: BTreeSet<_> = g.nodes().iter().map(|b| b.0[0].clone()).collect();
        let want: BTreeSet<_> = [el(&[1], 1, 0), el(&[2], 1, 0), el(&[1], 1, -1), el(&[2], 1, -1)].into();
        assert_eq!(got, want);

        let l = lab(1, &[2]);
        let g = l.enumerate_b0(depth_window(0));
        let got: BTreeSet<String> = g.nodes().iter().map(|b| b.to_string()).collect();
        let want: BTreeSet<String> = ["[1|m=0]⊗[1|m=0]", "[2|m=0]⊗[1|m=0]", "[2|m=0]⊗[2|m=0]"]
            .map(String::from)
            .into();
        assert_eq!(got, want);
        assert_eq!(g.nodes()[0], *l.u_prime());
    }

    #[test]
    fn extremal_ladder() {
        let l = lab(1, &[1]);
        let g = l.enumerate_b0(depth_window(2));
        let ext = l.extremal_in_component(&g);
        let varpi = l.spec().weight();
        for k in 0..=2 {
            let target = varpi.clone().shift_delta(-k);
            let hits: Vec<_> = ext.iter().filter(|(_, w)| *w == target).map(|(b, _)| b.clone()).collect();
            assert_eq!(hits, vec![TensorElement(vec![el(&[1], 1, -k)])]);
        }
        for (_, w) in &ext {
            assert!(l.in_weyl_orbit(w));
        }
    }

    #[test]
    fn z_shifts_of_u_prime_are_extremal() {
        let l = lab(2, &[1, 1]);
        let g = l.enumerate_b0(depth_window(2));
        let ext: BTreeSet<_> = l.extremal_in_component(&g).into_iter().map(|(b, _)| b).collect();
        for b in g.nodes().iter().filter(|b| l.is_z_shift_of_u_prime(b)) {
            assert!(ext.contains(b), "{b}");
        }
    }

    #[test]
    fn phi_image_examples() {
        let l = lab(1, &[2]);
        let u = l.u_prime().clone();
        let img = l.phi_image(&tuple(&[&[]]), &u).unwrap();
        assert_eq!(img.realization, FormalSum::singleton(u.clone()));

        let img = l.phi_image(&tuple(&[&[1]]), &u).unwrap();
        let mut want = FormalSum::zero();
        want.add_term(TensorElement(vec![el(&[1], 1, -1), el(&[1], 1, 0)]), BigInt::from(1));
        want.add_term(TensorElement(vec![el(&[1], 1, 0), el(&[1], 1, -1)]), BigInt::from(1));
        assert_eq!(img.realization, want);

        assert!(l.phi_image(&tuple(&[&[1, 1, 1]]), &u).unwrap().realization.is_zero());
        assert!(l.phi_image(&tuple(&[&[1], &[]]), &u).is_err());

        // s_(2)(x1,x2) = x1^2 + x1 x2 + x2^2
        let img = l.phi_image(&tuple(&[&[2]]), &u).unwrap();
        assert_eq!(img.realization.len(), 3);
        assert_eq!(img.realization.to_string(), "[1|m=-2]⊗[1|m=0] + [1|m=-1]⊗[1|m=-1] + [1|m=0]⊗[1|m=-2]");
    }

    #[test]
    fn phi_image_coefficients_and_weights() {
        let l = lab(2, &[2, 1]);
        let g = l.enumerate_b0(depth_window(1));
        for c0 in enumerate_all_tuples(2, 3) {
            for b in g.nodes().iter().take(10) {
                let img = l.phi_image(&c0, b).unwrap();
                assert_eq!(img.realization.is_zero(), !c0.fits(l.spec().caps()), "{c0}");
                let want = l.crystal().weight(b).shift_delta(-(c0.size() as i64));
                for (x, c) in img.realization.terms() {
                    assert_eq!(l.crystal().weight(x), want);
                    assert!(*c > BigInt::from(0));
                }
            }
        }
        // s_(2,1)(x1,x2) has coefficient 1 on x1^2 x2; the second colour has one variable
        let u = l.u_prime().clone();
        let img = l.phi_image(&tuple(&[&[2, 1], &[1]]), &u).unwrap();
        assert_eq!(img.realization.len(), 2);
    }

    #[test]
    fn index_set_small() {
        let l = lab(1, &[1]);
        let g = l.enumerate_b0(depth_window(1));
        let idx = l.index_set(&g, 0).unwrap();
        assert_eq!(idx.len(), g.len());
        assert!(idx.iter().all(|i| i.realization == FormalSum::singleton(i.element.clone())));
        let idx = l.index_set(&g, 2).unwrap();
        // c_0 ∈ {∅, (1), (2)}; (1,1) has length 2 > m_1
        assert_eq!(idx.len(), 3 * g.len());
    }

    #[test]
    fn distinct_within_fixed_element() {
        let l = lab(2, &[1, 1]);
        let u = l.u_prime().clone();
        let mut seen = HashSet::new();
        for c0 in enumerate_c0(l.spec().caps(), 4) {
            assert!(seen.insert(l.phi_image(&c0, &u).unwrap().realization));
        }
    }

    #[test]
    fn connectivity_cases() {
        for (n, m) in [(1, vec![1]), (1, vec![2]), (2, vec![1, 0]), (2, vec![1, 1])] {
            let l = lab(n, &m);
            let r = l.connectivity(2, 2);
            assert!(r.checked > 0);
            assert!(r.targets > 0);
            assert!(!r.truncated);
            assert_eq!(r.undetermined, Vec::<String>::new(), "n={n} m={m:?}");
            assert_eq!(r.connected, r.checked);
        }
    }

    #[test]
    fn characters() {
        let d = CartanDatum::affine_a(2).unwrap();
        let kr = ColumnCrystal::new(d.clone(), 1).unwrap();
        let elems = kr.elements();
        let ch = graded_character(&kr, elems.iter());
        assert_eq!(ch.len(), 3);
        assert!(ch.values().all(|&c| c == 1));
        let rev: Vec<_> = elems.iter().rev().cloned().collect();
        assert_eq!(graded_character(&kr, rev.iter()), ch);

        let aff = AffinizedKr::new(d, 1).unwrap();
        let layer = aff.elements_between(0, 0);
        let shifted: Vec<_> = layer.iter().map(|b| b.z_shift(-3)).collect();
        let a = graded_character(&aff, layer.iter());
        let b = graded_character(&aff, shifted.iter());
        let moved: BTreeMap<_, _> = a.into_iter().map(|((w, k), c)| ((w, k - 3), c)).collect();
        assert_eq!(moved, b);
        assert_eq!(character_to_json(&b).as_array().unwrap().len(), 3);
    }
}
