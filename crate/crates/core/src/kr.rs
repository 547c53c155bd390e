//! Column crystals `B^{i,1}` of type `A_n^(1)` and their affinizations.
//!
//! A column is a strictly increasing subset of `{1, …, n+1}` of size `i`.
//! Classical arrows `f_j` (`1 ≤ j ≤ n`) replace `j` by `j+1`; the 0-arrows are
//! promotion conjugates of the 1-arrows, `f_0 = pr⁻¹ ∘ f_1 ∘ pr`, which
//! amounts to replacing `n+1` by `1`. In the affinization `f_0` also lowers
//! the z-grade by one, so that `wt(b, m) = cl_lift(b) + m δ`.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::cartan::CartanDatum;
use crate::crystal::{Crystal, TensorElement};
use crate::error::{Error, Result};
use crate::Weight;

/// Strictly increasing entries from `1..=n+1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Column(Vec<usize>);

impl Column {
    pub fn new(entries: Vec<usize>, n: usize) -> Result<Self> {
        let bad = |reason: &str| Error::Parse {
            input: format!("{entries:?}"),
            reason: reason.into(),
        };
        if entries.is_empty() || entries.len() > n {
            return Err(bad("column height must lie in 1..=n"));
        }
        if entries.windows(2).any(|w| w[0] >= w[1]) {
            return Err(bad("entries must be strictly increasing"));
        }
        if entries[0] == 0 || *entries.last().unwrap() > n + 1 {
            return Err(bad("entries must lie in 1..=n+1"));
        }
        Ok(Self(entries))
    }

    /// `{1, …, i}`.
    pub fn highest(height: usize) -> Self {
        Self((1..=height).collect())
    }

    pub fn entries(&self) -> &[usize] {
        &self.0
    }

    pub fn height(&self) -> usize {
        self.0.len()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.0.binary_search(&x).is_ok()
    }

    fn replace(&self, from: usize, to: usize) -> Self {
        let mut v: Vec<usize> = self.0.iter().map(|&x| if x == from { to } else { x }).collect();
        v.sort_unstable();
        Self(v)
    }

    /// All columns of the given height, lexicographically.
    pub fn all(n: usize, height: usize) -> Vec<Self> {
        fn rec(start: usize, top: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Column>) {
            if left == 0 {
                out.push(Column(cur.clone()));
                return;
            }
            for x in start..=top + 1 - left {
                cur.push(x);
                rec(x + 1, top, left - 1, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        if height >= 1 && height <= n {
            rec(1, n + 1, height, &mut Vec::new(), &mut out);
        }
        out
    }
}

impl fmt::Display for Column {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// `f_j` for `1 ≤ j ≤ n`: `j ↦ j+1` when `j ∈ col` and `j+1 ∉ col`.
pub fn classical_f(j: usize, col: &Column) -> Option<Column> {
    (col.contains(j) && !col.contains(j + 1)).then(|| col.replace(j, j + 1))
}

/// `e_j` for `1 ≤ j ≤ n`: `j+1 ↦ j` when `j+1 ∈ col` and `j ∉ col`.
pub fn classical_e(j: usize, col: &Column) -> Option<Column> {
    (col.contains(j + 1) && !col.contains(j)).then(|| col.replace(j + 1, j))
}

/// Cyclic shift `x ↦ x+1`, with `n+1 ↦ 1`.
pub fn promotion(n: usize, col: &Column) -> Column {
    let mut v: Vec<usize> = col.0.iter().map(|&x| if x == n + 1 { 1 } else { x + 1 }).collect();
    v.sort_unstable();
    Column(v)
}

pub fn promotion_inverse(n: usize, col: &Column) -> Column {
    let mut v: Vec<usize> = col.0.iter().map(|&x| if x == 1 { n + 1 } else { x - 1 }).collect();
    v.sort_unstable();
    Column(v)
}

/// Column part of `f_0`: `n+1 ↦ 1` when `n+1 ∈ col` and `1 ∉ col`.
pub fn zero_f(n: usize, col: &Column) -> Option<Column> {
    (col.contains(n + 1) && !col.contains(1)).then(|| col.replace(n + 1, 1))
}

pub fn zero_e(n: usize, col: &Column) -> Option<Column> {
    (col.contains(1) && !col.contains(n + 1)).then(|| col.replace(1, n + 1))
}

/// `pr⁻¹ ∘ f_1 ∘ pr`.
pub fn zero_f_by_promotion(n: usize, col: &Column) -> Option<Column> {
    classical_f(1, &promotion(n, col)).map(|c| promotion_inverse(n, &c))
}

pub fn zero_e_by_promotion(n: usize, col: &Column) -> Option<Column> {
    classical_e(1, &promotion(n, col)).map(|c| promotion_inverse(n, &c))
}

/// Level-zero weight of a column with zero δ-coordinate:
/// `⟨h_j, wt⟩ = [j ∈ col] − [j+1 ∈ col]`, indices read cyclically.
pub fn column_weight(datum: &CartanDatum, col: &Column) -> Weight {
    let n = datum.rank();
    let count = |x: usize| i64::from(col.contains(x));
    let mut lambda = vec![0i64; n + 1];
    lambda[0] = count(n + 1) - count(1);
    for (j, c) in lambda.iter_mut().enumerate().skip(1) {
        *c = count(j) - count(j + 1);
    }
    Weight::new(lambda, 0)
}

/// Classical crystal `B^{i,1}` with colours `1..=n`.
#[derive(Debug, Clone)]
pub struct ColumnCrystal {
    datum: CartanDatum,
    height: usize,
}

impl ColumnCrystal {
    pub fn new(datum: CartanDatum, height: usize) -> Result<Self> {
        check_height(&datum, height)?;
        Ok(Self { datum, height })
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn highest(&self) -> Column {
        Column::highest(self.height)
    }

    pub fn elements(&self) -> Vec<Column> {
        Column::all(self.datum.rank(), self.height)
    }
}

fn check_height(datum: &CartanDatum, height: usize) -> Result<()> {
    if height == 0 || height > datum.rank() {
        Err(Error::IndexOutOfRange {
            index: height,
            lo: 1,
            hi: datum.rank(),
        })
    } else {
        Ok(())
    }
}

impl Crystal for ColumnCrystal {
    type Elem = Column;

    fn datum(&self) -> &CartanDatum {
        &self.datum
    }

    fn colors(&self) -> Vec<usize> {
        (1..=self.datum.rank()).collect()
    }

    fn weight(&self, b: &Column) -> Weight {
        column_weight(&self.datum, b)
    }

    fn e(&self, i: usize, b: &Column) -> Option<Column> {
        classical_e(i, b)
    }

    fn f(&self, i: usize, b: &Column) -> Option<Column> {
        classical_f(i, b)
    }

    fn label(&self, b: &Column) -> String {
        format!("[{b}]")
    }
}

/// Column with a z-grade `m`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct AffineElement {
    pub column: Column,
    pub grade: i64,
}

impl AffineElement {
    pub fn new(column: Column, grade: i64) -> Self {
        Self { column, grade }
    }

    /// Applies `z^k`.
    pub fn z_shift(&self, k: i64) -> Self {
        Self {
            column: self.column.clone(),
            grade: self.grade + k,
        }
    }

    /// Parses `[1,3|m=-2]`; `n` bounds the entries.
    pub fn parse(s: &str, n: usize) -> Result<Self> {
        let bad = |reason: &str| Error::Parse {
            input: s.to_string(),
            reason: reason.into(),
        };
        let inner = s
            .trim()
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| bad("expected [entries|m=grade]"))?;
        let (entries, grade) = match inner.split_once('|') {
            Some((e, g)) => {
                let g = g.trim().strip_prefix("m=").ok_or_else(|| bad("grade must be written m=<int>"))?;
                (e, i64::from_str(g.trim()).map_err(|_| bad("grade is not an integer"))?)
            }
            None => (inner, 0),
        };
        let entries = entries
            .split(',')
            .map(|x| usize::from_str(x.trim()))
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| bad("entries must be positive integers"))?;
        let column = Column::new(entries, n).map_err(|e| match e {
            Error::Parse { reason, .. } => bad(&reason),
            other => other,
        })?;
        Ok(Self { column, grade })
    }
}

impl fmt::Display for AffineElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}|m={}]", self.column, self.grade)
    }
}

/// Parses factors written back to back or separated by `⊗`, e.g.
/// `[1|m=0]⊗[1,2|m=-1]`.
pub fn parse_tensor(s: &str, n: usize) -> Result<TensorElement<AffineElement>> {
    let mut factors = Vec::new();
    let mut rest = s.trim();
    while !rest.is_empty() {
        rest = rest.trim_start_matches(|c: char| c == '⊗' || c.is_whitespace() || c == '*');
        if rest.is_empty() {
            break;
        }
        let end = rest.find(']').ok_or_else(|| Error::Parse {
            input: s.to_string(),
            reason: "unterminated factor".into(),
        })?;
        factors.push(AffineElement::parse(&rest[..=end], n)?);
        rest = &rest[end + 1..];
    }
    if factors.is_empty() {
        return Err(Error::Parse {
            input: s.to_string(),
            reason: "no factors".into(),
        });
    }
    Ok(TensorElement(factors))
}

/// How the 0-arrows of the column are computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ZeroArrows {
    #[default]
    Substitution,
    Promotion,
}

/// Direction of the grade change along `f_0`. `Raising` is wrong and exists
/// only for fault injection.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum GradeSign {
    #[default]
    Lowering,
    Raising,
}

/// Affinization `Aff(B^{i,1})` of the column crystal: colours `0..=n`.
#[derive(Debug, Clone)]
pub struct AffinizedKr {
    datum: CartanDatum,
    height: usize,
    zero_arrows: ZeroArrows,
    grade_sign: GradeSign,
}

impl AffinizedKr {
    pub fn new(datum: CartanDatum, height: usize) -> Result<Self> {
        check_height(&datum, height)?;
        Ok(Self {
            datum,
            height,
            zero_arrows: ZeroArrows::default(),
            grade_sign: GradeSign::default(),
        })
    }

    pub fn with_zero_arrows(mut self, zero_arrows: ZeroArrows) -> Self {
        self.zero_arrows = zero_arrows;
        self
    }

    pub fn with_grade_sign(mut self, grade_sign: GradeSign) -> Self {
        self.grade_sign = grade_sign;
        self
    }

    pub fn height(&self) -> usize {
        self.height
    }

    /// `u_{ϖ_i} = ({1..i}, 0)`.
    pub fn u_varpi(&self) -> AffineElement {
        AffineElement::new(Column::highest(self.height), 0)
    }

    /// Every element with grade in `lo..=hi`.
    pub fn elements_between(&self, lo: i64, hi: i64) -> Vec<AffineElement> {
        (lo..=hi)
            .flat_map(|m| {
                Column::all(self.datum.rank(), self.height)
                    .into_iter()
                    .map(move |c| AffineElement::new(c, m))
            })
            .collect()
    }

    fn step(&self) -> i64 {
        match self.grade_sign {
            GradeSign::Lowering => 1,
            GradeSign::Raising => -1,
        }
    }
}

impl Crystal for AffinizedKr {
    type Elem = AffineElement;

    fn datum(&self) -> &CartanDatum {
        &self.datum
    }

    fn colors(&self) -> Vec<usize> {
        (0..=self.datum.rank()).collect()
    }

    fn weight(&self, b: &AffineElement) -> Weight {
        column_weight(&self.datum, &b.column).shift_delta(b.grade)
    }

    fn e(&self, i: usize, b: &AffineElement) -> Option<AffineElement> {
        let n = self.datum.rank();
        if i == 0 {
            let col = match self.zero_arrows {
                ZeroArrows::Substitution => zero_e(n, &b.column),
                ZeroArrows::Promotion => zero_e_by_promotion(n, &b.column),
            }?;
            Some(AffineElement::new(col, b.grade + self.step()))
        } else {
            classical_e(i, &b.column).map(|c| AffineElement::new(c, b.grade))
        }
    }

    fn f(&self, i: usize, b: &AffineElement) -> Option<AffineElement> {
        let n = self.datum.rank();
        if i == 0 {
            let col = match self.zero_arrows {
                ZeroArrows::Substitution => zero_f(n, &b.column),
                ZeroArrows::Promotion => zero_f_by_promotion(n, &b.column),
            }?;
            Some(AffineElement::new(col, b.grade - self.step()))
        } else {
            classical_f(i, &b.column).map(|c| AffineElement::new(c, b.grade))
        }
    }

    fn epsilon(&self, i: usize, b: &AffineElement) -> usize {
        usize::from(self.e(i, b).is_some())
    }

    fn phi(&self, i: usize, b: &AffineElement) -> usize {
        usize::from(self.f(i, b).is_some())
    }

    fn grades(&self, b: &AffineElement) -> Vec<i64> {
        vec![b.grade]
    }

    fn classical_projection(&self, b: &AffineElement) -> AffineElement {
        AffineElement::new(b.column.clone(), 0)
    }

    fn label(&self, b: &AffineElement) -> String {
        b.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crystal::{check_axioms, explore, Window};

    fn col(v: &[usize], n: usize) -> Column {
        Column::new(v.to_vec(), n).unwrap()
    }

    fn binom(n: usize, k: usize) -> usize {
        (0..k).fold(1, |acc, j| acc * (n - j) / (j + 1))
    }

    #[test]
    fn classical_examples() {
        assert_eq!(classical_f(1, &col(&[1], 2)), Some(col(&[2], 2)));
        assert_eq!(classical_f(1, &col(&[2], 2)), None);
        assert_eq!(classical_f(2, &col(&[1, 2], 2)), Some(col(&[1, 3], 2)));
        assert_eq!(classical_e(2, &col(&[1, 3], 2)), Some(col(&[1, 2], 2)));
    }

    #[test]
    fn promotion_examples() {
        assert_eq!(promotion(2, &col(&[3], 2)), col(&[1], 2));
        assert_eq!(promotion(2, &col(&[1, 2], 2)), col(&[2, 3], 2));
        for n in 1..=4 {
            for i in 1..=n {
                for c in Column::all(n, i) {
                    let cycled = (0..=n).fold(c.clone(), |x, _| promotion(n, &x));
                    assert_eq!(cycled, c);
                    assert_eq!(promotion_inverse(n, &promotion(n, &c)), c);
                }
            }
        }
    }

    #[test]
    fn zero_arrows_two_ways() {
        for n in 1..=5 {
            for i in 1..=n {
                for c in Column::all(n, i) {
                    assert_eq!(zero_f(n, &c), zero_f_by_promotion(n, &c), "n={n} {c}");
                    assert_eq!(zero_e(n, &c), zero_e_by_promotion(n, &c), "n={n} {c}");
                }
            }
        }
    }

    #[test]
    fn affine_f0_examples() {
        let d = CartanDatum::affine_a(2).unwrap();
        let aff = AffinizedKr::new(d.clone(), 1).unwrap();
        let promo = aff.clone().with_zero_arrows(ZeroArrows::Promotion);
        let x = AffineElement::new(col(&[3], 2), 0);
        let y = AffineElement::new(col(&[1], 2), -1);
        assert_eq!(aff.f(0, &x), Some(y.clone()));
        assert_eq!(promo.f(0, &x), Some(y.clone()));
        assert_eq!(aff.f(0, &y), None);
        assert_eq!(aff.e(0, &y), Some(x.clone()));
        let alpha0 = d.alpha::<i64>(0).unwrap();
        assert_eq!(aff.weight(&y) - aff.weight(&x), -alpha0);
    }

    #[test]
    fn u_varpi_and_shift() {
        let d = CartanDatum::affine_a(2).unwrap();
        let aff = AffinizedKr::new(d.clone(), 2).unwrap();
        let u = aff.u_varpi();
        assert_eq!(u, AffineElement::new(col(&[1, 2], 2), 0));
        assert_eq!(aff.weight(&u), d.varpi(2).unwrap());
        let aff1 = AffinizedKr::new(d.clone(), 1).unwrap();
        let shifted = aff1.u_varpi().z_shift(-1);
        assert_eq!(aff1.weight(&shifted), d.varpi::<i64>(1).unwrap() - d.delta());
    }

    #[test]
    fn z_shift_commutes_with_operators() {
        for n in 1..=3 {
            let d = CartanDatum::affine_a(n).unwrap();
            for i in 1..=n {
                let aff = AffinizedKr::new(d.clone(), i).unwrap();
                for b in aff.elements_between(-1, 1) {
                    for k in [-2, 1, 3] {
                        for j in aff.colors() {
                            assert_eq!(aff.f(j, &b).map(|x| x.z_shift(k)), aff.f(j, &b.z_shift(k)));
                            assert_eq!(aff.e(j, &b).map(|x| x.z_shift(k)), aff.e(j, &b.z_shift(k)));
                        }
                        assert_eq!(aff.weight(&b.z_shift(k)), aff.weight(&b).shift_delta(k));
                    }
                }
            }
        }
    }

    #[test]
    fn census_and_connectivity() {
        for n in 1..=4 {
            let d = CartanDatum::affine_a(n).unwrap();
            for i in 1..=n {
                let c = ColumnCrystal::new(d.clone(), i).unwrap();
                let g = explore(&c, &c.highest(), Window::grades(0, 0));
                assert_eq!(g.len(), binom(n + 1, i));
                assert_eq!(c.elements().len(), binom(n + 1, i));
                assert!(g.truncated().is_empty());
                assert!(check_axioms(&c, &g).passed());
            }
        }
    }

    #[test]
    fn affinized_layers_pass_axioms() {
        for n in 1..=3 {
            let d = CartanDatum::affine_a(n).unwrap();
            for i in 1..=n {
                let aff = AffinizedKr::new(d.clone(), i).unwrap();
                let g = explore(&aff, &aff.u_varpi(), Window::grades(-3, 1));
                assert_eq!(g.len(), 5 * binom(n + 1, i));
                let report = check_axioms(&aff, &g);
                assert!(report.passed(), "{report:?}");
                // connected: everything reaches some grade shift of u
                assert_eq!(g.component_of(0).len(), g.len());
            }
        }
    }

    #[test]
    fn unique_weight_varpi_minus_delta() {
        for n in 1..=4 {
            let d = CartanDatum::affine_a(n).unwrap();
            for i in 1..=n {
                let aff = AffinizedKr::new(d.clone(), i).unwrap();
                let target = d.varpi::<i64>(i).unwrap() - d.delta();
                let hits: Vec<_> = aff
                    .elements_between(-3, 3)
                    .into_iter()
                    .filter(|b| aff.weight(b) == target)
                    .collect();
                assert_eq!(hits, vec![AffineElement::new(Column::highest(i), -1)]);
            }
        }
    }

    #[test]
    fn parsing() {
        let b = AffineElement::parse("[1,3|m=-2]", 2).unwrap();
        assert_eq!(b, AffineElement::new(col(&[1, 3], 2), -2));
        assert_eq!(b.to_string(), "[1,3|m=-2]");
        assert_eq!(AffineElement::parse("[2]", 2).unwrap().grade, 0);
        assert!(AffineElement::parse("[3,1|m=0]", 2).is_err());
        assert!(AffineElement::parse("[4|m=0]", 2).is_err());
        assert!(AffineElement::parse("1|m=0", 2).is_err());
        let t = parse_tensor("[1|m=0]⊗[1,2|m=-1]", 2).unwrap();
        assert_eq!(t.len(), 2);
        assert_eq!(t.to_string(), "[1|m=0]⊗[1,2|m=-1]");
        assert_eq!(parse_tensor("[1|m=0] [1,2|m=-1]", 2).unwrap(), t);
        assert!(parse_tensor("", 2).is_err());
    }

    #[test]
    fn bad_height() {
        let d = CartanDatum::affine_a(2).unwrap();
        assert!(AffinizedKr::new(d.clone(), 0).is_err());
        assert!(ColumnCrystal::new(d, 3).is_err());
    }
}
