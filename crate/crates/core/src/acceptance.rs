//! The acceptance suite: ten exact checks at desk scale, shared by the
//! integration tests and the `verify` command.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::cartan::CartanDatum;
use crate::crystal::{
    check_axioms, explore, isomorphic_under, Crystal, TensorCrystal, TensorElement, TensorPair, TensorRule, TieBreak,
    Window,
};
use crate::error::{Error, Result};
use crate::kr::{AffineElement, AffinizedKr, Column, ColumnCrystal, GradeSign};
use crate::lab::{depth_window, Conventions, Lab, LambdaSpec, WPrimeElement};
use crate::partitions::{enumerate_all_tuples, Partition};
use crate::schur::{schur_jacobi_trudi, schur_jacobi_trudi_sized, schur_ssyt};
use crate::weyl::{find_translation_word, is_extremal, s_action, w_action, WeylMatrixOf, WeylWord};
use crate::Polynomial;

/// `(id, key, title)` of every criterion.
pub const CRITERIA: [(u8, &str, &str); 10] = [
    (1, "axioms", "crystal axioms"),
    (2, "census", "KR census"),
    (3, "tensor", "tensor conventions"),
    (4, "weyl", "Weyl action relations"),
    (5, "translation", "translation word on u_varpi"),
    (6, "extremal", "extremality"),
    (7, "connectivity", "connectivity to extremal vectors"),
    (8, "schur", "symmetric-function oracle"),
    (9, "index", "index set injectivity"),
    (10, "mutation", "harness integrity"),
];

/// Lambdas used by the connectivity and index-set checks.
pub const LAB_CASES: [(usize, &[usize]); 4] = [(1, &[1]), (1, &[2]), (2, &[1, 0]), (2, &[1, 1])];

/// Scale and conventions of a suite run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SuiteConfig {
    pub max_rank: usize,
    /// Grade window depth for component enumerations.
    pub depth: usize,
    /// Extra grade room used to decide component membership.
    pub margin: usize,
    /// Bound on `|c_0|` in the index-set check.
    pub max_schur: usize,
    /// Conventions under test in criteria 4 to 7.
    pub conventions: Conventions,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            max_rank: 3,
            depth: 2,
            margin: 2,
            max_schur: 3,
            conventions: Conventions::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriterionReport {
    pub id: u8,
    pub key: &'static str,
    pub name: &'static str,
    pub passed: bool,
    pub details: Vec<String>,
}

impl fmt::Display for CriterionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{verdict} [{}] {}", self.id, self.name)?;
        for d in &self.details {
            write!(f, "\n    {d}")?;
        }
        Ok(())
    }
}

/// Collects failures, keeping only the first few counterexamples.
struct Check {
    failures: usize,
    details: Vec<String>,
}

impl Check {
    const SHOWN: usize = 5;

    fn new() -> Self {
        Self { failures: 0, details: Vec::new() }
    }

    fn note(&mut self, msg: impl Into<String>) {
        self.details.push(msg.into());
    }

    fn require(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        if !ok {
            self.fail(msg());
        }
    }

    fn fail(&mut self, msg: impl Into<String>) {
        self.failures += 1;
        if self.failures <= Self::SHOWN {
            self.details.push(format!("counterexample: {}", msg.into()));
        }
    }

    fn finish(mut self, id: u8) -> CriterionReport {
        if self.failures > Self::SHOWN {
            self.details.push(format!("… {} failures in total", self.failures));
        }
        let (_, key, name) = CRITERIA[id as usize - 1];
        CriterionReport {
            id,
            key,
            name,
            passed: self.failures == 0,
            details: self.details,
        }
    }
}

/// Parses a comma-separated list of criterion ids or keys.
pub fn select(only: &str) -> Result<Vec<u8>> {
    let mut out = BTreeSet::new();
    for tok in only.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let hit = CRITERIA
            .iter()
            .find(|(id, key, _)| tok == *key || tok.parse::<u8>().ok() == Some(*id))
            .ok_or_else(|| Error::Config(format!("unknown criterion {tok:?}")))?;
        out.insert(hit.0);
    }
    if out.is_empty() {
        return Err(Error::Config("empty criterion selection".into()));
    }
    Ok(out.into_iter().collect())
}

pub fn run(id: u8, config: &SuiteConfig) -> CriterionReport {
    match id {
        1 => crystal_axioms(config),
        2 => kr_census(config),
        3 => tensor_conventions(config),
        4 => weyl_relations(config),
        5 => translation_word(config),
        6 => extremality(config),
        7 => connectivity(config),
        8 => schur_oracle(config),
        9 => index_set(config),
        10 => harness_integrity(config),
        _ => panic!("no criterion {id}"),
    }
}

pub fn run_suite(config: &SuiteConfig, ids: &[u8]) -> Vec<CriterionReport> {
    ids.iter().map(|&id| run(id, config)).collect()
}

fn datum(n: usize) -> CartanDatum {
    CartanDatum::affine_a(n).expect("positive rank")
}

fn kr(n: usize, h: usize, grade_sign: GradeSign) -> AffinizedKr {
    AffinizedKr::new(datum(n), h).expect("valid height").with_grade_sign(grade_sign)
}

/// Nondecreasing height sequences used for tensor checks.
fn tensor_shapes(n: usize) -> Vec<Vec<usize>> {
    let max_len = if n <= 2 { 3 } else { 2 };
    let mut out = Vec::new();
    let mut stack: Vec<Vec<usize>> = (1..=n).map(|h| vec![h]).collect();
    while let Some(s) = stack.pop() {
        if s.len() >= 2 {
            out.push(s.clone());
        }
        if s.len() < max_len {
            for h in *s.last().unwrap()..=n {
                let mut t = s.clone();
                t.push(h);
                stack.push(t);
            }
        }
    }
    out.sort();
    out
}

fn affine_tensor(n: usize, shape: &[usize], conv: Conventions) -> TensorCrystal<AffinizedKr> {
    TensorCrystal::new(shape.iter().map(|&h| kr(n, h, conv.grade_sign)).collect())
        .expect("same datum")
        .with_rule(conv.rule)
        .with_tie_break(conv.tie_break)
}

fn highest_tensor(shape: &[usize]) -> WPrimeElement {
    TensorElement(shape.iter().map(|&h| AffineElement::new(Column::highest(h), 0)).collect())
}

fn crystal_axioms(config: &SuiteConfig) -> CriterionReport {
    let mut c = Check::new();
    let mut graphs = 0;
    let mut nodes = 0;
    let mut tally = |c: &mut Check, what: String, report: crate::crystal::AxiomReport, len: usize| {
        graphs += 1;
        nodes += len;
        c.require(report.passed(), || format!("{what}: {report:?}"));
    };
    for n in 1..=config.max_rank.max(4) {
        for h in 1..=n {
            let col = ColumnCrystal::new(datum(n), h).expect("valid height");
            let g = explore(&col, &col.highest(), Window::grades(0, 0));
            tally(&mut c, format!("B^{{{h},1}} in rank {n}"), check_axioms(&col, &g), g.len());
        }
    }
    for n in 1..=config.max_rank {
        for h in 1..=n {
            let aff = kr(n, h, GradeSign::Lowering);
            let g = explore(&aff, &aff.u_varpi(), Window::grades(-(config.depth as i64) - 1, 1));
            tally(&mut c, format!("Aff(B^{{{h},1}}) in rank {n}"), check_axioms(&aff, &g), g.len());
        }
        for shape in tensor_shapes(n) {
            let t = affine_tensor(n, &shape, Conventions::default());
            let g = explore(&t, &highest_tensor(&shape), Window::per_factor(-1, 1));
            tally(&mut c, format!("tensor {shape:?} in rank {n}"), check_axioms(&t, &g), g.len());
        }
    }
    c.note(format!("{graphs} graphs, {nodes} nodes"));
    c.finish(1)
}

fn binom(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, j| acc * (n - j) / (j + 1))
}

fn kr_census(config: &SuiteConfig) -> CriterionReport {
    let mut c = Check::new();
    for n in 1..=config.max_rank.max(4) {
        for h in 1..=n {
            let col = ColumnCrystal::new(datum(n), h).expect("valid height");
            let size = col.elements().len();
            c.require(size == binom(n + 1, h), || format!("|B^{{{h},1}}| = {size} in rank {n}"));
            let g = explore(&col, &col.highest(), Window::grades(0, 0));
            c.require(g.len() == size, || {
                format!("B^{{{h},1}} in rank {n}: {} of {size} reachable", g.len())
            });
        }
    }
    c.note(format!("ranks 1..={}", config.max_rank.max(4)));
    c.finish(2)
}

fn tensor_conventions(config: &SuiteConfig) -> CriterionReport {
    let mut c = Check::new();
    let mut compared = 0;
    for n in 1..=config.max_rank {
        for shape in tensor_shapes(n) {
            let bin = affine_tensor(n, &shape, Conventions::default());
            let sig = bin.clone().with_rule(TensorRule::Signature);
            let g = explore(&bin, &highest_tensor(&shape), Window::per_factor(-1, 1));
            for b in g.nodes() {
                for i in bin.colors() {
                    compared += 1;
                    let same = bin.e(i, b) == sig.e(i, b)
                        && bin.f(i, b) == sig.f(i, b)
                        && bin.epsilon(i, b) == sig.epsilon(i, b)
                        && bin.phi(i, b) == sig.phi(i, b);
                    c.require(same, || format!("rules differ at {b} colour {i}"));
                }
            }
        }
    }
    c.note(format!("{compared} (element, colour) pairs compared"));
    let mut brackets = 0;
    for n in 1..=config.max_rank.min(2) {
        for shape in tensor_shapes(n).into_iter().filter(|s| s.len() == 3) {
            let k = |j: usize| kr(n, shape[j], GradeSign::Lowering);
            let u = |j: usize| AffineElement::new(Column::highest(shape[j]), 0);
            let left = TensorPair::new(TensorPair::new(k(0), k(1)).expect("datum"), k(2)).expect("datum");
            let right = TensorPair::new(k(0), TensorPair::new(k(1), k(2)).expect("datum")).expect("datum");
            let flat = affine_tensor(n, &shape, Conventions::default());
            let window = Window::per_factor(-1, 1);
            let gl = explore(&left, &((u(0), u(1)), u(2)), window);
            let gr = explore(&right, &(u(0), (u(1), u(2))), window);
            let gf = explore(&flat, &highest_tensor(&shape), window);
            if let Err(e) = isomorphic_under(&gl, &gr, |((a, b), x)| (a.clone(), (b.clone(), x.clone()))) {
                c.fail(format!("(AB)C vs A(BC) for {shape:?} in rank {n}: {e}"));
            }
            if let Err(e) = isomorphic_under(&gl, &gf, |((a, b), x)| TensorElement(vec![a.clone(), b.clone(), x.clone()])) {
                c.fail(format!("(AB)C vs flat for {shape:?} in rank {n}: {e}"));
            }
            brackets += 1;
        }
    }
    c.note(format!("{brackets} re-bracketings checked"));
    c.finish(3)
}

/// Elements on which the Weyl relations are exercised.
fn weyl_samples(config: &SuiteConfig, n: usize) -> Vec<Lab> {
    LAB_CASES
        .iter()
        .filter(|(r, _)| *r == n)
        .map(|(r, m)| Lab::new(LambdaSpec::affine_a(*r, m).expect("valid"), config.conventions).expect("valid"))
        .collect()
}

fn weyl_relations(config: &SuiteConfig) -> CriterionReport {
    let mut c = Check::new();
    let depth = config.depth.max(2);
    let mut involution_checks = 0;
    for n in 1..=config.max_rank.min(2) {
        for lab in weyl_samples(config, n) {
            let t = lab.crystal();
            let g = lab.enumerate_b0(depth_window(depth));
            for b in g.nodes() {
                for i in t.colors() {
                    involution_checks += 1;
                    let s = WeylMatrixOf::<i64>::reflection(t.datum(), i).expect("node");
                    match s_action(t, i, b).and_then(|x| s_action(t, i, &x).map(|y| (x, y))) {
                        Ok((x, y)) => {
                            c.require(&y == b, || format!("S_{i}^2 {b} = {y}"));
                            c.require(t.weight(&x) == s.apply(&t.weight(b)), || {
                                format!("wt S_{i} {b} = {} but s_{i} wt = {}", t.weight(&x), s.apply(&t.weight(b)))
                            });
                        }
                        Err(e) => c.fail(format!("S_{i} on {b}: {e}")),
                    }
                }
            }
        }
    }
    c.note(format!("{involution_checks} involution checks"));

    // braid relations of order 3 on A_2^(1)
    let lab = Lab::new(LambdaSpec::affine_a(2, &[1, 1]).expect("valid"), config.conventions).expect("valid");
    let t = lab.crystal();
    let g = lab.enumerate_b0(depth_window(depth.max(4)));
    let words: Vec<(WeylWord, WeylWord)> = [(0, 1), (0, 2), (1, 2)]
        .iter()
        .map(|&(i, j)| {
            (
                WeylWord::new(t.datum(), vec![i, j, i]).expect("word"),
                WeylWord::new(t.datum(), vec![j, i, j]).expect("word"),
            )
        })
        .collect();
    for b in g.nodes() {
        for (u, v) in &words {
            match (w_action(t, u, b), w_action(t, v, b)) {
                (Ok(x), Ok(y)) => c.require(x == y, || format!("{u} and {v} disagree on {b}: {x} vs {y}")),
                (Err(e), _) | (_, Err(e)) => c.fail(format!("braid word on {b}: {e}")),
            }
        }
    }
    c.require(g.len() >= 100, || format!("only {} elements for the braid check", g.len()));
    c.note(format!("braid relations on {} elements of A2, λ = ϖ1 + ϖ2", g.len()));
    c.finish(4)
}

fn translation_word(config: &SuiteConfig) -> CriterionReport {
    let mut c = Check::new();
    for n in 1..=config.max_rank {
        let d = datum(n);
        for i in 1..=n {
            let aff = kr(n, i, config.conventions.grade_sign);
            let word = match find_translation_word(&d, i, 2 * n + 2) {
                Ok(w) => w,
                Err(e) => {
                    c.fail(format!("rank {n}, i = {i}: {e}"));
                    continue;
                }
            };
            let u = aff.u_varpi();
            match w_action(&aff, &word, &u) {
                Ok(x) => c.require(x == u.z_shift(-1), || format!("rank {n}: ({word}) u_varpi{i} = {x}")),
                Err(e) => c.fail(format!("rank {n}: {e}")),
            }
            let target = d.varpi::<i64>(i).expect("node").shift_delta(-1);
            let lo = -(config.depth as i64) - 2;
            let hits: Vec<AffineElement> = aff
                .elements_between(lo, -lo)
                .into_iter()
                .filter(|b| aff.weight(b) == target)
                .collect();
            c.require(hits.len() == 1, || {
                format!("rank {n}: {} elements of weight varpi{i} - delta", hits.len())
            });
            c.note(format!("rank {n}, i = {i}: {word}"));
        }
    }
    c.finish(5)
}

/// All `m` with `Σ m_i ∈ 1..=max_total`.
fn multiplicities(n: usize, max_total: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|p: Vec<usize>| {
                let used: usize = p.iter().sum();
                (0..=max_total - used).map(move |k| {
                    let mut q = p.clone();
                    q.push(k);
                    q
                })
            })
            .collect();
    }
    out.retain(|m| m.iter().sum::<usize>() >= 1);
    out
}

fn extremality(config: &SuiteConfig) -> CriterionReport {
    let mut c = Check::new();
    let mut lambdas = 0;
    for n in 1..=config.max_rank {
        for m in multiplicities(n, 3) {
            lambdas += 1;
            let lab = Lab::new(LambdaSpec::affine_a(n, &m).expect("valid"), config.conventions).expect("valid");
            let t = lab.crystal();
            let u = lab.u_prime();
            c.require(is_extremal(t, u).is_extremal(), || format!("u' not extremal for rank {n}, m = {m:?}"));
            let k = u.len() as i64;
            for shift in [vec![-1; u.len()], (0..k).collect(), (0..k).map(|j| 2 * j - k).collect::<Vec<_>>()] {
                let shifted = TensorElement(u.factors().iter().zip(&shift).map(|(x, &s)| x.z_shift(s)).collect());
                c.require(is_extremal(t, &shifted).is_extremal() == is_extremal(t, u).is_extremal(), || {
                    format!("extremality changes under z-shift {shift:?} for m = {m:?}")
                });
                if let Some(b) = t.f(0, u).or_else(|| t.f(1, u)) {
                    let sb = TensorElement(b.factors().iter().zip(&shift).map(|(x, &s)| x.z_shift(s)).collect());
                    c.require(is_extremal(t, &b).is_extremal() == is_extremal(t, &sb).is_extremal(), || {
                        format!("extremality of {b} changes under z-shift {shift:?}")
                    });
                }
            }
        }
    }
    c.note(format!("{lambdas} weights lambda"));
    let mut found = 0;
    for (n, m) in LAB_CASES {
        let lab = Lab::new(LambdaSpec::affine_a(n, m).expect("valid"), config.conventions).expect("valid");
        let g = lab.enumerate_b0(depth_window(config.depth));
        let ext = lab.extremal_in_component(&g);
        c.require(ext.iter().any(|(b, _)| b == lab.u_prime()), || {
            format!("u' missing from the extremal census for m = {m:?}")
        });
        for (b, w) in &ext {
            c.require(lab.in_weyl_orbit(w), || format!("extremal {b} has weight {w} outside W lambda + Z delta"));
        }
        found += ext.len();
    }
    c.note(format!("{found} extremal elements found in windowed components"));
    c.finish(6)
}

fn connectivity(config: &SuiteConfig) -> CriterionReport {
    let mut c = Check::new();
    let depth = config.depth.max(2);
    for (n, m) in LAB_CASES {
        let lab = Lab::new(LambdaSpec::affine_a(n, m).expect("valid"), config.conventions).expect("valid");
        let r = lab.connectivity(depth, config.margin);
        c.note(format!(
            "rank {n}, m = {m:?}: {} checked, {} connected, {} undetermined, {} targets",
            r.checked,
            r.connected,
            r.undetermined.len(),
            r.targets
        ));
        c.require(!r.truncated, || format!("node cap hit for m = {m:?}"));
        c.require(r.checked > 0 && r.targets > 0, || format!("nothing to check for m = {m:?}"));
        for x in &r.undetermined {
            c.fail(format!("{x} (m = {m:?}) does not reach an extremal shift of u' inside the window"));
        }
    }
    c.finish(7)
}

fn schur_oracle(_config: &SuiteConfig) -> CriterionReport {
    let mut c = Check::new();
    let mut shapes = 0;
    for size in 0..=6 {
        for rho in Partition::all_of_size(size, size) {
            shapes += 1;
            for m in 0..=3 {
                let ssyt: Polynomial = schur_ssyt(&rho, m);
                let jt: Polynomial = schur_jacobi_trudi(&rho, m);
                c.require(ssyt == jt, || format!("s_{rho} in {m} variables: {ssyt} vs {jt}"));
                c.require(ssyt.is_zero() == (rho.len() > m), || {
                    format!("s_{rho} in {m} variables vanishing = {}", ssyt.is_zero())
                });
                let t0 = rho.transpose().len();
                for t in t0..=t0 + 2 {
                    let sized: Polynomial = schur_jacobi_trudi_sized(&rho, m, t);
                    c.require(sized == ssyt, || format!("s_{rho} in {m} variables at size {t}: {sized}"));
                }
            }
        }
    }
    c.note(format!("{shapes} shapes, up to 3 variables"));
    c.finish(8)
}

fn index_set(config: &SuiteConfig) -> CriterionReport {
    let mut c = Check::new();
    for (n, m) in LAB_CASES {
        let lab = Lab::new(LambdaSpec::affine_a(n, m).expect("valid"), config.conventions).expect("valid");
        let g = lab.enumerate_b0(depth_window(config.depth));
        let mut owners: HashMap<crate::Realization, (String, String)> = HashMap::new();
        let (mut images, mut collisions) = (0, 0);
        let (mut same_element, mut same_c0) = (0, 0);
        for c0 in enumerate_all_tuples(n, config.max_schur) {
            for b in g.nodes() {
                let img = match lab.phi_image(&c0, b) {
                    Ok(img) => img,
                    Err(e) => {
                        c.fail(e.to_string());
                        continue;
                    }
                };
                let fits = c0.fits(lab.spec().caps());
                c.require(img.realization.is_zero() != fits, || {
                    format!("({c0}, {b}): realization zero = {}, c0 admissible = {fits}", img.realization.is_zero())
                });
                let want = lab.crystal().weight(b).shift_delta(-(c0.size() as i64));
                for (x, k) in img.realization.terms() {
                    let w = lab.crystal().weight(x);
                    c.require(w == want, || format!("({c0}, {b}): support {x} has weight {w}, expected {want}"));
                    c.require(k > &num_bigint::BigInt::from(0), || format!("({c0}, {b}): coefficient {k}"));
                }
                if img.realization.is_zero() {
                    continue;
                }
                images += 1;
                let key = (c0.to_string(), b.to_string());
                if let Some(prev) = owners.get(&img.realization) {
                    collisions += 1;
                    same_element += usize::from(prev.1 == key.1);
                    same_c0 += usize::from(prev.0 == key.0);
                    c.fail(format!(
                        "m = {m:?}: ({}, {}) and ({}, {}) both realise {}",
                        prev.0, prev.1, key.0, key.1, img.realization
                    ));
                } else {
                    owners.insert(img.realization, key);
                }
            }
        }
        c.note(format!(
            "rank {n}, m = {m:?}: {} elements, {images} nonzero realizations, {collisions} collisions ({same_element} with the same b', {same_c0} with the same c0)",
            g.len()
        ));
    }
    c.finish(9)
}

fn harness_integrity(config: &SuiteConfig) -> CriterionReport {
    let mut c = Check::new();
    let mutations = [
        (
            "flipped tensor tie-break",
            Conventions {
                tie_break: TieBreak::Flipped,
                ..config.conventions
            },
        ),
        (
            "raising f_0 grade sign",
            Conventions {
                grade_sign: GradeSign::Raising,
                ..config.conventions
            },
        ),
    ];
    for (name, conventions) in mutations {
        let mutated = SuiteConfig { conventions, ..*config };
        let failed: Vec<u8> = (4..=7).filter(|&id| !run(id, &mutated).passed).collect();
        c.note(format!("{name}: criteria {failed:?} fail"));
        c.require(!failed.is_empty(), || format!("{name} goes unnoticed by criteria 4-7"));
    }
    c.finish(10)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn selection() {
        assert_eq!(select("schur").unwrap(), vec![8]);
        assert_eq!(select("7, 1,axioms").unwrap(), vec![1, 7]);
        assert!(select("nope").is_err());
        assert!(select("").is_err());
    }

    #[test]
    fn shapes_and_multiplicities() {
        assert_eq!(tensor_shapes(1), vec![vec![1, 1], vec![1, 1, 1]]);
        assert_eq!(tensor_shapes(3).len(), 6);
        assert_eq!(multiplicities(2, 3).len(), 9);
        assert_eq!(binom(5, 2), 10);
    }
}
