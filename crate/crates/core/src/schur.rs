//! Schur polynomials `s_ρ(x_1, …, x_m)` by two independent routes: the
//! semistandard tableau sum and the dual Jacobi–Trudi determinant
//! `det(e_{ρ'_k − k + j})`.

use std::collections::HashMap;

use crate::partitions::{Partition, PartitionTuple};
use crate::poly::{FormalPolynomial, Monomial};
use crate::scalar::Scalar;

/// Which expansion algorithm to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SchurMethod {
    #[default]
    Tableaux,
    JacobiTrudi,
}

impl std::str::FromStr for SchurMethod {
    type Err = crate::Error;

    fn from_str(s: &str) -> crate::Result<Self> {
        match s {
            "ssyt" => Ok(Self::Tableaux),
            "jt" => Ok(Self::JacobiTrudi),
            other => Err(crate::Error::Config(format!("unknown Schur method {other:?}"))),
        }
    }
}

pub fn schur<C: Scalar>(rho: &Partition, vars: usize, method: SchurMethod) -> FormalPolynomial<C> {
    match method {
        SchurMethod::Tableaux => schur_ssyt(rho, vars),
        SchurMethod::JacobiTrudi => schur_jacobi_trudi(rho, vars),
    }
}

/// Elementary symmetric polynomial `e_k(x_1..x_m)`; zero for `k > m`.
pub fn elementary<C: Scalar>(k: usize, vars: usize) -> FormalPolynomial<C> {
    let mut out = FormalPolynomial::zero(vars);
    if k > vars {
        return out;
    }
    fn rec<C: Scalar>(start: usize, left: usize, e: &mut Vec<usize>, out: &mut FormalPolynomial<C>) {
        if left == 0 {
            out.add_term(Monomial(e.clone()), C::one());
            return;
        }
        for i in start..=e.len() - left {
            e[i] = 1;
            rec(i + 1, left - 1, e, out);
            e[i] = 0;
        }
    }
    rec(0, k, &mut vec![0; vars], &mut out);
    out
}

/// Sum over semistandard tableaux of shape `ρ` with entries in `1..=m` of
/// the content monomials.
pub fn schur_ssyt<C: Scalar>(rho: &Partition, vars: usize) -> FormalPolynomial<C> {
    let cells: Vec<(usize, usize)> = rho
        .parts()
        .iter()
        .enumerate()
        .flat_map(|(r, &len)| (0..len).map(move |c| (r, c)))
        .collect();
    let mut out = FormalPolynomial::zero(vars);
    if rho.len() > vars {
        return out;
    }
    let mut grid: Vec<Vec<usize>> = rho.parts().iter().map(|&l| vec![0; l]).collect();
    let mut content = vec![0usize; vars];
    fill(&cells, 0, vars, &mut grid, &mut content, &mut out);
    out
}

fn fill<C: Scalar>(
    cells: &[(usize, usize)],
    k: usize,
    vars: usize,
    grid: &mut Vec<Vec<usize>>,
    content: &mut Vec<usize>,
    out: &mut FormalPolynomial<C>,
) {
    let Some(&(r, c)) = cells.get(k) else {
        out.add_term(Monomial(content.clone()), C::one());
        return;
    };
    let lo_row = if c > 0 { grid[r][c - 1] } else { 1 };
    let lo_col = if r > 0 { grid[r - 1][c] + 1 } else { 1 };
    for v in lo_row.max(lo_col)..=vars {
        grid[r][c] = v;
        content[v - 1] += 1;
        fill(cells, k + 1, vars, grid, content, out);
        content[v - 1] -= 1;
    }
    grid[r][c] = 0;
}

/// Jacobi–Trudi with the minimal determinant size `t = ρ_1`.
pub fn schur_jacobi_trudi<C: Scalar>(rho: &Partition, vars: usize) -> FormalPolynomial<C> {
    schur_jacobi_trudi_sized(rho, vars, rho.part(0))
}

/// `det(e_{ρ'_k − k + j})_{1 ≤ k, j ≤ t}` for any `t ≥ ℓ(ρ')`, with `e_0 = 1`
/// and `e_k = 0` for `k < 0` or `k > m`.
pub fn schur_jacobi_trudi_sized<C: Scalar>(rho: &Partition, vars: usize, t: usize) -> FormalPolynomial<C> {
    let conj = rho.transpose();
    assert!(t >= conj.len(), "determinant size {t} below ℓ(ρ') = {}", conj.len());
    assert!(t < 32, "determinant size {t} too large");
    let e: Vec<FormalPolynomial<C>> = (0..=vars).map(|k| elementary(k, vars)).collect();
    let entry = |row: usize, col: usize| -> Option<&FormalPolynomial<C>> {
        let idx = conj.part(row) as i64 - row as i64 + col as i64;
        if idx < 0 || idx as usize > vars {
            None
        } else {
            Some(&e[idx as usize])
        }
    };
    let mut memo: HashMap<u32, FormalPolynomial<C>> = HashMap::new();
    let full = if t == 0 { 0 } else { (1u32 << t) - 1 };
    laplace(full, t, vars, &entry, &mut memo)
}

/// Expansion along the first remaining row; `mask` holds the unused columns.
fn laplace<'a, C: Scalar>(
    mask: u32,
    t: usize,
    vars: usize,
    entry: &impl Fn(usize, usize) -> Option<&'a FormalPolynomial<C>>,
    memo: &mut HashMap<u32, FormalPolynomial<C>>,
) -> FormalPolynomial<C> {
    if mask == 0 {
        return FormalPolynomial::one(vars);
    }
    if let Some(p) = memo.get(&mask) {
        return p.clone();
    }
    let row = t - mask.count_ones() as usize;
    let mut acc = FormalPolynomial::zero(vars);
    let mut position = 0;
    for col in 0..t {
        if mask & (1 << col) == 0 {
            continue;
        }
        if let Some(a) = entry(row, col) {
            let minor = laplace(mask & !(1 << col), t, vars, entry, memo);
            if !minor.is_zero() {
                let term = a.mul(&minor);
                acc = if position % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
            }
        }
        position += 1;
    }
    memo.insert(mask, acc.clone());
    acc
}

/// Per-colour expansions `s_{ρ^(i)}(x_{i,1}, …, x_{i,m_i})`.
pub fn schur_tuple<C: Scalar>(
    c0: &PartitionTuple,
    var_counts: &[usize],
    method: SchurMethod,
) -> Vec<FormalPolynomial<C>> {
    assert_eq!(c0.rank(), var_counts.len(), "tuple rank and variable counts disagree");
    c0.components()
        .iter()
        .zip(var_counts)
        .map(|(rho, &m)| schur(rho, m, method))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Polynomial;
    use num_bigint::BigInt;
    use num_traits::Signed;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn mono(e: &[usize]) -> Monomial {
        Monomial(e.to_vec())
    }

    #[test]
    fn small_examples() {
        let s1: Polynomial = schur_ssyt(&p(&[1]), 2);
        assert_eq!(s1, elementary(1, 2));
        assert_eq!(s1.to_string(), "x1 + x2");
        assert!(schur_ssyt::<i64>(&p(&[1, 1]), 1).is_zero());
        let s21: FormalPolynomial<i64> = schur_ssyt(&p(&[2, 1]), 2);
        let mut want = FormalPolynomial::zero(2);
        want.add_term(mono(&[2, 1]), 1);
        want.add_term(mono(&[1, 2]), 1);
        assert_eq!(s21, want);
        assert_eq!(schur_jacobi_trudi::<i64>(&p(&[1]), 2), elementary(1, 2));
        assert_eq!(
            schur_jacobi_trudi::<i64>(&p(&[2, 1]), 3),
            schur_ssyt::<i64>(&p(&[2, 1]), 3)
        );
        assert!(schur_jacobi_trudi::<i64>(&p(&[1, 1, 1]), 2).is_zero());
        assert!(schur_ssyt::<i64>(&p(&[1, 1, 1]), 2).is_zero());
    }

    #[test]
    fn kostka_numbers() {
        // s_(2,1)(x1,x2,x3): Kostka K_{(2,1),(1,1,1)} = 2
        let s: FormalPolynomial<i64> = schur_ssyt(&p(&[2, 1]), 3);
        assert_eq!(s.coeff(&mono(&[1, 1, 1])), 2);
        // K_{(3,2,1),(1^6)} = 16 standard tableaux
        let s: FormalPolynomial<i64> = schur_jacobi_trudi(&p(&[3, 2, 1]), 6);
        assert_eq!(s.coeff(&mono(&[1; 6])), 16);
    }

    #[test]
    fn empty_shape_is_one() {
        for m in 0..4 {
            assert_eq!(schur_ssyt::<i64>(&Partition::empty(), m), FormalPolynomial::one(m));
            assert_eq!(schur_jacobi_trudi::<i64>(&Partition::empty(), m), FormalPolynomial::one(m));
        }
    }

    fn shapes_up_to(size: usize) -> Vec<Partition> {
        (0..=size).flat_map(|s| Partition::all_of_size(s, s)).collect()
    }

    #[test]
    fn routes_agree() {
        for rho in shapes_up_to(6) {
            for m in 0..=3 {
                let a: Polynomial = schur_ssyt(&rho, m);
                let b: Polynomial = schur_jacobi_trudi(&rho, m);
                assert_eq!(a, b, "shape {rho} m {m}");
                assert_eq!(a.is_zero(), rho.len() > m);
                assert!(a.is_homogeneous_of(rho.size()));
                assert!(a.terms().all(|(_, c)| c.is_positive()));
            }
        }
    }

    #[test]
    fn determinant_size_independence() {
        for rho in shapes_up_to(5) {
            for m in 0..=3 {
                let base: FormalPolynomial<i64> = schur_jacobi_trudi(&rho, m);
                for extra in 1..=2 {
                    let t = rho.part(0) + extra;
                    assert_eq!(schur_jacobi_trudi_sized(&rho, m, t), base, "{rho} m={m} t={t}");
                }
            }
        }
    }

    #[test]
    fn symmetric_under_permutations() {
        let perms = [[0, 1, 2], [1, 0, 2], [0, 2, 1], [2, 1, 0], [1, 2, 0], [2, 0, 1]];
        for rho in shapes_up_to(5) {
            let s: FormalPolynomial<i64> = schur_ssyt(&rho, 3);
            for perm in &perms {
                assert_eq!(s.permute(perm), s);
            }
        }
    }

    #[test]
    fn pieri_rule() {
        for m in 1..=3 {
            let e1: FormalPolynomial<i64> = elementary(1, m);
            for rho in shapes_up_to(4) {
                let lhs = e1.mul(&schur_ssyt(&rho, m));
                let rhs = rho
                    .add_box()
                    .into_iter()
                    .filter(|mu| mu.len() <= m)
                    .fold(FormalPolynomial::zero(m), |acc, mu| acc.add(&schur_ssyt(&mu, m)));
                assert_eq!(lhs, rhs, "{rho} m={m}");
            }
        }
    }

    #[test]
    fn tuple_expansion() {
        let c0 = PartitionTuple::new(vec![p(&[1]), p(&[])]);
        let out: Vec<Polynomial> = schur_tuple(&c0, &[2, 1], SchurMethod::Tableaux);
        assert_eq!(out[0].to_string(), "x1 + x2");
        assert_eq!(out[1], FormalPolynomial::one(1));
        let bad = PartitionTuple::new(vec![p(&[1, 1, 1]), p(&[])]);
        let out: Vec<Polynomial> = schur_tuple(&bad, &[2, 1], SchurMethod::JacobiTrudi);
        assert!(out[0].is_zero());
        let empty: Vec<Polynomial> = schur_tuple(&PartitionTuple::empty(2), &[2, 3], SchurMethod::Tableaux);
        assert!(empty.iter().all(|q| *q == FormalPolynomial::one(q.vars())));
    }

    #[test]
    fn big_coefficients() {
        let s: Polynomial = schur_jacobi_trudi(&p(&[2, 2]), 3);
        assert_eq!(s.coeff(&mono(&[2, 1, 1])), BigInt::from(1));
        assert_eq!(s.coeff(&mono(&[2, 2, 0])), BigInt::from(1));
    }
}
