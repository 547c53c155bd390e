use lzcrystal::crystal::{Crystal, TensorCrystal, TensorElement, TensorRule};
use lzcrystal::kr::{AffineElement, AffinizedKr, Column};
use lzcrystal::lab::{Conventions, Lab, LambdaSpec};
use lzcrystal::partitions::{Partition, PartitionTuple};
use lzcrystal::schur::{schur, SchurMethod};
use lzcrystal::weyl::{is_extremal, s_action, w_action, WeylWord};
use lzcrystal::{CartanDatum, Polynomial};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

/// Random element of `⊗ Aff(B^{h_k,1})` for `A_n^(1)`.
fn tensor_element() -> impl Strategy<Value = (usize, Vec<usize>, Vec<AffineElement>)> {
    (1usize..=3).prop_flat_map(|n| {
        prop::collection::vec(1..=n, 1..=3).prop_flat_map(move |heights| {
            let factors: Vec<_> = heights
                .iter()
                .map(|&h| {
                    (prop::sample::subsequence((1..=n + 1).collect::<Vec<_>>(), h), -3i64..=3)
                        .prop_map(move |(entries, m)| AffineElement::new(Column::new(entries, n).unwrap(), m))
                })
                .collect();
            (Just(n), Just(heights), factors)
        })
    })
}

fn crystal(n: usize, heights: &[usize]) -> TensorCrystal<AffinizedKr> {
    let d = CartanDatum::affine_a(n).unwrap();
    TensorCrystal::new(heights.iter().map(|&h| AffinizedKr::new(d.clone(), h).unwrap()).collect()).unwrap()
}

fn shift_all(b: &TensorElement<AffineElement>, shifts: &[i64]) -> TensorElement<AffineElement> {
    TensorElement(b.0.iter().zip(shifts.iter().cycle()).map(|(x, &s)| x.z_shift(s)).collect())
}

/// `s_ρ(1, …, 1)` with `m` ones, by the hook-content formula.
fn hook_content(rho: &Partition, m: usize) -> BigInt {
    let conj = rho.transpose();
    let mut acc = BigRational::from_integer(BigInt::from(1));
    for (r, &len) in rho.parts().iter().enumerate() {
        for c in 0..len {
            let content = m as i64 + c as i64 - r as i64;
            let hook = (len - c) + (conj.part(c) - r) - 1;
            acc *= BigRational::new(BigInt::from(content), BigInt::from(hook));
        }
    }
    assert!(acc.is_integer());
    acc.to_integer()
}

fn partition() -> impl Strategy<Value = Partition> {
    prop::collection::vec(1usize..=3, 0..=3).prop_map(|mut v| {
        v.sort_unstable_by(|a, b| b.cmp(a));
        Partition::new(v).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn operators_are_inverse_and_shift_weights((n, heights, factors) in tensor_element()) {
        let t = crystal(n, &heights);
        let b = TensorElement(factors);
        let d = t.datum().clone();
        for i in t.colors() {
            let alpha = d.alpha::<i64>(i).unwrap();
            if let Some(c) = t.f(i, &b) {
                prop_assert_eq!(t.e(i, &c), Some(b.clone()));
                prop_assert_eq!(t.weight(&c), t.weight(&b) - alpha.clone());
            }
            if let Some(c) = t.e(i, &b) {
                prop_assert_eq!(t.f(i, &c), Some(b.clone()));
            }
            let pairing = t.weight(&b).pairing(i);
            prop_assert_eq!(t.phi(i, &b) as i64 - t.epsilon(i, &b) as i64, pairing);
        }
    }

    #[test]
    fn tensor_rules_agree((n, heights, factors) in tensor_element()) {
        let bin = crystal(n, &heights);
        let sig = bin.clone().with_rule(TensorRule::Signature);
        let b = TensorElement(factors);
        for i in bin.colors() {
            prop_assert_eq!(bin.e(i, &b), sig.e(i, &b));
            prop_assert_eq!(bin.f(i, &b), sig.f(i, &b));
        }
    }

    #[test]
    fn simple_reflections_are_involutions((n, heights, factors) in tensor_element()) {
        let t = crystal(n, &heights);
        let b = TensorElement(factors);
        for i in t.colors() {
            let x = s_action(&t, i, &b).unwrap();
            prop_assert_eq!(s_action(&t, i, &x).unwrap(), b.clone());
        }
    }

    #[test]
    fn weyl_action_matches_weight_action(
        (n, heights, factors) in tensor_element(),
        raw in prop::collection::vec(0usize..4, 0..6),
    ) {
        let t = crystal(n, &heights);
        let b = TensorElement(factors);
        let word = WeylWord::new(t.datum(), raw.into_iter().map(|i| i % (n + 1)).collect()).unwrap();
        let x = w_action(&t, &word, &b).unwrap();
        prop_assert_eq!(t.weight(&x), word.act_on_weight(&t.weight(&b)));
    }

    #[test]
    fn extremality_ignores_z_shifts(
        (n, heights, factors) in tensor_element(),
        shifts in prop::collection::vec(-4i64..=4, 1..=3),
    ) {
        let t = crystal(n, &heights);
        let b = TensorElement(factors);
        prop_assert_eq!(
            is_extremal(&t, &b).is_extremal(),
            is_extremal(&t, &shift_all(&b, &shifts)).is_extremal()
        );
    }

    #[test]
    fn schur_routes_and_dimension(rho in partition(), m in 0usize..=4) {
        let a: Polynomial = schur(&rho, m, SchurMethod::Tableaux);
        let b: Polynomial = schur(&rho, m, SchurMethod::JacobiTrudi);
        prop_assert_eq!(&a, &b);
        let total = a.terms().fold(BigInt::from(0), |acc, (_, c)| acc + c);
        prop_assert_eq!(total, hook_content(&rho, m));
    }

    #[test]
    fn realization_sizes(
        m in prop::collection::vec(0usize..=2, 2),
        rho1 in partition(),
        rho2 in partition(),
        shifts in prop::collection::vec(-2i64..=0, 1..=4),
    ) {
        prop_assume!(m.iter().sum::<usize>() > 0);
        let lab = Lab::new(LambdaSpec::affine_a(2, &m).unwrap(), Conventions::default()).unwrap();
        let b = shift_all(lab.u_prime(), &shifts);
        let c0 = PartitionTuple::new(vec![rho1.clone(), rho2.clone()]);
        let img = lab.phi_image(&c0, &b).unwrap();
        let total = img.realization.terms().fold(BigInt::from(0), |acc, (_, c)| acc + c);
        prop_assert_eq!(total, hook_content(&rho1, m[0]) * hook_content(&rho2, m[1]));
        let want = lab.crystal().weight(&b).shift_delta(-(c0.size() as i64));
        for x in img.realization.support() {
            prop_assert_eq!(lab.crystal().weight(x), want.clone());
        }
    }
}

#[test]
fn hook_content_oracle() {
    let p = |v: Vec<usize>| Partition::new(v).unwrap();
    assert_eq!(hook_content(&p(vec![2, 1]), 3), BigInt::from(8));
    assert_eq!(hook_content(&p(vec![1, 1, 1]), 2), BigInt::from(0));
    assert_eq!(hook_content(&p(vec![]), 0), BigInt::from(1));
}
