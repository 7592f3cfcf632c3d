use num_bigint::{BigInt, BigUint};
use pfaff_core::partition::{mult_with, partitions_bounded, partitions_up_to, MultMethod, Partition};
use pfaff_core::schur::{
    binomial, decompose, dominant_char_of_irrep, dualize, pieri, plethysm_sym_wedge2,
    tensor_by_exterior, weyl_dim, SchurMultiset, Weight,
};
use proptest::prelude::*;

/// Dimension of `Σ^λ(k^N)` as the number of semistandard tableaux with entries ≤ N.
fn ssyt_count(lambda: &Partition, n: usize) -> u64 {
    fn fill(cells: &[(usize, usize)], idx: usize, t: &mut Vec<Vec<usize>>, n: usize) -> u64 {
        if idx == cells.len() {
            return 1;
        }
        let (r, c) = cells[idx];
        let lo_row = if c > 0 { t[r][c - 1] } else { 1 };
        let lo_col = if r > 0 { t[r - 1][c] + 1 } else { 1 };
        let lo = lo_row.max(lo_col);
        let mut total = 0;
        for v in lo..=n {
            t[r][c] = v;
            total += fill(cells, idx + 1, t, n);
        }
        t[r][c] = 0;
        total
    }
    let shape = lambda.rows();
    let cells: Vec<(usize, usize)> = shape
        .iter()
        .enumerate()
        .flat_map(|(r, &len)| (0..len as usize).map(move |c| (r, c)))
        .collect();
    let mut t: Vec<Vec<usize>> = shape.iter().map(|&l| vec![0; l as usize]).collect();
    fill(&cells, 0, &mut t, n)
}

#[test]
fn weyl_dim_matches_tableau_count() {
    for lambda in partitions_up_to(6) {
        for n in 1..=4 {
            let wd = if lambda.height() > n {
                BigUint::from(0u32)
            } else {
                weyl_dim(&Weight::from_partition(&lambda, n).unwrap(), n)
            };
            assert_eq!(wd, BigUint::from(ssyt_count(&lambda, n)), "λ = {lambda}, N = {n}");
        }
    }
}

#[test]
fn pieri_dimension_conservation() {
    for mu in partitions_up_to(7) {
        for n in 1..=6usize {
            if mu.height() > n {
                continue;
            }
            let base = weyl_dim(&Weight::from_partition(&mu, n).unwrap(), n);
            for k in 0..=n {
                let out = pieri(&mu, k, n);
                assert_eq!(
                    out.dim(),
                    BigInt::from(base.clone() * binomial(n as u64, k as u64)),
                    "μ = {mu}, k = {k}, N = {n}"
                );
            }
        }
    }
}

#[test]
fn plethysm_dimension() {
    for n in 1..=7usize {
        let r = (n * (n - 1) / 2) as u64;
        for m in 0..=5u64 {
            let expected = if r == 0 {
                BigUint::from(u8::from(m == 0))
            } else {
                binomial(r + m - 1, m)
            };
            assert_eq!(
                plethysm_sym_wedge2(m as usize, n).dim(),
                BigInt::from(expected),
                "N = {n}, m = {m}"
            );
        }
    }
}

#[test]
fn exterior_times_plethysm_multiplicity_is_mult() {
    for lambda in partitions_up_to(12) {
        let ht = lambda.height();
        if ht == 0 {
            continue;
        }
        let target = Weight::from_partition(&lambda, ht).unwrap();
        for k in 0..=lambda.size().min(ht) {
            let rest = lambda.size() - k;
            let coeff = if rest % 2 == 1 {
                BigInt::from(0)
            } else {
                let sym = plethysm_sym_wedge2(rest / 2, ht);
                tensor_by_exterior(&sym, k, ht).unwrap().get(&target)
            };
            let expected = mult_with(&lambda, k, MultMethod::Enumerate);
            assert_eq!(coeff, BigInt::from(expected), "λ = {lambda}, k = {k}");
        }
    }
}

#[test]
fn decompose_inverts_kostka() {
    for n in 1..=6usize {
        for size in 0..=10 {
            for lambda in partitions_bounded(size, n, size) {
                let ch = dominant_char_of_irrep(&lambda, n);
                let d = decompose(&ch).unwrap();
                assert_eq!(
                    d,
                    SchurMultiset::singleton(Weight::from_partition(&lambda, n).unwrap()),
                    "λ = {lambda}, N = {n}"
                );
            }
        }
    }
}

fn weight_strategy() -> impl Strategy<Value = Weight> {
    prop::collection::vec(-4i64..5, 1..7).prop_map(|mut v| {
        v.sort_unstable_by(|a, b| b.cmp(a));
        Weight::new(v).unwrap()
    })
}

proptest! {
    #[test]
    fn dualize_is_involution(w in weight_strategy()) {
        let n = w.len();
        let d = dualize(&w, n).unwrap();
        prop_assert_eq!(dualize(&d, n).unwrap(), w.clone());
        prop_assert_eq!(weyl_dim(&d, n), weyl_dim(&w, n));
    }

    #[test]
    fn weight_pieri_conserves_dimension(w in weight_strategy(), k in 0usize..7) {
        let n = w.len();
        prop_assume!(k <= n);
        let out = SchurMultiset::singleton(w.clone()).pieri_linear(k);
        prop_assert_eq!(
            out.dim(),
            BigInt::from(weyl_dim(&w, n) * binomial(n as u64, k as u64))
        );
    }

    #[test]
    fn dual_pieri_conserves_dimension(w in weight_strategy(), k in 0usize..7) {
        let n = w.len();
        prop_assume!(k <= n);
        let out = SchurMultiset::singleton(w.clone()).pieri_dual_linear(k);
        prop_assert_eq!(
            out.dim(),
            BigInt::from(weyl_dim(&w, n) * binomial(n as u64, k as u64))
        );
    }
}

fn weight_pair() -> impl Strategy<Value = (Weight, Weight)> {
    (1usize..5).prop_flat_map(|n| {
        let w = move || {
            prop::collection::vec(-3i64..4, n).prop_map(|mut v| {
                v.sort_unstable_by(|a, b| b.cmp(a));
                Weight::new(v).unwrap()
            })
        };
        (w(), w())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]
    #[test]
    fn general_tensor_is_commutative_and_multiplies_dimensions((a, b) in weight_pair()) {
        let n = a.len();
        let (x, y) = (SchurMultiset::singleton(a.clone()), SchurMultiset::singleton(b.clone()));
        let xy = x.tensor(&y).unwrap();
        prop_assert!(xy.is_genuine());
        prop_assert_eq!(&xy, &y.tensor(&x).unwrap());
        prop_assert_eq!(xy.dim(), BigInt::from(weyl_dim(&a, n) * weyl_dim(&b, n)));
    }

    #[test]
    fn general_tensor_agrees_with_iterated_pieri(a in weight_strategy(), k in 0usize..7, l in 0usize..7) {
        let n = a.len();
        prop_assume!(k <= n && l <= n);
        let x = SchurMultiset::singleton(a);
        // Λ^k ⊗ Λ^l is rarely a single column, so this goes through the determinant.
        let kl = SchurMultiset::singleton(Weight::column(k, n).unwrap()).pieri_linear(l);
        prop_assert_eq!(x.tensor(&kl).unwrap(), x.pieri_linear(k).pieri_linear(l));
    }
}
