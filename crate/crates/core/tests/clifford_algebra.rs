use proptest::prelude::*;

use spinc_localization::clifford::{anticommutant_basis, blade_product, AlgebraElement, Blade, Signature};
use spinc_localization::rational::{int, Q};

/// Reduce the word `a ++ b` to a sorted blade by adjacent swaps and
/// cancellations, tracking the sign by hand.
fn word_product(a: &[usize], b: &[usize], p: usize) -> (i64, Vec<usize>) {
    let mut word: Vec<usize> = a.iter().chain(b).copied().collect();
    let mut sign = 1i64;
    loop {
        let mut changed = false;
        let mut i = 0;
        while i + 1 < word.len() {
            if word[i] > word[i + 1] {
                word.swap(i, i + 1);
                sign = -sign;
                changed = true;
            } else if word[i] == word[i + 1] {
                if word[i] < p {
                    sign = -sign;
                }
                word.drain(i..i + 2);
                changed = true;
                continue;
            }
            i += 1;
        }
        if !changed {
            return (sign, word);
        }
    }
}

fn signature() -> impl Strategy<Value = Signature> {
    (0usize..=6).prop_flat_map(|n| (0..=n).prop_map(move |p| Signature::new(p, n - p).unwrap()))
}

fn element(sig: Signature) -> impl Strategy<Value = AlgebraElement> {
    prop::collection::vec(-3i64..=3, sig.algebra_dim())
        .prop_map(move |c| AlgebraElement::from_dense(sig, &c.into_iter().map(int).collect::<Vec<Q>>()))
}

fn triple() -> impl Strategy<Value = (AlgebraElement, AlgebraElement, AlgebraElement)> {
    signature().prop_flat_map(|s| (element(s), element(s), element(s)))
}

fn pair() -> impl Strategy<Value = (AlgebraElement, AlgebraElement)> {
    signature().prop_flat_map(|s| (element(s), element(s)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn blade_product_matches_word_reduction(sig in signature(), a in 0u32..64, b in 0u32..64) {
        let mask = (sig.algebra_dim() - 1) as u32;
        let (a, b) = (Blade::from_mask(a & mask), Blade::from_mask(b & mask));
        let (sign, blade) = blade_product(a, b, sig).unwrap();
        let (want_sign, want) = word_product(&a.indices(), &b.indices(), sig.p());
        prop_assert_eq!(sign, want_sign);
        prop_assert_eq!(blade.indices(), want);
    }

    #[test]
    fn product_is_associative((x, y, z) in triple()) {
        let left = x.mul(&y).unwrap().mul(&z).unwrap();
        let right = x.mul(&y.mul(&z).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn grade_involution_is_an_automorphism((x, y) in pair()) {
        let lhs = x.mul(&y).unwrap().grade_involution();
        let rhs = x.grade_involution().mul(&y.grade_involution()).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(x.grade_involution().grade_involution(), x);
    }

    #[test]
    fn reverse_is_an_anti_automorphism((x, y) in pair()) {
        let lhs = x.mul(&y).unwrap().reverse();
        let rhs = y.reverse().mul(&x.reverse()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn product_distributes((x, y, z) in triple()) {
        let lhs = x.mul(&y.add(&z).unwrap()).unwrap();
        let rhs = x.mul(&y).unwrap().add(&x.mul(&z).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    /// Every blade commutes or anticommutes with each generator, so the
    /// anticommutant of a set of generators is spanned by the blades that
    /// anticommute with all of them.
    #[test]
    fn anticommutant_of_generators_counts_blades(sig in signature(), chosen in 0u32..64) {
        let n = sig.generators();
        let gens: Vec<usize> = (0..n).filter(|i| chosen >> i & 1 == 1).collect();
        let constraints: Vec<_> = gens.iter().map(|&g| AlgebraElement::generator(sig, g).unwrap()).collect();
        let basis = anticommutant_basis(sig, &constraints).unwrap();
        let expected = (0..sig.algebra_dim() as u32)
            .filter(|&m| {
                gens.iter().all(|&g| {
                    let b = Blade::from_mask(m);
                    let (s1, _) = blade_product(b, Blade::generator(g), sig).unwrap();
                    let (s2, _) = blade_product(Blade::generator(g), b, sig).unwrap();
                    s1 == -s2
                })
            })
            .count();
        prop_assert_eq!(basis.len(), expected);
        for v in &basis {
            prop_assert!(!v.is_zero());
            for g in &constraints {
                prop_assert!(v.mul(g).unwrap().add(&g.mul(v).unwrap()).unwrap().is_zero());
            }
        }
    }

    /// The anticommutant of arbitrary (non-blade) elements is still closed
    /// under the defining condition and is a linear space.
    #[test]
    fn anticommutant_of_elements_is_exact(sig in signature(), seed in prop::collection::vec(-2i64..=2, 64)) {
        let dim = sig.algebra_dim();
        let g = AlgebraElement::from_dense(sig, &seed[..dim].iter().map(|&c| int(c)).collect::<Vec<_>>());
        let basis = anticommutant_basis(sig, std::slice::from_ref(&g)).unwrap();
        let mut sum = AlgebraElement::zero(sig);
        for (k, v) in basis.iter().enumerate() {
            prop_assert!(v.mul(&g).unwrap().add(&g.mul(v).unwrap()).unwrap().is_zero());
            sum = sum.add(&v.scale(&int(k as i64 + 1))).unwrap();
        }
        prop_assert!(sum.mul(&g).unwrap().add(&g.mul(&sum).unwrap()).unwrap().is_zero());
    }
}

#[test]
fn generator_squares_follow_the_signature() {
    for (p, q) in [(0, 3), (2, 2), (3, 0), (7, 1), (8, 1)] {
        let sig = Signature::new(p, q).unwrap();
        assert_eq!(sig.algebra_dim(), 1 << (p + q));
        for i in 0..p + q {
            let g = AlgebraElement::generator(sig, i).unwrap();
            let want = if i < p { -1 } else { 1 };
            assert_eq!(g.mul(&g).unwrap().scalar_part_only(), Some(int(want)));
        }
    }
}

#[test]
fn full_anticommutant_is_empty_or_pseudoscalar() {
    // Anticommuting with every generator forces the top blade, which only
    // works when the number of generators is even.
    for n in 1..=6 {
        let sig = Signature::new(n, 0).unwrap();
        let gens: Vec<_> = (0..n).map(|i| AlgebraElement::generator(sig, i).unwrap()).collect();
        let basis = anticommutant_basis(sig, &gens).unwrap();
        assert_eq!(basis.len(), if n % 2 == 0 { 1 } else { 0 }, "n = {n}");
    }
}

#[test]
fn out_of_range_generators_are_rejected() {
    let sig = Signature::new(2, 1).unwrap();
    assert!(AlgebraElement::generator(sig, 3).is_err());
    assert!(blade_product(Blade::generator(5), Blade::UNIT, sig).is_err());
    assert!(Signature::new(10, 7).is_err());
}
