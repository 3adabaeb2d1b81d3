use proptest::prelude::*;

use wordlab::complexity::complexity_sequence;
use wordlab::sturmian::{
    cutting_sequence, fibonacci_iterate, fibonacci_morphism, fibonacci_prefix, is_balanced,
    is_finite_sturmian, mechanical_word, psi_prefix, unbalanced_witness, Variant,
};
use wordlab::{BigSlopeIntercept, BigSurd, SlopeIntercept64, Surd128, Surd64, Word};

fn surd(s: &str) -> Surd64 {
    s.parse().unwrap()
}

/// Crossings of `y = θx` (x > 0) with the grid lines, merged by abscissa:
/// `0` for a vertical line, `1` for a horizontal one.
fn geometric_cutting_sequence(theta: f64, len: usize) -> Vec<u8> {
    let (mut i, mut j) = (1.0f64, 1.0f64);
    let mut out = Vec::with_capacity(len);
    while out.len() < len {
        if i < j / theta {
            out.push(0);
            i += 1.0;
        } else {
            out.push(1);
            j += 1.0;
        }
    }
    out
}

#[test]
fn cutting_sequences_match_the_grid() {
    for text in [
        "surd:0,1,1,2",
        "surd:0,1,1,3",
        "surd:1,1,2,5",
        "surd:0,1,3,7",
        "surd:5,2,1,11",
    ] {
        let theta = surd(text);
        let word = cutting_sequence(&theta, 400).unwrap();
        assert_eq!(
            word.letters(),
            geometric_cutting_sequence(theta.to_f64(), 400),
            "θ = {text}"
        );
    }
}

#[test]
fn cutting_sequence_rejects_non_positive_slopes() {
    assert!(cutting_sequence(&surd("0"), 5).is_err());
    assert!(cutting_sequence(&surd("surd:0,-1,1,2"), 5).is_err());
}

#[test]
fn coefficient_types_agree() {
    let g = SlopeIntercept64::new(surd("surd:3,-1,2,5"), surd("surd:3,-1,2,5")).unwrap();
    let small = mechanical_word(&g, Variant::Lower, 3000).unwrap();
    let big_g: BigSurd = "surd:3,-1,2,5".parse().unwrap();
    let big = BigSlopeIntercept::new(big_g.clone(), big_g).unwrap();
    assert_eq!(mechanical_word(&big, Variant::Lower, 3000).unwrap(), small);
    let wide: Surd128 = "surd:3,-1,2,5".parse().unwrap();
    let wide = wordlab::SlopeIntercept128::new(wide.clone(), wide).unwrap();
    assert_eq!(mechanical_word(&wide, Variant::Lower, 3000).unwrap(), small);
}

#[test]
fn bigint_survives_where_i64_overflows() {
    let alpha = "surd:0,1000000007,3000000001,2";
    let small = SlopeIntercept64::new(surd(alpha), surd("0")).unwrap();
    assert!(mechanical_word(&small, Variant::Lower, 10).is_err());
    let a: BigSurd = alpha.parse().unwrap();
    let big = BigSlopeIntercept::new(a, "0".parse().unwrap()).unwrap();
    assert!(is_balanced(&mechanical_word(&big, Variant::Lower, 200).unwrap()).unwrap());
}

#[test]
fn lower_and_upper_agree_off_the_integers() {
    let g = SlopeIntercept64::new(surd("surd:3,-1,2,5"), surd("surd:3,-1,2,5")).unwrap();
    let lower = mechanical_word(&g, Variant::Lower, 10_000).unwrap();
    let upper = mechanical_word(&g, Variant::Upper, 10_000).unwrap();
    assert_eq!(lower, upper);
}

#[test]
fn fibonacci_structure() {
    for n in 0..=25 {
        let f = fibonacci_iterate(n).unwrap();
        assert_eq!(
            *f.letters().last().unwrap(),
            (n % 2) as u8,
            "last letter of f_{n}"
        );
        assert!(f.is_prefix_of(&fibonacci_iterate(n + 1).unwrap()));
        assert_eq!(f, fibonacci_prefix(f.len()));
    }
    // φ^{n+1}(0) = 0 · v_0 · v_1 ⋯ v_n with v_i = φ^i(1).
    let phi = fibonacci_morphism();
    let zero = Word::parse("0").unwrap();
    let one = Word::parse_with_alphabet("1", 2).unwrap();
    for n in 0..=12 {
        let mut rhs = zero.clone();
        for i in 0..=n {
            rhs = rhs.concat(&phi.iterate(&one, i).unwrap());
        }
        assert_eq!(phi.iterate(&zero, n + 1).unwrap(), rhs, "n = {n}");
    }
}

#[test]
fn psi_prefixes_are_balanced() {
    for l in 1..=5 {
        let word = psi_prefix(l, 1000).unwrap();
        assert!(is_balanced(&word).unwrap(), "l = {l}");
        let mut head = vec![0u8; l + 1];
        head.push(1);
        head.extend(std::iter::repeat_n(0, l));
        assert!(Word::new(2, head).unwrap().is_prefix_of(&word));
    }
}

fn irrational_slope() -> impl Strategy<Value = (Surd64, Surd64)> {
    // α = (a + b√d)/c in (0, 1), ρ a rational in [0, 1).
    (
        prop::sample::select(vec![2i64, 3, 5, 6, 7, 10, 11, 13]),
        1i64..=3,
        2i64..=40,
        -20i64..=20,
        0i64..=16,
    )
        .prop_filter_map("slope outside (0, 1)", |(d, b, c, a, rho)| {
            let alpha = Surd64::new(a, b, c, d).ok()?;
            let x = alpha.to_f64();
            (x > 0.0 && x < 1.0).then(|| (alpha, Surd64::rational(rho, 17).unwrap()))
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn mechanical_factors_are_balanced_and_sturmian((alpha, rho) in irrational_slope(), len in 1usize..300) {
        let s = SlopeIntercept64::new(alpha, rho).unwrap();
        let word = mechanical_word(&s, Variant::Lower, len).unwrap();
        prop_assert!(is_balanced(&word).unwrap());
        prop_assert!(unbalanced_witness(&word).unwrap().is_none());
        let p = complexity_sequence(&word).unwrap();
        for n in 1..=len {
            prop_assert!(p.p(n) <= n + 1);
        }
        let has = |u: &str| word.contains(&Word::parse_with_alphabet(u, 2).unwrap());
        prop_assert!(!(has("00") && has("11")));
        if word.letters().contains(&0) && word.letters().contains(&1) {
            prop_assert_eq!(p.r_param + p.k_param, len);
        }
    }

    #[test]
    fn witness_exists_exactly_when_unbalanced(bits in prop::collection::vec(0u8..2, 1..40)) {
        let word = Word::new(2, bits).unwrap();
        let balanced = is_balanced(&word).unwrap();
        prop_assert_eq!(balanced, is_finite_sturmian(&word).unwrap());
        match unbalanced_witness(&word).unwrap() {
            None => prop_assert!(balanced),
            Some(u) => {
                prop_assert!(!balanced);
                let zero = Word::parse_with_alphabet("0", 2).unwrap();
                let one = Word::parse_with_alphabet("1", 2).unwrap();
                prop_assert!(word.contains(&zero.concat(&u).concat(&zero)));
                prop_assert!(word.contains(&one.concat(&u).concat(&one)));
            }
        }
    }

    #[test]
    fn fixed_point_prefixes_are_stable(a in 1usize..500, b in 1usize..500) {
        let (short, long) = (a.min(b), a.max(b));
        prop_assert!(fibonacci_prefix(short).is_prefix_of(&fibonacci_prefix(long)));
    }
}
