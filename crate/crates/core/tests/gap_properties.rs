use num_bigint::BigUint;
use permpat::gap::{
    build_gap_instance, decide_via_approx, gap_sides, inflated_instance, trivial_no, trivial_yes, Branch,
    Rational,
};
use permpat::matching::{approx_count, contains_left_aligned, count_copies};
use permpat::Permutation;
use proptest::prelude::*;

fn perms_up_to(max: usize) -> Vec<Permutation> {
    (1..=max).flat_map(Permutation::all).collect()
}

/// Patterns of length 2 against texts of length at most 4.
fn desk_family() -> Vec<(Permutation, Permutation)> {
    let mut out = Vec::new();
    for pi in Permutation::all(2) {
        for tau in perms_up_to(4) {
            out.push((pi.clone(), tau));
        }
    }
    out
}

#[test]
fn inflated_sizes() {
    for (pi, tau) in desk_family() {
        for alpha in 1..=3u32 {
            if tau.len().pow(alpha) * pi.len() * alpha as usize > 200 {
                continue;
            }
            let g = inflated_instance(&pi, &tau, alpha as u64).unwrap();
            let (k, n, a) = (pi.len(), tau.len(), alpha as usize);
            assert_eq!(g.k_prime, a * k + k - 1);
            assert_eq!(g.n_prime, n - 1 + a * k * n.pow(alpha));
            assert_eq!((g.pattern.len(), g.text.len()), (g.k_prime, g.n_prime));
        }
    }
}

#[test]
fn yes_case_spot_checks_with_alpha_two() {
    let mut checked = 0;
    for pi in Permutation::all(2) {
        for tau in Permutation::all(3) {
            if !contains_left_aligned(&pi, &tau).unwrap() {
                continue;
            }
            let g = inflated_instance(&pi, &tau, 2).unwrap();
            let c = count_copies(&g.pattern, &g.text).unwrap();
            // n^(alpha^2 k) = 3^8
            assert!(*c.value() >= BigUint::from(3u32).pow(8), "({pi}, {tau}): {c}");
            checked += 1;
        }
    }
    assert!(checked > 0);
}

fn admissible_epsilon() -> impl Strategy<Value = Rational> {
    (3i64..200).prop_flat_map(|q| (1..(q + 1) / 2, Just(q))).prop_filter_map("epsilon < 1/2", |(p, q)| {
        let e = Rational::new(p, q);
        (e < Rational::new(1, 2)).then_some(e)
    })
}

proptest! {
    #[test]
    fn trivial_instances_respect_the_gap(eps in admissible_epsilon()) {
        let (pi, tau) = trivial_yes();
        let c = count_copies(&pi, &tau).unwrap();
        let s = gap_sides(&c, tau.len(), pi.len(), eps);
        prop_assert!(s.many && !s.few);
        let (pi, tau) = trivial_no();
        let c = count_copies(&pi, &tau).unwrap();
        let s = gap_sides(&c, tau.len(), pi.len(), eps);
        prop_assert!(s.few && !s.many);
    }
}

/// The decision rule agrees with the gap side on every promise instance of
/// the desk family. The trivial yes-instance is left to the acceptance suite.
#[test]
fn wrapper_agrees_on_promise_instances() {
    let epsilons = [Rational::new(1, 3), Rational::new(2, 5), Rational::new(49, 100)];
    let mut promise = 0;
    let mut wrong = Vec::new();
    for eps in epsilons {
        let mut instances = Vec::new();
        for (pi, tau) in desk_family() {
            for alpha in [1, 2] {
                instances.push(inflated_instance(&pi, &tau, alpha).unwrap());
            }
            let g = build_gap_instance(&pi, &tau, eps).unwrap();
            if g.branch == Branch::TrivialNo {
                instances.push(g);
            }
        }
        for g in instances {
            let c = count_copies(&g.pattern, &g.text).unwrap();
            let sides = gap_sides(&c, g.n_prime, g.k_prime, eps);
            if sides.many == sides.few {
                continue;
            }
            promise += 1;
            let est = approx_count(&g.pattern, &g.text).unwrap();
            if decide_via_approx(&g.pattern, &g.text, &est) != sides.many {
                wrong.push(format!("epsilon {eps}: {} in {} (count {c}, estimate {est})", g.pattern, g.text));
            }
        }
    }
    assert!(promise > 0);
    assert!(
        wrong.is_empty(),
        "{} of {promise} promise instances misclassified, first: {}",
        wrong.len(),
        wrong[0]
    );
}
