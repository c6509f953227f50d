//! Property suites shared by the `selfcheck` command and the acceptance tests.
//!
//! Each suite counts the cases it checked and the ones that failed, keeping
//! the first failure message for diagnosis.

use std::fmt;
use std::time::Instant;

use num_bigint::BigUint;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::count::{binomial, BigCount};
use crate::gap::{self, Rational};
use crate::matching;
use crate::perm::{inflate, Permutation};
use crate::psi;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Scale {
    Quick,
    Full,
}

impl std::str::FromStr for Scale {
    type Err = crate::Error;
    fn from_str(s: &str) -> crate::Result<Self> {
        match s {
            "quick" => Ok(Scale::Quick),
            "full" => Ok(Scale::Full),
            _ => Err(crate::Error::InvalidArgument(format!("unknown scale '{s}'"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteResult {
    pub id: u32,
    pub name: &'static str,
    pub cases: u64,
    pub failures: u64,
    pub first_failure: Option<String>,
    pub elapsed_ms: u128,
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        self.failures == 0 && self.cases > 0
    }
}

impl fmt::Display for SuiteResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} [{:>2}] {}: {}/{} cases passed ({} ms)",
            if self.passed() { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.cases - self.failures,
            self.cases,
            self.elapsed_ms
        )?;
        if let Some(msg) = &self.first_failure {
            write!(f, "; first failure: {msg}")?;
        }
        Ok(())
    }
}

#[derive(Default)]
struct Tally {
    cases: u64,
    failures: u64,
    first_failure: Option<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(msg());
            }
        }
    }

    fn merge(&mut self, other: Tally) {
        self.cases += other.cases;
        self.failures += other.failures;
        if self.first_failure.is_none() {
            self.first_failure = other.first_failure;
        }
    }
}

pub const SUITES: [(u32, &str); 11] = [
    (1, "counting oracle equivalence"),
    (2, "worked examples"),
    (3, "left-aligned identity"),
    (4, "psi reduction correctness"),
    (5, "gadget size formulas"),
    (6, "gap yes-case bound"),
    (7, "gap no-case structure"),
    (8, "bound chains"),
    (9, "approximation guarantee"),
    (10, "decision wrapper"),
    (11, "inversion counting performance"),
];

const SEED: u64 = 0x5eed_2024;

pub fn run_all(scale: Scale) -> Vec<SuiteResult> {
    SUITES.iter().map(|&(id, _)| run_suite(id, scale)).collect()
}

/// Runs one suite. Panics on an unknown id.
pub fn run_suite(id: u32, scale: Scale) -> SuiteResult {
    let name = SUITES
        .iter()
        .find(|(i, _)| *i == id)
        .unwrap_or_else(|| panic!("unknown suite {id}"))
        .1;
    let start = Instant::now();
    let tally = match id {
        1 => counting_oracle(scale),
        2 => worked_examples(),
        3 => left_aligned_identity(scale),
        4 => psi_correctness(scale),
        5 => gadget_sizes(scale),
        6 => gap_yes_case(),
        7 => gap_no_case(),
        8 => bound_chains(),
        9 => approximation_guarantee(scale),
        10 => decision_wrapper(),
        11 => inversion_performance(scale),
        _ => unreachable!(),
    };
    SuiteResult {
        id,
        name,
        cases: tally.cases,
        failures: tally.failures,
        first_failure: tally.first_failure,
        elapsed_ms: start.elapsed().as_millis(),
    }
}

fn perms_up_to(max: usize) -> Vec<Permutation> {
    (1..=max).flat_map(Permutation::all).collect()
}

fn max_text_len(scale: Scale) -> usize {
    match scale {
        Scale::Quick => 5,
        Scale::Full => 6,
    }
}

fn counting_oracle(scale: Scale) -> Tally {
    let patterns = perms_up_to(4);
    let texts = perms_up_to(max_text_len(scale));
    let mut t = Tally::default();
    for pi in &patterns {
        for tau in &texts {
            let fast = matching::count_copies(pi, tau);
            let slow = matching::count_copies_naive(pi, tau);
            let ok = matches!((&fast, &slow), (Ok(a), Ok(b)) if a == b);
            t.check(ok, || format!("count({pi}, {tau}): pruned {fast:?}, naive {slow:?}"));
        }
    }
    t
}

fn worked_examples() -> Tally {
    let p = |s: &str| s.parse::<Permutation>().expect("literal permutation");
    let mut t = Tally::default();
    let c = matching::count_copies(&p("312"), &p("24153")).ok();
    t.check(c == Some(BigCount::from(1u64)), || format!("count(312, 24153) = {c:?}"));
    let la = matching::contains_left_aligned(&p("213"), &p("24153")).ok();
    t.check(la == Some(true), || format!("left-aligned 213 in 24153 = {la:?}"));
    let inf = inflate(&p("132"), &[p("21"), p("1"), p("123")]).ok();
    t.check(inf == Some(p("216345")), || format!("inflate = {inf:?}"));
    t
}

fn left_aligned_identity(scale: Scale) -> Tally {
    let mut t = Tally::default();
    let check = |t: &mut Tally, pi: &Permutation, tau: &Permutation| {
        let counts = matching::left_aligned_counts(pi, tau);
        let ok = counts.as_ref().is_ok_and(|c| c.agree());
        t.check(ok, || format!("left-aligned({pi}, {tau}): {counts:?}"));
    };
    for pi in perms_up_to(3) {
        for tau in perms_up_to(6) {
            check(&mut t, &pi, &tau);
        }
    }
    let samples = match scale {
        Scale::Quick => 200,
        Scale::Full => 1000,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for _ in 0..samples {
        let k = rng.gen_range(1..=4);
        let n = rng.gen_range(1..=10);
        let pi = Permutation::random(k, &mut rng);
        let tau = Permutation::random(n, &mut rng);
        check(&mut t, &pi, &tau);
    }
    t
}

fn psi_family(scale: Scale) -> Vec<psi::PsiInstance> {
    let mut family: Vec<_> = [2, 3]
        .into_iter()
        .flat_map(|k| psi::exhaustive_family(k, 3, 4))
        .collect();
    if scale == Scale::Quick {
        let mut rng = ChaCha8Rng::seed_from_u64(SEED);
        family = family.choose_multiple(&mut rng, 500).cloned().collect();
    }
    family
}

fn psi_correctness(scale: Scale) -> Tally {
    use rayon::prelude::*;
    psi_family(scale)
        .par_iter()
        .map(|inst| {
            let mut t = Tally::default();
            let report = psi::verify_reduction(inst);
            let ok = report.as_ref().is_ok_and(|r| r.agreement);
            t.check(ok, || format!("{}: {report:?}", inst.to_json()));
            t
        })
        .reduce(Tally::default, |mut a, b| {
            a.merge(b);
            a
        })
}

fn gadget_sizes(scale: Scale) -> Tally {
    let mut t = Tally::default();
    for inst in psi_family(scale) {
        let (k, n) = (inst.k(), inst.n());
        let m_bi = inst.bichromatic_edges().count();
        let e_g = inst.g().edge_count();
        match psi::reduce_psi(&inst) {
            Ok(g) => {
                t.check(g.pattern.len() == 2 + 5 * k + 2 * e_g, || {
                    format!("{}: pattern length {}", inst.to_json(), g.pattern.len())
                });
                t.check(g.text.len() == 2 + 5 * n + 2 * m_bi, || {
                    format!("{}: text length {}", inst.to_json(), g.text.len())
                });
            }
            Err(e) => t.check(false, || format!("{}: {e}", inst.to_json())),
        }
    }
    t
}

/// Pairs `(pi, tau)` with `|pi| = 2`, `|tau| <= 4`, split by whether a
/// left-aligned copy exists.
fn gap_family(left_aligned: bool) -> Vec<(Permutation, Permutation)> {
    let mut out = Vec::new();
    for pi in Permutation::all(2) {
        for tau in perms_up_to(4) {
            let has = matching::contains_left_aligned(&pi, &tau).unwrap_or(false);
            if has == left_aligned {
                out.push((pi.clone(), tau));
            }
        }
    }
    out
}

fn structural(t: &mut Tally, pi: &Permutation, tau: &Permutation, alpha: u64) {
    let rep = gap::structural_bounds(&BigUint::from(tau.len()), pi.len() as u64, alpha);
    t.check(rep.all_hold(), || format!("structural bounds ({pi}, {tau}, {alpha}):\n{rep}"));
}

fn gap_yes_case() -> Tally {
    let mut t = Tally::default();
    let p = |s: &str| s.parse::<Permutation>().expect("literal permutation");
    let frozen = gap::inflated_instance(&p("21"), &p("21"), 1)
        .and_then(|g| matching::count_copies(&g.pattern, &g.text).map(|c| (g, c)));
    t.check(
        matches!(&frozen, Ok((g, c)) if g.pattern == p("231") && g.text == p("32541") && *c == 4),
        || format!("frozen (21, 21, 1): {frozen:?}"),
    );
    let alpha = 1u64;
    for (pi, tau) in gap_family(true) {
        let (k, n) = (pi.len() as u32, tau.len());
        let count = gap::inflated_instance(&pi, &tau, alpha)
            .and_then(|g| matching::count_copies(&g.pattern, &g.text));
        let bound = BigUint::from(n).pow((alpha * alpha) as u32 * k);
        t.check(count.as_ref().is_ok_and(|c| *c.value() >= bound), || {
            format!("({pi}, {tau}): count {count:?} below {bound}")
        });
    }
    t
}

fn gap_no_case_one(t: &mut Tally, pi: &Permutation, tau: &Permutation, alpha: u64) {
    let g = match gap::inflated_instance(pi, tau, alpha) {
        Ok(g) => g,
        Err(e) => return t.check(false, || format!("({pi}, {tau}, {alpha}): {e}")),
    };
    let touching = gap::copies_touching_initial_block(&g);
    t.check(touching.as_ref().is_ok_and(|c| c.is_zero()), || {
        format!("({pi}, {tau}, {alpha}): touching {touching:?}")
    });
    let total = matching::count_copies(&g.pattern, &g.text);
    let bound = binomial(&BigUint::from(tau.len() - 1), g.k_prime as u64);
    t.check(total.as_ref().is_ok_and(|c| *c.value() <= bound), || {
        format!("({pi}, {tau}, {alpha}): total {total:?} above {bound}")
    });
    let limit = g.initial_block_pattern_len;
    if limit >= 2 {
        match matching::enumerate_embeddings(&g.pattern, &g.text, 1_000_000, false) {
            Ok(en) => {
                t.check(!en.truncated, || format!("({pi}, {tau}, {alpha}): enumeration truncated"));
                for e in &en.embeddings {
                    let used = e.indices().iter().filter(|&&i| i <= g.initial_block_text_len).count();
                    t.check(used <= limit, || {
                        format!("({pi}, {tau}, {alpha}): embedding {:?} uses {used} block positions", e.indices())
                    });
                }
            }
            Err(e) => t.check(false, || format!("({pi}, {tau}, {alpha}): {e}")),
        }
    }
}

fn gap_no_case() -> Tally {
    let mut t = Tally::default();
    for (pi, tau) in gap_family(false) {
        for alpha in [1, 2] {
            gap_no_case_one(&mut t, &pi, &tau, alpha);
        }
    }
    t
}

fn bound_chains() -> Tally {
    let mut t = Tally::default();
    for eps in [Rational::new(1, 3), Rational::new(2, 5), Rational::new(49, 100)] {
        let rep = gap::threshold_n(eps, 1).and_then(|n| gap::check_bounds(&n, 1, eps));
        t.check(rep.as_ref().is_ok_and(|r| r.all_hold()), || match &rep {
            Ok(r) => format!("epsilon {eps}:\n{r}"),
            Err(e) => format!("epsilon {eps}: {e}"),
        });
    }
    for (pi, tau) in gap_family(true) {
        structural(&mut t, &pi, &tau, 1);
    }
    for (pi, tau) in gap_family(false) {
        for alpha in [1, 2] {
            structural(&mut t, &pi, &tau, alpha);
        }
    }
    t
}

fn approximation_guarantee(scale: Scale) -> Tally {
    let mut t = Tally::default();
    for pi in perms_up_to(4) {
        for tau in perms_up_to(max_text_len(scale)) {
            let c = match matching::count_copies(&pi, &tau) {
                Ok(c) if !c.is_zero() => c.into_inner(),
                _ => continue,
            };
            let est = match matching::approx_count(&pi, &tau) {
                Ok(a) => a.into_inner(),
                Err(e) => {
                    t.check(false, || format!("approx({pi}, {tau}): {e}"));
                    continue;
                }
            };
            let nk = BigUint::from(tau.len()).pow(pi.len() as u32);
            let ok = &est * &est <= &c * &c * &nk && &c * &c <= &est * &est * &nk;
            t.check(ok, || format!("({pi}, {tau}): C = {c}, estimate = {est}"));
        }
    }
    t
}

fn decision_wrapper() -> Tally {
    let mut t = Tally::default();
    let (pi, tau) = (Permutation::increasing(2), Permutation::increasing(4));
    let four = gap::decide_via_approx(&pi, &tau, &BigCount::from(4u64));
    t.check(!four, || "estimate 4 with n = 4, k = 2 decided yes".into());
    let five = gap::decide_via_approx(&pi, &tau, &BigCount::from(5u64));
    t.check(five, || "estimate 5 with n = 4, k = 2 decided no".into());
    for (expected, (pi, tau)) in [(true, gap::trivial_yes()), (false, gap::trivial_no())] {
        let est = matching::approx_count(&pi, &tau);
        let got = est.as_ref().map(|e| gap::decide_via_approx(&pi, &tau, e));
        t.check(got.as_ref().is_ok_and(|g| *g == expected), || {
            format!("({pi}, {tau}): approx_count {est:?} decided {got:?}, expected {expected}")
        });
    }
    t
}

fn naive_inversions(tau: &Permutation) -> u64 {
    let v = tau.as_slice();
    let mut c = 0;
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            c += u64::from(v[i] > v[j]);
        }
    }
    c
}

fn inversion_performance(scale: Scale) -> Tally {
    let mut t = Tally::default();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let big = Permutation::random(1_000_000, &mut rng);
    let start = Instant::now();
    let inv = matching::count_inversions(&big);
    let elapsed = start.elapsed();
    t.check(elapsed.as_secs_f64() < 1.0, || format!("n = 10^6 took {elapsed:?}"));
    // A random permutation has about n(n-1)/4 inversions.
    t.check(!inv.is_zero(), || "no inversions in a random permutation".into());
    let samples = match scale {
        Scale::Quick => 50,
        Scale::Full => 300,
    };
    for _ in 0..samples {
        let n = rng.gen_range(0..=1000);
        let tau = Permutation::random(n, &mut rng);
        let fast = matching::count_inversions(&tau);
        let slow = naive_inversions(&tau);
        t.check(fast == slow, || format!("n = {n}: {fast} vs {slow}"));
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scale_parse() {
        assert_eq!("quick".parse::<Scale>().unwrap(), Scale::Quick);
        assert_eq!("full".parse::<Scale>().unwrap(), Scale::Full);
        assert!("medium".parse::<Scale>().is_err());
    }

    #[test]
    fn tally_keeps_first_failure() {
        let mut t = Tally::default();
        t.check(true, || "a".into());
        t.check(false, || "b".into());
        t.check(false, || "c".into());
        assert_eq!((t.cases, t.failures), (3, 2));
        assert_eq!(t.first_failure.as_deref(), Some("b"));
    }

    #[test]
    fn small_suites_pass() {
        for id in [2, 5, 8] {
            let r = run_suite(id, Scale::Quick);
            assert!(r.passed(), "{r}");
        }
    }

    #[test]
    fn quick_psi_sample_is_500() {
        assert_eq!(psi_family(Scale::Quick).len(), 500);
    }
}
