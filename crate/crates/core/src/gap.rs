//! Gap-producing reduction from left-aligned matching to approximate counting.
//!
//! The leftmost pattern entry is inflated by an increasing run of length
//! `alpha * k` and the leftmost text entry by a layered permutation with
//! `alpha * k` layers of length `n^alpha`. A left-aligned copy in the source
//! then yields at least `n^(alpha^2 k)` copies, while without one no copy may
//! touch the initial block of the text.
//!
//! All inequalities with rational exponents are decided exactly by
//! [`compare_powers`].

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::count::{binomial, BigCount};
use crate::error::{Error, Result};
use crate::matching;
use crate::perm::{inflate, layered, Permutation};

pub type Rational = Ratio<i64>;

/// Default cap on the length of a constructed text.
pub const DEFAULT_MAX_TEXT_LEN: usize = 1_000_000;

fn big(v: impl Into<BigUint>) -> BigUint {
    v.into()
}

fn serialize_decimal<S: Serializer>(v: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

fn serialize_ratio<S: Serializer>(v: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

/// Product of powers `base^exponent` with rational exponents.
#[derive(Debug, Clone, Default)]
pub struct PowerProduct {
    factors: Vec<(BigUint, Rational)>,
}

impl PowerProduct {
    pub fn one() -> Self {
        PowerProduct::default()
    }

    pub fn power(base: impl Into<BigUint>, exponent: Rational) -> Self {
        PowerProduct::one().times(base, exponent)
    }

    pub fn times(mut self, base: impl Into<BigUint>, exponent: Rational) -> Self {
        self.factors.push((base.into(), exponent));
        self
    }

    fn is_zero(&self) -> bool {
        self.factors
            .iter()
            .any(|(b, e)| b.is_zero() && e.is_positive())
    }
}

/// Exact comparison of two power products.
///
/// Bases must be positive unless their exponent is nonnegative. Equal bases
/// are merged, the remaining exponents are scaled to integers, and negative
/// ones moved to the other side.
pub fn compare_powers(lhs: &PowerProduct, rhs: &PowerProduct) -> Ordering {
    match (lhs.is_zero(), rhs.is_zero()) {
        (true, true) => return Ordering::Equal,
        (true, false) => return Ordering::Less,
        (false, true) => return Ordering::Greater,
        _ => {}
    }
    let mut net: BTreeMap<BigUint, Rational> = BTreeMap::new();
    for (b, e) in &lhs.factors {
        *net.entry(b.clone()).or_insert_with(Rational::zero) += *e;
    }
    for (b, e) in &rhs.factors {
        *net.entry(b.clone()).or_insert_with(Rational::zero) -= *e;
    }
    net.retain(|b, e| !e.is_zero() && !b.is_one() && !b.is_zero());
    let scale = net.values().fold(1i64, |acc, e| acc.lcm(e.denom()));
    let mut left = BigUint::one();
    let mut right = BigUint::one();
    for (b, e) in &net {
        let m = (e * scale).to_integer();
        let m_abs = m.unsigned_abs().to_u32().expect("exponent fits in u32");
        if m > 0 {
            left *= b.pow(m_abs);
        } else {
            right *= b.pow(m_abs);
        }
    }
    left.cmp(&right)
}

fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

fn int(n: u64) -> Rational {
    Rational::from_integer(n as i64)
}

/// `alpha` and the small-input threshold for one `(epsilon, k, n)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GapParams {
    #[serde(serialize_with = "serialize_ratio")]
    pub epsilon: Rational,
    pub alpha: u64,
    pub k: u64,
    #[serde(serialize_with = "serialize_decimal")]
    pub n: BigUint,
    /// `n < ((alpha + 1) k)^(2 alpha / epsilon)`.
    pub below_threshold: bool,
}

fn check_epsilon(epsilon: Rational) -> Result<()> {
    if epsilon.is_positive() && epsilon < ratio(1, 2) {
        Ok(())
    } else {
        Err(Error::EpsilonOutOfRange(epsilon.to_string()))
    }
}

/// `alpha = ceil(2 / epsilon)`.
pub fn alpha_for(epsilon: Rational) -> Result<u64> {
    check_epsilon(epsilon)?;
    Ok((Rational::from_integer(2) / epsilon).ceil().to_integer() as u64)
}

pub fn gap_params(epsilon: Rational, k: u64, n: &BigUint) -> Result<GapParams> {
    let alpha = alpha_for(epsilon)?;
    if k == 0 || n.is_zero() {
        return Err(Error::InvalidArgument("k and n must be positive".into()));
    }
    let (p, q) = (*epsilon.numer() as u32, *epsilon.denom() as u32);
    // n^p < ((alpha+1) k)^(2 alpha q)
    let exponent = (2 * alpha as u32)
        .checked_mul(q)
        .ok_or_else(|| Error::InvalidArgument("epsilon denominator too large".into()))?;
    let below_threshold = n.pow(p) < big((alpha + 1) * k).pow(exponent);
    Ok(GapParams {
        epsilon,
        alpha,
        k,
        n: n.clone(),
        below_threshold,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    TrivialYes,
    TrivialNo,
    Inflated,
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Branch::TrivialYes => "trivial_yes",
            Branch::TrivialNo => "trivial_no",
            Branch::Inflated => "inflated",
        })
    }
}

/// Output of the reduction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GapInstance {
    pub pattern: Permutation,
    pub text: Permutation,
    pub branch: Branch,
    pub alpha: u64,
    pub k_prime: usize,
    pub n_prime: usize,
    /// `alpha * k` for inflated instances, 0 otherwise.
    pub initial_block_pattern_len: usize,
    /// `alpha * k * n^alpha` for inflated instances, 0 otherwise.
    pub initial_block_text_len: usize,
}

/// The canonical instance with many copies: `1` in `12`.
pub fn trivial_yes() -> (Permutation, Permutation) {
    (Permutation::increasing(1), Permutation::increasing(2))
}

/// The canonical instance with no copies: `12` in `21`.
pub fn trivial_no() -> (Permutation, Permutation) {
    (Permutation::increasing(2), Permutation::decreasing(2))
}

/// Builds gap instances under a cap on the constructed text length.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GapReducer {
    pub max_text_len: usize,
}

impl Default for GapReducer {
    fn default() -> Self {
        GapReducer {
            max_text_len: DEFAULT_MAX_TEXT_LEN,
        }
    }
}

impl GapReducer {
    pub fn with_cap(max_text_len: usize) -> Self {
        GapReducer { max_text_len }
    }

    /// The inflation pair `(pi', tau')` for an explicit `alpha`.
    pub fn core(&self, pi: &Permutation, tau: &Permutation, alpha: u64) -> Result<(Permutation, Permutation)> {
        let inst = self.inflated(pi, tau, alpha)?;
        Ok((inst.pattern, inst.text))
    }

    /// The inflated instance for an explicit `alpha`, regardless of threshold.
    pub fn inflated(&self, pi: &Permutation, tau: &Permutation, alpha: u64) -> Result<GapInstance> {
        if pi.is_empty() {
            return Err(Error::EmptyPattern);
        }
        if tau.is_empty() {
            return Err(Error::EmptyText);
        }
        if alpha == 0 {
            return Err(Error::InvalidArgument("alpha must be positive".into()));
        }
        let (k, n) = (pi.len(), tau.len());
        let alpha32 = u32::try_from(alpha).map_err(|_| Error::InvalidArgument("alpha too large".into()))?;
        let layer = big(n).pow(alpha32);
        let block_len = big(alpha) * big(k) * &layer;
        let n_prime = big(n - 1) + &block_len;
        if n_prime > big(self.max_text_len) {
            return Err(Error::InstanceTooLarge {
                len: n_prime.to_string(),
                cap: self.max_text_len,
            });
        }
        let layer = layer.to_usize().expect("bounded by the cap");
        let layers = alpha as usize * k;

        let mut pattern_blocks = vec![Permutation::increasing(1); k];
        pattern_blocks[0] = Permutation::increasing(layers);
        let mut text_blocks = vec![Permutation::increasing(1); n];
        text_blocks[0] = layered(&vec![layer; layers])?;
        let pattern = inflate(pi, &pattern_blocks)?;
        let text = inflate(tau, &text_blocks)?;
        Ok(GapInstance {
            k_prime: pattern.len(),
            n_prime: text.len(),
            pattern,
            text,
            branch: Branch::Inflated,
            alpha,
            initial_block_pattern_len: layers,
            initial_block_text_len: layers * layer,
        })
    }

    /// Full reduction: trivial instance below the threshold, inflation above it.
    pub fn build(&self, pi: &Permutation, tau: &Permutation, epsilon: Rational) -> Result<GapInstance> {
        if pi.is_empty() {
            return Err(Error::EmptyPattern);
        }
        if tau.is_empty() {
            return Err(Error::EmptyText);
        }
        let params = gap_params(epsilon, pi.len() as u64, &big(tau.len()))?;
        if !params.below_threshold {
            return self.inflated(pi, tau, params.alpha);
        }
        let yes = !matching::count_left_aligned(pi, tau)?.is_zero();
        let ((pattern, text), branch) = if yes {
            (trivial_yes(), Branch::TrivialYes)
        } else {
            (trivial_no(), Branch::TrivialNo)
        };
        Ok(GapInstance {
            k_prime: pattern.len(),
            n_prime: text.len(),
            pattern,
            text,
            branch,
            alpha: params.alpha,
            initial_block_pattern_len: 0,
            initial_block_text_len: 0,
        })
    }
}

pub fn build_core(pi: &Permutation, tau: &Permutation, alpha: u64) -> Result<(Permutation, Permutation)> {
    GapReducer::default().core(pi, tau, alpha)
}

pub fn inflated_instance(pi: &Permutation, tau: &Permutation, alpha: u64) -> Result<GapInstance> {
    GapReducer::default().inflated(pi, tau, alpha)
}

pub fn build_gap_instance(pi: &Permutation, tau: &Permutation, epsilon: Rational) -> Result<GapInstance> {
    GapReducer::default().build(pi, tau, epsilon)
}

/// Copies of `pi'` in `tau'` using at least one entry of the initial block.
pub fn copies_touching_initial_block(gap: &GapInstance) -> Result<BigCount> {
    if gap.branch != Branch::Inflated {
        return Err(Error::NotInflated(gap.branch.to_string()));
    }
    let total = matching::count_copies(&gap.pattern, &gap.text)?;
    let outside = matching::count_copies(&gap.pattern, &gap.text.suffix(gap.initial_block_text_len))?;
    Ok(total - outside)
}

/// Answer of the approximate-counting decision rule: `estimate > n^(k/2)`,
/// evaluated as `estimate^2 > n^k`.
pub fn decide_via_approx(pi: &Permutation, tau: &Permutation, estimate: &BigCount) -> bool {
    let bound = big(tau.len()).pow(pi.len() as u32);
    estimate.value() * estimate.value() > bound
}

/// Which sides of the count gap a count lies on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GapSides {
    /// `count >= n^((1 - epsilon) k)`.
    pub many: bool,
    /// `count <= n^(epsilon k)`.
    pub few: bool,
}

pub fn gap_sides(count: &BigCount, n: usize, k: usize, epsilon: Rational) -> GapSides {
    let c = PowerProduct::power(count.value().clone(), int(1));
    let (n, k) = (n as u64, k as i64);
    let high = PowerProduct::power(n, (Rational::one() - epsilon) * k);
    let low = PowerProduct::power(n, epsilon * k);
    GapSides {
        many: compare_powers(&c, &high) != Ordering::Less,
        few: compare_powers(&c, &low) != Ordering::Greater,
    }
}

/// One line of a bounds report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundCheck {
    pub name: String,
    pub relation: &'static str,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundsReport {
    pub alpha: u64,
    pub k: u64,
    pub k_prime: u64,
    #[serde(serialize_with = "serialize_decimal")]
    pub n: BigUint,
    #[serde(serialize_with = "serialize_decimal")]
    pub n_prime: BigUint,
    pub checks: Vec<BoundCheck>,
}

impl BoundsReport {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }
}

impl fmt::Display for BoundsReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{} {}: {}", if c.holds { "PASS" } else { "FAIL" }, c.relation, c.name)?;
        }
        Ok(())
    }
}

struct Checks(Vec<BoundCheck>);

impl Checks {
    fn add(&mut self, name: &str, relation: &'static str, lhs: &PowerProduct, rhs: &PowerProduct) {
        let ord = compare_powers(lhs, rhs);
        let holds = match relation {
            "<=" => ord != Ordering::Greater,
            "<" => ord == Ordering::Less,
            ">=" => ord != Ordering::Less,
            ">" => ord == Ordering::Greater,
            _ => unreachable!("unknown relation {relation}"),
        };
        self.0.push(BoundCheck {
            name: name.to_string(),
            relation,
            holds,
        });
    }
}

fn sizes(n: &BigUint, k: u64, alpha: u64) -> (u64, BigUint) {
    let k_prime = alpha * k + k - 1;
    let n_prime = n - 1u32 + big(alpha * k) * n.pow(alpha as u32);
    (k_prime, n_prime)
}

/// `n^alpha <= n' <= (alpha + 1) k n^alpha` for any `alpha`.
pub fn structural_bounds(n: &BigUint, k: u64, alpha: u64) -> BoundsReport {
    let (k_prime, n_prime) = sizes(n, k, alpha);
    let a = int(alpha);
    let mut checks = Checks(Vec::new());
    let np = PowerProduct::power(n_prime.clone(), int(1));
    checks.add("n^alpha <= n'", "<=", &PowerProduct::power(n.clone(), a), &np);
    checks.add(
        "n' <= (alpha+1) k n^alpha",
        "<=",
        &np,
        &PowerProduct::power((alpha + 1) * k, int(1)).times(n.clone(), a),
    );
    BoundsReport {
        alpha,
        k,
        k_prime,
        n: n.clone(),
        n_prime,
        checks: checks.0,
    }
}

/// Verifies the size bounds and both count chains above the threshold.
pub fn check_bounds(n: &BigUint, k: u64, epsilon: Rational) -> Result<BoundsReport> {
    let params = gap_params(epsilon, k, n)?;
    if params.below_threshold {
        return Err(Error::ThresholdUnmet(format!(
            "n = {n} is below ((alpha+1) k)^(2 alpha / epsilon) for k = {k}, epsilon = {epsilon}"
        )));
    }
    let alpha = params.alpha;
    let mut report = structural_bounds(n, k, alpha);
    let (k_prime, n_prime) = (report.k_prime, report.n_prime.clone());
    let mut checks = Checks(std::mem::take(&mut report.checks));

    let (a, kk, kp) = (alpha as i64, k as i64, k_prime as i64);
    let eps = epsilon;
    let half_eps = eps / 2;
    let n_ = || n.clone();
    let np_ = || n_prime.clone();
    // n^(eps / (2 alpha))
    let shrink = eps / (2 * a);

    checks.add(
        "(alpha+1) k n^alpha <= n^(eps/(2 alpha)) n^alpha",
        "<=",
        &PowerProduct::power((alpha + 1) * k, int(1)).times(n_(), int(alpha)),
        &PowerProduct::power(n_(), shrink + a),
    );

    // yes side
    let yes0 = PowerProduct::power(n_(), Rational::from_integer(a * a * kk));
    let yes1 = PowerProduct::power(np_(), Rational::from_integer(a * kk)).times(n_(), -shrink * (a * kk));
    let yes2 = PowerProduct::power(n_(), -half_eps * kk).times(np_(), ratio(a * kp, a + 1));
    let yes3 = PowerProduct::power(np_(), -half_eps * kp).times(np_(), (Rational::one() - ratio(1, a + 1)) * kp);
    let yes4 = PowerProduct::power(np_(), -half_eps * kp).times(np_(), (Rational::one() - half_eps) * kp);
    let yes_end = PowerProduct::power(np_(), (Rational::one() - eps) * kp);
    checks.add("n^(alpha^2 k) >= (n' / n^(eps/(2 alpha)))^(alpha k)", ">=", &yes0, &yes1);
    checks.add(
        "(n' / n^(eps/(2 alpha)))^(alpha k) >= n^(-eps k/2) n'^(alpha k'/(alpha+1))",
        ">=",
        &yes1,
        &yes2,
    );
    checks.add(
        "n^(-eps k/2) n'^(alpha k'/(alpha+1)) >= n'^(-eps k'/2) n'^((1 - 1/(alpha+1)) k')",
        ">=",
        &yes2,
        &yes3,
    );
    checks.add(
        "n'^(-eps k'/2) n'^((1 - 1/(alpha+1)) k') >= n'^(-eps k'/2) n'^((1 - eps/2) k')",
        ">=",
        &yes3,
        &yes4,
    );
    checks.add("n^(alpha^2 k) >= n'^((1 - eps) k')", ">=", &yes0, &yes_end);

    // no side
    let binom = binomial(&(n - 1u32), k_prime);
    let no0 = PowerProduct::power(binom, int(1));
    let no1 = PowerProduct::power(n_(), int(k_prime));
    let no2 = PowerProduct::power(np_(), ratio(kp, a));
    let no3 = PowerProduct::power(np_(), eps * kp);
    checks.add("binom(n-1, k') <= n^k'", "<=", &no0, &no1);
    checks.add("n^k' <= n'^(k'/alpha)", "<=", &no1, &no2);
    checks.add("n'^(k'/alpha) < n'^(eps k')", "<", &no2, &no3);

    report.checks = checks.0;
    Ok(report)
}

/// Smallest `n` with `n^p >= ((alpha+1) k)^(2 alpha q)`, i.e. the first text
/// length that takes the inflated branch.
pub fn threshold_n(epsilon: Rational, k: u64) -> Result<BigUint> {
    let alpha = alpha_for(epsilon)?;
    let (p, q) = (*epsilon.numer() as u32, *epsilon.denom() as u32);
    let target = big((alpha + 1) * k).pow(2 * alpha as u32 * q);
    let mut root = num_integer::Roots::nth_root(&target, p);
    if root.pow(p) < target {
        root += 1u32;
    }
    Ok(root)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn epsilon_range() {
        assert!(matches!(alpha_for(r(1, 2)), Err(Error::EpsilonOutOfRange(_))));
        assert!(alpha_for(r(0, 1)).is_err());
        assert!(alpha_for(r(-1, 3)).is_err());
        assert_eq!(alpha_for(r(1, 3)).unwrap(), 6);
        assert_eq!(alpha_for(r(2, 5)).unwrap(), 5);
        assert_eq!(alpha_for(r(49, 100)).unwrap(), 5);
        assert_eq!(alpha_for(r(1, 4)).unwrap(), 8);
    }

    #[test]
    fn params_examples() {
        let params = gap_params(r(2, 5), 2, &big(10u32)).unwrap();
        assert_eq!(params.alpha, 5);
        assert!(params.below_threshold);
        let params = gap_params(r(1, 3), 7, &big(3u32)).unwrap();
        assert_eq!(params.alpha, 6);
        let seven36 = big(7u32).pow(36);
        assert!(!gap_params(r(1, 3), 1, &seven36).unwrap().below_threshold);
        assert!(gap_params(r(1, 3), 1, &(seven36 - 1u32)).unwrap().below_threshold);
    }

    #[test]
    fn threshold_n_values() {
        assert_eq!(threshold_n(r(1, 3), 1).unwrap(), big(7u32).pow(36));
        assert_eq!(threshold_n(r(2, 5), 1).unwrap(), big(6u32).pow(25));
        let t = threshold_n(r(49, 100), 1).unwrap();
        assert!(t.pow(49) >= big(6u32).pow(1000));
        assert!((&t - 1u32).pow(49) < big(6u32).pow(1000));
    }

    #[test]
    fn compare_powers_basics() {
        use Ordering::*;
        let pw = |b: u32, n: i64, d: i64| PowerProduct::power(b, r(n, d));
        assert_eq!(compare_powers(&pw(4, 1, 2), &pw(2, 1, 1)), Equal);
        assert_eq!(compare_powers(&pw(2, 1, 2), &pw(3, 1, 3)), Less); // 8 < 9 after raising to the 6th
        assert_eq!(compare_powers(&pw(5, -1, 1), &pw(1, 1, 1)), Less);
        assert_eq!(compare_powers(&pw(0, 1, 1), &pw(1, 0, 1)), Less);
        assert_eq!(compare_powers(&pw(7, 3, 2).times(7u32, r(-3, 2)), &PowerProduct::one()), Equal);
    }

    #[test]
    fn core_examples() {
        assert_eq!(build_core(&p("21"), &p("21"), 1).unwrap(), (p("231"), p("32541")));
        assert_eq!(build_core(&p("12"), &p("21"), 1).unwrap(), (p("123"), p("32541")));
        assert_eq!(build_core(&p("1"), &p("1"), 1).unwrap(), (p("1"), p("1")));
    }

    #[test]
    fn core_sizes() {
        for (pi, tau, alpha) in [("21", "312", 2u64), ("132", "2413", 1), ("1", "21", 3)] {
            let inst = inflated_instance(&p(pi), &p(tau), alpha).unwrap();
            let (k, n) = (pi.len(), tau.len());
            assert_eq!(inst.k_prime, alpha as usize * k + k - 1);
            assert_eq!(inst.n_prime, n - 1 + alpha as usize * k * n.pow(alpha as u32));
            assert_eq!(inst.initial_block_pattern_len, alpha as usize * k);
            assert_eq!(inst.initial_block_text_len, alpha as usize * k * n.pow(alpha as u32));
        }
    }

    #[test]
    fn safety_cap() {
        let err = GapReducer::with_cap(10).core(&p("21"), &p("312"), 2).unwrap_err();
        assert!(matches!(err, Error::InstanceTooLarge { .. }));
        assert!(err.to_string().contains("instance too large"));
        // 8 * 9^6 > 10^6
        assert!(build_core(&p("1234"), &p("123456789"), 6).is_err());
    }

    #[test]
    fn build_examples() {
        let g = build_gap_instance(&p("213"), &p("24153"), r(1, 3)).unwrap();
        assert_eq!(g.branch, Branch::TrivialYes);
        assert_eq!((g.pattern, g.text), trivial_yes());
        let g = build_gap_instance(&p("12"), &p("21"), r(1, 3)).unwrap();
        assert_eq!(g.branch, Branch::TrivialNo);
        assert!(build_gap_instance(&p("12"), &p("21"), r(1, 2)).is_err());
    }

    #[test]
    fn trivial_instances_sit_strictly_on_their_side() {
        for eps in [r(1, 100), r(1, 3), r(2, 5), r(49, 100)] {
            let (pi, tau) = trivial_yes();
            let c = matching::count_copies(&pi, &tau).unwrap();
            assert_eq!(gap_sides(&c, tau.len(), pi.len(), eps), GapSides { many: true, few: false });
            let (pi, tau) = trivial_no();
            let c = matching::count_copies(&pi, &tau).unwrap();
            assert_eq!(gap_sides(&c, tau.len(), pi.len(), eps), GapSides { many: false, few: true });
        }
    }

    #[test]
    fn touching_examples() {
        let no = inflated_instance(&p("12"), &p("21"), 1).unwrap();
        assert_eq!(copies_touching_initial_block(&no).unwrap(), BigCount::zero());
        let yes = inflated_instance(&p("21"), &p("21"), 1).unwrap();
        assert_eq!(matching::count_copies(&yes.pattern, &yes.text).unwrap(), BigCount::from(4u64));
        assert_eq!(yes.text.suffix(yes.initial_block_text_len), p("1"));
        assert_eq!(copies_touching_initial_block(&yes).unwrap(), BigCount::from(4u64));
        // suffix shorter than the pattern
        let g = inflated_instance(&p("312"), &p("21"), 1).unwrap();
        let total = matching::count_copies(&g.pattern, &g.text).unwrap();
        assert_eq!(copies_touching_initial_block(&g).unwrap(), total);
        let trivial = build_gap_instance(&p("12"), &p("21"), r(1, 3)).unwrap();
        assert!(matches!(copies_touching_initial_block(&trivial), Err(Error::NotInflated(_))));
    }

    #[test]
    fn decide_examples() {
        let pi = p("12");
        let tau = p("1234");
        assert!(!decide_via_approx(&pi, &tau, &BigCount::zero()));
        assert!(decide_via_approx(&pi, &tau, &BigCount::from(5u64)));
        assert!(!decide_via_approx(&pi, &tau, &BigCount::from(4u64)));
    }

    #[test]
    fn structural_example() {
        let rep = structural_bounds(&big(2u32), 2, 1);
        assert_eq!(rep.n_prime, big(5u32));
        assert_eq!(rep.k_prime, 3);
        assert!(rep.all_hold());
        assert_eq!(rep.checks.len(), 2);
    }

    #[test]
    fn bounds_below_threshold_rejected() {
        assert!(matches!(
            check_bounds(&big(1000u32), 2, r(1, 3)),
            Err(Error::ThresholdUnmet(_))
        ));
    }

    #[test]
    fn bounds_at_threshold_one_third() {
        let n = big(7u32).pow(36);
        let rep = check_bounds(&n, 1, r(1, 3)).unwrap();
        assert!(rep.all_hold(), "{rep}");
        assert_eq!(rep.checks.len(), 11);
        assert_eq!(rep.alpha, 6);
        assert_eq!(rep.k_prime, 6);
        // n' = n - 1 + 6 n^6
        assert_eq!(rep.n_prime, &n - 1u32 + big(6u32) * n.pow(6));
        assert_eq!(rep.n_prime.bits(), 609);
    }
}
