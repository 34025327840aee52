//! Arbitrary-precision number theory: Miller–Rabin primality, prime search,
//! modular solving and the two sequence-hypothesis validators.

use num_bigint::{BigUint, RandBigInt};
use num_traits::{One, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::tree::PrimeSequence;

/// Miller–Rabin rounds used when no caller preference exists.
pub const DEFAULT_MR_ROUNDS: u32 = 40;

/// Decimal-digit ceiling for hypothesis powers before the validator refuses
/// to expand them.
pub const DEFAULT_DIGIT_BUDGET: u64 = 1_000_000;

const SMALL_PRIMES: [u64; 25] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
];

/// Bases that make Miller–Rabin deterministic for all n < 2^64.
const U64_WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

fn strong_probable_prime(n: &BigUint, base: &BigUint) -> bool {
    // n odd, >= 3; base reduced into [2, n-2] by the caller.
    let one = BigUint::one();
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;

    let mut x = base.modpow(&d, n);
    if x.is_one() || x == n_minus_1 {
        return true;
    }
    for _ in 1..s {
        x = (&x * &x) % n;
        if x == n_minus_1 {
            return true;
        }
        if x.is_one() {
            return false;
        }
    }
    false
}

fn seed_from(n: &BigUint, rounds: u32) -> u64 {
    let mut h: u64 = 0x9e37_79b9_7f4a_7c15 ^ u64::from(rounds);
    for byte in n.to_bytes_le() {
        h = h.wrapping_mul(0x100_0000_01b3).wrapping_add(u64::from(byte));
    }
    h
}

/// Primality test. Deterministic (exact) for n < 2^64 through a fixed
/// witness set; Miller–Rabin with `rounds` pseudorandom witnesses above.
/// A composite answer is always correct.
pub fn is_probable_prime(n: &BigUint, rounds: u32) -> bool {
    if n < &BigUint::from(2u32) {
        return false;
    }
    for p in SMALL_PRIMES {
        let p = BigUint::from(p);
        if *n == p {
            return true;
        }
        if (n % &p).is_zero() {
            return false;
        }
    }
    if n.bits() <= 64 {
        let one = BigUint::one();
        return U64_WITNESSES.iter().all(|&w| {
            let base = BigUint::from(w) % n;
            base <= one || strong_probable_prime(n, &base)
        });
    }
    // Witness choice is seeded from n itself so that repeated runs agree.
    let mut rng = ChaCha8Rng::seed_from_u64(seed_from(n, rounds));
    let low = BigUint::from(2u32);
    let high = n - BigUint::one();
    (0..rounds.max(1)).all(|_| {
        let base = rng.gen_biguint_range(&low, &high);
        strong_probable_prime(n, &base)
    })
}

/// Smallest probable prime strictly greater than `n`.
pub fn next_prime(n: &BigUint) -> BigUint {
    let two = BigUint::from(2u32);
    if n < &two {
        return two;
    }
    let mut candidate = n + BigUint::one();
    if (&candidate % &two).is_zero() {
        candidate += BigUint::one();
    }
    while !is_probable_prime(&candidate, DEFAULT_MR_ROUNDS) {
        candidate += &two;
    }
    candidate
}

/// Per-entry findings of [`validate_sequence`].
#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct EntryReport {
    pub index: usize,
    #[serde(serialize_with = "crate::serde_util::biguint_str")]
    pub value: BigUint,
    pub prime: bool,
    pub at_least_seven: bool,
    pub duplicate_of: Option<usize>,
}

impl EntryReport {
    pub fn ok(&self) -> bool {
        self.prime && self.at_least_seven && self.duplicate_of.is_none()
    }
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SequenceValidation {
    pub entries: Vec<EntryReport>,
    pub pass: bool,
}

/// Check every entry for primality, the l >= 7 bound and pairwise
/// distinctness. Failures are reported, never raised.
pub fn validate_sequence(values: &[BigUint]) -> SequenceValidation {
    let seven = BigUint::from(7u32);
    let mut entries = Vec::with_capacity(values.len());
    for (index, value) in values.iter().enumerate() {
        let duplicate_of = values[..index].iter().position(|prev| prev == value);
        entries.push(EntryReport {
            index,
            value: value.clone(),
            prime: is_probable_prime(value, DEFAULT_MR_ROUNDS),
            at_least_seven: *value >= seven,
            duplicate_of,
        });
    }
    let pass = !entries.is_empty() && entries.iter().all(EntryReport::ok);
    SequenceValidation { entries, pass }
}

/// Outcome of one hypothesis check. `satisfied` is true exactly when
/// `lhs >= rhs` held for the two integers actually compared; when the check
/// was not evaluable the note says so and both sides are zero.
#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct HypothesisReport {
    pub index: usize,
    pub satisfied: bool,
    #[serde(serialize_with = "crate::serde_util::biguint_str")]
    pub lhs: BigUint,
    #[serde(serialize_with = "crate::serde_util::biguint_str")]
    pub rhs: BigUint,
    pub note: String,
}

fn pow_digit_estimate(base: &BigUint, exp: &BigUint) -> Option<u64> {
    let digits = base.to_f64()?.log10();
    let exp = exp.to_f64()?;
    let estimate = digits * exp;
    if estimate.is_finite() {
        Some(estimate.ceil() as u64 + 1)
    } else {
        None
    }
}

fn pow_big(base: &BigUint, exp: &BigUint) -> BigUint {
    // Exponents surviving the digit budget fit comfortably in u64.
    let mut result = BigUint::one();
    let mut sq = base.clone();
    let mut e = exp.clone();
    let two = BigUint::from(2u32);
    while !e.is_zero() {
        if (&e % &two).is_one() {
            result *= &sq;
        }
        e >>= 1;
        if !e.is_zero() {
            sq = &sq * &sq;
        }
    }
    result
}

/// Growth-hypothesis inequality with the exponent supplied as the exact
/// rational `x_num / x_den`. Satisfied means
/// `(l - 1)^x_den * 25^x_num >= 68^x_num`, i.e. `l - 1 >= 2.72^(x_num/x_den)`
/// with e replaced by its rational upper bound 68/25; a sufficient condition.
pub fn check_growth_inequality(
    l: &BigUint,
    index: usize,
    x_num: &BigUint,
    x_den: &BigUint,
    digit_budget: u64,
) -> HypothesisReport {
    let l_minus_1 = l - BigUint::one();
    let est = pow_digit_estimate(&BigUint::from(68u32), x_num)
        .and_then(|a| pow_digit_estimate(&l_minus_1.clone().max(BigUint::from(2u32)), x_den).map(|b| a.max(b)));
    match est {
        Some(digits) if digits <= digit_budget => {
            let lhs = pow_big(&l_minus_1, x_den) * pow_big(&BigUint::from(25u32), x_num);
            let rhs = pow_big(&BigUint::from(68u32), x_num);
            let satisfied = lhs >= rhs;
            HypothesisReport {
                index,
                satisfied,
                lhs,
                rhs,
                note: format!(
                    "compared (l-1)^{} * 25^{} against 68^{} (exponent X = {}/{})",
                    x_den, x_num, x_num, x_num, x_den
                ),
            }
        }
        _ => HypothesisReport {
            index,
            satisfied: false,
            lhs: BigUint::zero(),
            rhs: BigUint::zero(),
            note: format!(
                "not evaluable: power would exceed the digit budget of {digit_budget} decimal digits"
            ),
        },
    }
}

/// Validate `log(l_i - 1) >= 5 * (47/5)^i * m_i` at level `i`, encoded
/// conservatively as `l_i - 1 >= 2.72^X` with `X = 47^i * m_i / 5^(i-1)`
/// evaluated exactly.
pub fn check_growth_hypothesis(
    seq: &PrimeSequence,
    i: usize,
    digit_budget: u64,
) -> Result<HypothesisReport> {
    let l = seq.prime_at(i)?;
    let m_i = seq.level_size(i)?;
    // X = 5 * (47/5)^i * m_i = 47^i * m_i / 5^(i-1)
    let x_num = BigUint::from(5u32) * pow_big(&BigUint::from(47u32), &BigUint::from(i)) * m_i;
    let x_den = pow_big(&BigUint::from(5u32), &BigUint::from(i));
    Ok(check_growth_inequality(&l, i, &x_num, &x_den, digit_budget))
}

/// Validate `l_i >= (25 * l_{i-1})^(3 * m_i)` at level `i >= 1` with exact
/// integers, refusing to expand past the digit budget.
pub fn check_free_subgroup_hypothesis(
    seq: &PrimeSequence,
    i: usize,
    digit_budget: u64,
) -> Result<HypothesisReport> {
    if i == 0 {
        return Err(Error::EnumerationTooLarge(
            "free-subgroup hypothesis starts at level 1".into(),
        ));
    }
    let l_i = seq.prime_at(i)?;
    let l_prev = seq.prime_at(i - 1)?;
    let m_i = seq.level_size(i)?;
    let base = BigUint::from(25u32) * &l_prev;
    let exp = BigUint::from(3u32) * &m_i;
    match pow_digit_estimate(&base, &exp) {
        Some(digits) if digits <= digit_budget => {
            let rhs = pow_big(&base, &exp);
            let satisfied = l_i >= rhs;
            Ok(HypothesisReport {
                index: i,
                satisfied,
                lhs: l_i,
                rhs,
                note: format!("compared l_{i} against (25 * l_{})^(3 * {})", i - 1, m_i),
            })
        }
        _ => Ok(HypothesisReport {
            index: i,
            satisfied: false,
            lhs: BigUint::zero(),
            rhs: BigUint::zero(),
            note: format!(
                "not evaluable: (25 * l_{})^(3 * m_{i}) would exceed the digit budget of {digit_budget} decimal digits",
                i - 1
            ),
        }),
    }
}

/// Solve `m * t = q (mod l)` for the unique `m` in [1, l-1]. `l` must be
/// prime; `t` must be invertible and `q` nonzero mod `l`.
pub fn mod_solve(t: &BigUint, q: &BigUint, l: &BigUint) -> Result<BigUint> {
    let t = t % l;
    let q = q % l;
    if t.is_zero() {
        return Err(Error::NonInvertible);
    }
    if q.is_zero() {
        return Err(Error::NoShiftRequested);
    }
    let t_inv = t.modpow(&(l - BigUint::from(2u32)), l);
    Ok((q * t_inv) % l)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    #[test]
    fn small_prime_answers() {
        assert!(is_probable_prime(&big(11), 1));
        assert!(!is_probable_prime(&big(91), 1)); // 7 * 13
        assert!(!is_probable_prime(&big(0), 1));
        assert!(!is_probable_prime(&big(1), 1));
        assert!(is_probable_prime(&big(2), 1));
    }

    #[test]
    fn primality_matches_trial_division_below_a_million() {
        let limit = 1_000_000usize;
        let mut sieve = vec![true; limit];
        sieve[0] = false;
        sieve[1] = false;
        for i in 2..limit {
            if sieve[i] {
                for j in (i * i..limit).step_by(i) {
                    sieve[j] = false;
                }
            }
        }
        for n in 0..limit {
            assert_eq!(
                is_probable_prime(&big(n as u64), 2),
                sieve[n],
                "disagreement at {n}"
            );
        }
    }

    #[test]
    fn next_prime_examples() {
        assert_eq!(next_prime(&big(7)), big(11));
        assert_eq!(next_prime(&big(0)), big(2));
        assert_eq!(next_prime(&big(13)), big(17));
        let p = next_prime(&BigUint::from(175u32).pow(21));
        assert!(p > BigUint::from(175u32).pow(21));
        assert!(is_probable_prime(&p, DEFAULT_MR_ROUNDS));
    }

    #[test]
    fn sequence_validation() {
        assert!(validate_sequence(&[big(7), big(11), big(13)]).pass);
        let dup = validate_sequence(&[big(7), big(7), big(11)]);
        assert!(!dup.pass);
        assert_eq!(dup.entries[1].duplicate_of, Some(0));
        let low = validate_sequence(&[big(5), big(11)]);
        assert!(!low.pass);
        assert!(!low.entries[0].at_least_seven);
        assert!(!validate_sequence(&[]).pass);
    }

    #[test]
    fn mod_solve_examples() {
        assert_eq!(mod_solve(&big(2), &big(3), &big(7)).unwrap(), big(5));
        assert_eq!(mod_solve(&big(1), &big(4), &big(11)).unwrap(), big(4));
        assert_eq!(mod_solve(&big(0), &big(1), &big(7)), Err(Error::NonInvertible));
        assert_eq!(mod_solve(&big(3), &big(0), &big(7)), Err(Error::NoShiftRequested));
    }

    #[test]
    fn mod_solve_random_triples() {
        use rand::Rng;
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let primes = [7u64, 11, 13, 101, 104729];
        for _ in 0..1000 {
            let l = big(primes[rng.gen_range(0..primes.len())]);
            let t = rng.gen_biguint_range(&BigUint::one(), &l);
            let q = rng.gen_biguint_range(&BigUint::one(), &l);
            let m = mod_solve(&t, &q, &l).unwrap();
            assert!(m >= BigUint::one() && m < l);
            assert_eq!((&m * &t) % &l, q);
        }
    }

    #[test]
    fn growth_hypothesis_degenerate_exponent_is_satisfied() {
        let report = check_growth_inequality(
            &big(7),
            0,
            &BigUint::zero(),
            &BigUint::one(),
            DEFAULT_DIGIT_BUDGET,
        );
        assert!(report.satisfied);
        assert_eq!(report.lhs, BigUint::one());
        assert_eq!(report.rhs, BigUint::one());
    }
}
