//! Exact integer and rational arithmetic primitives: factorization,
//! primality, modular arithmetic, and d-th power tests over Q and R.
//!
//! Rationals are `num_rational::BigRational`, which already enforces the
//! canonical form (lowest terms, positive denominator, zero as 0/1).

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::config::Config;
use crate::error::{Error, Result};

/// Arbitrary-precision rational, the coefficient scalar for base field Q.
pub type Rat = num_rational::BigRational;

/// Exact prime factorization with sign. Primes are strictly increasing and
/// the reconstructed product equals the input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factored {
    pub factors: Vec<(BigUint, u32)>,
    pub sign: i8,
}

impl Factored {
    /// Multiply the factorization back together (sign included).
    pub fn reconstruct(&self) -> BigInt {
        let mut acc = BigUint::one();
        for (p, e) in &self.factors {
            acc *= p.pow(*e);
        }
        let sign = if self.sign < 0 { Sign::Minus } else { Sign::Plus };
        BigInt::from_biguint(sign, acc)
    }

    /// Exponent of `p` in the factorization (0 if absent).
    pub fn exponent_of(&self, p: &BigUint) -> u32 {
        self.factors
            .iter()
            .find(|(q, _)| q == p)
            .map(|(_, e)| *e)
            .unwrap_or(0)
    }

    /// Rational primes appearing, as u64 where they fit.
    pub fn prime_list_u64(&self) -> Option<Vec<u64>> {
        self.factors.iter().map(|(p, _)| p.to_u64()).collect()
    }
}

fn mulmod_u64(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// x^e mod m over u64.
pub fn powmod_u64(mut x: u64, mut e: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    x %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod_u64(acc, x, m);
        }
        x = mulmod_u64(x, x, m);
        e >>= 1;
    }
    acc
}

fn miller_rabin_u64(n: u64, witness: u64) -> bool {
    // returns true if n passes (is a probable prime) for this witness
    let a = witness % n;
    if a == 0 {
        return true;
    }
    let d = n - 1;
    let s = d.trailing_zeros();
    let d = d >> s;
    let mut x = powmod_u64(a, d, n);
    if x == 1 || x == n - 1 {
        return true;
    }
    for _ in 1..s {
        x = mulmod_u64(x, x, n);
        if x == n - 1 {
            return true;
        }
    }
    false
}

/// Deterministic primality for n < 2^64 (fixed Miller-Rabin witness set).
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    // This witness set is deterministic for all n < 3.3 * 10^24.
    [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]
        .iter()
        .all(|&w| miller_rabin_u64(n, w))
}

/// Primality test: deterministic below 2^64, Miller-Rabin with 64 fixed
/// witnesses above (error probability <= 4^-64 per composite).
pub fn is_prime(n: &BigUint) -> bool {
    if let Some(n64) = n.to_u64() {
        return is_prime_u64(n64);
    }
    let two = BigUint::from(2u32);
    if n.is_even() {
        return false;
    }
    let n_minus_1 = n - 1u32;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    // Fixed witness schedule keeps the whole crate deterministic.
    'witness: for i in 0u64..64 {
        let w = BigUint::from(2u64 + i * 3 + (i * i) % 101);
        let mut x = w.modpow(&d, n);
        if x.is_one() || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&two, n);
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pollard_brent_u128(n: u128, cfg: &Config) -> Option<u128> {
    // Brent's cycle variant of Pollard rho; n must be odd composite, not a
    // perfect power of a small prime already handled by trial division.
    let mulmod = |a: u128, b: u128, m: u128| -> u128 {
        // schoolbook 128-bit mulmod via splitting; m < 2^126 in practice
        if let (Some(a64), Some(b64), Some(m64)) =
            (u64::try_from(a).ok(), u64::try_from(b).ok(), u64::try_from(m).ok())
        {
            return mulmod_u64(a64, b64, m64) as u128;
        }
        // fall back to a shift-add ladder
        let mut result = 0u128;
        let mut a = a % m;
        let mut b = b % m;
        while b > 0 {
            if b & 1 == 1 {
                result = (result + a) % m;
            }
            a = (a << 1) % m;
            b >>= 1;
        }
        result
    };
    let mut c = 1u128;
    loop {
        let f = |x: u128| (mulmod(x, x, n) + c) % n;
        let mut x = 2u128;
        let mut y = 2u128;
        let mut d = 1u128;
        let mut count = 0u64;
        let mut saved_x = x;
        while d == 1 {
            // Brent: advance tortoise by powers of two
            saved_x = y;
            let limit = 1u64 << (64 - (count + 1).leading_zeros()).min(20);
            let mut q = 1u128;
            let mut steps = 0u64;
            x = y;
            while steps < limit && d == 1 {
                y = f(y);
                let diff = if x > y { x - y } else { y - x };
                q = mulmod(q, diff.max(1), n);
                steps += 1;
                count += 1;
                if steps % 64 == 0 {
                    d = gcd_u128(q, n);
                }
                if count > cfg.rho_iteration_cap {
                    return None;
                }
            }
            if d == 1 {
                d = gcd_u128(q, n);
            }
        }
        if d != n {
            return Some(d);
        }
        // backtrack one by one
        let mut y2 = saved_x;
        loop {
            y2 = f(y2);
            let diff = if x > y2 { x - y2 } else { y2 - x };
            let d = gcd_u128(diff.max(1), n);
            if d > 1 {
                if d != n {
                    return Some(d);
                }
                break;
            }
        }
        c += 1;
        if c > 20 {
            return None;
        }
    }
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = b;
        b = a % b;
        a = t;
    }
    a
}

fn factor_u128_into(n: u128, out: &mut Vec<u128>, cfg: &Config) -> Result<()> {
    if n == 1 {
        return Ok(());
    }
    if n < (1 << 64) && is_prime_u64(n as u64) || n >= (1 << 64) && is_prime(&BigUint::from(n)) {
        out.push(n);
        return Ok(());
    }
    // perfect power check keeps rho away from p^k inputs it handles poorly
    for k in 2..=127u32 {
        if let Some(r) = integer_kth_root_u128(n, k) {
            if r.checked_pow(k).map(|v| v == n).unwrap_or(false) {
                for _ in 0..k {
                    factor_u128_into(r, out, cfg)?;
                }
                return Ok(());
            }
        }
        if (1u128 << (127 / k)) < 2 {
            break;
        }
    }
    let d = pollard_brent_u128(n, cfg)
        .ok_or_else(|| Error::BudgetExceeded(format!("pollard rho gave up on {n}")))?;
    factor_u128_into(d, out, cfg)?;
    factor_u128_into(n / d, out, cfg)
}

fn integer_kth_root_u128(n: u128, k: u32) -> Option<u128> {
    if k == 0 {
        return None;
    }
    if n <= 1 || k == 1 {
        return Some(n);
    }
    let mut lo = 1u128;
    let mut hi = 1u128 << (128 / k + 1).min(127);
    while lo < hi {
        let mid = lo + (hi - lo + 1) / 2;
        match mid.checked_pow(k) {
            Some(v) if v <= n => lo = mid,
            _ => hi = mid - 1,
        }
    }
    Some(lo)
}

/// Floor of the k-th root of a nonnegative big integer (Newton descent).
pub fn integer_kth_root(n: &BigUint, k: u32) -> BigUint {
    if n.is_zero() || n.is_one() || k == 1 {
        return n.clone();
    }
    let bits = n.bits();
    let mut x = BigUint::one() << (bits / k as u64 + 1);
    loop {
        // x_{next} = ((k-1)x + n / x^{k-1}) / k
        let xk1 = x.pow(k - 1);
        let next = (&x * (k - 1) + n / &xk1) / k;
        if next >= x {
            break;
        }
        x = next;
    }
    while x.pow(k) > *n {
        x -= 1u32;
    }
    x
}

/// Factor a nonzero integer into primes (trial division to the configured
/// bound, then Pollard rho with Brent cycle detection).
pub fn factor_with(n: &BigInt, cfg: &Config) -> Result<Factored> {
    if n.is_zero() {
        return Err(Error::InvalidInput("factor(0)".into()));
    }
    let sign = if n.is_negative() { -1 } else { 1 };
    let mut m = n.abs().to_biguint().unwrap();
    let mut factors: Vec<(BigUint, u32)> = Vec::new();
    let push = |p: BigUint, factors: &mut Vec<(BigUint, u32)>| {
        if let Some(last) = factors.last_mut() {
            if last.0 == p {
                last.1 += 1;
                return;
            }
        }
        factors.push((p, 1));
    };
    // trial division with a 2,3,5 wheel
    let mut d = 2u64;
    let wheel = [4u64, 2, 4, 2, 4, 6, 2, 6];
    let mut wi = 0usize;
    while d <= cfg.trial_division_bound {
        let bd = BigUint::from(d);
        if &bd * &bd > m {
            break;
        }
        while (&m % &bd).is_zero() {
            m /= &bd;
            push(bd.clone(), &mut factors);
        }
        d = match d {
            2 => 3,
            3 => 5,
            5 => 7,
            _ => {
                let next = d + wheel[wi];
                wi = (wi + 1) % wheel.len();
                next
            }
        };
    }
    if !m.is_one() {
        if is_prime(&m) {
            push(m, &mut factors);
        } else if let Some(m128) = m.to_u128() {
            let mut parts = Vec::new();
            factor_u128_into(m128, &mut parts, cfg)?;
            parts.sort_unstable();
            for p in parts {
                push(BigUint::from(p), &mut factors);
            }
        } else {
            return Err(Error::BudgetExceeded(format!(
                "cofactor {m} exceeds the configured factorization methods"
            )));
        }
    }
    factors.sort_by(|a, b| a.0.cmp(&b.0));
    // merge duplicates from out-of-order pushes
    let mut merged: Vec<(BigUint, u32)> = Vec::with_capacity(factors.len());
    for (p, e) in factors {
        if let Some(last) = merged.last_mut() {
            if last.0 == p {
                last.1 += e;
                continue;
            }
        }
        merged.push((p, e));
    }
    Ok(Factored { factors: merged, sign })
}

/// `factor_with` under the default budget.
pub fn factor(n: &BigInt) -> Result<Factored> {
    factor_with(n, &Config::default())
}

/// Euler totient (u64 domain is all the conductor arithmetic needs).
pub fn euler_phi(n: u64) -> u64 {
    assert!(n >= 1, "euler_phi needs a positive argument");
    let mut result = n;
    let mut m = n;
    let mut p = 2u64;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

/// Prime factors of a u64, ascending, without multiplicity.
pub fn prime_factors_u64(n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut m = n;
    let mut p = 2u64;
    while p * p <= m {
        if m % p == 0 {
            out.push(p);
            while m % p == 0 {
                m /= p;
            }
        }
        p += 1;
    }
    if m > 1 {
        out.push(m);
    }
    out
}

/// (prime, exponent) pairs of a u64, ascending.
pub fn prime_power_factors_u64(n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut m = n;
    let mut p = 2u64;
    while p * p <= m {
        if m % p == 0 {
            let mut e = 0u32;
            while m % p == 0 {
                m /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if m > 1 {
        out.push((m, 1));
    }
    out
}

/// Least e >= 1 with a^e = 1 mod n.
pub fn multiplicative_order(a: i64, n: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::InvalidInput("multiplicative_order mod 0".into()));
    }
    let a_red = a.rem_euclid(n as i64) as u64;
    if n == 1 {
        return Ok(1);
    }
    if gcd_u128(a_red as u128, n as u128) != 1 {
        return Err(Error::NotAUnit { a, n });
    }
    let phi = euler_phi(n);
    let mut order = phi;
    for (p, _) in prime_power_factors_u64(phi) {
        while order % p == 0 && powmod_u64(a_red, order / p, n) == 1 {
            order /= p;
        }
    }
    Ok(order)
}

/// Does a^d have a d-th root in R? Always for odd d; positivity for even d.
pub fn is_dth_power_real(a: &Rat, d: u32) -> bool {
    assert!(!a.is_zero());
    d % 2 == 1 || a.is_positive()
}

/// Global d-th power test over Q: returns the root when one exists.
///
/// Decided via factorization (all exponents divisible by d, sign
/// compatible), not floating root extraction.
pub fn is_dth_power_rational_with(a: &Rat, d: u32, cfg: &Config) -> Result<Option<Rat>> {
    assert!(d >= 1);
    if a.is_zero() {
        return Err(Error::InvalidInput("is_dth_power_rational(0)".into()));
    }
    if d == 1 {
        return Ok(Some(a.clone()));
    }
    if a.is_negative() && d % 2 == 0 {
        return Ok(None);
    }
    let num = factor_with(a.numer(), cfg)?;
    let den = factor_with(a.denom(), cfg)?;
    let mut root_num = BigInt::one();
    for (p, e) in &num.factors {
        if e % d != 0 {
            return Ok(None);
        }
        root_num *= BigInt::from(p.pow(e / d));
    }
    let mut root_den = BigInt::one();
    for (p, e) in &den.factors {
        if e % d != 0 {
            return Ok(None);
        }
        root_den *= BigInt::from(p.pow(e / d));
    }
    if a.is_negative() {
        root_num = -root_num;
    }
    Ok(Some(Rat::new(root_num, root_den)))
}

/// `is_dth_power_rational_with` under the default budget.
pub fn is_dth_power_rational(a: &Rat, d: u32) -> Result<Option<Rat>> {
    is_dth_power_rational_with(a, d, &Config::default())
}

/// v_ell of a rational (negative for denominators).
pub fn valuation_rational(a: &Rat, ell: u64) -> i64 {
    assert!(!a.is_zero());
    let big = BigInt::from(ell);
    let mut v = 0i64;
    let mut n = a.numer().clone();
    while (&n % &big).is_zero() {
        n /= &big;
        v += 1;
    }
    let mut m = a.denom().clone();
    while (&m % &big).is_zero() {
        m /= &big;
        v -= 1;
    }
    v
}

/// Extended gcd over i128: returns (g, x, y) with ax + by = g.
pub fn extended_gcd_i128(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = extended_gcd_i128(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

/// Inverse of a mod n (n >= 2, gcd(a, n) = 1).
pub fn invmod_u64(a: u64, n: u64) -> Option<u64> {
    let (g, x, _) = extended_gcd_i128(a as i128, n as i128);
    if g != 1 {
        return None;
    }
    Some(x.rem_euclid(n as i128) as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::FromPrimitive;

    fn rat(n: i64, d: i64) -> Rat {
        Rat::new(BigInt::from(n), BigInt::from(d))
    }

    /// Independent oracle: trial division to sqrt(n).
    fn trial_division_is_prime(n: u64) -> bool {
        if n < 2 {
            return false;
        }
        let mut d = 2u64;
        while d * d <= n {
            if n % d == 0 {
                return false;
            }
            d += 1;
        }
        true
    }

    #[test]
    fn factor_small_values() {
        let f = factor(&BigInt::from(21)).unwrap();
        assert_eq!(f.sign, 1);
        assert_eq!(
            f.factors,
            vec![(BigUint::from(3u32), 1), (BigUint::from(7u32), 1)]
        );

        let f = factor(&BigInt::from(1)).unwrap();
        assert!(f.factors.is_empty());
        assert_eq!(f.sign, 1);

        // 883: trial division oracle confirms primality
        assert!(trial_division_is_prime(883));
        let f = factor(&BigInt::from(883)).unwrap();
        assert_eq!(f.factors, vec![(BigUint::from(883u32), 1)]);
    }

    #[test]
    fn factor_round_trip() {
        for n in [-360i64, -1, 2, 97, 1024, 2 * 3 * 5 * 7 * 11 * 13, 599 * 601] {
            let f = factor(&BigInt::from(n)).unwrap();
            assert_eq!(f.reconstruct(), BigInt::from(n), "round trip for {n}");
            for w in f.factors.windows(2) {
                assert!(w[0].0 < w[1].0, "primes strictly increasing");
            }
        }
    }

    #[test]
    fn factor_semiprime_past_trial_bound() {
        // both factors above the 10^6 trial bound, forcing the rho ladder
        let p = BigInt::from(1_000_003u64);
        let q = BigInt::from(1_000_033u64);
        let f = factor(&(&p * &q)).unwrap();
        assert_eq!(f.factors.len(), 2);
        assert_eq!(f.reconstruct(), p * q);
    }

    #[test]
    fn primality_matches_trial_division() {
        for n in 0..2000u64 {
            assert_eq!(is_prime_u64(n), trial_division_is_prime(n), "n = {n}");
        }
        assert!(is_prime_u64(2));
        assert!(!is_prime_u64(1));
        assert!(is_prime_u64(883));
        assert!(is_prime_u64(18446744073709551557)); // largest u64 prime
    }

    #[test]
    fn euler_phi_values() {
        // direct unit-count oracle
        let phi_naive = |n: u64| (1..=n).filter(|k| gcd_u128(*k as u128, n as u128) == 1).count() as u64;
        assert_eq!(euler_phi(1), 1);
        assert_eq!(euler_phi(21), 12);
        assert_eq!(euler_phi(21), phi_naive(21));
        assert_eq!(euler_phi(8), 4);
        for n in 1..200 {
            assert_eq!(euler_phi(n), phi_naive(n), "phi({n})");
        }
    }

    #[test]
    fn euler_phi_multiplicative_on_coprime() {
        for a in 1..40u64 {
            for b in 1..40u64 {
                if gcd_u128(a as u128, b as u128) == 1 {
                    assert_eq!(euler_phi(a * b), euler_phi(a) * euler_phi(b));
                }
            }
        }
    }

    #[test]
    fn multiplicative_order_values() {
        assert_eq!(multiplicative_order(1, 5).unwrap(), 1);
        // 2, 4, 1 cycle mod 7
        assert_eq!(multiplicative_order(2, 7).unwrap(), 3);
        // powers of 2 mod 9: 2 4 8 7 5 1
        assert_eq!(multiplicative_order(2, 9).unwrap(), 6);
        assert!(matches!(
            multiplicative_order(6, 9),
            Err(Error::NotAUnit { .. })
        ));
        // oracle: brute-force cycle length
        for n in 2..60u64 {
            for a in 1..n as i64 {
                if gcd_u128(a as u128, n as u128) != 1 {
                    continue;
                }
                let mut x = 1u64;
                let mut e = 0u64;
                loop {
                    x = mulmod_u64(x, a as u64, n);
                    e += 1;
                    if x == 1 {
                        break;
                    }
                }
                assert_eq!(multiplicative_order(a, n).unwrap(), e);
            }
        }
    }

    #[test]
    fn dth_power_rational_examples() {
        // -2^2 = (1+i)^4 is not a fourth power in Q
        assert_eq!(is_dth_power_rational(&rat(-4, 1), 4).unwrap(), None);
        assert_eq!(
            is_dth_power_rational(&rat(16, 1), 4).unwrap(),
            Some(rat(2, 1))
        );
        // 289 = 17^2, exponent not divisible by 4
        assert_eq!(is_dth_power_rational(&rat(289, 1), 4).unwrap(), None);
        // negative odd roots exist
        assert_eq!(
            is_dth_power_rational(&rat(-27, 8), 3).unwrap(),
            Some(rat(-3, 2))
        );
        // Wang: 16 is not an 8th power in Q
        assert_eq!(is_dth_power_rational(&rat(16, 1), 8).unwrap(), None);
    }

    #[test]
    fn dth_power_rational_round_trip_and_multiplicativity() {
        let cases: Vec<(i64, i64)> = vec![(2, 1), (-3, 1), (5, 2), (-7, 3), (10, 9)];
        for d in 1..=12u32 {
            for (n, den) in &cases {
                let a = rat(*n, *den);
                let ad = Rat::from_f64(0.0).unwrap() + num_traits::pow::pow(a.clone(), d as usize);
                if a.is_negative() && d % 2 == 0 {
                    continue;
                }
                let r = is_dth_power_rational(&ad, d).unwrap().expect("a^d is a d-th power");
                assert_eq!(num_traits::pow::pow(r, d as usize), ad);
            }
        }
        // multiplicativity
        let a = rat(8, 27);
        let b = rat(-64, 125);
        let ra = is_dth_power_rational(&a, 3).unwrap();
        let rb = is_dth_power_rational(&b, 3).unwrap();
        assert!(ra.is_some() && rb.is_some());
        assert!(is_dth_power_rational(&(a * b), 3).unwrap().is_some());
    }

    #[test]
    fn dth_power_real_cases() {
        assert!(is_dth_power_real(&rat(-7, 1), 3));
        assert!(!is_dth_power_real(&rat(-4, 1), 4));
        assert!(is_dth_power_real(&rat(1, 2), 8));
    }

    #[test]
    fn integer_roots() {
        assert_eq!(integer_kth_root(&BigUint::from(883u32), 2), BigUint::from(29u32));
        assert_eq!(integer_kth_root(&BigUint::from(1u32 << 30), 5), BigUint::from(64u32));
        let n = BigUint::from(10u32).pow(40);
        let r = integer_kth_root(&n, 7);
        assert!(r.pow(7) <= n && (&r + 1u32).pow(7) > n);
    }
}
