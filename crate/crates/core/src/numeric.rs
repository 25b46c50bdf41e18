//! High-precision complex arithmetic with tracked error bounds.
//!
//! Values are fixed-point: a `BallC` at precision `prec` holds mantissas
//! `re`, `im` meaning `(re + i*im) / 2^prec`, together with `err`, an upper
//! bound (in units of `2^-prec`, "ulps") on the complex distance between
//! the stored point and the true value. All error arithmetic is integer
//! arithmetic rounded up, so bounds are rigorous; they are conservative,
//! not tight.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{integer_kth_root, Rat};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BallC {
    pub prec: u32,
    pub re: BigInt,
    pub im: BigInt,
    /// distance bound to the true value, in ulps of 2^-prec
    pub err: BigUint,
}

impl BallC {
    pub fn zero(prec: u32) -> Self {
        BallC { prec, re: BigInt::zero(), im: BigInt::zero(), err: BigUint::zero() }
    }

    pub fn one(prec: u32) -> Self {
        BallC { prec, re: BigInt::one() << prec, im: BigInt::zero(), err: BigUint::zero() }
    }

    pub fn from_rational(a: &Rat, prec: u32) -> Self {
        // truncation toward zero costs at most one ulp
        let mant = (a.numer() << prec) / a.denom();
        BallC { prec, re: mant, im: BigInt::zero(), err: BigUint::one() }
    }

    pub fn add(&self, other: &BallC) -> Self {
        assert_eq!(self.prec, other.prec);
        BallC {
            prec: self.prec,
            re: &self.re + &other.re,
            im: &self.im + &other.im,
            err: &self.err + &other.err,
        }
    }

    pub fn sub(&self, other: &BallC) -> Self {
        assert_eq!(self.prec, other.prec);
        BallC {
            prec: self.prec,
            re: &self.re - &other.re,
            im: &self.im - &other.im,
            err: &self.err + &other.err,
        }
    }

    pub fn neg(&self) -> Self {
        BallC { prec: self.prec, re: -&self.re, im: -&self.im, err: self.err.clone() }
    }

    pub fn conj(&self) -> Self {
        BallC { prec: self.prec, re: self.re.clone(), im: -&self.im, err: self.err.clone() }
    }

    /// Upper bound on the stored point's modulus, in ulps (true value adds err).
    fn point_mag_ulps(&self) -> BigUint {
        // |z| <= |re| + |im|
        (self.re.abs() + self.im.abs()).to_biguint().unwrap()
    }

    /// Rigorous upper bound on |true value|, in ulps.
    pub fn mag_upper_ulps(&self) -> BigUint {
        self.point_mag_ulps() + &self.err + BigUint::one()
    }

    pub fn mul(&self, other: &BallC) -> Self {
        assert_eq!(self.prec, other.prec);
        let prec = self.prec;
        // product mantissas at scale 2^(2 prec), then shift down
        let re2 = &self.re * &other.re - &self.im * &other.im;
        let im2 = &self.re * &other.im + &self.im * &other.re;
        let re = re2 >> prec;
        let im = im2 >> prec;
        // |a b - a' b'| <= |a| err_b + |b| err_a + err_a err_b (ulp scale),
        // plus truncation from the two shifts
        let ma = self.point_mag_ulps();
        let mb = other.point_mag_ulps();
        let cross = (&ma * &other.err + &mb * &self.err + &self.err * &other.err) >> prec;
        let err = cross + BigUint::from(4u32);
        BallC { prec, re, im, err }
    }

    /// Multiply by an exact rational scalar.
    pub fn scale(&self, a: &Rat) -> Self {
        let prec = self.prec;
        let re = (&self.re * a.numer()) / a.denom();
        let im = (&self.im * a.numer()) / a.denom();
        // scalar magnitude, rounded up
        let scale_mag = (a.numer().abs().to_biguint().unwrap() / a.denom().to_biguint().unwrap())
            + BigUint::one();
        let err = &self.err * scale_mag + BigUint::from(2u32);
        BallC { prec, re, im, err }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = BallC::one(self.prec);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Approximate f64 view (diagnostics only; never feeds a decision).
    pub fn to_f64(&self) -> (f64, f64) {
        let scale = 2f64.powi(-(self.prec as i32));
        (
            self.re.to_f64().unwrap_or(f64::INFINITY) * scale,
            self.im.to_f64().unwrap_or(f64::INFINITY) * scale,
        )
    }
}

/// pi at the given precision: (mantissa, error in ulps).
///
/// Machin: pi = 16 atan(1/5) - 4 atan(1/239); alternating tails bound the
/// truncation exactly.
pub fn pi_mantissa(prec: u32) -> (BigInt, BigUint) {
    let guard = 32u32;
    let scale = prec + guard;
    let atan_inv = |x: u64| -> BigInt {
        // atan(1/x) = sum (-1)^k / ((2k+1) x^(2k+1)) at scale bits
        let mut acc = BigInt::zero();
        let x2 = BigInt::from(x) * BigInt::from(x);
        let mut power = (BigInt::one() << scale) / BigInt::from(x);
        let mut k = 0u32;
        loop {
            let term = &power / BigInt::from(2 * k + 1);
            if term.is_zero() {
                break;
            }
            if k % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
            power = power / &x2;
            k += 1;
        }
        acc
    };
    let pi_scaled = atan_inv(5) * 16 - atan_inv(239) * 4;
    let mant = pi_scaled >> guard;
    (mant, BigUint::from(4u32))
}

/// e^{2 pi i j / m} as a ball at the given precision.
pub fn root_of_unity(j: i64, m: u64, prec: u32) -> BallC {
    assert!(m >= 1);
    let jm = j.rem_euclid(m as i64) as u64;
    // reduce to the first quadrant via i-multiplications: j/m = q/4 + t
    let q = (4 * jm) / m;
    let num = 4 * jm - q * m; // t = num / (4m) in [0, 1/4)
    let den = 4 * m;
    let base = cos_sin_two_pi(num, den, prec);
    match q % 4 {
        0 => base,
        1 => BallC { prec, re: -&base.im, im: base.re.clone(), err: base.err.clone() },
        2 => base.neg(),
        3 => BallC { prec, re: base.im.clone(), im: -&base.re, err: base.err.clone() },
        _ => unreachable!(),
    }
}

/// cos(2 pi t) + i sin(2 pi t) for t = num/den in [0, 1/4).
fn cos_sin_two_pi(num: u64, den: u64, prec: u32) -> BallC {
    if num == 0 {
        return BallC::one(prec);
    }
    let (pi_mant, pi_err) = pi_mantissa(prec);
    // theta = 2 pi num / den, in [0, pi/2)
    let theta = (&pi_mant * (2 * num)) / den;
    let theta_err = (&pi_err * BigUint::from(2 * num)) / BigUint::from(den) + BigUint::from(2u32);
    let theta2 = (&theta * &theta) >> prec;
    let mut cos_acc = BigInt::one() << prec;
    let mut sin_acc = theta.clone();
    let mut cos_term = BigInt::one() << prec;
    let mut sin_term = theta.clone();
    let mut k = 0u32;
    let mut steps = BigUint::zero();
    loop {
        cos_term = -((&cos_term * &theta2) >> prec) / BigInt::from(((2 * k + 1) * (2 * k + 2)) as u64);
        sin_term = -((&sin_term * &theta2) >> prec) / BigInt::from(((2 * k + 2) * (2 * k + 3)) as u64);
        cos_acc += &cos_term;
        sin_acc += &sin_term;
        steps += BigUint::one();
        k += 1;
        if cos_term.is_zero() && sin_term.is_zero() {
            break;
        }
    }
    // theta uncertainty enters with derivative magnitude 1 per component;
    // each series step loses a few ulps to truncation; alternating tails
    // are below one ulp once the terms vanish
    let series_err = steps * BigUint::from(6u32) + BigUint::from(4u32);
    let err = BigUint::from(2u32) * theta_err + series_err;
    BallC { prec, re: cos_acc, im: sin_acc, err }
}

/// Rigorous upper bound for |z|^(1/d) given an ulp upper bound on |z|;
/// result again in ulps at `prec`.
pub fn dth_root_mag_upper(mag_ulps: &BigUint, d: u32, prec: u32) -> BigUint {
    // (mag / 2^p)^(1/d) = (mag * 2^{p(d-1)})^(1/d) / 2^p
    let shifted = mag_ulps << (prec as u64 * (d as u64 - 1));
    integer_kth_root(&shifted, d) + BigUint::one()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(b: &BallC, re: f64, im: f64) {
        let (r, i) = b.to_f64();
        assert!((r - re).abs() < 1e-15, "re {r} vs {re}");
        assert!((i - im).abs() < 1e-15, "im {i} vs {im}");
    }

    #[test]
    fn pi_value() {
        let (mant, err) = pi_mantissa(128);
        let approx = mant.to_f64().unwrap() * 2f64.powi(-128);
        assert!((approx - std::f64::consts::PI).abs() < 1e-15);
        assert!(err < BigUint::from(100u32));
    }

    #[test]
    fn roots_of_unity_on_axes() {
        for prec in [96u32, 192] {
            close(&root_of_unity(0, 4, prec), 1.0, 0.0);
            close(&root_of_unity(1, 4, prec), 0.0, 1.0);
            close(&root_of_unity(2, 4, prec), -1.0, 0.0);
            close(&root_of_unity(3, 4, prec), 0.0, -1.0);
        }
    }

    #[test]
    fn roots_of_unity_product_law() {
        let prec = 160;
        // zeta_7^3 * zeta_7^4 = 1
        let a = root_of_unity(3, 7, prec);
        let b = root_of_unity(4, 7, prec);
        let prod = a.mul(&b);
        close(&prod, 1.0, 0.0);
        // the tracked error really bounds the defect
        let diff = prod.sub(&BallC::one(prec));
        let defect = diff.point_mag_ulps();
        assert!(defect <= diff.err, "defect {defect} within tracked error {}", diff.err);
    }

    #[test]
    fn error_bounds_cover_truth() {
        let prec = 128;
        let z = root_of_unity(1, 3, prec);
        let (re, im) = z.to_f64();
        assert!((re - (-0.5)).abs() < 1e-15);
        assert!((im - 0.8660254037844386).abs() < 1e-15);
        // sixth power returns to 1 within tracked error
        let z6 = z.pow(6);
        let diff = z6.sub(&BallC::one(prec));
        assert!(diff.point_mag_ulps() <= diff.err);
    }

    #[test]
    fn magnitude_root_bound() {
        let prec = 96u32;
        // |z| = 32, d = 5 -> bound just above 2
        let mag = BigUint::from(32u64) << prec;
        let bound = dth_root_mag_upper(&mag, 5, prec);
        let two = BigUint::from(2u64) << prec;
        assert!(bound >= two);
        let with_slack = BigUint::from(21u64) << (prec - 3); // 2.625
        assert!(bound <= with_slack, "bound not wildly loose");
    }
}
