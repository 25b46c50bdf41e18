//! Exact arithmetic in cyclotomic fields Q(mu_m): element representation,
//! containments, extension degrees, complex embeddings, prime splitting,
//! and the global d-th power membership test.
//!
//! Conductors are always canonical (m != 2 mod 4; m = 1 is Q). Elements are
//! rational-coefficient vectors on the power basis 1, zeta, ...,
//! zeta^{phi(m)-1}, reduced mod the m-th cyclotomic polynomial. Z[zeta_m]
//! is the maximal order, so integral elements have integer coordinates;
//! the d-th power test leans on that.

use std::sync::{Arc, OnceLock};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{euler_phi, is_prime_u64, multiplicative_order, prime_power_factors_u64, Rat};
use crate::config::Config;
use crate::error::{Error, Result};
use crate::fq::{self, Fq};
use crate::numeric::{dth_root_mag_upper, root_of_unity, BallC};

/// m if m != 2 mod 4, else m/2 (Q(mu_m) = Q(mu_{m/2}) for m = 2 mod 4).
pub fn canonical_conductor(m: u64) -> u64 {
    assert!(m >= 1);
    if m % 4 == 2 {
        m / 2
    } else {
        m
    }
}

/// Integer coefficients of the m-th cyclotomic polynomial, little-endian,
/// computed by dividing x^m - 1 by all proper-divisor cyclotomics.
pub fn cyclotomic_polynomial(m: u64) -> Vec<BigInt> {
    assert!(m >= 1);
    if m == 1 {
        return vec![BigInt::from(-1), BigInt::one()];
    }
    let mut num = vec![BigInt::zero(); m as usize + 1];
    num[0] = BigInt::from(-1);
    num[m as usize] = BigInt::one();
    let mut result = num;
    let mut d = 1u64;
    while d < m {
        if m % d == 0 {
            let phi_d = cyclotomic_polynomial(d);
            result = poly_div_exact_z(&result, &phi_d);
        }
        d += 1;
    }
    result
}

fn poly_div_exact_z(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    // b monic (cyclotomics are), exact division
    let db = b.len() - 1;
    assert!(b[db].is_one());
    let mut rem: Vec<BigInt> = a.to_vec();
    let mut q = vec![BigInt::zero(); a.len().saturating_sub(db)];
    for i in (db..a.len()).rev() {
        let c = rem[i].clone();
        if c.is_zero() {
            continue;
        }
        q[i - db] = c.clone();
        for (j, bc) in b.iter().enumerate() {
            rem[i - db + j] -= &c * bc;
        }
    }
    assert!(rem.iter().all(|c| c.is_zero()), "non-exact cyclotomic division");
    q
}

struct FieldData {
    m: u64,
    phi: usize,
    min_poly: Vec<BigInt>,
    /// x^{phi+k} mod Phi_m for k = 0 .. phi-2, as integer coefficient rows
    reduction_rows: Vec<Vec<BigInt>>,
    /// coefficient vectors of zeta^j for j = 0 .. m-1
    zeta_powers: Vec<Vec<BigInt>>,
    /// cached dual-basis row-norm bound (ulps) and the precision used
    dual_norm: OnceLock<(BigUint, u32)>,
}

/// A cyclotomic field Q(mu_m), m canonical. Cheap to clone, equal by
/// conductor.
#[derive(Clone)]
pub struct CycField(Arc<FieldData>);

impl std::fmt::Debug for CycField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "CycField(m={})", self.0.m)
    }
}

impl PartialEq for CycField {
    fn eq(&self, other: &Self) -> bool {
        self.0.m == other.0.m
    }
}
impl Eq for CycField {}

impl CycField {
    pub fn new(m: u64) -> Self {
        let m = canonical_conductor(m);
        let phi = euler_phi(m) as usize;
        let min_poly = cyclotomic_polynomial(m);
        assert_eq!(min_poly.len(), phi + 1);
        // x^{phi+k} rewritten below degree phi, built inductively
        let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(phi.saturating_sub(1));
        for k in 0..phi.saturating_sub(1) {
            let mut acc = vec![BigInt::zero(); phi];
            for j in 0..phi {
                let c = -&min_poly[j];
                if c.is_zero() {
                    continue;
                }
                let deg = j + k;
                if deg < phi {
                    acc[deg] += c;
                } else {
                    let row = rows[deg - phi].clone();
                    for (i, r) in row.iter().enumerate() {
                        acc[i] += &c * r;
                    }
                }
            }
            rows.push(acc);
        }
        // zeta^j by iterated multiplication by x with on-the-fly reduction
        let mut zeta_powers = Vec::with_capacity(m as usize);
        let mut v = vec![BigInt::zero(); phi];
        v[0] = BigInt::one();
        for _ in 0..m {
            zeta_powers.push(v.clone());
            let top = v[phi - 1].clone();
            for i in (1..phi).rev() {
                v[i] = v[i - 1].clone();
            }
            v[0] = BigInt::zero();
            if !top.is_zero() {
                for (i, slot) in v.iter_mut().enumerate() {
                    *slot -= &top * &min_poly[i];
                }
            }
        }
        CycField(Arc::new(FieldData {
            m,
            phi,
            min_poly,
            reduction_rows: rows,
            zeta_powers,
            dual_norm: OnceLock::new(),
        }))
    }

    pub fn rationals() -> Self {
        CycField::new(1)
    }

    pub fn conductor(&self) -> u64 {
        self.0.m
    }

    pub fn degree(&self) -> usize {
        self.0.phi
    }

    pub fn min_poly(&self) -> &[BigInt] {
        &self.0.min_poly
    }

    pub fn is_rational(&self) -> bool {
        self.0.m == 1
    }

    /// Units of Z/m, ascending: the embedding/Galois index set.
    pub fn unit_reps(&self) -> Vec<u64> {
        let m = self.0.m;
        (1..=m).filter(|t| num_integer::gcd(*t, m) == 1).collect()
    }

    pub fn zero(&self) -> CycElt {
        CycElt { field: self.clone(), coeffs: vec![Rat::zero(); self.0.phi] }
    }

    pub fn one(&self) -> CycElt {
        self.from_rational(&Rat::one())
    }

    pub fn from_rational(&self, a: &Rat) -> CycElt {
        let mut coeffs = vec![Rat::zero(); self.0.phi];
        coeffs[0] = a.clone();
        CycElt { field: self.clone(), coeffs }
    }

    pub fn from_integer(&self, a: i64) -> CycElt {
        self.from_rational(&Rat::from(BigInt::from(a)))
    }

    /// zeta_m^j as an element.
    pub fn zeta_pow(&self, j: i64) -> CycElt {
        let m = self.0.m;
        let jm = j.rem_euclid(m as i64) as usize;
        let coeffs = self.0.zeta_powers[jm]
            .iter()
            .map(|c| Rat::from(c.clone()))
            .collect();
        CycElt { field: self.clone(), coeffs }
    }

    /// mu_n contained in this field iff n divides m (m even) or 2m (m odd).
    pub fn contains_mu(&self, n: u64) -> bool {
        let m = self.0.m;
        let cap = if m % 2 == 0 { m } else { 2 * m };
        cap % n == 0
    }

    /// A primitive n-th root of unity in this field (requires contains_mu).
    pub fn primitive_root_of_unity(&self, n: u64) -> CycElt {
        assert!(self.contains_mu(n), "mu_{n} not in Q(mu_{})", self.0.m);
        let m = self.0.m;
        if n == 1 {
            return self.one();
        }
        if n == 2 {
            return self.from_integer(-1);
        }
        if m % n == 0 {
            return self.zeta_pow((m / n) as i64);
        }
        // m odd, n = 2n' with n' odd dividing m: zeta_n = -zeta_{n'}^{(n'+1)/2}
        let np = n / 2;
        assert!(m % np == 0 && np % 2 == 1);
        let half = ((np + 1) / 2) as i64;
        self.zeta_pow((m / np) as i64 * half).neg()
    }
}

/// Element of Q(mu_m) on the power basis.
#[derive(Clone)]
pub struct CycElt {
    pub field: CycField,
    pub coeffs: Vec<Rat>,
}

impl std::fmt::Debug for CycElt {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "CycElt(m={}, {})", self.field.conductor(), crate::textio::format_elt(self))
    }
}

impl PartialEq for CycElt {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.coeffs == other.coeffs
    }
}
impl Eq for CycElt {}

impl CycElt {
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    pub fn as_rational(&self) -> Option<Rat> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    pub fn add(&self, other: &CycElt) -> CycElt {
        assert_eq!(self.field, other.field);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        CycElt { field: self.field.clone(), coeffs }
    }

    pub fn sub(&self, other: &CycElt) -> CycElt {
        assert_eq!(self.field, other.field);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        CycElt { field: self.field.clone(), coeffs }
    }

    pub fn neg(&self) -> CycElt {
        CycElt {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, a: &Rat) -> CycElt {
        CycElt {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| c * a).collect(),
        }
    }

    pub fn mul(&self, other: &CycElt) -> CycElt {
        assert_eq!(self.field, other.field);
        let phi = self.field.0.phi;
        if phi == 1 {
            return CycElt {
                field: self.field.clone(),
                coeffs: vec![&self.coeffs[0] * &other.coeffs[0]],
            };
        }
        let mut conv = vec![Rat::zero(); 2 * phi - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                conv[i + j] += a * b;
            }
        }
        let mut out: Vec<Rat> = conv[..phi].to_vec();
        for k in 0..phi - 1 {
            let c = &conv[phi + k];
            if c.is_zero() {
                continue;
            }
            for (i, r) in self.field.0.reduction_rows[k].iter().enumerate() {
                if !r.is_zero() {
                    out[i] += c * &Rat::from(r.clone());
                }
            }
        }
        CycElt { field: self.field.clone(), coeffs: out }
    }

    pub fn pow(&self, e: u64) -> CycElt {
        let mut acc = self.field.one();
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

    pub fn inverse(&self) -> Result<CycElt> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let phi_poly: Vec<Rat> = self
            .field
            .0
            .min_poly
            .iter()
            .map(|c| Rat::from(c.clone()))
            .collect();
        let (g, u) = rat_poly_ext_gcd(&self.coeffs, &phi_poly);
        let g0 = g.first().cloned().unwrap_or_else(Rat::zero);
        assert!(
            g.len() == 1 && !g0.is_zero(),
            "inverse: gcd with the minimal polynomial not constant"
        );
        let mut coeffs: Vec<Rat> = u.iter().map(|c| c / &g0).collect();
        coeffs.resize(self.field.0.phi, Rat::zero());
        Ok(CycElt { field: self.field.clone(), coeffs })
    }

    pub fn div(&self, other: &CycElt) -> Result<CycElt> {
        Ok(self.mul(&other.inverse()?))
    }

    /// The Galois automorphism zeta -> zeta^t (gcd(t, m) = 1).
    pub fn galois_apply(&self, t: u64) -> CycElt {
        let m = self.field.0.m;
        assert_eq!(num_integer::gcd(t % m, m), 1, "galois_apply needs a unit");
        let mut out = self.field.zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let img = self.field.zeta_pow((((t % m) as i64) * (i as i64)) % m as i64);
            out = out.add(&img.scale(c));
        }
        out
    }

    /// All Galois conjugates, indexed by the unit t.
    pub fn conjugates(&self) -> Vec<(u64, CycElt)> {
        self.field
            .unit_reps()
            .into_iter()
            .map(|t| (t, self.galois_apply(t)))
            .collect()
    }

    /// All phi(m) complex embeddings, indexed by the unit t (zeta maps to
    /// e^{2 pi i t / m}), with rigorous error bounds.
    pub fn numeric_embeddings(&self, prec: u32) -> Vec<(u64, BallC)> {
        let m = self.field.0.m;
        self.field
            .unit_reps()
            .into_iter()
            .map(|t| {
                let mut acc = BallC::zero(prec);
                for (i, c) in self.coeffs.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let z = root_of_unity(((t as i64) * (i as i64)) % m as i64, m, prec);
                    acc = acc.add(&z.scale(c));
                }
                (t, acc)
            })
            .collect()
    }

    /// Clear denominators: (A, c) with self = A / c and A integral.
    pub fn clear_denominators(&self) -> (Vec<BigInt>, BigInt) {
        let mut den = BigInt::one();
        for c in &self.coeffs {
            den = num_integer::lcm(den, c.denom().clone());
        }
        let ints = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        (ints, den)
    }

    /// Integer coefficients if the element is integral.
    pub fn integer_coeffs(&self) -> Option<Vec<BigInt>> {
        let (ints, den) = self.clear_denominators();
        if den.is_one() {
            Some(ints)
        } else {
            None
        }
    }

    /// Field norm to Q (determinant of the multiplication matrix, computed
    /// fraction-free on the integral part).
    pub fn norm(&self) -> Rat {
        let phi = self.field.0.phi;
        let (ints, den) = self.clear_denominators();
        let elt = CycElt {
            field: self.field.clone(),
            coeffs: ints.iter().map(|c| Rat::from(c.clone())).collect(),
        };
        let mut cols: Vec<Vec<BigInt>> = Vec::with_capacity(phi);
        for j in 0..phi {
            let prod = elt.mul(&self.field.zeta_pow(j as i64));
            cols.push(prod.coeffs.iter().map(|c| c.numer().clone()).collect());
        }
        let mut a = vec![vec![BigInt::zero(); phi]; phi];
        for (j, col) in cols.iter().enumerate() {
            for i in 0..phi {
                a[i][j] = col[i].clone();
            }
        }
        let det = bareiss_det(a);
        Rat::new(det, den.pow(phi as u32))
    }

    /// Embed into a larger cyclotomic field (conductor divisible by m).
    pub fn embed_into(&self, target: &CycField) -> Result<CycElt> {
        let m = self.field.0.m;
        let mm = target.0.m;
        if mm % m != 0 {
            return Err(Error::FieldMismatch(format!(
                "Q(mu_{m}) does not embed into Q(mu_{mm})"
            )));
        }
        let scale = (mm / m) as i64;
        let mut out = target.zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            out = out.add(&target.zeta_pow(scale * i as i64).scale(c));
        }
        Ok(out)
    }

    /// Express the element in a subfield (conductor dividing m) when it
    /// lies there.
    pub fn restrict_to(&self, target: &CycField) -> Option<CycElt> {
        let m = self.field.0.m;
        let mm = target.0.m;
        if m % mm != 0 {
            return None;
        }
        if m == mm {
            return Some(self.clone());
        }
        let phi_small = target.0.phi;
        let phi_big = self.field.0.phi;
        let mut cols: Vec<Vec<Rat>> = Vec::with_capacity(phi_small);
        for j in 0..phi_small {
            let img = target
                .zeta_pow(j as i64)
                .embed_into(&self.field)
                .expect("divisibility checked");
            cols.push(img.coeffs);
        }
        let ncols = phi_small;
        let mut aug: Vec<Vec<Rat>> = (0..phi_big)
            .map(|i| {
                let mut row: Vec<Rat> = cols.iter().map(|c| c[i].clone()).collect();
                row.push(self.coeffs[i].clone());
                row
            })
            .collect();
        let rows = phi_big;
        let mut pivots = Vec::new();
        let mut r = 0usize;
        for c in 0..ncols {
            let pr = (r..rows).find(|&i| !aug[i][c].is_zero());
            let Some(pr) = pr else { continue };
            aug.swap(r, pr);
            let inv = aug[r][c].clone();
            for j in c..=ncols {
                aug[r][j] = &aug[r][j] / &inv;
            }
            for i in 0..rows {
                if i != r && !aug[i][c].is_zero() {
                    let f = aug[i][c].clone();
                    for j in c..=ncols {
                        let sub = &aug[r][j] * &f;
                        aug[i][j] = &aug[i][j] - &sub;
                    }
                }
            }
            pivots.push((r, c));
            r += 1;
        }
        for row in aug.iter().take(rows).skip(r) {
            if !row[ncols].is_zero() {
                return None;
            }
        }
        let mut sol = vec![Rat::zero(); phi_small];
        for (row, col) in pivots {
            sol[col] = aug[row][ncols].clone();
        }
        let cand = CycElt { field: target.clone(), coeffs: sol };
        if cand.embed_into(&self.field).ok()? == *self {
            Some(cand)
        } else {
            None
        }
    }
}

fn bareiss_det(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = 1i32;
    let mut prev = BigInt::one();
    for k in 0..n.saturating_sub(1) {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = num / &prev;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if sign < 0 {
        -det
    } else {
        det
    }
}

fn rat_poly_normalize(p: &mut Vec<Rat>) {
    while p.last().map(|c| c.is_zero()).unwrap_or(false) {
        p.pop();
    }
}

/// Extended gcd in Q[x]: returns (g, u) with u*a = g mod f.
fn rat_poly_ext_gcd(a: &[Rat], f: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
    let mut r0 = f.to_vec();
    let mut r1 = a.to_vec();
    rat_poly_normalize(&mut r0);
    rat_poly_normalize(&mut r1);
    let mut s0: Vec<Rat> = vec![];
    let mut s1: Vec<Rat> = vec![Rat::one()];
    while !r1.is_empty() {
        let d1 = r1.len() - 1;
        let lead = r1[d1].clone();
        let mut q: Vec<Rat> = vec![Rat::zero(); r0.len().saturating_sub(d1)];
        let mut rem = r0.clone();
        while rem.len() > d1 {
            let dr = rem.len() - 1;
            let c = &rem[dr] / &lead;
            if !c.is_zero() {
                q[dr - d1] = c.clone();
                for (i, b) in r1.iter().enumerate() {
                    let sub = b * &c;
                    rem[i + dr - d1] = &rem[i + dr - d1] - &sub;
                }
            }
            rem.pop();
            rat_poly_normalize(&mut rem);
        }
        rat_poly_normalize(&mut q);
        let mut qs = vec![Rat::zero(); q.len() + s1.len()];
        for (i, qc) in q.iter().enumerate() {
            if qc.is_zero() {
                continue;
            }
            for (j, sc) in s1.iter().enumerate() {
                let add = qc * sc;
                qs[i + j] = &qs[i + j] + &add;
            }
        }
        rat_poly_normalize(&mut qs);
        let mut s_next = vec![Rat::zero(); s0.len().max(qs.len())];
        for (i, slot) in s_next.iter_mut().enumerate() {
            let x = s0.get(i).cloned().unwrap_or_else(Rat::zero);
            let y = qs.get(i).cloned().unwrap_or_else(Rat::zero);
            *slot = &x - &y;
        }
        rat_poly_normalize(&mut s_next);
        r0 = r1;
        r1 = rem;
        s0 = s1;
        s1 = s_next;
    }
    (r0, s0)
}

/// p-adic valuation at a prime of the field (delegates to the
/// completion model).
pub use crate::local::valuation_at;

/// mu_{m'} in Q(mu_m)?
pub fn mu_in_field(m_prime: u64, field: &CycField) -> bool {
    field.contains_mu(m_prime)
}

/// [k(mu_d) : k] for k = Q(mu_m), by conductor arithmetic.
pub fn degree_ext(field: &CycField, d: u64) -> u64 {
    let m = field.conductor();
    let big = canonical_conductor(num_integer::lcm(m, d));
    euler_phi(big) / euler_phi(m)
}

/// A prime of Q(mu_m) above a rational prime ell.
///
/// `h` is an irreducible factor mod ell of Phi_m (ell unramified) or of
/// Phi_{m'}, m' the prime-to-ell part of m (ell ramified); the residue
/// field is F_ell[y]/h.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycPrime {
    pub field: CycField,
    pub ell: u64,
    /// residue degree
    pub f: usize,
    /// ramification index (phi(ell^a) when ell^a || m, else 1)
    pub e: usize,
    pub h: Vec<u64>,
}

/// Splitting of a rational prime: factor Phi mod ell.
pub fn factor_prime(ell: u64, field: &CycField) -> Vec<CycPrime> {
    assert!(is_prime_u64(ell), "factor_prime needs a prime");
    let m = field.conductor();
    let (m_tame, e) = if m % ell == 0 {
        let mut a = 0u32;
        let mut mt = m;
        while mt % ell == 0 {
            mt /= ell;
            a += 1;
        }
        (mt, euler_phi(ell.pow(a)) as usize)
    } else {
        (m, 1usize)
    };
    if m_tame == 1 {
        return vec![CycPrime { field: field.clone(), ell, f: 1, e, h: vec![ell - 1, 1] }];
    }
    let f = multiplicative_order(ell as i64, m_tame).expect("ell coprime to tame part") as usize;
    let phi_mod = poly_mod_ell(&cyclotomic_polynomial(m_tame), ell);
    let seed = ell ^ (m << 20) ^ 0xC0FFEE;
    let factors = fq::equal_degree_factor(&phi_mod, f, ell, seed);
    factors
        .into_iter()
        .map(|h| CycPrime { field: field.clone(), ell, f, e, h })
        .collect()
}

pub(crate) fn poly_mod_ell(poly: &[BigInt], ell: u64) -> Vec<u64> {
    poly.iter()
        .map(|c| {
            let r = c % BigInt::from(ell);
            let r = if r.is_negative() { r + BigInt::from(ell) } else { r };
            r.to_u64().unwrap()
        })
        .collect()
}

impl CycPrime {
    pub fn residue_field(&self) -> Fq {
        Fq::new(self.ell, self.h.clone())
    }

    /// Image of an integral element in the residue field. The prime-to-ell
    /// root of unity maps to y (a root of h); the ell-power part maps to 1.
    pub fn reduce(&self, ints: &[BigInt]) -> fq::FqElt {
        let fqf = self.residue_field();
        let m = self.field.conductor();
        let mut m_tame = m;
        let mut ell_part = 1u64;
        while m_tame % self.ell == 0 {
            m_tame /= self.ell;
            ell_part *= self.ell;
        }
        // zeta_m = zeta_tame^a * zeta_{ell_part}^b with a*ell_part = 1 mod
        // m_tame; the wild part reduces to 1 in the residue field
        let zeta_img: fq::FqElt = if m_tame == 1 {
            fqf.one()
        } else if ell_part == 1 {
            vec![0, 1]
        } else {
            let a = crate::arith::invmod_u64(ell_part % m_tame, m_tame).unwrap();
            fqf.pow(&vec![0, 1], a as u128)
        };
        let mut acc = fqf.zero();
        let mut zpow = fqf.one();
        for c in ints {
            let cr = c % BigInt::from(self.ell);
            let cr = if cr.is_negative() { cr + BigInt::from(self.ell) } else { cr };
            let cu = cr.to_u64().unwrap();
            if cu != 0 {
                acc = fqf.add(&acc, &fqf.mul(&fqf.from_u64(cu), &zpow));
            }
            zpow = fqf.mul(&zpow, &zeta_img);
        }
        acc
    }
}

/// Dual-basis coefficient bound: for integral beta,
/// |coeff_i(beta)| <= bound(field) * max_t |tau_t(beta)|.
fn dual_basis_row_norm(field: &CycField, prec: u32) -> BigUint {
    if let Some((cached, p)) = field.0.dual_norm.get() {
        if *p == prec {
            return cached.clone();
        }
    }
    let phi = field.0.phi;
    if phi == 1 {
        let one = BigUint::one() << prec;
        let _ = field.0.dual_norm.set((one.clone(), prec));
        return one;
    }
    // Q(x) = Phi(x)/(x - zeta) by Horner; dual_i = q_i / Phi'(zeta)
    let zeta = field.zeta_pow(1);
    let mut q = vec![field.zero(); phi];
    q[phi - 1] = field.one();
    for j in (1..phi).rev() {
        let aj = field.from_rational(&Rat::from(field.0.min_poly[j].clone()));
        q[j - 1] = aj.add(&zeta.mul(&q[j]));
    }
    let mut deriv = field.zero();
    for j in 1..=phi {
        let c = &field.0.min_poly[j] * BigInt::from(j);
        if !c.is_zero() {
            deriv = deriv.add(&field.zeta_pow((j as i64) - 1).scale(&Rat::from(c)));
        }
    }
    let dinv = deriv.inverse().expect("Phi' nonzero at zeta");
    let mut max_norm = BigUint::zero();
    for qi in &q {
        let di = qi.mul(&dinv);
        let total: BigUint = di
            .numeric_embeddings(prec)
            .into_iter()
            .map(|(_, b)| b.mag_upper_ulps())
            .sum();
        if total > max_norm {
            max_norm = total;
        }
    }
    let _ = field.0.dual_norm.set((max_norm.clone(), prec));
    max_norm
}

/// Global d-th power test: returns beta with beta^d = alpha when one exists
/// in the field.
pub fn is_dth_power_cyclotomic(alpha: &CycElt, d: u32) -> Result<Option<CycElt>> {
    is_dth_power_cyclotomic_with(alpha, d, &Config::default())
}

pub fn is_dth_power_cyclotomic_with(
    alpha: &CycElt,
    d: u32,
    cfg: &Config,
) -> Result<Option<CycElt>> {
    assert!(d >= 1);
    if alpha.is_zero() {
        return Err(Error::InvalidInput("is_dth_power_cyclotomic(0)".into()));
    }
    if d == 1 {
        return Ok(Some(alpha.clone()));
    }
    if alpha.field.is_rational() {
        let a = alpha.coeffs[0].clone();
        return Ok(crate::arith::is_dth_power_rational_with(&a, d, cfg)?
            .map(|r| alpha.field.from_rational(&r)));
    }
    // alpha in K*^d iff alpha in K*^{p^n} for every p^n || d; roots chain
    // across distinct primes, with branching only inside each p-tower
    let mut current = vec![alpha.clone()];
    for (p, n) in prime_power_factors_u64(d as u64) {
        let zeta_p = if alpha.field.contains_mu(p) {
            Some(alpha.field.primitive_root_of_unity(p))
        } else {
            None
        };
        for _ in 0..n {
            let mut next: Vec<CycElt> = Vec::new();
            for cand in &current {
                if let Some(root) = pth_root(cand, p as u32, cfg)? {
                    match &zeta_p {
                        Some(z) => {
                            let mut r = root;
                            for _ in 0..p {
                                if !next.contains(&r) {
                                    next.push(r.clone());
                                }
                                r = r.mul(z);
                            }
                        }
                        None => {
                            if !next.contains(&root) {
                                next.push(root);
                            }
                        }
                    }
                }
            }
            if next.is_empty() {
                return Ok(None);
            }
            current = next;
        }
        let keep = current.into_iter().min_by(cmp_elt).unwrap();
        current = vec![keep];
    }
    Ok(Some(current.into_iter().next().unwrap()))
}

fn cmp_elt(a: &CycElt, b: &CycElt) -> std::cmp::Ordering {
    for (x, y) in a.coeffs.iter().zip(&b.coeffs) {
        match x.cmp(y) {
            std::cmp::Ordering::Equal => continue,
            o => return o,
        }
    }
    std::cmp::Ordering::Equal
}

/// One p-th root in the field (p prime), or None.
fn pth_root(alpha: &CycElt, p: u32, cfg: &Config) -> Result<Option<CycElt>> {
    let field = &alpha.field;
    // alpha = A/c; beta^p = alpha iff (beta c)^p = A c^{p-1}, and any root
    // of the monic integral equation lies in Z[zeta]
    let (a_ints, c) = alpha.clear_denominators();
    let factor = c.pow(p - 1);
    let scaled: Vec<Rat> = a_ints.iter().map(|x| Rat::from(x * &factor)).collect();
    let target = CycElt { field: field.clone(), coeffs: scaled };
    let root = integral_pth_root(&target, p, cfg)?;
    Ok(root.map(|r| r.scale(&Rat::new(BigInt::one(), c))))
}

/// p-th root of an integral element: ell-adic Hensel reconstruction under a
/// rigorous conjugate-magnitude coefficient bound, then exact verification.
fn integral_pth_root(a: &CycElt, p: u32, cfg: &Config) -> Result<Option<CycElt>> {
    let field = &a.field;
    let phi = field.degree();
    let m = field.conductor();
    let ints = a.integer_coeffs().expect("integral input");

    // |coeff_i(root)| <= dual_norm * max_t |tau_t(a)|^{1/p}
    let prec = cfg.precision_start;
    let mag_alpha = a
        .numeric_embeddings(prec)
        .into_iter()
        .map(|(_, b)| b.mag_upper_ulps())
        .max()
        .unwrap();
    let mag_root = dth_root_mag_upper(&mag_alpha, p, prec);
    let dual = dual_basis_row_norm(field, prec);
    let bound_ulps = ((&mag_root * &dual) >> prec) + BigUint::one();
    let bound: BigUint = (bound_ulps >> prec) + BigUint::one();

    // reconstruction prime: unramified, not p, element a unit at it, and an
    // economical residue root count; a missing residue root anywhere is
    // already conclusive
    let mut best: Option<(u64, Vec<CycPrime>, Vec<Vec<fq::FqElt>>, u128)> = None;
    let mut ell = 2u64;
    let mut tried = 0u32;
    while tried < 40 {
        ell = next_prime_above(ell);
        if m % ell == 0 || p as u64 % ell == 0 {
            continue;
        }
        let primes = factor_prime(ell, field);
        let mut roots_per_factor: Vec<Vec<fq::FqElt>> = Vec::new();
        let mut unit_everywhere = true;
        let mut combos: u128 = 1;
        for pr in &primes {
            let fqf = pr.residue_field();
            let res = pr.reduce(&ints);
            if fqf.is_zero(&res) {
                unit_everywhere = false;
                break;
            }
            let roots = fqf.all_dth_roots(&res, p as u64);
            if roots.is_empty() {
                return Ok(None);
            }
            combos = combos.saturating_mul(roots.len() as u128);
            roots_per_factor.push(roots);
        }
        tried += 1;
        if !unit_everywhere {
            continue;
        }
        let better = match &best {
            None => true,
            Some((_, _, _, c)) => combos < *c,
        };
        if better {
            best = Some((ell, primes, roots_per_factor, combos));
        }
        if combos <= p as u128 {
            break;
        }
    }
    let Some((ell, primes, roots_per_factor, combos)) = best else {
        return Err(Error::PrecisionExceeded(
            "no usable reconstruction prime found".into(),
        ));
    };
    if combos > cfg.root_combination_cap as u128 {
        return Err(Error::BudgetExceeded(format!(
            "{combos} residue combinations exceed the reconstruction cap"
        )));
    }

    // modulus ell^k > 2*bound + 1
    let two_bound = BigUint::from(2u32) * &bound + BigUint::one();
    let mut k = 1u32;
    let mut ell_k = BigUint::from(ell);
    while ell_k <= two_bound {
        ell_k *= BigUint::from(ell);
        k += 1;
    }

    // CRT basis mod (ell, Phi)
    let phi_mod = poly_mod_ell(field.min_poly(), ell);
    let mut crt_basis: Vec<Vec<u64>> = Vec::with_capacity(primes.len());
    for pr in &primes {
        let cofactor = fq::poly_div_exact(&phi_mod, &pr.h, ell);
        let fqf = pr.residue_field();
        let cof_mod_h = fqf.reduce(&cofactor);
        let inv = fqf
            .inverse(&cof_mod_h)
            .expect("cofactor invertible mod its own factor");
        let basis = fq::poly_rem(&fq::poly_mul(&cofactor, &inv, ell), &phi_mod, ell);
        crt_basis.push(basis);
    }

    let ring = ModPhiRing::new(field.clone(), BigInt::from(ell).pow(k));
    let a_mod = ring.from_ints(&ints);

    let mut indices = vec![0usize; primes.len()];
    loop {
        let mut start = vec![0u64; phi];
        for (i, _) in primes.iter().enumerate() {
            let contrib = fq::poly_rem(
                &fq::poly_mul(&crt_basis[i], &roots_per_factor[i][indices[i]], ell),
                &phi_mod,
                ell,
            );
            for (j, c) in contrib.iter().enumerate() {
                start[j] = (start[j] + c) % ell;
            }
        }
        if let Some(candidate) = newton_lift_root(&a_mod, &start, p, ell, k, field) {
            let cand_elt = CycElt {
                field: field.clone(),
                coeffs: candidate.iter().map(|c| Rat::from(c.clone())).collect(),
            };
            if cand_elt.pow(p as u64) == *a {
                return Ok(Some(cand_elt));
            }
        }
        let mut pos = 0usize;
        loop {
            if pos == indices.len() {
                return Ok(None);
            }
            indices[pos] += 1;
            if indices[pos] < roots_per_factor[pos].len() {
                break;
            }
            indices[pos] = 0;
            pos += 1;
        }
    }
}

pub(crate) fn next_prime_above(n: u64) -> u64 {
    let mut c = n + 1;
    loop {
        if is_prime_u64(c) {
            return c;
        }
        c += 1;
    }
}

/// Arithmetic in (Z/modulus)[x] / Phi_m with BigInt coefficients.
pub(crate) struct ModPhiRing {
    field: CycField,
    modulus: BigInt,
}

impl ModPhiRing {
    pub fn new(field: CycField, modulus: BigInt) -> Self {
        ModPhiRing { field, modulus }
    }

    pub fn reduce_coeff(&self, c: &BigInt) -> BigInt {
        let r = c % &self.modulus;
        if r.is_negative() {
            r + &self.modulus
        } else {
            r
        }
    }

    pub fn from_ints(&self, ints: &[BigInt]) -> Vec<BigInt> {
        ints.iter().map(|c| self.reduce_coeff(c)).collect()
    }

    pub fn mul(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let phi = self.field.degree();
        if phi == 1 {
            return vec![self.reduce_coeff(&(&a[0] * &b[0]))];
        }
        let mut conv = vec![BigInt::zero(); 2 * phi - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                conv[i + j] += x * y;
            }
        }
        let mut out: Vec<BigInt> = conv[..phi].to_vec();
        for k in 0..phi - 1 {
            if conv[phi + k].is_zero() {
                continue;
            }
            for (i, r) in self.field.0.reduction_rows[k].iter().enumerate() {
                if !r.is_zero() {
                    out[i] += &conv[phi + k] * r;
                }
            }
        }
        out.iter().map(|c| self.reduce_coeff(c)).collect()
    }

    pub fn sub(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        a.iter()
            .zip(b)
            .map(|(x, y)| self.reduce_coeff(&(x - y)))
            .collect()
    }

    pub fn scale(&self, a: &[BigInt], s: i64) -> Vec<BigInt> {
        a.iter()
            .map(|x| self.reduce_coeff(&(x * BigInt::from(s))))
            .collect()
    }

    pub fn pow(&self, a: &[BigInt], e: u32) -> Vec<BigInt> {
        let phi = self.field.degree();
        let mut acc = vec![BigInt::zero(); phi];
        acc[0] = BigInt::one();
        let mut base = a.to_vec();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }
}

/// Newton-lift a mod-ell root of x^p = a to mod ell^k; returns the
/// symmetric-range integer coefficient vector, or None when the residue
/// does not lift.
fn newton_lift_root(
    a_mod: &[BigInt],
    start: &[u64],
    p: u32,
    ell: u64,
    k: u32,
    field: &CycField,
) -> Option<Vec<BigInt>> {
    let phi = field.degree();
    let phi_mod = poly_mod_ell(field.min_poly(), ell);
    let x0: Vec<u64> = start.to_vec();
    let x0_pm1 = fq::poly_powmod(&x0, (p - 1) as u128, &phi_mod, ell);
    let deriv0: Vec<u64> = x0_pm1
        .iter()
        .map(|c| fq::mulmod(*c, p as u64 % ell, ell))
        .collect();
    let (g, inv0) = fq::poly_ext_gcd_mod(&deriv0, &phi_mod, ell);
    if fq::poly_deg(&g) != Some(0) {
        return None;
    }
    let ginv = crate::arith::invmod_u64(g[0], ell)?;
    let inv0: Vec<u64> = inv0.iter().map(|c| fq::mulmod(*c, ginv, ell)).collect();

    let to_vec = |src: &[u64]| -> Vec<BigInt> {
        let mut v = vec![BigInt::zero(); phi];
        for (i, c) in src.iter().enumerate() {
            v[i] = BigInt::from(*c);
        }
        v
    };
    let mut x = to_vec(&x0);
    let mut inv = to_vec(&inv0);
    let mut level = 1u32;
    while level < k {
        level = (2 * level).min(k);
        let ring = ModPhiRing::new(field.clone(), BigInt::from(ell).pow(level));
        let a_lvl: Vec<BigInt> = a_mod.iter().map(|c| ring.reduce_coeff(c)).collect();
        x = x.iter().map(|c| ring.reduce_coeff(c)).collect();
        inv = inv.iter().map(|c| ring.reduce_coeff(c)).collect();
        for _ in 0..2 {
            let fpx = ring.scale(&ring.pow(&x, p - 1), p as i64);
            let mut two = vec![BigInt::zero(); phi];
            two[0] = BigInt::from(2);
            let t = ring.sub(&two, &ring.mul(&fpx, &inv));
            inv = ring.mul(&inv, &t);
        }
        let fx = ring.sub(&ring.pow(&x, p), &a_lvl);
        x = ring.sub(&x, &ring.mul(&fx, &inv));
    }
    let ring = ModPhiRing::new(field.clone(), BigInt::from(ell).pow(k));
    let fx = ring.sub(&ring.pow(&x, p), a_mod);
    if fx.iter().any(|c| !c.is_zero()) {
        return None;
    }
    let modulus = BigInt::from(ell).pow(k);
    let half = &modulus / 2;
    Some(
        x.into_iter()
            .map(|c| if c > half { c - &modulus } else { c })
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> Rat {
        Rat::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn canonical_conductors() {
        assert_eq!(canonical_conductor(6), 3);
        assert_eq!(canonical_conductor(4), 4);
        assert_eq!(canonical_conductor(2), 1);
        assert_eq!(canonical_conductor(1), 1);
        assert_eq!(canonical_conductor(10), 5);
        assert_eq!(canonical_conductor(12), 12);
    }

    #[test]
    fn cyclotomic_polynomials() {
        let as_i64 =
            |v: Vec<BigInt>| -> Vec<i64> { v.iter().map(|c| c.to_i64().unwrap()).collect() };
        assert_eq!(as_i64(cyclotomic_polynomial(1)), vec![-1, 1]);
        assert_eq!(as_i64(cyclotomic_polynomial(3)), vec![1, 1, 1]);
        assert_eq!(as_i64(cyclotomic_polynomial(4)), vec![1, 0, 1]);
        assert_eq!(as_i64(cyclotomic_polynomial(8)), vec![1, 0, 0, 0, 1]);
        assert_eq!(as_i64(cyclotomic_polynomial(12)), vec![1, 0, -1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(21).len(), 13);
    }

    #[test]
    fn field_ops_basic() {
        // (1 + zeta_4)(1 - zeta_4) = 2
        let k4 = CycField::new(4);
        let one_plus = k4.one().add(&k4.zeta_pow(1));
        let one_minus = k4.one().sub(&k4.zeta_pow(1));
        assert_eq!(one_plus.mul(&one_minus), k4.from_integer(2));
        // inverse(zeta_3) = zeta_3^2 = -1 - zeta_3
        let k3 = CycField::new(3);
        let inv = k3.zeta_pow(1).inverse().unwrap();
        assert_eq!(inv, k3.zeta_pow(2));
        assert_eq!(inv, k3.from_integer(-1).sub(&k3.zeta_pow(1)));
        // (1 + zeta_4)^4 = -4
        assert_eq!(one_plus.pow(4), k4.from_integer(-4));
    }

    #[test]
    fn mu_in_field_cases() {
        assert!(mu_in_field(2, &CycField::rationals()));
        assert!(!mu_in_field(4, &CycField::rationals()));
        assert!(mu_in_field(7, &CycField::new(21)));
        assert!(mu_in_field(6, &CycField::new(3)));
        assert!(!mu_in_field(9, &CycField::new(3)));
        assert!(mu_in_field(8, &CycField::new(8)));
        assert!(!mu_in_field(8, &CycField::new(4)));
    }

    #[test]
    fn primitive_roots_of_unity() {
        let k3 = CycField::new(3);
        let z6 = k3.primitive_root_of_unity(6);
        assert_eq!(z6.pow(6), k3.one());
        assert_ne!(z6.pow(3), k3.one());
        assert_ne!(z6.pow(2), k3.one());
        let k8 = CycField::new(8);
        let z8 = k8.primitive_root_of_unity(8);
        assert_eq!(z8.pow(4), k8.from_integer(-1));
    }

    #[test]
    fn degree_ext_cases() {
        assert_eq!(degree_ext(&CycField::rationals(), 4), 2);
        assert_eq!(degree_ext(&CycField::new(3), 21), 6);
        assert_eq!(degree_ext(&CycField::new(4), 4), 1);
        assert_eq!(degree_ext(&CycField::rationals(), 21), 12);
        assert_eq!(degree_ext(&CycField::new(3), 7), 6);
    }

    #[test]
    fn galois_and_norm() {
        let k3 = CycField::new(3);
        let alpha = k3.from_integer(14).add(&k3.zeta_pow(1).scale(&rat(21, 1)));
        // N(a + b zeta_3) = a^2 - ab + b^2
        assert_eq!(alpha.norm(), rat(343, 1));
        let conj = alpha.galois_apply(2);
        assert_eq!(alpha.mul(&conj), k3.from_integer(343));
        // product over all conjugates equals the norm
        let mut prod = k3.one();
        for (_, c) in alpha.conjugates() {
            prod = prod.mul(&c);
        }
        assert_eq!(prod, k3.from_integer(343));
    }

    #[test]
    fn embed_and_restrict() {
        let k3 = CycField::new(3);
        let k21 = CycField::new(21);
        let alpha = k3.from_integer(14).add(&k3.zeta_pow(1).scale(&rat(21, 1)));
        let up = alpha.embed_into(&k21).unwrap();
        let back = up.restrict_to(&k3).unwrap();
        assert_eq!(back, alpha);
        assert!(k21.zeta_pow(1).restrict_to(&k3).is_none());
        let r = k21.from_integer(7).restrict_to(&CycField::rationals()).unwrap();
        assert_eq!(r.coeffs[0], rat(7, 1));
    }

    #[test]
    fn factor_prime_patterns() {
        // 7 in Q(mu_4): ord(7 mod 4) = 2 -> one prime with f = 2
        let pr = factor_prime(7, &CycField::new(4));
        assert_eq!(pr.len(), 1);
        assert_eq!(pr[0].f, 2);
        assert_eq!(pr[0].e, 1);
        // 13 = 1 mod 3 splits in Q(mu_3)
        let pr = factor_prime(13, &CycField::new(3));
        assert_eq!(pr.len(), 2);
        assert!(pr.iter().all(|p| p.f == 1 && p.e == 1));
        // 3 in Q(mu_3): totally ramified
        let pr = factor_prime(3, &CycField::new(3));
        assert_eq!(pr.len(), 1);
        assert_eq!(pr[0].e, 2);
        assert_eq!(pr[0].f, 1);
        // sum of e*f over primes equals phi(m)
        for (ell, m) in [(2u64, 21u64), (5, 8), (7, 21), (2, 8), (3, 21), (2, 4)] {
            let field = CycField::new(m);
            let prs = factor_prime(ell, &field);
            let total: usize = prs.iter().map(|p| p.e * p.f).sum();
            assert_eq!(total, field.degree(), "ell={ell} m={m}");
        }
    }

    #[test]
    fn dth_power_minus_four_in_q_i() {
        let k4 = CycField::new(4);
        let alpha = k4.from_integer(-4);
        let root = is_dth_power_cyclotomic(&alpha, 4)
            .unwrap()
            .expect("-4 = (1+i)^4 in Q(i)");
        assert_eq!(root.pow(4), alpha);
        assert!(crate::arith::is_dth_power_rational(&rat(-4, 1), 4)
            .unwrap()
            .is_none());
    }

    #[test]
    fn dth_power_cube_in_q_mu21_but_not_q_mu3() {
        let k3 = CycField::new(3);
        let k21 = CycField::new(21);
        let alpha3 = k3.from_integer(14).add(&k3.zeta_pow(1).scale(&rat(21, 1)));
        assert!(is_dth_power_cyclotomic(&alpha3, 3).unwrap().is_none());
        let alpha21 = alpha3.embed_into(&k21).unwrap();
        let rho = is_dth_power_cyclotomic(&alpha21, 3)
            .unwrap()
            .expect("14 + 21 zeta_3 is a cube in Q(mu_21)");
        assert_eq!(rho.pow(3), alpha21);
    }

    #[test]
    fn dth_power_round_trip() {
        let fields = [CycField::new(3), CycField::new(4), CycField::new(8), CycField::new(5)];
        for field in &fields {
            let mut betas = vec![
                field.from_integer(2),
                field.zeta_pow(1).add(&field.from_integer(1)),
                field.zeta_pow(1).scale(&rat(3, 1)).sub(&field.from_integer(2)),
            ];
            if field.degree() >= 4 {
                betas.push(field.zeta_pow(2).add(&field.zeta_pow(1)).add(&field.from_integer(1)));
            }
            for beta in betas {
                if beta.is_zero() {
                    continue;
                }
                for d in [2u32, 3, 4, 6] {
                    let alpha = beta.pow(d as u64);
                    let got = is_dth_power_cyclotomic(&alpha, d).unwrap().unwrap_or_else(|| {
                        panic!("beta^{d} must be a {d}-th power (m={})", field.conductor())
                    });
                    assert_eq!(got.pow(d as u64), alpha);
                }
            }
        }
    }

    #[test]
    fn dth_power_negative_cases() {
        let k3 = CycField::new(3);
        assert!(is_dth_power_cyclotomic(&k3.from_integer(2), 3).unwrap().is_none());
        // zeta_3 is not a cube in Q(mu_3) (that would need mu_9)
        assert!(is_dth_power_cyclotomic(&k3.zeta_pow(1), 3).unwrap().is_none());
        assert!(is_dth_power_cyclotomic(&k3.from_integer(-1), 3).unwrap().is_some());
        let k8 = CycField::new(8);
        // sqrt(17) is not in Q(mu_8)
        assert!(is_dth_power_cyclotomic(&k8.from_integer(289), 4).unwrap().is_none());
        // 4 = (sqrt 2)^4 is a 4th power in Q(mu_8)
        let root = is_dth_power_cyclotomic(&k8.from_integer(4), 4).unwrap();
        assert_eq!(root.expect("4 is a 4th power in Q(mu_8)").pow(4), k8.from_integer(4));
    }

    #[test]
    fn dth_power_with_denominators() {
        let k4 = CycField::new(4);
        // -4/81 has fourth root (1+i)/3
        let alpha = k4.from_rational(&rat(-4, 81));
        let root = is_dth_power_cyclotomic(&alpha, 4).unwrap().expect("root exists");
        assert_eq!(root.pow(4), alpha);
    }

    #[test]
    fn embedding_consistency() {
        let k21 = CycField::new(21);
        let a = k21.zeta_pow(5).add(&k21.from_integer(3));
        let b = k21.zeta_pow(2).sub(&k21.from_integer(1)).scale(&rat(2, 3));
        let prod = a.mul(&b);
        let prec = 128;
        let ea = a.numeric_embeddings(prec);
        let eb = b.numeric_embeddings(prec);
        let ep = prod.numeric_embeddings(prec);
        for ((t1, va), ((t2, vb), (t3, vp))) in ea.iter().zip(eb.iter().zip(ep.iter())) {
            assert_eq!(t1, t2);
            assert_eq!(t1, t3);
            let prod_numeric = va.mul(vb);
            let diff = prod_numeric.sub(vp);
            let point = diff.re.magnitude() + diff.im.magnitude();
            assert!(point <= diff.err, "embedding consistency at t={t1}");
        }
    }
}
