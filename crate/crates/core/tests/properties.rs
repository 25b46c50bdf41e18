//! Cross-module invariants: round-trip and multiplicativity properties as
//! proptests, plus the deterministic smoke tests that tie the modules
//! together (local-global necessity, verdict invariance, prediction
//! soundness, and the counting/cohomology link).

use num_bigint::BigInt;
use proptest::prelude::*;

use hasse_lines::arith::{factor, is_dth_power_rational, Rat};
use hasse_lines::cohomology::{hasse_principle_predicted, Prediction};
use hasse_lines::config::Config;
use hasse_lines::counting::failing_prime_pair;
use hasse_lines::cyclotomic::{is_dth_power_cyclotomic, CycField};
use hasse_lines::galois::{hasse_verdict, Verdict};
use hasse_lines::hilbert::{has_line_locally, has_line_over, DiagonalSurface};
use hasse_lines::local::Place;

fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn factor_reconstructs(n in (-(1i64 << 40)..(1i64 << 40)).prop_filter("nonzero", |n| *n != 0)) {
        let f = factor(&BigInt::from(n)).unwrap();
        prop_assert_eq!(f.reconstruct(), BigInt::from(n));
    }

    #[test]
    fn rational_power_round_trip(
        num in -20i64..=20,
        den in 1i64..=12,
        d in 1u32..=12,
    ) {
        prop_assume!(num != 0);
        let a = rat(num, den);
        let ad = num_traits::pow::pow(a.clone(), d as usize);
        if !(a < rat(0, 1) && d % 2 == 0) {
            let root = is_dth_power_rational(&ad, d).unwrap().expect("a^d is a d-th power");
            prop_assert_eq!(num_traits::pow::pow(root, d as usize), ad);
        }
    }

    #[test]
    fn rational_power_multiplicative(
        a_num in 1i64..=12, a_den in 1i64..=6,
        b_num in -12i64..=-1, b_den in 1i64..=6,
        d in 2u32..=6,
    ) {
        let a = num_traits::pow::pow(rat(a_num, a_den), d as usize);
        let b = num_traits::pow::pow(rat(b_num, b_den), d as usize);
        let ra = is_dth_power_rational(&a, d).unwrap();
        let rb = is_dth_power_rational(&b, d).unwrap();
        if ra.is_some() && rb.is_some() {
            prop_assert!(is_dth_power_rational(&(a * b), d).unwrap().is_some());
        }
    }

    #[test]
    fn cyclotomic_power_completeness(
        m in prop::sample::select(vec![3u64, 4, 5, 8]),
        c0 in -4i64..=4, c1 in -4i64..=4,
        d in 2u32..=8,
    ) {
        let field = CycField::new(m);
        let beta = field
            .from_integer(c0)
            .add(&field.zeta_pow(1).scale(&Rat::from(BigInt::from(c1))));
        prop_assume!(!beta.is_zero());
        let alpha = beta.pow(d as u64);
        let root = is_dth_power_cyclotomic(&alpha, d)
            .unwrap()
            .expect("beta^d must be recognized as a d-th power");
        prop_assert_eq!(root.pow(d as u64), alpha);
    }
}

fn q_surface(d: u32, a: [i64; 4]) -> DiagonalSurface {
    let f = CycField::rationals();
    DiagonalSurface::new(
        d,
        f.clone(),
        [
            f.from_integer(a[0]),
            f.from_integer(a[1]),
            f.from_integer(a[2]),
            f.from_integer(a[3]),
        ],
    )
    .unwrap()
}

/// Local-global necessity, statistically: when the global test says no,
/// some completely split prime below 10^4 rejects the residue. Documented
/// exceptions are tolerated (this is a smoke test, not a theorem).
#[test]
fn local_global_necessity_smoke() {
    let mut exceptions: Vec<String> = Vec::new();
    let cases: Vec<(u64, i64, i64, u32)> = vec![
        (3, 2, 0, 3),
        (3, 14, 21, 3),
        (3, 5, 1, 2),
        (4, 3, 1, 2),
        (4, -4, 0, 8),
        (5, 2, 3, 5),
        (8, 17, 0, 2),
        (8, 3, -2, 4),
    ];
    for (m, c0, c1, d) in cases {
        let field = CycField::new(m);
        let alpha = field
            .from_integer(c0)
            .add(&field.zeta_pow(1).scale(&Rat::from(BigInt::from(c1))));
        if alpha.is_zero() || is_dth_power_cyclotomic(&alpha, d).unwrap().is_some() {
            continue;
        }
        // scan split primes ell = 1 mod lcm(m, d): residue must fail to be
        // a d-th power at some prime above some ell
        let modulus = num_integer::lcm(num_integer::lcm(m, d as u64), 2);
        let mut found = false;
        let mut ell = 1u64;
        'scan: while ell < 10_000 {
            ell += modulus;
            if !hasse_lines::arith::is_prime_u64(ell) {
                continue;
            }
            for pr in hasse_lines::cyclotomic::factor_prime(ell, &field) {
                let fqf = pr.residue_field();
                let ints = match alpha.integer_coeffs() {
                    Some(v) => v,
                    None => continue 'scan,
                };
                let res = pr.reduce(&ints);
                if fqf.is_zero(&res) {
                    continue;
                }
                let q1 = fqf.q() - 1;
                let g = num_integer::gcd(d as u128, q1);
                if fqf.pow(&res, q1 / g) != fqf.one() {
                    found = true;
                    break 'scan;
                }
            }
        }
        if !found {
            exceptions.push(format!("m={m}, alpha={c0}+{c1}z, d={d}"));
        }
    }
    if !exceptions.is_empty() {
        println!("local-global smoke exceptions (allowed, documented): {exceptions:?}");
    }
    assert!(
        exceptions.len() <= 1,
        "too many local-global smoke failures: {exceptions:?}"
    );
}

/// The verdict is invariant under coordinate permutations and under
/// twisting coefficients by d-th powers.
#[test]
fn verdict_invariance_under_symmetries() {
    let cfg = Config::default();
    let base = q_surface(4, [1, 4, -289, -1156]);
    let base_verdict = hasse_verdict(&base, &cfg).unwrap().name().to_string();
    assert_eq!(base_verdict, "HasseFailure");
    // permutations of the coefficient vector
    for perm in [[1usize, 0, 3, 2], [2, 3, 0, 1], [3, 1, 2, 0]] {
        let f = CycField::rationals();
        let coeffs = [
            base.coeffs[perm[0]].clone(),
            base.coeffs[perm[1]].clone(),
            base.coeffs[perm[2]].clone(),
            base.coeffs[perm[3]].clone(),
        ];
        let s = DiagonalSurface::new(4, f, coeffs).unwrap();
        assert_eq!(
            hasse_verdict(&s, &cfg).unwrap().name(),
            base_verdict,
            "permutation {perm:?}"
        );
    }
    // d-th power twists: a_i -> c^d a_i
    let twisted = q_surface(4, [1, 4 * 16, -289, -1156 * 81]);
    assert_eq!(hasse_verdict(&twisted, &cfg).unwrap().name(), base_verdict);
    // and a global-line surface stays a global-line surface
    let fermat = q_surface(3, [1, 1, 1, 1]);
    let fermat_twisted = q_surface(3, [27, 1, 8, 1000]);
    assert_eq!(
        hasse_verdict(&fermat, &cfg).unwrap().name(),
        hasse_verdict(&fermat_twisted, &cfg).unwrap().name()
    );
}

/// Soundness direction of the main theorem across a corpus: a HasseFailure
/// verdict can only happen where the prediction allows counter-examples.
#[test]
fn hasse_failure_implies_prediction() {
    let cfg = Config::default();
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0xFACADE);
    let mut failures = 0;
    for _ in 0..60 {
        let d = *[3u32, 4].iter().nth(rng.gen_range(0..2)).unwrap();
        let mut coeff = || loop {
            let c: i64 = rng.gen_range(-30..=30);
            if c != 0 {
                return c;
            }
        };
        let s = q_surface(d, [coeff(), coeff(), coeff(), coeff()]);
        if let Verdict::HasseFailure(_) = hasse_verdict(&s, &cfg).unwrap() {
            failures += 1;
            let pred = hasse_principle_predicted(&s.field, d).prediction;
            assert_eq!(pred, Prediction::CounterexamplesExist, "{}", s.describe());
        }
    }
    // the worked example also counts
    let s = q_surface(4, [1, 4, -289, -1156]);
    assert!(matches!(hasse_verdict(&s, &cfg).unwrap(), Verdict::HasseFailure(_)));
    assert_eq!(
        hasse_principle_predicted(&CycField::rationals(), 4).prediction,
        Prediction::CounterexamplesExist
    );
    println!("random corpus HasseFailures seen: {failures}");
}

/// Global line implies a line at every supported place (spot check).
#[test]
fn global_implies_everywhere_local() {
    let cfg = Config::default();
    let s = q_surface(3, [1, 8, 27, 64]);
    assert!(has_line_over(&s, &s.field, &cfg).unwrap().is_some());
    assert!(has_line_locally(&s, &Place::Real, &cfg).unwrap());
    let mut ell = 1u64;
    while ell < 100 {
        ell = {
            let mut c = ell + 1;
            while !hasse_lines::arith::is_prime_u64(c) {
                c += 1;
            }
            c
        };
        assert!(
            has_line_locally(&s, &Place::RationalPrime(ell), &cfg).unwrap(),
            "global line but no local line at {ell}"
        );
    }
}

/// Counting/cohomology link: whenever an odd d <= 99 admits a pair
/// q = 1 mod p, the prediction over Q(mu_{p^n}) allows counter-examples.
#[test]
fn counting_cohomology_link() {
    for d in (3..=99u64).step_by(2) {
        if let Some((p, _q)) = failing_prime_pair(d) {
            let mut n = 0u32;
            let mut dd = d;
            while dd % p == 0 {
                dd /= p;
                n += 1;
            }
            let field = CycField::new(p.pow(n));
            let pred = hasse_principle_predicted(&field, d as u32).prediction;
            assert_eq!(
                pred,
                Prediction::CounterexamplesExist,
                "d = {d} over Q(mu_{})",
                p.pow(n)
            );
        }
    }
}
