//! Differential check of U256 arithmetic against a big-integer oracle,
//! including overflow/underflow cases that must report failure.

use minisol::U256;
use num_bigint::BigUint;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn to_big(v: &U256) -> BigUint {
    BigUint::from_bytes_be(&v.to_be_bytes())
}

fn from_big(v: &BigUint) -> Option<U256> {
    let bytes = v.to_bytes_be();
    if bytes.len() > 32 {
        return None;
    }
    let mut buf = [0u8; 32];
    buf[32 - bytes.len()..].copy_from_slice(&bytes);
    Some(U256::from_be_bytes(buf))
}

fn random_u256(rng: &mut StdRng) -> U256 {
    // mix of bit widths so small operands and near-max operands both appear
    let bits: usize = rng.gen_range(1..=256);
    let mut bytes = [0u8; 32];
    rng.fill(&mut bytes[..]);
    let keep_bytes = bits.div_ceil(8);
    for b in bytes.iter_mut().take(32 - keep_bytes) {
        *b = 0;
    }
    U256::from_be_bytes(bytes)
}

#[test]
fn differential_arithmetic_10k_pairs_per_operator() {
    let mut rng = StdRng::seed_from_u64(0x5eed_cafe);
    let modulus = BigUint::from(1u8) << 256;
    for _ in 0..10_000 {
        let a = random_u256(&mut rng);
        let b = random_u256(&mut rng);
        let (ba, bb) = (to_big(&a), to_big(&b));

        let sum = &ba + &bb;
        match a.checked_add(&b) {
            Some(v) => assert_eq!(to_big(&v), sum, "add {a} {b}"),
            None => assert!(sum >= modulus, "add should not overflow: {a} {b}"),
        }

        match a.checked_sub(&b) {
            Some(v) => assert_eq!(to_big(&v), &ba - &bb, "sub {a} {b}"),
            None => assert!(ba < bb, "sub should not underflow: {a} {b}"),
        }

        let prod = &ba * &bb;
        match a.checked_mul(&b) {
            Some(v) => assert_eq!(to_big(&v), prod, "mul {a} {b}"),
            None => assert!(prod >= modulus, "mul should not overflow: {a} {b}"),
        }

        match a.checked_div(&b) {
            Some(v) => assert_eq!(to_big(&v), &ba / &bb, "div {a} {b}"),
            None => assert!(bb == BigUint::from(0u8), "div only fails on zero divisor"),
        }

        match a.checked_rem(&b) {
            Some(v) => assert_eq!(to_big(&v), &ba % &bb, "rem {a} {b}"),
            None => assert!(bb == BigUint::from(0u8), "rem only fails on zero divisor"),
        }
    }
}

#[test]
fn boundary_operands() {
    let cases = [
        U256::ZERO,
        U256::ONE,
        U256::from_u64(2),
        U256::MAX,
        U256::MAX.checked_sub(&U256::ONE).unwrap(),
        U256::pow10(18).unwrap(),
        U256::pow10(24).unwrap(),
        U256::from_u128(u128::MAX),
    ];
    let modulus = BigUint::from(1u8) << 256;
    for a in &cases {
        for b in &cases {
            let (ba, bb) = (to_big(a), to_big(b));
            match a.checked_mul(b) {
                Some(v) => assert_eq!(to_big(&v), &ba * &bb),
                None => assert!(&ba * &bb >= modulus),
            }
            if !b.is_zero() {
                let q = a.checked_div(b).unwrap();
                let r = a.checked_rem(b).unwrap();
                assert_eq!(to_big(&q), &ba / &bb);
                assert_eq!(to_big(&r), &ba % &bb);
                // q*b + r == a
                let back = from_big(&(&to_big(&q) * &bb + to_big(&r))).unwrap();
                assert_eq!(back, *a);
            }
        }
    }
}

#[test]
fn decimal_strings_agree_with_oracle() {
    let mut rng = StdRng::seed_from_u64(7);
    for _ in 0..500 {
        let a = random_u256(&mut rng);
        assert_eq!(a.to_string(), to_big(&a).to_str_radix(10));
    }
}
