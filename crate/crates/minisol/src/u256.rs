//! 256-bit unsigned integers with Solidity 0.8 checked semantics, plus the
//! 20-byte address type. Arithmetic never wraps: every operation reports
//! overflow/underflow so the interpreter can revert the way solc 0.8 does.

use serde::de::Error as DeError;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

/// Little-endian 4-limb unsigned 256-bit integer.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct U256([u64; 4]);

impl U256 {
    pub const ZERO: U256 = U256([0; 4]);
    pub const ONE: U256 = U256([1, 0, 0, 0]);
    pub const MAX: U256 = U256([u64::MAX; 4]);

    pub fn from_u64(v: u64) -> Self {
        U256([v, 0, 0, 0])
    }

    pub fn from_u128(v: u128) -> Self {
        U256([v as u64, (v >> 64) as u64, 0, 0])
    }

    pub fn as_u64(&self) -> Option<u64> {
        if self.0[1] == 0 && self.0[2] == 0 && self.0[3] == 0 {
            Some(self.0[0])
        } else {
            None
        }
    }

    pub fn as_u128(&self) -> Option<u128> {
        if self.0[2] == 0 && self.0[3] == 0 {
            Some(self.0[0] as u128 | (self.0[1] as u128) << 64)
        } else {
            None
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0 == [0; 4]
    }

    pub fn limbs(&self) -> &[u64; 4] {
        &self.0
    }

    pub fn from_limbs(limbs: [u64; 4]) -> Self {
        U256(limbs)
    }

    /// Position of the highest set bit plus one; 0 for zero.
    pub fn bits(&self) -> usize {
        for i in (0..4).rev() {
            if self.0[i] != 0 {
                return i * 64 + (64 - self.0[i].leading_zeros() as usize);
            }
        }
        0
    }

    pub fn bit(&self, i: usize) -> bool {
        debug_assert!(i < 256);
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    fn set_bit(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn shl1(&mut self) {
        let mut carry = 0u64;
        for limb in self.0.iter_mut() {
            let next = *limb >> 63;
            *limb = (*limb << 1) | carry;
            carry = next;
        }
    }

    pub fn checked_add(&self, rhs: &U256) -> Option<U256> {
        let mut out = [0u64; 4];
        let mut carry = 0u64;
        for i in 0..4 {
            let (a, c1) = self.0[i].overflowing_add(rhs.0[i]);
            let (b, c2) = a.overflowing_add(carry);
            out[i] = b;
            carry = (c1 as u64) + (c2 as u64);
        }
        if carry != 0 {
            None
        } else {
            Some(U256(out))
        }
    }

    pub fn checked_sub(&self, rhs: &U256) -> Option<U256> {
        let mut out = [0u64; 4];
        let mut borrow = 0u64;
        for i in 0..4 {
            let (a, b1) = self.0[i].overflowing_sub(rhs.0[i]);
            let (b, b2) = a.overflowing_sub(borrow);
            out[i] = b;
            borrow = (b1 as u64) + (b2 as u64);
        }
        if borrow != 0 {
            None
        } else {
            Some(U256(out))
        }
    }

    pub fn checked_mul(&self, rhs: &U256) -> Option<U256> {
        // Schoolbook 4x4 with 128-bit partials; accumulators cannot overflow
        // because each receives at most 8 terms below 2^64.
        let mut acc = [0u128; 8];
        for i in 0..4 {
            if self.0[i] == 0 {
                continue;
            }
            for j in 0..4 {
                if rhs.0[j] == 0 {
                    continue;
                }
                let p = self.0[i] as u128 * rhs.0[j] as u128;
                acc[i + j] += p & 0xFFFF_FFFF_FFFF_FFFF;
                acc[i + j + 1] += p >> 64;
            }
        }
        let mut out = [0u64; 4];
        let mut carry: u128 = 0;
        for (k, a) in acc.iter().enumerate() {
            let v = a + carry;
            let lo = v as u64;
            carry = v >> 64;
            if k < 4 {
                out[k] = lo;
            } else if lo != 0 {
                return None;
            }
        }
        if carry != 0 {
            None
        } else {
            Some(U256(out))
        }
    }

    /// Quotient and remainder; `None` when the divisor is zero.
    pub fn divmod(&self, d: &U256) -> Option<(U256, U256)> {
        if d.is_zero() {
            return None;
        }
        if self < d {
            return Some((U256::ZERO, *self));
        }
        if let Some(dv) = d.as_u64() {
            let mut q = [0u64; 4];
            let mut rem: u128 = 0;
            for i in (0..4).rev() {
                let cur = (rem << 64) | self.0[i] as u128;
                q[i] = (cur / dv as u128) as u64;
                rem = cur % dv as u128;
            }
            return Some((U256(q), U256::from_u128(rem)));
        }
        if let (Some(a), Some(b)) = (self.as_u128(), d.as_u128()) {
            return Some((U256::from_u128(a / b), U256::from_u128(a % b)));
        }
        let mut q = U256::ZERO;
        let mut r = U256::ZERO;
        for i in (0..self.bits()).rev() {
            r.shl1();
            if self.bit(i) {
                r.0[0] |= 1;
            }
            if r >= *d {
                r = r.checked_sub(d).expect("r >= d");
                q.set_bit(i);
            }
        }
        Some((q, r))
    }

    pub fn checked_div(&self, rhs: &U256) -> Option<U256> {
        self.divmod(rhs).map(|(q, _)| q)
    }

    pub fn checked_rem(&self, rhs: &U256) -> Option<U256> {
        self.divmod(rhs).map(|(_, r)| r)
    }

    /// 10^k, or `None` when it exceeds 256 bits (k > 77).
    pub fn pow10(k: u32) -> Option<U256> {
        let ten = U256::from_u64(10);
        let mut acc = U256::ONE;
        for _ in 0..k {
            acc = acc.checked_mul(&ten)?;
        }
        Some(acc)
    }

    pub fn from_dec_str(s: &str) -> Result<U256, NumParseError> {
        if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
            return Err(NumParseError::BadDigit);
        }
        let ten = U256::from_u64(10);
        let mut acc = U256::ZERO;
        for b in s.bytes() {
            acc = acc
                .checked_mul(&ten)
                .and_then(|a| a.checked_add(&U256::from_u64((b - b'0') as u64)))
                .ok_or(NumParseError::Overflow)?;
        }
        Ok(acc)
    }

    pub fn from_hex_str(s: &str) -> Result<U256, NumParseError> {
        let s = s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")).unwrap_or(s);
        if s.is_empty() || s.len() > 64 || !s.bytes().all(|b| b.is_ascii_hexdigit()) {
            return Err(NumParseError::BadDigit);
        }
        let mut acc = U256::ZERO;
        for b in s.bytes() {
            let digit = (b as char).to_digit(16).unwrap() as u64;
            // shift left 4
            for _ in 0..4 {
                acc.shl1();
            }
            acc.0[0] |= digit;
        }
        Ok(acc)
    }

    /// `<mantissa>e<exp>` scientific literal, Solidity-style.
    pub fn from_scientific(mantissa: &str, exp: &str) -> Result<U256, NumParseError> {
        let m = U256::from_dec_str(mantissa)?;
        let e: u32 = exp.parse().map_err(|_| NumParseError::BadDigit)?;
        let scale = U256::pow10(e).ok_or(NumParseError::Overflow)?;
        m.checked_mul(&scale).ok_or(NumParseError::Overflow)
    }

    pub fn to_be_bytes(&self) -> [u8; 32] {
        let mut out = [0u8; 32];
        for i in 0..4 {
            out[32 - 8 * (i + 1)..32 - 8 * i].copy_from_slice(&self.0[i].to_be_bytes());
        }
        out
    }

    pub fn from_be_bytes(bytes: [u8; 32]) -> U256 {
        let mut limbs = [0u64; 4];
        for (i, limb) in limbs.iter_mut().enumerate() {
            let mut buf = [0u8; 8];
            buf.copy_from_slice(&bytes[32 - 8 * (i + 1)..32 - 8 * i]);
            *limb = u64::from_be_bytes(buf);
        }
        U256(limbs)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NumParseError {
    BadDigit,
    Overflow,
}

impl fmt::Display for NumParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NumParseError::BadDigit => write!(f, "invalid digit in numeric literal"),
            NumParseError::Overflow => write!(f, "numeric literal exceeds 256 bits"),
        }
    }
}

impl std::error::Error for NumParseError {}

impl PartialOrd for U256 {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for U256 {
    fn cmp(&self, other: &Self) -> Ordering {
        for i in (0..4).rev() {
            match self.0[i].cmp(&other.0[i]) {
                Ordering::Equal => continue,
                ord => return ord,
            }
        }
        Ordering::Equal
    }
}

impl fmt::Display for U256 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        // Peel 19 decimal digits at a time (10^19 fits in u64).
        let chunk = U256::from_u64(10_000_000_000_000_000_000);
        let mut parts: Vec<String> = Vec::new();
        let mut cur = *self;
        while !cur.is_zero() {
            let (q, r) = cur.divmod(&chunk).expect("nonzero divisor");
            parts.push(r.as_u64().expect("remainder fits").to_string());
            cur = q;
        }
        let mut out = String::new();
        for (i, part) in parts.iter().rev().enumerate() {
            if i == 0 {
                out.push_str(part);
            } else {
                out.push_str(&"0".repeat(19 - part.len()));
                out.push_str(part);
            }
        }
        write!(f, "{out}")
    }
}

impl fmt::Debug for U256 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for U256 {
    type Err = NumParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.starts_with("0x") || s.starts_with("0X") {
            U256::from_hex_str(s)
        } else if let Some((m, e)) = s.split_once(['e', 'E']) {
            U256::from_scientific(m, e)
        } else {
            U256::from_dec_str(s)
        }
    }
}

impl From<u64> for U256 {
    fn from(v: u64) -> Self {
        U256::from_u64(v)
    }
}

impl Serialize for U256 {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for U256 {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        U256::from_str(&s).map_err(|e| D::Error::custom(format!("bad u256 {s:?}: {e}")))
    }
}

/// 20-byte account address.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Address(pub [u8; 20]);

impl Address {
    pub const ZERO: Address = Address([0; 20]);

    /// Parses `0x` + 40 hex digits.
    pub fn from_hex(s: &str) -> Option<Address> {
        let hex = s.strip_prefix("0x").or_else(|| s.strip_prefix("0X"))?;
        if hex.len() != 40 || !hex.bytes().all(|b| b.is_ascii_hexdigit()) {
            return None;
        }
        let mut out = [0u8; 20];
        for (i, byte) in out.iter_mut().enumerate() {
            *byte = u8::from_str_radix(&hex[2 * i..2 * i + 2], 16).ok()?;
        }
        Some(Address(out))
    }

    pub fn to_hex(&self) -> String {
        let mut s = String::with_capacity(42);
        s.push_str("0x");
        for b in self.0 {
            s.push_str(&format!("{b:02x}"));
        }
        s
    }
}

impl fmt::Display for Address {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_hex())
    }
}

impl fmt::Debug for Address {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_hex())
    }
}

impl Serialize for Address {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_hex())
    }
}

impl<'de> Deserialize<'de> for Address {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        Address::from_hex(&s).ok_or_else(|| D::Error::custom(format!("bad address {s:?}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dec_roundtrip() {
        for s in ["0", "1", "42", "1000000000000000000", "115792089237316195423570985008687907853269984665640564039457584007913129639935"] {
            assert_eq!(U256::from_dec_str(s).unwrap().to_string(), s);
        }
    }

    #[test]
    fn max_plus_one_overflows() {
        assert!(U256::MAX.checked_add(&U256::ONE).is_none());
        assert!(U256::ZERO.checked_sub(&U256::ONE).is_none());
    }

    #[test]
    fn scientific_literals() {
        assert_eq!(
            U256::from_scientific("1", "18").unwrap(),
            U256::from_dec_str("1000000000000000000").unwrap()
        );
        assert_eq!(U256::from_scientific("2", "18").unwrap().to_string(), "2000000000000000000");
        assert!(U256::from_scientific("1", "78").is_err());
    }

    #[test]
    fn division_paths_agree() {
        // one case per divmod path: short, u128, binary
        let big = U256::from_dec_str("340282366920938463463374607431768211457").unwrap(); // 2^128 + 1
        let small = U256::from_u64(7);
        let (q, r) = big.divmod(&small).unwrap();
        assert_eq!(q.checked_mul(&small).unwrap().checked_add(&r).unwrap(), big);

        let a = U256::from_u128(u128::MAX - 5);
        let b = U256::from_u128(1 << 80);
        let (q, r) = a.divmod(&b).unwrap();
        assert_eq!(q.checked_mul(&b).unwrap().checked_add(&r).unwrap(), a);

        let huge = U256::MAX;
        let div = U256::from_dec_str("340282366920938463463374607431768211456").unwrap(); // 2^128
        let (q, r) = huge.divmod(&div).unwrap();
        assert_eq!(q.checked_mul(&div).unwrap().checked_add(&r).unwrap(), huge);
        assert!(huge.divmod(&U256::ZERO).is_none());
    }

    #[test]
    fn addresses_parse_and_print() {
        let a = Address::from_hex("0x0000000000000000000000000000000000000001").unwrap();
        assert_eq!(a.to_hex(), "0x0000000000000000000000000000000000000001");
        assert!(Address::from_hex("0x123").is_none());
        let dead = Address::from_hex("0x000000000000000000000000000000000000dEaD").unwrap();
        assert_eq!(dead.to_hex(), "0x000000000000000000000000000000000000dead");
    }

    #[test]
    fn be_bytes_roundtrip() {
        let v = U256::from_dec_str("123456789012345678901234567890").unwrap();
        assert_eq!(U256::from_be_bytes(v.to_be_bytes()), v);
    }
}
