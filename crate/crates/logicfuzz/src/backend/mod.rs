//! Deterministic contract execution behind a backend interface. The builtin
//! backend interprets parsed subset contracts directly; the external backend
//! drives a child process over newline-delimited JSON (see [`protocol`]).
//!
//! States are content-addressed: every execution result is snapshotted under
//! its digest, and any digest a backend has produced can be restored exactly.

pub mod builtin;
pub mod interp;
pub mod protocol;

pub use builtin::BuiltinBackend;
pub use protocol::ExternalBackend;

use minisol::{Address, Span, U256};
use serde::{Deserialize, Serialize};
use sha2::{Digest as _, Sha256};
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

/// The eight synthetic accounts used for deployment and fuzzing.
#[derive(Clone, Copy, Debug)]
pub struct AddressBook;

impl AddressBook {
    pub const ATTACKER: Address = Self::nth(1);
    pub const VICTIM: Address = Self::nth(2);
    pub const POOL: Address = Self::nth(3);
    pub const OWNER: Address = Self::nth(4);

    const fn nth(n: u8) -> Address {
        let mut bytes = [0u8; 20];
        bytes[19] = n;
        Address(bytes)
    }

    pub fn all() -> [Address; 8] {
        [
            Self::nth(1),
            Self::nth(2),
            Self::nth(3),
            Self::nth(4),
            Self::nth(5),
            Self::nth(6),
            Self::nth(7),
            Self::nth(8),
        ]
    }

    /// Externally-owned accounts: everything except the pool (contract) slot.
    pub fn eoas() -> [Address; 7] {
        [
            Self::nth(1),
            Self::nth(2),
            Self::nth(4),
            Self::nth(5),
            Self::nth(6),
            Self::nth(7),
            Self::nth(8),
        ]
    }

    /// Addresses contracts are deployed at: the pool slot first, then spares
    /// from the top for multi-contract files.
    pub fn contract_slots() -> [Address; 4] {
        [Self::nth(3), Self::nth(8), Self::nth(7), Self::nth(6)]
    }

    /// Genesis native balance for each EOA: 10^30 wei.
    pub fn genesis_balance() -> U256 {
        U256::pow10(30).expect("10^30 fits")
    }
}

/// Runtime value: the three value types of the subset.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Value {
    Uint256(U256),
    Bool(bool),
    Address(Address),
}

impl Value {
    pub fn type_name(&self) -> &'static str {
        match self {
            Value::Uint256(_) => "uint256",
            Value::Bool(_) => "bool",
            Value::Address(_) => "address",
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Uint256(v) => write!(f, "{v}"),
            Value::Bool(v) => write!(f, "{v}"),
            Value::Address(v) => write!(f, "{v}"),
        }
    }
}

/// One storage slot. Mappings are sparse: writing a zero removes the key, so
/// storage that was never touched and storage reset to zero digest equally.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum SlotValue {
    Uint(U256),
    Bool(bool),
    Addr(Address),
    MapAU(BTreeMap<Address, U256>),
    MapAAU(BTreeMap<Address, BTreeMap<Address, U256>>),
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ContractState {
    pub address: Address,
    pub vars: BTreeMap<String, SlotValue>,
}

/// Full world: contract storage plus native balances. Zero balances are not
/// stored.
#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize, Deserialize)]
pub struct WorldState {
    pub contracts: BTreeMap<String, ContractState>,
    pub balances: BTreeMap<Address, U256>,
}

impl WorldState {
    pub fn balance(&self, addr: &Address) -> U256 {
        self.balances.get(addr).copied().unwrap_or(U256::ZERO)
    }

    pub fn set_balance(&mut self, addr: Address, value: U256) {
        if value.is_zero() {
            self.balances.remove(&addr);
        } else {
            self.balances.insert(addr, value);
        }
    }

    /// Content digest: equal states have equal digests by canonical
    /// serialization (sorted maps, fixed-width integers, no zero entries).
    pub fn digest(&self) -> StateDigest {
        let mut hasher = Sha256::new();
        for (name, c) in &self.contracts {
            hasher.update((name.len() as u32).to_be_bytes());
            hasher.update(name.as_bytes());
            hasher.update(c.address.0);
            for (var, slot) in &c.vars {
                hasher.update((var.len() as u32).to_be_bytes());
                hasher.update(var.as_bytes());
                match slot {
                    SlotValue::Uint(v) => {
                        hasher.update([0u8]);
                        hasher.update(v.to_be_bytes());
                    }
                    SlotValue::Bool(b) => {
                        hasher.update([1u8, *b as u8]);
                    }
                    SlotValue::Addr(a) => {
                        hasher.update([2u8]);
                        hasher.update(a.0);
                    }
                    SlotValue::MapAU(m) => {
                        hasher.update([3u8]);
                        hasher.update((m.len() as u32).to_be_bytes());
                        for (k, v) in m {
                            hasher.update(k.0);
                            hasher.update(v.to_be_bytes());
                        }
                    }
                    SlotValue::MapAAU(m) => {
                        hasher.update([4u8]);
                        hasher.update((m.len() as u32).to_be_bytes());
                        for (k, inner) in m {
                            hasher.update(k.0);
                            hasher.update((inner.len() as u32).to_be_bytes());
                            for (k2, v) in inner {
                                hasher.update(k2.0);
                                hasher.update(v.to_be_bytes());
                            }
                        }
                    }
                }
            }
        }
        hasher.update([0xffu8]);
        for (addr, bal) in &self.balances {
            hasher.update(addr.0);
            hasher.update(bal.to_be_bytes());
        }
        let out = hasher.finalize();
        let mut bytes = [0u8; 32];
        bytes.copy_from_slice(&out);
        StateDigest(bytes)
    }
}

/// SHA-256 content address of a [`WorldState`].
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StateDigest(pub [u8; 32]);

impl StateDigest {
    pub fn to_hex(&self) -> String {
        self.0.iter().map(|b| format!("{b:02x}")).collect()
    }

    pub fn from_hex(s: &str) -> Option<StateDigest> {
        if s.len() != 64 || !s.bytes().all(|b| b.is_ascii_hexdigit()) {
            return None;
        }
        let mut bytes = [0u8; 32];
        for (i, byte) in bytes.iter_mut().enumerate() {
            *byte = u8::from_str_radix(&s[2 * i..2 * i + 2], 16).ok()?;
        }
        Some(StateDigest(bytes))
    }
}

impl fmt::Debug for StateDigest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", &self.to_hex()[..12])
    }
}

impl fmt::Display for StateDigest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_hex())
    }
}

impl Serialize for StateDigest {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_hex())
    }
}

impl<'de> Deserialize<'de> for StateDigest {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        StateDigest::from_hex(&s)
            .ok_or_else(|| serde::de::Error::custom(format!("bad digest {s:?}")))
    }
}

/// A single external call into a deployed contract.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Transaction {
    pub caller: Address,
    pub contract: String,
    pub function: String,
    pub args: Vec<Value>,
    pub value: U256,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ExecStatus {
    Ok,
    Reverted { reason: String },
    /// A revert that originated inside instrumented (checker) code.
    CheckerError { reason: String },
}

impl ExecStatus {
    pub fn is_ok(&self) -> bool {
        matches!(self, ExecStatus::Ok)
    }
}

/// Branch-coverage point: (enclosing function node, branch node, arm taken).
pub type CovPoint = (u32, u32, bool);

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ExecResult {
    pub status: ExecStatus,
    /// Digest of the post-state; equals the pre-state digest on revert.
    pub state: StateDigest,
    pub coverage: std::collections::BTreeSet<CovPoint>,
    /// Alert ids fired by `__prom_alert`, in firing order; empty on revert.
    pub alerts: Vec<u64>,
    /// Abstract step count consumed by the call.
    pub gas_units: u64,
}

#[derive(Clone, Copy, Debug)]
pub struct ExecLimits {
    pub step_budget: u64,
    pub loop_cap: u64,
    pub call_depth: u32,
}

impl Default for ExecLimits {
    fn default() -> Self {
        ExecLimits { step_budget: 1 << 20, loop_cap: 1 << 16, call_depth: 64 }
    }
}

#[derive(Debug, Error)]
pub enum BackendError {
    #[error("constructor reverted: {0}")]
    ConstructorRevert(String),
    #[error("transaction does not type-check: {0}")]
    TypeError(String),
    #[error("unknown state digest {0}")]
    UnknownDigest(String),
    #[error("source is outside the executable subset: {0}")]
    SubsetRequired(String),
    #[error("no contract deployed under name `{0}`")]
    UnknownContract(String),
    #[error("backend process failed: {0}")]
    Crash(String),
    #[error("protocol error: {0}")]
    Protocol(String),
}

/// Deterministic execution interface shared by the builtin interpreter and
/// external executors.
pub trait ExecBackend {
    /// Parses and deploys instrumented source, returning the genesis digest.
    /// `checker_spans` mark instrumented byte ranges so reverts inside them
    /// classify as `CheckerError`.
    fn deploy(
        &mut self,
        source: &str,
        ctor_args: &[Value],
        checker_spans: &[Span],
    ) -> Result<StateDigest, BackendError>;

    fn execute(&mut self, base: &StateDigest, tx: &Transaction) -> Result<ExecResult, BackendError>;

    /// Restore validity check: `Ok` iff the digest was produced by this
    /// backend and can be executed from.
    fn restore(&self, digest: &StateDigest) -> Result<(), BackendError>;
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digest_ignores_zero_entries() {
        let mut a = WorldState::default();
        let mut b = WorldState::default();
        a.contracts.insert(
            "C".into(),
            ContractState { address: AddressBook::POOL, vars: BTreeMap::new() },
        );
        b.contracts.insert(
            "C".into(),
            ContractState { address: AddressBook::POOL, vars: BTreeMap::new() },
        );
        a.set_balance(AddressBook::ATTACKER, U256::from_u64(5));
        a.set_balance(AddressBook::ATTACKER, U256::ZERO);
        assert_eq!(a.digest(), b.digest());
    }

    #[test]
    fn digest_hex_roundtrip() {
        let d = WorldState::default().digest();
        assert_eq!(StateDigest::from_hex(&d.to_hex()), Some(d));
    }

    #[test]
    fn transaction_serde_shape() {
        let tx = Transaction {
            caller: AddressBook::ATTACKER,
            contract: "SimplePool".into(),
            function: "transferFrom".into(),
            args: vec![
                Value::Address(AddressBook::VICTIM),
                Value::Uint256(U256::from_u64(5)),
                Value::Bool(true),
            ],
            value: U256::ZERO,
        };
        let json = serde_json::to_value(&tx).unwrap();
        assert_eq!(json["args"][0]["address"], "0x0000000000000000000000000000000000000002");
        assert_eq!(json["args"][1]["uint256"], "5");
        assert_eq!(json["args"][2]["bool"], true);
        let back: Transaction = serde_json::from_value(json).unwrap();
        assert_eq!(back, tx);
    }
}
