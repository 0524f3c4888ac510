//! Bug taxonomy shared by every stage: four primary categories, ten
//! subcategories, the checker kind each subcategory instantiates, and the
//! finding/violation records that flow through the pipeline.

use minisol::NodeId;
use serde::{Deserialize, Serialize};
use std::fmt;

macro_rules! fmt_via_serde {
    () => {
        fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            let v = serde_json::to_value(self).map_err(|_| fmt::Error)?;
            write!(f, "{}", v.as_str().ok_or(fmt::Error)?)
        }
    };
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub enum PrimaryCategory {
    PriceOracleManipulation,
    UnauthorizedBehavior,
    InsecureCalculatingLogic,
    IncorrectControlMechanism,
}

impl PrimaryCategory {
    pub const ALL: [PrimaryCategory; 4] = [
        PrimaryCategory::PriceOracleManipulation,
        PrimaryCategory::UnauthorizedBehavior,
        PrimaryCategory::InsecureCalculatingLogic,
        PrimaryCategory::IncorrectControlMechanism,
    ];

    pub fn subcategories(&self) -> Vec<Subcategory> {
        Subcategory::ALL
            .iter()
            .copied()
            .filter(|s| s.parent() == *self)
            .collect()
    }
}

impl fmt::Display for PrimaryCategory {
    fmt_via_serde!();
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub enum Subcategory {
    AmmPriceOracleManipulation,
    NonAmmPriceOracleManipulation,
    ApprovalNotClear,
    UnauthorizedTransfer,
    WrongCheckpointOrder,
    WrongInterestRateOrder,
    RiskyFirstDeposit,
    ImproperDepositFeeHandling,
    WrongAmountLock,
    VoteManipulation,
}

impl Subcategory {
    pub const ALL: [Subcategory; 10] = [
        Subcategory::AmmPriceOracleManipulation,
        Subcategory::NonAmmPriceOracleManipulation,
        Subcategory::ApprovalNotClear,
        Subcategory::UnauthorizedTransfer,
        Subcategory::WrongCheckpointOrder,
        Subcategory::WrongInterestRateOrder,
        Subcategory::RiskyFirstDeposit,
        Subcategory::ImproperDepositFeeHandling,
        Subcategory::WrongAmountLock,
        Subcategory::VoteManipulation,
    ];

    /// Total map onto the four primary categories.
    pub fn parent(&self) -> PrimaryCategory {
        match self {
            Subcategory::AmmPriceOracleManipulation | Subcategory::NonAmmPriceOracleManipulation => {
                PrimaryCategory::PriceOracleManipulation
            }
            Subcategory::ApprovalNotClear | Subcategory::UnauthorizedTransfer => {
                PrimaryCategory::UnauthorizedBehavior
            }
            Subcategory::WrongCheckpointOrder
            | Subcategory::WrongInterestRateOrder
            | Subcategory::RiskyFirstDeposit => PrimaryCategory::InsecureCalculatingLogic,
            Subcategory::ImproperDepositFeeHandling
            | Subcategory::WrongAmountLock
            | Subcategory::VoteManipulation => PrimaryCategory::IncorrectControlMechanism,
        }
    }

    /// Total map onto the six checker kinds.
    pub fn checker_kind(&self) -> CheckerKind {
        match self {
            Subcategory::AmmPriceOracleManipulation => CheckerKind::PriceChangeChecker,
            Subcategory::NonAmmPriceOracleManipulation => CheckerKind::ExchangeRateChecker,
            Subcategory::ApprovalNotClear
            | Subcategory::UnauthorizedTransfer
            | Subcategory::ImproperDepositFeeHandling => CheckerKind::TokenChangeChecker,
            Subcategory::WrongCheckpointOrder | Subcategory::WrongInterestRateOrder => {
                CheckerKind::StatementOrderChecker
            }
            Subcategory::RiskyFirstDeposit => CheckerKind::ShareSafetyChecker,
            Subcategory::WrongAmountLock | Subcategory::VoteManipulation => {
                CheckerKind::StateChangeChecker
            }
        }
    }

    pub fn parse_list(spec: &str) -> Result<Vec<Subcategory>, String> {
        if spec.trim() == "all" {
            return Ok(Subcategory::ALL.to_vec());
        }
        spec.split(',')
            .map(|part| {
                let part = part.trim();
                serde_json::from_value(serde_json::Value::String(part.to_string()))
                    .map_err(|_| format!("unknown bug subcategory `{part}`"))
            })
            .collect()
    }
}

impl fmt::Display for Subcategory {
    fmt_via_serde!();
}

/// The six invariant checker templates.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub enum CheckerKind {
    PriceChangeChecker,
    ExchangeRateChecker,
    TokenChangeChecker,
    StatementOrderChecker,
    ShareSafetyChecker,
    StateChangeChecker,
}

impl CheckerKind {
    pub const ALL: [CheckerKind; 6] = [
        CheckerKind::PriceChangeChecker,
        CheckerKind::ExchangeRateChecker,
        CheckerKind::TokenChangeChecker,
        CheckerKind::StatementOrderChecker,
        CheckerKind::ShareSafetyChecker,
        CheckerKind::StateChangeChecker,
    ];
}

impl fmt::Display for CheckerKind {
    fmt_via_serde!();
}

/// Which flow produced a finding; fusion upgrades matching pairs to `Fused`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub enum Provenance {
    Fused,
    Auditor,
    Attacker,
}

impl Provenance {
    /// Higher wins during deduplication.
    pub fn precedence(&self) -> u8 {
        match self {
            Provenance::Fused => 2,
            Provenance::Auditor => 1,
            Provenance::Attacker => 0,
        }
    }
}

/// Exact vote fraction, kept rational so findings serialize bit-exactly.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Confidence {
    pub num: u32,
    pub den: u32,
}

impl Confidence {
    pub fn new(num: u32, den: u32) -> Confidence {
        debug_assert!(den > 0 && num <= den);
        Confidence { num, den }
    }

    pub fn as_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

/// A potentially vulnerable function, as produced by analysis and fusion.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct Finding {
    pub contract_id: String,
    pub function_name: String,
    pub function_id: NodeId,
    pub subcategory: Subcategory,
    pub provenance: Provenance,
    pub confidence: Confidence,
}

/// A checker violation with everything needed to replay it from genesis.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct ViolationReport {
    pub checker_id: String,
    pub subcategory: Subcategory,
    pub function_name: String,
    pub reproducer: Vec<crate::backend::Transaction>,
    pub pre_state_digest: String,
    pub post_state_digest: String,
    pub executions_until_violation: u64,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parent_map_is_total_and_matches_expected_members() {
        assert_eq!(
            Subcategory::AmmPriceOracleManipulation.parent(),
            PrimaryCategory::PriceOracleManipulation
        );
        assert_eq!(Subcategory::ApprovalNotClear.parent(), PrimaryCategory::UnauthorizedBehavior);
        assert_eq!(
            Subcategory::RiskyFirstDeposit.parent(),
            PrimaryCategory::InsecureCalculatingLogic
        );
        // surjective onto the 4 primaries; all 10 covered
        let mut seen = std::collections::BTreeSet::new();
        for s in Subcategory::ALL {
            seen.insert(s.parent());
        }
        assert_eq!(seen.len(), 4);
        assert_eq!(Subcategory::ALL.len(), 10);
    }

    #[test]
    fn checker_kind_map_is_total() {
        assert_eq!(
            Subcategory::AmmPriceOracleManipulation.checker_kind(),
            CheckerKind::PriceChangeChecker
        );
        assert_eq!(
            Subcategory::RiskyFirstDeposit.checker_kind(),
            CheckerKind::ShareSafetyChecker
        );
        assert_eq!(
            Subcategory::WrongCheckpointOrder.checker_kind(),
            CheckerKind::StatementOrderChecker
        );
        let mut kinds = std::collections::BTreeSet::new();
        for s in Subcategory::ALL {
            kinds.insert(s.checker_kind());
        }
        assert_eq!(kinds.len(), 6, "all six checker kinds are reachable");
    }

    #[test]
    fn primary_subcategory_groups() {
        assert_eq!(
            PrimaryCategory::InsecureCalculatingLogic.subcategories(),
            vec![
                Subcategory::WrongCheckpointOrder,
                Subcategory::WrongInterestRateOrder,
                Subcategory::RiskyFirstDeposit,
            ]
        );
        assert_eq!(PrimaryCategory::PriceOracleManipulation.subcategories().len(), 2);
    }

    #[test]
    fn finding_serializes_bit_exactly() {
        let f = Finding {
            contract_id: "pool::SimplePool".into(),
            function_name: "transferFrom".into(),
            function_id: 17,
            subcategory: Subcategory::ApprovalNotClear,
            provenance: Provenance::Fused,
            confidence: Confidence::new(4, 5),
        };
        let json = serde_json::to_string(&f).unwrap();
        let back: Finding = serde_json::from_str(&json).unwrap();
        assert_eq!(back, f);
        assert_eq!(serde_json::to_string(&back).unwrap(), json);
    }

    #[test]
    fn bug_scope_parsing() {
        assert_eq!(Subcategory::parse_list("all").unwrap().len(), 10);
        assert_eq!(
            Subcategory::parse_list("ApprovalNotClear,RiskyFirstDeposit").unwrap(),
            vec![Subcategory::ApprovalNotClear, Subcategory::RiskyFirstDeposit]
        );
        assert!(Subcategory::parse_list("NotABug").is_err());
    }
}
