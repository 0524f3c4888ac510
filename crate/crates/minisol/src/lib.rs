//! Frontend for a bounded Solidity subset: lexing, parsing into an AST with
//! stable preorder node ids and byte spans, canonical printing, name
//! resolution, and a tolerant brace-matching mode for files outside the
//! subset.
//!
//! The subset keeps Solidity 0.8 semantics where it matters for execution:
//! checked 256-bit arithmetic, floor division, zero-defaulting mappings, and
//! revert-style errors. Types are limited to `uint256`, `address`, `bool`,
//! and one- or two-level address-keyed mappings.

pub mod ast;
pub mod binder;
pub mod error;
pub mod json;
pub mod lexer;
pub mod parser;
pub mod printer;
pub mod resolve;
pub mod tolerant;
pub mod u256;

pub use ast::{
    isomorphic, BinaryOp, Block, ContractDef, ContractMember, Expr, FunctionDef, MemberKind,
    Meta, Mutability, NodeId, SourceUnit, Span, Statement, TypeName, UnaryOp, Visibility,
};
pub use error::{BindError, ParseError, ResolveError};
pub use parser::{parse, parse_expression, parse_statements};
pub use printer::{print, print_expr};
pub use resolve::{resolve, NodePath};
pub use u256::{Address, U256};
