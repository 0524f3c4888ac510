use crate::ast::Span;
use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum ParseError {
    #[error("parse error at {line}:{col}: expected {expected}")]
    Syntax { line: usize, col: usize, expected: String },
    #[error("unsupported construct `{feature}` at bytes {}..{}", span.start, span.end)]
    Unsupported { span: Span, feature: String },
}

#[derive(Debug, Clone, Error, PartialEq)]
pub enum ResolveError {
    #[error("no declaration matches `{query}`")]
    NotFound { query: String },
    #[error("query `{query}` is ambiguous: {candidates:?}")]
    Ambiguous { query: String, candidates: Vec<String> },
}

#[derive(Debug, Clone, Error, PartialEq)]
pub enum BindError {
    #[error("unresolved identifier `{name}` at bytes {}..{}", span.start, span.end)]
    Unresolved { name: String, span: Span },
    #[error("`{name}` is not assignable at bytes {}..{}", span.start, span.end)]
    BadAssignTarget { name: String, span: Span },
    #[error("call to undeclared function `{name}` at bytes {}..{}", span.start, span.end)]
    UnknownFunction { name: String, span: Span },
}
