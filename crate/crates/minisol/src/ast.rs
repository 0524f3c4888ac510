//! AST for the bounded Solidity subset. Every node carries a preorder node id
//! and a byte span into the unit's raw text; child spans nest inside parents.

use crate::u256::{Address, U256};
use serde::{Deserialize, Serialize};

pub type NodeId = u32;

/// Half-open byte range `[start, end)` into the source text.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default, Serialize, Deserialize, PartialOrd, Ord, Hash)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

impl Span {
    pub fn new(start: usize, end: usize) -> Span {
        Span { start, end }
    }

    pub fn contains(&self, other: &Span) -> bool {
        self.start <= other.start && other.end <= self.end
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct Meta {
    pub id: NodeId,
    pub span: Span,
}

#[derive(Clone, Debug)]
pub struct SourceUnit {
    pub meta: Meta,
    pub path: String,
    pub pragma: Option<String>,
    pub contracts: Vec<ContractDef>,
    pub raw_text: String,
}

#[derive(Clone, Debug)]
pub struct ContractDef {
    pub meta: Meta,
    pub name: String,
    pub members: Vec<ContractMember>,
}

impl ContractDef {
    pub fn state_vars(&self) -> impl Iterator<Item = &StateVar> {
        self.members.iter().filter_map(|m| match m {
            ContractMember::Var(v) => Some(v),
            _ => None,
        })
    }

    pub fn functions(&self) -> impl Iterator<Item = &FunctionDef> {
        self.members.iter().filter_map(|m| match m {
            ContractMember::Function(f) => Some(f),
            _ => None,
        })
    }

    pub fn events(&self) -> impl Iterator<Item = &EventDecl> {
        self.members.iter().filter_map(|m| match m {
            ContractMember::Event(e) => Some(e),
            _ => None,
        })
    }

    pub fn function(&self, name: &str) -> Option<&FunctionDef> {
        self.functions().find(|f| !f.is_constructor && f.name == name)
    }

    pub fn constructor(&self) -> Option<&FunctionDef> {
        self.functions().find(|f| f.is_constructor)
    }
}

#[derive(Clone, Debug)]
pub enum ContractMember {
    Var(StateVar),
    Event(EventDecl),
    Function(FunctionDef),
}

#[derive(Clone, Debug)]
pub struct StateVar {
    pub meta: Meta,
    pub ty: TypeName,
    pub visibility: Visibility,
    pub name: String,
}

#[derive(Clone, Debug)]
pub struct EventDecl {
    pub meta: Meta,
    pub name: String,
    pub params: Vec<Param>,
}

#[derive(Clone, Debug)]
pub struct FunctionDef {
    pub meta: Meta,
    pub name: String,
    pub is_constructor: bool,
    pub params: Vec<Param>,
    pub visibility: Visibility,
    pub mutability: Mutability,
    pub returns: Option<TypeName>,
    pub body: Block,
}

impl FunctionDef {
    pub fn is_callable(&self) -> bool {
        !self.is_constructor
            && matches!(self.visibility, Visibility::Public | Visibility::External)
    }

    pub fn is_payable(&self) -> bool {
        matches!(self.mutability, Mutability::Payable)
    }
}

#[derive(Clone, Debug)]
pub struct Param {
    pub meta: Meta,
    pub ty: TypeName,
    pub name: String,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum TypeName {
    Uint256,
    Address,
    Bool,
    /// mapping(address => uint256)
    MapAddrUint,
    /// mapping(address => mapping(address => uint256))
    MapAddrMapAddrUint,
}

impl TypeName {
    pub fn is_mapping(&self) -> bool {
        matches!(self, TypeName::MapAddrUint | TypeName::MapAddrMapAddrUint)
    }

    pub fn source(&self) -> &'static str {
        match self {
            TypeName::Uint256 => "uint256",
            TypeName::Address => "address",
            TypeName::Bool => "bool",
            TypeName::MapAddrUint => "mapping(address => uint256)",
            TypeName::MapAddrMapAddrUint => "mapping(address => mapping(address => uint256))",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Visibility {
    Public,
    External,
    Internal,
    Private,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mutability {
    NonPayable,
    View,
    Pure,
    Payable,
}

#[derive(Clone, Debug)]
pub struct Block {
    pub meta: Meta,
    pub statements: Vec<Statement>,
}

#[derive(Clone, Debug)]
pub enum Statement {
    VarDecl {
        meta: Meta,
        ty: TypeName,
        name: String,
        init: Option<Expr>,
    },
    Assign {
        meta: Meta,
        target: Expr,
        value: Expr,
    },
    If {
        meta: Meta,
        cond: Expr,
        then_block: Block,
        else_block: Option<Block>,
    },
    While {
        meta: Meta,
        cond: Expr,
        body: Block,
    },
    For {
        meta: Meta,
        init: Option<Box<Statement>>,
        cond: Option<Expr>,
        post: Option<Box<Statement>>,
        body: Block,
    },
    Return {
        meta: Meta,
        value: Option<Expr>,
    },
    Require {
        meta: Meta,
        cond: Expr,
        message: Option<String>,
    },
    Assert {
        meta: Meta,
        cond: Expr,
    },
    Revert {
        meta: Meta,
        message: Option<String>,
    },
    ExprStmt {
        meta: Meta,
        expr: Expr,
    },
    Block(Block),
    /// `emit Event(args);`
    Emit {
        meta: Meta,
        event: String,
        args: Vec<Expr>,
    },
}

impl Statement {
    pub fn meta(&self) -> &Meta {
        match self {
            Statement::VarDecl { meta, .. }
            | Statement::Assign { meta, .. }
            | Statement::If { meta, .. }
            | Statement::While { meta, .. }
            | Statement::For { meta, .. }
            | Statement::Return { meta, .. }
            | Statement::Require { meta, .. }
            | Statement::Assert { meta, .. }
            | Statement::Revert { meta, .. }
            | Statement::ExprStmt { meta, .. }
            | Statement::Emit { meta, .. } => meta,
            Statement::Block(b) => &b.meta,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum BinaryOp {
    Add,
    Sub,
    Mul,
    Div,
    Mod,
    Lt,
    Le,
    Gt,
    Ge,
    Eq,
    Ne,
    And,
    Or,
}

impl BinaryOp {
    pub fn source(&self) -> &'static str {
        match self {
            BinaryOp::Add => "+",
            BinaryOp::Sub => "-",
            BinaryOp::Mul => "*",
            BinaryOp::Div => "/",
            BinaryOp::Mod => "%",
            BinaryOp::Lt => "<",
            BinaryOp::Le => "<=",
            BinaryOp::Gt => ">",
            BinaryOp::Ge => ">=",
            BinaryOp::Eq => "==",
            BinaryOp::Ne => "!=",
            BinaryOp::And => "&&",
            BinaryOp::Or => "||",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum UnaryOp {
    Not,
    Neg,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum MemberKind {
    /// `msg.sender`
    MsgSender,
    /// `msg.value`
    MsgValue,
    /// `address(this).balance`
    ThisBalance,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CallKind {
    /// Call to a function declared in the same contract.
    Internal,
    /// Interpreter intrinsic (`__prom_alert`).
    Builtin,
}

#[derive(Clone, Debug)]
pub enum Expr {
    IntLit { meta: Meta, value: U256 },
    AddrLit { meta: Meta, value: Address },
    BoolLit { meta: Meta, value: bool },
    Ident { meta: Meta, name: String },
    Member { meta: Meta, kind: MemberKind },
    Index { meta: Meta, base: Box<Expr>, index: Box<Expr> },
    Binary { meta: Meta, op: BinaryOp, lhs: Box<Expr>, rhs: Box<Expr> },
    Unary { meta: Meta, op: UnaryOp, operand: Box<Expr> },
    Call { meta: Meta, kind: CallKind, callee: String, args: Vec<Expr> },
}

impl Expr {
    pub fn meta(&self) -> &Meta {
        match self {
            Expr::IntLit { meta, .. }
            | Expr::AddrLit { meta, .. }
            | Expr::BoolLit { meta, .. }
            | Expr::Ident { meta, .. }
            | Expr::Member { meta, .. }
            | Expr::Index { meta, .. }
            | Expr::Binary { meta, .. }
            | Expr::Unary { meta, .. }
            | Expr::Call { meta, .. } => meta,
        }
    }

    /// Root identifier of an lvalue-shaped expression (`x` or `m[a][b]`).
    pub fn lvalue_root(&self) -> Option<&str> {
        match self {
            Expr::Ident { name, .. } => Some(name),
            Expr::Index { base, .. } => base.lvalue_root(),
            _ => None,
        }
    }

    /// All plain identifiers referenced anywhere in the expression.
    pub fn identifiers(&self) -> Vec<&str> {
        let mut out = Vec::new();
        self.collect_identifiers(&mut out);
        out
    }

    fn collect_identifiers<'a>(&'a self, out: &mut Vec<&'a str>) {
        match self {
            Expr::Ident { name, .. } => out.push(name),
            Expr::Index { base, index, .. } => {
                base.collect_identifiers(out);
                index.collect_identifiers(out);
            }
            Expr::Binary { lhs, rhs, .. } => {
                lhs.collect_identifiers(out);
                rhs.collect_identifiers(out);
            }
            Expr::Unary { operand, .. } => operand.collect_identifiers(out),
            Expr::Call { args, .. } => {
                for a in args {
                    a.collect_identifiers(out);
                }
            }
            _ => {}
        }
    }
}

// ---------------------------------------------------------------------------
// Generic traversal
// ---------------------------------------------------------------------------

/// One entry per AST node, visited in preorder.
pub fn walk_metas<'a>(unit: &'a SourceUnit, f: &mut dyn FnMut(&'a Meta, &'static str)) {
    f(&unit.meta, "SourceUnit");
    for c in &unit.contracts {
        f(&c.meta, "Contract");
        for m in &c.members {
            match m {
                ContractMember::Var(v) => f(&v.meta, "StateVar"),
                ContractMember::Event(e) => {
                    f(&e.meta, "Event");
                    for p in &e.params {
                        f(&p.meta, "Param");
                    }
                }
                ContractMember::Function(func) => {
                    f(&func.meta, if func.is_constructor { "Constructor" } else { "Function" });
                    for p in &func.params {
                        f(&p.meta, "Param");
                    }
                    walk_block_metas(&func.body, f);
                }
            }
        }
    }
}

fn walk_block_metas<'a>(block: &'a Block, f: &mut dyn FnMut(&'a Meta, &'static str)) {
    f(&block.meta, "Block");
    for s in &block.statements {
        walk_stmt_metas(s, f);
    }
}

fn walk_stmt_metas<'a>(stmt: &'a Statement, f: &mut dyn FnMut(&'a Meta, &'static str)) {
    match stmt {
        Statement::VarDecl { meta, init, .. } => {
            f(meta, "VarDecl");
            if let Some(e) = init {
                walk_expr_metas(e, f);
            }
        }
        Statement::Assign { meta, target, value } => {
            f(meta, "Assign");
            walk_expr_metas(target, f);
            walk_expr_metas(value, f);
        }
        Statement::If { meta, cond, then_block, else_block } => {
            f(meta, "If");
            walk_expr_metas(cond, f);
            walk_block_metas(then_block, f);
            if let Some(e) = else_block {
                walk_block_metas(e, f);
            }
        }
        Statement::While { meta, cond, body } => {
            f(meta, "While");
            walk_expr_metas(cond, f);
            walk_block_metas(body, f);
        }
        Statement::For { meta, init, cond, post, body } => {
            f(meta, "For");
            if let Some(s) = init {
                walk_stmt_metas(s, f);
            }
            if let Some(e) = cond {
                walk_expr_metas(e, f);
            }
            if let Some(s) = post {
                walk_stmt_metas(s, f);
            }
            walk_block_metas(body, f);
        }
        Statement::Return { meta, value } => {
            f(meta, "Return");
            if let Some(e) = value {
                walk_expr_metas(e, f);
            }
        }
        Statement::Require { meta, cond, .. } => {
            f(meta, "Require");
            walk_expr_metas(cond, f);
        }
        Statement::Assert { meta, cond } => {
            f(meta, "Assert");
            walk_expr_metas(cond, f);
        }
        Statement::Revert { meta, .. } => f(meta, "Revert"),
        Statement::ExprStmt { meta, expr } => {
            f(meta, "ExprStmt");
            walk_expr_metas(expr, f);
        }
        Statement::Block(b) => walk_block_metas(b, f),
        Statement::Emit { meta, args, .. } => {
            f(meta, "Emit");
            for a in args {
                walk_expr_metas(a, f);
            }
        }
    }
}

fn walk_expr_metas<'a>(expr: &'a Expr, f: &mut dyn FnMut(&'a Meta, &'static str)) {
    let kind = match expr {
        Expr::IntLit { .. } => "IntLit",
        Expr::AddrLit { .. } => "AddrLit",
        Expr::BoolLit { .. } => "BoolLit",
        Expr::Ident { .. } => "Ident",
        Expr::Member { .. } => "Member",
        Expr::Index { .. } => "Index",
        Expr::Binary { .. } => "Binary",
        Expr::Unary { .. } => "Unary",
        Expr::Call { .. } => "Call",
    };
    f(expr.meta(), kind);
    match expr {
        Expr::Index { base, index, .. } => {
            walk_expr_metas(base, f);
            walk_expr_metas(index, f);
        }
        Expr::Binary { lhs, rhs, .. } => {
            walk_expr_metas(lhs, f);
            walk_expr_metas(rhs, f);
        }
        Expr::Unary { operand, .. } => walk_expr_metas(operand, f),
        Expr::Call { args, .. } => {
            for a in args {
                walk_expr_metas(a, f);
            }
        }
        _ => {}
    }
}

/// Mutable preorder traversal used to renumber node ids after parsing.
pub(crate) fn walk_metas_mut(unit: &mut SourceUnit, f: &mut dyn FnMut(&mut Meta)) {
    f(&mut unit.meta);
    for c in &mut unit.contracts {
        f(&mut c.meta);
        for m in &mut c.members {
            match m {
                ContractMember::Var(v) => f(&mut v.meta),
                ContractMember::Event(e) => {
                    f(&mut e.meta);
                    for p in &mut e.params {
                        f(&mut p.meta);
                    }
                }
                ContractMember::Function(func) => {
                    f(&mut func.meta);
                    for p in &mut func.params {
                        f(&mut p.meta);
                    }
                    walk_block_mut(&mut func.body, f);
                }
            }
        }
    }
}

fn walk_block_mut(block: &mut Block, f: &mut dyn FnMut(&mut Meta)) {
    f(&mut block.meta);
    for s in &mut block.statements {
        walk_stmt_mut(s, f);
    }
}

fn walk_stmt_mut(stmt: &mut Statement, f: &mut dyn FnMut(&mut Meta)) {
    match stmt {
        Statement::VarDecl { meta, init, .. } => {
            f(meta);
            if let Some(e) = init {
                walk_expr_mut(e, f);
            }
        }
        Statement::Assign { meta, target, value } => {
            f(meta);
            walk_expr_mut(target, f);
            walk_expr_mut(value, f);
        }
        Statement::If { meta, cond, then_block, else_block } => {
            f(meta);
            walk_expr_mut(cond, f);
            walk_block_mut(then_block, f);
            if let Some(e) = else_block {
                walk_block_mut(e, f);
            }
        }
        Statement::While { meta, cond, body } => {
            f(meta);
            walk_expr_mut(cond, f);
            walk_block_mut(body, f);
        }
        Statement::For { meta, init, cond, post, body } => {
            f(meta);
            if let Some(s) = init {
                walk_stmt_mut(s, f);
            }
            if let Some(e) = cond {
                walk_expr_mut(e, f);
            }
            if let Some(s) = post {
                walk_stmt_mut(s, f);
            }
            walk_block_mut(body, f);
        }
        Statement::Return { meta, value } => {
            f(meta);
            if let Some(e) = value {
                walk_expr_mut(e, f);
            }
        }
        Statement::Require { meta, cond, .. } => {
            f(meta);
            walk_expr_mut(cond, f);
        }
        Statement::Assert { meta, cond } => {
            f(meta);
            walk_expr_mut(cond, f);
        }
        Statement::Revert { meta, .. } => f(meta),
        Statement::ExprStmt { meta, expr } => {
            f(meta);
            walk_expr_mut(expr, f);
        }
        Statement::Block(b) => walk_block_mut(b, f),
        Statement::Emit { meta, args, .. } => {
            f(meta);
            for a in args {
                walk_expr_mut(a, f);
            }
        }
    }
}

fn walk_expr_mut(expr: &mut Expr, f: &mut dyn FnMut(&mut Meta)) {
    match expr {
        Expr::IntLit { meta, .. }
        | Expr::AddrLit { meta, .. }
        | Expr::BoolLit { meta, .. }
        | Expr::Ident { meta, .. }
        | Expr::Member { meta, .. } => f(meta),
        Expr::Index { meta, base, index } => {
            f(meta);
            walk_expr_mut(base, f);
            walk_expr_mut(index, f);
        }
        Expr::Binary { meta, lhs, rhs, .. } => {
            f(meta);
            walk_expr_mut(lhs, f);
            walk_expr_mut(rhs, f);
        }
        Expr::Unary { meta, operand, .. } => {
            f(meta);
            walk_expr_mut(operand, f);
        }
        Expr::Call { meta, args, .. } => {
            f(meta);
            for a in args {
                walk_expr_mut(a, f);
            }
        }
    }
}

/// Assigns dense preorder node ids; returns the node count.
pub fn assign_preorder_ids(unit: &mut SourceUnit) -> u32 {
    let mut next: u32 = 0;
    walk_metas_mut(unit, &mut |meta| {
        meta.id = next;
        next += 1;
    });
    next
}

pub fn node_count(unit: &SourceUnit) -> u32 {
    let mut n = 0;
    walk_metas(unit, &mut |_, _| n += 1);
    n
}

// ---------------------------------------------------------------------------
// Structural (id/span-insensitive) equality
// ---------------------------------------------------------------------------

/// AST isomorphism: identical structure, names, and literal values; node ids
/// and spans may differ.
pub fn isomorphic(a: &SourceUnit, b: &SourceUnit) -> bool {
    a.pragma == b.pragma
        && a.contracts.len() == b.contracts.len()
        && a.contracts.iter().zip(&b.contracts).all(|(x, y)| contract_iso(x, y))
}

fn contract_iso(a: &ContractDef, b: &ContractDef) -> bool {
    a.name == b.name
        && a.members.len() == b.members.len()
        && a.members.iter().zip(&b.members).all(|(x, y)| match (x, y) {
            (ContractMember::Var(u), ContractMember::Var(v)) => {
                u.name == v.name && u.ty == v.ty && u.visibility == v.visibility
            }
            (ContractMember::Event(u), ContractMember::Event(v)) => {
                u.name == v.name
                    && u.params.len() == v.params.len()
                    && u.params.iter().zip(&v.params).all(|(p, q)| p.ty == q.ty && p.name == q.name)
            }
            (ContractMember::Function(u), ContractMember::Function(v)) => function_iso(u, v),
            _ => false,
        })
}

fn function_iso(a: &FunctionDef, b: &FunctionDef) -> bool {
    a.name == b.name
        && a.is_constructor == b.is_constructor
        && a.visibility == b.visibility
        && a.mutability == b.mutability
        && a.returns == b.returns
        && a.params.len() == b.params.len()
        && a.params.iter().zip(&b.params).all(|(p, q)| p.ty == q.ty && p.name == q.name)
        && block_iso(&a.body, &b.body)
}

fn block_iso(a: &Block, b: &Block) -> bool {
    a.statements.len() == b.statements.len()
        && a.statements.iter().zip(&b.statements).all(|(x, y)| stmt_iso(x, y))
}

fn stmt_iso(a: &Statement, b: &Statement) -> bool {
    use Statement::*;
    match (a, b) {
        (
            VarDecl { ty: t1, name: n1, init: i1, .. },
            VarDecl { ty: t2, name: n2, init: i2, .. },
        ) => t1 == t2 && n1 == n2 && opt_expr_iso(i1, i2),
        (Assign { target: t1, value: v1, .. }, Assign { target: t2, value: v2, .. }) => {
            expr_iso(t1, t2) && expr_iso(v1, v2)
        }
        (
            If { cond: c1, then_block: t1, else_block: e1, .. },
            If { cond: c2, then_block: t2, else_block: e2, .. },
        ) => {
            expr_iso(c1, c2)
                && block_iso(t1, t2)
                && match (e1, e2) {
                    (None, None) => true,
                    (Some(x), Some(y)) => block_iso(x, y),
                    _ => false,
                }
        }
        (While { cond: c1, body: b1, .. }, While { cond: c2, body: b2, .. }) => {
            expr_iso(c1, c2) && block_iso(b1, b2)
        }
        (
            For { init: i1, cond: c1, post: p1, body: b1, .. },
            For { init: i2, cond: c2, post: p2, body: b2, .. },
        ) => {
            (match (i1, i2) {
                (None, None) => true,
                (Some(x), Some(y)) => stmt_iso(x, y),
                _ => false,
            }) && opt_expr_iso(c1, c2)
                && match (p1, p2) {
                    (None, None) => true,
                    (Some(x), Some(y)) => stmt_iso(x, y),
                    _ => false,
                }
                && block_iso(b1, b2)
        }
        (Return { value: v1, .. }, Return { value: v2, .. }) => opt_expr_iso(v1, v2),
        (Require { cond: c1, message: m1, .. }, Require { cond: c2, message: m2, .. }) => {
            expr_iso(c1, c2) && m1 == m2
        }
        (Assert { cond: c1, .. }, Assert { cond: c2, .. }) => expr_iso(c1, c2),
        (Revert { message: m1, .. }, Revert { message: m2, .. }) => m1 == m2,
        (ExprStmt { expr: e1, .. }, ExprStmt { expr: e2, .. }) => expr_iso(e1, e2),
        (Block(b1), Block(b2)) => block_iso(b1, b2),
        (Emit { event: n1, args: a1, .. }, Emit { event: n2, args: a2, .. }) => {
            n1 == n2 && a1.len() == a2.len() && a1.iter().zip(a2).all(|(x, y)| expr_iso(x, y))
        }
        _ => false,
    }
}

fn opt_expr_iso(a: &Option<Expr>, b: &Option<Expr>) -> bool {
    match (a, b) {
        (None, None) => true,
        (Some(x), Some(y)) => expr_iso(x, y),
        _ => false,
    }
}

pub fn expr_iso(a: &Expr, b: &Expr) -> bool {
    use Expr::*;
    match (a, b) {
        (IntLit { value: v1, .. }, IntLit { value: v2, .. }) => v1 == v2,
        (AddrLit { value: v1, .. }, AddrLit { value: v2, .. }) => v1 == v2,
        (BoolLit { value: v1, .. }, BoolLit { value: v2, .. }) => v1 == v2,
        (Ident { name: n1, .. }, Ident { name: n2, .. }) => n1 == n2,
        (Member { kind: k1, .. }, Member { kind: k2, .. }) => k1 == k2,
        (Index { base: b1, index: i1, .. }, Index { base: b2, index: i2, .. }) => {
            expr_iso(b1, b2) && expr_iso(i1, i2)
        }
        (Binary { op: o1, lhs: l1, rhs: r1, .. }, Binary { op: o2, lhs: l2, rhs: r2, .. }) => {
            o1 == o2 && expr_iso(l1, l2) && expr_iso(r1, r2)
        }
        (Unary { op: o1, operand: e1, .. }, Unary { op: o2, operand: e2, .. }) => {
            o1 == o2 && expr_iso(e1, e2)
        }
        (
            Call { kind: k1, callee: c1, args: a1, .. },
            Call { kind: k2, callee: c2, args: a2, .. },
        ) => {
            k1 == k2
                && c1 == c2
                && a1.len() == a2.len()
                && a1.iter().zip(a2).all(|(x, y)| expr_iso(x, y))
        }
        _ => false,
    }
}
