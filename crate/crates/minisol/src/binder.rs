//! Static name resolution over a parsed unit: every identifier must resolve
//! to a local, parameter, or state variable, every internal call to a
//! declared function. Instrumentation runs this after splicing so an
//! out-of-scope checker fragment is rejected before execution.

use crate::ast::*;
use crate::error::BindError;
use std::collections::HashSet;

pub fn check(unit: &SourceUnit) -> Result<(), BindError> {
    for c in &unit.contracts {
        let state: HashSet<&str> = c.state_vars().map(|v| v.name.as_str()).collect();
        let fns: HashSet<&str> = c.functions().map(|f| f.name.as_str()).collect();
        for f in c.functions() {
            let mut scopes: Vec<Vec<String>> = Vec::new();
            scopes.push(f.params.iter().map(|p| p.name.clone()).collect());
            check_block(&f.body, &mut scopes, &state, &fns)?;
        }
    }
    Ok(())
}

fn check_block(
    b: &Block,
    scopes: &mut Vec<Vec<String>>,
    state: &HashSet<&str>,
    fns: &HashSet<&str>,
) -> Result<(), BindError> {
    scopes.push(Vec::new());
    for s in &b.statements {
        check_stmt(s, scopes, state, fns)?;
    }
    scopes.pop();
    Ok(())
}

fn check_stmt(
    s: &Statement,
    scopes: &mut Vec<Vec<String>>,
    state: &HashSet<&str>,
    fns: &HashSet<&str>,
) -> Result<(), BindError> {
    match s {
        Statement::VarDecl { name, init, .. } => {
            if let Some(e) = init {
                check_expr(e, scopes, state, fns)?;
            }
            scopes.last_mut().expect("scope").push(name.clone());
        }
        Statement::Assign { target, value, .. } => {
            if target.lvalue_root().is_none() {
                return Err(BindError::BadAssignTarget {
                    name: String::from("<expression>"),
                    span: target.meta().span,
                });
            }
            check_expr(target, scopes, state, fns)?;
            check_expr(value, scopes, state, fns)?;
        }
        Statement::If { cond, then_block, else_block, .. } => {
            check_expr(cond, scopes, state, fns)?;
            check_block(then_block, scopes, state, fns)?;
            if let Some(e) = else_block {
                check_block(e, scopes, state, fns)?;
            }
        }
        Statement::While { cond, body, .. } => {
            check_expr(cond, scopes, state, fns)?;
            check_block(body, scopes, state, fns)?;
        }
        Statement::For { init, cond, post, body, .. } => {
            scopes.push(Vec::new());
            if let Some(i) = init {
                check_stmt(i, scopes, state, fns)?;
            }
            if let Some(c) = cond {
                check_expr(c, scopes, state, fns)?;
            }
            if let Some(p) = post {
                check_stmt(p, scopes, state, fns)?;
            }
            check_block(body, scopes, state, fns)?;
            scopes.pop();
        }
        Statement::Return { value, .. } => {
            if let Some(e) = value {
                check_expr(e, scopes, state, fns)?;
            }
        }
        Statement::Require { cond, .. } | Statement::Assert { cond, .. } => {
            check_expr(cond, scopes, state, fns)?;
        }
        Statement::Revert { .. } => {}
        Statement::ExprStmt { expr, .. } => check_expr(expr, scopes, state, fns)?,
        Statement::Block(b) => check_block(b, scopes, state, fns)?,
        Statement::Emit { args, .. } => {
            for a in args {
                check_expr(a, scopes, state, fns)?;
            }
        }
    }
    Ok(())
}

fn check_expr(
    e: &Expr,
    scopes: &Vec<Vec<String>>,
    state: &HashSet<&str>,
    fns: &HashSet<&str>,
) -> Result<(), BindError> {
    match e {
        Expr::Ident { name, meta } => {
            let local = scopes.iter().any(|frame| frame.iter().any(|n| n == name));
            if !local && !state.contains(name.as_str()) {
                return Err(BindError::Unresolved { name: name.clone(), span: meta.span });
            }
        }
        Expr::Index { base, index, .. } => {
            check_expr(base, scopes, state, fns)?;
            check_expr(index, scopes, state, fns)?;
        }
        Expr::Binary { lhs, rhs, .. } => {
            check_expr(lhs, scopes, state, fns)?;
            check_expr(rhs, scopes, state, fns)?;
        }
        Expr::Unary { operand, .. } => check_expr(operand, scopes, state, fns)?,
        Expr::Call { kind, callee, args, meta } => {
            if *kind == CallKind::Internal && !fns.contains(callee.as_str()) {
                return Err(BindError::UnknownFunction { name: callee.clone(), span: meta.span });
            }
            for a in args {
                check_expr(a, scopes, state, fns)?;
            }
        }
        _ => {}
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse;

    #[test]
    fn resolved_unit_passes() {
        let src = r#"
contract C {
    uint256 public x;
    function f(uint256 a) public {
        uint256 y = a + x;
        x = y;
    }
}
"#;
        check(&parse("t.sol", src).unwrap()).unwrap();
    }

    #[test]
    fn unresolved_identifier_fails() {
        let src = "contract C { function f() public { x = 1; } }";
        match check(&parse("t.sol", src).unwrap()) {
            Err(BindError::Unresolved { name, .. }) => assert_eq!(name, "x"),
            other => panic!("expected Unresolved, got {other:?}"),
        }
    }

    #[test]
    fn block_scoping_ends_at_close() {
        let src = "contract C { function f() public { if (true) { uint256 y = 1; y = y; } uint256 z = y; z = z; } }";
        assert!(check(&parse("t.sol", src).unwrap()).is_err());
    }

    #[test]
    fn unknown_internal_call_fails() {
        let src = "contract C { function f() public { g(); } }";
        match check(&parse("t.sol", src).unwrap()) {
            Err(BindError::UnknownFunction { name, .. }) => assert_eq!(name, "g"),
            other => panic!("expected UnknownFunction, got {other:?}"),
        }
    }

    #[test]
    fn alert_builtin_needs_no_declaration() {
        let src = "contract C { function f() public { __prom_alert(1); } }";
        check(&parse("t.sol", src).unwrap()).unwrap();
    }
}
