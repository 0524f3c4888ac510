//! AST dump: one JSON object per node, `{id, kind, span, children}`.

use crate::ast::*;
use serde_json::{json, Value};

pub fn dump(unit: &SourceUnit) -> Value {
    let children: Vec<Value> = unit.contracts.iter().map(contract_json).collect();
    node(unit.meta, "SourceUnit", children)
}

fn node(meta: Meta, kind: &str, children: Vec<Value>) -> Value {
    json!({
        "id": meta.id,
        "kind": kind,
        "span": [meta.span.start, meta.span.end],
        "children": children,
    })
}

fn contract_json(c: &ContractDef) -> Value {
    let children: Vec<Value> = c
        .members
        .iter()
        .map(|m| match m {
            ContractMember::Var(v) => node(v.meta, "StateVar", vec![]),
            ContractMember::Event(e) => {
                let kids = e.params.iter().map(|p| node(p.meta, "Param", vec![])).collect();
                node(e.meta, "Event", kids)
            }
            ContractMember::Function(f) => {
                let mut kids: Vec<Value> =
                    f.params.iter().map(|p| node(p.meta, "Param", vec![])).collect();
                kids.push(block_json(&f.body));
                node(f.meta, if f.is_constructor { "Constructor" } else { "Function" }, kids)
            }
        })
        .collect();
    node(c.meta, "Contract", children)
}

fn block_json(b: &Block) -> Value {
    let children: Vec<Value> = b.statements.iter().map(stmt_json).collect();
    node(b.meta, "Block", children)
}

fn stmt_json(s: &Statement) -> Value {
    match s {
        Statement::VarDecl { meta, init, .. } => {
            let kids = init.iter().map(expr_json).collect();
            node(*meta, "VarDecl", kids)
        }
        Statement::Assign { meta, target, value } => {
            node(*meta, "Assign", vec![expr_json(target), expr_json(value)])
        }
        Statement::If { meta, cond, then_block, else_block } => {
            let mut kids = vec![expr_json(cond), block_json(then_block)];
            if let Some(e) = else_block {
                kids.push(block_json(e));
            }
            node(*meta, "If", kids)
        }
        Statement::While { meta, cond, body } => {
            node(*meta, "While", vec![expr_json(cond), block_json(body)])
        }
        Statement::For { meta, init, cond, post, body } => {
            let mut kids = Vec::new();
            if let Some(i) = init {
                kids.push(stmt_json(i));
            }
            if let Some(c) = cond {
                kids.push(expr_json(c));
            }
            if let Some(p) = post {
                kids.push(stmt_json(p));
            }
            kids.push(block_json(body));
            node(*meta, "For", kids)
        }
        Statement::Return { meta, value } => {
            node(*meta, "Return", value.iter().map(expr_json).collect())
        }
        Statement::Require { meta, cond, .. } => node(*meta, "Require", vec![expr_json(cond)]),
        Statement::Assert { meta, cond } => node(*meta, "Assert", vec![expr_json(cond)]),
        Statement::Revert { meta, .. } => node(*meta, "Revert", vec![]),
        Statement::ExprStmt { meta, expr } => node(*meta, "ExprStmt", vec![expr_json(expr)]),
        Statement::Block(b) => block_json(b),
        Statement::Emit { meta, args, .. } => {
            node(*meta, "EmitAlert", args.iter().map(expr_json).collect())
        }
    }
}

fn expr_json(e: &Expr) -> Value {
    match e {
        Expr::IntLit { meta, .. } => node(*meta, "IntLit", vec![]),
        Expr::AddrLit { meta, .. } => node(*meta, "AddrLit", vec![]),
        Expr::BoolLit { meta, .. } => node(*meta, "BoolLit", vec![]),
        Expr::Ident { meta, .. } => node(*meta, "Ident", vec![]),
        Expr::Member { meta, .. } => node(*meta, "Member", vec![]),
        Expr::Index { meta, base, index } => {
            node(*meta, "Index", vec![expr_json(base), expr_json(index)])
        }
        Expr::Binary { meta, lhs, rhs, .. } => {
            node(*meta, "Binary", vec![expr_json(lhs), expr_json(rhs)])
        }
        Expr::Unary { meta, operand, .. } => node(*meta, "Unary", vec![expr_json(operand)]),
        Expr::Call { meta, kind, args, .. } => {
            let k = match kind {
                CallKind::Internal => "CallInternal",
                CallKind::Builtin => "CallBuiltin",
            };
            node(*meta, k, args.iter().map(expr_json).collect())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse;

    #[test]
    fn dump_has_exact_shape() {
        let unit = parse("t.sol", "contract C { uint256 public x; }").unwrap();
        let v = dump(&unit);
        assert_eq!(v["kind"], "SourceUnit");
        assert_eq!(v["id"], 0);
        let obj = v.as_object().unwrap();
        assert_eq!(obj.len(), 4); // id, kind, span, children only
        assert_eq!(v["children"][0]["kind"], "Contract");
        assert_eq!(v["children"][0]["children"][0]["kind"], "StateVar");
    }
}
