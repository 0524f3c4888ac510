//! Canonical source printer. `parse(print(unit))` is AST-isomorphic to
//! `unit`; byte-level formatting is normalized (4-space indent, one statement
//! per line).

use crate::ast::*;

pub fn print(unit: &SourceUnit) -> String {
    let mut out = String::new();
    if let Some(p) = &unit.pragma {
        out.push_str("pragma ");
        out.push_str(p);
        out.push_str(";\n\n");
    }
    for (i, c) in unit.contracts.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        print_contract(&mut out, c);
    }
    out
}

fn print_contract(out: &mut String, c: &ContractDef) {
    out.push_str(&format!("contract {} {{\n", c.name));
    let mut prev_was_fn = false;
    for m in &c.members {
        match m {
            ContractMember::Var(v) => {
                if prev_was_fn {
                    out.push('\n');
                }
                out.push_str("    ");
                out.push_str(v.ty.source());
                out.push(' ');
                out.push_str(visibility_source(v.visibility));
                out.push(' ');
                out.push_str(&v.name);
                out.push_str(";\n");
                prev_was_fn = false;
            }
            ContractMember::Event(e) => {
                if prev_was_fn {
                    out.push('\n');
                }
                out.push_str(&format!("    event {}(", e.name));
                for (i, p) in e.params.iter().enumerate() {
                    if i > 0 {
                        out.push_str(", ");
                    }
                    out.push_str(p.ty.source());
                    out.push(' ');
                    out.push_str(&p.name);
                }
                out.push_str(");\n");
                prev_was_fn = false;
            }
            ContractMember::Function(f) => {
                out.push('\n');
                print_function(out, f);
                prev_was_fn = true;
            }
        }
    }
    out.push_str("}\n");
}

fn visibility_source(v: Visibility) -> &'static str {
    match v {
        Visibility::Public => "public",
        Visibility::External => "external",
        Visibility::Internal => "internal",
        Visibility::Private => "private",
    }
}

fn print_function(out: &mut String, f: &FunctionDef) {
    out.push_str("    ");
    if f.is_constructor {
        out.push_str("constructor(");
    } else {
        out.push_str(&format!("function {}(", f.name));
    }
    for (i, p) in f.params.iter().enumerate() {
        if i > 0 {
            out.push_str(", ");
        }
        out.push_str(p.ty.source());
        out.push(' ');
        out.push_str(&p.name);
    }
    out.push(')');
    if !f.is_constructor {
        out.push(' ');
        out.push_str(visibility_source(f.visibility));
    }
    match f.mutability {
        Mutability::NonPayable => {}
        Mutability::View => out.push_str(" view"),
        Mutability::Pure => out.push_str(" pure"),
        Mutability::Payable => out.push_str(" payable"),
    }
    if let Some(r) = &f.returns {
        out.push_str(&format!(" returns ({})", r.source()));
    }
    out.push(' ');
    print_block(out, &f.body, 1);
    out.push('\n');
}

fn print_block(out: &mut String, b: &Block, depth: usize) {
    out.push_str("{\n");
    for s in &b.statements {
        print_statement(out, s, depth + 1);
    }
    out.push_str(&indent(depth));
    out.push('}');
}

fn indent(depth: usize) -> String {
    "    ".repeat(depth)
}

fn print_statement(out: &mut String, s: &Statement, depth: usize) {
    let pad = indent(depth);
    match s {
        Statement::VarDecl { ty, name, init, .. } => {
            out.push_str(&pad);
            out.push_str(ty.source());
            out.push(' ');
            out.push_str(name);
            if let Some(e) = init {
                out.push_str(" = ");
                out.push_str(&print_expr(e));
            }
            out.push_str(";\n");
        }
        Statement::Assign { target, value, .. } => {
            out.push_str(&pad);
            out.push_str(&print_expr(target));
            out.push_str(" = ");
            out.push_str(&print_expr(value));
            out.push_str(";\n");
        }
        Statement::If { cond, then_block, else_block, .. } => {
            out.push_str(&pad);
            out.push_str(&format!("if ({}) ", print_expr(cond)));
            print_block(out, then_block, depth);
            if let Some(e) = else_block {
                out.push_str(" else ");
                print_block(out, e, depth);
            }
            out.push('\n');
        }
        Statement::While { cond, body, .. } => {
            out.push_str(&pad);
            out.push_str(&format!("while ({}) ", print_expr(cond)));
            print_block(out, body, depth);
            out.push('\n');
        }
        Statement::For { init, cond, post, body, .. } => {
            out.push_str(&pad);
            out.push_str("for (");
            if let Some(i) = init {
                out.push_str(print_inline_statement(i).trim_end_matches('\n'));
            }
            out.push_str("; ");
            if let Some(c) = cond {
                out.push_str(&print_expr(c));
            }
            out.push_str("; ");
            if let Some(p) = post {
                out.push_str(print_inline_statement(p).trim_end_matches('\n'));
            }
            out.push_str(") ");
            print_block(out, body, depth);
            out.push('\n');
        }
        Statement::Return { value, .. } => {
            out.push_str(&pad);
            match value {
                Some(e) => out.push_str(&format!("return {};\n", print_expr(e))),
                None => out.push_str("return;\n"),
            }
        }
        Statement::Require { cond, message, .. } => {
            out.push_str(&pad);
            match message {
                Some(m) => out.push_str(&format!("require({}, {});\n", print_expr(cond), quote(m))),
                None => out.push_str(&format!("require({});\n", print_expr(cond))),
            }
        }
        Statement::Assert { cond, .. } => {
            out.push_str(&pad);
            out.push_str(&format!("assert({});\n", print_expr(cond)));
        }
        Statement::Revert { message, .. } => {
            out.push_str(&pad);
            match message {
                Some(m) => out.push_str(&format!("revert({});\n", quote(m))),
                None => out.push_str("revert();\n"),
            }
        }
        Statement::ExprStmt { expr, .. } => {
            out.push_str(&pad);
            out.push_str(&print_expr(expr));
            out.push_str(";\n");
        }
        Statement::Block(b) => {
            out.push_str(&pad);
            print_block(out, b, depth);
            out.push('\n');
        }
        Statement::Emit { event, args, .. } => {
            out.push_str(&pad);
            let args: Vec<String> = args.iter().map(print_expr).collect();
            out.push_str(&format!("emit {}({});\n", event, args.join(", ")));
        }
    }
}

/// Assignment or declaration without padding/semicolon (for-loop clauses).
fn print_inline_statement(s: &Statement) -> String {
    match s {
        Statement::VarDecl { ty, name, init, .. } => match init {
            Some(e) => format!("{} {} = {}", ty.source(), name, print_expr(e)),
            None => format!("{} {}", ty.source(), name),
        },
        Statement::Assign { target, value, .. } => {
            format!("{} = {}", print_expr(target), print_expr(value))
        }
        _ => String::new(),
    }
}

fn quote(s: &str) -> String {
    let escaped = s.replace('\\', "\\\\").replace('"', "\\\"");
    format!("\"{escaped}\"")
}

/// Precedence used to decide where parentheses are required.
fn prec(op: BinaryOp) -> u8 {
    use BinaryOp::*;
    match op {
        Or => 1,
        And => 2,
        Eq | Ne => 3,
        Lt | Le | Gt | Ge => 4,
        Add | Sub => 5,
        Mul | Div | Mod => 6,
    }
}

pub fn print_expr(e: &Expr) -> String {
    print_expr_prec(e, 0)
}

fn print_expr_prec(e: &Expr, parent: u8) -> String {
    match e {
        Expr::IntLit { value, .. } => value.to_string(),
        Expr::AddrLit { value, .. } => value.to_hex(),
        Expr::BoolLit { value, .. } => value.to_string(),
        Expr::Ident { name, .. } => name.clone(),
        Expr::Member { kind, .. } => match kind {
            MemberKind::MsgSender => "msg.sender".to_string(),
            MemberKind::MsgValue => "msg.value".to_string(),
            MemberKind::ThisBalance => "address(this).balance".to_string(),
        },
        Expr::Index { base, index, .. } => {
            format!("{}[{}]", print_expr_prec(base, 10), print_expr(index))
        }
        Expr::Binary { op, lhs, rhs, .. } => {
            let p = prec(*op);
            // left-associative: right child needs parens at equal precedence
            let s = format!(
                "{} {} {}",
                print_expr_prec(lhs, p),
                op.source(),
                print_expr_prec(rhs, p + 1)
            );
            if p < parent {
                format!("({s})")
            } else {
                s
            }
        }
        Expr::Unary { op, operand, .. } => {
            let sym = match op {
                UnaryOp::Not => "!",
                UnaryOp::Neg => "-",
            };
            format!("{sym}{}", print_expr_prec(operand, 9))
        }
        Expr::Call { callee, args, .. } => {
            let args: Vec<String> = args.iter().map(print_expr).collect();
            format!("{}({})", callee, args.join(", "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ast::isomorphic;
    use crate::parser::parse;

    #[test]
    fn empty_contract_prints() {
        let unit = parse("t.sol", "contract C {}").unwrap();
        let text = print(&unit);
        assert_eq!(text.trim(), "contract C {\n}".trim());
        let back = parse("t.sol", &text).unwrap();
        assert!(isomorphic(&unit, &back));
    }

    #[test]
    fn precedence_survives_roundtrip() {
        let src = "contract C { function f(uint256 a, uint256 b) public returns (uint256) { return (a + b) * 2 - a / (b + 1); } }";
        let unit = parse("t.sol", src).unwrap();
        let back = parse("t.sol", &print(&unit)).unwrap();
        assert!(isomorphic(&unit, &back));
    }

    #[test]
    fn short_circuit_ops_roundtrip() {
        let src = "contract C { function f(bool a, bool b) public returns (bool) { return !(a && b) || a == b; } }";
        let unit = parse("t.sol", src).unwrap();
        let back = parse("t.sol", &print(&unit)).unwrap();
        assert!(isomorphic(&unit, &back));
    }
}
