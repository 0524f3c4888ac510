//! Node lookup: resolve `Contract.name` queries or raw node ids to stable
//! paths, and navigate from node ids back to statements and functions.

use crate::ast::*;
use crate::error::ResolveError;
use serde::{Deserialize, Serialize};

/// Stable handle to a node: its id, its enclosing function (when inside one),
/// and the index path from the function body root (see [`resolve_path`]).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodePath {
    pub node_id: NodeId,
    pub function_id: Option<NodeId>,
    pub index_path: Vec<usize>,
}

/// Resolves `"Contract.member"`, a bare member name, or a numeric node id.
pub fn resolve(unit: &SourceUnit, query: &str) -> Result<NodePath, ResolveError> {
    if let Ok(id) = query.parse::<NodeId>() {
        if let Some(path) = path_of_node(unit, id) {
            return Ok(path);
        }
        return Err(ResolveError::NotFound { query: query.to_string() });
    }

    let (contract_filter, member) = match query.split_once('.') {
        Some((c, m)) => (Some(c), m),
        None => (None, query),
    };

    let mut hits: Vec<(String, NodeId)> = Vec::new();
    for c in &unit.contracts {
        if let Some(cf) = contract_filter {
            if cf != c.name {
                continue;
            }
        }
        for f in c.functions() {
            if !f.is_constructor && f.name == member {
                hits.push((format!("{}.{}", c.name, f.name), f.meta.id));
            }
        }
        for v in c.state_vars() {
            if v.name == member {
                hits.push((format!("{}.{}", c.name, v.name), v.meta.id));
            }
        }
    }
    match hits.len() {
        0 => Err(ResolveError::NotFound { query: query.to_string() }),
        1 => Ok(path_of_node(unit, hits[0].1).expect("hit resolves")),
        _ => Err(ResolveError::Ambiguous {
            query: query.to_string(),
            candidates: hits.into_iter().map(|(n, _)| n).collect(),
        }),
    }
}

/// Computes the [`NodePath`] for any node id in the unit.
pub fn path_of_node(unit: &SourceUnit, id: NodeId) -> Option<NodePath> {
    for c in &unit.contracts {
        if c.meta.id == id {
            return Some(NodePath { node_id: id, function_id: None, index_path: vec![] });
        }
        for m in &c.members {
            match m {
                ContractMember::Var(v) if v.meta.id == id => {
                    return Some(NodePath { node_id: id, function_id: None, index_path: vec![] });
                }
                ContractMember::Event(e) if e.meta.id == id => {
                    return Some(NodePath { node_id: id, function_id: None, index_path: vec![] });
                }
                ContractMember::Function(f) => {
                    if f.meta.id == id {
                        return Some(NodePath {
                            node_id: id,
                            function_id: Some(f.meta.id),
                            index_path: vec![],
                        });
                    }
                    if let Some(path) = stmt_path_in_block(&f.body, id, vec![]) {
                        return Some(NodePath {
                            node_id: id,
                            function_id: Some(f.meta.id),
                            index_path: path,
                        });
                    }
                }
                _ => {}
            }
        }
    }
    if unit.meta.id == id {
        return Some(NodePath { node_id: id, function_id: None, index_path: vec![] });
    }
    None
}

/// Index-path steps: at a block the step selects a statement; inside an `if`
/// step 0 enters the then-block and 1 the else-block; loops use step 0 for
/// the body.
fn stmt_path_in_block(block: &Block, id: NodeId, prefix: Vec<usize>) -> Option<Vec<usize>> {
    for (i, s) in block.statements.iter().enumerate() {
        let mut here = prefix.clone();
        here.push(i);
        if s.meta().id == id {
            return Some(here);
        }
        let nested = match s {
            Statement::If { then_block, else_block, .. } => {
                let mut t = here.clone();
                t.push(0);
                if let Some(found) = stmt_path_in_block(then_block, id, t) {
                    return Some(found);
                }
                if let Some(e) = else_block {
                    let mut x = here.clone();
                    x.push(1);
                    stmt_path_in_block(e, id, x)
                } else {
                    None
                }
            }
            Statement::While { body, .. } | Statement::For { body, .. } => {
                let mut t = here.clone();
                t.push(0);
                stmt_path_in_block(body, id, t)
            }
            Statement::Block(b) => {
                let mut t = here.clone();
                t.push(0);
                stmt_path_in_block(b, id, t)
            }
            _ => None,
        };
        if let Some(found) = nested {
            return Some(found);
        }
    }
    None
}

/// Statement lookup by node id, searching all function bodies.
pub fn statement_by_id<'u>(unit: &'u SourceUnit, id: NodeId) -> Option<&'u Statement> {
    for c in &unit.contracts {
        for f in c.functions() {
            if let Some(s) = stmt_by_id_in_block(&f.body, id) {
                return Some(s);
            }
        }
    }
    None
}

fn stmt_by_id_in_block<'b>(block: &'b Block, id: NodeId) -> Option<&'b Statement> {
    for s in &block.statements {
        if s.meta().id == id {
            return Some(s);
        }
        let nested = match s {
            Statement::If { then_block, else_block, .. } => stmt_by_id_in_block(then_block, id)
                .or_else(|| else_block.as_ref().and_then(|e| stmt_by_id_in_block(e, id))),
            Statement::While { body, .. } | Statement::For { body, .. } => {
                stmt_by_id_in_block(body, id)
            }
            Statement::Block(b) => stmt_by_id_in_block(b, id),
            _ => None,
        };
        if nested.is_some() {
            return nested;
        }
    }
    None
}

/// The function whose span contains the given node id, with its contract.
pub fn enclosing_function<'u>(
    unit: &'u SourceUnit,
    id: NodeId,
) -> Option<(&'u ContractDef, &'u FunctionDef)> {
    for c in &unit.contracts {
        for f in c.functions() {
            let mut found = false;
            let mut check = |m: &Meta| {
                if m.id == id {
                    found = true;
                }
            };
            check(&f.meta);
            for p in &f.params {
                check(&p.meta);
            }
            let mut stack = vec![&f.body];
            while let Some(b) = stack.pop() {
                check(&b.meta);
                for s in &b.statements {
                    visit_stmt_metas(s, &mut check, &mut stack);
                }
            }
            if found {
                return Some((c, f));
            }
        }
    }
    None
}

fn visit_stmt_metas<'b>(
    s: &'b Statement,
    check: &mut impl FnMut(&Meta),
    stack: &mut Vec<&'b Block>,
) {
    check(s.meta());
    match s {
        Statement::If { cond, then_block, else_block, .. } => {
            visit_expr_metas(cond, check);
            stack.push(then_block);
            if let Some(e) = else_block {
                stack.push(e);
            }
        }
        Statement::While { cond, body, .. } => {
            visit_expr_metas(cond, check);
            stack.push(body);
        }
        Statement::For { init, cond, post, body, .. } => {
            if let Some(i) = init {
                visit_stmt_metas(i, check, stack);
            }
            if let Some(c) = cond {
                visit_expr_metas(c, check);
            }
            if let Some(p) = post {
                visit_stmt_metas(p, check, stack);
            }
            stack.push(body);
        }
        Statement::Block(b) => stack.push(b),
        Statement::VarDecl { init, .. } => {
            if let Some(e) = init {
                visit_expr_metas(e, check);
            }
        }
        Statement::Assign { target, value, .. } => {
            visit_expr_metas(target, check);
            visit_expr_metas(value, check);
        }
        Statement::Return { value, .. } => {
            if let Some(e) = value {
                visit_expr_metas(e, check);
            }
        }
        Statement::Require { cond, .. } | Statement::Assert { cond, .. } => {
            visit_expr_metas(cond, check);
        }
        Statement::ExprStmt { expr, .. } => visit_expr_metas(expr, check),
        Statement::Emit { args, .. } => {
            for a in args {
                visit_expr_metas(a, check);
            }
        }
        Statement::Revert { .. } => {}
    }
}

fn visit_expr_metas(e: &Expr, check: &mut impl FnMut(&Meta)) {
    check(e.meta());
    match e {
        Expr::Index { base, index, .. } => {
            visit_expr_metas(base, check);
            visit_expr_metas(index, check);
        }
        Expr::Binary { lhs, rhs, .. } => {
            visit_expr_metas(lhs, check);
            visit_expr_metas(rhs, check);
        }
        Expr::Unary { operand, .. } => visit_expr_metas(operand, check),
        Expr::Call { args, .. } => {
            for a in args {
                visit_expr_metas(a, check);
            }
        }
        _ => {}
    }
}

/// All statements of a function body, recursing into nested blocks, paired
/// with the top-level (body-depth) statement that contains each.
pub fn function_statements<'f>(f: &'f FunctionDef) -> Vec<(&'f Statement, &'f Statement)> {
    let mut out = Vec::new();
    for top in &f.body.statements {
        collect_with_container(top, top, &mut out);
    }
    out
}

fn collect_with_container<'f>(
    s: &'f Statement,
    container: &'f Statement,
    out: &mut Vec<(&'f Statement, &'f Statement)>,
) {
    out.push((s, container));
    match s {
        Statement::If { then_block, else_block, .. } => {
            for inner in &then_block.statements {
                collect_with_container(inner, container, out);
            }
            if let Some(e) = else_block {
                for inner in &e.statements {
                    collect_with_container(inner, container, out);
                }
            }
        }
        Statement::While { body, .. } | Statement::For { body, .. } => {
            for inner in &body.statements {
                collect_with_container(inner, container, out);
            }
        }
        Statement::Block(b) => {
            for inner in &b.statements {
                collect_with_container(inner, container, out);
            }
        }
        _ => {}
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse;

    const SRC: &str = r#"
contract Pool {
    uint256 public total;
    function transferFrom(address sender, uint256 amount) public {
        total = total + amount;
    }
}
contract Other {
    function transferFrom(address sender, uint256 amount) public {
        if (amount > 0) {
            amount = amount - 1;
        }
    }
}
"#;

    #[test]
    fn qualified_function_resolves() {
        let unit = parse("t.sol", SRC).unwrap();
        let p = resolve(&unit, "Pool.transferFrom").unwrap();
        assert!(p.function_id.is_some());
        assert_eq!(p.node_id, p.function_id.unwrap());
    }

    #[test]
    fn missing_member_not_found() {
        let unit = parse("t.sol", SRC).unwrap();
        match resolve(&unit, "Pool.nonexistent") {
            Err(ResolveError::NotFound { .. }) => {}
            other => panic!("expected NotFound, got {other:?}"),
        }
    }

    #[test]
    fn duplicate_names_without_prefix_are_ambiguous() {
        let unit = parse("t.sol", SRC).unwrap();
        match resolve(&unit, "transferFrom") {
            Err(ResolveError::Ambiguous { candidates, .. }) => {
                assert_eq!(candidates.len(), 2);
            }
            other => panic!("expected Ambiguous, got {other:?}"),
        }
    }

    #[test]
    fn state_var_resolves() {
        let unit = parse("t.sol", SRC).unwrap();
        let p = resolve(&unit, "Pool.total").unwrap();
        assert!(p.function_id.is_none());
    }

    #[test]
    fn node_id_query_and_paths() {
        let unit = parse("t.sol", SRC).unwrap();
        let f = unit.contracts[1].function("transferFrom").unwrap();
        let if_stmt = &f.body.statements[0];
        let inner = match if_stmt {
            Statement::If { then_block, .. } => &then_block.statements[0],
            _ => panic!(),
        };
        let p = resolve(&unit, &inner.meta().id.to_string()).unwrap();
        assert_eq!(p.index_path, vec![0, 0, 0]);
        assert_eq!(p.function_id, Some(f.meta.id));
    }
}
