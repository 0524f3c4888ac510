//! Print/parse round-trip over generated programs: `parse(print(parse(t)))`
//! must be AST-isomorphic to `parse(t)`, spans must nest, and preorder ids
//! must stay dense.

use minisol::ast::{self, walk_metas};
use minisol::{isomorphic, parse, print, SourceUnit};
use proptest::prelude::*;

// --- generators ------------------------------------------------------------

fn ident() -> impl Strategy<Value = String> {
    prop_oneof![
        Just("x".to_string()),
        Just("y".to_string()),
        Just("total".to_string()),
        Just("amount".to_string()),
        Just("_allowances".to_string()),
        Just("balanceOf".to_string()),
    ]
}

fn expr(depth: u32) -> impl Strategy<Value = String> {
    let leaf = prop_oneof![
        ident(),
        Just("1".to_string()),
        Just("0".to_string()),
        Just("1000000000000000000".to_string()),
        Just("msg.value".to_string()),
        Just("address(this).balance".to_string()),
        Just("true".to_string()),
    ];
    leaf.prop_recursive(depth, 24, 2, |inner| {
        (inner.clone(), prop_oneof![Just("+"), Just("-"), Just("*"), Just("/"), Just("%")], inner)
            .prop_map(|(a, op, b)| format!("({a} {op} {b})"))
    })
}

fn bool_expr() -> impl Strategy<Value = String> {
    (expr(1), prop_oneof![Just(">"), Just("<"), Just("=="), Just("!=")], expr(1))
        .prop_map(|(a, op, b)| format!("{a} {op} {b}"))
}

fn statement(depth: u32) -> BoxedStrategy<String> {
    let simple = prop_oneof![
        (ident(), expr(2)).prop_map(|(n, e)| format!("{n} = {e};")),
        expr(2).prop_map(|e| format!("uint256 tmp = {e};")),
        bool_expr().prop_map(|c| format!("require({c}, \"guard\");")),
        bool_expr().prop_map(|c| format!("assert({c});")),
        (ident(), expr(1)).prop_map(|(m, e)| format!("{m}[msg.sender] = {e};")),
        Just("emit __PromAlert(1);".to_string()),
        Just("__prom_alert(2);".to_string()),
    ];
    if depth == 0 {
        simple.boxed()
    } else {
        prop_oneof![
            4 => simple,
            1 => (bool_expr(), statement(depth - 1)).prop_map(|(c, s)| format!("if ({c}) {{ {s} }}")),
            1 => (bool_expr(), statement(depth - 1), statement(depth - 1))
                .prop_map(|(c, a, b)| format!("if ({c}) {{ {a} }} else {{ {b} }}")),
            1 => statement(depth - 1)
                .prop_map(|s| format!("for (uint256 i = 0; i < 3; i = i + 1) {{ {s} }}")),
        ]
        .boxed()
    }
}

fn contract_source() -> impl Strategy<Value = String> {
    (
        prop::collection::vec(statement(2), 1..6),
        prop::collection::vec(statement(1), 0..3),
        any::<bool>(),
    )
        .prop_map(|(body_a, body_b, payable)| {
            let pay = if payable { " payable" } else { "" };
            format!(
                r#"pragma solidity ^0.8.0;
contract Gen {{
    uint256 public x;
    uint256 public y;
    uint256 public total;
    uint256 public amount;
    mapping(address => uint256) public balanceOf;
    mapping(address => mapping(address => uint256)) public _allowances;
    event __PromAlert(uint256 id);

    function f(uint256 a) public{pay} returns (uint256) {{
        uint256 tmp = a;
        {}
        return tmp;
    }}

    function g() internal {{
        {}
    }}
}}
"#,
                body_a.join("\n        "),
                body_b.join("\n        "),
            )
        })
}

fn check_spans_nest(unit: &SourceUnit) {
    // collect (id, span) and verify child-in-parent by nesting of preorder:
    // every node's span must sit inside the unit span; statements inside
    // their function; expressions inside their statement. The cheap global
    // check: sort by (start, -end) and verify stack discipline.
    let mut spans = Vec::new();
    walk_metas(unit, &mut |m, kind| spans.push((m.span, kind)));
    let root = unit.meta.span;
    for (s, kind) in &spans {
        assert!(
            root.contains(s),
            "{kind} span {s:?} escapes the unit span {root:?}"
        );
    }
    // stack discipline: spans encountered in preorder must nest or be disjoint
    let mut stack: Vec<minisol::Span> = Vec::new();
    for (s, kind) in &spans {
        while let Some(top) = stack.last() {
            if top.contains(s) {
                break;
            }
            assert!(
                s.start >= top.end || top.contains(s),
                "{kind} span {s:?} overlaps sibling scope {top:?}"
            );
            stack.pop();
        }
        stack.push(*s);
    }
}

fn check_dense_ids(unit: &SourceUnit) {
    let count = ast::node_count(unit);
    let mut seen = std::collections::BTreeSet::new();
    let mut max = 0;
    walk_metas(unit, &mut |m, _| {
        seen.insert(m.id);
        max = max.max(m.id);
    });
    assert_eq!(seen.len() as u32, count, "duplicate node ids");
    assert_eq!(max + 1, count, "preorder ids not dense");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn print_parse_roundtrip(src in contract_source()) {
        let unit = parse("gen.sol", &src).expect("generated source parses");
        let printed = print(&unit);
        let reparsed = parse("gen.sol", &printed).expect("printed source parses");
        prop_assert!(isomorphic(&unit, &reparsed), "roundtrip broke isomorphism:\n{printed}");
        // idempotence: printing the reparsed unit is byte-identical
        prop_assert_eq!(print(&reparsed), printed);
    }

    #[test]
    fn spans_and_ids_hold(src in contract_source()) {
        let unit = parse("gen.sol", &src).expect("generated source parses");
        check_spans_nest(&unit);
        check_dense_ids(&unit);
        let printed = print(&unit);
        let reparsed = parse("gen.sol", &printed).expect("printed source parses");
        check_spans_nest(&reparsed);
        check_dense_ids(&reparsed);
    }
}
