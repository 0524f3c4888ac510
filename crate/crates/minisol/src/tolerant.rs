//! Tolerant span mode for files outside the subset: contract and function
//! boundaries are recovered by brace matching (string- and comment-aware), so
//! such files can still be analyzed and instrumented textually. Execution of
//! tolerant units is only possible through an external backend.

#[derive(Clone, Debug, PartialEq)]
pub struct TolerantFn {
    pub name: String,
    /// From the `function` keyword through the closing body brace.
    pub span: (usize, usize),
    /// The `{ ... }` body, braces included.
    pub body_span: (usize, usize),
}

#[derive(Clone, Debug, PartialEq)]
pub struct TolerantContract {
    pub name: String,
    pub span: (usize, usize),
    pub functions: Vec<TolerantFn>,
}

#[derive(Clone, Debug)]
pub struct TolerantUnit {
    pub path: String,
    pub raw_text: String,
    pub contracts: Vec<TolerantContract>,
}

pub fn scan(path: &str, text: &str) -> TolerantUnit {
    let words = word_positions(text);
    let mut contracts = Vec::new();
    let mut i = 0;
    while i < words.len() {
        let (pos, word) = &words[i];
        if word == "contract" || word == "library" || word == "interface" {
            if let Some((name, name_end)) = next_word(&words, i) {
                if let Some(open) = find_byte(text, name_end, b'{') {
                    if let Some(close) = match_brace(text, open) {
                        let functions = scan_functions(text, open + 1, close);
                        contracts.push(TolerantContract {
                            name,
                            span: (*pos, close + 1),
                            functions,
                        });
                        // continue after this contract
                        i += 1;
                        while i < words.len() && words[i].0 < close {
                            i += 1;
                        }
                        continue;
                    }
                }
            }
        }
        i += 1;
    }
    TolerantUnit { path: path.to_string(), raw_text: text.to_string(), contracts }
}

fn scan_functions(text: &str, from: usize, to: usize) -> Vec<TolerantFn> {
    let region = &text[from..to];
    let words = word_positions(region);
    let mut out = Vec::new();
    let mut i = 0;
    while i < words.len() {
        let (pos, word) = &words[i];
        let is_fn = word == "function";
        let is_special = word == "constructor" || word == "receive" || word == "fallback";
        if is_fn || is_special {
            let name = if is_fn {
                match next_word(&words, i) {
                    Some((n, _)) => n,
                    None => {
                        i += 1;
                        continue;
                    }
                }
            } else {
                word.clone()
            };
            if let Some(open) = find_body_brace(region, *pos) {
                if let Some(close) = match_brace(region, open) {
                    out.push(TolerantFn {
                        name,
                        span: (from + pos, from + close + 1),
                        body_span: (from + open, from + close + 1),
                    });
                    while i < words.len() && words[i].0 < close {
                        i += 1;
                    }
                    continue;
                }
            }
        }
        i += 1;
    }
    out
}

/// First `{` after the signature, skipping over the parameter list and any
/// modifier argument lists.
fn find_body_brace(text: &str, from: usize) -> Option<usize> {
    let bytes = text.as_bytes();
    let mut depth = 0i32;
    let mut i = from;
    let mut state = ScanState::Code;
    while i < bytes.len() {
        let b = bytes[i];
        match state {
            ScanState::Code => match b {
                b'"' => state = ScanState::Str,
                b'/' if i + 1 < bytes.len() && bytes[i + 1] == b'/' => state = ScanState::Line,
                b'/' if i + 1 < bytes.len() && bytes[i + 1] == b'*' => state = ScanState::BlockC,
                b'(' => depth += 1,
                b')' => depth -= 1,
                b'{' if depth == 0 => return Some(i),
                b';' if depth == 0 => return None, // declaration without body
                _ => {}
            },
            ScanState::Str => {
                if b == b'\\' {
                    i += 1;
                } else if b == b'"' {
                    state = ScanState::Code;
                }
            }
            ScanState::Line => {
                if b == b'\n' {
                    state = ScanState::Code;
                }
            }
            ScanState::BlockC => {
                if b == b'*' && i + 1 < bytes.len() && bytes[i + 1] == b'/' {
                    i += 1;
                    state = ScanState::Code;
                }
            }
        }
        i += 1;
    }
    None
}

enum ScanState {
    Code,
    Str,
    Line,
    BlockC,
}

/// Offset of the `}` matching the `{` at `open`.
pub fn match_brace(text: &str, open: usize) -> Option<usize> {
    let bytes = text.as_bytes();
    debug_assert_eq!(bytes[open], b'{');
    let mut depth = 0i32;
    let mut i = open;
    let mut state = ScanState::Code;
    while i < bytes.len() {
        let b = bytes[i];
        match state {
            ScanState::Code => match b {
                b'"' => state = ScanState::Str,
                b'/' if i + 1 < bytes.len() && bytes[i + 1] == b'/' => state = ScanState::Line,
                b'/' if i + 1 < bytes.len() && bytes[i + 1] == b'*' => state = ScanState::BlockC,
                b'{' => depth += 1,
                b'}' => {
                    depth -= 1;
                    if depth == 0 {
                        return Some(i);
                    }
                }
                _ => {}
            },
            ScanState::Str => {
                if b == b'\\' {
                    i += 1;
                } else if b == b'"' {
                    state = ScanState::Code;
                }
            }
            ScanState::Line => {
                if b == b'\n' {
                    state = ScanState::Code;
                }
            }
            ScanState::BlockC => {
                if b == b'*' && i + 1 < bytes.len() && bytes[i + 1] == b'/' {
                    i += 1;
                    state = ScanState::Code;
                }
            }
        }
        i += 1;
    }
    None
}

fn find_byte(text: &str, from: usize, target: u8) -> Option<usize> {
    text.as_bytes()[from..].iter().position(|&b| b == target).map(|p| from + p)
}

/// Word tokens with byte positions, skipping strings and comments.
fn word_positions(text: &str) -> Vec<(usize, String)> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    let mut state = ScanState::Code;
    while i < bytes.len() {
        let b = bytes[i];
        match state {
            ScanState::Code => {
                if b == b'"' {
                    state = ScanState::Str;
                } else if b == b'/' && i + 1 < bytes.len() && bytes[i + 1] == b'/' {
                    state = ScanState::Line;
                } else if b == b'/' && i + 1 < bytes.len() && bytes[i + 1] == b'*' {
                    state = ScanState::BlockC;
                } else if b.is_ascii_alphabetic() || b == b'_' {
                    let start = i;
                    while i < bytes.len()
                        && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_')
                    {
                        i += 1;
                    }
                    out.push((start, text[start..i].to_string()));
                    continue;
                }
            }
            ScanState::Str => {
                if b == b'\\' {
                    i += 1;
                } else if b == b'"' {
                    state = ScanState::Code;
                }
            }
            ScanState::Line => {
                if b == b'\n' {
                    state = ScanState::Code;
                }
            }
            ScanState::BlockC => {
                if b == b'*' && i + 1 < bytes.len() && bytes[i + 1] == b'/' {
                    i += 1;
                    state = ScanState::Code;
                }
            }
        }
        i += 1;
    }
    out
}

fn next_word(words: &[(usize, String)], i: usize) -> Option<(String, usize)> {
    words.get(i + 1).map(|(pos, w)| (w.clone(), pos + w.len()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_functions_from_real_solidity() {
        let src = r#"
// SPDX-License-Identifier: MIT
pragma solidity ^0.8.17;
import "./IERC20.sol";

contract Vault is Ownable {
    using SafeMath for uint256;
    mapping(address => uint256) balances;

    modifier onlyKeeper() { require(msg.sender == keeper, "no"); _; }

    function deposit(uint256 amount) external payable onlyKeeper {
        assembly { let x := 1 }
        balances[msg.sender] += amount;
    }

    function sweep() external { /* } in comment */ }
}
"#;
        let unit = scan("v.sol", src);
        assert_eq!(unit.contracts.len(), 1);
        let c = &unit.contracts[0];
        assert_eq!(c.name, "Vault");
        let names: Vec<&str> = c.functions.iter().map(|f| f.name.as_str()).collect();
        assert_eq!(names, vec!["deposit", "sweep"]);
        let dep = &c.functions[0];
        assert!(src[dep.body_span.0..dep.body_span.1].contains("assembly"));
        assert!(src[dep.body_span.0..].starts_with('{'));
    }

    #[test]
    fn brace_in_string_does_not_confuse() {
        let src = r#"contract C { function f() public { revert("}"); } }"#;
        let unit = scan("c.sol", src);
        assert_eq!(unit.contracts[0].functions.len(), 1);
        let f = &unit.contracts[0].functions[0];
        assert_eq!(&src[f.body_span.0..f.body_span.1], r#"{ revert("}"); }"#);
    }

    #[test]
    fn function_declaration_without_body_skipped() {
        let src = "interface I { function f() external; } contract C { function g() public {} }";
        let unit = scan("i.sol", src);
        assert_eq!(unit.contracts.len(), 2);
        assert!(unit.contracts[0].functions.is_empty());
        assert_eq!(unit.contracts[1].functions[0].name, "g");
    }
}
