//! Byte-offset lexer. Keywords are not distinguished here; the parser matches
//! identifier text. `pragma` switches to raw capture up to the next `;` so
//! version expressions like `^0.8.0` never reach the number scanner.

use crate::ast::Span;
use crate::error::ParseError;
use crate::u256::U256;

#[derive(Clone, Debug, PartialEq)]
pub enum Tok {
    Ident(String),
    /// Numeric literal with its raw spelling (decimal, hex, or scientific).
    Number(U256, String),
    Str(String),
    /// Raw text between `pragma` and `;`.
    PragmaText(String),
    Punct(&'static str),
    Eof,
}

#[derive(Clone, Debug)]
pub struct Token {
    pub tok: Tok,
    pub span: Span,
}

const PUNCTS2: [&str; 7] = ["=>", "==", "!=", "<=", ">=", "&&", "||"];
const PUNCTS1: [&str; 18] = [
    "{", "}", "(", ")", "[", "]", ";", ",", ".", "<", ">", "+", "-", "*", "/", "%", "!", "=",
];

pub fn line_col(text: &str, offset: usize) -> (usize, usize) {
    let mut line = 1;
    let mut col = 1;
    for (i, ch) in text.char_indices() {
        if i >= offset {
            break;
        }
        if ch == '\n' {
            line += 1;
            col = 1;
        } else {
            col += 1;
        }
    }
    (line, col)
}

pub fn lex(text: &str) -> Result<Vec<Token>, ParseError> {
    let bytes = text.as_bytes();
    let mut pos = 0usize;
    let mut out = Vec::new();
    let err = |pos: usize, expected: &str| {
        let (line, col) = line_col(text, pos);
        ParseError::Syntax { line, col, expected: expected.to_string() }
    };

    while pos < bytes.len() {
        let b = bytes[pos];
        if b.is_ascii_whitespace() {
            pos += 1;
            continue;
        }
        // comments
        if b == b'/' && pos + 1 < bytes.len() {
            if bytes[pos + 1] == b'/' {
                while pos < bytes.len() && bytes[pos] != b'\n' {
                    pos += 1;
                }
                continue;
            }
            if bytes[pos + 1] == b'*' {
                let mut i = pos + 2;
                loop {
                    if i + 1 >= bytes.len() {
                        return Err(err(pos, "closing */"));
                    }
                    if bytes[i] == b'*' && bytes[i + 1] == b'/' {
                        pos = i + 2;
                        break;
                    }
                    i += 1;
                }
                continue;
            }
        }
        // identifiers / keywords
        if b.is_ascii_alphabetic() || b == b'_' || b == b'$' {
            let start = pos;
            while pos < bytes.len()
                && (bytes[pos].is_ascii_alphanumeric() || bytes[pos] == b'_' || bytes[pos] == b'$')
            {
                pos += 1;
            }
            let word = &text[start..pos];
            if word == "pragma" {
                // raw capture up to ';'
                let body_start = pos;
                while pos < bytes.len() && bytes[pos] != b';' {
                    pos += 1;
                }
                if pos >= bytes.len() {
                    return Err(err(start, "';' terminating pragma"));
                }
                out.push(Token {
                    tok: Tok::PragmaText(text[body_start..pos].trim().to_string()),
                    span: Span::new(start, pos),
                });
                out.push(Token { tok: Tok::Punct(";"), span: Span::new(pos, pos + 1) });
                pos += 1;
                continue;
            }
            out.push(Token {
                tok: Tok::Ident(word.to_string()),
                span: Span::new(start, pos),
            });
            continue;
        }
        // numbers: decimal, 0x hex, or scientific (digits 'e' digits)
        if b.is_ascii_digit() {
            let start = pos;
            if b == b'0' && pos + 1 < bytes.len() && (bytes[pos + 1] == b'x' || bytes[pos + 1] == b'X') {
                pos += 2;
                let hex_start = pos;
                while pos < bytes.len() && bytes[pos].is_ascii_hexdigit() {
                    pos += 1;
                }
                if pos == hex_start {
                    return Err(err(pos, "hex digits after 0x"));
                }
                let raw = &text[start..pos];
                let value = U256::from_hex_str(raw)
                    .map_err(|_| err(start, "hex literal within 256 bits"))?;
                out.push(Token {
                    tok: Tok::Number(value, raw.to_string()),
                    span: Span::new(start, pos),
                });
                continue;
            }
            while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                pos += 1;
            }
            let mantissa_end = pos;
            let mut value = None;
            if pos < bytes.len() && (bytes[pos] == b'e' || bytes[pos] == b'E') {
                // scientific only when followed by digits (else it's an ident boundary)
                let mut j = pos + 1;
                let exp_start = j;
                while j < bytes.len() && bytes[j].is_ascii_digit() {
                    j += 1;
                }
                let exp_ends_clean = j > exp_start
                    && !(j < bytes.len()
                        && (bytes[j].is_ascii_alphanumeric() || bytes[j] == b'_'));
                if exp_ends_clean {
                    value = Some(
                        U256::from_scientific(&text[start..mantissa_end], &text[exp_start..j])
                            .map_err(|_| err(start, "numeric literal within 256 bits"))?,
                    );
                    pos = j;
                }
            }
            let value = match value {
                Some(v) => v,
                None => U256::from_dec_str(&text[start..mantissa_end])
                    .map_err(|_| err(start, "numeric literal within 256 bits"))?,
            };
            if pos < bytes.len() && (bytes[pos].is_ascii_alphanumeric() || bytes[pos] == b'_') {
                return Err(err(pos, "separator after numeric literal"));
            }
            out.push(Token {
                tok: Tok::Number(value, text[start..pos].to_string()),
                span: Span::new(start, pos),
            });
            continue;
        }
        // strings
        if b == b'"' {
            let start = pos;
            pos += 1;
            let mut s = String::new();
            loop {
                if pos >= bytes.len() {
                    return Err(err(start, "closing '\"'"));
                }
                match bytes[pos] {
                    b'"' => {
                        pos += 1;
                        break;
                    }
                    b'\\' if pos + 1 < bytes.len() => {
                        let esc = bytes[pos + 1];
                        s.push(match esc {
                            b'n' => '\n',
                            b't' => '\t',
                            b'"' => '"',
                            b'\\' => '\\',
                            _ => return Err(err(pos, "string escape")),
                        });
                        pos += 2;
                    }
                    b'\n' => return Err(err(pos, "closing '\"' before newline")),
                    c => {
                        s.push(c as char);
                        pos += 1;
                    }
                }
            }
            out.push(Token { tok: Tok::Str(s), span: Span::new(start, pos) });
            continue;
        }
        // punctuation, longest match first
        let rest = &text[pos..];
        if let Some(p) = PUNCTS2.iter().find(|p| rest.starts_with(**p)) {
            out.push(Token { tok: Tok::Punct(p), span: Span::new(pos, pos + 2) });
            pos += 2;
            continue;
        }
        if let Some(p) = PUNCTS1.iter().find(|p| rest.starts_with(**p)) {
            out.push(Token { tok: Tok::Punct(p), span: Span::new(pos, pos + 1) });
            pos += 1;
            continue;
        }
        return Err(err(pos, "token"));
    }
    out.push(Token { tok: Tok::Eof, span: Span::new(text.len(), text.len()) });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kinds(src: &str) -> Vec<Tok> {
        lex(src).unwrap().into_iter().map(|t| t.tok).collect()
    }

    #[test]
    fn scientific_and_hex() {
        let toks = kinds("1e18 0xff 42");
        assert_eq!(toks[0], Tok::Number(U256::from_scientific("1", "18").unwrap(), "1e18".into()));
        assert_eq!(toks[1], Tok::Number(U256::from_u64(255), "0xff".into()));
        assert_eq!(toks[2], Tok::Number(U256::from_u64(42), "42".into()));
    }

    #[test]
    fn pragma_raw_capture() {
        let toks = kinds("pragma solidity ^0.8.0; contract C {}");
        assert_eq!(toks[0], Tok::PragmaText("solidity ^0.8.0".into()));
        assert_eq!(toks[1], Tok::Punct(";"));
        assert_eq!(toks[2], Tok::Ident("contract".into()));
    }

    #[test]
    fn two_char_puncts() {
        let toks = kinds("a <= b && c => d");
        assert!(toks.contains(&Tok::Punct("<=")));
        assert!(toks.contains(&Tok::Punct("&&")));
        assert!(toks.contains(&Tok::Punct("=>")));
    }

    #[test]
    fn comments_skipped() {
        let toks = kinds("a // x\n /* y */ b");
        assert_eq!(toks, vec![Tok::Ident("a".into()), Tok::Ident("b".into()), Tok::Eof]);
    }

    #[test]
    fn bad_token_reports_position() {
        let e = lex("a #").unwrap_err();
        assert!(e.to_string().contains("1:3"));
    }
}
