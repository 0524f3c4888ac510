//! Recursive-descent parser. Produces an AST with byte spans; node ids are
//! assigned densely in preorder after the unit is built. Statement spans
//! include the trailing semicolon so instrumentation can splice after it.

use crate::ast::*;
use crate::error::ParseError;
use crate::lexer::{lex, line_col, Tok, Token};
use crate::u256::Address;

/// Constructs that exist in full Solidity but are out of this subset.
const UNSUPPORTED: [&str; 16] = [
    "assembly", "import", "library", "interface", "abstract", "struct", "enum", "modifier",
    "using", "unchecked", "try", "catch", "delete", "new", "selfdestruct", "fallback",
];

pub fn parse(path: &str, text: &str) -> Result<SourceUnit, ParseError> {
    let tokens = lex(text)?;
    let mut p = Parser { text, tokens, pos: 0 };
    let mut unit = p.source_unit(path)?;
    assign_preorder_ids(&mut unit);
    Ok(unit)
}

/// Parses a standalone expression (used to validate extracted variable text).
pub fn parse_expression(text: &str) -> Result<Expr, ParseError> {
    let tokens = lex(text)?;
    let mut p = Parser { text, tokens, pos: 0 };
    let expr = p.expr()?;
    p.expect_eof()?;
    Ok(expr)
}

/// Parses a sequence of statements (used to validate checker fragments).
pub fn parse_statements(text: &str) -> Result<Vec<Statement>, ParseError> {
    let tokens = lex(text)?;
    let mut p = Parser { text, tokens, pos: 0 };
    let mut out = Vec::new();
    while !p.at_eof() {
        out.push(p.statement()?);
    }
    Ok(out)
}

struct Parser<'t> {
    text: &'t str,
    tokens: Vec<Token>,
    pos: usize,
}

impl<'t> Parser<'t> {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn peek2(&self) -> &Token {
        &self.tokens[(self.pos + 1).min(self.tokens.len() - 1)]
    }

    fn bump(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn at_eof(&self) -> bool {
        matches!(self.peek().tok, Tok::Eof)
    }

    fn err_here(&self, expected: &str) -> ParseError {
        let (line, col) = line_col(self.text, self.peek().span.start);
        ParseError::Syntax { line, col, expected: expected.to_string() }
    }

    fn unsupported(&self, span: crate::ast::Span, feature: &str) -> ParseError {
        ParseError::Unsupported { span, feature: feature.to_string() }
    }

    fn expect_eof(&self) -> Result<(), ParseError> {
        if self.at_eof() {
            Ok(())
        } else {
            Err(self.err_here("end of input"))
        }
    }

    fn at_punct(&self, p: &str) -> bool {
        matches!(&self.peek().tok, Tok::Punct(q) if *q == p)
    }

    fn eat_punct(&mut self, p: &str) -> bool {
        if self.at_punct(p) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect_punct(&mut self, p: &str) -> Result<Token, ParseError> {
        if self.at_punct(p) {
            Ok(self.bump())
        } else {
            Err(self.err_here(&format!("'{p}'")))
        }
    }

    fn at_word(&self, w: &str) -> bool {
        matches!(&self.peek().tok, Tok::Ident(s) if s == w)
    }

    fn eat_word(&mut self, w: &str) -> bool {
        if self.at_word(w) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect_word(&mut self, w: &str) -> Result<Token, ParseError> {
        if self.at_word(w) {
            Ok(self.bump())
        } else {
            Err(self.err_here(&format!("'{w}'")))
        }
    }

    fn expect_ident(&mut self, what: &str) -> Result<(String, Token), ParseError> {
        match &self.peek().tok {
            Tok::Ident(s) => {
                let s = s.clone();
                let t = self.bump();
                Ok((s, t))
            }
            _ => Err(self.err_here(what)),
        }
    }

    fn check_unsupported(&self) -> Result<(), ParseError> {
        if let Tok::Ident(w) = &self.peek().tok {
            if UNSUPPORTED.contains(&w.as_str()) {
                return Err(self.unsupported(self.peek().span, w));
            }
        }
        Ok(())
    }

    // -- grammar ----------------------------------------------------------

    fn source_unit(&mut self, path: &str) -> Result<SourceUnit, ParseError> {
        let mut pragma = None;
        if let Tok::PragmaText(t) = &self.peek().tok {
            pragma = Some(t.clone());
            self.bump();
            self.expect_punct(";")?;
        }
        let mut contracts = Vec::new();
        while !self.at_eof() {
            self.check_unsupported()?;
            if self.at_word("contract") {
                contracts.push(self.contract()?);
            } else {
                return Err(self.err_here("'contract'"));
            }
        }
        Ok(SourceUnit {
            meta: Meta { id: 0, span: Span::new(0, self.text.len()) },
            path: path.to_string(),
            pragma,
            contracts,
            raw_text: self.text.to_string(),
        })
    }

    fn contract(&mut self) -> Result<ContractDef, ParseError> {
        let start = self.expect_word("contract")?.span.start;
        let (name, _) = self.expect_ident("contract name")?;
        self.expect_punct("{")?;
        let mut members = Vec::new();
        while !self.at_punct("}") {
            if self.at_eof() {
                return Err(self.err_here("'}'"));
            }
            members.push(self.member()?);
        }
        let end = self.expect_punct("}")?.span.end;
        Ok(ContractDef {
            meta: Meta { id: 0, span: Span::new(start, end) },
            name,
            members,
        })
    }

    fn member(&mut self) -> Result<ContractMember, ParseError> {
        self.check_unsupported()?;
        if self.at_word("function") || self.at_word("constructor") {
            return Ok(ContractMember::Function(self.function()?));
        }
        if self.at_word("event") {
            return Ok(ContractMember::Event(self.event()?));
        }
        if self.at_type_start() {
            return Ok(ContractMember::Var(self.state_var()?));
        }
        Err(self.err_here("contract member (state variable, event, or function)"))
    }

    fn at_type_start(&self) -> bool {
        self.at_word("uint256") || self.at_word("address") || self.at_word("bool") || self.at_word("mapping")
    }

    fn type_name(&mut self) -> Result<(TypeName, Token), ParseError> {
        if self.at_word("uint256") {
            let t = self.bump();
            return Ok((TypeName::Uint256, t));
        }
        if self.at_word("address") {
            let t = self.bump();
            return Ok((TypeName::Address, t));
        }
        if self.at_word("bool") {
            let t = self.bump();
            return Ok((TypeName::Bool, t));
        }
        if self.at_word("mapping") {
            let start_tok = self.bump();
            self.expect_punct("(")?;
            self.expect_word("address")?;
            self.expect_punct("=>")?;
            let ty = if self.eat_word("uint256") {
                TypeName::MapAddrUint
            } else if self.at_word("mapping") {
                self.bump();
                self.expect_punct("(")?;
                self.expect_word("address")?;
                self.expect_punct("=>")?;
                self.expect_word("uint256")?;
                self.expect_punct(")")?;
                TypeName::MapAddrMapAddrUint
            } else {
                return Err(self.err_here("'uint256' or nested mapping"));
            };
            self.expect_punct(")")?;
            return Ok((ty, start_tok));
        }
        if let Tok::Ident(w) = &self.peek().tok {
            // anything typed but outside the five supported types
            if ["uint8", "uint16", "uint32", "uint64", "uint128", "int256", "string", "bytes", "bytes32", "uint"]
                .contains(&w.as_str())
            {
                return Err(self.unsupported(self.peek().span, w));
            }
        }
        Err(self.err_here("type name"))
    }

    fn state_var(&mut self) -> Result<StateVar, ParseError> {
        let (ty, first) = self.type_name()?;
        let start = first.span.start;
        let visibility = self.opt_visibility().unwrap_or(Visibility::Internal);
        if self.at_word("constant") || self.at_word("immutable") {
            return Err(self.unsupported(self.peek().span, "constant state variable"));
        }
        let (name, _) = self.expect_ident("state variable name")?;
        if self.at_punct("=") {
            return Err(self.unsupported(self.peek().span, "state variable initializer"));
        }
        let end = self.expect_punct(";")?.span.end;
        Ok(StateVar {
            meta: Meta { id: 0, span: Span::new(start, end) },
            ty,
            visibility,
            name,
        })
    }

    fn opt_visibility(&mut self) -> Option<Visibility> {
        for (w, v) in [
            ("public", Visibility::Public),
            ("external", Visibility::External),
            ("internal", Visibility::Internal),
            ("private", Visibility::Private),
        ] {
            if self.at_word(w) {
                self.bump();
                return Some(v);
            }
        }
        None
    }

    fn event(&mut self) -> Result<EventDecl, ParseError> {
        let start = self.expect_word("event")?.span.start;
        let (name, _) = self.expect_ident("event name")?;
        self.expect_punct("(")?;
        let params = self.params()?;
        self.expect_punct(")")?;
        let end = self.expect_punct(";")?.span.end;
        Ok(EventDecl {
            meta: Meta { id: 0, span: Span::new(start, end) },
            name,
            params,
        })
    }

    fn params(&mut self) -> Result<Vec<Param>, ParseError> {
        let mut out = Vec::new();
        if self.at_punct(")") {
            return Ok(out);
        }
        loop {
            let (ty, first) = self.type_name()?;
            if ty.is_mapping() {
                return Err(self.unsupported(first.span, "mapping parameter"));
            }
            let (name, last) = self.expect_ident("parameter name")?;
            out.push(Param {
                meta: Meta { id: 0, span: Span::new(first.span.start, last.span.end) },
                ty,
                name,
            });
            if !self.eat_punct(",") {
                break;
            }
        }
        Ok(out)
    }

    fn function(&mut self) -> Result<FunctionDef, ParseError> {
        let is_constructor = self.at_word("constructor");
        let start = self.bump().span.start; // 'function' or 'constructor'
        let name = if is_constructor {
            String::from("constructor")
        } else {
            self.expect_ident("function name")?.0
        };
        self.expect_punct("(")?;
        let params = self.params()?;
        self.expect_punct(")")?;

        let mut visibility = if is_constructor { Visibility::Public } else { Visibility::Internal };
        let mut mutability = Mutability::NonPayable;
        loop {
            if let Some(v) = self.opt_visibility() {
                visibility = v;
                continue;
            }
            if self.eat_word("view") {
                mutability = Mutability::View;
                continue;
            }
            if self.eat_word("pure") {
                mutability = Mutability::Pure;
                continue;
            }
            if self.eat_word("payable") {
                mutability = Mutability::Payable;
                continue;
            }
            if self.at_word("virtual") || self.at_word("override") {
                return Err(self.unsupported(self.peek().span, "inheritance modifier"));
            }
            break;
        }
        let mut returns = None;
        if self.eat_word("returns") {
            self.expect_punct("(")?;
            let (ty, first) = self.type_name()?;
            if ty.is_mapping() {
                return Err(self.unsupported(first.span, "mapping return type"));
            }
            // named returns are out of the subset; require a bare type
            if matches!(self.peek().tok, Tok::Ident(_)) {
                return Err(self.unsupported(self.peek().span, "named return value"));
            }
            self.expect_punct(")")?;
            returns = Some(ty);
        }
        let body = self.block()?;
        let end = body.meta.span.end;
        Ok(FunctionDef {
            meta: Meta { id: 0, span: Span::new(start, end) },
            name,
            is_constructor,
            params,
            visibility,
            mutability,
            returns,
            body,
        })
    }

    fn block(&mut self) -> Result<Block, ParseError> {
        let start = self.expect_punct("{")?.span.start;
        let mut statements = Vec::new();
        while !self.at_punct("}") {
            if self.at_eof() {
                return Err(self.err_here("'}'"));
            }
            statements.push(self.statement()?);
        }
        let end = self.expect_punct("}")?.span.end;
        Ok(Block { meta: Meta { id: 0, span: Span::new(start, end) }, statements })
    }

    fn statement(&mut self) -> Result<Statement, ParseError> {
        self.check_unsupported()?;
        if self.at_punct("{") {
            return Ok(Statement::Block(self.block()?));
        }
        if self.at_word("if") {
            return self.if_statement();
        }
        if self.at_word("while") {
            let start = self.bump().span.start;
            self.expect_punct("(")?;
            let cond = self.expr()?;
            self.expect_punct(")")?;
            let body = self.block()?;
            let end = body.meta.span.end;
            return Ok(Statement::While {
                meta: Meta { id: 0, span: Span::new(start, end) },
                cond,
                body,
            });
        }
        if self.at_word("for") {
            return self.for_statement();
        }
        if self.at_word("return") {
            let start = self.bump().span.start;
            let value = if self.at_punct(";") { None } else { Some(self.expr()?) };
            let end = self.expect_punct(";")?.span.end;
            return Ok(Statement::Return {
                meta: Meta { id: 0, span: Span::new(start, end) },
                value,
            });
        }
        if self.at_word("require") {
            let start = self.bump().span.start;
            self.expect_punct("(")?;
            let cond = self.expr()?;
            let message = if self.eat_punct(",") {
                match &self.peek().tok {
                    Tok::Str(s) => {
                        let s = s.clone();
                        self.bump();
                        Some(s)
                    }
                    _ => return Err(self.err_here("string literal")),
                }
            } else {
                None
            };
            self.expect_punct(")")?;
            let end = self.expect_punct(";")?.span.end;
            return Ok(Statement::Require {
                meta: Meta { id: 0, span: Span::new(start, end) },
                cond,
                message,
            });
        }
        if self.at_word("assert") {
            let start = self.bump().span.start;
            self.expect_punct("(")?;
            let cond = self.expr()?;
            self.expect_punct(")")?;
            let end = self.expect_punct(";")?.span.end;
            return Ok(Statement::Assert {
                meta: Meta { id: 0, span: Span::new(start, end) },
                cond,
            });
        }
        if self.at_word("revert") {
            let start = self.bump().span.start;
            self.expect_punct("(")?;
            let message = match &self.peek().tok {
                Tok::Str(s) => {
                    let s = s.clone();
                    self.bump();
                    Some(s)
                }
                _ => None,
            };
            self.expect_punct(")")?;
            let end = self.expect_punct(";")?.span.end;
            return Ok(Statement::Revert {
                meta: Meta { id: 0, span: Span::new(start, end) },
                message,
            });
        }
        if self.at_word("emit") {
            let start = self.bump().span.start;
            let (event, _) = self.expect_ident("event name")?;
            self.expect_punct("(")?;
            let args = self.call_args()?;
            self.expect_punct(")")?;
            let end = self.expect_punct(";")?.span.end;
            return Ok(Statement::Emit {
                meta: Meta { id: 0, span: Span::new(start, end) },
                event,
                args,
            });
        }
        if self.at_type_start() && !self.var_decl_is_expr_start() {
            return self.var_decl_statement();
        }
        // expression or assignment
        let start = self.peek().span.start;
        let expr = self.expr()?;
        if self.at_punct("=") {
            self.bump();
            if expr.lvalue_root().is_none() {
                let (line, col) = line_col(self.text, start);
                return Err(ParseError::Syntax {
                    line,
                    col,
                    expected: "assignable target (identifier or mapping entry)".to_string(),
                });
            }
            let value = self.expr()?;
            let end = self.expect_punct(";")?.span.end;
            return Ok(Statement::Assign {
                meta: Meta { id: 0, span: Span::new(start, end) },
                target: expr,
                value,
            });
        }
        let end = self.expect_punct(";")?.span.end;
        Ok(Statement::ExprStmt {
            meta: Meta { id: 0, span: Span::new(start, end) },
            expr,
        })
    }

    /// `address(this).balance` starts with the type word `address`; detect it
    /// so it is parsed as an expression, not a declaration.
    fn var_decl_is_expr_start(&self) -> bool {
        self.at_word("address") && matches!(self.peek2().tok, Tok::Punct("("))
    }

    fn var_decl_statement(&mut self) -> Result<Statement, ParseError> {
        let (ty, first) = self.type_name()?;
        if ty.is_mapping() {
            return Err(self.unsupported(first.span, "mapping local variable"));
        }
        let (name, _) = self.expect_ident("variable name")?;
        let init = if self.eat_punct("=") { Some(self.expr()?) } else { None };
        let end = self.expect_punct(";")?.span.end;
        Ok(Statement::VarDecl {
            meta: Meta { id: 0, span: Span::new(first.span.start, end) },
            ty,
            name,
            init,
        })
    }

    fn if_statement(&mut self) -> Result<Statement, ParseError> {
        let start = self.expect_word("if")?.span.start;
        self.expect_punct("(")?;
        let cond = self.expr()?;
        self.expect_punct(")")?;
        let then_block = self.block()?;
        let mut end = then_block.meta.span.end;
        let else_block = if self.eat_word("else") {
            let b = if self.at_word("if") {
                // represent `else if` as an else block holding a single if
                let inner = self.if_statement()?;
                let span = *match &inner {
                    Statement::If { meta, .. } => &meta.span,
                    _ => unreachable!(),
                };
                Block { meta: Meta { id: 0, span }, statements: vec![inner] }
            } else {
                self.block()?
            };
            end = b.meta.span.end;
            Some(b)
        } else {
            None
        };
        Ok(Statement::If {
            meta: Meta { id: 0, span: Span::new(start, end) },
            cond,
            then_block,
            else_block,
        })
    }

    fn for_statement(&mut self) -> Result<Statement, ParseError> {
        let start = self.expect_word("for")?.span.start;
        self.expect_punct("(")?;
        let init = if self.at_punct(";") {
            self.bump();
            None
        } else if self.at_type_start() && !self.var_decl_is_expr_start() {
            Some(Box::new(self.var_decl_statement()?))
        } else {
            let s = self.simple_assign()?;
            self.expect_punct(";")?;
            Some(Box::new(s))
        };
        let cond = if self.at_punct(";") { None } else { Some(self.expr()?) };
        self.expect_punct(";")?;
        let post = if self.at_punct(")") { None } else { Some(Box::new(self.simple_assign()?)) };
        self.expect_punct(")")?;
        let body = self.block()?;
        let end = body.meta.span.end;
        Ok(Statement::For {
            meta: Meta { id: 0, span: Span::new(start, end) },
            init,
            cond,
            post,
            body,
        })
    }

    /// Assignment without the trailing semicolon (for-loop clauses).
    fn simple_assign(&mut self) -> Result<Statement, ParseError> {
        let start = self.peek().span.start;
        let target = self.expr()?;
        self.expect_punct("=")?;
        if target.lvalue_root().is_none() {
            let (line, col) = line_col(self.text, start);
            return Err(ParseError::Syntax {
                line,
                col,
                expected: "assignable target".to_string(),
            });
        }
        let value = self.expr()?;
        let end = value.meta().span.end;
        Ok(Statement::Assign {
            meta: Meta { id: 0, span: Span::new(start, end) },
            target,
            value,
        })
    }

    // -- expressions (precedence climbing) --------------------------------

    fn expr(&mut self) -> Result<Expr, ParseError> {
        self.or_expr()
    }

    fn or_expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.and_expr()?;
        while self.at_punct("||") {
            self.bump();
            let rhs = self.and_expr()?;
            lhs = binary(BinaryOp::Or, lhs, rhs);
        }
        Ok(lhs)
    }

    fn and_expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.equality_expr()?;
        while self.at_punct("&&") {
            self.bump();
            let rhs = self.equality_expr()?;
            lhs = binary(BinaryOp::And, lhs, rhs);
        }
        Ok(lhs)
    }

    fn equality_expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.relational_expr()?;
        loop {
            let op = if self.at_punct("==") {
                BinaryOp::Eq
            } else if self.at_punct("!=") {
                BinaryOp::Ne
            } else {
                break;
            };
            self.bump();
            let rhs = self.relational_expr()?;
            lhs = binary(op, lhs, rhs);
        }
        Ok(lhs)
    }

    fn relational_expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.additive_expr()?;
        loop {
            let op = if self.at_punct("<=") {
                BinaryOp::Le
            } else if self.at_punct(">=") {
                BinaryOp::Ge
            } else if self.at_punct("<") {
                BinaryOp::Lt
            } else if self.at_punct(">") {
                BinaryOp::Gt
            } else {
                break;
            };
            self.bump();
            let rhs = self.additive_expr()?;
            lhs = binary(op, lhs, rhs);
        }
        Ok(lhs)
    }

    fn additive_expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.multiplicative_expr()?;
        loop {
            let op = if self.at_punct("+") {
                BinaryOp::Add
            } else if self.at_punct("-") {
                BinaryOp::Sub
            } else {
                break;
            };
            self.bump();
            let rhs = self.multiplicative_expr()?;
            lhs = binary(op, lhs, rhs);
        }
        Ok(lhs)
    }

    fn multiplicative_expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary_expr()?;
        loop {
            let op = if self.at_punct("*") {
                BinaryOp::Mul
            } else if self.at_punct("/") {
                BinaryOp::Div
            } else if self.at_punct("%") {
                BinaryOp::Mod
            } else {
                break;
            };
            self.bump();
            let rhs = self.unary_expr()?;
            lhs = binary(op, lhs, rhs);
        }
        Ok(lhs)
    }

    fn unary_expr(&mut self) -> Result<Expr, ParseError> {
        if self.at_punct("!") {
            let start = self.bump().span.start;
            let operand = self.unary_expr()?;
            let end = operand.meta().span.end;
            return Ok(Expr::Unary {
                meta: Meta { id: 0, span: Span::new(start, end) },
                op: UnaryOp::Not,
                operand: Box::new(operand),
            });
        }
        if self.at_punct("-") {
            let start = self.bump().span.start;
            let operand = self.unary_expr()?;
            let end = operand.meta().span.end;
            return Ok(Expr::Unary {
                meta: Meta { id: 0, span: Span::new(start, end) },
                op: UnaryOp::Neg,
                operand: Box::new(operand),
            });
        }
        self.postfix_expr()
    }

    fn postfix_expr(&mut self) -> Result<Expr, ParseError> {
        let mut expr = self.primary_expr()?;
        loop {
            if self.at_punct("[") {
                let start = expr.meta().span.start;
                self.bump();
                let index = self.expr()?;
                let end = self.expect_punct("]")?.span.end;
                expr = Expr::Index {
                    meta: Meta { id: 0, span: Span::new(start, end) },
                    base: Box::new(expr),
                    index: Box::new(index),
                };
                continue;
            }
            if self.at_punct(".") {
                return Err(self.unsupported(self.peek().span, "member access"));
            }
            break;
        }
        Ok(expr)
    }

    fn call_args(&mut self) -> Result<Vec<Expr>, ParseError> {
        let mut args = Vec::new();
        if self.at_punct(")") {
            return Ok(args);
        }
        loop {
            args.push(self.expr()?);
            if !self.eat_punct(",") {
                break;
            }
        }
        Ok(args)
    }

    fn primary_expr(&mut self) -> Result<Expr, ParseError> {
        self.check_unsupported()?;
        let tok = self.peek().clone();
        match &tok.tok {
            Tok::Number(v, raw) => {
                self.bump();
                // `0x` + exactly 40 hex digits denotes an address literal
                if raw.len() == 42 && (raw.starts_with("0x") || raw.starts_with("0X")) {
                    let addr = Address::from_hex(raw).expect("40 hex digits");
                    return Ok(Expr::AddrLit { meta: Meta { id: 0, span: tok.span }, value: addr });
                }
                Ok(Expr::IntLit { meta: Meta { id: 0, span: tok.span }, value: *v })
            }
            Tok::Punct("(") => {
                self.bump();
                let inner = self.expr()?;
                self.expect_punct(")")?;
                Ok(inner)
            }
            Tok::Ident(word) => match word.as_str() {
                "true" | "false" => {
                    let value = word == "true";
                    self.bump();
                    Ok(Expr::BoolLit { meta: Meta { id: 0, span: tok.span }, value })
                }
                "msg" => {
                    let start = self.bump().span.start;
                    self.expect_punct(".")?;
                    let (field, last) = self.expect_ident("'sender' or 'value'")?;
                    let kind = match field.as_str() {
                        "sender" => MemberKind::MsgSender,
                        "value" => MemberKind::MsgValue,
                        other => return Err(self.unsupported(last.span, &format!("msg.{other}"))),
                    };
                    Ok(Expr::Member {
                        meta: Meta { id: 0, span: Span::new(start, last.span.end) },
                        kind,
                    })
                }
                "address" => {
                    // only `address(this).balance` is in the subset
                    let start = self.bump().span.start;
                    self.expect_punct("(")?;
                    self.expect_word("this")?;
                    self.expect_punct(")")?;
                    self.expect_punct(".")?;
                    let last = self.expect_word("balance")?;
                    Ok(Expr::Member {
                        meta: Meta { id: 0, span: Span::new(start, last.span.end) },
                        kind: MemberKind::ThisBalance,
                    })
                }
                "this" => Err(self.unsupported(tok.span, "bare `this`")),
                _ => {
                    let name = word.clone();
                    let start = self.bump().span;
                    if self.at_punct("(") {
                        self.bump();
                        let args = self.call_args()?;
                        let end = self.expect_punct(")")?.span.end;
                        let kind = if name == "__prom_alert" {
                            CallKind::Builtin
                        } else {
                            CallKind::Internal
                        };
                        return Ok(Expr::Call {
                            meta: Meta { id: 0, span: Span::new(start.start, end) },
                            kind,
                            callee: name,
                            args,
                        });
                    }
                    Ok(Expr::Ident { meta: Meta { id: 0, span: start }, name })
                }
            },
            _ => Err(self.err_here("expression")),
        }
    }
}

fn binary(op: BinaryOp, lhs: Expr, rhs: Expr) -> Expr {
    let span = Span::new(lhs.meta().span.start, rhs.meta().span.end);
    Expr::Binary {
        meta: Meta { id: 0, span },
        op,
        lhs: Box::new(lhs),
        rhs: Box::new(rhs),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ast;

    #[test]
    fn empty_contract() {
        let unit = parse("t.sol", "contract C {}").unwrap();
        assert_eq!(unit.contracts.len(), 1);
        assert_eq!(unit.contracts[0].name, "C");
        assert!(unit.contracts[0].members.is_empty());
    }

    #[test]
    fn assembly_is_unsupported() {
        let src = "contract C { function f() public { assembly {} } }";
        match parse("t.sol", src) {
            Err(ParseError::Unsupported { feature, .. }) => assert_eq!(feature, "assembly"),
            other => panic!("expected UnsupportedFeature, got {other:?}"),
        }
    }

    #[test]
    fn library_is_unsupported() {
        match parse("t.sol", "library L {}") {
            Err(ParseError::Unsupported { feature, .. }) => assert_eq!(feature, "library"),
            other => panic!("expected UnsupportedFeature, got {other:?}"),
        }
    }

    #[test]
    fn preorder_ids_are_dense() {
        let src = r#"
pragma solidity ^0.8.0;
contract C {
    uint256 public x;
    mapping(address => uint256) public bal;
    function set(uint256 v) public {
        if (v > 0) {
            x = v;
        } else {
            x = 0;
        }
    }
}
"#;
        let unit = parse("t.sol", src).unwrap();
        let count = ast::node_count(&unit);
        let mut max = 0;
        let mut seen = std::collections::BTreeSet::new();
        ast::walk_metas(&unit, &mut |m, _| {
            max = max.max(m.id);
            seen.insert(m.id);
        });
        assert_eq!(max + 1, count);
        assert_eq!(seen.len() as u32, count);
    }

    #[test]
    fn spans_nest() {
        let src = r#"
contract C {
    uint256 public x;
    function f(uint256 a) public returns (uint256) {
        uint256 y = a + 1;
        while (y > 0) {
            y = y - 1;
        }
        return y;
    }
}
"#;
        let unit = parse("t.sol", src).unwrap();
        // every statement span must sit inside its function body span
        let f = unit.contracts[0].function("f").unwrap();
        for s in &f.body.statements {
            assert!(f.body.meta.span.contains(&s.meta().span));
        }
        // statement spans include the trailing semicolon
        let first = &f.body.statements[0];
        assert!(unit.raw_text[..first.meta().span.end].ends_with(';'));
    }

    #[test]
    fn address_literal_vs_int_literal() {
        let src = "contract C { function f() public { uint256 a = 0xff; address b = 0x0000000000000000000000000000000000000001; a = a; b = b; } }";
        let unit = parse("t.sol", src).unwrap();
        let f = unit.contracts[0].function("f").unwrap();
        match &f.body.statements[0] {
            Statement::VarDecl { init: Some(Expr::IntLit { value, .. }), .. } => {
                assert_eq!(*value, crate::u256::U256::from_u64(255));
            }
            other => panic!("expected int literal, got {other:?}"),
        }
        match &f.body.statements[1] {
            Statement::VarDecl { init: Some(Expr::AddrLit { .. }), .. } => {}
            other => panic!("expected address literal, got {other:?}"),
        }
    }

    #[test]
    fn this_balance_member() {
        let e = parse_expression("address(this).balance - msg.value").unwrap();
        match e {
            Expr::Binary { op: BinaryOp::Sub, .. } => {}
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn bad_expression_fragment() {
        assert!(parse_expression("x +").is_err());
    }

    #[test]
    fn alert_call_is_builtin() {
        let stmts = parse_statements("__prom_alert(3);").unwrap();
        match &stmts[0] {
            Statement::ExprStmt { expr: Expr::Call { kind: CallKind::Builtin, callee, .. }, .. } => {
                assert_eq!(callee, "__prom_alert");
            }
            other => panic!("unexpected {other:?}"),
        }
    }
}
