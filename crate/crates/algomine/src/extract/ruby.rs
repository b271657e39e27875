//! Ruby lexer: `#` line comments and `=begin`/`=end` embedded documents.
//!
//! String traps handled: single and double quotes (which may span lines in
//! Ruby), `%q`/`%Q` literals with paired or symmetric delimiters, and
//! heredocs. Heredoc bodies start on the line after their marker, so markers
//! seen on a line are queued and their bodies consumed once the line ends.

use super::clike::consume_string;
use super::{Cursor, LexOutput};

pub(crate) fn lex(content: &str) -> LexOutput {
    let mut cur = Cursor::new(content);
    let mut out = LexOutput::default();
    let mut pending_heredocs: Vec<String> = Vec::new();

    while let Some(c) = cur.peek() {
        if cur.at_line_start() && cur.starts_with("=begin") && boundary_at(&cur, 6) {
            consume_embedded_doc(&mut cur, &mut out);
            continue;
        }
        if c == '#' {
            let line = cur.line();
            cur.bump();
            let text = cur.take_line();
            out.line_comment(line, &text);
            continue;
        }
        if c == '\n' {
            cur.bump();
            for tag in std::mem::take(&mut pending_heredocs) {
                consume_heredoc_body(&mut cur, &mut out, &tag);
            }
            continue;
        }
        if c.is_whitespace() {
            cur.bump();
            continue;
        }

        out.code_lines.insert(cur.line());
        match c {
            '"' | '\'' => consume_string(&mut cur, &mut out, c, true),
            '%' if matches!(cur.peek_at(1), Some('q' | 'Q')) => {
                match cur.peek_at(2) {
                    Some(d) if !d.is_alphanumeric() && !d.is_whitespace() => {
                        cur.bump_n(2);
                        consume_percent_literal(&mut cur, &mut out, d);
                    }
                    _ => {
                        cur.bump();
                    }
                }
            }
            '<' if cur.peek_at(1) == Some('<') => {
                if let Some((header_len, tag)) = heredoc_header(&cur) {
                    cur.bump_n(header_len);
                    pending_heredocs.push(tag);
                } else {
                    cur.bump();
                }
            }
            _ => {
                cur.bump();
            }
        }
    }
    out
}

fn boundary_at(cur: &Cursor, offset: usize) -> bool {
    match cur.peek_at(offset) {
        None => true,
        Some(c) => c.is_whitespace(),
    }
}

/// `=begin` ... `=end`, both at column zero. Interior lines become one block
/// comment. A missing `=end` still emits the document, with a warning.
fn consume_embedded_doc(cur: &mut Cursor, out: &mut LexOutput) {
    let start_line = cur.line();
    cur.take_line();
    cur.bump();
    let mut body: Vec<String> = Vec::new();
    loop {
        if cur.eof() {
            out.warnings
                .push(format!("line {}: unterminated =begin document", start_line));
            let end_line = start_line + body.len();
            out.block_comment(start_line, end_line, &body.join("\n"));
            return;
        }
        if cur.starts_with("=end") && boundary_at(cur, 4) {
            let end_line = cur.line();
            cur.take_line();
            cur.bump();
            out.block_comment(start_line, end_line, &body.join("\n"));
            return;
        }
        body.push(cur.take_line());
        cur.bump();
    }
}

fn consume_percent_literal(cur: &mut Cursor, out: &mut LexOutput, open: char) {
    let close = match open {
        '(' => ')',
        '[' => ']',
        '{' => '}',
        '<' => '>',
        other => other,
    };
    let nests = open != close;
    let mut depth = 1usize;
    cur.bump();
    while let Some(c) = cur.peek() {
        if c == '\\' {
            cur.bump();
            cur.bump();
            continue;
        }
        if nests && c == open {
            depth += 1;
        } else if c == close {
            depth -= 1;
            if depth == 0 {
                out.code_lines.insert(cur.line());
                cur.bump();
                return;
            }
        }
        if !c.is_whitespace() {
            out.code_lines.insert(cur.line());
        }
        cur.bump();
    }
}

/// Recognizes `<<~TAG`, `<<-TAG`, `<<TAG`, `<<'TAG'` and `<<"TAG"` under the
/// cursor. A bare `<<` followed by a lowercase identifier is taken for a
/// shift so `a << b` stays an expression; squiggly and dash forms accept any
/// identifier, matching how heredocs are written in practice.
fn heredoc_header(cur: &Cursor) -> Option<(usize, String)> {
    let mut i = 2;
    let squiggly = matches!(cur.peek_at(i), Some('~' | '-'));
    if squiggly {
        i += 1;
    }
    let quote = match cur.peek_at(i) {
        Some(q @ ('\'' | '"')) => {
            i += 1;
            Some(q)
        }
        _ => None,
    };
    let first = cur.peek_at(i)?;
    let plain_ok = first.is_ascii_uppercase() || first == '_';
    if !(first.is_ascii_alphabetic() || first == '_') {
        return None;
    }
    if quote.is_none() && !squiggly && !plain_ok {
        return None;
    }
    let mut tag = String::new();
    while let Some(c) = cur.peek_at(i) {
        if c.is_ascii_alphanumeric() || c == '_' {
            tag.push(c);
            i += 1;
        } else {
            break;
        }
    }
    if let Some(q) = quote {
        if cur.peek_at(i) != Some(q) {
            return None;
        }
        i += 1;
    }
    Some((i, tag))
}

fn consume_heredoc_body(cur: &mut Cursor, out: &mut LexOutput, tag: &str) {
    while !cur.eof() {
        let line_no = cur.line();
        let line = cur.take_line();
        cur.bump();
        if line.trim() == tag {
            out.code_lines.insert(line_no);
            return;
        }
        if !line.trim().is_empty() {
            out.code_lines.insert(line_no);
        }
    }
}
