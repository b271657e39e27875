//! Lexer for the C-family languages: C, C++, Java and JavaScript.
//!
//! All four share `//` line comments and `/* */` block comments plus quoted
//! string and character literals with backslash escapes. Java adds `"""`
//! text blocks. JavaScript adds template literals (with `${}` interpolation)
//! and regex literals, which may contain comment-looking sequences such as
//! `https?:\/\//` and must be skipped as literals.

use super::{Cursor, LexOutput};
use crate::language::Language;

/// Characters after which a `/` in JavaScript starts a regex literal rather
/// than a division. A `/` at the very start of the input counts too.
const REGEX_PRECEDERS: &[char] = &['(', ',', '=', ':', '[', '!', '&', '|', '?', '{', '}', ';'];

pub(crate) fn lex(content: &str, language: Language) -> LexOutput {
    let js = language == Language::JavaScript;
    let java = language == Language::Java;
    let mut cur = Cursor::new(content);
    let mut out = LexOutput::default();
    // Last significant code character, used only for the JS regex heuristic.
    let mut last_sig: Option<char> = None;

    while let Some(c) = cur.peek() {
        if c == '/' && cur.peek_at(1) == Some('/') {
            let line = cur.line();
            cur.bump_n(2);
            let text = cur.take_line();
            out.line_comment(line, &text);
            continue;
        }
        if c == '/' && cur.peek_at(1) == Some('*') {
            consume_block_comment(&mut cur, &mut out);
            continue;
        }
        if c.is_whitespace() {
            cur.bump();
            continue;
        }

        out.code_lines.insert(cur.line());
        match c {
            '"' if java && cur.starts_with("\"\"\"") => {
                consume_text_block(&mut cur, &mut out);
                last_sig = Some('"');
            }
            '"' | '\'' => {
                consume_string(&mut cur, &mut out, c, false);
                last_sig = Some(c);
            }
            '`' if js => {
                consume_template(&mut cur, &mut out);
                last_sig = Some('`');
            }
            '/' if js && last_sig.map_or(true, |p| REGEX_PRECEDERS.contains(&p)) => {
                consume_regex(&mut cur, &mut out);
                last_sig = Some('/');
            }
            _ => {
                cur.bump();
                last_sig = Some(c);
            }
        }
    }
    out
}

fn consume_block_comment(cur: &mut Cursor, out: &mut LexOutput) {
    let start_line = cur.line();
    cur.bump_n(2);
    let mut text = String::new();
    let mut end_line = start_line;
    loop {
        if cur.starts_with("*/") {
            end_line = cur.line();
            cur.bump_n(2);
            break;
        }
        match cur.peek() {
            Some(c) => {
                end_line = cur.line();
                text.push(c);
                cur.bump();
            }
            None => {
                out.warnings.push(format!("line {}: unterminated block comment", start_line));
                break;
            }
        }
    }
    out.block_comment(start_line, end_line, &text);
}

/// A quoted literal. Ends at the closing quote; without `multiline`, an
/// unescaped newline also ends it so a stray quote cannot swallow the file.
pub(super) fn consume_string(cur: &mut Cursor, out: &mut LexOutput, quote: char, multiline: bool) {
    cur.bump();
    while let Some(c) = cur.peek() {
        if c == '\\' {
            cur.bump();
            cur.bump();
            continue;
        }
        if c == quote {
            out.code_lines.insert(cur.line());
            cur.bump();
            return;
        }
        if c == '\n' {
            if !multiline {
                return;
            }
            cur.bump();
            continue;
        }
        if !c.is_whitespace() {
            out.code_lines.insert(cur.line());
        }
        cur.bump();
    }
}

fn consume_text_block(cur: &mut Cursor, out: &mut LexOutput) {
    cur.bump_n(3);
    while !cur.eof() {
        if cur.starts_with("\"\"\"") {
            out.code_lines.insert(cur.line());
            cur.bump_n(3);
            return;
        }
        if !cur.peek().unwrap().is_whitespace() {
            out.code_lines.insert(cur.line());
        }
        cur.bump();
    }
}

fn consume_template(cur: &mut Cursor, out: &mut LexOutput) {
    cur.bump();
    while let Some(c) = cur.peek() {
        if c == '\\' {
            cur.bump();
            cur.bump();
            continue;
        }
        if c == '`' {
            out.code_lines.insert(cur.line());
            cur.bump();
            return;
        }
        if cur.starts_with("${") {
            out.code_lines.insert(cur.line());
            cur.bump_n(2);
            consume_template_expr(cur, out);
            continue;
        }
        if !c.is_whitespace() {
            out.code_lines.insert(cur.line());
        }
        cur.bump();
    }
}

/// The `${ ... }` hole of a template literal: balanced braces with nested
/// strings and templates skipped. Comment markers inside a hole are left
/// alone; treating them as text can only under-extract, never corrupt state.
fn consume_template_expr(cur: &mut Cursor, out: &mut LexOutput) {
    let mut depth = 1usize;
    while let Some(c) = cur.peek() {
        match c {
            '{' => {
                depth += 1;
                cur.bump();
            }
            '}' => {
                depth -= 1;
                cur.bump();
                if depth == 0 {
                    return;
                }
            }
            '"' | '\'' => consume_string(cur, out, c, false),
            '`' => consume_template(cur, out),
            _ => {
                if !c.is_whitespace() {
                    out.code_lines.insert(cur.line());
                }
                cur.bump();
            }
        }
    }
}

/// A regex literal: `/pattern/flags`. A `/` inside a `[...]` class does not
/// terminate it. Regexes cannot span lines, so a newline ends the scan.
fn consume_regex(cur: &mut Cursor, out: &mut LexOutput) {
    cur.bump();
    let mut in_class = false;
    while let Some(c) = cur.peek() {
        match c {
            '\\' => {
                cur.bump();
                cur.bump();
            }
            '\n' => return,
            '[' => {
                in_class = true;
                cur.bump();
            }
            ']' => {
                in_class = false;
                cur.bump();
            }
            '/' if !in_class => {
                out.code_lines.insert(cur.line());
                cur.bump();
                while cur.peek().is_some_and(|f| f.is_ascii_alphabetic()) {
                    cur.bump();
                }
                return;
            }
            _ => {
                if !c.is_whitespace() {
                    out.code_lines.insert(cur.line());
                }
                cur.bump();
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::RawKind;
    use super::*;

    fn texts(content: &str, language: Language) -> Vec<String> {
        lex(content, language).comments.iter().map(|c| c.text.clone()).collect()
    }

    #[test]
    fn line_and_block_comments() {
        let got = lex("// a\nint x; /* b */\n", Language::C);
        assert_eq!(got.comments.len(), 2);
        assert_eq!(got.comments[0].kind, RawKind::Line);
        assert_eq!(got.comments[0].text, "a");
        assert_eq!(got.comments[1].kind, RawKind::Block);
        assert_eq!(got.comments[1].text, "b");
        assert!(got.code_lines.contains(&2));
        assert!(!got.code_lines.contains(&1));
    }

    #[test]
    fn comment_markers_inside_strings_are_ignored() {
        let got = texts("printf(\"/* not a comment */ // neither\");\n// real\n", Language::C);
        assert_eq!(got, ["real"]);
    }

    #[test]
    fn escaped_quote_does_not_end_the_string() {
        let got = texts("s = \"a \\\" // b\"; // real\n", Language::C);
        assert_eq!(got, ["real"]);
    }

    #[test]
    fn char_literal_with_quote_is_not_a_string_start() {
        let got = texts("char c = '\"'; // real\nchar d = '\\''; // two\n", Language::C);
        assert_eq!(got, ["real", "two"]);
    }

    #[test]
    fn unterminated_block_comment_is_emitted_with_warning() {
        let got = lex("int x;\n/* trailing thought\nnever closed\n", Language::C);
        assert_eq!(got.comments.len(), 1);
        assert_eq!(got.comments[0].text, "trailing thought\nnever closed");
        assert_eq!(got.comments[0].start_line, 2);
        assert_eq!(got.comments[0].end_line, 3);
        assert_eq!(got.warnings.len(), 1);
    }

    #[test]
    fn multiline_block_comment_spans_lines() {
        let got = lex("/* one\n * two\n */\n", Language::Cpp);
        assert_eq!(got.comments[0].start_line, 1);
        assert_eq!(got.comments[0].end_line, 3);
        assert_eq!(got.comments[0].text, "one\n * two");
    }

    #[test]
    fn js_template_literal_hides_comment_markers() {
        let got = texts(
            "const s = `a ${x} // not a comment /* nor this */`;\n// real\n",
            Language::JavaScript,
        );
        assert_eq!(got, ["real"]);
    }

    #[test]
    fn js_template_expr_with_nested_string() {
        let got = texts(
            "const s = `v=${obj[\"k // x\"]} done`;\n// real\n",
            Language::JavaScript,
        );
        assert_eq!(got, ["real"]);
    }

    #[test]
    fn js_regex_with_double_slash_is_a_literal() {
        let got = texts(
            "var re = /https?:\\/\\//; // real\nif (x) { y = /a[/]b/g; } // two\n",
            Language::JavaScript,
        );
        assert_eq!(got, ["real", "two"]);
    }

    #[test]
    fn js_division_is_not_a_regex() {
        let got = texts("var x = a / b; // real\n", Language::JavaScript);
        assert_eq!(got, ["real"]);
    }

    #[test]
    fn java_text_block_is_skipped() {
        let got = texts(
            "String s = \"\"\"\n  // not a comment\n  \"\"\";\n// real\n",
            Language::Java,
        );
        assert_eq!(got, ["real"]);
    }

    #[test]
    fn code_lines_cover_string_interiors() {
        let got = lex("var s = `one\ntwo\nthree`;\n// after\n", Language::JavaScript);
        assert!(got.code_lines.contains(&1));
        assert!(got.code_lines.contains(&2));
        assert!(got.code_lines.contains(&3));
        assert!(!got.code_lines.contains(&4));
    }
}
