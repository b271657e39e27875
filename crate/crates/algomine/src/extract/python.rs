//! Python lexer: `#` comments plus docstrings.
//!
//! A docstring is a string literal standing alone as the first statement of
//! a suite (module top, or right after a header line ending in `:`). The
//! lexer tracks logical lines (bracket nesting and backslash continuations)
//! so that a string deep inside a multi-line call is never mistaken for one,
//! and comment or blank lines before a docstring do not disqualify it.

use super::{Cursor, LexOutput, RawComment, RawKind};

pub(crate) fn lex(content: &str, docstrings: bool) -> LexOutput {
    let mut cur = Cursor::new(content);
    let mut out = LexOutput::default();
    let mut bracket_depth: usize = 0;
    // True while the next code character would begin a new statement.
    let mut statement_start = true;
    // True while a string statement here would be a docstring.
    let mut expecting_docstring = true;
    // Last significant character of the logical line in progress.
    let mut last_sig: Option<char> = None;

    while let Some(c) = cur.peek() {
        if c == '#' {
            let line = cur.line();
            cur.bump();
            let text = cur.take_line();
            out.line_comment(line, &text);
            continue;
        }
        if c == '\n' {
            cur.bump();
            if bracket_depth == 0 && !statement_start {
                expecting_docstring = last_sig == Some(':');
                statement_start = true;
                last_sig = None;
            }
            continue;
        }
        if c.is_whitespace() {
            cur.bump();
            continue;
        }
        if c == '\\' && cur.peek_at(1) == Some('\n') {
            out.code_lines.insert(cur.line());
            cur.bump_n(2);
            continue;
        }

        out.code_lines.insert(cur.line());

        if let Some((prefix_len, quote)) = string_start(&cur) {
            let begins_statement = statement_start;
            let start_line = cur.line();
            statement_start = false;
            cur.bump_n(prefix_len);
            let lit = consume_py_string(&mut cur, &mut out, quote);
            last_sig = Some(quote);
            if begins_statement
                && expecting_docstring
                && docstrings
                && lit.closed
                && rest_of_line_is_blank_or_comment(&cur)
            {
                out.comments.push(RawComment {
                    kind: RawKind::Block,
                    start_line,
                    end_line: lit.end_line,
                    text: lit.text.trim().to_string(),
                });
            }
            continue;
        }

        match c {
            '(' | '[' | '{' => bracket_depth += 1,
            ')' | ']' | '}' => bracket_depth = bracket_depth.saturating_sub(1),
            _ => {}
        }
        statement_start = false;
        last_sig = Some(c);
        cur.bump();
    }
    out
}

/// Is the cursor at the start of a string literal? Returns the prefix length
/// (`r`, `b`, `f`, `u` and two-letter combinations) and the quote character.
fn string_start(cur: &Cursor) -> Option<(usize, char)> {
    let mut i = 0;
    while i < 2 {
        match cur.peek_at(i) {
            Some(c) if "rbufRBUF".contains(c) => i += 1,
            _ => break,
        }
    }
    match cur.peek_at(i) {
        Some(q @ ('"' | '\'')) => Some((i, q)),
        _ => None,
    }
}

struct PyString {
    text: String,
    end_line: usize,
    closed: bool,
}

/// Consumes a string literal whose opening quote is under the cursor.
/// Handles triple quotes (multi-line) and backslash escapes; a raw single
/// quoted string that hits a bare newline is abandoned there.
fn consume_py_string(cur: &mut Cursor, out: &mut LexOutput, quote: char) -> PyString {
    let triple = cur.starts_with(&quote.to_string().repeat(3));
    let delim_len = if triple { 3 } else { 1 };
    cur.bump_n(delim_len);
    let closer: String = quote.to_string().repeat(delim_len);

    let mut text = String::new();
    let mut end_line = cur.line();
    loop {
        if cur.starts_with(&closer) {
            end_line = cur.line();
            out.code_lines.insert(end_line);
            cur.bump_n(delim_len);
            return PyString { text, end_line, closed: true };
        }
        match cur.peek() {
            Some('\\') => {
                end_line = cur.line();
                out.code_lines.insert(end_line);
                text.push('\\');
                cur.bump();
                if let Some(esc) = cur.bump() {
                    text.push(esc);
                }
            }
            Some('\n') if !triple => {
                return PyString { text, end_line, closed: false };
            }
            Some(c) => {
                end_line = cur.line();
                if !c.is_whitespace() {
                    out.code_lines.insert(end_line);
                }
                text.push(c);
                cur.bump();
            }
            None => return PyString { text, end_line, closed: false },
        }
    }
}

fn rest_of_line_is_blank_or_comment(cur: &Cursor) -> bool {
    let mut i = 0;
    loop {
        match cur.peek_at(i) {
            None | Some('\n') => return true,
            Some('#') => return true,
            Some(c) if c.is_whitespace() => i += 1,
            Some(_) => return false,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn comments(content: &str) -> Vec<(RawKind, String)> {
        lex(content, true).comments.iter().map(|c| (c.kind, c.text.clone())).collect()
    }

    #[test]
    fn hash_comment_extracted() {
        assert_eq!(comments("x = 1  # set x\n"), [(RawKind::Line, "set x".into())]);
    }

    #[test]
    fn hash_inside_string_is_not_a_comment() {
        assert_eq!(comments("s = \"# not a comment\"\n"), []);
        assert_eq!(comments("s = '# nope'\nt = 2  # real\n"), [(RawKind::Line, "real".into())]);
    }

    #[test]
    fn module_docstring_is_a_block_comment() {
        let got = comments("\"\"\"Module things.\"\"\"\nx = 1\n");
        assert_eq!(got, [(RawKind::Block, "Module things.".into())]);
    }

    #[test]
    fn function_docstring_is_extracted() {
        let src = "def f():\n    \"\"\"Sorts things.\n\n    Slowly.\n    \"\"\"\n    return 1\n";
        let got = lex(src, true);
        assert_eq!(got.comments.len(), 1);
        assert_eq!(got.comments[0].kind, RawKind::Block);
        assert_eq!(got.comments[0].text, "Sorts things.\n\n    Slowly.");
        assert_eq!(got.comments[0].start_line, 2);
        assert_eq!(got.comments[0].end_line, 5);
    }

    #[test]
    fn string_not_at_suite_start_is_not_a_docstring() {
        assert_eq!(comments("x = 1\n\"just a string\"\n"), []);
        assert_eq!(comments("x = \"value\"\n"), []);
    }

    #[test]
    fn comment_lines_before_a_docstring_do_not_disqualify_it() {
        let got = comments("# header\n\"\"\"doc\"\"\"\n");
        assert_eq!(got.len(), 2);
        assert_eq!(got[1], (RawKind::Block, "doc".into()));
    }

    #[test]
    fn docstring_extraction_can_be_disabled() {
        let got = lex("\"\"\"doc\"\"\"\n# plain\n", false);
        let kinds: Vec<RawKind> = got.comments.iter().map(|c| c.kind).collect();
        assert_eq!(kinds, [RawKind::Line]);
    }

    #[test]
    fn string_followed_by_code_is_not_standalone() {
        assert_eq!(comments("\"\"\"doc\"\"\" + x\n"), []);
    }

    #[test]
    fn class_and_else_suites_accept_docstrings() {
        let got = comments("class C:\n    'small doc'\n    pass\n");
        assert_eq!(got, [(RawKind::Block, "small doc".into())]);
    }

    #[test]
    fn string_inside_brackets_is_not_a_statement() {
        let got = comments("x = [\n    \"not a docstring\",\n]\n");
        assert_eq!(got, []);
    }

    #[test]
    fn raw_and_f_prefixes_are_recognized() {
        assert_eq!(comments("s = rb\"# no\"\nt = f'# no {x}'\nu = 1  # yes\n").len(), 1);
    }

    #[test]
    fn triple_quoted_assignment_hides_hash_lines() {
        let got = comments("s = \"\"\"\n# not a comment\n\"\"\"\n# real\n");
        assert_eq!(got, [(RawKind::Line, "real".into())]);
    }

    #[test]
    fn continuation_keeps_the_logical_line_open() {
        // The string starts a physical line but not a statement.
        let got = comments("x = 1 + \\\n    \"text\"\ny = 2\n");
        assert_eq!(got, []);
    }
}
