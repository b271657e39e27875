//! PHP lexer. Comments (`//`, `#`, `/* */`) exist only inside `<?php` or
//! `<?=` regions; everything outside is HTML and is skipped. A `?>` closes
//! the region, even inside a line comment (matching the PHP scanner), while
//! block comments swallow it. `#[` introduces an attribute, not a comment.

use super::clike::consume_string;
use super::{Cursor, LexOutput};

pub(crate) fn lex(content: &str) -> LexOutput {
    let mut cur = Cursor::new(content);
    let mut out = LexOutput::default();
    let mut in_php = false;

    while let Some(c) = cur.peek() {
        if !in_php {
            if cur.starts_with("<?php") || cur.starts_with("<?=") {
                out.code_lines.insert(cur.line());
                let len = if cur.starts_with("<?php") { 5 } else { 3 };
                cur.bump_n(len);
                in_php = true;
                continue;
            }
            if !c.is_whitespace() {
                out.code_lines.insert(cur.line());
            }
            cur.bump();
            continue;
        }

        if cur.starts_with("?>") {
            out.code_lines.insert(cur.line());
            cur.bump_n(2);
            in_php = false;
            continue;
        }
        if c == '/' && cur.peek_at(1) == Some('/') {
            cur.bump_n(2);
            in_php = consume_php_line_comment(&mut cur, &mut out);
            continue;
        }
        if c == '#' {
            if cur.peek_at(1) == Some('[') {
                out.code_lines.insert(cur.line());
                cur.bump();
                continue;
            }
            cur.bump();
            in_php = consume_php_line_comment(&mut cur, &mut out);
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
            '"' | '\'' | '`' => consume_string(&mut cur, &mut out, c, true),
            '<' if cur.starts_with("<<<") => consume_heredoc(&mut cur, &mut out),
            _ => {
                cur.bump();
            }
        }
    }
    out
}

/// Body of a `//` or `#` comment: runs to end of line or to a closing `?>`.
/// Returns whether we are still inside a PHP region afterwards.
fn consume_php_line_comment(cur: &mut Cursor, out: &mut LexOutput) -> bool {
    let line = cur.line();
    let mut text = String::new();
    while let Some(c) = cur.peek() {
        if c == '\n' {
            break;
        }
        if cur.starts_with("?>") {
            out.line_comment(line, &text);
            out.code_lines.insert(cur.line());
            cur.bump_n(2);
            return false;
        }
        text.push(c);
        cur.bump();
    }
    out.line_comment(line, &text);
    true
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

/// `<<<TAG`, `<<<"TAG"` or `<<<'TAG'`; the body runs until a line that
/// starts (after indentation) with the bare tag.
fn consume_heredoc(cur: &mut Cursor, out: &mut LexOutput) {
    cur.bump_n(3);
    let quote = match cur.peek() {
        Some(q @ ('\'' | '"')) => {
            cur.bump();
            Some(q)
        }
        _ => None,
    };
    let mut tag = String::new();
    while let Some(c) = cur.peek() {
        if c.is_ascii_alphanumeric() || c == '_' {
            tag.push(c);
            cur.bump();
        } else {
            break;
        }
    }
    if let Some(q) = quote {
        if cur.peek() == Some(q) {
            cur.bump();
        }
    }
    if tag.is_empty() {
        return;
    }
    cur.take_line();
    cur.bump();
    while !cur.eof() {
        let line_no = cur.line();
        let line = cur.take_line();
        cur.bump();
        let trimmed = line.trim_start();
        let is_end = trimmed.starts_with(&tag)
            && trimmed[tag.len()..]
                .chars()
                .next()
                .map_or(true, |c| !c.is_ascii_alphanumeric() && c != '_');
        if !line.trim().is_empty() {
            out.code_lines.insert(line_no);
        }
        if is_end {
            return;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::RawKind;
    use super::*;

    fn texts(content: &str) -> Vec<String> {
        lex(content).comments.iter().map(|c| c.text.clone()).collect()
    }

    #[test]
    fn comments_only_inside_php_regions() {
        let src = "<html>// not a comment</html>\n<?php\n// real\n# also real\n?>\n# html again\n";
        assert_eq!(texts(src), ["real", "also real"]);
    }

    #[test]
    fn all_three_comment_forms() {
        let src = "<?php\n// one\n# two\n/* three */\n";
        let got = lex(src);
        let kinds: Vec<RawKind> = got.comments.iter().map(|c| c.kind).collect();
        assert_eq!(kinds, [RawKind::Line, RawKind::Line, RawKind::Block]);
        assert_eq!(got.comments[2].text, "three");
    }

    #[test]
    fn string_traps() {
        let src = "<?php\n$s = \"// not a comment\";\n$t = '# nope';\n// real\n";
        assert_eq!(texts(src), ["real"]);
    }

    #[test]
    fn line_comment_ends_at_php_close() {
        let src = "<?php // note ?> <b>html # no</b> <?php # real\n";
        assert_eq!(texts(src), ["note", "real"]);
    }

    #[test]
    fn attribute_is_not_a_comment() {
        let src = "<?php\n#[Attribute]\nclass C {}\n# real\n";
        assert_eq!(texts(src), ["real"]);
    }

    #[test]
    fn heredoc_hides_comment_markers() {
        let src = "<?php\n$s = <<<EOT\n// hidden\n# hidden\nEOT;\n// real\n";
        assert_eq!(texts(src), ["real"]);
    }

    #[test]
    fn nowdoc_with_quoted_tag() {
        let src = "<?php\n$s = <<<'EOT'\n# hidden\nEOT;\n# real\n";
        assert_eq!(texts(src), ["real"]);
    }

    #[test]
    fn block_comment_swallows_php_close() {
        let src = "<?php /* a ?> b */ # real\n";
        assert_eq!(texts(src), ["a ?> b", "real"]);
    }

    #[test]
    fn html_lines_count_as_code_for_merging() {
        let got = lex("<?php // a ?>\n<div>text</div>\n<?php // b\n");
        assert_eq!(got.comments.len(), 2);
        assert!(got.code_lines.contains(&2));
    }
}
