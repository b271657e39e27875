//! Comment text normalization: cleaning, tokenization, and the excerpt
//! windows used for provenance listings.

/// Strips comment decoration from raw text. Letters, digits, hyphens,
/// apostrophes and parentheses survive; every other character becomes a
/// space, and whitespace runs collapse to single spaces. The result is
/// trimmed, and the function is idempotent.
pub fn clean_text(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    let mut pending_space = false;
    for c in text.chars() {
        let c = if c == '\u{2019}' { '\'' } else { c };
        if c.is_alphanumeric() || matches!(c, '-' | '\'' | '(' | ')') {
            if pending_space && !out.is_empty() {
                out.push(' ');
            }
            pending_space = false;
            out.push(c);
        } else {
            pending_space = true;
        }
    }
    out
}

/// Splits cleaned text into tokens on whitespace. Hyphens and apostrophes
/// stay inside tokens ("Nagle's", "depth-first"). Parentheses stay when they
/// pair up inside the token ("O(nd)") but unmatched ones at the edges are
/// shed ("(based" -> "based"), since they belong to the sentence, not the
/// word. Tokens without a single letter or digit are dropped.
pub fn tokenize(text: &str) -> Vec<String> {
    text.split_whitespace()
        .map(trim_unbalanced_parens)
        .filter(|t| t.chars().any(char::is_alphanumeric))
        .map(str::to_string)
        .collect()
}

fn trim_unbalanced_parens(token: &str) -> &str {
    let mut s = token;
    loop {
        let opens = s.matches('(').count();
        let closes = s.matches(')').count();
        if opens > closes && s.starts_with('(') {
            s = &s[1..];
        } else if closes > opens && s.ends_with(')') {
            s = &s[..s.len() - 1];
        } else {
            return s;
        }
    }
}

/// Width of a provenance excerpt in characters.
pub const EXCERPT_WIDTH: usize = 80;

/// Builds an excerpt for tokens[span.0..span.1]: the matched words wrapped
/// in `**`, padded with surrounding tokens out to roughly `width` chars.
/// Expansion works on whole tokens only, so the window never cuts a word.
pub fn excerpt(tokens: &[String], span: (usize, usize), width: usize) -> String {
    let (start, end) = span;
    assert!(start < end && end <= tokens.len(), "excerpt span out of range");

    let matched = tokens[start..end].join(" ");
    let mut budget = width.saturating_sub(matched.chars().count());
    let mut lo = start;
    let mut hi = end;
    loop {
        let mut grew = false;
        if lo > 0 {
            let cost = tokens[lo - 1].chars().count() + 1;
            if cost <= budget {
                lo -= 1;
                budget -= cost;
                grew = true;
            }
        }
        if hi < tokens.len() {
            let cost = tokens[hi].chars().count() + 1;
            if cost <= budget {
                hi += 1;
                budget -= cost;
                grew = true;
            }
        }
        if !grew {
            break;
        }
    }

    let mut out = String::new();
    if lo < start {
        out.push_str(&tokens[lo..start].join(" "));
        out.push(' ');
    }
    out.push_str("**");
    out.push_str(&matched);
    out.push_str("**");
    if hi > end {
        out.push(' ');
        out.push_str(&tokens[end..hi].join(" "));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strips_decoration_to_spaces() {
        assert_eq!(clean_text("*/ Sorts the array */"), "Sorts the array");
        assert_eq!(clean_text("# étape spéciale"), "étape spéciale");
    }

    #[test]
    fn keeps_parens_hyphens_apostrophes() {
        assert_eq!(clean_text("O(nd) Difference"), "O(nd) Difference");
        assert_eq!(clean_text("Nagle's algorithm"), "Nagle's algorithm");
        assert_eq!(clean_text("depth-first search"), "depth-first search");
    }

    #[test]
    fn collapses_whitespace_and_trims() {
        assert_eq!(clean_text("  a   b\t\nc  "), "a b c");
        assert_eq!(clean_text("a*#b"), "a b");
    }

    #[test]
    fn cleaning_is_idempotent() {
        for s in ["*/ Sorts the array */", "x  ->  y", "", "))((", "a'b-c(d)"] {
            let once = clean_text(s);
            assert_eq!(clean_text(&once), once);
        }
    }

    #[test]
    fn tokenize_splits_on_whitespace() {
        assert_eq!(tokenize("Nagle's algorithm"), ["Nagle's", "algorithm"]);
        assert_eq!(tokenize("ray casting algorithm"), ["ray", "casting", "algorithm"]);
    }

    #[test]
    fn tokenize_strips_unmatched_parens() {
        assert_eq!(tokenize("(based on the kex algorithm)"), [
            "based",
            "on",
            "the",
            "kex",
            "algorithm"
        ]);
        assert_eq!(tokenize("O(nd) Difference algorithm"), ["O(nd)", "Difference", "algorithm"]);
    }

    #[test]
    fn tokenize_drops_bare_punctuation() {
        assert_eq!(tokenize("- ( ) '' a"), ["a"]);
        assert_eq!(tokenize(""), Vec::<String>::new());
    }

    #[test]
    fn excerpt_marks_the_match() {
        let tokens: Vec<String> =
            ["the", "central", "step", "in", "the", "MD5", "algorithm"]
                .iter()
                .map(|s| s.to_string())
                .collect();
        let got = excerpt(&tokens, (5, 7), 80);
        assert_eq!(got, "the central step in the **MD5 algorithm**");
    }

    #[test]
    fn excerpt_respects_width_and_word_boundaries() {
        let tokens: Vec<String> = (0..50).map(|i| format!("tok{:02}", i)).collect();
        let got = excerpt(&tokens, (25, 27), 40);
        assert!(got.contains("**tok25 tok26**"));
        assert!(got.chars().count() <= 40 + 4);
        // Never cuts into a token: everything between spaces is a full token.
        for piece in got.replace("**", "").split_whitespace() {
            assert!(tokens.iter().any(|t| t == piece), "cut token: {}", piece);
        }
    }

    #[test]
    fn excerpt_of_long_match_is_the_match_itself() {
        let tokens: Vec<String> = (0..10).map(|i| format!("verylongtoken{}", i)).collect();
        let got = excerpt(&tokens, (2, 8), 20);
        assert!(got.starts_with("**verylongtoken2"));
        assert!(got.ends_with("verylongtoken7**"));
    }
}
