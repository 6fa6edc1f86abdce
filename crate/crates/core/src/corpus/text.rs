use unicode_normalization::UnicodeNormalization;

/// NFC-normalizes, drops control characters and collapses whitespace runs
/// into a single space.
pub fn normalize_text(raw: &str) -> String {
    let mut out = String::with_capacity(raw.len());
    let mut pending_space = false;
    for c in raw.nfc() {
        if c.is_whitespace() {
            pending_space = true;
            continue;
        }
        if c.is_control() {
            continue;
        }
        if pending_space && !out.is_empty() {
            out.push(' ');
        }
        pending_space = false;
        out.push(c);
    }
    out
}

const HOST_PREFIXES: [&str; 3] = ["github.com/", "gitlab.com/", "bitbucket.org/"];
const SCHEME_PREFIXES: [&str; 2] = ["http://", "https://"];
const TRAILING_TRIM: [char; 9] = ['.', ',', ';', ':', ')', ']', '}', '"', '\''];

/// Finds URL-like substrings: anything starting with `http://`, `https://`
/// or a known code-hosting prefix, running to the next whitespace, with
/// trailing punctuation removed.
pub fn detect_urls(text: &str) -> Vec<String> {
    let mut urls = Vec::new();
    let mut i = 0;
    let bytes = text.as_bytes();
    while i < text.len() {
        if !text.is_char_boundary(i) {
            i += 1;
            continue;
        }
        let rest = &text[i..];
        let prefix = starts_with_ci(rest, &SCHEME_PREFIXES).or_else(|| {
            let boundary_ok = i == 0 || {
                let prev = text[..i].chars().next_back().unwrap_or(' ');
                !(prev.is_alphanumeric() || matches!(prev, '.' | '-' | '_' | '/' | '@'))
            };
            if boundary_ok {
                starts_with_ci(rest, &HOST_PREFIXES)
            } else {
                None
            }
        });
        let Some(prefix_len) = prefix else {
            i += 1;
            continue;
        };
        let end = rest.find(char::is_whitespace).unwrap_or(rest.len());
        let candidate = rest[..end].trim_end_matches(TRAILING_TRIM);
        if candidate.len() > prefix_len {
            urls.push(candidate.to_string());
        }
        i += end.max(1);
        while i < bytes.len() && !text.is_char_boundary(i) {
            i += 1;
        }
    }
    urls
}

fn starts_with_ci(s: &str, prefixes: &[&str]) -> Option<usize> {
    prefixes
        .iter()
        .find(|p| s.len() >= p.len() && s.is_char_boundary(p.len()) && s[..p.len()].eq_ignore_ascii_case(p))
        .map(|p| p.len())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trailing_period_is_trimmed() {
        assert_eq!(detect_urls("code at https://github.com/a/b."), vec!["https://github.com/a/b"]);
    }

    #[test]
    fn bare_host_prefixes() {
        assert_eq!(detect_urls("see github.com/a/b, github.com/c"), vec!["github.com/a/b", "github.com/c"]);
    }

    #[test]
    fn no_links() {
        assert!(detect_urls("no links here").is_empty());
    }

    #[test]
    fn scheme_url_is_not_double_counted() {
        assert_eq!(detect_urls("(https://gitlab.com/x/y)"), vec!["https://gitlab.com/x/y"]);
    }

    #[test]
    fn embedded_host_is_ignored() {
        assert!(detect_urls("mygithub.com/x").is_empty());
        assert!(detect_urls("https:// nothing").is_empty());
    }

    #[test]
    fn normalization_collapses_whitespace_and_controls() {
        assert_eq!(normalize_text("  a\t\n b\u{0007}c  "), "a bc");
        assert_eq!(normalize_text("e\u{0301}"), "\u{00e9}");
    }
}
