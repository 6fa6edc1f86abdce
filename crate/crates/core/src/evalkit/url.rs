/// Host and path segments of a URL: scheme, `www.`, query and fragment
/// dropped, host lowercased, empty segments removed.
pub fn normalize_url(url: &str) -> (String, Vec<String>) {
    let s = url.trim();
    let s = match s.find("://") {
        Some(i) if s[..i].chars().all(|c| c.is_ascii_alphabetic()) => &s[i + 3..],
        _ => s,
    };
    let s = s.split(['?', '#']).next().unwrap_or("");
    let mut parts = s.split('/');
    let host = parts.next().unwrap_or("").to_lowercase();
    let host = host.strip_prefix("www.").map(str::to_string).unwrap_or(host);
    let path = parts.filter(|p| !p.is_empty()).map(str::to_string).collect();
    (host, path)
}

/// Host of a URL after normalization.
pub fn url_host(url: &str) -> String {
    normalize_url(url).0
}

/// Same host and same first path segment. A prediction without a path
/// never matches a gold URL that has one.
pub fn url_match(gold: &str, predicted: &str) -> bool {
    let (gh, gp) = normalize_url(gold);
    let (ph, pp) = normalize_url(predicted);
    !gh.is_empty() && gh == ph && gp.first() == pp.first()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_prefix_rule() {
        assert!(url_match("github.com/pwc/pwc-data", "github.com/pwc"));
        assert!(!url_match("github.com/pwc/pwc-data", "github.com"));
        assert!(url_match("github.com/pwc/pwc-data", "github.com/pwc/pwc-data"));
    }

    #[test]
    fn scheme_and_slash_invariance() {
        assert!(url_match("https://github.com/a/b/", "http://GitHub.com/a"));
        assert!(url_match("http://www.github.com/a", "github.com/a/"));
        assert!(!url_match("github.com/a", "gitlab.com/a"));
        assert_eq!(normalize_url("https://x.org/a//b?q=1#f"), ("x.org".into(), vec!["a".into(), "b".into()]));
    }
}
