use crate::corpus::Token;

fn ancestors(tokens: &[Token], i: usize) -> Vec<usize> {
    let mut chain = vec![i];
    let mut cur = i;
    while let Some(h) = tokens[cur].head_index() {
        if chain.len() > tokens.len() {
            break;
        }
        chain.push(h);
        cur = h;
    }
    chain
}

/// Number of edges on the tree path between tokens `i` and `j`.
pub fn shortest_dependency_path(tokens: &[Token], i: usize, j: usize) -> usize {
    if i == j {
        return 0;
    }
    let up_i = ancestors(tokens, i);
    let up_j = ancestors(tokens, j);
    for (di, a) in up_i.iter().enumerate() {
        if let Some(dj) = up_j.iter().position(|b| b == a) {
            return di + dj;
        }
    }
    // disconnected input; only reachable when the tree invariant is broken
    up_i.len() + up_j.len()
}

/// Depth of a token below the root.
pub(crate) fn depth(tokens: &[Token], i: usize) -> usize {
    ancestors(tokens, i).len() - 1
}
