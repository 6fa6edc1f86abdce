//! Linear-chain inference over precomputed potentials, in log space.

/// Emission scores (`n × T`, row-major) and transition scores (`T × T`,
/// `transitions[prev * T + next]`) for one sentence.
#[derive(Debug, Clone, PartialEq)]
pub struct Potentials {
    pub n: usize,
    pub n_tags: usize,
    pub emissions: Vec<f64>,
    pub transitions: Vec<f64>,
}

/// Result of forward-backward.
#[derive(Debug, Clone, PartialEq)]
pub struct Inference {
    /// log Z from the forward pass.
    pub log_z: f64,
    /// log Z recomputed from the backward pass.
    pub log_z_backward: f64,
    /// `n × T` posterior tag marginals.
    pub node_marginals: Vec<f64>,
    /// `(n-1) × T × T` posterior transition expectations; entry
    /// `[t][a][b]` is P(y_t = a, y_{t+1} = b).
    pub edge_marginals: Vec<f64>,
}

pub(crate) fn log_sum_exp(values: impl Iterator<Item = f64> + Clone) -> f64 {
    let max = values.clone().fold(f64::NEG_INFINITY, f64::max);
    if max == f64::NEG_INFINITY {
        return max;
    }
    max + values.map(|v| (v - max).exp()).sum::<f64>().ln()
}

impl Potentials {
    pub fn emission(&self, t: usize, y: usize) -> f64 {
        self.emissions[t * self.n_tags + y]
    }

    pub fn transition(&self, prev: usize, next: usize) -> f64 {
        self.transitions[prev * self.n_tags + next]
    }

    /// Unnormalized log-score of a tag path.
    pub fn path_score(&self, path: &[usize]) -> f64 {
        let mut score = 0.0;
        for (t, &y) in path.iter().enumerate() {
            score += self.emission(t, y);
            if t > 0 {
                score += self.transition(path[t - 1], y);
            }
        }
        score
    }

    fn forward(&self) -> Vec<f64> {
        let (n, k) = (self.n, self.n_tags);
        let mut alpha = vec![0.0; n * k];
        for (y, a) in alpha.iter_mut().take(k).enumerate() {
            *a = self.emission(0, y);
        }
        for t in 1..n {
            for y in 0..k {
                let prev = &alpha[(t - 1) * k..t * k];
                alpha[t * k + y] = self.emission(t, y) + log_sum_exp((0..k).map(|p| prev[p] + self.transition(p, y)));
            }
        }
        alpha
    }

    fn backward(&self) -> Vec<f64> {
        let (n, k) = (self.n, self.n_tags);
        let mut beta = vec![0.0; n * k];
        for t in (0..n.saturating_sub(1)).rev() {
            for y in 0..k {
                let next = &beta[(t + 1) * k..(t + 2) * k];
                beta[t * k + y] =
                    log_sum_exp((0..k).map(|q| self.transition(y, q) + self.emission(t + 1, q) + next[q]));
            }
        }
        beta
    }

    /// Forward-backward: log partition function and posterior marginals.
    pub fn infer(&self) -> Inference {
        let (n, k) = (self.n, self.n_tags);
        if n == 0 {
            return Inference {
                log_z: 0.0,
                log_z_backward: 0.0,
                node_marginals: Vec::new(),
                edge_marginals: Vec::new(),
            };
        }
        let alpha = self.forward();
        let beta = self.backward();
        let log_z = log_sum_exp(alpha[(n - 1) * k..].iter().copied());
        let log_z_backward = log_sum_exp((0..k).map(|y| self.emission(0, y) + beta[y]));
        let node_marginals = (0..n * k).map(|i| (alpha[i] + beta[i] - log_z).exp()).collect();
        let mut edge_marginals = vec![0.0; n.saturating_sub(1) * k * k];
        for t in 0..n.saturating_sub(1) {
            for a in 0..k {
                for b in 0..k {
                    edge_marginals[(t * k + a) * k + b] =
                        (alpha[t * k + a] + self.transition(a, b) + self.emission(t + 1, b) + beta[(t + 1) * k + b]
                            - log_z)
                            .exp();
                }
            }
        }
        Inference { log_z, log_z_backward, node_marginals, edge_marginals }
    }

    /// Highest-scoring path and its score. Ties go to the lowest tag index,
    /// both at each backpointer and at the final position.
    pub fn viterbi(&self) -> (Vec<usize>, f64) {
        let (n, k) = (self.n, self.n_tags);
        if n == 0 {
            return (Vec::new(), 0.0);
        }
        let mut delta = vec![0.0; n * k];
        let mut back = vec![0usize; n * k];
        for (y, d) in delta.iter_mut().take(k).enumerate() {
            *d = self.emission(0, y);
        }
        for t in 1..n {
            for y in 0..k {
                let mut best = 0;
                let mut best_score = f64::NEG_INFINITY;
                for p in 0..k {
                    let s = delta[(t - 1) * k + p] + self.transition(p, y);
                    if s > best_score {
                        best_score = s;
                        best = p;
                    }
                }
                delta[t * k + y] = best_score + self.emission(t, y);
                back[t * k + y] = best;
            }
        }
        let mut last = 0;
        for y in 1..k {
            if delta[(n - 1) * k + y] > delta[(n - 1) * k + last] {
                last = y;
            }
        }
        let score = delta[(n - 1) * k + last];
        let mut path = vec![0; n];
        path[n - 1] = last;
        for t in (1..n).rev() {
            path[t - 1] = back[t * k + path[t]];
        }
        (path, score)
    }
}
