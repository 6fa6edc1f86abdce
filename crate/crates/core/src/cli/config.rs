use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::CliError;
use crate::bootstrap::BootstrapConfig;
use crate::classifier::LogregConfig;
use crate::labeler::TrainConfig;
use crate::patterns::PatternConfig;

/// CRF hyperparameters as they appear in the config file.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CrfSettings {
    pub epochs: usize,
    pub batch_size: usize,
    pub step_size: f64,
    pub l2_lambda: f64,
}

impl Default for CrfSettings {
    fn default() -> Self {
        let d = TrainConfig::default();
        CrfSettings { epochs: d.epochs, batch_size: d.batch_size, step_size: d.step_size, l2_lambda: d.l2_lambda }
    }
}

/// Sentence-classifier hyperparameters as they appear in the config file.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct LogregSettings {
    pub epochs: usize,
    pub batch_size: usize,
    pub step_size: f64,
    pub l2_lambda: f64,
    pub decision_threshold: f64,
}

impl Default for LogregSettings {
    fn default() -> Self {
        let d = LogregConfig::default();
        LogregSettings {
            epochs: d.epochs,
            batch_size: d.batch_size,
            step_size: d.step_size,
            l2_lambda: d.l2_lambda,
            decision_threshold: d.decision_threshold,
        }
    }
}

/// Run-wide settings loaded from `--config`; command-line flags override
/// the corresponding fields.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub corpus_dir: Option<PathBuf>,
    pub parses_dir: Option<PathBuf>,
    pub models_dir: Option<PathBuf>,
    pub output_dir: Option<PathBuf>,
    pub patterns: Option<PathBuf>,
    pub seeds: Option<PathBuf>,
    pub cluster_threshold: f64,
    pub neg_ratio: f64,
    pub rng_seed: u64,
    pub jobs: Option<usize>,
    pub crf: CrfSettings,
    pub sentence: LogregSettings,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            corpus_dir: None,
            parses_dir: None,
            models_dir: None,
            output_dir: None,
            patterns: None,
            seeds: None,
            cluster_threshold: crate::extract::DEFAULT_THRESHOLD,
            neg_ratio: 2.0,
            rng_seed: 1,
            jobs: None,
            crf: CrfSettings::default(),
            sentence: LogregSettings::default(),
        }
    }
}

impl RunConfig {
    /// Reads the file; relative paths inside resolve against its directory.
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text =
            std::fs::read_to_string(path).map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))?;
        let mut cfg: RunConfig =
            serde_json::from_str(&text).map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))?;
        let base = path.parent().unwrap_or(Path::new("."));
        for p in [
            &mut cfg.corpus_dir,
            &mut cfg.parses_dir,
            &mut cfg.models_dir,
            &mut cfg.output_dir,
            &mut cfg.patterns,
            &mut cfg.seeds,
        ]
        .into_iter()
        .flatten()
        {
            if p.is_relative() {
                *p = base.join(&*p);
            }
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        for (name, p) in [
            ("corpus_dir", &self.corpus_dir),
            ("parses_dir", &self.parses_dir),
            ("patterns", &self.patterns),
            ("seeds", &self.seeds),
        ] {
            if let Some(p) = p {
                if !p.exists() {
                    return Err(CliError::Validation(format!("{name} `{}` does not exist", p.display())));
                }
            }
        }
        if !(self.cluster_threshold > 0.0 && self.cluster_threshold <= 1.0) {
            return Err(CliError::Validation(format!("cluster_threshold {} outside (0,1]", self.cluster_threshold)));
        }
        if !(self.neg_ratio > 0.0) {
            return Err(CliError::Validation(format!("neg_ratio {} must be > 0", self.neg_ratio)));
        }
        Ok(())
    }

    pub fn pattern_config(&self) -> Result<PatternConfig, CliError> {
        match &self.patterns {
            Some(p) => PatternConfig::from_path(p).map_err(|e| CliError::Validation(e.to_string())),
            None => Ok(PatternConfig::default()),
        }
    }

    pub fn bootstrap_config(&self) -> Result<BootstrapConfig, CliError> {
        match &self.seeds {
            Some(p) => {
                let text =
                    std::fs::read_to_string(p).map_err(|e| CliError::Validation(format!("{}: {e}", p.display())))?;
                serde_json::from_str(&text).map_err(|e| CliError::Validation(format!("{}: {e}", p.display())))
            }
            None => Ok(BootstrapConfig::default()),
        }
    }

    /// `explicit`, else `fallback` joined with `rest`, else a usage error.
    pub fn path(
        &self,
        explicit: &Option<PathBuf>,
        fallback: &Option<PathBuf>,
        rest: &str,
        flag: &str,
    ) -> Result<PathBuf, CliError> {
        if let Some(p) = explicit {
            return Ok(p.clone());
        }
        match fallback {
            Some(base) if rest.is_empty() => Ok(base.clone()),
            Some(base) => Ok(base.join(rest)),
            None => Err(CliError::Usage(format!("missing {flag}"))),
        }
    }
}
