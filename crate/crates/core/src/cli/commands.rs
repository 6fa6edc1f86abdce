use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::Serialize;

use super::{
    CliError, EvalArgs, GenlabelsArgs, IngestArgs, OutputFormat, PredictArgs, Query, RunConfig, TrainArgs, TrainKind,
    TrendsArgs,
};
use crate::analytics::{self, Table, TrendSeries};
use crate::bootstrap::{
    bootstrap_iterate, emit_annotation_stubs, load_labeled_jsonl, seed_sentences, serialize_corll, CorllLabel,
    CorllRecord, SeedLexicon,
};
use crate::classifier::{
    binary_metrics, build_training_set, facet_rules, sentence_features, train_logreg, LogregConfig,
    SentClassifierModel, SentenceFeatures, Split, SplitSpec, TrainingSet,
};
use crate::corpus::{attach_parse_dir, load_corpus_lenient, load_store, write_store, DocumentRecord, Manifest};
use crate::evalkit::{evaluate, parse_gold, Averaging};
use crate::extract::{
    parse_extractions, parse_relation_graphs, Extractor, FacetModels, PaperExtraction, RelationGraphDoc,
};
use crate::labeler::{train_crf, CrfModel, Featurizer, LabelScheme, TrainConfig};
use crate::patterns::{
    dataset_candidates, dataset_entity_candidates, source_code_candidates, CandidateSentence, RuleFacet,
};
use crate::Facet;

pub(super) struct Context {
    pub cfg: RunConfig,
    pub strict: bool,
}

fn invalid(e: impl std::fmt::Display) -> CliError {
    CliError::Validation(e.to_string())
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))
}

fn write(path: &Path, content: &str) -> Result<(), CliError> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|e| CliError::Internal(format!("{}: {e}", dir.display())))?;
    }
    fs::write(path, content).map_err(|e| CliError::Internal(format!("{}: {e}", path.display())))
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("value serializes") + "\n"
}

fn jsonl<T: Serialize>(items: &[T]) -> String {
    items.iter().map(|x| serde_json::to_string(x).expect("value serializes") + "\n").collect()
}

fn store_dir(ctx: &Context, explicit: &Option<PathBuf>) -> Result<PathBuf, CliError> {
    ctx.cfg.path(explicit, &ctx.cfg.output_dir, "store", "--corpus")
}

fn load_corpus_store(path: &Path) -> Result<Vec<DocumentRecord>, CliError> {
    if !path.is_dir() {
        return Err(CliError::Validation(format!("corpus store `{}` not found", path.display())));
    }
    load_store(path).map_err(invalid)
}

pub(super) fn ingest(ctx: &Context, a: &IngestArgs) -> Result<(), CliError> {
    let input = ctx.cfg.path(&a.input, &ctx.cfg.corpus_dir, "", "--input")?;
    let out = ctx.cfg.path(&a.out, &ctx.cfg.output_dir, "store", "--out")?;
    let outcome = load_corpus_lenient(&input).map_err(invalid)?;
    let mut failures = outcome.failures;
    let (docs, warnings) = match a.parses.as_ref().or(ctx.cfg.parses_dir.as_ref()) {
        Some(dir) => {
            let (docs, warnings, parse_failures) = attach_parse_dir(outcome.documents, dir).map_err(invalid)?;
            failures.extend(parse_failures);
            (docs, warnings)
        }
        None => (outcome.documents, Vec::new()),
    };
    for f in &failures {
        let path = f.path.display().to_string();
        if f.message.contains(&path) {
            log::warn!("{}", f.message);
        } else {
            log::warn!("{path}: {}", f.message);
        }
    }
    for w in &warnings {
        log::warn!("{w}");
    }
    if ctx.strict && !failures.is_empty() {
        return Err(CliError::Validation(format!("{} file(s) failed validation", failures.len())));
    }
    let manifest = Manifest { failures, warnings, ..Manifest::default() };
    let manifest = write_store(&out, &docs, manifest).map_err(|e| CliError::Internal(e.to_string()))?;
    log::info!(
        "ingested {} documents, {} of {} sentences parsed",
        manifest.documents,
        manifest.parsed_sentences,
        manifest.sentences
    );
    Ok(())
}

fn split_spec(ctx: &Context) -> SplitSpec {
    SplitSpec { rng_seed: ctx.cfg.rng_seed, ..SplitSpec::default() }
}

fn write_training_set(
    ctx: &Context,
    corpus: &[DocumentRecord],
    positives: &[(String, String)],
    path: &Path,
) -> Result<(), CliError> {
    if positives.is_empty() {
        log::warn!("no positive sentences; {} left empty", path.display());
        return write(path, "");
    }
    let set = build_training_set(positives, corpus, ctx.cfg.neg_ratio, &split_spec(ctx)).map_err(invalid)?;
    write(path, &set.to_jsonl())
}

pub(super) fn genlabels(ctx: &Context, a: &GenlabelsArgs) -> Result<(), CliError> {
    let corpus = load_corpus_store(&store_dir(ctx, &a.corpus)?)?;
    let out = ctx.cfg.path(&a.out, &ctx.cfg.output_dir, "labels", "--out")?;
    let facet = a.facet;
    let file = |suffix: &str| out.join(format!("{facet}.{suffix}"));
    match facet {
        Facet::SourceCode | Facet::Dataset => {
            let patterns = ctx.cfg.pattern_config()?;
            let rule_facet = if facet == Facet::SourceCode { RuleFacet::SourceCode } else { RuleFacet::Dataset };
            let rules = patterns.rule_set(rule_facet);
            let runs: Vec<_> = corpus
                .par_iter()
                .map(|d| {
                    if facet == Facet::SourceCode {
                        source_code_candidates(d, &rules, &patterns)
                    } else {
                        dataset_candidates(d, &rules, &patterns)
                    }
                })
                .collect();
            let mut candidates: Vec<CandidateSentence> = Vec::new();
            for (doc, run) in corpus.iter().zip(runs) {
                if run.skipped_unparsed > 0 {
                    log::warn!("{}: {} unparsed sentence(s) skipped", doc.doc_id, run.skipped_unparsed);
                }
                candidates.extend(run.candidates);
            }
            write(&file("candidates.jsonl"), &jsonl(&candidates))?;
            let ids: Vec<(String, String)> =
                candidates.iter().map(|c| (c.doc_id.clone(), c.sentence_id.clone())).collect();
            write_training_set(ctx, &corpus, &ids, &file("sentences.jsonl"))?;
            if facet == Facet::Dataset {
                let docs: BTreeMap<&str, &DocumentRecord> = corpus.iter().map(|d| (d.doc_id.as_str(), d)).collect();
                let labels = vec!["Dataset".to_string()];
                let mut records: Vec<CorllRecord> = Vec::new();
                for c in &candidates {
                    let Some(s) = docs.get(c.doc_id.as_str()).and_then(|d| d.sentence(&c.sentence_id)) else {
                        continue;
                    };
                    let spans = dataset_entity_candidates(s, &c.report, &patterns)
                        .into_iter()
                        .map(|sp| (sp.token_start, sp.token_end, "Dataset".to_string()))
                        .collect::<Vec<_>>();
                    let mut spans = spans;
                    spans.sort();
                    records.push(
                        CorllRecord::from_sentence(s, spans, &labels).map_err(|e| CliError::Internal(e.to_string()))?,
                    );
                }
                write(&file("spans.jsonl"), &serialize_corll(&records))?;
            }
        }
        Facet::ComputingResources | Facet::LanguageLibrary => {
            let boot = ctx.cfg.bootstrap_config()?;
            let stoplist = boot.stoplist();
            let mut lexicons = Vec::new();
            for name in facet.entity_types() {
                let label: CorllLabel = name.parse().map_err(invalid)?;
                let seeds = boot.seeds.get(&label).cloned().unwrap_or_default();
                let lex = bootstrap_iterate(
                    &corpus,
                    SeedLexicon::new(label, seeds),
                    boot.threshold,
                    boot.max_iters,
                    &stoplist,
                )
                .map_err(|e| CliError::Usage(e.to_string()))?;
                lexicons.push(lex);
            }
            write(&file("lexicon.json"), &to_json(&lexicons))?;
            let sentences = seed_sentences(&corpus, &lexicons);
            let ids: Vec<(String, String)> = corpus
                .iter()
                .flat_map(|d| {
                    d.sentences()
                        .filter(|s| sentences.iter().any(|x| std::ptr::eq(*x, *s)))
                        .map(|s| (d.doc_id.clone(), s.sentence_id.clone()))
                })
                .collect();
            write(&file("stubs.jsonl"), &serialize_corll(&emit_annotation_stubs(&sentences)))?;
            write_training_set(ctx, &corpus, &ids, &file("sentences.jsonl"))?;
        }
        Facet::Task | Facet::Method => {
            return Err(CliError::Usage(format!(
                "facet `{facet}` has no weak labels; it is read from relation graphs at predict time"
            )));
        }
    }
    Ok(())
}

fn models_dir(ctx: &Context, explicit: &Option<PathBuf>) -> Result<PathBuf, CliError> {
    ctx.cfg.path(explicit, &ctx.cfg.models_dir, "", "--models")
}

#[derive(Serialize)]
struct SentenceMetrics {
    facet: Facet,
    train_examples: usize,
    dev: Option<crate::classifier::BinaryMetrics>,
    test: Option<crate::classifier::BinaryMetrics>,
    trace: Vec<f64>,
}

#[derive(Serialize)]
struct NerMetrics {
    facet: Facet,
    sentences: usize,
    tokens: usize,
    token_accuracy: f64,
    trace: Vec<f64>,
}

fn labeler_featurizer(ctx: &Context, facet: Facet, lexicon: &Option<PathBuf>) -> Result<Featurizer, CliError> {
    let mut fz = Featurizer::default();
    if facet == Facet::Dataset {
        let patterns = ctx.cfg.pattern_config()?;
        fz = fz.with_lexicon("gazetteer", &patterns.gazetteer);
    }
    let lexicons: Vec<SeedLexicon> = match lexicon {
        Some(p) => {
            serde_json::from_str(&read(p)?).map_err(|e| CliError::Validation(format!("{}: {e}", p.display())))?
        }
        None => {
            let boot = ctx.cfg.bootstrap_config()?;
            boot.lexicons().into_iter().filter(|l| facet.entity_types().contains(&l.facet_label.as_str())).collect()
        }
    };
    for lex in lexicons {
        fz = fz.with_lexicon(lex.facet_label.as_str(), lex.terms.keys());
    }
    Ok(fz)
}

pub(super) fn train(ctx: &Context, a: &TrainArgs) -> Result<(), CliError> {
    let models = models_dir(ctx, &a.models)?;
    let facet = a.facet;
    let labels_dir = ctx.cfg.output_dir.as_ref().map(|o| o.join("labels"));
    match a.kind {
        TrainKind::Sentence => {
            let s = &ctx.cfg.sentence;
            let cfg = LogregConfig {
                epochs: a.epochs.unwrap_or(s.epochs),
                batch_size: a.batch_size.unwrap_or(s.batch_size),
                step_size: a.step.unwrap_or(s.step_size),
                l2_lambda: a.l2.unwrap_or(s.l2_lambda),
                rng_seed: ctx.cfg.rng_seed,
                decision_threshold: a.threshold.unwrap_or(s.decision_threshold),
            };
            if cfg.batch_size == 0
                || !(cfg.step_size > 0.0)
                || !(cfg.l2_lambda >= 0.0)
                || !(cfg.decision_threshold > 0.0 && cfg.decision_threshold <= 1.0)
            {
                return Err(CliError::Usage(format!("invalid hyperparameters {cfg:?}")));
            }
            let data = ctx.cfg.path(&a.data, &labels_dir, &format!("{facet}.sentences.jsonl"), "--data")?;
            let set = TrainingSet::from_jsonl(&read(&data)?).map_err(invalid)?;
            let corpus = load_corpus_store(&store_dir(ctx, &a.corpus)?)?;
            let docs: BTreeMap<&str, &DocumentRecord> = corpus.iter().map(|d| (d.doc_id.as_str(), d)).collect();
            let rules = facet_rules(facet, &ctx.cfg.pattern_config()?);
            let featurize = |split: Split| -> Vec<(SentenceFeatures, bool)> {
                set.split(split)
                    .filter_map(|e| {
                        let doc = docs.get(e.doc_id.as_str())?;
                        let Some(s) = doc.sentence(&e.sentence_id) else {
                            log::warn!("{}/{}: not in corpus, skipped", e.doc_id, e.sentence_id);
                            return None;
                        };
                        Some((sentence_features(doc, s, rules.as_ref()), e.label))
                    })
                    .collect()
            };
            let (train, dev, test) = (featurize(Split::Train), featurize(Split::Dev), featurize(Split::Test));
            let out = train_logreg(facet, &train, &dev, &cfg).map_err(invalid)?;
            let test_metrics = (!test.is_empty()).then(|| {
                let pred: Vec<bool> = test.iter().map(|(f, _)| out.model.classify(f)).collect();
                let gold: Vec<bool> = test.iter().map(|(_, y)| *y).collect();
                binary_metrics(&pred, &gold)
            });
            write(&models.join(format!("{facet}.sentence.json")), &(out.model.to_json() + "\n"))?;
            let metrics = SentenceMetrics {
                facet,
                train_examples: train.len(),
                dev: out.dev,
                test: test_metrics,
                trace: out.trace,
            };
            write(&models.join(format!("{facet}.sentence.metrics.json")), &to_json(&metrics))?;
        }
        TrainKind::Ner => {
            let labels: Vec<String> = facet.entity_types().iter().map(|s| s.to_string()).collect();
            if labels.is_empty() {
                return Err(CliError::Usage(format!("facet `{facet}` has no sequence labeler")));
            }
            let c = &ctx.cfg.crf;
            let cfg = TrainConfig {
                epochs: a.epochs.unwrap_or(c.epochs),
                batch_size: a.batch_size.unwrap_or(c.batch_size),
                step_size: a.step.unwrap_or(c.step_size),
                l2_lambda: a.l2.unwrap_or(c.l2_lambda),
                rng_seed: ctx.cfg.rng_seed,
            };
            if cfg.batch_size == 0 || !(cfg.step_size > 0.0) || !(cfg.l2_lambda >= 0.0) {
                return Err(CliError::Usage(format!("invalid hyperparameters {cfg:?}")));
            }
            let data = ctx.cfg.path(&a.data, &labels_dir, &format!("{facet}.spans.jsonl"), "--data")?;
            let records = load_labeled_jsonl(&data, &labels).map_err(invalid)?.records;
            let scheme = LabelScheme::new(labels.iter().cloned()).map_err(invalid)?;
            let tagged =
                records.iter().map(|r| r.to_tagged(&scheme)).collect::<Result<Vec<_>, _>>().map_err(invalid)?;
            let featurizer = labeler_featurizer(ctx, facet, &a.lexicon)?;
            let out = train_crf(&tagged, scheme, featurizer, &cfg).map_err(invalid)?;
            let (mut correct, mut total) = (0, 0);
            for t in &tagged {
                let pred = out.model.viterbi(&t.tokens);
                correct += pred.tags.iter().zip(&t.tags).filter(|(p, g)| p == g).count();
                total += t.tags.len();
            }
            write(&models.join(format!("{facet}.ner.json")), &(out.model.to_json() + "\n"))?;
            let metrics = NerMetrics {
                facet,
                sentences: tagged.len(),
                tokens: total,
                token_accuracy: if total == 0 { 0.0 } else { correct as f64 / total as f64 },
                trace: out.trace,
            };
            write(&models.join(format!("{facet}.ner.metrics.json")), &to_json(&metrics))?;
        }
    }
    Ok(())
}

fn load_relation_graphs(path: &Path) -> Result<BTreeMap<String, RelationGraphDoc>, CliError> {
    let files: Vec<PathBuf> = if path.is_dir() {
        let mut v: Vec<PathBuf> = fs::read_dir(path)
            .map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "jsonl"))
            .collect();
        v.sort();
        v
    } else {
        vec![path.to_path_buf()]
    };
    let mut all = BTreeMap::new();
    for f in files {
        for (id, g) in parse_relation_graphs(&read(&f)?).map_err(invalid)? {
            if all.insert(id.clone(), g).is_some() {
                return Err(CliError::Validation(format!("duplicate relation graph for `{id}`")));
            }
        }
    }
    Ok(all)
}

pub(super) fn predict(ctx: &Context, a: &PredictArgs) -> Result<(), CliError> {
    let models_path = models_dir(ctx, &a.models)?;
    let wants = |f: Facet| a.facets.contains(&f);
    let wants_graph = wants(Facet::Task) || wants(Facet::Method);
    let graphs = match (&a.relgraph, wants_graph) {
        (Some(p), true) => load_relation_graphs(p)?,
        (None, true) => return Err(CliError::Usage("task/method extraction needs --relgraph".into())),
        _ => BTreeMap::new(),
    };
    let mut models = BTreeMap::new();
    for &facet in &a.facets {
        if matches!(facet, Facet::Task | Facet::Method) {
            continue;
        }
        let path = models_path.join(format!("{facet}.sentence.json"));
        if !path.is_file() {
            return Err(CliError::Validation(format!("no sentence model for facet `{facet}` at {}", path.display())));
        }
        let sentence = SentClassifierModel::load(&path).map_err(invalid)?;
        let crf = if facet.entity_types().is_empty() {
            None
        } else {
            let path = models_path.join(format!("{facet}.ner.json"));
            if !path.is_file() {
                return Err(CliError::Validation(format!(
                    "no sequence model for facet `{facet}` at {}",
                    path.display()
                )));
            }
            Some(CrfModel::load(&path).map_err(invalid)?)
        };
        models.insert(facet, FacetModels { sentence, crf });
    }
    let mut extractor = Extractor::new(models, ctx.cfg.pattern_config()?);
    extractor.cluster_threshold = ctx.cfg.cluster_threshold;
    extractor.check().map_err(invalid)?;
    let corpus = load_corpus_store(&store_dir(ctx, &a.corpus)?)?;
    let records: Vec<PaperExtraction> = corpus
        .par_iter()
        .map(|doc| {
            let graph = if wants_graph {
                let g = graphs.get(&doc.doc_id);
                if g.is_none() {
                    log::warn!("{}: no relation graph", doc.doc_id);
                }
                g
            } else {
                None
            };
            let mut rec = extractor.extract_document(doc, graph)?;
            rec.facet_entities.retain(|f, _| wants(*f));
            rec.provenance.retain(|f, _| wants(*f));
            Ok(rec)
        })
        .collect::<Result<_, crate::extract::ExtractError>>()
        .map_err(invalid)?;
    let out = ctx.cfg.path(&a.out, &ctx.cfg.output_dir, "predictions.jsonl", "--out")?;
    write(&out, &records.iter().map(|r| r.to_json_line() + "\n").collect::<String>())
}

pub(super) fn eval(ctx: &Context, a: &EvalArgs) -> Result<(), CliError> {
    let golds = parse_gold(&read(&a.gold)?).map_err(invalid)?;
    let pred_path = ctx.cfg.path(&a.predictions, &ctx.cfg.output_dir, "predictions.jsonl", "--predictions")?;
    let preds = parse_extractions(&read(&pred_path)?).map_err(invalid)?;
    for g in &golds {
        if !preds.iter().any(|p| p.doc_id == g.doc_id) {
            log::warn!("{}: gold document has no prediction", g.doc_id);
        }
    }
    for p in &preds {
        if !golds.iter().any(|g| g.doc_id == p.doc_id) {
            log::warn!("{}: prediction has no gold record", p.doc_id);
        }
    }
    let averaging = if a.per_document { Averaging::PerDocument } else { Averaging::Pooled };
    let report = evaluate(&golds, &preds, ctx.cfg.cluster_threshold, averaging).map_err(invalid)?;
    match ctx.cfg.path(&a.out, &ctx.cfg.output_dir, "eval", "--out") {
        Ok(dir) => {
            write(&dir.join("report.json"), &(report.to_json() + "\n"))?;
            write(&dir.join("report.csv"), &report.to_csv())
        }
        Err(_) => {
            println!("{}", report.to_json());
            Ok(())
        }
    }
}

enum TrendOutput {
    Series(Vec<TrendSeries>),
    Ranking(Vec<(String, f64)>),
    Memory(analytics::MemoryStats),
}

impl TrendOutput {
    fn table(&self) -> Table {
        match self {
            TrendOutput::Series(s) => Table::from_series(s),
            TrendOutput::Ranking(r) => Table::from_ranking(r.iter().cloned()),
            TrendOutput::Memory(m) => Table {
                rows: m
                    .iter()
                    .flat_map(|(y, s)| {
                        [("q1", s.q1), ("median", s.median), ("q3", s.q3), ("n", s.n as f64)]
                            .into_iter()
                            .map(move |(l, v)| (y.to_string(), l.to_string(), v))
                    })
                    .collect(),
            },
        }
    }

    fn render(&self, format: OutputFormat) -> String {
        match (format, self) {
            (OutputFormat::Csv, _) => self.table().to_csv(),
            (OutputFormat::Json, TrendOutput::Series(s)) => to_json(s),
            (OutputFormat::Json, TrendOutput::Ranking(r)) => to_json(r),
            (OutputFormat::Json, TrendOutput::Memory(m)) => to_json(m),
        }
    }
}

fn counts(r: Vec<(String, usize)>) -> TrendOutput {
    TrendOutput::Ranking(r.into_iter().map(|(k, n)| (k, n as f64)).collect())
}

fn need<T: Clone>(v: &Option<T>, flag: &str) -> Result<T, CliError> {
    v.clone().ok_or_else(|| CliError::Usage(format!("this query needs {flag}")))
}

fn run_query(q: Query, a: &TrendsArgs, xs: &[PaperExtraction]) -> Result<TrendOutput, CliError> {
    Ok(match q {
        Query::HostShare => TrendOutput::Series(vec![analytics::host_share_by_year(xs, &a.host)]),
        Query::CategoryShare => TrendOutput::Ranking(analytics::share_by_category(xs)),
        Query::TopEntities => counts(analytics::top_entities(xs, a.facet.unwrap_or(Facet::Dataset), a.k)),
        Query::CoUsage => counts(analytics::co_usage(
            xs,
            a.facet.unwrap_or(Facet::Dataset),
            &need(&a.key, "--key")?,
            need(&a.other_facet, "--other-facet")?,
            a.k,
        )),
        Query::TopicTrend => TrendOutput::Series(vec![analytics::topic_trend(
            xs,
            a.facet.unwrap_or(Facet::Task),
            &need(&a.key, "--key")?,
        )]),
        Query::Memory => TrendOutput::Memory(analytics::memory_stats_by_year(xs)),
        Query::Manufacturer => TrendOutput::Series(analytics::manufacturer_share(xs)),
        Query::Pairwise => {
            let (x, y) = analytics::pairwise_trend(
                xs,
                a.facet.unwrap_or(Facet::LanguageLibrary),
                &need(&a.key, "--key")?,
                &need(&a.key_b, "--key-b")?,
            );
            TrendOutput::Series(vec![x, y])
        }
    })
}

/// The eight figure series with their default arguments.
fn plot_data(xs: &[PaperExtraction]) -> Vec<(&'static str, TrendOutput)> {
    let pair = |a: &str, b: &str| {
        let (x, y) = analytics::pairwise_trend(xs, Facet::LanguageLibrary, a, b);
        TrendOutput::Series(vec![x, y])
    };
    vec![
        ("q1", TrendOutput::Series(vec![analytics::host_share_by_year(xs, "github.com")])),
        ("q2", TrendOutput::Ranking(analytics::share_by_category(xs))),
        ("q3", counts(analytics::top_entities(xs, Facet::Dataset, 10))),
        ("q4", TrendOutput::Series(vec![analytics::topic_trend(xs, Facet::Task, "sentiment analysis")])),
        ("q5", TrendOutput::Memory(analytics::memory_stats_by_year(xs))),
        ("q6", TrendOutput::Series(analytics::manufacturer_share(xs))),
        ("q7", pair("TensorFlow", "PyTorch")),
        ("q8", pair("Java", "Python")),
    ]
}

pub(super) fn trends(ctx: &Context, a: &TrendsArgs) -> Result<(), CliError> {
    let path = ctx.cfg.path(&a.predictions, &ctx.cfg.output_dir, "predictions.jsonl", "--predictions")?;
    let mut xs = parse_extractions(&read(&path)?).map_err(invalid)?;
    xs.sort_by(|x, y| x.doc_id.cmp(&y.doc_id));
    if let Some(dir) = &a.plot_data {
        for (name, out) in plot_data(&xs) {
            write(&dir.join(format!("{name}.csv")), &out.table().to_csv())?;
        }
    }
    if let Some(q) = a.query {
        let text = run_query(q, a, &xs)?.render(a.format);
        match &a.out {
            Some(p) => write(p, &text)?,
            None => print!("{text}"),
        }
    }
    Ok(())
}
