//! Command-line interface: each stage reads and writes JSON interchange
//! files so the stages are independently testable. Exit codes: 0 success,
//! 1 validation error, 2 I/O error.

use clap::{Args, Parser, Subcommand, ValueEnum};
use kinfer::attribution::{
    AttributionConfig, ChainSource, ClassifierKind, Combiner, Ranking,
};
use kinfer::corpus::{load_corpus, CorpusError, Document, GoldAnnotations, Lexicons, ParseConfig, QuoteStyle};
use kinfer::kinship::{default_rules, load_rules, propagate, RuleError, RuleSet, SeedFact};
use kinfer::pipeline::{
    self, attributions_to_json, evaluate_relations, export::export_dot, export::export_json,
    export::ExportFormat, gold_triples, run_arm, ArmConfig, Cleaning, CleaningList, Detector,
    ExperimentArm, PipelineError, Triple,
};
use kinfer::vocative::{detect_pattern_all, select_candidates};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "kinfer", version, about = "Extract family relations from narrative fiction")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct CorpusArgs {
    /// Plain UTF-8 narrative text file.
    #[arg(long)]
    narrative: PathBuf,
    /// Annotations JSON (characters, attributions, relations).
    #[arg(long)]
    annotations: PathBuf,
    /// Directory holding expression_verbs.txt, head_nouns.txt and
    /// target_nominals.tsv.
    #[arg(long)]
    lexicon_dir: PathBuf,
    #[arg(long, value_enum, default_value_t = QuoteStyleArg::Straight)]
    quote_style: QuoteStyleArg,
}

#[derive(Clone, Copy, ValueEnum)]
enum QuoteStyleArg {
    Straight,
    Typographic,
}

#[derive(Args, Clone)]
struct AttributionArgs {
    #[arg(long, value_enum, default_value_t = RankingArg::Hybrid)]
    ranking: RankingArg,
    #[arg(long, default_value_t = 0.5)]
    threshold: f64,
    #[arg(long, value_enum, default_value_t = CombinerArg::Mean)]
    combiner: CombinerArg,
    #[arg(long, value_enum, default_value_t = ChainSourceArg::Gold)]
    chain_source: ChainSourceArg,
    #[arg(long, value_enum, default_value_t = ClassifierArg::Logistic)]
    classifier: ClassifierArg,
    /// Candidate window, in paragraphs on each side.
    #[arg(long, default_value_t = 2)]
    window: usize,
    /// Cross-validation folds for training.
    #[arg(long, default_value_t = 10)]
    folds: usize,
    /// Random seed for fold splits.
    #[arg(long, default_value_t = 17)]
    seed: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum RankingArg {
    Label,
    Probability,
    Hybrid,
    Combined,
}

#[derive(Clone, Copy, ValueEnum)]
enum CombinerArg {
    Max,
    Mean,
    Median,
    Product,
}

#[derive(Clone, Copy, ValueEnum)]
enum ChainSourceArg {
    Gold,
    Predicted,
}

#[derive(Clone, Copy, ValueEnum)]
enum ClassifierArg {
    Tree,
    Rules,
    Logistic,
}

#[derive(Clone, Copy, ValueEnum)]
enum DetectorArg {
    Pattern,
    Supervised,
}

#[derive(Clone, Copy, ValueEnum)]
enum ArmArg {
    Extracted,
    Cleaned,
    Oracle,
    CleanedOracle,
}

#[derive(Subcommand)]
enum Command {
    /// Parse the narrative and dump the document model.
    Parse {
        #[command(flatten)]
        corpus: CorpusArgs,
        /// Output file (stdout when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Attribute speaker-utterances and write the attribution map.
    Attribute {
        #[command(flatten)]
        corpus: CorpusArgs,
        #[command(flatten)]
        attribution: AttributionArgs,
        /// Save the trained model to this path.
        #[arg(long)]
        model_out: Option<PathBuf>,
        /// Use a previously saved model instead of training.
        #[arg(long, conflicts_with = "model_out")]
        model_in: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Detect vocative utterances.
    DetectVocatives {
        #[command(flatten)]
        corpus: CorpusArgs,
        #[arg(long, value_enum, default_value_t = DetectorArg::Pattern)]
        detector: DetectorArg,
        /// Gold vocative labels (required for the supervised detector).
        #[arg(long)]
        vocative_labels: Option<PathBuf>,
        #[arg(long, default_value_t = 10)]
        folds: usize,
        #[arg(long, default_value_t = 17)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Extract seed relations (attribution + detection + constraints).
    Extract {
        #[command(flatten)]
        corpus: CorpusArgs,
        #[command(flatten)]
        attribution: AttributionArgs,
        #[arg(long, value_enum, default_value_t = DetectorArg::Pattern)]
        detector: DetectorArg,
        #[arg(long)]
        vocative_labels: Option<PathBuf>,
        /// Use gold attributions instead of predicted ones.
        #[arg(long)]
        oracle: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Propagate a seed file to a kinship graph.
    Propagate {
        /// Seed relations JSON (as written by `extract`).
        #[arg(long)]
        seeds: PathBuf,
        /// Annotations JSON supplying the character registry.
        #[arg(long)]
        annotations: PathBuf,
        /// Rule file; the built-in default rules when omitted.
        #[arg(long)]
        rules: Option<PathBuf>,
        /// Skip Mr./Mrs. title inference.
        #[arg(long)]
        no_title_inference: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate a propagated graph (or seed file) against gold relations.
    Evaluate {
        /// Graph JSON (as written by `propagate`).
        #[arg(long, conflicts_with = "seeds")]
        graph: Option<PathBuf>,
        /// Seed relations JSON.
        #[arg(long)]
        seeds: Option<PathBuf>,
        #[arg(long)]
        annotations: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Export a graph to DOT or JSON.
    Export {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        annotations: PathBuf,
        #[arg(long, default_value = "dot")]
        format: String,
        /// Style facts absent from gold as dashed (DOT only).
        #[arg(long)]
        mark_errors: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a full experiment arm and write all stage outputs.
    Run {
        #[command(flatten)]
        corpus: CorpusArgs,
        #[command(flatten)]
        attribution: AttributionArgs,
        #[arg(long, value_enum, default_value_t = ArmArg::Extracted)]
        arm: ArmArg,
        #[arg(long, value_enum, default_value_t = DetectorArg::Pattern)]
        detector: DetectorArg,
        #[arg(long)]
        vocative_labels: Option<PathBuf>,
        /// Cleaning file for the cleaned arms; gold-derived cleaning when
        /// omitted.
        #[arg(long)]
        cleaning_file: Option<PathBuf>,
        #[arg(long)]
        rules: Option<PathBuf>,
        #[arg(long)]
        out_dir: PathBuf,
        #[arg(long, default_value = "dot")]
        format: String,
    },
}

/// Errors mapped onto the exit-code contract.
enum CliError {
    Validation(String),
    Io(String),
}

impl CliError {
    fn exit_code(&self) -> ExitCode {
        match self {
            CliError::Validation(_) => ExitCode::from(1),
            CliError::Io(_) => ExitCode::from(2),
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Validation(m) | CliError::Io(m) => m,
        }
    }
}

impl From<CorpusError> for CliError {
    fn from(err: CorpusError) -> Self {
        match err {
            CorpusError::Io { .. } => CliError::Io(err.to_string()),
            other => CliError::Validation(other.to_string()),
        }
    }
}

impl From<PipelineError> for CliError {
    fn from(err: PipelineError) -> Self {
        match err {
            PipelineError::Io { .. } => CliError::Io(err.to_string()),
            other => CliError::Validation(other.to_string()),
        }
    }
}

impl From<RuleError> for CliError {
    fn from(err: RuleError) -> Self {
        match err {
            RuleError::Io { .. } => CliError::Io(err.to_string()),
            other => CliError::Validation(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(err: std::io::Error) -> Self {
        CliError::Io(err.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {}", err.message());
            err.exit_code()
        }
    }
}

fn write_output(out: &Option<PathBuf>, content: &str) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, content).map_err(CliError::from),
        None => {
            println!("{content}");
            Ok(())
        }
    }
}

fn load(corpus: &CorpusArgs) -> Result<(Document, GoldAnnotations, Lexicons), CliError> {
    let config = ParseConfig {
        quote_style: match corpus.quote_style {
            QuoteStyleArg::Straight => QuoteStyle::Straight,
            QuoteStyleArg::Typographic => QuoteStyle::Typographic,
        },
    };
    let (document, gold, lexicons, report) = load_corpus(
        &corpus.narrative,
        &corpus.annotations,
        &corpus.lexicon_dir,
        &config,
    )?;
    eprintln!(
        "loaded {}: {} paragraphs, {} utterances ({} speaker), {} mentions, {} characters, {} diagnostics",
        document.source_name,
        report.paragraphs,
        report.utterances,
        report.speaker_utterances,
        report.mentions,
        report.characters,
        report.diagnostics
    );
    for diagnostic in &document.diagnostics {
        eprintln!("  parse: {diagnostic}");
    }
    Ok((document, gold, lexicons))
}

fn attribution_config(args: &AttributionArgs) -> AttributionConfig {
    AttributionConfig {
        ranking: match args.ranking {
            RankingArg::Label => Ranking::Label,
            RankingArg::Probability => Ranking::Probability,
            RankingArg::Hybrid => Ranking::Hybrid,
            RankingArg::Combined => Ranking::Combined,
        },
        threshold: args.threshold,
        combiner: match args.combiner {
            CombinerArg::Max => Combiner::Max,
            CombinerArg::Mean => Combiner::Mean,
            CombinerArg::Median => Combiner::Median,
            CombinerArg::Product => Combiner::Product,
        },
        chain_source: match args.chain_source {
            ChainSourceArg::Gold => ChainSource::Gold,
            ChainSourceArg::Predicted => ChainSource::Predicted,
        },
        classifier: match args.classifier {
            ClassifierArg::Tree => ClassifierKind::Tree,
            ClassifierArg::Rules => ClassifierKind::Rules,
            ClassifierArg::Logistic => ClassifierKind::Logistic,
        },
        window: args.window,
    }
}

fn load_rule_set(rules: &Option<PathBuf>) -> Result<RuleSet, CliError> {
    match rules {
        Some(path) => Ok(load_rules(path)?),
        None => Ok(default_rules()),
    }
}

fn load_graph_file(path: &Path) -> Result<Vec<Triple>, CliError> {
    let raw = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("failed to read {}: {e}", path.display())))?;
    let value: serde_json::Value = serde_json::from_str(&raw)
        .map_err(|e| CliError::Validation(format!("invalid json in {}: {e}", path.display())))?;
    let facts = value["facts"]
        .as_array()
        .ok_or_else(|| CliError::Validation(format!("{}: missing facts array", path.display())))?;
    facts
        .iter()
        .map(|f| {
            let get = |key: &str| {
                f[key]
                    .as_str()
                    .map(str::to_string)
                    .ok_or_else(|| CliError::Validation(format!("fact missing field {key:?}")))
            };
            let relation = get("relation")?
                .parse()
                .map_err(|e: String| CliError::Validation(e))?;
            Ok((
                kinfer::corpus::CharacterId::new(get("a1")?),
                relation,
                kinfer::corpus::CharacterId::new(get("a2")?),
            ))
        })
        .collect()
}

fn dispatch(command: Command) -> Result<(), CliError> {
    match command {
        Command::Parse { corpus, out } => {
            let (document, _, _) = load(&corpus)?;
            let json = serde_json::to_string_pretty(&document).expect("document serializes");
            write_output(&out, &json)
        }

        Command::Attribute {
            corpus,
            attribution,
            model_out,
            model_in,
            out,
        } => {
            let (document, gold, lexicons) = load(&corpus)?;
            let config = attribution_config(&attribution);
            let model = match model_in {
                Some(path) => kinfer::attribution::AttributionModel::load(&path)
                    .map_err(CliError::Validation)?,
                None => {
                    let pairs = kinfer::attribution::build_training_pairs(
                        &document, &gold, &lexicons, &config,
                    );
                    let trained =
                        kinfer::attribution::train(&pairs, attribution.folds, attribution.seed)
                            .map_err(|e| CliError::Validation(e.to_string()))?;
                    for warning in &trained.warnings {
                        eprintln!("warning: {warning}");
                    }
                    for report in &trained.fold_reports {
                        eprintln!(
                            "fold {}: tree {:.3} rules {:.3} logistic {:.3} ({} pairs)",
                            report.fold,
                            report.tree_accuracy,
                            report.rules_accuracy,
                            report.logistic_accuracy,
                            report.test_pairs
                        );
                    }
                    if let Some(path) = model_out {
                        trained.model.save(&path)?;
                    }
                    trained.model
                }
            };
            let outcome = kinfer::attribution::attribute_all(
                &document,
                Some(&gold),
                &lexicons,
                Some(&model),
                &config,
            );
            if let Some(accuracy) = outcome.accuracy {
                eprintln!(
                    "attribution accuracy: {:.3} ({}/{})",
                    accuracy, outcome.correct, outcome.evaluated
                );
            }
            for (category, count) in &outcome.tallies {
                eprintln!("  {category:?}: {count}");
            }
            let json = serde_json::to_string_pretty(&attributions_to_json(&outcome))
                .expect("attributions serialize");
            write_output(&out, &json)
        }

        Command::DetectVocatives {
            corpus,
            detector,
            vocative_labels,
            folds,
            seed,
            out,
        } => {
            let (document, _, lexicons) = load(&corpus)?;
            let candidates = select_candidates(&document, &lexicons);
            eprintln!("candidate occurrences: {}", candidates.len());
            let detections = match detector {
                DetectorArg::Pattern => detect_pattern_all(&document, &candidates),
                DetectorArg::Supervised => {
                    let path = vocative_labels
                        .ok_or(PipelineError::MissingVocativeLabels)
                        .map_err(CliError::from)?;
                    let labels = pipeline::load_vocative_labels(&path)?;
                    let outcome = kinfer::vocative::detect_supervised(
                        &document, &candidates, &labels, folds, seed,
                    )
                    .map_err(|e| CliError::Validation(e.to_string()))?;
                    if let Some(report) = outcome.report {
                        eprintln!(
                            "vocative detection: P {:.2} R {:.2} F {:.2}",
                            report.precision, report.recall, report.f1
                        );
                    }
                    outcome.positive_occurrences
                }
            };
            let json = serde_json::to_string_pretty(&detections).expect("detections serialize");
            write_output(&out, &json)
        }

        Command::Extract {
            corpus,
            attribution,
            detector,
            vocative_labels,
            oracle,
            out,
        } => {
            let (document, gold, lexicons) = load(&corpus)?;
            let mut config = ArmConfig::new(if oracle {
                ExperimentArm::Oracle
            } else {
                ExperimentArm::Extracted
            });
            config.attribution = attribution_config(&attribution);
            config.folds = attribution.folds;
            config.seed = attribution.seed;
            config.detector = match detector {
                DetectorArg::Pattern => Detector::Pattern,
                DetectorArg::Supervised => Detector::Supervised,
            };
            let labels = match vocative_labels {
                Some(path) => Some(pipeline::load_vocative_labels(&path)?),
                None => None,
            };
            let outcome = run_arm(
                &document,
                &gold,
                &lexicons,
                &default_rules(),
                labels.as_deref(),
                &config,
            )?;
            for warning in &outcome.warnings {
                eprintln!("warning: {warning}");
            }
            let json = serde_json::to_string_pretty(&outcome.seeds).expect("seeds serialize");
            write_output(&out, &json)
        }

        Command::Propagate {
            seeds,
            annotations,
            rules,
            no_title_inference,
            out,
        } => {
            let gold = kinfer::corpus::load_annotations(&annotations)?;
            let seed_relations = pipeline::load_seeds(&seeds)?;
            let rule_set = load_rule_set(&rules)?;
            let mut facts: Vec<SeedFact> = seed_relations
                .iter()
                .map(|s| SeedFact {
                    a1: s.a1.clone(),
                    relation: s.relation,
                    a2: s.a2.clone(),
                    count: s.count,
                })
                .collect();
            if !no_title_inference {
                facts.extend(kinfer::kinship::infer_spousal_from_titles(&gold.registry));
            }
            let (graph, diagnostics) = propagate(&facts, &rule_set, &gold.registry);
            eprintln!(
                "propagation: {} facts after {} iterations ({} cancelled seeds, {} oscillating pairs)",
                graph.len(),
                diagnostics.iterations,
                diagnostics.cancelled_seeds.len(),
                diagnostics.oscillating_pairs.len()
            );
            write_output(&out, &export_json(&graph))
        }

        Command::Evaluate {
            graph,
            seeds,
            annotations,
            out,
        } => {
            let gold = kinfer::corpus::load_annotations(&annotations)?;
            let predicted: Vec<Triple> = match (&graph, &seeds) {
                (Some(path), _) => load_graph_file(path)?,
                (None, Some(path)) => pipeline::seed_triples(&pipeline::load_seeds(path)?),
                (None, None) => {
                    return Err(CliError::Validation(
                        "evaluate requires --graph or --seeds".into(),
                    ))
                }
            };
            let report = evaluate_relations(
                &predicted,
                &gold_triples(&gold),
                &gold.registry,
                if graph.is_some() { "graph" } else { "seeds" },
            );
            println!(
                "{}: P {:.2} R {:.2} F {:.2} (tp {} fp {} fn {})",
                report.label,
                report.prf.precision,
                report.prf.recall,
                report.prf.f1,
                report.prf.true_positives,
                report.prf.false_positives,
                report.prf.false_negatives
            );
            if let Some(path) = out {
                let json = serde_json::to_string_pretty(&report).expect("report serializes");
                std::fs::write(path, json)?;
            }
            Ok(())
        }

        Command::Export {
            graph,
            annotations,
            format,
            mark_errors,
            out,
        } => {
            let gold = kinfer::corpus::load_annotations(&annotations)?;
            let triples = load_graph_file(&graph)?;
            // Rebuild a graph from the stored facts for export.
            let facts: Vec<SeedFact> = triples
                .iter()
                .map(|(a1, relation, a2)| SeedFact {
                    a1: a1.clone(),
                    relation: *relation,
                    a2: a2.clone(),
                    count: 1,
                })
                .collect();
            let (graph, _) = propagate(&facts, &RuleSet::default(), &gold.registry);
            let format: ExportFormat = format
                .parse()
                .map_err(CliError::Validation)?;
            let gold_rel = gold_triples(&gold);
            let content = match format {
                ExportFormat::Dot => export_dot(
                    &graph,
                    &gold.registry,
                    mark_errors.then_some(gold_rel.as_slice()),
                ),
                ExportFormat::Json => export_json(&graph),
            };
            write_output(&out, &content)
        }

        Command::Run {
            corpus,
            attribution,
            arm,
            detector,
            vocative_labels,
            cleaning_file,
            rules,
            out_dir,
            format,
        } => {
            let (document, gold, lexicons) = load(&corpus)?;
            let arm = match arm {
                ArmArg::Extracted => ExperimentArm::Extracted,
                ArmArg::Cleaned => ExperimentArm::Cleaned,
                ArmArg::Oracle => ExperimentArm::Oracle,
                ArmArg::CleanedOracle => ExperimentArm::CleanedOracle,
            };
            let mut config = ArmConfig::new(arm);
            config.attribution = attribution_config(&attribution);
            config.folds = attribution.folds;
            config.seed = attribution.seed;
            config.detector = match detector {
                DetectorArg::Pattern => Detector::Pattern,
                DetectorArg::Supervised => Detector::Supervised,
            };
            if let Some(path) = cleaning_file {
                config.cleaning = Cleaning::List(CleaningList::load(&path)?);
            }
            let labels = match vocative_labels {
                Some(path) => Some(pipeline::load_vocative_labels(&path)?),
                None => None,
            };
            let rule_set = load_rule_set(&rules)?;
            let outcome = run_arm(
                &document,
                &gold,
                &lexicons,
                &rule_set,
                labels.as_deref(),
                &config,
            )?;
            for warning in &outcome.warnings {
                eprintln!("warning: {warning}");
            }

            std::fs::create_dir_all(&out_dir)?;
            if let Some(attribution) = &outcome.attribution {
                let json = serde_json::to_string_pretty(&attributions_to_json(attribution))
                    .expect("attributions serialize");
                std::fs::write(out_dir.join("attributions.json"), json)?;
            }
            std::fs::write(
                out_dir.join("vocatives.json"),
                serde_json::to_string_pretty(&outcome.detections).expect("detections serialize"),
            )?;
            std::fs::write(
                out_dir.join("seeds.json"),
                serde_json::to_string_pretty(&outcome.cleaned_seeds).expect("seeds serialize"),
            )?;
            std::fs::write(out_dir.join("graph.json"), export_json(&outcome.graph))?;
            let format: ExportFormat = format
                .parse()
                .map_err(CliError::Validation)?;
            if format == ExportFormat::Dot {
                let gold_rel = gold_triples(&gold);
                std::fs::write(
                    out_dir.join("graph.dot"),
                    export_dot(&outcome.graph, &gold.registry, Some(gold_rel.as_slice())),
                )?;
            }
            let reports = serde_json::json!({
                "arm": outcome.arm.label(),
                "seed": outcome.seed_report,
                "propagated": outcome.propagated_report,
                "vocative": outcome.vocative_report,
                "attribution_accuracy": outcome.attribution.as_ref().and_then(|a| a.accuracy),
            });
            std::fs::write(
                out_dir.join("reports.json"),
                serde_json::to_string_pretty(&reports).expect("reports serialize"),
            )?;

            println!(
                "{} seeds: P {:.2} R {:.2} F {:.2}",
                outcome.arm.label(),
                outcome.seed_report.prf.precision,
                outcome.seed_report.prf.recall,
                outcome.seed_report.prf.f1
            );
            println!(
                "{} propagated: P {:.2} R {:.2} F {:.2}",
                outcome.arm.label(),
                outcome.propagated_report.prf.precision,
                outcome.propagated_report.prf.recall,
                outcome.propagated_report.prf.f1
            );
            Ok(())
        }
    }
}
