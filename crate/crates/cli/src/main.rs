mod document;
mod error;
mod render;

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use ordbel::{
    belief_distance, conflict, conflict_multi, decide_distance_scored, pointwise_scores,
    DeltaPolicy, DissimilarityMatrix, ElementDistanceMode, FuzzyParams, MassFunction,
    MatrixKind, OrderedElement, OrderedFrame, PointwiseCriterion, RuleId,
};

use document::{LikertDocument, MassDocument};
use error::CliError;
use render::{csv_line, fmt_sig, round_sig, table};

/// Belief functions on ordered frames of discernment.
#[derive(Parser)]
#[command(name = "ordbel", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Combine two or more mass-function documents with one rule.
    Combine {
        #[arg(long, value_enum)]
        rule: RuleArg,
        #[command(flatten)]
        metric: MetricOpts,
        #[arg(long)]
        renormalize: bool,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Input documents (at least two).
        #[arg(required = true, num_args = 2..)]
        files: Vec<PathBuf>,
    },
    /// Distance between two mass functions under a dissimilarity weighting.
    Distance {
        #[command(flatten)]
        metric: MetricOpts,
        #[arg(long)]
        renormalize: bool,
        #[arg(long, value_enum, default_value_t = Format::Human)]
        format: Format,
        a: PathBuf,
        b: PathBuf,
    },
    /// Emit the dissimilarity matrix over the ordered power set.
    Matrix {
        /// Number of ordered states.
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        metric: MetricOpts,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Credibility, plausibility and pignistic tables of one mass function.
    Transform {
        #[arg(long)]
        renormalize: bool,
        #[arg(long, value_enum, default_value_t = Format::Human)]
        format: Format,
        file: PathBuf,
    },
    /// Decide on a state or element from one mass function.
    Decide {
        #[arg(long, value_enum)]
        criterion: CriterionArg,
        /// `singletons`, `all`, or a comma-separated element list.
        #[arg(long, default_value = "singletons")]
        candidates: String,
        #[command(flatten)]
        metric: MetricOpts,
        #[arg(long)]
        renormalize: bool,
        #[arg(long, value_enum, default_value_t = Format::Human)]
        format: Format,
        file: PathBuf,
    },
    /// Conflict between two mass functions, or the mean pairwise conflict.
    Conflict {
        #[command(flatten)]
        metric: MetricOpts,
        #[arg(long)]
        renormalize: bool,
        #[arg(long, value_enum, default_value_t = Format::Human)]
        format: Format,
        #[arg(required = true, num_args = 2..)]
        files: Vec<PathBuf>,
    },
    /// Fuse counted Likert responses, one fused mass per respondent group.
    Likert {
        #[arg(long, value_enum)]
        rule: RuleArg,
        /// Mass each respondent concedes to the whole frame.
        #[arg(long, default_value_t = 0.0)]
        discount: f64,
        #[command(flatten)]
        metric: MetricOpts,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        file: PathBuf,
    },
}

#[derive(Args, Clone)]
struct MetricOpts {
    /// Dissimilarity weighting.
    #[arg(long, value_enum, default_value_t = KindArg::Ordered)]
    kind: KindArg,
    /// Element-distance aggregation.
    #[arg(long, value_enum, default_value_t = DmodeArg::Avg)]
    dmode: DmodeArg,
    /// Outside-membership scale of the fuzzy weighting.
    #[arg(long, default_value_t = 0.0)]
    alpha: f64,
    /// Decay rate of the fuzzy membership (validated range [0, 1]).
    #[arg(long, default_value_t = 1.0)]
    gamma: f64,
}

impl MetricOpts {
    fn mode(&self) -> ElementDistanceMode {
        match self.dmode {
            DmodeArg::Min => ElementDistanceMode::Min,
            DmodeArg::Max => ElementDistanceMode::Max,
            DmodeArg::Avg => ElementDistanceMode::Average,
        }
    }

    fn fuzzy_params(&self) -> Result<FuzzyParams, CliError> {
        let params = FuzzyParams::with_extended_gamma(self.alpha, self.gamma, self.mode())?;
        if params.has_extended_gamma() {
            eprintln!(
                "warning: gamma = {} is outside the validated range [0, 1]",
                self.gamma
            );
        }
        Ok(params)
    }

    fn matrix_kind(&self) -> Result<MatrixKind, CliError> {
        Ok(match self.kind {
            KindArg::Plain => MatrixKind::Plain,
            KindArg::Ordered => MatrixKind::Ordered(self.mode()),
            KindArg::Fuzzy => MatrixKind::Fuzzy(self.fuzzy_params()?),
        })
    }

    fn delta_policy(&self) -> Result<DeltaPolicy, CliError> {
        if self.alpha == 0.0 {
            Ok(DeltaPolicy::Crisp)
        } else {
            Ok(DeltaPolicy::Fuzzy(self.fuzzy_params()?))
        }
    }

    fn matrix(&self, frame: &OrderedFrame) -> Result<DissimilarityMatrix, CliError> {
        Ok(DissimilarityMatrix::new(frame, self.matrix_kind()?)?)
    }
}

#[derive(ValueEnum, Clone, Copy, PartialEq)]
enum RuleArg {
    Conj,
    Dempster,
    Yager,
    Odisj,
    Odp,
    Avg,
    Mixed,
}

impl RuleArg {
    fn rule(&self, metric: &MetricOpts) -> Result<RuleId, CliError> {
        Ok(match self {
            RuleArg::Conj => RuleId::Conjunctive,
            RuleArg::Dempster => RuleId::Dempster,
            RuleArg::Yager => RuleId::Yager,
            RuleArg::Odisj => RuleId::OrderedDisjunctive,
            RuleArg::Odp => RuleId::OrderedDuboisPrade,
            RuleArg::Avg => RuleId::Average,
            RuleArg::Mixed => RuleId::Mixed(metric.delta_policy()?),
        })
    }
}

#[derive(ValueEnum, Clone, Copy, PartialEq)]
enum KindArg {
    Plain,
    Ordered,
    Fuzzy,
}

#[derive(ValueEnum, Clone, Copy, PartialEq)]
enum DmodeArg {
    Min,
    Max,
    Avg,
}

#[derive(ValueEnum, Clone, Copy, PartialEq)]
enum CriterionArg {
    Bel,
    Pl,
    Betp,
    Dist,
}

#[derive(ValueEnum, Clone, Copy, PartialEq)]
enum Format {
    Human,
    Csv,
    Json,
}

fn main() {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(output) => print!("{output}"),
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(e.exit_code());
        }
    }
}

fn run(command: Command) -> Result<String, CliError> {
    match command {
        Command::Combine {
            rule,
            metric,
            renormalize,
            format,
            files,
        } => {
            let sources = read_masses(&files, renormalize)?;
            let rule = rule.rule(&metric)?;
            let fused = rule.apply(&sources)?;
            Ok(render_mass(&fused, format))
        }
        Command::Distance {
            metric,
            renormalize,
            format,
            a,
            b,
        } => {
            let m1 = read_mass(&a, renormalize)?;
            let m2 = read_mass(&b, renormalize)?;
            same_frame(&m1, &m2)?;
            let matrix = metric.matrix(m1.frame())?;
            let d = belief_distance(&m1, &m2, &matrix)?;
            Ok(render_scalar("distance", d, format))
        }
        Command::Matrix { n, metric, format } => {
            let frame = OrderedFrame::with_default_labels(n)?;
            let matrix = metric.matrix(&frame)?;
            Ok(render_matrix(&frame, &matrix, format))
        }
        Command::Transform {
            renormalize,
            format,
            file,
        } => {
            let mass = read_mass(&file, renormalize)?;
            render_transform(&mass, format)
        }
        Command::Decide {
            criterion,
            candidates,
            metric,
            renormalize,
            format,
            file,
        } => {
            let mass = read_mass(&file, renormalize)?;
            run_decide(&mass, criterion, &candidates, &metric, format)
        }
        Command::Conflict {
            metric,
            renormalize,
            format,
            files,
        } => {
            let sources = read_masses(&files, renormalize)?;
            let matrix = metric.matrix(sources[0].frame())?;
            let value = if sources.len() == 2 {
                conflict(&sources[0], &sources[1], &matrix)?
            } else {
                conflict_multi(&sources, &matrix)?
            };
            Ok(render_scalar("conflict", value, format))
        }
        Command::Likert {
            rule,
            discount,
            metric,
            format,
            file,
        } => run_likert(&file, rule, discount, &metric, format),
    }
}

fn read_text(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn read_mass(path: &Path, renormalize: bool) -> Result<MassFunction, CliError> {
    let origin = path.display().to_string();
    let text = read_text(path)?;
    MassDocument::parse(&text, &origin)?.to_mass(&origin, renormalize)
}

fn read_masses(paths: &[PathBuf], renormalize: bool) -> Result<Vec<MassFunction>, CliError> {
    let masses: Vec<MassFunction> = paths
        .iter()
        .map(|p| read_mass(p, renormalize))
        .collect::<Result<_, _>>()?;
    for m in &masses[1..] {
        same_frame(&masses[0], m)?;
    }
    Ok(masses)
}

fn same_frame(a: &MassFunction, b: &MassFunction) -> Result<(), CliError> {
    if a.frame() != b.frame() {
        return Err(CliError::Core(ordbel::Error::FrameMismatch));
    }
    Ok(())
}

fn render_mass(mass: &MassFunction, format: Format) -> String {
    let doc = MassDocument::from_mass(mass);
    match format {
        Format::Json => doc.to_json(),
        Format::Csv => {
            let mut out = csv_line(&["focal".into(), "mass".into()]);
            for entry in &doc.masses {
                out.push_str(&csv_line(&[entry.focal.clone(), fmt_sig(entry.mass)]));
            }
            out
        }
        Format::Human => {
            let mut rows = vec![vec!["focal".to_string(), "mass".to_string()]];
            for entry in &doc.masses {
                rows.push(vec![entry.focal.clone(), fmt_sig(entry.mass)]);
            }
            table(&rows)
        }
    }
}

fn render_scalar(name: &str, value: f64, format: Format) -> String {
    match format {
        Format::Human => format!("{}\n", fmt_sig(value)),
        Format::Csv => format!("{name}\n{}\n", fmt_sig(value)),
        Format::Json => {
            let mut out = serde_json::to_string_pretty(
                &serde_json::json!({ name: round_sig(value) }),
            )
            .expect("scalar serializes");
            out.push('\n');
            out
        }
    }
}

fn render_matrix(
    frame: &OrderedFrame,
    matrix: &DissimilarityMatrix,
    format: Format,
) -> String {
    let names: Vec<String> = frame.elements().map(|e| e.to_string()).collect();
    match format {
        Format::Csv => {
            let mut header = vec![String::new()];
            header.extend(names.iter().cloned());
            let mut out = csv_line(&header);
            for (i, name) in names.iter().enumerate() {
                let mut row = vec![name.clone()];
                row.extend(matrix.row(i).iter().map(|&v| fmt_sig(v)));
                out.push_str(&csv_line(&row));
            }
            out
        }
        Format::Human => {
            let mut rows = Vec::with_capacity(names.len() + 1);
            let mut header = vec![String::new()];
            header.extend(names.iter().cloned());
            rows.push(header);
            for (i, name) in names.iter().enumerate() {
                let mut row = vec![name.clone()];
                row.extend(matrix.row(i).iter().map(|&v| fmt_sig(v)));
                rows.push(row);
            }
            table(&rows)
        }
        Format::Json => {
            let entries: Vec<Vec<f64>> = (0..matrix.dim())
                .map(|i| matrix.row(i).iter().map(|&v| round_sig(v)).collect())
                .collect();
            let mut out = serde_json::to_string_pretty(&serde_json::json!({
                "elements": names,
                "entries": entries,
            }))
            .expect("matrix serializes");
            out.push('\n');
            out
        }
    }
}

fn render_transform(mass: &MassFunction, format: Format) -> Result<String, CliError> {
    struct Row {
        element: String,
        bel: f64,
        pl: f64,
        betp: Option<f64>,
    }
    let mut rows = Vec::new();
    for e in mass.frame().elements() {
        let betp = match e.bounds() {
            Some((lo, hi)) if lo == hi => Some(mass.betp(lo)?),
            _ => None,
        };
        rows.push(Row {
            element: e.to_string(),
            bel: mass.bel(&e),
            pl: mass.pl(&e),
            betp,
        });
    }
    Ok(match format {
        Format::Human => {
            let mut cells = vec![vec![
                "element".to_string(),
                "bel".to_string(),
                "pl".to_string(),
                "betp".to_string(),
            ]];
            for r in &rows {
                cells.push(vec![
                    r.element.clone(),
                    fmt_sig(r.bel),
                    fmt_sig(r.pl),
                    r.betp.map(fmt_sig).unwrap_or_else(|| "-".to_string()),
                ]);
            }
            table(&cells)
        }
        Format::Csv => {
            let mut out = csv_line(&[
                "element".into(),
                "bel".into(),
                "pl".into(),
                "betp".into(),
            ]);
            for r in &rows {
                out.push_str(&csv_line(&[
                    r.element.clone(),
                    fmt_sig(r.bel),
                    fmt_sig(r.pl),
                    r.betp.map(fmt_sig).unwrap_or_default(),
                ]));
            }
            out
        }
        Format::Json => {
            let items: Vec<serde_json::Value> = rows
                .iter()
                .map(|r| {
                    serde_json::json!({
                        "element": r.element,
                        "bel": round_sig(r.bel),
                        "pl": round_sig(r.pl),
                        "betp": r.betp.map(round_sig),
                    })
                })
                .collect();
            let mut out =
                serde_json::to_string_pretty(&serde_json::json!({ "elements": items }))
                    .expect("transform serializes");
            out.push('\n');
            out
        }
    })
}

fn parse_candidates(
    selector: &str,
    frame: &OrderedFrame,
) -> Result<Vec<OrderedElement>, CliError> {
    match selector {
        "singletons" => Ok((1..=frame.len())
            .map(|i| frame.singleton(i).expect("ordinal in range"))
            .collect()),
        "all" => Ok(frame.elements().filter(|e| !e.is_empty()).collect()),
        list => {
            let mut out = Vec::new();
            for name in list.split(',') {
                let e: OrderedElement = name.trim().parse().map_err(CliError::Core)?;
                frame.check_element(&e).map_err(CliError::Core)?;
                if e.is_empty() {
                    return Err(CliError::Usage(
                        "the empty set cannot be a decision candidate".to_string(),
                    ));
                }
                out.push(e);
            }
            Ok(out)
        }
    }
}

fn run_decide(
    mass: &MassFunction,
    criterion: CriterionArg,
    candidates: &str,
    metric: &MetricOpts,
    format: Format,
) -> Result<String, CliError> {
    let frame = mass.frame();
    let (decision, names, scores, criterion_name) = match criterion {
        CriterionArg::Dist => {
            let candidates = parse_candidates(candidates, frame)?;
            let matrix = metric.matrix(frame)?;
            let (choice, scores) = decide_distance_scored(mass, &candidates, &matrix)?;
            let names: Vec<String> = candidates.iter().map(|e| e.to_string()).collect();
            (choice.to_string(), names, scores, "dist")
        }
        pointwise => {
            let (crit, name) = match pointwise {
                CriterionArg::Bel => (PointwiseCriterion::Bel, "bel"),
                CriterionArg::Pl => (PointwiseCriterion::Pl, "pl"),
                CriterionArg::Betp => (PointwiseCriterion::BetP, "betp"),
                CriterionArg::Dist => unreachable!(),
            };
            let choice = ordbel::decide_pointwise(mass, crit)?;
            let scores = pointwise_scores(mass, crit)?;
            let names: Vec<String> = (1..=frame.len()).map(|i| format!("w{i}")).collect();
            (format!("w{choice}"), names, scores, name)
        }
    };
    Ok(match format {
        Format::Human => {
            let mut out = format!("decision: {decision}\n");
            let mut rows = vec![vec!["element".to_string(), "score".to_string()]];
            for (name, score) in names.iter().zip(&scores) {
                rows.push(vec![name.clone(), fmt_sig(*score)]);
            }
            out.push_str(&table(&rows));
            out
        }
        Format::Csv => {
            let mut out = csv_line(&["element".into(), "score".into(), "chosen".into()]);
            for (name, score) in names.iter().zip(&scores) {
                out.push_str(&csv_line(&[
                    name.clone(),
                    fmt_sig(*score),
                    (name == &decision).to_string(),
                ]));
            }
            out
        }
        Format::Json => {
            let items: Vec<serde_json::Value> = names
                .iter()
                .zip(&scores)
                .map(|(name, score)| {
                    serde_json::json!({ "element": name, "score": round_sig(*score) })
                })
                .collect();
            let mut out = serde_json::to_string_pretty(&serde_json::json!({
                "decision": decision,
                "criterion": criterion_name,
                "scores": items,
            }))
            .expect("decision serializes");
            out.push('\n');
            out
        }
    })
}

fn run_likert(
    file: &Path,
    rule: RuleArg,
    discount: f64,
    metric: &MetricOpts,
    format: Format,
) -> Result<String, CliError> {
    if !(0.0..1.0).contains(&discount) {
        return Err(CliError::Usage(format!(
            "--discount must lie in [0, 1) (got {discount})"
        )));
    }
    let origin = file.display().to_string();
    let doc = LikertDocument::parse(&read_text(file)?, &origin)?;
    let rule = rule.rule(metric)?;

    struct GroupResult {
        name: String,
        mass: MassFunction,
    }
    let mut results = Vec::new();
    for (k, group) in doc.groups.iter().enumerate() {
        let name = group
            .name
            .clone()
            .unwrap_or_else(|| format!("group{}", k + 1));
        let respondents = doc.group_masses(group, discount, &origin)?;
        if respondents.is_empty() {
            return Err(CliError::Usage(format!("group {name:?} has no responses")));
        }
        // Tuple-wise rules enumerate every focal combination; discounted
        // respondents have two focal elements each.
        if rule == RuleId::OrderedDuboisPrade && discount > 0.0 && respondents.len() > 20 {
            return Err(CliError::Usage(format!(
                "group {name:?}: the tuple-wise rule over {} discounted respondents is \
                 intractable; drop --discount or pick a foldable rule",
                respondents.len()
            )));
        }
        let fused = if respondents.len() == 1 {
            respondents.into_iter().next().expect("one respondent")
        } else {
            rule.apply(&respondents)?
        };
        results.push(GroupResult { name, mass: fused });
    }

    Ok(match format {
        Format::Json => {
            let items: Vec<serde_json::Value> = results
                .iter()
                .map(|r| {
                    serde_json::json!({
                        "group": r.name,
                        "mass": MassDocument::from_mass(&r.mass),
                    })
                })
                .collect();
            let mut out = serde_json::to_string_pretty(&serde_json::Value::Array(items))
                .expect("groups serialize");
            out.push('\n');
            out
        }
        Format::Csv => {
            let mut out = csv_line(&["group".into(), "focal".into(), "mass".into()]);
            for r in &results {
                for (e, v) in r.mass.focal() {
                    out.push_str(&csv_line(&[r.name.clone(), e.to_string(), fmt_sig(v)]));
                }
            }
            out
        }
        Format::Human => {
            let mut out = String::new();
            for (k, r) in results.iter().enumerate() {
                if k > 0 {
                    out.push('\n');
                }
                out.push_str(&format!("group: {}\n", r.name));
                out.push_str(&render_mass(&r.mass, Format::Human));
            }
            out
        }
    })
}
