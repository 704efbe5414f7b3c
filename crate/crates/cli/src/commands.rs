use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use biface::bigraph::{apply_manifest, generate_coin_toss, load_edge_list};
use biface::eval::{self, BetaGrid, EvaluationConfig, SirConfig, MIN_REPETITIONS};
use biface::{BipartiteGraph, Denominator, EdgeListFormat, Measure, MeasureOptions, NodeType};

use crate::config::ConfigFile;
use crate::{
    BenchArgs, DenominatorMode, EvaluateArgs, GenerateArgs, GraphArgs, ListFormat, MeasureName, OutputFormat, RankArgs,
    UsageError,
};

const SEED_ENV: &str = "BIFACE_SEED";

pub fn rank(args: RankArgs, cfg: &ConfigFile) -> Result<()> {
    let measures = resolve_measures(args.measures.measure, cfg)?;
    let opts = resolve_options(args.measures.denominator, cfg)?;
    let out_dir = cfg.pick(args.output, "output")?.unwrap_or_else(|| PathBuf::from("."));
    let format = cfg.pick(args.output_format, "output-format")?.unwrap_or(OutputFormat::Json);
    let g = load_graph(args.graph, cfg)?;

    fs::create_dir_all(&out_dir).with_context(|| format!("cannot create {}", out_dir.display()))?;
    for m in measures {
        log::info!("computing {m}");
        let (s1, s2) = m.compute(&g, &opts).with_context(|| format!("computing {m}"))?;
        for (scores, ty) in [(s1, NodeType::Type1), (s2, NodeType::Type2)] {
            let path = out_dir.join(format!("{}_{}.{}", m.name(), ty.as_str(), extension(format)));
            let mut w = create(&path)?;
            match format {
                OutputFormat::Json => {
                    serde_json::to_writer_pretty(&mut w, &scores.to_json(&g)?)?;
                    writeln!(w)?;
                }
                OutputFormat::Csv => scores.write_csv(&g, &mut w)?,
            }
            w.flush()?;
        }
    }
    Ok(())
}

pub fn evaluate(args: EvaluateArgs, cfg: &ConfigFile) -> Result<()> {
    let measures = resolve_measures(args.measures.measure, cfg)?;
    let defaults = EvaluationConfig::default();
    let betas = BetaGrid {
        start: cfg.pick(args.beta_start, "beta-start")?.unwrap_or(defaults.betas.start),
        stop: cfg.pick(args.beta_stop, "beta-stop")?.unwrap_or(defaults.betas.stop),
        step: cfg.pick(args.beta_step, "beta-step")?.unwrap_or(defaults.betas.step),
    };
    let eval_cfg = EvaluationConfig {
        betas,
        horizon: cfg.pick(args.horizon, "horizon")?.unwrap_or(defaults.horizon),
        runs: cfg.pick(args.runs, "runs")?.unwrap_or(defaults.runs),
        rng_seed: resolve_seed(args.seed, cfg)?,
        options: resolve_options(args.measures.denominator, cfg)?,
        timing_repetitions: cfg.pick(args.timing_repetitions, "timing-repetitions")?,
    };
    let grid = betas.values().map_err(|e| UsageError(e.to_string()))?;
    SirConfig { beta: grid[0], horizon: eval_cfg.horizon, runs: eval_cfg.runs, rng_seed: eval_cfg.rng_seed }
        .validate()
        .map_err(|e| UsageError(e.to_string()))?;
    let output = cfg.pick(args.output, "output")?;
    let format = cfg.pick(args.output_format, "output-format")?.unwrap_or(OutputFormat::Json);
    let g = load_graph(args.graph, cfg)?;

    let rows = eval::evaluate(&g, &measures, &eval_cfg)?;
    write_rows(&rows, output.as_deref(), format)
}

pub fn bench(args: BenchArgs, cfg: &ConfigFile) -> Result<()> {
    let measures = resolve_measures(args.measures.measure, cfg)?;
    let opts = resolve_options(args.measures.denominator, cfg)?;
    let reps = cfg.pick(args.repetitions, "repetitions")?.unwrap_or(MIN_REPETITIONS);
    let threads = cfg.pick(args.threads, "threads")?;
    if threads == Some(0) {
        return Err(UsageError("threads must be at least 1".into()).into());
    }
    let output = cfg.pick(args.output, "output")?;
    let format = cfg.pick(args.output_format, "output-format")?.unwrap_or(OutputFormat::Json);
    let g = load_graph(args.graph, cfg)?;

    let rows = measures
        .iter()
        .map(|&m| eval::timing_harness(&g, m, reps, threads, &opts).with_context(|| format!("timing {m}")))
        .collect::<Result<Vec<_>>>()?;
    write_rows(&rows, output.as_deref(), format)
}

pub fn generate(args: GenerateArgs, cfg: &ConfigFile) -> Result<()> {
    let seed = resolve_seed(args.seed, cfg)?;
    let output = cfg.pick(args.output, "output")?.ok_or_else(|| UsageError("generate needs --output".into()))?;
    let format = cfg.pick(args.format, "format")?.map_or_else(|| guess_format(&output), list_format);
    let manifest = cfg.pick(args.manifest, "manifest")?;
    let g = generate_coin_toss(args.n1, args.n2, args.p, seed).map_err(|e| UsageError(e.to_string()))?;

    let mut w = create(&output)?;
    g.write_edge_list(&mut w, format)?;
    w.flush()?;
    match manifest {
        Some(path) => {
            let mut w = create(&path)?;
            g.write_manifest(&mut w)?;
            w.flush()?;
        }
        None => {
            let isolated = (0..g.n1())
                .map(biface::NodeId::type1)
                .chain((0..g.n2()).map(biface::NodeId::type2))
                .filter(|&n| g.degree(n) == 0)
                .count();
            if isolated > 0 {
                log::warn!("{isolated} isolated nodes are not in the edge list; pass --manifest to keep them");
            }
        }
    }
    Ok(())
}

pub fn stats(args: GraphArgs, cfg: &ConfigFile) -> Result<()> {
    let g = load_graph(args, cfg)?;
    let stdout = io::stdout();
    let mut w = stdout.lock();
    serde_json::to_writer_pretty(&mut w, &g.stats())?;
    writeln!(w)?;
    Ok(())
}

fn resolve_measures(flag: Vec<MeasureName>, cfg: &ConfigFile) -> Result<Vec<Measure>, UsageError> {
    let names = cfg.pick_list(flag, "measure")?;
    if names.is_empty() {
        return Err(UsageError("no measure given; use --measure <name> or --measure all".into()));
    }
    let mut measures = Vec::new();
    for name in names {
        let expanded = match name {
            MeasureName::All => Measure::ALL.to_vec(),
            MeasureName::One(m) => vec![m],
        };
        for m in expanded {
            if !measures.contains(&m) {
                measures.push(m);
            }
        }
    }
    Ok(measures)
}

fn resolve_options(flag: Option<DenominatorMode>, cfg: &ConfigFile) -> Result<MeasureOptions, UsageError> {
    let denominator = match cfg.pick(flag, "denominator")? {
        Some(DenominatorMode::Equation) => Denominator::Equation,
        Some(DenominatorMode::Algorithm) | None => Denominator::Algorithm,
    };
    Ok(MeasureOptions { denominator, ..MeasureOptions::default() })
}

fn resolve_seed(flag: Option<u64>, cfg: &ConfigFile) -> Result<u64, UsageError> {
    if let Some(seed) = cfg.pick(flag, "seed")? {
        return Ok(seed);
    }
    match std::env::var(SEED_ENV) {
        Ok(v) => v.trim().parse().map_err(|e| UsageError(format!("{SEED_ENV}={v:?}: {e}"))),
        Err(_) => Ok(0),
    }
}

fn load_graph(args: GraphArgs, cfg: &ConfigFile) -> Result<BipartiteGraph> {
    let input =
        cfg.pick(args.input, "input")?.ok_or_else(|| UsageError("no input graph; use --input <FILE>".into()))?;
    let format = cfg.pick(args.format, "format")?.map_or_else(|| guess_format(&input), list_format);
    let file = File::open(&input).with_context(|| format!("cannot open {}", input.display()))?;
    let mut g =
        load_edge_list(io::BufReader::new(file), format).with_context(|| format!("reading {}", input.display()))?;
    if let Some(path) = cfg.pick(args.manifest, "manifest")? {
        let file = File::open(&path).with_context(|| format!("cannot open {}", path.display()))?;
        g = apply_manifest(&g, io::BufReader::new(file)).with_context(|| format!("reading {}", path.display()))?;
    }
    log::info!("loaded {} + {} nodes, {} edges", g.n1(), g.n2(), g.n_edges());
    Ok(g)
}

fn list_format(f: ListFormat) -> EdgeListFormat {
    match f {
        ListFormat::Tsv => EdgeListFormat::Tsv,
        ListFormat::Csv => EdgeListFormat::Csv,
    }
}

fn guess_format(path: &Path) -> EdgeListFormat {
    match path.extension().and_then(|e| e.to_str()) {
        Some(ext) if ext.eq_ignore_ascii_case("csv") => EdgeListFormat::Csv,
        _ => EdgeListFormat::Tsv,
    }
}

fn extension(f: OutputFormat) -> &'static str {
    match f {
        OutputFormat::Json => "json",
        OutputFormat::Csv => "csv",
    }
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    let file = File::create(path).with_context(|| format!("cannot create {}", path.display()))?;
    Ok(BufWriter::new(file))
}

fn write_rows<T: serde::Serialize>(rows: &[T], output: Option<&Path>, format: OutputFormat) -> Result<()> {
    let mut w: Box<dyn Write> = match output {
        Some(path) => Box::new(create(path)?),
        None => Box::new(io::stdout().lock()),
    };
    match format {
        OutputFormat::Json => eval::write_json(rows, &mut w)?,
        OutputFormat::Csv => eval::write_csv(rows, &mut w)?,
    }
    w.flush()?;
    Ok(())
}
