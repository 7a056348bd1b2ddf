use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use adrank::cascade::{run_cascade, CascadeOptions, SelectionScope, TermSource};
use adrank::config::{parse_grid, Config};
use adrank::corpus::{
    build_index, extract_distribution, load_index, read_documents, read_queries, read_values, save_index,
    DistributionSource, InvertedIndex, Property, QueryRecord, TokenizerConfig,
};
use adrank::distributions::{FittedModel, Sample};
use adrank::empirics::{eccdf, log_binned_histogram, loglog_exponent_estimate, ols_fit, raw_histogram, SubsampleMethod};
use adrank::evaluation::{cv_tune, evaluate_run, paired_t_test, parse_qrels, Metric, MetricReport};
use adrank::ranking::{parse_run, rank, write_run, Randomness, RankingConfig};
use adrank::selection::{build_vuong_table, select_best, SelectionOptions, VuongTable};
use adrank::weighting::{
    classify_from_list, classify_terms, read_term_list, term_weights_from_stats, weights_tsv, write_term_list,
};
use adrank::{Error, Result};

use super::{
    CascadeArgs, ClassifyArgs, Cli, Command, EvalArgs, FitArgs, IngestArgs, PlotArgs, RankArgs, SourceArgs, StatsArgs,
    TuneArgs,
};

pub fn run(cli: Cli) -> Result<()> {
    let mut cfg = match &cli.config {
        Some(path) => Config::load(path)?,
        None => Config::default(),
    };
    for kv in &cli.overrides {
        let (k, v) = kv.split_once('=').ok_or_else(|| Error::Usage(format!("--set expects KEY=VALUE, got '{kv}'")))?;
        cfg.set(k, v)?;
    }
    if let Some(seed) = cli.seed {
        cfg.seed = seed;
    }
    match cli.command {
        Command::Fit(a) => fit(a, cfg),
        Command::Plotdata(a) => plotdata(a, cfg),
        Command::Ingest(a) => ingest(a, cfg),
        Command::Stats(a) => stats(a, cfg),
        Command::Classify(a) => classify(a, cfg),
        Command::Cascade(a) => cascade(a, cfg),
        Command::Rank(a) => rank_cmd(a, cfg),
        Command::Eval(a) => eval(a, cfg),
        Command::Tune(a) => tune(a, cfg),
    }
}

fn set_opt<T: ToString>(cfg: &mut Config, key: &str, v: &Option<T>) -> Result<()> {
    if let Some(v) = v {
        cfg.set(key, &v.to_string())?;
    }
    Ok(())
}

/// Logs the resolved configuration to stderr.
fn log_config(cfg: &Config) {
    let mut text = String::from("# resolved configuration\n");
    for line in cfg.resolved().lines() {
        let _ = writeln!(text, "#   {line}");
    }
    eprint!("{text}");
}

/// Writes the whole text at once (through a temporary file) or prints it.
fn emit(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => {
            let tmp = p.with_extension("partial");
            fs::write(&tmp, text)?;
            fs::rename(&tmp, p)?;
        }
        None => print!("{text}"),
    }
    Ok(())
}

fn tokenizer(cfg: &Config) -> Result<TokenizerConfig> {
    match &cfg.stopwords {
        None => Ok(TokenizerConfig::default()),
        Some(p) => Ok(TokenizerConfig::with_stopwords(read_term_list(p)?)),
    }
}

fn open_index(path: &Path) -> Result<InvertedIndex> {
    if !path.exists() {
        return Err(Error::NotFound(format!("index {}", path.display())));
    }
    load_index(path)
}

fn property(p: &Option<String>) -> Result<Property> {
    p.as_deref().ok_or_else(|| Error::Usage("--property is required with --index or --queries".into()))?.parse()
}

fn load_sample(src: &SourceArgs, cfg: &Config) -> Result<Sample> {
    match (&src.input, &src.index, &src.queries) {
        (Some(input), _, _) => read_values(input),
        (None, Some(index), _) => extract_distribution(DistributionSource::Index(&open_index(index)?), property(&src.property)?),
        (None, None, Some(q)) => {
            let queries = read_queries(q, &tokenizer(cfg)?)?;
            extract_distribution(DistributionSource::QueryLog(&queries), property(&src.property)?)
        }
        _ => Err(Error::Usage("one of --input, --index or --queries is required".into())),
    }
}

fn selection_options(cfg: &Config) -> SelectionOptions {
    let mut opts = SelectionOptions { alpha: cfg.alpha, criterion: cfg.criterion, goodness_of_fit: cfg.goodness_of_fit, ..Default::default() };
    opts.fit.seed = cfg.seed;
    opts
}

fn describe(fit: &FittedModel) -> String {
    let params: Vec<String> =
        fit.model.param_names().iter().zip(fit.params.values()).map(|(n, v)| format!("{n}={v}")).collect();
    format!("{} ({})", fit.model.name(), params.join(", "))
}

fn summary(table: &VuongTable) -> String {
    let sel = select_best(table);
    let best = table.report(sel.overall).expect("overall winner has a report");
    let mut line = format!("best overall: {}; wins {}", describe(&best.fit), best.wins);
    match sel.discrete {
        Some(d) => {
            let r = table.report(d).expect("discrete winner has a report");
            let _ = write!(line, "; best discrete: {}; wins {}", describe(&r.fit), r.wins);
        }
        None => line.push_str("; best discrete: none"),
    }
    let _ = write!(line, "; criterion minimiser: {}", sel.aicc_best.name());
    line.push('\n');
    line
}

fn report_failures(table: &VuongTable) {
    for f in &table.failures {
        eprintln!("# fit failed: {}: {}", f.model.name(), f.reason);
    }
}

fn fit(a: FitArgs, mut cfg: Config) -> Result<()> {
    set_opt(&mut cfg, "models", &a.models)?;
    set_opt(&mut cfg, "alpha", &a.alpha)?;
    set_opt(&mut cfg, "criterion", &a.criterion)?;
    log_config(&cfg);
    let sample = load_sample(&a.source, &cfg)?;
    let table = match build_vuong_table(&sample, &cfg.models, &selection_options(&cfg)) {
        Ok(t) => t,
        Err(e) => {
            // With every fit failing, surface the first model's own error.
            if let Some(&m) = cfg.models.first() {
                adrank::distributions::mle_fit(m, &sample, &selection_options(&cfg).fit)?;
            }
            return Err(e);
        }
    };
    report_failures(&table);
    let tsv = table.to_tsv();
    let line = summary(&table);
    if let Some(p) = &a.jsonl {
        emit(Some(p), &table.to_jsonl())?;
    }
    match &a.out {
        Some(p) => {
            emit(Some(p), &tsv)?;
            print!("{line}");
        }
        None => print!("{tsv}{line}"),
    }
    Ok(())
}

fn plotdata(a: PlotArgs, cfg: Config) -> Result<()> {
    log_config(&cfg);
    let sample = read_values(&a.input)?;
    let series = match a.method.to_ascii_lowercase().as_str() {
        "gm1" => raw_histogram(&sample)?,
        "gm2" => eccdf(&sample),
        "gm3" => {
            let k = match a.bins {
                Some(k) => k,
                None => {
                    let c = a.base.max(2) as f64;
                    let mut k = 0u32;
                    while c.powi(k as i32 + 1) - 1.0 < sample.max() {
                        k += 1;
                    }
                    k
                }
            };
            log_binned_histogram(&sample, a.base, k)?
        }
        other => return Err(Error::Usage(format!("unknown graphical method '{other}' (gm1, gm2, gm3)"))),
    };
    let mut text = series.to_tsv(a.gnuplot);
    if a.fitline {
        let logs: Vec<(f64, f64)> =
            series.points.iter().filter(|(x, y)| *x > 0.0 && *y > 0.0).map(|&(x, y)| (x.ln(), y.ln())).collect();
        let fit = ols_fit(&logs)?;
        let alpha = loglog_exponent_estimate(&series, a.correction)?;
        let _ = writeln!(text, "# fit: ln y = {} + {} ln x; r2 = {}; alpha = {}", fit.intercept, fit.slope, fit.r_squared, alpha);
    }
    emit(a.out.as_deref(), &text)
}

fn ingest(a: IngestArgs, cfg: Config) -> Result<()> {
    log_config(&cfg);
    let docs = read_documents(&a.docs)?;
    let index = build_index(docs, &tokenizer(&cfg)?)?;
    save_index(&index, &a.out)?;
    print!("{}", stats_text(&index));
    Ok(())
}

fn stats_text(index: &InvertedIndex) -> String {
    let s = index.stats();
    format!(
        "num_docs\t{}\ntotal_terms\t{}\navg_doc_len\t{}\nvocab_size\t{}\n",
        s.num_docs, s.total_terms, s.avg_doc_len, s.vocab_size
    )
}

fn sample_text(sample: &Sample) -> String {
    let mut out = String::new();
    for v in sample.values() {
        let _ = writeln!(out, "{v}");
    }
    out
}

fn stats(a: StatsArgs, cfg: Config) -> Result<()> {
    log_config(&cfg);
    let index = a.index.as_deref().map(open_index).transpose()?;
    let queries = a.queries.as_deref().map(|q| read_queries(q, &tokenizer(&cfg)?)).transpose()?;
    if index.is_none() && queries.is_none() {
        return Err(Error::Usage("stats needs --index or --queries".into()));
    }
    let mut text = String::new();
    if let Some(idx) = &index {
        text.push_str(&stats_text(idx));
    }
    if let Some(q) = &queries {
        let _ = writeln!(text, "num_queries\t{}", q.len());
    }
    if let Some(p) = &a.weights {
        let idx = index.as_ref().ok_or_else(|| Error::Usage("--weights needs --index".into()))?;
        let n = idx.stats().num_docs;
        let w: Vec<_> = idx.terms().iter().map(|e| term_weights_from_stats(&e.stats, n)).collect();
        emit(Some(p), &weights_tsv(&w))?;
    }
    if let Some(prop) = &a.property {
        let prop: Property = prop.parse()?;
        let sample = match (prop, &index, &queries) {
            (Property::TermFrequency | Property::DocumentLength, Some(idx), _) => extract_distribution(DistributionSource::Index(idx), prop)?,
            (Property::QueryFrequency | Property::QueryLength, _, Some(q)) => extract_distribution(DistributionSource::QueryLog(q), prop)?,
            _ => return Err(Error::Usage("property needs the matching --index or --queries input".into())),
        };
        emit(a.out.as_deref(), &sample_text(&sample))?;
        eprint!("{text}");
        return Ok(());
    }
    emit(a.out.as_deref(), &text)
}

fn term_list_text(terms: &[String]) -> String {
    let mut s = terms.join("\n");
    if !terms.is_empty() {
        s.push('\n');
    }
    s
}

fn classify(a: ClassifyArgs, mut cfg: Config) -> Result<()> {
    set_opt(&mut cfg, "rule", &a.rule)?;
    log_config(&cfg);
    let index = open_index(&a.index)?;
    let class = match &a.terms {
        Some(p) => classify_from_list(&index, &read_term_list(p)?),
        None => classify_terms(&index, &cfg.rule),
    };
    if let Some(p) = &a.informative_out {
        write_term_list(p, &class.informative)?;
    }
    match &a.non_informative_out {
        Some(p) => write_term_list(p, &class.non_informative)?,
        None => print!("{}", term_list_text(&class.non_informative)),
    }
    eprintln!("# informative {}; non-informative {}", class.informative.len(), class.non_informative.len());
    Ok(())
}

fn cascade(a: CascadeArgs, mut cfg: Config) -> Result<()> {
    if let Some(f) = a.fraction {
        if !(f > 0.0 && f <= 1.0) {
            return Err(Error::Usage(format!("--fraction must lie in (0, 1], got {f}")));
        }
    }
    set_opt(&mut cfg, "fraction", &a.fraction)?;
    set_opt(&mut cfg, "rule", &a.rule)?;
    set_opt(&mut cfg, "models", &a.models)?;
    log_config(&cfg);
    let scope = match a.scope.as_str() {
        "discrete" => SelectionScope::Discrete,
        "overall" => SelectionScope::Overall,
        other => return Err(Error::Usage(format!("--scope must be discrete or overall, got '{other}'"))),
    };
    let method = match a.method.as_str() {
        "simple" => SubsampleMethod::Simple,
        "systematic" => SubsampleMethod::Systematic,
        other => return Err(Error::Usage(format!("--method must be simple or systematic, got '{other}'"))),
    };
    let index = open_index(&a.index)?;
    let terms = match &a.terms {
        Some(p) => TermSource::List(read_term_list(p)?),
        None => TermSource::Rule(cfg.rule.clone()),
    };
    let opts = CascadeOptions {
        terms,
        fraction: cfg.fraction,
        method,
        models: cfg.models.clone(),
        selection: selection_options(&cfg),
        scope,
        seed: cfg.seed,
    };
    let r = run_cascade(&index, &opts)?;
    report_failures(&r.table);
    if let Some(p) = &a.out {
        emit(Some(p), &r.table.to_tsv())?;
    }
    if let Some(p) = &a.terms_out {
        write_term_list(p, &r.classification.non_informative)?;
    }
    let mut text = String::new();
    let _ = writeln!(text, "non_informative_terms\t{}", r.population);
    let _ = writeln!(text, "subsample\t{}", r.subsample_size);
    let _ = writeln!(text, "chosen\t{}", describe(&r.chosen));
    let _ = writeln!(text, "wins\t{}", r.table.wins(r.chosen.model).unwrap_or(0));
    let _ = writeln!(text, "rank_spec\t{}", r.ranking_spec.as_deref().unwrap_or("none"));
    print!("{text}");
    Ok(())
}

fn ranking_config(spec: &str, cfg: &Config) -> Result<RankingConfig> {
    let rc = RankingConfig::parse_spec(spec)?;
    if rc.randomness == Randomness::LMDir {
        return rc.with_mu(cfg.mu);
    }
    rc.with_c(cfg.c)?.with_pl_xmin(cfg.pl_xmin)
}

fn load_queries(path: &Path, cfg: &Config) -> Result<Vec<QueryRecord>> {
    let q = read_queries(path, &tokenizer(cfg)?)?;
    if q.is_empty() {
        return Err(Error::Empty(format!("no queries in {}", path.display())));
    }
    Ok(q)
}

fn rank_cmd(a: RankArgs, mut cfg: Config) -> Result<()> {
    set_opt(&mut cfg, "k", &a.k)?;
    set_opt(&mut cfg, "c", &a.c)?;
    set_opt(&mut cfg, "mu", &a.mu)?;
    set_opt(&mut cfg, "pl_xmin", &a.pl_xmin)?;
    set_opt(&mut cfg, "run_tag", &a.tag)?;
    log_config(&cfg);
    let rc = ranking_config(&a.model, &cfg)?;
    eprintln!("# model {rc}");
    let index = open_index(&a.index)?;
    let queries = load_queries(&a.queries, &cfg)?;
    let mut lists = Vec::with_capacity(queries.len());
    for q in &queries {
        let list = rank(q, &index, &rc, cfg.k)?;
        for w in &list.warnings {
            eprintln!("# query {}: {w}", q.query_id);
        }
        lists.push(list);
    }
    emit(a.out.as_deref(), &write_run(&lists, &cfg.run_tag))
}

fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::NotFound(format!("{}: {e}", path.display())))
}

fn eval(a: EvalArgs, cfg: Config) -> Result<()> {
    log_config(&cfg);
    let metrics: Vec<Metric> = match &a.metrics {
        Some(list) => list.split(',').map(|m| m.trim().parse()).collect::<Result<_>>()?,
        None => Metric::ALL.to_vec(),
    };
    let qrels = parse_qrels(&read_text(&a.qrels)?)?;
    let run = parse_run(&read_text(&a.run)?)?;
    let report = evaluate_run(&run, &qrels);
    for w in &report.warnings {
        eprintln!("# warning: {w}");
    }
    if report.per_query.is_empty() {
        return Err(Error::Empty("run and qrels share no queries".into()));
    }
    let mut text = String::new();
    for &m in &metrics {
        let _ = writeln!(text, "{}\t{m}\t{:.6}", a.name, report.mean(m));
    }
    if let Some(base) = &a.baseline_run {
        let baseline = evaluate_run(&parse_run(&read_text(base)?)?, &qrels);
        text.push_str(&t_tests(&report, &baseline, &metrics, cfg.alpha));
    }
    if let Some(p) = &a.per_query {
        emit(Some(p), &report.per_query_tsv())?;
    }
    emit(a.out.as_deref(), &text)
}

fn t_tests(run: &MetricReport, base: &MetricReport, metrics: &[Metric], alpha: f64) -> String {
    let shared: Vec<&String> = run.per_query.keys().filter(|q| base.per_query.contains_key(*q)).collect();
    let mut text = String::new();
    for &m in metrics {
        let a: Vec<f64> = shared.iter().map(|q| run.per_query[*q][&m]).collect();
        let b: Vec<f64> = shared.iter().map(|q| base.per_query[*q][&m]).collect();
        match paired_t_test(&a, &b) {
            Ok(t) => {
                let flag = if t.significant(alpha) { "significant" } else { "not_significant" };
                let _ = writeln!(text, "ttest\t{m}\tt={:.6}\tp={:.6}\t{flag}", t.t, t.p);
            }
            Err(e) => {
                eprintln!("# t-test on {m}: {e}");
                let _ = writeln!(text, "ttest\t{m}\tdegenerate");
            }
        }
    }
    text
}

fn tune(a: TuneArgs, mut cfg: Config) -> Result<()> {
    set_opt(&mut cfg, "folds", &a.folds)?;
    set_opt(&mut cfg, "objective", &a.objective)?;
    set_opt(&mut cfg, "k", &a.k)?;
    let base = ranking_config(&a.model, &cfg)?;
    let param = a.param.clone().unwrap_or_else(|| if base.randomness == Randomness::LMDir { "mu".into() } else { "c".into() });
    let grid = match (&a.grid, param.as_str()) {
        (Some(g), _) => parse_grid("grid", g)?,
        (None, "c") => cfg.c_grid.clone(),
        (None, "mu") => cfg.mu_grid.clone(),
        (None, other) => return Err(Error::Usage(format!("--param must be c or mu, got '{other}'"))),
    };
    log_config(&cfg);
    let family: Box<dyn Fn(f64) -> Result<RankingConfig>> = match param.as_str() {
        "c" => Box::new(move |v| base.clone().with_c(v)),
        "mu" => Box::new(move |v| base.clone().with_mu(v)),
        other => return Err(Error::Usage(format!("--param must be c or mu, got '{other}'"))),
    };
    let index = open_index(&a.index)?;
    let queries = load_queries(&a.queries, &cfg)?;
    let qrels = parse_qrels(&read_text(&a.qrels)?)?;
    let r = cv_tune(&queries, &qrels, &index, &*family, &grid, cfg.folds, cfg.objective, cfg.k)?;
    let mut text = String::new();
    for (i, f) in r.folds.iter().enumerate() {
        let _ = writeln!(
            text,
            "fold\t{}\t{param}={}\ttrain_{}={:.6}\ttest_{}={:.6}\tqueries={}",
            i + 1,
            f.best_value,
            r.objective,
            f.train_objective,
            r.objective,
            f.test_means[&r.objective],
            f.test_queries.len()
        );
    }
    for (m, v) in &r.mean_test {
        let _ = writeln!(text, "mean_test\t{m}\t{v:.6}");
    }
    emit(a.out.as_deref(), &text)
}

