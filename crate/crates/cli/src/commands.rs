//! Command dispatch.

use std::fs::File;
use std::io::BufReader;
use std::path::Path;
use std::process::ExitCode;

use searchtopo::anomaly::{self, PoolMode, ReferenceSpec};
use searchtopo::checks::{run_checks, CheckConfig, CheckReport};
use searchtopo::corpus::{Corpus, InvertedIndex};
use searchtopo::gen::random_corpus;
use searchtopo::graph::DataDirectedGraph;
use searchtopo::primal;
use searchtopo::relation::{ChainMode, ContainmentRelation};
use searchtopo::search::{parse_query, Query, Searcher};
use searchtopo::topology;
use searchtopo::{fixtures, Error};

use crate::reports::{self, emit};
use crate::{Command, Format, GraphFormat, Pool, Side};

type CliResult = Result<ExitCode, Box<dyn std::error::Error>>;

/// The topology ground cap; SEARCHTOPO_CAP overrides the default.
fn ground_cap() -> usize {
    std::env::var("SEARCHTOPO_CAP")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(topology::DEFAULT_GROUND_CAP)
}

fn load_corpus(path: &Path) -> Result<Corpus, Box<dyn std::error::Error>> {
    let file = File::open(path)
        .map_err(|e| format!("cannot open corpus {}: {e}", path.display()))?;
    Ok(Corpus::from_jsonl(BufReader::new(file))?)
}

fn chain_mode(strict: bool) -> ChainMode {
    if strict {
        ChainMode::Strict
    } else {
        ChainMode::NonStrict
    }
}

pub fn run(command: Command) -> CliResult {
    match command {
        Command::Ingest { corpus, format } => ingest(&corpus.corpus, format),
        Command::Search {
            corpus,
            query,
            format,
        } => search(&corpus.corpus, &query, format),
        Command::Relate {
            corpus,
            words,
            strict,
            m,
        } => relate(&corpus.corpus, &words, strict, m),
        Command::Topology {
            corpus,
            words,
            side,
            m,
            strict,
            checks,
        } => topology_cmd(&corpus.corpus, &words, side, m, strict, checks),
        Command::Graph {
            corpus,
            words,
            dot,
            reduce,
            atoms,
            distance,
            check_total,
            format,
        } => graph_cmd(
            &corpus.corpus,
            &words,
            dot,
            reduce,
            atoms,
            distance,
            check_total,
            format,
        ),
        Command::Anomaly {
            corpus,
            keywords,
            delta,
            max_iter,
            epsilon,
            pool,
            format,
        } => anomaly_cmd(&corpus.corpus, &keywords, delta, max_iter, epsilon, pool, format),
        Command::Primal {
            corpus,
            seed,
            cap,
            union,
        } => primal_cmd(&corpus.corpus, &seed, cap, union),
        Command::Check {
            corpus,
            random,
            words,
            docs,
            trials,
            seed,
        } => check_cmd(corpus.as_deref(), random, words, docs, trials, seed),
        Command::Selftest => selftest(),
    }
}

fn ingest(path: &Path, format: Format) -> CliResult {
    let corpus = load_corpus(path)?;
    let index = InvertedIndex::build(&corpus);
    let empty = corpus
        .documents()
        .iter()
        .filter(|d| d.tokens.is_empty())
        .count();
    let report = reports::IngestReport {
        command: "ingest",
        seed: 0,
        documents: corpus.len(),
        vocabulary: corpus.vocabulary().len(),
        postings: index.len(),
        empty_documents: empty,
    };
    match format {
        Format::Json => emit(&report),
        Format::Text => println!(
            "{} documents, {} words, {} posting lists, {} empty documents",
            report.documents, report.vocabulary, report.postings, report.empty_documents
        ),
    }
    Ok(ExitCode::SUCCESS)
}

fn leaf_words(query: &Query, out: &mut Vec<String>) {
    match query {
        Query::Leaf(w) => out.push(w.clone()),
        Query::Vee(children) | Query::Wedge(children) => {
            for c in children {
                leaf_words(c, out);
            }
        }
    }
}

fn search(path: &Path, query_text: &str, format: Format) -> CliResult {
    let corpus = load_corpus(path)?;
    let index = InvertedIndex::build(&corpus);
    let searcher = Searcher::new(&corpus, &index);
    let query = parse_query(query_text)?;
    let space = searcher.eval(&query);

    let mut leaves = Vec::new();
    leaf_words(&query, &mut leaves);
    leaves.sort();
    leaves.dedup();
    let absent_words: Vec<String> = leaves
        .into_iter()
        .filter(|w| !corpus.vocabulary().contains(w))
        .collect();

    let report = reports::SearchReport {
        command: "search",
        seed: 0,
        query: query.display(),
        docs: corpus.resolve(&space),
        count: space.len(),
        absent_words,
    };
    match format {
        Format::Json => emit(&report),
        Format::Text => {
            println!("{} -> {} documents: {}", report.query, report.count, report.docs.join(", "));
            if !report.absent_words.is_empty() {
                println!("absent from vocabulary: {}", report.absent_words.join(", "));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn relate(path: &Path, words: &[String], strict: bool, m: Option<usize>) -> CliResult {
    let corpus = load_corpus(path)?;
    let index = InvertedIndex::build(&corpus);
    let searcher = Searcher::new(&corpus, &index);
    let rel = ContainmentRelation::build(&searcher, words)?;
    let mode = chain_mode(strict);

    let word = |i: usize| rel.word(i).to_string();
    let pairs = rel.pairs().map(|(x, y)| (word(x), word(y))).collect();
    let neighborhoods = (0..rel.len())
        .map(|x| reports::NeighborhoodEntry {
            word: word(x),
            after: rel.after(x).iter().map(|&i| word(i)).collect(),
            fore: rel.fore(x).iter().map(|&i| word(i)).collect(),
        })
        .collect();
    let equal_space_classes = rel
        .equal_space_classes()
        .into_iter()
        .filter(|c| c.len() > 1)
        .map(|c| c.into_iter().map(word).collect())
        .collect();

    let (steps, witnesses) = if let Some(m) = m {
        let mut steps = Vec::new();
        let mut wits = Vec::new();
        for x in 0..rel.len() {
            steps.push(reports::StepEntry {
                word: word(x),
                m_after: rel.m_after(x, m, mode)?.into_iter().map(word).collect(),
                m_fore: rel.m_fore(x, m, mode)?.into_iter().map(word).collect(),
            });
            for y in 0..rel.len() {
                let (found, witness) = rel.m_step(x, y, m, mode)?;
                if found {
                    wits.push(reports::WitnessEntry {
                        from: word(x),
                        to: word(y),
                        chain: witness.expect("found step has witness").words,
                    });
                }
            }
        }
        (Some(steps), Some(wits))
    } else {
        (None, None)
    };

    emit(&reports::RelateReport {
        command: "relate",
        seed: 0,
        words: rel.ground().to_vec(),
        strict,
        serial: rel.is_serial(),
        pairs,
        neighborhoods,
        equal_space_classes,
        m,
        steps,
        witnesses,
    });
    Ok(ExitCode::SUCCESS)
}

fn topology_cmd(
    path: &Path,
    words: &[String],
    side: Side,
    m: Option<usize>,
    strict: bool,
    checks: bool,
) -> CliResult {
    let corpus = load_corpus(path)?;
    let index = InvertedIndex::build(&corpus);
    let searcher = Searcher::new(&corpus, &index);
    let rel = ContainmentRelation::build(&searcher, words)?;
    let cap = ground_cap();

    let mut step_counterexamples = Vec::new();
    let (primary, secondary) = match m {
        Some(m) => {
            let st = topology::step_topologies(&rel, m, chain_mode(strict), cap)?;
            for v in st.fore_violations.iter().chain(&st.after_violations) {
                step_counterexamples
                    .push(format!("open {{{}}} -> {{{}}}", v.open.join(", "), v.computed.join(", ")));
            }
            match side {
                Side::B => (st.after_side, st.fore_side),
                Side::F => (st.fore_side, st.after_side),
            }
        }
        None => {
            let tb = topology::tau_b(&rel, cap)?;
            let tf = topology::tau_f(&rel, cap)?;
            match side {
                Side::B => (tb, tf),
                Side::F => (tf, tb),
            }
        }
    };

    let check_section = checks.then(|| {
        let tb = topology::tau_b(&rel, cap).expect("cap already verified");
        let tf = topology::tau_f(&rel, cap).expect("cap already verified");
        let union = topology::check_union_identity(&tb, &tf, &rel);
        let duality = topology::check_duality(&tb, &tf);
        let cover = topology::check_cover(&tb, &tf, &rel);
        for c in &cover.one_sided_counterexamples {
            eprintln!(
                "diagnostic: open {{{}}} != neighborhood union {{{}}}",
                c.open.join(", "),
                c.computed.join(", ")
            );
        }
        reports::TopologyChecks {
            union_identity_holds: union.holds(),
            duality_holds: duality.holds(),
            cover_asserted_hold: cover.asserted_hold(),
            one_sided_counterexamples: cover
                .one_sided_counterexamples
                .iter()
                .map(|v| format!("open {{{}}} -> {{{}}}", v.open.join(", "), v.computed.join(", ")))
                .collect(),
        }
    });

    let asserted_failed = check_section
        .as_ref()
        .is_some_and(|c| !(c.union_identity_holds && c.duality_holds && c.cover_asserted_hold));

    let opens: Vec<Vec<String>> = primary
        .opens_as_words()
        .into_iter()
        .map(|o| o.into_iter().map(str::to_string).collect())
        .collect();
    let _ = secondary;
    emit(&reports::TopologyReport {
        command: "topology",
        seed: 0,
        ground: primary.ground().to_vec(),
        side: match side {
            Side::B => 'B',
            Side::F => 'F',
        },
        m,
        strict,
        counts: reports::TopologyCounts {
            ground: primary.ground().len(),
            opens: opens.len(),
        },
        opens,
        checks: check_section,
        step_union_counterexamples: step_counterexamples,
    });
    Ok(if asserted_failed {
        ExitCode::from(2)
    } else {
        ExitCode::SUCCESS
    })
}

#[allow(clippy::too_many_arguments)]
fn graph_cmd(
    path: &Path,
    words: &[String],
    dot: Option<std::path::PathBuf>,
    reduce: bool,
    atoms: bool,
    distance: Option<Vec<String>>,
    check_total: bool,
    format: GraphFormat,
) -> CliResult {
    let corpus = load_corpus(path)?;
    let index = InvertedIndex::build(&corpus);
    let searcher = Searcher::new(&corpus, &index);
    let rel = ContainmentRelation::build(&searcher, words)?;
    let graph = DataDirectedGraph::build(&rel, words)?;

    let dot_file = match &dot {
        Some(path) => {
            std::fs::write(path, graph.export_dot(reduce))?;
            Some(path.display().to_string())
        }
        None => None,
    };

    if format == GraphFormat::Dot {
        print!("{}", graph.export_dot(reduce));
        return Ok(ExitCode::SUCCESS);
    }

    let atom_report = atoms.then(|| graph.find_atoms());
    let distance_report = match &distance {
        Some(pair) => {
            let witness = graph.distance(&pair[0], &pair[1])?;
            Some(reports::DistanceReport {
                from: pair[0].clone(),
                to: pair[1].clone(),
                reachable: witness.is_some(),
                length: witness.as_ref().map(|w| w.length),
                chain: witness.map(|w| w.chain),
            })
        }
        None => None,
    };

    let cycle = graph.find_cycle();
    emit(&reports::GraphReport {
        command: "graph",
        seed: 0,
        nodes: graph.nodes().to_vec(),
        edges: graph
            .edges()
            .map(|(x, y)| (x.to_string(), y.to_string()))
            .collect(),
        self_loops: graph.self_loops().map(str::to_string).collect(),
        loop_directed: graph.is_loop_directed(),
        has_cycle: cycle.is_some(),
        cycle,
        atoms: atom_report.as_ref().map(|a| a.atoms.clone()),
        reach_counts: atom_report.map(|a| a.reach_counts),
        distance: distance_report,
        incomparable_pairs: check_total.then(|| {
            let pairs = graph.incomparable_pairs();
            for (a, b) in &pairs {
                eprintln!("diagnostic: {a} and {b} are incomparable");
            }
            pairs
        }),
        dot_file,
    });
    Ok(ExitCode::SUCCESS)
}

#[allow(clippy::too_many_arguments)]
fn anomaly_cmd(
    path: &Path,
    keywords: &[String],
    delta: f64,
    max_iter: usize,
    epsilon: f64,
    pool: Pool,
    format: Format,
) -> CliResult {
    let corpus = load_corpus(path)?;
    let index = InvertedIndex::build(&corpus);
    let searcher = Searcher::new(&corpus, &index);
    let mut spec = ReferenceSpec::new(keywords.iter(), delta);
    spec.max_iterations = max_iter;
    spec.epsilon = epsilon;
    spec.pool = match pool {
        Pool::Union => PoolMode::Union,
        Pool::All => PoolMode::All,
    };
    let report = anomaly::detect(&searcher, &spec)?;
    match format {
        Format::Json => emit(&reports::AnomalyEnvelope {
            command: "anomaly",
            seed: 0,
            report,
        }),
        Format::Text => {
            for it in &report.iterations {
                println!(
                    "iteration {}: delta={:.12} neighborhood={} anomalies={}",
                    it.index,
                    it.delta,
                    it.neighborhood.len(),
                    it.anomalies.len()
                );
            }
            println!(
                "termination: {:?}; final delta {:.12}; ultimate anomalies: {}",
                report.termination,
                report.final_delta,
                report.ultimate_anomalies.join(", ")
            );
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn primal_cmd(path: &Path, seed_words: &[String], cap: u64, union: Option<Vec<String>>) -> CliResult {
    let corpus = load_corpus(path)?;
    let index = InvertedIndex::build(&corpus);
    let searcher = Searcher::new(&corpus, &index);
    let closure = primal::vee_closure(seed_words, cap)?;
    let family = primal::primal_of(&searcher, &closure);
    let axioms = primal::check_axioms(&family);

    let union_section = match union {
        Some(second) => {
            let other = primal::primal_of(&searcher, &primal::vee_closure(&second, cap)?);
            let report = primal::union_primal(&searcher, &family, &other)?;
            for missing in &report.missing_from_union {
                eprintln!("diagnostic: union family lacks closure keyword {missing}");
            }
            Some(reports::PrimalUnionSection {
                second_seed: second,
                keywords: report.family.keywords().map(str::to_string).collect(),
                union_closed: report.union_closed,
                closure_equality_holds: report.closure_equality_holds,
                missing_from_union: report.missing_from_union,
                axioms: report.axioms,
            })
        }
        None => None,
    };

    emit(&reports::PrimalReport {
        command: "primal",
        seed: 0,
        seed_words: seed_words.to_vec(),
        token_pool: closure.pool().to_vec(),
        keywords: closure.keywords().to_vec(),
        members: family
            .members()
            .iter()
            .map(|(k, s)| reports::PrimalMember {
                keyword: k.clone(),
                docs: corpus.resolve(s),
            })
            .collect(),
        axioms,
        union: union_section,
    });
    Ok(ExitCode::SUCCESS)
}

fn report_failures(report: &CheckReport, label: &str) {
    for failure in report.failures() {
        eprintln!("asserted check failed [{label}]: {} ({})", failure.name, failure.detail);
    }
    for diag in &report.diagnostics {
        for c in &diag.counterexamples {
            eprintln!("diagnostic [{label}] {}: {c}", diag.name);
        }
    }
}

fn check_cmd(
    corpus_path: Option<&Path>,
    random: bool,
    words: usize,
    docs: usize,
    trials: usize,
    seed: u64,
) -> CliResult {
    let mut reports_vec = Vec::new();
    if random {
        for trial in 0..trials {
            let trial_seed = seed.wrapping_add(trial as u64);
            let corpus = random_corpus(words, docs, trial_seed);
            let index = InvertedIndex::build(&corpus);
            let searcher = Searcher::new(&corpus, &index);
            let cfg = CheckConfig {
                seed: trial_seed,
                ..CheckConfig::default()
            };
            let report = run_checks(&searcher, &cfg)?;
            report_failures(&report, &format!("trial {trial}"));
            reports_vec.push(report);
        }
    } else {
        let path = corpus_path.ok_or_else(|| {
            Box::<dyn std::error::Error>::from("check needs --corpus FILE or --random")
        })?;
        let corpus = load_corpus(path)?;
        let index = InvertedIndex::build(&corpus);
        let searcher = Searcher::new(&corpus, &index);
        let cfg = CheckConfig {
            seed,
            ..CheckConfig::default()
        };
        let report = run_checks(&searcher, &cfg)?;
        report_failures(&report, "corpus");
        reports_vec.push(report);
    }

    let failures: usize = reports_vec
        .iter()
        .map(|r| r.failures().count())
        .sum();
    let all_passed = failures == 0;
    emit(&reports::CheckEnvelope {
        command: "check",
        seed,
        trials: reports_vec,
        all_passed,
        asserted_failures: failures,
    });
    Ok(if all_passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(2)
    })
}

fn golden_trace_passes() -> Result<bool, Error> {
    let corpus = fixtures::ml5();
    let index = InvertedIndex::build(&corpus);
    let searcher = Searcher::new(&corpus, &index);
    let spec = ReferenceSpec::new(["data", "science", "machine", "learning"], 0.4);
    let report = anomaly::detect(&searcher, &spec)?;
    let deltas: Vec<f64> = report.iterations.iter().map(|it| it.delta).collect();
    let expected = [0.4, 0.3019047619047619, 0.15476190476190477, 1.0 / 7.0];
    let deltas_ok = deltas.len() == expected.len()
        && deltas
            .iter()
            .zip(expected)
            .all(|(got, want)| (got - want).abs() < 1e-9);
    Ok(deltas_ok
        && report.ultimate_anomalies == ["1"]
        && (report.final_delta - 1.0 / 7.0).abs() < 1e-9)
}

fn selftest() -> CliResult {
    let builtin: [(&'static str, Corpus); 3] = [
        ("c3", fixtures::c3()),
        ("ml5", fixtures::ml5()),
        ("big_tree", fixtures::big_tree()),
    ];
    let mut suites = Vec::new();
    let mut all_passed = true;
    for (name, corpus) in builtin {
        let index = InvertedIndex::build(&corpus);
        let searcher = Searcher::new(&corpus, &index);
        let report = run_checks(&searcher, &CheckConfig::default())?;
        report_failures(&report, name);
        all_passed &= report.all_passed();
        suites.push(reports::SelftestEntry {
            corpus: name,
            report,
        });
    }
    let golden = golden_trace_passes()?;
    all_passed &= golden;
    emit(&reports::SelftestReport {
        command: "selftest",
        seed: 0,
        golden_trace_passed: golden,
        suites,
        all_passed,
    });
    Ok(if all_passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(2)
    })
}
