use std::fs;
use std::io::{self, BufWriter, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use commclass::formulas::{bounds_for, top_diameters_check};
use commclass::graph::{DEFAULT_CLASS_CAP, DEFAULT_WORD_CAP};
use commclass::tableau::{labelling_from_json, render_grid};
use commclass::{
    a_max, a_min, build_graph, canonical_labelling, diameter_formula, gamma, is_balanced,
    to_dot, verify_sweep, word_from_labels, Error, GraphExport, GraphOptions, Permutation,
    ReducedWords, SweepMode, SweepOptions, Word,
};

#[derive(Parser)]
#[command(name = "commclass", version, about = "Reduced words and commutation graphs of permutations")]
struct Cli {
    /// Largest word enumeration or commutation closure.
    #[arg(long, global = true, default_value_t = DEFAULT_WORD_CAP, value_parser = positive)]
    word_cap: usize,
    /// Largest number of commutation classes.
    #[arg(long, global = true, default_value_t = DEFAULT_CLASS_CAP, value_parser = positive)]
    class_cap: usize,
    /// Worker threads (default: available parallelism).
    #[arg(long, global = true, value_parser = positive)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Length, descents, inversions and 321-triples of a permutation.
    Info {
        perm: String,
        #[arg(long)]
        json: bool,
    },
    /// Stream the reduced words of a permutation in lexicographic order.
    Words {
        perm: String,
        /// Stop with exit status 3 if there are more than this many words.
        #[arg(long)]
        limit: Option<usize>,
        /// Only print a_min and a_max with their signatures.
        #[arg(long)]
        extremes: bool,
    },
    /// Canonical labelling of a reduced word on the Rothe diagram.
    Tableau {
        perm: String,
        /// Reduced word (omit with --invert).
        word: Option<String>,
        /// Also report whether the labelling is balanced.
        #[arg(long)]
        check: bool,
        /// Read a tableau JSON object (file or stdin) and print its word.
        #[arg(long, value_name = "FILE", num_args = 0..=1, default_missing_value = "-")]
        invert: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Build the commutation graph C(w).
    Graph {
        perm: String,
        #[arg(long, value_enum, default_value_t = GraphFormat::Text)]
        format: GraphFormat,
        /// Orient DOT edges from lower to higher rank.
        #[arg(long)]
        hasse: bool,
    },
    /// Diameter of C(w) by closed form, graph search, or both.
    Diameter {
        perm: String,
        #[arg(long, value_enum, default_value_t = Method::Formula)]
        method: Method,
    },
    /// Check the diameter identities over all of S_n.
    Verify {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Mode::Formula)]
        mode: Mode,
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Raise the default size limit of the chosen mode.
        #[arg(long)]
        max_n: Option<usize>,
        /// Also run the top-four diameter classification (n >= 4).
        #[arg(long)]
        top: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphFormat {
    Text,
    Json,
    Dot,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Formula,
    Bfs,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Formula,
    Full,
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be positive".into()),
        Ok(v) => Ok(v),
        Err(e) => Err(e.to_string()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        // Only fails if a global pool already exists.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
    }
    let opts = GraphOptions { word_cap: cli.word_cap, class_cap: cli.class_cap };
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let result = run(&cli.command, opts, &mut out);
    let _ = out.flush();
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn parse_perm(s: &str) -> Result<Permutation, Error> {
    s.parse()
}

fn emit(out: &mut impl Write, text: impl AsRef<str>) -> Result<(), Error> {
    out.write_all(text.as_ref().as_bytes())
        .map_err(|e| Error::OutOfRange(format!("write failed: {e}")))
}

fn join<T: ToString>(items: impl IntoIterator<Item = T>, sep: &str) -> String {
    items.into_iter().map(|t| t.to_string()).collect::<Vec<_>>().join(sep)
}

fn run(command: &Command, opts: GraphOptions, out: &mut impl Write) -> Result<(), Error> {
    match command {
        Command::Info { perm, json } => info(&parse_perm(perm)?, *json, out),
        Command::Words { perm, limit, extremes } => {
            let w = parse_perm(perm)?;
            if *extremes {
                for (name, word) in [("a_min", a_min(&w)), ("a_max", a_max(&w))] {
                    let sig = gamma(&w, &word)?;
                    emit(out, format!("{name} = {word} signature {sig}\n"))?;
                }
                return Ok(());
            }
            let cap = limit.unwrap_or(opts.word_cap).min(opts.word_cap);
            let mut words = ReducedWords::new(&w, Some(cap));
            for word in words.by_ref() {
                emit(out, format!("{word}\n"))?;
            }
            if words.truncated() {
                emit(out, format!("# truncated: more than {cap} reduced words\n"))?;
                return Err(Error::CapExceeded { kind: commclass::CapKind::Words, cap });
            }
            Ok(())
        }
        Command::Tableau { perm, word, check, invert, json } => {
            let w = parse_perm(perm)?;
            if let Some(source) = invert {
                return invert_tableau(&w, source, out);
            }
            let word = Word::parse(w.n(), word.as_deref().unwrap_or(""))?;
            let t = canonical_labelling(&w, &word)?;
            if *json {
                emit(out, format!("{}\n", t.to_json()))?;
            } else {
                emit(out, t.render())?;
                emit(out, format!("{}\n", t.to_json()))?;
            }
            if *check {
                let balanced = is_balanced(&w, &t.labelling())?;
                emit(out, format!("balanced: {balanced}\n"))?;
            }
            Ok(())
        }
        Command::Graph { perm, format, hasse } => {
            let w = parse_perm(perm)?;
            let g = build_graph(&w, opts);
            match format {
                GraphFormat::Json => {
                    emit(out, GraphExport::from_graph(&g).to_json_pretty())?;
                    emit(out, "\n")?;
                }
                GraphFormat::Dot => emit(out, to_dot(&g, *hasse))?,
                GraphFormat::Text => {
                    emit(out, format!("w: {}\n", w.to_compact_string()))?;
                    emit(out, format!("classes: {}\nedges: {}\n", g.class_count(), g.edges().len()))?;
                    for (i, c) in g.classes().iter().enumerate() {
                        let size = c.size.map(|s| s.to_string()).unwrap_or_else(|| "?".into());
                        emit(
                            out,
                            format!("  {i}: [{}] rank {} size {size} signature {}\n", c.representative, c.rank(), c.signature),
                        )?;
                    }
                    if let Ok(m) = g.metrics() {
                        emit(out, format!("diameter: {}\nradius: {}\n", m.diameter, m.radius))?;
                    }
                }
            }
            match g.status() {
                commclass::GraphStatus::Complete => Ok(()),
                commclass::GraphStatus::Partial(kind) => {
                    emit(out, "# partial graph\n")?;
                    Err(Error::PartialGraph(kind))
                }
            }
        }
        Command::Diameter { perm, method } => {
            let w = parse_perm(perm)?;
            let formula = diameter_formula(&w);
            let bfs = if *method == Method::Formula {
                None
            } else {
                Some(build_graph(&w, opts).metrics()?.diameter)
            };
            match (method, bfs) {
                (Method::Formula, _) => emit(out, format!("{formula}\n")),
                (Method::Bfs, Some(d)) => emit(out, format!("{d}\n")),
                (_, Some(d)) => {
                    let verdict = if d == formula { "match" } else { "MISMATCH" };
                    emit(out, format!("formula {formula} / bfs {d} {verdict}\n"))?;
                    if d != formula {
                        return Err(Error::PropertyViolation {
                            perm: w.to_compact_string(),
                            detail: format!("BFS diameter {d} differs from |T_w| = {formula}"),
                        });
                    }
                    Ok(())
                }
                _ => unreachable!(),
            }
        }
        Command::Verify { n, mode, csv, max_n, top } => {
            let mode = match mode {
                Mode::Formula => SweepMode::Formula,
                Mode::Full => SweepMode::Full,
            };
            let report = verify_sweep(*n, mode, &SweepOptions { graph: opts, max_n: *max_n })?;
            if let Some(path) = csv {
                let file = fs::File::create(path)
                    .map_err(|e| Error::OutOfRange(format!("cannot create {}: {e}", path.display())))?;
                report.write_csv(BufWriter::new(file))?;
            }
            emit(out, format!("S_{n}: {}/{} pass\n", report.passed, report.total))?;
            if mode == SweepMode::Full {
                emit(out, format!("distance/signature discrepancies: {}\n", report.distance_discrepancies))?;
            }
            if let Some(row) = report.first_failure() {
                emit(out, format!("FAIL {}: {}\n", row.w, row.failure.as_deref().unwrap_or("")))?;
            }
            if *top {
                let t = top_diameters_check(*n)?;
                emit(out, format!("top diameters: {}\n", join(&t.observed, ", ")))?;
            }
            report.into_result().map(|_| ())
        }
    }
}

fn info(w: &Permutation, as_json: bool, out: &mut impl Write) -> Result<(), Error> {
    let inversions = w.inversions();
    let triples = w.triples_321();
    let peak = w.unimodal_peak();
    let bounds = bounds_for(w);
    if as_json {
        let v = json!({
            "n": w.n(),
            "w": w.oneline(),
            "length": w.length(),
            "descents": w.descents(),
            "inversions": inversions.iter().map(|i| [i.larger, i.smaller]).collect::<Vec<_>>(),
            "triple_count": triples.len(),
            "triples": triples,
            "unimodal_peak": peak,
            "fully_commutative": w.is_fully_commutative(),
            "bounds": bounds,
        });
        return emit(out, format!("{}\n", serde_json::to_string_pretty(&v).expect("serializable")));
    }
    let mut text = String::new();
    text += &format!("n: {}\n", w.n());
    text += &format!("w: {}\n", w.to_compact_string());
    text += &format!("length: {}\n", w.length());
    text += &format!("descents: {{{}}}\n", join(w.descents(), ","));
    text += &format!("inversions: {}\n", join(&inversions, " "));
    text += &format!("|T_w|: {}\n", triples.len());
    text += &format!("T_w: {}\n", join(&triples, " "));
    text += &format!(
        "unimodal peak: {}\n",
        peak.map(|p| p.to_string()).unwrap_or_else(|| "none".into())
    );
    text += &format!("fully commutative: {}\n", w.is_fully_commutative());
    text += &format!("diameter bounds: [{}, {}]\n", bounds.lower, bounds.upper);
    emit(out, text)
}

fn invert_tableau(w: &Permutation, source: &str, out: &mut impl Write) -> Result<(), Error> {
    let text = if source == "-" {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Error::InvalidLabelling(format!("cannot read stdin: {e}")))?;
        s
    } else {
        fs::read_to_string(source)
            .map_err(|e| Error::InvalidLabelling(format!("cannot read {source}: {e}")))?
    };
    let value: serde_json::Value = serde_json::from_str(&text)
        .map_err(|e| Error::InvalidLabelling(format!("bad JSON: {e}")))?;
    let labels = labelling_from_json(&value)?;
    let word = match word_from_labels(w, &labels) {
        Ok(word) => word,
        Err(e) => {
            emit(out, render_grid(w, &labels))?;
            return Err(e);
        }
    };
    emit(out, format!("{word}\n"))
}
