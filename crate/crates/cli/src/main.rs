use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use bigfree::excision::{self, Excision};
use bigfree::exec::Execution;
use bigfree::extension::{self, Strategy, DEFAULT_BUDGET};
use bigfree::group::FiniteGroup;
use bigfree::hom::Homomorphism;
use bigfree::rational;
use bigfree::realization::{LengthAssignment, Realization};
use bigfree::tame::TameOracle;
use bigfree::verify;
use bigfree::{AlphabetSet, Error, Word};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

mod svg;

const WORD_GRAMMAR: &str = "words are space-separated tokens: a<k> / A<k> (letter a_k or its inverse), \
T(s[,d]) / T'(s[,d]) (a_s a_{s+d} ... and its inverse letters), R(s[,d]) / R'(s[,d]) (... a_{s+d} a_s), \
or ε for the empty word";

#[derive(Parser)]
#[command(
    name = "bigfree",
    version,
    about = "Words of the big free group, excision and homomorphism extension"
)]
struct Cli {
    /// Structured JSON output.
    #[arg(long, global = true)]
    json: bool,

    /// Run without the thread pool.
    #[arg(long, global = true)]
    sequential: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Reduced canonical form.
    Reduce {
        #[arg(value_parser = word_arg)]
        word: Word,
    },
    Invert {
        #[arg(value_parser = word_arg)]
        word: Word,
    },
    /// Reduced product.
    Mul {
        #[arg(value_parser = word_arg)]
        left: Word,
        #[arg(value_parser = word_arg)]
        right: Word,
    },
    /// Equality in the group.
    Equal {
        #[arg(value_parser = word_arg)]
        left: Word,
        #[arg(value_parser = word_arg)]
        right: Word,
    },
    /// Delete letters outside a sub-alphabet.
    Retract {
        #[arg(value_parser = word_arg)]
        word: Word,
        /// `1,2,3`, `all` or `all-except:4,5`.
        #[arg(long, value_parser = alphabet_arg)]
        keep: AlphabetSet,
        /// Print the maximal kept runs instead of their product.
        #[arg(long)]
        split: bool,
    },
    /// Letter interval layout on [0, L_w].
    Realize {
        #[command(flatten)]
        setup: WordSetup,
        /// Letters listed per tail.
        #[arg(long, default_value_t = 8)]
        depth: u64,
        #[arg(long, conflicts_with = "svg")]
        csv: bool,
        #[arg(long)]
        svg: bool,
    },
    /// Singular points of the realized word.
    Singular {
        #[command(flatten)]
        setup: ExcisionSetup,
    },
    /// Kept subwords after deleting C_m.
    Excise {
        #[command(flatten)]
        setup: ExcisionSetup,
        #[arg(long)]
        m: u64,
        /// Print the full plan as JSON.
        #[arg(long)]
        plan_json: bool,
    },
    /// The excised word h_{ι,m}(w).
    H {
        #[command(flatten)]
        setup: ExcisionSetup,
        #[arg(long)]
        m: u64,
    },
    /// Certified threshold for h(w1·w2) = h(w1)·h(w2).
    Threshold {
        #[command(flatten)]
        pair: PairSetup,
    },
    /// Evaluate the extended homomorphism.
    Extend {
        #[command(flatten)]
        setup: ExcisionSetup,
        #[command(flatten)]
        hom: HomSetup,
        /// `require`, `residue:<r>` (or `residue:odd|even`), `min-accum`, `family:<w>;<w>`.
        #[arg(long, default_value = "require", value_parser = strategy_arg)]
        strategy: Strategy,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    #[command(subcommand)]
    Verify(VerifyCommand),
    /// Net value over the kept alphabet at a finite index set j.
    Lemma2 {
        #[arg(long, value_parser = word_arg)]
        word: Word,
        #[arg(long, value_parser = alphabet_arg)]
        keep: AlphabetSet,
        #[command(flatten)]
        hom: HomSetup,
        /// Elements of j separated by `;`.
        #[arg(long, default_value = "")]
        j: String,
    },
}

#[derive(Subcommand)]
enum VerifyCommand {
    /// Check h(w1·w2, m) = h(w1, m)·h(w2, m) from the certified threshold on.
    Eq1 {
        #[command(flatten)]
        pair: Box<PairSetup>,
    },
    /// Run every invariant suite.
    All,
}

#[derive(Args)]
struct WordSetup {
    #[arg(long, value_parser = word_arg)]
    word: Word,
    /// `geometric:c=<p/q>,r=<p/q>` or `override:l=<p/q>|...,c=<p/q>,r=<p/q>`.
    #[arg(long, default_value = "geometric:c=1/2,r=1/2", value_parser = iota_arg)]
    iota: LengthAssignment,
}

#[derive(Args)]
struct ExcisionSetup {
    #[command(flatten)]
    word: WordSetup,
    /// `fa`, `fa-alpha`, `bf` or `custom:<file>`.
    #[arg(long, default_value = "fa")]
    tame: String,
}

#[derive(Args)]
struct PairSetup {
    #[arg(long, value_parser = word_arg)]
    w1: Word,
    #[arg(long, value_parser = word_arg)]
    w2: Word,
    #[arg(long, default_value = "geometric:c=1/2,r=1/2", value_parser = iota_arg)]
    iota: LengthAssignment,
    #[arg(long, default_value = "fa")]
    tame: String,
    #[arg(long, default_value_t = 20)]
    window: u64,
}

#[derive(Args)]
struct HomSetup {
    /// Homomorphism file (JSON).
    #[arg(long)]
    hom: PathBuf,
    /// Target group file, when the hom file has no `group` key.
    #[arg(long)]
    group: Option<PathBuf>,
}

impl HomSetup {
    fn load(&self, oracle: TameOracle) -> Result<Homomorphism, Error> {
        let group = match &self.group {
            Some(p) => Some(Arc::new(FiniteGroup::load(p)?)),
            None => None,
        };
        Homomorphism::load(&self.hom, group, oracle)
    }
}

fn word_arg(s: &str) -> Result<Word, String> {
    s.parse().map_err(|e: Error| format!("{e}\n{WORD_GRAMMAR}"))
}

fn alphabet_arg(s: &str) -> Result<AlphabetSet, String> {
    AlphabetSet::parse(s).map_err(|e| format!("{e}; expected 1,2,3 or all or all-except:4,5"))
}

fn iota_arg(s: &str) -> Result<LengthAssignment, String> {
    LengthAssignment::parse(s).map_err(|e| e.to_string())
}

fn strategy_arg(s: &str) -> Result<Strategy, String> {
    Strategy::parse(s).map_err(|e| e.to_string())
}

struct Out {
    json: bool,
    text: String,
    value: Value,
}

impl Out {
    fn new(json: bool) -> Out {
        Out {
            json,
            text: String::new(),
            value: Value::Null,
        }
    }

    fn line(&mut self, s: impl AsRef<str>) {
        self.text.push_str(s.as_ref());
        self.text.push('\n');
    }
}

fn plain(w: &Word) -> Value {
    Value::String(w.to_string())
}

fn run(cli: Cli) -> Result<Out, Error> {
    let exec = if cli.sequential {
        Execution::Sequential
    } else {
        Execution::Parallel
    };
    let mut out = Out::new(cli.json);
    match cli.command {
        Command::Reduce { word } => {
            let r = word.reduce();
            out.line(r.to_string());
            out.value = json!({"word": plain(&r)});
        }
        Command::Invert { word } => {
            let r = word.invert().reduce();
            out.line(r.to_string());
            out.value = json!({"word": plain(&r)});
        }
        Command::Mul { left, right } => {
            let r = left.mul(&right);
            out.line(r.to_string());
            out.value = json!({"word": plain(&r)});
        }
        Command::Equal { left, right } => {
            let eq = left.equals(&right);
            out.line(eq.to_string());
            out.value = json!({"equal": eq, "left": plain(&left.reduce()), "right": plain(&right.reduce())});
        }
        Command::Retract { word, keep, split } => {
            if split {
                let blocks = word.split_string(&keep);
                for b in &blocks {
                    out.line(b.to_string());
                }
                out.value = json!({"blocks": blocks.iter().map(plain).collect::<Vec<_>>()});
            } else {
                let r = word.retract(&keep);
                out.line(r.to_string());
                out.value = json!({"word": plain(&r)});
            }
        }
        Command::Realize { setup, depth, csv, svg } => {
            let r = Realization::new(&setup.word, &setup.iota);
            let rows = r.layout(depth);
            if csv {
                let mut w = csv::Writer::from_writer(Vec::new());
                for row in &rows {
                    w.serialize(row).map_err(|e| Error::Io(e.to_string()))?;
                }
                let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
                out.text = String::from_utf8(bytes).expect("csv output is utf-8");
            } else if svg {
                out.text = svg::render(&r, &rows);
            } else {
                out.line(format!("L = {}", rational::format(r.total())));
                for row in &rows {
                    let sign = if row.sign > 0 { "a" } else { "A" };
                    out.line(format!(
                        "{sign}{} ({}, {})",
                        row.index,
                        rational::format(&row.start),
                        rational::format(&row.end)
                    ));
                }
            }
            out.value = json!({
                "word": plain(r.word()),
                "iota": setup.iota.to_string(),
                "total": rational::format(r.total()),
                "letters": serde_json::to_value(&rows)?,
            });
        }
        Command::Singular { setup } => {
            let oracle = TameOracle::from_selector(&setup.tame)?;
            let ex = Excision::new(&setup.word.word, &setup.word.iota, &oracle)?;
            for s in ex.singular() {
                let side = match (s.left_regular, s.right_regular) {
                    (false, false) => "singular on both sides",
                    (false, true) => "singular on the left",
                    _ => "singular on the right",
                };
                out.line(format!("{} {side}", rational::format(&s.point)));
            }
            if ex.singular().is_empty() {
                out.line("none");
            }
            out.value = json!({"singular": serde_json::to_value(ex.singular())?});
        }
        Command::Excise { setup, m, plan_json } => {
            let oracle = TameOracle::from_selector(&setup.tame)?;
            let plan = excision::build_plan(&setup.word.word, &setup.word.iota, &oracle, m)?;
            if plan_json {
                out.text = serde_json::to_string_pretty(&plan)? + "\n";
            } else {
                for b in &plan.kept {
                    out.line(b.word.to_string());
                }
            }
            out.value = serde_json::to_value(&plan)?;
        }
        Command::H { setup, m } => {
            let oracle = TameOracle::from_selector(&setup.tame)?;
            let h = excision::h(&setup.word.word, &setup.word.iota, &oracle, m)?;
            out.line(h.to_string());
            out.value = json!({"m": m, "h": plain(&h)});
        }
        Command::Threshold { pair } => {
            let oracle = TameOracle::from_selector(&pair.tame)?;
            let r = excision::threshold(&pair.w1, &pair.w2, &pair.iota, &oracle, pair.window, exec)?;
            out.line(format!("M={}", r.threshold));
            for j in &r.junctions {
                out.line(format!("  {} | {}: {:?}, M={}", j.left, j.right, j.case, j.threshold));
            }
            out.value = serde_json::to_value(&r)?;
        }
        Command::Extend {
            setup,
            hom,
            strategy,
            budget,
        } => {
            let oracle = TameOracle::from_selector(&setup.tame)?;
            let f = hom.load(oracle)?;
            let e = extension::extend_eval(&setup.word.word, &setup.word.iota, &f, &strategy, budget, exec)?;
            let g = f.group();
            out.line(g.name(e.value));
            out.line(format!("analysis: {}", e.analysis.describe(g)));
            if !matches!(e.analysis, extension::Analysis::Constant { .. }) {
                out.line(format!(
                    "strategy {strategy}: representative choice, not a canonical limit"
                ));
            }
            let mut v = e.to_json(g);
            v["strategy"] = Value::String(strategy.to_string());
            out.value = v;
        }
        Command::Verify(VerifyCommand::Eq1 { pair }) => {
            let oracle = TameOracle::from_selector(&pair.tame)?;
            match excision::threshold(&pair.w1, &pair.w2, &pair.iota, &oracle, pair.window, exec) {
                Ok(r) => {
                    out.line(format!("M={} PASS", r.threshold));
                    out.value = json!({"threshold": r.threshold, "window": pair.window, "pass": true});
                }
                Err(Error::ThresholdValidation { threshold, witness }) => {
                    out.line(format!("M={threshold} FAIL at m={witness}"));
                    out.value =
                        json!({"threshold": threshold, "window": pair.window, "pass": false, "witness": witness});
                    emit(&out);
                    return Err(Error::ThresholdValidation { threshold, witness });
                }
                Err(e) => return Err(e),
            }
        }
        Command::Verify(VerifyCommand::All) => {
            let results = verify::run_all(exec);
            let width = results.iter().map(|r| r.name.len()).max().unwrap_or(0);
            for r in &results {
                let status = if r.passed { "PASS" } else { "FAIL" };
                let mut line = format!("{:width$}  {status}  {} cases", r.name, r.cases);
                if !r.passed {
                    line.push_str(&format!("  {}", r.detail));
                }
                out.line(line);
            }
            out.value = json!({"suites": serde_json::to_value(&results)?});
            if results.iter().any(|r| !r.passed) {
                emit(&out);
                return Err(Error::ExcisionInvariant("verification suites failed".into()));
            }
        }
        Command::Lemma2 { word, keep, hom, j } => {
            let f = hom.load(TameOracle::fa())?;
            let j: Vec<Word> = j
                .split(';')
                .filter(|s| !s.trim().is_empty())
                .map(str::parse)
                .collect::<Result<_, _>>()?;
            let v = extension::lemma2_net(&word, &keep, &f, &j)?;
            let g = f.group();
            out.line(g.name(v));
            out.value = json!({
                "value": g.name(v),
                "pieces": word.split_string(&keep).iter().map(plain).collect::<Vec<_>>(),
            });
        }
    }
    Ok(out)
}

fn emit(out: &Out) {
    let mut stdout = std::io::stdout().lock();
    let _ = if out.json {
        writeln!(
            stdout,
            "{}",
            serde_json::to_string_pretty(&out.value).expect("json values serialize")
        )
    } else {
        write!(stdout, "{}", out.text)
    };
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json = cli.json;
    match run(cli) {
        Ok(out) => {
            emit(&out);
            ExitCode::SUCCESS
        }
        Err(e) => {
            if json {
                println!("{}", json!({"error": e.to_string()}));
            }
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
