//! `transync`: command-line front end for the transync toolkit.

mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::Value;
use transync::automata::{self, Inclusion};
use transync::drat::game::{build_drat_game, delay_bound_formula, solve_checked, DratOutcome, DEFAULT_CHECK_LEN};
use transync::drat::DetTransducer;
use transync::format::{self, Document};
use transync::monoid;
use transync::resync::{self, Resynchronizer};
use transync::transducer::Transducer;
use transync::uniformize::{self, BurstPolicy};
use transync::words::{self, Alphabet, Color, SyncLetter};
use transync::Error;

use report::{Report, Verdict, Witness};

#[derive(Parser, Debug)]
#[command(name = "transync", version, about = "Transducers modulo resynchronizers")]
struct Cli {
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,
    /// Include wall-clock time in the report.
    #[arg(long, global = true)]
    timing: bool,
    /// Cap on explored automaton states or monoid elements.
    #[arg(long, global = true)]
    cap: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Delay between two words, as a reduced free-group word (`eps` for empty).
    Del { u: String, v: String },
    /// Lag between two synchronization words such as "i.a o.b".
    Lag { w1: String, w2: String },
    /// Build the k-delay resynchronizer over an alphabet.
    DkBuild {
        /// Comma-separated letters.
        #[arg(long)]
        alphabet: String,
        #[arg(long)]
        k: usize,
        /// Use the literal construction instead of the complete one.
        #[arg(long)]
        literal: bool,
        /// Write the resynchronizer as DOT.
        #[arg(long)]
        dot: Option<PathBuf>,
        /// Write the resynchronizer file here instead of printing it.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decide L(T1) ⊆ S(L(T2)).
    Include(PairArgs),
    /// Decide inclusion in both directions.
    Equiv(PairArgs),
    /// Synthesize a sequential uniformizer modulo a resynchronizer.
    Uniformize {
        #[command(flatten)]
        resync: ResyncArgs,
        transducer: PathBuf,
        /// Write the solved game as DOT.
        #[arg(long)]
        dot: Option<PathBuf>,
        /// Write the uniformizer here instead of printing it.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Solve the lookahead game of a deterministic endmarked transducer.
    DratUniformize {
        /// Bound on pending transformation sequences.
        #[arg(long = "K")]
        big_k: usize,
        transducer: PathBuf,
        /// Write the solved game as DOT.
        #[arg(long)]
        dot: Option<PathBuf>,
        /// Write the uniformizer here instead of printing it.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Replay checks run on inputs up to this length.
        #[arg(long, default_value_t = DEFAULT_CHECK_LEN)]
        max_len: usize,
    },
    /// Transition monoid, idempotents and pumping of a real-time transducer.
    Monoid {
        transducer: PathBuf,
        /// Input word to decompose and pump.
        #[arg(long)]
        word: Option<String>,
        /// Pumping exponent.
        #[arg(long, default_value_t = 1)]
        k: usize,
    },
    /// Parse a file and report its shape.
    Check {
        file: PathBuf,
        /// Length bound for the resynchronizer axiom check.
        #[arg(long, default_value_t = 3)]
        max_len: usize,
    },
    /// List the pairs of a relation up to an input length.
    Enumerate {
        file: PathBuf,
        #[arg(long, default_value_t = 3)]
        max_len: usize,
    },
}

#[derive(clap::Args, Debug)]
struct ResyncArgs {
    /// Use the k-delay resynchronizer.
    #[arg(long, conflicts_with = "resync")]
    k: Option<usize>,
    /// Use the resynchronizer in this file.
    #[arg(long)]
    resync: Option<PathBuf>,
}

#[derive(clap::Args, Debug)]
struct PairArgs {
    #[command(flatten)]
    resync: ResyncArgs,
    t1: PathBuf,
    t2: PathBuf,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl Failure {
    fn message(&self) -> String {
        match self {
            Failure::Usage(m) => m.clone(),
            Failure::Lib(e) => e.to_string(),
        }
    }

    fn exit_code(&self) -> u8 {
        match self {
            Failure::Lib(e) if e.is_cap() => 2,
            _ => 1,
        }
    }
}

type Outcome = Result<Report, Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let name = command_name(&cli.command);
    let start = Instant::now();
    let (mut report, code) = match run(&cli) {
        Ok(r) => (r, 0),
        Err(f) => (Report::error(name, f.message()), f.exit_code()),
    };
    if cli.timing {
        report.timing_ms = Some(start.elapsed().as_millis());
    }
    match cli.format {
        OutputFormat::Json => println!("{}", report.to_json()),
        OutputFormat::Text if code == 0 => print!("{}", report.to_text()),
        OutputFormat::Text => eprint!("{}", report.to_text()),
    }
    ExitCode::from(code)
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Del { .. } => "del",
        Command::Lag { .. } => "lag",
        Command::DkBuild { .. } => "dk-build",
        Command::Include(_) => "include",
        Command::Equiv(_) => "equiv",
        Command::Uniformize { .. } => "uniformize",
        Command::DratUniformize { .. } => "drat-uniformize",
        Command::Monoid { .. } => "monoid",
        Command::Check { .. } => "check",
        Command::Enumerate { .. } => "enumerate",
    }
}

fn run(cli: &Cli) -> Outcome {
    let name = command_name(&cli.command);
    match &cli.command {
        Command::Del { u, v } => {
            let d = words::del(&word_arg(u), &word_arg(v));
            Ok(Report::new(name, Verdict::True).detail("del", d.to_string()))
        }
        Command::Lag { w1, w2 } => {
            let a = words::parse_sync_word(w1)?;
            let b = words::parse_sync_word(w2)?;
            let lag = words::lag(&a, &b);
            Ok(Report::new(name, Verdict::from_bool(lag.finite().is_some())).detail("lag", lag.to_string()))
        }
        Command::DkBuild { alphabet, k, literal, dot, out } => dk_build(name, alphabet, *k, *literal, dot.as_deref(), out.as_deref()),
        Command::Include(p) => inclusion(name, p, false, cli.cap),
        Command::Equiv(p) => inclusion(name, p, true, cli.cap),
        Command::Uniformize { resync, transducer, dot, out } => uniformize_cmd(name, resync, transducer, dot.as_deref(), out.as_deref()),
        Command::DratUniformize { big_k, transducer, dot, out, max_len } => {
            drat_cmd(name, *big_k, transducer, dot.as_deref(), out.as_deref(), *max_len)
        }
        Command::Monoid { transducer, word, k } => monoid_cmd(name, transducer, word.as_deref(), *k, cli.cap),
        Command::Check { file, max_len } => check_cmd(name, file, *max_len),
        Command::Enumerate { file, max_len } => enumerate_cmd(name, file, *max_len),
    }
}

/// A plain word argument: its characters, or nothing for `eps`.
fn word_arg(s: &str) -> Vec<char> {
    if s == "eps" {
        Vec::new()
    } else {
        s.chars().filter(|c| !c.is_whitespace()).collect()
    }
}

fn show(w: &[char]) -> String {
    if w.is_empty() {
        "eps".into()
    } else {
        w.iter().collect()
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<Document, Failure> {
    Ok(format::parse(&read(path)?)?)
}

fn load_transducer(path: &Path) -> Result<(String, Transducer<char>), Failure> {
    match load(path)? {
        Document::Transducer { name, transducer } => Ok((name, transducer)),
        _ => Err(Failure::Usage(format!("{}: expected a transducer file", path.display()))),
    }
}

fn load_drat(path: &Path) -> Result<(String, DetTransducer), Failure> {
    match load(path)? {
        Document::Drat { name, transducer } => Ok((name, transducer)),
        _ => Err(Failure::Usage(format!("{}: expected a drat file", path.display()))),
    }
}

fn shared_alphabet<'a>(ts: impl IntoIterator<Item = &'a Transducer<char>>) -> Result<Alphabet, Failure> {
    let mut letters: Vec<char> = ts.into_iter().flat_map(|t| t.alphabet().iter().copied()).collect();
    letters.sort_unstable();
    letters.dedup();
    Ok(Alphabet::new(letters)?)
}

/// The resynchronizer named by the flags, with a short description.
fn resynchronizer(args: &ResyncArgs, alphabet: &Alphabet) -> Result<(Resynchronizer, String), Failure> {
    if let Some(path) = &args.resync {
        return match load(path)? {
            Document::Resync { name, carrier, .. } => Ok((Resynchronizer::Rational(carrier), format!("file {name}"))),
            _ => Err(Failure::Usage(format!("{}: expected a resync file", path.display()))),
        };
    }
    match args.k {
        Some(k) => Ok((resync::build_dk(alphabet, k), format!("{k}-delay"))),
        None => Ok((Resynchronizer::identity(alphabet), "identity".into())),
    }
}

fn dk_build(name: &str, alphabet: &str, k: usize, literal: bool, dot: Option<&Path>, out: Option<&Path>) -> Outcome {
    let letters: Vec<char> = alphabet
        .split(',')
        .map(|s| {
            let mut cs = s.trim().chars();
            match (cs.next(), cs.next()) {
                (Some(c), None) => Ok(c),
                _ => Err(Failure::Usage(format!("bad letter {s:?} in --alphabet"))),
            }
        })
        .collect::<Result<_, _>>()?;
    let sigma = Alphabet::new(letters)?;
    let carrier = if literal {
        resync::build_dk_literal(&sigma, k)
    } else {
        resync::build_dk(&sigma, k).carrier()?.clone()
    };
    let copies = carrier.edges().iter().filter(|e| e.input.len() == 1 && e.input[0].is_input()).count();
    let file_name = format!("d{k}");
    let mut report = Report::new(name, Verdict::True)
        .detail("construction", if literal { "literal" } else { "complete" })
        .detail("states", carrier.num_states())
        .detail("transitions", carrier.edges().len())
        .detail("non_copy_transitions", carrier.edges().len() - copies)
        .detail("state_names", carrier.names().to_vec());
    if let Some(p) = dot {
        write(p, &carrier.to_dot(&file_name))?;
        report = report.detail("dot", p.display().to_string());
    }
    let text = format::print_resync(&file_name, &sigma, &carrier);
    match out {
        Some(p) => {
            write(p, &text)?;
            report = report.detail("written", p.display().to_string());
        }
        None => report = report.detail("resync", text),
    }
    Ok(report)
}

fn witness(source: &str, w: &[SyncLetter]) -> Witness {
    Witness {
        source: source.into(),
        sync_word: words::format_sync_word(w),
        input: show(&words::project(w, Color::In)),
        output: show(&words::project(w, Color::Out)),
    }
}

fn inclusion(name: &str, p: &PairArgs, both: bool, cap: Option<usize>) -> Outcome {
    let (n1, t1) = load_transducer(&p.t1)?;
    let (n2, t2) = load_transducer(&p.t2)?;
    let sigma = shared_alphabet([&t1, &t2])?;
    let (s, desc) = resynchronizer(&p.resync, &sigma)?;
    let cap = cap.unwrap_or(automata::DEFAULT_STATE_CAP);
    let included = |a: &Transducer<char>, b: &Transducer<char>| -> Result<Inclusion<SyncLetter>, Failure> {
        let image = s.apply(&b.underlying_automaton())?;
        Ok(automata::includes_capped(&a.underlying_automaton(), &image, cap)?)
    };
    let forward = included(&t1, &t2)?;
    let mut report;
    if let Some(w) = forward.counterexample() {
        report = Report::new(name, Verdict::False);
        report.witness = Some(witness(&format!("in {n1}, not in S({n2})"), w));
    } else if both {
        let backward = included(&t2, &t1)?;
        report = Report::new(name, Verdict::from_bool(backward.holds()));
        if let Some(w) = backward.counterexample() {
            report.witness = Some(witness(&format!("in {n2}, not in S({n1})"), w));
        }
    } else {
        report = Report::new(name, Verdict::True);
    }
    Ok(report.detail("left", n1).detail("right", n2).detail("resynchronizer", desc))
}

fn uniformize_cmd(name: &str, args: &ResyncArgs, path: &Path, dot: Option<&Path>, out: Option<&Path>) -> Outcome {
    let (tname, t) = load_transducer(path)?;
    let sigma = shared_alphabet([&t])?;
    let (s, desc) = resynchronizer(args, &sigma)?;
    let syn = uniformize::synthesize(&t, &s, BurstPolicy::LoopFree)?;
    let g = &syn.game;
    let mut report = Report::new(name, if syn.uniformizer.is_some() { Verdict::Yes } else { Verdict::False })
        .detail("transducer", tname.clone())
        .detail("resynchronizer", desc)
        .detail("game_vertices", g.game.num_vertices())
        .detail("game_edges", g.game.num_edges())
        .detail("image_states", g.image_states)
        .detail("domain_states", g.domain_states);
    if let Some(p) = dot {
        write(p, &g.game.to_dot(&format!("{tname}_game"), Some(&syn.solution)))?;
        report = report.detail("dot", p.display().to_string());
    }
    if let Some(u) = &syn.uniformizer {
        report = report.detail("uniformizer_states", u.transducer().num_states());
        attach_uniformizer(&mut report, &format!("{tname}_uniformizer"), u.transducer(), out)?;
    }
    Ok(report)
}

fn attach_uniformizer(report: &mut Report, name: &str, u: &Transducer<char>, out: Option<&Path>) -> Result<(), Failure> {
    let text = format::print_transducer(name, u);
    match out {
        Some(p) => {
            write(p, &text)?;
            report.uniformizer_path = Some(p.display().to_string());
        }
        None => report.uniformizer = Some(text),
    }
    Ok(())
}

fn drat_cmd(name: &str, k: usize, path: &Path, dot: Option<&Path>, out: Option<&Path>, check_len: usize) -> Outcome {
    let (tname, t) = load_drat(path)?;
    let g = build_drat_game(&t, k)?;
    let (sol, outcome) = solve_checked(&g, check_len)?;
    let mut report = Report::new(name, Verdict::Yes)
        .detail("transducer", tname.clone())
        .detail("K", k)
        .detail("game_vertices", g.game.num_vertices())
        .detail("game_edges", g.game.num_edges());
    if let Some(p) = dot {
        write(p, &g.game.to_dot(&format!("{tname}_game"), Some(&sol)))?;
        report = report.detail("dot", p.display().to_string());
    }
    match outcome {
        DratOutcome::Yes { uniformizer, delay_bound } => {
            report = report
                .detail("delay_bound", delay_bound)
                .detail("uniformizer_states", uniformizer.transducer().num_states())
                .detail("checked_up_to", check_len);
            attach_uniformizer(&mut report, &format!("{tname}_uniformizer"), uniformizer.transducer(), out)?;
        }
        DratOutcome::NoUpTo(k) => {
            report.verdict = Verdict::NoUpTo(k);
            report.caveat = Some(format!(
                "Output loses the game at K = {k}; this is a definitive no only if K reaches the saturation bound, \
                 a larger K may still succeed (delay bound at this K would be {})",
                delay_bound_formula(k, g.max_annotation)
            ));
        }
    }
    Ok(report)
}

fn monoid_cmd(name: &str, path: &Path, word: Option<&str>, k: usize, cap: Option<usize>) -> Outcome {
    let (tname, t) = load_transducer(path)?;
    let cap = cap.unwrap_or(monoid::DEFAULT_MONOID_CAP);
    let elements = monoid::generate_monoid(&t, cap)?;
    let idempotents: Vec<Value> = elements.iter().filter(|m| m.is_idempotent()).map(|m| Value::String(m.to_string())).collect();
    let s_forms = elements.iter().filter(|m| m.is_idempotent() && monoid::is_s_form(m)).count();
    let bound = monoid::nt_bound_formula(t.num_states(), elements.len() as u64, t.max_output_len());
    let mut report = Report::new(name, Verdict::True)
        .detail("transducer", tname)
        .detail("states", t.num_states())
        .detail("monoid_size", elements.len())
        .detail("idempotent_count", idempotents.len())
        .detail("idempotents", Value::Array(idempotents))
        .detail("idempotent_s_forms", s_forms)
        .detail("pumping_bound", bound.to_string());
    if let Some(w) = word {
        let v = word_arg(w);
        let d = monoid::decompose_for_pumping(&t, &v)?;
        let pieces: Vec<Value> = (1..=d.n()).map(|i| Value::String(show(d.piece(i)))).collect();
        report = report
            .detail("word", show(&v))
            .detail("sigma", monoid::sigma(&t, &v)?.to_string())
            .detail("factorizations", d.n())
            .detail("pieces", Value::Array(pieces))
            .detail("k", k)
            .detail("phi", show(&monoid::phi(&t, &v, k)?))
            .detail("phi_prime", show(&monoid::phi_prime(&t, &v, k)?))
            .detail("rho", show(&monoid::rho_pump(&t, &v, k)?));
    }
    Ok(report)
}

fn check_cmd(name: &str, path: &Path, max_len: usize) -> Outcome {
    let doc = load(path)?;
    let report = Report::new(name, Verdict::True).detail("name", doc.name());
    Ok(match doc {
        Document::Transducer { transducer: t, .. } => report
            .detail("kind", "transducer")
            .detail("alphabet", show(t.alphabet()))
            .detail("states", t.num_states())
            .detail("transitions", t.edges().len())
            .detail("real_time", t.is_real_time())
            .detail("sequential", t.is_sequential()),
        Document::Resync { alphabet, carrier, .. } => {
            let ok = Resynchronizer::Rational(carrier.clone()).check_axioms(&alphabet, max_len)?;
            let mut r = report
                .detail("kind", "resync")
                .detail("alphabet", show(alphabet.letters()))
                .detail("states", carrier.num_states())
                .detail("transitions", carrier.edges().len())
                .detail("axioms_checked_up_to", max_len);
            r.verdict = Verdict::from_bool(ok);
            r
        }
        Document::Drat { transducer: t, .. } => {
            let outputs = (0..t.num_states()).filter(|&q| t.is_output(q)).count();
            report
                .detail("kind", "drat")
                .detail("alphabet", show(t.alphabet()))
                .detail("states", t.num_states())
                .detail("input_states", t.num_states() - outputs)
                .detail("output_states", outputs)
        }
    })
}

fn enumerate_cmd(name: &str, path: &Path, max_len: usize) -> Outcome {
    let doc = load(path)?;
    let mut pairs: Vec<Value> = Vec::new();
    match &doc {
        Document::Transducer { transducer: t, .. } => {
            let max_out = max_len * t.max_output_len().max(1) + t.max_output_len();
            for u in words::words_up_to(t.alphabet(), max_len) {
                for v in t.enumerate_outputs(&u, max_out) {
                    pairs.push(Value::String(format!("{} -> {}", show(&u), show(&v))));
                }
            }
        }
        Document::Drat { transducer: t, .. } => {
            for u in words::words_up_to(t.alphabet(), max_len) {
                for v in words::words_up_to(t.alphabet(), max_len) {
                    if t.accepts(&u, &v)? {
                        pairs.push(Value::String(format!("{} -> {}", show(&u), show(&v))));
                    }
                }
            }
        }
        Document::Resync { .. } => return Err(Failure::Usage("enumerate expects a transducer or drat file".into())),
    }
    Ok(Report::new(name, Verdict::True)
        .detail("name", doc.name())
        .detail("max_len", max_len)
        .detail("count", pairs.len())
        .detail("pairs", Value::Array(pairs)))
}
