//! Command-line front end: `synth`, `reduce`, `verify`, `stats`, `dlog-gen`, `bench`.

use std::fs;
use std::io::{Read, Write};
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::ancilla::{check_ancilla, face_cover_synth, lupanov_synth, min_ancilla, synth_mapping};
use crate::error::{Error, Result};
use crate::gf2::{reduced_log_table, table_log, table_pow, Gf2PolyField, Representative, LOG_BENCHMARKS};
use crate::io::{emit_tfc, parse_permutation, parse_tfc, CircuitFile, TruthTableFile};
use crate::model::{BooleanMapping, Circuit, Weights};
use crate::perm::Permutation;
use crate::reduce::{reduce_circuit, reduce_circuit_traced, ReduceStrategy};
use crate::synth::{synth_mixed_polarity, synth_permutation, Basis, Method, SynthesisOptions};

#[derive(Parser, Debug)]
#[command(name = "revsynth", version, about = "Reversible circuit synthesis and reduction")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    #[value(name = "A")]
    A,
    #[value(name = "B")]
    B,
    #[value(name = "K")]
    K,
    Face,
    Lupanov,
    /// One gate per cube face on fresh output lines.
    Cover,
    /// One mixed-polarity gate per transposition.
    Mixed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BasisArg {
    Omega2,
    Omega,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum WeightsArg {
    Default,
    Literature,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Truth table or permutation file to TFC.
    Synth {
        /// Input file; stdin when absent or `-`.
        input: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "B")]
        method: MethodArg,
        #[arg(long, value_enum, default_value = "omega2")]
        basis: BasisArg,
        /// Extra zeroed lines for non-bijective tables.
        #[arg(long, default_value_t = 0)]
        ancilla: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Reduce the result with this exploration depth.
        #[arg(long)]
        max_passes: Option<usize>,
        /// Transpositions per group for method K.
        #[arg(long)]
        group_size: Option<usize>,
        /// Realize odd permutations on one extra line.
        #[arg(long)]
        lift: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// TFC to reduced TFC; the rule trace goes to stderr.
    Reduce {
        input: Option<PathBuf>,
        #[arg(long, default_value_t = 3)]
        max_passes: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Suppress the rule trace.
        #[arg(long)]
        quiet: bool,
    },
    /// Check a TFC circuit against a truth table or permutation file.
    Verify {
        circuit: PathBuf,
        spec: PathBuf,
        /// Output order: output `j` is read from declared output `pi[j]`.
        #[arg(long, value_delimiter = ',')]
        pi: Option<Vec<usize>>,
    },
    /// Cost report of a TFC circuit as `key=value` lines.
    Stats {
        input: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "default")]
        weights: WeightsArg,
    },
    /// Power or logarithm table of a field, e.g. `dlog-gen n=2 f=111 log`.
    DlogGen {
        /// Field spec items (`n:4;f:10011;alpha:x`) followed by `pow`, `log` or `reduced-log`.
        #[arg(required = true, num_args = 1..)]
        args: Vec<String>,
        /// Representative rule for `reduced-log`: k_min, k_max, k_dist or random.
        #[arg(long, default_value = "k_min")]
        strategy: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run every method on the targets of a manifest and print CSV.
    Bench {
        /// One target per line: `field <spec> <kind>`, `file <path>`, or `random <n> <count>`.
        manifest: PathBuf,
        #[arg(long, value_enum, value_delimiter = ',', default_value = "B,K,face,mixed,lupanov,cover")]
        methods: Vec<MethodArg>,
        #[arg(long, value_enum, default_value = "omega2")]
        basis: BasisArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 0)]
        max_passes: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

fn read_input(path: &Option<PathBuf>) -> Result<String> {
    match path {
        Some(p) if p.as_os_str() != "-" => Ok(fs::read_to_string(p)?),
        _ => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s)?;
            Ok(s)
        }
    }
}

fn write_output(path: &Option<PathBuf>, text: &str) -> Result<()> {
    match path {
        Some(p) if p.as_os_str() != "-" => Ok(fs::write(p, text)?),
        _ => {
            std::io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

/// Synthesis target read from text.
#[derive(Clone, Debug)]
pub enum Target {
    Table(BooleanMapping),
    Perm(Permutation),
}

impl Target {
    /// Permutation files start with `.n`; everything else is a truth table.
    pub fn parse(text: &str) -> Result<Target> {
        let first = text.lines().map(|l| l.split('#').next().unwrap_or("").trim()).find(|l| !l.is_empty());
        match first {
            Some(l) if l.starts_with(".n") => Ok(Target::Perm(parse_permutation(text)?)),
            _ => Ok(Target::Table(TruthTableFile::parse(text)?.to_mapping()?)),
        }
    }

    fn mapping(&self) -> Result<BooleanMapping> {
        match self {
            Target::Table(f) => Ok(f.clone()),
            Target::Perm(p) => Ok(BooleanMapping::from_permutation(&p.to_dense()?)),
        }
    }

    fn inputs(&self) -> usize {
        match self {
            Target::Table(f) => f.inputs(),
            Target::Perm(p) => p.n(),
        }
    }
}

fn options(method: MethodArg, basis: BasisArg, group_size: Option<usize>, lift: bool) -> SynthesisOptions {
    let basis = match basis {
        BasisArg::Omega2 => Basis::Omega2,
        BasisArg::Omega => Basis::Omega,
    };
    let method = match method {
        MethodArg::A => Method::A,
        MethodArg::K => Method::KGroup,
        MethodArg::Face => Method::Face,
        _ => Method::B,
    };
    SynthesisOptions { group_size, allow_ancilla_lift: lift, ..SynthesisOptions::new(basis, method) }
}

/// Circuit for `target` by one method.
pub fn synthesize(target: &Target, method: MethodArg, opts: &SynthesisOptions, ancilla: usize) -> Result<Circuit> {
    match method {
        MethodArg::Lupanov => {
            let f = target.mapping()?;
            if ancilla > 0 {
                check_ancilla(&f, ancilla)?;
            }
            lupanov_synth(&f, None)
        }
        MethodArg::Cover => face_cover_synth(&target.mapping()?),
        MethodArg::Mixed => match target {
            Target::Perm(p) => synth_mixed_polarity(p),
            Target::Table(f) => synth_mixed_polarity(&f.to_permutation()?),
        },
        _ => match target {
            Target::Perm(p) if ancilla == 0 => synth_permutation(p, opts),
            Target::Table(f) if ancilla == 0 && f.is_bijective() => synth_permutation(&f.to_permutation()?, opts),
            _ => synth_mapping(&target.mapping()?, ancilla, opts),
        },
    }
}

fn method_name(m: MethodArg) -> &'static str {
    match m {
        MethodArg::A => "A",
        MethodArg::B => "B",
        MethodArg::K => "K",
        MethodArg::Face => "face",
        MethodArg::Lupanov => "lupanov",
        MethodArg::Cover => "cover",
        MethodArg::Mixed => "mixed",
    }
}

fn basis_name(b: BasisArg) -> &'static str {
    match b {
        BasisArg::Omega2 => "omega2",
        BasisArg::Omega => "omega",
    }
}

/// Outcome of a command: text already written, plus the process exit code.
pub fn run(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Synth { input, method, basis, ancilla, seed, max_passes, group_size, lift, output } => {
            let target = Target::parse(&read_input(&input)?)?;
            let opts = options(method, basis, group_size, lift);
            let mut c = synthesize(&target, method, &opts, ancilla)?;
            if let Some(p) = max_passes {
                c = reduce_circuit(&c, &ReduceStrategy { max_passes: p, ..Default::default() });
            }
            let mut file = CircuitFile::new(c).with_comment(format!(
                "synth method={} basis={} ancilla={ancilla} seed={seed} max_passes={}",
                method_name(method),
                basis_name(basis),
                max_passes.map_or("none".to_string(), |p| p.to_string())
            ));
            if let Target::Table(f) = &target {
                file = file.with_comment(format!("min_ancilla={}", min_ancilla(f)));
            }
            write_output(&output, &emit_tfc(&file))?;
            Ok(0)
        }
        Command::Reduce { input, max_passes, output, quiet } => {
            let mut file = parse_tfc(&read_input(&input)?)?;
            let strategy = ReduceStrategy { max_passes, ..Default::default() };
            let (c, trace) = reduce_circuit_traced(&file.circuit, &strategy);
            if !quiet {
                let mut err = std::io::stderr().lock();
                for t in &trace {
                    writeln!(err, "{t}")?;
                }
            }
            file.comments.push(format!("reduce max_passes={max_passes} L={}->{}", file.circuit.len(), c.len()));
            file.circuit = c;
            write_output(&output, &emit_tfc(&file))?;
            Ok(0)
        }
        Command::Verify { circuit, spec, pi } => {
            let file = parse_tfc(&fs::read_to_string(&circuit)?)?;
            let f = Target::parse(&fs::read_to_string(&spec)?)?.mapping()?;
            match file.circuit.first_mismatch(&f, pi.as_deref()) {
                None => {
                    println!("ok inputs={}", 1u64 << f.inputs());
                    Ok(0)
                }
                Some((x, want, got)) => {
                    let n = f.inputs();
                    let m = f.outputs();
                    let bits = |v: u64, w: usize| {
                        (0..w).map(|j| if (v >> j) & 1 == 1 { '1' } else { '0' }).collect::<String>()
                    };
                    let got = if got == u64::MAX { "shape".to_string() } else { bits(got, m) };
                    println!("mismatch input={} expected={} got={got}", bits(x, n), bits(want, m));
                    Ok(1)
                }
            }
        }
        Command::Stats { input, weights } => {
            let file = parse_tfc(&read_input(&input)?)?;
            let w = match weights {
                WeightsArg::Default => Weights::default(),
                WeightsArg::Literature => Weights::literature(),
            };
            print!("{}", file.circuit.cost(&w).to_kv());
            Ok(0)
        }
        Command::DlogGen { args, strategy, seed, output } => {
            let (kind, spec) = args.split_last().expect("required");
            let field = Gf2PolyField::parse_spec(&spec.join(";"))?;
            let table = table_for(&field, kind, &strategy, seed)?;
            let text = TruthTableFile::from_mapping(&table)
                .with_comment(format!("dlog-gen {} {kind} strategy={strategy} seed={seed}", field.spec()))
                .emit();
            write_output(&output, &text)?;
            Ok(0)
        }
        Command::Bench { manifest, methods, basis, seed, max_passes, output } => {
            let targets = parse_manifest(&fs::read_to_string(&manifest)?, seed)?;
            let csv = bench(&targets, &methods, basis, seed, max_passes)?;
            write_output(&output, &csv)?;
            Ok(0)
        }
    }
}

fn table_for(field: &Gf2PolyField, kind: &str, strategy: &str, seed: u64) -> Result<BooleanMapping> {
    match kind {
        "pow" => table_pow(field),
        "log" => table_log(field),
        "reduced-log" => {
            let rule = match strategy.parse::<Representative>()? {
                Representative::Random(_) if !strategy.contains(|c: char| c.is_ascii_digit()) => {
                    Representative::Random(seed)
                }
                r => r,
            };
            reduced_log_table(field, rule)
        }
        other => Err(Error::Parameter(format!("unknown table kind '{other}'"))),
    }
}

/// One manifest entry.
#[derive(Clone, Debug)]
pub struct BenchTarget {
    pub name: String,
    pub target: Target,
    /// Published plain / extra-line gate counts when the target is a reference field.
    pub reference: Option<(usize, usize)>,
}

/// `field <spec> <kind>`, `file <path>` or `random <n> <count>` per line.
pub fn parse_manifest(text: &str, seed: u64) -> Result<Vec<BenchTarget>> {
    let mut out = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for (idx, raw) in text.lines().enumerate() {
        let ln = idx + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let tok: Vec<&str> = body.split_whitespace().collect();
        let bad = |msg: &str| Error::Parse { line: ln, msg: msg.to_string() };
        match tok[0] {
            "field" if tok.len() == 3 => {
                let field = Gf2PolyField::parse_spec(tok[1])?;
                let table = table_for(&field, tok[2], "k_min", seed)?;
                let reference = LOG_BENCHMARKS
                    .iter()
                    .find(|b| b.field().is_ok_and(|g| g == field) && tok[2] == "log")
                    .map(|b| (b.plain, b.with_memory));
                out.push(BenchTarget {
                    name: format!("{} {}", field.spec(), tok[2]),
                    target: Target::Table(table),
                    reference,
                });
            }
            "file" if tok.len() == 2 => {
                let target = Target::parse(&fs::read_to_string(tok[1])?)?;
                out.push(BenchTarget { name: tok[1].to_string(), target, reference: None });
            }
            "random" if tok.len() == 3 => {
                let n: usize = tok[1].parse().map_err(|_| bad("bad width"))?;
                let count: usize = tok[2].parse().map_err(|_| bad("bad count"))?;
                if n > crate::model::DENSE_LIMIT {
                    return Err(bad("random targets are dense"));
                }
                for i in 0..count {
                    let p = Permutation::random_even(n, &mut rng);
                    out.push(BenchTarget {
                        name: format!("random n={n} #{i}"),
                        target: Target::Perm(p),
                        reference: None,
                    });
                }
            }
            _ => return Err(bad("expected `field <spec> <kind>`, `file <path>` or `random <n> <count>`")),
        }
    }
    Ok(out)
}

/// One CSV row of [`bench`].
#[derive(Debug)]
struct Row {
    target: String,
    n: usize,
    method: &'static str,
    status: String,
    l: usize,
    d: usize,
    w: u64,
    q: usize,
    ms: u128,
    reference_l: String,
    seed: u64,
}

impl Row {
    fn header() -> [&'static str; 11] {
        ["target", "n", "method", "status", "L", "D", "W", "Q", "ms", "reference_L", "seed"]
    }

    fn values(&self) -> [String; 11] {
        [
            self.target.clone(),
            self.n.to_string(),
            self.method.to_string(),
            self.status.clone(),
            self.l.to_string(),
            self.d.to_string(),
            self.w.to_string(),
            self.q.to_string(),
            self.ms.to_string(),
            self.reference_l.clone(),
            self.seed.to_string(),
        ]
    }
}

/// CSV table with one row per target and method; failures are recorded in `status`.
pub fn bench(
    targets: &[BenchTarget],
    methods: &[MethodArg],
    basis: BasisArg,
    seed: u64,
    max_passes: usize,
) -> Result<String> {
    let jobs: Vec<(usize, MethodArg)> = (0..targets.len()).flat_map(|t| methods.iter().map(move |&m| (t, m))).collect();
    let rows: Vec<Row> = jobs
        .par_iter()
        .map(|&(t, m)| {
            let bt = &targets[t];
            let opts = options(m, basis, None, true);
            let start = Instant::now();
            let res = synthesize(&bt.target, m, &opts, 0).map(|c| {
                if max_passes > 0 {
                    reduce_circuit(&c, &ReduceStrategy { max_passes, ..Default::default() })
                } else {
                    c
                }
            });
            let ms = start.elapsed().as_millis();
            let reference_l = match (bt.reference, m) {
                (Some((_, mem)), MethodArg::Cover | MethodArg::Lupanov) => mem.to_string(),
                (Some((plain, _)), _) => plain.to_string(),
                (None, _) => String::new(),
            };
            let base = Row {
                target: bt.name.clone(),
                n: bt.target.inputs(),
                method: method_name(m),
                status: "ok".into(),
                l: 0,
                d: 0,
                w: 0,
                q: 0,
                ms,
                reference_l,
                seed,
            };
            match res {
                Ok(c) => {
                    let r = c.cost(&Weights::default());
                    Row { l: r.l, d: r.d, w: r.w, q: r.q, ..base }
                }
                Err(e) => Row { status: e.kind().to_string(), ..base },
            }
        })
        .collect();
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| Error::Io(e.to_string());
    w.write_record(Row::header()).map_err(io)?;
    for r in &rows {
        w.write_record(r.values()).map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Io(e.to_string()))
}
