use std::fs;
use std::io::{self, Read as _};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use mbqc::artifact::Artifact;
use mbqc::depth::{
    execution_digraph, execution_dot, geometry_dot, preparation_depth, quantum_depth,
};
use mbqc::flow::{characterized_depth, classical_depth, find_flow};
use mbqc::report::{sha256_hex, Report};
use mbqc::rewrite::{pauli_simplify, signal_shift, standardize, RewriteTrace};
use mbqc::sim::{check_determinism, equiv_up_to_phase, SimAngles};
use mbqc::text::{CircuitFile, PatternFile};
use mbqc::translate::{
    circuit_influencing_paths, circuit_to_pattern, parallelize_circuit, pattern_to_circuit,
    FanInMode, Variant,
};
use mbqc::{Circuit, Error, Pattern, Result};

/// Measurement-pattern compiler: translate circuits to patterns and back,
/// rewrite patterns, and analyse their depth.
#[derive(Parser)]
#[command(name = "mbqc", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Input {
    /// Circuit or pattern file; `-` reads standard input.
    input: PathBuf,
}

#[derive(Args)]
struct InOut {
    #[command(flatten)]
    input: Input,
    /// Write the result here and print a report instead.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Translate a circuit to a pattern or a standard, shifted pattern to a
    /// coherent circuit.
    Translate {
        #[command(flatten)]
        io: InOut,
        #[arg(long)]
        to: Target,
        /// Pattern translation only.
        #[arg(long)]
        variant: Option<VariantArg>,
        /// Pattern translation only: which rewrite stage to write out.
        #[arg(long)]
        stage: Option<Stage>,
        /// Circuit translation only.
        #[arg(long)]
        fanin: Option<FanInArg>,
    },
    /// Move every N and E command to the front.
    Standardize(InOut),
    /// Remove Z-dependencies from measurements.
    Shift(InOut),
    /// Drop or move signals of Pauli measurements.
    Simplify(InOut),
    /// Print depth metrics; all of them when no flag is given.
    Depth {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        quantum: bool,
        #[arg(long)]
        classical: bool,
        #[arg(long)]
        preparation: bool,
        #[arg(long)]
        characterized: bool,
        #[arg(long)]
        bound: bool,
    },
    /// Print the flow function and its layers, or NOFLOW.
    Flow(Input),
    /// List influencing paths with their angle words.
    Paths(Input),
    /// Check that two files realize the same operator up to global phase.
    Verify {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        against: PathBuf,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Circuit to pattern, rewrites, and back to a tree fan-in circuit.
    Parallelize(InOut),
    /// Emit a Graphviz graph of a pattern.
    Dot {
        #[command(flatten)]
        io: InOut,
        #[arg(long)]
        graph: Graph,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Target {
    Pattern,
    Circuit,
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    Direct,
    Cluster,
}

/// `wild` is the plain concatenation of gate patterns, `standard` its
/// standardization (the form the path analyses read) and `shifted` the
/// standard pattern after signal shifting.
#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Stage {
    Wild,
    Standard,
    Shifted,
}

#[derive(Clone, Copy, ValueEnum)]
enum FanInArg {
    Linear,
    Tree,
}

#[derive(Clone, Copy, ValueEnum)]
enum Graph {
    Geometry,
    Execution,
}

/// A diagnostic and its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Failure {
        Failure {
            code: 2,
            message: message.into(),
        }
    }

    fn semantic(message: impl Into<String>) -> Failure {
        Failure {
            code: 1,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        match e {
            Error::Parse(_) | Error::Dialect { .. } => Failure::usage(e.to_string()),
            _ => Failure::semantic(e.to_string()),
        }
    }
}

type CliResult<T = ()> = std::result::Result<T, Failure>;

struct Loaded {
    text: String,
    artifact: Artifact,
}

fn load(path: &Path) -> CliResult<Loaded> {
    let text = if path == Path::new("-") {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::usage(format!("reading standard input: {e}")))?;
        s
    } else {
        fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?
    };
    let artifact =
        Artifact::parse(&text).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    Ok(Loaded { text, artifact })
}

fn expect_pattern(l: &Loaded, command: &str) -> CliResult<PatternFile> {
    match &l.artifact {
        Artifact::Pattern(p) => Ok(p.clone()),
        Artifact::Circuit(_) => Err(Failure::usage(format!(
            "`{command}` expects a pattern file"
        ))),
    }
}

fn expect_circuit(l: &Loaded, command: &str) -> CliResult<Circuit> {
    match &l.artifact {
        Artifact::Circuit(c) => Ok(c.circuit.clone()),
        Artifact::Pattern(_) => Err(Failure::usage(format!(
            "`{command}` expects a circuit file"
        ))),
    }
}

/// Prints the artifact, or writes it to `-o` and prints the report.
fn emit(out: &Option<PathBuf>, artifact: &Artifact, report: &Report) -> CliResult {
    emit_text(out, &artifact.serialize(), report)
}

fn emit_text(out: &Option<PathBuf>, text: &str, report: &Report) -> CliResult {
    match out {
        None => print!("{text}"),
        Some(path) => {
            fs::write(path, text)
                .map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
            print!("{report}");
        }
    }
    Ok(())
}

fn rewrite(
    io: &InOut,
    name: &str,
    f: fn(&Pattern) -> Result<(Pattern, RewriteTrace)>,
) -> CliResult {
    let loaded = load(&io.input.input)?;
    let file = expect_pattern(&loaded, name)?;
    let (pattern, trace) = f(&file.pattern)?;
    let mut report = Report::new(name, &loaded.text);
    report.set("rewrite.steps", trace.len());
    report.set("quantum_depth.before", quantum_depth(&file.pattern)?);
    report.set("quantum_depth.after", quantum_depth(&pattern)?);
    let out = Artifact::Pattern(PatternFile { pattern, ..file });
    emit(&io.output, &out, &report)
}

fn translate(
    io: &InOut,
    to: Target,
    variant: Option<VariantArg>,
    stage: Option<Stage>,
    fanin: Option<FanInArg>,
) -> CliResult {
    let loaded = load(&io.input.input)?;
    match to {
        Target::Pattern => {
            if fanin.is_some() {
                return Err(Failure::usage("--fanin applies to --to circuit"));
            }
            let variant = match variant.unwrap_or(VariantArg::Direct) {
                VariantArg::Direct => Variant::Direct,
                VariantArg::Cluster => Variant::Cluster,
            };
            let circuit = expect_circuit(&loaded, "translate --to pattern")?;
            let t = circuit_to_pattern(&circuit, variant)?;
            let stage = stage.unwrap_or(Stage::Shifted);
            let stage_name = stage.to_possible_value().expect("no skipped variants");
            let mut report = Report::new(
                &format!(
                    "translate --to pattern --variant {variant} --stage {}",
                    stage_name.get_name()
                ),
                &loaded.text,
            );
            report.translation(&t.stats);
            let (inputs, outputs) = (t.wire_inputs(), t.wire_outputs());
            let pattern = match stage {
                Stage::Wild => t.wild,
                Stage::Standard => t.standard,
                Stage::Shifted => t.pattern,
            };
            let out = Artifact::Pattern(PatternFile {
                inputs,
                outputs,
                pattern,
            });
            emit(&io.output, &out, &report)
        }
        Target::Circuit => {
            if variant.is_some() || stage.is_some() {
                return Err(Failure::usage(
                    "--variant and --stage apply to --to pattern",
                ));
            }
            let mode = match fanin.unwrap_or(FanInArg::Tree) {
                FanInArg::Linear => FanInMode::Linear,
                FanInArg::Tree => FanInMode::Tree,
            };
            let file = expect_pattern(&loaded, "translate --to circuit")?;
            let cc = pattern_to_circuit(&file.pattern, mode)?;
            let mut report = Report::new(
                &format!("translate --to circuit --fanin {mode}"),
                &loaded.text,
            );
            report.set("output.wires", cc.circuit.n);
            report.set("output.gates", cc.circuit.gates.len());
            report.set("output.circuit_depth", cc.circuit.depth());
            report.set("output.ancillas", cc.ancillas.len());
            report.set("output.fan_ins", cc.fanins.len());
            let max_fan_in = cc.fanins.iter().map(|f| f.sources.len()).max();
            report.set("output.max_fan_in", max_fan_in.unwrap_or(0));
            let max_height = cc.fanins.iter().map(|f| f.height).max();
            report.set("output.max_fan_in_height", max_height.unwrap_or(0));
            let wire = |q: &mbqc::Qubit| cc.wire_of[q];
            let out = Artifact::Circuit(CircuitFile {
                inputs: file.inputs.iter().map(wire).collect(),
                outputs: file.outputs.iter().map(wire).collect(),
                circuit: cc.circuit.clone(),
            });
            emit(&io.output, &out, &report)
        }
    }
}

struct DepthFlags {
    quantum: bool,
    classical: bool,
    preparation: bool,
    characterized: bool,
    bound: bool,
}

fn depth(input: &Input, flags: DepthFlags) -> CliResult {
    let loaded = load(&input.input)?;
    let requested = [
        flags.quantum,
        flags.classical,
        flags.preparation,
        flags.characterized,
        flags.bound,
    ];
    let count = requested.iter().filter(|&&b| b).count();
    let mut report = Report::new("depth", &loaded.text);
    let mut values: Vec<String> = Vec::new();
    match &loaded.artifact {
        Artifact::Circuit(f) => {
            if count > 0 {
                return Err(Failure::usage("depth flags apply to pattern files"));
            }
            report.set("circuit_depth", f.circuit.depth());
            report.set("d_prime", circuit_influencing_paths(&f.circuit)?.1);
        }
        Artifact::Pattern(f) => {
            let p = &f.pattern;
            let all = count == 0;
            let mut put = |key: &str, value: CliResult<String>| -> CliResult {
                match value {
                    Ok(v) => {
                        values.push(v.clone());
                        report.set(key, v);
                    }
                    Err(e) if !all => return Err(e),
                    Err(_) => report.set(key, "n/a"),
                }
                Ok(())
            };
            if all || flags.quantum {
                put("quantum_depth", Ok(quantum_depth(p)?.to_string()))?;
            }
            if all || flags.classical {
                put(
                    "classical_depth",
                    classical_depth(p, None)
                        .map(|d| d.to_string())
                        .map_err(Failure::from),
                )?;
            }
            if all || flags.preparation {
                put(
                    "preparation_depth",
                    Ok(preparation_depth(&p.geometry()).0.to_string()),
                )?;
            }
            if all || flags.characterized || flags.bound {
                let report = characterized_depth(p).map_err(Failure::from);
                if all || flags.characterized {
                    let v = report.as_ref().map(|r| r.characterized_depth.to_string());
                    put(
                        "characterized_depth",
                        v.map_err(|e| Failure::semantic(e.message.clone())),
                    )?;
                }
                if all || flags.bound {
                    let v = report.as_ref().map(|r| r.quantum_depth_bound.to_string());
                    put(
                        "quantum_depth_bound",
                        v.map_err(|e| Failure::semantic(e.message.clone())),
                    )?;
                }
            }
        }
    }
    if count == 1 {
        println!("{}", values[0]);
    } else {
        print!("{report}");
    }
    Ok(())
}

fn flow(input: &Input) -> CliResult {
    let loaded = load(&input.input)?;
    let file = expect_pattern(&loaded, "flow")?;
    let flow = match find_flow(&file.pattern.geometry()) {
        Ok(flow) => flow,
        Err(e @ (Error::NoFlow | Error::UnequalInputOutput { .. })) => {
            println!("NOFLOW");
            return Err(Failure::semantic(e.to_string()));
        }
        Err(e) => return Err(e.into()),
    };
    for (a, b) in &flow.f {
        println!("f({a}) = {b}");
    }
    println!("layers = {}", flow.depth());
    for (i, layer) in flow.layers.iter().enumerate() {
        let vs: Vec<String> = layer.iter().map(ToString::to_string).collect();
        println!("layer {i} = {{{}}}", vs.join(", "));
    }
    Ok(())
}

fn paths(input: &Input) -> CliResult {
    let loaded = load(&input.input)?;
    match &loaded.artifact {
        Artifact::Pattern(f) => {
            let report = characterized_depth(&f.pattern)?;
            for d in &report.paths {
                println!(
                    "{}  word={} simplified=\"{}\" depth={}",
                    d.path, d.word, d.simplified, d.depth
                );
            }
            println!("characterized_depth = {}", report.characterized_depth);
        }
        Artifact::Circuit(f) => {
            let (paths, d_prime) = circuit_influencing_paths(&f.circuit)?;
            for p in &paths {
                println!(
                    "{p}  word={} simplified=\"{}\" longest={}",
                    p.word, p.simplified, p.longest
                );
            }
            println!("d_prime = {d_prime}");
        }
    }
    Ok(())
}

/// Determinism of a pattern when its branches can be enumerated.
fn determinism(
    report: &mut Report,
    prefix: &str,
    a: &Artifact,
    angles: &SimAngles,
) -> CliResult<bool> {
    let Artifact::Pattern(f) = a else {
        return Ok(true);
    };
    match check_determinism(&f.pattern, angles) {
        Ok(d) => {
            report.determinism(prefix, &d);
            Ok(d.strong)
        }
        Err(Error::Resource(_)) => {
            report.set(format!("{prefix}.determinism"), "unchecked");
            Ok(true)
        }
        Err(e) => Err(e.into()),
    }
}

fn verify(input: &Input, against: &Path, tol: f64) -> CliResult {
    let a = load(&input.input)?;
    let b = load(against)?;
    let angles = SimAngles::default();
    let mut report = Report::new(&format!("verify --tol {tol:e}"), &a.text);
    report.set("against_sha256", sha256_hex(b.text.as_bytes()));
    report.set("input.kind", a.artifact.kind());
    report.set("against.kind", b.artifact.kind());
    let strong_a = determinism(&mut report, "input", &a.artifact, &angles)?;
    let strong_b = determinism(&mut report, "against", &b.artifact, &angles)?;
    let (u, v) = (a.artifact.operator(&angles)?, b.artifact.operator(&angles)?);
    let same = u.shape() == v.shape() && equiv_up_to_phase(&u, &v, tol)?;
    report.set(
        "operator.shape",
        format!("{}x{} vs {}x{}", u.nrows(), u.ncols(), v.nrows(), v.ncols()),
    );
    report.set("equivalent", same);
    print!("{report}");
    if same && strong_a && strong_b {
        Ok(())
    } else {
        Err(Failure::semantic("operators differ"))
    }
}

fn parallelize(io: &InOut) -> CliResult {
    let loaded = load(&io.input.input)?;
    let circuit = expect_circuit(&loaded, "parallelize")?;
    let par = parallelize_circuit(&circuit)?;
    let mut report = Report::new("parallelize", &loaded.text);
    report.parallel(&par.report);
    let out = Artifact::Circuit(CircuitFile {
        circuit: par.coherent.circuit,
        inputs: par.logical_inputs,
        outputs: par.logical_outputs,
    });
    emit(&io.output, &out, &report)
}

fn dot(io: &InOut, graph: Graph) -> CliResult {
    let loaded = load(&io.input.input)?;
    let file = expect_pattern(&loaded, "dot")?;
    let (name, text) = match graph {
        Graph::Geometry => {
            let g = file.pattern.geometry();
            let (_, coloring) = preparation_depth(&g);
            ("geometry", geometry_dot(&g, Some(&coloring)))
        }
        Graph::Execution => (
            "execution",
            execution_dot(&execution_digraph(&file.pattern)?),
        ),
    };
    let report = Report::new(&format!("dot --graph {name}"), &loaded.text);
    emit_text(&io.output, &text, &report)
}

fn run(cli: Cli) -> CliResult {
    match cli.cmd {
        Cmd::Translate {
            io,
            to,
            variant,
            stage,
            fanin,
        } => translate(&io, to, variant, stage, fanin),
        Cmd::Standardize(io) => rewrite(&io, "standardize", standardize),
        Cmd::Shift(io) => rewrite(&io, "shift", signal_shift),
        Cmd::Simplify(io) => rewrite(&io, "simplify", pauli_simplify),
        Cmd::Depth {
            input,
            quantum,
            classical,
            preparation,
            characterized,
            bound,
        } => depth(
            &input,
            DepthFlags {
                quantum,
                classical,
                preparation,
                characterized,
                bound,
            },
        ),
        Cmd::Flow(input) => flow(&input),
        Cmd::Paths(input) => paths(&input),
        Cmd::Verify {
            input,
            against,
            tol,
        } => verify(&input, &against, tol),
        Cmd::Parallelize(io) => parallelize(&io),
        Cmd::Dot { io, graph } => dot(&io, graph),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("mbqc: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
