//! Line-oriented text formats for circuits and patterns.
//!
//! ```text
//! circuit 2 source
//! J 0 1/4
//! CZ 0 1
//! ```
//!
//! ```text
//! pattern V=[1,2] I=[1] O=[2]
//! N 2
//! E 1 2
//! M 1 a=7/4 s=[] t=[]
//! X 2 s=[1]
//! ```
//!
//! Angles are written as reduced fractions of π. `#` starts a comment.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::angle::Angle;
use crate::circuit::{Circuit, Dialect, Gate};
use crate::error::ParseError;
use crate::pattern::{Command, Edge, Pattern, Qubit};
use crate::signal::Signal;

type PResult<T> = Result<T, ParseError>;

/// Non-empty, comment-stripped lines with their 1-based numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.split('#').next().unwrap_or("");
        let toks: Vec<&str> = line.split_whitespace().collect();
        (!toks.is_empty()).then_some((i + 1, toks))
    })
}

fn int<T: std::str::FromStr>(tok: &str, line: usize, what: &str) -> PResult<T> {
    tok.parse()
        .map_err(|_| ParseError::syntax(line, format!("expected {what}, found `{tok}`")))
}

fn arity(toks: &[&str], n: usize, line: usize) -> PResult<()> {
    if toks.len() != n {
        return Err(ParseError::syntax(
            line,
            format!("`{}` takes {} operand(s)", toks[0], n - 1),
        ));
    }
    Ok(())
}

/// A circuit together with the wires carrying its logical input and output,
/// in operator factor order. Both default to all wires in index order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CircuitFile {
    pub circuit: Circuit,
    pub inputs: Vec<u32>,
    pub outputs: Vec<u32>,
}

impl CircuitFile {
    pub fn new(circuit: Circuit) -> CircuitFile {
        let all: Vec<u32> = (0..circuit.n).collect();
        CircuitFile {
            circuit,
            inputs: all.clone(),
            outputs: all,
        }
    }

    /// True when the header lists differ from the all-wires default.
    pub fn has_logical_wires(&self) -> bool {
        let all: Vec<u32> = (0..self.circuit.n).collect();
        self.inputs != all || self.outputs != all
    }
}

pub fn parse_circuit(text: &str) -> PResult<Circuit> {
    parse_circuit_file(text).map(|f| f.circuit)
}

fn ordered_list(tok: &str, key: &str, line: usize) -> PResult<Vec<Qubit>> {
    let list = id_list(keyed(tok, key, line)?, line)?;
    let distinct: BTreeSet<Qubit> = list.iter().copied().collect();
    if distinct.len() != list.len() {
        return Err(ParseError::syntax(
            line,
            format!("repeated entry in `{key}=` list"),
        ));
    }
    Ok(list)
}

/// Parses a circuit whose header may end in `I=[..] O=[..]`, naming the
/// logical input and output wires of a circuit with ancillas.
pub fn parse_circuit_file(text: &str) -> PResult<CircuitFile> {
    let mut lines = content_lines(text);
    let (hline, header) = lines
        .next()
        .ok_or_else(|| ParseError::syntax(1, "missing `circuit` header"))?;
    let usage = "header must be `circuit <n> [source|target] [I=<list> O=<list>]`";
    if header[0] != "circuit" || header.len() < 2 {
        return Err(ParseError::syntax(hline, usage));
    }
    let (head, io) = match header.len() {
        2 | 3 => (&header[..], None),
        4 | 5 => (
            &header[..header.len() - 2],
            Some(&header[header.len() - 2..]),
        ),
        _ => return Err(ParseError::syntax(hline, usage)),
    };
    let n: u32 = int(header[1], hline, "qubit count")?;
    let declared = match head.get(2) {
        None => None,
        Some(&"source") => Some(Dialect::Source),
        Some(&"target") => Some(Dialect::Target),
        Some(other) => {
            return Err(ParseError::syntax(
                hline,
                format!("unknown dialect `{other}`"),
            ))
        }
    };
    let (inputs, outputs) = match io {
        None => ((0..n).collect(), (0..n).collect()),
        Some(io) => {
            let wires = |tok: &str, key: &str| -> PResult<Vec<u32>> {
                let list: Vec<u32> = ordered_list(tok, key, hline)?
                    .into_iter()
                    .map(|q| q.0)
                    .collect();
                if let Some(w) = list.iter().find(|&&w| w >= n) {
                    return Err(ParseError::syntax(hline, format!("wire {w} out of range")));
                }
                Ok(list)
            };
            (wires(io[0], "I")?, wires(io[1], "O")?)
        }
    };
    let mut gates = Vec::new();
    for (line, toks) in lines {
        let wire = |k: usize| -> PResult<u32> {
            let q: u32 = int(toks[k], line, "wire index")?;
            if q >= n {
                return Err(ParseError::syntax(line, format!("wire {q} out of range")));
            }
            Ok(q)
        };
        let gate = match toks[0] {
            "J" | "ZP" => {
                arity(&toks, 3, line)?;
                let a = Angle::parse(toks[2]).map_err(|e| e.at_line(line))?;
                if toks[0] == "J" {
                    Gate::J(wire(1)?, a)
                } else {
                    Gate::Zp(wire(1)?, a)
                }
            }
            "H" | "MZ" => {
                arity(&toks, 2, line)?;
                if toks[0] == "H" {
                    Gate::H(wire(1)?)
                } else {
                    Gate::Mz(wire(1)?)
                }
            }
            "CZ" | "CX" => {
                arity(&toks, 3, line)?;
                let (a, b) = (wire(1)?, wire(2)?);
                if a == b {
                    return Err(ParseError::syntax(line, "two-qubit gate on a single wire"));
                }
                if toks[0] == "CZ" {
                    Gate::Cz(a, b)
                } else {
                    Gate::Cx {
                        control: a,
                        target: b,
                    }
                }
            }
            other => return Err(ParseError::syntax(line, format!("unknown gate `{other}`"))),
        };
        if declared == Some(Dialect::Source) && !gate.allowed_in(Dialect::Source) {
            return Err(ParseError::Dialect {
                line,
                gate: toks[0].to_string(),
            });
        }
        if declared == Some(Dialect::Target) && !gate.allowed_in(Dialect::Target) {
            return Err(ParseError::Dialect {
                line,
                gate: toks[0].to_string(),
            });
        }
        gates.push(gate);
    }
    let dialect = declared.unwrap_or_else(|| {
        if gates.iter().all(|g| g.allowed_in(Dialect::Source)) {
            Dialect::Source
        } else {
            Dialect::Target
        }
    });
    if declared.is_none() {
        // An undeclared circuit mixing J with target gates fits neither dialect.
        if let Some(g) = gates.iter().find(|g| !g.allowed_in(dialect)) {
            return Err(ParseError::Dialect {
                line: hline,
                gate: g.mnemonic().to_string(),
            });
        }
    }
    Ok(CircuitFile {
        circuit: Circuit { n, gates, dialect },
        inputs,
        outputs,
    })
}

pub fn serialize_circuit(c: &Circuit) -> String {
    serialize_circuit_file(&CircuitFile::new(c.clone()))
}

/// Writes the `I=`/`O=` header lists only when they differ from the default.
pub fn serialize_circuit_file(file: &CircuitFile) -> String {
    let c = &file.circuit;
    let mut out = format!("circuit {} {}", c.n, c.dialect);
    if file.has_logical_wires() {
        let join = |ws: &[u32]| ws.iter().map(u32::to_string).collect::<Vec<_>>().join(",");
        let _ = write!(
            out,
            " I=[{}] O=[{}]",
            join(&file.inputs),
            join(&file.outputs)
        );
    }
    out.push('\n');
    for g in &c.gates {
        let _ = match g {
            Gate::J(q, a) => writeln!(out, "J {q} {a}"),
            Gate::Zp(q, a) => writeln!(out, "ZP {q} {a}"),
            Gate::Cz(a, b) => writeln!(out, "CZ {a} {b}"),
            Gate::H(q) => writeln!(out, "H {q}"),
            Gate::Cx { control, target } => writeln!(out, "CX {control} {target}"),
            Gate::Mz(q) => writeln!(out, "MZ {q}"),
        };
    }
    out
}

/// Parses `[1,2,3]`, `1,2,3`, `[]` or the empty string.
fn id_list(body: &str, line: usize) -> PResult<Vec<Qubit>> {
    let inner = match (body.strip_prefix('['), body.strip_suffix(']')) {
        (Some(_), Some(_)) if body.len() >= 2 => &body[1..body.len() - 1],
        (None, None) => body,
        _ => return Err(ParseError::syntax(line, format!("malformed list `{body}`"))),
    };
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    inner
        .split(',')
        .map(|t| int::<u32>(t.trim(), line, "qubit id").map(Qubit))
        .collect()
}

fn keyed<'a>(tok: &'a str, key: &str, line: usize) -> PResult<&'a str> {
    tok.strip_prefix(key)
        .and_then(|r| r.strip_prefix('='))
        .ok_or_else(|| ParseError::syntax(line, format!("expected `{key}=...`, found `{tok}`")))
}

fn signal_arg(toks: &[&str], key: &str, line: usize) -> PResult<Signal> {
    let prefix = format!("{key}=");
    match toks.iter().find(|t| t.starts_with(&prefix)) {
        Some(tok) => {
            let body = keyed(tok, key, line)?;
            if !(body.starts_with('[') && body.ends_with(']')) {
                return Err(ParseError::syntax(
                    line,
                    format!("malformed signal `{tok}`"),
                ));
            }
            Ok(id_list(body, line)?.into_iter().collect())
        }
        None => Ok(Signal::empty()),
    }
}

fn check_keys(toks: &[&str], allowed: &[&str], line: usize) -> PResult<()> {
    let mut seen = BTreeSet::new();
    for t in toks {
        let key = t.split('=').next().unwrap_or("");
        if !t.contains('=') || !allowed.contains(&key) || !seen.insert(key) {
            return Err(ParseError::syntax(
                line,
                format!("unexpected argument `{t}`"),
            ));
        }
    }
    Ok(())
}

/// A pattern with its input and output qubits in the order the header
/// lists them, which fixes the factor order of the realized operator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternFile {
    pub pattern: Pattern,
    pub inputs: Vec<Qubit>,
    pub outputs: Vec<Qubit>,
}

impl PatternFile {
    /// Inputs and outputs in ascending order.
    pub fn new(pattern: Pattern) -> PatternFile {
        PatternFile {
            inputs: pattern.inputs.iter().copied().collect(),
            outputs: pattern.outputs.iter().copied().collect(),
            pattern,
        }
    }
}

pub fn parse_pattern(text: &str) -> PResult<Pattern> {
    parse_pattern_file(text).map(|f| f.pattern)
}

pub fn parse_pattern_file(text: &str) -> PResult<PatternFile> {
    let mut lines = content_lines(text);
    let (hline, header) = lines
        .next()
        .ok_or_else(|| ParseError::syntax(1, "missing `pattern` header"))?;
    if header[0] != "pattern" || header.len() != 4 {
        return Err(ParseError::syntax(
            hline,
            "header must be `pattern V=<list> I=<list> O=<list>`",
        ));
    }
    let qubits: BTreeSet<Qubit> = id_list(keyed(header[1], "V", hline)?, hline)?
        .into_iter()
        .collect();
    let input_order = ordered_list(header[2], "I", hline)?;
    let output_order = ordered_list(header[3], "O", hline)?;
    let inputs = input_order.iter().copied().collect();
    let outputs = output_order.iter().copied().collect();
    let mut commands = Vec::new();
    for (line, toks) in lines {
        let q = |k: usize| -> PResult<Qubit> {
            toks.get(k)
                .ok_or_else(|| ParseError::syntax(line, "missing qubit"))
                .and_then(|t| int::<u32>(t, line, "qubit id"))
                .map(Qubit)
        };
        let cmd = match toks[0] {
            "N" => {
                arity(&toks, 2, line)?;
                Command::Prep(q(1)?)
            }
            "E" => {
                arity(&toks, 3, line)?;
                let (a, b) = (q(1)?, q(2)?);
                if a == b {
                    return Err(ParseError::syntax(line, "E needs two distinct qubits"));
                }
                Command::Ent(Edge::new(a, b))
            }
            "M" => {
                check_keys(&toks[2.min(toks.len())..], &["a", "s", "t"], line)?;
                let angle = match toks.iter().skip(2).find(|t| t.starts_with("a=")) {
                    Some(tok) => {
                        Angle::parse(keyed(tok, "a", line)?).map_err(|e| e.at_line(line))?
                    }
                    None => return Err(ParseError::syntax(line, "M needs an angle `a=`")),
                };
                Command::Meas {
                    q: q(1)?,
                    angle,
                    s: signal_arg(&toks[2..], "s", line)?,
                    t: signal_arg(&toks[2..], "t", line)?,
                }
            }
            "X" | "Z" => {
                check_keys(&toks[2.min(toks.len())..], &["s"], line)?;
                let s = signal_arg(&toks[2.min(toks.len())..], "s", line)?;
                if toks[0] == "X" {
                    Command::CorrX { q: q(1)?, s }
                } else {
                    Command::CorrZ { q: q(1)?, s }
                }
            }
            "S" => {
                check_keys(&toks[2.min(toks.len())..], &["t"], line)?;
                Command::Shift {
                    q: q(1)?,
                    t: signal_arg(&toks[2.min(toks.len())..], "t", line)?,
                }
            }
            other => {
                return Err(ParseError::syntax(
                    line,
                    format!("unknown command `{other}`"),
                ))
            }
        };
        commands.push(cmd);
    }
    Ok(PatternFile {
        pattern: Pattern {
            qubits,
            inputs,
            outputs,
            commands,
        },
        inputs: input_order,
        outputs: output_order,
    })
}

fn write_list<'a>(out: &mut String, key: &str, s: impl IntoIterator<Item = &'a Qubit>) {
    let body: Vec<String> = s.into_iter().map(|q| q.to_string()).collect();
    let _ = write!(out, " {key}=[{}]", body.join(","));
}

pub fn serialize_pattern(p: &Pattern) -> String {
    serialize_pattern_file(&PatternFile::new(p.clone()))
}

pub fn serialize_pattern_file(file: &PatternFile) -> String {
    let p = &file.pattern;
    let mut out = String::from("pattern");
    write_list(&mut out, "V", &p.qubits);
    write_list(&mut out, "I", &file.inputs);
    write_list(&mut out, "O", &file.outputs);
    out.push('\n');
    for c in &p.commands {
        let _ = match c {
            Command::Prep(q) => writeln!(out, "N {q}"),
            Command::Ent(e) => writeln!(out, "E {} {}", e.lo(), e.hi()),
            Command::Meas { q, angle, s, t } => writeln!(out, "M {q} a={angle} s={s} t={t}"),
            Command::CorrX { q, s } => writeln!(out, "X {q} s={s}"),
            Command::CorrZ { q, s } => writeln!(out, "Z {q} s={s}"),
            Command::Shift { q, t } => writeln!(out, "S {q} t={t}"),
        };
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::angle::PauliClass;

    #[test]
    fn parses_small_circuit() {
        let c = parse_circuit("circuit 2\nJ 0 1/4\nCZ 0 1").unwrap();
        assert_eq!(c.n, 2);
        assert_eq!(c.gates, vec![Gate::J(0, Angle::new(1, 4)), Gate::Cz(0, 1)]);
        assert_eq!(c.dialect, Dialect::Source);
    }

    #[test]
    fn empty_circuit() {
        let c = parse_circuit("circuit 1").unwrap();
        assert_eq!(c.n, 1);
        assert!(c.gates.is_empty());
    }

    #[test]
    fn source_header_rejects_cx() {
        let e = parse_circuit("circuit 2 source\nCX 0 1").unwrap_err();
        assert!(matches!(e, ParseError::Dialect { line: 2, .. }));
    }

    #[test]
    fn syntax_errors_carry_line_numbers() {
        let e = parse_circuit("circuit 2\n# note\nJ 0 abc").unwrap_err();
        assert_eq!(e.line(), 3);
        let e = parse_circuit("circuit 2\nCZ 0 5").unwrap_err();
        assert_eq!(e.line(), 2);
    }

    #[test]
    fn circuit_round_trip() {
        let text = "circuit 3 target\nH 0\nZP 1 3/4\nCX 0 2\nCZ 1 2\nMZ 0\n";
        let c = parse_circuit(text).unwrap();
        assert_eq!(serialize_circuit(&c), text);
        assert_eq!(parse_circuit(&serialize_circuit(&c)).unwrap(), c);
    }

    #[test]
    fn pattern_round_trip_and_classes() {
        let text = "pattern V=[1,2] I=[1] O=[2]\nN 2\nE 1 2\nM 1 a=1/2 s=[] t=[]\nX 2 s=[1]\n";
        let p = parse_pattern(text).unwrap();
        assert_eq!(serialize_pattern(&p), text);
        assert!(p.validate().ok);
        match &p.commands[2] {
            Command::Meas { angle, .. } => assert_eq!(angle.class(), PauliClass::Y),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn malformed_signal_is_syntax_error() {
        let e = parse_pattern("pattern V=[1] I=[] O=[]\nN 1\nM 1 a=0/1 s=[1,\n").unwrap_err();
        assert!(matches!(e, ParseError::Syntax { line: 3, .. }));
        let e = parse_pattern("pattern V=[1] I=[] O=[]\nX 1 s=1\n").unwrap_err();
        assert!(matches!(e, ParseError::Syntax { line: 2, .. }));
    }

    #[test]
    fn header_order_is_kept() {
        let text = "pattern V=[0,1,5,7] I=[1,0] O=[7,5]\nE 0 5\nE 1 7\n";
        let f = parse_pattern_file(text).unwrap();
        assert_eq!(f.inputs, vec![Qubit(1), Qubit(0)]);
        assert_eq!(f.outputs, vec![Qubit(7), Qubit(5)]);
        assert_eq!(serialize_pattern_file(&f), text);
        assert!(parse_pattern("pattern V=[0] I=[0,0] O=[]").is_err());
    }

    #[test]
    fn circuit_logical_wires() {
        let text = "circuit 3 target I=[2] O=[0]\nH 0\n";
        let f = parse_circuit_file(text).unwrap();
        assert_eq!((f.inputs.clone(), f.outputs.clone()), (vec![2], vec![0]));
        assert_eq!(serialize_circuit_file(&f), text);
        let plain = parse_circuit_file("circuit 2 I=[0,1] O=[0,1]").unwrap();
        assert!(!plain.has_logical_wires());
        assert_eq!(serialize_circuit(&plain.circuit), "circuit 2 source\n");
        assert!(parse_circuit_file("circuit 2 I=[2] O=[0]").is_err());
    }
}
