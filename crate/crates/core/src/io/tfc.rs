use std::collections::HashMap;
use std::fmt::Write as _;

use crate::bits::Bits;
use crate::error::{Error, Result};
use crate::model::{Circuit, Gate};

/// A circuit with line names and free-form header comments.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CircuitFile {
    pub names: Vec<String>,
    pub circuit: Circuit,
    /// Header lines without the leading `#`.
    pub comments: Vec<String>,
}

impl CircuitFile {
    /// Default names: `a`..`z` up to 26 lines, `x0`, `x1`, … beyond.
    pub fn new(circuit: Circuit) -> Self {
        let w = circuit.width();
        let names =
            (0..w).map(|i| if w <= 26 { ((b'a' + i as u8) as char).to_string() } else { format!("x{i}") }).collect();
        CircuitFile { names, circuit, comments: Vec::new() }
    }

    pub fn with_comment(mut self, c: impl Into<String>) -> Self {
        self.comments.push(c.into());
        self
    }
}

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn name_list(s: &str) -> Vec<String> {
    s.split(',').map(str::trim).filter(|t| !t.is_empty()).map(String::from).collect()
}

/// Text form: `.v` names, `.i` inputs, `.o` outputs, `.c` zero-initialized lines,
/// `.g` garbage lines, then `BEGIN`, one `tN` gate per line, `END`.
pub fn emit_tfc(file: &CircuitFile) -> String {
    let c = &file.circuit;
    let names = &file.names;
    let n = c.significant_inputs();
    let outs = c.output_lines(c.significant_outputs().map_or(c.width(), |o| o.len()));
    let join = |ls: &mut dyn Iterator<Item = usize>| ls.map(|l| names[l].as_str()).collect::<Vec<_>>().join(",");
    let mut s = String::new();
    for com in &file.comments {
        let _ = writeln!(s, "# {com}");
    }
    let _ = writeln!(s, ".v {}", join(&mut (0..c.width())));
    let _ = writeln!(s, ".i {}", join(&mut (0..n)));
    let _ = writeln!(s, ".o {}", join(&mut outs.iter().copied()));
    if c.width() > n {
        let _ = writeln!(s, ".c {}", join(&mut (n..c.width())));
    }
    let out_set = Bits::from_lines(outs.iter().copied());
    let garbage: Vec<usize> = (0..c.width()).filter(|&l| !out_set.contains(l)).collect();
    if !garbage.is_empty() {
        let _ = writeln!(s, ".g {}", join(&mut garbage.into_iter()));
    }
    if c.dirty_ancilla() {
        let _ = writeln!(s, ".dirty");
    }
    let _ = writeln!(s, "BEGIN");
    for g in c.gates() {
        let mut parts: Vec<String> = g
            .controls()
            .iter()
            .map(|l| if g.neg().contains(l) { format!("{}'", names[l]) } else { names[l].clone() })
            .collect();
        parts.push(names[g.target()].clone());
        let _ = writeln!(s, "t{} {}", parts.len(), parts.join(","));
    }
    let _ = writeln!(s, "END");
    s
}

/// Parse the text form written by [`emit_tfc`]. Lines are reordered so that `.i` lines come
/// first in their listed order, followed by the remaining `.v` lines.
pub fn parse_tfc(text: &str) -> Result<CircuitFile> {
    let mut vars: Option<Vec<String>> = None;
    let mut inputs: Option<Vec<String>> = None;
    let mut outputs: Option<Vec<String>> = None;
    let mut constants: Option<(usize, Vec<String>)> = None;
    let mut comments = Vec::new();
    let mut dirty = false;
    let mut raw_gates: Vec<(usize, Vec<(String, bool)>)> = Vec::new();
    let mut ended = false;
    for (idx, raw) in text.lines().enumerate() {
        let ln = idx + 1;
        let (body, comment) = match raw.split_once('#') {
            Some((b, c)) => (b.trim(), Some(c.trim())),
            None => (raw.trim(), None),
        };
        if body.is_empty() {
            if let (Some(c), true) = (comment, vars.is_none()) {
                comments.push(c.to_string());
            }
            continue;
        }
        if ended {
            return Err(perr(ln, "text after END"));
        }
        let (head, rest) = body.split_once(char::is_whitespace).map_or((body, ""), |(h, r)| (h, r.trim()));
        match head {
            ".v" => vars = Some(name_list(rest)),
            ".i" => inputs = Some(name_list(rest)),
            ".o" => outputs = Some(name_list(rest)),
            ".c" => constants = Some((ln, name_list(rest))),
            ".g" => {}
            ".dirty" => dirty = true,
            "BEGIN" => {}
            "END" => ended = true,
            t if t.starts_with('t') => {
                let k: usize = t[1..].parse().map_err(|_| perr(ln, format!("bad gate size '{t}'")))?;
                let operands: Vec<(String, bool)> = name_list(rest)
                    .into_iter()
                    .map(|op| match op.strip_suffix('\'') {
                        Some(base) => (base.to_string(), true),
                        None => (op, false),
                    })
                    .collect();
                if operands.len() != k || k == 0 {
                    return Err(perr(ln, format!("gate {t} lists {} lines", operands.len())));
                }
                raw_gates.push((ln, operands));
            }
            other => return Err(perr(ln, format!("unknown directive '{other}'"))),
        }
    }
    let vars = vars.ok_or_else(|| perr(1, "missing .v"))?;
    let inputs = inputs.unwrap_or_else(|| vars.clone());
    let mut seen = HashMap::new();
    for (i, v) in vars.iter().enumerate() {
        if seen.insert(v.clone(), i).is_some() {
            return Err(perr(1, format!("line name '{v}' repeated")));
        }
    }
    let lookup =
        |name: &str, ln: usize| seen.get(name).copied().ok_or_else(|| perr(ln, format!("unknown line '{name}'")));

    // input lines first
    let mut order: Vec<usize> = Vec::with_capacity(vars.len());
    for name in &inputs {
        let l = lookup(name, 1)?;
        if order.contains(&l) {
            return Err(perr(1, format!("input '{name}' repeated")));
        }
        order.push(l);
    }
    let rest: Vec<usize> = (0..vars.len()).filter(|l| !order.contains(l)).collect();
    order.extend(rest);
    let mut pos = vec![0; vars.len()];
    for (new, &old) in order.iter().enumerate() {
        pos[old] = new;
    }
    if let Some((ln, cs)) = &constants {
        for name in cs {
            if pos[lookup(name, *ln)?] < inputs.len() {
                return Err(perr(*ln, format!("input '{name}' marked constant")));
            }
        }
    }

    let mut circuit = Circuit::new(vars.len());
    for (ln, ops) in raw_gates {
        let (tname, tneg) = ops.last().expect("nonempty").clone();
        if tneg {
            return Err(perr(ln, "target cannot be a negative control"));
        }
        let t = pos[lookup(&tname, ln)?];
        let (mut p, mut q) = (Bits::EMPTY, Bits::EMPTY);
        for (name, neg) in &ops[..ops.len() - 1] {
            let l = pos[lookup(name, ln)?];
            if l == t {
                return Err(perr(ln, "target among controls"));
            }
            if p.contains(l) || q.contains(l) {
                return Err(perr(ln, format!("control '{name}' repeated")));
            }
            if *neg {
                q.insert(l)
            } else {
                p.insert(l)
            }
        }
        circuit.push(Gate::new(t, p, q).map_err(|e| perr(ln, e.to_string()))?).map_err(|e| perr(ln, e.to_string()))?;
    }
    circuit.set_significant_inputs(inputs.len());
    if let Some(outs) = outputs {
        let lines = outs.iter().map(|o| lookup(o, 1).map(|l| pos[l])).collect::<Result<Vec<_>>>()?;
        if lines.len() != circuit.width() || lines.iter().enumerate().any(|(i, &l)| i != l) {
            circuit.set_significant_outputs(Some(lines));
        }
    }
    circuit.set_dirty_ancilla(dirty);
    let names = order.iter().map(|&l| vars[l].clone()).collect();
    Ok(CircuitFile { names, circuit, comments })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const SMALL: &str = "# demo\n.v a,b,c\n.i a,b,c\n.o a,b,c\nBEGIN\nt1 a\nt3 a,b',c\nEND\n";

    #[test]
    fn grammar_basics() {
        let f = parse_tfc(SMALL).unwrap();
        assert_eq!(f.circuit.gates(), &[Gate::not(0), Gate::e(2, &[0], &[1])]);
        assert_eq!(f.comments, vec!["demo".to_string()]);
        assert_eq!(emit_tfc(&f), SMALL);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let bad = ".v a,b\nBEGIN\nt2 a,q\nEND\n";
        assert!(matches!(parse_tfc(bad), Err(Error::Parse { line: 3, .. })));
        let bad = ".v a,b\nt2 b,b\n";
        assert!(matches!(parse_tfc(bad), Err(Error::Parse { line: 2, .. })));
        let bad = ".v a,b\nt2 a,b'\n";
        assert!(matches!(parse_tfc(bad), Err(Error::Parse { line: 2, .. })));
        let bad = ".v a,b\nt3 a,b\n";
        assert!(matches!(parse_tfc(bad), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_tfc(".v a\nfoo\n"), Err(Error::Parse { line: 2, .. })));
    }

    #[test]
    fn inputs_move_to_the_front() {
        let text = ".v z,a,b\n.i a,b\n.o z\n.c z\nt3 a,b,z\n";
        let f = parse_tfc(text).unwrap();
        assert_eq!(f.names, vec!["a", "b", "z"]);
        assert_eq!(f.circuit.gates(), &[Gate::toffoli(0, 1, 2)]);
        assert_eq!(f.circuit.significant_inputs(), 2);
        assert_eq!(f.circuit.significant_outputs(), Some(&[2usize][..]));
    }

    fn gate_strategy(n: usize) -> impl Strategy<Value = Gate> {
        (0..n, proptest::collection::vec(0..3u8, n)).prop_map(move |(t, roles)| {
            let pos: Vec<usize> = (0..n).filter(|&l| l != t && roles[l] == 1).collect();
            let neg: Vec<usize> = (0..n).filter(|&l| l != t && roles[l] == 2).collect();
            Gate::e(t, &pos, &neg)
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]
        #[test]
        fn round_trip(gates in proptest::collection::vec(gate_strategy(7), 0..40), extra in 0usize..3) {
            let mut c = Circuit::from_gates(7, gates).unwrap();
            c.set_significant_inputs(7 - extra);
            let file = CircuitFile::new(c);
            let text = emit_tfc(&file);
            let back = parse_tfc(&text).unwrap();
            prop_assert_eq!(&back, &file);
            prop_assert_eq!(emit_tfc(&back), text);
        }
    }
}
