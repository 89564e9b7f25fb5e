use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::model::BooleanMapping;
use crate::perm::Permutation;

/// Truth table with optional don't-care output bits.
///
/// Bit strings are written variable by variable: character `j` is line `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruthTableFile {
    pub inputs: usize,
    pub outputs: usize,
    /// Output code of every input code.
    pub rows: Vec<u64>,
    /// Don't-care bits of every row.
    pub dont_care: Vec<u64>,
    pub comments: Vec<String>,
}

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn bits_to_string(v: u64, width: usize, dc: u64) -> String {
    (0..width)
        .map(|j| {
            if (dc >> j) & 1 == 1 {
                '-'
            } else if (v >> j) & 1 == 1 {
                '1'
            } else {
                '0'
            }
        })
        .collect()
}

fn parse_bits(s: &str, width: usize, ln: usize, allow_dc: bool) -> Result<(u64, u64)> {
    if s.chars().count() != width {
        return Err(perr(ln, format!("'{s}' has {} bits, expected {width}", s.chars().count())));
    }
    let (mut v, mut dc) = (0u64, 0u64);
    for (j, ch) in s.chars().enumerate() {
        match ch {
            '0' => {}
            '1' => v |= 1 << j,
            '-' if allow_dc => dc |= 1 << j,
            _ => return Err(perr(ln, format!("bad bit '{ch}'"))),
        }
    }
    Ok((v, dc))
}

impl TruthTableFile {
    pub fn from_mapping(f: &BooleanMapping) -> Self {
        TruthTableFile {
            inputs: f.inputs(),
            outputs: f.outputs(),
            rows: f.table().to_vec(),
            dont_care: vec![0; f.table().len()],
            comments: Vec::new(),
        }
    }

    pub fn with_comment(mut self, c: impl Into<String>) -> Self {
        self.comments.push(c.into());
        self
    }

    /// The fully specified mapping; don't-care bits are a domain error.
    pub fn to_mapping(&self) -> Result<BooleanMapping> {
        if let Some(x) = self.dont_care.iter().position(|&d| d != 0) {
            return Err(Error::Domain(format!("row {x} has don't-care outputs")));
        }
        BooleanMapping::new(self.inputs, self.outputs, self.rows.clone())
    }

    /// `.i n`, `.o m`, then one `input output` row per input code in increasing order.
    pub fn emit(&self) -> String {
        let mut s = String::new();
        for c in &self.comments {
            let _ = writeln!(s, "# {c}");
        }
        let _ = writeln!(s, ".i {}\n.o {}", self.inputs, self.outputs);
        for (x, (&y, &dc)) in self.rows.iter().zip(&self.dont_care).enumerate() {
            let _ = writeln!(s, "{} {}", bits_to_string(x as u64, self.inputs, 0), bits_to_string(y, self.outputs, dc));
        }
        let _ = writeln!(s, ".e");
        s
    }

    /// Rows may list the input explicitly (any order) or give outputs only, in input order.
    pub fn parse(text: &str) -> Result<Self> {
        let (mut n, mut m) = (None, None);
        let mut comments = Vec::new();
        let mut rows: Vec<Option<(u64, u64)>> = Vec::new();
        let mut next = 0usize;
        for (idx, raw) in text.lines().enumerate() {
            let ln = idx + 1;
            let (body, comment) = match raw.split_once('#') {
                Some((b, c)) => (b.trim(), Some(c.trim())),
                None => (raw.trim(), None),
            };
            if body.is_empty() {
                if let (Some(c), None) = (comment, n) {
                    comments.push(c.to_string());
                }
                continue;
            }
            let mut tok = body.split_whitespace();
            let head = tok.next().expect("nonempty");
            let num = |t: Option<&str>| -> Result<usize> {
                t.and_then(|v| v.parse().ok()).ok_or_else(|| perr(ln, format!("bad count in '{body}'")))
            };
            match head {
                ".i" => {
                    let v = num(tok.next())?;
                    if v > 24 {
                        return Err(Error::Capacity(format!("{v} inputs exceed the table limit")));
                    }
                    n = Some(v);
                    rows = vec![None; 1 << v];
                }
                ".o" => m = Some(num(tok.next())?),
                ".e" => break,
                _ => {
                    let (n, m) = n.zip(m).ok_or_else(|| perr(ln, "row before .i and .o"))?;
                    let (x, out) = match tok.next() {
                        Some(out) => (parse_bits(head, n, ln, false)?.0 as usize, out),
                        None => (next, head),
                    };
                    if x >= rows.len() {
                        return Err(perr(ln, "more rows than inputs"));
                    }
                    if rows[x].is_some() {
                        return Err(perr(ln, format!("input {x} listed twice")));
                    }
                    rows[x] = Some(parse_bits(out, m, ln, true)?);
                    next = x + 1;
                }
            }
        }
        let (n, m) = n.zip(m).ok_or_else(|| perr(1, "missing .i or .o"))?;
        if let Some(x) = rows.iter().position(Option::is_none) {
            return Err(Error::Structural(format!("row for input {x} missing")));
        }
        let (rows, dont_care) = rows.into_iter().map(|r| r.expect("checked")).unzip();
        Ok(TruthTableFile { inputs: n, outputs: m, rows, dont_care, comments })
    }
}

/// Permutation text: `.n <bits>`, then either `.table` followed by every image in order or
/// cycle lines such as `(3,17,5)(8,9)`. Codes are decimal or `0x` hex.
pub fn parse_permutation(text: &str) -> Result<Permutation> {
    let mut n = None;
    let mut table: Option<Vec<u64>> = None;
    let mut cycles: Vec<Vec<u64>> = Vec::new();
    let parse_code = |t: &str, ln: usize| -> Result<u64> {
        let t = t.trim();
        match t.strip_prefix("0x") {
            Some(h) => u64::from_str_radix(h, 16),
            None => t.parse(),
        }
        .map_err(|_| perr(ln, format!("bad code '{t}'")))
    };
    for (idx, raw) in text.lines().enumerate() {
        let ln = idx + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        if let Some(rest) = body.strip_prefix(".n") {
            n = Some(rest.trim().parse::<usize>().map_err(|_| perr(ln, "bad width"))?);
        } else if body == ".table" {
            table = Some(Vec::new());
        } else if let Some(t) = table.as_mut() {
            for tok in body.split([' ', ',', '\t']).filter(|s| !s.is_empty()) {
                t.push(parse_code(tok, ln)?);
            }
        } else if body.starts_with('(') {
            for part in body.split(')').map(str::trim).filter(|s| !s.is_empty()) {
                let inner = part.strip_prefix('(').ok_or_else(|| perr(ln, format!("bad cycle '{part}'")))?;
                let cyc = inner
                    .split([',', ' '])
                    .filter(|s| !s.is_empty())
                    .map(|t| parse_code(t, ln))
                    .collect::<Result<Vec<_>>>()?;
                cycles.push(cyc);
            }
        } else {
            return Err(perr(ln, format!("unexpected '{body}'")));
        }
    }
    let n = n.ok_or_else(|| perr(1, "missing .n"))?;
    match table {
        Some(t) => Permutation::from_table(n, t),
        None => Permutation::from_cycles(n, &cycles),
    }
}

/// Cycle form for every permutation; `.table` form as well when `dense` is set.
pub fn emit_permutation(p: &Permutation, dense: bool) -> Result<String> {
    let mut s = format!(".n {}\n", p.n());
    if dense {
        let d = p.to_dense()?;
        s.push_str(".table\n");
        let imgs: Vec<String> = (0..1u64 << p.n()).map(|x| d.image(x).to_string()).collect();
        for chunk in imgs.chunks(16) {
            let _ = writeln!(s, "{}", chunk.join(" "));
        }
    } else {
        for c in p.cycles() {
            let _ = writeln!(s, "({})", c.iter().map(u64::to_string).collect::<Vec<_>>().join(","));
        }
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_round_trip() {
        let f = BooleanMapping::from_fn(3, 2, |x| x % 3).unwrap();
        let t = TruthTableFile::from_mapping(&f).with_comment("mod 3");
        let text = t.emit();
        assert!(text.contains("100 10\n"));
        let back = TruthTableFile::parse(&text).unwrap();
        assert_eq!(back, t);
        assert_eq!(back.to_mapping().unwrap(), f);
    }

    #[test]
    fn outputs_only_and_dont_care() {
        let t = TruthTableFile::parse(".i 1\n.o 2\n1-\n01\n").unwrap();
        assert_eq!(t.rows, vec![1, 2]);
        assert_eq!(t.dont_care, vec![2, 0]);
        assert!(matches!(t.to_mapping(), Err(Error::Domain(_))));
        assert!(matches!(TruthTableFile::parse(".i 2\n.o 1\n1\n"), Err(Error::Structural(_))));
        assert!(matches!(TruthTableFile::parse(".i 1\n.o 1\n0 2\n"), Err(Error::Parse { line: 3, .. })));
    }

    #[test]
    fn permutation_forms() {
        let p = parse_permutation(".n 12\n(3,17,5)(8, 9)\n").unwrap();
        assert_eq!(p.image(3), 17);
        assert_eq!(p.image(5), 3);
        assert_eq!(p.image(9), 8);
        assert_eq!(parse_permutation(&emit_permutation(&p, false).unwrap()).unwrap(), p);
        let q = parse_permutation(".n 2\n.table\n1 0 3 2\n").unwrap();
        assert_eq!(q, Permutation::from_cycles(2, &[vec![0, 1], vec![2, 3]]).unwrap());
        assert_eq!(parse_permutation(&emit_permutation(&q, true).unwrap()).unwrap(), q);
        assert!(parse_permutation(".n 2\n.table\n0 0 1 2\n").is_err());
        assert!(parse_permutation("(1,2)\n").is_err());
    }
}
