use crate::error::{Error, Result};
use crate::model::{BooleanMapping, Circuit, Gate};

/// Largest subcube `(free, value)` inside `set`; ties go to the smaller free mask, then value.
fn largest_face(set: &[bool], n: usize) -> Option<(u64, u64)> {
    let size = 1usize << n;
    // inside[free * size + value], value restricted to the fixed coordinates
    let mut inside = vec![false; size * size];
    let mut best: Option<(u32, u64, u64)> = None;
    for free in 0..size as u64 {
        let fixed = !free & (size as u64 - 1);
        let mut v = fixed;
        loop {
            let ok = if free == 0 {
                set[v as usize]
            } else {
                let b = free & free.wrapping_neg();
                let base = ((free ^ b) as usize) * size;
                inside[base + v as usize] && inside[base + (v | b) as usize]
            };
            inside[free as usize * size + v as usize] = ok;
            if ok {
                let d = free.count_ones();
                if best.is_none_or(|(bd, _, _)| d > bd) {
                    best = Some((d, free, v));
                }
            }
            if v == 0 {
                break;
            }
            v = (v - 1) & fixed;
        }
    }
    best.map(|(_, f, v)| (f, v))
}

/// One gate per subcube of a disjoint cover of each output's on-set, writing onto fresh
/// output lines `n..n+m`.
pub fn face_cover_synth(f: &BooleanMapping) -> Result<Circuit> {
    let n = f.inputs();
    let m = f.outputs();
    if n > 12 {
        return Err(Error::Capacity(format!("cube cover limited to 12 inputs, got {n}")));
    }
    let mut gates = Vec::new();
    for i in 0..m {
        let mut set = f.output_bit(i);
        while let Some((free, v)) = largest_face(&set, n) {
            let mut sub = free;
            loop {
                set[(v | sub) as usize] = false;
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & free;
            }
            let pos: Vec<usize> = (0..n).filter(|&l| (free >> l) & 1 == 0 && (v >> l) & 1 == 1).collect();
            let neg: Vec<usize> = (0..n).filter(|&l| (free >> l) & 1 == 0 && (v >> l) & 1 == 0).collect();
            gates.push(Gate::e(n + i, &pos, &neg));
        }
    }
    let mut c = Circuit::from_gates(n + m, gates)?;
    c.set_significant_inputs(n);
    c.set_significant_outputs(Some((n..n + m).collect()));
    Ok(c)
}
