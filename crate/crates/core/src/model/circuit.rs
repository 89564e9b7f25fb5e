use rayon::prelude::*;

use super::cost::{CostReport, Weights};
use super::gate::Gate;
use super::mapping::BooleanMapping;
use crate::bits::{Bits, MAX_LINES};
use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Widest circuit whose permutation is materialized as a dense table.
pub const DENSE_LIMIT: usize = 20;

/// Ordered gate list on `width` lines.
///
/// The first `significant_inputs` lines carry the realized mapping's inputs; the
/// remaining lines are ancilla and start at 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Circuit {
    width: usize,
    gates: Vec<Gate>,
    significant_inputs: usize,
    significant_outputs: Option<Vec<usize>>,
    dirty_ancilla: bool,
}

impl Circuit {
    pub fn new(width: usize) -> Self {
        assert!(width <= MAX_LINES, "width {width} exceeds {MAX_LINES}");
        Circuit { width, gates: Vec::new(), significant_inputs: width, significant_outputs: None, dirty_ancilla: false }
    }

    pub fn from_gates(width: usize, gates: Vec<Gate>) -> Result<Self> {
        let mut c = Circuit::new(width);
        for g in gates {
            c.push(g)?;
        }
        Ok(c)
    }

    pub fn push(&mut self, g: Gate) -> Result<()> {
        if g.max_line() >= self.width {
            return Err(Error::Structural(format!("gate {g} uses a line outside width {}", self.width)));
        }
        self.gates.push(g);
        Ok(())
    }

    /// Append gates known to be in range.
    pub fn extend<I: IntoIterator<Item = Gate>>(&mut self, gates: I) {
        for g in gates {
            self.push(g).expect("gate outside circuit width");
        }
    }

    pub fn append(&mut self, other: &Circuit) {
        self.extend(other.gates.iter().copied());
        self.dirty_ancilla |= other.dirty_ancilla;
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn gates_mut(&mut self) -> &mut Vec<Gate> {
        &mut self.gates
    }

    pub fn into_gates(self) -> Vec<Gate> {
        self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn significant_inputs(&self) -> usize {
        self.significant_inputs
    }

    pub fn set_significant_inputs(&mut self, n: usize) {
        assert!(n <= self.width);
        self.significant_inputs = n;
    }

    pub fn significant_outputs(&self) -> Option<&[usize]> {
        self.significant_outputs.as_deref()
    }

    pub fn set_significant_outputs(&mut self, lines: Option<Vec<usize>>) {
        if let Some(l) = &lines {
            assert!(l.iter().all(|&i| i < self.width));
        }
        self.significant_outputs = lines;
    }

    /// Whether some decomposition inside may leave nonzero values on ancilla.
    pub fn dirty_ancilla(&self) -> bool {
        self.dirty_ancilla
    }

    pub fn set_dirty_ancilla(&mut self, v: bool) {
        self.dirty_ancilla = v;
    }

    pub fn ancilla(&self) -> usize {
        self.width - self.significant_inputs
    }

    /// Same gates on a wider set of lines.
    pub fn widened(&self, width: usize) -> Circuit {
        assert!(width >= self.width);
        let mut c = self.clone();
        c.width = width;
        c
    }

    pub fn max_controls(&self) -> usize {
        self.gates.iter().map(|g| g.control_count()).max().unwrap_or(0)
    }

    /// Gates in reverse order; defines the inverse permutation.
    pub fn mirror(&self) -> Circuit {
        let mut c = self.clone();
        c.gates.reverse();
        c
    }

    pub fn eval_code(&self, x: u64) -> u64 {
        debug_assert!(self.width <= 64);
        self.gates.iter().fold(x, |v, g| g.apply_code(v))
    }

    pub fn eval_bits(&self, mut v: Bits) -> Bits {
        for g in &self.gates {
            g.apply(&mut v);
        }
        v
    }

    /// Evaluate on a 0/1 vector indexed by line.
    pub fn eval(&self, v: &[bool]) -> Result<Vec<bool>> {
        if v.len() != self.width {
            return Err(Error::Structural(format!("state has {} bits, circuit has {} lines", v.len(), self.width)));
        }
        let mut b = Bits::EMPTY;
        for (i, &x) in v.iter().enumerate() {
            b.set(i, x);
        }
        let out = self.eval_bits(b);
        Ok((0..self.width).map(|i| out.contains(i)).collect())
    }

    /// Dense permutation defined by the circuit.
    pub fn permutation(&self) -> Result<Permutation> {
        self.permutation_with_limit(DENSE_LIMIT)
    }

    pub fn permutation_with_limit(&self, limit: usize) -> Result<Permutation> {
        if self.width > limit {
            return Err(Error::Capacity(format!("width {} above dense limit {limit}", self.width)));
        }
        let size = 1u64 << self.width;
        let table: Vec<u64> = if size >= 1 << 12 {
            (0..size).into_par_iter().map(|x| self.eval_code(x)).collect()
        } else {
            (0..size).map(|x| self.eval_code(x)).collect()
        };
        Permutation::from_table(self.width, table)
    }

    /// Number of contiguous layers whose gates have pairwise disjoint support.
    pub fn depth(&self) -> usize {
        let mut layers = 0;
        let mut used = Bits::EMPTY;
        for g in &self.gates {
            let s = g.support();
            if layers == 0 || !used.is_disjoint(&s) {
                layers += 1;
                used = s;
            } else {
                used = used | s;
            }
        }
        layers
    }

    pub fn cost(&self, weights: &Weights) -> CostReport {
        CostReport::of(self, weights)
    }

    /// Lines read as the first `m` outputs.
    pub fn output_lines(&self, m: usize) -> Vec<usize> {
        match &self.significant_outputs {
            Some(l) => l.clone(),
            None => (0..m).collect(),
        }
    }

    fn run_padded(&self, x: u64) -> Bits {
        self.eval_bits(Bits::from_word(x))
    }

    /// Whether the circuit realizes `f`: inputs padded with zero ancilla, outputs read
    /// from the declared output lines, optionally reordered by `pi`
    /// (output `j` of `f` is read from declared output `pi[j]`).
    pub fn realizes(&self, f: &BooleanMapping, pi: Option<&[usize]>) -> bool {
        self.first_mismatch(f, pi).is_none()
    }

    /// First input where the circuit disagrees with `f`, with expected and actual outputs.
    pub fn first_mismatch(&self, f: &BooleanMapping, pi: Option<&[usize]>) -> Option<(u64, u64, u64)> {
        let n = f.inputs();
        let m = f.outputs();
        if self.significant_inputs != n || self.width < m {
            return Some((0, f.eval(0), u64::MAX));
        }
        let outs = self.output_lines(m);
        if outs.len() < m {
            return Some((0, f.eval(0), u64::MAX));
        }
        let order: Vec<usize> = match pi {
            Some(p) => {
                if p.len() != m || p.iter().any(|&k| k >= outs.len()) {
                    return Some((0, f.eval(0), u64::MAX));
                }
                p.iter().map(|&k| outs[k]).collect()
            }
            None => outs[..m].to_vec(),
        };
        let check = |x: u64| {
            let y = self.run_padded(x);
            let mut got = 0u64;
            for (j, &line) in order.iter().enumerate() {
                if y.contains(line) {
                    got |= 1 << j;
                }
            }
            let want = f.eval(x);
            (got != want).then_some((x, want, got))
        };
        if n >= 12 {
            (0..1u64 << n).into_par_iter().find_map_first(check)
        } else {
            (0..1u64 << n).find_map(check)
        }
    }

    /// Whether every non-output line returns to 0 for every significant input.
    pub fn garbage_free(&self, f: &BooleanMapping) -> bool {
        let outs: Bits = self.output_lines(f.outputs()).into_iter().collect();
        let others = Bits::range(self.width) - outs;
        (0..1u64 << f.inputs()).all(|x| self.run_padded(x).is_disjoint(&others))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_circuit() -> Circuit {
        // N4 * C1;2 * C1,2,4;3 * C3;4 on five lines
        Circuit::from_gates(5, vec![Gate::not(3), Gate::cnot(0, 1), Gate::e(2, &[0, 1, 3], &[]), Gate::cnot(2, 3)])
            .unwrap()
    }

    #[test]
    fn eval_traces_by_hand() {
        let c = sample_circuit();
        let out = c.eval(&[false; 5]).unwrap();
        assert_eq!(out, vec![false, false, false, true, false]);
    }

    #[test]
    fn swap_by_three_cnots() {
        let c = Circuit::from_gates(2, vec![Gate::cnot(0, 1), Gate::cnot(1, 0), Gate::cnot(0, 1)]).unwrap();
        assert_eq!(c.eval(&[true, false]).unwrap(), vec![false, true]);
    }

    #[test]
    fn mirror_reverses() {
        let m = sample_circuit().mirror();
        let expect = [Gate::cnot(2, 3), Gate::e(2, &[0, 1, 3], &[]), Gate::cnot(0, 1), Gate::not(3)];
        assert_eq!(m.gates(), &expect[..]);
    }

    #[test]
    fn depth_of_layered_example() {
        // C1;2 * C3;1 * N2 * N4 * C1,4;2 * N3
        let c = Circuit::from_gates(
            4,
            vec![
                Gate::cnot(0, 1),
                Gate::cnot(2, 0),
                Gate::not(1),
                Gate::not(3),
                Gate::e(1, &[0, 3], &[]),
                Gate::not(2),
            ],
        )
        .unwrap();
        assert_eq!(c.depth(), 3);
        assert_eq!(c.len(), 6);
        assert_eq!(Circuit::new(3).depth(), 0);
    }

    #[test]
    fn out_of_range_gate_rejected() {
        let mut c = Circuit::new(2);
        assert!(c.push(Gate::not(2)).is_err());
    }

    #[test]
    fn swap_realized_non_strictly() {
        let swap = BooleanMapping::from_fn(2, 2, |x| ((x & 1) << 1) | (x >> 1)).unwrap();
        let wires = Circuit::new(2);
        assert!(!wires.realizes(&swap, None));
        assert!(wires.realizes(&swap, Some(&[1, 0])));
        let strict = Circuit::from_gates(2, vec![Gate::cnot(0, 1), Gate::cnot(1, 0), Gate::cnot(0, 1)]).unwrap();
        assert!(strict.realizes(&swap, None));
        assert!(strict.realizes(&swap, Some(&[0, 1])));
        // two CNOTs leave x1 xor x2 on one line, so no output order works
        let two = Circuit::from_gates(2, vec![Gate::cnot(0, 1), Gate::cnot(1, 0)]).unwrap();
        assert!(!two.realizes(&swap, Some(&[1, 0])));
    }

    #[test]
    fn copy_to_ancilla_leaves_garbage() {
        let mut c = Circuit::from_gates(2, vec![Gate::cnot(0, 1)]).unwrap();
        c.set_significant_inputs(1);
        c.set_significant_outputs(Some(vec![0]));
        let id = BooleanMapping::identity(1);
        assert!(c.realizes(&id, None));
        assert!(!c.garbage_free(&id));
    }
}
