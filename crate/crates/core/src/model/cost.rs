use std::collections::BTreeMap;

use super::circuit::Circuit;

/// Per-gate quantum weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Weights {
    /// NOT and CNOT.
    pub w_c: u64,
    /// 2-CNOT.
    pub w_t: u64,
    /// Gates with more than two controls, keyed by control count.
    pub w_big: BTreeMap<usize, u64>,
    /// Used for control counts missing from `w_big`.
    pub w_big_default: u64,
}

impl Default for Weights {
    fn default() -> Self {
        Weights { w_c: 1, w_t: 5, w_big: BTreeMap::new(), w_big_default: 1 }
    }
}

impl Weights {
    /// Quantum costs commonly quoted for multiple-control Toffoli gates in benchmark suites.
    pub fn literature() -> Self {
        let w_big = [(3, 13), (4, 26), (5, 38), (6, 50), (7, 62), (8, 74), (9, 86), (10, 98)].into_iter().collect();
        Weights { w_c: 1, w_t: 5, w_big, w_big_default: 1 }
    }

    pub fn gate_weight(&self, controls: usize) -> u64 {
        match controls {
            0 | 1 => self.w_c,
            2 => self.w_t,
            k => *self.w_big.get(&k).unwrap_or(&self.w_big_default),
        }
    }

    pub fn scaled(&self, lambda: u64) -> Self {
        Weights {
            w_c: self.w_c * lambda,
            w_t: self.w_t * lambda,
            w_big: self.w_big.iter().map(|(&k, &w)| (k, w * lambda)).collect(),
            w_big_default: self.w_big_default * lambda,
        }
    }
}

/// The circuit metrics: complexity, depth, gate class counts, quantum weight and ancilla count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CostReport {
    pub l: usize,
    pub d: usize,
    pub l_c: usize,
    pub l_t: usize,
    /// Gates with more than two controls.
    pub l_big: usize,
    pub w: u64,
    pub q: usize,
}

impl CostReport {
    pub fn of(c: &Circuit, weights: &Weights) -> Self {
        let mut r = CostReport { l: c.len(), d: c.depth(), l_c: 0, l_t: 0, l_big: 0, w: 0, q: c.ancilla() };
        for g in c.gates() {
            let k = g.control_count();
            match k {
                0 | 1 => r.l_c += 1,
                2 => r.l_t += 1,
                _ => r.l_big += 1,
            }
            r.w += weights.gate_weight(k);
        }
        r
    }

    /// `key=value` lines.
    pub fn to_kv(&self) -> String {
        format!(
            "L={}\nD={}\nL_C={}\nL_T={}\nL_big={}\nW={}\nQ={}\n",
            self.l, self.d, self.l_c, self.l_t, self.l_big, self.w, self.q
        )
    }
}
