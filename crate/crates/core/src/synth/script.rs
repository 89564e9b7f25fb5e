use crate::error::Result;
use crate::model::{Circuit, Gate};

/// Conjugating gates applied one by one to a tracked set of points.
///
/// After conjugating target `p` by `g_1, …, g_m` the tracked points are the images under
/// the gates, and a circuit for `p` is `g_1 * … * g_m * core * g_m * … * g_1`.
#[derive(Clone, Debug, Default)]
pub struct ConjugationScript {
    gates: Vec<Gate>,
    points: Vec<u64>,
}

impl ConjugationScript {
    pub fn new(points: &[u64]) -> Self {
        ConjugationScript { gates: Vec::new(), points: points.to_vec() }
    }

    pub fn conj(&mut self, g: Gate) {
        for p in &mut self.points {
            *p = g.apply_code(*p);
        }
        self.gates.push(g);
    }

    pub fn points(&self) -> &[u64] {
        &self.points
    }

    pub fn point(&self, i: usize) -> u64 {
        self.points[i]
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    /// `script * core * reverse(script)` on `width` lines.
    pub fn wrap(&self, width: usize, core: &[Gate]) -> Result<Circuit> {
        let mut gates = self.gates.clone();
        gates.extend_from_slice(core);
        gates.extend(self.gates.iter().rev().copied());
        Circuit::from_gates(width, gates)
    }
}

pub(crate) fn all_ones(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

pub(crate) fn bit(x: u64, i: usize) -> bool {
    (x >> i) & 1 == 1
}

pub(crate) fn lines_of(mask: u64) -> impl Iterator<Item = usize> {
    (0..64).filter(move |&i| bit(mask, i))
}

/// Bring tracked points `ia`, `ib` to `(1…1, 1…1 - e_j)`.
///
/// Returns `(index now at 1…1, index now at 1…1 - e_j, j)`.
pub(crate) fn canon_transposition(s: &mut ConjugationScript, ia: usize, ib: usize, n: usize) -> (usize, usize, usize) {
    let full = all_ones(n);
    let (mut ia, mut ib) = (ia, ib);
    let (x, y) = (s.point(ia), s.point(ib));
    if x & !y == 0 {
        std::mem::swap(&mut ia, &mut ib);
    }
    let (x, y) = (s.point(ia), s.point(ib));
    let b10 = x & !y;
    let b01 = !x & y & full;
    let b00 = !x & !y & full;
    let j = b10.trailing_zeros() as usize;
    if b01 != 0 {
        let k = b01.trailing_zeros() as usize;
        for i in lines_of(b10 & !(1 << j)) {
            s.conj(Gate::cnot(k, i));
        }
        for i in lines_of(b01) {
            s.conj(Gate::cnot(j, i));
        }
    } else if b10 != 1 << j {
        s.conj(Gate::not(j));
        for i in lines_of(b10 & !(1 << j)) {
            s.conj(Gate::cnot(j, i));
        }
        s.conj(Gate::not(j));
    }
    for i in lines_of(b00) {
        s.conj(Gate::not(i));
    }
    debug_assert_eq!(s.point(ia), full);
    debug_assert_eq!(s.point(ib), full & !(1 << j));
    (ia, ib, j)
}

/// Bring tracked point `iz` to `1…1 - e_{i2}` with `i2 != i1`, keeping points that are 0 on
/// the chosen line fixed. Returns `i2`.
pub(crate) fn canon_second(s: &mut ConjugationScript, iz: usize, i1: usize, n: usize) -> usize {
    let full = all_ones(n);
    let zeros = !s.point(iz) & full;
    let i2 = (zeros & !(1 << i1)).trailing_zeros() as usize;
    assert!(i2 < n, "point has no zero outside the first pivot");
    let rest = zeros & !(1 << i2);
    if rest != 0 {
        s.conj(Gate::not(i2));
        for i in lines_of(rest) {
            s.conj(Gate::cnot(i2, i));
        }
        s.conj(Gate::not(i2));
    }
    debug_assert_eq!(s.point(iz), full & !(1 << i2));
    i2
}
