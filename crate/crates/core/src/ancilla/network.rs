use crate::bits::Bits;
use crate::error::{Error, Result};
use crate::model::{Circuit, Gate};

/// Lines a construction may use beyond its inputs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AncillaBudget {
    pub total_lines: usize,
    /// Lines guaranteed to hold 0 at entry.
    pub free_zeroed: Bits,
    /// Lines usable as scratch that need not be restored.
    pub dirty: Bits,
}

impl AncillaBudget {
    /// Every line from `first` up to `total_lines` is zeroed.
    pub fn zeroed(first: usize, total_lines: usize) -> Self {
        AncillaBudget { total_lines, free_zeroed: Bits::from_lines(first..total_lines), dirty: Bits::EMPTY }
    }

    pub fn validate(&self) -> Result<()> {
        if !self.free_zeroed.is_disjoint(&self.dirty) {
            return Err(Error::Structural("zeroed and dirty ancilla overlap".into()));
        }
        let all = self.free_zeroed | self.dirty;
        if all.last().is_some_and(|l| l >= self.total_lines) {
            return Err(Error::Structural("ancilla beyond the last line".into()));
        }
        Ok(())
    }
}

/// Zeroed lines handed out in increasing order.
pub(crate) struct Allocator {
    free: std::vec::IntoIter<usize>,
}

impl Allocator {
    pub(crate) fn new(lines: Bits) -> Self {
        Allocator { free: lines.to_vec().into_iter() }
    }

    pub(crate) fn take(&mut self) -> Result<usize> {
        self.free.next().ok_or_else(|| Error::Capacity("out of zeroed ancilla".into()))
    }
}

/// All minterms of a set of variables, one line each.
#[derive(Clone, Debug)]
pub struct ConjunctionNetwork {
    pub circuit: Circuit,
    /// `minterms[a]` carries the conjunction with `x_i` positive iff bit `i` of `a` is set.
    pub minterms: Vec<usize>,
}

/// Zeroed lines consumed by [`build_conjunction_network`] on `n` variables.
pub fn conjunction_lines(n: usize) -> usize {
    match n {
        0 => 0,
        1 => 1,
        _ => (1 << n) + conjunction_lines(n.div_ceil(2)) + conjunction_lines(n / 2),
    }
}

/// Gate count of [`build_conjunction_network`] on `n` variables.
pub fn conjunction_gates(n: usize) -> usize {
    match n {
        0 => 0,
        1 => 2,
        _ => (1 << n) + conjunction_gates(n.div_ceil(2)) + conjunction_gates(n / 2),
    }
}

pub(crate) fn conjunctions(vars: &[usize], alloc: &mut Allocator, gates: &mut Vec<Gate>) -> Result<Vec<usize>> {
    match vars.len() {
        0 => Err(Error::Parameter("conjunctions of no variables".into())),
        1 => {
            let z = alloc.take()?;
            gates.push(Gate::cnot(vars[0], z));
            gates.push(Gate::not(z));
            Ok(vec![z, vars[0]])
        }
        n => {
            let n1 = n.div_ceil(2);
            let lo = conjunctions(&vars[..n1], alloc, gates)?;
            let hi = conjunctions(&vars[n1..], alloc, gates)?;
            let mut out = Vec::with_capacity(1 << n);
            for &h in &hi {
                for &l in &lo {
                    let t = alloc.take()?;
                    gates.push(Gate::toffoli(l, h, t));
                    out.push(t);
                }
            }
            Ok(out)
        }
    }
}

/// Every conjunction of the `n` variables on `vars`, built from the two halves' networks.
pub fn build_conjunction_network(n: usize, vars: &[usize], budget: &AncillaBudget) -> Result<ConjunctionNetwork> {
    budget.validate()?;
    if vars.len() != n || n == 0 {
        return Err(Error::Parameter(format!("expected {n} variable lines, got {}", vars.len())));
    }
    if vars.iter().any(|&v| v >= budget.total_lines || budget.free_zeroed.contains(v)) {
        return Err(Error::Structural("variable lines must lie outside the ancilla".into()));
    }
    let need = conjunction_lines(n);
    if budget.free_zeroed.len() < need {
        return Err(Error::Capacity(format!(
            "{n} variables need {need} zeroed lines, budget has {}",
            budget.free_zeroed.len()
        )));
    }
    let mut alloc = Allocator::new(budget.free_zeroed);
    let mut gates = Vec::new();
    let minterms = conjunctions(vars, &mut alloc, &mut gates)?;
    let circuit = Circuit::from_gates(budget.total_lines, gates)?;
    Ok(ConjunctionNetwork { circuit, minterms })
}

fn check_lines(width: usize, lines: &[usize]) -> Result<()> {
    let set = Bits::from_lines(lines.iter().copied());
    if set.len() != lines.len() {
        return Err(Error::Structural("repeated line".into()));
    }
    if lines.iter().any(|&l| l >= width) {
        return Err(Error::Capacity(format!("line beyond width {width}")));
    }
    Ok(())
}

/// Copy `src` onto the zeroed `dsts` by doubling: depth `ceil(log2(f + 1))` for `f` copies.
pub fn log_depth_copy(width: usize, src: usize, dsts: &[usize]) -> Result<Circuit> {
    let mut all = vec![src];
    all.extend_from_slice(dsts);
    check_lines(width, &all)?;
    let mut holders = vec![src];
    let mut rest = dsts.iter().copied();
    let mut c = Circuit::new(width);
    'outer: loop {
        let layer = holders.clone();
        for h in layer {
            let Some(d) = rest.next() else { break 'outer };
            c.push(Gate::cnot(h, d))?;
            holders.push(d);
        }
    }
    Ok(c)
}

/// XOR of `lines` accumulated in place on `lines[0]` by a balanced tree of depth
/// `ceil(log2 f)`. Other lines keep partial sums.
pub fn log_depth_xor(width: usize, lines: &[usize]) -> Result<Circuit> {
    if lines.is_empty() {
        return Err(Error::Parameter("xor of no lines".into()));
    }
    check_lines(width, lines)?;
    let mut c = Circuit::new(width);
    let mut active = lines.to_vec();
    while active.len() > 1 {
        let mut next = Vec::with_capacity(active.len().div_ceil(2));
        for pair in active.chunks(2) {
            if let [a, b] = *pair {
                c.push(Gate::cnot(b, a))?;
            }
            next.push(pair[0]);
        }
        active = next;
    }
    Ok(c)
}

/// `target ^= XOR(sources)` with every source restored afterwards.
pub fn build_xor_network(width: usize, sources: &[usize], target: usize) -> Result<Circuit> {
    if sources.contains(&target) {
        return Err(Error::Structural("target among the sources".into()));
    }
    let tree = log_depth_xor(width, sources)?;
    let mut c = tree.clone();
    c.push(Gate::cnot(sources[0], target))?;
    c.append(&tree.mirror());
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn minterm(a: u64, x: u64, n: usize) -> bool {
        (0..n).all(|i| (a >> i) & 1 == (x >> i) & 1)
    }

    #[test]
    fn single_variable() {
        let net = build_conjunction_network(1, &[0], &AncillaBudget::zeroed(1, 2)).unwrap();
        assert_eq!(net.circuit.len(), 2);
        for x in 0..2u64 {
            let y = net.circuit.eval_code(x);
            assert_eq!((y >> net.minterms[0]) & 1, 1 - x);
            assert_eq!((y >> net.minterms[1]) & 1, x);
        }
    }

    #[test]
    fn every_minterm_up_to_six() {
        for n in 1..=6 {
            let total = n + conjunction_lines(n);
            let net =
                build_conjunction_network(n, &(0..n).collect::<Vec<_>>(), &AncillaBudget::zeroed(n, total)).unwrap();
            assert_eq!(net.circuit.len(), conjunction_gates(n));
            for x in 0..1u64 << n {
                let y = net.circuit.eval_bits(Bits::from_word(x));
                for (a, &l) in net.minterms.iter().enumerate() {
                    assert_eq!(y.contains(l), minterm(a as u64, x, n));
                }
            }
        }
    }

    #[test]
    fn ten_variables_near_two_to_the_n() {
        let n = 10;
        let total = n + conjunction_lines(n);
        let net = build_conjunction_network(n, &(0..n).collect::<Vec<_>>(), &AncillaBudget::zeroed(n, total)).unwrap();
        assert!(net.circuit.len() as f64 <= 1.5 * 1024.0);
    }

    #[test]
    fn short_budget_rejected() {
        let r = build_conjunction_network(3, &[0, 1, 2], &AncillaBudget::zeroed(3, 10));
        assert!(matches!(r, Err(Error::Capacity(_))));
    }

    #[test]
    fn copy_depths() {
        for f in 1..=16usize {
            let dsts: Vec<usize> = (1..=f).collect();
            let c = log_depth_copy(f + 1, 0, &dsts).unwrap();
            assert_eq!(c.len(), f);
            assert_eq!(c.depth(), (f + 1).next_power_of_two().trailing_zeros() as usize);
            assert!(c.depth() <= f.next_power_of_two().trailing_zeros() as usize + 1);
            for x in 0..2u64 {
                let y = c.eval_code(x);
                assert!(dsts.iter().all(|&d| (y >> d) & 1 == x));
            }
        }
        assert_eq!(log_depth_copy(8, 0, &(1..8).collect::<Vec<_>>()).unwrap().depth(), 3);
    }

    #[test]
    fn xor_of_eight_in_depth_three() {
        let lines: Vec<usize> = (0..8).collect();
        let c = log_depth_xor(8, &lines).unwrap();
        assert_eq!(c.depth(), 3);
        for x in 0..256u64 {
            assert_eq!(c.eval_code(x) & 1, (x.count_ones() & 1) as u64);
        }
        for f in 1..=12usize {
            let c = log_depth_xor(f, &(0..f).collect::<Vec<_>>()).unwrap();
            assert_eq!(c.depth(), f.next_power_of_two().trailing_zeros() as usize);
        }
    }

    #[test]
    fn clean_xor_restores_sources() {
        let c = build_xor_network(6, &[0, 1, 2, 3, 4], 5).unwrap();
        for x in 0..32u64 {
            assert_eq!(c.eval_code(x), x | ((x.count_ones() as u64 & 1) << 5));
        }
    }
}
