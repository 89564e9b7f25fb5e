//! Gate-count reduction by local rewriting, and synthesis by cube-face search.

mod face;
mod rules;

pub use face::{face_synth, find_faces, tstar, tstar_first, tstar_greedy, FaceCandidate};
pub use rules::{apply_rule, arity, commutes, ALL_RULES};

use std::fmt;

use crate::model::{Circuit, Gate};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReduceStrategy {
    /// Rules applied greedily whenever they fire; each lowers the gate count.
    pub shrinking: Vec<u8>,
    /// Rules tried tentatively; kept only when shrinking rules then win back more gates.
    pub exploratory: Vec<u8>,
    /// Longest chain of tentative rewrites before a shrinking step must occur.
    pub max_passes: usize,
}

impl Default for ReduceStrategy {
    fn default() -> Self {
        ReduceStrategy { shrinking: vec![1, 2, 9, 10], exploratory: vec![5, 3, 4, 6], max_passes: 3 }
    }
}

impl ReduceStrategy {
    pub fn shrink_only() -> Self {
        ReduceStrategy { exploratory: Vec::new(), max_passes: 0, ..Default::default() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TraceEntry {
    pub pass: usize,
    pub rule: u8,
    pub at: usize,
    pub before: usize,
    pub after: usize,
}

impl fmt::Display for TraceEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "pass={} rule={} at={} L={}->{}", self.pass, self.rule, self.at, self.before, self.after)
    }
}

/// Insertion point that brings `gates[i]` and `gates[j]` together, if the gates between
/// them let it: `gates[i]` commutes with `(i, s]` and `gates[j]` with `(s, j)`.
pub fn pivot(gates: &[Gate], i: usize, j: usize) -> Option<usize> {
    debug_assert!(i < j);
    let mut b = j;
    while b > i + 1 && commutes(&gates[j], &gates[b - 1]) {
        b -= 1;
    }
    // gates[j] can reach position b; gates[i] must travel to b - 1
    let s = b - 1;
    (i + 1..=s).all(|k| commutes(&gates[i], &gates[k])).then_some(s)
}

/// Remove `gates[i]`, `gates[j]` and insert `rep` between old positions `s` and `s + 1`.
fn splice(gates: &[Gate], i: usize, j: usize, s: usize, rep: &[Gate]) -> Vec<Gate> {
    let mut out = Vec::with_capacity(gates.len() + rep.len());
    out.extend_from_slice(&gates[..i]);
    out.extend_from_slice(&gates[i + 1..=s]);
    out.extend_from_slice(rep);
    out.extend_from_slice(&gates[s + 1..j]);
    out.extend_from_slice(&gates[j + 1..]);
    out
}

/// One movable two-gate rewrite: `(i, j, s, rule, replacement)`.
type Move = (usize, usize, usize, u8, Vec<Gate>);

fn find_pair(gates: &[Gate], rules: &[u8], from: usize, same_target: bool) -> Option<Move> {
    for i in from..gates.len() {
        for j in i + 1..gates.len() {
            if same_target && gates[i].target() != gates[j].target() {
                continue;
            }
            for &r in rules {
                if arity(r) != 2 {
                    continue;
                }
                if let Some(rep) = apply_rule(r, &[gates[i], gates[j]]) {
                    if let Some(s) = pivot(gates, i, j) {
                        return Some((i, j, s, r, rep));
                    }
                }
            }
        }
    }
    None
}

/// Apply shrinking rules until none fires.
fn shrink(mut gates: Vec<Gate>, rules: &[u8], pass: usize, trace: &mut Vec<TraceEntry>) -> Vec<Gate> {
    // every shrinking rule relates two gates on one target
    let same_target = rules.iter().all(|r| matches!(r, 1 | 2 | 3 | 9 | 10));
    while let Some((i, j, s, rule, rep)) = find_pair(&gates, rules, 0, same_target) {
        let before = gates.len();
        gates = splice(&gates, i, j, s, &rep);
        trace.push(TraceEntry { pass, rule, at: s, before, after: gates.len() });
    }
    gates
}

/// All tentative rewrites of one circuit, as new gate lists with the touched positions.
fn tentative(gates: &[Gate], rules: &[u8], near: Option<&[usize]>) -> Vec<(u8, usize, Vec<Gate>, Vec<usize>)> {
    let mut out = Vec::new();
    let relevant = |k: usize| near.is_none_or(|n| n.contains(&k));
    for &r in rules {
        if arity(r) == 1 {
            for i in (0..gates.len()).filter(|&i| relevant(i)) {
                if let Some(rep) = apply_rule(r, &[gates[i]]) {
                    let mut g = gates[..i].to_vec();
                    let touched = (i..i + rep.len()).collect();
                    g.extend_from_slice(&rep);
                    g.extend_from_slice(&gates[i + 1..]);
                    out.push((r, i, g, touched));
                }
            }
            continue;
        }
        for i in 0..gates.len() {
            for j in i + 1..gates.len() {
                if !relevant(i) && !relevant(j) {
                    continue;
                }
                let Some(rep) = apply_rule(r, &[gates[i], gates[j]]) else { continue };
                let Some(s) = pivot(gates, i, j) else { continue };
                let at = s;
                let touched = (at..at + rep.len()).collect();
                out.push((r, at, splice(gates, i, j, s, &rep), touched));
            }
        }
    }
    out
}

/// Search a chain of at most `depth` tentative rewrites after which shrinking lowers the
/// gate count below `target`.
fn explore(
    gates: &[Gate],
    strategy: &ReduceStrategy,
    depth: usize,
    target: usize,
    near: Option<&[usize]>,
    pass: usize,
    trail: &mut Vec<TraceEntry>,
) -> Option<Vec<Gate>> {
    if depth == 0 {
        return None;
    }
    for (rule, at, cand, touched) in tentative(gates, &strategy.exploratory, near) {
        trail.push(TraceEntry { pass, rule, at, before: gates.len(), after: cand.len() });
        let mark = trail.len();
        let shrunk = shrink(cand.clone(), &strategy.shrinking, pass, trail);
        if shrunk.len() < target {
            return Some(shrunk);
        }
        trail.truncate(mark);
        if let Some(found) = explore(&cand, strategy, depth - 1, target, Some(&touched), pass, trail) {
            return Some(found);
        }
        trail.pop();
    }
    None
}

/// Reduce with the default strategy.
pub fn reduce_circuit(c: &Circuit, strategy: &ReduceStrategy) -> Circuit {
    reduce_circuit_traced(c, strategy).0
}

/// Reduce the gate count; returns the circuit and one trace entry per applied rule.
pub fn reduce_circuit_traced(c: &Circuit, strategy: &ReduceStrategy) -> (Circuit, Vec<TraceEntry>) {
    let mut trace = Vec::new();
    let mut gates = shrink(c.gates().to_vec(), &strategy.shrinking, 0, &mut trace);
    let mut pass = 1;
    if strategy.max_passes > 0 && !strategy.exploratory.is_empty() {
        loop {
            let mut trail = Vec::new();
            match explore(&gates, strategy, strategy.max_passes, gates.len(), None, pass, &mut trail) {
                Some(g) => {
                    gates = g;
                    trace.extend(trail);
                    pass += 1;
                }
                None => break,
            }
        }
    }
    let mut out = c.clone();
    *out.gates_mut() = gates;
    (out, trace)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_gate(rng: &mut ChaCha8Rng, n: usize) -> Gate {
        let t = rng.gen_range(0..n);
        let (mut pos, mut neg) = (vec![], vec![]);
        for l in (0..n).filter(|&l| l != t) {
            match rng.gen_range(0..4) {
                0 => pos.push(l),
                1 => neg.push(l),
                _ => {}
            }
        }
        Gate::e(t, &pos, &neg)
    }

    #[test]
    fn duplicate_pair_vanishes() {
        let g = Gate::toffoli(0, 1, 2);
        let c = Circuit::from_gates(3, vec![g, g]).unwrap();
        assert!(reduce_circuit(&c, &ReduceStrategy::default()).is_empty());
    }

    #[test]
    fn planted_merge_across_commuting_gates() {
        let c = Circuit::from_gates(
            6,
            vec![Gate::e(3, &[0, 5], &[1]), Gate::cnot(4, 2), Gate::not(4), Gate::e(3, &[0], &[1, 5])],
        )
        .unwrap();
        let (r, trace) = reduce_circuit_traced(&c, &ReduceStrategy::default());
        assert_eq!(r.len(), 3);
        assert_eq!(trace[0].rule, 2);
        assert_eq!(trace[0].to_string(), "pass=0 rule=2 at=0 L=4->3");
        assert_eq!(r.permutation().unwrap(), c.permutation().unwrap());
    }

    #[test]
    fn random_circuits_keep_semantics() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..20 {
            let gates: Vec<Gate> = (0..30).map(|_| random_gate(&mut rng, 5)).collect();
            let c = Circuit::from_gates(5, gates).unwrap();
            let r = reduce_circuit(&c, &ReduceStrategy::default());
            assert!(r.len() <= c.len());
            assert_eq!(r.permutation().unwrap(), c.permutation().unwrap());
            assert_eq!(reduce_circuit(&r, &ReduceStrategy::default()), r);
        }
    }
}
