use crate::bits::Bits;
use crate::model::Gate;

/// Swapping the two gates leaves the composition unchanged.
pub fn commutes(g1: &Gate, g2: &Gate) -> bool {
    let (t1, t2) = (g1.target(), g2.target());
    let apart = !g2.controls().contains(t1) && !g1.controls().contains(t2);
    let exclusive = !g1.pos().is_disjoint(&g2.neg()) || !g2.pos().is_disjoint(&g1.neg());
    apart || exclusive
}

/// Rewrite rule identifiers; 7 and 8 act on one gate, the rest on two adjacent gates.
pub const ALL_RULES: [u8; 10] = [1, 2, 3, 4, 5, 6, 7, 8, 9, 10];

/// Number of gates a rule reads.
pub fn arity(rule: u8) -> usize {
    match rule {
        7 | 8 => 1,
        _ => 2,
    }
}

fn gate(t: usize, pos: Bits, neg: Bits) -> Option<Gate> {
    Gate::new(t, pos, neg).ok()
}

/// The only line where two sets differ, if exactly one.
fn single_extra(big: Bits, small: Bits) -> Option<usize> {
    if !small.is_subset(&big) {
        return None;
    }
    let d = big - small;
    (d.len() == 1).then(|| d.first().expect("one element"))
}

fn rule2(a: &Gate, b: &Gate) -> Option<Vec<Gate>> {
    if a.target() != b.target() {
        return None;
    }
    let try_order = |g1: &Gate, g2: &Gate| {
        let k = single_extra(g1.pos(), g2.pos())?;
        (single_extra(g2.neg(), g1.neg()) == Some(k)).then(|| gate(g1.target(), g2.pos(), g1.neg()))?
    };
    try_order(a, b).or_else(|| try_order(b, a)).map(|g| vec![g])
}

fn rule3(a: &Gate, b: &Gate) -> Option<Vec<Gate>> {
    if a.target() != b.target() {
        return None;
    }
    let pq = a.pos() - b.pos();
    let qp = b.pos() - a.pos();
    if pq.len() != 1 || qp.len() != 1 {
        return None;
    }
    let (p, q) = (pq.first()?, qp.first()?);
    if !b.neg().contains(p) || !a.neg().contains(q) || a.neg().without(q) != b.neg().without(p) {
        return None;
    }
    let j3 = a.neg().without(q);
    Some(vec![gate(a.target(), a.pos(), j3)?, gate(b.target(), b.pos(), j3)?])
}

fn rule4(a: &Gate, b: &Gate) -> Option<Vec<Gate>> {
    let (t1, t2) = (a.target(), b.target());
    if commutes(a, b) || !b.controls().contains(t1) || a.controls().contains(t2) {
        return None;
    }
    let pos = (a.pos() | b.pos()).without(t1);
    let neg = (a.neg() | b.neg()).without(t1);
    Some(vec![gate(t2, pos, neg)?, *b, *a])
}

fn rule6(a: &Gate, b: &Gate) -> Option<Vec<Gate>> {
    let (t1, t2) = (a.target(), b.target());
    if commutes(a, b) || !a.controls().contains(t2) || b.controls().contains(t1) {
        return None;
    }
    let pos = (a.pos() | b.pos()).without(t2);
    let neg = (a.neg() | b.neg()).without(t2);
    Some(vec![*b, *a, gate(t1, pos, neg)?])
}

/// Swap of a non-commuting pair when one gate's controls contain the other's, in either
/// orientation.
fn rule5(a: &Gate, b: &Gate) -> Option<Vec<Gate>> {
    let (t1, t2) = (a.target(), b.target());
    if commutes(a, b) {
        return None;
    }
    if b.controls().contains(t1)
        && !a.controls().contains(t2)
        && a.pos().is_subset(&b.pos())
        && a.neg().is_subset(&b.neg())
    {
        let moved = if b.neg().contains(t1) {
            gate(t2, b.pos().with(t1), b.neg().without(t1))?
        } else {
            gate(t2, b.pos().without(t1), b.neg().with(t1))?
        };
        return Some(vec![moved, *a]);
    }
    if a.controls().contains(t2)
        && !b.controls().contains(t1)
        && b.pos().is_subset(&a.pos())
        && b.neg().is_subset(&a.neg())
    {
        let moved = if a.neg().contains(t2) {
            gate(t1, a.pos().with(t2), a.neg().without(t2))?
        } else {
            gate(t1, a.pos().without(t2), a.neg().with(t2))?
        };
        return Some(vec![*b, moved]);
    }
    None
}

fn rule7(g: &Gate) -> Option<Vec<Gate>> {
    if g.neg().is_empty() {
        return None;
    }
    let flips: Vec<Gate> = g.neg().iter().map(Gate::not).collect();
    let mut out = flips.clone();
    out.push(gate(g.target(), g.controls(), Bits::EMPTY)?);
    out.extend(flips);
    Some(out)
}

fn rule8(g: &Gate) -> Option<Vec<Gate>> {
    let k = g.neg().first()?;
    let rest = g.neg().without(k);
    Some(vec![gate(g.target(), g.pos().with(k), rest)?, gate(g.target(), g.pos(), rest)?])
}

fn rule9(a: &Gate, b: &Gate) -> Option<Vec<Gate>> {
    if a.target() != b.target() || a.neg() != b.neg() {
        return None;
    }
    let k = single_extra(a.pos(), b.pos()).or_else(|| single_extra(b.pos(), a.pos()))?;
    let small = a.pos().without(k);
    Some(vec![gate(a.target(), small, a.neg().with(k))?])
}

fn rule10(a: &Gate, b: &Gate) -> Option<Vec<Gate>> {
    if a.target() != b.target() || a.pos() != b.pos() {
        return None;
    }
    let k = single_extra(a.neg(), b.neg()).or_else(|| single_extra(b.neg(), a.neg()))?;
    let small = a.neg().without(k);
    Some(vec![gate(a.target(), a.pos().with(k), small)?])
}

/// Apply rule `rule` to the window; `None` when the side conditions fail.
pub fn apply_rule(rule: u8, window: &[Gate]) -> Option<Vec<Gate>> {
    if window.len() != arity(rule) {
        return None;
    }
    match (rule, window) {
        (1, [a, b]) => (a == b).then(Vec::new),
        (2, [a, b]) => rule2(a, b),
        (3, [a, b]) => rule3(a, b),
        (4, [a, b]) => rule4(a, b),
        (5, [a, b]) => rule5(a, b),
        (6, [a, b]) => rule6(a, b),
        (7, [g]) => rule7(g),
        (8, [g]) => rule8(g),
        (9, [a, b]) => rule9(a, b),
        (10, [a, b]) => rule10(a, b),
        _ => None,
    }
}
