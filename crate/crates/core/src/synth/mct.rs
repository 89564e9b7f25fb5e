//! Multiple-control Toffoli decompositions into gates with at most two controls.

use crate::bits::Bits;
use crate::error::{Error, Result};
use crate::model::{Circuit, Gate};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MctMode {
    /// `C_{I;j} = C_{i_k,l;j} * C_{I';l} * C_{i_k,l;j} * C_{I';l}` with a borrowed line `l`,
    /// unrolled the given number of levels.
    Recursive4 { levels: usize },
    /// Two-half split around one borrowed line; `8(k-3)` gates for `k >= 4`.
    Barenco8,
    /// Compute/uncompute chain on `k-2` zeroed ancilla; `2k-3` gates, ancilla restored.
    CleanAncilla,
    /// Compute chain only; `k-1` gates, ancilla keep garbage.
    DirtyAncilla,
}

fn toffoli_or_less(controls: &[usize], t: usize) -> Gate {
    debug_assert!(controls.len() <= 2);
    Gate::e(t, controls, &[])
}

/// Smallest line below `width` outside `used`.
pub fn free_line(width: usize, used: Bits) -> Option<usize> {
    (0..width).find(|&l| !used.contains(l))
}

/// `C^m(controls -> t)` using `m-2` borrowed lines of arbitrary value; `4(m-2)` Toffoli gates.
pub fn vchain_dirty(controls: &[usize], t: usize, borrowed: &[usize]) -> Vec<Gate> {
    let m = controls.len();
    if m <= 2 {
        return vec![toffoli_or_less(controls, t)];
    }
    assert!(borrowed.len() >= m - 2, "need {} borrowed lines", m - 2);
    let a = &borrowed[..m - 2];
    let top = Gate::toffoli(controls[m - 1], a[m - 3], t);
    // rung r (1-based, r = 1..m-3) computes a[r] ^= c[r+1] & a[r-1]
    let rung = |r: usize| Gate::toffoli(controls[r + 1], a[r - 1], a[r]);
    let base = Gate::toffoli(controls[0], controls[1], a[0]);
    let mut half = vec![top];
    half.extend((1..m - 2).rev().map(rung));
    half.push(base);
    half.extend((1..m - 2).map(rung));
    let mut out = half.clone();
    out.extend(half);
    out
}

fn recursive4(controls: &[usize], t: usize, width: usize, levels: usize) -> Result<Vec<Gate>> {
    let k = controls.len();
    if k <= 2 || levels == 0 {
        return Ok(vec![Gate::mct(Bits::from_lines(controls.iter().copied()), t)]);
    }
    let support = Bits::from_lines(controls.iter().copied()).with(t);
    let l = free_line(width, support).ok_or_else(|| Error::Capacity("recursive split needs a free line".into()))?;
    let (head, last) = (&controls[..k - 1], controls[k - 1]);
    let outer = Gate::toffoli(last, l, t);
    let inner = recursive4(head, l, width, levels - 1)?;
    let mut out = vec![outer];
    out.extend(inner.iter().copied());
    out.push(outer);
    out.extend(inner);
    Ok(out)
}

fn vchain_cost(m: usize) -> usize {
    if m <= 2 {
        1
    } else {
        4 * (m - 2)
    }
}

fn barenco8(controls: &[usize], t: usize, width: usize) -> Result<Vec<Gate>> {
    let k = controls.len();
    if k <= 2 {
        return Ok(vec![toffoli_or_less(controls, t)]);
    }
    if k == 3 {
        return recursive4(controls, t, width, 1);
    }
    let support = Bits::from_lines(controls.iter().copied()).with(t);
    let a = free_line(width, support).ok_or_else(|| Error::Capacity("split needs a free line".into()))?;
    if k == 4 {
        // c0 is borrowed as a scratch target; found by exhaustive search over 8-gate sequences
        let c = controls;
        let x = Gate::toffoli(c[1], a, c[0]);
        let y = Gate::toffoli(c[0], c[2], t);
        let z = Gate::toffoli(c[0], c[3], a);
        return Ok(vec![x, y, x, z, x, y, x, z]);
    }
    let m1 = k.div_ceil(2);
    let (c1, c2) = controls.split_at(m1);
    // part A: a ^= AND(c1), borrowing c2 and t
    let mut borrow_a: Vec<usize> = c2.to_vec();
    borrow_a.push(t);
    let part_a = vchain_dirty(c1, a, &borrow_a);
    // part B: t ^= AND(c2) & a, borrowing c1
    let mut ctl_b = c2.to_vec();
    ctl_b.push(a);
    let part_b = vchain_dirty(&ctl_b, t, c1);
    debug_assert_eq!(part_a.len(), vchain_cost(m1));
    let mut out = part_b.clone();
    out.extend(part_a.iter().copied());
    out.extend(part_b);
    out.extend(part_a);
    Ok(out)
}

fn ancilla_chain(controls: &[usize], t: usize, anc: &[usize], clean: bool) -> Result<Vec<Gate>> {
    let k = controls.len();
    if k <= 2 {
        return Ok(vec![toffoli_or_less(controls, t)]);
    }
    if anc.len() < k - 2 {
        return Err(Error::Capacity(format!("{k}-control gate needs {} ancilla, got {}", k - 2, anc.len())));
    }
    let mut compute = vec![Gate::toffoli(controls[0], controls[1], anc[0])];
    for i in 1..k - 2 {
        compute.push(Gate::toffoli(controls[i + 1], anc[i - 1], anc[i]));
    }
    let mut out = compute.clone();
    out.push(Gate::toffoli(controls[k - 1], anc[k - 3], t));
    if clean {
        out.extend(compute.into_iter().rev());
    }
    Ok(out)
}

/// Decompose `g` into gates with at most two controls.
///
/// `spare` lists ancilla lines for the ancilla modes; the borrowed-line modes pick the
/// smallest line outside the gate's support. Negative controls are handled by NOT
/// conjugation around the positive-control decomposition.
pub fn decompose_mct(g: &Gate, mode: MctMode, width: usize, spare: &[usize]) -> Result<Circuit> {
    if g.max_line() >= width {
        return Err(Error::Structural(format!("gate {g} outside width {width}")));
    }
    let controls = g.controls().to_vec();
    let t = g.target();
    let body = match mode {
        MctMode::Recursive4 { levels } => recursive4(&controls, t, width, levels)?,
        MctMode::Barenco8 => barenco8(&controls, t, width)?,
        MctMode::CleanAncilla | MctMode::DirtyAncilla => {
            if spare.iter().any(|&l| g.support().contains(l) || l >= width) {
                return Err(Error::Structural("ancilla line overlaps the gate or is out of range".into()));
            }
            ancilla_chain(&controls, t, spare, mode == MctMode::CleanAncilla)?
        }
    };
    let flips: Vec<Gate> = g.neg().iter().map(Gate::not).collect();
    let mut c = Circuit::new(width);
    c.extend(flips.iter().copied());
    c.extend(body);
    c.extend(flips);
    if mode == MctMode::DirtyAncilla && controls.len() > 2 {
        c.set_dirty_ancilla(true);
    }
    Ok(c)
}

/// Replace every gate with more than two controls by its borrowed-line decomposition.
pub fn lower_to_omega2(c: &Circuit) -> Result<Circuit> {
    let mut out = c.clone();
    out.gates_mut().clear();
    for g in c.gates() {
        if g.control_count() <= 2 {
            out.push(*g)?;
            continue;
        }
        let d = decompose_mct(g, MctMode::Barenco8, c.width(), &[]).map_err(|e| match e {
            Error::Capacity(m) => Error::Basis(format!("gate {g} cannot be lowered: {m}")),
            other => other,
        })?;
        out.extend(d.gates().iter().copied());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Compare a decomposition with the gate on every state of `width` lines.
    fn same_as_gate(g: &Gate, c: &Circuit) -> bool {
        (0..1u64 << c.width()).all(|x| c.eval_code(x) == g.apply_code(x))
    }

    #[test]
    fn vchain_matches_gate() {
        for m in 3..=5 {
            let controls: Vec<usize> = (0..m).collect();
            let borrowed: Vec<usize> = (m + 1..2 * m - 1).collect();
            let gates = vchain_dirty(&controls, m, &borrowed);
            assert_eq!(gates.len(), 4 * (m - 2));
            let c = Circuit::from_gates(2 * m - 1, gates).unwrap();
            assert!(same_as_gate(&Gate::mct(Bits::range(m), m), &c));
        }
    }

    #[test]
    fn recursive_one_level_is_four_gates() {
        let g = Gate::e(3, &[0, 1, 2], &[]);
        let c = decompose_mct(&g, MctMode::Recursive4 { levels: 1 }, 5, &[]).unwrap();
        assert_eq!(c.len(), 4);
        assert!(same_as_gate(&g, &c));
    }

    #[test]
    fn barenco_counts() {
        for k in 4..=8 {
            let g = Gate::mct(Bits::range(k), k);
            let c = decompose_mct(&g, MctMode::Barenco8, k + 2, &[]).unwrap();
            assert_eq!(c.len(), 8 * (k - 3), "k = {k}");
            assert!(c.max_controls() <= 2);
            assert!(same_as_gate(&g, &c));
        }
    }

    #[test]
    fn negative_controls_peeled() {
        let g = Gate::e(4, &[0, 2], &[1, 3]);
        let c = decompose_mct(&g, MctMode::Barenco8, 6, &[]).unwrap();
        assert!(same_as_gate(&g, &c));
    }

    #[test]
    fn clean_chain_for_four_controls() {
        let g = Gate::mct(Bits::range(4), 4);
        let c = decompose_mct(&g, MctMode::CleanAncilla, 7, &[5, 6]).unwrap();
        assert_eq!(c.len(), 5);
        for x in 0..32u64 {
            assert_eq!(c.eval_code(x), g.apply_code(x));
        }
    }

    #[test]
    fn no_free_line_is_reported() {
        let g = Gate::mct(Bits::range(3), 3);
        assert!(matches!(decompose_mct(&g, MctMode::Barenco8, 4, &[]), Err(Error::Capacity(_))));
    }
}
