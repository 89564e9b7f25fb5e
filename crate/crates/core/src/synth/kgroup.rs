use super::mct::lower_to_omega2;
use super::script::{all_ones, bit, ConjugationScript};
use super::Basis;
use crate::bits::Bits;
use crate::error::{Error, Result};
use crate::model::{Circuit, Gate};
use crate::perm::Transposition;

/// Bound on the gate count of [`synth_k_group`] in the two-control basis.
pub fn k_group_bound(n: usize, k: usize) -> usize {
    let lg = k.trailing_zeros() as usize;
    12 * n + k * (1 << (k + 1)) + 32 * k * lg - 10 * lg
}

/// Column `line` of the point matrix as a `k`-bit word, row `r` in bit `r`.
fn column(points: &[u64], line: usize) -> u64 {
    points.iter().enumerate().filter(|(_, &p)| bit(p, line)).fold(0, |acc, (r, _)| acc | 1 << r)
}

/// Product of `K` pairwise independent transpositions via one canonical point matrix.
///
/// Rows are `x_1, y_1, x_2, y_2, …`; conjugation drives row `r` to the binary code of `r`
/// on `log2(2K)` chosen lines and to all ones elsewhere, where one gate swaps every pair.
pub fn k_group_script(group: &[Transposition], n: usize) -> Result<(ConjugationScript, Gate)> {
    let rows: Vec<(u64, u64)> = group.iter().map(|t| (t.a, t.b)).collect();
    k_group_script_ordered(&rows, n)
}

/// [`k_group_script`] keeping the given orientation of every pair as the row order.
pub fn k_group_script_ordered(group: &[(u64, u64)], n: usize) -> Result<(ConjugationScript, Gate)> {
    let kk = group.len();
    let k = 2 * kk;
    if kk == 0 || !k.is_power_of_two() {
        return Err(Error::Parameter(format!("group size {kk} is not a power of two")));
    }
    let lg = k.trailing_zeros() as usize;
    if lg >= n || n > 64 {
        return Err(Error::Parameter(format!("log2 {k} must be below the width {n}")));
    }
    let rows: Vec<u64> = group.iter().flat_map(|&(a, b)| [a, b]).collect();
    for (i, &p) in rows.iter().enumerate() {
        if rows[i + 1..].contains(&p) {
            return Err(Error::Structural("group transpositions share a point".into()));
        }
        if p > all_ones(n) {
            return Err(Error::Structural(format!("point {p} does not fit {n} lines")));
        }
    }
    let mut s = ConjugationScript::new(&rows);

    // clear repeated columns
    let mut kept: Vec<usize> = Vec::new();
    for j in 0..n {
        let cj = column(s.points(), j);
        if cj == 0 {
            continue;
        }
        match kept.iter().find(|&&i| column(s.points(), i) == cj) {
            Some(&i) => s.conj(Gate::cnot(i, j)),
            None => kept.push(j),
        }
    }
    debug_assert!(kept.len() >= lg);
    let canon: Vec<usize> = kept[..lg].to_vec();
    let others: Vec<usize> = (0..n).filter(|l| !canon.contains(l)).collect();

    let row0 = s.point(0);
    for j in (0..n).filter(|&j| bit(row0, j)) {
        s.conj(Gate::not(j));
    }
    let code =
        |r: usize| canon.iter().enumerate().filter(|(b, _)| bit(r as u64, *b)).fold(0u64, |a, (_, &l)| a | 1 << l);
    let canon_mask = canon.iter().fold(0u64, |a, &l| a | 1 << l);
    for r in 1..k {
        let want = code(r);
        let mut row = s.point(r);
        if row == want {
            continue;
        }
        if row & !canon_mask == 0 {
            let ctl = Bits::from_word(row);
            s.conj(Gate::mct(ctl, others[0]));
            row = s.point(r);
        }
        let j = (row & !canon_mask).trailing_zeros() as usize;
        for jp in (0..n).filter(|&l| l != j && bit(row, l) != bit(want, l)) {
            s.conj(Gate::cnot(j, jp));
        }
        s.conj(Gate::mct(Bits::from_word(want), j));
        debug_assert_eq!(s.point(r), want);
    }
    for &j in &others {
        s.conj(Gate::not(j));
    }
    let core = Gate::mct(Bits::from_lines(others.iter().copied()), canon[0]);
    Ok((s, core))
}

pub fn synth_k_group(group: &[Transposition], n: usize, basis: Basis) -> Result<Circuit> {
    let rows: Vec<(u64, u64)> = group.iter().map(|t| (t.a, t.b)).collect();
    synth_k_group_ordered(&rows, n, basis)
}

pub fn synth_k_group_ordered(group: &[(u64, u64)], n: usize, basis: Basis) -> Result<Circuit> {
    let (s, core) = k_group_script_ordered(group, n)?;
    let c = s.wrap(n, &[core])?;
    match basis {
        Basis::Omega => Ok(c),
        Basis::Omega2 => lower_to_omega2(&c),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Permutation;
    use rand::seq::index::sample;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn known_pair_takes_eleven_gates() {
        let rows = [(9, 0), (15, 6)];
        let g = [Transposition::new(9, 0), Transposition::new(15, 6)];
        let c = synth_k_group_ordered(&rows, 4, Basis::Omega2).unwrap();
        assert_eq!(c.len(), 11);
        assert_eq!(c.permutation().unwrap(), Permutation::from_transpositions(4, &g));
        assert_eq!(c.gates()[5], Gate::toffoli(2, 3, 0));
    }

    #[test]
    fn random_groups_realized() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for (kk, n) in [(2, 4), (2, 6), (4, 8), (4, 6), (8, 8)] {
            for _ in 0..20 {
                let v: Vec<u64> = sample(&mut rng, 1 << n, 2 * kk).into_iter().map(|x| x as u64).collect();
                let g: Vec<Transposition> = v.chunks(2).map(|p| Transposition::new(p[0], p[1])).collect();
                let want = Permutation::from_transpositions(n, &g);
                let c = synth_k_group(&g, n, Basis::Omega2).unwrap();
                assert_eq!(c.permutation().unwrap(), want);
                assert!(c.max_controls() <= 2);
                assert!(c.len() <= k_group_bound(n, 2 * kk));
            }
        }
    }

    #[test]
    fn width_constraint() {
        let g = [Transposition::new(0, 1), Transposition::new(2, 3)];
        assert!(matches!(synth_k_group(&g, 2, Basis::Omega), Err(Error::Parameter(_))));
    }
}
