//! Lower a 5-control Toffoli gate in the four supported ways.

use revsynth::synth::{decompose_mct, MctMode};
use revsynth::{Bits, Gate};

fn main() -> revsynth::Result<()> {
    let k = 5;
    let g = Gate::mct(Bits::range(k), k);
    let anc: Vec<usize> = (k + 1..2 * k - 1).collect();
    let cases = [
        ("recursive", MctMode::Recursive4 { levels: 1 }, k + 2, &[][..]),
        ("one borrowed line", MctMode::Barenco8, k + 2, &[][..]),
        ("clean ancilla", MctMode::CleanAncilla, 2 * k - 1, &anc[..]),
        ("dirty ancilla", MctMode::DirtyAncilla, 2 * k - 1, &anc[..]),
    ];
    for (name, mode, width, spare) in cases {
        let c = decompose_mct(&g, mode, width, spare)?;
        println!("{name:>18}: {} gates, widest {} controls", c.len(), c.max_controls());
    }
    Ok(())
}
