//! Circuit, truth-table and permutation text formats.

use revsynth::io::{emit_permutation, emit_tfc, parse_permutation, parse_tfc, CircuitFile, TruthTableFile};
use revsynth::synth::{synth_permutation, SynthesisOptions};
use revsynth::BooleanMapping;

fn main() -> revsynth::Result<()> {
    let p = parse_permutation(".n 3\n(1,6)(2,5)\n")?;
    print!("{}", emit_permutation(&p, true)?);

    let c = synth_permutation(&p, &SynthesisOptions::default())?;
    let text = emit_tfc(&CircuitFile::new(c).with_comment("swap pairs"));
    print!("{text}");
    let back = parse_tfc(&text)?;

    let table = TruthTableFile::from_mapping(&BooleanMapping::from_permutation(&p.to_dense()?));
    print!("{}", table.emit());
    assert!(back.circuit.realizes(&table.to_mapping()?, None));

    let with_dc = TruthTableFile::parse(".i 1\n.o 1\n0 1\n1 -\n.e\n")?;
    println!("don't-care table accepted by synthesis: {}", with_dc.to_mapping().is_ok());
    Ok(())
}
