//! Logarithm tables of GF(2^6) and their circuits, plus exponent recovery from a class representative.

use revsynth::ancilla::face_cover_synth;
use revsynth::gf2::{cyclic_classes, exponent_recovery, reduced_log_table, table_log, Gf2PolyField, Representative};
use revsynth::reduce::{reduce_circuit, ReduceStrategy};
use revsynth::synth::synth_mixed_polarity;

fn main() -> revsynth::Result<()> {
    let field = Gf2PolyField::parse_spec("n:6;f:x^6+x+1")?;
    println!("{field:?}");
    let log = table_log(&field)?;

    let plain = reduce_circuit(&synth_mixed_polarity(&log.to_permutation()?)?, &ReduceStrategy::shrink_only());
    let memory = face_cover_synth(&log)?;
    println!("log: in place L={}, onto fresh lines L={}", plain.len(), memory.len());

    for rule in [Representative::KMin, Representative::KMax, Representative::KDist] {
        let c = face_cover_synth(&reduced_log_table(&field, rule)?)?;
        println!("reduced log {rule:?}: L={}", c.len());
    }

    let classes = cyclic_classes(&field)?;
    let sizes: Vec<usize> = classes.iter().map(|c| c.len()).collect();
    println!("{} squaring classes, sizes {sizes:?}", classes.len());
    let y = field.exp(45);
    let class = classes.iter().find(|c| c.contains(y)).expect("nonzero");
    println!("log of {y:#b} from representative {:#b}: {}", class.representative, exponent_recovery(&field, class, y)?);
    Ok(())
}
