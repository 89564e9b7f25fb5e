//! Shrink a circuit with the rewrite rules and print the trace.

use revsynth::reduce::{reduce_circuit_traced, ReduceStrategy};
use revsynth::{Circuit, Gate};

fn main() -> revsynth::Result<()> {
    let c = Circuit::from_gates(
        4,
        vec![
            Gate::e(0, &[1, 2], &[3]),
            Gate::not(3),
            Gate::e(0, &[1], &[2, 3]),
            Gate::cnot(1, 2),
            Gate::cnot(1, 2),
            Gate::e(3, &[0], &[]),
            Gate::e(3, &[0, 1], &[]),
        ],
    )?;
    let (r, trace) = reduce_circuit_traced(&c, &ReduceStrategy::default());
    for t in &trace {
        println!("{t}");
    }
    assert_eq!(r.permutation()?, c.permutation()?);
    println!("L {} -> {}", c.len(), r.len());
    for g in r.gates() {
        println!("  {g}");
    }
    Ok(())
}
