//! CSV comparison of every method on the GF(2^4) logarithm and two random permutations.

use revsynth::cli::{bench, parse_manifest, BasisArg, MethodArg};

fn main() -> revsynth::Result<()> {
    let manifest = "field n:4;f:10011 log\nrandom 5 2\n";
    let targets = parse_manifest(manifest, 1)?;
    let methods = [MethodArg::B, MethodArg::K, MethodArg::Face, MethodArg::Mixed, MethodArg::Lupanov, MethodArg::Cover];
    print!("{}", bench(&targets, &methods, BasisArg::Omega2, 1, 0)?);
    Ok(())
}
