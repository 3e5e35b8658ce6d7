//! Dual weight enumerators: the [15, 4] simplex code and the [15, 11]
//! Hamming code.
//!
//! `cargo run --example macwilliams -- 2 4 1`

use cyclotome::cyclic_poly::irreducible_cyclic_code;
use cyclotome::weights::{
    evaluate_enumerator, macwilliams_dual, weight_spectrum_mceliece, WeightEnumerator,
};

fn main() -> cyclotome::Result<()> {
    let args: Vec<u64> = std::env::args()
        .skip(1)
        .filter_map(|a| a.parse().ok())
        .collect();
    let q = args.first().copied().unwrap_or(2);
    let k = args.get(1).copied().unwrap_or(4) as u32;
    let index = args.get(2).copied().unwrap_or(1);

    let spec = irreducible_cyclic_code(q, k, index)?;
    let primal: WeightEnumerator = weight_spectrum_mceliece(&spec)?.into();
    let dual = macwilliams_dual(&primal, q, k as u64, spec.n)?;
    println!("code  [{}, {k}]: {:?}", spec.n, primal.spectrum.counts);
    println!(
        "dual  [{}, {}]: {:?}",
        spec.n,
        spec.n - k as u64,
        dual.spectrum.counts
    );
    println!(
        "A(1,1) = {}, dual A(1,1) = {}",
        evaluate_enumerator(&primal, 1.0, 1.0),
        dual.spectrum.total()
    );

    let back = macwilliams_dual(&dual, q, spec.n - k as u64, spec.n)?;
    println!("transform twice returns the original: {}", back == primal);
    Ok(())
}
