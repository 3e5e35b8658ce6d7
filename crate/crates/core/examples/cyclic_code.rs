//! An irreducible cyclic code: generator, check polynomial, and its words as
//! traces.
//!
//! `cargo run --example cyclic_code -- 2 4 3`

use cyclotome::cyclic_poly::{codeword_from_trace, generator_matrix, irreducible_cyclic_code};

fn main() -> cyclotome::Result<()> {
    let args: Vec<u64> = std::env::args()
        .skip(1)
        .filter_map(|a| a.parse().ok())
        .collect();
    let q = args.first().copied().unwrap_or(2);
    let k = args.get(1).copied().unwrap_or(4) as u32;
    let index = args.get(2).copied().unwrap_or(3);

    let spec = irreducible_cyclic_code(q, k, index)?;
    println!("[{}, {k}] code over GF({q}), N = {index}", spec.n);
    println!("g(x) = {}", spec.generator);
    println!("h(x) = {}", spec.check);
    for row in generator_matrix(&spec).iter().take(8) {
        println!("  {row:?}");
    }

    for tau in spec.field.elements().take(8) {
        let word = codeword_from_trace(tau, &spec)?;
        let weight = word.iter().filter(|&&c| c != 0).count();
        println!(
            "tau = {:<20} weight {weight:>3}  in code: {}",
            spec.field.to_poly(tau)?.to_string(),
            spec.contains(&word)
        );
    }
    Ok(())
}
