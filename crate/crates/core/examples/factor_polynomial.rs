//! Irreducible factors of x^n - 1 over GF(q), one per cyclotomic coset.
//!
//! `cargo run --example factor_polynomial -- 47 2`

use cyclotome::cosets::coset_leaders;
use cyclotome::cyclic_poly::{factor_xn_minus_1, Poly};

fn main() -> cyclotome::Result<()> {
    let args: Vec<u64> = std::env::args()
        .skip(1)
        .filter_map(|a| a.parse().ok())
        .collect();
    let (n, q) = (
        args.first().copied().unwrap_or(15),
        args.get(1).copied().unwrap_or(2),
    );

    let cosets = coset_leaders(n, q)?;
    let factors = factor_xn_minus_1(n, q)?;
    for (c, f) in cosets.cosets.iter().zip(&factors) {
        println!("coset {:>3} (size {:>3}): {f}", c.leader, c.size);
    }
    let product = factors.iter().fold(Poly::one(q), |acc, f| &acc * f);
    assert_eq!(product, Poly::x_pow_minus_one(q, n as usize));
    println!("product = {product}");
    Ok(())
}
