//! Log/antilog arithmetic in GF(q^k).
//!
//! `cargo run --example field_arithmetic -- 2 4`

use cyclotome::field::{ExtField, FieldElement};

fn main() -> cyclotome::Result<()> {
    let args: Vec<u64> = std::env::args()
        .skip(1)
        .filter_map(|a| a.parse().ok())
        .collect();
    let (q, k) = (
        args.first().copied().unwrap_or(2),
        args.get(1).copied().unwrap_or(4) as u32,
    );
    let f = ExtField::new(q, k)?;
    println!(
        "GF({q}^{k}) = GF({q})[x] / ({}), alpha = {}",
        f.modulus(),
        f.generator()
    );

    println!("{:>4}  {:<24} Tr", "i", "alpha^i");
    for i in 0..f.group_order().min(16) {
        let a = FieldElement::Exp(i);
        println!("{i:>4}  {:<24} {}", f.to_poly(a)?.to_string(), f.trace(a)?);
    }

    let a = f.from_packed(f.order() - 1)?;
    let b = f.alpha_pow(-1);
    let prod = f.mul(a, b)?;
    println!("({}) * alpha^-1 = {}", f.to_poly(a)?, f.to_poly(prod)?);
    println!("log of that product: {}", f.discrete_log(prod)?);
    let inv = f.inv(a)?.expect("nonzero");
    println!("inverse of ({}) is ({})", f.to_poly(a)?, f.to_poly(inv)?);
    Ok(())
}
