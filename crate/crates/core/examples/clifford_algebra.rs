//! Blade arithmetic in Cl(p,q), anticommutants, and the split of Cl(6,1)
//! into a tensor product.

use spinc_localization::clifford::{
    anticommutant_basis, blade_product, check_generator_relations, generated_subalgebra_dimension,
    split_isomorphism_images, AlgebraElement, Blade, Signature,
};
use spinc_localization::rational::{frac, int};

fn main() -> spinc_localization::Result<()> {
    // Cl(2,2): e1, e2 square to -1, ε1, ε2 to +1.
    let sig = Signature::new(2, 2)?;
    let e12 = Blade::from_generators(&[0, 1]);
    let (sign, b) = blade_product(e12, e12, sig)?;
    println!("(e1e2)² = {}", AlgebraElement::from_blade(sig, b, int(sign))?);

    let v = AlgebraElement::vector(sig, &[0, 2], &[frac(3, 5), frac(4, 5)])?;
    println!("v = {v}, v² = {}", v.mul(&v)?);

    let gens: Vec<_> = [2, 0, 1].iter().map(|&g| AlgebraElement::generator(sig, g)).collect::<Result<_, _>>()?;
    let basis = anticommutant_basis(sig, &gens)?;
    println!("anticommutant of ε1, e1, e2 in {sig}:");
    for x in &basis {
        println!("  {x}    square {}", x.mul(x)?);
    }

    let (sig, images) = split_isomorphism_images(4)?;
    let report = check_generator_relations(&images, sig);
    println!("{sig} → Cl(4,0)⊗Cl(2,1): {}, image dimension {}", report.summary(), generated_subalgebra_dimension(&images));
    Ok(())
}
