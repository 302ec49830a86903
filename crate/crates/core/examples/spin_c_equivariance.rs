//! The spin^c group acting on the extended module, and the twisted adjoint
//! action that makes the action equivariant.

use spinc_localization::cl3::{ad_z2, check_equivariance, extend_to_cl3};
use spinc_localization::clifford::{AlgebraElement, Blade};
use spinc_localization::rational::frac;
use spinc_localization::rep::{Phase, SpinCElement};

fn main() -> spinc_localization::Result<()> {
    for tau in [0, 1] {
        let ext = extend_to_cl3(0, tau)?;
        let base = ext.layout.base_signature();
        // μ = 3/5 + 4/5 e1e2, u = (3 + 4i)/5.
        let rotor = AlgebraElement::scalar(base, frac(3, 5)).add(&AlgebraElement::from_blade(base, Blade::from_mask(0b11), frac(4, 5))?)?;
        let lam = SpinCElement::new(rotor, Phase::from_direction(2, 1)?)?;

        let sig = ext.layout.sig;
        let mut ok = 0;
        for g in 0..sig.generators() {
            let v = AlgebraElement::generator(sig, g)?;
            if check_equivariance(&lam, &v, &ext)? {
                ok += 1;
            }
        }
        let eta1 = AlgebraElement::generator(sig, ext.layout.eta[0])?;
        println!("τ = {tau}: equivariant on {ok}/{} generators; Ad(λ) η₁ = {}", sig.generators(), ad_z2(&lam, &eta1, &ext.layout)?);
    }
    Ok(())
}
