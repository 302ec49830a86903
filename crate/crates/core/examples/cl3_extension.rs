//! Extending the spinor module of a 4n+2 dimensional space by three extra
//! generators, and the signs those generators square to.

use spinc_localization::cl3::{
    canonical_inner_product, end_iso_check, eta_fiber_correspondence, extend_to_cl3, lh_fiber_basis, sign_report,
};

fn main() -> spinc_localization::Result<()> {
    for tau in [0, 1] {
        let ext = extend_to_cl3(0, tau)?;
        println!("τ = {tau}: {} on real dimension {}: {}", ext.layout.sig, ext.dim(), ext.rep.relations().summary());

        let row = sign_report(&ext)?;
        let show = |s: &Option<_>| s.as_ref().map_or("-".to_string(), |q: &spinc_localization::rational::Q| q.to_string());
        println!(
            "  η₁² = {}, η₂² = {}; stated sign {:+} {}",
            show(&row.eta_squares[0]),
            show(&row.eta_squares[1]),
            row.claimed,
            if row.eta_agrees_with_claim() { "agrees" } else { "disagrees" }
        );
        for (b, s) in row.anticommutant_basis.iter().zip(&row.anticommutant_squares) {
            println!("  anticommutant element {b}, square {}", show(s));
        }

        let fiber = lh_fiber_basis(&ext, &canonical_inner_product(&ext))?;
        let c = eta_fiber_correspondence(&fiber)?;
        println!("  fiber dimension {}, closed under i {}, η ↦ ρ̃(η) bijective {}", fiber.dim(), fiber.closed_under_i, c.holds());

        let e = end_iso_check(&ext);
        println!("  image of the algebra: {} of {} endomorphisms", e.image_dimension, e.endomorphism_dimension);
    }
    Ok(())
}
