//! Solving for one point-independent map that carries the symbol to the
//! Thom model on the fiber, with the two wrong models as controls.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use spinc_localization::cl3::extend_to_cl3;
use spinc_localization::localization::{localization_intertwiner, explicit_vertical_map, FiberPoint, ThomVariant};

fn main() -> spinc_localization::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for tau in [0, 1] {
        let ext = extend_to_cl3(0, tau)?;
        let points: Vec<FiberPoint> = (0..50).map(|_| FiberPoint::random(&mut rng, ext.y_generators())).collect();
        println!("τ = {tau}, S(Y) of real dimension {}", ext.y_dim());
        for v in [ThomVariant::Standard, ThomVariant::OrientationReversed, ThomVariant::ContractionSignFlipped] {
            let s = localization_intertwiner(&ext, &points, v)?;
            println!(
                "  {:<26} solutions {} (axes {}), invertible map {}",
                v.name(),
                s.solution_dim,
                s.axis_solution_dim,
                if s.found() { "found" } else { "none" }
            );
        }
        let m = explicit_vertical_map(&ext, &points)?;
        println!(
            "  explicit map: well defined {}, invertible {}, ℂ-linear {}, intertwines at all points {}",
            m.well_defined,
            m.invertible,
            m.complex_linear,
            m.intertwines()
        );
    }
    Ok(())
}
