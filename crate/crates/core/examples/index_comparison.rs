//! Compare ⟨ch(E) e^{x/2} Â, [X]⟩ with ⟨ch(E)(e^{x/2} − e^{−x/2}) Â, [X]⟩.
//!
//! Run with a model file to evaluate it, e.g.
//! `cargo run --example index_comparison -- crates/core/models/projective3.model`.

use spinc_localization::genus::{compare_indices, odd_part_identity, projective_3_model, sphere_model};
use spinc_localization::model::IndexModel;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    println!("2·odd(e^(t/2)) = e^(t/2) − e^(−t/2) through t^20: {}", odd_part_identity(20)?);
    for (name, (ring, x, a_hat)) in [("sphere", sphere_model()), ("CP3", projective_3_model())] {
        let c = compare_indices(&ring, &ring.one(), &x, &a_hat);
        println!("{name}: x = {x}, Â = {a_hat}, index_X = {}, index_Y = {}", c.index_x, c.index_y);
    }
    if let Some(path) = std::env::args().nth(1) {
        let model = IndexModel::load(path.as_ref())?;
        let c = model.evaluate();
        println!("{path}: index_X = {}, index_Y = {}, equality {}", c.index_x, c.index_y, c.equality);
        for v in &c.violations {
            println!("  {v}");
        }
    }
    Ok(())
}
