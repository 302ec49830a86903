//! Complex spinor modules S2…S8 as graded tensor powers of Λ*ℝ², their
//! chirality operators and structure maps.

use spinc_localization::rational::zero;
use spinc_localization::rep::{build_spinor_rep, commutant_dimension, find_structure_j, grading_operator, Linearity, StructureKind};

fn main() -> spinc_localization::Result<()> {
    for two_n in [2, 4, 6, 8] {
        let rep = build_spinor_rep(two_n)?;
        let chirality = grading_operator(&rep)?;
        let sign = if &chirality == rep.grading() { "+" } else { "-" };
        println!(
            "S{two_n}: complex dimension {}, {}, chirality = {sign}grading, ℂ-linear commutant of real dimension {}",
            rep.dim() / 2,
            rep.relations().summary(),
            commutant_dimension(&rep, Linearity::Complex)?,
        );
        for kind in [StructureKind::Real, StructureKind::Quaternionic] {
            match find_structure_j(&rep, kind) {
                Ok(j) => println!("  J with J² = {:+}: found ({} nonzero entries)", kind.sign(), j.matrix().entries().iter().filter(|x| **x != zero()).count()),
                Err(e) => println!("  J with J² = {:+}: {e}", kind.sign()),
            }
        }
    }
    Ok(())
}
