//! The symbol σ(ξ, h) squares to |ξ|² + |h|², so it is invertible away
//! from the origin. Also the version twisted by a bundle with a real
//! structure.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use spinc_localization::cl3::extend_to_cl3;
use spinc_localization::localization::{support_identity_check, symbol, twisted_support_check, TwistBundle};
use spinc_localization::rational::{frac, int, Q};

fn main() -> spinc_localization::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for tau in [0, 1] {
        let ext = extend_to_cl3(0, tau)?;
        let dx = ext.layout.dim_x;
        let samples: Vec<(Vec<Q>, [Q; 2])> = (0..50)
            .map(|_| {
                let mut q = || frac(rng.gen_range(-3..=3), rng.gen_range(1..=2));
                ((0..dx).map(|_| q()).collect(), [q(), q()])
            })
            .collect();

        let s = symbol(&ext, &samples[0].0, &samples[0].1)?;
        println!("τ = {tau}: σ² = {}·Id at the first sample: {}", s.norm_sq, s.square_is_norm());

        let r = support_identity_check(&ext, &samples)?;
        println!("  {} samples, holds {}", r.checked, r.holds());
        let t = twisted_support_check(&ext, &samples, &TwistBundle::standard(2), &int(2))?;
        println!("  twisted by ℂ² with f = 2: holds {}", t.holds());
    }
    Ok(())
}
