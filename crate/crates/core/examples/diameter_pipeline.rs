//! Compares the exact diameter with the diameter of the host graph across a
//! batch of split graphs, in both embedding modes.
//!
//! ```text
//! cargo run --release --example diameter_pipeline -- 400 20
//! ```

use k23_embed::diameter::diameter_via_embedding;
use k23_embed::generators::{generate, GenSpec};
use k23_embed::EmbedMode;

fn main() {
    let mut args = std::env::args().skip(1).map(|a| a.parse::<u64>().expect("numeric argument"));
    let n = args.next().unwrap_or(400);
    let count = args.next().unwrap_or(20);
    let mut worst = 0;
    for seed in 0..count {
        let g = generate(&format!("split:n={n},seed={seed},clique=20").parse::<GenSpec>().unwrap()).unwrap();
        for mode in [EmbedMode::General, EmbedMode::UniversallySignableFast] {
            let r = diameter_via_embedding(&g, 0, mode, true).unwrap();
            worst = worst.max(r.gap.unwrap().abs());
            println!(
                "seed {seed:>3} {mode:?}: exact {} approx {} | embed {:.2} ms, host diameter {:.2} ms, exact {:.2} ms",
                r.exact.unwrap(),
                r.approx,
                r.phase_timings.embed_ms,
                r.phase_timings.host_diameter_ms,
                r.phase_timings.exact_ms.unwrap()
            );
        }
    }
    println!("largest |gap| {worst} (bound {})", k23_embed::DISTORTION_BOUND);
}
