//! Embeds a chordal graph and runs every check on the host graph.
//!
//! ```text
//! cargo run --release --example verify_embedding -- 200 1
//! ```

use k23_embed::checks::{check_embedding, rooted_path_check, CheckOptions};
use k23_embed::generators::{generate, GenSpec};
use k23_embed::{embed, EmbedMode};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let mut args = std::env::args().skip(1).map(|a| a.parse::<u64>().expect("numeric argument"));
    let n = args.next().unwrap_or(200);
    let seed = args.next().unwrap_or(1);
    let g = generate(&format!("chordal:n={n},seed={seed}").parse::<GenSpec>().unwrap()).unwrap();
    let res = embed(&g, 0, EmbedMode::General).unwrap();
    let opts = CheckOptions { cycle_len: Some(10), ..CheckOptions::default() };
    let rep = check_embedding(&g, &res, &opts).unwrap();
    println!("G: {} edges, H: {} edges", g.m(), res.h.m());
    println!("{}", serde_json::to_string_pretty(&rep).unwrap());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let paths = rooted_path_check(&g, &res.h, 0, 200, &mut rng);
    println!(
        "rooted paths: {} in G (max excess {}), {} in H (max deficit {}), {} violations",
        paths.g_paths,
        paths.max_g_excess,
        paths.h_paths,
        paths.max_h_deficit,
        paths.violations.len()
    );
    println!("all checks pass: {}", rep.passed() && paths.passed());
}
