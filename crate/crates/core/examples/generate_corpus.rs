//! Writes a small corpus of edge-list files, one per family and seed.
//!
//! ```text
//! cargo run --example generate_corpus -- /tmp/corpus
//! ```

use std::fs;
use std::path::PathBuf;

use k23_embed::generators::{generate, Family, GenSpec};

fn main() -> std::io::Result<()> {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "corpus".into()));
    fs::create_dir_all(&dir)?;
    let families = ["tree", "cycle", "chordal", "split", "outerplanar", "k23", "broken_wheel", "erdos_renyi"];
    let mut written = 0;
    for name in families {
        for seed in 0..5 {
            let n = 40;
            let spec = GenSpec::new(Family::default_for(name, n).unwrap(), n, seed);
            let g = generate(&spec).unwrap();
            let file = dir.join(format!("{name}_{n}_{seed}.txt"));
            fs::write(&file, format!("# {spec}\n{}", g.to_edge_list()))?;
            written += 1;
        }
    }
    println!("wrote {written} graphs to {}", dir.display());
    Ok(())
}
