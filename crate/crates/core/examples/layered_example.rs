//! Embeds the 21-vertex example graph shipped in `fixtures/` and compares
//! the result with the host graph drawn for it.
//!
//! ```text
//! cargo run --example layered_example
//! ```

use k23_embed::checks::{check_embedding, CheckOptions};
use k23_embed::{embed, EmbedMode, Graph};

fn load(name: &str) -> Graph {
    let path = format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
    Graph::parse(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn main() {
    let g = load("layered_example.txt");
    let drawn = load("layered_example_drawn_host.txt");
    let res = embed(&g, 0, EmbedMode::General).unwrap();
    for c in &res.layering.clusters {
        println!("level {} cluster {:?} parent set {:?}", c.level, c.members, c.parent_set);
    }
    let ours: Vec<_> = res.h.edges().collect();
    let theirs: Vec<_> = drawn.edges().collect();
    let only_ours: Vec<_> = ours.iter().filter(|e| !theirs.contains(e)).collect();
    let only_drawn: Vec<_> = theirs.iter().filter(|e| !ours.contains(e)).collect();
    println!("host edges: {}, drawn: {}", ours.len(), theirs.len());
    println!("ours only: {only_ours:?}, drawn only: {only_drawn:?}");
    let rep = check_embedding(&g, &res, &CheckOptions::default()).unwrap();
    println!("max |dG-dH| {}, all checks pass: {}", rep.max_abs_gap, rep.passed());
}
