//! Strong isometric path complexity of small graphs, by exhaustive search.
//!
//! ```text
//! cargo run --release --example sipc_small
//! ```

use k23_embed::generators::{generate, GenSpec};
use k23_embed::oracles::sipc_bruteforce;
use k23_embed::Graph;

fn main() {
    let named = [
        ("edge", Graph::from_edges(2, [(0, 1)]).unwrap()),
        ("P5", Graph::from_edges(5, (0..4).map(|i| (i, i + 1))).unwrap()),
        ("C4", Graph::from_edges(4, (0..4).map(|i| (i, (i + 1) % 4))).unwrap()),
    ];
    for (name, g) in &named {
        println!("{name:>28}: {}", sipc_bruteforce(g).unwrap());
    }
    for family in ["cycle", "chordal", "split", "outerplanar"] {
        for seed in 0..3 {
            let spec: GenSpec = format!("{family}:n=10,seed={seed}").parse().unwrap();
            println!("{:>28}: {}", spec.to_string(), sipc_bruteforce(&generate(&spec).unwrap()).unwrap());
        }
    }
}
