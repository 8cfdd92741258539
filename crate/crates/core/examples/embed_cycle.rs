//! Embeds a 5-cycle and a 4-cycle and prints the host graphs with the
//! branch taken for each cluster.
//!
//! ```text
//! cargo run --example embed_cycle
//! ```

use k23_embed::{embed, EmbedMode, Graph};

fn main() {
    for n in [5, 4] {
        let g = Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap();
        let res = embed(&g, 0, EmbedMode::General).unwrap();
        println!("C{n} rooted at 0");
        for t in &res.trace.clusters {
            println!("  cluster {} {:?}: {:?}", t.cluster, res.layering.clusters[t.cluster].members, t.branch);
        }
        println!("  host edges: {:?}", res.h.edges().collect::<Vec<_>>());
        println!("  host equals input: {}", res.h == g);
    }
}
