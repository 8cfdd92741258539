//! Prints the layering partition of a generated outerplanar graph: clusters
//! per level, parent sets, and the parent-set structure report.
//!
//! ```text
//! cargo run --example layering -- 30 4
//! ```

use k23_embed::generators::{generate, GenSpec};
use k23_embed::layering::{verify_minimal_cutset, verify_parent_set_structure};
use k23_embed::build_layering;

fn main() {
    let mut args = std::env::args().skip(1).map(|a| a.parse::<u64>().expect("numeric argument"));
    let n = args.next().unwrap_or(30);
    let seed = args.next().unwrap_or(4);
    let spec: GenSpec = format!("outerplanar:n={n},seed={seed}").parse().unwrap();
    let g = generate(&spec).unwrap();
    let lp = build_layering(&g, 0).unwrap();
    println!("{spec}: {} vertices, {} edges, {} clusters, depth {}", g.n(), g.m(), lp.clusters.len(), lp.depth());
    let reports = verify_parent_set_structure(&g, &lp);
    for c in &lp.clusters {
        let parent = c.parent_cluster.map_or("-".to_string(), |p| p.to_string());
        print!("level {:>2} cluster {:>3} (parent {parent:>3}) members {:?}", c.level, c.id, c.members);
        if let Some(r) = reports.iter().find(|r| r.cluster == c.id) {
            print!(" parent set {:?} in {} component(s)", c.parent_set, r.components.len());
        }
        if c.level > 0 && c.parent_set != [lp.root] {
            print!(", minimal cutset: {}", verify_minimal_cutset(&g, &lp, c.id).unwrap());
        }
        println!();
    }
}
