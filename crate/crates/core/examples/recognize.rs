//! Runs the configuration search and the direct induced-minor search on a
//! few small graphs and prints the verdicts and witnesses.
//!
//! ```text
//! cargo run --example recognize
//! ```

use k23_embed::generators::{generate, GenSpec};
use k23_embed::oracles::{find_truemper_configuration, is_universally_signable, k23_free_by_minor_search};
use k23_embed::search::DEFAULT_BUDGET;

fn main() {
    for spec in ["k23:n=5,seed=0", "broken_wheel:n=9,seed=0", "outerplanar:n=12,seed=3", "erdos_renyi:n=11,seed=5,p=0.3"] {
        let g = generate(&spec.parse::<GenSpec>().unwrap()).unwrap();
        let conf = find_truemper_configuration(&g, DEFAULT_BUDGET);
        let minor = k23_free_by_minor_search(&g).unwrap();
        let us = is_universally_signable(&g, DEFAULT_BUDGET);
        println!("{spec}");
        println!("  configurations: {:?}, induced minor: {:?}, universally signable: {:?}", conf.verdict, minor.verdict, us.verdict);
        if let Some(w) = &conf.witness {
            println!("  {}: {}", w.kind_name(&g), serde_json::to_string(w).unwrap());
        }
    }
}
