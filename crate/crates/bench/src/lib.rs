//! Fixtures shared by the benchmarks.

use fea2vr_core::samples::{hex_grid, SampleModel};

/// Listing texts of an `n³` hex grid: nodes, elements, surface nodes and a
/// synthetic result list.
pub struct GridListings {
    pub model: SampleModel,
    pub nodes: String,
    pub elements: String,
    pub surface: String,
    pub results: String,
}

pub fn grid_listings(n: usize) -> GridListings {
    let model = hex_grid(n, n, n);
    let results = model
        .nodes
        .iter()
        .map(|node| format!("{} {:?}\n", node.id, node.position[2] * 10.0 + 20.0))
        .collect();
    GridListings {
        nodes: model.node_listing(),
        elements: model.element_listing(),
        surface: model.surface_listing(),
        results,
        model,
    }
}
