//! ForceAtlas2 graph layout with warm-start chaining for sequences of
//! networks, plus layout transforms, attribute styling and SVG output.

pub mod bench;
pub mod engine;
pub mod error;
pub mod generate;
pub mod graph;
pub mod layout;
pub mod render;
pub mod style;
pub mod timeseries;
pub mod transforms;

pub use engine::{
    diagnostics_csv, init_positions, run_layout, Fa2Params, ForceField, IterationDiagnostics,
    LayoutRun, LayoutState, Snapshot, Solver,
};
pub use error::{Error, Result};
pub use graph::{
    parse_edge_list, parse_node_attributes, parse_weight_matrix, Edge, Graph, NodeRecord,
};
pub use layout::{read_layout_tsv, write_layout_tsv, LayoutMatrix, LayoutRows, Point};
pub use render::{render_snapshots, render_svg, RenderSpec};
pub use style::{Color, Palette, StyleFile, StyleMap};
pub use timeseries::{run_timeseries, Manifest, TimeSeriesRun};
pub use transforms::{rotate_positions, scale_positions, translate_to, Transform};
