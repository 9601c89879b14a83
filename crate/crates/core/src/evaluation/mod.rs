//! Real-versus-synthetic fidelity measures and figure rendering.

mod ks;
mod report;
mod svg;

pub use ks::ks_statistic;
pub use report::{
    fidelity_report, fidelity_report_with, shared_histogram, ColumnFidelity, FidelityOptions,
    FidelityReport, Histogram, ScatterSample, DEFAULT_BINS, DEFAULT_SCATTER_CAP,
    DEFAULT_SCATTER_SEED,
};
pub use svg::{
    annotate, diverging_color, render_heatmap, render_matrix_heatmap, render_pairplot,
    MAX_PAIRPLOT_COLUMNS,
};
