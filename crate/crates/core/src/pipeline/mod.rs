//! Roll-call ingestion, the horseshoe analysis, comparison with external
//! scores and result files.

mod analysis;
mod compare;
mod dataset;
mod emit;

pub use analysis::{
    analyze, order_embedding, order_legislators, proximity, AnalysisResult, Diagnostics, Group,
    Seriation, EMBED_DIMS, MIN_LEGISLATORS,
};
pub use compare::{
    compare_files, compare_scores, kendall_tau_b, mid_ranks, read_order, read_scores, spearman,
    ComparisonReport,
};
pub use dataset::{
    filter_participation, parse_rollcall, parse_rollcall_from, save_rollcall, write_rollcall,
    RollCallDataset,
};
pub use emit::{
    emit, format_real, render_svg, EIGENVALUES_FILE, EMBEDDING_FILE, ORDER_FILE, SCATTER_FILE,
    SVG_FILE,
};
