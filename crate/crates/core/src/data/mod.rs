//! Dataset synthesis, CSV and IDX ingestion, and the query/train/gallery
//! split protocol.

mod csv;
mod idx;
mod split;
mod synth;

pub use self::csv::{load_csv_features, read_csv_table, write_csv_features, CsvDataset, CsvTable};
pub use self::idx::{
    load_idx, read_idx_images, read_idx_labels, IdxImages, IDX_IMAGES_MAGIC, IDX_LABELS_MAGIC,
};
pub use self::split::{split_protocol, SplitResult, SplitRole, SplitSpec};
pub use self::synth::{gen_gaussian_clusters, gen_rings};
