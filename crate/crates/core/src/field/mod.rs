//! Port-placement figure of merit from co-registered qubit and cavity
//! mode fields: weak qubit field under strong cavity field.
mod grid;
mod overlap;

pub use grid::{
    read_grid_binary, read_grid_csv, write_grid_binary, write_grid_csv, FieldGrid, Vec3, GRID_CSV_HEADER,
    GRID_HEADER_LEN, GRID_MAGIC,
};
pub use overlap::{overlap_metric, quantile, rank_port_regions, OverlapMap, RankMode, RankOptions, Region, EPSILON_FIELD};
