//! Text formats: point clouds (CSV, PQR), filtration files, record CSVs and SVG plots.

mod filtration_file;
mod points;
mod pqr;
mod records;
mod svg;

pub use filtration_file::{parse_filtration_file, write_filtration_file};
pub(crate) use points::euclidean;
pub use points::{parse_points_csv, scale_charges, LabeledPoint, LabeledPointCloud};
pub use pqr::{parse_pqr, PqrOptions};
pub use records::{fmt_real, read_records_csv, write_records_csv, write_spectra_csv};
pub use svg::{emit_svg, Channel};
