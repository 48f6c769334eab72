//! Interchange formats: the planar_code byte stream, Graphviz DOT export,
//! and the JSON report document the search harnesses emit.

pub mod codec;
pub mod dot;
pub mod report;

pub use codec::{read_planar_code, write_planar_code, CodecError, PLANAR_CODE_HEADER};
pub use dot::export_dot;
pub use report::{CellRecord, CellStatus, ReportDocument, WitnessRecord};
