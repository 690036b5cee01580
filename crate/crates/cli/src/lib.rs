//! Library half of the `qpi` command: the query protocol, batch answering,
//! oracle self-tests and the latency bench.

pub mod batch;
pub mod bench;
pub mod protocol;
pub mod selftest;

pub use protocol::{answer_line, execute, parse, Answer, ErrorCode, Query, QueryError};
