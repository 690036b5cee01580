//! The line-oriented query protocol.
//!
//! ```text
//! MINCOVER i j | ALLCOVERS i j | ISCOVER i j l | COVEREDPREF i j l
//! BORDERS i j  | PERIODS i j   | RUNS
//! ```
//!
//! Positions are 1-based and inclusive. Progressions are printed as
//! `start:diff:count`, sets of them space-separated. Runs are printed as
//! `a..b/p`. A failed query produces `ERR <code> <message>` and never stops
//! the session.

use std::fmt;

use qpi_core::{ArithProg, Error, FactorRef, Index};
use serde_json::{json, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Query {
    MinCover(FactorRef),
    AllCovers(FactorRef),
    IsCover(FactorRef, usize),
    CoveredPref(FactorRef, usize),
    Borders(FactorRef),
    Periods(FactorRef),
    Runs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorCode {
    /// Malformed query line.
    Parse,
    /// Position or length outside the text or factor.
    Range,
    /// Anything the index reported that is not a range problem.
    Internal,
}

impl ErrorCode {
    pub fn as_str(self) -> &'static str {
        match self {
            ErrorCode::Parse => "EPARSE",
            ErrorCode::Range => "ERANGE",
            ErrorCode::Internal => "EINTERNAL",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QueryError {
    pub code: ErrorCode,
    pub message: String,
}

impl QueryError {
    fn parse(message: impl Into<String>) -> Self {
        QueryError {
            code: ErrorCode::Parse,
            message: message.into(),
        }
    }
}

impl From<Error> for QueryError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::PositionOutOfRange { .. } | Error::InvalidFactor { .. } | Error::LengthOutOfRange { .. } => {
                ErrorCode::Range
            }
            _ => ErrorCode::Internal,
        };
        QueryError {
            code,
            message: e.to_string(),
        }
    }
}

impl fmt::Display for QueryError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ERR {} {}", self.code.as_str(), self.message)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Answer {
    Length(usize),
    Bool(bool),
    Progressions(Vec<ArithProg>),
    Runs(Vec<(usize, usize, usize)>),
}

pub fn parse(line: &str) -> Result<Query, QueryError> {
    let mut words = line.split_whitespace();
    let Some(op) = words.next() else {
        return Err(QueryError::parse("empty query"));
    };
    let args: Vec<usize> = words
        .map(|w| {
            w.parse::<usize>()
                .map_err(|_| QueryError::parse(format!("bad number {w:?}")))
        })
        .collect::<Result<_, _>>()?;
    let arity = |want: usize| -> Result<(), QueryError> {
        if args.len() == want {
            Ok(())
        } else {
            Err(QueryError::parse(format!(
                "{op} takes {want} arguments, got {}",
                args.len()
            )))
        }
    };
    let factor = || FactorRef::new(args[0], args[1]);
    let q = match op.to_ascii_uppercase().as_str() {
        "MINCOVER" => arity(2).map(|_| Query::MinCover(factor()))?,
        "ALLCOVERS" => arity(2).map(|_| Query::AllCovers(factor()))?,
        "ISCOVER" => arity(3).map(|_| Query::IsCover(factor(), args[2]))?,
        "COVEREDPREF" => arity(3).map(|_| Query::CoveredPref(factor(), args[2]))?,
        "BORDERS" => arity(2).map(|_| Query::Borders(factor()))?,
        "PERIODS" => arity(2).map(|_| Query::Periods(factor()))?,
        "RUNS" => arity(0).map(|_| Query::Runs)?,
        _ => return Err(QueryError::parse(format!("unknown query {op:?}"))),
    };
    Ok(q)
}

pub fn execute(index: &Index, q: &Query) -> Result<Answer, QueryError> {
    Ok(match *q {
        Query::MinCover(f) => Answer::Length(index.min_cover(f)?),
        Query::AllCovers(f) => Answer::Progressions(index.all_covers(f)?.progressions),
        Query::IsCover(f, l) => Answer::Bool(index.is_cover(l, f)?),
        Query::CoveredPref(f, l) => Answer::Length(index.covered_pref(l, f)?),
        Query::Borders(f) => Answer::Progressions(index.borders(f)?.progressions),
        Query::Periods(f) => Answer::Progressions(index.periods(f)?),
        Query::Runs => {
            let mut runs: Vec<_> = index.runs().records().iter().map(|r| (r.a, r.b, r.p)).collect();
            runs.sort_unstable();
            Answer::Runs(runs)
        }
    })
}

impl fmt::Display for Answer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Answer::Length(x) => write!(f, "{x}"),
            Answer::Bool(b) => write!(f, "{b}"),
            Answer::Progressions(ps) => {
                let parts: Vec<String> = ps.iter().map(ArithProg::to_string).collect();
                f.write_str(&parts.join(" "))
            }
            Answer::Runs(rs) => {
                let parts: Vec<String> = rs.iter().map(|(a, b, p)| format!("{a}..{b}/{p}")).collect();
                f.write_str(&parts.join(" "))
            }
        }
    }
}

impl Answer {
    pub fn to_json(&self) -> Value {
        match self {
            Answer::Length(x) => json!(x),
            Answer::Bool(b) => json!(b),
            Answer::Progressions(ps) => Value::Array(
                ps.iter()
                    .map(|p| json!({"start": p.start, "diff": p.diff, "count": p.count}))
                    .collect(),
            ),
            Answer::Runs(rs) => Value::Array(rs.iter().map(|(a, b, p)| json!({"a": a, "b": b, "p": p})).collect()),
        }
    }
}

/// Parses, answers and renders one line.
pub fn answer_line(index: &Index, line: &str, as_json: bool) -> String {
    let result = parse(line).and_then(|q| execute(index, &q));
    if as_json {
        let v = match result {
            Ok(a) => json!({"query": line.trim(), "ok": true, "answer": a.to_json()}),
            Err(e) => json!({
                "query": line.trim(),
                "ok": false,
                "error": {"code": e.code.as_str(), "message": e.message},
            }),
        };
        v.to_string()
    } else {
        match result {
            Ok(a) => a.to_string(),
            Err(e) => e.to_string(),
        }
    }
}
