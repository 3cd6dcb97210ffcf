//! Plain-text stream and matching files.
//!
//! ```text
//! # t_min=0
//! # t_max=2
//! # vertices=a b c
//! 0 a b
//! 1 a b
//! 2 b c
//! ```
//!
//! Header lines are `# key=value`; other `#` lines are comments. `t_min` and
//! `t_max` override the interval inferred from the body, `vertices` lists
//! identifiers so isolated vertices survive a round trip. Unknown keys are
//! kept as metadata. Matching files use the same layout with a `gamma` key
//! and one `start u v` line per γ-edge.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::stream::{GammaMatching, LinkStream, StreamBuilder, Time};

/// `key=value` pairs from a file header, in file order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Header {
    pub entries: Vec<(String, String)>,
}

impl Header {
    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries
            .iter()
            .rev()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    pub fn push(&mut self, key: impl Into<String>, value: impl ToString) {
        self.entries.push((key.into(), value.to_string()));
    }
}

struct Body {
    header: Header,
    lines: Vec<(usize, Time, String, String)>,
}

fn read_body(reader: impl BufRead) -> Result<Body> {
    let mut header = Header::default();
    let mut lines = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        let lineno = idx + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        if let Some(rest) = trimmed.strip_prefix('#') {
            if let Some((k, v)) = rest.trim().split_once('=') {
                header.push(k.trim(), v.trim());
            }
            continue;
        }
        let mut toks = trimmed.split_whitespace();
        let (Some(t), Some(u), Some(v), None) = (toks.next(), toks.next(), toks.next(), toks.next())
        else {
            return Err(Error::Parse {
                line: lineno,
                message: format!("expected `t u v`, got `{trimmed}`"),
            });
        };
        let t: Time = t.parse().map_err(|_| Error::Parse {
            line: lineno,
            message: format!("bad time `{t}`"),
        })?;
        lines.push((lineno, t, u.to_string(), v.to_string()));
    }
    Ok(Body { header, lines })
}

fn header_time(header: &Header, key: &str) -> Result<Option<Time>> {
    header
        .get(key)
        .map(|v| {
            v.parse().map_err(|_| Error::Parse {
                line: 0,
                message: format!("bad header value {key}={v}"),
            })
        })
        .transpose()
}

/// Parses a stream, returning the header alongside.
pub fn read_stream_with_header(reader: impl BufRead) -> Result<(LinkStream, Header)> {
    let body = read_body(reader)?;
    let header = body.header;
    let mut b = StreamBuilder::new();
    let lo = header_time(&header, "t_min")?;
    let hi = header_time(&header, "t_max")?;
    let min_t = body.lines.iter().map(|l| l.1).min();
    let max_t = body.lines.iter().map(|l| l.1).max();
    match (lo.or(min_t), hi.or(max_t)) {
        (Some(lo), Some(hi)) => b.set_interval(lo, hi),
        _ => {
            return Err(Error::Parse {
                line: 0,
                message: "empty body and no t_min/t_max header".into(),
            })
        }
    }
    if let Some(vs) = header.get("vertices") {
        for v in vs.split_whitespace() {
            b.add_vertex(v);
        }
    }
    for (lineno, t, u, v) in body.lines {
        if u == v {
            return Err(Error::Parse {
                line: lineno,
                message: format!("self-loop on `{u}`"),
            });
        }
        b.add_edge(t, u, v);
    }
    Ok((b.build()?, header))
}

pub fn read_stream(reader: impl BufRead) -> Result<LinkStream> {
    Ok(read_stream_with_header(reader)?.0)
}

/// Writes the interval and vertex headers, then `extra`, then one line per
/// timed edge sorted by `(t, u, v)`.
pub fn write_stream_with_header(stream: &LinkStream, extra: &Header, mut w: impl Write) -> Result<()> {
    let interval = stream.interval();
    writeln!(w, "# t_min={}", interval.start)?;
    writeln!(w, "# t_max={}", interval.end)?;
    writeln!(w, "# vertices={}", stream.vertex_names().join(" "))?;
    for (k, v) in &extra.entries {
        writeln!(w, "# {k}={v}")?;
    }
    for e in stream.edges() {
        writeln!(w, "{} {} {}", e.time, stream.vertex_name(e.u), stream.vertex_name(e.v))?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_stream(stream: &LinkStream, w: impl Write) -> Result<()> {
    write_stream_with_header(stream, &Header::default(), w)
}

pub fn parse_stream(path: impl AsRef<Path>) -> Result<LinkStream> {
    read_stream(BufReader::new(File::open(path)?))
}

pub fn serialize_stream(stream: &LinkStream, path: impl AsRef<Path>) -> Result<()> {
    write_stream(stream, BufWriter::new(File::create(path)?))
}

/// Reads a matching against `stream`; identifiers must be vertices of it.
pub fn read_matching(reader: impl BufRead, stream: &LinkStream) -> Result<GammaMatching> {
    let body = read_body(reader)?;
    let gamma: u64 = body
        .header
        .get("gamma")
        .ok_or_else(|| Error::Parse {
            line: 0,
            message: "matching file needs a `# gamma=` header".into(),
        })?
        .parse()
        .map_err(|_| Error::Parse {
            line: 0,
            message: "bad gamma header".into(),
        })?;
    let mut edges = Vec::with_capacity(body.lines.len());
    for (lineno, t, u, v) in body.lines {
        let e = stream.gamma_edge(t, &u, &v, gamma).map_err(|e| Error::Parse {
            line: lineno,
            message: e.to_string(),
        })?;
        edges.push(e);
    }
    GammaMatching::from_edges(gamma, edges)
}

pub fn write_matching(matching: &GammaMatching, stream: &LinkStream, mut w: impl Write) -> Result<()> {
    writeln!(w, "# gamma={}", matching.gamma())?;
    writeln!(w, "# size={}", matching.len())?;
    for e in matching {
        let (u, v) = e.endpoints();
        writeln!(w, "{} {} {}", e.start(), stream.vertex_name(u), stream.vertex_name(v))?;
    }
    w.flush()?;
    Ok(())
}
