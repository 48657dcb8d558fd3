//! Plain-text edge lists.
//!
//! ```text
//! # comment lines and blank lines are skipped
//! n m [d]
//! u v          (unsigned file)
//! u v +1|-1    (signed file)
//! ```
//!
//! Vertices are 0-based. The optional `d` in the header asserts that the
//! graph is `d`-regular; the writer emits it whenever the graph is regular.
//! Writing a graph that was read from a canonical file reproduces the file
//! byte for byte.

use std::fs;
use std::io::{BufRead, BufReader, Read, Write};
use std::path::Path;

use super::{Graph, Signing};
use crate::error::{invalid, Error, Result};

/// Parsed contents of a graph or signed-graph file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphFile {
    pub graph: Graph,
    pub signing: Option<Signing>,
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

pub fn parse(reader: impl Read) -> Result<GraphFile> {
    let mut header: Option<(usize, usize, Option<usize>, usize)> = None;
    let mut edges = Vec::new();
    let mut signs = Vec::new();
    let mut columns: Option<usize> = None;

    for (idx, line) in BufReader::new(reader).lines().enumerate() {
        let lineno = idx + 1;
        let line = line?;
        let body = line.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = body.split_whitespace().collect();
        let Some((n, m, _, _)) = header else {
            if !(2..=3).contains(&tokens.len()) {
                return Err(parse_err(lineno, "header must be `n m [d]`"));
            }
            let nums = tokens
                .iter()
                .map(|t| t.parse::<usize>().map_err(|_| parse_err(lineno, format!("bad header field `{t}`"))))
                .collect::<Result<Vec<_>>>()?;
            header = Some((nums[0], nums[1], nums.get(2).copied(), lineno));
            continue;
        };
        if !(2..=3).contains(&tokens.len()) {
            return Err(parse_err(lineno, "edge line must be `u v` or `u v s`"));
        }
        match columns {
            None => columns = Some(tokens.len()),
            Some(c) if c != tokens.len() => {
                return Err(parse_err(lineno, "mixed signed and unsigned edge lines"));
            }
            _ => {}
        }
        if edges.len() == m {
            return Err(parse_err(lineno, format!("more than the {m} edges declared in the header")));
        }
        let vertex = |t: &str| -> Result<usize> {
            let v = t.parse::<usize>().map_err(|_| parse_err(lineno, format!("bad vertex `{t}`")))?;
            if v >= n {
                return Err(parse_err(lineno, format!("vertex {v} outside 0..{n}")));
            }
            Ok(v)
        };
        let (u, v) = (vertex(tokens[0])?, vertex(tokens[1])?);
        if u == v {
            return Err(parse_err(lineno, format!("self-loop at vertex {u}")));
        }
        edges.push((u, v));
        if let Some(tok) = tokens.get(2) {
            let s = match *tok {
                "+1" | "1" => 1,
                "-1" => -1,
                other => return Err(parse_err(lineno, format!("sign must be +1 or -1, got `{other}`"))),
            };
            signs.push(s);
        }
    }

    let Some((n, m, d, header_line)) = header else {
        return Err(parse_err(0, "missing header"));
    };
    if edges.len() != m {
        return Err(parse_err(
            header_line,
            format!("header declares {m} edges but {} were listed", edges.len()),
        ));
    }
    let graph = Graph::new(n, edges).map_err(|e| parse_err(header_line, e.to_string()))?;
    if let Some(d) = d {
        if graph.regular_degree() != Some(d) {
            return Err(parse_err(header_line, format!("header declares a {d}-regular graph")));
        }
    }
    let signing = (columns == Some(3)).then(|| Signing::new(signs)).transpose()?;
    Ok(GraphFile { graph, signing })
}

pub fn read_graph(reader: impl Read) -> Result<Graph> {
    Ok(parse(reader)?.graph)
}

pub fn read_signed_graph(reader: impl Read) -> Result<(Graph, Signing)> {
    let file = parse(reader)?;
    match file.signing {
        Some(s) => Ok((file.graph, s)),
        // an edgeless graph has nothing to sign
        None if file.graph.m() == 0 => Ok((file.graph, Signing::all_positive(0))),
        None => Err(parse_err(0, "expected a signed graph file (`u v s` edge lines)")),
    }
}

fn write_header(out: &mut impl Write, graph: &Graph) -> Result<()> {
    match graph.regular_degree() {
        Some(d) if graph.n() > 0 => writeln!(out, "{} {} {}", graph.n(), graph.m(), d)?,
        _ => writeln!(out, "{} {}", graph.n(), graph.m())?,
    }
    Ok(())
}

pub fn write_graph(mut out: impl Write, graph: &Graph) -> Result<()> {
    write_header(&mut out, graph)?;
    for &(u, v) in graph.edges() {
        writeln!(out, "{u} {v}")?;
    }
    Ok(())
}

pub fn write_signed_graph(mut out: impl Write, graph: &Graph, signing: &Signing) -> Result<()> {
    signing.check_aligned(graph)?;
    write_header(&mut out, graph)?;
    for (&(u, v), &s) in graph.edges().iter().zip(signing.as_slice()) {
        writeln!(out, "{u} {v} {}", if s > 0 { "+1" } else { "-1" })?;
    }
    Ok(())
}

pub fn load(path: impl AsRef<Path>) -> Result<GraphFile> {
    let path = path.as_ref();
    let file = fs::File::open(path).map_err(|e| invalid(format!("cannot open {}: {e}", path.display())))?;
    parse(file)
}

pub fn save(path: impl AsRef<Path>, graph: &Graph, signing: Option<&Signing>) -> Result<()> {
    let mut buf = Vec::new();
    match signing {
        Some(s) => write_signed_graph(&mut buf, graph, s)?,
        None => write_graph(&mut buf, graph)?,
    }
    fs::write(path, buf)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{make_complete, make_railway};

    fn line_of(err: Error) -> usize {
        match err {
            Error::Parse { line, .. } => line,
            other => panic!("expected parse error, got {other}"),
        }
    }

    #[test]
    fn round_trip_is_byte_exact() {
        let k4 = make_complete(4).unwrap();
        let mut buf = Vec::new();
        write_graph(&mut buf, &k4).unwrap();
        assert_eq!(String::from_utf8(buf.clone()).unwrap(), "4 6 3\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n");
        let back = read_graph(&buf[..]).unwrap();
        assert_eq!(back, k4);
        let mut again = Vec::new();
        write_graph(&mut again, &back).unwrap();
        assert_eq!(buf, again);

        let (g, s) = make_railway(3).unwrap();
        let mut buf = Vec::new();
        write_signed_graph(&mut buf, &g, &s).unwrap();
        let (g2, s2) = read_signed_graph(&buf[..]).unwrap();
        assert_eq!((g2, s2), (g, s));
    }

    #[test]
    fn comments_and_blank_lines() {
        let text = "# K_2\n\n2 1 # header\n0 1 -1 # the only edge\n";
        let f = parse(text.as_bytes()).unwrap();
        assert_eq!(f.graph.m(), 1);
        assert_eq!(f.signing.unwrap().as_slice(), &[-1]);
    }

    #[test]
    fn malformed_inputs_report_lines() {
        assert_eq!(line_of(parse("4 6\n0 0 +1\n".as_bytes()).unwrap_err()), 2);
        let short = "4 6 3\n0 1\n0 2\n0 3\n1 2\n1 3\n";
        assert_eq!(line_of(parse(short.as_bytes()).unwrap_err()), 1);
        assert_eq!(line_of(parse("3 1\n0 x\n".as_bytes()).unwrap_err()), 2);
        assert_eq!(line_of(parse("3 2\n0 1\n1 2 +1\n".as_bytes()).unwrap_err()), 3);
        assert_eq!(line_of(parse("3 1\n0 1 +2\n".as_bytes()).unwrap_err()), 2);
        assert_eq!(line_of(parse("3 1\n0 5\n".as_bytes()).unwrap_err()), 2);
        assert_eq!(line_of(parse("3 2 2\n0 1\n1 2\n".as_bytes()).unwrap_err()), 1);
        assert_eq!(line_of(parse("3 1\n0 1\n1 2\n".as_bytes()).unwrap_err()), 3);
        assert!(read_signed_graph("2 1\n0 1\n".as_bytes()).is_err());
    }
}
