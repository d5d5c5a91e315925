use super::{GraphError, Multigraph};

fn pace_err(line: usize, message: impl Into<String>) -> GraphError {
    GraphError::Pace {
        line,
        message: message.into(),
    }
}

/// Reads a PACE `.gr` graph: `c` comment lines, a `p tw <n> <m>` header and
/// `m` lines of 1-based arcs.
pub fn parse_pace(text: &str) -> Result<Multigraph, GraphError> {
    let mut graph: Option<(Multigraph, usize)> = None;
    for (idx, line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.is_empty() || fields[0] == "c" {
            continue;
        }
        match &mut graph {
            None => {
                if fields.len() != 4 || fields[0] != "p" || fields[1] != "tw" {
                    return Err(pace_err(line_no, "expected `p tw <n> <m>` header"));
                }
                let n = fields[2].parse().map_err(|_| pace_err(line_no, "bad node count"))?;
                let m = fields[3].parse().map_err(|_| pace_err(line_no, "bad arc count"))?;
                graph = Some((Multigraph::empty(n), m));
            }
            Some((g, _)) => {
                if fields.len() != 2 {
                    return Err(pace_err(line_no, "expected two endpoints"));
                }
                let mut ends = [0usize; 2];
                for (slot, f) in ends.iter_mut().zip(&fields) {
                    let v: usize = f.parse().map_err(|_| pace_err(line_no, format!("bad endpoint `{f}`")))?;
                    if v == 0 || v > g.n_nodes() {
                        return Err(pace_err(line_no, format!("endpoint {v} outside 1..={}", g.n_nodes())));
                    }
                    *slot = v - 1;
                }
                g.add_arc(ends[0], ends[1])?;
            }
        }
    }
    let (g, m) = graph.ok_or_else(|| pace_err(1, "missing `p tw` header"))?;
    if g.n_arcs() != m {
        return Err(pace_err(
            text.lines().count(),
            format!("header announces {m} arcs, found {}", g.n_arcs()),
        ));
    }
    Ok(g)
}
