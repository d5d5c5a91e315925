use std::fmt;
use std::str::FromStr;

use super::perm::VertexPerm;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum TriangulationError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("a triangulation needs at least one tetrahedron")]
    Empty,
    #[error("tetrahedron {tet} is out of range for {n} tetrahedra")]
    TetOutOfRange { tet: usize, n: usize },
    #[error("face {face} of tetrahedron {tet} is glued to itself")]
    SelfGluing { tet: usize, face: usize },
    #[error("face {face} of tetrahedron {tet} takes part in more than one gluing")]
    DuplicateFace { tet: usize, face: usize },
    #[error("permutation {perm} sends vertex {src_face} to {image}, not to face {dst_face}")]
    PermMismatch {
        perm: VertexPerm,
        src_face: usize,
        dst_face: usize,
        image: usize,
    },
    #[error("line {line}: {source}")]
    AtLine {
        line: usize,
        #[source]
        source: Box<TriangulationError>,
    },
}

/// Identification of face `src_face` of `src_tet` with face `dst_face` of
/// `dst_tet`. Faces are labelled by the vertex they omit; `perm` carries the
/// vertices of `src_tet` to those of `dst_tet`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FaceGluing {
    pub src_tet: usize,
    pub src_face: usize,
    pub dst_tet: usize,
    pub dst_face: usize,
    pub perm: VertexPerm,
}

impl FaceGluing {
    pub fn new(src_tet: usize, src_face: usize, dst_tet: usize, dst_face: usize, perm: VertexPerm) -> Self {
        FaceGluing {
            src_tet,
            src_face,
            dst_tet,
            dst_face,
            perm,
        }
    }

    /// The same identification read from the other side.
    pub fn reversed(self) -> FaceGluing {
        FaceGluing {
            src_tet: self.dst_tet,
            src_face: self.dst_face,
            dst_tet: self.src_tet,
            dst_face: self.src_face,
            perm: self.perm.inverse(),
        }
    }

    /// Orients the gluing so that `(src_tet, src_face) < (dst_tet, dst_face)`.
    pub fn canonical(self) -> FaceGluing {
        if (self.src_tet, self.src_face) > (self.dst_tet, self.dst_face) {
            self.reversed()
        } else {
            self
        }
    }

    fn check(&self, n: usize) -> Result<(), TriangulationError> {
        for tet in [self.src_tet, self.dst_tet] {
            if tet >= n {
                return Err(TriangulationError::TetOutOfRange { tet, n });
            }
        }
        for face in [self.src_face, self.dst_face] {
            if face > 3 {
                return Err(TriangulationError::Syntax {
                    line: 0,
                    column: 0,
                    message: format!("face label {face} is not in 0..=3"),
                });
            }
        }
        if (self.src_tet, self.src_face) == (self.dst_tet, self.dst_face) {
            return Err(TriangulationError::SelfGluing {
                tet: self.src_tet,
                face: self.src_face,
            });
        }
        let image = self.perm.apply(self.src_face);
        if image != self.dst_face {
            return Err(TriangulationError::PermMismatch {
                perm: self.perm,
                src_face: self.src_face,
                dst_face: self.dst_face,
                image,
            });
        }
        Ok(())
    }
}

/// Where a face leads: the neighbouring tetrahedron, its face and the vertex map.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FaceTarget {
    pub tet: usize,
    pub face: usize,
    pub perm: VertexPerm,
}

/// Tetrahedra `0..n` together with a set of face gluings.
///
/// Gluings are stored canonically oriented and sorted, so two values
/// describing the same identifications compare equal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triangulation {
    n: usize,
    gluings: Vec<FaceGluing>,
    adjacency: Vec<[Option<FaceTarget>; 4]>,
}

impl Triangulation {
    pub fn new(n: usize, gluings: impl IntoIterator<Item = FaceGluing>) -> Result<Self, TriangulationError> {
        if n == 0 {
            return Err(TriangulationError::Empty);
        }
        let mut adjacency = vec![[None; 4]; n];
        let mut stored = Vec::new();
        for g in gluings {
            g.check(n)?;
            let g = g.canonical();
            for side in [g, g.reversed()] {
                let slot = &mut adjacency[side.src_tet][side.src_face];
                if slot.is_some() {
                    return Err(TriangulationError::DuplicateFace {
                        tet: side.src_tet,
                        face: side.src_face,
                    });
                }
                *slot = Some(FaceTarget {
                    tet: side.dst_tet,
                    face: side.dst_face,
                    perm: side.perm,
                });
            }
            stored.push(g);
        }
        stored.sort();
        Ok(Triangulation {
            n,
            gluings: stored,
            adjacency,
        })
    }

    /// `n` tetrahedra with every face free.
    pub fn unglued(n: usize) -> Result<Self, TriangulationError> {
        Triangulation::new(n, [])
    }

    pub fn n_tetrahedra(&self) -> usize {
        self.n
    }

    pub fn gluings(&self) -> &[FaceGluing] {
        &self.gluings
    }

    pub fn neighbor(&self, tet: usize, face: usize) -> Option<FaceTarget> {
        self.adjacency[tet][face]
    }

    pub fn is_closed_combinatorially(&self) -> bool {
        self.gluings.len() == 2 * self.n
    }

    /// Faces that are not glued to anything, in `(tet, face)` order.
    pub fn boundary_faces(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |t| (0..4).filter(move |&f| self.adjacency[t][f].is_none()).map(move |f| (t, f)))
    }

    /// Returns a copy without the gluing at `(tet, face)`, if there is one.
    pub fn without_gluing(&self, tet: usize, face: usize) -> Triangulation {
        let kept = self
            .gluings
            .iter()
            .copied()
            .filter(|g| (g.src_tet, g.src_face) != (tet, face) && (g.dst_tet, g.dst_face) != (tet, face));
        Triangulation::new(self.n, kept).expect("removing a gluing keeps a valid triangulation")
    }

    /// Parses the line-oriented text format.
    ///
    /// ```text
    /// tets 2
    /// # comment
    /// 0 0 -> 1 2 2103
    /// ```
    pub fn parse(text: &str) -> Result<Self, TriangulationError> {
        let mut n = None;
        let mut gluings = Vec::new();
        let mut gluing_lines = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.strip_suffix('\r').unwrap_or(raw);
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let tokens = tokenize(line, line_no)?;
            match n {
                None => {
                    n = Some(parse_header(&tokens, line_no)?);
                }
                Some(_) => {
                    gluings.push(parse_gluing(&tokens, line_no)?);
                    gluing_lines.push(line_no);
                }
            }
        }
        let n = n.ok_or(TriangulationError::Syntax {
            line: 1,
            column: 1,
            message: "missing `tets <n>` header".into(),
        })?;
        if n == 0 {
            return Err(TriangulationError::Empty);
        }
        let whole = Triangulation::new(n, gluings.iter().copied());
        if whole.is_ok() {
            return whole;
        }
        // The first failing prefix names the offending line.
        for (len, line) in (1..=gluings.len()).zip(gluing_lines) {
            if let Err(e) = Triangulation::new(n, gluings[..len].iter().copied()) {
                return Err(TriangulationError::AtLine {
                    line,
                    source: Box::new(e),
                });
            }
        }
        whole
    }

    /// Serializes to the text format, gluings in canonical order.
    pub fn to_text(&self) -> String {
        let mut out = format!("tets {}\n", self.n);
        for g in &self.gluings {
            out.push_str(&format!(
                "{} {} -> {} {} {}\n",
                g.src_tet, g.src_face, g.dst_tet, g.dst_face, g.perm
            ));
        }
        out
    }
}

impl FromStr for Triangulation {
    type Err = TriangulationError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Triangulation::parse(s)
    }
}

impl fmt::Display for Triangulation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

struct Token<'a> {
    text: &'a str,
    column: usize,
}

fn tokenize(line: &str, line_no: usize) -> Result<Vec<Token<'_>>, TriangulationError> {
    let mut tokens = Vec::new();
    let mut column = 1;
    for (i, piece) in line.split(' ').enumerate() {
        if piece.is_empty() {
            let message = if i == 0 {
                "line starts with a space".to_string()
            } else {
                "fields must be separated by exactly one space".to_string()
            };
            return Err(TriangulationError::Syntax {
                line: line_no,
                column,
                message,
            });
        }
        if let Some(off) = piece.find(|c: char| c.is_whitespace()) {
            return Err(TriangulationError::Syntax {
                line: line_no,
                column: column + off,
                message: "unexpected whitespace character".into(),
            });
        }
        tokens.push(Token { text: piece, column });
        column += piece.len() + 1;
    }
    Ok(tokens)
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> TriangulationError {
    TriangulationError::Syntax {
        line,
        column,
        message: message.into(),
    }
}

fn parse_index(tok: &Token<'_>, line: usize, what: &str) -> Result<usize, TriangulationError> {
    if !tok.text.bytes().all(|b| b.is_ascii_digit()) {
        return Err(syntax(line, tok.column, format!("expected {what}, found `{}`", tok.text)));
    }
    tok.text
        .parse()
        .map_err(|_| syntax(line, tok.column, format!("{what} `{}` is too large", tok.text)))
}

fn parse_header(tokens: &[Token<'_>], line: usize) -> Result<usize, TriangulationError> {
    match tokens {
        [kw, count] if kw.text == "tets" => parse_index(count, line, "a tetrahedron count"),
        [kw, ..] if kw.text != "tets" => Err(syntax(line, kw.column, "expected `tets <n>` header")),
        _ => Err(syntax(line, 1, "header must be exactly `tets <n>`")),
    }
}

fn parse_face(tok: &Token<'_>, line: usize) -> Result<usize, TriangulationError> {
    let face = parse_index(tok, line, "a face label")?;
    if face > 3 {
        return Err(syntax(line, tok.column, format!("face label {face} is not in 0..=3")));
    }
    Ok(face)
}

fn parse_gluing(tokens: &[Token<'_>], line: usize) -> Result<FaceGluing, TriangulationError> {
    if tokens.len() != 6 {
        let column = tokens.get(6).map_or(1, |t| t.column);
        return Err(syntax(
            line,
            column,
            format!("expected `<tet> <face> -> <tet> <face> <perm>`, found {} fields", tokens.len()),
        ));
    }
    let src_tet = parse_index(&tokens[0], line, "a tetrahedron index")?;
    let src_face = parse_face(&tokens[1], line)?;
    if tokens[2].text != "->" {
        return Err(syntax(line, tokens[2].column, format!("expected `->`, found `{}`", tokens[2].text)));
    }
    let dst_tet = parse_index(&tokens[3], line, "a tetrahedron index")?;
    let dst_face = parse_face(&tokens[4], line)?;
    let perm: VertexPerm = tokens[5]
        .text
        .parse()
        .map_err(|e: super::perm::BadPerm| syntax(line, tokens[5].column, e.to_string()))?;
    Ok(FaceGluing::new(src_tet, src_face, dst_tet, dst_face, perm))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_file() {
        let t = Triangulation::parse("tets 2\n0 0 -> 1 0 0123\n").unwrap();
        assert_eq!(t.n_tetrahedra(), 2);
        assert_eq!(t.gluings().len(), 1);
        assert_eq!(t.neighbor(1, 0).unwrap().tet, 0);
    }

    #[test]
    fn face_glued_to_itself_is_rejected() {
        let err = Triangulation::parse("tets 1\n0 0 -> 0 0 0123\n").unwrap_err();
        match err {
            TriangulationError::AtLine { line, source } => {
                assert_eq!(line, 2);
                assert_eq!(*source, TriangulationError::SelfGluing { tet: 0, face: 0 });
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn duplicate_face_usage_is_rejected() {
        let err = Triangulation::parse("tets 2\n0 0 -> 1 0 0123\n1 0 -> 0 1 1023\n").unwrap_err();
        assert!(matches!(
            err,
            TriangulationError::AtLine { line: 3, ref source } if matches!(**source, TriangulationError::DuplicateFace { .. })
        ));
    }

    #[test]
    fn perm_must_match_faces() {
        let err = Triangulation::parse("tets 2\n0 0 -> 1 1 0123\n").unwrap_err();
        assert!(matches!(
            err,
            TriangulationError::AtLine { ref source, .. } if matches!(**source, TriangulationError::PermMismatch { .. })
        ));
    }

    #[test]
    fn syntax_errors_report_position() {
        let err = Triangulation::parse("tets 2\n0 0 => 1 0 0123\n").unwrap_err();
        assert_eq!(
            err,
            TriangulationError::Syntax {
                line: 2,
                column: 5,
                message: "expected `->`, found `=>`".into()
            }
        );
        let err = Triangulation::parse("tets 2\n0  0 -> 1 0 0123\n").unwrap_err();
        assert!(matches!(err, TriangulationError::Syntax { line: 2, column: 3, .. }));
        let err = Triangulation::parse("tets 2\n0 7 -> 1 0 0123\n").unwrap_err();
        assert!(matches!(err, TriangulationError::Syntax { line: 2, column: 3, .. }));
        let err = Triangulation::parse("tets 2\n0 0 -> 1 0 0124\n").unwrap_err();
        assert!(matches!(err, TriangulationError::Syntax { line: 2, column: 12, .. }));
    }

    #[test]
    fn zero_tetrahedra_rejected() {
        assert_eq!(Triangulation::parse("tets 0\n").unwrap_err(), TriangulationError::Empty);
        assert!(matches!(
            Triangulation::parse("# nothing\n").unwrap_err(),
            TriangulationError::Syntax { .. }
        ));
    }

    #[test]
    fn gluings_are_canonicalized() {
        let a = Triangulation::parse("tets 2\n1 2 -> 0 0 2103\n").unwrap();
        let b = Triangulation::parse("tets 2\n0 0 -> 1 2 2103\n").unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_text(), "tets 2\n0 0 -> 1 2 2103\n");
    }
}
