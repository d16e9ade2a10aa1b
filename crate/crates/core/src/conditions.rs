//! Commutativity conditions: graphs on the block positions
//! `V_n = {(i, j)}` of an `n × n` block matrix, the named families built from
//! them, and the graph transforms (row/column permutation, transpose,
//! edge-union) used to derive new conditions from old ones.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::matrix::BlockMatrix;
use crate::perm::Permutation;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConditionError {
    #[error("vertex {cell} out of range for size {n}")]
    VertexOutOfRange { cell: Cell, n: usize },
    #[error("self-loop at {0}")]
    SelfLoop(Cell),
    #[error("size mismatch: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error("permutation of degree {degree} exceeds size {n}")]
    DegreeTooLarge { degree: usize, n: usize },
    #[error("{family} is not defined for size {n}")]
    UndefinedSize { family: String, n: usize },
    #[error("unknown family id {0:?}")]
    UnknownFamily(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// A block position, 0-based. Displays 1-based as `(row,col)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cell {
    pub row: usize,
    pub col: usize,
}

impl Cell {
    pub const fn new(row: usize, col: usize) -> Self {
        Cell { row, col }
    }

    fn in_range(self, n: usize) -> bool {
        self.row < n && self.col < n
    }

    /// Letter name used for size-2 conditions: `A B / C D`.
    pub fn letter(self) -> Option<char> {
        match (self.row, self.col) {
            (0, 0) => Some('A'),
            (0, 1) => Some('B'),
            (1, 0) => Some('C'),
            (1, 1) => Some('D'),
            _ => None,
        }
    }

    pub fn from_letter(c: char) -> Option<Cell> {
        match c.to_ascii_uppercase() {
            'A' => Some(Cell::new(0, 0)),
            'B' => Some(Cell::new(0, 1)),
            'C' => Some(Cell::new(1, 0)),
            'D' => Some(Cell::new(1, 1)),
            _ => None,
        }
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.row + 1, self.col + 1)
    }
}

pub type Edge = (Cell, Cell);

fn canonical(u: Cell, v: Cell) -> Edge {
    if u <= v {
        (u, v)
    } else {
        (v, u)
    }
}

/// All positions of `V_n` in row-major order.
pub fn vertices(n: usize) -> impl Iterator<Item = Cell> + Clone {
    (0..n).flat_map(move |r| (0..n).map(move |c| Cell::new(r, c)))
}

/// All unordered pairs of distinct positions of `V_n`.
pub fn all_pairs(n: usize) -> Vec<Edge> {
    let vs: Vec<Cell> = vertices(n).collect();
    let mut out = Vec::new();
    for (a, &u) in vs.iter().enumerate() {
        for &v in &vs[a + 1..] {
            out.push((u, v));
        }
    }
    out
}

/// A commutativity condition of size `n`: a simple undirected graph on
/// `V_n`. Edges are stored with their endpoints in ascending order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Condition {
    n: usize,
    edges: BTreeSet<Edge>,
}

impl Condition {
    pub fn empty(n: usize) -> Self {
        Condition {
            n,
            edges: BTreeSet::new(),
        }
    }

    pub fn complete(n: usize) -> Self {
        Self::from_predicate(n, |_, _| true)
    }

    pub fn with_edges(
        n: usize,
        edges: impl IntoIterator<Item = Edge>,
    ) -> Result<Self, ConditionError> {
        let mut g = Condition::empty(n);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Edge `{u, v}` present iff `pred(u, v)`; `pred` is evaluated once per
    /// unordered pair.
    pub fn from_predicate(n: usize, pred: impl Fn(Cell, Cell) -> bool) -> Self {
        Condition {
            n,
            edges: all_pairs(n)
                .into_iter()
                .filter(|&(u, v)| pred(u, v))
                .collect(),
        }
    }

    pub fn add_edge(&mut self, u: Cell, v: Cell) -> Result<(), ConditionError> {
        for c in [u, v] {
            if !c.in_range(self.n) {
                return Err(ConditionError::VertexOutOfRange { cell: c, n: self.n });
            }
        }
        if u == v {
            return Err(ConditionError::SelfLoop(u));
        }
        self.edges.insert(canonical(u, v));
        Ok(())
    }

    pub fn remove_edge(&mut self, u: Cell, v: Cell) -> bool {
        self.edges.remove(&canonical(u, v))
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn has_edge(&self, u: Cell, v: Cell) -> bool {
        self.edges.contains(&canonical(u, v))
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.edges.iter().copied()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Unordered pairs of distinct positions that are not edges.
    pub fn non_edges(&self) -> Vec<Edge> {
        all_pairs(self.n)
            .into_iter()
            .filter(|&(u, v)| !self.has_edge(u, v))
            .collect()
    }

    fn relabel(&self, f: impl Fn(Cell) -> Cell) -> Condition {
        Condition {
            n: self.n,
            edges: self
                .edges
                .iter()
                .map(|&(u, v)| canonical(f(u), f(v)))
                .collect(),
        }
    }

    fn extended(&self, pi: &Permutation) -> Result<Permutation, ConditionError> {
        if pi.degree() > self.n {
            return Err(ConditionError::DegreeTooLarge {
                degree: pi.degree(),
                n: self.n,
            });
        }
        Ok(pi.extend(self.n))
    }

    /// Relabels column `j` as `pi(j)`; `pi` is extended by the identity up to
    /// the size of the graph.
    pub fn col_permute(&self, pi: &Permutation) -> Result<Condition, ConditionError> {
        let p = self.extended(pi)?;
        Ok(self.relabel(|c| Cell::new(c.row, p.apply(c.col))))
    }

    /// Relabels row `i` as `pi(i)`.
    pub fn row_permute(&self, pi: &Permutation) -> Result<Condition, ConditionError> {
        let p = self.extended(pi)?;
        Ok(self.relabel(|c| Cell::new(p.apply(c.row), c.col)))
    }

    pub fn transpose(&self) -> Condition {
        self.relabel(|c| Cell::new(c.col, c.row))
    }

    pub fn union(&self, other: &Condition) -> Result<Condition, ConditionError> {
        self.same_size(other)?;
        Ok(Condition {
            n: self.n,
            edges: self.edges.union(&other.edges).copied().collect(),
        })
    }

    /// Labeled containment: every edge of `self` is an edge of `other`.
    pub fn is_subgraph_of(&self, other: &Condition) -> Result<bool, ConditionError> {
        self.same_size(other)?;
        Ok(self.edges.is_subset(&other.edges))
    }

    fn same_size(&self, other: &Condition) -> Result<(), ConditionError> {
        if self.n == other.n {
            Ok(())
        } else {
            Err(ConditionError::SizeMismatch(self.n, other.n))
        }
    }

    /// Edge list in letter notation for size 2, e.g. `{AC,BD}`.
    pub fn letters(&self) -> Option<String> {
        if self.n != 2 {
            return None;
        }
        let parts: Vec<String> = self
            .edges
            .iter()
            .map(|(u, v)| format!("{}{}", u.letter().unwrap(), v.letter().unwrap()))
            .collect();
        Some(format!("{{{}}}", parts.join(",")))
    }

    /// Size-2 condition from letter pairs such as `["CD", "AB"]`.
    pub fn from_letters(pairs: &[&str]) -> Result<Condition, ConditionError> {
        let mut g = Condition::empty(2);
        for p in pairs {
            let cells: Vec<Cell> = p.chars().filter_map(Cell::from_letter).collect();
            if cells.len() != 2 || p.chars().count() != 2 {
                return Err(ConditionError::Parse {
                    line: 0,
                    msg: format!("bad letter pair {p:?}"),
                });
            }
            g.add_edge(cells[0], cells[1])?;
        }
        Ok(g)
    }

    /// Parses the text format: a line `n`, then one edge per line `i j k l`
    /// (1-based). Blank lines and `#` comments are ignored.
    pub fn parse(text: &str) -> Result<Condition, ConditionError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (line, first) = lines.next().ok_or(ConditionError::Parse {
            line: 0,
            msg: "empty input".into(),
        })?;
        let n: usize = first.parse().map_err(|_| ConditionError::Parse {
            line,
            msg: format!("expected size, found {first:?}"),
        })?;
        let mut g = Condition::empty(n);
        for (line, text) in lines {
            let nums: Vec<usize> = text
                .split_whitespace()
                .map(|t| t.parse::<usize>())
                .collect::<Result<_, _>>()
                .map_err(|_| ConditionError::Parse {
                    line,
                    msg: format!("expected four positive integers, found {text:?}"),
                })?;
            if nums.len() != 4 || nums.contains(&0) {
                return Err(ConditionError::Parse {
                    line,
                    msg: format!("expected four positive integers, found {text:?}"),
                });
            }
            g.add_edge(
                Cell::new(nums[0] - 1, nums[1] - 1),
                Cell::new(nums[2] - 1, nums[3] - 1),
            )
            .map_err(|e| ConditionError::Parse {
                line,
                msg: e.to_string(),
            })?;
        }
        Ok(g)
    }
}

impl fmt::Display for Condition {
    /// The text format accepted by [`Condition::parse`].
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.n)?;
        for (u, v) in &self.edges {
            writeln!(f, "{} {} {} {}", u.row + 1, u.col + 1, v.row + 1, v.col + 1)?;
        }
        Ok(())
    }
}

/// `F_n`: an edge between `(i,j)` and `(k,l)` iff neither is in the first
/// row and `j ≠ l`. Equivalently the complete `n`-partite graph whose parts
/// are the columns restricted to rows `2..n`.
pub fn cond_f(n: usize) -> Condition {
    Condition::from_predicate(n, |u, v| u.row != 0 && v.row != 0 && u.col != v.col)
}

/// `κ_n`: the complete graph on rows `2..n`.
pub fn cond_kappa(n: usize) -> Condition {
    Condition::from_predicate(n, |u, v| u.row != 0 && v.row != 0)
}

/// `T_{col c, n}` with `c` 0-based: pairs off column `c` in distinct rows and
/// columns, plus every column-`c` block paired with the blocks strictly above
/// and to the left or strictly below and to the right of it.
pub fn cond_t_col(c: usize, n: usize) -> Result<Condition, ConditionError> {
    if c >= n {
        return Err(ConditionError::UndefinedSize {
            family: format!("tcol:{}", c + 1),
            n,
        });
    }
    Ok(Condition::from_predicate(n, |u, v| {
        let (i, j, k, l) = (u.row as i64, u.col as i64, v.row as i64, v.col as i64);
        let c = c as i64;
        (i != k && j != l && j != c && l != c) || ((j == c || l == c) && (i - k) * (j - l) > 0)
    }))
}

/// `T_{row r, n}`, the transpose of `T_{col r, n}`.
pub fn cond_t_row(r: usize, n: usize) -> Result<Condition, ConditionError> {
    Ok(cond_t_col(r, n)?.transpose())
}

/// `F_{n,side,j}` (0-based `j`): `(F_nᵗ ∪ T_{col 1,n})` with columns 1 and
/// `j` exchanged.
pub fn cond_f_side(j: usize, n: usize) -> Result<Condition, ConditionError> {
    if j >= n {
        return Err(ConditionError::UndefinedSize {
            family: format!("side:{}", j + 1),
            n,
        });
    }
    let base = cond_f(n).transpose().union(&cond_t_col(0, n)?)?;
    base.col_permute(&Permutation::transposition(j + 1, 0, j))
}

/// `F_{n,down,i}` (0-based `i`): `F_{n,side,i}ᵗ ∪ T_{row i,n}`.
pub fn cond_f_down(i: usize, n: usize) -> Result<Condition, ConditionError> {
    if i >= n {
        return Err(ConditionError::UndefinedSize {
            family: format!("down:{}", i + 1),
            n,
        });
    }
    cond_f_side(i, n)?.transpose().union(&cond_t_row(i, n)?)
}

/// The named size-2 graphs: the minimal sufficient conditions `G1..G5` and
/// the maximal insufficient ones `H1..H4`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Named {
    G1,
    G2,
    G3,
    G4,
    G5,
    H1,
    H2,
    H3,
    H4,
}

impl Named {
    pub const MINIMAL_SCC: [Named; 5] = [Named::G1, Named::G2, Named::G3, Named::G4, Named::G5];
    pub const MAXIMAL_NON_SCC: [Named; 4] = [Named::H1, Named::H2, Named::H3, Named::H4];

    pub fn letter_edges(self) -> &'static [&'static str] {
        match self {
            Named::G1 => &["CD"],
            Named::G2 => &["AD", "BD"],
            Named::G3 => &["AC", "BC"],
            Named::G4 => &["AB", "AD", "BC"],
            Named::G5 => &["AB", "AC", "BD"],
            Named::H1 => &["AD", "BC"],
            Named::H2 => &["AB", "AC", "AD"],
            Named::H3 => &["AB", "BC", "BD"],
            Named::H4 => &["AC", "BD"],
        }
    }

    pub fn condition(self) -> Condition {
        Condition::from_letters(self.letter_edges()).expect("static letter pairs")
    }
}

impl fmt::Display for Named {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl FromStr for Named {
    type Err = ConditionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "g1" => Named::G1,
            "g2" => Named::G2,
            "g3" => Named::G3,
            "g4" => Named::G4,
            "g5" => Named::G5,
            "h1" => Named::H1,
            "h2" => Named::H2,
            "h3" => Named::H3,
            "h4" => Named::H4,
            _ => return Err(ConditionError::UnknownFamily(s.to_string())),
        })
    }
}

/// A family of conditions with at most one member per size. Parameters are
/// 1-based, matching the string ids (`side:2`, `tcol:1`, ...).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ConditionFamily {
    F,
    FSide(usize),
    FDown(usize),
    TCol(usize),
    TRow(usize),
    Kappa,
    Complete,
    Empty,
    Named(Named),
}

impl ConditionFamily {
    pub fn instantiate(self, n: usize) -> Result<Condition, ConditionError> {
        let undefined = || ConditionError::UndefinedSize {
            family: self.to_string(),
            n,
        };
        if n == 0 {
            return Err(undefined());
        }
        let param = |p: usize| {
            if p == 0 || p > n {
                Err(undefined())
            } else {
                Ok(p - 1)
            }
        };
        match self {
            ConditionFamily::F => Ok(cond_f(n)),
            ConditionFamily::Kappa => Ok(cond_kappa(n)),
            ConditionFamily::Complete => Ok(Condition::complete(n)),
            ConditionFamily::Empty => Ok(Condition::empty(n)),
            ConditionFamily::FSide(j) => cond_f_side(param(j)?, n),
            ConditionFamily::FDown(i) => cond_f_down(param(i)?, n),
            ConditionFamily::TCol(c) => cond_t_col(param(c)?, n),
            ConditionFamily::TRow(r) => cond_t_row(param(r)?, n),
            ConditionFamily::Named(g) if n == 2 => Ok(g.condition()),
            ConditionFamily::Named(_) => Err(undefined()),
        }
    }
}

impl fmt::Display for ConditionFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConditionFamily::F => write!(f, "f"),
            ConditionFamily::FSide(j) => write!(f, "side:{j}"),
            ConditionFamily::FDown(i) => write!(f, "down:{i}"),
            ConditionFamily::TCol(c) => write!(f, "tcol:{c}"),
            ConditionFamily::TRow(r) => write!(f, "trow:{r}"),
            ConditionFamily::Kappa => write!(f, "kappa"),
            ConditionFamily::Complete => write!(f, "complete"),
            ConditionFamily::Empty => write!(f, "empty"),
            ConditionFamily::Named(g) => write!(f, "{}", g.to_string().to_ascii_lowercase()),
        }
    }
}

impl FromStr for ConditionFamily {
    type Err = ConditionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let unknown = || ConditionError::UnknownFamily(s.to_string());
        let s = s.trim();
        if let Some((kind, p)) = s.split_once(':') {
            let p: usize = p.parse().map_err(|_| unknown())?;
            if p == 0 {
                return Err(unknown());
            }
            return match kind {
                "side" => Ok(ConditionFamily::FSide(p)),
                "down" => Ok(ConditionFamily::FDown(p)),
                "tcol" => Ok(ConditionFamily::TCol(p)),
                "trow" => Ok(ConditionFamily::TRow(p)),
                _ => Err(unknown()),
            };
        }
        match s {
            "f" => Ok(ConditionFamily::F),
            "kappa" => Ok(ConditionFamily::Kappa),
            "complete" => Ok(ConditionFamily::Complete),
            "empty" => Ok(ConditionFamily::Empty),
            other => other
                .parse()
                .map(ConditionFamily::Named)
                .map_err(|_| unknown()),
        }
    }
}

/// The graph on `V_n` with an edge wherever the two blocks commute.
pub fn commutativity_graph(m: &BlockMatrix) -> Condition {
    let n = m.n();
    Condition::from_predicate(n, |u, v| {
        m.block(u.row, u.col).commutes_with(m.block(v.row, v.col))
    })
}

/// `M` satisfies `G` when its commutativity graph contains `G`.
pub fn matrix_satisfies(m: &BlockMatrix, g: &Condition) -> Result<bool, ConditionError> {
    if m.n() != g.size() {
        return Err(ConditionError::SizeMismatch(m.n(), g.size()));
    }
    Ok(g.edges()
        .all(|(u, v)| m.block(u.row, u.col).commutes_with(m.block(v.row, v.col))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::Matrix;
    use crate::ring::Ring;

    fn letters(pairs: &[&str]) -> Condition {
        Condition::from_letters(pairs).unwrap()
    }

    #[test]
    fn f_examples() {
        assert_eq!(cond_f(1).edge_count(), 0);
        assert_eq!(cond_f(2), Named::G1.condition());
        // brute force over the defining predicate
        let brute = all_pairs(3)
            .into_iter()
            .filter(|(u, v)| u.row >= 1 && v.row >= 1 && u.col != v.col)
            .count();
        assert_eq!(brute, 12);
        assert_eq!(cond_f(3).edge_count(), brute);
    }

    #[test]
    fn kappa_examples() {
        assert_eq!(cond_kappa(1).edge_count(), 0);
        assert_eq!(cond_kappa(2), letters(&["CD"]));
        assert_eq!(cond_kappa(3).edge_count(), 15);
        for n in 1..=8 {
            assert!(cond_f(n).is_subgraph_of(&cond_kappa(n)).unwrap());
        }
    }

    #[test]
    fn t_col_small_instances() {
        assert_eq!(cond_t_col(0, 2).unwrap(), letters(&["AD"]));
        assert_eq!(cond_t_col(1, 2).unwrap(), letters(&["AD"]));
        assert_eq!(cond_t_col(0, 1).unwrap().edge_count(), 0);
        assert!(cond_t_col(2, 2).is_err());
        assert_eq!(cond_t_row(0, 2).unwrap(), letters(&["AD"]));
        assert_eq!(cond_t_row(0, 1).unwrap().edge_count(), 0);
        for n in 1..=4 {
            for r in 0..n {
                assert_eq!(
                    cond_t_row(r, n).unwrap().transpose(),
                    cond_t_col(r, n).unwrap()
                );
            }
        }
    }

    #[test]
    fn t_col_meaning() {
        // column-c blocks commute with blocks strictly above-left or below-right
        let (n, c) = (4, 1);
        let t = cond_t_col(c, n).unwrap();
        for (u, v) in all_pairs(n) {
            let expected = if u.col == c || v.col == c {
                let (x, y) = if u.col == c { (u, v) } else { (v, u) };
                y.col != c && ((y.row < x.row && y.col < x.col) || (y.row > x.row && y.col > x.col))
            } else {
                u.row != v.row && u.col != v.col
            };
            assert_eq!(t.has_edge(u, v), expected, "{u} {v}");
        }
    }

    #[test]
    fn family_builders_reproduce_size_two_graphs() {
        assert_eq!(cond_f_side(0, 2).unwrap(), Named::G2.condition());
        assert_eq!(cond_f_side(1, 2).unwrap(), Named::G3.condition());
        assert_eq!(cond_f_down(1, 2).unwrap(), Named::G4.condition());
        assert_eq!(cond_f_side(0, 1).unwrap().edge_count(), 0);
        assert_eq!(cond_f_down(0, 1).unwrap().edge_count(), 0);
        assert!(cond_f_side(2, 2).is_err());
        assert_eq!(cond_f(2).transpose(), letters(&["BD"]));
        assert_eq!(
            cond_f(2)
                .transpose()
                .union(&cond_t_col(0, 2).unwrap())
                .unwrap(),
            Named::G2.condition()
        );
    }

    #[test]
    fn f_side_meaning() {
        for n in 1..=4 {
            for j in 0..n {
                let g = cond_f_side(j, n).unwrap();
                for (u, v) in all_pairs(n) {
                    let expected = if u.col != j && v.col != j {
                        u.row != v.row
                    } else if u.col == j && v.col == j {
                        false
                    } else {
                        let (x, y) = if u.col == j { (u, v) } else { (v, u) };
                        y.row > x.row
                    };
                    assert_eq!(g.has_edge(u, v), expected, "n={n} j={j} {u} {v}");
                }
            }
        }
    }

    #[test]
    fn f_down_meaning() {
        for n in 1..=4 {
            for i in 0..n {
                let g = cond_f_down(i, n).unwrap();
                for (u, v) in all_pairs(n) {
                    let expected = if u.row != i && v.row != i {
                        u.col != v.col
                    } else if u.row == i && v.row == i {
                        false
                    } else {
                        let (x, y) = if u.row == i { (u, v) } else { (v, u) };
                        y.col != x.col && (y.row < x.row || y.col > x.col)
                    };
                    assert_eq!(g.has_edge(u, v), expected, "n={n} i={i} {u} {v}");
                }
            }
        }
    }

    #[test]
    fn f_down_size_three_restricts_to_g4_pattern() {
        let g = cond_f_down(1, 3).unwrap();
        // principal positions (1..2) x (1..2)
        let sub: Vec<Edge> = g
            .edges()
            .filter(|(u, v)| u.row < 2 && u.col < 2 && v.row < 2 && v.col < 2)
            .collect();
        assert_eq!(
            Condition::with_edges(2, sub).unwrap(),
            Named::G4.condition()
        );
    }

    #[test]
    fn named_graphs() {
        assert_eq!(Named::G5.condition(), letters(&["AB", "AC", "BD"]));
        assert_eq!(Named::H2.condition(), letters(&["AB", "AC", "AD"]));
        assert_eq!(Named::H4.condition(), letters(&["AC", "BD"]));
        assert_eq!(Named::H4.condition().letters().unwrap(), "{AC,BD}");
    }

    #[test]
    fn subgraph_examples() {
        assert!(Condition::empty(3).is_subgraph_of(&cond_f(3)).unwrap());
        assert!(Named::G1
            .condition()
            .is_subgraph_of(&cond_kappa(2))
            .unwrap());
        assert!(!Named::G2
            .condition()
            .is_subgraph_of(&Named::H2.condition())
            .unwrap());
        assert!(matches!(
            cond_f(2).is_subgraph_of(&cond_f(3)),
            Err(ConditionError::SizeMismatch(2, 3))
        ));
    }

    #[test]
    fn permutation_actions() {
        let g = cond_f_side(1, 4).unwrap();
        let id = Permutation::identity(4);
        assert_eq!(g.col_permute(&id).unwrap(), g);
        assert_eq!(g.row_permute(&id).unwrap(), g);
        let perms: Vec<Permutation> = Permutation::all(4).collect();
        for p in perms.iter().step_by(5) {
            for q in perms.iter().step_by(7) {
                let pq = p.compose(q).unwrap();
                assert_eq!(
                    g.col_permute(q).unwrap().col_permute(p).unwrap(),
                    g.col_permute(&pq).unwrap()
                );
                assert_eq!(
                    g.row_permute(q).unwrap().row_permute(p).unwrap(),
                    g.row_permute(&pq).unwrap()
                );
            }
            assert_eq!(
                g.row_permute(p).unwrap().row_permute(&p.inverse()).unwrap(),
                g
            );
            assert_eq!(
                g.col_permute(p).unwrap().transpose(),
                g.transpose().row_permute(p).unwrap()
            );
        }
        assert!(matches!(
            cond_f(2).col_permute(&id),
            Err(ConditionError::DegreeTooLarge { .. })
        ));
    }

    #[test]
    fn f_is_column_permutation_invariant() {
        for n in 1..=4 {
            for p in Permutation::all(n) {
                assert_eq!(cond_f(n).col_permute(&p).unwrap(), cond_f(n));
            }
        }
    }

    #[test]
    fn row_swap_relates_same_row_missing_edges() {
        let n = 4;
        for i in 1..n {
            let mut gi = cond_kappa(n);
            gi.remove_edge(Cell::new(i, 0), Cell::new(i, 1));
            let mut g2 = cond_kappa(n);
            g2.remove_edge(Cell::new(1, 0), Cell::new(1, 1));
            let swap = Permutation::transposition(n, 1, i);
            assert_eq!(g2.row_permute(&swap).unwrap(), gi);
        }
    }

    #[test]
    fn transpose_examples() {
        for n in 1..=4 {
            let g = cond_f_down(0, n).unwrap();
            assert_eq!(g.transpose().transpose(), g);
            assert_eq!(g.transpose().edge_count(), g.edge_count());
            // κ_nᵗ is the complete graph on columns 2..n
            let expected = Condition::from_predicate(n, |u, v| u.col != 0 && v.col != 0);
            assert_eq!(cond_kappa(n).transpose(), expected);
        }
    }

    #[test]
    fn union_examples() {
        let g = cond_f_side(0, 3).unwrap();
        assert_eq!(g.union(&Condition::empty(3)).unwrap(), g);
        assert_eq!(g.union(&g).unwrap(), g);
        assert!(g.union(&Condition::empty(2)).is_err());
    }

    #[test]
    fn text_format_round_trip() {
        let g = cond_f_down(1, 3).unwrap();
        assert_eq!(Condition::parse(&g.to_string()).unwrap(), g);
        assert_eq!(Condition::parse("2\n2 1 2 2\n").unwrap(), cond_f(2));
        assert!(Condition::parse("2\n2 1 2\n").is_err());
        assert!(Condition::parse("2\n1 1 1 1\n").is_err());
        assert!(Condition::parse("2\n3 1 1 1\n").is_err());
    }

    #[test]
    fn family_ids() {
        for id in [
            "f", "side:2", "down:3", "tcol:1", "trow:2", "kappa", "g5", "h4", "complete",
        ] {
            let fam: ConditionFamily = id.parse().unwrap();
            assert_eq!(fam.to_string(), id);
        }
        assert!("side:0".parse::<ConditionFamily>().is_err());
        assert!("x".parse::<ConditionFamily>().is_err());
        assert!(ConditionFamily::FSide(3).instantiate(2).is_err());
        assert!(ConditionFamily::Named(Named::G5).instantiate(3).is_err());
        assert_eq!(
            ConditionFamily::FSide(1).instantiate(2).unwrap(),
            Named::G2.condition()
        );
    }

    fn block_m1() -> BlockMatrix {
        let r = Ring::Integers;
        let a = Matrix::from_i64(&r, 2, 2, &[1, 2, 3, 4]);
        let b = Matrix::from_i64(&r, 2, 2, &[5, 6, 7, 8]);
        BlockMatrix::from_rows(vec![vec![a.clone(), b.clone()], vec![b, a]]).unwrap()
    }

    #[test]
    fn commutativity_graph_examples() {
        let r = Ring::Integers;
        let ident = BlockMatrix::from_fn(&r, 2, 3, |_, _| Matrix::identity(&r, 2));
        assert_eq!(commutativity_graph(&ident), Condition::complete(3));

        let g = commutativity_graph(&block_m1());
        assert!(g.has_edge(Cell::new(0, 0), Cell::new(1, 1)));
        assert!(g.has_edge(Cell::new(0, 1), Cell::new(1, 0)));
        assert!(matrix_satisfies(&block_m1(), &Named::H1.condition()).unwrap());
        assert!(matrix_satisfies(&block_m1(), &Condition::empty(2)).unwrap());
        assert!(matrix_satisfies(&block_m1(), &Condition::empty(3)).is_err());
    }

    #[test]
    fn satisfaction_is_monotone() {
        let m = block_m1();
        let cg = commutativity_graph(&m);
        for mask in 0u32..64 {
            let pairs = all_pairs(2);
            let g = Condition::with_edges(
                2,
                pairs
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| mask >> k & 1 == 1)
                    .map(|(_, e)| *e),
            )
            .unwrap();
            assert_eq!(
                matrix_satisfies(&m, &g).unwrap(),
                g.is_subgraph_of(&cg).unwrap()
            );
        }
    }
}
