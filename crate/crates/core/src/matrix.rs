//! Dense matrices over a single [`Ring`], and block matrices viewed as
//! `n × n` arrays of `m × m` blocks.
//!
//! Indices are 0-based in the API. The text formats and all user-facing
//! output use 1-based positions.

use std::fmt;

use rand::Rng;
use thiserror::Error;

use crate::perm::Permutation;
use crate::ring::{Ring, RingError, RingValue};

/// Largest dimension accepted by [`Matrix::det_expansion`].
pub const EXPANSION_CAP: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("matrix is {rows}x{cols}, expected a square matrix")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension {dim} exceeds the cap of {cap}")]
    TooLarge { dim: usize, cap: usize },
    #[error("dimension {dim} is not divisible by block size {m}")]
    Indivisible { dim: usize, m: usize },
    #[error("index ({row}, {col}) out of range for a {n}x{n} block matrix")]
    IndexOutOfRange { row: usize, col: usize, n: usize },
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error("line {line}, column {col}: {msg}")]
    Parse {
        line: usize,
        col: usize,
        msg: String,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    ring: Ring,
    rows: usize,
    cols: usize,
    data: Vec<RingValue>,
}

impl Matrix {
    pub fn new(
        ring: Ring,
        rows: usize,
        cols: usize,
        data: Vec<RingValue>,
    ) -> Result<Self, MatrixError> {
        if data.len() != rows * cols {
            return Err(MatrixError::Shape(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if let Some(bad) = data.iter().find(|v| v.ring() != ring) {
            return Err(RingError::Mismatch {
                left: ring,
                right: bad.ring(),
            }
            .into());
        }
        Ok(Matrix {
            ring,
            rows,
            cols,
            data,
        })
    }

    /// Builds a matrix from row-major integer entries.
    pub fn from_i64(ring: &Ring, rows: usize, cols: usize, entries: &[i64]) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count");
        Matrix {
            ring: ring.clone(),
            rows,
            cols,
            data: entries.iter().map(|&v| ring.from_i64(v)).collect(),
        }
    }

    pub fn from_fn(
        ring: &Ring,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> RingValue,
    ) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                let v = f(r, c);
                assert_eq!(v.ring(), *ring, "entry ({r}, {c}) in wrong ring");
                data.push(v);
            }
        }
        Matrix {
            ring: ring.clone(),
            rows,
            cols,
            data,
        }
    }

    pub fn zeros(ring: &Ring, rows: usize, cols: usize) -> Self {
        Matrix {
            ring: ring.clone(),
            rows,
            cols,
            data: vec![ring.zero(); rows * cols],
        }
    }

    pub fn identity(ring: &Ring, k: usize) -> Self {
        Self::scalar(ring, k, &ring.one())
    }

    /// `value · I_k`.
    pub fn scalar(ring: &Ring, k: usize, value: &RingValue) -> Self {
        Matrix::from_fn(
            ring,
            k,
            k,
            |r, c| {
                if r == c {
                    value.clone()
                } else {
                    ring.zero()
                }
            },
        )
    }

    pub fn random<R: Rng + ?Sized>(
        ring: &Ring,
        rows: usize,
        cols: usize,
        rng: &mut R,
        bound: i64,
    ) -> Self {
        Matrix::from_fn(ring, rows, cols, |_, _| ring.random_value(rng, bound))
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &RingValue {
        assert!(
            r < self.rows && c < self.cols,
            "entry ({r}, {c}) out of range"
        );
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: RingValue) {
        assert!(
            r < self.rows && c < self.cols,
            "entry ({r}, {c}) out of range"
        );
        assert_eq!(v.ring(), self.ring, "entry in wrong ring");
        self.data[r * self.cols + c] = v;
    }

    pub fn entries(&self) -> &[RingValue] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(RingValue::is_zero)
    }

    fn check_ring(&self, other: &Matrix) -> Result<(), MatrixError> {
        if self.ring != other.ring {
            return Err(RingError::Mismatch {
                left: self.ring.clone(),
                right: other.ring.clone(),
            }
            .into());
        }
        Ok(())
    }

    fn check_square(&self) -> Result<(), MatrixError> {
        if self.is_square() {
            Ok(())
        } else {
            Err(MatrixError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    pub fn try_mul(&self, other: &Matrix) -> Result<Matrix, MatrixError> {
        self.check_ring(other)?;
        if self.cols != other.rows {
            return Err(MatrixError::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zeros(&self.ring, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * other.cols + j;
                    out.data[idx] = &out.data[idx] + &(a * b);
                }
            }
        }
        Ok(out)
    }

    fn zip_with(
        &self,
        other: &Matrix,
        f: impl Fn(&RingValue, &RingValue) -> RingValue,
    ) -> Result<Matrix, MatrixError> {
        self.check_ring(other)?;
        if self.rows != other.rows || self.cols != other.cols {
            return Err(MatrixError::Shape(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(Matrix {
            ring: self.ring.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| f(a, b))
                .collect(),
        })
    }

    pub fn try_add(&self, other: &Matrix) -> Result<Matrix, MatrixError> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn try_sub(&self, other: &Matrix) -> Result<Matrix, MatrixError> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn negate(&self) -> Matrix {
        self.map(|v| -v)
    }

    pub fn scale(&self, k: &RingValue) -> Matrix {
        self.map(|v| v * k)
    }

    /// Applies `f` entrywise. The result lives in the ring of `f`'s outputs,
    /// which must be the same for every entry.
    pub fn map(&self, f: impl Fn(&RingValue) -> RingValue) -> Matrix {
        let data: Vec<RingValue> = self.data.iter().map(f).collect();
        let ring = data
            .first()
            .map_or_else(|| self.ring.clone(), RingValue::ring);
        Matrix::new(ring, self.rows, self.cols, data).expect("map produced mixed rings")
    }

    /// Coerces integer entries into `target` (reduction mod p, constant
    /// polynomials). Only integer matrices can be lifted.
    pub fn lift(&self, target: &Ring) -> Result<Matrix, MatrixError> {
        let data = self
            .data
            .iter()
            .map(|v| {
                v.as_integer()
                    .map(|i| target.from_bigint(i))
                    .ok_or_else(|| RingError::Mismatch {
                        left: Ring::Integers,
                        right: v.ring(),
                    })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Matrix::new(target.clone(), self.rows, self.cols, data)
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(&self.ring, self.cols, self.rows, |r, c| {
            self.get(c, r).clone()
        })
    }

    /// `xy = yx`.
    pub fn commutes_with(&self, other: &Matrix) -> bool {
        match (self.try_mul(other), other.try_mul(self)) {
            (Ok(a), Ok(b)) => a == b,
            _ => false,
        }
    }

    /// The submatrix with row `i` and column `j` removed.
    pub fn minor(&self, i: usize, j: usize) -> Matrix {
        let mut data = Vec::with_capacity((self.rows - 1) * (self.cols - 1));
        for r in (0..self.rows).filter(|&r| r != i) {
            for c in (0..self.cols).filter(|&c| c != j) {
                data.push(self.get(r, c).clone());
            }
        }
        Matrix {
            ring: self.ring.clone(),
            rows: self.rows - 1,
            cols: self.cols - 1,
            data,
        }
    }

    /// Determinant by the division-free Berkowitz algorithm; valid over any
    /// commutative ring. The empty matrix has determinant 1.
    pub fn det(&self) -> Result<RingValue, MatrixError> {
        self.check_square()?;
        let n = self.rows;
        let charpoly = self.berkowitz_charpoly();
        let last = charpoly[n].clone();
        Ok(if n.is_multiple_of(2) { last } else { -&last })
    }

    /// Coefficients of `det(x I - A)`, leading coefficient first.
    fn berkowitz_charpoly(&self) -> Vec<RingValue> {
        let n = self.rows;
        let one = self.ring.one();
        if n == 0 {
            return vec![one];
        }
        let mut coeffs = vec![one.clone(), -self.get(0, 0)];
        for r in 1..n {
            // A_r = [[A_{r-1}, col], [row, a_rr]]
            let mut toeplitz = Vec::with_capacity(r + 2);
            toeplitz.push(one.clone());
            toeplitz.push(-self.get(r, r));
            let mut v: Vec<RingValue> = (0..r).map(|i| self.get(i, r).clone()).collect();
            for k in 0..r {
                let dot = (0..r).fold(self.ring.zero(), |acc, i| &acc + &(self.get(r, i) * &v[i]));
                toeplitz.push(-&dot);
                if k + 1 < r {
                    v = (0..r)
                        .map(|i| {
                            (0..r).fold(self.ring.zero(), |acc, j| &acc + &(self.get(i, j) * &v[j]))
                        })
                        .collect();
                }
            }
            let next: Vec<RingValue> = (0..r + 2)
                .map(|i| {
                    (0..=i.min(r)).fold(self.ring.zero(), |acc, j| {
                        &acc + &(&toeplitz[i - j] * &coeffs[j])
                    })
                })
                .collect();
            coeffs = next;
        }
        coeffs
    }

    /// Determinant as the signed sum over all permutations. Exponential; used
    /// as an independent oracle for [`Matrix::det`].
    pub fn det_expansion(&self) -> Result<RingValue, MatrixError> {
        self.check_square()?;
        if self.rows > EXPANSION_CAP {
            return Err(MatrixError::TooLarge {
                dim: self.rows,
                cap: EXPANSION_CAP,
            });
        }
        let mut total = self.ring.zero();
        for p in Permutation::all(self.rows) {
            let mut term = self.ring.from_i64(p.sign());
            for (r, c) in p.images().iter().enumerate() {
                term = &term * self.get(r, *c);
            }
            total = &total + &term;
        }
        Ok(total)
    }

    /// Cofactor matrix: entry `(i, j)` is `(-1)^(i+j)` times the determinant
    /// of the minor at `(i, j)`, so that `X · Cof(X)ᵗ = det(X) · I`.
    pub fn cofactor_matrix(&self) -> Result<Matrix, MatrixError> {
        self.check_square()?;
        let k = self.rows;
        if k == 0 {
            return Err(MatrixError::Shape("cofactors of an empty matrix".into()));
        }
        if k == 1 {
            return Ok(Matrix::identity(&self.ring, 1));
        }
        let mut data = Vec::with_capacity(k * k);
        for i in 0..k {
            for j in 0..k {
                let d = self.minor(i, j).det()?;
                data.push(if (i + j) % 2 == 0 { d } else { -&d });
            }
        }
        Matrix::new(self.ring.clone(), k, k, data)
    }

    /// Parses the text format: a header `rows cols ring`, then one line per row
    /// of whitespace-separated entries.
    pub fn parse(text: &str) -> Result<Matrix, MatrixError> {
        let mut lines = Tokens::new(text);
        let (header_line, header) = lines.next_line()?;
        let [rows, cols, ring] = header_fields(header_line, &header)?;
        let rows = parse_count(header_line, &rows)?;
        let cols = parse_count(header_line, &cols)?;
        let ring = parse_ring(header_line, &ring)?;
        let data = lines.read_grid(&ring, rows, cols)?;
        Matrix::new(ring, rows, cols, data)
    }
}

impl fmt::Display for Matrix {
    /// The text format accepted by [`Matrix::parse`].
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {} {}", self.rows, self.cols, self.ring)?;
        write_grid(f, self.rows, self.cols, |r, c| self.get(r, c))
    }
}

fn write_grid<'a>(
    f: &mut fmt::Formatter<'_>,
    rows: usize,
    cols: usize,
    get: impl Fn(usize, usize) -> &'a RingValue,
) -> fmt::Result {
    for r in 0..rows {
        let line: Vec<String> = (0..cols).map(|c| get(r, c).to_string()).collect();
        writeln!(f, "{}", line.join(" "))?;
    }
    Ok(())
}

impl std::ops::Mul for &Matrix {
    type Output = Matrix;

    fn mul(self, rhs: &Matrix) -> Matrix {
        self.try_mul(rhs).expect("matrix product")
    }
}

impl std::ops::Add for &Matrix {
    type Output = Matrix;

    fn add(self, rhs: &Matrix) -> Matrix {
        self.try_add(rhs).expect("matrix sum")
    }
}

impl std::ops::Sub for &Matrix {
    type Output = Matrix;

    fn sub(self, rhs: &Matrix) -> Matrix {
        self.try_sub(rhs).expect("matrix difference")
    }
}

impl std::ops::Neg for &Matrix {
    type Output = Matrix;

    fn neg(self) -> Matrix {
        self.negate()
    }
}

/// An `n × n` matrix whose entries are `m × m` blocks over a common ring,
/// i.e. an element of `M_n(M_m(R))`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BlockMatrix {
    ring: Ring,
    m: usize,
    n: usize,
    blocks: Vec<Matrix>,
}

impl BlockMatrix {
    /// `blocks` is row-major, `n * n` long, every block `m × m`.
    pub fn new(ring: Ring, m: usize, n: usize, blocks: Vec<Matrix>) -> Result<Self, MatrixError> {
        if blocks.len() != n * n {
            return Err(MatrixError::Shape(format!(
                "{} blocks for a {n}x{n} block matrix",
                blocks.len()
            )));
        }
        for (idx, b) in blocks.iter().enumerate() {
            if b.rows != m || b.cols != m {
                return Err(MatrixError::Shape(format!(
                    "block ({}, {}) is {}x{}, expected {m}x{m}",
                    idx / n + 1,
                    idx % n + 1,
                    b.rows,
                    b.cols
                )));
            }
            if b.ring != ring {
                return Err(RingError::Mismatch {
                    left: ring,
                    right: b.ring.clone(),
                }
                .into());
            }
        }
        Ok(BlockMatrix { ring, m, n, blocks })
    }

    /// Builds from nested rows of blocks; the ring and block size are taken
    /// from the first block.
    pub fn from_rows(rows: Vec<Vec<Matrix>>) -> Result<Self, MatrixError> {
        let n = rows.len();
        let first = rows
            .first()
            .and_then(|r| r.first())
            .ok_or_else(|| MatrixError::Shape("empty block matrix".into()))?;
        let (ring, m) = (first.ring.clone(), first.rows);
        if rows.iter().any(|r| r.len() != n) {
            return Err(MatrixError::Shape("block rows of unequal length".into()));
        }
        BlockMatrix::new(ring, m, n, rows.into_iter().flatten().collect())
    }

    pub fn from_fn(
        ring: &Ring,
        m: usize,
        n: usize,
        mut f: impl FnMut(usize, usize) -> Matrix,
    ) -> Self {
        let mut blocks = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                blocks.push(f(i, j));
            }
        }
        BlockMatrix::new(ring.clone(), m, n, blocks).expect("block builder produced bad blocks")
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    /// Block size.
    pub fn m(&self) -> usize {
        self.m
    }

    /// Number of block rows (and block columns).
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn block(&self, i: usize, j: usize) -> &Matrix {
        assert!(i < self.n && j < self.n, "block ({i}, {j}) out of range");
        &self.blocks[i * self.n + j]
    }

    pub fn set_block(&mut self, i: usize, j: usize, b: Matrix) {
        assert!(b.rows == self.m && b.cols == self.m && b.ring == self.ring);
        self.blocks[i * self.n + j] = b;
    }

    /// The `mn × mn` matrix over the base ring.
    pub fn flatten(&self) -> Matrix {
        let (m, n) = (self.m, self.n);
        Matrix::from_fn(&self.ring, m * n, m * n, |r, c| {
            self.block(r / m, c / m).get(r % m, c % m).clone()
        })
    }

    /// Views a square matrix as blocks of size `m`.
    pub fn view(x: &Matrix, m: usize) -> Result<Self, MatrixError> {
        x.check_square()?;
        if m == 0 || !x.rows.is_multiple_of(m) {
            return Err(MatrixError::Indivisible { dim: x.rows, m });
        }
        let n = x.rows / m;
        Ok(BlockMatrix::from_fn(&x.ring, m, n, |i, j| {
            Matrix::from_fn(&x.ring, m, m, |r, c| x.get(i * m + r, j * m + c).clone())
        }))
    }

    /// Transpose over the base ring: block `(i, j)` becomes the transpose of
    /// block `(j, i)`.
    pub fn transpose(&self) -> BlockMatrix {
        BlockMatrix::from_fn(&self.ring, self.m, self.n, |i, j| {
            self.block(j, i).transpose()
        })
    }

    /// Block `(i, j)` of the result is block `(i, pi⁻¹(j))` of `self`: block
    /// column `j` moves to position `pi(j)`.
    pub fn permute_block_cols(&self, pi: &Permutation) -> BlockMatrix {
        let pi = pi.extend(self.n).inverse();
        BlockMatrix::from_fn(&self.ring, self.m, self.n, |i, j| {
            self.block(i, pi.apply(j)).clone()
        })
    }

    /// Block row `i` moves to position `pi(i)`.
    pub fn permute_block_rows(&self, pi: &Permutation) -> BlockMatrix {
        let pi = pi.extend(self.n).inverse();
        BlockMatrix::from_fn(&self.ring, self.m, self.n, |i, j| {
            self.block(pi.apply(i), j).clone()
        })
    }

    /// The `(n-1) × (n-1)` block matrix with block row `i` and block column
    /// `j` removed.
    pub fn delete(&self, i: usize, j: usize) -> Result<BlockMatrix, MatrixError> {
        if i >= self.n || j >= self.n {
            return Err(MatrixError::IndexOutOfRange {
                row: i + 1,
                col: j + 1,
                n: self.n,
            });
        }
        let mut blocks = Vec::with_capacity((self.n - 1) * (self.n - 1));
        for r in (0..self.n).filter(|&r| r != i) {
            for c in (0..self.n).filter(|&c| c != j) {
                blocks.push(self.block(r, c).clone());
            }
        }
        BlockMatrix::new(self.ring.clone(), self.m, self.n - 1, blocks)
    }

    pub fn map_blocks(&self, f: impl Fn(usize, usize, &Matrix) -> Matrix) -> BlockMatrix {
        let blocks: Vec<Matrix> = (0..self.n * self.n)
            .map(|idx| f(idx / self.n, idx % self.n, &self.blocks[idx]))
            .collect();
        let ring = blocks[0].ring.clone();
        BlockMatrix::new(ring, self.m, self.n, blocks).expect("map_blocks changed block shape")
    }

    /// Block-level product in `M_n(M_m(R))`.
    pub fn try_mul(&self, other: &BlockMatrix) -> Result<BlockMatrix, MatrixError> {
        if self.m != other.m || self.n != other.n {
            return Err(MatrixError::Shape("block product of unequal shapes".into()));
        }
        let flat = self.flatten().try_mul(&other.flatten())?;
        BlockMatrix::view(&flat, self.m)
    }

    /// Parses the block text format: header `m n ring`, then the `mn × mn`
    /// flattened entries one row per line.
    pub fn parse(text: &str) -> Result<BlockMatrix, MatrixError> {
        let mut lines = Tokens::new(text);
        let (header_line, header) = lines.next_line()?;
        let [m, n, ring] = header_fields(header_line, &header)?;
        let m = parse_count(header_line, &m)?;
        let n = parse_count(header_line, &n)?;
        let ring = parse_ring(header_line, &ring)?;
        if m == 0 || n == 0 {
            return Err(MatrixError::Parse {
                line: header_line,
                col: 1,
                msg: "block size and block count must be positive".into(),
            });
        }
        let data = lines.read_grid(&ring, m * n, m * n)?;
        let flat = Matrix::new(ring, m * n, m * n, data)?;
        BlockMatrix::view(&flat, m)
    }
}

impl fmt::Display for BlockMatrix {
    /// The text format accepted by [`BlockMatrix::parse`].
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {} {}", self.m, self.n, self.ring)?;
        let flat = self.flatten();
        write_grid(f, flat.rows, flat.cols, |r, c| flat.get(r, c))
    }
}

// (1-based column, token)
type Token = (usize, String);

struct Tokens<'a> {
    lines: std::iter::Enumerate<std::str::Lines<'a>>,
}

impl<'a> Tokens<'a> {
    fn new(text: &'a str) -> Self {
        Tokens {
            lines: text.lines().enumerate(),
        }
    }

    /// Next non-blank line that is not a `#` comment, as (1-based line, tokens).
    fn next_line(&mut self) -> Result<(usize, Vec<Token>), MatrixError> {
        for (idx, line) in self.lines.by_ref() {
            let trimmed = line.trim_start();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let mut tokens = Vec::new();
            let mut start = None;
            for (pos, ch) in line
                .char_indices()
                .chain(std::iter::once((line.len(), ' ')))
            {
                match (ch.is_whitespace(), start) {
                    (false, None) => start = Some(pos),
                    (true, Some(s)) => {
                        tokens.push((line[..s].chars().count() + 1, line[s..pos].to_string()));
                        start = None;
                    }
                    _ => {}
                }
            }
            return Ok((idx + 1, tokens));
        }
        Err(MatrixError::Parse {
            line: 0,
            col: 0,
            msg: "unexpected end of input".into(),
        })
    }

    fn read_grid(
        &mut self,
        ring: &Ring,
        rows: usize,
        cols: usize,
    ) -> Result<Vec<RingValue>, MatrixError> {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            let (line, tokens) = self.next_line().map_err(|_| MatrixError::Parse {
                line: 0,
                col: 0,
                msg: format!("expected {rows} rows, found {r}"),
            })?;
            if tokens.len() != cols {
                return Err(MatrixError::Parse {
                    line,
                    col: tokens.get(cols).map_or(1, |t| t.0),
                    msg: format!("expected {cols} entries, found {}", tokens.len()),
                });
            }
            for (col, tok) in tokens {
                let v = ring.parse_value(&tok).map_err(|e| MatrixError::Parse {
                    line,
                    col,
                    msg: e.to_string(),
                })?;
                data.push(v);
            }
        }
        if let Ok((line, tokens)) = self.next_line() {
            return Err(MatrixError::Parse {
                line,
                col: tokens[0].0,
                msg: "trailing data after matrix".into(),
            });
        }
        Ok(data)
    }
}

fn header_fields(line: usize, tokens: &[Token]) -> Result<[Token; 3], MatrixError> {
    <[Token; 3]>::try_from(tokens.to_vec()).map_err(|_| MatrixError::Parse {
        line,
        col: 1,
        msg: format!("header needs 3 fields, found {}", tokens.len()),
    })
}

fn parse_count(line: usize, (col, tok): &Token) -> Result<usize, MatrixError> {
    tok.parse().map_err(|_| MatrixError::Parse {
        line,
        col: *col,
        msg: format!("expected a non-negative integer, found {tok:?}"),
    })
}

fn parse_ring(line: usize, (col, tok): &Token) -> Result<Ring, MatrixError> {
    tok.parse().map_err(|e: RingError| MatrixError::Parse {
        line,
        col: *col,
        msg: e.to_string(),
    })
}
