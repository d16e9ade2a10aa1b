//! Integer polynomials in noncommuting generators `g_{ij}` modulo a
//! partial-commutation relation (a free partially commutative algebra).
//!
//! Monomials are traces: words up to swapping adjacent letters that the
//! relation declares commuting. Each trace is stored by its lexicographically
//! least representative, so two polynomials are equal exactly when their term
//! maps are equal. This is the engine behind the symbolic checks of the
//! reordering identities (column swap, transpose, row swap, cofactor column).

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::conditions::{cond_f, cond_kappa, cond_t_col, Cell, Condition, Edge};
use crate::matrix::{BlockMatrix, Matrix};
use crate::perm::Permutation;

/// A generator is named by its position in the generic matrix.
pub type Generator = Cell;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TraceError {
    #[error("generator {gen} out of range for size {n}")]
    OutOfRange { gen: Cell, n: usize },
    #[error("size mismatch: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error("polynomials use different commutation relations")]
    RelationMismatch,
    #[error("size {n} exceeds the cap of {cap}")]
    TooLarge { n: usize, cap: usize },
    #[error("invalid parameters: {0}")]
    Range(String),
}

/// Symmetric, irreflexive relation on the generators of `V_n`: which pairs
/// may be swapped when adjacent.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CommRel {
    n: usize,
    adj: Vec<bool>,
}

impl CommRel {
    pub fn empty(n: usize) -> Self {
        CommRel {
            n,
            adj: vec![false; n.pow(4)],
        }
    }

    pub fn from_condition(g: &Condition) -> Self {
        let mut rel = CommRel::empty(g.size());
        for (u, v) in g.edges() {
            let (a, b) = (rel.index(u), rel.index(v));
            let nn = rel.n * rel.n;
            rel.adj[a * nn + b] = true;
            rel.adj[b * nn + a] = true;
        }
        rel
    }

    pub fn full(n: usize) -> Self {
        Self::from_condition(&Condition::complete(n))
    }

    pub fn size(&self) -> usize {
        self.n
    }

    fn index(&self, c: Cell) -> usize {
        c.row * self.n + c.col
    }

    pub fn commute(&self, a: Cell, b: Cell) -> bool {
        a != b && self.adj[self.index(a) * self.n * self.n + self.index(b)]
    }

    fn check(&self, letters: &[Cell]) -> Result<(), TraceError> {
        match letters.iter().find(|c| c.row >= self.n || c.col >= self.n) {
            Some(&gen) => Err(TraceError::OutOfRange { gen, n: self.n }),
            None => Ok(()),
        }
    }
}

/// A word in the generators.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct TraceWord(pub Vec<Generator>);

impl TraceWord {
    pub fn letters(&self) -> &[Generator] {
        &self.0
    }
}

impl fmt::Display for TraceWord {
    /// `(r,c)(r,c)...`, 1-based; the empty word prints as `1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for c in &self.0 {
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

fn normal_form_letters(letters: &[Cell], rel: &CommRel) -> Vec<Cell> {
    let mut rest = letters.to_vec();
    let mut out = Vec::with_capacity(rest.len());
    while !rest.is_empty() {
        // a letter can be moved to the front iff it commutes with everything
        // before it (an earlier equal letter blocks it)
        let mut best: Option<usize> = None;
        for p in 0..rest.len() {
            let x = rest[p];
            if best.is_some_and(|b| rest[b] <= x) {
                continue;
            }
            if rest[..p].iter().all(|&y| rel.commute(x, y)) {
                best = Some(p);
            }
        }
        out.push(rest.remove(best.expect("the first letter is always movable")));
    }
    out
}

/// Lexicographically least word equivalent to `w`, letters ordered by
/// `(row, col)`.
pub fn word_normal_form(w: &TraceWord, rel: &CommRel) -> Result<TraceWord, TraceError> {
    rel.check(&w.0)?;
    Ok(TraceWord(normal_form_letters(&w.0, rel)))
}

/// Equality of traces, decided by comparing normal forms.
pub fn trace_equal(u: &TraceWord, v: &TraceWord, rel: &CommRel) -> Result<bool, TraceError> {
    Ok(word_normal_form(u, rel)? == word_normal_form(v, rel)?)
}

/// Equality of traces by the projection criterion: equal letter counts, and
/// equal projections onto every non-commuting pair of letters.
pub fn trace_equal_by_projection(
    u: &TraceWord,
    v: &TraceWord,
    rel: &CommRel,
) -> Result<bool, TraceError> {
    rel.check(&u.0)?;
    rel.check(&v.0)?;
    let mut alphabet: Vec<Cell> = u.0.iter().chain(&v.0).copied().collect();
    alphabet.sort();
    alphabet.dedup();
    let project = |w: &[Cell], a: Cell, b: Cell| -> Vec<Cell> {
        w.iter().copied().filter(|&x| x == a || x == b).collect()
    };
    for (i, &a) in alphabet.iter().enumerate() {
        for &b in &alphabet[i..] {
            if (a == b || !rel.commute(a, b)) && project(&u.0, a, b) != project(&v.0, a, b) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Integer combination of traces under one relation. Keys are normal forms;
/// no zero coefficients are stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TracePoly {
    rel: Arc<CommRel>,
    terms: BTreeMap<Vec<Cell>, i64>,
}

impl TracePoly {
    pub fn zero(rel: &Arc<CommRel>) -> Self {
        TracePoly {
            rel: rel.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(rel: &Arc<CommRel>) -> Self {
        Self::monomial(rel, &TraceWord::default(), 1).expect("empty word")
    }

    pub fn generator(rel: &Arc<CommRel>, g: Generator) -> Result<Self, TraceError> {
        Self::monomial(rel, &TraceWord(vec![g]), 1)
    }

    pub fn monomial(rel: &Arc<CommRel>, w: &TraceWord, coeff: i64) -> Result<Self, TraceError> {
        let mut p = TracePoly::zero(rel);
        rel.check(&w.0)?;
        p.add_term(normal_form_letters(&w.0, rel), coeff);
        Ok(p)
    }

    pub fn relation(&self) -> &CommRel {
        &self.rel
    }

    fn add_term(&mut self, key: Vec<Cell>, coeff: i64) {
        if coeff == 0 {
            return;
        }
        let entry = self.terms.entry(key).or_insert(0);
        *entry += coeff;
        if *entry == 0 {
            // re-borrow to remove the cancelled key
            self.terms.retain(|_, c| *c != 0);
        }
    }

    /// Adds `coeff · w`, normalizing `w` first.
    pub fn add_word(&mut self, w: &[Cell], coeff: i64) -> Result<(), TraceError> {
        self.rel.check(w)?;
        let key = normal_form_letters(w, &self.rel);
        self.add_term(key, coeff);
        Ok(())
    }

    pub fn terms(&self) -> impl Iterator<Item = (TraceWord, i64)> + '_ {
        self.terms.iter().map(|(k, &c)| (TraceWord(k.clone()), c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn same_rel(&self, other: &TracePoly) -> Result<(), TraceError> {
        if Arc::ptr_eq(&self.rel, &other.rel) || *self.rel == *other.rel {
            Ok(())
        } else {
            Err(TraceError::RelationMismatch)
        }
    }

    pub fn try_add(&self, other: &TracePoly) -> Result<TracePoly, TraceError> {
        self.same_rel(other)?;
        let mut out = self.clone();
        for (k, &c) in &other.terms {
            out.add_term(k.clone(), c);
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &TracePoly) -> Result<TracePoly, TraceError> {
        self.try_add(&other.scale(-1))
    }

    pub fn try_mul(&self, other: &TracePoly) -> Result<TracePoly, TraceError> {
        self.same_rel(other)?;
        let mut out = TracePoly::zero(&self.rel);
        for (a, &ca) in &self.terms {
            for (b, &cb) in &other.terms {
                let word: Vec<Cell> = a.iter().chain(b).copied().collect();
                out.add_term(normal_form_letters(&word, &self.rel), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, k: i64) -> TracePoly {
        let mut out = TracePoly::zero(&self.rel);
        for (key, &c) in &self.terms {
            out.add_term(key.clone(), c * k);
        }
        out
    }

    /// Substitutes block `(i, j)` of `m` for `g_{ij}`. The result equals the
    /// evaluation of any expression this polynomial was built from, provided
    /// related generators are assigned commuting blocks.
    pub fn evaluate(&self, m: &BlockMatrix) -> Result<Matrix, TraceError> {
        if m.n() != self.rel.size() {
            return Err(TraceError::SizeMismatch(m.n(), self.rel.size()));
        }
        let ring = m.ring();
        let mut total = Matrix::zeros(ring, m.m(), m.m());
        for (key, &c) in &self.terms {
            let mut term = Matrix::scalar(ring, m.m(), &ring.from_i64(c));
            for g in key {
                term = &term * m.block(g.row, g.col);
            }
            total = &total + &term;
        }
        Ok(total)
    }
}

impl fmt::Display for TracePoly {
    /// Signed terms in normal-form key order, e.g. `+1 (1,1)(2,2) -1 (1,2)(2,1)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(k, c)| format!("{c:+} {}", TraceWord(k.clone())))
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Size cap for [`symbolic_row_det`] and the column-swap check.
pub const SYMBOLIC_CAP: usize = 6;
/// Size cap for the transpose and row-swap checks.
pub const SYMBOLIC_CAP_SMALL: usize = 5;

fn check_cap(n: usize, cap: usize) -> Result<(), TraceError> {
    if n > cap {
        Err(TraceError::TooLarge { n, cap })
    } else {
        Ok(())
    }
}

fn generic(n: usize) -> Vec<Vec<Cell>> {
    (0..n)
        .map(|i| (0..n).map(|j| Cell::new(i, j)).collect())
        .collect()
}

/// Row-determinant of a matrix whose entries are generators, products in
/// increasing row order.
pub fn symbolic_row_det_of(
    entries: &[Vec<Cell>],
    rel: &Arc<CommRel>,
) -> Result<TracePoly, TraceError> {
    let k = entries.len();
    let mut out = TracePoly::zero(rel);
    for p in Permutation::all(k) {
        let word: Vec<Cell> = (0..k).map(|r| entries[r][p.apply(r)]).collect();
        out.add_word(&word, p.sign())?;
    }
    Ok(out)
}

/// `Σ_π sgn(π) g_{1,π(1)} ··· g_{n,π(n)}` under `rel`.
pub fn symbolic_row_det(n: usize, rel: &Arc<CommRel>) -> Result<TracePoly, TraceError> {
    check_cap(n, SYMBOLIC_CAP)?;
    if rel.size() != n {
        return Err(TraceError::SizeMismatch(n, rel.size()));
    }
    symbolic_row_det_of(&generic(n), rel)
}

/// Result of a symbolic identity check, with the term counts of both sides.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityCheck {
    pub holds: bool,
    pub lhs_terms: usize,
    pub rhs_terms: usize,
}

impl IdentityCheck {
    fn compare(lhs: &TracePoly, rhs: &TracePoly) -> Self {
        IdentityCheck {
            holds: lhs == rhs,
            lhs_terms: lhs.len(),
            rhs_terms: rhs.len(),
        }
    }
}

/// Swapping block columns `k` and `k+1` (0-based `k`) negates the
/// row-determinant, with no commutation at all.
pub fn check_colswap_identity(n: usize, k: usize) -> Result<IdentityCheck, TraceError> {
    check_cap(n, SYMBOLIC_CAP)?;
    if k + 1 >= n {
        return Err(TraceError::Range(format!(
            "need k < n - 1 (0-based), got k={k}, n={n}"
        )));
    }
    let rel = Arc::new(CommRel::empty(n));
    let mut swapped = generic(n);
    for row in &mut swapped {
        row.swap(k, k + 1);
    }
    let lhs = symbolic_row_det_of(&swapped, &rel)?;
    let rhs = symbolic_row_det(n, &rel)?.scale(-1);
    Ok(IdentityCheck::compare(&lhs, &rhs))
}

/// `Σ_π sgn(π) g_{π(n),n} ··· g_{π(1),1} = Σ_π sgn(π) g_{1,π(1)} ··· g_{n,π(n)}`
/// under the relation `T_{col c,n}` (0-based `c`).
pub fn check_transpose_identity(n: usize, c: usize) -> Result<IdentityCheck, TraceError> {
    check_cap(n, SYMBOLIC_CAP_SMALL)?;
    let t = cond_t_col(c, n).map_err(|e| TraceError::Range(e.to_string()))?;
    let rel = Arc::new(CommRel::from_condition(&t));
    let mut lhs = TracePoly::zero(&rel);
    for p in Permutation::all(n) {
        let word: Vec<Cell> = (0..n)
            .rev()
            .map(|col| Cell::new(p.apply(col), col))
            .collect();
        lhs.add_word(&word, p.sign())?;
    }
    let rhs = symbolic_row_det(n, &rel)?;
    Ok(IdentityCheck::compare(&lhs, &rhs))
}

/// Whether swapping rows `i` and `j` keeps the two endpoints of `missing` in
/// the same relative row order within every monomial where both occur.
pub fn rowswap_preserves_order(i: usize, j: usize, missing: Option<Edge>) -> bool {
    let Some((u, v)) = missing else {
        return true;
    };
    if u.row == v.row || u.col == v.col {
        return true; // never in the same monomial
    }
    let swap = |r: usize| {
        if r == i {
            j
        } else if r == j {
            i
        } else {
            r
        }
    };
    (u.row < v.row) == (swap(u.row) < swap(v.row))
}

/// Swapping block rows `i < j` (0-based, both `>= 1`) negates the
/// row-determinant under the relation "all pairs outside row 1 commute except
/// `missing`". Holds exactly when [`rowswap_preserves_order`] does.
pub fn check_rowswap_identity(
    n: usize,
    i: usize,
    j: usize,
    missing: Option<Edge>,
) -> Result<IdentityCheck, TraceError> {
    check_cap(n, SYMBOLIC_CAP_SMALL)?;
    if !(1 <= i && i < j && j < n) {
        return Err(TraceError::Range(format!(
            "need 2 <= i < j <= n, got i={}, j={}, n={n}",
            i + 1,
            j + 1
        )));
    }
    let mut g = cond_kappa(n);
    if let Some((u, v)) = missing {
        if u.row == 0
            || v.row == 0
            || u == v
            || u.row >= n
            || v.row >= n
            || u.col >= n
            || v.col >= n
        {
            return Err(TraceError::Range(format!(
                "missing edge {u}-{v} must join distinct blocks outside row 1"
            )));
        }
        g.remove_edge(u, v);
    }
    let rel = Arc::new(CommRel::from_condition(&g));
    let mut swapped = generic(n);
    swapped.swap(i, j);
    let lhs = symbolic_row_det_of(&swapped, &rel)?;
    let rhs = symbolic_row_det(n, &rel)?.scale(-1);
    Ok(IdentityCheck::compare(&lhs, &rhs))
}

/// The first-column cofactor identity under the relation `F_n`: for every
/// row `i`, `Σ_j g_{ij} Cof^{1j}` equals the row-determinant when `i = 1`
/// and vanishes otherwise.
pub fn check_cofactor_column_identity(n: usize) -> Result<IdentityCheck, TraceError> {
    check_cap(n, SYMBOLIC_CAP)?;
    if n < 2 {
        return Err(TraceError::Range("need n >= 2".into()));
    }
    let rel = Arc::new(CommRel::from_condition(&cond_f(n)));
    let cofactors: Vec<TracePoly> = (0..n)
        .map(|j| {
            let minor: Vec<Vec<Cell>> = (1..n)
                .map(|r| {
                    (0..n)
                        .filter(|&c| c != j)
                        .map(|c| Cell::new(r, c))
                        .collect()
                })
                .collect();
            let d = symbolic_row_det_of(&minor, &rel)?;
            Ok(if j % 2 == 0 { d } else { d.scale(-1) })
        })
        .collect::<Result<_, TraceError>>()?;
    let det = symbolic_row_det(n, &rel)?;
    let zero = TracePoly::zero(&rel);
    let mut holds = true;
    let mut lhs_terms = 0;
    for i in 0..n {
        let mut row = TracePoly::zero(&rel);
        for (j, cof) in cofactors.iter().enumerate() {
            let g = TracePoly::generator(&rel, Cell::new(i, j))?;
            row = row.try_add(&g.try_mul(cof)?)?;
        }
        lhs_terms += row.len();
        holds &= row == if i == 0 { det.clone() } else { zero.clone() };
    }
    Ok(IdentityCheck {
        holds,
        lhs_terms,
        rhs_terms: det.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conditions::all_pairs;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(r: usize, col: usize) -> Cell {
        Cell::new(r, col)
    }

    fn random_rel(n: usize, rng: &mut ChaCha8Rng) -> CommRel {
        let edges: Vec<Edge> = all_pairs(n)
            .into_iter()
            .filter(|_| rng.gen_bool(0.5))
            .collect();
        CommRel::from_condition(&Condition::with_edges(n, edges).unwrap())
    }

    fn random_word(n: usize, len: usize, rng: &mut ChaCha8Rng) -> TraceWord {
        TraceWord(
            (0..len)
                .map(|_| c(rng.gen_range(0..n), rng.gen_range(0..n)))
                .collect(),
        )
    }

    /// Every word reachable by adjacent swaps, by breadth-first search.
    fn class_of(w: &TraceWord, rel: &CommRel) -> std::collections::BTreeSet<Vec<Cell>> {
        let mut seen = std::collections::BTreeSet::new();
        let mut queue = vec![w.0.clone()];
        while let Some(x) = queue.pop() {
            if !seen.insert(x.clone()) {
                continue;
            }
            for p in 0..x.len().saturating_sub(1) {
                if rel.commute(x[p], x[p + 1]) {
                    let mut y = x.clone();
                    y.swap(p, p + 1);
                    queue.push(y);
                }
            }
        }
        seen
    }

    #[test]
    fn normal_form_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let w = random_word(3, 6, &mut rng);
        assert_eq!(word_normal_form(&w, &CommRel::empty(3)).unwrap(), w);

        let mut sorted = w.0.clone();
        sorted.sort();
        assert_eq!(word_normal_form(&w, &CommRel::full(3)).unwrap().0, sorted);

        let rel = CommRel::from_condition(&Condition::with_edges(2, [(c(1, 0), c(1, 1))]).unwrap());
        let w = TraceWord(vec![c(1, 1), c(1, 0)]);
        assert_eq!(
            word_normal_form(&w, &rel).unwrap().0,
            vec![c(1, 0), c(1, 1)]
        );

        let bad = TraceWord(vec![c(2, 0)]);
        assert!(matches!(
            word_normal_form(&bad, &rel),
            Err(TraceError::OutOfRange { .. })
        ));
    }

    #[test]
    fn normal_form_is_least_in_class() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..300 {
            let n = rng.gen_range(1..=3);
            let rel = random_rel(n, &mut rng);
            let w = random_word(n, rng.gen_range(0..=6), &mut rng);
            let nf = word_normal_form(&w, &rel).unwrap();
            let class = class_of(&w, &rel);
            assert_eq!(&nf.0, class.iter().next().unwrap());
            assert_eq!(word_normal_form(&nf, &rel).unwrap(), nf);
        }
    }

    #[test]
    fn trace_equal_examples() {
        let n = 3;
        let u = TraceWord(vec![c(1, 0), c(2, 1)]);
        let v = TraceWord(vec![c(2, 1), c(1, 0)]);
        let with =
            CommRel::from_condition(&Condition::with_edges(n, [(c(1, 0), c(2, 1))]).unwrap());
        let without = CommRel::empty(n);
        assert!(trace_equal(&u, &u, &without).unwrap());
        assert!(trace_equal(&u, &v, &with).unwrap());
        assert!(!trace_equal(&u, &v, &without).unwrap());
    }

    #[test]
    fn equality_agrees_with_projection_criterion() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..1000 {
            let n = rng.gen_range(1..=4);
            let rel = random_rel(n, &mut rng);
            let len = rng.gen_range(0..=8);
            let u = random_word(n, len, &mut rng);
            // half the time compare against a shuffled-by-swaps copy
            let v = if rng.gen_bool(0.5) {
                let mut v = u.0.clone();
                for _ in 0..10 {
                    if v.len() > 1 {
                        let p = rng.gen_range(0..v.len() - 1);
                        v.swap(p, p + 1);
                    }
                }
                TraceWord(v)
            } else {
                random_word(n, len, &mut rng)
            };
            assert_eq!(
                trace_equal(&u, &v, &rel).unwrap(),
                trace_equal_by_projection(&u, &v, &rel).unwrap()
            );
        }
    }

    #[test]
    fn multiplication_examples() {
        let n = 2;
        let (g, h) = (c(1, 0), c(1, 1));
        let commuting = Arc::new(CommRel::from_condition(
            &Condition::with_edges(n, [(g, h)]).unwrap(),
        ));
        let free = Arc::new(CommRel::empty(n));

        for rel in [&commuting, &free] {
            let x = TracePoly::generator(rel, g).unwrap();
            assert_eq!(x.try_mul(&TracePoly::one(rel)).unwrap(), x);
        }

        let prod = |rel: &Arc<CommRel>| {
            let gp = TracePoly::generator(rel, g).unwrap();
            let hp = TracePoly::generator(rel, h).unwrap();
            gp.try_sub(&hp)
                .unwrap()
                .try_mul(&gp.try_add(&hp).unwrap())
                .unwrap()
        };
        let p = prod(&commuting);
        assert_eq!(p.len(), 2);
        assert_eq!(p.to_string(), "+1 (2,1)(2,1) -1 (2,2)(2,2)");
        let q = prod(&free);
        assert_eq!(q.len(), 4);
        assert_eq!(
            q.to_string(),
            "+1 (2,1)(2,1) +1 (2,1)(2,2) -1 (2,2)(2,1) -1 (2,2)(2,2)"
        );

        assert_eq!(
            TracePoly::one(&commuting).try_mul(&TracePoly::one(&free)),
            Err(TraceError::RelationMismatch)
        );
    }

    #[test]
    fn arithmetic_is_associative_and_distributive() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let n = 2;
            let rel = Arc::new(random_rel(n, &mut rng));
            let rand_poly = |rng: &mut ChaCha8Rng| {
                let mut p = TracePoly::zero(&rel);
                for _ in 0..3 {
                    let len = rng.gen_range(0..3);
                    p.add_word(&random_word(n, len, rng).0, rng.gen_range(-3..=3))
                        .unwrap();
                }
                p
            };
            let (x, y, z) = (
                rand_poly(&mut rng),
                rand_poly(&mut rng),
                rand_poly(&mut rng),
            );
            assert_eq!(
                x.try_mul(&y).unwrap().try_mul(&z).unwrap(),
                x.try_mul(&y.try_mul(&z).unwrap()).unwrap()
            );
            assert_eq!(
                x.try_mul(&y.try_add(&z).unwrap()).unwrap(),
                x.try_mul(&y)
                    .unwrap()
                    .try_add(&x.try_mul(&z).unwrap())
                    .unwrap()
            );
            assert!(x.try_sub(&x).unwrap().is_empty());
        }
    }

    #[test]
    fn symbolic_det_examples() {
        let r1 = Arc::new(CommRel::empty(1));
        assert_eq!(symbolic_row_det(1, &r1).unwrap().to_string(), "+1 (1,1)");

        let r2 = Arc::new(CommRel::empty(2));
        assert_eq!(
            symbolic_row_det(2, &r2).unwrap().to_string(),
            "+1 (1,1)(2,2) -1 (1,2)(2,1)"
        );
        let f2 = Arc::new(CommRel::from_condition(&cond_f(2)));
        let a: Vec<_> = symbolic_row_det(2, &f2).unwrap().terms().collect();
        let b: Vec<_> = symbolic_row_det(2, &r2).unwrap().terms().collect();
        assert_eq!(a, b);

        assert!(matches!(
            symbolic_row_det(7, &Arc::new(CommRel::empty(7))),
            Err(TraceError::TooLarge { .. })
        ));
    }

    #[test]
    fn full_relation_gives_commutative_expansion() {
        for n in 1..=5 {
            let rel = Arc::new(CommRel::full(n));
            let det = symbolic_row_det(n, &rel).unwrap();
            let fact: usize = (1..=n).product();
            assert_eq!(det.len(), fact);
            for (w, coeff) in det.terms() {
                assert!(coeff == 1 || coeff == -1);
                // sorted letters: row i, column π(i)
                let p = Permutation::new(w.0.iter().map(|g| g.col).collect()).unwrap();
                assert!(w.0.iter().enumerate().all(|(i, g)| g.row == i));
                assert_eq!(coeff, p.sign());
            }
        }
    }

    #[test]
    fn evaluation_matches_numeric_determinant() {
        use crate::conditions::commutativity_graph;
        use crate::ncdet::nc_row_det;
        use crate::ring::Ring;

        let ring = Ring::PrimeField(10007);
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        // blocks: polynomials in X for row >= 2 off the diagonal, random elsewhere
        let x = Matrix::random(&ring, 3, 3, &mut rng, 0);
        for n in 2..=4 {
            let m = BlockMatrix::from_fn(&ring, 3, n, |i, j| {
                if i >= 1 && i != j {
                    let k = ring.random_value(&mut rng, 0);
                    &x.scale(&k) + &Matrix::identity(&ring, 3)
                } else {
                    Matrix::random(&ring, 3, 3, &mut rng, 0)
                }
            });
            let rel = Arc::new(CommRel::from_condition(&commutativity_graph(&m)));
            let sym = symbolic_row_det(n, &rel).unwrap();
            assert_eq!(sym.evaluate(&m).unwrap(), nc_row_det(&m).unwrap());
        }
    }

    #[test]
    fn colswap_examples() {
        for (n, k) in [(2, 0), (3, 0), (4, 1)] {
            let r = check_colswap_identity(n, k).unwrap();
            assert!(r.holds);
            assert_eq!(r.lhs_terms, (1..=n).product::<usize>());
        }
        assert!(check_colswap_identity(3, 2).is_err());
    }

    #[test]
    fn transpose_examples() {
        assert!(check_transpose_identity(1, 0).unwrap().holds);
        assert!(check_transpose_identity(2, 0).unwrap().holds);
        assert!(check_transpose_identity(3, 1).unwrap().holds);
        assert!(check_transpose_identity(2, 2).is_err());
    }

    #[test]
    fn transpose_identity_needs_the_relation() {
        // with no commutation at all the two orderings differ
        let n = 2;
        let rel = Arc::new(CommRel::empty(n));
        let mut lhs = TracePoly::zero(&rel);
        for p in Permutation::all(n) {
            let word: Vec<Cell> = (0..n)
                .rev()
                .map(|col| Cell::new(p.apply(col), col))
                .collect();
            lhs.add_word(&word, p.sign()).unwrap();
        }
        assert_ne!(lhs, symbolic_row_det(n, &rel).unwrap());
    }

    #[test]
    fn rowswap_cases() {
        // same-row missing edge
        let same_row = Some((c(1, 0), c(1, 1)));
        assert!(check_rowswap_identity(3, 1, 2, same_row).unwrap().holds);
        // no missing edge
        assert!(check_rowswap_identity(3, 1, 2, None).unwrap().holds);
        // consistent ordering: rows 3 and 4 swapped, missing edge between rows 2 and 3
        let cross = Some((c(1, 0), c(2, 1)));
        assert!(rowswap_preserves_order(2, 3, cross));
        assert!(check_rowswap_identity(4, 2, 3, cross).unwrap().holds);
        // swapping the two rows of the missing edge reverses their order
        assert!(!rowswap_preserves_order(1, 2, cross));
        assert!(!check_rowswap_identity(3, 1, 2, cross).unwrap().holds);

        assert!(check_rowswap_identity(3, 0, 2, None).is_err());
        assert!(check_rowswap_identity(3, 1, 2, Some((c(0, 0), c(1, 1)))).is_err());
        assert!(check_rowswap_identity(2, 1, 1, None).is_err());
    }

    #[test]
    fn rowswap_matches_order_predicate() {
        for n in 3..=4 {
            for i in 1..n {
                for j in i + 1..n {
                    for (u, v) in cond_kappa(n).edges() {
                        let missing = Some((u, v));
                        assert_eq!(
                            check_rowswap_identity(n, i, j, missing).unwrap().holds,
                            rowswap_preserves_order(i, j, missing),
                            "n={n} swap {i},{j} missing {u}-{v}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn cofactor_column_identity_under_f() {
        for n in 2..=4 {
            assert!(check_cofactor_column_identity(n).unwrap().holds);
        }
    }
}
