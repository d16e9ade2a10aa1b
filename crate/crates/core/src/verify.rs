//! Generators, randomized campaigns and explicit counterexamples for the
//! identity `det(Det M) = det M`.
//!
//! Randomness flows from one `u64` seed into [`ChaCha8Rng`]; trial `t` of a
//! campaign uses stream `t` of that seed, so parallel and sequential runs
//! produce identical reports. A campaign with no failures means only that no
//! counterexample was found.

use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::conditions::{
    all_pairs, commutativity_graph, cond_f, cond_kappa, matrix_satisfies, vertices, Cell,
    Condition, ConditionError, Edge, Named,
};
use crate::matrix::{BlockMatrix, Matrix, MatrixError};
use crate::ncdet::{nc_row_det, NcDetError};
use crate::perm::Permutation;
use crate::ring::{Ring, RingValue};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    NcDet(#[from] NcDetError),
    #[error(transparent)]
    Condition(#[from] ConditionError),
    #[error("invalid parameters: {0}")]
    Range(String),
    #[error("{generator} generator produced a matrix violating the condition (trial {trial})")]
    Unsatisfied {
        generator: GeneratorKind,
        trial: usize,
    },
    #[error("internal check failed: {0}")]
    Internal(String),
}

/// Entry bound for integer and polynomial samples.
pub const SMALL_BOUND: i64 = 3;

/// Both sides of the identity for one matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityResult {
    /// `det(Det M)`.
    pub lhs: RingValue,
    /// `det M` of the flattened matrix.
    pub rhs: RingValue,
    pub equal: bool,
}

pub fn check_identity(m: &BlockMatrix) -> Result<IdentityResult, VerifyError> {
    let lhs = nc_row_det(m)?.det()?;
    let rhs = m.flatten().det()?;
    let equal = lhs == rhs;
    Ok(IdentityResult { lhs, rhs, equal })
}

/// Which construction produced a sample.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GeneratorKind {
    /// Every block a polynomial in one random matrix.
    Commuting,
    /// Rows below the first: column `j` perturbs only the `j`-th 2×2
    /// diagonal slot.
    FFamily,
    /// `A, B` polynomials in `X`, `C` a polynomial in `A`, `D` in `B`.
    G5,
    /// Block-diagonal 2×2 slots; in each slot the participating blocks of
    /// one connected component of the condition are polynomials in a shared
    /// random matrix, and blocks without any edge are fully random.
    Slots,
}

impl fmt::Display for GeneratorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GeneratorKind::Commuting => "commuting",
            GeneratorKind::FFamily => "f-family",
            GeneratorKind::G5 => "g5",
            GeneratorKind::Slots => "slots",
        })
    }
}

/// Picks the bespoke generator for `g` when one applies at block size `m`,
/// else [`GeneratorKind::Slots`].
pub fn choose_generator(g: &Condition, m: usize) -> GeneratorKind {
    let n = g.size();
    if *g == Condition::complete(n) {
        GeneratorKind::Commuting
    } else if *g == cond_f(n) && m >= 2 * n {
        GeneratorKind::FFamily
    } else if n == 2 && *g == Named::G5.condition() {
        GeneratorKind::G5
    } else {
        GeneratorKind::Slots
    }
}

/// A generated sample and the construction that produced it.
#[derive(Debug, Clone)]
pub struct Generated {
    pub matrix: BlockMatrix,
    pub generator: GeneratorKind,
}

fn trial_rng(seed: u64, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64);
    rng
}

fn bound_for(ring: &Ring) -> i64 {
    match ring {
        Ring::PrimeField(_) => 0,
        _ => SMALL_BOUND,
    }
}

fn nonzero_value<R: Rng + ?Sized>(ring: &Ring, rng: &mut R) -> RingValue {
    loop {
        let v = ring.random_value(rng, bound_for(ring));
        if !v.is_zero() {
            return v;
        }
    }
}

/// `c0 I + c1 X + c2 X²` with random coefficients, `c1 != 0`.
fn random_poly_in<R: Rng + ?Sized>(x: &Matrix, rng: &mut R) -> Matrix {
    let ring = x.ring().clone();
    let k = x.rows();
    let c0 = ring.random_value(rng, bound_for(&ring));
    let c1 = nonzero_value(&ring, rng);
    let c2 = ring.random_value(rng, bound_for(&ring));
    let x2 = x * x;
    &(&Matrix::scalar(&ring, k, &c0) + &x.scale(&c1)) + &x2.scale(&c2)
}

fn gen_commuting<R: Rng + ?Sized>(n: usize, m: usize, ring: &Ring, rng: &mut R) -> BlockMatrix {
    let x = Matrix::random(ring, m, m, rng, bound_for(ring));
    BlockMatrix::from_fn(ring, m, n, |_, _| random_poly_in(&x, rng))
}

fn gen_g5<R: Rng + ?Sized>(m: usize, ring: &Ring, rng: &mut R) -> BlockMatrix {
    let x = Matrix::random(ring, m, m, rng, bound_for(ring));
    let a = random_poly_in(&x, rng);
    let b = random_poly_in(&x, rng);
    let c = random_poly_in(&a, rng);
    let d = random_poly_in(&b, rng);
    BlockMatrix::from_rows(vec![vec![a, b], vec![c, d]]).expect("square blocks")
}

fn components(g: &Condition, members: &[Cell]) -> Vec<Vec<Cell>> {
    let mut parent: Vec<usize> = (0..members.len()).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        parent[x] = r;
        r
    }
    for a in 0..members.len() {
        for b in a + 1..members.len() {
            if g.has_edge(members[a], members[b]) {
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                parent[ra] = rb;
            }
        }
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<Cell>> = Default::default();
    for (i, &c) in members.iter().enumerate() {
        groups.entry(find(&mut parent, i)).or_default().push(c);
    }
    groups.into_values().collect()
}

fn connected(g: &Condition, members: &[Cell], u: Cell, v: Cell) -> bool {
    components(g, members)
        .iter()
        .any(|comp| comp.contains(&u) && comp.contains(&v))
}

/// Non-edges of `g` between blocks that have at least one edge, those
/// below the first row listed first.
fn slot_targets(g: &Condition) -> Vec<Edge> {
    let n = g.size();
    let has_edge: Vec<Cell> = vertices(n)
        .filter(|&v| vertices(n).any(|w| g.has_edge(v, w)))
        .collect();
    let (mut lower, upper): (Vec<Edge>, Vec<Edge>) = g
        .non_edges()
        .into_iter()
        .filter(|(u, v)| has_edge.contains(u) && has_edge.contains(v))
        .partition(|(u, v)| u.row >= 1 && v.row >= 1);
    lower.extend(upper);
    lower
}

/// Assembles block-diagonal samples. `participants(slot, rng)` names the
/// blocks that receive a non-scalar piece in that slot; each connected
/// component (within the slot) shares one random 2×2 matrix.
fn gen_slots<R: Rng + ?Sized>(
    g: &Condition,
    m: usize,
    ring: &Ring,
    rng: &mut R,
    mut participants: impl FnMut(usize, &mut R) -> Vec<Cell>,
) -> BlockMatrix {
    let n = g.size();
    let bound = bound_for(ring);
    let slots = m / 2;
    let isolated = |v: Cell| !vertices(n).any(|w| g.has_edge(v, w));
    let idx = |c: Cell| c.row * n + c.col;

    // pieces[v][s]: the 2×2 piece of block v in slot s
    let mut pieces: Vec<Vec<Matrix>> = vec![Vec::with_capacity(slots); n * n];
    for s in 0..slots {
        let members: Vec<Cell> = participants(s, rng)
            .into_iter()
            .filter(|&v| !isolated(v))
            .collect();
        for comp in components(g, &members) {
            let y = Matrix::random(ring, 2, 2, rng, bound);
            for v in comp {
                pieces[idx(v)].push(random_poly_in(&y, rng));
            }
        }
        for v in vertices(n) {
            if pieces[idx(v)].len() == s {
                let c = ring.random_value(rng, bound);
                pieces[idx(v)].push(Matrix::scalar(ring, 2, &c));
            }
        }
    }
    let tails: Vec<RingValue> = (0..n * n).map(|_| ring.random_value(rng, bound)).collect();

    let mut blocks = Vec::with_capacity(n * n);
    for v in vertices(n) {
        if isolated(v) {
            blocks.push(Matrix::random(ring, m, m, rng, bound));
            continue;
        }
        let p = &pieces[idx(v)];
        blocks.push(Matrix::from_fn(ring, m, m, |r, c| {
            if r / 2 == c / 2 && r / 2 < slots {
                p[r / 2].get(r % 2, c % 2).clone()
            } else if r == c {
                tails[idx(v)].clone()
            } else {
                ring.zero()
            }
        }));
    }
    BlockMatrix::new(ring.clone(), m, n, blocks).expect("block shapes")
}

fn gen_f_family<R: Rng + ?Sized>(g: &Condition, m: usize, ring: &Ring, rng: &mut R) -> BlockMatrix {
    let n = g.size();
    gen_slots(g, m, ring, rng, |s, _| {
        if s < n {
            (1..n).map(|i| Cell::new(i, s)).collect()
        } else {
            Vec::new()
        }
    })
}

fn gen_generic<R: Rng + ?Sized>(g: &Condition, m: usize, ring: &Ring, rng: &mut R) -> BlockMatrix {
    let n = g.size();
    let targets = slot_targets(g);
    let offset = if targets.is_empty() {
        0
    } else {
        rng.gen_range(0..targets.len())
    };
    let others: Vec<Cell> = vertices(n).collect();
    gen_slots(g, m, ring, rng, |s, rng| {
        let mut members: Vec<Cell> = others
            .iter()
            .copied()
            .filter(|_| rng.gen_bool(0.75))
            .collect();
        if targets.is_empty() {
            return members;
        }
        let (u, v) = targets[(offset + s) % targets.len()];
        members.retain(|&w| w != u && w != v);
        members.shuffle(rng);
        let mut all = vec![u, v];
        all.extend(members);
        // drop extra blocks until the target pair lies in different components
        while connected(g, &all, u, v) {
            all.pop();
        }
        all
    })
}

fn generate<R: Rng + ?Sized>(
    kind: GeneratorKind,
    g: &Condition,
    m: usize,
    ring: &Ring,
    rng: &mut R,
) -> BlockMatrix {
    match kind {
        GeneratorKind::Commuting => gen_commuting(g.size(), m, ring, rng),
        GeneratorKind::FFamily => gen_f_family(g, m, ring, rng),
        GeneratorKind::G5 => gen_g5(m, ring, rng),
        GeneratorKind::Slots => gen_generic(g, m, ring, rng),
    }
}

/// A random block matrix satisfying `g`, deterministic in `seed`.
pub fn gen_satisfying(
    g: &Condition,
    m: usize,
    ring: &Ring,
    seed: u64,
) -> Result<Generated, VerifyError> {
    gen_satisfying_trial(g, m, ring, seed, 0)
}

/// The sample used by trial `trial` of a campaign with this seed.
pub fn gen_satisfying_trial(
    g: &Condition,
    m: usize,
    ring: &Ring,
    seed: u64,
    trial: usize,
) -> Result<Generated, VerifyError> {
    if m < 2 {
        return Err(VerifyError::Range(format!(
            "block size must be at least 2, got {m}"
        )));
    }
    if g.size() == 0 {
        return Err(VerifyError::Range("condition of size 0".into()));
    }
    let generator = choose_generator(g, m);
    let matrix = generate(generator, g, m, ring, &mut trial_rng(seed, trial));
    if !matrix_satisfies(&matrix, g)? {
        return Err(VerifyError::Unsatisfied { generator, trial });
    }
    Ok(Generated { matrix, generator })
}

/// A failing trial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrialFailure {
    pub trial: usize,
    pub lhs: RingValue,
    pub rhs: RingValue,
}

/// The first failing sample of a campaign, kept in full.
#[derive(Debug, Clone)]
pub struct FailureSample {
    pub trial: usize,
    pub matrix: BlockMatrix,
    pub lhs: RingValue,
    pub rhs: RingValue,
}

#[derive(Debug, Clone)]
pub struct VerificationReport {
    pub label: String,
    pub condition: Condition,
    pub generator: Option<GeneratorKind>,
    pub trials: usize,
    pub failures: usize,
    pub failing_trials: Vec<TrialFailure>,
    pub first_failure: Option<FailureSample>,
    /// Samples in which some pair of blocks not joined in the condition
    /// fails to commute.
    pub nonvacuous: usize,
    pub seed: u64,
}

impl VerificationReport {
    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn summary_line(&self) -> String {
        format!(
            "condition={} trials={} failures={} seed={}",
            self.label, self.trials, self.failures, self.seed
        )
    }
}

impl fmt::Display for VerificationReport {
    /// One line per failing trial, then the generator, then the summary.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for t in &self.failing_trials {
            writeln!(
                f,
                "failure trial={} lhs={} rhs={}",
                t.trial,
                t.lhs.pretty(),
                t.rhs.pretty()
            )?;
        }
        if let Some(g) = self.generator {
            writeln!(f, "generator={g} nonvacuous={}", self.nonvacuous)?;
        }
        write!(f, "{}", self.summary_line())
    }
}

fn default_label(g: &Condition) -> String {
    match g.letters() {
        Some(l) if g.size() == 2 => l,
        _ => format!("n{}-e{}", g.size(), g.edge_count()),
    }
}

struct TrialOutcome {
    matrix: BlockMatrix,
    result: IdentityResult,
    nonvacuous: bool,
}

fn assemble(
    label: String,
    condition: Condition,
    generator: Option<GeneratorKind>,
    seed: u64,
    outcomes: Vec<TrialOutcome>,
) -> VerificationReport {
    let trials = outcomes.len();
    let mut failing_trials = Vec::new();
    let mut first_failure = None;
    let mut nonvacuous = 0;
    for (trial, o) in outcomes.into_iter().enumerate() {
        nonvacuous += o.nonvacuous as usize;
        if o.result.equal {
            continue;
        }
        failing_trials.push(TrialFailure {
            trial,
            lhs: o.result.lhs.clone(),
            rhs: o.result.rhs.clone(),
        });
        if first_failure.is_none() {
            first_failure = Some(FailureSample {
                trial,
                matrix: o.matrix,
                lhs: o.result.lhs,
                rhs: o.result.rhs,
            });
        }
    }
    VerificationReport {
        label,
        condition,
        generator,
        trials,
        failures: failing_trials.len(),
        failing_trials,
        first_failure,
        nonvacuous,
        seed,
    }
}

fn is_nonvacuous(m: &BlockMatrix, g: &Condition) -> bool {
    let graph = commutativity_graph(m);
    g.non_edges().iter().any(|&(u, v)| !graph.has_edge(u, v))
}

/// Runs [`check_identity`] on `trials` samples of [`gen_satisfying`],
/// asserting that every sample satisfies `g`.
pub fn run_campaign(
    g: &Condition,
    m: usize,
    ring: &Ring,
    trials: usize,
    seed: u64,
) -> Result<VerificationReport, VerifyError> {
    let outcomes = (0..trials)
        .into_par_iter()
        .map(|t| {
            let sample = gen_satisfying_trial(g, m, ring, seed, t)?;
            let result = check_identity(&sample.matrix)?;
            Ok(TrialOutcome {
                nonvacuous: is_nonvacuous(&sample.matrix, g),
                matrix: sample.matrix,
                result,
            })
        })
        .collect::<Result<Vec<_>, VerifyError>>()?;
    if m < 2 || g.size() == 0 {
        // zero trials skip the generator's own guard
        gen_satisfying_trial(g, m, ring, seed, 0)?;
    }
    Ok(assemble(
        default_label(g),
        g.clone(),
        Some(choose_generator(g, m)),
        seed,
        outcomes,
    ))
}

/// Sizes of two-block-row matrices used for the size-2 counterexamples.
fn int_block(k: usize, entries: &[i64]) -> Matrix {
    Matrix::from_i64(&Ring::Integers, k, k, entries)
}

/// `M1 = [[A, B], [B, A]]`.
pub fn matrix_m1() -> BlockMatrix {
    let a = int_block(2, &[1, 2, 3, 4]);
    let b = int_block(2, &[5, 6, 7, 8]);
    BlockMatrix::from_rows(vec![vec![a.clone(), b.clone()], vec![b, a]]).expect("2x2 blocks")
}

/// `M2 = [[A, B], [A, B]]`.
pub fn matrix_m2() -> BlockMatrix {
    let a = int_block(2, &[1, 2, 3, 4]);
    let b = int_block(2, &[5, 6, 7, 8]);
    BlockMatrix::from_rows(vec![vec![a.clone(), b.clone()], vec![a, b]]).expect("2x2 blocks")
}

/// `M3 = [[C, D], [E, F]]` with 3×3 blocks.
pub fn matrix_m3() -> BlockMatrix {
    let c = int_block(3, &[1, 0, 0, 0, 1, 0, 0, 0, 2]);
    let d = int_block(3, &[1, 2, 0, 3, 4, 0, 0, 0, 5]);
    let e = int_block(3, &[6, 7, 0, 8, 9, 0, 0, 0, 10]);
    let f = int_block(3, &[1, 1, 0, 0, 1, 0, 0, 0, 1]);
    BlockMatrix::from_rows(vec![vec![c, d], vec![e, f]]).expect("3x3 blocks")
}

/// `M3` with its block columns exchanged.
pub fn matrix_m3_swapped() -> BlockMatrix {
    matrix_m3().permute_block_cols(&Permutation::transposition(2, 0, 1))
}

/// The fixed falsifier for each maximal non-sufficient size-2 graph, with
/// its name.
pub fn counterexample_h(which: Named) -> Result<(&'static str, BlockMatrix), VerifyError> {
    Ok(match which {
        Named::H1 => ("M1", matrix_m1()),
        Named::H2 => ("M3", matrix_m3()),
        Named::H3 => ("M3col", matrix_m3_swapped()),
        Named::H4 => ("M2", matrix_m2()),
        other => {
            return Err(VerifyError::Range(format!(
                "{other} is a sufficient condition and has no counterexample"
            )))
        }
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Size2Witness {
    /// A contained minimal sufficient condition.
    Contains(Named),
    /// A fixed matrix satisfying the graph and violating the identity.
    Falsifier {
        id: &'static str,
        target: Named,
        lhs: RingValue,
        rhs: RingValue,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Size2Entry {
    pub condition: Condition,
    pub is_scc: bool,
    pub witness: Size2Witness,
}

impl fmt::Display for Size2Entry {
    /// `{CD} SCC witness=G1` or `{AC,BD} NOT-SCC falsifier=M2 lhs=128 rhs=0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let letters = self.condition.letters().expect("size 2");
        match &self.witness {
            Size2Witness::Contains(g) => write!(f, "{letters} SCC witness={g}"),
            Size2Witness::Falsifier { id, lhs, rhs, .. } => {
                write!(f, "{letters} NOT-SCC falsifier={id} lhs={lhs} rhs={rhs}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Size2Classification {
    pub entries: Vec<Size2Entry>,
}

impl Size2Classification {
    pub fn scc_count(&self) -> usize {
        self.entries.iter().filter(|e| e.is_scc).count()
    }
}

impl fmt::Display for Size2Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.entries {
            writeln!(f, "{e}")?;
        }
        Ok(())
    }
}

/// Labels all 64 graphs on the four positions of a 2×2 block matrix.
/// Sufficiency is read off from containment of a minimal sufficient
/// condition; every other graph gets a fixed falsifier that is checked to
/// satisfy it and to violate the identity.
pub fn classify_size2() -> Result<Size2Classification, VerifyError> {
    let pairs = all_pairs(2);
    let mut falsifiers = Vec::new();
    for h in Named::MAXIMAL_NON_SCC {
        let (id, m) = counterexample_h(h)?;
        let r = check_identity(&m)?;
        falsifiers.push((h, id, m, r));
    }
    let mut entries = Vec::with_capacity(1 << pairs.len());
    for mask in 0u32..1 << pairs.len() {
        let edges = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &e)| e);
        let g = Condition::with_edges(2, edges)?;
        let contained = Named::MINIMAL_SCC
            .into_iter()
            .find(|gi| gi.condition().is_subgraph_of(&g).expect("same size"));
        let witness = match contained {
            Some(gi) => Size2Witness::Contains(gi),
            None => {
                let (h, id, m, r) = falsifiers
                    .iter()
                    .find(|(h, ..)| g.is_subgraph_of(&h.condition()).expect("same size"))
                    .ok_or_else(|| {
                        VerifyError::Internal(format!(
                            "{} contains no minimal sufficient condition and fits no maximal insufficient one",
                            g.letters().unwrap_or_default()
                        ))
                    })?;
                if !matrix_satisfies(m, &g)? || r.equal {
                    return Err(VerifyError::Internal(format!(
                        "falsifier {id} does not refute {h}"
                    )));
                }
                Size2Witness::Falsifier {
                    id,
                    target: *h,
                    lhs: r.lhs.clone(),
                    rhs: r.rhs.clone(),
                }
            }
        };
        entries.push(Size2Entry {
            is_scc: contained.is_some(),
            condition: g,
            witness,
        });
    }
    Ok(Size2Classification { entries })
}

/// The three classical commuting-pair hypotheses for `[[A, B], [C, D]]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Silvester {
    /// `AC = CA` gives `det M = det(AD - CB)`.
    A,
    /// `BD = DB` gives `det M = det(DA - BC)`.
    B,
    /// `AB = BA` gives `det M = det(DA - CB)`.
    C,
}

impl Silvester {
    /// The commuting pair, as positions.
    pub fn pair(self) -> Edge {
        let l = |c| Cell::from_letter(c).expect("letter");
        match self {
            Silvester::A => (l('A'), l('C')),
            Silvester::B => (l('B'), l('D')),
            Silvester::C => (l('A'), l('B')),
        }
    }

    fn formula(self, a: &Matrix, b: &Matrix, c: &Matrix, d: &Matrix) -> Matrix {
        match self {
            Silvester::A => &(a * d) - &(c * b),
            Silvester::B => &(d * a) - &(b * c),
            Silvester::C => &(d * a) - &(c * b),
        }
    }
}

impl fmt::Display for Silvester {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Silvester::A => "a",
            Silvester::B => "b",
            Silvester::C => "c",
        })
    }
}

impl std::str::FromStr for Silvester {
    type Err = VerifyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "a" => Ok(Silvester::A),
            "b" => Ok(Silvester::B),
            "c" => Ok(Silvester::C),
            _ => Err(VerifyError::Range(format!(
                "unknown variant {s:?}, expected a, b or c"
            ))),
        }
    }
}

fn silvester_run(
    variant: Silvester,
    m: usize,
    ring: &Ring,
    trials: usize,
    seed: u64,
    hypothesis: bool,
) -> Result<VerificationReport, VerifyError> {
    if m < 2 {
        return Err(VerifyError::Range(format!(
            "block size must be at least 2, got {m}"
        )));
    }
    let (p, q) = variant.pair();
    let condition = Condition::with_edges(2, [(p, q)])?;
    let bound = bound_for(ring);
    let outcomes = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = trial_rng(seed, t);
            let x = Matrix::random(ring, m, m, &mut rng, bound);
            let matrix = BlockMatrix::from_fn(ring, m, 2, |i, j| {
                let here = Cell::new(i, j);
                if hypothesis && (here == p || here == q) {
                    random_poly_in(&x, &mut rng)
                } else {
                    Matrix::random(ring, m, m, &mut rng, bound)
                }
            });
            if hypothesis && !matrix_satisfies(&matrix, &condition)? {
                return Err(VerifyError::Internal(format!(
                    "variant {variant} sample violates its hypothesis"
                )));
            }
            let blk = |c: char| {
                let cell = Cell::from_letter(c).expect("letter");
                matrix.block(cell.row, cell.col)
            };
            let lhs = matrix.flatten().det()?;
            let rhs = variant
                .formula(blk('A'), blk('B'), blk('C'), blk('D'))
                .det()?;
            let equal = lhs == rhs;
            Ok(TrialOutcome {
                nonvacuous: is_nonvacuous(&matrix, &condition),
                matrix,
                result: IdentityResult { lhs, rhs, equal },
            })
        })
        .collect::<Result<Vec<_>, VerifyError>>()?;
    let label = format!(
        "silvester-{variant}{}",
        if hypothesis { "" } else { "-control" }
    );
    Ok(assemble(label, condition, None, seed, outcomes))
}

/// Checks `det M` against the variant's formula on samples whose
/// constrained pair are polynomials in one random matrix.
pub fn silvester_check(
    variant: Silvester,
    m: usize,
    ring: &Ring,
    trials: usize,
    seed: u64,
) -> Result<VerificationReport, VerifyError> {
    silvester_run(variant, m, ring, trials, seed, true)
}

/// The same check with every block random, so the hypothesis fails.
pub fn silvester_control(
    variant: Silvester,
    m: usize,
    ring: &Ring,
    trials: usize,
    seed: u64,
) -> Result<VerificationReport, VerifyError> {
    silvester_run(variant, m, ring, trials, seed, false)
}

/// Where the one non-commuting pair of the optimality construction sits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OptimalityCase {
    /// Positions `(2,1)` and `(2,2)`.
    SameRow,
    /// Positions `(2,1)` and `(3,2)`.
    DiffRow,
}

impl OptimalityCase {
    /// The canonical missing edge, 0-based.
    pub fn missing_edge(self) -> Edge {
        match self {
            OptimalityCase::SameRow => (Cell::new(1, 0), Cell::new(1, 1)),
            OptimalityCase::DiffRow => (Cell::new(1, 0), Cell::new(2, 1)),
        }
    }

    pub fn min_size(self) -> usize {
        match self {
            OptimalityCase::SameRow => 2,
            OptimalityCase::DiffRow => 3,
        }
    }
}

impl fmt::Display for OptimalityCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OptimalityCase::SameRow => "same_row",
            OptimalityCase::DiffRow => "diff_row",
        })
    }
}

impl std::str::FromStr for OptimalityCase {
    type Err = VerifyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "same_row" | "same-row" => Ok(OptimalityCase::SameRow),
            "diff_row" | "diff-row" => Ok(OptimalityCase::DiffRow),
            _ => Err(VerifyError::Range(format!(
                "unknown case {s:?}, expected same_row or diff_row"
            ))),
        }
    }
}

/// Name of the parameter of the optimality construction.
pub const OPTIMALITY_VARIABLE: &str = "a";

#[derive(Debug, Clone)]
pub struct OptimalityCounterexample {
    pub case: OptimalityCase,
    pub matrix: BlockMatrix,
    pub nc_det: Matrix,
    /// `det M`, free of `a`.
    pub det_flat: RingValue,
    /// `det(Det M)`, of positive degree in `a`.
    pub det_of_ncdet: RingValue,
}

impl OptimalityCounterexample {
    /// `det M` is constant in `a` while `det(Det M)` is not.
    pub fn dichotomy_holds(&self) -> bool {
        degree_split(&self.det_of_ncdet, &self.det_flat)
    }
}

fn degree_split(varying: &RingValue, constant: &RingValue) -> bool {
    let deg = |v: &RingValue| v.degree().expect("polynomial ring");
    deg(varying).is_some_and(|d| d >= 1) && deg(constant).unwrap_or(0) == 0
}

fn optimality_matrix(case: OptimalityCase, n: usize) -> Result<BlockMatrix, VerifyError> {
    if n < case.min_size() {
        return Err(VerifyError::Range(format!(
            "{case} needs n >= {}, got {n}",
            case.min_size()
        )));
    }
    let ring = Ring::poly(OPTIMALITY_VARIABLE);
    let a = ring.variable().expect("polynomial ring");
    let z = ring.zero();
    let o = ring.one();
    let blk = |e: [&RingValue; 4]| {
        Matrix::new(ring.clone(), 2, 2, e.into_iter().cloned().collect()).expect("2x2")
    };
    let k = blk([&o, &z, &z, &z]);
    let l = blk([&z, &z, &o, &z]);
    let am = blk([&a, &z, &z, &z]);
    let bm = blk([&z, &o, &z, &z]);
    let id = Matrix::identity(&ring, 2);
    let zero = Matrix::zeros(&ring, 2, 2);
    Ok(BlockMatrix::from_fn(&ring, 2, n, |i, j| {
        match (case, i, j) {
            (_, 0, 0) => k.clone(),
            (_, 0, 1) => l.clone(),
            (_, 1, 0) => am.clone(),
            (OptimalityCase::SameRow, 1, 1) => bm.clone(),
            (OptimalityCase::DiffRow, 1, 2) | (OptimalityCase::DiffRow, 2, 2) => id.clone(),
            (OptimalityCase::DiffRow, 2, 1) => bm.clone(),
            _ if i == j && i >= 2 => id.clone(),
            _ => zero.clone(),
        }
    }))
}

/// The block matrix over `Z[a]` with `m = 2` whose only non-commuting pair
/// below the first row is the case's missing edge.
pub fn optimality_counterexample(
    case: OptimalityCase,
    n: usize,
) -> Result<OptimalityCounterexample, VerifyError> {
    let matrix = optimality_matrix(case, n)?;
    let nc_det = nc_row_det(&matrix)?;
    let det_of_ncdet = nc_det.det()?;
    let det_flat = matrix.flatten().det()?;
    Ok(OptimalityCounterexample {
        case,
        matrix,
        nc_det,
        det_flat,
        det_of_ncdet,
    })
}

/// A permutation of `0..n` sending `k` to `prefix[k]`, the remaining points
/// in increasing order.
fn perm_with_prefix(n: usize, prefix: &[usize]) -> Permutation {
    let mut images = prefix.to_vec();
    images.extend((0..n).filter(|x| !prefix.contains(x)));
    Permutation::new(images).expect("distinct prefix")
}

/// The falsifier of one edge removal from `κ_n`.
#[derive(Debug, Clone)]
pub struct EdgeFalsification {
    pub edge: Edge,
    pub case: OptimalityCase,
    pub satisfies: bool,
    pub lhs: RingValue,
    pub rhs: RingValue,
}

impl EdgeFalsification {
    pub fn falsified(&self) -> bool {
        self.satisfies && degree_split(&self.lhs, &self.rhs)
    }
}

/// Moves the canonical counterexample so that its non-commuting pair lands
/// on `edge`, an edge of `F_n`.
pub fn falsify_edge(n: usize, edge: Edge) -> Result<EdgeFalsification, VerifyError> {
    let (mut u, mut v) = edge;
    if u.row == 0
        || v.row == 0
        || u.col == v.col
        || u.row >= n
        || v.row >= n
        || u.col >= n
        || v.col >= n
    {
        return Err(VerifyError::Range(format!(
            "{u}-{v} is not an edge of F_{n}"
        )));
    }
    if u.row > v.row {
        std::mem::swap(&mut u, &mut v);
    }
    let (case, rows) = if u.row == v.row {
        (OptimalityCase::SameRow, vec![0, u.row])
    } else {
        (OptimalityCase::DiffRow, vec![0, u.row, v.row])
    };
    let canonical = optimality_matrix(case, n)?;
    let matrix = canonical
        .permute_block_rows(&perm_with_prefix(n, &rows))
        .permute_block_cols(&perm_with_prefix(n, &[u.col, v.col]));
    let mut g = cond_kappa(n);
    g.remove_edge(u, v);
    let satisfies = matrix_satisfies(&matrix, &g)?;
    let r = check_identity(&matrix)?;
    Ok(EdgeFalsification {
        edge: (u, v),
        case,
        satisfies,
        lhs: r.lhs,
        rhs: r.rhs,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScanOptions {
    pub trials: usize,
    /// Random graphs between `F_n` and `κ_n`, besides the two ends.
    pub samples: usize,
    pub seed: u64,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions {
            trials: 100,
            samples: 2,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone)]
pub struct OptimalityScan {
    pub n: usize,
    pub edges: Vec<EdgeFalsification>,
    pub campaigns: Vec<VerificationReport>,
}

impl OptimalityScan {
    pub fn all_ok(&self) -> bool {
        self.edges.iter().all(EdgeFalsification::falsified)
            && self.campaigns.iter().all(|c| c.failures == 0)
    }
}

/// Size cap for [`optimality_scan`].
pub const SCAN_CAP: usize = 4;

/// Falsifies `κ_n` minus each edge of `F_n` with a moved copy of the
/// canonical counterexample, then runs campaigns (block size `2n`, prime
/// field 10007) on graphs between `F_n` and `κ_n`.
pub fn optimality_scan(n: usize, opts: &ScanOptions) -> Result<OptimalityScan, VerifyError> {
    if !(2..=SCAN_CAP).contains(&n) {
        return Err(VerifyError::Range(format!(
            "need 2 <= n <= {SCAN_CAP}, got {n}"
        )));
    }
    let f = cond_f(n);
    let edges = f
        .edges()
        .map(|e| falsify_edge(n, e))
        .collect::<Result<Vec<_>, _>>()?;

    let kappa = cond_kappa(n);
    let extra: Vec<Edge> = kappa.edges().filter(|&(u, v)| !f.has_edge(u, v)).collect();
    let mut graphs = vec![("kappa".to_string(), kappa.clone())];
    if f != kappa {
        graphs.push(("f".to_string(), f.clone()));
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        for s in 0..opts.samples {
            let mut g = f.clone();
            for &(u, v) in &extra {
                if rng.gen_bool(0.5) {
                    g.add_edge(u, v)?;
                }
            }
            graphs.push((format!("between-{s}"), g));
        }
    }
    let ring = Ring::PrimeField(10007);
    let campaigns = graphs
        .into_iter()
        .map(|(label, g)| {
            Ok(run_campaign(&g, 2 * n, &ring, opts.trials, opts.seed)?.with_label(label))
        })
        .collect::<Result<Vec<_>, VerifyError>>()?;
    Ok(OptimalityScan {
        n,
        edges,
        campaigns,
    })
}
