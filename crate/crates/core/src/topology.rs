//! Topology of simplicial complexes: links, a three-valued contractibility
//! test, reduced rational homology, mandatory codewords and local goodness.
//!
//! Contractibility is decided by sufficient conditions only. A cone, or a
//! complex that collapses to a vertex, is contractible; an empty complex, or
//! one with nonzero reduced rational homology, is not. Anything else is
//! reported as unknown.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;

use num_traits::Zero;

use crate::code::{Codeword, NeuralCode, SimplicialComplex};
use crate::error::{Error, Result};
use crate::geometry::Rational;

/// Default number of states the exhaustive collapse search may visit.
pub const DEFAULT_COLLAPSE_BUDGET: usize = 1_000_000;

/// Removal of a free face together with the unique face containing it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CollapseStep {
    pub free: Codeword,
    pub coface: Codeword,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ContractionCertificate {
    /// Every facet contains this vertex.
    ConeApex(usize),
    /// Elementary collapses leaving the single vertex `vertex`.
    Collapses {
        steps: Vec<CollapseStep>,
        vertex: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Obstruction {
    /// The geometric realization is empty.
    Empty,
    /// A nonzero reduced Betti number.
    ReducedBetti { dim: usize, rank: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ContractibilityStatus {
    Contractible(ContractionCertificate),
    NonContractible(Obstruction),
    /// Collapse search exhausted its budget with trivial homology.
    Unknown {
        explored: usize,
    },
}

impl ContractibilityStatus {
    pub fn is_contractible(&self) -> bool {
        matches!(self, ContractibilityStatus::Contractible(_))
    }

    pub fn is_non_contractible(&self) -> bool {
        matches!(self, ContractibilityStatus::NonContractible(_))
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self, ContractibilityStatus::Unknown { .. })
    }

    /// Re-checks the certificate against `cpx`. `Unknown` claims nothing and
    /// always holds.
    pub fn certificate_holds(&self, cpx: &SimplicialComplex) -> bool {
        match self {
            ContractibilityStatus::Contractible(ContractionCertificate::ConeApex(v)) => {
                !cpx.has_no_vertices() && cpx.facets().iter().all(|f| f.contains(*v))
            }
            ContractibilityStatus::Contractible(ContractionCertificate::Collapses {
                steps,
                vertex,
            }) => replay_collapses(cpx, steps, *vertex),
            ContractibilityStatus::NonContractible(Obstruction::Empty) => cpx.has_no_vertices(),
            ContractibilityStatus::NonContractible(Obstruction::ReducedBetti { dim, rank }) => {
                *rank > 0 && reduced_homology(cpx).rank(*dim as isize) == *rank
            }
            ContractibilityStatus::Unknown { .. } => true,
        }
    }
}

impl fmt::Display for ContractibilityStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ContractibilityStatus::Contractible(ContractionCertificate::ConeApex(v)) => {
                write!(f, "CONTRACTIBLE (cone with apex {v})")
            }
            ContractibilityStatus::Contractible(ContractionCertificate::Collapses {
                steps,
                vertex,
            }) => write!(
                f,
                "CONTRACTIBLE ({} elementary collapses to vertex {vertex})",
                steps.len()
            ),
            ContractibilityStatus::NonContractible(Obstruction::Empty) => {
                write!(f, "NON_CONTRACTIBLE (empty complex)")
            }
            ContractibilityStatus::NonContractible(Obstruction::ReducedBetti { dim, rank }) => {
                write!(f, "NON_CONTRACTIBLE (reduced Betti_{dim} = {rank})")
            }
            ContractibilityStatus::Unknown { explored } => {
                write!(
                    f,
                    "UNKNOWN (collapse search stopped after {explored} states)"
                )
            }
        }
    }
}

/// Reduced Betti numbers over the rationals, indexed by dimension.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct BettiVector(pub Vec<usize>);

impl BettiVector {
    /// Rank in dimension `dim`; zero outside the stored range.
    pub fn rank(&self, dim: isize) -> usize {
        if dim < 0 {
            return 0;
        }
        self.0.get(dim as usize).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&b| b == 0)
    }

    /// Lowest dimension with nonzero rank.
    pub fn first_nonzero(&self) -> Option<(usize, usize)> {
        self.0.iter().copied().enumerate().find(|&(_, b)| b > 0)
    }

    /// `sum (-1)^k b_k`.
    pub fn alternating_sum(&self) -> i64 {
        self.0
            .iter()
            .enumerate()
            .map(|(k, &b)| if k % 2 == 0 { b as i64 } else { -(b as i64) })
            .sum()
    }
}

impl fmt::Display for BettiVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// `Lk_sigma(cpx) = { tau disjoint from sigma : sigma ∪ tau ∈ cpx }`.
pub fn link(cpx: &SimplicialComplex, sigma: Codeword) -> Result<SimplicialComplex> {
    if !cpx.contains(sigma) {
        return Err(Error::FaceNotFound(sigma));
    }
    let faces = cpx
        .facets()
        .iter()
        .filter(|f| sigma.is_subset(**f))
        .map(|f| f.difference(sigma));
    SimplicialComplex::from_faces(cpx.universe_size(), faces)
}

/// Nonempty faces of `cpx`.
fn nonempty_faces(cpx: &SimplicialComplex) -> BTreeSet<Codeword> {
    let mut faces = cpx.faces();
    faces.remove(&Codeword::EMPTY);
    faces
}

/// Faces plus cofacet counts, updated in place as collapses are applied.
struct CollapseState {
    universe: Codeword,
    faces: HashSet<Codeword>,
    cofacets: HashMap<Codeword, usize>,
}

impl CollapseState {
    fn new(faces: &BTreeSet<Codeword>) -> Self {
        let universe = faces.iter().fold(Codeword::EMPTY, |a, &f| a.union(f));
        let mut cofacets: HashMap<Codeword, usize> = faces.iter().map(|&f| (f, 0)).collect();
        for &g in faces {
            if g.len() < 2 {
                continue;
            }
            for v in g.iter() {
                *cofacets
                    .get_mut(&g.without(v))
                    .expect("closed under subsets") += 1;
            }
        }
        CollapseState {
            universe,
            faces: faces.iter().copied().collect(),
            cofacets,
        }
    }

    /// The unique face containing `f`, if `f` is free.
    fn free_coface(&self, f: Codeword) -> Option<Codeword> {
        if self.cofacets.get(&f) != Some(&1) {
            return None;
        }
        let g = self
            .universe
            .difference(f)
            .iter()
            .map(|v| f.with(v))
            .find(|g| self.faces.contains(g))?;
        (self.cofacets[&g] == 0).then_some(g)
    }

    /// Removes the pair and returns the faces whose freeness may have changed.
    fn collapse(&mut self, f: Codeword, g: Codeword) -> Vec<Codeword> {
        self.faces.remove(&f);
        self.faces.remove(&g);
        self.cofacets.remove(&f);
        self.cofacets.remove(&g);
        let mut touched = Vec::new();
        for removed in [g, f] {
            if removed.len() < 2 {
                continue;
            }
            for v in removed.iter() {
                let h = removed.without(v);
                let Some(count) = self.cofacets.get_mut(&h) else {
                    continue;
                };
                *count -= 1;
                touched.push(h);
                if *count == 0 && h.len() >= 2 {
                    touched.extend(h.iter().map(|u| h.without(u)));
                }
            }
        }
        touched
    }

    fn single_vertex(&self) -> Option<usize> {
        if self.faces.len() == 1 {
            let v = *self.faces.iter().next().expect("one face");
            if v.len() == 1 {
                return v.max_neuron();
            }
        }
        None
    }

    fn faces(&self) -> BTreeSet<Codeword> {
        self.faces.iter().copied().collect()
    }
}

/// Collapses free faces in lexicographic order until none remain.
fn greedy_collapse(faces: &BTreeSet<Codeword>) -> (Vec<CollapseStep>, CollapseState) {
    let mut state = CollapseState::new(faces);
    let mut candidates: BTreeSet<Codeword> = faces.clone();
    let mut steps = Vec::new();
    while let Some(f) = candidates.pop_first() {
        if !state.faces.contains(&f) {
            continue;
        }
        if let Some(g) = state.free_coface(f) {
            steps.push(CollapseStep { free: f, coface: g });
            candidates.extend(state.collapse(f, g));
        }
    }
    (steps, state)
}

fn free_pairs(faces: &BTreeSet<Codeword>) -> Vec<(Codeword, Codeword)> {
    let mut cofacets: HashMap<Codeword, (usize, Codeword)> = HashMap::new();
    for &g in faces {
        if g.len() < 2 {
            continue;
        }
        for v in g.iter() {
            let e = cofacets.entry(g.without(v)).or_insert((0, g));
            e.0 += 1;
            e.1 = g;
        }
    }
    faces
        .iter()
        .filter_map(|&f| match cofacets.get(&f) {
            Some(&(1, g)) if !cofacets.contains_key(&g) => Some((f, g)),
            _ => None,
        })
        .collect()
}

enum SearchOutcome {
    Collapsed(Vec<CollapseStep>, usize),
    Stuck(usize),
    OutOfBudget(usize),
}

/// Depth-first search over all collapse orders, remembering dead states.
fn exhaustive_collapse(faces: &BTreeSet<Codeword>, budget: usize) -> SearchOutcome {
    struct Frame {
        state: BTreeSet<Codeword>,
        moves: Vec<(Codeword, Codeword)>,
        next: usize,
    }
    let mut dead: HashSet<Vec<Codeword>> = HashSet::new();
    let mut explored = 1usize;
    let mut stack = vec![Frame {
        moves: free_pairs(faces),
        state: faces.clone(),
        next: 0,
    }];
    while let Some(top) = stack.last_mut() {
        if top.state.len() == 1 {
            let vertex = top
                .state
                .iter()
                .next()
                .and_then(|v| v.max_neuron())
                .expect("vertex");
            let steps = stack[..stack.len() - 1]
                .iter()
                .map(|fr| {
                    let (free, coface) = fr.moves[fr.next - 1];
                    CollapseStep { free, coface }
                })
                .collect();
            return SearchOutcome::Collapsed(steps, vertex);
        }
        if top.next == top.moves.len() {
            let frame = stack.pop().expect("nonempty stack");
            dead.insert(frame.state.into_iter().collect());
            continue;
        }
        let (f, g) = top.moves[top.next];
        top.next += 1;
        let mut child = top.state.clone();
        child.remove(&f);
        child.remove(&g);
        if dead.contains(&child.iter().copied().collect::<Vec<_>>()) {
            continue;
        }
        explored += 1;
        if explored > budget {
            return SearchOutcome::OutOfBudget(explored - 1);
        }
        stack.push(Frame {
            moves: free_pairs(&child),
            state: child,
            next: 0,
        });
    }
    SearchOutcome::Stuck(explored)
}

fn replay_collapses(cpx: &SimplicialComplex, steps: &[CollapseStep], vertex: usize) -> bool {
    let mut state = CollapseState::new(&nonempty_faces(cpx));
    for step in steps {
        if !state.faces.contains(&step.free) || state.free_coface(step.free) != Some(step.coface) {
            return false;
        }
        state.collapse(step.free, step.coface);
    }
    state.single_vertex() == Some(vertex)
}

/// Contractibility with the default collapse search budget.
pub fn contractibility(cpx: &SimplicialComplex) -> ContractibilityStatus {
    contractibility_with_budget(cpx, DEFAULT_COLLAPSE_BUDGET)
}

pub fn contractibility_with_budget(
    cpx: &SimplicialComplex,
    budget: usize,
) -> ContractibilityStatus {
    if cpx.has_no_vertices() {
        return ContractibilityStatus::NonContractible(Obstruction::Empty);
    }
    let apex = cpx
        .facets()
        .iter()
        .fold(cpx.vertices(), |acc, &f| acc.intersection(f));
    if let Some(v) = apex.iter().next() {
        return ContractibilityStatus::Contractible(ContractionCertificate::ConeApex(v));
    }

    let faces = nonempty_faces(cpx);
    let (steps, state) = greedy_collapse(&faces);
    if let Some(vertex) = state.single_vertex() {
        return ContractibilityStatus::Contractible(ContractionCertificate::Collapses {
            steps,
            vertex,
        });
    }
    // Collapses preserve homology, so the stuck remainder decides it.
    let betti = homology_of_faces(&state.faces());
    if let Some((dim, rank)) = betti.first_nonzero() {
        return ContractibilityStatus::NonContractible(Obstruction::ReducedBetti { dim, rank });
    }
    match exhaustive_collapse(&faces, budget) {
        SearchOutcome::Collapsed(steps, vertex) => {
            ContractibilityStatus::Contractible(ContractionCertificate::Collapses { steps, vertex })
        }
        SearchOutcome::Stuck(explored) | SearchOutcome::OutOfBudget(explored) => {
            ContractibilityStatus::Unknown { explored }
        }
    }
}

/// Reduced Betti numbers over Q for dimensions `0..=dim(cpx)`. Complexes
/// without vertices give the empty vector.
pub fn reduced_homology(cpx: &SimplicialComplex) -> BettiVector {
    if cpx.has_no_vertices() {
        return BettiVector::default();
    }
    let faces = nonempty_faces(cpx);
    let (_, state) = greedy_collapse(&faces);
    let mut betti = homology_of_faces(&state.faces());
    let dim = cpx.dimension().unwrap_or(0).max(0) as usize;
    betti.0.resize(dim + 1, 0);
    betti
}

/// Reduced homology straight from boundary-matrix ranks. `faces` must be a
/// nonempty, subset-closed family of nonempty faces.
fn homology_of_faces(faces: &BTreeSet<Codeword>) -> BettiVector {
    let top = faces.iter().map(|f| f.len()).max().unwrap_or(0);
    if top == 0 {
        return BettiVector::default();
    }
    let mut by_dim: Vec<Vec<Codeword>> = vec![Vec::new(); top];
    for &f in faces {
        by_dim[f.len() - 1].push(f);
    }
    // ranks[k] = rank of the boundary C_k -> C_{k-1}; the augmentation
    // C_0 -> Q has rank one.
    let mut ranks = vec![0usize; top + 1];
    ranks[0] = usize::from(!by_dim[0].is_empty());
    for k in 1..top {
        ranks[k] = boundary_rank(&by_dim[k - 1], &by_dim[k]);
    }
    BettiVector(
        (0..top)
            .map(|k| by_dim[k].len() - ranks[k] - ranks[k + 1])
            .collect(),
    )
}

/// Rank over Q of the boundary map from `upper` to `lower` faces.
fn boundary_rank(lower: &[Codeword], upper: &[Codeword]) -> usize {
    let index: HashMap<Codeword, usize> = lower.iter().enumerate().map(|(i, &f)| (f, i)).collect();
    let mut pivots: HashMap<usize, BTreeMap<usize, Rational>> = HashMap::new();
    let mut rank = 0;
    for &g in upper {
        let mut column: BTreeMap<usize, Rational> = g
            .iter()
            .enumerate()
            .map(|(pos, v)| {
                let sign = if pos % 2 == 0 { 1 } else { -1 };
                (index[&g.without(v)], crate::geometry::int(sign))
            })
            .collect();
        while let Some((&row, value)) = column.iter().next_back() {
            let Some(pivot) = pivots.get(&row) else {
                pivots.insert(row, column);
                rank += 1;
                break;
            };
            let factor = value / &pivot[&row];
            for (r, p) in pivot {
                let entry = column.entry(*r).or_insert_with(Rational::zero);
                *entry -= &factor * p;
                if entry.is_zero() {
                    column.remove(r);
                }
            }
        }
    }
    rank
}

/// Contractibility of the link of every nonempty face. A face is mandatory
/// when its link is non-contractible.
pub fn mandatory_codewords(cpx: &SimplicialComplex) -> BTreeMap<Codeword, ContractibilityStatus> {
    nonempty_faces(cpx)
        .into_iter()
        .map(|sigma| {
            let lk = link(cpx, sigma).expect("face of the complex");
            (sigma, contractibility(&lk))
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Yes,
    No,
    Unknown,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Yes => "true",
            Verdict::No => "false",
            Verdict::Unknown => "unknown",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalGoodness {
    pub verdict: Verdict,
    /// Nonempty intersections of maximal codewords missing from the code,
    /// with the contractibility of their links.
    pub checked: BTreeMap<Codeword, ContractibilityStatus>,
}

/// Local goodness through missing intersections of maximal codewords: the
/// code is locally good iff each such nonempty intersection has a
/// contractible link in `Δ(code)`.
pub fn is_locally_good(code: &NeuralCode) -> LocalGoodness {
    let cpx = code.simplicial_complex();
    let checked: BTreeMap<Codeword, ContractibilityStatus> = code
        .maximal_intersections()
        .into_keys()
        .filter(|sigma| !sigma.is_empty() && !code.contains(*sigma))
        .map(|sigma| {
            let lk = link(&cpx, sigma).expect("intersection of facets is a face");
            (sigma, contractibility(&lk))
        })
        .collect();
    LocalGoodness {
        verdict: combine(checked.values()),
        checked,
    }
}

/// Local goodness straight from the definition: every mandatory face of
/// `Δ(code)` must be a codeword.
pub fn is_locally_good_by_definition(code: &NeuralCode) -> Verdict {
    let statuses = mandatory_codewords(&code.simplicial_complex());
    combine(
        statuses
            .iter()
            .filter(|(sigma, _)| !code.contains(**sigma))
            .map(|(_, s)| s),
    )
}

fn combine<'a, I: IntoIterator<Item = &'a ContractibilityStatus>>(statuses: I) -> Verdict {
    let mut verdict = Verdict::Yes;
    for s in statuses {
        match s {
            ContractibilityStatus::NonContractible(_) => return Verdict::No,
            ContractibilityStatus::Unknown { .. } => verdict = Verdict::Unknown,
            ContractibilityStatus::Contractible(_) => {}
        }
    }
    verdict
}
