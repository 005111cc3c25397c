use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num_traits::Zero;

use super::constraint::{Arrangement, LinearConstraint, Polyhedron, Rational, Topology};
use super::feasibility::is_feasible;
use crate::code::{Codeword, NeuralCode};
use crate::error::{Error, Result};

/// Largest arrangement accepted by [`code_of_arrangement`].
pub const MAX_EXTRACTION_SETS: usize = 20;

/// Whether the set, read under `topology`, has no points.
pub fn set_is_empty(p: &Polyhedron, topology: Topology) -> Result<bool> {
    let constraints = p.interpreted(topology)?;
    Ok(is_feasible(&constraints, p.dim())?.is_none())
}

fn check_word(arr: &Arrangement, sigma: Codeword) -> Result<()> {
    if !sigma.is_subset(Codeword::full(arr.len())) {
        return Err(Error::invalid(format!(
            "{sigma} exceeds the {} sets of the arrangement",
            arr.len()
        )));
    }
    Ok(())
}

fn conjunction(arr: &Arrangement, sigma: Codeword) -> Result<Vec<LinearConstraint>> {
    let mut out = Vec::new();
    for i in sigma.iter() {
        out.extend(arr.sets()[i - 1].interpreted(arr.topology())?);
    }
    Ok(out)
}

/// Whether `U_sigma` (the whole space for the empty word) is nonempty.
pub fn intersection_is_nonempty(arr: &Arrangement, sigma: Codeword) -> Result<bool> {
    check_word(arr, sigma)?;
    Ok(is_feasible(&conjunction(arr, sigma)?, arr.dim())?.is_some())
}

/// Decides whether the atom `U_sigma \ ⋃_{j ∉ sigma} U_j` is nonempty and, if
/// so, returns a point of it.
///
/// Each excluded set is avoided by satisfying the negation of one of its
/// constraints. The search branches on an excluded set only when the current
/// witness lies inside it.
pub fn atom_is_nonempty(arr: &Arrangement, sigma: Codeword) -> Result<Option<Vec<Rational>>> {
    check_word(arr, sigma)?;
    let base = conjunction(arr, sigma)?;
    let excluded: Vec<Vec<LinearConstraint>> = (1..=arr.len())
        .filter(|&j| !sigma.contains(j))
        .map(|j| arr.sets()[j - 1].interpreted(arr.topology()))
        .collect::<Result<_>>()?;
    let Some(witness) = is_feasible(&base, arr.dim())? else {
        return Ok(None);
    };
    let remaining: Vec<usize> = (0..excluded.len()).collect();
    avoid(arr.dim(), &excluded, base, witness, remaining)
}

fn avoid(
    dim: usize,
    excluded: &[Vec<LinearConstraint>],
    region: Vec<LinearConstraint>,
    witness: Vec<Rational>,
    mut remaining: Vec<usize>,
) -> Result<Option<Vec<Rational>>> {
    let inside = |set: &[LinearConstraint], p: &[Rational]| set.iter().all(|c| c.is_satisfied(p));
    // Sets the witness already avoids stay pending: a later witness may fall
    // back inside them.
    let Some(pos) = remaining
        .iter()
        .position(|&j| inside(&excluded[j], &witness))
    else {
        return Ok(Some(witness));
    };
    let j = remaining.remove(pos);
    for c in &excluded[j] {
        for neg in c.negations() {
            let mut next = region.clone();
            next.push(neg);
            if let Some(w) = is_feasible(&next, dim)? {
                if let Some(found) = avoid(dim, excluded, next, w, remaining.clone())? {
                    return Ok(Some(found));
                }
            }
        }
    }
    Ok(None)
}

/// An extracted code together with one witness point per codeword.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Extraction {
    pub code: NeuralCode,
    pub witnesses: BTreeMap<Codeword, Vec<Rational>>,
}

/// `code(U, R^d)`: the codewords whose atoms are nonempty.
pub fn code_of_arrangement(arr: &Arrangement) -> Result<NeuralCode> {
    extract(arr).map(|e| e.code)
}

/// Like [`code_of_arrangement`], also returning witnesses.
///
/// A word `sigma` can only be a codeword if `U_sigma` is nonempty and lies in
/// no other set, since otherwise its atom is empty. Only such closed words
/// are tested. They are enumerated from the closure of the empty word by
/// repeatedly adding one set and closing again, which reaches every closed
/// word and skips the (possibly exponential) rest of the nerve.
pub fn extract(arr: &Arrangement) -> Result<Extraction> {
    if arr.len() > MAX_EXTRACTION_SETS {
        return Err(Error::invalid(format!(
            "code extraction supports at most {MAX_EXTRACTION_SETS} sets, got {}",
            arr.len()
        )));
    }
    // Reject topology violations up front, even for sets never reached.
    let sets: Vec<Vec<LinearConstraint>> = arr
        .sets()
        .iter()
        .map(|s| s.interpreted(arr.topology()))
        .collect::<Result<_>>()?;
    let mut witnesses = BTreeMap::new();
    let start = closure(arr, &sets, Codeword::EMPTY)?.expect("the whole space is nonempty");
    let mut seen = BTreeSet::from([start]);
    let mut queue = VecDeque::from([start]);
    while let Some(sigma) = queue.pop_front() {
        if let Some(w) = atom_is_nonempty(arr, sigma)? {
            witnesses.insert(sigma, w);
        }
        for j in (1..=arr.len()).filter(|&j| !sigma.contains(j)) {
            if let Some(tau) = closure(arr, &sets, sigma.with(j))? {
                if seen.insert(tau) {
                    queue.push_back(tau);
                }
            }
        }
    }
    let code = NeuralCode::new(arr.len(), witnesses.keys().copied())?;
    Ok(Extraction { code, witnesses })
}

/// All `j` with `U_sigma ⊆ U_j`, or `None` when `U_sigma` is empty.
fn closure(
    arr: &Arrangement,
    sets: &[Vec<LinearConstraint>],
    sigma: Codeword,
) -> Result<Option<Codeword>> {
    let region: Vec<LinearConstraint> = sigma.iter().flat_map(|i| sets[i - 1].clone()).collect();
    let Some(point) = is_feasible(&region, arr.dim())? else {
        return Ok(None);
    };
    let mut closed = sigma;
    // Only sets holding the witness can contain the whole intersection.
    for j in arr.membership(&point)?.difference(sigma).iter() {
        let mut contained = true;
        'constraints: for c in &sets[j - 1] {
            for neg in c.negations() {
                let mut probe = region.clone();
                probe.push(neg);
                if is_feasible(&probe, arr.dim())?.is_some() {
                    contained = false;
                    break 'constraints;
                }
            }
        }
        if contained {
            closed = closed.with(j);
        }
    }
    Ok(Some(closed))
}

/// Whether the line `{point + t·direction}` meets the set read under
/// `topology`.
pub fn line_meets(
    p: &Polyhedron,
    topology: Topology,
    point: &[Rational],
    direction: &[Rational],
) -> Result<bool> {
    for v in [point, direction] {
        if v.len() != p.dim() {
            return Err(Error::DimensionMismatch {
                expected: p.dim(),
                found: v.len(),
            });
        }
    }
    if direction.iter().all(Zero::is_zero) {
        return Err(Error::invalid("line direction must be nonzero"));
    }
    let restricted: Vec<LinearConstraint> = p
        .interpreted(topology)?
        .into_iter()
        .map(|c| {
            let slope = c.lhs(direction);
            let offset = c.lhs(point);
            LinearConstraint::new(vec![slope], c.relation, c.bound - offset)
        })
        .collect();
    Ok(is_feasible(&restricted, 1)?.is_some())
}
