//! Exact feasibility of mixed strict, weak and equality linear systems.
//!
//! Equalities are eliminated by substitution, then the remaining weak and
//! strict inequalities go through Fourier–Motzkin elimination. A strict row
//! combined with anything stays strict. After every elimination step rows are
//! normalized and only the tightest row per direction is kept. A witness is
//! rebuilt by back-substitution through the recorded elimination steps and
//! then re-verified against the input.

use std::collections::HashMap;

use num_traits::{One, Signed, Zero};

use super::constraint::{LinearConstraint, Rational, Relation};
use crate::error::{Error, Result};

/// `coeffs · x < rhs` when `strict`, otherwise `<=`.
#[derive(Clone, Debug)]
struct Row {
    coeffs: Vec<Rational>,
    strict: bool,
    rhs: Rational,
}

impl Row {
    fn is_trivial(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    fn trivially_holds(&self) -> bool {
        if self.strict {
            self.rhs.is_positive()
        } else {
            !self.rhs.is_negative()
        }
    }
}

/// `x_var = constant + coeffs · x`, with `coeffs[var] = 0`.
struct Substitution {
    var: usize,
    coeffs: Vec<Rational>,
    constant: Rational,
}

impl Substitution {
    fn apply(&self, coeffs: &mut [Rational], rhs: &mut Rational) {
        let a = std::mem::replace(&mut coeffs[self.var], Rational::zero());
        if a.is_zero() {
            return;
        }
        for (c, s) in coeffs.iter_mut().zip(&self.coeffs) {
            if !s.is_zero() {
                *c += &a * s;
            }
        }
        *rhs -= &a * &self.constant;
    }
}

/// Decides whether a rational point satisfies every constraint (strict ones
/// strictly). Returns such a point when one exists.
pub fn is_feasible(constraints: &[LinearConstraint], dim: usize) -> Result<Option<Vec<Rational>>> {
    for c in constraints {
        if c.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: c.dim(),
            });
        }
    }

    let mut equalities = Vec::new();
    let mut rows = Vec::new();
    for c in constraints {
        match c.relation {
            Relation::Eq => equalities.push((c.coeffs.clone(), c.bound.clone())),
            Relation::Le | Relation::Lt => rows.push(Row {
                coeffs: c.coeffs.clone(),
                strict: c.relation == Relation::Lt,
                rhs: c.bound.clone(),
            }),
        }
    }

    let mut substitutions: Vec<Substitution> = Vec::new();
    while let Some((coeffs, rhs)) = equalities.pop() {
        let Some(var) = coeffs.iter().position(|c| !c.is_zero()) else {
            if rhs.is_zero() {
                continue;
            }
            return Ok(None);
        };
        let pivot = coeffs[var].clone();
        let sub = Substitution {
            var,
            coeffs: coeffs
                .iter()
                .enumerate()
                .map(|(j, c)| {
                    if j == var {
                        Rational::zero()
                    } else {
                        -(c / &pivot)
                    }
                })
                .collect(),
            constant: &rhs / &pivot,
        };
        for (c, r) in equalities.iter_mut() {
            sub.apply(c, r);
        }
        for row in rows.iter_mut() {
            sub.apply(&mut row.coeffs, &mut row.rhs);
        }
        substitutions.push(sub);
    }

    let mut eliminated: Vec<(usize, Vec<Row>)> = Vec::new();
    loop {
        rows = match prune(rows) {
            Some(r) => r,
            None => return Ok(None),
        };
        let Some(var) = pick_variable(&rows, dim) else {
            break;
        };
        let (mut upper, mut lower, mut rest) = (Vec::new(), Vec::new(), Vec::new());
        for row in rows {
            if row.coeffs[var].is_positive() {
                upper.push(row);
            } else if row.coeffs[var].is_negative() {
                lower.push(row);
            } else {
                rest.push(row);
            }
        }
        for u in &upper {
            for l in &lower {
                let mu = -&l.coeffs[var];
                let ml = &u.coeffs[var];
                let coeffs = u
                    .coeffs
                    .iter()
                    .zip(&l.coeffs)
                    .map(|(a, b)| a * &mu + b * ml)
                    .collect();
                rest.push(Row {
                    coeffs,
                    strict: u.strict || l.strict,
                    rhs: &u.rhs * &mu + &l.rhs * ml,
                });
            }
        }
        upper.extend(lower);
        eliminated.push((var, upper));
        rows = rest;
    }

    let mut point = vec![Rational::zero(); dim];
    for (var, bounds) in eliminated.iter().rev() {
        point[*var] = choose_value(*var, bounds, &point)?;
    }
    for sub in substitutions.iter().rev() {
        let value = sub
            .coeffs
            .iter()
            .zip(&point)
            .fold(sub.constant.clone(), |acc, (c, x)| acc + c * x);
        point[sub.var] = value;
    }

    if let Some(bad) = constraints.iter().find(|c| !c.is_satisfied(&point)) {
        return Err(Error::Internal(format!(
            "witness {point:?} violates {bad:?}"
        )));
    }
    Ok(Some(point))
}

/// Drops satisfied trivial rows and keeps the tightest row per direction.
/// `None` if a trivial row is violated.
fn prune(rows: Vec<Row>) -> Option<Vec<Row>> {
    let mut order: Vec<Vec<Rational>> = Vec::new();
    let mut best: HashMap<Vec<Rational>, (Rational, bool)> = HashMap::new();
    for row in rows {
        if row.is_trivial() {
            if !row.trivially_holds() {
                return None;
            }
            continue;
        }
        let scale = row
            .coeffs
            .iter()
            .find(|c| !c.is_zero())
            .map(|c| c.abs())
            .expect("nontrivial row");
        let key: Vec<Rational> = row.coeffs.iter().map(|c| c / &scale).collect();
        let rhs = row.rhs / &scale;
        match best.get_mut(&key) {
            Some(entry) => {
                if rhs < entry.0 || (rhs == entry.0 && row.strict) {
                    *entry = (rhs, row.strict);
                }
            }
            None => {
                order.push(key.clone());
                best.insert(key, (rhs, row.strict));
            }
        }
    }
    Some(
        order
            .into_iter()
            .map(|key| {
                let (rhs, strict) = best.remove(&key).expect("recorded key");
                Row {
                    coeffs: key,
                    strict,
                    rhs,
                }
            })
            .collect(),
    )
}

/// The variable whose elimination creates the fewest new rows.
fn pick_variable(rows: &[Row], dim: usize) -> Option<usize> {
    (0..dim)
        .filter_map(|var| {
            let pos = rows.iter().filter(|r| r.coeffs[var].is_positive()).count();
            let neg = rows.iter().filter(|r| r.coeffs[var].is_negative()).count();
            (pos + neg > 0).then(|| ((pos * neg) as isize - (pos + neg) as isize, var))
        })
        .min()
        .map(|(_, var)| var)
}

fn choose_value(var: usize, bounds: &[Row], point: &[Rational]) -> Result<Rational> {
    let mut lo: Option<(Rational, bool)> = None;
    let mut hi: Option<(Rational, bool)> = None;
    for row in bounds {
        let a = &row.coeffs[var];
        let rest = row
            .coeffs
            .iter()
            .zip(point)
            .enumerate()
            .filter(|&(j, _)| j != var)
            .fold(Rational::zero(), |acc, (_, (c, x))| acc + c * x);
        let v = (&row.rhs - rest) / a;
        if a.is_positive() {
            let tighter = match &hi {
                None => true,
                Some((h, s)) => v < *h || (v == *h && row.strict && !s),
            };
            if tighter {
                hi = Some((v, row.strict));
            }
        } else {
            let tighter = match &lo {
                None => true,
                Some((l, s)) => v > *l || (v == *l && row.strict && !s),
            };
            if tighter {
                lo = Some((v, row.strict));
            }
        }
    }

    let fits = |v: &Rational| {
        let above = match &lo {
            None => true,
            Some((l, true)) => v > l,
            Some((l, false)) => v >= l,
        };
        let below = match &hi {
            None => true,
            Some((h, true)) => v < h,
            Some((h, false)) => v <= h,
        };
        above && below
    };

    let mut candidates = vec![Rational::zero()];
    if let Some((l, _)) = &lo {
        candidates.push(l.ceil());
        candidates.push(l.floor() + Rational::one());
    }
    if let Some((h, _)) = &hi {
        candidates.push(h.floor());
        candidates.push(h.ceil() - Rational::one());
    }
    if let (Some((l, _)), Some((h, _))) = (&lo, &hi) {
        candidates.push((l + h) / Rational::from_integer(2.into()));
    }
    if let Some((l, _)) = &lo {
        candidates.push(l.clone());
    }
    if let Some((h, _)) = &hi {
        candidates.push(h.clone());
    }
    candidates
        .into_iter()
        .find(|v| fits(v))
        .ok_or_else(|| Error::Internal(format!("empty interval for variable {var}")))
}
