use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::code::{Codeword, MAX_NEURONS};
use crate::error::{Error, Result};

/// Exact arbitrary-precision rational.
pub type Rational = BigRational;

/// Shorthand for the integer rational `v`.
pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Shorthand for `num / den`.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses an integer or `p/q` literal.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let (num, den) = match s.split_once('/') {
        Some((p, q)) => (p.parse::<BigInt>().ok()?, q.parse::<BigInt>().ok()?),
        None => (s.parse::<BigInt>().ok()?, BigInt::one()),
    };
    (!den.is_zero()).then(|| Rational::new(num, den))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Relation {
    /// `a·x <= b`
    Le,
    /// `a·x = b`
    Eq,
    /// `a·x < b`
    Lt,
}

/// Whether the sets of an arrangement are read as open or as closed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Topology {
    Open,
    Closed,
}

impl fmt::Display for Topology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Topology::Open => "open",
            Topology::Closed => "closed",
        })
    }
}

/// `coeffs · x <rel> bound`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearConstraint {
    pub coeffs: Vec<Rational>,
    pub relation: Relation,
    pub bound: Rational,
}

impl LinearConstraint {
    pub fn new(coeffs: Vec<Rational>, relation: Relation, bound: Rational) -> Self {
        LinearConstraint {
            coeffs,
            relation,
            bound,
        }
    }

    pub fn le(coeffs: Vec<Rational>, bound: Rational) -> Self {
        Self::new(coeffs, Relation::Le, bound)
    }

    pub fn lt(coeffs: Vec<Rational>, bound: Rational) -> Self {
        Self::new(coeffs, Relation::Lt, bound)
    }

    pub fn eq(coeffs: Vec<Rational>, bound: Rational) -> Self {
        Self::new(coeffs, Relation::Eq, bound)
    }

    /// `coeffs · x >= bound`, stored as `-coeffs · x <= -bound`.
    pub fn ge(coeffs: Vec<Rational>, bound: Rational) -> Self {
        Self::le(coeffs.into_iter().map(|c| -c).collect(), -bound)
    }

    /// `coeffs · x > bound`, stored as `-coeffs · x < -bound`.
    pub fn gt(coeffs: Vec<Rational>, bound: Rational) -> Self {
        Self::lt(coeffs.into_iter().map(|c| -c).collect(), -bound)
    }

    /// Convenience constructor from small integers.
    pub fn from_ints(coeffs: &[i64], relation: Relation, bound: i64) -> Self {
        Self::new(
            coeffs.iter().map(|&c| int(c)).collect(),
            relation,
            int(bound),
        )
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn lhs(&self, point: &[Rational]) -> Rational {
        self.coeffs
            .iter()
            .zip(point)
            .fold(Rational::zero(), |acc, (a, x)| acc + a * x)
    }

    pub fn is_satisfied(&self, point: &[Rational]) -> bool {
        let lhs = self.lhs(point);
        match self.relation {
            Relation::Le => lhs <= self.bound,
            Relation::Eq => lhs == self.bound,
            Relation::Lt => lhs < self.bound,
        }
    }

    /// The constraint with `<=` read as `<`.
    pub fn interior(&self) -> Self {
        match self.relation {
            Relation::Le => Self::lt(self.coeffs.clone(), self.bound.clone()),
            _ => self.clone(),
        }
    }

    /// Constraints whose disjunction is the complement of this one.
    pub fn negations(&self) -> Vec<LinearConstraint> {
        let a = self.coeffs.clone();
        let b = self.bound.clone();
        match self.relation {
            Relation::Le => vec![Self::gt(a, b)],
            Relation::Lt => vec![Self::ge(a, b)],
            Relation::Eq => vec![Self::lt(a.clone(), b.clone()), Self::gt(a, b)],
        }
    }
}

/// A convex polyhedron in H-representation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polyhedron {
    dim: usize,
    constraints: Vec<LinearConstraint>,
}

impl Polyhedron {
    pub fn new(dim: usize, constraints: Vec<LinearConstraint>) -> Result<Self> {
        for c in &constraints {
            if c.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: c.dim(),
                });
            }
        }
        Ok(Polyhedron { dim, constraints })
    }

    /// The whole space.
    pub fn universe(dim: usize) -> Self {
        Polyhedron {
            dim,
            constraints: Vec::new(),
        }
    }

    /// The axis-aligned box `lo_i <= x_i <= hi_i`.
    pub fn boxed(lo: &[Rational], hi: &[Rational]) -> Result<Self> {
        if lo.len() != hi.len() {
            return Err(Error::DimensionMismatch {
                expected: lo.len(),
                found: hi.len(),
            });
        }
        let d = lo.len();
        let mut constraints = Vec::with_capacity(2 * d);
        for i in 0..d {
            let e = unit(d, i);
            constraints.push(LinearConstraint::le(e.clone(), hi[i].clone()));
            constraints.push(LinearConstraint::ge(e, lo[i].clone()));
        }
        Polyhedron::new(d, constraints)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn constraints(&self) -> &[LinearConstraint] {
        &self.constraints
    }

    pub fn push(&mut self, c: LinearConstraint) -> Result<()> {
        if c.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: c.dim(),
            });
        }
        self.constraints.push(c);
        Ok(())
    }

    /// Constraints as read under `topology`: open sets turn `<=` into `<`.
    pub fn interpreted(&self, topology: Topology) -> Result<Vec<LinearConstraint>> {
        match topology {
            Topology::Closed => {
                if self.constraints.iter().any(|c| c.relation == Relation::Lt) {
                    return Err(Error::TopologyViolation(
                        "strict constraint in a closed set".into(),
                    ));
                }
                Ok(self.constraints.clone())
            }
            Topology::Open => {
                if self.constraints.iter().any(|c| c.relation == Relation::Eq) {
                    return Err(Error::TopologyViolation(
                        "equality constraint in an open set".into(),
                    ));
                }
                Ok(self.constraints.iter().map(|c| c.interior()).collect())
            }
        }
    }

    pub fn contains(&self, topology: Topology, point: &[Rational]) -> Result<bool> {
        Ok(self
            .interpreted(topology)?
            .iter()
            .all(|c| c.is_satisfied(point)))
    }

    /// Largest absolute bound, useful for sizing sampling boxes.
    pub fn max_abs_bound(&self) -> Rational {
        self.constraints
            .iter()
            .map(|c| c.bound.abs())
            .max()
            .unwrap_or_else(Rational::zero)
    }
}

pub(crate) fn unit(d: usize, i: usize) -> Vec<Rational> {
    (0..d)
        .map(|j| {
            if i == j {
                Rational::one()
            } else {
                Rational::zero()
            }
        })
        .collect()
}

/// An ordered family of polyhedra `U_1, ..., U_n` in a common `R^d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arrangement {
    dim: usize,
    topology: Topology,
    sets: Vec<Polyhedron>,
}

impl Arrangement {
    /// Validates dimensions and topology. Under [`Topology::Open`] strict
    /// constraints are stored as `<=`, which the open reading makes strict
    /// anyway; equalities are rejected. Under [`Topology::Closed`] strict
    /// constraints are rejected.
    pub fn new(dim: usize, topology: Topology, sets: Vec<Polyhedron>) -> Result<Self> {
        if sets.len() > MAX_NEURONS {
            return Err(Error::invalid(format!(
                "{} sets exceed the supported maximum of {MAX_NEURONS}",
                sets.len()
            )));
        }
        let mut normalized = Vec::with_capacity(sets.len());
        for (k, set) in sets.into_iter().enumerate() {
            if set.dim != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: set.dim,
                });
            }
            let mut constraints = Vec::with_capacity(set.constraints.len());
            for c in set.constraints {
                match (topology, c.relation) {
                    (Topology::Open, Relation::Eq) => {
                        return Err(Error::TopologyViolation(format!(
                            "set {} has an equality constraint but the arrangement is open",
                            k + 1
                        )))
                    }
                    (Topology::Closed, Relation::Lt) => {
                        return Err(Error::TopologyViolation(format!(
                            "set {} has a strict constraint but the arrangement is closed",
                            k + 1
                        )))
                    }
                    (Topology::Open, Relation::Lt) => {
                        constraints.push(LinearConstraint::le(c.coeffs, c.bound))
                    }
                    _ => constraints.push(c),
                }
            }
            normalized.push(Polyhedron { dim, constraints });
        }
        Ok(Arrangement {
            dim,
            topology,
            sets: normalized,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn topology(&self) -> Topology {
        self.topology
    }

    pub fn sets(&self) -> &[Polyhedron] {
        &self.sets
    }

    /// Number of sets (neurons).
    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    /// Neurons whose set contains `point`.
    pub fn membership(&self, point: &[Rational]) -> Result<Codeword> {
        if point.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: point.len(),
            });
        }
        let mut word = Codeword::EMPTY;
        for (k, set) in self.sets.iter().enumerate() {
            if set.contains(self.topology, point)? {
                word = word.with(k + 1);
            }
        }
        Ok(word)
    }

    /// The closed arrangement with the same constraint lists.
    pub fn interpret_closure(&self) -> Result<Arrangement> {
        if self.topology == Topology::Closed {
            return Err(Error::invalid("arrangement is already closed"));
        }
        Arrangement::new(self.dim, Topology::Closed, self.sets.clone())
    }

    /// The arrangement without the sets outside `keep`, relabeled in order.
    pub fn restrict(&self, keep: Codeword) -> Result<Arrangement> {
        if !keep.is_subset(Codeword::full(self.len())) {
            return Err(Error::invalid(format!(
                "{keep} exceeds the {} sets of the arrangement",
                self.len()
            )));
        }
        let sets = keep.iter().map(|i| self.sets[i - 1].clone()).collect();
        Arrangement::new(self.dim, self.topology, sets)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_literals() {
        assert_eq!(parse_rational("-6/4"), Some(ratio(-3, 2)));
        assert_eq!(parse_rational("7"), Some(int(7)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("x"), None);
        assert_eq!(ratio(-3, 2).to_string(), "-3/2");
        assert_eq!(int(-4).to_string(), "-4");
    }

    #[test]
    fn negations_cover_complement() {
        let c = LinearConstraint::from_ints(&[1, 0], Relation::Eq, 0);
        let negs = c.negations();
        assert_eq!(negs.len(), 2);
        for p in [[int(-1), int(0)], [int(1), int(0)], [int(0), int(5)]] {
            let inside = c.is_satisfied(&p);
            let outside = negs.iter().any(|n| n.is_satisfied(&p));
            assert!(inside ^ outside);
        }
    }

    #[test]
    fn open_rejects_equalities() {
        let seg = Polyhedron::new(
            2,
            vec![
                LinearConstraint::from_ints(&[0, 1], Relation::Eq, 0),
                LinearConstraint::from_ints(&[1, 0], Relation::Le, 1),
            ],
        )
        .unwrap();
        assert!(matches!(
            Arrangement::new(2, Topology::Open, vec![seg.clone()]),
            Err(Error::TopologyViolation(_))
        ));
        assert!(Arrangement::new(2, Topology::Closed, vec![seg]).is_ok());
    }

    #[test]
    fn closure_keeps_constraints() {
        let half =
            Polyhedron::new(1, vec![LinearConstraint::from_ints(&[1], Relation::Lt, 0)]).unwrap();
        let open = Arrangement::new(1, Topology::Open, vec![half]).unwrap();
        assert_eq!(open.sets()[0].constraints()[0].relation, Relation::Le);
        let closed = open.interpret_closure().unwrap();
        assert_eq!(closed.topology(), Topology::Closed);
        assert!(closed.membership(&[int(0)]).unwrap().contains(1));
        assert!(!open.membership(&[int(0)]).unwrap().contains(1));
        assert!(closed.interpret_closure().is_err());
    }

    #[test]
    fn dimension_checked() {
        let c = LinearConstraint::from_ints(&[1, 2], Relation::Le, 0);
        assert!(Polyhedron::new(3, vec![c]).is_err());
    }
}
