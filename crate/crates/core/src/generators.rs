//! Named codes, parametric families and explicit polyhedral realizations.
//!
//! Families live on the universe `1..=2n+1`: neurons `1..=n`, the extra
//! neuron `n+1`, and the barred copies `ī = n + 1 + i`.
//!
//! Planar coordinates are hand-picked rational literals. Nothing about them
//! is assumed; the tests run every realization back through
//! [`code_of_arrangement`](crate::geometry::code_of_arrangement).

use std::fmt;

use crate::code::{Codeword, NeuralCode};
use crate::error::{Error, Result};
use crate::geometry::{int, ratio, Arrangement, LinearConstraint, Polyhedron, Rational, Topology};
use crate::topology::{is_locally_good, mandatory_codewords, reduced_homology, Verdict};

/// Largest family parameter: `2n + 1` neurons must fit a codeword.
pub const MAX_FAMILY_N: usize = 31;

/// Largest `n` for the planar segment realization.
pub const MAX_SEGMENT_FAN_N: usize = 8;

fn check_family_n(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::invalid(format!(
            "family parameter n = {n} must be at least 2"
        )));
    }
    if n > MAX_FAMILY_N {
        return Err(Error::invalid(format!(
            "family parameter n = {n} exceeds {MAX_FAMILY_N}"
        )));
    }
    Ok(())
}

/// Label of the barred copy of neuron `i`.
pub fn barred(n: usize, i: usize) -> usize {
    n + 1 + i
}

/// `{1̄, ..., n̄}`.
pub fn barred_word(n: usize) -> Codeword {
    Codeword::from_neurons((1..=n).map(|i| barred(n, i))).expect("family universe fits")
}

/// The `2n + 3` word family: the full word on `1..n` and their barred copies,
/// `{n+1}`, the empty word, and for each `i` the words `{i, ī, n+1}` and
/// `{i, ī}`.
pub fn gen_an(n: usize) -> Result<NeuralCode> {
    check_family_n(n)?;
    let top = n + 1;
    let mut words = vec![
        Codeword::full(n).union(barred_word(n)),
        Codeword::singleton(top),
        Codeword::EMPTY,
    ];
    for i in 1..=n {
        let pair = Codeword::from_neurons([i, barred(n, i)])?;
        words.push(pair.with(top));
        words.push(pair);
    }
    NeuralCode::new(2 * n + 1, words)
}

/// `gen_an(n)` restricted to the neurons `1..=n+1`.
pub fn gen_sn(n: usize) -> Result<NeuralCode> {
    check_family_n(n)?;
    let top = n + 1;
    let mut words = vec![Codeword::full(n), Codeword::singleton(top), Codeword::EMPTY];
    for i in 1..=n {
        words.push(Codeword::from_neurons([i, top])?);
        words.push(Codeword::singleton(i));
    }
    NeuralCode::new(top, words)
}

/// `gen_an(n)` with the word `{1̄, ..., n̄}` added.
pub fn gen_cn(n: usize) -> Result<NeuralCode> {
    let base = gen_an(n)?;
    Ok(base.add_codeword(barred_word(n))?.code)
}

/// Closed polygon with the given vertices (either orientation).
pub fn polygon(vertices: &[(Rational, Rational)]) -> Result<Polyhedron> {
    if vertices.len() < 3 {
        return Err(Error::invalid("a polygon needs at least three vertices"));
    }
    let m = vertices.len();
    let twice_area: Rational = (0..m)
        .map(|k| {
            let (x0, y0) = &vertices[k];
            let (x1, y1) = &vertices[(k + 1) % m];
            x0 * y1 - x1 * y0
        })
        .sum();
    let ccw = twice_area > int(0);
    let mut constraints = Vec::with_capacity(m);
    for k in 0..m {
        let (px, py) = &vertices[k];
        let (qx, qy) = &vertices[(k + 1) % m];
        let (dx, dy) = (qx - px, qy - py);
        // Left of p->q: dx (y - py) - dy (x - px) >= 0.
        let coeffs = vec![-dy.clone(), dx.clone()];
        let bound = &dx * py - &dy * px;
        constraints.push(if ccw {
            LinearConstraint::ge(coeffs, bound)
        } else {
            LinearConstraint::le(coeffs, bound)
        });
    }
    Polyhedron::new(2, constraints)
}

/// Closed segment from `p` to `q` in the plane.
pub fn segment(p: (Rational, Rational), q: (Rational, Rational)) -> Result<Polyhedron> {
    let (dx, dy) = (&q.0 - &p.0, &q.1 - &p.1);
    if dx == int(0) && dy == int(0) {
        return Err(Error::invalid("segment endpoints coincide"));
    }
    let normal = vec![-dy.clone(), dx.clone()];
    let along = vec![dx.clone(), dy.clone()];
    let at = |v: &[Rational], pt: &(Rational, Rational)| &v[0] * &pt.0 + &v[1] * &pt.1;
    Polyhedron::new(
        2,
        vec![
            LinearConstraint::eq(normal.clone(), at(&normal, &p)),
            LinearConstraint::ge(along.clone(), at(&along, &p)),
            LinearConstraint::le(along.clone(), at(&along, &q)),
        ],
    )
}

fn pt(x: i64, y: i64) -> (Rational, Rational) {
    (int(x), int(y))
}

/// `n` segments from a common apex to the line `y = -4`, plus a transversal
/// segment on `y = -2`; neuron `ī` reuses segment `i`.
pub fn realization_an_r2(n: usize) -> Result<Arrangement> {
    if !(2..=MAX_SEGMENT_FAN_N).contains(&n) {
        return Err(Error::invalid(format!(
            "planar realization supports 2 <= n <= {MAX_SEGMENT_FAN_N}, got {n}"
        )));
    }
    let apex = pt(0, 4);
    let spokes: Vec<Polyhedron> = (0..n)
        .map(|k| {
            let x = ratio(-9 * (n as i64 - 1) + 18 * k as i64, n as i64 - 1);
            segment(apex.clone(), (x, int(-4)))
        })
        .collect::<Result<_>>()?;
    let mut sets = spokes.clone();
    sets.push(segment(pt(-9, -2), pt(9, -2))?);
    sets.extend(spokes);
    Arrangement::new(2, Topology::Closed, sets)
}

/// Realization in `R^n` of `gen_cn(n)`: for each `i`, the barred set is
/// `{x >= 0, x_j <= 1 for j != i}`, the plain set cuts it with
/// `sum x >= 1`, and neuron `n+1` is the slab `2n <= sum x <= 2n+1`.
pub fn realization_cn_rn(n: usize) -> Result<Arrangement> {
    check_family_n(n)?;
    let ones = vec![int(1); n];
    let unit = |j: usize| -> Vec<Rational> {
        (0..n)
            .map(|k| if k == j { int(1) } else { int(0) })
            .collect()
    };
    let barred_set = |i: usize| -> Vec<LinearConstraint> {
        let mut cs: Vec<LinearConstraint> = (0..n)
            .map(|j| LinearConstraint::ge(unit(j), int(0)))
            .collect();
        cs.extend(
            (0..n)
                .filter(|&j| j != i)
                .map(|j| LinearConstraint::le(unit(j), int(1))),
        );
        cs
    };
    let mut sets = Vec::with_capacity(2 * n + 1);
    for i in 0..n {
        let mut cs = barred_set(i);
        cs.push(LinearConstraint::ge(ones.clone(), int(1)));
        sets.push(Polyhedron::new(n, cs)?);
    }
    let two_n = 2 * n as i64;
    sets.push(Polyhedron::new(
        n,
        vec![
            LinearConstraint::ge(ones.clone(), int(two_n)),
            LinearConstraint::le(ones.clone(), int(two_n + 1)),
        ],
    )?);
    for i in 0..n {
        sets.push(Polyhedron::new(n, barred_set(i))?);
    }
    Arrangement::new(n, Topology::Closed, sets)
}

/// The six-neuron example code with twelve codewords.
pub fn eq1_code() -> NeuralCode {
    NeuralCode::from_digits(
        6,
        &[
            "123", "124", "135", "236", "12", "13", "14", "23", "24", "1", "2", "-",
        ],
    )
    .expect("valid literal")
}

/// Box realization of [`eq1_code`]; the same boxes work open and closed.
pub fn eq1_realization(topology: Topology) -> Result<Arrangement> {
    let b = |x0, x1, y0, y1| Polyhedron::boxed(&[int(x0), int(y0)], &[int(x1), int(y1)]);
    Arrangement::new(
        2,
        topology,
        vec![
            b(-10, 2, -10, 10)?,
            b(-2, 10, -10, 10)?,
            b(-8, 8, 2, 6)?,
            b(-8, 8, -6, -2)?,
            b(-6, -4, 3, 5)?,
            b(4, 6, 3, 5)?,
        ],
    )
}

pub fn c0_code() -> NeuralCode {
    NeuralCode::from_digits(
        6,
        &["2456", "123", "145", "346", "45", "46", "1", "2", "3", "-"],
    )
    .expect("valid literal")
}

/// Three triangles sharing the apex `(0, 7)`, a trapezoid strip crossing
/// them, and the strip split along the middle triangle's edges.
pub fn c0_realization() -> Result<Arrangement> {
    let cut = ratio(20, 13);
    let sets = vec![
        polygon(&[pt(0, 7), pt(-9, -6), pt(-5, -6)])?,
        polygon(&[pt(0, 7), pt(-2, -6), pt(2, -6)])?,
        polygon(&[pt(0, 7), pt(5, -6), pt(9, -6)])?,
        polygon(&[pt(-9, -6), pt(9, -6), pt(7, -3), pt(-7, -3)])?,
        polygon(&[pt(-9, -6), pt(2, -6), (cut.clone(), int(-3)), pt(-7, -3)])?,
        polygon(&[pt(-2, -6), pt(9, -6), pt(7, -3), (-cut, int(-3))])?,
    ];
    Arrangement::new(2, Topology::Closed, sets)
}

/// The eight-neuron code in which neurons 7 and 8 duplicate 1 and 3.
pub fn thm3_2_code() -> NeuralCode {
    NeuralCode::from_digits(
        8,
        &[
            "12378", "1457", "2456", "3468", "17", "38", "45", "46", "2", "-",
        ],
    )
    .expect("valid literal")
}

/// [`c0_realization`] with set 7 equal to set 1 and set 8 equal to set 3.
pub fn thm3_2_realization() -> Result<Arrangement> {
    let base = c0_realization()?;
    let mut sets = base.sets().to_vec();
    sets.push(base.sets()[0].clone());
    sets.push(base.sets()[2].clone());
    Arrangement::new(2, Topology::Closed, sets)
}

pub fn thm3_10_code() -> NeuralCode {
    NeuralCode::from_digits(
        8,
        &[
            "2345", "123", "124", "145", "12", "14", "23", "24", "45", "2", "4", "-", "237", "238",
            "367", "678", "26", "37", "67", "6", "8",
        ],
    )
    .expect("valid literal")
}

pub fn sunflower3_code() -> NeuralCode {
    NeuralCode::from_digits(3, &["123", "1", "2", "3", "-"]).expect("valid literal")
}

/// Three rectangular petals around the square `[0,2] x [0,2]`.
pub fn sunflower3_realization(topology: Topology) -> Result<Arrangement> {
    let b = |x0, x1, y0, y1| Polyhedron::boxed(&[int(x0), int(y0)], &[int(x1), int(y1)]);
    Arrangement::new(
        2,
        topology,
        vec![b(-9, 2, 0, 2)?, b(0, 2, 0, 9)?, b(0, 11, 0, 2)?],
    )
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Realization {
    /// Short tag used in file names, e.g. `r2` or `open`.
    pub label: String,
    pub arrangement: Arrangement,
    pub note: String,
}

/// A property a corpus code is expected to have.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expectation {
    WordCount(usize),
    MaximalCodewords(Vec<Codeword>),
    MaxIntersectionComplete(bool),
    /// The first missing intersection of maximal codewords.
    MaxIntersectionWitness(Codeword),
    LocallyGood(Verdict),
    /// Exactly these missing intersections needed checking.
    CheckedIntersections(Vec<Codeword>),
    NonMandatory(Vec<Codeword>),
    ReducedBettiAtLeast {
        dim: usize,
        rank: usize,
    },
    /// The duplicate-neuron classes with more than one member.
    DuplicateClasses(Vec<Vec<usize>>),
    SunflowerCode(bool),
}

impl Expectation {
    pub fn holds(&self, code: &NeuralCode) -> bool {
        match self {
            Expectation::WordCount(k) => code.len() == *k,
            Expectation::MaximalCodewords(ws) => {
                code.maximal_codewords().into_iter().collect::<Vec<_>>() == *ws
            }
            Expectation::MaxIntersectionComplete(b) => code.is_max_intersection_complete() == *b,
            Expectation::MaxIntersectionWitness(w) => code
                .max_intersection_witness()
                .is_some_and(|wit| wit.intersection == *w),
            Expectation::LocallyGood(v) => is_locally_good(code).verdict == *v,
            Expectation::CheckedIntersections(ws) => {
                is_locally_good(code)
                    .checked
                    .into_keys()
                    .collect::<Vec<_>>()
                    == *ws
            }
            Expectation::NonMandatory(ws) => {
                let table = mandatory_codewords(&code.simplicial_complex());
                ws.iter()
                    .all(|w| table.get(w).is_some_and(|s| s.is_contractible()))
            }
            Expectation::ReducedBettiAtLeast { dim, rank } => {
                reduced_homology(&code.simplicial_complex()).rank(*dim as isize) >= *rank
            }
            Expectation::DuplicateClasses(classes) => {
                code.duplicate_neurons()
                    .into_iter()
                    .filter(|c| c.len() > 1)
                    .collect::<Vec<_>>()
                    == *classes
            }
            Expectation::SunflowerCode(b) => code.is_sunflower_code() == *b,
        }
    }
}

impl fmt::Display for Expectation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |ws: &[Codeword]| crate::code::format_words(ws);
        match self {
            Expectation::WordCount(k) => write!(f, "{k} codewords"),
            Expectation::MaximalCodewords(ws) => write!(f, "maximal codewords {}", list(ws)),
            Expectation::MaxIntersectionComplete(b) => write!(f, "max-intersection complete = {b}"),
            Expectation::MaxIntersectionWitness(w) => {
                write!(f, "missing intersection of maximal codewords {w}")
            }
            Expectation::LocallyGood(v) => write!(f, "locally good = {v}"),
            Expectation::CheckedIntersections(ws) => {
                write!(f, "missing nonempty intersections {}", list(ws))
            }
            Expectation::NonMandatory(ws) => write!(f, "non-mandatory faces {}", list(ws)),
            Expectation::ReducedBettiAtLeast { dim, rank } => {
                write!(f, "reduced Betti_{dim} >= {rank}")
            }
            Expectation::DuplicateClasses(cs) => write!(f, "duplicate neuron classes {cs:?}"),
            Expectation::SunflowerCode(b) => write!(f, "sunflower code = {b}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorpusEntry {
    pub name: String,
    pub code: NeuralCode,
    pub realizations: Vec<Realization>,
    pub expected: Vec<Expectation>,
}

impl CorpusEntry {
    pub fn code_file_name(&self) -> String {
        format!("{}.code", self.name)
    }

    /// `<name>.arr` for the first realization, `<name>_<label>.arr` after.
    pub fn arrangement_file_name(&self, index: usize) -> String {
        match index {
            0 => format!("{}.arr", self.name),
            _ => format!("{}_{}.arr", self.name, self.realizations[index].label),
        }
    }

    fn new(name: &str, code: NeuralCode) -> Self {
        CorpusEntry {
            name: name.to_string(),
            code,
            realizations: Vec::new(),
            expected: Vec::new(),
        }
    }

    fn realized(mut self, label: &str, arrangement: Arrangement, note: &str) -> Self {
        self.realizations.push(Realization {
            label: label.to_string(),
            arrangement,
            note: note.to_string(),
        });
        self
    }

    fn expect(mut self, e: Expectation) -> Self {
        self.expected.push(e);
        self
    }
}

fn words(ws: &[&str]) -> Vec<Codeword> {
    let mut out: Vec<Codeword> = ws
        .iter()
        .map(|w| Codeword::from_digits(w).expect("valid literal"))
        .collect();
    out.sort();
    out
}

/// Family sizes shipped in the corpus.
pub const CORPUS_FAMILY_RANGE: std::ops::RangeInclusive<usize> = 2..=5;

/// Family sizes for which the `R^n` realization ships in the corpus.
pub const CORPUS_CN_REALIZATION_RANGE: std::ops::RangeInclusive<usize> = 2..=4;

/// Every named example and family member, with realizations and expected
/// properties.
pub fn corpus() -> Result<Vec<CorpusEntry>> {
    use Expectation::*;
    let mut out = vec![
        CorpusEntry::new("eq1", eq1_code())
            .realized("open", eq1_realization(Topology::Open)?, "boxes, open")
            .realized(
                "closed",
                eq1_realization(Topology::Closed)?,
                "boxes, closed",
            )
            .expect(WordCount(12))
            .expect(MaximalCodewords(words(&["123", "124", "135", "236"])))
            .expect(MaxIntersectionComplete(false))
            .expect(MaxIntersectionWitness(words(&["3"])[0]))
            .expect(NonMandatory(words(&["3", "4"])))
            .expect(CheckedIntersections(words(&["3"])))
            .expect(LocallyGood(Verdict::Yes)),
        CorpusEntry::new("c0", c0_code())
            .realized("r2", c0_realization()?, "three triangles and a split strip")
            .expect(WordCount(10))
            .expect(MaximalCodewords(words(&["123", "145", "2456", "346"])))
            .expect(LocallyGood(Verdict::Yes)),
        CorpusEntry::new("thm3_2", thm3_2_code())
            .realized(
                "r2",
                thm3_2_realization()?,
                "c0 realization with V7 = V1, V8 = V3",
            )
            .expect(WordCount(10))
            .expect(MaximalCodewords(words(&["12378", "1457", "2456", "3468"])))
            .expect(DuplicateClasses(vec![vec![1, 7], vec![3, 8]]))
            .expect(LocallyGood(Verdict::Yes)),
        CorpusEntry::new(
            "thm3_2_plus278",
            thm3_2_code().add_codeword(words(&["278"])[0])?.code,
        )
        .expect(WordCount(11))
        .expect(LocallyGood(Verdict::Yes)),
        CorpusEntry::new("thm3_10", thm3_10_code())
            .expect(WordCount(21))
            .expect(CheckedIntersections(words(&["1", "3", "7"])))
            .expect(NonMandatory(words(&["1", "3", "7"])))
            .expect(LocallyGood(Verdict::Yes)),
        CorpusEntry::new("sunflower3", sunflower3_code())
            .realized(
                "open",
                sunflower3_realization(Topology::Open)?,
                "rectangles, open",
            )
            .realized(
                "closed",
                sunflower3_realization(Topology::Closed)?,
                "rectangles, closed",
            )
            .expect(SunflowerCode(true))
            .expect(MaxIntersectionComplete(true)),
    ];
    for n in CORPUS_FAMILY_RANGE {
        let pairs: Vec<Vec<usize>> = (1..=n).map(|i| vec![i, barred(n, i)]).collect();
        let fan = realization_an_r2(n)?;
        out.push(
            CorpusEntry::new(&format!("an{n}"), gen_an(n)?)
                .realized("r2", fan.clone(), "segment fan with a transversal")
                .expect(WordCount(2 * n + 3))
                .expect(DuplicateClasses(pairs.clone())),
        );
        out.push(
            CorpusEntry::new(&format!("sn{n}"), gen_sn(n)?)
                .realized(
                    "r2",
                    fan.restrict(Codeword::full(n + 1))?,
                    "segment fan restricted to the first n+1 sets",
                )
                .expect(WordCount(2 * n + 3)),
        );
        let mut cn = CorpusEntry::new(&format!("cn{n}"), gen_cn(n)?)
            .expect(WordCount(2 * n + 4))
            .expect(ReducedBettiAtLeast { dim: 1, rank: 1 })
            .expect(DuplicateClasses(Vec::new()));
        if CORPUS_CN_REALIZATION_RANGE.contains(&n) {
            cn = cn.realized("rn", realization_cn_rn(n)?, "boxes cut by a simplex corner");
        }
        out.push(cn);
    }
    Ok(out)
}

/// Looks up a corpus entry by name.
pub fn corpus_entry(name: &str) -> Result<CorpusEntry> {
    corpus()?
        .into_iter()
        .find(|e| e.name == name)
        .ok_or_else(|| Error::invalid(format!("unknown corpus entry {name:?}")))
}
