//! Neural codes as combinatorial objects.
//!
//! A [`Codeword`] is a subset of the neuron universe `[n] = {1, ..., n}`,
//! stored as a 64-bit mask (bit `i - 1` is neuron `i`). A [`NeuralCode`] is a
//! set of codewords together with its declared neuron count, and
//! [`SimplicialComplex`] is the downward closure of a family of faces, kept
//! by its facets.

use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};

/// Largest supported neuron universe.
pub const MAX_NEURONS: usize = 64;

/// A set of neurons, one bit per neuron.
///
/// Ordering is lexicographic on the increasing member sequence, so the empty
/// word sorts first and `{1,2}` precedes `{1,3}` and `{2}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Codeword(u64);

impl Codeword {
    pub const EMPTY: Codeword = Codeword(0);

    pub const fn from_bits(bits: u64) -> Self {
        Codeword(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    /// Builds a codeword from 1-based neuron indices.
    pub fn from_neurons<I: IntoIterator<Item = usize>>(neurons: I) -> Result<Self> {
        let mut bits = 0u64;
        for i in neurons {
            if i == 0 || i > MAX_NEURONS {
                return Err(Error::invalid(format!(
                    "neuron index {i} outside 1..={MAX_NEURONS}"
                )));
            }
            bits |= 1 << (i - 1);
        }
        Ok(Codeword(bits))
    }

    /// Parses the compact single-digit notation, e.g. `"1457"`. `""` and `"-"`
    /// denote the empty word.
    pub fn from_digits(s: &str) -> Result<Self> {
        if s == "-" {
            return Ok(Codeword::EMPTY);
        }
        let digits = s
            .chars()
            .map(|c| {
                c.to_digit(10)
                    .filter(|&d| d > 0)
                    .map(|d| d as usize)
                    .ok_or_else(|| Error::invalid(format!("bad compact codeword {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Codeword::from_neurons(digits)
    }

    /// The full word `[n]`.
    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_NEURONS);
        if n == MAX_NEURONS {
            Codeword(u64::MAX)
        } else {
            Codeword((1u64 << n) - 1)
        }
    }

    pub fn singleton(i: usize) -> Self {
        assert!((1..=MAX_NEURONS).contains(&i));
        Codeword(1 << (i - 1))
    }

    pub fn contains(self, i: usize) -> bool {
        (1..=MAX_NEURONS).contains(&i) && self.0 & (1 << (i - 1)) != 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: Codeword) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_proper_subset(self, other: Codeword) -> bool {
        self != other && self.is_subset(other)
    }

    pub fn union(self, other: Codeword) -> Codeword {
        Codeword(self.0 | other.0)
    }

    pub fn intersection(self, other: Codeword) -> Codeword {
        Codeword(self.0 & other.0)
    }

    pub fn difference(self, other: Codeword) -> Codeword {
        Codeword(self.0 & !other.0)
    }

    pub fn with(self, i: usize) -> Codeword {
        self.union(Codeword::singleton(i))
    }

    pub fn without(self, i: usize) -> Codeword {
        self.difference(Codeword::singleton(i))
    }

    /// Largest member, if any.
    pub fn max_neuron(self) -> Option<usize> {
        (self.0 != 0).then(|| 64 - self.0.leading_zeros() as usize)
    }

    /// Members in increasing order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let i = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(i + 1)
            }
        })
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// All subsets, including the empty word and `self`.
    pub fn subsets(self) -> impl Iterator<Item = Codeword> {
        let mask = self.0;
        let mut next = Some(mask);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == 0 {
                None
            } else {
                Some((cur - 1) & mask)
            };
            Some(Codeword(cur))
        })
    }
}

impl Ord for Codeword {
    fn cmp(&self, other: &Self) -> Ordering {
        if self.0 == other.0 {
            return Ordering::Equal;
        }
        let d = (self.0 ^ other.0).trailing_zeros();
        let above = |x: u64| if d >= 63 { 0 } else { x >> (d + 1) };
        let self_has = self.0 & (1 << d) != 0;
        let (holder, other_bits) = if self_has {
            (Ordering::Less, other.0)
        } else {
            (Ordering::Greater, self.0)
        };
        // The word holding the first differing neuron comes first unless the
        // other word ends right there (and is thus a prefix of it).
        if above(other_bits) != 0 {
            holder
        } else {
            holder.reverse()
        }
    }
}

impl PartialOrd for Codeword {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Codeword {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{i}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for Codeword {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Formats a list of codewords separated by single spaces.
pub fn format_words<'a, I: IntoIterator<Item = &'a Codeword>>(words: I) -> String {
    words
        .into_iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

/// A bijection of `[n]`, stored as the image of each neuron.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    /// `images[i - 1]` is the image of neuron `i`.
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &j in &images {
            if j == 0 || j > n || std::mem::replace(&mut seen[j - 1], true) {
                return Err(Error::invalid(format!(
                    "{images:?} is not a bijection on 1..={n}"
                )));
            }
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (1..=n).collect(),
        }
    }

    /// The transposition of `a` and `b` on `[n]`.
    pub fn swap(n: usize, a: usize, b: usize) -> Result<Self> {
        let mut images: Vec<usize> = (1..=n).collect();
        if a == 0 || b == 0 || a > n || b > n {
            return Err(Error::invalid(format!("swap {a}<->{b} outside 1..={n}")));
        }
        images.swap(a - 1, b - 1);
        Ok(Permutation { images })
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn image(&self, i: usize) -> usize {
        self.images[i - 1]
    }

    pub fn apply(&self, word: Codeword) -> Codeword {
        Codeword(
            word.iter()
                .map(|i| 1u64 << (self.images[i - 1] - 1))
                .fold(0, |a, b| a | b),
        )
    }

    /// `self ∘ first`: apply `first`, then `self`.
    pub fn after(&self, first: &Permutation) -> Result<Permutation> {
        if self.len() != first.len() {
            return Err(Error::invalid("composing permutations of different sizes"));
        }
        Ok(Permutation {
            images: first.images.iter().map(|&j| self.images[j - 1]).collect(),
        })
    }
}

/// Result of [`NeuralCode::restrict_with_map`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Restriction {
    pub code: NeuralCode,
    /// `index_map[k]` is the original neuron now labeled `k + 1`.
    pub index_map: Vec<usize>,
}

/// Result of [`NeuralCode::add_codeword`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Addition {
    pub code: NeuralCode,
    /// The added word is strictly contained in some other word of the result.
    pub non_maximal: bool,
    /// The simplicial complex is unchanged by the addition.
    pub complex_preserved: bool,
}

/// A witness that a code is not max-intersection complete.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionWitness {
    /// Maximal codewords whose intersection is missing from the code.
    pub maximal_words: Vec<Codeword>,
    pub intersection: Codeword,
}

/// A neural code on `n` neurons.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct NeuralCode {
    n: usize,
    words: BTreeSet<Codeword>,
}

impl fmt::Debug for NeuralCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NeuralCode(n={}, {})", self.n, format_words(&self.words))
    }
}

impl NeuralCode {
    pub fn new<I: IntoIterator<Item = Codeword>>(n: usize, words: I) -> Result<Self> {
        if n > MAX_NEURONS {
            return Err(Error::invalid(format!(
                "{n} neurons exceeds the supported maximum of {MAX_NEURONS}"
            )));
        }
        let universe = Codeword::full(n);
        let words: BTreeSet<Codeword> = words.into_iter().collect();
        if let Some(bad) = words.iter().find(|w| !w.is_subset(universe)) {
            return Err(Error::invalid(format!(
                "codeword {bad} uses a neuron outside 1..={n}"
            )));
        }
        Ok(NeuralCode { n, words })
    }

    /// Builds a code from compact single-digit words, e.g. `["123", "1", "-"]`.
    pub fn from_digits(n: usize, words: &[&str]) -> Result<Self> {
        let words = words
            .iter()
            .map(|w| Codeword::from_digits(w))
            .collect::<Result<Vec<_>>>()?;
        NeuralCode::new(n, words)
    }

    pub fn neurons(&self) -> usize {
        self.n
    }

    pub fn words(&self) -> &BTreeSet<Codeword> {
        &self.words
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn contains(&self, word: Codeword) -> bool {
        self.words.contains(&word)
    }

    pub fn universe(&self) -> Codeword {
        Codeword::full(self.n)
    }

    /// Codewords not strictly contained in another codeword.
    pub fn maximal_codewords(&self) -> BTreeSet<Codeword> {
        maximal_elements(self.words.iter().copied())
    }

    /// All intersections of two or more maximal codewords, each paired with a
    /// smallest family of maximal codewords producing it.
    pub fn maximal_intersections(&self) -> BTreeMap<Codeword, Vec<Codeword>> {
        let maximal: Vec<Codeword> = self.maximal_codewords().into_iter().collect();
        let mut found: BTreeMap<Codeword, Vec<Codeword>> = BTreeMap::new();
        let mut frontier = Vec::new();
        for (a, &x) in maximal.iter().enumerate() {
            for &y in &maximal[a + 1..] {
                let meet = x.intersection(y);
                if let Entry::Vacant(slot) = found.entry(meet) {
                    slot.insert(vec![x, y]);
                    frontier.push(meet);
                }
            }
        }
        // Closing under further intersection with maximal words reaches every
        // multi-way intersection, breadth-first so witnesses stay minimal.
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for meet in frontier {
                for &m in &maximal {
                    let deeper = meet.intersection(m);
                    if !found.contains_key(&deeper) {
                        let mut family = found[&meet].clone();
                        family.push(m);
                        family.sort();
                        found.insert(deeper, family);
                        next.push(deeper);
                    }
                }
            }
            frontier = next;
        }
        found
    }

    /// Whether every intersection of two or more maximal codewords belongs to
    /// the code. On failure, reports the lexicographically first missing
    /// intersection together with maximal codewords producing it.
    pub fn max_intersection_witness(&self) -> Option<IntersectionWitness> {
        self.maximal_intersections()
            .into_iter()
            .find(|(meet, _)| !self.words.contains(meet))
            .map(|(intersection, maximal_words)| IntersectionWitness {
                maximal_words,
                intersection,
            })
    }

    pub fn is_max_intersection_complete(&self) -> bool {
        self.max_intersection_witness().is_none()
    }

    /// Restricts to the neurons of `tau`, relabeling survivors `1..=|tau|` in
    /// increasing original order.
    pub fn restrict(&self, tau: Codeword) -> Result<NeuralCode> {
        self.restrict_with_map(tau).map(|r| r.code)
    }

    pub fn restrict_with_map(&self, tau: Codeword) -> Result<Restriction> {
        if !tau.is_subset(self.universe()) {
            return Err(Error::invalid(format!(
                "restriction set {tau} exceeds the {} neurons of the code",
                self.n
            )));
        }
        let index_map = tau.to_vec();
        let relabel = |w: Codeword| {
            let bits = index_map
                .iter()
                .enumerate()
                .filter(|&(_, &orig)| w.contains(orig))
                .fold(0u64, |acc, (k, _)| acc | 1 << k);
            Codeword(bits)
        };
        let words = self.words.iter().map(|&w| relabel(w.intersection(tau)));
        let code = NeuralCode::new(index_map.len(), words)?;
        Ok(Restriction { code, index_map })
    }

    pub fn permute(&self, pi: &Permutation) -> Result<NeuralCode> {
        if pi.len() != self.n {
            return Err(Error::invalid(format!(
                "permutation on {} neurons applied to a code on {}",
                pi.len(),
                self.n
            )));
        }
        NeuralCode::new(self.n, self.words.iter().map(|&w| pi.apply(w)))
    }

    pub fn add_codeword(&self, sigma: Codeword) -> Result<Addition> {
        if !sigma.is_subset(self.universe()) {
            return Err(Error::invalid(format!(
                "codeword {sigma} uses a neuron outside 1..={}",
                self.n
            )));
        }
        let mut words = self.words.clone();
        words.insert(sigma);
        let code = NeuralCode { n: self.n, words };
        let non_maximal = code.words.iter().any(|&w| sigma.is_proper_subset(w));
        let complex_preserved = self.simplicial_complex() == code.simplicial_complex();
        Ok(Addition {
            code,
            non_maximal,
            complex_preserved,
        })
    }

    /// The smallest simplicial complex containing every codeword.
    pub fn simplicial_complex(&self) -> SimplicialComplex {
        SimplicialComplex {
            n: self.n,
            facets: self.maximal_codewords(),
        }
    }

    /// Classes of neurons that fire in exactly the same codewords.
    pub fn duplicate_neurons(&self) -> Vec<Vec<usize>> {
        let mut classes: BTreeMap<Vec<Codeword>, Vec<usize>> = BTreeMap::new();
        for i in 1..=self.n {
            let pattern: Vec<Codeword> = self
                .words
                .iter()
                .copied()
                .filter(|w| w.contains(i))
                .collect();
            classes.entry(pattern).or_default().push(i);
        }
        let mut out: Vec<Vec<usize>> = classes.into_values().collect();
        out.sort();
        out
    }

    /// `[n]` is a codeword and every other codeword has at most one neuron.
    pub fn is_sunflower_code(&self) -> bool {
        let full = self.universe();
        self.words.contains(&full) && self.words.iter().all(|&w| w == full || w.len() <= 1)
    }
}

fn maximal_elements<I: IntoIterator<Item = Codeword>>(words: I) -> BTreeSet<Codeword> {
    let mut by_size: Vec<Codeword> = words.into_iter().collect();
    by_size.sort_by_key(|w| std::cmp::Reverse(w.len()));
    let mut kept: Vec<Codeword> = Vec::new();
    for w in by_size {
        if !kept.iter().any(|&k| w.is_subset(k)) {
            kept.push(w);
        }
    }
    kept.into_iter().collect()
}

/// An abstract simplicial complex on `[n]`, stored by its facets.
///
/// The void complex has no facets (and no faces). The complex whose only face
/// is the empty face has the single facet `{}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SimplicialComplex {
    n: usize,
    facets: BTreeSet<Codeword>,
}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "SimplicialComplex(n={}, facets {})",
            self.n,
            format_words(&self.facets)
        )
    }
}

impl SimplicialComplex {
    /// Downward closure of `faces` on `[n]`.
    pub fn from_faces<I: IntoIterator<Item = Codeword>>(n: usize, faces: I) -> Result<Self> {
        let code = NeuralCode::new(n, faces)?;
        Ok(code.simplicial_complex())
    }

    /// Complex whose only face is the empty face.
    pub fn empty_face_only(n: usize) -> Self {
        SimplicialComplex {
            n,
            facets: BTreeSet::from([Codeword::EMPTY]),
        }
    }

    /// Full simplex on the neurons of `vertices`.
    pub fn simplex(n: usize, vertices: Codeword) -> Result<Self> {
        SimplicialComplex::from_faces(n, [vertices])
    }

    pub fn universe_size(&self) -> usize {
        self.n
    }

    pub fn facets(&self) -> &BTreeSet<Codeword> {
        &self.facets
    }

    /// No faces at all, not even the empty face.
    pub fn is_void(&self) -> bool {
        self.facets.is_empty()
    }

    /// No vertices: void, or only the empty face.
    pub fn has_no_vertices(&self) -> bool {
        self.facets.iter().all(|f| f.is_empty())
    }

    pub fn contains(&self, face: Codeword) -> bool {
        self.facets.iter().any(|&f| face.is_subset(f))
    }

    pub fn vertices(&self) -> Codeword {
        self.facets
            .iter()
            .fold(Codeword::EMPTY, |acc, &f| acc.union(f))
    }

    /// Largest face size minus one; `None` for the void complex.
    pub fn dimension(&self) -> Option<isize> {
        self.facets.iter().map(|f| f.len() as isize - 1).max()
    }

    /// Every face, including the empty face when the complex is not void.
    pub fn faces(&self) -> BTreeSet<Codeword> {
        let mut out = BTreeSet::new();
        for &f in &self.facets {
            out.extend(f.subsets());
        }
        out
    }

    /// Number of faces of each dimension `0..=dim`.
    pub fn f_vector(&self) -> Vec<usize> {
        let mut counts = Vec::new();
        for face in self.faces() {
            if face.is_empty() {
                continue;
            }
            let k = face.len() - 1;
            if counts.len() <= k {
                counts.resize(k + 1, 0);
            }
            counts[k] += 1;
        }
        counts
    }

    /// Alternating face count over nonempty faces.
    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector()
            .iter()
            .enumerate()
            .map(|(k, &c)| if k % 2 == 0 { c as i64 } else { -(c as i64) })
            .sum()
    }
}
