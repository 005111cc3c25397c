//! The analysis report: combinatorial and local-obstruction facts about a
//! code, in deterministic order.

use std::fmt;

use crate::code::{format_words, Codeword, IntersectionWitness, NeuralCode};
use crate::topology::{
    is_locally_good, mandatory_codewords, reduced_homology, BettiVector, ContractibilityStatus,
    LocalGoodness,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MandatoryEntry {
    pub face: Codeword,
    pub link_status: ContractibilityStatus,
    pub in_code: bool,
}

impl MandatoryEntry {
    /// `Some(true)` when mandatory, `None` when undetermined.
    pub fn mandatory(&self) -> Option<bool> {
        match self.link_status {
            ContractibilityStatus::NonContractible(_) => Some(true),
            ContractibilityStatus::Contractible(_) => Some(false),
            ContractibilityStatus::Unknown { .. } => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnalysisReport {
    pub neurons: usize,
    pub word_count: usize,
    pub maximal: Vec<Codeword>,
    /// `None` when the code is max-intersection complete.
    pub intersection_witness: Option<IntersectionWitness>,
    /// One entry per nonempty face of the simplicial complex.
    pub mandatory: Vec<MandatoryEntry>,
    pub local: LocalGoodness,
    pub betti: Option<BettiVector>,
}

impl AnalysisReport {
    pub fn new(code: &NeuralCode, with_homology: bool) -> Self {
        let cpx = code.simplicial_complex();
        let mandatory = mandatory_codewords(&cpx)
            .into_iter()
            .map(|(face, link_status)| MandatoryEntry {
                face,
                link_status,
                in_code: code.contains(face),
            })
            .collect();
        AnalysisReport {
            neurons: code.neurons(),
            word_count: code.len(),
            maximal: code.maximal_codewords().into_iter().collect(),
            intersection_witness: code.max_intersection_witness(),
            mandatory,
            local: is_locally_good(code),
            betti: with_homology.then(|| reduced_homology(&cpx)),
        }
    }

    pub fn is_max_intersection_complete(&self) -> bool {
        self.intersection_witness.is_none()
    }
}

impl fmt::Display for AnalysisReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "neurons: {}", self.neurons)?;
        writeln!(f, "codewords: {}", self.word_count)?;
        writeln!(f, "maximal codewords: {}", format_words(&self.maximal))?;
        match &self.intersection_witness {
            None => writeln!(f, "max-intersection complete: true")?,
            Some(w) => {
                writeln!(f, "max-intersection complete: false")?;
                let parts: Vec<String> = w.maximal_words.iter().map(ToString::to_string).collect();
                writeln!(f, "  witness: {} = {}", parts.join(" ∩ "), w.intersection)?;
            }
        }
        writeln!(f, "faces of the simplicial complex (face, link, in code):")?;
        for entry in &self.mandatory {
            let kind = match entry.mandatory() {
                Some(true) => "mandatory",
                Some(false) => "non-mandatory",
                None => "undetermined",
            };
            writeln!(
                f,
                "  {} {} {} {}",
                entry.face,
                kind,
                if entry.in_code { "in-code" } else { "missing" },
                entry.link_status
            )?;
        }
        writeln!(f, "locally good: {}", self.local.verdict)?;
        writeln!(
            f,
            "checked intersections: {}",
            format_words(self.local.checked.keys())
        )?;
        for (face, status) in &self.local.checked {
            writeln!(f, "  {face} {status}")?;
        }
        if let Some(betti) = &self.betti {
            writeln!(f, "reduced betti numbers: {betti}")?;
        }
        Ok(())
    }
}
