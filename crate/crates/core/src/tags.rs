//! Part-of-speech tags and the number feature shared across the pipeline.

use core::fmt;
use core::str::FromStr;

/// Coarse part-of-speech category.
///
/// `Prep` holds Hindi postpositions (में, को, के), which surface as English
/// prepositions. `Qword` holds the interrogative particle क्या.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PosTag {
    Noun,
    Pron,
    Verb,
    Aux,
    Adj,
    Adv,
    Prep,
    Conj,
    Qword,
    Num,
    Unk,
}

impl PosTag {
    pub const ALL: [PosTag; 11] = [
        PosTag::Noun,
        PosTag::Pron,
        PosTag::Verb,
        PosTag::Aux,
        PosTag::Adj,
        PosTag::Adv,
        PosTag::Prep,
        PosTag::Conj,
        PosTag::Qword,
        PosTag::Num,
        PosTag::Unk,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            PosTag::Noun => "NOUN",
            PosTag::Pron => "PRON",
            PosTag::Verb => "VERB",
            PosTag::Aux => "AUX",
            PosTag::Adj => "ADJ",
            PosTag::Adv => "ADV",
            PosTag::Prep => "PREP",
            PosTag::Conj => "CONJ",
            PosTag::Qword => "QWORD",
            PosTag::Num => "NUM",
            PosTag::Unk => "UNK",
        }
    }
}

impl fmt::Display for PosTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnknownTag;

impl fmt::Display for UnknownTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("unknown part-of-speech tag")
    }
}

impl FromStr for PosTag {
    type Err = UnknownTag;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        PosTag::ALL
            .iter()
            .copied()
            .find(|t| t.as_str() == s)
            .ok_or(UnknownTag)
    }
}

/// Grammatical number of a token or of the sentence subject.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Number {
    Sg,
    Pl,
}

impl Number {
    pub fn as_str(self) -> &'static str {
        match self {
            Number::Sg => "SG",
            Number::Pl => "PL",
        }
    }
}

impl fmt::Display for Number {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}
