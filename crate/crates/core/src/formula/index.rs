use super::{LdFormula, Symbol};

/// The ordered record of deletions a translation has passed through: each
/// entry names the world where a deletion happened (a first-order variable
/// or a nominal) and the guard that was cut.
///
/// Sequences only ever grow by [`IndexSequence::push`]; prefixes are taken
/// when translating the guards of earlier entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexSequence {
    entries: Vec<(Symbol, LdFormula)>,
}

impl IndexSequence {
    /// The sentence-level seed `⟨v, false⟩`, which deletes nothing.
    pub fn seed(v: Symbol) -> IndexSequence {
        IndexSequence {
            entries: vec![(v, LdFormula::bot())],
        }
    }

    pub fn push(&self, v: Symbol, guard: LdFormula) -> IndexSequence {
        let mut entries = self.entries.clone();
        entries.push((v, guard));
        IndexSequence { entries }
    }

    /// The first `len` entries. `len` must be at least one.
    pub fn prefix(&self, len: usize) -> IndexSequence {
        assert!(len >= 1 && len <= self.entries.len());
        IndexSequence {
            entries: self.entries[..len].to_vec(),
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[(Symbol, LdFormula)] {
        &self.entries
    }
}
