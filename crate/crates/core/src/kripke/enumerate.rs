use std::sync::Arc;

use rand::Rng;

use super::{KripkeModel, ModelError};
use crate::formula::{is_atom_name, Symbol};
use crate::worldset::WorldSet;

/// Default bound on the size of an enumerated model space.
pub const DEFAULT_ENUMERATION_CAP: u128 = 1 << 24;

/// All models over worlds `w0..w{n-1}` and a fixed atom alphabet.
///
/// Model `i` is decoded from the bits of `i`: the low `n²` bits are the
/// edges (bit `a·n + b` is `wa -> wb`), the next `n·|atoms|` bits the
/// valuation (bit `k·n + w` puts world `w` into atom `k`).
#[derive(Clone, Debug)]
pub struct ModelSpace {
    n: usize,
    names: Arc<[Symbol]>,
    atoms: Arc<[Symbol]>,
}

impl ModelSpace {
    pub fn new<S: AsRef<str>>(n: usize, atoms: &[S]) -> Result<ModelSpace, ModelError> {
        if n == 0 {
            return Err(ModelError::NoWorlds);
        }
        let mut sorted: Vec<Symbol> = Vec::new();
        for a in atoms {
            if !is_atom_name(a.as_ref()) {
                return Err(ModelError::InvalidAtom(a.as_ref().to_string()));
            }
            sorted.push(Symbol::from(a.as_ref()));
        }
        sorted.sort();
        sorted.dedup();
        if n * n + n * sorted.len() > 127 {
            return Err(ModelError::TooManyWorlds(n));
        }
        let names: Vec<Symbol> = (0..n).map(|i| Symbol::from(format!("w{i}"))).collect();
        Ok(ModelSpace {
            n,
            names: names.into(),
            atoms: sorted.into(),
        })
    }

    pub fn worlds(&self) -> usize {
        self.n
    }

    pub fn atoms(&self) -> &[Symbol] {
        &self.atoms
    }

    fn bits(&self) -> usize {
        self.n * self.n + self.n * self.atoms.len()
    }

    pub fn count(&self) -> u128 {
        1u128 << self.bits()
    }

    pub fn decode(&self, index: u128) -> KripkeModel {
        assert!(index < self.count(), "model index out of range");
        let n = self.n;
        let row_mask = (1u128 << n) - 1;
        let succ = (0..n)
            .map(|a| WorldSet(((index >> (a * n)) & row_mask) as u64))
            .collect();
        let base = n * n;
        let val = (0..self.atoms.len())
            .map(|k| WorldSet(((index >> (base + k * n)) & row_mask) as u64))
            .collect();
        KripkeModel::from_raw(self.names.clone(), succ, self.atoms.clone(), val)
    }

    /// Inverse of [`ModelSpace::decode`] for models over this space.
    pub fn encode(&self, m: &KripkeModel) -> Option<u128> {
        if m.len() != self.n || m.atoms() != &*self.atoms {
            return None;
        }
        let mut index = 0u128;
        for (a, row) in m.rows().iter().enumerate() {
            index |= (row.bits() as u128) << (a * self.n);
        }
        for k in 0..self.atoms.len() {
            index |= (m.valuation_at(k).bits() as u128) << (self.n * self.n + k * self.n);
        }
        Some(index)
    }

    /// Fail if the space holds more than `cap` models.
    pub fn check_cap(&self, cap: u128) -> Result<(), ModelError> {
        if self.count() > cap {
            Err(ModelError::SpaceTooLarge {
                count: self.count(),
                cap,
            })
        } else {
            Ok(())
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = KripkeModel> + '_ {
        (0..self.count()).map(move |i| self.decode(i))
    }

    /// A uniformly random model of the space.
    pub fn sample<R: Rng>(&self, rng: &mut R) -> KripkeModel {
        self.decode(rng.gen_range(0..self.count()))
    }
}

/// Stream every model with `n` worlds over `atoms`, refusing spaces larger
/// than `cap`.
pub fn enumerate_models<S: AsRef<str>>(
    n: usize,
    atoms: &[S],
    cap: u128,
) -> Result<impl Iterator<Item = KripkeModel>, ModelError> {
    let space = ModelSpace::new(n, atoms)?;
    space.check_cap(cap)?;
    Ok((0..space.count()).map(move |i| space.decode(i)))
}
