//! Seeded random formulas and models.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::formula::{LdFormula, Symbol};
use crate::kripke::{KripkeModel, ModelError, ModelSpace};

/// Shape bounds for random `L_d` formulas.
#[derive(Clone, Debug)]
pub struct FormulaShape {
    pub atoms: Vec<Symbol>,
    /// Exact node count of generated formulas.
    pub size: usize,
    pub max_del_depth: usize,
}

impl FormulaShape {
    pub fn new<S: AsRef<str>>(atoms: &[S], size: usize, max_del_depth: usize) -> FormulaShape {
        FormulaShape {
            atoms: atoms.iter().map(|a| Symbol::from(a.as_ref())).collect(),
            size: size.max(1),
            max_del_depth,
        }
    }
}

/// A random core-constructor formula with exactly `shape.size` nodes and
/// deletion depth at most `shape.max_del_depth`.
pub fn random_formula<R: Rng>(rng: &mut R, shape: &FormulaShape) -> LdFormula {
    grow(rng, &shape.atoms, shape.size, shape.max_del_depth)
}

fn grow<R: Rng>(rng: &mut R, atoms: &[Symbol], size: usize, dels: usize) -> LdFormula {
    if size == 1 {
        return match atoms.choose(rng) {
            Some(a) if rng.gen_ratio(5, 6) => LdFormula::Atom(a.clone()),
            _ => LdFormula::Top,
        };
    }
    let binary = size >= 3;
    let choice = if !binary {
        rng.gen_range(0..2)
    } else if dels == 0 {
        rng.gen_range(0..3)
    } else {
        rng.gen_range(0..4)
    };
    match choice {
        0 => LdFormula::not(grow(rng, atoms, size - 1, dels)),
        1 => LdFormula::boxed(grow(rng, atoms, size - 1, dels)),
        2 => {
            let left = rng.gen_range(1..size - 1);
            let a = grow(rng, atoms, left, dels);
            LdFormula::and(a, grow(rng, atoms, size - 1 - left, dels))
        }
        _ => {
            let left = rng.gen_range(1..size - 1);
            let g = grow(rng, atoms, left, dels - 1);
            LdFormula::del(g, grow(rng, atoms, size - 1 - left, dels - 1))
        }
    }
}

/// A uniformly random model with between one and `max_worlds` worlds; the
/// world count itself is uniform.
pub fn random_model<R: Rng, S: AsRef<str>>(
    rng: &mut R,
    max_worlds: usize,
    atoms: &[S],
) -> Result<KripkeModel, ModelError> {
    let n = rng.gen_range(1..=max_worlds.max(1));
    Ok(ModelSpace::new(n, atoms)?.sample(rng))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::metrics;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn respects_shape() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for size in 1..30 {
            for dd in 0..3 {
                let f = random_formula(&mut rng, &FormulaShape::new(&["p", "q"], size, dd));
                let m = metrics(&f);
                assert_eq!(m.size, size);
                assert!(m.del_depth <= dd);
            }
        }
    }

    #[test]
    fn seeded_output_is_stable() {
        let shape = FormulaShape::new(&["p"], 12, 2);
        let a = random_formula(&mut ChaCha8Rng::seed_from_u64(9), &shape);
        let b = random_formula(&mut ChaCha8Rng::seed_from_u64(9), &shape);
        assert_eq!(a, b);
    }
}
