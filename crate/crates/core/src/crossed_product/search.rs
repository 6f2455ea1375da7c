//! Bounded searches for degeneracy witnesses. Finding nothing proves nothing.

use alloc::vec::Vec;

use super::{CrossedProduct, DegeneracyPairWitness, StrongDegeneracyWitness};
use crate::error::{Error, Result};
use crate::field::{FieldElement, GaloisExtension, Hilbert90};

/// What a search covered before giving up.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Exhausted {
    /// Group exponents (or pairs of them) examined.
    pub exponents: usize,
    pub candidates: usize,
}

impl Exhausted {
    pub const DISCLAIMER: &'static str =
        "no witness among the candidates; this is not a proof of non-degeneracy";
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome<W> {
    Found(W),
    Exhausted(Exhausted),
}

impl<W> SearchOutcome<W> {
    pub fn found(self) -> Option<W> {
        match self {
            SearchOutcome::Found(w) => Some(w),
            SearchOutcome::Exhausted(_) => None,
        }
    }
}

/// The basis, its negatives, then products of two basis elements, without
/// repeats.
pub fn default_candidates(ext: &GaloisExtension) -> Vec<FieldElement> {
    let n = ext.dim();
    let basis: Vec<FieldElement> = (0..n).map(|k| ext.basis(k)).collect();
    let mut out: Vec<FieldElement> = Vec::new();
    let mut push = |x: FieldElement| {
        if !x.is_zero() && !out.contains(&x) {
            out.push(x);
        }
    };
    for b in &basis {
        push(b.clone());
    }
    for b in &basis {
        push(ext.neg(b));
    }
    for i in 0..n {
        for j in i..n {
            push(ext.mul(&basis[i], &basis[j]));
        }
    }
    out
}

/// Tries every prime-order `m` (lexicographic) against every candidate `l`
/// (in order) and stops at the first pair meeting the norm criterion
/// `N_m(sigma_i(l) l^{-1} u_{i,m}) = 1` for all `i`. An empty candidate list
/// is simply exhausted.
pub fn search_strong_degeneracy(
    alg: &CrossedProduct,
    candidates: &[FieldElement],
) -> Result<SearchOutcome<StrongDegeneracyWitness>> {
    for c in candidates {
        alg.ext().check(c)?;
    }
    let exponents = alg.ext().group().prime_order_elements();
    for (m, _) in &exponents {
        for l in candidates.iter().filter(|l| !l.is_zero()) {
            if let Some(w) = alg.solve_strong(m, l)? {
                return Ok(SearchOutcome::Found(w));
            }
        }
    }
    Ok(SearchOutcome::Exhausted(Exhausted { exponents: exponents.len(), candidates: candidates.len() }))
}

/// Tries pairs `m < n` with `<sigma^m, sigma^n>` noncyclic against every
/// candidate `a`, solving `sigma^n(b)/b = u_{m,n} a / sigma^m(a)` by
/// Hilbert 90. For `C_p x C_p` the pair `(e_1, e_2)` comes first, since
/// degeneracy there is decided by `u_12` alone.
pub fn search_degeneracy(
    alg: &CrossedProduct,
    candidates: &[FieldElement],
) -> Result<SearchOutcome<DegeneracyPairWitness>> {
    let ext = alg.ext();
    for c in candidates {
        ext.check(c)?;
    }
    let grp = ext.group();
    let mut pairs = Vec::new();
    if grp.rank() == 2 && grp.orders()[0] == grp.orders()[1] {
        pairs.push((grp.generator(0), grp.generator(1)));
    }
    let elements: Vec<_> = grp.elements().skip(1).collect();
    for (k, m) in elements.iter().enumerate() {
        for n in &elements[k + 1..] {
            let pair = (m.clone(), n.clone());
            if !pairs.contains(&pair) && !grp.span_is_cyclic(&[m.clone(), n.clone()]) {
                pairs.push(pair);
            }
        }
    }
    for (m, n) in &pairs {
        let u = alg.commutator_u(m, n)?;
        for a in candidates.iter().filter(|a| !a.is_zero()) {
            let target = ext.div(&ext.mul(&u, a), &ext.act(m, a))?;
            if let Hilbert90::Solution(b) = ext.hilbert90_solve(n, &target)? {
                let w = DegeneracyPairWitness { m: m.clone(), n: n.clone(), a: a.clone(), b };
                if !alg.check_pair_witness(&w)? {
                    return Err(Error::Internal("pair witness from Hilbert 90 failed its check".into()));
                }
                return Ok(SearchOutcome::Found(w));
            }
        }
    }
    Ok(SearchOutcome::Exhausted(Exhausted { exponents: pairs.len(), candidates: candidates.len() }))
}
