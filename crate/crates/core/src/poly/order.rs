use std::cmp::Ordering;

use super::monomial::Monomial;

/// A monomial order on the ring's exponent vectors.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub enum MonomialOrder {
    /// Graded reverse lexicographic on declaration order.
    #[default]
    DegRevLex,
    /// Lexicographic with the first declared variable largest.
    Lex,
    /// Lexicographic with variables ranked by the given permutation of indices,
    /// most significant first.
    LexBy(Vec<usize>),
    /// Eliminates the first `k` variables: compares their total degree first,
    /// then breaks ties with degrevlex.
    Elimination(usize),
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::DegRevLex => degrevlex(a.exponents(), b.exponents()),
            MonomialOrder::Lex => a.exponents().cmp(b.exponents()),
            MonomialOrder::LexBy(priority) => {
                let (ea, eb) = (a.exponents(), b.exponents());
                for &i in priority {
                    match ea[i].cmp(&eb[i]) {
                        Ordering::Equal => continue,
                        o => return o,
                    }
                }
                Ordering::Equal
            }
            MonomialOrder::Elimination(k) => {
                let (ea, eb) = (a.exponents(), b.exponents());
                let da: u64 = ea[..*k].iter().map(|&e| e as u64).sum();
                let db: u64 = eb[..*k].iter().map(|&e| e as u64).sum();
                da.cmp(&db).then_with(|| degrevlex(ea, eb))
            }
        }
    }

    /// Checks that the order makes sense for a ring with `nvars` variables.
    pub fn is_valid_for(&self, nvars: usize) -> bool {
        match self {
            MonomialOrder::LexBy(p) => {
                let mut seen = vec![false; nvars];
                p.len() == nvars
                    && p.iter().all(|&i| i < nvars && !std::mem::replace(&mut seen[i], true))
            }
            MonomialOrder::Elimination(k) => *k <= nvars,
            _ => true,
        }
    }
}

#[inline]
pub(crate) fn degrevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&e| e as u64).sum();
    let db: u64 = b.iter().map(|&e| e as u64).sum();
    if da != db {
        return da.cmp(&db);
    }
    for i in (0..a.len()).rev() {
        if a[i] != b[i] {
            return b[i].cmp(&a[i]);
        }
    }
    Ordering::Equal
}
