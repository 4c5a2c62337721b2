//! Normal forms of words in the stalk generators `Z_A^{[n]}` of the bounded algebra, computed
//! purely from the three defining relations.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::Zero;

use super::scalar::QSqrt;
use super::vector::HallVector;
use crate::cpx::{GradedObject, PeriodSpec};
use crate::error::{Error, Result};
use crate::hall::{aut, euler_q, extensions, hall_table, rat_u64};
use crate::repcat::{Category, IsoClassId};

/// Default number of rule applications before giving up.
pub const DEFAULT_REWRITE_BUDGET: usize = 1 << 20;

type Word = Vec<(IsoClassId, i64)>;

/// `(M, N, gamma_{AB}^{MN})` for all nonzero coefficients.
pub fn gamma_terms(
    cat: &Category,
    a: &IsoClassId,
    b: &IsoClassId,
) -> Result<Vec<(IsoClassId, IsoClassId, BigRational)>> {
    let tb = hall_table(cat, b)?;
    let ta = hall_table(cat, a)?;
    let mut acc: BTreeMap<(IsoClassId, IsoClassId), BigRational> = BTreeMap::new();
    for (&(i, m), &g1) in tb.iter() {
        for (&(n, i2), &g2) in ta.iter() {
            if i2 != i {
                continue;
            }
            *acc.entry((m, n)).or_insert_with(BigRational::zero) +=
                rat_u64(g1 * g2) * aut(cat, &m)? * aut(cat, &n)? * aut(cat, &i)?;
        }
    }
    let norm = aut(cat, a)? * aut(cat, b)?;
    Ok(acc.into_iter().map(|((m, n), c)| (m, n, c / &norm)).collect())
}

fn push(out: &mut BTreeMap<Word, BigRational>, w: Word, c: BigRational) {
    if c.is_zero() {
        return;
    }
    let w: Word = w.into_iter().filter(|(x, _)| !x.is_zero()).collect();
    let e = out.entry(w).or_insert_with(BigRational::zero);
    *e += c;
}

/// One rewrite of the leftmost non-descending adjacent pair, or `None` for a terminal word.
fn step(cat: &Category, w: &Word) -> Result<Option<Vec<(Word, BigRational)>>> {
    let Some(p) = (0..w.len().saturating_sub(1)).find(|&p| w[p].1 <= w[p + 1].1) else {
        return Ok(None);
    };
    let (x, n) = w[p];
    let (y, m) = w[p + 1];
    let splice = |mid: &[(IsoClassId, i64)]| -> Word {
        let mut v = w[..p].to_vec();
        v.extend_from_slice(mid);
        v.extend_from_slice(&w[p + 2..]);
        v
    };
    let mut out = Vec::new();
    if n == m {
        for &(c, g) in extensions(cat, &x, &y)?.iter() {
            out.push((splice(&[(c, n)]), rat_u64(g)));
        }
    } else if m == n + 1 {
        // Z_B^{[n]} Z_A^{[n+1]} with B = x, A = y
        for (mm, nn, g) in gamma_terms(cat, &y, &x)? {
            let c = g / euler_q(cat, &nn.dims(), &mm.dims());
            out.push((splice(&[(nn, n + 1), (mm, n)]), c));
        }
    } else {
        let e = euler_q(cat, &y.dims(), &x.dims());
        let c = if (m - n) % 2 == 0 { e } else { e.recip() };
        out.push((splice(&[(y, m), (x, n)]), c));
    }
    Ok(Some(out))
}

/// Rewrites a word of stalk generators (class, degree), read left to right, into a combination
/// of strictly descending words, each of which is read as the graded object it spans.
pub fn normalize_generator_word(cat: &Category, word: &[(IsoClassId, i64)], budget: usize) -> Result<HallVector> {
    let q = cat.q();
    let mut pending: BTreeMap<Word, BigRational> = BTreeMap::new();
    push(&mut pending, word.to_vec(), BigRational::from_integer(1.into()));
    let mut done: BTreeMap<Word, BigRational> = BTreeMap::new();
    let mut steps = 0usize;
    while let Some((w, c)) = pending.pop_first() {
        if c.is_zero() {
            continue;
        }
        match step(cat, &w)? {
            None => push(&mut done, w, c),
            Some(next) => {
                steps += 1;
                if steps > budget {
                    return Err(Error::RewriteBudgetExceeded(budget));
                }
                for (w2, c2) in next {
                    push(&mut pending, w2, &c * c2);
                }
            }
        }
    }
    let mut out = HallVector::zero(q);
    for (w, c) in done {
        let g = GradedObject::new(PeriodSpec::bounded(), w.iter().map(|&(x, d)| (d, x)))?;
        out.add_term(g, QSqrt::rational(c, q));
    }
    Ok(out)
}

/// The descending word of stalks whose product is `g`.
pub fn generator_decomposition(g: &GradedObject) -> Vec<(IsoClassId, i64)> {
    g.components().iter().rev().map(|&(d, x)| (x, d)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::repcat::Quiver;
    use crate::Limits;

    #[test]
    fn spec_examples() {
        let cat = Category::new(Quiver::a_n(1), 2, Limits::default()).unwrap();
        let k = cat.parse_label("k1").unwrap();
        let k2 = cat.parse_label("k2").unwrap();
        let v = normalize_generator_word(&cat, &[(k, 0), (k, 0)], DEFAULT_REWRITE_BUDGET).unwrap();
        let want = GradedObject::stalk(PeriodSpec::bounded(), k2, 0);
        assert_eq!(v.to_string_map(), [(want.to_string(), "3 + 0*v".to_string())].into());
        let unit = normalize_generator_word(&cat, &[], DEFAULT_REWRITE_BUDGET).unwrap();
        assert_eq!(unit, HallVector::basis(GradedObject::zero(PeriodSpec::bounded()), 2));

        let a2 = Category::new(Quiver::a_n(2), 2, Limits::default()).unwrap();
        let s1 = a2.parse_label("k1.0").unwrap();
        let s2 = a2.parse_label("k0.1").unwrap();
        let v = normalize_generator_word(&a2, &[(s2, 0), (s1, 2)], DEFAULT_REWRITE_BUDGET).unwrap();
        let g = GradedObject::new(PeriodSpec::bounded(), [(0, s2), (2, s1)]).unwrap();
        assert_eq!(v.to_string_map(), [(g.to_string(), "1/2 + 0*v".to_string())].into());
    }

    #[test]
    fn budget_is_enforced() {
        let cat = Category::new(Quiver::a_n(1), 2, Limits::default()).unwrap();
        let k = cat.parse_label("k1").unwrap();
        let err = normalize_generator_word(&cat, &[(k, 0), (k, 1)], 0).unwrap_err();
        assert_eq!(err, Error::RewriteBudgetExceeded(0));
    }
}
