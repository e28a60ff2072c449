use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactlin::{determinant_is_nonzero, Rational, SparseMatrix, SparseVec};
use crate::lie::LieAlgebra;
use crate::sullivan::{acyclic_closure, format_monomial, AcyclicClosure, Poly};
use crate::uea::TruncatedUEA;

use super::chevalley_eilenberg;

/// Pairing `ε_U(a·Φ)` between PBW monomials and fibre monomials of one weight.
#[derive(Clone, Debug)]
pub struct EtaBlock {
    pub weight: usize,
    pub rows: Vec<String>,
    pub cols: Vec<String>,
    pub matrix: SparseMatrix,
    pub nonsingular: bool,
}

#[derive(Clone, Debug)]
pub struct EtaReport {
    pub word_bound: usize,
    pub blocks: Vec<EtaBlock>,
    /// Number of holonomy evaluations checked for the filtration condition.
    pub holonomy_checks: usize,
    pub holonomy_ok: bool,
    pub holds: bool,
}

/// Compares `UL/J^n` with the acyclic closure of `C*(L)` through
/// `η(a)(Φ) = ε_U(a·Φ)`, weight by weight.
pub fn eta_check(l: &LieAlgebra, n: usize) -> Result<EtaReport> {
    if n == 0 {
        return Err(Error::Invalid("word bound must be positive".into()));
    }
    let uea = TruncatedUEA::new(l, n)?;
    let adapted = uea.adapted();
    let weights: Vec<u32> = adapted.depths.iter().map(|&d| d as u32).collect();
    let lie = LieAlgebra::new(
        adapted.lie.basis().with_weights(&weights)?,
        adapted
            .lie
            .stored_brackets()
            .map(|(i, j, v)| (i, j, v.clone()))
            .collect(),
    )?;
    let ce = chevalley_eilenberg(&lie).map_err(|_| {
        Error::Invalid("lower central series depths are not additive on the adapted basis".into())
    })?;
    let max_degree = uea
        .basis()
        .iter()
        .map(|m| uea.degree(m))
        .max()
        .unwrap_or(0)
        .max(0) as usize;
    let ac = acyclic_closure(&ce, max_degree + 1, n as u32 - 1)?;
    let mut position = vec![None; lie.dim()];
    for (k, &i) in ac.kept.iter().enumerate() {
        position[i] = Some(k);
    }
    let holonomies: Vec<_> = (0..lie.dim())
        .map(|i| position[i].map(|k| ac.holonomy(&SparseVec::unit(k))))
        .collect();
    let mut holonomy_checks = 0;
    let mut holonomy_ok = true;
    for k in 0..ac.kept.len() {
        holonomy_checks += 1;
        holonomy_ok &= ac.check_holonomy_containment(&SparseVec::unit(k));
    }

    let tg = ac.total().generators().clone();
    let mut blocks = Vec::new();
    for w in 0..n {
        let rows: Vec<&Vec<usize>> = uea.basis().iter().filter(|m| uea.weight(m) == w).collect();
        let cols: Vec<Vec<usize>> = ac
            .fibre_monomials(w as u32)
            .into_iter()
            .filter(|m| m.iter().map(|&x| tg.degree(x)).sum::<i32>() <= max_degree as i32)
            .collect();
        let mut matrix = SparseMatrix::zeros(rows.len(), cols.len());
        for (r, a) in rows.iter().enumerate() {
            for (c, m) in cols.iter().enumerate() {
                let value = pair(&ac, &holonomies, a, m)?;
                if !value.is_zero() {
                    matrix.set(r, c, value);
                }
            }
        }
        let nonsingular = rows.len() == cols.len() && determinant_is_nonzero(&matrix);
        blocks.push(EtaBlock {
            weight: w,
            rows: rows.iter().map(|m| uea.render(m).join("·")).collect(),
            cols: cols.iter().map(|m| format_monomial(&tg, m)).collect(),
            matrix,
            nonsingular,
        });
    }
    let holds = holonomy_ok && blocks.iter().all(|b| b.nonsingular);
    Ok(EtaReport {
        word_bound: n,
        blocks,
        holonomy_checks,
        holonomy_ok,
        holds,
    })
}

fn pair(
    ac: &AcyclicClosure,
    holonomies: &[Option<crate::sullivan::Holonomy>],
    a: &[usize],
    m: &[usize],
) -> Result<Rational> {
    let mut p = Poly::monomial(m.to_vec(), Rational::from_integer(1.into()));
    for &x in a.iter().rev() {
        let th = holonomies[x]
            .as_ref()
            .ok_or_else(|| Error::WindowExhausted("PBW factor outside the acyclic closure".into()))?;
        p = ac.apply_holonomy(th, &p);
        if p.is_zero() {
            break;
        }
    }
    Ok(AcyclicClosure::augmentation(&p))
}
