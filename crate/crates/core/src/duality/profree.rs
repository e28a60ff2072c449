use crate::error::Result;
use crate::sullivan::{wedge_graded_cohomology, Poly, SullivanAlgebra, Truncation};

/// A closed class of wedge degree `≥ 2` that is not a boundary.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProfreeWitness {
    pub degree: usize,
    pub wedge: usize,
    pub cocycle: Poly,
    /// e.g. `[v∧w]`
    pub rendered: String,
}

/// Outcome of the profreeness test. `true` only holds within `truncation`;
/// `false` comes with a witness and holds outright.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProfreeCertificate {
    pub verdict: bool,
    pub truncation: Truncation,
    pub weight_bound: Option<usize>,
    pub witness: Option<ProfreeWitness>,
    /// Nonzero `dim H^{[k]}` in degree `n`, as `(n, k, dim)`.
    pub dims: Vec<(usize, usize, usize)>,
}

/// `L` is profree iff `H(∧V) = ℚ ⊕ H^{[1]}`, i.e. every `H^{[k]}`, `k ≥ 2`,
/// vanishes.
pub fn profree_check(a: &SullivanAlgebra, t: &Truncation) -> Result<ProfreeCertificate> {
    a.require_valid()?;
    let h = wedge_graded_cohomology(a, t)?;
    let witness = h.higher.first().map(|(degree, wedge, p)| ProfreeWitness {
        degree: *degree,
        wedge: *wedge,
        rendered: format!("[{}]", a.format(p)),
        cocycle: p.clone(),
    });
    Ok(ProfreeCertificate {
        verdict: witness.is_none(),
        truncation: *t,
        weight_bound: h.weight_bound,
        witness,
        dims: h.dims.iter().map(|(&(n, k), &d)| (n, k, d)).collect(),
    })
}
