//! JSON schemas for Lie algebras, Sullivan algebras, finite cdgas and
//! elements. Rationals are strings `"num/den"`; indices in input files refer
//! to list order and are converted to canonical order on load.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactlin::rational::serde_rational;
use crate::exactlin::{format_rational, BasisElement, GradedBasis, Rational, SparseVec};
use crate::lie::LieAlgebra;
use crate::sullivan::{FiniteCdga, Poly, SullivanAlgebra, Truncation};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisJson {
    pub name: String,
    pub degree: i32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weight: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub k: usize,
    #[serde(with = "serde_rational")]
    pub coeff: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BracketJson {
    pub i: usize,
    pub j: usize,
    pub out: Vec<TermJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LieJson {
    pub basis: Vec<BasisJson>,
    #[serde(default)]
    pub brackets: Vec<BracketJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialJson {
    pub monomial: Vec<String>,
    #[serde(with = "serde_rational")]
    pub coeff: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DifferentialJson {
    pub gen: String,
    pub value: Vec<MonomialJson>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TruncationJson {
    #[serde(rename = "N")]
    pub n: usize,
    #[serde(rename = "K")]
    pub k: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SullivanJson {
    pub generators: Vec<BasisJson>,
    #[serde(default)]
    pub differential: Vec<DifferentialJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub truncation: Option<TruncationJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CdgaDifferentialJson {
    pub i: usize,
    pub out: Vec<TermJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteCdgaJson {
    pub basis: Vec<BasisJson>,
    #[serde(default)]
    pub products: Vec<BracketJson>,
    #[serde(default)]
    pub differential: Vec<CdgaDifferentialJson>,
}

fn basis_json(b: &GradedBasis) -> Vec<BasisJson> {
    b.iter()
        .map(|e| BasisJson {
            name: e.name.clone(),
            degree: e.degree,
            weight: e.weight,
        })
        .collect()
}

fn load_basis(list: &[BasisJson]) -> Result<(GradedBasis, Vec<usize>)> {
    let weighted = list.iter().filter(|e| e.weight.is_some()).count();
    if weighted != 0 && weighted != list.len() {
        return Err(Error::Invalid("weights must be given for all or none".into()));
    }
    GradedBasis::with_permutation(
        list.iter()
            .map(|e| BasisElement {
                name: e.name.clone(),
                degree: e.degree,
                weight: e.weight,
            })
            .collect(),
    )
}

fn terms_json(v: &SparseVec) -> Vec<TermJson> {
    v.iter()
        .map(|(k, c)| TermJson {
            k,
            coeff: c.clone(),
        })
        .collect()
}

fn load_terms(terms: &[TermJson], perm: &[usize]) -> Result<SparseVec> {
    let mut v = SparseVec::new();
    for t in terms {
        let k = *perm
            .get(t.k)
            .ok_or_else(|| Error::Invalid(format!("index {} out of range", t.k)))?;
        v.add_at(k, &t.coeff);
    }
    Ok(v)
}

fn index(perm: &[usize], i: usize) -> Result<usize> {
    perm.get(i)
        .copied()
        .ok_or_else(|| Error::Invalid(format!("index {i} out of range")))
}

impl LieJson {
    pub fn from_lie(l: &LieAlgebra) -> Self {
        LieJson {
            basis: basis_json(l.basis()),
            brackets: l
                .stored_brackets()
                .map(|(i, j, v)| BracketJson {
                    i,
                    j,
                    out: terms_json(v),
                })
                .collect(),
        }
    }

    pub fn to_lie(&self) -> Result<LieAlgebra> {
        let (basis, perm) = load_basis(&self.basis)?;
        let mut entries = Vec::new();
        for b in &self.brackets {
            entries.push((index(&perm, b.i)?, index(&perm, b.j)?, load_terms(&b.out, &perm)?));
        }
        LieAlgebra::new(basis, entries)
    }
}

pub fn poly_json(gens: &GradedBasis, p: &Poly) -> Vec<MonomialJson> {
    p.iter()
        .map(|(m, c)| MonomialJson {
            monomial: m.iter().map(|&i| gens.name(i).to_string()).collect(),
            coeff: c.clone(),
        })
        .collect()
}

/// Reads a polynomial given by generator names (in any order, Koszul signs
/// applied when sorting).
pub fn load_poly(gens: &GradedBasis, terms: &[MonomialJson]) -> Result<Poly> {
    let mut p = Poly::zero();
    for t in terms {
        let word = t
            .monomial
            .iter()
            .map(|n| {
                gens.index_of(n)
                    .ok_or_else(|| Error::Invalid(format!("unknown generator {n:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        p.axpy(&t.coeff, &crate::sullivan::word_to_poly(gens, &word));
    }
    Ok(p)
}

impl SullivanJson {
    pub fn from_sullivan(a: &SullivanAlgebra, t: Option<&Truncation>) -> Self {
        let gens = a.generators();
        SullivanJson {
            generators: basis_json(gens),
            differential: (0..a.len())
                .filter(|&i| !a.d_generator(i).is_zero())
                .map(|i| DifferentialJson {
                    gen: gens.name(i).to_string(),
                    value: poly_json(gens, a.d_generator(i)),
                })
                .collect(),
            truncation: t.map(|t| TruncationJson { n: t.n, k: t.k }),
        }
    }

    pub fn to_sullivan(&self) -> Result<SullivanAlgebra> {
        let (gens, _) = load_basis(&self.generators)?;
        let mut diffs = vec![Poly::zero(); gens.len()];
        let mut seen = vec![false; gens.len()];
        for d in &self.differential {
            let i = gens
                .index_of(&d.gen)
                .ok_or_else(|| Error::Invalid(format!("unknown generator {:?}", d.gen)))?;
            if std::mem::replace(&mut seen[i], true) {
                return Err(Error::Invalid(format!("d({}) given twice", d.gen)));
            }
            diffs[i] = load_poly(&gens, &d.value)?;
        }
        SullivanAlgebra::new(gens, diffs)
    }

    pub fn truncation(&self) -> Result<Option<Truncation>> {
        self.truncation
            .map(|t| Truncation::new(t.n, t.k))
            .transpose()
    }
}

impl FiniteCdgaJson {
    pub fn from_cdga(a: &FiniteCdga) -> Self {
        FiniteCdgaJson {
            basis: basis_json(a.basis()),
            products: a
                .products()
                .map(|(i, j, v)| BracketJson {
                    i,
                    j,
                    out: terms_json(v),
                })
                .collect(),
            differential: (0..a.dim())
                .filter(|&i| !a.differential_of(i).is_zero())
                .map(|i| CdgaDifferentialJson {
                    i,
                    out: terms_json(a.differential_of(i)),
                })
                .collect(),
        }
    }

    pub fn to_cdga(&self) -> Result<FiniteCdga> {
        let (basis, perm) = load_basis(&self.basis)?;
        let mut products = Vec::new();
        for p in &self.products {
            products.push((index(&perm, p.i)?, index(&perm, p.j)?, load_terms(&p.out, &perm)?));
        }
        let mut differential = Vec::new();
        for d in &self.differential {
            differential.push((index(&perm, d.i)?, load_terms(&d.out, &perm)?));
        }
        FiniteCdga::new(basis, products, differential)
    }
}

/// Parses `2 x - 1/2 [x,y] + z` into coordinates over `basis`. Names must not
/// contain spaces; terms are separated by ` + ` and ` - `.
pub fn parse_combination(basis: &GradedBasis, text: &str) -> Result<SparseVec> {
    let mut v = SparseVec::new();
    let text = text.trim();
    if text == "0" {
        return Ok(v);
    }
    let mut tokens = text.split_whitespace().peekable();
    let mut negative = false;
    let mut expect_term = true;
    let mut coeff: Option<Rational> = None;
    while let Some(tok) = tokens.next() {
        if !expect_term {
            match tok {
                "+" => negative = false,
                "-" => negative = true,
                _ => return Err(Error::Invalid(format!("expected + or - before {tok:?}"))),
            }
            expect_term = true;
            continue;
        }
        if coeff.is_none() && tok == "-" {
            negative = !negative;
            continue;
        }
        let tok = match tok.strip_prefix('-') {
            Some(rest) if coeff.is_none() && basis.index_of(tok).is_none() => {
                negative = !negative;
                rest
            }
            _ => tok,
        };
        if coeff.is_none() {
            if let Some(c) = crate::exactlin::parse_rational(tok) {
                if tokens.peek().is_some_and(|t| *t != "+" && *t != "-") {
                    coeff = Some(c);
                    continue;
                }
            }
        }
        let i = basis
            .index_of(tok)
            .ok_or_else(|| Error::Invalid(format!("unknown basis element {tok:?}")))?;
        let mut c = coeff.take().unwrap_or_else(|| Rational::from_integer(1.into()));
        if negative {
            c = -c;
        }
        v.add_at(i, &c);
        negative = false;
        expect_term = false;
    }
    if expect_term {
        return Err(Error::Invalid(format!("incomplete expression {text:?}")));
    }
    Ok(v)
}

pub fn format_coefficient(c: &Rational) -> String {
    format_rational(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::rat;

    const HEIS: &str = r#"{"basis":[{"name":"z","degree":0},{"name":"x","degree":0},{"name":"y","degree":0}],
        "brackets":[{"i":1,"j":2,"out":[{"k":0,"coeff":"1"}]}]}"#;

    #[test]
    fn lie_round_trip() {
        let j: LieJson = serde_json::from_str(HEIS).unwrap();
        let l = j.to_lie().unwrap();
        assert_eq!(l.basis().name(0), "z");
        let again = LieJson::from_lie(&l).to_lie().unwrap();
        assert_eq!(again, l);
    }

    #[test]
    fn combinations() {
        let l: LieJson = serde_json::from_str(HEIS).unwrap();
        let l = l.to_lie().unwrap();
        let v = parse_combination(l.basis(), "x - 1/2 z + 2 y").unwrap();
        assert_eq!(v.get(0), rat(-1, 2));
        assert_eq!(v.get(2), rat(2, 1));
        assert_eq!(l.format_vector(&v), "-1/2 z + x + 2 y");
        assert!(parse_combination(l.basis(), "x +").is_err());
        assert!(parse_combination(l.basis(), "w").is_err());
        assert_eq!(parse_combination(l.basis(), "-x").unwrap().get(1), rat(-1, 1));
    }

    #[test]
    fn sullivan_round_trip() {
        let text = r#"{"generators":[{"name":"a","degree":2},{"name":"b","degree":3}],
            "differential":[{"gen":"b","value":[{"monomial":["a","a"],"coeff":"1"}]}],
            "truncation":{"N":6,"K":2}}"#;
        let j: SullivanJson = serde_json::from_str(text).unwrap();
        let a = j.to_sullivan().unwrap();
        let t = j.truncation().unwrap();
        let back = SullivanJson::from_sullivan(&a, t.as_ref());
        assert_eq!(back, j);
    }
}
