//! Truncated universal enveloping algebras `UL/J^n` on PBW monomials.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Mutex;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactlin::rational::sign;
use crate::exactlin::{format_rational, int, Rational, SparseVec};
use crate::lie::{AdaptedBasis, LieAlgebra};

/// Weakly increasing list of basis indices of `L`.
pub type Monomial = Vec<usize>;

static NEXT_OWNER: AtomicU64 = AtomicU64::new(1);

/// `UL/J^n` for a nilpotent `L`, where `J` is the augmentation ideal.
///
/// `L` is used in an LCS-adapted basis; the J-adic weight of a PBW monomial
/// is the sum of the LCS depths of its factors.
#[derive(Debug)]
pub struct TruncatedUEA {
    owner: u64,
    adapted: AdaptedBasis,
    word_bound: usize,
    monomials: Vec<Monomial>,
    memo: Mutex<HashMap<Vec<usize>, BTreeMap<Monomial, Rational>>>,
}

/// Element of a [`TruncatedUEA`].
#[derive(Clone, PartialEq, Eq)]
pub struct UEAElement {
    owner: u64,
    terms: BTreeMap<Monomial, Rational>,
}

/// Element of `UL/J^n ⊗ UL/J^n`, keyed by pairs of PBW monomials.
pub type TensorElement = BTreeMap<(Monomial, Monomial), Rational>;

/// Group-like element: augmentation 1 and `Δg = g ⊗ g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupLikeElement(UEAElement);

impl GroupLikeElement {
    pub fn element(&self) -> &UEAElement {
        &self.0
    }
}

fn add_into(map: &mut BTreeMap<Monomial, Rational>, m: Monomial, c: Rational) {
    if c.is_zero() {
        return;
    }
    use std::collections::btree_map::Entry;
    match map.entry(m) {
        Entry::Vacant(e) => {
            e.insert(c);
        }
        Entry::Occupied(mut e) => {
            *e.get_mut() += c;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

impl UEAElement {
    pub fn terms(&self) -> &BTreeMap<Monomial, Rational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &[usize]) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn augmentation(&self) -> Rational {
        self.coefficient(&[])
    }

    pub fn add(&self, other: &UEAElement) -> Result<UEAElement> {
        self.same_owner(other)?;
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            add_into(&mut terms, m.clone(), c.clone());
        }
        Ok(UEAElement {
            owner: self.owner,
            terms,
        })
    }

    pub fn sub(&self, other: &UEAElement) -> Result<UEAElement> {
        self.add(&other.scaled(&-Rational::one()))
    }

    pub fn scaled(&self, c: &Rational) -> UEAElement {
        let terms = if c.is_zero() {
            BTreeMap::new()
        } else {
            self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect()
        };
        UEAElement {
            owner: self.owner,
            terms,
        }
    }

    fn same_owner(&self, other: &UEAElement) -> Result<()> {
        if self.owner == other.owner {
            Ok(())
        } else {
            Err(Error::OwnerMismatch)
        }
    }
}

impl fmt::Debug for UEAElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.terms)
    }
}

impl TruncatedUEA {
    pub fn new(lie: &LieAlgebra, word_bound: usize) -> Result<Self> {
        if word_bound == 0 {
            return Err(Error::Invalid("word bound must be at least 1".into()));
        }
        let adapted = AdaptedBasis::new(lie)?;
        let mut monomials = Vec::new();
        let mut current = Vec::new();
        enumerate(&adapted, word_bound, 0, 0, &mut current, &mut monomials);
        monomials.sort_by(|a, b| {
            let wa: usize = a.iter().map(|&i| adapted.depths[i]).sum();
            let wb: usize = b.iter().map(|&i| adapted.depths[i]).sum();
            (wa, a.len(), a).cmp(&(wb, b.len(), b))
        });
        Ok(TruncatedUEA {
            owner: NEXT_OWNER.fetch_add(1, Ordering::Relaxed),
            adapted,
            word_bound,
            monomials,
            memo: Mutex::new(HashMap::new()),
        })
    }

    /// The Lie algebra in the adapted basis used for PBW monomials.
    pub fn lie(&self) -> &LieAlgebra {
        &self.adapted.lie
    }

    pub fn adapted(&self) -> &AdaptedBasis {
        &self.adapted
    }

    pub fn word_bound(&self) -> usize {
        self.word_bound
    }

    /// PBW basis ordered by (J-adic weight, length, indices).
    pub fn basis(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn dim(&self) -> usize {
        self.monomials.len()
    }

    pub fn weight(&self, m: &[usize]) -> usize {
        m.iter().map(|&i| self.adapted.depths[i]).sum()
    }

    pub fn degree(&self, m: &[usize]) -> i32 {
        m.iter().map(|&i| self.adapted.lie.degree(i)).sum()
    }

    pub fn render(&self, m: &[usize]) -> Vec<String> {
        m.iter()
            .map(|&i| self.adapted.lie.basis().name(i).to_string())
            .collect()
    }

    pub fn format(&self, a: &UEAElement) -> String {
        if a.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (n, (m, c)) in a.terms.iter().enumerate() {
            let negative = c < &Rational::zero();
            if n > 0 {
                out.push_str(if negative { " - " } else { " + " });
            } else if negative {
                out.push('-');
            }
            let mag = if negative { -c.clone() } else { c.clone() };
            let word = self.render(m).join(" ");
            if m.is_empty() {
                out.push_str(&format_rational(&mag));
            } else {
                if !mag.is_one() {
                    out.push_str(&format_rational(&mag));
                    out.push(' ');
                }
                out.push_str(&word);
            }
        }
        out
    }

    fn element(&self, terms: BTreeMap<Monomial, Rational>) -> UEAElement {
        UEAElement {
            owner: self.owner,
            terms,
        }
    }

    pub fn zero(&self) -> UEAElement {
        self.element(BTreeMap::new())
    }

    pub fn one(&self) -> UEAElement {
        self.monomial(Vec::new(), Rational::one())
    }

    pub fn monomial(&self, m: Monomial, c: Rational) -> UEAElement {
        let mut terms = BTreeMap::new();
        for (mm, cc) in self.normal_form(&m) {
            add_into(&mut terms, mm, cc * &c);
        }
        self.element(terms)
    }

    /// Image of `x ∈ L`, given in the coordinates of the original basis.
    pub fn from_lie(&self, x: &SparseVec) -> UEAElement {
        let coords = self.adapted.to_adapted(x);
        let mut terms = BTreeMap::new();
        for (k, c) in coords.iter() {
            if self.adapted.depths[k] < self.word_bound {
                add_into(&mut terms, vec![k], c.clone());
            }
        }
        self.element(terms)
    }

    /// Inverse of [`from_lie`](Self::from_lie) on primitive elements; `None`
    /// if a monomial of length other than 1 occurs.
    pub fn to_lie(&self, a: &UEAElement) -> Option<SparseVec> {
        let mut coords = SparseVec::new();
        for (m, c) in &a.terms {
            if m.len() != 1 {
                return None;
            }
            coords.add_at(m[0], c);
        }
        Some(self.adapted.from_adapted(&coords))
    }

    pub fn mul(&self, a: &UEAElement, b: &UEAElement) -> Result<UEAElement> {
        self.check(a)?;
        self.check(b)?;
        let mut terms = BTreeMap::new();
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                if self.weight(ma) + self.weight(mb) >= self.word_bound {
                    continue;
                }
                let mut word = ma.clone();
                word.extend_from_slice(mb);
                let coeff = ca * cb;
                for (m, c) in self.normal_form(&word) {
                    add_into(&mut terms, m, c * &coeff);
                }
            }
        }
        Ok(self.element(terms))
    }

    fn check(&self, a: &UEAElement) -> Result<()> {
        if a.owner == self.owner {
            Ok(())
        } else {
            Err(Error::OwnerMismatch)
        }
    }

    /// PBW normal form of a word in the adapted basis, weight `>= n` dropped.
    fn normal_form(&self, word: &[usize]) -> BTreeMap<Monomial, Rational> {
        if let Some(hit) = self.memo.lock().expect("memo").get(word) {
            return hit.clone();
        }
        let result = self.straighten(word);
        self.memo
            .lock()
            .expect("memo")
            .insert(word.to_vec(), result.clone());
        result
    }

    fn straighten(&self, word: &[usize]) -> BTreeMap<Monomial, Rational> {
        let mut out = BTreeMap::new();
        if self.weight(word) >= self.word_bound {
            return out;
        }
        let lie = &self.adapted.lie;
        let odd = |i: usize| lie.degree(i) % 2 != 0;
        let pos = (0..word.len().saturating_sub(1))
            .find(|&p| word[p] > word[p + 1] || (word[p] == word[p + 1] && odd(word[p])));
        let Some(p) = pos else {
            out.insert(word.to_vec(), Rational::one());
            return out;
        };
        let (x, y) = (word[p], word[p + 1]);
        let replace = |mid: &[usize]| -> Vec<usize> {
            let mut w = word[..p].to_vec();
            w.extend_from_slice(mid);
            w.extend_from_slice(&word[p + 2..]);
            w
        };
        let half = if x == y { int(1) / int(2) } else { int(1) };
        if x != y {
            let s = sign(lie.degree(x) as i64 * lie.degree(y) as i64);
            for (m, c) in self.normal_form(&replace(&[y, x])) {
                add_into(&mut out, m, c * &s);
            }
        }
        for (k, ck) in lie.bracket_basis(x, y).iter() {
            let coeff = ck * &half;
            for (m, c) in self.normal_form(&replace(&[k])) {
                add_into(&mut out, m, c * &coeff);
            }
        }
        out
    }

    /// `exp x = sum_{k<n} x^k / k!` for `x` in the augmentation ideal, degree 0.
    pub fn exp(&self, x: &UEAElement) -> Result<GroupLikeElement> {
        self.check(x)?;
        if !x.augmentation().is_zero() {
            return Err(Error::Invalid("exp needs an element without constant term".into()));
        }
        if x.terms.keys().any(|m| self.degree(m) != 0) {
            return Err(Error::Invalid("exp is only defined in degree 0".into()));
        }
        let mut result = self.one();
        let mut power = self.one();
        for k in 1..self.word_bound {
            power = self.mul(&power, x)?;
            if power.is_zero() {
                break;
            }
            result = result.add(&power.scaled(&(int(1) / crate::exactlin::rational::factorial(k))))?;
        }
        Ok(GroupLikeElement(result))
    }

    /// `log g = sum_{k<n} (-1)^{k+1} (g-1)^k / k`; rejects elements that are
    /// not group-like.
    pub fn log(&self, g: &UEAElement) -> Result<UEAElement> {
        self.check(g)?;
        self.group_like(g)?;
        Ok(self.log_series(g))
    }

    fn log_series(&self, g: &UEAElement) -> UEAElement {
        let y = g.sub(&self.one()).expect("same owner");
        let mut result = self.zero();
        let mut power = self.one();
        for k in 1..self.word_bound {
            power = self.mul(&power, &y).expect("same owner");
            if power.is_zero() {
                break;
            }
            let c = sign(k as i64 + 1) / int(k as i64);
            result = result.add(&power.scaled(&c)).expect("same owner");
        }
        result
    }

    /// Wraps `g` after checking augmentation 1 and `Δg = g ⊗ g`.
    pub fn group_like(&self, g: &UEAElement) -> Result<GroupLikeElement> {
        self.check(g)?;
        if !g.augmentation().is_one() {
            return Err(Error::NotGroupLike("augmentation is not 1".into()));
        }
        let residual = self.tensor_sub(&self.coproduct(g), &self.tensor_square(g));
        if residual.is_empty() {
            Ok(GroupLikeElement(g.clone()))
        } else {
            Err(Error::NotGroupLike(self.format_tensor(&residual)))
        }
    }

    /// `Δ` on PBW monomials, `Δx = x ⊗ 1 + 1 ⊗ x` for `x ∈ L`, Koszul signs.
    pub fn coproduct(&self, a: &UEAElement) -> TensorElement {
        let mut out = TensorElement::new();
        for (m, c) in &a.terms {
            let k = m.len();
            for mask in 0..(1u64 << k) {
                let mut left = Vec::new();
                let mut right = Vec::new();
                let mut right_degree = 0i64;
                let mut parity = 0i64;
                for (t, &x) in m.iter().enumerate() {
                    let d = self.adapted.lie.degree(x) as i64;
                    if mask & (1 << t) != 0 {
                        parity += right_degree * d;
                        left.push(x);
                    } else {
                        right.push(x);
                        right_degree += d;
                    }
                }
                add_tensor(&mut out, (left, right), c * sign(parity));
            }
        }
        out
    }

    /// `a ⊗ b` restricted to total J-adic weight `< n`.
    pub fn tensor(&self, a: &UEAElement, b: &UEAElement) -> TensorElement {
        let mut out = TensorElement::new();
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                if self.weight(ma) + self.weight(mb) < self.word_bound {
                    add_tensor(&mut out, (ma.clone(), mb.clone()), ca * cb);
                }
            }
        }
        out
    }

    fn tensor_square(&self, g: &UEAElement) -> TensorElement {
        self.tensor(g, g)
    }

    pub fn tensor_sub(&self, a: &TensorElement, b: &TensorElement) -> TensorElement {
        let mut out = a.clone();
        for (k, c) in b {
            add_tensor(&mut out, k.clone(), -c.clone());
        }
        out
    }

    pub fn format_tensor(&self, t: &TensorElement) -> String {
        let mut parts = Vec::new();
        for ((l, r), c) in t {
            let side = |m: &Monomial| {
                if m.is_empty() {
                    "1".to_string()
                } else {
                    self.render(m).join(" ")
                }
            };
            parts.push(format!("{} ({} ⊗ {})", format_rational(c), side(l), side(r)));
        }
        parts.join(" + ")
    }

    /// `Δp = p ⊗ 1 + 1 ⊗ p`.
    pub fn is_primitive(&self, p: &UEAElement) -> bool {
        let one = self.one();
        let mut expected = self.tensor(p, &one);
        for (k, c) in self.tensor(&one, p) {
            add_tensor(&mut expected, k, c);
        }
        self.tensor_sub(&self.coproduct(p), &expected).is_empty()
    }
}

fn add_tensor(t: &mut TensorElement, key: (Monomial, Monomial), c: Rational) {
    if c.is_zero() {
        return;
    }
    use std::collections::btree_map::Entry;
    match t.entry(key) {
        Entry::Vacant(e) => {
            e.insert(c);
        }
        Entry::Occupied(mut e) => {
            *e.get_mut() += c;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

fn enumerate(
    adapted: &AdaptedBasis,
    bound: usize,
    start: usize,
    weight: usize,
    current: &mut Vec<usize>,
    out: &mut Vec<Monomial>,
) {
    out.push(current.clone());
    for i in start..adapted.depths.len() {
        let w = weight + adapted.depths[i];
        if w >= bound {
            continue;
        }
        let odd = adapted.lie.degree(i) % 2 != 0;
        current.push(i);
        enumerate(adapted, bound, if odd { i + 1 } else { i }, w, current, out);
        current.pop();
    }
}

/// `log(exp x · exp y)` for `x, y ∈ L_0`, computed in `UL/J^{c+1}` where `c`
/// is the nilpotency class. Coordinates refer to the basis of `lie`.
pub fn bch(lie: &LieAlgebra, x: &SparseVec, y: &SparseVec) -> Result<SparseVec> {
    let class = crate::lie::require_nilpotent(lie)?.class();
    for v in [x, y] {
        if !v.is_zero() && lie.degree_of(v) != Some(0) {
            return Err(Error::Invalid("bch arguments must have degree 0".into()));
        }
    }
    let u = TruncatedUEA::new(lie, class + 1)?;
    let gx = u.exp(&u.from_lie(x))?;
    let gy = u.exp(&u.from_lie(y))?;
    let z = u.log_series(&u.mul(gx.element(), gy.element())?);
    if !u.is_primitive(&z) {
        return Err(Error::Validation(format!(
            "log(exp x exp y) is not primitive: {}",
            u.format(&z)
        )));
    }
    u.to_lie(&z)
        .ok_or_else(|| Error::Validation(format!("log(exp x exp y) = {} is not in L", u.format(&z))))
}

#[cfg(test)]
mod tests;
