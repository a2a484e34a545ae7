//! Linear partial differential operators with rational-function coefficients.
//!
//! An operator is stored normal-ordered, `sum_alpha c_alpha(x) d^alpha`, with
//! coefficients to the left of derivatives and the derivative basis
//! `d_1..d_n`. Composition means `(A∘B)[f] = A[B[f]]`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::algebra::rat::{binomial, rat};
use crate::algebra::{ratfn_sum, MPoly, Monomial, Rat, RatFn, Vars};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct DiffOp {
    n: usize,
    vars: Vars,
    terms: BTreeMap<Monomial, RatFn>,
}

/// Named operators. `Diff(i, j)` is `d_i - d_j` with 1-based indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Standard {
    /// `sum d_i^2`
    Laplacian,
    /// `sum d_i^2 - sum_{i<j} 4/(x_i - x_j)^2`
    CalogeroMoser,
    /// `sum (d_i^2 - x_i)`
    AirySum,
    /// `sum (d_i^2 - x_i) - sum_{i<j} 4/(x_i - x_j)^2`
    Deformed,
    Diff(usize, usize),
}

impl DiffOp {
    pub fn zero(n: usize) -> DiffOp {
        DiffOp { n, vars: Vars::x(n), terms: BTreeMap::new() }
    }

    /// Multiplication by `f`, a rational function of `x1..xn`.
    pub fn multiplication(n: usize, f: RatFn) -> Result<DiffOp> {
        let mut op = DiffOp::zero(n);
        if f.vars() != &op.vars {
            return Err(Error::VarMismatch { left: f.vars().to_vec(), right: op.vars.to_vec() });
        }
        if !f.is_zero() {
            op.terms.insert(Monomial::one(n), f);
        }
        Ok(op)
    }

    pub fn identity(n: usize) -> DiffOp {
        Self::multiplication(n, RatFn::one(&Vars::x(n))).expect("matching vars")
    }

    pub fn constant(n: usize, c: Rat) -> DiffOp {
        Self::multiplication(n, RatFn::constant(&Vars::x(n), c)).expect("matching vars")
    }

    /// `d_k`, 0-based.
    pub fn partial(n: usize, k: usize) -> DiffOp {
        let mut op = DiffOp::zero(n);
        op.terms.insert(Monomial::unit(n, k), RatFn::one(&op.vars));
        op
    }

    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (Monomial, RatFn)>) -> Result<DiffOp> {
        let mut op = DiffOp::zero(n);
        for (alpha, c) in terms {
            if alpha.len() != n {
                return Err(Error::Dimension(format!("multi-index of length {} for n = {n}", alpha.len())));
            }
            c.check_same_vars(&RatFn::zero(&op.vars))?;
            op.add_term(alpha, c);
        }
        Ok(op)
    }

    fn add_term(&mut self, alpha: Monomial, c: RatFn) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(alpha) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &RatFn)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, alpha: &Monomial) -> RatFn {
        self.terms.get(alpha).cloned().unwrap_or_else(|| RatFn::zero(&self.vars))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn order(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    fn check_n(&self, other: &DiffOp) -> Result<()> {
        if self.n == other.n {
            Ok(())
        } else {
            Err(Error::Dimension(format!("operators in {} and {} variables", self.n, other.n)))
        }
    }

    pub fn try_add(&self, other: &DiffOp) -> Result<DiffOp> {
        self.check_n(other)?;
        let mut out = self.clone();
        for (a, c) in &other.terms {
            out.add_term(a.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &DiffOp) -> Result<DiffOp> {
        self.try_add(&other.neg())
    }

    pub fn neg(&self) -> DiffOp {
        self.scale(&rat(-1))
    }

    pub fn scale(&self, c: &Rat) -> DiffOp {
        if c.is_zero() {
            return DiffOp::zero(self.n);
        }
        DiffOp { n: self.n, vars: self.vars.clone(), terms: self.terms.iter().map(|(a, f)| (a.clone(), f.scale(c))).collect() }
    }

    /// `f * self`, multiplying every coefficient from the left.
    pub fn left_mul(&self, f: &RatFn) -> DiffOp {
        let mut out = DiffOp::zero(self.n);
        for (a, c) in &self.terms {
            out.add_term(a.clone(), c * f);
        }
        out
    }

    pub fn compose(&self, other: &DiffOp) -> Result<DiffOp> {
        self.check_n(other)?;
        let mut derivs: HashMap<(Monomial, Monomial), RatFn> = HashMap::new();
        let mut parts: BTreeMap<Monomial, Vec<RatFn>> = BTreeMap::new();
        for (alpha, a) in &self.terms {
            for gamma in alpha.divisors() {
                let weight = multinomial(alpha, &gamma);
                let rest = alpha.div(&gamma).expect("gamma <= alpha");
                for (beta, b) in &other.terms {
                    let db = derivative_multi(&mut derivs, beta, b, &gamma);
                    if db.is_zero() {
                        continue;
                    }
                    parts.entry(rest.mul(beta)).or_default().push((a * &db).scale(&rat(weight as i64)));
                }
            }
        }
        let mut out = DiffOp::zero(self.n);
        for (alpha, fs) in parts {
            out.add_term(alpha, ratfn_sum(&self.vars, fs));
        }
        Ok(out)
    }

    pub fn commutator(&self, other: &DiffOp) -> Result<DiffOp> {
        self.compose(other)?.try_sub(&other.compose(self)?)
    }

    /// `d_i -> zeta_i` in normal order.
    pub fn symbol(&self) -> OpSymbol {
        let vars = symbol_vars(self.n);
        let mut acc = RatFn::zero(&vars);
        for (alpha, c) in &self.terms {
            let mut e = vec![0; 2 * self.n];
            e[self.n..].copy_from_slice(alpha.exps());
            let zeta = RatFn::from_poly(MPoly::term(&vars, Monomial::new(e), rat(1)));
            acc = &acc + &(&c.extend_to(&vars).expect("x vars embed") * &zeta);
        }
        OpSymbol { symbol: acc }
    }

    pub fn translation_flags(&self) -> TranslationFlags {
        let s = self.symbol();
        TranslationFlags { position: s.is_shift_invariant(true, false), momentum: s.is_shift_invariant(false, true) }
    }

    pub fn is_translation_invariant(&self) -> bool {
        let f = self.translation_flags();
        f.position && f.momentum && self.symbol().is_shift_invariant(true, true)
    }
}

fn multinomial(alpha: &Monomial, gamma: &Monomial) -> u64 {
    alpha.exps().iter().zip(gamma.exps()).map(|(&a, &g)| binomial(a, g)).product()
}

fn derivative_multi(
    memo: &mut HashMap<(Monomial, Monomial), RatFn>,
    beta: &Monomial,
    f: &RatFn,
    gamma: &Monomial,
) -> RatFn {
    if gamma.is_one() {
        return f.clone();
    }
    let key = (beta.clone(), gamma.clone());
    if let Some(v) = memo.get(&key) {
        return v.clone();
    }
    let k = gamma.exps().iter().position(|&e| e > 0).expect("non-trivial gamma");
    let lower = gamma.with(k, gamma.exps()[k] - 1);
    let d = derivative_multi(memo, beta, f, &lower).derivative(k);
    memo.insert(key, d.clone());
    d
}

/// Variables of operator symbols: `x1..xn, zeta1..zetan`.
pub fn symbol_vars(n: usize) -> Vars {
    Vars::new((1..=n).map(|i| format!("x{i}")).chain((1..=n).map(|i| format!("zeta{i}"))))
}

/// Symbol of a normal-ordered operator, a rational function of `x` and `zeta`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OpSymbol {
    pub symbol: RatFn,
}

impl OpSymbol {
    pub fn n(&self) -> usize {
        self.symbol.vars().len() / 2
    }

    /// Substitutes `x_i -> x_i + t` and/or `zeta_i -> zeta_i + s` with fresh
    /// formal `t, s` and compares with the unshifted symbol.
    pub fn is_shift_invariant(&self, shift_x: bool, shift_zeta: bool) -> bool {
        let n = self.n();
        let base = self.symbol.vars();
        let ext = Vars::new(base.names().iter().cloned().chain(["t".to_string(), "s".to_string()]));
        let t = MPoly::var(&ext, 2 * n);
        let s = MPoly::var(&ext, 2 * n + 1);
        let images: Vec<MPoly> = (0..2 * n)
            .map(|i| {
                let v = MPoly::var(&ext, i);
                match (i < n, shift_x, shift_zeta) {
                    (true, true, _) => &v + &t,
                    (false, _, true) => &v + &s,
                    _ => v,
                }
            })
            .collect();
        let shifted = self.symbol.map_vars(&ext, &images).expect("shift keeps denominators nonzero");
        shifted == self.symbol.extend_to(&ext).expect("embedding")
    }
}

/// Which formal shifts leave the symbol unchanged.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TranslationFlags {
    /// `x_i -> x_i + t` alone
    pub position: bool,
    /// `zeta_i -> zeta_i + s` alone
    pub momentum: bool,
}

pub fn op_compose(a: &DiffOp, b: &DiffOp) -> Result<DiffOp> {
    a.compose(b)
}

pub fn op_commutator(a: &DiffOp, b: &DiffOp) -> Result<DiffOp> {
    a.commutator(b)
}

pub fn op_symbol(a: &DiffOp) -> OpSymbol {
    a.symbol()
}

pub fn is_translation_invariant(a: &DiffOp) -> bool {
    a.is_translation_invariant()
}

/// `sum_{i<j} 4/(x_i - x_j)^2`.
pub fn pair_potential(n: usize) -> RatFn {
    let vars = Vars::x(n);
    let mut acc = RatFn::zero(&vars);
    for i in 0..n {
        for j in i + 1..n {
            let d = &MPoly::var(&vars, i) - &MPoly::var(&vars, j);
            let term = RatFn::new(MPoly::constant(&vars, rat(4)), d.pow(2)).expect("nonzero");
            acc = &acc + &term;
        }
    }
    acc
}

/// `x_1 + ... + x_n`.
pub fn coordinate_sum(n: usize) -> RatFn {
    let vars = Vars::x(n);
    RatFn::from_poly((0..n).fold(MPoly::zero(&vars), |acc, i| &acc + &MPoly::var(&vars, i)))
}

pub fn make_standard(n: usize, which: Standard) -> Result<DiffOp> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    let laplacian = || {
        let mut op = DiffOp::zero(n);
        for k in 0..n {
            let mut e = vec![0; n];
            e[k] = 2;
            op.add_term(Monomial::new(e), RatFn::one(&op.vars));
        }
        op
    };
    let needs_pairs = || {
        if n < 2 {
            Err(Error::InvalidArgument(format!("{which:?} needs n >= 2 (no pair terms for n = 1)")))
        } else {
            Ok(())
        }
    };
    let minus = |op: DiffOp, f: RatFn| op.try_sub(&DiffOp::multiplication(n, f).expect("x vars"));
    match which {
        Standard::Laplacian => Ok(laplacian()),
        Standard::AirySum => minus(laplacian(), coordinate_sum(n)),
        Standard::CalogeroMoser => {
            needs_pairs()?;
            minus(laplacian(), pair_potential(n))
        }
        Standard::Deformed => {
            needs_pairs()?;
            minus(minus(laplacian(), coordinate_sum(n))?, pair_potential(n))
        }
        Standard::Diff(i, j) => {
            if i == 0 || j == 0 || i > n || j > n || i == j {
                return Err(Error::InvalidArgument(format!("d_{i}{j} is not defined for n = {n}")));
            }
            DiffOp::partial(n, i - 1).try_sub(&DiffOp::partial(n, j - 1))
        }
    }
}

impl fmt::Display for DiffOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(alpha, c)| {
                let d: Vec<String> = alpha
                    .exps()
                    .iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(i, &e)| if e == 1 { format!("d{}", i + 1) } else { format!("d{}^{e}", i + 1) })
                    .collect();
                match (c.is_one(), d.is_empty()) {
                    (_, true) => format!("({c})"),
                    (true, false) => d.join("*"),
                    (false, false) => format!("({c})*{}", d.join("*")),
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for DiffOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DiffOp[n={}]({self})", self.n)
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    alpha: Vec<u32>,
    coeff: RatFn,
}

#[derive(Serialize, Deserialize)]
struct DiffOpJson {
    n: usize,
    terms: Vec<TermJson>,
}

impl Serialize for DiffOp {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        DiffOpJson {
            n: self.n,
            terms: self.terms.iter().map(|(a, c)| TermJson { alpha: a.exps().to_vec(), coeff: c.clone() }).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for DiffOp {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = DiffOpJson::deserialize(d)?;
        DiffOp::from_terms(j.n, j.terms.into_iter().map(|t| (Monomial::new(t.alpha), t.coeff)))
            .map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inv_x(n: usize, i: usize, j: Option<usize>, c: i64) -> RatFn {
        let v = Vars::x(n);
        let d = match j {
            Some(j) => &MPoly::var(&v, i) - &MPoly::var(&v, j),
            None => MPoly::var(&v, i),
        };
        RatFn::new(MPoly::constant(&v, rat(c)), d).unwrap()
    }

    fn d2() -> DiffOp {
        make_standard(2, Standard::Diff(1, 2))
            .unwrap()
            .try_add(&DiffOp::multiplication(2, inv_x(2, 0, Some(1), -2)).unwrap())
            .unwrap()
    }

    #[test]
    fn leibniz() {
        let x = DiffOp::multiplication(1, RatFn::var(&Vars::x(1), 0)).unwrap();
        let got = DiffOp::partial(1, 0).compose(&x).unwrap();
        let expect = x.compose(&DiffOp::partial(1, 0)).unwrap().try_add(&DiffOp::identity(1)).unwrap();
        assert_eq!(got, expect);
    }

    #[test]
    fn one_dimensional_intertwining() {
        // (d - 1/x) d^2 = (d^2 - 2/x^2)(d - 1/x) = d^3 - (1/x) d^2
        let k = DiffOp::partial(1, 0).try_add(&DiffOp::multiplication(1, inv_x(1, 0, None, -1)).unwrap()).unwrap();
        let l = make_standard(1, Standard::Laplacian).unwrap();
        let v = Vars::x(1);
        let pot = RatFn::new(MPoly::constant(&v, rat(2)), MPoly::var(&v, 0).pow(2)).unwrap();
        let lt = l.try_sub(&DiffOp::multiplication(1, pot).unwrap()).unwrap();
        let lhs = k.compose(&l).unwrap();
        let rhs = lt.compose(&k).unwrap();
        assert_eq!(lhs, rhs);
        let expect = DiffOp::from_terms(
            1,
            [(Monomial::new(vec![3]), RatFn::one(&v)), (Monomial::new(vec![2]), inv_x(1, 0, None, -1))],
        )
        .unwrap();
        assert_eq!(lhs, expect);
    }

    #[test]
    fn d2_intertwines_laplacian() {
        let d = d2();
        let l = make_standard(2, Standard::Laplacian).unwrap();
        let lt = make_standard(2, Standard::CalogeroMoser).unwrap();
        assert_eq!(d.compose(&l).unwrap(), lt.compose(&d).unwrap());
    }

    #[test]
    fn commutators() {
        let d12 = make_standard(2, Standard::Diff(1, 2)).unwrap();
        let sum = DiffOp::multiplication(2, coordinate_sum(2)).unwrap();
        assert!(op_commutator(&d12, &sum).unwrap().is_zero());
        assert!(op_commutator(&DiffOp::partial(2, 0), &DiffOp::partial(2, 1)).unwrap().is_zero());
        for n in 2..=3 {
            let h = make_standard(n, Standard::AirySum).unwrap();
            for i in 1..n {
                let d = make_standard(n, Standard::Diff(i, n)).unwrap();
                assert!(op_commutator(&d, &h).unwrap().is_zero(), "n={n} i={i}");
            }
        }
    }

    #[test]
    fn standard_operators() {
        let v = Vars::x(2);
        let deformed = make_standard(2, Standard::Deformed).unwrap();
        let mut pot = coordinate_sum(2);
        let d = &MPoly::var(&v, 0) - &MPoly::var(&v, 1);
        pot = &pot + &RatFn::new(MPoly::constant(&v, rat(4)), d.pow(2)).unwrap();
        let expect = DiffOp::from_terms(
            2,
            [
                (Monomial::new(vec![2, 0]), RatFn::one(&v)),
                (Monomial::new(vec![0, 2]), RatFn::one(&v)),
                (Monomial::one(2), -&pot),
            ],
        )
        .unwrap();
        assert_eq!(deformed, expect);

        let airy = make_standard(1, Standard::AirySum).unwrap();
        assert_eq!(airy.to_string(), "d1^2 + (-x1)");

        for n in 2..=4 {
            let diff = make_standard(n, Standard::Deformed)
                .unwrap()
                .try_sub(&make_standard(n, Standard::CalogeroMoser).unwrap())
                .unwrap();
            assert_eq!(diff, DiffOp::multiplication(n, -&coordinate_sum(n)).unwrap());
        }
        assert!(make_standard(1, Standard::CalogeroMoser).is_err());
        assert!(make_standard(1, Standard::Deformed).is_err());
        assert!(make_standard(2, Standard::Diff(1, 1)).is_err());
    }

    #[test]
    fn symbols() {
        let s = d2().symbol().symbol;
        let v = symbol_vars(2);
        let d = &MPoly::var(&v, 0) - &MPoly::var(&v, 1);
        let expect = &RatFn::from_poly(&MPoly::var(&v, 2) - &MPoly::var(&v, 3))
            + &RatFn::new(MPoly::constant(&v, rat(-2)), d).unwrap();
        assert_eq!(s, expect);

        let x = DiffOp::multiplication(1, RatFn::var(&Vars::x(1), 0)).unwrap();
        let op = x.compose(&DiffOp::partial(1, 0)).unwrap().try_add(&DiffOp::identity(1)).unwrap();
        let v1 = symbol_vars(1);
        let expect = RatFn::from_poly(&(&MPoly::var(&v1, 0) * &MPoly::var(&v1, 1)) + &MPoly::one(&v1));
        assert_eq!(op.symbol().symbol, expect);
    }

    #[test]
    fn translation_invariance() {
        assert!(d2().is_translation_invariant());
        let h = make_standard(2, Standard::AirySum).unwrap();
        assert!(!h.is_translation_invariant());
        let lap = make_standard(2, Standard::Laplacian).unwrap();
        assert_eq!(lap.translation_flags(), TranslationFlags { position: true, momentum: false });
        assert!(!lap.is_translation_invariant());
    }

    #[test]
    fn json_round_trip_and_order() {
        let d = d2();
        let s = serde_json::to_string(&d).unwrap();
        assert!(s.starts_with(r#"{"n":2,"terms":[{"alpha":[0,0]"#));
        let back: DiffOp = serde_json::from_str(&s).unwrap();
        assert_eq!(back, d);
        assert_eq!(serde_json::to_string(&back).unwrap(), s);
    }

    #[test]
    fn dimension_mismatch() {
        assert!(matches!(DiffOp::partial(1, 0).compose(&DiffOp::partial(2, 0)), Err(Error::Dimension(_))));
    }
}
