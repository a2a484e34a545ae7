//! Intertwining operators `D` with `D∘L = Lt∘D`, found by solving an exact
//! linear system over an ansatz of rational-coefficient operators.

pub mod local;

use std::collections::{BTreeMap, HashMap};
use std::sync::{Mutex, OnceLock};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::rat::binomial;
use crate::algebra::{gcd, rat, MPoly, Monomial, Rat, RatFn, SparseSystem, Vars};
use crate::diffop::{make_standard, symbol_vars, DiffOp, Standard};
use crate::error::{Error, Result};
use local::{Loc, LocalRing};

/// Largest ansatz dimension the solver accepts by default.
pub const DEFAULT_CAP: usize = 20_000;

/// Coefficients are `P(x) / prod l^den_exponent` with `deg P <= num_degree`,
/// where the forms `l` are `x_i - x_j` (or `x_1` when `n = 1`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AnsatzSpec {
    pub n: usize,
    pub max_order: u32,
    pub num_degree: u32,
    pub den_exponent: u32,
}

impl AnsatzSpec {
    pub fn new(n: usize, max_order: u32, num_degree: u32, den_exponent: u32) -> Result<AnsatzSpec> {
        if n == 0 {
            return Err(Error::InvalidArgument("n must be at least 1".into()));
        }
        Ok(AnsatzSpec { n, max_order, num_degree, den_exponent })
    }

    /// Starting bounds: order and numerator degree equal to the number of
    /// pairs, simple poles.
    pub fn default_for(n: usize) -> AnsatzSpec {
        let pairs = (n * n.saturating_sub(1) / 2).max(1) as u32;
        AnsatzSpec { n, max_order: pairs, num_degree: pairs, den_exponent: 1 }
    }

    pub fn dimension(&self) -> usize {
        count_up_to(self.n, self.max_order).saturating_mul(count_up_to(self.n, self.num_degree))
    }

    /// Next bounds in the growth schedule, cycling through doubling the
    /// numerator degree, raising the pole order and raising the order.
    pub fn grow(&self, step: usize) -> AnsatzSpec {
        let mut s = *self;
        match step % 3 {
            0 => s.num_degree = (2 * s.num_degree).max(1),
            1 => s.den_exponent += 1,
            _ => s.max_order += 1,
        }
        s
    }
}

fn count_up_to(n: usize, d: u32) -> usize {
    binomial(n as u32 + d, n as u32) as usize
}

/// How a returned solution was scaled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Normalization {
    /// top-order symbol equals `prod_{i<j} (zeta_i - zeta_j)` (`zeta_1` for n = 1)
    TopSymbolProduct,
    /// leading numerator coefficient of the highest derivative term is 1
    LeadingCoefficient,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IntertwinerResult {
    pub spec: AnsatzSpec,
    pub solutions: Vec<DiffOp>,
    pub normalization: Vec<Normalization>,
}

impl IntertwinerResult {
    pub fn is_empty(&self) -> bool {
        self.solutions.is_empty()
    }
}

/// `d - 1/x` for n = 1 and `d_12 - 2/x_12` for n = 2.
pub fn known_intertwiner(n: usize) -> Result<DiffOp> {
    let vars = Vars::x(n);
    let (pole, c) = match n {
        1 => (MPoly::var(&vars, 0), -1),
        2 => (&MPoly::var(&vars, 0) - &MPoly::var(&vars, 1), -2),
        _ => return Err(Error::NoKnownIntertwiner(n)),
    };
    let first = if n == 1 { DiffOp::partial(1, 0) } else { make_standard(2, Standard::Diff(1, 2))? };
    let potential = RatFn::new(MPoly::constant(&vars, rat(c)), pole)?;
    first.try_add(&DiffOp::multiplication(n, potential)?)
}

/// `(L, L - 2/x^2)` in one variable with `L = d^2 - x` or `L = d^2`.
pub fn one_particle_pair(airy: bool) -> Result<(DiffOp, DiffOp)> {
    let l = make_standard(1, if airy { Standard::AirySum } else { Standard::Laplacian })?;
    let v = Vars::x(1);
    let pot = RatFn::new(MPoly::constant(&v, rat(2)), MPoly::var(&v, 0).pow(2))?;
    let lt = l.try_sub(&DiffOp::multiplication(1, pot)?)?;
    Ok((l, lt))
}

/// `D∘L - Lt∘D`.
pub fn intertwine_residual(d: &DiffOp, l: &DiffOp, lt: &DiffOp) -> Result<DiffOp> {
    d.compose(l)?.try_sub(&lt.compose(d)?)
}

pub fn verify_intertwine(d: &DiffOp, l: &DiffOp, lt: &DiffOp) -> bool {
    intertwine_residual(d, l, lt).map(|r| r.is_zero()).unwrap_or(false)
}

type LocOp = BTreeMap<Monomial, Vec<Loc>>;

fn to_loc_op(ring: &LocalRing, op: &DiffOp) -> Result<Vec<(Monomial, Loc)>> {
    op.terms().map(|(a, c)| Ok((a.clone(), ring.from_ratfn(c)?))).collect()
}

fn derivative_multi(ring: &LocalRing, a: &Loc, gamma: &Monomial, memo: &mut HashMap<Monomial, Loc>) -> Loc {
    if gamma.is_one() {
        return a.clone();
    }
    if let Some(v) = memo.get(gamma) {
        return v.clone();
    }
    let k = gamma.exps().iter().position(|&e| e > 0).expect("non-trivial");
    let lower = gamma.with(k, gamma.exps()[k] - 1);
    let d = ring.derivative(&derivative_multi(ring, a, &lower, memo), k);
    memo.insert(gamma.clone(), d.clone());
    d
}

fn multinomial(alpha: &Monomial, gamma: &Monomial) -> Rat {
    rat(alpha.exps().iter().zip(gamma.exps()).map(|(&a, &g)| binomial(a, g)).product::<u64>() as i64)
}

struct Assembler<'a> {
    ring: &'a LocalRing,
    /// coefficients of `L`, with memoized derivatives
    l_terms: Vec<(Monomial, Loc, HashMap<Monomial, Loc>)>,
    lt_terms: Vec<(Monomial, Loc)>,
    lt_order: u32,
}

impl Assembler<'_> {
    /// `(c d^alpha)∘L - Lt∘(c d^alpha)` as unsummed contributions.
    fn image(&mut self, c: &Loc, alpha: &Monomial) -> LocOp {
        let ring = self.ring;
        let mut out: LocOp = BTreeMap::new();
        for gamma in alpha.divisors() {
            let w = multinomial(alpha, &gamma);
            let rest = alpha.div(&gamma).expect("gamma <= alpha");
            for (beta, b, memo) in &mut self.l_terms {
                let db = derivative_multi(ring, b, &gamma, memo);
                if db.is_zero() {
                    continue;
                }
                let mut t = ring.mul(c, &db);
                t.num = t.num.scale(&w);
                out.entry(rest.mul(beta)).or_default().push(t);
            }
        }
        let mut c_memo = HashMap::new();
        for (beta, a) in &self.lt_terms {
            for gamma in beta.divisors() {
                if gamma.degree() > self.lt_order {
                    continue;
                }
                let dc = derivative_multi(ring, c, &gamma, &mut c_memo);
                if dc.is_zero() {
                    continue;
                }
                let w = -multinomial(beta, &gamma);
                let mut t = ring.mul(a, &dc);
                t.num = t.num.scale(&w);
                out.entry(beta.div(&gamma).expect("gamma <= beta").mul(alpha)).or_default().push(t);
            }
        }
        out
    }
}

/// Scatters per-unknown contributions into equations, one per
/// `(derivative multi-index, numerator monomial)` over a common denominator.
fn assemble(ring: &LocalRing, ncols: usize, images: Vec<LocOp>) -> SparseSystem {
    let mut common: BTreeMap<Monomial, Vec<u32>> = BTreeMap::new();
    for img in &images {
        for (beta, parts) in img {
            let e = common.entry(beta.clone()).or_insert_with(|| vec![0; ring.num_forms()]);
            for p in parts {
                for (x, y) in e.iter_mut().zip(&p.exps) {
                    *x = (*x).max(*y);
                }
            }
        }
    }
    let mut rows: BTreeMap<(Monomial, Monomial), Vec<(usize, Rat)>> = BTreeMap::new();
    for (j, img) in images.into_iter().enumerate() {
        for (beta, parts) in img {
            let target = &common[&beta];
            let mut sum = MPoly::zero(ring.vars());
            for p in &parts {
                sum = &sum + &ring.lift(p, target);
            }
            for (m, c) in sum.terms() {
                rows.entry((beta.clone(), m.clone())).or_default().push((j, c.clone()));
            }
        }
    }
    let mut sys = SparseSystem::new(ncols);
    for (_, row) in rows {
        sys.push(row);
    }
    sys
}

struct Basis {
    ring: LocalRing,
    spec: AnsatzSpec,
    alphas: Vec<Monomial>,
    monos: Vec<Monomial>,
}

impl Basis {
    fn new(spec: &AnsatzSpec) -> Basis {
        Basis {
            ring: LocalRing::new(spec.n),
            spec: *spec,
            alphas: Monomial::all_up_to(spec.n, spec.max_order),
            monos: Monomial::all_up_to(spec.n, spec.num_degree),
        }
    }

    fn len(&self) -> usize {
        self.alphas.len() * self.monos.len()
    }

    fn unknown(&self, j: usize) -> (&Monomial, Loc) {
        let alpha = &self.alphas[j / self.monos.len()];
        let m = MPoly::term(self.ring.vars(), self.monos[j % self.monos.len()].clone(), Rat::one());
        (alpha, Loc { num: m, exps: vec![self.spec.den_exponent; self.ring.num_forms()] })
    }

    fn to_op(&self, v: &[Rat]) -> Result<DiffOp> {
        let vars = self.ring.vars();
        let den = self.ring.product(&vec![self.spec.den_exponent; self.ring.num_forms()]);
        let mut terms = Vec::new();
        for (a, alpha) in self.alphas.iter().enumerate() {
            let chunk = &v[a * self.monos.len()..(a + 1) * self.monos.len()];
            let num = MPoly::from_terms(
                vars,
                self.monos.iter().zip(chunk).filter(|(_, c)| !c.is_zero()).map(|(m, c)| (m.clone(), c.clone())),
            )?;
            if !num.is_zero() {
                terms.push((alpha.clone(), RatFn::new(num, den.clone())?));
            }
        }
        DiffOp::from_terms(self.spec.n, terms)
    }
}

/// Full solution space of `D∘L = Lt∘D` within the ansatz, every element
/// checked by direct composition before it is returned.
pub fn solve_intertwiner(l: &DiffOp, lt: &DiffOp, spec: &AnsatzSpec) -> Result<IntertwinerResult> {
    solve_capped(l, lt, spec, DEFAULT_CAP)
}

pub fn solve_capped(l: &DiffOp, lt: &DiffOp, spec: &AnsatzSpec, cap: usize) -> Result<IntertwinerResult> {
    if l.n() != spec.n || lt.n() != spec.n {
        return Err(Error::Dimension(format!("operators in {} and {} variables, ansatz for n = {}", l.n(), lt.n(), spec.n)));
    }
    let dimension = spec.dimension();
    if dimension > cap {
        return Err(Error::ResourceCap { dimension, cap });
    }
    let basis = Basis::new(spec);
    let ring = &basis.ring;
    let mut asm = Assembler {
        ring,
        l_terms: to_loc_op(ring, l)?.into_iter().map(|(a, c)| (a, c, HashMap::new())).collect(),
        lt_terms: to_loc_op(ring, lt)?,
        lt_order: lt.order(),
    };
    let images: Vec<LocOp> = (0..basis.len())
        .map(|j| {
            let (alpha, c) = basis.unknown(j);
            asm.image(&c, &alpha.clone())
        })
        .collect();
    let sys = assemble(ring, basis.len(), images);

    let mut solutions = Vec::new();
    let mut normalization = Vec::new();
    for v in sys.nullspace() {
        let d = basis.to_op(&v)?;
        let residual = intertwine_residual(&d, l, lt)?;
        if !residual.is_zero() {
            return Err(Error::Unverified(format!("ansatz solution leaves {} residual terms", residual.num_terms())));
        }
        let (d, how) = normalize(&d)?;
        solutions.push(d);
        normalization.push(how);
    }
    Ok(IntertwinerResult { spec: *spec, solutions, normalization })
}

/// Solves at `start`, growing the bounds until the space is nonempty.
pub fn search_intertwiner(l: &DiffOp, lt: &DiffOp, start: &AnsatzSpec, cap: usize) -> Result<IntertwinerResult> {
    let mut spec = *start;
    let mut step = 0;
    loop {
        let res = solve_capped(l, lt, &spec, cap)?;
        if !res.is_empty() {
            return Ok(res);
        }
        spec = spec.grow(step);
        step += 1;
    }
}

/// `prod_{i<j} (zeta_i - zeta_j)`, or `zeta_1` when `n = 1`.
pub fn top_symbol_target(n: usize) -> MPoly {
    let v = symbol_vars(n);
    if n == 1 {
        return MPoly::var(&v, 1);
    }
    let mut p = MPoly::one(&v);
    for i in 0..n {
        for j in i + 1..n {
            p = &p * &(&MPoly::var(&v, n + i) - &MPoly::var(&v, n + j));
        }
    }
    p
}

/// Scales `d` so its top-order symbol is the product of momentum differences
/// when that is possible, otherwise to a monic leading numerator.
pub fn normalize(d: &DiffOp) -> Result<(DiffOp, Normalization)> {
    let n = d.n();
    let r = d.order();
    let target = top_symbol_target(n);
    if r == target.degree() {
        let top: Vec<(&Monomial, &RatFn)> = d.terms().filter(|(a, _)| a.degree() == r).collect();
        let coeff_of = |a: &Monomial| {
            let mut e = vec![0; n];
            e.extend_from_slice(a.exps());
            target.coeff(&Monomial::new(e))
        };
        let consts: Option<Vec<(Rat, Rat)>> = top.iter().map(|(a, c)| c.as_constant().map(|k| (k, coeff_of(a)))).collect();
        if let Some(pairs) = consts {
            let (k0, t0) = pairs.iter().find(|(_, t)| !t.is_zero()).cloned().unwrap_or_default();
            let matches_target = !t0.is_zero()
                && pairs.len() == target.num_terms()
                && pairs.iter().all(|(k, t)| !t.is_zero() && k * &t0 == t * &k0);
            if matches_target {
                return Ok((d.scale(&(t0 / k0)), Normalization::TopSymbolProduct));
            }
        }
    }
    let (_, lead) = d.terms().next_back().ok_or(Error::InvalidArgument("zero operator".into()))?;
    let (_, lc) = lead.num().leading().expect("nonzero coefficient");
    Ok((d.scale(&lc.recip()), Normalization::LeadingCoefficient))
}

/// Keyed rational-function images of a family of objects; finds the
/// rational combinations whose images all vanish.
fn combination_kernel(images: &[BTreeMap<(u8, Monomial), RatFn>], vars: &Vars) -> Result<Vec<Vec<Rat>>> {
    let mut keys: BTreeMap<(u8, Monomial), Vec<(usize, RatFn)>> = BTreeMap::new();
    for (k, img) in images.iter().enumerate() {
        for (key, f) in img {
            if !f.is_zero() {
                keys.entry(key.clone()).or_default().push((k, f.clone()));
            }
        }
    }
    let mut sys = SparseSystem::new(images.len());
    for (key, parts) in keys {
        let mut den = MPoly::one(vars);
        for (_, f) in &parts {
            let g = gcd(&den, f.den());
            den = &den * &f.den().exact_div(&g).expect("gcd divides");
        }
        let mut rows: BTreeMap<Monomial, Vec<(usize, Rat)>> = BTreeMap::new();
        for (k, f) in &parts {
            let num = f.num() * &den.exact_div(f.den()).expect("lcm");
            for (m, c) in num.terms() {
                rows.entry(m.clone()).or_default().push((*k, c.clone()));
            }
        }
        let _ = key;
        for (_, row) in rows {
            sys.push(row);
        }
    }
    Ok(sys.nullspace())
}

/// Elements of `span(solutions)` whose symbols are invariant under both
/// `x_i -> x_i + t` and `zeta_i -> zeta_i + s`, as linear conditions:
/// `sum_i d_i c_alpha = 0` and `sum_i (beta_i + 1) c_{beta + e_i} = 0`.
pub fn translation_invariant_subspace(solutions: &[DiffOp]) -> Result<Vec<DiffOp>> {
    let Some(first) = solutions.first() else { return Ok(Vec::new()) };
    let n = first.n();
    let vars = first.vars().clone();
    let mut images = Vec::new();
    for d in solutions {
        let mut img: BTreeMap<(u8, Monomial), RatFn> = BTreeMap::new();
        for (alpha, c) in d.terms() {
            let shift = (0..n).fold(RatFn::zero(&vars), |acc, i| &acc + &c.derivative(i));
            img.insert((0, alpha.clone()), shift);
            for i in 0..n {
                let e = alpha.exps()[i];
                if e == 0 {
                    continue;
                }
                let key = (1, alpha.with(i, e - 1));
                let term = c.scale(&rat(e as i64));
                let entry = img.entry(key).or_insert_with(|| RatFn::zero(&vars));
                *entry = &*entry + &term;
            }
        }
        images.push(img);
    }
    let mut out = Vec::new();
    for lambda in combination_kernel(&images, &vars)? {
        let mut acc = DiffOp::zero(n);
        for (d, l) in solutions.iter().zip(&lambda) {
            if !l.is_zero() {
                acc = acc.try_add(&d.scale(l))?;
            }
        }
        out.push(normalize(&acc)?.0);
    }
    Ok(out)
}

/// Operators of order at most one in the ansatz that commute with `a`.
pub fn centralizer_search_first_order(a: &DiffOp, spec: &AnsatzSpec) -> Result<Vec<DiffOp>> {
    if spec.max_order != 1 {
        return Err(Error::InvalidArgument(format!("first-order search needs max_order 1, got {}", spec.max_order)));
    }
    Ok(solve_intertwiner(a, a, spec)?.solutions)
}

/// True when every element has order zero and a constant coefficient.
pub fn constants_only(ops: &[DiffOp]) -> bool {
    ops.iter().all(|d| d.order() == 0 && d.terms().all(|(_, c)| c.as_constant().is_some()))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateCheck {
    /// `"<L>/<Lt>"`
    pub pair: String,
    pub residual_terms: usize,
    pub zero: bool,
}

/// Exact residual record written beside a constructed operator.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub n: usize,
    pub spec: Option<AnsatzSpec>,
    pub solution_space_dimension: usize,
    pub translation_invariant_dimension: usize,
    pub checks: Vec<CertificateCheck>,
    pub valid: bool,
}

/// Checks `d` against `(Laplacian, CalogeroMoser)` and `(AirySum, Deformed)`.
pub fn certify(d: &DiffOp, spec: Option<AnsatzSpec>, space_dim: usize, ti_dim: usize) -> Result<Certificate> {
    let n = d.n();
    let mut checks = Vec::new();
    if n >= 2 {
        for (name, l, lt) in [
            ("laplacian/calogero_moser", Standard::Laplacian, Standard::CalogeroMoser),
            ("airy_sum/deformed", Standard::AirySum, Standard::Deformed),
        ] {
            let r = intertwine_residual(d, &make_standard(n, l)?, &make_standard(n, lt)?)?;
            checks.push(CertificateCheck { pair: name.into(), residual_terms: r.num_terms(), zero: r.is_zero() });
        }
    }
    let valid = !checks.is_empty() && checks.iter().all(|c| c.zero);
    Ok(Certificate {
        n,
        spec,
        solution_space_dimension: space_dim,
        translation_invariant_dimension: ti_dim,
        checks,
        valid,
    })
}

/// `D_n` for `(Laplacian, CalogeroMoser)`: the unique translation-invariant
/// solution, searched from the default bounds.
pub fn construct_intertwiner(n: usize, start: &AnsatzSpec, cap: usize, grow: bool) -> Result<Construction> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("construction needs n >= 2, got {n}")));
    }
    let l = make_standard(n, Standard::Laplacian)?;
    let lt = make_standard(n, Standard::CalogeroMoser)?;
    let res = if grow { search_intertwiner(&l, &lt, start, cap)? } else { solve_capped(&l, &lt, start, cap)? };
    let ti = translation_invariant_subspace(&res.solutions)?;
    let operator = match ti.len() {
        1 => Some(ti[0].clone()),
        0 if res.solutions.len() == 1 => Some(res.solutions[0].clone()),
        _ => None,
    };
    Ok(Construction { space_dimension: res.solutions.len(), translation_invariant: ti, result: res, operator })
}

fn solved() -> &'static Mutex<HashMap<usize, DiffOp>> {
    static SOLVED: OnceLock<Mutex<HashMap<usize, DiffOp>>> = OnceLock::new();
    SOLVED.get_or_init(Default::default)
}

/// `D_n` for `n >= 2`: the closed form at `n = 2`, the ansatz solver
/// from default bounds above that. Solved operators are kept for the life
/// of the process.
pub fn intertwiner_for(n: usize) -> Result<DiffOp> {
    match n {
        0 | 1 => Err(Error::InvalidArgument(format!("no pair terms for n = {n}"))),
        2 => known_intertwiner(2),
        _ => {
            if let Some(d) = solved().lock().expect("cache lock").get(&n) {
                return Ok(d.clone());
            }
            let c = construct_intertwiner(n, &AnsatzSpec::default_for(n), DEFAULT_CAP, true)?;
            let d = c.operator.ok_or_else(|| {
                Error::Unverified(format!("translation-invariant space has dimension {}", c.translation_invariant.len()))
            })?;
            solved().lock().expect("cache lock").insert(n, d.clone());
            Ok(d)
        }
    }
}

/// Makes `d` the operator returned by [`intertwiner_for`] after checking
/// both intertwining relations exactly.
pub fn install_intertwiner(d: &DiffOp) -> Result<Certificate> {
    let cert = certify(d, None, 1, 1)?;
    if !cert.valid {
        return Err(Error::Unverified(format!("operator fails {:?}", cert.checks)));
    }
    solved().lock().expect("cache lock").insert(d.n(), d.clone());
    Ok(cert)
}

#[derive(Debug, Clone)]
pub struct Construction {
    pub result: IntertwinerResult,
    pub space_dimension: usize,
    pub translation_invariant: Vec<DiffOp>,
    /// the normalized intertwiner, when the invariant subspace is a line
    pub operator: Option<DiffOp>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pair(n: usize, a: Standard, b: Standard) -> (DiffOp, DiffOp) {
        (make_standard(n, a).unwrap(), make_standard(n, b).unwrap())
    }

    #[test]
    fn known_ones_verify() {
        let d1 = known_intertwiner(1).unwrap();
        let lap = make_standard(1, Standard::Laplacian).unwrap();
        let v = Vars::x(1);
        let pot = RatFn::new(MPoly::constant(&v, rat(2)), MPoly::var(&v, 0).pow(2)).unwrap();
        let lt = lap.try_sub(&DiffOp::multiplication(1, pot).unwrap()).unwrap();
        assert!(verify_intertwine(&d1, &lap, &lt));

        let d2 = known_intertwiner(2).unwrap();
        let (l, lt) = pair(2, Standard::Laplacian, Standard::CalogeroMoser);
        assert!(verify_intertwine(&d2, &l, &lt));
        let (h, ht) = pair(2, Standard::AirySum, Standard::Deformed);
        assert!(verify_intertwine(&d2, &h, &ht));
        assert!(!verify_intertwine(&DiffOp::identity(2), &l, &lt));
        assert!(d2.is_translation_invariant());
        assert_eq!(known_intertwiner(3), Err(Error::NoKnownIntertwiner(3)));
    }

    #[test]
    fn n2_space_is_a_line() {
        let (l, lt) = pair(2, Standard::Laplacian, Standard::CalogeroMoser);
        let res = solve_intertwiner(&l, &lt, &AnsatzSpec::new(2, 1, 1, 1).unwrap()).unwrap();
        assert_eq!(res.solutions, vec![known_intertwiner(2).unwrap()]);
        assert_eq!(res.normalization, vec![Normalization::TopSymbolProduct]);
    }

    #[test]
    fn n1_airy_has_no_rational_partner() {
        let h = make_standard(1, Standard::AirySum).unwrap();
        let v = Vars::x(1);
        let pot = RatFn::new(MPoly::constant(&v, rat(2)), MPoly::var(&v, 0).pow(2)).unwrap();
        let ht = h.try_sub(&DiffOp::multiplication(1, pot).unwrap()).unwrap();
        for k in 0..=3 {
            let res = solve_intertwiner(&h, &ht, &AnsatzSpec::new(1, 2, 3, k).unwrap()).unwrap();
            assert!(res.is_empty(), "k = {k}");
        }
    }

    #[test]
    fn resource_cap() {
        let (l, lt) = pair(3, Standard::Laplacian, Standard::CalogeroMoser);
        let spec = AnsatzSpec::new(3, 6, 20, 1).unwrap();
        assert!(matches!(solve_intertwiner(&l, &lt, &spec), Err(Error::ResourceCap { dimension, cap: DEFAULT_CAP }) if dimension == spec.dimension()));
    }

    #[test]
    fn growth_reaches_solution() {
        let (l, lt) = pair(2, Standard::Laplacian, Standard::CalogeroMoser);
        let res = search_intertwiner(&l, &lt, &AnsatzSpec::new(2, 1, 0, 0).unwrap(), DEFAULT_CAP).unwrap();
        assert_eq!(res.spec, AnsatzSpec::new(2, 1, 1, 1).unwrap());
        assert_eq!(translation_invariant_subspace(&res.solutions).unwrap(), vec![known_intertwiner(2).unwrap()]);
    }

    #[test]
    fn centralizers() {
        let h = make_standard(2, Standard::Deformed).unwrap();
        let cs = centralizer_search_first_order(&h, &AnsatzSpec::new(2, 1, 1, 1).unwrap()).unwrap();
        assert_eq!(cs, vec![DiffOp::identity(2)]);
        assert!(constants_only(&cs));

        let lap = make_standard(2, Standard::Laplacian).unwrap();
        let cs = centralizer_search_first_order(&lap, &AnsatzSpec::new(2, 1, 1, 1).unwrap()).unwrap();
        for k in 0..2 {
            assert!(cs.contains(&DiffOp::partial(2, k)));
        }
        assert!(centralizer_search_first_order(&lap, &AnsatzSpec::new(2, 2, 1, 1).unwrap()).is_err());
    }
}
