//! Exact eigenfunction checks in differentiation-closed rings built on the
//! Airy kernel.
//!
//! An element is `P(R) * F` where `F` is a fixed base function and `P` is a
//! polynomial in Riccati generators (`R = Ai'/Ai` at the kernel argument)
//! with coefficients in `Q(x, z)(kappa)`, `kappa^3 = 1/n`. Derivatives stay in
//! the ring because `Ai'' = t Ai` turns `d R` into a polynomial in `R`.
//!
//! Base functions, with `s = sum (x_i + z_i)`:
//! - `Psi`: `exp((1/n) sum_{i<j} (x_i - x_j)(z_i - z_j)) * Ai(kappa s)`
//! - `Sigma`: `prod_i Ai(x_i + z_i)`
//! - `Exp`: `exp(sum_i x_i z_i)`

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{ratio, swap_xz, CubicExt, MPoly, Monomial, RatFn, Vars};
use crate::diffop::{make_standard, DiffOp, Standard};
use crate::error::{Error, Result};
use crate::intertwiner::intertwiner_for;
use crate::numerics::airy_ai;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Base {
    Psi,
    Sigma,
    Exp,
}

impl fmt::Display for Base {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Base::Psi => "psi",
            Base::Sigma => "sigma",
            Base::Exp => "exp",
        })
    }
}

type GenPoly = BTreeMap<Vec<u32>, CubicExt>;

struct RingData {
    base: Base,
    n: usize,
    vars: Vars,
    ngens: usize,
    /// `d_k F / F`
    logd: Vec<GenPoly>,
    /// `dgen[k][i] = d_k R_i`
    dgen: Vec<Vec<GenPoly>>,
}

impl RingData {
    fn new(base: Base, n: usize) -> RingData {
        let vars = Vars::xz(n);
        let nk = n as u32;
        let scalar = |f: RatFn| CubicExt::from_base(nk, f);
        let x = |i: usize| RatFn::var(&vars, i);
        let z = |i: usize| RatFn::var(&vars, n + i);
        let one = CubicExt::one(nk, &vars);
        let ngens = match base {
            Base::Psi => 1,
            Base::Sigma => n,
            Base::Exp => 0,
        };
        let mut logd = Vec::new();
        let mut dgen = Vec::new();
        match base {
            Base::Psi => {
                let kappa = CubicExt::kappa(nk, &vars);
                let zsum = (0..n).fold(RatFn::zero(&vars), |acc, i| &acc + &z(i));
                let s = (0..n).fold(zsum.clone(), |acc, i| &acc + &x(i));
                let zbar = zsum.scale(&ratio(1, n as i64));
                // d_k R = kappa (kappa s - R^2)
                let dr: GenPoly = [(vec![0], &(&kappa * &kappa) * &scalar(s)), (vec![2], -&kappa)].into_iter().collect();
                for k in 0..n {
                    logd.push([(vec![0], scalar(&z(k) - &zbar)), (vec![1], kappa.clone())].into_iter().collect());
                    dgen.push(vec![dr.clone()]);
                }
            }
            Base::Sigma => {
                for k in 0..n {
                    let mut e = vec![0; n];
                    e[k] = 1;
                    logd.push([(e.clone(), one.clone())].into_iter().collect());
                    let row = (0..n)
                        .map(|i| {
                            if i != k {
                                return GenPoly::new();
                            }
                            let mut sq = vec![0; n];
                            sq[i] = 2;
                            [(vec![0; n], scalar(&x(i) + &z(i))), (sq, -&one)].into_iter().collect()
                        })
                        .collect();
                    dgen.push(row);
                }
            }
            Base::Exp => {
                for k in 0..n {
                    logd.push([(vec![], scalar(z(k)))].into_iter().collect());
                    dgen.push(Vec::new());
                }
            }
        }
        RingData { base, n, vars, ngens, logd, dgen }
    }
}

fn poly_add_term(p: &mut GenPoly, e: Vec<u32>, c: CubicExt) {
    if c.is_zero() {
        return;
    }
    use std::collections::btree_map::Entry;
    match p.entry(e) {
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

fn poly_mul(a: &GenPoly, b: &GenPoly) -> GenPoly {
    let mut out = GenPoly::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            poly_add_term(&mut out, e, ca * cb);
        }
    }
    out
}

/// An element `P(R) * F` of the ring over a fixed base `F`.
#[derive(Clone)]
pub struct RiccatiFun {
    ring: Arc<RingData>,
    terms: GenPoly,
}

impl PartialEq for RiccatiFun {
    fn eq(&self, other: &Self) -> bool {
        self.ring.base == other.ring.base && self.ring.n == other.ring.n && self.terms == other.terms
    }
}

/// The base function itself, the constant polynomial `1`.
pub fn make_function(base: Base, n: usize) -> Result<RiccatiFun> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    let ring = Arc::new(RingData::new(base, n));
    let one = CubicExt::one(n as u32, &ring.vars);
    let terms = [(vec![0; ring.ngens], one)].into_iter().collect();
    Ok(RiccatiFun { ring, terms })
}

/// `d/dx_k f` with 1-based `k`.
pub fn differentiate(f: &RiccatiFun, k: usize) -> Result<RiccatiFun> {
    if k == 0 || k > f.n() {
        return Err(Error::InvalidArgument(format!("derivative index {k} outside 1..={}", f.n())));
    }
    Ok(f.derivative(k - 1))
}

impl RiccatiFun {
    pub fn base(&self) -> Base {
        self.ring.base
    }

    pub fn n(&self) -> usize {
        self.ring.n
    }

    pub fn vars(&self) -> &Vars {
        &self.ring.vars
    }

    pub fn num_generators(&self) -> usize {
        self.ring.ngens
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &CubicExt)> {
        self.terms.iter()
    }

    /// Coefficient of `R^e`.
    pub fn coeff(&self, e: &[u32]) -> CubicExt {
        self.terms.get(e).cloned().unwrap_or_else(|| CubicExt::zero(self.n() as u32, self.vars()))
    }

    fn with_terms(&self, terms: GenPoly) -> RiccatiFun {
        RiccatiFun { ring: self.ring.clone(), terms }
    }

    fn check_ring(&self, other: &RiccatiFun) -> Result<()> {
        if self.base() == other.base() && self.n() == other.n() {
            Ok(())
        } else {
            Err(Error::InvalidArgument(format!(
                "elements over {}({}) and {}({})",
                self.base(),
                self.n(),
                other.base(),
                other.n()
            )))
        }
    }

    pub fn try_add(&self, other: &RiccatiFun) -> Result<RiccatiFun> {
        self.check_ring(other)?;
        let mut t = self.terms.clone();
        for (e, c) in &other.terms {
            poly_add_term(&mut t, e.clone(), c.clone());
        }
        Ok(self.with_terms(t))
    }

    pub fn try_sub(&self, other: &RiccatiFun) -> Result<RiccatiFun> {
        self.try_add(&other.scale(&RatFn::constant(other.vars(), ratio(-1, 1))))
    }

    /// Multiplies by a rational function of `x` and `z`.
    pub fn scale(&self, f: &RatFn) -> RiccatiFun {
        let c = CubicExt::from_base(self.n() as u32, f.clone());
        self.mul_cubic(&c)
    }

    pub fn mul_cubic(&self, c: &CubicExt) -> RiccatiFun {
        let mut t = GenPoly::new();
        for (e, a) in &self.terms {
            poly_add_term(&mut t, e.clone(), a * c);
        }
        self.with_terms(t)
    }

    /// `d/dx_k`, 0-based.
    pub fn derivative(&self, k: usize) -> RiccatiFun {
        let ring = &self.ring;
        let mut out = GenPoly::new();
        for (e, c) in &self.terms {
            poly_add_term(&mut out, e.clone(), c.derivative(k));
            for (i, &ei) in e.iter().enumerate() {
                if ei == 0 {
                    continue;
                }
                let mut lower = e.clone();
                lower[i] -= 1;
                let factor: GenPoly = [(lower, c.scale(&ratio(ei as i64, 1)))].into_iter().collect();
                for (e2, c2) in poly_mul(&factor, &ring.dgen[k][i]) {
                    poly_add_term(&mut out, e2, c2);
                }
            }
        }
        for (e2, c2) in poly_mul(&self.terms, &ring.logd[k]) {
            poly_add_term(&mut out, e2, c2);
        }
        self.with_terms(out)
    }

    /// `P(x, z) -> P(z, x)` coefficientwise. Every base function and every
    /// generator is invariant under the swap, so this is the swap of `P F`.
    pub fn swap_xz(&self) -> Result<RiccatiFun> {
        let mut t = GenPoly::new();
        for (e, c) in &self.terms {
            t.insert(e.clone(), c.swap_xz()?);
        }
        Ok(self.with_terms(t))
    }

    pub fn is_swap_symmetric(&self) -> bool {
        self.swap_xz().map(|s| s == *self).unwrap_or(false)
    }

    /// Generator values and base value at a numeric point.
    fn numeric_parts(&self, x: &[f64], z: &[f64]) -> Result<(Vec<f64>, f64)> {
        let n = self.n();
        if x.len() != n || z.len() != n {
            return Err(Error::Dimension(format!("point of length {}/{} for n = {n}", x.len(), z.len())));
        }
        let ratio_at = |t: f64| -> Result<(f64, f64)> {
            let a = airy_ai(t)?;
            if a.ai == 0.0 {
                return Err(Error::Pole { factor: format!("Ai({t})") });
            }
            Ok((a.ai_prime / a.ai, a.ai))
        };
        match self.base() {
            Base::Psi => {
                let kappa = (n as f64).powf(-1.0 / 3.0);
                let s: f64 = x.iter().chain(z).sum();
                let mut expo = 0.0;
                for i in 0..n {
                    for j in i + 1..n {
                        expo += (x[i] - x[j]) * (z[i] - z[j]);
                    }
                }
                let (r, ai) = ratio_at(kappa * s)?;
                Ok((vec![r], (expo / n as f64).exp() * ai))
            }
            Base::Sigma => {
                let mut gens = Vec::with_capacity(n);
                let mut prod = 1.0;
                for i in 0..n {
                    let (r, ai) = ratio_at(x[i] + z[i])?;
                    gens.push(r);
                    prod *= ai;
                }
                Ok((gens, prod))
            }
            Base::Exp => Ok((Vec::new(), x.iter().zip(z).map(|(a, b)| a * b).sum::<f64>().exp())),
        }
    }

    /// Value of `P` alone, without the base factor.
    pub fn eval_polynomial(&self, x: &[f64], z: &[f64]) -> Result<f64> {
        let (gens, _) = self.numeric_parts(x, z)?;
        self.eval_with(&gens, x, z)
    }

    fn eval_with(&self, gens: &[f64], x: &[f64], z: &[f64]) -> Result<f64> {
        let point: Vec<f64> = x.iter().chain(z).copied().collect();
        let mut acc = 0.0;
        for (e, c) in &self.terms {
            let mon: f64 = e.iter().zip(gens).map(|(&k, g)| g.powi(k as i32)).product();
            acc += c.eval_f64(&point)? * mon;
        }
        Ok(acc)
    }

    /// Value of `P F`.
    pub fn eval_f64(&self, x: &[f64], z: &[f64]) -> Result<f64> {
        let (gens, base) = self.numeric_parts(x, z)?;
        Ok(self.eval_with(&gens, x, z)? * base)
    }
}

impl fmt::Display for RiccatiFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let gens: Vec<String> = e
                    .iter()
                    .enumerate()
                    .filter(|(_, &k)| k > 0)
                    .map(|(i, &k)| {
                        let name = if self.ring.ngens == 1 { "R".to_string() } else { format!("R{}", i + 1) };
                        if k == 1 {
                            name
                        } else {
                            format!("{name}^{k}")
                        }
                    })
                    .collect();
                if gens.is_empty() {
                    format!("[{c}]")
                } else {
                    format!("[{c}]*{}", gens.join("*"))
                }
            })
            .collect();
        write!(f, "({})*{}", parts.join(" + "), self.base())
    }
}

impl fmt::Debug for RiccatiFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RiccatiFun[{}({})]({self})", self.base(), self.n())
    }
}

/// `D[f]`, normal-ordered term by term.
pub fn apply_op(d: &DiffOp, f: &RiccatiFun) -> Result<RiccatiFun> {
    if d.n() != f.n() {
        return Err(Error::Dimension(format!("operator in {} variables, function in {}", d.n(), f.n())));
    }
    let mut memo: HashMap<Monomial, RiccatiFun> = HashMap::new();
    memo.insert(Monomial::one(f.n()), f.clone());
    let mut acc = f.with_terms(GenPoly::new());
    for (alpha, c) in d.terms() {
        let da = derivative_multi(&mut memo, alpha);
        let c = c.extend_to(f.vars())?;
        acc = acc.try_add(&da.scale(&c))?;
    }
    Ok(acc)
}

fn derivative_multi(memo: &mut HashMap<Monomial, RiccatiFun>, alpha: &Monomial) -> RiccatiFun {
    if let Some(v) = memo.get(alpha) {
        return v.clone();
    }
    let k = alpha.exps().iter().position(|&e| e > 0).expect("identity is memoized");
    let lower = alpha.with(k, alpha.exps()[k] - 1);
    let d = derivative_multi(memo, &lower).derivative(k);
    memo.insert(alpha.clone(), d.clone());
    d
}

#[derive(Debug, Clone, Serialize)]
pub struct EigenReport {
    pub op: String,
    #[serde(rename = "fn")]
    pub func: String,
    pub eigenvalue: RatFn,
    pub pass: bool,
    pub residual_terms: usize,
    #[serde(skip)]
    pub residual: RiccatiFun,
}

impl EigenReport {
    pub fn named(mut self, op: impl Into<String>, func: impl Into<String>) -> EigenReport {
        self.op = op.into();
        self.func = func.into();
        self
    }
}

/// `D[f] - eig * f`, reduced; passes iff identically zero. `eig` may be
/// given over `z1..zn` or over `x1..xn, z1..zn`.
pub fn eigen_check(d: &DiffOp, f: &RiccatiFun, eig: &RatFn) -> Result<EigenReport> {
    let e = eig.extend_to(f.vars())?;
    let residual = apply_op(d, f)?.try_sub(&f.scale(&e))?;
    Ok(EigenReport {
        op: String::new(),
        func: String::new(),
        eigenvalue: eig.clone(),
        pass: residual.is_zero(),
        residual_terms: residual.num_terms(),
        residual,
    })
}

pub fn z_vars(n: usize) -> Vars {
    Vars::new((1..=n).map(|i| format!("z{i}")))
}

/// The eigenvalue of `sum (d_i^2 - x_i)` on `psi`, read off from the exact
/// application; an error if `psi` is not an eigenfunction.
pub fn derive_pn(n: usize) -> Result<RatFn> {
    let psi = make_function(Base::Psi, n)?;
    let h = make_standard(n, Standard::AirySum)?;
    let hp = apply_op(&h, &psi)?;
    let zero = vec![0];
    if hp.terms().any(|(e, _)| *e != zero) {
        return Err(Error::Unverified(format!("H psi has Riccati terms: {hp}")));
    }
    let c = hp.coeff(&zero);
    let base = c.as_base().ok_or_else(|| Error::Unverified(format!("eigenvalue {c} involves kappa")))?;
    base.restrict_to(&z_vars(n))
}

/// `sum_j ((sum_i (z_i - z_j))^2 + z_j)`, the closed form as printed.
pub fn printed_pn(n: usize) -> RatFn {
    let v = z_vars(n);
    let z = |i: usize| MPoly::var(&v, i);
    let mut acc = MPoly::zero(&v);
    for j in 0..n {
        let inner = (0..n).fold(MPoly::zero(&v), |a, i| &a + &(&z(i) - &z(j)));
        acc = &(&acc + &inner.pow(2)) + &z(j);
    }
    RatFn::from_poly(acc)
}

#[derive(Debug, Clone, Serialize)]
pub struct PnAdjudication {
    pub n: usize,
    pub computed: RatFn,
    pub printed: RatFn,
    pub agree: bool,
    pub computed_text: String,
    pub printed_text: String,
}

pub fn pn_adjudication(n: usize) -> Result<PnAdjudication> {
    let computed = derive_pn(n)?;
    let printed = printed_pn(n);
    Ok(PnAdjudication {
        n,
        agree: computed == printed,
        computed_text: computed.to_string(),
        printed_text: printed.to_string(),
        computed,
        printed,
    })
}

/// Coefficient of `R` in `sum_j d_j^2 psi`; zero when the first-derivative
/// terms cancel across `j`.
pub fn laplacian_riccati_linear_coeff(n: usize) -> Result<CubicExt> {
    let psi = make_function(Base::Psi, n)?;
    let lap = apply_op(&make_standard(n, Standard::Laplacian)?, &psi)?;
    Ok(lap.coeff(&[1]))
}

/// `prod_{i<j} (z_i - z_j)^{-1}` times the symbol of `D` at `zeta = z`,
/// over `x1..xn, z1..zn`.
pub fn bispectral_symbol(d: &DiffOp) -> Result<RatFn> {
    if !d.is_translation_invariant() {
        return Err(Error::NotTranslationInvariant);
    }
    let n = d.n();
    let vars = Vars::xz(n);
    let sym = d.symbol().symbol.rename(&vars);
    let mut den = MPoly::one(&vars);
    for i in 0..n {
        for j in i + 1..n {
            den = &den * &(&MPoly::var(&vars, n + i) - &MPoly::var(&vars, n + j));
        }
    }
    sym.try_div(&RatFn::from_poly(den))
}

/// `D_n[f] / prod_{i<j} (z_i - z_j)`.
pub fn tilde_function(base: Base, n: usize) -> Result<RiccatiFun> {
    let d = intertwiner_for(n)?;
    let vars = Vars::xz(n);
    let mut den = MPoly::one(&vars);
    for i in 0..n {
        for j in i + 1..n {
            den = &den * &(&MPoly::var(&vars, n + i) - &MPoly::var(&vars, n + j));
        }
    }
    Ok(apply_op(&d, &make_function(base, n)?)?.scale(&RatFn::new(MPoly::one(&vars), den)?))
}

/// Whether exchanging `x_i <-> z_i` fixes `f`.
pub fn symmetry_check(f: &RatFn) -> bool {
    swap_xz(f).map(|g| g == *f).unwrap_or(false)
}

/// `psi` is symmetric iff its exponent and its Airy argument are.
pub fn psi_symmetry_check(n: usize) -> bool {
    let v = Vars::xz(n);
    let mut expo = MPoly::zero(&v);
    for i in 0..n {
        for j in i + 1..n {
            let dx = &MPoly::var(&v, i) - &MPoly::var(&v, j);
            let dz = &MPoly::var(&v, n + i) - &MPoly::var(&v, n + j);
            expo = &expo + &(&dx * &dz);
        }
    }
    let s = (0..2 * n).fold(MPoly::zero(&v), |acc, i| &acc + &MPoly::var(&v, i));
    symmetry_check(&RatFn::from_poly(expo).scale(&ratio(1, n as i64))) && symmetry_check(&RatFn::from_poly(s))
}

/// Numeric evidence that no `c(z) * D_n[sigma]` is symmetric.
///
/// With `r(x, z) = tilde_sigma(x, z) / tilde_sigma(z, x)`, a symmetric
/// `c(z) tilde_sigma` forces `r(x, z) = c(x) / c(z)`, so the quotient
/// `r(x, z) / r(x', z)` could not depend on `z`. The record reports both the
/// spread of `r` across two `x` values and that quotient's change in `z`.
#[derive(Debug, Clone, Serialize)]
pub struct AsymmetryWitness {
    pub n: usize,
    pub seed: u64,
    pub x: Vec<f64>,
    pub x_alt: Vec<f64>,
    pub z: Vec<f64>,
    pub z_alt: Vec<f64>,
    /// `r(x, z)`, `r(x', z)`, `r(x, z')`, `r(x', z')`
    pub ratios: [f64; 4],
    /// relative difference of `r(x, z)` and `r(x', z)`
    pub x_dependence: f64,
    /// relative difference of `r(x, z) / r(x', z)` and `r(x, z') / r(x', z')`
    pub separability_defect: f64,
    /// `tilde_psi(x, z) / tilde_psi(z, x)` at `(x, z)`
    pub psi_ratio: f64,
    /// exact: `D_n[sigma] / sigma` is fixed by the swap
    pub exact_ratio_symmetric: bool,
    pub attempts: usize,
    pub found: bool,
}

pub fn relative_difference(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(1e-300)
}

/// Samples from `[-n, -1]^n` with coordinate gaps above `0.5` until all
/// four ratios are well defined and both differences exceed `threshold`.
pub fn sigma_asymmetry_witness(n: usize, seed: u64, threshold: f64) -> Result<AsymmetryWitness> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("witness needs n >= 2, got {n}")));
    }
    let sigma_t = tilde_function(Base::Sigma, n)?;
    let psi_t = tilde_function(Base::Psi, n)?;
    let exact_ratio_symmetric = sigma_t.is_swap_symmetric();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let lo = -(n as f64);
    let sample = |rng: &mut ChaCha8Rng| -> Vec<f64> {
        loop {
            let p: Vec<f64> = (0..n).map(|_| rng.gen_range(lo..-1.0)).collect();
            let ok = (0..n).all(|i| (i + 1..n).all(|j| (p[i] - p[j]).abs() > 0.5));
            if ok {
                return p;
            }
        }
    };
    let ratio_at = |x: &[f64], z: &[f64]| -> Option<f64> {
        let a = sigma_t.eval_f64(x, z).ok()?;
        let b = sigma_t.eval_f64(z, x).ok()?;
        let floor = 1e-8 * sigma_t.eval_polynomial(x, z).ok()?.abs().max(1.0);
        (b.abs() > 1e-300 && a.abs() > 0.0 && b.abs() > floor * 1e-300).then_some(a / b)
    };
    let mut attempts = 0;
    let mut best: Option<AsymmetryWitness> = None;
    while attempts < 200 {
        attempts += 1;
        let (x, x_alt, z, z_alt) = (sample(&mut rng), sample(&mut rng), sample(&mut rng), sample(&mut rng));
        let (Some(a), Some(b), Some(c), Some(e)) =
            (ratio_at(&x, &z), ratio_at(&x_alt, &z), ratio_at(&x, &z_alt), ratio_at(&x_alt, &z_alt))
        else {
            continue;
        };
        let x_dependence = relative_difference(a, b);
        let separability_defect = relative_difference(a / b, c / e);
        let psi_ratio = psi_t.eval_f64(&x, &z)? / psi_t.eval_f64(&z, &x)?;
        let found = x_dependence > threshold && separability_defect > threshold;
        let w = AsymmetryWitness {
            n,
            seed,
            x,
            x_alt,
            z,
            z_alt,
            ratios: [a, b, c, e],
            x_dependence,
            separability_defect,
            psi_ratio,
            exact_ratio_symmetric,
            attempts,
            found,
        };
        if found {
            return Ok(w);
        }
        best.get_or_insert(w);
    }
    let mut w = best.ok_or_else(|| Error::Domain("no admissible witness points".into()))?;
    w.attempts = attempts;
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;
    use crate::intertwiner::known_intertwiner;

    fn zv(n: usize, i: usize) -> RatFn {
        RatFn::var(&z_vars(n), i)
    }

    #[test]
    fn psi2_log_derivative() {
        let psi = make_function(Base::Psi, 2).unwrap();
        let d1 = differentiate(&psi, 1).unwrap();
        let v = Vars::xz(2);
        let half_z12 = (&RatFn::var(&v, 2) - &RatFn::var(&v, 3)).scale(&ratio(1, 2));
        assert_eq!(d1.coeff(&[0]), CubicExt::from_base(2, half_z12));
        assert_eq!(d1.coeff(&[1]), CubicExt::kappa(2, &v));
        assert_eq!(d1.num_terms(), 2);
        assert!(differentiate(&psi, 3).is_err());
    }

    #[test]
    fn airy_equation_n1() {
        let psi = make_function(Base::Psi, 1).unwrap();
        let dd = psi.derivative(0).derivative(0);
        let v = Vars::xz(1);
        let t = &RatFn::var(&v, 0) + &RatFn::var(&v, 1);
        assert_eq!(dd, psi.scale(&t));
        let r = eigen_check(&make_standard(1, Standard::AirySum).unwrap(), &psi, &zv(1, 0)).unwrap();
        assert!(r.pass);
    }

    #[test]
    fn difference_operator_on_psi() {
        let psi = make_function(Base::Psi, 2).unwrap();
        let d12 = make_standard(2, Standard::Diff(1, 2)).unwrap();
        assert!(eigen_check(&d12, &psi, &(&zv(2, 0) - &zv(2, 1))).unwrap().pass);
        assert!(!eigen_check(&d12, &psi, &zv(2, 0)).unwrap().pass);
    }

    #[test]
    fn mixed_partials_commute() {
        for base in [Base::Psi, Base::Sigma, Base::Exp] {
            let f = make_function(base, 2).unwrap();
            let g = f.derivative(0).derivative(0).scale(&RatFn::var(&Vars::xz(2), 3));
            assert_eq!(g.derivative(0).derivative(1), g.derivative(1).derivative(0), "{base}");
        }
    }

    #[test]
    fn pn_small_cases() {
        assert_eq!(derive_pn(1).unwrap(), zv(1, 0));
        let z12 = &zv(2, 0) - &zv(2, 1);
        let expect = &(&z12 * &z12).scale(&ratio(1, 2)) + &(&zv(2, 0) + &zv(2, 1));
        assert_eq!(derive_pn(2).unwrap(), expect);
        let printed = &(&z12 * &z12).scale(&rat(2)) + &(&zv(2, 0) + &zv(2, 1));
        assert_eq!(printed_pn(2), printed);
        assert!(!pn_adjudication(2).unwrap().agree);
        assert!(pn_adjudication(1).unwrap().agree);
    }

    #[test]
    fn d2_theorems() {
        let d = known_intertwiner(2).unwrap();
        let ht = make_standard(2, Standard::Deformed).unwrap();
        let psi_t = apply_op(&d, &make_function(Base::Psi, 2).unwrap()).unwrap();
        assert!(eigen_check(&ht, &psi_t, &derive_pn(2).unwrap()).unwrap().pass);
        let sigma_t = apply_op(&d, &make_function(Base::Sigma, 2).unwrap()).unwrap();
        assert!(eigen_check(&ht, &sigma_t, &(&zv(2, 0) + &zv(2, 1))).unwrap().pass);
        assert!(!sigma_t.is_swap_symmetric());
    }

    #[test]
    fn d2_on_psi_is_multiplication() {
        let d = known_intertwiner(2).unwrap();
        let psi = make_function(Base::Psi, 2).unwrap();
        let v = Vars::xz(2);
        let x12 = &RatFn::var(&v, 0) - &RatFn::var(&v, 1);
        let z12 = &RatFn::var(&v, 2) - &RatFn::var(&v, 3);
        let m = &z12 - &RatFn::constant(&v, rat(2)).try_div(&x12).unwrap();
        assert_eq!(apply_op(&d, &psi).unwrap(), psi.scale(&m));
    }

    #[test]
    fn bispectral_symbol_d2() {
        let d = known_intertwiner(2).unwrap();
        let s = bispectral_symbol(&d).unwrap();
        let v = Vars::xz(2);
        let x12 = &MPoly::var(&v, 0) - &MPoly::var(&v, 1);
        let z12 = &MPoly::var(&v, 2) - &MPoly::var(&v, 3);
        let expect = &RatFn::one(&v) - &RatFn::new(MPoly::constant(&v, rat(2)), &x12 * &z12).unwrap();
        assert_eq!(s, expect);
        assert!(symmetry_check(&s));
        let plain = bispectral_symbol(&make_standard(2, Standard::Diff(1, 2)).unwrap()).unwrap();
        assert!(plain.is_one());
        assert_eq!(
            bispectral_symbol(&make_standard(2, Standard::AirySum).unwrap()),
            Err(Error::NotTranslationInvariant)
        );
    }

    #[test]
    fn psi_is_symmetric_and_first_derivatives_cancel() {
        for n in 1..=4 {
            assert!(psi_symmetry_check(n));
        }
        for n in 1..=3 {
            assert!(laplacian_riccati_linear_coeff(n).unwrap().is_zero());
        }
    }

    #[test]
    fn numeric_value_matches_definition() {
        let psi = make_function(Base::Psi, 1).unwrap();
        let v = psi.eval_f64(&[0.3], &[-0.1]).unwrap();
        assert!((v - airy_ai(0.2).unwrap().ai).abs() < 1e-15);
        let f = make_function(Base::Exp, 2).unwrap().derivative(0);
        let val = f.eval_f64(&[0.5, 0.1], &[2.0, -1.0]).unwrap();
        assert!((val - 2.0 * (0.5f64 * 2.0 - 0.1).exp()).abs() < 1e-12);
    }

    #[test]
    fn witness_n2() {
        let w = sigma_asymmetry_witness(2, 7, 1e-3).unwrap();
        assert!(w.found, "{w:?}");
        assert!(!w.exact_ratio_symmetric);
        assert!((w.psi_ratio - 1.0).abs() < 1e-12);
    }
}
