//! JSON forms of `MPoly` and `RatFn`.
//!
//! `{"vars": [...], "terms": [[[exponents], "p/q"], ...]}` for polynomials and
//! `{"vars": [...], "num": [...], "den": [...]}` for rational functions.
//! Terms are listed leading-first; rationals are always `p/q`.

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::mpoly::{MPoly, Monomial, Vars};
use super::rat::{format_rat, parse_rat};
use super::ratfn::{ratfn_normalize, RatFn};
use crate::error::Result;

type TermList = Vec<(Vec<u32>, String)>;

#[derive(Serialize, Deserialize)]
struct MPolyJson {
    vars: Vec<String>,
    terms: TermList,
}

#[derive(Serialize, Deserialize)]
struct RatFnJson {
    vars: Vec<String>,
    num: TermList,
    den: TermList,
}

fn term_list(p: &MPoly) -> TermList {
    p.terms().rev().map(|(m, c)| (m.exps().to_vec(), format_rat(c))).collect()
}

fn from_term_list(vars: &Vars, terms: &TermList) -> Result<MPoly> {
    let parsed = terms
        .iter()
        .map(|(e, c)| Ok((Monomial::new(e.clone()), parse_rat(c)?)))
        .collect::<Result<Vec<_>>>()?;
    MPoly::from_terms(vars, parsed)
}

impl Serialize for MPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MPolyJson { vars: self.vars().to_vec(), terms: term_list(self) }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for MPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = MPolyJson::deserialize(d)?;
        from_term_list(&Vars::new(j.vars), &j.terms).map_err(serde::de::Error::custom)
    }
}

impl Serialize for RatFn {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RatFnJson { vars: self.vars().to_vec(), num: term_list(self.num()), den: term_list(self.den()) }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for RatFn {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = RatFnJson::deserialize(d)?;
        let vars = Vars::new(j.vars);
        let num = from_term_list(&vars, &j.num).map_err(serde::de::Error::custom)?;
        let den = from_term_list(&vars, &j.den).map_err(serde::de::Error::custom)?;
        ratfn_normalize(num, den).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat::{rat, ratio};

    #[test]
    fn ratfn_layout() {
        let v = Vars::x(2);
        let d = &MPoly::var(&v, 0) - &MPoly::var(&v, 1);
        let f = ratfn_normalize(MPoly::constant(&v, ratio(-2, 3)), d).unwrap();
        let s = serde_json::to_string(&f).unwrap();
        assert_eq!(
            s,
            r#"{"vars":["x1","x2"],"num":[[[0,0],"2/3"]],"den":[[[0,1],"1/1"],[[1,0],"-1/1"]]}"#
        );
        let back: RatFn = serde_json::from_str(&s).unwrap();
        assert_eq!(back, f);
        assert_eq!(serde_json::to_string(&back).unwrap(), s);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(serde_json::from_str::<MPoly>(r#"{"vars":["x1"],"terms":[[[1,2],"1"]]}"#).is_err());
        assert!(serde_json::from_str::<RatFn>(r#"{"vars":["x1"],"num":[[[1],"1"]],"den":[]}"#).is_err());
        let p: MPoly = serde_json::from_str(r#"{"vars":["x1"],"terms":[[[1],"3"]]}"#).unwrap();
        assert_eq!(p, MPoly::var(&Vars::x(1), 0).scale(&rat(3)));
    }
}
