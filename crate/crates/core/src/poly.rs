//! Sparse multivariate polynomials with arbitrary-precision integer
//! coefficients, used as the value type of the counting invariants.

use std::cmp::{Ordering, Reverse};
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Pow, Signed, Zero};
use serde_json::json;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiPoly {
    vars: Vec<String>,
    terms: BTreeMap<Vec<u32>, BigInt>,
}

impl MultiPoly {
    pub fn zero<S: Into<String>>(vars: impl IntoIterator<Item = S>) -> Self {
        MultiPoly {
            vars: vars.into_iter().map(Into::into).collect(),
            terms: BTreeMap::new(),
        }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds `coeff * x^exps`. Panics if `exps` has the wrong arity.
    pub fn add_term(&mut self, exps: Vec<u32>, coeff: impl Into<BigInt>) {
        assert_eq!(exps.len(), self.vars.len(), "exponent arity");
        let coeff = coeff.into();
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn coefficient(&self, exps: &[u32]) -> BigInt {
        self.terms.get(exps).cloned().unwrap_or_default()
    }

    /// Sum of two polynomials over the same variables.
    pub fn add(&self, other: &MultiPoly) -> Result<MultiPoly> {
        if self.vars != other.vars {
            return Err(Error::Domain(format!(
                "cannot add polynomials in {:?} and {:?}",
                self.vars, other.vars
            )));
        }
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    /// Terms in canonical order: ascending total degree, ties broken so that
    /// earlier variables come first (`q1` before `q2`).
    pub fn terms(&self) -> Vec<(&[u32], &BigInt)> {
        let mut v: Vec<_> = self.terms.iter().map(|(e, c)| (e.as_slice(), c)).collect();
        v.sort_by(|a, b| canonical_cmp(a.0, b.0));
        v
    }

    /// Substitutes integer values for the named variables. Unknown names are
    /// an error; the result is a polynomial in the remaining variables.
    pub fn specialize(&self, bindings: &[(&str, i64)]) -> Result<MultiPoly> {
        let mut value: Vec<Option<BigInt>> = vec![None; self.vars.len()];
        for (name, v) in bindings {
            let idx = self
                .vars
                .iter()
                .position(|x| x == name)
                .ok_or_else(|| Error::Domain(format!("unknown variable {name:?}")))?;
            value[idx] = Some(BigInt::from(*v));
        }
        let keep: Vec<usize> = (0..self.vars.len())
            .filter(|&i| value[i].is_none())
            .collect();
        let mut out = MultiPoly::zero(keep.iter().map(|&i| self.vars[i].clone()));
        for (exps, coeff) in &self.terms {
            let mut c = coeff.clone();
            for (i, val) in value.iter().enumerate() {
                if let Some(val) = val {
                    c *= Pow::pow(val, exps[i]);
                }
            }
            out.add_term(keep.iter().map(|&i| exps[i]).collect(), c);
        }
        Ok(out)
    }

    /// Value with every variable set to 1.
    pub fn sum_of_coefficients(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Structured form; terms appear in the same order as the text form.
    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<_> = self
            .terms()
            .into_iter()
            .map(|(e, c)| json!({ "exponents": e, "coefficient": c.to_string() }))
            .collect();
        json!({
            "vars": self.vars,
            "terms": terms,
            "text": self.to_string(),
        })
    }
}

fn canonical_cmp(a: &[u32], b: &[u32]) -> Ordering {
    let deg = |e: &[u32]| e.iter().map(|&x| x as u64).sum::<u64>();
    (deg(a), Reverse(a)).cmp(&(deg(b), Reverse(b)))
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms();
        if terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (exps, coeff)) in terms.into_iter().enumerate() {
            let neg = coeff.is_negative();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mag = coeff.abs();
            let mut factors: Vec<String> = Vec::new();
            for (var, &e) in self.vars.iter().zip(exps) {
                match e {
                    0 => {}
                    1 => factors.push(var.clone()),
                    _ => factors.push(format!("{var}^{e}")),
                }
            }
            if factors.is_empty() {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                f.write_str(&factors.join("*"))?;
            }
        }
        Ok(())
    }
}
