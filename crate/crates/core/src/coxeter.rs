//! Generalized Coxeter racks `CR((Z/n)^m, α, A)`.
//!
//! The carrier is the set of vectors whose norm `<x,x>` is a unit, and
//! `x▷y = α(x - 2<x,y><y,y>⁻¹ y)`.

use std::fmt;

use crate::error::{parse_err, Error, Result};
use crate::modring::{inv_mod, is_unit, ModVector, Modulus, SymForm};
use crate::rack::FiniteRack;

/// Module data for a Coxeter rack: `V = (Z/n)^m`, a unit scalar and a form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CoxeterSpec {
    modulus: Modulus,
    alpha: u32,
    form: SymForm,
}

impl CoxeterSpec {
    pub fn new(modulus: Modulus, alpha: i64, form: SymForm) -> Result<Self> {
        if form.modulus() != modulus {
            return Err(Error::ModulusMismatch {
                left: modulus.get(),
                right: form.modulus().get(),
            });
        }
        let alpha = modulus.reduce(alpha);
        if !is_unit(alpha, modulus) {
            return Err(Error::NotAUnit {
                value: alpha,
                modulus: modulus.get(),
            });
        }
        Ok(CoxeterSpec {
            modulus,
            alpha,
            form,
        })
    }

    /// Convenience constructor from raw parameters and form text.
    pub fn from_parts(n: u32, dim: usize, alpha: i64, form: &str) -> Result<Self> {
        let modulus = Modulus::new(n)?;
        let form = SymForm::parse(form, modulus)?;
        if form.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: form.dim(),
            });
        }
        Self::new(modulus, alpha, form)
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn dim(&self) -> usize {
        self.form.dim()
    }

    pub fn alpha(&self) -> u32 {
        self.alpha
    }

    pub fn form(&self) -> &SymForm {
        &self.form
    }

    /// Same rack data with the form replaced by `beta * A`.
    pub fn with_scaled_form(&self, beta: u32) -> Result<Self> {
        Self::new(self.modulus, beta as i64, self.form.clone())?;
        Ok(CoxeterSpec {
            form: self.form.scaled(beta),
            ..self.clone()
        })
    }

    /// `modulus=3 dim=2 alpha=1 form=1,2;2,0`
    pub fn directive(&self) -> String {
        format!(
            "modulus={} dim={} alpha={} form={}",
            self.modulus,
            self.dim(),
            self.alpha,
            self.form
        )
    }

    pub(crate) fn parse_directive(text: &str) -> Result<Self> {
        let mut n = None;
        let mut dim = None;
        let mut alpha = None;
        let mut form = None;
        for tok in text.split_whitespace() {
            let (key, value) = tok
                .split_once('=')
                .ok_or_else(|| parse_err(1, format!("expected key=value, found {tok:?}")))?;
            let num = || {
                value
                    .parse::<i64>()
                    .map_err(|_| parse_err(1, format!("bad value for {key}: {value:?}")))
            };
            match key {
                "modulus" => n = Some(num()?),
                "dim" => dim = Some(num()?),
                "alpha" => alpha = Some(num()?),
                "form" => form = Some(value.to_string()),
                _ => return Err(parse_err(1, format!("unknown key {key:?}"))),
            }
        }
        let missing = |k: &str| parse_err(1, format!("coxeter directive is missing {k}"));
        let n = n.ok_or_else(|| missing("modulus"))?;
        let dim = dim.ok_or_else(|| missing("dim"))?;
        let alpha = alpha.ok_or_else(|| missing("alpha"))?;
        let form = form.ok_or_else(|| missing("form"))?;
        let n = u32::try_from(n).map_err(|_| Error::InvalidModulus(0))?;
        let dim = usize::try_from(dim).map_err(|_| parse_err(1, "dim must be positive"))?;
        Self::from_parts(n, dim, alpha, &form)
    }
}

impl fmt::Display for CoxeterSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "CR((Z/{})^{}, {}, [{}])",
            self.modulus,
            self.dim(),
            self.alpha,
            self.form
        )
    }
}

/// All vectors with unit norm, in lexicographic order.
pub fn carrier(spec: &CoxeterSpec) -> Result<Vec<ModVector>> {
    let n = spec.modulus;
    let dim = spec.dim();
    let size = n.module_size(dim)?;
    Ok((0..size)
        .map(|c| ModVector::from_code(c, dim, n))
        .filter(|v| is_unit(spec.form.eval_raw(v.entries(), v.entries()), n))
        .collect())
}

/// Builds the Coxeter rack with its carrier as labels.
pub fn build_coxeter_rack(spec: &CoxeterSpec) -> Result<FiniteRack> {
    let n = spec.modulus;
    let dim = spec.dim();
    let elems = carrier(spec)?;
    if elems.is_empty() {
        return Err(Error::EmptyCarrier);
    }
    let k = elems.len();
    let mut index = vec![u32::MAX; n.module_size(dim)?];
    for (i, v) in elems.iter().enumerate() {
        index[v.code()] = i as u32;
    }
    let alpha_inv = inv_mod(spec.alpha, n)?;
    let norm_inv: Vec<u32> = elems
        .iter()
        .map(|y| inv_mod(spec.form.eval_raw(y.entries(), y.entries()), n))
        .collect::<Result<_>>()?;
    let two = n.two();

    let lookup = |v: &ModVector| -> Result<u32> {
        match index[v.code()] {
            u32::MAX => Err(Error::Domain(format!(
                "internal error: {v} left the carrier of {spec}"
            ))),
            i => Ok(i),
        }
    };

    let mut op = Vec::with_capacity(k * k);
    let mut inv = Vec::with_capacity(k * k);
    for x in &elems {
        for (j, y) in elems.iter().enumerate() {
            let xy = spec.form.eval_raw(x.entries(), y.entries());
            let c = n.mul(n.mul(two, xy), norm_inv[j]);
            let reflected = x.sub(&y.scale(c))?;
            op.push(lookup(&reflected.scale(spec.alpha))?);
            inv.push(lookup(&reflected.scale(alpha_inv))?);
        }
    }
    let rack = FiniteRack::from_flat(op, k)?;
    for i in 0..k {
        for j in 0..k {
            if rack.inv_op(i, j) != inv[i * k + j] as usize {
                return Err(Error::Domain(format!(
                    "internal error: inverse formula disagrees with the table at ({}, {})",
                    i + 1,
                    j + 1
                )));
            }
        }
    }
    Ok(rack.with_module(elems, spec.clone()))
}
