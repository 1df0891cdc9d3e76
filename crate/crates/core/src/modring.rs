//! Exact arithmetic over Z/n: residues, vectors in (Z/n)^m, symmetric
//! bilinear forms and submodule spans.
//!
//! Residues are always kept normalized in `[0, n)`.

use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer;

use crate::error::{parse_err, Error, Result};

/// Largest module (Z/n)^m we are willing to enumerate.
pub const MAX_MODULE_SIZE: u64 = 1 << 24;

/// A modulus `n >= 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Modulus(u32);

impl Modulus {
    pub fn new(n: u32) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidModulus(n as u64));
        }
        Ok(Modulus(n))
    }

    #[inline]
    pub fn get(self) -> u32 {
        self.0
    }

    /// Reduces an arbitrary integer into `[0, n)`.
    #[inline]
    pub fn reduce(self, a: i64) -> u32 {
        a.rem_euclid(self.0 as i64) as u32
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        ((a as u64 + b as u64) % self.0 as u64) as u32
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        ((a as u64 + self.0 as u64 - b as u64 % self.0 as u64) % self.0 as u64) as u32
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.0 as u64) as u32
    }

    /// The ring element `1 + 1`; zero when `n = 2`.
    #[inline]
    pub fn two(self) -> u32 {
        2 % self.0
    }

    /// All units of Z/n in increasing order.
    pub fn units(self) -> Vec<u32> {
        (1..self.0).filter(|&a| is_unit(a, self)).collect()
    }

    /// Number of vectors in (Z/n)^dim, if it is small enough to enumerate.
    pub fn module_size(self, dim: usize) -> Result<usize> {
        let mut size: u64 = 1;
        for _ in 0..dim {
            size = size.saturating_mul(self.0 as u64);
            if size > MAX_MODULE_SIZE {
                return Err(Error::ModuleTooLarge {
                    modulus: self.0,
                    dim,
                });
            }
        }
        Ok(size as usize)
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// True iff `a` is invertible modulo `n`.
pub fn is_unit(a: u32, n: Modulus) -> bool {
    (a % n.get()).gcd(&n.get()) == 1
}

/// Multiplicative inverse of `a` modulo `n`.
pub fn inv_mod(a: u32, n: Modulus) -> Result<u32> {
    let a = (a % n.get()) as i64;
    let eg = a.extended_gcd(&(n.get() as i64));
    if eg.gcd != 1 {
        return Err(Error::NotAUnit {
            value: a as u32,
            modulus: n.get(),
        });
    }
    Ok(n.reduce(eg.x))
}

/// An element of (Z/n)^m.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ModVector {
    entries: Vec<u32>,
    modulus: Modulus,
}

impl ModVector {
    /// Builds a vector, reducing every entry into `[0, n)`.
    pub fn new<I>(entries: I, modulus: Modulus) -> Self
    where
        I: IntoIterator,
        I::Item: Into<i64>,
    {
        let entries = entries
            .into_iter()
            .map(|e| modulus.reduce(e.into()))
            .collect();
        ModVector { entries, modulus }
    }

    pub fn zero(dim: usize, modulus: Modulus) -> Self {
        ModVector {
            entries: vec![0; dim],
            modulus,
        }
    }

    /// Inverse of [`ModVector::code`].
    pub fn from_code(mut code: usize, dim: usize, modulus: Modulus) -> Self {
        let n = modulus.get() as usize;
        let mut entries = vec![0u32; dim];
        for e in entries.iter_mut().rev() {
            *e = (code % n) as u32;
            code /= n;
        }
        ModVector { entries, modulus }
    }

    /// Base-n integer whose digits are the entries, most significant first.
    /// Code order coincides with lexicographic order.
    pub fn code(&self) -> usize {
        let n = self.modulus.get() as usize;
        self.entries.iter().fold(0, |acc, &e| acc * n + e as usize)
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&e| e == 0)
    }

    fn check_compatible(&self, other: &ModVector) -> Result<()> {
        if self.modulus != other.modulus {
            return Err(Error::ModulusMismatch {
                left: self.modulus.get(),
                right: other.modulus.get(),
            });
        }
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &ModVector) -> Result<ModVector> {
        self.check_compatible(other)?;
        let n = self.modulus;
        Ok(ModVector {
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(&a, &b)| n.add(a, b))
                .collect(),
            modulus: n,
        })
    }

    pub fn sub(&self, other: &ModVector) -> Result<ModVector> {
        self.check_compatible(other)?;
        let n = self.modulus;
        Ok(ModVector {
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(&a, &b)| n.sub(a, b))
                .collect(),
            modulus: n,
        })
    }

    pub fn scale(&self, c: u32) -> ModVector {
        let n = self.modulus;
        ModVector {
            entries: self.entries.iter().map(|&a| n.mul(a, c)).collect(),
            modulus: n,
        }
    }
}

impl fmt::Display for ModVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str(")")
    }
}

/// A symmetric m×m matrix over Z/n defining `<x,y> = x A y^t`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SymForm {
    modulus: Modulus,
    dim: usize,
    /// Row-major, reduced.
    entries: Vec<u32>,
}

impl SymForm {
    pub fn new(rows: &[Vec<i64>], modulus: Modulus) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 {
            return Err(Error::Domain("form matrix must be at least 1x1".into()));
        }
        let mut entries = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: row.len(),
                });
            }
            entries.extend(row.iter().map(|&e| modulus.reduce(e)));
        }
        for i in 0..dim {
            for j in (i + 1)..dim {
                if entries[i * dim + j] != entries[j * dim + i] {
                    return Err(Error::NotSymmetric {
                        row: i + 1,
                        col: j + 1,
                    });
                }
            }
        }
        Ok(SymForm {
            modulus,
            dim,
            entries,
        })
    }

    /// Parses `"1,2;2,0"`: rows separated by `;`, entries by `,`.
    pub fn parse(text: &str, modulus: Modulus) -> Result<Self> {
        let rows = text
            .trim()
            .split(';')
            .map(|row| {
                row.split(',')
                    .map(|e| {
                        e.trim()
                            .parse::<i64>()
                            .map_err(|_| parse_err(1, format!("bad form entry {:?}", e.trim())))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        SymForm::new(&rows, modulus)
    }

    pub fn zero(dim: usize, modulus: Modulus) -> Self {
        SymForm {
            modulus,
            dim,
            entries: vec![0; dim * dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    #[inline]
    pub fn entry(&self, i: usize, j: usize) -> u32 {
        self.entries[i * self.dim + j]
    }

    pub fn rows(&self) -> Vec<Vec<u32>> {
        self.entries.chunks(self.dim).map(<[u32]>::to_vec).collect()
    }

    /// The form `beta * A`.
    pub fn scaled(&self, beta: u32) -> SymForm {
        SymForm {
            modulus: self.modulus,
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .map(|&a| self.modulus.mul(a, beta))
                .collect(),
        }
    }

    /// `x A y^t` on raw residue slices; callers guarantee dimensions.
    pub(crate) fn eval_raw(&self, x: &[u32], y: &[u32]) -> u32 {
        let n = self.modulus.get() as u64;
        let mut acc: u64 = 0;
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            let row = &self.entries[i * self.dim..(i + 1) * self.dim];
            let mut ay: u64 = 0;
            for (&a, &yj) in row.iter().zip(y) {
                ay = (ay + a as u64 * yj as u64) % n;
            }
            acc = (acc + xi as u64 * ay) % n;
        }
        acc as u32
    }
}

impl fmt::Display for SymForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.entries.chunks(self.dim).enumerate() {
            if i > 0 {
                f.write_str(";")?;
            }
            for (j, e) in row.iter().enumerate() {
                if j > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{e}")?;
            }
        }
        Ok(())
    }
}

/// Evaluates `<x, y> = x A y^t` mod n.
pub fn bilinear_eval(form: &SymForm, x: &ModVector, y: &ModVector) -> Result<u32> {
    for v in [x, y] {
        if v.modulus() != form.modulus() {
            return Err(Error::ModulusMismatch {
                left: form.modulus().get(),
                right: v.modulus().get(),
            });
        }
        if v.dim() != form.dim() {
            return Err(Error::DimensionMismatch {
                expected: form.dim(),
                found: v.dim(),
            });
        }
    }
    Ok(form.eval_raw(x.entries(), y.entries()))
}

/// The submodule of (Z/n)^dim spanned by `gens`.
///
/// Closure iteration: starting from `{0}`, keep adding generators to every
/// vector reached until nothing new appears. Integer combinations of the
/// generators are exactly the Z/n-span, so scalar multiples come for free.
pub fn span_enumerate(
    gens: &[ModVector],
    modulus: Modulus,
    dim: usize,
) -> Result<BTreeSet<ModVector>> {
    for g in gens {
        if g.modulus() != modulus {
            return Err(Error::ModulusMismatch {
                left: modulus.get(),
                right: g.modulus().get(),
            });
        }
        if g.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: g.dim(),
            });
        }
    }
    let size = modulus.module_size(dim)?;
    let codes: Vec<usize> = gens.iter().map(ModVector::code).collect();
    let reached = span_codes(&codes, modulus, dim, size);
    Ok(reached
        .iter()
        .enumerate()
        .filter(|(_, &r)| r)
        .map(|(c, _)| ModVector::from_code(c, dim, modulus))
        .collect())
}

/// Span on vector codes; returns a membership mask over all `size` codes.
pub(crate) fn span_codes(gens: &[usize], modulus: Modulus, dim: usize, size: usize) -> Vec<bool> {
    let n = modulus.get() as usize;
    let gen_digits: Vec<Vec<usize>> = gens.iter().map(|&g| digits(g, n, dim)).collect();
    let mut reached = vec![false; size];
    reached[0] = true;
    let mut queue = vec![0usize];
    let mut buf = vec![0usize; dim];
    while let Some(v) = queue.pop() {
        let vd = digits(v, n, dim);
        for g in &gen_digits {
            for (b, (&a, &c)) in buf.iter_mut().zip(vd.iter().zip(g)) {
                *b = (a + c) % n;
            }
            let code = buf.iter().fold(0, |acc, &d| acc * n + d);
            if !reached[code] {
                reached[code] = true;
                queue.push(code);
            }
        }
    }
    reached
}

fn digits(mut code: usize, n: usize, dim: usize) -> Vec<usize> {
    let mut d = vec![0; dim];
    for slot in d.iter_mut().rev() {
        *slot = code % n;
        code /= n;
    }
    d
}
