//! Finite racks given by operation tables.
//!
//! Elements are indexed `0..k` internally. Every external format (matrix
//! files, [`FiniteRack::table`], isomorphism listings) is 1-based, matching
//! the usual way rack matrices are written down.

use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer;

use crate::coxeter::{build_coxeter_rack, CoxeterSpec};
use crate::error::{parse_err, Error, Result};
use crate::modring::ModVector;
use crate::poly::MultiPoly;

/// Upper bound on the number of violations a report keeps.
const MAX_REPORTED: usize = 64;

/// A failure of one of the two rack axioms. Indices are 1-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// Column `column` repeats `value` (rows `rows.0` and `rows.1`), so right
    /// multiplication by that element is not a bijection.
    NotPermutation {
        column: usize,
        value: u32,
        rows: (usize, usize),
    },
    /// `(x▷y)▷z != (x▷z)▷(y▷z)` for `(x, y, z)`.
    NotSelfDistributive { x: usize, y: usize, z: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotPermutation { column, value, rows } => write!(
                f,
                "axiom (i) right invertibility: column {column} is not a permutation \
                 (value {value} appears in rows {} and {})",
                rows.0, rows.1
            ),
            Violation::NotSelfDistributive { x, y, z } => write!(
                f,
                "axiom (ii) self-distributivity: (x{x} > x{y}) > x{z} != (x{x} > x{z}) > (x{y} > x{z})"
            ),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    /// At most [`MAX_REPORTED`] violations, permutation failures first.
    pub violations: Vec<Violation>,
    /// Total number of violations found, including those not kept.
    pub total: usize,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.total == 0
    }

    fn push(&mut self, v: Violation) {
        self.total += 1;
        if self.violations.len() < MAX_REPORTED {
            self.violations.push(v);
        }
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            return f.write_str("valid");
        }
        writeln!(f, "invalid: {} violation(s)", self.total)?;
        for v in &self.violations {
            writeln!(f, "  {v}")?;
        }
        if self.total > self.violations.len() {
            writeln!(f, "  ... {} more", self.total - self.violations.len())?;
        }
        Ok(())
    }
}

/// Checks a 1-based k×k table against both rack axioms.
///
/// Malformed tables (not square, entries outside `1..=k`) are errors rather
/// than violations.
pub fn verify_rack(table: &[Vec<u32>]) -> Result<ValidationReport> {
    let k = table.len();
    let flat = flatten_table(table)?;
    Ok(verify_flat(&flat, k))
}

fn flatten_table(table: &[Vec<u32>]) -> Result<Vec<u32>> {
    let k = table.len();
    let mut flat = Vec::with_capacity(k * k);
    for (i, row) in table.iter().enumerate() {
        if row.len() != k {
            return Err(parse_err(
                i + 2,
                format!("row {} has {} entries, expected {k}", i + 1, row.len()),
            ));
        }
        for &e in row {
            if e == 0 || e as usize > k {
                return Err(parse_err(
                    i + 2,
                    format!("entry {e} in row {} is outside 1..={k}", i + 1),
                ));
            }
            flat.push(e - 1);
        }
    }
    Ok(flat)
}

/// Verification on a 0-based flat table.
fn verify_flat(op: &[u32], k: usize) -> ValidationReport {
    let mut report = ValidationReport::default();
    let mut seen = vec![usize::MAX; k];
    for j in 0..k {
        seen.fill(usize::MAX);
        for i in 0..k {
            let v = op[i * k + j] as usize;
            if seen[v] != usize::MAX {
                report.push(Violation::NotPermutation {
                    column: j + 1,
                    value: v as u32 + 1,
                    rows: (seen[v] + 1, i + 1),
                });
            } else {
                seen[v] = i;
            }
        }
    }
    for x in 0..k {
        for y in 0..k {
            let xy = op[x * k + y] as usize;
            for z in 0..k {
                let lhs = op[xy * k + z];
                let xz = op[x * k + z] as usize;
                let yz = op[y * k + z] as usize;
                if lhs != op[xz * k + yz] {
                    report.push(Violation::NotSelfDistributive {
                        x: x + 1,
                        y: y + 1,
                        z: z + 1,
                    });
                }
            }
        }
    }
    report
}

/// A finite rack: operation table, inverse table and optional module data.
///
/// Values are immutable once built and always satisfy the rack axioms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteRack {
    size: usize,
    op: Vec<u32>,
    inv_op: Vec<u32>,
    labels: Option<Vec<ModVector>>,
    module: Option<CoxeterSpec>,
}

impl FiniteRack {
    /// Builds a rack from a 1-based rack matrix, rejecting non-racks.
    pub fn from_table(table: &[Vec<u32>]) -> Result<Self> {
        let k = table.len();
        if k == 0 {
            return Err(Error::NotARack(
                "a rack must have at least one element".into(),
            ));
        }
        let flat = flatten_table(table)?;
        Self::from_flat(flat, k)
    }

    pub(crate) fn from_flat(op: Vec<u32>, k: usize) -> Result<Self> {
        let report = verify_flat(&op, k);
        if let Some(first) = report.violations.first() {
            return Err(Error::NotARack(first.to_string()));
        }
        let mut inv_op = vec![0u32; k * k];
        for i in 0..k {
            for j in 0..k {
                inv_op[op[i * k + j] as usize * k + j] = i as u32;
            }
        }
        Ok(FiniteRack {
            size: k,
            op,
            inv_op,
            labels: None,
            module: None,
        })
    }

    pub(crate) fn with_module(mut self, labels: Vec<ModVector>, spec: CoxeterSpec) -> Self {
        debug_assert_eq!(labels.len(), self.size);
        self.labels = Some(labels);
        self.module = Some(spec);
        self
    }

    /// The trivial rack `x▷y = x` on `k` elements.
    pub fn trivial(k: usize) -> Self {
        let op = (0..k * k).map(|idx| (idx / k) as u32).collect();
        Self::from_flat(op, k).expect("trivial rack")
    }

    /// The constant action rack `x▷y = sigma(x)`; `sigma` is 1-based.
    pub fn constant_action(sigma: &[u32]) -> Result<Self> {
        let table: Vec<Vec<u32>> = sigma.iter().map(|&s| vec![s; sigma.len()]).collect();
        Self::from_table(&table)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// `x▷y`, 0-based.
    #[inline]
    pub fn op(&self, x: usize, y: usize) -> usize {
        self.op[x * self.size + y] as usize
    }

    /// `x▷⁻¹y`, 0-based.
    #[inline]
    pub fn inv_op(&self, x: usize, y: usize) -> usize {
        self.inv_op[x * self.size + y] as usize
    }

    /// `x▷y` for sign `+1`, `x▷⁻¹y` otherwise.
    #[inline]
    pub fn op_signed(&self, x: usize, y: usize, positive: bool) -> usize {
        if positive {
            self.op(x, y)
        } else {
            self.inv_op(x, y)
        }
    }

    pub fn labels(&self) -> Option<&[ModVector]> {
        self.labels.as_deref()
    }

    pub fn module(&self) -> Option<&CoxeterSpec> {
        self.module.as_ref()
    }

    /// The rack matrix, 1-based.
    pub fn table(&self) -> Vec<Vec<u32>> {
        self.op
            .chunks(self.size)
            .map(|row| row.iter().map(|&e| e + 1).collect())
            .collect()
    }

    /// Same operation table, ignoring labels and module data.
    pub fn same_operation(&self, other: &FiniteRack) -> bool {
        self.op == other.op
    }

    pub fn verify(&self) -> ValidationReport {
        verify_flat(&self.op, self.size)
    }

    pub fn is_quandle(&self) -> bool {
        (0..self.size).all(|i| self.op(i, i) == i)
    }

    /// True when `▷` and `▷⁻¹` coincide.
    pub fn is_involutory(&self) -> bool {
        self.op == self.inv_op
    }

    /// The diagonal permutation `x ↦ x▷x`, 0-based.
    pub fn diagonal(&self) -> Vec<usize> {
        (0..self.size).map(|i| self.op(i, i)).collect()
    }

    /// Cycle lengths of the diagonal permutation, one per element.
    fn diagonal_cycle_lengths(&self) -> Vec<usize> {
        let pi = self.diagonal();
        let mut len = vec![0usize; self.size];
        for start in 0..self.size {
            if len[start] != 0 {
                continue;
            }
            let mut cycle = vec![start];
            let mut x = pi[start];
            while x != start {
                cycle.push(x);
                x = pi[x];
            }
            for &c in &cycle {
                len[c] = cycle.len();
            }
        }
        len
    }

    /// The rack rank: order of the diagonal permutation.
    pub fn rack_rank(&self) -> u64 {
        self.diagonal_cycle_lengths()
            .into_iter()
            .fold(1u64, |acc, l| acc.lcm(&(l as u64)))
    }

    /// `π^power(x)` where `π(x) = x▷x`; negative powers walk backwards.
    pub fn diagonal_map(&self, x: usize, power: i64) -> usize {
        self.diagonal_power(power)[x] as usize
    }

    /// Table of `π^power`, 0-based.
    pub fn diagonal_power(&self, power: i64) -> Vec<u32> {
        let pi = self.diagonal();
        let lens = self.diagonal_cycle_lengths();
        (0..self.size)
            .map(|x| {
                let steps = power.rem_euclid(lens[x] as i64);
                let mut y = x;
                for _ in 0..steps {
                    y = pi[y];
                }
                y as u32
            })
            .collect()
    }

    /// Smallest set containing `seed` and closed under `▷` and `▷⁻¹`.
    pub fn subrack_closure(&self, seed: &[usize]) -> BTreeSet<usize> {
        let mut member = vec![false; self.size];
        let mut elems: Vec<usize> = Vec::new();
        for &s in seed {
            if !member[s] {
                member[s] = true;
                elems.push(s);
            }
        }
        // every new element is combined with everything already present
        let mut next = 0;
        while next < elems.len() {
            let a = elems[next];
            next += 1;
            let mut idx = 0;
            while idx < elems.len() {
                let b = elems[idx];
                idx += 1;
                for c in [
                    self.op(a, b),
                    self.op(b, a),
                    self.inv_op(a, b),
                    self.inv_op(b, a),
                ] {
                    if !member[c] {
                        member[c] = true;
                        elems.push(c);
                    }
                }
            }
        }
        elems.into_iter().collect()
    }

    /// `c(x) = |{y : x▷y = x}|` for every `x`.
    pub fn right_fix_counts(&self) -> Vec<usize> {
        (0..self.size)
            .map(|x| (0..self.size).filter(|&y| self.op(x, y) == x).count())
            .collect()
    }

    /// `r(x) = |{y : y▷x = y}|` for every `x`.
    pub fn fixed_by_counts(&self) -> Vec<usize> {
        (0..self.size)
            .map(|x| (0..self.size).filter(|&y| self.op(y, x) == y).count())
            .collect()
    }

    /// The rack polynomial `sum_x s^r(x) t^c(x)` with `r`, `c` as in
    /// [`fixed_by_counts`](Self::fixed_by_counts) and
    /// [`right_fix_counts`](Self::right_fix_counts).
    pub fn rack_polynomial(&self) -> MultiPoly {
        let mut p = MultiPoly::zero(["s", "t"]);
        let c = self.right_fix_counts();
        let r = self.fixed_by_counts();
        for x in 0..self.size {
            p.add_term(vec![r[x] as u32, c[x] as u32], 1);
        }
        p
    }

    /// Parses the matrix file format: the size `k`, then `k` rows of `k`
    /// whitespace-separated 1-based entries. Blank lines and `#` comments
    /// are skipped, except a `# coxeter ...` directive which rebuilds the
    /// Coxeter rack it names and attaches its module data; the matrix must
    /// then agree with the rebuilt one.
    pub fn parse(text: &str) -> Result<Self> {
        let parsed = parse_matrix_file(text)?;
        let rack = FiniteRack::from_table(&parsed.rows)?;
        match parsed.coxeter {
            None => Ok(rack),
            Some((lineno, spec)) => {
                let built = build_coxeter_rack(&spec)?;
                if !built.same_operation(&rack) {
                    return Err(parse_err(
                        lineno,
                        "matrix does not match the Coxeter rack named by the directive",
                    ));
                }
                Ok(built)
            }
        }
    }

    /// Matrix file text; module racks also get a `# coxeter` directive and
    /// an index-to-vector listing.
    pub fn to_matrix_file(&self) -> String {
        let mut out = format!("{}\n", self.size);
        for row in self.table() {
            let cells: Vec<String> = row.iter().map(u32::to_string).collect();
            out.push_str(&cells.join(" "));
            out.push('\n');
        }
        if let (Some(spec), Some(labels)) = (&self.module, &self.labels) {
            out.push_str(&format!("# coxeter {}\n", spec.directive()));
            for (i, v) in labels.iter().enumerate() {
                out.push_str(&format!("# {} {}\n", i + 1, v));
            }
        }
        out
    }
}

/// A matrix file as written, before any rack axiom is checked.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixFile {
    /// 1-based rows, all entries within `1..=k`.
    pub rows: Vec<Vec<u32>>,
    /// A `# coxeter` directive and the line it appeared on.
    pub coxeter: Option<(usize, CoxeterSpec)>,
}

/// Parses the matrix file format without checking the rack axioms.
pub fn parse_matrix_file(text: &str) -> Result<MatrixFile> {
    let mut size: Option<usize> = None;
    let mut rows: Vec<Vec<u32>> = Vec::new();
    let mut coxeter: Option<(usize, CoxeterSpec)> = None;
    for (lineno, raw) in text.lines().enumerate() {
        let lineno = lineno + 1;
        let line = raw.trim();
        if let Some(comment) = line.strip_prefix('#') {
            if let Some(directive) = comment.trim().strip_prefix("coxeter") {
                let parsed = CoxeterSpec::parse_directive(directive)
                    .map_err(|e| parse_err(lineno, e.to_string()))?;
                coxeter = Some((lineno, parsed));
            }
            continue;
        }
        if line.is_empty() {
            continue;
        }
        let nums = line
            .split_whitespace()
            .map(|t| {
                t.parse::<u32>()
                    .map_err(|_| parse_err(lineno, format!("expected an integer, found {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        match size {
            None => {
                if nums.len() != 1 || nums[0] == 0 {
                    return Err(parse_err(lineno, "first line must be the rack size k >= 1"));
                }
                size = Some(nums[0] as usize);
            }
            Some(k) => {
                if rows.len() == k {
                    return Err(parse_err(lineno, format!("more than {k} rows")));
                }
                if nums.len() != k {
                    return Err(parse_err(
                        lineno,
                        format!("expected {k} entries, found {}", nums.len()),
                    ));
                }
                if let Some(&bad) = nums.iter().find(|&&e| e == 0 || e as usize > k) {
                    return Err(parse_err(lineno, format!("entry {bad} is outside 1..={k}")));
                }
                rows.push(nums);
            }
        }
    }
    let k = size.ok_or_else(|| parse_err(1, "empty rack file"))?;
    if rows.len() != k {
        return Err(parse_err(
            text.lines().count().max(1),
            format!("expected {k} rows, found {}", rows.len()),
        ));
    }
    Ok(MatrixFile { rows, coxeter })
}

/// Per-element data preserved by any isomorphism.
fn signatures(rack: &FiniteRack) -> Vec<(usize, usize, usize, bool)> {
    let cyc = rack.diagonal_cycle_lengths();
    let c = rack.right_fix_counts();
    let r = rack.fixed_by_counts();
    (0..rack.size())
        .map(|x| (cyc[x], c[x], r[x], rack.op(x, x) == x))
        .collect()
}

/// Searches for a bijection `φ` with `φ(x▷y) = φ(x)▷φ(y)`.
///
/// Returns the 0-based image of each element of `r1`. Candidates are pruned by
/// signature (diagonal cycle length, fix counts, idempotence) and every
/// assignment is propagated through the operation table before branching
/// again.
pub fn find_isomorphism(r1: &FiniteRack, r2: &FiniteRack) -> Option<Vec<usize>> {
    let k = r1.size();
    if k != r2.size() {
        return None;
    }
    let sig1 = signatures(r1);
    let sig2 = signatures(r2);
    let mut sorted1 = sig1.clone();
    let mut sorted2 = sig2.clone();
    sorted1.sort_unstable();
    sorted2.sort_unstable();
    if sorted1 != sorted2 {
        return None;
    }
    let mut search = IsoSearch {
        r1,
        r2,
        sig1: &sig1,
        sig2: &sig2,
        map: vec![usize::MAX; k],
        used: vec![false; k],
        mapped: Vec::with_capacity(k),
    };
    if search.extend() {
        let map = search.map;
        debug_assert!(is_isomorphism(r1, r2, &map));
        Some(map)
    } else {
        None
    }
}

/// True when `map` is a bijection carrying `r1`'s table onto `r2`'s.
pub fn is_isomorphism(r1: &FiniteRack, r2: &FiniteRack, map: &[usize]) -> bool {
    let k = r1.size();
    if r2.size() != k || map.len() != k {
        return false;
    }
    let mut hit = vec![false; k];
    for &m in map {
        if m >= k || hit[m] {
            return false;
        }
        hit[m] = true;
    }
    (0..k).all(|x| (0..k).all(|y| map[r1.op(x, y)] == r2.op(map[x], map[y])))
}

struct IsoSearch<'a> {
    r1: &'a FiniteRack,
    r2: &'a FiniteRack,
    sig1: &'a [(usize, usize, usize, bool)],
    sig2: &'a [(usize, usize, usize, bool)],
    map: Vec<usize>,
    used: Vec<bool>,
    /// Assignment trail, in order.
    mapped: Vec<usize>,
}

impl IsoSearch<'_> {
    fn extend(&mut self) -> bool {
        let Some(x) = (0..self.map.len()).find(|&x| self.map[x] == usize::MAX) else {
            return true;
        };
        for y in 0..self.map.len() {
            if self.used[y] || self.sig1[x] != self.sig2[y] {
                continue;
            }
            let mark = self.mapped.len();
            if self.assign(x, y) && self.extend() {
                return true;
            }
            self.undo(mark);
        }
        false
    }

    fn set(&mut self, x: usize, y: usize) -> bool {
        if self.used[y] || self.sig1[x] != self.sig2[y] {
            return false;
        }
        self.map[x] = y;
        self.used[y] = true;
        self.mapped.push(x);
        true
    }

    /// Assigns `x ↦ y` and everything it forces.
    fn assign(&mut self, x: usize, y: usize) -> bool {
        if !self.set(x, y) {
            return false;
        }
        let mut cursor = self.mapped.len() - 1;
        while cursor < self.mapped.len() {
            let a = self.mapped[cursor];
            cursor += 1;
            let mut idx = 0;
            while idx < self.mapped.len() {
                let b = self.mapped[idx];
                idx += 1;
                for (p, q) in [(a, b), (b, a)] {
                    let src = self.r1.op(p, q);
                    let dst = self.r2.op(self.map[p], self.map[q]);
                    if self.map[src] == usize::MAX {
                        if !self.set(src, dst) {
                            return false;
                        }
                    } else if self.map[src] != dst {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn undo(&mut self, mark: usize) {
        while self.mapped.len() > mark {
            let x = self.mapped.pop().unwrap();
            self.used[self.map[x]] = false;
            self.map[x] = usize::MAX;
        }
    }
}
