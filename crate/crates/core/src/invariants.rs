//! Rack colorings of framed diagrams and the counting invariants built on
//! them.
//!
//! A framing is realized formally: `δ` positive kinks on an arc push its
//! colour through the diagonal map `π(x) = x▷x` `δ` times right before the
//! arc passes under its terminal crossing. Free loops carry a single colour
//! which must be fixed by `π^δ`.

use std::collections::HashMap;

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::diagram::{framing_deltas, LinkDiagram};
use crate::error::{Error, Result};
use crate::modring::span_codes;
use crate::poly::MultiPoly;
use crate::rack::FiniteRack;

/// Kink counts per arc.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Framing {
    kinks: Vec<u64>,
}

impl Framing {
    /// No kinks: the blackboard framing of the diagram as drawn.
    pub fn blackboard(d: &LinkDiagram) -> Self {
        Framing {
            kinks: vec![0; d.num_arcs()],
        }
    }

    /// `deltas[i]` kinks on the base arc of component `i`.
    pub fn at_base(d: &LinkDiagram, deltas: &[u64]) -> Result<Self> {
        if deltas.len() != d.num_components() {
            return Err(Error::ComponentMismatch {
                expected: d.num_components(),
                found: deltas.len(),
            });
        }
        let mut f = Self::blackboard(d);
        for (comp, &delta) in d.components().iter().zip(deltas) {
            f.kinks[comp.base()] = delta;
        }
        Ok(f)
    }

    /// Kinks placed on arbitrary arcs.
    pub fn on_arcs(d: &LinkDiagram, placement: &[(usize, u64)]) -> Result<Self> {
        let mut f = Self::blackboard(d);
        for &(arc, count) in placement {
            let slot = f
                .kinks
                .get_mut(arc)
                .ok_or_else(|| Error::Domain(format!("no arc with index {arc}")))?;
            *slot += count;
        }
        Ok(f)
    }

    /// Framing whose writhe vector is congruent to `target` modulo the rack rank.
    pub fn for_target(d: &LinkDiagram, target: &[u64], rack: &FiniteRack) -> Result<Self> {
        let deltas = framing_deltas(d, target, rack.rack_rank())?;
        Self::at_base(d, &deltas)
    }

    pub fn kinks(&self) -> &[u64] {
        &self.kinks
    }
}

/// A colour (0-based rack element) for every arc of a diagram.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Coloring {
    colors: Vec<usize>,
}

impl Coloring {
    pub fn colors(&self) -> &[usize] {
        &self.colors
    }

    pub fn color(&self, arc: usize) -> usize {
        self.colors[arc]
    }

    /// The image subrack: closure of the colours used.
    pub fn image(&self, rack: &FiniteRack) -> Vec<usize> {
        rack.subrack_closure(&self.colors).into_iter().collect()
    }
}

/// Checks every relation of a candidate colouring directly; independent of
/// the search in [`for_each_coloring`].
pub fn verify_coloring(
    d: &LinkDiagram,
    framing: &Framing,
    rack: &FiniteRack,
    colors: &[usize],
) -> bool {
    if colors.len() != d.num_arcs() || colors.iter().any(|&c| c >= rack.size()) {
        return false;
    }
    let kink = |arc: usize| {
        let mut x = colors[arc];
        for _ in 0..framing.kinks[arc] {
            x = rack.op(x, x);
        }
        x
    };
    let crossings_ok = d.crossings().iter().all(|c| {
        colors[c.under_out] == rack.op_signed(kink(c.under_in), colors[c.over], c.positive)
    });
    let loops_ok = d
        .components()
        .iter()
        .filter(|c| c.free_loop)
        .all(|c| kink(c.base()) == colors[c.base()]);
    crossings_ok && loops_ok
}

const UNSET: u32 = u32::MAX;

struct Search<'a> {
    rack: &'a FiniteRack,
    /// Per crossing: (under_in, over, under_out, positive, table index).
    crossings: Vec<(usize, usize, usize, bool, usize)>,
    /// Distinct kink powers: `π^δ` and `π^-δ` tables.
    powers: Vec<(Vec<u32>, Vec<u32>)>,
    touching: Vec<Vec<usize>>,
    /// Allowed colours for free-loop arcs.
    allowed: Vec<Option<Vec<bool>>>,
    colors: Vec<u32>,
    trail: Vec<usize>,
}

impl<'a> Search<'a> {
    fn new(d: &LinkDiagram, framing: &Framing, rack: &'a FiniteRack) -> Self {
        let mut powers: Vec<(Vec<u32>, Vec<u32>)> = Vec::new();
        let mut power_index: HashMap<u64, usize> = HashMap::new();
        let rank = rack.rack_rank();
        let mut table_for = |delta: u64| -> usize {
            let delta = delta % rank;
            *power_index.entry(delta).or_insert_with(|| {
                powers.push((
                    rack.diagonal_power(delta as i64),
                    rack.diagonal_power(-(delta as i64)),
                ));
                powers.len() - 1
            })
        };
        let crossings = d
            .crossings()
            .iter()
            .map(|c| {
                let t = table_for(framing.kinks[c.under_in]);
                (c.under_in, c.over, c.under_out, c.positive, t)
            })
            .collect();
        let mut touching = vec![Vec::new(); d.num_arcs()];
        for (ci, c) in d.crossings().iter().enumerate() {
            touching[c.under_in].push(ci);
            if c.over != c.under_in {
                touching[c.over].push(ci);
            }
            if c.under_out != c.under_in && c.under_out != c.over {
                touching[c.under_out].push(ci);
            }
        }
        let mut allowed = vec![None; d.num_arcs()];
        for comp in d.components().iter().filter(|c| c.free_loop) {
            let pk = rack.diagonal_power(framing.kinks[comp.base()] as i64);
            allowed[comp.base()] = Some((0..rack.size()).map(|x| pk[x] as usize == x).collect());
        }
        Search {
            rack,
            crossings,
            powers,
            touching,
            allowed,
            colors: vec![UNSET; d.num_arcs()],
            trail: Vec::new(),
        }
    }

    fn set(&mut self, arc: usize, value: u32) {
        self.colors[arc] = value;
        self.trail.push(arc);
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let arc = self.trail.pop().unwrap();
            self.colors[arc] = UNSET;
        }
    }

    /// Assigns `arc` and propagates forced colours; false on contradiction.
    fn assign(&mut self, arc: usize, value: u32) -> bool {
        self.set(arc, value);
        let mut cursor = self.trail.len() - 1;
        while cursor < self.trail.len() {
            let a = self.trail[cursor];
            cursor += 1;
            for idx in 0..self.touching[a].len() {
                let (i, o, u, pos, t) = self.crossings[self.touching[a][idx]];
                let (ci, co, cu) = (self.colors[i], self.colors[o], self.colors[u]);
                if co == UNSET {
                    continue;
                }
                if ci != UNSET {
                    let kinked = self.powers[t].0[ci as usize] as usize;
                    let out = self.rack.op_signed(kinked, co as usize, pos) as u32;
                    if cu == UNSET {
                        self.set(u, out);
                    } else if cu != out {
                        return false;
                    }
                } else if cu != UNSET {
                    let back = self.rack.op_signed(cu as usize, co as usize, !pos);
                    let inp = self.powers[t].1[back];
                    self.set(i, inp);
                }
            }
        }
        true
    }

    fn run(&mut self, next: usize, visit: &mut dyn FnMut(&[usize])) {
        let Some(arc) = (next..self.colors.len()).find(|&a| self.colors[a] == UNSET) else {
            let colors: Vec<usize> = self.colors.iter().map(|&c| c as usize).collect();
            visit(&colors);
            return;
        };
        for value in 0..self.rack.size() {
            if let Some(allowed) = &self.allowed[arc] {
                if !allowed[value] {
                    continue;
                }
            }
            let mark = self.trail.len();
            if self.assign(arc, value as u32) {
                self.run(arc + 1, visit);
            }
            self.undo(mark);
        }
    }
}

/// Calls `visit` once per colouring, in lexicographic order of the colour
/// vector (arcs in component and successor order).
pub fn for_each_coloring(
    d: &LinkDiagram,
    framing: &Framing,
    rack: &FiniteRack,
    mut visit: impl FnMut(&[usize]),
) {
    let mut search = Search::new(d, framing, rack);
    search.run(0, &mut visit);
}

pub fn enumerate_colorings(d: &LinkDiagram, framing: &Framing, rack: &FiniteRack) -> Vec<Coloring> {
    let mut out = Vec::new();
    for_each_coloring(d, framing, rack, |c| {
        out.push(Coloring { colors: c.to_vec() })
    });
    out
}

pub fn count_colorings(d: &LinkDiagram, framing: &Framing, rack: &FiniteRack) -> u64 {
    let mut n = 0u64;
    for_each_coloring(d, framing, rack, |_| n += 1);
    n
}

/// Every framing class `w ∈ (Z/N)^c`, in lexicographic order.
fn framing_classes(rank: u64, components: usize) -> Result<Vec<Vec<u64>>> {
    let total = (rank as u128)
        .checked_pow(components as u32)
        .filter(|&t| t <= 1 << 24)
        .ok_or_else(|| {
            Error::Domain(format!(
                "{rank}^{components} framing classes are too many to enumerate"
            ))
        })? as u64;
    Ok((0..total)
        .map(|mut idx| {
            let mut w = vec![0u64; components];
            for slot in w.iter_mut().rev() {
                *slot = idx % rank;
                idx /= rank;
            }
            w
        })
        .collect())
}

fn q_vars(c: usize) -> Vec<String> {
    (1..=c).map(|i| format!("q{i}")).collect()
}

/// The polynomial rack counting invariant: coloring counts of every framing
/// class modulo the rack rank, graded by `q_i^{w_i}`.
pub fn pr_invariant(d: &LinkDiagram, rack: &FiniteRack) -> Result<MultiPoly> {
    let rank = rack.rack_rank();
    let c = d.num_components();
    let counts: Vec<(Vec<u64>, u64)> = framing_classes(rank, c)?
        .into_par_iter()
        .map(|w| {
            let framing = Framing::for_target(d, &w, rack)?;
            Ok((w, count_colorings(d, &framing, rack)))
        })
        .collect::<Result<_>>()?;
    let mut p = MultiPoly::zero(q_vars(c));
    for (w, n) in counts {
        p.add_term(w.iter().map(|&e| e as u32).collect(), n);
    }
    Ok(p)
}

/// Colourings per (span size, image size).
type Tally = HashMap<(u32, u32), u64>;

/// Enhancement data of one colouring: (span size, image size).
fn enhancement(
    rack: &FiniteRack,
    label_codes: &[usize],
    module_size: usize,
    spec: &crate::coxeter::CoxeterSpec,
    used: &[usize],
) -> (u32, u32) {
    let image: Vec<usize> = rack.subrack_closure(used).into_iter().collect();
    let gens: Vec<usize> = image.iter().map(|&x| label_codes[x]).collect();
    let span = span_codes(&gens, spec.modulus(), spec.dim(), module_size);
    let span_size = span.iter().filter(|&&b| b).count();
    (span_size as u32, image.len() as u32)
}

/// The Coxeter enhanced invariant: each colouring contributes
/// `prod q_i^{w_i} * s^|Span(Im f)| * t^|Im f|`.
pub fn cp_invariant(d: &LinkDiagram, rack: &FiniteRack) -> Result<MultiPoly> {
    let (Some(labels), Some(spec)) = (rack.labels(), rack.module()) else {
        return Err(Error::MissingModuleData(
            "the enhanced invariant needs a rack built from module data",
        ));
    };
    let label_codes: Vec<usize> = labels.iter().map(|v| v.code()).collect();
    let module_size = spec.modulus().module_size(spec.dim())?;
    let rank = rack.rack_rank();
    let c = d.num_components();
    let per_class: Vec<(Vec<u64>, Tally)> = framing_classes(rank, c)?
        .into_par_iter()
        .map(|w| {
            let framing = Framing::for_target(d, &w, rack)?;
            let mut cache: HashMap<Vec<usize>, (u32, u32)> = HashMap::new();
            let mut tally: HashMap<(u32, u32), u64> = HashMap::new();
            for_each_coloring(d, &framing, rack, |colors| {
                let mut used = colors.to_vec();
                used.sort_unstable();
                used.dedup();
                let key = *cache.entry(used).or_insert_with_key(|used| {
                    enhancement(rack, &label_codes, module_size, spec, used)
                });
                *tally.entry(key).or_default() += 1;
            });
            Ok((w, tally))
        })
        .collect::<Result<_>>()?;
    let mut vars = q_vars(c);
    vars.push("s".into());
    vars.push("t".into());
    let mut p = MultiPoly::zero(vars);
    for (w, tally) in per_class {
        for ((s, t), n) in tally {
            let mut exps: Vec<u32> = w.iter().map(|&e| e as u32).collect();
            exps.push(s);
            exps.push(t);
            p.add_term(exps, BigInt::from(n));
        }
    }
    Ok(p)
}
