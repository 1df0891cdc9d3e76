//! Oriented link diagrams as signed crossing codes.
//!
//! A crossing `(sign, under_in, over, under_out)` says that the arc
//! `under_in` passes under `over` and continues as `under_out`. Colorings
//! must satisfy `under_out = under_in ▷ over` for positive crossings and
//! `under_out = under_in ▷⁻¹ over` for negative ones.
//!
//! Text format, one item per line:
//!
//! ```text
//! # trefoil, writhe 3
//! loops 0
//! + x y z
//! + y z x
//! + z x y
//! ```
//!
//! `loops <k>` declares `k` crossing-free unknotted components. Blank lines
//! and `#` comments are ignored.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;

use crate::error::{parse_err, Error, Result};

/// Prefix reserved for the synthesized arcs of free loops.
pub const FREE_LOOP_PREFIX: char = '~';

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Crossing {
    pub positive: bool,
    pub under_in: usize,
    pub over: usize,
    pub under_out: usize,
}

impl Crossing {
    pub fn sign(&self) -> i64 {
        if self.positive {
            1
        } else {
            -1
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    /// Arc indices in successor order, starting at the base arc.
    pub arcs: Vec<usize>,
    pub free_loop: bool,
}

impl Component {
    /// The lexicographically smallest arc; kinks are attached here by default.
    pub fn base(&self) -> usize {
        self.arcs[0]
    }
}

/// A validated diagram. Arc indices follow component order, and within a
/// component the successor order starting at the base arc.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkDiagram {
    labels: Vec<String>,
    crossings: Vec<Crossing>,
    components: Vec<Component>,
    arc_component: Vec<usize>,
    /// Crossing at which each arc goes under, if any.
    ends_at: Vec<Option<usize>>,
    writhe: Vec<i64>,
}

/// One crossing as written, before validation.
#[derive(Clone, Debug)]
struct RawCrossing {
    line: usize,
    positive: bool,
    under_in: String,
    over: String,
    under_out: String,
}

impl LinkDiagram {
    /// Builds a diagram from `(positive, under_in, over, under_out)` tuples.
    pub fn new<S: AsRef<str>>(crossings: &[(bool, S, S, S)], free_loops: usize) -> Result<Self> {
        let raw = crossings
            .iter()
            .enumerate()
            .map(|(i, (p, a, b, c))| RawCrossing {
                line: i + 1,
                positive: *p,
                under_in: a.as_ref().to_string(),
                over: b.as_ref().to_string(),
                under_out: c.as_ref().to_string(),
            })
            .collect();
        Self::build(raw, free_loops)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut raw = Vec::new();
        let mut loops: Option<usize> = None;
        for (i, line) in text.lines().enumerate() {
            let lineno = i + 1;
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let toks: Vec<&str> = line.split_whitespace().collect();
            match toks[0] {
                "loops" => {
                    if loops.is_some() {
                        return Err(parse_err(lineno, "duplicate loops line"));
                    }
                    if toks.len() != 2 {
                        return Err(parse_err(lineno, "expected `loops <count>`"));
                    }
                    loops =
                        Some(toks[1].parse().map_err(|_| {
                            parse_err(lineno, format!("bad loop count {:?}", toks[1]))
                        })?);
                }
                "+" | "-" => {
                    if toks.len() != 4 {
                        return Err(parse_err(
                            lineno,
                            "expected `<+|-> <under_in> <over> <under_out>`",
                        ));
                    }
                    for t in &toks[1..] {
                        if t.starts_with(FREE_LOOP_PREFIX) {
                            return Err(parse_err(
                                lineno,
                                format!("arc labels may not start with {FREE_LOOP_PREFIX:?}"),
                            ));
                        }
                    }
                    raw.push(RawCrossing {
                        line: lineno,
                        positive: toks[0] == "+",
                        under_in: toks[1].to_string(),
                        over: toks[2].to_string(),
                        under_out: toks[3].to_string(),
                    });
                }
                other => {
                    return Err(parse_err(
                        lineno,
                        format!("expected a crossing sign or `loops`, found {other:?}"),
                    ))
                }
            }
        }
        Self::build(raw, loops.unwrap_or(0))
    }

    fn build(raw: Vec<RawCrossing>, free_loops: usize) -> Result<Self> {
        let mut starts: HashMap<&str, usize> = HashMap::new();
        let mut ends: HashMap<&str, usize> = HashMap::new();
        for (ci, c) in raw.iter().enumerate() {
            if let Some(&prev) = ends.get(c.under_in.as_str()) {
                return Err(parse_err(
                    c.line,
                    format!(
                        "arc {:?} goes under twice (also on line {})",
                        c.under_in, raw[prev].line
                    ),
                ));
            }
            ends.insert(&c.under_in, ci);
            if let Some(&prev) = starts.get(c.under_out.as_str()) {
                return Err(parse_err(
                    c.line,
                    format!(
                        "arc {:?} starts at two crossings (also on line {})",
                        c.under_out, raw[prev].line
                    ),
                ));
            }
            starts.insert(&c.under_out, ci);
        }
        for c in &raw {
            if !starts.contains_key(c.under_in.as_str()) {
                return Err(parse_err(
                    c.line,
                    format!(
                        "arc {:?} ends here but never starts at a crossing",
                        c.under_in
                    ),
                ));
            }
            if !ends.contains_key(c.under_out.as_str()) {
                return Err(parse_err(
                    c.line,
                    format!(
                        "arc {:?} starts here but never ends at a crossing",
                        c.under_out
                    ),
                ));
            }
            if !ends.contains_key(c.over.as_str()) {
                return Err(parse_err(c.line, format!("unknown over arc {:?}", c.over)));
            }
        }

        // successor cycles, each rooted at its smallest label
        let sorted: BTreeSet<&str> = ends.keys().copied().collect();
        let mut seen: HashSet<&str> = HashSet::new();
        let mut comp_labels: Vec<Vec<String>> = Vec::new();
        for &start in &sorted {
            if seen.contains(start) {
                continue;
            }
            let mut cycle = Vec::new();
            let mut a = start;
            loop {
                seen.insert(a);
                cycle.push(a.to_string());
                a = raw[ends[a]].under_out.as_str();
                if a == start {
                    break;
                }
            }
            comp_labels.push(cycle);
        }
        let mut free: Vec<bool> = vec![false; comp_labels.len()];
        for i in 1..=free_loops {
            comp_labels.push(vec![format!("{FREE_LOOP_PREFIX}{i}")]);
            free.push(true);
        }

        let mut labels = Vec::new();
        let mut components = Vec::new();
        let mut arc_component = Vec::new();
        for (ci, arcs) in comp_labels.into_iter().enumerate() {
            let first = labels.len();
            for a in arcs {
                labels.push(a);
                arc_component.push(ci);
            }
            components.push(Component {
                arcs: (first..labels.len()).collect(),
                free_loop: free[ci],
            });
        }
        let index: HashMap<&str, usize> = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.as_str(), i))
            .collect();
        let crossings: Vec<Crossing> = raw
            .iter()
            .map(|c| Crossing {
                positive: c.positive,
                under_in: index[c.under_in.as_str()],
                over: index[c.over.as_str()],
                under_out: index[c.under_out.as_str()],
            })
            .collect();
        let mut ends_at = vec![None; labels.len()];
        let mut writhe = vec![0i64; components.len()];
        for (ci, c) in crossings.iter().enumerate() {
            ends_at[c.under_in] = Some(ci);
            let comp = arc_component[c.under_in];
            if comp == arc_component[c.over] {
                writhe[comp] += c.sign();
            }
        }
        Ok(LinkDiagram {
            labels,
            crossings,
            components,
            arc_component,
            ends_at,
            writhe,
        })
    }

    pub fn num_arcs(&self) -> usize {
        self.labels.len()
    }

    pub fn arc_label(&self, arc: usize) -> &str {
        &self.labels[arc]
    }

    pub fn arc_index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn num_components(&self) -> usize {
        self.components.len()
    }

    pub fn component_of(&self, arc: usize) -> usize {
        self.arc_component[arc]
    }

    /// Crossing at which `arc` passes under, or `None` for free loops.
    pub fn crossing_ending(&self, arc: usize) -> Option<usize> {
        self.ends_at[arc]
    }

    /// Per-component self-writhe under the blackboard framing.
    pub fn writhe_vector(&self) -> &[i64] {
        &self.writhe
    }

    pub fn free_loops(&self) -> usize {
        self.components.iter().filter(|c| c.free_loop).count()
    }

    /// A copy with `count` literal positive kinks inserted at the end of each
    /// listed arc, just before it passes under. Each kink is a crossing
    /// `+ a a a'`, so the kinked arc's colour is pushed through `x ↦ x▷x`.
    pub fn with_literal_kinks(&self, kinks: &[(usize, u64)]) -> Result<LinkDiagram> {
        let mut per_arc = vec![0u64; self.num_arcs()];
        for &(arc, count) in kinks {
            if arc >= self.num_arcs() {
                return Err(Error::Domain(format!("no arc with index {arc}")));
            }
            per_arc[arc] += count;
        }
        let mut taken: BTreeSet<String> = self.labels.iter().cloned().collect();
        let mut fresh = |base: &str| {
            let mut name = format!("{base}'");
            while taken.contains(&name) {
                name.push('\'');
            }
            taken.insert(name.clone());
            name
        };
        let mut raw: Vec<(bool, String, String, String)> = self
            .crossings
            .iter()
            .map(|c| {
                (
                    c.positive,
                    self.labels[c.under_in].clone(),
                    self.labels[c.over].clone(),
                    self.labels[c.under_out].clone(),
                )
            })
            .collect();
        let mut loops = 0;
        for comp in &self.components {
            if comp.free_loop {
                let arc = comp.base();
                let count = per_arc[arc];
                if count == 0 {
                    loops += 1;
                    continue;
                }
                let first = fresh("o");
                let mut prev = first.clone();
                for i in 0..count {
                    let next = if i + 1 == count {
                        first.clone()
                    } else {
                        fresh("o")
                    };
                    raw.push((true, prev.clone(), prev.clone(), next.clone()));
                    prev = next;
                }
                continue;
            }
            for &arc in &comp.arcs {
                let count = per_arc[arc];
                if count == 0 {
                    continue;
                }
                let label = self.labels[arc].clone();
                let mut prev = label.clone();
                for _ in 0..count {
                    let next = fresh(&label);
                    raw.push((true, prev.clone(), prev.clone(), next.clone()));
                    prev = next;
                }
                let ci = self.ends_at[arc].expect("crossing arc");
                raw[ci].1 = prev;
            }
        }
        LinkDiagram::new(&raw, loops)
    }

    /// Text in the line-oriented diagram format.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let loops = self.free_loops();
        if loops > 0 {
            out.push_str(&format!("loops {loops}\n"));
        }
        for c in &self.crossings {
            out.push_str(&format!(
                "{} {} {} {}\n",
                if c.positive { '+' } else { '-' },
                self.labels[c.under_in],
                self.labels[c.over],
                self.labels[c.under_out]
            ));
        }
        out
    }
}

impl fmt::Display for LinkDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Kinks to add to each component so its writhe becomes congruent to
/// `target` modulo `rank`.
pub fn framing_deltas(d: &LinkDiagram, target: &[u64], rank: u64) -> Result<Vec<u64>> {
    if target.len() != d.num_components() {
        return Err(Error::ComponentMismatch {
            expected: d.num_components(),
            found: target.len(),
        });
    }
    if rank == 0 {
        return Err(Error::Domain("rack rank must be positive".into()));
    }
    Ok(target
        .iter()
        .zip(d.writhe_vector())
        .map(|(&t, &w)| (t as i128 - w as i128).rem_euclid(rank as i128) as u64)
        .collect())
}
