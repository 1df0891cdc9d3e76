//! Brute-force reference implementations used by the integration tests.
//!
//! Nothing here calls into the crate's algorithms. Diagrams are re-read from
//! their text, framings are realised as literal kink crossings, and every
//! assignment of rack elements to the original arcs is tried.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, HashMap};

/// 0-based operation table: `op[x][y] = x ▷ y`.
#[derive(Clone, Debug)]
pub struct Table {
    pub op: Vec<Vec<usize>>,
}

impl Table {
    /// From a 1-based matrix as printed in rack files.
    pub fn from_matrix(m: &[Vec<u32>]) -> Self {
        Table {
            op: m
                .iter()
                .map(|row| row.iter().map(|&v| v as usize - 1).collect())
                .collect(),
        }
    }

    pub fn size(&self) -> usize {
        self.op.len()
    }

    pub fn is_rack(&self) -> bool {
        let k = self.size();
        for y in 0..k {
            let mut seen = vec![false; k];
            for x in 0..k {
                if std::mem::replace(&mut seen[self.op[x][y]], true) {
                    return false;
                }
            }
        }
        for x in 0..k {
            for y in 0..k {
                for z in 0..k {
                    let l = self.op[self.op[x][y]][z];
                    let r = self.op[self.op[x][z]][self.op[y][z]];
                    if l != r {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Order of `x -> x ▷ x`, found by iterating the whole map until it returns.
    pub fn rank(&self) -> u64 {
        let k = self.size();
        let start: Vec<usize> = (0..k).collect();
        let mut cur = start.clone();
        let mut n = 0u64;
        loop {
            cur = cur.iter().map(|&x| self.op[x][x]).collect();
            n += 1;
            if cur == start {
                return n;
            }
        }
    }

    /// Smallest subset containing `seed` and closed under ▷.
    pub fn closure(&self, seed: &BTreeSet<usize>) -> BTreeSet<usize> {
        let mut set = seed.clone();
        loop {
            let mut next = set.clone();
            for &x in &set {
                for &y in &set {
                    next.insert(self.op[x][y]);
                }
            }
            if next.len() == set.len() {
                return set;
            }
            set = next;
        }
    }
}

/// Every rack structure on `{0..k}`, by trying all `k^(k*k)` tables.
pub fn all_racks(k: usize) -> Vec<Table> {
    let cells = k * k;
    let total = k.pow(cells as u32);
    let mut out = Vec::new();
    for mut code in 0..total {
        let mut op = vec![vec![0; k]; k];
        for cell in 0..cells {
            op[cell / k][cell % k] = code % k;
            code /= k;
        }
        let t = Table { op };
        if t.is_rack() {
            out.push(t);
        }
    }
    out
}

/// A crossing `(positive, under_in, over, under_out)` by label.
pub type RawCrossing = (bool, String, String, String);

#[derive(Clone, Debug)]
pub struct Diagram {
    pub crossings: Vec<RawCrossing>,
    pub loops: usize,
}

impl Diagram {
    pub fn parse(text: &str) -> Self {
        let mut crossings = Vec::new();
        let mut loops = 0;
        for line in text.lines() {
            let line = line.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let f: Vec<&str> = line.split_whitespace().collect();
            if f[0] == "loops" {
                loops += f[1].parse::<usize>().unwrap();
                continue;
            }
            let positive = match f[0] {
                "+" => true,
                "-" => false,
                s => panic!("bad sign {s}"),
            };
            crossings.push((positive, f[1].into(), f[2].into(), f[3].into()));
        }
        Diagram { crossings, loops }
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        if self.loops > 0 {
            s.push_str(&format!("loops {}\n", self.loops));
        }
        for (p, a, b, c) in &self.crossings {
            s.push_str(&format!("{} {a} {b} {c}\n", if *p { '+' } else { '-' }));
        }
        s
    }

    pub fn arcs(&self) -> BTreeSet<String> {
        let mut a: BTreeSet<String> = self.crossings.iter().map(|c| c.1.clone()).collect();
        for i in 1..=self.loops {
            a.insert(format!("~{i}"));
        }
        a
    }

    /// Components as arc cycles, ordered by their smallest label; free loops last.
    pub fn components(&self) -> Vec<Vec<String>> {
        let next: HashMap<&str, &str> = self
            .crossings
            .iter()
            .map(|c| (c.1.as_str(), c.3.as_str()))
            .collect();
        let mut starts: Vec<&str> = next.keys().copied().collect();
        starts.sort();
        let mut seen = BTreeSet::new();
        let mut comps = Vec::new();
        for s in starts {
            if seen.contains(s) {
                continue;
            }
            let mut cyc = Vec::new();
            let mut a = s;
            loop {
                seen.insert(a);
                cyc.push(a.to_string());
                a = next[a];
                if a == s {
                    break;
                }
            }
            comps.push(cyc);
        }
        for i in 1..=self.loops {
            comps.push(vec![format!("~{i}")]);
        }
        comps
    }

    pub fn writhes(&self) -> Vec<i64> {
        let comps = self.components();
        let comp_of: HashMap<&str, usize> = comps
            .iter()
            .enumerate()
            .flat_map(|(i, c)| c.iter().map(move |a| (a.as_str(), i)))
            .collect();
        let mut w = vec![0i64; comps.len()];
        for (p, a, b, _) in &self.crossings {
            if comp_of[a.as_str()] == comp_of[b.as_str()] {
                w[comp_of[a.as_str()]] += if *p { 1 } else { -1 };
            }
        }
        w
    }

    /// Adds `kinks[i]` positive curls on the first arc of component `i`.
    ///
    /// Also returns the name each original arc has in the new diagram: a
    /// free loop that gets curls becomes an ordinary arc, and the loops left
    /// free are renumbered.
    pub fn with_kinks(&self, kinks: &[u64]) -> (Diagram, HashMap<String, String>) {
        let comps = self.components();
        let mut out = self.clone();
        out.loops = 0;
        let mut names: HashMap<String, String> =
            self.arcs().into_iter().map(|a| (a.clone(), a)).collect();
        for (comp, &k) in comps.iter().zip(kinks) {
            let arc = &comp[0];
            let is_loop = arc.starts_with('~');
            if k == 0 {
                if is_loop {
                    out.loops += 1;
                    names.insert(arc.clone(), format!("~{}", out.loops));
                }
                continue;
            }
            let base = if is_loop {
                format!("loop{}", &arc[1..])
            } else {
                arc.clone()
            };
            names.insert(arc.clone(), base.clone());
            let chain: Vec<String> = (1..=k).map(|j| format!("{base}@{j}")).collect();
            // the curls sit at the end of the arc: the last new arc inherits its end
            let last = if is_loop {
                base.clone()
            } else {
                chain[k as usize - 1].clone()
            };
            if !is_loop {
                for c in out.crossings.iter_mut() {
                    if &c.1 == arc {
                        c.1 = last.clone();
                    }
                }
            }
            let mut prev = base.clone();
            for (j, link) in chain.iter().enumerate() {
                let nxt = if is_loop && j + 1 == chain.len() {
                    base.clone()
                } else {
                    link.clone()
                };
                out.crossings
                    .push((true, prev.clone(), prev.clone(), nxt.clone()));
                prev = nxt;
            }
        }
        (out, names)
    }
}

/// Literal colourings: every map from the original arcs to the rack is tried,
/// kink arcs are filled along their curls, then every crossing is checked.
///
/// Returns each valid colouring restricted to the arcs of `d`.
pub fn colorings(d: &Diagram, t: &Table, target: &[u64]) -> Vec<BTreeMap<String, usize>> {
    colorings_full(d, t, target)
        .into_iter()
        .map(|(orig, _)| orig)
        .collect()
}

fn colorings_full(
    d: &Diagram,
    t: &Table,
    target: &[u64],
) -> Vec<(BTreeMap<String, usize>, BTreeSet<usize>)> {
    let rank = t.rank() as i64;
    let kinks: Vec<u64> = d
        .writhes()
        .iter()
        .zip(target)
        .map(|(&w, &tw)| (tw as i64 - w).rem_euclid(rank) as u64)
        .collect();
    let (big, names) = d.with_kinks(&kinks);
    let orig: Vec<String> = d.arcs().into_iter().collect();
    let all: Vec<String> = big.arcs().into_iter().collect();
    let idx: HashMap<&str, usize> = all
        .iter()
        .enumerate()
        .map(|(i, a)| (a.as_str(), i))
        .collect();
    let free: Vec<usize> = orig.iter().map(|a| idx[names[a].as_str()]).collect();
    let crossings: Vec<(bool, usize, usize, usize)> = big
        .crossings
        .iter()
        .map(|(p, a, b, c)| (*p, idx[a.as_str()], idx[b.as_str()], idx[c.as_str()]))
        .collect();
    // curl arcs, each after the arc it hangs from
    let mut known: BTreeSet<usize> = free.iter().copied().collect();
    let mut fill: Vec<(usize, usize)> = Vec::new();
    while known.len() < all.len() {
        let before = known.len();
        for &(_, a, b, c) in &crossings {
            if a == b && known.contains(&a) && known.insert(c) {
                fill.push((a, c));
            }
        }
        assert!(known.len() > before, "curl arcs not reachable");
    }
    let k = t.size();
    let mut col = vec![0usize; all.len()];
    let mut out = Vec::new();
    for mut code in 0..k.pow(free.len() as u32) {
        for &a in &free {
            col[a] = code % k;
            code /= k;
        }
        for &(a, c) in &fill {
            col[c] = t.op[col[a]][col[a]];
        }
        let ok = crossings.iter().all(|&(p, a, b, c)| {
            if p {
                t.op[col[a]][col[b]] == col[c]
            } else {
                t.op[col[c]][col[b]] == col[a]
            }
        });
        if ok {
            let restricted = orig
                .iter()
                .cloned()
                .zip(free.iter().map(|&a| col[a]))
                .collect();
            out.push((restricted, col.iter().copied().collect()));
        }
    }
    out
}

/// All framing classes in `[0, rank)^c`.
pub fn classes(rank: u64, c: usize) -> Vec<Vec<u64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..c {
        out = out
            .into_iter()
            .flat_map(|w| {
                (0..rank).map(move |e| {
                    let mut v = w.clone();
                    v.push(e);
                    v
                })
            })
            .collect();
    }
    out
}

/// Colouring count of every framing class.
pub fn pr(d: &Diagram, t: &Table) -> BTreeMap<Vec<u64>, u64> {
    let c = d.components().len();
    classes(t.rank(), c)
        .into_iter()
        .map(|w| {
            let n = colorings(d, t, &w).len() as u64;
            (w, n)
        })
        .collect()
}

/// Submodule generated by `gens` in `(Z/n)^m`, grown one generator at a time
/// through all its multiples.
pub fn span(gens: &[Vec<u32>], n: u32) -> BTreeSet<Vec<u32>> {
    let m = gens.first().map_or(0, Vec::len);
    let mut set: BTreeSet<Vec<u32>> = BTreeSet::from([vec![0; m]]);
    for g in gens {
        let mut next = BTreeSet::new();
        for s in &set {
            for c in 0..n {
                let v: Vec<u32> = s.iter().zip(g).map(|(a, b)| (a + c * b) % n).collect();
                next.insert(v);
            }
        }
        set = next;
    }
    set
}

/// Enhanced counts keyed by `(framing class, span size, image size)`.
pub fn cp(
    d: &Diagram,
    t: &Table,
    labels: &[Vec<u32>],
    n: u32,
) -> BTreeMap<(Vec<u64>, usize, usize), u64> {
    let c = d.components().len();
    let mut out = BTreeMap::new();
    for w in classes(t.rank(), c) {
        for (_, used) in colorings_full(d, t, &w) {
            let image = t.closure(&used);
            let gens: Vec<Vec<u32>> = image.iter().map(|&x| labels[x].clone()).collect();
            let s = span(&gens, n).len();
            *out.entry((w.clone(), s, image.len())).or_insert(0) += 1;
        }
    }
    out
}

/// Racks with a small carrier: dihedral, cyclic constant actions and the like.
pub fn dihedral(n: usize) -> Table {
    Table {
        op: (0..n)
            .map(|x| (0..n).map(|y| (2 * y + n - x) % n).collect())
            .collect(),
    }
}

/// `x ▷ y = sigma(x)` for a permutation `sigma`.
pub fn constant(sigma: &[usize]) -> Table {
    Table {
        op: sigma.iter().map(|&s| vec![s; sigma.len()]).collect(),
    }
}

/// A random crossing code with `arcs` crossings plus up to `max_loops` free
/// loops. Over arcs are arbitrary, so the code need not be planar; colouring
/// counts are defined for it all the same.
pub fn random_diagram<R: rand::Rng>(rng: &mut R, arcs: usize, max_loops: usize) -> Diagram {
    use rand::seq::SliceRandom;
    let mut names: Vec<String> = (0..arcs).map(|i| format!("a{i}")).collect();
    names.shuffle(rng);
    let mut crossings = Vec::new();
    let mut rest = &names[..];
    while !rest.is_empty() {
        let len = rng.gen_range(1..=rest.len());
        let (cyc, tail) = rest.split_at(len);
        for (i, a) in cyc.iter().enumerate() {
            let over = names[rng.gen_range(0..names.len())].clone();
            crossings.push((
                rng.gen_bool(0.5),
                a.clone(),
                over,
                cyc[(i + 1) % len].clone(),
            ));
        }
        rest = tail;
    }
    crossings.shuffle(rng);
    Diagram {
        crossings,
        loops: rng.gen_range(0..=max_loops),
    }
}
