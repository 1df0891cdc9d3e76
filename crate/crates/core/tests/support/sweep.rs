//! Structural checks over many randomly drawn Coxeter racks.

#![allow(dead_code)]

use coxrack::{bilinear_eval, build_coxeter_rack, CoxeterSpec, Error, Modulus, SymForm};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Default)]
pub struct SweepStats {
    pub built: usize,
    pub empty: usize,
    pub triples: u64,
}

fn random_form<R: Rng>(rng: &mut R, n: u32, m: usize) -> SymForm {
    let draw: Vec<Vec<i64>> = (0..m)
        .map(|_| (0..m).map(|_| rng.gen_range(0..n) as i64).collect())
        .collect();
    let rows: Vec<Vec<i64>> = (0..m)
        .map(|i| (0..m).map(|j| draw[i.min(j)][i.max(j)]).collect())
        .collect();
    SymForm::new(&rows, Modulus::new(n).unwrap()).unwrap()
}

/// Builds `forms` random racks for every modulus, dimension and unit alpha,
/// and checks each one. Returns the first failure found.
pub fn run(moduli: &[u32], dims: &[usize], forms: usize, seed: u64) -> Result<SweepStats, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut stats = SweepStats::default();
    for &n in moduli {
        let md = Modulus::new(n).unwrap();
        for &m in dims {
            for alpha in md.units() {
                for _ in 0..forms {
                    let spec = CoxeterSpec::new(md, alpha as i64, random_form(&mut rng, n, m))
                        .map_err(|e| e.to_string())?;
                    match check(&spec, &mut stats) {
                        Ok(()) => {}
                        Err(msg) => return Err(format!("{spec}: {msg}")),
                    }
                }
            }
        }
    }
    Ok(stats)
}

fn check(spec: &CoxeterSpec, stats: &mut SweepStats) -> Result<(), String> {
    let r = match build_coxeter_rack(spec) {
        Ok(r) => r,
        Err(Error::EmptyCarrier) => {
            stats.empty += 1;
            return Ok(());
        }
        Err(e) => return Err(e.to_string()),
    };
    stats.built += 1;
    let n = spec.modulus();
    let k = r.size();
    let report = coxrack::verify_rack(&r.table()).map_err(|e| e.to_string())?;
    if !report.is_valid() {
        return Err(format!("not a rack: {report}"));
    }

    // <x > z, y > z> = alpha^2 <x, y>
    let labels = r.labels().ok_or("no labels")?;
    let mut gram = vec![vec![0u32; k]; k];
    for x in 0..k {
        for y in 0..k {
            gram[x][y] =
                bilinear_eval(spec.form(), &labels[x], &labels[y]).map_err(|e| e.to_string())?;
        }
    }
    let a2 = n.mul(spec.alpha(), spec.alpha());
    for z in 0..k {
        for x in 0..k {
            for y in 0..k {
                if gram[r.op(x, z)][r.op(y, z)] != n.mul(a2, gram[x][y]) {
                    return Err(format!("form not scaled by alpha^2 at ({x},{y},{z})"));
                }
            }
        }
    }
    stats.triples += (k * k * k) as u64;

    if n.get() == 2 && (0..k).any(|x| (0..k).any(|y| r.op(x, y) != x)) {
        return Err("operation over Z/2 is not trivial".into());
    }
    if spec.alpha() == n.get() - 1 && !r.is_quandle() {
        return Err("alpha = -1 but not a quandle".into());
    }
    if a2 == 1 && (0..k).any(|x| (0..k).any(|y| r.op(x, y) != r.inv_op(x, y))) {
        return Err("alpha^2 = 1 but the operation is not its own inverse".into());
    }
    for beta in n.units() {
        let scaled = spec.with_scaled_form(beta).map_err(|e| e.to_string())?;
        let s = build_coxeter_rack(&scaled).map_err(|e| e.to_string())?;
        if s.labels() != r.labels() || !s.same_operation(&r) {
            return Err(format!("scaling the form by {beta} changed the rack"));
        }
    }
    Ok(())
}
