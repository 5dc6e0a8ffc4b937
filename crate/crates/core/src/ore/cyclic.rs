//! Minimal annihilators of cyclic vectors in differential modules.
//!
//! A module is `Q(x)^n` with `D v = v' + A v`. For the vector `v0` we look
//! for the monic `M = sum c_j D^j` of least order with `M v0 = 0`. With
//! `A = Ahat / den` and `w_k = den^k D^k v0` the iterates stay polynomial:
//!
//! `w_{k+1} = den w_k' - k den' w_k + Ahat w_k`.
//!
//! The order is bounded below by the rank of the `w_k` at a point modulo a
//! prime. The coefficients `c_j` are computed modulo many primes by
//! evaluation, rational-function reconstruction and Chinese remaindering,
//! and the final candidate is checked by an exact identity over `Z[x]`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::One;

use super::OrePoly;
use crate::algebra::modp::{
    mp_add, mp_derivative, mp_eval, mp_interpolate_consecutive, mp_mul, mp_rational_reconstruct,
    mp_scale, mp_sub, rational_reconstruct, CrtAccumulator, Fp, ModPoly, PrimeStream,
};
use crate::algebra::zpoly::{z_add_assign, z_derivative, z_mul, z_scale, z_sub, z_to_mod, ZPoly};
use crate::algebra::{Polynomial, Rational, RationalFunction};
use crate::error::{Error, Result};

/// `D v = v' + (Ahat / den) v` on `Q(x)^dim`, with the cyclic vector `v0`.
#[derive(Clone, Debug)]
pub(crate) struct DModule {
    pub dim: usize,
    pub den: ZPoly,
    /// Sparse `Ahat`: `(row, col, entry)`.
    pub entries: Vec<(usize, usize, ZPoly)>,
    pub v0: Vec<ZPoly>,
}

impl DModule {
    /// Builds the integral form from a rational matrix given sparsely.
    /// Repeated positions are summed.
    pub fn from_rational(
        dim: usize,
        entries: Vec<(usize, usize, RationalFunction)>,
        v0: Vec<Polynomial>,
    ) -> DModule {
        let mut merged: BTreeMap<(usize, usize), RationalFunction> = BTreeMap::new();
        for (i, j, a) in entries {
            let slot = merged.entry((i, j)).or_default();
            *slot = &*slot + &a;
        }
        merged.retain(|_, a| !a.is_zero());
        let mut den = Polynomial::one();
        for a in merged.values() {
            den = den.lcm(a.den());
        }
        let den_rf = RationalFunction::from_poly(den.clone());
        let polys: Vec<((usize, usize), Polynomial)> = merged
            .into_iter()
            .map(|(k, a)| (k, (&a * &den_rf).num().clone()))
            .collect();
        // one integer scale for den and all entries
        let mut l = BigInt::one();
        for c in den.coeffs() {
            l = num_integer::Integer::lcm(&l, c.denom());
        }
        for (_, p) in &polys {
            for c in p.coeffs() {
                l = num_integer::Integer::lcm(&l, c.denom());
            }
        }
        let lr = Rational::from_integer(l);
        let to_z = |p: &Polynomial| -> ZPoly {
            p.scale(&lr).coeffs().iter().map(|c| c.to_integer()).collect()
        };
        let den_z = to_z(&den);
        let entries = polys.iter().map(|((i, j), p)| (*i, *j, to_z(p))).collect();
        let mut lv = BigInt::one();
        for p in &v0 {
            for c in p.coeffs() {
                lv = num_integer::Integer::lcm(&lv, c.denom());
            }
        }
        let lv = Rational::from_integer(lv);
        let v0 = v0
            .iter()
            .map(|p| p.scale(&lv).coeffs().iter().map(|c| c.to_integer()).collect())
            .collect();
        DModule {
            dim,
            den: den_z,
            entries,
            v0,
        }
    }

    fn reduce(&self, f: &Fp) -> Option<ModImage> {
        let den = z_to_mod(f, &self.den);
        if den.len() != self.den.len() {
            return None;
        }
        Some(ModImage {
            dden: mp_derivative(f, &den),
            den,
            entries: self
                .entries
                .iter()
                .map(|(i, j, a)| (*i, *j, z_to_mod(f, a)))
                .collect(),
            v0: self.v0.iter().map(|p| z_to_mod(f, p)).collect(),
        })
    }

    fn exact_iterates(&self, count: usize) -> Vec<Vec<ZPoly>> {
        let dden = z_derivative(&self.den);
        let mut out = vec![self.v0.clone()];
        for k in 1..count {
            let w = out.last().unwrap();
            let kk = BigInt::from(k - 1);
            let kd = z_scale(&dden, &kk);
            let mut next: Vec<ZPoly> = w
                .iter()
                .map(|wi| z_sub(&z_mul(&self.den, &z_derivative(wi)), &z_mul(&kd, wi)))
                .collect();
            for (i, j, a) in &self.entries {
                if !w[*j].is_empty() {
                    z_add_assign(&mut next[*i], &z_mul(a, &w[*j]));
                }
            }
            out.push(next);
        }
        out
    }
}

struct ModImage {
    den: ModPoly,
    dden: ModPoly,
    entries: Vec<(usize, usize, ModPoly)>,
    v0: Vec<ModPoly>,
}

impl ModImage {
    fn iterates(&self, f: &Fp, count: usize) -> Vec<Vec<ModPoly>> {
        let mut out = vec![self.v0.clone()];
        for k in 1..count {
            let w = out.last().unwrap();
            let kd = mp_scale(f, &self.dden, f.from_u64((k - 1) as u64));
            let mut next: Vec<ModPoly> = w
                .iter()
                .map(|wi| mp_sub(f, &mp_mul(f, &self.den, &mp_derivative(f, wi)), &mp_mul(f, &kd, wi)))
                .collect();
            for (i, j, a) in &self.entries {
                if !w[*j].is_empty() {
                    next[*i] = mp_add(f, &next[*i], &mp_mul(f, a, &w[*j]));
                }
            }
            out.push(next);
        }
        out
    }
}

/// Index of the first iterate lying in the span of the previous ones, with
/// all iterates evaluated at `alpha`. Bounded above by the true order.
fn first_dependence_at(f: &Fp, ws: &[Vec<ModPoly>], alpha: u64) -> usize {
    let mut basis: Vec<(usize, Vec<u64>)> = Vec::new();
    for (k, w) in ws.iter().enumerate() {
        let mut v: Vec<u64> = w.iter().map(|p| mp_eval(f, p, alpha)).collect();
        for (piv, b) in &basis {
            let c = v[*piv];
            if c != 0 {
                for (x, y) in v.iter_mut().zip(b) {
                    *x = f.sub(*x, f.mul(c, *y));
                }
            }
        }
        match v.iter().position(|&c| c != 0) {
            None => return k,
            Some(piv) => {
                let inv = f.inv(v[piv]);
                let v: Vec<u64> = v.iter().map(|&c| f.mul(c, inv)).collect();
                basis.push((piv, v));
            }
        }
    }
    ws.len()
}

/// Order of the minimal annihilator of `v0`.
pub(crate) fn cyclic_order(m: &DModule) -> usize {
    if m.v0.iter().all(|p| p.is_empty()) {
        return 0;
    }
    let mut best = 0;
    for p in PrimeStream::with_offset(3).take(2) {
        let f = Fp::new(p);
        let Some(img) = m.reduce(&f) else { continue };
        let ws = img.iterates(&f, m.dim + 1);
        for seed in [982_451_653u64, 715_827_883] {
            let alpha = f.from_u64(seed);
            if mp_eval(&f, &img.den, alpha) == 0 {
                continue;
            }
            best = best.max(first_dependence_at(&f, &ws, alpha));
        }
    }
    best
}

/// Solves `sum_{j<r} g_j cols_j = -cols_r` over F_p; `None` when the first
/// `r` columns are dependent or the system is inconsistent.
fn solve_relation(f: &Fp, rows: &mut [Vec<u64>], r: usize) -> Option<Vec<u64>> {
    let n = rows.len();
    for row in rows.iter_mut() {
        row[r] = f.neg(row[r]);
    }
    let mut prow = 0;
    let mut pivots = Vec::with_capacity(r);
    for col in 0..r {
        let sel = (prow..n).find(|&i| rows[i][col] != 0)?;
        rows.swap(prow, sel);
        let inv = f.inv(rows[prow][col]);
        for x in rows[prow].iter_mut() {
            *x = f.mul(*x, inv);
        }
        let pr = rows[prow].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != prow && row[col] != 0 {
                let c = row[col];
                for (x, y) in row.iter_mut().zip(&pr).skip(col) {
                    *x = f.sub(*x, f.mul(c, *y));
                }
            }
        }
        pivots.push(col);
        prow += 1;
    }
    if rows[prow..].iter().any(|row| row[r] != 0) {
        return None;
    }
    Some((0..r).map(|j| rows[j][r]).collect())
}

/// Reconstruction of all `c_j` modulo one prime: numerator and monic
/// denominator per coefficient.
type ModRelation = Vec<(ModPoly, ModPoly)>;

fn relation_mod_p(f: &Fp, img: &ModImage, r: usize) -> Option<ModRelation> {
    let ws = img.iterates(f, r + 1);
    let mut values: Vec<Vec<u64>> = vec![Vec::new(); r];
    let mut npts = 32usize;
    const CHECKS: usize = 3;
    loop {
        // points START+1, START+2, ...; a bad point discards the prime
        while values[0].len() < npts + CHECKS {
            let a = f.from_u64(START + values[0].len() as u64 + 1);
            let da = mp_eval(f, &img.den, a);
            if da == 0 {
                return None;
            }
            let mut rows: Vec<Vec<u64>> = (0..img.v0.len())
                .map(|i| ws.iter().map(|w| mp_eval(f, &w[i], a)).collect())
                .collect();
            let g = solve_relation(f, &mut rows, r)?;
            // c_j = g_j / den^(r-j)
            let dinv = f.inv(da);
            let mut scale = f.one();
            for j in (0..r).rev() {
                scale = f.mul(scale, dinv);
                values[j].push(f.mul(g[j], scale));
            }
        }
        let mut out = Vec::with_capacity(r);
        let mut ok = true;
        let modulus = consecutive_modulus(f, npts);
        for vals in &values {
            let u = mp_interpolate_consecutive(f, START, &vals[..npts]);
            match mp_rational_reconstruct(f, &u, &modulus, 4) {
                Some((n, d)) if checks_pass(f, &n, &d, &vals[npts..], npts) => out.push((n, d)),
                _ => {
                    ok = false;
                    break;
                }
            }
        }
        if ok {
            return Some(out);
        }
        if npts > 1 << 14 {
            return None;
        }
        npts *= 2;
    }
}

/// Evaluation nodes are `START + 1, START + 2, ...`, away from the small
/// integers where singularities tend to sit.
const START: u64 = 1_000_000_000;

/// `prod_{i=1..n} (x - START - i)`
fn consecutive_modulus(f: &Fp, n: usize) -> ModPoly {
    let mut m: ModPoly = vec![f.one()];
    for i in 1..=n {
        let a = f.from_u64(START + i as u64);
        let mut next = vec![0u64; m.len() + 1];
        for (k, &c) in m.iter().enumerate() {
            next[k + 1] = f.add(next[k + 1], c);
            next[k] = f.sub(next[k], f.mul(c, a));
        }
        m = next;
    }
    m
}

fn checks_pass(f: &Fp, n: &ModPoly, d: &ModPoly, vals: &[u64], start: usize) -> bool {
    vals.iter().enumerate().all(|(i, &v)| {
        let a = f.from_u64(START + (start + i + 1) as u64);
        let da = mp_eval(f, d, a);
        da != 0 && f.mul(v, da) == mp_eval(f, n, a)
    })
}

fn profile(rel: &ModRelation) -> Vec<(usize, usize)> {
    rel.iter().map(|(n, d)| (n.len(), d.len())).collect()
}

fn flatten(f: &Fp, rel: &ModRelation) -> Vec<u64> {
    let mut v = Vec::new();
    for (n, d) in rel {
        v.extend(n.iter().map(|&c| f.to_u64(c)));
        v.extend(d.iter().map(|&c| f.to_u64(c)));
    }
    v
}

fn unflatten(vals: &[Rational], prof: &[(usize, usize)]) -> Vec<RationalFunction> {
    let mut pos = 0;
    let mut out = Vec::with_capacity(prof.len());
    for &(ln, ld) in prof {
        let n = Polynomial::new(vals[pos..pos + ln].to_vec());
        pos += ln;
        let d = Polynomial::new(vals[pos..pos + ld].to_vec());
        pos += ld;
        out.push(RationalFunction::new(n, d).expect("monic denominator"));
    }
    out
}

/// Checks `sum_j c_j den^(r-j) w_j = 0` exactly (with `c_r = 1`).
fn verify_exact(m: &DModule, coeffs: &[RationalFunction]) -> bool {
    let r = coeffs.len();
    let mut common = Polynomial::one();
    for c in coeffs {
        common = common.lcm(c.den());
    }
    let common_rf = RationalFunction::from_poly(common.clone());
    let mut hs: Vec<Polynomial> = coeffs.iter().map(|c| (c * &common_rf).num().clone()).collect();
    hs.push(common);
    let mut l = BigInt::one();
    for h in &hs {
        for c in h.coeffs() {
            l = num_integer::Integer::lcm(&l, c.denom());
        }
    }
    let lr = Rational::from_integer(l);
    let hz: Vec<ZPoly> = hs
        .iter()
        .map(|h| h.scale(&lr).coeffs().iter().map(|c| c.to_integer()).collect())
        .collect();
    let ws = m.exact_iterates(r + 1);
    let mut acc: Vec<ZPoly> = vec![Vec::new(); m.dim];
    for (j, w) in ws.iter().enumerate() {
        for (a, wi) in acc.iter_mut().zip(w) {
            let mut t = z_mul(a, &m.den);
            if !hz[j].is_empty() && !wi.is_empty() {
                z_add_assign(&mut t, &z_mul(&hz[j], wi));
            }
            *a = t;
        }
    }
    acc.iter().all(|a| a.is_empty())
}

/// The monic minimal annihilator of `v0`.
pub(crate) fn cyclic_annihilator(m: &DModule) -> Result<OrePoly> {
    let r = cyclic_order(m);
    if r == 0 {
        return Ok(OrePoly::one());
    }
    let mut prof: Option<Vec<(usize, usize)>> = None;
    let mut acc: Option<CrtAccumulator> = None;
    let mut previous: Option<Vec<Rational>> = None;
    let mut next_attempt = 1usize;
    let mut used = 0usize;
    let mut failures = 0usize;
    for p in PrimeStream::with_offset(11) {
        if used > 2000 || failures > 20 {
            break;
        }
        let f = Fp::new(p);
        let Some(img) = m.reduce(&f) else { continue };
        let Some(rel) = relation_mod_p(&f, &img, r) else {
            failures += 1;
            continue;
        };
        let pr = profile(&rel);
        match &prof {
            Some(old) if *old == pr => {}
            Some(old) if total(old) > total(&pr) => continue,
            _ => {
                // first prime, or the earlier primes were unlucky
                acc = Some(CrtAccumulator::new(pr.iter().map(|(a, b)| a + b).sum()));
                prof = Some(pr.clone());
                previous = None;
                used = 0;
                next_attempt = 1;
            }
        }
        let a = acc.as_mut().unwrap();
        a.push(p, &flatten(&f, &rel));
        used += 1;
        if used < next_attempt {
            continue;
        }
        next_attempt = used + used.div_ceil(4);
        let Some(vals) = reconstruct_all(a) else {
            previous = None;
            continue;
        };
        if previous.as_ref() != Some(&vals) {
            previous = Some(vals);
            next_attempt = used + 1;
            continue;
        }
        let mut coeffs = unflatten(&vals, prof.as_ref().unwrap());
        if verify_exact(m, &coeffs) {
            coeffs.push(RationalFunction::one());
            return Ok(OrePoly::new(coeffs));
        }
    }
    Err(Error::Budget("annihilator reconstruction did not stabilize".into()))
}

fn total(p: &[(usize, usize)]) -> usize {
    p.iter().map(|(a, b)| a + b).sum()
}

fn reconstruct_all(acc: &CrtAccumulator) -> Option<Vec<Rational>> {
    acc.values
        .iter()
        .map(|v| rational_reconstruct(v, &acc.modulus).map(|(a, b)| Rational::new(a, b)))
        .collect()
}
