use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::algebra::modp::{mp_axpy, mp_divrem, mp_interpolate_consecutive, mp_trim, Fp, ModPoly, PrimeStream};
use crate::algebra::roots::roots_mod_p;
use crate::algebra::{rational_roots, Polynomial, QMatrix, Rational, RationalFunction};
use crate::error::Result;
use crate::localsolve::{indicial_polynomial, Point};
use crate::ore::{pole_polynomial, singular_support, OrePoly};

fn int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

fn falling(lambda: &Rational, i: usize) -> Rational {
    (0..i).fold(Rational::one(), |acc, k| acc * (lambda - int(k as i64)))
}

/// Integers that are indicial roots at some root of the squarefree
/// polynomial `q`, for the operator with polynomial coefficients `a`.
fn integer_roots_over(a: &[Polynomial], q: &Polynomial) -> Vec<BigInt> {
    if q.is_constant() {
        return Vec::new();
    }
    // Taylor coefficients a_i^(k) / k!
    let maxdeg = a.iter().map(|p| p.deg().max(0) as usize).max().unwrap_or(0);
    let taylor: Vec<Vec<Polynomial>> = a
        .iter()
        .map(|p| {
            let mut out = Vec::new();
            let mut t = p.clone();
            for k in 0..=maxdeg {
                out.push(t.clone());
                t = t.derivative().scale(&int(k as i64 + 1).recip());
            }
            out
        })
        .collect();
    let mut out = roots_on_factor(&taylor, &q.monic());
    out.sort();
    out.dedup();
    out
}

/// Splits `g` by where the lowest nonvanishing Taylor level changes; on each
/// part the indicial polynomial is generic and its integer roots come from
/// a resultant in the exponent variable.
fn roots_on_factor(taylor: &[Vec<Polynomial>], g: &Polynomial) -> Vec<BigInt> {
    let rem = |p: &Polynomial| p.divmod(g).expect("nonzero").1;
    let t: Vec<Vec<Polynomial>> = taylor.iter().map(|ts| ts.iter().map(&rem).collect()).collect();
    let mut v = isize::MAX;
    for (i, ts) in t.iter().enumerate() {
        if let Some(k) = ts.iter().position(|x| !x.is_zero()) {
            v = v.min(k as isize - i as isize);
        }
    }
    if v == isize::MAX {
        return Vec::new();
    }
    let r = t.len() - 1;
    let c: Vec<Polynomial> = t
        .iter()
        .enumerate()
        .map(|(i, ts)| {
            let k = v + i as isize;
            if k < 0 {
                Polynomial::zero()
            } else {
                ts.get(k as usize).cloned().unwrap_or_else(Polynomial::zero)
            }
        })
        .collect();
    let p0_at = |lambda: &Rational| -> Polynomial {
        let mut acc = Polynomial::zero();
        for (i, ci) in c.iter().enumerate() {
            if !ci.is_zero() {
                acc = &acc + &ci.scale(&falling(lambda, i));
            }
        }
        rem(&acc)
    };
    let mut h = g.clone();
    for l in 0..=r {
        h = h.gcd(&p0_at(&int(l as i64)));
        if h.is_constant() {
            break;
        }
    }
    let mut out = Vec::new();
    let g2 = if h.is_constant() { g.clone() } else { g.div_exact(&h).unwrap().unwrap().monic() };
    if !g2.is_constant() {
        for k in integer_root_candidates(&c, &g2) {
            let lambda = Rational::from_integer(k.clone());
            if !g2.gcd(&p0_at(&lambda)).is_constant() {
                out.push(k);
            }
        }
    }
    if !h.is_constant() {
        out.extend(roots_on_factor(&t, &h.monic()));
    }
    out
}

/// Symmetric lifts of the roots in F_p of `Res_z(g, sum_i c_i(z) lambda^(i falling))`.
/// Integer roots of the resultant are among them as long as they are smaller
/// than `p/2` in absolute value.
fn integer_root_candidates(c: &[Polynomial], g: &Polynomial) -> Vec<BigInt> {
    let n = (c.len() - 1) * g.deg() as usize + 1;
    'primes: for p in PrimeStream::with_offset(17) {
        let f = Fp::new(p);
        let to_mod = |q: &Polynomial| -> Option<ModPoly> {
            let mut out = Vec::with_capacity(q.coeffs().len());
            for a in q.coeffs() {
                out.push(f.from_ratio(a.numer(), a.denom())?);
            }
            mp_trim(&mut out);
            Some(out)
        };
        let Some(gm) = to_mod(g) else { continue };
        let mut cm = Vec::with_capacity(c.len());
        for ci in c {
            let Some(m) = to_mod(ci) else { continue 'primes };
            cm.push(m);
        }
        let ys: Vec<u64> = (1..=n as u64)
            .map(|l| {
                let lam = f.from_u64(l);
                let mut acc: ModPoly = Vec::new();
                let mut ff = f.one();
                for (i, ci) in cm.iter().enumerate() {
                    if i > 0 {
                        ff = f.mul(ff, f.sub(lam, f.from_u64(i as u64 - 1)));
                    }
                    mp_axpy(&f, &mut acc, ff, ci);
                }
                mp_resultant(&f, &gm, &acc)
            })
            .collect();
        let r = mp_interpolate_consecutive(&f, 0, &ys);
        if r.is_empty() {
            continue;
        }
        let half = p / 2;
        return roots_mod_p(&f, &r)
            .into_iter()
            .map(|x| {
                let v = f.to_u64(x);
                if v > half {
                    BigInt::from(v) - BigInt::from(p)
                } else {
                    BigInt::from(v)
                }
            })
            .collect();
    }
    unreachable!("prime stream is infinite")
}

/// Resultant over F_p by the Euclidean remainder sequence.
fn mp_resultant(f: &Fp, a: &ModPoly, b: &ModPoly) -> u64 {
    if a.is_empty() || b.is_empty() {
        return 0;
    }
    let (da, db) = (a.len() - 1, b.len() - 1);
    if db == 0 {
        return f.pow(b[0], da as u64);
    }
    if da == 0 {
        return f.pow(a[0], db as u64);
    }
    let (_, r) = mp_divrem(f, a, b);
    if r.is_empty() {
        return 0;
    }
    let mut out = f.mul(f.pow(b[db], (da - (r.len() - 1)) as u64), mp_resultant(f, b, &r));
    if (da * db) % 2 == 1 {
        out = f.neg(out);
    }
    out
}

fn most_negative(roots: &[BigInt]) -> usize {
    roots
        .iter()
        .filter(|k| k.is_negative())
        .map(|k| (-k).to_usize().unwrap_or(usize::MAX))
        .max()
        .unwrap_or(0)
}

/// A Q-basis of the rational function solutions of `L`.
pub fn rational_solutions(l: &OrePoly) -> Result<Vec<RationalFunction>> {
    let Some(r) = l.order() else {
        return Ok(Vec::new());
    };
    if r == 0 {
        return Ok(Vec::new());
    }
    let prim = l.primitive();
    let a: Vec<Polynomial> = prim.coeffs().iter().map(|c| c.num().clone()).collect();
    // denominator bound
    let sup = singular_support(l)?;
    let mut den = Polynomial::one();
    let mut rational_part = Polynomial::one();
    for xi in &sup.finite_points {
        rational_part = &rational_part * &Polynomial::new(vec![-xi, Rational::one()]);
        let p0 = indicial_polynomial(l, &Point::Finite(xi.clone()))?;
        let ints: Vec<BigInt> = rational_roots(&p0)?
            .distinct()
            .into_iter()
            .filter(|x| x.is_integer())
            .map(|x| x.to_integer())
            .collect();
        let k = most_negative(&ints);
        den = &den * &Polynomial::new(vec![-xi, Rational::one()]).pow(k as u32);
    }
    if sup.has_irrational_singularities {
        let poles = pole_polynomial(l).squarefree_part();
        let q = poles.div_exact(&rational_part.monic())?.unwrap_or(poles);
        let k = most_negative(&integer_roots_over(&a, &q));
        den = &den * &q.monic().pow(k as u32);
    }
    // numerator degree bound from the exponents at infinity
    let p_inf = indicial_polynomial(l, &Point::Infinity)?;
    let ints: Vec<BigInt> = if p_inf.is_constant() {
        Vec::new()
    } else {
        rational_roots(&p_inf)?
            .distinct()
            .into_iter()
            .filter(|x| x.is_integer())
            .map(|x| x.to_integer())
            .collect()
    };
    let Some(min_inf) = ints.iter().min() else {
        return Ok(Vec::new());
    };
    let bound = BigInt::from(den.deg()) - min_inf;
    if bound.is_negative() {
        return Ok(Vec::new());
    }
    let nmax = bound.to_usize().expect("degree bound fits");
    // M = L * (1/den), then polynomial solutions of M of degree <= nmax
    let inv = RationalFunction::new(Polynomial::one(), den.clone())?;
    let m = (&prim * &OrePoly::from(inv)).primitive();
    let mc: Vec<Polynomial> = m.coeffs().iter().map(|c| c.num().clone()).collect();
    let mut columns: Vec<Polynomial> = Vec::with_capacity(nmax + 1);
    for k in 0..=nmax {
        let kk = int(k as i64);
        let mut img = Polynomial::zero();
        for (i, mi) in mc.iter().enumerate() {
            if i > k || mi.is_zero() {
                continue;
            }
            let f = falling(&kk, i);
            if !f.is_zero() {
                img = &img + &mi.shl(k - i).scale(&f);
            }
        }
        columns.push(img);
    }
    let rows = columns.iter().map(|c| c.deg().max(0) as usize + 1).max().unwrap_or(1);
    let mut mat = QMatrix::zeros(rows, nmax + 1);
    for (j, c) in columns.iter().enumerate() {
        for (i, v) in c.coeffs().iter().enumerate() {
            mat.set(i, j, v.clone());
        }
    }
    let mut out = Vec::new();
    for v in mat.nullspace() {
        let num = Polynomial::new(v);
        out.push(RationalFunction::new(num, den.clone())?);
    }
    Ok(out)
}
