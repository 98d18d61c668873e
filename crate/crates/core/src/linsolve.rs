//! Exact linear systems with Laurent-polynomial coefficients.
//!
//! Elimination runs over rational functions in `q`; a solution is accepted
//! only when every value comes back as a Laurent polynomial.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

fn lead(p: &Scalar) -> (i32, BigRational) {
    let e = p.max_exp().expect("nonzero");
    (e, p.coeff(e))
}

/// Remainder of polynomial division (both arguments have no negative powers).
fn poly_rem(a: &Scalar, b: &Scalar) -> Scalar {
    let (db, lb) = lead(b);
    let mut r = a.clone();
    while let Some(dr) = r.max_exp() {
        if dr < db {
            break;
        }
        let c = r.coeff(dr) / &lb;
        r = &r - &(b * &Scalar::monomial(c, dr - db));
    }
    r
}

fn to_poly(p: &Scalar) -> Scalar {
    p.shift(-p.min_exp().unwrap_or(0))
}

fn monic(p: &Scalar) -> Scalar {
    let (_, c) = lead(p);
    p.scale(&c.recip())
}

/// Monic gcd of the polynomial parts.
fn poly_gcd(a: &Scalar, b: &Scalar) -> Scalar {
    let mut a = to_poly(a);
    let mut b = to_poly(b);
    while !b.is_zero() {
        let r = poly_rem(&a, &b);
        a = b;
        b = r;
    }
    monic(&a)
}

/// `num / den` with coprime parts and `den` monic with constant term present.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Frac {
    num: Scalar,
    den: Scalar,
}

impl Frac {
    fn zero() -> Frac {
        Frac { num: Scalar::zero(), den: Scalar::one() }
    }

    fn from(s: Scalar) -> Frac {
        Frac { num: s, den: Scalar::one() }
    }

    fn new(num: Scalar, den: Scalar) -> Frac {
        if num.is_zero() {
            return Frac::zero();
        }
        let g = poly_gcd(&num, &den);
        let mut num = num.div_exact(&g).expect("gcd divides");
        let mut den = den.div_exact(&g).expect("gcd divides");
        let shift = den.min_exp().unwrap_or(0);
        num = num.shift(-shift);
        den = den.shift(-shift);
        let (_, c) = lead(&den);
        let inv = c.recip();
        Frac { num: num.scale(&inv), den: den.scale(&inv) }
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn add(&self, o: &Frac) -> Frac {
        if self.den == o.den {
            return Frac::new(&self.num + &o.num, self.den.clone());
        }
        Frac::new(&(&self.num * &o.den) + &(&o.num * &self.den), &self.den * &o.den)
    }

    fn neg(&self) -> Frac {
        Frac { num: -&self.num, den: self.den.clone() }
    }

    fn mul(&self, o: &Frac) -> Frac {
        Frac::new(&self.num * &o.num, &self.den * &o.den)
    }

    fn div(&self, o: &Frac) -> Frac {
        Frac::new(&self.num * &o.den, &self.den * &o.num)
    }

    fn as_laurent(&self) -> Option<Scalar> {
        if self.den.is_one() {
            Some(self.num.clone())
        } else {
            None
        }
    }
}

/// Sparse system `Σ_j a_ij x_j = b_i`.
#[derive(Clone, Debug, Default)]
pub struct LinearSystem {
    ncols: usize,
    rows: Vec<(BTreeMap<usize, Scalar>, Scalar)>,
}

/// A particular solution (free unknowns set to zero).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub values: Vec<Scalar>,
    pub free: Vec<usize>,
    pub rank: usize,
}

impl Solution {
    pub fn is_unique(&self) -> bool {
        self.free.is_empty()
    }
}

impl LinearSystem {
    pub fn new(ncols: usize) -> Self {
        LinearSystem { ncols, rows: Vec::new() }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn add_row(&mut self, coeffs: BTreeMap<usize, Scalar>, rhs: Scalar) {
        let coeffs: BTreeMap<usize, Scalar> = coeffs.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        debug_assert!(coeffs.keys().all(|&j| j < self.ncols));
        self.rows.push((coeffs, rhs));
    }

    pub fn solve(&self) -> Result<Solution> {
        let mut rows: Vec<(BTreeMap<usize, Frac>, Frac)> = self
            .rows
            .iter()
            .map(|(c, b)| (c.iter().map(|(j, a)| (*j, Frac::from(a.clone()))).collect(), Frac::from(b.clone())))
            .collect();
        let mut pivots: Vec<(usize, usize)> = Vec::new();
        let mut next = 0usize;
        for col in 0..self.ncols {
            // Sparsest row with a nonzero entry keeps fill-in down.
            let Some(pr) = (next..rows.len())
                .filter(|&r| rows[r].0.contains_key(&col))
                .min_by_key(|&r| rows[r].0.len())
            else {
                continue;
            };
            rows.swap(next, pr);
            let p = rows[next].0[&col].clone();
            let (prow, prhs) = {
                let (c, b) = &rows[next];
                let c: BTreeMap<usize, Frac> = c.iter().map(|(j, a)| (*j, a.div(&p))).collect();
                (c, b.div(&p))
            };
            rows[next] = (prow.clone(), prhs.clone());
            for (r, row) in rows.iter_mut().enumerate() {
                if r == next {
                    continue;
                }
                let Some(f) = row.0.get(&col).cloned() else { continue };
                for (j, a) in &prow {
                    let v = row.0.get(j).cloned().unwrap_or_else(Frac::zero).add(&a.mul(&f).neg());
                    if v.is_zero() {
                        row.0.remove(j);
                    } else {
                        row.0.insert(*j, v);
                    }
                }
                row.1 = row.1.add(&prhs.mul(&f).neg());
            }
            pivots.push((next, col));
            next += 1;
        }
        for (c, b) in &rows[next..] {
            debug_assert!(c.is_empty());
            if !b.is_zero() {
                return Err(Error::Unsolvable(alloc::string::String::from("inconsistent equations")));
            }
        }
        let mut values = alloc::vec![Scalar::zero(); self.ncols];
        let mut is_pivot = alloc::vec![false; self.ncols];
        for &(r, col) in &pivots {
            is_pivot[col] = true;
            values[col] = rows[r].1.as_laurent().ok_or_else(|| {
                Error::Unsolvable(alloc::format!("unknown {col} is not a Laurent polynomial"))
            })?;
        }
        let free = (0..self.ncols).filter(|&j| !is_pivot[j]).collect();
        Ok(Solution { values, free, rank: pivots.len() })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i32) -> Scalar {
        Scalar::q_pow(n)
    }

    fn row(entries: &[(usize, Scalar)]) -> BTreeMap<usize, Scalar> {
        entries.iter().cloned().collect()
    }

    #[test]
    fn solves_with_non_unit_pivots() {
        // (q^2 - 1) x + y = q^2, x - y = 0  =>  x = y = 1
        let mut s = LinearSystem::new(2);
        s.add_row(row(&[(0, &q(2) - &Scalar::one()), (1, Scalar::one())]), q(2));
        s.add_row(row(&[(0, Scalar::one()), (1, -Scalar::one())]), Scalar::zero());
        let sol = s.solve().unwrap();
        assert!(sol.is_unique());
        assert_eq!(sol.values, [Scalar::one(), Scalar::one()]);
    }

    #[test]
    fn reports_free_unknowns() {
        let mut s = LinearSystem::new(3);
        s.add_row(row(&[(0, q(1)), (2, q(1))]), q(3));
        let sol = s.solve().unwrap();
        assert_eq!(sol.free, [1, 2]);
        assert_eq!(sol.values[0], q(2));
    }

    #[test]
    fn rejects_inconsistent_and_non_laurent() {
        let mut s = LinearSystem::new(1);
        s.add_row(row(&[(0, Scalar::one())]), Scalar::one());
        s.add_row(row(&[(0, Scalar::one())]), q(1));
        assert!(matches!(s.solve(), Err(Error::Unsolvable(_))));
        let mut t = LinearSystem::new(1);
        t.add_row(row(&[(0, &q(1) + &Scalar::one())]), Scalar::one());
        assert!(matches!(t.solve(), Err(Error::Unsolvable(_))));
    }

    #[test]
    fn gcd_of_cyclotomic_factors() {
        let a = &q(2) - &Scalar::one();
        let b = &q(3) - &q(1);
        assert_eq!(poly_gcd(&a, &b), a);
    }
}
