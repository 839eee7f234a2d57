//! Brackets, length pairings, polygons and the closed dimension formula.

use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::coweight::{
    dominance_leq, floor_i64, frac, int, rat, rational_to_string, GCocharacter, OrbitSum, Rational,
    RationalCocharacter, RelCocharacter, SuperbasicDatum,
};
use crate::error::{Error, Result};

/// `[v] = sum_{i=1}^{h-1} floor(-(v_1 + ... + v_i))`.
pub fn bracket(v: &RelCocharacter) -> i64 {
    let ps = v.partial_sums();
    ps[..v.h().saturating_sub(1)]
        .iter()
        .map(|s| floor_i64(&-s))
        .sum()
}

/// Integer version of [`bracket`].
pub fn bracket_int(v: &[i64]) -> i64 {
    let mut s = 0;
    let mut total = 0;
    for x in &v[..v.len().saturating_sub(1)] {
        s += x;
        total -= s;
    }
    total
}

/// `<v1, v2> = [-v1] + [v2]`.
pub fn pairing(v1: &RelCocharacter, v2: &RelCocharacter) -> i64 {
    bracket(&-v1) + bracket(v2)
}

/// Integer version of [`pairing`].
pub fn pairing_int(v1: &[i64], v2: &[i64]) -> i64 {
    -bracket_int(v1) + bracket_int(v2)
}

/// Pairing of Galois orbit sums.
pub fn pairing_g<A: OrbitSum + ?Sized, B: OrbitSum + ?Sized>(a: &A, b: &B) -> i64 {
    pairing(&a.orbit_sum(), &b.orbit_sum())
}

/// The piecewise-linear function through `(0,0)` with slope `v_i` on `(i-1, i)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polygon {
    breakpoints: Vec<(usize, Rational)>,
}

impl Polygon {
    pub fn new(v: &RelCocharacter) -> Self {
        let mut breakpoints = vec![(0, Rational::zero())];
        breakpoints.extend(
            v.partial_sums()
                .into_iter()
                .enumerate()
                .map(|(i, s)| (i + 1, s)),
        );
        Polygon { breakpoints }
    }

    pub fn breakpoints(&self) -> &[(usize, Rational)] {
        &self.breakpoints
    }

    /// Value at the integer abscissa `x`, `0 <= x <= h`.
    pub fn at(&self, x: usize) -> &Rational {
        &self.breakpoints[x].1
    }

    pub fn h(&self) -> usize {
        self.breakpoints.len() - 1
    }

    pub fn breakpoint_strings(&self) -> Vec<(usize, String)> {
        self.breakpoints
            .iter()
            .map(|(x, y)| (*x, rational_to_string(y)))
            .collect()
    }
}

/// An integer point `(x, y)` in the plane.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct LatticePoint {
    pub x: i64,
    pub y: i64,
}

fn check_lattice_preconditions(v1: &RelCocharacter, v2: &RelCocharacter) -> Result<()> {
    if v1.h() != v2.h() {
        return Err(Error::Shape(format!(
            "lengths {} and {} differ",
            v1.h(),
            v2.h()
        )));
    }
    if !v2.is_integral() {
        return Err(Error::InvalidInput(format!("{v2} is not integral")));
    }
    if !dominance_leq(v1, v2) {
        return Err(Error::InvalidInput(format!(
            "{v1} is not dominated by {v2}"
        )));
    }
    Ok(())
}

/// Integer points `(x, y)` with `1 <= x <= h-1` and `P(v2)(x) < y <= P(v1)(x)`,
/// found by scanning the grid directly.
pub fn lattice_points(v1: &RelCocharacter, v2: &RelCocharacter) -> Result<Vec<LatticePoint>> {
    check_lattice_preconditions(v1, v2)?;
    let (p1, p2) = (Polygon::new(v1), Polygon::new(v2));
    let mut out = Vec::new();
    for x in 1..v1.h() {
        let (upper, lower) = (p1.at(x), p2.at(x));
        let lo = floor_i64(lower.min(upper)) - 1;
        let hi = floor_i64(lower.max(upper)) + 1;
        for y in lo..=hi {
            let q = int(y);
            if *lower < q && q <= *upper {
                out.push(LatticePoint { x: x as i64, y });
            }
        }
    }
    Ok(out)
}

/// Number of lattice points on or below `P(v1)` and strictly above `P(v2)`.
pub fn lattice_points_between(v1: &RelCocharacter, v2: &RelCocharacter) -> Result<i64> {
    Ok(lattice_points(v1, v2)?.len() as i64)
}

/// `(i - (h+1)/2)_{i=1..h}`.
pub fn rho_weights(h: usize) -> Vec<Rational> {
    (1..=h)
        .map(|i| rat(2 * i as i64 - h as i64 - 1, 2))
        .collect()
}

/// `<rho, x>` with the weight vector `(i - (h+1)/2)` in every Galois row.
pub fn rho_pairing(x: &RationalCocharacter) -> Rational {
    let w = rho_weights(x.h());
    x.rows()
        .flat_map(|r| r.iter().zip(&w).map(|(a, b)| a * b))
        .sum()
}

/// `<rho, mu>` for an integral cocharacter.
pub fn rho_pairing_int(mu: &GCocharacter) -> Rational {
    rho_pairing(&RationalCocharacter::from(mu))
}

/// Half the defect, from the orbit sum `d * nu` of a dominant Newton point:
/// `sum_{i=1}^{h-1} {-(partial sum up to i)}`.
pub fn half_defect_of_orbit_sum(d_nu: &RelCocharacter) -> Rational {
    let ps = d_nu.partial_sums();
    ps[..d_nu.h().saturating_sub(1)]
        .iter()
        .map(|s| frac(&-s))
        .sum()
}

/// Half the defect of the class with Newton point `nu` in `Res GL_h` over a
/// degree-`d` extension.
pub fn half_defect(nu: &RelCocharacter, d: usize) -> Rational {
    half_defect_of_orbit_sum(&nu.scale(&int(d as i64)))
}

/// Half the defect of a superbasic class; always `(h-1)/2`.
pub fn half_defect_superbasic(datum: &SuperbasicDatum) -> Rational {
    half_defect(&datum.newton_point(), datum.d())
}

/// `<rho, mu - nu> - defect/2` without any precondition check. May be
/// negative or fractional when the Mazur inequality fails.
pub fn dim_formula_raw(mu: &GCocharacter, nu: &RelCocharacter) -> Rational {
    let x = &RationalCocharacter::from(mu) - &RationalCocharacter::embed(nu, mu.d());
    rho_pairing(&x) - half_defect(nu, mu.d())
}

/// The closed dimension formula `<rho, mu - nu> - defect/2`.
///
/// `nu` is the (dominant) Newton point; the Kottwitz and Mazur conditions are
/// checked first.
pub fn dim_formula(mu: &GCocharacter, nu: &RelCocharacter) -> Result<i64> {
    if mu.h() != nu.h() {
        return Err(Error::Shape(format!(
            "mu has h={}, nu has h={}",
            mu.h(),
            nu.h()
        )));
    }
    let d_nu = nu.scale(&int(mu.d() as i64));
    let kappa = d_nu.total();
    if int(mu.total()) != kappa {
        return Err(Error::KappaMismatch {
            mu_sum: mu.total(),
            kappa: kappa.to_integer().to_i64().unwrap_or(i64::MAX),
        });
    }
    if !dominance_leq(&d_nu, &mu.dominant().orbit_sum()) {
        return Err(Error::MazurFails(format!(
            "{} is not dominated by {}",
            d_nu,
            mu.dominant().orbit_sum()
        )));
    }
    let value = dim_formula_raw(mu, nu);
    if !value.is_integer() {
        return Err(Error::Internal(format!(
            "dimension formula gave non-integer {}",
            rational_to_string(&value)
        )));
    }
    Ok(value.to_integer().to_i64().expect("dimension fits in i64"))
}

/// `sum_{i<j} max(v_i - v_j, 0)`: the pairing of `v` with its dominant sort.
pub fn length_to_dom(v: &[i64]) -> i64 {
    let mut total = 0;
    for (i, a) in v.iter().enumerate() {
        for b in &v[i + 1..] {
            total += (a - b).max(0);
        }
    }
    total
}

/// Length from a dominant integral `v` to the dominant sort of the vector
/// obtained by moving `beta` from position `i` to position `j` (1-based).
///
/// For `i = j` nothing moves and the answer is `0`.
pub fn transfer_length(v: &[i64], i: usize, j: usize, beta: i64) -> Result<i64> {
    let h = v.len();
    if !(1 <= i && i <= j && j <= h) {
        return Err(Error::InvalidInput(format!(
            "need 1 <= i <= j <= {h}, got i={i}, j={j}"
        )));
    }
    if beta < 0 {
        return Err(Error::InvalidInput(format!(
            "beta must be non-negative, got {beta}"
        )));
    }
    if v.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::InvalidInput("vector is not dominant".into()));
    }
    if i == j {
        return Ok(0);
    }
    let count = |x: i64| v.iter().filter(|&&y| y == x).count() as i64;
    let mut total = 0;
    for k in 1..=beta {
        for l in (v[i - 1] - beta)..v[j - 1] {
            total += count(k + l);
        }
    }
    Ok(total - beta)
}

/// Length from a dominant integral `v` to the vector obtained by replacing
/// the two entries `n2 <= n3` of `v` by `n1 <= n2` and `n4 >= n3`.
pub fn two_element_length(v: &[i64], n1: i64, n2: i64, n3: i64, n4: i64) -> i64 {
    let count = |x: i64| v.iter().filter(|&&y| y == x).count() as i64;
    let mut total = 0;
    for k in 0..(n4 - n3) {
        for l in 0..(n4 - n2) {
            total += count(n4 - k - l - 1);
        }
    }
    total + n1 - n2
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> RelCocharacter {
        RelCocharacter::parse(s).unwrap()
    }

    fn g(rows: &[&[i64]]) -> GCocharacter {
        GCocharacter::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    fn sevenths() -> RelCocharacter {
        RelCocharacter::constant(rat(3, 7), 7)
    }

    #[test]
    fn bracket_examples() {
        assert_eq!(bracket(&RelCocharacter::from_ints(&[0, 0, 0])), 0);
        assert_eq!(bracket(&-&sevenths()), 6);
        assert_eq!(bracket(&q("0,0,0,0,0,1,2")), -1);
        assert_eq!(bracket_int(&[0, 0, 0, 0, 0, 1, 2]), -1);
    }

    #[test]
    fn pairing_examples() {
        assert_eq!(pairing(&sevenths(), &q("0,0,0,0,0,1,2")), 5);
        assert_eq!(pairing(&q("2,-1,3"), &q("2,-1,3")), 0);
        assert_eq!(pairing(&q("1/2,1/2"), &q("0,1")), 0);
    }

    #[test]
    fn pairing_g_examples() {
        let nu = RationalCocharacter::embed(&q("1/4,1/4"), 2);
        assert_eq!(pairing_g(&nu, &g(&[&[0, 1], &[0, 0]])), 0);
        let nu = RationalCocharacter::embed(&RelCocharacter::constant(rat(4, 3), 3), 1);
        assert_eq!(pairing_g(&nu, &g(&[&[0, 1, 3]])), 2);
        let mu = g(&[&[0, 1, 3]]);
        assert_eq!(pairing_g(&mu, &mu), 0);
    }

    #[test]
    fn lattice_example_points() {
        let pts = lattice_points(&sevenths(), &q("0,0,0,0,0,1,2")).unwrap();
        let coords: Vec<_> = pts.iter().map(|p| (p.x, p.y)).collect();
        assert_eq!(coords, vec![(3, 1), (4, 1), (5, 1), (5, 2), (6, 2)]);
    }

    #[test]
    fn lattice_examples() {
        let v = q("0,1,3");
        assert_eq!(lattice_points_between(&v, &v).unwrap(), 0);
        let nu = RelCocharacter::constant(rat(4, 3), 3);
        assert_eq!(lattice_points_between(&nu, &v).unwrap(), 2);
        assert!(lattice_points_between(&v, &nu).is_err());
        assert!(lattice_points_between(&q("0,1"), &q("1/2,1/2")).is_err());
    }

    #[test]
    fn polygon_breakpoints() {
        let p = Polygon::new(&q("0,1,3"));
        assert_eq!(p.h(), 3);
        assert_eq!(p.at(0), &int(0));
        assert_eq!(p.at(2), &int(1));
        assert_eq!(p.at(3), &int(4));
    }

    #[test]
    fn rho_examples() {
        let nu = RelCocharacter::constant(rat(4, 3), 3);
        let x = &RationalCocharacter::from(&g(&[&[0, 1, 3]])) - &RationalCocharacter::embed(&nu, 1);
        assert_eq!(rho_pairing(&x), int(3));
        assert_eq!(rho_pairing_int(&g(&[&[5, 5, 5]])), int(0));
        let x = &RationalCocharacter::from(&g(&[&[0, 1], &[0, 0]]))
            - &RationalCocharacter::embed(&q("1/4,1/4"), 2);
        assert_eq!(rho_pairing(&x), rat(1, 2));
    }

    #[test]
    fn half_defect_examples() {
        let datum = SuperbasicDatum::new(1, 7, vec![3]).unwrap();
        assert_eq!(half_defect_superbasic(&datum), int(3));
        let datum = SuperbasicDatum::new(2, 2, vec![1, 0]).unwrap();
        assert_eq!(half_defect_superbasic(&datum), rat(1, 2));
        assert_eq!(half_defect(&q("0,1,1"), 1), int(0));
    }

    #[test]
    fn dim_formula_examples() {
        assert_eq!(dim_formula(&g(&[&[0, 1]]), &q("1/2,1/2")).unwrap(), 0);
        let nu = RelCocharacter::constant(rat(4, 3), 3);
        assert_eq!(dim_formula(&g(&[&[0, 1, 3]]), &nu).unwrap(), 2);
        assert_eq!(
            dim_formula(&g(&[&[0, 1], &[0, 0]]), &q("1/4,1/4")).unwrap(),
            0
        );
        assert!(matches!(
            dim_formula(&g(&[&[0, 1]]), &q("1,1")),
            Err(Error::KappaMismatch { .. })
        ));
        assert!(matches!(
            dim_formula(&g(&[&[1, 1]]), &q("0,2")),
            Err(Error::MazurFails(_))
        ));
    }

    #[test]
    fn length_examples() {
        assert_eq!(length_to_dom(&[0, 1, 1, 4]), 0);
        assert_eq!(length_to_dom(&[1, 0]), 1);
        assert_eq!(length_to_dom(&[2, 0, 1]), 3);
    }

    #[test]
    fn transfer_examples() {
        assert_eq!(transfer_length(&[0, 1, 2], 1, 3, 0).unwrap(), 0);
        assert_eq!(transfer_length(&[0, 1], 1, 2, 1).unwrap(), 1);
        assert_eq!(transfer_length(&[0, 1, 2], 2, 2, 3).unwrap(), 0);
        assert!(transfer_length(&[0, 1], 2, 1, 1).is_err());
        assert!(transfer_length(&[0, 1], 1, 3, 1).is_err());
    }

    #[test]
    fn two_element_example() {
        // (0,1) -> (-1,2)
        assert_eq!(two_element_length(&[0, 1], -1, 0, 1, 2), 1);
        assert_eq!(pairing_int(&[0, 1], &[-1, 2]), 1);
    }
}
