//! Colored cones and fans in the rank-two valuation space, the fan of the
//! minimal resolution, orbit posets, and the valuation pairing between
//! boundary divisors and eigenfunctions.
//!
//! Coordinates are taken in the dual basis `(u1, u2)` of the eigenfunction
//! lattice basis `{(2, 0), (m, m)}`. In these coordinates the four base
//! divisors define the rays `rho_D = (-b, ap)`, `rho_{S-} = (1, 0)`,
//! `rho_{S+} = (1, m)`, `rho_{D'} = (0, 1)`, and the central valuation cone
//! is the half-plane `x + y <= 0` in the `(rho_{S+}, rho_{S-})` basis.

use std::collections::BTreeSet;
use std::fmt;

use num::{BigRational, One, Signed, Zero};

use crate::error::Error;
use crate::exact::{gcd, Int};
use crate::pair::{DerivedInvariants, PopovPair, SequenceTable};
use crate::HjExpansion;

/// An integer point of `Q = Hom(Gamma, Q)` in the `(u1, u2)` basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LatticeVector {
    pub x1: Int,
    pub x2: Int,
}

impl LatticeVector {
    pub fn new(x1: Int, x2: Int) -> Self {
        LatticeVector { x1, x2 }
    }

    pub fn is_primitive(&self) -> bool {
        gcd(&self.x1, &self.x2).is_one()
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x1, self.x2)
    }
}

pub fn det2(a: &LatticeVector, b: &LatticeVector) -> Int {
    &a.x1 * &b.x2 - &a.x2 * &b.x1
}

/// The two colors: the non-invariant divisors `S^+` and `S^-`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Color {
    SPlus,
    SMinus,
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Color::SPlus => write!(f, "S+"),
            Color::SMinus => write!(f, "S-"),
        }
    }
}

/// A cone given by indices into the owning fan's ray table (empty for the
/// zero cone), together with its color set and orbit label.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoredCone {
    pub rays: Vec<usize>,
    pub colors: BTreeSet<Color>,
    pub label: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoredFan {
    pub rays: Vec<LatticeVector>,
    pub cones: Vec<ColoredCone>,
}

impl ColoredFan {
    pub fn ray(&self, idx: usize) -> &LatticeVector {
        &self.rays[idx]
    }

    pub fn maximal_cones(&self) -> impl Iterator<Item = &ColoredCone> {
        self.cones.iter().filter(|c| c.rays.len() == 2)
    }
}

/// Image of a divisor color in `Q`.
pub fn color_ray(color: Color, m: &Int) -> LatticeVector {
    match color {
        Color::SPlus => LatticeVector::new(Int::one(), m.clone()),
        Color::SMinus => LatticeVector::new(Int::one(), Int::zero()),
    }
}

/// Coordinates of `v` in the `(rho_{S+}, rho_{S-})` basis, as exact
/// rationals.
pub fn splus_sminus_coordinates(m: &Int, v: &LatticeVector) -> (BigRational, BigRational) {
    let x = BigRational::new(v.x2.clone(), m.clone());
    let y = BigRational::from(v.x1.clone()) - x.clone();
    (x, y)
}

/// Membership in the valuation cone `{x rho_{S+} + y rho_{S-} : x + y <= 0}`.
pub fn in_valuation_cone(m: &Int, v: &LatticeVector) -> bool {
    let (x, y) = splus_sminus_coordinates(m, v);
    !(x + y).is_positive()
}

/// Value of the linear form `x + y` (in the `S^+/S^-` basis) at `v`; the
/// valuation cone is where this is nonpositive.
fn valuation_form(m: &Int, v: &LatticeVector) -> BigRational {
    let (x, y) = splus_sminus_coordinates(m, v);
    x + y
}

/// `v` lies in the cone spanned by `gens` (0, 1 or 2 generators).
fn cone_contains(gens: &[&LatticeVector], v: &LatticeVector) -> bool {
    match gens.len() {
        0 => v.x1.is_zero() && v.x2.is_zero(),
        1 => {
            let g = gens[0];
            if !det2(g, v).is_zero() {
                return false;
            }
            // v = lambda g with lambda >= 0
            let dot = &g.x1 * &v.x1 + &g.x2 * &v.x2;
            !dot.is_negative()
        }
        2 => {
            let (g1, g2) = (gens[0], gens[1]);
            let d = det2(g1, g2);
            assert!(!d.is_zero(), "degenerate two-dimensional cone");
            let l1 = det2(v, g2);
            let l2 = det2(g1, v);
            // v = (l1/d) g1 + (l2/d) g2
            if d.is_positive() {
                !l1.is_negative() && !l2.is_negative()
            } else {
                !l1.is_positive() && !l2.is_positive()
            }
        }
        _ => unreachable!("rank-two fan"),
    }
}

/// `v` lies in the cone spanned by `a` and `b`.
pub fn in_span(a: &LatticeVector, b: &LatticeVector, v: &LatticeVector) -> bool {
    cone_contains(&[a, b], v)
}

/// The relative interior of the cone meets the valuation cone. The
/// valuation cone is a half-plane cut out by a linear form, so it is
/// enough to inspect the form's sign on the generators.
fn relint_meets_valuation(m: &Int, gens: &[&LatticeVector]) -> bool {
    match gens.len() {
        0 => true,
        1 => !valuation_form(m, gens[0]).is_positive(),
        2 => {
            let f1 = valuation_form(m, gens[0]);
            let f2 = valuation_form(m, gens[1]);
            f1.is_negative() || f2.is_negative() || (f1.is_zero() && f2.is_zero())
        }
        _ => unreachable!(),
    }
}

/// The four base rays of the embedding fans.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BaseRays {
    pub d: LatticeVector,
    pub s_minus: LatticeVector,
    pub s_plus: LatticeVector,
    pub d_prime: LatticeVector,
}

pub fn base_rays(pair: &PopovPair, inv: &DerivedInvariants) -> BaseRays {
    BaseRays {
        d: LatticeVector::new(-inv.b.clone(), &inv.a * &pair.p),
        s_minus: LatticeVector::new(Int::one(), Int::zero()),
        s_plus: LatticeVector::new(Int::one(), pair.m.clone()),
        d_prime: LatticeVector::new(Int::zero(), Int::one()),
    }
}

/// Builds the fan of a simple embedding: the face closure of one maximal
/// colored cone. Ray faces that miss the valuation cone are not part of
/// the fan; colors restrict to the faces their image lies on.
fn simple_fan(
    m: &Int,
    gens: [(&LatticeVector, &str); 2],
    colors: &[Color],
    closed_label: &str,
) -> ColoredFan {
    let rays: Vec<LatticeVector> = vec![gens[0].0.clone(), gens[1].0.clone()];
    let full_colors: BTreeSet<Color> = colors.iter().copied().collect();
    let mut cones = vec![ColoredCone {
        rays: vec![],
        colors: BTreeSet::new(),
        label: "open".to_string(),
    }];
    for (idx, (g, label)) in gens.iter().enumerate() {
        if relint_meets_valuation(m, &[g]) {
            let face_colors = full_colors
                .iter()
                .copied()
                .filter(|c| cone_contains(&[g], &color_ray(*c, m)))
                .collect();
            cones.push(ColoredCone {
                rays: vec![idx],
                colors: face_colors,
                label: (*label).to_string(),
            });
        }
    }
    cones.push(ColoredCone {
        rays: vec![0, 1],
        colors: full_colors,
        label: closed_label.to_string(),
    });
    ColoredFan { rays, cones }
}

/// The fans of the four embeddings sharing the open orbit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmbeddingFans {
    pub e: ColoredFan,
    pub e_minus: ColoredFan,
    pub e_plus: ColoredFan,
    pub e_prime: ColoredFan,
}

pub fn embedding_fans(pair: &PopovPair, inv: &DerivedInvariants) -> EmbeddingFans {
    let base = base_rays(pair, inv);
    let m = &pair.m;
    EmbeddingFans {
        e: simple_fan(
            m,
            [(&base.d, "D"), (&base.s_minus, "S-")],
            &[Color::SPlus, Color::SMinus],
            "closed",
        ),
        e_minus: simple_fan(
            m,
            [(&base.d, "D"), (&base.s_plus, "S+")],
            &[Color::SPlus],
            "closed",
        ),
        e_plus: simple_fan(
            m,
            [(&base.d, "D"), (&base.s_minus, "S-")],
            &[Color::SMinus],
            "closed",
        ),
        e_prime: simple_fan(m, [(&base.d, "D"), (&base.d_prime, "D'")], &[], "closed"),
    }
}

/// The fan of the minimal resolution: rays `rho_i = (-P_i, l_i)` for
/// `0 <= i <= r+1` and colorless maximal cones on consecutive rays.
/// `rho_0` is the exceptional ray and `rho_{r+1}` the strict transform of
/// the boundary divisor.
pub fn resolution_fan(
    pair: &PopovPair,
    inv: &DerivedInvariants,
    hj: &HjExpansion,
    seq: &SequenceTable,
) -> Result<ColoredFan, Error> {
    if hj.b != inv.b || hj.t != inv.t {
        return Err(Error::InvalidArgument(
            "expansion does not match the derived invariants".into(),
        ));
    }
    if seq.last_index() != hj.depth() + 1 {
        return Err(Error::InvalidArgument(
            "sequence table does not match the expansion".into(),
        ));
    }
    let r = hj.depth();
    let mut rays = Vec::with_capacity(r + 2);
    for i in 0..=r + 1 {
        let ray = LatticeVector::new(-hj.pconv[i].clone(), seq.l[i].clone());
        if !ray.is_primitive() {
            return Err(Error::ConsistencyFailure(format!(
                "resolution ray {ray} is not primitive"
            )));
        }
        rays.push(ray);
    }
    let base = base_rays(pair, inv);
    if rays[0] != base.d_prime || rays[r + 1] != base.d {
        return Err(Error::ConsistencyFailure(
            "resolution fan endpoints do not match the base rays".into(),
        ));
    }

    let mut cones = vec![ColoredCone {
        rays: vec![],
        colors: BTreeSet::new(),
        label: "open".to_string(),
    }];
    for i in 0..=r + 1 {
        let label = if i == 0 {
            "D'".to_string()
        } else if i == r + 1 {
            "D".to_string()
        } else {
            format!("ray:{i}")
        };
        cones.push(ColoredCone {
            rays: vec![i],
            colors: BTreeSet::new(),
            label,
        });
    }
    for i in 1..=r + 1 {
        cones.push(ColoredCone {
            rays: vec![i - 1, i],
            colors: BTreeSet::new(),
            label: format!("Y:{i}"),
        });
    }
    let fan = ColoredFan { rays, cones };
    validate_fan(&pair.m, &fan).map_err(Error::ConsistencyFailure)?;
    Ok(fan)
}

/// Structural checks on a fan: the zero cone is present, every cone's
/// relative interior meets the valuation cone, two-dimensional cones are
/// strictly convex, and no two distinct cones share a valuation point in
/// their relative interiors.
pub fn validate_fan(m: &Int, fan: &ColoredFan) -> Result<(), String> {
    if !fan.cones.iter().any(|c| c.rays.is_empty()) {
        return Err("zero cone missing".into());
    }
    for cone in &fan.cones {
        let gens: Vec<&LatticeVector> = cone.rays.iter().map(|&i| fan.ray(i)).collect();
        if gens.len() == 2 && det2(gens[0], gens[1]).is_zero() {
            return Err(format!("cone {} is not strictly convex", cone.label));
        }
        if !relint_meets_valuation(m, &gens) {
            return Err(format!(
                "cone {} has no valuation point in its interior",
                cone.label
            ));
        }
    }
    for (i, a) in fan.cones.iter().enumerate() {
        for b in fan.cones.iter().skip(i + 1) {
            if relints_share_valuation_point(m, fan, a, b) {
                return Err(format!(
                    "cones {} and {} overlap in the valuation cone",
                    a.label, b.label
                ));
            }
        }
    }
    Ok(())
}

fn ray_strictly_inside(g: &LatticeVector, a: &LatticeVector, b: &LatticeVector) -> bool {
    // sector (a, b) oriented positively
    debug_assert!(det2(a, b).is_positive());
    det2(a, g).is_positive() && det2(g, b).is_positive()
}

fn relints_share_valuation_point(
    m: &Int,
    fan: &ColoredFan,
    ca: &ColoredCone,
    cb: &ColoredCone,
) -> bool {
    let ga: Vec<&LatticeVector> = ca.rays.iter().map(|&i| fan.ray(i)).collect();
    let gb: Vec<&LatticeVector> = cb.rays.iter().map(|&i| fan.ray(i)).collect();
    let (ga, gb) = if ga.len() <= gb.len() { (ga, gb) } else { (gb, ga) };
    match (ga.len(), gb.len()) {
        (0, 0) => true,
        (0, _) => false,
        (1, 1) => {
            let parallel = det2(ga[0], gb[0]).is_zero()
                && (&ga[0].x1 * &gb[0].x1 + &ga[0].x2 * &gb[0].x2).is_positive();
            parallel && !valuation_form(m, ga[0]).is_positive()
        }
        (1, 2) => {
            let (a, b) = orient(gb[0], gb[1]);
            ray_strictly_inside(ga[0], a, b) && !valuation_form(m, ga[0]).is_positive()
        }
        (2, 2) => {
            let (a1, b1) = orient(ga[0], ga[1]);
            let (a2, b2) = orient(gb[0], gb[1]);
            // start of the intersection: the later start; end: the earlier end
            let s = if cone_contains(&[a1, b1], a2) { a2 } else { a1 };
            let e = if cone_contains(&[a1, b1], b2) { b2 } else { b1 };
            if !cone_contains(&[a2, b2], s) || !cone_contains(&[a2, b2], e) {
                return false;
            }
            if !det2(s, e).is_positive() {
                return false;
            }
            let fs = valuation_form(m, s);
            let fe = valuation_form(m, e);
            fs.is_negative() || fe.is_negative() || (fs.is_zero() && fe.is_zero())
        }
        _ => unreachable!(),
    }
}

fn orient<'a>(
    a: &'a LatticeVector,
    b: &'a LatticeVector,
) -> (&'a LatticeVector, &'a LatticeVector) {
    if det2(a, b).is_positive() {
        (a, b)
    } else {
        (b, a)
    }
}

/// Orbits of a face-closed fan, ordered by inclusion of closures.
/// `closure[k]` lists the orbits properly contained in the closure of
/// orbit `k`; the open orbit sits on top and the orbits of maximal cones
/// are the minimal elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitPoset {
    pub orbits: Vec<String>,
    pub closure: Vec<Vec<usize>>,
}

impl OrbitPoset {
    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.orbits.len())
            .filter(|&k| self.closure[k].is_empty())
            .collect()
    }
}

pub fn orbit_poset(fan: &ColoredFan) -> OrbitPoset {
    let orbits: Vec<String> = fan.cones.iter().map(|c| c.label.clone()).collect();
    let closure = (0..fan.cones.len())
        .map(|ia| {
            let a = &fan.cones[ia];
            (0..fan.cones.len())
                .filter(|&ib| {
                    let b = &fan.cones[ib];
                    ib != ia
                        && a.rays.len() < b.rays.len()
                        && a.rays.iter().all(|r| b.rays.contains(r))
                })
                .collect()
        })
        .collect();
    OrbitPoset { orbits, closure }
}

/// An eigenfunction `Z^e W^l`; it lies on the lattice when `m | (e - l)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EigenMonomial {
    pub e: Int,
    pub l: Int,
}

/// The valuation of `Z^e W^l` along the divisor of `ray`. In the `(u1, u2)`
/// basis the eigenfunction has lattice coordinates `(l, (e - l)/m)`.
pub fn eigen_valuation(m: &Int, ray: &LatticeVector, mon: &EigenMonomial) -> Result<Int, Error> {
    let diff = &mon.e - &mon.l;
    if !(&diff % m).is_zero() {
        return Err(Error::InvalidArgument(format!(
            "Z^{} W^{} is not an eigenfunction modulo {m}",
            mon.e, mon.l
        )));
    }
    Ok(&ray.x1 * &mon.l + &ray.x2 * (diff / m))
}

/// `v_{D_j}(sigma_i)`, which equals `P_j Q_i - P_i Q_j`.
pub fn valuation_pairing(
    pair: &PopovPair,
    hj: &HjExpansion,
    seq: &SequenceTable,
    j: usize,
    i: usize,
) -> Result<Int, Error> {
    let r = hj.depth();
    if i > r + 1 || j > r + 1 {
        return Err(Error::IndexOutOfRange(format!(
            "ray indices must lie in 0..={}, got i = {i}, j = {j}",
            r + 1
        )));
    }
    let ray = LatticeVector::new(-hj.pconv[j].clone(), seq.l[j].clone());
    let mon = EigenMonomial {
        e: seq.e[i].clone(),
        l: seq.l[i].clone(),
    };
    eigen_valuation(&pair.m, &ray, &mon)
}

/// Report of the global-generation test for the distinguished divisor:
/// condition (a) compares valuations of the partial products `f_i` along
/// the interior divisors, condition (b) requires the partial exponent
/// sums to stay nonnegative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GlobalGeneration {
    pub condition_a: bool,
    pub condition_b: bool,
    pub failures: Vec<String>,
}

impl GlobalGeneration {
    pub fn ok(&self) -> bool {
        self.condition_a && self.condition_b
    }
}

pub fn check_global_generation(
    pair: &PopovPair,
    hj: &HjExpansion,
    seq: &SequenceTable,
) -> Result<GlobalGeneration, Error> {
    let r = hj.depth();
    // v_{D_j}(f_i) = sum of pairings over the factors sigma_0..sigma_i
    let mut val = vec![vec![Int::zero(); r + 2]; r + 2];
    for j in 0..=r + 1 {
        let mut acc = Int::zero();
        for i in 0..=r + 1 {
            acc += valuation_pairing(pair, hj, seq, j, i)?;
            val[j][i] = acc.clone();
        }
    }
    let mut failures = Vec::new();
    let mut condition_a = true;
    for i in 1..=r + 1 {
        for j in 1..=r + 1 {
            // v_{D_j}(f_{i-1}^{-1}) <= v_{D_j}(f_{j-1}^{-1}) and the same at D_{j-1}
            if -&val[j][i - 1] > -&val[j][j - 1] {
                condition_a = false;
                failures.push(format!("(a) fails at divisor {j}, section {i}"));
            }
            if -&val[j - 1][i - 1] > -&val[j - 1][j - 1] {
                condition_a = false;
                failures.push(format!("(a) fails at divisor {}, section {i}", j - 1));
            }
        }
    }
    let mut condition_b = true;
    let mut esum = Int::zero();
    let mut lsum = Int::zero();
    for i in 1..=r + 1 {
        esum += &seq.e[i - 1];
        lsum += &seq.l[i - 1];
        if esum.is_negative() || lsum.is_negative() {
            condition_b = false;
            failures.push(format!("(b) fails at section {i}"));
        }
    }
    Ok(GlobalGeneration {
        condition_a,
        condition_b,
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{hj_expand, int};
    use crate::pair::{derive_invariants, eln_sequences, PopovPair};

    struct Setup {
        pair: PopovPair,
        inv: DerivedInvariants,
        hj: HjExpansion,
        seq: SequenceTable,
    }

    fn setup(p: i64, q: i64, m: i64) -> Setup {
        let pair = PopovPair::new(p, q, m).unwrap();
        let inv = derive_invariants(&pair).unwrap();
        let hj = hj_expand(&inv.b, &inv.t).unwrap();
        let seq = eln_sequences(&inv, &hj, &pair).unwrap();
        Setup { pair, inv, hj, seq }
    }

    fn vec2(x1: i64, x2: i64) -> LatticeVector {
        LatticeVector::new(int(x1), int(x2))
    }

    #[test]
    fn base_rays_examples() {
        let s = setup(1, 4, 2);
        let base = base_rays(&s.pair, &s.inv);
        assert_eq!(base.d, vec2(-3, 2));
        assert_eq!(base.s_minus, vec2(1, 0));
        assert_eq!(base.s_plus, vec2(1, 2));
        assert_eq!(base.d_prime, vec2(0, 1));

        let s = setup(1, 2, 1);
        assert_eq!(base_rays(&s.pair, &s.inv).d, vec2(-1, 1));
    }

    #[test]
    fn embedding_fan_colors_and_faces() {
        let s = setup(1, 4, 2);
        let fans = embedding_fans(&s.pair, &s.inv);
        let full = fans.e.maximal_cones().next().unwrap();
        assert_eq!(
            full.colors,
            [Color::SPlus, Color::SMinus].into_iter().collect()
        );
        assert_eq!(
            fans.e_minus.maximal_cones().next().unwrap().colors,
            [Color::SPlus].into_iter().collect()
        );
        assert_eq!(
            fans.e_plus.maximal_cones().next().unwrap().colors,
            [Color::SMinus].into_iter().collect()
        );
        let prime = fans.e_prime.maximal_cones().next().unwrap();
        assert!(prime.colors.is_empty());
        assert_eq!(fans.e_prime.rays, vec![vec2(-3, 2), vec2(0, 1)]);
        for fan in [&fans.e, &fans.e_minus, &fans.e_plus, &fans.e_prime] {
            assert!(fan.cones.iter().any(|c| c.rays.is_empty()));
            assert!(validate_fan(&s.pair.m, fan).is_ok());
        }
        // the boundary ray survives as a face, the colored rays do not
        assert_eq!(fans.e.cones.len(), 3);
        assert_eq!(fans.e_prime.cones.len(), 4);
    }

    #[test]
    fn resolution_fan_1_4_2() {
        let s = setup(1, 4, 2);
        let fan = resolution_fan(&s.pair, &s.inv, &s.hj, &s.seq).unwrap();
        assert_eq!(fan.rays, vec![vec2(0, 1), vec2(-1, 1), vec2(-3, 2)]);
        assert_eq!(fan.maximal_cones().count(), 2);
    }

    #[test]
    fn resolution_fan_1_3_3() {
        let s = setup(1, 3, 3);
        let fan = resolution_fan(&s.pair, &s.inv, &s.hj, &s.seq).unwrap();
        assert_eq!(fan.rays, vec![vec2(0, 1), vec2(-1, 2), vec2(-2, 3)]);
    }

    #[test]
    fn resolution_fan_endpoints_and_unimodularity() {
        for (p, q, m) in [(1, 4, 2), (1, 3, 3), (1, 2, 1), (2, 7, 4), (3, 5, 6)] {
            let s = setup(p, q, m);
            let base = base_rays(&s.pair, &s.inv);
            let fan = resolution_fan(&s.pair, &s.inv, &s.hj, &s.seq).unwrap();
            assert_eq!(fan.rays[0], base.d_prime);
            assert_eq!(*fan.rays.last().unwrap(), base.d);
            for cone in fan.maximal_cones() {
                let d = det2(fan.ray(cone.rays[0]), fan.ray(cone.rays[1]));
                assert!(d.is_one() || (-&d).is_one());
            }
            assert_eq!(det2(&base.d_prime, &base.d), s.inv.b);
        }
    }

    #[test]
    fn orbit_poset_resolution_1_4_2() {
        let s = setup(1, 4, 2);
        let fan = resolution_fan(&s.pair, &s.inv, &s.hj, &s.seq).unwrap();
        let poset = orbit_poset(&fan);
        assert_eq!(poset.orbits.len(), 6);
        let minimal: Vec<&str> = poset
            .minimal_elements()
            .iter()
            .map(|&k| poset.orbits[k].as_str())
            .collect();
        assert_eq!(minimal, vec!["Y:1", "Y:2"]);
        // the open orbit dominates everything
        let open = poset.orbits.iter().position(|s| s == "open").unwrap();
        assert_eq!(poset.closure[open].len(), 5);
    }

    #[test]
    fn orbit_poset_zero_cone_alone() {
        let fan = ColoredFan {
            rays: vec![],
            cones: vec![ColoredCone {
                rays: vec![],
                colors: BTreeSet::new(),
                label: "open".into(),
            }],
        };
        let poset = orbit_poset(&fan);
        assert_eq!(poset.orbits, vec!["open"]);
        assert!(poset.closure[0].is_empty());
    }

    #[test]
    fn pairing_values() {
        let s = setup(1, 4, 2);
        // adjacency values and the explicit (j, i) = (0, 2) case
        for j in 0..=1usize {
            assert_eq!(
                valuation_pairing(&s.pair, &s.hj, &s.seq, j, j + 1).unwrap(),
                int(1)
            );
            assert_eq!(valuation_pairing(&s.pair, &s.hj, &s.seq, j, j).unwrap(), int(0));
        }
        assert_eq!(valuation_pairing(&s.pair, &s.hj, &s.seq, 0, 2).unwrap(), int(3));
        assert!(valuation_pairing(&s.pair, &s.hj, &s.seq, 0, 3).is_err());
    }

    #[test]
    fn pairing_sign_pattern() {
        for (p, q, m) in [(1, 4, 2), (1, 3, 3), (2, 7, 4), (3, 5, 6)] {
            let s = setup(p, q, m);
            let top = s.hj.depth() + 1;
            for j in 0..=top {
                for i in 0..=top {
                    let v = valuation_pairing(&s.pair, &s.hj, &s.seq, j, i).unwrap();
                    match i.cmp(&j) {
                        std::cmp::Ordering::Greater => assert!(v.is_positive()),
                        std::cmp::Ordering::Equal => assert!(v.is_zero()),
                        std::cmp::Ordering::Less => assert!(v.is_negative()),
                    }
                }
            }
        }
    }

    #[test]
    fn rays_lie_in_valuation_cone() {
        let s = setup(1, 4, 2);
        let base = base_rays(&s.pair, &s.inv);
        let fan = resolution_fan(&s.pair, &s.inv, &s.hj, &s.seq).unwrap();
        for ray in &fan.rays {
            assert!(in_valuation_cone(&s.pair.m, ray));
        }
        assert!(!in_valuation_cone(&s.pair.m, &base.s_plus));
        assert!(!in_valuation_cone(&s.pair.m, &base.s_minus));
    }

    #[test]
    fn global_generation_examples() {
        for (p, q, m) in [(1, 4, 2), (1, 3, 3)] {
            let s = setup(p, q, m);
            let gg = check_global_generation(&s.pair, &s.hj, &s.seq).unwrap();
            assert!(gg.ok(), "{:?}", gg.failures);
        }
    }
}
