//! Simplicial fans in `N = Z^E / <Σ e_i>`, coordinates taken in the basis
//! `e_1, .., e_{n-1}` (so `e_0 = -(e_1 + .. + e_{n-1})`).

use std::collections::{HashMap, HashSet};

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::filter::Filter;
use crate::linalg::{elementary_divisors, gcd_i64, rat, QMatrix, Rational};
use crate::lp::{LinearProgram, LpOutcome, Relation};
use crate::matroid::Matroid;
use crate::par::Exec;
use crate::ring::Presentation;
use crate::subset::Subset;

/// `e_S` in the chosen coordinates.
pub fn subset_vector(n: usize, s: Subset) -> Vec<i64> {
    let mut v = vec![0i64; n.saturating_sub(1)];
    for i in s.iter() {
        if i == 0 {
            v.iter_mut().for_each(|x| *x -= 1);
        } else {
            v[i - 1] += 1;
        }
    }
    v
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub enum RayLabel {
    Element(usize),
    Flat(Subset),
    Other(String),
}

impl std::fmt::Display for RayLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RayLabel::Element(i) => write!(f, "t{i}"),
            RayLabel::Flat(p) => write!(f, "t{p}"),
            RayLabel::Other(s) => f.write_str(s),
        }
    }
}

/// A fan given by its cones, each a sorted list of ray indices.
#[derive(Debug, Clone)]
pub struct Fan {
    ambient: usize,
    rays: Vec<Vec<i64>>,
    labels: Vec<RayLabel>,
    cones: Vec<Vec<usize>>,
    index: HashSet<Vec<usize>>,
}

impl Fan {
    /// Takes the cone list as given; see [`Fan::from_maximal`] for face closure.
    pub fn new(
        ambient: usize,
        rays: Vec<Vec<i64>>,
        labels: Vec<RayLabel>,
        cones: Vec<Vec<usize>>,
    ) -> Fan {
        assert_eq!(rays.len(), labels.len());
        assert!(rays.iter().all(|r| r.len() == ambient));
        let mut cones: Vec<Vec<usize>> = cones
            .into_iter()
            .map(|mut c| {
                c.sort_unstable();
                c.dedup();
                c
            })
            .collect();
        cones.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        cones.dedup();
        let index = cones.iter().cloned().collect();
        Fan {
            ambient,
            rays,
            labels,
            cones,
            index,
        }
    }

    /// Adds every face of every listed cone.
    pub fn from_maximal(
        ambient: usize,
        rays: Vec<Vec<i64>>,
        labels: Vec<RayLabel>,
        maximal: Vec<Vec<usize>>,
    ) -> Fan {
        let mut all = HashSet::new();
        for c in &maximal {
            let k = c.len();
            for mask in 0u64..1 << k {
                all.insert(Subset(mask).iter().map(|i| c[i]).collect::<Vec<_>>());
            }
        }
        if maximal.is_empty() {
            all.insert(Vec::new());
        }
        Fan::new(ambient, rays, labels, all.into_iter().collect())
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn rays(&self) -> &[Vec<i64>] {
        &self.rays
    }

    pub fn labels(&self) -> &[RayLabel] {
        &self.labels
    }

    pub fn ray_of(&self, label: &RayLabel) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// All cones, sorted by dimension then lexicographically.
    pub fn cones(&self) -> &[Vec<usize>] {
        &self.cones
    }

    pub fn contains_cone(&self, cone: &[usize]) -> bool {
        let mut c = cone.to_vec();
        c.sort_unstable();
        self.index.contains(&c)
    }

    pub fn maximal_cones(&self) -> Vec<Vec<usize>> {
        self.cones
            .iter()
            .filter(|c| {
                !(0..self.rays.len())
                    .any(|v| c.binary_search(&v).is_err() && self.index.contains(&with(c, v)))
            })
            .cloned()
            .collect()
    }

    /// Copy without one cone (and nothing else), for negative controls.
    pub fn without_cone(&self, cone: &[usize]) -> Fan {
        let mut c = cone.to_vec();
        c.sort_unstable();
        let cones = self.cones.iter().filter(|x| **x != c).cloned().collect();
        Fan::new(self.ambient, self.rays.clone(), self.labels.clone(), cones)
    }

    fn matrix(&self, cone: &[usize]) -> QMatrix {
        let cols: Vec<Vec<Rational>> = cone
            .iter()
            .map(|&v| self.rays[v].iter().map(|&x| rat(x)).collect())
            .collect();
        QMatrix::from_columns(&cols, self.ambient)
    }

    fn independent(&self, rays: &[usize]) -> bool {
        rays.is_empty() || self.matrix(rays).rank() == rays.len()
    }

    /// One line per cone, rays as bracketed integer vectors; `-` is the zero cone.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for c in &self.cones {
            if c.is_empty() {
                out.push('-');
            } else {
                let parts: Vec<String> = c
                    .iter()
                    .map(|&v| {
                        let xs: Vec<String> = self.rays[v].iter().map(i64::to_string).collect();
                        format!("[{}]", xs.join(","))
                    })
                    .collect();
                out.push_str(&parts.join(" "));
            }
            out.push('\n');
        }
        out
    }
}

fn with(c: &[usize], v: usize) -> Vec<usize> {
    let mut out = c.to_vec();
    let pos = out.partition_point(|&x| x < v);
    out.insert(pos, v);
    out
}

/// Chains `P_1 ⊂ .. ⊂ P_d` of the given flats, listed bottom-up.
pub(crate) fn chains(flats: &[Subset]) -> Vec<Vec<Subset>> {
    let mut sorted = flats.to_vec();
    sorted.sort_by_key(|p| (p.len(), p.bits()));
    let mut out = vec![Vec::new()];
    let mut frontier: Vec<Vec<Subset>> = vec![Vec::new()];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for ch in &frontier {
            for &p in &sorted {
                if ch.last().is_none_or(|&q| q.is_proper_subset_of(p)) {
                    let mut c = ch.clone();
                    c.push(p);
                    next.push(c);
                }
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

fn filtered(m: &Matroid, filter: &Filter, reduced: bool) -> Result<Fan> {
    if m.has_loops() {
        return Err(Error::HasLoops);
    }
    let n = m.ground_size();
    let e = m.ground();
    let mut rays = Vec::new();
    let mut labels = Vec::new();
    let mut elem_ray = vec![usize::MAX; n];
    for i in 0..n {
        if !filter.contains(m.closure(Subset::singleton(i))) {
            elem_ray[i] = rays.len();
            rays.push(subset_vector(n, Subset::singleton(i)));
            labels.push(RayLabel::Element(i));
        }
    }
    let proper: Vec<Subset> = filter.flats().iter().copied().filter(|&p| p != e).collect();
    let mut flat_ray = HashMap::new();
    for &p in &proper {
        flat_ray.insert(p, rays.len());
        rays.push(subset_vector(n, p));
        labels.push(RayLabel::Flat(p));
    }
    let mut cones = Vec::new();
    for d in chains(&proper) {
        let inf = d.first().copied().unwrap_or(e);
        let rk_inf = m.rank_of(inf);
        for i in inf.subsets() {
            if i == inf || filter.contains(m.closure(i)) {
                continue;
            }
            if reduced && i.len() >= rk_inf {
                continue;
            }
            let mut cone: Vec<usize> = i.iter().map(|x| elem_ray[x]).collect();
            cone.extend(d.iter().map(|p| flat_ray[p]));
            cones.push(cone);
        }
    }
    Ok(Fan::new(n.saturating_sub(1), rays, labels, cones))
}

/// `Σ_M`: rays `e_P` for proper nonempty flats, cones from flags.
pub fn bergman_fan(m: &Matroid) -> Result<Fan> {
    filtered(m, &Filter::full(m), false)
}

pub fn bergman_fan_filtered(m: &Matroid, filter: &Filter) -> Result<Fan> {
    filtered(m, filter, false)
}

/// Only cones `σ_{I,D}` with `|I| < rk(inf D)`.
pub fn reduced_bergman_fan(m: &Matroid, filter: &Filter) -> Result<Fan> {
    filtered(m, filter, true)
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct FanValidity {
    pub nonempty: bool,
    pub primitive: bool,
    pub simplicial: bool,
    pub face_closed: bool,
    pub intersections: bool,
    pub problems: Vec<String>,
}

impl FanValidity {
    pub fn is_valid(&self) -> bool {
        self.nonempty && self.primitive && self.simplicial && self.face_closed && self.intersections
    }
}

fn is_primitive(v: &[i64]) -> bool {
    v.iter().fold(0, |g, &x| gcd_i64(g, x)) == 1
}

/// Exact checks that `f` is a simplicial fan: every cone is spanned by
/// independent primitive rays, faces of cones are cones, and any two
/// maximal cones meet in their common face.
pub fn validate_fan(f: &Fan, exec: Exec) -> FanValidity {
    let mut v = FanValidity {
        nonempty: !f.cones.is_empty(),
        ..Default::default()
    };
    if !v.nonempty {
        v.problems.push("no cones".into());
    }
    let bad_rays: Vec<usize> = (0..f.rays.len())
        .filter(|&i| !is_primitive(&f.rays[i]))
        .collect();
    v.primitive = bad_rays.is_empty();
    for i in bad_rays {
        v.problems
            .push(format!("ray {} is not primitive", f.labels[i]));
    }
    let maximal = f.maximal_cones();
    let dependent: Vec<&Vec<usize>> = maximal.iter().filter(|c| !f.independent(c)).collect();
    v.simplicial = dependent.is_empty();
    for c in dependent {
        v.problems.push(format!("cone {c:?} has dependent rays"));
    }
    let missing = f.cones.iter().find_map(|c| {
        (0..c.len()).find_map(|k| {
            let mut face = c.clone();
            face.remove(k);
            (!f.index.contains(&face)).then(|| (c.clone(), face))
        })
    });
    v.face_closed = missing.is_none();
    if let Some((c, face)) = missing {
        v.problems
            .push(format!("face {face:?} of cone {c:?} is missing"));
    }
    if v.simplicial {
        let pairs: Vec<(usize, usize)> = (0..maximal.len())
            .flat_map(|a| (a + 1..maximal.len()).map(move |b| (a, b)))
            .collect();
        let overlap = exec.find_map_first(&pairs, |&(a, b)| {
            overlap_beyond_common_face(f, &maximal[a], &maximal[b]).then_some((a, b))
        });
        v.intersections = overlap.is_none();
        if let Some((a, b)) = overlap {
            v.problems.push(format!(
                "cones {:?} and {:?} meet outside their common face",
                maximal[a], maximal[b]
            ));
        }
    }
    v
}

/// Whether `σ_a ∩ σ_b` is larger than the cone on their common rays.
fn overlap_beyond_common_face(f: &Fan, a: &[usize], b: &[usize]) -> bool {
    let union: Vec<usize> = {
        let mut u: Vec<usize> = a.iter().chain(b).copied().collect();
        u.sort_unstable();
        u.dedup();
        u
    };
    if f.independent(&union) {
        return false;
    }
    let own: Vec<usize> = a.iter().copied().filter(|x| !b.contains(x)).collect();
    // variables: λ over rays of a, then μ over rays of b
    let nv = a.len() + b.len();
    let mut lp = LinearProgram::new(nv);
    lp.nonnegative = vec![true; nv];
    for (k, &r) in a.iter().enumerate() {
        if own.contains(&r) {
            lp.objective[k] = Rational::one();
        }
    }
    for d in 0..f.ambient {
        let mut row = vec![Rational::zero(); nv];
        for (k, &r) in a.iter().enumerate() {
            row[k] = rat(f.rays[r][d]);
        }
        for (k, &r) in b.iter().enumerate() {
            row[a.len() + k] = rat(-f.rays[r][d]);
        }
        lp.add(row, Relation::Eq, Rational::zero());
    }
    lp.add(lp.objective.clone(), Relation::Le, Rational::one());
    matches!(lp.solve(), LpOutcome::Optimal { value, .. } if value.is_positive())
}

/// Each cone's rays extend to a basis of `N`.
pub fn is_unimodular(f: &Fan) -> bool {
    f.maximal_cones().iter().all(|c| {
        if c.is_empty() {
            return true;
        }
        let rows: Vec<Vec<i64>> = c.iter().map(|&v| f.rays[v].clone()).collect();
        let d = elementary_divisors(&rows);
        d.len() == c.len() && d.iter().all(|x| x.is_one())
    })
}

/// Every maximal cone has dimension `d`.
pub fn is_pure(f: &Fan, d: usize) -> bool {
    f.maximal_cones()
        .iter()
        .all(|c| c.len() == d && f.independent(c))
}

/// Closed star: cones `τ` such that `τ ∪ σ` is a cone.
pub fn star(f: &Fan, sigma: &[usize]) -> Result<Fan> {
    if !f.contains_cone(sigma) {
        return Err(Error::ConeNotInFan);
    }
    let cones = f
        .cones
        .iter()
        .filter(|t| {
            let mut u: Vec<usize> = t.iter().chain(sigma).copied().collect();
            u.sort_unstable();
            u.dedup();
            f.index.contains(&u)
        })
        .cloned()
        .collect();
    Ok(Fan::new(f.ambient, f.rays.clone(), f.labels.clone(), cones))
}

/// A piecewise-linear function, given by its values on the rays.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlFunction {
    pub values: Vec<Rational>,
}

impl PlFunction {
    pub fn zero(f: &Fan) -> Self {
        PlFunction {
            values: vec![Rational::zero(); f.rays.len()],
        }
    }

    /// 1 on one ray, 0 on the others.
    pub fn courant(f: &Fan, ray: usize) -> Self {
        let mut p = PlFunction::zero(f);
        p.values[ray] = Rational::one();
        p
    }

    /// Value `c(P)` on `e_P` and `c({i})` on `e_i`.
    pub fn from_subset_fn(f: &Fan, c: impl Fn(Subset) -> Rational) -> Self {
        PlFunction {
            values: f
                .labels
                .iter()
                .map(|l| match l {
                    RayLabel::Element(i) => c(Subset::singleton(*i)),
                    RayLabel::Flat(p) => c(*p),
                    RayLabel::Other(_) => Rational::zero(),
                })
                .collect(),
        }
    }
}

/// Largest `δ <= 1` such that some linear `m` agrees with `φ` on `σ` and
/// `m(v) + δ <= φ(v)` on the other rays of the star; `None` if no `m`
/// agrees with `φ` on `σ`.
pub fn convexity_margin(f: &Fan, phi: &PlFunction, sigma: &[usize]) -> Result<Option<Rational>> {
    if !f.contains_cone(sigma) {
        return Err(Error::ConeNotInFan);
    }
    let d = f.ambient;
    let out: Vec<usize> = (0..f.rays.len())
        .filter(|v| !sigma.contains(v))
        .filter(|&v| {
            let mut c = sigma.to_vec();
            c.push(v);
            f.contains_cone(&c)
        })
        .collect();
    let mut lp = LinearProgram::new(d + 1);
    lp.objective[d] = Rational::one();
    let ray_row = |v: usize| -> Vec<Rational> {
        let mut row: Vec<Rational> = f.rays[v].iter().map(|&x| rat(x)).collect();
        row.push(Rational::zero());
        row
    };
    for &u in sigma {
        lp.add(ray_row(u), Relation::Eq, phi.values[u].clone());
    }
    for &v in &out {
        let mut row = ray_row(v);
        row[d] = Rational::one();
        lp.add(row, Relation::Le, phi.values[v].clone());
    }
    let mut cap = vec![Rational::zero(); d + 1];
    cap[d] = Rational::one();
    lp.add(cap, Relation::Le, Rational::one());
    Ok(match lp.solve() {
        LpOutcome::Optimal { value, .. } => Some(value),
        LpOutcome::Infeasible => None,
        LpOutcome::Unbounded => unreachable!("margin is capped"),
    })
}

pub fn is_convex_at(f: &Fan, phi: &PlFunction, sigma: &[usize]) -> Result<bool> {
    Ok(convexity_margin(f, phi, sigma)?.is_some_and(|m| !m.is_negative()))
}

pub fn is_strictly_convex_at(f: &Fan, phi: &PlFunction, sigma: &[usize]) -> Result<bool> {
    Ok(convexity_margin(f, phi, sigma)?.is_some_and(|m| m.is_positive()))
}

/// Convex at every cone.
pub fn nef_check(f: &Fan, phi: &PlFunction, exec: Exec) -> bool {
    exec.all(&f.cones, |c| is_convex_at(f, phi, c).unwrap_or(false))
}

/// Strictly convex at every cone.
pub fn ample_check(f: &Fan, phi: &PlFunction, exec: Exec) -> bool {
    exec.all(&f.cones, |c| {
        is_strictly_convex_at(f, phi, c).unwrap_or(false)
    })
}

/// Generators `T_v` for the rays, the minimal non-faces, and one linear
/// relation `Σ_v <x_j, v> T_v` per coordinate of `N`.
pub fn fan_chow_presentation(f: &Fan) -> Result<Presentation> {
    if !is_unimodular(f) {
        return Err(Error::NotUnimodular);
    }
    let nr = f.rays.len();
    let mut nonfaces: Vec<Vec<usize>> = Vec::new();
    for c in &f.cones {
        let start = c.last().map_or(0, |&x| x + 1);
        for v in start..nr {
            let cand = with(c, v);
            if f.index.contains(&cand) {
                continue;
            }
            let minimal = (0..cand.len()).all(|k| {
                let mut face = cand.clone();
                face.remove(k);
                f.index.contains(&face)
            });
            if minimal {
                nonfaces.push(cand);
            }
        }
    }
    if !f.index.contains(&Vec::new()) {
        nonfaces.push(Vec::new());
    }
    let linear = (0..f.ambient)
        .map(|d| {
            (0..nr)
                .filter(|&v| f.rays[v][d] != 0)
                .map(|v| (v, f.rays[v][d]))
                .collect::<Vec<_>>()
        })
        .filter(|row| !row.is_empty())
        .collect();
    Ok(Presentation {
        names: f.labels.iter().map(|l| l.to_string()).collect(),
        nonfaces,
        linear,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat_frac;
    use crate::matroid::{boolean, fano, uniform};
    use crate::ring::GradedRing;

    #[test]
    fn coordinates() {
        assert_eq!(subset_vector(3, Subset::singleton(0)), vec![-1, -1]);
        assert_eq!(subset_vector(3, Subset::full(3)), vec![0, 0]);
        assert_eq!(
            subset_vector(4, Subset::from_elems([0, 2])),
            vec![-1, 0, -1]
        );
    }

    #[test]
    fn u23_fan() {
        let f = bergman_fan(&uniform(2, 3).unwrap()).unwrap();
        assert_eq!(f.rays().len(), 3);
        assert_eq!(f.maximal_cones().len(), 3);
        assert!(validate_fan(&f, Exec::Sequential).is_valid());
        assert!(is_unimodular(&f) && is_pure(&f, 1));
        let courant = PlFunction::courant(&f, 0);
        assert!(nef_check(&f, &courant, Exec::Sequential));
        assert!(nef_check(&f, &PlFunction::zero(&f), Exec::Sequential));
        assert!(!ample_check(&f, &PlFunction::zero(&f), Exec::Sequential));
        let p = fan_chow_presentation(&f).unwrap();
        assert_eq!(p.nonfaces.len(), 3);
        assert_eq!(p.linear.len(), 2);
        assert_eq!(GradedRing::build(&p, 2).unwrap().hilbert(), vec![1, 1, 0]);
    }

    #[test]
    fn fano_fan_counts() {
        let f = bergman_fan(&fano().unwrap()).unwrap();
        assert_eq!(f.maximal_cones().len(), 21);
        assert!(is_pure(&f, 2));
        let p = f.ray_of(&RayLabel::Flat(Subset::singleton(0))).unwrap();
        let s = star(&f, &[p]).unwrap();
        // the point lies on three lines
        assert_eq!(s.maximal_cones().len(), 3);
        assert_eq!(star(&f, &[]).unwrap().cones().len(), f.cones().len());
    }

    #[test]
    fn projective_fan_of_boolean2() {
        let m = boolean(2).unwrap();
        let f = bergman_fan_filtered(&m, &Filter::top(&m)).unwrap();
        assert_eq!(f.labels(), &[RayLabel::Element(0), RayLabel::Element(1)]);
        assert_eq!(f.cones().len(), 3);
        assert!(validate_fan(&f, Exec::Sequential).is_valid());
    }

    #[test]
    fn corrupted_fan_is_rejected() {
        let f = bergman_fan(&uniform(2, 3).unwrap()).unwrap();
        let broken = f.without_cone(&[]);
        let v = validate_fan(&broken, Exec::Sequential);
        assert!(!v.face_closed && !v.is_valid());
        // two rays with overlapping cones
        let g = Fan::new(
            1,
            vec![vec![1], vec![1]],
            vec![RayLabel::Other("a".into()), RayLabel::Other("b".into())],
            vec![vec![], vec![0], vec![1]],
        );
        assert!(!validate_fan(&g, Exec::Sequential).intersections);
    }

    #[test]
    fn ample_margin_is_exact() {
        let f = bergman_fan(&uniform(2, 3).unwrap()).unwrap();
        let phi = PlFunction::from_subset_fn(&f, |p| rat(p.len() as i64 * (3 - p.len() as i64)));
        assert!(ample_check(&f, &phi, Exec::Sequential));
        let m = convexity_margin(&f, &phi, &[0]).unwrap().unwrap();
        assert_eq!(m, rat(1));
        let tiny = PlFunction {
            values: vec![rat_frac(1, 1000), rat(0), rat(0)],
        };
        assert!(ample_check(&f, &tiny, Exec::Sequential));
    }

    #[test]
    fn zero_cone_fan_presents_z() {
        let f = Fan::new(0, vec![], vec![], vec![vec![]]);
        let p = fan_chow_presentation(&f).unwrap();
        assert_eq!(GradedRing::build(&p, 1).unwrap().hilbert(), vec![1, 0]);
    }
}
