//! Chow rings `A(M, P)` of a loop-free matroid with a filter of flats.
//!
//! Generators are `t_i` for elements with `<i>` outside the filter and
//! `t_P` for members `P != E` of the filter, in the same order as the rays
//! of the filtered Bergman fan.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fan::{self, bergman_fan_filtered, reduced_bergman_fan, PlFunction, RayLabel};
use crate::filter::Filter;
use crate::linalg::{rat, serialize_rational, signature, QMatrix, Rational, Signature};
use crate::matroid::Matroid;
use crate::par::Exec;
use crate::ring::{GradedRing, Presentation, RingElement};
use crate::subset::Subset;

/// Generator labels of `A(M, P)`.
pub fn chow_generators(m: &Matroid, filter: &Filter) -> Vec<RayLabel> {
    let e = m.ground();
    let mut out: Vec<RayLabel> = (0..m.ground_size())
        .filter(|&i| !filter.contains(m.closure(Subset::singleton(i))))
        .map(RayLabel::Element)
        .collect();
    out.extend(
        filter
            .flats()
            .iter()
            .filter(|&&p| p != e)
            .map(|&p| RayLabel::Flat(p)),
    );
    out
}

/// The relations R1 to R4 as a presentation over [`chow_generators`].
pub fn chow_presentation(m: &Matroid, filter: &Filter) -> Result<Presentation> {
    if m.has_loops() {
        return Err(Error::HasLoops);
    }
    let labels = chow_generators(m, filter);
    let index: HashMap<&RayLabel, usize> = labels.iter().enumerate().map(|(i, l)| (l, i)).collect();
    let elems: Vec<usize> = labels
        .iter()
        .filter_map(|l| match l {
            RayLabel::Element(i) => Some(*i),
            _ => None,
        })
        .collect();
    let flats: Vec<Subset> = labels
        .iter()
        .filter_map(|l| match l {
            RayLabel::Flat(p) => Some(*p),
            _ => None,
        })
        .collect();
    let flat_gen = |p: Subset| index[&RayLabel::Flat(p)];
    let elem_gen = |i: usize| index.get(&RayLabel::Element(i)).copied();

    let mut nonfaces = Vec::new();
    for (a, &p) in flats.iter().enumerate() {
        for &q in &flats[a + 1..] {
            if !p.is_subset_of(q) && !q.is_subset_of(p) {
                nonfaces.push(vec![flat_gen(p), flat_gen(q)]);
            }
        }
    }
    for &i in &elems {
        for &p in &flats {
            if !p.contains(i) {
                nonfaces.push(vec![elem_gen(i).unwrap(), flat_gen(p)]);
            }
        }
    }
    let gens = Subset::from_elems(elems.iter().copied());
    for s in gens.subsets() {
        if s.is_empty()
            || s.len() > m.rank()
            || !m.is_independent(s)
            || !filter.contains(m.closure(s))
        {
            continue;
        }
        if s.iter()
            .all(|x| !filter.contains(m.closure(s.without(x))) || s.len() == 1)
        {
            nonfaces.push(s.iter().map(|x| elem_gen(x).unwrap()).collect());
        }
    }

    let form = |i: usize| -> Vec<(usize, i64)> {
        let mut v: Vec<(usize, i64)> = elem_gen(i).map(|g| (g, 1)).into_iter().collect();
        v.extend(
            flats
                .iter()
                .filter(|p| p.contains(i))
                .map(|&p| (flat_gen(p), 1)),
        );
        v
    };
    let base = form(0);
    let mut linear = Vec::new();
    for j in 1..m.ground_size() {
        let mut acc: HashMap<usize, i64> = HashMap::new();
        for (g, c) in form(j) {
            *acc.entry(g).or_default() += c;
        }
        for &(g, c) in &base {
            *acc.entry(g).or_default() -= c;
        }
        let mut row: Vec<(usize, i64)> = acc.into_iter().filter(|&(_, c)| c != 0).collect();
        row.sort_unstable();
        if !row.is_empty() {
            linear.push(row);
        }
    }
    Ok(Presentation {
        names: labels.iter().map(ToString::to_string).collect(),
        nonfaces,
        linear,
    })
}

/// `A(M, P)` with its degree map.
#[derive(Debug, Clone)]
pub struct ChowRing {
    matroid: Matroid,
    filter: Filter,
    labels: Vec<RayLabel>,
    index: HashMap<RayLabel, usize>,
    presentation: Presentation,
    ring: GradedRing,
    top: usize,
    top_monomials: Vec<Vec<usize>>,
    top_coord: Option<Rational>,
}

impl ChowRing {
    /// Builds degrees `0..=r+1` where `r = rk(M) - 1`.
    pub fn new(m: &Matroid, filter: &Filter) -> Result<ChowRing> {
        if m.has_loops() {
            return Err(Error::HasLoops);
        }
        if m.rank() == 0 {
            return Err(Error::BadParameters(
                "rank 0 matroid has no Chow ring".into(),
            ));
        }
        let filter = Filter::new(m, filter.flats())?;
        let top = m.rank() - 1;
        let presentation = chow_presentation(m, &filter)?;
        let ring = GradedRing::build(&presentation, top + 1)?;
        let labels = chow_generators(m, &filter);
        let index: HashMap<RayLabel, usize> = labels
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, l)| (l, i))
            .collect();
        let reduced = reduced_bergman_fan(m, &filter)?;
        let top_monomials: Vec<Vec<usize>> = reduced
            .cones()
            .iter()
            .filter(|c| c.len() == top)
            .map(|c| c.iter().map(|&v| index[&reduced.labels()[v]]).collect())
            .collect();
        let top_coord = match (ring.dim(top), top_monomials.first()) {
            (1, Some(mon)) => Some(ring.monomial(mon).coords[0].clone()).filter(|c| !c.is_zero()),
            _ => None,
        };
        Ok(ChowRing {
            matroid: m.clone(),
            filter,
            labels,
            index,
            presentation,
            ring,
            top,
            top_monomials,
            top_coord,
        })
    }

    /// `A(M)`, the filter of all nonempty flats.
    pub fn full(m: &Matroid) -> Result<ChowRing> {
        ChowRing::new(m, &Filter::full(m))
    }

    pub fn matroid(&self) -> &Matroid {
        &self.matroid
    }

    pub fn filter(&self) -> &Filter {
        &self.filter
    }

    pub fn ring(&self) -> &GradedRing {
        &self.ring
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn labels(&self) -> &[RayLabel] {
        &self.labels
    }

    pub fn generator_of(&self, label: &RayLabel) -> Option<usize> {
        self.index.get(label).copied()
    }

    /// `r = rk(M) - 1`.
    pub fn top_degree(&self) -> usize {
        self.top
    }

    pub fn dim(&self, k: usize) -> usize {
        self.ring.dim(k)
    }

    /// Dimensions in degrees `0..=r`.
    pub fn hilbert(&self) -> Vec<usize> {
        (0..=self.top).map(|k| self.dim(k)).collect()
    }

    pub fn vanishes_above_top(&self) -> bool {
        self.dim(self.top + 1) == 0
    }

    /// `t_i`, zero when `<i>` lies in the filter.
    pub fn t_element(&self, i: usize) -> RingElement {
        match self.generator_of(&RayLabel::Element(i)) {
            Some(g) => self.ring.generator(g),
            None => self.ring.zero(1),
        }
    }

    /// `t_P` for `P` in the filter, zero for `P = E`.
    pub fn t_flat(&self, p: Subset) -> Result<RingElement> {
        if p == self.matroid.ground() {
            return Ok(self.ring.zero(1));
        }
        self.generator_of(&RayLabel::Flat(p))
            .map(|g| self.ring.generator(g))
            .ok_or_else(|| Error::InvalidFilter(format!("{p} is not in the filter")))
    }

    pub fn monomial(&self, labels: &[RayLabel]) -> Option<RingElement> {
        let gens: Option<Vec<usize>> = labels.iter().map(|l| self.generator_of(l)).collect();
        gens.map(|g| self.ring.monomial(&g))
    }

    /// Products of degree above `r` are zero.
    pub fn mul(&self, a: &RingElement, b: &RingElement) -> RingElement {
        if a.degree + b.degree > self.ring.max_degree() {
            return self.ring.zero(a.degree + b.degree);
        }
        self.ring.mul(a, b)
    }

    pub fn pow(&self, a: &RingElement, e: usize) -> RingElement {
        (0..e).fold(self.ring.one(), |acc, _| self.mul(&acc, a))
    }

    /// Whether every monomial of a top-dimensional cone has the same class.
    pub fn top_monomials_agree(&self) -> bool {
        let Some(first) = self.top_monomials.first() else {
            return false;
        };
        let x = self.ring.monomial(first);
        self.top_monomials
            .iter()
            .all(|m| self.ring.monomial(m) == x)
    }

    pub fn top_monomial_count(&self) -> usize {
        self.top_monomials.len()
    }

    /// The isomorphism `A^r -> Z` sending each top-cone monomial to 1.
    pub fn degree(&self, a: &RingElement) -> Result<Rational> {
        if a.degree != self.top {
            return Err(Error::NotTopDegree {
                expected: self.top,
                got: a.degree,
            });
        }
        let c = self
            .top_coord
            .as_ref()
            .ok_or_else(|| Error::BadParameters("top degree is not one-dimensional".into()))?;
        Ok(&a.coords[0] / c)
    }

    fn degree_int(&self, a: &RingElement) -> Result<BigInt> {
        let d = self.degree(a)?;
        if !d.is_integer() {
            return Err(Error::BadParameters(format!("non-integral degree {d}")));
        }
        Ok(d.to_integer())
    }

    /// `t_i + Σ_{P ∋ i} t_P`.
    pub fn alpha_at(&self, i: usize) -> RingElement {
        self.labels
            .iter()
            .enumerate()
            .filter(|(_, l)| match l {
                RayLabel::Element(j) => *j == i,
                RayLabel::Flat(p) => p.contains(i),
                RayLabel::Other(_) => false,
            })
            .fold(self.ring.zero(1), |acc, (g, _)| {
                acc.add(&self.ring.generator(g))
            })
    }

    /// `Σ_{P ∌ i} t_P`.
    pub fn beta_at(&self, i: usize) -> RingElement {
        self.labels
            .iter()
            .enumerate()
            .filter(|(_, l)| matches!(l, RayLabel::Flat(p) if !p.contains(i)))
            .fold(self.ring.zero(1), |acc, (g, _)| {
                acc.add(&self.ring.generator(g))
            })
    }

    pub fn alpha(&self) -> RingElement {
        self.alpha_at(0)
    }

    pub fn beta(&self) -> RingElement {
        self.beta_at(0)
    }

    /// `deg(α^{r-k} β^k)`.
    pub fn mu_via_chow(&self, k: usize) -> Result<i64> {
        if k > self.top {
            return Err(Error::BadParameters(format!(
                "k = {k} exceeds r = {}",
                self.top
            )));
        }
        let x = self.mul(
            &self.pow(&self.alpha(), self.top - k),
            &self.pow(&self.beta(), k),
        );
        self.degree_int(&x)?.to_i64().ok_or(Error::Overflow)
    }

    pub fn mu_vector_via_chow(&self) -> Result<Vec<i64>> {
        (0..=self.top).map(|k| self.mu_via_chow(k)).collect()
    }

    /// Gram matrix of `(a, b) -> deg(ab)` on `A^k x A^{r-k}`.
    pub fn poincare_pairing(&self, k: usize) -> Result<PairingReport> {
        if k > self.top {
            return Err(Error::BadParameters(format!(
                "k = {k} exceeds r = {}",
                self.top
            )));
        }
        let (dk, dl) = (self.dim(k), self.dim(self.top - k));
        let mut gram = QMatrix::zeros(dk, dl);
        for i in 0..dk {
            let a = self.ring.basis_element(k, i);
            for j in 0..dl {
                let b = self.ring.basis_element(self.top - k, j);
                gram[(i, j)] = self.degree(&self.mul(&a, &b))?;
            }
        }
        let determinant = (dk == dl).then(|| gram.determinant());
        let unimodular = determinant.as_ref().is_some_and(|d| d.abs().is_one());
        Ok(PairingReport {
            degree: k,
            integral_bases: self.ring.is_integral(k) && self.ring.is_integral(self.top - k),
            gram,
            determinant,
            unimodular,
        })
    }

    /// `ℓ = Σ_v φ(v) t_v` for the piecewise-linear function with values
    /// `c(P)` on `e_P` and `c({i})` on `e_i`, after certifying that it is
    /// strictly convex on the filtered Bergman fan.
    pub fn ample_from_submodular(
        &self,
        c: impl Fn(Subset) -> Rational,
        exec: Exec,
    ) -> Result<RingElement> {
        let f = bergman_fan_filtered(&self.matroid, &self.filter)?;
        let phi = PlFunction::from_subset_fn(&f, c);
        if !fan::ample_check(&f, &phi, exec) {
            return Err(Error::NotAmple("not strictly convex on every cone".into()));
        }
        let terms: Vec<(usize, Rational)> = f
            .labels()
            .iter()
            .zip(&phi.values)
            .map(|(l, v)| (self.index[l], v.clone()))
            .collect();
        Ok(self.ring.linear(&terms))
    }

    /// Matrix of `a -> ℓ^{r-2k} a` from `A^k` to `A^{r-k}` has full rank.
    pub fn hard_lefschetz_check(&self, ell: &RingElement, k: usize) -> Result<LefschetzReport> {
        self.check_half(k)?;
        let lk = self.pow(ell, self.top - 2 * k);
        let mat = self.ring.multiplication_matrix(&lk, k);
        let rank = mat.rank();
        Ok(LefschetzReport {
            degree: k,
            source_dim: self.dim(k),
            target_dim: self.dim(self.top - k),
            rank,
            holds: rank == self.dim(k) && rank == self.dim(self.top - k),
        })
    }

    /// Gram matrix of `(-1)^k deg(a ℓ^{r-2k} b)` on `A^k`.
    pub fn hr_form(&self, ell: &RingElement, k: usize) -> Result<QMatrix> {
        self.check_half(k)?;
        let lk = self.pow(ell, self.top - 2 * k);
        let d = self.dim(k);
        let sign = if k.is_multiple_of(2) { rat(1) } else { rat(-1) };
        let images: Vec<RingElement> = (0..d)
            .map(|j| self.mul(&lk, &self.ring.basis_element(k, j)))
            .collect();
        let mut gram = QMatrix::zeros(d, d);
        for i in 0..d {
            let a = self.ring.basis_element(k, i);
            for (j, img) in images.iter().enumerate().skip(i) {
                let v = &sign * self.degree(&self.mul(&a, img))?;
                gram[(j, i)] = v.clone();
                gram[(i, j)] = v;
            }
        }
        Ok(gram)
    }

    /// `ker(ℓ^{r+1-2k} : A^k -> A^{r+1-k})`.
    pub fn primitive_basis(&self, ell: &RingElement, k: usize) -> Result<Vec<Vec<Rational>>> {
        self.check_half(k)?;
        let lk = self.pow(ell, self.top + 1 - 2 * k);
        Ok(self.ring.multiplication_matrix(&lk, k).kernel())
    }

    /// Signature of the Hodge-Riemann form on `A^k` and on the primitive part.
    pub fn hr_check(&self, ell: &RingElement, k: usize) -> Result<BilinearFormReport> {
        let gram = self.hr_form(ell, k)?;
        let prim = self.primitive_basis(ell, k)?;
        let restricted = crate::linalg::restrict_form(&gram, &prim);
        let sig = signature(&gram);
        let psig = signature(&restricted);
        Ok(BilinearFormReport {
            degree: k,
            rank: gram.rank(),
            signature: sig,
            primitive_dim: prim.len(),
            primitive_signature: psig,
            positive_on_primitives: psig.positive == prim.len(),
            gram,
        })
    }

    /// `A^k = ⊕_j ℓ^{k-j} P^j` as a direct sum of mutually orthogonal pieces.
    pub fn lefschetz_decomposition(
        &self,
        ell: &RingElement,
        k: usize,
    ) -> Result<DecompositionOfDegree> {
        self.check_half(k)?;
        let gram = self.hr_form(ell, k)?;
        let mut pieces: Vec<Vec<Vec<Rational>>> = Vec::new();
        for j in 0..=k {
            let shift = self.pow(ell, k - j);
            let vecs = self
                .primitive_basis(ell, j)?
                .into_iter()
                .map(|v| {
                    self.mul(
                        &shift,
                        &RingElement {
                            degree: j,
                            coords: v,
                        },
                    )
                    .coords
                })
                .collect();
            pieces.push(vecs);
        }
        let all: Vec<Vec<Rational>> = pieces.iter().flatten().cloned().collect();
        let span = QMatrix::from_columns(&all, self.dim(k)).rank();
        let mut orthogonal = true;
        for a in 0..pieces.len() {
            for b in a + 1..pieces.len() {
                for x in &pieces[a] {
                    for y in &pieces[b] {
                        if !bilinear(&gram, x, y).is_zero() {
                            orthogonal = false;
                        }
                    }
                }
            }
        }
        let piece_dims: Vec<usize> = pieces.iter().map(Vec::len).collect();
        Ok(DecompositionOfDegree {
            degree: k,
            piece_dims: piece_dims.clone(),
            direct: span == all.len() && span == self.dim(k),
            orthogonal,
        })
    }

    /// `deg(a^{r-2} b^2) deg(a^r) <= deg(a^{r-1} b)^2`.
    pub fn kt_inequality_check(&self, a: &RingElement, b: &RingElement) -> Result<KtReport> {
        let r = self.top;
        if r < 2 {
            return Err(Error::BadParameters("needs r >= 2".into()));
        }
        let d = |x: RingElement| self.degree(&x);
        let lhs = d(self.mul(&self.pow(a, r - 2), &self.pow(b, 2)))? * d(self.pow(a, r))?;
        let mid = d(self.mul(&self.pow(a, r - 1), b))?;
        let rhs = &mid * &mid;
        Ok(KtReport {
            holds: lhs <= rhs,
            lhs,
            rhs,
        })
    }

    /// Poincaré duality, Hard Lefschetz and Hodge-Riemann for `ℓ` in every
    /// degree; degrees are processed by `exec`.
    pub fn hodge_report(&self, ell: &RingElement, exec: Exec) -> Result<HodgeReport> {
        let pd_degrees: Vec<usize> = (0..=self.top).collect();
        let pd = exec.map(&pd_degrees, |&k| self.poincare_pairing(k));
        let half: Vec<usize> = (0..=self.top / 2).collect();
        let per = exec.map(&half, |&k| -> Result<DegreeHodge> {
            Ok(DegreeHodge {
                lefschetz: self.hard_lefschetz_check(ell, k)?,
                hodge_riemann: self.hr_check(ell, k)?,
                decomposition: self.lefschetz_decomposition(ell, k)?,
            })
        });
        Ok(HodgeReport {
            hilbert: self.hilbert(),
            poincare: pd.into_iter().collect::<Result<_>>()?,
            degrees: per.into_iter().collect::<Result<_>>()?,
        })
    }

    fn check_half(&self, k: usize) -> Result<()> {
        if 2 * k > self.top {
            return Err(Error::BadParameters(format!(
                "k = {k} exceeds r/2 = {}/2",
                self.top
            )));
        }
        Ok(())
    }
}

fn bilinear(gram: &QMatrix, x: &[Rational], y: &[Rational]) -> Rational {
    let mut s = Rational::zero();
    for (i, xi) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
        for (j, yj) in y.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            s += xi * &gram[(i, j)] * yj;
        }
    }
    s
}

/// `c(P) = |P| (n - |P|)`.
pub fn default_submodular(n: usize) -> impl Fn(Subset) -> Rational {
    move |p| rat((p.len() * (n - p.len())) as i64)
}

/// `c(P) = |P| (n - |P|) (2n - |P|)`, a second strictly submodular choice.
pub fn cubic_submodular(n: usize) -> impl Fn(Subset) -> Rational {
    move |p| {
        let s = p.len() as i64;
        let n = n as i64;
        rat(s * (n - s) * (2 * n - s))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PairingReport {
    pub degree: usize,
    pub integral_bases: bool,
    pub gram: QMatrix,
    #[serde(serialize_with = "serialize_opt_rational")]
    pub determinant: Option<Rational>,
    pub unimodular: bool,
}

fn serialize_opt_rational<S: serde::Serializer>(
    q: &Option<Rational>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match q {
        Some(q) => s.serialize_str(&q.to_string()),
        None => s.serialize_none(),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct LefschetzReport {
    pub degree: usize,
    pub source_dim: usize,
    pub target_dim: usize,
    pub rank: usize,
    pub holds: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct BilinearFormReport {
    pub degree: usize,
    pub gram: QMatrix,
    pub rank: usize,
    pub signature: Signature,
    pub primitive_dim: usize,
    pub primitive_signature: Signature,
    pub positive_on_primitives: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct DecompositionOfDegree {
    pub degree: usize,
    /// `dim ℓ^{k-j} P^j` for `j = 0..=k`.
    pub piece_dims: Vec<usize>,
    pub direct: bool,
    pub orthogonal: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct KtReport {
    #[serde(serialize_with = "serialize_rational")]
    pub lhs: Rational,
    #[serde(serialize_with = "serialize_rational")]
    pub rhs: Rational,
    pub holds: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct DegreeHodge {
    pub lefschetz: LefschetzReport,
    pub hodge_riemann: BilinearFormReport,
    pub decomposition: DecompositionOfDegree,
}

#[derive(Debug, Clone, Serialize)]
pub struct HodgeReport {
    pub hilbert: Vec<usize>,
    pub poincare: Vec<PairingReport>,
    pub degrees: Vec<DegreeHodge>,
}

impl HodgeReport {
    pub fn all_hold(&self) -> bool {
        self.poincare.iter().all(|p| p.unimodular)
            && self.degrees.iter().all(|d| {
                d.lefschetz.holds
                    && d.hodge_riemann.positive_on_primitives
                    && d.decomposition.direct
                    && d.decomposition.orthogonal
            })
    }
}

/// Ring map `A(M, P) -> A(M, P ∪ {center})`, as one matrix per degree.
pub fn phi_map(before: &ChowRing, after: &ChowRing, center: Subset) -> Result<Vec<QMatrix>> {
    let images: Vec<RingElement> = before
        .labels
        .iter()
        .map(|l| match l {
            RayLabel::Element(i) if center.contains(*i) => {
                Ok(after.t_element(*i).add(&after.t_flat(center)?))
            }
            RayLabel::Element(i) => Ok(after.t_element(*i)),
            RayLabel::Flat(q) => after.t_flat(*q),
            RayLabel::Other(s) => Err(Error::BadParameters(format!("unexpected generator {s}"))),
        })
        .collect::<Result<_>>()?;
    let product = |gens: &[usize]| {
        gens.iter()
            .fold(after.ring.one(), |acc, &g| after.mul(&acc, &images[g]))
    };
    for nf in &before.presentation.nonfaces {
        if !product(nf).is_zero() {
            return Err(Error::RelationNotPreserved(format!(
                "monomial {}",
                before
                    .ring
                    .monomial_name(&nf.iter().map(|&g| g as u16).collect::<Vec<_>>())
            )));
        }
    }
    for (n, form) in before.presentation.linear.iter().enumerate() {
        let img = form.iter().fold(after.ring.zero(1), |acc, (g, c)| {
            acc.add(&images[*g].scale(&rat(*c)))
        });
        if !img.is_zero() {
            return Err(Error::RelationNotPreserved(format!("linear relation {n}")));
        }
    }
    Ok((0..=before.top)
        .map(|k| {
            let cols: Vec<Vec<Rational>> = before
                .ring
                .basis_monomials(k)
                .into_iter()
                .map(|mon| product(&mon.iter().map(|&g| g as usize).collect::<Vec<_>>()).coords)
                .collect();
            QMatrix::from_columns(&cols, after.dim(k))
        })
        .collect())
}

/// Linear map `t_D -> t_P^p t_D'` from `source` into `target`, where flags
/// `D` of `source` are the images of flags among `flats` under `to_source`.
/// One matrix per source degree, in the source's basis.
fn flag_map(
    source: &ChowRing,
    target: &ChowRing,
    flats: &[Subset],
    to_source: impl Fn(Subset) -> Subset,
    center: Subset,
    p: usize,
) -> Result<Vec<QMatrix>> {
    let tp = target.pow(&target.t_flat(center)?, p);
    let chains = fan::chains(flats);
    let mut out = Vec::new();
    for j in 0..=source.top {
        let flags: Vec<&Vec<Subset>> = chains.iter().filter(|c| c.len() == j).collect();
        let mut src_cols = Vec::new();
        let mut tgt_cols = Vec::new();
        for d in &flags {
            let src = source
                .monomial(
                    &d.iter()
                        .map(|&q| RayLabel::Flat(to_source(q)))
                        .collect::<Vec<_>>(),
                )
                .ok_or_else(|| Error::BadParameters("flag outside the source ring".into()))?;
            let tgt = target
                .monomial(&d.iter().map(|&q| RayLabel::Flat(q)).collect::<Vec<_>>())
                .ok_or_else(|| Error::BadParameters("flag outside the target ring".into()))?;
            src_cols.push(src.coords);
            tgt_cols.push(target.mul(&tp, &tgt).coords);
        }
        let (ds, dt) = (source.dim(j), target.dim(j + p));
        let s = QMatrix::from_columns(&src_cols, ds);
        let t = QMatrix::from_columns(&tgt_cols, dt);
        let stacked: Vec<Vec<Rational>> = src_cols
            .iter()
            .zip(&tgt_cols)
            .map(|(a, b)| a.iter().chain(b).cloned().collect())
            .collect();
        let mut echelon = s.clone();
        let pivots = echelon.rref_in_place();
        if pivots.len() != ds {
            return Err(Error::RelationNotPreserved(format!(
                "flags do not span degree {j}"
            )));
        }
        if QMatrix::from_columns(&stacked, ds + dt).rank() != ds {
            return Err(Error::RelationNotPreserved(format!(
                "relation among flags of degree {j}"
            )));
        }
        let pick = |m: &QMatrix| {
            QMatrix::from_columns(
                &pivots.iter().map(|&c| m.column(c)).collect::<Vec<_>>(),
                m.nrows(),
            )
        };
        let inv = pick(&s).inverse().expect("pivot columns are independent");
        out.push(pick(&t).mul(&inv));
    }
    Ok(out)
}

/// `Ψ^p : A(M/P) -> A(M, P')`, flats `Q̄` of `M/P` lifted to `Q̄ ∪ P`.
pub fn psi_map(
    contraction: &ChowRing,
    after: &ChowRing,
    center: Subset,
    p: usize,
) -> Result<Vec<QMatrix>> {
    let m = &after.matroid;
    let (_, map) = m.contraction_with_map(center)?;
    let e = m.ground();
    let flats: Vec<Subset> = m
        .flats()
        .iter()
        .copied()
        .filter(|&q| center.is_proper_subset_of(q) && q != e)
        .collect();
    flag_map(
        contraction,
        after,
        &flats,
        |q| q.difference(center).remap(&map),
        center,
        p,
    )
}

/// `Γ^p : A(M|P) -> A(M)`.
pub fn gamma_map(
    restriction: &ChowRing,
    full: &ChowRing,
    center: Subset,
    p: usize,
) -> Result<Vec<QMatrix>> {
    let m = &full.matroid;
    let (_, map) = m.restriction_with_map(center)?;
    let flats: Vec<Subset> = m
        .flats()
        .iter()
        .copied()
        .filter(|&q| !q.is_empty() && q.is_proper_subset_of(center))
        .collect();
    flag_map(restriction, full, &flats, |q| q.remap(&map), center, p)
}

#[derive(Debug, Clone, Serialize)]
pub struct DecompositionReport {
    pub center: Subset,
    pub center_rank: usize,
    pub dims_before: Vec<usize>,
    pub dims_after: Vec<usize>,
    pub dims_contraction: Vec<usize>,
    /// `dim A^k(M,P') = dim A^k(M,P) + Σ_p dim A^{k-p}(M/P)` for each `k`.
    pub dimension_identity: Vec<bool>,
    /// `Φ + Σ Ψ^p` is injective in each degree.
    pub joint_rank_full: Vec<bool>,
    /// For rank-one centers, whether `Φ` alone is bijective.
    pub phi_isomorphism: Option<bool>,
}

impl DecompositionReport {
    pub fn holds(&self) -> bool {
        self.dimension_identity.iter().all(|&b| b)
            && self.joint_rank_full.iter().all(|&b| b)
            && self.phi_isomorphism.unwrap_or(true)
    }
}

/// Flips `before` at `center` and checks the decomposition of the result.
pub fn decomposition_check(
    before: &ChowRing,
    center: Subset,
) -> Result<(DecompositionReport, ChowRing)> {
    let m = &before.matroid;
    let after_filter = before.filter.flip(m, center)?;
    let after = ChowRing::new(m, &after_filter)?;
    let contraction = ChowRing::full(&m.contraction(center)?)?;
    let phi = phi_map(before, &after, center)?;
    let rk = m.rank_of(center);
    let psis: Vec<Vec<QMatrix>> = (1..rk)
        .map(|p| psi_map(&contraction, &after, center, p))
        .collect::<Result<_>>()?;
    let r = before.top;
    let mut identity = Vec::new();
    let mut joint = Vec::new();
    for k in 0..=r {
        let mut total = before.dim(k);
        let mut mat = phi[k].clone();
        for (idx, psi) in psis.iter().enumerate() {
            let p = idx + 1;
            if k >= p && k - p <= contraction.top {
                total += contraction.dim(k - p);
                mat = mat.hcat(&psi[k - p]);
            }
        }
        identity.push(total == after.dim(k));
        joint.push(mat.rank() == total);
    }
    let phi_isomorphism = (rk == 1).then(|| {
        (0..=r).all(|k| phi[k].nrows() == phi[k].ncols() && phi[k].rank() == phi[k].ncols())
    });
    let report = DecompositionReport {
        center,
        center_rank: rk,
        dims_before: before.hilbert(),
        dims_after: after.hilbert(),
        dims_contraction: contraction.hilbert(),
        dimension_identity: identity,
        joint_rank_full: joint,
        phi_isomorphism,
    };
    Ok((report, after))
}

/// Flips from `{E}` to the full filter, checking each step.
pub fn flip_chain(m: &Matroid) -> Result<Vec<DecompositionReport>> {
    let start = Filter::top(m);
    let centers = start.flip_sequence_to_full(m);
    let mut ring = ChowRing::new(m, &start)?;
    let mut out = Vec::with_capacity(centers.len());
    for c in centers {
        let (report, next) = decomposition_check(&ring, c)?;
        out.push(report);
        ring = next;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::mu_vector;
    use crate::matroid::{boolean, fano, k4, uniform};

    #[test]
    fn projective_space_filter() {
        let m = uniform(3, 4).unwrap();
        let a = ChowRing::new(&m, &Filter::top(&m)).unwrap();
        assert_eq!(a.hilbert(), vec![1, 1, 1]);
        assert!(a.vanishes_above_top());
        let t = a.t_element(0);
        assert_eq!(a.t_element(3), t);
        assert_eq!(a.degree(&a.pow(&t, 2)).unwrap(), rat(1));
    }

    #[test]
    fn u23_full() {
        let m = uniform(2, 3).unwrap();
        let a = ChowRing::full(&m).unwrap();
        assert_eq!(a.hilbert(), vec![1, 1]);
        let t0 = a.t_flat(Subset::singleton(0)).unwrap();
        assert_eq!(a.t_flat(Subset::singleton(2)).unwrap(), t0);
        assert_eq!(a.degree(&a.beta()).unwrap(), rat(2));
        assert_eq!(a.mu_vector_via_chow().unwrap(), vec![1, 2]);
        let ell = a
            .ample_from_submodular(default_submodular(3), Exec::Sequential)
            .unwrap();
        assert_eq!(ell, t0.scale(&rat(6)));
        assert!(a
            .ample_from_submodular(|_| rat(0), Exec::Sequential)
            .is_err());
        assert!(matches!(
            a.degree(&a.ring().one()),
            Err(Error::NotTopDegree {
                expected: 1,
                got: 0
            })
        ));
    }

    #[test]
    fn k4_mu_and_hodge() {
        let m = k4().unwrap();
        let a = ChowRing::full(&m).unwrap();
        assert_eq!(a.mu_vector_via_chow().unwrap(), vec![1, 5, 6]);
        assert_eq!(mu_vector(&m).unwrap(), vec![1, 5, 6]);
        assert!(a.top_monomials_agree());
        let ell = a
            .ample_from_submodular(default_submodular(6), Exec::Sequential)
            .unwrap();
        let rep = a.hodge_report(&ell, Exec::Sequential).unwrap();
        assert!(rep.all_hold());
        assert_eq!(rep.degrees[1].hodge_riemann.primitive_dim, a.dim(1) - 1);
        let kt = a.kt_inequality_check(&a.alpha(), &a.beta()).unwrap();
        assert!(kt.holds && kt.lhs == rat(6) && kt.rhs == rat(25));
    }

    #[test]
    fn alpha_is_independent_of_element() {
        let m = fano().unwrap();
        let a = ChowRing::full(&m).unwrap();
        assert!((1..7).all(|i| a.alpha_at(i) == a.alpha()));
        assert!((1..7).all(|i| a.beta_at(i) == a.beta()));
    }

    #[test]
    fn flips_of_boolean3() {
        let reports = flip_chain(&boolean(3).unwrap()).unwrap();
        assert_eq!(reports.len(), 6);
        assert!(reports.iter().all(DecompositionReport::holds));
        assert_eq!(reports.last().unwrap().dims_after, vec![1, 4, 1]);
    }

    #[test]
    fn rank_one_flip_is_iso() {
        let m = uniform(2, 3).unwrap();
        let a = ChowRing::new(&m, &Filter::top(&m)).unwrap();
        let (rep, _) = decomposition_check(&a, Subset::singleton(0)).unwrap();
        assert_eq!(rep.phi_isomorphism, Some(true));
        assert_eq!(rep.dims_before, vec![1, 1]);
        assert_eq!(rep.dims_after, vec![1, 1]);
    }

    #[test]
    fn gamma_is_well_defined() {
        let m = boolean(3).unwrap();
        let a = ChowRing::full(&m).unwrap();
        let p = Subset::from_elems([0, 1]);
        let res = ChowRing::full(&m.restriction(p).unwrap()).unwrap();
        let g = gamma_map(&res, &a, p, 1).unwrap();
        assert_eq!(g.len(), 2);
        assert_eq!(g[0].rank(), 1);
    }
}
