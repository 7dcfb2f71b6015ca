//! The group `H(x)` generated by the entries of a Perron eigenvector, kept
//! as a lattice in `Q^k`, and the set `S = ⋃_N λ^-N H(x)`.

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::exact::{FieldElement, FieldRef, Lattice, Sign};
use crate::perron::PerronData;

/// Finest precision used when comparing the real embeddings of two fields.
const MAX_EMBEDDING_BITS: usize = 1 << 16;

#[derive(Clone, Debug)]
pub struct LatticeGroup {
    field: FieldRef,
    lattice: Lattice,
    generators: Vec<FieldElement>,
}

impl PartialEq for LatticeGroup {
    fn eq(&self, other: &Self) -> bool {
        self.field.min_poly() == other.field.min_poly() && self.lattice == other.lattice
    }
}

impl LatticeGroup {
    /// Group generated by `elements`; their coordinates must span `Q^k`.
    pub fn new(field: &FieldRef, elements: &[FieldElement]) -> Result<Self> {
        if elements.is_empty() {
            return Err(Error::Rank("no generators".into()));
        }
        let coords: Vec<Vec<BigRational>> = elements.iter().map(|e| e.coords().to_vec()).collect();
        let lattice = Lattice::from_generators(&coords)?;
        Ok(LatticeGroup {
            field: field.clone(),
            lattice,
            generators: elements.to_vec(),
        })
    }

    pub fn field(&self) -> &FieldRef {
        &self.field
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn generators(&self) -> &[FieldElement] {
        &self.generators
    }

    /// Canonical basis as field elements.
    pub fn basis_elements(&self) -> Vec<FieldElement> {
        self.lattice
            .basis_vectors()
            .into_iter()
            .map(|v| FieldElement::new(&self.field, v).expect("basis vectors have length k"))
            .collect()
    }

    pub fn contains(&self, y: &FieldElement) -> Result<bool> {
        if y.field().min_poly() != self.field.min_poly() {
            return Err(Error::domain("element lies in a different field"));
        }
        self.lattice.contains(y.coords())
    }

    /// `e · H ⊆ H`.
    pub fn is_stable_under(&self, e: &FieldElement) -> Result<bool> {
        for b in self.basis_elements() {
            if !self.contains(&b.mul(e))? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `λ^m H ⊆ H`.
    pub fn is_closed_under_power(&self, m: usize) -> Result<bool> {
        let mu = FieldElement::generator(&self.field).pow(m as i64)?;
        self.is_stable_under(&mu)
    }

    /// The group `e · H`.
    pub fn scaled(&self, e: &FieldElement) -> Result<Self> {
        let gens: Vec<FieldElement> = self.generators.iter().map(|g| g.mul(e)).collect();
        Self::new(&self.field, &gens)
    }

    /// The same group written in `target`, where this group's field is
    /// generated by `μ^m` with `μ` the generator of `target`.
    pub fn pull_back(&self, target: &FieldRef, m: usize) -> Result<Self> {
        let image = power_embedding(&self.field, target, m)?;
        let gens: Vec<FieldElement> = self.generators.iter().map(&image).collect();
        Self::new(target, &gens)
    }
}

/// Embedding `source → target` sending the generator of `source` to
/// `μ^m`, `μ` the generator of `target`. Fails unless `μ^m` has the minimal
/// polynomial of `source` and the same real value as its generator.
pub fn power_embedding(
    source: &FieldRef,
    target: &FieldRef,
    m: usize,
) -> Result<impl Fn(&FieldElement) -> FieldElement> {
    if m == 0 {
        return Err(Error::domain("power relation must be at least 1"));
    }
    if source.degree() != target.degree() {
        return Err(Error::domain(format!(
            "field mismatch: degrees {} and {}",
            source.degree(),
            target.degree()
        )));
    }
    let mu = FieldElement::generator(target).pow(m as i64)?;
    let mp = mu
        .integral_min_poly()
        .ok_or_else(|| Error::internal("power of an algebraic integer is not integral"))?;
    if &mp != source.min_poly() {
        return Err(Error::domain(format!(
            "field mismatch: the generator to the power {m} has minimal polynomial {mp}, not {}",
            source.min_poly()
        )));
    }
    if !same_real_root(&mu, source.isolation()) {
        return Err(Error::domain(
            "field mismatch: the power is a different conjugate",
        ));
    }
    let powers: Vec<FieldElement> = {
        let mut out = Vec::with_capacity(source.degree());
        let mut p = FieldElement::one(target);
        for _ in 0..source.degree() {
            out.push(p.clone());
            p = p.mul(&mu);
        }
        out
    };
    Ok(move |e: &FieldElement| {
        let mut acc = FieldElement::zero(&powers[0].field().clone());
        for (c, p) in e.coords().iter().zip(&powers) {
            acc = acc.add(&p.scale(c));
        }
        acc
    })
}

/// Whether the root `mu` of the polynomial isolated by `iv` is the isolated
/// one: refine the enclosure of `mu` until it falls inside the open
/// interval or misses the closed one.
fn same_real_root(mu: &FieldElement, iv: &crate::exact::roots::Interval) -> bool {
    if iv.is_point() {
        return mu.as_rational().as_ref() == Some(&iv.lo);
    }
    let mut bits = 64;
    while bits <= MAX_EMBEDDING_BITS {
        let (lo, hi) = mu.enclosure(&crate::exact::pow2_inv(bits));
        if lo > iv.lo && hi < iv.hi {
            return true;
        }
        if hi < iv.lo || lo > iv.hi {
            return false;
        }
        bits *= 2;
    }
    false
}

/// `H(x_1, …, x_s)` for the Perron eigenvector of `pd`, checked to be
/// stable under multiplication by `λ`.
pub fn lattice_of(pd: &PerronData) -> Result<LatticeGroup> {
    let g = LatticeGroup::new(&pd.field, &pd.eigvec)?;
    if !g.is_stable_under(&pd.lambda)? {
        return Err(Error::internal(
            "the eigenvector group is not stable under λ",
        ));
    }
    Ok(g)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Membership {
    /// `λ^N y ∈ H` for this smallest `N`.
    Member(usize),
    NotMemberUpTo(usize),
}

/// Whether `y ∈ [0, 1]` lies in `⋃_N λ^-N H`.
pub fn s_membership(y: &FieldElement, group: &LatticeGroup, n_max: usize) -> Result<Membership> {
    if y.sign() == Sign::Negative || FieldElement::one(y.field()).sub(y).sign() == Sign::Negative {
        return Err(Error::domain("value outside [0, 1]"));
    }
    let lambda = FieldElement::generator(&group.field);
    let mut cur = y.clone();
    for n in 0..=n_max {
        if group.contains(&cur)? {
            return Ok(Membership::Member(n));
        }
        cur = cur.mul(&lambda);
    }
    Ok(Membership::NotMemberUpTo(n_max))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GroupComparison {
    /// Each group, scaled by `λ^(mN)`, lands in the other for this `N`.
    Equal(usize),
    Unequal,
    UndecidedUpTo(usize),
}

/// Compares `⋃ λ1^-N H1` with `⋃ λ2^-N H2` where `λ2 = λ1^m`. Both unions
/// are increasing, so they agree iff each group is eventually contained in
/// the other after scaling by powers of `λ2`. When `λ2` is a unit the
/// scaling is a bijection of each group and `N = 0` decides.
pub fn groups_equal(
    l1: &LatticeGroup,
    l2: &LatticeGroup,
    m: usize,
    n_cap: usize,
) -> Result<GroupComparison> {
    let h2 = l2.pull_back(&l1.field, m)?;
    let lambda1 = FieldElement::generator(&l1.field);
    if !l1.is_stable_under(&lambda1)? {
        return Err(Error::domain(
            "first group is not stable under its eigenvalue",
        ));
    }
    let mu = lambda1.pow(m as i64)?;
    if !h2.is_stable_under(&mu)? {
        return Err(Error::domain(
            "second group is not stable under its eigenvalue",
        ));
    }
    if l1.lattice == h2.lattice {
        return Ok(GroupComparison::Equal(0));
    }
    if l1.field.is_unit() {
        return Ok(GroupComparison::Unequal);
    }
    let (mut a, mut b) = (l1.basis_elements(), h2.basis_elements());
    let (mut first_in_second, mut second_in_first) = (None, None);
    for n in 0..=n_cap {
        if first_in_second.is_none() && a.iter().all(|e| h2.contains(e).unwrap_or(false)) {
            first_in_second = Some(n);
        }
        if second_in_first.is_none() && b.iter().all(|e| l1.contains(e).unwrap_or(false)) {
            second_in_first = Some(n);
        }
        if let (Some(p), Some(q)) = (first_in_second, second_in_first) {
            return Ok(GroupComparison::Equal(p.max(q)));
        }
        a = a.iter().map(|e| e.mul(&mu)).collect();
        b = b.iter().map(|e| e.mul(&mu)).collect();
    }
    Ok(GroupComparison::UndecidedUpTo(n_cap))
}
