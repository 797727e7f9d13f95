//! Split and relative root data, Weyl groups, and standard parabolics.
//!
//! Coordinate conventions (frozen per type):
//!
//! * `A_n`, `G2`: cocharacters in the simple-coroot basis, so a character is
//!   recorded by its pairings with the simple coroots. The Gram form gives
//!   short coroots squared length 2.
//! * `B_n`, `C_n`: the `ε` basis with the identity Gram form. For `C2` this is
//!   the `(ě_z, ě_t)` basis of `Sp4`'s diagonal torus `diag(z, t, 1/t, 1/z)`,
//!   with `α = (1,-1)` and `β = (0,2)`.
//! * Products: block sums, coordinates and simple roots in factor order.
//! * Relative data: user-chosen coordinates, identity cocharacter lattice.

use std::collections::{HashSet, VecDeque};
use std::ops::Range;

use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact_geometry::{min_norm_point, GramForm};
use crate::rational::{int, Rational, RationalMatrix, RationalVector};

pub const DEFAULT_WEYL_LIMIT: usize = 10_000;
const MAX_ROOTS: usize = 512;

/// Which integral structure primitivisation uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LatticeKind {
    /// Coroot lattice.
    SimplyConnected,
    /// Coweight lattice.
    Adjoint,
    /// The coordinate lattice `Z^rank`.
    Standard,
}

/// Cocharacter lattice, stored by a basis (as columns).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    kind: LatticeKind,
    basis: RationalMatrix,
    inverse: RationalMatrix,
}

impl Lattice {
    pub fn standard(rank: usize) -> Self {
        Self {
            kind: LatticeKind::Standard,
            basis: RationalMatrix::identity(rank),
            inverse: RationalMatrix::identity(rank),
        }
    }

    pub fn from_basis(kind: LatticeKind, basis: &[RationalVector]) -> Result<Self> {
        let m = RationalMatrix::from_columns(basis);
        let inverse = m
            .inverse()
            .ok_or_else(|| Error::MalformedDatum("lattice basis is not invertible".into()))?;
        Ok(Self {
            kind,
            basis: m,
            inverse,
        })
    }

    pub fn kind(&self) -> LatticeKind {
        self.kind
    }

    pub fn contains(&self, v: &RationalVector) -> bool {
        self.inverse.mul_vec(v).is_integral()
    }

    /// Writes `mu = lambda / m` with `lambda` primitive in the lattice and
    /// `m` a positive integer.
    pub fn primitivize(&self, mu: &RationalVector) -> Result<(RationalVector, u64)> {
        let coords = self.inverse.mul_vec(mu);
        let (scale, prim) = coords.primitive_multiple().ok_or(Error::ZeroCocharacter)?;
        if !scale.is_integer() {
            return Err(Error::NonIntegralLevel(mu.to_string()));
        }
        let prim = RationalVector::new(prim.into_iter().map(BigRational::from_integer).collect());
        let m = scale
            .to_integer()
            .to_u64()
            .ok_or_else(|| Error::NonIntegralLevel(mu.to_string()))?;
        Ok((self.basis.mul_vec(&prim), m))
    }
}

/// One irreducible factor of a built-in type.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factor {
    pub family: char,
    pub n: usize,
    pub coords: Range<usize>,
    pub simple: Range<usize>,
}

impl Factor {
    pub fn tag(&self) -> String {
        format!("{}{}", self.family, self.n)
    }
}

/// Root datum with Gram form and cocharacter lattice.
///
/// Split data carry multiplicity one on every root. Relative (restricted)
/// data may carry larger multiplicities and divisible roots (`α` and `2α`).
#[derive(Clone, Debug)]
pub struct RootDatum {
    label: String,
    rank: usize,
    simple_roots: Vec<RationalVector>,
    simple_coroots: Vec<RationalVector>,
    positive_roots: Vec<RationalVector>,
    positive_coefficients: Vec<Vec<i64>>,
    multiplicities: Vec<u32>,
    gram: GramForm,
    lattice: Lattice,
    factors: Vec<Factor>,
    relative: bool,
}

/// Alias kept for call sites that deal with restricted root systems.
pub type RelativeRootDatum = RootDatum;

/// Roots plus Gram form, without a chosen base. This is what the
/// semistability recursion needs from a group (`M_λ^⊥` or a torus).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductiveGroup {
    pub gram: GramForm,
    pub roots: Vec<(RationalVector, u32)>,
    pub relative: bool,
}

impl ReductiveGroup {
    pub fn torus(gram: GramForm) -> Self {
        Self {
            gram,
            roots: vec![],
            relative: false,
        }
    }

    pub fn rank(&self) -> usize {
        self.gram.rank()
    }

    pub fn is_torus(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.rank() + self.roots.iter().map(|(_, m)| *m as usize).sum::<usize>()
    }

    /// `dim P_ν`.
    pub fn parabolic_dim(&self, nu: &RationalVector) -> usize {
        self.rank()
            + self
                .roots
                .iter()
                .filter(|(r, _)| !r.dot(nu).is_negative())
                .map(|(_, m)| *m as usize)
                .sum::<usize>()
    }
}

/// A standard parabolic, given by the simple roots of its Levi.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ParabolicSpec {
    pub levi: Vec<usize>,
}

impl ParabolicSpec {
    pub fn contains(&self, i: usize) -> bool {
        self.levi.contains(&i)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylElement {
    /// Simple reflection indices; the element is their product in order.
    pub word: Vec<usize>,
    /// Action on cocharacter coordinates.
    pub cocharacter: RationalMatrix,
    /// Action on character coordinates.
    pub character: RationalMatrix,
}

fn cochar_reflection(root: &RationalVector, coroot: &RationalVector) -> RationalMatrix {
    let n = root.len();
    let mut m = RationalMatrix::identity(n);
    for i in 0..n {
        for j in 0..n {
            let v = m.get(i, j) - coroot.get(i) * root.get(j);
            m.set(i, j, v);
        }
    }
    m
}

fn char_reflection(root: &RationalVector, coroot: &RationalVector) -> RationalMatrix {
    cochar_reflection(coroot, root)
}

fn reflect_character(chi: &RationalVector, root: &RationalVector, coroot: &RationalVector) -> RationalVector {
    let mut out = chi.clone();
    out.axpy(&-chi.dot(coroot), root);
    out
}

fn reflect_cocharacter(nu: &RationalVector, root: &RationalVector, coroot: &RationalVector) -> RationalVector {
    let mut out = nu.clone();
    out.axpy(&-root.dot(nu), coroot);
    out
}

struct IrreducibleData {
    simple_roots: Vec<RationalVector>,
    simple_coroots: Vec<RationalVector>,
    gram: RationalMatrix,
}

fn cartan_coroot_basis(cartan: &[Vec<i64>], coroot_norms: &[i64]) -> IrreducibleData {
    // cartan[i][j] = ⟨α_i, α̌_j⟩; coordinates are the simple-coroot basis.
    let n = cartan.len();
    let simple_roots = cartan.iter().map(|row| RationalVector::from_ints(row)).collect();
    let simple_coroots = (0..n).map(|i| RationalVector::unit(n, i)).collect();
    let mut gram = RationalMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            // (α̌_i, α̌_j) = ⟨α_j, α̌_i⟩ (α̌_j, α̌_j) / 2
            gram.set(i, j, int(cartan[j][i]) * int(coroot_norms[j]) / int(2));
        }
    }
    IrreducibleData {
        simple_roots,
        simple_coroots,
        gram,
    }
}

fn irreducible(family: char, n: usize) -> Result<IrreducibleData> {
    let unsupported = || Error::UnsupportedType(format!("{family}{n}"));
    match (family, n) {
        ('A', 1..=3) => {
            let cartan: Vec<Vec<i64>> = (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| match i.abs_diff(j) {
                            0 => 2,
                            1 => -1,
                            _ => 0,
                        })
                        .collect()
                })
                .collect();
            Ok(cartan_coroot_basis(&cartan, &vec![2; n]))
        }
        ('G', 2) => {
            // α1 short, α2 long; α̌2 is the short coroot.
            Ok(cartan_coroot_basis(&[vec![2, -1], vec![-3, 2]], &[6, 2]))
        }
        ('B', 2..=3) | ('C', 2..=3) => {
            let eps = |i: usize| RationalVector::unit(n, i);
            let mut roots = Vec::new();
            let mut coroots = Vec::new();
            for i in 0..n - 1 {
                let d = &eps(i) - &eps(i + 1);
                roots.push(d.clone());
                coroots.push(d);
            }
            let last = eps(n - 1);
            if family == 'B' {
                roots.push(last.clone());
                coroots.push(last.scale(&int(2)));
            } else {
                roots.push(last.scale(&int(2)));
                coroots.push(last);
            }
            Ok(IrreducibleData {
                simple_roots: roots,
                simple_coroots: coroots,
                gram: RationalMatrix::identity(n),
            })
        }
        _ => Err(unsupported()),
    }
}

fn parse_tag(tag: &str) -> Result<Vec<(char, usize)>> {
    let cleaned: String = tag.chars().filter(|c| !c.is_whitespace()).collect();
    if cleaned.is_empty() {
        return Err(Error::UnsupportedType(tag.to_string()));
    }
    cleaned
        .split(['x', 'X', '×', '*'])
        .map(|f| {
            let mut chars = f.chars();
            let family = chars
                .next()
                .map(|c| c.to_ascii_uppercase())
                .ok_or_else(|| Error::UnsupportedType(tag.to_string()))?;
            let n: usize = chars
                .as_str()
                .parse()
                .map_err(|_| Error::UnsupportedType(tag.to_string()))?;
            Ok((family, n))
        })
        .collect()
}

fn block_embed(v: &RationalVector, offset: usize, total: usize) -> RationalVector {
    let mut c = vec![Rational::zero(); total];
    for (i, x) in v.coords().iter().enumerate() {
        c[offset + i] = x.clone();
    }
    RationalVector::new(c)
}

impl RootDatum {
    /// Built-in split data: `A1`..`A3`, `B2`, `B3`, `C2`, `C3`, `G2`, and
    /// products such as `A1xA1`.
    pub fn build(tag: &str) -> Result<Self> {
        Self::build_with_lattice(tag, LatticeKind::SimplyConnected)
    }

    pub fn build_with_lattice(tag: &str, lattice: LatticeKind) -> Result<Self> {
        let parts = parse_tag(tag)?;
        let mut pieces = Vec::new();
        for &(family, n) in &parts {
            pieces.push(irreducible(family, n)?);
        }
        let rank: usize = pieces.iter().map(|p| p.gram.rows()).sum();
        let mut simple_roots = Vec::new();
        let mut simple_coroots = Vec::new();
        let mut gram = RationalMatrix::zeros(rank, rank);
        let mut factors = Vec::new();
        let mut offset = 0;
        for (&(family, n), piece) in parts.iter().zip(&pieces) {
            let k = piece.gram.rows();
            let s0 = simple_roots.len();
            for (r, c) in piece.simple_roots.iter().zip(&piece.simple_coroots) {
                simple_roots.push(block_embed(r, offset, rank));
                simple_coroots.push(block_embed(c, offset, rank));
            }
            for i in 0..k {
                for j in 0..k {
                    gram.set(offset + i, offset + j, piece.gram.get(i, j).clone());
                }
            }
            factors.push(Factor {
                family,
                n,
                coords: offset..offset + k,
                simple: s0..simple_roots.len(),
            });
            offset += k;
        }
        let label = parts
            .iter()
            .map(|(f, n)| format!("{f}{n}"))
            .collect::<Vec<_>>()
            .join("x");
        let gram = GramForm::new(gram)?;
        let lattice = split_lattice(lattice, &simple_roots, &simple_coroots)?;
        let mut datum = Self::split_from_simple(label, simple_roots, simple_coroots, gram, lattice)?;
        datum.factors = factors;
        Ok(datum)
    }

    /// Split datum from a base; roots are generated as the Weyl orbit of the
    /// simple roots.
    pub fn split_from_simple(
        label: String,
        simple_roots: Vec<RationalVector>,
        simple_coroots: Vec<RationalVector>,
        gram: GramForm,
        lattice: Lattice,
    ) -> Result<Self> {
        let rank = gram.rank();
        if simple_roots.len() != simple_coroots.len() {
            return Err(Error::MalformedDatum("simple roots and coroots differ in number".into()));
        }
        for (r, c) in simple_roots.iter().zip(&simple_coroots) {
            if r.len() != rank || c.len() != rank {
                return Err(Error::LengthMismatch {
                    expected: rank,
                    got: r.len().min(c.len()),
                });
            }
            if r.dot(c) != int(2) {
                return Err(Error::MalformedDatum(format!("⟨{r}, {c}⟩ ≠ 2")));
            }
        }
        let mut seen: HashSet<RationalVector> = simple_roots.iter().cloned().collect();
        let mut queue: VecDeque<RationalVector> = simple_roots.iter().cloned().collect();
        let mut all = simple_roots.clone();
        while let Some(r) = queue.pop_front() {
            for (a, c) in simple_roots.iter().zip(&simple_coroots) {
                let s = reflect_character(&r, a, c);
                if seen.insert(s.clone()) {
                    if all.len() >= MAX_ROOTS {
                        return Err(Error::MalformedDatum("root system is not finite".into()));
                    }
                    all.push(s.clone());
                    queue.push_back(s);
                }
            }
        }
        let mut datum = Self {
            label,
            rank,
            simple_roots,
            simple_coroots,
            positive_roots: vec![],
            positive_coefficients: vec![],
            multiplicities: vec![],
            gram,
            lattice,
            factors: vec![],
            relative: false,
        };
        let mut pos = Vec::new();
        for r in all {
            let coeffs = datum.simple_coefficients(&r)?;
            if coeffs.iter().all(|&c| c >= 0) {
                pos.push((r, coeffs));
            } else if !coeffs.iter().all(|&c| c <= 0) {
                return Err(Error::MalformedDatum(format!("root {r} has mixed-sign coefficients")));
            }
        }
        pos.sort_by(|(_, a), (_, b)| {
            let ha: i64 = a.iter().sum();
            let hb: i64 = b.iter().sum();
            ha.cmp(&hb).then_with(|| b.cmp(a))
        });
        datum.multiplicities = vec![1; pos.len()];
        (datum.positive_roots, datum.positive_coefficients) = pos.into_iter().unzip();
        datum.check_gram_invariance()?;
        Ok(datum)
    }

    /// Relative (restricted) datum from a root table.
    ///
    /// `roots` may list positive roots only or both signs; negatives are
    /// added with the same multiplicity.
    pub fn relative_from_table(
        label: String,
        roots: Vec<(RationalVector, u32)>,
        simple_roots: Vec<RationalVector>,
        gram: GramForm,
    ) -> Result<Self> {
        let rank = gram.rank();
        let mut table: Vec<(RationalVector, u32)> = Vec::new();
        for (r, m) in roots {
            if r.len() != rank {
                return Err(Error::LengthMismatch {
                    expected: rank,
                    got: r.len(),
                });
            }
            if r.is_zero() {
                return Err(Error::MalformedDatum("zero root".into()));
            }
            if !r.is_integral() {
                return Err(Error::MalformedDatum(format!("root {r} is not integral")));
            }
            if m == 0 {
                return Err(Error::MalformedDatum(format!("root {r} has multiplicity 0")));
            }
            for cand in [r.clone(), -&r] {
                match table.iter().find(|(x, _)| *x == cand) {
                    Some((_, m0)) if *m0 != m => {
                        return Err(Error::MalformedDatum(format!(
                            "root {cand} listed with multiplicities {m0} and {m}"
                        )))
                    }
                    Some(_) => {}
                    None => table.push((cand, m)),
                }
            }
        }
        for s in &simple_roots {
            if !table.iter().any(|(r, _)| r == s) {
                return Err(Error::MalformedDatum(format!("simple root {s} is not a root")));
            }
        }
        let simple_coroots: Vec<RationalVector> = simple_roots
            .iter()
            .map(|a| {
                let t = crate::exact_geometry::transport(a, &gram)?;
                let n = a.dot(&t);
                Ok(t.scale(&(int(2) / n)))
            })
            .collect::<Result<_>>()?;
        let mut datum = Self {
            label,
            rank,
            simple_roots,
            simple_coroots,
            positive_roots: vec![],
            positive_coefficients: vec![],
            multiplicities: vec![],
            gram,
            lattice: Lattice::standard(rank),
            factors: vec![],
            relative: true,
        };
        let mut pos = Vec::new();
        for (r, m) in &table {
            let coeffs = datum.simple_coefficients(r)?;
            if coeffs.iter().all(|&c| c >= 0) {
                pos.push((r.clone(), coeffs, *m));
            } else if !coeffs.iter().all(|&c| c <= 0) {
                return Err(Error::MalformedDatum(format!("root {r} has mixed-sign coefficients")));
            }
        }
        pos.sort_by(|(_, a, _), (_, b, _)| {
            let ha: i64 = a.iter().sum();
            let hb: i64 = b.iter().sum();
            ha.cmp(&hb).then_with(|| b.cmp(a))
        });
        for (r, c, m) in pos {
            datum.positive_roots.push(r);
            datum.positive_coefficients.push(c);
            datum.multiplicities.push(m);
        }
        datum.check_gram_invariance()?;
        for (a, c) in datum.simple_roots.iter().zip(&datum.simple_coroots) {
            for (r, m) in datum.roots() {
                let s = reflect_character(&r, a, c);
                if datum.multiplicity(&s) != Some(m) {
                    return Err(Error::MalformedDatum(format!(
                        "root table is not stable under the reflection in {a}"
                    )));
                }
            }
        }
        Ok(datum)
    }

    /// The same datum, marked relative (multiplicity one everywhere).
    pub fn as_relative(&self) -> Self {
        let mut d = self.clone();
        d.relative = true;
        d.label = format!("{} (relative)", self.label);
        d
    }

    /// Same roots with each irreducible factor's Gram block scaled.
    pub fn with_factor_scales(&self, scales: &[Rational]) -> Result<Self> {
        if scales.len() != self.factors.len().max(1) {
            return Err(Error::LengthMismatch {
                expected: self.factors.len().max(1),
                got: scales.len(),
            });
        }
        if scales.iter().any(|s| !s.is_positive()) {
            return Err(Error::MalformedDatum("Gram scales must be positive".into()));
        }
        let mut m = self.gram.matrix().clone();
        if self.factors.is_empty() {
            m = m.scale(&scales[0]);
        } else {
            for (f, s) in self.factors.iter().zip(scales) {
                for i in f.coords.clone() {
                    for j in f.coords.clone() {
                        let v = m.get(i, j) * s;
                        m.set(i, j, v);
                    }
                }
            }
        }
        let mut d = self.clone();
        d.gram = GramForm::new(m)?;
        if d.relative {
            // coroots of relative data depend on the form
            d.simple_coroots = d
                .simple_roots
                .iter()
                .map(|a| {
                    let t = crate::exact_geometry::transport(a, &d.gram).expect("rank checked");
                    let n = a.dot(&t);
                    t.scale(&(int(2) / n))
                })
                .collect();
        }
        d.check_gram_invariance()?;
        Ok(d)
    }

    pub fn with_lattice(&self, kind: LatticeKind) -> Result<Self> {
        let mut d = self.clone();
        d.lattice = match kind {
            LatticeKind::Standard => Lattice::standard(self.rank),
            _ => split_lattice(kind, &self.simple_roots, &self.simple_coroots)?,
        };
        Ok(d)
    }

    fn check_gram_invariance(&self) -> Result<()> {
        let g = self.gram.matrix();
        for (a, c) in self.simple_roots.iter().zip(&self.simple_coroots) {
            let s = cochar_reflection(a, c);
            if s.transpose().mul(g).mul(&s) != *g {
                return Err(Error::MalformedDatum(format!(
                    "Gram form is not invariant under the reflection in {a}"
                )));
            }
        }
        Ok(())
    }

    fn simple_coefficients(&self, r: &RationalVector) -> Result<Vec<i64>> {
        let m = RationalMatrix::from_columns(&self.simple_roots);
        let c = m
            .solve_in_span(r)
            .ok_or_else(|| Error::MalformedDatum(format!("root {r} is not in the span of the base")))?;
        c.coords()
            .iter()
            .map(|x| {
                if x.is_integer() {
                    Ok(x.to_integer().to_i64().expect("small coefficient"))
                } else {
                    Err(Error::MalformedDatum(format!("root {r} has non-integral coefficients")))
                }
            })
            .collect()
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_relative(&self) -> bool {
        self.relative
    }

    pub fn gram(&self) -> &GramForm {
        &self.gram
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn simple_roots(&self) -> &[RationalVector] {
        &self.simple_roots
    }

    pub fn simple_coroots(&self) -> &[RationalVector] {
        &self.simple_coroots
    }

    pub fn positive_roots(&self) -> &[RationalVector] {
        &self.positive_roots
    }

    pub fn positive_coefficients(&self) -> &[Vec<i64>] {
        &self.positive_coefficients
    }

    /// Positive roots with multiplicities.
    pub fn positive_roots_with_mult(&self) -> Vec<(RationalVector, u32)> {
        self.positive_roots
            .iter()
            .cloned()
            .zip(self.multiplicities.iter().copied())
            .collect()
    }

    /// All roots with multiplicities, positive ones first.
    pub fn roots(&self) -> Vec<(RationalVector, u32)> {
        let mut out = self.positive_roots_with_mult();
        out.extend(
            self.positive_roots
                .iter()
                .zip(&self.multiplicities)
                .map(|(r, m)| (-r, *m)),
        );
        out
    }

    pub fn multiplicity(&self, r: &RationalVector) -> Option<u32> {
        self.positive_roots
            .iter()
            .zip(&self.multiplicities)
            .find(|(p, _)| *p == r || -*p == *r)
            .map(|(_, m)| *m)
    }

    /// Whether `2α` is also a root.
    pub fn is_divisible(&self, r: &RationalVector) -> bool {
        self.multiplicity(&r.scale(&int(2))).is_some()
    }

    /// `dim G` counted with multiplicities.
    pub fn dim(&self) -> usize {
        self.rank + 2 * self.multiplicities.iter().map(|&m| m as usize).sum::<usize>()
    }

    pub fn group(&self) -> ReductiveGroup {
        ReductiveGroup {
            gram: self.gram.clone(),
            roots: self.roots(),
            relative: self.relative,
        }
    }

    pub fn coroot(&self, r: &RationalVector) -> RationalVector {
        let t = crate::exact_geometry::transport(r, &self.gram).expect("rank checked");
        let n = r.dot(&t);
        t.scale(&(int(2) / n))
    }

    /// The Weyl group, generated by the simple reflections, in shortlex
    /// order of reduced words.
    pub fn weyl_group(&self) -> Result<Vec<WeylElement>> {
        self.weyl_group_with_limit(DEFAULT_WEYL_LIMIT)
    }

    pub fn weyl_group_with_limit(&self, limit: usize) -> Result<Vec<WeylElement>> {
        let gens: Vec<(RationalMatrix, RationalMatrix)> = self
            .simple_roots
            .iter()
            .zip(&self.simple_coroots)
            .map(|(a, c)| (cochar_reflection(a, c), char_reflection(a, c)))
            .collect();
        let id = WeylElement {
            word: vec![],
            cocharacter: RationalMatrix::identity(self.rank),
            character: RationalMatrix::identity(self.rank),
        };
        let mut seen: HashSet<RationalMatrix> = HashSet::from([id.cocharacter.clone()]);
        let mut out = vec![id];
        let mut frontier = 0;
        while frontier < out.len() {
            let cur = out[frontier].clone();
            frontier += 1;
            for (i, (gc, gx)) in gens.iter().enumerate() {
                let cochar = cur.cocharacter.mul(gc);
                if seen.insert(cochar.clone()) {
                    if out.len() >= limit {
                        return Err(Error::SizeLimit {
                            what: "Weyl group",
                            count: out.len() as u128 + 1,
                            limit: limit as u128,
                        });
                    }
                    let mut word = cur.word.clone();
                    word.push(i);
                    out.push(WeylElement {
                        word,
                        cocharacter: cochar,
                        character: cur.character.mul(gx),
                    });
                }
            }
        }
        Ok(out)
    }

    /// The dominant `W`-conjugate of `mu` and the reflections applied, in
    /// order.
    pub fn dominantize(&self, mu: &RationalVector) -> (RationalVector, Vec<usize>) {
        let mut cur = mu.clone();
        let mut word = Vec::new();
        while let Some(i) = self
            .simple_roots
            .iter()
            .position(|a| a.dot(&cur).is_negative())
        {
            cur = reflect_cocharacter(&cur, &self.simple_roots[i], &self.simple_coroots[i]);
            word.push(i);
        }
        (cur, word)
    }

    pub fn is_dominant(&self, mu: &RationalVector) -> bool {
        self.simple_roots.iter().all(|a| !a.dot(mu).is_negative())
    }

    pub fn parabolic(&self, levi: &[usize]) -> Result<ParabolicSpec> {
        let mut levi = levi.to_vec();
        levi.sort_unstable();
        levi.dedup();
        if let Some(&bad) = levi.iter().find(|&&i| i >= self.simple_roots.len()) {
            return Err(Error::BadParabolic(bad));
        }
        Ok(ParabolicSpec { levi })
    }

    pub fn minimal_parabolic(&self) -> ParabolicSpec {
        ParabolicSpec { levi: vec![] }
    }

    /// `P_μ` for dominant `μ`.
    pub fn parabolic_of(&self, mu: &RationalVector) -> ParabolicSpec {
        ParabolicSpec {
            levi: (0..self.simple_roots.len())
                .filter(|&i| self.simple_roots[i].dot(mu).is_zero())
                .collect(),
        }
    }

    /// Indices of simple roots outside the Levi (these restrict to `Δ_P`).
    pub fn delta_p(&self, p: &ParabolicSpec) -> Vec<usize> {
        (0..self.simple_roots.len()).filter(|i| !p.contains(*i)).collect()
    }

    fn in_levi(&self, coeffs: &[i64], p: &ParabolicSpec) -> bool {
        coeffs
            .iter()
            .enumerate()
            .all(|(i, &c)| c == 0 || p.contains(i))
    }

    /// Roots of the Levi, both signs, with multiplicities.
    pub fn levi_roots(&self, p: &ParabolicSpec) -> Vec<(RationalVector, u32)> {
        let pos: Vec<(RationalVector, u32)> = self
            .positive_roots
            .iter()
            .zip(&self.positive_coefficients)
            .zip(&self.multiplicities)
            .filter(|((_, c), _)| self.in_levi(c, p))
            .map(|((r, _), m)| (r.clone(), *m))
            .collect();
        let mut out = pos.clone();
        out.extend(pos.iter().map(|(r, m)| (-r, *m)));
        out
    }

    /// Roots of the unipotent radical `U_P`, with multiplicities.
    pub fn unipotent_roots(&self, p: &ParabolicSpec) -> Vec<(RationalVector, u32)> {
        self.positive_roots
            .iter()
            .zip(&self.positive_coefficients)
            .zip(&self.multiplicities)
            .filter(|((_, c), _)| !self.in_levi(c, p))
            .map(|((r, _), m)| (r.clone(), *m))
            .collect()
    }

    pub fn parabolic_dim(&self, p: &ParabolicSpec) -> usize {
        let levi: usize = self.levi_roots(p).iter().map(|(_, m)| *m as usize).sum();
        let unip: usize = self.unipotent_roots(p).iter().map(|(_, m)| *m as usize).sum();
        self.rank + levi + unip
    }

    /// The Levi of `p` as a datum of the same rank (its centre is kept).
    pub fn levi_datum(&self, p: &ParabolicSpec) -> Self {
        let keep: Vec<usize> = (0..self.positive_roots.len())
            .filter(|&k| self.in_levi(&self.positive_coefficients[k], p))
            .collect();
        let names: Vec<String> = p.levi.iter().map(|&i| simple_name(i)).collect();
        Self {
            label: format!("{}[levi {}]", self.label, names.join(",")),
            rank: self.rank,
            simple_roots: p.levi.iter().map(|&i| self.simple_roots[i].clone()).collect(),
            simple_coroots: p.levi.iter().map(|&i| self.simple_coroots[i].clone()).collect(),
            positive_roots: keep.iter().map(|&k| self.positive_roots[k].clone()).collect(),
            positive_coefficients: keep
                .iter()
                .map(|&k| p.levi.iter().map(|&i| self.positive_coefficients[k][i]).collect())
                .collect(),
            multiplicities: keep.iter().map(|&k| self.multiplicities[k]).collect(),
            gram: self.gram.clone(),
            lattice: self.lattice.clone(),
            factors: vec![],
            relative: self.relative,
        }
    }

    /// Fundamental coweights: `⟨α_i, ϖ̌_j⟩ = δ_ij`, taken in the span of the
    /// simple coroots.
    pub fn fundamental_coweights(&self) -> Vec<RationalVector> {
        let k = self.simple_roots.len();
        let mut cartan = RationalMatrix::zeros(k, k);
        for i in 0..k {
            for j in 0..k {
                cartan.set(i, j, self.simple_roots[i].dot(&self.simple_coroots[j]));
            }
        }
        let inv = cartan.inverse().expect("Cartan matrix is invertible");
        (0..k)
            .map(|j| {
                let mut w = RationalVector::zeros(self.rank);
                for i in 0..k {
                    // ϖ̌_j = Σ_i c_ij α̌_i with Σ_i C[l][i] c_ij = δ_lj
                    w.axpy(inv.get(i, j), &self.simple_coroots[i]);
                }
                w
            })
            .collect()
    }

    /// `μ_P` by the cone problem on `𝔞_P^G`: the min-norm point with
    /// `⟨α, μ⟩ ≥ 1` for the simple roots outside the Levi.
    pub fn mu_p_qp(&self, p: &ParabolicSpec) -> Result<RationalVector> {
        let outside = self.delta_p(p);
        if outside.is_empty() {
            return Ok(RationalVector::zeros(self.rank));
        }
        let levi_dirs: Vec<RationalVector> = p
            .levi
            .iter()
            .map(|&i| crate::exact_geometry::transport(&self.simple_roots[i], &self.gram))
            .collect::<Result<_>>()?;
        // basis of 𝔞_P^G: transports of the outside simple roots, projected
        // off the Levi directions
        let mut basis: Vec<RationalVector> = Vec::new();
        let mut ortho: Vec<RationalVector> = Vec::new();
        for v in &levi_dirs {
            let mut w = v.clone();
            for u in &ortho {
                let c = self.gram.inner(&w, u) / self.gram.norm2(u);
                w.axpy(&-c, u);
            }
            if !w.is_zero() {
                ortho.push(w);
            }
        }
        for &i in &outside {
            let mut w = crate::exact_geometry::transport(&self.simple_roots[i], &self.gram)?;
            for u in &ortho {
                let c = self.gram.inner(&w, u) / self.gram.norm2(u);
                w.axpy(&-c, u);
            }
            basis.push(w);
        }
        let sub_gram = self.gram.restrict(&basis)?;
        let constraints: Vec<RationalVector> = outside
            .iter()
            .map(|&i| {
                RationalVector::new(basis.iter().map(|b| self.simple_roots[i].dot(b)).collect())
            })
            .collect();
        let cert = min_norm_point(&constraints, &sub_gram)?;
        let mut mu = RationalVector::zeros(self.rank);
        for (c, b) in cert.point.coords().iter().zip(&basis) {
            mu.axpy(c, b);
        }
        Ok(mu)
    }

    /// `μ_P = Σ_{α∈Δ_P} μ_{P,α}`, the sum of the dual basis of `Δ_P`.
    pub fn mu_p_closed_form(&self, p: &ParabolicSpec) -> RationalVector {
        let fw = self.fundamental_coweights();
        self.delta_p(p)
            .iter()
            .fold(RationalVector::zeros(self.rank), |acc, &i| &acc + &fw[i])
    }

    /// Simple root indices from names `a`, `b`, `c`, `d`, comma separated.
    pub fn resolve_simple_names(&self, names: &str) -> Result<Vec<usize>> {
        names
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|s| {
                let mut ch = s.chars();
                match (ch.next(), ch.next()) {
                    (Some(c), None) if c.is_ascii_lowercase() => {
                        let i = (c as u8 - b'a') as usize;
                        if i < self.simple_roots.len() {
                            Ok(i)
                        } else {
                            Err(Error::UnknownRootName(s.to_string()))
                        }
                    }
                    _ => Err(Error::UnknownRootName(s.to_string())),
                }
            })
            .collect()
    }

    /// Parses a root expression such as `2a+b` or `-a` into a character.
    pub fn parse_root_expr(&self, expr: &str) -> Result<RationalVector> {
        let bad = || Error::UnknownRootName(expr.to_string());
        let s: String = expr.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(bad());
        }
        let mut out = RationalVector::zeros(self.rank);
        let mut rest = s.as_str();
        let mut first = true;
        while !rest.is_empty() {
            let mut sign = 1i64;
            if let Some(r) = rest.strip_prefix('+') {
                if first {
                    return Err(bad());
                }
                rest = r;
            } else if let Some(r) = rest.strip_prefix('-') {
                sign = -1;
                rest = r;
            } else if !first {
                return Err(bad());
            }
            first = false;
            let digits = rest.chars().take_while(|c| c.is_ascii_digit()).count();
            let coef: i64 = if digits == 0 {
                1
            } else {
                rest[..digits].parse().map_err(|_| bad())?
            };
            rest = &rest[digits..];
            let name = rest.chars().next().ok_or_else(bad)?;
            rest = &rest[name.len_utf8()..];
            let idx = self.resolve_simple_names(&name.to_string())?;
            out.axpy(&int(sign * coef), &self.simple_roots[idx[0]]);
        }
        Ok(out)
    }

    /// Name of a root in terms of the base, e.g. `2a+b`; `None` if `r` is
    /// not a root.
    pub fn root_name(&self, r: &RationalVector) -> Option<String> {
        let (idx, sign) = self
            .positive_roots
            .iter()
            .position(|p| p == r)
            .map(|i| (i, ""))
            .or_else(|| self.positive_roots.iter().position(|p| -p == *r).map(|i| (i, "-")))?;
        let coeffs = &self.positive_coefficients[idx];
        let body: Vec<String> = coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| {
                if c == 1 {
                    simple_name(i)
                } else {
                    format!("{c}{}", simple_name(i))
                }
            })
            .collect();
        let body = body.join("+");
        Some(if sign.is_empty() {
            body
        } else if body.contains('+') {
            format!("-({body})")
        } else {
            format!("-{body}")
        })
    }
}

pub fn simple_name(i: usize) -> String {
    ((b'a' + i as u8) as char).to_string()
}

fn split_lattice(
    kind: LatticeKind,
    simple_roots: &[RationalVector],
    simple_coroots: &[RationalVector],
) -> Result<Lattice> {
    let rank = simple_roots.first().map_or(0, |r| r.len());
    match kind {
        LatticeKind::Standard => Ok(Lattice::standard(rank)),
        LatticeKind::SimplyConnected => Lattice::from_basis(kind, simple_coroots),
        LatticeKind::Adjoint => {
            let a = RationalMatrix::from_rows(simple_roots);
            let inv = a
                .inverse()
                .ok_or_else(|| Error::MalformedDatum("adjoint lattice needs a semisimple datum".into()))?;
            let cols: Vec<RationalVector> = (0..rank).map(|j| inv.column(j)).collect();
            Lattice::from_basis(kind, &cols)
        }
    }
}

/// `μ_P` by both routes; errors if they disagree.
pub fn mu_p(parabolic: &ParabolicSpec, datum: &RootDatum) -> Result<RationalVector> {
    let qp = datum.mu_p_qp(parabolic)?;
    let closed = datum.mu_p_closed_form(parabolic);
    if qp != closed {
        return Err(Error::RouteMismatch {
            what: "mu_P",
            left: qp.to_string(),
            right: closed.to_string(),
        });
    }
    Ok(qp)
}

/// All standard parabolics, by Levi subsets in binary order.
pub fn standard_parabolics(datum: &RootDatum) -> Vec<ParabolicSpec> {
    let k = datum.simple_roots().len();
    (0..1u32 << k)
        .map(|mask| ParabolicSpec {
            levi: (0..k).filter(|i| mask & (1 << i) != 0).collect(),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn v(c: &[i64]) -> RationalVector {
        RationalVector::from_ints(c)
    }

    #[test]
    fn a1_conventions() {
        let d = RootDatum::build("A1").unwrap();
        let roots: Vec<_> = d.roots().into_iter().map(|(r, _)| r).collect();
        assert_eq!(roots, vec![v(&[2]), v(&[-2])]);
        assert_eq!(d.gram().matrix(), &RationalMatrix::from_int_rows(&[&[2]]));
        assert_eq!(d.dim(), 3);
    }

    #[test]
    fn c2_conventions() {
        let d = RootDatum::build("C2").unwrap();
        assert_eq!(
            d.positive_roots(),
            &[v(&[1, -1]), v(&[0, 2]), v(&[1, 1]), v(&[2, 0])]
        );
        assert_eq!(d.gram(), &GramForm::identity(2));
        assert_eq!(d.dim(), 10);
        assert_eq!(d.root_name(&v(&[2, 0])).unwrap(), "2a+b");
        assert_eq!(d.parse_root_expr("2a+b").unwrap(), v(&[2, 0]));
        assert_eq!(d.parse_root_expr("-a").unwrap(), v(&[-1, 1]));
        assert!(d.parse_root_expr("a++b").is_err());
        assert!(d.parse_root_expr("c").is_err());
    }

    #[test]
    fn products_are_block_sums() {
        let d = RootDatum::build("A1xA1").unwrap();
        assert_eq!(d.roots().len(), 4);
        assert_eq!(d.gram().matrix(), &RationalMatrix::from_int_rows(&[&[2, 0], &[0, 2]]));
        assert_eq!(d.factors().len(), 2);
    }

    #[test]
    fn root_counts_of_built_types() {
        for (tag, n) in [("A2", 6), ("A3", 12), ("B2", 8), ("B3", 18), ("C3", 18), ("G2", 12)] {
            assert_eq!(RootDatum::build(tag).unwrap().roots().len(), n, "{tag}");
        }
        assert!(matches!(RootDatum::build("E8"), Err(Error::UnsupportedType(_))));
        assert!(matches!(RootDatum::build("A9"), Err(Error::UnsupportedType(_))));
    }

    #[test]
    fn weyl_group_orders() {
        for (tag, n) in [("A1", 2), ("C2", 8), ("A2", 6), ("A3", 24), ("B3", 48), ("G2", 12)] {
            assert_eq!(RootDatum::build(tag).unwrap().weyl_group().unwrap().len(), n, "{tag}");
        }
        let d = RootDatum::build("A3").unwrap();
        assert!(matches!(
            d.weyl_group_with_limit(10),
            Err(Error::SizeLimit { .. })
        ));
    }

    #[test]
    fn dominantize_examples() {
        let c2 = RootDatum::build("C2").unwrap();
        let (mu, word) = c2.dominantize(&"(1/2,-1/2)".parse().unwrap());
        assert_eq!(mu, "(1/2,1/2)".parse().unwrap());
        assert!(!word.is_empty());
        let dom: RationalVector = "(3/2,1/2)".parse().unwrap();
        assert_eq!(c2.dominantize(&dom), (dom.clone(), vec![]));
        let a1 = RootDatum::build("A1").unwrap();
        assert_eq!(a1.dominantize(&v(&[-1])).0, v(&[1]));
    }

    #[test]
    fn mu_p_examples_c2() {
        let c2 = RootDatum::build("C2").unwrap();
        let p_lambda = c2.parabolic(&[1]).unwrap();
        let siegel = c2.parabolic(&[0]).unwrap();
        assert_eq!(mu_p(&p_lambda, &c2).unwrap(), v(&[1, 0]));
        assert_eq!(mu_p(&siegel, &c2).unwrap(), "(1/2,1/2)".parse().unwrap());
        assert_eq!(mu_p(&c2.parabolic(&[0, 1]).unwrap(), &c2).unwrap(), v(&[0, 0]));
        assert_eq!(mu_p(&c2.minimal_parabolic(), &c2).unwrap(), "(3/2,1/2)".parse().unwrap());
    }

    #[test]
    fn parabolic_dimensions_match_root_count() {
        let c2 = RootDatum::build("C2").unwrap();
        for p in standard_parabolics(&c2) {
            let mu = mu_p(&p, &c2).unwrap();
            let by_pairing = c2.group().parabolic_dim(&mu);
            assert_eq!(c2.parabolic_dim(&p), by_pairing, "{p:?}");
        }
    }

    #[test]
    fn lattices_primitivize_differently() {
        let sc = RootDatum::build("A1").unwrap();
        let ad = sc.with_lattice(LatticeKind::Adjoint).unwrap();
        let half = RationalVector::new(vec![rat(1, 2)]);
        assert_eq!(sc.lattice().primitivize(&half).unwrap(), (v(&[1]), 2));
        assert_eq!(
            ad.lattice().primitivize(&half).unwrap(),
            (RationalVector::new(vec![rat(1, 2)]), 1)
        );
    }

    #[test]
    fn relative_table_validation() {
        let g = GramForm::identity(1);
        let ok = RootDatum::relative_from_table(
            "bc1".into(),
            vec![(v(&[1]), 2), (v(&[2]), 1)],
            vec![v(&[1])],
            g.clone(),
        )
        .unwrap();
        assert!(ok.is_divisible(&v(&[1])));
        assert!(!ok.is_divisible(&v(&[2])));
        assert_eq!(ok.dim(), 7);
        assert!(RootDatum::relative_from_table(
            "bad".into(),
            vec![(v(&[1]), 0)],
            vec![v(&[1])],
            g.clone()
        )
        .is_err());
        assert!(RootDatum::relative_from_table(
            "bad".into(),
            vec![(v(&[1]), 2), (v(&[-1]), 1)],
            vec![v(&[1])],
            g
        )
        .is_err());
    }

    #[test]
    fn scaled_gram_must_stay_invariant() {
        let d = RootDatum::build("A1xA1").unwrap();
        let s = d.with_factor_scales(&[int(1), int(3)]).unwrap();
        assert_eq!(s.gram().matrix(), &RationalMatrix::from_int_rows(&[&[2, 0], &[0, 6]]));
        assert!(d.with_factor_scales(&[int(1)]).is_err());
        assert!(d.with_factor_scales(&[int(1), int(-1)]).is_err());
    }
}
