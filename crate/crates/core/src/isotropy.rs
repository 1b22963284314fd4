//! Quaternary difference forms `Q_i(x,y) - Q_j(z,w)`, their local and global
//! (an)isotropy, and the decision whether the forms of a discriminant share a
//! nonzero represented value.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{self, Place};
use crate::classgroup::{self, ClassGroup};
use crate::error::{Error, Result};
use crate::forms::{Discriminant, Form};
use crate::represent::{self, rep_set};

/// `f(x, y) - g(z, w)` diagonalized over the rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuaternaryDiff {
    /// Class indices of `f` and `g`, when built from a class group.
    pub pair: Option<(usize, usize)>,
    pub f: Form,
    pub g: Form,
    /// Rational diagonal from completing the square in each block.
    pub raw: [BigRational; 4],
    /// Squarefree representatives of the square classes of `raw`.
    pub diagonal: [BigInt; 4],
    /// `raw[i] = diagonal[i] * scale[i]^2`.
    pub scale: [BigRational; 4],
}

fn block(f: &Form) -> [BigRational; 2] {
    // a x^2 + b x y + c y^2 = a (x + b y / 2a)^2 + (|Δ| / 4a) y^2
    let a = f.a().clone();
    let abs = -f.disc();
    [
        BigRational::from_integer(a.clone()),
        BigRational::new(abs, a * 4u32),
    ]
}

/// Squarefree integer `d` and rational `s` with `r = d s^2`.
fn square_class(r: &BigRational) -> Result<(BigInt, BigRational)> {
    // r = n/m ~ n m
    let nm = r.numer() * r.denom();
    let d = arith::squarefree_part(&nm)?;
    let s2 = r / BigRational::from_integer(d.clone());
    let (num, den) = (s2.numer().sqrt(), s2.denom().sqrt());
    let s = BigRational::new(num, den);
    debug_assert_eq!(&s * &s, s2);
    Ok((d, s))
}

/// Builds `f(x, y) - g(z, w)` and normalizes its diagonal to squarefree
/// integers.
pub fn difference_form(f: &Form, g: &Form) -> Result<QuaternaryDiff> {
    let [p1, p2] = block(f);
    let [n1, n2] = block(g);
    let raw = [p1, p2, -n1, -n2];
    let mut diagonal: [BigInt; 4] = Default::default();
    let mut scale: [BigRational; 4] = std::array::from_fn(|_| BigRational::one());
    for i in 0..4 {
        let (d, s) = square_class(&raw[i])?;
        diagonal[i] = d;
        scale[i] = s;
    }
    Ok(QuaternaryDiff {
        pair: None,
        f: f.clone(),
        g: g.clone(),
        raw,
        diagonal,
        scale,
    })
}

impl QuaternaryDiff {
    fn with_pair(mut self, i: usize, j: usize) -> Self {
        self.pair = Some((i, j));
        self
    }

    pub fn evaluate(&self, v: &[BigInt; 4]) -> BigInt {
        self.f.eval(&v[0], &v[1]) - self.g.eval(&v[2], &v[3])
    }

    pub fn disc_product(&self) -> BigInt {
        self.diagonal.iter().product()
    }

    /// Places where the local invariants can be nontrivial: the real place and
    /// the primes dividing `2 * prod(diagonal)`.
    pub fn bad_primes(&self) -> Result<Vec<u64>> {
        let n = self.disc_product() * 2;
        let fac = arith::factor(&n)?;
        if let Some(u) = fac.unsplit {
            return Err(Error::TooLarge(format!("cofactor {u} of {n}")));
        }
        Ok(fac.primes.iter().map(|&(p, _)| p).collect())
    }
}

/// `prod_{i<j} (d_i, d_j)_v` over the diagonal.
pub fn hasse_invariant(q: &QuaternaryDiff, place: Place) -> Result<i8> {
    let d = &q.diagonal;
    let mut e = 1;
    for i in 0..4 {
        for j in i + 1..4 {
            e *= arith::hilbert_symbol_int(&d[i], &d[j], place)?;
        }
    }
    Ok(e)
}

/// Local data deciding anisotropy of a quaternary form at `p`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HasseCertificate {
    pub prime: u64,
    pub disc_is_square: bool,
    pub epsilon: i8,
    pub minus_one_pair: i8,
    pub verdict: bool,
}

impl HasseCertificate {
    pub fn compute(q: &QuaternaryDiff, p: u64) -> Result<Self> {
        let disc_is_square = arith::is_padic_square(&q.disc_product(), p);
        let epsilon = hasse_invariant(q, Place::Prime(p))?;
        let m1 = BigInt::from(-1);
        let minus_one_pair = arith::hilbert_symbol_int(&m1, &m1, Place::Prime(p))?;
        Ok(HasseCertificate {
            prime: p,
            disc_is_square,
            epsilon,
            minus_one_pair,
            verdict: disc_is_square && epsilon == -minus_one_pair,
        })
    }

    /// The verdict follows from the recorded fields.
    pub fn is_consistent(&self) -> bool {
        self.verdict == (self.disc_is_square && self.epsilon == -self.minus_one_pair)
    }

    /// The recorded fields are those of `q` at `self.prime`, and the verdict
    /// is anisotropic.
    pub fn recheck(&self, q: &QuaternaryDiff) -> bool {
        self.verdict
            && self.is_consistent()
            && HasseCertificate::compute(q, self.prime).is_ok_and(|c| &c == self)
    }
}

/// First prime at which `q` is anisotropic, if any. Over the reals the form
/// has signature (2,2) and is always isotropic.
pub fn local_obstruction(q: &QuaternaryDiff) -> Result<Option<HasseCertificate>> {
    for p in q.bad_primes()? {
        let cert = HasseCertificate::compute(q, p)?;
        if cert.verdict {
            return Ok(Some(cert));
        }
    }
    Ok(None)
}

/// Outcome of [`is_anisotropic`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Isotropy {
    Anisotropic(HasseCertificate),
    /// A nonzero `(x, y, z, w)` with `f(x, y) = g(z, w)`.
    Isotropic([i64; 4]),
}

impl Isotropy {
    pub fn is_anisotropic(&self) -> bool {
        matches!(self, Isotropy::Anisotropic(_))
    }
}

const WITNESS_BOUNDS: [u64; 5] = [10_000, 100_000, 1_000_000, 10_000_000, 100_000_000];

/// Smallest nonzero value shared by `f` and `g`, with a witness per form.
fn common_value(f: &Form, g: &Form, bounds: &[u64]) -> Result<Option<(u64, [i64; 4])>> {
    for &bound in bounds {
        let r = rep_set(&[f.clone(), g.clone()], bound)?;
        if let Some(&v) = r.values.first() {
            let w = &r.witnesses[&v];
            return Ok(Some((v, [w[0][0], w[0][1], w[1][0], w[1][1]])));
        }
    }
    Ok(None)
}

/// Decides isotropy of `q` over the rationals by Hasse–Minkowski. Isotropic
/// forms come with an explicit integer zero.
pub fn is_anisotropic(q: &QuaternaryDiff) -> Result<Isotropy> {
    if let Some(cert) = local_obstruction(q)? {
        return Ok(Isotropy::Anisotropic(cert));
    }
    match common_value(&q.f, &q.g, &WITNESS_BOUNDS)? {
        Some((_, w)) => Ok(Isotropy::Isotropic(w)),
        None => Err(Error::Consistency(format!(
            "{} - {} is locally isotropic everywhere but no common value <= {} was found",
            q.f,
            q.g,
            WITNESS_BOUNDS[WITNESS_BOUNDS.len() - 1]
        ))),
    }
}

/// Serializable record of one pair's isotropy.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairCertificate {
    pub pair: [usize; 2],
    pub anisotropic: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub prime: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub epsilon: Option<i8>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<[i64; 4]>,
}

impl PairCertificate {
    pub fn new(i: usize, j: usize, iso: &Isotropy) -> Self {
        match iso {
            Isotropy::Anisotropic(c) => PairCertificate {
                pair: [i, j],
                anisotropic: true,
                prime: Some(c.prime),
                epsilon: Some(c.epsilon),
                witness: None,
            },
            Isotropy::Isotropic(w) => PairCertificate {
                pair: [i, j],
                anisotropic: false,
                prime: None,
                epsilon: None,
                witness: Some(*w),
            },
        }
    }
}

/// Which step of the decision produced a verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Branch {
    ClassNumberOne,
    OddClassNumber,
    FundamentalEven,
    Pairwise,
}

/// Whether the forms of a discriminant share only the value 0.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntersectionVerdict {
    pub discriminant: String,
    pub class_number: usize,
    pub trivial: bool,
    pub branch: Branch,
    /// A nonzero value represented by every form, when nontrivial.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<String>,
    /// The anisotropic pair, when trivial.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub certificate: Option<PairCertificate>,
    /// Bound up to which the represented sets were intersected as a cross-check.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub checked_to: Option<u64>,
}

const CROSS_CHECK_BOUND: u64 = 100_000;

fn verify_common(forms: &[Form], w: &BigInt) -> Result<()> {
    for f in forms {
        if represent::represents(f, w).is_none() {
            return Err(Error::Consistency(format!("{f} does not represent {w}")));
        }
    }
    Ok(())
}

/// Decides whether 0 is the only value represented by every reduced form of
/// discriminant `d`.
pub fn trivial_intersection(d: &Discriminant) -> Result<IntersectionVerdict> {
    let group = ClassGroup::new(d)?;
    let h = group.class_number();
    let forms = group.elements();
    let mut verdict = IntersectionVerdict {
        discriminant: d.to_string(),
        class_number: h,
        trivial: false,
        branch: Branch::ClassNumberOne,
        witness: None,
        certificate: None,
        checked_to: None,
    };
    if h == 1 {
        verdict.witness = Some("1".into());
        return Ok(verdict);
    }
    if h % 2 == 1 {
        let w = classgroup::odd_witness(d)?;
        verify_common(forms, &w)?;
        verdict.branch = Branch::OddClassNumber;
        verdict.witness = Some(w.to_string());
        return Ok(verdict);
    }
    if d.is_fundamental() {
        let (i, j, cert) = first_anisotropic_pair(forms)?.ok_or_else(|| {
            Error::Consistency(format!(
                "no anisotropic pair at fundamental Δ = {d} with even h"
            ))
        })?;
        let common = rep_set(forms, CROSS_CHECK_BOUND)?;
        if let Some(v) = common.values.first() {
            return Err(Error::Consistency(format!(
                "{v} is represented by every form of discriminant {d}"
            )));
        }
        verdict.trivial = true;
        verdict.branch = Branch::FundamentalEven;
        verdict.certificate = Some(PairCertificate::new(i, j, &Isotropy::Anisotropic(cert)));
        verdict.checked_to = Some(CROSS_CHECK_BOUND);
        return Ok(verdict);
    }
    pairwise_verdict(&group, verdict)
}

/// The pairwise decision alone, for any `h >= 2`: trivial iff some pair is
/// anisotropic; otherwise a common value is assembled from the values shared
/// by the principal form and each other form.
pub fn trivial_intersection_pairwise(d: &Discriminant) -> Result<IntersectionVerdict> {
    let group = ClassGroup::new(d)?;
    if group.class_number() < 2 {
        return Err(Error::InvalidArgument(format!(
            "pairwise decision needs h >= 2, Δ = {d} has h = 1"
        )));
    }
    let verdict = IntersectionVerdict {
        discriminant: d.to_string(),
        class_number: group.class_number(),
        trivial: false,
        branch: Branch::Pairwise,
        witness: None,
        certificate: None,
        checked_to: None,
    };
    pairwise_verdict(&group, verdict)
}

fn first_anisotropic_pair(forms: &[Form]) -> Result<Option<(usize, usize, HasseCertificate)>> {
    for i in 0..forms.len() {
        for j in i + 1..forms.len() {
            let q = difference_form(&forms[i], &forms[j])?;
            if let Some(cert) = local_obstruction(&q)? {
                return Ok(Some((i, j, cert)));
            }
        }
    }
    Ok(None)
}

fn pairwise_verdict(
    group: &ClassGroup,
    mut verdict: IntersectionVerdict,
) -> Result<IntersectionVerdict> {
    let forms = group.elements();
    verdict.branch = Branch::Pairwise;
    if let Some((i, j, cert)) = first_anisotropic_pair(forms)? {
        verdict.trivial = true;
        verdict.certificate = Some(PairCertificate::new(i, j, &Isotropy::Anisotropic(cert)));
        return Ok(verdict);
    }
    // every pair isotropic: multiply the values the principal form shares
    // with each other class
    let principal = group.index_of(&crate::forms::principal_form(group.discriminant()));
    let p = principal.ok_or_else(|| Error::Consistency("principal form missing".into()))?;
    let mut product = BigInt::one();
    for (k, f) in forms.iter().enumerate() {
        if k == p {
            continue;
        }
        let q = difference_form(&forms[p], f)?;
        match is_anisotropic(&q)? {
            Isotropy::Isotropic(w) => product *= forms[p].eval(&w[0].into(), &w[1].into()),
            Isotropy::Anisotropic(_) => unreachable!("checked above"),
        }
    }
    verify_common(forms, &product)?;
    verdict.witness = Some(product.to_string());
    Ok(verdict)
}

/// Every pair `(i, j)`, `i < j`, of a class group with its isotropy record.
pub fn pair_certificates(d: &Discriminant) -> Result<Vec<PairCertificate>> {
    let group = ClassGroup::new(d)?;
    let forms = group.elements();
    let mut out = Vec::new();
    for i in 0..forms.len() {
        for j in i + 1..forms.len() {
            let q = difference_form(&forms[i], &forms[j])?.with_pair(i, j);
            out.push(PairCertificate::new(i, j, &is_anisotropic(&q)?));
        }
    }
    Ok(out)
}

/// The diagonal form evaluated at the image of `v` under the completing-the-
/// square substitution. Agrees with [`QuaternaryDiff::evaluate`].
pub fn diagonal_value(q: &QuaternaryDiff, v: &[BigInt; 4]) -> BigRational {
    // change of variables X = x + b y / 2a on each block
    let shift = |f: &Form, x: &BigInt, y: &BigInt| {
        BigRational::from_integer(x.clone()) + BigRational::new(f.b() * y, f.a() * 2u32)
    };
    let xs = [
        shift(&q.f, &v[0], &v[1]),
        BigRational::from_integer(v[1].clone()),
        shift(&q.g, &v[2], &v[3]),
        BigRational::from_integer(v[3].clone()),
    ];
    q.raw
        .iter()
        .zip(&xs)
        .map(|(d, x)| d * x * x)
        .fold(BigRational::zero(), |acc, t| acc + t)
}
