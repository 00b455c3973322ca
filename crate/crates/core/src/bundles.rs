//! Presentation matrices `φ: ⊕ O(-a_j) → ⊕ O(-b_i)` of bundles, their
//! construction, verification and minimization.
//!
//! A matrix has one row per entry of `b` and one column per entry of `a`,
//! both in ascending order. Entry `(i, j)` is zero or a form of degree
//! `a_j − b_i`. The cokernel is a vector bundle exactly when the ideal of
//! maximal minors is the unit ideal or primary to `(x_0, …, x_n)`.

use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::betti::BettiPair;
use crate::error::{Error, Result};
use crate::polyalg::{check_modulus, maximal_minors, Homogeneity, Ideal, Poly, PolyMatrix, MAX_VARS};
use crate::seq::IntSeq;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresMatrix {
    pair: BettiPair,
    m: PolyMatrix,
}

/// The on-disk form of a [`PresMatrix`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub n: u32,
    pub p: u64,
    pub a: IntSeq,
    pub b: IntSeq,
    pub entries: Vec<Vec<String>>,
}

fn check_ring(n: u32, p: u64) -> Result<u32> {
    let p = check_modulus(p)?;
    if n as usize + 1 > MAX_VARS {
        return Err(Error::ShapeError(format!(
            "P^{n} needs {} variables, at most {MAX_VARS} are supported",
            n + 1
        )));
    }
    Ok(p)
}

impl PresMatrix {
    /// Checks the shape `(l + r) × l` and that every nonzero entry `(i, j)` is
    /// homogeneous of degree `a_j − b_i`.
    pub fn new(pair: BettiPair, m: PolyMatrix) -> Result<Self> {
        let (l, rows) = (pair.l(), pair.a().len() + pair.r());
        if m.rows() != rows || m.cols() != l {
            return Err(Error::ShapeError(format!(
                "expected a {rows}x{l} matrix, got {}x{}",
                m.rows(),
                m.cols()
            )));
        }
        if m.nvars() != pair.n() as usize + 1 {
            return Err(Error::ModulusMismatch(format!(
                "P^{} needs {} variables, the matrix has {}",
                pair.n(),
                pair.n() + 1,
                m.nvars()
            )));
        }
        check_ring(pair.n(), m.modulus() as u64)?;
        let (a, b) = (pair.a().as_slice(), pair.b().as_slice());
        for i in 0..rows {
            for j in 0..l {
                let want = a[j] - b[i];
                let ok = match m.get(i, j).homogeneity() {
                    Homogeneity::Zero => true,
                    Homogeneity::Homogeneous(d) => d as i64 == want,
                    Homogeneity::Inhomogeneous => false,
                };
                if !ok {
                    return Err(Error::DegreeMismatch {
                        row: i,
                        col: j,
                        detail: format!("expected zero or a form of degree {want}, got {}", m.get(i, j)),
                    });
                }
            }
        }
        Ok(PresMatrix { pair, m })
    }

    pub fn pair(&self) -> &BettiPair {
        &self.pair
    }

    pub fn matrix(&self) -> &PolyMatrix {
        &self.m
    }

    pub fn modulus(&self) -> u32 {
        self.m.modulus()
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly {
        self.m.get(i, j)
    }

    /// No entry is a nonzero constant.
    pub fn is_minimal(&self) -> bool {
        (0..self.m.rows()).all(|i| (0..self.m.cols()).all(|j| !self.m.get(i, j).is_nonzero_constant()))
    }

    pub fn to_json(&self) -> MatrixJson {
        MatrixJson {
            n: self.pair.n(),
            p: self.modulus() as u64,
            a: self.pair.a().clone(),
            b: self.pair.b().clone(),
            entries: self
                .m
                .to_rows()
                .iter()
                .map(|row| row.iter().map(|f| f.to_string()).collect())
                .collect(),
        }
    }

    pub fn from_json(j: &MatrixJson) -> Result<Self> {
        let p = check_ring(j.n, j.p)?;
        let pair = BettiPair::new(j.n, j.a.clone(), j.b.clone())?;
        let nvars = j.n as usize + 1;
        let rows = j
            .entries
            .iter()
            .map(|row| row.iter().map(|s| Poly::parse(s, p, nvars)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let l = pair.l();
        if rows.len() != pair.b().len() || rows.iter().any(|r| r.len() != l) {
            return Err(Error::ShapeError(format!(
                "expected {} rows of {l} entries",
                pair.b().len()
            )));
        }
        let m = if l == 0 {
            PolyMatrix::zeros(p, nvars, rows.len(), 0)
        } else {
            PolyMatrix::from_rows(p, nvars, rows)?
        };
        PresMatrix::new(pair, m)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("matrix JSON serializes")
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let j: MatrixJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_json(&j)
    }
}

fn nonempty_admissible(pair: &BettiPair) -> Result<()> {
    pair.ensure_admissible()?;
    if pair.a().is_empty() {
        return Err(Error::EmptyA);
    }
    Ok(())
}

/// The staircase matrix with entry `(i + j, i) = x_j^{a_i − b_{i+j}}` for
/// `j = 0..=n`, zero elsewhere.
///
/// Admissibility makes every exponent positive. At a point where `x_k` is
/// the first nonzero coordinate, rows `i + k` form a triangular block with
/// nonzero diagonal, so the matrix has full rank off the origin.
pub fn explicit_matrix(pair: &BettiPair, p: u64) -> Result<PresMatrix> {
    nonempty_admissible(pair)?;
    let p = check_ring(pair.n(), p)?;
    let n = pair.n() as usize;
    let (a, b) = (pair.a().as_slice(), pair.b().as_slice());
    let mut m = PolyMatrix::zeros(p, n + 1, b.len(), a.len());
    for i in 0..a.len() {
        for j in 0..=n {
            let e = a[i] - b[i + j];
            debug_assert!(e >= 1);
            let x = crate::polyalg::Monomial::pure_power(j, e as u16);
            m.set(i + j, i, Poly::term(p, n + 1, x, 1));
        }
    }
    PresMatrix::new(pair.clone(), m)
}

/// A random minimal matrix of the shape of `pair`: entries of positive degree
/// are uniformly random forms, all others zero. Deterministic in `seed`.
pub fn random_matrix(pair: &BettiPair, p: u64, seed: u64) -> Result<PresMatrix> {
    pair.ensure_admissible()?;
    random_minimal_matrix(pair, p, seed)
}

/// Like [`random_matrix`] but without requiring admissibility.
pub fn random_minimal_matrix(pair: &BettiPair, p: u64, seed: u64) -> Result<PresMatrix> {
    let p = check_ring(pair.n(), p)?;
    let nvars = pair.n() as usize + 1;
    let (a, b) = (pair.a().as_slice(), pair.b().as_slice());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut m = PolyMatrix::zeros(p, nvars, b.len(), a.len());
    for (i, &bi) in b.iter().enumerate() {
        for (j, &aj) in a.iter().enumerate() {
            if aj > bi {
                m.set(i, j, Poly::random_form(p, nvars, (aj - bi) as u32, &mut rng));
            }
        }
    }
    PresMatrix::new(pair.clone(), m)
}

/// Whether the cokernel is a vector bundle: the maximal minors generate the
/// unit ideal or an ideal primary to `(x_0, …, x_n)`.
pub fn verify_bundle(m: &PresMatrix) -> bool {
    let l = m.pair.l();
    if l == 0 {
        return true;
    }
    let minors = maximal_minors(&m.m, l).expect("shape checked on construction");
    let gens: Vec<Poly> = minors.into_iter().filter(|f| !f.is_zero()).collect();
    Ideal::new(m.modulus(), m.m.nvars(), gens)
        .expect("minors share the matrix ring")
        .is_m_primary_or_unit()
}

/// Splits off every trivial summand `O(-t) → O(-t)`: while a nonzero
/// constant entry exists, take the one with the smallest `(row, column)`,
/// clear its row by column operations and delete its row and column.
///
/// Fitting ideals are unchanged by this, so the bundle check runs on the
/// smaller minimal matrix. Returns its Betti pair, which generalizes the
/// input pair.
pub fn minimize_presentation(m: &PresMatrix) -> Result<(BettiPair, PresMatrix)> {
    let p = m.modulus();
    let mut mat = m.m.clone();
    let mut a: Vec<i64> = m.pair.a().as_slice().to_vec();
    let mut b: Vec<i64> = m.pair.b().as_slice().to_vec();
    while let Some((i0, j0, u)) = first_constant(&mat) {
        let u_inv = crate::polyalg::inverse(u, p);
        for j in 0..mat.cols() {
            if j == j0 || mat.get(i0, j).is_zero() {
                continue;
            }
            let f = mat.get(i0, j).scale(u_inv as i64);
            for i in 0..mat.rows() {
                let e = mat.get(i, j0);
                if e.is_zero() {
                    continue;
                }
                let updated = mat.get(i, j) - &(&f * e);
                mat.set(i, j, updated);
            }
        }
        mat.remove_row(i0);
        mat.remove_col(j0);
        b.remove(i0);
        a.remove(j0);
    }
    let pair = BettiPair::new(m.pair.n(), a, b)?;
    let small = PresMatrix::new(pair.clone(), mat)?;
    if !verify_bundle(&small) {
        return Err(Error::NotABundle);
    }
    debug_assert!(pair.generalizes(&m.pair).is_some());
    Ok((pair, small))
}

fn first_constant(m: &PolyMatrix) -> Option<(usize, usize, u32)> {
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            match m.get(i, j).constant_value() {
                Some(c) if c != 0 => return Some((i, j, c)),
                _ => {}
            }
        }
    }
    None
}

/// Bounds `(n, max{j | a_l > b_{l+j}})` on the rank of the part of the bundle
/// without line bundle summands.
pub fn split_bound(pair: &BettiPair) -> Result<(u32, usize)> {
    nonempty_admissible(pair)?;
    let a_last = pair.a().last().unwrap();
    let high = pair.b().count_lt(a_last) - pair.l();
    debug_assert!(high >= pair.n() as usize);
    Ok((pair.n(), high))
}

pub fn slope(pair: &BettiPair) -> Ratio<i64> {
    Ratio::new(pair.c1(), pair.r() as i64)
}

/// Which inequality decides semistability of a rank-`n` bundle.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum SemistabilityRule {
    /// `b_1 >= −μ`.
    #[default]
    SignCorrected,
    /// `b_1 >= μ`.
    AsPrinted,
}

/// The slope `c1 / r` and, for `r = n` with nonempty `a`, the semistability
/// verdict under `rule`. Other shapes get no verdict.
pub fn slope_and_rank_n_semistability(pair: &BettiPair, rule: SemistabilityRule) -> (Ratio<i64>, Option<bool>) {
    let mu = slope(pair);
    if pair.r() != pair.n() as usize || pair.a().is_empty() {
        return (mu, None);
    }
    let b1 = Ratio::from_integer(pair.b().first().unwrap());
    let verdict = match rule {
        SemistabilityRule::SignCorrected => b1 >= -mu,
        SemistabilityRule::AsPrinted => b1 >= mu,
    };
    (mu, Some(verdict))
}

/// The one-parameter family `Φ_t = ψ + t·(φ ⊕ Id)` between a random matrix
/// `ψ` for `big` and a random matrix `φ` for `small`, where `big = small + c`
/// and the identity acts on the summand `O(-c)`.
#[derive(Clone, Debug)]
pub struct DeformFamily {
    small: BettiPair,
    big: BettiPair,
    c: IntSeq,
    psi: PresMatrix,
    phi: PolyMatrix,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeformSample {
    pub t: u32,
    /// The minimal Betti pair of `Φ_t`, or `None` if `Φ_t` is not a bundle.
    pub pair: Option<BettiPair>,
}

pub fn deform_family(small: &BettiPair, big: &BettiPair, p: u64, seed: u64) -> Result<DeformFamily> {
    let c = small.generalizes(big).ok_or_else(|| Error::NotGeneralization {
        small: small.to_string(),
        big: big.to_string(),
    })?;
    small.ensure_admissible()?;
    big.ensure_admissible()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let psi = random_matrix(big, p, rng.gen())?;
    let phi_small = random_matrix(small, p, rng.gen())?;
    let p = psi.modulus();
    let nvars = big.n() as usize + 1;

    let cols = embed(small.a(), &c, big.a());
    let rows = embed(small.b(), &c, big.b());
    let mut phi = PolyMatrix::zeros(p, nvars, big.b().len(), big.a().len());
    for (i, &bi) in rows.small.iter().enumerate() {
        for (j, &bj) in cols.small.iter().enumerate() {
            phi.set(bi, bj, phi_small.get(i, j).clone());
        }
    }
    for (&i, &j) in rows.extra.iter().zip(&cols.extra) {
        phi.set(i, j, Poly::one(p, nvars));
    }
    Ok(DeformFamily {
        small: small.clone(),
        big: big.clone(),
        c,
        psi,
        phi,
    })
}

struct Embedding {
    small: Vec<usize>,
    extra: Vec<usize>,
}

/// Positions of `small` and of `c` inside the sorted `big = small + c`:
/// among equal values, the entries of `small` come first.
fn embed(small: &IntSeq, c: &IntSeq, big: &IntSeq) -> Embedding {
    let mut out = Embedding {
        small: Vec::new(),
        extra: Vec::new(),
    };
    let big = big.as_slice();
    let mut k = 0;
    while k < big.len() {
        let v = big[k];
        let run = big[k..].iter().take_while(|&&x| x == v).count();
        let s = small.multiplicity(v);
        debug_assert_eq!(s + c.multiplicity(v), run);
        out.small.extend(k..k + s);
        out.extra.extend(k + s..k + run);
        k += run;
    }
    out
}

impl DeformFamily {
    pub fn small(&self) -> &BettiPair {
        &self.small
    }

    pub fn big(&self) -> &BettiPair {
        &self.big
    }

    pub fn witness(&self) -> &IntSeq {
        &self.c
    }

    pub fn psi(&self) -> &PresMatrix {
        &self.psi
    }

    /// `Φ_t = ψ + t·(φ ⊕ Id)`.
    pub fn at(&self, t: u64) -> PresMatrix {
        let p = self.psi.modulus();
        let t = (t % p as u64) as i64;
        let mut m = self.psi.m.clone();
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                let extra = self.phi.get(i, j);
                if !extra.is_zero() {
                    let v = m.get(i, j) + &extra.scale(t);
                    m.set(i, j, v);
                }
            }
        }
        PresMatrix::new(self.big.clone(), m).expect("the family keeps the shape of big")
    }

    /// Minimal Betti pairs of `Φ_t` at `samples` random nonzero `t`.
    pub fn sample(&self, samples: usize, seed: u64) -> Vec<DeformSample> {
        let p = self.psi.modulus();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..samples)
            .map(|_| {
                let t = rng.gen_range(1..p);
                let pair = minimize_presentation(&self.at(t as u64)).ok().map(|(pr, _)| pr);
                DeformSample { t, pair }
            })
            .collect()
    }
}
