use std::sync::OnceLock;

use super::monomial::Monomial;
use super::poly::{Homogeneity, Poly};
use crate::error::{Error, Result};

/// An ideal of `F_p[x_0, …, x_{nvars-1}]` with a lazily computed reduced
/// Gröbner basis.
#[derive(Clone, Debug)]
pub struct Ideal {
    p: u32,
    nvars: usize,
    gens: Vec<Poly>,
    gb: OnceLock<Vec<Poly>>,
}

impl Ideal {
    pub fn new(p: u32, nvars: usize, gens: Vec<Poly>) -> Result<Self> {
        if let Some(g) = gens.iter().find(|g| g.modulus() != p || g.nvars() != nvars) {
            return Err(Error::ModulusMismatch(format!(
                "generator over F_{}[{} vars] in an ideal of F_{p}[{nvars} vars]",
                g.modulus(),
                g.nvars()
            )));
        }
        Ok(Ideal {
            p,
            nvars,
            gens,
            gb: OnceLock::new(),
        })
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn generators(&self) -> &[Poly] {
        &self.gens
    }

    /// The reduced Gröbner basis, monic and sorted by ascending leading
    /// monomial. The unit ideal gives `[1]`, the zero ideal `[]`.
    pub fn groebner(&self) -> &[Poly] {
        self.gb.get_or_init(|| groebner_basis(&self.gens))
    }

    pub fn normal_form(&self, f: &Poly) -> Result<Poly> {
        if f.modulus() != self.p || f.nvars() != self.nvars {
            return Err(Error::ModulusMismatch(format!(
                "F_{}[{} vars] reduced modulo an ideal of F_{}[{} vars]",
                f.modulus(),
                f.nvars(),
                self.p,
                self.nvars
            )));
        }
        Ok(normal_form(f, self.groebner()))
    }

    pub fn contains(&self, f: &Poly) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    pub fn is_unit(&self) -> bool {
        matches!(self.groebner(), [g] if g.is_nonzero_constant())
    }

    /// Whether the ideal is the unit ideal or primary to the irrelevant ideal
    /// `(x_0, …, x_n)`, i.e. its zero set in affine space is at most the
    /// origin. For homogeneous generators this holds exactly when every
    /// variable has a pure power among the leading monomials. Without a
    /// cached basis the computation stops once a partial basis shows this.
    pub fn is_m_primary_or_unit(&self) -> bool {
        debug_assert!(self.gens.iter().all(|g| g.homogeneity() != Homogeneity::Inhomogeneous));
        if let Some(gb) = self.gb.get() {
            return has_all_pure_powers(gb, self.nvars);
        }
        match buchberger(&self.gens, true) {
            Run::Unit | Run::AllPurePowers => true,
            Run::Basis(gb) => {
                let verdict = has_all_pure_powers(&gb, self.nvars);
                let _ = self.gb.set(gb);
                verdict
            }
        }
    }
}

fn has_all_pure_powers(basis: &[Poly], nvars: usize) -> bool {
    if matches!(basis, [g] if g.is_nonzero_constant()) {
        return true;
    }
    let mut seen = vec![false; nvars];
    for g in basis {
        if let Some(i) = g.leading_monomial().and_then(|m| m.pure_power_var()) {
            seen[i] = true;
        }
    }
    seen.iter().all(|&s| s)
}

/// The fully reduced remainder of `f` modulo `basis`. It is unique when
/// `basis` is a Gröbner basis.
pub fn normal_form(f: &Poly, basis: &[Poly]) -> Poly {
    reduce(f, basis.iter())
}

fn reduce<'a>(f: &Poly, basis: impl Iterator<Item = &'a Poly> + Clone) -> Poly {
    let p = f.modulus();
    let mut rem: Vec<(Monomial, i64)> = Vec::new();
    let mut cur = f.clone();
    while let Some((m, c)) = cur.leading_term() {
        let divisor = basis
            .clone()
            .find(|g| g.leading_monomial().is_some_and(|lm| lm.divides(&m)));
        match divisor {
            Some(g) => {
                let (lm, lc) = g.leading_term().unwrap();
                let factor = super::field::mul(c, super::field::inv(lc, p), p);
                cur = cur.add_scaled(g, lm.quotient_of(&m), super::field::neg(factor, p));
            }
            None => {
                rem.push((m, c as i64));
                cur = cur.add_scaled(&Poly::term(p, f.nvars(), m, 1), Monomial::one(), p - c);
            }
        }
    }
    Poly::from_terms(p, f.nvars(), rem)
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

struct State {
    polys: Vec<Poly>,
    active: Vec<bool>,
    pairs: Vec<Pair>,
}

impl State {
    fn lm(&self, i: usize) -> Monomial {
        self.polys[i].leading_monomial().unwrap()
    }

    fn active_polys(&self) -> impl Iterator<Item = &Poly> + Clone {
        self.polys.iter().zip(&self.active).filter(|(_, &a)| a).map(|(g, _)| g)
    }

    /// Adds a monic `h`, reduced modulo the active basis, pruning pairs with
    /// the product and chain criteria.
    fn update(&mut self, h: Poly) {
        let hi = self.polys.len();
        let hlm = h.leading_monomial().unwrap();
        self.polys.push(h);
        self.active.push(false);

        let mut cands: Vec<(usize, Monomial)> = (0..hi)
            .filter(|&g| self.active[g])
            .map(|g| (g, hlm.lcm(&self.lm(g))))
            .collect();
        let mut kept: Vec<(usize, Monomial, bool)> = Vec::new();
        while let Some((g, l)) = cands.pop() {
            let coprime = hlm.is_coprime(&self.lm(g));
            let dominated = cands.iter().any(|(_, o)| o.divides(&l)) || kept.iter().any(|(_, o, _)| o.divides(&l));
            if coprime || !dominated {
                kept.push((g, l, coprime));
            }
        }

        let lms: Vec<Option<Monomial>> = self.polys.iter().map(|g| g.leading_monomial()).collect();
        self.pairs.retain(|pr| {
            let li = lms[pr.i].unwrap().lcm(&hlm);
            let lj = lms[pr.j].unwrap().lcm(&hlm);
            !(hlm.divides(&pr.lcm) && li != pr.lcm && lj != pr.lcm)
        });
        for (g, lcm, coprime) in kept {
            if !coprime {
                self.pairs.push(Pair { i: g, j: hi, lcm });
            }
        }

        for g in 0..hi {
            if self.active[g] && hlm.divides(&self.lm(g)) {
                self.active[g] = false;
            }
        }
        self.active[hi] = true;
    }
}

/// Buchberger's algorithm with the normal selection strategy (smallest lcm
/// first) and the Gebauer–Möller pair criteria, followed by full
/// interreduction.
pub fn groebner_basis(gens: &[Poly]) -> Vec<Poly> {
    match buchberger(gens, false) {
        Run::Basis(b) => b,
        Run::Unit => vec![Poly::one(gens[0].modulus(), gens[0].nvars())],
        Run::AllPurePowers => unreachable!("early exit was not requested"),
    }
}

enum Run {
    Unit,
    /// Leading monomials of a partial basis already contain a pure power of
    /// every variable, so the ideal is primary to the irrelevant ideal.
    AllPurePowers,
    Basis(Vec<Poly>),
}

fn buchberger(gens: &[Poly], early_exit: bool) -> Run {
    let Some(first) = gens.first() else {
        return Run::Basis(Vec::new());
    };
    let nvars = first.nvars();
    let mut st = State {
        polys: Vec::new(),
        active: Vec::new(),
        pairs: Vec::new(),
    };
    let all_pure = |st: &State| {
        let mut seen = vec![false; nvars];
        for (i, g) in st.polys.iter().enumerate() {
            if let Some(v) = st.active[i]
                .then(|| g.leading_monomial().unwrap().pure_power_var())
                .flatten()
            {
                seen[v] = true;
            }
        }
        seen.iter().all(|&x| x)
    };
    let add = |st: &mut State, f: &Poly| -> Option<Run> {
        let h = reduce(f, st.active_polys()).monic();
        if h.is_zero() {
            return None;
        }
        if h.is_nonzero_constant() {
            return Some(Run::Unit);
        }
        st.update(h);
        (early_exit && all_pure(st)).then_some(Run::AllPurePowers)
    };
    for g in gens {
        if let Some(done) = add(&mut st, g) {
            return done;
        }
    }
    while !st.pairs.is_empty() {
        let k = (0..st.pairs.len())
            .min_by(|&x, &y| {
                let (a, b) = (&st.pairs[x], &st.pairs[y]);
                a.lcm.cmp(&b.lcm).then((a.i, a.j).cmp(&(b.i, b.j)))
            })
            .unwrap();
        let pr = st.pairs.swap_remove(k);
        let s = spoly(&st.polys[pr.i], &st.polys[pr.j], pr.lcm);
        if let Some(done) = add(&mut st, &s) {
            return done;
        }
    }
    Run::Basis(interreduce(st.active_polys().cloned().collect()))
}

fn spoly(f: &Poly, g: &Poly, lcm: Monomial) -> Poly {
    let p = f.modulus();
    let fl = f.leading_monomial().unwrap();
    let gl = g.leading_monomial().unwrap();
    let left = f.mul_term(fl.quotient_of(&lcm), 1);
    left.add_scaled(g, gl.quotient_of(&lcm), p - 1)
}

/// Reduces the tail of each element of a minimal basis modulo the others.
fn interreduce(mut basis: Vec<Poly>) -> Vec<Poly> {
    basis.sort_by_key(|g| g.leading_monomial());
    let mut out = Vec::with_capacity(basis.len());
    for (k, g) in basis.iter().enumerate() {
        let others = basis.iter().enumerate().filter(|&(o, _)| o != k).map(|(_, h)| h);
        let (p, nvars) = (g.modulus(), g.nvars());
        let (head, tail) = g.terms().split_first().unwrap();
        let tail = Poly::from_terms(p, nvars, tail.iter().map(|&(m, c)| (m, c as i64)).collect());
        let reduced =
            reduce(&tail, others).add_scaled(&Poly::term(p, nvars, head.0, head.1 as i64), Monomial::one(), 1);
        out.push(reduced.monic());
    }
    out
}
