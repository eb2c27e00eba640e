//! The free bimodules `A ⊗ Λ^i V ⊗ A`, `V = span(e_x, e_y, e_h)`, and the
//! generator images of the horizontal (Chevalley-Eilenberg) and vertical
//! differentials of the resolution.

use std::collections::BTreeMap;

use crate::algebra::{Gwa, GwaElement};
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::poly::Poly;

/// Subset of `{x, y, h}` as a bitmask (`x = 1`, `y = 2`, `h = 4`),
/// standing for the wedge of the listed basis vectors in that order.
pub type Wedge = u8;

pub const EX: Wedge = 1;
pub const EY: Wedge = 2;
pub const EH: Wedge = 4;

/// Wedges of each exterior degree, in canonical order.
pub fn wedges_of_degree(i: usize) -> Vec<Wedge> {
    match i {
        0 => vec![0],
        1 => vec![EX, EY, EH],
        2 => vec![EX | EY, EX | EH, EY | EH],
        3 => vec![EX | EY | EH],
        _ => Vec::new(),
    }
}

pub fn wedge_degree(s: Wedge) -> usize {
    s.count_ones() as usize
}

/// Weight of `e_S`: `e_x` counts `+1`, `e_y` counts `-1`.
pub fn wedge_weight(s: Wedge) -> i64 {
    (s & EX != 0) as i64 - (s & EY != 0) as i64
}

pub fn wedge_name(s: Wedge) -> String {
    if s == 0 {
        return "1".into();
    }
    let names: Vec<&str> = [(EX, "e_x"), (EY, "e_y"), (EH, "e_h")]
        .iter()
        .filter(|(b, _)| s & b != 0)
        .map(|(_, n)| *n)
        .collect();
    names.join("^")
}

fn bits(s: Wedge) -> Vec<Wedge> {
    [EX, EY, EH].into_iter().filter(|b| s & b != 0).collect()
}

/// `e_s ∧ e_t` as `(mask, sign)`, or `None` when it vanishes.
pub fn wedge(s: Wedge, t: Wedge) -> Option<(Wedge, i64)> {
    if s & t != 0 {
        return None;
    }
    let inversions = bits(s)
        .iter()
        .map(|&a| bits(t).iter().filter(|&&b| b < a).count())
        .sum::<usize>();
    Some((s | t, if inversions % 2 == 0 { 1 } else { -1 }))
}

/// Wedge of basis vectors in the given order.
fn ordered(list: &[Wedge]) -> Option<(Wedge, i64)> {
    list.iter()
        .try_fold((0 as Wedge, 1i64), |(acc, sign), &b| {
            wedge(acc, b).map(|(m, s)| (m, sign * s))
        })
}

/// Monomial `h^i M_j` keyed as `(j, i)`.
pub type Mono = (i64, usize);

pub fn mono_element((j, i): Mono) -> GwaElement {
    GwaElement::term(Poly::monomial(Scalar::one(), i), j)
}

fn monomials(u: &GwaElement) -> Vec<(Mono, Scalar)> {
    let mut out = Vec::new();
    for (&j, p) in u.terms() {
        for (i, c) in p.coeffs().iter().enumerate() {
            if !c.is_zero() {
                out.push(((j, i), c.clone()));
            }
        }
    }
    out
}

/// Element `sum c · L e_S R` of `A ⊗ Λ V ⊗ A` with `L`, `R` monomials.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FreeElem {
    terms: BTreeMap<(Wedge, Mono, Mono), Scalar>,
}

impl FreeElem {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `1 ⊗ e_S ⊗ 1`.
    pub fn generator(s: Wedge) -> Self {
        let mut out = Self::zero();
        out.add_term(s, (0, 0), (0, 0), Scalar::one());
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (Wedge, Mono, Mono, &Scalar)> {
        self.terms.iter().map(|(&(s, l, r), c)| (s, l, r, c))
    }

    pub fn add_term(&mut self, s: Wedge, l: Mono, r: Mono, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let key = (s, l, r);
        let entry = self.terms.entry(key).or_insert_with(Scalar::zero);
        *entry += &c;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn add_scaled(&mut self, other: &FreeElem, c: &Scalar) {
        for (&(s, l, r), v) in &other.terms {
            self.add_term(s, l, r, v * c);
        }
    }

    /// `c · u e_S v` for algebra elements `u`, `v`.
    pub fn add_product(&mut self, u: &GwaElement, s: Wedge, v: &GwaElement, c: &Scalar) {
        for (l, cl) in monomials(u) {
            for (r, cr) in monomials(v) {
                self.add_term(s, l, r, &(&cl * &cr) * c);
            }
        }
    }

    /// `u · self · v`.
    pub fn sandwich(&self, alg: &Gwa, u: &GwaElement, v: &GwaElement) -> FreeElem {
        let mut out = FreeElem::zero();
        for (&(s, l, r), c) in &self.terms {
            let left = alg.mul(u, &mono_element(l));
            let right = alg.mul(&mono_element(r), v);
            out.add_product(&left, s, &right, c);
        }
        out
    }

    /// Extends generator images `f(e_S)` to a bimodule map.
    pub fn apply(&self, alg: &Gwa, f: impl Fn(Wedge) -> FreeElem) -> FreeElem {
        let mut out = FreeElem::zero();
        for (&(s, l, r), c) in &self.terms {
            let img = f(s).sandwich(alg, &mono_element(l), &mono_element(r));
            out.add_scaled(&img, c);
        }
        out
    }

    /// Right wedge with `e_t` (coefficients stay outside).
    fn wedge_right(&self, t: Wedge) -> FreeElem {
        let mut out = FreeElem::zero();
        for (&(s, l, r), c) in &self.terms {
            if let Some((m, sign)) = wedge(s, t) {
                out.add_term(m, l, r, c * &Scalar::from_i64(sign));
            }
        }
        out
    }
}

/// Generator of `V` matching a single-bit wedge.
fn generator(alg: &Gwa, b: Wedge) -> GwaElement {
    match b {
        EX => alg.x(),
        EY => alg.y(),
        _ => alg.h(),
    }
}

/// `e_p = sum_k p_k sum_{i=0}^{k-1} h^i e_h h^{k-1-i}` for `p ∈ k[h]`.
fn e_of_poly(p: &Poly) -> FreeElem {
    let mut out = FreeElem::zero();
    for (k, c) in p.coeffs().iter().enumerate() {
        for i in 0..k {
            out.add_term(EH, (0, i), (0, k - 1 - i), c.clone());
        }
    }
    out
}

/// `e_{[u, v]}` for basis vectors `u < v`.
fn e_bracket(alg: &Gwa, u: Wedge, v: Wedge) -> FreeElem {
    let h0 = alg.h0().clone();
    match (u, v) {
        (EX, EY) => e_of_poly(&(&alg.sigma().apply(alg.a()) - alg.a())),
        (EX, EH) => {
            let mut out = FreeElem::zero();
            out.add_term(EX, (0, 0), (0, 0), -h0);
            out
        }
        (EY, EH) => {
            let mut out = FreeElem::zero();
            out.add_term(EY, (0, 0), (0, 0), h0);
            out
        }
        _ => unreachable!("bracket of {u} and {v}"),
    }
}

/// Chevalley-Eilenberg image of `1 ⊗ e_T ⊗ 1`.
pub fn horizontal_image(alg: &Gwa, t: Wedge) -> FreeElem {
    let v = bits(t);
    let one = GwaElement::one();
    let mut out = FreeElem::zero();
    for (i, &b) in v.iter().enumerate() {
        let sign = Scalar::from_i64(if i % 2 == 0 { 1 } else { -1 });
        let rest = t & !b;
        let g = generator(alg, b);
        out.add_product(&g, rest, &one, &sign);
        out.add_product(&one, rest, &g, &-&sign);
    }
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            let sign = Scalar::from_i64(if (i + j) % 2 == 0 { 1 } else { -1 });
            let rest = t & !v[i] & !v[j];
            out.add_scaled(&e_bracket(alg, v[i], v[j]).wedge_right(rest), &sign);
        }
    }
    out
}

/// Adds `c · u (e_{b_1} ∧ ... ∧ e_{b_k}) v`.
fn push(out: &mut FreeElem, u: &GwaElement, list: &[Wedge], v: &GwaElement, c: Scalar) {
    if let Some((m, sign)) = ordered(list) {
        out.add_product(u, m, v, &(c * Scalar::from_i64(sign)));
    }
}

fn h_pow(alg: &Gwa, i: usize, shifted: bool) -> GwaElement {
    let p = Poly::monomial(Scalar::one(), i);
    let p = if shifted { alg.sigma().apply(&p) } else { p };
    GwaElement::from_poly(p)
}

/// `sum_k a_k sum_{i<k} L_i (list) R_{k-1-i}` with optional `sigma` on either side.
fn push_a_sum(out: &mut FreeElem, alg: &Gwa, list: &[Wedge], sigma_left: bool, sigma_right: bool, sign: i64) {
    for (k, ak) in alg.a().coeffs().iter().enumerate() {
        for i in 0..k {
            push(
                out,
                &h_pow(alg, i, sigma_left),
                list,
                &h_pow(alg, k - 1 - i, sigma_right),
                ak * &Scalar::from_i64(sign),
            );
        }
    }
}

/// Vertical image of `1 ⊗ e_T ⊗ 1`, landing one exterior degree higher.
pub fn vertical_image(alg: &Gwa, t: Wedge) -> FreeElem {
    let one = GwaElement::one();
    let (x, y) = (alg.x(), alg.y());
    let mut out = FreeElem::zero();
    match t {
        0 => {
            push(&mut out, &y, &[EX], &one, Scalar::one());
            push(&mut out, &one, &[EY], &x, Scalar::one());
            push_a_sum(&mut out, alg, &[EH], false, false, -1);
        }
        EX => {
            push(&mut out, &one, &[EX, EY], &x, -Scalar::one());
            push_a_sum(&mut out, alg, &[EX, EH], true, false, 1);
        }
        EY => {
            push(&mut out, &y, &[EY, EX], &one, -Scalar::one());
            push_a_sum(&mut out, alg, &[EY, EH], false, true, 1);
        }
        EH => {
            push(&mut out, &y, &[EH, EX], &one, -Scalar::one());
            push(&mut out, &one, &[EH, EY], &x, -Scalar::one());
        }
        t if t == EY | EH => push(&mut out, &y, &[EY, EH, EX], &one, Scalar::one()),
        t if t == EX | EH => push(&mut out, &one, &[EX, EH, EY], &x, Scalar::one()),
        t if t == EX | EY => push_a_sum(&mut out, alg, &[EX, EY, EH], true, true, -1),
        _ => {}
    }
    out
}

/// How the vertical maps interact with the horizontal ones.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Interaction {
    Anticommute,
    Commute,
}

/// Generator images of both differentials with the consistency checks
/// `d_h^2 = 0`, `d_v^2 = 0` and `d_h d_v = ± d_v d_h` done on every generator.
#[derive(Clone, Debug)]
pub struct Resolution {
    pub horizontal: BTreeMap<Wedge, FreeElem>,
    pub vertical: BTreeMap<Wedge, FreeElem>,
    pub interaction: Interaction,
}

impl Resolution {
    pub fn new(alg: &Gwa) -> Result<Self> {
        let all: Vec<Wedge> = (0..4).flat_map(wedges_of_degree).collect();
        let horizontal: BTreeMap<_, _> = all.iter().map(|&t| (t, horizontal_image(alg, t))).collect();
        let vertical: BTreeMap<_, _> = all.iter().map(|&t| (t, vertical_image(alg, t))).collect();
        let dh = |s: Wedge| horizontal[&s].clone();
        let dv = |s: Wedge| vertical[&s].clone();
        let mut anti = true;
        let mut comm = true;
        for &t in &all {
            let name = wedge_name(t);
            if !horizontal[&t].apply(alg, dh).is_zero() {
                return Err(Error::NotAComplex(format!("d_h^2 on {name}")));
            }
            if !vertical[&t].apply(alg, dv).is_zero() {
                return Err(Error::NotAComplex(format!("d_v^2 on {name}")));
            }
            let hv = vertical[&t].apply(alg, dh);
            let vh = horizontal[&t].apply(alg, dv);
            let mut sum = hv.clone();
            sum.add_scaled(&vh, &Scalar::one());
            let mut diff = hv;
            diff.add_scaled(&vh, &-Scalar::one());
            anti &= sum.is_zero();
            comm &= diff.is_zero();
        }
        let interaction = match (anti, comm) {
            (true, _) => Interaction::Anticommute,
            (false, true) => Interaction::Commute,
            (false, false) => {
                return Err(Error::NotAComplex(
                    "vertical and horizontal maps neither commute nor anticommute".into(),
                ))
            }
        };
        Ok(Resolution {
            horizontal,
            vertical,
            interaction,
        })
    }
}
