//! Weight-zero part of `M ⊗_{A^e} P` and `Hom_{A^e}(P, M)` for the total
//! complex `P` of the resolution, with `M = A` or `M = Ag` for a torus
//! element `g`.
//!
//! Every component is a copy of `k[h]` (the coefficient of a fixed monomial
//! in `x` or `y`), and every block of the differential has the form
//! `p -> sum_s F_s(h) sigma^s(p)`.

use std::collections::BTreeMap;

use super::bimodule::{mono_element, wedge_degree, wedge_name, wedge_weight, wedges_of_degree, FreeElem, Interaction, Resolution, Wedge};
use super::{ComplexKind, Variant};
use crate::algebra::Gwa;
use crate::error::Result;
use crate::field::Scalar;
use crate::linalg::{Matrix, TruncatedMap, TruncatedSpace};
use crate::poly::{Poly, ShiftSigma};

/// `p -> sum_s F_s sigma^s(p)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ShiftOperator {
    parts: BTreeMap<i64, Poly>,
}

impl ShiftOperator {
    pub fn is_zero(&self) -> bool {
        self.parts.is_empty()
    }

    fn add(&mut self, shift: i64, f: Poly) {
        let entry = self.parts.entry(shift).or_insert_with(Poly::zero);
        *entry = &*entry + &f;
        if entry.is_zero() {
            self.parts.remove(&shift);
        }
    }

    pub fn apply(&self, p: &Poly, sigma: &ShiftSigma) -> Poly {
        self.parts
            .iter()
            .fold(Poly::zero(), |acc, (&s, f)| &acc + &(f * &sigma.pow(p, s)))
    }

    /// Largest degree of a multiplier.
    pub fn degree_raise(&self) -> usize {
        self.parts.values().filter_map(Poly::degree).max().unwrap_or(0)
    }
}

/// A summand `(row q, e_S)` of a total degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Component {
    pub row: usize,
    pub wedge: Wedge,
}

impl Component {
    pub fn degree(&self) -> usize {
        wedge_degree(self.wedge) + 2 * self.row
    }

    /// Weight of the algebra coefficient carried by this summand.
    fn coefficient_weight(&self, variant: Variant) -> i64 {
        match variant {
            Variant::Homology => -wedge_weight(self.wedge),
            Variant::Cohomology => wedge_weight(self.wedge),
        }
    }

    pub fn label(&self, variant: Variant) -> String {
        let mono = match self.coefficient_weight(variant) {
            1 => "x ",
            -1 => "y ",
            _ => "",
        };
        format!("row {}: {}{}", self.row, mono, wedge_name(self.wedge))
    }
}

/// Summands of total degree `p`, rows ascending.
pub fn components(p: usize) -> Vec<Component> {
    (0..=p / 2)
        .flat_map(|q| {
            let i = p - 2 * q;
            wedges_of_degree(i)
                .into_iter()
                .map(move |w| Component { row: q, wedge: w })
        })
        .collect()
}

/// Differentials of the weight-zero complex as blocks of shift operators.
#[derive(Clone, Debug)]
pub struct WeightZeroComplex {
    alg: Gwa,
    kind: ComplexKind,
    interaction: Interaction,
    horizontal: BTreeMap<Wedge, FreeElem>,
    vertical: BTreeMap<Wedge, FreeElem>,
    /// Restrict to the row `q = 0` (the `E^1` computation).
    row_only: bool,
}

impl WeightZeroComplex {
    pub fn new(alg: &Gwa, kind: &ComplexKind) -> Result<Self> {
        let res = Resolution::new(alg)?;
        Ok(WeightZeroComplex {
            alg: alg.clone(),
            kind: kind.clone(),
            interaction: res.interaction,
            horizontal: res.horizontal,
            vertical: res.vertical,
            row_only: false,
        })
    }

    pub fn rows_only(mut self) -> Self {
        self.row_only = true;
        self
    }

    pub fn algebra(&self) -> &Gwa {
        &self.alg
    }

    pub fn kind(&self) -> &ComplexKind {
        &self.kind
    }

    pub fn interaction(&self) -> Interaction {
        self.interaction
    }

    pub fn field_order(&self) -> u32 {
        let w = self.kind.twist.as_ref().map_or(1, Scalar::order);
        self.alg.field_order().max(w)
    }

    pub fn components(&self, p: usize) -> Vec<Component> {
        let all = components(p);
        if self.row_only {
            all.into_iter().filter(|c| c.row == 0).collect()
        } else {
            all
        }
    }

    /// Degree reached by the differential leaving degree `p`, if any.
    pub fn target_degree(&self, p: usize) -> Option<usize> {
        match self.kind.variant {
            Variant::Homology => p.checked_sub(1),
            Variant::Cohomology => Some(p + 1),
        }
    }

    fn twist_power(&self, j: i64) -> Scalar {
        match &self.kind.twist {
            Some(w) => w.powi(j).expect("nonzero twist"),
            None => Scalar::one(),
        }
    }

    /// Sign attached to the vertical map leaving `(row, e_S)` in the chain
    /// direction.
    fn vertical_sign(&self, wedge: Wedge) -> Scalar {
        match self.interaction {
            Interaction::Anticommute => Scalar::one(),
            Interaction::Commute => Scalar::from_i64(if wedge_degree(wedge) % 2 == 0 { 1 } else { -1 }),
        }
    }

    /// Chain-level images `(target row, wedge image, sign)` of the
    /// generator at `src` under the total differential of the resolution.
    fn chain_images(&self, src: Component) -> Vec<(usize, &FreeElem, Scalar)> {
        let mut out = vec![(src.row, &self.horizontal[&src.wedge], Scalar::one())];
        if src.row > 0 && !self.row_only {
            out.push((src.row - 1, &self.vertical[&src.wedge], self.vertical_sign(src.wedge)));
        }
        out
    }

    /// Blocks of the differential leaving degree `p`, keyed by
    /// `(source index, target index)` in [`Self::components`] order.
    pub fn blocks(&self, p: usize) -> BTreeMap<(usize, usize), ShiftOperator> {
        let mut blocks: BTreeMap<(usize, usize), ShiftOperator> = BTreeMap::new();
        let Some(target) = self.target_degree(p) else {
            return blocks;
        };
        let src_comps = self.components(p);
        let tgt_comps = self.components(target);
        let index = |c: &Component| tgt_comps.iter().position(|t| t == c);
        match self.kind.variant {
            Variant::Homology => {
                for (si, &src) in src_comps.iter().enumerate() {
                    let cw = src.coefficient_weight(Variant::Homology);
                    for (row, img, sign) in self.chain_images(src) {
                        for (s, l, r, c) in img.terms() {
                            let tgt = Component { row, wedge: s };
                            let Some(ti) = index(&tgt) else { continue };
                            // c · R (p M) g(L) = c w^{jL} h^{iR} sigma^{jR}(p) [M_{jR} M L]
                            let e = self.alg.mul(
                                &self.alg.mul(&mono_element((r.0, 0)), &mono_element((cw, 0))),
                                &mono_element(l),
                            );
                            let coef = e.coeff(tgt.coefficient_weight(Variant::Homology));
                            let scale = &(c * &sign) * &self.twist_power(l.0);
                            let f = (&Poly::monomial(Scalar::one(), r.1) * &coef).scale(&scale);
                            blocks.entry((si, ti)).or_default().add(r.0, f);
                        }
                    }
                }
            }
            Variant::Cohomology => {
                // (delta phi)(e_T) = sum c · L phi(e_S) g(R) over terms of d(e_T)
                for (ti, &t) in tgt_comps.iter().enumerate() {
                    for (row, img, sign) in self.chain_images(t) {
                        for (s, l, r, c) in img.terms() {
                            let src = Component { row, wedge: s };
                            let Some(si) = src_comps.iter().position(|x| *x == src) else {
                                continue;
                            };
                            let cw = src.coefficient_weight(Variant::Cohomology);
                            let e = self.alg.mul(
                                &self.alg.mul(&mono_element((l.0, 0)), &mono_element((cw, 0))),
                                &mono_element(r),
                            );
                            let coef = e.coeff(t.coefficient_weight(Variant::Cohomology));
                            let scale = &(c * &sign) * &self.twist_power(r.0);
                            let f = (&Poly::monomial(Scalar::one(), l.1) * &coef).scale(&scale);
                            blocks.entry((si, ti)).or_default().add(l.0, f);
                        }
                    }
                }
            }
        }
        blocks.retain(|_, op| !op.is_zero());
        blocks
    }

    /// Image of `p` placed in source component `src` of degree `deg`.
    pub fn image(&self, deg: usize, src: usize, p: &Poly) -> Vec<Poly> {
        let n_tgt = self.target_degree(deg).map_or(0, |t| self.components(t).len());
        let mut out = vec![Poly::zero(); n_tgt];
        for ((si, ti), op) in self.blocks(deg) {
            if si == src {
                out[ti] = &out[ti] + &op.apply(p, self.alg.sigma());
            }
        }
        out
    }

    /// Largest degree increase of the differential leaving degree `p`.
    pub fn degree_raise(&self, p: usize) -> usize {
        self.blocks(p)
            .values()
            .map(ShiftOperator::degree_raise)
            .max()
            .unwrap_or(0)
    }

    /// Truncated matrix of the differential leaving degree `p` on
    /// polynomials of degree `<= bound`; the codomain bound is
    /// `bound + max(n + 1, raise)`.
    pub fn matrix(&self, p: usize, bound: usize) -> Result<TruncatedMap> {
        let blocks = self.blocks(p);
        let raise = blocks
            .values()
            .map(ShiftOperator::degree_raise)
            .max()
            .unwrap_or(0)
            .max(self.alg.n() + 1);
        self.matrix_with_codomain(p, bound, bound + raise, &blocks)
    }

    fn matrix_with_codomain(
        &self,
        p: usize,
        bound: usize,
        cod_bound: usize,
        blocks: &BTreeMap<(usize, usize), ShiftOperator>,
    ) -> Result<TruncatedMap> {
        let order = self.field_order();
        let domain = TruncatedSpace::new(order, self.components(p).len(), bound);
        let n_tgt = self.target_degree(p).map_or(0, |t| self.components(t).len());
        let codomain = TruncatedSpace::new(order, n_tgt, cod_bound);
        let sigma = self.alg.sigma();
        let mut m = Matrix::zeros(codomain.dim(), domain.dim());
        let mut powers = Vec::with_capacity(bound + 1);
        // sigma^s(h^k) for every shift in use, built incrementally
        let shifts: Vec<i64> = {
            let mut v: Vec<i64> = blocks.values().flat_map(|op| op.parts.keys().copied()).collect();
            v.sort_unstable();
            v.dedup();
            v
        };
        for s in &shifts {
            let lin = sigma.pow(&Poly::var(), *s);
            let mut cur = Poly::one();
            let mut list = Vec::with_capacity(bound + 1);
            for _ in 0..=bound {
                list.push(cur.clone());
                cur = &cur * &lin;
            }
            powers.push((*s, list));
        }
        let shifted = |s: i64, k: usize| -> &Poly {
            &powers.iter().find(|(t, _)| *t == s).expect("shift present").1[k]
        };
        for (&(si, ti), op) in blocks {
            for k in 0..=bound {
                let col = domain.index(si, k);
                for (&s, f) in &op.parts {
                    let img = f * shifted(s, k);
                    if let Some(deg) = img.degree() {
                        if deg > cod_bound {
                            return Err(crate::Error::CodomainTooSmall {
                                bound: cod_bound,
                                degree: deg,
                            });
                        }
                    }
                    for (i, c) in img.coeffs().iter().enumerate() {
                        if !c.is_zero() {
                            m.add_to(codomain.index(ti, i), col, c);
                        }
                    }
                }
            }
        }
        TruncatedMap::new(domain, codomain, m)
    }

    /// Matrix with the codomain bound forced to `cod_bound`.
    pub fn matrix_into(&self, p: usize, bound: usize, cod_bound: usize) -> Result<TruncatedMap> {
        let blocks = self.blocks(p);
        self.matrix_with_codomain(p, bound, cod_bound, &blocks)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gwa(a: &str, h0: Scalar) -> Gwa {
        Gwa::new(Poly::parse(a).unwrap(), h0).unwrap()
    }

    #[test]
    fn component_counts() {
        assert_eq!(components(0).len(), 1);
        assert_eq!(components(1).len(), 3);
        assert_eq!(components(2).len(), 4);
        assert_eq!(components(3).len(), 4);
        assert_eq!(components(4).len(), 4);
        assert_eq!(components(5).len(), 4);
    }

    #[test]
    fn shift_operator_apply() {
        let sigma = ShiftSigma::new(Scalar::one()).unwrap();
        let mut op = ShiftOperator::default();
        op.add(0, Poly::parse("h").unwrap());
        op.add(1, Poly::parse("-h").unwrap());
        // h p - h sigma(p) on p = h gives h
        assert_eq!(op.apply(&Poly::var(), &sigma), Poly::parse("h").unwrap());
        assert_eq!(op.degree_raise(), 1);
    }

    #[test]
    fn matrices_compose_to_zero() {
        let alg = gwa("h^2 - 1", Scalar::from_ratio(1, 2));
        for kind in [
            ComplexKind::homology(),
            ComplexKind::cohomology(),
            ComplexKind::twisted(Variant::Homology, Scalar::zeta(3).unwrap()),
            ComplexKind::twisted(Variant::Cohomology, Scalar::from_i64(-1)),
        ] {
            let cx = WeightZeroComplex::new(&alg, &kind).unwrap();
            for p in 0..5 {
                let Some(t) = cx.target_degree(p) else { continue };
                if cx.target_degree(t).is_none() {
                    continue;
                }
                let first = cx.matrix(p, 4).unwrap();
                let second = cx.matrix(t, first.codomain.bound).unwrap();
                assert!(second.after(&first).unwrap().matrix.is_zero(), "{kind:?} at {p}");
            }
        }
    }
}
