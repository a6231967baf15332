//! Twist systems and φ-isotopes of graded left quasigroups and biracks.
//!
//! A twist system assigns a permutation `φ_s` to every block `s` of a
//! grading. Generators have unit degree, so `φ^{|x|} = φ_{block(x)}`.
//!
//! Two validation levels exist. The weak level (commuting, degree
//! preserving, grading compatible with `∘`) is what non-degeneracy of the
//! isotope needs. The strong level additionally asks every `φ_s` to be a
//! graded automorphism with `L_{φ_s(x)} = L_x`; this is what right
//! cyclicity, lri and the birack isotope need.

use crate::birack::Birack;
use crate::error::{Error, Hypothesis, Result, TwistFailure};
use crate::structures::{CayleyTable, Elem, Grading, LeftQuasigroup, Perm};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct TwistSystem {
    grading: Grading,
    phis: Vec<Perm>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TwistLevel {
    Weak,
    Strong,
}

/// Every condition a twist system failed, in check order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TwistVerdict {
    pub failures: Vec<TwistFailure>,
}

impl TwistVerdict {
    pub fn is_valid(&self) -> bool {
        self.failures.is_empty()
    }
}

impl TwistSystem {
    pub fn new(grading: Grading, phis: Vec<Perm>) -> Result<Self> {
        if phis.len() != grading.p() {
            return Err(Error::ShapeMismatch(format!(
                "{} permutations for {} blocks",
                phis.len(),
                grading.p()
            )));
        }
        if let Some(phi) = phis.iter().find(|phi| phi.len() != grading.n()) {
            return Err(Error::ShapeMismatch(format!(
                "permutation of length {} on a carrier of size {}",
                phi.len(),
                grading.n()
            )));
        }
        Ok(TwistSystem { grading, phis })
    }

    pub fn identity(grading: Grading) -> Self {
        let phis = vec![Perm::identity(grading.n()); grading.p()];
        TwistSystem { grading, phis }
    }

    pub fn grading(&self) -> &Grading {
        &self.grading
    }

    pub fn phis(&self) -> &[Perm] {
        &self.phis
    }

    pub fn n(&self) -> usize {
        self.grading.n()
    }

    /// `φ_s` for a block `s` in `1..=p`.
    pub fn phi(&self, s: usize) -> &Perm {
        &self.phis[s - 1]
    }

    /// `φ^{|x|}`.
    #[inline]
    pub fn phi_of(&self, x: Elem) -> &Perm {
        &self.phis[self.grading.block(x) - 1]
    }

    /// `φ^α = φ_1^{α_1} ⋯ φ_p^{α_p}` for an integer exponent vector.
    pub fn power(&self, alpha: &[i64]) -> Perm {
        assert_eq!(alpha.len(), self.phis.len());
        self.phis
            .iter()
            .zip(alpha)
            .fold(Perm::identity(self.n()), |acc, (phi, &a)| {
                acc.compose(&phi.pow(a))
            })
    }

    /// Conditions on the twist system alone: commuting and degree preserving.
    pub fn intrinsic_failures(&self) -> Vec<TwistFailure> {
        let mut out = Vec::new();
        for (i, a) in self.phis.iter().enumerate() {
            for (j, b) in self.phis.iter().enumerate().skip(i + 1) {
                if !a.commutes_with(b) {
                    out.push(TwistFailure::NotCommuting { s: i + 1, t: j + 1 });
                }
            }
        }
        for (i, phi) in self.phis.iter().enumerate() {
            if let Some(x) =
                (0..self.n()).find(|&x| self.grading.block(phi.apply(x)) != self.grading.block(x))
            {
                out.push(TwistFailure::NotDegreePreserving { s: i + 1, x });
            }
        }
        out
    }
}

/// Checks `t` against `q` at the requested level.
pub fn validate_twist_system(
    q: &LeftQuasigroup,
    t: &TwistSystem,
    level: TwistLevel,
) -> Result<TwistVerdict> {
    if q.n() != t.n() {
        return Err(Error::ShapeMismatch(format!(
            "quasigroup has {} elements, twist system {}",
            q.n(),
            t.n()
        )));
    }
    let mut failures = Vec::new();
    if !q.is_graded(t.grading()) {
        failures.push(TwistFailure::GradingIncompatible);
    }
    failures.extend(t.intrinsic_failures());
    if level == TwistLevel::Strong {
        failures.extend(strong_failures(q, t));
    }
    Ok(TwistVerdict { failures })
}

fn strong_failures(q: &LeftQuasigroup, t: &TwistSystem) -> Vec<TwistFailure> {
    let mut out = Vec::new();
    for (i, phi) in t.phis().iter().enumerate() {
        let s = i + 1;
        if !q.is_automorphism(phi, None) {
            out.push(TwistFailure::NotAutomorphism { s });
        }
        if let Some(x) = (0..q.n()).find(|&x| q.circ().row(phi.apply(x)) != q.circ().row(x)) {
            out.push(TwistFailure::TranslationNotInvariant { s, x });
        }
    }
    out
}

fn require(verdict: TwistVerdict) -> Result<()> {
    if verdict.is_valid() {
        Ok(())
    } else {
        Err(Error::HypothesisViolated(
            verdict
                .failures
                .into_iter()
                .map(Hypothesis::Twist)
                .collect(),
        ))
    }
}

/// `x ∗ y = L_x φ^{|x|}(y)`, with `x \∗ y = φ^{-|x|} L_x^{-1}(y)`.
/// Requires the weak conditions.
pub fn isotope_quasigroup(q: &LeftQuasigroup, t: &TwistSystem) -> Result<LeftQuasigroup> {
    require(validate_twist_system(q, t, TwistLevel::Weak)?)?;
    Ok(isotope_table(q, t))
}

fn isotope_table(q: &LeftQuasigroup, t: &TwistSystem) -> LeftQuasigroup {
    let star = CayleyTable::from_fn(q.n(), |x, y| q.op(x, t.phi_of(x).apply(y)));
    LeftQuasigroup::validate(star).expect("rows of the isotope are permutations")
}

/// Every failed hypothesis of the birack isotope construction.
pub fn isotope_hypotheses(b: &Birack, g: &Grading, t: &TwistSystem) -> Result<Vec<Hypothesis>> {
    let mut out = Vec::new();
    if !b.is_birack() {
        out.push(Hypothesis::Birack);
    }
    if !b.is_involutive() {
        out.push(Hypothesis::Involutive);
    }
    if !b.is_graded(g) {
        out.push(Hypothesis::Graded);
    }
    if !b.satisfies_lri() {
        out.push(Hypothesis::Lri);
    }
    if t.grading() != g {
        out.push(Hypothesis::GradingMatchesTwist);
    }
    let graded_failed = out.contains(&Hypothesis::Graded);
    let verdict = validate_twist_system(b.left(), t, TwistLevel::Strong)?;
    out.extend(
        verdict
            .failures
            .into_iter()
            .filter(|f| !(graded_failed && *f == TwistFailure::GradingIncompatible))
            .map(Hypothesis::Twist),
    );
    Ok(out)
}

/// The φ-isotope `(X, ∗, \∗, ◇, /◇)` with
/// `x ◇ y = φ^{-|y|}(x • φ^{|x|}(y))`.
///
/// Requires `b` a birack, involutive, graded by `g`, satisfying lri, and `t` strongly
/// valid over `g`. The result is again a graded involutive birack with lri.
pub fn isotope_birack(b: &Birack, g: &Grading, t: &TwistSystem) -> Result<Birack> {
    let failed = isotope_hypotheses(b, g, t)?;
    if !failed.is_empty() {
        return Err(Error::HypothesisViolated(failed));
    }
    isotope_formulas(b, t)
}

/// The isotope formulas applied without checking any hypothesis. Fails with
/// `ColumnNotBijective` when the diamond table is not a right quasigroup.
pub fn isotope_formulas(b: &Birack, t: &TwistSystem) -> Result<Birack> {
    if b.n() != t.n() {
        return Err(Error::ShapeMismatch(
            "birack and twist system sizes differ".into(),
        ));
    }
    let left = isotope_table(b.left(), t);
    let diamond = CayleyTable::from_fn(b.n(), |x, y| {
        t.phi_of(y)
            .inverse()
            .apply(b.bullet_op(x, t.phi_of(x).apply(y)))
    });
    Birack::from_tables(left.circ().clone(), diamond)
}

/// The L-class grading with `φ_s = L_{x_s}^{-1}`, `x_s` the least element
/// of class `s`. Its isotope is the projection birack.
pub fn canonical_distributive_twist(b: &Birack) -> Result<(Grading, TwistSystem)> {
    let g = b.left().l_equivalence_partition();
    let reps: Vec<Elem> = (1..=g.p()).map(|s| g.members(s)[0]).collect();
    distributive_twist_with_representatives(b, &reps)
}

/// As [`canonical_distributive_twist`] with an explicit representative for
/// every class, `reps[s-1] ∈ X_s`.
pub fn distributive_twist_with_representatives(
    b: &Birack,
    reps: &[Elem],
) -> Result<(Grading, TwistSystem)> {
    if !b.is_involutive() {
        return Err(Error::NotInvolutive);
    }
    if !b.is_distributive() {
        return Err(Error::NotDistributive);
    }
    let g = b.left().l_equivalence_partition();
    if reps.len() != g.p()
        || reps
            .iter()
            .enumerate()
            .any(|(i, &x)| x >= g.n() || g.block(x) != i + 1)
    {
        return Err(Error::ShapeMismatch(format!(
            "representatives {reps:?} do not pick one element per class of {:?}",
            g.blocks()
        )));
    }
    let phis = reps
        .iter()
        .map(|&x| b.left().translation(x).inverse())
        .collect();
    let t = TwistSystem::new(g.clone(), phis)?;
    Ok((g, t))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lq(rows: &[&[usize]]) -> LeftQuasigroup {
        let rows: Vec<Vec<usize>> = rows.iter().map(|r| r.to_vec()).collect();
        LeftQuasigroup::from_rows(&rows).unwrap()
    }

    fn p2() -> LeftQuasigroup {
        lq(&[&[1, 0], &[1, 0]])
    }

    fn d4() -> LeftQuasigroup {
        lq(&[&[1, 0, 3, 2], &[1, 0, 3, 2], &[0, 1, 2, 3], &[0, 1, 2, 3]])
    }

    fn perm(v: &[usize]) -> Perm {
        Perm::new(v.to_vec()).unwrap()
    }

    fn d4_grading() -> Grading {
        Grading::new(vec![1, 1, 2, 2]).unwrap()
    }

    fn d4_twist() -> TwistSystem {
        TwistSystem::new(d4_grading(), vec![perm(&[1, 0, 3, 2]), Perm::identity(4)]).unwrap()
    }

    #[test]
    fn validation_examples() {
        let t = TwistSystem::new(Grading::trivial(2), vec![perm(&[1, 0])]).unwrap();
        assert!(validate_twist_system(&p2(), &t, TwistLevel::Strong)
            .unwrap()
            .is_valid());

        let id = TwistSystem::identity(d4_grading());
        assert!(validate_twist_system(&d4(), &id, TwistLevel::Strong)
            .unwrap()
            .is_valid());

        let t =
            TwistSystem::new(d4_grading(), vec![perm(&[2, 3, 0, 1]), Perm::identity(4)]).unwrap();
        let v = validate_twist_system(&d4(), &t, TwistLevel::Weak).unwrap();
        assert_eq!(
            v.failures,
            vec![TwistFailure::NotDegreePreserving { s: 1, x: 0 }]
        );
    }

    #[test]
    fn shape_errors() {
        assert!(matches!(
            TwistSystem::new(d4_grading(), vec![Perm::identity(4)]),
            Err(Error::ShapeMismatch(_))
        ));
        assert!(matches!(
            validate_twist_system(&p2(), &d4_twist(), TwistLevel::Weak),
            Err(Error::ShapeMismatch(_))
        ));
    }

    #[test]
    fn non_commuting_reported() {
        let g = Grading::new(vec![1, 1, 1, 2, 2, 2]).unwrap();
        let t = TwistSystem::new(
            g,
            vec![perm(&[1, 0, 2, 3, 4, 5]), perm(&[0, 2, 1, 3, 4, 5])],
        )
        .unwrap();
        let q = LeftQuasigroup::trivial(6);
        let v = validate_twist_system(&q, &t, TwistLevel::Weak).unwrap();
        assert_eq!(v.failures, vec![TwistFailure::NotCommuting { s: 1, t: 2 }]);
    }

    #[test]
    fn strong_level_catches_translation_variance() {
        // trivial grading, σ on the table [[0,1],[1,0]]: L_σ(0) = L_1 ≠ L_0
        let q = lq(&[&[0, 1], &[1, 0]]);
        let t = TwistSystem::new(Grading::trivial(2), vec![perm(&[1, 0])]).unwrap();
        let v = validate_twist_system(&q, &t, TwistLevel::Strong).unwrap();
        assert!(v
            .failures
            .contains(&TwistFailure::TranslationNotInvariant { s: 1, x: 0 }));
        assert!(validate_twist_system(&q, &t, TwistLevel::Weak)
            .unwrap()
            .is_valid());
    }

    #[test]
    fn quasigroup_isotopes() {
        let t = TwistSystem::new(Grading::trivial(2), vec![perm(&[1, 0])]).unwrap();
        assert_eq!(
            isotope_quasigroup(&p2(), &t).unwrap(),
            LeftQuasigroup::trivial(2)
        );
        let id = TwistSystem::identity(d4_grading());
        assert_eq!(isotope_quasigroup(&d4(), &id).unwrap(), d4());
        assert_eq!(
            isotope_quasigroup(&d4(), &d4_twist()).unwrap(),
            LeftQuasigroup::trivial(4)
        );
    }

    #[test]
    fn isotope_division_formula() {
        let q = d4();
        let t =
            TwistSystem::new(d4_grading(), vec![perm(&[1, 0, 3, 2]), perm(&[0, 1, 3, 2])]).unwrap();
        let iso = isotope_quasigroup(&q, &t).unwrap();
        for x in 0..4 {
            for y in 0..4 {
                assert_eq!(iso.div(x, y), t.phi_of(x).inverse().apply(q.div(x, y)));
            }
        }
    }

    #[test]
    fn birack_isotopes() {
        let b = Birack::derive(&p2()).unwrap();
        let t = TwistSystem::new(Grading::trivial(2), vec![perm(&[1, 0])]).unwrap();
        assert_eq!(
            isotope_birack(&b, &Grading::trivial(2), &t).unwrap(),
            Birack::projection(2)
        );

        let d = Birack::derive(&d4()).unwrap();
        let id = TwistSystem::identity(d4_grading());
        assert_eq!(isotope_birack(&d, &d4_grading(), &id).unwrap(), d);
        assert_eq!(
            isotope_birack(&d, &d4_grading(), &d4_twist()).unwrap(),
            Birack::projection(4)
        );
    }

    #[test]
    fn birack_isotope_hypotheses() {
        let d = Birack::derive(&d4()).unwrap();
        let bad = Grading::new(vec![1, 2, 1, 2]).unwrap();
        let t = TwistSystem::identity(bad.clone());
        let err = isotope_birack(&d, &bad, &t).unwrap_err();
        assert_eq!(err, Error::HypothesisViolated(vec![Hypothesis::Graded]));

        let err = isotope_birack(&d, &Grading::trivial(4), &d4_twist()).unwrap_err();
        assert!(
            matches!(err, Error::HypothesisViolated(ref h) if h.contains(&Hypothesis::GradingMatchesTwist))
        );

        let non_involutive =
            Birack::from_rows(&[vec![0, 1], vec![1, 0]], &[vec![0, 0], vec![1, 1]]).unwrap();
        let t = TwistSystem::identity(Grading::trivial(2));
        let err = isotope_birack(&non_involutive, &Grading::trivial(2), &t).unwrap_err();
        assert!(
            matches!(err, Error::HypothesisViolated(ref h) if h.contains(&Hypothesis::Involutive))
        );
    }

    #[test]
    fn canonical_twists() {
        let (g, t) = canonical_distributive_twist(&Birack::derive(&p2()).unwrap()).unwrap();
        assert_eq!(g.blocks(), &[1, 1]);
        assert_eq!(t.phis(), &[perm(&[1, 0])]);

        let (g, t) = canonical_distributive_twist(&Birack::derive(&d4()).unwrap()).unwrap();
        assert_eq!(g.blocks(), &[1, 1, 2, 2]);
        assert_eq!(t.phis(), &[perm(&[1, 0, 3, 2]), perm(&[0, 1, 2, 3])]);

        let (g, t) = canonical_distributive_twist(&Birack::projection(3)).unwrap();
        assert_eq!(g.blocks(), &[1, 1, 1]);
        assert_eq!(t.phis(), &[Perm::identity(3)]);
    }

    #[test]
    fn canonical_twist_rejects_non_distributive() {
        let non_involutive =
            Birack::from_rows(&[vec![0, 1], vec![1, 0]], &[vec![0, 0], vec![1, 1]]).unwrap();
        assert_eq!(
            canonical_distributive_twist(&non_involutive),
            Err(Error::NotInvolutive)
        );
    }

    #[test]
    fn every_representative_choice_collapses_d4() {
        let d = Birack::derive(&d4()).unwrap();
        for r1 in [0, 1] {
            for r2 in [2, 3] {
                let (g, t) = distributive_twist_with_representatives(&d, &[r1, r2]).unwrap();
                assert!(isotope_birack(&d, &g, &t).unwrap().is_projection());
            }
        }
        assert!(distributive_twist_with_representatives(&d, &[2, 0]).is_err());
    }

    #[test]
    fn power_of_unit_degree_is_phi_of_block() {
        let t = d4_twist();
        assert_eq!(t.power(&[1, 0]), *t.phi(1));
        assert_eq!(t.power(&[2, 5]), Perm::identity(4));
        assert_eq!(t.power(&[-1, 0]), t.phi(1).inverse());
    }
}
