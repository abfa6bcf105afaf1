//! Satellite-operator calculus on signature data.
//!
//! A pattern descriptor records what the classical obstruction layer can see
//! of a satellite operator: the winding number `d`, the jump function of the
//! pattern applied to the unknot, optionally that knot's Seifert matrix, and
//! (for winding number zero only) an axis class in its Alexander module.
//! The jump function of a satellite is
//! `delta_{P(K)}(theta) = delta_R(theta) + delta_K(d theta)`, which drives
//! composition and iteration. Seifert matrices of composites are recorded
//! only in the winding-zero case, where the satellite shares the pattern
//! knot's Seifert form; they are never synthesized otherwise.

use crate::blanchfield::AxisVector;
use crate::jump::JumpFunction;
use crate::seifert::SeifertMatrix;
use crate::signature::jump_function;
use crate::{Error, Result};

#[derive(Debug, Clone)]
pub struct PatternDescriptor {
    pub name: Option<String>,
    pub winding: i64,
    /// Seifert matrix of `P(U)` when known.
    pub pattern_knot: Option<SeifertMatrix>,
    /// Jump function of `P(U)`.
    pub delta_r: JumpFunction,
    /// Axis class; only meaningful (and only allowed) when `winding = 0`.
    pub axis: Option<AxisVector>,
}

impl PatternDescriptor {
    /// Build a descriptor from the pattern knot `P(U)`, validating the
    /// axis restrictions and computing the jump function.
    pub fn new(
        pattern_knot: SeifertMatrix,
        winding: i64,
        axis: Option<AxisVector>,
        name: Option<String>,
    ) -> Result<Self> {
        if axis.is_some() && winding != 0 {
            return Err(Error::AxisWithNonzeroWinding);
        }
        if let Some(v) = &axis {
            if v.len() != pattern_knot.size() {
                return Err(Error::DimensionMismatch(format!(
                    "axis length {} against pattern matrix size {}",
                    v.len(),
                    pattern_knot.size()
                )));
            }
        }
        let delta_r = jump_function(&pattern_knot)?;
        Ok(PatternDescriptor {
            name,
            winding,
            pattern_knot: Some(pattern_knot),
            delta_r,
            axis,
        })
    }

    /// Descriptor carrying only jump data (no Seifert matrix).
    pub fn from_jump_data(
        delta_r: JumpFunction,
        winding: i64,
        name: Option<String>,
    ) -> Result<Self> {
        Ok(PatternDescriptor {
            name,
            winding,
            pattern_knot: None,
            delta_r,
            axis: None,
        })
    }

    /// The identity operator: winding 1, pattern knot the unknot.
    pub fn identity() -> Self {
        PatternDescriptor {
            name: Some("identity".into()),
            winding: 1,
            pattern_knot: Some(SeifertMatrix::unknot()),
            delta_r: JumpFunction::empty(),
            axis: None,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.winding == 1
            && self.delta_r.is_empty()
            && self
                .pattern_knot
                .as_ref()
                .map_or(false, |k| k.size() == 0)
    }

    /// Validate that a stored jump function matches the pattern knot when
    /// both are present.
    pub fn check_consistency(&self) -> Result<()> {
        if let Some(k) = &self.pattern_knot {
            let recomputed = jump_function(k)?;
            if recomputed != self.delta_r {
                return Err(Error::BadParameter(
                    "descriptor jump data disagrees with the pattern knot".into(),
                ));
            }
        }
        Ok(())
    }
}

/// Jump function of the satellite `P(K)` given the companion's jump
/// function: `delta_R + delta_K(d theta)`. Winding zero forgets the
/// companion entirely.
pub fn satellite_jump(p: &PatternDescriptor, delta_k: &JumpFunction) -> Result<JumpFunction> {
    let d = p.winding.unsigned_abs();
    p.delta_r.add(&delta_k.reparam(d)?)
}

/// Composite pattern `P ∘ Q`: winding numbers multiply and the composite's
/// pattern knot `P(Q(U))` has jump function
/// `delta_{P(U)} + delta_{Q(U)}(d_P theta)`.
pub fn pattern_compose(p: &PatternDescriptor, q: &PatternDescriptor) -> Result<PatternDescriptor> {
    if q.is_identity() {
        return Ok(p.clone());
    }
    if p.is_identity() {
        return Ok(q.clone());
    }
    let winding = p.winding * q.winding;
    let delta = satellite_jump(p, &q.delta_r)?;
    let name = match (&p.name, &q.name) {
        (Some(a), Some(b)) => Some(format!("{a}∘{b}")),
        _ => None,
    };
    if p.winding == 0 {
        // Winding-zero satellites share the pattern knot's Seifert form.
        Ok(PatternDescriptor {
            name,
            winding,
            pattern_knot: p.pattern_knot.clone(),
            delta_r: delta,
            axis: p.axis.clone(),
        })
    } else {
        Ok(PatternDescriptor {
            name,
            winding,
            pattern_knot: None,
            delta_r: delta,
            axis: None,
        })
    }
}

/// `n`-fold iterate of a pattern; `n = 0` is the identity descriptor.
pub fn pattern_iterate(p: &PatternDescriptor, n: u32) -> Result<PatternDescriptor> {
    let mut acc = PatternDescriptor::identity();
    for _ in 0..n {
        acc = pattern_compose(p, &acc)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::angle::Angle;
    use crate::seifert::catalog_get;
    use std::cmp::Ordering;

    fn trefoil_pattern(winding: i64) -> PatternDescriptor {
        PatternDescriptor::new(catalog_get("trefoil").unwrap(), winding, None, Some("tp".into()))
            .unwrap()
    }

    fn trefoil_delta() -> JumpFunction {
        jump_function(&catalog_get("trefoil").unwrap()).unwrap()
    }

    #[test]
    fn axis_validation() {
        let t = catalog_get("trefoil").unwrap();
        let axis = AxisVector::basis(0, 2);
        assert!(PatternDescriptor::new(t.clone(), 0, Some(axis.clone()), None).is_ok());
        assert!(matches!(
            PatternDescriptor::new(t.clone(), 2, Some(axis), None),
            Err(Error::AxisWithNonzeroWinding)
        ));
        let bad_axis = AxisVector::basis(0, 4);
        assert!(matches!(
            PatternDescriptor::new(t, 0, Some(bad_axis), None),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn satellite_jump_cases() {
        // Winding zero: companion invisible.
        let p0 = trefoil_pattern(0);
        let out = satellite_jump(&p0, &trefoil_delta()).unwrap();
        assert_eq!(out, p0.delta_r);
        let out2 = satellite_jump(&p0, &JumpFunction::empty()).unwrap();
        assert_eq!(out2, p0.delta_r);

        // Identity operator: d = 1, R = U.
        let id = PatternDescriptor::identity();
        let out = satellite_jump(&id, &trefoil_delta()).unwrap();
        assert_eq!(out, trefoil_delta());

        // d = 2 trefoil pattern on the trefoil companion.
        let p2 = trefoil_pattern(2);
        let out = satellite_jump(&p2, &trefoil_delta()).unwrap();
        let expect = JumpFunction::from_pairs(vec![
            (Angle::rational_pi_frac(1, 6), -2),
            (Angle::rational_pi_frac(1, 3), -2),
            (Angle::rational_pi_frac(5, 6), -2),
        ])
        .unwrap();
        assert_eq!(out, expect);
    }

    #[test]
    fn negative_winding_uses_evenness() {
        let p = trefoil_pattern(-2);
        let q = trefoil_pattern(2);
        let delta = trefoil_delta();
        assert_eq!(
            satellite_jump(&p, &delta).unwrap(),
            satellite_jump(&q, &delta).unwrap()
        );
    }

    #[test]
    fn composition_laws() {
        let p = trefoil_pattern(2);
        // P ∘ identity = P and identity ∘ P = P.
        let pi = pattern_compose(&p, &PatternDescriptor::identity()).unwrap();
        assert_eq!(pi.winding, p.winding);
        assert_eq!(pi.delta_r, p.delta_r);
        let ip = pattern_compose(&PatternDescriptor::identity(), &p).unwrap();
        assert_eq!(ip.winding, p.winding);
        assert_eq!(ip.delta_r, p.delta_r);

        // Winding multiplicativity.
        let q = trefoil_pattern(3);
        let pq = pattern_compose(&p, &q).unwrap();
        assert_eq!(pq.winding, 6);

        // Satellite of composite = composite of satellites.
        let delta = trefoil_delta();
        let lhs = satellite_jump(&pq, &delta).unwrap();
        let rhs = satellite_jump(&p, &satellite_jump(&q, &delta).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn iteration() {
        let p = trefoil_pattern(2);
        let p0 = pattern_iterate(&p, 0).unwrap();
        assert!(p0.is_identity());

        // Two iterations: winding 4, delta = f_1 of the trefoil pattern.
        let p2 = pattern_iterate(&p, 2).unwrap();
        assert_eq!(p2.winding, 4);
        let f1 = JumpFunction::accumulate(&p.delta_r, 2, 1).unwrap();
        assert_eq!(p2.delta_r, f1);
        // Composite Seifert data is honestly absent for nonzero winding.
        assert!(p2.pattern_knot.is_none());

        // Winding-zero iterates keep delta_R and the Seifert form.
        let z = trefoil_pattern(0);
        let z3 = pattern_iterate(&z, 3).unwrap();
        assert_eq!(z3.winding, 0);
        assert_eq!(z3.delta_r, z.delta_r);
        assert!(z3.pattern_knot.is_some());
    }

    #[test]
    fn composite_support_order() {
        let p = trefoil_pattern(2);
        let p2 = pattern_iterate(&p, 2).unwrap();
        let angles: Vec<Angle> = p2.delta_r.support_angles();
        let expect = [
            Angle::rational_pi_frac(1, 6),
            Angle::rational_pi_frac(1, 3),
            Angle::rational_pi_frac(5, 6),
        ];
        assert_eq!(angles.len(), 3);
        for (a, b) in angles.iter().zip(&expect) {
            assert_eq!(a.try_cmp(b).unwrap(), Ordering::Equal);
        }
        for (_, v) in p2.delta_r.support() {
            assert_eq!(*v, -2);
        }
    }
}
