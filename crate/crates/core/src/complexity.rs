//! Complexity measures.
//!
//! `H_SR`, `H_UNIF` and `H_BOB` only need the sorted gaps, so they accept any
//! [`SortedGaps`] (stochastic profiles or hindsight gaps). `H_P1` also needs
//! each arm's rank and is defined for [`GapProfile`]s.

use crate::error::{BaiError, Result};
use crate::model::{harmonic, GapProfile, SortedGaps};

/// `max_k k / Δ_(k)^2`.
pub fn h_sr<G: SortedGaps + ?Sized>(gaps: &G) -> f64 {
    h_sr_terms(gaps).into_iter().fold(0.0, f64::max)
}

/// `k / Δ_(k)^2` for each sorted position.
pub fn h_sr_terms<G: SortedGaps + ?Sized>(gaps: &G) -> Vec<f64> {
    gaps.sorted_gaps()
        .iter()
        .enumerate()
        .map(|(i, g)| (i + 1) as f64 / (g * g))
        .collect()
}

/// `K / Δ_(1)^2`.
pub fn h_unif<G: SortedGaps + ?Sized>(gaps: &G) -> f64 {
    let d1 = gaps.sorted_gaps()[0];
    gaps.num_arms() as f64 / (d1 * d1)
}

/// `(1/Δ_(1)) max_k k / Δ_(k)`.
pub fn h_bob<G: SortedGaps + ?Sized>(gaps: &G) -> f64 {
    h_bob_terms(gaps).into_iter().fold(0.0, f64::max)
}

/// `k / (Δ_(1) Δ_(k))` for each sorted position.
pub fn h_bob_terms<G: SortedGaps + ?Sized>(gaps: &G) -> Vec<f64> {
    let sorted = gaps.sorted_gaps();
    let d1 = sorted[0];
    // Written as one product so equal gaps give bit-identical H_SR and H_BOB.
    sorted
        .iter()
        .enumerate()
        .map(|(i, g)| (i + 1) as f64 / (d1 * g))
        .collect()
}

/// Per-rank exploration fractions `a_1 = a_2 = 1 >= a_3 >= ... >= a_K > 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct Allocation(Vec<f64>);

impl Allocation {
    pub fn new(a: Vec<f64>) -> Result<Self> {
        if a.len() < 2 {
            return Err(BaiError::domain("an allocation needs at least two entries"));
        }
        if a[0] != 1.0 || a[1] != 1.0 {
            return Err(BaiError::domain("an allocation must start with a_1 = a_2 = 1"));
        }
        if let Some(bad) = a.iter().find(|&&x| !(x > 0.0 && x <= 1.0)) {
            return Err(BaiError::domain(format!("allocation entry {bad} outside (0, 1]")));
        }
        if let Some(i) = a.windows(2).position(|w| w[1] > w[0]) {
            return Err(BaiError::domain(format!(
                "allocation increases at position {}: {} > {}",
                i + 2,
                a[i + 1],
                a[i]
            )));
        }
        Ok(Allocation(a))
    }

    pub fn flat(k: usize) -> Self {
        Allocation(vec![1.0; k])
    }

    /// Clamps `a_i = f(i)` into `(0, 1]` with the first two entries pinned to 1.
    fn from_fn(k: usize, f: impl Fn(usize) -> f64) -> Self {
        let mut a = Vec::with_capacity(k);
        let mut prev = 1.0f64;
        for i in 1..=k {
            let v = if i <= 2 { 1.0 } else { f(i).clamp(f64::MIN_POSITIVE, 1.0).min(prev) };
            a.push(v);
            prev = v;
        }
        Allocation(a)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `a_i` for 1-based `i`; `a_{K+1} = 0`.
    pub fn get(&self, i: usize) -> f64 {
        if i > self.0.len() {
            0.0
        } else {
            self.0[i - 1]
        }
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }
}

/// `H_P1(a)` and the per-arm terms of the max, indexed by zero-based arm.
pub fn h_p1_terms(profile: &GapProfile, alloc: &Allocation) -> Result<Vec<f64>> {
    let k = profile.num_arms();
    if alloc.len() != k {
        return Err(BaiError::domain(format!(
            "allocation has {} entries for {k} arms",
            alloc.len()
        )));
    }
    Allocation::new(alloc.as_slice().to_vec())?;
    let hk = harmonic(k)?;
    // suffix[r] = sum_{i=r}^{K} (a_i - a_{i+1}) i
    let mut suffix = vec![0.0; k + 2];
    for r in (1..=k).rev() {
        suffix[r] = suffix[r + 1] + (alloc.get(r) - alloc.get(r + 1)) * r as f64;
    }
    Ok((0..k)
        .map(|arm| {
            let r = profile.ranks()[arm];
            let a = alloc.get(r);
            let g = profile.gaps()[arm];
            let numerator = suffix[r] + k as f64 * a * g / 24.0;
            numerator / (a * a * g * g) * hk
        })
        .collect())
}

pub fn h_p1_of(profile: &GapProfile, alloc: &Allocation) -> Result<f64> {
    Ok(h_p1_terms(profile, alloc)?.into_iter().fold(0.0, f64::max))
}

/// The four allocation families: flat, `1/i`, `1/√i` and `Δ_(1)/Δ_(i)`.
pub fn allocation_candidates(profile: &GapProfile) -> Vec<Allocation> {
    let k = profile.num_arms();
    let sorted = profile.sorted_gaps();
    vec![
        Allocation::flat(k),
        Allocation::from_fn(k, |i| 1.0 / i as f64),
        Allocation::from_fn(k, |i| 1.0 / (i as f64).sqrt()),
        Allocation::from_fn(k, |i| sorted[0] / sorted[i - 1]),
    ]
}

const GOLDEN: f64 = 0.618_033_988_749_894_9;
const REFINE_SWEEPS: usize = 3;
const GOLDEN_STEPS: usize = 30;

/// Minimizes `H_P1(a)` over the candidate families, then refines the best one
/// by per-coordinate golden-section search inside the monotone box.
pub fn h_p1_min(profile: &GapProfile) -> (f64, Allocation) {
    let mut best = allocation_candidates(profile)
        .into_iter()
        .map(|a| (h_p1_of(profile, &a).expect("candidates are valid"), a))
        .min_by(|x, y| x.0.total_cmp(&y.0))
        .expect("four candidates");
    let k = profile.num_arms();
    let mut a = best.1.as_slice().to_vec();
    let eval = |a: &[f64]| h_p1_of(profile, &Allocation(a.to_vec())).expect("monotone by construction");
    for _ in 0..REFINE_SWEEPS {
        for i in 2..k {
            let hi = a[i - 1];
            let lo = if i + 1 < k { a[i + 1] } else { hi * 1e-6 };
            let at = |x: f64, a: &mut Vec<f64>| {
                a[i] = x;
                eval(a)
            };
            let (mut l, mut h) = (lo, hi);
            let mut trial = a.clone();
            for _ in 0..GOLDEN_STEPS {
                let m1 = h - GOLDEN * (h - l);
                let m2 = l + GOLDEN * (h - l);
                if at(m1, &mut trial) <= at(m2, &mut trial) {
                    h = m2;
                } else {
                    l = m1;
                }
            }
            let x = 0.5 * (l + h);
            let v = at(x, &mut trial);
            if v < best.0 {
                a[i] = x;
                best = (v, Allocation(a.clone()));
            }
        }
    }
    best
}

/// Whether `candidate` lies in the class `Δ_c` around `reference`: every arm
/// within a factor `c` of its reference gap, except at most one arm that is
/// instead within a factor `c` of `Δ_1`.
pub fn class_membership(candidate: &[f64], reference: &GapProfile, c: f64) -> Result<bool> {
    if candidate.len() != reference.num_arms() {
        return Err(BaiError::domain(format!(
            "candidate has {} gaps, reference {}",
            candidate.len(),
            reference.num_arms()
        )));
    }
    if c.is_nan() || c < 1.0 {
        return Err(BaiError::domain(format!("class constant {c} below 1")));
    }
    let within = |x: f64, g: f64| g / c <= x && x <= c * g;
    let failing: Vec<usize> = candidate
        .iter()
        .zip(reference.gaps())
        .enumerate()
        .filter(|(_, (&x, &g))| !within(x, g))
        .map(|(k, _)| k)
        .collect();
    Ok(match failing.as_slice() {
        [] => true,
        [bar] => within(candidate[*bar], reference.min_gap()),
        _ => false,
    })
}

/// All four measures of one profile.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexityReport {
    pub h_sr: f64,
    pub h_unif: f64,
    pub h_bob: f64,
    pub h_p1: f64,
    pub argmin_allocation: Allocation,
    /// `k / Δ_(k)^2` by sorted position.
    pub h_sr_terms: Vec<f64>,
    /// `k / (Δ_(1) Δ_(k))` by sorted position.
    pub h_bob_terms: Vec<f64>,
    /// `H_P1` terms at the argmin, by zero-based arm.
    pub h_p1_terms: Vec<f64>,
}

impl ComplexityReport {
    pub fn of(profile: &GapProfile) -> Self {
        let (h_p1, argmin_allocation) = h_p1_min(profile);
        let h_p1_terms = h_p1_terms(profile, &argmin_allocation).expect("valid argmin");
        ComplexityReport {
            h_sr: h_sr(profile),
            h_unif: h_unif(profile),
            h_bob: h_bob(profile),
            h_p1,
            argmin_allocation,
            h_sr_terms: h_sr_terms(profile),
            h_bob_terms: h_bob_terms(profile),
            h_p1_terms,
        }
    }
}

/// Integer presentation: snap to 1e-6, then round half away from zero.
pub fn present(x: f64) -> i64 {
    ((x * 1e6).round() / 1e6).round() as i64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::environments::{preset, PresetOptions, SetupCGaps, SetupEMode, SetupId};
    use proptest::prelude::*;

    fn profile(id: SetupId) -> GapProfile {
        GapProfile::from_means(&preset(id, PresetOptions::default())).unwrap()
    }

    fn flat(k: usize, gap: f64) -> GapProfile {
        let mut means = vec![0.5];
        means.extend(std::iter::repeat_n(0.5 - gap, k - 1));
        GapProfile::from_means(&means).unwrap()
    }

    #[test]
    fn table_rows() {
        let rows = [
            (SetupId::A, [2000, 2000, 2000]),
            (SetupId::B, [1389, 2083, 3125]),
            (SetupId::D, [400, 500, 938]),
            (SetupId::E, [3200, 3200, 24000]),
            (SetupId::F, [5000, 7692, 50000]),
            (SetupId::G, [4082, 5714, 12000]),
            (SetupId::H, [3200, 22627, 160000]),
        ];
        for (id, want) in rows {
            let p = profile(id);
            assert_eq!([present(h_sr(&p)), present(h_bob(&p)), present(h_unif(&p))], want, "{id}");
        }
    }

    #[test]
    fn geometric_setup_depends_on_gap_rounding() {
        let exact = profile(SetupId::C);
        assert_eq!([present(h_sr(&exact)), present(h_bob(&exact)), present(h_unif(&exact))], [5694, 5694, 11388]);
        let rounded = GapProfile::from_means(&preset(
            SetupId::C,
            PresetOptions {
                setup_c: SetupCGaps::Rounded3,
                ..Default::default()
            },
        ))
        .unwrap();
        assert_eq!(
            [present(h_sr(&rounded)), present(h_bob(&rounded)), present(h_unif(&rounded))],
            [5540, 5540, 11080]
        );
    }

    #[test]
    fn printed_arithmetic_setup_differs() {
        let p = GapProfile::from_means(&preset(
            SetupId::E,
            PresetOptions {
                setup_e: SetupEMode::Printed,
                ..Default::default()
            },
        ))
        .unwrap();
        assert_eq!(present(h_sr(&p)), 800);
    }

    #[test]
    fn presentation_snaps_before_rounding() {
        assert_eq!(present(937.4999999999995), 938);
        assert_eq!(present(937.4999), 937);
        assert_eq!(present(2.5), 3);
    }

    #[test]
    fn flat_regime_is_exact() {
        for k in [2, 5, 20, 64] {
            let p = flat(k, 0.1);
            assert_eq!(h_sr(&p), h_unif(&p));
            assert_eq!(h_bob(&p), h_unif(&p));
        }
    }

    #[test]
    fn square_root_regime() {
        let p = profile(SetupId::H);
        let want = (50f64).sqrt() * h_sr(&p);
        assert!((h_bob(&p) - want).abs() / h_bob(&p) <= 1e-9);
    }

    #[test]
    fn p1_flat_values() {
        let a = profile(SetupId::A);
        let v = h_p1_of(&a, &Allocation::flat(20)).unwrap();
        assert!((v - 7225.4605).abs() < 1e-3, "{v}");
        let two = GapProfile::from_means(&[0.5, 0.4]).unwrap();
        let v = h_p1_of(&two, &Allocation::flat(2)).unwrap();
        assert!((v - 301.25).abs() < 1e-9, "{v}");
    }

    #[test]
    fn p1_family_values() {
        // Frozen from an independent evaluation of the formula.
        let cases = [
            (SetupId::B, [11280.0, 100437.0, 22458.0, 8657.1]),
            (SetupId::D, [2304.5, 5381.8, 2810.6, 1794.1]),
            (SetupId::H, [830845.0, 1672188.0, 300633.0, 215626.0]),
        ];
        for (id, want) in cases {
            let p = profile(id);
            for (a, w) in allocation_candidates(&p).iter().zip(want) {
                let v = h_p1_of(&p, a).unwrap();
                assert!((v - w).abs() / w < 1e-4, "{id}: {v} vs {w}");
            }
        }
    }

    #[test]
    fn monotonicity_is_enforced() {
        let p = profile(SetupId::D);
        let bad = Allocation(vec![1.0, 1.0, 0.5, 0.6, 0.2, 0.1]);
        assert!(h_p1_of(&p, &bad).is_err());
        assert!(Allocation::new(vec![1.0, 0.9, 0.5]).is_err());
        assert!(Allocation::new(vec![1.0, 1.0, 0.0]).is_err());
        assert!(h_p1_of(&p, &Allocation::flat(5)).is_err());
    }

    #[test]
    fn candidate_families() {
        let a = profile(SetupId::A);
        let c = allocation_candidates(&a);
        assert_eq!(c[3], Allocation::flat(20));

        let h = profile(SetupId::H);
        let ratio = &allocation_candidates(&h)[3];
        for i in 3..=100 {
            let want = (2.0 / i as f64).sqrt().min(1.0);
            assert!((ratio.get(i) - want).abs() < 1e-12, "i = {i}");
        }
        for id in SetupId::ALL {
            for a in allocation_candidates(&profile(id)) {
                Allocation::new(a.as_slice().to_vec()).unwrap();
            }
        }
    }

    #[test]
    fn minimum_beats_every_family() {
        for id in SetupId::ALL {
            let p = profile(id);
            let (v, a) = h_p1_min(&p);
            Allocation::new(a.as_slice().to_vec()).unwrap();
            assert!((h_p1_of(&p, &a).unwrap() - v).abs() <= 1e-9 * v);
            for c in allocation_candidates(&p) {
                assert!(v <= h_p1_of(&p, &c).unwrap());
            }
        }
    }

    #[test]
    fn class_examples() {
        let r = GapProfile::from_means(&[0.5, 0.4, 0.3, 0.2]).unwrap();
        assert!(class_membership(r.gaps(), &r, 1.0).unwrap());

        let flat4 = flat(4, 0.1);
        assert!(class_membership(&[0.1, 0.1, 0.05, 0.1], &flat4, 2.0).unwrap());

        let r = GapProfile::from_means(&[0.5, 0.4, 0.3, 0.2]).unwrap();
        assert!(!class_membership(&[0.1, 0.1, 0.05, 0.05], &r, 2.0).unwrap());
        assert!(class_membership(&[0.1], &r, 2.0).is_err());
        assert!(class_membership(r.gaps(), &r, 0.5).is_err());
    }

    #[test]
    fn report_is_consistent() {
        let r = ComplexityReport::of(&profile(SetupId::G));
        assert!(r.h_sr <= r.h_bob && r.h_bob <= r.h_unif);
        assert_eq!(r.h_p1, r.h_p1_terms.iter().cloned().fold(0.0, f64::max));
    }

    fn gaps_strategy() -> impl Strategy<Value = Vec<f64>> {
        prop::collection::vec(1e-4f64..=0.125, 1..64)
    }

    fn profile_from_gaps(gaps: &[f64]) -> GapProfile {
        let mut means = vec![0.5];
        means.extend(gaps.iter().map(|g| 0.5 - g));
        GapProfile::from_means(&means).unwrap()
    }

    proptest! {
        #[test]
        fn ordering(gaps in gaps_strategy()) {
            let p = profile_from_gaps(&gaps);
            prop_assert!(h_sr(&p) <= h_bob(&p));
            prop_assert!(h_bob(&p) <= h_unif(&p));
        }

        #[test]
        fn p1_scale_homogeneity(gaps in gaps_strategy(), s in 0.5f64..4.0) {
            // The gap-independent part of each numerator over the squared
            // denominator scales like 1/s^2; the 1/24 term like 1/s.
            let p = profile_from_gaps(&gaps);
            let scaled: Vec<f64> = gaps.iter().map(|g| g * s / 4.0).collect();
            let q = profile_from_gaps(&scaled);
            let unscaled: Vec<f64> = gaps.iter().map(|g| g / 4.0).collect();
            let p4 = profile_from_gaps(&unscaled);
            let a = Allocation::flat(p.num_arms());
            let k = p.num_arms() as f64;
            let hk = harmonic(p.num_arms()).unwrap();
            for (arm, (tp, tq)) in h_p1_terms(&p4, &a).unwrap().into_iter()
                .zip(h_p1_terms(&q, &a).unwrap()).enumerate()
            {
                let g = p4.gaps()[arm];
                let var_p = tp - k * hk / (24.0 * g);
                let var_q = tq - k * hk / (24.0 * g * s);
                prop_assert!((var_q * s * s - var_p).abs() <= 1e-9 * var_p);
            }
        }
    }
}
