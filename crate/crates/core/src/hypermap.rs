//! Hypermaps, genus, and bud surgery.
//!
//! A hypermap is a pair of permutations `(sigma, alpha)` of the same
//! point set whose generated group is transitive. Cycles of `sigma` are
//! vertices, cycles of `alpha` are hyperedges, and cycles of the derived
//! face rotation `alpha^-1 . sigma` are faces. The genus of the embedding
//! surface is `(m + 2 - z(sigma) - z(alpha) - z(face)) / 2`.
//!
//! A *hypermonopole* has a single vertex, a *unicellular* map a single
//! face, and a *bud* is a fixed point of `alpha` (a trivial hyperedge
//! hanging off the vertex). Removing a bud keeps the genus; iterating
//! removal leads to a *reduced* map, one with no bud at all.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::perm::{ParseError, PermError, Permutation};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum HypermapError {
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("sigma and alpha have {orbits} orbits; a hypermap must be transitive")]
    NotTransitive { orbits: usize },
    #[error("expected a circular permutation for {role}")]
    NotCircular { role: &'static str },
    #[error("point {point} is not a bud")]
    NotABud { point: usize },
    #[error("bud surgery needs a unicellular hypermonopole")]
    NotUnicellularMonopole,
    #[error("cannot remove a bud from a 1-point hypermap")]
    LastPoint,
}

/// Derived structure flags of a hypermap, computed once at construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct HypermapClass {
    /// Single vertex.
    pub is_monopole: bool,
    /// Single face.
    pub is_unicellular: bool,
    /// Unicellular monopole without buds.
    pub is_reduced: bool,
    /// Genus of the embedding surface.
    pub genus: usize,
    /// Number of hyperedges, `z(alpha)`.
    pub k: usize,
}

/// A transitive pair `(sigma, alpha)` with its derived face rotation and
/// classification. Immutable after construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypermap {
    sigma: Permutation,
    alpha: Permutation,
    face: Permutation,
    class: HypermapClass,
}

impl Hypermap {
    /// Builds from vertex and hyperedge rotations, checking transitivity.
    pub fn new(sigma: Permutation, alpha: Permutation) -> Result<Self, HypermapError> {
        let face = alpha.inverse().compose(&sigma)?;
        Self::assemble(sigma, alpha, face)
    }

    /// Builds the unique unicellular hypermonopole with the given vertex
    /// rotation and face rotation: `alpha = sigma . pi^-1`.
    pub fn from_vertex_and_face(
        sigma: Permutation,
        pi: Permutation,
    ) -> Result<Self, HypermapError> {
        if !sigma.is_circular() {
            return Err(HypermapError::NotCircular { role: "sigma" });
        }
        if !pi.is_circular() {
            return Err(HypermapError::NotCircular { role: "pi" });
        }
        let alpha = sigma.compose(&pi.inverse())?;
        Self::assemble(sigma, alpha, pi)
    }

    /// [`Hypermap::from_vertex_and_face`] with `sigma = (0, 1, .., m-1)`.
    pub fn from_standard_face(pi: Permutation) -> Result<Self, HypermapError> {
        let sigma = Permutation::standard_circular(pi.point_count());
        Self::from_vertex_and_face(sigma, pi)
    }

    fn assemble(
        sigma: Permutation,
        alpha: Permutation,
        face: Permutation,
    ) -> Result<Self, HypermapError> {
        let m = sigma.point_count();
        let orbits = orbit_count(&sigma, &alpha);
        if orbits != 1 {
            return Err(HypermapError::NotTransitive { orbits });
        }
        let z_sigma = sigma.cycle_count();
        let k = alpha.cycle_count();
        let z_face = face.cycle_count();
        let deficiency = m as i64 + 2 - z_sigma as i64 - k as i64 - z_face as i64;
        assert!(
            deficiency >= 0 && deficiency % 2 == 0,
            "Euler deficiency {deficiency} is not an even nonnegative number"
        );
        let genus = (deficiency / 2) as usize;
        let is_monopole = z_sigma == 1;
        let is_unicellular = z_face == 1;
        let is_reduced = is_monopole && is_unicellular && alpha.fixed_points().is_empty();
        Ok(Hypermap {
            sigma,
            alpha,
            face,
            class: HypermapClass {
                is_monopole,
                is_unicellular,
                is_reduced,
                genus,
                k,
            },
        })
    }

    pub fn point_count(&self) -> usize {
        self.sigma.point_count()
    }

    pub fn sigma(&self) -> &Permutation {
        &self.sigma
    }

    pub fn alpha(&self) -> &Permutation {
        &self.alpha
    }

    /// The face rotation `alpha^-1 . sigma`.
    pub fn face(&self) -> &Permutation {
        &self.face
    }

    pub fn class(&self) -> HypermapClass {
        self.class
    }

    pub fn genus(&self) -> usize {
        self.class.genus
    }

    /// Fixed points of `alpha`.
    pub fn buds(&self) -> Vec<usize> {
        self.alpha.fixed_points()
    }

    fn require_unicellular_monopole(&self) -> Result<(), HypermapError> {
        if self.class.is_monopole && self.class.is_unicellular {
            Ok(())
        } else {
            Err(HypermapError::NotUnicellularMonopole)
        }
    }

    /// Removes the bud `i`, relabeling the surviving points to keep the
    /// point set contiguous. Genus is unchanged.
    pub fn remove_bud(&self, i: usize) -> Result<Hypermap, HypermapError> {
        self.require_unicellular_monopole()?;
        if self.point_count() < 2 {
            return Err(HypermapError::LastPoint);
        }
        if i >= self.point_count() || self.alpha.apply(i) != i {
            return Err(HypermapError::NotABud { point: i });
        }
        let sigma = self.sigma.remove_point(i)?;
        let alpha = self.alpha.remove_point(i)?;
        let h = Hypermap::new(sigma, alpha)?;
        debug_assert_eq!(h.genus(), self.genus());
        Ok(h)
    }

    /// Inserts a fresh point (labeled `m`) right after `after` in both
    /// the vertex and the face cycle, making it a bud of the result.
    /// Inverse of [`Hypermap::remove_bud`]; genus is unchanged.
    pub fn insert_bud(&self, after: usize) -> Result<Hypermap, HypermapError> {
        self.require_unicellular_monopole()?;
        let sigma = self.sigma.insert_point_after(after)?;
        let face = self.face.insert_point_after(after)?;
        let alpha = sigma.compose(&face.inverse())?;
        let h = Self::assemble(sigma, alpha, face)?;
        debug_assert_eq!(h.genus(), self.genus());
        debug_assert_eq!(h.alpha.apply(self.point_count()), self.point_count());
        Ok(h)
    }

    /// Removes buds (smallest label first) until none remain or a single
    /// point is left. The result of positive genus is reduced; the
    /// genus-0 chain ends at the 1-point map, which still has its bud.
    pub fn reduce(&self) -> Result<Hypermap, HypermapError> {
        self.require_unicellular_monopole()?;
        let mut current = self.clone();
        loop {
            if current.point_count() < 2 {
                return Ok(current);
            }
            match current.buds().first() {
                Some(&b) => current = current.remove_bud(b)?,
                None => return Ok(current),
            }
        }
    }

    /// Serializable form, cycle strings rendered with the given base.
    pub fn to_record(&self, base: usize) -> HypermapRecord {
        HypermapRecord {
            m: self.point_count(),
            sigma: self.sigma.to_cycle_string(base),
            alpha: self.alpha.to_cycle_string(base),
            face: Some(self.face.to_cycle_string(base)),
            genus: Some(self.class.genus),
            k: Some(self.class.k),
            reduced: Some(self.class.is_reduced),
        }
    }

    /// Rebuilds from a record, ignoring the derived fields.
    pub fn from_record(record: &HypermapRecord, base: usize) -> Result<Self, HypermapError> {
        let sigma = Permutation::parse_cycles(&record.sigma, Some(record.m), base)?;
        let alpha = Permutation::parse_cycles(&record.alpha, Some(record.m), base)?;
        Hypermap::new(sigma, alpha)
    }
}

/// Number of orbits of the group generated by `sigma` and `alpha`.
fn orbit_count(sigma: &Permutation, alpha: &Permutation) -> usize {
    let m = sigma.point_count();
    let mut seen = vec![false; m];
    let mut orbits = 0;
    let mut stack = Vec::new();
    for start in 0..m {
        if seen[start] {
            continue;
        }
        orbits += 1;
        seen[start] = true;
        stack.push(start);
        while let Some(x) = stack.pop() {
            for y in [sigma.apply(x), alpha.apply(x)] {
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
    }
    orbits
}

/// JSON shape of a hypermap: the defining fields plus derived ones,
/// which are optional on input.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypermapRecord {
    pub m: usize,
    pub sigma: String,
    pub alpha: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub face: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub genus: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reduced: Option<bool>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn eight_point_example() -> Hypermap {
        let pi = Permutation::from_circular_word(&[0, 4, 1, 6, 2, 5, 7, 3]).unwrap();
        Hypermap::from_standard_face(pi).unwrap()
    }

    fn five_point_example() -> Hypermap {
        let pi = Permutation::from_circular_word(&[0, 2, 3, 1, 4]).unwrap();
        Hypermap::from_standard_face(pi).unwrap()
    }

    #[test]
    fn face_to_alpha_eight_points() {
        let h = eight_point_example();
        let expected = Permutation::from_cycles(&[vec![1, 5, 3, 0, 4], vec![7, 6, 2]], 8).unwrap();
        assert_eq!(h.alpha(), &expected);
        assert_eq!(
            h.class(),
            HypermapClass {
                is_monopole: true,
                is_unicellular: true,
                is_reduced: true,
                genus: 3,
                k: 2
            }
        );
    }

    #[test]
    fn face_to_alpha_five_points() {
        let h = five_point_example();
        let expected = Permutation::from_cycles(&[vec![1, 4, 2]], 5).unwrap();
        assert_eq!(h.alpha(), &expected);
        assert_eq!(h.genus(), 1);
        assert_eq!(h.class().k, 3);
        assert!(!h.class().is_reduced);
        assert_eq!(h.buds(), vec![0, 3]);
    }

    #[test]
    fn face_round_trips() {
        let pi = Permutation::from_circular_word(&[0, 4, 1, 6, 2, 5, 7, 3]).unwrap();
        let h = Hypermap::from_standard_face(pi.clone()).unwrap();
        assert_eq!(h.face(), &pi);
        let recomputed = h.alpha().inverse().compose(h.sigma()).unwrap();
        assert_eq!(recomputed, pi);
    }

    #[test]
    fn identity_alpha_gives_genus_zero() {
        for m in 1..=6 {
            let sigma = Permutation::standard_circular(m);
            let h = Hypermap::new(sigma.clone(), Permutation::identity(m)).unwrap();
            assert_eq!(h.genus(), 0);
            assert_eq!(h.face(), &sigma);
            assert!(h.class().is_monopole && h.class().is_unicellular);
            assert!(!h.class().is_reduced);
        }
    }

    #[test]
    fn alpha_equal_sigma_gives_identity_face() {
        let sigma = Permutation::standard_circular(5);
        let h = Hypermap::new(sigma.clone(), sigma).unwrap();
        assert!(h.face().is_identity());
        assert!(!h.class().is_unicellular);
    }

    #[test]
    fn construction_rejects_intransitive_pairs() {
        let result = Hypermap::new(Permutation::identity(2), Permutation::identity(2));
        assert_eq!(result, Err(HypermapError::NotTransitive { orbits: 2 }));
        let two_cycles = Permutation::from_cycles(&[vec![0, 1], vec![2, 3]], 4).unwrap();
        let result = Hypermap::new(two_cycles.clone(), two_cycles);
        assert_eq!(result, Err(HypermapError::NotTransitive { orbits: 2 }));
    }

    #[test]
    fn construction_rejects_size_mismatch() {
        let result = Hypermap::new(Permutation::identity(3), Permutation::identity(4));
        assert!(matches!(result, Err(HypermapError::Perm(_))));
    }

    #[test]
    fn from_vertex_and_face_requires_circular_inputs() {
        let sigma = Permutation::standard_circular(4);
        let result = Hypermap::from_vertex_and_face(sigma, Permutation::identity(4));
        assert_eq!(result, Err(HypermapError::NotCircular { role: "pi" }));
        let result = Hypermap::from_vertex_and_face(
            Permutation::identity(4),
            Permutation::standard_circular(4),
        );
        assert_eq!(result, Err(HypermapError::NotCircular { role: "sigma" }));
    }

    #[test]
    fn bud_removal_chain_reaches_reduced_map() {
        let h = five_point_example();
        let step1 = h.remove_bud(0).unwrap();
        assert_eq!(
            step1.alpha(),
            &Permutation::from_cycles(&[vec![0, 3, 1]], 4).unwrap()
        );
        assert_eq!(step1.genus(), 1);
        assert_eq!(step1.buds(), vec![2]);
        let step2 = step1.remove_bud(2).unwrap();
        assert_eq!(step2.point_count(), 3);
        assert_eq!(
            step2.alpha(),
            &Permutation::from_circular_word(&[0, 2, 1]).unwrap()
        );
        assert!(step2.class().is_reduced);
        assert_eq!(step2.genus(), 1);
    }

    #[test]
    fn reduce_removes_all_buds_at_positive_genus() {
        let h = five_point_example();
        let reduced = h.reduce().unwrap();
        assert!(reduced.class().is_reduced);
        assert_eq!(reduced.genus(), 1);
        assert_eq!(reduced.point_count(), 3);
        let g = reduced.genus();
        assert!((2 * g + 1..=4 * g).contains(&reduced.point_count()));
        assert_eq!(reduced.reduce().unwrap(), reduced);
    }

    #[test]
    fn reduce_at_genus_zero_ends_at_one_point() {
        let h = Hypermap::new(Permutation::standard_circular(5), Permutation::identity(5)).unwrap();
        let reduced = h.reduce().unwrap();
        assert_eq!(reduced.point_count(), 1);
        assert!(!reduced.class().is_reduced);
        assert_eq!(reduced.genus(), 0);
    }

    #[test]
    fn remove_bud_rejects_non_buds_and_last_point() {
        let h = five_point_example();
        assert_eq!(h.remove_bud(1), Err(HypermapError::NotABud { point: 1 }));
        assert_eq!(h.remove_bud(9), Err(HypermapError::NotABud { point: 9 }));
        let one = Hypermap::new(Permutation::identity(1), Permutation::identity(1)).unwrap();
        assert_eq!(one.remove_bud(0), Err(HypermapError::LastPoint));
        let not_unicellular = Hypermap::new(
            Permutation::standard_circular(3),
            Permutation::standard_circular(3),
        )
        .unwrap();
        assert_eq!(
            not_unicellular.remove_bud(0),
            Err(HypermapError::NotUnicellularMonopole)
        );
    }

    #[test]
    fn insert_bud_round_trips() {
        let h = five_point_example().reduce().unwrap();
        for after in 0..h.point_count() {
            let grown = h.insert_bud(after).unwrap();
            assert_eq!(grown.genus(), h.genus());
            assert_eq!(grown.buds(), vec![h.point_count()]);
            assert_eq!(grown.remove_bud(h.point_count()).unwrap(), h);
        }
    }

    #[test]
    fn insert_bud_rejects_out_of_range() {
        let h = five_point_example();
        assert!(matches!(
            h.insert_bud(7),
            Err(HypermapError::Perm(PermError::OutOfRange { .. }))
        ));
    }

    #[test]
    fn record_round_trip() {
        let h = eight_point_example();
        let record = h.to_record(0);
        assert_eq!(record.m, 8);
        assert_eq!(record.sigma, "(0 1 2 3 4 5 6 7)");
        assert_eq!(record.alpha, "(0 4 1 5 3)(2 7 6)");
        assert_eq!(record.face.as_deref(), Some("(0 4 1 6 2 5 7 3)"));
        assert_eq!(record.genus, Some(3));
        assert_eq!(record.k, Some(2));
        assert_eq!(record.reduced, Some(true));
        assert_eq!(Hypermap::from_record(&record, 0).unwrap(), h);

        let json = serde_json::to_string(&record).unwrap();
        let parsed: HypermapRecord = serde_json::from_str(&json).unwrap();
        assert_eq!(parsed, record);

        let bare: HypermapRecord = serde_json::from_str(
            r#"{"m":8,"sigma":"(0 1 2 3 4 5 6 7)","alpha":"(0 4 1 5 3)(2 7 6)"}"#,
        )
        .unwrap();
        assert_eq!(Hypermap::from_record(&bare, 0).unwrap(), h);
    }

    fn arb_circular_word(max_m: usize) -> impl Strategy<Value = Vec<usize>> {
        (1..=max_m).prop_flat_map(|m| {
            Just((1..m).collect::<Vec<usize>>())
                .prop_shuffle()
                .prop_map(|rest| {
                    let mut word = vec![0];
                    word.extend(rest);
                    word
                })
        })
    }

    proptest! {
        #[test]
        fn euler_deficiency_even_and_genus_in_window(word in arb_circular_word(8)) {
            let pi = Permutation::from_circular_word(&word).unwrap();
            let m = pi.point_count();
            let h = Hypermap::from_standard_face(pi).unwrap();
            let class = h.class();
            prop_assert!(class.is_monopole && class.is_unicellular);
            prop_assert_eq!(m + 2 - 1 - class.k - 1, 2 * class.genus);
            if class.is_reduced {
                prop_assert!((2 * class.genus + 1..=4 * class.genus).contains(&m));
                prop_assert!(1 <= class.k && 2 * class.k <= m);
            }
        }

        #[test]
        fn reduce_preserves_genus(word in arb_circular_word(8)) {
            let h = Hypermap::from_standard_face(
                Permutation::from_circular_word(&word).unwrap()
            ).unwrap();
            let reduced = h.reduce().unwrap();
            prop_assert_eq!(reduced.genus(), h.genus());
            let class = reduced.class();
            prop_assert!(class.is_monopole && class.is_unicellular);
            prop_assert!(class.is_reduced || reduced.point_count() == 1);
        }
    }
}
