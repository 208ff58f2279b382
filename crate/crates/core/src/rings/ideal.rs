use num_bigint::BigInt;
use num_traits::Zero;

use super::{QuadField, Quad, Quaternion, F4};
use crate::error::{Error, Result};
use crate::matrices::ZLattice;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Ambient {
    Quad(QuadField),
    Hurwitz,
}

/// An ideal given by a Z-basis, in coordinates `(1, ω_K)` for `O_K` or
/// `(1, i, j, ω)` for the Hurwitz order. Membership and residues are computed
/// by integer row reduction against that basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealBasis {
    ambient: Ambient,
    lattice: ZLattice,
    name: String,
}

fn quad_coords(x: &Quad) -> Result<Vec<BigInt>> {
    if !(x.a.is_integer() && x.b.is_integer()) {
        return Err(Error::Domain(format!("{x} is not in O_K")));
    }
    Ok(vec![x.a.to_integer(), x.b.to_integer()])
}

fn quat_coords(x: &Quaternion) -> Result<Vec<BigInt>> {
    x.hurwitz_int_coords()
        .map(|c| c.to_vec())
        .ok_or_else(|| Error::Domain(format!("{x} is not a Hurwitz quaternion")))
}

impl IdealBasis {
    fn quad(field: QuadField, gens: &[Quad], name: String) -> Result<Self> {
        let rows = gens.iter().map(quad_coords).collect::<Result<Vec<_>>>()?;
        Ok(IdealBasis { ambient: Ambient::Quad(field), lattice: ZLattice::from_generators(&rows, 2), name })
    }

    fn hurwitz(gens: &[Quaternion], name: String) -> Result<Self> {
        let rows = gens.iter().map(quat_coords).collect::<Result<Vec<_>>>()?;
        Ok(IdealBasis { ambient: Ambient::Hurwitz, lattice: ZLattice::from_generators(&rows, 4), name })
    }

    /// `N·O_K`.
    pub fn quad_multiple(field: QuadField, n: i64) -> Self {
        Self::quad(field, &[field.int(n, 0), field.int(0, n)], format!("{n}O_K")).expect("integral generators")
    }

    /// `𝓘_N = Z·N + Z·ω_K` for a squarefree `N | d_K`.
    pub fn quad_ideal_of_norm(field: QuadField, n: i64) -> Result<Self> {
        if n < 1 || !super::is_squarefree(n as u64) || field.discriminant() % n != 0 {
            return Err(Error::Parameter(format!(
                "N = {n} must be a squarefree divisor of d_K = {}",
                field.discriminant()
            )));
        }
        Self::quad(field, &[field.int(n, 0), field.omega()], format!("I_{n}"))
    }

    /// The Z-module spanned by all products `x·y`, `x ∈ self`, `y ∈ other`.
    pub fn product(&self, other: &IdealBasis) -> Result<Self> {
        let Ambient::Quad(field) = self.ambient else {
            return Err(Error::Parameter("ideal products are implemented for O_K only".into()));
        };
        if other.ambient != self.ambient {
            return Err(Error::Parameter("ideals live in different rings".into()));
        }
        let to_elem = |r: &Vec<BigInt>| field.elem(r[0].clone().into(), r[1].clone().into());
        let mut gens = Vec::new();
        for x in self.lattice.basis() {
            for y in other.lattice.basis() {
                gens.push(to_elem(x) * to_elem(y));
            }
        }
        Self::quad(field, &gens, format!("{}*{}", self.name, other.name))
    }

    /// The two-sided ideal `℘ = Z2 + Z(1+i) + Z(1+j) + Z(1+k)` of even quaternions.
    pub fn wp() -> Self {
        Self::hurwitz(
            &[
                Quaternion::int(2, 0, 0, 0),
                Quaternion::int(1, 1, 0, 0),
                Quaternion::int(1, 0, 1, 0),
                Quaternion::int(1, 0, 0, 1),
            ],
            "P".into(),
        )
        .expect("integral generators")
    }

    /// `N·℘`.
    pub fn wp_multiple(n: i64) -> Self {
        let gens: Vec<Quaternion> = Self::wp()
            .lattice
            .basis()
            .iter()
            .map(|r| Quaternion::from_hurwitz_coords(&[0, 1, 2, 3].map(|i| (r[i].clone() * n).into())))
            .collect();
        Self::hurwitz(&gens, format!("{n}P")).expect("integral generators")
    }

    /// `N·O`.
    pub fn hurwitz_multiple(n: i64) -> Self {
        let gens = Quaternion::hurwitz_basis().map(|b| b.scale(&super::rat(n)));
        Self::hurwitz(&gens, format!("{n}O")).expect("integral generators")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn lattice(&self) -> &ZLattice {
        &self.lattice
    }

    pub fn same_module(&self, other: &IdealBasis) -> bool {
        self.ambient == other.ambient && self.lattice == other.lattice
    }

    pub fn contains_quad(&self, x: &Quad) -> Result<bool> {
        match self.ambient {
            Ambient::Quad(f) if f == x.field => Ok(self.lattice.contains(&quad_coords(x)?)),
            _ => Err(Error::Parameter(format!("{x} does not live in the ring of {}", self.name))),
        }
    }

    pub fn contains_quat(&self, x: &Quaternion) -> Result<bool> {
        if self.ambient != Ambient::Hurwitz {
            return Err(Error::Parameter(format!("{} is not a Hurwitz ideal", self.name)));
        }
        Ok(self.lattice.contains(&quat_coords(x)?))
    }

    /// Canonical representative of `x` modulo the ideal, plus membership.
    pub fn residue_quad(&self, x: &Quad) -> Result<(Quad, bool)> {
        let Ambient::Quad(f) = self.ambient else {
            return Err(Error::Parameter(format!("{} is not an ideal of O_K", self.name)));
        };
        let r = self.lattice.reduce(&quad_coords(x)?);
        let member = r.iter().all(|c| c.is_zero());
        Ok((f.elem(r[0].clone().into(), r[1].clone().into()), member))
    }

    pub fn residue_quat(&self, x: &Quaternion) -> Result<(Quaternion, bool)> {
        if self.ambient != Ambient::Hurwitz {
            return Err(Error::Parameter(format!("{} is not a Hurwitz ideal", self.name)));
        }
        let r = self.lattice.reduce(&quat_coords(x)?);
        let member = r.iter().all(|c| c.is_zero());
        Ok((Quaternion::from_hurwitz_coords(&[0, 1, 2, 3].map(|i| r[i].clone().into())), member))
    }

    /// Residue class modulo ℘ computed from the Z-basis: the class whose fixed
    /// representative differs from `x` by an element of ℘.
    pub fn residue_mod_wp(x: &Quaternion) -> Result<F4> {
        let wp = Self::wp();
        for class in F4::ALL {
            if wp.contains_quat(&(x.clone() - class.representative()))? {
                return Ok(class);
            }
        }
        unreachable!("O/℘ has exactly four classes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::{rat, ratio};

    #[test]
    fn wp_contains_its_generators_and_has_index_four() {
        let wp = IdealBasis::wp();
        assert_eq!(wp.lattice().index(), Some(BigInt::from(4)));
        assert!(wp.contains_quat(&Quaternion::int(1, 1, 0, 0)).unwrap());
        assert!(!wp.contains_quat(&Quaternion::omega()).unwrap());
        assert_eq!(IdealBasis::residue_mod_wp(&Quaternion::int(1, 1, 0, 0)).unwrap(), F4::Zero);
        assert_eq!(IdealBasis::residue_mod_wp(&Quaternion::omega()).unwrap(), F4::Omega);
    }

    #[test]
    fn wp_is_the_set_of_even_norm_elements() {
        let wp = IdealBasis::wp();
        for a in -2..=2i64 {
            for b in -2..=2i64 {
                for c in -2..=2i64 {
                    for d in -2..=2i64 {
                        let q = Quaternion::from_hurwitz_coords(&[rat(a), rat(b), rat(c), rat(d)]);
                        let even = (q.norm().to_integer() % 2) == BigInt::zero();
                        assert_eq!(wp.contains_quat(&q).unwrap(), even);
                    }
                }
            }
        }
    }

    #[test]
    fn ideal_of_norm_five_for_m_five() {
        let k = QuadField::new(5).unwrap();
        let i5 = IdealBasis::quad_ideal_of_norm(k, 5).unwrap();
        assert!(i5.contains_quad(&k.omega()).unwrap());
        assert!(!i5.contains_quad(&k.one()).unwrap());
        let sq = i5.product(&i5).unwrap();
        assert!(sq.same_module(&IdealBasis::quad_multiple(k, 5)));
    }

    #[test]
    fn squares_of_ramified_ideals() {
        for m in (1..=30u32).filter(|&m| crate::rings::is_squarefree(m as u64)) {
            let k = QuadField::new(m).unwrap();
            let d = k.discriminant().abs();
            for n in (1..=d).filter(|n| d % n == 0 && crate::rings::is_squarefree(*n as u64)) {
                let i = IdealBasis::quad_ideal_of_norm(k, n).unwrap();
                let sq = i.product(&i).unwrap();
                assert!(sq.same_module(&IdealBasis::quad_multiple(k, n)), "m={m} N={n}");
            }
        }
    }

    #[test]
    fn parameter_and_domain_errors() {
        let k = QuadField::new(5).unwrap();
        assert!(IdealBasis::quad_ideal_of_norm(k, 3).is_err());
        assert!(IdealBasis::quad_ideal_of_norm(k, 4).is_err());
        let wp = IdealBasis::wp();
        let half = Quaternion::from_rational(ratio(1, 2));
        assert!(matches!(wp.contains_quat(&half), Err(Error::Domain(_))));
        assert!(IdealBasis::quad_multiple(k, 2).residue_quad(&k.elem(ratio(1, 3), rat(0))).is_err());
    }

    #[test]
    fn canonical_residues_mod_n() {
        let k = QuadField::new(2).unwrap();
        let three = IdealBasis::quad_multiple(k, 3);
        let (r, member) = three.residue_quad(&k.int(-4, 7)).unwrap();
        assert_eq!(r, k.int(2, 1));
        assert!(!member);
        let n_wp = IdealBasis::wp_multiple(3);
        let x = Quaternion::int(6, 6, 0, 0);
        assert!(n_wp.contains_quat(&x).unwrap());
        assert!(n_wp.contains_quat(&Quaternion::int(3, 3, 0, 0)).unwrap());
        assert!(!n_wp.contains_quat(&Quaternion::omega().scale(&rat(3))).unwrap());
        assert!(!n_wp.contains_quat(&Quaternion::int(2, 0, 0, 0)).unwrap());
    }
}
