//! Artin–Ihara L-function numerators `h_{Y/X}(u, ρ)` with exact cyclotomic
//! coefficients, and the spanning-tree identities they imply.

use crate::character::{one_dim_characters, CharacterTable};
use crate::cover::Cover;
use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::group::{parse_group, FiniteGroup, Subgroup};
use crate::matrix::Matrix;
use crate::poly::Polynomial;
use crate::report::VerificationReport;
use crate::ring::Ring;
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Deserialize;
use std::collections::BTreeMap;
use std::path::Path;

pub type CycloMatrix = Matrix<Cyclotomic>;
pub type CycloPolynomial = Polynomial<Cyclotomic>;

/// A matrix representation: one `d × d` cyclotomic matrix per element.
#[derive(Clone, Debug)]
pub struct MatrixRep {
    group: FiniteGroup,
    degree: usize,
    matrices: Vec<CycloMatrix>,
}

/// On-disk representation: entry vectors `c` stand for `Σ_k c[k] ζ_e^k`.
#[derive(Clone, Debug, Deserialize)]
pub struct MatrixRepFile {
    pub group: String,
    pub degree: usize,
    pub e: usize,
    pub matrices: BTreeMap<String, Vec<Vec<Vec<i64>>>>,
}

impl MatrixRep {
    /// Checks `ρ(1) = I` and `ρ(gh) = ρ(g)ρ(h)`: all pairs up to order 64,
    /// a fixed sample of pairs above.
    pub fn new(group: FiniteGroup, degree: usize, matrices: Vec<CycloMatrix>) -> Result<Self> {
        if matrices.len() != group.order() {
            return Err(Error::LengthMismatch(matrices.len(), group.order()));
        }
        if matrices.iter().any(|m| m.rows() != degree || m.cols() != degree) {
            return Err(Error::InvalidRepresentation("matrix of the wrong size".into()));
        }
        let rep = MatrixRep {
            group,
            degree,
            matrices,
        };
        rep.validate()?;
        Ok(rep)
    }

    fn validate(&self) -> Result<()> {
        let g = &self.group;
        if self.matrices[g.identity()] != Matrix::identity(self.degree) {
            return Err(Error::InvalidRepresentation("identity is not sent to I".into()));
        }
        let check = |a: usize, b: usize| self.matrices[a].mul(&self.matrices[b]) == self.matrices[g.mul(a, b)];
        let n = g.order();
        let ok = if n <= 64 {
            (0..n).all(|a| (0..n).all(|b| check(a, b)))
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0);
            (0..4096).all(|_| check(rng.gen_range(0..n), rng.gen_range(0..n)))
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidRepresentation("not a homomorphism".into()))
        }
    }

    pub fn trivial(group: &FiniteGroup) -> Self {
        let m = vec![Matrix::identity(1); group.order()];
        MatrixRep {
            group: group.clone(),
            degree: 1,
            matrices: m,
        }
    }

    /// Degree-one representation `g ↦ ζ_e^{k(g)}`.
    pub fn one_dimensional(group: &FiniteGroup, exponents: &[usize], e: usize) -> Result<Self> {
        let matrices = exponents
            .iter()
            .map(|&k| Matrix::from_fn(1, 1, |_, _| Cyclotomic::root_of_unity(e, k)))
            .collect();
        Self::new(group.clone(), 1, matrices)
    }

    /// Right regular representation: `ρ(g)[σ][τ] = 1` iff `τ = σg`.
    pub fn regular(group: &FiniteGroup) -> Self {
        let n = group.order();
        let matrices = (0..n)
            .map(|g| {
                Matrix::from_fn(n, n, |s, t| {
                    if group.mul(s, g) == t {
                        Cyclotomic::one()
                    } else {
                        Cyclotomic::zero()
                    }
                })
            })
            .collect();
        MatrixRep {
            group: group.clone(),
            degree: n,
            matrices,
        }
    }

    pub fn direct_sum(&self, other: &MatrixRep) -> Result<Self> {
        if !same_group(&self.group, &other.group) {
            return Err(Error::GroupMismatch);
        }
        let matrices = self.matrices.iter().zip(&other.matrices).map(|(a, b)| a.direct_sum(b)).collect();
        Ok(MatrixRep {
            group: self.group.clone(),
            degree: self.degree + other.degree,
            matrices,
        })
    }

    pub fn from_file(file: &MatrixRepFile) -> Result<Self> {
        let group = parse_group(&file.group)?;
        let d = file.degree;
        let mut matrices: Vec<Option<CycloMatrix>> = vec![None; group.order()];
        for (label, rows) in &file.matrices {
            let g = group.element_by_label(label)?;
            if rows.len() != d || rows.iter().any(|r| r.len() != d) {
                return Err(Error::InvalidRepresentation(format!("matrix for {label} is not {d}x{d}")));
            }
            let m = Matrix::from_fn(d, d, |i, j| {
                let c: Vec<BigInt> = rows[i][j].iter().map(|&x| BigInt::from(x)).collect();
                Cyclotomic::from_coeffs(file.e, &c)
            });
            matrices[g] = Some(m);
        }
        let matrices = matrices
            .into_iter()
            .enumerate()
            .map(|(g, m)| m.ok_or_else(|| Error::InvalidRepresentation(format!("no matrix for {}", group.label(g)))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(group, d, matrices)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        let file: MatrixRepFile = serde_json::from_str(&text)?;
        Self::from_file(&file)
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn matrix(&self, g: usize) -> &CycloMatrix {
        &self.matrices[g]
    }
}

fn same_group(a: &FiniteGroup, b: &FiniteGroup) -> bool {
    a.order() == b.order() && a.cayley_table() == b.cayley_table()
}

/// `(A_ρ, D_ρ)`: block `(v, w)` of `A_ρ` sums `ρ(α(e))` over directed base
/// edges from `v` to `w`; `D_ρ = D_X ⊗ I_d`.
pub fn twisted_matrices(cover: &Cover, rho: &MatrixRep) -> Result<(CycloMatrix, CycloMatrix)> {
    if !same_group(&rho.group, cover.group()) {
        return Err(Error::GroupMismatch);
    }
    let x = cover.base();
    let d = rho.degree;
    let n = x.vertex_count();
    let mut a = CycloMatrix::zeros(n * d, n * d);
    for (e, de) in x.edges().iter().enumerate() {
        let m = rho.matrix(cover.voltage().voltage(e));
        for i in 0..d {
            for j in 0..d {
                let (r, c) = (de.origin * d + i, de.terminus * d + j);
                let v = a.get(r, c).add(m.get(i, j));
                a.set(r, c, v);
            }
        }
    }
    let deg = x.degrees();
    let dm = CycloMatrix::from_fn(n * d, n * d, |r, c| {
        if r == c {
            Cyclotomic::integer(deg[r / d] as i64)
        } else {
            Cyclotomic::zero()
        }
    });
    Ok((a, dm))
}

/// `h(u, ρ) = det(I - A_ρ u + (D_ρ - I) u²)`.
pub fn h_poly(cover: &Cover, rho: &MatrixRep) -> Result<CycloPolynomial> {
    let (a, d) = twisted_matrices(cover, rho)?;
    let n = a.rows();
    let m = Matrix::from_fn(n, n, |i, j| {
        let id = if i == j { Cyclotomic::one() } else { Cyclotomic::zero() };
        Polynomial::new(vec![id.clone(), a.get(i, j).neg(), d.get(i, j).sub(&id)])
    });
    m.det_berkowitz()
}

/// `h(1, ρ) = det(D_ρ - A_ρ)`.
pub fn h_at_one(cover: &Cover, rho: &MatrixRep) -> Result<Cyclotomic> {
    let (a, d) = twisted_matrices(cover, rho)?;
    d.sub(&a).det_berkowitz()
}

/// `Σ_s (2 - χ(α(s)) - χ(α(s))⁻¹)` for a degree-one character on a bouquet,
/// given as exponents `g ↦ k` with `χ(g) = ζ_e^k`.
pub fn bouquet_h_formula(cover: &Cover, chi: &[usize], e: usize) -> Result<Cyclotomic> {
    if !cover.base().is_bouquet() {
        return Err(Error::NotBouquet);
    }
    let two = Cyclotomic::integer(2);
    Ok(cover
        .voltage()
        .orientation_voltages()
        .iter()
        .fold(Cyclotomic::zero(), |acc, &g| {
            let z = Cyclotomic::root_of_unity(e, chi[g]);
            acc.add(&two.sub(&z).sub(&z.conj()))
        }))
}

fn require_abelian(g: &FiniteGroup) -> Result<()> {
    if g.is_abelian() {
        Ok(())
    } else {
        Err(Error::NotAbelian)
    }
}

fn require_galois(cover: &Cover) -> Result<()> {
    if cover.is_galois() {
        Ok(())
    } else {
        Err(Error::NotGalois)
    }
}

/// Degree-one representations of an abelian cover group, trivial first,
/// in character-table order.
pub fn abelian_reps(g: &FiniteGroup) -> Result<Vec<MatrixRep>> {
    let e = g.exponent();
    one_dim_characters(g)?
        .iter()
        .map(|chi| MatrixRep::one_dimensional(g, chi, e))
        .collect()
}

fn integer_of(c: &Cyclotomic, what: &str) -> Result<BigInt> {
    c.to_integer()
        .ok_or_else(|| Error::Internal(format!("{what} is not a rational integer: {c}")))
}

fn poly_string(p: &CycloPolynomial) -> String {
    let parts: Vec<String> = p.coeffs().iter().map(ToString::to_string).collect();
    format!("[{}]", parts.join(", "))
}

/// `∏_χ h(u, χ) = h_Y(u)` over all characters of an abelian group.
pub fn verify_factorization(cover: &Cover) -> Result<VerificationReport> {
    let g = cover.group();
    require_abelian(g)?;
    let reps = abelian_reps(g)?;
    let factors = reps.par_iter().map(|r| h_poly(cover, r)).collect::<Result<Vec<_>>>()?;
    let product = factors.iter().fold(CycloPolynomial::one(), |acc, f| acc.mul(f));
    for c in product.coeffs() {
        integer_of(c, "coefficient of the character product")?;
    }
    let hy = cover.derived().ihara_h_poly()?;
    let hy_cyclo = hy.map(|c| Cyclotomic::integer(c.clone()));
    Ok(VerificationReport::compare(
        "prod_chi h(u,chi) = h_Y(u)",
        g.name(),
        poly_string(&product),
        poly_string(&hy_cyclo),
    ))
}

fn nontrivial_h_values(cover: &Cover) -> Result<Vec<Cyclotomic>> {
    let reps = abelian_reps(cover.group())?;
    reps[1..].par_iter().map(|r| h_at_one(cover, r)).collect()
}

/// `|G|·κ(Y) = κ(X)·∏_{χ ≠ 1} h(1, χ)` for abelian `G`.
pub fn verify_prop_formula(cover: &Cover) -> Result<VerificationReport> {
    let g = cover.group();
    require_abelian(g)?;
    require_galois(cover)?;
    if cover.base().euler_characteristic() == 0 {
        return Err(Error::EulerZero);
    }
    let prod = nontrivial_h_values(cover)?
        .iter()
        .fold(Cyclotomic::one(), |acc, h| acc.mul(h));
    let prod = integer_of(&prod, "product of h(1, chi)")?;
    let left = BigInt::from(g.order()) * cover.kappa()?;
    let right = cover.base().spanning_tree_count()? * prod;
    Ok(VerificationReport::compare("|G| kappa(Y) = kappa(X) prod h(1,chi)", g.name(), left, right))
}

/// `[G:H]·κ(X_H) = κ(X)·∏_{χ ≠ 1} h(1, χ)^{a_{χ,H}}` with
/// `a_{χ,H} = ⟨Ind_H^G ρ_0, χ⟩`.
pub fn verify_inter_rel(cover: &Cover, h: &Subgroup) -> Result<VerificationReport> {
    let g = cover.group();
    require_abelian(g)?;
    require_galois(cover)?;
    if cover.base().euler_characteristic() == 0 {
        return Err(Error::EulerZero);
    }
    let ct = CharacterTable::new(g)?;
    let induced = ct.induced_trivial_character(h);
    let values = nontrivial_h_values(cover)?;
    let mut prod = Cyclotomic::one();
    for (chi, hv) in ct.characters()[1..].iter().zip(&values) {
        let a = ct.inner_product(&induced, chi)?;
        let a = a
            .to_integer()
            .try_into()
            .map_err(|_| Error::Internal("multiplicity out of range".into()))?;
        prod = prod.mul(&hv.pow(a));
    }
    let prod = integer_of(&prod, "h-product")?;
    let left = BigInt::from(g.index(h)) * cover.intermediate_graph(h)?.kappa()?;
    let right = cover.base().spanning_tree_count()? * prod;
    Ok(VerificationReport::compare(
        "[G:H] kappa(X_H) = kappa(X) prod h(1,chi)^a",
        format!("{} H of order {}", g.name(), h.order()),
        left,
        right,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cover::VoltageAssignment;
    use crate::graph::SerreGraph;

    fn k(n: i64) -> BigInt {
        BigInt::from(n)
    }

    fn figure2() -> Cover {
        let g = parse_group("C2xC6").unwrap();
        VoltageAssignment::from_labels(SerreGraph::bouquet(2), g, &["(1,0)", "(0,1)"])
            .unwrap()
            .derive()
    }

    #[test]
    fn trivial_rep_gives_base_zeta() {
        let c = figure2();
        let h = h_poly(&c, &MatrixRep::trivial(c.group())).unwrap();
        let hx = c.base().ihara_h_poly().unwrap();
        assert_eq!(h, hx.map(|x| Cyclotomic::integer(x.clone())));
        assert!(h_at_one(&c, &MatrixRep::trivial(c.group())).unwrap().is_zero());
    }

    #[test]
    fn z4_loop() {
        let g = FiniteGroup::cyclic(4).unwrap();
        let c = VoltageAssignment::on_default_orientation(SerreGraph::bouquet(1), g.clone(), &[1])
            .unwrap()
            .derive();
        let rho = MatrixRep::one_dimensional(&g, &[0, 1, 2, 3], 4).unwrap();
        assert_eq!(h_at_one(&c, &rho).unwrap().to_integer(), Some(k(2)));
        assert_eq!(bouquet_h_formula(&c, &[0, 1, 2, 3], 4).unwrap().to_integer(), Some(k(2)));
    }

    #[test]
    fn c2_on_two_loops() {
        let g = FiniteGroup::cyclic(2).unwrap();
        let c = VoltageAssignment::on_default_orientation(SerreGraph::bouquet(2), g, &[1, 1])
            .unwrap()
            .derive();
        assert_eq!(bouquet_h_formula(&c, &[0, 1], 2).unwrap().to_integer(), Some(k(8)));
        assert!(verify_prop_formula(&c).unwrap().passed);
        assert!(verify_factorization(&c).unwrap().passed);
    }

    #[test]
    fn figure2_prop_formula_and_inter_rel() {
        let c = figure2();
        let r = verify_prop_formula(&c).unwrap();
        assert!(r.passed);
        assert_eq!(r.left, (12 * 117600).to_string());
        let g = c.group();
        for h in g.all_subgroups().unwrap() {
            assert!(verify_inter_rel(&c, &h).unwrap().passed);
        }
        let h4 = g
            .generated_subgroup(&[g.element_by_label("(1,0)").unwrap(), g.element_by_label("(0,3)").unwrap()])
            .unwrap();
        assert_eq!(verify_inter_rel(&c, &h4).unwrap().left, "9");
    }

    #[test]
    fn regular_rep_matches_derived_graph() {
        let g = parse_group("S3").unwrap();
        let c = VoltageAssignment::from_labels(SerreGraph::path(2), g.clone(), &["(1,2)"])
            .unwrap()
            .derive();
        let h = h_poly(&c, &MatrixRep::regular(&g)).unwrap();
        let hy = c.derived().ihara_h_poly().unwrap();
        assert_eq!(h, hy.map(|x| Cyclotomic::integer(x.clone())));
    }

    #[test]
    fn direct_sums_multiply() {
        let g = FiniteGroup::cyclic(3).unwrap();
        let c = VoltageAssignment::on_default_orientation(SerreGraph::bouquet(2), g.clone(), &[1, 2])
            .unwrap()
            .derive();
        let a = MatrixRep::one_dimensional(&g, &[0, 1, 2], 3).unwrap();
        let b = MatrixRep::one_dimensional(&g, &[0, 2, 1], 3).unwrap();
        let sum = a.direct_sum(&b).unwrap();
        let lhs = h_poly(&c, &sum).unwrap();
        let rhs = h_poly(&c, &a).unwrap().mul(&h_poly(&c, &b).unwrap());
        assert_eq!(lhs, rhs);
        // h(1,χ)·h(1,χ̄) is a nonnegative integer.
        let pair = h_at_one(&c, &a).unwrap().mul(&h_at_one(&c, &b).unwrap());
        assert!(pair.to_integer().unwrap() >= k(0));
    }

    #[test]
    fn invalid_reps_are_rejected() {
        let g = FiniteGroup::cyclic(3).unwrap();
        assert!(MatrixRep::one_dimensional(&g, &[0, 1, 1], 3).is_err());
        let file: MatrixRepFile = serde_json::from_str(
            r#"{"group":"C2","degree":1,"e":2,"matrices":{"0":[[[1,0]]],"1":[[[0,1]]]}}"#,
        )
        .unwrap();
        let rep = MatrixRep::from_file(&file).unwrap();
        assert_eq!(rep.degree(), 1);
        assert!(!verify_factorization_requires_abelian());
    }

    fn verify_factorization_requires_abelian() -> bool {
        let g = parse_group("S3").unwrap();
        let c = VoltageAssignment::from_labels(SerreGraph::bouquet(2), g, &["(12)", "(123)"])
            .unwrap()
            .derive();
        verify_factorization(&c).is_ok()
    }
}
