//! Exact character tables via Dixon's method.
//!
//! Class-sum multiplication matrices are diagonalized simultaneously over
//! a prime field `F_p` with `p ≡ 1 (mod e)`, `e` the group exponent. Each
//! character value is then lifted to the multiset of eigenvalues
//! `ζ_e^k` of the representing matrix, so values are exact sums of roots
//! of unity and kernel membership is an integer test.

use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::group::{configured_max_order, FiniteGroup, Subgroup};
use crate::poset::cyclic_poset;
use crate::report::VerificationReport;
use crate::ring::Ring;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

/// Upper end of the search for a splitting prime.
const PRIME_SEARCH_LIMIT: u64 = 1 << 24;

/// An irreducible character. `values[i][k]` is the multiplicity of the
/// eigenvalue `ζ_e^k` of `ρ(g)` for `g` in class `i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Character {
    degree: u64,
    values: Vec<Vec<u64>>,
}

impl Character {
    pub fn degree(&self) -> u64 {
        self.degree
    }

    pub fn multiplicities(&self, class: usize) -> &[u64] {
        &self.values[class]
    }

    pub fn value(&self, class: usize) -> Cyclotomic {
        Cyclotomic::from_multiplicities(self.values[class].len(), &self.values[class])
    }

    pub fn is_trivial(&self) -> bool {
        self.degree == 1 && self.values.iter().all(|m| m[0] == 1)
    }

    /// `ρ(g)` is the identity exactly when every eigenvalue is 1.
    fn is_identity_on(&self, class: usize) -> bool {
        self.values[class][0] == self.degree
    }
}

/// A class function with rational values, indexed by conjugacy class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassFunction {
    values: Vec<BigRational>,
}

impl ClassFunction {
    pub fn new(values: Vec<BigRational>) -> Self {
        ClassFunction { values }
    }

    pub fn values(&self) -> &[BigRational] {
        &self.values
    }

    pub fn value(&self, class: usize) -> &BigRational {
        &self.values[class]
    }

    pub fn add(&self, other: &ClassFunction) -> ClassFunction {
        ClassFunction::new(self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect())
    }

    pub fn scale(&self, c: &BigRational) -> ClassFunction {
        ClassFunction::new(self.values.iter().map(|a| a * c).collect())
    }
}

#[derive(Clone, Debug)]
pub struct CharacterTable {
    group: FiniteGroup,
    classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
    exponent: usize,
    prime: u64,
    characters: Vec<Character>,
}

#[derive(Serialize)]
struct ClassJson {
    representative: String,
    size: usize,
}

#[derive(Serialize)]
struct TableJson<'a> {
    group: &'a str,
    order: usize,
    exponent: usize,
    prime: u64,
    classes: Vec<ClassJson>,
    characters: &'a [Character],
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Smallest prime `p ≡ 1 (mod e)` with `p² > 4n`.
fn splitting_prime(e: usize, n: usize) -> Result<u64> {
    let e = e as u64;
    let mut p = e + 1;
    while p <= PRIME_SEARCH_LIMIT {
        if p * p > 4 * n as u64 && is_prime(p) {
            return Ok(p);
        }
        p += e;
    }
    Err(Error::NoSuitablePrime {
        exponent: e as usize,
        order: n,
        bound: PRIME_SEARCH_LIMIT,
    })
}

/// Least generator of `F_p^*`.
fn primitive_root(p: u64) -> u64 {
    let mut factors = Vec::new();
    let mut m = p - 1;
    let mut d = 2;
    while d * d <= m {
        if m.is_multiple_of(d) {
            factors.push(d);
            while m.is_multiple_of(d) {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        factors.push(m);
    }
    (2..p)
        .find(|&g| factors.iter().all(|&q| pow_mod(g, (p - 1) / q, p) != 1))
        .unwrap_or(1)
}

/// Reduced row echelon form of a list of row vectors; returns the nonzero
/// rows and their pivot columns.
fn rref(mut rows: Vec<Vec<u64>>, p: u64) -> (Vec<Vec<u64>>, Vec<usize>) {
    let cols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(i) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, i);
        let inv = inv_mod(rows[r][c], p);
        for x in rows[r].iter_mut() {
            *x = mul_mod(*x, inv, p);
        }
        for i in 0..rows.len() {
            if i != r && rows[i][c] != 0 {
                let f = rows[i][c];
                for k in 0..cols {
                    let sub = mul_mod(f, rows[r][k], p);
                    rows[i][k] = (rows[i][k] + p - sub) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    (rows, pivots)
}

/// Basis of `{x : A x = 0}` over `F_p`.
fn nullspace(a: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let n = a.first().map_or(0, Vec::len);
    let (rows, pivots) = rref(a.to_vec(), p);
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![0; n];
            x[f] = 1;
            for (row, &pc) in rows.iter().zip(&pivots) {
                x[pc] = (p - row[f]) % p;
            }
            x
        })
        .collect()
}

/// Class-multiplication coefficients as matrices: `m[j][i][k]` is the
/// number of ways to write a fixed element of class `k` as `x·y` with
/// `x ∈ K_i`, `y ∈ K_j`.
fn class_matrices(g: &FiniteGroup, classes: &[Vec<usize>], class_of: &[usize]) -> Vec<Vec<Vec<u64>>> {
    let r = classes.len();
    let mut m = vec![vec![vec![0u64; r]; r]; r];
    for (k, class) in classes.iter().enumerate() {
        let z = class[0];
        for x in 0..g.order() {
            let y = g.mul(g.inv(x), z);
            m[class_of[y]][class_of[x]][k] += 1;
        }
    }
    m
}

/// Splits `F_p^r` into common eigenlines of the commuting matrices. Each
/// subspace is kept in reduced echelon form, so coordinates of a vector
/// inside it are read off at the pivot columns.
fn common_eigenlines(mats: &[Vec<Vec<u64>>], r: usize, p: u64) -> Result<Vec<Vec<u64>>> {
    let identity: Vec<Vec<u64>> = (0..r).map(|i| (0..r).map(|j| u64::from(i == j)).collect()).collect();
    let mut stack = vec![identity];
    let mut lines = Vec::new();
    while let Some(basis) = stack.pop() {
        let d = basis.len();
        if d == 1 {
            lines.push(basis.into_iter().next().expect("one vector"));
            continue;
        }
        let (basis, pivots) = rref(basis, p);
        let mut split = false;
        for m in mats {
            // Restriction: column l holds the coordinates of M b_l.
            let images: Vec<Vec<u64>> = basis
                .iter()
                .map(|b| {
                    (0..r)
                        .map(|i| (0..r).fold(0, |acc, k| (acc + mul_mod(m[i][k], b[k], p)) % p))
                        .collect()
                })
                .collect();
            let a: Vec<Vec<u64>> = (0..d).map(|i| (0..d).map(|l| images[l][pivots[i]]).collect()).collect();
            let scalar = (0..d).all(|i| (0..d).all(|l| if i == l { a[i][l] == a[0][0] } else { a[i][l] == 0 }));
            if scalar {
                continue;
            }
            let mut total = 0;
            for lambda in 0..p {
                let shifted: Vec<Vec<u64>> = (0..d)
                    .map(|i| (0..d).map(|l| if i == l { (a[i][l] + p - lambda) % p } else { a[i][l] }).collect())
                    .collect();
                let ns = nullspace(&shifted, p);
                if ns.is_empty() {
                    continue;
                }
                total += ns.len();
                let sub: Vec<Vec<u64>> = ns
                    .iter()
                    .map(|x| {
                        (0..r)
                            .map(|k| (0..d).fold(0, |acc, l| (acc + mul_mod(x[l], basis[l][k], p)) % p))
                            .collect()
                    })
                    .collect();
                stack.push(sub);
                if total == d {
                    break;
                }
            }
            if total != d {
                return Err(Error::Internal("class matrix is not diagonalizable mod p".into()));
            }
            split = true;
            break;
        }
        if !split {
            return Err(Error::Internal("eigenspace could not be split".into()));
        }
    }
    Ok(lines)
}

impl CharacterTable {
    pub fn new(g: &FiniteGroup) -> Result<Self> {
        let n = g.order();
        let limit = configured_max_order();
        if n > limit {
            return Err(Error::OrderTooLarge { order: n, limit });
        }
        let classes = g.conjugacy_classes();
        let r = classes.len();
        let mut class_of = vec![0; n];
        for (i, c) in classes.iter().enumerate() {
            for &x in c {
                class_of[x] = i;
            }
        }
        let e = g.exponent();
        let p = splitting_prime(e, n)?;
        let mats = class_matrices(g, &classes, &class_of);
        let lines = common_eigenlines(&mats, r, p)?;
        if lines.len() != r {
            return Err(Error::Internal(format!("{} eigenlines for {r} classes", lines.len())));
        }
        let inv_class: Vec<usize> = classes.iter().map(|c| class_of[g.inv(c[0])]).collect();
        let omega = pow_mod(primitive_root(p), (p - 1) / e as u64, p);
        let omega_inv = inv_mod(omega, p);
        let e_inv = inv_mod(e as u64 % p, p);
        // Powers g^j of each class representative, as classes.
        let power_classes: Vec<Vec<usize>> = classes
            .iter()
            .map(|c| {
                let mut x = g.identity();
                (0..e)
                    .map(|_| {
                        let k = class_of[x];
                        x = g.mul(x, c[0]);
                        k
                    })
                    .collect()
            })
            .collect();
        let max_degree = (n as f64).sqrt().floor() as u64 + 1;
        let mut characters = Vec::with_capacity(r);
        for line in lines {
            let scale = inv_mod(line[0], p);
            let w: Vec<u64> = line.iter().map(|&x| mul_mod(x, scale, p)).collect();
            let s = (0..r).fold(0, |acc, i| {
                let t = mul_mod(mul_mod(w[i], w[inv_class[i]], p), inv_mod(classes[i].len() as u64 % p, p), p);
                (acc + t) % p
            });
            let d2 = mul_mod(n as u64 % p, inv_mod(s, p), p);
            let d = (1..=max_degree)
                .find(|&d| d * d % p == d2)
                .ok_or_else(|| Error::Internal("no character degree matches".into()))?;
            let chi: Vec<u64> = (0..r)
                .map(|i| mul_mod(mul_mod(d, w[i], p), inv_mod(classes[i].len() as u64 % p, p), p))
                .collect();
            let mut values = Vec::with_capacity(r);
            for pc in &power_classes {
                let mult: Vec<u64> = (0..e)
                    .map(|k| {
                        let step = pow_mod(omega_inv, k as u64, p);
                        let mut root = 1;
                        let mut acc = 0;
                        for &cls in pc {
                            acc = (acc + mul_mod(chi[cls], root, p)) % p;
                            root = mul_mod(root, step, p);
                        }
                        mul_mod(acc, e_inv, p)
                    })
                    .collect();
                if mult.iter().any(|&m| m > d) || mult.iter().sum::<u64>() != d {
                    return Err(Error::Internal("eigenvalue lifting failed".into()));
                }
                values.push(mult);
            }
            characters.push(Character { degree: d, values });
        }
        characters.sort_by(|a, b| (a.degree, !a.is_trivial(), &a.values).cmp(&(b.degree, !b.is_trivial(), &b.values)));
        let sum_sq: u64 = characters.iter().map(|c| c.degree * c.degree).sum();
        if sum_sq != n as u64 {
            return Err(Error::Internal(format!("degrees square-sum to {sum_sq}, not {n}")));
        }
        Ok(CharacterTable {
            group: g.clone(),
            classes,
            class_of,
            exponent: e,
            prime: p,
            characters,
        })
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class_of(&self, g: usize) -> usize {
        self.class_of[g]
    }

    pub fn exponent(&self) -> usize {
        self.exponent
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn characters(&self) -> &[Character] {
        &self.characters
    }

    pub fn degrees(&self) -> Vec<u64> {
        self.characters.iter().map(Character::degree).collect()
    }

    /// `χ(g)` for an element rather than a class.
    pub fn value_at(&self, chi: &Character, g: usize) -> Cyclotomic {
        chi.value(self.class_of[g])
    }

    pub fn kernel_of(&self, chi: &Character) -> Subgroup {
        let elems: Vec<usize> = (0..self.group.order())
            .filter(|&g| chi.is_identity_on(self.class_of[g]))
            .collect();
        let k = self.group.subgroup(&elems).expect("kernel is a subgroup");
        debug_assert!(self.group.is_normal(&k));
        k
    }

    /// Some irreducible character is faithful.
    pub fn is_irreducibly_represented(&self) -> bool {
        self.characters.iter().any(|c| self.kernel_of(c).order() == 1)
    }

    /// `⟨χ, ψ⟩ = (1/|G|) Σ_g χ(g) ψ(g)^*`.
    pub fn inner_product_characters(&self, a: &Character, b: &Character) -> Result<BigRational> {
        let mut acc = Cyclotomic::zero();
        for (i, c) in self.classes.iter().enumerate() {
            let term = a.value(i).mul(&b.value(i).conj());
            acc = acc.add(&term.scale(&BigInt::from(c.len())));
        }
        let num = acc.to_integer().ok_or(Error::NotRationalValued)?;
        Ok(BigRational::new(num, BigInt::from(self.group.order())))
    }

    /// `⟨φ, ψ⟩` for a rational class function `φ` and a character `ψ`.
    pub fn inner_product(&self, phi: &ClassFunction, psi: &Character) -> Result<BigRational> {
        if phi.values.len() != self.classes.len() {
            return Err(Error::MismatchedGroup);
        }
        let denom = phi.values.iter().fold(<BigInt as One>::one(), |acc, v| acc.lcm(v.denom()));
        let mut acc = Cyclotomic::zero();
        for (i, c) in self.classes.iter().enumerate() {
            let scaled = (&phi.values[i] * BigRational::from_integer(denom.clone())).to_integer();
            let term = psi.value(i).conj().scale(&(scaled * BigInt::from(c.len())));
            acc = acc.add(&term);
        }
        let num = acc.to_integer().ok_or(Error::NotRationalValued)?;
        Ok(BigRational::new(num, denom * BigInt::from(self.group.order())))
    }

    /// The character as a rational class function, when it is one.
    pub fn class_function(&self, chi: &Character) -> Result<ClassFunction> {
        let values = (0..self.classes.len())
            .map(|i| chi.value(i).to_integer().map(BigRational::from_integer).ok_or(Error::NotRationalValued))
            .collect::<Result<_>>()?;
        Ok(ClassFunction::new(values))
    }

    pub fn trivial_class_function(&self) -> ClassFunction {
        ClassFunction::new(vec![<BigRational as One>::one(); self.classes.len()])
    }

    /// `χ_{Ind_H^G(ρ_0)}(g) = |{x : x⁻¹gx ∈ H}| / |H|`.
    pub fn induced_trivial_character(&self, h: &Subgroup) -> ClassFunction {
        let g = &self.group;
        let values = self
            .classes
            .iter()
            .map(|c| {
                let count = (0..g.order()).filter(|&x| h.contains(g.conjugate(g.inv(x), c[0]))).count();
                BigRational::new(BigInt::from(count), BigInt::from(h.order()))
            })
            .collect();
        ClassFunction::new(values)
    }

    /// `(1/|H|) Σ_{h∈H} χ(h⁻¹)`, the other side of Frobenius reciprocity.
    pub fn restriction_multiplicity(&self, chi: &Character, h: &Subgroup) -> Result<BigRational> {
        let acc = h
            .elements()
            .iter()
            .fold(Cyclotomic::zero(), |acc, &x| acc.add(&self.value_at(chi, self.group.inv(x))));
        let num = acc.to_integer().ok_or(Error::NotRationalValued)?;
        Ok(BigRational::new(num, BigInt::from(h.order())))
    }

    /// Artin induction: coefficients `a(C)` over cyclic subgroups with
    /// `χ = Σ_C a(C)·Ind_C^G(ρ_0)`. The expansion is checked before returning.
    pub fn artin_coefficients(&self, chi: &ClassFunction) -> Result<Vec<(Subgroup, BigRational)>> {
        let g = &self.group;
        if chi.values.len() != self.classes.len() {
            return Err(Error::MismatchedGroup);
        }
        let cyclic = g.cyclic_subgroups();
        let mut value_on = Vec::with_capacity(cyclic.len());
        for b in &cyclic {
            let gens: Vec<usize> = b.elements().iter().copied().filter(|&x| g.element_order(x) == b.order()).collect();
            let v = chi.value(self.class_of[gens[0]]);
            if gens.iter().any(|&x| chi.value(self.class_of[x]) != v) {
                return Err(Error::GeneratorDependent);
            }
            value_on.push(v.clone());
        }
        let mut out = Vec::with_capacity(cyclic.len());
        for c in &cyclic {
            let mut sum = <BigRational as Zero>::zero();
            for (b, v) in cyclic.iter().zip(&value_on) {
                if c.is_subset_of(b) {
                    let mu = crate::poset::classical_mobius((b.order() / c.order()) as u64);
                    sum += v * BigRational::from_integer(BigInt::from(mu));
                }
            }
            let coeff = sum / BigRational::from_integer(BigInt::from(g.order() / c.order()));
            out.push((c.clone(), coeff));
        }
        let rebuilt = out.iter().fold(
            ClassFunction::new(vec![<BigRational as Zero>::zero(); self.classes.len()]),
            |acc, (c, a)| acc.add(&self.induced_trivial_character(c).scale(a)),
        );
        if rebuilt != *chi {
            return Err(Error::Internal("Artin expansion does not reproduce the class function".into()));
        }
        Ok(out)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let classes = self
            .classes
            .iter()
            .map(|c| ClassJson {
                representative: self.group.label(c[0]).to_string(),
                size: c.len(),
            })
            .collect();
        serde_json::to_value(TableJson {
            group: self.group.name(),
            order: self.group.order(),
            exponent: self.exponent,
            prime: self.prime,
            classes,
            characters: &self.characters,
        })
        .expect("table serializes")
    }
}

/// `μ({1}, ∞) = 0` in the cyclic-subgroup poset.
pub fn is_exceptional(g: &FiniteGroup) -> bool {
    let cp = cyclic_poset(g);
    let trivial = cp.find(&g.trivial_subgroup()).expect("trivial subgroup is cyclic");
    Zero::is_zero(cp.mu_extra(trivial))
}

pub fn is_irreducibly_represented(g: &FiniteGroup) -> Result<bool> {
    Ok(CharacterTable::new(g)?.is_irreducibly_represented())
}

/// Both halves of the identity behind the cyclic-subgroup formula:
/// `-Σ_C μ(C,∞)/[G:C] = 1`, and `Σ_C μ(C,∞)/[G:C]·a_{ρ,C} = 0` for every
/// nontrivial irreducible `ρ`, with `a_{ρ,C} = ⟨Ind_C^G ρ_0, ρ⟩`.
pub fn verify_eq3(ct: &CharacterTable) -> Result<VerificationReport> {
    let g = ct.group();
    let cp = cyclic_poset(g);
    let weights: Vec<(Subgroup, BigRational)> = cp
        .subgroups()
        .map(|(i, c)| {
            let w = BigRational::new(cp.mu_extra(i).clone(), BigInt::from(g.index(c)));
            (c.clone(), w)
        })
        .collect();
    let first: BigRational = -weights.iter().map(|(_, w)| w.clone()).sum::<BigRational>();
    let mut parts = vec![VerificationReport::compare(
        "-sum mu(C,inf)/[G:C] = 1",
        g.name(),
        &first,
        1,
    )];
    for (idx, rho) in ct.characters().iter().enumerate().filter(|(_, c)| !c.is_trivial()) {
        let mut s = <BigRational as Zero>::zero();
        for (c, w) in &weights {
            s += w * ct.inner_product(&ct.induced_trivial_character(c), rho)?;
        }
        parts.push(VerificationReport::compare(
            format!("sum mu(C,inf)/[G:C] a(rho_{idx},C) = 0"),
            g.name(),
            &s,
            0,
        ));
    }
    Ok(VerificationReport::all("cyclic-subgroup identities", g.name(), &parts))
}

/// Explicit degree-one characters of an abelian group: entry `[χ][g]` is
/// `k` with `χ(g) = ζ_e^k`.
pub fn one_dim_characters(g: &FiniteGroup) -> Result<Vec<Vec<usize>>> {
    if !g.is_abelian() {
        return Err(Error::NotAbelian);
    }
    let ct = CharacterTable::new(g)?;
    let e = ct.exponent();
    Ok(ct
        .characters()
        .iter()
        .map(|chi| {
            (0..g.order())
                .map(|x| {
                    let m = chi.multiplicities(ct.class_of(x));
                    m.iter().position(|&c| c == 1).expect("degree one") % e
                })
                .collect()
        })
        .collect())
}
