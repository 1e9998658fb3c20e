//! Finite posets, Möbius functions, and the two subgroup posets used by
//! the product formulas: kernels of irreducibles with a bottom `∅`, and
//! cyclic subgroups with a top `∞`.

use crate::character::CharacterTable;
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::fmt::Write as _;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset {
    labels: Vec<String>,
    leq: Vec<Vec<bool>>,
}

impl Poset {
    /// Validates reflexivity, antisymmetry and transitivity.
    pub fn new(labels: Vec<String>, leq: Vec<Vec<bool>>) -> Result<Self> {
        let n = labels.len();
        if leq.len() != n || leq.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidPoset("relation matrix has the wrong shape".into()));
        }
        for x in 0..n {
            if !leq[x][x] {
                return Err(Error::InvalidPoset(format!("not reflexive at {}", labels[x])));
            }
            for y in 0..n {
                if x != y && leq[x][y] && leq[y][x] {
                    return Err(Error::InvalidPoset(format!(
                        "not antisymmetric at {}, {}",
                        labels[x], labels[y]
                    )));
                }
                for z in 0..n {
                    if leq[x][y] && leq[y][z] && !leq[x][z] {
                        return Err(Error::InvalidPoset(format!(
                            "not transitive at {}, {}, {}",
                            labels[x], labels[y], labels[z]
                        )));
                    }
                }
            }
        }
        Ok(Poset { labels, leq })
    }

    pub fn from_relation(labels: Vec<String>, leq: impl Fn(usize, usize) -> bool) -> Result<Self> {
        let n = labels.len();
        let m = (0..n).map(|x| (0..n).map(|y| leq(x, y)).collect()).collect();
        Self::new(labels, m)
    }

    /// Chain `0 < 1 < ... < n-1`.
    pub fn chain(n: usize) -> Self {
        Self::from_relation((0..n).map(|i| i.to_string()).collect(), |x, y| x <= y).expect("chain")
    }

    pub fn antichain(n: usize) -> Self {
        Self::from_relation((0..n).map(|i| i.to_string()).collect(), |x, y| x == y).expect("antichain")
    }

    /// Transitive closure of a random relation `i < j` on `0..n`, each pair
    /// present with probability `density`.
    pub fn random(seed: u64, n: usize, density: f64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut leq: Vec<Vec<bool>> = (0..n).map(|i| (0..n).map(|j| i == j).collect()).collect();
        for i in 0..n {
            for j in i + 1..n {
                leq[i][j] = rng.gen_bool(density);
            }
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    if leq[i][k] && leq[k][j] {
                        leq[i][j] = true;
                    }
                }
            }
        }
        Self::new((0..n).map(|i| i.to_string()).collect(), leq).expect("closure of an acyclic relation")
    }

    /// Divisors of `n` ordered by divisibility.
    pub fn divisors(n: u64) -> Self {
        let d: Vec<u64> = (1..=n).filter(|k| n.is_multiple_of(*k)).collect();
        Self::from_relation(d.iter().map(u64::to_string).collect(), |x, y| d[y].is_multiple_of(d[x])).expect("divisor poset")
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn position(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.leq[x][y]
    }

    pub fn lt(&self, x: usize, y: usize) -> bool {
        x != y && self.leq[x][y]
    }

    fn require_fresh(&self, label: &str) -> Result<()> {
        if self.labels.iter().any(|l| l == label) {
            Err(Error::InvalidPoset(format!("label {label} already present")))
        } else {
            Ok(())
        }
    }

    /// New least element, placed at index 0.
    pub fn adjoin_bottom(&self, label: &str) -> Result<Self> {
        self.require_fresh(label)?;
        let n = self.len();
        let mut labels = vec![label.to_string()];
        labels.extend(self.labels.iter().cloned());
        let leq = (0..=n)
            .map(|x| (0..=n).map(|y| x == 0 || (y > 0 && self.leq[x - 1][y - 1])).collect())
            .collect();
        Ok(Poset { labels, leq })
    }

    /// New greatest element, placed last.
    pub fn adjoin_top(&self, label: &str) -> Result<Self> {
        self.require_fresh(label)?;
        let n = self.len();
        let mut labels = self.labels.clone();
        labels.push(label.to_string());
        let leq = (0..=n)
            .map(|x| (0..=n).map(|y| y == n || (x < n && self.leq[x][y])).collect())
            .collect();
        Ok(Poset { labels, leq })
    }

    /// Indices sorted so that every element comes after everything below it.
    fn linear_extension(&self) -> Vec<usize> {
        let n = self.len();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&y| ((0..n).filter(|&x| self.leq[x][y]).count(), y));
        order
    }

    /// Covering pairs `(x, y)`: `x < y` with nothing strictly between.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for x in 0..n {
            for y in 0..n {
                if self.lt(x, y) && !(0..n).any(|z| self.lt(x, z) && self.lt(z, y)) {
                    out.push((x, y));
                }
            }
        }
        out
    }

    pub fn hasse_dot(&self, name: &str) -> String {
        let mut s = format!("digraph \"{name}\" {{\n  rankdir=BT;\n");
        for (i, l) in self.labels.iter().enumerate() {
            let _ = writeln!(s, "  n{i} [label=\"{}\"];", l.replace('"', "\\\""));
        }
        for (x, y) in self.covers() {
            let _ = writeln!(s, "  n{x} -> n{y};");
        }
        s.push_str("}\n");
        s
    }

    /// Möbius function by both defining recursions; they must agree.
    pub fn mobius(&self) -> MobiusTable {
        let lower = self.mobius_from_below();
        let upper = self.mobius_from_above();
        assert_eq!(lower, upper, "the two Möbius recursions disagree");
        MobiusTable { values: lower }
    }

    /// `μ(x,y) = -Σ_{x ≤ z < y} μ(x,z)`.
    fn mobius_from_below(&self) -> Vec<Vec<BigInt>> {
        let n = self.len();
        let order = self.linear_extension();
        let mut mu = vec![vec![BigInt::zero(); n]; n];
        for x in 0..n {
            mu[x][x] = BigInt::one();
            for &y in &order {
                if self.lt(x, y) {
                    let s: BigInt = (0..n)
                        .filter(|&z| self.leq[x][z] && self.lt(z, y))
                        .map(|z| &mu[x][z])
                        .sum();
                    mu[x][y] = -s;
                }
            }
        }
        mu
    }

    /// `μ(x,y) = -Σ_{x < z ≤ y} μ(z,y)`.
    fn mobius_from_above(&self) -> Vec<Vec<BigInt>> {
        let n = self.len();
        let order = self.linear_extension();
        let mut mu = vec![vec![BigInt::zero(); n]; n];
        for y in 0..n {
            mu[y][y] = BigInt::one();
            for &x in order.iter().rev() {
                if self.lt(x, y) {
                    let s: BigInt = (0..n)
                        .filter(|&z| self.lt(x, z) && self.leq[z][y])
                        .map(|z| &mu[z][y])
                        .sum();
                    mu[x][y] = -s;
                }
            }
        }
        mu
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MobiusTable {
    values: Vec<Vec<BigInt>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct MobiusEntry {
    pub from: String,
    pub to: String,
    pub mu: String,
}

impl MobiusTable {
    /// `μ(x,y)`, zero for incomparable pairs.
    pub fn get(&self, x: usize, y: usize) -> &BigInt {
        &self.values[x][y]
    }

    /// Entries for every comparable pair, in index order.
    pub fn entries(&self, p: &Poset) -> Vec<MobiusEntry> {
        let n = p.len();
        let mut out = Vec::new();
        for x in 0..n {
            for y in 0..n {
                if p.leq(x, y) {
                    out.push(MobiusEntry {
                        from: p.label(x).to_string(),
                        to: p.label(y).to_string(),
                        mu: self.values[x][y].to_string(),
                    });
                }
            }
        }
        out
    }
}

/// Number-theoretic Möbius function.
pub fn classical_mobius(n: u64) -> i32 {
    assert!(n >= 1, "classical_mobius(0)");
    let mut n = n;
    let mut sign = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

/// Checks both directions of Möbius inversion on the given data: for each
/// of the two statements, "g is the summation of f" holds iff "f is the
/// μ-weighted sum of g".
pub fn mobius_inversion_check(p: &Poset, f: &[BigRational], g: &[BigRational]) -> bool {
    let n = p.len();
    assert!(f.len() == n && g.len() == n, "data length must match the poset");
    let mu = p.mobius();
    let weight = |x: usize, y: usize| BigRational::from_integer(mu.get(x, y).clone());
    let up_sum = (0..n).all(|x| g[x] == (0..n).filter(|&y| p.leq(x, y)).map(|y| f[y].clone()).sum());
    let up_inv = (0..n).all(|x| f[x] == (0..n).filter(|&y| p.leq(x, y)).map(|y| weight(x, y) * &g[y]).sum());
    let down_sum = (0..n).all(|y| g[y] == (0..n).filter(|&x| p.leq(x, y)).map(|x| f[x].clone()).sum());
    let down_inv = (0..n).all(|y| f[y] == (0..n).filter(|&x| p.leq(x, y)).map(|x| weight(x, y) * &g[x]).sum());
    up_sum == up_inv && down_sum == down_inv
}

/// Sums `f` upward and downward, returning `(Σ_{y≥x} f(y), Σ_{y≤x} f(y))`.
pub fn summations(p: &Poset, f: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let n = p.len();
    let up = (0..n).map(|x| (0..n).filter(|&y| p.leq(x, y)).map(|y| f[y].clone()).sum()).collect();
    let down = (0..n).map(|x| (0..n).filter(|&y| p.leq(y, x)).map(|y| f[y].clone()).sum()).collect();
    (up, down)
}

/// A poset of subgroups ordered by inclusion, plus one adjoined symbol
/// (`∅` at the bottom or `∞` at the top).
#[derive(Clone, Debug)]
pub struct SubgroupPoset {
    poset: Poset,
    mobius: MobiusTable,
    members: Vec<Option<Subgroup>>,
    extra: usize,
}

impl SubgroupPoset {
    fn build(g: &FiniteGroup, subgroups: Vec<Subgroup>, bottom: bool) -> Self {
        let labels = subgroups.iter().map(|h| describe_subgroup(g, h)).collect();
        let base = Poset::from_relation(labels, |x, y| subgroups[x].is_subset_of(&subgroups[y]))
            .expect("inclusion is a partial order");
        let (poset, members, extra) = if bottom {
            let mut m = vec![None];
            m.extend(subgroups.into_iter().map(Some));
            (base.adjoin_bottom("∅").expect("fresh"), m, 0)
        } else {
            let n = subgroups.len();
            let mut m: Vec<Option<Subgroup>> = subgroups.into_iter().map(Some).collect();
            m.push(None);
            (base.adjoin_top("∞").expect("fresh"), m, n)
        };
        let mobius = poset.mobius();
        SubgroupPoset {
            poset,
            mobius,
            members,
            extra,
        }
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn mobius(&self) -> &MobiusTable {
        &self.mobius
    }

    /// Index of the adjoined `∅` or `∞`.
    pub fn extra(&self) -> usize {
        self.extra
    }

    pub fn subgroup(&self, i: usize) -> Option<&Subgroup> {
        self.members[i].as_ref()
    }

    /// `(index, subgroup)` for every genuine subgroup element.
    pub fn subgroups(&self) -> impl Iterator<Item = (usize, &Subgroup)> {
        self.members.iter().enumerate().filter_map(|(i, h)| h.as_ref().map(|h| (i, h)))
    }

    pub fn find(&self, h: &Subgroup) -> Option<usize> {
        self.members.iter().position(|m| m.as_ref() == Some(h))
    }

    /// `μ(∅, H)` or `μ(H, ∞)` depending on which symbol was adjoined.
    pub fn mu_extra(&self, i: usize) -> &BigInt {
        if self.extra == 0 {
            self.mobius.get(0, i)
        } else {
            self.mobius.get(i, self.extra)
        }
    }
}

/// `ℋ_G ∪ {∅}`: the distinct kernels of irreducible characters.
pub fn kernel_poset(g: &FiniteGroup, ct: &CharacterTable) -> SubgroupPoset {
    let mut kernels: Vec<Subgroup> = ct.characters().iter().map(|chi| ct.kernel_of(chi)).collect();
    kernels.sort_by(|a, b| (a.order(), a.elements()).cmp(&(b.order(), b.elements())));
    kernels.dedup();
    SubgroupPoset::build(g, kernels, true)
}

/// `𝒞_G ∪ {∞}`: cyclic subgroups with a top adjoined.
pub fn cyclic_poset(g: &FiniteGroup) -> SubgroupPoset {
    SubgroupPoset::build(g, g.cyclic_subgroups(), false)
}

/// Subgroups of `G` ordered by inclusion, with no extra symbol.
pub fn subgroup_lattice(g: &FiniteGroup, subgroups: &[Subgroup]) -> Poset {
    let labels = subgroups.iter().map(|h| describe_subgroup(g, h)).collect();
    Poset::from_relation(labels, |x, y| subgroups[x].is_subset_of(&subgroups[y])).expect("inclusion order")
}

/// `<a,b,...>` using a greedy generating set, `{1}` for the trivial subgroup.
pub fn describe_subgroup(g: &FiniteGroup, h: &Subgroup) -> String {
    if h.order() == 1 {
        return "{1}".into();
    }
    let mut gens = Vec::new();
    let mut span = g.trivial_subgroup();
    for &x in h.elements() {
        if !span.contains(x) {
            gens.push(x);
            span = g.generated_subgroup(&gens).expect("elements in range");
        }
        if span.order() == h.order() {
            break;
        }
    }
    let names: Vec<&str> = gens.iter().map(|&x| g.label(x)).collect();
    format!("<{}>", names.join(","))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn chain_values() {
        let c = Poset::chain(3);
        let mu = c.mobius();
        assert_eq!(*mu.get(0, 1), int(-1));
        assert_eq!(*mu.get(0, 2), int(0));
        assert_eq!(*mu.get(2, 0), int(0));
    }

    #[test]
    fn divisor_poset_matches_classical() {
        for n in [1u64, 6, 12, 30, 36, 60] {
            let p = Poset::divisors(n);
            let mu = p.mobius();
            assert_eq!(*mu.get(0, p.len() - 1), int(classical_mobius(n) as i64), "n = {n}");
        }
        assert_eq!(classical_mobius(1), 1);
        assert_eq!(classical_mobius(6), 1);
        assert_eq!(classical_mobius(12), 0);
        assert_eq!(classical_mobius(30), -1);
    }

    #[test]
    fn validation_rejects_bad_relations() {
        let l = vec!["a".to_string(), "b".to_string()];
        assert!(Poset::new(l.clone(), vec![vec![true, true], vec![true, true]]).is_err());
        assert!(Poset::new(l.clone(), vec![vec![false, false], vec![false, true]]).is_err());
        let l3: Vec<String> = ["a", "b", "c"].iter().map(|s| s.to_string()).collect();
        let nontransitive = vec![vec![true, true, false], vec![false, true, true], vec![false, false, true]];
        assert!(Poset::new(l3, nontransitive).is_err());
    }

    #[test]
    fn adjunction() {
        let empty = Poset::from_relation(vec![], |_, _| true).unwrap();
        assert_eq!(empty.adjoin_bottom("∅").unwrap().len(), 1);
        let p = Poset::antichain(3).adjoin_bottom("∅").unwrap().adjoin_top("∞").unwrap();
        assert_eq!(p.len(), 5);
        assert!(Poset::new(p.labels.clone(), p.leq.clone()).is_ok());
        // Bottom and top of a 3-atom lattice: μ = 3 - 1 = 2.
        assert_eq!(*p.mobius().get(0, 4), int(2));
        assert!(p.adjoin_top("∞").is_err());
    }

    #[test]
    fn cyclic_poset_of_elementary_abelian_groups() {
        let c2 = FiniteGroup::cyclic(2).unwrap();
        let mut g = c2.clone();
        for m in 1..=4u32 {
            let cp = cyclic_poset(&g);
            let trivial = cp.find(&g.trivial_subgroup()).unwrap();
            assert_eq!(*cp.mu_extra(trivial), int(2i64.pow(m) - 2));
            for (i, h) in cp.subgroups() {
                if h.order() == 2 {
                    assert_eq!(*cp.mu_extra(i), int(-1));
                }
            }
            g = FiniteGroup::direct_product(&g, &c2);
        }
    }

    #[test]
    fn quaternion_is_exceptional() {
        let q = FiniteGroup::quaternion();
        let cp = cyclic_poset(&q);
        assert_eq!(cp.poset().len(), 6);
        let trivial = cp.find(&q.trivial_subgroup()).unwrap();
        assert_eq!(*cp.mu_extra(trivial), int(0));
    }

    #[test]
    fn s3_cyclic_poset_has_six_elements() {
        let s3 = FiniteGroup::symmetric(3).unwrap();
        let cp = cyclic_poset(&s3);
        assert_eq!(cp.poset().len(), 6);
        let dot = cp.poset().hasse_dot("C_S3");
        assert_eq!(dot.matches("->").count(), 4 + 4);
    }

    #[test]
    fn cyclic_groups_follow_classical_mobius() {
        for n in 1..=60 {
            let g = FiniteGroup::cyclic(n).unwrap();
            let cp = cyclic_poset(&g);
            for (i, c) in cp.subgroups() {
                for (j, b) in cp.subgroups() {
                    if c.is_subset_of(b) {
                        let idx = (b.order() / c.order()) as u64;
                        assert_eq!(*cp.mobius().get(i, j), int(classical_mobius(idx) as i64));
                    }
                }
            }
        }
    }

    #[test]
    fn klein_four_lattice_is_a_diamond() {
        let c2 = FiniteGroup::cyclic(2).unwrap();
        let v = FiniteGroup::direct_product(&c2, &c2);
        let subs = v.all_subgroups().unwrap();
        let p = subgroup_lattice(&v, &subs);
        assert_eq!(p.covers().len(), 6);
        assert_eq!(describe_subgroup(&v, &subs[4]), "<(0,1),(1,0)>");
    }

    #[test]
    fn json_entries() {
        let p = Poset::chain(2);
        let e = p.mobius().entries(&p);
        assert_eq!(e.len(), 3);
        assert_eq!(e[1].mu, "-1");
    }
}
