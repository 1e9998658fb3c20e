//! Finite groups as Cayley tables: constructors, subgroup enumeration,
//! conjugacy, cosets and quotients.
//!
//! Elements are indices `0..order`. Every constructor fixes a canonical
//! element ordering (lexicographic tuples for direct products, one-line
//! notation for permutation groups) so that everything computed downstream
//! is deterministic.

use crate::error::{Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::{HashMap, HashSet, VecDeque};

/// Default bound on group order for subgroup and character computations.
pub const DEFAULT_MAX_ORDER: usize = 128;
/// Default bound on the size of a permutation closure.
pub const DEFAULT_CLOSURE_LIMIT: usize = 512;
/// Environment variable overriding [`DEFAULT_MAX_ORDER`].
pub const MAX_ORDER_ENV: &str = "GALOIS_SPAN_MAX_ORDER";

/// The group-order guard, honoring `GALOIS_SPAN_MAX_ORDER`.
pub fn configured_max_order() -> usize {
    std::env::var(MAX_ORDER_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_MAX_ORDER)
}

fn closure_limit() -> usize {
    DEFAULT_CLOSURE_LIMIT.max(configured_max_order())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    name: String,
    order: usize,
    table: Vec<usize>,
    identity: usize,
    inverses: Vec<usize>,
    labels: Vec<String>,
    generators: Vec<usize>,
    /// Images (0-based) of each element when the group is a permutation group.
    perms: Option<Vec<Vec<usize>>>,
    is_product: bool,
}

/// A subgroup, identified by its sorted element set.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subgroup {
    elements: Vec<usize>,
    parent_order: usize,
}

impl Subgroup {
    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// `[G : H]`.
    pub fn index(&self) -> usize {
        self.parent_order / self.elements.len()
    }

    pub fn contains(&self, g: usize) -> bool {
        self.elements.binary_search(&g).is_ok()
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.elements.iter().all(|&g| other.contains(g))
    }

    fn key(&self) -> (usize, &[usize]) {
        (self.elements.len(), &self.elements)
    }
}

impl FiniteGroup {
    /// Assembles a group from a table already known to satisfy the axioms.
    fn from_trusted(
        name: String,
        order: usize,
        table: Vec<usize>,
        labels: Vec<String>,
        generators: Vec<usize>,
    ) -> Self {
        let identity = (0..order)
            .find(|&e| (0..order).all(|g| table[e * order + g] == g))
            .expect("trusted table has an identity");
        let inverses = (0..order)
            .map(|g| {
                (0..order)
                    .find(|&h| table[g * order + h] == identity)
                    .expect("trusted table has inverses")
            })
            .collect();
        FiniteGroup {
            name,
            order,
            table,
            identity,
            inverses,
            labels,
            generators,
            perms: None,
            is_product: false,
        }
    }

    /// `Z/nZ`, elements labelled `0..n-1`.
    pub fn cyclic(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Parse("cyclic group of order 0".into()));
        }
        let table = (0..n * n).map(|i| (i / n + i % n) % n).collect();
        let labels = (0..n).map(|k| k.to_string()).collect();
        let gens = if n > 1 { vec![1] } else { vec![] };
        Ok(Self::from_trusted(format!("C{n}"), n, table, labels, gens))
    }

    /// `G1 x G2` with element `(a, b)` at index `a * |G2| + b`.
    pub fn direct_product(g1: &FiniteGroup, g2: &FiniteGroup) -> Self {
        let (n1, n2) = (g1.order, g2.order);
        let n = n1 * n2;
        let mut table = vec![0; n * n];
        for x in 0..n {
            for y in 0..n {
                let a = g1.mul(x / n2, y / n2);
                let b = g2.mul(x % n2, y % n2);
                table[x * n + y] = a * n2 + b;
            }
        }
        let strip = |g: &FiniteGroup, l: &str| -> String {
            if g.is_product {
                l[1..l.len() - 1].to_string()
            } else {
                l.to_string()
            }
        };
        let labels = (0..n)
            .map(|x| {
                format!(
                    "({},{})",
                    strip(g1, &g1.labels[x / n2]),
                    strip(g2, &g2.labels[x % n2])
                )
            })
            .collect();
        let mut gens: Vec<usize> = g1.generators.iter().map(|&a| a * n2 + g2.identity).collect();
        gens.extend(g2.generators.iter().map(|&b| g1.identity * n2 + b));
        let mut g = Self::from_trusted(format!("{}x{}", g1.name, g2.name), n, table, labels, gens);
        g.is_product = true;
        g
    }

    /// Dihedral group of order `2n`; element `r^k s^f` at index `f * n + k`.
    pub fn dihedral(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Parse("dihedral group D0".into()));
        }
        let order = 2 * n;
        let mut table = vec![0; order * order];
        for x in 0..order {
            for y in 0..order {
                let (f, a) = (x / n, x % n);
                let (g, b) = (y / n, y % n);
                let k = if f == 0 { (a + b) % n } else { (a + n - b) % n };
                table[x * order + y] = ((f + g) % 2) * n + k;
            }
        }
        let labels = (0..order)
            .map(|x| {
                let (f, k) = (x / n, x % n);
                let r = match k {
                    0 => String::new(),
                    1 => "r".into(),
                    _ => format!("r^{k}"),
                };
                match (f, r.is_empty()) {
                    (0, true) => "1".into(),
                    (0, false) => r,
                    (_, _) => format!("{r}s"),
                }
            })
            .collect();
        let gens = if n > 1 { vec![1, n] } else { vec![n] };
        Ok(Self::from_trusted(format!("D{n}"), order, table, labels, gens))
    }

    /// Dicyclic group of order `4n`: `<a, x | a^{2n}, x^2 = a^n, x a x^{-1} = a^{-1}>`,
    /// element `a^k x^f` at index `f * 2n + k`.
    pub fn dicyclic(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Parse("dicyclic group Dic0".into()));
        }
        let m = 2 * n;
        let order = 2 * m;
        let mut table = vec![0; order * order];
        for x in 0..order {
            for y in 0..order {
                let (f, i) = (x / m, x % m);
                let (g, j) = (y / m, y % m);
                let idx = match (f, g) {
                    (0, _) => g * m + (i + j) % m,
                    (_, 0) => m + (i + m - j) % m,
                    _ => (i + m - j + n) % m,
                };
                table[x * order + y] = idx;
            }
        }
        let labels = (0..order)
            .map(|x| {
                let (f, k) = (x / m, x % m);
                let a = match k {
                    0 => String::new(),
                    1 => "a".into(),
                    _ => format!("a^{k}"),
                };
                match (f, a.is_empty()) {
                    (0, true) => "1".into(),
                    (0, false) => a,
                    (_, _) => format!("{a}x"),
                }
            })
            .collect();
        Ok(Self::from_trusted(format!("Dic{n}"), order, table, labels, vec![1, m]))
    }

    /// The quaternion group, as `Dic2` with labels `±1, ±i, ±j, ±k`.
    pub fn quaternion() -> Self {
        let mut q = Self::dicyclic(2).expect("Dic2");
        q.name = "Q8".into();
        q.labels = ["1", "i", "-1", "-i", "j", "k", "-j", "-k"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        q
    }

    pub fn symmetric(n: usize) -> Result<Self> {
        let mut gens = Vec::new();
        if n >= 2 {
            gens.push(transposition(n, 0, 1));
            gens.push((0..n).map(|i| (i + 1) % n).collect());
        }
        let mut g = Self::from_permutations_with_degree(&gens, n.max(1))?;
        g.name = format!("S{n}");
        Ok(g)
    }

    pub fn alternating(n: usize) -> Result<Self> {
        let gens: Vec<Vec<usize>> = (2..n)
            .map(|k| {
                let mut p: Vec<usize> = (0..n).collect();
                p[0] = 1;
                p[1] = k;
                p[k] = 0;
                p
            })
            .collect();
        let mut g = Self::from_permutations_with_degree(&gens, n.max(1))?;
        g.name = format!("A{n}");
        Ok(g)
    }

    /// Closure of permutation generators (0-based image vectors, all of the
    /// same length). Products compose right to left: `(pq)(x) = p(q(x))`.
    pub fn from_permutations(generators: &[Vec<usize>]) -> Result<Self> {
        let degree = generators.iter().map(Vec::len).max().unwrap_or(1).max(1);
        let padded: Vec<Vec<usize>> = generators
            .iter()
            .map(|p| {
                let mut q = p.clone();
                q.extend(p.len()..degree);
                q
            })
            .collect();
        Self::from_permutations_with_degree(&padded, degree)
    }

    fn from_permutations_with_degree(generators: &[Vec<usize>], degree: usize) -> Result<Self> {
        for p in generators {
            let mut seen = vec![false; degree];
            if p.len() != degree || p.iter().any(|&x| x >= degree || std::mem::replace(&mut seen[x], true)) {
                return Err(Error::Parse(format!("not a permutation of degree {degree}: {p:?}")));
            }
        }
        let limit = closure_limit();
        let id: Vec<usize> = (0..degree).collect();
        let mut seen: HashSet<Vec<usize>> = HashSet::from([id.clone()]);
        let mut queue = VecDeque::from([id]);
        while let Some(x) = queue.pop_front() {
            for g in generators {
                let y = compose(&x, g);
                if !seen.contains(&y) {
                    if seen.len() >= limit {
                        return Err(Error::ClosureTooLarge { limit });
                    }
                    seen.insert(y.clone());
                    queue.push_back(y);
                }
            }
        }
        let mut elems: Vec<Vec<usize>> = seen.into_iter().collect();
        elems.sort();
        let index: HashMap<&Vec<usize>, usize> = elems.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let n = elems.len();
        let mut table = vec![0; n * n];
        for (i, p) in elems.iter().enumerate() {
            for (j, q) in elems.iter().enumerate() {
                table[i * n + j] = index[&compose(p, q)];
            }
        }
        let labels = elems.iter().map(|p| cycle_notation(p)).collect();
        let gens = generators.iter().map(|g| index[g]).collect();
        let name = format!(
            "perm:{}",
            generators.iter().map(|g| cycle_notation(g)).collect::<Vec<_>>().join(";")
        );
        let mut g = Self::from_trusted(name, n, table, labels, gens);
        g.perms = Some(elems);
        Ok(g)
    }

    /// Validates an explicit multiplication table: Latin square, identity,
    /// associativity (exhaustive up to order 64, sampled above).
    pub fn from_cayley_table(table: Vec<Vec<usize>>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::InvalidTable("empty table".into()));
        }
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidTable(format!("row {i} has length {}", row.len())));
            }
            let mut seen = vec![false; n];
            for &x in row {
                if x >= n || std::mem::replace(&mut seen[x], true) {
                    return Err(Error::InvalidTable(format!("row {i} is not a permutation")));
                }
            }
        }
        for j in 0..n {
            let mut seen = vec![false; n];
            for row in &table {
                if std::mem::replace(&mut seen[row[j]], true) {
                    return Err(Error::InvalidTable(format!("column {j} is not a permutation")));
                }
            }
        }
        let flat: Vec<usize> = table.into_iter().flatten().collect();
        let m = |a: usize, b: usize| flat[a * n + b];
        if !(0..n).any(|e| (0..n).all(|g| m(e, g) == g && m(g, e) == g)) {
            return Err(Error::InvalidTable("no identity element".into()));
        }
        let assoc = |a: usize, b: usize, c: usize| m(m(a, b), c) == m(a, m(b, c));
        if n <= 64 {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if !assoc(a, b, c) {
                            return Err(Error::InvalidTable(format!("not associative at ({a},{b},{c})")));
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0);
            for _ in 0..200_000 {
                let (a, b, c) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
                if !assoc(a, b, c) {
                    return Err(Error::InvalidTable(format!("not associative at ({a},{b},{c})")));
                }
            }
        }
        let labels = (0..n).map(|k| k.to_string()).collect();
        let mut g = Self::from_trusted(format!("table[{n}]"), n, flat, labels, Vec::new());
        g.generators = g.small_generating_set();
        Ok(g)
    }

    fn small_generating_set(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut current = self.closure(&gens);
        for g in 0..self.order {
            if current.len() == self.order {
                break;
            }
            if current.binary_search(&g).is_err() {
                gens.push(g);
                current = self.closure(&gens);
            }
        }
        gens
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn pow(&self, g: usize, k: usize) -> usize {
        (0..k).fold(self.identity, |acc, _| self.mul(acc, g))
    }

    pub fn conjugate(&self, x: usize, g: usize) -> usize {
        self.mul(self.mul(x, g), self.inv(x))
    }

    pub fn label(&self, g: usize) -> &str {
        &self.labels[g]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn cayley_table(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.order).map(<[usize]>::to_vec).collect()
    }

    /// Resolves an element from its label, a decimal index, or (for
    /// permutation groups) cycle notation such as `(1,2,3)` or `(123)`.
    pub fn element_by_label(&self, s: &str) -> Result<usize> {
        let s = s.trim();
        if let Some(i) = self.labels.iter().position(|l| l == s) {
            return Ok(i);
        }
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if let Some(i) = self.labels.iter().position(|l| *l == compact) {
            return Ok(i);
        }
        if let Some(perms) = &self.perms {
            if compact.starts_with('(') {
                let degree = perms[0].len();
                let p = parse_cycles(&compact, degree)?;
                if let Some(i) = perms.iter().position(|q| *q == p) {
                    return Ok(i);
                }
                return Err(Error::Parse(format!("permutation {s} is not in {}", self.name)));
            }
        }
        if let Ok(i) = compact.parse::<usize>() {
            if i < self.order {
                return Ok(i);
            }
        }
        Err(Error::Parse(format!("unknown element {s:?} of {}", self.name)))
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut x = g;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    /// Least common multiple of the element orders.
    pub fn exponent(&self) -> usize {
        (0..self.order).fold(1, |acc, g| num_integer::lcm(acc, self.element_order(g)))
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn is_cyclic(&self) -> bool {
        (0..self.order).any(|g| self.element_order(g) == self.order)
    }

    /// Sorted elements of the subgroup generated by `gens`.
    fn closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut inside = vec![false; self.order];
        inside[self.identity] = true;
        let mut out = vec![self.identity];
        let mut i = 0;
        while i < out.len() {
            let x = out[i];
            for &g in gens {
                let y = self.mul(x, g);
                if !inside[y] {
                    inside[y] = true;
                    out.push(y);
                }
            }
            i += 1;
        }
        out.sort_unstable();
        out
    }

    fn subgroup_unchecked(&self, elements: Vec<usize>) -> Subgroup {
        Subgroup {
            elements,
            parent_order: self.order,
        }
    }

    pub fn generated_subgroup(&self, gens: &[usize]) -> Result<Subgroup> {
        if let Some(&g) = gens.iter().find(|&&g| g >= self.order) {
            return Err(Error::IndexOutOfRange {
                index: g,
                bound: self.order,
            });
        }
        Ok(self.subgroup_unchecked(self.closure(gens)))
    }

    /// Wraps an element set after checking that it is a subgroup.
    pub fn subgroup(&self, elements: &[usize]) -> Result<Subgroup> {
        let mut e = elements.to_vec();
        e.sort_unstable();
        e.dedup();
        if e.iter().any(|&g| g >= self.order) {
            return Err(Error::NotSubgroup);
        }
        let h = self.subgroup_unchecked(e);
        let closed = h.contains(self.identity)
            && h.elements.iter().all(|&a| h.elements.iter().all(|&b| h.contains(self.mul(a, self.inv(b)))));
        if closed {
            Ok(h)
        } else {
            Err(Error::NotSubgroup)
        }
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        self.subgroup_unchecked(vec![self.identity])
    }

    pub fn whole(&self) -> Subgroup {
        self.subgroup_unchecked((0..self.order).collect())
    }

    /// Distinct subgroups generated by a single element, in canonical order.
    pub fn cyclic_subgroups(&self) -> Vec<Subgroup> {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for g in 0..self.order {
            let h = self.closure(&[g]);
            if seen.insert(h.clone()) {
                out.push(self.subgroup_unchecked(h));
            }
        }
        out.sort_by(|a, b| a.key().cmp(&b.key()));
        out
    }

    /// Every subgroup: cyclic subgroups closed under pairwise joins until
    /// nothing new appears. Sorted by `(order, element set)`.
    pub fn all_subgroups(&self) -> Result<Vec<Subgroup>> {
        let limit = configured_max_order();
        if self.order > limit {
            return Err(Error::OrderTooLarge {
                order: self.order,
                limit,
            });
        }
        // Each entry keeps a generating set so joins close over few generators.
        let mut found: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
        let mut seen: HashSet<Vec<usize>> = HashSet::new();
        for g in 0..self.order {
            let h = self.closure(&[g]);
            if seen.insert(h.clone()) {
                found.push((h, vec![g]));
            }
        }
        let mut i = 0;
        while i < found.len() {
            for j in 0..i {
                let (a, b) = (&found[i].0, &found[j].0);
                if a.len() == self.order || b.len() == self.order {
                    continue;
                }
                let contains = |big: &Vec<usize>, small: &Vec<usize>| small.iter().all(|x| big.binary_search(x).is_ok());
                if contains(a, b) || contains(b, a) {
                    continue;
                }
                let mut gens = found[i].1.clone();
                gens.extend(&found[j].1);
                let h = self.closure(&gens);
                if seen.insert(h.clone()) {
                    found.push((h, gens));
                }
            }
            i += 1;
        }
        let mut out: Vec<Subgroup> = found.into_iter().map(|(h, _)| self.subgroup_unchecked(h)).collect();
        out.sort_by(|a, b| a.key().cmp(&b.key()));
        Ok(out)
    }

    /// Conjugacy classes, identity class first, the rest ordered by least element.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let mut assigned = vec![false; self.order];
        let mut classes = Vec::new();
        for g in 0..self.order {
            if assigned[g] {
                continue;
            }
            let mut class: Vec<usize> = (0..self.order).map(|x| self.conjugate(x, g)).collect();
            class.sort_unstable();
            class.dedup();
            for &c in &class {
                assigned[c] = true;
            }
            classes.push(class);
        }
        classes.sort_by_key(|c| (c[0] != self.identity || c.len() != 1, c[0]));
        classes
    }

    /// `x H x^{-1}`.
    pub fn conjugate_subgroup(&self, h: &Subgroup, x: usize) -> Subgroup {
        let mut e: Vec<usize> = h.elements.iter().map(|&g| self.conjugate(x, g)).collect();
        e.sort_unstable();
        self.subgroup_unchecked(e)
    }

    pub fn are_conjugate_subgroups(&self, h: &Subgroup, k: &Subgroup) -> bool {
        h.order() == k.order() && (0..self.order).any(|x| self.conjugate_subgroup(h, x) == *k)
    }

    pub fn is_normal(&self, h: &Subgroup) -> bool {
        (0..self.order).all(|x| h.elements.iter().all(|&g| h.contains(self.conjugate(x, g))))
    }

    pub fn index(&self, h: &Subgroup) -> usize {
        self.order / h.order()
    }

    /// Orbits `Hσ` of the left action of `H`, each sorted, ordered by least element.
    pub fn left_cosets(&self, h: &Subgroup) -> Vec<Vec<usize>> {
        let mut assigned = vec![false; self.order];
        let mut cosets = Vec::new();
        for s in 0..self.order {
            if assigned[s] {
                continue;
            }
            let mut c: Vec<usize> = h.elements.iter().map(|&x| self.mul(x, s)).collect();
            c.sort_unstable();
            for &x in &c {
                assigned[x] = true;
            }
            cosets.push(c);
        }
        cosets
    }

    /// Element -> position of its coset `Hσ` in [`left_cosets`](Self::left_cosets).
    pub fn coset_map(&self, h: &Subgroup) -> Vec<usize> {
        let mut map = vec![0; self.order];
        for (i, c) in self.left_cosets(h).iter().enumerate() {
            for &x in c {
                map[x] = i;
            }
        }
        map
    }

    /// `G / H` together with the projection `G -> G/H`.
    pub fn quotient_group(&self, h: &Subgroup) -> Result<(FiniteGroup, Vec<usize>)> {
        if !self.is_normal(h) {
            return Err(Error::NotNormal);
        }
        let cosets = self.left_cosets(h);
        let proj = self.coset_map(h);
        let m = cosets.len();
        let mut table = vec![0; m * m];
        for (i, a) in cosets.iter().enumerate() {
            for (j, b) in cosets.iter().enumerate() {
                table[i * m + j] = proj[self.mul(a[0], b[0])];
            }
        }
        let labels = cosets.iter().map(|c| format!("{}H", self.labels[c[0]])).collect();
        let mut gens: Vec<usize> = self.generators.iter().map(|&g| proj[g]).collect();
        gens.sort_unstable();
        gens.dedup();
        let q = Self::from_trusted(format!("{}/H", self.name), m, table, labels, gens);
        Ok((q, proj))
    }

    pub fn subgroup_labels(&self, h: &Subgroup) -> Vec<String> {
        h.elements.iter().map(|&g| self.labels[g].clone()).collect()
    }
}

/// Parses a group specification: `C<n>`, `D<n>` (order `2n`), `Q8`,
/// `Q<4n>`, `Dic<n>`, `S<n>`, `A<n>`, any of these raised to a power with
/// `^k`, direct products joined by `x`, `perm:<cycles>;<cycles>;...` and
/// `table:<path to JSON Cayley table>`. The result is named by `spec`.
pub fn parse_group(spec: &str) -> Result<FiniteGroup> {
    let spec = spec.trim();
    let limit = configured_max_order();
    if let Some(rest) = spec.strip_prefix("perm:") {
        let raw: Vec<Vec<usize>> = rest
            .split(';')
            .map(str::trim)
            .filter(|g| !g.is_empty())
            .map(|g| parse_cycles(g, 0))
            .collect::<Result<_>>()?;
        return Ok(FiniteGroup::from_permutations(&raw)?.with_name(spec));
    }
    if let Some(path) = spec.strip_prefix("table:") {
        let text = std::fs::read_to_string(path.trim())?;
        let table: Vec<Vec<usize>> = serde_json::from_str(&text)?;
        if table.len() > limit {
            return Err(Error::OrderTooLarge {
                order: table.len(),
                limit,
            });
        }
        return Ok(FiniteGroup::from_cayley_table(table)?.with_name(spec));
    }
    let mut factors = Vec::new();
    for part in spec.split('x') {
        let (atom, power) = match part.split_once('^') {
            Some((a, k)) => (
                a.trim(),
                k.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad exponent in {part:?}")))?,
            ),
            None => (part.trim(), 1),
        };
        for _ in 0..power {
            factors.push(atom);
        }
    }
    let mut total: usize = 1;
    for atom in &factors {
        total = total.saturating_mul(atom_order(atom)?);
        if total > limit {
            return Err(Error::OrderTooLarge { order: total, limit });
        }
    }
    let mut group: Option<FiniteGroup> = None;
    for atom in factors {
        let g = parse_atom(atom)?;
        group = Some(match group {
            None => g,
            Some(acc) => FiniteGroup::direct_product(&acc, &g),
        });
    }
    let g = group.ok_or_else(|| Error::Parse("empty group specification".into()))?;
    Ok(g.with_name(spec))
}

fn split_atom(atom: &str) -> Result<(&str, usize)> {
    let pos = atom
        .find(|c: char| c.is_ascii_digit())
        .ok_or_else(|| Error::Parse(format!("unknown group {atom:?}")))?;
    let n = atom[pos..]
        .parse::<usize>()
        .map_err(|_| Error::Parse(format!("unknown group {atom:?}")))?;
    Ok((&atom[..pos], n))
}

fn atom_order(atom: &str) -> Result<usize> {
    let (kind, n) = split_atom(atom)?;
    let factorial = |n: usize| (1..=n).try_fold(1usize, |a, k| a.checked_mul(k)).unwrap_or(usize::MAX);
    Ok(match kind {
        "C" | "Q" => n,
        "D" => 2 * n,
        "Dic" => 4 * n,
        "S" => factorial(n),
        "A" => (factorial(n) / 2).max(1),
        _ => return Err(Error::Parse(format!("unknown group {atom:?}"))),
    })
}

fn parse_atom(atom: &str) -> Result<FiniteGroup> {
    let (kind, n) = split_atom(atom)?;
    match kind {
        "C" => FiniteGroup::cyclic(n),
        "D" => FiniteGroup::dihedral(n),
        "Q" if n == 8 => Ok(FiniteGroup::quaternion()),
        "Q" if n >= 8 && n % 4 == 0 => Ok(FiniteGroup::dicyclic(n / 4)?.with_name(atom)),
        "Dic" => FiniteGroup::dicyclic(n),
        "S" => FiniteGroup::symmetric(n),
        "A" => FiniteGroup::alternating(n),
        _ => Err(Error::Parse(format!("unknown group {atom:?}"))),
    }
}

fn transposition(n: usize, a: usize, b: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.swap(a, b);
    p
}

fn compose(p: &[usize], q: &[usize]) -> Vec<usize> {
    q.iter().map(|&x| p[x]).collect()
}

/// 1-based cycle notation, `()` for the identity.
pub fn cycle_notation(p: &[usize]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] == start {
            continue;
        }
        let mut cycle = Vec::new();
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            cycle.push((x + 1).to_string());
            x = p[x];
        }
        out.push('(');
        out.push_str(&cycle.join(","));
        out.push(')');
    }
    if out.is_empty() {
        "()".into()
    } else {
        out
    }
}

/// Parses 1-based cycle notation into a 0-based image vector of length at
/// least `degree`. Cycles without commas are read one digit per point.
pub fn parse_cycles(s: &str, degree: usize) -> Result<Vec<usize>> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let mut cycles: Vec<Vec<usize>> = Vec::new();
    let mut rest = s.as_str();
    while !rest.is_empty() {
        let body_end = rest
            .find(')')
            .filter(|_| rest.starts_with('('))
            .ok_or_else(|| Error::Parse(format!("malformed cycle notation {s:?}")))?;
        let body = &rest[1..body_end];
        let points: Vec<usize> = if body.is_empty() {
            Vec::new()
        } else if body.contains(',') {
            body.split(',')
                .map(|t| t.parse::<usize>().map_err(|_| Error::Parse(format!("bad point {t:?}"))))
                .collect::<Result<_>>()?
        } else {
            body.chars()
                .map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(|| Error::Parse(format!("bad point {c:?}"))))
                .collect::<Result<_>>()?
        };
        if points.contains(&0) {
            return Err(Error::Parse("cycle points are 1-based".into()));
        }
        cycles.push(points.into_iter().map(|x| x - 1).collect());
        rest = &rest[body_end + 1..];
    }
    let n = cycles.iter().flatten().map(|&x| x + 1).max().unwrap_or(0).max(degree);
    let mut p: Vec<usize> = (0..n).collect();
    let mut touched = vec![false; n];
    for c in &cycles {
        for (i, &x) in c.iter().enumerate() {
            if std::mem::replace(&mut touched[x], true) {
                return Err(Error::Parse(format!("point {} repeated in {s:?}", x + 1)));
            }
            p[x] = c[(i + 1) % c.len()];
        }
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c2xc6() -> FiniteGroup {
        FiniteGroup::direct_product(&FiniteGroup::cyclic(2).unwrap(), &FiniteGroup::cyclic(6).unwrap())
    }

    #[test]
    fn constructors_have_expected_orders() {
        assert_eq!(FiniteGroup::cyclic(1).unwrap().order(), 1);
        assert_eq!(FiniteGroup::dihedral(4).unwrap().order(), 8);
        assert_eq!(FiniteGroup::dicyclic(3).unwrap().order(), 12);
        assert_eq!(FiniteGroup::symmetric(4).unwrap().order(), 24);
        assert_eq!(FiniteGroup::alternating(4).unwrap().order(), 12);
        assert_eq!(FiniteGroup::symmetric(1).unwrap().order(), 1);
        assert_eq!(c2xc6().order(), 12);
        assert_eq!(c2xc6().label(7), "(1,1)");
        let c2 = FiniteGroup::cyclic(2).unwrap();
        let k = FiniteGroup::direct_product(&FiniteGroup::direct_product(&c2, &c2), &c2);
        assert_eq!(k.label(5), "(1,0,1)");
    }

    #[test]
    fn quaternion_relations() {
        let q = FiniteGroup::quaternion();
        let i = q.element_by_label("i").unwrap();
        let j = q.element_by_label("j").unwrap();
        let k = q.element_by_label("k").unwrap();
        let m1 = q.element_by_label("-1").unwrap();
        assert_eq!(q.mul(i, j), k);
        assert_eq!(q.mul(i, i), m1);
        assert_eq!(q.mul(j, j), m1);
        assert_eq!(q.mul(k, k), m1);
        assert_eq!(q.mul(j, i), q.element_by_label("-k").unwrap());
        assert!(!q.is_abelian());
    }

    #[test]
    fn dihedral_relations() {
        let d = FiniteGroup::dihedral(5).unwrap();
        let r = d.element_by_label("r").unwrap();
        let s = d.element_by_label("s").unwrap();
        assert_eq!(d.element_order(r), 5);
        assert_eq!(d.element_order(s), 2);
        assert_eq!(d.mul(d.mul(s, r), s), d.inv(r));
    }

    #[test]
    fn cayley_table_validation() {
        let c3 = FiniteGroup::cyclic(3).unwrap();
        let g = FiniteGroup::from_cayley_table(c3.cayley_table()).unwrap();
        assert_eq!(g.order(), 3);
        assert!(g.is_cyclic());
        assert!(matches!(
            FiniteGroup::from_cayley_table(vec![vec![0, 1], vec![0, 1]]),
            Err(Error::InvalidTable(_))
        ));
        // Latin square without associativity (order 5 loop).
        let loop5 = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(FiniteGroup::from_cayley_table(loop5).is_err());
    }

    #[test]
    fn permutation_closure_bound() {
        let big = vec![(1..12).chain([0]).collect::<Vec<_>>(), transposition(12, 0, 1)];
        assert!(matches!(
            FiniteGroup::from_permutations(&big),
            Err(Error::ClosureTooLarge { .. })
        ));
    }

    #[test]
    fn cycle_parsing() {
        assert_eq!(parse_cycles("(12)", 3).unwrap(), vec![1, 0, 2]);
        assert_eq!(parse_cycles("(1,2,3)", 3).unwrap(), vec![1, 2, 0]);
        assert_eq!(cycle_notation(&[1, 2, 0, 4, 3]), "(1,2,3)(4,5)");
        assert!(parse_cycles("(1,1)", 2).is_err());
        let s3 = FiniteGroup::symmetric(3).unwrap();
        assert_eq!(s3.element_by_label("(12)").unwrap(), s3.element_by_label("(1,2)").unwrap());
        assert_eq!(s3.label(0), "()");
    }

    #[test]
    fn subgroup_examples() {
        let c2 = FiniteGroup::cyclic(2).unwrap();
        assert_eq!(FiniteGroup::direct_product(&c2, &c2).all_subgroups().unwrap().len(), 5);
        assert_eq!(c2xc6().all_subgroups().unwrap().len(), 10);
        assert_eq!(FiniteGroup::quaternion().all_subgroups().unwrap().len(), 6);
        assert_eq!(FiniteGroup::quaternion().cyclic_subgroups().len(), 5);
        assert_eq!(FiniteGroup::symmetric(3).unwrap().cyclic_subgroups().len(), 5);
        assert_eq!(FiniteGroup::cyclic(7).unwrap().cyclic_subgroups().len(), 2);
        assert_eq!(FiniteGroup::symmetric(3).unwrap().conjugacy_classes().len(), 3);
    }

    #[test]
    fn s3_reflections_are_conjugate() {
        let s3 = FiniteGroup::symmetric(3).unwrap();
        let subs: Vec<Subgroup> = ["(1,2)", "(1,3)", "(2,3)"]
            .iter()
            .map(|l| s3.generated_subgroup(&[s3.element_by_label(l).unwrap()]).unwrap())
            .collect();
        assert!(s3.are_conjugate_subgroups(&subs[0], &subs[1]));
        assert!(s3.are_conjugate_subgroups(&subs[1], &subs[2]));
        assert!(!s3.is_normal(&subs[0]));
        assert!(matches!(s3.quotient_group(&subs[0]), Err(Error::NotNormal)));
        assert_eq!(s3.index(&s3.trivial_subgroup()), 6);
    }

    #[test]
    fn quotient_by_order_four_subgroup_is_c3() {
        let g = c2xc6();
        let h4 = g
            .generated_subgroup(&[g.element_by_label("(1,0)").unwrap(), g.element_by_label("(0,3)").unwrap()])
            .unwrap();
        assert_eq!(h4.order(), 4);
        let (q, proj) = g.quotient_group(&h4).unwrap();
        assert_eq!(q.order(), 3);
        assert!(q.is_cyclic());
        for a in 0..12 {
            for b in 0..12 {
                assert_eq!(proj[g.mul(a, b)], q.mul(proj[a], proj[b]));
            }
        }
    }

    #[test]
    fn group_specs() {
        assert_eq!(parse_group("C2xC6").unwrap().order(), 12);
        assert_eq!(parse_group("C2^3").unwrap().order(), 8);
        assert_eq!(parse_group("C2^3").unwrap().label(3), "(0,1,1)");
        assert_eq!(parse_group("Q16").unwrap().order(), 16);
        assert_eq!(parse_group("Dic3").unwrap().order(), 12);
        assert_eq!(parse_group("C2xA4").unwrap().order(), 24);
        assert_eq!(parse_group("perm:(1,2,3,4,5);(2,3,5,4)").unwrap().order(), 20);
        assert_eq!(parse_group("perm:(1,2,3,4,5,6,7);(2,3,5)(4,7,6)").unwrap().order(), 21);
        assert!(!parse_group("perm:(1,2,3,4,5,6,7,8);(2,4)(3,7)(6,8)").unwrap().is_abelian());
        assert!(matches!(parse_group("S6"), Err(Error::OrderTooLarge { .. })));
        assert!(parse_group("Z5").is_err());
        assert!(parse_group("Q6").is_err());
    }

    #[test]
    fn element_orders_and_exponent() {
        assert_eq!(c2xc6().exponent(), 6);
        assert_eq!(FiniteGroup::symmetric(4).unwrap().exponent(), 12);
        assert_eq!(FiniteGroup::quaternion().exponent(), 4);
        assert!(c2xc6().is_abelian());
        assert!(!c2xc6().is_cyclic());
    }
}
