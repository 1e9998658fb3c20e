//! Voltage assignments, derived graphs and their intermediate quotients.
//!
//! `G` acts on the derived graph by left multiplication in the second
//! coordinate, voltages multiply on the right, and the intermediate graph
//! of `H` is the quotient by the left `H`-action (cosets `Hσ`).

use crate::error::{Error, Result};
use crate::graph::{DirectedEdge, Orientation, SerreGraph};
use crate::group::{parse_group, FiniteGroup, Subgroup};
use crate::report::VerificationReport;
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::path::Path;

/// Resampling budget for [`random_connected_voltage`].
pub const RANDOM_VOLTAGE_ATTEMPTS: usize = 1000;

#[derive(Clone, Debug)]
pub struct VoltageAssignment {
    base: SerreGraph,
    group: FiniteGroup,
    orientation: Orientation,
    /// Voltage of every directed edge, inverse edges included.
    volt: Vec<usize>,
}

/// A voltage file entry: `edge` indexes the default orientation of the base.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VoltageEntry {
    pub edge: usize,
    pub element: ElementRef,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ElementRef {
    Index(usize),
    Label(String),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VoltageFile {
    pub group: String,
    pub assignments: Vec<VoltageEntry>,
}

impl VoltageAssignment {
    /// `values[i]` is the voltage of `orientation.edges()[i]`.
    pub fn new(base: SerreGraph, group: FiniteGroup, orientation: Orientation, values: &[usize]) -> Result<Self> {
        if values.len() != orientation.len() {
            return Err(Error::LengthMismatch(values.len(), orientation.len()));
        }
        if let Some(&bad) = values.iter().find(|&&x| x >= group.order()) {
            return Err(Error::IndexOutOfRange {
                index: bad,
                bound: group.order(),
            });
        }
        let mut volt = vec![group.identity(); base.edge_count()];
        for (&e, &x) in orientation.edges().iter().zip(values) {
            volt[e] = x;
            volt[base.edge(e).inverse] = group.inv(x);
        }
        Ok(VoltageAssignment {
            base,
            group,
            orientation,
            volt,
        })
    }

    pub fn on_default_orientation(base: SerreGraph, group: FiniteGroup, values: &[usize]) -> Result<Self> {
        let o = base.default_orientation();
        Self::new(base, group, o, values)
    }

    /// Voltages given by element labels along the default orientation.
    pub fn from_labels(base: SerreGraph, group: FiniteGroup, labels: &[&str]) -> Result<Self> {
        let values = labels.iter().map(|l| group.element_by_label(l)).collect::<Result<Vec<_>>>()?;
        Self::on_default_orientation(base, group, &values)
    }

    /// Reads a voltage file. Edges it does not mention carry the identity.
    pub fn from_file(base: SerreGraph, file: &VoltageFile) -> Result<Self> {
        let group = parse_group(&file.group)?;
        let o = base.default_orientation();
        let mut values = vec![group.identity(); o.len()];
        for a in &file.assignments {
            if a.edge >= o.len() {
                return Err(Error::IndexOutOfRange {
                    index: a.edge,
                    bound: o.len(),
                });
            }
            values[a.edge] = match &a.element {
                ElementRef::Index(i) if *i < group.order() => *i,
                ElementRef::Index(i) => {
                    return Err(Error::IndexOutOfRange {
                        index: *i,
                        bound: group.order(),
                    })
                }
                ElementRef::Label(l) => group.element_by_label(l)?,
            };
        }
        Self::new(base, group, o, &values)
    }

    pub fn load(base: SerreGraph, path: impl AsRef<Path>) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        let file: VoltageFile = serde_json::from_str(&text)?;
        Self::from_file(base, &file)
    }

    pub fn to_file(&self) -> VoltageFile {
        let index: Vec<usize> = self.base.default_orientation().edges().to_vec();
        VoltageFile {
            group: self.group.name().to_string(),
            assignments: index
                .iter()
                .enumerate()
                .map(|(i, &e)| VoltageEntry {
                    edge: i,
                    element: ElementRef::Label(self.group.label(self.volt[e]).to_string()),
                })
                .collect(),
        }
    }

    pub fn base(&self) -> &SerreGraph {
        &self.base
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn orientation(&self) -> &Orientation {
        &self.orientation
    }

    /// `α(e)` for any directed edge.
    pub fn voltage(&self, e: usize) -> usize {
        self.volt[e]
    }

    /// Voltages along the orientation, in order.
    pub fn orientation_voltages(&self) -> Vec<usize> {
        self.orientation.edges().iter().map(|&e| self.volt[e]).collect()
    }

    /// The same assignment read in a quotient group through `proj`.
    pub fn compose(&self, quotient: &FiniteGroup, proj: &[usize]) -> Result<VoltageAssignment> {
        let values: Vec<usize> = self.orientation_voltages().iter().map(|&x| proj[x]).collect();
        VoltageAssignment::new(self.base.clone(), quotient.clone(), self.orientation.clone(), &values)
    }

    pub fn derive(&self) -> Cover {
        derived_graph(self)
    }
}

#[derive(Clone, Debug)]
pub struct Cover {
    voltage: VoltageAssignment,
    derived: SerreGraph,
}

/// `X(α)`: vertex `(v,σ)` at `v·|G| + σ`, edge `(e,σ)` at `e·|G| + σ`.
pub fn derived_graph(alpha: &VoltageAssignment) -> Cover {
    let g = &alpha.group;
    let n = g.order();
    let base = &alpha.base;
    let mut edges = Vec::with_capacity(base.edge_count() * n);
    for (e, de) in base.edges().iter().enumerate() {
        for s in 0..n {
            let target = g.mul(s, alpha.volt[e]);
            edges.push(DirectedEdge {
                origin: de.origin * n + s,
                terminus: de.terminus * n + target,
                inverse: de.inverse * n + target,
            });
        }
    }
    let names = (0..base.vertex_count() * n)
        .map(|i| format!("({},{})", base.vertex_name(i / n), g.label(i % n)))
        .collect();
    let derived = SerreGraph::from_edges(base.vertex_count() * n, edges)
        .and_then(|y| y.with_names(names))
        .expect("derived graph is well formed");
    Cover {
        voltage: alpha.clone(),
        derived,
    }
}

/// Checks that `(vmap, emap)` is a graph morphism which restricts to a
/// bijection on the edges leaving each vertex, and is onto the vertices.
pub fn is_covering_map(y: &SerreGraph, x: &SerreGraph, vmap: &[usize], emap: &[usize]) -> bool {
    if vmap.len() != y.vertex_count() || emap.len() != y.edge_count() {
        return false;
    }
    for (e, de) in y.edges().iter().enumerate() {
        let img = x.edge(emap[e]);
        if vmap[de.origin] != img.origin || vmap[de.terminus] != img.terminus || emap[de.inverse] != img.inverse {
            return false;
        }
    }
    let mut star_y = vec![Vec::new(); y.vertex_count()];
    for (e, de) in y.edges().iter().enumerate() {
        star_y[de.origin].push(emap[e]);
    }
    let mut star_x = vec![Vec::new(); x.vertex_count()];
    for (e, de) in x.edges().iter().enumerate() {
        star_x[de.origin].push(e);
    }
    let mut hit = vec![false; x.vertex_count()];
    for (w, star) in star_y.iter_mut().enumerate() {
        star.sort_unstable();
        if *star != star_x[vmap[w]] {
            return false;
        }
        hit[vmap[w]] = true;
    }
    hit.into_iter().all(|b| b)
}

impl Cover {
    pub fn voltage(&self) -> &VoltageAssignment {
        &self.voltage
    }

    pub fn derived(&self) -> &SerreGraph {
        &self.derived
    }

    pub fn base(&self) -> &SerreGraph {
        &self.voltage.base
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.voltage.group
    }

    pub fn project_vertex(&self, w: usize) -> usize {
        w / self.group().order()
    }

    pub fn project_edge(&self, e: usize) -> usize {
        e / self.group().order()
    }

    pub fn projection_is_covering(&self) -> bool {
        let vmap: Vec<usize> = (0..self.derived.vertex_count()).map(|w| self.project_vertex(w)).collect();
        let emap: Vec<usize> = (0..self.derived.edge_count()).map(|e| self.project_edge(e)).collect();
        is_covering_map(&self.derived, self.base(), &vmap, &emap)
    }

    /// Connected derived graph with a valid covering projection.
    pub fn is_galois(&self) -> bool {
        self.derived.is_connected() && self.projection_is_covering()
    }

    pub fn kappa(&self) -> Result<BigInt> {
        self.derived.spanning_tree_count()
    }

    fn require_galois(&self) -> Result<()> {
        if self.is_galois() {
            Ok(())
        } else {
            Err(Error::NotGalois)
        }
    }

    /// `X_H`: the quotient of the derived graph by the left action of `H`.
    pub fn intermediate_graph(&self, h: &Subgroup) -> Result<IntermediateGraph> {
        self.require_galois()?;
        let g = self.group();
        if h.elements().iter().any(|&x| x >= g.order()) || h.index() * h.order() != g.order() {
            return Err(Error::NotSubgroup);
        }
        let cosets = g.left_cosets(h);
        let coset_of = g.coset_map(h);
        let m = cosets.len();
        let base = self.base();
        let mut edges = Vec::with_capacity(base.edge_count() * m);
        for (e, de) in base.edges().iter().enumerate() {
            for c in &cosets {
                let target = coset_of[g.mul(c[0], self.voltage.volt[e])];
                edges.push(DirectedEdge {
                    origin: de.origin * m + coset_of[c[0]],
                    terminus: de.terminus * m + target,
                    inverse: de.inverse * m + target,
                });
            }
        }
        let names = (0..base.vertex_count() * m)
            .map(|i| format!("({},H{})", base.vertex_name(i / m), g.label(cosets[i % m][0])))
            .collect();
        let graph = SerreGraph::from_edges(base.vertex_count() * m, edges)?.with_names(names)?;
        let n = g.order();
        let from_cover_vertex = (0..self.derived.vertex_count()).map(|w| (w / n) * m + coset_of[w % n]).collect();
        let from_cover_edge = (0..self.derived.edge_count()).map(|e| (e / n) * m + coset_of[e % n]).collect();
        let ig = IntermediateGraph {
            subgroup: h.clone(),
            graph,
            cosets,
            from_cover_vertex,
            from_cover_edge,
        };
        if !ig.projections_are_coverings(self) {
            return Err(Error::Internal("intermediate projection is not a covering".into()));
        }
        Ok(ig)
    }

    /// `κ(X_H)` for each subgroup, computed in parallel.
    pub fn intermediate_kappas(&self, subgroups: &[Subgroup]) -> Result<Vec<BigInt>> {
        self.require_galois()?;
        subgroups
            .par_iter()
            .map(|h| self.intermediate_graph(h)?.graph.spanning_tree_count())
            .collect()
    }

    /// The canonical map `X_H → X_K` for `H ⊆ K`, checked to be a covering.
    pub fn tower_map_is_covering(&self, h: &IntermediateGraph, k: &IntermediateGraph) -> Result<bool> {
        if !h.subgroup.is_subset_of(&k.subgroup) {
            return Err(Error::NotSubgroup);
        }
        let g = self.group();
        let coset_k = g.coset_map(&k.subgroup);
        let (mh, mk) = (h.cosets.len(), k.cosets.len());
        let vmap: Vec<usize> = (0..h.graph.vertex_count())
            .map(|i| (i / mh) * mk + coset_k[h.cosets[i % mh][0]])
            .collect();
        let emap: Vec<usize> = (0..h.graph.edge_count())
            .map(|i| (i / mh) * mk + coset_k[h.cosets[i % mh][0]])
            .collect();
        Ok(is_covering_map(&h.graph, &k.graph, &vmap, &emap))
    }

    pub fn to_json(&self) -> serde_json::Value {
        let y = &self.derived;
        serde_json::json!({
            "group": self.group().name(),
            "base": self.base().to_file(),
            "voltage": self.voltage.to_file(),
            "vertices": y.names().map(<[String]>::to_vec).unwrap_or_default(),
            "edges": y.undirected_edges().iter().map(|&(u, v)| [u, v]).collect::<Vec<_>>(),
        })
    }
}

#[derive(Clone, Debug)]
pub struct IntermediateGraph {
    subgroup: Subgroup,
    graph: SerreGraph,
    cosets: Vec<Vec<usize>>,
    from_cover_vertex: Vec<usize>,
    from_cover_edge: Vec<usize>,
}

impl IntermediateGraph {
    pub fn subgroup(&self) -> &Subgroup {
        &self.subgroup
    }

    pub fn graph(&self) -> &SerreGraph {
        &self.graph
    }

    pub fn cosets(&self) -> &[Vec<usize>] {
        &self.cosets
    }

    pub fn kappa(&self) -> Result<BigInt> {
        self.graph.spanning_tree_count()
    }

    fn projections_are_coverings(&self, cover: &Cover) -> bool {
        let m = self.cosets.len();
        let down_v: Vec<usize> = (0..self.graph.vertex_count()).map(|i| i / m).collect();
        let down_e: Vec<usize> = (0..self.graph.edge_count()).map(|i| i / m).collect();
        is_covering_map(cover.derived(), &self.graph, &self.from_cover_vertex, &self.from_cover_edge)
            && is_covering_map(&self.graph, cover.base(), &down_v, &down_e)
    }
}

/// `κ(X_H) = κ(X_{H'})` for every pair of conjugate subgroups.
pub fn conjugate_kappa_check(cover: &Cover) -> Result<VerificationReport> {
    let g = cover.group();
    let subs = g.all_subgroups()?;
    let kappas = cover.intermediate_kappas(&subs)?;
    let mut parts = Vec::new();
    for i in 0..subs.len() {
        for j in i + 1..subs.len() {
            if g.are_conjugate_subgroups(&subs[i], &subs[j]) {
                parts.push(VerificationReport::compare(
                    format!("kappa(X_H{i}) = kappa(X_H{j})"),
                    g.name(),
                    &kappas[i],
                    &kappas[j],
                ));
            }
        }
    }
    let report = VerificationReport::all("conjugate subgroups give equal kappa", g.name(), &parts);
    Ok(if parts.is_empty() {
        report.trivially_true().with_note("no conjugate pairs of distinct subgroups")
    } else {
        report
    })
}

/// Uniformly random voltages on the default orientation, resampled until
/// the derived graph is connected.
pub fn random_connected_voltage(base: &SerreGraph, group: &FiniteGroup, seed: u64) -> Result<VoltageAssignment> {
    if !base.is_connected() {
        return Err(Error::DisconnectedGraph);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k = base.default_orientation().len();
    for _ in 0..RANDOM_VOLTAGE_ATTEMPTS {
        let values: Vec<usize> = (0..k).map(|_| rng.gen_range(0..group.order())).collect();
        let alpha = VoltageAssignment::on_default_orientation(base.clone(), group.clone(), &values)?;
        if derived_graph(&alpha).derived().is_connected() {
            return Ok(alpha);
        }
    }
    Err(Error::NoConnectedAssignmentFound {
        attempts: RANDOM_VOLTAGE_ATTEMPTS,
    })
}
