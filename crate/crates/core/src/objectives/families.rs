//! Instance types for the four objective families.

use serde::{Deserialize, Serialize};

use crate::dataio::graph::DiGraph;
use crate::error::{Error, Result};
use crate::poly::{Basis, MultilinearPolynomial};

/// Data summarization: tokens partitioned into subjects, one value vector per
/// document `z`.
#[derive(Clone, Debug, PartialEq)]
pub struct SmInstance {
    n: usize,
    partitions: Vec<Vec<usize>>,
    values: Vec<Vec<f64>>,
}

impl SmInstance {
    pub fn new(n: usize, partitions: Vec<Vec<usize>>, values: Vec<Vec<f64>>) -> Result<Self> {
        let mut seen = vec![false; n];
        for (j, part) in partitions.iter().enumerate() {
            for &i in part {
                if i >= n {
                    return Err(Error::invalid(
                        format!("payload.partitions[{j}]"),
                        format!("token {i} >= n = {n}"),
                    ));
                }
                if seen[i] {
                    return Err(Error::invalid(
                        format!("payload.partitions[{j}]"),
                        format!("token {i} belongs to two partitions"),
                    ));
                }
                seen[i] = true;
            }
        }
        if let Some(i) = seen.iter().position(|s| !s) {
            return Err(Error::invalid(
                "payload.partitions",
                format!("token {i} is not covered"),
            ));
        }
        for (z, r) in values.iter().enumerate() {
            let path = format!("payload.values[{z}]");
            if r.len() != n {
                return Err(Error::invalid(path, format!("expected {n} values, got {}", r.len())));
            }
            if r.iter().any(|v| !v.is_finite() || *v < 0.0) {
                return Err(Error::invalid(path, "values must be finite and nonnegative"));
            }
            let total: f64 = r.iter().sum();
            if (total - 1.0).abs() > 1e-9 {
                return Err(Error::invalid(path, format!("values sum to {total}, expected 1")));
            }
        }
        Ok(Self {
            n,
            partitions,
            values,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn partitions(&self) -> &[Vec<usize>] {
        &self.partitions
    }

    pub fn values(&self) -> &[Vec<f64>] {
        &self.values
    }

    pub(crate) fn inner_values(&self, r: &[f64], x: &[bool]) -> Vec<f64> {
        self.partitions
            .iter()
            .map(|p| p.iter().filter(|&&i| x[i]).map(|&i| r[i]).sum())
            .collect()
    }

    pub(crate) fn inner_polys(&self, r: &[f64]) -> Vec<MultilinearPolynomial> {
        self.partitions
            .iter()
            .map(|p| {
                MultilinearPolynomial::from_terms(
                    self.n,
                    Basis::Monomial,
                    p.iter().map(|&i| (r[i], vec![i])),
                )
                .expect("partition indices validated at construction")
            })
            .collect()
    }
}

/// One independent-cascade trace: `reach[v]` holds every node whose seeding
/// infects `v` (always including `v` itself).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Cascade {
    pub reach: Vec<Vec<usize>>,
}

impl Cascade {
    pub(crate) fn validate(&self, nodes: usize, path: &str) -> Result<()> {
        if self.reach.len() != nodes {
            return Err(Error::invalid(
                path,
                format!("expected {nodes} reachability sets, got {}", self.reach.len()),
            ));
        }
        for (v, set) in self.reach.iter().enumerate() {
            if !set.contains(&v) {
                return Err(Error::invalid(
                    format!("{path}[{v}]"),
                    format!("node {v} must reach itself"),
                ));
            }
            if let Some(&u) = set.iter().find(|&&u| u >= nodes) {
                return Err(Error::invalid(
                    format!("{path}[{v}]"),
                    format!("node {u} >= N = {nodes}"),
                ));
            }
        }
        Ok(())
    }

    /// Fraction of nodes infected by the seed set `x`.
    pub fn infected_fraction(&self, x: &[bool]) -> f64 {
        let hit = self
            .reach
            .iter()
            .filter(|set| set.iter().any(|&u| x[u]))
            .count();
        hit as f64 / self.reach.len() as f64
    }

    pub(crate) fn inner_poly(&self) -> MultilinearPolynomial {
        let nodes = self.reach.len();
        let share = 1.0 / nodes as f64;
        let terms = std::iter::once((1.0, Vec::new()))
            .chain(self.reach.iter().map(|set| (-share, set.clone())));
        MultilinearPolynomial::from_terms(nodes, Basis::Complement, terms)
            .expect("cascade validated at construction")
    }
}

/// Generative mode: cascades are simulated on demand from a base graph.
#[derive(Clone, Debug, PartialEq)]
pub struct CascadeModel {
    pub graph: DiGraph,
    pub p: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ImInstance {
    nodes: usize,
    cascades: Vec<Cascade>,
    model: Option<CascadeModel>,
}

impl ImInstance {
    pub fn new(nodes: usize, cascades: Vec<Cascade>) -> Result<Self> {
        if nodes == 0 {
            return Err(Error::invalid("ground_size", "influence instance needs nodes"));
        }
        let mut cascades = cascades;
        for (z, c) in cascades.iter_mut().enumerate() {
            for set in &mut c.reach {
                set.sort_unstable();
                set.dedup();
            }
            c.validate(nodes, &format!("payload.cascades[{z}]"))?;
        }
        Ok(Self {
            nodes,
            cascades,
            model: None,
        })
    }

    /// Instance whose realizations are freshly simulated cascades.
    pub fn generative(graph: DiGraph, p: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::Config(format!("edge probability {p} outside [0, 1]")));
        }
        Ok(Self {
            nodes: graph.nodes(),
            cascades: Vec::new(),
            model: Some(CascadeModel { graph, p }),
        })
    }

    pub fn with_model(mut self, model: CascadeModel) -> Self {
        self.model = Some(model);
        self
    }

    pub fn nodes(&self) -> usize {
        self.nodes
    }

    pub fn cascades(&self) -> &[Cascade] {
        &self.cascades
    }

    pub fn model(&self) -> Option<&CascadeModel> {
        self.model.as_ref()
    }
}

/// One customer: weights over facilities plus the descending order used by
/// the telescoping coverage form.
#[derive(Clone, Debug, PartialEq)]
pub struct Customer {
    weights: Vec<f64>,
    order: Vec<usize>,
}

impl Customer {
    pub fn new(weights: Vec<f64>) -> Self {
        let mut order: Vec<usize> = (0..weights.len()).collect();
        // Stable sort: equal weights keep index order.
        order.sort_by(|&a, &b| weights[b].total_cmp(&weights[a]));
        Self { weights, order }
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    /// Weight of the `ℓ`-th best facility, with the sentinel `w_{i_{n+1}} = 0`.
    fn sorted_weight(&self, rank: usize) -> f64 {
        self.order.get(rank).map_or(0.0, |&i| self.weights[i])
    }

    pub fn max_weight(&self, x: &[bool]) -> f64 {
        self.weights
            .iter()
            .zip(x)
            .filter(|(_, &on)| on)
            .map(|(&w, _)| w)
            .fold(0.0, f64::max)
    }

    /// `Σ_ℓ (w_{i_ℓ} − w_{i_{ℓ+1}}) (1 − Π_{k≤ℓ} (1 − x_{i_k}))`, which equals
    /// the maximum selected weight.
    pub fn telescoping_sum(&self, x: &[bool]) -> f64 {
        let mut total = 0.0;
        let mut covered = false;
        for (rank, &i) in self.order.iter().enumerate() {
            covered |= x[i];
            if covered {
                total += self.sorted_weight(rank) - self.sorted_weight(rank + 1);
            }
        }
        total
    }

    pub(crate) fn inner_poly(&self) -> MultilinearPolynomial {
        let n = self.weights.len();
        let mut terms = vec![(self.sorted_weight(0), Vec::new())];
        let mut prefix = Vec::with_capacity(n);
        for (rank, &i) in self.order.iter().enumerate() {
            prefix.push(i);
            let gap = self.sorted_weight(rank) - self.sorted_weight(rank + 1);
            if gap != 0.0 {
                terms.push((-gap, prefix.clone()));
            }
        }
        MultilinearPolynomial::from_terms(n, Basis::Complement, terms)
            .expect("facility indices are in range")
    }
}

/// Facility location: facilities form the ground set, each realization is a
/// customer with weights in `[0, 1]`.
#[derive(Clone, Debug, PartialEq)]
pub struct FlInstance {
    n: usize,
    customers: Vec<Customer>,
}

impl FlInstance {
    pub fn new(n: usize, weights: Vec<Vec<f64>>) -> Result<Self> {
        let mut customers = Vec::with_capacity(weights.len());
        for (z, w) in weights.into_iter().enumerate() {
            let path = format!("payload.weights[{z}]");
            if w.len() != n {
                return Err(Error::invalid(path, format!("expected {n} weights, got {}", w.len())));
            }
            if w.iter().any(|v| !(0.0..=1.0).contains(v)) {
                return Err(Error::invalid(path, "weights must lie in [0, 1]"));
            }
            customers.push(Customer::new(w));
        }
        Ok(Self { n, customers })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn customers(&self) -> &[Customer] {
        &self.customers
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CnEdge {
    pub u: usize,
    pub v: usize,
    pub mu: f64,
}

/// A request for `item` entering at `path[0]` and forwarded along `path`
/// until a cache holding the item is met.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CnRequest {
    pub item: usize,
    pub path: Vec<usize>,
    pub rate: f64,
}

/// Load polynomial data of one edge: `g(x) = Σ_flows rate/μ · Π_{k∈prefix} (1 − x_k)`.
#[derive(Clone, Debug, PartialEq)]
pub struct EdgeLoad {
    pub mu: f64,
    /// `(λ^r, ground-set indices of the caches passed before the edge)`.
    pub flows: Vec<(f64, Vec<usize>)>,
    pub empty_load: f64,
}

impl EdgeLoad {
    pub fn load(&self, x: &[bool]) -> f64 {
        self.flows
            .iter()
            .filter(|(_, prefix)| prefix.iter().all(|&k| !x[k]))
            .map(|(rate, _)| rate)
            .sum::<f64>()
            / self.mu
    }

    pub(crate) fn inner_poly(&self, n: usize) -> MultilinearPolynomial {
        MultilinearPolynomial::from_terms(
            n,
            Basis::Complement,
            self.flows
                .iter()
                .map(|(rate, prefix)| (rate / self.mu, prefix.clone())),
        )
        .expect("cache indices validated at construction")
    }
}

/// Kelly cache network. The ground set is `(node, item)` pairs flattened to
/// `node * catalogue + item`; realizations are edges.
#[derive(Clone, Debug, PartialEq)]
pub struct CnInstance {
    nodes: usize,
    catalogue: usize,
    edges: Vec<CnEdge>,
    requests: Vec<CnRequest>,
    loads: Vec<EdgeLoad>,
    s_bar: f64,
}

impl CnInstance {
    pub fn new(
        nodes: usize,
        catalogue: usize,
        edges: Vec<CnEdge>,
        requests: Vec<CnRequest>,
    ) -> Result<Self> {
        if nodes == 0 || catalogue == 0 {
            return Err(Error::invalid("payload", "cache network needs nodes and items"));
        }
        let mut loads: Vec<EdgeLoad> = Vec::with_capacity(edges.len());
        for (e, edge) in edges.iter().enumerate() {
            let path = format!("payload.edges[{e}]");
            if edge.u >= nodes || edge.v >= nodes {
                return Err(Error::invalid(path, "endpoint out of range"));
            }
            if !(edge.mu > 0.0 && edge.mu.is_finite()) {
                return Err(Error::invalid(path, "service rate must be positive"));
            }
            if edges[..e].iter().any(|o| o.u == edge.u && o.v == edge.v) {
                return Err(Error::invalid(path, "duplicate edge"));
            }
            loads.push(EdgeLoad {
                mu: edge.mu,
                flows: Vec::new(),
                empty_load: 0.0,
            });
        }
        for (r, req) in requests.iter().enumerate() {
            let path = format!("payload.requests[{r}]");
            if req.item >= catalogue {
                return Err(Error::invalid(path, format!("item {} >= |C| = {catalogue}", req.item)));
            }
            if !(req.rate >= 0.0 && req.rate.is_finite()) {
                return Err(Error::invalid(path, "arrival rate must be nonnegative"));
            }
            if req.path.is_empty() {
                return Err(Error::invalid(path, "empty path"));
            }
            for (k, &node) in req.path.iter().enumerate() {
                if node >= nodes {
                    return Err(Error::invalid(format!("{path}.path[{k}]"), "node out of range"));
                }
                if req.path[..k].contains(&node) {
                    return Err(Error::invalid(format!("{path}.path[{k}]"), "path revisits a node"));
                }
            }
            // The response for the k-th hop travels back over (p_{k+1}, p_k);
            // it is carried only if none of p_1..p_k holds the item.
            for k in 0..req.path.len() - 1 {
                let (down, up) = (req.path[k], req.path[k + 1]);
                let e = edges
                    .iter()
                    .position(|edge| edge.u == up && edge.v == down)
                    .ok_or_else(|| {
                        Error::invalid(
                            format!("{path}.path"),
                            format!("no edge ({up}, {down}) for hop {k}"),
                        )
                    })?;
                let prefix = req.path[..=k]
                    .iter()
                    .map(|&node| node * catalogue + req.item)
                    .collect();
                loads[e].flows.push((req.rate, prefix));
            }
        }
        let mut s_bar: f64 = 0.0;
        for load in &mut loads {
            load.empty_load = load.flows.iter().map(|(rate, _)| rate).sum::<f64>() / load.mu;
            if load.empty_load >= 1.0 {
                return Err(Error::Unstable {
                    load: load.empty_load,
                });
            }
            s_bar = s_bar.max(load.empty_load);
        }
        Ok(Self {
            nodes,
            catalogue,
            edges,
            requests,
            loads,
            s_bar,
        })
    }

    pub fn nodes(&self) -> usize {
        self.nodes
    }

    pub fn catalogue(&self) -> usize {
        self.catalogue
    }

    pub fn ground_size(&self) -> usize {
        self.nodes * self.catalogue
    }

    pub fn edges(&self) -> &[CnEdge] {
        &self.edges
    }

    pub fn requests(&self) -> &[CnRequest] {
        &self.requests
    }

    pub fn loads(&self) -> &[EdgeLoad] {
        &self.loads
    }

    /// Largest edge load with empty caches.
    pub fn s_bar(&self) -> f64 {
        self.s_bar
    }
}
