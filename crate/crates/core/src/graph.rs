//! Attributed undirected network graph, snapshot ingestion and preprocessing.
//!
//! Node identifiers are opaque integers. The snapshot parser assigns them
//! densely in document order (working nodes only) and keeps the external id
//! as a string alias. Internally every graph keeps its nodes sorted by id, so
//! iteration order is deterministic everywhere downstream.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct NodeId(pub u32);

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Computational tier of a node.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CompClass {
    Strong,
    Medium,
    Weak,
}

impl CompClass {
    /// Servers are strong, multi-device non-servers medium, everything else weak.
    pub fn from_role(is_server: bool, device_count: u32) -> Self {
        if is_server {
            CompClass::Strong
        } else if device_count > 1 {
            CompClass::Medium
        } else {
            CompClass::Weak
        }
    }

    pub fn value(self) -> f64 {
        match self {
            CompClass::Strong => 1.0,
            CompClass::Medium => 0.5,
            CompClass::Weak => 0.1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NodeAttributes {
    /// Fraction of answered pings, in `[0, 1]`.
    pub availability: Option<f64>,
    pub latency_ms: Option<f64>,
    pub device_count: u32,
    pub is_server: bool,
    /// Set when availability or latency was filled in by the network model.
    pub synthetic: bool,
}

impl Default for NodeAttributes {
    fn default() -> Self {
        NodeAttributes {
            availability: None,
            latency_ms: None,
            device_count: 1,
            is_server: false,
            synthetic: false,
        }
    }
}

impl NodeAttributes {
    pub fn comp_class(&self) -> CompClass {
        CompClass::from_role(self.is_server, self.device_count)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct EdgeAttributes {
    pub bandwidth_mbps: Option<f64>,
    pub rtt_ms: Option<f64>,
    pub synthetic: bool,
}

impl EdgeAttributes {
    /// Collapse a parallel link into this one: widest bandwidth, shortest RTT.
    fn merge(&mut self, other: &EdgeAttributes) {
        self.bandwidth_mbps = match (self.bandwidth_mbps, other.bandwidth_mbps) {
            (Some(a), Some(b)) => Some(a.max(b)),
            (a, b) => a.or(b),
        };
        self.rtt_ms = match (self.rtt_ms, other.rtt_ms) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        self.synthetic |= other.synthetic;
    }
}

fn edge_key(u: NodeId, v: NodeId) -> (NodeId, NodeId) {
    if u <= v {
        (u, v)
    } else {
        (v, u)
    }
}

/// Undirected simple graph with node and edge attributes.
///
/// Immutable once built; use [`GraphBuilder`] to construct one.
#[derive(Debug, Clone, PartialEq)]
pub struct NetworkGraph {
    ids: Vec<NodeId>,
    aliases: Vec<String>,
    attrs: Vec<NodeAttributes>,
    adj: Vec<Vec<usize>>,
    index: HashMap<NodeId, usize>,
    edges: BTreeMap<(NodeId, NodeId), EdgeAttributes>,
}

impl NetworkGraph {
    pub fn empty() -> Self {
        GraphBuilder::new().build()
    }

    pub fn node_count(&self) -> usize {
        self.ids.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    /// Node ids in ascending order.
    pub fn node_ids(&self) -> &[NodeId] {
        &self.ids
    }

    pub fn contains(&self, id: NodeId) -> bool {
        self.index.contains_key(&id)
    }

    pub fn index_of(&self, id: NodeId) -> Option<usize> {
        self.index.get(&id).copied()
    }

    pub fn alias(&self, id: NodeId) -> Option<&str> {
        self.index_of(id).map(|i| self.aliases[i].as_str())
    }

    pub fn find_alias(&self, alias: &str) -> Option<NodeId> {
        self.aliases
            .iter()
            .position(|a| a == alias)
            .map(|i| self.ids[i])
    }

    /// Alias to id lookup table, for bulk translation.
    pub fn alias_map(&self) -> HashMap<&str, NodeId> {
        self.aliases
            .iter()
            .zip(&self.ids)
            .map(|(a, &id)| (a.as_str(), id))
            .collect()
    }

    pub fn attributes(&self, id: NodeId) -> Option<&NodeAttributes> {
        self.index_of(id).map(|i| &self.attrs[i])
    }

    pub fn degree(&self, id: NodeId) -> Option<usize> {
        self.index_of(id).map(|i| self.adj[i].len())
    }

    /// Neighbors of `id` in ascending id order. Empty for unknown ids.
    pub fn neighbors(&self, id: NodeId) -> impl Iterator<Item = NodeId> + '_ {
        let list: &[usize] = match self.index_of(id) {
            Some(i) => &self.adj[i],
            None => &[],
        };
        list.iter().map(move |&j| self.ids[j])
    }

    pub fn has_edge(&self, u: NodeId, v: NodeId) -> bool {
        self.edges.contains_key(&edge_key(u, v))
    }

    pub fn edge(&self, u: NodeId, v: NodeId) -> Option<&EdgeAttributes> {
        self.edges.get(&edge_key(u, v))
    }

    /// Edges as `(u, v, attrs)` with `u < v`, sorted.
    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId, &EdgeAttributes)> + '_ {
        self.edges.iter().map(|(&(u, v), a)| (u, v, a))
    }

    /// Adjacency lists over local indices (position in [`node_ids`](Self::node_ids)).
    pub fn adjacency(&self) -> &[Vec<usize>] {
        &self.adj
    }

    pub(crate) fn node_attributes_mut(&mut self, id: NodeId) -> Option<&mut NodeAttributes> {
        let i = self.index_of(id)?;
        Some(&mut self.attrs[i])
    }

    pub(crate) fn edge_attributes_mut(&mut self, u: NodeId, v: NodeId) -> Option<&mut EdgeAttributes> {
        self.edges.get_mut(&edge_key(u, v))
    }

    /// Subgraph induced on `members`. Ids not present in the graph are ignored.
    pub fn induced_subgraph<I>(&self, members: I) -> NetworkGraph
    where
        I: IntoIterator<Item = NodeId>,
    {
        let mut keep = vec![false; self.ids.len()];
        for id in members {
            if let Some(i) = self.index_of(id) {
                keep[i] = true;
            }
        }
        let mut b = GraphBuilder::new();
        for (i, &id) in self.ids.iter().enumerate() {
            if keep[i] {
                b.add_node(id, self.aliases[i].clone(), self.attrs[i].clone())
                    .expect("ids are unique in the parent graph");
            }
        }
        for (&(u, v), attrs) in &self.edges {
            if keep[self.index[&u]] && keep[self.index[&v]] {
                b.add_edge(u, v, attrs.clone()).expect("endpoints were added above");
            }
        }
        b.build()
    }
}

/// Incremental constructor enforcing the graph invariants: no duplicate
/// nodes, no self-loops, parallel links collapsed.
#[derive(Debug, Default)]
pub struct GraphBuilder {
    nodes: BTreeMap<NodeId, (String, NodeAttributes)>,
    edges: BTreeMap<(NodeId, NodeId), EdgeAttributes>,
}

impl GraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_node(&mut self, id: NodeId, alias: impl Into<String>, attrs: NodeAttributes) -> Result<()> {
        if self.nodes.contains_key(&id) {
            return Err(Error::Schema(format!("duplicate node id {id}")));
        }
        self.nodes.insert(id, (alias.into(), attrs));
        Ok(())
    }

    /// Adds an undirected edge. Self-loops are dropped; repeated pairs are
    /// merged keeping the maximum bandwidth and minimum RTT.
    pub fn add_edge(&mut self, u: NodeId, v: NodeId, attrs: EdgeAttributes) -> Result<()> {
        for id in [u, v] {
            if !self.nodes.contains_key(&id) {
                return Err(Error::Schema(format!("edge references unknown node {id}")));
            }
        }
        if u == v {
            return Ok(());
        }
        self.edges
            .entry(edge_key(u, v))
            .and_modify(|e| e.merge(&attrs))
            .or_insert(attrs);
        Ok(())
    }

    pub fn build(self) -> NetworkGraph {
        let mut ids = Vec::with_capacity(self.nodes.len());
        let mut aliases = Vec::with_capacity(self.nodes.len());
        let mut attrs = Vec::with_capacity(self.nodes.len());
        for (id, (alias, a)) in self.nodes {
            ids.push(id);
            aliases.push(alias);
            attrs.push(a);
        }
        let index: HashMap<NodeId, usize> = ids.iter().enumerate().map(|(i, &id)| (id, i)).collect();
        let mut adj = vec![Vec::new(); ids.len()];
        for &(u, v) in self.edges.keys() {
            let (iu, iv) = (index[&u], index[&v]);
            adj[iu].push(iv);
            adj[iv].push(iu);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        NetworkGraph {
            ids,
            aliases,
            attrs,
            adj,
            index,
            edges: self.edges,
        }
    }
}

/// Build a plain graph from an edge list; node ids are taken verbatim and the
/// alias is the decimal id. Handy for tests and examples.
pub fn graph_from_edges(nodes: impl IntoIterator<Item = u32>, edges: &[(u32, u32)]) -> NetworkGraph {
    let mut b = GraphBuilder::new();
    for n in nodes {
        b.add_node(NodeId(n), n.to_string(), NodeAttributes::default())
            .expect("duplicate node id");
    }
    for &(u, v) in edges {
        b.add_edge(NodeId(u), NodeId(v), EdgeAttributes::default())
            .expect("edge endpoint missing from node list");
    }
    b.build()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SnapshotFormat {
    Json,
    Csv,
}

impl std::str::FromStr for SnapshotFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Ok(SnapshotFormat::Json),
            "csv" => Ok(SnapshotFormat::Csv),
            other => Err(Error::InvalidArgument(format!("unknown snapshot format `{other}`"))),
        }
    }
}

/// JSON snapshot document.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct Snapshot {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub manifest: Option<serde_json::Value>,
    #[serde(default)]
    pub nodes: Vec<SnapshotNode>,
    #[serde(default)]
    pub links: Vec<SnapshotLink>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SnapshotNode {
    pub id: String,
    pub working: bool,
    pub is_server: bool,
    pub device_count: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub availability_pct: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub latency_ms: Option<f64>,
    #[serde(default, skip_serializing_if = "is_false")]
    pub synthetic: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SnapshotLink {
    pub a: String,
    pub b: String,
    pub working: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bandwidth_mbps: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rtt_ms: Option<f64>,
    #[serde(default, skip_serializing_if = "is_false")]
    pub synthetic: bool,
}

fn is_false(b: &bool) -> bool {
    !*b
}

/// Decode and validate a snapshot, keeping only working nodes and working
/// links between them.
pub fn parse_snapshot(data: &[u8], format: SnapshotFormat) -> Result<NetworkGraph> {
    match format {
        SnapshotFormat::Json => {
            let doc: Snapshot = serde_json::from_slice(data).map_err(|e| Error::Parse(e.to_string()))?;
            graph_from_snapshot(&doc)
        }
        SnapshotFormat::Csv => parse_csv_edges(data),
    }
}

fn check_positive(value: Option<f64>, field: &str) -> Result<()> {
    match value {
        Some(x) if !(x > 0.0 && x.is_finite()) => {
            Err(Error::Schema(format!("{field}: must be a positive finite number, got {x}")))
        }
        _ => Ok(()),
    }
}

/// Validate a decoded snapshot document and build the working graph.
pub fn graph_from_snapshot(doc: &Snapshot) -> Result<NetworkGraph> {
    let mut seen: HashMap<&str, Option<NodeId>> = HashMap::with_capacity(doc.nodes.len());
    let mut b = GraphBuilder::new();
    let mut next = 0u32;
    for (i, n) in doc.nodes.iter().enumerate() {
        if n.device_count < 1 || n.device_count > u32::MAX as i64 {
            return Err(Error::Schema(format!(
                "nodes[{i}].device_count: must be >= 1, got {}",
                n.device_count
            )));
        }
        if let Some(p) = n.availability_pct {
            if !(0.0..=100.0).contains(&p) {
                return Err(Error::Schema(format!("nodes[{i}].availability_pct: {p} not in [0, 100]")));
            }
        }
        if let Some(l) = n.latency_ms {
            if !(l >= 0.0 && l.is_finite()) {
                return Err(Error::Schema(format!("nodes[{i}].latency_ms: {l} is negative or not finite")));
            }
        }
        let id = if n.working {
            let id = NodeId(next);
            next += 1;
            Some(id)
        } else {
            None
        };
        if seen.insert(n.id.as_str(), id).is_some() {
            return Err(Error::Schema(format!("nodes[{i}].id: duplicate node id `{}`", n.id)));
        }
        if let Some(id) = id {
            let attrs = NodeAttributes {
                availability: n.availability_pct.map(|p| p / 100.0),
                latency_ms: n.latency_ms,
                device_count: n.device_count as u32,
                is_server: n.is_server,
                synthetic: n.synthetic,
            };
            b.add_node(id, n.id.clone(), attrs)?;
        }
    }
    for (i, l) in doc.links.iter().enumerate() {
        let lookup = |name: &str, field: &str| -> Result<Option<NodeId>> {
            seen.get(name)
                .copied()
                .ok_or_else(|| Error::Schema(format!("links[{i}].{field}: unknown node `{name}`")))
        };
        let a = lookup(&l.a, "a")?;
        let z = lookup(&l.b, "b")?;
        check_positive(l.bandwidth_mbps, &format!("links[{i}].bandwidth_mbps"))?;
        check_positive(l.rtt_ms, &format!("links[{i}].rtt_ms"))?;
        if let (true, Some(a), Some(z)) = (l.working, a, z) {
            b.add_edge(
                a,
                z,
                EdgeAttributes {
                    bandwidth_mbps: l.bandwidth_mbps,
                    rtt_ms: l.rtt_ms,
                    synthetic: l.synthetic,
                },
            )?;
        }
    }
    Ok(b.build())
}

/// Edge-list CSV: a header row naming at least `a,b`, optionally
/// `bandwidth_mbps` and `rtt_ms`. Lines starting with `#` are comments.
/// Every endpoint is a working single-device non-server node; ids are
/// assigned in order of first appearance.
fn parse_csv_edges(data: &[u8]) -> Result<NetworkGraph> {
    let mut rdr = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .flexible(true)
        .from_reader(data);
    let headers = rdr.headers().map_err(|e| Error::Parse(e.to_string()))?.clone();
    let col = |name: &str| headers.iter().position(|h| h == name);
    let (Some(ca), Some(cb)) = (col("a"), col("b")) else {
        return Err(Error::Parse("csv header must contain columns `a` and `b`".into()));
    };
    let cbw = col("bandwidth_mbps");
    let crtt = col("rtt_ms");

    let mut order: Vec<String> = Vec::new();
    let mut ids: HashMap<String, NodeId> = HashMap::new();
    let mut links = Vec::new();
    for rec in rdr.records() {
        let rec = rec.map_err(|e| Error::Parse(e.to_string()))?;
        let line = rec.position().map(|p| p.line()).unwrap_or(0);
        let field = |c: usize, name: &str| -> Result<&str> {
            rec.get(c)
                .ok_or_else(|| Error::Parse(format!("line {line}: missing field `{name}`")))
        };
        let num = |c: Option<usize>, name: &str| -> Result<Option<f64>> {
            match c.and_then(|c| rec.get(c)) {
                None | Some("") => Ok(None),
                Some(s) => s
                    .parse::<f64>()
                    .map(Some)
                    .map_err(|_| Error::Parse(format!("line {line}: field `{name}` is not a number: `{s}`"))),
            }
        };
        let a = field(ca, "a")?.to_string();
        let z = field(cb, "b")?.to_string();
        let bw = num(cbw, "bandwidth_mbps")?;
        let rtt = num(crtt, "rtt_ms")?;
        check_positive(bw, &format!("line {line}: bandwidth_mbps"))?;
        check_positive(rtt, &format!("line {line}: rtt_ms"))?;
        let mut intern = |s: String| -> NodeId {
            if let Some(&id) = ids.get(&s) {
                return id;
            }
            let id = NodeId(order.len() as u32);
            ids.insert(s.clone(), id);
            order.push(s);
            id
        };
        let ia = intern(a);
        let iz = intern(z);
        links.push((ia, iz, bw, rtt));
    }
    let mut b = GraphBuilder::new();
    for (i, alias) in order.into_iter().enumerate() {
        b.add_node(NodeId(i as u32), alias, NodeAttributes::default())?;
    }
    for (a, z, bw, rtt) in links {
        b.add_edge(
            a,
            z,
            EdgeAttributes {
                bandwidth_mbps: bw,
                rtt_ms: rtt,
                synthetic: false,
            },
        )?;
    }
    Ok(b.build())
}

/// Render a graph back into the JSON snapshot schema. All entries are
/// working; availability is written as a percentage.
pub fn graph_to_snapshot(g: &NetworkGraph) -> Snapshot {
    let nodes = g
        .ids
        .iter()
        .enumerate()
        .map(|(i, _)| {
            let a = &g.attrs[i];
            SnapshotNode {
                id: g.aliases[i].clone(),
                working: true,
                is_server: a.is_server,
                device_count: a.device_count as i64,
                availability_pct: a.availability.map(|f| f * 100.0),
                latency_ms: a.latency_ms,
                synthetic: a.synthetic,
            }
        })
        .collect();
    let links = g
        .edges
        .iter()
        .map(|(&(u, v), e)| SnapshotLink {
            a: g.aliases[g.index[&u]].clone(),
            b: g.aliases[g.index[&v]].clone(),
            working: true,
            bandwidth_mbps: e.bandwidth_mbps,
            rtt_ms: e.rtt_ms,
            synthetic: e.synthetic,
        })
        .collect();
    Snapshot {
        manifest: None,
        nodes,
        links,
    }
}

/// Drop every node whose degree in `g` is at most one.
///
/// Single pass: degrees are read from the input graph only, so nodes that
/// become leaves after the removal are kept. Running it twice can therefore
/// remove more than running it once.
pub fn prune_leaves(g: &NetworkGraph) -> NetworkGraph {
    let keep = g
        .ids
        .iter()
        .zip(&g.adj)
        .filter(|(_, nbrs)| nbrs.len() >= 2)
        .map(|(&id, _)| id);
    g.induced_subgraph(keep)
}

/// Connected components, each sorted ascending, ordered by size descending
/// and then by smallest member.
pub fn connected_components(g: &NetworkGraph) -> Vec<Vec<NodeId>> {
    let n = g.node_count();
    let mut seen = vec![false; n];
    let mut comps = Vec::new();
    let mut queue = VecDeque::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        queue.push_back(start);
        let mut members = Vec::new();
        while let Some(u) = queue.pop_front() {
            members.push(g.ids[u]);
            for &w in &g.adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        members.sort_unstable();
        comps.push(members);
    }
    // Scanning starts in ascending id order, so a stable sort by size keeps
    // equal-size components ordered by their smallest member.
    comps.sort_by_key(|c| std::cmp::Reverse(c.len()));
    comps
}

/// Induced subgraph on the largest connected component (ties go to the
/// component holding the smallest id).
pub fn largest_component(g: &NetworkGraph) -> Result<NetworkGraph> {
    let comps = connected_components(g);
    let first = comps.into_iter().next().ok_or(Error::EmptyGraph)?;
    Ok(g.induced_subgraph(first))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ids(v: &[u32]) -> Vec<NodeId> {
        v.iter().copied().map(NodeId).collect()
    }

    fn node(id: &str, working: bool) -> String {
        format!(r#"{{"id":"{id}","working":{working},"is_server":false,"device_count":1}}"#)
    }

    #[test]
    fn comp_class_from_role() {
        assert_eq!(CompClass::from_role(true, 1), CompClass::Strong);
        assert_eq!(CompClass::from_role(true, 5), CompClass::Strong);
        assert_eq!(CompClass::from_role(false, 2), CompClass::Medium);
        assert_eq!(CompClass::from_role(false, 1), CompClass::Weak);
        assert_eq!(CompClass::Medium.value(), 0.5);
    }

    #[test]
    fn parse_minimal_document() {
        let doc = format!(
            r#"{{"nodes":[{},{}],"links":[{{"a":"x","b":"y","working":true}}]}}"#,
            node("x", true),
            node("y", true)
        );
        let g = parse_snapshot(doc.as_bytes(), SnapshotFormat::Json).unwrap();
        assert_eq!((g.node_count(), g.edge_count()), (2, 1));
        assert_eq!(g.alias(NodeId(0)), Some("x"));
        assert_eq!(g.find_alias("y"), Some(NodeId(1)));
    }

    #[test]
    fn parse_drops_non_working_nodes_and_their_links() {
        let doc = format!(
            r#"{{"nodes":[{},{},{}],"links":[
                {{"a":"A","b":"B","working":true}},
                {{"a":"B","b":"C","working":true}}]}}"#,
            node("A", true),
            node("B", true),
            node("C", false)
        );
        let g = parse_snapshot(doc.as_bytes(), SnapshotFormat::Json).unwrap();
        assert_eq!((g.node_count(), g.edge_count()), (2, 1));
        assert!(g.find_alias("C").is_none());
    }

    #[test]
    fn parse_drops_non_working_links() {
        let doc = format!(
            r#"{{"nodes":[{},{}],"links":[{{"a":"A","b":"B","working":false}}]}}"#,
            node("A", true),
            node("B", true)
        );
        let g = parse_snapshot(doc.as_bytes(), SnapshotFormat::Json).unwrap();
        assert_eq!((g.node_count(), g.edge_count()), (2, 0));
    }

    #[test]
    fn parse_empty_node_list() {
        let g = parse_snapshot(br#"{"nodes":[],"links":[]}"#, SnapshotFormat::Json).unwrap();
        assert_eq!((g.node_count(), g.edge_count()), (0, 0));
    }

    #[test]
    fn parse_errors() {
        let err = parse_snapshot(b"{\"nodes\": [\n{\"id\": }", SnapshotFormat::Json).unwrap_err();
        assert!(matches!(err, Error::Parse(ref m) if m.contains("line 2")), "{err}");

        let dup = format!(r#"{{"nodes":[{},{}]}}"#, node("A", true), node("A", false));
        let err = parse_snapshot(dup.as_bytes(), SnapshotFormat::Json).unwrap_err();
        assert!(matches!(err, Error::Schema(ref m) if m.contains("duplicate")), "{err}");

        let unknown = format!(
            r#"{{"nodes":[{}],"links":[{{"a":"A","b":"Z","working":true}}]}}"#,
            node("A", true)
        );
        let err = parse_snapshot(unknown.as_bytes(), SnapshotFormat::Json).unwrap_err();
        assert!(matches!(err, Error::Schema(ref m) if m.contains("links[0].b")), "{err}");

        let bad = r#"{"nodes":[{"id":"A","working":true,"is_server":false,"device_count":0}]}"#;
        assert!(matches!(
            parse_snapshot(bad.as_bytes(), SnapshotFormat::Json),
            Err(Error::Schema(_))
        ));
    }

    #[test]
    fn parallel_links_collapse_to_max_bw_min_rtt() {
        let doc = format!(
            r#"{{"nodes":[{},{}],"links":[
                {{"a":"A","b":"B","working":true,"bandwidth_mbps":10,"rtt_ms":5}},
                {{"a":"B","b":"A","working":true,"bandwidth_mbps":30,"rtt_ms":9}},
                {{"a":"A","b":"A","working":true}}]}}"#,
            node("A", true),
            node("B", true)
        );
        let g = parse_snapshot(doc.as_bytes(), SnapshotFormat::Json).unwrap();
        assert_eq!(g.edge_count(), 1);
        let e = g.edge(NodeId(1), NodeId(0)).unwrap();
        assert_eq!(e.bandwidth_mbps, Some(30.0));
        assert_eq!(e.rtt_ms, Some(5.0));
        assert_eq!(g.degree(NodeId(0)), Some(1));
    }

    #[test]
    fn parse_csv_edge_list() {
        let data = b"# comment\na,b,bandwidth_mbps,rtt_ms\nx,y,12.5,3\ny,z,,\nz,x,8,\n";
        let g = parse_snapshot(data, SnapshotFormat::Csv).unwrap();
        assert_eq!((g.node_count(), g.edge_count()), (3, 3));
        let (x, y) = (g.find_alias("x").unwrap(), g.find_alias("y").unwrap());
        assert_eq!(g.edge(x, y).unwrap().bandwidth_mbps, Some(12.5));
        assert!(matches!(
            parse_snapshot(b"a,b,rtt_ms\nx,y,fast\n", SnapshotFormat::Csv),
            Err(Error::Parse(ref m)) if m.contains("line 2")
        ));
    }

    #[test]
    fn prune_path_keeps_middle() {
        let g = graph_from_edges([1, 2, 3], &[(1, 2), (2, 3)]);
        let p = prune_leaves(&g);
        assert_eq!(p.node_ids(), ids(&[2]).as_slice());
        assert_eq!(p.edge_count(), 0);
    }

    #[test]
    fn prune_triangle_unchanged() {
        let g = graph_from_edges([1, 2, 3], &[(1, 2), (2, 3), (1, 3)]);
        assert_eq!(prune_leaves(&g), g);
    }

    #[test]
    fn prune_star_keeps_center_and_drops_isolated() {
        let g = graph_from_edges([0, 1, 2, 3, 9], &[(0, 1), (0, 2), (0, 3)]);
        assert_eq!(prune_leaves(&g).node_ids(), ids(&[0]).as_slice());
    }

    #[test]
    fn prune_is_single_pass() {
        // 1-2-3-4-5 path: one pass removes 1 and 5 only.
        let g = graph_from_edges(1..=5, &[(1, 2), (2, 3), (3, 4), (4, 5)]);
        let once = prune_leaves(&g);
        assert_eq!(once.node_ids(), ids(&[2, 3, 4]).as_slice());
        let twice = prune_leaves(&once);
        assert_eq!(twice.node_ids(), ids(&[3]).as_slice());
    }

    #[test]
    fn components_ordering() {
        let g = graph_from_edges([1, 2, 3, 4, 5], &[(1, 2), (2, 3), (1, 3), (4, 5)]);
        assert_eq!(connected_components(&g), vec![ids(&[1, 2, 3]), ids(&[4, 5])]);
        assert!(connected_components(&NetworkGraph::empty()).is_empty());
        let path = graph_from_edges(1..=4, &[(1, 2), (2, 3), (3, 4)]);
        assert_eq!(connected_components(&path), vec![ids(&[1, 2, 3, 4])]);
    }

    #[test]
    fn largest_component_cases() {
        let g = graph_from_edges([1, 2, 3, 4, 5], &[(1, 2), (2, 3), (1, 3), (4, 5)]);
        let lc = largest_component(&g).unwrap();
        assert_eq!(lc.node_ids(), ids(&[1, 2, 3]).as_slice());
        assert_eq!(lc.edge_count(), 3);

        let single = graph_from_edges([7], &[]);
        assert_eq!(largest_component(&single).unwrap().node_ids(), ids(&[7]).as_slice());

        let tie = graph_from_edges([3, 4, 1, 2], &[(3, 4), (1, 2)]);
        assert_eq!(largest_component(&tie).unwrap().node_ids(), ids(&[1, 2]).as_slice());

        assert!(matches!(largest_component(&NetworkGraph::empty()), Err(Error::EmptyGraph)));
    }
}
