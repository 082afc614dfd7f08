//! Built-in graph families.
//!
//! Vertex encodings (bit-exact):
//! - `biinfinite_path`: signed decimal `n`
//! - `grid2d`: `x,y`
//! - `regular_tree(d)`: `ε` for the root, child-index strings like `0.2.1`
//! - `example_graph`: `P:n:k`, `Q:n:k` (the primed paths), `g1:n:k`, `g2:n:k`
//! - `cartesian_product`: `left|right`; a factor encoding that itself contains
//!   `|` is wrapped in parentheses
//! - `twin_leaf_path`: signed decimal for the path, `u` and `w` for the leaves
//! - `finite_adjacency`: decimal vertex index

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::graph::{FiniteGraph, Graph, GraphHandle, VertexId};

pub const TREE_ROOT: &str = "ε";

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilySpec {
    RegularTree { degree: usize },
    BiinfinitePath,
    Grid2d,
    CartesianProduct(Box<FamilySpec>, Box<FamilySpec>),
    ExampleGraph,
    TwinLeafPath,
    FiniteAdjacency { n: usize, edges: Vec<(usize, usize)> },
}

impl FamilySpec {
    pub fn regular_tree(degree: usize) -> Self {
        FamilySpec::RegularTree { degree }
    }

    pub fn product(left: FamilySpec, right: FamilySpec) -> Self {
        FamilySpec::CartesianProduct(Box::new(left), Box::new(right))
    }

    pub fn tag(&self) -> &'static str {
        match self {
            FamilySpec::RegularTree { .. } => "regular_tree",
            FamilySpec::BiinfinitePath => "biinfinite_path",
            FamilySpec::Grid2d => "grid2d",
            FamilySpec::CartesianProduct(..) => "cartesian_product",
            FamilySpec::ExampleGraph => "example_graph",
            FamilySpec::TwinLeafPath => "twin_leaf_path",
            FamilySpec::FiniteAdjacency { .. } => "finite_adjacency",
        }
    }

    /// Whether the family has infinite diameter. Products record this for
    /// both factors; it is the hypothesis under which products satisfy DSC.
    pub fn infinite_diameter(&self) -> bool {
        match self {
            FamilySpec::FiniteAdjacency { .. } => false,
            FamilySpec::CartesianProduct(l, r) => l.infinite_diameter() || r.infinite_diameter(),
            _ => true,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            FamilySpec::RegularTree { degree } if *degree < 3 => {
                Err(Error::arg(format!("regular_tree needs degree d >= 3, got {degree}")))
            }
            FamilySpec::CartesianProduct(l, r) => {
                l.validate()?;
                r.validate()?;
                for f in [l, r] {
                    if let FamilySpec::FiniteAdjacency { n, edges } = &**f {
                        if !finite_connected(*n, edges) {
                            return Err(Error::arg("product factors must be connected"));
                        }
                    }
                }
                Ok(())
            }
            FamilySpec::FiniteAdjacency { n, edges } => {
                for &(a, b) in edges {
                    if a >= *n || b >= *n {
                        return Err(Error::arg(format!("edge {a}-{b} out of range for n={n}")));
                    }
                    if a == b {
                        return Err(Error::arg(format!("self-loop at {a}")));
                    }
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }

    /// Builds from flat key/value parameters as used by the CLI config,
    /// e.g. `family=regular_tree d=3` or
    /// `family=cartesian_product left=biinfinite_path right=grid2d`.
    pub fn from_params(family: &str, params: &BTreeMap<String, String>) -> Result<Self> {
        let get = |k: &str| {
            params
                .get(k)
                .ok_or_else(|| Error::arg(format!("family {family} requires parameter {k}")))
        };
        let allowed: &[&str] = match family {
            "regular_tree" => &["d"],
            "cartesian_product" => &["left", "right"],
            "finite_adjacency" => &["n", "edges"],
            _ => &[],
        };
        if let Some(k) = params.keys().find(|k| !allowed.contains(&k.as_str())) {
            return Err(Error::arg(format!("family {family} takes no parameter {k}")));
        }
        let spec = match family {
            "regular_tree" => {
                let d = get("d")?;
                FamilySpec::RegularTree {
                    degree: d.parse().map_err(|_| Error::arg(format!("bad degree {d:?}")))?,
                }
            }
            "cartesian_product" => FamilySpec::product(get("left")?.parse()?, get("right")?.parse()?),
            "finite_adjacency" => {
                let n = get("n")?;
                let n = n.parse().map_err(|_| Error::arg(format!("bad vertex count {n:?}")))?;
                FamilySpec::FiniteAdjacency { n, edges: parse_edges(get("edges")?)? }
            }
            other => other.parse()?,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn build(&self) -> Result<GraphHandle> {
        self.validate()?;
        Ok(match self {
            FamilySpec::RegularTree { degree } => Arc::new(RegularTree { degree: *degree }),
            FamilySpec::BiinfinitePath => Arc::new(BiinfinitePath),
            FamilySpec::Grid2d => Arc::new(Grid2d),
            FamilySpec::CartesianProduct(l, r) => Arc::new(CartesianProduct {
                spec: self.to_string(),
                left: l.build()?,
                right: r.build()?,
            }),
            FamilySpec::ExampleGraph => Arc::new(ExampleGraph),
            FamilySpec::TwinLeafPath => Arc::new(TwinLeafPath),
            FamilySpec::FiniteAdjacency { n, edges } => Arc::new(FiniteAdjacency {
                spec: self.to_string(),
                graph: FiniteGraph::with_numbered_vertices(*n, edges),
            }),
        })
    }
}

fn finite_connected(n: usize, edges: &[(usize, usize)]) -> bool {
    n > 0 && FiniteGraph::with_numbered_vertices(n, edges).distances_from(0).iter().all(|&d| d != usize::MAX)
}

fn parse_edges(s: &str) -> Result<Vec<(usize, usize)>> {
    s.split(',')
        .map(str::trim)
        .filter(|e| !e.is_empty())
        .map(|e| {
            let (a, b) = e.split_once('-').ok_or_else(|| Error::arg(format!("bad edge {e:?}")))?;
            let a = a.trim().parse().map_err(|_| Error::arg(format!("bad edge {e:?}")))?;
            let b = b.trim().parse().map_err(|_| Error::arg(format!("bad edge {e:?}")))?;
            Ok((a, b))
        })
        .collect()
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::RegularTree { degree } => write!(f, "regular_tree({degree})"),
            FamilySpec::CartesianProduct(l, r) => write!(f, "cartesian_product({l},{r})"),
            FamilySpec::FiniteAdjacency { n, edges } => {
                let es: Vec<String> = edges.iter().map(|(a, b)| format!("{a}-{b}")).collect();
                write!(f, "finite_adjacency({n}:{})", es.join(","))
            }
            other => f.write_str(other.tag()),
        }
    }
}

/// Parses the compact form produced by `Display`, e.g. `regular_tree(3)` or
/// `cartesian_product(biinfinite_path,biinfinite_path)`.
impl FromStr for FamilySpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (head, args) = match s.find('(') {
            Some(i) if s.ends_with(')') => (&s[..i], Some(&s[i + 1..s.len() - 1])),
            Some(_) => return Err(Error::arg(format!("unbalanced family spec {s:?}"))),
            None => (s, None),
        };
        let spec = match (head, args) {
            ("regular_tree", Some(a)) => FamilySpec::RegularTree {
                degree: a.trim().trim_start_matches("d=").parse().map_err(|_| Error::arg(format!("bad degree in {s:?}")))?,
            },
            ("biinfinite_path", None) => FamilySpec::BiinfinitePath,
            ("grid2d", None) => FamilySpec::Grid2d,
            ("example_graph", None) => FamilySpec::ExampleGraph,
            ("twin_leaf_path", None) => FamilySpec::TwinLeafPath,
            ("cartesian_product", Some(a)) => {
                let cut = top_level_comma(a).ok_or_else(|| Error::arg(format!("product needs two factors: {s:?}")))?;
                FamilySpec::product(a[..cut].parse()?, a[cut + 1..].parse()?)
            }
            ("finite_adjacency", Some(a)) => {
                let (n, edges) = a.split_once(':').unwrap_or((a, ""));
                FamilySpec::FiniteAdjacency {
                    n: n.trim().parse().map_err(|_| Error::arg(format!("bad vertex count in {s:?}")))?,
                    edges: parse_edges(edges)?,
                }
            }
            _ => return Err(Error::arg(format!("unknown family {s:?}"))),
        };
        spec.validate()?;
        Ok(spec)
    }
}

fn top_level_comma(s: &str) -> Option<usize> {
    let mut depth = 0i32;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => return Some(i),
            _ => {}
        }
    }
    None
}

fn id_error(family: &str, v: &VertexId) -> Error {
    Error::Identifier { family: family.to_string(), id: v.to_string() }
}

// ---------------------------------------------------------------------------

struct BiinfinitePath;

fn parse_int(family: &str, v: &VertexId) -> Result<i64> {
    let s = v.as_str();
    // canonical signed decimal only: no '+', no leading zeros
    let digits = s.strip_prefix('-').unwrap_or(s);
    let canonical = !digits.is_empty()
        && digits.bytes().all(|b| b.is_ascii_digit())
        && (digits == "0" || !digits.starts_with('0'))
        && s != "-0";
    if !canonical {
        return Err(id_error(family, v));
    }
    s.parse().map_err(|_| id_error(family, v))
}

impl Graph for BiinfinitePath {
    fn family(&self) -> String {
        "biinfinite_path".into()
    }

    fn neighbors(&self, v: &VertexId) -> Result<Vec<VertexId>> {
        let n = parse_int("biinfinite_path", v)?;
        Ok(vec![(n - 1).to_string().into(), (n + 1).to_string().into()])
    }

    fn default_root(&self) -> Option<VertexId> {
        Some("0".into())
    }

    fn exact_distance(&self, u: &VertexId, w: &VertexId) -> Option<Result<usize>> {
        Some((|| Ok(parse_int("biinfinite_path", u)?.abs_diff(parse_int("biinfinite_path", w)?) as usize))())
    }
}

struct Grid2d;

fn parse_point(v: &VertexId) -> Result<(i64, i64)> {
    let (x, y) = v.as_str().split_once(',').ok_or_else(|| id_error("grid2d", v))?;
    let x = parse_int("grid2d", &VertexId::new(x)).map_err(|_| id_error("grid2d", v))?;
    let y = parse_int("grid2d", &VertexId::new(y)).map_err(|_| id_error("grid2d", v))?;
    Ok((x, y))
}

pub fn grid_id(x: i64, y: i64) -> VertexId {
    format!("{x},{y}").into()
}

impl Graph for Grid2d {
    fn family(&self) -> String {
        "grid2d".into()
    }

    fn neighbors(&self, v: &VertexId) -> Result<Vec<VertexId>> {
        let (x, y) = parse_point(v)?;
        Ok(vec![grid_id(x - 1, y), grid_id(x + 1, y), grid_id(x, y - 1), grid_id(x, y + 1)])
    }

    fn default_root(&self) -> Option<VertexId> {
        Some(grid_id(0, 0))
    }

    fn exact_distance(&self, u: &VertexId, w: &VertexId) -> Option<Result<usize>> {
        Some((|| {
            let (a, b) = (parse_point(u)?, parse_point(w)?);
            Ok((a.0.abs_diff(b.0) + a.1.abs_diff(b.1)) as usize)
        })())
    }
}

struct RegularTree {
    degree: usize,
}

impl RegularTree {
    fn parse(&self, v: &VertexId) -> Result<Vec<usize>> {
        let s = v.as_str();
        if s == TREE_ROOT {
            return Ok(Vec::new());
        }
        let fam = self.family();
        let mut path = Vec::new();
        for (i, part) in s.split('.').enumerate() {
            let ok = !part.is_empty() && part.bytes().all(|b| b.is_ascii_digit()) && (part == "0" || !part.starts_with('0'));
            let c: usize = if ok { part.parse().map_err(|_| id_error(&fam, v))? } else { return Err(id_error(&fam, v)) };
            let arity = if i == 0 { self.degree } else { self.degree - 1 };
            if c >= arity {
                return Err(id_error(&fam, v));
            }
            path.push(c);
        }
        Ok(path)
    }
}

pub fn tree_id(path: &[usize]) -> VertexId {
    if path.is_empty() {
        return TREE_ROOT.into();
    }
    let parts: Vec<String> = path.iter().map(usize::to_string).collect();
    parts.join(".").into()
}

impl Graph for RegularTree {
    fn family(&self) -> String {
        format!("regular_tree({})", self.degree)
    }

    fn neighbors(&self, v: &VertexId) -> Result<Vec<VertexId>> {
        let path = self.parse(v)?;
        let mut out = Vec::with_capacity(self.degree);
        let arity = if path.is_empty() { self.degree } else {
            out.push(tree_id(&path[..path.len() - 1]));
            self.degree - 1
        };
        let mut child = path.clone();
        child.push(0);
        for c in 0..arity {
            *child.last_mut().unwrap() = c;
            out.push(tree_id(&child));
        }
        Ok(out)
    }

    fn default_root(&self) -> Option<VertexId> {
        Some(TREE_ROOT.into())
    }

    fn exact_distance(&self, u: &VertexId, w: &VertexId) -> Option<Result<usize>> {
        Some((|| {
            let (a, b) = (self.parse(u)?, self.parse(w)?);
            let common = a.iter().zip(&b).take_while(|(x, y)| x == y).count();
            Ok(a.len() + b.len() - 2 * common)
        })())
    }

    fn regular_tree_degree(&self) -> Option<usize> {
        Some(self.degree)
    }
}

struct CartesianProduct {
    spec: String,
    left: GraphHandle,
    right: GraphHandle,
}

fn wrap_factor(v: &VertexId) -> String {
    if v.as_str().contains('|') {
        format!("({v})")
    } else {
        v.to_string()
    }
}

pub fn product_id(l: &VertexId, r: &VertexId) -> VertexId {
    format!("{}|{}", wrap_factor(l), wrap_factor(r)).into()
}

impl CartesianProduct {
    fn split(&self, v: &VertexId) -> Result<(VertexId, VertexId)> {
        let s = v.as_str();
        let err = || id_error(&self.spec, v);
        let (l, rest) = if let Some(inner) = s.strip_prefix('(') {
            let mut depth = 1;
            let mut end = None;
            for (i, c) in inner.char_indices() {
                match c {
                    '(' => depth += 1,
                    ')' => {
                        depth -= 1;
                        if depth == 0 {
                            end = Some(i);
                            break;
                        }
                    }
                    _ => {}
                }
            }
            let end = end.ok_or_else(err)?;
            (&inner[..end], inner[end + 1..].strip_prefix('|').ok_or_else(err)?)
        } else {
            s.split_once('|').ok_or_else(err)?
        };
        let r = rest.strip_prefix('(').and_then(|x| x.strip_suffix(')')).unwrap_or(rest);
        Ok((VertexId::new(l), VertexId::new(r)))
    }
}

impl Graph for CartesianProduct {
    fn family(&self) -> String {
        self.spec.clone()
    }

    fn neighbors(&self, v: &VertexId) -> Result<Vec<VertexId>> {
        let (l, r) = self.split(v)?;
        let mut out: Vec<VertexId> = self.left.neighbors(&l)?.iter().map(|x| product_id(x, &r)).collect();
        out.extend(self.right.neighbors(&r)?.iter().map(|y| product_id(&l, y)));
        Ok(out)
    }

    fn default_root(&self) -> Option<VertexId> {
        Some(product_id(&self.left.default_root()?, &self.right.default_root()?))
    }

    fn exact_distance(&self, u: &VertexId, w: &VertexId) -> Option<Result<usize>> {
        let (ul, ur) = match self.split(u) {
            Ok(x) => x,
            Err(e) => return Some(Err(e)),
        };
        let (wl, wr) = match self.split(w) {
            Ok(x) => x,
            Err(e) => return Some(Err(e)),
        };
        let dl = self.left.exact_distance(&ul, &wl)?;
        let dr = self.right.exact_distance(&ur, &wr)?;
        Some(dl.and_then(|a| dr.map(|b| a + b)))
    }
}

struct TwinLeafPath;

pub const TWIN_U: &str = "u";
pub const TWIN_W: &str = "w";

impl Graph for TwinLeafPath {
    fn family(&self) -> String {
        "twin_leaf_path".into()
    }

    fn neighbors(&self, v: &VertexId) -> Result<Vec<VertexId>> {
        match v.as_str() {
            TWIN_U | TWIN_W => Ok(vec!["0".into()]),
            _ => {
                let n = parse_int("twin_leaf_path", v)?;
                let mut out: Vec<VertexId> = vec![(n - 1).to_string().into(), (n + 1).to_string().into()];
                if n == 0 {
                    out.push(TWIN_U.into());
                    out.push(TWIN_W.into());
                }
                Ok(out)
            }
        }
    }

    fn default_root(&self) -> Option<VertexId> {
        Some("0".into())
    }

    fn exact_distance(&self, u: &VertexId, w: &VertexId) -> Option<Result<usize>> {
        // a leaf sits one step beyond 0
        let pos = |v: &VertexId| -> Result<(i64, usize)> {
            match v.as_str() {
                TWIN_U | TWIN_W => Ok((0, 1)),
                _ => Ok((parse_int("twin_leaf_path", v)?, 0)),
            }
        };
        Some((|| {
            if u == w {
                return Ok(0);
            }
            let (a, ea) = pos(u)?;
            let (b, eb) = pos(w)?;
            Ok(a.abs_diff(b) as usize + ea + eb)
        })())
    }
}

struct FiniteAdjacency {
    spec: String,
    graph: FiniteGraph,
}

impl Graph for FiniteAdjacency {
    fn family(&self) -> String {
        self.spec.clone()
    }

    fn neighbors(&self, v: &VertexId) -> Result<Vec<VertexId>> {
        let i = self.graph.index_of(v).ok_or_else(|| id_error(&self.spec, v))?;
        Ok(self.graph.neighbors(i).iter().map(|&j| self.graph.id(j).clone()).collect())
    }

    fn default_root(&self) -> Option<VertexId> {
        (!self.graph.is_empty()).then(|| "0".into())
    }
}

// ---------------------------------------------------------------------------
// The example graph: two families of paths P_n, P'_n with |P_1| = 1 and
// |P_n| = n * sum_{i<n} |P_i|, every vertex of P_n joined to the
// highest-index endpoint of P_{n-1}, an edge between the two one-vertex
// paths, and for every x in P'_n (n > 1) two gadget vertices adjacent to x
// and to the endpoint of P'_{n-1}.

static PATH_SIZES: OnceLock<Vec<u64>> = OnceLock::new();

/// `|P_n|` for `n = 1..` as long as the values fit in `u64`; index 0 unused.
fn path_sizes() -> &'static [u64] {
    PATH_SIZES.get_or_init(|| {
        let mut sizes = vec![0u64, 1];
        let mut sum: u64 = 1;
        for n in 2u64.. {
            let Some(p) = sum.checked_mul(n) else { break };
            let Some(s) = sum.checked_add(p) else { break };
            sizes.push(p);
            sum = s;
        }
        sizes
    })
}

/// Largest path index whose size is representable.
pub fn example_graph_max_level() -> usize {
    path_sizes().len() - 1
}

/// `|P_n|` from the recursion.
pub fn example_path_size(n: usize) -> Result<u64> {
    if n == 0 {
        return Err(Error::arg("path index n must be >= 1"));
    }
    path_sizes()
        .get(n)
        .copied()
        .ok_or_else(|| Error::Unsupported(format!("|P_{n}| overflows u64")))
}

/// `(|P_n|, 4 sum_{i<n} |P_i| + 3|P_n|)`, the path size and the closed-form
/// ball count around the root of the primed side.
pub fn example_graph_sizes(n: usize) -> Result<(u64, u64)> {
    let p = example_path_size(n)?;
    let below: u64 = (1..n).map(|i| path_sizes()[i]).sum();
    let ball = below
        .checked_mul(4)
        .and_then(|b| p.checked_mul(3).and_then(|q| b.checked_add(q)))
        .ok_or_else(|| Error::Unsupported(format!("ball count for n={n} overflows u64")))?;
    Ok((p, ball))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExampleKind {
    P,
    Q,
    G1,
    G2,
}

impl ExampleKind {
    fn tag(self) -> &'static str {
        match self {
            ExampleKind::P => "P",
            ExampleKind::Q => "Q",
            ExampleKind::G1 => "g1",
            ExampleKind::G2 => "g2",
        }
    }
}

pub fn example_id(kind: ExampleKind, n: usize, k: u64) -> VertexId {
    format!("{}:{n}:{k}", kind.tag()).into()
}

pub fn parse_example_id(v: &VertexId) -> Result<(ExampleKind, usize, u64)> {
    let err = || id_error("example_graph", v);
    let mut parts = v.as_str().split(':');
    let kind = match parts.next() {
        Some("P") => ExampleKind::P,
        Some("Q") => ExampleKind::Q,
        Some("g1") => ExampleKind::G1,
        Some("g2") => ExampleKind::G2,
        _ => return Err(err()),
    };
    let canon = |s: &str| !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit()) && (s == "0" || !s.starts_with('0'));
    let n = parts.next().filter(|s| canon(s)).ok_or_else(err)?;
    let k = parts.next().filter(|s| canon(s)).ok_or_else(err)?;
    if parts.next().is_some() {
        return Err(err());
    }
    let n: usize = n.parse().map_err(|_| err())?;
    let k: u64 = k.parse().map_err(|_| err())?;
    let size = path_sizes().get(n).copied().filter(|_| n >= 1).ok_or_else(err)?;
    if k >= size || (matches!(kind, ExampleKind::G1 | ExampleKind::G2) && n < 2) {
        return Err(err());
    }
    Ok((kind, n, k))
}

struct ExampleGraph;

impl ExampleGraph {
    /// Calls `f` on every neighbor of `v` in oracle order.
    fn visit_neighbors(&self, v: &VertexId, f: &mut dyn FnMut(VertexId)) -> Result<()> {
        use ExampleKind::*;
        let (kind, n, k) = parse_example_id(v)?;
        let sizes = path_sizes();
        let last = |m: usize| sizes[m] - 1;
        if matches!(kind, G1 | G2) {
            f(example_id(Q, n, k));
            f(example_id(Q, n - 1, last(n - 1)));
            return Ok(());
        }
        if k > 0 {
            f(example_id(kind, n, k - 1));
        }
        if k < last(n) {
            f(example_id(kind, n, k + 1));
        }
        if n >= 2 {
            f(example_id(kind, n - 1, last(n - 1)));
        } else {
            f(example_id(if kind == P { Q } else { P }, 1, 0));
        }
        if kind == Q && n >= 2 {
            f(example_id(G1, n, k));
            f(example_id(G2, n, k));
        }
        if k == last(n) {
            let next = sizes.get(n + 1).copied().ok_or_else(|| {
                Error::Unsupported(format!("example_graph level {} is not representable", n + 1))
            })?;
            for j in 0..next {
                f(example_id(kind, n + 1, j));
            }
            if kind == Q {
                for j in 0..next {
                    f(example_id(G1, n + 1, j));
                    f(example_id(G2, n + 1, j));
                }
            }
        }
        Ok(())
    }
}

impl Graph for ExampleGraph {
    fn family(&self) -> String {
        "example_graph".into()
    }

    fn neighbors(&self, v: &VertexId) -> Result<Vec<VertexId>> {
        let mut out = Vec::new();
        self.visit_neighbors(v, &mut |x| out.push(x))?;
        Ok(out)
    }

    fn neighbors_where(&self, v: &VertexId, keep: &dyn Fn(&VertexId) -> bool) -> Result<(Vec<VertexId>, usize)> {
        let mut kept = Vec::new();
        let mut rest = 0;
        self.visit_neighbors(v, &mut |x| {
            if keep(&x) {
                kept.push(x);
            } else {
                rest += 1;
            }
        })?;
        Ok((kept, rest))
    }

    fn default_root(&self) -> Option<VertexId> {
        Some(example_id(ExampleKind::P, 1, 0))
    }
}
