//! Edge-indexed rays of groups acting on biregular trees.
//!
//! The `(q_s, q_t)`-biregular tree is the rank-2 right-angled building
//! whose chambers are the tree's edges. A non-uniform lattice is described
//! here purely by its action data: the quotient ray `Y` (vertices `v_0,
//! v_1, …`, edges `e_0, e_1, …`), the vertex and edge stabilizer orders,
//! and the index of each edge group in its endpoint groups. The covering
//! tree is materialized lazily up to a horizon as an arena of vertices and
//! chambers; each chamber stores its `Y`-level (which equals its gallery
//! distance from the chamber orbit of the base), its address (the step
//! path from the base chamber) and its distance from the base.
//!
//! `D(n)` is the set of chambers within distance `n` of the base orbit.
//! A [`DisconnectionCertificate`] exhibits a vertex tree-wall on `Y` whose
//! epicormic chambers all sit at orbit distance `> n`, together with two
//! orbit chambers on opposite sides; since every gallery between them must
//! cross the wall through an epicormic chamber, the two witnesses lie in
//! different components of `D(n)`. Certificates are finite, serialize to
//! JSON byte-for-byte reproducibly, and are re-checked by an independent
//! verifier.
//!
//! Covolume sums `Σ 1/|Γ_{e_i}|` are exact rationals; this module does no
//! floating-point arithmetic.

use std::collections::VecDeque;

use num::{BigInt, BigRational, One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Declaration of a ray of groups over a biregular tree, as read from the
/// ray-spec JSON format. `vertex_orders[i]` and `edge_orders[i]` are the
/// stabilizer orders `|Γ_{v_i}|` and `|Γ_{e_i}|` of the quotient ray;
/// `growth` extends them beyond the declared prefix:
///
/// * `"geometric:R"` — integer ratio `R ≥ 2`, applied with lag 2
///   (`x_i = x_{i-2}·R`), matching the period-2 alternation of valences
///   along the ray;
/// * `"loop"` — the cocompact control datum: a single chamber orbit with
///   trivial stabilizers on the (2,2)-regular tree.
///
/// Even ray vertices have building valence `qs`, odd ones `qt`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RaySpec {
    pub qs: u16,
    pub qt: u16,
    pub vertex_orders: Vec<u64>,
    pub edge_orders: Vec<u64>,
    pub growth: String,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Growth {
    Geometric(u64),
    Loop,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LatticeError {
    #[error("chamber counts per panel must be at least 2, got qs={0}, qt={1}")]
    BadRegularity(u16, u16),
    #[error("vertex_orders needs exactly one more entry than edge_orders, got {vertices} and {edges}")]
    ArityMismatch { vertices: usize, edges: usize },
    #[error("stabilizer orders must be positive")]
    ZeroOrder,
    #[error("edge order {edge} (e_{index}) does not divide the vertex order {vertex} next to it")]
    Divisibility { index: usize, edge: u64, vertex: u64 },
    #[error("index sum at ray vertex {index} is {sum}, expected the valence {valence}")]
    IndexSum { index: usize, sum: u64, valence: u64 },
    #[error("unsupported growth rule `{0}`: use `geometric:R` with integer R ≥ 2, or `loop`")]
    BadGrowth(String),
    #[error("growth ratio {0} makes the covolume series diverge")]
    DivergentCovolume(u64),
    #[error("`loop` is the cocompact control: it expects qs = qt = 2 and single unit orders")]
    BadLoop,
    #[error("geometric growth needs at least 2 declared edge orders to extend from")]
    PrefixTooShort,
    #[error("operation needs horizon {needed} but the model was built with horizon {horizon}")]
    HorizonExceeded { needed: usize, horizon: usize },
    #[error("invalid address: {0}")]
    BadAddress(String),
}

/// Why no disconnection certificate was produced.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CertificateFailure {
    #[error("the quotient is a single chamber orbit: D(0) is already everything and gallery-connected, so no separating wall exists within any bound (reported, not proven)")]
    CocompactControl,
    #[error("no ray vertex past level {0} with an index-certified coset move inside the built horizon")]
    NoQualifyingWall(usize),
}

/// One navigation step in a chamber address, with absolute branch indices
/// into the incident vertex's chamber lists.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Step {
    /// `k`-th lower-level chamber through the lower vertex.
    Down(u32),
    /// `k`-th same-level chamber through the lower vertex.
    SideLower(u32),
    /// `k`-th same-level chamber through the upper vertex.
    SideUpper(u32),
    /// `k`-th higher-level chamber through the upper vertex.
    Up(u32),
}

/// Handle for a materialized chamber (an edge of the covering tree).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct ChamberId(pub usize);

/// Handle for a materialized vertex (a panel of the covering tree).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct VertexId(pub usize);

#[derive(Clone, Debug)]
struct VertexNode {
    /// Image `v_i` in the quotient ray (0 for the control model).
    ray_index: usize,
    /// Incident chambers one level below the vertex index, creation order.
    down: Vec<ChamberId>,
    /// Incident chambers at the vertex index, creation order.
    up: Vec<ChamberId>,
    /// Gallery distance from the base chamber to the nearest incident
    /// chamber (its entry).
    depth: usize,
    saturated: bool,
}

#[derive(Clone, Debug)]
struct ChamberNode {
    level: usize,
    lower: VertexId,
    upper: VertexId,
    dist: usize,
    address: Vec<Step>,
}

/// Whether the model is the non-uniform ray or the cocompact control.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ModelKind {
    Ray,
    CocompactControl,
}

/// Finite, self-contained witness that `D(n)` is not gallery-connected:
/// a vertex tree-wall on `Y` whose epicormic chambers all lie strictly
/// outside `D(n)`, plus two orbit chambers with distinct gates at the
/// wall. Serializes to JSON with a stable field order.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DisconnectionCertificate {
    pub n: usize,
    /// Index `L` of the separating ray vertex `u_L` (the wall).
    pub wall_ray_vertex: usize,
    /// Number of chambers at the wall = number of components it cuts.
    pub wall_valence: u64,
    /// Levels of every chamber at the wall, canonical order.
    pub epicormic_levels: Vec<usize>,
    /// Minimum orbit distance over the epicormic chambers; must be > n.
    pub min_epicormic_orbit_distance: usize,
    /// Address of the first orbit witness (the base chamber).
    pub witness_a: Vec<Step>,
    /// Address of the second orbit witness, reached by the coset move
    /// across the wall and a canonical descent.
    pub witness_b: Vec<Step>,
    /// Positions, in the wall's canonical chamber list, of the gates the
    /// two witnesses project to. Distinct positions = distinct components.
    pub witness_gates: [u32; 2],
}

/// A materialized window of the covering tree of a ray of groups.
/// Immutable after construction; every query is a pure read.
#[derive(Clone, Debug)]
pub struct LatticeModel {
    spec: RaySpec,
    growth: Growth,
    horizon: usize,
    vertices: Vec<VertexNode>,
    chambers: Vec<ChamberNode>,
    /// Chamber ids of the fundamental ray `y_0, y_1, …` (control: just
    /// the base).
    ray: Vec<ChamberId>,
}

impl LatticeModel {
    /// Validates a ray spec and materializes the covering tree out to the
    /// given gallery-distance horizon around the base chamber.
    pub fn build(spec: &RaySpec, horizon: usize) -> Result<LatticeModel, LatticeError> {
        let growth = parse_growth(&spec.growth)?;
        if spec.qs < 2 || spec.qt < 2 {
            return Err(LatticeError::BadRegularity(spec.qs, spec.qt));
        }
        if spec.vertex_orders.iter().chain(&spec.edge_orders).any(|&x| x == 0) {
            return Err(LatticeError::ZeroOrder);
        }
        match growth {
            Growth::Loop => {
                if spec.qs != 2
                    || spec.qt != 2
                    || spec.vertex_orders != [1]
                    || spec.edge_orders != [1]
                {
                    return Err(LatticeError::BadLoop);
                }
            }
            Growth::Geometric(_) => {
                if spec.vertex_orders.len() != spec.edge_orders.len() + 1 {
                    return Err(LatticeError::ArityMismatch {
                        vertices: spec.vertex_orders.len(),
                        edges: spec.edge_orders.len(),
                    });
                }
                if spec.edge_orders.len() < 2 {
                    return Err(LatticeError::PrefixTooShort);
                }
            }
        }
        let mut model = LatticeModel {
            spec: spec.clone(),
            growth,
            horizon,
            vertices: Vec::new(),
            chambers: Vec::new(),
            ray: Vec::new(),
        };
        if growth != Growth::Loop {
            // the declared prefix plus two extension periods pins every
            // later index sum, since lag-2 scaling leaves indices alone
            for i in 0..spec.vertex_orders.len() + 4 {
                model.check_vertex_indices(i)?;
            }
        }
        model.materialize();
        Ok(model)
    }

    fn check_vertex_indices(&self, i: usize) -> Result<(), LatticeError> {
        let v = self.vertex_order(i);
        let valence = self.valence(i);
        let mut sum = 0;
        if i >= 1 {
            let e = self.edge_order(i - 1);
            if v % e != 0 {
                return Err(LatticeError::Divisibility { index: i - 1, edge: e, vertex: v });
            }
            sum += v / e;
        }
        let e = self.edge_order(i);
        if v % e != 0 {
            return Err(LatticeError::Divisibility { index: i, edge: e, vertex: v });
        }
        sum += v / e;
        if sum != valence {
            return Err(LatticeError::IndexSum { index: i, sum, valence });
        }
        Ok(())
    }

    /// Stabilizer order of the quotient ray vertex `v_i`, extended by the
    /// growth rule beyond the declared prefix.
    pub fn vertex_order(&self, i: usize) -> u64 {
        extended_order(&self.spec.vertex_orders, self.growth, i)
    }

    /// Stabilizer order of the quotient ray edge `e_i`, extended by the
    /// growth rule beyond the declared prefix.
    pub fn edge_order(&self, i: usize) -> u64 {
        extended_order(&self.spec.edge_orders, self.growth, i)
    }

    /// Building valence of ray vertex `v_i`: `qs` at even indices, `qt`
    /// at odd ones (2 for the control).
    pub fn valence(&self, i: usize) -> u64 {
        match self.growth {
            Growth::Loop => 2,
            Growth::Geometric(_) => {
                if i % 2 == 0 {
                    self.spec.qs as u64
                } else {
                    self.spec.qt as u64
                }
            }
        }
    }

    /// `[Γ_{v_i} : Γ_{e_{i-1}}]`, the number of level-`(i-1)` chambers at
    /// a vertex over `v_i`.
    fn index_down(&self, i: usize) -> u64 {
        if i == 0 {
            0
        } else {
            self.vertex_order(i) / self.edge_order(i - 1)
        }
    }

    /// `[Γ_{v_i} : Γ_{e_i}]`, the number of level-`i` chambers at a vertex
    /// over `v_i`.
    fn index_up(&self, i: usize) -> u64 {
        self.vertex_order(i) / self.edge_order(i)
    }

    fn materialize(&mut self) {
        // base chamber y_0 between fresh vertices over v_0 and v_1
        self.vertices.push(VertexNode {
            ray_index: 0,
            down: Vec::new(),
            up: vec![ChamberId(0)],
            depth: 0,
            saturated: false,
        });
        self.vertices.push(VertexNode {
            ray_index: if self.growth == Growth::Loop { 0 } else { 1 },
            down: if self.growth == Growth::Loop { Vec::new() } else { vec![ChamberId(0)] },
            up: if self.growth == Growth::Loop { vec![ChamberId(0)] } else { Vec::new() },
            depth: 0,
            saturated: false,
        });
        self.chambers.push(ChamberNode {
            level: 0,
            lower: VertexId(0),
            upper: VertexId(1),
            dist: 0,
            address: Vec::new(),
        });
        let mut queue: VecDeque<VertexId> = VecDeque::from([VertexId(0), VertexId(1)]);
        while let Some(v) = queue.pop_front() {
            if self.vertices[v.0].depth + 1 > self.horizon {
                continue; // chambers created here would exceed the window
            }
            for w in self.saturate(v) {
                queue.push_back(w);
            }
        }
        // read the fundamental ray off the materialized tree
        self.ray.push(ChamberId(0));
        if self.growth != Growth::Loop {
            loop {
                let last = *self.ray.last().expect("nonempty");
                let upper = self.chambers[last.0].upper;
                match self.vertices[upper.0].up.first() {
                    Some(&next) => self.ray.push(next),
                    None => break,
                }
            }
        }
    }

    /// Creates the missing chambers at a vertex so its local structure
    /// matches the quotient indices; returns the vertices created.
    fn saturate(&mut self, v: VertexId) -> Vec<VertexId> {
        let ray_index = self.vertices[v.0].ray_index;
        let depth = self.vertices[v.0].depth;
        let entry = {
            let node = &self.vertices[v.0];
            *node
                .down
                .iter()
                .chain(&node.up)
                .find(|c| self.chambers[c.0].dist == depth)
                .expect("every vertex has an entry chamber")
        };
        let entry_lower = self.chambers[entry.0].lower == v;
        let entry_address = self.chambers[entry.0].address.clone();
        let mut created = Vec::new();

        let (want_down, want_up) = match self.growth {
            Growth::Loop => (0, 2),
            Growth::Geometric(_) => (
                self.index_down(ray_index) as usize,
                self.index_up(ray_index) as usize,
            ),
        };

        while self.vertices[v.0].down.len() < want_down {
            let k = self.vertices[v.0].down.len() as u32;
            let step = if entry_lower { Step::Down(k) } else { Step::SideUpper(k) };
            let mut address = entry_address.clone();
            address.push(step);
            let far = VertexId(self.vertices.len());
            self.vertices.push(VertexNode {
                ray_index: ray_index - 1,
                down: Vec::new(),
                up: Vec::new(),
                depth: depth + 1,
                saturated: false,
            });
            let id = ChamberId(self.chambers.len());
            self.chambers.push(ChamberNode {
                level: ray_index - 1,
                lower: far,
                upper: v,
                dist: depth + 1,
                address,
            });
            self.vertices[v.0].down.push(id);
            self.vertices[far.0].up.push(id);
            created.push(far);
        }
        while self.vertices[v.0].up.len() < want_up {
            let k = self.vertices[v.0].up.len() as u32;
            let step = if entry_lower { Step::SideLower(k) } else { Step::Up(k) };
            let mut address = entry_address.clone();
            address.push(step);
            let far = VertexId(self.vertices.len());
            let far_ray_index = match self.growth {
                Growth::Loop => 0,
                Growth::Geometric(_) => ray_index + 1,
            };
            self.vertices.push(VertexNode {
                ray_index: far_ray_index,
                down: Vec::new(),
                up: Vec::new(),
                depth: depth + 1,
                saturated: false,
            });
            let id = ChamberId(self.chambers.len());
            let (lower, upper) = if self.growth == Growth::Loop && !entry_lower {
                // the control line keeps its orientation: new chamber
                // hangs off the upper vertex to the right
                (v, far)
            } else if self.growth == Growth::Loop {
                (far, v)
            } else {
                (v, far)
            };
            let level = match self.growth {
                Growth::Loop => 0,
                Growth::Geometric(_) => ray_index,
            };
            let id_node = ChamberNode { level, lower, upper, dist: depth + 1, address };
            self.chambers.push(id_node);
            self.vertices[v.0].up.push(id);
            if self.growth == Growth::Loop {
                self.vertices[far.0].up.push(id);
            } else {
                self.vertices[far.0].down.push(id);
            }
            created.push(far);
        }
        self.vertices[v.0].saturated = true;
        created
    }

    pub fn kind(&self) -> ModelKind {
        match self.growth {
            Growth::Loop => ModelKind::CocompactControl,
            Growth::Geometric(_) => ModelKind::Ray,
        }
    }

    pub fn horizon(&self) -> usize {
        self.horizon
    }

    pub fn num_chambers(&self) -> usize {
        self.chambers.len()
    }

    pub fn base(&self) -> ChamberId {
        ChamberId(0)
    }

    /// The materialized fundamental domain `y_0, y_1, …` (one chamber per
    /// level; the control has a single chamber orbit).
    pub fn fundamental_ray(&self) -> &[ChamberId] {
        &self.ray
    }

    pub fn level(&self, c: ChamberId) -> usize {
        self.chambers[c.0].level
    }

    pub fn address(&self, c: ChamberId) -> &[Step] {
        &self.chambers[c.0].address
    }

    /// Gallery distance from the base chamber.
    pub fn dist_to_base(&self, c: ChamberId) -> usize {
        self.chambers[c.0].dist
    }

    /// The two panels (tree vertices) of a chamber, lower then upper.
    pub fn panels(&self, c: ChamberId) -> [VertexId; 2] {
        [self.chambers[c.0].lower, self.chambers[c.0].upper]
    }

    /// Quotient ray index of a vertex.
    pub fn vertex_ray_index(&self, v: VertexId) -> usize {
        self.vertices[v.0].ray_index
    }

    /// Incident chambers of a vertex in canonical order (lower levels
    /// first, then creation order).
    pub fn vertex_chambers(&self, v: VertexId) -> Vec<ChamberId> {
        let node = &self.vertices[v.0];
        node.down.iter().chain(&node.up).copied().collect()
    }

    pub fn vertex_saturated(&self, v: VertexId) -> bool {
        self.vertices[v.0].saturated
    }

    /// Adjacent chambers, canonical order; complete when both panels are
    /// saturated.
    pub fn neighbors(&self, c: ChamberId) -> Vec<ChamberId> {
        let node = &self.chambers[c.0];
        let mut out = Vec::new();
        for v in [node.lower, node.upper] {
            for other in self.vertex_chambers(v) {
                if other != c {
                    out.push(other);
                }
            }
        }
        out
    }

    /// Resolves an address by walking its steps from the base chamber.
    pub fn chamber_by_address(&self, address: &[Step]) -> Result<ChamberId, LatticeError> {
        let control = self.growth == Growth::Loop;
        let mut cur = ChamberId(0);
        for (i, &step) in address.iter().enumerate() {
            let node = &self.chambers[cur.0];
            let (list, k, same_level): (&Vec<ChamberId>, u32, bool) = match step {
                Step::Down(k) => (&self.vertices[node.lower.0].down, k, false),
                Step::SideLower(k) => (&self.vertices[node.lower.0].up, k, true),
                // on the control line every chamber sits in `up` lists
                Step::SideUpper(k) if control => (&self.vertices[node.upper.0].up, k, true),
                Step::SideUpper(k) => (&self.vertices[node.upper.0].down, k, true),
                Step::Up(k) => (&self.vertices[node.upper.0].up, k, false),
            };
            let next = *list.get(k as usize).ok_or_else(|| {
                LatticeError::BadAddress(format!("step {i}: branch {k} not materialized"))
            })?;
            if same_level && next == cur {
                return Err(LatticeError::BadAddress(format!(
                    "step {i}: side step returns to the same chamber"
                )));
            }
            cur = next;
        }
        Ok(cur)
    }

    /// Gallery distance from a chamber to the base orbit (the set of
    /// level-0 chambers). Equal to the chamber's level: one step changes
    /// the level by at most one, and a level-lowering step always exists.
    pub fn orbit_distance(&self, c: ChamberId) -> usize {
        self.chambers[c.0].level
    }

    /// Whether the chamber lies in the orbit of the base chamber.
    pub fn in_base_orbit(&self, c: ChamberId) -> bool {
        self.chambers[c.0].level == 0
    }

    /// Image of a chamber in the fundamental domain.
    pub fn project_to_y(&self, c: ChamberId) -> ChamberId {
        self.ray[self.chambers[c.0].level]
    }

    /// Stabilizer order of a chamber, pulled from its level's edge group.
    pub fn stabilizer_order(&self, c: ChamberId) -> u64 {
        match self.growth {
            Growth::Loop => 1,
            Growth::Geometric(_) => self.edge_order(self.chambers[c.0].level),
        }
    }

    /// Exact partial covolume `Σ_{i<k} 1/|Γ_{e_i}|`.
    pub fn covolume_partial(&self, k: usize) -> BigRational {
        let mut acc = BigRational::zero();
        match self.growth {
            Growth::Loop => {
                if k >= 1 {
                    acc = BigRational::one();
                }
            }
            Growth::Geometric(_) => {
                for i in 0..k {
                    acc += BigRational::new(BigInt::one(), BigInt::from(self.edge_order(i)));
                }
            }
        }
        acc
    }

    /// `D(n)` within the window: chambers at distance ≤ `window` from the
    /// base whose orbit distance is ≤ `n`, in id order.
    pub fn d_set(&self, n: usize, window: usize) -> Result<Vec<ChamberId>, LatticeError> {
        if window > self.horizon {
            return Err(LatticeError::HorizonExceeded {
                needed: window,
                horizon: self.horizon,
            });
        }
        Ok((0..self.chambers.len())
            .map(ChamberId)
            .filter(|&c| self.chambers[c.0].dist <= window && self.chambers[c.0].level <= n)
            .collect())
    }

    /// All chambers within gallery distance `radius` of the base, id
    /// order.
    pub fn chambers_within(&self, radius: usize) -> Result<Vec<ChamberId>, LatticeError> {
        if radius > self.horizon {
            return Err(LatticeError::HorizonExceeded {
                needed: radius,
                horizon: self.horizon,
            });
        }
        Ok((0..self.chambers.len())
            .map(ChamberId)
            .filter(|&c| self.chambers[c.0].dist <= radius)
            .collect())
    }

    /// The ray vertex `u_L` lying between `y_{L-1}` and `y_L`, when
    /// materialized.
    pub fn ray_vertex(&self, l: usize) -> Option<VertexId> {
        if l == 0 {
            return Some(self.chambers[self.ray.first()?.0].lower);
        }
        let y = *self.ray.get(l - 1)?;
        Some(self.chambers[y.0].upper)
    }

    /// Horizon that comfortably covers a certificate search and its
    /// verification window for a given `n`.
    pub fn recommended_horizon(n: usize) -> usize {
        2 * n + 10
    }

    /// Searches along `Y` for a separating vertex wall for `D(n)`: the
    /// lowest ray vertex `u_L` with `L ≥ n+2` whose upper edge group fills
    /// its vertex group (`[Γ_{v_L} : Γ_{e_L}] = 1`, so the coset move γ
    /// exists) and which has at least two lower chambers to move between.
    /// Walls are scanned lowest level first, so the result is
    /// deterministic.
    pub fn find_disconnection_certificate(
        &self,
        n: usize,
    ) -> Result<DisconnectionCertificate, CertificateFailure> {
        if self.growth == Growth::Loop {
            return Err(CertificateFailure::CocompactControl);
        }
        for l in (n + 2).. {
            // the wall ball and the descent witness must stay materialized
            let needed = (2 * l - 1).max(l + n + 4);
            if needed > self.horizon || self.ray_vertex(l).is_none() {
                return Err(CertificateFailure::NoQualifyingWall(n + 1));
            }
            if self.index_down(l) >= 2 && self.index_up(l) == 1 {
                return Ok(self.certificate_at(n, l));
            }
        }
        unreachable!("loop either returns a certificate or errors out")
    }

    fn certificate_at(&self, n: usize, l: usize) -> DisconnectionCertificate {
        let wall = self.ray_vertex(l).expect("checked by caller");
        debug_assert!(self.vertex_saturated(wall));
        let chambers = self.vertex_chambers(wall);
        let epicormic_levels: Vec<usize> =
            chambers.iter().map(|&c| self.chambers[c.0].level).collect();
        let min_orbit = *epicormic_levels.iter().min().expect("wall has chambers");
        debug_assert!(min_orbit > n);

        // gate of the base: y_{l-1}, which is down[0] at the wall
        let down = &self.vertices[wall.0].down;
        debug_assert_eq!(down.first(), self.ray.get(l - 1));
        // γ moves y_{l-1} to its sibling down[1]; descend canonically to
        // the orbit on the far side
        let mut cur = down[1];
        while self.chambers[cur.0].level > 0 {
            let lower = self.chambers[cur.0].lower;
            cur = self.vertices[lower.0].down[0];
        }
        let witness_b = self.chambers[cur.0].address.clone();
        let gate_b = chambers
            .iter()
            .position(|&c| c == down[1])
            .expect("sibling is at the wall") as u32;

        DisconnectionCertificate {
            n,
            wall_ray_vertex: l,
            wall_valence: self.valence(l),
            epicormic_levels,
            min_epicormic_orbit_distance: min_orbit,
            witness_a: Vec::new(),
            witness_b,
            witness_gates: [0, gate_b],
        }
    }

    /// Gallery distance from a chamber to the nearest chamber satisfying
    /// a predicate, by breadth-first search over the materialized window.
    fn bfs_distance_to(
        &self,
        from: ChamberId,
        target: impl Fn(ChamberId) -> bool,
    ) -> Option<(usize, ChamberId)> {
        if target(from) {
            return Some((0, from));
        }
        let mut seen = vec![false; self.chambers.len()];
        seen[from.0] = true;
        let mut queue = VecDeque::from([(from, 0usize)]);
        while let Some((c, d)) = queue.pop_front() {
            for nb in self.neighbors(c) {
                if seen[nb.0] {
                    continue;
                }
                if target(nb) {
                    return Some((d + 1, nb));
                }
                seen[nb.0] = true;
                queue.push_back((nb, d + 1));
            }
        }
        None
    }

    /// Independently re-checks a certificate against the materialized
    /// tree: (a) every chamber at the wall has BFS orbit distance > n,
    /// (b) both witnesses resolve to orbit chambers, (c) their gates at
    /// the wall are the recorded, distinct positions.
    pub fn verify_certificate(&self, cert: &DisconnectionCertificate) -> bool {
        self.verify_certificate_detailed(cert).is_ok()
    }

    /// Like [`Self::verify_certificate`] but says what failed.
    pub fn verify_certificate_detailed(
        &self,
        cert: &DisconnectionCertificate,
    ) -> Result<(), String> {
        if self.growth == Growth::Loop {
            return Err("control model admits no certificate".into());
        }
        let wall = self
            .ray_vertex(cert.wall_ray_vertex)
            .ok_or("wall vertex beyond the materialized ray")?;
        if !self.vertices[wall.0].saturated {
            return Err("wall vertex is not saturated at this horizon".into());
        }
        let chambers = self.vertex_chambers(wall);
        if chambers.len() as u64 != cert.wall_valence
            || self.valence(cert.wall_ray_vertex) != cert.wall_valence
        {
            return Err("wall valence mismatch".into());
        }
        let levels: Vec<usize> = chambers.iter().map(|&c| self.chambers[c.0].level).collect();
        if levels != cert.epicormic_levels {
            return Err("epicormic levels mismatch".into());
        }
        let mut min_orbit = usize::MAX;
        for &c in &chambers {
            let (d, _) = self
                .bfs_distance_to(c, |x| self.chambers[x.0].level == 0)
                .ok_or("no orbit chamber reachable from the wall")?;
            if d != self.chambers[c.0].level {
                return Err(format!(
                    "BFS orbit distance {d} disagrees with level {}",
                    self.chambers[c.0].level
                ));
            }
            min_orbit = min_orbit.min(d);
        }
        if min_orbit != cert.min_epicormic_orbit_distance {
            return Err("minimum epicormic orbit distance mismatch".into());
        }
        if min_orbit <= cert.n {
            return Err(format!(
                "wall is too close: epicormic orbit distance {min_orbit} ≤ n = {}",
                cert.n
            ));
        }
        let wa = self
            .chamber_by_address(&cert.witness_a)
            .map_err(|e| format!("witness_a: {e}"))?;
        let wb = self
            .chamber_by_address(&cert.witness_b)
            .map_err(|e| format!("witness_b: {e}"))?;
        for (name, w) in [("witness_a", wa), ("witness_b", wb)] {
            if self.chambers[w.0].level != 0 {
                return Err(format!("{name} is not an orbit chamber"));
            }
        }
        let mut gates = [0u32; 2];
        for (slot, w) in [wa, wb].into_iter().enumerate() {
            let (_, gate) = self
                .bfs_distance_to(w, |x| chambers.contains(&x))
                .ok_or("witness cannot reach the wall")?;
            gates[slot] = chambers
                .iter()
                .position(|&c| c == gate)
                .expect("gate is at the wall") as u32;
        }
        if gates != cert.witness_gates {
            return Err(format!(
                "witness gates {gates:?} disagree with certificate {:?}",
                cert.witness_gates
            ));
        }
        if gates[0] == gates[1] {
            return Err("witness gates coincide: same component".into());
        }
        Ok(())
    }
}

fn parse_growth(s: &str) -> Result<Growth, LatticeError> {
    if s == "loop" {
        return Ok(Growth::Loop);
    }
    if let Some(r) = s.strip_prefix("geometric:") {
        let ratio: u64 = r
            .parse()
            .map_err(|_| LatticeError::BadGrowth(s.to_owned()))?;
        if ratio < 2 {
            return Err(LatticeError::DivergentCovolume(ratio));
        }
        return Ok(Growth::Geometric(ratio));
    }
    Err(LatticeError::BadGrowth(s.to_owned()))
}

fn extended_order(prefix: &[u64], growth: Growth, i: usize) -> u64 {
    if i < prefix.len() {
        return prefix[i];
    }
    match growth {
        Growth::Loop => 1,
        Growth::Geometric(ratio) => {
            let mut idx = i;
            let mut mult: u64 = 1;
            while idx >= prefix.len() {
                idx -= 2;
                mult *= ratio;
            }
            prefix[idx] * mult
        }
    }
}
