//! Reference pentatope and tetrahedral prism: vertices, entity lattices,
//! shape functions, entity charts, and affine cell maps with pullbacks.

use crate::error::{FeecError, Result};
use crate::form::{small_det, FormPoly};
use crate::integrate::Domain;
use crate::poly::Polynomial;
use crate::rational::{q, qi, Rational};

pub type Point4 = [Rational; 4];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CellKind {
    Pentatope,
    TetPrism,
}

impl CellKind {
    pub fn name(&self) -> &'static str {
        match self {
            CellKind::Pentatope => "pentatope",
            CellKind::TetPrism => "prism",
        }
    }

    /// Integration domain of the whole cell.
    pub fn domain(&self) -> Domain {
        match self {
            CellKind::Pentatope => Domain::RefPentatope,
            CellKind::TetPrism => Domain::RefTetPrism,
        }
    }
}

impl std::str::FromStr for CellKind {
    type Err = FeecError;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pentatope" => Ok(CellKind::Pentatope),
            "prism" => Ok(CellKind::TetPrism),
            _ => Err(FeecError::Parse(format!("unknown cell '{s}'"))),
        }
    }
}

/// Entity types, in lattice order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EntityKind {
    Vertex,
    Edge,
    Triangle,
    Quad,
    Tet,
    PrismFacet,
    Cell,
}

impl EntityKind {
    pub fn dim(&self) -> usize {
        match self {
            EntityKind::Vertex => 0,
            EntityKind::Edge => 1,
            EntityKind::Triangle | EntityKind::Quad => 2,
            EntityKind::Tet | EntityKind::PrismFacet => 3,
            EntityKind::Cell => 4,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            EntityKind::Vertex => "vertex",
            EntityKind::Edge => "edge",
            EntityKind::Triangle => "triangle",
            EntityKind::Quad => "quad",
            EntityKind::Tet => "tet",
            EntityKind::PrismFacet => "prism-facet",
            EntityKind::Cell => "cell",
        }
    }
}

/// A sub-entity given by its sorted vertex indices (0-based).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Entity {
    pub kind: EntityKind,
    pub verts: Vec<usize>,
}

/// An affine chart `x = origin + sum_a t_a dirs[a]` over `domain`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chart {
    pub origin: Vec<Rational>,
    pub dirs: Vec<Vec<Rational>>,
    pub domain: Domain,
}

impl Chart {
    pub fn dim(&self) -> usize {
        self.dirs.len()
    }

    /// Image of the chart point `t`.
    pub fn point(&self, t: &[Rational]) -> Vec<Rational> {
        let mut x = self.origin.clone();
        for (a, d) in self.dirs.iter().enumerate() {
            for i in 0..x.len() {
                x[i] += &t[a] * &d[i];
            }
        }
        x
    }

    /// Pullback of a form; point charts evaluate components at the origin
    /// and return a form in zero variables represented with one dummy
    /// variable held at 0.
    pub fn pullback(&self, w: &FormPoly) -> FormPoly {
        if self.dirs.is_empty() {
            let comps: Vec<Polynomial> = w.comps().iter().map(|p| Polynomial::constant(1, p.eval(&self.origin))).collect();
            return FormPoly::new(1, w.degree(), comps).unwrap_or_else(|_| FormPoly::zero(1, 0));
        }
        w.pullback_affine(&self.origin, &self.dirs)
    }

    /// Triple cross product of the three chart directions of a facet chart.
    /// Its length equals the volume scaling of the chart.
    pub fn weighted_normal(&self) -> Result<Vec<Rational>> {
        if self.dirs.len() != 3 || self.origin.len() != 4 {
            return Err(FeecError::InvalidArgument("weighted normal needs a 3D chart in 4D".into()));
        }
        Ok(triple_cross(&self.dirs[0], &self.dirs[1], &self.dirs[2]))
    }
}

/// `n_i = sum eps_{ijkl} u_j v_k w_l`.
pub fn triple_cross(u: &[Rational], v: &[Rational], w: &[Rational]) -> Vec<Rational> {
    (0..4)
        .map(|i| {
            let rows: Vec<Vec<Rational>> = (0..4)
                .map(|r| {
                    let e = if r == i { qi(1) } else { qi(0) };
                    vec![e, u[r].clone(), v[r].clone(), w[r].clone()]
                })
                .collect();
            small_det(&rows)
        })
        .collect()
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn pt(v: [i64; 4]) -> Point4 {
    v.map(qi)
}

/// A reference cell with its entity lattice.
#[derive(Clone, Debug)]
pub struct RefCell {
    kind: CellKind,
    vertices: Vec<Point4>,
    entities: Vec<Entity>,
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    crate::form::combos(n, k)
}

impl RefCell {
    pub fn new(kind: CellKind) -> Self {
        let tet = [[1, -1, -1], [-1, 1, -1], [-1, -1, 1], [-1, -1, -1]];
        let vertices: Vec<Point4> = match kind {
            CellKind::Pentatope => {
                vec![pt([1, -1, -1, -1]), pt([-1, 1, -1, -1]), pt([-1, -1, 1, -1]), pt([-1, -1, -1, 1]), pt([-1, -1, -1, -1])]
            }
            CellKind::TetPrism => {
                let mut v = Vec::new();
                for t in [-1, 1] {
                    for a in tet {
                        v.push(pt([a[0], a[1], a[2], t]));
                    }
                }
                v
            }
        };
        let mut entities = Vec::new();
        let ent = |kind, verts| Entity { kind, verts };
        match kind {
            CellKind::Pentatope => {
                for (k, d) in [(EntityKind::Vertex, 1), (EntityKind::Edge, 2), (EntityKind::Triangle, 3), (EntityKind::Tet, 4)] {
                    entities.extend(subsets(5, d).into_iter().map(|v| ent(k, v)));
                }
            }
            CellKind::TetPrism => {
                entities.extend((0..8).map(|v| ent(EntityKind::Vertex, vec![v])));
                let mut edges = Vec::new();
                for e in subsets(4, 2) {
                    edges.push(e.clone());
                    edges.push(e.iter().map(|v| v + 4).collect());
                }
                for a in 0..4 {
                    edges.push(vec![a, a + 4]);
                }
                edges.sort();
                entities.extend(edges.into_iter().map(|v| ent(EntityKind::Edge, v)));
                let mut tris = Vec::new();
                for t in subsets(4, 3) {
                    tris.push(t.clone());
                    tris.push(t.iter().map(|v| v + 4).collect());
                }
                tris.sort();
                entities.extend(tris.into_iter().map(|v| ent(EntityKind::Triangle, v)));
                entities.extend(subsets(4, 2).into_iter().map(|e| ent(EntityKind::Quad, vec![e[0], e[1], e[0] + 4, e[1] + 4])));
                entities.push(ent(EntityKind::Tet, vec![0, 1, 2, 3]));
                entities.push(ent(EntityKind::Tet, vec![4, 5, 6, 7]));
                entities.extend(
                    subsets(4, 3).into_iter().map(|t| ent(EntityKind::PrismFacet, vec![t[0], t[1], t[2], t[0] + 4, t[1] + 4, t[2] + 4])),
                );
            }
        }
        entities.push(ent(EntityKind::Cell, (0..vertices.len()).collect()));
        entities.sort_by(|a, b| (a.kind, &a.verts).cmp(&(b.kind, &b.verts)));
        RefCell { kind, vertices, entities }
    }

    pub fn kind(&self) -> CellKind {
        self.kind
    }

    pub fn vertices(&self) -> &[Point4] {
        &self.vertices
    }

    /// All entities including the cell itself, ordered by kind then vertices.
    pub fn entities(&self) -> &[Entity] {
        &self.entities
    }

    pub fn entities_of(&self, kind: EntityKind) -> Vec<&Entity> {
        self.entities.iter().filter(|e| e.kind == kind).collect()
    }

    pub fn count(&self, kind: EntityKind) -> usize {
        self.entities_of(kind).len()
    }

    /// Boundary entities of dimension `< 4` whose dimension is at least `s`.
    pub fn trace_entities(&self, s: usize) -> Vec<&Entity> {
        self.entities.iter().filter(|e| e.kind != EntityKind::Cell && e.kind.dim() >= s).collect()
    }

    /// Facets (dimension 3 entities).
    pub fn facets(&self) -> Vec<&Entity> {
        self.entities.iter().filter(|e| e.kind.dim() == 3).collect()
    }

    pub fn centroid(&self) -> Vec<Rational> {
        let n = qi(self.vertices.len() as i64);
        (0..4).map(|i| self.vertices.iter().map(|v| v[i].clone()).sum::<Rational>() / n.clone()).collect()
    }

    /// Chart of an entity, built from its sorted vertex list with the
    /// lowest vertex as origin.
    pub fn chart(&self, e: &Entity) -> Chart {
        let v = |i: usize| self.vertices[e.verts[i]].to_vec();
        let origin = v(0);
        let dir = |i: usize| sub(&v(i), &origin);
        match e.kind {
            EntityKind::Vertex => Chart { origin, dirs: vec![], domain: Domain::Point },
            EntityKind::Edge | EntityKind::Triangle | EntityKind::Tet => {
                let d = e.verts.len() - 1;
                Chart { dirs: (1..=d).map(dir).collect(), origin, domain: Domain::UnitSimplex(d) }
            }
            // (a, b, a+4, b+4)
            EntityKind::Quad => Chart { dirs: vec![dir(1), dir(2)], origin, domain: Domain::UnitCube(2) },
            // (a, b, c, a+4, b+4, c+4)
            EntityKind::PrismFacet => Chart { dirs: vec![dir(1), dir(2), dir(3)], origin, domain: Domain::UnitTriPrism },
            EntityKind::Cell => Chart {
                origin: vec![qi(0); 4],
                dirs: (0..4).map(|i| (0..4).map(|j| if i == j { qi(1) } else { qi(0) }).collect()).collect(),
                domain: self.kind.domain(),
            },
        }
    }

    /// Weighted facet normal from the chart, flipped to point outward.
    pub fn outward_normal(&self, e: &Entity) -> Result<Vec<Rational>> {
        let c = self.chart(e);
        let n = c.weighted_normal()?;
        let inward = sub(&self.centroid(), &c.origin);
        Ok(if dot(&inward, &n).is_negative() { n } else { n.into_iter().map(|x| -x).collect() })
    }

    /// True when `x` lies in the closed cell.
    pub fn contains_point(&self, x: &[Rational]) -> bool {
        barycentrics(self.kind).iter().all(|l| !l.eval(x).is_negative())
    }

    /// Barycentric lattice of order `m >= 1`; for the prism the product of
    /// the tetrahedral and segment lattices.
    pub fn lattice(&self, m: u32) -> Vec<Vec<Rational>> {
        let m = m.max(1) as i64;
        let simplex = |verts: &[Vec<Rational>]| -> Vec<Vec<Rational>> {
            let n = verts.len();
            let dim = verts[0].len();
            compositions(n, m)
                .into_iter()
                .map(|a| (0..dim).map(|i| (0..n).map(|j| q(a[j], m) * verts[j][i].clone()).sum()).collect())
                .collect()
        };
        match self.kind {
            CellKind::Pentatope => simplex(&self.vertices.iter().map(|v| v.to_vec()).collect::<Vec<_>>()),
            CellKind::TetPrism => {
                let tet: Vec<Vec<Rational>> = self.vertices[..4].iter().map(|v| v[..3].to_vec()).collect();
                let seg = simplex(&[vec![qi(-1)], vec![qi(1)]]);
                let mut out = Vec::new();
                for t in simplex(&tet) {
                    for s in &seg {
                        let mut p = t.clone();
                        p.push(s[0].clone());
                        out.push(p);
                    }
                }
                out
            }
        }
    }
}

/// Tuples of `n` non-negative integers summing to `m`, first entry
/// descending.
pub(crate) fn compositions(n: usize, m: i64) -> Vec<Vec<i64>> {
    if n == 1 {
        return vec![vec![m]];
    }
    let mut out = Vec::new();
    for a in (0..=m).rev() {
        for mut rest in compositions(n - 1, m - a) {
            rest.insert(0, a);
            out.push(rest);
        }
    }
    out
}

fn affine4(c0: Rational, c: [Rational; 4]) -> Polynomial {
    Polynomial::affine(4, c0, &c)
}

/// Tetrahedral barycentrics in `(x1, x2, x3)`: `(x_i + 1)/2` and
/// `-(x1 + x2 + x3 + 1)/2`.
pub fn tet_barycentrics(nvars: usize) -> Vec<Polynomial> {
    let h = q(1, 2);
    let mut out: Vec<Polynomial> = (0..3)
        .map(|i| {
            let mut c = vec![qi(0); nvars];
            c[i] = h.clone();
            Polynomial::affine(nvars, h.clone(), &c)
        })
        .collect();
    let mut c = vec![qi(0); nvars];
    for x in c.iter_mut().take(3) {
        *x = -h.clone();
    }
    out.push(Polynomial::affine(nvars, -h.clone(), &c));
    out
}

/// Segment barycentrics `nu_1 = (1 - t)/2`, `nu_2 = (1 + t)/2` in variable
/// `var` of `nvars`.
pub fn segment_barycentrics(nvars: usize, var: usize) -> [Polynomial; 2] {
    let h = q(1, 2);
    let mut c = vec![qi(0); nvars];
    c[var] = -h.clone();
    let nu1 = Polynomial::affine(nvars, h.clone(), &c);
    c[var] = h.clone();
    let nu2 = Polynomial::affine(nvars, h, &c);
    [nu1, nu2]
}

/// Barycentric coordinates: five for the pentatope; for the prism the four
/// tetrahedral ones followed by the two segment ones.
pub fn barycentrics(kind: CellKind) -> Vec<Polynomial> {
    let h = q(1, 2);
    match kind {
        CellKind::Pentatope => {
            let mut out: Vec<Polynomial> = (0..4)
                .map(|i| {
                    let mut c: [Rational; 4] = [qi(0), qi(0), qi(0), qi(0)];
                    c[i] = h.clone();
                    affine4(h.clone(), c)
                })
                .collect();
            out.push(affine4(qi(-1), [-h.clone(), -h.clone(), -h.clone(), -h.clone()]));
            out
        }
        CellKind::TetPrism => {
            let mut out = tet_barycentrics(4);
            out.extend(segment_barycentrics(4, 3));
            out
        }
    }
}

/// Vertex shape functions, `N_i(v_j) = delta_ij`. For the prism,
/// `N_a = lambda_a nu_1` on the bottom tet and `lambda_a nu_2` on the top.
pub fn shape_functions(kind: CellKind) -> Vec<Polynomial> {
    match kind {
        CellKind::Pentatope => barycentrics(kind),
        CellKind::TetPrism => {
            let b = barycentrics(kind);
            let mut out: Vec<Polynomial> = b[..4].iter().map(|l| l * &b[4]).collect();
            out.extend(b[..4].iter().map(|l| l * &b[5]));
            out
        }
    }
}

/// An affine cell map `x' = A x + b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellMap {
    kind: CellKind,
    a: [[Rational; 4]; 4],
    b: [Rational; 4],
    det: Rational,
}

fn zero4() -> [Rational; 4] {
    [qi(0), qi(0), qi(0), qi(0)]
}

impl CellMap {
    pub fn identity(kind: CellKind) -> Self {
        let mut a: [[Rational; 4]; 4] = [zero4(), zero4(), zero4(), zero4()];
        for (i, row) in a.iter_mut().enumerate() {
            row[i] = qi(1);
        }
        CellMap { kind, a, b: zero4(), det: qi(1) }
    }

    /// Builds `x' = A x + b` directly; errors if `det A = 0`.
    pub fn from_affine(kind: CellKind, a: [[Rational; 4]; 4], b: [Rational; 4]) -> Result<Self> {
        let det = small_det(&a.iter().map(|r| r.to_vec()).collect::<Vec<_>>());
        if det.is_zero() {
            return Err(FeecError::DegenerateMap);
        }
        Ok(CellMap { kind, a, b, det })
    }

    pub fn kind(&self) -> CellKind {
        self.kind
    }

    /// Jacobian matrix, row-major.
    pub fn jacobian(&self) -> &[[Rational; 4]; 4] {
        &self.a
    }

    pub fn offset(&self) -> &[Rational; 4] {
        &self.b
    }

    /// Signed Jacobian determinant.
    pub fn det(&self) -> &Rational {
        &self.det
    }

    pub fn apply(&self, x: &[Rational]) -> Vec<Rational> {
        (0..4).map(|i| &self.b[i] + &dot(&self.a[i], x)).collect()
    }

    /// The map as four affine polynomials in the reference coordinates.
    pub fn components(&self) -> Vec<Polynomial> {
        (0..4).map(|i| affine4(self.b[i].clone(), self.a[i].clone())).collect()
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &CellMap) -> CellMap {
        let mut a: [[Rational; 4]; 4] = [zero4(), zero4(), zero4(), zero4()];
        for (i, row) in a.iter_mut().enumerate() {
            for (j, x) in row.iter_mut().enumerate() {
                *x = (0..4).map(|k| &self.a[i][k] * &other.a[k][j]).sum();
            }
        }
        let b: Vec<Rational> = self.apply(&other.b);
        let kind = if self.kind == other.kind { self.kind } else { CellKind::Pentatope };
        CellMap { kind, a, b: [b[0].clone(), b[1].clone(), b[2].clone(), b[3].clone()], det: &self.det * &other.det }
    }

    /// Pullback `phi^* w` of a form given in physical coordinates.
    pub fn pullback(&self, w: &FormPoly) -> FormPoly {
        let cols: Vec<Vec<Rational>> = (0..4).map(|j| (0..4).map(|i| self.a[i][j].clone()).collect()).collect();
        w.pullback_affine(&self.b, &cols)
    }
}

/// Builds the map sending the reference vertices to `verts` through the
/// shape functions. Prism inputs must be an affine tet map extruded along
/// `x4`: equal vertical offsets parallel to `e4`, flat bottom.
pub fn make_map(kind: CellKind, verts: &[Point4]) -> Result<CellMap> {
    let cell = RefCell::new(kind);
    let nv = cell.vertices().len();
    if verts.len() != nv {
        return Err(FeecError::DimensionMismatch(format!("{} needs {nv} vertices, got {}", kind.name(), verts.len())));
    }
    if kind == CellKind::TetPrism {
        let h = sub(&verts[4], &verts[0]);
        let sheared = (0..4).any(|i| sub(&verts[i + 4], &verts[i]) != h)
            || h[..3].iter().any(|x| !x.is_zero())
            || (1..4).any(|i| verts[i][3] != verts[0][3]);
        if sheared {
            return Err(FeecError::ShearedPrism);
        }
    }
    let n = shape_functions(kind);
    let phi = |x: &[Rational]| -> Vec<Rational> {
        let w: Vec<Rational> = n.iter().map(|p| p.eval(x)).collect();
        (0..4).map(|i| (0..nv).map(|j| &w[j] * &verts[j][i]).sum()).collect()
    };
    let b = phi(&zero4());
    let mut a: [[Rational; 4]; 4] = [zero4(), zero4(), zero4(), zero4()];
    for j in 0..4 {
        let mut e = zero4();
        e[j] = qi(1);
        let col = sub(&phi(&e), &b);
        for i in 0..4 {
            a[i][j] = col[i].clone();
        }
    }
    CellMap::from_affine(kind, a, [b[0].clone(), b[1].clone(), b[2].clone(), b[3].clone()])
}
