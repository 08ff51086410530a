//! Constructors for the concrete groups and circle maps: the punctured-sphere
//! groups `G_d` with their Bowen-Series maps, the thrice-punctured group with
//! generators built from reflections, completely folding and higher
//! Bowen-Series maps for general `k`, the interpolating family, the two
//! non-examples, the piecewise reflection map, the ideal-triangle Nielsen map
//! and the lamination candidate lists.

use std::f64::consts::PI;

use num_complex::Complex64;
use thiserror::Error;

use crate::circle_maps::{CircleMapError, IdealPolygon, PiecewiseMap};
use crate::freegroup::FreeWord;
use crate::moebius::{
    circle_inversion, reflection_in_geodesic, three_point_map, ElementKind, Geodesic, Model, MoebiusError,
    MoebiusMap, MAP_EQ_TOL,
};

/// Tolerance for side-pairing endpoint checks.
pub const PAIRING_TOL: f64 = 1e-9;

/// Errors raised by catalog constructors.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum CatalogError {
    /// A size parameter is out of range.
    #[error("parameter out of range: {0}")]
    BadParameter(String),
    /// The vertex selection of an interpolating map is invalid.
    #[error("invalid vertex selection {0:?}")]
    InvalidSelection(Vec<usize>),
    /// A construction-time consistency check failed.
    #[error("consistency check failed: {0}")]
    Inconsistent(String),
    /// Underlying circle-map failure.
    #[error(transparent)]
    Circle(#[from] CircleMapError),
    /// Underlying Möbius failure.
    #[error(transparent)]
    Moebius(#[from] MoebiusError),
}

/// One side pairing: `generator` carries polygon edge `edge` onto edge
/// `image_edge`. Edge `e` joins vertices `e` and `e + 1` (cyclically).
#[derive(Debug, Clone, PartialEq)]
pub struct SidePairing {
    /// Source edge.
    pub edge: usize,
    /// Generator letter (signed, 1-based).
    pub generator: i32,
    /// Target edge.
    pub image_edge: usize,
}

/// A marked free Fuchsian group: named generators, a fundamental polygon and
/// its side pairings.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupPresentation {
    generators: Vec<MoebiusMap>,
    names: Vec<String>,
    domain: IdealPolygon,
    pairings: Vec<SidePairing>,
}

impl GroupPresentation {
    /// Assemble and validate a presentation.
    pub fn new(
        generators: Vec<MoebiusMap>,
        names: Vec<String>,
        domain: IdealPolygon,
        pairings: Vec<SidePairing>,
    ) -> Result<Self, CatalogError> {
        if generators.len() != names.len() {
            return Err(CatalogError::Inconsistent("one name per generator".into()));
        }
        let gp = GroupPresentation {
            generators,
            names,
            domain,
            pairings,
        };
        for (j, g) in gp.generators.iter().enumerate() {
            if g.is_anti() || g.classify() == ElementKind::Elliptic {
                return Err(CatalogError::Inconsistent(format!(
                    "generator {} must be holomorphic and nonelliptic",
                    gp.names[j]
                )));
            }
        }
        if let Some(p) = gp.pairings.iter().find(|p| !gp.pairing_holds(p)) {
            return Err(CatalogError::Inconsistent(format!(
                "side pairing of edge {} fails",
                p.edge
            )));
        }
        Ok(gp)
    }

    fn edge_endpoints(&self, e: usize) -> (Complex64, Complex64) {
        let v = self.domain.vertices();
        (v[e % v.len()], v[(e + 1) % v.len()])
    }

    fn pairing_holds(&self, p: &SidePairing) -> bool {
        let f = self.evaluate_word(&FreeWord::letter(p.generator));
        let (a, b) = self.edge_endpoints(p.edge);
        let (c, d) = self.edge_endpoints(p.image_edge);
        let (fa, fb) = (f.apply_disk(a), f.apply_disk(b));
        let close = |x: Complex64, y: Complex64| (x - y).norm() <= PAIRING_TOL;
        (close(fa, c) && close(fb, d)) || (close(fa, d) && close(fb, c))
    }

    /// Generators in letter order.
    pub fn generators(&self) -> &[MoebiusMap] {
        &self.generators
    }

    /// Generator names in letter order.
    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Rank of the free group.
    pub fn free_rank(&self) -> usize {
        self.generators.len()
    }

    /// The marked fundamental polygon.
    pub fn domain(&self) -> &IdealPolygon {
        &self.domain
    }

    /// The side-pairing table.
    pub fn side_pairings(&self) -> &[SidePairing] {
        &self.pairings
    }

    /// Möbius map of a word (the last letter acts first).
    pub fn evaluate_word(&self, w: &FreeWord) -> MoebiusMap {
        w.letters()
            .iter()
            .fold(MoebiusMap::identity(Model::Disk), |acc, &l| {
                let g = self.generators[(l.unsigned_abs() - 1) as usize];
                let g = if l > 0 { g } else { g.inverse() };
                acc.compose(&g).expect("disk maps compose")
            })
    }

    /// `[g_1, g_1^{-1}, g_2, g_2^{-1}, ...]` as words with their maps.
    pub fn generator_words_symmetric(&self) -> Vec<(FreeWord, MoebiusMap)> {
        (1..=self.free_rank() as i32)
            .flat_map(|j| [j, -j])
            .map(|l| {
                let w = FreeWord::letter(l);
                let m = self.evaluate_word(&w);
                (w, m)
            })
            .collect()
    }
}

/// A piecewise map whose pieces are labeled by words in a presentation.
#[derive(Debug, Clone, PartialEq)]
pub struct LabeledMap {
    /// The circle map.
    pub map: PiecewiseMap,
    /// The group its labels refer to.
    pub group: GroupPresentation,
}

impl LabeledMap {
    /// Attach a presentation, checking that every label evaluates to its
    /// piece within `1e−10`.
    pub fn new(map: PiecewiseMap, group: GroupPresentation) -> Result<Self, CatalogError> {
        let lm = LabeledMap {
            map: map.with_generator_names(group.names().to_vec()),
            group,
        };
        if !lm.labels_consistent(MAP_EQ_TOL) {
            return Err(CatalogError::Inconsistent(
                "a label does not evaluate to its piece".into(),
            ));
        }
        Ok(lm)
    }

    /// Whether every label word evaluates to its piece within `tol`.
    pub fn labels_consistent(&self, tol: f64) -> bool {
        self.map.pieces().iter().all(|p| match &p.label {
            Some(w) => self.group.evaluate_word(w).approx_eq(&p.map, tol),
            None => false,
        })
    }

    /// Replace the circle map, keeping the presentation.
    pub fn with_map(&self, map: PiecewiseMap) -> Result<Self, CatalogError> {
        LabeledMap::new(map, self.group.clone())
    }
}

fn cz(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Unit-circle point at angle `π·num/den`, with exact zeros for coordinate
/// axes.
fn root(num: i64, den: i64) -> Complex64 {
    let th = PI * num as f64 / den as f64;
    let clean = |x: f64| if x.abs() < 1e-15 { 0.0 } else { x };
    cz(clean(th.cos()), clean(th.sin()))
}

fn check_d(d: usize) -> Result<(), CatalogError> {
    if d < 2 {
        return Err(CatalogError::BadParameter(format!("d = {d} must be at least 2")));
    }
    Ok(())
}

fn check_k(k: usize) -> Result<(), CatalogError> {
    if k < 3 {
        return Err(CatalogError::BadParameter(format!("k = {k} must be at least 3")));
    }
    Ok(())
}

/// Vertices `p_1, ..., p_{d+1}` of the upper half, `p_j = exp(πi(j−1)/d)`.
pub fn upper_vertices(d: usize) -> Vec<Complex64> {
    (0..=d).map(|j| root(j as i64, d as i64)).collect()
}

/// Break points of the Bowen-Series partition of `G_d`, counter-clockwise
/// from 1: `p_1, ..., p_{d+1}, conj(p_d), ..., conj(p_2)`.
pub fn bs_break_points(d: usize) -> Vec<Complex64> {
    let p = upper_vertices(d);
    let mut v = p.clone();
    v.extend((1..d).rev().map(|j| p[j].conj()));
    v
}

/// The group `G_d = ⟨g_1, ..., g_d⟩` with `g_j` = conjugation ∘ reflection
/// in the geodesic `C_j = (p_j, p_{j+1})`, which carries `C_j` onto its
/// conjugate `C_{−j}`.
pub fn punctured_sphere_group(d: usize) -> Result<GroupPresentation, CatalogError> {
    check_d(d)?;
    let p = upper_vertices(d);
    let gens = (0..d)
        .map(|j| {
            let geo = Geodesic::disk(p[j], p[j + 1])?;
            MoebiusMap::conjugation().compose(&reflection_in_geodesic(&geo))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let names = (1..=d).map(|j| format!("g{j}")).collect();
    let domain = IdealPolygon::new(bs_break_points(d))?;
    // Upper edge j-1 is C_j; its conjugate is lower edge 2d-j.
    let pairings = (1..=d)
        .map(|j| SidePairing {
            edge: j - 1,
            generator: j as i32,
            image_edge: 2 * d - j,
        })
        .collect();
    GroupPresentation::new(gens, names, domain, pairings)
}

/// The Bowen-Series map of `G_d`: `g_j` on `I_j = [p_j, p_{j+1})` and
/// `g_j^{-1}` on the conjugate arc `I_{−j}`.
pub fn bowen_series(d: usize) -> Result<LabeledMap, CatalogError> {
    let group = punctured_sphere_group(d)?;
    let mut labels: Vec<FreeWord> = (1..=d as i32).map(FreeWord::letter).collect();
    labels.extend((1..=d as i32).rev().map(|j| FreeWord::letter(-j)));
    let maps = labels.iter().map(|l| group.evaluate_word(l)).collect();
    let pm = PiecewiseMap::new(bs_break_points(d), maps, Some(labels))?;
    LabeledMap::new(pm, group)
}

/// Permutation listing the Bowen-Series arcs in the order
/// `I_1, I_{−1}, I_2, I_{−2}, ..., I_d, I_{−d}`.
pub fn bs_paired_order(d: usize) -> Vec<usize> {
    (1..=d).flat_map(|j| [j - 1, 2 * d - j]).collect()
}

/// Named points of the thrice-punctured configuration: vertex `n` for
/// `n = 1..=8` (1 = −1, 2 = −i, 3 = 1, 4 = (4+3i)/5, 5 = (3+4i)/5, 6 = i,
/// 7 = (−3+4i)/5, 8 = (−4+3i)/5).
pub fn octagon_vertex(n: usize) -> Complex64 {
    match n {
        1 => cz(-1.0, 0.0),
        2 => cz(0.0, -1.0),
        3 => cz(1.0, 0.0),
        4 => cz(0.8, 0.6),
        5 => cz(0.6, 0.8),
        6 => cz(0.0, 1.0),
        7 => cz(-0.6, 0.8),
        8 => cz(-0.8, 0.6),
        _ => panic!("octagon vertices are numbered 1 to 8"),
    }
}

/// The three reflections `r_1` (conjugation), `r_2` (inversion in the
/// circle of center `1+i`, radius 1) and `r_3` (center `−1+i`, radius 1).
pub fn thrice_punctured_reflections() -> [MoebiusMap; 3] {
    [
        MoebiusMap::conjugation(),
        circle_inversion(cz(1.0, 1.0), 1.0),
        circle_inversion(cz(-1.0, 1.0), 1.0),
    ]
}

/// The thrice-punctured group with generators `g = r_2∘r_1` (letter 1) and
/// `h = r_3∘r_1` (letter 2), marked by the ideal quadrilateral on
/// `−1, −i, 1, i`.
pub fn thrice_punctured_group() -> Result<GroupPresentation, CatalogError> {
    let [r1, r2, r3] = thrice_punctured_reflections();
    let g = r2.compose(&r1)?;
    let h = r3.compose(&r1)?;
    let v: Vec<Complex64> = [1, 2, 3, 6].iter().map(|&n| octagon_vertex(n)).collect();
    let domain = IdealPolygon::new(v)?;
    let pairings = vec![
        SidePairing {
            edge: 1,
            generator: 1,
            image_edge: 2,
        },
        SidePairing {
            edge: 0,
            generator: 2,
            image_edge: 3,
        },
    ];
    let gp = GroupPresentation::new(vec![g, h], vec!["g".into(), "h".into()], domain, pairings)?;
    let close = |a: Complex64, b: Complex64| (a - b).norm() <= PAIRING_TOL;
    let (i, mi, one, mone) = (cz(0.0, 1.0), cz(0.0, -1.0), cz(1.0, 0.0), cz(-1.0, 0.0));
    if !(close(g.apply_disk(mi), i)
        && close(g.apply_disk(one), one)
        && close(h.apply_disk(mone), mone)
        && close(g.apply_disk(mone), octagon_vertex(5))
        && close(h.apply_disk(one), octagon_vertex(7)))
    {
        return Err(CatalogError::Inconsistent(
            "vertex assignment of the thrice-punctured group".into(),
        ));
    }
    Ok(gp)
}

/// Geometry shared by the completely folding and higher Bowen-Series maps
/// for `S_{0,k}`, built over `G_{k−1}` with folding generators
/// `G_i = g_{k−i}^{-1}`.
#[derive(Debug, Clone)]
pub struct FoldingData {
    k: usize,
    group: GroupPresentation,
}

impl FoldingData {
    /// Build the folding presentation for `k ≥ 3`.
    pub fn new(k: usize) -> Result<Self, CatalogError> {
        check_k(k)?;
        let d = k - 1;
        let base = punctured_sphere_group(d)?;
        let gens: Vec<MoebiusMap> = (1..=d).map(|i| base.generators()[d - i].inverse()).collect();
        let names: Vec<String> = if k == 3 {
            vec!["h".into(), "g".into()]
        } else {
            (1..=d).map(|i| format!("G{i}")).collect()
        };
        // Polygon vertices counter-clockwise from vertex 1 = −1: the bottom
        // vertices 1_-, ..., k_-, then the top vertices k−1, ..., 2.
        let mut verts: Vec<Complex64> = (1..=k).map(|i| bottom_vertex(k, i)).collect();
        verts.extend((2..k).rev().map(|i| top_vertex(k, i)));
        let domain = IdealPolygon::new(verts)?;
        // Bottom edge i−1 joins i_- and (i+1)_-; the top edge joining i+1
        // and i has index 2k−2−i.
        let pairings = (1..=d)
            .map(|i| SidePairing {
                edge: i - 1,
                generator: i as i32,
                image_edge: 2 * k - 2 - i,
            })
            .collect();
        let group = GroupPresentation::new(gens, names, domain, pairings)?;
        Ok(FoldingData { k, group })
    }

    /// The presentation with letters `G_1, ..., G_{k−1}`.
    pub fn group(&self) -> &GroupPresentation {
        &self.group
    }

    /// Subdivision point `{i, j}`: the image under `G_i` of the `j`-th
    /// polygon vertex met clockwise from `i_-` (so `{i,1}` is top vertex
    /// `i` and `{i, 2k−2}` is top vertex `i+1`).
    pub fn subdivision_point(&self, i: usize, j: usize) -> Complex64 {
        let k = self.k;
        let mut cw: Vec<Complex64> = (1..=i).rev().map(|m| bottom_vertex(k, m)).collect();
        cw.extend((2..k).map(|m| top_vertex(k, m)));
        cw.push(top_vertex(k, k));
        cw.extend((i + 1..k).rev().map(|m| bottom_vertex(k, m)));
        let g = self.group.evaluate_word(&FreeWord::letter(i as i32));
        g.apply_disk(cw[j - 1])
    }

    /// Label of the completely folding piece on the sub-arc from
    /// `{i, j+1}` to `{i, j}` of the top arc between vertices `i+1` and `i`.
    pub fn folding_label(&self, i: usize, j: usize) -> FreeWord {
        let k = self.k;
        let gi_inv = -(i as i32);
        if j >= i && j <= i + k - 2 {
            FreeWord::letter(gi_inv)
        } else if j < i {
            let s = (i - j) as i32;
            FreeWord::from_letters(&[s, gi_inv])
        } else {
            let t = j + 1 - i - k;
            FreeWord::from_letters(&[(k - 1 - t) as i32, gi_inv])
        }
    }

    fn assemble(&self, cells: Vec<(Complex64, FreeWord)>) -> Result<LabeledMap, CatalogError> {
        let maps = cells.iter().map(|c| self.group.evaluate_word(&c.1)).collect();
        let pm = PiecewiseMap::new(
            cells.iter().map(|c| c.0).collect(),
            maps,
            Some(cells.into_iter().map(|c| c.1).collect()),
        )?;
        LabeledMap::new(pm, self.group.clone())
    }

    /// Cells of the completely folding map, counter-clockwise from vertex 1.
    /// `keep(i, j)` decides whether the start point `{i, j+1}` of each top
    /// sub-arc other than the first is kept as a break point.
    fn cells(&self, keep: impl Fn(usize, usize) -> bool) -> Vec<(Complex64, FreeWord)> {
        let k = self.k;
        let top_count = 2 * k - 3;
        let mut cells: Vec<(Complex64, FreeWord)> = (1..k)
            .map(|i| (bottom_vertex(k, i), FreeWord::letter(i as i32)))
            .collect();
        for i in (1..k).rev() {
            for j in (1..=top_count).rev() {
                let label = self.folding_label(i, j);
                if j == top_count || keep(i, j) {
                    cells.push((self.subdivision_point(i, j + 1), label));
                }
            }
        }
        cells
    }
}

/// Top vertex `i` (`1..=k`), clockwise from `−1` to `1` through the upper
/// half: `p_{k+1−i}` of `G_{k−1}`.
pub fn top_vertex(k: usize, i: usize) -> Complex64 {
    let d = k - 1;
    root((d + 1 - i) as i64, d as i64)
}

/// Bottom vertex `i_- = conj(i)`.
pub fn bottom_vertex(k: usize, i: usize) -> Complex64 {
    top_vertex(k, i).conj()
}

/// The completely folding map for `S_{0,k}` with `2(k−1)²` arcs.
pub fn completely_folding(k: usize) -> Result<LabeledMap, CatalogError> {
    let fd = FoldingData::new(k)?;
    fd.assemble(fd.cells(|_, _| true))
}

/// The higher Bowen-Series map for `S_{0,k}`: the minimal representative of
/// the completely folding map, with `k(k−1)` arcs.
pub fn higher_bowen_series(k: usize) -> Result<LabeledMap, CatalogError> {
    let cfm = completely_folding(k)?;
    let min = cfm.map.minimize();
    cfm.with_map(min)
}

/// Interpolating map for a vertex selection `1 = i_1 < ... < i_{l+1} = k`:
/// the higher Bowen-Series partition with the extra break points
/// `{i, i+m−1}` for every selected `m` other than `1` and `k`.
pub fn interpolating_map(k: usize, selection: &[usize]) -> Result<LabeledMap, CatalogError> {
    check_k(k)?;
    let valid = selection.len() >= 2
        && selection[0] == 1
        && *selection.last().unwrap() == k
        && selection.windows(2).all(|w| w[0] < w[1]);
    if !valid {
        return Err(CatalogError::InvalidSelection(selection.to_vec()));
    }
    let fd = FoldingData::new(k)?;
    let inner: Vec<usize> = selection[1..selection.len() - 1].to_vec();
    let keep = |i: usize, j: usize| {
        // Start point {i, j+1}; inside the short run it is a break point
        // exactly when j+1 = i+m−1 for a selected m.
        let short = j >= i && j < i + k - 2;
        !short || inner.iter().any(|&m| j + 1 == i + m - 1)
    };
    fd.assemble(fd.cells(keep))
}

/// Non-example B: equal to the Bowen-Series map of `G_{k−1}` on the closed
/// lower semicircle and to its second iterate on the upper semicircle.
pub fn non_example_b(k: usize) -> Result<LabeledMap, CatalogError> {
    check_k(k)?;
    let d = k - 1;
    let bs = bowen_series(d)?;
    let a2 = bs.map.refine_iterate(2)?;
    let mut breaks = Vec::new();
    let mut labels = Vec::new();
    for p in a2.pieces() {
        // Rank-2 cells of the upper arcs I_1..I_d start in [1, −1).
        if crate::moebius::turn_of(p.arc.start()) < 0.5 - 1e-12 {
            breaks.push(p.arc.start());
            labels.push(p.label.clone().expect("labeled"));
        }
    }
    for p in &bs.map.pieces()[d..] {
        breaks.push(p.arc.start());
        labels.push(p.label.clone().expect("labeled"));
    }
    let maps = labels.iter().map(|w| bs.group.evaluate_word(w)).collect();
    let pm = PiecewiseMap::new(breaks, maps, Some(labels))?.minimize();
    LabeledMap::new(pm, bs.group)
}

/// Non-example C: the octagonal map over the thrice-punctured group with
/// pieces `h, g⁻¹h, h⁻¹g, g, g⁻¹, hg⁻¹, gh⁻¹, h⁻¹` on the arcs starting at
/// `−1, (−3−4i)/5, −i, (3−4i)/5, 1, (3+4i)/5, i, (−3+4i)/5`.
pub fn non_example_c() -> Result<LabeledMap, CatalogError> {
    let group = thrice_punctured_group()?;
    let breaks = vec![
        cz(-1.0, 0.0),
        cz(-0.6, -0.8),
        cz(0.0, -1.0),
        cz(0.6, -0.8),
        cz(1.0, 0.0),
        cz(0.6, 0.8),
        cz(0.0, 1.0),
        cz(-0.6, 0.8),
    ];
    let w = FreeWord::from_letters;
    let labels = vec![
        w(&[2]),
        w(&[-1, 2]),
        w(&[-2, 1]),
        w(&[1]),
        w(&[-1]),
        w(&[2, -1]),
        w(&[1, -2]),
        w(&[-2]),
    ];
    let maps = labels.iter().map(|l| group.evaluate_word(l)).collect();
    let pm = PiecewiseMap::new(breaks, maps, Some(labels))?;
    LabeledMap::new(pm, group)
}

/// The piecewise reflection map: `r_1` on the lower semicircle `[−1, 1)`,
/// `r_2` on `[1, i)` and `r_3` on `[i, −1)`.
pub fn reflection_map_n() -> Result<PiecewiseMap, CatalogError> {
    let [r1, r2, r3] = thrice_punctured_reflections();
    Ok(PiecewiseMap::new(
        vec![cz(-1.0, 0.0), cz(1.0, 0.0), cz(0.0, 1.0)],
        vec![r1, r2, r3],
        None,
    )?)
}

/// Cube roots of unity `1, ω, ω²`.
pub fn cube_roots() -> [Complex64; 3] {
    [cz(1.0, 0.0), root(2, 3), root(4, 3)]
}

/// The Nielsen map of the ideal triangle with vertices at the cube roots of
/// unity: on each arc, reflection in the side joining its endpoints.
pub fn nielsen_rho2() -> Result<PiecewiseMap, CatalogError> {
    let v = cube_roots();
    let maps = (0..3)
        .map(|j| Ok(reflection_in_geodesic(&Geodesic::disk(v[j], v[(j + 1) % 3])?)))
        .collect::<Result<Vec<_>, CatalogError>>()?;
    Ok(PiecewiseMap::new(v.to_vec(), maps, None)?)
}

/// The disk automorphism sending `(1, i, −1)` to `(1, ω, ω²)`, which carries
/// the triangle of the reflection map onto the Nielsen triangle.
pub fn triangle_conjugator() -> Result<MoebiusMap, CatalogError> {
    let v = cube_roots();
    Ok(three_point_map([cz(1.0, 0.0), cz(0.0, 1.0), cz(-1.0, 0.0)], v)?)
}

/// The candidate list `{g_2, ..., g_{d−1}} ∪ {g_i^{-1} g_j : i − j > 1}`,
/// ordered with the single generators first and then pairs by `i`, then `j`.
pub fn lamination_candidates(d: usize) -> Vec<FreeWord> {
    let mut out: Vec<FreeWord> = (2..d as i32).map(FreeWord::letter).collect();
    for i in 1..=d as i32 {
        for j in 1..=d as i32 {
            if i - j > 1 {
                let w = FreeWord::from_letters(&[-i, j]);
                if !out.contains(&w) {
                    out.push(w);
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: Complex64, b: Complex64) -> bool {
        (a - b).norm() < 1e-9
    }

    #[test]
    fn g_of_d2_fixes_one_and_is_parabolic() {
        let g = punctured_sphere_group(2).unwrap();
        assert!(close(g.generators()[0].apply_disk(cz(1.0, 0.0)), cz(1.0, 0.0)));
        assert_eq!(g.generators()[0].classify(), ElementKind::Parabolic);
        assert_eq!(g.generators()[1].classify(), ElementKind::Parabolic);
        assert!(close(g.generators()[0].apply_disk(cz(0.0, 1.0)), cz(0.0, -1.0)));
    }

    #[test]
    fn consecutive_quotient_is_parabolic_for_d3() {
        let g = punctured_sphere_group(3).unwrap();
        let q = g.evaluate_word(&FreeWord::from_letters(&[2, -1]));
        assert_eq!(q.classify(), ElementKind::Parabolic);
        let p2 = root(1, 3).conj();
        assert!(close(q.apply_disk(p2), p2));
    }

    #[test]
    fn thrice_punctured_identities() {
        let gp = thrice_punctured_group().unwrap();
        let g = gp.generators()[0];
        assert!(close(g.apply_disk(cz(0.0, -1.0)), cz(0.0, 1.0)));
    }

    #[test]
    fn lamination_lists() {
        assert!(lamination_candidates(2).is_empty());
        let w = FreeWord::from_letters;
        assert_eq!(lamination_candidates(3), vec![w(&[2]), w(&[-3, 1])]);
        assert_eq!(
            lamination_candidates(4),
            vec![w(&[2]), w(&[3]), w(&[-3, 1]), w(&[-4, 1]), w(&[-4, 2])]
        );
    }

    #[test]
    fn subdivision_endpoints_are_top_vertices() {
        for k in 3..=6 {
            let fd = FoldingData::new(k).unwrap();
            for i in 1..k {
                assert!(close(fd.subdivision_point(i, 1), top_vertex(k, i)));
                assert!(close(fd.subdivision_point(i, 2 * k - 2), top_vertex(k, i + 1)));
            }
        }
    }

    #[test]
    fn invalid_selection_rejected() {
        assert!(interpolating_map(4, &[1, 3]).is_err());
        assert!(interpolating_map(4, &[1, 3, 2, 4]).is_err());
        assert!(interpolating_map(4, &[1, 4]).is_ok());
    }
}
